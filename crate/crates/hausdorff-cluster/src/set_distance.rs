//! Distances between index sets over a distance matrix: single and complete
//! linkage values, and the (directed and symmetric) Hausdorff distance. All
//! four are plain scans over the |A| x |B| submatrix.
//!
//! For any A, B the three symmetric values sandwich each other:
//! single <= hausdorff <= complete. On singletons they coincide. The
//! Hausdorff distance inherits symmetry and the triangle inequality from the
//! underlying metric; single violates the triangle inequality and complete
//! has nonzero self-distance on multi-point sets, which is why neither is a
//! metric on sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

/// A nonempty set of point indices, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        members.sort_unstable();
        members.dedup();
        Ok(IndexSet { members })
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet { members: vec![i] }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Set union; the result is sorted and deduplicated by construction.
    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (0, 0);
        while a < self.members.len() && b < other.members.len() {
            match self.members[a].cmp(&other.members[b]) {
                std::cmp::Ordering::Less => {
                    merged.push(self.members[a]);
                    a += 1;
                }
                std::cmp::Ordering::Greater => {
                    merged.push(other.members[b]);
                    b += 1;
                }
                std::cmp::Ordering::Equal => {
                    merged.push(self.members[a]);
                    a += 1;
                    b += 1;
                }
            }
        }
        merged.extend_from_slice(&self.members[a..]);
        merged.extend_from_slice(&other.members[b..]);
        IndexSet { members: merged }
    }

    fn check_bounds(&self, d: &DistanceMatrix) -> Result<()> {
        // sorted, so the last member is the largest
        let max = *self.members.last().expect("index set is never empty");
        if max >= d.n() {
            return Err(Error::IndexOutOfRange {
                index: max,
                n: d.n(),
            });
        }
        Ok(())
    }
}

/// Single-linkage value: the minimum pairwise distance between A and B.
pub fn single_distance(a: &IndexSet, b: &IndexSet, d: &DistanceMatrix) -> Result<f64> {
    a.check_bounds(d)?;
    b.check_bounds(d)?;
    let mut best = f64::INFINITY;
    for &i in a.members() {
        for &j in b.members() {
            let v = d.get(i, j);
            if v < best {
                best = v;
            }
        }
    }
    Ok(best)
}

/// Complete-linkage value: the maximum pairwise distance between A and B.
pub fn complete_distance(a: &IndexSet, b: &IndexSet, d: &DistanceMatrix) -> Result<f64> {
    a.check_bounds(d)?;
    b.check_bounds(d)?;
    let mut worst = 0.0f64;
    for &i in a.members() {
        for &j in b.members() {
            let v = d.get(i, j);
            if v > worst {
                worst = v;
            }
        }
    }
    Ok(worst)
}

/// Directed Hausdorff distance from A to B: how far the worst-placed point
/// of A is from its nearest point of B. Asymmetric in general.
pub fn directed_hausdorff(a: &IndexSet, b: &IndexSet, d: &DistanceMatrix) -> Result<f64> {
    a.check_bounds(d)?;
    b.check_bounds(d)?;
    Ok(directed_hausdorff_unchecked(a, b, d))
}

fn directed_hausdorff_unchecked(a: &IndexSet, b: &IndexSet, d: &DistanceMatrix) -> f64 {
    let mut worst = 0.0f64;
    for &i in a.members() {
        let mut nearest = f64::INFINITY;
        for &j in b.members() {
            let v = d.get(i, j);
            if v < nearest {
                nearest = v;
            }
        }
        if nearest > worst {
            worst = nearest;
        }
    }
    worst
}

/// Symmetric Hausdorff distance: the larger of the two directed values.
pub fn hausdorff_distance(a: &IndexSet, b: &IndexSet, d: &DistanceMatrix) -> Result<f64> {
    a.check_bounds(d)?;
    b.check_bounds(d)?;
    let ab = directed_hausdorff_unchecked(a, b, d);
    let ba = directed_hausdorff_unchecked(b, a, d);
    Ok(ab.max(ba))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{DistanceMatrix, Point};
    use proptest::prelude::*;

    fn line_matrix(coords: &[f64]) -> DistanceMatrix {
        let pts: Vec<Point> = coords.iter().map(|&x| Point::new(vec![x]).unwrap()).collect();
        DistanceMatrix::from_points(&pts).unwrap()
    }

    fn set(ix: &[usize]) -> IndexSet {
        IndexSet::new(ix.iter().copied()).unwrap()
    }

    // Independent references written as the flattest possible loops.
    fn naive_single(a: &[usize], b: &[usize], d: &DistanceMatrix) -> f64 {
        let mut out = f64::INFINITY;
        for &i in a {
            for &j in b {
                out = out.min(d.get(i, j));
            }
        }
        out
    }

    fn naive_complete(a: &[usize], b: &[usize], d: &DistanceMatrix) -> f64 {
        let mut out = f64::NEG_INFINITY;
        for &i in a {
            for &j in b {
                out = out.max(d.get(i, j));
            }
        }
        out
    }

    fn naive_directed(a: &[usize], b: &[usize], d: &DistanceMatrix) -> f64 {
        a.iter()
            .map(|&i| {
                b.iter()
                    .map(|&j| d.get(i, j))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn naive_hausdorff(a: &[usize], b: &[usize], d: &DistanceMatrix) -> f64 {
        naive_directed(a, b, d).max(naive_directed(b, a, d))
    }

    #[test]
    fn index_set_sorts_and_dedups() {
        let s = IndexSet::new([4, 1, 4, 2, 1]).unwrap();
        assert_eq!(s.members(), &[1, 2, 4]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(2));
        assert!(!s.contains(3));
    }

    #[test]
    fn index_set_rejects_empty() {
        assert!(matches!(IndexSet::new([]), Err(Error::EmptyIndexSet)));
    }

    #[test]
    fn union_merges_sorted() {
        let s = set(&[0, 3, 5]).union(&set(&[1, 3, 9]));
        assert_eq!(s.members(), &[0, 1, 3, 5, 9]);
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        let d = line_matrix(&[0.0, 1.0]);
        let bad = set(&[0, 7]);
        assert!(matches!(
            single_distance(&bad, &set(&[0]), &d),
            Err(Error::IndexOutOfRange { index: 7, n: 2 })
        ));
        assert!(hausdorff_distance(&set(&[0]), &bad, &d).is_err());
    }

    #[test]
    fn all_three_coincide_on_singletons() {
        let d = line_matrix(&[0.0, 1.0, 3.0, 7.0]);
        for i in 0..4 {
            for j in 0..4 {
                let a = IndexSet::singleton(i);
                let b = IndexSet::singleton(j);
                let s = single_distance(&a, &b, &d).unwrap();
                let c = complete_distance(&a, &b, &d).unwrap();
                let h = hausdorff_distance(&a, &b, &d).unwrap();
                assert_eq!(s, d.get(i, j));
                assert_eq!(c, s);
                assert_eq!(h, s);
            }
        }
    }

    #[test]
    fn overlapping_sets_have_zero_single_distance() {
        let d = line_matrix(&[0.0, 1.0, 5.0, 9.0]);
        let a = set(&[0, 2]);
        let b = set(&[2, 3]);
        assert_eq!(single_distance(&a, &b, &d).unwrap(), 0.0);
    }

    #[test]
    fn complete_self_distance_is_the_diameter() {
        let d = line_matrix(&[0.0, 1.0, 5.0, 9.0]);
        let a = set(&[0, 1, 3]);
        assert_eq!(complete_distance(&a, &a, &d).unwrap(), 9.0);
    }

    #[test]
    fn hausdorff_self_distance_is_zero() {
        let d = line_matrix(&[0.0, 1.0, 5.0, 9.0]);
        let a = set(&[0, 1, 3]);
        assert_eq!(hausdorff_distance(&a, &a, &d).unwrap(), 0.0);
    }

    #[test]
    fn directed_hausdorff_of_subset_is_zero() {
        let d = line_matrix(&[0.0, 1.0, 5.0, 9.0]);
        let a = set(&[1, 3]);
        let b = set(&[0, 1, 2, 3]);
        assert_eq!(directed_hausdorff(&a, &b, &d).unwrap(), 0.0);
        // the reverse direction sees the extra points
        assert!(directed_hausdorff(&b, &a, &d).unwrap() > 0.0);
    }

    #[test]
    fn directed_hausdorff_hand_example() {
        // A = {0, 1}, B = {9, 10} on the line: every point of A is 8 or 9
        // away from B, the worst one 9; from B the worst is also 9.
        let d = line_matrix(&[0.0, 1.0, 9.0, 10.0]);
        let a = set(&[0, 1]);
        let b = set(&[2, 3]);
        assert_eq!(directed_hausdorff(&a, &b, &d).unwrap(), 9.0);
        assert_eq!(directed_hausdorff(&b, &a, &d).unwrap(), 9.0);
        assert_eq!(hausdorff_distance(&a, &b, &d).unwrap(), 9.0);
        assert_eq!(single_distance(&a, &b, &d).unwrap(), 8.0);
        assert_eq!(complete_distance(&a, &b, &d).unwrap(), 10.0);
    }

    #[test]
    fn singleton_against_set_equals_complete() {
        let d = line_matrix(&[0.0, 2.0, 3.0, 11.0]);
        let a = IndexSet::singleton(0);
        let b = set(&[1, 2, 3]);
        let h = hausdorff_distance(&a, &b, &d).unwrap();
        let c = complete_distance(&a, &b, &d).unwrap();
        assert_eq!(h, c);
        assert_eq!(h, 11.0);
    }

    #[test]
    fn single_linkage_violates_triangle_inequality() {
        // Collinear counterexample: A = {0, 1}, B = {9, 10}, C = {4, 6}.
        // d_s(A,B) = 8 > d_s(A,C) + d_s(C,B) = 3 + 3.
        let d = line_matrix(&[0.0, 1.0, 9.0, 10.0, 4.0, 6.0]);
        let a = set(&[0, 1]);
        let b = set(&[2, 3]);
        let c = set(&[4, 5]);
        let ab = single_distance(&a, &b, &d).unwrap();
        let ac = single_distance(&a, &c, &d).unwrap();
        let cb = single_distance(&c, &b, &d).unwrap();
        assert_eq!(ab, 8.0);
        assert_eq!(ac, 3.0);
        assert_eq!(cb, 3.0);
        assert!(ab > ac + cb);
        // while the Hausdorff values on the same sets respect it
        let hab = hausdorff_distance(&a, &b, &d).unwrap();
        let hac = hausdorff_distance(&a, &c, &d).unwrap();
        let hcb = hausdorff_distance(&c, &b, &d).unwrap();
        assert!(hab <= hac + hcb + 1e-9);
    }

    // strategies: a small 2-D point cloud and index sets over it
    fn cloud_strategy(max_n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 2..max_n)
    }

    fn matrix_of(cloud: &[(f64, f64)]) -> DistanceMatrix {
        let pts: Vec<Point> = cloud.iter().map(|&(x, y)| Point::xy(x, y).unwrap()).collect();
        DistanceMatrix::from_points(&pts).unwrap()
    }

    fn subset_of(n: usize, picks: &[prop::sample::Index]) -> IndexSet {
        IndexSet::new(picks.iter().map(|ix| ix.index(n))).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn matches_naive_scans(
            cloud in cloud_strategy(24),
            pa in prop::collection::vec(any::<prop::sample::Index>(), 1..12),
            pb in prop::collection::vec(any::<prop::sample::Index>(), 1..12),
        ) {
            let d = matrix_of(&cloud);
            let a = subset_of(d.n(), &pa);
            let b = subset_of(d.n(), &pb);
            prop_assert_eq!(
                single_distance(&a, &b, &d).unwrap(),
                naive_single(a.members(), b.members(), &d)
            );
            prop_assert_eq!(
                complete_distance(&a, &b, &d).unwrap(),
                naive_complete(a.members(), b.members(), &d)
            );
            prop_assert_eq!(
                directed_hausdorff(&a, &b, &d).unwrap(),
                naive_directed(a.members(), b.members(), &d)
            );
            prop_assert_eq!(
                hausdorff_distance(&a, &b, &d).unwrap(),
                naive_hausdorff(a.members(), b.members(), &d)
            );
        }

        #[test]
        fn sandwich_inequality(
            cloud in cloud_strategy(24),
            pa in prop::collection::vec(any::<prop::sample::Index>(), 1..12),
            pb in prop::collection::vec(any::<prop::sample::Index>(), 1..12),
        ) {
            let d = matrix_of(&cloud);
            let a = subset_of(d.n(), &pa);
            let b = subset_of(d.n(), &pb);
            let s = single_distance(&a, &b, &d).unwrap();
            let h = hausdorff_distance(&a, &b, &d).unwrap();
            let c = complete_distance(&a, &b, &d).unwrap();
            prop_assert!(s <= h && h <= c, "violated: {s} <= {h} <= {c}");
        }

        #[test]
        fn hausdorff_is_symmetric_and_triangular(
            cloud in cloud_strategy(20),
            pa in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
            pb in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
            pc in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
        ) {
            let d = matrix_of(&cloud);
            let a = subset_of(d.n(), &pa);
            let b = subset_of(d.n(), &pb);
            let c = subset_of(d.n(), &pc);
            let ab = hausdorff_distance(&a, &b, &d).unwrap();
            let ba = hausdorff_distance(&b, &a, &d).unwrap();
            prop_assert_eq!(ab, ba);
            let ac = hausdorff_distance(&a, &c, &d).unwrap();
            let cb = hausdorff_distance(&c, &b, &d).unwrap();
            prop_assert!(ab <= ac + cb + 1e-9, "{ab} > {ac} + {cb}");
            // complete linkage also satisfies the triangle inequality
            let cab = complete_distance(&a, &b, &d).unwrap();
            let cac = complete_distance(&a, &c, &d).unwrap();
            let ccb = complete_distance(&c, &b, &d).unwrap();
            prop_assert!(cab <= cac + ccb + 1e-9);
        }

        #[test]
        fn singleton_identity_is_exact(
            cloud in cloud_strategy(20),
            ia in any::<prop::sample::Index>(),
            pb in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
        ) {
            let d = matrix_of(&cloud);
            let a = IndexSet::singleton(ia.index(d.n()));
            let b = subset_of(d.n(), &pb);
            let h = hausdorff_distance(&a, &b, &d).unwrap();
            let c = complete_distance(&a, &b, &d).unwrap();
            prop_assert_eq!(h, c);
        }
    }
}
