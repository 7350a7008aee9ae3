//! Reading a dendrogram back out: flat partitions from count or height
//! cuts, cluster-size entropy along the merge sequence, and detection of
//! height dips (backsteps).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkage::Dendrogram;

/// A flat clustering of `0..n` items. Labels are `1..=k`, contiguous, and
/// assigned by ascending smallest member: the cluster containing item 0 is
/// labelled 1, the cluster with the smallest item outside it is 2, and so
/// on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    assignment: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        if assignment.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let k = *assignment.iter().max().expect("nonempty");
        let mut seen = vec![false; k + 1];
        for &label in &assignment {
            if label == 0 || label > k {
                return Err(Error::BadPartitionLabel { label, k });
            }
            seen[label] = true;
        }
        if let Some(missing) = (1..=k).find(|&l| !seen[l]) {
            return Err(Error::BadPartitionLabel { label: missing, k });
        }
        Ok(Partition { assignment, k })
    }

    /// Cluster label of each item, values in `1..=k`.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn n_clusters(&self) -> usize {
        self.k
    }

    pub fn n_items(&self) -> usize {
        self.assignment.len()
    }

    /// Item count of every cluster, indexed by label minus one.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &label in &self.assignment {
            sizes[label - 1] += 1;
        }
        sizes
    }

    /// Items of the cluster with the given 1-based label.
    pub fn cluster_members(&self, label: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(i, _)| i)
            .collect()
    }
}

fn partition_after(dendrogram: &Dendrogram, n_merges: usize) -> Partition {
    let n = dendrogram.n_leaves;
    let mut clusters: BTreeMap<usize, Vec<usize>> = (0..n).map(|i| (i, vec![i])).collect();
    for merge in &dendrogram.merges[..n_merges] {
        let mut left = clusters.remove(&merge.left).expect("validated dendrogram");
        let right = clusters.remove(&merge.right).expect("validated dendrogram");
        left.extend(right);
        clusters.insert(merge.new_id, left);
    }
    let mut groups: Vec<Vec<usize>> = clusters.into_values().collect();
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.sort_by_key(|g| g[0]);
    let mut assignment = vec![0usize; n];
    for (label, group) in groups.iter().enumerate() {
        for &item in group {
            assignment[item] = label + 1;
        }
    }
    Partition::new(assignment).expect("constructed contiguous labels")
}

/// Applies the first `n - k` merges and returns the resulting k-cluster
/// partition.
pub fn cut_at_count(dendrogram: &Dendrogram, k: usize) -> Result<Partition> {
    let n = dendrogram.n_leaves;
    if k == 0 || k > n {
        return Err(Error::BadCutCount { k, n });
    }
    Ok(partition_after(dendrogram, n - k))
}

/// Applies merges in execution order while their height stays within `d`,
/// stopping before the first merge above `d`.
///
/// With monotone heights this is the usual horizontal cut. When heights dip
/// (Hausdorff backsteps), stopping at the first exceedance keeps the cuts
/// nested: raising `d` can only extend the applied prefix, so coarser cuts
/// always refine into finer ones.
pub fn cut_at_height(dendrogram: &Dendrogram, d: f64) -> Result<Partition> {
    if d.is_nan() {
        return Err(Error::NonFinite {
            context: "cut height",
        });
    }
    let n_merges = dendrogram
        .merges
        .iter()
        .take_while(|m| m.height <= d)
        .count();
    Ok(partition_after(dendrogram, n_merges))
}

/// Shannon entropy of the cluster-size distribution, in nats:
/// `-sum_k P(k) ln P(k)` with `P(k)` the fraction of items in cluster `k`.
/// Zero for one cluster, `ln k` for `k` equally sized ones.
pub fn cluster_entropy(partition: &Partition) -> f64 {
    let n = partition.n_items() as f64;
    let s: f64 = partition
        .cluster_sizes()
        .iter()
        .map(|&s| {
            let p = s as f64 / n;
            -p * p.ln()
        })
        .sum();
    s + 0.0 // never negative zero
}

/// One row of an [`EntropyCurve`]: the state after `step` merges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyPoint {
    pub step: usize,
    /// Height of the merge that produced this level; 0 for the singleton
    /// level.
    pub height: f64,
    pub n_clusters: usize,
    pub entropy: f64,
}

/// Entropy at every level of a dendrogram, from `n` singletons (entropy
/// `ln n`) down to one cluster (entropy 0). Entropy never increases along
/// the curve even when merge heights dip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyCurve {
    pub points: Vec<EntropyPoint>,
}

pub fn entropy_curve(dendrogram: &Dendrogram) -> EntropyCurve {
    let n = dendrogram.n_leaves;
    let total = n as f64;
    let mut sizes: BTreeMap<usize, usize> = (0..n).map(|i| (i, 1usize)).collect();
    let entropy_of = |sizes: &BTreeMap<usize, usize>| {
        sizes
            .values()
            .map(|&s| {
                let p = s as f64 / total;
                -p * p.ln()
            })
            .sum::<f64>()
            + 0.0 // never negative zero
    };
    let mut points = Vec::with_capacity(n);
    points.push(EntropyPoint {
        step: 0,
        height: 0.0,
        n_clusters: n,
        entropy: entropy_of(&sizes),
    });
    for merge in &dendrogram.merges {
        let left = sizes.remove(&merge.left).expect("validated dendrogram");
        let right = sizes.remove(&merge.right).expect("validated dendrogram");
        sizes.insert(merge.new_id, left + right);
        points.push(EntropyPoint {
            step: merge.step,
            height: merge.height,
            n_clusters: sizes.len(),
            entropy: entropy_of(&sizes),
        });
    }
    EntropyCurve { points }
}

/// Steps whose merge height is strictly below the running maximum of all
/// earlier heights. Returns the offending 1-based steps in order. Single
/// and complete linkage never produce any; Hausdorff linkage can.
pub fn detect_backsteps(dendrogram: &Dendrogram) -> Vec<usize> {
    let mut out = Vec::new();
    let mut running_max = f64::NEG_INFINITY;
    for merge in &dendrogram.merges {
        if merge.step > 1 && merge.height < running_max {
            out.push(merge.step);
        }
        running_max = running_max.max(merge.height);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkage::{agglomerate, Linkage, Merge, TiePolicy};
    use crate::metric::{DistanceMatrix, Point};
    use proptest::prelude::*;

    fn cloud_matrix(cloud: &[(f64, f64)]) -> DistanceMatrix {
        let pts: Vec<Point> = cloud.iter().map(|&(x, y)| Point::xy(x, y).unwrap()).collect();
        DistanceMatrix::from_points(&pts).unwrap()
    }

    fn dendro(n: usize, merges: &[(usize, usize, f64)]) -> Dendrogram {
        let merges = merges
            .iter()
            .enumerate()
            .map(|(i, &(l, r, h))| Merge {
                left: l,
                right: r,
                height: h,
                new_id: 0,
                step: i + 1,
            })
            .collect();
        Dendrogram::new(
            n,
            (0..n).map(|i| i.to_string()).collect(),
            Linkage::Hausdorff,
            merges,
        )
        .unwrap()
    }

    // independent union-find replay used as the cut oracle
    fn union_find_cut(d: &Dendrogram, n_merges: usize) -> Vec<usize> {
        let n = d.n_leaves;
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for m in &d.merges[..n_merges] {
            let (l, r) = (find(&mut parent, m.left), find(&mut parent, m.right));
            parent[l] = m.new_id;
            parent[r] = m.new_id;
        }
        // map roots to labels by smallest member
        let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        let mut label_of_root: std::collections::HashMap<usize, usize> =
            std::collections::HashMap::new();
        let mut next = 1;
        let mut labels = vec![0; n];
        for i in 0..n {
            let entry = label_of_root.entry(roots[i]).or_insert_with(|| {
                let l = next;
                next += 1;
                l
            });
            labels[i] = *entry;
        }
        labels
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![1, 2, 1]).is_ok());
        // gap in labels
        assert!(matches!(
            Partition::new(vec![1, 3, 1]),
            Err(Error::BadPartitionLabel { label: 2, .. })
        ));
        // labels start at 1
        assert!(Partition::new(vec![0, 1]).is_err());
    }

    #[test]
    fn partition_accessors() {
        let p = Partition::new(vec![1, 2, 1, 3, 2, 1]).unwrap();
        assert_eq!(p.n_clusters(), 3);
        assert_eq!(p.n_items(), 6);
        assert_eq!(p.cluster_sizes(), vec![3, 2, 1]);
        assert_eq!(p.cluster_members(1), vec![0, 2, 5]);
        assert_eq!(p.cluster_members(3), vec![3]);
    }

    #[test]
    fn cut_extremes() {
        let d = dendro(4, &[(0, 1, 1.0), (2, 3, 2.0), (5, 6, 3.0)]);
        let singletons = cut_at_count(&d, 4).unwrap();
        assert_eq!(singletons.assignment(), &[1, 2, 3, 4]);
        let one = cut_at_count(&d, 1).unwrap();
        assert_eq!(one.assignment(), &[1, 1, 1, 1]);
        assert!(matches!(
            cut_at_count(&d, 0),
            Err(Error::BadCutCount { k: 0, n: 4 })
        ));
        assert!(cut_at_count(&d, 5).is_err());
    }

    #[test]
    fn cut_labels_follow_smallest_member() {
        // merge 1 with 3 first, then cut at k = 3: clusters {0}, {1,3}, {2}
        let d = dendro(4, &[(1, 3, 1.0), (0, 5, 2.0), (2, 6, 3.0)]);
        let p = cut_at_count(&d, 3).unwrap();
        assert_eq!(p.assignment(), &[1, 2, 3, 2]);
    }

    #[test]
    fn height_cut_basics() {
        let d = dendro(4, &[(0, 1, 1.0), (2, 3, 2.0), (5, 6, 3.0)]);
        assert_eq!(cut_at_height(&d, 0.5).unwrap().n_clusters(), 4);
        assert_eq!(cut_at_height(&d, 1.0).unwrap().n_clusters(), 3); // ties included
        assert_eq!(cut_at_height(&d, 2.5).unwrap().n_clusters(), 2);
        assert_eq!(cut_at_height(&d, 3.0).unwrap().n_clusters(), 1);
        assert_eq!(cut_at_height(&d, 1e9).unwrap().n_clusters(), 1);
        assert!(cut_at_height(&d, f64::NAN).is_err());
    }

    #[test]
    fn height_cut_stops_at_first_exceedance() {
        // second merge dips below the first: prefix semantics must not
        // apply the later, lower merge once the cut stopped
        let d = dendro(4, &[(0, 1, 2.0), (2, 3, 0.5), (5, 6, 3.0)]);
        let p = cut_at_height(&d, 1.0).unwrap();
        // first merge is above 1.0, so nothing is applied at all
        assert_eq!(p.n_clusters(), 4);
        // at 2.0 both of the first two merges apply
        assert_eq!(cut_at_height(&d, 2.0).unwrap().n_clusters(), 2);
    }

    #[test]
    fn entropy_known_values() {
        // one cluster
        assert_eq!(cluster_entropy(&Partition::new(vec![1, 1, 1]).unwrap()), 0.0);
        // sizes {2, 1, 1} of 4 items: 3/2 ln 2
        let p = Partition::new(vec![1, 1, 2, 3]).unwrap();
        let s = cluster_entropy(&p);
        assert!((s - 1.0397207708399179).abs() < 1e-12);
        assert!((s - 1.5 * std::f64::consts::LN_2).abs() < 1e-12);
        // four equal clusters: ln 4
        let q = Partition::new(vec![1, 1, 2, 2, 3, 3, 4, 4]).unwrap();
        assert!((cluster_entropy(&q) - 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn entropy_curve_two_leaves() {
        let d = dendro(2, &[(0, 1, 1.5)]);
        let curve = entropy_curve(&d);
        assert_eq!(curve.points.len(), 2);
        assert_eq!(curve.points[0].step, 0);
        assert_eq!(curve.points[0].height, 0.0);
        assert_eq!(curve.points[0].n_clusters, 2);
        assert!((curve.points[0].entropy - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(curve.points[1].step, 1);
        assert_eq!(curve.points[1].height, 1.5);
        assert_eq!(curve.points[1].n_clusters, 1);
        assert_eq!(curve.points[1].entropy, 0.0);
    }

    #[test]
    fn backstep_detection_hand_cases() {
        let monotone = dendro(4, &[(0, 1, 1.0), (2, 3, 2.0), (5, 6, 3.0)]);
        assert!(detect_backsteps(&monotone).is_empty());
        // heights 1, 2, 1.5: step 3 dips under the running max
        let dip = dendro(4, &[(0, 1, 1.0), (2, 3, 2.0), (5, 6, 1.5)]);
        assert_eq!(detect_backsteps(&dip), vec![3]);
        // equal heights are not backsteps (strictly less)
        let flat = dendro(3, &[(0, 1, 1.0), (2, 4, 1.0)]);
        assert!(detect_backsteps(&flat).is_empty());
        // two dips after one peak
        let double = dendro(4, &[(0, 1, 5.0), (2, 3, 1.0), (5, 6, 2.0)]);
        assert_eq!(detect_backsteps(&double), vec![2, 3]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn count_cut_matches_union_find(
            cloud in prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 2..24),
            kind in prop::sample::select(vec![Linkage::Single, Linkage::Complete, Linkage::Hausdorff]),
            kpick in any::<prop::sample::Index>(),
        ) {
            let m = cloud_matrix(&cloud);
            let d = agglomerate(&m, kind, TiePolicy::Lexicographic).unwrap();
            let n = d.n_leaves;
            let k = 1 + kpick.index(n);
            let got = cut_at_count(&d, k).unwrap();
            prop_assert_eq!(got.n_clusters(), k);
            let want = union_find_cut(&d, n - k);
            prop_assert_eq!(got.assignment(), &want[..]);
        }

        #[test]
        fn height_cuts_are_nested(
            cloud in prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 2..20),
            d1 in 0.0..80.0f64,
            d2 in 0.0..80.0f64,
        ) {
            let m = cloud_matrix(&cloud);
            let dend = agglomerate(&m, Linkage::Hausdorff, TiePolicy::Lexicographic).unwrap();
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            let fine = cut_at_height(&dend, lo).unwrap();
            let coarse = cut_at_height(&dend, hi).unwrap();
            // every fine cluster maps into exactly one coarse cluster
            let mut image: std::collections::HashMap<usize, usize> = Default::default();
            for i in 0..fine.n_items() {
                let f = fine.assignment()[i];
                let c = coarse.assignment()[i];
                match image.entry(f) {
                    std::collections::hash_map::Entry::Vacant(e) => { e.insert(c); }
                    std::collections::hash_map::Entry::Occupied(e) => prop_assert_eq!(*e.get(), c),
                }
            }
        }

        #[test]
        fn height_cut_on_monotone_heights_equals_threshold_filter(
            cloud in prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 2..20),
            frac in 0.0..1.2f64,
        ) {
            let m = cloud_matrix(&cloud);
            let dend = agglomerate(&m, Linkage::Complete, TiePolicy::Lexicographic).unwrap();
            let max_h = dend.heights().last().copied().unwrap_or(0.0);
            let d = max_h * frac;
            let applied = dend.merges.iter().filter(|mg| mg.height <= d).count();
            let p = cut_at_height(&dend, d).unwrap();
            prop_assert_eq!(p.n_clusters(), dend.n_leaves - applied);
        }

        #[test]
        fn curve_matches_per_level_recomputation(
            cloud in prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 2..20),
            kind in prop::sample::select(vec![Linkage::Single, Linkage::Complete, Linkage::Hausdorff]),
        ) {
            let m = cloud_matrix(&cloud);
            let dend = agglomerate(&m, kind, TiePolicy::Lexicographic).unwrap();
            let curve = entropy_curve(&dend);
            let n = dend.n_leaves;
            prop_assert_eq!(curve.points.len(), n);
            prop_assert!((curve.points[0].entropy - (n as f64).ln()).abs() <= 1e-12);
            prop_assert_eq!(curve.points[n - 1].entropy, 0.0);
            for point in &curve.points {
                let p = cut_at_count(&dend, point.n_clusters).unwrap();
                prop_assert!((point.entropy - cluster_entropy(&p)).abs() <= 1e-12);
                prop_assert!(point.entropy >= 0.0);
                prop_assert!(point.entropy <= (point.n_clusters as f64).ln() + 1e-12);
            }
            for w in curve.points.windows(2) {
                prop_assert!(w[1].entropy <= w[0].entropy + 1e-12);
            }
        }

        #[test]
        fn monotone_linkages_never_backstep(
            cloud in prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 2..24),
        ) {
            let m = cloud_matrix(&cloud);
            for kind in [Linkage::Single, Linkage::Complete] {
                let dend = agglomerate(&m, kind, TiePolicy::Lexicographic).unwrap();
                prop_assert!(detect_backsteps(&dend).is_empty());
            }
        }
    }
}
