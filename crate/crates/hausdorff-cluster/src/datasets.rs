//! Built-in benchmark geometries: labelled 2-D point sets that exercise
//! specific behaviours of the linkage variants.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::metric::Point;
use crate::set_distance::IndexSet;

/// A point cloud where every point carries a group tag. Tags name the
/// intended structure (which ring, which fixture part); clustering never
/// sees them.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPointSet {
    points: Vec<Point>,
    group_labels: Vec<String>,
}

impl LabeledPointSet {
    pub fn new(points: Vec<Point>, group_labels: Vec<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::NoItems);
        }
        if points.len() != group_labels.len() {
            return Err(Error::LabelCountMismatch {
                labels: group_labels.len(),
                items: points.len(),
            });
        }
        let dim = points[0].dim();
        for p in &points[1..] {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: p.dim(),
                });
            }
        }
        Ok(LabeledPointSet {
            points,
            group_labels,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn group_labels(&self) -> &[String] {
        &self.group_labels
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distinct group names in order of first appearance.
    pub fn group_names(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for label in &self.group_labels {
            if !names.iter().any(|n| n == label) {
                names.push(label.clone());
            }
        }
        names
    }

    pub fn indices_of_group(&self, name: &str) -> Vec<usize> {
        self.group_labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.as_str() == name)
            .map(|(i, _)| i)
            .collect()
    }

    /// The group as an [`IndexSet`]; errs if no point carries the name.
    pub fn group_index_set(&self, name: &str) -> Result<IndexSet> {
        IndexSet::new(self.indices_of_group(name))
    }
}

fn pt(x: f64, y: f64) -> Point {
    Point::xy(x, y).expect("finite fixture coordinate")
}

/// Two nested rings around the origin. Single linkage separates them
/// whenever the radial gap exceeds the spacing along each ring; complete
/// and Hausdorff linkage tend to slice across instead.
pub fn concentric_dataset(
    n_inner: usize,
    n_outer: usize,
    r_inner: f64,
    r_outer: f64,
) -> Result<LabeledPointSet> {
    if n_inner == 0 || n_outer == 0 {
        return Err(Error::BadDatasetParams {
            reason: "both rings need at least one point".into(),
        });
    }
    if !(r_inner.is_finite() && r_outer.is_finite()) || r_inner <= 0.0 || r_outer <= r_inner {
        return Err(Error::BadDatasetParams {
            reason: format!("radii must satisfy 0 < inner < outer, got {r_inner} and {r_outer}"),
        });
    }
    let mut points = Vec::with_capacity(n_inner + n_outer);
    let mut labels = Vec::with_capacity(n_inner + n_outer);
    for (count, radius, tag) in [(n_inner, r_inner, "inner"), (n_outer, r_outer, "outer")] {
        for k in 0..count {
            let theta = 2.0 * PI * k as f64 / count as f64;
            points.push(pt(radius * theta.cos(), radius * theta.sin()));
            labels.push(tag.to_string());
        }
    }
    LabeledPointSet::new(points, labels)
}

/// Six collinear points in three two-point groups a = {0, 1}, b = {9, 10},
/// c = {4, 6}. The minimum-pair distance between a and b is 8, yet going
/// through c costs only 3 + 3: the triangle inequality fails for the
/// minimum-pair set distance even though the underlying metric is fine.
pub fn single_triangle_counterexample() -> LabeledPointSet {
    let xs = [0.0, 1.0, 9.0, 10.0, 4.0, 6.0];
    let tags = ["a", "a", "b", "b", "c", "c"];
    LabeledPointSet::new(
        xs.iter().map(|&x| pt(x, 0.0)).collect(),
        tags.iter().map(|t| t.to_string()).collect(),
    )
    .expect("fixture is well formed")
}

/// A pair of spectacles: two 24-point lens rims, a 19-point bridge bar
/// between them, and a tight 2-point pupil inside each lens. The pupils sit
/// far from every rim point relative to their own spacing, so a good
/// hierarchy keeps each pupil as its own cluster across a wide band of
/// cuts.
///
/// Point order: left rim (0..24), right rim (24..48), bar (48..67),
/// left pupil (67..69), right pupil (69..71).
pub fn glasses_dataset() -> LabeledPointSet {
    let mut points = Vec::with_capacity(71);
    let mut labels = Vec::with_capacity(71);
    let lens_r = 2.0;
    for k in 0..24 {
        let theta = 2.0 * PI * k as f64 / 24.0;
        points.push(pt(-5.0 + lens_r * theta.cos(), lens_r * theta.sin()));
        labels.push("left-glass".to_string());
    }
    for k in 0..24 {
        let theta = 2.0 * PI * k as f64 / 24.0;
        points.push(pt(5.0 - lens_r * theta.cos(), lens_r * theta.sin()));
        labels.push("right-glass".to_string());
    }
    for k in 0..19 {
        points.push(pt(-2.25 + 0.25 * k as f64, 0.0));
        labels.push("bar".to_string());
    }
    for y in [0.15, -0.15] {
        points.push(pt(-5.0, y));
        labels.push("left-pupil".to_string());
    }
    for y in [0.15, -0.15] {
        points.push(pt(5.0, y));
        labels.push("right-pupil".to_string());
    }
    LabeledPointSet::new(points, labels).expect("fixture is well formed")
}

/// Three groups whose pairwise Hausdorff distances invert the merge order
/// one would read off any monotone hierarchy.
///
/// A is a 9-point segment at y = 0, B the same segment at y = -4, and C a
/// 16-point vertical rail at x = -2.5 spanning the band between them
/// (y = -3.875 up to y = -0.125), flanking both. As whole sets:
///
/// - Hausdorff(A, B) = 4, while the rail's far ends keep both
///   Hausdorff(A, C) and Hausdorff(B, C) at sqrt(17.265625) ≈ 4.16, so A
///   and B unite first;
/// - Hausdorff(A ∪ B, C) = sqrt(12.265625) ≈ 3.50: once united, the pair
///   sits uniformly close to the rail, below the height 4 just paid.
///
/// The merge dynamics on the full 34-point cloud realise exactly that
/// story. Each segment finishes assembling by height 1.25 and the rail by
/// height 2; every segment-to-rail merge costs at least 3.5 at every stage,
/// so A meets B at height 4 and the final merge drops back to about 3.5.
pub fn backstep_dataset() -> LabeledPointSet {
    let mut points = Vec::with_capacity(34);
    let mut labels = Vec::with_capacity(34);
    for k in 0..9 {
        points.push(pt(-1.0 + 0.25 * k as f64, 0.0));
        labels.push("A".to_string());
    }
    for k in 0..9 {
        points.push(pt(-1.0 + 0.25 * k as f64, -4.0));
        labels.push("B".to_string());
    }
    for k in 0..16 {
        points.push(pt(-2.5, -3.875 + 0.25 * k as f64));
        labels.push("C".to_string());
    }
    LabeledPointSet::new(points, labels).expect("fixture is well formed")
}
