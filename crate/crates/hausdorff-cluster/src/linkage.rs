//! The agglomerative engine: start from singletons, repeatedly merge the
//! pair of active clusters with the smallest linkage value, and record the
//! merge heights.
//!
//! Single and complete linkage admit cheap cluster-level update rules, but
//! the Hausdorff linkage does not: the directed value `max_a min_b d(a,b)`
//! depends on which member points realise the minima, so [`ClusterState`]
//! carries a point-to-cluster minimum table instead. For every point `p` and
//! active cluster `C` it stores `min_{c in C} d(p, c)`; merging two clusters
//! folds their columns with a pointwise `min`, and any directed Hausdorff
//! value is a max-scan over one column. That keeps a merge at O(n) table
//! work plus O(n^2) scan work per step, O(n^3) overall, with O(n^2) memory.
//!
//! Merge heights are not monotone for Hausdorff linkage: a union can sit
//! closer to a third cluster than its parts were to each other, so a later
//! merge may be lower than an earlier one. Those dips (backsteps) are real
//! output, not bugs; `analysis::detect_backsteps` lists them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;
use crate::set_distance::IndexSet;

/// Which inter-cluster distance drives the merges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Single,
    Complete,
    Hausdorff,
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Linkage::Single => "single",
            Linkage::Complete => "complete",
            Linkage::Hausdorff => "hausdorff",
        };
        f.write_str(name)
    }
}

impl FromStr for Linkage {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "single" => Ok(Linkage::Single),
            "complete" => Ok(Linkage::Complete),
            "hausdorff" => Ok(Linkage::Hausdorff),
            other => Err(format!(
                "unknown linkage {other:?} (expected single, complete or hausdorff)"
            )),
        }
    }
}

/// How to break exact ties between candidate merges.
///
/// Ties are detected by exact float equality of the candidate heights.
/// `Lexicographic` picks the candidate with the smallest `(left, right)` id
/// pair and makes runs bit-for-bit reproducible; `SeededRandom` draws the
/// candidate from a seeded generator, which is still reproducible for a
/// fixed seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    #[default]
    Lexicographic,
    SeededRandom(u64),
}

/// One merge: clusters `left` and `right` joined at `height` during
/// `step` (steps count from 1). The merged cluster gets id
/// `n_leaves + step`, with leaves occupying ids `0..n_leaves`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    #[serde(skip)]
    pub new_id: usize,
    pub step: usize,
}

/// The full merge history over `n_leaves` labelled leaves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub n_leaves: usize,
    #[serde(rename = "labels")]
    pub leaf_labels: Vec<String>,
    pub linkage: Linkage,
    pub merges: Vec<Merge>,
}

impl Dendrogram {
    /// Builds and validates a dendrogram from raw merges. Each merge must
    /// consume two distinct active ids in step order, and after the last
    /// one a single cluster must remain. `new_id` fields are recomputed as
    /// `n_leaves + step`, so callers may leave them zeroed. Heights only
    /// need to be finite and non-negative; they are allowed to go down.
    pub fn new(
        n_leaves: usize,
        leaf_labels: Vec<String>,
        linkage: Linkage,
        mut merges: Vec<Merge>,
    ) -> Result<Self> {
        if n_leaves == 0 {
            return Err(Error::NoItems);
        }
        if leaf_labels.len() != n_leaves {
            return Err(Error::LabelCountMismatch {
                labels: leaf_labels.len(),
                items: n_leaves,
            });
        }
        if merges.len() != n_leaves - 1 {
            return Err(Error::MalformedInput {
                what: "dendrogram",
                location: "merges".into(),
                detail: format!("expected {} merges, got {}", n_leaves - 1, merges.len()),
            });
        }
        let mut active: std::collections::BTreeSet<usize> = (0..n_leaves).collect();
        for (idx, merge) in merges.iter_mut().enumerate() {
            let step = idx + 1;
            if merge.step != step {
                return Err(Error::MalformedInput {
                    what: "dendrogram",
                    location: format!("merge {idx}"),
                    detail: format!("step {} out of order (expected {step})", merge.step),
                });
            }
            if merge.left > merge.right {
                std::mem::swap(&mut merge.left, &mut merge.right);
            }
            if merge.left == merge.right {
                return Err(Error::SelfMerge { id: merge.left });
            }
            if !merge.height.is_finite() || merge.height < 0.0 {
                return Err(Error::MalformedInput {
                    what: "dendrogram",
                    location: format!("merge {idx}"),
                    detail: format!("bad height {}", merge.height),
                });
            }
            if !active.remove(&merge.left) {
                return Err(Error::UnknownCluster { id: merge.left });
            }
            if !active.remove(&merge.right) {
                return Err(Error::UnknownCluster { id: merge.right });
            }
            merge.new_id = n_leaves + step;
            active.insert(merge.new_id);
        }
        debug_assert_eq!(active.len(), 1);
        Ok(Dendrogram {
            n_leaves,
            leaf_labels,
            linkage,
            merges,
        })
    }

    pub fn heights(&self) -> Vec<f64> {
        self.merges.iter().map(|m| m.height).collect()
    }

    /// Leaf indices of the cluster created at 1-based `step`, or of a leaf
    /// id. Ids above `n_leaves` address earlier merges.
    pub fn members_of(&self, id: usize) -> Result<Vec<usize>> {
        if id < self.n_leaves {
            return Ok(vec![id]);
        }
        let step = id - self.n_leaves;
        if step == 0 || step > self.merges.len() {
            return Err(Error::UnknownCluster { id });
        }
        let merge = &self.merges[step - 1];
        let mut out = self.members_of(merge.left)?;
        out.extend(self.members_of(merge.right)?);
        out.sort_unstable();
        Ok(out)
    }
}

/// Active clusters over a distance matrix plus the point-to-cluster minimum
/// table. `point_min(c)[p]` is the distance from point `p` to its nearest
/// member of cluster `c`.
#[derive(Debug, Clone)]
pub struct ClusterState<'a> {
    matrix: &'a DistanceMatrix,
    active: BTreeMap<usize, IndexSet>,
    point_min: BTreeMap<usize, Vec<f64>>,
    merges_done: usize,
}

impl<'a> ClusterState<'a> {
    /// One singleton cluster per point, ids `0..n`.
    pub fn singletons(matrix: &'a DistanceMatrix) -> Self {
        let n = matrix.n();
        let mut active = BTreeMap::new();
        let mut point_min = BTreeMap::new();
        for i in 0..n {
            active.insert(i, IndexSet::singleton(i));
            let column: Vec<f64> = (0..n).map(|p| matrix.get(p, i)).collect();
            point_min.insert(i, column);
        }
        ClusterState {
            matrix,
            active,
            point_min,
            merges_done: 0,
        }
    }

    pub fn matrix(&self) -> &DistanceMatrix {
        self.matrix
    }

    pub fn n_active(&self) -> usize {
        self.active.len()
    }

    /// Active cluster ids in ascending order.
    pub fn active_ids(&self) -> Vec<usize> {
        self.active.keys().copied().collect()
    }

    pub fn members(&self, id: usize) -> Result<&IndexSet> {
        self.active
            .get(&id)
            .ok_or(Error::UnknownCluster { id })
    }

    pub fn point_min(&self, id: usize) -> Result<&[f64]> {
        self.point_min
            .get(&id)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownCluster { id })
    }

    /// Merges two active clusters and returns the id of the union,
    /// `n + step` for the step just performed. The union's minimum column
    /// is the pointwise min of the two old columns, which is exactly the
    /// minimum over the united member set.
    pub fn merge_clusters(&mut self, a: usize, b: usize) -> Result<usize> {
        if a == b {
            return Err(Error::SelfMerge { id: a });
        }
        if !self.active.contains_key(&a) {
            return Err(Error::UnknownCluster { id: a });
        }
        if !self.active.contains_key(&b) {
            return Err(Error::UnknownCluster { id: b });
        }
        let set_a = self.active.remove(&a).expect("checked active");
        let set_b = self.active.remove(&b).expect("checked active");
        let col_a = self.point_min.remove(&a).expect("column tracked");
        let col_b = self.point_min.remove(&b).expect("column tracked");
        let column: Vec<f64> = col_a
            .iter()
            .zip(&col_b)
            .map(|(&x, &y)| x.min(y))
            .collect();
        self.merges_done += 1;
        let new_id = self.matrix.n() + self.merges_done;
        self.active.insert(new_id, set_a.union(&set_b));
        self.point_min.insert(new_id, column);
        Ok(new_id)
    }

    /// Linkage value between two active clusters, computed from the state.
    /// Agrees exactly (same selected floats) with the corresponding
    /// `set_distance` scan over the member sets.
    pub fn pair_distance(&self, a: usize, b: usize, linkage: Linkage) -> Result<f64> {
        let set_a = self.members(a)?;
        let set_b = self.members(b)?;
        match linkage {
            Linkage::Single => {
                // min over all pairs == min over the smaller side of the
                // other side's nearest-member column
                let (small, col) = if set_a.len() <= set_b.len() {
                    (set_a, self.point_min(b)?)
                } else {
                    (set_b, self.point_min(a)?)
                };
                let mut best = f64::INFINITY;
                for &p in small.members() {
                    let v = col[p];
                    if v < best {
                        best = v;
                    }
                }
                Ok(best)
            }
            Linkage::Complete => {
                let mut worst = 0.0f64;
                for &i in set_a.members() {
                    for &j in set_b.members() {
                        let v = self.matrix.get(i, j);
                        if v > worst {
                            worst = v;
                        }
                    }
                }
                Ok(worst)
            }
            Linkage::Hausdorff => {
                let col_b = self.point_min(b)?;
                let col_a = self.point_min(a)?;
                let mut worst = 0.0f64;
                for &p in set_a.members() {
                    let v = col_b[p];
                    if v > worst {
                        worst = v;
                    }
                }
                for &q in set_b.members() {
                    let v = col_a[q];
                    if v > worst {
                        worst = v;
                    }
                }
                Ok(worst)
            }
        }
    }
}

/// Runs the full agglomeration: `n - 1` merges, each taking the pair of
/// active clusters with the smallest linkage value. Candidates at exactly
/// the minimum height are resolved by `ties`. With one point the result has
/// no merges.
pub fn agglomerate(
    matrix: &DistanceMatrix,
    linkage: Linkage,
    ties: TiePolicy,
) -> Result<Dendrogram> {
    let n = matrix.n();
    let mut state = ClusterState::singletons(matrix);
    let mut merges: Vec<Merge> = Vec::with_capacity(n.saturating_sub(1));
    let mut rng = match ties {
        TiePolicy::Lexicographic => None,
        TiePolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    for step in 1..n {
        let ids = state.active_ids();
        let mut best = f64::INFINITY;
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let dist = state.pair_distance(a, b, linkage)?;
                if dist < best {
                    best = dist;
                    candidates.clear();
                    candidates.push((a, b));
                } else if dist == best {
                    candidates.push((a, b));
                }
            }
        }
        // ids ascend, so the scan order is lexicographic and the first
        // candidate is the lexicographically smallest pair
        let (left, right) = match rng.as_mut() {
            None => candidates[0],
            Some(r) => candidates[r.gen_range(0..candidates.len())],
        };
        let new_id = state.merge_clusters(left, right)?;
        merges.push(Merge {
            left,
            right,
            height: best,
            new_id,
            step,
        });
    }
    Dendrogram::new(n, matrix.labels().to_vec(), linkage, merges)
}
