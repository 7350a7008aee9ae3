//! Points, return series, correlation distance and validated distance
//! matrices. Everything downstream (set distances, linkage) consumes the
//! [`DistanceMatrix`] built here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in R^d. Coordinates are finite and there is at least one of them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                context: "point coordinates",
            });
        }
        Ok(Point { coords })
    }

    /// Convenience constructor for the planar case.
    pub fn xy(x: f64, y: f64) -> Result<Self> {
        Point::new(vec![x, y])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// Euclidean distance between two points of equal dimension.
pub fn euclidean_distance(p: &Point, q: &Point) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let sum: f64 = p
        .coords
        .iter()
        .zip(&q.coords)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(sum.sqrt())
}

/// A labelled series of log-returns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnSeries {
    label: String,
    values: Vec<f64>,
}

impl ReturnSeries {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if values.is_empty() {
            return Err(Error::EmptySeries { label });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "return values",
            });
        }
        Ok(ReturnSeries { label, values })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Log-returns of a positive price series: `ln(p[t] / p[t-1])` for every
/// consecutive pair, so the output is one shorter than the input.
pub fn log_returns(label: impl Into<String>, prices: &[f64]) -> Result<ReturnSeries> {
    let label = label.into();
    if prices.len() < 2 {
        return Err(Error::TooFewPrices { len: prices.len() });
    }
    for (row, &p) in prices.iter().enumerate() {
        if !p.is_finite() || p <= 0.0 {
            return Err(Error::NonPositivePrice {
                label,
                row,
                value: p,
            });
        }
    }
    let values = prices.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
    ReturnSeries::new(label, values)
}

/// A table of positive prices: one date column and one price column per
/// label, all the same length.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceTable {
    labels: Vec<String>,
    dates: Vec<String>,
    /// prices[s][t] is the price of series `s` on day `t`.
    prices: Vec<Vec<f64>>,
}

impl PriceTable {
    pub fn new(labels: Vec<String>, dates: Vec<String>, prices: Vec<Vec<f64>>) -> Result<Self> {
        if labels.len() != prices.len() {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                items: prices.len(),
            });
        }
        if labels.is_empty() {
            return Err(Error::NoItems);
        }
        for (label, series) in labels.iter().zip(&prices) {
            if series.len() != dates.len() {
                return Err(Error::SeriesLengthMismatch {
                    left: dates.len(),
                    right: series.len(),
                });
            }
            for (row, &p) in series.iter().enumerate() {
                if !p.is_finite() || p <= 0.0 {
                    return Err(Error::NonPositivePrice {
                        label: label.clone(),
                        row,
                        value: p,
                    });
                }
            }
        }
        Ok(PriceTable {
            labels,
            dates,
            prices,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dates(&self) -> &[String] {
        &self.dates
    }

    pub fn prices(&self) -> &[Vec<f64>] {
        &self.prices
    }

    pub fn n_series(&self) -> usize {
        self.labels.len()
    }

    pub fn n_days(&self) -> usize {
        self.dates.len()
    }

    /// Log-return series for every column of the table.
    pub fn return_series(&self) -> Result<Vec<ReturnSeries>> {
        self.labels
            .iter()
            .zip(&self.prices)
            .map(|(label, prices)| log_returns(label.clone(), prices))
            .collect()
    }
}

/// Pearson correlation of two equally long series, using population moments
/// over the whole window. Computed as `Sxy / sqrt(Sxx * Syy)` on centered
/// values, which is the same quantity with the `1/N` factors cancelled, and
/// clamped into [-1, 1] to absorb rounding at the endpoints.
pub fn correlation(x: &ReturnSeries, y: &ReturnSeries) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::SeriesLengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::SeriesLengthMismatch {
            left: x.len(),
            right: 2,
        });
    }
    let n = x.len() as f64;
    let mean_x: f64 = x.values.iter().sum::<f64>() / n;
    let mean_y: f64 = y.values.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (&a, &b) in x.values.iter().zip(&y.values) {
        let dx = a - mean_x;
        let dy = b - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || x.values.iter().all(|&v| v == x.values[0]) {
        return Err(Error::ZeroVariance {
            label: x.label.clone(),
        });
    }
    if syy == 0.0 || y.values.iter().all(|&v| v == y.values[0]) {
        return Err(Error::ZeroVariance {
            label: y.label.clone(),
        });
    }
    let rho = sxy / (sxx * syy).sqrt();
    Ok(rho.clamp(-1.0, 1.0))
}

/// Maps a correlation to a distance: `sqrt(2 * (1 - rho))`, which is 0 for
/// perfectly correlated series and 2 for anticorrelated ones.
pub fn correlation_distance(rho: f64) -> Result<f64> {
    if !rho.is_finite() || !(-1.0..=1.0).contains(&rho) {
        return Err(Error::CorrelationOutOfRange { rho });
    }
    Ok((2.0 * (1.0 - rho)).sqrt())
}

/// A validated symmetric distance matrix with labelled rows.
///
/// Construction enforces: square shape, finite non-negative entries, an
/// exactly zero diagonal and exact symmetry. Off-diagonal zeros are allowed
/// (two items may coincide), which makes this a pseudometric in general; use
/// [`DistanceMatrix::check_metric_axioms`] to diagnose.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    data: Vec<f64>, // row-major n x n
}

impl DistanceMatrix {
    pub fn new(labels: Vec<String>, data: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NoItems);
        }
        if data.len() != n * n {
            return Err(Error::NonSquareMatrix { len: data.len(), n });
        }
        for i in 0..n {
            for j in 0..n {
                let v = data[i * n + j];
                if !v.is_finite() {
                    return Err(Error::BadMatrixEntry {
                        i,
                        j,
                        value: v,
                        reason: "not finite",
                    });
                }
                if v < 0.0 {
                    return Err(Error::BadMatrixEntry {
                        i,
                        j,
                        value: v,
                        reason: "negative",
                    });
                }
                if i == j && v != 0.0 {
                    return Err(Error::BadMatrixEntry {
                        i,
                        j,
                        value: v,
                        reason: "nonzero diagonal",
                    });
                }
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::BadMatrixEntry {
                        i,
                        j,
                        value: v,
                        reason: "asymmetric",
                    });
                }
            }
        }
        Ok(DistanceMatrix { labels, data })
    }

    /// Euclidean distance matrix over a point cloud, with row labels `0..n`.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        let labels = (0..points.len()).map(|i| i.to_string()).collect();
        Self::from_points_with_labels(points, labels)
    }

    /// Each unordered pair is computed once and mirrored, so the result is
    /// exactly symmetric; the diagonal is written as zero without computing.
    pub fn from_points_with_labels(points: &[Point], labels: Vec<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::NoItems);
        }
        if labels.len() != points.len() {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                items: points.len(),
            });
        }
        let n = points.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euclidean_distance(&points[i], &points[j])?;
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        DistanceMatrix::new(labels, data)
    }

    /// Correlation-distance matrix over return series, labelled by the
    /// series labels. Entries live in [0, 2].
    pub fn from_series(series: &[ReturnSeries]) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::NoItems);
        }
        let n = series.len();
        let labels = series.iter().map(|s| s.label().to_string()).collect();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let rho = correlation(&series[i], &series[j])?;
                let d = correlation_distance(rho)?;
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        DistanceMatrix::new(labels, data)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n() + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Checks the metric axioms up to `tol` and reports every violation:
    /// off-diagonal zeros (coincident items, pseudometric territory),
    /// asymmetric pairs, and triangle-inequality violations over all triples.
    /// Cubic in n.
    pub fn check_metric_axioms(&self, tol: f64) -> MetricAxiomReport {
        let n = self.n();
        let mut report = MetricAxiomReport {
            tolerance: tol,
            coincident_pairs: Vec::new(),
            asymmetric_pairs: Vec::new(),
            triangle_violations: Vec::new(),
        };
        for i in 0..n {
            for j in (i + 1)..n {
                if self.get(i, j).abs() <= tol {
                    report.coincident_pairs.push((i, j));
                }
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    report.asymmetric_pairs.push((i, j));
                }
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    if self.get(i, j) > self.get(i, k) + self.get(k, j) + tol {
                        report.triangle_violations.push((i, j, k));
                    }
                }
            }
        }
        report
    }
}

/// Outcome of [`DistanceMatrix::check_metric_axioms`].
#[derive(Debug, Clone, PartialEq)]
pub struct MetricAxiomReport {
    pub tolerance: f64,
    /// Distinct items at distance <= tol of each other.
    pub coincident_pairs: Vec<(usize, usize)>,
    pub asymmetric_pairs: Vec<(usize, usize)>,
    /// Triples (i, j, k) with d(i,j) > d(i,k) + d(k,j) + tol.
    pub triangle_violations: Vec<(usize, usize, usize)>,
}

impl MetricAxiomReport {
    /// True metric: no violations of any axiom.
    pub fn is_metric(&self) -> bool {
        self.coincident_pairs.is_empty() && self.is_pseudometric()
    }

    /// Pseudometric: symmetry and triangle inequality hold, but distinct
    /// items may coincide.
    pub fn is_pseudometric(&self) -> bool {
        self.asymmetric_pairs.is_empty() && self.triangle_violations.is_empty()
    }
}
