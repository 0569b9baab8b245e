//! Finite probability distributions over ordered alphabets.
//!
//! Zero-probability symbols stay in the alphabet; the support is computed on
//! demand. All values are immutable once validated.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Allowed deviation of the total mass from 1.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Separator used when forming labels of product symbols.
pub const PAIR_SEPARATOR: &str = "⊗";

/// The order parameter `q >= 0` of Rényi and Tsallis quantities.
///
/// The distinguished orders 0 and 1 are recognized by exact comparison.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub const ZERO: Order = Order(0.0);
    pub const ONE: Order = Order(1.0);

    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q >= 0.0 {
            Ok(Order(q))
        } else {
            Err(Error::InvalidOrder(q))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }

    /// The dual order `2 - q`, defined for `q <= 2`.
    pub fn dual(self) -> Result<Self> {
        Order::new(2.0 - self.0)
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        Order::new(q)
    }
}

/// A probability mass function over a finite ordered alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    labels: Vec<String>,
    probs: Vec<f64>,
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    Ok(())
}

impl Distribution {
    /// Validates `probs` against `labels`.
    ///
    /// With `renormalize` set, any positive total mass is accepted and each
    /// probability is divided by it; otherwise the mass must already be within
    /// [`MASS_TOLERANCE`] of 1.
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        probs: impl IntoIterator<Item = f64>,
        renormalize: bool,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut probs: Vec<f64> = probs.into_iter().collect();
        if labels.len() != probs.len() {
            return Err(Error::LengthMismatch {
                labels: labels.len(),
                values: probs.len(),
            });
        }
        check_labels(&labels)?;
        for (label, &p) in labels.iter().zip(&probs) {
            if !(p.is_finite() && p >= 0.0) {
                return Err(Error::InvalidProbability {
                    label: label.clone(),
                    value: p,
                });
            }
        }
        let total: f64 = probs.iter().sum();
        if renormalize {
            if total <= 0.0 {
                return Err(Error::ZeroMass);
            }
            probs.iter_mut().for_each(|p| *p /= total);
        } else if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::MassNotNormalized(total));
        }
        Ok(Distribution { labels, probs })
    }

    /// Distribution with generated labels `"0"`, `"1"`, ...
    pub fn from_probs(probs: &[f64]) -> Result<Self> {
        Distribution::new(
            (0..probs.len()).map(|i| i.to_string()),
            probs.iter().copied(),
            false,
        )
    }

    /// The uniform distribution on `n` symbols labelled `"0"`..`"n-1"`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Distribution::new(
            (0..n).map(|i| i.to_string()),
            vec![1.0 / n as f64; n],
            false,
        )
    }

    /// The uniform distribution over the same alphabet as `self`.
    pub fn uniform_like(&self) -> Self {
        let n = self.len();
        Distribution {
            labels: self.labels.clone(),
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn prob_of(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.probs[i])
    }

    /// Number of symbols with positive probability.
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }

    pub fn has_full_support(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }

    pub fn same_alphabet(&self, other: &Distribution) -> bool {
        self.labels == other.labels
    }

    pub(crate) fn require_same_alphabet(&self, other: &Distribution) -> Result<()> {
        if self.same_alphabet(other) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Product distribution over pair symbols, `p(a, b) = p_a * q_b`, with
    /// `self` varying slowest.
    pub fn product(&self, other: &Distribution) -> Result<Distribution> {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        let mut probs = Vec::with_capacity(self.len() * other.len());
        for (a, &pa) in self.labels.iter().zip(&self.probs) {
            for (b, &pb) in other.labels.iter().zip(&other.probs) {
                labels.push(format!("{a}{PAIR_SEPARATOR}{b}"));
                probs.push(pa * pb);
            }
        }
        check_labels(&labels)?;
        Ok(Distribution { labels, probs })
    }

    /// The `n`-fold product `P × P × ... × P`.
    pub fn power(&self, n: usize) -> Result<Distribution> {
        if n == 0 {
            return Err(Error::Config("block length must be positive".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Pointwise mixture `λ self + (1 - λ) other`.
    pub fn mix(&self, other: &Distribution, lambda: f64) -> Result<Distribution> {
        self.require_same_alphabet(other)?;
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Config(format!(
                "mixing weight {lambda} outside [0, 1]"
            )));
        }
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(p, q)| lambda * p + (1.0 - lambda) * q)
            .collect();
        Ok(Distribution {
            labels: self.labels.clone(),
            probs,
        })
    }

    /// Escort distribution `p_a^q / Σ_b p_b^q`.
    ///
    /// Order 0 is only accepted for full-support `P` (where it yields the
    /// uniform distribution), since `0^0` has no agreed value here.
    pub fn escort(&self, q: Order) -> Result<Distribution> {
        if q.is_zero() {
            if let Some(i) = self.probs.iter().position(|&p| p == 0.0) {
                return Err(Error::ZeroProbability(self.labels[i].clone()));
            }
            return Ok(self.uniform_like());
        }
        if q.is_one() {
            return Ok(self.clone());
        }
        // log domain keeps large orders from underflowing every term
        let logs: Vec<f64> = self
            .probs
            .iter()
            .map(|&p| {
                if p > 0.0 {
                    q.value() * p.ln()
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            return Err(Error::ZeroMass);
        }
        let weights: Vec<f64> = logs.iter().map(|&l| (l - max).exp()).collect();
        let total: f64 = weights.iter().sum();
        Ok(Distribution {
            labels: self.labels.clone(),
            probs: weights.into_iter().map(|w| w / total).collect(),
        })
    }
}

/// A probability matrix over a product alphabet, rows indexing `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    rows: Vec<String>,
    cols: Vec<String>,
    // row-major
    cells: Vec<f64>,
}

impl JointDistribution {
    pub fn new<S: Into<String>, T: Into<String>>(
        rows: impl IntoIterator<Item = S>,
        cols: impl IntoIterator<Item = T>,
        matrix: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let rows: Vec<String> = rows.into_iter().map(Into::into).collect();
        let cols: Vec<String> = cols.into_iter().map(Into::into).collect();
        check_labels(&rows)?;
        check_labels(&cols)?;
        if matrix.len() != rows.len() {
            return Err(Error::LengthMismatch {
                labels: rows.len(),
                values: matrix.len(),
            });
        }
        let mut cells = Vec::with_capacity(rows.len() * cols.len());
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != cols.len() {
                return Err(Error::Ragged {
                    row: r,
                    len: row.len(),
                    expected: cols.len(),
                });
            }
            for (c, &p) in row.iter().enumerate() {
                if !(p.is_finite() && p >= 0.0) {
                    return Err(Error::InvalidProbability {
                        label: format!("{}{PAIR_SEPARATOR}{}", rows[r], cols[c]),
                        value: p,
                    });
                }
                cells.push(p);
            }
        }
        let total: f64 = cells.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::MassNotNormalized(total));
        }
        Ok(JointDistribution { rows, cols, cells })
    }

    /// Joint law of `(X, X)`: `P` on the diagonal, zero elsewhere.
    pub fn diagonal(p: &Distribution) -> JointDistribution {
        let n = p.len();
        let mut cells = vec![0.0; n * n];
        for (i, &pi) in p.probs().iter().enumerate() {
            cells[i * n + i] = pi;
        }
        JointDistribution {
            rows: p.labels().to_vec(),
            cols: p.labels().to_vec(),
            cells,
        }
    }

    /// Joint law of independent `X ~ P`, `Y ~ Q`.
    pub fn independent(p: &Distribution, q: &Distribution) -> JointDistribution {
        let cells = p
            .probs()
            .iter()
            .flat_map(|&a| q.probs().iter().map(move |&b| a * b))
            .collect();
        JointDistribution {
            rows: p.labels().to_vec(),
            cols: q.labels().to_vec(),
            cells,
        }
    }

    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[String] {
        &self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.cells[row * self.cols.len() + col]
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.cells
            .chunks(self.cols.len())
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// Row sums and column sums.
    pub fn marginals(&self) -> (Distribution, Distribution) {
        let ncols = self.cols.len();
        let mut row_sums = vec![0.0; self.rows.len()];
        let mut col_sums = vec![0.0; ncols];
        for (i, &p) in self.cells.iter().enumerate() {
            row_sums[i / ncols] += p;
            col_sums[i % ncols] += p;
        }
        (
            Distribution {
                labels: self.rows.clone(),
                probs: row_sums,
            },
            Distribution {
                labels: self.cols.clone(),
                probs: col_sums,
            },
        )
    }

    /// The joint law as a distribution over pair symbols, in the same order
    /// as [`Distribution::product`] of the marginals.
    pub fn flatten(&self) -> Distribution {
        let labels = self
            .rows
            .iter()
            .flat_map(|r| {
                self.cols
                    .iter()
                    .map(move |c| format!("{r}{PAIR_SEPARATOR}{c}"))
            })
            .collect();
        Distribution {
            labels,
            probs: self.cells.clone(),
        }
    }

    /// Flattened product of the marginals, `P_X × P_Y`.
    pub fn product_of_marginals(&self) -> Distribution {
        let (px, py) = self.marginals();
        let probs = px
            .probs()
            .iter()
            .flat_map(|&a| py.probs().iter().map(move |&b| a * b))
            .collect();
        Distribution {
            labels: self.flatten().labels,
            probs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn make_distribution_examples() {
        let d = Distribution::new(["a", "b"], [0.5, 0.5], false).unwrap();
        assert_eq!(d.probs(), &[0.5, 0.5]);

        let d = Distribution::new(["a", "b"], [2.0, 2.0], true).unwrap();
        assert_eq!(d.probs(), &[0.5, 0.5]);

        let err = Distribution::new(["a", "b"], [0.5, 0.6], false).unwrap_err();
        assert!(matches!(err, Error::MassNotNormalized(m) if (m - 1.1).abs() < 1e-12));
    }

    #[test]
    fn make_distribution_errors() {
        assert!(matches!(
            Distribution::new(["a", "b"], [-0.5, 1.5], false),
            Err(Error::InvalidProbability { .. })
        ));
        assert_eq!(
            Distribution::new(["a", "b"], [0.0, 0.0], true),
            Err(Error::ZeroMass)
        );
        assert_eq!(
            Distribution::new(["a", "a"], [0.5, 0.5], false),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert!(matches!(
            Distribution::new(["a"], [0.5, 0.5], false),
            Err(Error::LengthMismatch {
                labels: 1,
                values: 2
            })
        ));
        assert!(Distribution::new(["a"], [f64::NAN], true).is_err());
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(Distribution::uniform(2).unwrap().probs(), &[0.5, 0.5]);
        assert_eq!(Distribution::uniform(4).unwrap().probs(), &[0.25; 4]);
        assert_eq!(Distribution::uniform(1).unwrap().probs(), &[1.0]);
        assert_eq!(Distribution::uniform(0), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn product_examples() {
        let half = Distribution::uniform(2).unwrap();
        assert_eq!(half.product(&half).unwrap().probs(), &[0.25; 4]);

        let one = Distribution::new(["x"], [1.0], false).unwrap();
        let q = Distribution::new(["a", "b"], [0.3, 0.7], false).unwrap();
        let pq = one.product(&q).unwrap();
        assert_eq!(pq.probs(), q.probs());
        assert_eq!(pq.labels(), &["x⊗a", "x⊗b"]);

        let p = Distribution::from_probs(&[0.9, 0.1]).unwrap();
        let pp = p.product(&p).unwrap();
        assert!(close(pp.probs(), &[0.81, 0.09, 0.09, 0.01], 1e-15));
    }

    #[test]
    fn marginals_examples() {
        let j =
            JointDistribution::new(["0", "1"], ["0", "1"], vec![vec![0.5, 0.0], vec![0.0, 0.5]])
                .unwrap();
        let (x, y) = j.marginals();
        assert_eq!(x.probs(), &[0.5, 0.5]);
        assert_eq!(y.probs(), &[0.5, 0.5]);

        let px = Distribution::from_probs(&[0.9, 0.1]).unwrap();
        let py = Distribution::uniform(2).unwrap();
        let (x, y) = JointDistribution::independent(&px, &py).marginals();
        assert!(close(x.probs(), &[0.9, 0.1], 1e-15));
        assert!(close(y.probs(), &[0.5, 0.5], 1e-15));

        let j =
            JointDistribution::new(["0", "1"], ["0", "1"], vec![vec![0.4, 0.1], vec![0.2, 0.3]])
                .unwrap();
        let (x, y) = j.marginals();
        assert!(close(x.probs(), &[0.5, 0.5], 1e-15));
        assert!(close(y.probs(), &[0.6, 0.4], 1e-15));
    }

    #[test]
    fn joint_rejects_ragged_and_unnormalized() {
        assert!(matches!(
            JointDistribution::new(["0", "1"], ["0", "1"], vec![vec![0.5, 0.0], vec![0.5]]),
            Err(Error::Ragged { row: 1, .. })
        ));
        assert!(matches!(
            JointDistribution::new(["0"], ["0", "1"], vec![vec![0.5, 0.4]]),
            Err(Error::MassNotNormalized(_))
        ));
    }

    #[test]
    fn diagonal_examples() {
        let one = Distribution::new(["a"], [1.0], false).unwrap();
        assert_eq!(JointDistribution::diagonal(&one).matrix(), vec![vec![1.0]]);
        let half = Distribution::uniform(2).unwrap();
        assert_eq!(
            JointDistribution::diagonal(&half).matrix(),
            vec![vec![0.5, 0.0], vec![0.0, 0.5]]
        );
    }

    #[test]
    fn escort_examples() {
        let p = Distribution::from_probs(&[0.8, 0.2]).unwrap();
        assert_eq!(p.escort(Order::ONE).unwrap(), p);
        let e = p.escort(Order::new(2.0).unwrap()).unwrap();
        assert!(close(e.probs(), &[0.64 / 0.68, 0.04 / 0.68], 1e-15));
        assert!(close(e.probs(), &[0.94118, 0.05882], 1e-5));

        let u = Distribution::uniform(2).unwrap();
        for q in [0.1, 0.5, 3.0, 40.0] {
            assert!(close(
                u.escort(Order::new(q).unwrap()).unwrap().probs(),
                &[0.5, 0.5],
                1e-15
            ));
        }
    }

    #[test]
    fn escort_order_zero() {
        let p = Distribution::from_probs(&[0.8, 0.2]).unwrap();
        assert_eq!(p.escort(Order::ZERO).unwrap().probs(), &[0.5, 0.5]);
        let z = Distribution::from_probs(&[1.0, 0.0]).unwrap();
        assert_eq!(
            z.escort(Order::ZERO),
            Err(Error::ZeroProbability("1".into()))
        );
        // zeros stay zero for positive orders
        assert_eq!(
            z.escort(Order::new(3.0).unwrap()).unwrap().probs(),
            &[1.0, 0.0]
        );
    }

    #[test]
    fn order_validation() {
        assert!(Order::new(-0.1).is_err());
        assert!(Order::new(f64::INFINITY).is_err());
        assert!(Order::new(f64::NAN).is_err());
        assert!(Order::new(1.0).unwrap().is_one());
        assert!(!Order::new(1.0 + 1e-15).unwrap().is_one());
        assert_eq!(Order::new(0.5).unwrap().dual().unwrap().value(), 1.5);
    }
}
