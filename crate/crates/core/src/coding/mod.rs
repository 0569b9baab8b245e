//! Idealized codes.
//!
//! A code is identified with its length function `a ↦ l_a`, real-valued and
//! subject to Kraft's inequality `Σ 2^(-l_a) <= 1`. Codes meeting it with
//! equality are compact and correspond one-to-one with distributions through
//! `l_a = -log2 p_a`.

mod codebook;

pub use codebook::{canonical_codebook, Codebook};

use crate::dist::{Distribution, Order};
use crate::error::{Error, Result};
use crate::measures::renyi_divergence;

/// Slack allowed on Kraft sums and compactness.
pub const KRAFT_TOLERANCE: f64 = 1e-9;

/// Default cap on `|alphabet|^n` for block coding.
pub const DEFAULT_BLOCK_CAP: u64 = 1_000_000;

/// Real code lengths in bits over an ordered alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthFunction {
    labels: Vec<String>,
    lengths: Vec<f64>,
}

impl LengthFunction {
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        lengths: impl IntoIterator<Item = f64>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let lengths: Vec<f64> = lengths.into_iter().collect();
        if labels.len() != lengths.len() {
            return Err(Error::LengthMismatch {
                labels: labels.len(),
                values: lengths.len(),
            });
        }
        if labels.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut seen = std::collections::HashSet::new();
        for (label, &l) in labels.iter().zip(&lengths) {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
            if !(l.is_finite() && l >= 0.0) {
                return Err(Error::InvalidLength {
                    label: label.clone(),
                    value: l,
                });
            }
        }
        let code = LengthFunction { labels, lengths };
        let z = code.kraft_sum();
        if z > 1.0 + KRAFT_TOLERANCE {
            return Err(Error::KraftViolated(z));
        }
        Ok(code)
    }

    /// Lengths with generated labels `"0"`, `"1"`, ...
    pub fn from_lengths(lengths: &[f64]) -> Result<Self> {
        LengthFunction::new(
            (0..lengths.len()).map(|i| i.to_string()),
            lengths.iter().copied(),
        )
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// The partition sum `Z = Σ 2^(-l_a)`.
    pub fn kraft_sum(&self) -> f64 {
        self.lengths.iter().map(|&l| (-l).exp2()).sum()
    }

    pub fn is_compact(&self, tol: f64) -> bool {
        (self.kraft_sum() - 1.0).abs() <= tol
    }

    /// `l + log2 Z`: every word shortened by the same amount until Kraft's
    /// inequality is tight.
    pub fn compress(&self) -> LengthFunction {
        let shift = self.kraft_sum().log2();
        LengthFunction {
            labels: self.labels.clone(),
            lengths: self.lengths.iter().map(|&l| (l + shift).max(0.0)).collect(),
        }
    }

    /// The code adapted to `p`, `l_a = -log2 p_a`. Requires full support.
    pub fn adapted(p: &Distribution) -> Result<LengthFunction> {
        let lengths = p
            .labels()
            .iter()
            .zip(p.probs())
            .map(|(label, &pa)| {
                if pa > 0.0 {
                    Ok(-pa.log2())
                } else {
                    Err(Error::ZeroProbability(label.clone()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LengthFunction {
            labels: p.labels().to_vec(),
            lengths,
        })
    }

    /// The distribution `p_a = 2^(-l_a)` of a compact code, renormalized by
    /// `Z` to absorb the tolerated slack.
    pub fn distribution(&self) -> Result<Distribution> {
        let z = self.kraft_sum();
        if (z - 1.0).abs() > KRAFT_TOLERANCE {
            return Err(Error::NotCompact(z));
        }
        Distribution::new(
            self.labels.iter().cloned(),
            self.lengths.iter().map(|&l| (-l).exp2() / z),
            false,
        )
    }

    /// Shannon's integer code, `l_a = ⌈-log2 p_a⌉`. Requires full support.
    pub fn shannon_integer(p: &Distribution) -> Result<LengthFunction> {
        let adapted = LengthFunction::adapted(p)?;
        Ok(LengthFunction {
            labels: adapted.labels,
            lengths: adapted.lengths.into_iter().map(f64::ceil).collect(),
        })
    }

    /// `(1 - w) self + w other`, pointwise.
    pub fn convex_combination(&self, other: &LengthFunction, w: f64) -> Result<LengthFunction> {
        if self.labels != other.labels {
            return Err(Error::AlphabetMismatch);
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::Config(format!("mixing weight {w} outside [0, 1]")));
        }
        LengthFunction::new(
            self.labels.iter().cloned(),
            self.lengths
                .iter()
                .zip(&other.lengths)
                .map(|(a, b)| (1.0 - w) * a + w * b),
        )
    }
}

pub fn kraft_sum(l: &LengthFunction) -> f64 {
    l.kraft_sum()
}

pub fn is_compact(l: &LengthFunction, tol: f64) -> bool {
    l.is_compact(tol)
}

pub fn compress(l: &LengthFunction) -> LengthFunction {
    l.compress()
}

pub fn adapted_code(p: &Distribution) -> Result<LengthFunction> {
    LengthFunction::adapted(p)
}

pub fn dist_of_code(l: &LengthFunction) -> Result<Distribution> {
    l.distribution()
}

pub fn shannon_integer_code(p: &Distribution) -> Result<LengthFunction> {
    LengthFunction::shannon_integer(p)
}

/// Average code length `Σ p_a l_a` in bits.
pub fn expected_length(p: &Distribution, l: &LengthFunction) -> Result<f64> {
    if p.labels() != l.labels() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(p.probs()
        .iter()
        .zip(l.lengths())
        .map(|(pa, la)| pa * la)
        .sum())
}

/// The outcome of mixing two compact codes.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeMixture {
    /// The pointwise mixture `(1 - q) κ₁ + q κ₂` before compression.
    pub mixture: LengthFunction,
    /// The compressed, compact mixture.
    pub code: LengthFunction,
    /// Bits saved per symbol by compressing the mixture, `-log2 Z`.
    pub gain: f64,
}

/// Mixes compact codes `k1` and `k2` with weight `q ∈ [0, 1]` on `k2` and
/// compresses the result.
///
/// The returned code is `(1 - q) κ₁ + q κ₂ - q D_{1-q}(P₁‖P₂)`; it is compact,
/// and the gain equals `q · D_{1-q}(P₁‖P₂)`. At the endpoints the
/// corresponding input code is returned unchanged with zero gain.
pub fn mix_codes(k1: &LengthFunction, k2: &LengthFunction, q: Order) -> Result<CodeMixture> {
    let w = q.value();
    if w > 1.0 {
        return Err(Error::OrderOutOfRange(w, "[0, 1]"));
    }
    if k1.labels != k2.labels {
        return Err(Error::AlphabetMismatch);
    }
    for k in [k1, k2] {
        if !k.is_compact(KRAFT_TOLERANCE) {
            return Err(Error::NotCompact(k.kraft_sum()));
        }
    }
    if q.is_zero() || q.is_one() {
        let code = if q.is_zero() { k1 } else { k2 }.clone();
        return Ok(CodeMixture {
            mixture: code.clone(),
            code,
            gain: 0.0,
        });
    }
    let mixture = k1.convex_combination(k2, w)?;
    let z = mixture.kraft_sum();
    let gain = -z.log2();
    if !gain.is_finite() {
        return Err(Error::MutuallySingular);
    }
    Ok(CodeMixture {
        code: mixture.compress(),
        gain: gain.max(0.0),
        mixture,
    })
}

/// `q · D_{1-q}(P₁‖P₂)` for the distributions of two compact codes; the
/// independent route to the gain of [`mix_codes`].
pub fn mixture_gain_from_divergence(
    k1: &LengthFunction,
    k2: &LengthFunction,
    q: Order,
) -> Result<f64> {
    if q.value() > 1.0 {
        return Err(Error::OrderOutOfRange(q.value(), "[0, 1]"));
    }
    let p1 = k1.distribution()?;
    let p2 = k2.distribution()?;
    let d = renyi_divergence(&p1, &p2, Order::new(1.0 - q.value())?)?;
    Ok(q.value() * d.value())
}

/// Per-letter expected length of Shannon's integer code on the `n`-fold
/// product source `P^n`.
pub fn block_code_rate(p: &Distribution, n: usize) -> Result<f64> {
    block_code_rate_capped(p, n, DEFAULT_BLOCK_CAP)
}

pub fn block_code_rate_capped(p: &Distribution, n: usize, cap: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Config("block length must be positive".into()));
    }
    if let Some(i) = p.probs().iter().position(|&x| x == 0.0) {
        return Err(Error::ZeroProbability(p.labels()[i].clone()));
    }
    let k = p.len() as u128;
    let size = u32::try_from(n)
        .ok()
        .and_then(|e| k.checked_pow(e))
        .unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::BlockCapExceeded { size, cap });
    }
    let probs = p.probs();
    // mixed-radix walk over P^n, first coordinate most significant
    let mut digits = vec![0usize; n];
    let mut total = 0.0;
    for _ in 0..size {
        let prob: f64 = digits.iter().map(|&d| probs[d]).product();
        total += prob * (-prob.log2()).ceil();
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < probs.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(total / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::shannon_entropy;

    fn lf(l: &[f64]) -> LengthFunction {
        LengthFunction::from_lengths(l).unwrap()
    }

    fn d(p: &[f64]) -> Distribution {
        Distribution::from_probs(p).unwrap()
    }

    const TABLE_ONE: [f64; 6] = [2.0, 2.0, 2.0, 3.0, 4.0, 4.0];

    #[test]
    fn kraft_sum_examples() {
        assert_eq!(lf(&[1.0, 1.0]).kraft_sum(), 1.0);
        assert_eq!(lf(&TABLE_ONE).kraft_sum(), 1.0);
        assert_eq!(lf(&[2.0, 2.0]).kraft_sum(), 0.5);
    }

    #[test]
    fn length_function_validation() {
        assert!(
            matches!(LengthFunction::from_lengths(&[1.0, 1.0, 1.0]), Err(Error::KraftViolated(z)) if z == 1.5)
        );
        assert!(matches!(
            LengthFunction::from_lengths(&[-1.0, 3.0]),
            Err(Error::InvalidLength { .. })
        ));
        assert!(LengthFunction::from_lengths(&[f64::INFINITY, 1.0]).is_err());
        assert_eq!(LengthFunction::from_lengths(&[]), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn is_compact_examples() {
        assert!(lf(&TABLE_ONE).is_compact(1e-9));
        assert!(!lf(&[2.0, 2.0]).is_compact(1e-9));
        assert!(lf(&[1.0, 2.0, 2.0]).is_compact(1e-9));
    }

    #[test]
    fn compress_examples() {
        assert_eq!(lf(&[2.0, 2.0]).compress().lengths(), &[1.0, 1.0]);
        let compact = lf(&[1.0, 2.0, 3.0, 3.0]);
        assert_eq!(compact.compress(), compact);
        let c = lf(&[5.0]).compress();
        assert_eq!(c.lengths(), &[0.0]);
    }

    #[test]
    fn compress_worked_mixture() {
        // mixture of (1, 1) and (2, -log2 0.75) at 1/2; values from mpmath
        let l2 = -(0.75f64).log2();
        let mix = lf(&[1.5, (1.0 + l2) / 2.0]);
        let out = mix.compress();
        assert!((out.lengths()[0] - 1.449_984_313_476_496).abs() < 1e-12);
        assert!((out.lengths()[1] - 0.657_503_063_115_918).abs() < 1e-12);
        assert!((out.kraft_sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn adapted_code_examples() {
        assert_eq!(
            adapted_code(&d(&[0.5, 0.5])).unwrap().lengths(),
            &[1.0, 1.0]
        );
        assert_eq!(
            adapted_code(&d(&[0.5, 0.25, 0.125, 0.125]))
                .unwrap()
                .lengths(),
            &[1.0, 2.0, 3.0, 3.0]
        );
        let l = adapted_code(&d(&[0.25, 0.75])).unwrap();
        assert_eq!(l.lengths()[0], 2.0);
        assert!((l.lengths()[1] - 0.415_037_499_278_843_8).abs() < 1e-15);
        assert_eq!(
            adapted_code(&d(&[1.0, 0.0])),
            Err(Error::ZeroProbability("1".into()))
        );
    }

    #[test]
    fn dist_of_code_examples() {
        assert_eq!(dist_of_code(&lf(&[1.0, 1.0])).unwrap().probs(), &[0.5, 0.5]);
        assert_eq!(
            dist_of_code(&lf(&TABLE_ONE)).unwrap().probs(),
            &[0.25, 0.25, 0.25, 0.125, 0.0625, 0.0625]
        );
        assert!(matches!(
            dist_of_code(&lf(&[2.0, 2.0])),
            Err(Error::NotCompact(_))
        ));
    }

    #[test]
    fn mix_codes_endpoints() {
        let k1 = lf(&[1.0, 1.0]);
        let k2 = adapted_code(&d(&[0.25, 0.75])).unwrap();
        let m = mix_codes(&k1, &k2, Order::ZERO).unwrap();
        assert_eq!((m.code, m.gain), (k1.clone(), 0.0));
        let m = mix_codes(&k1, &k2, Order::ONE).unwrap();
        assert_eq!((m.code, m.gain), (k2.clone(), 0.0));
        for q in [0.1, 0.5, 0.9] {
            let m = mix_codes(&k2, &k2, Order::new(q).unwrap()).unwrap();
            assert!(m.gain.abs() < 1e-15);
            for (a, b) in m.code.lengths().iter().zip(k2.lengths()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mix_codes_worked_example() {
        let k1 = lf(&[1.0, 1.0]);
        let k2 = adapted_code(&d(&[0.25, 0.75])).unwrap();
        let half = Order::new(0.5).unwrap();
        let m = mix_codes(&k1, &k2, half).unwrap();
        assert!((m.mixture.lengths()[1] - 0.707_518_749_639_422).abs() < 1e-12);
        assert!((m.gain - 0.050_015_686_523_504_15).abs() < 1e-14);
        assert!((m.code.lengths()[0] - 1.449_984_313_476_496).abs() < 1e-12);
        assert!((m.code.lengths()[1] - 0.657_503_063_115_918).abs() < 1e-12);
        assert!((m.code.kraft_sum() - 1.0).abs() < 1e-12);
        let via_d = mixture_gain_from_divergence(&k1, &k2, half).unwrap();
        assert!((m.gain - via_d).abs() < 1e-12);
    }

    #[test]
    fn mix_codes_errors() {
        let k = lf(&[1.0, 1.0]);
        assert!(matches!(
            mix_codes(&k, &k, Order::new(1.5).unwrap()),
            Err(Error::OrderOutOfRange(..))
        ));
        assert!(matches!(
            mix_codes(&k, &lf(&[2.0, 2.0]), Order::new(0.5).unwrap()),
            Err(Error::NotCompact(_))
        ));
        assert_eq!(
            mix_codes(&k, &lf(&[1.0, 2.0, 2.0]), Order::new(0.5).unwrap()),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn expected_length_examples() {
        assert_eq!(
            expected_length(&d(&[0.5, 0.5]), &lf(&[1.0, 1.0])).unwrap(),
            1.0
        );
        let p = d(&[0.5, 0.25, 0.125, 0.125]);
        assert_eq!(
            expected_length(&p, &adapted_code(&p).unwrap()).unwrap(),
            1.75
        );
        assert_eq!(
            expected_length(&d(&[0.25, 0.75]), &lf(&[1.0, 1.0])).unwrap(),
            1.0
        );
        assert_eq!(
            expected_length(&d(&[0.5, 0.5]), &lf(&[1.0, 2.0, 2.0])),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn shannon_integer_code_examples() {
        assert_eq!(
            shannon_integer_code(&d(&[0.5, 0.5])).unwrap().lengths(),
            &[1.0, 1.0]
        );
        assert_eq!(
            shannon_integer_code(&d(&[0.9, 0.1])).unwrap().lengths(),
            &[1.0, 4.0]
        );
        assert_eq!(
            shannon_integer_code(&d(&[0.25, 0.75])).unwrap().lengths(),
            &[2.0, 1.0]
        );
        assert!(shannon_integer_code(&d(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn block_code_rate_examples() {
        let half = d(&[0.5, 0.5]);
        for n in 1..=6 {
            assert_eq!(block_code_rate(&half, n).unwrap(), 1.0);
        }
        let p = d(&[0.9, 0.1]);
        assert!((block_code_rate(&p, 1).unwrap() - 1.3).abs() < 1e-15);
        // brute-force enumeration in Python: 0.55005395625
        let r8 = block_code_rate(&p, 8).unwrap();
        assert!((r8 - 0.550_053_956_25).abs() < 1e-12, "{r8}");
        assert!(r8 > 0.469 && r8 <= 0.594);
    }

    #[test]
    fn block_code_rate_matches_explicit_product() {
        let p = d(&[0.2, 0.5, 0.3]);
        for n in 1..=4 {
            let pn = p.power(n).unwrap();
            let explicit =
                expected_length(&pn, &shannon_integer_code(&pn).unwrap()).unwrap() / n as f64;
            assert!((block_code_rate(&p, n).unwrap() - explicit).abs() < 1e-12);
        }
    }

    #[test]
    fn block_code_rate_cap() {
        let p = Distribution::uniform(26).unwrap();
        assert!(matches!(
            block_code_rate(&p, 8),
            Err(Error::BlockCapExceeded { cap: 1_000_000, .. })
        ));
        assert!(block_code_rate(&p, 4).is_ok());
        assert!(block_code_rate(&Distribution::uniform(2).unwrap(), 0).is_err());
    }

    #[test]
    fn block_rate_within_bound() {
        let p = d(&[0.9, 0.1]);
        let h = shannon_entropy(&p).value();
        for n in [1usize, 2, 4, 8] {
            let gap = block_code_rate(&p, n).unwrap() - h;
            assert!(gap > 0.0 && gap <= 1.0 / n as f64, "n={n} gap={gap}");
        }
    }
}
