//! Shannon, Rényi and Tsallis information measures.
//!
//! Results carry their logarithm base. Everything is computed in bits and
//! converted on request with [`Bits::to_base`]. Orders 0 and 1 are exact
//! dispatches; all other orders go through a log-sum-exp evaluation of the
//! power sums.

use std::f64::consts::{E, LN_10, LN_2};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dist::{Distribution, JointDistribution, Order};
use crate::error::Result;

/// Results in `[-CLAMP, 0)` are rounding noise and reported as 0.
const CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Base {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "10")]
    Ten,
}

impl Base {
    /// `ln(base)`.
    pub fn ln(self) -> f64 {
        match self {
            Base::Two => LN_2,
            Base::E => 1.0,
            Base::Ten => LN_10,
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Base::Two => "bits",
            Base::E => "nats",
            Base::Ten => "dits",
        }
    }

    pub fn radix(self) -> f64 {
        match self {
            Base::Two => 2.0,
            Base::E => E,
            Base::Ten => 10.0,
        }
    }
}

impl std::str::FromStr for Base {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "2" => Ok(Base::Two),
            "e" => Ok(Base::E),
            "10" => Ok(Base::Ten),
            other => Err(format!("unknown base {other:?}; expected 2, e or 10")),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::Two => "2",
            Base::E => "e",
            Base::Ten => "10",
        })
    }
}

/// An amount of information, possibly `+∞`, tagged with its base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bits {
    value: f64,
    base: Base,
}

impl Bits {
    pub fn new(value: f64) -> Self {
        Bits {
            value,
            base: Base::Two,
        }
    }

    pub fn infinite() -> Self {
        Bits::new(f64::INFINITY)
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn base(self) -> Base {
        self.base
    }

    pub fn is_infinite(self) -> bool {
        self.value.is_infinite()
    }

    pub fn to_base(self, base: Base) -> Bits {
        Bits {
            value: self.value * self.base.ln() / base.ln(),
            base,
        }
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_infinite() {
            write!(f, "inf {}", self.base.unit())
        } else {
            write!(f, "{} {}", self.value, self.base.unit())
        }
    }
}

/// `ln Σ exp(x_i)`, `-∞` for an empty or all-`-∞` input.
pub(crate) fn log_sum_exp(terms: impl IntoIterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|&t| (t - max).exp()).sum::<f64>().ln()
}

fn clamp_nonnegative(v: f64) -> f64 {
    if (-CLAMP..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// Shannon entropy `-Σ p log p`, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &Distribution) -> Bits {
    let h: f64 = p
        .probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum();
    Bits::new(clamp_nonnegative(h).max(0.0))
}

/// Information divergence `D(P‖Q) = Σ_{p_a > 0} p_a log(p_a / q_a)`.
pub fn kl_divergence(p: &Distribution, q: &Distribution) -> Result<Bits> {
    p.require_same_alphabet(q)?;
    let mut d = 0.0;
    for (&pa, &qa) in p.probs().iter().zip(q.probs()) {
        if pa > 0.0 {
            if qa == 0.0 {
                return Ok(Bits::infinite());
            }
            d += pa * (pa.log2() - qa.log2());
        }
    }
    Ok(Bits::new(clamp_nonnegative(d)))
}

/// Rényi divergence of order `q`,
/// `D_q(P‖Q) = 1/(q-1) · log Σ p_a^q q_a^(1-q)`.
///
/// Order 1 is the information divergence and order 0 is `-log Q(supp P)`, the
/// limit of the formula as `q → 0+`.
pub fn renyi_divergence(p: &Distribution, q: &Distribution, order: Order) -> Result<Bits> {
    p.require_same_alphabet(q)?;
    if order.is_one() {
        return kl_divergence(p, q);
    }
    let pairs = || p.probs().iter().zip(q.probs());
    if order.is_zero() {
        let mass: f64 = pairs().filter(|(&pa, _)| pa > 0.0).map(|(_, &qa)| qa).sum();
        if mass == 0.0 {
            return Ok(Bits::infinite());
        }
        return Ok(Bits::new(clamp_nonnegative(-mass.log2())));
    }
    let a = order.value();
    if a > 1.0 && pairs().any(|(&pa, &qa)| pa > 0.0 && qa == 0.0) {
        return Ok(Bits::infinite());
    }
    let log_sum = log_sum_exp(
        pairs()
            .filter(|(&pa, &qa)| pa > 0.0 && qa > 0.0)
            .map(|(&pa, &qa)| a * pa.ln() + (1.0 - a) * qa.ln()),
    );
    if log_sum == f64::NEG_INFINITY {
        // P and Q mutually singular
        return Ok(Bits::infinite());
    }
    Ok(Bits::new(clamp_nonnegative(log_sum / (a - 1.0) / LN_2)))
}

/// Rényi entropy of order `q`, `H_q(P) = 1/(1-q) · log Σ p_a^q`.
///
/// Order 0 is the Hartley entropy of the support and order 1 is Shannon
/// entropy.
pub fn renyi_entropy(p: &Distribution, order: Order) -> Bits {
    if order.is_one() {
        return shannon_entropy(p);
    }
    if order.is_zero() {
        return Bits::new((p.support_size() as f64).log2());
    }
    let a = order.value();
    let log_sum = log_sum_exp(p.probs().iter().filter(|&&x| x > 0.0).map(|&x| a * x.ln()));
    let h = log_sum / (1.0 - a) / LN_2;
    Bits::new(h.max(0.0))
}

/// Tsallis entropy `(1 - Σ p^q) / (q - 1)` in nats; Shannon entropy in nats
/// at `q = 1`.
pub fn tsallis_entropy(p: &Distribution, order: Order) -> f64 {
    if order.is_one() {
        return shannon_entropy(p).to_base(Base::E).value();
    }
    let a = order.value();
    let power_sum: f64 = p
        .probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x.powf(a))
        .sum();
    ((1.0 - power_sum) / (a - 1.0)).max(0.0)
}

/// `I(X;Y) = D(P‖P_X × P_Y)`.
pub fn mutual_information(j: &JointDistribution) -> Bits {
    kl_divergence(&j.flatten(), &j.product_of_marginals())
        .expect("flattened joint and product of marginals share an alphabet")
}

/// `I_q(X;Y) = D_q(P‖P_X × P_Y)`.
pub fn renyi_mutual_information(j: &JointDistribution, order: Order) -> Bits {
    renyi_divergence(&j.flatten(), &j.product_of_marginals(), order)
        .expect("flattened joint and product of marginals share an alphabet")
}

/// Entropy recovered from divergence to the uniform distribution on the same
/// alphabet: `H_q(U) - D_q(P‖U)`, with `H_q(U)` the Hartley entropy.
pub fn entropy_from_divergence(p: &Distribution, order: Order) -> Bits {
    let u = p.uniform_like();
    let hartley = (p.len() as f64).log2();
    let d = renyi_divergence(p, &u, order).expect("uniform_like shares the alphabet");
    Bits::new((hartley - d.value()).max(0.0))
}
