//! Idealized codes under Kraft's inequality and the information measures
//! they define.
//!
//! A code over a finite alphabet is identified with its length function. The
//! compact codes (Kraft sum exactly 1) correspond to probability
//! distributions, and compressing a convex mixture of two compact codes
//! saves exactly `q · D_{1-q}(P₁‖P₂)` bits per symbol. The crate provides:
//!
//! - [`dist`]: distributions, joint distributions, products, escorts.
//! - [`coding`]: length functions, compression, code mixing, Shannon's
//!   integer code, block rates and concrete prefix-free codebooks.
//! - [`measures`]: Shannon, Rényi and Tsallis entropies, information and
//!   Rényi divergences, and order-q mutual information.
//! - [`harness`]: seeded property suites with JSON reports.
//! - [`cli`]: the `rct` command line.
//!
//! ```
//! use renyi_kraft::{adapted_code, mix_codes, renyi_divergence, Distribution, Order};
//!
//! let p1 = Distribution::from_probs(&[0.5, 0.5])?;
//! let p2 = Distribution::from_probs(&[0.25, 0.75])?;
//! let q = Order::new(0.5)?;
//! let mixed = mix_codes(&adapted_code(&p1)?, &adapted_code(&p2)?, q)?;
//!
//! let d = renyi_divergence(&p1, &p2, Order::new(0.5)?)?;
//! assert!((mixed.gain - 0.5 * d.value()).abs() < 1e-12);
//! assert!((mixed.code.kraft_sum() - 1.0).abs() < 1e-12);
//! # Ok::<(), renyi_kraft::Error>(())
//! ```

pub mod cli;
pub mod coding;
pub mod dist;
mod error;
pub mod harness;
pub mod measures;

pub use coding::{
    adapted_code, block_code_rate, canonical_codebook, compress, dist_of_code, expected_length,
    is_compact, kraft_sum, mix_codes, shannon_integer_code, CodeMixture, Codebook, LengthFunction,
};
pub use dist::{Distribution, JointDistribution, Order};
pub use error::{Error, Result};
pub use harness::PropertyReport;
pub use measures::{
    entropy_from_divergence, kl_divergence, mutual_information, renyi_divergence, renyi_entropy,
    renyi_mutual_information, shannon_entropy, tsallis_entropy, Base, Bits,
};

/// Chapters of the guide under `book/`, compiled as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/distributions.md")]
    pub mod distributions {}
    #[doc = include_str!("../../../book/src/idealized-codes.md")]
    pub mod idealized_codes {}
    #[doc = include_str!("../../../book/src/mixing-codes.md")]
    pub mod mixing_codes {}
    #[doc = include_str!("../../../book/src/renyi-measures.md")]
    pub mod renyi_measures {}
    #[doc = include_str!("../../../book/src/self-information.md")]
    pub mod self_information {}
    #[doc = include_str!("../../../book/src/coding-theorem.md")]
    pub mod coding_theorem {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    pub mod command_line {}
}
