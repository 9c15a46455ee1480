//! Shannon entropy and the probabilistic information content (PIC) of a
//! fully-defined probability outcome.
//!
//! PIC is the dual of the normalized Shannon entropy: 1 for a
//! deterministic distribution, 0 for the uniform one. `H_max = log2(M)`
//! where `M` is the number of non-empty atoms of the model.

use crate::belief::ProbOutcome;
use crate::error::{Error, Result};

/// Entropy, its maximum and their normalized dual for one outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicReport {
    /// Shannon entropy in bits.
    pub entropy: f64,
    /// `log2(M)` for `M` atoms.
    pub h_max: f64,
    /// `1 - entropy / h_max`, clamped against ≤ 1e-12 numerical spill.
    pub pic: f64,
}

/// Shannon entropy in bits, with the convention `0·log2(0) = 0`.
pub(crate) fn entropy_of_values(values: &[f64]) -> f64 {
    -values
        .iter()
        .filter(|p| **p > 0.0)
        .map(|p| p * p.log2())
        .sum::<f64>()
}

/// Shannon entropy of a fully-defined outcome, in bits.
pub fn shannon_entropy(p: &ProbOutcome) -> Result<f64> {
    let values = p.defined_values().ok_or(Error::UndefinedOutcome)?;
    Ok(entropy_of_values(&values))
}

/// Entropy, `H_max` and PIC of a fully-defined outcome over `M ≥ 2` atoms.
pub fn pic(p: &ProbOutcome) -> Result<PicReport> {
    let values = p.defined_values().ok_or(Error::UndefinedOutcome)?;
    pic_of_values(&values)
}

pub(crate) fn pic_of_values(values: &[f64]) -> Result<PicReport> {
    if values.len() < 2 {
        return Err(Error::SingleAtom);
    }
    let entropy = entropy_of_values(values);
    let h_max = (values.len() as f64).log2();
    let mut pic = 1.0 - entropy / h_max;
    if (-1e-12..0.0).contains(&pic) {
        pic = 0.0;
    } else if (1.0..1.0 + 1e-12).contains(&pic) {
        pic = 1.0;
    }
    Ok(PicReport { entropy, h_max, pic })
}
