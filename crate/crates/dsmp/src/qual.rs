//! Linguistic-label arithmetic and the qualitative belief pipeline.
//!
//! A scale of `n` interior labels `L_1 … L_n` is closed by `L_0` and
//! `L_{n+1}` and identified with numbers through `L_i = i / (n+1)`; the
//! identification extends to any integer and, during computation, to any
//! rational index. Every q-operator keeps the exact rational index and
//! rounds to an integer label only when a result is displayed, so a chain
//! of operations suffers a single terminal approximation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::parse_expr;
use crate::frame::{AtomSet, FrameModel};
use crate::info;

fn big(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_f64(x)
}

/// An equidistant label scale with `n ≥ 2` interior labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelScale {
    n: u32,
}

impl LabelScale {
    pub fn new(n: u32) -> Result<LabelScale> {
        if n < 2 {
            return Err(Error::ScaleTooSmall(n));
        }
        Ok(LabelScale { n })
    }

    /// Number of interior labels.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Index of the maximal label `L_max`.
    pub fn max_index(&self) -> i64 {
        self.n as i64 + 1
    }

    /// The label `L_i` (any integer index, including extended ones).
    pub fn label(&self, index: i64) -> LabelValue {
        LabelValue {
            scale: *self,
            index: big(index),
        }
    }

    fn denominator(&self) -> BigRational {
        big(self.max_index())
    }
}

/// A label with an exact rational index on its scale.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelValue {
    scale: LabelScale,
    index: BigRational,
}

/// Closest-integer rounding with half-up ties, mirrored for negatives:
/// `[x] = sign(x) · floor(|x| + 1/2)`.
fn round_half_up(x: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let magnitude = (x.abs() + half).floor().to_integer();
    if x.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

impl LabelValue {
    pub fn scale(&self) -> LabelScale {
        self.scale
    }

    /// The exact rational index.
    pub fn index(&self) -> &BigRational {
        &self.index
    }

    /// The numeric value of the label under `L_i = i/(n+1)`.
    pub fn value(&self) -> f64 {
        self.index.to_f64().unwrap_or(f64::NAN) / self.scale.max_index() as f64
    }

    /// Index rounded to the closest integer (ties up, negatives mirrored).
    pub fn rounded_index(&self) -> i64 {
        round_half_up(&self.index)
            .to_i64()
            .expect("label indices stay small")
    }

    /// The displayed label after terminal rounding.
    pub fn rounded(&self) -> LabelValue {
        self.scale.label(self.rounded_index())
    }

    /// Clamps the display to `L_max`, the saturation branch of q-addition
    /// and internal q-division.
    pub fn saturated(&self) -> LabelValue {
        if self.index > big(self.scale.max_index()) {
            self.scale.label(self.scale.max_index())
        } else {
            self.clone()
        }
    }

    fn check_scale(&self, other: &LabelValue) -> Result<()> {
        if self.scale.n != other.scale.n {
            return Err(Error::ScaleMismatch(self.scale.n, other.scale.n));
        }
        Ok(())
    }

    /// q-addition. The exact index is `i + j`; display saturates at
    /// `L_max` through [`LabelValue::saturated`].
    pub fn q_add(&self, other: &LabelValue) -> Result<LabelValue> {
        self.check_scale(other)?;
        Ok(LabelValue {
            scale: self.scale,
            index: &self.index + &other.index,
        })
    }

    /// q-subtraction: `L_{i−j}` when `i ≥ j`, `−L_{j−i}` otherwise.
    pub fn q_sub(&self, other: &LabelValue) -> Result<LabelValue> {
        self.check_scale(other)?;
        Ok(LabelValue {
            scale: self.scale,
            index: &self.index - &other.index,
        })
    }

    /// q-multiplication: index `i·j / (n+1)`.
    pub fn q_mul(&self, other: &LabelValue) -> Result<LabelValue> {
        self.check_scale(other)?;
        Ok(LabelValue {
            scale: self.scale,
            index: &self.index * &other.index / self.scale.denominator(),
        })
    }

    /// Internal q-division: index `(i/j)·(n+1)`, displayed saturated.
    pub fn q_div(&self, other: &LabelValue) -> Result<LabelValue> {
        self.check_scale(other)?;
        if other.index.is_zero() {
            return Err(Error::LabelDivisionByZero);
        }
        Ok(LabelValue {
            scale: self.scale,
            index: &self.index / &other.index * self.scale.denominator(),
        })
    }

    /// External division: the plain real `i / j`.
    pub fn q_div_external(&self, other: &LabelValue) -> Result<f64> {
        self.check_scale(other)?;
        if other.index.is_zero() {
            return Err(Error::LabelDivisionByZero);
        }
        Ok((&self.index / &other.index).to_f64().unwrap_or(f64::NAN))
    }

    /// Scalar multiplication: index `r·i`.
    pub fn mul_scalar(&self, r: f64) -> LabelValue {
        let r = from_f64(r).expect("finite scalar");
        LabelValue {
            scale: self.scale,
            index: &self.index * r,
        }
    }

    /// Label-plus-real addition: index `i + r·(n+1)`.
    pub fn add_scalar(&self, r: f64) -> LabelValue {
        let r = from_f64(r).expect("finite scalar");
        LabelValue {
            scale: self.scale,
            index: &self.index + r * self.scale.denominator(),
        }
    }

    /// Label-minus-real subtraction: index `i − r·(n+1)`.
    pub fn sub_scalar(&self, r: f64) -> LabelValue {
        self.add_scalar(-r)
    }

    /// Real-minus-label subtraction: index `r·(n+1) − i`.
    pub fn scalar_sub(&self, r: f64) -> LabelValue {
        let r = from_f64(r).expect("finite scalar");
        LabelValue {
            scale: self.scale,
            index: r * self.scale.denominator() - &self.index,
        }
    }

    /// Power of a label: index `i^k / (n+1)^(k−1)`. Integer exponents are
    /// exact; fractional exponents (roots, `k = 1/p`) go through `f64`
    /// and require a non-negative index.
    pub fn q_pow(&self, k: f64) -> Result<LabelValue> {
        if k.fract() == 0.0 && k.abs() <= i32::MAX as f64 {
            let k = k as i32;
            if k < 0 && self.index.is_zero() {
                return Err(Error::LabelDivisionByZero);
            }
            let index = self.index.pow(k) / self.scale.denominator().pow(k - 1);
            return Ok(LabelValue {
                scale: self.scale,
                index,
            });
        }
        if self.index.is_negative() {
            return Err(Error::NegativeLabelPower);
        }
        let i = self.index.to_f64().unwrap_or(f64::NAN);
        let np1 = self.scale.max_index() as f64;
        let x = i.powf(k) / np1.powf(k - 1.0);
        Ok(LabelValue {
            scale: self.scale,
            index: from_f64(x).ok_or(Error::NegativeLabelPower)?,
        })
    }
}

impl fmt::Display for LabelValue {
    /// Displays the terminally-rounded label, `L_i` or `-L_i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.rounded_index();
        if i < 0 {
            write!(f, "-L_{}", -i)
        } else {
            write!(f, "L_{i}")
        }
    }
}

/// A qualitative belief assignment: integer labels on canonical elements.
/// `L_0` entries are dropped; quasi-normalization (`Σ indices = n+1`) is a
/// predicate, not a construction requirement.
#[derive(Debug, Clone)]
pub struct QualMassAssignment {
    model: FrameModel,
    scale: LabelScale,
    entries: BTreeMap<AtomSet, i64>,
}

impl QualMassAssignment {
    pub fn new(
        model: FrameModel,
        scale: LabelScale,
        pairs: Vec<(AtomSet, i64)>,
    ) -> Result<QualMassAssignment> {
        let mut entries: BTreeMap<AtomSet, i64> = BTreeMap::new();
        for (raw, index) in pairs {
            if !(0..=scale.max_index()).contains(&index) {
                return Err(Error::LabelIndexRange(index, scale.max_index()));
            }
            let elem = model.canonicalize(raw);
            if elem.is_empty() {
                if index > 0 {
                    return Err(Error::MassOnEmpty(format!("label index {index}")));
                }
                continue;
            }
            let slot = entries.entry(elem).or_insert(0);
            *slot += index;
            if *slot > scale.max_index() {
                return Err(Error::LabelIndexRange(*slot, scale.max_index()));
            }
        }
        entries.retain(|_, i| *i > 0);
        Ok(QualMassAssignment {
            model,
            scale,
            entries,
        })
    }

    pub fn from_exprs(
        model: FrameModel,
        scale: LabelScale,
        pairs: &[(&str, i64)],
    ) -> Result<QualMassAssignment> {
        let mut resolved = Vec::with_capacity(pairs.len());
        for (text, index) in pairs {
            resolved.push((parse_expr(text, &model)?, *index));
        }
        Self::new(model, scale, resolved)
    }

    pub fn model(&self) -> &FrameModel {
        &self.model
    }

    pub fn scale(&self) -> LabelScale {
        self.scale
    }

    pub fn focal_elements(&self) -> impl Iterator<Item = (AtomSet, i64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn label_of(&self, x: AtomSet) -> LabelValue {
        let index = self
            .entries
            .get(&self.model.canonicalize(x))
            .copied()
            .unwrap_or(0);
        self.scale.label(index)
    }

    /// True when the entry indices sum exactly to `n + 1` (`L_max`).
    pub fn is_quasi_normalized(&self) -> bool {
        self.entries.values().sum::<i64>() == self.scale.max_index()
    }
}

/// Qualitative DSmP: the label counterpart of the quantitative transform,
/// evaluated per atom with exact rational indices throughout. Only the
/// caller rounds, once, at display time.
///
/// Requires `ε > 0`; the scalar enters through label-plus-real addition,
/// so the result is exact for the `f64` value of `ε`.
pub fn q_dsm_p(qm: &QualMassAssignment, epsilon: f64) -> Result<Vec<(AtomSet, LabelValue)>> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let model = qm.model();
    let scale = qm.scale();
    let atoms = model.atoms();
    let zero = scale.label(0);
    // label carried by each atom as a cardinal-1 focal element
    let atom_label: Vec<LabelValue> = atoms.iter().map(|a| qm.label_of(*a)).collect();
    let mut acc: Vec<LabelValue> = vec![zero; atoms.len()];
    for (y, y_index) in qm.focal_elements() {
        let y_label = scale.label(y_index);
        let mut den = scale.label(0);
        for (i, atom) in atoms.iter().enumerate() {
            if y.contains(*atom) {
                den = den.q_add(&atom_label[i])?;
            }
        }
        let den = den.add_scalar(epsilon * model.dsm_cardinal(y) as f64);
        for (i, atom) in atoms.iter().enumerate() {
            if y.contains(*atom) {
                let num = atom_label[i].add_scalar(epsilon);
                let term = num.q_div(&den)?.q_mul(&y_label)?;
                acc[i] = acc[i].q_add(&term)?;
            }
        }
    }
    Ok(atoms.into_iter().zip(acc).collect())
}

/// PIC of a qualitative probability: labels become numbers through the
/// isomorphism and the quantitative formula applies, `H_max = log2(M)`.
pub fn q_pic(labels: &[(AtomSet, LabelValue)]) -> Result<f64> {
    if labels.len() < 2 {
        return Err(Error::SingleAtom);
    }
    let values: Vec<f64> = labels.iter().map(|(_, l)| l.value()).collect();
    if values.iter().all(|v| *v == 0.0) {
        return Err(Error::UndefinedOutcome);
    }
    Ok(info::pic_of_values(&values)?.pic)
}
