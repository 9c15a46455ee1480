//! Basic belief assignments and the probability outcomes derived from them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expr::{format_elem, parse_expr};
use crate::frame::{AtomSet, FrameModel, Refinement};

/// Tolerance for the unit-sum check on masses and defined outcomes.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// A normalized basic belief assignment over the elements of a model.
///
/// Only focal elements (strictly positive mass) are stored; zero-mass
/// entries are dropped at construction and duplicate keys are merged by
/// summation. The masses must sum to 1 within [`NORMALIZATION_TOL`] —
/// there is no silent rescaling.
#[derive(Debug, Clone)]
pub struct MassAssignment {
    model: FrameModel,
    entries: BTreeMap<AtomSet, f64>,
}

impl MassAssignment {
    /// Builds an assignment from `(element, mass)` pairs with the elements
    /// already in canonical form.
    pub fn new(model: FrameModel, pairs: Vec<(AtomSet, f64)>) -> Result<Self> {
        let mut entries: BTreeMap<AtomSet, f64> = BTreeMap::new();
        for (raw, mass) in pairs {
            if !mass.is_finite() || mass < 0.0 {
                return Err(Error::InvalidMass(mass));
            }
            let elem = model.canonicalize(raw);
            if elem.is_empty() {
                if mass > 0.0 {
                    return Err(Error::MassOnEmpty(format_elem(raw, &model)));
                }
                continue;
            }
            *entries.entry(elem).or_insert(0.0) += mass;
        }
        entries.retain(|_, m| *m > 0.0);
        let total: f64 = entries.values().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization(total));
        }
        Ok(MassAssignment { model, entries })
    }

    /// Builds an assignment from `(expression, mass)` pairs.
    pub fn from_exprs(model: FrameModel, pairs: &[(&str, f64)]) -> Result<Self> {
        let mut resolved = Vec::with_capacity(pairs.len());
        for (text, mass) in pairs {
            if !mass.is_finite() || *mass < 0.0 {
                return Err(Error::InvalidMass(*mass));
            }
            let elem = parse_expr(text, &model)?;
            if elem.is_empty() && *mass > 0.0 {
                return Err(Error::MassOnEmpty((*text).to_string()));
            }
            resolved.push((elem, *mass));
        }
        Self::new(model, resolved)
    }

    pub fn model(&self) -> &FrameModel {
        &self.model
    }

    /// Focal elements with their masses, ascending by element mask.
    pub fn focal_elements(&self) -> impl Iterator<Item = (AtomSet, f64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn focal_count(&self) -> usize {
        self.entries.len()
    }

    /// Mass of exactly this element (0 when it is not focal).
    pub fn mass_of(&self, x: AtomSet) -> f64 {
        self.entries
            .get(&self.model.canonicalize(x))
            .copied()
            .unwrap_or(0.0)
    }

    /// Credibility: the mass of everything contained in `x`.
    pub fn belief_of(&self, x: AtomSet) -> f64 {
        let x = self.model.canonicalize(x);
        self.entries
            .iter()
            .filter(|(y, _)| x.contains(**y))
            .map(|(_, m)| m)
            .sum()
    }

    /// Plausibility: the mass of everything intersecting `x`.
    pub fn plausibility_of(&self, x: AtomSet) -> f64 {
        let x = self.model.canonicalize(x);
        self.entries
            .iter()
            .filter(|(y, _)| x.intersects(**y))
            .map(|(_, m)| m)
            .sum()
    }

    /// True when every focal element is a single atom.
    pub fn is_bayesian(&self) -> bool {
        self.entries
            .keys()
            .all(|x| self.model.dsm_cardinal(*x) == 1)
    }

    /// True for the total-ignorance assignment `m(Θ) = 1`.
    pub fn is_vacuous(&self) -> bool {
        self.entries.len() == 1 && self.entries.contains_key(&self.model.full_set())
    }
}

/// Transports an assignment onto the refined Shafer-model frame: every
/// focal element becomes the union of the refined singletons of its
/// atoms, masses unchanged.
pub fn refine_bba(bba: &MassAssignment) -> Result<(Refinement, MassAssignment)> {
    let refinement = bba.model().refine()?;
    let pairs: Vec<(AtomSet, f64)> = bba
        .focal_elements()
        .map(|(x, m)| (refinement.map_element(x), m))
        .collect();
    let refined = MassAssignment::new(refinement.refined_model().clone(), pairs)?;
    Ok((refinement, refined))
}

/// A subjective probability measure over the atoms of a model, with
/// per-atom `None` marking entries that a transformation left undefined
/// (0/0 forms). Any element evaluates by summing its atoms, so a single
/// undefined atom makes every element containing it undefined too.
#[derive(Debug, Clone)]
pub struct ProbOutcome {
    model: FrameModel,
    name: String,
    epsilon: Option<f64>,
    atom_probs: Vec<Option<f64>>,
}

impl ProbOutcome {
    pub(crate) fn new(
        model: FrameModel,
        name: impl Into<String>,
        epsilon: Option<f64>,
        atom_probs: Vec<Option<f64>>,
    ) -> Self {
        debug_assert_eq!(atom_probs.len(), model.atom_count());
        let out = ProbOutcome {
            model,
            name: name.into(),
            epsilon,
            atom_probs,
        };
        debug_assert!(
            !out.is_fully_defined()
                || (out.atom_probs.iter().flatten().sum::<f64>() - 1.0).abs() < 1e-6,
            "defined outcome must sum to 1"
        );
        out
    }

    pub fn model(&self) -> &FrameModel {
        &self.model
    }

    /// Transform label, e.g. `BetP` or `DSmP_0.001`.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    /// Atoms of the model paired with their probability (or `None`).
    pub fn atom_probs(&self) -> impl Iterator<Item = (AtomSet, Option<f64>)> + '_ {
        self.model
            .full_set()
            .atoms()
            .zip(self.atom_probs.iter().copied())
    }

    pub fn is_fully_defined(&self) -> bool {
        self.atom_probs.iter().all(Option::is_some)
    }

    /// Probability of an element by atom summation; `None` as soon as one
    /// of its atoms is undefined.
    pub fn evaluate(&self, x: AtomSet) -> Option<f64> {
        let x = self.model.canonicalize(x);
        let mut total = 0.0;
        for (atom, p) in self.atom_probs() {
            if x.contains(atom) {
                total += p?;
            }
        }
        Some(total)
    }

    /// Replaces undefined entries by 0, keeping everything else.
    pub fn with_undefined_as_zero(&self) -> ProbOutcome {
        ProbOutcome {
            model: self.model.clone(),
            name: self.name.clone(),
            epsilon: self.epsilon,
            atom_probs: self.atom_probs.iter().map(|p| Some(p.unwrap_or(0.0))).collect(),
        }
    }

    /// Defined probability values in atom order (for entropy computations).
    pub(crate) fn defined_values(&self) -> Option<Vec<f64>> {
        self.atom_probs.iter().copied().collect()
    }
}
