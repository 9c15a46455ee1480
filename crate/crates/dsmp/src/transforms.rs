//! The probability transformations: BetP, DSmP and the Sudano / Cuzzolin
//! family, plus the refinement-backed driver that makes the Shafer-only
//! transforms usable on free and hybrid models.
//!
//! Every transform produces a [`ProbOutcome`] over the atoms of the
//! input's model. BetP and DSmP work on any model directly; PrBel, PrPl,
//! PrNPl, PraPl, PrHyb and CuzzP are defined on Shafer models and are
//! routed through [`refine_then`] elsewhere, with the refined-singleton
//! probabilities mapped back onto the original atoms.

use crate::belief::{refine_bba, MassAssignment, ProbOutcome};
use crate::error::{Error, Result};
use crate::frame::AtomSet;
use crate::info;

/// The transformation families selectable by callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    BetP,
    DSmP,
    PrBel,
    PrPl,
    PrNPl,
    PraPl,
    PrHyb,
    CuzzP,
}

impl Transform {
    pub const ALL: [Transform; 8] = [
        Transform::BetP,
        Transform::DSmP,
        Transform::PrBel,
        Transform::PrPl,
        Transform::PrNPl,
        Transform::PraPl,
        Transform::PrHyb,
        Transform::CuzzP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Transform::BetP => "BetP",
            Transform::DSmP => "DSmP",
            Transform::PrBel => "PrBel",
            Transform::PrPl => "PrPl",
            Transform::PrNPl => "PrNPl",
            Transform::PraPl => "PraPl",
            Transform::PrHyb => "PrHyb",
            Transform::CuzzP => "CuzzP",
        }
    }

    /// Parses the lowercase selector used by the CLI.
    pub fn from_selector(s: &str) -> Option<Transform> {
        match s {
            "betp" => Some(Transform::BetP),
            "dsmp" => Some(Transform::DSmP),
            "prbel" => Some(Transform::PrBel),
            "prpl" => Some(Transform::PrPl),
            "prnpl" => Some(Transform::PrNPl),
            "prapl" => Some(Transform::PraPl),
            "prhyb" => Some(Transform::PrHyb),
            "cuzzp" => Some(Transform::CuzzP),
            _ => None,
        }
    }

    fn needs_shafer(self) -> bool {
        !matches!(self, Transform::BetP | Transform::DSmP)
    }
}

/// Pignistic transformation: each focal mass is split equally over the
/// atoms of its element.
pub fn bet_p(bba: &MassAssignment) -> ProbOutcome {
    let model = bba.model();
    let atoms = model.atoms();
    let mut probs = vec![0.0; atoms.len()];
    for (y, mass) in bba.focal_elements() {
        let share = mass / model.dsm_cardinal(y) as f64;
        for (i, atom) in atoms.iter().enumerate() {
            if y.contains(*atom) {
                probs[i] += share;
            }
        }
    }
    ProbOutcome::new(
        model.clone(),
        "BetP",
        None,
        probs.into_iter().map(Some).collect(),
    )
}

/// DSmP: each focal mass is redistributed to the atoms of its element
/// proportionally to their singleton masses plus `ε` per unit of
/// cardinality.
///
/// With `ε = 0`, a focal element none of whose atoms carries singleton
/// mass produces a 0/0 form: all of its atoms come out undefined.
pub fn dsm_p(bba: &MassAssignment, epsilon: f64) -> Result<ProbOutcome> {
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let model = bba.model();
    let atoms = model.atoms();
    // mass carried by each atom as a cardinal-1 focal element
    let atom_mass: Vec<f64> = atoms.iter().map(|a| bba.mass_of(*a)).collect();
    let mut acc = vec![0.0; atoms.len()];
    let mut undefined = vec![false; atoms.len()];
    for (y, mass) in bba.focal_elements() {
        let mut singleton_sum = 0.0;
        for (i, atom) in atoms.iter().enumerate() {
            if y.contains(*atom) {
                singleton_sum += atom_mass[i];
            }
        }
        let denom = singleton_sum + epsilon * model.dsm_cardinal(y) as f64;
        if denom == 0.0 {
            for (i, atom) in atoms.iter().enumerate() {
                if y.contains(*atom) {
                    undefined[i] = true;
                }
            }
            continue;
        }
        for (i, atom) in atoms.iter().enumerate() {
            if y.contains(*atom) {
                acc[i] += mass * (atom_mass[i] + epsilon) / denom;
            }
        }
    }
    let probs = acc
        .into_iter()
        .zip(undefined)
        .map(|(p, u)| if u { None } else { Some(p) })
        .collect();
    let name = if epsilon == 0.0 {
        "DSmP_0".to_string()
    } else {
        format!("DSmP_{epsilon}")
    };
    Ok(ProbOutcome::new(model.clone(), name, Some(epsilon), probs))
}

/// Per-singleton data shared by the Sudano and Cuzzolin transforms.
struct ShaferView {
    /// singleton atoms, in frame order
    atoms: Vec<AtomSet>,
    mass: Vec<f64>,
    plaus: Vec<f64>,
}

impl ShaferView {
    fn build(bba: &MassAssignment) -> Result<ShaferView> {
        if !bba.model().is_shafer() {
            return Err(Error::ShaferRequired);
        }
        let n = bba.model().frame().len();
        let atoms: Vec<AtomSet> = (0..n).map(|i| bba.model().singleton(i)).collect();
        let mass = atoms.iter().map(|a| bba.mass_of(*a)).collect();
        let plaus = atoms.iter().map(|a| bba.plausibility_of(*a)).collect();
        Ok(ShaferView { atoms, mass, plaus })
    }

    /// Compound-to-sum-of-singletons operator: Σ of `values` over the
    /// singletons composing `y`.
    fn cs(&self, values: &[f64], y: AtomSet) -> f64 {
        self.atoms
            .iter()
            .zip(values)
            .filter(|(a, _)| y.intersects(**a))
            .map(|(_, v)| v)
            .sum()
    }

    /// Σ over focal supersets of singleton `i` of `m(Y) / CS[values](Y)`.
    fn superset_ratio(&self, bba: &MassAssignment, values: &[f64], i: usize) -> f64 {
        bba.focal_elements()
            .filter(|(y, _)| y.contains(self.atoms[i]))
            .map(|(y, m)| m / self.cs(values, y))
            .sum()
    }

    fn outcome(&self, bba: &MassAssignment, name: &str, probs: Vec<Option<f64>>) -> ProbOutcome {
        // singleton order equals atom order on a Shafer model
        ProbOutcome::new(bba.model().clone(), name, None, probs)
    }
}

/// Sudano's mapping proportional to the belief. A singleton with zero
/// mass hits the 0/0 form `m(X)/CS[Bel(X)]` of its own superset term and
/// comes out undefined.
pub fn pr_bel(bba: &MassAssignment) -> Result<ProbOutcome> {
    let v = ShaferView::build(bba)?;
    let probs = (0..v.atoms.len())
        .map(|i| {
            if v.mass[i] == 0.0 {
                None
            } else {
                Some(v.mass[i] * v.superset_ratio(bba, &v.mass, i))
            }
        })
        .collect();
    Ok(v.outcome(bba, "PrBel", probs))
}

/// Sudano's mapping proportional to the plausibility.
pub fn pr_pl(bba: &MassAssignment) -> Result<ProbOutcome> {
    let v = ShaferView::build(bba)?;
    let probs = (0..v.atoms.len())
        .map(|i| Some(v.plaus[i] * v.superset_ratio(bba, &v.plaus, i)))
        .collect();
    Ok(v.outcome(bba, "PrPl", probs))
}

/// Sudano's mapping proportional to the normalized plausibility.
pub fn pr_npl(bba: &MassAssignment) -> Result<ProbOutcome> {
    let v = ShaferView::build(bba)?;
    let delta: f64 = v.plaus.iter().sum();
    let probs = v.plaus.iter().map(|pl| Some(pl / delta)).collect();
    Ok(v.outcome(bba, "PrNPl", probs))
}

/// Sudano's mapping proportional to all plausibilities:
/// `Bel(X) + ε·Pl(X)` with `ε = (1 − ΣBel) / ΣPl` over the singletons.
pub fn pra_pl(bba: &MassAssignment) -> Result<ProbOutcome> {
    let v = ShaferView::build(bba)?;
    let probs = pra_pl_values(&v).into_iter().map(Some).collect();
    Ok(v.outcome(bba, "PraPl", probs))
}

fn pra_pl_values(v: &ShaferView) -> Vec<f64> {
    let bel_sum: f64 = v.mass.iter().sum();
    let pl_sum: f64 = v.plaus.iter().sum();
    let eps = (1.0 - bel_sum) / pl_sum;
    v.mass
        .iter()
        .zip(&v.plaus)
        .map(|(m, pl)| m + eps * pl)
        .collect()
}

/// Sudano's hybrid mapping, built on top of PraPl.
pub fn pr_hyb(bba: &MassAssignment) -> Result<ProbOutcome> {
    let v = ShaferView::build(bba)?;
    let base = pra_pl_values(&v);
    let probs = (0..v.atoms.len())
        .map(|i| Some(base[i] * v.superset_ratio(bba, &base, i)))
        .collect();
    Ok(v.outcome(bba, "PrHyb", probs))
}

/// Cuzzolin's intersection probability: the total non-specific mass is
/// split proportionally to `Δ(θ_i) = Pl(θ_i) − m(θ_i)`. Bayesian inputs
/// make every `Δ` zero and the whole outcome undefined.
pub fn cuzz_p(bba: &MassAssignment) -> Result<ProbOutcome> {
    let v = ShaferView::build(bba)?;
    if v.atoms.len() < 2 {
        return Err(Error::FrameTooSmall);
    }
    if bba.is_bayesian() {
        let probs = vec![None; v.atoms.len()];
        return Ok(v.outcome(bba, "CuzzP", probs));
    }
    let tnsm = 1.0 - v.mass.iter().sum::<f64>();
    let deltas: Vec<f64> = v.mass.iter().zip(&v.plaus).map(|(m, pl)| pl - m).collect();
    let delta_sum: f64 = deltas.iter().sum();
    let probs = v
        .mass
        .iter()
        .zip(&deltas)
        .map(|(m, d)| Some(m + tnsm * d / delta_sum))
        .collect();
    Ok(v.outcome(bba, "CuzzP", probs))
}

fn direct(transform: Transform, bba: &MassAssignment, epsilon: f64) -> Result<ProbOutcome> {
    match transform {
        Transform::BetP => Ok(bet_p(bba)),
        Transform::DSmP => dsm_p(bba, epsilon),
        Transform::PrBel => pr_bel(bba),
        Transform::PrPl => pr_pl(bba),
        Transform::PrNPl => pr_npl(bba),
        Transform::PraPl => pra_pl(bba),
        Transform::PrHyb => pr_hyb(bba),
        Transform::CuzzP => cuzz_p(bba),
    }
}

/// Runs a transform on the refined Shafer-model frame and maps the
/// refined-singleton probabilities back onto the original atoms.
pub fn refine_then(
    transform: Transform,
    bba: &MassAssignment,
    epsilon: f64,
) -> Result<ProbOutcome> {
    let (refinement, refined) = refine_bba(bba)?;
    let out = direct(transform, &refined, epsilon)?;
    let mut probs: Vec<Option<f64>> = vec![None; bba.model().atom_count()];
    let original_atoms = bba.model().atoms();
    for (j, (_, p)) in out.atom_probs().enumerate() {
        let atom = refinement.atom_of_singleton(j);
        let slot = original_atoms
            .iter()
            .position(|a| *a == atom)
            .expect("refined singletons map onto original atoms");
        probs[slot] = p;
    }
    Ok(ProbOutcome::new(
        bba.model().clone(),
        out.name(),
        out.epsilon(),
        probs,
    ))
}

/// Runs a transform on any model, refining first when the transform
/// needs a Shafer frame and the model is not one.
pub fn run_transform(
    transform: Transform,
    bba: &MassAssignment,
    epsilon: f64,
) -> Result<ProbOutcome> {
    if transform.needs_shafer() && !bba.model().is_shafer() {
        refine_then(transform, bba, epsilon)
    } else {
        direct(transform, bba, epsilon)
    }
}

/// One row of a comparison report.
#[derive(Debug, Clone)]
pub struct TransformRun {
    pub outcome: ProbOutcome,
    /// `None` when any atom of the outcome is undefined.
    pub pic: Option<f64>,
}

impl TransformRun {
    pub fn label(&self) -> &str {
        self.outcome.name()
    }
}

/// Fixed presentation order used to break PIC ties deterministically.
fn registry_index(label: &str) -> usize {
    match label {
        "PrNPl" => 0,
        "BetP" => 1,
        "CuzzP" => 2,
        "PrPl" => 3,
        "PraPl" => 4,
        "PrHyb" => 5,
        l if l.starts_with("DSmP") && l != "DSmP_0" => 6,
        "PrBel" => 7,
        _ => 8, // DSmP_0
    }
}

/// Runs the selected transforms (all eight by default elsewhere),
/// auto-refining where required, and ranks the rows by ascending PIC
/// with undefined rows first.
///
/// Selecting [`Transform::DSmP`] with `epsilon > 0` contributes two rows,
/// one at the requested `ε` and one at `ε = 0`. Transforms whose PIC is
/// algebraically equal can differ in the last floating-point digits, so
/// ties are detected at 1e-9 resolution and broken by a fixed
/// presentation order.
pub fn run_selected(
    bba: &MassAssignment,
    epsilon: f64,
    transforms: &[Transform],
    force_prbel_zero: bool,
) -> Result<Vec<TransformRun>> {
    if bba.model().atom_count() < 2 {
        return Err(Error::SingleAtom);
    }
    let mut runs: Vec<TransformRun> = Vec::new();
    let mut push = |outcome: ProbOutcome| -> Result<()> {
        let pic = if outcome.is_fully_defined() {
            Some(info::pic(&outcome)?.pic)
        } else {
            None
        };
        runs.push(TransformRun { outcome, pic });
        Ok(())
    };
    for &t in transforms {
        match t {
            Transform::DSmP => {
                push(run_transform(t, bba, epsilon)?)?;
                if epsilon != 0.0 {
                    push(run_transform(t, bba, 0.0)?)?;
                }
            }
            Transform::PrBel => {
                let mut out = run_transform(t, bba, epsilon)?;
                if force_prbel_zero {
                    out = out.with_undefined_as_zero();
                }
                push(out)?;
            }
            _ => push(run_transform(t, bba, epsilon)?)?,
        }
    }
    runs.sort_by_key(|r| {
        let quantized = r.pic.map(|p| (p * 1e9).round() as i64);
        (
            quantized.is_some(),
            quantized.unwrap_or(0),
            registry_index(r.label()),
        )
    });
    Ok(runs)
}

/// Runs all eight transforms and ranks them by PIC.
pub fn transform_all(bba: &MassAssignment, epsilon: f64) -> Result<Vec<TransformRun>> {
    run_selected(bba, epsilon, &Transform::ALL, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{Frame, FrameModel};

    const TOL: f64 = 5e-4;

    fn shafer(names: &[&str]) -> FrameModel {
        FrameModel::shafer(Frame::new(names.to_vec()).unwrap())
    }

    fn free(names: &[&str]) -> FrameModel {
        FrameModel::free(Frame::new(names.to_vec()).unwrap())
    }

    fn hybrid_ab() -> FrameModel {
        let frame = Frame::new(["A", "B", "C"]).unwrap();
        let f = FrameModel::free(frame.clone());
        let empty = f.element_union(
            f.element_intersection(f.singleton(0), f.singleton(2)),
            f.element_intersection(f.singleton(1), f.singleton(2)),
        );
        FrameModel::hybrid(frame, empty).unwrap()
    }

    fn general2() -> MassAssignment {
        MassAssignment::from_exprs(
            shafer(&["A", "B"]),
            &[("A", 0.3), ("B", 0.1), ("A∪B", 0.6)],
        )
        .unwrap()
    }

    fn support2() -> MassAssignment {
        MassAssignment::from_exprs(shafer(&["A", "B"]), &[("A", 0.4), ("A∪B", 0.6)]).unwrap()
    }

    fn free2() -> MassAssignment {
        MassAssignment::from_exprs(
            free(&["A", "B"]),
            &[("A∩B", 0.4), ("A", 0.2), ("B", 0.1), ("A∪B", 0.3)],
        )
        .unwrap()
    }

    fn eval(o: &ProbOutcome, text: &str) -> f64 {
        let x = crate::expr::parse_expr(text, o.model()).unwrap();
        o.evaluate(x).unwrap()
    }

    fn assert_row(o: &ProbOutcome, expected: &[(&str, f64)]) {
        for (text, want) in expected {
            let got = eval(o, text);
            assert!(
                (got - want).abs() < TOL,
                "{}({text}) = {got}, expected {want}",
                o.name()
            );
        }
    }

    #[test]
    fn betp_on_the_general_source() {
        assert_row(&bet_p(&general2()), &[("A", 0.6), ("B", 0.4)]);
    }

    #[test]
    fn betp_direct_on_the_free_model() {
        assert_row(
            &bet_p(&free2()),
            &[("A", 0.85), ("B", 0.80), ("A∩B", 0.65)],
        );
    }

    #[test]
    fn betp_on_vacuous_is_uniform() {
        let bba =
            MassAssignment::from_exprs(shafer(&["A", "B", "C"]), &[("A∪B∪C", 1.0)]).unwrap();
        let o = bet_p(&bba);
        for text in ["A", "B", "C"] {
            assert!((eval(&o, text) - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dsmp_on_the_general_source() {
        let bba = general2();
        assert_row(&dsm_p(&bba, 0.0).unwrap(), &[("A", 0.75), ("B", 0.25)]);
        assert_row(
            &dsm_p(&bba, 0.001).unwrap(),
            &[("A", 0.7492), ("B", 0.2508)],
        );
    }

    #[test]
    fn dsmp_on_the_simple_support() {
        let bba = support2();
        assert_row(
            &dsm_p(&bba, 0.001).unwrap(),
            &[("A", 0.9985), ("B", 0.0015)],
        );
        assert_row(&dsm_p(&bba, 0.0).unwrap(), &[("A", 1.0), ("B", 0.0)]);
    }

    #[test]
    fn dsmp_zero_on_the_free_model_concentrates() {
        let o = dsm_p(&free2(), 0.0).unwrap();
        assert_row(&o, &[("A", 1.0), ("B", 1.0), ("A∩B", 1.0)]);
    }

    #[test]
    fn dsmp_zero_is_undefined_on_uncovered_ignorance() {
        // no singleton mass inside A∪B: the vacuous source
        let bba = MassAssignment::from_exprs(shafer(&["A", "B"]), &[("A∪B", 1.0)]).unwrap();
        let o = dsm_p(&bba, 0.0).unwrap();
        assert!(!o.is_fully_defined());
        let m = o.model().clone();
        assert_eq!(o.evaluate(m.singleton(0)), None);
    }

    #[test]
    fn dsmp_rejects_bad_epsilon() {
        assert!(matches!(
            dsm_p(&general2(), -0.5),
            Err(Error::InvalidEpsilon(_))
        ));
    }

    #[test]
    fn shafer3_source_a_rows() {
        let bba = MassAssignment::from_exprs(
            shafer(&["A", "B", "C"]),
            &[
                ("A", 0.35),
                ("B", 0.25),
                ("C", 0.02),
                ("A∪B", 0.20),
                ("A∪C", 0.07),
                ("B∪C", 0.05),
                ("A∪B∪C", 0.06),
            ],
        )
        .unwrap();
        assert_row(
            &pr_npl(&bba).unwrap(),
            &[("A", 0.4722), ("B", 0.3889), ("C", 0.1389)],
        );
        assert_row(
            &cuzz_p(&bba).unwrap(),
            &[("A", 0.5029), ("B", 0.3937), ("C", 0.1034)],
        );
        assert_row(
            &bet_p(&bba),
            &[("A", 0.5050), ("B", 0.3950), ("C", 0.1000)],
        );
        assert_row(
            &pra_pl(&bba).unwrap(),
            &[("A", 0.5294), ("B", 0.3978), ("C", 0.0728)],
        );
        assert_row(
            &pr_pl(&bba).unwrap(),
            &[("A", 0.5421), ("B", 0.4005), ("C", 0.0574)],
        );
        assert_row(
            &pr_hyb(&bba).unwrap(),
            &[("A", 0.5575), ("B", 0.4019), ("C", 0.0406)],
        );
        assert_row(
            &pr_bel(&bba).unwrap(),
            &[("A", 0.5668), ("B", 0.4038), ("C", 0.0294)],
        );
        assert_row(
            &dsm_p(&bba, 0.001).unwrap(),
            &[("A", 0.5665), ("B", 0.4037), ("C", 0.0298)],
        );
    }

    #[test]
    fn shafer3_source_b_rows_with_undefined_prbel() {
        let bba = MassAssignment::from_exprs(
            shafer(&["A", "B", "C"]),
            &[
                ("A", 0.10),
                ("C", 0.20),
                ("A∪B", 0.30),
                ("A∪C", 0.10),
                ("A∪B∪C", 0.30),
            ],
        )
        .unwrap();
        let prbel = pr_bel(&bba).unwrap();
        let m = prbel.model().clone();
        assert_eq!(prbel.evaluate(m.singleton(1)), None);
        assert!((prbel.evaluate(m.singleton(0)).unwrap() - 0.5333).abs() < TOL);
        assert!((prbel.evaluate(m.singleton(2)).unwrap() - 0.4667).abs() < TOL);
        assert_row(
            &cuzz_p(&bba).unwrap(),
            &[("A", 0.3880), ("B", 0.2470), ("C", 0.3650)],
        );
        assert_row(
            &dsm_p(&bba, 0.001).unwrap(),
            &[("A", 0.5305), ("B", 0.0039), ("C", 0.4656)],
        );
        assert_row(
            &pr_hyb(&bba).unwrap(),
            &[("A", 0.4553), ("B", 0.1698), ("C", 0.3749)],
        );
    }

    #[test]
    fn sudano_transforms_require_shafer_models() {
        let bba = free2();
        assert!(matches!(pr_bel(&bba), Err(Error::ShaferRequired)));
        assert!(matches!(cuzz_p(&bba), Err(Error::ShaferRequired)));
    }

    #[test]
    fn refined_prnpl_on_the_free_model() {
        let o = refine_then(Transform::PrNPl, &free2(), 0.0).unwrap();
        assert_row(&o, &[("A", 0.7895), ("B", 0.7368), ("A∩B", 0.5263)]);
    }

    #[test]
    fn refined_rows_on_the_hybrid_model() {
        let bba = MassAssignment::from_exprs(
            hybrid_ab(),
            &[
                ("A∩B", 0.2),
                ("A", 0.1),
                ("C", 0.2),
                ("A∪B", 0.3),
                ("A∪C", 0.1),
                ("A∪B∪C", 0.1),
            ],
        )
        .unwrap();
        let (refinement, refined) = refine_bba(&bba).unwrap();
        let cuzz = cuzz_p(&refined).unwrap();
        let rm = refinement.refined_model().clone();
        let expect = [("A'", 0.2000), ("B'", 0.1333), ("C'", 0.2667), ("D'", 0.4000)];
        for (name, want) in expect {
            let x = rm.singleton_by_name(name).unwrap();
            assert!((cuzz.evaluate(x).unwrap() - want).abs() < TOL, "{name}");
        }
        // DSmP computed directly on the hybrid model agrees with the
        // refined-frame values
        let dsmp = dsm_p(&bba, 0.001).unwrap();
        assert_row(
            &dsmp,
            &[("A∩B", 0.6962), ("C", 0.2996)],
        );
        let prbel = refine_then(Transform::PrBel, &bba, 0.0).unwrap();
        assert!((prbel.evaluate(bba.model().singleton(2)).unwrap() - 0.3).abs() < TOL);
        assert!(prbel
            .evaluate(crate::expr::parse_expr("A∩B", bba.model()).unwrap())
            .is_some());
        assert!(prbel.evaluate(bba.model().singleton(0)).is_none());
    }

    #[test]
    fn cuzzp_is_undefined_on_bayesian_sources() {
        let bba = MassAssignment::from_exprs(
            shafer(&["A", "B"]),
            &[("A", 0.5), ("B", 0.5)],
        )
        .unwrap();
        let o = cuzz_p(&bba).unwrap();
        assert!(!o.is_fully_defined());
        assert!(o.atom_probs().all(|(_, p)| p.is_none()));
    }

    #[test]
    fn dsmp_eps_one_reduces_to_betp_without_singleton_mass() {
        let bba = MassAssignment::from_exprs(
            shafer(&["A", "B", "C"]),
            &[("A∪B", 0.4), ("B∪C", 0.3), ("A∪B∪C", 0.3)],
        )
        .unwrap();
        let d = dsm_p(&bba, 1.0).unwrap();
        let b = bet_p(&bba);
        for ((_, x), (_, y)) in d.atom_probs().zip(b.atom_probs()) {
            assert!((x.unwrap() - y.unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn lower_bound_holds_for_betp_and_dsmp() {
        let bba = free2();
        let ab = crate::expr::parse_expr("A∩B", bba.model()).unwrap();
        assert!(eval(&bet_p(&bba), "A∩B") >= bba.mass_of(ab));
        assert!(eval(&dsm_p(&bba, 0.001).unwrap(), "A∩B") >= bba.mass_of(ab));
    }

    #[test]
    fn normalized_plausibility_can_break_the_lower_bound() {
        let bba = MassAssignment::from_exprs(
            shafer(&["A", "B", "C"]),
            &[("A", 0.2), ("B∪C", 0.8)],
        )
        .unwrap();
        let a = bba.model().singleton(0);
        let npl = pr_npl(&bba).unwrap().evaluate(a).unwrap();
        assert!((npl - 0.1111).abs() < 2e-4);
        assert!(npl < bba.mass_of(a));
        let dsmp = dsm_p(&bba, 0.001).unwrap().evaluate(a).unwrap();
        assert!(dsmp >= bba.mass_of(a));
    }

    #[test]
    fn ranking_on_the_general_source_matches_the_expected_order() {
        let runs = transform_all(&general2(), 0.001).unwrap();
        let labels: Vec<&str> = runs.iter().map(|r| r.label()).collect();
        assert_eq!(
            labels,
            [
                "PrNPl",
                "BetP",
                "CuzzP",
                "PrPl",
                "PraPl",
                "PrHyb",
                "DSmP_0.001",
                "PrBel",
                "DSmP_0"
            ]
        );
        let pics: Vec<f64> = runs.iter().map(|r| r.pic.unwrap()).collect();
        let expected = [
            0.0113, 0.0291, 0.0291, 0.0553, 0.0553, 0.0984, 0.1875, 0.1887, 0.1887,
        ];
        for (got, want) in pics.iter().zip(expected) {
            assert!((got - want).abs() < TOL, "{got} vs {want}");
        }
    }

    #[test]
    fn undefined_rows_rank_first() {
        let runs = transform_all(&support2(), 0.001).unwrap();
        assert_eq!(runs[0].label(), "PrBel");
        assert!(runs[0].pic.is_none());
        assert_eq!(runs.last().unwrap().label(), "DSmP_0");
        assert!((runs.last().unwrap().pic.unwrap() - 1.0).abs() < TOL);
    }

    #[test]
    fn composite_evaluation_matches_the_direct_formulas() {
        // evaluating the per-atom outcome at a composite element by atom
        // summation agrees with evaluating the defining sums at the
        // element itself
        let hybrid = MassAssignment::from_exprs(
            hybrid_ab(),
            &[("A∩B", 0.2), ("A", 0.3), ("C", 0.2), ("A∪B∪C", 0.3)],
        )
        .unwrap();
        for bba in [free2(), general2(), hybrid] {
            let model = bba.model().clone();
            let betp = bet_p(&bba);
            let eps = 0.001;
            let dsmp = dsm_p(&bba, eps).unwrap();
            for x in model.enumerate_elements().unwrap() {
                let direct_betp: f64 = bba
                    .focal_elements()
                    .map(|(y, m)| {
                        let both = model.element_intersection(x, y);
                        m * model.dsm_cardinal(both) as f64 / model.dsm_cardinal(y) as f64
                    })
                    .sum();
                assert!((betp.evaluate(x).unwrap() - direct_betp).abs() < 1e-12);

                let unit_mass = |z: AtomSet| -> f64 {
                    z.atoms().map(|a| bba.mass_of(a)).sum()
                };
                let direct_dsmp: f64 = bba
                    .focal_elements()
                    .map(|(y, m)| {
                        let both = model.element_intersection(x, y);
                        let num = unit_mass(both) + eps * model.dsm_cardinal(both) as f64;
                        let den = unit_mass(y) + eps * model.dsm_cardinal(y) as f64;
                        m * num / den
                    })
                    .sum();
                assert!((dsmp.evaluate(x).unwrap() - direct_dsmp).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn forcing_prbel_zero_defines_the_row() {
        let runs = run_selected(&support2(), 0.001, &[Transform::PrBel], true).unwrap();
        assert_eq!(runs.len(), 1);
        assert!((runs[0].pic.unwrap() - 1.0).abs() < 1e-12);
        let m = runs[0].outcome.model().clone();
        assert_eq!(runs[0].outcome.evaluate(m.singleton(1)), Some(0.0));
    }
}
