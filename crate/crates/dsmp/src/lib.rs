//! Subjective probability measures from belief mass assignments.
//!
//! This crate converts basic belief assignments defined on any DSm model
//! of a frame of discernment — Shafer's model, the free model or a hybrid
//! model with integrity constraints — into probability distributions over
//! the model's Venn atoms, through eight transformations: `BetP`,
//! `DSmP_ε`, `PrBel`, `PrPl`, `PrNPl`, `PraPl`, `PrHyb` and `CuzzP`. The
//! resulting measures are compared by their probabilistic information
//! content (PIC), the dual of the normalized Shannon entropy.
//!
//! `BetP` and `DSmP` work on any model directly. The Sudano and Cuzzolin
//! transforms need exclusive hypotheses, so on free and hybrid models
//! they run on the refined frame (one exclusive singleton per non-empty
//! Venn atom) and their results are mapped back through the refinement
//! bijection. Division-by-zero forms do not raise errors: the affected
//! entries are carried as undefined values, printed as `NaN`.
//!
//! A qualitative pipeline mirrors `DSmP` for belief expressed with
//! linguistic labels, computing with exact rational label indices and
//! rounding once at output time.
//!
//! ```
//! use dsmp::{Frame, FrameModel, MassAssignment, transform_all};
//!
//! let model = FrameModel::shafer(Frame::new(["A", "B"]).unwrap());
//! let bba = MassAssignment::from_exprs(
//!     model,
//!     &[("A", 0.3), ("B", 0.1), ("A∪B", 0.6)],
//! ).unwrap();
//! let ranked = transform_all(&bba, 0.001).unwrap();
//! // lowest information content first, DSmP_0 and PrBel at the top
//! assert_eq!(ranked.first().unwrap().label(), "PrNPl");
//! assert_eq!(ranked.last().unwrap().label(), "DSmP_0");
//! ```

#![forbid(unsafe_code)]

pub mod belief;
pub mod error;
pub mod expr;
pub mod frame;
pub mod info;
pub mod qual;
pub mod transforms;

pub use belief::{refine_bba, MassAssignment, ProbOutcome, NORMALIZATION_TOL};
pub use error::{Error, Result};
pub use expr::{format_elem, parse_expr};
pub use frame::{AtomSet, Frame, FrameModel, Refinement};
pub use info::{pic, shannon_entropy, PicReport};
pub use qual::{q_dsm_p, q_pic, LabelScale, LabelValue, QualMassAssignment};
pub use transforms::{
    bet_p, cuzz_p, dsm_p, pr_bel, pr_hyb, pr_npl, pr_pl, pra_pl, refine_then, run_selected,
    run_transform, transform_all, Transform, TransformRun,
};
