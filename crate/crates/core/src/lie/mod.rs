//! Weight systems from Lie superalgebras.

mod checks;
mod compile;
mod eval;
mod pbw;
mod poly;
mod spec;
mod verma;

pub use checks::{
    check_compile_independence, check_gl11_vanishing, check_multiplicativity, gl11_deframed, small_leg_characters,
    IndependenceReport, MultiplicativityReport, VanishingReport,
};
pub use compile::{compile, compile_random, Gen, LayerWord};
pub use eval::{check_stu_invariance, evaluate_tensor, for_each_coloring, w_l, Evaluator, StuReport, Tables, WordTensor};
pub use pbw::{check_central, CentralityReport, Monomial, Pbw, PbwElement};
pub use poly::Poly;
pub use spec::{gl11, gl11_literal, osp12, sl2, validate_spec, AlgebraSpec, Check, Root, TriangularData, ValidationReport};
pub use verma::{highest_weight_poly, highest_weight_poly_comb, knn, root_pairing, Verma};

use crate::hopf::HopfError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("algebra spec line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("the algebra has no triangular decomposition")]
    NoTriangular,
    #[error("a word left the Verma module truncated at depth {depth}; increase the depth")]
    Truncation { depth: usize },
    #[error(transparent)]
    Hopf(#[from] HopfError),
}
