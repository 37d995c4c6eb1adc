//! Graded components of top local cohomology modules.
//!
//! For a graded ideal `I ⊂ R_0[U_1..U_s]` and `R = R_0[U_1..U_s]/I`, the component
//! `H^s_{R_+}(R)_{-d}` is the cokernel of an explicit matrix over `R_0` built from
//! inverse polynomials. This crate builds that matrix and measures the cokernel
//! exactly when `R_0` is `ℚ`, `𝔽_p`, `ℤ`, or a polynomial ring over `ℚ` or `𝔽_p`.

pub mod cohomology;
pub mod groebner;
pub mod linalg;
pub mod multipoly;
pub mod parse;
pub mod poly;
pub mod polymatrix;
pub mod presentation;
pub mod scalars;
pub mod strand;

pub use cohomology::{
    char_comparison, fit_reverse_polynomial, gap_free_check, h0_closed, h2_closed, hilbert_table,
    minimal_primes_report, pi_set, top_component_at_s, top_dimension, tridiag_det, tridiag_matrix, vanishes, Builtin,
    CharRow, CohomologyError, CohomologyQuery, Fit, GapFree, HilbertTable, RPolynomial, TopDimension, Vanishing,
};
pub use groebner::{buchberger, in_radical, is_cofinite, is_unit_ideal, GroebnerBasis, MonomialOrder};
pub use linalg::ExactMatrix;
pub use multipoly::{CoefficientRing, GradedIdeal, NestedPolynomial};
pub use parse::{parse_coefficient, parse_generators, parse_nested, ParseError};
pub use poly::{Monomial, Poly};
pub use polymatrix::PolyMatrix;
pub use presentation::{presentation_matrix, InverseBasis, PresentationMatrix};
pub use scalars::ScalarDomain;
pub use strand::{brute_force_coker_dim, GradedMatrix, StrandReport};
