pub mod cli;
pub mod criterion;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gcd;
pub mod groebner;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod problem;

pub use criterion::{
    block_sequence, check_divisor_free, check_sequence, euler_column, find_candidate_nu, jacobian, positive_char_split, Block, CheckOptions,
    FreenessCertificate, Gamma, SequenceSpec, SplitCertificate, Verdict,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use gcd::gcd_multivariate;
pub use groebner::{algebraic_independence, buchberger, normal_form, syzygy_basis, GroebnerBasis, ModVec, SyzygyBasis};
pub use matrix::{DetMethod, DivisorClass, PolyMatrix};
pub use parse::{parse_poly, parse_poly_in};
pub use poly::{ArithOp, Degree, Monomial, MonomialOrder, Poly, Ring};
pub use problem::Problem;
