//! Exact rational linear algebra: scalars, matrices, polynomials, Sturm root
//! counting, and the multiplicative Jordan-Chevalley decomposition.

pub mod jc;
pub mod mat;
pub mod poly;
pub mod rat;

pub use jc::{is_unipotent_matrix, jordan_chevalley_mult, verify_jordan_pair, JordanError};
pub use mat::{eval_poly_mat, eval_poly_vec, MatError, QMat};
pub use poly::{
    count_distinct_positive_roots, count_distinct_real_roots, count_distinct_roots_in,
    rational_spectrum, simplest_rational_in, QPoly, SpectrumError,
};
pub use rat::{
    rat, rat_from_str, rat_int, rat_one, rat_serde, rat_to_string, rat_vec_serde, rat_zero, sign,
    Rat,
};
