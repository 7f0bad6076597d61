//! Exact-arithmetic workbench for the totally nonnegative monoid of
//! `GL_n(Q)`: cell coordinates and their recovery, element classification,
//! Jordan structure, and executable forms of the structure theorems, plus a
//! floating-point module for conjugacy-class witnesses built from Jacobi
//! (tridiagonal) Lie-algebra elements.

pub mod classify;
pub mod coxeter;
pub mod jacobi;
pub mod jordanconj;
pub mod tnn;
pub mod ratlin;
pub mod rng;
pub mod theorems;

pub use ratlin::{QMat, QPoly, Rat};
