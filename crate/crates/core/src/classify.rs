//! Element classification for `GL_n(Q)`: regularity, semisimplicity,
//! unipotence, the multiplicative Jordan pair, and the Levi data of the
//! centralizer of a semisimple element with rational positive spectrum.

use crate::coxeter::ParabolicSet;
use crate::ratlin::{
    jordan_chevalley_mult, rational_spectrum, JordanError, QMat, QPoly, Rat, SpectrumError,
};
use crate::tnn::{is_tnn, oscillatory_order, GroupElt, TnnError, TorusElt};
use num_traits::Signed;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("unsupported in exact mode: {0}")]
    UnsupportedExact(String),
    #[error("matrix is not semisimple")]
    NotSemisimple,
    #[error("expected a triangular totally nonnegative matrix with positive diagonal")]
    NotBorelTnn,
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Tnn(#[from] TnnError),
}

/// Regular in the sense of Steinberg; for `GL_n` this is exactly
/// `minpoly = charpoly` (one Jordan block per eigenvalue).
pub fn is_regular(g: &GroupElt) -> bool {
    let m = g.mat();
    m.minpoly().unwrap() == m.charpoly().unwrap()
}

/// Regular semisimple: squarefree characteristic polynomial.
pub fn is_regular_semisimple(g: &GroupElt) -> bool {
    g.mat().charpoly().unwrap().is_squarefree()
}

/// All eigenvalues 1: `charpoly = (x-1)^n`.
pub fn is_unipotent(g: &GroupElt) -> bool {
    let n = g.n();
    let mut target = QPoly::one();
    let lin = QPoly::x_minus(&crate::ratlin::rat_one());
    for _ in 0..n {
        target = target.mul(&lin);
    }
    g.mat().charpoly().unwrap() == target
}

/// Unipotent with a single Jordan block: `minpoly = (x-1)^n` as well.
pub fn is_regular_unipotent(g: &GroupElt) -> bool {
    is_unipotent(g) && is_regular(g)
}

/// Levi data of the centralizer of a semisimple `s`: an exact conjugator
/// `h` with `h^{-1} s h = t_std`, the standard torus element (weakly
/// decreasing diagonal), and `J = { i : alpha_i(t_std) = 1 }` so that
/// `Z_G(s) = h L_J h^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviData {
    pub h: QMat,
    pub j: ParabolicSet,
    pub t_std: TorusElt,
}

/// Multiplicative Jordan pair with optional centralizer data (present when
/// the semisimple part has rational positive spectrum).
#[derive(Debug, Clone)]
pub struct JordanPair {
    pub s: QMat,
    pub u: QMat,
    pub levi: Option<LeviData>,
}

pub fn centralizer_levi(s: &QMat) -> Result<LeviData, ClassifyError> {
    if !s
        .minpoly()
        .map_err(|e| ClassifyError::Jordan(e.into()))?
        .is_squarefree()
    {
        return Err(ClassifyError::NotSemisimple);
    }
    let spectrum = rational_spectrum(&s.charpoly().unwrap()).map_err(|e| match e {
        SpectrumError::IrrationalRealRoot => {
            ClassifyError::UnsupportedExact("irrational spectrum".into())
        }
        SpectrumError::NonRealRoots => ClassifyError::UnsupportedExact("non-real spectrum".into()),
    })?;
    if spectrum.iter().any(|(r, _)| !r.is_positive()) {
        return Err(ClassifyError::UnsupportedExact(
            "nonpositive eigenvalue".into(),
        ));
    }
    let n = s.rows();
    let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut diag: Vec<Rat> = Vec::with_capacity(n);
    for (lambda, mult) in &spectrum {
        let mut shifted = s.clone();
        for i in 0..n {
            *shifted.at_mut(i, i) -= lambda;
        }
        let basis = shifted.kernel_basis();
        debug_assert_eq!(basis.len(), *mult, "semisimple: geometric = algebraic");
        for v in basis {
            columns.push(v);
            diag.push(lambda.clone());
        }
    }
    let h = QMat::from_fn(n, n, |r, c| columns[c][r].clone());
    let t_std = TorusElt::new(diag)?;
    let j = t_std.equal_index_set();
    debug_assert_eq!(
        h.inverse().unwrap().mul(s).mul(&h),
        t_std.to_matrix(),
        "conjugator diagonalizes"
    );
    Ok(LeviData { h, j, t_std })
}

/// Multiplicative Jordan decomposition with centralizer Levi data attached
/// when computable exactly.
pub fn jordan(g: &GroupElt) -> Result<JordanPair, ClassifyError> {
    let (s, u) = jordan_chevalley_mult(g.mat())?;
    let levi = centralizer_levi(&s).ok();
    Ok(JordanPair { s, u, levi })
}

/// For a triangular totally nonnegative `g` with positive diagonal: the
/// eigenspace dimension at each diagonal entry, `dim ker(g - g_kk)`.
/// For such matrices every dimension is 1.
pub fn bplus_eigenspace_dims(g: &GroupElt) -> Result<Vec<usize>, ClassifyError> {
    let m = g.mat();
    let n = g.n();
    if !(m.is_upper_triangular() || m.is_lower_triangular())
        || m.diag().iter().any(|d| !d.is_positive())
        || !is_tnn(m)
    {
        return Err(ClassifyError::NotBorelTnn);
    }
    Ok((0..n)
        .map(|k| {
            let mut shifted = m.clone();
            let c = m.at(k, k).clone();
            for i in 0..n {
                *shifted.at_mut(i, i) -= &c;
            }
            n - shifted.rank()
        })
        .collect())
}

/// Machine-readable classification of a single matrix.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ClassificationReport {
    pub regular: bool,
    pub regular_semisimple: bool,
    pub unipotent: bool,
    pub regular_unipotent: bool,
    pub oscillatory_order: Option<usize>,
}

/// Classify; `oscillatory_order` is reported for totally nonnegative inputs
/// (least `m` with `g^m` totally positive; `m <= n-1` suffices to decide).
pub fn classify(g: &GroupElt) -> ClassificationReport {
    let osc = if is_tnn(g.mat()) {
        oscillatory_order(g, g.n().saturating_sub(1).max(1))
    } else {
        None
    };
    ClassificationReport {
        regular: is_regular(g),
        regular_semisimple: is_regular_semisimple(g),
        unipotent: is_unipotent(g),
        regular_unipotent: is_regular_unipotent(g),
        oscillatory_order: osc,
    }
}
