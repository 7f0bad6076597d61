//! Exact recovery of cell coordinates: the `U^+ T U^-` Gauss factorization
//! and greedy peeling of totally nonnegative unipotent matrices into
//! elementary generators.

use super::minors::is_tnn;
use super::{realize_unipotent, CellPoint, GroupElt, HalfSign, TnnError, TorusElt};
use crate::coxeter::WeylElt;
use crate::ratlin::{QMat, Rat};
use num_traits::{One, Signed, Zero};

/// Factor `g = u_plus * t * u_minus` with `u_plus` unipotent upper
/// triangular, `t` diagonal, `u_minus` unipotent lower triangular. Exists
/// and is unique iff all trailing principal minors of `g` are nonzero; the
/// error reports the size of the first vanishing one.
pub fn gauss_utu(g: &GroupElt) -> Result<(QMat, TorusElt, QMat), TnnError> {
    let n = g.n();
    let mut work = g.mat().clone();
    let mut u_plus = QMat::identity(n);
    // Clear the strictly-upper part from the last column leftwards; pivots
    // are ratios of successive trailing principal minors.
    for c in (1..n).rev() {
        if work.at(c, c).is_zero() {
            return Err(TnnError::VanishingTrailingMinor { size: n - c });
        }
        for r in 0..c {
            if work.at(r, c).is_zero() {
                continue;
            }
            let f = work.at(r, c) / work.at(c, c);
            // row_r -= f * row_c  (left-multiplication by I - f E_{r,c})
            for j in 0..=c {
                let delta = &f * work.at(c, j);
                *work.at_mut(r, j) -= delta;
            }
            debug_assert!(work.at(r, c).is_zero());
            // g = u_plus * work is maintained: u_plus *= (I + f E_{r,c})
            for i in 0..n {
                let delta = u_plus.at(i, r) * &f;
                *u_plus.at_mut(i, c) += delta;
            }
        }
    }
    if work.at(0, 0).is_zero() {
        return Err(TnnError::VanishingTrailingMinor { size: n });
    }
    let diag = work.diag();
    let t = TorusElt::new(diag.clone())?;
    let mut u_minus = work;
    for r in 0..n {
        let d = diag[r].clone();
        for c in 0..=r {
            *u_minus.at_mut(r, c) = u_minus.at(r, c) / &d;
        }
    }
    debug_assert!(u_minus.is_lower_triangular());
    Ok((u_plus, t, u_minus))
}

struct Peeled {
    word: Vec<usize>,
    params: Vec<Rat>,
}

/// Bruhat label of a unipotent triangular matrix: for lower triangular `u`
/// this is the `w` with `u` in `B^+ w B^+`, read off the ranks of lower-left
/// corner submatrices; for upper triangular, the mirror with upper-right
/// corners. For TNN unipotent matrices this is exactly the cell label.
fn bruhat_label(u: &QMat, sign: HalfSign) -> WeylElt {
    let n = u.rows();
    let rank = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> usize {
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        u.submatrix(
            &rows.collect::<Vec<_>>(),
            &cols.collect::<Vec<_>>(),
        )
        .rank()
    };
    let images: Vec<usize> = match sign {
        HalfSign::Minus => (1..=n)
            .map(|j| {
                (1..=n)
                    .filter(|&i| rank(i - 1..n, 0..j) > rank(i - 1..n, 0..j - 1))
                    .max()
                    .expect("every column adds rank somewhere")
            })
            .collect(),
        HalfSign::Plus => (1..=n)
            .map(|j| {
                (1..=n)
                    .filter(|&i| rank(0..i, j - 1..n) > rank(0..i, j..n))
                    .min()
                    .expect("every column adds rank somewhere")
            })
            .collect(),
    };
    WeylElt::from_images(images).expect("rank data yields a permutation")
}

/// The critical peel parameter at a left descent `i`: stripping the
/// generator changes exactly the minors using row `i` but not `i+1` (upper
/// case; mirrored for lower), each affinely in `a`, so the unique parameter
/// landing in the smaller cell is the minimum of the ratios
/// `M_{R,C} / M_{R',C}` over positive denominators.
fn critical_ratio(work: &QMat, i: usize, sign: HalfSign) -> Option<Rat> {
    let n = work.rows();
    let table = super::minors::minor_table(work);
    // 0-based: the row being reduced and the row subtracted from it.
    let (target, source) = match sign {
        HalfSign::Plus => (i - 1, i),
        HalfSign::Minus => (i, i - 1),
    };
    let mut best: Option<Rat> = None;
    for (&(rows, cols), num) in &table {
        if rows >> target & 1 == 0 || rows >> source & 1 == 1 {
            continue;
        }
        let swapped = (rows & !(1u32 << target)) | (1u32 << source);
        let den = &table[&(swapped, cols)];
        if !den.is_positive() {
            continue;
        }
        let ratio = num / den;
        debug_assert!(!ratio.is_negative() || num.is_negative());
        if best.as_ref().map_or(true, |b| &ratio < b) {
            best = Some(ratio);
        }
    }
    let _ = n;
    best.filter(|a| a.is_positive())
}

/// Left-peel a unipotent triangular TNN matrix along the canonical reduced
/// word of its Bruhat label. A successful walk is a certificate: positive
/// parameters along a reduced word re-multiplying to the input pin down the
/// unique cell membership.
fn peel(u: &QMat, sign: HalfSign) -> Result<Peeled, TnnError> {
    let n = u.rows();
    if u.diag().iter().any(|d| !d.is_one()) {
        return Err(TnnError::NotUnipotentTriangular(match sign {
            HalfSign::Plus => "upper",
            HalfSign::Minus => "lower",
        }));
    }
    let w = bruhat_label(u, sign);
    let word = w.canonical_word();
    let mut work = u.clone();
    let mut params = Vec::with_capacity(word.len());
    let pin = super::Pinning::new(n);
    for &i in &word {
        let Some(a) = critical_ratio(&work, i, sign) else {
            return Err(TnnError::NotTnn);
        };
        let inv_gen = pin
            .gen(i, &-a.clone(), sign)
            .expect("letters are in range");
        work = inv_gen.mul(&work);
        params.push(a);
    }
    if !work.is_identity() {
        return Err(TnnError::NotTnn);
    }
    debug_assert_eq!(realize_unipotent(n, &word, &params, sign), *u);
    Ok(Peeled { word, params })
}

/// The unique cell `(w, params)` of a totally nonnegative unipotent
/// triangular matrix: `u = x_{i_1}(a_1) ... x_{i_l}(a_l)` (resp. `y`) with
/// the canonical reduced word of `w` and positive parameters.
/// Re-multiplication is checked internally, so a successful return is a
/// certificate of cell membership.
pub fn unipotent_cell(u: &QMat, sign: HalfSign) -> Result<(WeylElt, Vec<Rat>), TnnError> {
    let n = u.rows();
    if !u.is_square() || !u.diag().iter().all(|d| d.is_one()) {
        return Err(TnnError::NotUnipotentTriangular(match sign {
            HalfSign::Plus => "upper",
            HalfSign::Minus => "lower",
        }));
    }
    match sign {
        HalfSign::Plus if !u.is_upper_triangular() => {
            return Err(TnnError::NotUnipotentTriangular("upper"));
        }
        HalfSign::Minus if !u.is_lower_triangular() => {
            return Err(TnnError::NotUnipotentTriangular("lower"));
        }
        _ => {}
    }
    let peeled = peel(u, sign)?;
    let w = WeylElt::from_reduced_word(n, &peeled.word).expect("checked reduced");
    Ok((w, peeled.params))
}

/// Full cell recovery: `factor_cell(realize(p)) = p` exactly for valid cell
/// points, and `realize(factor_cell(g)) = g` whenever `g` factors.
pub fn factor_cell(g: &GroupElt) -> Result<CellPoint, TnnError> {
    let (u_plus, t, u_minus) = gauss_utu(g)?;
    if !is_tnn(&u_plus) || !is_tnn(&u_minus) {
        return Err(TnnError::NotTnn);
    }
    let (w1, params1) = unipotent_cell(&u_plus, HalfSign::Plus)?;
    let (w2, params2) = unipotent_cell(&u_minus, HalfSign::Minus)?;
    CellPoint::new(
        w1.canonical_word(),
        params1,
        t,
        w2.canonical_word(),
        params2,
    )
}
