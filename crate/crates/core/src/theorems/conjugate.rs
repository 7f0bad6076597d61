//! Conjugation lemmas in executable form.
//!
//! `attracting_conjugator` conjugates an oscillatory element with rational
//! spectrum into the upper Borel subgroup by the unique totally positive
//! lower unipotent whose columns span the attracting flag (eigenvectors in
//! strictly decreasing eigenvalue order). `torus_conj` sorts the torus part
//! of `t * u` into its dominant representative by elementary `y_i`
//! conjugations, each step solving `b = (1-c)/(c a)`.

use super::TheoremError;
use crate::coxeter::{ParabolicSet, WeylElt};
use crate::ratlin::{rational_spectrum, rat_one, QMat, Rat};
use crate::tnn::{
    gauss_utu, levi_project, oscillatory_order, torus_orbit_dominant, unipotent_cell, GroupElt,
    HalfSign, Pinning, TorusElt,
};
use num_traits::{Signed, Zero};

/// Attracting conjugator of a square matrix with distinct rational positive
/// eigenvalues: `u` lower unipotent with `u^{-1} m u` upper triangular, the
/// diagonal strictly decreasing.
fn attracting_inner(m: &QMat) -> Result<(QMat, QMat), TheoremError> {
    let n = m.rows();
    let spectrum = rational_spectrum(&m.charpoly()?)?;
    if spectrum.iter().any(|(_, mult)| *mult != 1) || spectrum.len() != n {
        return Err(TheoremError::IrrationalSpectrum);
    }
    // Eigenvector columns, eigenvalues strictly decreasing.
    let mut flag = QMat::zero(n, n);
    for (c, (lambda, _)) in spectrum.iter().enumerate() {
        let mut shifted = m.clone();
        for i in 0..n {
            *shifted.at_mut(i, i) -= lambda;
        }
        let basis = shifted.kernel_basis();
        debug_assert_eq!(basis.len(), 1);
        for r in 0..n {
            *flag.at_mut(r, c) = basis[0][r].clone();
        }
    }
    // u = unipotent lower factor of the flag matrix (column spans of leading
    // blocks agree); fails when a leading principal minor vanishes.
    let u = unipotent_lower_of(&flag).ok_or(TheoremError::FlagNotGeneric)?;
    let b = u.inverse()?.mul(m).mul(&u);
    if !b.is_upper_triangular() {
        return Err(TheoremError::FlagNotGeneric);
    }
    Ok((u, b))
}

/// `E = L U` with `L` unipotent lower triangular, when all leading
/// principal minors are nonzero.
fn unipotent_lower_of(e: &QMat) -> Option<QMat> {
    let n = e.rows();
    let mut work = e.clone();
    let mut l = QMat::identity(n);
    for c in 0..n {
        if work.at(c, c).is_zero() {
            return None;
        }
        for r in c + 1..n {
            if work.at(r, c).is_zero() {
                continue;
            }
            let f = work.at(r, c) / work.at(c, c);
            for j in c..n {
                let delta = &f * work.at(c, j);
                *work.at_mut(r, j) -= delta;
            }
            *l.at_mut(r, c) = f;
        }
    }
    Some(l)
}

/// The attracting conjugator of an oscillatory element `g` with rational
/// spectrum: the unique `u` in `U^-_{>0}` with `b = u^{-1} g u` in `B^+`;
/// writing `b = u' t`, the torus part satisfies `alpha_i(t) > 1` for all
/// `i`. Uniqueness is not checked (it needs flag-variety machinery); total
/// positivity of `u` is certified by `unipotent_cell` returning the longest
/// element.
pub fn attracting_conjugator(g: &GroupElt) -> Result<(QMat, QMat), TheoremError> {
    let n = g.n();
    if oscillatory_order(g, (n - 1).max(1)).is_none() {
        return Err(TheoremError::NotOscillatory);
    }
    let (u, b) = attracting_inner(g.mat())?;
    let (w, _) = unipotent_cell(&u, HalfSign::Minus)?;
    if w != ParabolicSet::full(n).longest() {
        return Err(TheoremError::CellMismatch(format!(
            "attracting conjugator landed in cell {w:?}, expected the longest element"
        )));
    }
    Ok((u, b))
}

/// Blockwise attracting conjugator inside the Levi `L_J`: `m` must be block
/// diagonal for `J`'s blocks with each block oscillatory (rational spectrum)
/// in its own general linear group. Returns block-diagonal `u` in
/// `U^-_{w_J,>0}` and the upper-triangular conjugate.
pub fn attracting_conjugator_levi(
    m: &QMat,
    j: &ParabolicSet,
) -> Result<(QMat, QMat), TheoremError> {
    let n = m.rows();
    let mut u = QMat::identity(n);
    for block in j.blocks() {
        if block.len() == 1 {
            continue;
        }
        let idx: Vec<usize> = block.iter().map(|&p| p - 1).collect();
        let sub = m.submatrix(&idx, &idx);
        let sub_g = GroupElt::new(sub.clone()).map_err(TheoremError::Tnn)?;
        if oscillatory_order(&sub_g, (block.len() - 1).max(1)).is_none() {
            return Err(TheoremError::NotOscillatory);
        }
        let (sub_u, _) = attracting_inner(&sub)?;
        let (w, _) = unipotent_cell(&sub_u, HalfSign::Minus)?;
        if w != ParabolicSet::full(block.len()).longest() {
            return Err(TheoremError::CellMismatch(
                "block conjugator not totally positive".into(),
            ));
        }
        for (a, &ra) in idx.iter().enumerate() {
            for (b, &cb) in idx.iter().enumerate() {
                *u.at_mut(ra, cb) = sub_u.at(a, b).clone();
            }
        }
    }
    let b = u.inverse()?.mul(m).mul(&u);
    Ok((u, b))
}

/// One conjugation step and its verification data.
#[derive(Debug, Clone)]
pub struct StepRecord {
    pub index: usize,
    pub b: Rat,
    /// Levi projection of the result to the `{i}`-block.
    pub levi_lhs: QMat,
    /// `t x_i(a/c) alpha_i^vee(1/c)`, the closed form the projection must equal.
    pub levi_rhs: QMat,
    pub result: QMat,
}

/// Elementary torus conjugation: for `u` in `U^+_{w,>0}` with `i` in
/// `supp(w)` and `c = alpha_i(t) < 1`, conjugating `t u` by `y_i(b)` with
/// `b = (1-c)/(c a)` (where `pi^+_{i}(u) = x_i(a)`) lands in
/// `s_i(t) U^+_{w,>0}`.
pub fn torus_conj_step(
    t: &TorusElt,
    i: usize,
    u: &QMat,
) -> Result<StepRecord, TheoremError> {
    let n = t.n();
    let pin = Pinning::new(n);
    let c = t.alpha(i);
    if c >= rat_one() {
        return Err(TheoremError::AlphaNotContracting(i));
    }
    let a = u.at(i - 1, i).clone();
    if !a.is_positive() {
        return Err(TheoremError::OutsideSupport(i));
    }
    let b = (rat_one() - &c) / (&c * &a);
    let y_pos = pin.gen(i, &b, HalfSign::Minus)?;
    let y_neg = pin.gen(i, &-b.clone(), HalfSign::Minus)?;
    let result = y_neg.mul(&t.to_matrix()).mul(u).mul(&y_pos);

    // Projection identity from the proof:
    // pi^+_{i}(y_i(-b) t u y_i(b)) = t x_i(a/c) alpha_i^vee(1/c).
    let j_small = ParabolicSet::new(n, [i]);
    let levi_lhs = levi_project(&GroupElt::from_invertible(result.clone()), &j_small, HalfSign::Plus)?;
    let levi_rhs = t
        .to_matrix()
        .mul(&pin.gen(i, &(&a / &c), HalfSign::Plus)?)
        .mul(&pin.coroot(i, &(rat_one() / &c))?);
    Ok(StepRecord {
        index: i,
        b,
        levi_lhs,
        levi_rhs,
        result,
    })
}

#[derive(Debug, Clone)]
pub struct TorusConjResult {
    /// `u'` with `(u')^{-1} t u u'` dominant: a `y`-word product.
    pub conjugator: QMat,
    /// The final element `t_bar * u_new`.
    pub result: QMat,
    pub t_bar: TorusElt,
    pub u_new: QMat,
    pub steps: Vec<StepRecord>,
}

/// Iterated torus conjugation: sort the torus part of `t u` into the
/// dominant representative `t_bar_J` (`J = supp(w)`) using elementary steps
/// with strictly contracting simple roots; the accumulated conjugator lies
/// in `U^-_{w_{t,J}^{-1},>0}`.
pub fn torus_conj(t: &TorusElt, u: &QMat) -> Result<TorusConjResult, TheoremError> {
    let n = t.n();
    let pin = Pinning::new(n);
    let (w, _) = unipotent_cell(u, HalfSign::Plus)?;
    let support = w.support();
    let mut cur_t = t.clone();
    let mut cur_u = u.clone();
    let mut conjugator = QMat::identity(n);
    let mut steps = Vec::new();
    loop {
        let Some(i) = support.iter().find(|&i| cur_t.alpha(i) < rat_one()) else {
            break;
        };
        let record = torus_conj_step(&cur_t, i, &cur_u)?;
        if record.levi_lhs != record.levi_rhs {
            return Err(TheoremError::CellMismatch(
                "projection identity failed".into(),
            ));
        }
        conjugator = conjugator.mul(&pin.gen(i, &record.b, HalfSign::Minus)?);
        // The result factors as s_i(t) times a point of the same cell.
        let (u_plus, t_new, u_minus) =
            gauss_utu(&GroupElt::from_invertible(record.result.clone()))?;
        if !u_minus.is_identity() {
            return Err(TheoremError::CellMismatch(
                "conjugation step left the Borel subgroup".into(),
            ));
        }
        let (w_new, _) = unipotent_cell(&u_plus, HalfSign::Plus)?;
        if w_new != w {
            return Err(TheoremError::CellMismatch(format!(
                "step changed the cell label {w:?} -> {w_new:?}"
            )));
        }
        let expected = cur_t.conjugate_by(&WeylElt::simple(n, i));
        if t_new != expected {
            return Err(TheoremError::CellMismatch(
                "step torus part is not the simple reflection".into(),
            ));
        }
        // Keep the element in left-torus form: result = t_new * cur_u.
        cur_u = t_new
            .to_matrix()
            .inverse()?
            .mul(&record.result);
        debug_assert!(cur_u.is_upper_triangular());
        cur_t = t_new;
        steps.push(record);
    }
    let (expected_t_bar, _) = torus_orbit_dominant(t, &support);
    if cur_t != expected_t_bar {
        return Err(TheoremError::CellMismatch(
            "final torus part is not the dominant representative".into(),
        ));
    }
    let result = cur_t.to_matrix().mul(&cur_u);
    Ok(TorusConjResult {
        conjugator,
        result,
        t_bar: cur_t,
        u_new: cur_u,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{rat, rat_int};
    use crate::rng::Rng;
    use crate::tnn::{realize_unipotent, sample_param};

    fn mat_i64(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn attracting_example_2x2() {
        let g = GroupElt::new(mat_i64(&[&[3, 1], &[2, 2]])).unwrap();
        let (u, b) = attracting_conjugator(&g).unwrap();
        assert_eq!(u, mat_i64(&[&[1, 0], &[1, 1]]));
        assert_eq!(b, mat_i64(&[&[4, 1], &[0, 1]]));
        let diag = b.diag();
        assert!(diag[0] > diag[1]);
    }

    #[test]
    fn attracting_rejects_non_oscillatory() {
        let g = GroupElt::new(QMat::diagonal(&[rat_int(4), rat_int(1)])).unwrap();
        assert_eq!(
            attracting_conjugator(&g),
            Err(TheoremError::NotOscillatory)
        );
    }

    #[test]
    fn attracting_rejects_irrational() {
        // [[3,1],[1,1]] is totally positive but has irrational spectrum.
        let g = GroupElt::new(mat_i64(&[&[3, 1], &[1, 1]])).unwrap();
        assert_eq!(
            attracting_conjugator(&g),
            Err(TheoremError::IrrationalSpectrum)
        );
    }

    #[test]
    fn torus_conj_step_example() {
        // t = diag(1,2), i = 1, u = x_1(1): c = 1/2, a = 1, b = 1.
        let t = TorusElt::new(vec![rat_int(1), rat_int(2)]).unwrap();
        let u = realize_unipotent(2, &[1], &[rat_int(1)], HalfSign::Plus);
        let rec = torus_conj_step(&t, 1, &u).unwrap();
        assert_eq!(rec.b, rat_int(1));
        assert_eq!(rec.result, mat_i64(&[&[2, 1], &[0, 1]]));
        assert_eq!(rec.levi_lhs, rec.levi_rhs);

        // alpha >= 1 is rejected, as is a letter outside the support.
        let t_dom = TorusElt::new(vec![rat_int(2), rat_int(1)]).unwrap();
        assert!(matches!(
            torus_conj_step(&t_dom, 1, &u),
            Err(TheoremError::AlphaNotContracting(1))
        ));
        let u_id = QMat::identity(2);
        assert!(matches!(
            torus_conj_step(&t, 1, &u_id),
            Err(TheoremError::OutsideSupport(1))
        ));
    }

    #[test]
    fn torus_conj_dominant_is_noop() {
        let t = TorusElt::new(vec![rat_int(4), rat_int(1)]).unwrap();
        let u = realize_unipotent(2, &[1], &[rat(1, 3)], HalfSign::Plus);
        let out = torus_conj(&t, &u).unwrap();
        assert!(out.conjugator.is_identity());
        assert_eq!(out.result, t.to_matrix().mul(&u));
    }

    #[test]
    fn torus_conj_single_step() {
        let t = TorusElt::new(vec![rat_int(1), rat_int(2)]).unwrap();
        let u = realize_unipotent(2, &[1], &[rat_int(1)], HalfSign::Plus);
        let out = torus_conj(&t, &u).unwrap();
        assert_eq!(out.t_bar.diag(), &[rat_int(2), rat_int(1)]);
        assert_eq!(out.conjugator, mat_i64(&[&[1, 0], &[1, 1]]));
        // (u')^{-1} t u u' = result exactly.
        let lhs = out
            .conjugator
            .inverse()
            .unwrap()
            .mul(&t.to_matrix())
            .mul(&u)
            .mul(&out.conjugator);
        assert_eq!(lhs, out.result);
    }

    #[test]
    fn torus_conj_multi_step_random() {
        let mut rng = Rng::new(2718);
        for trial in 0..40 {
            let n = 2 + (trial % 3) as usize;
            let w0 = ParabolicSet::full(n).longest();
            let word = w0.canonical_word();
            let params: Vec<Rat> = (0..word.len()).map(|_| sample_param(&mut rng)).collect();
            let u = realize_unipotent(n, &word, &params, HalfSign::Plus);
            let t = crate::tnn::sample_torus(n, &mut rng);
            let out = torus_conj(&t, &u).unwrap();
            let lhs = out
                .conjugator
                .inverse()
                .unwrap()
                .mul(&t.to_matrix())
                .mul(&u)
                .mul(&out.conjugator);
            assert_eq!(lhs, out.result);
            // Conjugator lies in U^-_{w_{t,J}^{-1},>0}.
            let (_, w_sort) = torus_orbit_dominant(&t, &w0.support());
            let (w_conj, _) = unipotent_cell(&out.conjugator, HalfSign::Minus).unwrap();
            assert_eq!(w_conj, w_sort.inverse());
        }
    }

    #[test]
    fn attracting_levi_blockwise() {
        // Block-diagonal oscillatory-within-blocks element with rational
        // spectrum per block.
        let j = ParabolicSet::new(3, [1]);
        let m = mat_i64(&[&[3, 1, 0], &[2, 2, 0], &[0, 0, 5]]);
        let (u, b) = attracting_conjugator_levi(&m, &j).unwrap();
        assert_eq!(u, mat_i64(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]));
        assert!(b.is_upper_triangular());
        assert_eq!(b.diag(), vec![rat_int(4), rat_int(1), rat_int(5)]);
    }

    use crate::coxeter::ParabolicSet;

    #[test]
    fn attracting_random_rational_spectrum_samples() {
        // Build oscillatory elements with known rational spectrum as
        // u (t u') u^{-1} and check the lemma's conclusions exactly.
        let mut rng = Rng::new(424242);
        let mut found = 0;
        let mut attempts = 0;
        while found < 12 && attempts < 4000 {
            attempts += 1;
            let n = 2 + (attempts % 3);
            match crate::theorems::witness::sample_oscillatory_rational(n, &mut rng) {
                Some(g) => {
                    found += 1;
                    let (u, b) = attracting_conjugator(&g).unwrap();
                    assert!(b.is_upper_triangular());
                    let diag = b.diag();
                    for i in 0..n - 1 {
                        assert!(diag[i] > diag[i + 1], "alpha_i(t) > 1 fails");
                    }
                    let back = u.mul(&b).mul(&u.inverse().unwrap());
                    assert_eq!(&back, g.mat());
                }
                None => continue,
            }
        }
        assert!(found >= 12, "sampler found only {found} oscillatory elements");
    }
}
