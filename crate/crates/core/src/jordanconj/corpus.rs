//! Corpus construction for the conjecture checks: elements with rational
//! semisimple spectrum by design, built as conjugates of dominant rational
//! torus-times-unipotent normal forms and screened exactly for membership
//! in the target cell.

use crate::coxeter::WeylElt;
use crate::ratlin::{rat, rat_int, rat_one, Rat};
use crate::rng::Rng;
use crate::tnn::{
    factor_cell, is_tnn, realize, realize_unipotent, sample_param, CellPoint, GroupElt, HalfSign,
    TorusElt,
};

/// Sample a point of the cell `G_{w1,w2,>0}` (with `supp(w2) c= supp(w1)`
/// expected by the caller) whose semisimple part has rational spectrum:
/// `g = v (t u) v^{-1}` for a dominant rational `t` (spectrum of `g`), a
/// positive `u` along `w1`, and a small positive lower conjugate along
/// `w2`. Conjugation can leave the cell, so candidates are screened via
/// exact factorization; `None` when no candidate lands after the attempts.
pub fn sample_cell_with_rational_jordan(
    w1: &WeylElt,
    w2: &WeylElt,
    rng: &mut Rng,
    attempts: usize,
) -> Option<GroupElt> {
    let n = w1.n();
    let word1 = w1.canonical_word();
    let word2 = w2.canonical_word();
    let sup1 = w1.support();
    let sup2 = w2.support();
    for attempt in 0..attempts {
        let escalation = 1 + (attempt / 4) as u32;
        let base = rat_int(1i64 << (2 * escalation)); // 4, 16, 64, ...
        // Simple-root targets of the spectrum torus: strictly dominant on
        // supp(w2); off it, mix 1's in to create nontrivial Levi blocks
        // (hence nontrivial unipotent Jordan parts).
        let mut diag = vec![rat_one(); n];
        for i in (1..n).rev() {
            let target = if sup2.contains(i) {
                base.clone()
            } else if sup1.contains(i) && rng.bool() {
                rat_one()
            } else if rng.bool() {
                rat_one()
            } else {
                base.clone()
            };
            diag[i - 1] = target * &diag[i];
        }
        let t = TorusElt::new(diag).expect("positive");
        let scale = rat(1, 1i64 << (2 * escalation + 2));
        let params1: Vec<Rat> = (0..word1.len()).map(|_| sample_param(rng)).collect();
        let params2: Vec<Rat> = (0..word2.len())
            .map(|_| sample_param(rng) * &scale)
            .collect();
        let upper = t
            .to_matrix()
            .mul(&realize_unipotent(n, &word1, &params1, HalfSign::Plus));
        let v = realize_unipotent(n, &word2, &params2, HalfSign::Minus);
        let g = v.mul(&upper).mul(&v.inverse().expect("unipotent"));
        if !is_tnn(&g) {
            continue;
        }
        let g = GroupElt::from_invertible(g);
        if let Ok(cp) = factor_cell(&g) {
            if cp.word1 == word1 && cp.word2 == word2 {
                return Some(g);
            }
        }
    }
    None
}

/// Conjugate family `g(theta) = v (t u(theta)) v^{-1}` with frozen lower
/// conjugator and torus: every matrix entry is affine in each single
/// parameter (a rank-one update per generator), so each minor is affine in
/// each parameter and the first boundary of the nonnegative region along a
/// parameter line is an exactly computable rational critical value.
struct ConjugateFamily {
    n: usize,
    vword: Vec<usize>,
    vparams: Vec<Rat>,
    uword: Vec<usize>,
}

impl ConjugateFamily {
    /// Dials: `n` torus entries followed by the upper-word parameters.
    fn realize(&self, dials: &[Rat]) -> crate::ratlin::QMat {
        let n = self.n;
        let u = realize_unipotent(n, &self.vword, &self.vparams, HalfSign::Minus);
        let t = crate::ratlin::QMat::diagonal(&dials[..n]);
        let b = t.mul(&realize_unipotent(n, &self.uword, &dials[n..], HalfSign::Plus));
        u.mul(&b).mul(&u.inverse().expect("unipotent"))
    }

    /// Nearest parameter values (one below, one above the current value)
    /// at which some minor of the family vanishes: the TNN stratum
    /// boundaries along the `k`-th parameter line.
    fn critical_values(&self, dials: &[Rat], k: usize) -> (Option<Rat>, Option<Rat>) {
        use num_traits::{Signed, Zero};
        let uparams = dials;
        let mut at0 = uparams.to_vec();
        at0[k] = crate::ratlin::rat_zero();
        let mut at1 = uparams.to_vec();
        at1[k] = rat_one();
        let table0 = crate::tnn::minor_table(&self.realize(&at0));
        let table1 = crate::tnn::minor_table(&self.realize(&at1));
        let mut below: Option<Rat> = None;
        let mut above: Option<Rat> = None;
        for (key, a) in &table0 {
            let b = &table1[key] - a;
            if b.is_zero() {
                continue;
            }
            let root = -a / b;
            if !root.is_positive() {
                continue;
            }
            if root < uparams[k] {
                if below.as_ref().map_or(true, |x| root > *x) {
                    below = Some(root);
                }
            } else if root > uparams[k] && above.as_ref().map_or(true, |x| root < *x) {
                above = Some(root);
            }
        }
        (below, above)
    }
}

/// Reach a cell whose lower label is not the longest element of its support
/// by sliding one parameter at a time to an exact stratum boundary. The
/// spectrum stays the (rational) torus of the family throughout. Greedy
/// depth-first over slide sequences with a node budget, pruned to states
/// that keep the upper label and stay above the target length.
fn slide_search(
    family: &ConjugateFamily,
    start: Vec<Rat>,
    word1: &[usize],
    word2: &[usize],
    rng: &mut Rng,
) -> Option<GroupElt> {
    let mut stack = vec![start];
    let mut budget = 120usize;
    while let Some(params) = stack.pop() {
        if budget == 0 {
            return None;
        }
        let mut order: Vec<usize> = (0..params.len()).collect();
        rng.shuffle(&mut order);
        for &k in &order {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let (below, above) = family.critical_values(&params, k);
            for cand in [below, above].into_iter().flatten() {
                let mut slid = params.clone();
                slid[k] = cand;
                // A successful factorization certifies total nonnegativity:
                // the three factors are TNN, hence so is their product.
                let g = GroupElt::from_invertible(family.realize(&slid));
                let Ok(cp) = factor_cell(&g) else { continue };
                if cp.word1 != word1 {
                    continue;
                }
                if cp.word2 == word2 {
                    return Some(g);
                }
                if cp.word2.len() > word2.len() {
                    stack.push(slid);
                }
            }
        }
    }
    None
}

/// Corpus element in a cell whose lower label is a strict prefix of the
/// longest element of its support: start from the dominant-conjugate family
/// (which lands in `(w1, w_{J2})`) and walk the exact stratum boundaries
/// down to the target label.
fn sample_lowered_cell(w1: &WeylElt, w2: &WeylElt, rng: &mut Rng, attempts: usize) -> Option<GroupElt> {
    let n = w1.n();
    let word1 = w1.canonical_word();
    let word2 = w2.canonical_word();
    let j2 = w2.support();
    let w_long = j2.longest();
    let long_word = w_long.canonical_word();
    for attempt in 0..attempts {
        let escalation = 1 + (attempt / 6) as u32;
        let base = rat_int(1i64 << (2 * escalation));
        let mut diag = vec![rat_one(); n];
        for i in (1..n).rev() {
            diag[i - 1] = &base * &diag[i];
        }
        let scale = rat(1, 1i64 << (2 * escalation + 2));
        let family = ConjugateFamily {
            n,
            vword: long_word.clone(),
            vparams: (0..long_word.len())
                .map(|_| sample_param(rng) * &scale)
                .collect(),
            uword: word1.clone(),
        };
        let mut start: Vec<Rat> = diag;
        start.extend((0..word1.len()).map(|_| sample_param(rng)));
        let g0 = GroupElt::from_invertible(family.realize(&start));
        let Ok(cp0) = factor_cell(&g0) else {
            continue;
        };
        if cp0.word1 != word1 {
            continue;
        }
        if cp0.word2 == word2 {
            return Some(g0);
        }
        if let Some(g) = slide_search(&family, start, &word1, &word2, rng) {
            return Some(g);
        }
    }
    None
}

/// Corpus element for any cell with `supp(w2) c= supp(w1)`: the dominant
/// conjugate sampler when `w2` is the longest element of its support, the
/// boundary-slide walk otherwise.
pub fn sample_prop_cell_element(
    w1: &WeylElt,
    w2: &WeylElt,
    rng: &mut Rng,
    attempts: usize,
) -> Option<GroupElt> {
    if *w2 == w2.support().longest() {
        sample_cell_with_rational_jordan(w1, w2, rng, attempts)
    } else {
        sample_lowered_cell(w1, w2, rng, attempts)
    }
}

/// The torus shapes of the `GL_3` mixed-cell case grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaCase {
    /// `alpha_i(t) != 1`, `alpha_j(t) != 1`, all eigenvalues distinct.
    BothNontrivial,
    /// `alpha_i(t) != 1 != alpha_j(t)` but `t_1 = t_3` (repeated eigenvalue).
    Collision,
    /// `alpha(t) = 1` on the `U^+` letter only.
    FirstTrivial,
    /// `alpha(t) = 1` on the `U^-` letter only.
    SecondTrivial,
    /// Scalar torus.
    BothTrivial,
}

pub const ALPHA_CASES: [AlphaCase; 5] = [
    AlphaCase::BothNontrivial,
    AlphaCase::Collision,
    AlphaCase::FirstTrivial,
    AlphaCase::SecondTrivial,
    AlphaCase::BothTrivial,
];

/// A random point of the mixed `GL_3` cell `G_{s_i, s_j, >0}` with the
/// torus in the prescribed alpha-case. Spectra are rational automatically
/// (the cell's matrices are block triangular both ways).
pub fn sample_mixed_gl3(i: usize, case: AlphaCase, rng: &mut Rng) -> CellPoint {
    assert!(i == 1 || i == 2);
    let j = 3 - i;
    let mut distinct = || -> (Rat, Rat) {
        loop {
            let x = sample_param(rng);
            let y = sample_param(rng);
            if x != y {
                return (x, y);
            }
        }
    };
    // diag entries by position; alpha_i concerns positions (i, i+1).
    let diag = match case {
        AlphaCase::BothTrivial => {
            let c = sample_param(rng);
            vec![c.clone(), c.clone(), c]
        }
        AlphaCase::FirstTrivial => {
            // positions i, i+1 equal; third distinct.
            let (c, d) = distinct();
            if i == 1 {
                vec![c.clone(), c, d]
            } else {
                vec![d, c.clone(), c]
            }
        }
        AlphaCase::SecondTrivial => {
            let (c, d) = distinct();
            if j == 1 {
                vec![c.clone(), c, d]
            } else {
                vec![d, c.clone(), c]
            }
        }
        AlphaCase::Collision => {
            let (c, d) = distinct();
            vec![c.clone(), d, c]
        }
        AlphaCase::BothNontrivial => loop {
            let x = sample_param(rng);
            let y = sample_param(rng);
            let z = sample_param(rng);
            if x != y && y != z && x != z {
                break vec![x, y, z];
            }
        },
    };
    CellPoint::new(
        vec![i],
        vec![sample_param(rng)],
        TorusElt::new(diag).expect("positive"),
        vec![j],
        vec![sample_param(rng)],
    )
    .expect("valid mixed cell point")
}

/// Corpus element for the mixed grid, realized.
pub fn realize_mixed_gl3(i: usize, case: AlphaCase, rng: &mut Rng) -> GroupElt {
    realize(&sample_mixed_gl3(i, case, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rational_spectrum;

    #[test]
    fn mixed_cells_have_rational_spectrum() {
        let mut rng = Rng::new(808);
        for case in ALPHA_CASES {
            for i in [1, 2] {
                let g = realize_mixed_gl3(i, case, &mut rng);
                assert!(rational_spectrum(&g.mat().charpoly().unwrap()).is_ok());
            }
        }
    }

    #[test]
    fn corpus_lands_in_target_cells() {
        let mut rng = Rng::new(909);
        let n = 3;
        let w_full = crate::coxeter::ParabolicSet::full(n).longest();
        let w_s1 = WeylElt::simple(n, 1);
        // (w0, s1): supp(w2) strictly inside supp(w1).
        let g = sample_cell_with_rational_jordan(&w_full, &w_s1, &mut rng, 40)
            .expect("corpus sampler should land");
        let cp = factor_cell(&g).unwrap();
        assert_eq!(cp.word1, w_full.canonical_word());
        assert_eq!(cp.word2, vec![1]);
        let spec = rational_spectrum(&g.mat().charpoly().unwrap());
        assert!(spec.is_ok());
    }
}
