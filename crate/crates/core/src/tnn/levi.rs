//! Levi projections, torus-orbit normalization, and oscillatory powers.

use super::minors::is_tp;
use super::{GroupElt, TnnError, TorusElt};
use crate::coxeter::{ParabolicSet, WeylElt};
use crate::ratlin::QMat;
use num_traits::Zero;

/// Block index of each position `1..=n` under the `J`-block partition.
fn block_of(j: &ParabolicSet) -> Vec<usize> {
    let mut out = vec![0; j.n() + 1];
    for (b, block) in j.blocks().iter().enumerate() {
        for &p in block {
            out[p] = b;
        }
    }
    out
}

/// Projection `P^{+-}_J -> L_J` killing the unipotent radical: requires the
/// matrix to be block triangular of the right sign and returns its block
/// diagonal. On generators this is `x_i(a) -> x_i(a)` for `i` in `J` and
/// `x_i(a) -> 1` otherwise (and the mirror for `y`), and it restricts to the
/// identity on the torus.
pub fn levi_project(g: &GroupElt, j: &ParabolicSet, sign: super::HalfSign) -> Result<QMat, TnnError> {
    let n = g.n();
    assert_eq!(n, j.n());
    let blocks = block_of(j);
    let m = g.mat();
    for r in 0..n {
        for c in 0..n {
            let crossing_zero = match sign {
                super::HalfSign::Plus => blocks[r + 1] > blocks[c + 1],
                super::HalfSign::Minus => blocks[r + 1] < blocks[c + 1],
            };
            if crossing_zero && !m.at(r, c).is_zero() {
                return Err(TnnError::NotInParabolic);
            }
        }
    }
    let mut out = QMat::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            if blocks[r + 1] == blocks[c + 1] {
                *out.at_mut(r, c) = m.at(r, c).clone();
            }
        }
    }
    Ok(out)
}

/// Least `m <= m_max` with `g^m` totally positive.
pub fn oscillatory_order(g: &GroupElt, m_max: usize) -> Option<usize> {
    let mut power = QMat::identity(g.n());
    for m in 1..=m_max {
        power = power.mul(g.mat());
        if is_tp(&power) {
            return Some(m);
        }
    }
    None
}

/// The unique `W_J`-orbit representative `t_bar` of `t` with
/// `alpha_i(t_bar) >= 1` for all `i` in `J` (blockwise weakly decreasing),
/// together with the minimal-length `w` in its double coset with
/// `t_bar = w t w^{-1}` (the stable blockwise sort).
pub fn torus_orbit_dominant(t: &TorusElt, j: &ParabolicSet) -> (TorusElt, WeylElt) {
    let n = t.n();
    assert_eq!(n, j.n());
    let mut images = vec![0usize; n];
    for block in j.blocks() {
        // Stable sort by decreasing value; ties keep original order.
        let mut order: Vec<usize> = block.clone();
        order.sort_by(|&a, &b| {
            t.entry(b)
                .cmp(t.entry(a))
                .then_with(|| a.cmp(&b))
        });
        // order[k] = source position whose value lands at block[k]
        for (k, &src) in order.iter().enumerate() {
            images[src - 1] = block[k];
        }
    }
    let w = WeylElt::from_images(images).expect("blockwise permutation");
    (t.conjugate_by(&w), w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{rat, rat_int};
    use crate::tnn::{HalfSign, Pinning};

    #[test]
    fn levi_projection_generator_cases() {
        let pin = Pinning::new(3);
        let j = ParabolicSet::new(3, [1]);
        // x_2(5) projects to the identity (letter outside J).
        let g = GroupElt::from_invertible(pin.gen(2, &rat_int(5), HalfSign::Plus).unwrap());
        assert!(levi_project(&g, &j, HalfSign::Plus).unwrap().is_identity());
        // x_1(a) is kept (letter inside J).
        let x1 = pin.gen(1, &rat(2, 3), HalfSign::Plus).unwrap();
        let g = GroupElt::from_invertible(x1.clone());
        assert_eq!(levi_project(&g, &j, HalfSign::Plus).unwrap(), x1);
        // Torus elements are fixed.
        let t = QMat::diagonal(&[rat_int(2), rat_int(3), rat_int(5)]);
        let g = GroupElt::from_invertible(t.clone());
        assert_eq!(levi_project(&g, &j, HalfSign::Plus).unwrap(), t);
        assert_eq!(levi_project(&g, &j, HalfSign::Minus).unwrap(), t);
        // y_1(a) is not in P^+_{J} for J = {2}.
        let j2 = ParabolicSet::new(3, [2]);
        let y1 = GroupElt::from_invertible(pin.gen(1, &rat_int(1), HalfSign::Minus).unwrap());
        assert_eq!(
            levi_project(&y1, &j2, HalfSign::Plus),
            Err(TnnError::NotInParabolic)
        );
    }

    #[test]
    fn oscillatory_examples() {
        let m = QMat::from_rows(vec![
            vec![rat_int(3), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ]);
        assert_eq!(oscillatory_order(&GroupElt::from_invertible(m), 5), Some(1));

        let pin = Pinning::new(2);
        let x = pin.gen(1, &rat_int(1), HalfSign::Plus).unwrap();
        assert_eq!(oscillatory_order(&GroupElt::from_invertible(x), 10), None);

        // x_1(1) y_2(1) in GL_3: disjoint supports, unipotent, never TP.
        let pin3 = Pinning::new(3);
        let g = pin3
            .gen(1, &rat_int(1), HalfSign::Plus)
            .unwrap()
            .mul(&pin3.gen(2, &rat_int(1), HalfSign::Minus).unwrap());
        assert_eq!(oscillatory_order(&GroupElt::from_invertible(g), 10), None);

        // A totally positive power shows up for full-support products.
        let g = pin3
            .gen(1, &rat_int(1), HalfSign::Plus)
            .unwrap()
            .mul(&pin3.gen(2, &rat_int(1), HalfSign::Plus).unwrap())
            .mul(&pin3.gen(1, &rat_int(1), HalfSign::Minus).unwrap())
            .mul(&pin3.gen(2, &rat_int(1), HalfSign::Minus).unwrap());
        assert!(oscillatory_order(&GroupElt::from_invertible(g), 10).is_some());
    }

    #[test]
    fn torus_orbit_examples() {
        let t = TorusElt::new(vec![rat_int(1), rat_int(2)]).unwrap();
        let (tb, w) = torus_orbit_dominant(&t, &ParabolicSet::new(2, [1]));
        assert_eq!(tb.diag(), &[rat_int(2), rat_int(1)]);
        assert_eq!(w, WeylElt::simple(2, 1));

        let t = TorusElt::new(vec![rat_int(4), rat_int(2), rat_int(1)]).unwrap();
        let (tb, w) = torus_orbit_dominant(&t, &ParabolicSet::full(3));
        assert_eq!(tb, t);
        assert!(w.is_identity());

        let t = TorusElt::new(vec![rat_int(2), rat_int(1), rat_int(2)]).unwrap();
        let (tb, w) = torus_orbit_dominant(&t, &ParabolicSet::new(3, [2]));
        assert_eq!(tb.diag(), &[rat_int(2), rat_int(2), rat_int(1)]);
        assert_eq!(w, WeylElt::simple(3, 2));
    }

    #[test]
    fn torus_orbit_minimality_brute_force() {
        // The stable sort is the minimal-length element of W_J conjugating t
        // to its dominant representative, within its double coset.
        let vals = [rat_int(2), rat_int(1), rat_int(2), rat_int(1)];
        let t = TorusElt::new(vals.to_vec()).unwrap();
        for j in ParabolicSet::all_subsets(4) {
            let (tb, w) = torus_orbit_dominant(&t, &j);
            assert!(w.support().is_subset(&j));
            assert_eq!(t.conjugate_by(&w), tb);
            for i in j.iter() {
                assert!(tb.alpha(i) >= rat_int(1));
            }
            let min_len = WeylElt::all(4)
                .into_iter()
                .filter(|v| v.support().is_subset(&j) && t.conjugate_by(v) == tb)
                .map(|v| v.length())
                .min()
                .unwrap();
            assert_eq!(w.length(), min_len, "stable sort not minimal for {j:?}");
        }
    }
}
