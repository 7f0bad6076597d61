//! Seeded random cell points. Parameters and torus entries are quotients
//! `p/q` with `p, q` uniform in `[1, 20]`; small heights keep the exact
//! arithmetic downstream cheap.

use super::{CellPoint, TorusElt};
use crate::coxeter::WeylElt;
use crate::ratlin::{rat, Rat};
use crate::rng::Rng;

pub fn sample_param(rng: &mut Rng) -> Rat {
    rat(rng.range(1, 20) as i64, rng.range(1, 20) as i64)
}

pub fn sample_weyl(n: usize, rng: &mut Rng) -> WeylElt {
    let mut images: Vec<usize> = (1..=n).collect();
    rng.shuffle(&mut images);
    WeylElt::from_images(images).expect("shuffle is a permutation")
}

pub fn sample_torus(n: usize, rng: &mut Rng) -> TorusElt {
    TorusElt::new((0..n).map(|_| sample_param(rng)).collect()).expect("positive entries")
}

/// Random point of a random cell.
pub fn sample_cell_point(n: usize, rng: &mut Rng) -> CellPoint {
    let w1 = sample_weyl(n, rng);
    let w2 = sample_weyl(n, rng);
    sample_cell_point_for(&w1, &w2, rng)
}

/// Random point of the cell `G_{w1,w2,>0}`, with canonical words.
pub fn sample_cell_point_for(w1: &WeylElt, w2: &WeylElt, rng: &mut Rng) -> CellPoint {
    let n = w1.n();
    assert_eq!(n, w2.n());
    let word1 = w1.canonical_word();
    let word2 = w2.canonical_word();
    let params1 = (0..word1.len()).map(|_| sample_param(rng)).collect();
    let params2 = (0..word2.len()).map(|_| sample_param(rng)).collect();
    CellPoint::new(word1, params1, sample_torus(n, rng), word2, params2)
        .expect("sampled data satisfies the invariants")
}

/// Random totally positive point (the big cell, full support on both sides).
pub fn sample_tp_point(n: usize, rng: &mut Rng) -> CellPoint {
    let w0 = crate::coxeter::ParabolicSet::full(n).longest();
    sample_cell_point_for(&w0, &w0, rng)
}

/// Random point of `T_{>0} U^+_{>0}` (full upper cell, no lower part). When
/// `force_repeats` is set, the torus entries are drawn from a small pool so
/// repeated diagonal values actually occur.
pub fn sample_upper_point(n: usize, rng: &mut Rng, force_repeats: bool) -> CellPoint {
    let w0 = crate::coxeter::ParabolicSet::full(n).longest();
    let word1 = w0.canonical_word();
    let params1 = (0..word1.len()).map(|_| sample_param(rng)).collect();
    let t = if force_repeats {
        let pool = [rat(1, 2), rat(1, 1), rat(2, 1), rat(3, 1)];
        TorusElt::new(
            (0..n)
                .map(|_| pool[rng.below(pool.len() as u64) as usize].clone())
                .collect(),
        )
        .expect("positive entries")
    } else {
        sample_torus(n, rng)
    };
    CellPoint::new(word1, params1, t, vec![], vec![]).expect("valid upper point")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_under_seed() {
        let mut a = Rng::new(5);
        let mut b = Rng::new(5);
        assert_eq!(sample_cell_point(4, &mut a), sample_cell_point(4, &mut b));
    }

    #[test]
    fn words_are_canonical() {
        let mut rng = Rng::new(11);
        for _ in 0..20 {
            let p = sample_cell_point(4, &mut rng);
            assert_eq!(p.w1().canonical_word(), p.word1);
            assert_eq!(p.w2().canonical_word(), p.word2);
        }
    }
}
