//! Fundamental wedge representations of `GL_n`: the `k`-th exterior power
//! with its subset-indexed basis (the canonical basis in the minuscule
//! case), compound matrices, Levi submodules generated by the extreme
//! weight vectors, and top generalized eigenspaces.

use crate::coxeter::ParabolicSet;
use crate::ratlin::{rational_spectrum, QMat, Rat, SpectrumError};
use num_traits::One;
use std::collections::BTreeSet;

/// Basis bookkeeping for the `k`-th wedge power of the standard module.
#[derive(Debug, Clone)]
pub struct WedgeSpace {
    pub n: usize,
    pub k: usize,
    /// `k`-element subsets of `{1..n}` in lexicographic order.
    pub basis: Vec<Vec<usize>>,
}

impl WedgeSpace {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n);
        let mut basis = Vec::new();
        let mut current: Vec<usize> = (1..=k).collect();
        loop {
            basis.push(current.clone());
            // next k-subset in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| current[i] < n - (k - 1 - i)) else {
                break;
            };
            current[i] += 1;
            for j in i + 1..k {
                current[j] = current[j - 1] + 1;
            }
        }
        WedgeSpace { n, k, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, subset: &[usize]) -> usize {
        self.basis
            .iter()
            .position(|s| s == subset)
            .expect("subset belongs to the basis")
    }
}

/// The `k`-th compound matrix: entry `(S, T)` is the `(S, T)`-minor of `g`.
/// Multiplicative by the Cauchy-Binet identity, so this is the matrix of
/// `g` acting on the `k`-th wedge power in the subset basis.
pub fn compound(g: &QMat, k: usize) -> QMat {
    assert!(g.is_square());
    let n = g.rows();
    let space = WedgeSpace::new(n, k);
    let d = space.dim();
    QMat::from_fn(d, d, |r, c| {
        let rows: Vec<usize> = space.basis[r].iter().map(|&p| p - 1).collect();
        let cols: Vec<usize> = space.basis[c].iter().map(|&p| p - 1).collect();
        g.submatrix(&rows, &cols).det().expect("square minor")
    })
}

/// Orientation for the generating extreme-weight vector of a Levi
/// submodule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightEnd {
    Highest,
    Lowest,
}

/// Basis subsets of the `L_J`-submodule of the `k`-th wedge power generated
/// by the extreme weight vector: closure of `{1..k}` under the lowering
/// moves `i -> i+1` (`i` in `J`), or of `{n-k+1..n}` under the raising
/// moves. Returned in lexicographic order.
pub fn levi_submodule(j: &ParabolicSet, k: usize, end: WeightEnd) -> Vec<Vec<usize>> {
    let n = j.n();
    let start: BTreeSet<usize> = match end {
        WeightEnd::Highest => (1..=k).collect(),
        WeightEnd::Lowest => (n - k + 1..=n).collect(),
    };
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for i in j.iter() {
            let moved = match end {
                WeightEnd::Highest => (s.contains(&i) && !s.contains(&(i + 1))).then(|| {
                    let mut t = s.clone();
                    t.remove(&i);
                    t.insert(i + 1);
                    t
                }),
                WeightEnd::Lowest => (s.contains(&(i + 1)) && !s.contains(&i)).then(|| {
                    let mut t = s.clone();
                    t.remove(&(i + 1));
                    t.insert(i);
                    t
                }),
            };
            if let Some(t) = moved {
                stack.push(t);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();
    out.sort();
    out
}

/// Top generalized eigenspace of `g` on the `k`-th wedge power: requires a
/// fully rational positive spectrum. Returns the eigenvalue `c_M` (product
/// of the `k` largest eigenvalues with multiplicity) and an exact basis of
/// `ker (compound(g,k) - c_M)^dim`.
pub fn top_generalized_eigenspace(
    g: &QMat,
    k: usize,
) -> Result<(Rat, Vec<Vec<Rat>>), SpectrumError> {
    let spectrum = rational_spectrum(&g.charpoly().expect("square"))?;
    let mut eigen: Vec<Rat> = Vec::new();
    for (lambda, mult) in &spectrum {
        for _ in 0..*mult {
            eigen.push(lambda.clone());
        }
    }
    // rational_spectrum returns strictly decreasing order
    let c_m: Rat = eigen[..k].iter().fold(Rat::one(), |acc, x| acc * x);
    let c = compound(g, k);
    let d = c.rows();
    let mut shifted = c;
    for i in 0..d {
        *shifted.at_mut(i, i) -= &c_m;
    }
    let power = shifted.pow(d as u32);
    Ok((c_m, power.kernel_basis()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{rat_int, rat_one};
    use crate::rng::Rng;
    use crate::tnn::{realize, sample_cell_point};
    use num_traits::Zero;

    fn mat_i64(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn wedge_basis_lex() {
        let w = WedgeSpace::new(4, 2);
        assert_eq!(w.dim(), 6);
        assert_eq!(
            w.basis,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
    }

    #[test]
    fn compound_examples() {
        assert!(compound(&QMat::identity(3), 2).is_identity());
        let c = compound(&mat_i64(&[&[3, 1], &[1, 1]]), 2);
        assert_eq!(c.rows(), 1);
        assert_eq!(c.at(0, 0), &rat_int(2));
    }

    #[test]
    fn cauchy_binet_multiplicative() {
        let mut rng = Rng::new(515);
        for trial in 0..25 {
            let n = 2 + (trial % 4) as usize;
            let a = realize(&sample_cell_point(n, &mut rng)).into_mat();
            let b = realize(&sample_cell_point(n, &mut rng)).into_mat();
            for k in 1..=n {
                assert_eq!(
                    compound(&a.mul(&b), k),
                    compound(&a, k).mul(&compound(&b, k)),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn compound_nonneg_on_tnn() {
        use num_traits::Signed;
        let mut rng = Rng::new(616);
        for trial in 0..20 {
            let n = 2 + (trial % 4) as usize;
            let g = realize(&sample_cell_point(n, &mut rng)).into_mat();
            for k in 1..=n {
                let c = compound(&g, k);
                for r in 0..c.rows() {
                    for cc in 0..c.cols() {
                        assert!(!c.at(r, cc).is_negative());
                    }
                }
            }
        }
    }

    #[test]
    fn levi_submodule_examples() {
        let j = ParabolicSet::new(3, [1]);
        assert_eq!(
            levi_submodule(&j, 1, WeightEnd::Highest),
            vec![vec![1], vec![2]]
        );
        assert_eq!(levi_submodule(&j, 2, WeightEnd::Highest), vec![vec![1, 2]]);
        assert_eq!(
            levi_submodule(&ParabolicSet::empty(3), 2, WeightEnd::Highest),
            vec![vec![1, 2]]
        );
        // Lowest-weight mirror.
        assert_eq!(
            levi_submodule(&j, 1, WeightEnd::Lowest),
            vec![vec![3]]
        );
        assert_eq!(
            levi_submodule(&j, 2, WeightEnd::Lowest),
            vec![vec![1, 3], vec![2, 3]]
        );
        // Full J recovers the whole wedge.
        assert_eq!(
            levi_submodule(&ParabolicSet::full(4), 2, WeightEnd::Highest).len(),
            6
        );
    }

    #[test]
    fn top_eigenspace_examples() {
        let g = QMat::diagonal(&[rat_int(4), rat_int(2), rat_int(1)]);
        let (c_m, basis) = top_generalized_eigenspace(&g, 1).unwrap();
        assert_eq!(c_m, rat_int(4));
        assert_eq!(basis, vec![vec![rat_one(), rat_int(0), rat_int(0)]]);

        let g = mat_i64(&[&[4, 1], &[0, 1]]);
        let (c_m, basis) = top_generalized_eigenspace(&g, 1).unwrap();
        assert_eq!(c_m, rat_int(4));
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![rat_one(), rat_int(0)]);

        let g = QMat::diagonal(&[rat_int(2), rat_int(2), rat_int(1)]);
        let (c_m, basis) = top_generalized_eigenspace(&g, 2).unwrap();
        assert_eq!(c_m, rat_int(4));
        assert_eq!(basis.len(), 1);
        // spanned by e_{12}
        assert_eq!(basis[0][0], rat_one());
        assert!(basis[0][1].is_zero() && basis[0][2].is_zero());
    }
}
