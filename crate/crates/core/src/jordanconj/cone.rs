//! Finitely generated rational cones: canonical extreme rays via double
//! description, membership by exact Phase-I simplex, and equality by mutual
//! containment.

use crate::ratlin::{rat_one, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Scale a nonzero rational vector to primitive integer form with positive
/// first nonzero entry removed... rays of the cones handled here are sign-
/// canonical already (first nonzero stays as produced); only the scale is
/// normalized.
fn normalize_ray(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &gcd))
        .collect()
}

/// Feasibility of `G lambda = target, lambda >= 0` by Phase-I simplex with
/// Bland's rule, exact over the rationals.
fn conic_combination_exists(generators: &[Vec<Rat>], target: &[Rat]) -> bool {
    let d = target.len();
    let m = generators.len();
    if target.iter().all(|x| x.is_zero()) {
        return true;
    }
    if m == 0 {
        return false;
    }
    // Tableau rows: d equations; columns: m lambdas + d artificials + rhs.
    let cols = m + d + 1;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(d);
    for r in 0..d {
        let mut row = vec![Rat::zero(); cols];
        let flip = target[r].is_negative();
        for (j, g) in generators.iter().enumerate() {
            row[j] = if flip { -g[r].clone() } else { g[r].clone() };
        }
        row[m + r] = rat_one();
        row[cols - 1] = target[r].abs();
        tab.push(row);
    }
    let mut basis: Vec<usize> = (m..m + d).collect();
    loop {
        // Reduced cost of column j for min sum(artificials):
        // c_j - sum over rows of (c_basis * row): artificials cost 1.
        let mut entering = None;
        for j in 0..m + d {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = if j >= m { rat_one() } else { Rat::zero() };
            for (r, &b) in basis.iter().enumerate() {
                if b >= m {
                    reduced -= &tab[r][j];
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(j) = entering else {
            // Optimal: feasible iff no artificial remains at positive level.
            return basis
                .iter()
                .enumerate()
                .all(|(r, &b)| b < m || tab[r][cols - 1].is_zero());
        };
        // Ratio test (Bland ties by smallest basis index).
        let mut leave: Option<(usize, Rat)> = None;
        for r in 0..d {
            if tab[r][j].is_positive() {
                let ratio = &tab[r][cols - 1] / &tab[r][j];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded phase-I cannot happen (objective bounded below by 0),
            // but treat defensively as infeasible.
            return false;
        };
        // Pivot on (r, j).
        let pivot = tab[r][j].clone();
        for x in tab[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for rr in 0..d {
            if rr == r || tab[rr][j].is_zero() {
                continue;
            }
            let factor = tab[rr][j].clone();
            for c in 0..cols {
                let delta = &factor * &tab[r][c];
                tab[rr][c] -= delta;
            }
        }
        basis[r] = j;
    }
}

/// Finitely generated rational cone, stored by canonical extreme rays
/// (primitive integer vectors, sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub dim: usize,
    pub rays: Vec<Vec<Rat>>,
}

impl Cone {
    /// Build from generators: drops zero vectors, normalizes, dedupes, and
    /// removes rays lying in the cone of the others.
    pub fn from_generators(dim: usize, generators: Vec<Vec<Rat>>) -> Cone {
        let mut rays: Vec<Vec<Rat>> = Vec::new();
        for g in generators {
            assert_eq!(g.len(), dim);
            if g.iter().all(|x| x.is_zero()) {
                continue;
            }
            let g = normalize_ray(&g);
            if !rays.contains(&g) {
                rays.push(g);
            }
        }
        // Redundancy sweep.
        let mut keep: Vec<Vec<Rat>> = rays.clone();
        let mut i = 0;
        while i < keep.len() {
            let candidate = keep[i].clone();
            let others: Vec<Vec<Rat>> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if conic_combination_exists(&others, &candidate) {
                keep.remove(i);
            } else {
                i += 1;
            }
        }
        keep.sort();
        Cone { dim, rays: keep }
    }

    pub fn zero(dim: usize) -> Cone {
        Cone { dim, rays: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        conic_combination_exists(&self.rays, v)
    }

    /// Equality by mutual generator containment (exact LP both ways).
    pub fn equals(&self, other: &Cone) -> bool {
        self.dim == other.dim
            && self.rays.iter().all(|r| other.contains(r))
            && other.rays.iter().all(|r| self.contains(r))
    }

    pub fn negated(&self) -> Cone {
        Cone {
            dim: self.dim,
            rays: self
                .rays
                .iter()
                .map(|r| r.iter().map(|x| -x.clone()).collect())
                .collect(),
        }
    }
}

/// Extreme rays of `span(basis) n R_{>=0}^d`, by double description on the
/// coefficient space: the cone `{mu : B mu >= 0}` is intersected with one
/// halfspace at a time starting from all of coefficient space.
pub fn cone_meet_orthant(dim: usize, basis: &[Vec<Rat>]) -> Cone {
    if basis.is_empty() {
        return Cone::zero(dim);
    }
    let s = basis.len();
    assert!(s <= 12, "subspace dimension cap exceeded");
    for b in basis {
        assert_eq!(b.len(), dim);
    }
    // mu-space generators of all of R^s.
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for i in 0..s {
        let mut e = vec![Rat::zero(); s];
        e[i] = rat_one();
        rays.push(e.clone());
        e[i] = -rat_one();
        rays.push(e);
    }
    // x_i >= 0 reads sum_j B[j][i] mu_j >= 0 in coefficient space.
    for i in 0..dim {
        let value = |mu: &[Rat]| -> Rat {
            (0..s).map(|j| &basis[j][i] * &mu[j]).sum()
        };
        let mut pos: Vec<(Vec<Rat>, Rat)> = Vec::new();
        let mut neg: Vec<(Vec<Rat>, Rat)> = Vec::new();
        let mut zero: Vec<Vec<Rat>> = Vec::new();
        for r in rays.drain(..) {
            let v = value(&r);
            if v.is_positive() {
                pos.push((r, v));
            } else if v.is_negative() {
                neg.push((r, v));
            } else {
                zero.push(r);
            }
        }
        let mut next: Vec<Vec<Rat>> = zero;
        next.extend(pos.iter().map(|(p, _)| p.clone()));
        for (p, pv) in &pos {
            for (q, qv) in &neg {
                // pv * q - qv * p vanishes on the new hyperplane and stays
                // in the halfspaces already processed.
                let combo: Vec<Rat> = (0..s)
                    .map(|j| pv * &q[j] - qv * &p[j])
                    .collect();
                if combo.iter().any(|x| !x.is_zero()) {
                    next.push(normalize_ray(&combo));
                }
            }
        }
        // Deduplicate between constraint passes to curb growth.
        next.sort();
        next.dedup();
        rays = next;
    }
    // Map back to ambient space and canonicalize.
    let ambient: Vec<Vec<Rat>> = rays
        .into_iter()
        .map(|mu| {
            (0..dim)
                .map(|i| (0..s).map(|j| &basis[j][i] * &mu[j]).sum())
                .collect()
        })
        .collect();
    Cone::from_generators(dim, ambient)
}
