//! Numeric conjugacy-class witnesses from Jacobi (tridiagonal) Lie-algebra
//! elements: inverse eigenvalue construction by the Lanczos/orthogonal
//! polynomial recurrence, a matrix exponential with certified truncation
//! bound, and tolerance-based verification that the exponential is totally
//! positive in the conjugacy class of a strictly dominant torus element.
//!
//! This is the one module that works in floating point; every report
//! carries explicit margins instead of bare booleans.

use crate::tnn::TorusElt;
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum JacobiError {
    #[error("spectrum must be strictly decreasing")]
    NotStrictlyDecreasing,
    #[error("torus element must satisfy alpha_i(t) > 1 for all i")]
    NotStrictlyDominant,
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("Lanczos breakdown: off-diagonal entry {0} vanished")]
    Breakdown(usize),
}

/// Symmetric tridiagonal matrix with strictly positive off-diagonal
/// entries (a Jacobi element with `a_i = b_i`).
#[derive(Debug, Clone, Serialize)]
pub struct JacobiElt {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl JacobiElt {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            if i + 1 < n {
                m[i][i + 1] = self.off[i];
                m[i + 1][i] = self.off[i];
            }
        }
        m
    }

    /// Number of eigenvalues strictly below `x`, by the LDL^T inertia
    /// recurrence.
    fn count_below(&self, x: f64) -> usize {
        let n = self.n();
        let mut count = 0;
        let mut d = 1.0f64;
        for i in 0..n {
            let off2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            d = self.diag[i] - x - if i == 0 { 0.0 } else { off2 / d };
            if d == 0.0 {
                d = f64::MIN_POSITIVE;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// All eigenvalues in increasing order via inertia bisection — an
    /// eigenvalue path independent of the Lanczos construction.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.n();
        let bound = self
            .diag
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut r = a.abs();
                if i > 0 {
                    r += self.off[i - 1].abs();
                }
                if i < n - 1 {
                    r += self.off[i].abs();
                }
                r
            })
            .fold(0.0f64, f64::max)
            + 1.0;
        (0..n)
            .map(|k| {
                let (mut lo, mut hi) = (-bound, bound);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.count_below(mid) <= k {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo <= f64::EPSILON * bound {
                        break;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }
}

/// Build a Jacobi element with the prescribed strictly decreasing spectrum
/// by the Lanczos recurrence on the diagonal matrix of nodes with equal
/// weights. Off-diagonals come out strictly positive because the nodes are
/// distinct and every weight is nonzero.
pub fn jacobi_from_spectrum(lambdas: &[f64]) -> Result<JacobiElt, JacobiError> {
    let n = lambdas.len();
    assert!(n >= 1);
    if lambdas.windows(2).any(|w| w[0] <= w[1]) {
        return Err(JacobiError::NotStrictlyDecreasing);
    }
    if n == 1 {
        return Ok(JacobiElt {
            diag: vec![lambdas[0]],
            off: vec![],
        });
    }
    let weight = 1.0 / (n as f64).sqrt();
    let mut vs: Vec<Vec<f64>> = vec![vec![weight; n]];
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    for k in 0..n {
        let v = vs[k].clone();
        let mut w: Vec<f64> = (0..n).map(|i| lambdas[i] * v[i]).collect();
        let a: f64 = (0..n).map(|i| w[i] * v[i]).sum();
        diag.push(a);
        if k + 1 == n {
            break;
        }
        // Full reorthogonalization: cheap at these sizes and keeps the
        // recurrence stable.
        for prev in &vs {
            let c: f64 = (0..n).map(|i| w[i] * prev[i]).sum();
            for i in 0..n {
                w[i] -= c * prev[i];
            }
        }
        for prev in &vs {
            let c: f64 = (0..n).map(|i| w[i] * prev[i]).sum();
            for i in 0..n {
                w[i] -= c * prev[i];
            }
        }
        let b = (0..n).map(|i| w[i] * w[i]).sum::<f64>().sqrt();
        if !(b > 1e-13) {
            return Err(JacobiError::Breakdown(k + 1));
        }
        off.push(b);
        vs.push(w.into_iter().map(|x| x / b).collect());
    }
    Ok(JacobiElt { diag, off })
}

/// Largest relative eigenvalue mismatch between the Jacobi element and the
/// prescribed (decreasing) spectrum.
pub fn spectrum_residual(jac: &JacobiElt, lambdas: &[f64]) -> f64 {
    let mut eig = jac.eigenvalues();
    eig.reverse(); // decreasing
    eig.iter()
        .zip(lambdas)
        .map(|(&e, &l)| (e - l).abs() / l.abs().max(1.0))
        .fold(0.0, f64::max)
}

/// Dense matrix with a certified bound on the truncation error of the
/// operation that produced it (floating-point roundoff is second order at
/// these scales and is not folded into the bound).
#[derive(Debug, Clone, Serialize)]
pub struct ApproxMat {
    pub entries: Vec<Vec<f64>>,
    pub error_bound: f64,
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i][k];
            if x == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += x * b[k][j];
            }
        }
    }
    out
}

fn inf_norm(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling-and-squaring with an explicit remainder
/// bound: with `B = X / 2^s`, `theta = |B| <= 1/2`, the Taylor tail after
/// `m` terms is at most `theta^{m+1} / ((m+1)!(1-theta))`, and squaring
/// amplifies the error by at most `2^s e^{theta 2^s}`.
pub fn expm(x: &[Vec<f64>], tol: f64) -> Result<ApproxMat, JacobiError> {
    if !(tol > 0.0) {
        return Err(JacobiError::BadTolerance);
    }
    let n = x.len();
    let norm = inf_norm(x);
    let mut s = 0u32;
    while norm / (1u64 << s) as f64 > 0.5 {
        s += 1;
    }
    let scale = (1u64 << s) as f64;
    let b: Vec<Vec<f64>> = x
        .iter()
        .map(|row| row.iter().map(|v| v / scale).collect())
        .collect();
    let theta: f64 = (norm / scale).min(0.5);
    // Choose m with tail bound small enough that squaring keeps it under tol.
    let amplification = scale * (theta * scale).exp();
    let mut m = 1usize;
    let mut factorial = 1.0f64;
    let mut tail;
    loop {
        factorial *= (m + 1) as f64;
        tail = theta.powi(m as i32 + 1) / (factorial * (1.0 - theta));
        if tail * amplification <= tol || m > 60 {
            break;
        }
        m += 1;
    }
    // Horner evaluation of the Taylor polynomial.
    let mut acc = vec![vec![0.0; n]; n];
    for i in 0..n {
        acc[i][i] = 1.0;
    }
    for k in (1..=m).rev() {
        acc = mat_mul(&b, &acc);
        for i in 0..n {
            for j in 0..n {
                acc[i][j] /= k as f64;
            }
        }
        for i in 0..n {
            acc[i][i] += 1.0;
        }
    }
    let mut err = tail;
    for _ in 0..s {
        let norm_acc = inf_norm(&acc);
        err = 2.0 * norm_acc * err + err * err;
        acc = mat_mul(&acc, &acc);
    }
    // Exactly nilpotent input with the series fully captured: error 0.
    if m >= n && is_nilpotent(x) {
        err = 0.0;
    }
    Ok(ApproxMat {
        entries: acc,
        error_bound: err,
    })
}

fn is_nilpotent(x: &[Vec<f64>]) -> bool {
    let n = x.len();
    let mut p = x.to_vec();
    for _ in 1..n {
        p = mat_mul(&p, x);
    }
    p.iter().all(|row| row.iter().all(|&v| v == 0.0))
}

fn minor_det(m: &[Vec<f64>], rows: &[usize], cols: &[usize]) -> f64 {
    let k = rows.len();
    let mut a: Vec<Vec<f64>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| m[r][c]).collect())
        .collect();
    let mut det = 1.0;
    for p in 0..k {
        let (pivot_row, pivot) = (p..k)
            .map(|r| (r, a[r][p]))
            .max_by(|x, y| x.1.abs().partial_cmp(&y.1.abs()).unwrap())
            .unwrap();
        if pivot == 0.0 {
            return 0.0;
        }
        if pivot_row != p {
            a.swap(pivot_row, p);
            det = -det;
        }
        det *= a[p][p];
        for r in p + 1..k {
            let f = a[r][p] / a[p][p];
            for c in p..k {
                a[r][c] -= f * a[p][c];
            }
        }
    }
    det
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            go(n, k, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MinorMargin {
    pub size: usize,
    pub min_minor: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tgt1Report {
    pub n: usize,
    pub target_spectrum: Vec<f64>,
    pub jacobi: JacobiElt,
    pub spectrum_residual: f64,
    pub exp: ApproxMat,
    pub minor_margins: Vec<MinorMargin>,
    pub class_residuals: Vec<f64>,
    pub totally_positive: bool,
    pub in_conjugacy_class: bool,
    pub tol: f64,
}

impl Tgt1Report {
    pub fn passed(&self) -> bool {
        self.totally_positive && self.in_conjugacy_class
    }
}

/// Conjugacy-class witness for a strictly dominant torus element: build the
/// Jacobi element with spectrum `log(diag t)`, exponentiate, and check that
/// (i) every minor clears a positive margin scaled to the truncation
/// tolerance and the minor size, and (ii) the characteristic polynomial
/// nearly vanishes at each diagonal entry of `t`.
pub fn t_gt1_witness(t: &TorusElt, tol: f64) -> Result<Tgt1Report, JacobiError> {
    if !(tol > 0.0) {
        return Err(JacobiError::BadTolerance);
    }
    let n = t.n();
    for i in 1..n {
        let a = t.alpha(i);
        if a.numer() <= a.denom() {
            return Err(JacobiError::NotStrictlyDominant);
        }
    }
    let target: Vec<f64> = t
        .diag()
        .iter()
        .map(|d| d.to_f64().expect("torus entries fit in f64"))
        .collect();
    let logs: Vec<f64> = target.iter().map(|d| d.ln()).collect();
    let jac = jacobi_from_spectrum(&logs)?;
    let residual = spectrum_residual(&jac, &logs);
    let g = expm(&jac.to_dense(), tol)?;
    let norm = inf_norm(&g.entries).max(1.0);

    let mut minor_margins = Vec::new();
    let mut totally_positive = true;
    for k in 1..=n {
        // Entry perturbations of size e move a k-minor by at most
        // k (k |g|)^{k-1} e; the factor-of-ten threshold keeps a margin.
        let factor = k as f64 * (k as f64 * norm).powi(k as i32 - 1);
        let threshold = 10.0 * g.error_bound.max(tol) * factor;
        let sets = subsets(n, k);
        let mut min_minor = f64::INFINITY;
        for rows in &sets {
            for cols in &sets {
                let d = minor_det(&g.entries, rows, cols);
                if d < min_minor {
                    min_minor = d;
                }
            }
        }
        if min_minor <= threshold {
            totally_positive = false;
        }
        minor_margins.push(MinorMargin {
            size: k,
            min_minor,
            threshold,
        });
    }

    let mut class_residuals = Vec::new();
    let mut in_class = true;
    for (i, &ti) in target.iter().enumerate() {
        let mut shifted = g.entries.clone();
        for r in 0..n {
            shifted[r][r] -= ti;
        }
        let rows: Vec<usize> = (0..n).collect();
        let det = minor_det(&shifted, &rows, &rows);
        // |det(g - t_i)| ~ |lambda_i(g) - t_i| * prod_{j != i} |t_j - t_i|.
        let scale: f64 = target
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &tj)| (tj - ti).abs())
            .product::<f64>()
            .max(f64::MIN_POSITIVE);
        let res = det.abs() / scale / ti.abs().max(1.0);
        if res >= 1e-8 {
            in_class = false;
        }
        class_residuals.push(res);
    }

    Ok(Tgt1Report {
        n,
        target_spectrum: target,
        jacobi: jac,
        spectrum_residual: residual,
        exp: g,
        minor_margins,
        class_residuals,
        totally_positive,
        in_conjugacy_class: in_class,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat_int;

    #[test]
    fn single_node() {
        let j = jacobi_from_spectrum(&[3.5]).unwrap();
        assert_eq!(j.diag, vec![3.5]);
        assert!(j.off.is_empty());
    }

    #[test]
    fn three_node_spectrum() {
        let lambdas = [4.0f64.ln(), 2.0f64.ln(), 0.0];
        let j = jacobi_from_spectrum(&lambdas).unwrap();
        assert!(j.off.iter().all(|&b| b > 0.0));
        assert!(spectrum_residual(&j, &lambdas) < 1e-10);

        let lambdas = [4.0, 2.0, 1.0];
        let j = jacobi_from_spectrum(&lambdas).unwrap();
        assert!(spectrum_residual(&j, &lambdas) < 1e-10);

        assert!(matches!(
            jacobi_from_spectrum(&[1.0, 1.0]),
            Err(JacobiError::NotStrictlyDecreasing)
        ));
    }

    #[test]
    fn spectrum_round_trip_larger() {
        // n <= 8, spectra spread across [1e-2, 1e2].
        for n in 2..=8usize {
            let lambdas: Vec<f64> = (0..n)
                .map(|i| 100.0 * (0.01f64 / 100.0).powf(i as f64 / (n - 1).max(1) as f64))
                .collect();
            let j = jacobi_from_spectrum(&lambdas).unwrap();
            assert!(
                spectrum_residual(&j, &lambdas) < 1e-9,
                "n={n}: {}",
                spectrum_residual(&j, &lambdas)
            );
        }
    }

    #[test]
    fn expm_examples() {
        let zero = vec![vec![0.0; 2]; 2];
        let e = expm(&zero, 1e-12).unwrap();
        assert_eq!(e.entries[0][0], 1.0);
        assert_eq!(e.error_bound, 0.0);

        let d = vec![vec![2.0f64.ln(), 0.0], vec![0.0, 0.0]];
        let e = expm(&d, 1e-12).unwrap();
        assert!((e.entries[0][0] - 2.0).abs() < 1e-12);
        assert!((e.entries[1][1] - 1.0).abs() < 1e-12);

        let nil = vec![vec![0.0, 1.0], vec![0.0, 0.0]];
        let e = expm(&nil, 1e-12).unwrap();
        assert_eq!(e.entries[0][1], 1.0);
        assert_eq!(e.error_bound, 0.0);
    }

    #[test]
    fn witness_examples() {
        let t = TorusElt::new(vec![rat_int(4), rat_int(2), rat_int(1)]).unwrap();
        let report = t_gt1_witness(&t, 1e-12).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.spectrum_residual < 1e-10);

        let t_bad = TorusElt::new(vec![rat_int(2), rat_int(2), rat_int(1)]).unwrap();
        assert!(matches!(
            t_gt1_witness(&t_bad, 1e-12),
            Err(JacobiError::NotStrictlyDominant)
        ));

        let t4 = TorusElt::new(vec![rat_int(8), rat_int(4), rat_int(2), rat_int(1)]).unwrap();
        let report = t_gt1_witness(&t4, 1e-12).unwrap();
        assert!(report.passed());
    }
}
