//! Dense matrices over exact rationals.
//!
//! Elimination-based routines (determinant, echelon form, kernel, solve) run
//! fraction-free Bareiss elimination on a denominator-cleared integer copy,
//! which keeps intermediate entries as minors of the input instead of letting
//! rational reductions thrash.

use super::poly::QPoly;
use super::rat::{rat_one, rat_to_string, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
}

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl serde::Serialize for QMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq((0..self.rows).map(|r| {
            (0..self.cols)
                .map(|c| rat_to_string(self.at(r, c)))
                .collect::<Vec<_>>()
        }))
    }
}

impl<'de> serde::Deserialize<'de> for QMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        if raw.is_empty() || raw[0].is_empty() {
            return Err(D::Error::custom("matrix must be nonempty"));
        }
        let cols = raw[0].len();
        let mut rows = Vec::with_capacity(raw.len());
        for row in &raw {
            if row.len() != cols {
                return Err(D::Error::custom("ragged matrix rows"));
            }
            rows.push(
                row.iter()
                    .map(|s| super::rat::rat_from_str(s).map_err(D::Error::custom))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(QMat::from_rows(rows))
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| rat_to_string(self.at(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        QMat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = rat_one();
        }
        m
    }

    pub fn diagonal(diag: &[Rat]) -> Self {
        let mut m = QMat::zero(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            *m.at_mut(i, i) = d.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols));
        QMat {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = QMat::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                *m.at_mut(r, c) = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> QMat {
        assert!(!row_idx.is_empty() && !col_idx.is_empty());
        QMat::from_fn(row_idx.len(), col_idx.len(), |r, c| {
            self.at(row_idx[r], col_idx[c]).clone()
        })
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn scale(&self, s: &Rat) -> QMat {
        QMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions must agree for multiplication"
        );
        let mut m = QMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        *m.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> QMat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = QMat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == QMat::identity(self.rows)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self.at(r, c).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.at(r, c).is_zero()))
    }

    pub fn diag(&self) -> Vec<Rat> {
        (0..self.rows.min(self.cols))
            .map(|i| self.at(i, i).clone())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Rat, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (int_rows, scales) = clear_denominators(self);
        let ref_form = bareiss_ref(int_rows);
        if ref_form.rank < self.rows {
            return Ok(Rat::zero());
        }
        let last = ref_form.mat[self.rows - 1][ref_form.pivots[self.rows - 1]].clone();
        let mut det = Rat::from_integer(last);
        if ref_form.sign < 0 {
            det = -det;
        }
        for s in scales {
            det /= Rat::from_integer(s);
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        let (int_rows, _) = clear_denominators(self);
        bareiss_ref(int_rows).rank
    }

    /// Exact basis of the null space; empty iff injective.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (int_rows, _) = clear_denominators(self);
        let ref_form = bareiss_ref(int_rows);
        let pivot_cols = &ref_form.pivots;
        let is_pivot = |c: usize| pivot_cols.contains(&c);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !is_pivot(*c)) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = rat_one();
            // Back-substitute pivot coordinates from the bottom row up.
            for i in (0..ref_form.rank).rev() {
                let p = pivot_cols[i];
                let mut acc = Rat::zero();
                for c in p + 1..self.cols {
                    let m = &ref_form.mat[i][c];
                    if !m.is_zero() && !v[c].is_zero() {
                        acc += Rat::from_integer(m.clone()) * &v[c];
                    }
                }
                v[p] = -acc / Rat::from_integer(ref_form.mat[i][p].clone());
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = rhs` for each column of `rhs`; `None` if any system
    /// is inconsistent. Free variables are set to zero.
    pub fn solve_many(&self, rhs: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let aug = QMat::from_fn(self.rows, n + rhs.cols, |r, c| {
            if c < n {
                self.at(r, c).clone()
            } else {
                rhs.at(r, c - n).clone()
            }
        });
        let (int_rows, _) = clear_denominators(&aug);
        let ref_form = bareiss_ref(int_rows);
        if ref_form.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut out = QMat::zero(n, rhs.cols);
        for j in 0..rhs.cols {
            for i in (0..ref_form.rank).rev() {
                let p = ref_form.pivots[i];
                let mut acc = Rat::from_integer(ref_form.mat[i][n + j].clone());
                for c in p + 1..n {
                    let m = &ref_form.mat[i][c];
                    if !m.is_zero() && !out.at(c, j).is_zero() {
                        acc -= Rat::from_integer(m.clone()) * out.at(c, j);
                    }
                }
                *out.at_mut(p, j) = acc / Rat::from_integer(ref_form.mat[i][p].clone());
            }
        }
        Some(out)
    }

    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        let rhs_m = QMat::from_fn(rhs.len(), 1, |r, _| rhs[r].clone());
        self.solve_many(&rhs_m).map(|m| m.col_vec(0))
    }

    pub fn inverse(&self) -> Result<QMat, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rank() < self.rows {
            return Err(MatError::Singular);
        }
        Ok(self
            .solve_many(&QMat::identity(self.rows))
            .expect("full-rank square system is consistent"))
    }

    /// Monic characteristic polynomial, by the Faddeev-LeVerrier recurrence.
    pub fn charpoly(&self) -> Result<QPoly, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = rat_one();
        let mut m = self.clone();
        for k in 1..=n {
            let c = -m.trace() / Rat::from_integer(BigInt::from(k));
            coeffs[n - k] = c.clone();
            if k < n {
                let mut shifted = m;
                for i in 0..n {
                    *shifted.at_mut(i, i) += &c;
                }
                m = self.mul(&shifted);
            }
        }
        Ok(QPoly::from_coeffs(coeffs))
    }

    /// Monic minimal polynomial via Krylov sequences with exact solves.
    pub fn minpoly(&self) -> Result<QPoly, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = QPoly::one();
        for i in 0..n {
            if m.degree() == n {
                break;
            }
            let mut e = vec![Rat::zero(); n];
            e[i] = rat_one();
            // Seed with m(A)e so only the missing factors get explored.
            let start = eval_poly_vec(&m, self, &e);
            if start.iter().all(|x| x.is_zero()) {
                continue;
            }
            let local = self.krylov_dependency(&start);
            m = m.mul(&local);
        }
        Ok(m.monic())
    }

    /// Smallest monic `q` with `q(A) v = 0`.
    fn krylov_dependency(&self, v: &[Rat]) -> QPoly {
        let n = self.rows;
        let mut krylov: Vec<Vec<Rat>> = vec![v.to_vec()];
        loop {
            let next = self.mul_vec(krylov.last().unwrap());
            let k = krylov.len();
            let mat = QMat::from_fn(n, k, |r, c| krylov[c][r].clone());
            let target = QMat::from_fn(n, 1, |r, _| next[r].clone());
            if let Some(sol) = mat.solve_many(&target) {
                // A^k v = sum c_j A^j v  =>  q = x^k - sum c_j x^j
                let mut coeffs = vec![Rat::zero(); k + 1];
                for j in 0..k {
                    coeffs[j] = -sol.at(j, 0).clone();
                }
                coeffs[k] = rat_one();
                return QPoly::from_coeffs(coeffs);
            }
            krylov.push(next);
            assert!(krylov.len() <= n + 1, "Krylov sequence exceeded dimension");
        }
    }
}

/// Evaluate `p(M)` exactly (Horner on matrices).
pub fn eval_poly_mat(p: &QPoly, m: &QMat) -> QMat {
    assert!(m.is_square());
    let n = m.rows();
    let mut acc = QMat::zero(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            *acc.at_mut(i, i) += c;
        }
    }
    acc
}

/// Evaluate `p(M) v` without forming `p(M)`.
pub fn eval_poly_vec(p: &QPoly, m: &QMat, v: &[Rat]) -> Vec<Rat> {
    let mut acc = vec![Rat::zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = m.mul_vec(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            *a += c * x;
        }
    }
    acc
}

struct IntRef {
    mat: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    rank: usize,
    sign: i32,
}

/// Scale each row by the lcm of its denominators; returns integer rows and
/// the per-row scale factors.
fn clear_denominators(m: &QMat) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut out = Vec::with_capacity(m.rows());
    let mut scales = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut l = BigInt::one();
        for c in 0..m.cols() {
            l = l.lcm(m.at(r, c).denom());
        }
        let row = (0..m.cols())
            .map(|c| {
                let x = m.at(r, c);
                x.numer() * (&l / x.denom())
            })
            .collect();
        out.push(row);
        scales.push(l);
    }
    (out, scales)
}

/// One-pass fraction-free row echelon form (Bareiss), with row pivoting and
/// rank-deficient column skipping. Divisions are exact.
fn bareiss_ref(mut m: Vec<Vec<BigInt>>) -> IntRef {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut sign = 1;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if pr != r {
            m.swap(pr, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    IntRef {
        mat: m,
        rank: pivots.len(),
        pivots,
        sign,
    }
}
