//! Multiplicative Jordan-Chevalley decomposition over the rationals.
//!
//! The rationals are perfect, so the semisimple part of a rational matrix is
//! itself rational: Newton iteration against the squarefree part of the
//! characteristic polynomial converges to it in `ceil(log2 n)` steps. The
//! unipotent part is then `s^{-1} g`.

use super::mat::{eval_poly_mat, MatError, QMat};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JordanError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("input matrix is singular")]
    Singular,
}

/// `g = s * u = u * s` with `s` semisimple (squarefree minimal polynomial),
/// `u` unipotent, both rational and both polynomials in `g`.
pub fn jordan_chevalley_mult(g: &QMat) -> Result<(QMat, QMat), JordanError> {
    if !g.is_square() {
        return Err(MatError::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        }
        .into());
    }
    let n = g.rows();
    let p = g.charpoly()?;
    if p.coeff(0).is_zero() {
        return Err(JordanError::Singular);
    }
    let rad = p.squarefree_part();
    let rad_d = rad.derivative();

    let mut s = g.clone();
    let steps = usize::BITS - (n.max(1) - 1).leading_zeros(); // ceil(log2 n)
    for _ in 0..steps {
        let val = eval_poly_mat(&rad, &s);
        if val == QMat::zero(n, n) {
            break;
        }
        let deriv = eval_poly_mat(&rad_d, &s);
        let correction = deriv
            .inverse()
            .expect("derivative of squarefree radical is invertible on the spectrum")
            .mul(&val);
        s = s.sub(&correction);
    }
    debug_assert!(eval_poly_mat(&rad, &s) == QMat::zero(n, n));

    let u = s.inverse().map_err(|_| JordanError::Singular)?.mul(g);
    Ok((s, u))
}

/// `(g - I)^n = 0`, i.e. all eigenvalues are 1.
pub fn is_unipotent_matrix(g: &QMat) -> bool {
    assert!(g.is_square());
    let n = g.rows();
    let mut m = g.clone();
    for i in 0..n {
        *m.at_mut(i, i) -= crate::ratlin::rat_one();
    }
    m.pow(n as u32) == QMat::zero(n, n)
}

/// Check the defining equations of a multiplicative Jordan pair.
pub fn verify_jordan_pair(g: &QMat, s: &QMat, u: &QMat) -> bool {
    let prod = s.mul(u);
    prod == *g
        && s.mul(u) == u.mul(s)
        && s.minpoly().map(|m| m.is_squarefree()).unwrap_or(false)
        && is_unipotent_matrix(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat::{rat, rat_int};

    fn mat_i64(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn single_jordan_block() {
        let g = mat_i64(&[&[2, 1], &[0, 2]]);
        let (s, u) = jordan_chevalley_mult(&g).unwrap();
        assert_eq!(s, QMat::diagonal(&[rat_int(2), rat_int(2)]));
        let expect_u = QMat::from_rows(vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat_int(0), rat_int(1)],
        ]);
        assert_eq!(u, expect_u);
        assert!(verify_jordan_pair(&g, &s, &u));
    }

    #[test]
    fn identity_and_semisimple() {
        let g = QMat::identity(3);
        let (s, u) = jordan_chevalley_mult(&g).unwrap();
        assert!(s.is_identity() && u.is_identity());

        // Distinct eigenvalues force u = identity.
        let g = mat_i64(&[&[4, 1], &[0, 1]]);
        let (s, u) = jordan_chevalley_mult(&g).unwrap();
        assert!(u.is_identity());
        assert_eq!(s, g);
    }

    #[test]
    fn singular_rejected() {
        let g = mat_i64(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            jordan_chevalley_mult(&g),
            Err(JordanError::Singular)
        ));
    }

    #[test]
    fn random_invertible_upper_triangular() {
        let mut state = 0x5eedu64;
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        for trial in 0..200 {
            let n = 2 + (trial % 4) as usize; // n in 2..=5
            let m = QMat::from_fn(n, n, |r, c| {
                if r > c {
                    rat_int(0)
                } else if r == c {
                    rat_int(1 + (next() % 3) as i64)
                } else {
                    rat((next() % 9) as i64 - 4, (next() % 4) as i64 + 1)
                }
            });
            let (s, u) = jordan_chevalley_mult(&m).unwrap();
            assert!(verify_jordan_pair(&m, &s, &u), "trial {trial}");
        }
    }
}
