//! Total nonnegativity and total positivity via exact minors.
//!
//! Full enumeration shares Laplace expansions across subsets: the minors of
//! size k are computed from the stored minors of size k-1, so each minor
//! costs one k-term expansion instead of a determinant from scratch. The
//! fast total-positivity path only checks initial minors (contiguous row and
//! column windows touching the first row or column), which decide strict
//! positivity; the full enumeration stays available as a test oracle.

use crate::ratlin::{Rat, QMat};
use num_traits::{Signed, Zero};
use std::collections::HashMap;

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    fn go(n: usize, k: usize, start: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - k {
            go(n, k - 1, i + 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, 0, &mut out);
    out
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&b| mask >> b & 1 == 1).collect()
}

/// Visit every minor of `m` (all sizes), sharing subexpansions; stops early
/// when `visit` returns false. Returns true iff all minors were accepted.
fn scan_minors(m: &QMat, mut visit: impl FnMut(&Rat) -> bool) -> bool {
    let n = m.rows();
    assert_eq!(n, m.cols());
    // prev[(rows, cols)] = minor of size k-1
    let mut prev: HashMap<(u32, u32), Rat> = HashMap::new();
    prev.insert((0, 0), crate::ratlin::rat_one());
    for k in 1..=n {
        let row_sets = subsets_of_size(n, k);
        let mut cur = HashMap::with_capacity(row_sets.len() * row_sets.len());
        for &rows in &row_sets {
            let row_list = bits(rows);
            let r = *row_list.last().unwrap(); // expand along the last row
            let rows_rest = rows & !(1 << r);
            for &cols in &row_sets {
                let col_list = bits(cols);
                let mut det = Rat::zero();
                for (pos, &c) in col_list.iter().enumerate() {
                    let a = m.at(r, c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub = &prev[&(rows_rest, cols & !(1 << c))];
                    if sub.is_zero() {
                        continue;
                    }
                    // Sign of position (k-1, pos) in the submatrix.
                    if (k - 1 + pos) % 2 == 0 {
                        det += a * sub;
                    } else {
                        det -= a * sub;
                    }
                }
                if !visit(&det) {
                    return false;
                }
                cur.insert((rows, cols), det);
            }
        }
        prev = cur;
    }
    true
}

/// All minors of `m`, keyed by (row bitmask, column bitmask). The empty
/// minor is 1.
pub(crate) fn minor_table(m: &QMat) -> HashMap<(u32, u32), Rat> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut table: HashMap<(u32, u32), Rat> = HashMap::new();
    table.insert((0, 0), crate::ratlin::rat_one());
    for k in 1..=n {
        let sets = subsets_of_size(n, k);
        for &rows in &sets {
            let row_list = bits(rows);
            let r = *row_list.last().unwrap();
            let rows_rest = rows & !(1 << r);
            for &cols in &sets {
                let col_list = bits(cols);
                let mut det = Rat::zero();
                for (pos, &c) in col_list.iter().enumerate() {
                    let a = m.at(r, c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub = &table[&(rows_rest, cols & !(1 << c))];
                    if sub.is_zero() {
                        continue;
                    }
                    if (k - 1 + pos) % 2 == 0 {
                        det += a * sub;
                    } else {
                        det -= a * sub;
                    }
                }
                table.insert((rows, cols), det);
            }
        }
    }
    table
}

/// Every minor nonnegative (full exact enumeration).
pub fn all_minors_nonneg(m: &QMat) -> bool {
    scan_minors(m, |d| !d.is_negative())
}

/// Every minor strictly positive (full exact enumeration).
pub fn all_minors_positive(m: &QMat) -> bool {
    scan_minors(m, |d| d.is_positive())
}

/// Totally nonnegative: every minor is `>= 0`.
pub fn is_tnn(m: &QMat) -> bool {
    m.is_square() && all_minors_nonneg(m)
}

/// Totally positive, by the initial-minor criterion: all minors on
/// contiguous row/column windows with `min(row_start, col_start) = 1` are
/// positive iff the matrix is totally positive.
pub fn is_tp(m: &QMat) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    for k in 1..=n {
        let rows0: Vec<usize> = (0..k).collect();
        let cols0: Vec<usize> = (0..k).collect();
        for start in 0..=n - k {
            let window: Vec<usize> = (start..start + k).collect();
            if !m
                .submatrix(&rows0, &window)
                .det()
                .expect("square window")
                .is_positive()
            {
                return false;
            }
            if start > 0
                && !m
                    .submatrix(&window, &cols0)
                    .det()
                    .expect("square window")
                    .is_positive()
            {
                return false;
            }
        }
    }
    true
}

/// Oracle form of `is_tp`: full minor enumeration.
pub fn is_tp_oracle(m: &QMat) -> bool {
    m.is_square() && all_minors_positive(m)
}
