//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::rational::Rational;

/// A dense row-major matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. `ncols` is needed when `m` has no rows.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        if !inv.is_one() {
            for x in m[row].iter_mut().skip(col) {
                *x *= &inv;
            }
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, y) in other.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(pivots.len().max(row));
    pivots
}

pub fn rank(m: &Matrix, ncols: usize) -> usize {
    let mut m = m.clone();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, with a 1 in that
/// free position.
pub fn nullspace(m: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = m.clone();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solution set of `m x = rhs` as a particular point plus a nullspace
/// basis, or `None` when the system is inconsistent.
pub fn solve_affine(
    m: &Matrix,
    rhs: &[Rational],
    ncols: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Some((x, nullspace(m, ncols)))
}

/// Transpose of a matrix with `ncols` columns.
pub fn transpose(m: &Matrix, ncols: usize) -> Matrix {
    (0..ncols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    fn apply(m: &Matrix, x: &[Rational]) -> Vec<Rational> {
        m.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m, 3), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        assert!(apply(&m, &ns[0]).iter().all(Zero::is_zero));
        assert_eq!(rank(&Vec::new(), 4), 0);
        assert_eq!(nullspace(&Vec::new(), 2).len(), 2);
    }

    #[test]
    fn affine_solutions() {
        let m = mat(&[&[1, 1]]);
        let (p, ns) = solve_affine(&m, &[int(1)], 2).unwrap();
        assert_eq!(apply(&m, &p), vec![int(1)]);
        assert_eq!(ns.len(), 1);
        let m = mat(&[&[1, 1], &[1, 1]]);
        assert!(solve_affine(&m, &[int(1), int(2)], 2).is_none());
        let m = mat(&[&[0, 0]]);
        assert!(solve_affine(&m, &[int(1)], 2).is_none());
    }
}
