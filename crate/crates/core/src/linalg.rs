//! Dense exact linear algebra over the rationals, sized for the small
//! systems this crate solves (character matrices and interpolation systems
//! up to a few dozen rows).

use crate::rational::Rat;
use crate::Error;
use num::traits::Zero;

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row.
#[allow(clippy::needless_range_loop)]
fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = f.clone() * m[r][j].clone();
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Solves `A x = b` when the solution is unique (full column rank and a
/// consistent right-hand side); the system may have more rows than columns.
pub(crate) fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>, Error> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    assert_eq!(rows, b.len());
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return Err(Error::Singular("inconsistent system".into()));
    }
    if pivots.len() < cols {
        return Err(Error::Singular(format!(
            "rank {} < {} unknowns",
            pivots.len(),
            cols
        )));
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Ok(x)
}

/// Inverse of a square matrix.
pub(crate) fn invert(a: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>, Error> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::Singular(format!(
            "matrix of size {n} is not invertible"
        )));
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank of a matrix.
pub(crate) fn rank(a: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    rref(&mut m).len()
}
