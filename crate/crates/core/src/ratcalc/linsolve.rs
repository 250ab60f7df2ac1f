use std::sync::Arc;

use crate::exactfield::{TowerContext, TowerScalar};

use super::CalcError;

/// Affine solution set x = particular + Σ t_k kernel_k.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub particular: Vec<TowerScalar>,
    pub kernel: Vec<Vec<TowerScalar>>,
}

/// Solves M x = rhs over the tower by Gauss–Jordan elimination.
///
/// Pivots must be invertible. A column whose remaining entries are all
/// nonzero zero divisors, or an inconsistency that holds on some branches
/// only, yields `ZeroDivisor`: the answer would differ between branches.
/// `Ok(None)` means the system is inconsistent on every branch.
pub fn solve_linear(
    ctx: &Arc<TowerContext>,
    matrix: &[Vec<TowerScalar>],
    rhs: &[TowerScalar],
    ncols: usize,
) -> Result<Option<LinearSolution>, CalcError> {
    let nrows = matrix.len();
    assert_eq!(rhs.len(), nrows);
    let mut m: Vec<Vec<TowerScalar>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), ncols);
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let pivot = (row..nrows).find(|&r| m[r][col].is_invertible());
        let Some(p) = pivot else {
            if (row..nrows).any(|r| !m[r][col].is_zero()) {
                return Err(CalcError::ZeroDivisor);
            }
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv()?;
        for k in col..=ncols {
            m[row][k] = &m[row][k] * &inv;
        }
        for r in 0..nrows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for k in col..=ncols {
                let t = &factor * &m[row][k];
                m[r][k] = &m[r][k] - &t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    for r in row..nrows {
        if (0..ncols).any(|c| !m[r][c].is_zero()) {
            return Err(CalcError::ZeroDivisor);
        }
        let b = &m[r][ncols];
        if b.is_zero() {
            continue;
        }
        if b.is_invertible() {
            return Ok(None);
        }
        return Err(CalcError::ZeroDivisor);
    }
    let zero = TowerScalar::zero(ctx);
    let mut particular = vec![zero.clone(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); ncols];
            v[f] = TowerScalar::one(ctx);
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&m[r][f];
            }
            v
        })
        .collect();
    Ok(Some(LinearSolution { particular, kernel }))
}
