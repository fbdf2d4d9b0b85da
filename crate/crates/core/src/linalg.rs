//! Dense exact linear algebra over `Q(ζ_M)`.

use crate::algebra::{Element, StructureTables};
use crate::error::{Error, Result};
use crate::field::CycNumber;

pub type Matrix = Vec<Vec<CycNumber>>;

/// Coordinates of `x` in the basis ordering of `tables`.
pub fn to_dense(x: &Element, tables: &StructureTables) -> Vec<CycNumber> {
    let mut out = vec![CycNumber::zero(tables.ctx()); tables.dim()];
    for (b, c) in x.terms() {
        out[tables.index_of(*b)] = c.clone();
    }
    out
}

pub fn from_dense(v: &[CycNumber], tables: &StructureTables) -> Element {
    Element::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (tables.basis()[i], c.clone())),
    )
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank(mut rows: Matrix) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let ctx = rows[0].first().map(|c| c.context().clone());
    let Some(ctx) = ctx else { return 0 };
    let mut prev = CycNumber::one(&ctx);
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let pivot = rows[r][col].clone();
        let prev_inv = prev.inverse().expect("Bareiss pivots are nonzero");
        for i in r + 1..nrows {
            let factor = rows[i][col].clone();
            for j in col + 1..ncols {
                let mut v = &pivot * &rows[i][j];
                if !factor.is_zero() && !rows[r][j].is_zero() {
                    v -= &(&factor * &rows[r][j]);
                }
                rows[i][j] = &v * &prev_inv;
            }
            rows[i][col] = CycNumber::zero(&ctx);
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Rank of a set of elements as vectors in the algebra.
pub fn rank_of_elements(elements: &[Element], tables: &StructureTables) -> usize {
    rank(elements.iter().map(|x| to_dense(x, tables)).collect())
}

/// Inverse by Gauss–Jordan elimination.
pub fn invert(matrix: &Matrix) -> Result<Matrix> {
    let n = matrix.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let ctx = matrix[0][0].context().clone();
    let mut a: Matrix = matrix.clone();
    let mut inv: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CycNumber::one(&ctx)
                    } else {
                        CycNumber::zero(&ctx)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(p, col);
        inv.swap(p, col);
        let scale = a[col][col].inverse()?;
        if !scale.is_one() {
            for j in 0..n {
                a[col][j] = &a[col][j] * &scale;
                inv[col][j] = &inv[col][j] * &scale;
            }
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    let d = &factor * &a[col][j];
                    a[i][j] -= &d;
                }
                if !inv[col][j].is_zero() {
                    let d = &factor * &inv[col][j];
                    inv[i][j] -= &d;
                }
            }
        }
    }
    Ok(inv)
}
