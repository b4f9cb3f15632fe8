//! Exact Gaussian elimination over `Q`.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Row = Vec<BigRational>;

/// Reduces `rows` to reduced row echelon form in place, drops zero rows, and returns
/// the pivot columns.
pub fn rref(rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            let (pivot_row, target) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for (t, pv) in target.iter_mut().zip(pivot_row) {
                if !pv.is_zero() {
                    *t -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(mut rows: Vec<Row>) -> usize {
    rref(&mut rows).len()
}

/// True iff `v` lies in the row span of an RREF basis with the given pivots.
pub fn in_span(basis: &[Row], pivots: &[usize], v: &[BigRational]) -> bool {
    let mut v = v.to_vec();
    for (row, &c) in basis.iter().zip(pivots) {
        if v[c].is_zero() {
            continue;
        }
        let factor = v[c].clone();
        for (x, b) in v.iter_mut().zip(row) {
            *x -= &factor * b;
        }
    }
    v.iter().all(Zero::is_zero)
}

/// Some solution `x` of `sum_j x_j columns[j] = target`, or `None`.
pub fn solve(columns: &[Row], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = columns.len();
    let len = target.len();
    // Augmented system: one row per coordinate.
    let mut rows: Vec<Row> = (0..len)
        .map(|i| {
            let mut row: Row = columns.iter().map(|col| col[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[n].clone();
    }
    Some(x)
}

/// Basis of the null space `{x : sum_j x_j columns[j] = 0}`.
pub fn kernel(columns: &[Row]) -> Vec<Row> {
    let n = columns.len();
    let len = columns.first().map_or(0, Vec::len);
    let mut rows: Vec<Row> = (0..len)
        .map(|i| columns.iter().map(|col| col[i].clone()).collect())
        .collect();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); n];
            x[f] = BigRational::one();
            for (row, &c) in rows.iter().zip(&pivots) {
                x[c] = -row[f].clone();
            }
            x
        })
        .collect()
}
