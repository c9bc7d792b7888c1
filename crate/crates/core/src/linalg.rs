//! Exact Gaussian elimination over a [`Field`].

use crate::fields::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
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
        let inv = m[row][col].inv().expect("nonzero pivot");
        for c in col..ncols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..ncols {
                let v = m[row][c].clone();
                m[r][c] = m[r][c].clone() - f.clone() * v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{v : M v = 0}`, one vector per free column in increasing order.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        out.push(v);
    }
    out
}

pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        let inv = pivot.inv().expect("nonzero pivot");
        det = det * pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() * inv.clone();
            for c in col..n {
                let v = a[col][c].clone();
                a[r][c] = a[r][c].clone() - f.clone() * v;
            }
        }
    }
    det
}
