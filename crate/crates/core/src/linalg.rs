//! Gaussian elimination over a field, shared by quadratic spaces and
//! quaternion subalgebra closures.

use crate::fields::{FieldDescriptor, FieldElement};

/// Reduced row echelon form of a matrix, possibly augmented with extra
/// right-hand columns that never hold pivots.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<FieldElement>>,
    /// Pivot column of each leading row, increasing.
    pub pivots: Vec<usize>,
}

/// Row-reduce, pivoting only in the first `ncols` columns. In each column the
/// pivot is the row of least valuation, ties going to the earliest row.
pub(crate) fn row_reduce(mut rows: Vec<Vec<FieldElement>>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].valuation().unwrap_or(0));
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let desc = rows[r][c].descriptor();
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for entry in rows[r].iter_mut() {
            *entry = &*entry * &inv;
        }
        rows[r][c] = desc.one();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                row[c] = if i == r { desc.one() } else { desc.zero() };
                continue;
            }
            let f = row[c].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                *entry = &*entry + &(&f * p);
            }
            row[c] = desc.zero();
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots }
}

/// Rank of a list of coordinate vectors.
pub(crate) fn rank(vectors: &[Vec<FieldElement>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    row_reduce(vectors.to_vec(), first.len()).pivots.len()
}

/// A basis of `{v : A v = 0}`, one vector per free column in column order.
pub(crate) fn nullspace(
    desc: FieldDescriptor,
    rows: Vec<Vec<FieldElement>>,
    ncols: usize,
) -> Vec<Vec<FieldElement>> {
    let ech = row_reduce(rows, ncols);
    (0..ncols)
        .filter(|c| !ech.pivots.contains(c))
        .map(|f| {
            let mut v = vec![desc.zero(); ncols];
            v[f] = desc.one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = row[f].clone();
            }
            v
        })
        .collect()
}

/// The solution of `A v = rhs` with every free coordinate zero, or `None`
/// when the system is inconsistent.
pub(crate) fn solve_minimal(
    desc: FieldDescriptor,
    rows: Vec<Vec<FieldElement>>,
    rhs: Vec<FieldElement>,
    ncols: usize,
) -> Option<Vec<FieldElement>> {
    let augmented = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut row, c)| {
            row.push(c);
            row
        })
        .collect();
    let ech = row_reduce(augmented, ncols);
    if ech.rows[ech.pivots.len()..]
        .iter()
        .any(|row| !row[ncols].is_zero())
    {
        return None;
    }
    let mut v = vec![desc.zero(); ncols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        v[p] = row[ncols].clone();
    }
    Some(v)
}
