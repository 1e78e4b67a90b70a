//! Exact dense linear algebra over F_q: echelon forms, ranks, kernels and
//! homology dimensions of two-step complexes.
//!
//! Matrices are row-major `u64` buffers with every entry reduced. A sparse
//! rank routine handles the large block-sparse boundary matrices that show up
//! in Cartan homology; it falls back to dense elimination when fill-in makes
//! that cheaper.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Fp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    fp: Fp,
}

/// Result of a reduced row echelon computation.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rank: usize,
    /// Pivot column indices, strictly increasing.
    pub pivots: Vec<usize>,
    /// The nonzero reduced rows; row k has leading 1 in column `pivots[k]`.
    pub basis: DenseMatrix,
}

impl DenseMatrix {
    pub fn zeros(fp: Fp, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            fp,
        }
    }

    pub fn identity(fp: Fp, n: usize) -> Self {
        let mut m = Self::zeros(fp, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(fp: Fp, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(fp, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % fp.modulus());
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

    pub fn field(&self) -> Fp {
        self.fp
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zeros(self.fp, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let fp = self.fp;
        let mut out = Self::zeros(fp, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let dst_base = i * out.cols;
                let src_base = k * other.cols;
                for j in 0..other.cols {
                    let v = out.data[dst_base + j] + a * other.data[src_base + j];
                    out.data[dst_base + j] = fp.reduce(v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let fp = self.fp;
        (0..self.rows)
            .map(|i| {
                let mut acc: u64 = 0;
                for (j, &x) in v.iter().enumerate() {
                    if x != 0 {
                        acc = fp.reduce(acc + self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form. Pivot columns are scanned left to right, so
    /// with columns sorted descending by a term order the pivots are exactly
    /// the initial monomials.
    pub fn rref(&self) -> Rref {
        let fp = self.fp;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            // find a pivot in column c at or below row r
            let mut piv = None;
            for i in r..a.rows {
                if a.get(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            a.swap_rows(r, p);
            let inv = fp.inv(a.get(r, c));
            scale_row(&mut a, r, inv, c);
            for i in 0..a.rows {
                if i != r {
                    let f = a.get(i, c);
                    if f != 0 {
                        axpy_rows(&mut a, i, r, fp.neg(f), c);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut basis = DenseMatrix::zeros(fp, r, a.cols);
        basis.data.copy_from_slice(&a.data[..r * a.cols]);
        Rref {
            rank: r,
            pivots,
            basis,
        }
    }

    /// Rank by forward elimination only (cheaper than full rref).
    pub fn rank(&self) -> usize {
        let fp = self.fp;
        // eliminate on whichever orientation has fewer rows
        let mut a = if self.rows <= self.cols {
            self.clone()
        } else {
            self.transpose()
        };
        let mut r = 0usize;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let mut piv = None;
            for i in r..a.rows {
                if a.get(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            a.swap_rows(r, p);
            let inv = fp.inv(a.get(r, c));
            for i in r + 1..a.rows {
                let f = a.get(i, c);
                if f != 0 {
                    axpy_rows(&mut a, i, r, fp.neg(fp.mul(f, inv)), c);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel, one column vector per free column. The
    /// vectors are independent and `rank + #vectors == cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let fp = self.fp;
        let Rref { pivots, basis, .. } = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut out = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = fp.neg(basis.get(k, free));
            }
            out.push(v);
        }
        out
    }

    /// Uniformly random matrix.
    pub fn random<R: Rng>(fp: Fp, rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(fp, rows, cols);
        for v in m.data.iter_mut() {
            *v = fp.rand_scalar(rng);
        }
        m
    }

    /// Uniformly random invertible matrix, rejection-sampled.
    pub fn random_invertible<R: Rng>(fp: Fp, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(fp, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Determinant of the square submatrix given by `rows` x `cols` index
    /// selections (used for wedge-power minors).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> u64 {
        assert_eq!(rows.len(), cols.len());
        let n = rows.len();
        let fp = self.fp;
        let mut a = DenseMatrix::zeros(fp, n, n);
        for (i, &ri) in rows.iter().enumerate() {
            for (j, &cj) in cols.iter().enumerate() {
                a.set(i, j, self.get(ri, cj));
            }
        }
        // triangularize, tracking the sign and pivot product
        let mut det: u64 = 1;
        let mut neg = false;
        for c in 0..n {
            let mut piv = None;
            for i in c..n {
                if a.get(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { return 0 };
            if p != c {
                a.swap_rows(c, p);
                neg = !neg;
            }
            let d = a.get(c, c);
            det = fp.mul(det, d);
            let inv = fp.inv(d);
            for i in c + 1..n {
                let f = a.get(i, c);
                if f != 0 {
                    axpy_rows(&mut a, i, c, fp.neg(fp.mul(f, inv)), c);
                }
            }
        }
        if neg {
            fp.neg(det)
        } else {
            det
        }
    }

}

#[inline]
fn scale_row(a: &mut DenseMatrix, i: usize, f: u64, from_col: usize) {
    let fp = a.fp;
    let base = i * a.cols;
    for v in a.data[base + from_col..base + a.cols].iter_mut() {
        *v = fp.mul(*v, f);
    }
}

/// row i += f * row j, starting at `from_col`.
#[inline]
fn axpy_rows(a: &mut DenseMatrix, i: usize, j: usize, f: u64, from_col: usize) {
    let fp = a.fp;
    let cols = a.cols;
    let (ib, jb) = (i * cols, j * cols);
    if i == j {
        return;
    }
    // split borrows
    let (src, dst) = if jb < ib {
        let (lo, hi) = a.data.split_at_mut(ib);
        (&lo[jb..jb + cols], &mut hi[..cols])
    } else {
        let (lo, hi) = a.data.split_at_mut(jb);
        let dst = &mut lo[ib..ib + cols];
        // hi starts at jb
        (&hi[..cols], dst)
    };
    for (d, s) in dst[from_col..].iter_mut().zip(src[from_col..].iter()) {
        *d = fp.reduce(*d + f * *s);
    }
}

/// Dimension of homology at the middle of `in -> mid -> out`.
///
/// `boundary_in` maps into the middle space (its row count is dim mid) and
/// `boundary_out` maps out of it (its column count is dim mid). The
/// composition is re-checked to be zero.
pub fn homology_dim(boundary_in: &DenseMatrix, boundary_out: &DenseMatrix) -> Result<usize> {
    if boundary_in.rows() != boundary_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "middle space mismatch: in is {}x{}, out is {}x{}",
            boundary_in.rows(),
            boundary_in.cols(),
            boundary_out.rows(),
            boundary_out.cols()
        )));
    }
    if !boundary_out.matmul(boundary_in)?.is_zero() {
        return Err(Error::CompositionNotZero);
    }
    let mid = boundary_in.rows();
    let kernel = mid - boundary_out.rank();
    Ok(kernel - boundary_in.rank())
}

/// Column-major sparse matrix used only for rank computations on the large
/// block-sparse boundary matrices.
pub struct SparseMatrix {
    pub rows: usize,
    /// Each column: sorted (row, value) pairs, value nonzero.
    pub cols: Vec<Vec<(u32, u64)>>,
    pub fp: Fp,
}

impl SparseMatrix {
    pub fn new(fp: Fp, rows: usize, ncols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![Vec::new(); ncols],
            fp,
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.fp, self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m.set(i as usize, j, v);
            }
        }
        m
    }

    /// Rank by left-looking sparse elimination with a cheapest-column pivot
    /// choice; switches to dense elimination when the remainder densifies.
    pub fn rank(mut self) -> usize {
        let fp = self.fp;
        let mut rank = 0usize;
        let mut pivot_of_row: Vec<Option<(usize, u64)>> = vec![None; self.rows]; // row -> (col, leading value)
        let mut order: Vec<usize> = (0..self.cols.len()).collect();
        order.sort_by_key(|&j| self.cols[j].len());
        let densify_at = (self.rows.max(1) / 4).max(64);
        let mut remaining: Vec<usize> = Vec::new();
        for (done, &j) in order.iter().enumerate() {
            // reduce column j against all existing pivots it touches
            let mut col = std::mem::take(&mut self.cols[j]);
            loop {
                let mut hit = None;
                for &(r, v) in &col {
                    if let Some((pc, pv)) = pivot_of_row[r as usize] {
                        hit = Some((r, v, pc, pv));
                        break;
                    }
                }
                let Some((r, v, pc, pv)) = hit else { break };
                // col -= (v / pv) * pivot column pc
                let f = fp.neg(fp.mul(v, fp.inv(pv)));
                col = sparse_axpy(fp, &col, &self.cols[pc], f);
                debug_assert!(col.iter().all(|&(rr, _)| rr != r));
            }
            if let Some(&(r, _v)) = col.first() {
                // use the first remaining row as this column's pivot row
                let _ = r;
                let (r, v) = col[0];
                pivot_of_row[r as usize] = Some((j, v));
                self.cols[j] = col;
                rank += 1;
            }
            if self.cols[j].len() > densify_at {
                // fill-in is winning; finish the remaining columns densely
                remaining = order[done + 1..].to_vec();
                break;
            }
        }
        if remaining.is_empty() {
            return rank;
        }
        // project remaining columns modulo the pivot columns, then dense rank
        let mut rest: Vec<Vec<(u32, u64)>> = Vec::with_capacity(remaining.len());
        for j in remaining {
            let mut col = std::mem::take(&mut self.cols[j]);
            loop {
                let mut hit = None;
                for &(r, v) in &col {
                    if let Some((pc, pv)) = pivot_of_row[r as usize] {
                        hit = Some((v, pc, pv));
                        break;
                    }
                }
                let Some((v, pc, pv)) = hit else { break };
                let f = fp.neg(fp.mul(v, fp.inv(pv)));
                col = sparse_axpy(fp, &col, &self.cols[pc], f);
            }
            if !col.is_empty() {
                rest.push(col);
            }
        }
        if rest.is_empty() {
            return rank;
        }
        let mut dense = DenseMatrix::zeros(fp, rest.len(), self.rows);
        for (i, col) in rest.iter().enumerate() {
            for &(r, v) in col {
                dense.set(i, r as usize, v);
            }
        }
        rank + dense.rank()
    }
}

fn sparse_axpy(fp: Fp, a: &[(u32, u64)], b: &[(u32, u64)], f: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = fp.mul(b[j].1, f);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = fp.reduce(a[i].1 + f * b[j].1);
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl DenseMatrix {
    /// Row swap helper used by the elimination kernels.
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let cols = self.cols;
        let (a, b) = (i * cols, j * cols);
        for k in 0..cols {
            self.data.swap(a + k, b + k);
        }
    }
}
