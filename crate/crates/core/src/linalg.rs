//! Dense matrices over a [`FieldCtx`], with row reduction, rank and kernel.

use crate::gf::{Elem, FieldCtx};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Elem::ONE;
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Elem>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.iter_rows().map(<[Elem]>::to_vec).collect()
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn map(&self, mut f: impl FnMut(Elem) -> Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Keeps columns `start..end`.
    pub fn columns(&self, start: usize, end: usize) -> Matrix {
        let rows = self.iter_rows().map(|r| r[start..end].to_vec()).collect();
        Matrix::from_rows(rows, end - start)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, f: &FieldCtx, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    /// row[dst] += c * row[src]
    fn axpy_row(&mut self, f: &FieldCtx, dst: usize, src: usize, c: Elem, from_col: usize) {
        let cols = self.cols;
        let (s, d) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&lo[src * cols..(src + 1) * cols], &mut hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&hi[..cols], &mut lo[dst * cols..(dst + 1) * cols])
        };
        for j in from_col..cols {
            if !s[j].is_zero() {
                d[j] = f.add(d[j], f.mul(c, s[j]));
            }
        }
    }

    /// In-place reduced row echelon form, first-nonzero pivoting. Zero rows
    /// are dropped. Returns the pivot columns.
    pub fn rref(&mut self, f: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self[(r, c)]).expect("pivot is nonzero");
            for x in &mut self.row_mut(r)[c..] {
                *x = f.mul(*x, inv);
            }
            for i in 0..self.rows {
                if i != r {
                    let v = self[(i, c)];
                    if !v.is_zero() {
                        self.axpy_row(f, i, r, f.neg(v), c);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r * self.cols);
        self.rows = r;
        pivots
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis (as rows) of the right kernel {x : M xᵀ = 0}.
    pub fn kernel(&self, f: &FieldCtx) -> Matrix {
        let mut r = self.clone();
        let pivots = r.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(0, self.cols);
        let mut v = vec![Elem::ZERO; self.cols];
        for &fc in &free {
            v.fill(Elem::ZERO);
            v[fc] = Elem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r[(i, fc)]);
            }
            out.push_row(&v);
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32, m: u32) -> FieldCtx {
        FieldCtx::new(p, m, None).unwrap()
    }

    fn mat(f: &FieldCtx, rows: usize, cols: usize, raw: &[u32]) -> Matrix {
        let data = raw.iter().map(|&x| Elem::from_index(x % f.order())).collect();
        Matrix { rows, cols, data }
    }

    #[test]
    fn rank_of_identity_and_zero() {
        let f = gf(3, 2);
        assert_eq!(Matrix::identity(5).rank(&f), 5);
        assert_eq!(Matrix::zeros(4, 6).rank(&f), 0);
        assert_eq!(Matrix::zeros(4, 6).kernel(&f).rows(), 6);
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated(raw in prop::collection::vec(0u32..64, 7 * 11)) {
            let f = gf(2, 6);
            let m = mat(&f, 7, 11, &raw);
            let k = m.kernel(&f);
            prop_assert_eq!(k.rows() + m.rank(&f), 11);
            prop_assert_eq!(k.rank(&f), k.rows());
            let prod = m.mul(&f, &k.transpose());
            prop_assert!(prod.data.iter().all(|x| x.is_zero()));
        }

        #[test]
        fn rank_invariant_under_row_ops(raw in prop::collection::vec(0u32..25, 5 * 8), scale in 1u32..25, a in 0usize..5, b in 0usize..5) {
            let f = gf(5, 2);
            let m = mat(&f, 5, 8, &raw);
            let r = m.rank(&f);
            let mut m2 = m.clone();
            let c = Elem::from_index(scale);
            for x in m2.row_mut(a) {
                *x = f.mul(*x, c);
            }
            let rows = m2.to_rows();
            let mut swapped = rows.clone();
            swapped.swap(a, b);
            prop_assert_eq!(Matrix::from_rows(swapped, 8).rank(&f), r);
        }

        #[test]
        fn rref_is_canonical(raw in prop::collection::vec(0u32..4, 6 * 9)) {
            let f = gf(2, 2);
            let m = mat(&f, 6, 9, &raw);
            let mut a = m.clone();
            a.rref(&f);
            let mut rows = m.to_rows();
            rows.reverse();
            let mut b = Matrix::from_rows(rows, 9);
            b.rref(&f);
            prop_assert_eq!(a, b);
        }
    }
}
