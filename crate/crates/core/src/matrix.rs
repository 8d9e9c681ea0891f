//! Dense matrices over finite fields and the row-reduction kernels everything else uses.
//!
//! Row reduction always takes the first nonzero entry in a column as pivot, so kernels,
//! particular solutions and echelon bases are deterministic.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// `dst += c * src` over `field`.
#[inline]
pub(crate) fn axpy(field: &Field, dst: &mut [Elem], c: Elem, src: &[Elem]) {
    if c == 0 {
        return;
    }
    if field.is_prime_field() {
        let p = field.characteristic();
        if p == 2 {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = (*d + c * s) % p;
            }
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = field.add(*d, field.mul(c, s));
            }
        }
    }
}

#[inline]
pub(crate) fn scale_slice(field: &Field, v: &mut [Elem], c: Elem) {
    if c == 1 {
        return;
    }
    for x in v.iter_mut() {
        *x = field.mul(*x, c);
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Usage(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.order()) {
            return Err(Error::Usage(format!("entry {bad} is not a field element")));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Integer rows reduced into the prime subfield.
    pub fn from_int_rows(field: &Field, rows: &[Vec<i64>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Usage("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.from_int(x)).collect();
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend_from_slice(r);
        }
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let (left, out_row) = (self.row(r), r * other.cols);
            for (k, &a) in left.iter().enumerate() {
                if a != 0 {
                    axpy(
                        &self.field,
                        &mut out.data[out_row..out_row + other.cols],
                        a,
                        other.row(k),
                    );
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| {
                    if a == 0 || b == 0 {
                        acc
                    } else {
                        f.add(acc, f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix sum shape mismatch"
        );
        let mut out = self.clone();
        axpy(&self.field, &mut out.data, 1, &other.data);
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let mut out = self.clone();
        scale_slice(&self.field, &mut out.data, c);
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product `self ⊗ other`, indexing `(i*other.rows + k, j*other.cols + l)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.set(i * other.rows + k, j * other.cols + l, self.field.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(field: &Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.row_mut(r).copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Same entries viewed over a larger field (prime-field entries embed as themselves).
    pub fn extend_scalars(&self, field: &Field) -> Matrix {
        assert_eq!(field.characteristic(), self.field.characteristic());
        assert!(
            self.field.is_prime_field() || self.field == *field,
            "can only extend from the prime field"
        );
        Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, lead * cols + k);
                }
            }
            let inv = f.inv(self.get(lead, c)).expect("pivot is nonzero");
            scale_slice(&f, self.row_mut(lead), inv);
            let pivot_row = self.row(lead)[c..].to_vec();
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let x = self.get(r, c);
                if x != 0 {
                    let start = r * cols + c;
                    axpy(
                        &f,
                        &mut self.data[start..start + cols - c],
                        f.neg(x),
                        &pivot_row,
                    );
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Eliminate along the shorter side.
        if self.rows > self.cols {
            self.transpose().rref_in_place().len()
        } else {
            self.clone().rref_in_place().len()
        }
    }

    /// Basis of the right null space, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vec<Elem>> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// The echelon particular solution of `M x = b` (free variables zero), if consistent.
    pub fn solve_linear(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
        if b.len() != self.rows {
            return Err(Error::Usage(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::from_columns(&self.field, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(&self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Solver for many right-hand sides against one fixed matrix.
pub struct LinearSolver {
    cols: usize,
    // T with T M in reduced echelon form.
    transform: Matrix,
    pivots: Vec<usize>,
}

impl LinearSolver {
    pub fn new(m: &Matrix) -> LinearSolver {
        let aug = m.hstack(&Matrix::identity(m.field(), m.rows()));
        let (r, all_pivots) = aug.rref();
        let pivots: Vec<usize> = all_pivots
            .into_iter()
            .take_while(|&c| c < m.cols())
            .collect();
        LinearSolver {
            cols: m.cols(),
            transform: r.submatrix(0, m.cols(), m.rows(), m.rows()),
            pivots,
        }
    }

    /// Same particular solution as [`Matrix::solve_linear`].
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        let tb = self.transform.mul_vec(b);
        if tb[self.pivots.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            x[pc] = tb[i];
        }
        Some(x)
    }
}

/// A subspace kept as a fully reduced echelon basis, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &Field, dim: usize) -> EchelonBasis {
        EchelonBasis {
            field: field.clone(),
            dim,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtract the basis from `v` at every pivot; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &mut [Elem]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let x = v[pc];
            if x != 0 {
                axpy(&self.field, v, self.field.neg(x), row);
            }
        }
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Add `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]).unwrap();
        scale_slice(&self.field, &mut w, inv);
        for row in self.rows.iter_mut() {
            let x = row[pc];
            if x != 0 {
                axpy(&self.field, row, self.field.neg(x), &w);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }
}

/// A quotient `Z / B` of subspaces with `B ⊆ Z`, with coordinates for classes.
///
/// Boundary rows are kept in reduced echelon form. Class representatives are reduced against
/// the boundaries and against each other, so the coordinate of a cycle on class `j` is its
/// entry at that class's pivot once boundaries have been subtracted.
#[derive(Clone, Debug)]
pub struct Quotient {
    boundaries: EchelonBasis,
    classes: EchelonBasis,
}

impl Quotient {
    pub fn new(
        field: &Field,
        dim: usize,
        boundaries: &[Vec<Elem>],
        cycles: &[Vec<Elem>],
    ) -> Quotient {
        let mut b = EchelonBasis::new(field, dim);
        for v in boundaries {
            b.insert(v);
        }
        let mut classes = EchelonBasis::new(field, dim);
        for v in cycles {
            let mut w = v.clone();
            b.reduce(&mut w);
            classes.insert(&w);
        }
        // Class rows must vanish at boundary pivots; inserting reduced vectors keeps that.
        Quotient {
            boundaries: b,
            classes,
        }
    }

    pub fn dim(&self) -> usize {
        self.classes.rank()
    }

    /// Representatives, one per class coordinate.
    pub fn representatives(&self) -> &[Vec<Elem>] {
        self.classes.basis()
    }

    /// Coordinates of a cycle; `None` if the vector is not in `Z`.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let mut w = v.to_vec();
        self.boundaries.reduce(&mut w);
        let coords: Vec<Elem> = self.classes.pivots().iter().map(|&pc| w[pc]).collect();
        self.classes.reduce(&mut w);
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        Some(coords)
    }

    pub fn is_boundary(&self, v: &[Elem]) -> bool {
        self.boundaries.contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f2 = f(2);
        assert_eq!(Matrix::zeros(&f2, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(&f2, 5).rank(), 5);
        let m = Matrix::from_int_rows(&f2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f3 = f(3);
        assert!(Matrix::identity(&f3, 3).kernel_basis().is_empty());
        assert_eq!(
            Matrix::zeros(&f3, 2, 2).kernel_basis(),
            vec![vec![1, 0], vec![0, 1]]
        );
        let m = Matrix::from_int_rows(&f3, &[vec![1, 2]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f5 = f(5);
        let id = Matrix::identity(&f5, 3);
        assert_eq!(id.solve_linear(&[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        let z = Matrix::zeros(&f5, 2, 2);
        assert_eq!(z.solve_linear(&[1, 0]).unwrap(), None);
        let f2 = f(2);
        let m = Matrix::from_int_rows(&f2, &[vec![1, 1]]).unwrap();
        assert_eq!(m.solve_linear(&[1]).unwrap(), Some(vec![1, 0]));
        assert!(m.solve_linear(&[1, 1]).is_err());
    }

    #[test]
    fn inverse_over_extension() {
        let f9 = Field::new(3, 2).unwrap();
        let m = Matrix::from_vec(&f9, 2, 2, vec![1, 3, 4, 7]).unwrap();
        if let Some(inv) = m.inverse() {
            assert_eq!(m.mul(&inv), Matrix::identity(&f9, 2));
        } else {
            assert!(m.rank() < 2);
        }
    }

    #[test]
    fn quotient_coordinates() {
        let f3 = f(3);
        // Z = span(e0, e1), B = span(e0 + e1)
        let q = Quotient::new(&f3, 3, &[vec![1, 1, 0]], &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(q.dim(), 1);
        let a = q.coordinates(&[1, 0, 0]).unwrap();
        let b = q.coordinates(&[0, 1, 0]).unwrap();
        assert_eq!(f3.add(a[0], b[0]), 0);
        assert_eq!(q.coordinates(&[0, 0, 1]), None);
    }

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (prop::sample::select(vec![2u32, 3, 5]), 1usize..6, 1usize..7).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0u32..p, r * c).prop_map(move |data| {
                Matrix::from_vec(&Field::prime(p).unwrap(), r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let ker = m.kernel_basis();
            prop_assert_eq!(m.rank() + ker.len(), m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn solve_is_sound(m in matrix_strategy(), seed in 0u32..1000) {
            let b: Vec<Elem> = (0..m.rows()).map(|i| (seed + 7 * i as u32) % m.field().order()).collect();
            let col = Matrix::from_columns(m.field(), m.rows(), std::slice::from_ref(&b));
            let consistent = m.hstack(&col).rank() == m.rank();
            match m.solve_linear(&b).unwrap() {
                Some(x) => prop_assert_eq!(m.mul_vec(&x), b.clone()),
                None => prop_assert!(!consistent),
            }
            let solver = LinearSolver::new(&m);
            prop_assert_eq!(solver.solve(&b), m.solve_linear(&b).unwrap());
        }
    }
}
