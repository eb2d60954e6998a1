//! Dense matrices and row-space linear algebra over an exact [`Field`].

use crate::arith::Field;
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Unit matrix `e_{ij}` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = F::one();
        m
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

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out: Mat<F> = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(i, j)].clone() + a.clone() * b.clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, o: &Mat<F>) -> Mat<F> {
        self.add(&o.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Mat<F> {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.rows)
    }

    /// Commutator `AB − BA`.
    pub fn bracket(&self, o: &Mat<F>) -> Mat<F> {
        self.mul(o).sub(&o.mul(self))
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Option<Mat<F>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Mat::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(p, c);
            b.swap_rows(p, c);
            let inv = a[(c, c)].inv()?;
            a.scale_row(c, &inv);
            b.scale_row(c, &inv);
            for r in 0..n {
                if r != c && !a[(r, c)].is_zero() {
                    let f = a[(r, c)].clone();
                    a.axpy_row(r, c, &f);
                    b.axpy_row(r, c, &f);
                }
            }
        }
        Some(b)
    }

    pub fn det(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut d = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return F::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                d = -d;
            }
            d = d * a[(c, c)].clone();
            let inv = a[(c, c)].inv().expect("nonzero pivot");
            for r in c + 1..n {
                if !a[(r, c)].is_zero() {
                    let f = a[(r, c)].clone() * inv.clone();
                    a.axpy_row(r, c, &f);
                }
            }
        }
        d
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, i: usize, f: &F) {
        for c in 0..self.cols {
            let v = self[(i, c)].clone() * f.clone();
            self[(i, c)] = v;
        }
    }

    /// row_r -= f * row_s
    fn axpy_row(&mut self, r: usize, s: usize, f: &F) {
        for c in 0..self.cols {
            if !self[(s, c)].is_zero() {
                let v = self[(r, c)].clone() - f.clone() * self[(s, c)].clone();
                self[(r, c)] = v;
            }
        }
    }
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Reduced row echelon form of a list of row vectors of length `n`.
/// Returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(rows: &[Vec<F>], n: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `n`.
pub fn kernel<F: Field>(rows: &[Vec<F>], n: usize) -> Vec<Vec<F>> {
    let (r, pivots) = rref(rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); n];
            v[f] = F::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A subspace of `F^n`, stored as a canonical reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    n: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn span(n: usize, vectors: &[Vec<F>]) -> Self {
        let (basis, pivots) = rref(vectors, n);
        Subspace { n, basis, pivots }
    }

    pub fn zero(n: usize) -> Self {
        Subspace::span(n, &[])
    }

    pub fn full(n: usize) -> Self {
        let basis: Vec<Vec<F>> = (0..n).map(|i| unit_vector(n, i)).collect();
        Subspace::span(n, &basis)
    }

    /// The solution space of the linear equations given as rows.
    pub fn solutions(n: usize, equations: &[Vec<F>]) -> Self {
        Subspace::span(n, &kernel(equations, n))
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let c: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() - ci.clone() * y.clone();
                }
            }
        }
        w.iter().all(|x| x.is_zero()).then_some(c)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, o: &Subspace<F>) -> bool {
        self.basis.iter().all(|b| o.contains(b))
    }

    /// Linear equations cutting out this subspace (a basis of its annihilator).
    pub fn equations(&self) -> Vec<Vec<F>> {
        kernel(&self.basis, self.n)
    }

    pub fn intersect(&self, o: &Subspace<F>) -> Subspace<F> {
        let mut eqs = self.equations();
        eqs.extend(o.equations());
        Subspace::solutions(self.n, &eqs)
    }

    pub fn sum(&self, o: &Subspace<F>) -> Subspace<F> {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Subspace::span(self.n, &v)
    }

    /// Basis of a complement of `sub` inside `self`, chosen among the
    /// echelon basis vectors of `self` (deterministic).
    pub fn complement_of(&self, sub: &Subspace<F>) -> Vec<Vec<F>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for b in &self.basis {
            if !acc.contains(b) {
                out.push(b.clone());
                acc = acc.sum(&Subspace::span(self.n, std::slice::from_ref(b)));
            }
        }
        out
    }
}

pub fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Rank of a list of row vectors of length `n`.
pub fn rank<F: Field>(rows: &[Vec<F>], n: usize) -> usize {
    rref(rows, n).0.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, Q};

    fn m(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), q(18));
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let rows = vec![vec![q(1), q(2), q(3), q(4)], vec![q(2), q(4), q(6), q(9)]];
        let k = kernel(&rows, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                assert_eq!(dot(r, v), q(0));
            }
        }
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::span(3, &[vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[q(0), q(5), q(0)]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert_eq!(a.complement_of(&c).len(), 1);
    }
}
