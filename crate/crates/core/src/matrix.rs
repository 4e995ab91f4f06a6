//! Dense row-major matrices over a prime field.
//!
//! Matrices are values: every operation returns a fresh matrix. Elimination
//! always takes the first nonzero entry as pivot, so reduced forms are
//! reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<u32>,
}

/// Wire form: `{"rows": r, "cols": c, "q": p, "data": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    q: u32,
    data: Vec<Vec<u32>>,
}

impl TryFrom<MatrixJson> for Mat {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Mat> {
        let field = PrimeField::new(j.q)?;
        if j.data.len() != j.rows || j.data.iter().any(|r| r.len() != j.cols) {
            return Err(Error::ShapeMismatch(format!(
                "matrix JSON declares {}x{} but data does not match",
                j.rows, j.cols
            )));
        }
        if j.data.iter().flatten().any(|&v| v >= j.q) {
            return Err(Error::Parse(format!(
                "matrix entry out of range for q = {}",
                j.q
            )));
        }
        Mat::new(field, j.rows, j.cols, j.data.concat())
    }
}

impl From<Mat> for MatrixJson {
    fn from(m: Mat) -> MatrixJson {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            q: m.field.modulus(),
            data: (0..m.rows).map(|i| m.row(i).to_vec()).collect(),
        }
    }
}

impl Mat {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let p = field.modulus();
        Ok(Mat {
            rows,
            cols,
            field,
            data: data.into_iter().map(|v| v % p).collect(),
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from row vectors; all rows must share one length.
    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, rows: &[R]) -> Result<Mat> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Mat::new(field, rows.len(), cols, data)
    }

    /// Companion matrix of a monic `p(s) = s^n - a_{n-1}s^{n-1} - ... - a_0`
    /// acting on row vectors: `x(k+1) = x(k) A`. Ones sit on the subdiagonal
    /// and the last column holds `(a_0, ..., a_{n-1})`.
    pub fn companion(p: &Poly) -> Result<Mat> {
        let a = p.recurrence_coeffs()?;
        let n = a.len();
        if n == 0 {
            return Err(Error::DegreeZero);
        }
        if a[0] == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let mut m = Mat::zeros(p.field(), n, n);
        for j in 0..n - 1 {
            m.data[(j + 1) * n + j] = 1;
        }
        for (i, &ai) in a.iter().enumerate() {
            m.data[i * n + n - 1] = ai;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn elem(&self, i: usize, j: usize) -> FieldElement {
        self.field.elem(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, v: u32) -> Mat {
        let mut m = self.clone();
        m.data[i * self.cols + j] = v % self.field.modulus();
        m
    }

    /// Copy with one row replaced.
    pub fn with_row(&self, i: usize, row: &[u32]) -> Result<Mat> {
        if row.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "row of length {} for {} columns",
                row.len(),
                self.cols
            )));
        }
        let mut m = self.clone();
        m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(row);
        Ok(m)
    }

    fn check_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("addition of different shapes".into()));
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Mat {
            data,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        Mat {
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Row vector times matrix: `x M`.
    pub fn vec_mul(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} times {}x{}",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let f = self.field;
        let mut out = vec![0u32; self.cols];
        for (k, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(k, j)));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: `M v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u128) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `f(M)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "polynomial of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut acc = Mat::zeros(self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&Mat::identity(self.field, n).scale(c))?;
        }
        Ok(acc)
    }

    /// Stacks matrices vertically.
    pub fn vstack(parts: &[&Mat]) -> Result<Mat> {
        let first = parts
            .first()
            .ok_or_else(|| Error::ShapeMismatch("empty stack".into()))?;
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            first.check_field(p)?;
            if p.cols != first.cols {
                return Err(Error::ShapeMismatch("vstack of different widths".into()));
            }
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Mat::new(first.field, rows, first.cols, data)
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        Ok(Mat::vstack(&[&self.transpose(), &other.transpose()])?.transpose())
    }

    /// Rows picked in the given order (repeats allowed).
    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let data = idx
            .iter()
            .flat_map(|&i| self.row(i).iter().copied())
            .collect();
        Mat {
            rows: idx.len(),
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    /// `M(r0..r1, c0..c1)`, half-open, zero-based.
    pub fn submatrix(&self, r: std::ops::Range<usize>, c: std::ops::Range<usize>) -> Result<Mat> {
        if r.end > self.rows || c.end > self.cols || r.start > r.end || c.start > c.end {
            return Err(Error::ShapeMismatch("submatrix out of bounds".into()));
        }
        let data = r
            .clone()
            .flat_map(|i| self.row(i)[c.clone()].iter().copied())
            .collect();
        Mat::new(self.field, r.len(), c.len(), data)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = eliminate(&mut m.data, m.rows, m.cols, m.field, true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut buf = self.data.clone();
        rank_in_place(&mut buf, self.rows, self.cols, self.field)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n))?;
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        red.submatrix(0..n, n..2 * n)
    }

    /// Returns some `a` with `a M = e`; unique when `M` is invertible.
    pub fn solve_left(&self, e: &[u32]) -> Result<Vec<u32>> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "solve_left needs a square matrix".into(),
            ));
        }
        if e.len() != self.cols {
            return Err(Error::ShapeMismatch("right-hand side length".into()));
        }
        // a M = e  <=>  M^T a^T = e^T
        let n = self.rows;
        let rhs = Mat::new(self.field, self.cols, 1, e.to_vec())?;
        let aug = self.transpose().hstack(&rhs)?;
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&n) {
            return Err(Error::NoSolution);
        }
        let mut a = vec![0u32; n];
        for (r, &pc) in pivots.iter().enumerate() {
            a[pc] = red.get(r, n);
        }
        Ok(a)
    }

    /// Monic characteristic polynomial `det(sI - M)` via reduction to upper
    /// Hessenberg form.
    pub fn charpoly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "charpoly of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let f = self.field;
        let h = hessenberg(self);
        let at = |i: usize, j: usize| h[i * n + j];
        let mut chain: Vec<Poly> = vec![Poly::one(f)];
        for k in 1..=n {
            // (s - h_kk) p_{k-1}
            let lin = Poly::new(f, vec![f.neg(at(k - 1, k - 1)), 1]);
            let mut pk = lin.mul(&chain[k - 1])?;
            let mut t = 1u32;
            for i in (1..k).rev() {
                t = f.mul(t, at(i, i - 1));
                let c = f.mul(at(i - 1, k - 1), t);
                if c != 0 {
                    pk = pk.sub(&chain[i - 1].scale(c))?;
                }
            }
            chain.push(pk);
        }
        Ok(chain.pop().expect("chain has n+1 entries"))
    }
}

/// Similarity reduction to upper Hessenberg form; returns the row-major data.
fn hessenberg(m: &Mat) -> Vec<u32> {
    let n = m.rows;
    let f = m.field;
    let mut h = m.data.clone();
    for col in 0..n.saturating_sub(2) {
        let piv_row = col + 1;
        let Some(p) = (piv_row..n).find(|&i| h[i * n + col] != 0) else {
            continue;
        };
        if p != piv_row {
            for j in 0..n {
                h.swap(p * n + j, piv_row * n + j);
            }
            for i in 0..n {
                h.swap(i * n + p, i * n + piv_row);
            }
        }
        let inv = f.inv(h[piv_row * n + col]).expect("pivot is nonzero");
        for i in piv_row + 1..n {
            let u = f.mul(h[i * n + col], inv);
            if u == 0 {
                continue;
            }
            // row_i -= u row_piv, then col_piv += u col_i
            for j in 0..n {
                h[i * n + j] = f.sub(h[i * n + j], f.mul(u, h[piv_row * n + j]));
            }
            for r in 0..n {
                h[r * n + piv_row] = f.add(h[r * n + piv_row], f.mul(u, h[r * n + i]));
            }
        }
    }
    h
}

/// Gaussian elimination on a raw buffer. Returns the pivot columns; when
/// `reduce` is set, the result is in reduced row echelon form.
fn eliminate(
    data: &mut [u32],
    rows: usize,
    cols: usize,
    f: PrimeField,
    reduce: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            data[r * cols + j] = f.mul(data[r * cols + j], inv);
        }
        let start = if reduce { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                data[i * cols + j] = f.sub(data[i * cols + j], f.mul(factor, data[r * cols + j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a row-major buffer, destroying its contents.
pub(crate) fn rank_in_place(data: &mut [u32], rows: usize, cols: usize, f: PrimeField) -> usize {
    eliminate(data, rows, cols, f, false).len()
}

/// `companion_matrix(p)`; see [`Mat::companion`].
pub fn companion_matrix(p: &Poly) -> Result<Mat> {
    Mat::companion(p)
}

/// One step `x -> x A` for the companion matrix with recurrence coefficients `a`.
#[inline]
pub(crate) fn shift_row(f: PrimeField, row: &mut [u32], a: &[u32]) {
    let new = row
        .iter()
        .zip(a)
        .fold(0, |acc, (&x, &c)| f.add(acc, f.mul(x, c)));
    row.rotate_left(1);
    if let Some(last) = row.last_mut() {
        *last = new;
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn m2(rows: &[&[u32]]) -> Mat {
        Mat::from_rows(f2(), rows).unwrap()
    }

    fn p2(t: &str) -> Poly {
        Poly::parse(f2(), t).unwrap()
    }

    #[test]
    fn companion_layout() {
        let a6 = Mat::companion(&p2("s^6+s+1")).unwrap();
        assert_eq!(a6.column(5), vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(
            a6.vec_mul(&[0, 0, 0, 0, 0, 1]).unwrap(),
            vec![0, 0, 0, 0, 1, 0]
        );
        assert_eq!(
            a6.vec_mul(&[0, 1, 0, 1, 1, 0]).unwrap(),
            vec![1, 0, 1, 1, 0, 1]
        );
        assert_eq!(Mat::companion(&p2("s+1")).unwrap(), m2(&[&[1]]));
        assert_eq!(Mat::companion(&p2("s^2+s")), Err(Error::ZeroConstantTerm));
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(
            Mat::companion(&Poly::new(f3, vec![1, 0, 2])),
            Err(Error::NotMonic)
        );
    }

    #[test]
    fn shift_row_matches_dense() {
        let p = p2("s^6+s+1");
        let a6 = Mat::companion(&p).unwrap();
        let lrr = p.recurrence_coeffs().unwrap();
        let mut row = vec![0, 1, 0, 1, 1, 0];
        let dense = a6.vec_mul(&row).unwrap();
        shift_row(f2(), &mut row, &lrr);
        assert_eq!(row, dense);
    }

    #[test]
    fn ranks() {
        assert_eq!(Mat::identity(f2(), 4).rank(), 4);
        assert_eq!(m2(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]).rank(), 3);
        assert_eq!(Mat::zeros(f2(), 3, 5).rank(), 0);
        assert_eq!(Mat::zeros(f2(), 0, 0).rank(), 0);
    }

    #[test]
    fn solves() {
        let i4 = Mat::identity(f2(), 3);
        assert_eq!(i4.solve_left(&[0, 0, 1]).unwrap(), vec![0, 0, 1]);
        let swap = m2(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.solve_left(&[1, 0]).unwrap(), vec![0, 1]);
        let sing = m2(&[&[1, 1], &[1, 1]]);
        assert_eq!(sing.solve_left(&[1, 0]), Err(Error::NoSolution));
    }

    #[test]
    fn krylov_solve() {
        // rows x, xA, xA^2, xA^3 for x = (0,1,1,0) and A = companion(s^4+s+1)
        let a = Mat::companion(&p2("s^4+s+1")).unwrap();
        let mut rows = vec![vec![0, 1, 1, 0]];
        for _ in 1..4 {
            let next = a.vec_mul(rows.last().unwrap()).unwrap();
            rows.push(next);
        }
        let k = Mat::from_rows(f2(), &rows).unwrap();
        assert_eq!(k.rank(), 4);
        let sol = k.solve_left(&[0, 0, 0, 1]).unwrap();
        assert_eq!(k.vec_mul(&sol).unwrap(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn inverses() {
        assert_eq!(
            Mat::identity(f2(), 3).inverse().unwrap(),
            Mat::identity(f2(), 3)
        );
        let u = m2(&[&[1, 1], &[0, 1]]);
        assert_eq!(u.inverse().unwrap(), u);
        assert_eq!(m2(&[&[1, 1], &[1, 1]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn charpolys() {
        let p = p2("s^4+s+1");
        assert_eq!(Mat::companion(&p).unwrap().charpoly().unwrap(), p);
        assert_eq!(Mat::zeros(f2(), 2, 2).charpoly().unwrap(), p2("s^2"));
        assert_eq!(Mat::zeros(f2(), 0, 0).charpoly().unwrap(), p2("1"));
        let f5 = PrimeField::new(5).unwrap();
        // [[1,2],[3,4]]: s^2 - 5s - 2 = s^2 + 3 over F_5
        let m = Mat::from_rows(f5, &[[1, 2], [3, 4]]).unwrap();
        assert_eq!(m.charpoly().unwrap(), Poly::new(f5, vec![3, 0, 1]));
    }

    #[test]
    fn eval_poly_matches_powers() {
        let a = Mat::companion(&p2("s^4+s+1")).unwrap();
        let f = p2("s^3+s+1");
        let direct = a
            .pow(3)
            .unwrap()
            .add(&a)
            .unwrap()
            .add(&Mat::identity(f2(), 4))
            .unwrap();
        assert_eq!(a.eval_poly(&f).unwrap(), direct);
        // p(A) = 0
        assert!(a.eval_poly(&p2("s^4+s+1")).unwrap().is_zero());
    }

    #[test]
    fn json_shape() {
        let m = m2(&[&[1, 0], &[1, 1]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"q":2,"data":[[1,0],[1,1]]}"#);
        let back: Mat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(
            serde_json::from_str::<Mat>(r#"{"rows":2,"cols":2,"q":2,"data":[[1,0]]}"#).is_err()
        );
        assert!(serde_json::from_str::<Mat>(r#"{"rows":1,"cols":1,"q":2,"data":[[2]]}"#).is_err());
    }
}
