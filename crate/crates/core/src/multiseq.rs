//! Multisequences represented by a matrix state and a primitive minimal
//! polynomial.
//!
//! Row `i` of the `m x n` state is the state vector `x_i(k)` of the `i`-th
//! component sequence; column `j` is the vector `W(k + j)`. One shift acts as
//! `x_i(k+1) = x_i(k) A` with `A` the companion matrix of the minimal
//! polynomial.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::matrix::{shift_row, Mat};
use crate::poly::{group_order, Poly};

/// Upper bound on orbit walks in [`MultiseqState::canonical`].
pub const CANONICAL_ORBIT_LIMIT: u128 = 1 << 20;

/// An extension profile `R = (r_1, ..., r_m)` with every `r_i >= 1`. Also
/// used for points on an R-road.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct RVector(Vec<usize>);

impl RVector {
    pub fn new(parts: Vec<usize>) -> Result<RVector> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::BadRVector);
        }
        Ok(RVector(parts))
    }

    /// `(1, ..., 1)` of length `m`.
    pub fn ones(m: usize) -> Result<RVector> {
        RVector::new(vec![1; m])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of components `m`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `r = sum r_i`.
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max(&self) -> usize {
        *self.0.iter().max().expect("non-empty")
    }

    pub fn is_ones(&self) -> bool {
        self.0.iter().all(|&g| g == 1)
    }

    /// Entry at a 1-based position.
    pub fn at(&self, pos: usize) -> usize {
        self.0[pos - 1]
    }

    pub(crate) fn parts_mut(&mut self) -> &mut [usize] {
        &mut self.0
    }
}

impl TryFrom<Vec<usize>> for RVector {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<RVector> {
        RVector::new(v)
    }
}

impl From<RVector> for Vec<usize> {
    fn from(r: RVector) -> Vec<usize> {
        r.0
    }
}

impl FromStr for RVector {
    type Err = Error;

    /// Parses a comma list such as `"3,2,5,4,1"` (parentheses optional).
    fn from_str(s: &str) -> Result<RVector> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad R entry {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        RVector::new(parts)
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A multisequence in `F_q^m` given by one matrix state and its primitive
/// minimal polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct MultiseqState {
    state: Mat,
    minpoly: Poly,
    companion: Mat,
    recurrence: Vec<u32>,
}

/// Wire form: `{"q": p, "minpoly": [little-endian coeffs], "state": matrix}`.
#[derive(Serialize, Deserialize)]
struct StateJson {
    q: u32,
    minpoly: Vec<u32>,
    state: Mat,
}

impl TryFrom<StateJson> for MultiseqState {
    type Error = Error;

    fn try_from(j: StateJson) -> Result<MultiseqState> {
        let field = PrimeField::new(j.q)?;
        MultiseqState::new(j.state, Poly::new(field, j.minpoly))
    }
}

impl From<MultiseqState> for StateJson {
    fn from(s: MultiseqState) -> StateJson {
        StateJson {
            q: s.field().modulus(),
            minpoly: s.minpoly.coeffs().to_vec(),
            state: s.state,
        }
    }
}

impl MultiseqState {
    /// Validates that `minpoly` is primitive, the state has `deg(minpoly)`
    /// columns, and the state is nonzero.
    pub fn new(state: Mat, minpoly: Poly) -> Result<MultiseqState> {
        if state.field() != minpoly.field() {
            return Err(Error::FieldMismatch(
                state.field().modulus(),
                minpoly.field().modulus(),
            ));
        }
        if !minpoly.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        MultiseqState::with_primitive(state, minpoly)
    }

    /// Same as [`MultiseqState::new`] but trusts that `minpoly` is primitive.
    pub(crate) fn with_primitive(state: Mat, minpoly: Poly) -> Result<MultiseqState> {
        let n = minpoly.degree().unwrap_or(0);
        if state.cols() != n || state.rows() == 0 {
            return Err(Error::ShapeMismatch(format!(
                "state is {}x{} but minimal polynomial has degree {n}",
                state.rows(),
                state.cols()
            )));
        }
        if state.is_zero() {
            return Err(Error::ZeroState);
        }
        let companion = Mat::companion(&minpoly)?;
        let recurrence = minpoly.recurrence_coeffs()?;
        Ok(MultiseqState {
            state,
            minpoly,
            companion,
            recurrence,
        })
    }

    fn replace_state(&self, state: Mat) -> MultiseqState {
        MultiseqState {
            state,
            ..self.clone()
        }
    }

    pub fn state(&self) -> &Mat {
        &self.state
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn companion(&self) -> &Mat {
        &self.companion
    }

    pub fn field(&self) -> PrimeField {
        self.state.field()
    }

    /// Number of component sequences.
    pub fn m(&self) -> usize {
        self.state.rows()
    }

    /// Linear complexity (degree of the minimal polynomial).
    pub fn n(&self) -> usize {
        self.state.cols()
    }

    /// `q^n - 1`, the period of every nonzero multisequence here.
    pub fn period(&self) -> u128 {
        group_order(self.field(), self.n()).expect("validated at construction")
    }

    /// The state shifted by `k` (negative allowed): `M A^k`.
    pub fn step(&self, k: i64) -> MultiseqState {
        let period = self.period();
        let k = (k as i128).rem_euclid(period as i128) as u128;
        if k <= 4 * self.n() as u128 {
            let f = self.field();
            let mut data = self.state.data().to_vec();
            for row in data.chunks_mut(self.n()) {
                for _ in 0..k {
                    shift_row(f, row, &self.recurrence);
                }
            }
            let state = Mat::new(f, self.m(), self.n(), data).expect("same shape");
            return self.replace_state(state);
        }
        let power = self.companion.pow(k).expect("square companion");
        self.replace_state(self.state.mul(&power).expect("conformable"))
    }

    /// Rank of the matrix state.
    pub fn dimension(&self) -> usize {
        self.state.rank()
    }

    /// The `r x n` state of the R-extension, grouped by component: rows
    /// `x_i, x_i A, ..., x_i A^{r_i - 1}` for `i = 1..m`.
    pub fn extension_state(&self, r: &RVector) -> Result<Mat> {
        if r.len() != self.m() {
            return Err(Error::ShapeMismatch(format!(
                "R has {} entries for {} component sequences",
                r.len(),
                self.m()
            )));
        }
        let data = extension_rows(
            self.field(),
            self.state.data(),
            self.n(),
            r.parts(),
            &self.recurrence,
        );
        Mat::new(self.field(), r.sum(), self.n(), data)
    }

    pub fn extension_dimension(&self, r: &RVector) -> Result<usize> {
        Ok(self.extension_state(r)?.rank())
    }

    /// The first `count` vectors `W(0), W(1), ...` (as columns).
    pub fn words(&self, count: usize) -> Vec<Vec<u32>> {
        let f = self.field();
        let mut rows: Vec<Vec<u32>> = self.state.to_rows();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(rows.iter().map(|r| r[0]).collect());
            for r in rows.iter_mut() {
                shift_row(f, r, &self.recurrence);
            }
        }
        out
    }

    /// The first `count` terms of component sequence `i` (1-based).
    pub fn component_samples(&self, i: usize, count: usize) -> Vec<FieldElement> {
        let f = self.field();
        let mut row = self.state.row(i - 1).to_vec();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(f.elem(row[0]));
            shift_row(f, &mut row, &self.recurrence);
        }
        out
    }

    /// The lexicographically least state in the shift orbit. Two states
    /// describe the same multisequence up to shift iff their canonical forms
    /// agree.
    pub fn canonical(&self) -> Result<MultiseqState> {
        let period = self.period();
        if period > CANONICAL_ORBIT_LIMIT {
            return Err(Error::OrbitTooLarge(period));
        }
        let f = self.field();
        let n = self.n();
        let mut cur = self.state.data().to_vec();
        let mut best = cur.clone();
        for _ in 1..period {
            for row in cur.chunks_mut(n) {
                shift_row(f, row, &self.recurrence);
            }
            if cur < best {
                best.clone_from(&cur);
            }
        }
        let state = Mat::new(f, self.m(), n, best).expect("same shape");
        Ok(self.replace_state(state))
    }
}

/// Raw extension rows for a row-major `m x n` state.
pub(crate) fn extension_rows(
    f: PrimeField,
    state: &[u32],
    n: usize,
    parts: &[usize],
    recurrence: &[u32],
) -> Vec<u32> {
    let mut out = Vec::with_capacity(parts.iter().sum::<usize>() * n);
    let mut row = vec![0u32; n];
    for (i, &ri) in parts.iter().enumerate() {
        row.copy_from_slice(&state[i * n..(i + 1) * n]);
        for j in 0..ri {
            if j > 0 {
                shift_row(f, &mut row, recurrence);
            }
            out.extend_from_slice(&row);
        }
    }
    out
}

/// Minimal polynomial of a scalar sequence by Berlekamp-Massey.
///
/// Fails with `InsufficientSamples` when fewer than `2L` samples were given
/// for the detected linear complexity `L`, since the answer is then not
/// determined by the data.
pub fn minimal_poly_oracle(field: PrimeField, samples: &[FieldElement]) -> Result<Poly> {
    let f = field;
    let s: Vec<u32> = samples
        .iter()
        .map(|e| {
            if e.field() != field {
                Err(Error::FieldMismatch(field.modulus(), e.field().modulus()))
            } else {
                Ok(e.value())
            }
        })
        .collect::<Result<_>>()?;
    let mut c = vec![1u32];
    let mut b = vec![1u32];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_d = 1u32;
    for idx in 0..s.len() {
        let mut d = s[idx];
        for i in 1..=l.min(c.len() - 1) {
            d = f.add(d, f.mul(c[i], s[idx - i]));
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = f.mul(d, f.inv(last_d)?);
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] = f.sub(c[i + shift], f.mul(coef, bi));
        }
        if 2 * l <= idx {
            l = idx + 1 - l;
            b = prev;
            last_d = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    if s.len() < 2 * l {
        return Err(Error::InsufficientSamples {
            got: s.len(),
            complexity: l,
            needed: 2 * l,
        });
    }
    c.resize(l + 1, 0);
    let coeffs: Vec<u32> = (0..=l).map(|j| c[l - j]).collect();
    Ok(Poly::new(f, coeffs))
}
