//! Scalar Hankel matrices and their full-rank census.
//!
//! An `n x n` Hankel matrix is constant along anti-diagonals and is fixed by
//! `a = (a_1, ..., a_{2n-1})` via `H[i][j] = a_{i+j-1}`. It has full rank
//! exactly when the two-row state `[e_{2n-1}; a]` has an `(n-1, n)`-extension
//! of maximum dimension.

use std::ops::Range;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{rank_in_place, Mat};
use crate::multiseq::{MultiseqState, RVector};
use crate::oracle::run_sharded;
use crate::poly::Poly;

/// Largest search space [`enumerate_fullrank_hankel`] walks.
pub const HANKEL_ENUM_LIMIT: u128 = 1 << 22;

/// The defining vector `(a_1, ..., a_{2n-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelVec {
    field: PrimeField,
    a: Vec<u32>,
}

impl HankelVec {
    pub fn new(field: PrimeField, a: Vec<u32>) -> Result<HankelVec> {
        if a.len().is_multiple_of(2) {
            return Err(Error::EvenLength);
        }
        let a = a.into_iter().map(|v| v % field.modulus()).collect();
        Ok(HankelVec { field, a })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[u32] {
        &self.a
    }

    /// Side length of the Hankel matrix.
    pub fn n(&self) -> usize {
        self.a.len().div_ceil(2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&v| v == 0)
    }
}

/// `H[i][j] = a_{i+j-1}` (1-based).
pub fn hankel_from_vector(a: &HankelVec) -> Mat {
    let n = a.n();
    let data = (0..n)
        .flat_map(|i| (0..n).map(move |j| a.a[i + j]))
        .collect();
    Mat::new(a.field, n, n, data).expect("n x n")
}

/// Full rank of the Hankel matrix of `a`, decided through the maximum
/// dimension of the `(n-1, n)`-extension of `[e_{2n-1}; a]` with minimal
/// polynomial `p`.
pub fn fullrank_via_extension(a: &HankelVec, p: &Poly) -> Result<bool> {
    let len = a.a.len();
    if p.degree() != Some(len) {
        return Err(Error::BadDegree {
            expected: len,
            got: p.degree().unwrap_or(0),
        });
    }
    if !p.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if a.is_zero() {
        return Ok(false);
    }
    let n = a.n();
    if n == 1 {
        // R = (0, 1) has an empty first part; only the row a itself remains
        return Ok(true);
    }
    let mut e = vec![0u32; len];
    e[len - 1] = 1;
    let state = Mat::from_rows(a.field, &[e, a.a.clone()])?;
    let s = MultiseqState::with_primitive(state, p.clone())?;
    let r = RVector::new(vec![n - 1, n])?;
    Ok(s.extension_dimension(&r)? == len)
}

/// `q^{2n-1} - q^{2n-2}`.
pub fn count_fullrank_hankel(q: u32, n: usize) -> Result<BigUint> {
    PrimeField::new(q)?;
    if n == 0 {
        return Err(Error::BadRange("n must be at least 1".into()));
    }
    let q = BigUint::from(q);
    let hi = q.pow((2 * n - 1) as u32);
    let lo = q.pow((2 * n - 2) as u32);
    Ok(hi - lo)
}

/// Full-rank count over the vectors with base-`q` index in `range`.
pub fn fullrank_hankel_in_range(field: PrimeField, n: usize, range: Range<u64>) -> u64 {
    let q = u64::from(field.modulus());
    let len = 2 * n - 1;
    let mut a = vec![0u32; len];
    let mut buf = vec![0u32; n * n];
    let mut count = 0;
    for idx in range {
        let mut v = idx;
        for slot in a.iter_mut() {
            *slot = (v % q) as u32;
            v /= q;
        }
        for i in 0..n {
            buf[i * n..(i + 1) * n].copy_from_slice(&a[i..i + n]);
        }
        if rank_in_place(&mut buf, n, n, field) == n {
            count += 1;
        }
    }
    count
}

/// Counts full-rank Hankel matrices by walking all `q^{2n-1}` vectors,
/// split into `jobs` shards.
pub fn enumerate_fullrank_hankel(q: u32, n: usize, jobs: usize) -> Result<BigUint> {
    let field = PrimeField::new(q)?;
    if n == 0 {
        return Err(Error::BadRange("n must be at least 1".into()));
    }
    let space = u128::from(q)
        .checked_pow((2 * n - 1) as u32)
        .filter(|&s| s <= HANKEL_ENUM_LIMIT)
        .ok_or(Error::TooLarge(
            u128::from(q).saturating_pow((2 * n - 1) as u32),
        ))?;
    let total = run_sharded(space as u64, jobs, |r| {
        fullrank_hankel_in_range(field, n, r)
    });
    Ok(BigUint::from(total))
}
