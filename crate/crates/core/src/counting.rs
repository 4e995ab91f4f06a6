//! Closed-form counts, exact over arbitrary-precision integers.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::multiseq::RVector;

fn qpow(q: u32, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

fn check_q(q: u32) -> Result<()> {
    PrimeField::new(q).map(|_| ())
}

/// `prod_{i in range} (q^n - q^i)`.
fn gap_product(q: u32, n: usize, range: impl Iterator<Item = usize>) -> BigUint {
    let qn = qpow(q, n);
    range.fold(BigUint::one(), |acc, i| acc * (&qn - qpow(q, i)))
}

/// Number of `l`-dimensional subspaces of `F_q^m`.
pub fn grassmannian_size(l: usize, m: usize, q: u32) -> Result<BigUint> {
    check_q(q)?;
    if l > m {
        return Err(Error::BadRange(format!("l = {l} exceeds m = {m}")));
    }
    let num = gap_product(q, m, 0..l);
    let den = gap_product(q, l, 0..l);
    Ok(num / den)
}

/// Multisequences in `F_q^m` with a fixed primitive minimal polynomial of
/// degree `n` and dimension `l`, counted up to shift. Zero for `l = 0`, since
/// the zero multisequence has minimal polynomial 1.
pub fn count_by_dimension(l: usize, m: usize, n: usize, q: u32) -> Result<BigUint> {
    check_q(q)?;
    if n == 0 || m == 0 || l > m.min(n) {
        return Err(Error::BadRange(format!(
            "need 0 <= l <= min(m, n) with m, n >= 1; got l = {l}, m = {m}, n = {n}"
        )));
    }
    if l == 0 {
        return Ok(BigUint::from(0u32));
    }
    Ok(grassmannian_size(l, m, q)? * gap_product(q, n, 1..l))
}

/// Multisequences with linearly independent component sequences:
/// `(q^n - q)(q^n - q^2)...(q^n - q^{m-1})`.
pub fn count_independent(m: usize, n: usize, q: u32) -> Result<BigUint> {
    check_q(q)?;
    if m == 0 || m > n {
        return Err(Error::BadRange(format!(
            "need 1 <= m <= n; got m = {m}, n = {n}"
        )));
    }
    Ok(gap_product(q, n, 1..m))
}

/// Multisequences whose R-extension has maximum dimension `r = sum R`:
/// `prod_{i=r-m+1}^{r-1} (q^n - q^i)`. Depends on `R` only through `r` and `m`.
pub fn count_max_extension(r: &RVector, n: usize, q: u32) -> Result<BigUint> {
    check_q(q)?;
    let (m, rs) = (r.len(), r.sum());
    if rs > n {
        return Err(Error::BadRange(format!("sum R = {rs} exceeds n = {n}")));
    }
    Ok(gap_product(q, n, rs - m + 1..rs))
}

/// Extended multisequences over all compositions of `r` into `m` parts:
/// `C(r-1, r-m)` times the maximum-extension count.
pub fn count_nr(m: usize, r: usize, n: usize, q: u32) -> Result<BigUint> {
    check_q(q)?;
    if m == 0 || m > r || r > n {
        return Err(Error::BadRange(format!(
            "need 1 <= m <= r <= n; got m = {m}, r = {r}, n = {n}"
        )));
    }
    Ok(binomial(r - 1, r - m) * gap_product(q, n, r - m + 1..r))
}

/// LFSRs with `b` delay blocks of width `m` realizing a fixed primitive
/// characteristic polynomial of degree `n = m b`.
pub fn count_lfsr(m: usize, b: usize, q: u32) -> Result<BigUint> {
    check_q(q)?;
    if m == 0 || b == 0 {
        return Err(Error::BadRange(format!(
            "need m, b >= 1; got m = {m}, b = {b}"
        )));
    }
    let n = m * b;
    Ok(gap_product(q, n, (1..m).map(|i| n - i)))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

/// A formula value, optionally set against an oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    #[serde(serialize_with = "big_number")]
    pub formula: BigUint,
    #[serde(serialize_with = "opt_big_number")]
    pub oracle: Option<BigUint>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub parameters: serde_json::Value,
}

impl CountReport {
    pub fn new(
        formula: BigUint,
        oracle: Option<BigUint>,
        parameters: serde_json::Value,
    ) -> CountReport {
        let matches = oracle.as_ref().map(|o| o == &formula);
        CountReport {
            formula,
            oracle,
            matches,
            parameters,
        }
    }
}

/// Emits a `BigUint` as a bare JSON number.
pub(crate) fn big_number<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    let num: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
    num.serialize(s)
}

fn opt_big_number<S: Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => big_number(v, s),
        None => s.serialize_none(),
    }
}
