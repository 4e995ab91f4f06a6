//! Brute-force recounts of the closed-form counts.
//!
//! Each oracle walks a search space by base-`q` index, split into disjoint
//! ranges whose partial counts are summed. Matrix-state oracles count
//! qualifying states and divide by the orbit size `q^n - 1`; a remainder is
//! reported as an error rather than rounded away.

use std::ops::Range;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{rank_in_place, Mat};
use crate::multiseq::{extension_rows, RVector};
use crate::poly::{group_order, Poly};

/// Largest search space any oracle walks.
pub const ORACLE_LIMIT: u128 = 1 << 22;

/// Above this many states [`oracle_max_extension`] switches to the pinned walk.
pub const FULL_WALK_LIMIT: u128 = 1 << 18;

/// Splits `0..total` into contiguous ranges, several per job.
pub fn shards(total: u64, jobs: usize) -> Vec<Range<u64>> {
    let pieces = (jobs.max(1) as u64 * 8).min(total.max(1));
    let step = total.div_ceil(pieces).max(1);
    (0..pieces)
        .map(|i| (i * step).min(total)..((i + 1) * step).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Sums `count` over the shards of `0..total`. `jobs = 1` stays on the
/// calling thread; `jobs = 0` uses every available core.
pub fn run_sharded<F>(total: u64, jobs: usize, count: F) -> u64
where
    F: Fn(Range<u64>) -> u64 + Sync + Send,
{
    if jobs == 1 {
        return count(0..total);
    }
    let work = || shards(total, jobs).into_par_iter().map(&count).sum();
    if jobs == 0 {
        return work();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

fn space_size(q: u32, digits: usize) -> Result<u64> {
    let space = u128::from(q)
        .checked_pow(digits as u32)
        .unwrap_or(u128::MAX);
    if space > ORACLE_LIMIT {
        return Err(Error::TooLarge(space));
    }
    Ok(space as u64)
}

fn decode(mut idx: u64, q: u64, out: &mut [u32]) {
    for slot in out.iter_mut() {
        *slot = (idx % q) as u32;
        idx /= q;
    }
}

fn orbit_quotient(count: u64, orbit: u128) -> Result<BigUint> {
    let orbit = orbit as u64;
    if !count.is_multiple_of(orbit) {
        return Err(Error::NonIntegralOrbitQuotient { count, orbit });
    }
    Ok(BigUint::from(count / orbit))
}

/// Orbits of nonzero `m x n` states over `field` whose rank is `l`.
pub fn oracle_by_dimension(
    l: usize,
    m: usize,
    n: usize,
    field: PrimeField,
    jobs: usize,
) -> Result<BigUint> {
    if m == 0 || n == 0 {
        return Err(Error::BadRange("m and n must be at least 1".into()));
    }
    let space = space_size(field.modulus(), m * n)?;
    let q = u64::from(field.modulus());
    let count = run_sharded(space, jobs, |range| {
        let mut buf = vec![0u32; m * n];
        let mut hits = 0;
        for idx in range.filter(|&i| i != 0) {
            decode(idx, q, &mut buf);
            if rank_in_place(&mut buf, m, n, field) == l {
                hits += 1;
            }
        }
        hits
    });
    orbit_quotient(count, group_order(field, n)?)
}

fn max_extension_hits(
    field: PrimeField,
    n: usize,
    parts: &[usize],
    recurrence: &[u32],
    range: Range<u64>,
    pinned: bool,
) -> u64 {
    let m = parts.len();
    let r: usize = parts.iter().sum();
    let q = u64::from(field.modulus());
    let mut state = vec![0u32; m * n];
    if pinned {
        state[n - 1] = 1;
    }
    let free = if pinned { n } else { 0 };
    let mut hits = 0;
    for idx in range {
        decode(idx, q, &mut state[free..]);
        let mut ext = extension_rows(field, &state, n, parts, recurrence);
        if rank_in_place(&mut ext, r, n, field) == r {
            hits += 1;
        }
    }
    hits
}

/// Walks all nonzero `m x n` states and divides by the orbit size.
pub fn oracle_max_extension_full(r: &RVector, p: &Poly, jobs: usize) -> Result<BigUint> {
    let (field, n, recurrence) = primitive_parts(p)?;
    let space = space_size(field.modulus(), r.len() * n)?;
    let count = run_sharded(space, jobs, |range| {
        let start = range.start.max(1);
        max_extension_hits(
            field,
            n,
            r.parts(),
            &recurrence,
            start..range.end.max(start),
            false,
        )
    });
    orbit_quotient(count, group_order(field, n)?)
}

/// Fixes the first row to `e_n`. A maximum-dimension extension has a
/// nonzero first row, and its orbit meets that row exactly once, so the
/// count needs no division.
pub fn oracle_max_extension_pinned(r: &RVector, p: &Poly, jobs: usize) -> Result<BigUint> {
    let (field, n, recurrence) = primitive_parts(p)?;
    let space = space_size(field.modulus(), (r.len() - 1) * n)?;
    let count = run_sharded(space, jobs, |range| {
        max_extension_hits(field, n, r.parts(), &recurrence, range, true)
    });
    Ok(BigUint::from(count))
}

/// Orbits whose R-extension has dimension `sum R`, using the full walk up
/// to [`FULL_WALK_LIMIT`] states and the pinned walk beyond.
pub fn oracle_max_extension(r: &RVector, p: &Poly, jobs: usize) -> Result<BigUint> {
    let digits = r.len() * p.degree().unwrap_or(0);
    let full = u128::from(p.field().modulus()).checked_pow(digits as u32);
    match full {
        Some(s) if s <= FULL_WALK_LIMIT => oracle_max_extension_full(r, p, jobs),
        _ => oracle_max_extension_pinned(r, p, jobs),
    }
}

fn primitive_parts(p: &Poly) -> Result<(PrimeField, usize, Vec<u32>)> {
    if !p.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let n = p.degree().ok_or(Error::DegreeZero)?;
    Ok((p.field(), n, p.recurrence_coeffs()?))
}

/// All compositions of `r` into `m` positive parts, in lexicographic order.
pub fn compositions(r: usize, m: usize) -> Vec<RVector> {
    fn go(left: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<RVector>) {
        if slots == 1 {
            prefix.push(left);
            out.push(RVector::new(prefix.clone()).expect("positive parts"));
            prefix.pop();
            return;
        }
        for first in 1..=left - (slots - 1) {
            prefix.push(first);
            go(left - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m >= 1 && r >= m {
        go(r, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Sum of [`oracle_max_extension`] over every composition of `r` into `m`
/// parts.
pub fn oracle_nr(m: usize, r: usize, p: &Poly, jobs: usize) -> Result<BigUint> {
    if m == 0 || m > r {
        return Err(Error::BadRange(format!(
            "need 1 <= m <= r; got m = {m}, r = {r}"
        )));
    }
    compositions(r, m)
        .iter()
        .map(|rv| oracle_max_extension(rv, p, jobs))
        .sum()
}

/// Block tuples `(B_0, ..., B_{b-1})` whose m-companion matrix has
/// characteristic polynomial `p`.
pub fn oracle_lfsr(m: usize, b: usize, p: &Poly, jobs: usize) -> Result<BigUint> {
    let field = p.field();
    let n = m * b;
    if m == 0 || b == 0 {
        return Err(Error::BadRange("m and b must be at least 1".into()));
    }
    if p.degree() != Some(n) {
        return Err(Error::BadDegree {
            expected: n,
            got: p.degree().unwrap_or(0),
        });
    }
    let space = space_size(field.modulus(), m * m * b)?;
    let q = u64::from(field.modulus());
    let count = run_sharded(space, jobs, |range| {
        let mut data = vec![0u32; n * n];
        for i in 0..n - m {
            data[i * n + i + m] = 1;
        }
        let mut blocks = vec![0u32; m * n];
        let mut hits = 0;
        for idx in range {
            decode(idx, q, &mut blocks);
            data[(n - m) * n..].copy_from_slice(&blocks);
            let a = Mat::new(field, n, n, data.clone()).expect("n x n");
            if &a.charpoly().expect("square") == p {
                hits += 1;
            }
        }
        hits
    });
    Ok(BigUint::from(count))
}

/// `N(G, k)` along the road of `r` for target degree `n`: each point `G`
/// is counted against `ladder(k)` with `k = n - (sum R - sum G)`.
pub fn road_counts<'a>(
    r: &RVector,
    n: usize,
    ladder: impl Fn(usize) -> Option<&'a Poly>,
    jobs: usize,
) -> Result<Vec<(RVector, usize, BigUint)>> {
    if n < r.sum() {
        return Err(Error::BadRange(format!("n = {n} is below r = {}", r.sum())));
    }
    crate::road::road(r)
        .into_iter()
        .map(|g| {
            let k = n - (r.sum() - g.sum());
            let p = ladder(k)
                .ok_or_else(|| Error::BadLadder(format!("no polynomial of degree {k}")))?;
            let count = oracle_max_extension(&g, p, jobs)?;
            Ok((g, k, count))
        })
        .collect()
}
