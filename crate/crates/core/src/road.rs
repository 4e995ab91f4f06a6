//! The Φ map, R-roads and their backward traversal.
//!
//! Φ decrements the first coordinate attaining the maximum. Iterating Φ from
//! `R` reaches `(1, ..., 1)` after `r - m` steps; that path is the R-road.
//! Positions are 1-based throughout.

use crate::error::{Error, Result};
use crate::multiseq::RVector;

/// Decrements the first coordinate attaining the maximum.
pub fn phi(g: &RVector) -> Result<RVector> {
    if g.is_ones() {
        return Err(Error::AtOnes);
    }
    let max = g.max();
    let c = g
        .parts()
        .iter()
        .position(|&x| x == max)
        .expect("max is attained");
    let mut out = g.clone();
    out.parts_mut()[c] -= 1;
    Ok(out)
}

/// `[R, Φ(R), Φ²(R), ..., (1, ..., 1)]`, of length `r - m + 1`.
pub fn road(r: &RVector) -> Vec<RVector> {
    let mut out = vec![r.clone()];
    let mut cur = r.clone();
    while let Ok(next) = phi(&cur) {
        out.push(next.clone());
        cur = next;
    }
    out
}

/// Active coordinate of a road point `g != r`, 1-based, without checking
/// road membership.
pub(crate) fn active_coordinate_unchecked(g: &RVector, r: &RVector) -> Option<usize> {
    let gmax = g.max();
    let below = |target: usize| {
        (0..g.len())
            .rev()
            .find(|&i| g.parts()[i] == target && g.parts()[i] < r.parts()[i])
    };
    gmax.checked_sub(1)
        .and_then(below)
        .or_else(|| below(gmax))
        .map(|i| i + 1)
}

/// The coordinate incremented when walking the road of `r` backwards from
/// `g`: the largest `c` with `g_c = G_max - 1` and `g_c < r_c`, otherwise the
/// largest `c` with `g_c = G_max` and `g_c < r_c`.
pub fn active_coordinate(g: &RVector, r: &RVector) -> Result<usize> {
    if g == r {
        return Err(Error::AlreadyAtR);
    }
    if g.len() != r.len() || !road(r).contains(g) {
        return Err(Error::NotOnRoad);
    }
    active_coordinate_unchecked(g, r).ok_or(Error::NotOnRoad)
}

/// Walks from `(1, ..., 1)` to `r`, emitting each point together with its
/// active coordinate before incrementing it.
pub fn backward_traverse(r: &RVector) -> Vec<(RVector, usize)> {
    let mut g = RVector::ones(r.len()).expect("r is non-empty");
    let mut out = Vec::with_capacity(r.sum() - r.len());
    while &g != r {
        let c = active_coordinate_unchecked(&g, r)
            .expect("every road point below R has an active coordinate");
        out.push((g.clone(), c));
        g.parts_mut()[c - 1] += 1;
    }
    out
}
