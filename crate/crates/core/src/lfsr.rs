//! Word-based LFSRs with m-input m-output delay blocks.
//!
//! An LFSR with `b` delay blocks of width `m` satisfies
//! `W(k+b) = B_0 W(k) + B_1 W(k+1) + ... + B_{b-1} W(k+b-1)`. Its state is the
//! column stack `(W(k); W(k+1); ...; W(k+b-1))` of length `n = m b`, and one
//! clock multiplies it by the m-companion matrix
//!
//! ```text
//! [ 0   I   0  ...  0      ]
//! [ 0   0   I  ...  0      ]
//! [          ...           ]
//! [ B_0 B_1 B_2 ... B_{b-1}]
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Mat;
use crate::multiseq::MultiseqState;
use crate::poly::{group_order, Poly};

/// Walk bound for [`period`].
pub const PERIOD_WALK_LIMIT: u128 = 1 << 24;

/// Largest `q^n - 1` for which [`verify_lfsr`] also walks the period.
pub const VERIFY_PERIOD_LIMIT: u128 = 1 << 16;

/// Feedback blocks `B_0, ..., B_{b-1}`, each `m x m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct LfsrSpec {
    field: PrimeField,
    m: usize,
    blocks: Vec<Mat>,
}

/// Wire form: `{"q": p, "m": m, "b": b, "blocks": [matrix, ...]}`.
#[derive(Serialize, Deserialize)]
struct SpecJson {
    q: u32,
    m: usize,
    b: usize,
    blocks: Vec<Mat>,
}

impl TryFrom<SpecJson> for LfsrSpec {
    type Error = Error;

    fn try_from(j: SpecJson) -> Result<LfsrSpec> {
        if j.blocks.len() != j.b {
            return Err(Error::ShapeMismatch(format!(
                "b = {} but {} blocks given",
                j.b,
                j.blocks.len()
            )));
        }
        let spec = LfsrSpec::new(PrimeField::new(j.q)?, j.m, j.blocks)?;
        Ok(spec)
    }
}

impl From<LfsrSpec> for SpecJson {
    fn from(s: LfsrSpec) -> SpecJson {
        SpecJson {
            q: s.field.modulus(),
            m: s.m,
            b: s.blocks.len(),
            blocks: s.blocks,
        }
    }
}

impl LfsrSpec {
    pub fn new(field: PrimeField, m: usize, blocks: Vec<Mat>) -> Result<LfsrSpec> {
        if m == 0 || blocks.is_empty() {
            return Err(Error::ShapeMismatch(
                "need m >= 1 and at least one block".into(),
            ));
        }
        for blk in &blocks {
            if blk.field() != field {
                return Err(Error::FieldMismatch(field.modulus(), blk.field().modulus()));
            }
            if blk.rows() != m || blk.cols() != m {
                return Err(Error::ShapeMismatch(format!(
                    "block is {}x{}, expected {m}x{m}",
                    blk.rows(),
                    blk.cols()
                )));
            }
        }
        Ok(LfsrSpec { field, m, blocks })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Word width.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of delay blocks.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// State length `m b`.
    pub fn n(&self) -> usize {
        self.m * self.blocks.len()
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    /// The dense m-companion transition matrix.
    pub fn transition(&self) -> MCompanion {
        let (m, n) = (self.m, self.n());
        let mut data = vec![0u32; n * n];
        for i in 0..n - m {
            data[i * n + i + m] = 1;
        }
        for (blk_idx, blk) in self.blocks.iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    data[(n - m + i) * n + blk_idx * m + j] = blk.get(i, j);
                }
            }
        }
        MCompanion {
            mat: Mat::new(self.field, n, n, data).expect("square"),
            m,
        }
    }

    /// One clock: `(W(k); ...; W(k+b-1)) -> (W(k+1); ...; W(k+b))`, using the
    /// shift plus one block-row product.
    pub fn step(&self, state: &[u32]) -> Result<Vec<u32>> {
        let (m, n) = (self.m, self.n());
        if state.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "state of length {} for n = {n}",
                state.len()
            )));
        }
        let f = self.field;
        let mut word = vec![0u32; m];
        for (blk_idx, blk) in self.blocks.iter().enumerate() {
            let w = &state[blk_idx * m..(blk_idx + 1) * m];
            for (i, out) in word.iter_mut().enumerate() {
                for (j, &wj) in w.iter().enumerate() {
                    *out = f.add(*out, f.mul(blk.get(i, j), wj));
                }
            }
        }
        let mut next = Vec::with_capacity(n);
        next.extend_from_slice(&state[m..]);
        next.extend_from_slice(&word);
        Ok(next)
    }

    /// The first `count` output words `W(k), W(k+1), ...` from `state`.
    pub fn words(&self, state: &[u32], count: usize) -> Result<Vec<Vec<u32>>> {
        let mut cur = state.to_vec();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(cur[..self.m].to_vec());
            cur = self.step(&cur)?;
        }
        Ok(out)
    }
}

/// An `n x n` matrix with the m-companion block structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCompanion {
    mat: Mat,
    m: usize,
}

impl MCompanion {
    /// Checks that the top `(b-1) m` rows are exactly the block shift.
    pub fn from_matrix(mat: Mat, m: usize) -> Result<MCompanion> {
        let n = mat.rows();
        if !mat.is_square() || m == 0 || n == 0 || !n.is_multiple_of(m) {
            return Err(Error::NotMCompanion);
        }
        for i in 0..n - m {
            for j in 0..n {
                let expected = u32::from(j == i + m);
                if mat.get(i, j) != expected {
                    return Err(Error::NotMCompanion);
                }
            }
        }
        Ok(MCompanion { mat, m })
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b(&self) -> usize {
        self.mat.rows() / self.m
    }
}

/// `[M; M A; ...; M A^{b-1}]`, an `n x n` matrix when `n = m b`.
pub fn stacked_state(s: &MultiseqState, b: usize) -> Result<Mat> {
    if b == 0 || s.m() * b != s.n() {
        return Err(Error::ShapeMismatch(format!(
            "m = {} times b = {b} must equal n = {}",
            s.m(),
            s.n()
        )));
    }
    let parts: Vec<Mat> = (0..b).map(|j| s.step(j as i64).state().clone()).collect();
    let refs: Vec<&Mat> = parts.iter().collect();
    Mat::vstack(&refs)
}

/// The transition matrix `M* A (M*)^{-1}` of the unique LFSR that generates
/// `s`, where `M*` is the stacked state.
pub fn transition_from_multiseq(s: &MultiseqState) -> Result<MCompanion> {
    if !s.n().is_multiple_of(s.m()) {
        return Err(Error::ShapeMismatch(format!(
            "n = {} is not a multiple of m = {}",
            s.n(),
            s.m()
        )));
    }
    let stacked = stacked_state(s, s.n() / s.m())?;
    let inv = stacked.inverse().map_err(|e| match e {
        Error::Singular => Error::ExtensionDeficient,
        other => other,
    })?;
    let a = stacked.mul(s.companion())?.mul(&inv)?;
    MCompanion::from_matrix(a, s.m())
}

/// Slices the bottom block row into `B_0, ..., B_{b-1}`.
pub fn feedback_blocks(a: &MCompanion) -> Result<LfsrSpec> {
    let (m, n) = (a.m, a.mat.rows());
    let blocks = (0..a.b())
        .map(|k| a.mat.submatrix(n - m..n, k * m..(k + 1) * m))
        .collect::<Result<Vec<_>>>()?;
    LfsrSpec::new(a.mat.field(), m, blocks)
}

/// LFSR state `(W(0); ...; W(b-1))` of a multisequence, read from the
/// columns of its matrix state.
pub fn lfsr_state_of(s: &MultiseqState, b: usize) -> Result<Vec<u32>> {
    if b > s.n() {
        return Err(Error::ShapeMismatch(format!(
            "b = {b} exceeds n = {}",
            s.n()
        )));
    }
    Ok((0..b).flat_map(|j| s.state().column(j)).collect())
}

/// Least `t > 0` with `A^t v = v`, by iteration.
pub fn period(spec: &LfsrSpec, state: &[u32]) -> Result<u64> {
    if state.iter().all(|&v| v == 0) {
        return Err(Error::ZeroState);
    }
    let space = group_order(spec.field, spec.n()).map_err(|_| Error::OrbitTooLarge(u128::MAX))?;
    if space > PERIOD_WALK_LIMIT {
        return Err(Error::OrbitTooLarge(space));
    }
    let mut cur = spec.step(state)?;
    let mut t = 1u64;
    while cur != state {
        // more than q^n - 1 steps: the start is not on a cycle
        if t as u128 > space {
            return Err(Error::Singular);
        }
        cur = spec.step(&cur)?;
        t += 1;
    }
    Ok(t)
}

/// Findings of [`verify_lfsr`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LfsrReport {
    pub structure_ok: bool,
    #[serde(serialize_with = "poly_text")]
    pub charpoly: Poly,
    pub charpoly_matches: bool,
    pub is_primitive: bool,
    /// Period from the state `e_1`, when `q^n - 1` is small enough to walk.
    pub period_checked: Option<u64>,
    pub expected_period: Option<u128>,
}

fn poly_text<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl LfsrReport {
    pub fn passed(&self) -> bool {
        let period_ok = match (self.period_checked, self.expected_period) {
            (Some(t), Some(e)) => t as u128 == e,
            (None, _) => true,
            (Some(_), None) => false,
        };
        self.structure_ok && self.charpoly_matches && self.is_primitive && period_ok
    }
}

/// Checks that `spec` realizes the characteristic polynomial `p` and, at
/// small sizes, that its period is `q^n - 1`.
pub fn verify_lfsr(spec: &LfsrSpec, p: &Poly) -> LfsrReport {
    let a = spec.transition();
    let structure_ok = MCompanion::from_matrix(a.mat.clone(), spec.m).is_ok();
    let charpoly = a.mat.charpoly().expect("square");
    let charpoly_matches = &charpoly == p;
    let is_primitive = p.is_primitive();
    let expected = group_order(spec.field, spec.n()).ok();
    let period_checked = match expected {
        Some(e) if e <= VERIFY_PERIOD_LIMIT => {
            let mut e1 = vec![0u32; spec.n()];
            e1[0] = 1;
            period(spec, &e1).ok()
        }
        _ => None,
    };
    LfsrReport {
        structure_ok,
        charpoly,
        charpoly_matches,
        is_primitive,
        period_checked,
        expected_period: expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn p2(t: &str) -> Poly {
        Poly::parse(f2(), t).unwrap()
    }

    fn m2(rows: &[&[u32]]) -> Mat {
        Mat::from_rows(f2(), rows).unwrap()
    }

    fn mw() -> MultiseqState {
        MultiseqState::new(
            m2(&[
                &[0, 0, 0, 0, 0, 1],
                &[0, 1, 0, 1, 1, 0],
                &[0, 0, 0, 1, 1, 1],
            ]),
            p2("s^6+s+1"),
        )
        .unwrap()
    }

    fn a33() -> Mat {
        m2(&[
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
            &[1, 0, 1, 1, 0, 0],
            &[1, 1, 0, 1, 0, 1],
            &[1, 1, 1, 1, 0, 1],
        ])
    }

    #[test]
    fn stacked() {
        let expected = m2(&[
            &[0, 0, 0, 0, 0, 1],
            &[0, 1, 0, 1, 1, 0],
            &[0, 0, 0, 1, 1, 1],
            &[0, 0, 0, 0, 1, 0],
            &[1, 0, 1, 1, 0, 1],
            &[0, 0, 1, 1, 1, 0],
        ]);
        assert_eq!(stacked_state(&mw(), 2).unwrap(), expected);
        assert_eq!(expected.rank(), 6);
        assert!(matches!(
            stacked_state(&mw(), 3),
            Err(Error::ShapeMismatch(_))
        ));
        let single = MultiseqState::new(m2(&[&[1, 0, 1]]), p2("s^3+s+1")).unwrap();
        assert_eq!(stacked_state(&single, 3).unwrap().rows(), 3);
    }

    #[test]
    fn transition_and_blocks() {
        let a = transition_from_multiseq(&mw()).unwrap();
        assert_eq!(a.mat(), &a33());
        let spec = feedback_blocks(&a).unwrap();
        assert_eq!(spec.blocks()[0], m2(&[&[1, 0, 1], &[1, 1, 0], &[1, 1, 1]]));
        assert_eq!(spec.blocks()[1], m2(&[&[1, 0, 0], &[1, 0, 1], &[1, 0, 1]]));
        assert_eq!(spec.transition(), a);
        assert_eq!(a.mat().charpoly().unwrap(), p2("s^6+s+1"));
    }

    #[test]
    fn width_one_gives_the_companion() {
        let p = p2("s^4+s+1");
        let s = MultiseqState::new(m2(&[&[0, 1, 1, 0]]), p.clone()).unwrap();
        let a = transition_from_multiseq(&s).unwrap();
        assert_eq!(a.mat(), &Mat::companion(&p).unwrap().transpose());
    }

    #[test]
    fn deficient_extension_is_rejected() {
        // rows x and xA: the stacked state repeats a row
        let p = p2("s^4+s+1");
        let x = vec![1, 0, 0, 1];
        let xa = Mat::companion(&p).unwrap().vec_mul(&x).unwrap();
        let s = MultiseqState::new(Mat::from_rows(f2(), &[x, xa]).unwrap(), p).unwrap();
        assert_eq!(transition_from_multiseq(&s), Err(Error::ExtensionDeficient));
    }

    #[test]
    fn structure_check() {
        assert_eq!(
            MCompanion::from_matrix(Mat::identity(f2(), 4), 2),
            Err(Error::NotMCompanion)
        );
        assert!(MCompanion::from_matrix(a33(), 3).is_ok());
        assert_eq!(MCompanion::from_matrix(a33(), 4), Err(Error::NotMCompanion));
        let spec = LfsrSpec::new(f2(), 1, vec![m2(&[&[1]]), m2(&[&[1]])]).unwrap();
        assert_eq!(spec.transition().mat(), &m2(&[&[0, 1], &[1, 1]]));
        let blocks = feedback_blocks(&spec.transition()).unwrap();
        assert_eq!(blocks, spec);
    }

    #[test]
    fn stepping() {
        let spec = feedback_blocks(&transition_from_multiseq(&mw()).unwrap()).unwrap();
        assert_eq!(spec.step(&[0; 6]).unwrap(), vec![0; 6]);
        let st = lfsr_state_of(&mw(), 2).unwrap();
        let next = spec.step(&st).unwrap();
        assert_eq!(&next[3..], mw().state().column(2).as_slice());
        // block formula equals the dense product
        let dense = spec.transition().mat().mul_vec(&st).unwrap();
        assert_eq!(next, dense);
        assert!(spec.step(&[0; 5]).is_err());
    }

    #[test]
    fn scalar_case_reproduces_the_recurrence() {
        // s^4 + s + 1: S(k+4) = S(k+1) + S(k)
        let spec = LfsrSpec::new(
            f2(),
            1,
            vec![m2(&[&[1]]), m2(&[&[1]]), m2(&[&[0]]), m2(&[&[0]])],
        )
        .unwrap();
        let words = spec.words(&[1, 0, 0, 0], 20).unwrap();
        let seq: Vec<u32> = words.iter().map(|w| w[0]).collect();
        for k in 0..16 {
            assert_eq!(seq[k + 4], (seq[k + 1] + seq[k]) % 2);
        }
    }

    #[test]
    fn periods() {
        let spec = feedback_blocks(&transition_from_multiseq(&mw()).unwrap()).unwrap();
        assert_eq!(period(&spec, &[1, 0, 0, 0, 0, 0]).unwrap(), 63);
        assert_eq!(period(&spec, &[0, 1, 1, 0, 1, 0]).unwrap(), 63);
        let unit = LfsrSpec::new(f2(), 1, vec![m2(&[&[1]])]).unwrap();
        assert_eq!(period(&unit, &[1]).unwrap(), 1);
        assert_eq!(period(&unit, &[0]), Err(Error::ZeroState));
    }

    #[test]
    fn verification_reports() {
        let spec = feedback_blocks(&transition_from_multiseq(&mw()).unwrap()).unwrap();
        let report = verify_lfsr(&spec, &p2("s^6+s+1"));
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.period_checked, Some(63));

        let zero_b0 = LfsrSpec::new(
            f2(),
            3,
            vec![Mat::zeros(f2(), 3, 3), spec.blocks()[1].clone()],
        )
        .unwrap();
        let report = verify_lfsr(&zero_b0, &p2("s^6+s+1"));
        assert!(!report.charpoly_matches);
        assert_eq!(report.charpoly.coeff(0).value(), 0);
        assert!(!report.passed());
    }

    #[test]
    fn spec_json() {
        let spec = LfsrSpec::new(f2(), 1, vec![m2(&[&[1]]), m2(&[&[1]])]).unwrap();
        let j = serde_json::to_string(&spec).unwrap();
        assert!(j.starts_with(r#"{"q":2,"m":1,"b":2,"blocks":["#));
        let back: LfsrSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, spec);
        let bad = j.replace(r#""b":2"#, r#""b":3"#);
        assert!(serde_json::from_str::<LfsrSpec>(&bad).is_err());
    }
}
