//! Synthesis of multisequences whose R-extensions have maximum dimension.
//!
//! The construction walks the R-road backwards from `(1, ..., 1)`. At each
//! point `G` with active coordinate `c` the current state (minimal polynomial
//! of degree `k`) is shifted so its `c`-th row is the last unit vector, every
//! other row gets one free trailing entry `d_i`, row `c` becomes the longer
//! unit vector, and the minimal polynomial moves up the ladder to degree
//! `k + 1`. After `r - m` steps the state has degree `n` and its
//! R-extension has rank `r`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Mat;
use crate::multiseq::{MultiseqState, RVector};
use crate::poly::{find_primitive, Poly};
use crate::road::backward_traverse;

/// Replayable free choices: the starting state and, per step, the appended
/// entries `d_i` for the rows `i != c` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceScript {
    pub initial_state: Mat,
    pub appended: Vec<Vec<u32>>,
}

/// Where the free choices come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Choices {
    Script(ChoiceScript),
    /// Uniform draws from a ChaCha8 stream seeded with this value.
    Seeded(u64),
}

/// Primitive polynomials keyed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LadderJson", into = "LadderJson")]
pub struct PolyLadder {
    field: PrimeField,
    polys: BTreeMap<usize, Poly>,
}

/// Wire form: `{"q": p, "polys": ["s^3+s+1", "coeffs=[1,1,0,0,1]", ...]}`.
#[derive(Serialize, Deserialize)]
struct LadderJson {
    q: u32,
    polys: Vec<String>,
}

impl TryFrom<LadderJson> for PolyLadder {
    type Error = Error;

    fn try_from(j: LadderJson) -> Result<PolyLadder> {
        let field = PrimeField::new(j.q)?;
        let polys = j
            .polys
            .iter()
            .map(|t| Poly::parse(field, t))
            .collect::<Result<Vec<_>>>()?;
        PolyLadder::new(field, polys)
    }
}

impl From<PolyLadder> for LadderJson {
    fn from(l: PolyLadder) -> LadderJson {
        LadderJson {
            q: l.field.modulus(),
            polys: l.polys.values().map(Poly::to_string).collect(),
        }
    }
}

impl PolyLadder {
    /// Validates that every entry is primitive; one polynomial per degree.
    pub fn new(field: PrimeField, polys: Vec<Poly>) -> Result<PolyLadder> {
        let mut map = BTreeMap::new();
        for p in polys {
            if p.field() != field {
                return Err(Error::FieldMismatch(field.modulus(), p.field().modulus()));
            }
            if !p.is_primitive() {
                return Err(Error::BadLadder(format!("{p} is not primitive")));
            }
            let d = p.degree().expect("primitive polys are nonzero");
            if map.insert(d, p).is_some() {
                return Err(Error::BadLadder(format!("two polynomials of degree {d}")));
            }
        }
        Ok(PolyLadder { field, polys: map })
    }

    /// `find_primitive` for every degree in `lo..=hi`.
    pub fn default_for(field: PrimeField, lo: usize, hi: usize) -> Result<PolyLadder> {
        let polys = (lo..=hi)
            .map(|d| find_primitive(field, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyLadder {
            field,
            polys: polys
                .into_iter()
                .map(|p| (p.degree().unwrap(), p))
                .collect(),
        })
    }

    /// Replaces (or adds) the entry of `p`'s degree.
    pub fn with(mut self, p: Poly) -> Result<PolyLadder> {
        if p.field() != self.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                p.field().modulus(),
            ));
        }
        if !p.is_primitive() {
            return Err(Error::BadLadder(format!("{p} is not primitive")));
        }
        self.polys.insert(p.degree().unwrap(), p);
        Ok(self)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, degree: usize) -> Option<&Poly> {
        self.polys.get(&degree)
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.polys.values()
    }

    fn require(&self, lo: usize, hi: usize) -> Result<()> {
        match (lo..=hi).find(|d| !self.polys.contains_key(d)) {
            Some(d) => Err(Error::BadLadder(format!("no polynomial of degree {d}"))),
            None => Ok(()),
        }
    }
}

/// Polynomial `f` of degree `< k` with `x f(A) = e_k`, where `A` is a `k x k`
/// companion matrix of a primitive polynomial.
///
/// Builds the Krylov matrix `[x; xA; ...; xA^{k-1}]` and solves
/// `a K = e_k`; then `f(s) = a_0 + a_1 s + ... + a_{k-1} s^{k-1}`.
pub fn find_f(x: &[u32], a: &Mat) -> Result<Poly> {
    let k = a.rows();
    if !a.is_square() || x.len() != k {
        return Err(Error::ShapeMismatch(format!(
            "vector of length {} with a {}x{} matrix",
            x.len(),
            a.rows(),
            a.cols()
        )));
    }
    if x.iter().all(|&v| v == 0) {
        return Err(Error::ZeroRow);
    }
    let f = a.field();
    let mut rows = Vec::with_capacity(k);
    rows.push(x.to_vec());
    for _ in 1..k {
        let next = a.vec_mul(rows.last().expect("non-empty"))?;
        rows.push(next);
    }
    let krylov = Mat::from_rows(f, &rows)?;
    let mut e = vec![0u32; k];
    e[k - 1] = 1;
    let coeffs = krylov.solve_left(&e)?;
    Ok(Poly::new(f, coeffs))
}

fn unit_last(k: usize) -> Vec<u32> {
    let mut e = vec![0u32; k];
    e[k - 1] = 1;
    e
}

/// Shifts the multisequence so that row `c` (1-based) becomes the last unit
/// vector: `M -> M f(A)` with `f` from [`find_f`].
pub fn realign(s: &MultiseqState, c: usize) -> Result<MultiseqState> {
    check_position(s, c)?;
    let f = find_f(s.state().row(c - 1), s.companion())?;
    let shifted = s.state().mul(&s.companion().eval_poly(&f)?)?;
    MultiseqState::with_primitive(shifted, s.minpoly().clone())
}

fn check_position(s: &MultiseqState, c: usize) -> Result<()> {
    if c == 0 || c > s.m() {
        return Err(Error::BadRange(format!("row {c} of {}", s.m())));
    }
    Ok(())
}

fn lift_unchecked(s: &MultiseqState, c: usize, d: &[u32], p_next: &Poly) -> Result<MultiseqState> {
    check_position(s, c)?;
    let k = s.n();
    if s.state().row(c - 1) != unit_last(k).as_slice() {
        return Err(Error::RowNotUnit(c));
    }
    let deg = p_next.degree().unwrap_or(0);
    if deg != k + 1 {
        return Err(Error::BadDegree {
            expected: k + 1,
            got: deg,
        });
    }
    if d.len() != s.m() - 1 {
        return Err(Error::ShapeMismatch(format!(
            "{} appended entries for {} rows",
            d.len(),
            s.m() - 1
        )));
    }
    let field = s.field();
    let mut extra = d.iter();
    let rows: Vec<Vec<u32>> = (0..s.m())
        .map(|i| {
            if i == c - 1 {
                unit_last(k + 1)
            } else {
                let mut row = s.state().row(i).to_vec();
                row.push(extra.next().expect("length checked") % field.modulus());
                row
            }
        })
        .collect();
    MultiseqState::with_primitive(Mat::from_rows(field, &rows)?, p_next.clone())
}

/// Extends a state whose row `c` is `e_k` to degree `k + 1`: rows `i != c`
/// gain the trailing entries `d`, row `c` becomes `e_{k+1}`, and the minimal
/// polynomial becomes `p_next`.
pub fn lift(s: &MultiseqState, c: usize, d: &[u32], p_next: &Poly) -> Result<MultiseqState> {
    if !p_next.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    lift_unchecked(s, c, d, p_next)
}

/// One (realign, lift) pair of the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynthesisStep {
    /// Road point before the step.
    pub point: RVector,
    /// Active coordinate of `point`, 1-based.
    pub active: usize,
    #[serde(serialize_with = "poly_text")]
    pub f: Poly,
    pub realigned: Mat,
    pub appended: Vec<u32>,
    pub lifted: Mat,
    /// Rank of the lifted state's extension at the next road point, when
    /// step verification is on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension_dimension: Option<usize>,
}

fn poly_text<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthesis {
    pub state: MultiseqState,
    pub steps: Vec<SynthesisStep>,
    /// The choices actually used; replaying it reproduces `state`.
    pub script: ChoiceScript,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct SynthesisConfig<'a> {
    pub r: &'a RVector,
    /// Target linear complexity.
    pub n: usize,
    pub ladder: &'a PolyLadder,
    pub choices: Choices,
    /// Record the extension rank after every step.
    pub verify_steps: bool,
}

fn random_full_rank(rng: &mut ChaCha8Rng, field: PrimeField, rows: usize, cols: usize) -> Mat {
    loop {
        let data = (0..rows * cols)
            .map(|_| rng.gen_range(0..field.modulus()))
            .collect();
        let m = Mat::new(field, rows, cols, data).expect("shape");
        if m.rank() == rows {
            return m;
        }
    }
}

/// Generates a multisequence with minimal polynomial `ladder[n]` whose
/// R-extension has dimension `r = sum R`.
pub fn synthesize(cfg: SynthesisConfig<'_>) -> Result<Synthesis> {
    let field = cfg.ladder.field();
    let m = cfg.r.len();
    let r = cfg.r.sum();
    if cfg.n < r {
        return Err(Error::BadRange(format!("n = {} is below r = {r}", cfg.n)));
    }
    let lo = cfg.n - r + m;
    cfg.ladder.require(lo, cfg.n)?;
    let iterations = r - m;

    let (mut rng, seed, initial, scripted) = match cfg.choices {
        Choices::Script(script) => {
            if script.initial_state.field() != field {
                return Err(Error::FieldMismatch(
                    field.modulus(),
                    script.initial_state.field().modulus(),
                ));
            }
            (None, None, script.initial_state, Some(script.appended))
        }
        Choices::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let init = random_full_rank(&mut rng, field, m, lo);
            (Some(rng), Some(seed), init, None)
        }
    };
    if initial.rows() != m || initial.cols() != lo {
        return Err(Error::BadInitialState(format!(
            "expected {m}x{lo}, got {}x{}",
            initial.rows(),
            initial.cols()
        )));
    }
    if initial.rank() != m {
        return Err(Error::BadInitialState("not full row rank".into()));
    }
    if let Some(app) = &scripted {
        if app.len() != iterations || app.iter().any(|d| d.len() != m - 1) {
            return Err(Error::ShapeMismatch(format!(
                "choice script needs {iterations} entries of length {}",
                m - 1
            )));
        }
    }

    let mut state =
        MultiseqState::with_primitive(initial.clone(), cfg.ladder.get(lo).unwrap().clone())?;
    let mut steps = Vec::with_capacity(iterations);
    let mut used = Vec::with_capacity(iterations);
    for (idx, (point, c)) in backward_traverse(cfg.r).into_iter().enumerate() {
        let k = lo + idx;
        let f = find_f(state.state().row(c - 1), state.companion())?;
        let realigned = MultiseqState::with_primitive(
            state.state().mul(&state.companion().eval_poly(&f)?)?,
            state.minpoly().clone(),
        )?;
        let d: Vec<u32> = match (&scripted, rng.as_mut()) {
            (Some(app), _) => app[idx].clone(),
            (None, Some(rng)) => (0..m - 1)
                .map(|_| rng.gen_range(0..field.modulus()))
                .collect(),
            (None, None) => unreachable!("either a script or a seed"),
        };
        let lifted = lift_unchecked(&realigned, c, &d, cfg.ladder.get(k + 1).unwrap())?;
        let extension_dimension = if cfg.verify_steps {
            let mut next = point.clone();
            next.parts_mut()[c - 1] += 1;
            Some(lifted.extension_dimension(&next)?)
        } else {
            None
        };
        steps.push(SynthesisStep {
            point,
            active: c,
            f,
            realigned: realigned.state().clone(),
            appended: d.clone(),
            lifted: lifted.state().clone(),
            extension_dimension,
        });
        used.push(d);
        state = lifted;
    }
    Ok(Synthesis {
        state,
        steps,
        script: ChoiceScript {
            initial_state: initial,
            appended: used,
        },
        seed,
    })
}
