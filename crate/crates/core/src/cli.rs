//! Command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 formula/oracle mismatch.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::counting::{self, big_number, CountReport};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hankel;
use crate::lfsr::{
    feedback_blocks, stacked_state, transition_from_multiseq, verify_lfsr, LfsrSpec,
};
use crate::multiseq::{minimal_poly_oracle, MultiseqState, RVector};
use crate::oracle;
use crate::poly::{find_primitive, primitive_polys, Poly};
use crate::road::{backward_traverse, road};
use crate::synthesis::{synthesize, ChoiceScript, Choices, PolyLadder, Synthesis, SynthesisConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "rext",
    version,
    about = "Multisequence R-extensions over prime fields"
)]
pub struct Cli {
    /// Threads for oracle walks (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Primitive polynomials of degree N over F_Q.
    Primpoly {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// List up to this many instead of only the first.
        #[arg(long)]
        all: Option<usize>,
    },
    /// The R-road and its backward traversal.
    Road {
        #[arg(long)]
        r: RVector,
    },
    /// Closed-form counts, optionally checked against brute force.
    #[command(subcommand)]
    Count(CountCmd),
    /// Brute-force counts alone.
    #[command(subcommand)]
    Oracle(CountCmd),
    /// Build a maximum-dimension extension or a word LFSR
    #[command(subcommand)]
    Synth(SynthCmd),
    /// Check a word LFSR spec against a primitive polynomial
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
enum CountCmd {
    /// Multisequences in F_q^m of dimension L (default m).
    Multiseq {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        oracle: bool,
    },
    /// Multisequences whose R-extension has maximum dimension.
    Extension {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: RVector,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        oracle: bool,
    },
    /// Extended multisequences summed over all R with m parts and sum r.
    ExtensionTotal {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        oracle: bool,
    },
    /// Word LFSRs with b blocks of width m for one primitive polynomial.
    Lfsr {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        oracle: bool,
    },
    /// Full-rank n x n Hankel matrices.
    Hankel {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Debug, Args)]
struct SynthSource {
    /// Choice script JSON.
    #[arg(long, conflicts_with = "seed", required_unless_present = "seed")]
    choices: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Ladder JSON; missing degrees are filled with the first primitive
    /// polynomial found.
    #[arg(long)]
    ladder: Option<PathBuf>,
    /// Minimal polynomial of the result; overrides the ladder's top entry.
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Debug, Subcommand)]
enum SynthCmd {
    /// A multisequence whose R-extension has maximum dimension.
    Multiseq {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: RVector,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        src: SynthSource,
    },
    /// Feedback blocks of a word LFSR with a given characteristic polynomial.
    Lfsr {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        b: usize,
        #[command(flatten)]
        src: SynthSource,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Checks an LFSR spec against a characteristic polynomial.
    Lfsr {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        poly: String,
    },
}

struct Outcome {
    body: Value,
    code: i32,
}

impl Outcome {
    fn ok(body: Value) -> Outcome {
        Outcome {
            body,
            code: EXIT_OK,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// its JSON to `out` (or `--out`). Diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut text = if cli.pretty {
        serde_json::to_string_pretty(&outcome.body)
    } else {
        serde_json::to_string(&outcome.body)
    }
    .expect("JSON values serialize");
    text.push('\n');
    let written = match &cli.out {
        Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Primpoly { q, n, all } => primpoly(*q, *n, *all),
        Command::Road { r } => Ok(Outcome::ok(road_json(r))),
        Command::Count(c) => count(c, cli.jobs, true),
        Command::Oracle(c) => count(c, cli.jobs, false),
        Command::Synth(SynthCmd::Multiseq { q, r, n, src }) => synth_multiseq(*q, r, *n, src),
        Command::Synth(SynthCmd::Lfsr { q, m, b, src }) => synth_lfsr(*q, *m, *b, src),
        Command::Verify(VerifyCmd::Lfsr { spec, poly }) => verify(spec, poly),
    }
}

fn big(v: &BigUint) -> Value {
    big_number(v, serde_json::value::Serializer).expect("numbers serialize")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn poly_or_default(field: PrimeField, text: Option<&str>, n: usize) -> Result<Poly> {
    let p = match text {
        Some(t) => Poly::parse(field, t)?,
        None => find_primitive(field, n)?,
    };
    if p.degree() != Some(n) {
        return Err(Error::BadDegree {
            expected: n,
            got: p.degree().unwrap_or(0),
        });
    }
    if !p.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    Ok(p)
}

fn primpoly(q: u32, n: usize, all: Option<usize>) -> Result<Outcome> {
    let field = PrimeField::new(q)?;
    let body = match all {
        None => {
            let p = find_primitive(field, n)?;
            json!({"q": q, "n": n, "poly": p.to_string(), "coeffs": p.coeffs()})
        }
        Some(limit) => {
            let polys: Vec<String> = primitive_polys(field, n)?
                .take(limit)
                .map(|p| p.to_string())
                .collect();
            json!({"q": q, "n": n, "polys": polys})
        }
    };
    Ok(Outcome::ok(body))
}

fn road_json(r: &RVector) -> Value {
    let path = road(r);
    let trav: Vec<Value> = backward_traverse(r)
        .into_iter()
        .map(|(g, c)| json!({"point": g, "active": c}))
        .collect();
    json!({"r": r, "road": path, "traversal": trav})
}

fn count(c: &CountCmd, jobs: usize, with_formula: bool) -> Result<Outcome> {
    let (formula, oracle_value, params): (Option<BigUint>, Option<BigUint>, Value) = match c {
        CountCmd::Multiseq { q, m, n, l, oracle } => {
            let l = l.unwrap_or(*m);
            let field = PrimeField::new(*q)?;
            let f = with_formula
                .then(|| counting::count_by_dimension(l, *m, *n, *q))
                .transpose()?;
            let o = (*oracle || !with_formula)
                .then(|| oracle::oracle_by_dimension(l, *m, *n, field, jobs))
                .transpose()?;
            (
                f,
                o,
                json!({"kind": "multiseq", "q": q, "m": m, "n": n, "l": l}),
            )
        }
        CountCmd::Extension {
            q,
            r,
            n,
            poly,
            oracle,
        } => {
            let f = with_formula
                .then(|| counting::count_max_extension(r, *n, *q))
                .transpose()?;
            let o = if *oracle || !with_formula {
                let p = poly_or_default(PrimeField::new(*q)?, poly.as_deref(), *n)?;
                Some(oracle::oracle_max_extension(r, &p, jobs)?)
            } else {
                None
            };
            (f, o, json!({"kind": "extension", "q": q, "r": r, "n": n}))
        }
        CountCmd::ExtensionTotal {
            q,
            m,
            r,
            n,
            poly,
            oracle,
        } => {
            let f = with_formula
                .then(|| counting::count_nr(*m, *r, *n, *q))
                .transpose()?;
            let o = if *oracle || !with_formula {
                let p = poly_or_default(PrimeField::new(*q)?, poly.as_deref(), *n)?;
                Some(oracle::oracle_nr(*m, *r, &p, jobs)?)
            } else {
                None
            };
            (
                f,
                o,
                json!({"kind": "extension-total", "q": q, "m": m, "r": r, "n": n}),
            )
        }
        CountCmd::Lfsr {
            q,
            m,
            b,
            poly,
            oracle,
        } => {
            let f = with_formula
                .then(|| counting::count_lfsr(*m, *b, *q))
                .transpose()?;
            let o = if *oracle || !with_formula {
                let p = poly_or_default(PrimeField::new(*q)?, poly.as_deref(), m * b)?;
                Some(oracle::oracle_lfsr(*m, *b, &p, jobs)?)
            } else {
                None
            };
            (f, o, json!({"kind": "lfsr", "q": q, "m": m, "b": b}))
        }
        CountCmd::Hankel { q, n, oracle } => {
            let f = with_formula
                .then(|| hankel::count_fullrank_hankel(*q, *n))
                .transpose()?;
            let o = (*oracle || !with_formula)
                .then(|| hankel::enumerate_fullrank_hankel(*q, *n, jobs))
                .transpose()?;
            (f, o, json!({"kind": "hankel", "q": q, "n": n}))
        }
    };
    match formula {
        Some(f) => {
            let report = CountReport::new(f, oracle_value, params);
            let code = if report.matches == Some(false) {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            };
            Ok(Outcome {
                body: to_value(&report),
                code,
            })
        }
        None => {
            let o = oracle_value.expect("oracle mode always computes the oracle");
            Ok(Outcome::ok(
                json!({"oracle": big(&o), "parameters": params}),
            ))
        }
    }
}

fn build_ladder(field: PrimeField, lo: usize, n: usize, src: &SynthSource) -> Result<PolyLadder> {
    let mut ladder = PolyLadder::default_for(field, lo, n)?;
    if let Some(path) = &src.ladder {
        let given: PolyLadder = read_json(path)?;
        if given.field() != field {
            return Err(Error::FieldMismatch(
                field.modulus(),
                given.field().modulus(),
            ));
        }
        for p in given.polys() {
            ladder = ladder.with(p.clone())?;
        }
    }
    if let Some(t) = &src.poly {
        let p = Poly::parse(field, t)?;
        if p.degree() != Some(n) {
            return Err(Error::BadDegree {
                expected: n,
                got: p.degree().unwrap_or(0),
            });
        }
        ladder = ladder.with(p)?;
    }
    Ok(ladder)
}

fn run_synthesis(
    q: u32,
    r: &RVector,
    n: usize,
    src: &SynthSource,
) -> Result<(PolyLadder, Synthesis)> {
    let field = PrimeField::new(q)?;
    if n < r.sum() {
        return Err(Error::BadRange(format!("n = {n} is below r = {}", r.sum())));
    }
    let ladder = build_ladder(field, n - r.sum() + r.len(), n, src)?;
    let choices = match (&src.choices, src.seed) {
        (Some(path), None) => Choices::Script(read_json::<ChoiceScript>(path)?),
        (None, Some(seed)) => Choices::Seeded(seed),
        _ => {
            return Err(Error::Parse(
                "give exactly one of --choices or --seed".into(),
            ))
        }
    };
    let synthesis = synthesize(SynthesisConfig {
        r,
        n,
        ladder: &ladder,
        choices,
        verify_steps: true,
    })?;
    Ok((ladder, synthesis))
}

/// Re-derives the minimal polynomial of every component from `2n` samples.
fn component_minpolys_ok(s: &MultiseqState) -> Result<bool> {
    for i in 1..=s.m() {
        let samples = s.component_samples(i, 2 * s.n());
        if &minimal_poly_oracle(s.field(), &samples)? != s.minpoly() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn synth_multiseq(q: u32, r: &RVector, n: usize, src: &SynthSource) -> Result<Outcome> {
    let (ladder, syn) = run_synthesis(q, r, n, src)?;
    let dim = syn.state.extension_dimension(r)?;
    let minpolys_ok = component_minpolys_ok(&syn.state)?;
    let passed = dim == r.sum() && minpolys_ok;
    let body = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "inputs": {"q": q, "r": r, "n": n},
        "ladder": ladder,
        "choices": syn.script,
        "seed": syn.seed,
        "state": syn.state,
        "steps": syn.steps,
        "verification": {
            "extension_dimension": dim,
            "expected_dimension": r.sum(),
            "component_minpolys_match": minpolys_ok,
            "passed": passed,
        },
    });
    Ok(Outcome {
        body,
        code: if passed { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn synth_lfsr(q: u32, m: usize, b: usize, src: &SynthSource) -> Result<Outcome> {
    if m == 0 || b == 0 {
        return Err(Error::BadRange("m and b must be at least 1".into()));
    }
    let r = RVector::new(vec![b; m])?;
    let n = m * b;
    let (ladder, syn) = run_synthesis(q, &r, n, src)?;
    let stacked = stacked_state(&syn.state, b)?;
    let transition = transition_from_multiseq(&syn.state)?;
    let spec = feedback_blocks(&transition)?;
    let report = verify_lfsr(&spec, syn.state.minpoly());
    let dim = syn.state.extension_dimension(&r)?;
    let passed = report.passed() && dim == n;
    let body = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "inputs": {"q": q, "m": m, "b": b, "poly": syn.state.minpoly().to_string()},
        "ladder": ladder,
        "choices": syn.script,
        "seed": syn.seed,
        "multiseq": syn.state,
        "stacked_state": stacked,
        "transition": transition.mat(),
        "spec": spec,
        "verification": {
            "extension_dimension": dim,
            "report": report,
            "passed": passed,
        },
    });
    Ok(Outcome {
        body,
        code: if passed { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn verify(spec_path: &PathBuf, poly: &str) -> Result<Outcome> {
    let spec: LfsrSpec = read_json(spec_path)?;
    let p = Poly::parse(spec.field(), poly)?;
    let report = verify_lfsr(&spec, &p);
    let passed = report.passed();
    let body = json!({"spec": spec, "poly": p.to_string(), "report": report, "passed": passed});
    Ok(Outcome {
        body,
        code: if passed { EXIT_OK } else { EXIT_VERIFY },
    })
}
