//! File formats and command implementations for the `latcount` binary.
//!
//! Every command is a pure function from the instance text to an
//! [`Outcome`]; the binary only adds argument parsing and file handling.

pub mod format;
pub mod hull;

use std::fmt::Write as _;

use latcount_core::evaluate::specialize_count_todd;
use latcount_core::genfun::{binomial, generating_function, vrep_term_bound};
use latcount_core::oracle::{brute_count, indicator_identity_check, IntBox};
use latcount_core::polyhedron::is_polytope;
use latcount_core::{
    classify, delta_stats, ehrhart_quasipolynomial, gf_vrep, normalize_standard, sign_decompose, specialize_count,
    standard_to_inequality, triangulate, vertices, Classification, Error, Form, HRepPolyhedron, Int, IntMatrix, Rat,
    ShortRationalFunction,
};
use num_traits::{One, Signed, Zero};
use serde_json::json;

pub use format::{parse_instance, Instance, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Count,
    Gf,
    Ehrhart,
    Check,
    Stats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    /// Scan box `[L, U]^n` for the oracle.
    pub oracle_box: Option<(Int, Int)>,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: 1, samples: 100, oracle_box: None }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Precondition(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }

    fn kind(&self) -> String {
        match self {
            CliError::Io(_) => "io".into(),
            CliError::Parse(_) => "parse".into(),
            CliError::Precondition(e) => {
                let name = format!("{e:?}");
                name.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
            }
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() }).to_string()
    }
}

/// Text to print and whether every check agreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            3
        }
    }
}

/// Input files hold an instance, or for `count` also a generating function
/// written by `gf`.
enum Input {
    Instance(Instance),
    Srf(ShortRationalFunction),
}

fn parse_input(text: &str) -> Result<Input, CliError> {
    let is_srf = serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v.get("terms").is_some() && v.get("form").is_none())
        .unwrap_or(false);
    if is_srf {
        Ok(Input::Srf(format::srf_from_json(text)?))
    } else {
        Ok(Input::Instance(parse_instance(text)?))
    }
}

pub fn run(cmd: Command, text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let input = parse_input(text)?;
    let inst = match input {
        Input::Srf(f) if cmd == Command::Count => return Ok(Outcome::ok(specialize_count(&f)?.to_string())),
        Input::Srf(_) => {
            return Err(ParseError::Schema("expected an instance, found a generating function".into()).into())
        }
        Input::Instance(i) => i,
    };
    match cmd {
        Command::Count => Ok(Outcome::ok(count(&inst)?.to_string())),
        Command::Gf => Ok(Outcome::ok(format::srf_to_json(&gf(&inst)?))),
        Command::Ehrhart => {
            let p = polytope_hrep(&inst)?;
            Ok(Outcome::ok(format::quasi_polynomial_to_json(&ehrhart_quasipolynomial(&p)?)))
        }
        Command::Check => check(&inst, opts),
        Command::Stats => Ok(Outcome::ok(stats(&inst)?)),
    }
}

fn nonzero_rays(rays: &IntMatrix) -> bool {
    !rays.is_zero()
}

pub fn gf(inst: &Instance) -> Result<ShortRationalFunction, Error> {
    match inst {
        Instance::H(p) => generating_function(p),
        Instance::V { points, rays } => gf_vrep(points, rays),
    }
}

/// Exact `|P ∩ Z^n|`. Empty inputs count zero; unbounded ones are rejected.
pub fn count(inst: &Instance) -> Result<Int, Error> {
    match inst {
        Instance::H(p) => match classify(p) {
            Classification::Empty => Ok(Int::zero()),
            Classification::HasLine => Err(Error::Unbounded),
            Classification::Pointed if !is_polytope(p) => Err(Error::Unbounded),
            Classification::Pointed => specialize_count(&generating_function(p)?),
        },
        Instance::V { rays, .. } if nonzero_rays(rays) => Err(Error::Unbounded),
        Instance::V { .. } => specialize_count(&gf(inst)?),
    }
}

/// An H-representation of a bounded instance.
fn polytope_hrep(inst: &Instance) -> Result<HRepPolyhedron, Error> {
    match inst {
        Instance::H(p) => Ok(p.clone()),
        Instance::V { rays, .. } if nonzero_rays(rays) => Err(Error::Unbounded),
        Instance::V { points, .. } => hull::hull_inequalities(points).ok_or(Error::NotFullDim),
    }
}

/// Polar generators of every simplicial cone the inequality route decomposes.
fn decomposed_cones(p: &HRepPolyhedron) -> Result<Vec<IntMatrix>, Error> {
    let reduced = match p.form() {
        Form::Inequality => p.clone(),
        Form::Standard => {
            let (a, b) = normalize_standard(p.a(), p.b())?;
            let tr = standard_to_inequality(&a, &b)?;
            if tr.dim() == 0 {
                return Ok(Vec::new());
            }
            tr.polyhedron()
        }
    };
    let (a, _) = reduced.inequality_system();
    let mut cones = Vec::new();
    for v in vertices(&reduced)? {
        let polar = a.select_rows(&v.active).transpose();
        for cell in triangulate(&polar)? {
            cones.push(polar.select_columns(&cell));
        }
    }
    Ok(cones)
}

fn check(inst: &Instance, opts: &Options) -> Result<Outcome, CliError> {
    let mut out = String::new();
    let mut ok = true;
    let mut verdict = |out: &mut String, what: &str, agree: bool, detail: String| {
        ok &= agree;
        let _ = writeln!(out, "{} {what}: {detail}", if agree { "ok  " } else { "FAIL" });
    };
    let p = polytope_hrep(inst)?;
    let n = p.dim();
    let bx = opts.oracle_box.as_ref().map(|(l, u)| IntBox { lower: vec![l.clone(); n], upper: vec![u.clone(); n] });
    let f = gf(inst)?;
    let value = count(inst)?;
    let oracle = brute_count(&p, bx.as_ref())?;
    let scope =
        bx.as_ref().map_or_else(|| "bounding box".to_string(), |b| format!("box [{}, {}]^{n}", b.lower[0], b.upper[0]));
    verdict(&mut out, "oracle", oracle == value, format!("count {value}, enumeration over {scope} gives {oracle}"));
    if !f.is_empty() {
        let todd = specialize_count_todd(&f);
        verdict(
            &mut out,
            "todd",
            todd == Rat::from_integer(value.clone()),
            format!("explicit Todd evaluation gives {todd}"),
        );
    }
    if let Instance::H(p) = inst {
        if classify(p) == Classification::Pointed {
            let (mut decomposed, mut pieces, mut failures) = (0usize, 0usize, 0usize);
            for (i, u) in decomposed_cones(p)?.iter().enumerate() {
                if u.det().abs().is_one() {
                    continue;
                }
                let signed = sign_decompose(u)?;
                let report = indicator_identity_check(u, &signed, opts.samples, opts.seed.wrapping_add(i as u64));
                decomposed += 1;
                pieces += signed.len();
                failures += report.failures.len();
            }
            verdict(
                &mut out,
                "signs",
                failures == 0,
                format!(
                    "{decomposed} non-unimodular cones into {pieces} pieces, {} samples each, {failures} mismatches",
                    opts.samples
                ),
            );
        }
    }
    Ok(Outcome { text: out.trim_end().to_string(), ok })
}

/// `C(d+k, k) * d^{log2 Δ}`, rounded down.
fn brion_bound(d: usize, k: usize, delta: &Int) -> String {
    let binom = binomial(d + k, k);
    if d <= 1 || delta <= &Int::one() {
        return binom.to_string();
    }
    let log = delta.bits() - 1;
    if delta == &(Int::one() << log) {
        return (binom * num_traits::pow(Int::from(d), log as usize)).to_string();
    }
    let lg = |x: &Int| x.to_string().parse::<f64>().map(f64::log2).unwrap_or(f64::INFINITY);
    let exponent = lg(&binom) + lg(delta) * (d as f64).log2();
    if exponent < 60.0 {
        format!("{}", exponent.exp2().floor())
    } else {
        format!("2^{exponent:.2}")
    }
}

fn minor_lines(out: &mut String, a: &IntMatrix) -> Int {
    let r = a.rank();
    let mut top = Int::zero();
    for k in 1..=r {
        let s = delta_stats(a, k);
        let _ = writeln!(out, "delta_{k}: max {} gcd {} lcm {}", s.delta_max, s.delta_gcd, s.delta_lcm);
        top = s.delta_max;
    }
    top
}

fn stats(inst: &Instance) -> Result<String, Error> {
    let mut out = String::new();
    let n = inst.dim();
    match inst {
        Instance::H(p) => {
            let a = p.a();
            let form = if p.form() == Form::Inequality { "inequality" } else { "standard" };
            let _ = writeln!(out, "form: {form}\nn: {n}\nrows: {}\nrank: {}", a.rows(), a.rank());
            let delta = minor_lines(&mut out, a);
            let (d, k) = match p.form() {
                Form::Inequality if a.rank() == n => (n, a.rows() - n),
                Form::Inequality => return Err(Error::RankDeficient),
                Form::Standard => (n - a.rank(), a.rank()),
            };
            let _ = writeln!(out, "term bound: C({},{k}) * {d}^log2({delta}) = {}", d + k, brion_bound(d, k, &delta));
        }
        Instance::V { points, rays } => {
            let hom = IntMatrix::from_rows(&[vec![1i64; points.cols()]])
                .hstack(&IntMatrix::zeros(1, rays.cols()))
                .vstack(&points.hstack(rays));
            let _ = writeln!(
                out,
                "form: vrep\nn: {n}\npoints: {}\nrays: {}\nrank: {}",
                points.cols(),
                rays.cols(),
                hom.rank()
            );
            minor_lines(&mut out, &hom);
            let k = hom.cols().saturating_sub(n);
            let _ = writeln!(out, "term bound: C({},{}) = {}", n + k, k as i64 - 1, vrep_term_bound(n, k));
        }
    }
    let _ = write!(out, "terms: {}", gf(inst)?.len());
    Ok(out)
}
