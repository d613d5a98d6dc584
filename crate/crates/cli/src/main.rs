//! `dunkl`: Schubert polynomials, Dunkl operators, the equivariant Pieri rule
//! and verification suites from the command line.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use dunkl::bruhat_rep::{evaluate_at_dunkl, x_to_z, GroupRingVec, RepMode};
use dunkl::ncalgebra::{parse_expr, Algebra, NCExpr, MAX_IDEAL_RANK};
use dunkl::pieri::{format_alpha_factored, format_y_factored, pieri_rhs_apply, struct_const_special};
use dunkl::polyring::{Poly, PolyRecord};
use dunkl::schubert::{double_schubert, expand_in_schubert_basis, quantum_double_schubert, schubert};
use dunkl::symgroup::Permutation;
use dunkl::verify::{default_degmax, run_suite, CheckReport, Suite, VerifyOptions, DEFAULT_SAMPLES, DEFAULT_SEED, MAX_VERIFY_RANK};
use dunkl::Error;

/// Largest rank for jobs that work in the Bruhat representation.
const MAX_REP_RANK: usize = 9;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_RANK: u8 = 3;
const EXIT_DEGREE: u8 = 4;
const EXIT_OTHER: u8 = 5;

#[derive(Parser)]
#[command(name = "dunkl", version, about = "Schubert calculus with Dunkl elements, exactly")]
struct Cli {
    /// Output format; `json` is the structured form.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for verification batches.
    #[arg(long, env = "DUNKL_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Monomial,
    Schubert,
}

#[derive(Subcommand)]
enum Command {
    /// Single Schubert polynomial S_w(x).
    Schubert(PermArgs),
    /// Double Schubert polynomial S_w(x, y), or the Schubert expansion of a polynomial.
    Dschubert(DschubertArgs),
    /// Quantum double Schubert polynomial (q_i specialization).
    Qschubert(QschubertArgs),
    /// Evaluates a polynomial at Dunkl operators on a basis vector.
    DunklEval(DunklEvalArgs),
    /// Applies the Pieri right-hand side for e_k(theta_1..theta_m) to a basis vector.
    Pieri(PieriArgs),
    /// Coefficient of u in S_[m,k] * S_w, or in S_v * S_w, at t = 0.
    Structconst(StructconstArgs),
    /// Normal form of a bracket expression.
    Normalize(NormalizeArgs),
    /// Runs a verification suite; exits with 1 on any failed identity.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PermArgs {
    /// Rank; inferred from a one-line permutation when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// One-line `3,1,2` or reduced word `s:1,2` (needs --n).
    #[arg(long)]
    perm: String,
}

#[derive(Args)]
struct DschubertArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, required_unless_present = "poly", conflicts_with = "poly")]
    perm: Option<String>,
    /// A polynomial in x and y to expand (with --basis schubert and --n).
    #[arg(long, requires = "n")]
    poly: Option<String>,
    #[arg(long, value_enum, default_value_t = Basis::Monomial)]
    basis: Basis,
}

#[derive(Args)]
struct QschubertArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    perm: String,
    /// Print the coefficients in the basis S_v(x, y) instead.
    #[arg(long, value_enum, default_value_t = Basis::Monomial)]
    basis: Basis,
}

#[derive(Args)]
struct DunklEvalArgs {
    #[arg(long)]
    n: usize,
    /// Polynomial in z (or x) with central y, t, q coefficients.
    #[arg(long)]
    poly: String,
    /// Basis vector to act on; the identity by default.
    #[arg(long)]
    perm: Option<String>,
    #[arg(long)]
    quantum: bool,
    /// Set t = 0.
    #[arg(long)]
    t0: bool,
}

#[derive(Args)]
struct PieriArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    perm: Option<String>,
    #[arg(long)]
    quantum: bool,
    #[arg(long)]
    t0: bool,
}

#[derive(Args)]
struct StructconstArgs {
    #[arg(long)]
    n: usize,
    /// The special class [m,k] as `M,K`.
    #[arg(long, required_unless_present = "v", conflicts_with = "v")]
    mk: Option<String>,
    /// An arbitrary first factor S_v (experimental; evaluated directly).
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    w: String,
    #[arg(long)]
    u: String,
}

#[derive(Args)]
struct NormalizeArgs {
    /// Expression such as "[1,2]*x_1 + 2*t".
    expr: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    quantum: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    #[arg(long)]
    n: usize,
    /// Degree bound for ideal-membership checks (default n, and 4 at n = 5).
    #[arg(long)]
    degmax: Option<usize>,
    #[arg(long)]
    quantum: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

fn check_rank(n: usize, max: usize) -> Result<()> {
    if !(1..=max).contains(&n) {
        return Err(Error::RankOutOfRange { n, min: 1, max }.into());
    }
    Ok(())
}

fn perm(s: &str, n: Option<usize>) -> Result<Permutation> {
    let w = Permutation::parse(s, n)?;
    check_rank(w.n(), MAX_REP_RANK)?;
    Ok(w)
}

fn poly(s: &str) -> Result<Poly> {
    Poly::parse(s).with_context(|| format!("while reading the polynomial {s:?}"))
}

fn mode(quantum: bool, t0: bool) -> RepMode {
    RepMode { quantum, t_zero: t0 }
}

#[derive(Serialize)]
struct PolyOut {
    schema: &'static str,
    text: String,
    poly: PolyRecord,
}

fn poly_out(p: &Poly) -> PolyOut {
    PolyOut { schema: "dunkl.poly-result/1", text: p.to_string(), poly: p.to_record() }
}

#[derive(Serialize)]
struct VecEntry {
    perm: String,
    text: String,
    coefficient: PolyRecord,
}

#[derive(Serialize)]
struct VecOut {
    schema: &'static str,
    n: usize,
    terms: Vec<VecEntry>,
}

fn vec_out(v: &GroupRingVec) -> VecOut {
    VecOut {
        schema: "dunkl.vec/1",
        n: v.n(),
        terms: v
            .entries()
            .map(|(w, f)| VecEntry { perm: w.to_string(), text: f.to_string(), coefficient: f.to_record() })
            .collect(),
    }
}

#[derive(Serialize)]
struct ExpansionOut {
    schema: &'static str,
    n: usize,
    terms: Vec<VecEntry>,
}

fn expansion_out(n: usize, c: &BTreeMap<Permutation, Poly>) -> ExpansionOut {
    ExpansionOut {
        schema: "dunkl.schubert-expansion/1",
        n,
        terms: c
            .iter()
            .map(|(w, f)| VecEntry { perm: w.to_string(), text: f.to_string(), coefficient: f.to_record() })
            .collect(),
    }
}

fn expansion_text(c: &BTreeMap<Permutation, Poly>) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter().map(|(w, f)| format!("S[{w}] : {f}")).collect::<Vec<_>>().join("\n")
}

#[derive(Serialize)]
struct StructOut {
    schema: &'static str,
    n: usize,
    w: String,
    u: String,
    coefficient: PolyRecord,
    y_form: String,
    alpha_form: String,
}

#[derive(Serialize)]
struct NcTerm {
    x: BTreeMap<String, u32>,
    word: Vec<[u8; 2]>,
    coefficient: PolyRecord,
}

#[derive(Serialize)]
struct NcOut {
    schema: &'static str,
    n: usize,
    quantum: bool,
    text: String,
    terms: Vec<NcTerm>,
}

fn nc_out(e: &NCExpr) -> NcOut {
    NcOut {
        schema: "dunkl.ncexpr/1",
        n: e.algebra().n,
        quantum: e.algebra().quantum,
        text: e.to_string(),
        terms: e
            .terms()
            .map(|(x, w, c)| NcTerm {
                x: x.iter().map(|(v, e)| (v.to_string(), e)).collect(),
                word: w.iter().map(|&(i, j)| [i, j]).collect(),
                coefficient: c.to_record(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    schema: &'static str,
    suite: &'a str,
    n: usize,
    passed: bool,
    reports: &'a [CheckReport],
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    let body = match format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(value)?,
    };
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{body}").and_then(|_| out.flush()) {
        // A closed pipe (e.g. `| head`) is not an error of the computation.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

/// Runs the command; `Ok(false)` means a verification failed.
fn run(cli: Cli) -> Result<bool> {
    let f = cli.format;
    match cli.command {
        Command::Schubert(a) => {
            let p = schubert(&perm(&a.perm, a.n)?);
            emit(f, &poly_out(&p), || p.to_string())?;
        }
        Command::Dschubert(a) => match (&a.perm, &a.poly) {
            (Some(s), _) => {
                let w = perm(s, a.n)?;
                let p = double_schubert(&w);
                match a.basis {
                    Basis::Monomial => emit(f, &poly_out(&p), || p.to_string())?,
                    Basis::Schubert => {
                        let c = expand_in_schubert_basis(&p, w.n())?;
                        emit(f, &expansion_out(w.n(), &c), || expansion_text(&c))?;
                    }
                }
            }
            (None, Some(s)) => {
                let n = a.n.expect("clap enforces --n");
                check_rank(n, MAX_REP_RANK)?;
                let p = poly(s)?;
                match a.basis {
                    Basis::Monomial => emit(f, &poly_out(&p), || p.to_string())?,
                    Basis::Schubert => {
                        let c = expand_in_schubert_basis(&p, n)?;
                        emit(f, &expansion_out(n, &c), || expansion_text(&c))?;
                    }
                }
            }
            (None, None) => bail!("either --perm or --poly is required"),
        },
        Command::Qschubert(a) => {
            let w = perm(&a.perm, a.n)?;
            check_rank(w.n(), MAX_VERIFY_RANK)?;
            let qs = quantum_double_schubert(&w)?;
            match a.basis {
                Basis::Monomial => emit(f, &poly_out(&qs.poly), || qs.poly.to_string())?,
                Basis::Schubert => emit(f, &expansion_out(w.n(), &qs.coefficients), || expansion_text(&qs.coefficients))?,
            }
        }
        Command::DunklEval(a) => {
            check_rank(a.n, MAX_REP_RANK)?;
            let w = match &a.perm {
                Some(s) => perm(s, Some(a.n))?,
                None => Permutation::identity(a.n),
            };
            let p = x_to_z(&poly(&a.poly)?);
            let v = evaluate_at_dunkl(&p, &GroupRingVec::basis(&w), mode(a.quantum, a.t0))?;
            emit(f, &vec_out(&v), || v.to_text().trim_end().to_string())?;
        }
        Command::Pieri(a) => {
            check_rank(a.n, MAX_REP_RANK)?;
            if a.k > a.m || a.m > a.n {
                return Err(Error::InvalidParameters(format!("need k <= m <= n, got k={}, m={}", a.k, a.m)).into());
            }
            let w = match &a.perm {
                Some(s) => perm(s, Some(a.n))?,
                None => Permutation::identity(a.n),
            };
            let v = pieri_rhs_apply(a.n, a.m, a.k, &GroupRingVec::basis(&w), mode(a.quantum, a.t0));
            emit(f, &vec_out(&v), || v.to_text().trim_end().to_string())?;
        }
        Command::Structconst(a) => {
            check_rank(a.n, MAX_REP_RANK)?;
            let w = perm(&a.w, Some(a.n))?;
            let u = perm(&a.u, Some(a.n))?;
            let c = match (&a.mk, &a.v) {
                (Some(mk), _) => {
                    let parts: Vec<&str> = mk.split(',').collect();
                    let [m, k] = parts[..] else { bail!(Error::Parse { offset: 0, message: format!("--mk expects M,K, got {mk:?}") }) };
                    let (m, k) = (
                        m.trim().parse().map_err(|_| Error::Parse { offset: 0, message: format!("bad m in {mk:?}") })?,
                        k.trim().parse().map_err(|_| Error::Parse { offset: 0, message: format!("bad k in {mk:?}") })?,
                    );
                    struct_const_special(&w, &u, m, k)?
                }
                (None, Some(v)) => {
                    let v = perm(v, Some(a.n))?;
                    let img = evaluate_at_dunkl(&x_to_z(&double_schubert(&v)), &GroupRingVec::basis(&w), RepMode::CLASSICAL_T0)?;
                    img.get(&u)
                }
                (None, None) => bail!("either --mk or --v is required"),
            };
            let out = StructOut {
                schema: "dunkl.structconst/1",
                n: a.n,
                w: w.to_string(),
                u: u.to_string(),
                coefficient: c.to_record(),
                y_form: format_y_factored(&c, a.n),
                alpha_form: format_alpha_factored(&c, a.n),
            };
            emit(f, &out, || format!("{}\nalpha: {}", out.y_form, out.alpha_form))?;
        }
        Command::Normalize(a) => {
            check_rank(a.n, MAX_IDEAL_RANK)?;
            let e = parse_expr(Algebra { n: a.n, quantum: a.quantum }, &a.expr)?;
            emit(f, &nc_out(&e), || e.to_string())?;
        }
        Command::Verify(a) => {
            check_rank(a.n, MAX_VERIFY_RANK)?;
            let suites: Vec<Suite> = if a.suite == "all" {
                Suite::ALL.into_iter().filter(|s| s.in_all(a.n)).collect()
            } else {
                match Suite::from_name(&a.suite) {
                    Some(s) => vec![s],
                    None => {
                        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                        bail!(Error::Parse {
                            offset: 0,
                            message: format!("unknown suite {:?}; expected all, {}", a.suite, names.join(", ")),
                        })
                    }
                }
            };
            let opts = VerifyOptions {
                n: a.n,
                degmax: a.degmax.unwrap_or_else(|| default_degmax(a.n)),
                quantum: a.quantum,
                seed: a.seed,
                samples: a.samples,
            };
            let batches: Vec<Vec<CheckReport>> =
                suites.par_iter().map(|&s| run_suite(s, &opts)).collect::<dunkl::Result<_>>()?;
            let mut reports: Vec<CheckReport> = batches.into_iter().flatten().collect();
            reports.sort_by(|x, y| x.id.cmp(&y.id));
            let passed = reports.iter().all(|r| r.passed);
            let out = VerifyOut { schema: "dunkl.verify/1", suite: &a.suite, n: a.n, passed, reports: &reports };
            emit(f, &out, || verify_text(&reports))?;
            return Ok(passed);
        }
    }
    Ok(true)
}

fn verify_text(reports: &[CheckReport]) -> String {
    let mut lines = Vec::new();
    for r in reports {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        lines.push(format!("{tag} {} ({} cases)", r.id, r.cases));
        if let Some(c) = &r.counterexample {
            lines.push(format!("  n = {}, {}", c.n, c.inputs));
            lines.push(format!("  lhs: {}", c.lhs));
            lines.push(format!("  rhs: {}", c.rhs));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    lines.push(format!("{} passed, {failed} failed", reports.len() - failed));
    lines.join("\n")
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::RankOutOfRange { .. }) => EXIT_RANK,
        Some(Error::DegreeBound(_)) => EXIT_DEGREE,
        Some(Error::Inconsistent(_)) => EXIT_OTHER,
        Some(_) => EXIT_PARSE,
        None => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
