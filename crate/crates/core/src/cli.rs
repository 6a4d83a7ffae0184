//! Command-line front end.
//!
//! Exit codes: 0 success, 1 theorem violation, 2 bad input, 3 cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::divisor::{class_group, ClassGroupData, WeilDivisor};
use crate::error::Error;
use crate::frobenius::{decompose, is_prime, DecomposeOptions, FrobeniusContext, DEFAULT_CAP};
use crate::fsignature::{convergence_report, exact_signature_volume, signature_sequence};
use crate::report::{to_csv, to_json, CorpusReport};
use crate::ringfile::{fmt_rational, RingFile};
use crate::toric::{builtin_ring, Family, RingSpec};
use crate::verify::{corpus_rings, reproduction_bundle, run_corpus, VerifyOptions};

/// Environment variable holding the default enumeration cap.
pub const CAP_ENV: &str = "TORIC_FSIG_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "toric-fsig", version, about = "F-signature and class group computations for toric rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Divisor class group: free rank, invariant factors, torsion order.
    Classgroup {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// F-signature sequence s_e = a_e / q^d and optionally its exact limit.
    Fsig {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(short, long, default_value_t = 2)]
        p: u64,
        /// Largest Frobenius exponent.
        #[arg(short, long, default_value_t = 3)]
        e: u32,
        /// Also compute the exact value and deviations.
        #[arg(long)]
        exact: bool,
        /// Use the free rank of F^e_*R(D) for this divisor, e.g. `1,0`.
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Summand classes of F^e_*R(D) with multiplicities.
    Decompose {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(short, long, default_value_t = 2)]
        p: u64,
        #[arg(short, long, default_value_t = 1)]
        e: u32,
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        /// List every coset representative and its summand divisor.
        #[arg(long)]
        detail: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Check |tors(Cl(R))| <= 1/s(R) on one ring or the built-in corpus.
    Verify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, conflicts_with_all = ["builtin", "file"])]
        corpus: bool,
        /// Comma-separated primes.
        #[arg(short, long, default_value = "2,3,5")]
        p: String,
        #[arg(short, long, default_value_t = 4)]
        e: u32,
        /// Skip witness levels with q above this.
        #[arg(long)]
        qmax: Option<u64>,
        /// Write the report here; format from --format or the extension.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Print the ring-definition file of a ring.
    Dump {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Check a ring definition and list violated conditions.
    Validate {
        #[command(flatten)]
        ring: RingArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Built-in ring: an:N, veronese:N, poly:D, quadric.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Ring-definition file (JSON, or TOML by extension).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Result of one invocation: what to print and the exit status.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn from_error(err: &Error) -> Self {
        let code = match err {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Internal(_) | Error::Overflow(_) => EXIT_VIOLATION,
            _ => EXIT_BAD_INPUT,
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(cli.command) {
        Ok(o) => o,
        Err(e) => Outcome::from_error(&e),
    }
}

fn default_cap() -> Result<u64, Error> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{CAP_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn resolve_cap(flag: Option<u64>) -> Result<u64, Error> {
    let cap = match flag {
        Some(c) => c,
        None => default_cap()?,
    };
    if cap == 0 {
        return Err(Error::ParamOutOfRange("cap must be >= 1".into()));
    }
    Ok(cap)
}

fn check_prime(p: u64) -> Result<(), Error> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn check_exponent(e: u32) -> Result<(), Error> {
    if e == 0 {
        return Err(Error::ParamOutOfRange("e must be >= 1".into()));
    }
    Ok(())
}

/// Loads the ring and, for built-ins, remembers the family.
fn load_ring(args: &RingArgs) -> Result<(RingSpec, Option<Family>), Error> {
    match (&args.builtin, &args.file) {
        (Some(b), None) => {
            let fam = Family::parse(b)?;
            Ok((builtin_ring(fam)?, Some(fam)))
        }
        (None, Some(path)) => Ok((RingFile::load(path)?.to_spec()?, None)),
        (Some(_), Some(_)) => Err(Error::Parse("give either --builtin or --file, not both".into())),
        (None, None) => Err(Error::Parse("a ring is required: --builtin NAME or --file PATH".into())),
    }
}

fn parse_divisor(s: Option<&str>, m: usize) -> Result<WeilDivisor, Error> {
    let Some(s) = s else {
        return Ok(WeilDivisor::zero(m));
    };
    let coeffs = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad divisor `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() != m {
        return Err(Error::DimensionMismatch { expected: m, actual: coeffs.len() });
    }
    Ok(WeilDivisor::new(coeffs))
}

fn parse_primes(s: &str) -> Result<Vec<u64>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            let p: u64 = x.trim().parse().map_err(|_| Error::Parse(format!("bad prime list `{s}`")))?;
            check_prime(p)?;
            Ok(p)
        })
        .collect()
}

fn approx(r: &BigRational) -> String {
    let v = r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
    format!("{v:.6}")
}

/// `Z^r ⊕ Z/d_1 ⊕ ...`, or `0` for the trivial group.
pub fn group_string(cg: &ClassGroupData) -> String {
    let mut parts = Vec::new();
    match cg.free_rank() {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(cg.invariant_factors().iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

fn execute(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Classgroup { ring, format } => cmd_classgroup(&ring, format),
        Command::Fsig { ring, p, e, exact, divisor, format, cap } => {
            cmd_fsig(&ring, p, e, exact, divisor.as_deref(), format, resolve_cap(cap)?)
        }
        Command::Decompose { ring, p, e, divisor, detail, format, cap } => {
            cmd_decompose(&ring, p, e, divisor.as_deref(), detail, format, resolve_cap(cap)?)
        }
        Command::Verify { ring, corpus, p, e, qmax, out, format, cap } => {
            let opts = VerifyOptions { cap: resolve_cap(cap)?, q_max: qmax };
            cmd_verify(&ring, corpus, &p, e, out.as_deref(), format, &opts)
        }
        Command::Dump { ring } => {
            let (spec, _) = load_ring(&ring)?;
            Ok(Outcome::ok(RingFile::from_spec(&spec).to_json() + "\n"))
        }
        Command::Validate { ring } => cmd_validate(&ring),
    }
}

fn cmd_validate(args: &RingArgs) -> Result<Outcome, Error> {
    let spec = match (&args.builtin, &args.file) {
        (None, Some(path)) => RingFile::load(path)?.to_spec_unchecked()?,
        _ => load_ring(args)?.0,
    };
    let violations = spec.validate();
    if violations.is_empty() {
        return Ok(Outcome::ok(format!("{}: valid\n", spec.name())));
    }
    let mut out = String::new();
    for v in &violations {
        writeln!(out, "{}: {v}", spec.name()).unwrap();
    }
    Ok(Outcome { stdout: out, stderr: String::new(), code: EXIT_BAD_INPUT })
}

pub fn cmd_classgroup(args: &RingArgs, format: Format) -> Result<Outcome, Error> {
    let (spec, _) = load_ring(args)?;
    let cg = class_group(&spec)?;
    let factors: Vec<String> = cg.invariant_factors().iter().map(ToString::to_string).collect();
    let torsion = cg.torsion_cardinality().to_string();
    let out = match format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "ring: {}", spec.name()).unwrap();
            let trivial = if cg.free_rank() == 0 && factors.is_empty() { " (trivial)" } else { "" };
            writeln!(s, "Cl(R) = {}{trivial}", group_string(&cg)).unwrap();
            writeln!(s, "free rank: {}", cg.free_rank()).unwrap();
            writeln!(s, "invariant factors: [{}]", factors.join(", ")).unwrap();
            writeln!(s, "torsion: {torsion}").unwrap();
            s
        }
        Format::Csv => format!(
            "ring,free_rank,invariant_factors,torsion_cardinality,group\n{},{},{},{},{}\n",
            spec.name(),
            cg.free_rank(),
            factors.join(";"),
            torsion,
            group_string(&cg)
        ),
        Format::Json => {
            let v = json!({
                "ring": spec.name(),
                "free_rank": cg.free_rank(),
                "invariant_factors": factors,
                "torsion_cardinality": torsion,
                "group": group_string(&cg),
            });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
    };
    Ok(Outcome::ok(out))
}

pub fn cmd_fsig(
    args: &RingArgs,
    p: u64,
    e_max: u32,
    exact: bool,
    divisor: Option<&str>,
    format: Format,
    cap: u64,
) -> Result<Outcome, Error> {
    check_prime(p)?;
    check_exponent(e_max)?;
    let (spec, family) = load_ring(args)?;
    let cg = class_group(&spec)?;
    let twist = divisor.map(|d| parse_divisor(Some(d), spec.num_facets())).transpose()?;
    let seq = signature_sequence(&spec, &cg, p, e_max, twist.as_ref(), cap)?;
    let exact_value = if exact { Some(exact_signature_volume(&spec)?) } else { None };
    // the envelope bounds s_e(R) only, not twisted sequences
    let an = match family {
        Some(Family::AnSingularity(n)) if twist.is_none() => Some(u64::from(n)),
        _ => None,
    };
    let report = convergence_report(&seq, exact_value.as_ref(), an)?;

    let out = match format {
        Format::Text => {
            let mut s = String::new();
            write!(s, "ring: {}  p = {p}", spec.name()).unwrap();
            if let Some(d) = &twist {
                write!(s, "  D = {d}").unwrap();
            }
            writeln!(s).unwrap();
            writeln!(s, "{:>3} {:>10} {:>12} {:>16} {:>10}", "e", "q", "a_e", "s_e", "~s_e").unwrap();
            for (est, row) in seq.iter().zip(&report.rows) {
                write!(
                    s,
                    "{:>3} {:>10} {:>12} {:>16} {:>10}",
                    est.ctx.e(),
                    est.ctx.q().to_string(),
                    est.a_e,
                    est.s_e.to_string(),
                    approx(&est.s_e)
                )
                .unwrap();
                if let Some(dev) = &row.deviation {
                    write!(s, "  |s_e - s| = {dev}").unwrap();
                }
                if let Some(ok) = row.within_envelope {
                    write!(s, "  envelope {}", if ok { "ok" } else { "VIOLATED" }).unwrap();
                }
                writeln!(s).unwrap();
            }
            if let Some(x) = &exact_value {
                writeln!(s, "exact s(R) = {} ({}) ~ {}", x.value, x.method, approx(&x.value)).unwrap();
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("ring,p,e,q,a_e,rank,s_e,deviation,envelope\n");
            for (est, row) in seq.iter().zip(&report.rows) {
                writeln!(
                    s,
                    "{},{p},{},{},{},{},{},{},{}",
                    spec.name(),
                    est.ctx.e(),
                    est.ctx.q(),
                    est.a_e,
                    est.rank,
                    fmt_rational(&est.s_e),
                    row.deviation.as_ref().map(fmt_rational).unwrap_or_default(),
                    row.envelope.as_ref().map(fmt_rational).unwrap_or_default(),
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = seq
                .iter()
                .zip(&report.rows)
                .map(|(est, row)| {
                    json!({
                        "e": est.ctx.e(),
                        "q": est.ctx.q().to_string(),
                        "a_e": est.a_e,
                        "rank": est.rank.to_string(),
                        "s_e": fmt_rational(&est.s_e),
                        "deviation": row.deviation.as_ref().map(fmt_rational),
                        "envelope": row.envelope.as_ref().map(fmt_rational),
                        "within_envelope": row.within_envelope,
                    })
                })
                .collect();
            let v = json!({
                "ring": spec.name(),
                "p": p,
                "divisor": twist.as_ref().map(|d| d.coeffs.clone()),
                "sequence": rows,
                "exact": exact_value.as_ref().map(|x| json!({
                    "value": fmt_rational(&x.value),
                    "method": x.method.to_string(),
                })),
            });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
    };
    let code = if report.violations().is_empty() { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Outcome { stdout: out, stderr: String::new(), code })
}

pub fn cmd_decompose(
    args: &RingArgs,
    p: u64,
    e: u32,
    divisor: Option<&str>,
    detail: bool,
    format: Format,
    cap: u64,
) -> Result<Outcome, Error> {
    check_prime(p)?;
    check_exponent(e)?;
    let (spec, _) = load_ring(args)?;
    let cg = class_group(&spec)?;
    let base = parse_divisor(divisor, spec.num_facets())?;
    let ctx = FrobeniusContext::new(p, e)?;
    let dec = decompose(&spec, &cg, &base, &ctx, &DecomposeOptions { cap, detail })?;
    let q = ctx.q().to_string();

    let out = match format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "ring: {}  p = {p}  e = {e}  q = {q}  D = {base}", spec.name()).unwrap();
            writeln!(s, "Cl(R) = {}", group_string(&cg)).unwrap();
            writeln!(s, "{:>16} {:>14}", "class", "multiplicity").unwrap();
            for (c, k) in &dec.summands {
                writeln!(s, "{:>16} {:>14}", c.to_string(), k).unwrap();
            }
            writeln!(s, "total: {} (rank q^d = {})", dec.total(), ctx.rank(spec.dim())).unwrap();
            writeln!(s, "free rank: {}", dec.free_rank()).unwrap();
            if let Some(det) = &dec.detail {
                writeln!(s, "cosets (q·w, summand divisor, class):").unwrap();
                for c in det {
                    let w: Vec<String> = c.numerator.iter().map(ToString::to_string).collect();
                    writeln!(s, "  ({})/{q}  {}  {}", w.join(","), c.divisor, cg.class_of(&c.divisor)).unwrap();
                }
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("class,free,torsion,multiplicity\n");
            for (c, k) in &dec.summands {
                writeln!(
                    s,
                    "\"{c}\",{},{},{k}",
                    c.free.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
                    c.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let summands: Vec<_> = dec
                .summands
                .iter()
                .map(|(c, k)| json!({"class": c.to_string(), "free": c.free, "torsion": c.torsion, "multiplicity": k}))
                .collect();
            let detail = dec.detail.as_ref().map(|det| {
                det.iter()
                    .map(|c| {
                        json!({
                            "coords": c.coords,
                            "numerator": c.numerator,
                            "divisor": c.divisor.coeffs,
                            "class": cg.class_of(&c.divisor).to_string(),
                        })
                    })
                    .collect::<Vec<_>>()
            });
            let v = json!({
                "ring": spec.name(),
                "p": p,
                "e": e,
                "q": q,
                "divisor": base.coeffs,
                "summands": summands,
                "total": dec.total(),
                "rank": ctx.rank(spec.dim()).to_string(),
                "free_rank": dec.free_rank(),
                "detail": detail,
            });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
    };
    Ok(Outcome::ok(out))
}

fn format_for(out: Option<&Path>, format: Option<Format>) -> Format {
    if let Some(f) = format {
        return f;
    }
    match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        _ => Format::Text,
    }
}

pub fn cmd_verify(
    args: &RingArgs,
    corpus: bool,
    primes: &str,
    e_max: u32,
    out: Option<&Path>,
    format: Option<Format>,
    opts: &VerifyOptions,
) -> Result<Outcome, Error> {
    check_exponent(e_max)?;
    let primes = parse_primes(primes)?;
    let rings = if corpus {
        corpus_rings()?
    } else {
        vec![load_ring(args)?.0]
    };
    let run = run_corpus(&rings, &primes, e_max, opts);
    let report = CorpusReport::from(&run);

    let mut text = String::new();
    for v in &run.verdicts {
        let kind = if !v.inequality_holds {
            "VIOLATED"
        } else if v.equality {
            "equality"
        } else {
            "strict"
        };
        writeln!(
            text,
            "{:<12} p={:<3} |tors Cl| = {:<4} s(R) = {:<6} 1/s(R) = {:<6} {kind}",
            v.ring,
            v.p,
            v.torsion_cardinality.to_string(),
            v.exact_signature.to_string(),
            v.bound().to_string(),
        )
        .unwrap();
    }
    let mut stderr = String::new();
    for f in &run.failures {
        writeln!(stderr, "error: {} p={}: {}", f.ring, f.p, f.error).unwrap();
    }
    let violations = run.violations();
    writeln!(
        text,
        "{} verdicts, {} violations, {} errors",
        run.verdicts.len(),
        violations.len(),
        run.failures.len()
    )
    .unwrap();

    let fmt = format_for(out, format);
    let body = match fmt {
        Format::Json => to_json(&report) + "\n",
        Format::Csv => to_csv(&report.verdicts)?,
        Format::Text => text.clone(),
    };
    let stdout = match out {
        Some(path) => {
            std::fs::write(path, &body)?;
            text
        }
        None => body,
    };

    let code = if !violations.is_empty() {
        for v in &violations {
            let spec = rings.iter().find(|r| r.name() == v.ring).expect("verdict ring");
            let e = v.witnesses.last().map_or(1, |w| w.e);
            let bundle = reproduction_bundle(spec, v.p, e, opts.cap.min(1 << 16))
                .unwrap_or_else(|err| json!({"ring": RingFile::from_spec(spec), "p": v.p, "e": e, "error": err.to_string()}));
            let path = match out {
                Some(o) => o.with_extension(format!("{}-p{}.repro.json", v.ring.replace(':', "_"), v.p)),
                None => PathBuf::from(format!("toric-fsig-{}-p{}.repro.json", v.ring.replace(':', "_"), v.p)),
            };
            std::fs::write(&path, serde_json::to_string_pretty(&bundle).unwrap())?;
            writeln!(stderr, "theorem check failed for {} p={}; reproduction data in {}", v.ring, v.p, path.display())
                .unwrap();
        }
        EXIT_VIOLATION
    } else if run.failures.iter().any(|f| f.cap_exceeded) {
        EXIT_CAP
    } else if !run.failures.is_empty() {
        EXIT_BAD_INPUT
    } else {
        EXIT_OK
    };
    Ok(Outcome { stdout, stderr, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("toric-fsig").chain(args.iter().copied()))
    }

    #[test]
    fn classgroup_builtins() {
        let o = run_args(&["classgroup", "--builtin", "an:4"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("Cl(R) = Z/4"));
        assert!(o.stdout.contains("torsion: 4"));
        let o = run_args(&["classgroup", "--builtin", "quadric"]);
        assert!(o.stdout.contains("Cl(R) = Z\n"));
        assert!(o.stdout.contains("torsion: 1"));
        let o = run_args(&["classgroup", "--builtin", "poly:2"]);
        assert!(o.stdout.contains("trivial"));
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(run_args(&["classgroup", "--builtin", "cubic:2"]).code, EXIT_BAD_INPUT);
        assert_eq!(run_args(&["classgroup"]).code, EXIT_BAD_INPUT);
        assert_eq!(run_args(&["fsig", "--builtin", "an:2", "-p", "4"]).code, EXIT_BAD_INPUT);
        assert_eq!(run_args(&["decompose", "--builtin", "an:2", "--divisor", "1"]).code, EXIT_BAD_INPUT);
        assert_eq!(run_args(&["decompose", "--builtin", "an:2", "--cap", "0"]).code, EXIT_BAD_INPUT);
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_BAD_INPUT);
    }

    #[test]
    fn decompose_negative_divisor() {
        let o = run_args(&["decompose", "--builtin", "an:3", "-p", "2", "-e", "2", "--divisor", "-1,2"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("total: 16"));
    }

    #[test]
    fn verify_cap_error() {
        let o = run_args(&["verify", "--builtin", "an:2", "--cap", "1"]);
        assert_eq!(o.code, EXIT_CAP);
        assert!(o.stderr.contains("exceeds the cap"));
    }
}
