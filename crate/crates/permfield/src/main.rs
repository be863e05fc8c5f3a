use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use permfield::config::{ConfigFile, OutputFormat, Overrides, RunConfig, MAX_FIELD_SIZE_ENV};
use permfield::export::{read_squares, write_set, SquareFormat};
use permfield::json::{modulus_text, terms_text, CheckReportDto, FieldDto, WitnessDto};
use permfield::parallel::{enumerate_family_par, verify_mols_par, with_workers};
use permfield::parse::{parse_elem, parse_poly};
use permfield::sweep::{run_sweep, Criterion, Samples, SweepOptions};
use permfield_core::families::{EnumLimits, Extension, FamilyId};
use permfield_core::mols::{
    complete_set_cubic, complete_set_quartic, complete_set_quintic, Construction, MolsReport, MolsSet,
};
use permfield_core::perm::{is_complete_pp, is_pp_bruteforce, CheckReport};
use permfield_core::{build_field_with_limit, PrimePower};
use serde_json::json;

const POLY_HELP: &str = "Polynomial syntax: terms c*x^k joined by + or -. A coefficient is an \
element code in [0, q), g^i for a power of the generator (i may be negative), or w for \
g^((q-1)/3). The coefficient and '*' may be left out, and x alone means x^1. Example: \"g^3*x^10 + 2*x + 1\".";

#[derive(Parser)]
#[command(name = "permfield", version, about = "Permutation polynomials over finite fields", after_help = POLY_HELP)]
struct Cli {
    /// TOML file with any of: max_field_size, verify, format, workers, seed.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest field order to build (default from PERMFIELD_MAX_FIELD_SIZE, else 2^24).
    #[arg(long, global = true)]
    max_field_size: Option<u64>,
    /// Output format; gen-mols also uses it for the square files (json, else csv).
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Human => OutputFormat::Human,
        }
    }
}

#[derive(Args, Clone)]
struct FieldArgs {
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    n: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Print the modulus and generator of F_{p^n}.
    FieldInfo(FieldArgs),
    /// Test whether a polynomial permutes the field (exit 0 yes, 1 no).
    CheckPp {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Also require f(x) + x to permute.
        #[arg(long)]
        complete: bool,
    },
    /// List the members of a family over F_{Q^m}.
    Enumerate {
        /// Family tag, e.g. cubic, quartic, quintic, wulin, cubic2, dickson3.
        #[arg(long)]
        family: String,
        /// Subfield order, as an integer or p^n.
        #[arg(long = "Q", alias = "q")]
        sub: String,
        /// Check every parameter against exhaustive evaluation, both directions.
        #[arg(long)]
        verify: bool,
        /// Extension degree for complete-monomial.
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long)]
        s_max: Option<u64>,
        #[arg(long)]
        r_max: Option<u64>,
        #[arg(long)]
        d_max: Option<u64>,
    },
    /// Compare the subfield-norm and cyclotomic criteria against exhaustive evaluation.
    SweepEquivalence {
        #[arg(long, default_value_t = 64)]
        max_q: u64,
        /// Random instances per shape, or "all" for the exhaustive domain.
        #[arg(long, default_value = "200")]
        samples: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Add the exhaustive domain for fields up to this order.
        #[arg(long, default_value_t = 0)]
        exhaustive_up_to: u64,
        #[arg(long, value_enum, default_value_t = CriterionArg::Both)]
        criterion: CriterionArg,
    },
    /// Build a complete set of MOLS and write one file per square.
    GenMols {
        #[arg(long)]
        construction: String,
        #[arg(long = "Q", alias = "q")]
        sub: String,
        /// g^i, an element code, or auto for the smallest admissible value.
        #[arg(long, default_value = "auto")]
        alpha: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Check every square and every pair.
        #[arg(long)]
        verify: bool,
    },
    /// Read square files (or directories of them) and check them as a set of MOLS.
    VerifyMols {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CriterionArg {
    Subfield,
    Cyclotomic,
    Both,
}

/// Result of a command that ran to completion.
enum Outcome {
    Verified,
    Refuted,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Verified
        } else {
            Outcome::Refuted
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Verified) => ExitCode::SUCCESS,
        Ok(Outcome::Refuted) => ExitCode::from(1),
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let file = cli.config.as_deref().map(ConfigFile::load).transpose()?;
    let verify = match &cli.command {
        Command::Enumerate { verify, .. } | Command::GenMols { verify, .. } => *verify,
        _ => false,
    };
    let seed = match &cli.command {
        Command::SweepEquivalence { seed, .. } => *seed,
        _ => None,
    };
    let flags = Overrides {
        max_field_size: cli.max_field_size,
        verify,
        format: cli.format.map(Into::into),
        workers: cli.workers,
        seed,
    };
    let env = std::env::var(MAX_FIELD_SIZE_ENV).ok();
    let cfg = RunConfig::resolve(env.as_deref(), file.as_ref(), &flags)?;
    let command = cli.command;
    with_workers(cfg.workers, || dispatch(command, &cfg, &mut io::stdout().lock()))?
}

fn dispatch(cmd: Command, cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match cmd {
        Command::FieldInfo(f) => field_info(&f, cfg, out),
        Command::CheckPp { field, poly, complete } => check_pp(&field, &poly, complete, cfg, out),
        Command::Enumerate { family, sub, m, s_max, r_max, d_max, .. } => {
            let limits = EnumLimits { max_order: cfg.max_field_size, m, s_max, r_max, d_max };
            enumerate(&family, &sub, &limits, cfg, out)
        }
        Command::SweepEquivalence { max_q, samples, exhaustive_up_to, criterion, .. } => {
            sweep(max_q, &samples, exhaustive_up_to, criterion, cfg, out)
        }
        Command::GenMols { construction, sub, alpha, out: dir, .. } => gen_mols(&construction, &sub, &alpha, &dir, cfg, out),
        Command::VerifyMols { paths } => verify_mols_files(&paths, cfg, out),
    }
}

fn prime_power(f: &FieldArgs) -> anyhow::Result<PrimePower> {
    Ok(PrimePower::new(f.p, f.n)?)
}

fn parse_sub(text: &str) -> anyhow::Result<PrimePower> {
    let t = text.trim();
    let pp = match t.split_once('^') {
        Some((p, n)) => PrimePower::new(p.trim().parse()?, n.trim().parse()?),
        None => PrimePower::from_order(t.parse().with_context(|| format!("bad Q {text:?}"))?),
    };
    Ok(pp?)
}

fn emit_json(out: &mut dyn Write, value: &impl serde::Serialize) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn field_info(f: &FieldArgs, cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let field = build_field_with_limit(prime_power(f)?, cfg.max_field_size)?;
    let d = FieldDto::of(&field);
    match cfg.output_format {
        OutputFormat::Json => emit_json(out, &d)?,
        OutputFormat::Csv => {
            writeln!(out, "p,n,q,modulus,generator")?;
            let m: Vec<String> = d.modulus.iter().map(u32::to_string).collect();
            writeln!(out, "{},{},{},{},{}", d.p, d.n, d.q, m.join(" "), d.generator)?;
        }
        OutputFormat::Human => {
            writeln!(out, "p = {}\nn = {}\nq = {}", d.p, d.n, d.q)?;
            writeln!(out, "modulus = {}", modulus_text(&d.modulus))?;
            writeln!(out, "generator = {}", d.generator)?;
        }
    }
    Ok(Outcome::Verified)
}

fn check_pp(f: &FieldArgs, poly: &str, complete: bool, cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let field = Arc::new(build_field_with_limit(prime_power(f)?, cfg.max_field_size)?);
    let poly = parse_poly(&field, poly)?;
    let report: CheckReport = if complete { is_complete_pp(&poly) } else { is_pp_bruteforce(&poly) };
    let dto = CheckReportDto::of(&report);
    match cfg.output_format {
        OutputFormat::Json => emit_json(out, &dto)?,
        OutputFormat::Csv => {
            writeln!(out, "is_permutation,method,failed_condition,witness_a,witness_b")?;
            let [a, b] = dto.witness.map(|w| w.map(|c| c.to_string())).unwrap_or_default();
            writeln!(out, "{},{},{},{a},{b}", dto.is_permutation, dto.method, dto.failed_condition.unwrap_or(""))?;
        }
        OutputFormat::Human => {
            writeln!(out, "field: F_{} (p={}, n={})", field.q(), f.p, f.n)?;
            writeln!(out, "poly: {poly}")?;
            let what = if complete { "complete permutation" } else { "permutation" };
            writeln!(out, "{what}: {}", dto.is_permutation)?;
            writeln!(out, "method: {}", dto.method)?;
            if let Some(c) = dto.failed_condition {
                writeln!(out, "failed condition: {c}")?;
            }
            if let Some([a, b]) = dto.witness {
                let shifted = report.failed_condition == Some(permfield_core::perm::FailedCondition::ShiftedPermutation);
                let map = if shifted { "f(x) + x" } else { "f(x)" };
                writeln!(out, "witness: {map} takes the same value at {a} and {b}")?;
            }
        }
    }
    Ok(Outcome::from_bool(report.is_permutation))
}

fn enumerate(family: &str, sub: &str, limits: &EnumLimits, cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let id = FamilyId::from_tag(family).ok_or_else(|| {
        let tags: Vec<&str> = FamilyId::ALL.iter().map(|f| f.tag()).collect();
        anyhow!("unknown family {family:?}; known: {}", tags.join(", "))
    })?;
    let sub = parse_sub(sub)?;
    let e = enumerate_family_par(id, sub, limits, cfg.verify_mode)?;
    let pass = e.passed();
    let verdict = if pass { "PASS" } else { "FAIL" };
    let expected = e.expected_count.map_or("n/a".to_string(), |c| c.to_string());
    match cfg.output_format {
        OutputFormat::Json => {
            for w in &e.witnesses {
                emit_json(out, &WitnessDto::of(w))?;
            }
            let mut summary = json!({
                "family": id.tag(),
                "Q": sub.q(),
                "ambient": e.ambient.q(),
                "count": e.count(),
                "expected_count": e.expected_count,
                "checked": e.checked,
                "verified": e.verified,
            });
            if e.verified {
                summary["false_positives"] = json!(e.false_positives.len());
                summary["false_negatives"] = json!(e.false_negatives.len());
                summary["result"] = json!(verdict);
            }
            emit_json(out, &json!({ "summary": summary }))?;
        }
        OutputFormat::Csv => {
            writeln!(out, "family,p,n,params,poly,oracle_confirmed")?;
            for w in &e.witnesses {
                let o = w.field.order();
                let terms: Vec<(u64, u32)> = w.terms.iter().map(|&(k, c)| (k, c.code())).collect();
                writeln!(out, "{},{},{},{},{},{}", id.tag(), o.p(), o.n(), w.params, terms_text(&terms), w.oracle_confirmed)?;
            }
            write!(out, "# count={}; expected={expected}", e.count())?;
            if e.verified {
                write!(out, "; result={verdict}")?;
            }
            writeln!(out)?;
        }
        OutputFormat::Human => {
            for w in &e.witnesses {
                let terms: Vec<(u64, u32)> = w.terms.iter().map(|&(k, c)| (k, c.code())).collect();
                writeln!(out, "{} {}: {}", id.tag(), w.params, terms_text(&terms))?;
            }
            writeln!(out, "family {} over F_{} (Q = {})", id.tag(), e.ambient.q(), sub.q())?;
            writeln!(out, "count {} (expected {expected}), {} parameter sets checked", e.count(), e.checked)?;
            if e.verified {
                writeln!(
                    out,
                    "oracle: {} false positives, {} false negatives",
                    e.false_positives.len(),
                    e.false_negatives.len()
                )?;
                for p in e.false_positives.iter().take(10) {
                    writeln!(out, "  predicate accepts but oracle rejects: {p}")?;
                }
                for p in e.false_negatives.iter().take(10) {
                    writeln!(out, "  oracle accepts but predicate rejects: {p}")?;
                }
                writeln!(out, "{verdict}")?;
            }
        }
    }
    Ok(if e.verified { Outcome::from_bool(pass) } else { Outcome::Verified })
}

fn sweep(
    max_q: u64,
    samples: &str,
    exhaustive_up_to: u64,
    criterion: CriterionArg,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    if max_q > cfg.max_field_size {
        bail!("--max-q {max_q} exceeds the maximum field size {}", cfg.max_field_size);
    }
    let samples = if samples.eq_ignore_ascii_case("all") {
        Samples::All
    } else {
        Samples::Random(samples.parse().with_context(|| format!("--samples expects a count or \"all\", got {samples:?}"))?)
    };
    let criteria = match criterion {
        CriterionArg::Subfield => vec![Criterion::SubfieldNorm],
        CriterionArg::Cyclotomic => vec![Criterion::Cyclotomic],
        CriterionArg::Both => vec![Criterion::SubfieldNorm, Criterion::Cyclotomic],
    };
    let opts = SweepOptions {
        max_q,
        samples,
        seed: cfg.seed,
        exhaustive_up_to,
        criteria,
        max_field_size: cfg.max_field_size,
        ..SweepOptions::default()
    };
    let s = run_sweep(&opts)?;
    let label = |c: Criterion| match c {
        Criterion::SubfieldNorm => ("subfield-norm", "Q"),
        Criterion::Cyclotomic => ("cyclotomic", "s"),
    };
    match cfg.output_format {
        OutputFormat::Json => {
            for r in &s.rows {
                emit_json(out, r)?;
            }
            for m in &s.mismatches {
                emit_json(out, &json!({ "mismatch": m }))?;
            }
            emit_json(
                out,
                &json!({ "summary": {
                    "tower_comparisons": s.tower_comparisons,
                    "cyclotomic_comparisons": s.cyclotomic_comparisons,
                    "comparisons": s.total_comparisons(),
                    "mismatches": s.total_mismatches,
                }}),
            )?;
        }
        OutputFormat::Csv => {
            writeln!(out, "q,criterion,shape,comparisons,permutations,mismatches")?;
            for r in &s.rows {
                writeln!(out, "{},{},{},{},{},{}", r.q, label(r.criterion).0, r.shape, r.comparisons, r.permutations, r.mismatches)?;
            }
            writeln!(out, "# comparisons={}; mismatches={}", s.total_comparisons(), s.total_mismatches)?;
        }
        OutputFormat::Human => {
            writeln!(out, "{:>6}  {:<14} {:>8} {:>12} {:>12} {:>10}", "q", "criterion", "shape", "comparisons", "permutations", "mismatches")?;
            for r in &s.rows {
                let (name, sym) = label(r.criterion);
                let shape = format!("{sym}={}", r.shape);
                writeln!(out, "{:>6}  {:<14} {:>8} {:>12} {:>12} {:>10}", r.q, name, shape, r.comparisons, r.permutations, r.mismatches)?;
            }
            for m in &s.mismatches {
                let (name, sym) = label(m.criterion);
                writeln!(
                    out,
                    "mismatch: q={} {name} {sym}={} r={} h={:?}: criterion {} oracle {}",
                    m.q, m.shape, m.r, m.h, m.criterion_says, m.oracle_says
                )?;
            }
            if opts.criteria.contains(&Criterion::SubfieldNorm) && s.tower_comparisons == 0 {
                writeln!(out, "tower comparisons: 0 (no field of order <= {max_q} has a proper subfield)")?;
            } else {
                writeln!(out, "tower comparisons: {}", s.tower_comparisons)?;
            }
            writeln!(out, "cyclotomic comparisons: {}", s.cyclotomic_comparisons)?;
            writeln!(out, "total comparisons: {}, mismatches: {}", s.total_comparisons(), s.total_mismatches)?;
        }
    }
    Ok(Outcome::from_bool(s.total_mismatches == 0))
}

fn gen_mols(construction: &str, sub: &str, alpha: &str, dir: &std::path::Path, cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let c = Construction::from_tag(construction)
        .filter(|c| *c != Construction::Custom)
        .ok_or_else(|| anyhow!("unknown construction {construction:?} (expected cubic, quartic or quintic)"))?;
    let sub = parse_sub(sub)?;
    let m = if c == Construction::QuarticFamily { 3 } else { 2 };
    let ext = Extension::with_limit(sub, m, cfg.max_field_size)?;
    let auto = alpha.trim().eq_ignore_ascii_case("auto");
    let set = match c {
        Construction::QuarticFamily => {
            if !auto {
                bail!("the quartic construction takes no alpha");
            }
            complete_set_quartic(sub)?
        }
        _ => {
            let a = if auto { None } else { Some(parse_elem(ext.field(), alpha)?) };
            if c == Construction::CubicFamily {
                complete_set_cubic(sub, a)?
            } else {
                complete_set_quintic(sub, a)?
            }
        }
    };
    let format = if cfg.output_format == OutputFormat::Json { SquareFormat::Json } else { SquareFormat::Csv };
    let files = write_set(&set, dir, format)?;
    let report = cfg.verify_mode.then(|| verify_mols_par(&set));
    match cfg.output_format {
        OutputFormat::Json => {
            let mut v = json!({
                "construction": c.tag(),
                "Q": sub.q(),
                "order": set.order(),
                "squares": set.len(),
                "files": files,
            });
            if let Some(r) = &report {
                v["report"] = report_json(r);
            }
            emit_json(out, &v)?;
        }
        _ => {
            writeln!(out, "wrote {} squares of order {} to {}", set.len(), set.order(), dir.display())?;
            if let Some(r) = &report {
                write_report(out, r)?;
            }
        }
    }
    Ok(Outcome::from_bool(report.is_none_or(|r| r.is_valid && r.is_complete)))
}

fn report_json(r: &MolsReport) -> serde_json::Value {
    json!({
        "is_valid": r.is_valid,
        "is_complete": r.is_complete,
        "failing_pair": r.failing_pair.map(|(i, j)| [i, j]),
        "non_latin": r.non_latin,
    })
}

fn write_report(out: &mut dyn Write, r: &MolsReport) -> anyhow::Result<()> {
    if !r.non_latin.is_empty() {
        writeln!(out, "not latin: squares {:?}", r.non_latin)?;
    }
    if let Some((i, j)) = r.failing_pair {
        writeln!(out, "not orthogonal: squares {i} and {j}")?;
    }
    writeln!(out, "complete: {}", r.is_complete)?;
    writeln!(out, "{}", if r.is_valid { "PASS" } else { "FAIL" })?;
    Ok(())
}

fn verify_mols_files(paths: &[PathBuf], cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let squares = read_squares(paths)?;
    let Some(order) = squares.first().map(|s| s.order()) else {
        bail!("no square files found");
    };
    let count = squares.len();
    let report = match MolsSet::new(order, Construction::Custom, squares) {
        Ok(set) => Ok(verify_mols_par(&set)),
        Err(e) => Err(e),
    };
    match (cfg.output_format, &report) {
        (OutputFormat::Json, Ok(r)) => emit_json(out, &json!({ "order": order, "squares": count, "report": report_json(r) }))?,
        (OutputFormat::Json, Err(e)) => emit_json(out, &json!({ "order": order, "squares": count, "error": e.to_string() }))?,
        (_, Ok(r)) => {
            writeln!(out, "{count} squares of order {order}")?;
            write_report(out, r)?;
        }
        (_, Err(e)) => writeln!(out, "{count} squares of order {order}: {e}\nFAIL")?,
    }
    Ok(Outcome::from_bool(report.is_ok_and(|r| r.is_valid)))
}
