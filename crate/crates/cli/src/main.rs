//! `qlab`: expand series, verify congruences, build Radu certificates and
//! analyse eta quotients from the command line.
//!
//! Exit codes: 0 when every asserted check passes, 1 on a counterexample,
//! 2 on usage, parse or hypothesis errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qlab_core::congruence::{
    find_claim, theorem_registry, verify_claims, ClaimKind, CongruenceClaim, EngineOptions,
    RegistryGrid, VerificationReport,
};
use qlab_core::modforms::{
    analyze, character, density_scan, eta8_16_form, eta8_16_series, hecke_tp, EtaQuotientForm,
};
use qlab_core::optk::{opt_series, opt_series_mod, overpartition_series};
use qlab_core::par::Exec;
use qlab_core::radu::{radu_verify, recheck_certificate, RaduCertificate, RaduStatus, RaduTuple};
use qlab_core::series::{eta_quotient_series, set_max_trunc, DEFAULT_MAX_TRUNC};
use qlab_core::special::{borwein_a, f_neg};
use qlab_core::{EtaExponentMap, TruncatedSeries};

#[derive(Parser, Debug)]
#[command(
    name = "qlab",
    version,
    about = "q-series expansion and partition congruence checks"
)]
struct Cli {
    /// Worker threads; 1 forces the sequential path.
    #[arg(long, global = true, default_value_t = default_jobs(), value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Refuse to build series with more coefficients than this.
    #[arg(long, global = true, env = "QC_TRUNC_MAX", default_value_t = DEFAULT_MAX_TRUNC as u64,
          value_parser = clap::value_parser!(u64).range(8..))]
    trunc_max: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the first coefficients of a series.
    Expand(ExpandArgs),
    /// Check registered congruences.
    Verify(VerifyArgs),
    /// Scan the conjectured congruences; results never change the exit code.
    Scan(ScanArgs),
    /// Run the finite Radu check for one tuple, or re-check a certificate.
    Radu(RaduArgs),
    /// Eta-quotient analysis and Hecke images.
    #[command(subcommand)]
    Eta(EtaCommand),
    /// Count coefficients divisible by a modulus.
    Density(DensityArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesFamily {
    Optk,
    Overpartition,
    EtaQuotient,
    BorweinA,
    FNeg,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long, value_enum)]
    family: SeriesFamily,
    /// `k` for optk and f-neg.
    #[arg(long)]
    k: Option<u64>,
    /// `q -> q^scale` for borwein-a.
    #[arg(long, default_value_t = 1)]
    scale: usize,
    /// `delta:exponent` pairs for eta-quotient, e.g. "2:1,1:-2".
    #[arg(long, allow_hyphen_values = true)]
    exponents: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trunc: u64,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("select").required(true).args(["claim", "all_theorems", "list"])))]
struct VerifyArgs {
    /// Claim id, as listed by `verify --list`.
    #[arg(long)]
    claim: Vec<String>,
    #[arg(long)]
    all_theorems: bool,
    /// Print the registry instead of checking it.
    #[arg(long)]
    list: bool,
    /// Check `0 <= n <= nmax` for every selected claim.
    #[arg(long)]
    nmax: Option<u64>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, required = true)]
    conjectures: bool,
    #[arg(long)]
    i_max: Option<u32>,
    #[arg(long)]
    j_max: Option<u32>,
    /// Multipliers coprime to 6, comma separated; may be empty.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    remark_i: Option<String>,
    #[arg(long)]
    remark_r: Option<String>,
    #[arg(long)]
    nmax: Option<u64>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["check", "m"])))]
struct RaduArgs {
    /// Re-check a certificate file instead of building one.
    #[arg(long, conflicts_with_all = ["m", "big_m", "big_n", "t", "r", "rprime", "u"])]
    check: Option<PathBuf>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long = "M", requires = "m")]
    big_m: Option<u64>,
    #[arg(long = "N", requires = "m")]
    big_n: Option<u64>,
    #[arg(long, requires = "m")]
    t: Option<u64>,
    #[arg(long, requires = "m", allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, requires = "m", allow_hyphen_values = true)]
    rprime: Option<String>,
    #[arg(long, requires = "m")]
    u: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum EtaCommand {
    /// Weight, 24-conditions, character and cusp orders of an eta quotient.
    Analyze {
        #[arg(long)]
        level: u64,
        #[arg(long, allow_hyphen_values = true)]
        exponents: String,
    },
    /// `T_p` applied to `η(8z)η(16z)`; zero when the eigen-relation holds.
    Hecke {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 200)]
        trunc: usize,
    },
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long)]
    modulus: u64,
    #[arg(long = "X")]
    x: u64,
    /// Which `OPT_k` to scan.
    #[arg(long, default_value_t = 3)]
    k: u64,
}

fn default_jobs() -> u64 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u64)
}

struct Run {
    format: Format,
    exec: Exec,
    out: Box<dyn Write>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> Result<ExitCode> {
    set_max_trunc(usize::try_from(cli.trunc_max).unwrap_or(usize::MAX));
    let exec = configure_threads(cli.jobs)?;
    let out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(io::BufWriter::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    let mut run = Run {
        format: cli.format,
        exec,
        out,
    };
    let code = match cli.command {
        Command::Expand(a) => cmd_expand(&mut run, a),
        Command::Verify(a) => cmd_verify(&mut run, a),
        Command::Scan(a) => cmd_scan(&mut run, a),
        Command::Radu(a) => cmd_radu(&mut run, a),
        Command::Eta(EtaCommand::Analyze { level, exponents }) => {
            cmd_eta_analyze(&mut run, level, &exponents)
        }
        Command::Eta(EtaCommand::Hecke { p, trunc }) => cmd_eta_hecke(&mut run, p, trunc),
        Command::Density(a) => cmd_density(&mut run, a),
    }?;
    run.out.flush()?;
    Ok(code)
}

#[cfg(feature = "parallel")]
fn configure_threads(jobs: u64) -> Result<Exec> {
    if jobs == 1 {
        return Ok(Exec::Sequential);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs as usize)
        .build_global()
        .context("starting worker threads")?;
    Ok(Exec::Parallel)
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_jobs: u64) -> Result<Exec> {
    Ok(Exec::Sequential)
}

fn write_series(run: &mut Run, s: &TruncatedSeries) -> Result<()> {
    match run.format {
        Format::Tsv => write!(run.out, "{}", s.to_text())?,
        Format::Json => writeln!(run.out, "{}", s.to_json())?,
    }
    Ok(())
}

fn write_json(run: &mut Run, value: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut run.out, value)?;
    writeln!(run.out)?;
    Ok(())
}

fn cmd_expand(run: &mut Run, a: ExpandArgs) -> Result<ExitCode> {
    let trunc = usize::try_from(a.trunc)?;
    let need_k = || a.k.context("--k is required for this family");
    let s = match a.family {
        SeriesFamily::Optk => opt_series(need_k()?, trunc)?,
        SeriesFamily::Overpartition => overpartition_series(trunc)?,
        SeriesFamily::EtaQuotient => {
            let spec = a
                .exponents
                .as_deref()
                .context("--exponents is required for eta-quotient")?;
            eta_quotient_series(&EtaExponentMap::parse_auxiliary(spec)?, trunc)?
        }
        SeriesFamily::BorweinA => borwein_a(a.scale, trunc)?,
        SeriesFamily::FNeg => f_neg(need_k()?, trunc)?,
    };
    write_series(run, &s)?;
    Ok(ExitCode::SUCCESS)
}

fn write_reports(run: &mut Run, reports: &[VerificationReport]) -> Result<()> {
    match run.format {
        Format::Tsv => {
            writeln!(run.out, "{}", VerificationReport::TSV_HEADER)?;
            for r in reports {
                writeln!(run.out, "{}", r.to_tsv())?;
            }
        }
        Format::Json => write_json(run, &reports)?,
    }
    Ok(())
}

fn cmd_verify(run: &mut Run, a: VerifyArgs) -> Result<ExitCode> {
    let registry = theorem_registry(&RegistryGrid::default());
    if a.list {
        match run.format {
            Format::Tsv => {
                writeln!(run.out, "claim_id\tkind\tstatement\tdefault_n_max")?;
                for c in &registry {
                    writeln!(
                        run.out,
                        "{}\t{}\t{}\t{}",
                        c.id,
                        c.kind,
                        c.statement(),
                        c.default_n_max
                    )?;
                }
            }
            Format::Json => write_json(run, &registry)?,
        }
        return Ok(ExitCode::SUCCESS);
    }
    let claims: Vec<CongruenceClaim> = if a.all_theorems {
        registry
            .iter()
            .filter(|c| c.kind == ClaimKind::Theorem)
            .cloned()
            .collect()
    } else {
        a.claim
            .iter()
            .map(|id| find_claim(&registry, id).cloned())
            .collect::<Result<_, _>>()?
    };
    let reports = verify_claims(
        &claims,
        EngineOptions {
            n_max: a.nmax,
            exec: run.exec,
        },
    )?;
    write_reports(run, &reports)?;
    let failed = reports
        .iter()
        .any(|r| r.kind != Some(ClaimKind::Conjecture) && !r.passed());
    Ok(if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_scan(run: &mut Run, a: ScanArgs) -> Result<ExitCode> {
    let mut grid = RegistryGrid::default();
    if let Some(v) = a.i_max {
        grid.conj_i_max = v;
    }
    if let Some(v) = a.j_max {
        grid.conj_j_max = v;
    }
    if let Some(v) = &a.k {
        grid.conj_k = parse_list(v)?;
    }
    if let Some(v) = &a.remark_i {
        grid.remark_i = parse_list(v)?;
    }
    if let Some(v) = &a.remark_r {
        grid.remark_r = parse_list(v)?;
    }
    let claims: Vec<_> = theorem_registry(&grid)
        .into_iter()
        .filter(|c| c.kind == ClaimKind::Conjecture)
        .collect();
    let reports = verify_claims(
        &claims,
        EngineOptions {
            n_max: a.nmax,
            exec: run.exec,
        },
    )?;
    write_reports(run, &reports)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().with_context(|| format!("list entry `{x}`")))
        .collect()
}

fn radu_exit(status: &RaduStatus) -> ExitCode {
    match status {
        RaduStatus::Pass => ExitCode::SUCCESS,
        RaduStatus::Fail { .. } => ExitCode::FAILURE,
        RaduStatus::Inapplicable { .. } => ExitCode::from(2),
    }
}

fn cmd_radu(run: &mut Run, a: RaduArgs) -> Result<ExitCode> {
    if let Some(path) = a.check {
        let text =
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let cert: RaduCertificate = serde_json::from_str(&text).context("parsing certificate")?;
        let mismatches = recheck_certificate(&cert)?;
        write_json(
            run,
            &json!({
                "file": path.display().to_string(),
                "consistent": mismatches.is_empty(),
                "mismatched_fields": mismatches,
                "certificate": cert.status,
            }),
        )?;
        if !mismatches.is_empty() {
            return Ok(ExitCode::FAILURE);
        }
        return Ok(radu_exit(&cert.status));
    }
    let missing = |name: &str| format!("--{name} is required");
    let r: EtaExponentMap = a.r.as_deref().with_context(|| missing("r"))?.parse()?;
    let rp =
        EtaExponentMap::parse_auxiliary(a.rprime.as_deref().with_context(|| missing("rprime"))?)?;
    let tuple = RaduTuple::new(
        a.m.with_context(|| missing("m"))?,
        a.big_m.with_context(|| missing("M"))?,
        a.big_n.with_context(|| missing("N"))?,
        a.t.with_context(|| missing("t"))?,
        r,
    )?;
    let cert = radu_verify(&tuple, &rp, a.u.with_context(|| missing("u"))?)?;
    write_json(run, &cert)?;
    if let RaduStatus::Inapplicable { reason } = &cert.status {
        eprintln!("inapplicable: {reason}");
    }
    Ok(radu_exit(&cert.status))
}

fn cmd_eta_analyze(run: &mut Run, level: u64, exponents: &str) -> Result<ExitCode> {
    let form = EtaQuotientForm::new(level, exponents.parse()?)?;
    write_json(run, &analyze(&form)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_eta_hecke(run: &mut Run, p: u64, trunc: usize) -> Result<ExitCode> {
    if trunc == 0 {
        bail!("--trunc must be positive");
    }
    let chi = character(&eta8_16_form(), i64::try_from(p)?)?;
    let needed = usize::try_from(p)?
        .checked_mul(trunc - 1)
        .and_then(|x| x.checked_add(1))
        .context("truncation overflows")?;
    let image = hecke_tp(&eta8_16_series(needed)?, p, 1, chi, trunc)?;
    write_series(run, &image)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_density(run: &mut Run, a: DensityArgs) -> Result<ExitCode> {
    let trunc = usize::try_from(a.x)?
        .checked_add(1)
        .context("X too large")?;
    let report = if a.modulus >= 2 {
        density_scan(&opt_series_mod(a.k, trunc, a.modulus)?, a.modulus, a.x)?
    } else {
        density_scan(&opt_series(a.k, trunc)?, a.modulus, a.x)?
    };
    match run.format {
        Format::Tsv => {
            writeln!(
                run.out,
                "k\tmodulus\tX\tdivisible\tnon_divisible\tproportion"
            )?;
            writeln!(
                run.out,
                "{}\t{}\t{}\t{}\t{}\t{:.6}",
                a.k,
                report.modulus,
                report.x,
                report.divisible,
                report.non_divisible,
                report.proportion
            )?;
        }
        Format::Json => write_json(run, &report)?,
    }
    Ok(ExitCode::SUCCESS)
}
