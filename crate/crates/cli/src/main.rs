use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use slicecubic::archimedean::{
    kernels::kernel_fourier_check, siegel_extrapolation, singular_integral, DensityEstimate, QuadConfig,
};
use slicecubic::arcs::n_split;
use slicecubic::expsum::{chi_p, count_mp, eval_a, euler_product, series_terms};
use slicecubic::lattice::{brute, count_n, count_r4, count_r6, CountBound, LinearSpaceFamily};
use slicecubic::parse::{parse_bound_list, parse_rational, parse_real_list};
use slicecubic::pipeline::{run_verify, VerifyConfig};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "slicecubic", version, about = "Counts and densities for the sliced cubic system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMode {
    #[value(name = "N")]
    N,
    R4,
    R6,
    SpacesUnion,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArcReport {
    PerN,
    Aggregate,
}

#[derive(Subcommand)]
enum Command {
    /// Exact lattice counts.
    Count {
        #[arg(long = "B")]
        bound: u32,
        #[arg(long, value_enum, default_value = "N")]
        mode: CountMode,
        /// Write the representation counts as `n,count` lines (r4 and r6 only).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Partial singular series up to modulus Q.
    Series {
        #[arg(long = "Q")]
        q: u64,
        #[arg(long)]
        terms: bool,
    },
    /// One local density.
    Chip {
        #[arg(long)]
        p: u64,
        #[arg(long = "H")]
        depth: u32,
    },
    /// Euler product over primes up to P.
    Euler {
        #[arg(long = "P")]
        primes: u64,
        #[arg(long = "H")]
        depth: u32,
        #[arg(long)]
        factors: bool,
    },
    /// Solutions modulo p^h.
    Mp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
    },
    /// The singular integral and its density routes.
    Singint {
        /// Flat `key = value` file; defaults are used when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Numerical Fourier transform of the kernel against its closed form.
    KernelCheck {
        #[arg(long)]
        eta: f64,
        /// Comma-separated gamma values.
        #[arg(long, default_value = "0,0.05,0.2,1")]
        gamma: String,
        #[arg(long, default_value_t = 1e5)]
        cutoff: f64,
    },
    /// Major/minor arc split of N(B).
    Arcs {
        #[arg(long = "B")]
        bound: u32,
        /// Arc exponent as a rational such as `1/9`.
        #[arg(long, default_value = "1/9")]
        delta: String,
        #[arg(long, value_enum, default_value = "aggregate")]
        report: ArcReport,
        /// Per-n output file; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Full run; exits nonzero if any hard check fails.
    Verify {
        #[arg(long = "B", default_value = "20,30,40,50")]
        bounds: String,
        #[arg(long, default_value_t = 100)]
        primes: u64,
        #[arg(long, default_value_t = 2048)]
        depth: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
    },
}

fn print(v: &Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn load_config(path: Option<&Path>) -> Result<QuadConfig> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(QuadConfig::parse(&text)?)
        }
        None => Ok(QuadConfig::default()),
    }
}

fn count(bound: u32, mode: CountMode, csv: Option<&Path>) -> Result<()> {
    let b = CountBound::new(bound)?;
    let start = Instant::now();
    let mut out = json!({ "B": bound });
    match mode {
        CountMode::N => out["N"] = json!(count_n(b)?),
        CountMode::SpacesUnion => out["spaces_union"] = json!(LinearSpaceFamily::new().union_count(b)?),
        CountMode::Oracle => {
            if bound > 8 {
                bail!("the brute-force oracle is limited to B <= 8");
            }
            out["N"] = json!(brute::n_eight_free(b));
        }
        CountMode::R4 | CountMode::R6 => {
            let reps = if matches!(mode, CountMode::R4) { count_r4(b)? } else { count_r6(b)? };
            out["zero"] = json!(reps.get(0));
            out["support"] = json!(reps.support_len());
            out["total"] = json!(reps.total().to_string());
            if let Some(path) = csv {
                reps.write_csv(BufWriter::new(File::create(path)?))?;
            }
        }
    }
    out["elapsed_seconds"] = json!(start.elapsed().as_secs_f64());
    print(&out)
}

fn singint(path: Option<&Path>) -> Result<()> {
    let cfg = load_config(path)?;
    let (si, profile) = singular_integral(&cfg)?;
    let fourier = DensityEstimate::from_fourier(&si);
    let siegel = siegel_extrapolation(&cfg)?;
    let mc = DensityEstimate::from_siegel(&siegel, si.value);
    let schmidt = DensityEstimate::from_schmidt(&profile, (2.0 / si.outer_radius).max(0.02), si.value)?;
    print(&json!({
        "J1": si.value,
        "chi_infinity": mc.chi_infinity,
        "routes": [fourier, mc, schmidt],
        "error_bars": {
            "radius_halving": fourier.error_bar,
            "tail": si.tail,
            "siegel_three_sigma": mc.error_bar,
        },
        "siegel": siegel,
        "radii_used": { "outer": si.outer_radius, "inner": si.inner_radius, "doublings": si.doublings },
        "seed": cfg.mc_seed,
    }))
}

fn arcs(bound: u32, delta: &str, report: ArcReport, csv: Option<&Path>) -> Result<()> {
    let delta = parse_rational(delta)?;
    let split = n_split(CountBound::new(bound)?, delta)?;
    match report {
        ArcReport::Aggregate => {
            let mut v = serde_json::to_value(&split)?;
            v["N"] = json!(split.n_exact);
            v["N_major"] = json!(split.n_major);
            v["N_minor"] = json!(split.n_minor);
            print(&v)
        }
        ArcReport::PerN => {
            let sink: Box<dyn Write> = match csv {
                Some(p) => Box::new(File::create(p)?),
                None => Box::new(std::io::stdout().lock()),
            };
            let mut w = BufWriter::new(sink);
            writeln!(w, "n,u_major,u_minor,v_n")?;
            for r in &split.per_n {
                writeln!(w, "{},{},{},{}", r.n, r.u_major, r.u_minor, r.v_n)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn verify(bounds: &str, primes: u64, depth: u64, seed: u64, config: Option<&Path>, out: &Path) -> Result<bool> {
    let cfg = VerifyConfig {
        bounds: parse_bound_list(bounds)?,
        primes,
        depth,
        seed,
        quad: load_config(config)?,
        ..VerifyConfig::default()
    };
    let report = run_verify(&cfg)?;
    std::fs::write(out, report.to_json() + "\n").with_context(|| format!("writing {}", out.display()))?;
    report.write_rows_csv(BufWriter::new(File::create(out.with_extension("rows.csv"))?))?;
    report.write_checks_csv(BufWriter::new(File::create(out.with_extension("checks.csv"))?))?;
    for c in report.failed_checks() {
        eprintln!("{} check failed: {} {}", if c.hard { "hard" } else { "soft" }, c.name, c.detail);
    }
    Ok(report.hard_checks_passed())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Count { bound, mode, csv } => count(bound, mode, csv.as_deref())?,
        Command::Series { q, terms } => {
            let t = series_terms(q)?;
            let value: f64 = t.iter().map(|c| c.value).sum();
            let mut v = json!({ "Q": q, "value": value });
            if terms {
                v["terms"] = serde_json::to_value(&t)?;
            }
            print(&v)?;
        }
        Command::Chip { p, depth } => print(&serde_json::to_value(chi_p(p, depth)?)?)?,
        Command::Euler { primes, depth, factors } => {
            let e = euler_product(primes, depth)?;
            let mut v = json!({ "P": primes, "H": depth, "value": e.value, "tail_estimate": e.tail_estimate });
            if factors {
                v["factors"] = serde_json::to_value(&e.factors)?;
            }
            print(&v)?;
        }
        Command::Mp { p, h } => {
            let m = count_mp(p, h)?;
            let partial: f64 = (0..=h).map(|j| eval_a(p.pow(j)).map(|c| c.value)).sum::<Result<f64, _>>()?;
            print(&json!({
                "p": p,
                "h": h,
                "count": m.to_string(),
                "normalized": m as f64 / (p as f64).powi(7 * h as i32),
                "partial_series": partial,
            }))?;
        }
        Command::Singint { config } => singint(config.as_deref())?,
        Command::KernelCheck { eta, gamma, cutoff } => {
            let checks = parse_real_list(&gamma)?
                .into_iter()
                .map(|g| kernel_fourier_check(eta, g, cutoff))
                .collect::<Result<Vec<_>, _>>()?;
            let worst = checks.iter().map(|c| (c.numerical - c.exact).abs()).fold(0.0, f64::max);
            print(&json!({ "eta": eta, "cutoff": cutoff, "max_error": worst, "points": checks }))?;
        }
        Command::Arcs { bound, delta, report, csv } => arcs(bound, &delta, report, csv.as_deref())?,
        Command::Verify { bounds, primes, depth, seed, config, out } => {
            return verify(&bounds, primes, depth, seed, config.as_deref(), &out)
        }
    }
    Ok(true)
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
