//! Command-line toolkit for numerical ranges in sectors.
//!
//! Subcommands cover the full pipeline: fit the minimal sector of a matrix,
//! trace numerical-range and containment-region boundaries for plotting,
//! run the complete verification report, construct the extremal matrices
//! attaining the bounds, and fuzz the whole machinery with seeded random
//! families.
//!
//! Exit codes are stable: `0` all checks pass, `1` at least one inequality
//! or containment violated, `2` input/usage error, `3` numerical failure
//! (non-convergence, spread too wide to fit, singularity beyond threshold).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wrange_core::{
    boundary, extremal_matrix, sector_fit, verify_matrix, BlockPartition, Error, ExtremalParams,
    MatrixDocument, RandomKind, RandomSpec, RegionKind, RegionSpec, Sector, SplitMix64,
    VerifyOptions,
};

const EXIT_VIOLATED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "wrange",
    version,
    about = "Numerical ranges, minimal sectors, and block determinant/eigenvalue bounds",
    after_help = "Angles are radians and also accept pi fractions: 'pi/4', '-pi/6', '0.49pi'."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the minimal sector containing the numerical range of a matrix
    Fit {
        /// Matrix document (JSON)
        matrix: PathBuf,
        /// Support-sweep directions (at least 8)
        #[arg(long, default_value_t = 720)]
        samples: usize,
    },
    /// Trace the boundary of the numerical range as a polyline
    Range {
        /// Matrix document (JSON)
        matrix: PathBuf,
        /// Sweep directions / output rows (at least 8)
        #[arg(long, default_value_t = 720)]
        samples: usize,
        /// Output format: csv columns t,re,im or a JSON array of triples
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out: OutFormat,
    },
    /// Trace the boundary of the containment region R or Rtilde
    Region {
        /// Sector half-angle in [0, pi/2); 0 degenerates to the segment
        /// [0, 1] for both kinds and emits its two endpoints
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha: f64,
        /// Region kind: R contains the squared pencil eigenvalues, Rtilde
        /// the eigenvalues of the determinant-ratio block C
        #[arg(long, default_value = "R", value_parser = parse_kind)]
        kind: RegionKind,
        /// Boundary rows (phi swept uniformly over [-alpha, alpha])
        #[arg(long, default_value_t = 181)]
        samples: usize,
        /// Output format: csv columns phi,re,im or a JSON array of triples
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out: OutFormat,
    },
    /// Run every containment and determinant check, print the JSON report
    Verify {
        /// Matrix document (JSON)
        matrix: PathBuf,
        /// Leading block size; overrides the document's partition
        #[arg(long)]
        m: Option<usize>,
        /// Sector axis hypothesis (requires --alpha; fitted when absent)
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, requires = "alpha")]
        phi: Option<f64>,
        /// Sector half-angle hypothesis (requires --phi; fitted when absent)
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, requires = "phi")]
        alpha: Option<f64>,
        /// Slack for inequality and containment checks
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Construct the extremal matrix hitting the region boundary at (phi, r)
    Extremal {
        /// Sector half-angle in (0, pi/2)
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha: f64,
        /// Boundary direction parameter, |phi| <= alpha
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        /// Boundary radius: 1 - lambda^2 = r e^{2 i phi}
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        /// Leading block size
        #[arg(long)]
        m: usize,
        /// Matrix order (n >= 2m)
        #[arg(long)]
        n: usize,
        /// Output file; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify seeded random matrices in bulk, print a summary
    Fuzz {
        /// Number of trials (at least 1)
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Base seed; trial i uses seed XOR i
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest matrix order drawn (at least 2)
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Generator family
        #[arg(long, default_value = "shifted_gaussian", value_parser = parse_random_kind)]
        kind: RandomKind,
        /// Slack for inequality and containment checks
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

/// A failure carrying the process exit code and a message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionMismatch(_)
            | Error::BadSampleCount { .. }
            | Error::Domain(_)
            | Error::Unreachable { .. }
            | Error::NotApplicable(_)
            | Error::MidpointViolation(_)
            | Error::DegenerateTriangle => EXIT_INPUT,
            Error::NotHermitian { .. }
            | Error::ConvergenceFailure { .. }
            | Error::SingularBase { .. }
            | Error::SingularBlock { .. }
            | Error::SpreadTooWide { .. }
            | Error::OriginInterior => EXIT_NUMERICAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    // Polyline output is routinely piped into `head` and plotting scripts;
    // restore the default signal disposition so a closed pipe ends the
    // process quietly instead of panicking on the next write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Fit { matrix, samples } => cmd_fit(&matrix, samples),
        Command::Range {
            matrix,
            samples,
            out,
        } => cmd_range(&matrix, samples, out),
        Command::Region {
            alpha,
            kind,
            samples,
            out,
        } => cmd_region(alpha, kind, samples, out),
        Command::Verify {
            matrix,
            m,
            phi,
            alpha,
            tol,
        } => cmd_verify(&matrix, m, phi, alpha, tol),
        Command::Extremal {
            alpha,
            phi,
            r,
            m,
            n,
            out,
        } => cmd_extremal(alpha, phi, r, m, n, out.as_deref()),
        Command::Fuzz {
            trials,
            seed,
            nmax,
            kind,
            tol,
        } => cmd_fuzz(trials, seed, nmax, kind, tol),
    }
}

/// Parses an angle: plain radians or a pi fraction like `pi/4`, `-pi/6`,
/// `2pi/3`, `0.49pi`.
fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let value = if let Some(idx) = t.find("pi") {
        let coef = match t[..idx].trim() {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c
                .parse::<f64>()
                .map_err(|_| format!("bad coefficient {c:?} in angle {t:?}"))?,
        };
        let denom = match t[idx + 2..].trim() {
            "" => 1.0,
            d => d
                .strip_prefix('/')
                .ok_or_else(|| format!("expected '/denominator' after pi in {t:?}"))?
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("bad denominator in angle {t:?}"))?,
        };
        coef * std::f64::consts::PI / denom
    } else {
        t.parse::<f64>().map_err(|_| format!("bad angle {t:?}"))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle {t:?} is not finite"))
    }
}

fn parse_kind(s: &str) -> Result<RegionKind, String> {
    s.parse::<RegionKind>().map_err(|e| e.to_string())
}

fn parse_random_kind(s: &str) -> Result<RandomKind, String> {
    s.parse::<RandomKind>().map_err(|e| e.to_string())
}

fn load_document(path: &Path) -> Result<MatrixDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(MatrixDocument::from_json(&text)?)
}

fn print_polyline(rows: &[[f64; 3]], header: &str, out: OutFormat) {
    match out {
        OutFormat::Csv => {
            let mut text = String::with_capacity(rows.len() * 24 + header.len() + 1);
            text.push_str(header);
            text.push('\n');
            for row in rows {
                let _ = writeln!(text, "{},{},{}", row[0], row[1], row[2]);
            }
            print!("{text}");
        }
        OutFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(rows).expect("polyline serialization cannot fail")
            );
        }
    }
}

#[derive(Serialize)]
struct FitOutput {
    phi: f64,
    alpha: f64,
}

fn cmd_fit(path: &Path, samples: usize) -> Result<u8, Failure> {
    let a = load_document(path)?.matrix()?;
    let sector = sector_fit(&a, samples, wrange_core::numrange::DEFAULT_FIT_TOL)?;
    let out = FitOutput {
        phi: sector.phi(),
        alpha: sector.alpha(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("fit serialization cannot fail")
    );
    Ok(0)
}

fn cmd_range(path: &Path, samples: usize, out: OutFormat) -> Result<u8, Failure> {
    let a = load_document(path)?.matrix()?;
    let sweep = boundary(&a, samples)?;
    let rows: Vec<[f64; 3]> = sweep
        .iter()
        .map(|s| [s.angle, s.boundary_point.re, s.boundary_point.im])
        .collect();
    print_polyline(&rows, "t,re,im", out);
    Ok(0)
}

fn cmd_region(alpha: f64, kind: RegionKind, samples: usize, out: OutFormat) -> Result<u8, Failure> {
    let spec = RegionSpec::new(alpha, kind)?;
    let rows: Vec<[f64; 3]> = if alpha == 0.0 {
        // Degenerate half-angle: both regions collapse to the segment
        // [0, 1] (the radial profile tends to sec^2 alpha -> 1), so emit
        // its endpoints.
        vec![[0.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
    } else {
        wrange_core::boundary_samples(&spec, samples)?
            .iter()
            .map(|(phi, z)| [*phi, z.re, z.im])
            .collect()
    };
    print_polyline(&rows, "phi,re,im", out);
    Ok(0)
}

fn cmd_verify(
    path: &Path,
    m_flag: Option<usize>,
    phi: Option<f64>,
    alpha: Option<f64>,
    tol: f64,
) -> Result<u8, Failure> {
    let doc = load_document(path)?;
    let a = doc.matrix()?;
    let m = m_flag.or(doc.m).ok_or_else(|| {
        Failure::input("no partition size: pass --m or store \"m\" in the document")
    })?;
    let partition = BlockPartition::new(m, a.rows())?;
    let sector = match (phi, alpha) {
        (Some(p), Some(al)) => Some(Sector::new(p, al)?),
        // clap's `requires` keeps these in lockstep.
        _ => None,
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Failure::input(format!("tolerance must be >= 0, got {tol}")));
    }
    let opts = VerifyOptions {
        tol,
        ..VerifyOptions::default()
    };
    let report = verify_matrix(&a, partition, sector, &opts)?;
    if let Some(v) = report.sector.hypothesis_violation {
        eprintln!(
            "warning: supplied sector hypothesis violated by {v:.3e} on boundary samples; \
             downstream containments are not guaranteed"
        );
    }
    println!("{}", report.to_json());
    Ok(if report.pass { 0 } else { EXIT_VIOLATED })
}

fn cmd_extremal(
    alpha: f64,
    phi: f64,
    r: f64,
    m: usize,
    n: usize,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let params = ExtremalParams::new(alpha, phi, r, m, n)?;
    let a = extremal_matrix(&params);
    let doc = MatrixDocument::new(&a, Some(m))?
        .with_meta("generator", "extremal")
        .with_meta("alpha", &params.alpha.to_string())
        .with_meta("phi", &params.phi.to_string())
        .with_meta("r", &params.r.to_string())
        .with_meta("theta", &params.theta.to_string());
    let text = doc.to_json();
    match out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(0)
}

/// Worst-case slacks across all fuzz trials; `null` until first exercised.
#[derive(Serialize, Default)]
struct WorstMargins {
    /// Smallest determinant-bound slack (log scale).
    det_margin: Option<f64>,
    /// Smallest containment margin over squared pencil eigenvalues and
    /// determinant-ratio eigenvalues.
    region_margin: Option<f64>,
    /// Smallest gap `sec^2(alpha) - rho(C)`.
    spectral_slack: Option<f64>,
    /// Largest near-kernel residual on singular-block paths.
    kernel_residual: Option<f64>,
}

impl WorstMargins {
    fn take_min(slot: &mut Option<f64>, candidate: f64) {
        *slot = Some(slot.map_or(candidate, |v| v.min(candidate)));
    }

    fn take_max(slot: &mut Option<f64>, candidate: f64) {
        *slot = Some(slot.map_or(candidate, |v| v.max(candidate)));
    }

    fn absorb(&mut self, report: &wrange_core::VerificationReport) {
        if let Some(margin) = report.det.margin {
            Self::take_min(&mut self.det_margin, margin);
        }
        if let Some(lambda) = &report.lambda {
            for &m in &lambda.sq_margins {
                Self::take_min(&mut self.region_margin, m);
            }
        }
        if let Some(ratio) = &report.c {
            for &m in &ratio.margins {
                Self::take_min(&mut self.region_margin, m);
            }
        }
        if let Some(sr) = &report.spectral_radius {
            Self::take_min(&mut self.spectral_slack, sr.bound - sr.rho);
        }
        if let wrange_core::verify::PathReport::SingularBase {
            kernel_residual, ..
        } = report.path
        {
            Self::take_max(&mut self.kernel_residual, kernel_residual);
        }
        if let Some(acc) = &report.accretive_dissipative {
            if let Some(margin) = acc.det_margin {
                Self::take_min(&mut self.det_margin, margin);
            }
            for &m in &acc.disk_margins {
                Self::take_min(&mut self.region_margin, m);
            }
            if let Some(rotated) = &acc.rotated {
                self.absorb(rotated);
            }
        }
    }
}

#[derive(Serialize)]
struct FuzzSummary {
    kind: String,
    trials: u64,
    seed: u64,
    nmax: usize,
    tol: f64,
    failures: u64,
    failing_seeds: Vec<u64>,
    worst: WorstMargins,
}

fn cmd_fuzz(trials: u64, seed: u64, nmax: usize, kind: RandomKind, tol: f64) -> Result<u8, Failure> {
    if trials == 0 {
        return Err(Failure::input("at least one trial is required"));
    }
    if nmax < 2 {
        return Err(Failure::input(format!(
            "nmax must be at least 2, got {nmax}"
        )));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Failure::input(format!("tolerance must be >= 0, got {tol}")));
    }
    let opts = VerifyOptions {
        tol,
        ..VerifyOptions::default()
    };
    let mut failures = 0u64;
    let mut failing_seeds = Vec::new();
    let mut worst = WorstMargins::default();
    for index in 0..trials {
        let trial_seed = seed ^ index;
        let mut rng = SplitMix64::new(trial_seed);
        let n = 2 + rng.below((nmax - 1) as u64) as usize;
        let m = 1 + rng.below((n / 2) as u64) as usize;
        // The generator's own cone is the verified hypothesis: it holds by
        // construction, so any reported violation is a real finding.
        let (phi, alpha) = match kind {
            RandomKind::AccretiveDissipative => {
                (std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_4)
            }
            _ => (
                rng.uniform_in(-std::f64::consts::PI, std::f64::consts::PI),
                rng.uniform_in(0.05, 1.5),
            ),
        };
        let matrix_seed = rng.next_u64();
        let spec = RandomSpec::new(n, matrix_seed, kind, phi, alpha)?;
        let a = spec.generate()?;
        let partition = BlockPartition::new(m, n)?;
        let sector = Sector::new(phi, alpha)?;
        match verify_matrix(&a, partition, Some(sector), &opts) {
            Ok(report) => {
                worst.absorb(&report);
                if !report.pass {
                    failures += 1;
                    failing_seeds.push(trial_seed);
                }
            }
            Err(_) => {
                failures += 1;
                failing_seeds.push(trial_seed);
            }
        }
    }
    let summary = FuzzSummary {
        kind: kind.to_string(),
        trials,
        seed,
        nmax,
        tol,
        failures,
        failing_seeds,
        worst,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("summary serialization cannot fail")
    );
    Ok(if failures == 0 { 0 } else { EXIT_VIOLATED })
}

#[cfg(test)]
mod tests {
    use super::parse_angle;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn angles_parse_as_radians_and_pi_fractions() {
        assert_eq!(parse_angle("0").unwrap(), 0.0);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("-pi/6").unwrap(), -PI / 6.0);
        assert_eq!(parse_angle("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("0.49pi").unwrap(), 0.49 * PI);
        assert_eq!(parse_angle(" pi / 2 ").unwrap(), PI / 2.0);
    }

    #[test]
    fn bad_angles_are_rejected() {
        assert!(parse_angle("").is_err());
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("pi4").is_err());
        assert!(parse_angle("pi/0x").is_err());
        assert!(parse_angle("nan").is_err());
        assert!(parse_angle("inf").is_err());
    }
}
