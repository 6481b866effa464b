//! Command-line front end: reproducible verification runs over the
//! modular polynomial pipeline with a persistent cache.
//!
//! Exit codes: 0 success, 1 verification failure (a theorem check failed
//! on computed data), 2 usage error, 3 environment or cache error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use lambda_lab::arith::is_prime;
use lambda_lab::error::Error;
use lambda_lab::finitefield::{
    corollary_check, ordinary_vanishing_check, supersingular_lambdas, Fp2Field, FpPoly,
};
use lambda_lab::modpoly::{
    cache_load, cache_store, compute_modpoly, diag_polynomial, r_polynomial, verify_kronecker,
    verify_symmetry, BivarIntPoly, SolverOpts,
};
use lambda_lab::padic::{class_number, cm_lift, count_check_3h, verify_thm3};
use lambda_lab::pairing::build_pairing_matrix;
use lambda_lab::report::RunReport;

#[derive(Parser)]
#[command(name = "lambda-lab", version, about = "Modular polynomials for Legendre lambda-invariants and their supersingular congruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Cache directory for computed modular polynomials
    /// (the LAMBDA_LAB_CACHE environment variable overrides this).
    #[arg(long, global = true, default_value = "modpoly-cache")]
    cache_dir: PathBuf,
    /// Recompute instead of touching the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker thread cap for the CRT solver.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_parser = ["text", "json"], default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Compute (or load) and verify F_p, then print it.
    Modpoly {
        p: u64,
        /// Series precision override (default (p+2)^2 + 16).
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Run the full congruence suite at p: symmetry, Kronecker, diagonal
    /// congruence, R integrality, the corollary signs, ordinary vanishing.
    Verify { p: u64 },
    /// Enumerate the supersingular lambda-invariants of characteristic p.
    Ss { p: u64 },
    /// Class number h(-p) and the count |S ∩ F_p| = 3h(-p).
    Classnum { p: u64 },
    /// CM-lift a supersingular lambda0 in F_p to Z_p[sqrt(-p)] and verify
    /// the final congruence.
    Cmlift {
        p: u64,
        lambda0: u64,
        /// Target p-adic precision of the lift.
        #[arg(long, default_value_t = 20)]
        prec: u32,
    },
    /// Assemble the residual pairing matrix at p.
    Pairing { p: u64 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.common.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_) => 2,
                Error::Cache(_) | Error::Io(_) => 3,
                _ => 1,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Modpoly { p, precision } => cmd_modpoly(cli, p, precision),
        Command::Verify { p } => cmd_verify(cli, p),
        Command::Ss { p } => cmd_ss(cli, p),
        Command::Classnum { p } => cmd_classnum(cli, p),
        Command::Cmlift { p, lambda0, prec } => cmd_cmlift(cli, p, lambda0, prec),
        Command::Pairing { p } => cmd_pairing(cli, p),
    }
}

fn cache_dir(common: &Common) -> PathBuf {
    match std::env::var_os("LAMBDA_LAB_CACHE") {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => common.cache_dir.clone(),
    }
}

fn cache_path(dir: &Path, p: u64) -> PathBuf {
    dir.join(format!("Fp_{p}.txt"))
}

/// Load F_p from the cache or compute and store it.
fn obtain_modpoly(common: &Common, p: u64, precision: Option<usize>) -> Result<BivarIntPoly, Error> {
    let opts = SolverOpts { precision, ..SolverOpts::default() };
    if common.no_cache {
        return compute_modpoly(p, &opts);
    }
    let dir = cache_dir(common);
    let path = cache_path(&dir, p);
    if path.exists() {
        return cache_load(p, &path);
    }
    let f = compute_modpoly(p, &opts)?;
    std::fs::create_dir_all(&dir)?;
    cache_store(&f, &path)?;
    Ok(f)
}

fn require_odd_prime(p: u64, min: u64) -> Result<(), Error> {
    if p < min || p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("p must be a prime >= {min}; got {p}")));
    }
    Ok(())
}

fn finish(report: &mut RunReport, started: Instant, format: &str) -> ExitCode {
    report.timing_ms = started.elapsed().as_millis();
    match format {
        "json" => println!("{}", report.render_json()),
        _ => print!("{}", report.render_text()),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_modpoly(cli: &Cli, p: u64, precision: Option<usize>) -> Result<ExitCode, Error> {
    require_odd_prime(p, 3)?;
    let started = Instant::now();
    let f = obtain_modpoly(&cli.common, p, precision)?;
    let sym = verify_symmetry(&f);
    let kron = verify_kronecker(&f);
    if cli.common.format == "json" {
        let coeffs: BTreeMap<String, String> = f
            .terms()
            .map(|(&(i, j), c)| (format!("{i},{j}"), c.to_string()))
            .collect();
        let doc = serde_json::json!({
            "p": p,
            "coeffs": coeffs,
            "checks": {
                "symmetry": sym,
                "kronecker": kron,
            },
            "timing_ms": started.elapsed().as_millis() as u64,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    } else {
        println!("F_{p}(X,Y): {} nonzero terms", f.num_terms());
        for (&(i, j), c) in f.terms() {
            println!("  X^{i} Y^{j}: {c}");
        }
        println!("  symmetry: {}", if sym { "PASS" } else { "FAIL" });
        println!("  kronecker: {}", if kron { "PASS" } else { "FAIL" });
        println!("  timing: {} ms", started.elapsed().as_millis());
    }
    Ok(if sym && kron { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_verify(cli: &Cli, p: u64) -> Result<ExitCode, Error> {
    require_odd_prime(p, 5)?;
    let started = Instant::now();
    let mut report = RunReport::new("verify", p);
    let f = obtain_modpoly(&cli.common, p, None)?;
    report.check("symmetry", verify_symmetry(&f), "F(X,Y) = F(Y,X)", "computed");
    report.check(
        "kronecker",
        verify_kronecker(&f),
        "F = (X^p - Y)(X - Y^p) mod p",
        "computed",
    );
    let diag = diag_polynomial(&f)?;
    report.check("diagonal congruence", true, "F(X,X) = -(X^p - X)^2 mod p", "holds");
    let r = r_polynomial(&f)?;
    report.check(
        "R integrality",
        true,
        "p | every coefficient of F(X, X^p)",
        format!("R has degree {}", r.degree()),
    );
    let _ = diag;
    let set = supersingular_lambdas(p)?;
    report.note(format!(
        "supersingular lambdas ({} of {} in F_p): {}",
        set.count_in_prime_field(),
        set.len(),
        set.lambdas().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")
    ));
    let rbar = FpPoly::from_int_poly(&r, p);
    let cor = corollary_check(p, &rbar, &set)?;
    report.check(
        "corollary signs",
        true,
        "eps in {+1,-1}, + when p = 1 mod 4 or lambda in F_p",
        format!(
            "signs [{}]",
            cor.signs().iter().map(|s| format!("{s:+}")).collect::<Vec<_>>().join(", ")
        ),
    );
    let van = ordinary_vanishing_check(p, &rbar, &set)?;
    report.check(
        "ordinary vanishing",
        van.all_vanish,
        "Rbar(lambda) = 0 off the supersingular locus",
        format!("{} failures", van.failures.len()),
    );
    report.note(format!(
        "Rbar(0) = {}, Rbar(1) = {} (recorded, not asserted)",
        van.rbar_at_zero, van.rbar_at_one
    ));
    Ok(finish(&mut report, started, &cli.common.format))
}

fn cmd_ss(cli: &Cli, p: u64) -> Result<ExitCode, Error> {
    require_odd_prime(p, 5)?;
    let started = Instant::now();
    let mut report = RunReport::new("ss", p);
    let set = supersingular_lambdas(p)?;
    report.check(
        "census size",
        set.len() == ((p - 1) / 2) as usize,
        format!("(p-1)/2 = {}", (p - 1) / 2),
        set.len(),
    );
    let field = Fp2Field::new(p)?;
    report.check("frobenius closure", set.is_frobenius_closed(&field), "closed", "computed");
    report.note(format!(
        "{} ({} of {} in F_p)",
        set.lambdas().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", "),
        set.count_in_prime_field(),
        set.len()
    ));
    Ok(finish(&mut report, started, &cli.common.format))
}

fn cmd_classnum(cli: &Cli, p: u64) -> Result<ExitCode, Error> {
    require_odd_prime(p, 7)?;
    if p % 4 != 3 {
        return Err(Error::InvalidInput(format!(
            "classnum needs p = 3 mod 4 (discriminant -p must be fundamental); got {p}"
        )));
    }
    let started = Instant::now();
    let mut report = RunReport::new("classnum", p);
    let h = class_number(p)?;
    let set = supersingular_lambdas(p)?;
    let ok = count_check_3h(p, &set)?;
    report.check(
        "3h count",
        ok,
        format!("|S ∩ F_p| = 3h = {}", 3 * h),
        set.count_in_prime_field(),
    );
    report.note(format!(
        "h(-{p}) = {h}; |S ∩ F_p| = {} {}",
        set.count_in_prime_field(),
        if ok { "= 3h ✓" } else { "≠ 3h" }
    ));
    Ok(finish(&mut report, started, &cli.common.format))
}

fn cmd_cmlift(cli: &Cli, p: u64, lambda0: u64, prec: u32) -> Result<ExitCode, Error> {
    require_odd_prime(p, 7)?;
    if p % 4 != 3 {
        return Err(Error::InvalidInput(format!("cmlift needs p = 3 mod 4; got {p}")));
    }
    if lambda0 >= p || lambda0 < 2 {
        return Err(Error::InvalidInput(format!(
            "lambda0 must be in {{2, ..., p-1}}; got {lambda0}"
        )));
    }
    let started = Instant::now();
    let mut report = RunReport::new("cmlift", p);
    let f = obtain_modpoly(&cli.common, p, None)?;
    let diag = diag_polynomial(&f)?;
    let lift = cm_lift(&diag, p, lambda0, prec)?;
    let conj = lift.lambda1.conj();
    report.check(
        "residual valuation",
        *lift.residual_twice_vals.last().unwrap() >= 2 * prec as i64,
        format!(">= {prec}"),
        format!("{}", *lift.residual_twice_vals.last().unwrap() as f64 / 2.0),
    );
    report.check("newton steps", lift.steps <= 8, "<= 8", lift.steps);
    let thm3 = verify_thm3(&f, &lift.lambda1, p)?;
    report.check(
        "thm3 congruence",
        thm3.passed,
        "v(F) = 1, v(l1 - l1^p) = 1/2, v(defect) >= 3/2",
        format!(
            "v(F) = {}, v(diff) = {}, v(defect) >= {}",
            thm3.twice_val_f as f64 / 2.0,
            thm3.twice_val_diff as f64 / 2.0,
            thm3.twice_val_defect as f64 / 2.0
        ),
    );
    let thm3_conj = verify_thm3(&f, &conj, p)?;
    report.check("thm3 for the conjugate lift", thm3_conj.passed, "passes", "computed");
    report.note(format!("lift 1: {}", lift.lambda1));
    report.note(format!("lift 2: {conj}"));
    Ok(finish(&mut report, started, &cli.common.format))
}

fn cmd_pairing(cli: &Cli, p: u64) -> Result<ExitCode, Error> {
    require_odd_prime(p, 5)?;
    let started = Instant::now();
    let mut report = RunReport::new("pairing", p);
    let f = obtain_modpoly(&cli.common, p, None)?;
    let set = supersingular_lambdas(p)?;
    let matrix = build_pairing_matrix(p, &f, &set)?;
    report.check("matrix symmetry", matrix.is_symmetric(), "symmetric", "computed");
    let shape_ok = (0..matrix.size()).all(|i| {
        (0..matrix.size()).all(|j| {
            matrix.entry(i, j).twice_val == if i == j { 2 } else { 0 }
        })
    });
    report.check("valuations", shape_ok, "diagonal 1, off-diagonal 0", "computed");
    for i in 0..matrix.size() {
        let row = (0..matrix.size())
            .map(|j| {
                let e = matrix.entry(i, j);
                format!("({}, {})", e.twice_val / 2, e.unit)
            })
            .collect::<Vec<_>>()
            .join(" ");
        report.note(format!("row {i}: {row}"));
    }
    report.note(format!(
        "signs: [{}]",
        matrix.signs.iter().map(|s| format!("{s:+}")).collect::<Vec<_>>().join(", ")
    ));
    Ok(finish(&mut report, started, &cli.common.format))
}
