//! Verification harness: runs the identity suites, prints function tables
//! and series expansions, and emits machine-readable reports.
//!
//! Exit codes: 0 all checks passed, 1 a verification check failed,
//! 2 usage or input error.

use arithzeta::classical::ClassicalFnId;
use arithzeta::monoid::ArithFn;
use arithzeta::primes::Sieve;
use arithzeta::quadfield::{IdealMonoid, QuadraticField};
use arithzeta::report::{CheckReport, Status};
use arithzeta::suites::{self, SuiteConfig};
use arithzeta::varzeta::{
    self, spectrum_of, CycleFn, VarietyIdentity, CYCLE_FNS, VARIETY_IDENTITIES,
};
use arithzeta::{globalzeta, witt};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "arithzeta", version, about = "Exact arithmetic-function and zeta-series verifier")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite: classical|quadfield|variety|global|witt|all
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// classical identity bound
        #[arg(long)]
        limit: Option<u64>,
        /// ideal-norm bound for quadratic fields
        #[arg(long)]
        norm: Option<u64>,
        /// quadratic field selector d (repeatable)
        #[arg(long = "field", allow_hyphen_values = true)]
        fields: Vec<i64>,
        /// series truncation degree for varieties
        #[arg(long)]
        dmax: Option<u32>,
        /// Dirichlet bound for global models
        #[arg(long)]
        nmax: Option<u64>,
        /// seed for sampled property checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// verify a variety (or global template) from a spec file
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Print an arithmetic-function table
    Table {
        /// function name (phi, sigma1, psi, lambda, mu, abs_mu, r2, ...)
        name: String,
        #[arg(long, default_value_t = 20)]
        limit: u64,
        /// tabulate over the ideals of Q(sqrt(d)) instead of N
        #[arg(long, allow_hyphen_values = true)]
        field: Option<i64>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Print zeta and arithmetic-function series of a variety
    Zeta {
        /// variety spec file
        #[arg(long)]
        spec: Option<PathBuf>,
        /// builtin variety name (point, A1, A2, Gm, P1, P2)
        #[arg(long)]
        builtin: Option<String>,
        /// base prime, required with --builtin
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 8)]
        dmax: u32,
    },
    /// Build W_k(F_{p^2})^x / W_k(F_p)^x and report its order as JSON
    Witt {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> arithzeta::Result<ExitCode> {
    match cli.cmd {
        Cmd::Verify {
            suite,
            limit,
            norm,
            fields,
            dmax,
            nmax,
            seed,
            spec,
            format,
        } => {
            let mut cfg = SuiteConfig::default();
            if let Some(limit) = limit {
                cfg.classical_limit = limit;
            }
            if let Some(norm) = norm {
                cfg.norm_bound = norm;
                cfg.oracle_norm_bound = norm.min(cfg.oracle_norm_bound);
            }
            if !fields.is_empty() {
                cfg.fields = fields;
            }
            if let Some(dmax) = dmax {
                cfg.variety_degree = dmax;
            }
            if let Some(nmax) = nmax {
                cfg.nmax = nmax;
            }
            cfg.seed = seed;

            let report = match (&spec, suite.as_str()) {
                (Some(path), "variety") => {
                    let text = read_file(path)?;
                    let v = varzeta::parse_spec(&text)?;
                    suites::run_variety_for(&cfg, &v)?
                }
                (Some(path), "global") => {
                    let text = read_file(path)?;
                    let v = varzeta::parse_spec(&text)?;
                    let model = globalzeta::GlobalModel::new(v, cfg.nmax)?;
                    let mut report = CheckReport::new("global");
                    for identity in globalzeta::GLOBAL_IDENTITIES {
                        let out = globalzeta::verify_global_identity(&model, identity)?;
                        match out {
                            arithzeta::monoid::CheckOutcome::Pass { checked } => report.pass(
                                identity.id(),
                                format!("Nmax={}", cfg.nmax),
                                format!("checked {checked}"),
                            ),
                            arithzeta::monoid::CheckOutcome::Fail { witness } => {
                                report.fail(identity.id(), format!("Nmax={}", cfg.nmax), witness)
                            }
                        }
                    }
                    report
                }
                (Some(_), other) => {
                    return Err(arithzeta::Error::InvalidInput(format!(
                        "--spec applies to the variety or global suites, not {other}"
                    )))
                }
                (None, name) => suites::run_suite(name, &cfg)?,
            };
            emit_report(&report, format);
            Ok(ExitCode::from(report.exit_code() as u8))
        }

        Cmd::Table {
            name,
            limit,
            field,
            format,
        } => {
            let sieve = Sieve::new();
            match field {
                None => {
                    let f: ClassicalFnId = name.parse()?;
                    let mut rows = Vec::new();
                    for n in 1..=limit {
                        rows.push((n.to_string(), None, f.eval(&sieve, n)?.to_string()));
                    }
                    emit_table(&rows, format);
                }
                Some(d) => {
                    let k = QuadraticField::new(&sieve, d)?;
                    let ideals = IdealMonoid::up_to(&sieve, k, limit)?;
                    let value_fn: Box<dyn Fn(&arithzeta::monoid::Element) -> arithzeta::Int> =
                        match name.as_str() {
                            "norm" | "id" => Box::new(|e| ideals.norm(e)),
                            "phi" => Box::new(|e| ideals.phi_k(e)),
                            "sigma1" | "sigma" => Box::new(|e| ideals.sigma1_k(e)),
                            "psi" => Box::new(|e| ideals.psi_k(e)),
                            "lambda" => Box::new(|e| ideals.lambda_k(e)),
                            "zeta" => Box::new(|_| arithzeta::Int::from(1)),
                            "mu" => {
                                let mu = ArithFn::mobius();
                                let m = ideals.monoid().clone();
                                Box::new(move |e| mu.eval(&m, e))
                            }
                            "abs_mu" => {
                                let mu = ArithFn::mobius().abs();
                                let m = ideals.monoid().clone();
                                Box::new(move |e| mu.eval(&m, e))
                            }
                            other => {
                                return Err(arithzeta::Error::InvalidInput(format!(
                                    "unknown ideal function: {other}"
                                )))
                            }
                        };
                    let mut rows = Vec::new();
                    for (e, n) in ideals.enumerate_ideals(limit)? {
                        let label = if e.is_identity() {
                            "(1)".to_string()
                        } else {
                            ideals.monoid().render(&e)
                        };
                        rows.push((n.to_string(), Some(label), value_fn(&e).to_string()));
                    }
                    emit_table(&rows, format);
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Zeta {
            spec,
            builtin,
            p,
            dmax,
        } => {
            let v = match (spec, builtin) {
                (Some(path), None) => varzeta::parse_spec(&read_file(&path)?)?,
                (None, Some(name)) => {
                    let p = p.ok_or_else(|| {
                        arithzeta::Error::InvalidInput("--builtin needs --p".into())
                    })?;
                    varzeta::builtin(&name)?.at_prime(p)
                }
                _ => {
                    return Err(arithzeta::Error::InvalidInput(
                        "zeta needs exactly one of --spec or --builtin".into(),
                    ))
                }
            };
            let spectrum = spectrum_of(&v, dmax)?;
            let z = spectrum.zeta_series(dmax)?;
            println!("Z\t{}", z.display_row());
            for func in CYCLE_FNS {
                if func == CycleFn::Zeta {
                    continue;
                }
                let s = spectrum.cycle_series(func, dmax)?;
                println!("{}\t{}", func.name(), s.display_row());
            }
            let mut all_pass = true;
            for identity in VARIETY_IDENTITIES {
                let degree = if identity == VarietyIdentity::ProductA1 {
                    varzeta::feasible_degree(&v.times_affine_line(), dmax).min(dmax)
                } else {
                    dmax
                };
                let outcome =
                    varzeta::verify_identity_with_spectrum(&v, &spectrum, identity, degree)?;
                match outcome {
                    arithzeta::monoid::CheckOutcome::Pass { .. } => {
                        println!("check\t{}\tpass", identity.id());
                    }
                    arithzeta::monoid::CheckOutcome::Fail { witness } => {
                        all_pass = false;
                        println!("check\t{}\tFAIL\t{witness}", identity.id());
                    }
                }
            }
            Ok(ExitCode::from(if all_pass { 0 } else { 1 }))
        }

        Cmd::Witt { p, k } => {
            let report = witt::psi_group(p, k)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            let ok = report.matches_psi && report.subgroup_verified;
            Ok(ExitCode::from(if ok { 0 } else { 1 }))
        }
    }
}

fn read_file(path: &PathBuf) -> arithzeta::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| arithzeta::Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn emit_report(report: &CheckReport, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Tsv => {
            print!("{}", report.to_tsv());
            let fails = report
                .entries
                .iter()
                .filter(|e| e.status == Status::Fail)
                .count();
            let skips = report
                .entries
                .iter()
                .filter(|e| e.status == Status::Skip)
                .count();
            println!(
                "# suite {}: {} checks, {} failed, {} skipped",
                report.suite,
                report.entries.len(),
                fails,
                skips
            );
        }
    }
}

fn emit_table(rows: &[(String, Option<String>, String)], format: Format) {
    match format {
        Format::Tsv => {
            for (n, label, value) in rows {
                match label {
                    Some(l) => println!("{n}\t{l}\t{value}"),
                    None => println!("{n}\t{value}"),
                }
            }
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, label, value)| match label {
                    Some(l) => serde_json::json!({"n": n, "ideal": l, "value": value}),
                    None => serde_json::json!({"n": n, "value": value}),
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&items).unwrap());
        }
    }
}
