use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use factorscan::character::{
    annihilator, annihilator_inclusion, chi_sum, decompose_union, CharacterIndex,
};
use factorscan::cyclic::{parse_residue_set, parse_set_literal, Modulus, ResidueSet};
use factorscan::factorization::{find_complements, stabilizer, sumset_profile, ComplementOptions};
use factorscan::harness::{run_scan, ScanReport, ScanSpec};
use factorscan::splitting::{
    discrete_log_set, generated_subgroup, is_splitting, search_splitting_sets, split_subgroup,
    tightness_construction, MultiplierSet,
};
use factorscan::Error;

mod report;

use report::{emit, Envelope, Format, Outcome, Verdict};

#[derive(Parser)]
#[command(
    name = "factorscan",
    version,
    about = "Factorizations and splittings of finite cyclic groups"
)]
struct Cli {
    /// Output format; csv is only available for `scan`.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SetArgs {
    /// Group order ω.
    #[arg(long)]
    omega: usize,
    /// Set literal such as `0..2,8,9`.
    #[arg(long)]
    a: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether Z_ω = A + B is a factorization.
    VerifyFact {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        b: String,
    },
    /// List complements B with Z_ω = A + B.
    Complements {
        #[command(flatten)]
        set: SetArgs,
        /// Include complements that do not contain 0.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Check whether integers form a complete residue system mod n.
    Crs {
        #[arg(long)]
        a: String,
        #[arg(long)]
        n: usize,
    },
    /// Stable subgroup of A.
    Stabilizer {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Exact character sum χ_t(A).
    Chi {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
    /// Characters annihilating A.
    Annihilator {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Decompose A = (H + E) ∪ (K + F) for subgroups H, K.
    Decompose {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
    },
    /// Check whether Z_g \ {0} = MS.
    SplitVerify {
        #[arg(long)]
        g: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long)]
        s: String,
    },
    /// Search splitting sets S for M in Z_g.
    SplitSearch {
        #[arg(long)]
        g: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Exponent set of M inside ⟨base⟩ ≤ Z_p* and its factor status.
    DlogBridge {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        base: i64,
        #[arg(long)]
        m: String,
    },
    /// The n = 2k splitting whose exponent set is not a complete residue system.
    Tightness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        base: i64,
    },
    /// Run an exhaustive scan.
    Scan(ScanArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// key=value file; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    check: Option<String>,
    #[arg(long)]
    family: Option<String>,
    /// `lo..hi` or a single value.
    #[arg(long)]
    omega: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// Repeatable or comma-separated.
    #[arg(long = "filter")]
    filters: Vec<String>,
    #[arg(long)]
    allow_tight: bool,
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn residue_set(omega: usize, text: &str) -> Result<ResidueSet, Failure> {
    Ok(parse_residue_set(text, Modulus::new(omega)?)?)
}

fn multipliers(text: &str) -> Result<MultiplierSet, Failure> {
    Ok(MultiplierSet::new(parse_set_literal(text)?)?)
}

fn limit(max: Option<usize>) -> usize {
    max.unwrap_or(usize::MAX)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    let value = |payload: Value| Ok(Outcome::new(Verdict::Value, payload));
    match command {
        Command::VerifyFact { set, b } => {
            let a = residue_set(set.omega, &set.a)?;
            let b = residue_set(set.omega, b)?;
            let profile = sumset_profile(&a, &b)?;
            let defect = profile.first_defect();
            let payload = json!({
                "omega": set.omega,
                "a": a,
                "b": b,
                "is_factorization": defect.is_none(),
                "first_defect": defect.map(|(g, c)| json!({"element": g, "multiplicity": c})),
            });
            Ok(match defect {
                None => Outcome::new(Verdict::Confirmed, payload),
                Some((g, c)) => Outcome::new(Verdict::Refuted, payload)
                    .with_counterexamples(vec![json!({"element": g, "multiplicity": c})]),
            })
        }
        Command::Complements { set, all, max } => {
            let a = residue_set(set.omega, &set.a)?;
            let options = ComplementOptions {
                normalized_only: !all,
                max_results: limit(*max),
                ..Default::default()
            };
            let found = find_complements(&a, options)?;
            value(json!({
                "omega": set.omega,
                "a": a,
                "normalized_only": !all,
                "count": found.len(),
                "complements": found,
            }))
        }
        Command::Crs { a, n } => {
            if *n == 0 {
                return Err(Failure::Usage("--n must be positive".into()));
            }
            let values = parse_set_literal(a)?;
            let zn = Modulus::new(*n)?;
            let residues = ResidueSet::from_residues(zn, values.iter().copied());
            let is_crs = values.len() == *n && residues.len() == *n;
            value(json!({"a": values, "n": n, "is_crs": is_crs}))
        }
        Command::Stabilizer { set } => {
            let a = residue_set(set.omega, &set.a)?;
            value(to_value(&stabilizer(&a)?))
        }
        Command::Chi { set, t } => {
            let a = residue_set(set.omega, &set.a)?;
            let chi = CharacterIndex::new(*t, a.modulus());
            let sum = chi_sum(&a, chi)?;
            value(json!({
                "omega": set.omega,
                "a": a,
                "t": chi.t(),
                "coeffs": sum.coeffs(),
                "is_zero": sum.is_zero()?,
            }))
        }
        Command::Annihilator { set } => {
            let a = residue_set(set.omega, &set.a)?;
            let ts: Vec<usize> = annihilator(&a)?
                .into_iter()
                .map(CharacterIndex::t)
                .collect();
            value(json!({"omega": set.omega, "a": a, "annihilator": ts}))
        }
        Command::Decompose { set, h, k } => {
            let a = residue_set(set.omega, &set.a)?;
            let h = residue_set(set.omega, h)?;
            let k = residue_set(set.omega, k)?;
            let inclusion = annihilator_inclusion(&h, &k, &a)?;
            let pair = decompose_union(&h, &k, &a)?;
            value(json!({
                "omega": set.omega,
                "a": a,
                "h": h,
                "k": k,
                "annihilator_inclusion": inclusion,
                "decomposition": pair.map(|(e, f)| json!({"e": e, "f": f})),
            }))
        }
        Command::SplitVerify { g, m, s } => {
            let m = multipliers(m)?;
            let s = residue_set(*g, s)?;
            let ok = is_splitting(&m, &s);
            let payload = json!({"g": g, "m": m, "s": s, "is_splitting": ok});
            Ok(if ok {
                Outcome::new(Verdict::Confirmed, payload)
            } else {
                Outcome::new(Verdict::Refuted, payload.clone()).with_counterexamples(vec![payload])
            })
        }
        Command::SplitSearch { g, m, max } => {
            let m = multipliers(m)?;
            let found = search_splitting_sets(&m, Modulus::new(*g)?, limit(*max))?;
            value(json!({"g": g, "m": m, "count": found.len(), "splitting_sets": found}))
        }
        Command::DlogBridge { p, base, m } => {
            let m = multipliers(m)?;
            let exponents = discrete_log_set(&m, *base, *p)?;
            let zp = Modulus::new(*p as usize)?;
            let span = generated_subgroup(&[base.rem_euclid(*p as i64) as usize], *p as usize);
            let splits_span = exponents.is_some()
                && split_subgroup(&m.residues(zp), &span, *p as usize).is_some();
            let complements = match &exponents {
                Some(a) => Some(find_complements(a, ComplementOptions::first_normalized())?),
                None => None,
            };
            value(json!({
                "p": p,
                "base": base,
                "m": m,
                "order": span.len(),
                "exponent_set": exponents,
                "splits_subgroup": splits_span,
                "complement": complements.and_then(|c| c.into_iter().next()),
            }))
        }
        Command::Tightness { k, p, base } => {
            let r = tightness_construction(*k, *p, *base)?;
            let verdict = if r.splitting_verified && !r.exponent_set_is_crs {
                Verdict::Confirmed
            } else {
                Verdict::Refuted
            };
            let payload = to_value(&r);
            Ok(match verdict {
                Verdict::Refuted => {
                    Outcome::new(verdict, payload.clone()).with_counterexamples(vec![payload])
                }
                _ => Outcome::new(verdict, payload),
            })
        }
        Command::Scan(args) => {
            let spec = scan_spec(args)?;
            let report = run_scan(&spec)?;
            eprintln!(
                "scan {}: {} instances in {:.3}s",
                spec.check,
                report.instances_checked,
                report.elapsed.as_secs_f64()
            );
            Ok(scan_outcome(report))
        }
    }
}

fn scan_spec(args: &ScanArgs) -> Result<ScanSpec, Failure> {
    let mut lines = Vec::new();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read --config {}: {e}", path.display())))?;
        lines.push(text);
    }
    let mut push = |key: &str, v: &Option<String>| {
        if let Some(v) = v {
            lines.push(format!("{key}={v}"));
        }
    };
    push("check", &args.check);
    push("family", &args.family);
    push("omega", &args.omega);
    push("n", &args.n);
    push("k", &args.k);
    if !args.filters.is_empty() {
        lines.push(format!("filter={}", args.filters.join(",")));
    }
    if args.allow_tight {
        lines.push("allow_tight=true".into());
    }
    // Later lines win, so flags override the file.
    let spec = ScanSpec::from_config(&lines.join("\n"));
    spec.map_err(|e| Failure::Usage(e.to_string()))
}

fn scan_outcome(report: ScanReport) -> Outcome {
    let verdict = Verdict::from(report.verdict());
    let counterexamples = report.counterexamples.iter().map(to_value).collect();
    let rows = report.instances.clone();
    let mut payload = to_value(&report);
    if let Value::Object(map) = &mut payload {
        map.remove("counterexamples");
    }
    Outcome::new(verdict, payload)
        .with_counterexamples(counterexamples)
        .with_rows(rows, report.counterexamples)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let echo = argv[1..].join(" ");
    if cli.format == Format::Csv && !matches!(cli.command, Command::Scan(_)) {
        eprintln!("error: --format csv is only available for `scan`");
        return ExitCode::from(2);
    }
    match run(&cli.command) {
        Ok(outcome) => {
            let env = Envelope::new(echo, outcome);
            print!("{}", emit(&env, cli.format));
            ExitCode::from(env.exit_code())
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
