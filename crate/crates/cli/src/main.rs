//! Batch front door: parse shelves, run computations and verification
//! suites, emit deterministic JSON or text reports.
//!
//! Exit codes: 0 success, 1 mathematical failure or witness, 2 usage or
//! parse error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use rackhom::complex::{homology_table, DEFAULT_BASIS_CAP};
use rackhom::error::Error as MathError;
use rackhom::products::{cup, Cochain};
use rackhom::shelf::{
    builtin, classify, orbits, validate_xset, CoefficientSystem, Family, FiniteShelf,
};
use rackhom::split::{group_sum, groups_match, split_homology, SplitPart};
use rackhom::verify::{run_suites, Status, Suite};

#[derive(Parser)]
#[command(name = "rackhom", version, about = "Rack and quandle cohomology over exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a shelf table: shelf/rack/spindle/quandle flags and orbits.
    Validate {
        #[command(flatten)]
        shelf: ShelfArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Homology of the rack chain complex, per degree.
    Homology {
        #[command(flatten)]
        shelf: ShelfArgs,
        #[command(flatten)]
        coeff: CoeffArgs,
        #[command(flatten)]
        degrees: DegreeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cohomology (the transposed complex), per degree.
    Cohomology {
        #[command(flatten)]
        shelf: ShelfArgs,
        #[command(flatten)]
        coeff: CoeffArgs,
        #[command(flatten)]
        degrees: DegreeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cup product of two cochain files over the shelf.
    Cup {
        #[command(flatten)]
        shelf: ShelfArgs,
        /// first cochain (JSON: {"degree": n, "values": {"x1,x2,...": v}})
        f: PathBuf,
        /// second cochain
        g: PathBuf,
        /// prime modulus for F_p values
        #[arg(long, value_name = "P")]
        r#mod: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Quandle/degenerate/late decomposition tables for a spindle.
    Decompose {
        #[command(flatten)]
        shelf: ShelfArgs,
        #[command(flatten)]
        degrees: DegreeArgs,
        /// prime modulus (omit for integral invariant factors)
        #[arg(long, value_name = "P")]
        r#mod: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run exhaustive identity suites; nonzero exit on any failure.
    Verify {
        #[command(flatten)]
        shelf: ShelfArgs,
        #[command(flatten)]
        coeff: CoeffArgs,
        /// suite: complex|dgb|homotopy|dendriform|zinbiel|action|splitting|all
        #[arg(long, default_value = "all")]
        suite: String,
        /// verify identities on tuples up to this degree
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// refuse degrees whose basis exceeds this size
        #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
        max_basis: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct ShelfArgs {
    /// shelf JSON file: {"size": n, "table": [[...], ...]}
    #[arg(long, value_name = "FILE", conflicts_with_all = ["dihedral", "trivial", "permutation"])]
    shelf: Option<PathBuf>,
    /// dihedral quandle on {0..n-1}
    #[arg(long, value_name = "N")]
    dihedral: Option<usize>,
    /// trivial quandle x<y = x on {0..n-1}
    #[arg(long, value_name = "N", conflicts_with = "dihedral")]
    trivial: Option<usize>,
    /// permutation rack x<y = p(x), e.g. "1,0"
    #[arg(long, value_name = "PERM", conflicts_with_all = ["dihedral", "trivial"])]
    permutation: Option<String>,
}

#[derive(Args)]
struct CoeffArgs {
    /// coefficient system
    #[arg(long, value_enum, default_value_t = CoeffKind::Trivial)]
    coeff: CoeffKind,
    /// X-set JSON file ({"size": m, "action": [[...], ...]}), with --coeff xset
    #[arg(long, value_name = "FILE", required_if_eq("coeff", "xset"))]
    xset: Option<PathBuf>,
    /// prime modulus (omit to work over Z)
    #[arg(long, value_name = "P")]
    r#mod: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffKind {
    Trivial,
    #[value(name = "self")]
    SelfAction,
    Xset,
}

#[derive(Args)]
struct DegreeArgs {
    /// compute degrees 0..=N
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// refuse degrees whose basis exceeds this size
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    max_basis: usize,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Failure carrying the exit code mandated for its class.
enum Failure {
    /// exit 1: a mathematical failure or witness
    Math(String),
    /// exit 2: malformed input or an unusable request
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Math(m) | Failure::Usage(m) => m,
        }
    }
}

fn classify_error(e: MathError) -> Failure {
    match e {
        MathError::NotSelfDistributive { .. }
        | MathError::XSetAxiomFails { .. }
        | MathError::RackRequired { .. }
        | MathError::SpindleRequired { .. }
        | MathError::CompositionNonzero { .. }
        | MathError::Internal(_) => Failure::Math(e.to_string()),
        MathError::EntryOutOfRange { .. }
        | MathError::DimensionMismatch { .. }
        | MathError::NotAPermutation { .. }
        | MathError::NotAGroup { .. }
        | MathError::CompositeModulus(_)
        | MathError::DegreeUnsupported { .. }
        | MathError::CoefficientUnsupported { .. }
        | MathError::ResourceCap { .. } => Failure::Usage(e.to_string()),
    }
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("malformed JSON in {}: {e}", path.display())))
}

fn load_shelf(args: &ShelfArgs) -> Result<FiniteShelf, Failure> {
    if let Some(n) = args.dihedral {
        return builtin(Family::Dihedral(n)).map_err(classify_error);
    }
    if let Some(n) = args.trivial {
        return builtin(Family::Trivial(n)).map_err(classify_error);
    }
    if let Some(perm) = &args.permutation {
        let parsed: Result<Vec<usize>, _> =
            perm.split(',').map(|s| s.trim().parse::<usize>()).collect();
        let perm = parsed.map_err(|e| Failure::Usage(format!("bad permutation: {e}")))?;
        return builtin(Family::Permutation(perm)).map_err(classify_error);
    }
    let path = args
        .shelf
        .as_ref()
        .ok_or_else(|| Failure::Usage("no shelf given: use --shelf/--dihedral/--trivial/--permutation".into()))?;
    let value = read_json(path)?;
    let table: Vec<Vec<usize>> = serde_json::from_value(
        value
            .get("table")
            .cloned()
            .ok_or_else(|| Failure::Usage("shelf JSON needs a \"table\" field".into()))?,
    )
    .map_err(|e| Failure::Usage(format!("bad shelf table: {e}")))?;
    if let Some(size) = value.get("size").and_then(|s| s.as_u64()) {
        if size as usize != table.len() {
            return Err(Failure::Usage(format!(
                "shelf JSON size {} does not match table height {}",
                size,
                table.len()
            )));
        }
    }
    classify(table).map_err(classify_error)
}

fn load_coeff(shelf: &FiniteShelf, args: &CoeffArgs) -> Result<CoefficientSystem, Failure> {
    match args.coeff {
        CoeffKind::Trivial => Ok(CoefficientSystem::Trivial),
        CoeffKind::SelfAction => Ok(CoefficientSystem::SelfAction),
        CoeffKind::Xset => {
            let path = args
                .xset
                .as_ref()
                .ok_or_else(|| Failure::Usage("--coeff xset needs --xset FILE".into()))?;
            let value = read_json(path)?;
            let action: Vec<Vec<usize>> = serde_json::from_value(
                value
                    .get("action")
                    .cloned()
                    .ok_or_else(|| Failure::Usage("X-set JSON needs an \"action\" field".into()))?,
            )
            .map_err(|e| Failure::Usage(format!("bad X-set action: {e}")))?;
            let xs = validate_xset(shelf, action).map_err(classify_error)?;
            Ok(CoefficientSystem::XSet(xs))
        }
    }
}

fn shelf_value(shelf: &FiniteShelf) -> serde_json::Value {
    serde_json::json!({ "size": shelf.size, "table": shelf.table })
}

fn emit(format: Format, value: &serde_json::Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Text => println!("{text}"),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { shelf, out } => {
            let s = load_shelf(&shelf)?;
            let orbit_list = if s.is_rack {
                Some(orbits(&s).map_err(classify_error)?)
            } else {
                None
            };
            let value = serde_json::json!({
                "command": "validate",
                "shelf": shelf_value(&s),
                "flags": {
                    "is_shelf": s.is_shelf,
                    "is_rack": s.is_rack,
                    "is_spindle": s.is_spindle,
                    "is_quandle": s.is_quandle,
                },
                "orbits": orbit_list,
            });
            let mut text = format!(
                "shelf on {} elements: shelf={} rack={} spindle={} quandle={}",
                s.size, s.is_shelf, s.is_rack, s.is_spindle, s.is_quandle
            );
            if let Some(o) = &orbit_list {
                text.push_str(&format!("\norbits: {o:?}"));
            }
            emit(out.format, &value, text);
            Ok(())
        }
        Command::Homology {
            shelf,
            coeff,
            degrees,
            out,
        } => homology_command(shelf, coeff, degrees, out, false),
        Command::Cohomology {
            shelf,
            coeff,
            degrees,
            out,
        } => homology_command(shelf, coeff, degrees, out, true),
        Command::Cup {
            shelf,
            f,
            g,
            r#mod,
            out,
        } => {
            let s = load_shelf(&shelf)?;
            if let Some(p) = r#mod {
                rackhom::exactlin::require_prime(p).map_err(classify_error)?;
            }
            let fv = read_json(&f)?;
            let gv = read_json(&g)?;
            let fc = Cochain::from_json(&fv, s.size, r#mod).map_err(Failure::Usage)?;
            let gc = Cochain::from_json(&gv, s.size, r#mod).map_err(Failure::Usage)?;
            let product = cup(&s, &fc, &gc).map_err(classify_error)?;
            let value = serde_json::json!({
                "command": "cup",
                "shelf": shelf_value(&s),
                "modulus": r#mod,
                "result": product.to_json(),
            });
            let text = format!(
                "cup product of degrees ({},{}): {}",
                fc.degree,
                gc.degree,
                serde_json::to_string(&product.to_json()).unwrap()
            );
            emit(out.format, &value, text);
            Ok(())
        }
        Command::Decompose {
            shelf,
            degrees,
            r#mod,
            out,
        } => {
            let s = load_shelf(&shelf)?;
            if let Some(p) = r#mod {
                rackhom::exactlin::require_prime(p).map_err(classify_error)?;
            }
            let max = degrees.max_degree;
            let mut tables = serde_json::Map::new();
            let mut texts = Vec::new();
            let mut groups = std::collections::BTreeMap::new();
            for part in [
                SplitPart::Rack,
                SplitPart::Quandle,
                SplitPart::Degenerate,
                SplitPart::Late,
            ] {
                let hs = split_homology(&s, part, max, false, r#mod, degrees.max_basis)
                    .map_err(classify_error)?;
                let row: Vec<serde_json::Value> = hs
                    .iter()
                    .enumerate()
                    .map(|(n, g)| {
                        serde_json::json!({"degree": n, "free_rank": g.free_rank, "torsion": g.torsion})
                    })
                    .collect();
                tables.insert(part.name().to_string(), serde_json::Value::Array(row));
                texts.push(format!(
                    "{:<11} {}",
                    part.name(),
                    hs.iter()
                        .enumerate()
                        .map(|(n, g)| format!("H_{n} = {}", g.display()))
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
                groups.insert(part.name(), hs);
            }
            let mut rq = Vec::new();
            let mut dl = Vec::new();
            for n in 0..=max {
                rq.push(groups_match(
                    &groups["rack"][n],
                    &group_sum(&groups["quandle"][n], &groups["degenerate"][n]),
                ));
            }
            for n in 0..=max {
                if n >= 2 {
                    dl.push(groups_match(
                        &groups["degenerate"][n],
                        &group_sum(&groups["late"][n], &groups["quandle"][n - 1]),
                    ));
                }
            }
            let all_hold = rq.iter().chain(dl.iter()).all(|&b| b);
            let value = serde_json::json!({
                "command": "decompose",
                "shelf": shelf_value(&s),
                "modulus": r#mod,
                "parts": tables,
                "identities": {
                    "rack = quandle + degenerate": rq,
                    "degenerate = late + shifted quandle (degrees 2..)": dl,
                    "all_hold": all_hold,
                },
            });
            texts.push(format!(
                "splitting identities hold: {}",
                if all_hold { "yes" } else { "NO" }
            ));
            emit(out.format, &value, texts.join("\n"));
            if all_hold {
                Ok(())
            } else {
                Err(Failure::Math("splitting identities failed".into()))
            }
        }
        Command::Verify {
            shelf,
            coeff,
            suite,
            max_degree,
            max_basis,
            out,
        } => {
            let s = load_shelf(&shelf)?;
            let cs = load_coeff(&s, &coeff)?;
            let suites = Suite::parse(&suite)
                .ok_or_else(|| Failure::Usage(format!("unknown suite \"{suite}\"")))?;
            let modulus = coeff.r#mod;
            let report = run_suites(&s, &cs, &suites, max_degree, modulus, max_basis)
                .map_err(classify_error)?;
            let value = serde_json::json!({
                "command": "verify",
                "shelf": shelf_value(&s),
                "coefficients": cs.describe(),
                "modulus": modulus,
                "max_degree": max_degree,
                "passed": report.passed(),
                "checks": report.checks,
            });
            let mut lines = Vec::new();
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "INFO",
                    Status::Skipped => "SKIP",
                };
                lines.push(format!("[{tag}] {}: {}", c.suite, c.identity));
            }
            emit(out.format, &value, lines.join("\n"));
            if report.passed() {
                Ok(())
            } else {
                let failure = report.first_failure().unwrap();
                Err(Failure::Math(format!(
                    "suite {} failed: {}\ninstance: {}",
                    failure.suite,
                    failure.identity,
                    serde_json::to_string_pretty(&failure.instance).unwrap()
                )))
            }
        }
    }
}

fn homology_command(
    shelf: ShelfArgs,
    coeff: CoeffArgs,
    degrees: DegreeArgs,
    out: OutputArgs,
    dual: bool,
) -> Result<(), Failure> {
    let s = load_shelf(&shelf)?;
    let cs = load_coeff(&s, &coeff)?;
    let table = homology_table(
        &s,
        &cs,
        degrees.max_degree,
        dual,
        coeff.r#mod,
        degrees.max_basis,
    )
    .map_err(classify_error)?;
    let name = if dual { "cohomology" } else { "homology" };
    let rows: Vec<serde_json::Value> = table
        .iter()
        .enumerate()
        .map(|(n, g)| {
            serde_json::json!({"degree": n, "free_rank": g.free_rank, "torsion": g.torsion})
        })
        .collect();
    let value = serde_json::json!({
        "command": name,
        "shelf": shelf_value(&s),
        "coefficients": cs.describe(),
        "modulus": coeff.r#mod,
        "groups": rows,
    });
    let text = table
        .iter()
        .enumerate()
        .map(|(n, g)| {
            if dual {
                format!("H^{n} = {}", g.display())
            } else {
                format!("H_{n} = {}", g.display())
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    emit(out.format, &value, text);
    Ok(())
}
