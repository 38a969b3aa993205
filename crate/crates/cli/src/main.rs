mod scenarios;

use std::process::ExitCode;

use bfk_core::bisets::{compose, Method};
use bfk_core::burnside::marks_matrix;
use bfk_core::genetics::genetic_basis;
use bfk_core::groups::{build_group, catalog_names, Group};
use bfk_core::io::{group_to_json, morphism_from_json, morphism_to_json};
use bfk_core::rational::{k_mod_delta, parse_functor, rationality_check};
use bfk_core::units::coker_report;
use bfk_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use scenarios::Params;

#[derive(Parser)]
#[command(
    name = "bfk",
    version,
    about = "Exact computations with p-biset functors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog groups.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Genetic bases.
    Basis {
        #[command(subcommand)]
        command: BasisCommand,
    },
    /// Burnside groups.
    Burnside {
        #[command(subcommand)]
        command: BurnsideCommand,
    },
    /// Biset morphisms.
    Biset {
        #[command(subcommand)]
        command: BisetCommand,
    },
    /// Rational functors and K/B_delta.
    Rational {
        #[command(subcommand)]
        command: RationalCommand,
    },
    /// Units of Burnside rings.
    Units {
        #[command(subcommand)]
        command: UnitsCommand,
    },
    /// Run a named verification scenario.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct JsonFlag {
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum GroupCommand {
    List {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
        #[command(flatten)]
        out: JsonFlag,
    },
    Info {
        group: String,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Subcommand)]
enum BasisCommand {
    Genetic {
        group: String,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Subcommand)]
enum BurnsideCommand {
    Marks {
        group: String,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Orbit,
    Mackey,
    Both,
}

#[derive(Subcommand)]
enum BisetCommand {
    /// Writes `f o g` as JSON.
    Compose {
        f: std::path::PathBuf,
        g: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
}

#[derive(Subcommand)]
enum RationalCommand {
    Kmod {
        group: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    Check {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        group: String,
        /// Prime of the delta used by quotient functors (defaults to the group's prime).
        #[arg(short)]
        p: Option<u32>,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Subcommand)]
enum UnitsCommand {
    Report {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Args)]
struct VerifyArgs {
    scenario: String,
    #[arg(short, default_value_t = 2)]
    p: u32,
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Use table-free enumeration where a scenario offers it (lifts the product cap).
    #[arg(long)]
    enumerate: bool,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Cap(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::UnknownFamily(_)
            | Error::InvalidParameters(_)
            | Error::InvalidArgument(_)
            | Error::Schema { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn emit(json_out: bool, value: &Value, text: impl FnOnce() -> Vec<String>) {
    if json_out {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("JSON values always serialize")
        );
    } else {
        for line in text() {
            println!("{line}");
        }
    }
}

fn group(name: &str) -> Result<std::sync::Arc<Group>, Failure> {
    Ok(build_group(name)?)
}

fn group_command(c: GroupCommand) -> Outcome {
    match c {
        GroupCommand::List { max_order, out } => {
            let mut groups = scenarios::universe(2, max_order)?;
            groups.extend(
                scenarios::universe(3, max_order)?
                    .into_iter()
                    .filter(|x| !x.is_trivial()),
            );
            let v: Vec<Value> = groups.iter().map(|x| group_to_json(x)).collect();
            emit(out.json, &Value::Array(v), || {
                let mut lines: Vec<String> = groups
                    .iter()
                    .map(|x| format!("{:<10} order {}", x.name(), x.order()))
                    .collect();
                lines.push(String::new());
                lines.extend(catalog_names().iter().map(|(n, d)| format!("{n:<22} {d}")));
                lines
            });
            Ok(true)
        }
        GroupCommand::Info { group: name, out } => {
            let x = group(&name)?;
            let v = json!({
                "name": x.name(),
                "order": x.order(),
                "prime": x.prime(),
                "exponent": x.exponent(),
                "center_order": x.center().order(),
                "subgroup_classes": x.lattice().len(),
                "normal_subgroups": x.normal_subgroups().len(),
            });
            emit(out.json, &v, || {
                v.as_object()
                    .expect("object")
                    .iter()
                    .map(|(k, val)| format!("{k:<18} {val}"))
                    .collect()
            });
            Ok(true)
        }
    }
}

fn basis_command(c: BasisCommand) -> Outcome {
    let BasisCommand::Genetic { group: name, out } = c;
    let x = group(&name)?;
    let b = genetic_basis(&x)?;
    let lat = x.lattice();
    let entries: Vec<Value> = b
        .entries
        .iter()
        .map(|e| {
            json!({
                "class": lat.class_of(&x.canonical(&e.q)),
                "order": e.q.order(),
                "quotient_order": e.local.section.quotient.order(),
                "type": e.local.quotient_type,
            })
        })
        .collect();
    let v = json!({"group": x.name(), "entries": entries, "d": b.d});
    emit(out.json, &v, || {
        let mut lines: Vec<String> = entries
            .iter()
            .map(|e| {
                format!(
                    "class {:<4} |Q| = {:<4} N/Q of order {:<4} {}",
                    e["class"],
                    e["order"],
                    e["quotient_order"],
                    e["type"].as_str().unwrap_or("")
                )
            })
            .collect();
        lines.push(format!("d = {}", b.d));
        lines
    });
    Ok(true)
}

fn burnside_command(c: BurnsideCommand) -> Outcome {
    let BurnsideCommand::Marks { group: name, out } = c;
    let x = group(&name)?;
    let m = marks_matrix(&x);
    let orders: Vec<usize> = x
        .lattice()
        .classes()
        .iter()
        .map(|c| c.rep.order())
        .collect();
    let v = json!({"group": x.name(), "class_orders": orders, "marks": m});
    emit(out.json, &v, || {
        m.iter()
            .zip(&orders)
            .map(|(row, o)| {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                format!("|H| = {o:<4} {}", cells.join(" "))
            })
            .collect()
    });
    Ok(true)
}

fn read_morphism(path: &std::path::Path) -> Result<bfk_core::bisets::BisetMorphism, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(morphism_from_json(&v)?)
}

fn biset_command(c: BisetCommand) -> Outcome {
    let BisetCommand::Compose { f, g, method } = c;
    let (f, g) = (read_morphism(&f)?, read_morphism(&g)?);
    let method = match method {
        MethodArg::Orbit => Method::Orbit,
        MethodArg::Mackey => Method::Mackey,
        MethodArg::Both => Method::Both,
    };
    let r = compose(&f, &g, method)?;
    println!("{}", morphism_to_json(&r));
    Ok(true)
}

fn rational_command(c: RationalCommand) -> Outcome {
    match c {
        RationalCommand::Kmod { group: name, out } => {
            let x = group(&name)?;
            let k = k_mod_delta(&x)?;
            let passed = scenarios::kmod_passed(&k);
            let v = scenarios::kmod_json(&k);
            emit(out.json, &v, || {
                vec![
                    format!(
                        "K/B_delta({}) = {:?}",
                        k.group,
                        scenarios::invariants(&k.invariants)
                    ),
                    format!(
                        "d = {}, dihedral images form a basis: {}",
                        k.d, k.images_form_basis
                    ),
                ]
            });
            Ok(passed)
        }
        RationalCommand::Check {
            functor,
            group: name,
            p,
            out,
        } => {
            let x = group(&name)?;
            let f = parse_functor(&functor, p.unwrap_or(x.prime().max(2)))?;
            let r = rationality_check(&f, &x)?;
            let v = json!({
                "group": r.group,
                "functor": r.functor,
                "rational": r.is_rational,
                "kernel": scenarios::invariants(&r.kernel.invariants()),
                "cokernel": scenarios::invariants(&r.cokernel.invariants()),
                "source": r.source_labels,
                "other_basis_agrees": r.other_basis_agrees,
            });
            emit(out.json, &v, || {
                vec![
                    format!("{} at {}: rational = {}", r.functor, r.group, r.is_rational),
                    format!("kernel {:?}, cokernel {:?}", v["kernel"], v["cokernel"]),
                    format!("source summands: {}", r.source_labels.join(", ")),
                ]
            });
            Ok(r.is_rational)
        }
    }
}

fn units_command(c: UnitsCommand) -> Outcome {
    let UnitsCommand::Report { max_order, out } = c;
    let r = coker_report(&scenarios::universe(2, max_order)?)?;
    let v = serde_json::to_value(&r).expect("report");
    emit(out.json, &v, || {
        let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let mut lines = vec![format!(
            "{:<8} {:>6} {:>6} {:>3} {:>4}",
            "group", "|B^x|", "image", "d", "dim"
        )];
        lines.extend(r.rows.iter().map(|row| {
            format!(
                "{:<8} {:>6} {:>6} {:>3} {:>4}",
                row.group,
                show(row.units),
                show(row.image),
                row.d,
                row.kmod_dim
            )
        }));
        lines
    });
    Ok(r.passed)
}

fn verify(a: VerifyArgs) -> Outcome {
    let s = scenarios::find(&a.scenario).ok_or_else(|| {
        let ids: Vec<&str> = scenarios::SCENARIOS.iter().map(|s| s.id).collect();
        Failure::Usage(format!(
            "unknown scenario `{}`; known: {}",
            a.scenario,
            ids.join(", ")
        ))
    })?;
    if a.p < 2 || build_group(&format!("C{}", a.p)).is_err() {
        return Err(Failure::Usage(format!("-p {} is not a prime", a.p)));
    }
    let params = Params {
        p: a.p,
        max_order: a.max_order,
        seed: a.seed,
        enumerate: a.enumerate,
    };
    let r = scenarios::run(s, params)?;
    let v = serde_json::to_value(&r).expect("report");
    emit(a.json, &v, || {
        let mut lines = vec![format!("{} ({})", s.id, s.anchor)];
        lines.extend(r.lines.iter().map(|l| format!("  {l}")));
        lines.push(if r.passed {
            "PASS".into()
        } else {
            "FAIL".into()
        });
        lines
    });
    Ok(r.passed)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Group { command } => group_command(command),
        Command::Basis { command } => basis_command(command),
        Command::Burnside { command } => burnside_command(command),
        Command::Biset { command } => biset_command(command),
        Command::Rational { command } => rational_command(command),
        Command::Units { command } => units_command(command),
        Command::Verify(a) => verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
