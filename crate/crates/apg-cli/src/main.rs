//! Batch analysis of accessible pointed graphs: classification,
//! comparison, canonical collapses, decoration, equation solving, the
//! example gallery, and DOT export.
//!
//! Exit codes: 0 success (and true properties), 1 a checked property is
//! false, 2 usage or parse errors, 3 precondition violations (cyclic graph
//! for `decorate`, disconnecting truncation for `gallery`).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use apg::{
    bisimilar, classify, collapse_afa, collapse_iter, decorate_wf, dhom_exists, finsler_eq,
    gallery_graph, isomorphic, make_j, scott_eq, solve_flat_system, truncate,
    verify_dhom_symbolic, Apg, CollapseRel, FlatSystem, NodeId, SymbolicWitness,
};

#[derive(Parser)]
#[command(name = "apg", version, about = "Analyse accessible pointed graphs as pictures of sets")]
struct Cli {
    /// Emit JSON instead of text (check, compare, decorate).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a graph under all six extensionality notions.
    Check { file: PathBuf },
    /// Compare two graphs under every graph relation.
    Compare { file1: PathBuf, file2: PathBuf },
    /// Print the canonical form of a graph under an anti-foundation axiom.
    Collapse {
        file: PathBuf,
        #[arg(long, value_enum)]
        axiom: Axiom,
    },
    /// Print the unique decoration of a well-founded graph.
    Decorate { file: PathBuf },
    /// Solve a flat equation system and print the resulting picture.
    Solve { file: PathBuf },
    /// Print a gallery graph by name (omega-J, Q2, omega1, omega2, vee).
    Gallery {
        name: String,
        /// Truncate the infinite chain of omega-J at this position.
        #[arg(long)]
        truncate: Option<u64>,
        /// Check both symbolic witnesses of omega-J exactly.
        #[arg(long)]
        verify_witnesses: bool,
    },
    /// Export a graph in DOT format.
    ExportDot { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Axiom {
    Afa,
    Safa,
    Fafa,
}

enum Failure {
    /// A checked property is false (exit 1).
    PropertyFalse,
    /// Bad usage or unparseable input (exit 2).
    Input(String),
    /// Valid input outside an operation's precondition (exit 3).
    Precondition(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::PropertyFalse) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file } => check(&load_apg(&file)?, cli.json),
        Command::Compare { file1, file2 } => {
            compare(&load_apg(&file1)?, &load_apg(&file2)?, cli.json)
        }
        Command::Collapse { file, axiom } => {
            let g = load_apg(&file)?;
            let collapsed = match axiom {
                Axiom::Afa => collapse_afa(&g),
                Axiom::Safa => collapse_iter(&g, CollapseRel::Scott),
                Axiom::Fafa => collapse_iter(&g, CollapseRel::Finsler),
            };
            print!("{}", collapsed.to_text());
            Ok(())
        }
        Command::Decorate { file } => decorate(&load_apg(&file)?, cli.json),
        Command::Solve { file } => {
            let text = read(&file)?;
            let system = FlatSystem::parse(&text).map_err(input_err)?;
            print!("{}", solve_flat_system(&system).to_text());
            Ok(())
        }
        Command::Gallery {
            name,
            truncate,
            verify_witnesses,
        } => gallery(&name, truncate, verify_witnesses),
        Command::ExportDot { file } => {
            print!("{}", load_apg(&file)?.to_dot());
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_apg(path: &Path) -> Result<Apg, Failure> {
    Apg::parse(&read(path)?).map_err(input_err)
}

fn input_err(e: apg::Error) -> Failure {
    Failure::Input(e.to_string())
}

fn witness_json(w: &Option<(NodeId, NodeId)>) -> Value {
    match w {
        Some((a, b)) => json!([a.as_str(), b.as_str()]),
        None => Value::Null,
    }
}

fn check(g: &Apg, as_json: bool) -> Result<(), Failure> {
    let report = classify(g);
    if as_json {
        let mut obj = serde_json::Map::new();
        for (name, witness) in report.entries() {
            obj.insert(
                name.replace('-', "_"),
                json!({"holds": witness.is_none(), "witness": witness_json(witness)}),
            );
        }
        println!("{}", Value::Object(obj));
    } else {
        for (name, witness) in report.entries() {
            match witness {
                None => println!("{name}: yes"),
                Some((a, b)) => println!("{name}: no [{a},{b}]"),
            }
        }
    }
    Ok(())
}

fn compare(g: &Apg, h: &Apg, as_json: bool) -> Result<(), Failure> {
    let iso = isomorphic(g, h).is_some();
    let finsler = finsler_eq(g, h);
    let scott = scott_eq(g, h);
    let bisim = bisimilar(g, h);
    let fwd = dhom_exists(g, h).is_some();
    let back = dhom_exists(h, g).is_some();
    let mutual = fwd && back;
    if as_json {
        println!(
            "{}",
            json!({
                "iso": iso,
                "finsler": finsler,
                "scott": scott,
                "bisim": bisim,
                "dhom_fwd": fwd,
                "dhom_back": back,
                "mutual_dhom": mutual,
            })
        );
    } else {
        let yn = |b: bool| if b { "yes" } else { "no" };
        println!("iso: {}", yn(iso));
        println!("finsler: {}", yn(finsler));
        println!("scott: {}", yn(scott));
        println!("bisim: {}", yn(bisim));
        println!("dhom->: {}", yn(fwd));
        println!("dhom<-: {}", yn(back));
        println!("mutual-dhom: {}", yn(mutual));
    }
    Ok(())
}

fn decorate(g: &Apg, as_json: bool) -> Result<(), Failure> {
    let d = match decorate_wf(g) {
        Ok(d) => d,
        Err(e @ apg::Error::CyclicGraph(_)) => return Err(Failure::Precondition(e.to_string())),
        Err(e) => return Err(input_err(e)),
    };
    // Point first, remaining nodes in lexicographic order.
    let mut order: Vec<&NodeId> = g.nodes().iter().filter(|n| *n != g.point()).collect();
    order.sort_unstable();
    order.insert(0, g.point());
    if as_json {
        let mut obj = serde_json::Map::new();
        for n in &order {
            obj.insert(
                n.as_str().to_string(),
                Value::String(d.get(n).expect("decoration total").to_string()),
            );
        }
        println!("{}", Value::Object(obj));
    } else {
        for n in order {
            println!("{n} = {}", d.get(n).expect("decoration total"));
        }
    }
    Ok(())
}

fn gallery(name: &str, trunc: Option<u64>, verify: bool) -> Result<(), Failure> {
    if name == "omega-J" {
        let j = make_j();
        if verify {
            let node = |s: &str| NodeId::new(s).expect("static name");
            let mut all_ok = true;
            for (from, to) in [("a", "ap"), ("ap", "a")] {
                let witness = SymbolicWitness::new([(node(from), node(to))]);
                let ok = verify_dhom_symbolic(&j, &witness, &node(from), &node(to))
                    .expect("witness is total on J");
                println!("witness {from} -> {to}: {}", if ok { "ok" } else { "FAIL" });
                all_ok &= ok;
            }
            return if all_ok { Ok(()) } else { Err(Failure::PropertyFalse) };
        }
        if let Some(n) = trunc {
            let t = truncate(&j, n)
                .map_err(|e| Failure::Precondition(e.to_string()))?;
            print!("{}", t.to_text());
            return Ok(());
        }
        print!("{j}");
        return Ok(());
    }
    if trunc.is_some() || verify {
        return Err(Failure::Input(format!(
            "--truncate and --verify-witnesses only apply to omega-J, not `{name}`"
        )));
    }
    match gallery_graph(name) {
        Some(g) => {
            print!("{}", g.to_text());
            Ok(())
        }
        None => Err(Failure::Input(format!("unknown gallery item `{name}`"))),
    }
}
