//! Command-line surface: catalog generation, single-object checks,
//! reflection, corpus sweeps, and report rendering.
//!
//! Exit codes: 0 all pass; 1 property violation (a theorem-falsifying
//! finding — always a bug report) or a failed check; 2 undecided
//! verdicts present; 3 input error.

use clap::{Parser, Subcommand, ValueEnum};
use qgal::algebra::{render_alg, validate_algebra, Variety};
use qgal::catalog::{enumerate_algebras, render_catalog};
use qgal::diagram::{cube_from_json, cube_to_json, CubeDiagram};
use qgal::extension::is_nfold_extension;
use qgal::fibration::is_discrete_fibration;
use qgal::galois::{
    covering_oracle0, covering_oracle1, is_normal_covering, is_normal_covering_level1,
    is_trivial_covering, is_trivial_covering_level1, reflect0, reflect_ext, CoveringVerdict,
    Structure,
};
use qgal::report::{render_report, report_to_json, Report};
use qgal::sweeps;
use qgal::{Error, Result};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "qgal", about = "Verification engine for categorical Galois theory over finite quandles, racks, and groups", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarietyArg {
    Quandle,
    Rack,
    Group,
}

impl From<VarietyArg> for Variety {
    fn from(v: VarietyArg) -> Variety {
        match v {
            VarietyArg::Quandle => Variety::Quandle,
            VarietyArg::Rack => Variety::Rack,
            VarietyArg::Group => Variety::Group,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureArg {
    #[value(name = "quandle-pi0")]
    QuandlePi0,
    #[value(name = "rack-pi0")]
    RackPi0,
    #[value(name = "group-ab")]
    GroupAb,
}

impl From<StructureArg> for Structure {
    fn from(s: StructureArg) -> Structure {
        match s {
            StructureArg::QuandlePi0 => Structure::QuandlePi0,
            StructureArg::RackPi0 => Structure::RackPi0,
            StructureArg::GroupAb => Structure::GroupAb,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Axioms,
    Extension,
    Df,
    Trivial,
    Covering,
    Normal,
    Symmetric,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the catalog of algebras up to isomorphism.
    Gen {
        #[arg(long, value_enum)]
        variety: VarietyArg,
        #[arg(long, default_value_t = 4)]
        order_max: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a property of a single algebra (.alg) or cube (.json).
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        file: PathBuf,
        #[arg(long, value_enum, default_value = "quandle-pi0")]
        structure: StructureArg,
        /// Galois-structure level for trivial/normal checks on squares.
        #[arg(long, default_value_t = 0)]
        level: usize,
        /// Viewing direction for level-1 checks on squares.
        #[arg(long, default_value_t = 0)]
        direction: usize,
        /// Splitting-size bound for symmetric witness search.
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Reflect an algebra (level 0) or an extension (level 1) into the
    /// base subcategory.
    Reflect {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "quandle-pi0")]
        structure: StructureArg,
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// Run a named corpus sweep and emit a JSON report.
    Sweep {
        suite: String,
        #[arg(long, value_enum, default_value = "quandle-pi0")]
        structure: StructureArg,
        #[arg(long, default_value_t = 4)]
        order_max: usize,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, default_value_t = 60)]
        budget: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render a JSON report as a text summary.
    Report { file: PathBuf },
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_cube(path: &PathBuf) -> Result<CubeDiagram> {
    cube_from_json(&read_file(path)?)
}

fn emit(path: &Option<PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn verdict_exit(v: &CoveringVerdict) -> i32 {
    match v {
        CoveringVerdict::Yes { .. } => 0,
        CoveringVerdict::No { .. } => 1,
        CoveringVerdict::Unknown { .. } => 2,
    }
}

fn run() -> Result<i32> {
    if let Ok(threads) = std::env::var("QGAL_THREADS") {
        let n: usize = threads
            .parse()
            .map_err(|_| Error::Input(format!("QGAL_THREADS must be a number, got {threads:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Gen { variety, order_max, output } => {
            let cat = enumerate_algebras(variety.into(), order_max)?;
            emit(&output, &render_catalog(&cat))?;
            eprintln!("{} algebras up to order {order_max}", cat.entries.len());
            Ok(0)
        }
        Command::Check { kind, file, structure, level, direction, bound } => {
            check(kind, &file, structure.into(), level, direction, bound)
        }
        Command::Reflect { file, structure, level } => {
            let structure: Structure = structure.into();
            match level {
                0 => {
                    let a = qgal::algebra::parse_alg(&read_file(&file)?)?;
                    let (b, unit) = reflect0(structure, &a);
                    print!("{}", render_alg(&b));
                    eprintln!("unit values: {:?}", unit.values());
                    Ok(0)
                }
                1 => {
                    let cube = load_cube(&file)?;
                    let f = cube.as_hom()?;
                    let (reflected, _) = reflect_ext(structure, &f)?;
                    println!("{}", cube_to_json(&CubeDiagram::arrow(reflected)));
                    Ok(0)
                }
                _ => Err(Error::Input("reflect supports levels 0 and 1".into())),
            }
        }
        Command::Sweep { suite, structure, order_max, dim, bound, budget, output } => {
            let structure: Structure = structure.into();
            let report = match suite.as_str() {
                "calculus-lemmas" => {
                    Report::Suite(sweeps::calculus_lemmas_suite(structure.variety(), order_max)?)
                }
                "birkhoff" => Report::Suite(sweeps::birkhoff_suite(structure, order_max)?),
                "factorisation" => Report::Suite(sweeps::factorisation_suite(structure, order_max)?),
                "quotient-stability" => {
                    Report::Suite(sweeps::quotient_stability_suite(structure, order_max, budget)?)
                }
                "df-closure" => {
                    Report::Suite(sweeps::df_closure_suite(structure.variety(), order_max, budget)?)
                }
                "centralisation" => Report::Suite(sweeps::centralisation_suite(structure, order_max)?),
                "symmetry" => Report::Suite(sweeps::symmetry_suite(structure, order_max, budget)?),
                "main-theorem" => Report::MainTheorem(sweeps::main_theorem_suite(
                    structure, dim, order_max, bound, budget,
                )?),
                other => return Err(Error::Input(format!("unknown suite {other:?}"))),
            };
            emit(&output, &report_to_json(&report))?;
            Ok(report.exit_code())
        }
        Command::Report { file } => {
            let text = render_report(&read_file(&file)?)?;
            print!("{text}");
            Ok(0)
        }
    }
}

fn check(
    kind: CheckKind,
    file: &PathBuf,
    structure: Structure,
    level: usize,
    direction: usize,
    bound: usize,
) -> Result<i32> {
    match kind {
        CheckKind::Axioms => {
            let text = read_file(file)?;
            // Parse the header leniently so that axiom violations are
            // reported rather than rejected at load time.
            let mut lines = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'));
            let header = lines
                .next()
                .ok_or_else(|| Error::Input("empty algebra file".into()))?;
            let mut parts = header.split_whitespace();
            let variety = match parts.next() {
                Some("quandle") => Variety::Quandle,
                Some("rack") => Variety::Rack,
                Some("group") => Variety::Group,
                other => return Err(Error::Input(format!("unknown variety {other:?}"))),
            };
            let rows: Vec<Vec<usize>> = lines
                .map(|l| {
                    l.split_whitespace()
                        .map(|t| {
                            t.parse()
                                .map_err(|_| Error::Input(format!("bad table entry {t:?}")))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            let report = validate_algebra(&rows, variety)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(if report.ok { 0 } else { 1 })
        }
        CheckKind::Extension => {
            let verdict = is_nfold_extension(&load_cube(file)?)?;
            println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            Ok(if verdict.is_extension { 0 } else { 1 })
        }
        CheckKind::Df => {
            let verdict = is_discrete_fibration(&load_cube(file)?)?;
            println!(
                "{{\"is_df\": {}, \"apex_size\": {}}}",
                verdict.is_df, verdict.apex_size
            );
            Ok(if verdict.is_df { 0 } else { 1 })
        }
        CheckKind::Trivial => {
            let cube = load_cube(file)?;
            let verdict = match level {
                0 => is_trivial_covering(structure, &cube.as_hom()?)?,
                1 => is_trivial_covering_level1(structure, &cube, direction)?.0,
                _ => return Err(Error::Input("trivial check supports levels 0 and 1".into())),
            };
            println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            Ok(verdict_exit(&verdict))
        }
        CheckKind::Covering => {
            let cube = load_cube(file)?;
            let verdict = match cube.dim() {
                1 => covering_oracle0(structure, &cube.as_hom()?)?,
                2 => covering_oracle1(structure, &cube)?,
                d => return Err(Error::Input(format!("no covering oracle for dimension {d}"))),
            };
            println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            Ok(verdict_exit(&verdict))
        }
        CheckKind::Normal => {
            let cube = load_cube(file)?;
            let verdict = match level {
                0 => is_normal_covering(structure, &cube.as_hom()?)?,
                1 => is_normal_covering_level1(structure, &cube, direction)?,
                _ => return Err(Error::Input("normal check supports levels 0 and 1".into())),
            };
            println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            Ok(verdict_exit(&verdict))
        }
        CheckKind::Symmetric => {
            let cube = load_cube(file)?;
            let catalog_max = bound.min(6);
            let catalog = enumerate_algebras(structure.variety(), catalog_max)?;
            let (verdict, witness) =
                qgal::symmetric::find_symmetric_witness(structure, &cube, bound, &catalog.entries)?;
            println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            if let Some(w) = witness {
                eprintln!("witness τ:\n{}", cube_to_json(&w.tau));
            }
            Ok(verdict_exit(&verdict))
        }
    }
}

fn main() {
    std::process::exit(match run() {
        Ok(code) => code,
        Err(Error::Input(msg)) => {
            eprintln!("input error: {msg}");
            3
        }
        Err(Error::Property(msg)) => {
            eprintln!("PROPERTY VIOLATION: {msg}");
            1
        }
    })
}
