//! Command line front end: every computation of the library with
//! reproducible text, JSON or CSV output.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when a computation is
//! unavailable (missing table entry or beyond desk scale).

use clap::{Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::process::ExitCode;
use stratavol_core::exact::PiValue;
use stratavol_core::kontsevich::{self, Source};
use stratavol_core::partitions::{parse_parts, OddPartition};
use stratavol_core::ribbon;
use stratavol_core::volumes::{self, DistributionMode, StratumSpec};
use stratavol_core::Error;

#[derive(Parser)]
#[command(
    name = "stratavol",
    about = "Exact Masur-Veech volumes of odd strata of quadratic differentials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Kontsevich polynomial source.
    #[arg(long, global = true, value_enum, default_value_t = SourceArg::Both)]
    source: SourceArg,

    /// Append approximate decimal values (clearly non-authoritative).
    #[arg(long, global = true)]
    approx: bool,

    /// JSON file with minimal-strata volume overrides:
    /// {"genus": {"num": "...", "den": "...", "pi_power": d}, ...}
    #[arg(long, global = true)]
    minimal_overrides: Option<std::path::PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, ValueEnum)]
enum SourceArg {
    Table,
    Interpolate,
    Both,
}

impl From<SourceArg> for Source {
    fn from(s: SourceArg) -> Source {
        match s {
            SourceArg::Table => Source::Table,
            SourceArg::Interpolate => Source::Interpolate,
            SourceArg::Both => Source::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// True Masur-Veech volume of a stratum, e.g. "3,-1^3".
    Volume { stratum: String },
    /// Completed volume with the per-graph breakdown.
    Completed { stratum: String },
    /// Decorated stable graphs of a stratum.
    Graphs { stratum: String },
    /// A Kontsevich polynomial N_(g,n)^[kappa].
    Kontsevich {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kappa: String,
    },
    /// The metric counting function F_(g,n)^[kappa] at given perimeters.
    CountMetrics {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kappa: String,
        /// Comma-separated perimeters, e.g. "5,2,1".
        #[arg(long)]
        b: String,
    },
    /// Exact count of square-tiled surfaces with at most 2N squares.
    StCount {
        stratum: String,
        #[arg(long, default_value_t = 20)]
        n: i64,
    },
    /// Cylinder-count distribution (exact ratios or empirical at finite N).
    Cylinders {
        stratum: String,
        /// Use empirical frequencies from surfaces with at most 2N squares.
        #[arg(long)]
        n: Option<i64>,
    },
    /// Run the embedded regression suite (volume table, string identities,
    /// pinning consistency).
    Verify {
        /// Largest stratum dimension checked exactly (larger rows are
        /// attempted and reported).
        #[arg(long, default_value_t = 8)]
        max_dim: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Error::Unavailable(msg)) => {
            eprintln!("unavailable: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn minimal_table(cli: &Cli) -> stratavol_core::Result<volumes::MinimalStratumVolumeTable> {
    let base = volumes::default_minimal_table()?;
    match &cli.minimal_overrides {
        None => Ok(base),
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let raw: BTreeMap<String, PiValue> = serde_json::from_str(&text)?;
            let mut overrides = BTreeMap::new();
            for (k, v) in raw {
                let genus: u32 = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad override genus {k:?}")))?;
                overrides.insert(genus, v);
            }
            Ok(base.with_overrides(&overrides))
        }
    }
}

fn run(cli: &Cli) -> stratavol_core::Result<ExitCode> {
    let source: Source = cli.source.into();
    match &cli.command {
        Command::Volume { stratum } => {
            let spec = StratumSpec::parse(stratum)?;
            let table = minimal_table(cli)?;
            let b = volumes::masur_veech_volume_with(&spec, &table, source)?;
            let vol = b.vol.clone().expect("vol filled");
            match cli.format {
                Format::Text => {
                    print!("Vol Q({}) = {}", spec.k, vol);
                    maybe_approx(cli, &vol);
                    println!();
                }
                Format::Json => println!("{}", serde_json::to_string(&b)?),
                Format::Csv => {
                    println!("stratum,d,g,vol_num,vol_den,completed_num,completed_den");
                    println!("{}", csv_row(&spec, &vol, &b.completed));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Completed { stratum } => {
            let spec = StratumSpec::parse(stratum)?;
            let b = volumes::completed_volume(&spec, source)?;
            match cli.format {
                Format::Text => {
                    println!("Completed Vol Q({}) = {}", spec.k, b.completed);
                    for c in &b.contributions {
                        println!(
                            "  contribution {}  [P = {}, Z = {}, aut {} , c {}]  {}",
                            c.contribution,
                            c.p_gamma,
                            c.zeta_value,
                            c.aut,
                            rat_str(&c.c_gamma),
                            c.graph.render()
                        );
                    }
                }
                Format::Json => println!("{}", serde_json::to_string(&b)?),
                Format::Csv => {
                    println!("stratum,d,g,vol_num,vol_den,completed_num,completed_den");
                    println!(
                        "{},{},{},,,{},{}",
                        spec.k,
                        spec.dim,
                        spec.genus,
                        b.completed.coeff().numer(),
                        b.completed.coeff().denom()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Graphs { stratum } => {
            let spec = StratumSpec::parse(stratum)?;
            let graphs = stratavol_core::stable::enumerate_stable_graphs(spec.genus, &spec.kappa);
            match cli.format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = graphs
                        .iter()
                        .map(|g| {
                            serde_json::json!({
                                "graph": g.render(),
                                "edges": g.n_edges(),
                                "aut": g.aut_order(),
                                "lattice_index": g.lattice_index(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string(&rows)?);
                }
                _ => {
                    for g in &graphs {
                        println!("aut={:2} cG={:6} {}", g.aut_order(), rat_str(&g.c_gamma()), g.render());
                    }
                    println!("{} stable graphs", graphs.len());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kontsevich { g, n, kappa } => {
            let kappa = OddPartition::valencies(parse_parts(kappa)?)?;
            let entry = kontsevich::kontsevich_polynomial(*g, *n, &kappa, source)?;
            match cli.format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string(&serde_json::json!({
                            "g": g, "n": n, "kappa": kappa.to_string(),
                            "labeled": entry.labeled,
                            "unlabeled": entry.unlabeled,
                        }))?
                    );
                }
                _ => {
                    println!("N_({},{})^[{}] = {}", g, n, kappa, entry.labeled);
                    println!("unlabeled: {}", entry.unlabeled);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CountMetrics { g, n, kappa, b } => {
            let kappa = OddPartition::valencies(parse_parts(kappa)?)?;
            let bv = parse_parts(b)?;
            if bv.len() != *n {
                return Err(Error::Parse(format!(
                    "expected {n} perimeters, got {}",
                    bv.len()
                )));
            }
            let f = ribbon::counting_function(*g, *n, &kappa, &bv)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"num": f.numer().to_string(), "den": f.denom().to_string()})
                ),
                _ => println!("{}", rat_str(&f)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::StCount { stratum, n } => {
            let spec = StratumSpec::parse(stratum)?;
            let c = volumes::square_tiled_count(&spec, *n)?;
            match cli.format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = c
                        .per_graph
                        .iter()
                        .map(|(g, e, v)| {
                            serde_json::json!({"graph": g, "cylinders": e,
                                "count": {"num": v.numer().to_string(), "den": v.denom().to_string()}})
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "stratum": c.stratum, "squares_at_most": 2 * c.n_bound,
                            "total": {"num": c.total.numer().to_string(), "den": c.total.denom().to_string()},
                            "per_graph": rows,
                        })
                    );
                }
                _ => {
                    println!(
                        "square-tiled surfaces in {} with at most {} squares: {}",
                        c.stratum,
                        2 * c.n_bound,
                        rat_str(&c.total)
                    );
                    for (gr, e, v) in &c.per_graph {
                        println!("  {} cyl  {}  [{}]", e, rat_str(v), gr);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cylinders { stratum, n } => {
            let spec = StratumSpec::parse(stratum)?;
            let mode = match n {
                Some(n) => DistributionMode::FiniteN(*n),
                None => DistributionMode::Exact,
            };
            let d = volumes::cylinder_distribution(&spec, mode, source)?;
            match cli.format {
                Format::Json => {
                    let freq: BTreeMap<String, serde_json::Value> = d
                        .frequencies
                        .iter()
                        .map(|(k, v)| {
                            (
                                k.to_string(),
                                serde_json::json!({"num": v.numer().to_string(), "den": v.denom().to_string()}),
                            )
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({"stratum": d.stratum, "mode": d.mode,
                            "completed_based": d.completed_based, "frequencies": freq})
                    );
                }
                _ => {
                    println!("cylinder distribution for {} ({})", d.stratum, d.mode);
                    if d.completed_based {
                        println!("  note: {}", volumes::ONE_EDGE_NOTE);
                    }
                    for (e, v) in &d.frequencies {
                        println!("  {e} cylinder(s): {}", rat_str(v));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { max_dim } => verify(cli, source, *max_dim),
    }
}

fn verify(cli: &Cli, source: Source, max_dim: u32) -> stratavol_core::Result<ExitCode> {
    let mut all_ok = true;
    let mut csv_lines = vec!["stratum,d,g,vol_num,vol_den,completed_num,completed_den".to_string()];

    // pinning consistency
    match volumes::pin_minimal_volumes(source, max_dim.min(8)) {
        Ok((table, _)) => {
            println!("PASS minimal-strata pinning: {}", summary_minimal(&table));
        }
        Err(e) => {
            all_ok = false;
            println!("FAIL minimal-strata pinning: {e}");
        }
    }

    // string identities
    let ids = kontsevich::applicable_string_identities();
    let mut string_ok = 0;
    for (g, n, kappa) in &ids {
        match kontsevich::string_recursion_check(*g, *n, kappa, Source::Table) {
            Ok(true) => string_ok += 1,
            _ => {
                all_ok = false;
                println!("FAIL string identity N_({g},{n})^[{kappa}]");
            }
        }
    }
    println!("PASS string identities: {string_ok}/{} hold", ids.len());

    // volume table regression
    for (spec, vol, completed) in volumes::embedded_volume_rows() {
        if spec.dim > max_dim {
            match volumes::masur_veech_volume(&spec, source) {
                Ok(b) => {
                    let ok = b.completed == completed && b.vol.as_ref() == Some(&vol);
                    println!(
                        "{} {} (d={} attempted): completed {}, vol {}",
                        if ok { "PASS" } else { "FAIL" },
                        spec.render(),
                        spec.dim,
                        b.completed,
                        b.vol.unwrap()
                    );
                    if !ok {
                        all_ok = false;
                    }
                }
                Err(Error::Unavailable(msg)) => {
                    println!("NOTE {} (d={}) unavailable: {msg}", spec.render(), spec.dim);
                }
                Err(e) => {
                    all_ok = false;
                    println!("FAIL {} error: {e}", spec.render());
                }
            }
            continue;
        }
        match volumes::masur_veech_volume(&spec, source) {
            Ok(b) => {
                let okc = b.completed == completed;
                let okv = b.vol.as_ref() == Some(&vol);
                if okc && okv {
                    println!("PASS {}: vol {}, completed {}", spec.render(), vol, completed);
                    csv_lines.push(csv_row(&spec, &vol, &completed));
                } else {
                    all_ok = false;
                    println!(
                        "FAIL {}: got completed {} vol {:?}",
                        spec.render(),
                        b.completed,
                        b.vol
                    );
                }
            }
            Err(e) => {
                all_ok = false;
                println!("FAIL {} error: {e}", spec.render());
            }
        }
    }

    if matches!(cli.format, Format::Csv) {
        for line in csv_lines {
            println!("{line}");
        }
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn summary_minimal(table: &volumes::MinimalStratumVolumeTable) -> String {
    table
        .entries()
        .map(|(g, (v, _))| format!("H({}) = {}", 2 * g - 2, v))
        .collect::<Vec<_>>()
        .join(", ")
}

fn csv_row(spec: &StratumSpec, vol: &PiValue, completed: &PiValue) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        spec.k,
        spec.dim,
        spec.genus,
        vol.coeff().numer(),
        vol.coeff().denom(),
        completed.coeff().numer(),
        completed.coeff().denom()
    )
}

fn rat_str(r: &stratavol_core::Rat) -> String {
    stratavol_core::exact::rat_display(r)
}

fn maybe_approx(cli: &Cli, v: &PiValue) {
    if cli.approx {
        print!("  (approx {:.10})", v.approx());
    }
}
