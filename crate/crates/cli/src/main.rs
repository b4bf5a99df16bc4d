//! `kh`: compute Khovanov-type invariants of link diagrams, run the
//! verification suites, and list the bundled knot table.

use clap::{Args, Parser, Subcommand, ValueEnum};
use khovanov::complex::{build_complex, BuildOptions};
use khovanov::diagram::LinkDiagram;
use khovanov::homology::homology_table;
use khovanov::jones;
use khovanov::ring::Specialization;
use khovanov::table::KnotTable;
use khovanov::verify;
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kh", version, about = "Generalized Khovanov homology of link diagrams")]
struct Cli {
    /// Worker threads for parallel sections (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one diagram.
    Compute(ComputeArgs),
    /// Run a named verification suite over the bundled table.
    Verify(VerifyArgs),
    /// List the bundled knot table.
    Table(TableArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Inline PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long, conflicts_with_all = ["file", "knot"])]
    pd: Option<String>,
    /// Read the PD code from a file.
    #[arg(long, conflicts_with = "knot")]
    file: Option<String>,
    /// A named entry of the bundled table.
    #[arg(long)]
    knot: Option<String>,
    /// Specialization: `x,y,z` with entries ±1, or `universal`.
    #[arg(long, default_value = "1,1,1")]
    spec: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Only report the graded Euler characteristic (no homology).
    #[arg(long)]
    euler_only: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: faces, cocycle, d2, euler, frobenius, reidemeister, mirror, arrows.
    #[arg(long)]
    suite: String,
    /// Bound on diagram size taken from the table.
    #[arg(long, default_value_t = 8)]
    max_crossings: usize,
    /// Specialization for the d2 suite.
    #[arg(long, default_value = "universal")]
    spec: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Show a single entry.
    #[arg(long)]
    name: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_spec(text: &str) -> Result<Specialization, String> {
    if text.trim() == "universal" {
        return Ok(Specialization::Universal);
    }
    let parts: Vec<&str> = text.split(',').map(|s| s.trim()).collect();
    if parts.len() != 3 {
        return Err(format!("bad specialization {text:?}; expected x,y,z or universal"));
    }
    let vals: Result<Vec<i8>, _> = parts.iter().map(|s| s.parse::<i8>()).collect();
    let vals = vals.map_err(|e| format!("bad specialization {text:?}: {e}"))?;
    Specialization::signs(vals[0], vals[1], vals[2]).map_err(|e| e.to_string())
}

fn load_diagram(args: &ComputeArgs) -> Result<(String, LinkDiagram), String> {
    if let Some(pd) = &args.pd {
        let d = LinkDiagram::parse_pd(pd).map_err(|e| e.to_string())?;
        return Ok(("inline".into(), d));
    }
    if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        let d = LinkDiagram::parse_pd(&text).map_err(|e| e.to_string())?;
        return Ok((path.clone(), d));
    }
    if let Some(name) = &args.knot {
        let table = KnotTable::load().map_err(|e| e.to_string())?;
        let d = table
            .get(name)
            .ok_or_else(|| format!("unknown table entry {name:?}"))?
            .map_err(|e| e.to_string())?;
        return Ok((name.clone(), d));
    }
    Err("no input: use --pd, --file or --knot".into())
}

fn cmd_compute(args: &ComputeArgs) -> Result<ExitCode, String> {
    let (name, d) = load_diagram(args)?;
    let spec = parse_spec(&args.spec)?;
    let v = jones::jones_polynomial(&d).map_err(|e| e.to_string())?;
    let j = jones::jones_unnormalized(&d);

    // Internal consistency failures map to exit code 2 with a dump.
    let cube = match verify::prepared_cube(&d) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("internal consistency failure: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let complex = match build_complex(&cube, &spec, BuildOptions::default()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("internal consistency failure: {e}");
            eprintln!("cube dump: {}", cube.debug_dump());
            return Ok(ExitCode::from(2));
        }
    };
    let euler = complex.graded_euler();
    let homology = if spec.is_universal() || args.euler_only {
        None
    } else {
        Some(homology_table(&complex))
    };

    match args.format {
        Format::Text => {
            println!("diagram: {name}");
            println!("pd: {}", d.render());
            println!(
                "crossings: {} (n+ = {}, n- = {})",
                d.crossing_count(),
                d.n_plus(),
                d.n_minus()
            );
            println!("components: {}", d.components().len());
            println!("writhe: {}", d.writhe());
            println!("jones V(t): {}", v.render_t());
            println!("jones J(q): {}", j);
            println!("specialization: {}", spec);
            println!("graded euler characteristic: {}", euler);
            if let Some(h) = &homology {
                println!("homology (r q betti torsion..):");
                print!("{}", h.render());
            }
        }
        Format::Json => {
            let out = json!({
                "schema": 1,
                "diagram": name,
                "pd": d.render(),
                "crossings": d.crossing_count(),
                "n_plus": d.n_plus(),
                "n_minus": d.n_minus(),
                "components": d.components().len(),
                "writhe": d.writhe(),
                "jones_t": v.render_t(),
                "jones_s": v.render(),
                "jones_q": j.render(),
                "specialization": spec.to_string(),
                "graded_euler": euler.render(),
                "homology": homology.as_ref().map(|h| h.to_json()),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    if euler != j {
        eprintln!("internal consistency failure: graded euler differs from the state sum");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let spec = parse_spec(&args.spec)?;
    let report = match args.suite.as_str() {
        "faces" => verify::suite_faces(args.max_crossings)?,
        "cocycle" => verify::suite_cocycle(args.max_crossings)?,
        "d2" => verify::suite_d2(args.max_crossings, &spec)?,
        "euler" => verify::suite_euler(args.max_crossings)?,
        "frobenius" => verify::suite_frobenius(),
        "reidemeister" => verify::suite_reidemeister(),
        "mirror" => verify::suite_mirror(args.max_crossings)?,
        "arrows" => verify::suite_arrows(args.max_crossings.min(6), 10, 0x6b68)?,
        other => return Err(format!("unknown suite {other:?}")),
    };
    match args.format {
        Format::Text => print!("{}", report.render()),
        Format::Json => {
            let out = json!({
                "schema": 1,
                "suite": report.suite,
                "checked": report.checked,
                "passed": report.passed(),
                "failures": report.failures,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_table(args: &TableArgs) -> Result<ExitCode, String> {
    let table = KnotTable::load().map_err(|e| e.to_string())?;
    let selected: Vec<String> = match &args.name {
        Some(name) => {
            if table.pd_text(name).is_none() {
                return Err(format!("unknown table entry {name:?}"));
            }
            vec![name.clone()]
        }
        None => table.names().to_vec(),
    };
    let mut rows = Vec::new();
    for name in &selected {
        let d = table.get(name).unwrap().map_err(|e| e.to_string())?;
        rows.push((name.clone(), d.crossing_count(), d.writhe(), d.components().len()));
    }
    match args.format {
        Format::Text => {
            println!("{:<12} {:>9} {:>7} {:>10}", "name", "crossings", "writhe", "components");
            for (name, cr, w, comps) in rows {
                println!("{:<12} {:>9} {:>7} {:>10}", name, cr, w, comps);
            }
        }
        Format::Json => {
            let out = json!({
                "schema": 1,
                "entries": rows
                    .iter()
                    .map(|(name, cr, w, comps)| json!({
                        "name": name,
                        "crossings": cr,
                        "writhe": w,
                        "components": comps,
                        "pd": table.pd_text(name),
                    }))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    let result = match &cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
