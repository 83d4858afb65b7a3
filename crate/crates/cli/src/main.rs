//! `kh`: Khovanov homology, cobordism maps and ribbon concordance checks.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kh_core::cobordism::{Movie, MovieComplexes};
use kh_core::cube::build_complex;
use kh_core::error::{DiagramError, MovieError};
use kh_core::homology::{homology, HomologyTable, InducedMap};
use kh_core::invariants::{compare_invariants, invariants, InvariantReport};
use kh_core::jones::jones;
use kh_core::link::LinkDiagram;
use kh_core::ribbon::verify_theorem;
use kh_core::ring::RingSpec;

#[derive(Parser)]
#[command(name = "kh", version, about = "Khovanov homology of links and maps induced by link cobordisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(clap::Args)]
struct Common {
    /// Coefficient rings: z, q or f<p>, comma-separated.
    #[arg(long, default_value = "z")]
    ring: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Khovanov homology of a diagram.
    Homology {
        diagram: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Jones polynomial from the Kauffman bracket.
    Jones {
        diagram: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Map on homology induced by a movie.
    Cobmap {
        movie: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Checks that a movie is a ribbon concordance whose reverse undoes it on homology.
    RibbonVerify {
        movie: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Gradings, breadth and δ-width of the homology.
    Invariants {
        diagram: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Checks the inequalities a ribbon concordance from L0 to L1 forces.
    Compare {
        l0: PathBuf,
        l1: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<MovieError> for Failure {
    fn from(e: MovieError) -> Self {
        match e {
            MovieError::Algebra { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<LinkDiagram, Failure> {
    LinkDiagram::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_movie(path: &Path) -> Result<Movie, Failure> {
    Movie::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn rings(s: &str) -> Result<Vec<RingSpec>, Failure> {
    RingSpec::parse_list(s).map_err(|e| Failure::Input(e.to_string()))
}

fn table_of(d: &LinkDiagram, ring: RingSpec) -> Result<HomologyTable, Failure> {
    Ok(homology(build_complex(d, ring)?.complex()))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

/// One value per ring, or the bare value when a single ring was asked for.
fn per_ring(mut values: Vec<Value>) -> Value {
    if values.len() == 1 {
        values.pop().unwrap()
    } else {
        Value::Array(values)
    }
}

fn homology_cmd(path: &Path, c: &Common) -> Result<String, Failure> {
    let d = load_diagram(path)?;
    let mut values = Vec::new();
    let mut text = String::new();
    for ring in rings(&c.ring)? {
        let t = table_of(&d, ring)?;
        values.push(json!({ "ring": ring.to_string(), "table": t.to_json_value(), "poincare": t.poincare_polynomial() }));
        text.push_str(&format!("{}\n", t.render_table()));
    }
    Ok(match c.format {
        Format::Json => pretty(&per_ring(values)),
        Format::Table => text.trim_end().to_string(),
    })
}

fn jones_cmd(path: &Path, format: Format) -> Result<String, Failure> {
    let p = jones(&load_diagram(path)?)?;
    Ok(match format {
        Format::Table => p.to_string(),
        Format::Json => pretty(&json!({ "jones": p.to_string(), "terms": p.terms() })),
    })
}

fn induced_json(f: &InducedMap) -> Value {
    let blocks: Vec<Value> = f
        .blocks()
        .values()
        .map(|b| {
            let entries: Vec<Vec<String>> = b.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            json!({ "source": [b.source.i, b.source.j], "target": [b.target.i, b.target.j], "matrix": entries })
        })
        .collect();
    json!({ "ring": f.ring().to_string(), "bidegree": [f.bidegree().0, f.bidegree().1], "blocks": blocks })
}

fn induced_text(f: &InducedMap) -> String {
    let mut s = format!("Kh(F) over {}, bidegree ({}, {})\n", f.ring(), f.bidegree().0, f.bidegree().1);
    for b in f.blocks().values() {
        s.push_str(&format!("({}, {}) -> ({}, {}):", b.source.i, b.source.j, b.target.i, b.target.j));
        if b.entries.is_empty() {
            s.push_str(" 0\n");
            continue;
        }
        s.push('\n');
        for row in &b.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            s.push_str(&format!("  [{}]\n", cells.join("")));
        }
    }
    s
}

fn cobmap_cmd(path: &Path, c: &Common) -> Result<String, Failure> {
    let m = load_movie(path)?;
    let mut values = Vec::new();
    let mut text = format!(
        "movie: {} events, euler characteristic {}, {} dots\n",
        m.len(),
        m.euler_characteristic(),
        m.dots()
    );
    for ring in rings(&c.ring)? {
        let mc = MovieComplexes::build(&m, ring)?;
        let f = mc.induced().map_err(|source| Failure::Verification(source.to_string()))?;
        let mut v = induced_json(&f);
        v["euler_characteristic"] = json!(m.euler_characteristic());
        v["dots"] = json!(m.dots());
        values.push(v);
        text.push_str(&induced_text(&f));
    }
    Ok(match c.format {
        Format::Json => pretty(&per_ring(values)),
        Format::Table => text.trim_end().to_string(),
    })
}

fn ribbon_cmd(path: &Path, c: &Common) -> Result<(String, bool), Failure> {
    let m = load_movie(path)?;
    let r = verify_theorem(&m, &rings(&c.ring)?)?;
    let out = match c.format {
        Format::Json => pretty(&serde_json::to_value(&r).unwrap()),
        Format::Table => {
            let mut s = match &r.reason {
                None => "ribbon: yes\n".to_string(),
                Some(why) => format!("ribbon: no ({why})\n"),
            };
            for res in &r.results {
                let bad = res.rank_check.iter().filter(|x| !x.ok).count();
                s.push_str(&format!(
                    "{:<4} composite {:<17} injective {:<5} rank checks {}/{} ok\n",
                    res.ring,
                    res.composite.as_str(),
                    res.injective,
                    res.rank_check.len() - bad,
                    res.rank_check.len()
                ));
            }
            s.trim_end().to_string()
        }
    };
    Ok((out, r.passed()))
}

fn invariant_text(r: &InvariantReport) -> String {
    let show = |x: Option<i32>| x.map_or("undefined".to_string(), |v| v.to_string());
    format!(
        "over {}: q_min {}  q_max {}  breadth {}  delta width {}  thin {}",
        r.ring,
        show(r.q_min),
        show(r.q_max),
        show(r.breadth),
        show(r.delta_width),
        r.is_thin.map_or("undefined".to_string(), |t| t.to_string())
    )
}

fn invariants_cmd(path: &Path, c: &Common) -> Result<String, Failure> {
    let d = load_diagram(path)?;
    let mut values = Vec::new();
    let mut text = Vec::new();
    for ring in rings(&c.ring)? {
        let r = invariants(&table_of(&d, ring)?);
        text.push(invariant_text(&r));
        values.push(serde_json::to_value(&r).unwrap());
    }
    Ok(match c.format {
        Format::Json => pretty(&per_ring(values)),
        Format::Table => text.join("\n"),
    })
}

fn compare_cmd(p0: &Path, p1: &Path, c: &Common) -> Result<(String, bool), Failure> {
    let (d0, d1) = (load_diagram(p0)?, load_diagram(p1)?);
    let mut values = Vec::new();
    let mut text = Vec::new();
    let mut ok = true;
    for ring in rings(&c.ring)? {
        let (r0, r1) = (invariants(&table_of(&d0, ring)?), invariants(&table_of(&d1, ring)?));
        let cmp = compare_invariants(&r0, &r1);
        ok &= cmp.consistent;
        text.push(format!(
            "over {ring}: q_min {}  q_max {}  breadth {}  delta width {}  consistent {}",
            cmp.q_min, cmp.q_max, cmp.breadth, cmp.delta_width, cmp.consistent
        ));
        values.push(json!({ "ring": ring.to_string(), "l0": r0, "l1": r1, "checks": cmp }));
    }
    let out = match c.format {
        Format::Json => pretty(&per_ring(values)),
        Format::Table => text.join("\n"),
    };
    Ok((out, ok))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::Homology { diagram, common } => homology_cmd(diagram, common).map(|s| (s, true)),
        Command::Jones { diagram, format } => jones_cmd(diagram, *format).map(|s| (s, true)),
        Command::Cobmap { movie, common } => cobmap_cmd(movie, common).map(|s| (s, true)),
        Command::RibbonVerify { movie, common } => ribbon_cmd(movie, common),
        Command::Invariants { diagram, common } => invariants_cmd(diagram, common).map(|s| (s, true)),
        Command::Compare { l0, l1, common } => compare_cmd(l0, l1, common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            println!("{out}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("kh: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("kh: verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
