//! `gridlock`: grid-diagram knot Floer homology from the command line.
//!
//! Human-readable text goes to stdout; the machine report is JSON, written
//! to `--out`. Exit codes: 0 computed, 1 invalid input, 2 I/O failure,
//! 3 undecided (budget ran out, window truncated, or a comparison hinged on
//! an unknown).

use clap::{Parser, Subcommand};
use gridlock_core::complex::{hat_dims, BigradedComplex, BigradedDims, Flavor};
use gridlock_core::invariant::{
    concordance_obstruction, invariant_class, DeltaStatus, InvariantClass, InvariantError,
    LegendrianProfile, Tri, Which,
};
use gridlock_core::state::{enumerate_states_windowed, ComplexError};
use gridlock_core::{catalog, check_concordance, parse_script, GridDiagram};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gridlock", version, about = "Knot Floer homology on grid diagrams")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the JSON report here (text always goes to stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress the timestamp so identical runs emit identical JSON.
    #[arg(long, global = true)]
    reproducible: bool,
    /// Size of the worker pool (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Enumeration budget (states for full runs, search nodes for windowed).
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a grid JSON file and report its classical invariants.
    Validate { grid: PathBuf },
    /// Bigraded homology dimension table of the knot in a grid file.
    Homology {
        grid: PathBuf,
        /// Restrict to Alexander gradings A:B (partial result, exit 3).
        #[arg(long, value_parser = parse_window)]
        window: Option<(i64, i64)>,
    },
    /// Canonical invariant classes of a grid: gradings, vanishing, page maps.
    Invariants {
        grid: PathBuf,
        /// Deepest page differential to test.
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Test for obstructions to a Lagrangian concordance source -> target.
    Obstruct {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Replay a move script and check the concordance conditions.
    ScriptCheck { script: PathBuf },
    /// List catalog entries, or show one by name.
    Catalog { name: Option<String> },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("bad window bound {a:?}"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("bad window bound {b:?}"))?;
    if lo > hi {
        return Err(format!("window {lo}:{hi} is empty"));
    }
    Ok((lo, hi))
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl ToString) -> Failure {
    Failure { code, msg: msg.to_string() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // A second build_global in-process is harmless; first setting wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.cmd {
        Cmd::Validate { grid } => cmd_validate(cli, grid),
        Cmd::Homology { grid, window } => cmd_homology(cli, grid, *window),
        Cmd::Invariants { grid, kmax } => cmd_invariants(cli, grid, *kmax),
        Cmd::Obstruct { source, target, kmax } => cmd_obstruct(cli, source, target, *kmax),
        Cmd::ScriptCheck { script } => cmd_script_check(cli, script),
        Cmd::Catalog { name } => cmd_catalog(cli, name.as_deref()),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn load_grid(path: &Path) -> Result<(GridDiagram, Option<String>), Failure> {
    let text = read_file(path)?;
    GridDiagram::from_json_str(&text).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn complex_failure(e: ComplexError) -> Failure {
    match e {
        ComplexError::BudgetExceeded { .. } | ComplexError::WindowTooNarrow { .. } => fail(3, e),
        _ => fail(1, e),
    }
}

fn invariant_failure(e: InvariantError) -> Failure {
    match e {
        InvariantError::Grid(ge) => fail(1, ge),
        InvariantError::Complex(ce) => complex_failure(ce),
        InvariantError::IncomparableUnknowns(_) => fail(3, e),
    }
}

/// Emit the report: text to stdout, enveloped JSON to --out if given.
fn emit(cli: &Cli, command: &str, payload: Value, text: &str) -> Result<(), Failure> {
    print!("{text}");
    if !text.ends_with('\n') {
        println!();
    }
    if let Some(path) = &cli.out {
        let mut doc = serde_json::Map::new();
        doc.insert("command".into(), json!(command));
        if !cli.reproducible {
            let now = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            doc.insert("timestamp".into(), json!(now));
        }
        doc.insert("report".into(), payload);
        let body = serde_json::to_string_pretty(&Value::Object(doc)).expect("report serializes");
        std::fs::write(path, body + "\n")
            .map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn grid_json(g: &GridDiagram, name: Option<&str>) -> Value {
    json!({
        "n": g.n(),
        "x": g.x_one_indexed(),
        "o": g.o_one_indexed(),
        "name": name,
        "hash": g.hash_hex(),
    })
}

fn cmd_validate(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let (g, name) = load_grid(path)?;
    let components = g.components();
    let mut text = format!(
        "valid grid: n={}, {} component{}\n",
        g.n(),
        components,
        if components == 1 { "" } else { "s" }
    );
    let classical = if components == 1 {
        let ci = g.classical_invariants().map_err(|e| fail(1, e))?;
        let _ = writeln!(text, "tb={} r={} writhe={}", ci.tb, ci.r, ci.writhe);
        Some(ci)
    } else {
        None
    };
    let payload = json!({
        "grid": grid_json(&g, name.as_deref()),
        "components": components,
        "classical": classical,
    });
    emit(cli, "validate", payload, &text)?;
    Ok(0)
}

/// Halve the stored doubled Alexander keys for display: [maslov, alexander, dim].
fn halved_triples(dims: &BigradedDims) -> Vec<(i32, i32, usize)> {
    dims.iter().map(|(&(m, a2), &d)| (m, a2 / 2, d)).collect()
}

fn dims_table(triples: &[(i32, i32, usize)]) -> String {
    if triples.is_empty() {
        return "  (empty table)\n".into();
    }
    let (mut ds, mut ss) = (Vec::new(), Vec::new());
    for &(d, s, _) in triples {
        ds.push(d);
        ss.push(s);
    }
    ds.sort_unstable();
    ds.dedup();
    ds.reverse();
    ss.sort_unstable();
    ss.dedup();
    let cell = |d: i32, s: i32| -> String {
        triples
            .iter()
            .find(|&&(td, ts, _)| td == d && ts == s)
            .map_or(".".into(), |&(_, _, dim)| dim.to_string())
    };
    let mut width = 3;
    for &s in &ss {
        width = width.max(format!("s={s}").len());
        for &d in &ds {
            width = width.max(cell(d, s).len());
        }
    }
    let head = ds.iter().map(|d| format!("d={d}")).map(|h| h.len()).max().unwrap_or(3);
    let mut out = String::new();
    let _ = write!(out, "  {:>head$}", "");
    for &s in &ss {
        let _ = write!(out, "  {:>width$}", format!("s={s}"));
    }
    out.push('\n');
    for &d in &ds {
        let _ = write!(out, "  {:>head$}", format!("d={d}"));
        for &s in &ss {
            let _ = write!(out, "  {:>width$}", cell(d, s));
        }
        out.push('\n');
    }
    out
}

fn require_knot(g: &GridDiagram) -> Result<(), Failure> {
    let c = g.components();
    if c != 1 {
        return Err(fail(1, format!("the diagram has {c} components; this command needs a knot")));
    }
    Ok(())
}

fn cmd_homology(cli: &Cli, path: &Path, window: Option<(i64, i64)>) -> Result<u8, Failure> {
    let (g, name) = load_grid(path)?;
    require_knot(&g)?;
    match window {
        None => {
            let hat = hat_dims(&g, cli.budget).map_err(complex_failure)?;
            let set = gridlock_core::state::enumerate_states(&g, cli.budget)
                .map_err(complex_failure)?;
            let tilde_total: usize =
                BigradedComplex::build(&g, set, Flavor::Tilde).homology_dims().values().sum();
            let triples = halved_triples(&hat);
            let text = format!(
                "homology of {} (n={}):\n{}  total tilde rank: {}\n",
                name.as_deref().unwrap_or("grid"),
                g.n(),
                dims_table(&triples),
                tilde_total,
            );
            let payload = json!({
                "grid": grid_json(&g, name.as_deref()),
                "hat_dims": triples,
                "tilde_total_rank": tilde_total,
                "partial": false,
            });
            emit(cli, "homology", payload, &text)?;
            Ok(0)
        }
        Some((lo, hi)) => {
            let set = enumerate_states_windowed(&g, lo, hi, cli.budget).map_err(complex_failure)?;
            let complex = BigradedComplex::build(&g, set, Flavor::Tilde);
            let dims: BigradedDims = complex
                .homology_dims()
                .into_iter()
                .filter(|&((_, a2), _)| a2 >= 2 * lo as i32 && a2 <= 2 * hi as i32)
                .collect();
            let triples = halved_triples(&dims);
            let text = format!(
                "tilde homology slices s={lo}..{hi} of {} (n={}); partial, no hat table:\n{}",
                name.as_deref().unwrap_or("grid"),
                g.n(),
                dims_table(&triples),
            );
            let payload = json!({
                "grid": grid_json(&g, name.as_deref()),
                "tilde_dims_window": triples,
                "window": [lo, hi],
                "partial": true,
            });
            emit(cli, "homology", payload, &text)?;
            Ok(3)
        }
    }
}

fn tri_text(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "zero",
        Tri::No => "nonzero",
        Tri::Unknown => "unknown",
    }
}

fn delta_text(d: DeltaStatus) -> &'static str {
    match d {
        DeltaStatus::Zero => "zero",
        DeltaStatus::NonZero => "nonzero",
        DeltaStatus::ClassNotDefined => "class-not-defined",
        DeltaStatus::Unknown => "unknown",
    }
}

fn class_json(c: &InvariantClass) -> Value {
    let deltas: Vec<Value> =
        c.delta_vanishing.iter().map(|(&k, &st)| json!({"k": k, "status": st})).collect();
    json!({
        "which": c.which,
        "cycle": c.cycle,
        "maslov": c.maslov,
        "alexander": c.alexander2 / 2,
        "vanishing": c.vanishing,
        "delta": deltas,
        "grid_ref": c.grid_ref,
    })
}

fn class_text(c: &InvariantClass) -> String {
    let deltas = c
        .delta_vanishing
        .iter()
        .map(|(k, &st)| format!("d{k}: {}", delta_text(st)))
        .collect::<Vec<_>>()
        .join(", ");
    format!(
        "{} at (d={}, s={}): {}; {}\n",
        c.which.label(),
        c.maslov,
        c.alexander2 / 2,
        tri_text(c.vanishing),
        deltas,
    )
}

fn class_undecided(c: &InvariantClass) -> bool {
    c.vanishing == Tri::Unknown
        || c.delta_vanishing.values().any(|&d| d == DeltaStatus::Unknown)
}

fn cmd_invariants(cli: &Cli, path: &Path, kmax: u32) -> Result<u8, Failure> {
    let (g, name) = load_grid(path)?;
    require_knot(&g)?;
    let ci = g.classical_invariants().map_err(|e| fail(1, e))?;
    let minus = invariant_class(&g, Which::Minus, kmax, cli.budget).map_err(invariant_failure)?;
    let plus = invariant_class(&g, Which::Plus, kmax, cli.budget).map_err(invariant_failure)?;
    let mut text = format!(
        "{} (n={}): tb={} r={}\n",
        name.as_deref().unwrap_or("grid"),
        g.n(),
        ci.tb,
        ci.r
    );
    text.push_str(&class_text(&minus));
    text.push_str(&class_text(&plus));
    let undecided = class_undecided(&minus) || class_undecided(&plus);
    if undecided {
        text.push_str("some statuses are unknown; raise --budget to decide them\n");
    }
    let payload = json!({
        "grid": grid_json(&g, name.as_deref()),
        "classical": ci,
        "x_minus": class_json(&minus),
        "x_plus": class_json(&plus),
    });
    emit(cli, "invariants", payload, &text)?;
    Ok(if undecided { 3 } else { 0 })
}

fn profile_for(path: &Path, kmax: u32, budget: u64) -> Result<(LegendrianProfile, Value), Failure> {
    let (g, name) = load_grid(path)?;
    require_knot(&g)?;
    let id = name.unwrap_or_else(|| path.display().to_string());
    let profile = gridlock_core::invariant::legendrian_profile(&g, id, kmax, budget)
        .map_err(invariant_failure)?;
    Ok((profile, grid_json(&g, None)))
}

fn cmd_obstruct(cli: &Cli, source: &Path, target: &Path, kmax: u32) -> Result<u8, Failure> {
    let (sp, sg) = profile_for(source, kmax, cli.budget)?;
    let (tp, tg) = profile_for(target, kmax, cli.budget)?;
    let verdict = concordance_obstruction(&sp, &tp, kmax).map_err(invariant_failure)?;
    let mut text = format!(
        "concordance obstruction {} -> {}: {}\n",
        verdict.from,
        verdict.to,
        verdict.kind.label()
    );
    for line in &verdict.evidence {
        let _ = writeln!(text, "  - {line}");
    }
    let payload = json!({
        "source": {"grid": sg, "profile": sp},
        "target": {"grid": tg, "profile": tp},
        "verdict": verdict,
    });
    emit(cli, "obstruct", payload, &text)?;
    Ok(0)
}

fn cmd_script_check(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let text_in = read_file(path)?;
    let script =
        parse_script(&text_in).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
    let report =
        check_concordance(&script).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
    let mut text = format!(
        "script: {} moves, euler characteristic {}\n",
        script.moves.len(),
        report.euler_characteristic
    );
    if report.pass {
        let _ = writeln!(
            text,
            "PASS: concordance-shaped from {} (tb={}, r={}) to {} (tb={}, r={})",
            report.start.name,
            report.start.tb,
            report.start.r,
            report.end.name,
            report.end.tb,
            report.end.r
        );
    } else {
        text.push_str("FAIL:\n");
        for f in &report.failures {
            let _ = writeln!(text, "  - {f}");
        }
    }
    let payload = json!({
        "path": path.display().to_string(),
        "canonical": script.to_string(),
        "report": report,
    });
    emit(cli, "script-check", payload, &text)?;
    Ok(0)
}

fn load_catalog() -> Result<Vec<catalog::CatalogEntry>, Failure> {
    match std::env::var("GRIDLOCK_CATALOG") {
        Ok(path) if !path.is_empty() => catalog::load_from_path(&path).map_err(|e| match e {
            catalog::CatalogError::Io { .. } => fail(2, e),
            _ => fail(1, e),
        }),
        _ => Ok(catalog::builtin()),
    }
}

fn entry_json(e: &catalog::CatalogEntry) -> Value {
    json!({
        "name": e.name,
        "grid": e.grid.as_ref().map(|g| grid_json(g, Some(&e.name))),
        "expected": e.expected,
        "notes": e.notes,
    })
}

fn opt_num(v: Option<i64>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

fn cmd_catalog(cli: &Cli, name: Option<&str>) -> Result<u8, Failure> {
    let entries = load_catalog()?;
    match name {
        None => {
            let mut text = format!(
                "{:<26} {:>3} {:>4} {:>4}  {:<10} {}\n",
                "name", "n", "tb", "r", "class", "provenance"
            );
            for e in &entries {
                let n = e.grid.as_ref().map_or("-".into(), |g| g.n().to_string());
                let class = e
                    .expected
                    .theta_minus_vanishing
                    .map_or("-", |t| tri_text(t));
                let prov = match e.expected.provenance {
                    catalog::Provenance::Derived => "derived",
                    catalog::Provenance::Literature => "literature",
                };
                let _ = writeln!(
                    text,
                    "{:<26} {:>3} {:>4} {:>4}  {:<10} {}",
                    e.name,
                    n,
                    opt_num(e.expected.tb),
                    opt_num(e.expected.r),
                    class,
                    prov
                );
            }
            let payload = json!({"entries": entries.iter().map(entry_json).collect::<Vec<_>>()});
            emit(cli, "catalog", payload, &text)?;
            Ok(0)
        }
        Some(wanted) => {
            let Some(e) = entries.iter().find(|e| e.name == wanted) else {
                return Err(fail(1, format!("no catalog entry named {wanted:?}")));
            };
            let mut text = format!("name:       {}\n", e.name);
            let prov = match e.expected.provenance {
                catalog::Provenance::Derived => "derived",
                catalog::Provenance::Literature => "literature",
            };
            let _ = writeln!(text, "provenance: {prov}");
            match &e.grid {
                Some(g) => {
                    let _ = writeln!(
                        text,
                        "grid:       n={} x={:?} o={:?}",
                        g.n(),
                        g.x_one_indexed(),
                        g.o_one_indexed()
                    );
                }
                None => {
                    let _ = writeln!(text, "grid:       (none; supply one to recompute)");
                }
            }
            let _ = writeln!(text, "tb:         {}", opt_num(e.expected.tb));
            let _ = writeln!(text, "r:          {}", opt_num(e.expected.r));
            if let Some(h) = &e.expected.hat_dims {
                let cells = h
                    .iter()
                    .map(|&(d, s, k)| format!("({d},{s}):{k}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(text, "hat dims:   {cells}");
            }
            if let Some(t) = e.expected.theta_minus_vanishing {
                let _ = writeln!(text, "theta(-):   {}", tri_text(t));
            }
            if let Some(d) = e.expected.delta1_minus {
                let _ = writeln!(text, "delta1(-):  {}", delta_text(d));
            }
            let _ = writeln!(text, "notes:      {}", e.notes);
            emit(cli, "catalog", entry_json(e), &text)?;
            Ok(0)
        }
    }
}
