//! Command-line dispatch. Exit codes: 0 all checks pass, 1 a check failed,
//! 2 usage or input error, 3 exploration stopped before finishing.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::algebra::BoundQuiverAlgebra;
use crate::delta::{build_delta, dual_dot, dual_graph};
use crate::explore::{explore, hasse_dot, ExploreOptions, MutationGraph, Start, Verdict};
use crate::fan::{fan_json, fan_off, gvector_sum_range};
use crate::io::report::{
    check_fac_order, check_h0_bridge, check_order_cone_probe, delta_checks, full_report, h0_pairs, CheckResult,
};
use crate::io::spec::{example, parse_spec};
use crate::silt::GVector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "twosilt", about = "Two-term silting complexes, their mutation graph and g-vector fan")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Algebra spec file (JSON).
    #[arg(long, global = true, conflicts_with = "example")]
    pub algebra: Option<PathBuf>,
    /// Bundled example name.
    #[arg(long, global = true)]
    pub example: Option<String>,
    /// Maximum number of silting objects to discover.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write artifacts to files starting with this prefix.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Print JSON instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print DOT instead of the text summary.
    #[arg(long, global = true)]
    pub dot: bool,
    /// Cross-check indecomposability and isomorphism of every summand.
    #[arg(long, global = true)]
    pub validate: bool,
    /// Do not expand nodes this far from the start.
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    /// Start from A[1] instead of A.
    #[arg(long, global = true)]
    pub from_shifted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Mutation graph and Hasse quiver.
    Explore,
    /// The simplicial complex of presilting objects and its checks.
    Delta,
    /// The g-vector fan and its checks.
    Fan,
    /// H⁰ of each silting object as a support τ-tilting pair.
    Modules,
    /// Order versus cone-containment conditions on all pairs.
    ProbeOrder,
    /// Every check, as one report.
    Report,
}

struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn load(cli: &Cli) -> Result<(String, BoundQuiverAlgebra), String> {
    match (&cli.algebra, &cli.example) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let spec = parse_spec(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let alg = spec.build().map_err(|e| format!("{}: {e}", path.display()))?;
            Ok((path.display().to_string(), alg))
        }
        (None, Some(name)) => example(name)
            .map(|a| (name.clone(), a))
            .ok_or_else(|| format!("unknown example {name:?}")),
        _ => Err("exactly one of --algebra or --example is required".into()),
    }
}

fn write_artifact(o: &mut Output, cli: &Cli, suffix: &str, text: &str) -> Result<(), String> {
    if let Some(prefix) = &cli.out {
        let path = format!("{prefix}.{suffix}");
        std::fs::write(&path, text).map_err(|e| format!("{path}: {e}"))?;
        let _ = writeln!(o.err, "wrote {path}");
    }
    Ok(())
}

fn print_checks(o: &mut Output, checks: &[CheckResult]) {
    for c in checks {
        let _ = writeln!(o.out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
}

fn verdict_line(g: &MutationGraph) -> String {
    match g.verdict {
        Verdict::Finite => format!("Finite, {} nodes, {} edges", g.len(), g.edges.len()),
        Verdict::BudgetExhausted => format!("BudgetExhausted, {} nodes, {} edges (partial)", g.len(), g.edges.len()),
    }
}

fn exit_for(g: &MutationGraph, checks: &[CheckResult]) -> i32 {
    if checks.iter().any(|c| !c.passed) {
        EXIT_CHECK_FAILED
    } else if g.verdict != Verdict::Finite {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

#[derive(Serialize)]
struct ModuleRow {
    gmatrix: Vec<GVector>,
    dims: Vec<usize>,
    support: Vec<usize>,
}

fn run(cli: &Cli, o: &mut Output) -> Result<i32, String> {
    let (name, alg) = load(cli)?;
    let started = Instant::now();
    let opts = ExploreOptions {
        start: if cli.from_shifted { Start::Shifted } else { Start::Algebra },
        budget: cli.budget,
        max_depth: cli.max_depth,
        validate: cli.validate,
        parallel: true,
        seed: cli.seed,
    };
    let g = match explore(&alg, &opts) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(o.out, "FAIL explore: {e}");
            return Ok(EXIT_CHECK_FAILED);
        }
    };
    let code = match cli.command {
        Command::Explore => {
            let json = g.to_json();
            let dot = hasse_dot(&g);
            write_artifact(o, cli, "graph.json", &json)?;
            write_artifact(o, cli, "hasse.dot", &dot)?;
            if cli.json {
                let _ = write!(o.out, "{json}");
            } else if cli.dot {
                let _ = write!(o.out, "{dot}");
            } else {
                let _ = writeln!(o.out, "{}", verdict_line(&g));
            }
            exit_for(&g, &[])
        }
        Command::Delta => {
            if g.verdict != Verdict::Finite {
                let _ = writeln!(o.out, "{}", verdict_line(&g));
                return Ok(EXIT_BUDGET);
            }
            let (d, _) = build_delta(&g).map_err(|e| e.to_string())?;
            let dg = dual_graph(&d);
            let (checks, stats) = delta_checks(&g);
            write_artifact(o, cli, "delta.json", &d.to_json())?;
            write_artifact(o, cli, "dual.dot", &dual_dot(&d, &dg))?;
            if cli.json {
                let _ = write!(o.out, "{}", d.to_json());
            } else if cli.dot {
                let _ = write!(o.out, "{}", dual_dot(&d, &dg));
            } else {
                if let Some(s) = stats {
                    let _ = writeln!(
                        o.out,
                        "{} vertices, {} max faces, face counts {:?}, chi = {}, reduced betti {:?}",
                        s.vertices, s.max_faces, s.homology.face_counts, s.homology.euler, s.homology.betti
                    );
                }
                print_checks(o, &checks);
            }
            exit_for(&g, &checks)
        }
        Command::Fan => {
            let json = fan_json(&g);
            write_artifact(o, cli, "fan.json", &json)?;
            if let Some(off) = fan_off(&g) {
                write_artifact(o, cli, "fan.off", &off)?;
            }
            let checks = if g.verdict == Verdict::Finite {
                vec![
                    crate::io::report::check_cone_intersections(&g),
                    crate::io::report::check_fan_coverage(&g, cli.seed),
                ]
            } else {
                Vec::new()
            };
            if cli.json {
                let _ = write!(o.out, "{json}");
            } else {
                let _ = writeln!(o.out, "{}", verdict_line(&g));
                if let Some((lo, hi)) = gvector_sum_range(&g) {
                    let _ = writeln!(o.out, "g-vector coordinate sums in [{lo}, {hi}]");
                }
                print_checks(o, &checks);
            }
            exit_for(&g, &checks)
        }
        Command::Modules => {
            let pairs = h0_pairs(&alg, &g);
            let mut checks = vec![check_h0_bridge(&alg, &g, &pairs, cli.seed)];
            if g.verdict == Verdict::Finite {
                checks.push(check_fac_order(&alg, &g, &pairs));
            }
            let rows: Vec<ModuleRow> = g
                .sorted()
                .iter()
                .zip(&pairs)
                .filter_map(|(&i, p)| {
                    p.as_ref().ok().map(|p| ModuleRow {
                        gmatrix: g.nodes[i].key(),
                        dims: p.module.dims().to_vec(),
                        support: p.support.clone(),
                    })
                })
                .collect();
            let json = serde_json::to_string_pretty(&rows).expect("rows serialize");
            write_artifact(o, cli, "modules.json", &json)?;
            if cli.json {
                let _ = write!(o.out, "{json}");
            } else {
                let _ = writeln!(o.out, "{}", verdict_line(&g));
                for r in &rows {
                    let _ = writeln!(o.out, "{:?}: dims {:?}, support {:?}", r.gmatrix, r.dims, r.support);
                }
                print_checks(o, &checks);
            }
            exit_for(&g, &checks)
        }
        Command::ProbeOrder => {
            let (check, _) = check_order_cone_probe(&alg, &g);
            let checks = vec![check];
            let _ = writeln!(o.out, "{}", verdict_line(&g));
            print_checks(o, &checks);
            exit_for(&g, &checks)
        }
        Command::Report => {
            let mut r = full_report(&name, &alg, &g, cli.budget, cli.seed);
            r.timing_ms = started.elapsed().as_millis();
            let json = serde_json::to_string_pretty(&r).expect("report serializes");
            write_artifact(o, cli, "report.json", &json)?;
            if cli.json {
                let _ = write!(o.out, "{json}");
            } else {
                let _ = writeln!(
                    o.out,
                    "{}: dim {}, {} vertices, loewy length {}",
                    name, r.algebra.dim, r.algebra.n, r.algebra.loewy_length
                );
                let _ = writeln!(o.out, "{}", verdict_line(&g));
                if let Some(ell) = r.ell {
                    let _ = writeln!(o.out, "longest path from A: {ell}");
                }
                if let Some(d) = &r.delta {
                    let _ = writeln!(
                        o.out,
                        "delta: {} vertices, face counts {:?}, chi = {}, reduced betti {:?}",
                        d.vertices, d.homology.face_counts, d.homology.euler, d.homology.betti
                    );
                }
                print_checks(o, &r.checks);
            }
            let _ = writeln!(o.err, "elapsed {} ms", r.timing_ms);
            exit_for(&g, &r.checks)
        }
    };
    Ok(code)
}

/// Runs one command line (including the program name) and returns the
/// exit code.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let mut o = Output { out, err };
    match run(&cli, &mut o) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(o.err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["twosilt"];
        argv.extend_from_slice(args);
        let code = run_command(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn explore_pentagon() {
        let (code, out, _) = run_args(&["explore", "--example", "a2-path"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("Finite, 5 nodes"), "{out}");
    }

    #[test]
    fn symmetric_algebra_exhausts_the_budget() {
        let (code, out, _) = run_args(&["explore", "--example", "sym-local", "--budget", "10"]);
        assert_eq!(code, 3);
        assert!(out.starts_with("BudgetExhausted, 10 nodes"), "{out}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["explore"]).0, 2);
        assert_eq!(run_args(&["explore", "--example", "nope"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["explore", "--algebra", "/nonexistent.json"]).0, 2);
    }

    #[test]
    fn report_and_outputs_are_deterministic() {
        let a = run_args(&["report", "--example", "a3-rel", "--json"]);
        let b = run_args(&["report", "--example", "a3-rel", "--json"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
        assert!(a.1.contains("\"euler\": 2"));
        let d1 = run_args(&["explore", "--example", "a3-rel", "--dot"]);
        let d2 = run_args(&["explore", "--example", "a3-rel", "--dot"]);
        assert_eq!(d1.1, d2.1);
    }

    #[test]
    fn artifacts_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let prefix = dir.path().join("a3").display().to_string();
        for cmd in ["explore", "delta", "fan", "modules"] {
            assert_eq!(run_args(&[cmd, "--example", "a3-rel", "--out", &prefix]).0, 0, "{cmd}");
        }
        for suffix in ["graph.json", "hasse.dot", "delta.json", "dual.dot", "fan.json", "fan.off", "modules.json"] {
            assert!(dir.path().join(format!("a3.{suffix}")).exists(), "{suffix}");
        }
    }

    #[test]
    fn spec_files_are_accepted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("alg.json");
        std::fs::write(&path, crate::io::spec::example_text("a2-path").unwrap()).unwrap();
        let (code, out, _) = run_args(&["probe-order", "--algebra", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("PASS order-cone-probe: 25 pairs"), "{out}");
    }
}
