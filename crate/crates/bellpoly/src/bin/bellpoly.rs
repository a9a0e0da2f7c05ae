//! Command-line front end: enumerate, classify, bound, optimize, report.

use bellpoly::bounds::{classical_bound, ns_bound};
use bellpoly::golden::{table_n3, table_n4};
use bellpoly::polytope::{facet_enum, polya_bound, ti_vertices};
use bellpoly::quantum::{
    chsh_max, geometric_entanglement, ghz, psi3, psi5, reduced_state, w_state, DensityMatrix,
    Mode, PureState,
};
use bellpoly::report::{
    class_rows, diff_against_golden, facets_jsonl, fill_ns_bounds, fill_quantum,
    ns_certificate_json, table_csv, vertices_csv,
};
use bellpoly::scalar::{format_rational, parse_rational};
use bellpoly::seesaw::{dmin_search, seesaw_run_with, DEFAULT_DIM_CAP};
use bellpoly::symmetry::classify;
use bellpoly::{BellError, ExactInequality, TIInequality};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bellpoly", about = "Translationally invariant two-body Bell inequalities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct IneqInput {
    /// inequality as a JSON file
    #[arg(long)]
    ineq: Option<PathBuf>,
    /// nearest-neighbour coefficients "alpha,beta,gamma,omega1,omega2,eps"
    /// (requires --n)
    #[arg(long, allow_hyphen_values = true)]
    nn: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

impl IneqInput {
    fn load(&self) -> Result<ExactInequality, BellError> {
        match (&self.ineq, &self.nn) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)?;
                Ok(serde_json::from_str(&text)?)
            }
            (None, Some(spec)) => {
                let n = self.n.ok_or_else(|| BellError::BadInput("--nn needs --n".into()))?;
                let parts: Vec<_> = spec.split(',').map(str::trim).collect();
                if parts.len() != 6 {
                    return Err(BellError::BadInput("--nn takes six comma-separated values".into()));
                }
                let mut vals = Vec::with_capacity(6);
                for p in parts {
                    vals.push(
                        parse_rational(p)
                            .ok_or_else(|| BellError::BadInput(format!("bad value {p}")))?,
                    );
                }
                TIInequality::nearest_neighbour(
                    n,
                    vals[0].clone(),
                    vals[1].clone(),
                    vals[2].clone(),
                    vals[3].clone(),
                    vals[4].clone(),
                    vals[5].clone(),
                )
            }
            _ => Err(BellError::BadInput("provide exactly one of --ineq or --nn".into())),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate TI-projected vertices and compare to the counting bound
    Vertices {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate facets (exact)
    Facets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group facets into symmetry classes
    Classify {
        #[arg(long)]
        n: usize,
        /// enable the extra coefficient relabeling for one-body-free rows
        #[arg(long)]
        sym_ext: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full class table with bounds; diffs against the bundled reference
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sym_ext: bool,
        /// multistart budget for the quantum columns
        #[arg(long, default_value_t = 50)]
        starts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// tolerance for the two-decimal quantum reference columns
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
        /// skip the quantum columns
        #[arg(long)]
        no_quantum: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact nonsignalling bound with certificate
    Nsbound {
        #[command(flatten)]
        input: IneqInput,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best-found quantum violation
    Qbound {
        #[command(flatten)]
        input: IneqInput,
        /// ti for site-identical angles, free otherwise
        #[arg(long, default_value = "ti")]
        mode: String,
        #[arg(long, default_value_t = 50)]
        starts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// See-saw over TI states in fixed local dimension
    Seesaw {
        #[command(flatten)]
        input: IneqInput,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 400)]
        max_iter: usize,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        mem_cap: usize,
        /// restrict observables to real entries
        #[arg(long)]
        real: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest local dimension reaching a target violation
    Dmin {
        #[command(flatten)]
        input: IneqInput,
        #[arg(long, allow_hyphen_values = true)]
        target: f64,
        #[arg(long, default_value_t = 6)]
        d_max: usize,
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometric measure of entanglement of a named state
    Gme {
        /// psi3, psi5, ghz<N> or w<N>
        #[arg(long)]
        state: String,
        #[arg(long)]
        symmetric: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// CHSH values of all two-qubit reductions of a named state
    ChshCheck {
        #[arg(long)]
        state: String,
    },
}

fn named_state(name: &str) -> Result<PureState, BellError> {
    if name == "psi3" {
        return Ok(psi3());
    }
    if name == "psi5" {
        return Ok(psi5());
    }
    if let Some(n) = name.strip_prefix("ghz") {
        let n: usize = n.parse().map_err(|_| BellError::BadInput(format!("bad state {name}")))?;
        return Ok(ghz(n));
    }
    if let Some(n) = name.strip_prefix('w') {
        let n: usize = n.parse().map_err(|_| BellError::BadInput(format!("bad state {name}")))?;
        return Ok(w_state(n));
    }
    Err(BellError::BadInput(format!("unknown state {name}")))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), BellError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn golden_for(n: usize) -> Option<Vec<bellpoly::golden::GoldenRow>> {
    match n {
        3 => Some(table_n3()),
        4 => Some(table_n4()),
        _ => None,
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, BellError> {
    match cmd {
        Cmd::Vertices { n, out } => {
            let vs = ti_vertices(n)?;
            println!("n={n}: {} vertices of <= {}", vs.len(), polya_bound(n));
            emit(&out, &vertices_csv(&vs))?;
        }
        Cmd::Facets { n, out } => {
            let vs = ti_vertices(n)?;
            let fl = facet_enum(&vs)?;
            println!("n={n}: {} facets", fl.facets.len());
            emit(&out, &facets_jsonl(&fl))?;
        }
        Cmd::Classify { n, sym_ext, out } => {
            let vs = ti_vertices(n)?;
            let fl = facet_enum(&vs)?;
            let table = classify(&fl, sym_ext);
            println!("n={n}: {} classes from {} facets", table.classes.len(), fl.facets.len());
            let rows = class_rows(&table);
            emit(&out, &table_csv(n, &rows))?;
        }
        Cmd::Table { n, sym_ext, starts, seed, tol, no_quantum, out } => {
            let vs = ti_vertices(n)?;
            let fl = facet_enum(&vs)?;
            let table = classify(&fl, sym_ext);
            let mut rows = class_rows(&table);
            fill_ns_bounds(&mut rows)?;
            if !no_quantum {
                fill_quantum(&mut rows, starts, seed)?;
            }
            emit(&out, &table_csv(n, &rows))?;
            if let Some(golden) = golden_for(n) {
                let problems = diff_against_golden(&rows, &golden, sym_ext, tol);
                if problems.is_empty() {
                    println!("n={n}: {} classes, reference diff clean", rows.len());
                } else {
                    for p in &problems {
                        eprintln!("mismatch: {p}");
                    }
                    return Ok(ExitCode::from(2));
                }
            } else {
                println!("n={n}: {} classes (no bundled reference)", rows.len());
            }
        }
        Cmd::Nsbound { input, out } => {
            let q = input.load()?;
            let ns = ns_bound(&q)?;
            println!("beta_ns = {}", format_rational(&ns.beta_n));
            emit(&out, &ns_certificate_json(&q)?)?;
        }
        Cmd::Qbound { input, mode, starts, seed, out } => {
            let mut q = input.load()?;
            let (bc, _) = classical_bound(&q)?;
            q.beta_c = Some(bc.clone());
            let m = match mode.as_str() {
                "ti" => Mode::TiRestricted,
                "free" => Mode::Free,
                other => return Err(BellError::BadInput(format!("bad mode {other}"))),
            };
            let res = bellpoly::quantum::max_violation(&q.to_float(), m, starts, seed)?;
            println!(
                "beta_c = {}, best beta = {:.4} ({})",
                format_rational(&bc),
                res.beta,
                if res.converged { "converged" } else { "budget exhausted" }
            );
            emit(&out, &serde_json::to_string_pretty(&res)?)?;
        }
        Cmd::Seesaw { input, d, seeds, max_iter, mem_cap, real, out } => {
            let q = input.load()?.to_float();
            let mut best: Option<bellpoly::seesaw::SeesawReport> = None;
            for s in 0..seeds {
                let rep = seesaw_run_with(&q, d, s, max_iter, real, mem_cap)?;
                if best.as_ref().is_none_or(|b| rep.beta > b.beta) {
                    best = Some(rep);
                }
            }
            let rep = best.expect("at least one seed");
            println!(
                "D={d}: best beta {:.4} over {seeds} seeds ({} iterations, monotone: {})",
                rep.beta, rep.iterations, rep.monotone
            );
            emit(&out, &serde_json::to_string_pretty(&rep)?)?;
        }
        Cmd::Dmin { input, target, d_max, seeds, seed, out } => {
            let q = input.load()?.to_float();
            let res = dmin_search(&q, target, d_max, seeds, seed)?;
            match res.d_min {
                Some(d) => println!("target {target:.4} reached at D={d}"),
                None => println!("target {target:.4} not reached for D <= {d_max}"),
            }
            let mut csv = String::from("d,best_beta\n");
            for (d, b) in &res.curve {
                csv.push_str(&format!("{d},{b:.6}\n"));
            }
            emit(&out, &csv)?;
        }
        Cmd::Gme { state, symmetric, seed } => {
            let psi = named_state(&state)?;
            let eg = geometric_entanglement(&psi, symmetric, seed);
            println!("E_G({state}) = {eg:.4}");
        }
        Cmd::ChshCheck { state } => {
            let psi = named_state(&state)?;
            let rho = DensityMatrix::from_pure(&psi);
            let mut all_local = true;
            for i in 0..psi.n {
                for j in i + 1..psi.n {
                    let r2 = reduced_state(&rho, &[i, j])?;
                    let v = chsh_max(&r2);
                    all_local &= v <= 2.0 + 1e-9;
                    println!("sites ({i},{j}): chsh {v:.6}");
                }
            }
            println!("all reductions local: {all_local}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("BELLPOLY_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                BellError::ResourceCap(_) | BellError::Intractable => ExitCode::from(3),
                _ => ExitCode::from(4),
            }
        }
    }
}
