use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use arrhom::chaincx::{
    hattori_model, left_module_form, parse_model, pi_p_resolution, skeleton_presentation, LaurentMatrix,
    MinimalChainComplex, PresentationMatrix,
};
use arrhom::fitcv::{
    coker_dim_at, fitting_ideal, format_gaussian, hilbert_function, parse_point, random_torus_point,
    variety_membership,
};
use arrhom::graphs::{
    chromatic_polynomial, compare_pi2, four_cycles, graphic_arrangement, hypersolvable_graph_series, is_chordal,
    poincare_from_chromatic, supersolvable_series, triangle_free_report, Graph, TriangleFreeReport,
};
use arrhom::homotopy::{connectivity_with_degree, Connectivity, ConnectivityReport};
use arrhom::hypersolv::{is_supersolvable, search_series, CompositionSeries, SearchConfig, DEFAULT_BUDGET};
use arrhom::osalg::{kernel_rank, nbc_basis, natural_order, poincare, quadratic_os_dims, DEFAULT_DEGREE_BOUND};
use arrhom::{Arrangement, Error, GaussianRational, IntPolynomial};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "arrhom", version, about = "Homotopy invariants of complex hyperplane arrangements")]
struct Cli {
    /// Node budget for series searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Degree bound for quadratic Orlik-Solomon dimensions and Hilbert functions.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_BOUND)]
    degree: usize,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit indented plain text.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: series, Poincaré polynomials, connectivity.
    Analyze { file: PathBuf },
    /// Orlik-Solomon data.
    Osalg { file: PathBuf },
    /// Hypersolvable composition series search.
    Hypersolv { file: PathBuf },
    /// Order of π₁-connectivity.
    Connectivity { file: PathBuf },
    /// Minimal chain complex of a product model.
    Chain(ChainArgs),
    /// Fitting ideals, varieties and Hilbert functions of a skeleton presentation.
    Fitting(FittingArgs),
    /// Graphic arrangements.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// The torus model of n generic hyperplanes in C^l.
    Hattori {
        #[arg(long)]
        n: usize,
        #[arg(long = "l")]
        ell: usize,
    },
}

#[derive(Args)]
struct ChainArgs {
    /// Product of `torus:k` and `wedge:k` factors joined by `*`.
    #[arg(long)]
    model: String,
    /// Also print the presentation of π_p of the p-skeleton.
    #[arg(long)]
    presentation: Option<usize>,
    /// Show the presentation as a left module.
    #[arg(long)]
    left: bool,
}

#[derive(Args)]
struct FittingArgs {
    #[arg(long)]
    model: String,
    /// Skeleton dimension p.
    #[arg(long, default_value_t = 2)]
    p: usize,
    #[arg(long)]
    left: bool,
    /// Fitting indices to compute.
    #[arg(long)]
    k: Vec<usize>,
    /// Torus points `a/b+c/di,...`.
    #[arg(long)]
    point: Vec<String>,
    /// Number of random points to add.
    #[arg(long, default_value_t = 0)]
    sample: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hilbert function through this degree.
    #[arg(long)]
    hilbert: Option<usize>,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Chordality, hypersolvability and Poincaré polynomial.
    Analyze { file: PathBuf },
    /// Chromatic polynomial.
    Chromatic { file: PathBuf },
    /// Second homotopy group data for graphs without triangles.
    Pi2 {
        file: PathBuf,
        other: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut v) => {
            if let Value::Object(m) = &mut v {
                m.insert("schema".into(), json!(SCHEMA));
            }
            if cli.text {
                let _ = write!(std::io::stdout(), "{}", render_text(&v, 0));
            } else {
                let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e.downcast_ref::<Error>().is_some_and(Error::is_budget);
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Value> {
    let config = SearchConfig { budget: cli.budget, ..SearchConfig::default() };
    match &cli.command {
        Command::Analyze { file } => analyze(file, config, cli.degree),
        Command::Osalg { file } => osalg(file, cli.degree),
        Command::Hypersolv { file } => hypersolv(file, config),
        Command::Connectivity { file } => {
            let (arr, input) = load_arrangement(file)?;
            let r = connectivity_with_degree(&arr, config, cli.degree)?;
            Ok(json!({ "input": input, "connectivity": connectivity_json(&r) }))
        }
        Command::Chain(args) => chain(args),
        Command::Fitting(args) => fitting(args),
        Command::Graph(cmd) => graph(cmd, cli.budget),
        Command::Hattori { n, ell } => hattori(*n, *ell),
    }
}

fn read(file: &Path) -> anyhow::Result<(String, String)> {
    let bytes = std::fs::read(file).with_context(|| format!("reading {}", file.display()))?;
    let hash = hex::encode(Sha256::digest(&bytes));
    Ok((String::from_utf8(bytes).context("input is not UTF-8")?, hash))
}

/// Loads an arrangement, coning affine input.
fn load_arrangement(file: &Path) -> anyhow::Result<(Arrangement, Value)> {
    let (text, hash) = read(file)?;
    let parsed = Arrangement::parse(&text)?;
    let coned = !parsed.is_central();
    let arr = if coned { parsed.cone()? } else { parsed };
    let input = json!({
        "file": file.display().to_string(),
        "sha256": hash,
        "coned": coned,
        "hyperplanes": arr.len(),
        "dim": arr.ambient_dim(),
        "rank": arr.rank(),
    });
    Ok((arr, input))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn series_json(s: &CompositionSeries) -> Value {
    json!({
        "length": s.length(),
        "steps": s.steps.iter().map(|x| one_based(x)).collect::<Vec<_>>(),
        "exponents": s.exponents,
        "exponent_multiset": s.exponent_multiset(),
        "fibered": s.fibered_flags,
    })
}

fn poly(p: &IntPolynomial) -> Value {
    serde_json::to_value(p).expect("serializable")
}

fn connectivity_json(r: &ConnectivityReport) -> Value {
    json!({
        "p": r.p,
        "aspherical": r.aspherical,
        "coinvariants_rank": match r.p { Connectivity::Finite(_) => json!(i64::try_from(&r.c_next).ok()), Connectivity::Infinite => Value::Null },
        "P": poly(&r.p_poly),
        "P_bar": poly(&r.pbar_poly),
        "P_bar_linear_algebra": r.pbar_linear_algebra,
        "supersolvable": r.supersolvable,
        "series": series_json(&r.series),
        "consistent": r.consistent,
    })
}

fn analyze(file: &Path, config: SearchConfig, degree: usize) -> anyhow::Result<Value> {
    let (arr, input) = load_arrangement(file)?;
    let r = match connectivity_with_degree(&arr, config, degree) {
        Err(Error::NotHypersolvable(reason)) => {
            let outcome = search_series(&arr, config)?;
            return Ok(json!({
                "input": input,
                "hypersolvable": false,
                "reason": reason,
                "frontier": outcome.frontier.iter().map(|f| one_based(f)).collect::<Vec<_>>(),
                "supersolvable": false,
                "P": poly(&poincare(&arr)?),
            }));
        }
        other => other?,
    };
    let c = connectivity_json(&r);
    Ok(json!({
        "input": input,
        "hypersolvable": true,
        "supersolvable": r.supersolvable,
        "exponents": r.series.exponent_multiset(),
        "p": r.p,
        "c_next": c["coinvariants_rank"],
        "P": poly(&r.p_poly),
        "P_bar": poly(&r.pbar_poly),
        "series": series_json(&r.series),
        "consistent": r.consistent,
    }))
}

fn osalg(file: &Path, degree: usize) -> anyhow::Result<Value> {
    let (arr, input) = load_arrangement(file)?;
    let nbc = nbc_basis(&arr, &natural_order(arr.len()))?;
    let quad = quadratic_os_dims(&arr, degree)?;
    let kernel: Vec<usize> = (0..=degree.min(arr.len())).map(|q| kernel_rank(&arr, q)).collect::<Result<_, _>>()?;
    Ok(json!({
        "input": input,
        "P": poly(&poincare(&arr)?),
        "nbc_counts": nbc.counts(),
        "quadratic_dims": quad.dims,
        "kernel_ranks": kernel,
    }))
}

fn hypersolv(file: &Path, config: SearchConfig) -> anyhow::Result<Value> {
    let (arr, input) = load_arrangement(file)?;
    let outcome = search_series(&arr, config)?;
    let ss = is_supersolvable(&arr, config)?;
    Ok(json!({
        "input": input,
        "hypersolvable": outcome.series.is_some(),
        "series": outcome.series.as_ref().map(series_json),
        "frontier": outcome.frontier.iter().map(|f| one_based(f)).collect::<Vec<_>>(),
        "nodes": outcome.nodes,
        "supersolvable": ss.supersolvable,
        "consistent": ss.consistent,
    }))
}

fn matrix_json(m: &LaurentMatrix, names: &[String]) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.render(names),
    })
}

fn presentation_json(p: &PresentationMatrix) -> Value {
    json!({
        "generators": p.generator_cells.iter().map(|c| c.label()).collect::<Vec<_>>(),
        "relations": p.relation_cells.iter().map(|c| c.label()).collect::<Vec<_>>(),
        "matrix": matrix_json(&p.matrix, &p.symbols),
        "coinvariant_rank": p.coinvariant_rank(),
    })
}

fn complex_json(y: &MinimalChainComplex) -> anyhow::Result<Value> {
    let boundaries: Vec<Value> = (1..=y.dim())
        .map(|q| {
            let m = y.boundary(q).expect("degree in range");
            json!({ "degree": q, "matrix": matrix_json(m, y.generators()) })
        })
        .collect();
    Ok(json!({
        "generators": y.generators(),
        "factors": y.factors(),
        "ranks": y.ranks(),
        "cells": (0..=y.dim()).map(|q| y.cells(q).iter().map(|c| c.label()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "boundaries": boundaries,
        "is_complex": y.is_complex()?,
        "epsilon_minimal": y.is_epsilon_minimal(),
    }))
}

fn chain(args: &ChainArgs) -> anyhow::Result<Value> {
    let y = parse_model(&args.model)?;
    let mut out = json!({ "model": args.model, "complex": complex_json(&y)? });
    if let Some(p) = args.presentation {
        let mut pres = skeleton_presentation(&y, p)?;
        if args.left {
            pres = left_module_form(&pres);
        }
        let res = pi_p_resolution(&y, p)?;
        out["presentation"] = presentation_json(&pres);
        out["presentation"]["form"] = json!(if args.left { "left" } else { "right" });
        out["resolution"] = json!({ "ranks": res.ranks, "length": res.length() });
    }
    Ok(out)
}

fn fitting(args: &FittingArgs) -> anyhow::Result<Value> {
    let y = parse_model(&args.model)?;
    let mut pres = skeleton_presentation(&y, args.p)?;
    if args.left {
        pres = left_module_form(&pres);
    }
    let mut points: Vec<Vec<GaussianRational>> = args.point.iter().map(|s| parse_point(s)).collect::<Result<_, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for _ in 0..args.sample {
        points.push(random_torus_point(&mut rng, pres.symbols.len()));
    }
    let ks: Vec<usize> = if args.k.is_empty() { (1..=pres.n_generators).collect() } else { args.k.clone() };
    let mut ideals = Vec::new();
    for &k in &ks {
        let f = fitting_ideal(&pres, k)?;
        let membership: Vec<bool> = points.iter().map(|t| variety_membership(&f, t)).collect::<Result<_, _>>()?;
        ideals.push(json!({
            "k": k,
            "zero_ideal": f.is_zero_ideal(),
            "generators": f.generators.iter().map(|g| g.render(&pres.symbols)).collect::<Vec<_>>(),
            "generators_sparse": f.generators.iter().map(|g| g.records()).collect::<Vec<_>>(),
            "membership": membership,
        }));
    }
    let coker: Vec<usize> = points.iter().map(|t| coker_dim_at(&pres, t)).collect::<Result<_, _>>()?;
    let mut out = json!({
        "model": args.model,
        "p": args.p,
        "form": if args.left { "left" } else { "right" },
        "presentation": presentation_json(&pres),
        "points": points.iter().map(|t| t.iter().map(format_gaussian).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "coker_dims": coker,
        "fitting": ideals,
    });
    if let Some(d) = args.hilbert {
        let h = hilbert_function(&pres, d)?;
        out["hilbert"] = json!({ "values": h.values, "not_nilpotent": h.not_nilpotent });
    }
    Ok(out)
}

fn load_graph(file: &Path) -> anyhow::Result<(Graph, Value)> {
    let (text, hash) = read(file)?;
    let g = Graph::parse(&text)?;
    let input = json!({
        "file": file.display().to_string(),
        "sha256": hash,
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
    });
    Ok((g, input))
}

fn triangle_free_json(r: &TriangleFreeReport) -> Value {
    json!({
        "edges": r.num_edges,
        "exponents": r.exponents,
        "pi1_rank": r.pi1_rank,
        "four_cycles": r.four_cycles.iter().map(|c| one_based(c)).collect::<Vec<_>>(),
        "pi2_zero": r.pi2_zero,
        "coinvariant_rank": r.coinvariant_rank,
        "kernel_rank_3": r.kernel_rank_3,
        "P": poly(&r.poincare),
        "pi2_presentation": {
            "model": r.pi2.model,
            "generators": r.pi2.n_generators,
            "relations": r.pi2.n_relations,
            "matrix": matrix_json(&r.pi2.presentation.matrix, &r.pi2.presentation.symbols),
        },
    })
}

fn graph(cmd: &GraphCommand, budget: u64) -> anyhow::Result<Value> {
    match cmd {
        GraphCommand::Analyze { file } => {
            let (g, input) = load_graph(file)?;
            let series = hypersolvable_graph_series(&g, budget)?;
            let arr = graphic_arrangement(&g);
            Ok(json!({
                "input": input,
                "chordal": is_chordal(&g),
                "supersolvable_order": supersolvable_series(&g).map(|o| one_based(&o)),
                "hypersolvable": series.is_some(),
                "series": series.as_ref().map(series_json),
                "triangles": g.triangles().iter().map(|t| one_based(t)).collect::<Vec<_>>(),
                "four_cycles": four_cycles(&g).iter().map(|c| one_based(c)).collect::<Vec<_>>(),
                "P": poly(&poincare_from_chromatic(&g)),
                "P_matches_nbc": poincare_from_chromatic(&g) == poincare(&arr)?,
            }))
        }
        GraphCommand::Chromatic { file } => {
            let (g, input) = load_graph(file)?;
            Ok(json!({
                "input": input,
                "chromatic": poly(&chromatic_polynomial(&g)),
                "P": poly(&poincare_from_chromatic(&g)),
            }))
        }
        GraphCommand::Pi2 { file, other: None } => {
            let (g, input) = load_graph(file)?;
            let r = triangle_free_report(&g)?;
            Ok(json!({ "input": input, "pi2": triangle_free_json(&r) }))
        }
        GraphCommand::Pi2 { file, other: Some(second) } => {
            let (g1, in1) = load_graph(file)?;
            let (g2, in2) = load_graph(second)?;
            let c = compare_pi2(&g1, &g2)?;
            Ok(json!({
                "input": [in1, in2],
                "pi2": [triangle_free_json(&c.first), triangle_free_json(&c.second)],
                "same_pi1": c.same_pi1,
                "same_b2": c.same_b2,
                "distinct_two_type": c.distinct_two_type,
            }))
        }
    }
}

fn hattori(n: usize, ell: usize) -> anyhow::Result<Value> {
    if n == 0 {
        bail!("n must be positive");
    }
    let h = hattori_model(n, ell)?;
    let mut out = json!({
        "n": n,
        "l": ell,
        "trivial": h.trivial,
        "vanishing_degrees": h.vanishing,
        "coinvariant_rank": u64::try_from(&h.coinvariant_rank).ok(),
    });
    if let (Some(p), Some(r)) = (&h.presentation, &h.resolution) {
        out["presentation"] = presentation_json(p);
        out["resolution"] = json!({ "ranks": r.ranks, "length": r.length() });
        out["free"] = json!(p.n_relations == 0);
    }
    Ok(out)
}

fn render_text(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) => format!("{pad}{k}:\n{}", render_text(x, indent + 1)),
                _ => format!("{pad}{k}: {}\n", x),
            })
            .collect(),
        other => format!("{pad}{other}\n"),
    }
}
