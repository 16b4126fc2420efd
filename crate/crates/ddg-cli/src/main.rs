//! `ddg`: the command-line front door of the divisible design graph toolkit.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ddg_core::catalog::{
    catalog_csv, catalog_md, run_catalog_with_store, verify_graphs, write_tuple_files,
};
use ddg_core::constructions::{construct_all, ConstructionId, IngredientStore, Opts};
use ddg_core::enumerate::{enumerate_tuple, SearchConfig};
use ddg_core::params::{feasible_parameters, ParamSet};
use ddg_core::quotient::enumerate_quotients;
use std::path::PathBuf;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "ddg", about = "Classification toolkit for proper divisible design graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Node budget for each completion search
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Wall-clock budget per completion search, in seconds
    #[arg(long)]
    budget_seconds: Option<u64>,
    /// Also run the characterized parameter families
    #[arg(long)]
    include_characterized: bool,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            jobs: self.jobs,
            node_budget: self.budget_nodes,
            time_budget: self.budget_seconds.map(Duration::from_secs),
            include_characterized: self.include_characterized,
            ..SearchConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List feasible parameter tuples with admissible multiplicities
    Params {
        /// Vertex count
        #[arg(long)]
        v: u32,
        /// Emit CSV instead of a readable listing
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        include_characterized: bool,
    },
    /// Enumerate quotient matrices of a parameter tuple
    Quotients {
        /// Tuple v,k,l1,l2,m,n
        #[arg(long)]
        params: String,
        /// Emit JSON rows instead of aligned grids
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively enumerate the DDGs of one tuple or of a vertex count
    Enumerate {
        /// Vertex count (all non-characterized tuples)
        #[arg(long)]
        v: Option<u32>,
        /// A single tuple v,k,l1,l2,m,n
        #[arg(long)]
        params: Option<String>,
        /// Output directory for .g6/.cls/catalog.csv
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run a construction on named ingredients
    Construct {
        /// Construction id: c1..c23 or r1
        id: String,
        /// Ingredient names (repeatable)
        #[arg(long = "ingredient")]
        ingredients: Vec<String>,
        /// key=value options (repeatable)
        #[arg(long = "opt")]
        opts: Vec<String>,
        /// Data directory with the bundled search results
        #[arg(long, default_value = "data")]
        data: PathBuf,
        /// Emit every variant, not just the first
        #[arg(long)]
        all: bool,
        /// Output directory for .g6/.cls/.json
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify graphs in a graph6 file against parameters
    Verify {
        /// graph6 file, one graph per line
        file: PathBuf,
        /// Tuple v,k,l1,l2,m,n; inferred per graph when omitted
        #[arg(long)]
        params: Option<String>,
        /// Partition sidecar (.cls); inferred from params when omitted
        #[arg(long)]
        cls: Option<PathBuf>,
    },
    /// Reproduce the classification catalog up to a vertex count
    Catalog {
        #[arg(long)]
        v_max: u32,
        /// Output directory; catalog.csv, catalog.md and per-tuple files
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format for stdout
        #[arg(long, default_value = "csv")]
        format: String,
        /// Include wall-clock timings in the CSV (breaks byte determinism)
        #[arg(long)]
        timings: bool,
        /// Data directory with the bundled search results
        #[arg(long, default_value = "data")]
        data: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Params { v, format, include_characterized } => {
            params_cmd(v, format.as_deref(), include_characterized)
        }
        Command::Quotients { params, json } => quotients_cmd(&params, json),
        Command::Enumerate { v, params, out, search } => {
            enumerate_cmd(v, params.as_deref(), out, &search)
        }
        Command::Construct { id, ingredients, opts, data, all, out } => {
            construct_cmd(&id, &ingredients, &opts, data, all, out)
        }
        Command::Verify { file, params, cls } => verify_cmd(&file, params.as_deref(), cls),
        Command::Catalog { v_max, out, format, timings, data, search } => {
            catalog_cmd(v_max, out, &format, timings, data, &search)
        }
    }
}

fn parse_params(spec: &str) -> Result<ParamSet> {
    let nums: Vec<u32> = spec
        .split(',')
        .map(|s| s.trim().parse().context("parameters must be six integers"))
        .collect::<Result<_>>()?;
    if nums.len() != 6 {
        bail!("expected v,k,l1,l2,m,n");
    }
    Ok(ParamSet::new(nums[0], nums[1], nums[2], nums[3], nums[4], nums[5]))
}

fn params_cmd(v: u32, format: Option<&str>, include_characterized: bool) -> Result<()> {
    let tuples = feasible_parameters(v);
    if format == Some("csv") {
        println!("v,k,l1,l2,m,n,f1,f2,g1,g2,flags");
        for t in &tuples {
            if !include_characterized && t.families.any() {
                continue;
            }
            for pr in &t.profiles {
                let p = t.params;
                let mut flags = Vec::new();
                let fam = t.families;
                for (on, name) in [
                    (fam.incidence, "incidence"),
                    (fam.tensor, "tensor"),
                    (fam.diag_blowup, "diag-blowup"),
                    (fam.near_complete_classes, "near-complete"),
                ] {
                    if on {
                        flags.push(name);
                    }
                }
                println!(
                    "{},{},{},{},{},{},{},{},{},{},\"{}\"",
                    p.v,
                    p.k,
                    p.lambda1,
                    p.lambda2,
                    p.m,
                    p.n,
                    pr.f1,
                    pr.f2,
                    pr.g1,
                    pr.g2,
                    flags.join(" ")
                );
            }
        }
        return Ok(());
    }
    for t in &tuples {
        if !include_characterized && t.families.any() {
            continue;
        }
        println!("{:?}  profiles: {}", t.params, t.profiles.len());
        for pr in &t.profiles {
            println!("  f = ({}, {}), g = ({}, {})", pr.f1, pr.f2, pr.g1, pr.g2);
        }
    }
    Ok(())
}

fn quotients_cmd(spec: &str, json: bool) -> Result<()> {
    let p = parse_params(spec)?;
    let profiles = ddg_core::params::multiplicity_options(&p);
    let quotients = enumerate_quotients(&p, &profiles);
    if json {
        let rows: Vec<Vec<Vec<u16>>> = quotients.iter().map(|q| q.rows()).collect();
        println!("{}", serde_json::to_string_pretty(&rows)?);
        return Ok(());
    }
    println!("{} quotient matrices for {:?}", quotients.len(), p);
    for (i, q) in quotients.iter().enumerate() {
        println!("# {i} (trace {})", q.trace());
        for r in 0..q.size() {
            let row: Vec<String> = (0..q.size()).map(|c| format!("{:2}", q.get(r, c))).collect();
            println!("  {}", row.join(" "));
        }
    }
    Ok(())
}

fn enumerate_cmd(
    v: Option<u32>,
    params: Option<&str>,
    out: Option<PathBuf>,
    search: &SearchArgs,
) -> Result<()> {
    let cfg = search.config();
    let tuples = match (v, params) {
        (Some(v), None) => feasible_parameters(v)
            .into_iter()
            .filter(|t| cfg.include_characterized || !t.families.any())
            .collect(),
        (None, Some(spec)) => {
            let p = parse_params(spec)?;
            let all = feasible_parameters(p.v);
            vec![all
                .into_iter()
                .find(|t| t.params == p)
                .context("tuple fails the feasibility screen")?]
        }
        _ => bail!("pass exactly one of --v or --params"),
    };
    if let Some(dir) = &out {
        std::fs::create_dir_all(dir)?;
    }
    let mut csv = String::from("tuple,g1,g2,count,walk_regular,seconds,nodes\n");
    let mut incomplete = 0;
    for tuple in &tuples {
        let outcome = enumerate_tuple(tuple, &cfg);
        if !outcome.complete {
            incomplete += 1;
        }
        println!(
            "{:?}: {} quotient(s), {} graph(s), {} nodes{}",
            tuple.params,
            outcome.quotients.len(),
            outcome.graphs.len(),
            outcome.stats.nodes,
            if outcome.complete { "" } else { " [incomplete]" },
        );
        let mut by_split: std::collections::BTreeMap<(u32, u32), (usize, bool)> =
            Default::default();
        for g in &outcome.graphs {
            let e = by_split.entry(g.g_split).or_insert((0, g.walk_regular));
            e.0 += 1;
        }
        for (split, (count, wr)) in by_split.iter().rev() {
            println!("  g = {split:?}: {count} graph(s), WR {}", if *wr { "+" } else { "-" });
            use std::fmt::Write as _;
            writeln!(
                csv,
                "\"{}\",{},{},{},{},{:.3},{}",
                tuple.params,
                split.0,
                split.1,
                count,
                if *wr { "+" } else { "-" },
                0.0,
                outcome.stats.nodes
            )
            .unwrap();
        }
        if let Some(dir) = &out {
            write_tuple_files(dir, &tuple.params, &outcome.graphs)?;
        }
    }
    if let Some(dir) = &out {
        std::fs::write(dir.join("catalog.csv"), csv)?;
    }
    if incomplete > 0 {
        bail!("{incomplete} tuple(s) hit a resource budget before completing");
    }
    Ok(())
}

fn construct_cmd(
    id: &str,
    ingredient_names: &[String],
    opt_pairs: &[String],
    data: PathBuf,
    all: bool,
    out: Option<PathBuf>,
) -> Result<()> {
    let id: ConstructionId = id.parse()?;
    let store = if data.exists() {
        IngredientStore::with_data_dir(&data)
    } else {
        IngredientStore::builtin()
    };
    let ingredients = ingredient_names
        .iter()
        .map(|n| store.get(n))
        .collect::<Result<Vec<_>, _>>()?;
    let opts = Opts::parse_pairs(opt_pairs)?;
    let mut builds = construct_all(id, &ingredients, &opts)?;
    if !all {
        builds.truncate(1);
    }
    for (i, b) in builds.iter().enumerate() {
        let g6 = String::from_utf8(ddg_core::graph6::encode(&b.graph)).unwrap();
        println!("variant {i} ({}): {:?}", b.variant, b.params);
        println!("  g6: {g6}");
        println!("  classes: {}", ddg_core::graph6::encode_classes(&b.part));
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(&dir)?;
        let stem = format!("{id}");
        let graphs: Vec<_> = builds.iter().map(|b| b.graph.clone()).collect();
        let parts: Vec<_> = builds.iter().map(|b| b.part.clone()).collect();
        std::fs::write(dir.join(format!("{stem}.g6")), ddg_core::graph6::encode_file(&graphs))?;
        std::fs::write(
            dir.join(format!("{stem}.cls")),
            ddg_core::graph6::encode_classes_file(&parts),
        )?;
        let infos: Vec<serde_json::Value> = builds
            .iter()
            .map(|b| {
                serde_json::json!({
                    "variant": b.variant,
                    "params": b.params,
                })
            })
            .collect();
        std::fs::write(dir.join(format!("{stem}.json")), serde_json::to_string_pretty(&infos)?)?;
    }
    Ok(())
}

fn verify_cmd(file: &PathBuf, params: Option<&str>, cls: Option<PathBuf>) -> Result<()> {
    let text = std::fs::read_to_string(file)?;
    let graphs = ddg_core::graph6::decode_file(&text)
        .map_err(|(line, e)| anyhow::anyhow!("{}:{line}: {e}", file.display()))?;
    let parts = match cls {
        Some(path) => {
            let text = std::fs::read_to_string(&path)?;
            Some(ddg_core::graph6::decode_classes_file(&text)?)
        }
        None => None,
    };
    let params = params.map(parse_params).transpose()?;
    let reports = verify_graphs(&graphs, parts.as_deref(), params);
    let mut bad = 0;
    for r in &reports {
        if r.is_ddg {
            println!(
                "graph {}: DDG {:?}, g = {:?}, f = {:?}, WR {}",
                r.index,
                r.params.unwrap(),
                r.g_split.unwrap_or((0, 0)),
                r.f_split.unwrap_or((0, 0)),
                match r.walk_regular {
                    Some(true) => "+",
                    Some(false) => "-",
                    None => "?",
                }
            );
        } else {
            bad += 1;
            println!("graph {}: NOT a DDG ({})", r.index, r.detail);
        }
    }
    if bad > 0 {
        bail!("{bad} graph(s) failed verification");
    }
    Ok(())
}

fn catalog_cmd(
    v_max: u32,
    out: Option<PathBuf>,
    format: &str,
    timings: bool,
    data: PathBuf,
    search: &SearchArgs,
) -> Result<()> {
    let cfg = search.config();
    let store = if data.exists() { Some(IngredientStore::with_data_dir(&data)) } else { None };
    let catalog = run_catalog_with_store(v_max, &cfg, store.as_ref());
    let csv = catalog_csv(&catalog, timings);
    let md = catalog_md(&catalog);
    match format {
        "md" => print!("{md}"),
        _ => print!("{csv}"),
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(&dir)?;
        std::fs::write(dir.join("catalog.csv"), &csv)?;
        std::fs::write(dir.join("catalog.md"), &md)?;
        for (entry, graphs) in catalog.entries.iter().zip(&catalog.graphs) {
            if !graphs.is_empty() {
                assert!(ddg_core::catalog::verify_roundtrip(graphs));
                write_tuple_files(&dir, &entry.params, graphs)?;
            }
        }
    }
    if !catalog.failures.is_empty() {
        for (p, why) in &catalog.failures {
            eprintln!("incomplete: {p:?}: {why}");
        }
        bail!("{} tuple(s) incomplete", catalog.failures.len());
    }
    Ok(())
}
