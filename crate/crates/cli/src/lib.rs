//! Command-line front end for `poset-radius-core`: argument definitions,
//! input files and report printing. `main.rs` only parses and exits.

pub mod formats;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use poset_radius_core::codes::DEFAULT_ENUMERATION_CAP;
use poset_radius_core::oracle::{
    ball_radius_oracle, maxweight_oracle, partition_oracle, restricted_maxweight_oracle,
    OracleError, OracleReport,
};
use poset_radius_core::partition::{brute_partition, ckk, kk_ldm, CkkOptions, PartitionResult};
use poset_radius_core::poset_partition::{
    DiscordancySearch, PartitionOutcome, SearchOptions, TraceEvent,
};
use poset_radius_core::radius::{
    radius_of_code_batched, radius_of_poset_with, radius_of_vector_with, CodeRadiusOptions,
    PosetRadius, Verdict,
};
use poset_radius_core::{ElementSet, FieldVector, Limits, LinearCode, Poset, Strategy};
use serde_json::{json, Value};

/// Exit status of a finished run.
pub const EXIT_OPTIMAL: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

/// Codewords evaluated per batch in code-radius. Fixed so that node counts
/// do not depend on `--threads`.
const CODE_BATCH: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "poset-radius", version, about = "Packing radius under poset metrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two-way number partitioning of a list file.
    Partition { list: PathBuf },
    /// Packing radius R(P) of a poset.
    PosetRadius {
        poset: PathBuf,
        /// Print the search tree to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Packing radius of one vector.
    VectorRadius {
        poset: PathBuf,
        vector: String,
        #[arg(short, long, default_value_t = 2)]
        q: u32,
    },
    /// Packing radius and minimum distance of a linear code.
    CodeRadius { poset: PathBuf, code: PathBuf },
    /// Standard form of a poset, as a matrix file.
    StandardForm { poset: PathBuf },
    /// Compare the engine against brute-force oracles.
    Check {
        poset: PathBuf,
        #[arg(long)]
        vector: Option<String>,
        #[arg(short, long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        code: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Auto,
    Brute,
    Kk,
    Ckk,
    Differencing,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Algorithm::Auto)]
    pub algorithm: Algorithm,
    /// Stop after this many search nodes.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: Option<u64>,
    /// Stop after this many milliseconds.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_ms: Option<u64>,
    #[arg(long, global = true)]
    pub json: bool,
    /// Print every improving solution as a JSON line.
    #[arg(long, global = true)]
    pub anytime: bool,
    /// Worker threads for code-radius.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Largest number of codewords to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
    /// Disable every pruning rule below.
    #[arg(long, global = true)]
    pub no_prune: bool,
    /// Search: lower-bound pruning.
    #[arg(long, global = true)]
    pub no_prune_bound: bool,
    /// Search: stop at the parity floor.
    #[arg(long, global = true)]
    pub no_prune_floor: bool,
    /// Search: absorb i-rows into the counter.
    #[arg(long, global = true)]
    pub no_prune_compact: bool,
    /// Partition: dominant-element and small-instance rules.
    #[arg(long, global = true)]
    pub no_prune_rules: bool,
    #[arg(long, global = true)]
    pub no_prune_same_support: bool,
    #[arg(long, global = true)]
    pub no_prune_same_ideal: bool,
    #[arg(long, global = true)]
    pub no_prune_ideal_containment: bool,
    #[arg(long, global = true)]
    pub no_prune_size_bound: bool,
    #[arg(long, global = true)]
    pub no_prune_hierarchical: bool,
}

impl RunConfig {
    fn search_options(&self) -> SearchOptions {
        let off = self.no_prune;
        SearchOptions {
            compact: !(off || self.no_prune_compact),
            prune_bound: !(off || self.no_prune_bound),
            floor_exit: !(off || self.no_prune_floor),
        }
    }

    fn ckk_options(&self) -> CkkOptions {
        CkkOptions {
            prune_rules: !(self.no_prune || self.no_prune_rules),
            perfect_exit: !self.no_prune,
        }
    }

    fn code_options(&self, strategy: Strategy) -> CodeRadiusOptions {
        let off = self.no_prune;
        CodeRadiusOptions {
            support_dedup: !(off || self.no_prune_same_support),
            ideal_dedup: !(off || self.no_prune_same_ideal),
            ideal_containment: !(off || self.no_prune_ideal_containment),
            size_bound: !(off || self.no_prune_size_bound),
            hierarchical_shortcut: !(off || self.no_prune_hierarchical),
            strategy,
            cap: self.cap,
        }
    }

    fn radius_strategy(&self) -> Result<Strategy> {
        Ok(match self.algorithm {
            Algorithm::Auto => Strategy::Auto,
            Algorithm::Brute => Strategy::Brute,
            Algorithm::Differencing => Strategy::Differencing,
            other => bail!("algorithm {other:?} only applies to the partition command"),
        })
    }

    fn structured(&self) -> bool {
        self.json || self.anytime
    }
}

/// Node and time limits shared by one run.
#[derive(Debug, Clone, Copy)]
struct Budget {
    nodes: Option<u64>,
    deadline: Option<Instant>,
}

impl Budget {
    fn new(cfg: &RunConfig, start: Instant) -> Self {
        Budget {
            nodes: cfg.budget_nodes,
            deadline: cfg.budget_ms.map(|ms| start + Duration::from_millis(ms)),
        }
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    /// Runs `f` with the matching core limits.
    fn with<T>(&self, f: impl FnOnce(&Limits<'_>) -> T) -> T {
        let stop = || self.expired();
        let limits = Limits {
            max_nodes: self.nodes,
            interrupt: self.deadline.map(|_| &stop as &dyn Fn() -> bool),
        };
        f(&limits)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_poset(path: &Path) -> Result<Poset> {
    formats::parse_poset(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_code(path: &Path) -> Result<LinearCode> {
    formats::parse_code(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn positions(block: &[usize]) -> Vec<usize> {
    block.iter().map(|i| i + 1).collect()
}

fn status(optimal: bool) -> i32 {
    if optimal {
        EXIT_OPTIMAL
    } else {
        EXIT_BUDGET
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{v}")?;
    Ok(())
}

fn labels(s: &ElementSet) -> Vec<usize> {
    s.labels()
}

fn outcome_json(command: &str, o: &PartitionOutcome, strategy: &str, start: Instant) -> Value {
    json!({
        "command": command,
        "radius": o.radius,
        "lambda_star": o.discordancy,
        "partition": {"primary": labels(&o.primary), "secondary": labels(&o.secondary)},
        "optimal": o.optimal,
        "nodes": o.nodes,
        "elapsed_ms": elapsed_ms(start),
        "strategy": strategy,
    })
}

/// Runs one parsed command line, writing the report to `out`. Returns the
/// exit status; input problems come back as errors.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = &cli.config;
    let start = Instant::now();
    let budget = Budget::new(cfg, start);
    match &cli.command {
        Command::Partition { list } => {
            let values = formats::parse_list(&read(list)?).with_context(|| format!("in {}", list.display()))?;
            partition(cfg, &values, budget, start, out)
        }
        Command::PosetRadius { poset, trace } => {
            let p = read_poset(poset)?;
            poset_radius(cfg, &p, *trace, budget, start, out)
        }
        Command::VectorRadius { poset, vector, q } => {
            let p = read_poset(poset)?;
            let v = formats::parse_vector(*q, vector)?;
            vector_radius(cfg, &p, &v, budget, start, out)
        }
        Command::CodeRadius { poset, code } => {
            let p = read_poset(poset)?;
            let c = read_code(code)?;
            code_radius(cfg, &p, &c, budget, start, out)
        }
        Command::StandardForm { poset } => {
            let s = read_poset(poset)?.standard_form();
            if cfg.json {
                emit(out, &json!({"command": "standard-form", "matrix": s.adjacency_matrix()
                    .iter()
                    .map(|r| r.iter().map(|&b| u8::from(b)).collect::<Vec<_>>())
                    .collect::<Vec<_>>()}))?;
            } else {
                write!(out, "{}", formats::write_poset(&s))?;
            }
            Ok(EXIT_OPTIMAL)
        }
        Command::Check { poset, vector, q, code } => {
            let p = read_poset(poset)?;
            let v = vector.as_deref().map(|s| formats::parse_vector(*q, s)).transpose()?;
            let c = code.as_deref().map(read_code).transpose()?;
            check(cfg, &p, v.as_ref(), c.as_ref(), out)
        }
    }
}

fn partition_json(r: &PartitionResult, algorithm: &str, start: Instant) -> Value {
    json!({
        "command": "partition",
        "delta_star": r.discrepancy,
        "discrepancy": r.discrepancy,
        "block1": positions(&r.block1),
        "block2": positions(&r.block2),
        "partition": {"primary": positions(&r.block1), "secondary": positions(&r.block2)},
        "optimal": r.optimal,
        "nodes": r.nodes,
        "elapsed_ms": elapsed_ms(start),
        "strategy": algorithm,
    })
}

fn partition(cfg: &RunConfig, values: &[u64], budget: Budget, start: Instant, out: &mut dyn Write) -> Result<i32> {
    let (r, name) = match cfg.algorithm {
        Algorithm::Kk => (kk_ldm(values)?.result, "kk"),
        Algorithm::Brute => (brute_partition(values)?, "brute"),
        Algorithm::Auto | Algorithm::Ckk => {
            let mut improve = |r: &PartitionResult| {
                let mut v = partition_json(r, "ckk", start);
                v["event"] = json!("improve");
                let _ = emit(out, &v).and_then(|_| Ok(out.flush()?));
            };
            let hook: Option<&mut dyn FnMut(&PartitionResult)> = if cfg.anytime { Some(&mut improve) } else { None };
            let r = budget.with(|limits| ckk(values, cfg.ckk_options(), limits, hook))?;
            (r, "ckk")
        }
        Algorithm::Differencing => bail!("partition takes --algorithm kk, ckk or brute"),
    };
    if cfg.structured() {
        emit(out, &partition_json(&r, name, start))?;
    } else {
        writeln!(out, "discrepancy: {}", r.discrepancy)?;
        writeln!(out, "block1: {:?}", positions(&r.block1))?;
        writeln!(out, "block2: {:?}", positions(&r.block2))?;
        writeln!(out, "optimal: {}", r.optimal)?;
        writeln!(out, "nodes: {}", r.nodes)?;
        writeln!(out, "algorithm: {name}")?;
    }
    // the heuristic always runs to completion
    Ok(status(r.optimal || cfg.algorithm == Algorithm::Kk))
}

/// Radius of `p` under the configured strategy, streaming improvements
/// and the trace as requested.
#[allow(clippy::too_many_arguments)]
fn solve_poset(
    cfg: &RunConfig,
    p: &Poset,
    trace: bool,
    budget: Budget,
    command: &str,
    start: Instant,
    lift: &dyn Fn(&ElementSet) -> ElementSet,
    out: &mut dyn Write,
) -> Result<PosetRadius> {
    let strategy = cfg.radius_strategy()?;
    let mut improve = |o: &PartitionOutcome| {
        let mut o = o.clone();
        o.primary = lift(&o.primary);
        o.secondary = lift(&o.secondary);
        let mut v = outcome_json(command, &o, "differencing", start);
        v["event"] = json!("improve");
        let _ = emit(out, &v).and_then(|_| Ok(out.flush()?));
    };
    let mut dump = |e: &TraceEvent<'_>| {
        let mut line = format!("{}{}", "  ".repeat(e.depth), e.node.dump_line(e.op));
        if e.pruned {
            line.push_str(" pruned");
        }
        if let Some(t) = e.terminal {
            line.push_str(&format!(" Λ={t}"));
        }
        eprintln!("{line}");
    };
    let r = budget.with(|limits| {
        let mut search = DiscordancySearch::new().options(cfg.search_options()).limits(*limits);
        if cfg.anytime {
            search = search.on_improve(&mut improve);
        }
        if trace {
            search = search.trace(&mut dump);
        }
        radius_of_poset_with(p, strategy, search, limits)
    })?;
    Ok(r)
}

fn print_radius(cfg: &RunConfig, command: &str, p: &Poset, r: &PosetRadius, start: Instant, extra: Value, out: &mut dyn Write) -> Result<()> {
    let o = &r.outcome;
    if cfg.structured() {
        let mut v = outcome_json(command, o, r.method.name(), start);
        if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
            map.extend(more);
        }
        return emit(out, &v);
    }
    writeln!(out, "radius: {}", o.radius)?;
    writeln!(out, "lambda_star: {}", o.discordancy)?;
    writeln!(out, "primary: {:?}", labels(&o.primary))?;
    writeln!(out, "secondary: {:?}", labels(&o.secondary))?;
    if let Value::Object(more) = extra {
        for (k, v) in more {
            writeln!(out, "{k}: {v}")?;
        }
    }
    let c = p.classify();
    let class = match (c.is_chain, c.is_antichain, c.is_hierarchical, c.has_disjoint_maximal_ideals) {
        (true, ..) => "chain",
        (_, true, ..) => "anti-chain",
        (_, _, true, _) => "hierarchical",
        (.., true) => "disjoint maximal ideals",
        _ => "general",
    };
    writeln!(out, "classification: {class}")?;
    writeln!(out, "strategy: {}", r.method.name())?;
    writeln!(out, "optimal: {}", o.optimal)?;
    writeln!(out, "nodes: {}", o.nodes)?;
    Ok(())
}

fn poset_radius(cfg: &RunConfig, p: &Poset, trace: bool, budget: Budget, start: Instant, out: &mut dyn Write) -> Result<i32> {
    let r = solve_poset(cfg, p, trace, budget, "poset-radius", start, &|s| s.clone(), out)?;
    print_radius(cfg, "poset-radius", p, &r, start, json!({"n": p.size()}), out)?;
    Ok(status(r.outcome.optimal))
}

fn vector_radius(cfg: &RunConfig, p: &Poset, v: &FieldVector, budget: Budget, start: Instant, out: &mut dyn Write) -> Result<i32> {
    let strategy = cfg.radius_strategy()?;
    let r = budget.with(|limits| {
        let search = DiscordancySearch::new().options(cfg.search_options()).limits(*limits);
        radius_of_vector_with(p, v, strategy, search, limits)
    })?;
    print_radius(cfg, "vector-radius", p, &r, start, json!({"vector": v.to_string()}), out)?;
    Ok(status(r.outcome.optimal))
}

fn code_radius(cfg: &RunConfig, p: &Poset, code: &LinearCode, budget: Budget, start: Instant, out: &mut dyn Write) -> Result<i32> {
    let strategy = cfg.radius_strategy()?;
    let opts = cfg.code_options(strategy);
    let search = cfg.search_options();
    let threads = cfg.threads as usize;
    let mut nodes = 0u64;
    let mut optimal = true;
    let mut eval = |posets: &[Poset]| -> Vec<PosetRadius> {
        let solve = |q: &Poset| {
            budget.with(|limits| {
                let s = DiscordancySearch::new().options(search).limits(*limits);
                radius_of_poset_with(q, strategy, s, limits).expect("induced posets are nonempty")
            })
        };
        let results: Vec<PosetRadius> = if threads <= 1 || posets.len() <= 1 {
            posets.iter().map(solve).collect()
        } else {
            let chunk = posets.len().div_ceil(threads);
            std::thread::scope(|scope| {
                let handles: Vec<_> = posets
                    .chunks(chunk)
                    .map(|part| scope.spawn(move || part.iter().map(solve).collect::<Vec<_>>()))
                    .collect();
                handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
            })
        };
        for r in &results {
            nodes += r.outcome.nodes;
            optimal &= r.outcome.optimal;
        }
        results
    };
    let res = radius_of_code_batched(p, code, &opts, CODE_BATCH, &mut eval)?;
    // Λ of the packing vector from R = (|⟨supp v⟩| + Λ)/2 − 1
    let ideal = p.weight(&res.packing_vector.support());
    let lambda = 2 * (res.radius + 1) - ideal;
    let table: Vec<Value> = res
        .stats
        .iter()
        .map(|s| {
            let (verdict, radius) = match s.verdict {
                Verdict::Evaluated { radius, method } => (method.name(), Some(radius)),
                Verdict::Skipped(reason) => (reason.name(), None),
            };
            json!({
                "codeword": s.codeword.to_string(),
                "support": labels(&s.support),
                "ideal_size": s.ideal_size,
                "verdict": verdict,
                "radius": radius,
            })
        })
        .collect();
    let pr = res.pruned;
    let pruned = json!({
        "same-support": pr.same_support,
        "same-ideal": pr.same_ideal,
        "ideal-containment": pr.ideal_containment,
        "size-bound": pr.size_bound,
        "hierarchical": pr.hierarchical,
        "total": pr.total(),
    });
    if cfg.structured() {
        emit(out, &json!({
            "command": "code-radius",
            "radius": res.radius,
            "lambda_star": lambda,
            "minimum_distance": res.minimum_distance,
            "packing_vector": res.packing_vector.to_string(),
            "optimal": optimal,
            "nodes": nodes,
            "elapsed_ms": elapsed_ms(start),
            "strategy": match strategy {
                Strategy::Auto => "auto",
                Strategy::Brute => "brute",
                Strategy::Differencing => "differencing",
            },
            "pruned": pruned,
            "codewords": table,
        }))?;
    } else {
        writeln!(out, "minimum distance: {}", res.minimum_distance)?;
        writeln!(out, "packing radius: {}", res.radius)?;
        writeln!(out, "packing vector: {}", res.packing_vector)?;
        writeln!(out, "lambda_star: {lambda}")?;
        writeln!(out, "{:<20} {:>6} {:<18} {:>6}", "codeword", "ideal", "verdict", "radius")?;
        for row in &table {
            let radius = row["radius"].as_u64().map_or("-".to_string(), |r| r.to_string());
            writeln!(
                out,
                "{:<20} {:>6} {:<18} {:>6}",
                row["codeword"].as_str().unwrap_or(""),
                row["ideal_size"],
                row["verdict"].as_str().unwrap_or(""),
                radius
            )?;
        }
        writeln!(out, "pruned: {pruned}")?;
        writeln!(out, "optimal: {optimal}")?;
        writeln!(out, "nodes: {nodes}")?;
    }
    Ok(status(optimal))
}

fn report(cfg: &RunConfig, r: &OracleReport, out: &mut dyn Write) -> Result<()> {
    if cfg.json {
        emit(out, &json!({
            "quantity": r.quantity,
            "instance": r.instance,
            "oracle": r.oracle,
            "engine": r.engine,
            "agree": r.agree,
        }))
    } else {
        let verdict = if r.agree { "PASS" } else { "FAIL" };
        writeln!(out, "{verdict} {} [{}]: oracle {} engine {}", r.quantity, r.instance, r.oracle, r.engine)?;
        Ok(())
    }
}

fn check(cfg: &RunConfig, p: &Poset, v: Option<&FieldVector>, code: Option<&LinearCode>, out: &mut dyn Write) -> Result<i32> {
    let mut reports = Vec::new();
    let instance = format!("n={}", p.size());
    match partition_oracle(p) {
        Ok(brute) => {
            for (name, strategy) in [("auto", Strategy::Auto), ("differencing", Strategy::Differencing)] {
                let search = DiscordancySearch::new().options(cfg.search_options());
                let r = radius_of_poset_with(p, strategy, search, &Limits::unlimited())?;
                reports.push(OracleReport::new(format!("poset radius ({name})"), &instance, brute.radius, r.radius()));
            }
        }
        Err(OracleError::TooManyMaximal { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    if let Some(v) = v {
        let engine = radius_of_vector_with(p, v, Strategy::Auto, DiscordancySearch::new(), &Limits::unlimited())?.radius();
        let inst = format!("{instance} v={v}");
        reports.push(OracleReport::new("vector radius (balls)", &inst, ball_radius_oracle(p, v)?, engine));
        reports.push(OracleReport::new("vector radius (max-weight)", &inst, maxweight_oracle(p, v)?.0, engine));
        reports.push(OracleReport::new("vector radius (support split)", &inst, restricted_maxweight_oracle(p, v)?, engine));
    }
    if let Some(c) = code {
        let opts = cfg.code_options(Strategy::Auto);
        let mut eval = |ps: &[Poset]| {
            ps.iter()
                .map(|q| radius_of_poset_with(q, Strategy::Auto, DiscordancySearch::new(), &Limits::unlimited()).expect("nonempty"))
                .collect()
        };
        let engine = radius_of_code_batched(p, c, &opts, 1, &mut eval)?;
        let mut oracle = usize::MAX;
        for w in c.codewords(cfg.cap)?.filter(|w| !w.is_zero()) {
            oracle = oracle.min(ball_radius_oracle(p, &w)?);
        }
        let inst = format!("{instance} q={} k={}", c.modulus(), c.dimension());
        reports.push(OracleReport::new("code radius", &inst, oracle, engine.radius));
    }
    if reports.is_empty() {
        bail!("nothing to check: poset too large for the oracles and no vector or code given");
    }
    let mut agree = true;
    for r in &reports {
        agree &= r.agree;
        report(cfg, r, out)?;
    }
    Ok(if agree { EXIT_OPTIMAL } else { EXIT_INPUT })
}
