//! Experiment sweeps: a flat `key=value` plan expands into cells, each cell runs
//! the selected solvers on a seeded instance, and rows come back sorted by cell.
//!
//! Cell `i` draws its instance from `mix(seed, i)`, so a plan and seed fix the
//! table byte for byte (apart from the wall-time column).

use std::time::{Duration, Instant};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::exact::{find_pc_hamilton_exact, ExactOutcome, SearchBudget};
use crate::generators::{gen_complete, gen_dirac, gen_loose_host, Coloring, Removal};
use crate::hypergraph::ColoredKGraph;
use crate::paths::{Certificate, KLCycle};
use crate::pipeline::{find_pc_hamilton_absorbing, parse_variant, PipelineConfig, Variant};
use crate::rng::mix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Exact,
    Absorbing,
}

impl Solver {
    fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Absorbing => "absorbing",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Complete,
    Dirac,
    Loose,
}

/// A sweep over `n x l x coloring x seed`.
#[derive(Clone, Debug, PartialEq)]
pub struct Plan {
    pub ns: Vec<usize>,
    pub k: usize,
    pub ls: Vec<usize>,
    pub colorings: Vec<String>,
    pub preset: Preset,
    pub gamma: f64,
    pub seeds: usize,
    pub seed: u64,
    pub solvers: Vec<Solver>,
    pub variant: Option<Variant>,
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for Plan {
    fn default() -> Self {
        Self {
            ns: Vec::new(),
            k: 3,
            ls: Vec::new(),
            colorings: vec!["rainbow".into()],
            preset: Preset::Complete,
            gamma: 0.05,
            seeds: 1,
            seed: 0,
            solvers: vec![Solver::Exact],
            variant: None,
            max_nodes: 20_000_000,
            time_limit: Duration::from_secs(30),
        }
    }
}

fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| invalid(format!("bad entry '{s}' for '{key}'"))))
        .collect()
}

impl Plan {
    /// Parses `key=value` lines (`#` comments); list values are comma-separated.
    /// Keys: `n`, `k`, `l`, `coloring`, `preset`, `gamma`, `seeds`, `seed`,
    /// `solvers`, `variant`, `max_nodes`, `time_limit_s`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: "expected key=value".into(),
            })?;
            let (key, v) = (key.trim(), v.trim());
            let one = |x: Vec<u64>| x.first().copied().ok_or_else(|| invalid(format!("'{key}' is empty")));
            match key {
                "n" => p.ns = list(key, v)?,
                "k" => p.k = one(list(key, v)?)? as usize,
                "l" => p.ls = list(key, v)?,
                "coloring" => p.colorings = list(key, v)?,
                "preset" => {
                    p.preset = match v {
                        "complete" => Preset::Complete,
                        "dirac" => Preset::Dirac,
                        "loose" => Preset::Loose,
                        _ => return Err(invalid(format!("unknown preset '{v}'"))),
                    }
                }
                "gamma" => p.gamma = v.parse().map_err(|_| invalid("bad gamma"))?,
                "seeds" => p.seeds = one(list(key, v)?)? as usize,
                "seed" => p.seed = one(list(key, v)?)?,
                "solvers" => {
                    p.solvers = list::<String>(key, v)?
                        .iter()
                        .map(|s| match s.as_str() {
                            "exact" => Ok(Solver::Exact),
                            "absorbing" => Ok(Solver::Absorbing),
                            _ => Err(invalid(format!("unknown solver '{s}'"))),
                        })
                        .collect::<Result<_>>()?
                }
                "variant" => p.variant = Some(parse_variant(v)?),
                "max_nodes" => p.max_nodes = one(list(key, v)?)?,
                "time_limit_s" => p.time_limit = Duration::from_secs(one(list(key, v)?)?),
                _ => return Err(invalid(format!("unknown plan key '{key}'"))),
            }
        }
        if p.ls.is_empty() {
            p.ls = vec![p.k.saturating_sub(1)];
        }
        Ok(p)
    }

    /// Cells in sweep order: `(n, l, coloring, seed index)`.
    pub fn cells(&self) -> Vec<(usize, usize, String, usize)> {
        let mut out = Vec::new();
        for &n in &self.ns {
            for &l in &self.ls {
                for c in &self.colorings {
                    for s in 0..self.seeds {
                        out.push((n, l, c.clone(), s));
                    }
                }
            }
        }
        out
    }
}

/// One result row.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub cell: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub coloring: String,
    pub seed: u64,
    pub solver: Solver,
    /// `found`, `none`, `budget`, or `error: ...`.
    pub outcome: String,
    pub certificate: Option<String>,
    pub cert_hash: String,
    pub counters: String,
    /// With both solvers: absorbing found implies exact found.
    pub agreement: Option<bool>,
    pub wall_ms: u128,
}

pub const HEADER: &str = "cell,n,k,l,coloring,seed,solver,outcome,cert_hash,counters,agreement,wall_ms";

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Row {
    pub fn csv(&self, with_wall: bool) -> String {
        let agreement = self.agreement.map_or(String::new(), |b| b.to_string());
        let wall = if with_wall {
            self.wall_ms.to_string()
        } else {
            String::new()
        };
        [
            self.cell.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            self.l.to_string(),
            quote(&self.coloring),
            self.seed.to_string(),
            self.solver.name().into(),
            quote(&self.outcome),
            self.cert_hash.clone(),
            quote(&self.counters),
            agreement,
            wall,
        ]
        .join(",")
    }
}

/// Renders rows under [`HEADER`]; `with_wall = false` blanks the wall-time column.
pub fn to_csv(rows: &[Row], with_wall: bool) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv(with_wall));
        out.push('\n');
    }
    out
}

pub fn cert_hash(cert: &str) -> String {
    hex::encode(Sha256::digest(cert.as_bytes()))
}

fn instance(plan: &Plan, n: usize, coloring: &str, seed: u64) -> Result<ColoredKGraph> {
    let c = Coloring::parse(coloring, plan.k)?;
    match plan.preset {
        Preset::Complete => gen_complete(n, plan.k, &c, seed),
        Preset::Dirac => Ok(gen_dirac(n, plan.k, plan.gamma, Removal::Random, &c, seed)?.h),
        Preset::Loose => Ok(gen_loose_host(n, plan.gamma, &c, seed)?.h),
    }
}

fn cycle_row(base: &Row, c: Option<KLCycle>, outcome: &str, counters: String, wall: u128) -> Row {
    let certificate = c.map(|c| Certificate::Cycle(c).to_string());
    Row {
        outcome: outcome.into(),
        cert_hash: certificate.as_deref().map(cert_hash).unwrap_or_default(),
        certificate,
        counters,
        wall_ms: wall,
        ..base.clone()
    }
}

fn run_cell(plan: &Plan, cell: usize, n: usize, l: usize, coloring: &str) -> Vec<Row> {
    let seed = mix(plan.seed, cell as u64);
    let base = Row {
        cell,
        n,
        k: plan.k,
        l,
        coloring: coloring.into(),
        seed,
        solver: Solver::Exact,
        outcome: String::new(),
        certificate: None,
        cert_hash: String::new(),
        counters: String::new(),
        agreement: None,
        wall_ms: 0,
    };
    let h = match instance(plan, n, coloring, seed) {
        Ok(h) => h,
        Err(e) => {
            return plan
                .solvers
                .iter()
                .map(|&s| Row {
                    solver: s,
                    outcome: format!("error: {e}"),
                    ..base.clone()
                })
                .collect()
        }
    };
    let mut rows = Vec::new();
    for &solver in &plan.solvers {
        let t = Instant::now();
        let base = Row { solver, ..base.clone() };
        let row = match solver {
            Solver::Exact => {
                let budget = SearchBudget::new(plan.max_nodes.max(1), plan.time_limit);
                match budget.and_then(|b| find_pc_hamilton_exact(&h, l, b)) {
                    Ok(ExactOutcome::Found(c)) => {
                        cycle_row(&base, Some(c), "found", String::new(), t.elapsed().as_millis())
                    }
                    Ok(ExactOutcome::None) => cycle_row(&base, None, "none", String::new(), t.elapsed().as_millis()),
                    Ok(ExactOutcome::BudgetExhausted) => {
                        cycle_row(&base, None, "budget", String::new(), t.elapsed().as_millis())
                    }
                    Err(e) => cycle_row(
                        &base,
                        None,
                        &format!("error: {e}"),
                        String::new(),
                        t.elapsed().as_millis(),
                    ),
                }
            }
            Solver::Absorbing => {
                let cfg = PipelineConfig {
                    seed,
                    variant: plan.variant,
                    ..Default::default()
                };
                match find_pc_hamilton_absorbing(&h, l, &cfg) {
                    Ok(run) => {
                        let mut counters: Vec<String> = run
                            .reports
                            .iter()
                            .filter(|r| r.ok)
                            .flat_map(|r| r.counters.iter().map(|(k, v)| format!("{k}={v}")))
                            .collect();
                        if let Some(f) = &run.failure {
                            counters.push(format!("failure={f}"));
                        }
                        let counters = counters.join(";");
                        let outcome = if run.cycle.is_some() { "found" } else { "none" };
                        cycle_row(&base, run.cycle, outcome, counters, t.elapsed().as_millis())
                    }
                    Err(e) => cycle_row(
                        &base,
                        None,
                        &format!("error: {e}"),
                        String::new(),
                        t.elapsed().as_millis(),
                    ),
                }
            }
        };
        rows.push(row);
    }
    if rows.len() == 2 {
        let found = |s: Solver| rows.iter().any(|r| r.solver == s && r.outcome == "found");
        let agree = !found(Solver::Absorbing) || found(Solver::Exact);
        for r in &mut rows {
            r.agreement = Some(agree);
        }
    }
    rows
}

/// Runs every cell of `plan` on up to `workers` threads; rows are sorted by cell.
pub fn run_experiment(plan: &Plan, workers: usize) -> Result<Vec<Row>> {
    let cells = plan.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let mut rows: Vec<Row> = pool.install(|| {
        cells
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, (n, l, c, _))| run_cell(plan, i, *n, *l, c))
            .collect()
    });
    rows.sort_by_key(|r| r.cell);
    Ok(rows)
}
