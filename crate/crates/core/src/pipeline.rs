//! End-to-end absorbing solver: absorbing path, reservoir, cover, connect into a
//! cycle, absorb the leftover.
//!
//! The asymptotic constants of the existence proofs do not fit desk-sized hosts,
//! so the absorber count and the admissible reservoir sizes come from a size
//! planner. It models the ideal run (one cover path, shortest connectors) and
//! keeps only reservoir sizes whose leftover the absorbers can take.

use std::collections::{BTreeMap, HashSet};

use rand::seq::IndexedRandom;

use crate::absorbers::{absorber_on, build_absorbable_graph, enumerate_absorbers, Absorber, AbsorberTarget};
use crate::connecting::{connect_many, Connector};
use crate::covering::{greedy_path_cover, perfect_matching, DEFAULT_MIN_EDGES};
use crate::error::{invalid, Error, Result};
use crate::graph::SimpleGraph;
use crate::hypergraph::{subsets, ColoredKGraph};
use crate::paths::{edges_properly_colored, is_hamilton, KLCycle, KLPath};
pub use crate::reservoir::Variant;
use crate::reservoir::{sample_absorber_family, sample_reservoir, FamilySpec, ReservoirSpec, TupleFamily};
use crate::rng::{mix, seeded};

/// Solver parameters. Fractions are of `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    /// Required for k = 3, l = 1, where both the set and the loose route apply.
    pub variant: Option<Variant>,
    /// Cap on `|V(A)| / n`.
    pub lambda: f64,
    /// Reservoir inclusion probability; `None` lets the size planner choose.
    pub rho: Option<f64>,
    /// Cover target: stop once at most `delta n` vertices are uncovered.
    pub delta: f64,
    /// Cover path budget.
    pub q: usize,
    /// Per-connection reservoir budget; `None` means `2k-2` (tight) or `3k-4l`.
    pub g: Option<usize>,
    pub min_edges: usize,
    /// A pair is absorbable once this many pc pair-absorbers are found.
    pub absorbable_threshold: usize,
    /// Random-walk budget per pair when building the absorbable graph.
    pub absorbable_budget: usize,
    /// Family floor `|F & A_i|`; `None` uses the formula `max(1, ceil(alpha^2 t^2 n / 4))`.
    pub family_floor: Option<usize>,
    /// Targets whose absorbers seed the candidate pool, and absorbers per target.
    pub pool_targets: usize,
    pub pool_cap: usize,
    /// Retries inside the samplers.
    pub retries: usize,
    /// Full restarts of the pipeline with derived seeds.
    pub restarts: usize,
    /// Use the proof's `lambda = (gamma/2)^{2k} / 4` instead of `lambda`.
    pub paper_constants: bool,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            variant: None,
            lambda: 2.0 / 3.0,
            rho: None,
            delta: 0.05,
            q: 8,
            g: None,
            min_edges: DEFAULT_MIN_EDGES,
            absorbable_threshold: 1,
            absorbable_budget: 400,
            family_floor: Some(1),
            pool_targets: 6,
            pool_cap: 40,
            retries: crate::reservoir::DEFAULT_RETRIES,
            restarts: 3,
            paper_constants: false,
            seed: 0,
        }
    }
}

impl PipelineConfig {
    /// Sets one field from its textual `key=value` form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || invalid(format!("bad value '{value}' for '{key}'"));
        let f = || value.parse::<f64>().map_err(|_| bad());
        let u = || value.parse::<usize>().map_err(|_| bad());
        let opt_u = || if value == "auto" { Ok(None) } else { u().map(Some) };
        match key {
            "variant" => self.variant = Some(parse_variant(value)?),
            "lambda" => self.lambda = f()?,
            "rho" => self.rho = if value == "auto" { None } else { Some(f()?) },
            "delta" => self.delta = f()?,
            "q" => self.q = u()?,
            "g" => self.g = opt_u()?,
            "min_edges" => self.min_edges = u()?,
            "absorbable_threshold" => self.absorbable_threshold = u()?,
            "absorbable_budget" => self.absorbable_budget = u()?,
            "family_floor" => self.family_floor = opt_u()?,
            "pool_targets" => self.pool_targets = u()?,
            "pool_cap" => self.pool_cap = u()?,
            "retries" => self.retries = u()?,
            "restarts" => self.restarts = u()?,
            "paper_constants" => self.paper_constants = value.parse().map_err(|_| bad())?,
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            _ => return Err(invalid(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    /// Reads `key=value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: "expected key=value".into(),
            })?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let frac = |x: f64| x > 0.0 && x < 1.0;
        if !frac(self.lambda) || !frac(self.delta) || self.rho.is_some_and(|r| !frac(r)) {
            return Err(invalid("lambda, rho and delta must lie in (0,1)"));
        }
        if self.g == Some(0) || self.q == 0 || self.restarts == 0 {
            return Err(invalid("g, q and restarts must be positive"));
        }
        Ok(())
    }
}

pub fn parse_variant(text: &str) -> Result<Variant> {
    match text {
        "tight" => Ok(Variant::Tight),
        "ell" | "set" => Ok(Variant::Ell),
        "loose" => Ok(Variant::Loose),
        _ => Err(invalid(format!("unknown variant '{text}' (tight, ell, loose)"))),
    }
}

/// The route for `(k, l)`; k = 3, l = 1 needs an explicit choice.
pub fn resolve_variant(k: usize, l: usize, requested: Option<Variant>) -> Result<Variant> {
    if l == 0 || l >= k {
        return Err(invalid(format!("l={l} outside 1..={}", k - 1)));
    }
    let v = if l == k - 1 {
        Variant::Tight
    } else if 2 * l < k {
        if k == 3 && l == 1 {
            requested.ok_or_else(|| invalid("k=3, l=1: choose the ell or loose variant explicitly"))?
        } else {
            Variant::Ell
        }
    } else {
        return Err(Error::UnsupportedRegime { k, l });
    };
    if let Some(r) = requested {
        if r != v {
            return Err(invalid(format!("variant {r:?} does not apply to k={k}, l={l}")));
        }
    }
    Ok(v)
}

/// Vertex counts that drive the size planner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub k: usize,
    pub l: usize,
    /// Vertices of an absorber's base path.
    pub base: usize,
    /// Vertices one absorption adds.
    pub step: usize,
    /// Inner vertices of a shortest connection.
    pub connector: usize,
}

impl Shape {
    pub fn of(k: usize, l: usize, v: Variant) -> Self {
        match v {
            Variant::Tight => Self {
                k,
                l,
                base: 4 * k - 4,
                step: 1,
                connector: 0,
            },
            Variant::Ell => Self {
                k,
                l,
                base: 3 * k - 2 * l,
                step: k - l,
                connector: 3 * k - 4 * l,
            },
            Variant::Loose => Self {
                k,
                l,
                base: 7,
                step: 2,
                connector: 5,
            },
        }
    }
}

/// Reservoir sizes `r` for which the ideal run on `n` vertices, with an absorbing
/// path on `a` vertices holding `f` absorbers, leaves a leftover the absorbers can take.
pub fn feasible_reservoir_sizes(n: usize, a: usize, f: usize, shape: &Shape, min_edges: usize) -> Vec<usize> {
    let Shape {
        k, l, step, connector, ..
    } = *shape;
    let min_len = l + min_edges.max(1) * (k - l);
    let mut out = Vec::new();
    for r in connector.max(1)..=n.saturating_sub(a) {
        let rest = n - a - r;
        let (paths, covered) = if rest >= min_len {
            (1, l + (rest - l) / (k - l) * (k - l))
        } else {
            (0, 0)
        };
        let used = (paths + 1) * connector;
        if r < used {
            continue;
        }
        let leftover = r - used + rest - covered;
        if leftover <= f * step && leftover.is_multiple_of(step) {
            out.push(r);
        }
    }
    out
}

/// Absorber count and reservoir sizes: among the `f` whose ideal absorbing path
/// fits in `lambda n`, the one with the most feasible sizes (fewest absorbers on ties).
pub fn plan_sizes(n: usize, shape: &Shape, lambda: f64, min_edges: usize) -> Option<(usize, Vec<usize>)> {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for f in 1.. {
        let a = f * shape.base + (f - 1) * shape.connector;
        if a as f64 > lambda * n as f64 || a > n {
            break;
        }
        let sizes = feasible_reservoir_sizes(n, a, f, shape, min_edges);
        if !sizes.is_empty() && best.as_ref().is_none_or(|(_, b)| sizes.len() > b.len()) {
            best = Some((f, sizes));
        }
    }
    best
}

/// One stage's outcome and counters.
#[derive(Clone, Debug, PartialEq)]
pub struct StageReport {
    pub stage: String,
    pub ok: bool,
    pub detail: String,
    pub counters: BTreeMap<String, usize>,
}

impl StageReport {
    fn new(stage: &str, ok: bool, detail: impl Into<String>, counters: &[(&str, usize)]) -> Self {
        Self {
            stage: stage.into(),
            ok,
            detail: detail.into(),
            counters: counters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    /// `stage,outcome,key=value;...,detail` with the detail quoted.
    pub fn csv_row(&self) -> String {
        let counters: Vec<String> = self.counters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{},{},{},\"{}\"",
            self.stage,
            if self.ok { "ok" } else { "failed" },
            counters.join(";"),
            self.detail.replace('"', "'")
        )
    }
}

/// An absorber base embedded in the absorbing path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub base: Vec<usize>,
    /// Index of the first base vertex in the path (and in the cycle built on it).
    pub offset: usize,
}

/// The absorbers on `A`. Lookups are computed on demand from the bases.
#[derive(Clone, Debug, PartialEq)]
pub struct Registry {
    pub entries: Vec<Entry>,
}

impl Registry {
    /// Entries whose base absorbs `target` with both paths properly colored.
    pub fn absorbers_for(&self, h: &ColoredKGraph, target: &AbsorberTarget) -> Vec<(usize, Absorber)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| absorber_on(h, &e.base, target, true).map(|a| (i, a)))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct AbsorbingPath {
    pub path: KLPath,
    pub registry: Registry,
    pub variant: Variant,
    /// Absorbable pair graph (loose variant).
    pub graph: Option<SimpleGraph>,
    /// Admissible reservoir sizes from the planner.
    pub reservoir_sizes: Vec<usize>,
    pub family_attempts: usize,
    /// Families below the size `4 alpha t^2 n^t` asked for by the sampling bound.
    pub size_warnings: usize,
}

struct TargetFamily<'a> {
    h: &'a ColoredKGraph,
    target: AbsorberTarget,
}

impl TupleFamily for TargetFamily<'_> {
    fn contains(&self, t: &[usize]) -> bool {
        absorber_on(self.h, t, &self.target, true).is_some()
    }

    fn exempt_under(&self, chosen: &[Vec<usize>]) -> bool {
        let vs = self.target.vertices();
        chosen.iter().flatten().any(|v| vs.contains(v))
    }
}

/// Targets every absorber family must hit.
fn all_targets(h: &ColoredKGraph, shape: &Shape, variant: Variant, graph: Option<&SimpleGraph>) -> Vec<AbsorberTarget> {
    let vs = h.vertices();
    match variant {
        Variant::Tight => vs.into_iter().map(AbsorberTarget::Vertex).collect(),
        Variant::Ell => subsets(&vs, shape.k - shape.l)
            .into_iter()
            .map(|set| AbsorberTarget::Set { l: shape.l, set })
            .collect(),
        Variant::Loose => graph
            .map(|g| g.edges().into_iter().map(|(x, y)| AbsorberTarget::Pair(x, y)).collect())
            .unwrap_or_default(),
    }
}

fn lambda_of(h: &ColoredKGraph, l: usize, variant: Variant, cfg: &PipelineConfig) -> Result<f64> {
    if !cfg.paper_constants {
        return Ok(cfg.lambda);
    }
    let rep = h.check_hypotheses(l)?;
    let gamma = match (variant, rep.loose_vertex) {
        (Variant::Loose, Some((g, _))) => g,
        _ => rep.gamma_margin,
    };
    Ok(if gamma > 0.0 {
        0.25 * (gamma / 2.0).powi(2 * h.k() as i32)
    } else {
        0.0
    })
}

fn stage_fail(stage: &str, detail: impl Into<String>) -> Error {
    Error::StagedFailure {
        stage: stage.into(),
        detail: detail.into(),
    }
}

/// Builds the absorbing path `A`: disjoint pc absorbers sampled as a family that
/// hits every target, then chained by the connecting lemma.
pub fn build_absorbing_path(h: &ColoredKGraph, l: usize, cfg: &PipelineConfig, seed: u64) -> Result<AbsorbingPath> {
    cfg.validate()?;
    let k = h.k();
    let variant = resolve_variant(k, l, cfg.variant)?;
    let shape = Shape::of(k, l, variant);
    let n = h.order();
    let lambda = lambda_of(h, l, variant, cfg)?;
    let (f, _) = plan_sizes(n, &shape, lambda, cfg.min_edges).ok_or_else(|| {
        stage_fail(
            "family",
            format!("n={n} leaves no room for absorbers within lambda={lambda:.3e}"),
        )
    })?;
    let graph = if variant == Variant::Loose {
        Some(build_absorbable_graph(
            h,
            cfg.absorbable_threshold,
            Some(cfg.absorbable_budget),
        )?)
    } else {
        None
    };
    let targets = all_targets(h, &shape, variant, graph.as_ref());
    if targets.is_empty() {
        return Err(stage_fail("family", "no absorbable targets"));
    }
    let mut rng = seeded(mix(seed, 1));
    let mut pool: Vec<Vec<usize>> = Vec::new();
    let mut seen = HashSet::new();
    for (i, t) in targets.choose_multiple(&mut rng, cfg.pool_targets.max(1)).enumerate() {
        for a in enumerate_absorbers(h, t, true, Some(cfg.pool_cap.max(1)), mix(seed, 100 + i as u64))? {
            if seen.insert(a.base()) {
                pool.push(a.base());
            }
        }
    }
    if pool.is_empty() {
        return Err(stage_fail("family", "no pc absorbers found"));
    }
    let families: Vec<Box<dyn TupleFamily + '_>> = targets
        .iter()
        .map(|t| Box::new(TargetFamily { h, target: t.clone() }) as Box<dyn TupleFamily>)
        .collect();
    let mut spec = FamilySpec::new(shape.base, (f as f64 + 0.5) / n as f64, families);
    spec.pool = Some(pool);
    spec.min_hits = cfg.family_floor;
    spec.retries = cfg.retries;
    let size_warnings = spec.size_warnings(n).len();
    let fam = sample_absorber_family(n, &spec, mix(seed, 2)).map_err(|e| stage_fail("family", e.to_string()))?;
    if fam.tuples.len() < f {
        return Err(stage_fail(
            "family",
            format!("sampled {} of {f} absorbers", fam.tuples.len()),
        ));
    }
    let paths: Vec<KLPath> = fam
        .tuples
        .iter()
        .map(|t| KLPath::new(k, l, t.clone()))
        .collect::<Result<_>>()?;
    let in_family: HashSet<usize> = fam.tuples.iter().flatten().copied().collect();
    let q: Vec<usize> = h.vertices().into_iter().filter(|v| !in_family.contains(v)).collect();
    let g = connection_budget(&shape, cfg);
    let joined = connect_many(h, &paths, &q, connector_for(&shape, variant, g), g, false, mix(seed, 3))
        .map_err(|e| stage_fail("absorbing-path", e.to_string()))?;
    let path = joined.path;
    if path.len() as f64 > lambda * n as f64 {
        return Err(stage_fail(
            "absorbing-path",
            format!("|V(A)| = {} exceeds lambda n", path.len()),
        ));
    }
    let mut entries = Vec::new();
    for t in &fam.tuples {
        let offset = path
            .vertices
            .windows(t.len())
            .position(|w| w == &t[..])
            .ok_or(Error::Internal("absorber lost".into()))?;
        entries.push(Entry {
            base: t.clone(),
            offset,
        });
    }
    let reservoir_sizes = feasible_reservoir_sizes(n, path.len(), f, &shape, cfg.min_edges);
    Ok(AbsorbingPath {
        path,
        registry: Registry { entries },
        variant,
        graph,
        reservoir_sizes,
        family_attempts: fam.attempts,
        size_warnings,
    })
}

fn connection_budget(shape: &Shape, cfg: &PipelineConfig) -> usize {
    cfg.g.unwrap_or(if shape.connector == 0 {
        2 * shape.k - 2
    } else {
        shape.connector
    })
}

fn connector_for(shape: &Shape, variant: Variant, g: usize) -> Connector {
    match variant {
        Variant::Tight => Connector::Tight {
            max_len: 4 * shape.k - 4 + g,
        },
        Variant::Ell => Connector::Ell,
        Variant::Loose => Connector::Loose,
    }
}

/// Outcome of a pipeline run: the cycle, or the failure with all stage reports.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub cycle: Option<KLCycle>,
    pub failure: Option<Error>,
    pub reports: Vec<StageReport>,
    /// Restarts used (1-based).
    pub attempts: usize,
}

/// Runs the absorbing pipeline, restarting with derived seeds on stage failures.
pub fn find_pc_hamilton_absorbing(h: &ColoredKGraph, l: usize, cfg: &PipelineConfig) -> Result<PipelineRun> {
    cfg.validate()?;
    let k = h.k();
    resolve_variant(k, l, cfg.variant)?;
    let n = h.order();
    if !n.is_multiple_of(k - l) {
        return Err(invalid(format!("(k-l) = {} does not divide n = {n}", k - l)));
    }
    let mut reports = Vec::new();
    let mut failure = None;
    for attempt in 0..cfg.restarts {
        let seed = mix(cfg.seed, attempt as u64);
        match attempt_once(h, l, cfg, seed, &mut reports) {
            Ok(c) => {
                return Ok(PipelineRun {
                    cycle: Some(c),
                    failure: None,
                    reports,
                    attempts: attempt + 1,
                })
            }
            Err(e @ Error::Internal(_)) => return Err(e),
            Err(e) => failure = Some(e),
        }
    }
    Ok(PipelineRun {
        cycle: None,
        failure,
        reports,
        attempts: cfg.restarts,
    })
}

fn attempt_once(
    h: &ColoredKGraph,
    l: usize,
    cfg: &PipelineConfig,
    seed: u64,
    reports: &mut Vec<StageReport>,
) -> Result<KLCycle> {
    let k = h.k();
    let n = h.order();
    let fail = |reports: &mut Vec<StageReport>, stage: &str, e: Error| -> Error {
        reports.push(StageReport::new(stage, false, e.to_string(), &[]));
        e
    };

    // (1) absorbing path
    let ap = build_absorbing_path(h, l, cfg, mix(seed, 10)).map_err(|e| fail(reports, "absorbing-path", e))?;
    let shape = Shape::of(k, l, ap.variant);
    reports.push(StageReport::new(
        "absorbing-path",
        true,
        format!("{} absorbers", ap.registry.entries.len()),
        &[
            ("|V(A)|", ap.path.len()),
            ("absorbers", ap.registry.entries.len()),
            ("family_attempts", ap.family_attempts),
        ],
    ));

    // (2) reservoir on V - V(A)
    let on_a: HashSet<usize> = ap.path.vertices.iter().copied().collect();
    let rest: Vec<usize> = h.vertices().into_iter().filter(|v| !on_a.contains(v)).collect();
    if ap.reservoir_sizes.is_empty() {
        return Err(fail(
            reports,
            "reservoir",
            stage_fail("reservoir", "no admissible reservoir size"),
        ));
    }
    let mid = ap.reservoir_sizes.iter().sum::<usize>() as f64 / ap.reservoir_sizes.len() as f64;
    let p = cfg.rho.unwrap_or((mid / rest.len() as f64).clamp(1e-6, 1.0 - 1e-6));
    let mut spec = ReservoirSpec::new(p);
    spec.retries = cfg.retries;
    if cfg.rho.is_none() {
        spec.allowed_sizes = Some(ap.reservoir_sizes.clone());
    }
    let res = sample_reservoir(&rest, &spec, mix(seed, 20))
        .map_err(|e| fail(reports, "reservoir", stage_fail("reservoir", e.to_string())))?;
    let r = res.r;
    reports.push(StageReport::new(
        "reservoir",
        true,
        format!("p = {p:.4}"),
        &[("|R|", r.len()), ("attempts", res.attempts)],
    ));

    // (3) cover H - V(A) - R
    let mut gone: Vec<usize> = ap.path.vertices.clone();
    gone.extend(&r);
    let sub = h.remove_vertices(&gone);
    let cover = greedy_path_cover(&sub, l, cfg.delta, cfg.q, cfg.min_edges, mix(seed, 30))
        .map_err(|e| fail(reports, "cover", e))?;
    reports.push(StageReport::new(
        "cover",
        true,
        if cover.shortfall { "shortfall" } else { "" },
        &[("paths", cover.paths.len()), ("uncovered", cover.uncovered.len())],
    ));

    // (4) connect A and the cover through R into a cycle
    let mut paths = vec![ap.path.clone()];
    paths.extend(cover.paths.iter().cloned());
    let g = connection_budget(&shape, cfg);
    let joined = connect_many(
        h,
        &paths,
        &r,
        connector_for(&shape, ap.variant, g),
        g,
        true,
        mix(seed, 40),
    )
    .map_err(|e| fail(reports, "connect", e))?;
    let mut cycle = joined
        .cycle
        .ok_or_else(|| Error::Internal("connect_many returned no cycle".into()))?;
    if joined.used_q.len() > paths.len() * g {
        return Err(Error::Internal(
            "connections used more reservoir vertices than budgeted".into(),
        ));
    }
    reports.push(StageReport::new(
        "connect",
        true,
        "",
        &[("|V(C)|", cycle.len()), ("used_Q", joined.used_q.len())],
    ));

    // (5) absorb the leftover
    let on_c: HashSet<usize> = cycle.vertices.iter().copied().collect();
    let leftover: Vec<usize> = h.vertices().into_iter().filter(|v| !on_c.contains(v)).collect();
    if !leftover.len().is_multiple_of(shape.step) {
        return Err(Error::Internal(format!(
            "leftover of size {} not divisible by {}",
            leftover.len(),
            shape.step
        )));
    }
    let mut warnings = Vec::new();
    let groups: Vec<AbsorberTarget> = match ap.variant {
        Variant::Tight => leftover.iter().map(|&v| AbsorberTarget::Vertex(v)).collect(),
        Variant::Ell => leftover
            .chunks(shape.step)
            .map(|c| AbsorberTarget::Set { l, set: c.to_vec() })
            .collect(),
        Variant::Loose => {
            let rs: HashSet<usize> = r.iter().copied().collect();
            let in_r = leftover.iter().filter(|v| rs.contains(v)).count();
            if (r.len() - in_r) * 100 > r.len() || (leftover.len() - in_r) * 100 > r.len() {
                warnings.push("leftover misses the |R-U|, |U-R| <= |R|/100 guards".to_string());
            }
            let graph = ap
                .graph
                .as_ref()
                .ok_or_else(|| Error::Internal("loose run without absorbable graph".into()))?;
            let m = perfect_matching(graph, &leftover)?.ok_or_else(|| {
                fail(
                    reports,
                    "matching",
                    stage_fail("matching", "G[U] has no perfect matching"),
                )
            })?;
            m.into_iter().map(|(x, y)| AbsorberTarget::Pair(x, y)).collect()
        }
    };
    let mut entries = ap.registry.entries.clone();
    let mut used = vec![false; entries.len()];
    let before = cycle.vertices.clone();
    let mut replaced: Vec<(usize, usize, usize)> = Vec::new();
    for target in &groups {
        let mut done = false;
        for (i, a) in ap.registry.absorbers_for(h, target) {
            if used[i] {
                continue;
            }
            match absorb_into_cycle(h, &cycle, &a, entries[i].offset) {
                Ok(c) => {
                    let off = entries[i].offset;
                    for e in entries.iter_mut().filter(|e| e.offset > off) {
                        e.offset += shape.step;
                    }
                    replaced.push((off, a.base().len(), a.expanded().len()));
                    cycle = c;
                    used[i] = true;
                    done = true;
                    break;
                }
                Err(Error::ColoringConflict(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        if !done {
            let e = stage_fail("absorb", format!("no free absorber takes {:?}", target.vertices()));
            return Err(fail(reports, "absorb", e));
        }
    }
    if !outside_unchanged(&before, &cycle.vertices, &mut replaced) {
        return Err(Error::Internal(
            "absorption changed the cycle outside absorber segments".into(),
        ));
    }
    reports.push(StageReport::new(
        "absorb",
        true,
        warnings.join("; "),
        &[("leftover", leftover.len()), ("absorptions", groups.len())],
    ));

    // (6) final gate
    if !is_hamilton(h, &cycle) || !edges_properly_colored(h, &cycle.edges())? {
        return Err(Error::Internal("final cycle failed validation".into()));
    }
    reports.push(StageReport::new("validate", true, "", &[("n", n)]));
    Ok(cycle)
}

/// Replaces the absorber's base at `offset` in the cycle by its expanded sequence.
pub fn absorb_into_cycle(h: &ColoredKGraph, c: &KLCycle, a: &Absorber, offset: usize) -> Result<KLCycle> {
    let base = a.base();
    let end = offset + base.len();
    if end > c.len() || c.vertices[offset..end] != base[..] {
        return Err(Error::PlacementError(format!("base not found at {offset}")));
    }
    if !offset.is_multiple_of(c.k - c.l) {
        return Err(Error::PlacementError("offset not aligned with an edge start".into()));
    }
    if a.targets().iter().any(|v| c.vertices.contains(v)) {
        return Err(Error::PlacementError("target already on the cycle".into()));
    }
    let mut vs = c.vertices[..offset].to_vec();
    vs.extend(a.expanded());
    vs.extend_from_slice(&c.vertices[end..]);
    let out = KLCycle::new(c.k, c.l, vs).map_err(|e| Error::PlacementError(e.to_string()))?;
    if edges_properly_colored(h, &out.edges())? {
        Ok(out)
    } else {
        Err(Error::ColoringConflict(
            "absorption creates a monochromatic intersecting pair".into(),
        ))
    }
}

/// Checks that `after` equals `before` outside the replaced segments, given as
/// `(offset in after, base length, expanded length)` in order of application.
fn outside_unchanged(before: &[usize], after: &[usize], replaced: &mut [(usize, usize, usize)]) -> bool {
    replaced.sort_unstable();
    let (mut i, mut j) = (0, 0);
    for &(off, b, e) in replaced.iter() {
        let len = off - j;
        if before.get(i..i + len) != after.get(j..j + len) {
            return false;
        }
        i += len + b;
        j = off + e;
    }
    before.get(i..) == after.get(j..)
}
