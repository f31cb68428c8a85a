//! Random reservoirs and disjoint absorber families, with post-condition recounts.
//!
//! Both samplers retry with derived seeds and return the first attempt (lowest
//! index) that passes an independent recount of every stated condition.

use std::collections::HashSet;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;
use rand_distr::{Binomial, Distribution};

use crate::connecting::{connect_ell, connect_loose, connect_tight};
use crate::covering::perfect_matching;
use crate::error::{invalid, Error, Result};
use crate::graph::SimpleGraph;
use crate::hypergraph::{binomial, ColoredKGraph};
use crate::paths::{edges_properly_colored, KLPath};
use crate::rng::{mix, seeded, Rng};

pub const DEFAULT_RETRIES: usize = 64;

/// Parameters of a reservoir draw: inclusion probability `p`, vertex sets `U_i`
/// with densities `alpha_i`, and graphs `G_j` with edge densities `beta_j`.
#[derive(Clone, Debug)]
pub struct ReservoirSpec {
    pub p: f64,
    pub subsets: Vec<(Vec<usize>, f64)>,
    pub graphs: Vec<(SimpleGraph, f64)>,
    pub retries: usize,
    /// Extra constraint on `|R|`, enforced by the retry loop.
    pub allowed_sizes: Option<Vec<usize>>,
}

impl ReservoirSpec {
    pub fn new(p: f64) -> Self {
        Self {
            p,
            subsets: Vec::new(),
            graphs: Vec::new(),
            retries: DEFAULT_RETRIES,
            allowed_sizes: None,
        }
    }
}

/// Outcome of recounting conditions (a), (b), (c) on a concrete `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReservoirCheck {
    /// (a) `||R| - pn| <= p n^{2/3}`.
    pub size_ok: bool,
    /// (b) `|U_i & R| >= (alpha_i - 2 n^{-1/3}) |R|`, per subset.
    pub subsets_ok: Vec<bool>,
    /// (c) `|G_j[R]| >= (beta_j - 3 n^{-1/3}) C(|R|, 2)`, per graph.
    pub graphs_ok: Vec<bool>,
    pub size_allowed: bool,
}

impl ReservoirCheck {
    pub fn passed(&self) -> bool {
        self.size_ok && self.size_allowed && self.subsets_ok.iter().all(|&b| b) && self.graphs_ok.iter().all(|&b| b)
    }
}

/// Recounts every condition of `spec` on `r` from scratch.
pub fn check_reservoir(vertices: &[usize], spec: &ReservoirSpec, r: &[usize]) -> ReservoirCheck {
    let n = vertices.len() as f64;
    let rs: HashSet<usize> = r.iter().copied().collect();
    let size = rs.len() as f64;
    let cube = n.cbrt();
    let size_ok = (size - spec.p * n).abs() <= spec.p * n.powf(2.0 / 3.0);
    let subsets_ok = spec
        .subsets
        .iter()
        .map(|(u, a)| u.iter().filter(|v| rs.contains(v)).count() as f64 >= (a - 2.0 / cube) * size)
        .collect();
    let pairs = size * (size - 1.0) / 2.0;
    let graphs_ok = spec
        .graphs
        .iter()
        .map(|(g, b)| g.induced_edge_count(r) as f64 >= (b - 3.0 / cube) * pairs)
        .collect();
    let size_allowed = spec.allowed_sizes.as_ref().is_none_or(|s| s.contains(&rs.len()));
    ReservoirCheck {
        size_ok,
        subsets_ok,
        graphs_ok,
        size_allowed,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reservoir {
    pub r: Vec<usize>,
    /// 1-based index of the accepted attempt.
    pub attempts: usize,
}

/// Draws `R` by independent inclusion with probability `p` until (a), (b), (c) hold.
pub fn sample_reservoir(vertices: &[usize], spec: &ReservoirSpec, seed: u64) -> Result<Reservoir> {
    if !(spec.p > 0.0 && spec.p < 1.0) {
        return Err(invalid("p must lie in (0,1)"));
    }
    let n = vertices.len();
    for (u, a) in &spec.subsets {
        if !(*a > 0.0 && *a < 1.0) || (u.len() as f64) < a * n as f64 {
            return Err(invalid("every U_i needs alpha_i in (0,1) and |U_i| >= alpha_i n"));
        }
    }
    for (g, b) in &spec.graphs {
        if !(*b > 0.0 && *b < 1.0)
            || (g.induced_edge_count(vertices) as f64) < b * (n * n.saturating_sub(1)) as f64 / 2.0
        {
            return Err(invalid("every G_j needs beta_j in (0,1) and |G_j| >= beta_j C(n,2)"));
        }
    }
    let mut fails = [0usize; 4];
    for attempt in 0..spec.retries.max(1) {
        let mut rng = seeded(mix(seed, attempt as u64));
        let r: Vec<usize> = vertices.iter().copied().filter(|_| rng.random_bool(spec.p)).collect();
        let c = check_reservoir(vertices, spec, &r);
        if c.passed() {
            return Ok(Reservoir {
                r,
                attempts: attempt + 1,
            });
        }
        fails[0] += usize::from(!c.size_ok);
        fails[1] += usize::from(!c.subsets_ok.iter().all(|&b| b));
        fails[2] += usize::from(!c.graphs_ok.iter().all(|&b| b));
        fails[3] += usize::from(!c.size_allowed);
    }
    Err(Error::SamplingFailure(format!(
        "reservoir: {} attempts failed; (a) {} times, (b) {} times, (c) {} times, size constraint {} times",
        spec.retries, fails[0], fails[1], fails[2], fails[3]
    )))
}

/// A family `A_i` of t-tuples, given by membership.
pub trait TupleFamily {
    fn contains(&self, t: &[usize]) -> bool;

    /// `|A_i|` when known, for the size warning.
    fn size(&self) -> Option<u128> {
        None
    }

    /// True if this family no longer needs a hit once `chosen` is fixed
    /// (the pipeline exempts targets that ended up inside an absorber).
    fn exempt_under(&self, _chosen: &[Vec<usize>]) -> bool {
        false
    }
}

/// Parameters of a disjoint-family draw.
pub struct FamilySpec<'a> {
    pub t: usize,
    pub alpha: f64,
    pub families: Vec<Box<dyn TupleFamily + 'a>>,
    pub retries: usize,
    /// Candidate tuples to sample from instead of `[n]^t`.
    pub pool: Option<Vec<Vec<usize>>>,
    /// Inclusion probability override (default `alpha n^{1-t} / 4`, or 1 with a pool).
    pub inclusion_p: Option<f64>,
    /// Hit threshold override (default `max(1, ceil(alpha^2 t^2 n / 4))`).
    pub min_hits: Option<usize>,
}

impl<'a> FamilySpec<'a> {
    pub fn new(t: usize, alpha: f64, families: Vec<Box<dyn TupleFamily + 'a>>) -> Self {
        Self {
            t,
            alpha,
            families,
            retries: DEFAULT_RETRIES,
            pool: None,
            inclusion_p: None,
            min_hits: None,
        }
    }

    pub fn threshold(&self, n: usize) -> usize {
        self.min_hits.unwrap_or_else(|| {
            let raw = self.alpha * self.alpha * (self.t * self.t) as f64 * n as f64 / 4.0;
            (raw.ceil() as usize).max(1)
        })
    }

    /// Families violating `|A_i| >= 4 alpha t^2 n^t` (reported, not enforced).
    pub fn size_warnings(&self, n: usize) -> Vec<usize> {
        let need = 4.0 * self.alpha * (self.t * self.t) as f64 * (n as f64).powi(self.t as i32);
        self.families
            .iter()
            .enumerate()
            .filter(|(_, f)| f.size().is_some_and(|s| (s as f64) < need))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Recount of the four family conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyCheck {
    pub within_union: bool,
    pub size_ok: bool,
    pub disjoint: bool,
    pub hits: Vec<usize>,
    pub hits_ok: bool,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.within_union && self.size_ok && self.disjoint && self.hits_ok
    }
}

pub fn check_family(n: usize, spec: &FamilySpec, f: &[Vec<usize>]) -> FamilyCheck {
    let within_union = f.iter().all(|t| spec.families.iter().any(|a| a.contains(t)));
    let size_ok = (f.len() as f64) <= spec.alpha * n as f64;
    let mut seen = HashSet::new();
    let disjoint = f.iter().flatten().all(|v| seen.insert(*v));
    let hits: Vec<usize> = spec
        .families
        .iter()
        .map(|a| f.iter().filter(|t| a.contains(t)).count())
        .collect();
    let need = spec.threshold(n);
    let hits_ok = hits
        .iter()
        .zip(&spec.families)
        .all(|(&h, a)| h >= need || a.exempt_under(f));
    FamilyCheck {
        within_union,
        size_ok,
        disjoint,
        hits,
        hits_ok,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilySample {
    pub tuples: Vec<Vec<usize>>,
    pub hits: Vec<usize>,
    pub attempts: usize,
}

fn draw_uniform(n: usize, t: usize, p: f64, rng: &mut Rng) -> Result<Vec<Vec<usize>>> {
    let total = (n as u64)
        .checked_pow(t as u32)
        .ok_or_else(|| invalid("n^t does not fit in 64 bits"))?;
    let count = Binomial::new(total, p.clamp(0.0, 1.0))
        .map_err(|e| invalid(e.to_string()))?
        .sample(rng);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count as usize);
    while (out.len() as u64) < count {
        let tup: Vec<usize> = (0..t).map(|_| rng.random_range(0..n)).collect();
        if seen.insert(tup.clone()) {
            out.push(tup);
        }
    }
    Ok(out)
}

/// Samples a set `F` of pairwise disjoint t-tuples hitting every family.
///
/// Tuples are included independently, one tuple of every intersecting pair is
/// removed (greedy: keep a tuple unless it meets an earlier kept one), tuples
/// outside every family are dropped, and with a pool the result is cut to
/// `floor(alpha n)`. The four conditions are then recounted.
pub fn sample_absorber_family(n: usize, spec: &FamilySpec, seed: u64) -> Result<FamilySample> {
    if spec.t == 0 || !(spec.alpha > 0.0 && spec.alpha < 1.0) {
        return Err(invalid("need t >= 1 and alpha in (0,1)"));
    }
    let cap = (spec.alpha * n as f64).floor() as usize;
    let mut last = None;
    for attempt in 0..spec.retries.max(1) {
        let mut rng = seeded(mix(seed, attempt as u64));
        let mut drawn = match &spec.pool {
            Some(pool) => {
                let p = spec.inclusion_p.unwrap_or(1.0);
                pool.iter()
                    .filter(|_| rng.random_bool(p.clamp(0.0, 1.0)))
                    .cloned()
                    .collect()
            }
            None => {
                let p = spec
                    .inclusion_p
                    .unwrap_or(spec.alpha * (n as f64).powi(1 - spec.t as i32) / 4.0);
                draw_uniform(n, spec.t, p, &mut rng)?
            }
        };
        drawn.shuffle(&mut rng);
        let mut used = HashSet::new();
        let mut kept = Vec::new();
        for tup in drawn {
            let self_disjoint = tup.iter().collect::<HashSet<_>>().len() == tup.len();
            if self_disjoint && tup.iter().all(|v| !used.contains(v)) {
                used.extend(tup.iter().copied());
                kept.push(tup);
            }
        }
        kept.retain(|t| spec.families.iter().any(|a| a.contains(t)));
        if spec.pool.is_some() {
            kept.truncate(cap);
        }
        let c = check_family(n, spec, &kept);
        if c.passed() {
            return Ok(FamilySample {
                tuples: kept,
                hits: c.hits,
                attempts: attempt + 1,
            });
        }
        last = Some(c);
    }
    let c = last.unwrap();
    Err(Error::SamplingFailure(format!(
        "family: {} attempts failed; last attempt: within union {}, |F| <= alpha n {}, disjoint {}, hits {:?} (need {})",
        spec.retries,
        c.within_union,
        c.size_ok,
        c.disjoint,
        c.hits,
        spec.threshold(n)
    )))
}

/// Which connecting lemma a reservoir is validated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Tight,
    Ell,
    Loose,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReservoirReport {
    pub trials: usize,
    /// Trials where suitable random ends existed.
    pub attempted: usize,
    pub successes: usize,
    pub success_fraction: f64,
    pub matching_trials: usize,
    pub matching_ok: usize,
}

fn random_pc_tuple(h: &ColoredKGraph, pool: &[usize], len: usize, rng: &mut Rng) -> Option<Vec<usize>> {
    for _ in 0..200 {
        let t: Vec<usize> = pool.choose_multiple(rng, len).copied().collect();
        if t.len() < len {
            return None;
        }
        if let Ok(p) = KLPath::new(h.k(), h.k() - 1, t.clone()) {
            if edges_properly_colored(h, &p.edges()).unwrap_or(false) {
                return Some(t);
            }
        }
    }
    None
}

/// Monte Carlo check that `R` serves as a reservoir: random ends outside `R`,
/// random `R' < R` with `|R'| <= |R|/100`, random forbidden colors; each trial
/// asks the matching connect operation for a path with inner vertices in `R - R'`.
///
/// For the loose variant with an absorbable graph `g`, also samples sets `U` with
/// `|U|` even, `|R - U|, |U - R| <= |R|/100` and checks `delta(G[U]) >= |U|/2`
/// together with the existence of a perfect matching.
pub fn validate_reservoir(
    h: &ColoredKGraph,
    r: &[usize],
    variant: Variant,
    l: usize,
    g: Option<&SimpleGraph>,
    trials: usize,
    seed: u64,
) -> Result<ReservoirReport> {
    let k = h.k();
    let mut rng = seeded(seed);
    let rset: HashSet<usize> = r.iter().copied().collect();
    let outside: Vec<usize> = h.vertices().into_iter().filter(|v| !rset.contains(v)).collect();
    let colors = h.color_set();
    let slack = r.len() / 100;
    let (mut attempted, mut successes) = (0, 0);
    for trial in 0..trials {
        let sub_seed = mix(seed, trial as u64);
        let mut rprime: Vec<usize> = r.to_vec();
        rprime.shuffle(&mut rng);
        rprime.truncate(rng.random_range(0..=slack));
        let allowed: HashSet<usize> = r.iter().copied().filter(|v| !rprime.contains(v)).collect();
        let cx = colors.choose(&mut rng).copied();
        let cy = colors.choose(&mut rng).copied();
        let found = match variant {
            Variant::Tight => {
                let Some(v) = random_pc_tuple(h, &outside, 2 * k - 2, &mut rng) else {
                    continue;
                };
                let rest: Vec<usize> = outside.iter().copied().filter(|x| !v.contains(x)).collect();
                let Some(w) = random_pc_tuple(h, &rest, 2 * k - 2, &mut rng) else {
                    continue;
                };
                let avoid: Vec<usize> = h
                    .vertices()
                    .into_iter()
                    .filter(|x| !allowed.contains(x) && !v.contains(x) && !w.contains(x))
                    .collect();
                attempted += 1;
                connect_tight(h, &v, &w, &avoid, h.order(), sub_seed)?.is_some()
            }
            Variant::Ell | Variant::Loose => {
                let need = if variant == Variant::Loose { 2 } else { 2 * l };
                if outside.len() < need {
                    continue;
                }
                let ends: Vec<usize> = outside.choose_multiple(&mut rng, need).copied().collect();
                let (x, y) = ends.split_at(need / 2);
                let avoid: Vec<usize> = h
                    .vertices()
                    .into_iter()
                    .filter(|v| !allowed.contains(v) && !ends.contains(v))
                    .collect();
                attempted += 1;
                if variant == Variant::Loose {
                    connect_loose(h, x[0], y[0], cx, cy, &avoid, sub_seed)?.is_some()
                } else {
                    connect_ell(h, l, x, y, cx, cy, &avoid, sub_seed)?.is_some()
                }
            }
        };
        successes += usize::from(found);
    }
    let (mut matching_trials, mut matching_ok) = (0, 0);
    if let (Variant::Loose, Some(g)) = (variant, g) {
        for _ in 0..trials {
            let mut u: Vec<usize> = r.to_vec();
            u.shuffle(&mut rng);
            u.truncate(r.len() - rng.random_range(0..=slack));
            let add = rng.random_range(0..=slack.min(outside.len()));
            u.extend(outside.choose_multiple(&mut rng, add).copied());
            if u.len() % 2 == 1 {
                if u.len() > r.len() - slack && !u.is_empty() {
                    u.pop();
                } else {
                    continue;
                }
            }
            let in_r = u.iter().filter(|v| rset.contains(v)).count();
            if r.len() - in_r > slack || u.len() - in_r > slack {
                continue;
            }
            matching_trials += 1;
            let min_ok = 2 * g.induced_min_degree(&u) >= u.len();
            if min_ok && perfect_matching(g, &u)?.is_some() {
                matching_ok += 1;
            }
        }
    }
    Ok(ReservoirReport {
        trials,
        attempted,
        successes,
        success_fraction: if trials == 0 {
            0.0
        } else {
            successes as f64 / trials as f64
        },
        matching_trials,
        matching_ok,
    })
}

/// Number of t-tuples of `[n]` (with repetition), used for family size estimates.
pub fn tuple_space(n: usize, t: usize) -> u128 {
    (n as u128).pow(t as u32)
}

/// Number of t-tuples of distinct elements of `[n]`.
pub fn distinct_tuple_space(n: usize, t: usize) -> u128 {
    binomial(n as u64, t as u64) * (1..=t as u128).product::<u128>()
}
