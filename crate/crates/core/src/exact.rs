//! Exhaustive backtracking oracle for properly colored Hamilton cycles and connecting paths.
//!
//! Sequences are built one vertex at a time. A window is checked as soon as its
//! last vertex is placed, against the earlier windows it can intersect; cycles
//! get a full all-pairs validation on completion. Running out of budget is a
//! separate outcome and never reported as "none".

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::error::{invalid, Result};
use crate::hypergraph::{ColorId, ColoredKGraph};
use crate::paths::{edges_properly_colored, KLCycle, KLPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, time_limit: Duration) -> Result<Self> {
        if max_nodes == 0 || time_limit.is_zero() {
            return Err(invalid("search budget must be positive"));
        }
        Ok(Self { max_nodes, time_limit })
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: 200_000_000,
            time_limit: Duration::from_secs(120),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome<T> {
    Found(T),
    None,
    BudgetExhausted,
}

impl<T> ExactOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Self::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            Self::Found(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountOutcome {
    Exact(u64),
    /// The partial count is a lower bound only and must not be used as an answer.
    BudgetExhausted {
        partial: u64,
    },
}

struct Meter {
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    out: bool,
}

impl Meter {
    fn new(budget: SearchBudget) -> Self {
        Self {
            nodes: 0,
            budget,
            start: Instant::now(),
            out: false,
        }
    }

    /// Counts one node; true once the budget is gone.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes & 0x3ff == 0 && self.start.elapsed() > self.budget.time_limit)
        {
            self.out = true;
        }
        self.out
    }
}

/// Sorted width-`k` window of `seq` starting at `start`, read cyclically.
fn window(seq: &[usize], start: usize, k: usize) -> Vec<usize> {
    let n = seq.len();
    let mut e: Vec<usize> = (0..k).map(|i| seq[(start + i) % n]).collect();
    e.sort_unstable();
    e
}

enum Mode {
    Find(Option<KLCycle>),
    Count(HashSet<Vec<usize>>),
}

struct HamSearch<'a> {
    h: &'a ColoredKGraph,
    k: usize,
    l: usize,
    step: usize,
    verts: Vec<usize>,
    vmin: usize,
    seq: Vec<usize>,
    used: Vec<bool>,
    colors: Vec<ColorId>,
    meter: Meter,
    mode: Mode,
}

impl HamSearch<'_> {
    fn done(&self) -> bool {
        self.meter.out || matches!(self.mode, Mode::Find(Some(_)))
    }

    fn dfs(&mut self) {
        let pos = self.seq.len();
        let total = self.verts.len();
        if pos == total {
            self.complete();
            return;
        }
        let vmin_placed = self.used[self.vmin];
        for idx in 0..total {
            let v = self.verts[idx];
            if self.used[v] {
                continue;
            }
            // Rotations by multiples of k-l fix the cycle: put the smallest vertex in the first block.
            if pos < self.step && pos == self.step - 1 && !vmin_placed && v != self.vmin {
                continue;
            }
            if self.meter.tick() {
                return;
            }
            self.seq.push(v);
            self.used[v] = true;
            let mut pushed = false;
            let ok = if pos + 1 >= self.k && (pos + 1 - self.k).is_multiple_of(self.step) {
                let j = (pos + 1 - self.k) / self.step;
                match self.window_color(j) {
                    Some(c) => {
                        self.colors.push(c);
                        pushed = true;
                        true
                    }
                    None => false,
                }
            } else {
                true
            };
            if ok {
                self.dfs();
            }
            if pushed {
                self.colors.pop();
            }
            self.used[v] = false;
            self.seq.pop();
            if self.done() {
                return;
            }
        }
    }

    /// Color of linear window `j` if it is an edge that clashes with no earlier window.
    fn window_color(&self, j: usize) -> Option<ColorId> {
        let e = window(&self.seq, j * self.step, self.k);
        let c = self.h.color_of(&e)?;
        let reach = (self.k - 1) / self.step;
        for i in j.saturating_sub(reach)..j {
            if self.colors[i] == c {
                return None;
            }
        }
        Some(c)
    }

    fn complete(&mut self) {
        let Ok(cycle) = KLCycle::new(self.k, self.l, self.seq.clone()) else {
            return;
        };
        let edges = cycle.edges();
        if !edges.iter().all(|e| self.h.has_edge(e)) {
            return;
        }
        if !edges_properly_colored(self.h, &edges).unwrap_or(false) {
            return;
        }
        match &mut self.mode {
            Mode::Find(slot) => *slot = Some(cycle),
            Mode::Count(set) => {
                let mut ids: Vec<usize> = edges.iter().map(|e| self.h.edge_id(e).unwrap()).collect();
                ids.sort_unstable();
                set.insert(ids);
            }
        }
    }
}

fn ham_search(h: &ColoredKGraph, l: usize, budget: SearchBudget, mode: Mode) -> Result<Option<HamSearch<'_>>> {
    let k = h.k();
    if l == 0 || l >= k {
        return Err(invalid(format!("l={l} outside 1..k")));
    }
    let verts = h.vertices();
    let n = verts.len();
    if !n.is_multiple_of(k - l) {
        return Err(invalid(format!("(k-l)={} does not divide n={n}", k - l)));
    }
    if KLCycle::new(k, l, (0..n).collect()).is_err() {
        return Ok(None);
    }
    let mut s = HamSearch {
        h,
        k,
        l,
        step: k - l,
        vmin: verts[0],
        verts,
        seq: Vec::with_capacity(n),
        used: vec![false; h.n()],
        colors: Vec::new(),
        meter: Meter::new(budget),
        mode,
    };
    s.dfs();
    Ok(Some(s))
}

/// Decides whether `H` has a properly colored Hamilton (k,l)-cycle.
pub fn find_pc_hamilton_exact(h: &ColoredKGraph, l: usize, budget: SearchBudget) -> Result<ExactOutcome<KLCycle>> {
    let Some(s) = ham_search(h, l, budget, Mode::Find(None))? else {
        return Ok(ExactOutcome::None);
    };
    Ok(match s.mode {
        Mode::Find(Some(c)) => ExactOutcome::Found(c),
        _ if s.meter.out => ExactOutcome::BudgetExhausted,
        _ => ExactOutcome::None,
    })
}

/// Number of distinct properly colored Hamilton (k,l)-cycles, a cycle being its edge set.
pub fn count_pc_hamilton(h: &ColoredKGraph, l: usize, budget: SearchBudget) -> Result<CountOutcome> {
    let Some(s) = ham_search(h, l, budget, Mode::Count(HashSet::new()))? else {
        return Ok(CountOutcome::Exact(0));
    };
    let Mode::Count(set) = s.mode else { unreachable!() };
    let c = set.len() as u64;
    Ok(if s.meter.out {
        CountOutcome::BudgetExhausted { partial: c }
    } else {
        CountOutcome::Exact(c)
    })
}

/// How one end of a connecting path is pinned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndSpec {
    /// The path starts (ends) with exactly this sequence.
    Tuple(Vec<usize>),
    /// The first (last) `|set|` vertices form this set, in any order.
    Set(Vec<usize>),
}

impl EndSpec {
    fn vertices(&self) -> &[usize] {
        match self {
            Self::Tuple(v) | Self::Set(v) => v,
        }
    }

    fn orderings(&self) -> Vec<Vec<usize>> {
        match self {
            Self::Tuple(v) => vec![v.clone()],
            Self::Set(v) => permutations(v),
        }
    }
}

pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    rec(&mut sorted, &mut Vec::new(), &mut out);
    out
}

/// A connecting-path query.
#[derive(Clone, Debug)]
pub struct PathQuery {
    pub l: usize,
    pub from: EndSpec,
    pub to: EndSpec,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub forbidden: Vec<usize>,
    /// The first edge must not have this color.
    pub first_color_not: Option<ColorId>,
    /// The last edge must not have this color.
    pub last_color_not: Option<ColorId>,
}

struct PathSearch<'a> {
    h: &'a ColoredKGraph,
    q: &'a PathQuery,
    k: usize,
    step: usize,
    free: Vec<usize>,
    seq: Vec<usize>,
    used: Vec<bool>,
    colors: Vec<ColorId>,
    tails: Vec<Vec<usize>>,
    target: usize,
    meter: Meter,
    found: Option<KLPath>,
}

impl PathSearch<'_> {
    fn dfs(&mut self) {
        if self.meter.out || self.found.is_some() {
            return;
        }
        let to_len = self.tails[0].len();
        if self.seq.len() + to_len == self.target {
            for t in 0..self.tails.len() {
                self.try_close(t);
                if self.found.is_some() {
                    return;
                }
            }
            return;
        }
        for i in 0..self.free.len() {
            let v = self.free[i];
            if self.used[v] {
                continue;
            }
            if self.meter.tick() {
                return;
            }
            self.seq.push(v);
            self.used[v] = true;
            let mut pushed = false;
            if let Some(ok) = self.check_new_window() {
                if let Some(c) = ok {
                    self.colors.push(c);
                    pushed = true;
                }
                self.dfs();
            }
            if pushed {
                self.colors.pop();
            }
            self.used[v] = false;
            self.seq.pop();
            if self.meter.out || self.found.is_some() {
                return;
            }
        }
    }

    /// `None` prunes; `Some(None)` means no window completed; `Some(Some(c))` records a color.
    fn check_new_window(&self) -> Option<Option<ColorId>> {
        let len = self.seq.len();
        if len < self.k || !(len - self.k).is_multiple_of(self.step) {
            return Some(None);
        }
        let j = (len - self.k) / self.step;
        let e = window(&self.seq[j * self.step..len], 0, self.k);
        let c = self.h.color_of(&e)?;
        if j == 0 && self.q.first_color_not == Some(c) {
            return None;
        }
        let reach = (self.k - 1) / self.step;
        if self.colors[j.saturating_sub(reach)..j].contains(&c) {
            return None;
        }
        Some(Some(c))
    }

    fn try_close(&mut self, t: usize) {
        let mut vs = self.seq.clone();
        vs.extend_from_slice(&self.tails[t]);
        let Ok(p) = KLPath::new(self.k, self.q.l, vs) else {
            return;
        };
        let edges = p.edges();
        let mut colors = Vec::with_capacity(edges.len());
        for e in &edges {
            match self.h.color_of(e) {
                Some(c) => colors.push(c),
                None => return,
            }
        }
        if self.q.first_color_not == Some(colors[0]) || self.q.last_color_not == Some(*colors.last().unwrap()) {
            return;
        }
        if edges_properly_colored(self.h, &edges).unwrap_or(false) {
            self.found = Some(p);
        }
    }
}

/// Shortest properly colored (k,l)-path matching `q`, by iterative deepening over the length.
pub fn find_pc_path_exact(h: &ColoredKGraph, q: &PathQuery, budget: SearchBudget) -> Result<ExactOutcome<KLPath>> {
    let k = h.k();
    let l = q.l;
    if l == 0 || l >= k {
        return Err(invalid(format!("l={l} outside 1..k")));
    }
    let from = q.from.vertices();
    let to = q.to.vertices();
    let mut ends: Vec<usize> = from.iter().chain(to).copied().collect();
    ends.sort_unstable();
    if ends.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("end specifications overlap"));
    }
    if from.is_empty() || to.is_empty() {
        return Err(invalid("end specifications must be nonempty"));
    }
    if ends.iter().any(|v| !h.is_active(*v) || q.forbidden.contains(v)) {
        return Ok(ExactOutcome::None);
    }
    let free: Vec<usize> = h
        .vertices()
        .into_iter()
        .filter(|v| ends.binary_search(v).is_err() && !q.forbidden.contains(v))
        .collect();
    let step = k - l;
    let mut meter = Meter::new(budget);
    let lo = q.min_vertices.max(ends.len()).max(k);
    let hi = q.max_vertices.min(ends.len() + free.len());
    for target in lo..=hi {
        if !(target - l).is_multiple_of(step) {
            continue;
        }
        for head in q.from.orderings() {
            let mut used = vec![false; h.n()];
            for &v in &head {
                used[v] = true;
            }
            let mut s = PathSearch {
                h,
                q,
                k,
                step,
                free: free.clone(),
                seq: Vec::new(),
                used,
                colors: Vec::new(),
                tails: q.to.orderings(),
                target,
                meter,
                found: None,
            };
            // Replay the fixed head so its completed windows are checked and recorded.
            let mut ok = true;
            for &v in &head {
                s.seq.push(v);
                match s.check_new_window() {
                    Some(Some(c)) => s.colors.push(c),
                    Some(None) => {}
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                s.dfs();
            }
            meter = s.meter;
            if let Some(p) = s.found {
                return Ok(ExactOutcome::Found(p));
            }
            if meter.out {
                return Ok(ExactOutcome::BudgetExhausted);
            }
        }
    }
    Ok(ExactOutcome::None)
}
