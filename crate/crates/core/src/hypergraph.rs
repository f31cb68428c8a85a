//! Edge-colored k-uniform hypergraphs and their degree statistics.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};

/// Opaque positive color label.
pub type ColorId = u32;

/// Largest supported uniformity; edge keys pack up to this many 16-bit labels.
pub const MAX_K: usize = 8;

/// Pack a vertex set into an order-independent key.
pub fn edge_key(vs: &[usize]) -> u128 {
    let mut buf = [0usize; MAX_K];
    let m = vs.len().min(MAX_K);
    buf[..m].copy_from_slice(&vs[..m]);
    buf[..m].sort_unstable();
    let mut key: u128 = 0;
    for &v in &buf[..m] {
        key = (key << 16) | (v as u128 + 1);
    }
    key
}

/// A k-uniform hypergraph `H` on labels `0..n` together with a coloring `phi`.
///
/// Vertices can be deactivated by [`ColoredKGraph::remove_vertices`]; labels
/// are never renumbered, so certificates found in a subgraph remain valid in
/// the host.
#[derive(Clone, Debug)]
pub struct ColoredKGraph {
    n: usize,
    k: usize,
    active: Vec<bool>,
    edges: Vec<Vec<usize>>,
    colors: Vec<ColorId>,
    index: HashMap<u128, usize>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for ColoredKGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n || self.k != other.k || self.active != other.active {
            return false;
        }
        if self.edges.len() != other.edges.len() {
            return false;
        }
        self.edges
            .iter()
            .zip(&self.colors)
            .all(|(e, &c)| other.color_of(e) == Some(c))
    }
}

/// Which theorem's hypotheses a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// l = k-1, codegree threshold 1/2.
    Tight,
    /// l < k/2, codegree threshold 1/(2(k-l)).
    Ell,
}

/// Achieved margins over the degree and coloring hypotheses.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub regime: Regime,
    /// `delta_{k-1}(H)/n` minus the regime's threshold.
    pub gamma_margin: f64,
    /// Largest per-color degree divided by the regime's normalizer.
    pub c_margin: f64,
    pub divisible: bool,
    /// For k=3, l=1: vertex-degree slack `delta_1/(n^2/2) - 7/16` and `max Delta_1(H_i)/n^2`.
    pub loose_vertex: Option<(f64, f64)>,
}

impl ColoredKGraph {
    /// Empty k-graph on `0..n`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if !(2..=MAX_K).contains(&k) {
            return Err(invalid(format!("uniformity k={k} outside 2..={MAX_K}")));
        }
        if n >= u16::MAX as usize {
            return Err(invalid(format!("n={n} too large")));
        }
        Ok(Self {
            n,
            k,
            active: vec![true; n],
            edges: Vec::new(),
            colors: Vec::new(),
            index: HashMap::new(),
            incidence: vec![Vec::new(); n],
        })
    }

    pub fn from_edges<I>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, ColorId)>,
    {
        let mut h = Self::new(n, k)?;
        for (e, c) in edges {
            h.add_edge(&e, c)?;
        }
        Ok(h)
    }

    /// Adds an edge and returns its id.
    pub fn add_edge(&mut self, vs: &[usize], color: ColorId) -> Result<usize> {
        if vs.len() != self.k {
            return Err(invalid(format!("edge {vs:?} does not have {} vertices", self.k)));
        }
        if color == 0 {
            return Err(invalid("colors must be positive"));
        }
        let mut e = vs.to_vec();
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid(format!("edge {vs:?} repeats a vertex")));
        }
        if let Some(&v) = e.iter().find(|&&v| v >= self.n || !self.active[v]) {
            return Err(invalid(format!("vertex {v} is not in the vertex set")));
        }
        let key = edge_key(&e);
        if self.index.contains_key(&key) {
            return Err(invalid(format!("duplicate edge {e:?}")));
        }
        let id = self.edges.len();
        for &v in &e {
            self.incidence[v].push(id);
        }
        self.index.insert(key, id);
        self.edges.push(e);
        self.colors.push(color);
        Ok(id)
    }

    /// Size of the label universe `0..n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of active vertices, `|V|`.
    pub fn order(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.active[v]).collect()
    }

    pub fn is_active(&self, v: usize) -> bool {
        v < self.n && self.active[v]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge `id` as a sorted vertex list.
    pub fn edge(&self, id: usize) -> &[usize] {
        &self.edges[id]
    }

    pub fn edge_color(&self, id: usize) -> ColorId {
        self.colors[id]
    }

    pub fn edges(&self) -> impl Iterator<Item = (&[usize], ColorId)> + '_ {
        self.edges.iter().map(|e| e.as_slice()).zip(self.colors.iter().copied())
    }

    pub fn edge_id(&self, vs: &[usize]) -> Option<usize> {
        if vs.len() != self.k {
            return None;
        }
        self.index.get(&edge_key(vs)).copied()
    }

    /// Color of the edge spanned by `vs` (any order), if present.
    pub fn color_of(&self, vs: &[usize]) -> Option<ColorId> {
        self.edge_id(vs).map(|id| self.colors[id])
    }

    pub fn has_edge(&self, vs: &[usize]) -> bool {
        self.edge_id(vs).is_some()
    }

    /// Ids of the edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Distinct colors in ascending order.
    pub fn color_set(&self) -> Vec<ColorId> {
        self.colors
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn check_set(&self, s: &[usize]) -> Result<()> {
        if let Some(&v) = s.iter().find(|&&v| !self.is_active(v)) {
            return Err(invalid(format!("unknown vertex {v}")));
        }
        let mut t = s.to_vec();
        t.sort_unstable();
        if t.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("set has repeated vertices"));
        }
        Ok(())
    }

    /// Number of edges containing `s`.
    pub fn degree(&self, s: &[usize]) -> Result<usize> {
        if s.len() >= self.k {
            return Err(invalid(format!("|S|={} must be below k={}", s.len(), self.k)));
        }
        self.check_set(s)?;
        if s.is_empty() {
            return Ok(self.edges.len());
        }
        let best = s.iter().min_by_key(|&&v| self.incidence[v].len()).copied().unwrap();
        Ok(self.incidence[best]
            .iter()
            .filter(|&&id| s.iter().all(|v| self.edges[id].binary_search(v).is_ok()))
            .count())
    }

    fn check_s(&self, s: usize) -> Result<()> {
        if s == 0 || s >= self.k {
            return Err(invalid(format!("s={s} outside 1..={}", self.k - 1)));
        }
        Ok(())
    }

    /// Degrees of every s-subset covered by at least one edge, optionally split by color.
    fn subset_degrees(&self, s: usize, by_color: bool) -> HashMap<(ColorId, u128), usize> {
        let mut counts = HashMap::new();
        let mut buf = Vec::with_capacity(s);
        for (id, e) in self.edges.iter().enumerate() {
            let c = if by_color { self.colors[id] } else { 0 };
            for_each_subset(e, s, &mut buf, &mut |sub| {
                *counts.entry((c, edge_key(sub))).or_insert(0) += 1;
            });
        }
        counts
    }

    /// `delta_s(H)`: the minimum degree over all s-subsets of `V`.
    pub fn min_s_degree(&self, s: usize) -> Result<usize> {
        self.check_s(s)?;
        let counts = self.subset_degrees(s, false);
        let total = binomial(self.order() as u64, s as u64);
        if (counts.len() as u128) < total {
            return Ok(0);
        }
        Ok(counts.values().copied().min().unwrap_or(0))
    }

    /// `Delta_s(H)`: the maximum degree over all s-subsets of `V`.
    pub fn max_s_degree(&self, s: usize) -> Result<usize> {
        self.check_s(s)?;
        Ok(self.subset_degrees(s, false).values().copied().max().unwrap_or(0))
    }

    /// `max_i Delta_s(H_i)`.
    pub fn max_s_degree_per_color(&self, s: usize) -> Result<usize> {
        self.check_s(s)?;
        Ok(self.subset_degrees(s, true).values().copied().max().unwrap_or(0))
    }

    /// `H_i`: same vertex set, only the edges of color `i`.
    pub fn color_class(&self, i: ColorId) -> Self {
        self.filtered(|_, c| c == i, &self.active)
    }

    /// `H - Q`: deactivates `Q` and drops every edge meeting it. Labels are kept.
    pub fn remove_vertices(&self, q: &[usize]) -> Self {
        let mut active = self.active.clone();
        for &v in q {
            if v < self.n {
                active[v] = false;
            }
        }
        self.filtered(|e, _| e.iter().all(|&v| active[v]), &active)
    }

    fn filtered<F: Fn(&[usize], ColorId) -> bool>(&self, keep: F, active: &[bool]) -> Self {
        let mut h = Self {
            n: self.n,
            k: self.k,
            active: active.to_vec(),
            edges: Vec::new(),
            colors: Vec::new(),
            index: HashMap::new(),
            incidence: vec![Vec::new(); self.n],
        };
        for (e, c) in self.edges() {
            if keep(e, c) {
                h.add_edge(e, c).expect("subgraph edge is valid");
            }
        }
        h
    }

    /// Measures the slack of `H` over the degree and coloring hypotheses for `(k, l)`.
    pub fn check_hypotheses(&self, l: usize) -> Result<HypothesisReport> {
        let k = self.k;
        if l == 0 || l >= k {
            return Err(invalid(format!("l={l} outside 1..={}", k - 1)));
        }
        let regime = if l == k - 1 {
            Regime::Tight
        } else if 2 * l < k {
            Regime::Ell
        } else {
            return Err(Error::UnsupportedRegime { k, l });
        };
        let n = self.order();
        let nf = n.max(1) as f64;
        let codeg = self.min_s_degree(k - 1)? as f64 / nf;
        let (gamma_margin, c_margin) = match regime {
            Regime::Tight => (codeg - 0.5, self.max_s_degree_per_color(k - 1)? as f64 / nf),
            Regime::Ell => (
                codeg - 1.0 / (2.0 * (k - l) as f64),
                self.max_s_degree_per_color(l)? as f64 / nf.powi((k - l) as i32),
            ),
        };
        let loose_vertex = if k == 3 && l == 1 {
            let half_sq = nf * nf / 2.0;
            Some((
                self.min_s_degree(1)? as f64 / half_sq - 7.0 / 16.0,
                self.max_s_degree_per_color(1)? as f64 / (nf * nf),
            ))
        } else {
            None
        };
        Ok(HypothesisReport {
            k,
            l,
            n,
            regime,
            gamma_margin,
            c_margin,
            divisible: n.is_multiple_of(k - l),
            loose_vertex,
        })
    }

    /// Parses the instance text format: header `n k`, then `v1 .. vk color` per line.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        let nums = parse_nums(hline, header)?;
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be `n k`".into(),
            });
        }
        let mut h = Self::new(nums[0], nums[1]).map_err(|e| Error::Parse {
            line: hline,
            msg: e.to_string(),
        })?;
        for (line, text) in lines {
            let nums = parse_nums(line, text)?;
            if nums.len() != h.k + 1 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {} vertices and a color", h.k),
                });
            }
            let color = ColorId::try_from(nums[h.k]).map_err(|_| Error::Parse {
                line,
                msg: "color out of range".into(),
            })?;
            h.add_edge(&nums[..h.k], color).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(h)
    }

    /// Serializes to the instance text format, edges in ascending lexicographic order.
    pub fn to_text(&self) -> String {
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by(|&a, &b| self.edges[a].cmp(&self.edges[b]));
        let mut out = format!("{} {}\n", self.n, self.k);
        for id in order {
            for v in &self.edges[id] {
                let _ = write!(out, "{v} ");
            }
            let _ = writeln!(out, "{}", self.colors[id]);
        }
        out
    }
}

fn parse_nums(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("`{t}` is not a non-negative integer"),
            })
        })
        .collect()
}

/// Calls `f` on every `s`-subset of the sorted slice `items`, in lexicographic order.
pub fn for_each_subset<F: FnMut(&[usize])>(items: &[usize], s: usize, buf: &mut Vec<usize>, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(items: &[usize], start: usize, s: usize, buf: &mut Vec<usize>, f: &mut F) {
        if buf.len() == s {
            f(buf);
            return;
        }
        let need = s - buf.len();
        for i in start..=items.len().saturating_sub(need) {
            if i >= items.len() {
                break;
            }
            buf.push(items[i]);
            rec(items, i + 1, s, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    if s <= items.len() {
        rec(items, 0, s, buf, f);
    }
}

/// All `s`-subsets of `items` in lexicographic order.
pub fn subsets(items: &[usize], s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    for_each_subset(items, s, &mut buf, &mut |sub| out.push(sub.to_vec()));
    out
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}
