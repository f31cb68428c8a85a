//! (k,l)-paths and cycles: structure, proper-coloring checks, ends, splicing.

use std::collections::HashSet;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::ColoredKGraph;

fn check_kl(k: usize, l: usize) -> Result<()> {
    if k < 2 || l == 0 || l >= k {
        return Err(invalid(format!("need 1 <= l < k, got k={k}, l={l}")));
    }
    Ok(())
}

fn all_distinct(vs: &[usize]) -> bool {
    let mut seen = HashSet::with_capacity(vs.len());
    vs.iter().all(|v| seen.insert(*v))
}

/// A (k,l)-path stored as one fixed vertex ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KLPath {
    pub k: usize,
    pub l: usize,
    pub vertices: Vec<usize>,
}

/// A (k,l)-cycle stored as one cyclic vertex ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KLCycle {
    pub k: usize,
    pub l: usize,
    pub vertices: Vec<usize>,
}

/// The l-ends and, for tight paths, the two end-paths of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ends {
    pub ell_ends: (Vec<usize>, Vec<usize>),
    pub end_paths: Option<(Vec<usize>, Vec<usize>)>,
}

impl KLPath {
    /// Builds a path after checking the length and distinctness invariants.
    pub fn new(k: usize, l: usize, vertices: Vec<usize>) -> Result<Self> {
        check_kl(k, l)?;
        let s = vertices.len();
        if s < k || !(s - l).is_multiple_of(k - l) {
            return Err(Error::InvalidPath(format!(
                "{s} vertices is not l + j(k-l) with j >= 1 for k={k}, l={l}"
            )));
        }
        if !all_distinct(&vertices) {
            return Err(Error::InvalidPath("repeated vertex".into()));
        }
        Ok(Self { k, l, vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        (self.vertices.len() - self.l) / (self.k - self.l)
    }

    /// Edges in path order, each as a sorted vertex list.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        let step = self.k - self.l;
        (0..self.edge_count())
            .map(|j| {
                let mut e = self.vertices[j * step..j * step + self.k].to_vec();
                e.sort_unstable();
                e
            })
            .collect()
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self {
            k: self.k,
            l: self.l,
            vertices,
        }
    }

    pub fn ell_ends(&self) -> (Vec<usize>, Vec<usize>) {
        let s = self.vertices.len();
        (self.vertices[..self.l].to_vec(), self.vertices[s - self.l..].to_vec())
    }

    /// First and last `2k-2` vertices, in path order. Tight paths only.
    pub fn end_paths(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        if self.l != self.k - 1 {
            return Err(invalid("end-paths are defined for tight paths only"));
        }
        let w = 2 * self.k - 2;
        let s = self.vertices.len();
        if s < w {
            return Err(Error::TooShort(format!("{s} vertices, end-paths need {w}")));
        }
        Ok((self.vertices[..w].to_vec(), self.vertices[s - w..].to_vec()))
    }

    pub fn ends(&self) -> Result<Ends> {
        let end_paths = if self.l == self.k - 1 {
            Some(self.end_paths()?)
        } else {
            None
        };
        Ok(Ends {
            ell_ends: self.ell_ends(),
            end_paths,
        })
    }
}

impl KLCycle {
    pub fn new(k: usize, l: usize, vertices: Vec<usize>) -> Result<Self> {
        check_kl(k, l)?;
        let n = vertices.len();
        if n < k || !n.is_multiple_of(k - l) {
            return Err(Error::InvalidCycle(format!("(k-l)={} does not divide {n}", k - l)));
        }
        if !all_distinct(&vertices) {
            return Err(Error::InvalidCycle("repeated vertex".into()));
        }
        let c = Self { k, l, vertices };
        let edges = c.edges();
        let m = edges.len();
        let mut seen = HashSet::new();
        for (j, e) in edges.iter().enumerate() {
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidCycle("two windows span the same edge".into()));
            }
            let next = &edges[(j + 1) % m];
            let shared = e.iter().filter(|v| next.binary_search(v).is_ok()).count();
            if shared != l {
                return Err(Error::InvalidCycle(format!(
                    "consecutive edges share {shared} vertices instead of {l}"
                )));
            }
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The `n/(k-l)` cyclic windows, each sorted.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let step = self.k - self.l;
        (0..n / step)
            .map(|j| {
                let mut e: Vec<usize> = (0..self.k).map(|i| self.vertices[(j * step + i) % n]).collect();
                e.sort_unstable();
                e
            })
            .collect()
    }
}

/// Anything with an ordered edge list.
pub trait EdgeSequence {
    fn edge_list(&self) -> Vec<Vec<usize>>;
}

impl EdgeSequence for KLPath {
    fn edge_list(&self) -> Vec<Vec<usize>> {
        self.edges()
    }
}

impl EdgeSequence for KLCycle {
    fn edge_list(&self) -> Vec<Vec<usize>> {
        self.edges()
    }
}

pub fn path_edges(p: &KLPath) -> Result<Vec<Vec<usize>>> {
    KLPath::new(p.k, p.l, p.vertices.clone())?;
    Ok(p.edges())
}

pub fn cycle_edges(c: &KLCycle) -> Result<Vec<Vec<usize>>> {
    check_kl(c.k, c.l)?;
    if c.vertices.is_empty() || !c.vertices.len().is_multiple_of(c.k - c.l) {
        return Err(Error::InvalidCycle(format!(
            "(k-l)={} does not divide {}",
            c.k - c.l,
            c.vertices.len()
        )));
    }
    Ok(c.edges())
}

/// True iff every two intersecting edges of `x` get different colors.
/// An edge of `x` missing from `h` is an error, not `false`.
pub fn is_properly_colored<X: EdgeSequence + ?Sized>(h: &ColoredKGraph, x: &X) -> Result<bool> {
    edges_properly_colored(h, &x.edge_list())
}

/// Proper-coloring check on an explicit edge list (all pairs).
pub fn edges_properly_colored(h: &ColoredKGraph, edges: &[Vec<usize>]) -> Result<bool> {
    let colors = edges
        .iter()
        .map(|e| h.color_of(e).ok_or_else(|| Error::MissingEdge(e.clone())))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if colors[i] == colors[j] && edges[i].iter().any(|v| edges[j].binary_search(v).is_ok()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Concatenates `p1`, `connector`, `p2` and checks the result is a valid path.
pub fn splice(p1: &KLPath, connector: &[usize], p2: &KLPath) -> Result<KLPath> {
    if p1.k != p2.k || p1.l != p2.l {
        return Err(Error::SpliceInvalid("paths have different (k,l)".into()));
    }
    let mut vs = p1.vertices.clone();
    vs.extend_from_slice(connector);
    vs.extend_from_slice(&p2.vertices);
    if !all_distinct(&vs) {
        return Err(Error::SpliceInvalid("pieces are not vertex-disjoint".into()));
    }
    KLPath::new(p1.k, p1.l, vs).map_err(|e| Error::SpliceInvalid(e.to_string()))
}

/// True iff `c` spans exactly `V(H)`, all its edges are in `H`, and `(k-l) | n`.
pub fn is_hamilton(h: &ColoredKGraph, c: &KLCycle) -> bool {
    if c.k != h.k() || c.l == 0 || c.l >= c.k {
        return false;
    }
    let mut vs = c.vertices.clone();
    vs.sort_unstable();
    if vs != h.vertices() || !vs.len().is_multiple_of(c.k - c.l) {
        return false;
    }
    match KLCycle::new(c.k, c.l, c.vertices.clone()) {
        Ok(c) => c.edges().iter().all(|e| h.has_edge(e)),
        Err(_) => false,
    }
}

/// A line of the certificate format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Path(KLPath),
    Cycle(KLCycle),
}

impl Certificate {
    pub fn parse_line(line: &str) -> Result<Self> {
        let mut it = line.split_whitespace();
        let kind = it.next().ok_or_else(|| invalid("empty certificate"))?;
        let nums = it
            .map(|t| t.parse::<usize>().map_err(|_| invalid(format!("bad number `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if nums.len() < 2 {
            return Err(invalid("certificate needs k and l"));
        }
        let (k, l, vs) = (nums[0], nums[1], nums[2..].to_vec());
        match kind {
            "PATH" => Ok(Self::Path(KLPath::new(k, l, vs)?)),
            "CYCLE" => Ok(Self::Cycle(KLCycle::new(k, l, vs)?)),
            other => Err(invalid(format!("unknown certificate kind `{other}`"))),
        }
    }

    /// Parses every non-blank, non-comment line.
    pub fn parse_all(text: &str) -> Result<Vec<Self>> {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|(i, l)| {
                Self::parse_line(l).map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })
            })
            .collect()
    }

    pub fn edge_list(&self) -> Vec<Vec<usize>> {
        match self {
            Self::Path(p) => p.edges(),
            Self::Cycle(c) => c.edges(),
        }
    }
}

impl EdgeSequence for Certificate {
    fn edge_list(&self) -> Vec<Vec<usize>> {
        Certificate::edge_list(self)
    }
}

fn write_seq(f: &mut fmt::Formatter<'_>, tag: &str, k: usize, l: usize, vs: &[usize]) -> fmt::Result {
    write!(f, "{tag} {k} {l}")?;
    for v in vs {
        write!(f, " {v}")?;
    }
    Ok(())
}

impl fmt::Display for KLPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_seq(f, "PATH", self.k, self.l, &self.vertices)
    }
}

impl fmt::Display for KLCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_seq(f, "CYCLE", self.k, self.l, &self.vertices)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Path(p) => p.fmt(f),
            Self::Cycle(c) => c.fmt(f),
        }
    }
}
