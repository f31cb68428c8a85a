//! Properly colored path covers.
//!
//! `grow_dense_path` and `grow_canonical_path` follow the two path-growing
//! arguments for dense k-partite hosts: prune low-degree sets, then extend a
//! longest path greedily. `greedy_path_cover` is the global cover used by the
//! pipeline, and `perfect_matching` drives loose-case absorption.

use std::collections::{HashMap, HashSet};

use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;
use rand::seq::{IndexedRandom, SliceRandom};

use crate::error::{invalid, Error, Result};
use crate::graph::SimpleGraph;
use crate::hypergraph::{edge_key, subsets, ColorId, ColoredKGraph};
use crate::paths::{edges_properly_colored, KLPath};
use crate::rng::seeded;

/// Result of a dense path-growing run.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePath {
    pub path: KLPath,
    /// Edges removed by the pruning phase.
    pub deleted: usize,
    /// Whether the claim's hypotheses hold on the input.
    pub hypothesis_holds: bool,
    /// The length the claim promises under its hypotheses.
    pub promised: f64,
}

/// Part index of every vertex; checks that each edge meets each part once.
fn part_map(j: &ColoredKGraph, parts: &[Vec<usize>]) -> Result<(HashMap<usize, usize>, usize)> {
    if parts.len() != j.k() {
        return Err(invalid(format!("need {} parts, got {}", j.k(), parts.len())));
    }
    let mut of = HashMap::new();
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            if of.insert(v, i).is_some() {
                return Err(invalid(format!("vertex {v} lies in two parts")));
            }
        }
    }
    for (e, _) in j.edges() {
        let mut seen = vec![false; j.k()];
        for v in e {
            match of.get(v) {
                Some(&i) if !seen[i] => seen[i] = true,
                _ => return Err(invalid(format!("edge {e:?} is not transversal to the parts"))),
            }
        }
    }
    let m = parts.iter().map(Vec::len).max().unwrap_or(0);
    Ok((of, m))
}

/// Iteratively deletes every edge through a tracked set whose current degree is
/// positive but below `threshold`. Returns the surviving edge mask and the count
/// of deleted edges.
fn prune(j: &ColoredKGraph, tracked: impl Fn(&[usize]) -> Vec<Vec<usize>>, threshold: f64) -> (Vec<bool>, usize) {
    let mut alive = vec![true; j.edge_count()];
    let mut through: HashMap<u128, Vec<usize>> = HashMap::new();
    let mut sets_of: Vec<Vec<u128>> = Vec::with_capacity(j.edge_count());
    for id in 0..j.edge_count() {
        let keys: Vec<u128> = tracked(j.edge(id)).iter().map(|s| edge_key(s)).collect();
        for &key in &keys {
            through.entry(key).or_default().push(id);
        }
        sets_of.push(keys);
    }
    let mut degree: HashMap<u128, usize> = through.iter().map(|(k, v)| (*k, v.len())).collect();
    let mut queue: Vec<u128> = degree
        .iter()
        .filter(|(_, &d)| d > 0 && (d as f64) < threshold)
        .map(|(k, _)| *k)
        .collect();
    let mut deleted = 0;
    while let Some(key) = queue.pop() {
        let d = degree[&key];
        if d == 0 || d as f64 >= threshold {
            continue;
        }
        for &id in &through[&key] {
            if !alive[id] {
                continue;
            }
            alive[id] = false;
            deleted += 1;
            for other in &sets_of[id] {
                let od = degree.get_mut(other).unwrap();
                *od -= 1;
                if *od > 0 && (*od as f64) < threshold {
                    queue.push(*other);
                }
            }
        }
    }
    (alive, deleted)
}

/// Greedy extension over the surviving edges: for each end set `S`, the
/// candidates are surviving edges through `S` whose other vertices are fresh.
struct Grower<'a> {
    j: &'a ColoredKGraph,
    alive: &'a [bool],
    k: usize,
    l: usize,
}

impl Grower<'_> {
    fn candidates(&self, end: &[usize], on_path: &HashSet<usize>) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .j
            .incident(end[0])
            .iter()
            .copied()
            .filter(|&id| self.alive[id])
            .filter(|&id| {
                let e = self.j.edge(id);
                end.iter().all(|v| e.contains(v)) && e.iter().all(|v| end.contains(v) || !on_path.contains(v))
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn window_colors(&self, path: &[usize], count: usize) -> Vec<ColorId> {
        let step = self.k - self.l;
        let edges = (path.len() - self.l) / step;
        (edges.saturating_sub(count)..edges)
            .filter_map(|i| self.j.color_of(&path[i * step..i * step + self.k]))
            .collect()
    }
}

/// Grows a properly colored tight path in a k-partite host with the given parts.
///
/// Relevant (k-1)-sets of degree below `dm/k` lose all their edges, repeatedly.
/// A longest path is then grown greedily from every surviving edge (both
/// directions), each step avoiding the colors of the last k-1 edges.
pub fn grow_dense_path(j: &ColoredKGraph, parts: &[Vec<usize>], d: f64) -> Result<DensePath> {
    let k = j.k();
    if k < 2 {
        return Err(invalid("need k >= 2"));
    }
    let (of, m) = part_map(j, parts)?;
    let mf = m as f64;
    let (alive, deleted) = prune(j, |e| subsets(e, k - 1), d * mf / k as f64);
    let hypothesis_holds = j.edge_count() as f64 >= d * mf.powi(k as i32)
        && per_color_max(j, k - 1)? as f64 <= d * mf / (2 * k * k) as f64;
    if !alive.iter().any(|&a| a) {
        return Err(Error::ContradictionFlag("no edges survive the pruning phase".into()));
    }
    let g = Grower {
        j,
        alive: &alive,
        k,
        l: k - 1,
    };
    // The next vertex must sit in the part of the vertex k places back.
    let order = |end: &[usize], fresh: &[usize]| -> Option<Vec<usize>> {
        let used: HashSet<usize> = end.iter().map(|v| of[v]).collect();
        (fresh.len() == 1 && !used.contains(&of[&fresh[0]])).then(|| fresh.to_vec())
    };
    let color_ok = |p: &[usize], c: ColorId| !g.window_colors(&p[..p.len() - 1], k - 1).contains(&c);
    let mut best: Vec<usize> = Vec::new();
    for id in (0..j.edge_count()).filter(|&id| alive[id]) {
        let mut path = j.edge(id).to_vec();
        path.sort_by_key(|v| of[v]);
        extend_avoiding(&g, &mut path, &HashSet::new(), &order, &color_ok);
        path.reverse();
        extend_avoiding(&g, &mut path, &HashSet::new(), &order, &color_ok);
        if path.len() > best.len() {
            best = path;
        }
        if best.len() == of.len() {
            break;
        }
    }
    let path = KLPath::new(k, k - 1, best)?;
    debug_assert!(edges_properly_colored(j, &path.edges())?);
    Ok(DensePath {
        path,
        deleted,
        hypothesis_holds,
        promised: d * mf / 2.0,
    })
}

fn per_color_max(j: &ColoredKGraph, s: usize) -> Result<usize> {
    j.max_s_degree_per_color(s)
}

/// True if `path` is canonical for `parts` with boundary width `l`: interior
/// vertices sit in the first or last `l` parts exactly when they have degree 2.
/// The l-ends have degree 1 and must lie in boundary parts.
pub fn is_canonical(path: &KLPath, parts: &[Vec<usize>]) -> bool {
    let (k, l) = (path.k, path.l);
    let part = |v: usize| parts.iter().position(|p| p.contains(&v));
    let boundary = |v: usize| part(v).is_some_and(|i| i < l || i >= k - l);
    let step = k - l;
    let s = path.vertices.len();
    path.vertices.iter().enumerate().all(|(i, &v)| {
        let end = i < l || i >= s - l;
        let in_overlap = (i % step) < l;
        if end {
            boundary(v)
        } else {
            boundary(v) == in_overlap
        }
    })
}

/// Grows a properly colored canonical (k,l)-path, `l < k/2`, in a k-partite host.
///
/// The l-sets transversal to the first `l` parts, and those transversal to the
/// last `l` parts, are pruned to degree 0 or at least `dm^{k-l}/2`. Extension then
/// alternates the shared l-sets between the two boundary groups and only has to
/// avoid the color of the last edge.
pub fn grow_canonical_path(j: &ColoredKGraph, parts: &[Vec<usize>], l: usize, d: f64) -> Result<DensePath> {
    let k = j.k();
    if l == 0 || 2 * l >= k {
        return Err(invalid("canonical paths need 1 <= l < k/2"));
    }
    let (of, m) = part_map(j, parts)?;
    let mf = m as f64;
    let group = |v: usize| -> u8 {
        let i = of[&v];
        if i < l {
            0
        } else if i >= k - l {
            2
        } else {
            1
        }
    };
    let tracked = |e: &[usize]| -> Vec<Vec<usize>> {
        let a: Vec<usize> = e.iter().copied().filter(|&v| group(v) == 0).collect();
        let b: Vec<usize> = e.iter().copied().filter(|&v| group(v) == 2).collect();
        vec![a, b]
    };
    let (alive, deleted) = prune(j, tracked, d * mf.powi((k - l) as i32) / 2.0);
    let hypothesis_holds = j.edge_count() as f64 >= d * mf.powi(k as i32)
        && per_color_max(j, l)? as f64 <= d * mf.powi((k - l) as i32) / 4.0;
    if !alive.iter().any(|&a| a) {
        return Err(Error::ContradictionFlag("no edges survive the pruning phase".into()));
    }
    let g = Grower { j, alive: &alive, k, l };
    // The shared end set is one boundary group; the new edge brings the middle
    // parts and the other boundary group, in part order.
    let order = |end: &[usize], fresh: &[usize]| -> Option<Vec<usize>> {
        let from = group(end[0]);
        if end.iter().any(|&v| group(v) != from) || from == 1 {
            return None;
        }
        let mut mid: Vec<usize> = fresh.iter().copied().filter(|&v| group(v) == 1).collect();
        let mut far: Vec<usize> = fresh.iter().copied().filter(|&v| group(v) == 2 - from).collect();
        mid.sort_by_key(|v| of[v]);
        far.sort_by_key(|v| of[v]);
        mid.extend(far);
        Some(mid)
    };
    let color_ok = |p: &[usize], c: ColorId| !g.window_colors(&p[..p.len() - (k - l)], 1).contains(&c);
    let mut best: Vec<usize> = Vec::new();
    for id in (0..j.edge_count()).filter(|&id| alive[id]) {
        let mut path = j.edge(id).to_vec();
        path.sort_by_key(|v| of[v]);
        extend_avoiding(&g, &mut path, &HashSet::new(), &order, &color_ok);
        path.reverse();
        extend_avoiding(&g, &mut path, &HashSet::new(), &order, &color_ok);
        if path.len() > best.len() {
            best = path;
        }
        if best.len() == of.len() {
            break;
        }
    }
    let path = KLPath::new(k, l, best)?;
    debug_assert!(edges_properly_colored(j, &path.edges())?);
    Ok(DensePath {
        path,
        deleted,
        hypothesis_holds,
        promised: d * mf / 4.0,
    })
}

/// A family of disjoint properly colored paths and what they leave uncovered.
#[derive(Clone, Debug, PartialEq)]
pub struct Cover {
    pub paths: Vec<KLPath>,
    pub uncovered: Vec<usize>,
    /// The uncovered count still exceeds `delta n`.
    pub shortfall: bool,
}

pub const DEFAULT_MIN_EDGES: usize = 3;
const STARTS_PER_PATH: usize = 8;

/// Covers `H` greedily by at most `q` disjoint pc (k,l)-paths.
///
/// Each round grows several maximal paths from random uncovered starts and keeps
/// the longest; paths with fewer than `min_edges` edges are discarded and their
/// start retired. Stops once at most `delta n` vertices are uncovered, `q` paths
/// exist, or no start is left.
pub fn greedy_path_cover(
    h: &ColoredKGraph,
    l: usize,
    delta: f64,
    q: usize,
    min_edges: usize,
    seed: u64,
) -> Result<Cover> {
    let k = h.k();
    if l == 0 || l >= k {
        return Err(invalid("need 1 <= l <= k-1"));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(invalid("delta must lie in [0,1]"));
    }
    let mut rng = seeded(seed);
    let n = h.order();
    let target = delta * n as f64;
    let mut covered: HashSet<usize> = HashSet::new();
    let mut live: Vec<usize> = h.vertices();
    let mut paths = Vec::new();
    let alive = vec![true; h.edge_count()];
    let g = Grower {
        j: h,
        alive: &alive,
        k,
        l,
    };
    let step = k - l;
    // A new edge can meet the previous ceil((k-1)/(k-l)) edges.
    let reach = (k - 1).div_ceil(step);
    while ((n - covered.len()) as f64) > target && paths.len() < q && !live.is_empty() {
        let mut best: Option<Vec<usize>> = None;
        let mut tried = Vec::new();
        for _ in 0..STARTS_PER_PATH {
            let Some(&v) = live.choose(&mut rng) else { break };
            tried.push(v);
            let starts: Vec<usize> = h
                .incident(v)
                .iter()
                .copied()
                .filter(|&id| h.edge(id).iter().all(|u| !covered.contains(u)))
                .collect();
            let Some(&id) = starts.choose(&mut rng) else { continue };
            let mut path = h.edge(id).to_vec();
            path.shuffle(&mut rng);
            let order = |_: &[usize], fresh: &[usize]| Some(fresh.to_vec());
            let color_ok = |p: &[usize], c: ColorId| {
                let newest = &p[p.len() - k..];
                let es = (p.len() - l) / step;
                (es.saturating_sub(reach + 1)..es - 1).all(|i| {
                    let e = &p[i * step..i * step + k];
                    h.color_of(e) != Some(c) || !e.iter().any(|x| newest.contains(x))
                })
            };
            extend_avoiding(&g, &mut path, &covered, &order, &color_ok);
            path.reverse();
            extend_avoiding(&g, &mut path, &covered, &order, &color_ok);
            if best.as_ref().is_none_or(|b| path.len() > b.len()) {
                best = Some(path);
            }
        }
        match best {
            Some(p) if (p.len() - l) / step >= min_edges.max(1) => {
                let kp = KLPath::new(k, l, p)?;
                if !edges_properly_colored(h, &kp.edges())? {
                    return Err(Error::Internal("cover produced an improperly colored path".into()));
                }
                covered.extend(kp.vertices.iter().copied());
                live.retain(|v| !covered.contains(v));
                paths.push(kp);
            }
            _ => live.retain(|v| !tried.contains(v)),
        }
    }
    let uncovered: Vec<usize> = h.vertices().into_iter().filter(|v| !covered.contains(v)).collect();
    let shortfall = uncovered.len() as f64 > target;
    Ok(Cover {
        paths,
        uncovered,
        shortfall,
    })
}

/// Arranges the new vertices of an edge given the current path, or rejects the edge.
type Arrange<'a> = dyn Fn(&[usize], &[usize]) -> Option<Vec<usize>> + 'a;

/// Extends `path` forward while possible, treating `blocked` vertices as used.
/// `order` arranges the new vertices (or rejects the edge); `color_ok` sees the
/// extended path and the new edge's color.
fn extend_avoiding(
    g: &Grower,
    path: &mut Vec<usize>,
    blocked: &HashSet<usize>,
    order: &Arrange<'_>,
    color_ok: &dyn Fn(&[usize], ColorId) -> bool,
) {
    let mut on: HashSet<usize> = blocked.clone();
    on.extend(path.iter().copied());
    loop {
        let end = path[path.len() - g.l..].to_vec();
        let mut next = None;
        for id in g.candidates(&end, &on) {
            let c = g.j.edge_color(id);
            let fresh: Vec<usize> = g.j.edge(id).iter().copied().filter(|v| !end.contains(v)).collect();
            let Some(o) = order(&end, &fresh) else { continue };
            let mut trial = path.clone();
            trial.extend(o.iter().copied());
            if color_ok(&trial, c) {
                next = Some(o);
                break;
            }
        }
        match next {
            Some(o) => {
                on.extend(o.iter().copied());
                path.extend(o);
            }
            None => return,
        }
    }
}

/// A perfect matching of `G[U]`, or `None` if there is none.
pub fn perfect_matching(g: &SimpleGraph, u: &[usize]) -> Result<Option<Vec<(usize, usize)>>> {
    if u.len() % 2 == 1 {
        return Err(invalid("perfect matching needs |U| even"));
    }
    if u.iter().any(|&v| v >= g.n()) || u.iter().collect::<HashSet<_>>().len() != u.len() {
        return Err(invalid("U must be distinct vertices of G"));
    }
    let mut pg = UnGraph::<usize, ()>::new_undirected();
    let idx: Vec<_> = u.iter().map(|&v| pg.add_node(v)).collect();
    for a in 0..u.len() {
        for b in a + 1..u.len() {
            if g.has_edge(u[a], u[b]) {
                pg.add_edge(idx[a], idx[b], ());
            }
        }
    }
    let m = maximum_matching(&pg);
    if !m.is_perfect() {
        return Ok(None);
    }
    let mut out: Vec<(usize, usize)> = m
        .edges()
        .map(|(a, b)| {
            let (x, y) = (pg[a], pg[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    Ok(Some(out))
}
