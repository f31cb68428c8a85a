//! Short properly colored connecting paths and the chaining of many paths into one.
//!
//! The tight case searches the auxiliary directed (2k-1)-graph whose edges are the
//! pc tight paths on 2k-1 vertices read in a fixed direction. That graph is never
//! materialized: neighbors are generated from `(H, phi)` on demand.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{ColorId, ColoredKGraph};
use crate::paths::{edges_properly_colored, KLCycle, KLPath};
use crate::rng::seeded;

/// The auxiliary directed (2k-1)-graph of `(H, phi)` with the vertices of `V'` removed.
pub struct DirectedAux<'a> {
    h: &'a ColoredKGraph,
    excluded: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuxDegrees {
    pub d_plus: usize,
    pub d_minus: usize,
    pub d_pm: usize,
    pub extendable: bool,
}

impl<'a> DirectedAux<'a> {
    pub fn new(h: &'a ColoredKGraph, excluded: &[usize]) -> Self {
        let mut ex = vec![false; h.n()];
        for &v in excluded {
            if v < ex.len() {
                ex[v] = true;
            }
        }
        Self { h, excluded: ex }
    }

    fn usable(&self, v: usize) -> bool {
        self.h.is_active(v) && !self.excluded[v]
    }

    /// True iff `t` is a (2k-1)-tuple of usable distinct vertices whose k windows
    /// are edges of `H` with pairwise distinct colors.
    pub fn is_edge(&self, t: &[usize]) -> bool {
        let k = self.h.k();
        if t.len() != 2 * k - 1 || !t.iter().all(|&v| self.usable(v)) {
            return false;
        }
        let mut seen = HashSet::new();
        if !t.iter().all(|v| seen.insert(*v)) {
            return false;
        }
        let mut colors: Vec<ColorId> = Vec::with_capacity(k);
        for i in 0..k {
            match self.h.color_of(&t[i..i + k]) {
                Some(c) if !colors.contains(&c) => colors.push(c),
                _ => return false,
            }
        }
        true
    }
}

/// `d+`, `d-`, `d+-` of a (2k-2)-tuple, by scanning every candidate extension.
pub fn aux_degrees(aux: &DirectedAux<'_>, t: &[usize]) -> Result<AuxDegrees> {
    let k = aux.h.k();
    if t.len() != 2 * k - 2 {
        return Err(invalid(format!("tuple must have {} vertices", 2 * k - 2)));
    }
    let mut buf = Vec::with_capacity(2 * k - 1);
    let (mut d_plus, mut d_minus) = (0, 0);
    for u in aux.h.vertices() {
        if t.contains(&u) {
            continue;
        }
        buf.clear();
        buf.extend_from_slice(t);
        buf.push(u);
        if aux.is_edge(&buf) {
            d_plus += 1;
        }
        buf.clear();
        buf.push(u);
        buf.extend_from_slice(t);
        if aux.is_edge(&buf) {
            d_minus += 1;
        }
    }
    Ok(AuxDegrees {
        d_plus,
        d_minus,
        d_pm: d_plus.min(d_minus),
        extendable: d_plus > 0 || d_minus > 0,
    })
}

/// Default length bound `8(2k-1)/gamma^2`, floored at `4k-3` and capped at `n`.
pub fn default_max_len(k: usize, gamma: f64, n: usize) -> usize {
    let floor = 4 * k - 3;
    let raw = if gamma > 0.0 {
        8.0 * (2 * k - 1) as f64 / (gamma * gamma)
    } else {
        f64::INFINITY
    };
    let capped = if raw.is_finite() {
        (raw.floor() as usize).min(n)
    } else {
        n
    };
    capped.max(floor)
}

fn spans_pc_tight(h: &ColoredKGraph, t: &[usize]) -> bool {
    match KLPath::new(h.k(), h.k() - 1, t.to_vec()) {
        Ok(p) => edges_properly_colored(h, &p.edges()).unwrap_or(false),
        Err(_) => false,
    }
}

const MAX_BFS_STATES: usize = 400_000;

/// Shortest pc tight path with end-paths `v` and `w` (in order), inner vertices outside `avoid`.
///
/// Breadth-first search over the auxiliary directed graph. A state is the sequence
/// built so far; states with the same last `2k-2` vertices and the same vertex set
/// are merged. Candidates are tried in a seed-shuffled order.
pub fn connect_tight(
    h: &ColoredKGraph,
    v: &[usize],
    w: &[usize],
    avoid: &[usize],
    max_len: usize,
    seed: u64,
) -> Result<Option<KLPath>> {
    let k = h.k();
    let t = 2 * k - 2;
    if v.len() != t || w.len() != t {
        return Err(invalid(format!("end tuples must have {t} vertices")));
    }
    if v.iter().any(|x| w.contains(x)) {
        return Err(invalid("end tuples intersect"));
    }
    if v.iter().chain(w).any(|x| avoid.contains(x)) {
        return Err(invalid("end tuples meet the avoided set"));
    }
    if !spans_pc_tight(h, v) || !spans_pc_tight(h, w) {
        return Err(invalid("end tuples must span pc tight paths"));
    }
    let mut excluded: Vec<usize> = avoid.to_vec();
    excluded.extend_from_slice(w);
    let aux = DirectedAux::new(h, &excluded);
    let mut cands: Vec<usize> = h
        .vertices()
        .into_iter()
        .filter(|x| !avoid.contains(x) && !v.contains(x) && !w.contains(x))
        .collect();
    cands.shuffle(&mut seeded(seed));

    let closes = |seq: &[usize]| -> bool {
        // Every (2k-1)-window across the junction must be an edge of the auxiliary graph
        // over the full sequence (w is allowed there).
        let full_aux = DirectedAux::new(h, avoid);
        let mut joint: Vec<usize> = seq[seq.len() - t..].to_vec();
        joint.extend_from_slice(w);
        (0..=joint.len() - (2 * k - 1)).all(|i| full_aux.is_edge(&joint[i..i + 2 * k - 1]))
    };

    let mut layer: VecDeque<Vec<usize>> = VecDeque::from([v.to_vec()]);
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut states = 0usize;
    while !layer.is_empty() {
        for seq in &layer {
            if seq.len() + t <= max_len && closes(seq) {
                let mut vs = seq.clone();
                vs.extend_from_slice(w);
                let p = KLPath::new(k, k - 1, vs)?;
                if !edges_properly_colored(h, &p.edges())? {
                    return Err(Error::Internal("connecting path failed validation".into()));
                }
                return Ok(Some(p));
            }
        }
        let mut next = VecDeque::new();
        for seq in layer {
            if seq.len() + 1 + t > max_len {
                continue;
            }
            let mut buf: Vec<usize> = seq[seq.len() - t..].to_vec();
            buf.push(0);
            for &u in &cands {
                if seq.contains(&u) {
                    continue;
                }
                *buf.last_mut().unwrap() = u;
                if !aux.is_edge(&buf) {
                    continue;
                }
                let mut ext = seq.clone();
                ext.push(u);
                let mut set = ext.clone();
                set.sort_unstable();
                if seen.insert((buf[1..].to_vec(), set)) {
                    next.push_back(ext);
                    states += 1;
                    if states > MAX_BFS_STATES {
                        return Ok(None);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(None)
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Edges `X + A` of `H` with `A` a `(k-|X|)`-set inside `free`, as `(A, color)`.
fn extensions(h: &ColoredKGraph, x: &[usize], free: &[bool]) -> Vec<(Vec<usize>, ColorId)> {
    let Some(&pivot) = x.iter().min_by_key(|&&v| h.incident(v).len()) else {
        return Vec::new();
    };
    h.incident(pivot)
        .iter()
        .filter_map(|&id| {
            let e = h.edge(id);
            if !x.iter().all(|v| e.binary_search(v).is_ok()) {
                return None;
            }
            let rest: Vec<usize> = e.iter().copied().filter(|v| !x.contains(v)).collect();
            rest.iter().all(|&v| free[v]).then(|| (rest, h.edge_color(id)))
        })
        .collect()
}

fn free_mask(h: &ColoredKGraph, blocked: &[&[usize]]) -> Vec<bool> {
    let mut free = vec![false; h.n()];
    for v in h.vertices() {
        free[v] = true;
    }
    for b in blocked {
        for &v in *b {
            if v < free.len() {
                free[v] = false;
            }
        }
    }
    free
}

/// A 3-edge pc (k,l)-path `X v1 .. v_{3k-4l} Y` with inner vertices outside `avoid`,
/// first edge colored `!= c_x` and last edge colored `!= c_y`.
///
/// Staged as in the connecting lemma: an edge `X' > X`, an edge `Y' > Y` disjoint from
/// it, then a middle edge `T > Z_X + Z_Y` with `Z_X`, `Z_Y` l-subsets of `X' - X`,
/// `Y' - Y` taken first-fit in ascending order. Every stage is exhausted, so `None`
/// means no such path exists.
#[allow(clippy::too_many_arguments)]
pub fn connect_ell(
    h: &ColoredKGraph,
    l: usize,
    x: &[usize],
    y: &[usize],
    c_x: Option<ColorId>,
    c_y: Option<ColorId>,
    avoid: &[usize],
    seed: u64,
) -> Result<Option<KLPath>> {
    let k = h.k();
    if l == 0 || 2 * l >= k {
        return Err(invalid("connect_ell needs 1 <= l < k/2"));
    }
    if x.len() != l || y.len() != l || x.iter().any(|v| y.contains(v)) {
        return Err(invalid("X and Y must be disjoint l-sets"));
    }
    if x.iter().chain(y).any(|v| avoid.contains(v) || !h.is_active(*v)) {
        return Err(invalid("X and Y must be active and outside the avoided set"));
    }
    let (x, y) = (sorted(x), sorted(y));
    let free = free_mask(h, &[avoid, &x, &y]);
    let mut rng = seeded(seed);
    let mut xs: Vec<(Vec<usize>, ColorId)> = extensions(h, &x, &free)
        .into_iter()
        .filter(|(_, c)| Some(*c) != c_x)
        .collect();
    let mut ys: Vec<(Vec<usize>, ColorId)> = extensions(h, &y, &free)
        .into_iter()
        .filter(|(_, c)| Some(*c) != c_y)
        .collect();
    xs.sort();
    ys.sort();
    xs.shuffle(&mut rng);
    ys.shuffle(&mut rng);
    for (ax, cx) in &xs {
        for (ay, cy) in &ys {
            if ax.iter().any(|v| ay.contains(v)) {
                continue;
            }
            let mut mid_free = free.clone();
            for v in ax.iter().chain(ay) {
                mid_free[*v] = false;
            }
            for zx in crate::hypergraph::subsets(ax, l) {
                for zy in crate::hypergraph::subsets(ay, l) {
                    let z: Vec<usize> = zx.iter().chain(&zy).copied().collect();
                    let mut mids: Vec<(Vec<usize>, ColorId)> = extensions(h, &z, &mid_free)
                        .into_iter()
                        .filter(|(_, c)| c != cx && c != cy)
                        .collect();
                    mids.sort();
                    if let Some((m, _)) = mids.first() {
                        let mut seq = x.clone();
                        seq.extend(ax.iter().filter(|v| !zx.contains(v)));
                        seq.extend(&zx);
                        seq.extend(m);
                        seq.extend(&zy);
                        seq.extend(ay.iter().filter(|v| !zy.contains(v)));
                        seq.extend(&y);
                        let p = KLPath::new(k, l, seq)?;
                        let edges = p.edges();
                        if !edges_properly_colored(h, &edges)? {
                            return Err(Error::Internal("connect_ell produced a non-pc path".into()));
                        }
                        return Ok(Some(p));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A pc loose path `x v1 v2 v3 v4 v5 y` (k = 3) with `phi(x v1 v2) != c_x`, `phi(v4 v5 y) != c_y`.
///
/// Staged: `{v4, v5}` from the link of `y`, then `v2` ranked by its degree in the
/// links of `x` and `v4`, then `v1`, `v3`. Exhaustive over all stages.
pub fn connect_loose(
    h: &ColoredKGraph,
    x: usize,
    y: usize,
    c_x: Option<ColorId>,
    c_y: Option<ColorId>,
    avoid: &[usize],
    seed: u64,
) -> Result<Option<KLPath>> {
    if h.k() != 3 {
        return Err(invalid("connect_loose needs k = 3"));
    }
    if x == y {
        return Err(invalid("x and y must differ"));
    }
    if avoid.contains(&x) || avoid.contains(&y) || !h.is_active(x) || !h.is_active(y) {
        return Err(invalid("x and y must be active and outside the avoided set"));
    }
    let free = free_mask(h, &[avoid, &[x, y]]);
    let mut rng = seeded(seed);
    let mut ends: Vec<(usize, usize, ColorId)> = Vec::new();
    for (pair, c) in extensions(h, &[y], &free) {
        if Some(c) != c_y {
            ends.push((pair[0], pair[1], c));
            ends.push((pair[1], pair[0], c));
        }
    }
    ends.sort();
    ends.shuffle(&mut rng);
    let link_deg = |a: usize, b: usize, fr: &[bool]| -> usize {
        h.incident(a)
            .iter()
            .filter(|&&id| {
                let e = h.edge(id);
                e.binary_search(&b).is_ok() && e.iter().all(|&u| u == a || u == b || fr[u])
            })
            .count()
    };
    for &(v4, v5, c45) in &ends {
        let mut fr = free.clone();
        fr[v4] = false;
        fr[v5] = false;
        let mut v2s: Vec<(usize, usize)> = (0..h.n())
            .filter(|&u| fr[u])
            .map(|u| (link_deg(x, u, &fr) + link_deg(v4, u, &fr), u))
            .collect();
        v2s.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, v2) in &v2s {
            let mut fr2 = fr.clone();
            fr2[v2] = false;
            let firsts: Vec<(usize, ColorId)> = extensions(h, &[x, v2], &fr2)
                .into_iter()
                .filter(|(_, c)| Some(*c) != c_x)
                .map(|(a, c)| (a[0], c))
                .collect();
            if firsts.is_empty() {
                continue;
            }
            let mids: Vec<(usize, ColorId)> = extensions(h, &[v2, v4], &fr2)
                .into_iter()
                .filter(|(_, c)| *c != c45)
                .map(|(a, c)| (a[0], c))
                .collect();
            for &(v1, c12) in &firsts {
                for &(v3, c234) in &mids {
                    if v1 == v3 || c234 == c12 {
                        continue;
                    }
                    let p = KLPath::new(3, 1, vec![x, v1, v2, v3, v4, v5, y])?;
                    if !edges_properly_colored(h, &p.edges())? {
                        return Err(Error::Internal("connect_loose produced a non-pc path".into()));
                    }
                    return Ok(Some(p));
                }
            }
        }
    }
    Ok(None)
}

/// Which connecting lemma joins consecutive paths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Connector {
    /// Tight paths, joined through the auxiliary graph with the given length bound.
    Tight { max_len: usize },
    /// (k,l)-paths with l < k/2, joined by 3-edge paths.
    Ell,
    /// Loose 3-uniform paths, joined by 7-vertex paths.
    Loose,
}

/// Result of [`connect_many`].
#[derive(Clone, Debug, PartialEq)]
pub struct Joined {
    pub path: KLPath,
    pub cycle: Option<KLCycle>,
    /// Vertices of `Q` used by the connections, in order of use.
    pub used_q: Vec<usize>,
}

/// Inner vertices of one connection from the end of `a` to the start of `b`.
fn connect_pair(
    h: &ColoredKGraph,
    a: &KLPath,
    b: &KLPath,
    pool: &[bool],
    connector: Connector,
    g: usize,
    seed: u64,
) -> Result<Option<Vec<usize>>> {
    let (k, l) = (a.k, a.l);
    let avoid: Vec<usize> = h.vertices().into_iter().filter(|&v| !pool[v]).collect();
    let color = |e: &[usize]| h.color_of(e);
    match connector {
        Connector::Tight { max_len } => {
            let (_, v) = a.end_paths()?;
            let (w, _) = b.end_paths()?;
            let avoid: Vec<usize> = avoid.into_iter().filter(|x| !v.contains(x) && !w.contains(x)).collect();
            let bound = max_len.min(4 * k - 4 + g);
            Ok(connect_tight(h, &v, &w, &avoid, bound, seed)?
                .map(|p| p.vertices[2 * k - 2..p.len() - (2 * k - 2)].to_vec()))
        }
        Connector::Ell | Connector::Loose => {
            let (_, x) = a.ell_ends();
            let (y, _) = b.ell_ends();
            let avoid: Vec<usize> = avoid.into_iter().filter(|u| !x.contains(u) && !y.contains(u)).collect();
            let cx = color(a.edges().last().unwrap());
            let cy = color(&b.edges()[0]);
            let p = if connector == Connector::Loose {
                connect_loose(h, x[0], y[0], cx, cy, &avoid, seed)?
            } else {
                connect_ell(h, l, &x, &y, cx, cy, &avoid, seed)?
            };
            Ok(p.and_then(|p| {
                let inner = p.vertices[l..p.len() - l].to_vec();
                (inner.len() <= g).then_some(inner)
            }))
        }
    }
}

/// Chains `paths` in order through vertices of `q`, optionally closing a cycle.
///
/// Each connection draws at most `g` fresh vertices of `q`; vertices used by earlier
/// connections are never reused.
pub fn connect_many(
    h: &ColoredKGraph,
    paths: &[KLPath],
    q: &[usize],
    connector: Connector,
    g: usize,
    close_cycle: bool,
    seed: u64,
) -> Result<Joined> {
    let Some(first) = paths.first() else {
        return Err(invalid("no paths to connect"));
    };
    let (k, l) = (first.k, first.l);
    let min_edges = l.div_ceil(k - l);
    let mut seen = HashSet::new();
    for p in paths {
        if p.k != k || p.l != l {
            return Err(invalid("paths have different (k,l)"));
        }
        if p.edge_count() < min_edges {
            return Err(invalid(format!("every path needs at least {min_edges} edges")));
        }
        if !p.vertices.iter().all(|v| seen.insert(*v) && !q.contains(v)) {
            return Err(invalid("paths must be disjoint and avoid Q"));
        }
    }
    let mut pool = vec![false; h.n()];
    for &v in q {
        if v < pool.len() {
            pool[v] = true;
        }
    }
    let mut used_q = Vec::new();
    let mut acc = first.clone();
    for (i, next) in paths.iter().enumerate().skip(1) {
        let inner =
            connect_pair(h, &acc, next, &pool, connector, g, crate::rng::mix(seed, i as u64))?.ok_or_else(|| {
                Error::StagedFailure {
                    stage: "connect".into(),
                    detail: format!("no connection for pair ({}, {})", i - 1, i),
                }
            })?;
        for &v in &inner {
            pool[v] = false;
        }
        used_q.extend_from_slice(&inner);
        let mut vs = acc.vertices;
        vs.extend(inner);
        vs.extend_from_slice(&next.vertices);
        acc = KLPath::new(k, l, vs)?;
    }
    if !edges_properly_colored(h, &acc.edges())? {
        return Err(Error::StagedFailure {
            stage: "connect".into(),
            detail: "joined path is not properly colored".into(),
        });
    }
    let cycle = if close_cycle {
        let m = paths.len();
        let fail = |d: &str| Error::StagedFailure {
            stage: "connect".into(),
            detail: format!("closing pair ({}, 0): {d}", m - 1),
        };
        if let Connector::Tight { .. } = connector {
            if acc.len() < 4 * k - 4 {
                return Err(fail("path too short to close"));
            }
        }
        let inner = connect_pair(h, &acc, &acc, &pool, connector, g, crate::rng::mix(seed, m as u64))
            .map_err(|e| fail(&e.to_string()))?
            .ok_or_else(|| fail("no connection"))?;
        used_q.extend_from_slice(&inner);
        let mut vs = acc.vertices.clone();
        vs.extend(inner);
        let c = KLCycle::new(k, l, vs).map_err(|e| fail(&e.to_string()))?;
        if !edges_properly_colored(h, &c.edges())? {
            return Err(fail("closed cycle is not properly colored"));
        }
        Some(c)
    } else {
        None
    };
    Ok(Joined {
        path: acc,
        cycle,
        used_q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::subsets;

    fn complete(n: usize, k: usize, rainbow: bool) -> ColoredKGraph {
        let vs: Vec<usize> = (0..n).collect();
        ColoredKGraph::from_edges(
            n,
            k,
            subsets(&vs, k)
                .into_iter()
                .enumerate()
                .map(|(i, e)| (e, if rainbow { i as u32 + 1 } else { 1 })),
        )
        .unwrap()
    }

    #[test]
    fn degrees() {
        let h = complete(10, 3, true);
        let aux = DirectedAux::new(&h, &[]);
        let d = aux_degrees(&aux, &[0, 1, 2, 3]).unwrap();
        assert_eq!((d.d_plus, d.d_minus, d.d_pm, d.extendable), (6, 6, 6, true));
        let sparse = ColoredKGraph::from_edges(10, 3, [(vec![0, 1, 2], 1)]).unwrap();
        let d = aux_degrees(&DirectedAux::new(&sparse, &[]), &[0, 1, 2, 3]).unwrap();
        assert!(!d.extendable);
        let mono = complete(10, 3, false);
        assert_eq!(
            aux_degrees(&DirectedAux::new(&mono, &[]), &[0, 1, 2, 3])
                .unwrap()
                .d_plus,
            0
        );
    }

    #[test]
    fn tight_examples() {
        let h = complete(12, 3, true);
        let p = connect_tight(&h, &[0, 1, 2, 3], &[4, 5, 6, 7], &[], 20, 1)
            .unwrap()
            .unwrap();
        assert_eq!(&p.vertices[..4], &[0, 1, 2, 3]);
        assert_eq!(&p.vertices[p.len() - 4..], &[4, 5, 6, 7]);
        assert!(connect_tight(&h, &[0, 1, 2, 3], &[3, 5, 6, 7], &[], 20, 1).is_err());
        // Force inner vertices: remove the direct junction edge {2,3,4}.
        let cut = ColoredKGraph::from_edges(
            12,
            3,
            h.edges().filter(|(e, _)| *e != [2, 3, 4]).map(|(e, c)| (e.to_vec(), c)),
        )
        .unwrap();
        let p = connect_tight(&cut, &[0, 1, 2, 3], &[4, 5, 6, 7], &[], 20, 1)
            .unwrap()
            .unwrap();
        assert!(p.len() > 8);
        let all: Vec<usize> = (8..12).collect();
        assert_eq!(
            connect_tight(&cut, &[0, 1, 2, 3], &[4, 5, 6, 7], &all, 20, 1).unwrap(),
            None
        );
    }

    #[test]
    fn ell_and_loose_examples() {
        let h = complete(12, 3, true);
        let c = h.color_of(&[0, 2, 3]);
        let p = connect_ell(&h, 1, &[0], &[1], c, None, &[], 5).unwrap().unwrap();
        assert_eq!(p.len(), 7);
        assert_ne!(h.color_of(&p.edges()[0]), c);
        assert!(connect_ell(&h, 1, &[0], &[0], None, None, &[], 5).is_err());
        let p = connect_loose(&h, 0, 1, None, None, &[], 2).unwrap().unwrap();
        assert_eq!((p.vertices[0], p.vertices[6]), (0, 1));
        assert!(connect_loose(&h, 0, 0, None, None, &[], 2).is_err());
        let avoid: Vec<usize> = (2..9).collect();
        assert_eq!(connect_loose(&h, 0, 1, None, None, &avoid, 2).unwrap(), None);
    }

    #[test]
    fn adversarial_link_blocks_ell() {
        let base = complete(12, 3, true);
        let edges = base
            .edges()
            .map(|(e, c)| (e.to_vec(), if e.contains(&0) { 7777 } else { c }));
        let h = ColoredKGraph::from_edges(12, 3, edges).unwrap();
        assert_eq!(connect_ell(&h, 1, &[0], &[1], Some(7777), None, &[], 3).unwrap(), None);
    }

    #[test]
    fn many_examples() {
        let h = complete(30, 3, true);
        let one = KLPath::new(3, 1, vec![0, 1, 2, 3, 4]).unwrap();
        let j = connect_many(&h, std::slice::from_ref(&one), &[], Connector::Loose, 5, false, 1).unwrap();
        assert_eq!(j.path, one);
        assert!(j.used_q.is_empty());
        let ps = vec![
            one,
            KLPath::new(3, 1, vec![5, 6, 7]).unwrap(),
            KLPath::new(3, 1, vec![8, 9, 10, 11, 12]).unwrap(),
        ];
        let q: Vec<usize> = (13..30).collect();
        let j = connect_many(&h, &ps, &q, Connector::Loose, 5, true, 1).unwrap();
        assert!(j.used_q.len() <= 15);
        assert_eq!(j.cycle.unwrap().len(), 13 + 15);

        let h20 = complete(20, 3, true);
        let t1 = KLPath::new(3, 2, vec![0, 1, 2, 3, 4]).unwrap();
        let t2 = KLPath::new(3, 2, vec![5, 6, 7, 8, 9]).unwrap();
        let q: Vec<usize> = (12..20).collect();
        let j = connect_many(&h20, &[t1, t2], &q, Connector::Tight { max_len: 20 }, 8, false, 3).unwrap();
        assert_eq!(j.path.len(), 10);
    }
}
