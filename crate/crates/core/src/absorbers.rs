//! The three absorber species, their enumeration, and absorption into a path.
//!
//! * tight `v`-absorber: a `(4k-4)`-tuple `w` spanning a tight path `T` such that
//!   `w` with `v` inserted after position `2k-2` spans a tight path `T_v`;
//! * `S`-absorber (`l < k/2`, `|S| = k-l`): a 3-edge path `P = (E1, G, E2)` and a
//!   4-edge path `Q = (E1, G1, G2, E2)` with `V(Q) = V(P) + S`;
//! * loose `(x,y)`-absorber (`k = 3`): a 7-tuple `v` with `v1v2v3, v3v4v5, v5v6v7`,
//!   `v2 x v4`, `v4 y v6` all edges, absorbed as `(v1,v3,v2,x,v4,y,v6,v5,v7)`.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{invalid, Error, Result};
use crate::graph::SimpleGraph;
use crate::hypergraph::{subsets, ColorId, ColoredKGraph};
use crate::paths::{edges_properly_colored, KLPath};
use crate::rng::{seeded, Rng};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TightAbsorber {
    pub target: usize,
    pub tuple: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetAbsorber {
    pub l: usize,
    /// The `(k-l)`-set, sorted.
    pub target: Vec<usize>,
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairAbsorber {
    pub x: usize,
    pub y: usize,
    pub tuple: [usize; 7],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Absorber {
    Tight(TightAbsorber),
    Set(SetAbsorber),
    Pair(PairAbsorber),
}

/// What an absorber is meant to swallow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AbsorberTarget {
    Vertex(usize),
    Set { l: usize, set: Vec<usize> },
    Pair(usize, usize),
}

impl AbsorberTarget {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            Self::Vertex(v) => vec![*v],
            Self::Set { set, .. } => set.clone(),
            Self::Pair(x, y) => vec![*x, *y],
        }
    }
}

fn tight_expanded(target: usize, tuple: &[usize]) -> Vec<usize> {
    let half = tuple.len() / 2;
    let mut out = tuple[..half].to_vec();
    out.push(target);
    out.extend_from_slice(&tuple[half..]);
    out
}

fn pair_expanded(x: usize, y: usize, v: &[usize; 7]) -> Vec<usize> {
    vec![v[0], v[2], v[1], x, v[3], y, v[5], v[4], v[6]]
}

impl Absorber {
    /// Overlap `l` of the paths this absorber lives in.
    pub fn ell(&self, k: usize) -> usize {
        match self {
            Self::Tight(_) => k - 1,
            Self::Set(s) => s.l,
            Self::Pair(_) => 1,
        }
    }

    /// The sequence that sits in the absorbing path before absorption.
    pub fn base(&self) -> Vec<usize> {
        match self {
            Self::Tight(t) => t.tuple.clone(),
            Self::Set(s) => s.p.clone(),
            Self::Pair(p) => p.tuple.to_vec(),
        }
    }

    /// The sequence that replaces [`Absorber::base`] once the target is absorbed.
    pub fn expanded(&self) -> Vec<usize> {
        match self {
            Self::Tight(t) => tight_expanded(t.target, &t.tuple),
            Self::Set(s) => s.q.clone(),
            Self::Pair(p) => pair_expanded(p.x, p.y, &p.tuple),
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match self {
            Self::Tight(t) => vec![t.target],
            Self::Set(s) => s.target.clone(),
            Self::Pair(p) => vec![p.x, p.y],
        }
    }

    pub fn target(&self) -> AbsorberTarget {
        match self {
            Self::Tight(t) => AbsorberTarget::Vertex(t.target),
            Self::Set(s) => AbsorberTarget::Set {
                l: s.l,
                set: s.target.clone(),
            },
            Self::Pair(p) => AbsorberTarget::Pair(p.x, p.y),
        }
    }
}

fn distinct(vs: &[usize]) -> bool {
    let mut seen = HashSet::new();
    vs.iter().all(|v| seen.insert(*v))
}

/// Edges of the (k,l)-path on `seq`, or `None` if `seq` has the wrong length or some window is missing.
fn seq_edges(h: &ColoredKGraph, l: usize, seq: &[usize]) -> Option<Vec<Vec<usize>>> {
    let p = KLPath::new(h.k(), l, seq.to_vec()).ok()?;
    let edges = p.edges();
    edges.iter().all(|e| h.has_edge(e)).then_some(edges)
}

/// Edge lists of the base and the expanded path.
type EdgePair = (Vec<Vec<usize>>, Vec<Vec<usize>>);

fn structural(h: &ColoredKGraph, a: &Absorber) -> std::result::Result<EdgePair, String> {
    let k = h.k();
    let targets = a.targets();
    if targets.iter().any(|&v| !h.is_active(v)) || !distinct(&targets) {
        return Err("targets must be distinct vertices of H".into());
    }
    let base = a.base();
    let exp = a.expanded();
    if !distinct(&base) || base.iter().any(|v| targets.contains(v) || !h.is_active(*v)) {
        return Err("base tuple must be distinct vertices avoiding the targets".into());
    }
    let l = a.ell(k);
    match a {
        Absorber::Tight(t) => {
            if t.tuple.len() != 4 * k - 4 {
                return Err(format!("tight absorber needs {} vertices", 4 * k - 4));
            }
        }
        Absorber::Set(s) => {
            if 2 * s.l >= k {
                return Err("set absorbers need l < k/2".into());
            }
            if s.target.len() != k - s.l || s.p.len() != 3 * k - 2 * s.l || s.q.len() != 4 * k - 3 * s.l {
                return Err("set absorber has wrong sizes".into());
            }
            let mut pq: Vec<usize> = s.p.iter().chain(&s.target).copied().collect();
            let mut qq = s.q.clone();
            pq.sort_unstable();
            qq.sort_unstable();
            if pq != qq {
                return Err("V(Q) must equal V(P) plus S".into());
            }
            let sorted = |x: &[usize]| {
                let mut v = x.to_vec();
                v.sort_unstable();
                v
            };
            let (pl, ql) = (s.p.len(), s.q.len());
            if sorted(&s.p[..k]) != sorted(&s.q[..k])
                || sorted(&s.p[pl - k..]) != sorted(&s.q[ql - k..])
                || sorted(&s.p[..s.l]) != sorted(&s.q[..s.l])
                || sorted(&s.p[pl - s.l..]) != sorted(&s.q[ql - s.l..])
            {
                return Err("P and Q must share end-edges and l-ends".into());
            }
        }
        Absorber::Pair(_) => {
            if k != 3 {
                return Err("pair absorbers need k = 3".into());
            }
        }
    }
    let e1 = seq_edges(h, l, &base).ok_or("base sequence is not a path of H")?;
    let e2 = seq_edges(h, l, &exp).ok_or("expanded sequence is not a path of H")?;
    Ok((e1, e2))
}

/// Checks the structural invariants of `a` in `h`.
pub fn check_absorber(h: &ColoredKGraph, a: &Absorber) -> Result<()> {
    structural(h, a).map(|_| ()).map_err(Error::InvalidAbsorber)
}

/// True iff both constituent paths of `a` are properly colored.
pub fn is_pc_absorber(h: &ColoredKGraph, a: &Absorber) -> Result<bool> {
    let (e1, e2) = structural(h, a).map_err(Error::InvalidAbsorber)?;
    Ok(edges_properly_colored(h, &e1)? && edges_properly_colored(h, &e2)?)
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Pos(usize),
    Target(usize),
}

/// Edges (as slot lists) that a tuple must span, plus pairs that must differ in color when pc.
struct Pattern {
    len: usize,
    targets: Vec<usize>,
    edges: Vec<Vec<Slot>>,
    /// `completes[L]`: edges whose last tuple position is `L-1`.
    completes: Vec<Vec<usize>>,
    /// `clashes[L]`: intersecting edge pairs whose later edge completes at `L-1`.
    clashes: Vec<Vec<(usize, usize)>>,
}

impl Pattern {
    fn new(len: usize, targets: Vec<usize>, path_slots: Vec<Vec<Slot>>, k: usize, l: usize) -> Self {
        // `path_slots` holds one or more slot sequences; each contributes its (k,l)-windows.
        let mut edges: Vec<Vec<Slot>> = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for seq in &path_slots {
            let mut g = Vec::new();
            let mut start = 0;
            while start + k <= seq.len() {
                g.push(edges.len());
                edges.push(seq[start..start + k].to_vec());
                start += k - l;
            }
            groups.push(g);
        }
        let last = |e: &[Slot]| {
            e.iter()
                .filter_map(|s| match s {
                    Slot::Pos(i) => Some(*i),
                    Slot::Target(_) => None,
                })
                .max()
                .unwrap_or(0)
        };
        let key = |s: &Slot| match s {
            Slot::Pos(i) => *i as isize,
            Slot::Target(j) => -(*j as isize) - 1,
        };
        let meets = |a: &[Slot], b: &[Slot]| a.iter().any(|x| b.iter().any(|y| key(x) == key(y)));
        let mut completes = vec![Vec::new(); len + 1];
        for (i, e) in edges.iter().enumerate() {
            completes[last(e) + 1].push(i);
        }
        let mut clashes = vec![Vec::new(); len + 1];
        for g in &groups {
            for (a, &i) in g.iter().enumerate() {
                for &j in &g[a + 1..] {
                    if meets(&edges[i], &edges[j]) {
                        let at = last(&edges[i]).max(last(&edges[j])) + 1;
                        clashes[at].push((i, j));
                    }
                }
            }
        }
        Self {
            len,
            targets,
            edges,
            completes,
            clashes,
        }
    }

    fn resolve(&self, prefix: &[usize], e: &[Slot], buf: &mut Vec<usize>) {
        buf.clear();
        for s in e {
            buf.push(match s {
                Slot::Pos(i) => prefix[*i],
                Slot::Target(j) => self.targets[*j],
            });
        }
    }

    /// Checks the constraints that become decidable once `prefix` reaches its current length.
    fn accepts(&self, h: &ColoredKGraph, prefix: &[usize], colors: &mut [ColorId], pc: bool) -> bool {
        let at = prefix.len();
        let mut buf = Vec::with_capacity(h.k());
        for &i in &self.completes[at] {
            self.resolve(prefix, &self.edges[i], &mut buf);
            match h.color_of(&buf) {
                Some(c) => colors[i] = c,
                None => return false,
            }
        }
        !pc || self.clashes[at].iter().all(|&(i, j)| colors[i] != colors[j])
    }
}

fn tight_pattern(k: usize, v: usize) -> Pattern {
    let len = 4 * k - 4;
    let base: Vec<Slot> = (0..len).map(Slot::Pos).collect();
    let mut exp = base[..2 * k - 2].to_vec();
    exp.push(Slot::Target(0));
    exp.extend_from_slice(&base[2 * k - 2..]);
    Pattern::new(len, vec![v], vec![base, exp], k, k - 1)
}

fn pair_pattern(x: usize, y: usize) -> Pattern {
    let p = Slot::Pos;
    let base: Vec<Slot> = (0..7).map(p).collect();
    let exp = vec![
        p(0),
        p(2),
        p(1),
        Slot::Target(0),
        p(3),
        Slot::Target(1),
        p(5),
        p(4),
        p(6),
    ];
    Pattern::new(7, vec![x, y], vec![base, exp], 3, 1)
}

fn set_pattern(k: usize, l: usize, set: &[usize]) -> Pattern {
    let len = 3 * k - 2 * l;
    Pattern::new(len, set.to_vec(), vec![(0..len).map(Slot::Pos).collect()], k, l)
}

/// Finds the first `Q` (in canonical order) turning the 3-edge path `p` into an `S`-absorber.
///
/// `Q = F1, E1 \ (F1 + A1), A1, X1, B, X2, A2, E2 \ (F2 + A2), F2` where `A1, A2` are
/// l-subsets of `E1 \ F1`, `E2 \ F2` and `X1, B, X2` split the middle of `G` plus `S`.
pub fn find_set_q(h: &ColoredKGraph, l: usize, p: &[usize], set: &[usize], pc: bool) -> Option<Vec<usize>> {
    let k = h.k();
    if 2 * l >= k || p.len() != 3 * k - 2 * l || set.len() != k - l {
        return None;
    }
    let f1 = &p[..l];
    let e1_rest = &p[l..k];
    let pool: Vec<usize> = p[k..2 * k - 2 * l].iter().chain(set).copied().collect();
    let e2_rest = &p[2 * k - 2 * l..3 * k - 3 * l];
    let f2 = &p[3 * k - 3 * l..];
    let mut pool_sorted = pool.clone();
    pool_sorted.sort_unstable();
    let idx: Vec<usize> = (0..e1_rest.len()).collect();
    let a_choices = subsets(&idx, l);
    let pool_idx: Vec<usize> = (0..pool_sorted.len()).collect();
    for a1 in &a_choices {
        for a2 in &a_choices {
            for x1 in subsets(&pool_idx, k - 2 * l) {
                let rest: Vec<usize> = pool_idx.iter().copied().filter(|i| !x1.contains(i)).collect();
                for b in subsets(&rest, l) {
                    let x2: Vec<usize> = rest.iter().copied().filter(|i| !b.contains(i)).collect();
                    let mut q = f1.to_vec();
                    q.extend(idx.iter().filter(|i| !a1.contains(i)).map(|&i| e1_rest[i]));
                    q.extend(a1.iter().map(|&i| e1_rest[i]));
                    q.extend(x1.iter().map(|&i| pool_sorted[i]));
                    q.extend(b.iter().map(|&i| pool_sorted[i]));
                    q.extend(x2.iter().map(|&i| pool_sorted[i]));
                    q.extend(a2.iter().map(|&i| e2_rest[i]));
                    q.extend(idx.iter().filter(|i| !a2.contains(i)).map(|&i| e2_rest[i]));
                    q.extend_from_slice(f2);
                    if let Some(edges) = seq_edges(h, l, &q) {
                        if !pc || edges_properly_colored(h, &edges).unwrap_or(false) {
                            return Some(q);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Builds the absorber for `target` on the base tuple `base`, if `base` is one.
///
/// Pair targets are tried in both orientations.
pub fn absorber_on(h: &ColoredKGraph, base: &[usize], target: &AbsorberTarget, pc: bool) -> Option<Absorber> {
    let check = |a: Absorber| match is_pc_absorber(h, &a) {
        Ok(ok) if ok || !pc => Some(a),
        _ => None,
    };
    match target {
        AbsorberTarget::Vertex(v) => check(Absorber::Tight(TightAbsorber {
            target: *v,
            tuple: base.to_vec(),
        })),
        AbsorberTarget::Pair(x, y) => {
            let tuple: [usize; 7] = base.try_into().ok()?;
            check(Absorber::Pair(PairAbsorber { x: *x, y: *y, tuple }))
                .or_else(|| check(Absorber::Pair(PairAbsorber { x: *y, y: *x, tuple })))
        }
        AbsorberTarget::Set { l, set } => {
            if base.iter().any(|v| set.contains(v)) {
                return None;
            }
            let mut s = set.clone();
            s.sort_unstable();
            let q = find_set_q(h, *l, base, &s, pc)?;
            check(Absorber::Set(SetAbsorber {
                l: *l,
                target: s,
                p: base.to_vec(),
                q,
            }))
        }
    }
}

fn pattern_for(h: &ColoredKGraph, target: &AbsorberTarget) -> Result<Pattern> {
    let k = h.k();
    let tv = target.vertices();
    if tv.iter().any(|&v| !h.is_active(v)) || !distinct(&tv) {
        return Err(invalid("targets must be distinct vertices of H"));
    }
    Ok(match target {
        AbsorberTarget::Vertex(v) => tight_pattern(k, *v),
        AbsorberTarget::Pair(x, y) => {
            if k != 3 {
                return Err(invalid("pair absorbers need k = 3"));
            }
            pair_pattern(*x, *y)
        }
        AbsorberTarget::Set { l, set } => {
            if *l == 0 || 2 * l >= k || set.len() != k - l {
                return Err(invalid("set absorbers need l < k/2 and |S| = k-l"));
            }
            set_pattern(k, *l, set)
        }
    })
}

fn finish(h: &ColoredKGraph, target: &AbsorberTarget, tuple: &[usize], pc: bool) -> Option<Absorber> {
    match target {
        AbsorberTarget::Vertex(v) => Some(Absorber::Tight(TightAbsorber {
            target: *v,
            tuple: tuple.to_vec(),
        })),
        AbsorberTarget::Pair(x, y) => Some(Absorber::Pair(PairAbsorber {
            x: *x,
            y: *y,
            tuple: tuple.try_into().ok()?,
        })),
        AbsorberTarget::Set { l, set } => {
            let mut s = set.clone();
            s.sort_unstable();
            let q = find_set_q(h, *l, tuple, &s, pc)?;
            Some(Absorber::Set(SetAbsorber {
                l: *l,
                target: s,
                p: tuple.to_vec(),
                q,
            }))
        }
    }
}

struct Enumerator<'a> {
    h: &'a ColoredKGraph,
    pat: Pattern,
    target: &'a AbsorberTarget,
    pc: bool,
    cands: Vec<usize>,
    used: Vec<bool>,
    prefix: Vec<usize>,
    colors: Vec<ColorId>,
}

impl Enumerator<'_> {
    fn new<'a>(h: &'a ColoredKGraph, target: &'a AbsorberTarget, pc: bool) -> Result<Enumerator<'a>> {
        let pat = pattern_for(h, target)?;
        let tv = target.vertices();
        let cands = h.vertices().into_iter().filter(|v| !tv.contains(v)).collect();
        let ne = pat.edges.len();
        Ok(Enumerator {
            h,
            pat,
            target,
            pc,
            cands,
            used: vec![false; h.n()],
            prefix: Vec::new(),
            colors: vec![0; ne],
        })
    }

    fn all(&mut self, out: &mut Vec<Absorber>, limit: Option<usize>) {
        if limit.is_some_and(|m| out.len() >= m) {
            return;
        }
        if self.prefix.len() == self.pat.len {
            if let Some(a) = finish(self.h, self.target, &self.prefix, self.pc) {
                out.push(a);
            }
            return;
        }
        for i in 0..self.cands.len() {
            let v = self.cands[i];
            if self.used[v] {
                continue;
            }
            self.prefix.push(v);
            self.used[v] = true;
            if self.pat.accepts(self.h, &self.prefix, &mut self.colors, self.pc) {
                self.all(out, limit);
            }
            self.used[v] = false;
            self.prefix.pop();
        }
    }

    /// One random walk: each step picks uniformly among the extensions that keep all constraints.
    fn walk(&mut self, rng: &mut Rng) -> Option<Vec<usize>> {
        self.prefix.clear();
        self.used.iter_mut().for_each(|u| *u = false);
        let mut options = Vec::with_capacity(self.cands.len());
        while self.prefix.len() < self.pat.len {
            options.clear();
            for i in 0..self.cands.len() {
                let v = self.cands[i];
                if self.used[v] {
                    continue;
                }
                self.prefix.push(v);
                if self.pat.accepts(self.h, &self.prefix, &mut self.colors, self.pc) {
                    options.push(v);
                }
                self.prefix.pop();
            }
            if options.is_empty() {
                return None;
            }
            let v = options[rng.random_range(0..options.len())];
            self.prefix.push(v);
            self.used[v] = true;
            // Re-run the checks so `colors` reflects the chosen vertex.
            self.pat.accepts(self.h, &self.prefix, &mut self.colors, self.pc);
        }
        Some(self.prefix.clone())
    }
}

/// Absorbers for `target`, in a seed-determined random order.
///
/// With `cap = None` the enumeration is exhaustive. With a cap, candidate tuples
/// are drawn by random walks through the constraint tree and deduplicated, so the
/// result is a sample without replacement of at most `cap` absorbers. For set
/// targets each 3-edge path `P` contributes one absorber (the first valid `Q`).
pub fn enumerate_absorbers(
    h: &ColoredKGraph,
    target: &AbsorberTarget,
    pc_only: bool,
    cap: Option<usize>,
    seed: u64,
) -> Result<Vec<Absorber>> {
    let mut rng = seeded(seed);
    let mut en = Enumerator::new(h, target, pc_only)?;
    if let Some(0) = cap {
        return Err(invalid("cap must be positive"));
    }
    let mut out = Vec::new();
    match cap {
        None => {
            en.all(&mut out, None);
            out.shuffle(&mut rng);
        }
        Some(cap) => {
            let mut seen = HashSet::new();
            let mut dead = 0usize;
            let attempts = 20 * cap + 200;
            for _ in 0..attempts {
                if out.len() >= cap {
                    break;
                }
                match en.walk(&mut rng) {
                    Some(t) => {
                        if seen.insert(t.clone()) {
                            if let Some(a) = finish(h, target, &t, pc_only) {
                                out.push(a);
                            }
                        }
                    }
                    None => {
                        dead += 1;
                        // A host with no absorber at all kills every walk; stop early.
                        if dead >= 200 && out.is_empty() {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Number of absorbers for `target`, stopping once `stop_at` is reached.
pub fn count_absorbers(
    h: &ColoredKGraph,
    target: &AbsorberTarget,
    pc_only: bool,
    stop_at: Option<usize>,
) -> Result<usize> {
    let mut en = Enumerator::new(h, target, pc_only)?;
    let mut out = Vec::new();
    en.all(&mut out, stop_at);
    Ok(out.len())
}

/// Replaces the absorber's base sequence, found at `placement` in `path`, by its expanded sequence.
pub fn absorb(h: &ColoredKGraph, path: &KLPath, absorber: &Absorber, placement: usize) -> Result<KLPath> {
    let base = absorber.base();
    let k = path.k;
    if absorber.ell(k) != path.l || h.k() != k {
        return Err(Error::PlacementError("absorber and path have different (k,l)".into()));
    }
    let end = placement + base.len();
    if end > path.len() || path.vertices[placement..end] != base[..] {
        return Err(Error::PlacementError(format!(
            "base tuple not found at index {placement}"
        )));
    }
    if !placement.is_multiple_of(k - path.l) {
        return Err(Error::PlacementError(
            "placement is not aligned with an edge start".into(),
        ));
    }
    if absorber.targets().iter().any(|v| path.vertices.contains(v)) {
        return Err(Error::PlacementError("target already on the path".into()));
    }
    let mut vs = path.vertices[..placement].to_vec();
    vs.extend(absorber.expanded());
    vs.extend_from_slice(&path.vertices[end..]);
    let out = KLPath::new(k, path.l, vs).map_err(|e| Error::PlacementError(e.to_string()))?;
    match edges_properly_colored(h, &out.edges()) {
        Ok(true) => Ok(out),
        Ok(false) => Err(Error::ColoringConflict(
            "absorbed path has a monochromatic intersecting pair".into(),
        )),
        Err(e) => Err(Error::ColoringConflict(e.to_string())),
    }
}

/// Graph of pc-absorbable pairs: `{x,y}` is an edge iff at least `threshold`
/// pc `(x,y)`-absorbers are found within `node_budget` search nodes.
///
/// `(x,y)` and `(y,x)` absorbers are in bijection by reversing the tuple, so one
/// orientation is counted.
pub fn build_absorbable_graph(h: &ColoredKGraph, threshold: usize, node_budget: Option<usize>) -> Result<SimpleGraph> {
    if h.k() != 3 {
        return Err(invalid("the absorbable graph is defined for k = 3"));
    }
    let vs = h.vertices();
    let mut g = SimpleGraph::new(h.n());
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            let ok = threshold == 0 || {
                let target = AbsorberTarget::Pair(x, y);
                let mut en = Enumerator::new(h, &target, true)?;
                let mut out = Vec::new();
                match node_budget {
                    None => en.all(&mut out, Some(threshold)),
                    Some(b) => {
                        let mut rng = seeded((x as u64) << 32 | y as u64);
                        for _ in 0..b {
                            if out.len() >= threshold {
                                break;
                            }
                            if let Some(t) = en.walk(&mut rng) {
                                if !out.iter().any(|a: &Absorber| a.base() == t) {
                                    out.extend(finish(h, &target, &t, true));
                                }
                            }
                        }
                    }
                }
                out.len() >= threshold
            };
            if ok {
                g.add_edge(x, y)?;
            }
        }
    }
    Ok(g)
}
