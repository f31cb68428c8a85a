//! Naive reference checks, written from the definitions without library helpers.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use pcham_core::ColoredKGraph;

pub type Edge = BTreeSet<usize>;

/// Edge set and coloring of `h`, keyed by vertex set.
pub fn edge_map(h: &ColoredKGraph) -> HashMap<Edge, u32> {
    h.edges().map(|(e, c)| (e.iter().copied().collect(), c)).collect()
}

/// Windows of a cyclic sequence: start every `k - l` positions, take `k` in a row.
pub fn cycle_windows(k: usize, l: usize, seq: &[usize]) -> Vec<Edge> {
    let n = seq.len();
    let step = k - l;
    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        out.push((0..k).map(|i| seq[(start + i) % n]).collect());
        start += step;
    }
    out
}

pub fn path_windows(k: usize, l: usize, seq: &[usize]) -> Vec<Edge> {
    let step = k - l;
    let mut out = Vec::new();
    let mut start = 0;
    while start + k <= seq.len() {
        out.push(seq[start..start + k].iter().copied().collect());
        start += step;
    }
    out
}

/// A cyclic sequence is a (k,l)-cycle when its length is a positive multiple of
/// `k - l` (and at least `k`), vertices are distinct, windows are distinct sets,
/// and cyclically consecutive windows meet in exactly `l` vertices.
pub fn cycle_structure_ok(k: usize, l: usize, seq: &[usize]) -> bool {
    let n = seq.len();
    if l == 0 || l >= k || n < k || !n.is_multiple_of(k - l) {
        return false;
    }
    if seq.iter().collect::<BTreeSet<_>>().len() != n {
        return false;
    }
    let w = cycle_windows(k, l, seq);
    if w.iter().collect::<BTreeSet<_>>().len() != w.len() {
        return false;
    }
    (0..w.len()).all(|i| w[i].intersection(&w[(i + 1) % w.len()]).count() == l)
}

pub fn path_structure_ok(k: usize, l: usize, seq: &[usize]) -> bool {
    let s = seq.len();
    l >= 1 && l < k && s >= k && (s - l).is_multiple_of(k - l) && seq.iter().collect::<BTreeSet<_>>().len() == s
}

/// `None` if a window is missing from the host; otherwise whether no two
/// intersecting windows share a color.
pub fn pc_naive(edges: &HashMap<Edge, u32>, windows: &[Edge]) -> Option<bool> {
    let colors: Vec<u32> = windows.iter().map(|w| edges.get(w).copied()).collect::<Option<_>>()?;
    for i in 0..windows.len() {
        for j in 0..windows.len() {
            if i != j && colors[i] == colors[j] && !windows[i].is_disjoint(&windows[j]) {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// The sequence is a (k,l)-cycle spanning exactly `vertices`, with every window an edge.
pub fn hamilton_naive(edges: &HashMap<Edge, u32>, vertices: &[usize], k: usize, l: usize, seq: &[usize]) -> bool {
    if !cycle_structure_ok(k, l, seq) {
        return false;
    }
    let a: BTreeSet<usize> = seq.iter().copied().collect();
    let b: BTreeSet<usize> = vertices.iter().copied().collect();
    a == b && cycle_windows(k, l, seq).iter().all(|w| edges.contains_key(w))
}

/// Full validation of a claimed pc Hamilton cycle.
pub fn valid_pc_hamilton(h: &ColoredKGraph, k: usize, l: usize, seq: &[usize]) -> bool {
    let edges = edge_map(h);
    hamilton_naive(&edges, &h.vertices(), k, l, seq) && pc_naive(&edges, &cycle_windows(k, l, seq)) == Some(true)
}

/// Calls `f` on every ordered tuple of `len` distinct elements of `items`.
pub fn for_each_arrangement(items: &[usize], len: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(items: &[usize], len: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                cur.push(items[i]);
                go(items, len, used, cur, f);
                cur.pop();
                used[i] = false;
            }
        }
    }
    go(items, len, &mut vec![false; items.len()], &mut Vec::new(), f);
}

/// Tight absorbers for `v` by brute force: 8-tuples (k = 3) whose sequence and
/// the sequence with `v` inserted in the middle are both tight paths of `h`.
pub fn brute_tight_absorbers(h: &ColoredKGraph, v: usize, pc_only: bool) -> BTreeSet<Vec<usize>> {
    let k = h.k();
    let len = 4 * k - 4;
    let edges = edge_map(h);
    let others: Vec<usize> = h.vertices().into_iter().filter(|&u| u != v).collect();
    let mut out = BTreeSet::new();
    for_each_arrangement(&others, len, &mut |t| {
        let mut with = t[..2 * k - 2].to_vec();
        with.push(v);
        with.extend_from_slice(&t[2 * k - 2..]);
        let (a, b) = (path_windows(k, k - 1, t), path_windows(k, k - 1, &with));
        let ok = match (pc_naive(&edges, &a), pc_naive(&edges, &b)) {
            (Some(x), Some(y)) => !pc_only || (x && y),
            _ => false,
        };
        if ok {
            out.insert(t.to_vec());
        }
    });
    out
}

/// Pair absorbers for `(x, y)` by brute force: 7-tuples `v1..v7` such that
/// `v1..v7` and `v1 v3 v2 x v4 y v6 v5 v7` are both loose paths of `h`.
pub fn brute_pair_absorbers(h: &ColoredKGraph, x: usize, y: usize, pc_only: bool) -> BTreeSet<Vec<usize>> {
    let edges = edge_map(h);
    let others: Vec<usize> = h.vertices().into_iter().filter(|&u| u != x && u != y).collect();
    let mut out = BTreeSet::new();
    for_each_arrangement(&others, 7, &mut |t| {
        let with = [t[0], t[2], t[1], x, t[3], y, t[5], t[4], t[6]];
        let (a, b) = (path_windows(3, 1, t), path_windows(3, 1, &with));
        let ok = match (pc_naive(&edges, &a), pc_naive(&edges, &b)) {
            (Some(p), Some(q)) => !pc_only || (p && q),
            _ => false,
        };
        if ok {
            out.insert(t.to_vec());
        }
    });
    out
}
