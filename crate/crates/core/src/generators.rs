//! Seeded instance generators.
//!
//! Hosts start complete and lose edges in random (or structured) order while
//! live degree counters stay at the requested minimum. Colorings are assigned
//! afterwards and recounted before the instance is returned.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{binomial, edge_key, subsets, ColorId, ColoredKGraph, HypothesisReport};
use crate::rng::seeded;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coloring {
    /// Every edge its own color.
    Rainbow,
    /// Random colors with every color class satisfying `Delta_s(H_i) <= target`.
    RandomBounded {
        target: usize,
        s: usize,
    },
    Monochromatic,
    /// All edges through `v` get color 1; the rest are rainbow.
    AdversarialLink(usize),
}

impl Coloring {
    /// Parses `rainbow`, `mono`, `link:V`, or `bounded:T[:S]` (default `S = k-1`).
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| invalid(format!("bad number in coloring '{text}'")))
        };
        match parts.as_slice() {
            ["rainbow"] => Ok(Self::Rainbow),
            ["mono"] | ["monochromatic"] => Ok(Self::Monochromatic),
            ["link", v] | ["adversarial_link", v] => Ok(Self::AdversarialLink(num(v)?)),
            ["bounded", t] | ["random_bounded", t] => Ok(Self::RandomBounded {
                target: num(t)?,
                s: k - 1,
            }),
            ["bounded", t, s] | ["random_bounded", t, s] => Ok(Self::RandomBounded {
                target: num(t)?,
                s: num(s)?,
            }),
            _ => Err(invalid(format!("unknown coloring '{text}'"))),
        }
    }

    /// True for schemes that break local boundedness on purpose.
    pub fn is_adversarial(&self) -> bool {
        matches!(self, Self::Monochromatic | Self::AdversarialLink(_))
    }
}

/// A generated instance with its hypothesis report and any generation note.
#[derive(Clone, Debug)]
pub struct Generated {
    pub h: ColoredKGraph,
    pub note: Option<String>,
    pub report: Option<HypothesisReport>,
}

fn complete_edges(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(&(0..n).collect::<Vec<_>>(), k)
}

/// Colors `edges` (all k-sets over `0..n`) according to `coloring`.
pub fn color_edges(n: usize, k: usize, edges: &[Vec<usize>], coloring: &Coloring, seed: u64) -> Result<ColoredKGraph> {
    let colors: Vec<ColorId> = match coloring {
        Coloring::Rainbow => (1..=edges.len() as ColorId).collect(),
        Coloring::Monochromatic => vec![1; edges.len()],
        Coloring::AdversarialLink(v) => {
            if *v >= n {
                return Err(invalid(format!("link vertex {v} outside 0..{n}")));
            }
            let mut next = 1;
            edges
                .iter()
                .map(|e| {
                    if e.contains(v) {
                        1
                    } else {
                        next += 1;
                        next
                    }
                })
                .collect()
        }
        Coloring::RandomBounded { target, s } => bounded_colors(edges, *target, *s, seed)?,
    };
    ColoredKGraph::from_edges(n, k, edges.iter().cloned().zip(colors))
}

/// Random greedy coloring: each edge (in random order) takes a uniformly random
/// existing color that keeps every s-subset's count in that color at most
/// `target`, or a fresh color when none does.
fn bounded_colors(edges: &[Vec<usize>], target: usize, s: usize, seed: u64) -> Result<Vec<ColorId>> {
    if target == 0 {
        return Err(Error::Infeasible(
            "a color class needs at least one edge per s-set".into(),
        ));
    }
    if edges.first().is_some_and(|e| s == 0 || s >= e.len()) {
        return Err(invalid("bounded coloring needs 1 <= s < k"));
    }
    let mut rng = seeded(seed);
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(&mut rng);
    let mut out = vec![0; edges.len()];
    let mut load: HashMap<(ColorId, u128), usize> = HashMap::new();
    let mut palette: Vec<ColorId> = Vec::new();
    for id in order {
        let keys: Vec<u128> = subsets(&edges[id], s).iter().map(|t| edge_key(t)).collect();
        let fits = |c: ColorId, load: &HashMap<(ColorId, u128), usize>| {
            keys.iter()
                .all(|&key| load.get(&(c, key)).copied().unwrap_or(0) < target)
        };
        let start = if palette.is_empty() {
            0
        } else {
            rng.random_range(0..palette.len())
        };
        let chosen = (0..palette.len())
            .map(|i| palette[(start + i) % palette.len()])
            .find(|&c| fits(c, &load))
            .unwrap_or_else(|| {
                palette.push(palette.len() as ColorId + 1);
                palette.len() as ColorId
            });
        for &key in &keys {
            *load.entry((chosen, key)).or_default() += 1;
        }
        out[id] = chosen;
    }
    Ok(out)
}

/// The complete k-graph on `n` vertices with the given coloring.
pub fn gen_complete(n: usize, k: usize, coloring: &Coloring, seed: u64) -> Result<ColoredKGraph> {
    if k < 2 || n < k {
        return Err(invalid("need 2 <= k <= n"));
    }
    let h = color_edges(n, k, &complete_edges(n, k), coloring, seed)?;
    if let Coloring::RandomBounded { target, s } = coloring {
        if h.max_s_degree_per_color(*s)? > *target {
            return Err(Error::Internal("bounded coloring exceeded its target".into()));
        }
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Removal {
    Random,
    /// Edges inside the first `floor(n/2)` vertices go first.
    Structured,
}

/// Removes edges in the given order whenever every tracked s-subset keeps
/// degree at least `floor`. Returns the surviving edges.
fn thin(edges: Vec<Vec<usize>>, s: usize, n: usize, floor: u128) -> Vec<Vec<usize>> {
    let mut deg: HashMap<u128, u128> = HashMap::new();
    let k = edges.first().map_or(0, Vec::len);
    let full = binomial((n - s) as u64, (k - s) as u64);
    let mut keep = Vec::new();
    for e in edges {
        let keys: Vec<u128> = subsets(&e, s).iter().map(|t| edge_key(t)).collect();
        if keys.iter().all(|key| deg.get(key).copied().unwrap_or(full) > floor) {
            for key in keys {
                *deg.entry(key).or_insert(full) -= 1;
            }
        } else {
            keep.push(e);
        }
    }
    keep.sort();
    keep
}

/// A k-graph with `delta_{k-1} >= ceil((1/2 + gamma) n)`, thinned as far as that
/// allows. If even the complete graph misses the bound, it is returned with a note.
pub fn gen_dirac(
    n: usize,
    k: usize,
    gamma: f64,
    removal: Removal,
    coloring: &Coloring,
    seed: u64,
) -> Result<Generated> {
    if k < 2 || n < k {
        return Err(invalid("need 2 <= k <= n"));
    }
    if !(gamma > 0.0 && gamma < 0.5) {
        return Err(invalid("gamma must lie in (0, 1/2)"));
    }
    let need = ((0.5 + gamma) * n as f64).ceil() as u128;
    let mut rng = seeded(seed);
    let mut edges = complete_edges(n, k);
    let mut note = None;
    let max = (n - k + 1) as u128;
    if need > max {
        note = Some(format!(
            "codegree bound {need} exceeds n-k+1 = {max}; returned the complete graph"
        ));
    } else {
        edges.shuffle(&mut rng);
        if removal == Removal::Structured {
            let half = n / 2;
            edges.sort_by_key(|e| e.iter().any(|&v| v >= half));
        }
        edges = thin(edges, k - 1, n, need);
    }
    let h = color_edges(n, k, &edges, coloring, rng.random())?;
    let report = h.check_hypotheses(k - 1).ok();
    Ok(Generated { h, note, report })
}

/// A 3-graph on even `n` with `delta_1 >= (7/16 + gamma) n^2 / 2`, thinned at random.
pub fn gen_loose_host(n: usize, gamma: f64, coloring: &Coloring, seed: u64) -> Result<Generated> {
    if n < 4 || n % 2 == 1 {
        return Err(invalid("loose hosts need even n >= 4"));
    }
    if !(gamma > 0.0 && gamma < 9.0 / 16.0) {
        return Err(invalid("gamma must lie in (0, 9/16)"));
    }
    let need = ((7.0 / 16.0 + gamma) * (n * n) as f64 / 2.0).ceil() as u128;
    let max = binomial((n - 1) as u64, 2);
    let mut rng = seeded(seed);
    let mut edges = complete_edges(n, 3);
    let mut note = None;
    if need > max {
        note = Some(format!(
            "vertex-degree bound {need} exceeds C(n-1,2) = {max}; returned the complete graph"
        ));
    } else {
        edges.shuffle(&mut rng);
        edges = thin(edges, 1, n, need);
    }
    let h = color_edges(n, 3, &edges, coloring, rng.random())?;
    if let Coloring::RandomBounded { target, s } = coloring {
        if h.max_s_degree_per_color(*s)? > *target {
            return Err(Error::Internal("bounded coloring exceeded its target".into()));
        }
    }
    let report = h.check_hypotheses(1).ok();
    Ok(Generated { h, note, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_examples() {
        let h = gen_complete(6, 3, &Coloring::Rainbow, 0).unwrap();
        assert_eq!((h.edge_count(), h.color_set().len()), (20, 20));
        assert_eq!(h.max_s_degree_per_color(2).unwrap(), 1);
        let h = gen_complete(6, 3, &Coloring::Monochromatic, 0).unwrap();
        assert_eq!(h.max_s_degree_per_color(2).unwrap(), 4);
        let h = gen_complete(8, 3, &Coloring::RandomBounded { target: 2, s: 2 }, 5).unwrap();
        assert!(h.max_s_degree_per_color(2).unwrap() <= 2);
        let h = gen_complete(8, 3, &Coloring::AdversarialLink(0), 5).unwrap();
        assert!(h.incident(0).iter().all(|&id| h.edge_color(id) == 1));
        assert!(matches!(
            gen_complete(8, 3, &Coloring::RandomBounded { target: 0, s: 2 }, 5),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn dirac_examples() {
        let g = gen_dirac(12, 3, 0.4, Removal::Random, &Coloring::Rainbow, 1).unwrap();
        assert_eq!(g.h.edge_count(), 220);
        assert!(g.note.is_some());
        let g = gen_dirac(20, 3, 0.05, Removal::Random, &Coloring::Rainbow, 1).unwrap();
        assert!(g.h.min_s_degree(2).unwrap() >= 11);
        assert!(g.h.edge_count() < 1140);
        assert!(g.report.unwrap().gamma_margin >= 0.05 - 1e-9);
        let g = gen_dirac(20, 3, 0.05, Removal::Structured, &Coloring::Rainbow, 1).unwrap();
        assert!(g.h.min_s_degree(2).unwrap() >= 11);
        let inside = g.h.edges().filter(|(e, _)| e.iter().all(|&v| v < 10)).count();
        assert!(inside < 120);
    }

    #[test]
    fn loose_examples() {
        let g = gen_loose_host(16, 0.05, &Coloring::Rainbow, 3).unwrap();
        assert!(g.h.min_s_degree(1).unwrap() as f64 >= (7.0 / 16.0 + 0.05) * 128.0);
        assert!(g.h.edge_count() < 560);
        let g = gen_loose_host(8, 0.5, &Coloring::Rainbow, 3).unwrap();
        assert_eq!(g.h.edge_count(), 56);
        assert!(gen_loose_host(15, 0.05, &Coloring::Rainbow, 3).is_err());
    }

    #[test]
    fn deterministic_and_round_trips() {
        let a = gen_complete(9, 3, &Coloring::RandomBounded { target: 1, s: 2 }, 11).unwrap();
        let b = gen_complete(9, 3, &Coloring::RandomBounded { target: 1, s: 2 }, 11).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(ColoredKGraph::parse(&a.to_text()).unwrap().to_text(), a.to_text());
    }
}
