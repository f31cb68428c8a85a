//! Property tests: library routines against naive checks on small random inputs.

mod common;

use std::collections::HashSet;
use std::time::Duration;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use pcham_core::absorbers::{absorb, enumerate_absorbers, AbsorberTarget};
use pcham_core::connecting::connect_tight;
use pcham_core::covering::{greedy_path_cover, perfect_matching};
use pcham_core::exact::{find_pc_hamilton_exact, ExactOutcome, SearchBudget};
use pcham_core::generators::{gen_complete, gen_dirac, Coloring, Removal};
use pcham_core::graph::SimpleGraph;
use pcham_core::hypergraph::subsets;
use pcham_core::paths::{is_hamilton, is_properly_colored};
use pcham_core::reservoir::{sample_reservoir, ReservoirSpec};
use pcham_core::rng::seeded;
use pcham_core::{ColoredKGraph, KLCycle, KLPath};

use common::*;

fn random_host(n: usize, k: usize, palette: u32, density: f64, seed: u64) -> ColoredKGraph {
    let mut rng = seeded(seed);
    let mut h = ColoredKGraph::new(n, k).unwrap();
    for e in subsets(&(0..n).collect::<Vec<_>>(), k) {
        if rng.random_bool(density) {
            h.add_edge(&e, rng.random_range(1..=palette)).unwrap();
        }
    }
    h
}

fn has_perfect_matching(g: &SimpleGraph, u: &[usize]) -> bool {
    match u {
        [] => true,
        [a, rest @ ..] => (0..rest.len()).any(|i| {
            if !g.has_edge(*a, rest[i]) {
                return false;
            }
            let mut r = rest.to_vec();
            r.remove(i);
            has_perfect_matching(g, &r)
        }),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(n in 4usize..9, k in 2usize..4, palette in 1u32..6, density in 0.0f64..1.0, seed: u64) {
        let h = random_host(n, k, palette, density, seed);
        let text = h.to_text();
        let back = ColoredKGraph::parse(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back.edge_count(), h.edge_count());
    }

    #[test]
    fn validators_match_naive(
        (k, l) in prop_oneof![Just((3usize, 2usize)), Just((3, 1)), Just((4, 2)), Just((4, 1))],
        mult in 2usize..5,
        palette in 1u32..12,
        density in 0.5f64..1.0,
        seed: u64,
    ) {
        let n = (mult * (k - l)).max(k + k - l);
        let n = n.div_ceil(k - l) * (k - l);
        let h = random_host(n, k, palette, density, seed);
        let mut seq: Vec<usize> = (0..n).collect();
        seq.shuffle(&mut seeded(seed ^ 1));
        let edges = edge_map(&h);
        let c = KLCycle::new(k, l, seq.clone());
        prop_assert_eq!(c.is_ok(), cycle_structure_ok(k, l, &seq));
        if let Ok(c) = c {
            prop_assert_eq!(is_hamilton(&h, &c), hamilton_naive(&edges, &h.vertices(), k, l, &seq));
            prop_assert_eq!(is_properly_colored(&h, &c).ok(), pc_naive(&edges, &cycle_windows(k, l, &seq)));
        }
        let cut = l + (k - l) * ((seq.len() - l) / (k - l));
        let p = KLPath::new(k, l, seq[..cut].to_vec()).unwrap();
        prop_assert_eq!(is_properly_colored(&h, &p).ok(), pc_naive(&edges, &path_windows(k, l, &seq[..cut])));
    }

    #[test]
    fn matching_agrees_with_brute_force(size in 0usize..6, density in 0.2f64..1.0, seed: u64) {
        let n = 12;
        let mut rng = seeded(seed);
        let mut g = SimpleGraph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if rng.random_bool(density) {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        let mut u: Vec<usize> = (0..n).collect();
        u.shuffle(&mut rng);
        u.truncate(2 * size);
        let m = perfect_matching(&g, &u).unwrap();
        prop_assert_eq!(m.is_some(), has_perfect_matching(&g, &u));
        if let Some(m) = m {
            let mut seen = HashSet::new();
            for (a, b) in &m {
                prop_assert!(g.has_edge(*a, *b));
                prop_assert!(seen.insert(*a) && seen.insert(*b));
            }
            prop_assert_eq!(seen, u.iter().copied().collect::<HashSet<_>>());
        }
    }

    #[test]
    fn odd_matching_set_is_rejected(seed: u64) {
        let g = SimpleGraph::complete(5);
        let _ = seed;
        prop_assert!(perfect_matching(&g, &[0, 1, 2]).is_err());
    }

    #[test]
    fn cover_paths_are_disjoint_pc_and_long(n in 10usize..22, l in 1usize..3, seed: u64) {
        let h = gen_complete(n, 3, &Coloring::Rainbow, seed).unwrap();
        let cover = greedy_path_cover(&h, l, 0.1, 8, 3, seed).unwrap();
        let edges = edge_map(&h);
        let mut seen = HashSet::new();
        for p in &cover.paths {
            prop_assert!(p.edge_count() >= 3);
            prop_assert_eq!(pc_naive(&edges, &path_windows(3, l, &p.vertices)), Some(true));
            for v in &p.vertices {
                prop_assert!(seen.insert(*v));
            }
        }
        prop_assert!(cover.paths.len() <= 8);
        for v in &cover.uncovered {
            prop_assert!(seen.insert(*v));
        }
        prop_assert_eq!(seen.len(), n);
    }

    #[test]
    fn generators_are_deterministic(n in 6usize..12, target in 1usize..3, seed: u64) {
        let c = Coloring::RandomBounded { target, s: 2 };
        let a = gen_complete(n, 3, &c, seed).unwrap();
        let b = gen_complete(n, 3, &c, seed).unwrap();
        prop_assert_eq!(a.to_text(), b.to_text());
        prop_assert!(a.max_s_degree_per_color(2).unwrap() <= target);
        let d1 = gen_dirac(n, 3, 0.05, Removal::Random, &Coloring::Rainbow, seed).unwrap();
        let d2 = gen_dirac(n, 3, 0.05, Removal::Random, &Coloring::Rainbow, seed).unwrap();
        prop_assert_eq!(d1.h.to_text(), d2.h.to_text());
    }

    #[test]
    fn reservoir_meets_size_condition(n in 30usize..150, p in 0.1f64..0.6, seed: u64) {
        let vs: Vec<usize> = (0..n).collect();
        let r = sample_reservoir(&vs, &ReservoirSpec::new(p), seed).unwrap();
        let nf = n as f64;
        prop_assert!((r.r.len() as f64 - p * nf).abs() <= p * nf.powf(2.0 / 3.0));
        prop_assert_eq!(r.r.iter().collect::<HashSet<_>>().len(), r.r.len());
        prop_assert!(r.r.iter().all(|v| *v < n));
    }

    #[test]
    fn connector_is_pc_tight_with_given_ends(seed: u64) {
        let h = gen_complete(14, 3, &Coloring::Rainbow, seed).unwrap();
        let mut vs = h.vertices();
        vs.shuffle(&mut seeded(seed));
        let (v, w, avoid) = (&vs[..4], &vs[4..8], &vs[8..10]);
        let p = connect_tight(&h, v, w, avoid, 14, seed).unwrap().expect("rainbow K14 is connected");
        let seq = &p.vertices;
        prop_assert_eq!(&seq[..4], v);
        prop_assert_eq!(&seq[seq.len() - 4..], w);
        prop_assert!(seq.iter().all(|x| !avoid.contains(x)));
        prop_assert_eq!(pc_naive(&edge_map(&h), &path_windows(3, 2, seq)), Some(true));
    }

    #[test]
    fn absorbing_inserts_target_and_keeps_the_rest(seed: u64, v in 0usize..11) {
        let h = gen_complete(11, 3, &Coloring::Rainbow, seed).unwrap();
        let abs = enumerate_absorbers(&h, &AbsorberTarget::Vertex(v), true, Some(5), seed).unwrap();
        prop_assert!(!abs.is_empty());
        let a = &abs[0];
        let base = a.base();
        let rest: Vec<usize> = (0..11).filter(|x| *x != v && !base.contains(x)).collect();
        // Path: one spare vertex, the base, then the remaining spare vertex.
        let mut seq = vec![rest[0]];
        seq.extend(&base);
        seq.push(rest[1]);
        let path = KLPath::new(3, 2, seq.clone()).unwrap();
        let out = absorb(&h, &path, a, 1).unwrap();
        prop_assert_eq!(out.len(), path.len() + 1);
        prop_assert!(out.vertices.contains(&v));
        prop_assert_eq!(out.vertices[0], seq[0]);
        prop_assert_eq!(*out.vertices.last().unwrap(), *seq.last().unwrap());
        prop_assert_eq!(pc_naive(&edge_map(&h), &path_windows(3, 2, &out.vertices)), Some(true));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_certificates_validate(n in 5usize..9, palette in 2u32..8, seed: u64) {
        let h = random_host(n, 3, palette, 0.9, seed);
        let budget = SearchBudget::new(5_000_000, Duration::from_secs(20)).unwrap();
        match find_pc_hamilton_exact(&h, 2, budget).unwrap() {
            ExactOutcome::Found(c) => prop_assert!(valid_pc_hamilton(&h, 3, 2, &c.vertices)),
            ExactOutcome::None => {
                // No cyclic order of the vertices is a pc tight Hamilton cycle.
                let vs = h.vertices();
                let mut any = false;
                for_each_arrangement(&vs[1..], n - 1, &mut |t| {
                    if !any {
                        let mut seq = vec![vs[0]];
                        seq.extend_from_slice(t);
                        any = valid_pc_hamilton(&h, 3, 2, &seq);
                    }
                });
                prop_assert!(!any);
            }
            ExactOutcome::BudgetExhausted => {}
        }
    }
}
