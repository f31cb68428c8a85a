//! Simple undirected graphs on vertex labels `0..n`.

use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
    edge_count: usize,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            adj: vec![vec![false; n]; n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u,v}`; returns whether it was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u >= self.n || v >= self.n || u == v {
            return Err(invalid(format!("bad graph edge ({u},{v})")));
        }
        if self.adj[u][v] {
            return Ok(false);
        }
        self.adj[u][v] = true;
        self.adj[v][u] = true;
        self.edge_count += 1;
        Ok(true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u][v]
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().enumerate().filter(|(_, &b)| b).map(|(u, _)| u)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of edges of `G[U]`.
    pub fn induced_edge_count(&self, u: &[usize]) -> usize {
        let mut c = 0;
        for (i, &a) in u.iter().enumerate() {
            for &b in &u[i + 1..] {
                if self.has_edge(a, b) {
                    c += 1;
                }
            }
        }
        c
    }

    /// Minimum degree of `G[U]`.
    pub fn induced_min_degree(&self, u: &[usize]) -> usize {
        u.iter()
            .map(|&a| u.iter().filter(|&&b| self.has_edge(a, b)).count())
            .min()
            .unwrap_or(0)
    }
}
