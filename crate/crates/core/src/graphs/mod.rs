//! Simple undirected graphs, the named constructions, and their parameters.

mod cover;
mod families;
mod srg;

pub use cover::{cover_params, distance_matrices};
pub use families::{build_named, GraphFamily};
pub use srg::{
    feasible_primitive, is_feasible, seidel_matrix, spectrum, srg_params, Feasibility, FeasibilityReason, SrgParams,
    Spectrum,
};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::LabeledMatrix;

/// Dense adjacency over vertices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    order: usize,
    adj: Vec<bool>,
}

/// On-disk form: `{order, edges: [[i, j], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub order: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn empty(order: usize) -> Self {
        Graph { order, adj: vec![false; order * order] }
    }

    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidConstruction("graph with no vertices".into()));
        }
        let mut g = Graph::empty(order);
        for (i, j) in edges {
            if i >= order || j >= order {
                return Err(Error::InvalidConstruction(format!("edge ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidConstruction(format!("loop at vertex {i}")));
            }
            g.adj[i * order + j] = true;
            g.adj[j * order + i] = true;
        }
        Ok(g)
    }

    /// Graph on `0..order` joining `i` and `j` whenever `f(i, j)` holds (`i < j`).
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(order);
        for i in 0..order {
            for j in i + 1..order {
                if f(i, j) {
                    g.adj[i * order + j] = true;
                    g.adj[j * order + i] = true;
                }
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.order + j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&j| self.adjacent(i, j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        (0..self.order).filter(|&w| self.adjacent(i, w) && self.adjacent(j, w)).count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.order {
            for j in i + 1..self.order {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.order, |i, j| !self.adjacent(i, j))
    }

    /// Vertices are the edges of `self`, adjacent when they share an endpoint.
    pub fn line_graph(&self) -> Result<Graph> {
        let e = self.edges();
        if e.is_empty() {
            return Err(Error::InvalidConstruction("line graph of an edgeless graph".into()));
        }
        Ok(Graph::from_fn(e.len(), |p, q| {
            let (a, b) = e[p];
            let (c, d) = e[q];
            a == c || a == d || b == c || b == d
        }))
    }

    pub fn is_complete(&self) -> bool {
        (0..self.order).all(|i| self.degree(i) == self.order - 1)
    }

    pub fn adjacency_matrix(&self) -> LabeledMatrix<i64> {
        LabeledMatrix::from_fn(self.order, |i, j| self.adjacent(i, j) as i64)
    }

    /// All-pairs BFS distances; `None` for unreachable pairs.
    pub fn distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.order)
            .map(|s| {
                let mut dist = vec![None; self.order];
                dist[s] = Some(0);
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    let du = dist[u].unwrap();
                    for w in self.neighbors(u) {
                        if dist[w].is_none() {
                            dist[w] = Some(du + 1);
                            queue.push_back(w);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    /// `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for row in self.distances() {
            for d in row {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            order: self.order,
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_json(g: &GraphJson) -> Result<Graph> {
        Graph::from_edges(g.order, g.edges.iter().map(|e| (e[0], e[1])))
            .map_err(|e| Error::Malformed(e.to_string()))
    }
}
