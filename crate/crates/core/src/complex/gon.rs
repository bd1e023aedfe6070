//! Unit-length graphs and the generalized m-gon test: diameter and
//! injectivity radius (half the girth) must both equal m.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is disconnected: vertex {unreachable} is not reachable from vertex 0")]
    Disconnected { unreachable: usize },
    #[error("graph has no vertices")]
    Empty,
}

/// Undirected multigraph with stable edge ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<(usize, usize)>>,
    edges: Vec<(usize, usize)>,
}

const UNSEEN: usize = usize::MAX;

impl Graph {
    pub fn new(num_vertices: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); num_vertices],
            edges: Vec::new(),
        }
    }

    pub fn from_edges(
        num_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut g = Graph::new(num_vertices);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// A cycle on `n` vertices.
    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        let id = self.edges.len();
        self.edges.push((u, v));
        self.adj[u].push((v, id));
        if u != v {
            self.adj[v].push((u, id));
        }
        id
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].iter().any(|&(w, _)| w == v)
    }

    /// Number of parallel edges joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adj[u].iter().filter(|&&(w, _)| w == v).count()
    }

    /// Breadth-first distances from `src`, ignoring edge `skip` if given.
    /// Unreached vertices get `usize::MAX`.
    pub fn distances(&self, src: usize, skip: Option<usize>) -> Vec<usize> {
        let mut dist = vec![UNSEEN; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &(w, id) in &self.adj[u] {
                if Some(id) != skip && dist[w] == UNSEEN {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest eccentricity over all vertices.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.adj.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut diam = 0;
        for src in 0..self.adj.len() {
            let dist = self.distances(src, None);
            if let Some(unreachable) = dist.iter().position(|&d| d == UNSEEN) {
                return Err(GraphError::Disconnected { unreachable });
            }
            diam = diam.max(*dist.iter().max().unwrap());
        }
        Ok(diam)
    }

    /// Length of a shortest cycle, `None` for forests. For each edge the
    /// shortest cycle through it is one plus the distance between its ends
    /// once the edge is removed.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                return Some(1);
            }
            let d = self.distances(u, Some(id))[v];
            if d != UNSEEN {
                best = Some(best.map_or(d + 1, |b| b.min(d + 1)));
            }
        }
        best
    }

    /// Two-colouring if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.adj.len()];
        for start in 0..self.adj.len() {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for w in self.neighbors(u) {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap()).collect())
    }

    /// `u v` per line, preceded by a `# bipartite parts:` header when the
    /// part sizes are known.
    pub fn to_edge_list(&self, parts: Option<(usize, usize)>) -> String {
        let mut out = String::new();
        if let Some((a, b)) = parts {
            let _ = writeln!(out, "# bipartite parts: {a} {b}");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Outcome of the generalized m-gon test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GonCheck {
    pub diameter: usize,
    /// `None` when the graph is acyclic.
    pub girth: Option<usize>,
    pub bipartite: bool,
    pub min_degree: usize,
    pub max_degree: usize,
    /// The common value of diameter and injectivity radius, if they agree.
    pub m: Option<usize>,
}

impl GonCheck {
    /// Injectivity radius in half-units, i.e. the girth itself.
    pub fn injectivity_radius_halves(&self) -> Option<usize> {
        self.girth
    }

    pub fn is_generalized_polygon(&self) -> bool {
        self.m.is_some()
    }
}

/// Tests whether `g` is a generalized m-gon and reports `m`.
pub fn check_generalized_m_gon(g: &Graph) -> Result<GonCheck, GraphError> {
    let diameter = g.diameter()?;
    let girth = g.girth();
    let m = match girth {
        Some(gi) if gi % 2 == 0 && gi / 2 == diameter => Some(diameter),
        _ => None,
    };
    let degrees = (0..g.num_vertices()).map(|v| g.degree(v));
    Ok(GonCheck {
        diameter,
        girth,
        bipartite: g.bipartition().is_some(),
        min_degree: degrees.clone().min().unwrap_or(0),
        max_degree: degrees.max().unwrap_or(0),
        m,
    })
}
