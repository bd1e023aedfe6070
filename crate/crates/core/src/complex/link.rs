use std::collections::HashMap;
use std::fmt;

use super::{ComplexError, Graph, Polyhedron};
use crate::plane::{IncidenceGraph, Plane};
use crate::pointline::PointLineBijection;
use crate::presentation::{LineLabel, Orientation, PointLabel, Presentation};

/// An edge end at a vertex, named by its natural label: the tail of side
/// `x` is the point `x`, the head is the line `λ(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkNode {
    Point(PointLabel),
    Line(LineLabel),
}

impl LinkNode {
    pub fn copy(self) -> usize {
        match self {
            LinkNode::Point(x) => x.copy,
            LinkNode::Line(y) => y.copy,
        }
    }
}

impl fmt::Display for LinkNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkNode::Point(x) => x.fmt(f),
            LinkNode::Line(y) => y.fmt(f),
        }
    }
}

/// Nodes are tails at the vertex, then heads, each in edge order; one arc
/// per face corner at the vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub vertex: usize,
    pub nodes: Vec<LinkNode>,
    pub graph: Graph,
}

impl LinkGraph {
    pub fn to_edge_list(&self) -> String {
        let points = self
            .nodes
            .iter()
            .filter(|n| matches!(n, LinkNode::Point(_)))
            .count();
        self.graph
            .to_edge_list(Some((points, self.nodes.len() - points)))
    }
}

impl Polyhedron {
    pub fn link(&self, v: usize) -> Result<LinkGraph, ComplexError> {
        if v >= self.num_vertices {
            return Err(ComplexError::BadVertex {
                vertex: v,
                count: self.num_vertices,
            });
        }
        let mut nodes = Vec::new();
        let mut node_of_end = HashMap::new();
        for (id, e) in self.edges.iter().enumerate() {
            if e.tail == v {
                node_of_end.insert(2 * id, nodes.len());
                nodes.push(LinkNode::Point(e.label));
            }
        }
        for (id, e) in self.edges.iter().enumerate() {
            if e.head == v {
                node_of_end.insert(2 * id + 1, nodes.len());
                nodes.push(LinkNode::Line(e.head_label));
            }
        }
        let mut graph = Graph::new(nodes.len());
        for c in self.corners.iter().filter(|c| c.vertex == v) {
            let face = &self.faces[c.face];
            let before = face[c.position];
            let after = face[(c.position + 1) % face.len()];
            graph.add_edge(node_of_end[&(2 * before + 1)], node_of_end[&(2 * after)]);
        }
        Ok(LinkGraph {
            vertex: v,
            nodes,
            graph,
        })
    }
}

/// Vertex of the plane's (straight) or dual plane's (dual) incidence graph
/// each link node names: `x_j` is point `j` or line `T(x_j)`, `y_i` is line
/// `T(x_i)` or point `i`.
pub fn natural_map(
    link: &LinkGraph,
    bij: &PointLineBijection,
    orientation: Orientation,
) -> Vec<usize> {
    let n = bij.map().len();
    link.nodes
        .iter()
        .map(|node| match (orientation, node) {
            (Orientation::Straight, LinkNode::Point(x)) => x.index,
            (Orientation::Straight, LinkNode::Line(y)) => n + bij.line_of(y.index),
            (Orientation::Dual, LinkNode::Point(x)) => bij.line_of(x.index),
            (Orientation::Dual, LinkNode::Line(y)) => n + y.index,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoMismatch {
    NodeCount {
        link: usize,
        expected: usize,
    },
    /// Two nodes share an image, or the image is out of range.
    NotBijective {
        node: LinkNode,
    },
    /// An arc whose image is not an edge, or is hit twice.
    ExtraArc {
        a: LinkNode,
        b: LinkNode,
    },
    /// An edge of the expected graph no arc maps to.
    MissingEdge {
        u: usize,
        v: usize,
    },
    MixedCopies,
}

impl fmt::Display for IsoMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoMismatch::NodeCount { link, expected } => {
                write!(f, "link has {link} nodes, expected {expected}")
            }
            IsoMismatch::NotBijective { node } => {
                write!(f, "label map is not a bijection at {node}")
            }
            IsoMismatch::ExtraArc { a, b } => write!(f, "arc {a}-{b} has no matching incidence"),
            IsoMismatch::MissingEdge { u, v } => write!(f, "incidence {u}-{v} has no matching arc"),
            IsoMismatch::MixedCopies => f.write_str("link mixes labels from several copies"),
        }
    }
}

/// Checks that `map` (link node → expected vertex) is a graph isomorphism.
pub fn check_link_isomorphism(
    link: &LinkGraph,
    expected: &IncidenceGraph,
    map: &[usize],
) -> Result<(), IsoMismatch> {
    let target = &expected.graph;
    if link.nodes.len() != target.num_vertices() || map.len() != link.nodes.len() {
        return Err(IsoMismatch::NodeCount {
            link: link.nodes.len(),
            expected: target.num_vertices(),
        });
    }
    let mut hit = vec![false; target.num_vertices()];
    for (node, &img) in link.nodes.iter().zip(map) {
        if img >= hit.len() || std::mem::replace(&mut hit[img], true) {
            return Err(IsoMismatch::NotBijective { node: *node });
        }
    }
    let mut edge_hit = HashMap::new();
    for &(a, b) in target.edges() {
        edge_hit.insert((a.min(b), a.max(b)), false);
    }
    for &(a, b) in link.graph.edges() {
        let key = (map[a].min(map[b]), map[a].max(map[b]));
        match edge_hit.get_mut(&key) {
            Some(seen) if !*seen => *seen = true,
            _ => {
                return Err(IsoMismatch::ExtraArc {
                    a: link.nodes[a],
                    b: link.nodes[b],
                })
            }
        }
    }
    if let Some(&(u, v)) = target
        .edges()
        .iter()
        .find(|&&(u, v)| !edge_hit[&(u.min(v), u.max(v))])
    {
        return Err(IsoMismatch::MissingEdge { u, v });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkIdentity {
    /// Naturally isomorphic to the incidence graph of the plane.
    Plane,
    /// Naturally isomorphic to the incidence graph of the dual plane.
    Dual,
    Fail(IsoMismatch),
}

impl fmt::Display for LinkIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkIdentity::Plane => "G",
            LinkIdentity::Dual => "G'",
            LinkIdentity::Fail(_) => "FAIL",
        })
    }
}

/// Checks a link against the copy its labels come from.
pub fn identify_link(
    link: &LinkGraph,
    p: &Presentation,
    plane: &Plane,
    bij: &PointLineBijection,
) -> LinkIdentity {
    let Some(copy) = link.nodes.first().map(|n| n.copy()) else {
        return LinkIdentity::Fail(IsoMismatch::NodeCount {
            link: 0,
            expected: plane.num_points() + plane.num_lines(),
        });
    };
    if link.nodes.iter().any(|n| n.copy() != copy) {
        return LinkIdentity::Fail(IsoMismatch::MixedCopies);
    }
    let orientation = p.copies()[copy];
    let expected = match orientation {
        Orientation::Straight => plane.incidence_graph(),
        Orientation::Dual => plane.dualize().incidence_graph(),
    };
    match check_link_isomorphism(link, &expected, &natural_map(link, bij, orientation)) {
        Ok(()) if orientation == Orientation::Straight => LinkIdentity::Plane,
        Ok(()) => LinkIdentity::Dual,
        Err(e) => LinkIdentity::Fail(e),
    }
}
