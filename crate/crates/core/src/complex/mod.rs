//! The polyhedron of a presentation: one oriented k-gon per tuple, sides
//! with equal labels glued respecting orientation.
//!
//! Vertices are not assumed. Every corner of every face identifies the head
//! of one side with the tail of the next; the vertices are the resulting
//! classes of edge ends, numbered by their least end (edges in label order,
//! tail before head).

pub mod gon;
mod link;
mod report;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::presentation::{
    verify_presentation, LineLabel, PointLabel, Presentation, PresentationReport,
};

pub use gon::{check_generalized_m_gon, GonCheck, Graph, GraphError};
pub use link::{
    check_link_isomorphism, identify_link, natural_map, IsoMismatch, LinkGraph, LinkIdentity,
    LinkNode,
};
pub use report::{analyze, ComplexReport, LinkReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("presentation fails verification: {}", .0.violations.first().map(ToString::to_string).unwrap_or_default())]
    UncheckedPresentation(PresentationReport),
    #[error("vertex {vertex} out of range (polyhedron has {count})")]
    BadVertex { vertex: usize, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub label: PointLabel,
    /// `λ(label)`, the name of the edge seen from its head.
    pub head_label: LineLabel,
    pub tail: usize,
    pub head: usize,
}

/// Corner of face `face` between sides `position` and `position + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub face: usize,
    pub position: usize,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    num_vertices: usize,
    edges: Vec<Edge>,
    /// Edge ids around each face, in boundary order.
    faces: Vec<Vec<usize>>,
    corners: Vec<Corner>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
    }
}

/// Builds the polyhedron of a presentation that passes verification.
pub fn assemble(p: &Presentation) -> Result<Polyhedron, ComplexError> {
    let report = verify_presentation(p);
    if !report.passes() {
        return Err(ComplexError::UncheckedPresentation(report));
    }
    Ok(assemble_verified(p))
}

fn assemble_verified(p: &Presentation) -> Polyhedron {
    let base = p.base_tuples();
    let mut edge_of: BTreeMap<PointLabel, usize> = BTreeMap::new();
    for t in &base {
        for &x in *t {
            edge_of.insert(x, 0);
        }
    }
    for (id, slot) in edge_of.values_mut().enumerate() {
        *slot = id;
    }
    let faces: Vec<Vec<usize>> = base
        .iter()
        .map(|t| t.iter().map(|x| edge_of[x]).collect())
        .collect();

    // end 2e is the tail of edge e, 2e + 1 its head
    let mut uf = UnionFind((0..2 * edge_of.len()).collect());
    for face in &faces {
        let k = face.len();
        for pos in 0..k {
            uf.union(2 * face[pos] + 1, 2 * face[(pos + 1) % k]);
        }
    }
    let mut vertex_of_root = BTreeMap::new();
    let mut vertex = vec![0; 2 * edge_of.len()];
    for (end, v) in vertex.iter_mut().enumerate() {
        let root = uf.find(end);
        let next = vertex_of_root.len();
        *v = *vertex_of_root.entry(root).or_insert(next);
    }

    let edges = edge_of
        .keys()
        .enumerate()
        .map(|(id, &label)| Edge {
            label,
            head_label: p.lambda(label),
            tail: vertex[2 * id],
            head: vertex[2 * id + 1],
        })
        .collect();
    let corners = faces
        .iter()
        .enumerate()
        .flat_map(|(f, face)| {
            let vertex = &vertex;
            face.iter().enumerate().map(move |(pos, &e)| Corner {
                face: f,
                position: pos,
                vertex: vertex[2 * e + 1],
            })
        })
        .collect();
    Polyhedron {
        num_vertices: vertex_of_root.len(),
        edges,
        faces,
        corners,
    }
}

impl Polyhedron {
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    /// Common face size; `0` when there are no faces.
    pub fn face_size(&self) -> usize {
        self.faces.first().map_or(0, Vec::len)
    }

    /// Counts and the two identities forced by the link construction.
    pub fn stats(&self) -> Result<Stats, ComplexError> {
        let links = (0..self.num_vertices)
            .map(|v| self.link(v))
            .collect::<Result<Vec<_>, _>>()?;
        let s: Vec<usize> = links.iter().map(|l| l.graph.num_vertices()).collect();
        let t: Vec<usize> = links.iter().map(|l| l.graph.num_edges()).collect();
        let (v, e, f, k) = (
            self.num_vertices,
            self.edges.len(),
            self.faces.len(),
            self.face_size(),
        );
        let (sum_s, sum_t) = (s.iter().sum::<usize>(), t.iter().sum::<usize>());
        Ok(Stats {
            vertices: v,
            edges: e,
            faces: f,
            face_size: k,
            euler: v as i64 - e as i64 + f as i64,
            edge_identity: sum_s == 2 * e,
            face_identity: k * f == sum_t,
            remark_edges: k * sum_s,
            remark_faces: sum_t,
            link_nodes: s,
            link_arcs: t,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub face_size: usize,
    pub euler: i64,
    pub link_nodes: Vec<usize>,
    pub link_arcs: Vec<usize>,
    /// `E = Σ s_i / 2`.
    pub edge_identity: bool,
    /// `k F = Σ t_i`.
    pub face_identity: bool,
    /// `k Σ s_i`, the edge count stated by the usual closed formula. It
    /// does not match the polyhedron: each glued edge has two ends, so the
    /// direct count is `Σ s_i / 2`.
    pub remark_edges: usize,
    /// `Σ t_i`, the face count stated by the same formula. Each face has
    /// `k` corners, so the direct count is `Σ t_i / k`.
    pub remark_faces: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curvature {
    Euclidean,
    Hyperbolic,
    Neither,
}

impl Curvature {
    pub fn as_str(self) -> &'static str {
        match self {
            Curvature::Euclidean => "euclidean",
            Curvature::Hyperbolic => "hyperbolic",
            Curvature::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GonParams {
    pub face_size: usize,
    pub link_gon: usize,
    pub curvature: Curvature,
}

/// Faces are `k`-gons and links generalized `m`-gons. Meant for `k ≥ 3`,
/// `m ≥ 2`.
pub fn classify_curvature(k: usize, m: usize) -> GonParams {
    let curvature = if m * k > 2 * m + k {
        Curvature::Hyperbolic
    } else if (k, m) == (3, 3) {
        Curvature::Euclidean
    } else {
        Curvature::Neither
    };
    GonParams {
        face_size: k,
        link_gon: m,
        curvature,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::tower_for_order;
    use crate::plane::{build_pg2, Plane};
    use crate::pointline::{trace_bijection, PointLineBijection};
    use crate::presentation::{build_euclidean, build_hyperbolic, validate_word};
    use crate::triples::{enumerate_triples, TripleSet};

    pub(crate) fn q2() -> (Plane, PointLineBijection, TripleSet) {
        let t = tower_for_order(2).unwrap();
        let plane = build_pg2(&t);
        let bij = trace_bijection(&t, &plane).unwrap();
        let set = enumerate_triples(&plane, &bij).unwrap();
        (plane, bij, set)
    }

    #[test]
    fn euclidean_counts() {
        let (plane, bij, set) = q2();
        let x = assemble(&build_euclidean(&plane, &bij, &set).unwrap()).unwrap();
        let s = x.stats().unwrap();
        assert_eq!((s.vertices, s.edges, s.faces, s.euler), (3, 21, 21, 3));
        assert_eq!(s.link_nodes, [14, 14, 14]);
        assert_eq!(s.link_arcs, [21, 21, 21]);
        assert!(s.edge_identity && s.face_identity);
        assert_eq!((s.remark_edges, s.remark_faces), (126, 63));
    }

    #[test]
    fn hyperbolic_counts() {
        let (plane, bij, set) = q2();
        let w = validate_word("abcbcab").unwrap();
        let x = assemble(&build_hyperbolic(&plane, &bij, &set, &w).unwrap()).unwrap();
        let s = x.stats().unwrap();
        assert_eq!((s.vertices, s.edges, s.faces, s.face_size), (7, 49, 21, 7));
        assert_eq!(s.euler, -21);
        assert!(s.edge_identity && s.face_identity);
    }

    #[test]
    fn edges_join_consecutive_vertices_and_faces_are_transversal() {
        let (plane, bij, set) = q2();
        let x = assemble(&build_euclidean(&plane, &bij, &set).unwrap()).unwrap();
        for e in x.edges() {
            assert_eq!(e.tail, e.label.copy);
            assert_eq!(e.head, (e.label.copy + 1) % 3);
        }
        for f in 0..x.faces().len() {
            let mut vs: Vec<_> = x
                .corners()
                .iter()
                .filter(|c| c.face == f)
                .map(|c| c.vertex)
                .collect();
            vs.sort_unstable();
            assert_eq!(vs, [0, 1, 2]);
        }
    }

    #[test]
    fn unverified_presentations_are_refused() {
        let (plane, bij, set) = q2();
        let mut p = build_euclidean(&plane, &bij, &set).unwrap();
        let t = p.base_tuples()[0].to_vec();
        p.remove_tuple(&t);
        assert!(matches!(
            assemble(&p),
            Err(ComplexError::UncheckedPresentation(_))
        ));
    }

    #[test]
    fn curvature_classes() {
        assert_eq!(classify_curvature(3, 3).curvature, Curvature::Euclidean);
        assert_eq!(classify_curvature(7, 3).curvature, Curvature::Hyperbolic);
        assert_eq!(classify_curvature(3, 2).curvature, Curvature::Neither);
        assert_eq!(classify_curvature(4, 4).curvature, Curvature::Hyperbolic);
        assert_eq!(classify_curvature(4, 2).curvature, Curvature::Neither);
        assert_eq!(classify_curvature(5, 4).curvature, Curvature::Hyperbolic);
    }
}
