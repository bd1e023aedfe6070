use std::fmt::Write as _;

use super::{
    assemble, check_generalized_m_gon, classify_curvature, identify_link, ComplexError, GonCheck,
    GonParams, GraphError, LinkGraph, LinkIdentity, Polyhedron, Stats,
};
use crate::plane::Plane;
use crate::pointline::PointLineBijection;
use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkReport {
    pub link: LinkGraph,
    pub gon: Result<GonCheck, GraphError>,
    pub identity: LinkIdentity,
}

impl LinkReport {
    pub fn m(&self) -> Option<usize> {
        self.gon.as_ref().ok().and_then(|g| g.m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexReport {
    pub polyhedron: Polyhedron,
    pub stats: Stats,
    pub links: Vec<LinkReport>,
    /// Set when every link is a generalized m-gon for one common `m`.
    pub params: Option<GonParams>,
}

impl ComplexReport {
    pub fn passes(&self) -> bool {
        self.stats.edge_identity
            && self.stats.face_identity
            && self.params.is_some()
            && self
                .links
                .iter()
                .all(|l| !matches!(l.identity, LinkIdentity::Fail(_)))
    }

    /// First failing check, for diagnostics.
    pub fn first_failure(&self) -> Option<String> {
        if !self.stats.edge_identity {
            return Some("edge count differs from half the link node total".into());
        }
        if !self.stats.face_identity {
            return Some("k times face count differs from the link arc total".into());
        }
        for l in &self.links {
            match (&l.gon, l.m()) {
                (Err(e), _) => return Some(format!("gen-gon: link {}: {e}", l.link.vertex)),
                (Ok(g), None) => {
                    return Some(format!(
                        "gen-gon: link {} has diameter {} and girth {:?}",
                        l.link.vertex, g.diameter, g.girth
                    ))
                }
                _ => {}
            }
            if let LinkIdentity::Fail(e) = &l.identity {
                return Some(format!("link {} isomorphism: {e}", l.link.vertex));
            }
        }
        self.params
            .is_none()
            .then(|| "gen-gon: links have different m".into())
    }

    pub fn to_text(&self) -> String {
        let s = &self.stats;
        let curvature = self.params.map_or("neither", |p| p.curvature.as_str());
        let mut out = format!(
            "complex V={} E={} F={} k={} chi={} curvature={curvature}\n",
            s.vertices, s.edges, s.faces, s.face_size, s.euler
        );
        for l in &self.links {
            let m = l.m().map_or("none".to_string(), |m| m.to_string());
            let _ = writeln!(
                out,
                "link {}: nodes={} arcs={} gen-gon m={m} iso={}",
                l.link.vertex,
                l.link.graph.num_vertices(),
                l.link.graph.num_edges(),
                l.identity
            );
        }
        out
    }
}

/// Assembles the polyhedron and runs every link check.
pub fn analyze(
    p: &Presentation,
    plane: &Plane,
    bij: &PointLineBijection,
) -> Result<ComplexReport, ComplexError> {
    let polyhedron = assemble(p)?;
    let stats = polyhedron.stats()?;
    let links = (0..polyhedron.num_vertices())
        .map(|v| {
            let link = polyhedron.link(v)?;
            Ok(LinkReport {
                gon: check_generalized_m_gon(&link.graph),
                identity: identify_link(&link, p, plane, bij),
                link,
            })
        })
        .collect::<Result<Vec<_>, ComplexError>>()?;
    let ms: Vec<_> = links.iter().map(LinkReport::m).collect();
    let params = match ms.first() {
        Some(&Some(m)) if ms.iter().all(|&x| x == Some(m)) => {
            Some(classify_curvature(stats.face_size, m))
        }
        _ => None,
    };
    Ok(ComplexReport {
        polyhedron,
        stats,
        links,
        params,
    })
}
