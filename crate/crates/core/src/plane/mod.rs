//! Finite projective planes as explicit incidence structures.
//!
//! Points and lines are indices `0..n`. Each line stores its sorted point
//! set; joining and meeting tables are precomputed so that the unique line
//! through two points (or point on two lines) is a lookup.

mod format;
mod pg2;

use std::fmt;

use thiserror::Error;

use crate::complex::gon::{check_generalized_m_gon, Graph, GraphError};
use crate::digest::short_hash;

pub use pg2::{build_pg2, Pg2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("plane has no lines")]
    Empty,
    #[error("line {line} lists point {point}, which is out of range")]
    PointOutOfRange { line: usize, point: usize },
    #[error("line {line} lists point {point} twice")]
    RepeatedPoint { line: usize, point: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("the two points coincide")]
    SamePoint,
    #[error("the two lines coincide")]
    SameLine,
    #[error("point {point} is not on line {line}")]
    NotIncident { point: usize, line: usize },
    #[error("incidence axiom violated: expected exactly one, found {found:?}")]
    AxiomViolation { found: Vec<usize> },
}

/// Where a plane came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// `PG(2, q)` built from the field tower of order `q`.
    Algebraic {
        q: u32,
    },
    File,
    Dual {
        of: String,
    },
}

const NONE: u32 = u32::MAX;
const MULTI: u32 = u32::MAX - 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plane {
    name: String,
    order: usize,
    num_points: usize,
    lines: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
    join: Vec<u32>,
    meet: Vec<u32>,
    provenance: Provenance,
}

impl Plane {
    /// Builds a plane from its line point-sets. Only index sanity is
    /// enforced; the projective axioms are checked by [`validate_plane`].
    /// The order is read off the first line.
    pub fn from_lines(
        name: impl Into<String>,
        num_points: usize,
        lines: Vec<Vec<usize>>,
        provenance: Provenance,
    ) -> Result<Self, PlaneError> {
        if lines.is_empty() {
            return Err(PlaneError::Empty);
        }
        let mut lines = lines;
        for (l, pts) in lines.iter_mut().enumerate() {
            pts.sort_unstable();
            if let Some(&p) = pts.iter().find(|&&p| p >= num_points) {
                return Err(PlaneError::PointOutOfRange { line: l, point: p });
            }
            if let Some(w) = pts.windows(2).find(|w| w[0] == w[1]) {
                return Err(PlaneError::RepeatedPoint {
                    line: l,
                    point: w[0],
                });
            }
        }
        let mut point_lines = vec![Vec::new(); num_points];
        for (l, pts) in lines.iter().enumerate() {
            for &p in pts {
                point_lines[p].push(l);
            }
        }
        let join = pair_table(num_points, &lines);
        let meet = pair_table(lines.len(), &point_lines);
        Ok(Plane {
            name: name.into(),
            order: lines[0].len().saturating_sub(1),
            num_points,
            lines,
            point_lines,
            join,
            meet,
            provenance,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Sorted points of every line, in line order.
    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// `I(y)`, the sorted points on line `y`.
    pub fn points_on(&self, line: usize) -> &[usize] {
        &self.lines[line]
    }

    /// Sorted lines through `point`.
    pub fn lines_through(&self, point: usize) -> &[usize] {
        &self.point_lines[point]
    }

    pub fn is_incident(&self, point: usize, line: usize) -> bool {
        self.lines[line].binary_search(&point).is_ok()
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, p1: usize, p2: usize) -> Result<usize, PlaneError> {
        if p1 >= self.num_points || p2 >= self.num_points {
            return Err(PlaneError::IndexOutOfRange(p1.max(p2)));
        }
        if p1 == p2 {
            return Err(PlaneError::SamePoint);
        }
        match self.join[p1 * self.num_points + p2] {
            NONE | MULTI => Err(PlaneError::AxiomViolation {
                found: common(&self.point_lines[p1], &self.point_lines[p2]),
            }),
            l => Ok(l as usize),
        }
    }

    /// The unique point on two distinct lines.
    pub fn meet(&self, l1: usize, l2: usize) -> Result<usize, PlaneError> {
        let n = self.lines.len();
        if l1 >= n || l2 >= n {
            return Err(PlaneError::IndexOutOfRange(l1.max(l2)));
        }
        if l1 == l2 {
            return Err(PlaneError::SameLine);
        }
        match self.meet[l1 * n + l2] {
            NONE | MULTI => Err(PlaneError::AxiomViolation {
                found: common(&self.lines[l1], &self.lines[l2]),
            }),
            p => Ok(p as usize),
        }
    }

    /// True iff some line contains every point of `points`.
    pub fn is_collinear(&self, points: &[usize]) -> bool {
        match points {
            [] | [_] => true,
            [first, rest @ ..] => self.point_lines[*first]
                .iter()
                .any(|&l| rest.iter().all(|&p| self.is_incident(p, l))),
        }
    }

    /// Swaps points and lines. Dualizing twice gives back the same
    /// incidence, index for index.
    pub fn dualize(&self) -> Plane {
        let name = match self.name.strip_suffix("-dual") {
            Some(base) => base.to_string(),
            None => format!("{}-dual", self.name),
        };
        Plane::from_lines(
            name,
            self.lines.len(),
            self.point_lines.clone(),
            Provenance::Dual {
                of: self.name.clone(),
            },
        )
        .expect("transposed incidence is well formed")
    }

    pub fn incidence_graph(&self) -> IncidenceGraph {
        let n = self.num_points;
        let edges = self
            .lines
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| (p, n + l)));
        IncidenceGraph {
            graph: Graph::from_edges(n + self.lines.len(), edges),
            num_points: n,
            num_lines: self.lines.len(),
        }
    }

    /// Hash of the canonical text form.
    pub fn content_hash(&self) -> String {
        short_hash([self.to_text().as_bytes()])
    }

    /// Drops one incidence; for building deliberately broken planes.
    pub fn without_incidence(&self, point: usize, line: usize) -> Result<Plane, PlaneError> {
        if line >= self.lines.len() {
            return Err(PlaneError::IndexOutOfRange(line));
        }
        if !self.is_incident(point, line) {
            return Err(PlaneError::NotIncident { point, line });
        }
        let mut lines = self.lines.clone();
        lines[line].retain(|&p| p != point);
        Plane::from_lines(self.name.clone(), self.num_points, lines, Provenance::File)
    }
}

fn pair_table(n: usize, sets: &[Vec<usize>]) -> Vec<u32> {
    let mut table = vec![NONE; n * n];
    for (owner, members) in sets.iter().enumerate() {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                for idx in [a * n + b, b * n + a] {
                    table[idx] = if table[idx] == NONE {
                        owner as u32
                    } else {
                        MULTI
                    };
                }
            }
        }
    }
    table
}

fn common(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

/// Bipartite point–line graph; vertices are all points, then all lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub graph: Graph,
    pub num_points: usize,
    pub num_lines: usize,
}

impl IncidenceGraph {
    pub fn line_vertex(&self, line: usize) -> usize {
        self.num_points + line
    }

    pub fn to_edge_list(&self) -> String {
        self.graph
            .to_edge_list(Some((self.num_points, self.num_lines)))
    }
}

/// One failed axiom together with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneViolation {
    PointCount {
        expected: usize,
        found: usize,
    },
    LineCount {
        expected: usize,
        found: usize,
    },
    LineSize {
        line: usize,
        size: usize,
    },
    PointDegree {
        point: usize,
        degree: usize,
    },
    /// Two points on zero or several common lines.
    PointPair {
        p1: usize,
        p2: usize,
        lines: Vec<usize>,
    },
    /// Two lines with zero or several common points.
    LinePair {
        l1: usize,
        l2: usize,
        points: Vec<usize>,
    },
    /// No four points with no three collinear.
    Degenerate,
    IncidenceGraphDisconnected {
        unreachable: usize,
    },
    NotGeneralizedTriangle {
        diameter: usize,
        girth: Option<usize>,
    },
}

impl fmt::Display for PlaneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PlaneViolation::*;
        match self {
            PointCount { expected, found } => {
                write!(f, "point count {found}, expected {expected}")
            }
            LineCount { expected, found } => write!(f, "line count {found}, expected {expected}"),
            LineSize { line, size } => write!(f, "line L{line} has {size} points"),
            PointDegree { point, degree } => write!(f, "point p{point} lies on {degree} lines"),
            PointPair { p1, p2, lines } => {
                write!(
                    f,
                    "points p{p1} p{p2} share {} lines {lines:?}",
                    lines.len()
                )
            }
            LinePair { l1, l2, points } => {
                write!(
                    f,
                    "lines L{l1} L{l2} share {} points {points:?}",
                    points.len()
                )
            }
            Degenerate => write!(f, "no four points in general position"),
            IncidenceGraphDisconnected { unreachable } => {
                write!(f, "incidence graph disconnected at vertex {unreachable}")
            }
            NotGeneralizedTriangle { diameter, girth } => write!(
                f,
                "incidence graph is not a generalized 3-gon (diameter {diameter}, girth {girth:?})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlaneReport {
    pub violations: Vec<PlaneViolation>,
}

impl PlaneReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every projective-plane axiom, listing each violation with a
/// witness, and independently runs the generalized 3-gon test on the
/// incidence graph.
pub fn validate_plane(plane: &Plane) -> PlaneReport {
    let mut violations = Vec::new();
    let q = plane.order;
    let expected = q * q + q + 1;
    if plane.num_points != expected {
        violations.push(PlaneViolation::PointCount {
            expected,
            found: plane.num_points,
        });
    }
    if plane.num_lines() != expected {
        violations.push(PlaneViolation::LineCount {
            expected,
            found: plane.num_lines(),
        });
    }
    for (line, pts) in plane.lines.iter().enumerate() {
        if pts.len() != q + 1 {
            violations.push(PlaneViolation::LineSize {
                line,
                size: pts.len(),
            });
        }
    }
    for (point, ls) in plane.point_lines.iter().enumerate() {
        if ls.len() != q + 1 {
            violations.push(PlaneViolation::PointDegree {
                point,
                degree: ls.len(),
            });
        }
    }
    let n = plane.num_points;
    for p1 in 0..n {
        for p2 in p1 + 1..n {
            if matches!(plane.join[p1 * n + p2], NONE | MULTI) {
                violations.push(PlaneViolation::PointPair {
                    p1,
                    p2,
                    lines: common(&plane.point_lines[p1], &plane.point_lines[p2]),
                });
            }
        }
    }
    let m = plane.num_lines();
    for l1 in 0..m {
        for l2 in l1 + 1..m {
            if matches!(plane.meet[l1 * m + l2], NONE | MULTI) {
                violations.push(PlaneViolation::LinePair {
                    l1,
                    l2,
                    points: common(&plane.lines[l1], &plane.lines[l2]),
                });
            }
        }
    }
    if find_quadrangle(plane).is_none() {
        violations.push(PlaneViolation::Degenerate);
    }
    match check_generalized_m_gon(&plane.incidence_graph().graph) {
        Ok(check) if check.m == Some(3) => {}
        Ok(check) => violations.push(PlaneViolation::NotGeneralizedTriangle {
            diameter: check.diameter,
            girth: check.girth,
        }),
        Err(GraphError::Disconnected { unreachable }) => {
            violations.push(PlaneViolation::IncidenceGraphDisconnected { unreachable })
        }
        Err(GraphError::Empty) => {
            violations.push(PlaneViolation::IncidenceGraphDisconnected { unreachable: 0 })
        }
    }
    PlaneReport { violations }
}

/// Four points, no three collinear.
pub fn find_quadrangle(plane: &Plane) -> Option<[usize; 4]> {
    let n = plane.num_points;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if plane.is_collinear(&[a, b, c]) {
                    continue;
                }
                for d in c + 1..n {
                    if !plane.is_collinear(&[a, b, d])
                        && !plane.is_collinear(&[a, c, d])
                        && !plane.is_collinear(&[b, c, d])
                    {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}
