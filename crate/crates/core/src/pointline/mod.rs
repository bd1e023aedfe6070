//! Point-to-line bijections `T` and their two defining properties:
//!
//! * **P1**: no point lies on its own image line;
//! * **P2**: for distinct points `x1, x2`, the point `T(x1) ∩ T(x2)` is not
//!   on the line through `x1` and `x2`.
//!
//! Over `PG(2, q)` with `q` prime to 3 the trace construction `gF ↦ gE`
//! satisfies both; for other planes [`search_bijection`] looks for one.

mod format;
mod search;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::digest::short_hash;
use crate::gf::{FieldElement, FieldTower, TowerExt};
use crate::plane::{Pg2, Plane, PlaneError, Provenance};

pub use search::{search_bijection, SearchConfig, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointLineError {
    #[error("map has {found} entries but the plane has {expected} points")]
    WrongLength { expected: usize, found: usize },
    #[error("line index {0} out of range")]
    LineOutOfRange(usize),
    #[error("not a bijection: line L{line} is the image of two points")]
    NotBijective { line: usize },
    #[error("the trace construction needs characteristic other than 3")]
    CharacteristicThree,
    #[error("plane does not match: {0}")]
    PlaneMismatch(String),
    #[error("bijection is not certified")]
    NotCertified,
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// The first witness against P1/P2, in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyViolation {
    /// `point` lies on its image `line`.
    P1 {
        point: usize,
        line: usize,
    },
    /// `meet = T(x1) ∩ T(x2)` lies on `join`, the line through `x1, x2`.
    P2 {
        x1: usize,
        x2: usize,
        meet: usize,
        join: usize,
    },
    /// The plane has no unique join or meet for this pair.
    Undefined {
        x1: usize,
        x2: usize,
    },
    NotBijective {
        line: usize,
    },
}

impl fmt::Display for PropertyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyViolation::P1 { point, line } => {
                write!(f, "P1 violated: p{point} lies on its image L{line}")
            }
            PropertyViolation::P2 { x1, x2, meet, join } => write!(
                f,
                "P2 violated: T(p{x1}) meets T(p{x2}) in p{meet}, which lies on L{join} through p{x1} p{x2}"
            ),
            PropertyViolation::Undefined { x1, x2 } => {
                write!(f, "P2 undecidable: join or meet undefined for p{x1} p{x2}")
            }
            PropertyViolation::NotBijective { line } => {
                write!(f, "not a bijection: L{line} is hit twice")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Unchecked,
    Pass,
    Fail(PropertyViolation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointLineBijection {
    plane_name: String,
    plane_hash: String,
    map: Vec<usize>,
    certified: Certification,
}

impl PointLineBijection {
    /// An uncertified map `point i ↦ line map[i]`.
    pub fn new(plane: &Plane, map: Vec<usize>) -> Result<Self, PointLineError> {
        if map.len() != plane.num_points() {
            return Err(PointLineError::WrongLength {
                expected: plane.num_points(),
                found: map.len(),
            });
        }
        if let Some(&l) = map.iter().find(|&&l| l >= plane.num_lines()) {
            return Err(PointLineError::LineOutOfRange(l));
        }
        Ok(PointLineBijection {
            plane_name: plane.name().to_string(),
            plane_hash: plane.content_hash(),
            map,
            certified: Certification::Unchecked,
        })
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `T(x)`.
    pub fn line_of(&self, point: usize) -> usize {
        self.map[point]
    }

    /// `T⁻¹`, indexed by line. Only meaningful for bijective maps.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![usize::MAX; self.map.len()];
        for (x, &l) in self.map.iter().enumerate() {
            inv[l] = x;
        }
        inv
    }

    pub fn plane_name(&self) -> &str {
        &self.plane_name
    }

    pub fn plane_hash(&self) -> &str {
        &self.plane_hash
    }

    pub fn certification(&self) -> &Certification {
        &self.certified
    }

    pub fn is_certified(&self) -> bool {
        self.certified == Certification::Pass
    }

    /// Runs [`verify_properties`] and stores the outcome. A non-bijective
    /// map is recorded as a failure.
    pub fn certify(&mut self, plane: &Plane) -> Result<&Certification, PointLineError> {
        self.check_plane(plane)?;
        self.certified = match verify_properties(plane, &self.map) {
            Ok(c) => c,
            Err(PointLineError::NotBijective { line }) => {
                Certification::Fail(PropertyViolation::NotBijective { line })
            }
            Err(e) => return Err(e),
        };
        Ok(&self.certified)
    }

    pub(crate) fn require_certified(&self, plane: &Plane) -> Result<(), PointLineError> {
        self.check_plane(plane)?;
        if self.is_certified() {
            Ok(())
        } else {
            Err(PointLineError::NotCertified)
        }
    }

    pub fn check_plane(&self, plane: &Plane) -> Result<(), PointLineError> {
        if self.plane_hash != plane.content_hash() {
            return Err(PointLineError::PlaneMismatch(format!(
                "bijection was built over `{}` ({}), got `{}` ({})",
                self.plane_name,
                self.plane_hash,
                plane.name(),
                plane.content_hash()
            )));
        }
        Ok(())
    }

    /// Hash of the plane together with the map.
    pub fn content_hash(&self) -> String {
        short_hash([self.plane_hash.as_bytes(), self.to_text().as_bytes()])
    }
}

/// Exhaustively checks P1 over all points and P2 over all unordered pairs,
/// returning the first failure in index order.
pub fn verify_properties(plane: &Plane, map: &[usize]) -> Result<Certification, PointLineError> {
    if map.len() != plane.num_points() {
        return Err(PointLineError::WrongLength {
            expected: plane.num_points(),
            found: map.len(),
        });
    }
    let mut seen = vec![false; plane.num_lines()];
    for &l in map {
        if l >= seen.len() {
            return Err(PointLineError::LineOutOfRange(l));
        }
        if std::mem::replace(&mut seen[l], true) {
            return Err(PointLineError::NotBijective { line: l });
        }
    }
    for (point, &line) in map.iter().enumerate() {
        if plane.is_incident(point, line) {
            return Ok(Certification::Fail(PropertyViolation::P1 { point, line }));
        }
    }
    for x1 in 0..map.len() {
        for x2 in x1 + 1..map.len() {
            if let Some(v) = p2_violation(plane, x1, map[x1], x2, map[x2]) {
                return Ok(Certification::Fail(v));
            }
        }
    }
    Ok(Certification::Pass)
}

/// P2 for one pair of assignments.
pub(crate) fn p2_violation(
    plane: &Plane,
    x1: usize,
    l1: usize,
    x2: usize,
    l2: usize,
) -> Option<PropertyViolation> {
    let (Ok(meet), Ok(join)) = (plane.meet(l1, l2), plane.line_through(x1, x2)) else {
        return Some(PropertyViolation::Undefined { x1, x2 });
    };
    plane
        .is_incident(meet, join)
        .then_some(PropertyViolation::P2 { x1, x2, meet, join })
}

/// The trace bijection `T(gF) = gE` on `PG(2, q)`, certified.
pub fn trace_bijection(
    tower: &Arc<FieldTower>,
    plane: &Plane,
) -> Result<PointLineBijection, PointLineError> {
    if tower.char_p() == 3 {
        return Err(PointLineError::CharacteristicThree);
    }
    trace_map_unchecked(tower, plane)
}

/// The trace map without the characteristic check. In characteristic 3
/// it fails P1, because `Tr(1) = 0` puts `F` inside `E`.
pub fn trace_map_unchecked(
    tower: &Arc<FieldTower>,
    plane: &Plane,
) -> Result<PointLineBijection, PointLineError> {
    match plane.provenance() {
        Provenance::Algebraic { q } if *q == tower.q() => {}
        other => {
            return Err(PointLineError::PlaneMismatch(format!(
                "expected PG(2,{}) from the field tower, got {:?}",
                tower.q(),
                other
            )))
        }
    }
    let pg = Pg2::new(tower);
    let reference = pg.plane();
    if reference.lines() != plane.lines() {
        return Err(PointLineError::PlaneMismatch(
            "incidence differs from the tower's PG(2,q)".into(),
        ));
    }
    // Points and lines are indexed by the same coset representatives, so
    // gF and gE carry the same index.
    let map = pg
        .representatives()
        .iter()
        .map(|g| pg.index_of(g).expect("representative has a coset"))
        .collect();
    let mut bij = PointLineBijection::new(plane, map)?;
    bij.certify(plane)?;
    Ok(bij)
}

/// Checks `T(m·x) = m·T(x)` for every point under multiplication by `m`.
pub fn is_equivariant(pg: &Pg2, bijection: &PointLineBijection, m: &FieldElement) -> bool {
    pg.representatives().iter().enumerate().all(|(i, g)| {
        let moved_point = pg.index_of(&(m * g)).unwrap();
        let h = &pg.representatives()[bijection.line_of(i)];
        let moved_line = pg.index_of(&(m * h)).unwrap();
        bijection.line_of(moved_point) == moved_line
    })
}

/// The permutation `x ↦ T(x) ∩ y` of the points on a line `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedPermutation {
    pub line: usize,
    /// `I(y)`, sorted.
    pub domain: Vec<usize>,
    /// `image[i]` is the image of `domain[i]`.
    pub image: Vec<usize>,
}

impl InducedPermutation {
    pub fn apply(&self, x: usize) -> Option<usize> {
        let pos = self.domain.binary_search(&x).ok()?;
        Some(self.image[pos])
    }

    pub fn preimage(&self, x: usize) -> Option<usize> {
        let pos = self.image.iter().position(|&y| y == x)?;
        Some(self.domain[pos])
    }

    pub fn is_bijective(&self) -> bool {
        let mut sorted = self.image.clone();
        sorted.sort_unstable();
        sorted == self.domain
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.domain.iter().zip(&self.image).all(|(a, b)| a != b)
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.domain.len()];
        let mut lens = Vec::new();
        for start in 0..self.domain.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.domain.binary_search(&self.image[i]).unwrap();
            }
            if len > 0 {
                lens.push(len);
            }
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

/// `T*` on the line `y`. Panics if the result is not a fixed-point-free
/// bijection, which would contradict P1/P2.
pub fn induced_permutation(
    plane: &Plane,
    bijection: &PointLineBijection,
    line: usize,
) -> Result<InducedPermutation, PointLineError> {
    bijection.require_certified(plane)?;
    if line >= plane.num_lines() {
        return Err(PointLineError::LineOutOfRange(line));
    }
    let domain = plane.points_on(line).to_vec();
    let image = domain
        .iter()
        .map(|&x| plane.meet(bijection.line_of(x), line))
        .collect::<Result<Vec<_>, _>>()?;
    let perm = InducedPermutation {
        line,
        domain,
        image,
    };
    assert!(perm.is_bijective(), "T* on L{line} is not injective");
    assert!(
        perm.is_fixed_point_free(),
        "T* on L{line} has a fixed point"
    );
    Ok(perm)
}

/// Solutions over `K*` of the trace equations behind P2.
///
/// `literal` solves `Tr(g) = Tr(1/g) = 1`. `normalized` solves
/// `Tr(g) = Tr(1/g) = Tr(1)`, which is exactly the condition for `g - 1` to
/// lie in `E ∩ gE`; P2 holds for the trace map iff `normalized` is `{1}`.
/// The two agree when `Tr(1) = 1`, i.e. in characteristic 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceUniquenessReport {
    pub q: u32,
    pub trace_of_one: u32,
    pub literal: Vec<FieldElement>,
    pub normalized: Vec<FieldElement>,
}

fn is_only_one(set: &[FieldElement]) -> bool {
    set.len() == 1 && set[0].is_one()
}

impl TraceUniquenessReport {
    /// True iff the only solution of `Tr(g) = Tr(1/g) = 1` is `g = 1`.
    pub fn passes(&self) -> bool {
        is_only_one(&self.literal)
    }

    /// True iff the only solution of `Tr(g) = Tr(1/g) = Tr(1)` is `g = 1`.
    pub fn p2_obligation_holds(&self) -> bool {
        is_only_one(&self.normalized)
    }
}

/// Enumerates `K*` for both forms of the trace equations.
pub fn verify_trace_uniqueness(
    tower: &Arc<FieldTower>,
) -> Result<TraceUniquenessReport, PointLineError> {
    if tower.char_p() == 3 {
        return Err(PointLineError::CharacteristicThree);
    }
    let trace_of_one = tower.one().trace_scalar();
    let mut literal = Vec::new();
    let mut normalized = Vec::new();
    for g in tower.elements().into_iter().filter(|g| !g.is_zero()) {
        let (a, b) = (g.trace_scalar(), g.inv().unwrap().trace_scalar());
        if a == 1 && b == 1 {
            literal.push(g.clone());
        }
        if a == trace_of_one && b == trace_of_one {
            normalized.push(g);
        }
    }
    Ok(TraceUniquenessReport {
        q: tower.q(),
        trace_of_one,
        literal,
        normalized,
    })
}
