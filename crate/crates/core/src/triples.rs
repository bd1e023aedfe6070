//! The triple set `K` of a certified bijection `T`, writing `y_t = T(x_t)`:
//! all `(x_i, x_j, x_k)` with `x_i ∈ y_k`, `x_j ∈ y_i` and `x_j ∈ y_k`.
//!
//! Each of the three pairs `(i, k)`, `(i, j)`, `(j, k)` determines the
//! triple, and extends to one exactly when its own incidence holds. The
//! conditions are not invariant under rotating `(i, j, k)`.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::plane::{Plane, PlaneError};
use crate::pointline::{induced_permutation, PointLineBijection, PointLineError};
use crate::text::{number, records, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error(transparent)]
    Bijection(#[from] PointLineError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("pair does not extend to a triple")]
    NoExtension,
    #[error("triple set was built from {expected}, inputs hash to {found}")]
    StaleInput { expected: String, found: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Triple {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        Triple { i, j, k }
    }

    /// `(j, k, i)`.
    pub fn rotated(self) -> Self {
        Triple::new(self.j, self.k, self.i)
    }

    pub fn project(self, kind: PairKind) -> (usize, usize) {
        match kind {
            PairKind::IK => (self.i, self.k),
            PairKind::IJ => (self.i, self.j),
            PairKind::JK => (self.j, self.k),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p{}, p{}, p{})", self.i, self.j, self.k)
    }
}

/// Which two coordinates of a triple are given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    IK,
    IJ,
    JK,
}

impl PairKind {
    pub const ALL: [PairKind; 3] = [PairKind::IK, PairKind::IJ, PairKind::JK];

    /// The incidence a pair `(a, b)` of this kind must satisfy.
    pub fn admissible(self, plane: &Plane, bij: &PointLineBijection, a: usize, b: usize) -> bool {
        match self {
            PairKind::IK => plane.is_incident(a, bij.line_of(b)),
            PairKind::IJ => plane.is_incident(b, bij.line_of(a)),
            PairKind::JK => plane.is_incident(a, bij.line_of(b)),
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::IK => "(i,k)",
            PairKind::IJ => "(i,j)",
            PairKind::JK => "(j,k)",
        })
    }
}

/// Whether `(i, j, k)` satisfies the three defining incidences.
pub fn is_member(plane: &Plane, bij: &PointLineBijection, t: Triple) -> bool {
    plane.is_incident(t.i, bij.line_of(t.k))
        && plane.is_incident(t.j, bij.line_of(t.i))
        && plane.is_incident(t.j, bij.line_of(t.k))
}

/// `K` for a fixed plane and bijection, sorted by `(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSet {
    plane_name: String,
    source_hash: String,
    triples: Vec<Triple>,
}

impl TripleSet {
    /// Wraps an arbitrary list, e.g. for checking hand-made sets. The list
    /// is sorted but not deduplicated.
    pub fn from_triples(bij: &PointLineBijection, mut triples: Vec<Triple>) -> Self {
        triples.sort_unstable();
        TripleSet {
            plane_name: bij.plane_name().to_string(),
            source_hash: bij.content_hash(),
            triples,
        }
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.triples.binary_search(&t).is_ok()
    }

    pub fn plane_name(&self) -> &str {
        &self.plane_name
    }

    /// Hash of the bijection (and through it, the plane) this set came from.
    pub fn source_hash(&self) -> &str {
        &self.source_hash
    }

    pub fn check_source(&self, bij: &PointLineBijection) -> Result<(), TripleError> {
        let found = bij.content_hash();
        if found != self.source_hash {
            return Err(TripleError::StaleInput {
                expected: self.source_hash.clone(),
                found,
            });
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("triples over {} {}\n", self.plane_name, self.source_hash);
        for t in &self.triples {
            let _ = writeln!(out, "t: {} {} {}", t.i, t.j, t.k);
        }
        out
    }

    pub fn parse(input: &str) -> Result<TripleSet, ParseError> {
        let mut recs = records(input);
        let (hline, header) = recs
            .next()
            .ok_or_else(|| ParseError::new(0, "empty triple file"))?;
        let (plane_name, source_hash) = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["triples", "over", plane, hash] => (plane.to_string(), hash.to_string()),
            _ => {
                return Err(ParseError::new(
                    hline,
                    "expected `triples over <plane> <bijection-hash>`",
                ))
            }
        };
        let mut triples = Vec::new();
        for (ln, rec) in recs {
            let body = rec
                .strip_prefix("t:")
                .ok_or_else(|| ParseError::new(ln, "expected `t: i j k`"))?;
            let nums = body
                .split_whitespace()
                .map(|t| number(t, ln))
                .collect::<Result<Vec<_>, _>>()?;
            let [i, j, k] = nums[..] else {
                return Err(ParseError::new(ln, "expected three indices"));
            };
            let t = Triple::new(i, j, k);
            if triples.last().is_some_and(|&prev| prev >= t) {
                return Err(ParseError::new(ln, "triples must be strictly increasing"));
            }
            triples.push(t);
        }
        Ok(TripleSet {
            plane_name,
            source_hash,
            triples,
        })
    }
}

/// One triple per flag `(x_i, y_k)`: `x_j` is forced to be `y_i ∩ y_k`.
pub fn enumerate_triples(
    plane: &Plane,
    bij: &PointLineBijection,
) -> Result<TripleSet, TripleError> {
    bij.require_certified(plane)?;
    let inverse = bij.inverse();
    let mut triples = Vec::with_capacity(plane.num_points() * (plane.order() + 1));
    for i in 0..plane.num_points() {
        for &line in plane.lines_through(i) {
            let k = inverse[line];
            let j = plane.meet(bij.line_of(i), line)?;
            let t = Triple::new(i, j, k);
            assert!(is_member(plane, bij, t), "{t} fails the membership test");
            triples.push(t);
        }
    }
    Ok(TripleSet::from_triples(bij, triples))
}

/// Extends a pair of the given kind to the unique triple containing it.
pub fn complete_pair(
    plane: &Plane,
    bij: &PointLineBijection,
    kind: PairKind,
    a: usize,
    b: usize,
) -> Result<Triple, TripleError> {
    bij.require_certified(plane)?;
    if a >= plane.num_points() || b >= plane.num_points() {
        return Err(PlaneError::IndexOutOfRange(a.max(b)).into());
    }
    if !kind.admissible(plane, bij, a, b) {
        return Err(TripleError::NoExtension);
    }
    let t = match kind {
        PairKind::IK => {
            let (i, k) = (a, b);
            Triple::new(i, plane.meet(bij.line_of(i), bij.line_of(k))?, k)
        }
        PairKind::IJ => {
            let (i, j) = (a, b);
            let line = plane.line_through(i, j)?;
            Triple::new(i, j, bij.inverse()[line])
        }
        PairKind::JK => {
            let (j, k) = (a, b);
            let perm = induced_permutation(plane, bij, bij.line_of(k))?;
            let i = perm.preimage(j).expect("T* is a bijection");
            Triple::new(i, j, k)
        }
    };
    debug_assert!(is_member(plane, bij, t));
    Ok(t)
}

/// First failure of the exactly-one-extension property for one projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaFailure {
    pub kind: PairKind,
    pub pair: (usize, usize),
    pub admissible: bool,
    pub occurrences: usize,
}

impl fmt::Display for LemmaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.pair;
        write!(
            f,
            "{} pair (p{a}, p{b}) is {}admissible but lies in {} triples",
            self.kind,
            if self.admissible { "" } else { "in" },
            self.occurrences
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub pairs_checked: usize,
    pub failures: Vec<LemmaFailure>,
}

impl LemmaReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every ordered pair and each projection: admissible pairs occur in
/// exactly one triple, the rest in none.
pub fn verify_crucial_lemma(
    plane: &Plane,
    bij: &PointLineBijection,
    set: &TripleSet,
) -> Result<LemmaReport, TripleError> {
    set.check_source(bij)?;
    let n = plane.num_points();
    let mut failures = Vec::new();
    for kind in PairKind::ALL {
        let mut counts = vec![0usize; n * n];
        for t in &set.triples {
            let (a, b) = t.project(kind);
            counts[a * n + b] += 1;
        }
        let first = (0..n * n).find_map(|idx| {
            let (a, b) = (idx / n, idx % n);
            let admissible = kind.admissible(plane, bij, a, b);
            let occurrences = counts[idx];
            (occurrences != usize::from(admissible)).then_some(LemmaFailure {
                kind,
                pair: (a, b),
                admissible,
                occurrences,
            })
        });
        failures.extend(first);
    }
    Ok(LemmaReport {
        pairs_checked: 3 * n * n,
        failures,
    })
}
