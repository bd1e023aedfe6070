//! Polygonal presentations built from `K`.
//!
//! There are `n` labeled copies of the plane, each either straight (`x_i^t`,
//! `y_i^t` are point `i` and line `T(x_i)`) or dual (roles swapped). The
//! basic bijection is `λ(x_i^t) = y_i^{t+1}`, copy indices cyclic.

mod check;
mod format;
mod word;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::plane::Plane;
use crate::pointline::{PointLineBijection, PointLineError};
use crate::triples::{TripleError, TripleSet};

pub use check::{verify_presentation, PresentationReport, PresentationViolation};
pub use word::{orientation_after, sign, validate_word, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Triples(#[from] TripleError),
    #[error(transparent)]
    Bijection(#[from] PointLineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Straight,
    Dual,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Straight => "straight",
            Orientation::Dual => "dual",
        }
    }
}

/// Point `x_index^{copy+1}`; copies are stored 0-based and printed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointLabel {
    pub copy: usize,
    pub index: usize,
}

/// Line `y_index^{copy+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineLabel {
    pub copy: usize,
    pub index: usize,
}

impl PointLabel {
    pub fn new(copy: usize, index: usize) -> Self {
        PointLabel { copy, index }
    }
}

impl LineLabel {
    pub fn new(copy: usize, index: usize) -> Self {
        LineLabel { copy, index }
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}^{}", self.index, self.copy + 1)
    }
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{}^{}", self.index, self.copy + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Triangle,
    Word(Word),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Triangle => f.write_str("triangle"),
            Shape::Word(w) => w.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    shape: Shape,
    k: usize,
    copies: Vec<Orientation>,
    points_per_copy: usize,
    /// `on_line[i * N + j]`: point `j` lies on `T(x_i)`.
    on_line: Vec<bool>,
    lambda: Vec<LineLabel>,
    tuples: BTreeSet<Vec<PointLabel>>,
    plane_name: String,
    source_hash: String,
}

impl Presentation {
    /// Copies with the given orientations over `plane`, the standard `λ`,
    /// and no tuples yet.
    fn skeleton(
        plane: &Plane,
        bij: &PointLineBijection,
        shape: Shape,
        k: usize,
        copies: Vec<Orientation>,
    ) -> Result<Self, PresentationError> {
        bij.require_certified(plane)?;
        let n_pts = plane.num_points();
        let mut on_line = vec![false; n_pts * n_pts];
        for i in 0..n_pts {
            for &j in plane.points_on(bij.line_of(i)) {
                on_line[i * n_pts + j] = true;
            }
        }
        let n = copies.len();
        let lambda = (0..n)
            .flat_map(|t| (0..n_pts).map(move |i| LineLabel::new((t + 1) % n, i)))
            .collect();
        Ok(Presentation {
            shape,
            k,
            copies,
            points_per_copy: n_pts,
            on_line,
            lambda,
            tuples: BTreeSet::new(),
            plane_name: plane.name().to_string(),
            source_hash: bij.content_hash(),
        })
    }

    /// Adds `t` together with all its cyclic rotations.
    fn insert_with_rotations(&mut self, t: &[PointLabel]) {
        for r in 0..t.len() {
            let mut rot = t.to_vec();
            rot.rotate_left(r);
            self.tuples.insert(rot);
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Tuple length.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of copies.
    pub fn n(&self) -> usize {
        self.copies.len()
    }

    pub fn copies(&self) -> &[Orientation] {
        &self.copies
    }

    pub fn points_per_copy(&self) -> usize {
        self.points_per_copy
    }

    pub fn plane_name(&self) -> &str {
        &self.plane_name
    }

    pub fn source_hash(&self) -> &str {
        &self.source_hash
    }

    pub fn point_labels(&self) -> impl Iterator<Item = PointLabel> + '_ {
        (0..self.n())
            .flat_map(move |t| (0..self.points_per_copy).map(move |i| PointLabel::new(t, i)))
    }

    pub fn lambda(&self, x: PointLabel) -> LineLabel {
        self.lambda[x.copy * self.points_per_copy + x.index]
    }

    /// `λ` in label order.
    pub fn lambda_table(&self) -> &[LineLabel] {
        &self.lambda
    }

    /// Incidence inside the copies; labels in different copies never meet.
    pub fn incident(&self, x: PointLabel, y: LineLabel) -> bool {
        if x.copy != y.copy {
            return false;
        }
        let n = self.points_per_copy;
        match self.copies[x.copy] {
            Orientation::Straight => self.on_line[y.index * n + x.index],
            Orientation::Dual => self.on_line[x.index * n + y.index],
        }
    }

    /// All tuples, rotations included.
    pub fn tuples(&self) -> &BTreeSet<Vec<PointLabel>> {
        &self.tuples
    }

    /// One tuple per rotation class: its least rotation.
    pub fn base_tuples(&self) -> Vec<&[PointLabel]> {
        self.tuples
            .iter()
            .filter(|t| {
                (1..t.len()).all(|r| {
                    let mut rot = t.to_vec();
                    rot.rotate_left(r);
                    rot >= **t
                })
            })
            .map(Vec::as_slice)
            .collect()
    }

    pub fn insert_tuple(&mut self, t: Vec<PointLabel>) -> bool {
        self.tuples.insert(t)
    }

    pub fn remove_tuple(&mut self, t: &[PointLabel]) -> bool {
        self.tuples.remove(t)
    }

    /// Equality of everything except the recorded shape.
    pub fn same_structure(&self, other: &Presentation) -> bool {
        let mut a = self.clone();
        a.shape = other.shape.clone();
        a == *other
    }
}

fn check_inputs(
    plane: &Plane,
    bij: &PointLineBijection,
    triples: &TripleSet,
) -> Result<(), PresentationError> {
    bij.check_plane(plane)?;
    triples.check_source(bij)?;
    Ok(())
}

/// Three copies (straight, straight, dual) and the tuples
/// `(x_i^1, x_j^2, x_k^3)` for `(i, j, k) ∈ K`, with rotations.
pub fn build_euclidean(
    plane: &Plane,
    bij: &PointLineBijection,
    triples: &TripleSet,
) -> Result<Presentation, PresentationError> {
    use Orientation::*;
    check_inputs(plane, bij, triples)?;
    let mut p = Presentation::skeleton(
        plane,
        bij,
        Shape::Triangle,
        3,
        vec![Straight, Straight, Dual],
    )?;
    for t in triples.triples() {
        p.insert_with_rotations(&[
            PointLabel::new(0, t.i),
            PointLabel::new(1, t.j),
            PointLabel::new(2, t.k),
        ]);
    }
    Ok(p)
}

/// One copy per letter of `w`; the tuple of `(i, j, k) ∈ K` carries at place
/// `t` the label of `i`, `j` or `k` in copy `t`, as `z_t` is `a`, `b` or `c`.
pub fn build_hyperbolic(
    plane: &Plane,
    bij: &PointLineBijection,
    triples: &TripleSet,
    w: &Word,
) -> Result<Presentation, PresentationError> {
    build_word_with(plane, bij, triples, w, w.orientations())
}

pub(crate) fn build_word_with(
    plane: &Plane,
    bij: &PointLineBijection,
    triples: &TripleSet,
    w: &Word,
    copies: Vec<Orientation>,
) -> Result<Presentation, PresentationError> {
    check_inputs(plane, bij, triples)?;
    let mut p = Presentation::skeleton(plane, bij, Shape::Word(w.clone()), w.len(), copies)?;
    for t in triples.triples() {
        let tuple: Vec<_> = w
            .letters()
            .iter()
            .enumerate()
            .map(|(pos, l)| PointLabel::new(pos, l.select((t.i, t.j, t.k))))
            .collect();
        p.insert_with_rotations(&tuple);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::tower_for_order;
    use crate::plane::build_pg2;
    use crate::pointline::trace_bijection;
    use crate::triples::enumerate_triples;

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
        let p = build_euclidean(&plane, &bij, &set).unwrap();
        assert_eq!(p.tuples().len(), 63);
        assert_eq!(p.base_tuples().len(), 21);
        assert_eq!(p.point_labels().count(), 21);
        assert!(verify_presentation(&p).passes());
    }

    #[test]
    fn hyperbolic_counts() {
        let (plane, bij, set) = q2();
        let w = validate_word("abcbcab").unwrap();
        let p = build_hyperbolic(&plane, &bij, &set, &w).unwrap();
        assert_eq!((p.k(), p.n()), (7, 7));
        assert_eq!(p.tuples().len(), 147);
        assert_eq!(p.base_tuples().len(), 21);
        assert_eq!(p.point_labels().count(), 49);
        assert!(verify_presentation(&p).passes());
    }

    #[test]
    fn word_abc_is_the_triangle() {
        let (plane, bij, set) = q2();
        let e = build_euclidean(&plane, &bij, &set).unwrap();
        let h = build_hyperbolic(&plane, &bij, &set, &validate_word("abc").unwrap()).unwrap();
        assert!(h.same_structure(&e));
        assert_ne!(h, e);
    }

    #[test]
    fn orientations_from_the_sign_table_break_condition_two() {
        let (plane, bij, set) = q2();
        let w = validate_word("abcbcab").unwrap();
        let n = w.len();
        let by_sign: Vec<_> = (0..n)
            .map(|t| {
                let (a, b) = (w.letters()[t], w.letters()[(t + 1) % n]);
                if sign(a, b).unwrap() > 0 {
                    Orientation::Straight
                } else {
                    Orientation::Dual
                }
            })
            .collect();
        assert_ne!(by_sign, w.orientations());
        let p = build_word_with(&plane, &bij, &set, &w, by_sign).unwrap();
        let report = verify_presentation(&p);
        assert!(report.violations.iter().any(|v| v.condition() == Some(2)));
    }

    #[test]
    fn stale_triples_are_rejected() {
        let (plane, bij, _) = q2();
        let t4 = tower_for_order(4).unwrap();
        let p4 = build_pg2(&t4);
        let b4 = trace_bijection(&t4, &p4).unwrap();
        let s4 = enumerate_triples(&p4, &b4).unwrap();
        assert!(matches!(
            build_euclidean(&plane, &bij, &s4),
            Err(PresentationError::Triples(TripleError::StaleInput { .. }))
        ));
    }
}
