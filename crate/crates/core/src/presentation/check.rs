//! Exhaustive check of the three presentation conditions plus the
//! well-formedness of labels and `λ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{LineLabel, PointLabel, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationViolation {
    /// A tuple of the wrong length or with a label outside the copies.
    MalformedTuple { tuple: Vec<PointLabel> },
    /// Two points share an image.
    LambdaNotBijective { line: LineLabel },
    /// A tuple whose rotation is missing.
    Condition1 {
        tuple: Vec<PointLabel>,
        missing: Vec<PointLabel>,
    },
    /// `x2 ~ λ(x1)` but no tuple starts with `(x1, x2)`.
    Condition2Missing { x1: PointLabel, x2: PointLabel },
    /// A tuple starts with `(x1, x2)` although `x2` is not on `λ(x1)`.
    Condition2Spurious { x1: PointLabel, x2: PointLabel },
    /// More than one continuation of `(x1, x2)`.
    Condition3 {
        x1: PointLabel,
        x2: PointLabel,
        continuations: Vec<PointLabel>,
    },
}

impl PresentationViolation {
    /// Number of the presentation condition violated, if any.
    pub fn condition(&self) -> Option<u8> {
        match self {
            PresentationViolation::Condition1 { .. } => Some(1),
            PresentationViolation::Condition2Missing { .. }
            | PresentationViolation::Condition2Spurious { .. } => Some(2),
            PresentationViolation::Condition3 { .. } => Some(3),
            _ => None,
        }
    }
}

fn join(labels: &[PointLabel]) -> String {
    labels
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for PresentationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PresentationViolation::*;
        match self {
            MalformedTuple { tuple } => write!(f, "malformed tuple ({})", join(tuple)),
            LambdaNotBijective { line } => write!(f, "lambda is not a bijection: {line} hit twice"),
            Condition1 { tuple, missing } => write!(
                f,
                "condition (1): ({}) is present but its rotation ({}) is not",
                join(tuple),
                join(missing)
            ),
            Condition2Missing { x1, x2 } => write!(
                f,
                "condition (2): {x2} is incident to lambda({x1}) but no tuple starts ({x1}, {x2})"
            ),
            Condition2Spurious { x1, x2 } => write!(
                f,
                "condition (2): a tuple starts ({x1}, {x2}) but {x2} is not incident to lambda({x1})"
            ),
            Condition3 {
                x1,
                x2,
                continuations,
            } => write!(
                f,
                "condition (3): ({x1}, {x2}) continues with each of {}",
                join(continuations)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationReport {
    pub pairs_checked: usize,
    /// First witness of each failed check.
    pub violations: Vec<PresentationViolation>,
}

impl PresentationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed_conditions(&self) -> BTreeSet<u8> {
        self.violations
            .iter()
            .filter_map(|v| v.condition())
            .collect()
    }
}

pub fn verify_presentation(p: &Presentation) -> PresentationReport {
    let mut violations = Vec::new();
    let n_pts = p.points_per_copy();
    let in_range = |x: &PointLabel| x.copy < p.n() && x.index < n_pts;

    if let Some(t) = p
        .tuples()
        .iter()
        .find(|t| t.len() != p.k() || !t.iter().all(in_range))
    {
        violations.push(PresentationViolation::MalformedTuple { tuple: t.clone() });
    }

    let mut seen = BTreeSet::new();
    if let Some(&line) = p
        .lambda_table()
        .iter()
        .find(|&&y| y.copy >= p.n() || y.index >= n_pts || !seen.insert(y))
    {
        violations.push(PresentationViolation::LambdaNotBijective { line });
    }

    let missing_rotation = p.tuples().iter().find_map(|t| {
        let mut rot = t.clone();
        rot.rotate_left(1);
        (!p.tuples().contains(&rot)).then(|| (t.clone(), rot))
    });
    if let Some((tuple, missing)) = missing_rotation {
        violations.push(PresentationViolation::Condition1 { tuple, missing });
    }

    let mut continuations: BTreeMap<(PointLabel, PointLabel), BTreeSet<Option<PointLabel>>> =
        BTreeMap::new();
    for t in p.tuples().iter().filter(|t| t.len() >= 2) {
        continuations
            .entry((t[0], t[1]))
            .or_default()
            .insert(t.get(2).copied());
    }

    let labels: Vec<_> = p.point_labels().collect();
    let mut c2 = None;
    let mut c3 = None;
    for &x1 in &labels {
        let y = p.lambda(x1);
        for &x2 in &labels {
            let next = continuations.get(&(x1, x2));
            let incident = p.incident(x2, y);
            if c2.is_none() {
                match (incident, next.is_some()) {
                    (true, false) => c2 = Some(PresentationViolation::Condition2Missing { x1, x2 }),
                    (false, true) => {
                        c2 = Some(PresentationViolation::Condition2Spurious { x1, x2 })
                    }
                    _ => {}
                }
            }
            if c3.is_none() {
                if let Some(next) = next.filter(|s| s.len() > 1) {
                    c3 = Some(PresentationViolation::Condition3 {
                        x1,
                        x2,
                        continuations: next.iter().flatten().copied().collect(),
                    });
                }
            }
        }
    }
    violations.extend(c2);
    violations.extend(c3);

    PresentationReport {
        pairs_checked: labels.len() * labels.len(),
        violations,
    }
}
