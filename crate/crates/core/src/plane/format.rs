//! Plain-text plane files:
//!
//! ```text
//! plane <name> order <q>
//! L<i>: p<j1> p<j2> ... p<j(q+1)>
//! ```

use std::fmt::Write as _;

use super::{Plane, Provenance};
use crate::text::{indexed, number, records, ParseError};

impl Plane {
    pub fn to_text(&self) -> String {
        let mut out = format!("plane {} order {}\n", self.name, self.order);
        for (l, pts) in self.lines.iter().enumerate() {
            let _ = write!(out, "L{l}:");
            for p in pts {
                let _ = write!(out, " p{p}");
            }
            out.push('\n');
        }
        out
    }

    /// Reads a plane file. Line records may come in any order but every
    /// index must appear exactly once, and all lines must have `q + 1`
    /// points for the declared order `q`.
    pub fn parse(input: &str) -> Result<Plane, ParseError> {
        let mut recs = records(input);
        let (hline, header) = recs
            .next()
            .ok_or_else(|| ParseError::new(0, "empty plane file"))?;
        let (name, order) = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["plane", name, "order", q] => (name.to_string(), number(q, hline)?),
            _ => return Err(ParseError::new(hline, "expected `plane <name> order <q>`")),
        };

        let mut slots: Vec<Option<Vec<usize>>> = Vec::new();
        let mut max_point = None;
        for (ln, rec) in recs {
            let (head, body) = rec
                .split_once(':')
                .ok_or_else(|| ParseError::new(ln, "expected `L<i>: p<j> ...`"))?;
            let idx = indexed(head.trim(), "L", ln)?;
            let pts = body
                .split_whitespace()
                .map(|t| indexed(t, "p", ln))
                .collect::<Result<Vec<_>, _>>()?;
            if pts.len() != order + 1 {
                return Err(ParseError::new(
                    ln,
                    format!(
                        "line L{idx} has {} points; order {order} needs {}",
                        pts.len(),
                        order + 1
                    ),
                ));
            }
            max_point = pts.iter().copied().chain(max_point).max();
            if slots.len() <= idx {
                slots.resize(idx + 1, None);
            }
            if slots[idx].replace(pts).is_some() {
                return Err(ParseError::new(ln, format!("line L{idx} listed twice")));
            }
        }
        let lines = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| ParseError::new(0, format!("line L{i} missing"))))
            .collect::<Result<Vec<_>, _>>()?;
        let num_points = max_point.map_or(0, |m| m + 1);
        Plane::from_lines(name, num_points, lines, Provenance::File)
            .map_err(|e| ParseError::new(0, e.to_string()))
    }
}
