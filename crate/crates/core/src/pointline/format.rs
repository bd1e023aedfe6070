//! Bijection files:
//!
//! ```text
//! bijection over <plane name>
//! p<i> -> L<j>
//! ```
//!
//! Certification is not stored; [`PointLineBijection::parse`] recomputes it.

use std::fmt::Write as _;

use super::PointLineBijection;
use crate::plane::Plane;
use crate::text::{indexed, records, ParseError};

impl PointLineBijection {
    pub fn to_text(&self) -> String {
        let mut out = format!("bijection over {}\n", self.plane_name);
        for (x, l) in self.map.iter().enumerate() {
            let _ = writeln!(out, "p{x} -> L{l}");
        }
        out
    }

    /// Reads a bijection over `plane` and certifies it.
    pub fn parse(input: &str, plane: &Plane) -> Result<PointLineBijection, ParseError> {
        let mut recs = records(input);
        let (hline, header) = recs
            .next()
            .ok_or_else(|| ParseError::new(0, "empty bijection file"))?;
        match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["bijection", "over", name] if name == plane.name() => {}
            ["bijection", "over", name] => {
                return Err(ParseError::new(
                    hline,
                    format!("bijection is over `{name}`, not `{}`", plane.name()),
                ))
            }
            _ => return Err(ParseError::new(hline, "expected `bijection over <plane>`")),
        }
        let mut map = Vec::new();
        for (ln, rec) in recs {
            let (lhs, rhs) = rec
                .split_once("->")
                .ok_or_else(|| ParseError::new(ln, "expected `p<i> -> L<j>`"))?;
            let x = indexed(lhs.trim(), "p", ln)?;
            if x != map.len() {
                return Err(ParseError::new(
                    ln,
                    format!("expected p{}, found p{x}", map.len()),
                ));
            }
            map.push(indexed(rhs.trim(), "L", ln)?);
        }
        let mut bij =
            PointLineBijection::new(plane, map).map_err(|e| ParseError::new(0, e.to_string()))?;
        bij.certify(plane)
            .map_err(|e| ParseError::new(0, e.to_string()))?;
        Ok(bij)
    }
}
