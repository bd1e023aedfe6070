//! Presentation files:
//!
//! ```text
//! presentation k=<k> n=<n> word=<w|triangle>
//! source: <plane name> <bijection hash>
//! copy <t> <straight|dual>
//! lambda: x<i>^<t> -> y<i>^<t+1>
//! f: x<i1>^1 x<i2>^2 ... x<ik>^k
//! ```
//!
//! Only the least rotation of each tuple is written; the others are implied.

use std::fmt::Write as _;

use super::{validate_word, Orientation, PointLabel, Presentation, Shape};
use crate::plane::Plane;
use crate::pointline::PointLineBijection;
use crate::text::{number, records, ParseError};

const LAMBDA_RULE: &str = "x<i>^<t> -> y<i>^<t+1>";

fn point_label(token: &str, line: usize) -> Result<PointLabel, ParseError> {
    let bad = || ParseError::new(line, format!("expected x<i>^<t>, found `{token}`"));
    let (i, t) = token
        .strip_prefix('x')
        .and_then(|rest| rest.split_once('^'))
        .ok_or_else(bad)?;
    let index = number(i, line)?;
    let copy = number(t, line)?;
    if copy == 0 {
        return Err(bad());
    }
    Ok(PointLabel::new(copy - 1, index))
}

fn field<'a>(token: &'a str, key: &str, line: usize) -> Result<&'a str, ParseError> {
    token
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| ParseError::new(line, format!("expected {key}=<value>, found `{token}`")))
}

impl Presentation {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "presentation k={} n={} word={}\nsource: {} {}\n",
            self.k,
            self.n(),
            self.shape,
            self.plane_name,
            self.source_hash
        );
        for (t, o) in self.copies.iter().enumerate() {
            let _ = writeln!(out, "copy {} {}", t + 1, o.as_str());
        }
        let _ = writeln!(out, "lambda: {LAMBDA_RULE}");
        for t in self.base_tuples() {
            let labels: Vec<_> = t.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "f: {}", labels.join(" "));
        }
        out
    }

    /// Reads a presentation over `plane` and `bij`, which must be the inputs
    /// it was built from.
    pub fn parse(input: &str, plane: &Plane, bij: &PointLineBijection) -> Result<Self, ParseError> {
        let mut recs = records(input).peekable();
        let (hline, header) = recs
            .next()
            .ok_or_else(|| ParseError::new(0, "empty presentation file"))?;
        let tokens: Vec<_> = header.split_whitespace().collect();
        let ["presentation", k, n, word] = tokens[..] else {
            return Err(ParseError::new(
                hline,
                "expected `presentation k=<k> n=<n> word=<w|triangle>`",
            ));
        };
        let k = number(field(k, "k", hline)?, hline)?;
        let n = number(field(n, "n", hline)?, hline)?;
        let shape = match field(word, "word", hline)? {
            "triangle" => Shape::Triangle,
            w => Shape::Word(validate_word(w).map_err(|e| ParseError::new(hline, e.to_string()))?),
        };

        let (sline, source) = recs
            .next()
            .ok_or_else(|| ParseError::new(hline, "missing source record"))?;
        let expected_hash = bij.content_hash();
        match source.split_whitespace().collect::<Vec<_>>()[..] {
            ["source:", name, hash] if name == plane.name() && hash == expected_hash => {}
            ["source:", name, hash] => {
                return Err(ParseError::new(
                    sline,
                    format!(
                        "built from {name} {hash}, inputs are {} {expected_hash}",
                        plane.name()
                    ),
                ))
            }
            _ => return Err(ParseError::new(sline, "expected `source: <plane> <hash>`")),
        }

        let mut copies = Vec::with_capacity(n);
        while let Some(&(ln, rec)) = recs.peek() {
            let Some(rest) = rec.strip_prefix("copy ") else {
                break;
            };
            recs.next();
            let (t, o) = rest
                .split_once(' ')
                .ok_or_else(|| ParseError::new(ln, "expected `copy <t> <straight|dual>`"))?;
            if number(t.trim(), ln)? != copies.len() + 1 {
                return Err(ParseError::new(
                    ln,
                    format!("expected copy {}", copies.len() + 1),
                ));
            }
            copies.push(match o.trim() {
                "straight" => Orientation::Straight,
                "dual" => Orientation::Dual,
                other => {
                    return Err(ParseError::new(
                        ln,
                        format!("unknown orientation `{other}`"),
                    ))
                }
            });
        }
        if copies.len() != n {
            return Err(ParseError::new(
                hline,
                format!("header declares {n} copies, found {}", copies.len()),
            ));
        }

        match recs.next() {
            Some((_, rec)) if rec.strip_prefix("lambda:").map(str::trim) == Some(LAMBDA_RULE) => {}
            Some((ln, _)) => {
                return Err(ParseError::new(
                    ln,
                    format!("expected `lambda: {LAMBDA_RULE}`"),
                ))
            }
            None => return Err(ParseError::new(hline, "missing lambda rule")),
        }

        let mut p = Presentation::skeleton(plane, bij, shape, k, copies)
            .map_err(|e| ParseError::new(hline, e.to_string()))?;
        for (ln, rec) in recs {
            let body = rec
                .strip_prefix("f:")
                .ok_or_else(|| ParseError::new(ln, "expected `f: <labels>`"))?;
            let tuple = body
                .split_whitespace()
                .map(|t| point_label(t, ln))
                .collect::<Result<Vec<_>, _>>()?;
            if tuple.len() != k {
                return Err(ParseError::new(
                    ln,
                    format!("tuple has {} labels, expected {k}", tuple.len()),
                ));
            }
            if let Some(bad) = tuple
                .iter()
                .find(|x| x.copy >= n || x.index >= plane.num_points())
            {
                return Err(ParseError::new(ln, format!("label {bad} is out of range")));
            }
            p.insert_with_rotations(&tuple);
        }
        Ok(p)
    }
}
