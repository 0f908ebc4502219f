//! Line-oriented quiver text format:
//!
//! ```text
//! quiver A3
//! vertices 1 2 3
//! arrow a 1 2
//! arrow b 2 3
//! relation 1 b a; -1 d c   # optional, paths right to left
//! ```

use std::fmt::Write as _;

use num_rational::BigRational;

use super::{Path, Quiver, Relation};
use crate::error::{Error, Result};

struct RawRelation {
    line: usize,
    body: String,
}

/// Parses the text format; `origin` names the input in error messages.
pub fn parse_quiver_text(src: &str, origin: &str) -> Result<(Quiver, Vec<Relation>)> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut raw_relations = Vec::new();

    for (idx, raw_line) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("");
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        match keyword {
            "quiver" => {
                let tok = tokens
                    .next()
                    .ok_or_else(|| Error::parse(origin, line_no, keyword, "missing quiver name"))?;
                if name.is_some() {
                    return Err(Error::parse(origin, line_no, keyword, "quiver declared twice"));
                }
                if let Some(extra) = tokens.next() {
                    return Err(Error::parse(origin, line_no, extra, "quiver names cannot contain spaces"));
                }
                name = Some(tok.to_string());
            }
            "vertices" => {
                for tok in tokens {
                    if vertices.iter().any(|v| v == tok) {
                        return Err(Error::parse(origin, line_no, tok, "duplicate vertex"));
                    }
                    vertices.push(tok.to_string());
                }
            }
            "arrow" => {
                let parts: Vec<&str> = tokens.collect();
                if parts.len() != 3 {
                    let tok = parts.get(3).copied().unwrap_or(keyword);
                    return Err(Error::parse(origin, line_no, tok, "expected `arrow <id> <src> <dst>`"));
                }
                for &endpoint in &parts[1..] {
                    if !vertices.iter().any(|v| v == endpoint) {
                        return Err(Error::parse(origin, line_no, endpoint, "undeclared vertex"));
                    }
                }
                if arrows.iter().any(|(id, _, _)| id == parts[0]) {
                    return Err(Error::parse(origin, line_no, parts[0], "duplicate arrow"));
                }
                arrows.push((parts[0].to_string(), parts[1].to_string(), parts[2].to_string()));
            }
            "relation" => raw_relations.push(RawRelation {
                line: line_no,
                body: tokens.collect::<Vec<_>>().join(" "),
            }),
            other => return Err(Error::parse(origin, line_no, other, "unknown directive")),
        }
    }

    let name = name.ok_or_else(|| Error::parse(origin, 0, "", "missing `quiver <name>` line"))?;
    if vertices.is_empty() {
        return Err(Error::parse(origin, 0, "", "no vertices declared"));
    }
    let quiver = Quiver::new(name, vertices, arrows)?;
    let relations = raw_relations
        .iter()
        .map(|r| parse_relation(&quiver, &r.body, origin, r.line))
        .collect::<Result<Vec<_>>>()?;
    Ok((quiver, relations))
}

fn parse_relation(q: &Quiver, body: &str, origin: &str, line: usize) -> Result<Relation> {
    let mut terms = Vec::new();
    for chunk in body.split(';') {
        let mut toks = chunk.split_whitespace();
        let coeff_tok = toks
            .next()
            .ok_or_else(|| Error::parse(origin, line, chunk.trim(), "empty relation term"))?;
        let coeff: BigRational = coeff_tok
            .parse()
            .map_err(|_| Error::parse(origin, line, coeff_tok, "coefficient is not a rational number"))?;
        let ids: Vec<&str> = toks.collect();
        if ids.is_empty() {
            return Err(Error::parse(origin, line, coeff_tok, "relation term has no path"));
        }
        // written right to left; traversal starts with the last token
        let mut arrows = Vec::with_capacity(ids.len());
        for &id in ids.iter().rev() {
            let a = q
                .arrow_by_id(id)
                .map_err(|_| Error::parse(origin, line, id, "unknown arrow"))?;
            if let Some(&prev) = arrows.last() {
                if q.arrow(prev).target != q.arrow(a).source {
                    return Err(Error::parse(origin, line, id, "arrows do not compose"));
                }
            }
            arrows.push(a);
        }
        let path = Path {
            source: q.arrow(arrows[0]).source,
            target: q.arrow(*arrows.last().unwrap()).target,
            arrows,
        };
        terms.push((coeff, path));
    }
    Relation::new(terms).map_err(|e| Error::parse(origin, line, body, e.to_string()))
}

pub fn to_text(q: &Quiver, relations: &[Relation]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "quiver {}", q.name());
    let _ = writeln!(out, "vertices {}", q.vertices().join(" "));
    for a in q.arrows() {
        let _ = writeln!(out, "arrow {} {} {}", a.id, q.vertex_id(a.source), q.vertex_id(a.target));
    }
    for r in relations {
        let _ = writeln!(out, "relation {}", r.render(q));
    }
    out
}
