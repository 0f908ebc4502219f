use num_rational::BigRational;
use num_traits::One;

use super::{Path, Quiver};
use crate::error::{Error, Result};

/// A linear combination of parallel paths, each of length at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(BigRational, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(BigRational, Path)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidRelation("relation has no terms".into()));
        };
        let (s, t) = (first.source, first.target);
        for (_, p) in &terms {
            if p.source != s || p.target != t {
                return Err(Error::InvalidRelation(
                    "paths in a relation must share source and target".into(),
                ));
            }
            if p.len() < 2 {
                return Err(Error::InvalidRelation(format!(
                    "relation paths need length at least 2, found length {}",
                    p.len()
                )));
            }
        }
        Ok(Relation { terms })
    }

    /// `first - second`, the shape of every commutativity relation.
    pub fn difference(first: Path, second: Path) -> Result<Self> {
        let one = BigRational::one();
        Relation::new(vec![(one.clone(), first), (-one, second)])
    }

    pub fn terms(&self) -> &[(BigRational, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    /// `coeff path; coeff path; ...` with paths written right to left.
    pub fn render(&self, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("{} {}", c, p.label(q)))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Image under a relabelling of vertices and arrows into another quiver.
    pub(crate) fn map(&self, vertex: impl Fn(usize) -> usize, arrow: impl Fn(usize) -> usize) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| {
                    (
                        c.clone(),
                        Path {
                            source: vertex(p.source),
                            target: vertex(p.target),
                            arrows: p.arrows.iter().map(|&a| arrow(a)).collect(),
                        },
                    )
                })
                .collect(),
        }
    }
}
