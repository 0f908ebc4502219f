use std::cmp::Ordering;

use super::Quiver;
use crate::error::{Error, Result};

/// A directed path. `arrows` lists arrow indices in traversal order, so
/// `arrows[0]` is applied first; the composite is written right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `alpha * self`: follow `self`, then the arrow.
    pub fn then(&self, q: &Quiver, alpha: usize) -> Path {
        debug_assert_eq!(q.arrow(alpha).source, self.target);
        let mut arrows = self.arrows.clone();
        arrows.push(alpha);
        Path {
            source: self.source,
            target: q.arrow(alpha).target,
            arrows,
        }
    }

    /// `self * alpha`: the arrow first, then `self`.
    pub fn after(&self, q: &Quiver, alpha: usize) -> Path {
        debug_assert_eq!(q.arrow(alpha).target, self.source);
        let mut arrows = Vec::with_capacity(self.arrows.len() + 1);
        arrows.push(alpha);
        arrows.extend_from_slice(&self.arrows);
        Path {
            source: q.arrow(alpha).source,
            target: self.target,
            arrows,
        }
    }

    /// Right-to-left label such as `b a`, or `e_v` for a trivial path.
    pub fn label(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            return format!("e_{}", q.vertex_id(self.source));
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| q.arrow(a).id.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A member of the disjoint union `Q'(v, w)`: a path tagged with the
/// out-arrow of `w` whose block it sits in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPath {
    pub arrow: usize,
    pub path: Path,
}

/// Which out-arrow of `w` plays the distinguished role in `Q''(v, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArrowChoice {
    /// First out-arrow of `w` in arrow order.
    #[default]
    Least,
    Arrow(usize),
}

impl Quiver {
    /// All paths starting at `v` (the vertex set of the path-space tree
    /// rooted at `v`), in path order.
    pub fn paths_from(&self, v: usize) -> Result<Vec<Path>> {
        self.require_acyclic()?;
        let mut out = Vec::new();
        let mut stack = vec![Path::trivial(v)];
        while let Some(p) = stack.pop() {
            for &a in self.out_arrows(p.target) {
                stack.push(p.then(self, a));
            }
            out.push(p);
        }
        out.sort();
        Ok(out)
    }

    /// `Q(v, w)`: paths from `v` to `w`, including `e_v` when `v == w`.
    pub fn enumerate_paths(&self, v: usize, w: usize) -> Result<Vec<Path>> {
        Ok(self
            .paths_from(v)?
            .into_iter()
            .filter(|p| p.target == w)
            .collect())
    }

    /// `Q'(v, w)`: one block `Q(v, t(alpha))` per out-arrow `alpha` of `w`.
    pub fn q_prime(&self, v: usize, w: usize) -> Result<Vec<BlockPath>> {
        let from_v = self.paths_from(v)?;
        let mut out = Vec::new();
        for &a in self.out_arrows(w) {
            let t = self.arrow(a).target;
            out.extend(
                from_v
                    .iter()
                    .filter(|p| p.target == t)
                    .map(|p| BlockPath {
                        arrow: a,
                        path: p.clone(),
                    }),
            );
        }
        Ok(out)
    }

    pub fn chosen_arrow(&self, w: usize, choice: ArrowChoice) -> Result<usize> {
        let outs = self.out_arrows(w);
        if outs.is_empty() {
            return Err(Error::SinkVertex(self.vertex_id(w).to_string()));
        }
        match choice {
            ArrowChoice::Least => Ok(outs[0]),
            ArrowChoice::Arrow(a) if outs.contains(&a) => Ok(a),
            ArrowChoice::Arrow(a) => Err(Error::InvalidArgument(format!(
                "arrow `{}` does not start at `{}`",
                self.arrows().get(a).map_or("?", |x| x.id.as_str()),
                self.vertex_id(w)
            ))),
        }
    }

    /// `Q''(v, w) = Q'(v, w) \ alpha Q(v, w)` for the chosen out-arrow
    /// `alpha` of `w`.
    pub fn q_double_prime(&self, v: usize, w: usize, choice: ArrowChoice) -> Result<Vec<BlockPath>> {
        self.require_acyclic()?;
        let alpha = self.chosen_arrow(w, choice)?;
        Ok(self
            .q_prime(v, w)?
            .into_iter()
            .filter(|bp| !(bp.arrow == alpha && bp.path.arrows.last() == Some(&alpha)))
            .collect())
    }

    /// `|Q(v, w)|` for all pairs, by dynamic programming over a
    /// topological order.
    pub fn path_count_matrix(&self) -> Result<Vec<Vec<u64>>> {
        let order = self.topological_order()?;
        let n = self.vertex_count();
        let mut counts = vec![vec![0u64; n]; n];
        for &v in order.iter().rev() {
            let mut row = vec![0u64; n];
            row[v] = 1;
            for &a in self.out_arrows(v) {
                let u = self.arrow(a).target;
                for (w, slot) in row.iter_mut().enumerate() {
                    *slot = slot.checked_add(counts[u][w]).ok_or(Error::Overflow)?;
                }
            }
            counts[v] = row;
        }
        Ok(counts)
    }

    /// Length of the longest directed path.
    pub fn longest_path_length(&self) -> Result<usize> {
        Ok(self.vertex_partition()?.levels.len() - 1)
    }
}
