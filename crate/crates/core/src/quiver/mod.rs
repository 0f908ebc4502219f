//! Finite quivers and the path combinatorics the envelope and resolution
//! formulas are written in.
//!
//! Vertices and arrows keep their declaration order; that order is the
//! "ordered set" order used everywhere downstream (path ordering, default
//! arrow choice, block layout of direct sums).

mod paths;
mod relation;
mod text;

use std::collections::{BTreeSet, HashMap, VecDeque};

pub use paths::{ArrowChoice, BlockPath, Path};
pub use relation::Relation;
pub use text::{parse_quiver_text, to_text};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

/// Report produced by [`Quiver::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub acyclic: bool,
    pub connected: bool,
    pub sinks: Vec<usize>,
    pub sources: Vec<usize>,
}

/// Level decomposition `V_0, V_1, ...` of an acyclic quiver's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    pub levels: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn level_of(&self, v: usize) -> Option<usize> {
        self.levels.iter().position(|l| l.contains(&v))
    }
}

impl Quiver {
    pub fn new<V, A, S>(name: impl Into<String>, vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("quiver has no vertices".into()));
        }
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            check_id(v)?;
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut arrow_list = Vec::new();
        let mut arrow_index = HashMap::new();
        for (id, s, t) in arrows {
            let (id, s, t): (String, String, String) = (id.into(), s.into(), t.into());
            check_id(&id)?;
            let source = *vertex_index.get(&s).ok_or(Error::UnknownVertex(s))?;
            let target = *vertex_index.get(&t).ok_or(Error::UnknownVertex(t))?;
            if arrow_index.insert(id.clone(), arrow_list.len()).is_some() {
                return Err(Error::DuplicateId(id));
            }
            arrow_list.push(Arrow { id, source, target });
        }
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        let mut in_arrows = vec![Vec::new(); vertices.len()];
        for (i, a) in arrow_list.iter().enumerate() {
            out_arrows[a.source].push(i);
            in_arrows[a.target].push(i);
        }
        Ok(Quiver {
            name: name.into(),
            vertices,
            arrows: arrow_list,
            vertex_index,
            arrow_index,
            out_arrows,
            in_arrows,
        })
    }

    /// Quiver on vertices `1..=n` with arrows `a1, a2, ...` given as
    /// zero-based `(source, target)` index pairs.
    pub fn from_edges(name: impl Into<String>, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::with_capacity(edges.len());
        for (k, &(s, t)) in edges.iter().enumerate() {
            let (sv, tv) = match (vertices.get(s), vertices.get(t)) {
                (Some(sv), Some(tv)) => (sv.clone(), tv.clone()),
                _ => return Err(Error::UnknownVertex(format!("#{}", s.max(t)))),
            };
            arrows.push((format!("a{}", k + 1), sv, tv));
        }
        Quiver::new(name, vertices, arrows)
    }

    /// The linear quiver `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Quiver::from_edges(format!("A{n}"), n, &edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_by_id(&self, id: &str) -> Result<usize> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    /// Arrows with source `v`, in arrow order.
    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    /// Arrows with target `v`, in arrow order.
    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_arrows[v].is_empty()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_sink(v)).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.in_arrows[v].is_empty())
            .collect()
    }

    /// Kahn order (sources first); `CyclicQuiver` if some vertex never
    /// becomes free.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg: Vec<usize> = self.in_arrows.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..self.vertex_count()).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.vertex_count());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &a in &self.out_arrows[v] {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        if order.len() == self.vertex_count() {
            Ok(order)
        } else {
            Err(Error::CyclicQuiver)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    pub(crate) fn require_acyclic(&self) -> Result<()> {
        self.topological_order().map(|_| ())
    }

    /// Acyclic and connected: the standing hypothesis of the decision
    /// procedures.
    pub(crate) fn require_connected_acyclic(&self) -> Result<()> {
        self.require_acyclic()?;
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(())
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            let neighbours = self.out_arrows[v]
                .iter()
                .map(|&a| self.arrows[a].target)
                .chain(self.in_arrows[v].iter().map(|&a| self.arrows[a].source));
            for u in neighbours {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    pub fn validate(&self) -> Diagnostics {
        Diagnostics {
            acyclic: self.is_acyclic(),
            connected: self.is_connected(),
            sinks: self.sinks(),
            sources: self.sources(),
        }
    }

    /// Builds `V_0 = sinks` and then repeatedly peels off the vertices all
    /// of whose out-arrows land in levels already built.
    pub fn vertex_partition(&self) -> Result<VertexPartition> {
        self.require_acyclic()?;
        let n = self.vertex_count();
        let mut level: Vec<Option<usize>> = vec![None; n];
        let mut levels = Vec::new();
        let mut assigned = 0;
        while assigned < n {
            let next: Vec<usize> = (0..n)
                .filter(|&v| level[v].is_none())
                .filter(|&v| {
                    self.out_arrows[v]
                        .iter()
                        .all(|&a| level[self.arrows[a].target].is_some())
                })
                .collect();
            if next.is_empty() {
                return Err(Error::CyclicQuiver);
            }
            for &v in &next {
                level[v] = Some(levels.len());
            }
            assigned += next.len();
            levels.push(next);
        }
        Ok(VertexPartition { levels })
    }

    /// Underlying graph is a chain `1 -> 2 -> ... -> n` (up to renaming).
    pub fn is_linear(&self) -> bool {
        self.is_acyclic()
            && self.is_connected()
            && (0..self.vertex_count())
                .all(|v| self.out_arrows[v].len() <= 1 && self.in_arrows[v].len() <= 1)
    }

    /// Vertices `w` with an arrow `v -> w`, deduplicated, in vertex order.
    pub fn successors(&self, v: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.out_arrows[v]
            .iter()
            .map(|&a| self.arrows[a].target)
            .collect();
        set.into_iter().collect()
    }
}

fn check_id(id: &str) -> Result<()> {
    if id.is_empty() || id.chars().any(char::is_whitespace) {
        return Err(Error::InvalidArgument(format!(
            "identifier `{id}` must be nonempty and free of whitespace"
        )));
    }
    Ok(())
}
