//! Tensor product quivers with box relations, and the object-level passage
//! between representations of `Q ⊗ Q'` and `Q`-shaped diagrams of
//! `Q'`-representations.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::quiver::{to_text, Path, Quiver, Relation};
use crate::rep::{RepMorphism, Representation};

/// Where an arrow of the product comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowOrigin {
    /// `(a, β)`: the arrow `β` of the second factor in the copy over `a`.
    Fiber { vertex: usize, arrow: usize },
    /// `(α, b)`: the arrow `α` of the first factor at level `b`.
    Transversal { arrow: usize, vertex: usize },
}

#[derive(Debug, Clone)]
pub struct TensorQuiver {
    pub product: Arc<Quiver>,
    pub relations: Vec<Relation>,
    pub vertex_provenance: Vec<(usize, usize)>,
    pub arrow_provenance: Vec<ArrowOrigin>,
    pub first: Arc<Quiver>,
    pub second: Arc<Quiver>,
}

impl TensorQuiver {
    pub fn vertex(&self, a: usize, b: usize) -> usize {
        a * self.second.vertex_count() + b
    }

    pub fn fiber_arrow(&self, a: usize, beta: usize) -> usize {
        a * self.second.arrow_count() + beta
    }

    pub fn transversal_arrow(&self, alpha: usize, b: usize) -> usize {
        self.first.vertex_count() * self.second.arrow_count() + alpha * self.second.vertex_count() + b
    }

    /// Quiver text with one `relation` line per generated relation.
    pub fn to_text(&self) -> String {
        to_text(&self.product, &self.relations)
    }
}

fn pair_id(x: &str, y: &str, taken: &mut HashSet<String>) -> String {
    let mut id = format!("({x},{y})");
    while !taken.insert(id.clone()) {
        id.push('\'');
    }
    id
}

/// `Q ⊗ Q'` with vertices `V × V'` and arrows `V × E'` followed by `E × V'`.
/// Relations: `I'` lifted to every copy `{a} × Q'`, then `I` lifted to every
/// `Q × {b}`, then `(α,w')(v,β) - (w,β)(α,v')` for each pair of arrows
/// `α: v -> w`, `β: v' -> w'`.
pub fn tensor_product(
    q: &Arc<Quiver>,
    rels: &[Relation],
    q2: &Arc<Quiver>,
    rels2: &[Relation],
) -> Result<TensorQuiver> {
    let (n1, n2) = (q.vertex_count(), q2.vertex_count());
    let (m1, m2) = (q.arrow_count(), q2.arrow_count());

    let mut taken = HashSet::new();
    let mut vertices = Vec::with_capacity(n1 * n2);
    let mut vertex_provenance = Vec::with_capacity(n1 * n2);
    for a in 0..n1 {
        for b in 0..n2 {
            vertices.push(pair_id(q.vertex_id(a), q2.vertex_id(b), &mut taken));
            vertex_provenance.push((a, b));
        }
    }
    let vid = |a: usize, b: usize| vertices[a * n2 + b].clone();

    let mut taken = HashSet::new();
    let mut arrows = Vec::with_capacity(n1 * m2 + m1 * n2);
    let mut arrow_provenance = Vec::with_capacity(n1 * m2 + m1 * n2);
    for a in 0..n1 {
        for (beta, arr) in q2.arrows().iter().enumerate() {
            let id = pair_id(q.vertex_id(a), &arr.id, &mut taken);
            arrows.push((id, vid(a, arr.source), vid(a, arr.target)));
            arrow_provenance.push(ArrowOrigin::Fiber { vertex: a, arrow: beta });
        }
    }
    for (alpha, arr) in q.arrows().iter().enumerate() {
        for b in 0..n2 {
            let id = pair_id(&arr.id, q2.vertex_id(b), &mut taken);
            arrows.push((id, vid(arr.source, b), vid(arr.target, b)));
            arrow_provenance.push(ArrowOrigin::Transversal { arrow: alpha, vertex: b });
        }
    }
    let name = format!("{}⊗{}", q.name(), q2.name());
    let product = Arc::new(Quiver::new(name, vertices.clone(), arrows)?);

    let mut tq = TensorQuiver {
        product,
        relations: Vec::new(),
        vertex_provenance,
        arrow_provenance,
        first: q.clone(),
        second: q2.clone(),
    };

    let mut relations = Vec::new();
    for a in 0..n1 {
        for r in rels2 {
            relations.push(r.map(|v| tq.vertex(a, v), |beta| tq.fiber_arrow(a, beta)));
        }
    }
    for b in 0..n2 {
        for r in rels {
            relations.push(r.map(|v| tq.vertex(v, b), |alpha| tq.transversal_arrow(alpha, b)));
        }
    }
    for (alpha, x) in q.arrows().iter().enumerate() {
        for (beta, y) in q2.arrows().iter().enumerate() {
            let (v, w, v2, w2) = (x.source, x.target, y.source, y.target);
            let down_then_across = Path {
                source: tq.vertex(v, v2),
                target: tq.vertex(w, w2),
                arrows: vec![tq.fiber_arrow(v, beta), tq.transversal_arrow(alpha, w2)],
            };
            let across_then_down = Path {
                source: tq.vertex(v, v2),
                target: tq.vertex(w, w2),
                arrows: vec![tq.transversal_arrow(alpha, v2), tq.fiber_arrow(w, beta)],
            };
            relations.push(Relation::difference(down_then_across, across_then_down)?);
        }
    }
    tq.relations = relations;
    Ok(tq)
}

/// A representation of `Q ⊗ Q'` read as a `Q`-diagram of `Q'`-representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flattened {
    /// One `Q'`-representation per vertex of `Q`.
    pub fibers: Vec<Representation>,
    /// One morphism `fibers[s(α)] -> fibers[t(α)]` per arrow `α` of `Q`.
    pub maps: Vec<RepMorphism>,
}

/// Rejects representations that are not bound by the box relations, naming
/// the first relation that fails.
pub fn flatten(tq: &TensorQuiver, m: &Representation) -> Result<Flattened> {
    if **m.quiver() != *tq.product {
        return Err(Error::QuiverMismatch);
    }
    if let Some(index) = m.first_violated(&tq.relations)? {
        return Err(Error::RelationsViolated {
            index,
            relation: tq.relations[index].render(&tq.product),
        });
    }
    let (q, q2) = (&tq.first, &tq.second);
    let field = m.field();
    let fibers = (0..q.vertex_count())
        .map(|a| {
            let dims = (0..q2.vertex_count()).map(|b| m.dim(tq.vertex(a, b))).collect();
            let mats = (0..q2.arrow_count())
                .map(|beta| m.arrow_map(tq.fiber_arrow(a, beta)).clone())
                .collect();
            Representation::new(q2.clone(), field, dims, mats)
        })
        .collect::<Result<Vec<_>>>()?;
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(alpha, arr)| {
            let comps = (0..q2.vertex_count())
                .map(|b| m.arrow_map(tq.transversal_arrow(alpha, b)).clone())
                .collect();
            RepMorphism::new(fibers[arr.source].clone(), fibers[arr.target].clone(), comps)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Flattened { fibers, maps })
}

pub fn unflatten(tq: &TensorQuiver, f: &Flattened) -> Result<Representation> {
    let (q, q2) = (&tq.first, &tq.second);
    if f.fibers.len() != q.vertex_count() || f.maps.len() != q.arrow_count() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} fibers and {} maps, got {} and {}",
            q.vertex_count(),
            q.arrow_count(),
            f.fibers.len(),
            f.maps.len()
        )));
    }
    let field = f.fibers.first().map(Representation::field).ok_or(Error::QuiverMismatch)?;
    for fib in &f.fibers {
        if **fib.quiver() != **q2 || fib.field() != field {
            return Err(Error::QuiverMismatch);
        }
    }
    for (arr, map) in q.arrows().iter().zip(&f.maps) {
        if *map.source() != f.fibers[arr.source] || *map.target() != f.fibers[arr.target] {
            return Err(Error::DimensionMismatch(format!(
                "map for arrow `{}` does not connect the fibers at its endpoints",
                arr.id
            )));
        }
    }
    let product = &tq.product;
    let dims: Vec<usize> = tq
        .vertex_provenance
        .iter()
        .map(|&(a, b)| f.fibers[a].dim(b))
        .collect();
    let mats: Vec<Matrix> = tq
        .arrow_provenance
        .iter()
        .map(|o| match *o {
            ArrowOrigin::Fiber { vertex, arrow } => f.fibers[vertex].arrow_map(arrow).clone(),
            ArrowOrigin::Transversal { arrow, vertex } => f.maps[arrow].comp(vertex).clone(),
        })
        .collect();
    Representation::new(product.clone(), field, dims, mats)
}

/// `KQ ⊗ KQ'` is `k`-Gorenstein iff both quivers are linear.
pub fn tensor_gorenstein(q: &Quiver, q2: &Quiver, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    q.require_connected_acyclic()?;
    q2.require_connected_acyclic()?;
    Ok(q.is_linear() && q2.is_linear())
}
