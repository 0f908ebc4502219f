use super::adjoint::lambda_from_layout;
use super::envelope::{injective_envelope, is_projective_rep};
use super::layout::SumLayout;
use super::{RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactla::Matrix;

/// `0 -> ⊕_α e_λ^{t(α)}(M_{s(α)}) -> ⊕_v e_λ^v(M_v) -> M -> 0`.
#[derive(Debug, Clone)]
pub struct StandardResolution {
    pub left: Representation,
    pub middle: Representation,
    pub inclusion: RepMorphism,
    pub augmentation: RepMorphism,
}

impl StandardResolution {
    /// Rank bookkeeping at each vertex: the inclusion is injective, the
    /// augmentation surjective, the composite zero and
    /// `rank(inclusion) = dim middle - rank(augmentation)`.
    pub fn exactness_defect(&self) -> Option<String> {
        let q = self.middle.quiver();
        if !self.inclusion.then(&self.augmentation).map(|c| c.is_zero()).unwrap_or(false) {
            return Some("composite is not zero".into());
        }
        for w in 0..q.vertex_count() {
            let d = self.inclusion.comp(w);
            let e = self.augmentation.comp(w);
            let (rd, re) = (d.rank(), e.rank());
            if rd != d.cols() {
                return Some(format!("not injective at `{}`", q.vertex_id(w)));
            }
            if re != e.rows() {
                return Some(format!("not surjective at `{}`", q.vertex_id(w)));
            }
            if rd != self.middle.dim(w) - re {
                return Some(format!("not exact in the middle at `{}`", q.vertex_id(w)));
            }
        }
        None
    }

    pub fn is_exact(&self) -> bool {
        self.exactness_defect().is_none()
    }

    pub fn outer_terms_projective(&self) -> Result<bool> {
        Ok(is_projective_rep(&self.left)? && is_projective_rep(&self.middle)?)
    }
}

pub fn standard_resolution(m: &Representation) -> Result<StandardResolution> {
    let q = m.quiver();
    let field = m.field();
    q.require_acyclic()?;

    let mid_parts: Vec<(usize, usize)> = (0..q.vertex_count()).map(|v| (v, m.dim(v))).collect();
    let mid_layout = SumLayout::lambda(q, &mid_parts)?;
    let middle = lambda_from_layout(q, field, &mid_layout)?;

    let left_parts: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.target, m.dim(a.source))).collect();
    let left_layout = SumLayout::lambda(q, &left_parts)?;
    let left = lambda_from_layout(q, field, &left_layout)?;

    let mut aug = Vec::with_capacity(q.vertex_count());
    let mut incl = Vec::with_capacity(q.vertex_count());
    for w in 0..q.vertex_count() {
        let mut e = Matrix::zeros(field, m.dim(w), mid_layout.dims[w]);
        for b in &mid_layout.blocks[w] {
            if b.width > 0 {
                e.set_block(0, b.offset, &m.path_map(&b.path)?)?;
            }
        }
        aug.push(e);

        // x in the block of p: t(α) -> w goes to (p α, x) - (p, M_α x)
        let mut d = Matrix::zeros(field, mid_layout.dims[w], left_layout.dims[w]);
        for b in &left_layout.blocks[w] {
            if b.width == 0 {
                continue;
            }
            let alpha = b.part;
            let arrow = q.arrow(alpha);
            let longer = b.path.after(q, alpha);
            let plus = mid_layout
                .find(w, arrow.source, &longer)
                .expect("path through the arrow is indexed");
            d.set_block(plus.offset, b.offset, &Matrix::identity(field, b.width))?;
            let minus = mid_layout
                .find(w, arrow.target, &b.path)
                .expect("path from the arrow target is indexed");
            if minus.width > 0 {
                let neg = m.arrow_map(alpha).scale(&-&field.one());
                d.set_block(minus.offset, b.offset, &neg)?;
            }
        }
        incl.push(d);
    }
    let augmentation = RepMorphism::new(middle.clone(), m.clone(), aug)?;
    let inclusion = RepMorphism::new(left.clone(), middle.clone(), incl)?;
    Ok(StandardResolution {
        left,
        middle,
        inclusion,
        augmentation,
    })
}

/// `0 -> M -> I^0 -> I^1 -> ...`, each term the envelope of the previous
/// cokernel. `maps[0]: M -> I^0`, `maps[i]: I^{i-1} -> I^i`.
#[derive(Debug, Clone)]
pub struct InjectiveResolution {
    pub terms: Vec<Representation>,
    pub maps: Vec<RepMorphism>,
}

impl InjectiveResolution {
    /// Term `i`, the zero representation past the end.
    pub fn term(&self, i: usize) -> Option<&Representation> {
        self.terms.get(i)
    }

    /// Index of the last nonzero term, `None` for the zero module.
    pub fn length(&self) -> Option<usize> {
        self.terms.iter().rposition(|t| !t.is_zero())
    }
}

/// Minimal injective resolution computed up to degree `max_deg`. Over a
/// field the path algebra is hereditary, so a nonzero term beyond degree 1
/// is reported as an invariant failure.
pub fn min_injective_resolution(m: &Representation, max_deg: usize) -> Result<InjectiveResolution> {
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let (e0, psi0) = injective_envelope(m)?;
    terms.push(e0);
    maps.push(psi0.clone());
    let mut last = psi0;
    while terms.len() <= max_deg {
        let (coker, proj) = last.cokernel()?;
        if coker.is_zero() {
            break;
        }
        let (e, psi) = injective_envelope(&coker)?;
        let d = proj.then(&psi)?;
        terms.push(e);
        maps.push(d.clone());
        last = d;
    }
    if let Some(pos) = terms.iter().skip(2).position(|t| !t.is_zero()) {
        return Err(Error::Invariant(format!(
            "injective resolution over a field has a nonzero term in degree {}",
            pos + 2
        )));
    }
    Ok(InjectiveResolution { terms, maps })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactla::Field;
    use crate::quiver::Quiver;
    use crate::rep::{e_lambda, e_rho, stalk};

    const Q: Field = Field::Rational;

    #[test]
    fn standard_resolution_of_stalks() {
        let q = Arc::new(Quiver::linear(2).unwrap());
        let s2 = stalk(&q, Q, 1, 1);
        let r = standard_resolution(&s2).unwrap();
        assert!(r.left.is_zero());
        assert_eq!(r.middle, e_lambda(&q, Q, 1, 1).unwrap());
        assert!(r.is_exact());

        let s1 = stalk(&q, Q, 0, 1);
        let r = standard_resolution(&s1).unwrap();
        assert_eq!(r.middle.dims(), &[1, 1]);
        assert_eq!(r.left.dims(), &[0, 1]);
        assert!(r.is_exact());
        assert!(r.outer_terms_projective().unwrap());
    }

    #[test]
    fn resolution_of_sink_stalk() {
        let q = Arc::new(Quiver::linear(2).unwrap());
        let r = min_injective_resolution(&stalk(&q, Q, 1, 1), 5).unwrap();
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[0], e_rho(&q, Q, 1, 1).unwrap());
        assert_eq!(r.terms[1], stalk(&q, Q, 0, 1));
        assert_eq!(r.length(), Some(1));
        assert!(r.maps[0].then(&r.maps[1]).unwrap().is_zero());
    }

    #[test]
    fn injective_has_length_zero() {
        let q = Arc::new(Quiver::linear(3).unwrap());
        let r = min_injective_resolution(&e_rho(&q, Q, 1, 2).unwrap(), 3).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.length(), Some(0));
    }
}
