//! Concrete representations of acyclic quivers over an exact field.
//!
//! A representation stores one dimension per vertex and, for every arrow
//! `alpha: s -> t`, a `dims[t] x dims[s]` matrix. Morphisms are
//! vertex-indexed matrices whose naturality squares commute exactly.

mod adjoint;
mod envelope;
mod json;
mod layout;
mod resolution;

use std::sync::Arc;

pub use adjoint::{e_lambda, e_rho, lambda_sum, rho_sum, stalk};
pub use envelope::{
    injective_envelope, is_injective_rep, is_projective_rep, projective_precover, socle,
    surjects_onto_successors, vertex_kernels, VertexKernelData,
};
pub use json::{morphism_to_json, quiver_from_json, quiver_to_json, rep_from_json, rep_to_json};
pub use resolution::{min_injective_resolution, standard_resolution, InjectiveResolution, StandardResolution};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::quiver::{Path, Quiver, Relation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    field: Field,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if mats.len() != quiver.arrow_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} arrows",
                mats.len(),
                quiver.arrow_count()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&mats) {
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: m.field().to_string(),
                });
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation {
            quiver,
            field,
            dims,
            mats,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let mats = vec![Matrix::zeros(field, 0, 0); quiver.arrow_count()];
        Representation {
            quiver,
            field,
            dims,
            mats,
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    /// `e^v`: the dimension of the space at `v`, looked up by id.
    pub fn evaluate(&self, vertex: &str) -> Result<usize> {
        Ok(self.dims[self.quiver.vertex(vertex)?])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }

    /// `M_p`, the composite along a path (identity for a trivial path).
    pub fn path_map(&self, p: &Path) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.field, self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.mats[a].matmul(&acc)?;
        }
        Ok(acc)
    }

    pub fn same_quiver(&self, other: &Representation) -> Result<()> {
        if !(Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver) {
            return Err(Error::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        Representation::direct_sum_all(&self.quiver, self.field, [self, other])
    }

    pub fn direct_sum_all<'a>(
        quiver: &Arc<Quiver>,
        field: Field,
        parts: impl IntoIterator<Item = &'a Representation>,
    ) -> Result<Representation> {
        let parts: Vec<&Representation> = parts.into_iter().collect();
        let probe = Representation::zero(quiver.clone(), field);
        for p in &parts {
            probe.same_quiver(p)?;
        }
        let dims = (0..quiver.vertex_count())
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let mats = (0..quiver.arrow_count())
            .map(|a| Matrix::direct_sum_all(field, parts.iter().map(|p| &p.mats[a])))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(quiver.clone(), field, dims, mats)
    }

    /// `sum_i r_i M_{gamma_i}` for a relation.
    pub fn relation_map(&self, rel: &Relation) -> Result<Matrix> {
        let mut acc = Matrix::zeros(self.field, self.dims[rel.target()], self.dims[rel.source()]);
        for (c, p) in rel.terms() {
            if c.is_zero() {
                continue;
            }
            let coeff = Scalar::from_rational(self.field, c)?;
            acc = acc.add(&self.path_map(p)?.scale(&coeff))?;
        }
        Ok(acc)
    }

    /// Index of the first relation that does not vanish on `self`.
    pub fn first_violated(&self, rels: &[Relation]) -> Result<Option<usize>> {
        for (i, r) in rels.iter().enumerate() {
            if !self.relation_map(r)?.is_zero() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn check_relations(&self, rels: &[Relation]) -> Result<bool> {
        Ok(self.first_violated(rels)?.is_none())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    comps: Vec<Matrix>,
}

impl RepMorphism {
    pub fn new(source: Representation, target: Representation, comps: Vec<Matrix>) -> Result<Self> {
        source.same_quiver(&target)?;
        let q = source.quiver.clone();
        if comps.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for {} vertices",
                comps.len(),
                q.vertex_count()
            )));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (target.dims[v], source.dims[v]) || c.field() != source.field {
                return Err(Error::DimensionMismatch(format!(
                    "component at `{}` has shape {:?}, expected {:?}",
                    q.vertex_id(v),
                    c.shape(),
                    (target.dims[v], source.dims[v])
                )));
            }
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            let left = comps[arrow.target].matmul(&source.mats[a])?;
            let right = target.mats[a].matmul(&comps[arrow.source])?;
            if left != right {
                return Err(Error::NotNatural(arrow.id.clone()));
            }
        }
        Ok(RepMorphism { source, target, comps })
    }

    pub fn identity(m: &Representation) -> Self {
        let comps = m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect();
        RepMorphism {
            source: m.clone(),
            target: m.clone(),
            comps,
        }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Result<Self> {
        source.same_quiver(target)?;
        let comps = (0..source.dims.len())
            .map(|v| Matrix::zeros(source.field, target.dims[v], source.dims[v]))
            .collect();
        Ok(RepMorphism {
            source: source.clone(),
            target: target.clone(),
            comps,
        })
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    /// `other . self`.
    pub fn then(&self, other: &RepMorphism) -> Result<RepMorphism> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch("morphisms do not compose".into()));
        }
        let comps = other
            .comps
            .iter()
            .zip(&self.comps)
            .map(|(g, f)| g.matmul(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(RepMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            comps,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Kernel subrepresentation and its inclusion.
    pub fn kernel(&self) -> Result<(Representation, RepMorphism)> {
        let q = self.source.quiver.clone();
        let bases: Vec<Matrix> = self.comps.iter().map(Matrix::kernel_basis).collect();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let mut mats = Vec::with_capacity(q.arrow_count());
        for (a, arrow) in q.arrows().iter().enumerate() {
            let left_inv = Matrix::complement_projection(&bases[arrow.target], self.source.dims[arrow.target])?;
            let image = self.source.mats[a].matmul(&bases[arrow.source])?;
            mats.push(left_inv.matmul(&image)?);
        }
        let ker = Representation::new(q, self.source.field, dims, mats)?;
        let incl = RepMorphism::new(ker.clone(), self.source.clone(), bases)?;
        Ok((ker, incl))
    }

    /// Cokernel representation and the projection onto it.
    pub fn cokernel(&self) -> Result<(Representation, RepMorphism)> {
        let q = self.target.quiver.clone();
        let cokers: Vec<_> = self.comps.iter().map(Matrix::cokernel).collect();
        let dims: Vec<usize> = cokers.iter().map(|c| c.codim).collect();
        let mut mats = Vec::with_capacity(q.arrow_count());
        for (a, arrow) in q.arrows().iter().enumerate() {
            let m = cokers[arrow.target]
                .projection
                .matmul(&self.target.mats[a])?
                .matmul(&cokers[arrow.source].section)?;
            mats.push(m);
        }
        let coker = Representation::new(q, self.target.field, dims, mats)?;
        let proj = RepMorphism::new(
            self.target.clone(),
            coker.clone(),
            cokers.into_iter().map(|c| c.projection).collect(),
        )?;
        Ok((coker, proj))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn q() -> Field {
        Field::Rational
    }

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::linear(2).unwrap())
    }

    #[test]
    fn shape_checks() {
        let quiver = a2();
        let bad = Representation::new(quiver.clone(), q(), vec![1, 2], vec![Matrix::identity(q(), 1)]);
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
        let ok = Representation::new(quiver, q(), vec![1, 2], vec![Matrix::from_i64(q(), 2, 1, &[1, 0])]);
        assert!(ok.is_ok());
    }

    #[test]
    fn naturality_is_enforced() {
        let quiver = a2();
        let m = Representation::new(quiver.clone(), q(), vec![1, 1], vec![Matrix::identity(q(), 1)]).unwrap();
        let s2 = stalk(&quiver, q(), 1, 1);
        // s2 -> m at vertex 2 is fine
        let f = RepMorphism::new(s2.clone(), m.clone(), vec![Matrix::zeros(q(), 1, 0), Matrix::identity(q(), 1)]);
        assert!(f.is_ok());
        // m -> s2 identity at vertex 2 is not natural
        let g = RepMorphism::new(m, s2, vec![Matrix::zeros(q(), 0, 1), Matrix::identity(q(), 1)]);
        assert_eq!(g.unwrap_err(), Error::NotNatural("a1".into()));
    }

    #[test]
    fn kernel_of_mono_is_zero() {
        let quiver = a2();
        let e = e_rho(&quiver, q(), 1, 1).unwrap();
        let (ker, _) = RepMorphism::identity(&e).kernel().unwrap();
        assert!(ker.is_zero());
        let (coker, proj) = RepMorphism::identity(&e).cokernel().unwrap();
        assert!(coker.is_zero());
        assert!(proj.is_zero());
    }

    #[test]
    fn cokernel_of_socle_inclusion() {
        let quiver = a2();
        let e = e_rho(&quiver, q(), 1, 1).unwrap();
        let (_, incl) = socle(&e).unwrap();
        let (coker, _) = incl.cokernel().unwrap();
        assert_eq!(coker.dims(), &[1, 0]);
    }

    #[test]
    fn relations_on_square() {
        let quiver = Arc::new(
            Quiver::new(
                "sq",
                ["1", "2", "3", "4"],
                [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
            )
            .unwrap(),
        );
        let path = |ids: &[&str]| {
            let arrows: Vec<usize> = ids.iter().map(|i| quiver.arrow_by_id(i).unwrap()).collect();
            Path {
                source: quiver.arrow(arrows[0]).source,
                target: quiver.arrow(*arrows.last().unwrap()).target,
                arrows,
            }
        };
        let rel = Relation::difference(path(&["a", "b"]), path(&["c", "d"])).unwrap();
        let one = Matrix::identity(q(), 1);
        let zero = Matrix::zeros(q(), 1, 1);
        let commuting = Representation::new(quiver.clone(), q(), vec![1; 4], vec![one.clone(); 4]).unwrap();
        assert!(commuting.check_relations(std::slice::from_ref(&rel)).unwrap());
        let broken = Representation::new(quiver, q(), vec![1; 4], vec![one.clone(), one.clone(), one, zero]).unwrap();
        assert!(!broken.check_relations(&[rel]).unwrap());
    }
}
