//! Injective envelopes and projective precovers over a field.
//!
//! For `M` put `K_v = ker(M_v -> ⊕_{s(α)=v} M_{t(α)})` and
//! `C_v = coker(⊕_{t(α)=v} M_{s(α)} -> M_v)`. Then `⊕_v e_ρ^v(K_v)` is the
//! injective envelope and `⊕_v e_λ^v(C_v)` a projective precover.

use std::sync::Arc;

use super::adjoint::{lambda_from_layout, rho_from_layout, stalk};
use super::layout::SumLayout;
use super::{RepMorphism, Representation};
use crate::error::Result;
use crate::exactla::{Cokernel, Matrix};

#[derive(Debug, Clone)]
pub struct VertexKernelData {
    /// Columns of `kernels[v]` are a basis of `K_v` inside `M_v`.
    pub kernels: Vec<Matrix>,
    pub cokernels: Vec<Cokernel>,
}

impl VertexKernelData {
    pub fn kernel_dims(&self) -> Vec<usize> {
        self.kernels.iter().map(Matrix::cols).collect()
    }

    pub fn cokernel_dims(&self) -> Vec<usize> {
        self.cokernels.iter().map(|c| c.codim).collect()
    }
}

/// Stacked out-map `M_v -> ⊕_{s(α)=v} M_{t(α)}`.
fn out_map(m: &Representation, v: usize) -> Result<Matrix> {
    let q = m.quiver();
    let parts: Vec<&Matrix> = q.out_arrows(v).iter().map(|&a| m.arrow_map(a)).collect();
    Matrix::vstack(m.field(), m.dim(v), parts)
}

/// Joined in-map `⊕_{t(α)=v} M_{s(α)} -> M_v`.
fn in_map(m: &Representation, v: usize) -> Result<Matrix> {
    let q = m.quiver();
    let parts: Vec<&Matrix> = q.in_arrows(v).iter().map(|&a| m.arrow_map(a)).collect();
    Matrix::hstack(m.field(), m.dim(v), parts)
}

pub fn vertex_kernels(m: &Representation) -> Result<VertexKernelData> {
    let n = m.quiver().vertex_count();
    let mut kernels = Vec::with_capacity(n);
    let mut cokernels = Vec::with_capacity(n);
    for v in 0..n {
        kernels.push(out_map(m, v)?.kernel_basis());
        cokernels.push(in_map(m, v)?.cokernel());
    }
    Ok(VertexKernelData { kernels, cokernels })
}

/// `⊕_v s^v(K_v)` with its inclusion into `m`.
pub fn socle(m: &Representation) -> Result<(Representation, RepMorphism)> {
    let data = vertex_kernels(m)?;
    let q = m.quiver();
    let parts: Vec<Representation> = data
        .kernels
        .iter()
        .enumerate()
        .map(|(v, k)| stalk(q, m.field(), v, k.cols()))
        .collect();
    let soc = Representation::direct_sum_all(q, m.field(), &parts)?;
    let incl = RepMorphism::new(soc.clone(), m.clone(), data.kernels)?;
    Ok((soc, incl))
}

/// `E(M) = ⊕_v e_ρ^v(K_v)` and the embedding `ψ` with
/// `ψ_w = (φ_{t(p)} M_p)_p` over all paths `p` leaving `w`, where `φ_v`
/// projects `M_v` onto `K_v` along a pivot-chosen complement.
pub fn injective_envelope(m: &Representation) -> Result<(Representation, RepMorphism)> {
    let q: &Arc<_> = m.quiver();
    let data = vertex_kernels(m)?;
    let phis = data
        .kernels
        .iter()
        .enumerate()
        .map(|(v, k)| Matrix::complement_projection(k, m.dim(v)))
        .collect::<Result<Vec<_>>>()?;
    let parts: Vec<(usize, usize)> = data.kernel_dims().into_iter().enumerate().collect();
    let layout = SumLayout::rho(q, &parts)?;
    let envelope = rho_from_layout(q, m.field(), &layout)?;

    let mut comps = Vec::with_capacity(q.vertex_count());
    for w in 0..q.vertex_count() {
        let mut psi = Matrix::zeros(m.field(), layout.dims[w], m.dim(w));
        for b in &layout.blocks[w] {
            if b.width == 0 {
                continue;
            }
            let block = phis[b.part].matmul(&m.path_map(&b.path)?)?;
            psi.set_block(b.offset, 0, &block)?;
        }
        comps.push(psi);
    }
    let psi = RepMorphism::new(m.clone(), envelope.clone(), comps)?;
    Ok((envelope, psi))
}

/// `P = ⊕_v e_λ^v(C_v)` and `ε` whose block at a path `p: v -> w` is
/// `M_p σ_v`, with `σ_v` the pivot section of `M_v -> C_v`.
pub fn projective_precover(m: &Representation) -> Result<(Representation, RepMorphism)> {
    let q = m.quiver();
    let data = vertex_kernels(m)?;
    let parts: Vec<(usize, usize)> = data.cokernel_dims().into_iter().enumerate().collect();
    let layout = SumLayout::lambda(q, &parts)?;
    let cover = lambda_from_layout(q, m.field(), &layout)?;

    let mut comps = Vec::with_capacity(q.vertex_count());
    for w in 0..q.vertex_count() {
        let mut eps = Matrix::zeros(m.field(), m.dim(w), layout.dims[w]);
        for b in &layout.blocks[w] {
            if b.width == 0 {
                continue;
            }
            let block = m.path_map(&b.path)?.matmul(&data.cokernels[b.part].section)?;
            eps.set_block(0, b.offset, &block)?;
        }
        comps.push(eps);
    }
    let eps = RepMorphism::new(cover.clone(), m.clone(), comps)?;
    Ok((cover, eps))
}

/// Over a field: projective iff every in-map `⊕_{t(α)=v} M_{s(α)} -> M_v`
/// is injective.
pub fn is_projective_rep(m: &Representation) -> Result<bool> {
    for v in 0..m.quiver().vertex_count() {
        let map = in_map(m, v)?;
        if map.rank() != map.cols() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Injective iff the envelope embedding is onto, i.e. `dim E(M) = dim M`.
pub fn is_injective_rep(m: &Representation) -> Result<bool> {
    let (e, _) = injective_envelope(m)?;
    Ok(e.dims() == m.dims())
}

/// The dual criterion to [`is_projective_rep`]: every out-map
/// `M_v -> ⊕_{s(α)=v} M_{t(α)}` is surjective.
pub fn surjects_onto_successors(m: &Representation) -> Result<bool> {
    for v in 0..m.quiver().vertex_count() {
        let map = out_map(m, v)?;
        if map.rank() != map.rows() {
            return Ok(false);
        }
    }
    Ok(true)
}
