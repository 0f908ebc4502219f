//! The left and right adjoints of evaluation, `e_λ^v` and `e_ρ^v`, and
//! simple (stalk) representations.

use std::sync::Arc;

use super::layout::SumLayout;
use super::Representation;
use crate::error::Result;
use crate::exactla::{Field, Matrix};
use crate::quiver::Quiver;

/// `⊕_k e_λ^{x_k}(K^{n_k})`. At `w` the space has one copy of `K^{n_k}`
/// per path `x_k -> w`; an arrow sends the block of `p` identically onto
/// the block of `alpha p`.
pub fn lambda_sum(q: &Arc<Quiver>, field: Field, parts: &[(usize, usize)]) -> Result<Representation> {
    let layout = SumLayout::lambda(q, parts)?;
    lambda_from_layout(q, field, &layout)
}

pub(crate) fn lambda_from_layout(q: &Arc<Quiver>, field: Field, layout: &SumLayout) -> Result<Representation> {
    let mut mats = Vec::with_capacity(q.arrow_count());
    for (a, arrow) in q.arrows().iter().enumerate() {
        let mut m = Matrix::zeros(field, layout.dims[arrow.target], layout.dims[arrow.source]);
        for b in &layout.blocks[arrow.source] {
            let extended = b.path.then(q, a);
            let dst = layout
                .find(arrow.target, b.part, &extended)
                .expect("extended path is indexed");
            m.set_block(dst.offset, b.offset, &Matrix::identity(field, b.width))?;
        }
        mats.push(m);
    }
    Representation::new(q.clone(), field, layout.dims.clone(), mats)
}

/// `⊕_k e_ρ^{x_k}(K^{n_k})`. At `w` the space has one copy of `K^{n_k}`
/// per path `w -> x_k`; for an arrow `alpha: w1 -> w2`, the block row of
/// `q` in `Q(w2, x_k)` reads the block of `q alpha` in `Q(w1, x_k)`.
pub fn rho_sum(q: &Arc<Quiver>, field: Field, parts: &[(usize, usize)]) -> Result<Representation> {
    let layout = SumLayout::rho(q, parts)?;
    rho_from_layout(q, field, &layout)
}

pub(crate) fn rho_from_layout(q: &Arc<Quiver>, field: Field, layout: &SumLayout) -> Result<Representation> {
    let mut mats = Vec::with_capacity(q.arrow_count());
    for (a, arrow) in q.arrows().iter().enumerate() {
        let mut m = Matrix::zeros(field, layout.dims[arrow.target], layout.dims[arrow.source]);
        for b in &layout.blocks[arrow.target] {
            let longer = b.path.after(q, a);
            let src = layout
                .find(arrow.source, b.part, &longer)
                .expect("prefixed path is indexed");
            m.set_block(b.offset, src.offset, &Matrix::identity(field, b.width))?;
        }
        mats.push(m);
    }
    Representation::new(q.clone(), field, layout.dims.clone(), mats)
}

/// `e_λ^v(K^n)`.
pub fn e_lambda(q: &Arc<Quiver>, field: Field, v: usize, n: usize) -> Result<Representation> {
    lambda_sum(q, field, &[(v, n)])
}

/// `e_ρ^v(K^n)`.
pub fn e_rho(q: &Arc<Quiver>, field: Field, v: usize, n: usize) -> Result<Representation> {
    rho_sum(q, field, &[(v, n)])
}

/// `s^v(K^n)`: `K^n` at `v`, zero elsewhere.
pub fn stalk(q: &Arc<Quiver>, field: Field, v: usize, n: usize) -> Representation {
    let mut dims = vec![0; q.vertex_count()];
    dims[v] = n;
    let mats = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
        .collect();
    Representation::new(q.clone(), field, dims, mats).expect("stalk shapes are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn lambda_on_a2() {
        let q = Arc::new(Quiver::linear(2).unwrap());
        let p1 = e_lambda(&q, Q, 0, 1).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.arrow_map(0), &Matrix::identity(Q, 1));
        assert_eq!(e_lambda(&q, Q, 1, 1).unwrap().dims(), &[0, 1]);
    }

    #[test]
    fn lambda_on_double_arrow() {
        let q = Arc::new(Quiver::from_edges("dbl", 2, &[(0, 1), (0, 1)]).unwrap());
        let p = e_lambda(&q, Q, 0, 1).unwrap();
        assert_eq!(p.dims(), &[1, 2]);
        assert_eq!(p.arrow_map(0), &Matrix::from_i64(Q, 2, 1, &[1, 0]));
        assert_eq!(p.arrow_map(1), &Matrix::from_i64(Q, 2, 1, &[0, 1]));
    }

    #[test]
    fn rho_examples() {
        let q = Arc::new(Quiver::linear(2).unwrap());
        let i2 = e_rho(&q, Q, 1, 1).unwrap();
        assert_eq!(i2.dims(), &[1, 1]);
        assert_eq!(i2.arrow_map(0), &Matrix::identity(Q, 1));
        assert_eq!(e_rho(&q, Q, 0, 1).unwrap().dims(), &[1, 0]);

        let q3 = Arc::new(Quiver::linear(3).unwrap());
        let c = e_rho(&q3, Q, 2, 1).unwrap();
        assert_eq!(c.dims(), &[1, 1, 1]);
        assert!(c.mats().iter().all(|m| *m == Matrix::identity(Q, 1)));
    }

    #[test]
    fn stalks() {
        let q = Arc::new(Quiver::linear(2).unwrap());
        assert_eq!(stalk(&q, Q, 1, 1).dims(), &[0, 1]);
        assert!(stalk(&q, Q, 0, 0).is_zero());
        let semisimple = stalk(&q, Q, 0, 2).direct_sum(&stalk(&q, Q, 1, 3)).unwrap();
        assert_eq!(semisimple.dims(), &[2, 3]);
        assert!(semisimple.arrow_map(0).is_zero());
    }

    #[test]
    fn evaluation() {
        let q = Arc::new(Quiver::linear(2).unwrap());
        assert_eq!(e_lambda(&q, Q, 0, 1).unwrap().evaluate("2").unwrap(), 1);
        assert_eq!(stalk(&q, Q, 0, 1).evaluate("2").unwrap(), 0);
        assert!(stalk(&q, Q, 0, 1).evaluate("9").is_err());
    }
}
