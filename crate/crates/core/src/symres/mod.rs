//! Symbolic minimal injective resolutions of `RQ` over a base ring given by
//! a [`RingProfile`], and the Gorenstein and dominant-dimension decisions.

mod profile;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

pub use profile::{ExtNat, InjTerm, RingProfile, Tri};

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::par::par_map;
use crate::quiver::Quiver;
use crate::rep::{e_lambda, min_injective_resolution, rho_sum, Representation};

/// `⊕ e_ρ^x(⊕_m I^j)` as a merged multiset keyed by `(x, j)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalInjective {
    entries: BTreeMap<(usize, usize), u64>,
}

impl FormalInjective {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let mut t = FormalInjective::new();
        for (x, j, m) in entries {
            t.insert(x, j, m)?;
        }
        Ok(t)
    }

    pub fn insert(&mut self, vertex: usize, degree: usize, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let slot = self.entries.entry((vertex, degree)).or_insert(0);
        *slot = slot.checked_add(mult).ok_or(Error::Overflow)?;
        Ok(())
    }

    pub fn merge(&mut self, other: &FormalInjective) -> Result<()> {
        for (&(x, j), &m) in &other.entries {
            self.insert(x, j, m)?;
        }
        Ok(())
    }

    /// `(vertex, degree, multiplicity)` in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(x, j), &m)| (x, j, m))
    }

    pub fn mult(&self, vertex: usize, degree: usize) -> u64 {
        self.entries.get(&(vertex, degree)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        Value::Array(
            self.entries()
                .map(|(x, j, m)| json!({"vertex": q.vertex_id(x), "degree": j, "mult": m}))
                .collect(),
        )
    }

    pub fn from_json(q: &Quiver, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("formal injective: {m}"));
        let items = v.as_array().ok_or_else(|| bad("expected an array"))?;
        let mut t = FormalInjective::new();
        for it in items {
            let x = it["vertex"].as_str().ok_or_else(|| bad("`vertex` must be a string"))?;
            let j = it["degree"].as_u64().ok_or_else(|| bad("`degree` must be a natural number"))?;
            let m = it["mult"].as_u64().ok_or_else(|| bad("`mult` must be a natural number"))?;
            if m == 0 {
                return Err(bad("multiplicities are at least 1"));
            }
            t.insert(q.vertex(x)?, j as usize, m)?;
        }
        Ok(t)
    }

    /// Human-readable `e_ρ^x(I^j)^m ⊕ ...`, `0` when empty.
    pub fn render(&self, q: &Quiver) -> String {
        if self.is_empty() {
            return "0".into();
        }
        self.entries()
            .map(|(x, j, m)| {
                let base = format!("e_rho^{}(I^{})", q.vertex_id(x), j);
                if m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

struct Counts {
    paths: Vec<Vec<u64>>,
}

impl Counts {
    fn new(q: &Quiver) -> Result<Self> {
        Ok(Counts {
            paths: q.path_count_matrix()?,
        })
    }

    /// `|Q''(v, y)| = |Q'(v, y)| - |Q(v, y)|`, independent of the arrow choice.
    fn q_double_prime(&self, q: &Quiver, v: usize, y: usize) -> Result<u64> {
        let mut prime = 0u64;
        for &a in q.out_arrows(y) {
            prime = prime
                .checked_add(self.paths[v][q.arrow(a).target])
                .ok_or(Error::Overflow)?;
        }
        prime
            .checked_sub(self.paths[v][y])
            .ok_or_else(|| Error::Invariant("|Q'| < |Q|".into()))
    }
}

fn j_term_with(q: &Quiver, counts: &Counts, v: usize, i: usize, profile: &RingProfile) -> Result<FormalInjective> {
    let mut t = FormalInjective::new();
    for x in 0..q.vertex_count() {
        if q.is_sink(x) {
            if profile.has_term(i) {
                t.insert(x, i, counts.paths[v][x])?;
            }
        } else if i >= 1 && profile.has_term(i - 1) {
            t.insert(x, i - 1, counts.q_double_prime(q, v, x)?)?;
        }
    }
    Ok(t)
}

/// `J^{v,i}`, the degree-`i` term of the minimal injective resolution of
/// `e_λ^v(R)`: `e_ρ^x(I^i)` with multiplicity `|Q(v,x)|` at sinks and
/// `e_ρ^y(I^{i-1})` with multiplicity `|Q''(v,y)|` elsewhere.
pub fn j_term(q: &Quiver, v: usize, i: usize, profile: &RingProfile) -> Result<FormalInjective> {
    q.require_connected_acyclic()?;
    j_term_with(q, &Counts::new(q)?, v, i, profile)
}

/// `J^i = ⊕_v J^{v,i}` for `i = 0..=up_to`.
pub fn algebra_resolution(q: &Quiver, profile: &RingProfile, up_to: usize) -> Result<Vec<FormalInjective>> {
    q.require_connected_acyclic()?;
    let counts = Counts::new(q)?;
    let vertices: Vec<usize> = (0..q.vertex_count()).collect();
    (0..=up_to)
        .map(|i| {
            let parts = par_map(&vertices, |&v| j_term_with(q, &counts, v, i, profile));
            let mut total = FormalInjective::new();
            for p in parts {
                total.merge(&p?)?;
            }
            Ok(total)
        })
        .collect()
}

/// An upper bound on a flat dimension; `exact` when it is known to be attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FdBound {
    pub value: ExtNat,
    pub exact: bool,
}

/// `fd(e_ρ^x(I^j)) <= fd(I^j) + 1`, with equality `fd(I^j)` at the sink of a
/// linear quiver; the bound for a term is the maximum over its entries.
pub fn fd_bound(q: &Quiver, t: &FormalInjective, profile: &RingProfile) -> FdBound {
    let linear_sink = if q.is_linear() { q.sinks().first().copied() } else { None };
    let mut best = 0u64;
    let mut exact = true;
    let mut unknown = false;
    for (x, j, _) in t.entries() {
        let fd = profile.fd(j);
        let refined = Some(x) == linear_sink;
        let bound = if refined { fd } else { fd.succ() };
        exact &= refined;
        match bound {
            ExtNat::Nat(n) => best = best.max(n),
            ExtNat::Infinite => return FdBound { value: ExtNat::Infinite, exact },
            ExtNat::Unknown => unknown = true,
        }
    }
    if unknown {
        return FdBound {
            value: ExtNat::Unknown,
            exact: false,
        };
    }
    FdBound {
        value: ExtNat::Nat(best),
        exact,
    }
}

fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

/// `RQ` is `k`-Gorenstein iff `Q` is linear and `R` is `k`-Gorenstein.
pub fn is_k_gorenstein(q: &Quiver, r_is_k_gorenstein: bool, k: usize) -> Result<bool> {
    require_k(k)?;
    q.require_connected_acyclic()?;
    Ok(q.is_linear() && r_is_k_gorenstein)
}

/// As [`is_k_gorenstein`], reading the `R` flag from a profile.
pub fn is_k_gorenstein_profile(q: &Quiver, profile: &RingProfile, k: usize) -> Result<Tri> {
    require_k(k)?;
    q.require_connected_acyclic()?;
    if !q.is_linear() {
        return Ok(Tri::False);
    }
    Ok(profile.is_k_gorenstein(k))
}

/// Sufficient condition for `RQ` to be quasi `k`-Gorenstein:
/// `fd(I^i) <= i` for `i < k`. `False` means the condition is not met, not
/// that `RQ` fails to be quasi `k`-Gorenstein.
pub fn is_quasi_k_gorenstein_sufficient(q: &Quiver, profile: &RingProfile, k: usize) -> Result<Tri> {
    require_k(k)?;
    q.require_connected_acyclic()?;
    let mut verdict = Tri::True;
    for i in 0..k {
        match profile.fd(i).at_most(i as u64) {
            Some(true) => {}
            Some(false) => return Ok(Tri::False),
            None => verdict = Tri::Unknown,
        }
    }
    Ok(verdict)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomDim {
    pub value: ExtNat,
    /// Set for single-vertex quivers, where `RQ = R`.
    pub single_vertex: bool,
}

/// `dom.dim RQ` is 1 when `Q` is linear and `dom.dim R != 0`, else 0.
pub fn dominant_dimension(q: &Quiver, dom_dim_r: ExtNat) -> Result<DomDim> {
    q.require_connected_acyclic()?;
    if q.vertex_count() == 1 {
        return Ok(DomDim {
            value: dom_dim_r,
            single_vertex: true,
        });
    }
    let value = match (q.is_linear(), dom_dim_r) {
        (false, _) | (true, ExtNat::Nat(0)) => ExtNat::Nat(0),
        (true, ExtNat::Unknown) => ExtNat::Unknown,
        (true, _) => ExtNat::Nat(1),
    };
    Ok(DomDim {
        value,
        single_vertex: false,
    })
}

/// Where `e_ρ^v(I^i)` occurs in the resolution of `RQ`: at a sink, in
/// `J^{v,i}`; otherwise in `J^{w,i+1}` for the least successor `w`, since
/// `e_w ∈ Q''(w, v)`.
pub fn gnc_summand_locator(q: &Quiver, v: usize, i: usize) -> Result<(usize, usize)> {
    q.require_connected_acyclic()?;
    let located = if q.is_sink(v) {
        (v, i)
    } else {
        let w = q.successors(v)[0];
        (w, i + 1)
    };
    let term = j_term(q, located.0, located.1, &RingProfile::open_ended())?;
    if term.mult(v, i) == 0 {
        return Err(Error::Invariant(format!(
            "e_rho^{}(I^{}) is not a summand of the located term",
            q.vertex_id(v),
            i
        )));
    }
    Ok(located)
}

/// The algebra resolution over the base field.
pub fn specialize_to_field(q: &Quiver, up_to: usize) -> Result<Vec<FormalInjective>> {
    algebra_resolution(q, &RingProfile::field(), up_to)
}

/// The representation `⊕ e_ρ^x(K^m)` of a term over the field profile.
pub fn realize_over_field(q: &Arc<Quiver>, field: Field, t: &FormalInjective) -> Result<Representation> {
    let mut parts = Vec::with_capacity(t.len());
    for (x, j, m) in t.entries() {
        if j != 0 {
            return Err(Error::InvalidArgument(format!(
                "I^{j} is zero over a field; entry at `{}` cannot be realized",
                q.vertex_id(x)
            )));
        }
        parts.push((x, usize::try_from(m).map_err(|_| Error::Overflow)?));
    }
    rho_sum(q, field, &parts)
}

#[derive(Debug, Clone)]
pub struct CrossCheck {
    pub symbolic: Vec<FormalInjective>,
    /// Per degree, per vertex.
    pub expected_dims: Vec<Vec<usize>>,
    pub concrete_dims: Vec<Vec<usize>>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.expected_dims == self.concrete_dims
    }
}

/// Compares `J^{v,i}` at the field profile with the concrete minimal
/// injective resolution of `e_λ^v(K)` over the rationals, degrees 0 to 2.
pub fn cross_check(q: &Arc<Quiver>, v: usize) -> Result<CrossCheck> {
    const DEGREES: usize = 3;
    q.require_connected_acyclic()?;
    let field = RingProfile::field();
    let counts = Counts::new(q)?;
    let n = q.vertex_count();
    let mut symbolic = Vec::with_capacity(DEGREES);
    let mut expected_dims = Vec::with_capacity(DEGREES);
    for i in 0..DEGREES {
        let t = j_term_with(q, &counts, v, i, &field)?;
        let mut dims = vec![0usize; n];
        for (x, _, m) in t.entries() {
            for (w, d) in dims.iter_mut().enumerate() {
                *d += (m * counts.paths[w][x]) as usize;
            }
        }
        symbolic.push(t);
        expected_dims.push(dims);
    }
    let res = min_injective_resolution(&e_lambda(q, Field::Rational, v, 1)?, DEGREES)?;
    let concrete_dims = (0..DEGREES)
        .map(|i| res.term(i).map_or_else(|| vec![0; n], |t| t.dims().to_vec()))
        .collect();
    Ok(CrossCheck {
        symbolic,
        expected_dims,
        concrete_dims,
    })
}
