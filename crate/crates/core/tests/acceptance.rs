//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use common::{f2, is_chain, F2, Q};
use pathalg::exactla::{Matrix, Scalar};
use pathalg::quiver::{ArrowChoice, Quiver};
use pathalg::rep::{
    injective_envelope, is_injective_rep, is_projective_rep, lambda_sum, min_injective_resolution, socle,
    standard_resolution, vertex_kernels, Representation,
};
use pathalg::symres::{self, ExtNat, FormalInjective, RingProfile, Tri};
use pathalg::tensorbox::{flatten, tensor_gorenstein, tensor_product, unflatten};
use pathalg::Error;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fi(entries: &[(usize, usize, u64)]) -> FormalInjective {
    FormalInjective::from_entries(entries.iter().copied()).unwrap()
}

fn ac1_linear_terms() -> Outcome {
    let open = RingProfile::open_ended();
    let mut checked = 0;
    for n in 2..=6 {
        let q = Quiver::linear(n).unwrap();
        let sink = n - 1;
        for i in 0..=6 {
            let got = symres::j_term(&q, 0, i, &open).map_err(|e| e.to_string())?;
            ensure!(got == fi(&[(sink, i, 1)]), "A_{n}, v=1, i={i}: {}", got.render(&q));
            checked += 1;
        }
        for v in 1..n {
            for i in 1..=6 {
                let got = symres::j_term(&q, v, i, &open).map_err(|e| e.to_string())?;
                let want = fi(&[(sink, i, 1), (v - 1, i - 1, 1)]);
                ensure!(got == want, "A_{n}, v={}, i={i}: {}", v + 1, got.render(&q));
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} terms matched exactly"))
}

/// The maps `f` and `g` built from the path sets, as matrices over Q.
fn sequence_maps(q: &Quiver, v: usize, w: usize, choice: ArrowChoice) -> Result<(usize, usize, usize, Matrix, Matrix), String> {
    let err = |e: Error| e.to_string();
    let qvw = q.enumerate_paths(v, w).map_err(err)?;
    let qp = q.q_prime(v, w).map_err(err)?;
    let qpp = q.q_double_prime(v, w, choice).map_err(err)?;
    let alpha0 = q.chosen_arrow(w, choice).map_err(err)?;
    let index: HashMap<(usize, Vec<usize>), usize> = qp
        .iter()
        .enumerate()
        .map(|(k, bp)| ((bp.arrow, bp.path.arrows.clone()), k))
        .collect();
    let extended = |alpha: usize, p: &pathalg::Path| {
        let mut arrows = p.arrows.clone();
        arrows.push(alpha);
        index[&(alpha, arrows)]
    };

    // f: r_p goes to alpha p in every block
    let mut f = Matrix::zeros(Q, qp.len(), qvw.len());
    for (c, p) in qvw.iter().enumerate() {
        for &alpha in q.out_arrows(w) {
            f.set(extended(alpha, p), c, Scalar::from_i64(Q, 1));
        }
    }

    // the paths alpha p, p in Q(v, w), by block
    let mut prefixed: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    for (k, p) in qvw.iter().enumerate() {
        for &alpha in q.out_arrows(w) {
            let mut arrows = p.arrows.clone();
            arrows.push(alpha);
            prefixed.insert((alpha, arrows), k);
        }
    }
    let expected_qpp: Vec<&pathalg::quiver::BlockPath> = qp
        .iter()
        .filter(|bp| !(bp.arrow == alpha0 && prefixed.contains_key(&(alpha0, bp.path.arrows.clone()))))
        .collect();
    if expected_qpp.len() != qpp.len() || expected_qpp.iter().zip(&qpp).any(|(a, b)| *a != b) {
        return Err(format!("Q'' differs from the complement of the chosen block at ({v},{w})"));
    }

    // g: z''' is kept, z_alpha becomes z_alpha - z_alpha0
    let mut g = Matrix::zeros(Q, qpp.len(), qp.len());
    for (r, bp) in qpp.iter().enumerate() {
        let col = index[&(bp.arrow, bp.path.arrows.clone())];
        g.set(r, col, Scalar::from_i64(Q, 1));
        if let Some(&k) = prefixed.get(&(bp.arrow, bp.path.arrows.clone())) {
            let base = extended(alpha0, &qvw[k]);
            g.set(r, base, Scalar::from_i64(Q, -1));
        }
    }
    Ok((qvw.len(), qp.len(), qpp.len(), f, g))
}

fn ac2_path_set_exactness() -> Outcome {
    let mut sequences = 0;
    let mut cardinalities = 0;
    for q in common::fixture_quivers() {
        for v in 0..q.vertex_count() {
            for w in 0..q.vertex_count() {
                if q.is_sink(w) {
                    ensure!(q.q_prime(v, w).unwrap().is_empty(), "Q' at a sink is not empty");
                    continue;
                }
                let choices = std::iter::once(ArrowChoice::Least)
                    .chain(q.out_arrows(w).iter().map(|&a| ArrowChoice::Arrow(a)));
                for choice in choices {
                    let (nq, nqp, nqpp, f, g) = sequence_maps(&q, v, w, choice)?;
                    ensure!(nqp == nq + nqpp, "{}: |Q'| != |Q| + |Q''| at ({v},{w})", q.name());
                    cardinalities += 1;
                    let gf = g.matmul(&f).map_err(|e| e.to_string())?;
                    ensure!(gf.is_zero(), "{}: g f != 0 at ({v},{w})", q.name());
                    ensure!(f.rank() == nq, "{}: f not injective at ({v},{w})", q.name());
                    ensure!(g.rank() == nqpp, "{}: g not surjective at ({v},{w})", q.name());
                    ensure!(f.rank() + g.rank() == nqp, "{}: not exact in the middle at ({v},{w})", q.name());
                    sequences += 1;
                }
            }
        }
    }
    Ok(format!("{sequences} short exact sequences, {cardinalities} cardinality checks"))
}

/// Every nonzero homogeneous `x in E_w` generates a subrepresentation that
/// meets the image of `psi`.
fn essential(e: &Representation, psi_image: &[Vec<u64>]) -> Result<(), String> {
    let q = e.quiver();
    let n = q.vertex_count();
    for w in 0..n {
        let dim = e.dim(w);
        for x in 1u64..(1 << dim) {
            let mut generated: Vec<Vec<u64>> = vec![Vec::new(); n];
            let mut stack = vec![(w, x)];
            while let Some((u, y)) = stack.pop() {
                generated[u].push(y);
                for &a in q.out_arrows(u) {
                    let z = f2::apply(e.arrow_map(a), y);
                    if z != 0 {
                        stack.push((q.arrow(a).target, z));
                    }
                }
            }
            let meets = (0..n).any(|u| {
                let s = f2::rank(&generated[u]);
                let i = f2::rank(&psi_image[u]);
                let both: Vec<u64> = generated[u].iter().chain(&psi_image[u]).copied().collect();
                s + i > f2::rank(&both)
            });
            if !meets {
                return Err(format!("x = {x:b} at vertex {} generates a subobject missing im psi", q.vertex_id(w)));
            }
        }
    }
    Ok(())
}

fn ac3_envelope_oracle() -> Outcome {
    let mut r = common::rng(0xe55);
    let mut cases = 0;
    for q in [common::linear(3), common::vee()] {
        for _ in 0..100 {
            let dims = common::random_dims(&mut r, 3, 6);
            let m = common::random_rep_with_dims(&mut r, &q, F2, dims);
            let (e, psi) = injective_envelope(&m).map_err(|e| e.to_string())?;
            ensure!(psi.is_mono(), "psi not monic for {:?}", m.dims());
            ensure!(is_injective_rep(&e).unwrap(), "envelope not injective for {:?}", m.dims());
            let k = vertex_kernels(&m).unwrap().kernel_dims();
            for w in 0..3 {
                let want: u64 = (0..3).map(|v| common::brute_path_count(&q, w, v) * k[v] as u64).sum();
                ensure!(e.dim(w) as u64 == want, "envelope dimension at {w} is {}, expected {want}", e.dim(w));
            }
            let (soc, incl) = socle(&e).unwrap();
            ensure!(soc.dims() == k.as_slice(), "socle of E has dims {:?}, K has {:?}", soc.dims(), k);
            let image: Vec<Vec<u64>> = (0..3).map(|w| f2::columns(psi.comp(w))).collect();
            for w in 0..3 {
                let s = f2::columns(incl.comp(w));
                let both: Vec<u64> = image[w].iter().chain(&s).copied().collect();
                ensure!(f2::rank(&both) == f2::rank(&image[w]), "socle of E not inside im psi at {w}");
            }
            essential(&e, &image)?;
            cases += 1;
        }
    }
    Ok(format!("{cases} random F_2 representations"))
}

fn ac4_hereditary() -> Outcome {
    let reps = common::fixture_reps();
    for m in &reps {
        let r = min_injective_resolution(m, 3).map_err(|e| format!("{}: {e}", m.quiver().name()))?;
        ensure!(r.term(2).is_none_or(Representation::is_zero), "{}: nonzero term 2", m.quiver().name());
        ensure!(r.maps[0].is_mono(), "{}: M -> I^0 not monic", m.quiver().name());
        for i in 0..r.maps.len() {
            let next = r.maps.get(i + 1);
            if let Some(d) = next {
                ensure!(r.maps[i].then(d).unwrap().is_zero(), "{}: d d != 0", m.quiver().name());
            }
            let t = &r.terms[i];
            for w in 0..t.quiver().vertex_count() {
                let into = r.maps[i].comp(w).rank();
                let out = next.map_or(0, |d| d.comp(w).rank());
                ensure!(into + out == t.dim(w), "{}: not exact at term {i}", m.quiver().name());
            }
        }
    }
    Ok(format!("{} representations resolve by degree 1", reps.len()))
}

fn ac5_bridge() -> Outcome {
    let mut checks = 0;
    for q in common::fixture_quivers() {
        for v in 0..q.vertex_count() {
            let c = symres::cross_check(&q, v).map_err(|e| e.to_string())?;
            ensure!(c.agrees(), "{} at {}: symbolic {:?} vs concrete {:?}", q.name(), v, c.expected_dims, c.concrete_dims);
            ensure!(c.symbolic[2].is_empty(), "{}: degree-2 symbol is nonzero", q.name());
            checks += 1;
        }
    }
    Ok(format!("{checks} vertex cross-checks"))
}

fn ac6_decisions() -> Outcome {
    let r = RingProfile::dual_numbers();
    let vee = common::vee();
    for n in 1..=6 {
        let q = Quiver::linear(n).unwrap();
        for k in 1..=12 {
            ensure!(symres::is_k_gorenstein_profile(&q, &r, k).unwrap() == Tri::True, "A_{n}, k={k}");
            ensure!(symres::is_k_gorenstein(&q, true, k).unwrap(), "A_{n}, k={k} with flag");
        }
        if n > 1 {
            for d in [r.dom_dim, ExtNat::Nat(1), ExtNat::Nat(3)] {
                let got = symres::dominant_dimension(&q, d).unwrap().value;
                ensure!(got == ExtNat::Nat(1), "domdim A_{n} over dom.dim {d} is {got}");
            }
            let got = symres::dominant_dimension(&q, ExtNat::Nat(0)).unwrap().value;
            ensure!(got == ExtNat::Nat(0), "domdim A_{n} over dom.dim 0 is {got}");
        }
    }
    ensure!(symres::is_k_gorenstein_profile(&vee, &r, 1).unwrap() == Tri::False, "vee is 1-Gorenstein");
    ensure!(!symres::is_k_gorenstein(&vee, true, 1).unwrap(), "vee is 1-Gorenstein with flag");
    for d in [ExtNat::Nat(0), ExtNat::Nat(1), ExtNat::Nat(5), ExtNat::Infinite, ExtNat::Unknown] {
        let got = symres::dominant_dimension(&vee, d).unwrap().value;
        ensure!(got == ExtNat::Nat(0), "domdim vee over {d} is {got}");
    }
    Ok("worked values reproduced".into())
}

fn ac7_concrete_domdim() -> Outcome {
    let mut quivers = 0;
    for q in common::fixture_quivers() {
        let j = symres::specialize_to_field(&q, 1).unwrap();
        let t0 = symres::realize_over_field(&q, Q, &j[0]).unwrap();
        let t1 = symres::realize_over_field(&q, Q, &j[1]).unwrap();
        let regular = lambda_sum(&q, Q, &(0..q.vertex_count()).map(|v| (v, 1)).collect::<Vec<_>>()).unwrap();
        let res = min_injective_resolution(&regular, 2).unwrap();
        ensure!(res.terms[0].dims() == t0.dims(), "{}: term 0 dims differ", q.name());
        let concrete1 = res.term(1).map_or(vec![0; q.vertex_count()], |t| t.dims().to_vec());
        ensure!(concrete1 == t1.dims(), "{}: term 1 dims differ", q.name());

        let proj_inj = is_projective_rep(&t0).unwrap() && is_injective_rep(&t0).unwrap();
        ensure!(proj_inj == is_chain(&q), "{}: term 0 projective-injective is {proj_inj}", q.name());
        if q.vertex_count() > 1 {
            ensure!(!is_projective_rep(&t1).unwrap(), "{}: term 1 is projective", q.name());
        }
        quivers += 1;
    }
    Ok(format!("{quivers} quivers"))
}

fn ac8_gnc() -> Outcome {
    let open = RingProfile::open_ended();
    let mut located = 0;
    for q in common::fixture_quivers() {
        for v in 0..q.vertex_count() {
            for i in 0..=3 {
                let (w, j) = symres::gnc_summand_locator(&q, v, i).map_err(|e| e.to_string())?;
                if q.is_sink(v) {
                    ensure!((w, j) == (v, i), "{}: sink {v} located at ({w},{j})", q.name());
                } else {
                    let succ = q.arrows().iter().any(|a| a.source == v && a.target == w);
                    ensure!(succ && j == i + 1, "{}: ({v},{i}) located at ({w},{j})", q.name());
                }
                let m = symres::j_term(&q, w, j, &open).unwrap().mult(v, i);
                ensure!(m >= 1, "{}: e_rho^{v}(I^{i}) missing from J^({w},{j})", q.name());
                located += 1;
            }
        }
    }
    Ok(format!("{located} summands located"))
}

fn ac9_tensor() -> Outcome {
    let a2 = common::linear(2);
    let t = tensor_product(&a2, &[], &a2, &[]).unwrap();
    let counts = (t.product.vertex_count(), t.product.arrow_count(), t.relations.len());
    ensure!(counts == (4, 4, 1), "A_2 x A_2 gives {counts:?}");

    let mut r = common::rng(0x7e45);
    let mut round_trips = 0;
    let mut rejected = 0;
    while round_trips < 100 {
        let dims = common::random_dims(&mut r, 4, 8);
        let m = common::random_rep_with_dims(&mut r, &t.product, F2, dims);
        if !m.check_relations(&t.relations).unwrap() {
            ensure!(
                matches!(flatten(&t, &m), Err(Error::RelationsViolated { .. })),
                "unbound representation was flattened"
            );
            rejected += 1;
            continue;
        }
        let f = flatten(&t, &m).map_err(|e| e.to_string())?;
        let back = unflatten(&t, &f).map_err(|e| e.to_string())?;
        ensure!(back == m, "unflatten(flatten(M)) != M for dims {:?}", m.dims());
        ensure!(flatten(&t, &back).unwrap() == f, "flatten(unflatten(F)) != F");
        round_trips += 1;
    }

    let mut agree = 0;
    let (mut yes, mut no) = (0, 0);
    for k in 0..20 {
        let pick = |r: &mut rand_chacha::ChaCha8Rng, tag: &str| -> Arc<Quiver> {
            let n = r.gen_range(1..=5);
            if r.gen_bool(0.4) {
                Arc::new(Quiver::linear(n).unwrap())
            } else {
                let extra = r.gen_range(0..=2);
                Arc::new(common::random_dag(r, n, n - 1 + extra, &format!("{tag}{k}")))
            }
        };
        let q1 = pick(&mut r, "p");
        let q2 = pick(&mut r, "q");
        let kk = r.gen_range(1..=5);
        let got = tensor_gorenstein(&q1, &q2, kk).unwrap();
        let want = is_chain(&q1) && is_chain(&q2);
        ensure!(got == want, "tensor_gorenstein({}, {}) = {got}", q1.name(), q2.name());
        if got {
            yes += 1
        } else {
            no += 1
        }
        agree += 1;
    }
    Ok(format!(
        "4/4/1; {round_trips} round trips ({rejected} unbound rejected); {agree} pairs ({yes} linear, {no} not)"
    ))
}

fn ac10_standard() -> Outcome {
    let reps = common::fixture_reps();
    for m in &reps {
        let q = m.quiver();
        let s = standard_resolution(m).map_err(|e| e.to_string())?;
        if let Some(d) = s.exactness_defect() {
            return Err(format!("{}: {d}", q.name()));
        }
        ensure!(s.outer_terms_projective().unwrap(), "{}: outer term not projective", q.name());
        for w in 0..q.vertex_count() {
            let mid: u64 = (0..q.vertex_count())
                .map(|v| common::brute_path_count(q, v, w) * m.dim(v) as u64)
                .sum();
            let left: u64 = q
                .arrows()
                .iter()
                .map(|a| common::brute_path_count(q, a.target, w) * m.dim(a.source) as u64)
                .sum();
            ensure!(s.middle.dim(w) as u64 == mid && s.left.dim(w) as u64 == left, "{}: term dims", q.name());
            ensure!(mid - left == m.dim(w) as u64, "{}: Euler characteristic at {w}", q.name());
        }
    }
    Ok(format!("{} representations", reps.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "linear quiver resolution terms", ac1_linear_terms),
        ("AC2", "Q' / Q / Q'' short exact sequences", ac2_path_set_exactness),
        ("AC3", "injective envelope oracle over F_2", ac3_envelope_oracle),
        ("AC4", "hereditary resolution length", ac4_hereditary),
        ("AC5", "symbolic vs concrete resolutions", ac5_bridge),
        ("AC6", "Gorenstein and dominant dimension values", ac6_decisions),
        ("AC7", "concrete dominant dimension", ac7_concrete_domdim),
        ("AC8", "GNC summand locator", ac8_gnc),
        ("AC9", "tensor quivers and flattening", ac9_tensor),
        ("AC10", "standard resolution", ac10_standard),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(format!("panicked: {msg}"))
            });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} PASS {title}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {title}: {why} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
