#![allow(dead_code)]

use std::sync::Arc;

use pathalg::exactla::{Field, Matrix, Scalar};
use pathalg::quiver::Quiver;
use pathalg::rep::Representation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const F2: Field = Field::Prime(2);
pub const Q: Field = Field::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Undirected connectivity by union-find, independent of the library.
pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|x| find(&mut parent, x) == root)
}

/// Every connected quiver on at most 4 vertices with at most 5 arrows, up
/// to relabelling along a topological order (arrows go from lower to
/// higher index, parallel arrows allowed).
pub fn small_dags() -> Vec<Quiver> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut multisets: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        let mut frontier: Vec<(Vec<(usize, usize)>, usize)> = vec![(Vec::new(), 0)];
        for _ in 0..5 {
            let mut next = Vec::new();
            for (ms, start) in &frontier {
                for (k, &p) in pairs.iter().enumerate().skip(*start) {
                    let mut m = ms.clone();
                    m.push(p);
                    multisets.push(m.clone());
                    next.push((m, k));
                }
            }
            frontier = next;
        }
        for edges in multisets {
            if connected(n, &edges) {
                let name = format!("d{}_{}", n, out.len());
                out.push(Quiver::from_edges(name, n, &edges).unwrap());
            }
        }
    }
    out
}

/// A connected DAG on `n` vertices with at most `max_arrows` arrows: a random
/// spanning tree plus random extra arrows along a hidden vertex order.
pub fn random_dag(rng: &mut impl Rng, n: usize, max_arrows: usize, name: &str) -> Quiver {
    let mut edges = Vec::new();
    for j in 1..n {
        edges.push((rng.gen_range(0..j), j));
    }
    let extra = if n < 2 { 0 } else { rng.gen_range(0..=max_arrows.saturating_sub(edges.len())) };
    for _ in 0..extra {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        edges.push((i, j));
    }
    // shuffle vertex labels so sources are not always vertex 1
    let mut perm: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        perm.swap(k, rng.gen_range(0..=k));
    }
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Quiver::from_edges(name, n, &edges).unwrap()
}

/// 20 seeded random DAGs with 5 or 6 vertices and at most 8 arrows.
pub fn random_dags() -> Vec<Quiver> {
    let mut r = rng(0x5eed);
    (0..20)
        .map(|k| {
            let n = r.gen_range(5..=6);
            random_dag(&mut r, n, 8, &format!("r{k}"))
        })
        .collect()
}

pub fn fixture_quivers() -> Vec<Arc<Quiver>> {
    small_dags().into_iter().chain(random_dags()).map(Arc::new).collect()
}

pub fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    match field {
        Field::Rational => Scalar::from_i64(field, rng.gen_range(-2..=2)),
        Field::Prime(p) => Scalar::from_i64(field, rng.gen_range(0..p as i64)),
    }
}

pub fn random_matrix(rng: &mut impl Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, random_scalar(rng, field));
        }
    }
    m
}

pub fn random_rep_with_dims(rng: &mut impl Rng, q: &Arc<Quiver>, field: Field, dims: Vec<usize>) -> Representation {
    let mats = q
        .arrows()
        .iter()
        .map(|a| random_matrix(rng, field, dims[a.target], dims[a.source]))
        .collect();
    Representation::new(q.clone(), field, dims, mats).unwrap()
}

pub fn random_rep(rng: &mut impl Rng, q: &Arc<Quiver>, field: Field, max_dim: usize) -> Representation {
    let dims = (0..q.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
    random_rep_with_dims(rng, q, field, dims)
}

/// Random dimension vector with `1 <= sum <= total`.
pub fn random_dims(rng: &mut impl Rng, n: usize, total: usize) -> Vec<usize> {
    loop {
        let mut dims = vec![0; n];
        let budget = rng.gen_range(1..=total);
        for _ in 0..budget {
            dims[rng.gen_range(0..n)] += 1;
        }
        if dims.iter().sum::<usize>() >= 1 {
            return dims;
        }
    }
}

/// Two random representations per fixture quiver, one over F_2 and one over
/// the rationals, each vertex of dimension at most 2.
pub fn fixture_reps() -> Vec<Representation> {
    let mut r = rng(0xf1c5);
    let mut out = Vec::new();
    for q in fixture_quivers() {
        out.push(random_rep(&mut r, &q, F2, 2));
        out.push(random_rep(&mut r, &q, Q, 2));
    }
    out
}

pub fn vee() -> Arc<Quiver> {
    Arc::new(Quiver::from_edges("vee", 3, &[(0, 1), (2, 1)]).unwrap())
}

pub fn linear(n: usize) -> Arc<Quiver> {
    Arc::new(Quiver::linear(n).unwrap())
}

/// Degree-based linearity test written independently of the library.
pub fn is_chain(q: &Quiver) -> bool {
    let n = q.vertex_count();
    let edges: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
    if edges.len() + 1 != n || !connected(n, &edges) {
        return false;
    }
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    for &(s, t) in &edges {
        outdeg[s] += 1;
        indeg[t] += 1;
    }
    // a connected graph with n-1 edges is a tree; degree bounds make it a
    // directed path
    (0..n).all(|v| indeg[v] <= 1 && outdeg[v] <= 1)
}

/// Paths from `v` to `w` by plain recursion over arrow lists.
pub fn brute_path_count(q: &Quiver, v: usize, w: usize) -> u64 {
    if v == w {
        return 1;
    }
    q.arrows()
        .iter()
        .filter(|a| a.source == v)
        .map(|a| brute_path_count(q, a.target, w))
        .sum()
}

/// F_2 bit-vector linear algebra used by the essentiality oracle.
pub mod f2 {
    use pathalg::exactla::{Matrix, Scalar};

    pub fn column(m: &Matrix, c: usize) -> u64 {
        let mut bits = 0u64;
        for r in 0..m.rows() {
            if bit(m.get(r, c)) {
                bits |= 1 << r;
            }
        }
        bits
    }

    pub fn bit(s: &Scalar) -> bool {
        match s {
            Scalar::Prime { value, modulus: 2 } => *value == 1,
            _ => panic!("expected an F_2 scalar"),
        }
    }

    pub fn columns(m: &Matrix) -> Vec<u64> {
        (0..m.cols()).map(|c| column(m, c)).collect()
    }

    /// `m x` for `x` a bit vector over the columns.
    pub fn apply(m: &Matrix, x: u64) -> u64 {
        columns(m)
            .into_iter()
            .enumerate()
            .filter(|(c, _)| x >> c & 1 == 1)
            .fold(0, |acc, (_, col)| acc ^ col)
    }

    pub fn rank(vectors: &[u64]) -> usize {
        let mut basis: Vec<u64> = Vec::new();
        for &v in vectors {
            let mut x = v;
            for &b in &basis {
                x = x.min(x ^ b);
            }
            if x != 0 {
                basis.push(x);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        basis.len()
    }
}
