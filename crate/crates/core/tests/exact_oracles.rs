//! Shifting and rigidity ranks against an exact rational oracle.
//!
//! The oracle works over the rationals with random integer configurations
//! and plain Gaussian elimination, sharing no code with the library's
//! finite-field routines.

mod common;

use minorstress::field::PrimeField;
use minorstress::rigidity::analyze_rigidity;
use minorstress::shifting::{algebraic_shift, algebraic_shift_in, ShiftKind};
use minorstress::{Graph, DEFAULT_SEED, DEFAULT_TRIALS};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use common::{edges, graph_from_mask, random_graph, rng};

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Incremental row-echelon basis over Q.
#[derive(Default)]
struct Basis {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Basis {
    /// Adds `v` if it is independent of the basis; reports whether it was.
    fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone() / row[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= f.clone() * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

fn rank(columns: Vec<Vec<Q>>) -> usize {
    let mut b = Basis::default();
    columns.into_iter().filter(|c| b.insert(c.clone())).count()
}

/// `alpha[i][v]`, 1-based in both indices.
fn random_alpha(r: &mut impl Rng, n: usize, rows: usize) -> Vec<Vec<Q>> {
    (0..=rows)
        .map(|_| (0..=n).map(|_| q(r.random_range(-1_000_000..=1_000_000))).collect())
        .collect()
}

fn oracle_exterior(g: &Graph, alpha: &[Vec<Q>]) -> Vec<(usize, usize)> {
    let n = g.n();
    let es = edges(g);
    let mut basis = Basis::default();
    let mut kept = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            // coefficients of f_i ∧ f_j on the edge basis vectors e_u ∧ e_w
            let v: Vec<Q> = es
                .iter()
                .map(|&(u, w)| alpha[i][u].clone() * &alpha[j][w] - alpha[i][w].clone() * &alpha[j][u])
                .collect();
            if basis.insert(v) {
                kept.push((i, j));
            }
        }
    }
    kept
}

fn oracle_symmetric(g: &Graph, alpha: &[Vec<Q>]) -> Vec<(usize, usize)> {
    let n = g.n();
    let es = edges(g);
    let mut basis = Basis::default();
    let mut kept = Vec::new();
    // y_a y_b in lexicographic order of (a, b), a <= b; in the face ring the
    // non-edge products x_u x_w vanish
    for a in 1..=n {
        for b in a..=n {
            let mut v: Vec<Q> = (1..=n).map(|u| alpha[a][u].clone() * &alpha[b][u]).collect();
            v.extend(es.iter().map(|&(u, w)| alpha[a][u].clone() * &alpha[b][w] + alpha[a][w].clone() * &alpha[b][u]));
            if basis.insert(v) && a >= 2 {
                kept.push((a - 1, b));
            }
        }
    }
    kept
}

fn oracle_rigidity_rank(g: &Graph, d: usize, alpha: &[Vec<Q>]) -> usize {
    let n = g.n();
    let columns = edges(g)
        .into_iter()
        .map(|(v, u)| {
            let mut col = vec![Q::zero(); d * n];
            for i in 0..d {
                let diff = alpha[i + 1][v].clone() - &alpha[i + 1][u];
                col[(v - 1) * d + i] = diff.clone();
                col[(u - 1) * d + i] = -diff;
            }
            col
        })
        .collect();
    rank(columns)
}

fn library_shift(g: &Graph, kind: ShiftKind) -> Vec<(usize, usize)> {
    edges(&algebraic_shift(g, kind, DEFAULT_TRIALS, DEFAULT_SEED).unwrap().graph)
}

#[test]
fn path_on_three_vertices_exterior_shift() {
    let p3 = Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
    let mut r = rng(30);
    let alpha = random_alpha(&mut r, 3, 3);
    assert_eq!(oracle_exterior(&p3, &alpha), vec![(1, 2), (1, 3)]);
    assert_eq!(library_shift(&p3, ShiftKind::Exterior), vec![(1, 2), (1, 3)]);
}

#[test]
fn four_cycle_fixtures() {
    let c4 = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
    let mut r = rng(31);
    let alpha = random_alpha(&mut r, 4, 4);
    let ext = oracle_exterior(&c4, &alpha);
    let sym = oracle_symmetric(&c4, &alpha);
    assert_eq!(library_shift(&c4, ShiftKind::Exterior), ext);
    assert_eq!(library_shift(&c4, ShiftKind::Symmetric), sym);
    assert_eq!(ext, vec![(1, 2), (1, 3), (1, 4), (2, 3)]);
    assert_eq!(sym, vec![(1, 2), (1, 3), (1, 4), (2, 3)]);
}

#[test]
fn shifting_matches_oracle_on_all_graphs_with_five_vertices() {
    let mut r = rng(32);
    for mask in 0..1u64 << 10 {
        let g = graph_from_mask(5, mask);
        let alpha = random_alpha(&mut r, 5, 5);
        assert_eq!(library_shift(&g, ShiftKind::Exterior), oracle_exterior(&g, &alpha), "exterior {:?}", edges(&g));
        assert_eq!(library_shift(&g, ShiftKind::Symmetric), oracle_symmetric(&g, &alpha), "symmetric {:?}", edges(&g));
    }
}

#[test]
fn shifting_matches_oracle_on_random_graphs() {
    let mut r = rng(33);
    for _ in 0..40 {
        let n = r.random_range(6..=8);
        let p = r.random_range(0.2..0.8);
        let g = random_graph(&mut r, n, p);
        let alpha = random_alpha(&mut r, n, n);
        assert_eq!(library_shift(&g, ShiftKind::Exterior), oracle_exterior(&g, &alpha), "exterior {:?}", edges(&g));
        assert_eq!(library_shift(&g, ShiftKind::Symmetric), oracle_symmetric(&g, &alpha), "symmetric {:?}", edges(&g));
    }
}

#[test]
fn shifting_is_independent_of_the_prime() {
    let other = PrimeField::new(1_000_000_007).unwrap();
    let mut r = rng(34);
    for _ in 0..40 {
        let n = r.random_range(2..=8);
        let g = random_graph(&mut r, n, 0.5);
        for kind in [ShiftKind::Exterior, ShiftKind::Symmetric] {
            let a = algebraic_shift(&g, kind, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
            let b = algebraic_shift_in(&g, kind, DEFAULT_TRIALS, 99, other).unwrap();
            assert_eq!(a.graph, b.graph);
        }
    }
}

#[test]
fn rigidity_rank_matches_oracle() {
    let mut r = rng(35);
    for _ in 0..150 {
        let n = r.random_range(1..=8);
        let p = r.random_range(0.1..0.9);
        let g = random_graph(&mut r, n, p);
        let d = r.random_range(1..=4);
        let alpha = random_alpha(&mut r, n, d);
        let rep = analyze_rigidity(&g, d, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
        assert_eq!(rep.rank, oracle_rigidity_rank(&g, d, &alpha), "d = {d} edges {:?}", edges(&g));
    }
}

#[test]
fn oracle_sanity() {
    let id: Vec<Vec<Q>> = (0..3).map(|i| (0..3).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    assert_eq!(rank(id), 3);
    assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
}
