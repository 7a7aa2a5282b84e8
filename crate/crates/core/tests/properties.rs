//! Relations between shifting, stresses, acyclicity and minors.

mod common;

use minorstress::minors::has_minor;
use minorstress::rigidity::{analyze_rigidity, is_stress_free};
use minorstress::shifting::{algebraic_shift, is_d_acyclic, ShiftKind};
use minorstress::{Graph, DEFAULT_SEED, DEFAULT_TRIALS};
use proptest::prelude::*;
use rand::Rng;

use common::{edges, graph_from_mask, random_graph, rng};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mask = bits.iter().enumerate().fold(0u64, |m, (i, &b)| m | (b as u64) << i);
            graph_from_mask(n, mask)
        })
    })
}

fn shift(g: &Graph, kind: ShiftKind) -> Graph {
    algebraic_shift(g, kind, DEFAULT_TRIALS, DEFAULT_SEED).unwrap().graph
}

/// `{r-1, r}` in the shifted graph forces a `K_r` minor.
fn check_shift_minor(g: &Graph) {
    for kind in [ShiftKind::Exterior, ShiftKind::Symmetric] {
        let s = shift(g, kind);
        for r in 2..=6.min(g.n()) {
            if s.has_edge(r - 1, r) {
                assert!(has_minor(g, &Graph::complete(r)).unwrap().is_some(), "{kind} r = {r}: {:?}", edges(g));
            }
        }
    }
}

#[test]
fn shifted_pair_forces_complete_minor_on_random_graphs() {
    let mut r = rng(50);
    for _ in 0..300 {
        let n = r.random_range(2..=9);
        let p = r.random_range(0.2..0.9);
        check_shift_minor(&random_graph(&mut r, n, p));
    }
}

#[test]
fn stresses_and_acyclicity_are_read_off_the_shift() {
    let mut r = rng(51);
    for _ in 0..120 {
        let n = r.random_range(2..=8);
        let p = r.random_range(0.2..0.9);
        let g = random_graph(&mut r, n, p);
        let sym = shift(&g, ShiftKind::Symmetric);
        let ext = shift(&g, ShiftKind::Exterior);
        for d in 1..=4 {
            if d + 2 > n {
                break;
            }
            let stressed = analyze_rigidity(&g, d, DEFAULT_TRIALS, DEFAULT_SEED).unwrap().stress_dim > 0;
            assert_eq!(sym.has_edge(d + 1, d + 2), stressed, "d = {d}: {:?}", edges(&g));
            let acyclic = is_d_acyclic(&g, d, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
            assert_eq!(ext.has_edge(d + 1, d + 2), !acyclic, "d = {d}: {:?}", edges(&g));
        }
    }
}

/// Disjoint union of `a` and `b` with vertices `1..=k` of both identified.
fn glue(a: &Graph, b: &Graph, k: usize) -> Graph {
    let n = a.n() + b.n() - k;
    let mut out = Graph::new(n);
    let mut add = |x: usize, y: usize| {
        if !out.has_edge(x, y) {
            out.add_edge(x, y).unwrap();
        }
    };
    for e in a.edges() {
        add(e.u(), e.v());
    }
    let map = |v: usize| if v <= k { v } else { v + a.n() - k };
    for e in b.edges() {
        add(map(e.u()), map(e.v()));
    }
    out
}

fn with_clique(g: &Graph, k: usize) -> Graph {
    let mut out = g.clone();
    for a in 1..=k {
        for b in a + 1..=k {
            if !out.has_edge(a, b) {
                out.add_edge(a, b).unwrap();
            }
        }
    }
    out
}

#[test]
fn gluing_along_small_cliques_keeps_stress_freeness_and_acyclicity() {
    let mut r = rng(52);
    let mut glued = 0;
    while glued < 80 {
        let d = r.random_range(1..=4);
        let k = r.random_range(0..=d + 1);
        let (n1, n2) = (r.random_range(k.max(1)..=7), r.random_range(k.max(1)..=7));
        let a = with_clique(&random_graph(&mut r, n1, 0.5), k);
        let b = with_clique(&random_graph(&mut r, n2, 0.5), k);
        if !is_stress_free(&a, d).unwrap() || !is_stress_free(&b, d).unwrap() {
            continue;
        }
        let g = glue(&a, &b, k);
        assert!(is_stress_free(&g, d).unwrap(), "d = {d}, k = {k}: {:?} + {:?}", edges(&a), edges(&b));
        let acyclic = |x: &Graph| is_d_acyclic(x, d, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
        if acyclic(&a) && acyclic(&b) {
            assert!(acyclic(&g), "d = {d}, k = {k}: {:?} + {:?}", edges(&a), edges(&b));
        }
        glued += 1;
    }
}

#[test]
fn coning_raises_the_dimension() {
    let mut r = rng(53);
    for _ in 0..100 {
        let n = r.random_range(1..=8);
        let p = r.random_range(0.2..0.9);
        let g = random_graph(&mut r, n, p);
        let d = r.random_range(1..=4);
        let base = analyze_rigidity(&g, d, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
        let coned = analyze_rigidity(&g.cone(), d + 1, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
        assert_eq!(base.stress_dim, coned.stress_dim, "d = {d}: {:?}", edges(&g));
        assert_eq!(base.is_rigid, coned.is_rigid, "d = {d}: {:?}", edges(&g));
    }
}

#[test]
fn complete_graphs_shift_to_themselves() {
    for n in 1..=9 {
        for kind in [ShiftKind::Exterior, ShiftKind::Symmetric] {
            assert_eq!(shift(&Graph::complete(n), kind), Graph::complete(n));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shifted_pair_forces_complete_minor(g in arb_graph(8)) {
        check_shift_minor(&g);
    }

    #[test]
    fn shifting_is_idempotent(g in arb_graph(8)) {
        for kind in [ShiftKind::Exterior, ShiftKind::Symmetric] {
            let s = shift(&g, kind);
            prop_assert_eq!(shift(&s, kind), s);
        }
    }

    #[test]
    fn stress_count_matches_edge_count(g in arb_graph(8), d in 1usize..=4) {
        let rep = analyze_rigidity(&g, d, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
        prop_assert_eq!(rep.rank + rep.stress_dim, g.edge_count());
        prop_assert!(rep.rank <= rep.target_rank);
    }
}
