//! Minor search against brute force and classical characterizations.

mod common;

use minorstress::catalog::{self, petersen_graph};
use minorstress::minors::{
    check_mader, delta_wye, has_minor, is_linkless, mader_bound, petersen_family, verify_minor_witness, wye_delta,
};
use minorstress::Graph;
use rand::Rng;

use common::{edges, graph_from_mask, random_graph, random_permutation, rng};

/// Tries every labelling of host vertices with a pattern vertex or "unused".
fn brute_force_minor(g: &Graph, h: &Graph) -> bool {
    let (n, k) = (g.n(), h.n());
    if k > n {
        return false;
    }
    let mut label = vec![0usize; n + 1];
    loop {
        if labelling_is_model(g, h, &label) {
            return true;
        }
        // odometer over {0..=k}^n
        let mut i = 1;
        while i <= n && label[i] == k {
            label[i] = 0;
            i += 1;
        }
        if i > n {
            return false;
        }
        label[i] += 1;
    }
}

fn labelling_is_model(g: &Graph, h: &Graph, label: &[usize]) -> bool {
    for b in 1..=h.n() {
        let set: Vec<usize> = g.vertices().filter(|&v| label[v] == b).collect();
        if set.is_empty() || !g.induced_subgraph(&set).is_connected() {
            return false;
        }
    }
    h.edges().all(|e| g.edges().any(|f| {
        let (x, y) = (label[f.u()], label[f.v()]);
        (x, y) == (e.u(), e.v()) || (y, x) == (e.u(), e.v())
    }))
}

/// `K_4`-minor-free iff repeatedly deleting vertices of degree at most one
/// and suppressing vertices of degree two (merging parallel edges) empties
/// the graph.
fn series_parallel(g: &Graph) -> bool {
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..=g.n()).map(|v| if v == 0 { Default::default() } else { g.neighbors(v).clone() }).collect();
    let mut alive: Vec<bool> = (0..=g.n()).map(|v| v > 0).collect();
    loop {
        let Some(v) = (1..=g.n()).find(|&v| alive[v] && adj[v].len() <= 2) else {
            return !alive.iter().any(|&a| a);
        };
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &u in &nb {
            adj[u].remove(&v);
        }
        if let [a, b] = nb[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[v].clear();
        alive[v] = false;
    }
}

fn has_cycle(g: &Graph) -> bool {
    g.edge_count() + g.components().len() > g.n()
}

fn found(g: &Graph, h: &Graph) -> bool {
    match has_minor(g, h).unwrap() {
        Some(w) => {
            assert!(verify_minor_witness(g, h, &w), "invalid witness for {:?} in {:?}", edges(h), edges(g));
            true
        }
        None => false,
    }
}

#[test]
fn agrees_with_brute_force_on_small_hosts() {
    let mut r = rng(40);
    for _ in 0..250 {
        let n = r.random_range(1..=6);
        let p = r.random_range(0.2..0.9);
        let g = random_graph(&mut r, n, p);
        let k = r.random_range(1..=5);
        let p = r.random_range(0.3..1.0);
        let h = random_graph(&mut r, k, p);
        assert_eq!(found(&g, &h), brute_force_minor(&g, &h), "pattern {:?} host {:?}", edges(&h), edges(&g));
    }
}

#[test]
fn complete_minors_agree_with_brute_force_on_six_vertices() {
    let mut r = rng(41);
    for _ in 0..200 {
        let mask = r.random_range(0..1u64 << 15);
        let g = graph_from_mask(6, mask);
        for k in 3..=5 {
            let h = Graph::complete(k);
            assert_eq!(found(&g, &h), brute_force_minor(&g, &h), "K{k} in {:?}", edges(&g));
        }
    }
}

#[test]
fn small_cliques_match_classical_characterizations() {
    let mut r = rng(42);
    for _ in 0..400 {
        let n = r.random_range(1..=11);
        let p = r.random_range(0.1..0.6);
        let g = random_graph(&mut r, n, p);
        assert_eq!(found(&g, &Graph::complete(2)), g.edge_count() > 0);
        assert_eq!(found(&g, &Graph::complete(3)), has_cycle(&g), "{:?}", edges(&g));
        assert_eq!(found(&g, &Graph::complete(4)), !series_parallel(&g), "{:?}", edges(&g));
    }
}

#[test]
fn oracle_sanity() {
    assert!(series_parallel(&catalog::cycle(7).unwrap()));
    assert!(!series_parallel(&Graph::complete(4)));
    assert!(brute_force_minor(&catalog::cycle(5).unwrap(), &Graph::complete(3)));
    assert!(brute_force_minor(&petersen_graph(), &Graph::complete(4)));
    assert!(!brute_force_minor(&catalog::path(5), &Graph::complete(3)));
}

#[test]
fn minors_are_preserved_by_adding_edges_and_relabelling() {
    let mut r = rng(43);
    for _ in 0..100 {
        let n = r.random_range(5..=9);
        let g = random_graph(&mut r, n, 0.5);
        let k = r.random_range(3..=5);
        let h = Graph::complete(k);
        let before = found(&g, &h);
        let perm = random_permutation(&mut r, n);
        assert_eq!(found(&g.relabel(&perm).unwrap(), &h), before);
        let (a, b) = (r.random_range(1..=n), r.random_range(1..=n));
        if a != b && !g.has_edge(a, b) {
            let mut bigger = g.clone();
            bigger.add_edge(a, b).unwrap();
            if before {
                assert!(found(&bigger, &h));
            }
        }
        if before {
            // a K_k model contains a K_{k-1} model
            assert!(found(&g, &Graph::complete(k - 1)));
        }
    }
}

#[test]
fn mader_bound_is_the_extremal_edge_count_on_small_graphs() {
    for n in 4..=6 {
        let pairs = n * (n - 1) / 2;
        let mut best = [0i64; 8];
        for mask in 0..1u64 << pairs {
            let g = graph_from_mask(n, mask);
            let e = g.edge_count() as i64;
            for r in 3..=n + 1 {
                if e > best[r] && !found(&g, &Graph::complete(r)) {
                    best[r] = e;
                }
            }
        }
        for r in 3..=(n + 1).min(7) {
            assert_eq!(best[r], mader_bound(r, n).unwrap(), "r = {r}, n = {n}");
        }
    }
}

#[test]
fn mader_check_holds_for_minor_free_graphs() {
    let mut r = rng(44);
    for _ in 0..200 {
        let n = r.random_range(1..=10);
        let p = r.random_range(0.1..0.7);
        let g = random_graph(&mut r, n, p);
        for k in 3..=7 {
            if !found(&g, &Graph::complete(k)) {
                assert!(check_mader(&g, k).unwrap(), "K{k}-minor free but dense: {:?}", edges(&g));
            }
        }
    }
}

fn girth(g: &Graph) -> usize {
    let mut best = usize::MAX;
    for s in g.vertices() {
        let mut dist = vec![usize::MAX; g.n() + 1];
        let mut parent = vec![0; g.n() + 1];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    best
}

#[test]
fn petersen_family_is_closed_and_minor_minimal() {
    let family = petersen_family().unwrap();
    let ns: Vec<usize> = family.iter().map(Graph::n).collect();
    assert_eq!(ns, vec![6, 7, 7, 8, 8, 9, 10]);
    let member = |x: &Graph| family.iter().any(|f| f.is_isomorphic(x));
    for g in &family {
        assert_eq!(g.edge_count(), 15);
        for a in g.vertices() {
            for b in g.vertices().filter(|&b| b > a) {
                for c in g.vertices().filter(|&c| c > b) {
                    if g.is_clique(&[a, b, c]) {
                        assert!(member(&delta_wye(g, [a, b, c]).unwrap()));
                    }
                }
            }
            if g.degree(a) == 3 {
                if let Some(x) = wye_delta(g, a).unwrap() {
                    assert!(member(&x));
                }
            }
        }
        for e in g.edges() {
            let mut rest = Graph::new(g.n());
            for f in g.edges().filter(|&f| f != e) {
                rest.add_edge(f.u(), f.v()).unwrap();
            }
            assert!(is_linkless(&rest).unwrap().linkless, "{:?} minus {e}", edges(g));
        }
    }
    let p = family.last().unwrap();
    assert!(p.is_isomorphic(&petersen_graph()));
    assert!(p.vertices().all(|v| p.degree(v) == 3));
    assert_eq!(girth(p), 5);
}
