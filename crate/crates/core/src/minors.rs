//! Minor search with branch-set witnesses, the Petersen family, linklessness,
//! and the edge bound for `K_r`-minor-free graphs.
//!
//! `H` is a minor of `G` iff `G` has pairwise disjoint connected vertex sets
//! (branch sets), one per vertex of `H`, such that every edge of `H` is
//! realized by an edge of `G` between the corresponding branch sets.
//!
//! The search places branch sets one pattern vertex at a time. Each branch set
//! is enumerated as a connected set of free host vertices together with its
//! smallest vertex ("root"), so every connected set is produced exactly once.
//! Pruning uses the remaining free vertices, the number of free vertices next
//! to placed branch sets, connectivity of the free region, and an increasing
//! root order inside classes of twin pattern vertices (pattern vertices with
//! equal neighbourhoods are interchangeable). When both graphs are connected
//! the search looks only for models that use every host vertex, which loses
//! nothing: unused host vertices can always be merged into a neighbouring
//! branch set.

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{CliqueSplit, Edge, Graph, Vertex};

/// Default cap on search nodes before giving up with [`Error::BudgetExceeded`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub host_n: usize,
    #[serde(with = "edge_list_serde")]
    pub pattern: Graph,
    /// `branch_sets[h - 1]` realizes pattern vertex `h`; each set is sorted.
    pub branch_sets: Vec<Vec<Vertex>>,
}

mod edge_list_serde {
    use super::Graph;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Plain {
        n: usize,
        edges: Vec<(usize, usize)>,
    }

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        Plain { n: g.n(), edges: g.edges().map(|e| (e.u(), e.v())).collect() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let p = Plain::deserialize(d)?;
        Graph::from_edges(p.n, p.edges).map_err(serde::de::Error::custom)
    }
}

impl MinorWitness {
    /// Branch sets rendered as `[[1,2],[3],...]`.
    pub fn branch_sets_text(&self) -> String {
        let sets: Vec<String> = self
            .branch_sets
            .iter()
            .map(|b| format!("[{}]", b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", sets.join(","))
    }
}

/// Checks a witness against its definition, without using the search code.
pub fn verify_minor_witness(g: &Graph, h: &Graph, w: &MinorWitness) -> bool {
    check_minor_witness(g, h, w).is_ok()
}

/// Like [`verify_minor_witness`], reporting the first violated condition.
pub fn check_minor_witness(g: &Graph, h: &Graph, w: &MinorWitness) -> std::result::Result<(), String> {
    if w.host_n != g.n() {
        return Err(format!("witness is for a host on {} vertices, graph has {}", w.host_n, g.n()));
    }
    if w.pattern != *h {
        return Err("witness pattern differs from the requested pattern".into());
    }
    if w.branch_sets.len() != h.n() {
        return Err(format!("{} branch sets for {} pattern vertices", w.branch_sets.len(), h.n()));
    }
    let mut owner = vec![0usize; g.n() + 1];
    for (i, set) in w.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(format!("branch set {} is empty", i + 1));
        }
        for &v in set {
            if v == 0 || v > g.n() {
                return Err(format!("vertex {v} is not a host vertex"));
            }
            if owner[v] != 0 {
                return Err(format!("vertex {v} lies in branch sets {} and {}", owner[v], i + 1));
            }
            owner[v] = i + 1;
        }
    }
    for (i, set) in w.branch_sets.iter().enumerate() {
        let mut seen = vec![set[0]];
        let mut k = 0;
        while k < seen.len() {
            let x = seen[k];
            k += 1;
            for &y in g.neighbors(x) {
                if owner[y] == i + 1 && !seen.contains(&y) {
                    seen.push(y);
                }
            }
        }
        if seen.len() != set.len() {
            return Err(format!("branch set {} is not connected", i + 1));
        }
    }
    for e in h.edges() {
        let (a, b) = (e.u(), e.v());
        let joined = w.branch_sets[a - 1]
            .iter()
            .any(|&x| g.neighbors(x).iter().any(|&y| owner[y] == b));
        if !joined {
            return Err(format!("no host edge between branch sets {a} and {b}"));
        }
    }
    Ok(())
}

pub fn has_minor(g: &Graph, h: &Graph) -> Result<Option<MinorWitness>> {
    has_minor_with_budget(g, h, DEFAULT_BUDGET)
}

pub fn has_minor_with_budget(g: &Graph, h: &Graph, budget: u64) -> Result<Option<MinorWitness>> {
    let mut nodes = 0;
    let found = if h.n() > g.n() || h.edge_count() > g.edge_count() {
        None
    } else if h.n() >= 2 && h.is_complete() {
        complete_minor(g, h.n(), budget, &mut nodes)?
    } else {
        general_minor(g, h, budget, &mut nodes)?
    };
    Ok(found.map(|mut branch_sets: Vec<Vec<Vertex>>| {
        branch_sets.iter_mut().for_each(|b| b.sort_unstable());
        MinorWitness { host_n: g.n(), pattern: h.clone(), branch_sets }
    }))
}

fn lift(sets: Vec<Vec<Vertex>>, labels: &[Vertex]) -> Vec<Vec<Vertex>> {
    sets.into_iter().map(|b| b.into_iter().map(|v| labels[v - 1]).collect()).collect()
}

/// `K_r` models, splitting the host first. A `K_r` minor of a graph glued
/// from two pieces along a clique already lives in one of the pieces: at most
/// one piece can hold a branch set avoiding the clique, and restricting every
/// branch set to the other piece keeps it connected and adjacent to the rest
/// through clique edges.
fn complete_minor(g: &Graph, r: usize, budget: u64, nodes: &mut u64) -> Result<Option<Vec<Vec<Vertex>>>> {
    if g.n() < r || g.edge_count() < r * (r - 1) / 2 {
        return Ok(None);
    }
    if let Some(c) = g.find_clique(r) {
        return Ok(Some(c.into_iter().map(|v| vec![v]).collect()));
    }
    if !g.is_connected() {
        for comp in g.components() {
            if let Some(sets) = complete_minor(&g.induced_subgraph(&comp), r, budget, nodes)? {
                return Ok(Some(lift(sets, &comp)));
            }
        }
        return Ok(None);
    }
    if let Some(split) = g.find_clique_separator((r - 1).min(g.n()))? {
        for (piece, labels) in [(&split.g1, &split.side1), (&split.g2, &split.side2)] {
            if let Some(sets) = complete_minor(piece, r, budget, nodes)? {
                return Ok(Some(lift(sets, labels)));
            }
        }
        return Ok(None);
    }
    general_minor(g, &Graph::complete(r), budget, nodes)
}

fn general_minor(g: &Graph, h: &Graph, budget: u64, nodes: &mut u64) -> Result<Option<Vec<Vec<Vertex>>>> {
    let k = h.n();
    if k > g.n() || h.edge_count() > g.edge_count() {
        return Ok(None);
    }
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if !h.is_connected() {
        let mut search = Search::new(g, h, false, budget.saturating_sub(*nodes), budget);
        let result = search.run();
        *nodes += search.nodes;
        return result;
    }
    for comp in g.components() {
        if comp.len() < k {
            continue;
        }
        let sub = g.induced_subgraph(&comp);
        if sub.edge_count() < h.edge_count() {
            continue;
        }
        let mut search = Search::new(&sub, h, true, budget.saturating_sub(*nodes), budget);
        let result = search.run();
        *nodes += search.nodes;
        if let Some(sets) = result? {
            return Ok(Some(lift(sets, &comp)));
        }
    }
    Ok(None)
}

struct Search<'a> {
    n: usize,
    host: Vec<Vec<usize>>,
    pattern: &'a Graph,
    k: usize,
    order: Vec<usize>,
    /// For each position, the previous position holding a twin of that vertex.
    twin_prev: Vec<Option<usize>>,
    /// For each position, whether all later pattern vertices are twins of it.
    tail_is_twin_class: Vec<bool>,
    partition: bool,
    owner: Vec<usize>,
    sets: Vec<Vec<usize>>,
    roots: Vec<usize>,
    nodes: u64,
    budget: u64,
    total_budget: u64,
}

const FREE: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(g: &Graph, h: &'a Graph, partition: bool, budget: u64, total_budget: u64) -> Self {
        let n = g.n();
        let host = (1..=n).map(|v| g.neighbors(v).iter().map(|&w| w - 1).collect()).collect();
        let k = h.n();
        let order = placement_order(h);
        let twins = |a: usize, b: usize| {
            let na: Vec<_> = h.neighbors(a).iter().filter(|&&x| x != b).collect();
            let nb: Vec<_> = h.neighbors(b).iter().filter(|&&x| x != a).collect();
            na == nb
        };
        let twin_prev: Vec<Option<usize>> = (0..k)
            .map(|i| (0..i).rev().find(|&j| twins(order[i], order[j])))
            .collect();
        let tail_is_twin_class = (0..k)
            .map(|i| (i + 1..k).all(|j| twins(order[i], order[j])))
            .collect();
        Search {
            n,
            host,
            pattern: h,
            k,
            order,
            twin_prev,
            tail_is_twin_class,
            partition,
            owner: vec![FREE; n],
            sets: vec![Vec::new(); k + 1],
            roots: vec![0; k],
            nodes: 0,
            budget,
            total_budget,
        }
    }

    /// Branch sets indexed by pattern vertex, host vertices 1-based.
    fn run(&mut self) -> Result<Option<Vec<Vec<Vertex>>>> {
        if self.place(0)? {
            Ok(Some(
                (1..=self.k).map(|h| self.sets[h].iter().map(|&v| v + 1).collect()).collect(),
            ))
        } else {
            Ok(None)
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExceeded(self.total_budget))
        } else {
            Ok(())
        }
    }

    fn free_count(&self) -> usize {
        self.owner.iter().filter(|&&o| o == FREE).count()
    }

    fn place(&mut self, i: usize) -> Result<bool> {
        self.tick()?;
        if i == self.k {
            return Ok(!self.partition || self.free_count() == 0);
        }
        let h = self.order[i];
        let remaining_after = self.k - i - 1;
        let free = self.free_count();
        if free < remaining_after + 1 {
            return Ok(false);
        }
        let max_size = free - remaining_after;
        let min_root = self.twin_prev[i].map_or(0, |j| self.roots[j] + 1);

        if self.pattern.degree(h) == 0 && !self.partition {
            // an isolated pattern vertex needs just one free vertex
            let Some(r) = (min_root..self.n).find(|&v| self.owner[v] == FREE) else {
                return Ok(false);
            };
            return self.try_set(i, h, vec![r]);
        }

        let forced_root = self.partition && self.tail_is_twin_class[i];
        for r in min_root..self.n {
            if self.owner[r] != FREE {
                continue;
            }
            if self.enumerate_from(i, h, r, max_size)? {
                return Ok(true);
            }
            if forced_root {
                // every host vertex is used, so the smallest free one must be this root
                break;
            }
        }
        Ok(false)
    }

    /// Connected sets of free vertices with minimum `root`, by the
    /// exclusive-neighbourhood extension scheme.
    fn enumerate_from(&mut self, i: usize, h: usize, root: usize, max_size: usize) -> Result<bool> {
        let mut set = vec![root];
        let mut touch = vec![0u32; self.n];
        for &w in &self.host[root] {
            touch[w] += 1;
        }
        let ext: Vec<usize> = self.host[root]
            .iter()
            .copied()
            .filter(|&w| w > root && self.owner[w] == FREE)
            .collect();
        self.extend(i, h, root, max_size, &mut set, ext, &mut touch)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &mut self,
        i: usize,
        h: usize,
        root: usize,
        max_size: usize,
        set: &mut Vec<usize>,
        mut ext: Vec<usize>,
        touch: &mut Vec<u32>,
    ) -> Result<bool> {
        self.tick()?;
        if self.try_set(i, h, set.clone())? {
            return Ok(true);
        }
        if set.len() == max_size {
            return Ok(false);
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in &self.host[w] {
                if u > root && self.owner[u] == FREE && touch[u] == 0 && !set.contains(&u) {
                    next.push(u);
                }
            }
            set.push(w);
            for &u in &self.host[w] {
                touch[u] += 1;
            }
            let found = self.extend(i, h, root, max_size, set, next, touch)?;
            for &u in &self.host[w] {
                touch[u] -= 1;
            }
            set.pop();
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn try_set(&mut self, i: usize, h: usize, set: Vec<usize>) -> Result<bool> {
        // adjacency to every placed pattern neighbour
        for &p in self.pattern.neighbors(h) {
            if self.sets[p].is_empty() {
                continue;
            }
            let adjacent = set.iter().any(|&x| self.host[x].iter().any(|&y| self.owner[y] == p));
            if !adjacent {
                return Ok(false);
            }
        }
        let root = set[0];
        for &v in &set {
            self.owner[v] = h;
        }
        self.sets[h] = set;
        self.roots[i] = root;
        let ok = self.feasible(i) && self.place(i + 1)?;
        if !ok {
            for v in std::mem::take(&mut self.sets[h]) {
                self.owner[v] = FREE;
            }
        }
        Ok(ok)
    }

    /// Necessary conditions for completing a model once positions `..=i` are placed.
    fn feasible(&self, i: usize) -> bool {
        let remaining = self.k - i - 1;
        // free components
        let mut comp = vec![usize::MAX; self.n];
        let mut ncomp = 0;
        for s in 0..self.n {
            if self.owner[s] != FREE || comp[s] != usize::MAX {
                continue;
            }
            comp[s] = ncomp;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.host[x] {
                    if self.owner[y] == FREE && comp[y] == usize::MAX {
                        comp[y] = ncomp;
                        queue.push_back(y);
                    }
                }
            }
            ncomp += 1;
        }
        if self.partition && ncomp > remaining {
            return false;
        }
        let placed = &self.order[..=i];
        let unplaced = &self.order[i + 1..];
        // each placed set needs a distinct free neighbour per unplaced pattern neighbour
        for &p in placed {
            let need = self
                .pattern
                .neighbors(p)
                .iter()
                .filter(|&&q| self.sets[q].is_empty())
                .count();
            if need == 0 {
                continue;
            }
            let mut seen = vec![false; self.n];
            let mut have = 0;
            for &x in &self.sets[p] {
                for &y in &self.host[x] {
                    if self.owner[y] == FREE && !seen[y] {
                        seen[y] = true;
                        have += 1;
                    }
                }
            }
            if have < need {
                return false;
            }
        }
        // each unplaced vertex needs one free component touching all its placed neighbours
        for &q in unplaced {
            let mut candidates: Option<Vec<bool>> = None;
            for &p in self.pattern.neighbors(q) {
                if self.sets[p].is_empty() {
                    continue;
                }
                let mut touched = vec![false; ncomp];
                for &x in &self.sets[p] {
                    for &y in &self.host[x] {
                        if self.owner[y] == FREE {
                            touched[comp[y]] = true;
                        }
                    }
                }
                candidates = Some(match candidates {
                    None => touched,
                    Some(c) => c.iter().zip(&touched).map(|(a, b)| *a && *b).collect(),
                });
            }
            if let Some(c) = candidates {
                if !c.iter().any(|&b| b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Highest degree first, then repeatedly the vertex with the most already
/// ordered neighbours (ties: higher degree, smaller label).
fn placement_order(h: &Graph) -> Vec<usize> {
    let k = h.n();
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k + 1];
    while order.len() < k {
        let next = (1..=k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (links, h.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Replaces the triangle `t` by a new vertex `n + 1` joined to its corners.
pub fn delta_wye(g: &Graph, t: [Vertex; 3]) -> Result<Graph> {
    if !g.is_clique(&t) {
        return invalid("delta-wye needs a triangle");
    }
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|e| !(t.contains(&e.u()) && t.contains(&e.v())))
        .map(|e| (e.u(), e.v()))
        .collect();
    edges.extend(t.iter().map(|&c| (c, n + 1)));
    Graph::from_edges(n + 1, edges)
}

/// Replaces the degree-3 vertex `v` by a triangle on its neighbours; `None`
/// if that would create a parallel edge.
pub fn wye_delta(g: &Graph, v: Vertex) -> Result<Option<Graph>> {
    if g.degree(v) != 3 {
        return invalid("wye-delta needs a degree-3 vertex");
    }
    let nb: Vec<Vertex> = g.neighbors(v).iter().copied().collect();
    if nb.iter().enumerate().any(|(i, &a)| nb[i + 1..].iter().any(|&b| g.has_edge(a, b))) {
        return Ok(None);
    }
    let mut out = g.delete_vertex(v);
    let shift = |x: Vertex| if x > v { x - 1 } else { x };
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            out.add_edge(shift(a), shift(b))?;
        }
    }
    Ok(Some(out))
}

/// The closure of `K_6` under ΔY and YΔ moves, up to isomorphism, sorted by
/// vertex count (stable in discovery order).
pub fn petersen_family() -> Result<Vec<Graph>> {
    static FAMILY: OnceLock<std::result::Result<Vec<Graph>, Error>> = OnceLock::new();
    FAMILY.get_or_init(compute_petersen_family).clone()
}

fn compute_petersen_family() -> Result<Vec<Graph>> {
    let mut family = vec![Graph::complete(6)];
    let mut i = 0;
    while i < family.len() {
        let g = family[i].clone();
        let mut moves = Vec::new();
        for a in g.vertices() {
            for &b in g.neighbors(a).range(a + 1..) {
                for &c in g.neighbors(b).range(b + 1..) {
                    if g.has_edge(a, c) {
                        moves.push(delta_wye(&g, [a, b, c])?);
                    }
                }
            }
        }
        for v in g.vertices() {
            if g.degree(v) == 3 {
                if let Some(x) = wye_delta(&g, v)? {
                    moves.push(x);
                }
            }
        }
        for m in moves {
            if !family.iter().any(|f| f.is_isomorphic(&m)) {
                family.push(m);
            }
        }
        i += 1;
    }
    if family.len() != 7 {
        return Err(Error::Internal(format!("ΔY/YΔ closure of K_6 has {} members", family.len())));
    }
    family.sort_by_key(Graph::n);
    Ok(family)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linklessness {
    pub linkless: bool,
    /// Index into [`petersen_family`] and a witness, when not linkless.
    pub obstruction: Option<(usize, MinorWitness)>,
}

/// Linkless iff no member of the Petersen family is a minor.
pub fn is_linkless(g: &Graph) -> Result<Linklessness> {
    for (i, p) in petersen_family()?.iter().enumerate() {
        if let Some(w) = has_minor(g, p)? {
            return Ok(Linklessness { linkless: false, obstruction: Some((i, w)) });
        }
    }
    Ok(Linklessness { linkless: true, obstruction: None })
}

/// `(r - 2) n - (r - 1)(r - 2) / 2`, for `3 <= r <= 7`.
pub fn mader_bound(r: usize, n: usize) -> Result<i64> {
    if !(3..=7).contains(&r) {
        return invalid(format!("the edge bound is stated for 3 <= r <= 7, got r = {r}"));
    }
    let r = r as i64;
    Ok((r - 2) * n as i64 - (r - 1) * (r - 2) / 2)
}

/// Whether `e(G)` respects the bound.
///
/// The bound is only meaningful for `n >= r - 2`: below that the complete
/// graph on `n` vertices is `K_r`-minor free yet exceeds it (e.g. `K_3` and
/// `r = 6`). For such small `n` the check falls back to `e <= n(n-1)/2`,
/// which every simple graph meets.
pub fn check_mader(g: &Graph, r: usize) -> Result<bool> {
    let bound = mader_bound(r, g.n())?;
    let e = g.edge_count() as i64;
    if g.n() + 2 < r {
        Ok(e <= (g.n() * g.n().saturating_sub(1) / 2) as i64)
    } else {
        Ok(e <= bound)
    }
}

/// Result of [`triangle_saturated_minor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturatedOutcome {
    Minor(MinorWitness),
    Split(CliqueSplit),
}

/// For a graph with an edge whose every edge lies in at least `r - 2`
/// triangles: a `K_r` minor (`r <= 5`), or for `r = 6` either a `K_6` minor
/// or a split along a clique of at most four vertices.
pub fn triangle_saturated_minor(g: &Graph, r: usize) -> Result<SaturatedOutcome> {
    if !(3..=6).contains(&r) {
        return invalid(format!("r must be in 3..=6, got {r}"));
    }
    if g.edge_count() == 0 {
        return invalid("graph has no edge");
    }
    if let Some(e) = g.edges().find(|&e| g.triangles_on(e) < r - 2) {
        return invalid(format!("{e} lies in fewer than {} triangles", r - 2));
    }
    let kr = Graph::complete(r);
    if r == 6 {
        let split = if g.is_connected() {
            g.find_clique_separator(4.min(g.n()))?
        } else {
            g.split_at(&[])
        };
        if let Some(s) = split {
            return Ok(SaturatedOutcome::Split(s));
        }
    }
    match has_minor(g, &kr)? {
        Some(w) => Ok(SaturatedOutcome::Minor(w)),
        None => Err(Error::Internal(format!(
            "triangle-saturated graph without K_{r} minor{}",
            if r == 6 { " or clique separator" } else { "" }
        ))),
    }
}

/// Edges `{a, b}` of `h` such that no host edge joins the branch sets; empty
/// for a valid witness. Handy for diagnostics.
pub fn unrealized_edges(g: &Graph, w: &MinorWitness) -> Vec<Edge> {
    let mut owner = vec![0usize; g.n() + 1];
    for (i, s) in w.branch_sets.iter().enumerate() {
        for &v in s {
            if v <= g.n() {
                owner[v] = i + 1;
            }
        }
    }
    w.pattern
        .edges()
        .filter(|e| {
            !w.branch_sets[e.u() - 1]
                .iter()
                .any(|&x| g.neighbors(x).iter().any(|&y| owner[y] == e.v()))
        })
        .collect()
}
