//! Simple undirected graphs on the vertex set `1..=n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};

pub type Vertex = usize;

/// An unordered pair `{u, v}` stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Panics if `a == b`.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> Vertex {
        self.0
    }

    pub fn v(&self) -> Vertex {
        self.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((a, b): (Vertex, Vertex)) -> Self {
        Edge::new(a, b)
    }
}

/// A simple graph. Equality is label-sensitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n], m: 0 }
    }

    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<(Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for e in edges {
            let (a, b) = e.into();
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.insert(u, v);
            }
        }
        g
    }

    /// Adds `{a, b}`; re-adding an existing edge is a no-op.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        if a == b {
            return invalid(format!("loop at vertex {a}"));
        }
        let n = self.n();
        if a == 0 || b == 0 || a > n || b > n {
            return invalid(format!("edge {{{a},{b}}} has an endpoint outside 1..={n}"));
        }
        self.insert(a, b);
        Ok(())
    }

    fn insert(&mut self, a: Vertex, b: Vertex) {
        if self.adj[a - 1].insert(b) {
            self.adj[b - 1].insert(a);
            self.m += 1;
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, nb)| {
            let u = i + 1;
            nb.range(u + 1..).map(move |&v| Edge(u, v))
        })
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && a >= 1 && a <= self.n() && self.adj[a - 1].contains(&b)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    fn require_edge(&self, e: Edge) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            invalid(format!("{e} is not an edge of the graph"))
        }
    }

    /// Vertices adjacent to both endpoints of `e`.
    pub fn common_neighbors(&self, e: Edge) -> Result<BTreeSet<Vertex>> {
        self.require_edge(e)?;
        Ok(self.adj[e.0 - 1]
            .intersection(&self.adj[e.1 - 1])
            .copied()
            .collect())
    }

    /// Number of triangles through `e`; `e` must be an edge.
    pub(crate) fn triangles_on(&self, e: Edge) -> usize {
        self.adj[e.0 - 1].intersection(&self.adj[e.1 - 1]).count()
    }

    /// Contracts `e = {u < v}`: `v` is merged into `u` and labels above `v`
    /// shift down by one.
    pub fn contract_edge(&self, e: Edge) -> Result<(Graph, ContractionRecord)> {
        self.require_edge(e)?;
        let record = ContractionRecord {
            contracted_edge: e,
            common_neighbor_count: self.triangles_on(e),
        };
        Ok((record.apply_unchecked(self), record))
    }

    /// Subgraph induced on `vs`, relabelled `1..=vs.len()` in increasing order of `vs`.
    pub fn induced_subgraph(&self, vs: &[Vertex]) -> Graph {
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![0usize; self.n() + 1];
        for (i, &v) in sorted.iter().enumerate() {
            index[v] = i + 1;
        }
        let mut g = Graph::new(sorted.len());
        for &v in &sorted {
            for &w in self.neighbors(v) {
                if w > v && index[w] != 0 {
                    g.insert(index[v], index[w]);
                }
            }
        }
        g
    }

    pub fn delete_vertex(&self, v: Vertex) -> Graph {
        let keep: Vec<Vertex> = self.vertices().filter(|&w| w != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Applies a relabelling `perm[v - 1] = new label of v`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        if perm.len() != n
            || perm.iter().any(|&p| {
                p == 0 || p > n || std::mem::replace(&mut seen[p], true)
            })
        {
            return invalid("relabelling is not a permutation of 1..=n");
        }
        let mut g = Graph::new(n);
        for e in self.edges() {
            g.insert(perm[e.0 - 1], perm[e.1 - 1]);
        }
        Ok(g)
    }

    /// Graph with a new vertex `n + 1` joined to every vertex.
    pub fn cone(&self) -> Graph {
        let n = self.n();
        let mut g = self.clone();
        g.adj.push(BTreeSet::new());
        for v in 1..=n {
            g.insert(v, n + 1);
        }
        g
    }

    /// Connected components restricted to vertices not in `removed`, each
    /// sorted, listed by smallest vertex.
    fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = removed.to_vec();
        let mut comps = Vec::new();
        for s in 1..=n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in self.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&vec![false; self.n() + 1])
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff every `{a', b'}` dominated componentwise by an edge `{a, b}` is an edge.
    pub fn is_shifted(&self) -> bool {
        self.edges().all(|e| {
            (1..=e.0).all(|a| (a + 1..=e.1).all(|b| self.has_edge(a, b)))
        })
    }

    /// Splits along `clique` when removing it disconnects the graph.
    ///
    /// The first side is the clique together with the component holding the
    /// smallest non-clique vertex; the second side is the clique with every
    /// other component. Returns `None` if `clique` is not a clique or does
    /// not separate.
    pub fn split_at(&self, clique: &[Vertex]) -> Option<CliqueSplit> {
        let n = self.n();
        if clique.iter().any(|&c| c == 0 || c > n) || !self.is_clique(clique) {
            return None;
        }
        let mut removed = vec![false; n + 1];
        removed[0] = true;
        for &c in clique {
            removed[c] = true;
        }
        let comps = self.components_avoiding(&removed);
        if comps.len() < 2 {
            return None;
        }
        let mut c = clique.to_vec();
        c.sort_unstable();
        c.dedup();
        let mut side1: Vec<Vertex> = c.iter().chain(&comps[0]).copied().collect();
        let mut side2: Vec<Vertex> = c.iter().chain(comps[1..].iter().flatten()).copied().collect();
        side1.sort_unstable();
        side2.sort_unstable();
        Some(CliqueSplit {
            g1: self.induced_subgraph(&side1),
            g2: self.induced_subgraph(&side2),
            clique: c,
            side1,
            side2,
        })
    }

    /// Smallest separating clique with at most `kmax` vertices.
    ///
    /// Cliques are tried by increasing size, lexicographically within a size.
    pub fn find_clique_separator(&self, kmax: usize) -> Result<Option<CliqueSplit>> {
        if !self.is_connected() {
            return invalid("clique separator search needs a connected graph");
        }
        if kmax > self.n() {
            return invalid(format!("kmax = {kmax} exceeds n = {}", self.n()));
        }
        for size in 1..=kmax {
            let mut found = None;
            self.for_each_clique(size, &mut |c| {
                found = self.split_at(c);
                found.is_some()
            });
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Lexicographically least clique on `size` vertices.
    pub fn find_clique(&self, size: usize) -> Option<Vec<Vertex>> {
        if size > self.n() {
            return None;
        }
        let mut found = None;
        self.for_each_clique(size, &mut |c| {
            found = Some(c.to_vec());
            true
        });
        found
    }

    /// Visits `size`-cliques in lexicographic order until `visit` returns true.
    fn for_each_clique(&self, size: usize, visit: &mut dyn FnMut(&[Vertex]) -> bool) {
        fn rec(
            g: &Graph,
            size: usize,
            current: &mut Vec<Vertex>,
            candidates: &[Vertex],
            visit: &mut dyn FnMut(&[Vertex]) -> bool,
        ) -> bool {
            if current.len() == size {
                return visit(current);
            }
            for (i, &c) in candidates.iter().enumerate() {
                if candidates.len() - i < size - current.len() {
                    break;
                }
                let next: Vec<Vertex> = candidates[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| g.has_edge(c, w))
                    .collect();
                current.push(c);
                let stop = rec(g, size, current, &next, visit);
                current.pop();
                if stop {
                    return true;
                }
            }
            false
        }
        let all: Vec<Vertex> = self.vertices().collect();
        rec(self, size, &mut Vec::new(), &all, visit);
    }

    /// A relabelling `perm` with `self.relabel(perm) == *other`, by
    /// backtracking with degree filtering. Exponential; meant for n ≤ 10.
    pub fn isomorphism(&self, other: &Graph) -> Option<Vec<Vertex>> {
        let n = self.n();
        if n != other.n() || self.m != other.m {
            return None;
        }
        let mut da: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = other.vertices().map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return None;
        }
        let mut order: Vec<Vertex> = self.vertices().collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut image = vec![0usize; n + 1];
        let mut used = vec![false; n + 1];

        fn rec(
            a: &Graph,
            b: &Graph,
            order: &[Vertex],
            k: usize,
            image: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let v = order[k];
            for w in b.vertices() {
                if used[w] || b.degree(w) != a.degree(v) {
                    continue;
                }
                let consistent = order[..k]
                    .iter()
                    .all(|&x| a.has_edge(v, x) == b.has_edge(w, image[x]));
                if consistent {
                    image[v] = w;
                    used[w] = true;
                    if rec(a, b, order, k + 1, image, used) {
                        return true;
                    }
                    used[w] = false;
                }
            }
            false
        }
        rec(self, other, &order, 0, &mut image, &mut used).then(|| image[1..].to_vec())
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Text edge-list: `n m`, then one `u v` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m);
        for e in self.edges() {
            out.push_str(&format!("{} {}\n", e.0, e.1));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let mut it = l.split_whitespace();
            let mut next = || -> Result<usize> {
                it.next()
                    .ok_or_else(|| Error::Parse { line, msg: "expected two integers".into() })?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse { line, msg: e.to_string() })
            };
            let a = next()?;
            let b = next()?;
            if it.next().is_some() {
                return Err(Error::Parse { line, msg: "trailing tokens".into() });
            }
            Ok((a, b))
        };
        let (hline, header) = lines
            .next()
            .ok_or(Error::Parse { line: 0, msg: "missing `n m` header".into() })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut g = Graph::new(n);
        let mut count = 0;
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            if !(1 <= u && u < v && v <= n) {
                return Err(Error::Parse {
                    line,
                    msg: format!("edge `{u} {v}` must satisfy 1 <= u < v <= {n}"),
                });
            }
            if g.has_edge(u, v) {
                return Err(Error::Parse { line, msg: format!("duplicate edge `{u} {v}`") });
            }
            g.insert(u, v);
            count += 1;
        }
        if count != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header announces {m} edges but {count} were listed"),
            });
        }
        Ok(g)
    }

    /// Hex SHA-256 prefix of the edge-list text.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_edge_list().as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// How a contraction relabels vertices, with enough data to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionRecord {
    pub contracted_edge: Edge,
    pub common_neighbor_count: usize,
}

impl ContractionRecord {
    /// The smaller endpoint keeps its label.
    pub fn surviving_label(&self) -> Vertex {
        self.contracted_edge.0
    }

    pub fn removed_label(&self) -> Vertex {
        self.contracted_edge.1
    }

    /// New label of `old`.
    pub fn map(&self, old: Vertex) -> Vertex {
        let (u, v) = (self.contracted_edge.0, self.contracted_edge.1);
        match old.cmp(&v) {
            std::cmp::Ordering::Less => old,
            std::cmp::Ordering::Equal => u,
            std::cmp::Ordering::Greater => old - 1,
        }
    }

    /// Old labels mapping to `new`.
    pub fn preimage(&self, new: Vertex) -> Vec<Vertex> {
        let (u, v) = (self.contracted_edge.0, self.contracted_edge.1);
        if new == u {
            vec![u, v]
        } else if new < v {
            vec![new]
        } else {
            vec![new + 1]
        }
    }

    /// `relabeling()[old - 1]` is the new label of `old`.
    pub fn relabeling(&self, n: usize) -> Vec<Vertex> {
        (1..=n).map(|v| self.map(v)).collect()
    }

    fn apply_unchecked(&self, g: &Graph) -> Graph {
        let mut out = Graph::new(g.n() - 1);
        for e in g.edges() {
            if e != self.contracted_edge {
                out.insert(self.map(e.0), self.map(e.1));
            }
        }
        out
    }

    /// Replays the record on `g`, checking the edge and its triangle count.
    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        g.require_edge(self.contracted_edge)?;
        let t = g.triangles_on(self.contracted_edge);
        if t != self.common_neighbor_count {
            return invalid(format!(
                "{} lies in {t} triangles, record says {}",
                self.contracted_edge, self.common_neighbor_count
            ));
        }
        Ok(self.apply_unchecked(g))
    }
}

/// A graph written as the union of two induced subgraphs meeting in a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSplit {
    pub clique: Vec<Vertex>,
    /// Vertices of the first side, sorted; `g1` relabels them `1..`.
    pub side1: Vec<Vertex>,
    pub side2: Vec<Vertex>,
    pub g1: Graph,
    pub g2: Graph,
}
