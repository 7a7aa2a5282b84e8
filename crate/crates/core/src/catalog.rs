//! Named graphs and generators.
//!
//! Names are case-insensitive; `_`, `{` and `}` are ignored, so `K_{3,3}`
//! and `k3,3` are the same. Recognized forms:
//!
//! - `K{n}`, `K{a},{b},...` (complete multipartite), `K7-`, `K4,4-e`
//! - `C{n}`, `P{n}` (cycle, path on `n` vertices), `W{k}` (`k`-cycle plus hub)
//! - `octahedron`, `icosahedron`, `petersen`, `G7`, `G8`, `G9`
//! - `stacked:N:SEED` (random stacked sphere), `figure1_torus`
//! - `cone:NAME` (apex joined to every vertex of `NAME`)

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::minors::{has_minor, is_linkless, petersen_family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Planar,
    Linkless,
    Torus,
    Family,
    Counterexample,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Planar => "planar",
            Tag::Linkless => "linkless",
            Tag::Torus => "torus",
            Tag::Family => "family",
            Tag::Counterexample => "counterexample",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
    pub tags: BTreeSet<Tag>,
    pub provenance: String,
    /// Triangular faces, for entries given as surface triangulations.
    pub faces: Option<Vec<[Vertex; 3]>>,
}

impl CatalogEntry {
    fn new(name: &str, graph: Graph, tags: &[Tag], provenance: &str) -> Self {
        CatalogEntry {
            name: name.into(),
            graph,
            tags: tags.iter().copied().collect(),
            provenance: provenance.into(),
            faces: None,
        }
    }

    pub fn has_tag(&self, t: Tag) -> bool {
        self.tags.contains(&t)
    }

    /// Checks every tag claim; the error names the first failing one.
    pub fn validate(&self) -> Result<()> {
        let g = &self.graph;
        let fail = |what: &str| Err(Error::Internal(format!("{}: {what}", self.name)));
        if self.has_tag(Tag::Planar) {
            if g.n() >= 3 && g.edge_count() > 3 * g.n() - 6 {
                return fail("planar entry has more than 3n - 6 edges");
            }
            if has_minor(g, &Graph::complete(5))?.is_some() {
                return fail("planar entry has a K5 minor");
            }
            if has_minor(g, &complete_multipartite(&[3, 3]))?.is_some() {
                return fail("planar entry has a K3,3 minor");
            }
        }
        if self.has_tag(Tag::Linkless) && !is_linkless(g)?.linkless {
            return fail("linkless entry has a Petersen-family minor");
        }
        if self.has_tag(Tag::Torus) && g.n() >= 3 && g.edge_count() > 3 * g.n() {
            return fail("torus entry has more than 3n edges");
        }
        if self.has_tag(Tag::Family) && !petersen_family()?.iter().any(|f| f.is_isomorphic(g)) {
            return fail("family entry is not in the Petersen family");
        }
        if let Some(faces) = &self.faces {
            let chi = euler_characteristic(g, faces)?;
            if self.has_tag(Tag::Torus) && chi != 0 {
                return fail("torus triangulation has Euler characteristic other than 0");
            }
            if self.has_tag(Tag::Planar) && chi != 2 {
                return fail("sphere triangulation has Euler characteristic other than 2");
            }
        }
        Ok(())
    }
}

/// Checks that `faces` triangulate a closed surface with 1-skeleton `g`
/// (every face is a triangle of `g`, every edge lies in exactly two faces,
/// every vertex link is a single cycle) and returns `v - e + f`.
pub fn euler_characteristic(g: &Graph, faces: &[[Vertex; 3]]) -> Result<i64> {
    let mut count = std::collections::BTreeMap::new();
    for f in faces {
        if !g.is_clique(f) || f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return invalid(format!("face {f:?} is not a triangle of the graph"));
        }
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            *count.entry(Edge::new(a, b)).or_insert(0) += 1;
        }
    }
    for e in g.edges() {
        if count.get(&e) != Some(&2) {
            return invalid(format!("edge {e} lies in {} faces", count.get(&e).unwrap_or(&0)));
        }
    }
    for v in g.vertices() {
        // link edges: the opposite side of each face at v
        let link: Vec<(Vertex, Vertex)> = faces
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| {
                let o: Vec<Vertex> = f.iter().copied().filter(|&x| x != v).collect();
                (o[0], o[1])
            })
            .collect();
        let link_graph = Graph::from_edges(g.n(), link.iter().copied())?;
        let used: Vec<Vertex> = g.vertices().filter(|&x| link_graph.degree(x) > 0).collect();
        let cycle = used.len() == link.len()
            && used.len() >= 3
            && used.iter().all(|&x| link_graph.degree(x) == 2)
            && link_graph.induced_subgraph(&used).is_connected();
        if !cycle {
            return invalid(format!("the link of vertex {v} is not a cycle"));
        }
    }
    Ok(g.n() as i64 - g.edge_count() as i64 + faces.len() as i64)
}

fn from_pairs(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).expect("catalog edge list is valid")
}

/// Complete multipartite graph; part `i` takes the next `parts[i]` labels.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    let mut g = Graph::new(n);
    for a in 1..=n {
        for b in a + 1..=n {
            if part_of[a - 1] != part_of[b - 1] {
                g.add_edge(a, b).expect("valid edge");
            }
        }
    }
    g
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return invalid("a cycle needs at least 3 vertices");
    }
    Graph::from_edges(n, (1..=n).map(|i| (i, i % n + 1)))
}

pub fn path(n: usize) -> Graph {
    from_pairs(n, &(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>())
}

/// `k`-cycle on `1..=k` and hub `k + 1`.
pub fn wheel(k: usize) -> Result<Graph> {
    let mut g = Graph::from_edges(k + 1, cycle(k)?.edges().map(|e| (e.u(), e.v())))?;
    for i in 1..=k {
        g.add_edge(i, k + 1)?;
    }
    Ok(g)
}

pub fn octahedron() -> Graph {
    complete_multipartite(&[2, 2, 2])
}

/// Vertex 1 on top, rings 2..=6 and 7..=11, vertex 12 at the bottom.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        let (up, up_next) = (2 + i, 2 + (i + 1) % 5);
        let (low, low_next) = (7 + i, 7 + (i + 1) % 5);
        edges.extend([(1, up), (up, up_next), (low, low_next), (low, 12), (up, low), (up, low_next)]);
    }
    from_pairs(12, &edges)
}

pub fn petersen_graph() -> Graph {
    from_pairs(
        10,
        &[(1, 6), (1, 7), (1, 8), (2, 5), (2, 7), (2, 9), (3, 4), (3, 7), (3, 10), (4, 8), (4, 9), (5, 8), (5, 10), (6, 9), (6, 10)],
    )
}

/// `K_7` with the edge `{6, 7}` removed.
pub fn k7_minus() -> Graph {
    let edges: Vec<(Vertex, Vertex)> = Graph::complete(7)
        .edges()
        .filter(|&e| e != Edge::new(6, 7))
        .map(|e| (e.u(), e.v()))
        .collect();
    from_pairs(7, &edges)
}

/// The seven Petersen-family graphs with fixed labellings, in the order
/// `K6, G7, K3,3,1, G8, K4,4-e, G9, petersen`.
pub fn petersen_family_named() -> Vec<(&'static str, Graph)> {
    vec![
        ("K6", Graph::complete(6)),
        (
            "G7",
            from_pairs(7, &[(1, 4), (1, 5), (1, 6), (1, 7), (2, 4), (2, 5), (2, 6), (2, 7), (3, 4), (3, 5), (3, 6), (3, 7), (4, 5), (4, 6), (5, 6)]),
        ),
        ("K3,3,1", complete_multipartite(&[3, 3, 1])),
        (
            "G8",
            from_pairs(8, &[(1, 6), (1, 7), (1, 8), (2, 4), (2, 5), (2, 6), (2, 7), (3, 4), (3, 5), (3, 6), (3, 7), (4, 6), (4, 8), (5, 6), (5, 8)]),
        ),
        (
            "K4,4-e",
            from_pairs(8, &[(1, 4), (1, 5), (1, 6), (1, 7), (2, 4), (2, 5), (2, 6), (2, 7), (3, 4), (3, 5), (3, 6), (3, 7), (4, 8), (5, 8), (6, 8)]),
        ),
        (
            "G9",
            from_pairs(9, &[(1, 6), (1, 7), (1, 8), (2, 5), (2, 7), (2, 9), (3, 4), (3, 5), (3, 6), (3, 7), (4, 8), (4, 9), (5, 6), (5, 8), (6, 9)]),
        ),
        ("petersen", petersen_graph()),
    ]
}

/// The faces of the linkless torus triangulation on ten vertices: `K_5` on
/// `{2, 3, 4, 5, 10}` with each of 1, 6, 7, 8, 9 coning a 4-cycle.
pub fn figure1_torus_faces() -> Vec<[Vertex; 3]> {
    vec![
        [1, 2, 4], [1, 3, 4], [1, 2, 5], [1, 3, 5],
        [2, 4, 6], [4, 5, 6], [5, 6, 10], [2, 6, 10],
        [2, 3, 7], [3, 4, 7], [4, 7, 10], [2, 7, 10],
        [4, 8, 10], [4, 5, 8], [3, 5, 8], [3, 8, 10],
        [5, 9, 10], [2, 5, 9], [2, 3, 9], [3, 9, 10],
    ]
}

pub fn figure1_torus() -> Graph {
    let mut g = Graph::new(10);
    for f in figure1_torus_faces() {
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            if !g.has_edge(a, b) {
                g.add_edge(a, b).expect("valid edge");
            }
        }
    }
    g
}

/// Stacked sphere: start from `K_4` and insert `n - 4` vertices, each into a
/// uniformly chosen face of the current triangulation.
pub fn random_planar_triangulation(n: usize, seed: u64) -> Result<Graph> {
    Ok(stacked_sphere(n, seed)?.0)
}

/// As [`random_planar_triangulation`], also returning the faces.
pub fn stacked_sphere(n: usize, seed: u64) -> Result<(Graph, Vec<[Vertex; 3]>)> {
    if n < 4 {
        return invalid("a stacked sphere has at least 4 vertices");
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut g = Graph::complete(4);
    let mut faces = vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];
    for v in 5..=n {
        let i = rng.random_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        let mut next = Graph::new(v);
        for e in g.edges() {
            next.add_edge(e.u(), e.v())?;
        }
        for x in [a, b, c] {
            next.add_edge(x, v)?;
        }
        g = next;
        faces.extend([[a, b, v], [a, c, v], [b, c, v]]);
    }
    Ok((g, faces))
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '_' | '{' | '}' | ' '))
        .collect::<String>()
        .to_ascii_lowercase()
}

fn parse_usize(s: &str, name: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::InvalidInput(format!("unknown catalog graph {name:?}")))
}

/// Resolves a catalog name to a graph.
pub fn get(name: &str) -> Result<Graph> {
    Ok(entry(name)?.graph)
}

/// Resolves a name, with tags and provenance when it is a listed entry.
pub fn entry(name: &str) -> Result<CatalogEntry> {
    let key = normalize(name);
    if let Some(e) = list().into_iter().find(|e| normalize(&e.name) == key) {
        return Ok(e);
    }
    let unknown = || Error::InvalidInput(format!("unknown catalog graph {name:?}"));
    let graph = if let Some(rest) = key.strip_prefix("cone:") {
        return Ok(CatalogEntry::new(&format!("cone:{rest}"), get(rest)?.cone(), &[], "apex over a catalog graph"));
    } else if let Some(rest) = key.strip_prefix("stacked:") {
        let (n, seed) = rest.split_once(':').ok_or_else(unknown)?;
        let (g, faces) = stacked_sphere(parse_usize(n, name)?, parse_usize(seed, name)? as u64)?;
        let mut e = CatalogEntry::new(&key, g, &[Tag::Planar, Tag::Linkless], "random stacked sphere");
        e.faces = Some(faces);
        return Ok(e);
    } else if let Some(rest) = key.strip_prefix('k') {
        let parts = rest.split(',').map(|p| parse_usize(p, name)).collect::<Result<Vec<_>>>()?;
        if parts.iter().any(|&p| p == 0) {
            return Err(unknown());
        }
        if parts.len() == 1 {
            Graph::complete(parts[0])
        } else {
            complete_multipartite(&parts)
        }
    } else if let Some(rest) = key.strip_prefix('c') {
        cycle(parse_usize(rest, name)?)?
    } else if let Some(rest) = key.strip_prefix('p') {
        path(parse_usize(rest, name)?)
    } else if let Some(rest) = key.strip_prefix('w') {
        wheel(parse_usize(rest, name)?)?
    } else {
        return Err(unknown());
    };
    Ok(CatalogEntry::new(&key, graph, &[], "generated from its name"))
}

/// The listed entries, in a fixed order.
pub fn list() -> Vec<CatalogEntry> {
    use Tag::*;
    let mut out = Vec::new();
    for n in 1..=10 {
        let tags: &[Tag] = match n {
            1..=4 => &[Planar, Linkless],
            5 => &[Linkless, Torus],
            6 => &[Torus, Family],
            7 => &[Torus],
            _ => &[],
        };
        out.push(CatalogEntry::new(&format!("K{n}"), Graph::complete(n), tags, "complete graph"));
    }
    out.push(CatalogEntry::new("K3,3", complete_multipartite(&[3, 3]), &[Linkless, Torus], "complete bipartite graph"));
    out.push(CatalogEntry::new("K4,4", complete_multipartite(&[4, 4]), &[Torus], "complete bipartite graph"));
    out.push(CatalogEntry::new(
        "K2,2,2,2,2",
        complete_multipartite(&[2, 2, 2, 2, 2]),
        &[Counterexample],
        "no K8 minor, yet {7,8} lies in its symmetric shifting",
    ));
    out.push(CatalogEntry::new("K7-", k7_minus(), &[], "K7 minus one edge"));
    for (name, g) in petersen_family_named().into_iter().skip(1) {
        out.push(CatalogEntry::new(name, g, &[Family], "Petersen family"));
    }
    out.push(CatalogEntry::new("octahedron", octahedron(), &[Planar, Linkless], "K2,2,2"));
    out.push(CatalogEntry::new("icosahedron", icosahedron(), &[Planar, Linkless], "icosahedron"));
    for k in 3..=8 {
        out.push(CatalogEntry::new(&format!("W{k}"), wheel(k).expect("k >= 3"), &[Planar, Linkless], "wheel"));
    }
    let mut torus = CatalogEntry::new("figure1_torus", figure1_torus(), &[Linkless, Torus], "linkless 10-vertex torus triangulation");
    torus.faces = Some(figure1_torus_faces());
    out.push(torus);
    out
}
