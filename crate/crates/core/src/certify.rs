//! Certifying `K_r`-minor-freeness implies generic `(r-2)`-stress freeness.
//!
//! [`certify`] repeatedly contracts the lexicographically least edge lying in
//! at most `r - 3` triangles. When no such edge is left, either the graph is
//! edgeless (a leaf), or every edge lies in at least
//! `r - 2` triangles. In the latter case a `K_r` minor exists (for `r = 6`,
//! possibly after splitting along a clique of at most four vertices); it is
//! lifted back to the input graph through the recorded contractions.
//!
//! A [`Certificate`] records the contractions, splits and leaves. Replaying it
//! re-checks every triangle count, split and leaf claim, and can additionally
//! confirm stress freeness of the leaves numerically.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::field::PrimeField;
use crate::graph::{Edge, Graph, Vertex};
use crate::minors::{check_minor_witness, has_minor, triangle_saturated_minor, MinorWitness, SaturatedOutcome};
use crate::rigidity::analyze_rigidity_with_seeds;
use crate::{trial_seeds, DEFAULT_SEED, DEFAULT_TRIALS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum CertNode {
    Contraction { edge: Edge, triangles: usize, child: Box<CertNode> },
    /// Split along `clique`; `first` certifies the side holding the smallest
    /// non-clique vertex, as computed by [`Graph::split_at`].
    CliqueSum { clique: Vec<Vertex>, first: Box<CertNode>, second: Box<CertNode> },
    Edgeless,
    SmallClique { m: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub r: usize,
    pub n: usize,
    /// Seeds for the numeric leaf checks.
    pub seeds: Vec<u64>,
    /// [`Graph::digest`] of the certified graph.
    pub digest: String,
    pub root: CertNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifyOutcome {
    Certificate(Certificate),
    Witness(MinorWitness),
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertifyOutcome::Certificate(c) => Some(c),
            CertifyOutcome::Witness(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&MinorWitness> {
        match self {
            CertifyOutcome::Witness(w) => Some(w),
            CertifyOutcome::Certificate(_) => None,
        }
    }
}

/// Certificate of generic `(r-2)`-stress freeness for `K_r`-minor-free
/// graphs, or a `K_r` minor witness.
///
/// The contraction procedure of [`contraction_certificate`] runs first. It
/// can end edgeless on a graph that still has a `K_r` minor (for instance
/// `K_4` with one subdivided edge and `r = 4`; such graphs are stress free
/// too). A certificate is therefore only returned after a direct minor search
/// finds no `K_r`, so the outcome is a witness exactly when `G` has a `K_r`
/// minor.
pub fn certify(g: &Graph, r: usize) -> Result<CertifyOutcome> {
    certify_with_seeds(g, r, &trial_seeds(DEFAULT_SEED, DEFAULT_TRIALS))
}

/// As [`certify`], storing `seeds` in the certificate for numeric replay.
pub fn certify_with_seeds(g: &Graph, r: usize, seeds: &[u64]) -> Result<CertifyOutcome> {
    let outcome = contraction_certificate(g, r, seeds)?;
    if outcome.certificate().is_some() {
        let kr = Graph::complete(r);
        if let Some(w) = has_minor(g, &kr)? {
            return Ok(CertifyOutcome::Witness(w));
        }
    }
    Ok(outcome)
}

/// The contraction procedure alone: a certificate whenever it ends
/// edgeless, otherwise the lifted `K_r` minor.
pub fn contraction_certificate(g: &Graph, r: usize, seeds: &[u64]) -> Result<CertifyOutcome> {
    if !(2..=6).contains(&r) {
        return invalid(format!("r must be in 2..=6, got {r}"));
    }
    let kr = Graph::complete(r);
    let outcome = if r == 2 {
        match g.edges().next() {
            Some(e) => Built::Minor(vec![vec![e.u()], vec![e.v()]]),
            None => Built::Node(CertNode::Edgeless),
        }
    } else {
        build(g, r)?
    };
    Ok(match outcome {
        Built::Node(root) => CertifyOutcome::Certificate(Certificate {
            r,
            n: g.n(),
            seeds: seeds.to_vec(),
            digest: g.digest(),
            root,
        }),
        Built::Minor(branch_sets) => {
            let w = MinorWitness { host_n: g.n(), pattern: kr.clone(), branch_sets };
            check_minor_witness(g, &kr, &w).map_err(Error::Internal)?;
            CertifyOutcome::Witness(w)
        }
    })
}

enum Built {
    Node(CertNode),
    Minor(Vec<Vec<Vertex>>),
}

fn build(g: &Graph, r: usize) -> Result<Built> {
    let kr = Graph::complete(r);
    let mut chain: Vec<(Graph, Edge, usize)> = Vec::new();
    let mut cur = g.clone();
    let end = loop {
        if cur.edge_count() == 0 {
            break Built::Node(CertNode::Edgeless);
        }
        let eligible = cur.edges().find(|&e| cur.triangles_on(e) + 3 <= r);
        if let Some(e) = eligible {
            let (next, rec) = cur.contract_edge(e)?;
            chain.push((std::mem::replace(&mut cur, next), e, rec.common_neighbor_count));
            continue;
        }
        break match triangle_saturated_minor(&cur, r)? {
            SaturatedOutcome::Minor(w) => Built::Minor(w.branch_sets),
            SaturatedOutcome::Split(s) => {
                let first = build(&s.g1, r)?;
                let second = build(&s.g2, r)?;
                match (first, second) {
                    (Built::Node(a), Built::Node(b)) => Built::Node(CertNode::CliqueSum {
                        clique: s.clique,
                        first: Box::new(a),
                        second: Box::new(b),
                    }),
                    (Built::Minor(sets), _) => Built::Minor(relabel_sets(&sets, &s.side1)),
                    (_, Built::Minor(sets)) => Built::Minor(relabel_sets(&sets, &s.side2)),
                }
            }
        };
    };
    match end {
        Built::Node(mut node) => {
            for (_, edge, triangles) in chain.into_iter().rev() {
                node = CertNode::Contraction { edge, triangles, child: Box::new(node) };
            }
            Ok(Built::Node(node))
        }
        Built::Minor(mut sets) => {
            if let Err(msg) = check_minor_witness(&cur, &kr, &witness(&cur, &kr, &sets)) {
                return Err(Error::Internal(format!("minor in contracted graph: {msg}")));
            }
            for (before, edge, triangles) in chain.into_iter().rev() {
                let rec = crate::graph::ContractionRecord { contracted_edge: edge, common_neighbor_count: triangles };
                sets = sets
                    .iter()
                    .map(|b| {
                        let mut lifted: Vec<Vertex> = b.iter().flat_map(|&v| rec.preimage(v)).collect();
                        lifted.sort_unstable();
                        lifted
                    })
                    .collect();
                if let Err(msg) = check_minor_witness(&before, &kr, &witness(&before, &kr, &sets)) {
                    return Err(Error::Internal(format!("lifting through {edge}: {msg}")));
                }
            }
            Ok(Built::Minor(sets))
        }
    }
}

fn witness(g: &Graph, kr: &Graph, sets: &[Vec<Vertex>]) -> MinorWitness {
    MinorWitness { host_n: g.n(), pattern: kr.clone(), branch_sets: sets.to_vec() }
}

fn relabel_sets(sets: &[Vec<Vertex>], side: &[Vertex]) -> Vec<Vec<Vertex>> {
    sets.iter()
        .map(|b| b.iter().map(|&v| side[v - 1]).collect())
        .collect()
}

/// How much checking [`replay_certificate`] does beyond the structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verify {
    Structural,
    /// Also confirm generic `(r-2)`-stress freeness at every leaf.
    Leaves,
    /// Also confirm it at every internal node.
    Deep,
}

/// Where and why a replay failed. The path lists the node kinds from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayFailure {
    pub path: Vec<String>,
    pub reason: String,
}

impl fmt::Display for ReplayFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "at root: {}", self.reason)
        } else {
            write!(f, "at {}: {}", self.path.join(" / "), self.reason)
        }
    }
}

impl std::error::Error for ReplayFailure {}

pub fn replay_certificate(g: &Graph, c: &Certificate, verify: Verify) -> std::result::Result<(), ReplayFailure> {
    let fail = |reason: String| ReplayFailure { path: Vec::new(), reason };
    if !(2..=6).contains(&c.r) {
        return Err(fail(format!("r = {} outside 2..=6", c.r)));
    }
    if c.n != g.n() {
        return Err(fail(format!("certificate is for {} vertices, graph has {}", c.n, g.n())));
    }
    if c.digest != g.digest() {
        return Err(fail(format!("digest {} does not match graph digest {}", c.digest, g.digest())));
    }
    if verify != Verify::Structural && c.r > 2 && c.seeds.is_empty() {
        return Err(fail("numeric verification needs at least one seed".into()));
    }
    let mut path = Vec::new();
    replay_node(g, c, &c.root, verify, &mut path).map_err(|reason| ReplayFailure { path, reason })
}

impl Certificate {
    pub fn replays(&self, g: &Graph, verify: Verify) -> bool {
        replay_certificate(g, self, verify).is_ok()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn stress_free(g: &Graph, c: &Certificate) -> std::result::Result<(), String> {
    if c.r == 2 {
        return Ok(());
    }
    let report = analyze_rigidity_with_seeds(g, c.r - 2, &c.seeds, PrimeField::DEFAULT).map_err(|e| e.to_string())?;
    if report.is_stress_free {
        Ok(())
    } else {
        Err(format!("graph has a {}-dimensional stress space in dimension {}", report.stress_dim, c.r - 2))
    }
}

fn replay_node(
    g: &Graph,
    c: &Certificate,
    node: &CertNode,
    verify: Verify,
    path: &mut Vec<String>,
) -> std::result::Result<(), String> {
    let r = c.r;
    let is_leaf = matches!(node, CertNode::Edgeless | CertNode::SmallClique { .. });
    match node {
        CertNode::Contraction { edge, triangles, child } => {
            path.push(format!("C {} {}", edge.u(), edge.v()));
            if !g.contains(*edge) {
                return Err(format!("{edge} is not an edge"));
            }
            let t = g.triangles_on(*edge);
            if t != *triangles {
                return Err(format!("{edge} lies in {t} triangles, certificate says {triangles}"));
            }
            if t + 3 > r {
                return Err(format!("{edge} lies in {t} triangles, more than r - 3 = {}", r as i64 - 3));
            }
            let (next, _) = g.contract_edge(*edge).map_err(|e| e.to_string())?;
            replay_node(&next, c, child, verify, path)?;
        }
        CertNode::CliqueSum { clique, first, second } => {
            path.push(format!("S {}", clique.len()));
            if r != 6 {
                return Err(format!("clique sums are only used for r = 6, certificate has r = {r}"));
            }
            if clique.len() > 4 {
                return Err(format!("clique has {} vertices, more than 4", clique.len()));
            }
            if clique.windows(2).any(|w| w[0] >= w[1]) {
                return Err("clique vertices must be strictly increasing".into());
            }
            let split = g
                .split_at(clique)
                .ok_or_else(|| format!("{clique:?} is not a separating clique"))?;
            path.push("first".into());
            replay_node(&split.g1, c, first, verify, path)?;
            path.pop();
            path.push("second".into());
            replay_node(&split.g2, c, second, verify, path)?;
            path.pop();
        }
        CertNode::Edgeless => {
            path.push("LE".into());
            if g.edge_count() != 0 {
                return Err(format!("leaf claims no edges, graph has {}", g.edge_count()));
            }
        }
        CertNode::SmallClique { m } => {
            path.push(format!("LK {m}"));
            if g.n() != *m || !g.is_complete() {
                return Err(format!("leaf claims K_{m}, graph has {} vertices and {} edges", g.n(), g.edge_count()));
            }
            if *m >= r {
                return Err(format!("leaf K_{m} is not smaller than K_{r}"));
            }
        }
    }
    if verify == Verify::Deep || (verify == Verify::Leaves && is_leaf) {
        stress_free(g, c)?;
    }
    path.pop();
    Ok(())
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seeds = if self.seeds.is_empty() {
            "-".to_string()
        } else {
            self.seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        };
        writeln!(f, "CERT {} {} {} {}", self.r, self.n, seeds, self.digest)?;
        let mut stack = vec![&self.root];
        while let Some(node) = stack.pop() {
            match node {
                CertNode::Contraction { edge, triangles, child } => {
                    writeln!(f, "C {} {} {}", edge.u(), edge.v(), triangles)?;
                    stack.push(child);
                }
                CertNode::CliqueSum { clique, first, second } => {
                    write!(f, "S {}", clique.len())?;
                    for v in clique {
                        write!(f, " {v}")?;
                    }
                    writeln!(f)?;
                    stack.push(second);
                    stack.push(first);
                }
                CertNode::Edgeless => writeln!(f, "LE")?,
                CertNode::SmallClique { m } => writeln!(f, "LK {m}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse_err = |line: usize, msg: String| Error::Parse { line: line + 1, msg };
        let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "empty certificate".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 5 || h[0] != "CERT" {
            return Err(parse_err(hline, "expected `CERT r n seeds digest`".into()));
        }
        let num = |s: &str, line: usize| s.parse::<usize>().map_err(|e| parse_err(line, format!("{s:?}: {e}")));
        let r = num(h[1], hline)?;
        let n = num(h[2], hline)?;
        let seeds = if h[3] == "-" {
            Vec::new()
        } else {
            h[3].split(',')
                .map(|s| s.parse::<u64>().map_err(|e| parse_err(hline, format!("seed {s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?
        };
        let digest = h[4].to_string();

        let body: Vec<(usize, Vec<&str>)> = lines.map(|(i, l)| (i, l.split_whitespace().collect())).collect();
        let mut pos = 0;
        let root = parse_node(&body, &mut pos, &num)?;
        if let Some((line, _)) = body.get(pos) {
            return Err(parse_err(*line, "trailing lines after the certificate tree".into()));
        }
        Ok(Certificate { r, n, seeds, digest, root })
    }
}

fn parse_node(
    body: &[(usize, Vec<&str>)],
    pos: &mut usize,
    num: &dyn Fn(&str, usize) -> Result<usize>,
) -> Result<CertNode> {
    let Some((line, toks)) = body.get(*pos) else {
        let last = body.last().map_or(1, |(l, _)| l + 2);
        return Err(Error::Parse { line: last, msg: "certificate tree ends early".into() });
    };
    let line = *line;
    *pos += 1;
    let bad = |msg: &str| Error::Parse { line: line + 1, msg: msg.into() };
    match toks.first().copied() {
        Some("C") if toks.len() == 4 => {
            let (u, v) = (num(toks[1], line)?, num(toks[2], line)?);
            if u == 0 || u >= v {
                return Err(bad("contraction needs 1 <= u < v"));
            }
            let triangles = num(toks[3], line)?;
            let child = Box::new(parse_node(body, pos, num)?);
            Ok(CertNode::Contraction { edge: Edge::new(u, v), triangles, child })
        }
        Some("S") if toks.len() >= 2 => {
            let k = num(toks[1], line)?;
            if toks.len() != k + 2 {
                return Err(bad("split line lists a different number of clique vertices"));
            }
            let clique = toks[2..].iter().map(|t| num(t, line)).collect::<Result<Vec<_>>>()?;
            let first = Box::new(parse_node(body, pos, num)?);
            let second = Box::new(parse_node(body, pos, num)?);
            Ok(CertNode::CliqueSum { clique, first, second })
        }
        Some("LE") if toks.len() == 1 => Ok(CertNode::Edgeless),
        Some("LK") if toks.len() == 2 => Ok(CertNode::SmallClique { m: num(toks[1], line)? }),
        _ => Err(bad("expected `C u v t`, `S k c1 .. ck`, `LE` or `LK m`")),
    }
}
