//! Surface obstructions from algebraic shifting.
//!
//! If `{r-1, r}` lies in the shifted graph of `G` and `r` exceeds the Heawood
//! number of a surface, then `G` does not embed in that surface. Vertices of
//! degree at most `r - 2` can be stripped first without changing the verdict.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::shifting::{algebraic_shift, ShiftKind};

/// Non-negative rational genus `num / den` in lowest terms. Non-orientable
/// surfaces have half-integral genus (the projective plane is `1/2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Genus {
    num: u64,
    den: u64,
}

impl Genus {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return invalid("genus denominator is zero");
        }
        let g = gcd(num, den);
        Ok(Genus { num: num / g, den: den / g })
    }

    pub fn integer(g: u64) -> Self {
        Genus { num: g, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a.max(1) } else { gcd(b, a % b) }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `2`, `1/2` and `0.5`.
impl FromStr for Genus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("cannot read genus {s:?}"));
        if let Some((a, b)) = s.split_once('/') {
            let num = a.trim().parse().map_err(|_| bad())?;
            let den = b.trim().parse().map_err(|_| bad())?;
            return Genus::new(num, den);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            return Genus::new(int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?, den);
        }
        Ok(Genus::integer(s.parse().map_err(|_| bad())?))
    }
}

/// `floor((7 + sqrt(1 + 48 g)) / 2)`, computed exactly.
pub fn heawood_number(genus: Genus) -> Result<usize> {
    if !genus.is_positive() {
        return invalid("the Heawood number is used for surfaces of positive genus");
    }
    // largest h with 2h - 7 <= sqrt((den + 48 num) / den)
    let (num, den) = (genus.num as u128, genus.den as u128);
    let rhs = den + 48 * num;
    let mut h: u128 = 4;
    while (2 * (h + 1) - 7).pow(2) * den <= rhs {
        h += 1;
    }
    Ok(h as usize)
}

/// `floor(3v - 6 + 6g)`: the most edges a simple graph on `v >= 3`
/// vertices can have when embedded in the genus-`g` surface.
pub fn euler_edge_bound(v: usize, genus: Genus) -> i64 {
    3 * v as i64 - 6 + (6 * genus.num / genus.den) as i64
}

/// Repeatedly deletes vertices of degree at most `r - 2`. Returns the
/// remaining graph and the original labels of its vertices.
pub fn strip_low_degree(g: &Graph, r: usize) -> (Graph, Vec<Vertex>) {
    let mut cur = g.clone();
    let mut labels: Vec<Vertex> = g.vertices().collect();
    while let Some(v) = cur.vertices().find(|&v| cur.degree(v) + 2 <= r) {
        cur = cur.delete_vertex(v);
        labels.remove(v - 1);
    }
    (cur, labels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub genus: Genus,
    pub kind: ShiftKind,
    pub heawood: usize,
    /// Largest `r` with `{r-1, r}` in the shifted graph of `G`; 0 if `G` has no edge.
    pub max_r: usize,
    /// `max_r > heawood`: `G` cannot be embedded in the surface.
    pub obstructed: bool,
    /// Vertices left after deleting those of degree at most `heawood - 1`.
    pub stripped_n: usize,
    /// The verdict recomputed on the stripped graph.
    pub stripped_obstructed: bool,
    pub seeds: Vec<u64>,
}

fn max_r(shifted: &crate::shifting::ShiftedGraph) -> usize {
    (2..=shifted.n).rev().find(|&r| shifted.contains(r - 1, r)).unwrap_or(0)
}

pub fn surface_obstruction(
    g: &Graph,
    genus: Genus,
    kind: ShiftKind,
    trials: usize,
    base_seed: u64,
) -> Result<SurfaceReport> {
    let heawood = heawood_number(genus)?;
    let full = algebraic_shift(g, kind, trials, base_seed)?;
    let max_r = max_r(&full);
    let (stripped, _) = strip_low_degree(g, heawood + 1);
    let stripped_obstructed = if stripped.n() <= heawood {
        false
    } else {
        algebraic_shift(&stripped, kind, trials, base_seed)?.contains(heawood, heawood + 1)
    };
    Ok(SurfaceReport {
        genus,
        kind,
        heawood,
        max_r,
        obstructed: max_r > heawood,
        stripped_n: stripped.n(),
        stripped_obstructed,
        seeds: full.seeds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DEFAULT_SEED, DEFAULT_TRIALS};

    #[test]
    fn heawood_values() {
        let h = |s: &str| heawood_number(s.parse().unwrap()).unwrap();
        assert_eq!(h("1/2"), 6);
        assert_eq!(h("0.5"), 6);
        assert_eq!(h("1"), 7);
        assert_eq!(h("2"), 8);
        assert_eq!(h("3"), 9);
        assert_eq!(h("6"), 12);
        assert!(heawood_number(Genus::integer(0)).is_err());
    }

    #[test]
    fn heawood_matches_floating_point() {
        for num in 1..200u64 {
            for den in [1u64, 2] {
                let g = Genus::new(num, den).unwrap();
                let x = (7.0 + (1.0 + 48.0 * num as f64 / den as f64).sqrt()) / 2.0;
                // skip values too close to an integer for f64
                if (x - x.round()).abs() > 1e-9 {
                    assert_eq!(heawood_number(g).unwrap(), x.floor() as usize, "{g}");
                }
            }
        }
    }

    #[test]
    fn genus_parsing() {
        assert_eq!("2/4".parse::<Genus>().unwrap(), Genus::new(1, 2).unwrap());
        assert_eq!("1.5".parse::<Genus>().unwrap(), Genus::new(3, 2).unwrap());
        assert_eq!(Genus::new(3, 2).unwrap().to_string(), "3/2");
        for bad in ["", "x", "1/0", "-1", "1.", "1.x"] {
            assert!(bad.parse::<Genus>().is_err(), "{bad}");
        }
    }

    #[test]
    fn euler_bound() {
        assert_eq!(euler_edge_bound(7, Genus::integer(1)), 21);
        assert_eq!(euler_edge_bound(6, Genus::new(1, 2).unwrap()), 15);
    }

    #[test]
    fn stripping() {
        let mut edges: Vec<(usize, usize)> = Graph::complete(5).edges().map(|e| (e.u(), e.v())).collect();
        edges.push((5, 6));
        let g = Graph::from_edges(6, edges).unwrap();
        let (s, labels) = strip_low_degree(&g, 5);
        assert_eq!(s, Graph::complete(5));
        assert_eq!(labels, vec![1, 2, 3, 4, 5]);
        let (s, _) = strip_low_degree(&g, 6);
        assert_eq!(s.n(), 0);
    }

    #[test]
    fn complete_graphs_on_the_torus() {
        let torus = Genus::integer(1);
        for (n, obstructed) in [(5, false), (7, false), (8, true)] {
            for kind in [ShiftKind::Exterior, ShiftKind::Symmetric] {
                let rep = surface_obstruction(&Graph::complete(n), torus, kind, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
                assert_eq!(rep.obstructed, obstructed, "K{n} {kind}");
                assert_eq!(rep.stripped_obstructed, obstructed);
                assert_eq!(rep.max_r, n);
            }
        }
    }
}
