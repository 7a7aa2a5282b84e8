//! Dense linear algebra over a prime field and seeded generic configurations.
//!
//! Genericity is simulated: coordinates that should be algebraically
//! independent reals are replaced by uniformly random residues modulo a large
//! prime. A fixed nonzero polynomial of degree `k` vanishes at such a point
//! with probability at most `k / p`, so for the matrix sizes handled here a
//! rank computed at one random point equals the generic rank except with
//! negligible probability, and never exceeds it.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Vertex;

/// The Mersenne prime `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::DEFAULT
    }
}

impl PrimeField {
    pub const DEFAULT: PrimeField = PrimeField { p: MERSENNE_61 };

    /// A field of prime order `p`, `2 < p < 2^63`.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= 1 << 63 || !is_prime(p) {
            return invalid(format!("{p} is not an odd prime below 2^63"));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: u64) -> FieldElement {
        FieldElement(v % self.p)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let x = a as u128 * b as u128;
        if self.p == MERSENNE_61 {
            let lo = (x as u64) & MERSENNE_61;
            let hi = (x >> 61) as u64;
            let s = lo + hi;
            let s = (s & MERSENNE_61) + (s >> 61);
            if s >= MERSENNE_61 {
                s - MERSENNE_61
            } else {
                s
            }
        } else {
            (x % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// Uniform residue by rejection from the low bits of the generator output.
    fn sample(&self, rng: &mut impl RngCore) -> u64 {
        let mask = u64::MAX >> (self.p - 1).leading_zeros();
        loop {
            let x = rng.next_u64() & mask;
            if x < self.p {
                return x;
            }
        }
    }
}

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A residue `0 <= value < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(u64);

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.0
    }
}

/// Row-major dense matrix over a [`PrimeField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FieldMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Entries are reduced modulo `p`; rows must share a length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("ragged rows");
        }
        let data = rows.iter().flatten().map(|&v| v % field.p).collect();
        Ok(FieldMatrix { field, rows: rows.len(), cols, data })
    }

    /// Signed integer entries, reduced into the field.
    pub fn from_signed_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v.rem_euclid(field.p as i64) as u64).collect())
            .collect();
        Self::from_rows(field, &reduced)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        FieldElement(self.data[r * self.cols + c])
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.data[r * self.cols + c]).collect()
    }

    /// Exact rank by fraction-free elimination, pivoting on the first nonzero entry.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
                continue;
            };
            if p != rank {
                for j in c..cols {
                    a.swap(p * cols + j, rank * cols + j);
                }
            }
            let piv = a[rank * cols + c];
            for r in rank + 1..rows {
                let x = a[r * cols + c];
                if x == 0 {
                    continue;
                }
                // row_r <- piv * row_r - x * row_rank
                for j in c..cols {
                    let lhs = f.mul(piv, a[r * cols + j]);
                    let rhs = f.mul(x, a[rank * cols + j]);
                    a[r * cols + j] = f.sub(lhs, rhs);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    /// Columns kept by a left-to-right greedy scan over `order`: a column is
    /// kept iff it is not in the span of the columns kept before it.
    pub fn greedy_independent_columns(&self, order: &[usize]) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.cols];
        if order.len() != self.cols
            || order.iter().any(|&c| c >= self.cols || std::mem::replace(&mut seen[c], true))
        {
            return invalid("column order is not a permutation");
        }
        let f = self.field;
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut kept = Vec::new();
        for &c in order {
            if basis.len() == self.rows {
                break;
            }
            let mut v = self.column(c);
            for (piv, b) in &basis {
                let x = v[*piv];
                if x == 0 {
                    continue;
                }
                let y = b[*piv];
                for (vi, &bi) in v.iter_mut().zip(b) {
                    *vi = f.sub(f.mul(y, *vi), f.mul(x, bi));
                }
            }
            if let Some(piv) = v.iter().position(|&x| x != 0) {
                basis.push((piv, v));
                kept.push(c);
            }
        }
        Ok(kept)
    }
}

/// Seeded stand-in for a generic point: `coords[i][v]` is the `i`-th
/// coordinate of vertex `v` (equivalently the coefficient of `e_v` in the
/// `i`-th generic linear form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericConfiguration {
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    field: PrimeField,
    coords: Vec<u64>,
}

impl GenericConfiguration {
    /// Draws `d * n` residues from ChaCha20 seeded with `seed`, coordinate-major.
    pub fn new(seed: u64, n: usize, d: usize) -> Self {
        Self::with_field(PrimeField::DEFAULT, seed, n, d)
    }

    pub fn with_field(field: PrimeField, seed: u64, n: usize, d: usize) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let coords = (0..n * d).map(|_| field.sample(&mut rng)).collect();
        GenericConfiguration { seed, n, d, field, coords }
    }

    /// Explicit coordinates, one row per coordinate; the seed is recorded as 0.
    pub fn from_coords(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return invalid("ragged coordinate table");
        }
        let coords = rows.iter().flatten().map(|&x| x % field.p).collect();
        Ok(GenericConfiguration { seed: 0, n, d: rows.len(), field, coords })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Coordinate `i` in `0..d` of vertex `v` in `1..=n`.
    #[inline]
    pub fn coord(&self, i: usize, v: Vertex) -> u64 {
        self.coords[i * self.n + (v - 1)]
    }

    pub fn table(&self) -> Vec<Vec<FieldElement>> {
        self.coords
            .chunks(self.n.max(1))
            .take(self.d)
            .map(|row| row.iter().map(|&x| FieldElement(x)).collect())
            .collect()
    }
}
