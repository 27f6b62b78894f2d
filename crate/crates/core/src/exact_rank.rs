//! Exact rank over prime fields and over the rationals.
//!
//! Prime fields use ordinary elimination with modular inverses. Rationals are
//! cleared to integer rows and reduced with fraction-free (Bareiss)
//! elimination, so no intermediate fraction ever appears.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pattern::{evaluate, index_parameters, LaurentPattern};

/// Largest prime below 2^16; the default field for random rank probes.
pub const DEFAULT_PROBE_PRIME: u32 = 65521;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// GF(q), q prime and below 2^31.
    Prime(u32),
    Rational,
}

impl FieldSpec {
    pub fn prime(q: u64) -> Result<Self> {
        if q >= 1 << 31 || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(FieldSpec::Prime(q as u32))
    }

    pub fn gf2() -> Self {
        FieldSpec::Prime(2)
    }

    /// Maps a rational into the field; `None` for zero.
    pub fn element(&self, v: &BigRational) -> Result<Option<Scalar>> {
        if v.is_zero() {
            return Ok(None);
        }
        match *self {
            FieldSpec::Rational => Ok(Some(Scalar::Rat(v.clone()))),
            FieldSpec::Prime(q) => {
                let modulus = BigInt::from(q);
                let num = v.numer().mod_floor(&modulus).to_u64().unwrap();
                let den = v.denom().mod_floor(&modulus).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::NotInField { value: v.to_string(), modulus: q });
                }
                let x = num * inv_mod(den, q as u64) % q as u64;
                Ok((x != 0).then_some(Scalar::Mod(x as u32)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(q) => write!(f, "GF({q})"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// A nonzero field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Mod(u32),
    Rat(BigRational),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(x) => write!(f, "{x}"),
            Scalar::Rat(x) => write!(f, "{x}"),
        }
    }
}

/// Sparse matrix over a [`FieldSpec`]; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl FieldMatrix {
    pub fn zeros(field: FieldSpec, nrows: usize, ncols: usize) -> Self {
        Self { field, nrows, ncols, entries: BTreeMap::new() }
    }

    /// Builds a matrix from integer entries, reducing into `field`.
    pub fn from_ints(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                if let Some(s) = field.element(&BigRational::from_integer(x.into()))? {
                    m.set(i, j, s);
                }
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Stores `value` at `(row, col)`. The value must already be canonical in
    /// this matrix's field (as produced by [`FieldSpec::element`]).
    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.nrows && col < self.ncols, "entry out of range");
        match (&value, self.field) {
            (Scalar::Mod(x), FieldSpec::Prime(q)) => assert!(*x != 0 && *x < q),
            (Scalar::Rat(x), FieldSpec::Rational) => assert!(!x.is_zero()),
            _ => panic!("scalar does not belong to {}", self.field),
        }
        self.entries.insert((row, col), value);
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Scalar> {
        self.entries.get(&(row, col))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Positions of nonzero entries in row-major order.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.keys().copied()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Exact rank by elimination, pivoting on the first nonzero in each column.
pub fn rank(m: &FieldMatrix) -> usize {
    if m.entries.is_empty() {
        return 0;
    }
    match m.field {
        FieldSpec::Prime(q) => {
            let mut a = vec![vec![0u64; m.ncols]; m.nrows];
            for (&(i, j), s) in &m.entries {
                if let Scalar::Mod(x) = s {
                    a[i][j] = *x as u64;
                }
            }
            rank_mod_p(a, q as u64)
        }
        FieldSpec::Rational => {
            let mut a = vec![vec![BigInt::zero(); m.ncols]; m.nrows];
            let mut row_lcm = vec![BigInt::one(); m.nrows];
            for (&(i, _), s) in &m.entries {
                if let Scalar::Rat(x) = s {
                    row_lcm[i] = row_lcm[i].lcm(x.denom());
                }
            }
            for (&(i, j), s) in &m.entries {
                if let Scalar::Rat(x) = s {
                    a[i][j] = x.numer() * (&row_lcm[i] / x.denom());
                }
            }
            rank_bareiss(a)
        }
    }
}

fn rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let (n, m) = (a.len(), a.first().map_or(0, Vec::len));
    let mut r = 0;
    for c in 0..m {
        let Some(piv) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for i in r + 1..n {
            if a[i][c] == 0 {
                continue;
            }
            let f = a[i][c] * inv % p;
            for j in c..m {
                a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
            }
        }
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

fn rank_bareiss(mut a: Vec<Vec<BigInt>>) -> usize {
    let (n, m) = (a.len(), a.first().map_or(0, Vec::len));
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m {
        let Some(piv) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..n {
            for j in c + 1..m {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

/// Lower bound on `max_p rk T_k(H)(p)` from uniformly random parameters.
///
/// Trial `t` draws from its own ChaCha stream, so results do not depend on
/// evaluation order.
pub fn max_rank_random(
    h: &LaurentPattern,
    k: usize,
    field: FieldSpec,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    let FieldSpec::Prime(q) = field else {
        return Err(Error::Input("random probing needs a prime field".into()));
    };
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let index = index_parameters(h, k)?;
    let mut best = 0;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        let p = index
            .triples()
            .iter()
            .map(|&tr| (tr, BigRational::from_integer(rng.gen_range(0..q).into())))
            .collect();
        best = best.max(evaluate(h, k, &p, field)?.rank());
        if best == (k * h.nrows()).min(k * h.ncols()) {
            break;
        }
    }
    Ok(best)
}
