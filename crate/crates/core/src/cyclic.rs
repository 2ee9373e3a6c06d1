//! Arithmetic over `Z_ω`: dense residue sets, subgroups, translates and
//! dilations, plus the elementary number theory the engines lean on.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest group order accepted by [`Modulus::new`].
pub const MAX_OMEGA: usize = 1 << 20;

/// The order `ω` of a cyclic group `Z_ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(usize);

impl Modulus {
    pub fn new(omega: usize) -> Result<Self> {
        if omega == 0 {
            return Err(Error::ZeroModulus);
        }
        if omega > MAX_OMEGA {
            return Err(Error::BoundExceeded {
                what: "omega",
                value: omega as u64,
                bound: MAX_OMEGA as u64,
            });
        }
        Ok(Modulus(omega))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Reduces an arbitrary integer into `[0, ω)`.
    #[inline]
    pub fn reduce(self, x: i64) -> usize {
        x.rem_euclid(self.0 as i64) as usize
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.0)
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.0 as u64)
    }
}

/// A subset of `Z_ω` stored as a bit vector, one bit per group element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: Modulus,
    words: Vec<u64>,
}

#[inline]
fn word_count(omega: usize) -> usize {
    omega.div_ceil(64)
}

impl ResidueSet {
    pub fn empty(modulus: Modulus) -> Self {
        ResidueSet {
            modulus,
            words: vec![0; word_count(modulus.get())],
        }
    }

    /// The whole group `Z_ω`.
    pub fn full(modulus: Modulus) -> Self {
        let omega = modulus.get();
        let mut words = vec![u64::MAX; word_count(omega)];
        let tail = omega % 64;
        if tail != 0 {
            *words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        ResidueSet { modulus, words }
    }

    /// Builds a set from members that must already lie in `[0, ω)`.
    /// Repeated members are merged.
    pub fn from_members<I>(modulus: Modulus, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = ResidueSet::empty(modulus);
        for m in members {
            if m >= modulus.get() {
                return Err(Error::OutOfRange {
                    element: m as i64,
                    omega: modulus.get(),
                });
            }
            set.insert(m);
        }
        Ok(set)
    }

    /// Builds a set from arbitrary integers, reducing each one mod `ω`.
    pub fn from_residues<I>(modulus: Modulus, values: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        let mut set = ResidueSet::empty(modulus);
        for v in values {
            set.insert(modulus.reduce(v));
        }
        set
    }

    /// The interval `[lo, hi]` of integers, reduced mod `ω`.
    pub fn interval(modulus: Modulus, lo: i64, hi: i64) -> Self {
        ResidueSet::from_residues(modulus, lo..=hi)
    }

    pub(crate) fn insert(&mut self, g: usize) {
        debug_assert!(g < self.modulus.get());
        self.words[g / 64] |= 1 << (g % 64);
    }

    pub(crate) fn remove(&mut self, g: usize) {
        self.words[g / 64] &= !(1 << (g % 64));
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn omega(&self) -> usize {
        self.modulus.get()
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        g < self.omega() && self.words[g / 64] >> (g % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Members<'_> {
        Members {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn least(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Smallest element of `Z_ω` that is not a member.
    pub fn first_missing(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                let g = i * 64 + (!w).trailing_zeros() as usize;
                return (g < self.omega()).then_some(g);
            }
        }
        None
    }

    pub fn same_modulus(&self, other: &ResidueSet) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.omega(),
                right: other.omega(),
            });
        }
        Ok(())
    }

    /// `A + g`, reduced mod `ω`.
    pub fn translate(&self, g: i64) -> ResidueSet {
        let shift = self.modulus.reduce(g);
        if shift == 0 {
            return self.clone();
        }
        let omega = self.omega();
        let mut out = ResidueSet::empty(self.modulus);
        for a in self.iter() {
            let s = a + shift;
            out.insert(if s >= omega { s - omega } else { s });
        }
        out
    }

    /// `kA = {k·a mod ω}`. Cardinality drops when `gcd(k, ω) > 1` collapses members.
    pub fn dilate(&self, k: i64) -> ResidueSet {
        let omega = self.omega() as u128;
        let k = self.modulus.reduce(k) as u128;
        let mut out = ResidueSet::empty(self.modulus);
        for a in self.iter() {
            out.insert(((a as u128 * k) % omega) as usize);
        }
        out
    }

    /// Shifts the set so that its least member becomes 0.
    pub fn normalize(&self) -> Result<ResidueSet> {
        let min = self.least().ok_or(Error::EmptySet)?;
        Ok(self.translate(-(min as i64)))
    }

    pub fn is_disjoint(&self, other: &ResidueSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &ResidueSet) -> ResidueSet {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        ResidueSet {
            modulus: self.modulus,
            words,
        }
    }

    pub fn intersection(&self, other: &ResidueSet) -> ResidueSet {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        ResidueSet {
            modulus: self.modulus,
            words,
        }
    }

    pub fn difference(&self, other: &ResidueSet) -> ResidueSet {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        ResidueSet {
            modulus: self.modulus,
            words,
        }
    }

    pub(crate) fn union_with(&mut self, other: &ResidueSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn subtract(&mut self, other: &ResidueSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// True when the set is a subgroup of `Z_ω`.
    pub fn is_subgroup(&self) -> bool {
        let size = self.len();
        if size == 0 || self.omega() % size != 0 {
            return false;
        }
        *self == cyclic_subgroup((self.omega() / size) as i64, self.modulus)
    }
}

impl PartialOrd for ResidueSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sets over the same modulus compare by their ascending member lists.
impl Ord for ResidueSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {}", self.to_vec(), self.modulus)
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for ResidueSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

pub struct Members<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

/// Prime factorization `n = ∏ p^e`, primes increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeSignature {
    factors: Vec<(u64, u32)>,
}

impl PrimeSignature {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn mu(&self) -> usize {
        self.factors.len()
    }

    /// Number of prime divisors counted with multiplicity.
    pub fn nu(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// `p^e` with `e ≥ 1`.
    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// Product of two distinct primes.
    pub fn is_two_prime_product(&self) -> bool {
        self.factors.len() == 2 && self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Trial division up to `√n`.
pub fn factorize_integer(mut n: u64) -> PrimeSignature {
    assert!(n >= 1, "factorize_integer requires n >= 1");
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    PrimeSignature { factors }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize_integer(n).factors == [(n, 1)]
}

pub fn gcd(a: i64, b: i64) -> u64 {
    a.unsigned_abs().gcd(&b.unsigned_abs())
}

/// Smallest `l ≥ 1` with `g^l ≡ 1 (mod n)`.
pub fn multiplicative_order(g: i64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "multiplicative order needs a modulus >= 2, got {n}"
        )));
    }
    if gcd(g, n as i64) != 1 {
        return Err(Error::NotCoprime {
            value: g,
            modulus: n,
        });
    }
    let base = g.rem_euclid(n as i64) as u128;
    let n128 = n as u128;
    let mut x = base;
    let mut l = 1;
    while x != 1 {
        x = x * base % n128;
        l += 1;
    }
    Ok(l)
}

/// `⟨d⟩ = {0, d, 2d, …}` in `Z_ω`.
pub fn cyclic_subgroup(d: i64, modulus: Modulus) -> ResidueSet {
    let omega = modulus.get();
    let step = gcd(d, omega as i64) as usize;
    ResidueSet::from_members(modulus, (0..omega).step_by(step))
        .expect("multiples below omega are in range")
}

/// Parses the shared set-literal grammar: comma-separated integers or
/// inclusive ranges `lo..hi`, whitespace ignored, duplicates rejected.
/// The empty literal yields an empty list.
pub fn parse_set_literal(text: &str) -> Result<Vec<i64>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    if compact.is_empty() {
        return Ok(out);
    }
    let mut seen = std::collections::HashSet::new();
    for item in compact.split(',') {
        if item.is_empty() {
            return Err(Error::SetLiteral(format!("empty item in {text:?}")));
        }
        let (lo, hi) = match item.split_once("..") {
            Some((lo, hi)) => (parse_int(lo)?, parse_int(hi)?),
            None => {
                let v = parse_int(item)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(Error::SetLiteral(format!(
                "range {item} has lower bound above upper bound"
            )));
        }
        for v in lo..=hi {
            if !seen.insert(v) {
                return Err(Error::DuplicateElement(v));
            }
            out.push(v);
        }
    }
    Ok(out)
}

fn parse_int(s: &str) -> Result<i64> {
    s.parse()
        .map_err(|_| Error::SetLiteral(format!("{s:?} is not an integer")))
}

/// Parses a set literal into a residue set; every element must lie in `[0, ω)`.
pub fn parse_residue_set(text: &str, modulus: Modulus) -> Result<ResidueSet> {
    let values = parse_set_literal(text)?;
    let mut set = ResidueSet::empty(modulus);
    for v in values {
        if v < 0 || v as usize >= modulus.get() {
            return Err(Error::OutOfRange {
                element: v,
                omega: modulus.get(),
            });
        }
        set.insert(v as usize);
    }
    Ok(set)
}
