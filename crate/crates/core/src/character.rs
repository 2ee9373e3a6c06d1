//! Exact character sums `χ_t(A) = Σ ζ_ω^{t·a}`.
//!
//! A sum of `ω`-th roots of unity is stored as a coefficient vector over the
//! powers of a primitive `ζ_ω`. It vanishes exactly when the cyclotomic
//! polynomial of the root's true order divides the collapsed polynomial, so
//! zero-testing is integer polynomial division with no rounding anywhere.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::{cyclic_subgroup, gcd, Modulus, PrimeSignature, ResidueSet};
use crate::error::{Error, Result};
use crate::factorization::stabilizer;

pub const MAX_CYCLOTOMIC_ORDER: u64 = 100_000;

/// Default ceiling on `ω` for [`decompose_union`].
pub const DEFAULT_DECOMPOSE_BOUND: usize = 96;

fn mobius(n: u64) -> i8 {
    let sig = crate::cyclic::factorize_integer(n);
    if sig.factors().iter().any(|&(_, e)| e > 1) {
        0
    } else if sig.mu() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Coefficients of `Φ_d`, lowest degree first.
///
/// Built as `∏_{e | d} (x^e − 1)^{μ(d/e)}`: every factor with `μ = +1` is
/// multiplied in before any exact division by a factor with `μ = −1`.
pub fn cyclotomic_polynomial(d: u64) -> Result<Vec<BigInt>> {
    if d == 0 {
        return Err(Error::Precondition("cyclotomic order must be >= 1".into()));
    }
    if d > MAX_CYCLOTOMIC_ORDER {
        return Err(Error::BoundExceeded {
            what: "cyclotomic order",
            value: d,
            bound: MAX_CYCLOTOMIC_ORDER,
        });
    }
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    for e in divisors(d) {
        match mobius(d / e) {
            1 => numer.push(e as usize),
            -1 => denom.push(e as usize),
            _ => {}
        }
    }
    let mut poly = vec![BigInt::one()];
    for e in numer {
        // poly · (x^e − 1)
        let mut next = vec![BigInt::zero(); poly.len() + e];
        for (i, c) in poly.iter().enumerate() {
            next[i + e] += c;
            next[i] -= c;
        }
        poly = next;
    }
    for e in denom {
        // exact quotient by (x^e − 1): p_i = q_{i−e} − q_i
        let deg = poly.len() - 1;
        let mut q = vec![BigInt::zero(); deg + 1 - e];
        for i in (e..=deg).rev() {
            let above = if i < q.len() {
                q[i].clone()
            } else {
                BigInt::zero()
            };
            q[i - e] = &poly[i] + above;
        }
        debug_assert!((0..e).all(|i| poly[i] == -q.get(i).cloned().unwrap_or_default()));
        poly = q;
    }
    Ok(poly)
}

/// `Φ_d` with machine-word coefficients, memoized.
fn cyclotomic_small(d: u64) -> Result<Arc<Vec<i64>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&d) {
        return Ok(p.clone());
    }
    let coeffs = cyclotomic_polynomial(d)?
        .iter()
        .map(|c| c.to_i64().ok_or(Error::Overflow("cyclotomic coefficients")))
        .collect::<Result<Vec<_>>>()?;
    let p = Arc::new(coeffs);
    cache.write().unwrap().insert(d, p.clone());
    Ok(p)
}

/// A character `χ_t : g ↦ ζ_ω^{t·g}`; `t = 0` is the unity character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharacterIndex {
    t: usize,
    omega: Modulus,
}

impl CharacterIndex {
    pub fn new(t: i64, omega: Modulus) -> Self {
        CharacterIndex {
            t: omega.reduce(t),
            omega,
        }
    }

    pub fn t(self) -> usize {
        self.t
    }

    pub fn omega(self) -> Modulus {
        self.omega
    }

    /// Trivial kernel.
    pub fn is_faithful(self) -> bool {
        gcd(self.t as i64, self.omega.get() as i64) == 1
    }
}

impl Serialize for CharacterIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.t as u64)
    }
}

/// `Σ coeffs[j]·ζ_ω^j` for a primitive `ω`-th root `ζ_ω`.
///
/// The representation is not canonical: different coefficient vectors can
/// denote the same value, so equality goes through [`CycloElement::is_zero`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloElement {
    omega: Modulus,
    coeffs: Vec<i64>,
}

impl CycloElement {
    pub fn new(omega: Modulus, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != omega.get() {
            return Err(Error::CardinalityMismatch {
                expected: omega.get(),
                found: coeffs.len(),
            });
        }
        Ok(CycloElement { omega, coeffs })
    }

    pub fn omega(&self) -> Modulus {
        self.omega
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Multiplies by `ζ_ω^s`.
    pub fn rotate(&self, s: i64) -> CycloElement {
        let shift = self.omega.reduce(s);
        let n = self.coeffs.len();
        let mut coeffs = vec![0; n];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[(j + shift) % n] = c;
        }
        CycloElement {
            omega: self.omega,
            coeffs,
        }
    }

    pub fn checked_sub(&self, other: &CycloElement) -> Result<CycloElement> {
        if self.omega != other.omega {
            return Err(Error::ModulusMismatch {
                left: self.omega.get(),
                right: other.omega.get(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| {
                a.checked_sub(*b)
                    .ok_or(Error::Overflow("cyclotomic difference"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycloElement {
            omega: self.omega,
            coeffs,
        })
    }

    pub fn value_eq(&self, other: &CycloElement) -> Result<bool> {
        self.checked_sub(other)?.is_zero()
    }

    /// Exact test for a vanishing sum.
    ///
    /// If every exponent in the support is a multiple of `g = gcd(ω, support)`,
    /// the value is a polynomial in `ζ_ω^g`, a primitive `(ω/g)`-th root, and
    /// vanishes iff `Φ_{ω/g}` divides the collapsed polynomial.
    pub fn is_zero(&self) -> Result<bool> {
        let omega = self.omega.get();
        let mut g = omega;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                g = g.gcd(&j);
            }
        }
        if g == omega && self.coeffs[0] == 0 {
            // empty support
            return Ok(true);
        }
        let order = omega / g;
        let mut collapsed = vec![0i128; order];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                collapsed[j / g] += c as i128;
            }
        }
        let phi = cyclotomic_small(order as u64)?;
        match remainder_is_zero_i128(&mut collapsed.clone(), &phi) {
            Some(z) => Ok(z),
            None => {
                let mut big: Vec<BigInt> = collapsed.into_iter().map(BigInt::from).collect();
                Ok(remainder_is_zero_big(&mut big, &phi))
            }
        }
    }
}

/// Reduces `p` modulo the monic `phi` in place; `None` on overflow.
fn remainder_is_zero_i128(p: &mut [i128], phi: &[i64]) -> Option<bool> {
    let deg = phi.len() - 1;
    let terms: Vec<(usize, i128)> = phi[..deg]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c as i128))
        .collect();
    for i in (deg..p.len()).rev() {
        let lead = p[i];
        if lead == 0 {
            continue;
        }
        p[i] = 0;
        for &(k, c) in &terms {
            let idx = i - deg + k;
            p[idx] = p[idx].checked_sub(lead.checked_mul(c)?)?;
        }
    }
    Some(p[..deg.min(p.len())].iter().all(|&c| c == 0))
}

fn remainder_is_zero_big(p: &mut [BigInt], phi: &[i64]) -> bool {
    let deg = phi.len() - 1;
    for i in (deg..p.len()).rev() {
        if p[i].is_zero() {
            continue;
        }
        let lead = std::mem::take(&mut p[i]);
        for (k, &c) in phi[..deg].iter().enumerate() {
            if c != 0 {
                p[i - deg + k] -= &lead * c;
            }
        }
    }
    p[..deg.min(p.len())].iter().all(|c| c.is_zero())
}

/// `χ_t(A)`: `coeffs[j] = #{a ∈ A : t·a ≡ j (mod ω)}`.
pub fn chi_sum(a: &ResidueSet, chi: CharacterIndex) -> Result<CycloElement> {
    if a.modulus() != chi.omega {
        return Err(Error::ModulusMismatch {
            left: a.omega(),
            right: chi.omega.get(),
        });
    }
    let omega = a.omega();
    let mut coeffs = vec![0i64; omega];
    for x in a.iter() {
        coeffs[(x * chi.t) % omega] += 1;
    }
    Ok(CycloElement {
        omega: chi.omega,
        coeffs,
    })
}

fn annihilates(a: &ResidueSet, t: usize) -> Result<bool> {
    chi_sum(a, CharacterIndex::new(t as i64, a.modulus()))?.is_zero()
}

/// `Ann(A) = {χ_t : χ_t(A) = 0}`, in increasing `t`.
pub fn annihilator(a: &ResidueSet) -> Result<Vec<CharacterIndex>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let hits = (0..a.omega())
        .into_par_iter()
        .map(|t| annihilates(a, t).map(|z| z.then_some(t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(hits
        .into_iter()
        .flatten()
        .map(|t| CharacterIndex::new(t as i64, a.modulus()))
        .collect())
}

/// `Ker χ_t = ⟨ω / gcd(t, ω)⟩`.
pub fn kernel(chi: CharacterIndex) -> ResidueSet {
    let omega = chi.omega.get() as i64;
    cyclic_subgroup(omega / gcd(chi.t as i64, omega) as i64, chi.omega)
}

fn require_subgroups(h: &ResidueSet, k: &ResidueSet, a: &ResidueSet) -> Result<()> {
    h.same_modulus(a)?;
    k.same_modulus(a)?;
    if !h.is_subgroup() {
        return Err(Error::NotSubgroup("H"));
    }
    if !k.is_subgroup() {
        return Err(Error::NotSubgroup("K"));
    }
    Ok(())
}

/// True iff `Ann(H) ∩ Ann(K) ⊆ Ann(A)`.
pub fn annihilator_inclusion(h: &ResidueSet, k: &ResidueSet, a: &ResidueSet) -> Result<bool> {
    require_subgroups(h, k, a)?;
    for t in 0..a.omega() {
        if annihilates(h, t)? && annihilates(k, t)? && !annihilates(a, t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finds `E`, `F` with `A = (H + E) ∪ (K + F)`, both sums direct and the
/// union disjoint.
///
/// Each step takes the least uncovered element of `A` and tries its
/// `H`-coset before its `K`-coset, so the first decomposition found is the
/// lexicographically least.
pub fn decompose_union(
    h: &ResidueSet,
    k: &ResidueSet,
    a: &ResidueSet,
) -> Result<Option<(ResidueSet, ResidueSet)>> {
    decompose_union_bounded(h, k, a, DEFAULT_DECOMPOSE_BOUND)
}

pub fn decompose_union_bounded(
    h: &ResidueSet,
    k: &ResidueSet,
    a: &ResidueSet,
    bound: usize,
) -> Result<Option<(ResidueSet, ResidueSet)>> {
    if a.omega() > bound {
        return Err(Error::BoundExceeded {
            what: "omega",
            value: a.omega() as u64,
            bound: bound as u64,
        });
    }
    require_subgroups(h, k, a)?;
    let mut e = ResidueSet::empty(a.modulus());
    let mut f = ResidueSet::empty(a.modulus());
    let mut remaining = a.clone();
    Ok(tile_by_cosets(h, k, &mut remaining, &mut e, &mut f).then_some((e, f)))
}

fn tile_by_cosets(
    h: &ResidueSet,
    k: &ResidueSet,
    remaining: &mut ResidueSet,
    e: &mut ResidueSet,
    f: &mut ResidueSet,
) -> bool {
    let Some(x) = remaining.least() else {
        return true;
    };
    for use_h in [true, false] {
        let coset = if use_h { h } else { k }.translate(x as i64);
        if !coset.is_subset(remaining) {
            continue;
        }
        remaining.subtract(&coset);
        let reps = if use_h { &mut *e } else { &mut *f };
        reps.insert(x);
        if tile_by_cosets(h, k, remaining, e, f) {
            return true;
        }
        if use_h { &mut *e } else { &mut *f }.remove(x);
        remaining.union_with(&coset);
    }
    false
}

/// Outcome of [`pq_periodicity_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PqPeriodicityVerdict {
    /// Least faithful `t` with `χ_t(B) = 0`.
    pub faithful_annihilator: Option<usize>,
    /// Either every faithful character annihilates `B` or none does.
    pub faithful_characters_agree: bool,
    pub periodic: bool,
    /// "annihilated by a faithful character ⇒ periodic".
    pub implication_holds: bool,
}

/// For `|G| = p^e q^f` and `|B| = pq`: does a faithful character annihilate
/// `B`, and is `B` periodic?
pub fn pq_periodicity_check(b: &ResidueSet, sig: &PrimeSignature) -> Result<PqPeriodicityVerdict> {
    if sig.mu() != 2 || sig.value() != b.omega() as u64 {
        return Err(Error::Precondition(format!(
            "group order {} is not p^e q^f with signature {:?}",
            b.omega(),
            sig.factors()
        )));
    }
    let pq = sig.primes().product::<u64>() as usize;
    if b.len() != pq {
        return Err(Error::CardinalityMismatch {
            expected: pq,
            found: b.len(),
        });
    }
    let omega = b.omega();
    let mut first = None;
    let mut zero_count = 0;
    let mut faithful = 0;
    for t in (1..omega).filter(|&t| gcd(t as i64, omega as i64) == 1) {
        faithful += 1;
        if annihilates(b, t)? {
            zero_count += 1;
            first.get_or_insert(t);
        }
    }
    let periodic = stabilizer(b)?.is_periodic;
    Ok(PqPeriodicityVerdict {
        faithful_annihilator: first,
        faithful_characters_agree: zero_count == 0 || zero_count == faithful,
        periodic,
        implication_holds: first.is_none() || periodic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::factorize_integer;

    fn z(omega: usize) -> Modulus {
        Modulus::new(omega).unwrap()
    }

    fn set(omega: usize, members: &[usize]) -> ResidueSet {
        ResidueSet::from_members(z(omega), members.iter().copied()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Φ_d by dividing x^d − 1 by every Φ_e, e a proper divisor of d.
    fn cyclotomic_by_division(d: usize) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); d + 1];
        p[0] = BigInt::from(-1);
        p[d] = BigInt::one();
        for e in (1..d).filter(|e| d % e == 0) {
            let divisor = cyclotomic_by_division(e);
            let dd = divisor.len() - 1;
            let mut q = vec![BigInt::zero(); p.len() - dd];
            for i in (0..q.len()).rev() {
                let c = p[i + dd].clone();
                q[i] = c.clone();
                for (k, dc) in divisor.iter().enumerate() {
                    p[i + k] -= &c * dc;
                }
            }
            assert!(p.iter().all(|c| c.is_zero()), "inexact division by Phi_{e}");
            p = q;
        }
        p
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_by_division(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12).unwrap(), ints(&[1, 0, -1, 0, 1]));
        assert!(matches!(
            cyclotomic_polynomial(100_001),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn cyclotomic_agrees_with_recursive_division() {
        for d in 1..=120 {
            assert_eq!(
                cyclotomic_polynomial(d as u64).unwrap(),
                cyclotomic_by_division(d),
                "d={d}"
            );
        }
    }

    #[test]
    fn cyclotomic_of_first_height_two_order() {
        // Φ_105 is the first cyclotomic polynomial with a coefficient −2.
        let p = cyclotomic_polynomial(105).unwrap();
        assert_eq!(p.len(), 49);
        assert!(p.contains(&BigInt::from(-2)));
    }

    #[test]
    fn chi_sum_examples() {
        let e = chi_sum(&set(4, &[0, 2]), CharacterIndex::new(1, z(4))).unwrap();
        assert_eq!(e.coeffs(), &[1, 0, 1, 0]);
        let a = set(9, &[1, 4, 5, 8]);
        let e = chi_sum(&a, CharacterIndex::new(0, z(9))).unwrap();
        assert_eq!(e.coeffs()[0], 4);
        let e = chi_sum(&set(12, &[0, 6]), CharacterIndex::new(1, z(12))).unwrap();
        let mut expected = vec![0; 12];
        expected[0] = 1;
        expected[6] = 1;
        assert_eq!(e.coeffs(), expected.as_slice());
        assert!(chi_sum(&set(4, &[0]), CharacterIndex::new(1, z(5))).is_err());
    }

    #[test]
    fn zero_test_examples() {
        assert!(CycloElement::new(z(4), vec![1, 0, 1, 0])
            .unwrap()
            .is_zero()
            .unwrap());
        assert!(!CycloElement::new(z(4), vec![1, 1, 0, 0])
            .unwrap()
            .is_zero()
            .unwrap());
        for omega in 2..=60 {
            let all = CycloElement::new(z(omega), vec![1; omega]).unwrap();
            assert!(all.is_zero().unwrap());
        }
        assert!(CycloElement::new(z(5), vec![0; 5])
            .unwrap()
            .is_zero()
            .unwrap());
        assert!(!CycloElement::new(z(1), vec![3]).unwrap().is_zero().unwrap());
        assert!(CycloElement::new(z(3), vec![1, 2]).is_err());
    }

    #[test]
    fn zero_test_with_large_coefficients_is_exact() {
        let omega = z(6);
        // 2^40 (1 + ζ^3) = 0 ; 2^40 + 1 + 2^40 ζ^3 = 1
        let big = 1i64 << 40;
        assert!(CycloElement::new(omega, vec![big, 0, 0, big, 0, 0])
            .unwrap()
            .is_zero()
            .unwrap());
        assert!(!CycloElement::new(omega, vec![big + 1, 0, 0, big, 0, 0])
            .unwrap()
            .is_zero()
            .unwrap());
        let max = i64::MAX;
        let e = CycloElement::new(z(105), {
            let mut v = vec![0; 105];
            v[104] = max;
            v[0] = max;
            v
        })
        .unwrap();
        assert!(!e.is_zero().unwrap());
    }

    #[test]
    fn value_equality() {
        let a = chi_sum(&set(12, &[1, 7]), CharacterIndex::new(1, z(12))).unwrap();
        let b = chi_sum(&set(12, &[4, 10]), CharacterIndex::new(1, z(12))).unwrap();
        // both vanish
        assert!(a.value_eq(&b).unwrap());
        let c = chi_sum(&set(12, &[0, 4, 8]), CharacterIndex::new(1, z(12))).unwrap();
        assert!(a.value_eq(&c).unwrap());
        let d = chi_sum(&set(12, &[0]), CharacterIndex::new(1, z(12))).unwrap();
        assert!(!a.value_eq(&d).unwrap());
        assert!(d
            .rotate(3)
            .value_eq(&chi_sum(&set(12, &[3]), CharacterIndex::new(1, z(12))).unwrap())
            .unwrap());
    }

    #[test]
    fn annihilator_examples() {
        for omega in 1..=16 {
            let ann: Vec<usize> = annihilator(&ResidueSet::full(z(omega)))
                .unwrap()
                .into_iter()
                .map(CharacterIndex::t)
                .collect();
            assert_eq!(ann, (1..omega).collect::<Vec<_>>());
        }
        let ts = |a: &ResidueSet| -> Vec<usize> {
            annihilator(a)
                .unwrap()
                .into_iter()
                .map(CharacterIndex::t)
                .collect()
        };
        assert_eq!(ts(&set(4, &[0, 2])), vec![1, 3]);
        assert_eq!(ts(&set(4, &[0, 1])), vec![2]);
        assert_eq!(annihilator(&ResidueSet::empty(z(4))), Err(Error::EmptySet));
    }

    #[test]
    fn annihilator_is_translation_invariant() {
        for omega in 1..=12usize {
            for mask in 1u32..(1 << omega) {
                let a =
                    ResidueSet::from_members(z(omega), (0..omega).filter(|i| mask >> i & 1 == 1))
                        .unwrap();
                let ann = annihilator(&a).unwrap();
                for g in [1, 5] {
                    assert_eq!(annihilator(&a.translate(g)).unwrap(), ann);
                }
            }
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            kernel(CharacterIndex::new(0, z(12))),
            ResidueSet::full(z(12))
        );
        assert_eq!(kernel(CharacterIndex::new(1, z(12))), set(12, &[0]));
        assert_eq!(
            kernel(CharacterIndex::new(4, z(12))),
            set(12, &[0, 3, 6, 9])
        );
        for t in 0..30 {
            let chi = CharacterIndex::new(t, z(30));
            let brute: Vec<usize> = (0..30).filter(|g| (g * t as usize) % 30 == 0).collect();
            assert_eq!(kernel(chi).to_vec(), brute);
            assert_eq!(kernel(chi) == set(30, &[0]), chi.is_faithful());
        }
    }

    #[test]
    fn inclusion_examples() {
        let h = set(12, &[0, 6]);
        let k = set(12, &[0, 4, 8]);
        let a = set(12, &[0, 6, 1, 5, 9]);
        assert!(annihilator_inclusion(&h, &k, &a).unwrap());
        let trivial = set(12, &[0]);
        assert!(annihilator_inclusion(&trivial, &trivial, &a).unwrap());
        assert!(!annihilator_inclusion(&h, &k, &set(12, &[0, 1])).unwrap());
        assert_eq!(
            annihilator_inclusion(&set(12, &[0, 1]), &k, &a),
            Err(Error::NotSubgroup("H"))
        );
    }

    #[test]
    fn decompose_examples() {
        let h = set(12, &[0, 6]);
        let k = set(12, &[0, 4, 8]);
        let (e, f) = decompose_union(&h, &k, &set(12, &[0, 6, 1, 5, 9]))
            .unwrap()
            .unwrap();
        assert_eq!((e, f), (set(12, &[0]), set(12, &[1])));
        let zero = set(1, &[0]);
        let (e, f) = decompose_union(&zero, &zero, &zero).unwrap().unwrap();
        assert_eq!((e, f), (zero.clone(), ResidueSet::empty(z(1))));
        assert_eq!(decompose_union(&h, &k, &set(12, &[0, 1])).unwrap(), None);
        let big = set(100, &[0]);
        assert!(matches!(
            decompose_union(&big, &big, &big),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn pq_examples() {
        let sig = factorize_integer(36);
        let v = pq_periodicity_check(&cyclic_subgroup(6, z(36)), &sig).unwrap();
        assert_eq!(v.faithful_annihilator, Some(1));
        assert!(v.periodic && v.implication_holds && v.faithful_characters_agree);

        let v = pq_periodicity_check(&set(36, &[0, 6, 12, 18, 24, 31]), &sig).unwrap();
        assert_eq!(v.faithful_annihilator, None);
        assert!(v.implication_holds);

        let b = set(36, &[1, 7, 13, 19, 25, 31]);
        let v = pq_periodicity_check(&b, &sig).unwrap();
        assert_eq!(v.faithful_annihilator, Some(1));
        assert!(v.periodic);

        assert!(pq_periodicity_check(&set(8, &[0, 1]), &factorize_integer(8)).is_err());
        assert!(matches!(
            pq_periodicity_check(&set(36, &[0, 1]), &sig),
            Err(Error::CardinalityMismatch { .. })
        ));
    }
}
