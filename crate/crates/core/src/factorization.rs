//! Factorizations `Z_ω = A + B`: the unique-sum predicate, complete residue
//! systems, stable subgroups, and the exact-cover complement search.

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::{cyclic_subgroup, gcd, Modulus, ResidueSet};
use crate::error::{Error, Result};

/// Default ceiling on `ω` for [`find_complements`].
pub const DEFAULT_SEARCH_BOUND: usize = 256;

/// A certified factorization `Z_ω = A + B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationWitness {
    omega: Modulus,
    a: ResidueSet,
    b: ResidueSet,
}

impl FactorizationWitness {
    /// Returns a witness when `A + B` is a factorization, `None` otherwise.
    pub fn certify(a: &ResidueSet, b: &ResidueSet) -> Result<Option<Self>> {
        Ok(is_factorization(a, b)?.then(|| FactorizationWitness {
            omega: a.modulus(),
            a: a.clone(),
            b: b.clone(),
        }))
    }

    pub fn omega(&self) -> Modulus {
        self.omega
    }

    pub fn a(&self) -> &ResidueSet {
        &self.a
    }

    pub fn b(&self) -> &ResidueSet {
        &self.b
    }
}

/// How often each group element arises as a sum `a + b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumsetProfile {
    pub multiplicity: Vec<u32>,
}

impl SumsetProfile {
    /// First element whose multiplicity is not exactly one.
    pub fn first_defect(&self) -> Option<(usize, u32)> {
        self.multiplicity
            .iter()
            .enumerate()
            .find(|(_, &m)| m != 1)
            .map(|(g, &m)| (g, m))
    }

    pub fn total(&self) -> u64 {
        self.multiplicity.iter().map(|&m| m as u64).sum()
    }
}

fn check_pair(a: &ResidueSet, b: &ResidueSet) -> Result<()> {
    a.same_modulus(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// Cyclic convolution of the two indicator vectors.
pub fn sumset_profile(a: &ResidueSet, b: &ResidueSet) -> Result<SumsetProfile> {
    check_pair(a, b)?;
    let omega = a.omega();
    let mut multiplicity = vec![0u32; omega];
    let b_members = b.to_vec();
    for x in a.iter() {
        for &y in &b_members {
            let s = x + y;
            multiplicity[if s >= omega { s - omega } else { s }] += 1;
        }
    }
    Ok(SumsetProfile { multiplicity })
}

/// True iff every element of `Z_ω` is `a + b` in exactly one way.
pub fn is_factorization(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    check_pair(a, b)?;
    if a.len() * b.len() != a.omega() {
        return Ok(false);
    }
    let mut covered = ResidueSet::empty(a.modulus());
    for y in b.iter() {
        let shifted = a.translate(y as i64);
        if !shifted.is_disjoint(&covered) {
            return Ok(false);
        }
        covered.union_with(&shifted);
    }
    Ok(true)
}

/// True iff the members of `A`, read as integers, hit every residue mod `n` once.
pub fn is_complete_residue_system(a: &ResidueSet, n: usize) -> Result<bool> {
    if a.len() != n {
        return Err(Error::CardinalityMismatch {
            expected: n,
            found: a.len(),
        });
    }
    let mut seen = vec![false; n];
    for x in a.iter() {
        let r = x % n;
        if seen[r] {
            return Ok(false);
        }
        seen[r] = true;
    }
    Ok(true)
}

/// Stable subgroup of a set together with one representative per coset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicityReport {
    pub stabilizer: ResidueSet,
    pub is_periodic: bool,
    pub coset_reps: ResidueSet,
}

pub fn stabilizer(a: &ResidueSet) -> Result<PeriodicityReport> {
    let base = a.least().ok_or(Error::EmptySet)?;
    let mut stab = ResidueSet::empty(a.modulus());
    // Any period g maps base into A, so g ∈ A − base.
    for x in a.iter() {
        let g = x - base;
        if a.translate(g as i64) == *a {
            stab.insert(g);
        }
    }
    let mut reps = ResidueSet::empty(a.modulus());
    let mut seen = ResidueSet::empty(a.modulus());
    for x in a.iter() {
        if !seen.contains(x) {
            reps.insert(x);
            seen.union_with(&stab.translate(x as i64));
        }
    }
    Ok(PeriodicityReport {
        is_periodic: stab.len() > 1,
        stabilizer: stab,
        coset_reps: reps,
    })
}

pub fn is_periodic(a: &ResidueSet) -> Result<bool> {
    Ok(stabilizer(a)?.is_periodic)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplementOptions {
    /// Report only complements that contain 0.
    pub normalized_only: bool,
    pub max_results: usize,
    /// Largest `ω` the search accepts.
    pub bound: usize,
}

impl Default for ComplementOptions {
    fn default() -> Self {
        ComplementOptions {
            normalized_only: true,
            max_results: usize::MAX,
            bound: DEFAULT_SEARCH_BOUND,
        }
    }
}

impl ComplementOptions {
    pub fn all() -> Self {
        ComplementOptions {
            normalized_only: false,
            ..Default::default()
        }
    }

    pub fn first_normalized() -> Self {
        ComplementOptions {
            max_results: 1,
            ..Default::default()
        }
    }
}

struct CoverSearch {
    omega: usize,
    members: Vec<usize>,
    /// `translates[b] = A + b`.
    translates: Vec<ResidueSet>,
    limit: usize,
}

impl CoverSearch {
    fn new(a: &ResidueSet, limit: usize) -> Self {
        let omega = a.omega();
        CoverSearch {
            omega,
            members: a.to_vec(),
            translates: (0..omega).map(|b| a.translate(b as i64)).collect(),
            limit,
        }
    }

    fn branches(&self, covered: &ResidueSet) -> Option<Vec<usize>> {
        let g = covered.first_missing()?;
        Some(
            self.members
                .iter()
                .map(|&x| (g + self.omega - x) % self.omega)
                .filter(|&b| self.translates[b].is_disjoint(covered))
                .collect(),
        )
    }

    /// Depth-first exact cover; returns true once `limit` results are held.
    fn run(
        &self,
        covered: &mut ResidueSet,
        chosen: &mut Vec<usize>,
        out: &mut Vec<ResidueSet>,
    ) -> bool {
        let Some(branches) = self.branches(covered) else {
            let b = ResidueSet::from_members(covered.modulus(), chosen.iter().copied())
                .expect("translates are in range");
            out.push(b);
            return out.len() >= self.limit;
        };
        for b in branches {
            let t = &self.translates[b];
            covered.union_with(t);
            chosen.push(b);
            let done = self.run(covered, chosen, out);
            chosen.pop();
            covered.subtract(t);
            if done {
                return true;
            }
        }
        false
    }

    fn run_from(&self, covered: ResidueSet, chosen: Vec<usize>) -> Vec<ResidueSet> {
        let mut covered = covered;
        let mut chosen = chosen;
        let mut out = Vec::new();
        self.run(&mut covered, &mut chosen, &mut out);
        out
    }
}

/// All `B` with `Z_ω = A + B`, found by exact cover on the smallest
/// uncovered element.
///
/// With a finite `max_results` the first results in depth-first order are
/// kept; the returned list is always sorted by member list. A size that does
/// not divide `ω` yields an empty list.
pub fn find_complements(a: &ResidueSet, options: ComplementOptions) -> Result<Vec<ResidueSet>> {
    let omega = a.omega();
    if omega > options.bound {
        return Err(Error::BoundExceeded {
            what: "omega",
            value: omega as u64,
            bound: options.bound as u64,
        });
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if omega % a.len() != 0 || options.max_results == 0 {
        return Ok(Vec::new());
    }
    let search = CoverSearch::new(a, options.max_results);
    let mut covered = ResidueSet::empty(a.modulus());
    let mut chosen = Vec::new();
    if options.normalized_only {
        covered.union_with(&search.translates[0]);
        chosen.push(0);
    }

    let mut results = if options.max_results == usize::MAX {
        // Fan out over the first branching level; concatenation in branch
        // order matches the sequential traversal.
        match search.branches(&covered) {
            None => search.run_from(covered, chosen),
            Some(branches) => branches
                .into_par_iter()
                .map(|b| {
                    let mut c = covered.clone();
                    c.union_with(&search.translates[b]);
                    let mut ch = chosen.clone();
                    ch.push(b);
                    search.run_from(c, ch)
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect(),
        }
    } else {
        search.run_from(covered, chosen)
    };
    results.sort();
    Ok(results)
}

/// First normalized complement in search order, if `A` is a direct factor.
pub fn normalized_complement(a: &ResidueSet) -> Result<Option<ResidueSet>> {
    Ok(find_complements(a, ComplementOptions::first_normalized())?
        .into_iter()
        .next())
}

pub fn is_direct_factor(a: &ResidueSet) -> Result<bool> {
    Ok(normalized_complement(a)?.is_some())
}

/// Checks that `kA + B` is still a factorization for `gcd(k, |A|) = 1`.
pub fn verify_replacement_by_ka(w: &FactorizationWitness, k: i64) -> Result<bool> {
    let size = w.a.len() as u64;
    if gcd(k, size as i64) != 1 {
        return Err(Error::NotCoprime {
            value: k,
            modulus: size,
        });
    }
    is_factorization(&w.a.dilate(k), &w.b)
}

/// `⟨|A|⟩` when `A` is a complete residue system mod `|A|` and `|A|` divides `ω`.
pub fn canonical_complement(a: &ResidueSet) -> Option<ResidueSet> {
    let n = a.len();
    if n == 0 || a.omega() % n != 0 {
        return None;
    }
    if !is_complete_residue_system(a, n).ok()? {
        return None;
    }
    let b = cyclic_subgroup(n as i64, a.modulus());
    debug_assert!(is_factorization(a, &b).unwrap_or(false));
    Some(b)
}
