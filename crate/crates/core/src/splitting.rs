//! Splittings `G \ {0} = MS` of `Z_g` by an integer multiplier set, and the
//! bridge between multiplier sets inside `⟨m⟩ ≤ Z_p*` and exponent sets in
//! `Z_{ord_p(m)}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::{factorize_integer, gcd, is_prime, multiplicative_order, Modulus, ResidueSet};
use crate::error::{Error, Result};
use crate::factorization::is_complete_residue_system;

/// Default ceiling on the group order for splitting searches.
pub const DEFAULT_SPLIT_BOUND: usize = 10_000;

/// Nonzero, duplicate-free integers, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MultiplierSet {
    values: Vec<i64>,
}

impl MultiplierSet {
    pub fn new<I: IntoIterator<Item = i64>>(values: I) -> Result<Self> {
        let mut values: Vec<i64> = values.into_iter().collect();
        if values.is_empty() {
            return Err(Error::EmptySet);
        }
        if values.contains(&0) {
            return Err(Error::Precondition("0 cannot be a multiplier".into()));
        }
        values.sort_unstable();
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMultiplier(w[0]));
        }
        Ok(MultiplierSet { values })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, v: i64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    /// Multipliers reduced into `[0, g)`; a negative `m` acts as `−((−m)s)`,
    /// which is the same as its residue.
    pub fn residues(&self, g: Modulus) -> Vec<usize> {
        self.values.iter().map(|&m| g.reduce(m)).collect()
    }
}

/// A certified splitting `Z_g \ {0} = MS`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingWitness {
    pub g_mod: Modulus,
    pub multipliers: MultiplierSet,
    pub splitting_set: ResidueSet,
}

impl SplittingWitness {
    pub fn certify(m: &MultiplierSet, s: &ResidueSet) -> Option<Self> {
        is_splitting(m, s).then(|| SplittingWitness {
            g_mod: s.modulus(),
            multipliers: m.clone(),
            splitting_set: s.clone(),
        })
    }
}

/// True iff every nonzero element of `Z_g` (with `g` the modulus of `S`) is
/// `m·s` for exactly one pair and 0 is never hit.
pub fn is_splitting(m: &MultiplierSet, s: &ResidueSet) -> bool {
    let g = s.modulus();
    if s.contains(0) || m.len() * s.len() != g.get() - 1 {
        return false;
    }
    let mut hit = vec![false; g.get()];
    hit[0] = true;
    for r in m.residues(g) {
        for x in s.iter() {
            let y = r * x % g.get();
            if hit[y] {
                return false;
            }
            hit[y] = true;
        }
    }
    true
}

pub fn is_nonsingular(m: &MultiplierSet, g_mod: Modulus) -> bool {
    m.values().iter().all(|&v| gcd(v, g_mod.get() as i64) == 1)
}

fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128 % n as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

struct SplitSearch {
    g: usize,
    residues: Vec<usize>,
    limit: usize,
}

impl SplitSearch {
    /// All `s` with `m·s ≡ x (mod g)`, ascending.
    fn preimages(&self, m: usize, x: usize) -> Vec<usize> {
        let g = self.g as u64;
        let d = gcd(m as i64, g as i64);
        if x as u64 % d != 0 {
            return Vec::new();
        }
        let step = g / d;
        let inv = inverse_mod(m as u64 / d % step, step).unwrap_or(0);
        let s0 = (x as u64 / d) % step * inv % step;
        (0..d).map(|j| (s0 + j * step) as usize).collect()
    }

    /// Products `M·s` if they are nonzero, distinct and all still free.
    fn image(&self, s: usize, covered: &[bool]) -> Option<Vec<usize>> {
        let mut image = Vec::with_capacity(self.residues.len());
        for &r in &self.residues {
            let y = r * s % self.g;
            if covered[y] || image.contains(&y) {
                return None;
            }
            image.push(y);
        }
        Some(image)
    }

    fn branches(&self, covered: &[bool]) -> Option<Vec<(usize, Vec<usize>)>> {
        let x = covered.iter().position(|&c| !c)?;
        let mut out = Vec::new();
        for &r in &self.residues {
            for s in self.preimages(r, x) {
                if let Some(image) = self.image(s, covered) {
                    if !out.iter().any(|(t, _)| *t == s) {
                        out.push((s, image));
                    }
                }
            }
        }
        Some(out)
    }

    fn run(
        &self,
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        let Some(branches) = self.branches(covered) else {
            out.push(chosen.clone());
            return out.len() >= self.limit;
        };
        for (s, image) in branches {
            image.iter().for_each(|&y| covered[y] = true);
            chosen.push(s);
            let done = self.run(covered, chosen, out);
            chosen.pop();
            image.iter().for_each(|&y| covered[y] = false);
            if done {
                return true;
            }
        }
        false
    }
}

/// Splitting sets for `M` in `Z_g`, found by backtracking on the smallest
/// unrepresented nonzero element.
///
/// As with complement search, a finite `max_results` keeps the first hits in
/// depth-first order; the list is returned sorted.
pub fn search_splitting_sets(
    m: &MultiplierSet,
    g_mod: Modulus,
    max_results: usize,
) -> Result<Vec<ResidueSet>> {
    search_splitting_sets_bounded(m, g_mod, max_results, DEFAULT_SPLIT_BOUND)
}

pub fn search_splitting_sets_bounded(
    m: &MultiplierSet,
    g_mod: Modulus,
    max_results: usize,
    bound: usize,
) -> Result<Vec<ResidueSet>> {
    let g = g_mod.get();
    if g > bound {
        return Err(Error::BoundExceeded {
            what: "group order",
            value: g as u64,
            bound: bound as u64,
        });
    }
    if (g - 1) % m.len() != 0 || max_results == 0 {
        return Ok(Vec::new());
    }
    let search = SplitSearch {
        g,
        residues: m.residues(g_mod),
        limit: max_results,
    };
    let mut covered = vec![false; g];
    covered[0] = true;

    let raw: Vec<Vec<usize>> = match (max_results == usize::MAX, search.branches(&covered)) {
        (_, None) => vec![Vec::new()],
        (true, Some(branches)) => branches
            .into_par_iter()
            .map(|(s, image)| {
                let mut c = covered.clone();
                image.iter().for_each(|&y| c[y] = true);
                let mut out = Vec::new();
                search.run(&mut c, &mut vec![s], &mut out);
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect(),
        (false, Some(_)) => {
            let mut out = Vec::new();
            search.run(&mut covered, &mut Vec::new(), &mut out);
            out
        }
    };
    let mut sets = raw
        .into_iter()
        .map(|s| ResidueSet::from_members(g_mod, s))
        .collect::<Result<Vec<_>>>()?;
    sets.sort();
    Ok(sets)
}

pub fn splits(m: &MultiplierSet, g_mod: Modulus) -> Result<bool> {
    Ok(!search_splitting_sets(m, g_mod, 1)?.is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionVerdict {
    /// A prime dividing every multiplier other than 1 and the group order.
    pub prime: Option<u64>,
    pub obstructed: bool,
}

/// A prime `q` dividing every `m ≠ 1` in `M` and `|G|` rules out any splitting.
pub fn check_common_divisor_obstruction(
    m: &MultiplierSet,
    g_mod: Modulus,
) -> Result<ObstructionVerdict> {
    if !m.contains(1) || m.len() < 2 {
        return Err(Error::Precondition("need 1 ∈ M and |M| > 1".into()));
    }
    let others: Vec<u64> = m
        .values()
        .iter()
        .filter(|&&v| v != 1)
        .map(|v| v.unsigned_abs())
        .collect();
    let prime = factorize_integer(g_mod.get() as u64)
        .primes()
        .find(|&q| others.iter().all(|&v| v % q == 0));
    Ok(ObstructionVerdict {
        prime,
        obstructed: prime.is_some(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionVerdict {
    pub splits_group: bool,
    /// `(p, M splits Z_p)` for each prime divisor `p`.
    pub prime_splits: Vec<(u64, bool)>,
    pub agree: bool,
}

/// Compares "M splits Z_g" with "M splits Z_p for every prime p | g".
pub fn nonsingular_reduction_check(m: &MultiplierSet, g_mod: Modulus) -> Result<ReductionVerdict> {
    if !is_nonsingular(m, g_mod) {
        return Err(Error::Precondition(format!(
            "multiplier set is singular modulo {}",
            g_mod.get()
        )));
    }
    let splits_group = splits(m, g_mod)?;
    let prime_splits = factorize_integer(g_mod.get() as u64)
        .primes()
        .map(|p| Ok((p, splits(m, Modulus::new(p as usize)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let all_primes = prime_splits.iter().all(|&(_, s)| s);
    Ok(ReductionVerdict {
        splits_group,
        prime_splits,
        agree: splits_group == all_primes,
    })
}

fn require_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if p as usize > DEFAULT_SPLIT_BOUND {
        return Err(Error::BoundExceeded {
            what: "prime",
            value: p,
            bound: DEFAULT_SPLIT_BOUND as u64,
        });
    }
    Ok(())
}

/// `⟨M⟩ ≤ Z_p*`, ascending.
pub fn generated_subgroup(residues: &[usize], p: usize) -> Vec<usize> {
    let mut member = vec![false; p];
    member[1] = true;
    let mut frontier = vec![1usize];
    while let Some(x) = frontier.pop() {
        for &r in residues {
            let y = x * r % p;
            if !member[y] {
                member[y] = true;
                frontier.push(y);
            }
        }
    }
    (0..p).filter(|&x| member[x]).collect()
}

/// First `S ⊆ H` with every element of the subgroup `H ≤ Z_p*` uniquely
/// `m·s`, `m ∈ M`, `s ∈ S`. `M` must lie inside `H`.
pub fn split_subgroup(residues: &[usize], subgroup: &[usize], p: usize) -> Option<Vec<usize>> {
    if subgroup.len() % residues.len() != 0 {
        return None;
    }
    let mut in_h = vec![false; p];
    subgroup.iter().for_each(|&h| in_h[h] = true);
    if residues.iter().any(|&r| !in_h[r]) {
        return None;
    }
    let inverses: Vec<usize> = residues
        .iter()
        .map(|&r| inverse_mod(r as u64, p as u64).map(|v| v as usize))
        .collect::<Option<_>>()?;
    // covered[x] is true for elements outside H and for represented ones.
    let mut covered: Vec<bool> = in_h.iter().map(|&h| !h).collect();
    let mut chosen = Vec::new();
    fn run(
        residues: &[usize],
        inverses: &[usize],
        p: usize,
        covered: &mut [bool],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let Some(x) = covered.iter().position(|&c| !c) else {
            return true;
        };
        for &inv in inverses {
            let s = x * inv % p;
            let image: Vec<usize> = residues.iter().map(|&r| r * s % p).collect();
            let fresh = image
                .iter()
                .enumerate()
                .all(|(i, &y)| !covered[y] && !image[..i].contains(&y));
            if !fresh {
                continue;
            }
            image.iter().for_each(|&y| covered[y] = true);
            chosen.push(s);
            if run(residues, inverses, p, covered, chosen) {
                return true;
            }
            chosen.pop();
            image.iter().for_each(|&y| covered[y] = false);
        }
        false
    }
    run(residues, &inverses, p, &mut covered, &mut chosen).then(|| {
        chosen.sort_unstable();
        chosen
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionVerdict {
    pub generated: Vec<usize>,
    pub splits_field: bool,
    pub splits_generated: bool,
    pub agree: bool,
}

/// Compares "M splits Z_p" with "M splits ⟨M⟩ ≤ Z_p*".
pub fn subgroup_restriction_check(m: &MultiplierSet, p: u64) -> Result<RestrictionVerdict> {
    require_prime(p)?;
    let zp = Modulus::new(p as usize)?;
    let residues = m.residues(zp);
    if residues.contains(&0) {
        return Err(Error::Precondition(format!(
            "a multiplier vanishes modulo {p}"
        )));
    }
    let generated = generated_subgroup(&residues, p as usize);
    let splits_field = splits(m, zp)?;
    let mut distinct = residues.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let splits_generated = distinct.len() == residues.len()
        && split_subgroup(&residues, &generated, p as usize).is_some();
    Ok(RestrictionVerdict {
        generated,
        splits_field,
        splits_generated,
        agree: splits_field == splits_generated,
    })
}

/// Exponent set `{e : base^e ≡ m_i (mod p)} ⊆ Z_{ord_p(base)}`, or `None`
/// if some multiplier lies outside `⟨base⟩`.
pub fn discrete_log_set(m: &MultiplierSet, base: i64, p: u64) -> Result<Option<ResidueSet>> {
    let order = multiplicative_order(base, p)? as usize;
    let omega = Modulus::new(order)?;
    let mut log = vec![usize::MAX; p as usize];
    let b = base.rem_euclid(p as i64) as u64;
    let mut x = 1u64;
    for e in 0..order {
        log[x as usize] = e;
        x = x * b % p;
    }
    let mut out = ResidueSet::empty(omega);
    for v in m.values() {
        match log[v.rem_euclid(p as i64) as usize] {
            usize::MAX => return Ok(None),
            e => out.insert(e),
        }
    }
    Ok(Some(out))
}

/// Exponents `0..n−k−1` followed by the tail.
pub fn prefix_exponents(n: usize, k: usize, tail: &[u64]) -> Result<Vec<u64>> {
    if tail.len() != k || k > n {
        return Err(Error::Precondition(format!(
            "tail of length {} does not fit n = {n}, k = {k}",
            tail.len()
        )));
    }
    Ok((0..(n - k) as u64).chain(tail.iter().copied()).collect())
}

/// `{1, m, …, m^{n−k−1}} ∪ {m^i : i ∈ tail}` as integers.
pub fn prefix_multiplier_family(m: i64, n: usize, k: usize, tail: &[u64]) -> Result<MultiplierSet> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "multiplier base {m} must be >= 2"
        )));
    }
    let values = prefix_exponents(n, k, tail)?
        .into_iter()
        .map(|e| {
            u32::try_from(e)
                .ok()
                .and_then(|e| m.checked_pow(e))
                .ok_or(Error::Overflow("multiplier power"))
        })
        .collect::<Result<Vec<_>>>()?;
    MultiplierSet::new(values)
}

/// The same family with each power reduced mod `p`; coinciding residues are
/// rejected as duplicates.
pub fn prefix_multiplier_family_mod(
    m: i64,
    n: usize,
    k: usize,
    tail: &[u64],
    p: u64,
) -> Result<MultiplierSet> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "multiplier base {m} must be >= 2"
        )));
    }
    let values = prefix_exponents(n, k, tail)?
        .into_iter()
        .map(|e| pow_mod(m, e, p) as i64);
    MultiplierSet::new(values)
}

fn pow_mod(base: i64, mut e: u64, p: u64) -> u64 {
    let p128 = p as u128;
    let mut b = base.rem_euclid(p as i64) as u128;
    let mut acc = 1 % p128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p128;
        }
        b = b * b % p128;
        e >>= 1;
    }
    acc as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    pub n: usize,
    pub k: usize,
    pub witness: SplittingWitness,
    pub exponent_set: ResidueSet,
    pub splitting_verified: bool,
    pub exponent_set_is_crs: bool,
}

/// The `n = 2k` family `{1, …, m^{k−1}, m^{2k}, …, m^{3k−1}}` in `Z_p`, split
/// by `⋃ a_i(⟨m^{4k}⟩ ∪ m^k⟨m^{4k}⟩)` over coset representatives `a_i` of
/// `⟨m⟩` in `Z_p*`. Its exponent set is not a complete residue system mod `n`.
pub fn tightness_construction(k: usize, p: u64, m: i64) -> Result<TightnessReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    require_prime(p)?;
    let order = multiplicative_order(m, p)? as usize;
    if order % (4 * k) != 0 {
        return Err(Error::Precondition(format!(
            "4k = {} does not divide ord_{p}({m}) = {order}",
            4 * k
        )));
    }
    let n = 2 * k;
    let tail: Vec<u64> = (n as u64..(n + k) as u64).collect();
    let multipliers = prefix_multiplier_family_mod(m, n, k, &tail, p)?;

    let pu = p as usize;
    let step = pow_mod(m, 4 * k as u64, p) as usize;
    let shift = pow_mod(m, k as u64, p) as usize;
    let inner = generated_subgroup(&[step], pu);
    let core: Vec<usize> = inner
        .iter()
        .copied()
        .chain(inner.iter().map(|&x| x * shift % pu))
        .collect();

    let span = generated_subgroup(&[m.rem_euclid(p as i64) as usize], pu);
    let mut seen = vec![false; pu];
    let mut splitting = Vec::new();
    for a in 1..pu {
        if seen[a] {
            continue;
        }
        span.iter().for_each(|&h| seen[a * h % pu] = true);
        splitting.extend(core.iter().map(|&c| a * c % pu));
    }
    let zp = Modulus::new(pu)?;
    let splitting_set = ResidueSet::from_members(zp, splitting)?;
    let splitting_verified = is_splitting(&multipliers, &splitting_set);
    let exponent_set = discrete_log_set(&multipliers, m, p)?
        .ok_or_else(|| Error::Precondition("family escapes ⟨m⟩".into()))?;
    let exponent_set_is_crs =
        exponent_set.len() == n && is_complete_residue_system(&exponent_set, n)?;
    Ok(TightnessReport {
        n,
        k,
        witness: SplittingWitness {
            g_mod: zp,
            multipliers,
            splitting_set,
        },
        exponent_set,
        splitting_verified,
        exponent_set_is_crs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(g: usize) -> Modulus {
        Modulus::new(g).unwrap()
    }

    fn set(g: usize, members: &[usize]) -> ResidueSet {
        ResidueSet::from_members(z(g), members.iter().copied()).unwrap()
    }

    fn ms(v: &[i64]) -> MultiplierSet {
        MultiplierSet::new(v.iter().copied()).unwrap()
    }

    fn brute_splitting_sets(m: &MultiplierSet, g: usize) -> Vec<ResidueSet> {
        let size = (g - 1) / m.len();
        if (g - 1) % m.len() != 0 {
            return Vec::new();
        }
        let mut out: Vec<ResidueSet> = itertools::Itertools::combinations(1..g, size)
            .map(|c| set(g, &c))
            .filter(|s| is_splitting(m, s))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn multiplier_set_invariants() {
        assert_eq!(ms(&[4, 1]).values(), &[1, 4]);
        assert_eq!(
            MultiplierSet::new([1, 1]),
            Err(Error::DuplicateMultiplier(1))
        );
        assert!(MultiplierSet::new([0, 1]).is_err());
        assert_eq!(MultiplierSet::new([]), Err(Error::EmptySet));
    }

    #[test]
    fn is_splitting_examples() {
        assert!(is_splitting(&ms(&[1, 2, 3, 4]), &set(5, &[1])));
        assert!(is_splitting(&ms(&[1, 4]), &set(5, &[1, 2])));
        assert!(!is_splitting(&ms(&[1, 2]), &set(5, &[1, 3])));
        assert!(!is_splitting(&ms(&[1, 2]), &set(5, &[0, 1])));
        assert!(is_splitting(&ms(&[1, -1]), &set(5, &[1, 2])));
    }

    #[test]
    fn search_examples() {
        // {2,3} splits too: 2·{2,3} = {4,1}.
        assert_eq!(
            search_splitting_sets(&ms(&[1, 2]), z(5), usize::MAX).unwrap(),
            vec![set(5, &[1, 4]), set(5, &[2, 3])]
        );
        let nine = search_splitting_sets(&ms(&[1, 2]), z(9), usize::MAX).unwrap();
        assert!(nine.contains(&set(9, &[1, 3, 4, 7])));
        let p = 7;
        let full = ms(&(1..p as i64).collect::<Vec<_>>());
        let all = search_splitting_sets(&full, z(p), usize::MAX).unwrap();
        assert_eq!(all, (1..p).map(|s| set(p, &[s])).collect::<Vec<_>>());
        assert_eq!(
            search_splitting_sets(&ms(&[1, 2, 3]), z(9), usize::MAX).unwrap(),
            Vec::<ResidueSet>::new()
        );
        assert!(matches!(
            search_splitting_sets(&ms(&[1]), z(10_001), 1),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn search_matches_brute_force() {
        let families: &[&[i64]] = &[
            &[1, 2],
            &[1, 3],
            &[1, -1],
            &[1, 2, 4],
            &[1, 2, 3],
            &[1, 5],
            &[1, 3, 9],
            &[2, 3],
            &[1, 4, 6],
        ];
        for g in 2..=26 {
            for fam in families {
                let m = ms(fam);
                let found = search_splitting_sets(&m, z(g), usize::MAX).unwrap();
                assert_eq!(found, brute_splitting_sets(&m, g), "M={fam:?} g={g}");
                for s in &found {
                    assert_eq!(m.len() * s.len(), g - 1);
                }
                let first = search_splitting_sets(&m, z(g), 1).unwrap();
                assert_eq!(first.len(), found.len().min(1));
            }
        }
    }

    #[test]
    fn nonsingular_examples() {
        assert!(is_nonsingular(&ms(&[1, 2]), z(9)));
        assert!(!is_nonsingular(&ms(&[1, 3]), z(9)));
        assert!(is_nonsingular(&ms(&[1, -1]), z(5)));
    }

    #[test]
    fn obstruction_examples() {
        let v = check_common_divisor_obstruction(&ms(&[1, 2, 4]), z(8)).unwrap();
        assert_eq!(v.prime, Some(2));
        assert!(search_splitting_sets(&ms(&[1, 2, 4]), z(8), usize::MAX)
            .unwrap()
            .is_empty());
        assert!(
            !check_common_divisor_obstruction(&ms(&[1, 2, 4]), z(9))
                .unwrap()
                .obstructed
        );
        let v = check_common_divisor_obstruction(&ms(&[1, 3, 9]), z(21)).unwrap();
        assert_eq!(v.prime, Some(3));
        assert!(search_splitting_sets(&ms(&[1, 3, 9]), z(21), usize::MAX)
            .unwrap()
            .is_empty());
        assert!(check_common_divisor_obstruction(&ms(&[2, 4]), z(8)).is_err());
        assert!(check_common_divisor_obstruction(&ms(&[1]), z(8)).is_err());
    }

    #[test]
    fn obstruction_forbids_splitting_up_to_50() {
        let families: Vec<Vec<i64>> = vec![
            vec![1, 2],
            vec![1, 2, 4],
            vec![1, 3],
            vec![1, 3, 9],
            vec![1, 6],
            vec![1, 2, 6],
            vec![1, 5, 25],
            vec![1, 4, 8, 12],
            vec![1, 10],
            vec![1, 7, 14],
        ];
        for g in 2..=50 {
            for fam in &families {
                let m = ms(fam);
                if check_common_divisor_obstruction(&m, z(g))
                    .unwrap()
                    .obstructed
                {
                    assert!(!splits(&m, z(g)).unwrap(), "M={fam:?} splits Z_{g}");
                }
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let v = nonsingular_reduction_check(&ms(&[1, 2]), z(9)).unwrap();
        assert!(v.splits_group && v.agree);
        assert_eq!(v.prime_splits, vec![(3, true)]);
        let v = nonsingular_reduction_check(&ms(&[1, 2]), z(5)).unwrap();
        assert!(v.splits_group && v.agree);
        let v = nonsingular_reduction_check(&ms(&[1, 2, 3]), z(25)).unwrap();
        assert!(!v.splits_group && v.agree);
        assert!(nonsingular_reduction_check(&ms(&[1, 3]), z(9)).is_err());
    }

    #[test]
    fn reduction_agrees_on_small_groups() {
        let families: &[&[i64]] = &[
            &[1, 2],
            &[1, 3],
            &[1, -1],
            &[1, 2, 4],
            &[1, 4],
            &[1, 2, 3],
            &[1, 5, 7],
        ];
        for g in 2..=60 {
            for fam in families {
                let m = ms(fam);
                if is_nonsingular(&m, z(g)) {
                    assert!(
                        nonsingular_reduction_check(&m, z(g)).unwrap().agree,
                        "M={fam:?} g={g}"
                    );
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let v = subgroup_restriction_check(&ms(&[1, 4]), 5).unwrap();
        assert_eq!(v.generated, vec![1, 4]);
        assert!(v.splits_field && v.splits_generated && v.agree);
        let v = subgroup_restriction_check(&ms(&[1, 2]), 7).unwrap();
        assert_eq!(v.generated, vec![1, 2, 4]);
        assert!(!v.splits_field && !v.splits_generated && v.agree);
        for p in [2, 3, 5, 11] {
            let v = subgroup_restriction_check(&ms(&[1]), p).unwrap();
            assert!(v.splits_field && v.splits_generated);
        }
        assert!(subgroup_restriction_check(&ms(&[1, 5]), 5).is_err());
        assert!(subgroup_restriction_check(&ms(&[1, 2]), 9).is_err());
    }

    #[test]
    fn restriction_agrees_for_small_primes() {
        for p in [3u64, 5, 7, 11, 13, 17, 19] {
            for a in 1..p as i64 {
                for b in (a + 1)..p as i64 {
                    let m = ms(&[1, a, b]
                        .iter()
                        .copied()
                        .filter(|&x| x != 1 || a != 1)
                        .collect::<Vec<_>>());
                    let v = subgroup_restriction_check(&m, p).unwrap();
                    assert!(v.agree, "M={:?} p={p}", m.values());
                }
            }
        }
    }

    #[test]
    fn dlog_examples() {
        assert_eq!(
            discrete_log_set(&ms(&[1, 4]), 2, 5).unwrap(),
            Some(set(4, &[0, 2]))
        );
        assert_eq!(
            discrete_log_set(&ms(&[1, 2, 4]), 2, 5).unwrap(),
            Some(set(4, &[0, 1, 2]))
        );
        assert_eq!(
            discrete_log_set(&ms(&[1, 3]), 2, 5).unwrap(),
            Some(set(4, &[0, 3]))
        );
        assert_eq!(discrete_log_set(&ms(&[1, 3]), 2, 7).unwrap(), None);
        assert!(matches!(
            discrete_log_set(&ms(&[1]), 5, 5),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn prefix_family_examples() {
        assert_eq!(
            prefix_multiplier_family(2, 3, 1, &[2]).unwrap().values(),
            &[1, 2, 4]
        );
        assert_eq!(
            prefix_multiplier_family(2, 2, 1, &[2]).unwrap().values(),
            &[1, 4]
        );
        assert_eq!(
            prefix_multiplier_family(3, 3, 1, &[5]).unwrap().values(),
            &[1, 3, 243]
        );
        assert_eq!(
            prefix_multiplier_family(2, 3, 1, &[1]),
            Err(Error::DuplicateMultiplier(2))
        );
        assert!(prefix_multiplier_family(2, 3, 2, &[1]).is_err());
        assert!(prefix_multiplier_family(1, 3, 1, &[4]).is_err());
        assert_eq!(
            prefix_multiplier_family(10, 2, 1, &[40]),
            Err(Error::Overflow("multiplier power"))
        );
    }

    #[test]
    fn tightness_examples() {
        let r = tightness_construction(1, 5, 2).unwrap();
        assert_eq!(r.witness.multipliers.values(), &[1, 4]);
        assert_eq!(r.witness.splitting_set, set(5, &[1, 2]));
        assert!(r.splitting_verified);
        assert_eq!(r.exponent_set, set(4, &[0, 2]));
        assert!(!r.exponent_set_is_crs);

        let r = tightness_construction(1, 17, 3).unwrap();
        assert!(r.splitting_verified && !r.exponent_set_is_crs);
        assert!(
            search_splitting_sets(&r.witness.multipliers, z(17), usize::MAX)
                .unwrap()
                .contains(&r.witness.splitting_set)
        );

        let r = tightness_construction(2, 17, 3).unwrap();
        // {1, 3, 3^4, 3^5} mod 17
        assert_eq!(r.witness.multipliers.values(), &[1, 3, 5, 13]);
        assert!(r.splitting_verified && !r.exponent_set_is_crs);
        assert!(brute_splitting_sets(&r.witness.multipliers, 17).contains(&r.witness.splitting_set));

        assert!(tightness_construction(1, 7, 2).is_err());
        assert!(tightness_construction(1, 9, 2).is_err());
    }

    #[test]
    fn tightness_holds_wherever_defined() {
        for p in (2..200u64).filter(|&p| is_prime(p)) {
            for m in 2..p as i64 {
                let order = multiplicative_order(m, p).unwrap() as usize;
                for k in (1..=order / 4).filter(|k| order % (4 * k) == 0) {
                    let r = tightness_construction(k, p, m).unwrap();
                    assert!(r.splitting_verified, "k={k} p={p} m={m}");
                    assert!(!r.exponent_set_is_crs);
                    assert_eq!(
                        r.witness.multipliers.len() * r.witness.splitting_set.len(),
                        p as usize - 1
                    );
                }
            }
        }
    }
}
