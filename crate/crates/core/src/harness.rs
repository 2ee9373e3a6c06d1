//! Exhaustive bounded scans over families of candidate factors and
//! multiplier sets, with self-certifying counterexample records.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::character::pq_periodicity_check;
use crate::cyclic::{
    cyclic_subgroup, factorize_integer, gcd, is_prime, multiplicative_order, Modulus, ResidueSet,
};
use crate::error::{Error, Result};
use crate::factorization::{
    canonical_complement, find_complements, is_complete_residue_system, is_factorization,
    is_periodic, normalized_complement, verify_replacement_by_ka, ComplementOptions,
    FactorizationWitness, DEFAULT_SEARCH_BOUND,
};
use crate::splitting::{
    discrete_log_set, generated_subgroup, prefix_multiplier_family_mod, split_subgroup, splits,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `[0, n−k−1] ∪ tail`
    PrefixTail,
    /// `[0, n−1] \ {i} ∪ {j}`
    Swap,
    /// size-`n` sets with at least `⌈(n+1)/2⌉` members in `[0, n−1]`
    MajorityPrefix,
    Arbitrary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    None,
    MainthmGcdConditions,
    CoprimeSizes,
    PrimePowerOrder,
    PqOrder,
}

/// Which statement a scan tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Mainconj,
    Mainthm,
    Swap,
    Majority,
    Periodicity,
    BSubgroup,
    PrimeFactor,
    PqPeriodic,
    Bridge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Refuted,
    Exploratory,
}

fn parse_token<T: Copy>(text: &str, table: &[(&str, T)], what: &str) -> Result<T> {
    let key = text.trim().replace('-', "_");
    table
        .iter()
        .find(|(name, _)| *name == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| Error::Config(format!("unknown {what} `{}`", text.trim())))
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_token(
            s,
            &[
                ("prefix_tail", Family::PrefixTail),
                ("swap", Family::Swap),
                ("majority_prefix", Family::MajorityPrefix),
                ("arbitrary", Family::Arbitrary),
            ],
            "family",
        )
    }
}

impl FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_token(
            s,
            &[
                ("none", Filter::None),
                ("mainthm_gcd_conditions", Filter::MainthmGcdConditions),
                ("coprime_sizes", Filter::CoprimeSizes),
                ("prime_power_order", Filter::PrimePowerOrder),
                ("pq_order", Filter::PqOrder),
            ],
            "filter",
        )
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_token(
            s,
            &[
                ("mainconj", Check::Mainconj),
                ("mainthm", Check::Mainthm),
                ("swap", Check::Swap),
                ("majority", Check::Majority),
                ("periodicity", Check::Periodicity),
                ("b_subgroup", Check::BSubgroup),
                ("prime_factor", Check::PrimeFactor),
                ("pq_periodic", Check::PqPeriodic),
                ("bridge", Check::Bridge),
            ],
            "check",
        )
    }
}

impl Check {
    pub fn family(self) -> Family {
        match self {
            Check::Mainconj | Check::Mainthm | Check::BSubgroup | Check::Bridge => {
                Family::PrefixTail
            }
            Check::Swap => Family::Swap,
            Check::Majority => Family::MajorityPrefix,
            Check::Periodicity | Check::PrimeFactor | Check::PqPeriodic => Family::Arbitrary,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Mainconj => "mainconj",
            Check::Mainthm => "mainthm",
            Check::Swap => "swap",
            Check::Majority => "majority",
            Check::Periodicity => "periodicity",
            Check::BSubgroup => "b_subgroup",
            Check::PrimeFactor => "prime_factor",
            Check::PqPeriodic => "pq_periodic",
            Check::Bridge => "bridge",
        }
    }
}

/// Inclusive integer range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntRange {
    pub lo: usize,
    pub hi: usize,
}

impl IntRange {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::Config(format!("range {lo}..{hi} is empty")));
        }
        Ok(IntRange { lo, hi })
    }

    pub fn single(v: usize) -> Self {
        IntRange { lo: v, hi: v }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = Error;
    /// `a` or `a..b`, both ends inclusive.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad range bound `{}`", t.trim())))
        };
        match s.split_once("..") {
            Some((lo, hi)) => IntRange::new(num(lo)?, num(hi)?),
            None => Ok(IntRange::single(num(s)?)),
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSpec {
    pub check: Check,
    pub family: Family,
    pub omega: IntRange,
    pub n: IntRange,
    pub k: IntRange,
    pub filters: BTreeSet<Filter>,
    pub allow_tight: bool,
}

impl ScanSpec {
    /// A spec for `check` over the given ranges, with no filters.
    pub fn new(check: Check, omega: IntRange, n: IntRange, k: IntRange) -> Self {
        ScanSpec {
            check,
            family: check.family(),
            omega,
            n,
            k,
            filters: BTreeSet::new(),
            allow_tight: false,
        }
    }

    pub fn with_filter(mut self, filter: Filter) -> Self {
        self.filters.insert(filter);
        self
    }

    pub fn tight(mut self) -> Self {
        self.allow_tight = true;
        self
    }

    /// Parses `key=value` lines; `#` starts a comment. Keys: `check`,
    /// `family`, `omega`, `n`, `k`, `filter` (comma-separated),
    /// `allow_tight`.
    pub fn from_config(text: &str) -> Result<Self> {
        let mut check = None;
        let mut family = None;
        let mut omega = None;
        let mut n = None;
        let mut k = None;
        let mut filters = BTreeSet::new();
        let mut allow_tight = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let value = value.trim();
            match key.trim() {
                "check" => check = Some(value.parse::<Check>()?),
                "family" => family = Some(value.parse::<Family>()?),
                "omega" => omega = Some(value.parse::<IntRange>()?),
                "n" => n = Some(value.parse::<IntRange>()?),
                "k" => k = Some(value.parse::<IntRange>()?),
                "filter" | "filters" => {
                    for f in value.split(',').filter(|f| !f.trim().is_empty()) {
                        filters.insert(f.parse::<Filter>()?);
                    }
                }
                "allow_tight" => {
                    allow_tight = value.parse::<bool>().map_err(|_| {
                        Error::Config(format!("allow_tight must be true or false, got `{value}`"))
                    })?
                }
                other => return Err(Error::Config(format!("unknown key `{other}`"))),
            }
        }
        let family = family
            .or(check.map(Check::family))
            .unwrap_or(Family::PrefixTail);
        let check = check.unwrap_or_else(|| default_check(family, &filters));
        let need = |v: Option<IntRange>, name: &str| {
            v.ok_or_else(|| Error::Config(format!("missing key `{name}`")))
        };
        let spec = ScanSpec {
            check,
            family,
            omega: need(omega, "omega")?,
            n: need(n, "n")?,
            k: k.unwrap_or(IntRange::single(1)),
            filters,
            allow_tight,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.family != self.check.family() {
            return Err(Error::Config(format!(
                "check `{}` needs family {:?}, got {:?}",
                self.check,
                self.check.family(),
                self.family
            )));
        }
        let bound = if self.check == Check::Bridge {
            crate::splitting::DEFAULT_SPLIT_BOUND
        } else {
            DEFAULT_SEARCH_BOUND
        };
        if self.omega.hi > bound {
            return Err(Error::BoundExceeded {
                what: "omega",
                value: self.omega.hi as u64,
                bound: bound as u64,
            });
        }
        if self.omega.lo == 0 || self.n.lo == 0 {
            return Err(Error::Config("omega and n must be positive".into()));
        }
        if self.family == Family::PrefixTail {
            if self.k.lo == 0 {
                return Err(Error::Config("k must be positive".into()));
            }
            if !self.allow_tight && self.n.lo < 2 * self.k.hi + 1 {
                return Err(Error::Config(format!(
                    "prefix_tail needs n >= 2k+1 (n from {}, k up to {}); pass allow_tight to go below",
                    self.n.lo, self.k.hi
                )));
            }
        }
        if self.check == Check::Mainthm && !self.filters.contains(&Filter::MainthmGcdConditions) {
            return Err(Error::Config(
                "mainthm scans need filter mainthm_gcd_conditions".into(),
            ));
        }
        Ok(())
    }

    /// `(n, k)` pairs to visit, in order.
    fn prefix_pairs(&self) -> Vec<(usize, usize)> {
        self.n
            .iter()
            .flat_map(|n| self.k.iter().map(move |k| (n, k)))
            .filter(|&(n, k)| k < n && (self.allow_tight || n > 2 * k))
            .collect()
    }

    /// Every filter admits a factorization with `|A| = a`, `|B| = b`.
    pub fn admits(&self, omega: usize, a: usize, b: usize) -> bool {
        self.filters.iter().all(|&f| filter_admits(f, omega, a, b))
    }
}

/// The check a family runs when none is named.
pub fn default_check(family: Family, filters: &BTreeSet<Filter>) -> Check {
    match family {
        Family::PrefixTail if filters.contains(&Filter::MainthmGcdConditions) => Check::Mainthm,
        Family::PrefixTail => Check::Mainconj,
        Family::Swap => Check::Swap,
        Family::MajorityPrefix => Check::Majority,
        Family::Arbitrary => Check::Periodicity,
    }
}

pub fn filter_admits(filter: Filter, omega: usize, a: usize, b: usize) -> bool {
    match filter {
        Filter::None => true,
        Filter::MainthmGcdConditions => {
            let g = gcd(a as i64, b as i64);
            let sig = factorize_integer(g);
            sig.mu() <= 1
                || (sig.is_two_prime_product() && gcd(g as i64, (b as u64 / g) as i64) == 1)
        }
        Filter::CoprimeSizes => gcd(a as i64, b as i64) == 1,
        Filter::PrimePowerOrder => factorize_integer(omega as u64).is_prime_power(),
        Filter::PqOrder => is_pe_q(omega),
    }
}

/// `ω = p^e q` for distinct primes `p`, `q`.
fn is_pe_q(omega: usize) -> bool {
    let f = factorize_integer(omega as u64);
    f.mu() == 2 && f.factors().iter().any(|&(_, e)| e == 1)
}

fn is_prime_power(x: usize) -> bool {
    x == 1 || factorize_integer(x as u64).is_prime_power()
}

fn is_pq(x: usize) -> bool {
    factorize_integer(x as u64).is_two_prime_product()
}

/// Some cyclic periodicity lemma covers a factorization of `Z_ω` with factor
/// sizes `a` and `b`.
pub fn periodicity_hypothesis(omega: usize, a: usize, b: usize) -> bool {
    let sig = factorize_integer(omega as u64);
    let shaped = |x: usize| is_prime_power(x) || is_pq(x);
    sig.is_prime_power()
        || is_pe_q(omega)
        || (2..=4).contains(&sig.nu())
        || is_prime_power(a)
        || is_prime_power(b)
        || (shaped(a) && shaped(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub omega: usize,
    pub a: ResidueSet,
    pub complement: Option<ResidueSet>,
    pub reason: String,
}

impl Counterexample {
    /// A recorded complement must still factorize with `A`.
    pub fn reverify(&self) -> bool {
        match &self.complement {
            Some(b) => is_factorization(&self.a, b).unwrap_or(false),
            None => true,
        }
    }
}

/// One instance meeting a scan's hypothesis (a direct factor, a splitting
/// multiplier set, ...), with whether the claimed conclusion held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub omega: usize,
    pub n: usize,
    pub k: usize,
    /// Family parameters: the tail, `[i, j]`, or `[m, tail...]`.
    pub params: Vec<usize>,
    pub a: ResidueSet,
    pub complement: Option<ResidueSet>,
    pub holds: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExploratorySummary {
    pub holds: usize,
    pub fails: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub spec: ScanSpec,
    pub instances_checked: usize,
    pub direct_factor_count: usize,
    /// `(ω, n)` cells skipped because `n ∤ ω`.
    pub size_obstructed: usize,
    /// Cells or factorizations excluded by the filters.
    pub filtered: usize,
    pub counterexamples: Vec<Counterexample>,
    pub instances: Vec<InstanceRecord>,
    pub exploratory: Option<ExploratorySummary>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    fn new(spec: &ScanSpec) -> Self {
        ScanReport {
            spec: spec.clone(),
            instances_checked: 0,
            direct_factor_count: 0,
            size_obstructed: 0,
            filtered: 0,
            counterexamples: Vec::new(),
            instances: Vec::new(),
            exploratory: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn verdict(&self) -> Verdict {
        if !self.counterexamples.is_empty() {
            Verdict::Refuted
        } else if self.exploratory.is_some() {
            Verdict::Exploratory
        } else {
            Verdict::Confirmed
        }
    }

    fn absorb(&mut self, outcomes: Vec<Outcome>) {
        for o in outcomes {
            self.instances_checked += o.checked;
            if let Some(rec) = o.instance {
                self.direct_factor_count += 1;
                self.instances.push(rec);
            }
            self.counterexamples.extend(o.counterexamples);
        }
    }
}

#[derive(Default)]
struct Outcome {
    checked: usize,
    instance: Option<InstanceRecord>,
    counterexamples: Vec<Counterexample>,
}

fn modulus(omega: usize) -> Result<Modulus> {
    Modulus::new(omega)
}

fn residues_mod(values: &[usize], n: usize) -> Vec<usize> {
    let mut r: Vec<usize> = values.iter().map(|v| v % n).collect();
    r.sort_unstable();
    r
}

/// Runs the scan named by `spec.check`.
pub fn run_scan(spec: &ScanSpec) -> Result<ScanReport> {
    match spec.check {
        Check::Mainconj => scan_conjecture_mainconj(spec),
        Check::Mainthm => scan_theorem_mainthm(spec),
        Check::Swap => scan_swap_lemma(spec),
        Check::Majority => scan_majority_prefix(spec),
        Check::Periodicity => scan_periodicity_family(spec),
        Check::BSubgroup => scan_b_subgroup(spec),
        Check::PrimeFactor => scan_prime_factor_lemmas(spec),
        Check::PqPeriodic => scan_pq_periodicity(spec),
        Check::Bridge => scan_bridge(spec),
    }
}

fn timed(spec: &ScanSpec, body: impl FnOnce(&mut ScanReport) -> Result<()>) -> Result<ScanReport> {
    spec.validate()?;
    let start = Instant::now();
    let mut report = ScanReport::new(spec);
    body(&mut report)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

struct PrefixCell {
    omega: usize,
    n: usize,
    k: usize,
    tail: Vec<usize>,
}

/// Prefix-tail cells in `(ω, n, k, tail)` order, counting size-obstructed
/// and filtered `(ω, n, k)` triples.
fn prefix_cells(spec: &ScanSpec, report: &mut ScanReport) -> Vec<PrefixCell> {
    let pairs = spec.prefix_pairs();
    let mut cells = Vec::new();
    for omega in spec.omega.iter() {
        for &(n, k) in &pairs {
            if omega % n != 0 {
                report.size_obstructed += 1;
                continue;
            }
            if !spec.admits(omega, n, omega / n) {
                report.filtered += 1;
                continue;
            }
            for tail in (n - k..omega).combinations(k) {
                cells.push(PrefixCell { omega, n, k, tail });
            }
        }
    }
    cells
}

fn prefix_set(cell: &PrefixCell) -> Result<ResidueSet> {
    ResidueSet::from_members(
        modulus(cell.omega)?,
        (0..cell.n - cell.k).chain(cell.tail.iter().copied()),
    )
}

/// Direct-factor status of a candidate whose conclusion is "A is a complete
/// residue system mod n": when it is, `⟨n⟩` is the witness; otherwise the
/// exact-cover search decides.
fn complement_for(a: &ResidueSet, crs: bool) -> Result<Option<ResidueSet>> {
    if crs {
        let b = canonical_complement(a);
        assert!(
            b.is_some(),
            "complete residue system {a} without canonical complement"
        );
        return Ok(b);
    }
    normalized_complement(a)
}

fn tail_congruence_holds(tail: &[usize], n: usize, k: usize) -> bool {
    residues_mod(tail, n) == (n - k..n).collect::<Vec<_>>()
}

fn prefix_tail_scan(spec: &ScanSpec) -> Result<ScanReport> {
    timed(spec, |report| {
        let cells = prefix_cells(spec, report);
        let outcomes = cells
            .par_iter()
            .map(|cell| -> Result<Outcome> {
                let a = prefix_set(cell)?;
                let holds = tail_congruence_holds(&cell.tail, cell.n, cell.k);
                let mut out = Outcome {
                    checked: 1,
                    ..Default::default()
                };
                let Some(b) = complement_for(&a, holds)? else {
                    return Ok(out);
                };
                if !holds {
                    out.counterexamples.push(Counterexample {
                        omega: cell.omega,
                        a: a.clone(),
                        complement: Some(b.clone()),
                        reason: format!(
                            "direct factor with tail {:?} ≢ [{}, {}] mod {}",
                            cell.tail,
                            cell.n - cell.k,
                            cell.n - 1,
                            cell.n
                        ),
                    });
                }
                out.instance = Some(InstanceRecord {
                    omega: cell.omega,
                    n: cell.n,
                    k: cell.k,
                    params: cell.tail.clone(),
                    a,
                    complement: Some(b),
                    holds,
                });
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        report.absorb(outcomes);
        Ok(())
    })
}

/// Every direct factor `[0, n−k−1] ∪ tail` has tail `≡ [n−k, n−1] (mod n)`.
pub fn scan_conjecture_mainconj(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.check != Check::Mainconj {
        return Err(Error::Config(
            "scan_conjecture_mainconj needs check mainconj".into(),
        ));
    }
    prefix_tail_scan(spec)
}

/// As [`scan_conjecture_mainconj`], restricted to the gcd hypotheses under
/// which the statement is a theorem.
pub fn scan_theorem_mainthm(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.check != Check::Mainthm {
        return Err(Error::Config(
            "scan_theorem_mainthm needs check mainthm".into(),
        ));
    }
    prefix_tail_scan(spec)
}

/// Every direct factor `[0, n−1] \ {i} ∪ {j}` has `j ≡ i (mod n)`.
pub fn scan_swap_lemma(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.check != Check::Swap {
        return Err(Error::Config("scan_swap_lemma needs check swap".into()));
    }
    timed(spec, |report| {
        let mut cells = Vec::new();
        for omega in spec.omega.iter() {
            for n in spec.n.iter().filter(|&n| n >= 2) {
                if omega % n != 0 {
                    report.size_obstructed += 1;
                    continue;
                }
                if !spec.admits(omega, n, omega / n) {
                    report.filtered += 1;
                    continue;
                }
                for i in 0..n {
                    for j in n..omega {
                        cells.push((omega, n, i, j));
                    }
                }
            }
        }
        let outcomes = cells
            .par_iter()
            .map(|&(omega, n, i, j)| -> Result<Outcome> {
                let a = ResidueSet::from_members(
                    modulus(omega)?,
                    (0..n).filter(|&x| x != i).chain([j]),
                )?;
                let holds = j % n == i;
                let mut out = Outcome {
                    checked: 1,
                    ..Default::default()
                };
                let Some(b) = complement_for(&a, holds)? else {
                    return Ok(out);
                };
                if !holds {
                    out.counterexamples.push(Counterexample {
                        omega,
                        a: a.clone(),
                        complement: Some(b.clone()),
                        reason: format!("direct factor with j = {j} ≢ i = {i} mod {n}"),
                    });
                }
                out.instance = Some(InstanceRecord {
                    omega,
                    n,
                    k: 1,
                    params: vec![i, j],
                    a,
                    complement: Some(b),
                    holds,
                });
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        report.absorb(outcomes);
        Ok(())
    })
}

/// Records, for every direct factor `A` of size `n` with at least
/// `⌈(n+1)/2⌉` members in `[0, n−1]`, whether `A` is a complete residue
/// system mod `n`. No outcome is expected; the verdict is exploratory.
pub fn scan_majority_prefix(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.check != Check::Majority {
        return Err(Error::Config(
            "scan_majority_prefix needs check majority".into(),
        ));
    }
    timed(spec, |report| {
        let mut cells = Vec::new();
        for omega in spec.omega.iter() {
            for n in spec.n.iter() {
                if omega % n != 0 {
                    report.size_obstructed += 1;
                    continue;
                }
                if !spec.admits(omega, n, omega / n) {
                    report.filtered += 1;
                    continue;
                }
                cells.extend(majority_sets(omega, n).into_iter().map(|a| (omega, n, a)));
            }
        }
        let outcomes = cells
            .par_iter()
            .map(|(omega, n, members)| -> Result<Outcome> {
                let a = ResidueSet::from_members(modulus(*omega)?, members.iter().copied())?;
                let holds = is_complete_residue_system(&a, *n)?;
                let mut out = Outcome {
                    checked: 1,
                    ..Default::default()
                };
                if let Some(b) = complement_for(&a, holds)? {
                    out.instance = Some(InstanceRecord {
                        omega: *omega,
                        n: *n,
                        k: 0,
                        params: members.clone(),
                        a,
                        complement: Some(b),
                        holds,
                    });
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        report.absorb(outcomes);
        let holds = report.instances.iter().filter(|r| r.holds).count();
        report.exploratory = Some(ExploratorySummary {
            holds,
            fails: report.instances.len() - holds,
        });
        Ok(())
    })
}

/// Size-`n` subsets of `Z_ω` meeting `[0, n−1]` in at least `⌈(n+1)/2⌉`
/// points, in lexicographic order.
fn majority_sets(omega: usize, n: usize) -> Vec<Vec<usize>> {
    let threshold = (n + 2) / 2;
    let mut out = Vec::new();
    for inside in threshold..=n.min(omega) {
        let outside = n - inside;
        if omega < n + outside {
            continue;
        }
        for head in (0..n).combinations(inside) {
            for tail in (n..omega).combinations(outside) {
                out.push(head.iter().chain(&tail).copied().collect());
            }
        }
    }
    out.sort();
    out
}

/// All normalized factorizations `Z_ω = A + B` with `|A| = a`, as
/// `(A, [B...])` with `A` ranging over normalized sets in lexicographic order.
fn factorizations_with_size(omega: usize, a: usize) -> Result<Vec<(ResidueSet, Vec<ResidueSet>)>> {
    let z = modulus(omega)?;
    let candidates: Vec<Vec<usize>> = (1..omega).combinations(a - 1).collect();
    let found = candidates
        .par_iter()
        .map(|rest| -> Result<Option<(ResidueSet, Vec<ResidueSet>)>> {
            let set = ResidueSet::from_members(z, std::iter::once(0).chain(rest.iter().copied()))?;
            let bs = find_complements(&set, ComplementOptions::default())?;
            Ok((!bs.is_empty()).then_some((set, bs)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Sizes `a ≤ ω/a` with `a | ω` and `a` in the spec's `n` range.
fn smaller_sizes(spec: &ScanSpec, omega: usize) -> Vec<usize> {
    spec.n
        .iter()
        .filter(|&a| omega % a == 0 && a * a <= omega)
        .collect()
}

/// Walks all normalized factorizations by their smaller factor and applies
/// `check`, which returns the failure reason if any.
fn factorization_scan<H, C>(spec: &ScanSpec, hypothesis: H, check: C) -> Result<ScanReport>
where
    H: Fn(usize, usize, usize) -> bool + Sync,
    C: Fn(&ResidueSet, &ResidueSet) -> Result<Option<String>> + Sync,
{
    timed(spec, |report| {
        for omega in spec.omega.iter() {
            for a_size in smaller_sizes(spec, omega) {
                let b_size = omega / a_size;
                if !hypothesis(omega, a_size, b_size) {
                    continue;
                }
                if !spec.admits(omega, a_size, b_size) {
                    report.filtered += 1;
                    continue;
                }
                for (a, bs) in factorizations_with_size(omega, a_size)? {
                    report.direct_factor_count += 1;
                    for b in bs {
                        report.instances_checked += 1;
                        if let Some(reason) = check(&a, &b)? {
                            report.counterexamples.push(Counterexample {
                                omega,
                                a: a.clone(),
                                complement: Some(b),
                                reason,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// Whenever a periodicity lemma's hypothesis covers `Z_ω = A + B`, one
/// factor is periodic.
pub fn scan_periodicity_family(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.check != Check::Periodicity {
        return Err(Error::Config(
            "scan_periodicity_family needs check periodicity".into(),
        ));
    }
    factorization_scan(spec, periodicity_hypothesis, |a, b| {
        Ok(
            (!is_periodic(a)? && !is_periodic(b)?)
                .then(|| "neither factor is periodic".to_string()),
        )
    })
}

/// For coprime `|A|, |B|`, both factors are complete residue systems mod
/// their sizes; for `|A| = pm`, `|B| = pn`, `ω = p²mn` with `gcd(m, n) = 1`
/// and `p ∤ mn`, at least one is.
pub fn scan_prime_factor_lemmas(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.check != Check::PrimeFactor {
        return Err(Error::Config(
            "scan_prime_factor_lemmas needs check prime_factor".into(),
        ));
    }
    factorization_scan(
        spec,
        |omega, a, b| coprime_sizes(a, b) || shared_prime_sizes(omega, a, b),
        |a, b| {
            let (x, y) = (a.len(), b.len());
            let a_crs = is_complete_residue_system(a, x)?;
            let b_crs = is_complete_residue_system(b, y)?;
            if coprime_sizes(x, y) && !(a_crs && b_crs) {
                return Ok(Some(format!(
                    "coprime sizes {x}, {y} but a factor is not a complete residue system"
                )));
            }
            if shared_prime_sizes(a.omega(), x, y) && !(a_crs || b_crs) {
                return Ok(Some(format!(
                    "sizes {x}, {y} share one prime but neither factor is a complete residue system"
                )));
            }
            Ok(None)
        },
    )
}

fn coprime_sizes(a: usize, b: usize) -> bool {
    gcd(a as i64, b as i64) == 1
}

/// `a = pm`, `b = pn`, `ω = p²mn` with `gcd(m, n) = 1` and `p ∤ mn`.
fn shared_prime_sizes(omega: usize, a: usize, b: usize) -> bool {
    if a * b != omega {
        return false;
    }
    let g = gcd(a as i64, b as i64) as usize;
    if !is_prime(g as u64) {
        return false;
    }
    let (m, n) = (a / g, b / g);
    gcd(m as i64, n as i64) == 1 && (m * n) % g != 0
}

/// Every normalized `B ⊆ Z_ω` of size `pq` with `ω = p^e q^f` that some
/// faithful character annihilates is periodic. The spec's `n` range gives
/// the candidate sizes; sizes that are not a product of two distinct primes
/// dividing `ω` are skipped.
pub fn scan_pq_periodicity(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.check != Check::PqPeriodic {
        return Err(Error::Config(
            "scan_pq_periodicity needs check pq_periodic".into(),
        ));
    }
    timed(spec, |report| {
        for omega in spec.omega.iter() {
            let sig = factorize_integer(omega as u64);
            if sig.mu() != 2 {
                report.filtered += 1;
                continue;
            }
            let (p, q) = (sig.factors()[0].0 as usize, sig.factors()[1].0 as usize);
            if !spec.n.iter().any(|n| n == p * q) {
                report.filtered += 1;
                continue;
            }
            let z = modulus(omega)?;
            let candidates: Vec<Vec<usize>> = (1..omega).combinations(p * q - 1).collect();
            let outcomes = candidates
                .par_iter()
                .map(|rest| -> Result<Outcome> {
                    let b = ResidueSet::from_members(
                        z,
                        std::iter::once(0).chain(rest.iter().copied()),
                    )?;
                    let v = pq_periodicity_check(&b, &sig)?;
                    let v = (
                        v.faithful_annihilator.is_some(),
                        v.periodic,
                        v.faithful_characters_agree,
                    );
                    let mut out = Outcome {
                        checked: 1,
                        ..Default::default()
                    };
                    if v.0 {
                        out.instance = Some(InstanceRecord {
                            omega,
                            n: p * q,
                            k: 0,
                            params: Vec::new(),
                            a: b.clone(),
                            complement: None,
                            holds: v.1 && v.2,
                        });
                        if !v.1 {
                            out.counterexamples.push(Counterexample {
                                omega,
                                a: b.clone(),
                                complement: None,
                                reason: "annihilated by a faithful character but not periodic"
                                    .into(),
                            });
                        }
                        if !v.2 {
                            out.counterexamples.push(Counterexample {
                                omega,
                                a: b,
                                complement: None,
                                reason: "faithful characters disagree on vanishing".into(),
                            });
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?;
            report.absorb(outcomes);
        }
        Ok(())
    })
}

/// For prefix-tail direct factors whose normalized complement `B` meets
/// `2 ≤ ν(ω) ≤ 4`, or has prime-power size, or is periodic of size `pq`:
/// `A` is a complete residue system mod `n` and `B = ⟨n⟩`.
pub fn scan_b_subgroup(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.check != Check::BSubgroup {
        return Err(Error::Config(
            "scan_b_subgroup needs check b_subgroup".into(),
        ));
    }
    timed(spec, |report| {
        let cells = prefix_cells(spec, report);
        let outcomes = cells
            .par_iter()
            .map(|cell| -> Result<Outcome> {
                let a = prefix_set(cell)?;
                let mut out = Outcome::default();
                let bs = find_complements(&a, ComplementOptions::default())?;
                let nu = factorize_integer(cell.omega as u64).nu();
                let subgroup = cyclic_subgroup(cell.n as i64, a.modulus());
                let a_crs = is_complete_residue_system(&a, cell.n)?;
                let mut all_hold = true;
                for b in &bs {
                    let qualifies = (2..=4).contains(&nu)
                        || is_prime_power(b.len())
                        || (is_pq(b.len()) && is_periodic(b)?);
                    if !qualifies {
                        continue;
                    }
                    out.checked += 1;
                    if !a_crs || *b != subgroup {
                        all_hold = false;
                        out.counterexamples.push(Counterexample {
                            omega: cell.omega,
                            a: a.clone(),
                            complement: Some(b.clone()),
                            reason: format!("qualifying complement is not ⟨{}⟩ or A is not a complete residue system", cell.n),
                        });
                    }
                }
                if out.checked > 0 {
                    out.instance = Some(InstanceRecord {
                        omega: cell.omega,
                        n: cell.n,
                        k: cell.k,
                        params: cell.tail.clone(),
                        a,
                        complement: bs.into_iter().next(),
                        holds: all_hold,
                    });
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        report.absorb(outcomes);
        Ok(())
    })
}

/// Multiplier-side instances: `ω` ranges over primes `p`, and for every
/// `m ∈ [2, p−1]`, `(n, k)` and strictly increasing tail in
/// `[n−k, ord_p(m)−1]`, with `M` the prefix family mod `p` and `A` its
/// exponent set in `Z_{ord_p(m)}`:
///
/// - `M` splits `⟨m⟩` iff `A` is a direct factor of `Z_{ord_p(m)}`;
/// - `M` splits `Z_p` iff `M` splits `⟨m⟩`;
/// - if `M` splits `Z_p` and `gcd(ord_p(m)/n, n) = 1`, `A` is a complete
///   residue system mod `n`.
pub fn scan_bridge(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.check != Check::Bridge {
        return Err(Error::Config("scan_bridge needs check bridge".into()));
    }
    timed(spec, |report| {
        let pairs = spec.prefix_pairs();
        let mut cells = Vec::new();
        for p in spec.omega.iter().filter(|&p| is_prime(p as u64)) {
            for m in 2..p {
                let order = multiplicative_order(m as i64, p as u64)? as usize;
                for &(n, k) in &pairs {
                    if order < n {
                        continue;
                    }
                    for tail in (n - k..order).combinations(k) {
                        cells.push((p, n, k, m, order, tail));
                    }
                }
            }
        }
        let outcomes = cells
            .par_iter()
            .map(|(p, n, k, m, order, tail)| -> Result<Outcome> {
                let (p, n, k, m, order) = (*p, *n, *k, *m, *order);
                let exps: Vec<u64> = tail.iter().map(|&t| t as u64).collect();
                let family = prefix_multiplier_family_mod(m as i64, n, k, &exps, p as u64)?;
                let a = discrete_log_set(&family, m as i64, p as u64)?
                    .ok_or_else(|| Error::Precondition("prefix family escapes ⟨m⟩".into()))?;
                let span = generated_subgroup(&[m], p);
                let splits_span = split_subgroup(&family.residues(modulus(p)?), &span, p).is_some();
                let splits_field = splits(&family, modulus(p)?)?;
                let complement = normalized_complement(&a)?;
                let mut out = Outcome {
                    checked: 1,
                    ..Default::default()
                };
                let mut fail = |reason: String, complement: Option<ResidueSet>| {
                    out.counterexamples.push(Counterexample {
                        omega: order,
                        a: a.clone(),
                        complement,
                        reason: format!("p = {p}, m = {m}, M = {:?}: {reason}", family.values()),
                    });
                };
                if splits_span != complement.is_some() {
                    fail(
                        format!(
                            "M splits ⟨m⟩ = {splits_span} but A is a direct factor = {}",
                            complement.is_some()
                        ),
                        complement.clone(),
                    );
                }
                if splits_field != splits_span {
                    fail(
                        format!("M splits Z_p = {splits_field} but M splits ⟨m⟩ = {splits_span}"),
                        None,
                    );
                }
                let mut holds = true;
                if splits_field && order % n == 0 && gcd((order / n) as i64, n as i64) == 1 {
                    holds = is_complete_residue_system(&a, n)?;
                    if !holds {
                        fail(
                            format!("exponent set is not a complete residue system mod {n}"),
                            complement.clone(),
                        );
                    }
                }
                if splits_span {
                    out.instance = Some(InstanceRecord {
                        omega: order,
                        n,
                        k,
                        params: std::iter::once(m).chain(tail.iter().copied()).collect(),
                        a,
                        complement,
                        holds,
                    });
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        report.absorb(outcomes);
        Ok(())
    })
}

/// Checks `kA + B` for every recorded factorization and every `k ∈ [1, ω]`
/// coprime to `|A|`; returns the failures.
pub fn check_replacement(instances: &[InstanceRecord]) -> Result<Vec<Counterexample>> {
    let failures = instances
        .par_iter()
        .filter_map(|rec| rec.complement.as_ref().map(|b| (rec, b)))
        .map(|(rec, b)| -> Result<Vec<Counterexample>> {
            let Some(w) = FactorizationWitness::certify(&rec.a, b)? else {
                return Ok(vec![Counterexample {
                    omega: rec.omega,
                    a: rec.a.clone(),
                    complement: Some(b.clone()),
                    reason: "recorded pair does not factorize".into(),
                }]);
            };
            let size = rec.a.len() as i64;
            let mut bad = Vec::new();
            for k in (1..=rec.omega as i64).filter(|&k| gcd(k, size) == 1) {
                if !verify_replacement_by_ka(&w, k)? {
                    bad.push(Counterexample {
                        omega: rec.omega,
                        a: rec.a.clone(),
                        complement: Some(b.clone()),
                        reason: format!("{k}A + B is not a factorization"),
                    });
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(failures.into_iter().flatten().collect())
}
