//! Offset tuples H = {0, h_2, …, h_k}, admissibility, the even-shift
//! equivalence classes under integer powers, and prime k-tuple enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sieve::SieveTable;

/// Strictly increasing offsets starting at 0. For k ≥ 2 every later offset
/// must be even: an odd offset h makes {n, n+h} cover both residues mod 2,
/// so such a set can never be admissible and is rejected up front.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OffsetTuple {
    offsets: Vec<u64>,
}

impl OffsetTuple {
    pub fn new(offsets: Vec<u64>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::InvalidTuple("tuple must be non-empty".into()));
        }
        if offsets[0] != 0 {
            return Err(Error::InvalidTuple(format!(
                "first offset must be 0, got {}",
                offsets[0]
            )));
        }
        for w in offsets.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidTuple(format!(
                    "offsets must be strictly increasing, got {} after {}",
                    w[1], w[0]
                )));
            }
        }
        for &h in &offsets[1..] {
            if h % 2 != 0 {
                return Err(Error::InvalidTuple(format!(
                    "offset {h} is odd; sets with odd offsets cover both residues mod 2"
                )));
            }
        }
        Ok(OffsetTuple { offsets })
    }

    /// The singleton {0}.
    pub fn singleton() -> Self {
        OffsetTuple { offsets: vec![0] }
    }

    /// {0, h} for even h ≥ 2.
    pub fn pair(h: u64) -> Result<Self> {
        OffsetTuple::new(vec![0, h])
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn k(&self) -> usize {
        self.offsets.len()
    }

    pub fn max_offset(&self) -> u64 {
        *self.offsets.last().unwrap()
    }

    /// All unordered pairs (h_i, h_j) with i < j.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for i in 0..self.offsets.len() {
            for j in i + 1..self.offsets.len() {
                out.push((self.offsets[i], self.offsets[j]));
            }
        }
        out
    }
}

impl fmt::Display for OffsetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.offsets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

impl FromStr for OffsetTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let offsets = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::InvalidTuple(format!("bad offset {part:?}: {e}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        OffsetTuple::new(offsets)
    }
}

/// Result of an admissibility check.
#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Prime whose residue classes the offsets fully cover, when inadmissible.
    pub witness_prime: Option<u64>,
    /// For each prime p ≤ k: the set {h mod p}.
    pub residue_profiles: Vec<(u64, BTreeSet<u64>)>,
}

/// Check whether the residues {h mod p} omit a class for every prime p ≤ k.
///
/// Primes p > k need no check: k offsets occupy at most k < p residue
/// classes, so at least one class mod p is always free.
pub fn check_admissible(h: &OffsetTuple) -> AdmissibilityReport {
    let k = h.k() as u64;
    let mut profiles = Vec::new();
    let mut witness = None;
    for p in (2..=k).filter(|&p| is_small_prime(p)) {
        let residues: BTreeSet<u64> = h.offsets().iter().map(|&x| x % p).collect();
        let covered = residues.len() as u64 == p;
        profiles.push((p, residues));
        if covered && witness.is_none() {
            witness = Some(p);
        }
    }
    AdmissibilityReport {
        admissible: witness.is_none(),
        witness_prime: witness,
        residue_profiles: profiles,
    }
}

fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The equivalence class of an even shift: all its integer powers up to a
/// bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceClass {
    pub base: u64,
    pub members: Vec<u64>,
}

/// Powers base^l ≤ bound, ascending. The base must be even.
pub fn equivalence_class(base: u64, bound: u64) -> Result<EquivalenceClass> {
    check_even_shift(base)?;
    if bound < base {
        return Err(Error::domain(format!("bound {bound} < base {base}")));
    }
    let mut members = Vec::new();
    let mut m = base;
    while m <= bound {
        members.push(m);
        match m.checked_mul(base) {
            Some(next) => m = next,
            None => break,
        }
    }
    Ok(EquivalenceClass { base, members })
}

/// Smallest even 2i with (2i)^l = h for some l ≥ 1; h itself when no
/// smaller root exists.
pub fn class_root(h: u64) -> Result<u64> {
    check_even_shift(h)?;
    // The root r of an even h is itself even, and r shrinks as l grows, so
    // the largest exponent with an exact integer root gives the smallest root.
    for l in (2..=63u32).rev() {
        if let Some(r) = exact_integer_root(h, l) {
            if r >= 2 {
                debug_assert_eq!(r % 2, 0);
                return Ok(r);
            }
        }
    }
    Ok(h)
}

fn exact_integer_root(n: u64, l: u32) -> Option<u64> {
    let guess = (n as f64).powf(1.0 / l as f64).round() as u64;
    for r in guess.saturating_sub(1)..=guess + 1 {
        if r >= 2 && pow_checked(r, l) == Some(n) {
            return Some(r);
        }
    }
    None
}

fn pow_checked(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn check_even_shift(h: u64) -> Result<()> {
    if h < 2 || h % 2 != 0 {
        Err(Error::domain(format!("shift must be even and ≥ 2, got {h}")))
    } else {
        Ok(())
    }
}

/// Extend an admissible tuple by h_k + base^l, picking the smallest l ≤
/// max_power whose union stays admissible.
///
/// Each candidate is verified directly with [`check_admissible`] rather than
/// by a residue-class shortcut; when none works the error carries the
/// witness prime for every power tried.
pub fn extend_admissible(
    h: &OffsetTuple,
    class_base: u64,
    max_power: u32,
) -> Result<OffsetTuple> {
    check_even_shift(class_base)?;
    if max_power == 0 {
        return Err(Error::domain("max_power must be ≥ 1"));
    }
    let report = check_admissible(h);
    if !report.admissible {
        return Err(Error::domain(format!(
            "tuple {h} is not admissible (witness prime {})",
            report.witness_prime.unwrap()
        )));
    }
    let last = h.max_offset();
    let mut obstructions = Vec::new();
    for l in 1..=max_power {
        let Some(gap) = pow_checked(class_base, l) else { break };
        let Some(new_offset) = last.checked_add(gap) else { break };
        let mut offsets = h.offsets().to_vec();
        offsets.push(new_offset);
        let candidate = OffsetTuple::new(offsets)?;
        let report = check_admissible(&candidate);
        if report.admissible {
            return Ok(candidate);
        }
        obstructions.push((l, report.witness_prime.unwrap()));
    }
    Err(Error::ExtensionFailed {
        base: class_base,
        max_power,
        obstructions,
    })
}

/// Default power bound for [`extend_admissible`].
pub const DEFAULT_MAX_POWER: u32 = 4;

/// Base primes p ≤ limit with p + h prime for every offset, ascending.
///
/// No admissibility shortcut: inadmissible tuples simply yield their
/// sporadic small solutions.
pub fn enumerate_tuples(
    h: &OffsetTuple,
    limit: u64,
    table: &SieveTable,
) -> Result<Vec<u64>> {
    let top = limit
        .checked_add(h.max_offset())
        .ok_or_else(|| Error::domain("limit + max offset overflows"))?;
    if top > table.limit() {
        return Err(Error::Range { n: top, limit: table.limit() });
    }
    let mut out = Vec::new();
    'outer: for p in table.primes_up_to(limit) {
        for &off in &h.offsets()[1..] {
            if !table.is_prime(p + off) {
                continue 'outer;
            }
        }
        out.push(p);
    }
    Ok(out)
}

/// Number of base primes p ≤ limit forming a full prime tuple.
pub fn count_tuples(h: &OffsetTuple, limit: u64, table: &SieveTable) -> Result<u64> {
    Ok(enumerate_tuples(h, limit, table)?.len() as u64)
}
