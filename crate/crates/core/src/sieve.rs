//! Segmented sieve of Eratosthenes serving primality, von Mangoldt Λ, Möbius
//! μ and Chebyshev ψ up to limits of order 10^8.
//!
//! Storage is O(limit) bits: one bit per odd number for primality, plus a
//! sparse map of the ~√limit higher prime powers. Λ is never stored as a
//! float table; a query resolves n = p^a from the bitset or the power map
//! and evaluates log p on the spot. μ is computed by trial division against
//! the cached primes ≤ √limit.
//!
//! Construction marks composites segment by segment (segments may run in
//! parallel; they touch disjoint words), so the finished table is identical
//! for every segment size and thread count. The table itself is immutable
//! and all queries are read-only.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kahan::KahanSum;

/// Default cap on the primality bitset allocation.
pub const DEFAULT_MEMORY_BUDGET_BYTES: u64 = 512 * 1024 * 1024;

/// Magic bytes of the primality cache file format.
pub const CACHE_MAGIC: &[u8; 4] = b"TZL1";

/// Immutable arithmetic-function table over `1..=limit`.
#[derive(Debug, Clone)]
pub struct SieveTable {
    limit: u64,
    /// Bit i ⇔ 2i+1 is prime. Index 0 (the number 1) is always clear.
    odd_bits: Vec<u64>,
    /// n = p^a with a ≥ 2, keyed by n.
    higher_powers: BTreeMap<u64, (u64, u32)>,
    /// Primes ≤ √limit, ascending.
    small_primes: Vec<u64>,
}

/// Largest r with r·r ≤ n.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |sq| sq <= n) {
        r += 1;
    }
    r
}

/// Simple odd-only sieve; returns all primes ≤ limit.
fn simple_sieve(limit: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    if limit >= 2 {
        primes.push(2);
    }
    if limit < 3 {
        return primes;
    }
    let n_odd = ((limit - 1) / 2) as usize; // odd numbers 3, 5, ..., ≤ limit
    let mut composite = vec![false; n_odd + 1];
    let mut i = 0usize;
    while i < n_odd {
        let p = 2 * (i as u64) + 3;
        if p * p > limit {
            break;
        }
        if !composite[i] {
            let mut m = p * p;
            while m <= limit {
                composite[((m - 3) / 2) as usize] = true;
                m += 2 * p;
            }
        }
        i += 1;
    }
    for (i, &c) in composite.iter().enumerate().take(n_odd) {
        if !c {
            primes.push(2 * (i as u64) + 3);
        }
    }
    primes
}

/// Build a table over `1..=limit` with the default memory budget.
pub fn build_sieve(limit: u64, segment_size: u64) -> Result<SieveTable> {
    build_sieve_budgeted(limit, segment_size, DEFAULT_MEMORY_BUDGET_BYTES)
}

/// Build a table over `1..=limit`, failing if the bitset would exceed
/// `budget_bytes`.
pub fn build_sieve_budgeted(limit: u64, segment_size: u64, budget_bytes: u64) -> Result<SieveTable> {
    if limit < 2 {
        return Err(Error::domain(format!("sieve limit must be ≥ 2, got {limit}")));
    }
    if segment_size < 64 {
        return Err(Error::domain(format!(
            "segment size must be ≥ 64, got {segment_size}"
        )));
    }
    let n_bits = (limit + 1) / 2; // odd numbers 1, 3, ..., ≤ limit
    let n_words = n_bits.div_ceil(64);
    let needed = n_words * 8;
    if needed > budget_bytes {
        return Err(Error::Resource {
            limit,
            needed,
            budget: budget_bytes,
        });
    }

    let sqrt_limit = isqrt(limit);
    let base_primes: Vec<u64> = simple_sieve(sqrt_limit);
    let odd_base: Vec<u64> = base_primes.iter().copied().filter(|&p| p > 2).collect();

    let mut odd_bits = vec![u64::MAX; n_words as usize];

    // Each word covers 64 odd numbers = a span of 128 integers, so segments
    // aligned to whole words never share a word across threads.
    let words_per_seg = ((segment_size / 128).max(1)) as usize;
    odd_bits
        .par_chunks_mut(words_per_seg)
        .enumerate()
        .for_each(|(chunk_idx, words)| {
            let bit_base = (chunk_idx * words_per_seg) as u64 * 64;
            let span_lo = 2 * bit_base + 1; // first odd number in this chunk
            let span_hi = 2 * (bit_base + words.len() as u64 * 64 - 1) + 1;
            for &p in &odd_base {
                let p_sq = p * p;
                if p_sq > span_hi {
                    break;
                }
                let mut m = if p_sq >= span_lo {
                    p_sq
                } else {
                    // first odd multiple of p in the span
                    let mut m = span_lo.div_ceil(p) * p;
                    if m % 2 == 0 {
                        m += p;
                    }
                    m
                };
                while m <= span_hi {
                    let idx = (m - 1) / 2 - bit_base;
                    words[(idx / 64) as usize] &= !(1u64 << (idx % 64));
                    m += 2 * p;
                }
            }
        });

    // 1 is not prime; clear padding bits past the last odd number ≤ limit.
    odd_bits[0] &= !1u64;
    let last_idx = (limit - 1) / 2;
    let tail_word = (last_idx / 64) as usize;
    let tail_bit = last_idx % 64;
    if tail_bit < 63 {
        odd_bits[tail_word] &= (1u64 << (tail_bit + 1)) - 1;
    }
    for w in odd_bits.iter_mut().skip(tail_word + 1) {
        *w = 0;
    }

    let higher_powers = collect_higher_powers(&base_primes, limit);
    Ok(SieveTable {
        limit,
        odd_bits,
        higher_powers,
        small_primes: base_primes,
    })
}

fn collect_higher_powers(base_primes: &[u64], limit: u64) -> BTreeMap<u64, (u64, u32)> {
    let mut map = BTreeMap::new();
    for &p in base_primes {
        let mut m = p * p;
        let mut a = 2u32;
        while m <= limit {
            map.insert(m, (p, a));
            match m.checked_mul(p) {
                Some(next) => m = next,
                None => break,
            }
            a += 1;
        }
    }
    map
}

impl SieveTable {
    /// Upper end of the covered range.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    fn check_range(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.limit {
            Err(Error::Range { n, limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// O(1) primality lookup. `n` must be within range.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        debug_assert!(n >= 1 && n <= self.limit);
        if n == 2 {
            return true;
        }
        if n < 2 || n % 2 == 0 {
            return false;
        }
        let idx = (n - 1) / 2;
        self.odd_bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    /// Range-checked primality.
    pub fn primality(&self, n: u64) -> Result<bool> {
        self.check_range(n)?;
        Ok(self.is_prime(n))
    }

    /// `Some((p, a))` when n = p^a, `None` otherwise. Primes report a = 1.
    #[inline]
    pub fn prime_power(&self, n: u64) -> Option<(u64, u32)> {
        if self.is_prime(n) {
            Some((n, 1))
        } else {
            self.higher_powers.get(&n).copied()
        }
    }

    /// Exponent a when n = p^a, 0 otherwise.
    pub fn prime_power_exponent(&self, n: u64) -> Result<u32> {
        self.check_range(n)?;
        Ok(self.prime_power(n).map_or(0, |(_, a)| a))
    }

    /// Λ(n): log p when n = p^a, 0 otherwise. Λ(1) = 0.
    pub fn von_mangoldt(&self, n: u64) -> Result<f64> {
        self.check_range(n)?;
        Ok(self.von_mangoldt_unchecked(n))
    }

    #[inline]
    pub(crate) fn von_mangoldt_unchecked(&self, n: u64) -> f64 {
        match self.prime_power(n) {
            Some((p, _)) => (p as f64).ln(),
            None => 0.0,
        }
    }

    /// μ(n) ∈ {−1, 0, +1} by trial division; μ(1) = +1.
    pub fn mobius(&self, n: u64) -> Result<i8> {
        self.check_range(n)?;
        Ok(self.mobius_unchecked(n))
    }

    pub(crate) fn mobius_unchecked(&self, n: u64) -> i8 {
        let mut m = n;
        let mut factors = 0u32;
        for &p in &self.small_primes {
            if p * p > m {
                break;
            }
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                factors += 1;
            }
        }
        if m > 1 {
            factors += 1;
        }
        if factors % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// ψ(N) = Σ_{n ≤ N} Λ(n), compensated.
    pub fn chebyshev_psi(&self, n: u64) -> Result<f64> {
        self.check_range(n)?;
        let mut acc = KahanSum::new();
        for p in self.primes_up_to(n) {
            acc.add((p as f64).ln());
        }
        for (&m, &(p, _)) in self.higher_powers.range(..=n) {
            debug_assert!(m <= n);
            acc.add((p as f64).ln());
        }
        Ok(acc.value())
    }

    /// Primes in `[a, b]`, ascending.
    pub fn primes_in_range(&self, a: u64, b: u64) -> Result<PrimeIter<'_>> {
        if a > b {
            return Err(Error::domain(format!("empty range: {a} > {b}")));
        }
        self.check_range(a.max(1))?;
        self.check_range(b)?;
        Ok(PrimeIter::new(self, a, b))
    }

    /// All primes ≤ n, ascending. `n` must be within range.
    pub fn primes_up_to(&self, n: u64) -> PrimeIter<'_> {
        debug_assert!(n <= self.limit);
        PrimeIter::new(self, 1, n)
    }

    /// π(n): number of primes ≤ n.
    pub fn prime_count(&self, n: u64) -> Result<u64> {
        self.check_range(n)?;
        let mut count = if n >= 2 { 1u64 } else { 0 }; // the prime 2
        let last_idx = (n - 1) / 2;
        let full_words = (last_idx / 64) as usize;
        for w in &self.odd_bits[..full_words] {
            count += w.count_ones() as u64;
        }
        let mask = if last_idx % 64 == 63 {
            u64::MAX
        } else {
            (1u64 << (last_idx % 64 + 1)) - 1
        };
        count += (self.odd_bits[full_words] & mask).count_ones() as u64;
        Ok(count)
    }

    /// Higher prime powers (a ≥ 2) in the table, ascending.
    pub fn higher_prime_powers(&self) -> impl Iterator<Item = (u64, u64, u32)> + '_ {
        self.higher_powers.iter().map(|(&n, &(p, a))| (n, p, a))
    }

    /// Primes ≤ √limit, ascending.
    pub fn small_primes(&self) -> &[u64] {
        &self.small_primes
    }

    /// Write the primality bitset cache: magic, limit (LE), packed odd bits.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(CACHE_MAGIC)?;
        f.write_all(&self.limit.to_le_bytes())?;
        let mut bytes = Vec::with_capacity(self.odd_bits.len() * 8);
        for w in &self.odd_bits {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        f.write_all(&bytes)?;
        Ok(())
    }

    /// Load a table from a cache file written by [`SieveTable::write_cache`].
    /// The power map and small-prime list are rebuilt from the bitset.
    pub fn read_cache(path: &Path) -> Result<SieveTable> {
        let mut f = std::fs::File::open(path)?;
        let mut magic = [0u8; 4];
        f.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(Error::domain(format!(
                "{} is not a TZL1 sieve cache (bad magic {:?})",
                path.display(),
                magic
            )));
        }
        let mut limit_bytes = [0u8; 8];
        f.read_exact(&mut limit_bytes)?;
        let limit = u64::from_le_bytes(limit_bytes);
        if limit < 2 {
            return Err(Error::domain(format!("cache header limit {limit} < 2")));
        }
        let n_words = ((limit + 1) / 2).div_ceil(64) as usize;
        let mut bytes = vec![0u8; n_words * 8];
        f.read_exact(&mut bytes)?;
        let odd_bits: Vec<u64> = bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();

        let table = SieveTable {
            limit,
            odd_bits,
            higher_powers: BTreeMap::new(),
            small_primes: Vec::new(),
        };
        let sqrt_limit = isqrt(limit);
        let small_primes: Vec<u64> = table.primes_up_to(sqrt_limit.min(limit)).collect();
        let higher_powers = collect_higher_powers(&small_primes, limit);
        Ok(SieveTable {
            higher_powers,
            small_primes,
            ..table
        })
    }

    #[cfg(test)]
    fn bits_eq(&self, other: &SieveTable) -> bool {
        self.limit == other.limit
            && self.odd_bits == other.odd_bits
            && self.higher_powers == other.higher_powers
    }
}

/// Ascending iterator over the primes in a closed range.
pub struct PrimeIter<'a> {
    table: &'a SieveTable,
    /// Pending emission of the prime 2.
    two_pending: bool,
    word_idx: usize,
    current: u64,
    last_idx: u64,
}

impl<'a> PrimeIter<'a> {
    fn new(table: &'a SieveTable, a: u64, b: u64) -> Self {
        let b = b.min(table.limit);
        let start_idx = a / 2; // index of the first odd number ≥ a
        let last_idx = if b == 0 { 0 } else { (b - 1) / 2 };
        let word_idx = (start_idx / 64) as usize;
        let mut current = if word_idx < table.odd_bits.len() {
            table.odd_bits[word_idx]
        } else {
            0
        };
        // mask off bits below the start of the range
        current &= u64::MAX << (start_idx % 64);
        PrimeIter {
            table,
            two_pending: a <= 2 && b >= 2,
            word_idx,
            current,
            last_idx,
        }
    }
}

impl Iterator for PrimeIter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.two_pending {
            self.two_pending = false;
            return Some(2);
        }
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as u64;
                let idx = self.word_idx as u64 * 64 + bit;
                if idx > self.last_idx {
                    return None;
                }
                self.current &= self.current - 1;
                return Some(2 * idx + 1);
            }
            self.word_idx += 1;
            if self.word_idx as u64 * 64 > self.last_idx
                || self.word_idx >= self.table.odd_bits.len()
            {
                return None;
            }
            self.current = self.table.odd_bits[self.word_idx];
        }
    }
}
