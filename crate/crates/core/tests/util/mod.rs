//! Naive oracles kept independent of the library's sieve path.
#![allow(dead_code)]

pub fn naive_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// (p, a) when n = p^a, found by trial division.
pub fn naive_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            let mut a = 0;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            return if m == 1 { Some((p, a)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}

pub fn naive_von_mangoldt(n: u64) -> f64 {
    naive_prime_power(n).map_or(0.0, |(p, _)| (p as f64).ln())
}

pub fn naive_mobius(n: u64) -> i8 {
    let mut m = n;
    let mut factors = 0;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            factors += 1;
        }
        p += 1;
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

/// Plain boolean sieve, structurally unlike the odd-bitset implementation.
pub fn simple_bool_sieve(limit: usize) -> Vec<bool> {
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    if limit >= 1 {
        is_prime[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is_prime[i] {
            let mut j = i * i;
            while j <= limit {
                is_prime[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is_prime
}
