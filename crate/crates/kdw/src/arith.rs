//! Small integer helpers shared across modules.

/// Trial-division primality test; adequate for the word-sized inputs
/// that appear as conductors and field characteristics.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exponent of the largest power of `k` dividing `n`.
pub(crate) fn valuation(mut n: u64, k: u64) -> u32 {
    let mut v = 0;
    while n % k == 0 {
        n /= k;
        v += 1;
    }
    v
}
