//! Arithmetic in F_p and F_{p^2} = F_p(√Δ), quadratic-residue tests,
//! and the canonical generators ζ₋ of μ_{p−1} and ζ₊ of μ_{p+1}.
//!
//! Field elements are bare `u64` residues in [0, p); the characteristic
//! travels alongside in the structs that need it. The defaults Δ, ζ₋,
//! ζ₊ are chosen by deterministic smallest/lexicographic scans, and
//! every final invariant downstream must be independent of them.

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

/// Largest accepted characteristic; keeps p² − 1 inside u64 arithmetic.
const MAX_P: u64 = (1 << 31) - 1;

pub fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut base = base % p;
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue, via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// True iff a is a square mod p (0 counts as a square), by the Euler
/// criterion a^{(p−1)/2} = 1.
pub fn is_square(p: u64, a: u64) -> bool {
    let a = a % p;
    a == 0 || pow_mod(a, (p - 1) / 2, p) == 1
}

/// The smallest positive non-square mod p — the default Δ.
pub fn min_nonsquare(p: u64) -> u64 {
    (2..p)
        .find(|&a| !is_square(p, a))
        .expect("every odd prime admits a non-square")
}

fn has_exact_order_fp(p: u64, a: u64, n: u64) -> bool {
    pow_mod(a, n, p) == 1 && prime_factors(n).iter().all(|&q| pow_mod(a, n / q, p) != 1)
}

/// The smallest primitive root mod p — the default ζ₋.
pub fn primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("the multiplicative group mod p is cyclic")
}

/// The quadratic extension F_p(√Δ) for a fixed non-square Δ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    pub(crate) p: u64,
    pub(crate) delta: u64,
}

/// x + y√Δ; the ambient Fp2 supplies p and Δ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp2Elem {
    pub x: u64,
    pub y: u64,
}

impl Fp2 {
    pub fn new(p: u64, delta: u64) -> Result<Self> {
        check_p(p)?;
        let delta = delta % p;
        if delta == 0 || is_square(p, delta) {
            return Err(Error::InvalidArgument(format!(
                "delta = {delta} is a square mod {p}"
            )));
        }
        Ok(Fp2 { p, delta })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn elem(&self, x: u64, y: u64) -> Fp2Elem {
        Fp2Elem {
            x: x % self.p,
            y: y % self.p,
        }
    }

    pub fn one(&self) -> Fp2Elem {
        Fp2Elem { x: 1, y: 0 }
    }

    pub fn mul(&self, a: Fp2Elem, b: Fp2Elem) -> Fp2Elem {
        let p = self.p;
        Fp2Elem {
            x: (a.x * b.x + self.delta % p * (a.y * b.y % p)) % p,
            y: (a.x * b.y + a.y * b.x) % p,
        }
    }

    pub fn pow(&self, a: Fp2Elem, mut exp: u64) -> Fp2Elem {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The norm x² − Δy² down to F_p; μ_{p+1} is its kernel.
    pub fn norm(&self, a: Fp2Elem) -> u64 {
        let p = self.p;
        let sq = a.x * a.x % p;
        let dy = self.delta * (a.y * a.y % p) % p;
        (sq + p - dy) % p
    }

    fn has_exact_order(&self, a: Fp2Elem, n: u64) -> bool {
        self.pow(a, n) == self.one()
            && prime_factors(n).iter().all(|&q| self.pow(a, n / q) != self.one())
    }
}

/// An element ζ₊ of multiplicative order exactly p+1 and norm 1, found
/// by scanning for the lexicographically first generator g of F_{p²}^×
/// and returning g^{p−1}.
pub fn mu_plus_generator(p: u64, delta: u64) -> Fp2Elem {
    let f = Fp2 { p, delta };
    let n = p * p - 1;
    let factors = prime_factors(n);
    for x in 0..p {
        for y in 0..p {
            if x == 0 && y == 0 {
                continue;
            }
            let g = Fp2Elem { x, y };
            if factors.iter().all(|&q| f.pow(g, n / q) != f.one()) {
                return f.pow(g, p - 1);
            }
        }
    }
    unreachable!("F_{{p²}}^× is cyclic, so a generator exists");
}

fn check_p(p: u64) -> Result<()> {
    if p < 5 || p % 2 == 0 || !is_prime(p) || p > MAX_P {
        return Err(Error::InvalidArgument(format!(
            "p = {p} must be an odd prime >= 5 (and <= {MAX_P})"
        )));
    }
    Ok(())
}

/// The generator data fixed once per characteristic: Δ, ζ₋, ζ₊.
#[derive(Clone, Copy, Debug)]
pub struct Generators {
    p: u64,
    delta: u64,
    zeta_minus: u64,
    zeta_plus: Fp2Elem,
}

impl Generators {
    /// Deterministic defaults: smallest Δ, smallest ζ₋, scan-first ζ₊.
    pub fn new(p: u64) -> Result<Self> {
        check_p(p)?;
        let delta = min_nonsquare(p);
        Ok(Generators {
            p,
            delta,
            zeta_minus: primitive_root(p),
            zeta_plus: mu_plus_generator(p, delta),
        })
    }

    /// Explicit seed override, fully validated: Δ must be a non-square,
    /// ζ₋ must have order exactly p−1, and ζ₊ = x + y√Δ must have norm 1
    /// and order exactly p+1.
    pub fn with_seeds(p: u64, delta: u64, zeta_minus: u64, zeta_plus: (u64, u64)) -> Result<Self> {
        let f = Fp2::new(p, delta)?;
        let zeta_minus = zeta_minus % p;
        if zeta_minus == 0 || !has_exact_order_fp(p, zeta_minus, p - 1) {
            return Err(Error::InvalidArgument(format!(
                "zeta_minus = {zeta_minus} does not have order {} mod {p}",
                p - 1
            )));
        }
        let zp = f.elem(zeta_plus.0, zeta_plus.1);
        if f.norm(zp) != 1 {
            return Err(Error::InvalidArgument(format!(
                "zeta_plus = {}+{}√{} has norm {} ≠ 1",
                zp.x,
                zp.y,
                f.delta,
                f.norm(zp)
            )));
        }
        if !f.has_exact_order(zp, p + 1) {
            return Err(Error::InvalidArgument(format!(
                "zeta_plus = {}+{}√{} does not have order {}",
                zp.x,
                zp.y,
                f.delta,
                p + 1
            )));
        }
        Ok(Generators {
            p,
            delta: f.delta,
            zeta_minus,
            zeta_plus: zp,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn zeta_minus(&self) -> u64 {
        self.zeta_minus
    }

    pub fn zeta_plus(&self) -> Fp2Elem {
        self.zeta_plus
    }

    pub fn fp2(&self) -> Fp2 {
        Fp2 {
            p: self.p,
            delta: self.delta,
        }
    }

    pub fn zeta_minus_pow(&self, e: u64) -> u64 {
        pow_mod(self.zeta_minus, e, self.p)
    }

    pub fn zeta_plus_pow(&self, e: u64) -> Fp2Elem {
        self.fp2().pow(self.zeta_plus, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn squares_match_exhaustive_squaring() {
        for p in [5u64, 7, 11, 13, 29, 31] {
            let squares: BTreeSet<u64> = (0..p).map(|x| x * x % p).collect();
            for a in 0..p {
                assert_eq!(is_square(p, a), squares.contains(&a), "p={p} a={a}");
            }
            assert_eq!(squares.len() as u64 - 1, (p - 1) / 2);
        }
    }

    #[test]
    fn default_delta_and_roots() {
        assert_eq!(min_nonsquare(11), 2);
        assert_eq!(min_nonsquare(13), 2);
        assert_eq!(min_nonsquare(29), 2);
        assert_eq!(min_nonsquare(7), 3);
        assert_eq!(primitive_root(11), 2);
        assert_eq!(primitive_root(13), 2);
        assert_eq!(primitive_root(7), 3);
        for p in [5u64, 7, 11, 13, 29] {
            assert_eq!(pow_mod(primitive_root(p), (p - 1) / 2, p), p - 1);
        }
    }

    #[test]
    fn mu_plus_generator_has_full_order() {
        for p in [5u64, 7, 11, 13, 29] {
            let delta = min_nonsquare(p);
            let f = Fp2 { p, delta };
            let zp = mu_plus_generator(p, delta);
            assert_eq!(f.norm(zp), 1, "p={p}");
            assert!(f.has_exact_order(zp, p + 1), "p={p}");
        }
    }

    #[test]
    fn seed_validation_rejects_bad_inputs() {
        assert!(Generators::new(9).is_err());
        assert!(Generators::new(4).is_err());
        assert!(Generators::new(3).is_err());
        // 3 is a square mod 11
        assert!(Generators::with_seeds(11, 3, 2, (0, 0)).is_err());
        // 3 has order 5, not 10, mod 11
        assert!(Generators::with_seeds(11, 2, 3, (0, 0)).is_err());
        // norm of 1 + 1*sqrt(2) is -1, not 1
        assert!(Generators::with_seeds(11, 2, 2, (1, 1)).is_err());
        let g = Generators::new(11).unwrap();
        let zp = g.zeta_plus();
        assert!(Generators::with_seeds(11, 2, 2, (zp.x, zp.y)).is_ok());
        // zeta_plus^2 has order 6, not 12
        let zp2 = g.zeta_plus_pow(2);
        assert!(Generators::with_seeds(11, 2, 2, (zp2.x, zp2.y)).is_err());
    }

    #[test]
    fn generator_powers_cycle() {
        let g = Generators::new(11).unwrap();
        assert_eq!(g.zeta_minus_pow(10), 1);
        assert_eq!(g.zeta_plus_pow(12), g.fp2().one());
        assert_ne!(g.zeta_plus_pow(6), g.fp2().one());
        assert_ne!(g.zeta_plus_pow(4), g.fp2().one());
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(p in prop::sample::select(vec![7u64, 11, 13]),
                                  ax in 0u64..13, ay in 0u64..13,
                                  bx in 0u64..13, by in 0u64..13) {
            let f = Fp2 { p, delta: min_nonsquare(p) };
            let a = f.elem(ax, ay);
            let b = f.elem(bx, by);
            let lhs = f.norm(f.mul(a, b));
            let rhs = f.norm(a) * f.norm(b) % p;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn euler_criterion_matches_pow(p in prop::sample::select(vec![11u64, 13, 29]),
                                       a in 1u64..29) {
            prop_assume!(a % p != 0);
            let expected = pow_mod(a, (p - 1) / 2, p) == 1;
            prop_assert_eq!(is_square(p, a), expected);
        }
    }
}
