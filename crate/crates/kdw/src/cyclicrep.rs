//! The representation ring of ℤ/k in transform coordinates: the
//! signature character α, the vectors ξ(k;ℓ₁,…,ℓ_m), the permutation
//! action P^(h) induced by automorphisms of ℤ/k, and the lens-space
//! invariant with cyclic coefficient group.
//!
//! Everything here is computed inside ℚ(ζ_k) and certified rational at
//! the end — no floating point and no real-subfield machinery.

use num::integer::gcd;
use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::exactnum::{mod_one, CycNum, ModOneOdd};
use crate::formal::{FormalSum, Term};

/// A vector in (ℤ₍₂₎/ℤ)^k: entry i is the coefficient of the i-th
/// character mod ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiVector {
    entries: Vec<ModOneOdd>,
}

impl XiVector {
    pub fn from_entries(entries: Vec<ModOneOdd>) -> Result<Self> {
        if entries.is_empty() || entries.len() % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "a transform-coordinate vector needs odd positive length, got {}",
                entries.len()
            )));
        }
        Ok(XiVector { entries })
    }

    pub fn k(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn entries(&self) -> &[ModOneOdd] {
        &self.entries
    }

    /// Entrywise negation mod 1.
    pub fn neg(&self) -> XiVector {
        XiVector {
            entries: self.entries.iter().map(ModOneOdd::neg).collect(),
        }
    }
}

/// Twist parameters reduced mod k; each must be a unit.
fn reduce_twists(k: u64, ells: &[i64]) -> Result<Vec<u64>> {
    if ells.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one twist parameter is required".into(),
        ));
    }
    let mut out = Vec::with_capacity(ells.len());
    for &l in ells {
        let r = l.rem_euclid(k as i64) as u64;
        if gcd(r, k) != 1 {
            return Err(Error::NotCoprime(l, k));
        }
        out.push(r);
    }
    Ok(out)
}

/// (ζ^e + 1)/(ζ^e − 1) in ℚ(ζ_k), defined for e ≢ 0 mod k.
fn ratio(k: u64, e: u64) -> Result<CycNum> {
    let z = CycNum::zeta_pow(k, e)?;
    let one = CycNum::one(k)?;
    z.try_add(&one)?.try_mul(&z.try_sub(&one)?.inv()?)
}

/// The signature character at h ∈ ℤ/k: zero at h = 0, and otherwise
/// −(λ^h+1)/(λ^h−1) · ∏ᵢ (λ^{hℓᵢ}+1)/(λ^{hℓᵢ}−1) with λ = ζ_k.
pub fn alpha_character(k: u64, ells: &[i64], h: u64) -> Result<CycNum> {
    let ells = reduce_twists(k, ells)?;
    let h = h % k;
    if h == 0 {
        return CycNum::zero(k);
    }
    let mut acc = ratio(k, h)?.neg();
    for &l in &ells {
        acc = acc.try_mul(&ratio(k, h * l % k)?)?;
    }
    Ok(acc)
}

/// ξ(k;ℓ₁,…,ℓ_m): the inverse character transform of α, one rational
/// coefficient per character, reduced mod 1.
pub fn xi_vector(k: u64, ells: &[i64]) -> Result<XiVector> {
    let alphas: Vec<CycNum> = (0..k)
        .map(|h| alpha_character(k, ells, h))
        .collect::<Result<_>>()?;
    let kq = BigRational::from_integer(BigInt::from(k));
    let mut entries = Vec::with_capacity(k as usize);
    for i in 0..k {
        // a_i = (1/k) Σ_h α(h) ζ^{−hi}
        let mut s = CycNum::zero(k)?;
        for (h, a) in alphas.iter().enumerate() {
            let e = (k - (h as u64 * i) % k) % k;
            s = s.try_add(&a.try_mul(&CycNum::zeta_pow(k, e)?)?)?;
        }
        entries.push(mod_one(&(s.rational_part()? / &kq))?);
    }
    Ok(XiVector { entries })
}

/// (P^(h) v)_i = v_{hi mod k}; h must be a unit mod k.
pub fn perm_apply(h: u64, v: &XiVector) -> Result<XiVector> {
    let k = v.k();
    let h = h % k;
    if gcd(h, k) != 1 {
        return Err(Error::NotCoprime(h as i64, k));
    }
    Ok(XiVector {
        entries: (0..k)
            .map(|i| v.entries[(h * i % k) as usize].clone())
            .collect(),
    })
}

/// The invariant of the lens space L(k;ℓ…) with coefficient group ℤ/k:
/// one "o" for the trivial homomorphism plus one transformed ξ per
/// nonzero h, merged as a multiset of total mass k.
pub fn lens_kdw_cyclic(k: u64, ells: &[i64]) -> Result<FormalSum> {
    let xi = xi_vector(k, ells)?;
    let mut sum = FormalSum::new();
    sum.add_term(Term::Zero, 1);
    for h in 1..k {
        sum.add_term(Term::Xi(perm_apply(h, &xi)?), 1);
    }
    Ok(sum)
}
