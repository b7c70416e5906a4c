//! Exact number systems: arbitrary-precision rationals, the group of
//! mod-1 fractions with odd denominator, and the cyclotomic field
//! Q(zeta_k) for odd prime k.
//!
//! Fractions with odd denominator, taken mod 1, form the group that the
//! invariant's coordinates live in; an even denominator anywhere is a
//! bug and is rejected loudly rather than silently localized away.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, BigUint};
use num::{Integer, One, Zero};

use crate::error::{Error, Result};
use crate::polyfield::QuotientField;
use crate::{arith, polyfield};

pub use num::BigRational;

/// Reduces a rational with odd lowest-terms denominator mod 1.
pub fn mod_one(q: &BigRational) -> Result<ModOneOdd> {
    if q.denom().is_even() {
        return Err(Error::EvenDenominator(q.to_string()));
    }
    let num = q.numer().mod_floor(q.denom());
    if num.is_zero() {
        return Ok(ModOneOdd::zero());
    }
    Ok(ModOneOdd {
        num: num.to_biguint().unwrap(),
        den: q.denom().to_biguint().unwrap(),
    })
}

/// A fraction mod 1 with odd denominator, stored in lowest terms with
/// 0 <= num < den; zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModOneOdd {
    num: BigUint,
    den: BigUint,
}

impl ModOneOdd {
    pub fn zero() -> Self {
        ModOneOdd {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    /// Canonicalizes num/den; the denominator may not be zero and must
    /// be odd once the fraction is reduced.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument(format!("zero denominator in {num}/0")));
        }
        mod_one(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The group operation: addition mod 1.
    pub fn add(&self, other: &Self) -> Self {
        mod_one(&(self.value() + other.value())).expect("odd denominators are closed under addition")
    }

    /// The group inverse: negation mod 1.
    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return ModOneOdd::zero();
        }
        ModOneOdd {
            num: &self.den - &self.num,
            den: self.den.clone(),
        }
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(self.num.clone().into(), self.den.clone().into())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }
}

impl Ord for ModOneOdd {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for ModOneOdd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ModOneOdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ModOneOdd {
    type Err = Error;

    /// Accepts "a/b" or a bare integer "a", with optional sign and
    /// whitespace, and canonicalizes mod 1.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let (n, d) = match body.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (body, "1"),
        };
        let num: BigInt = n
            .parse()
            .map_err(|_| Error::Parse(format!("invalid fraction `{s}`")))?;
        let den: BigInt = d
            .parse()
            .map_err(|_| Error::Parse(format!("invalid fraction `{s}`")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        mod_one(&BigRational::new(num, den))
    }
}

/// An element of Q(zeta_k) for odd prime k: a polynomial in zeta_k of
/// degree < k−1, i.e. already reduced mod 1 + x + ... + x^{k−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycNum {
    k: u64,
    coeffs: Vec<BigRational>,
}

fn field(k: u64) -> QuotientField {
    QuotientField::cyclotomic_prime(k)
}

fn check_conductor(k: u64) -> Result<()> {
    if k < 3 || k % 2 == 0 || !arith::is_prime(k) {
        return Err(Error::InvalidArgument(format!(
            "conductor {k} must be an odd prime"
        )));
    }
    Ok(())
}

impl CycNum {
    /// Builds an element from coefficients of any degree, reducing mod
    /// the cyclotomic relation.
    pub fn new(k: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        check_conductor(k)?;
        let mut coeffs = coeffs;
        polyfield::trim(&mut coeffs);
        Ok(CycNum {
            k,
            coeffs: field(k).reduce(coeffs),
        })
    }

    pub fn zero(k: u64) -> Result<Self> {
        Self::from_rational(k, BigRational::zero())
    }

    pub fn one(k: u64) -> Result<Self> {
        Self::from_rational(k, BigRational::one())
    }

    pub fn from_rational(k: u64, q: BigRational) -> Result<Self> {
        Self::new(k, vec![q])
    }

    /// zeta_k^e; the exponent is taken mod k.
    pub fn zeta_pow(k: u64, e: u64) -> Result<Self> {
        check_conductor(k)?;
        let e = (e % k) as usize;
        Ok(CycNum {
            k,
            coeffs: field(k).monomial(e),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.k
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        QuotientField::is_zero_el(&self.coeffs)
    }

    fn check_same(&self, other: &CycNum) -> Result<()> {
        if self.k != other.k {
            return Err(Error::ConductorMismatch(self.k, other.k));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same(other)?;
        Ok(CycNum {
            k: self.k,
            coeffs: field(self.k).add_el(&self.coeffs, &other.coeffs),
        })
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same(other)?;
        Ok(CycNum {
            k: self.k,
            coeffs: field(self.k).sub_el(&self.coeffs, &other.coeffs),
        })
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same(other)?;
        Ok(CycNum {
            k: self.k,
            coeffs: field(self.k).mul_el(&self.coeffs, &other.coeffs),
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over
    /// Q[x] against the cyclotomic modulus.
    pub fn inv(&self) -> Result<CycNum> {
        Ok(CycNum {
            k: self.k,
            coeffs: field(self.k).inv_el(&self.coeffs)?,
        })
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> CycNum {
        CycNum {
            k: self.k,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The constant coefficient, provided every other coefficient
    /// vanishes; a nonzero one signals an upstream bug.
    pub fn rational_part(&self) -> Result<BigRational> {
        if let Some(i) = (1..self.coeffs.len()).find(|&i| !self.coeffs[i].is_zero()) {
            return Err(Error::NotRational(i));
        }
        Ok(self.coeffs[0].clone())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn mod_one_canonical_examples() {
        assert_eq!(mod_one(&rat(-2, 9)).unwrap().to_string(), "7/9");
        assert_eq!(mod_one(&rat(0, 1)).unwrap().to_string(), "0/1");
        assert_eq!(mod_one(&rat(21, 9)).unwrap().to_string(), "1/3");
        assert!(matches!(
            mod_one(&rat(1, 6)),
            Err(Error::EvenDenominator(_))
        ));
        // 2/6 reduces to 1/3, which is fine
        assert_eq!(mod_one(&rat(2, 6)).unwrap().to_string(), "1/3");
    }

    #[test]
    fn mod_one_parses_leniently() {
        assert_eq!("-2/9".parse::<ModOneOdd>().unwrap().to_string(), "7/9");
        assert_eq!(" 21/9 ".parse::<ModOneOdd>().unwrap().to_string(), "1/3");
        assert_eq!("3".parse::<ModOneOdd>().unwrap(), ModOneOdd::zero());
        assert!("1/0".parse::<ModOneOdd>().is_err());
        assert!("x/3".parse::<ModOneOdd>().is_err());
        assert!("1/2".parse::<ModOneOdd>().is_err());
    }

    #[test]
    fn mod_one_orders_by_value() {
        let a = ModOneOdd::new(1, 3).unwrap();
        let b = ModOneOdd::new(2, 5).unwrap();
        assert!(a < b);
        assert!(ModOneOdd::zero() < a);
        assert_eq!(a.cmp(&a), Ordering::Equal);
    }

    #[test]
    fn zeta_powers_wrap_and_reduce() {
        let z2 = CycNum::zeta_pow(3, 2).unwrap();
        assert_eq!(z2.coeffs(), &[rat(-1, 1), rat(-1, 1)]);
        assert_eq!(
            CycNum::zeta_pow(5, 7).unwrap(),
            CycNum::zeta_pow(5, 2).unwrap()
        );
        assert_eq!(CycNum::zeta_pow(3, 3).unwrap(), CycNum::one(3).unwrap());
    }

    #[test]
    fn conductor_validation() {
        for k in [0u64, 1, 2, 4, 9, 15] {
            assert!(CycNum::zero(k).is_err(), "k = {k}");
        }
        let a = CycNum::one(3).unwrap();
        let b = CycNum::one(5).unwrap();
        assert!(matches!(
            a.try_add(&b),
            Err(Error::ConductorMismatch(3, 5))
        ));
    }

    #[test]
    fn field_arithmetic_examples() {
        let z = CycNum::zeta_pow(3, 1).unwrap();
        let one = CycNum::one(3).unwrap();
        // zeta_3 * zeta_3 = -1 - zeta_3
        assert_eq!(
            z.try_mul(&z).unwrap(),
            CycNum::new(3, vec![rat(-1, 1), rat(-1, 1)]).unwrap()
        );
        // zeta_5 * zeta_5^4 = 1
        let z5 = CycNum::zeta_pow(5, 1).unwrap();
        let z54 = CycNum::zeta_pow(5, 4).unwrap();
        assert_eq!(z5.try_mul(&z54).unwrap(), CycNum::one(5).unwrap());
        // (zeta_3 + 1) + (zeta_3 - 1) = 2*zeta_3
        let zp1 = z.try_add(&one).unwrap();
        let zm1 = z.try_sub(&one).unwrap();
        assert_eq!(zp1.try_add(&zm1).unwrap(), z.scale(&rat(2, 1)));
    }

    #[test]
    fn inverses() {
        let z = CycNum::zeta_pow(3, 1).unwrap();
        assert_eq!(z.inv().unwrap(), CycNum::zeta_pow(3, 2).unwrap());
        let two = CycNum::from_rational(3, rat(2, 1)).unwrap();
        assert_eq!(
            two.inv().unwrap(),
            CycNum::from_rational(3, rat(1, 2)).unwrap()
        );
        assert!(matches!(
            CycNum::zero(3).unwrap().inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn quotient_of_shifted_roots() {
        // q = (zeta_3 + 1) / (zeta_3 - 1), verified by multiplying back
        let z = CycNum::zeta_pow(3, 1).unwrap();
        let one = CycNum::one(3).unwrap();
        let zp1 = z.try_add(&one).unwrap();
        let zm1 = z.try_sub(&one).unwrap();
        let q = zp1.try_mul(&zm1.inv().unwrap()).unwrap();
        assert_eq!(q.try_mul(&zm1).unwrap(), zp1);
        assert_eq!(
            q,
            CycNum::new(3, vec![rat(-1, 3), rat(-2, 3)]).unwrap()
        );
    }

    #[test]
    fn rational_part_detection() {
        let c = CycNum::from_rational(3, rat(7, 9)).unwrap();
        assert_eq!(c.rational_part().unwrap(), rat(7, 9));
        // zeta_5 + zeta_5^2 + zeta_5^3 + zeta_5^4 = -1
        let mut s = CycNum::zero(5).unwrap();
        for e in 1..5 {
            s = s.try_add(&CycNum::zeta_pow(5, e).unwrap()).unwrap();
        }
        assert_eq!(s.rational_part().unwrap(), rat(-1, 1));
        assert!(matches!(
            CycNum::zeta_pow(3, 1).unwrap().rational_part(),
            Err(Error::NotRational(1))
        ));
    }

    proptest! {
        #[test]
        fn mod_one_is_additive(an in -60i64..60, ad in 0i64..30, bn in -60i64..60, bd in 0i64..30) {
            let a = rat(an, 2 * ad + 1);
            let b = rat(bn, 2 * bd + 1);
            let lhs = mod_one(&(&a + &b)).unwrap();
            let rhs = mod_one(&a).unwrap().add(&mod_one(&b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn nonzero_elements_invert(k in prop::sample::select(vec![3u64, 5, 7]),
                                   raw in prop::collection::vec(-5i64..=5, 6)) {
            let coeffs: Vec<BigRational> = raw.iter().map(|&n| rat(n, 1)).collect();
            let a = CycNum::new(k, coeffs).unwrap();
            prop_assume!(!a.is_zero());
            let prod = a.try_mul(&a.inv().unwrap()).unwrap();
            prop_assert_eq!(prod, CycNum::one(k).unwrap());
        }

        #[test]
        fn reduction_is_idempotent(k in prop::sample::select(vec![3u64, 5, 7, 11]),
                                   raw in prop::collection::vec(-9i64..=9, 16)) {
            let coeffs: Vec<BigRational> = raw.iter().map(|&n| rat(n, 1)).collect();
            let once = CycNum::new(k, coeffs).unwrap();
            let twice = CycNum::new(k, once.coeffs().to_vec()).unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn all_zeta_powers_sum_to_zero(k in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
            let mut s = CycNum::zero(k).unwrap();
            for e in 0..k {
                s = s.try_add(&CycNum::zeta_pow(k, e).unwrap()).unwrap();
            }
            prop_assert!(s.is_zero());
        }
    }
}
