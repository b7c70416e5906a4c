//! Exact arithmetic in Q[x]/(m(x)) for a monic irreducible modulus,
//! used for cyclotomic fields of arbitrary conductor.

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};

/// Little-endian coefficient vector; index = degree.
pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division: returns (quotient, remainder) with
/// deg(remainder) < deg(divisor). The divisor must be nonzero.
pub(crate) fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut b = b.clone();
    trim(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let d = r.len() - 1;
        let coef = &r[d] / &b[db];
        for i in 0..=db {
            let t = &coef * &b[i];
            r[d - db + i] -= t;
        }
        q[d - db] = coef;
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    (q, r)
}

/// The n-th cyclotomic polynomial, computed as (x^n - 1) divided by the
/// cyclotomic polynomials of all proper divisors of n.
pub(crate) fn cyclotomic_polynomial(n: u64) -> Poly {
    assert!(n >= 1);
    let mut q = vec![BigRational::zero(); (n + 1) as usize];
    q[0] = -BigRational::one();
    q[n as usize] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            let (quot, rem) = divmod(&q, &cyclotomic_polynomial(d));
            debug_assert!(rem.is_empty());
            q = quot;
        }
    }
    q
}

/// The field Q[x]/(m(x)). Elements are coefficient vectors of fixed
/// length deg(m).
pub(crate) struct QuotientField {
    modulus: Poly,
}

impl QuotientField {
    pub(crate) fn new(modulus: Poly) -> Self {
        assert!(modulus.len() >= 2, "modulus must have positive degree");
        assert!(modulus.last().unwrap().is_one(), "modulus must be monic");
        QuotientField { modulus }
    }

    /// Q(zeta_k) for prime k: modulus 1 + x + ... + x^{k-1}.
    pub(crate) fn cyclotomic_prime(k: u64) -> Self {
        QuotientField::new(vec![BigRational::one(); k as usize])
    }

    /// Q(zeta_n) for arbitrary n >= 2.
    pub(crate) fn cyclotomic(n: u64) -> Self {
        QuotientField::new(cyclotomic_polynomial(n))
    }

    pub(crate) fn deg(&self) -> usize {
        self.modulus.len() - 1
    }

    pub(crate) fn zero_el(&self) -> Poly {
        vec![BigRational::zero(); self.deg()]
    }

    fn pad(&self, mut p: Poly) -> Poly {
        debug_assert!(p.len() <= self.deg());
        p.resize(self.deg(), BigRational::zero());
        p
    }

    /// Reduces an arbitrary-degree polynomial into the fixed-length
    /// representation.
    pub(crate) fn reduce(&self, p: Poly) -> Poly {
        let (_, r) = divmod(&p, &self.modulus);
        self.pad(r)
    }

    /// x^e reduced mod the modulus.
    pub(crate) fn monomial(&self, e: usize) -> Poly {
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        self.reduce(p)
    }

    pub(crate) fn is_zero_el(a: &Poly) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    pub(crate) fn add_el(&self, a: &Poly, b: &Poly) -> Poly {
        self.pad(poly_add(a, b))
    }

    pub(crate) fn sub_el(&self, a: &Poly, b: &Poly) -> Poly {
        self.pad(poly_sub(a, b))
    }

    pub(crate) fn mul_el(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(poly_mul(a, b))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm; the
    /// modulus is irreducible, so every nonzero element is invertible.
    pub(crate) fn inv_el(&self, a: &Poly) -> Result<Poly> {
        if Self::is_zero_el(a) {
            return Err(Error::DivisionByZero);
        }
        let mut r0 = self.modulus.clone();
        let mut r1 = a.clone();
        trim(&mut r1);
        let mut t0: Poly = Vec::new();
        let mut t1: Poly = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r2) = divmod(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // gcd with an irreducible modulus is a nonzero constant
        if r0.len() != 1 {
            return Err(Error::DivisionByZero);
        }
        let c_inv = BigRational::one() / &r0[0];
        let scaled: Poly = t0.iter().map(|c| c * &c_inv).collect();
        Ok(self.reduce(scaled))
    }
}

/// Rank of a rational matrix, by Gaussian elimination.
pub(crate) fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut top = 0;
    for col in 0..ncols {
        let Some(pivot) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, pivot);
        let pinv = BigRational::one() / &rows[top][col];
        for r in top + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &pinv;
            for c in col..ncols {
                let t = &factor * &rows[top][c];
                rows[r][c] -= t;
            }
        }
        rank += 1;
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rank
}
