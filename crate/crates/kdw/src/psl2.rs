//! The group PSL₂(F_p): canonical element representatives, the σ_T /
//! σ_U / σ_B parametrizations, the cyclic subgroups H_k, conjugacy
//! classification, and the class- and subgroup-counting results.
//!
//! An element is stored as the sign representative of ±M whose first
//! nonzero entry (row-major) lies in [1, (p−1)/2]; this makes equality,
//! ordering, hashing, and exhaustive enumeration well-defined.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{is_prime, prime_factors, valuation};
use crate::error::{Error, Result};
use crate::ffield::{self, Fp2Elem, Generators};

/// An element of PSL₂(F_p), canonicalized; entries row-major [a,b,c,d].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Psl2Elem {
    p: u64,
    m: [u64; 4],
}

impl Psl2Elem {
    /// Builds ±[[a,b],[c,d]] from residues mod p; the determinant must
    /// be 1.
    pub fn new(p: u64, entries: [u64; 4]) -> Result<Self> {
        if p < 5 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "p = {p} must be an odd prime >= 5"
            )));
        }
        let m = entries.map(|v| v % p);
        let det = (m[0] * m[3] % p + p - m[1] * m[2] % p) % p;
        if det != 1 {
            return Err(Error::InvalidArgument(format!(
                "determinant is {det}, not 1, mod {p}"
            )));
        }
        Ok(Self::canonical(p, m))
    }

    fn canonical(p: u64, m: [u64; 4]) -> Psl2Elem {
        let half = (p - 1) / 2;
        let first = m
            .iter()
            .copied()
            .find(|&v| v != 0)
            .expect("an invertible matrix is nonzero");
        let m = if first > half { m.map(|v| (p - v) % p) } else { m };
        Psl2Elem { p, m }
    }

    pub fn identity(p: u64) -> Psl2Elem {
        Psl2Elem { p, m: [1, 0, 0, 1] }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> [u64; 4] {
        self.m
    }

    pub fn mul(&self, other: &Psl2Elem) -> Psl2Elem {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let a = &self.m;
        let b = &other.m;
        Self::canonical(
            p,
            [
                (a[0] * b[0] + a[1] * b[2]) % p,
                (a[0] * b[1] + a[1] * b[3]) % p,
                (a[2] * b[0] + a[3] * b[2]) % p,
                (a[2] * b[1] + a[3] * b[3]) % p,
            ],
        )
    }

    pub fn inv(&self) -> Psl2Elem {
        let p = self.p;
        let [a, b, c, d] = self.m;
        Self::canonical(p, [d, (p - b) % p, (p - c) % p, a])
    }

    pub fn pow(&self, mut e: u64) -> Psl2Elem {
        let mut base = *self;
        let mut acc = Psl2Elem::identity(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.m == [1, 0, 0, 1]
    }

    /// Smallest n ≥ 1 with xⁿ = I; at most p+1 in PSL₂(F_p).
    pub fn order(&self) -> u64 {
        let mut acc = *self;
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.mul(self);
            n += 1;
        }
        n
    }

    /// Trace as an element of F_p/{±1}, canonicalized into [0,(p−1)/2].
    pub fn trace_pm(&self) -> u64 {
        let t = (self.m[0] + self.m[3]) % self.p;
        t.min(self.p - t)
    }
}

/// σ_T(x) = diag(x, x⁻¹) for x ∈ F_p^×.
pub fn sigma_t(p: u64, x: u64) -> Result<Psl2Elem> {
    let x = x % p;
    if x == 0 {
        return Err(Error::InvalidArgument(
            "sigma_T needs a nonzero argument".into(),
        ));
    }
    Psl2Elem::new(p, [x, 0, 0, ffield::inv_mod(x, p)])
}

/// σ_U(x) = [[1, x], [0, 1]].
pub fn sigma_u(p: u64, x: u64) -> Result<Psl2Elem> {
    Psl2Elem::new(p, [1, x % p, 0, 1])
}

/// σ_B(x + y√Δ) = [[x, Δy], [y, x]], defined on the norm-1 circle.
pub fn sigma_b(p: u64, delta: u64, el: Fp2Elem) -> Result<Psl2Elem> {
    let f = ffield::Fp2::new(p, delta)?;
    let el = f.elem(el.x, el.y);
    let norm = f.norm(el);
    if norm != 1 {
        return Err(Error::InvalidArgument(format!(
            "sigma_B needs a norm-1 argument; got norm {norm}"
        )));
    }
    Psl2Elem::new(p, [el.x, f.delta() * el.y % p, el.y, el.x])
}

/// Conjugacy-class invariant: identity, the two unipotent square
/// classes, or split/nonsplit keyed by the ±trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    Identity,
    UnipotentSquare,
    UnipotentNonsquare,
    Split { trace_pm: u64 },
    Nonsplit { trace_pm: u64 },
}

/// Classifies x by trace and, for trace ≡ ±2, by the square class of
/// the nilpotent part: normalize the SL₂ lift to trace 2, write
/// x = I + N, pick u spanning ker N, extend to an SL₂ basis (u, w),
/// and read b from Nw = b·u.
pub fn class_of(x: &Psl2Elem) -> ClassId {
    let p = x.p;
    if x.is_identity() {
        return ClassId::Identity;
    }
    let t = (x.m[0] + x.m[3]) % p;
    if t == 2 || t == p - 2 {
        let m = if t == 2 { x.m } else { x.m.map(|v| (p - v) % p) };
        let n = [(m[0] + p - 1) % p, m[1], m[2], (m[3] + p - 1) % p];
        let u = if n[0] != 0 || n[1] != 0 {
            [n[1], (p - n[0]) % p]
        } else {
            [n[3], (p - n[2]) % p]
        };
        let w = if u[0] != 0 {
            [0, ffield::inv_mod(u[0], p)]
        } else {
            [(p - ffield::inv_mod(u[1], p)) % p, 0]
        };
        let nw = [(n[0] * w[0] + n[1] * w[1]) % p, (n[2] * w[0] + n[3] * w[1]) % p];
        let b = if u[0] != 0 {
            nw[0] * ffield::inv_mod(u[0], p) % p
        } else {
            nw[1] * ffield::inv_mod(u[1], p) % p
        };
        debug_assert_ne!(b, 0, "the nilpotent part of a non-identity unipotent is nonzero");
        if ffield::is_square(p, b) {
            ClassId::UnipotentSquare
        } else {
            ClassId::UnipotentNonsquare
        }
    } else {
        let disc = (t * t % p + p - 4) % p;
        let trace_pm = t.min(p - t);
        if ffield::is_square(p, disc) {
            ClassId::Split { trace_pm }
        } else {
            ClassId::Nonsplit { trace_pm }
        }
    }
}

/// Every element of PSL₂(F_p), canonically sorted; |G| = (p³−p)/2.
pub fn enumerate_group(p: u64) -> Vec<Psl2Elem> {
    let mut set = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            if a == 0 {
                if b == 0 {
                    continue;
                }
                let c = (p - ffield::inv_mod(b, p)) % p;
                for d in 0..p {
                    set.insert(Psl2Elem::canonical(p, [0, b, c, d]));
                }
            } else {
                let ainv = ffield::inv_mod(a, p);
                for c in 0..p {
                    let d = ainv * ((1 + b * c) % p) % p;
                    set.insert(Psl2Elem::canonical(p, [a, b, c, d]));
                }
            }
        }
    }
    set.into_iter().collect()
}

/// A conjugacy class: invariant id, representative, and size.
#[derive(Clone, Copy, Debug)]
pub struct ClassInfo {
    pub id: ClassId,
    pub rep: Psl2Elem,
    pub size: u64,
}

/// The complete list of conjugacy classes, sorted by ClassId; the sizes
/// partition (p³−p)/2. Representatives follow the torus parametrization
/// by ζ₋ and ζ₊ powers, with the split/nonsplit ranges depending on
/// p mod 4.
pub fn enumerate_classes(gens: &Generators) -> Vec<ClassInfo> {
    let p = gens.p();
    let delta = gens.delta();
    let mut out = vec![ClassInfo {
        id: ClassId::Identity,
        rep: Psl2Elem::identity(p),
        size: 1,
    }];
    for arg in [1, delta] {
        let rep = sigma_u(p, arg).expect("unipotent parameters are valid");
        out.push(ClassInfo {
            id: class_of(&rep),
            rep,
            size: (p * p - 1) / 2,
        });
    }
    let (t_range, b_range) = if p % 4 == 1 {
        ((p - 1) / 4, (p - 1) / 4)
    } else {
        ((p - 3) / 4, (p + 1) / 4)
    };
    for l in 1..=t_range {
        let rep = sigma_t(p, gens.zeta_minus_pow(l)).expect("nonzero torus parameter");
        // the order-2 class (present in T iff p ≡ 1 mod 4) is half-size
        let size = if p % 4 == 1 && l == (p - 1) / 4 {
            (p * p + p) / 2
        } else {
            p * p + p
        };
        out.push(ClassInfo { id: class_of(&rep), rep, size });
    }
    for m in 1..=b_range {
        let rep = sigma_b(p, delta, gens.zeta_plus_pow(m)).expect("norm-1 torus parameter");
        let size = if p % 4 == 3 && m == (p + 1) / 4 {
            (p * p - p) / 2
        } else {
            p * p - p
        };
        out.push(ClassInfo { id: class_of(&rep), rep, size });
    }
    out.sort_by_key(|c| c.id);
    out
}

/// Which torus a cyclic subgroup of odd prime order lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    Split,
    Unipotent,
    Nonsplit,
}

/// The canonical cyclic subgroup H_k of order k.
#[derive(Clone, Copy, Debug)]
pub struct CyclicSubgroup {
    k: u64,
    generator: Psl2Elem,
    kind: SubgroupKind,
}

impl CyclicSubgroup {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn generator(&self) -> Psl2Elem {
        self.generator
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    /// I, g, g², …, g^{k−1} in power order.
    pub fn elements(&self) -> Vec<Psl2Elem> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut acc = Psl2Elem::identity(self.generator.p());
        for _ in 0..self.k {
            out.push(acc);
            acc = acc.mul(&self.generator);
        }
        out
    }
}

pub(crate) fn check_subgroup_order(p: u64, k: u64) -> Result<SubgroupKind> {
    if k >= 3 && k % 2 == 1 && is_prime(k) {
        if k == p {
            return Ok(SubgroupKind::Unipotent);
        }
        if (p - 1) % k == 0 {
            return Ok(SubgroupKind::Split);
        }
        if (p + 1) % k == 0 {
            return Ok(SubgroupKind::Nonsplit);
        }
    }
    Err(Error::NotADivisor(k, p))
}

/// The canonical H_k: σ_T(ζ₋^{(p−1)/2k}) if k | p−1, σ_U(1) if k = p,
/// σ_B(ζ₊^{(p+1)/2k}) if k | p+1.
pub fn subgroup_hk(gens: &Generators, k: u64) -> Result<CyclicSubgroup> {
    let p = gens.p();
    let kind = check_subgroup_order(p, k)?;
    let generator = match kind {
        SubgroupKind::Split => sigma_t(p, gens.zeta_minus_pow((p - 1) / (2 * k)))?,
        SubgroupKind::Unipotent => sigma_u(p, 1)?,
        SubgroupKind::Nonsplit => sigma_b(p, gens.delta(), gens.zeta_plus_pow((p + 1) / (2 * k)))?,
    };
    debug_assert_eq!(generator.order(), k);
    Ok(CyclicSubgroup { k, generator, kind })
}

/// r(k): the number of conjugacy classes of elements of k-power order,
/// for prime k, in closed form.
pub fn r_count(p: u64, k: u64) -> Result<u64> {
    if !is_prime(k) {
        return Err(Error::InvalidArgument(format!("r(k) requires a prime k, got {k}")));
    }
    Ok(if k == p {
        2
    } else if k == 2 {
        let half = if p % 4 == 1 { (p - 1) / 2 } else { (p + 1) / 2 };
        1 << (valuation(half, 2) - 1)
    } else if (p - 1) % k == 0 {
        (k.pow(valuation((p - 1) / 2, k)) - 1) / 2
    } else if (p + 1) % k == 0 {
        (k.pow(valuation((p + 1) / 2, k)) - 1) / 2
    } else {
        0
    })
}

/// The exponents of K₁(B PSL₂(F_p)) ≅ ∏_q (ℤ/q^∞)^{r(q)}, one entry per
/// prime q dividing the group order.
pub fn k1_structure(p: u64) -> BTreeMap<u64, u64> {
    let mut qs: BTreeSet<u64> = prime_factors(p - 1).into_iter().collect();
    qs.insert(p);
    qs.extend(prime_factors(p + 1));
    qs.into_iter()
        .map(|q| (q, r_count(p, q).expect("q is prime")))
        .collect()
}

/// m_k: the number of cyclic subgroups of order k in PSL₂(F_p).
pub fn count_order_k_subgroups(p: u64, k: u64) -> Result<u64> {
    Ok(match check_subgroup_order(p, k)? {
        SubgroupKind::Split => (p * p + p) / 2,
        SubgroupKind::Unipotent => p + 1,
        SubgroupKind::Nonsplit => (p * p - p) / 2,
    })
}
