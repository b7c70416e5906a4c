//! Induction from the cyclic subgroups H_k up to PSL₂(F_p): exact
//! induced characters by the brute Frobenius sum, the induction kernel
//! and the quotient coordinates it defines, and the lens-space
//! invariant with PSL₂ coefficients.
//!
//! The production path is `to_quotient`, which needs no induction at
//! all; the Frobenius machinery here is a verification oracle and is
//! deliberately brute-force, capped at small p.

use std::collections::BTreeMap;

use num::{BigInt, BigRational};
use serde_json::{json, Value};

use crate::cyclicrep::{perm_apply, xi_vector, XiVector};
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, ModOneOdd};
use crate::ffield::{self, Generators};
use crate::formal::{render_vector, FormalSum, Term};
use crate::polyfield::{self, QuotientField};
use crate::psl2::{
    self, check_subgroup_order, ClassId, CyclicSubgroup, Psl2Elem, SubgroupKind,
};

/// Characteristic bound for the brute Frobenius sums.
const FROBENIUS_P_MAX: u64 = 31;
/// Characteristic bound for the exact rank computations.
const RANK_P_MAX: u64 = 13;

/// Which quotient coordinates apply: folding i ↦ ±i for k ≠ p, or the
/// square-class collapse for k = p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotKind {
    Fold,
    SquareClass,
}

/// The image of a transform-coordinate vector in the quotient by the
/// induction kernel: (k+1)/2 fold coordinates, or the 3 square-class
/// coordinates ([ρ₀], [ρ₁], [ρ_Δ]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientCoord {
    k: u64,
    kind: QuotKind,
    entries: Vec<ModOneOdd>,
}

impl QuotientCoord {
    pub fn new(k: u64, kind: QuotKind, entries: Vec<ModOneOdd>) -> Result<Self> {
        let expected = match kind {
            QuotKind::Fold => (k + 1) / 2,
            QuotKind::SquareClass => 3,
        };
        if entries.len() as u64 != expected {
            return Err(Error::InvalidArgument(format!(
                "quotient coordinates for k = {k} need {expected} entries, got {}",
                entries.len()
            )));
        }
        Ok(QuotientCoord { k, kind, entries })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn kind(&self) -> QuotKind {
        self.kind
    }

    pub fn entries(&self) -> &[ModOneOdd] {
        &self.entries
    }

    pub fn to_json(&self) -> Value {
        let kind = match self.kind {
            QuotKind::Fold => "fold",
            QuotKind::SquareClass => "square-class",
        };
        json!({
            "entries": self.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "k": self.k,
            "kind": kind,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let err = || Error::Parse(format!("malformed quotient coordinate: {v}"));
        let k = v.get("k").and_then(Value::as_u64).ok_or_else(err)?;
        let kind = match v.get("kind").and_then(Value::as_str).ok_or_else(err)? {
            "fold" => QuotKind::Fold,
            "square-class" => QuotKind::SquareClass,
            _ => return Err(err()),
        };
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(err)?
            .iter()
            .map(|e| e.as_str().ok_or_else(err)?.parse::<ModOneOdd>())
            .collect::<Result<Vec<_>>>()?;
        QuotientCoord::new(k, kind, entries)
    }
}

impl std::fmt::Display for QuotientCoord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", render_vector(&self.entries))
    }
}

/// Projects v ∈ (ℤ₍₂₎/ℤ)^k to quotient coordinates: fold out[i] =
/// v[i] ⊕ v[k−i] for k ≠ p; for k = p, (v[0], ⊕_{s square} v[s],
/// ⊕_{s nonsquare} v[s]).
pub fn to_quotient(p: u64, v: &XiVector) -> Result<QuotientCoord> {
    let k = v.k();
    let kind = check_subgroup_order(p, k)?;
    let entries = v.entries();
    if kind == SubgroupKind::Unipotent {
        let mut sq = ModOneOdd::zero();
        let mut nonsq = ModOneOdd::zero();
        for s in 1..k {
            if ffield::is_square(p, s) {
                sq = sq.add(&entries[s as usize]);
            } else {
                nonsq = nonsq.add(&entries[s as usize]);
            }
        }
        return QuotientCoord::new(k, QuotKind::SquareClass, vec![entries[0].clone(), sq, nonsq]);
    }
    let mut out = vec![entries[0].clone()];
    for i in 1..=(k - 1) / 2 {
        out.push(entries[i as usize].add(&entries[(k - i) as usize]));
    }
    QuotientCoord::new(k, QuotKind::Fold, out)
}

/// A class function on PSL₂(F_p) with values in ℚ(ζ_k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    p: u64,
    conductor: u64,
    values: BTreeMap<ClassId, CycNum>,
}

impl ClassFunction {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn value(&self, id: &ClassId) -> Option<&CycNum> {
        self.values.get(id)
    }

    pub fn values(&self) -> &BTreeMap<ClassId, CycNum> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(CycNum::is_zero)
    }
}

/// counts[j] = #{x ∈ G : x·rep·x⁻¹ = elems[j]}.
fn conjugation_counts(group: &[Psl2Elem], rep: &Psl2Elem, elems: &[Psl2Elem]) -> Vec<u64> {
    let index: BTreeMap<Psl2Elem, usize> =
        elems.iter().enumerate().map(|(j, e)| (*e, j)).collect();
    let mut counts = vec![0u64; elems.len()];
    for x in group {
        let c = x.mul(rep).mul(&x.inv());
        if let Some(&j) = index.get(&c) {
            counts[j] += 1;
        }
    }
    counts
}

fn check_frobenius_bound(p: u64) -> Result<()> {
    if p > FROBENIUS_P_MAX {
        return Err(Error::TooLarge(p, FROBENIUS_P_MAX));
    }
    Ok(())
}

/// Induces the linear combination Σᵢ coeffs[i]·χᵢ of characters of H_k
/// up to G, by the Frobenius sum evaluated on every conjugacy class.
pub fn induced_combination(
    gens: &Generators,
    hk: &CyclicSubgroup,
    coeffs: &[i64],
) -> Result<ClassFunction> {
    let p = gens.p();
    check_frobenius_bound(p)?;
    let k = hk.k();
    if coeffs.len() as u64 != k {
        return Err(Error::InvalidArgument(format!(
            "expected {k} character coefficients, got {}",
            coeffs.len()
        )));
    }
    let elems = hk.elements();
    let group = psl2::enumerate_group(p);
    // χ(h^j) = Σ_i coeffs[i]·ζ^{ij}, precomputed per power j
    let mut chi = Vec::with_capacity(k as usize);
    for j in 0..k {
        let mut v = CycNum::zero(k)?;
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = CycNum::zeta_pow(k, i as u64 * j % k)?
                .scale(&BigRational::from_integer(BigInt::from(c)));
            v = v.try_add(&term)?;
        }
        chi.push(v);
    }
    let inv_k = BigRational::new(BigInt::from(1), BigInt::from(k));
    let mut values = BTreeMap::new();
    for class in psl2::enumerate_classes(gens) {
        let counts = conjugation_counts(&group, &class.rep, &elems);
        let mut v = CycNum::zero(k)?;
        for (j, &n) in counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            v = v.try_add(&chi[j].scale(&BigRational::from_integer(BigInt::from(n))))?;
        }
        values.insert(class.id, v.scale(&inv_k));
    }
    Ok(ClassFunction {
        p,
        conductor: k,
        values,
    })
}

/// The single induced character Ind χᵢ.
pub fn induced_character(gens: &Generators, hk: &CyclicSubgroup, i: u64) -> Result<ClassFunction> {
    let k = hk.k();
    let mut coeffs = vec![0i64; k as usize];
    coeffs[(i % k) as usize] = 1;
    induced_combination(gens, hk, &coeffs)
}

/// Additive generators of the induction kernel in character
/// coordinates: ρᵢ − ρ₋ᵢ for k ≠ p; for k = p, ρ₁ − ρ_s and
/// ρ_Δ − ρ_{sΔ} over nontrivial squares s.
pub fn kernel_generators(p: u64, k: u64) -> Result<Vec<Vec<i64>>> {
    let kind = check_subgroup_order(p, k)?;
    let mut gens = Vec::new();
    let e = |i: u64, j: u64| {
        let mut v = vec![0i64; k as usize];
        v[i as usize] += 1;
        v[j as usize] -= 1;
        v
    };
    if kind == SubgroupKind::Unipotent {
        let delta = ffield::min_nonsquare(p);
        for s in 2..k {
            if !ffield::is_square(p, s) {
                continue;
            }
            gens.push(e(1, s));
            gens.push(e(delta, s * delta % p));
        }
    } else {
        for i in 1..=(k - 1) / 2 {
            gens.push(e(i, k - i));
        }
    }
    Ok(gens)
}

/// The three maximal inducing subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducingSubgroup {
    SplitTorus,
    Unipotent,
    NonsplitTorus,
}

/// Rank of the image of induction from the full subgroup: the induced
/// characters are expanded into rational coordinates over a ℚ-basis of
/// ℚ(ζ_n) per class, and the rank computed by exact elimination.
pub fn image_rank(gens: &Generators, sub: InducingSubgroup) -> Result<usize> {
    let p = gens.p();
    if p > RANK_P_MAX {
        return Err(Error::TooLarge(p, RANK_P_MAX));
    }
    let (n, generator) = match sub {
        InducingSubgroup::SplitTorus => (
            (p - 1) / 2,
            psl2::sigma_t(p, gens.zeta_minus())?,
        ),
        InducingSubgroup::Unipotent => (p, psl2::sigma_u(p, 1)?),
        InducingSubgroup::NonsplitTorus => (
            (p + 1) / 2,
            psl2::sigma_b(p, gens.delta(), gens.zeta_plus())?,
        ),
    };
    debug_assert_eq!(generator.order(), n);
    let mut elems = Vec::with_capacity(n as usize);
    let mut acc = Psl2Elem::identity(p);
    for _ in 0..n {
        elems.push(acc);
        acc = acc.mul(&generator);
    }
    let group = psl2::enumerate_group(p);
    let classes = psl2::enumerate_classes(gens);
    let counts: Vec<Vec<u64>> = classes
        .iter()
        .map(|c| conjugation_counts(&group, &c.rep, &elems))
        .collect();
    // row i = Ind χᵢ, each ζ_n-valued class entry expanded to the
    // rational coefficients of its reduction mod the n-th cyclotomic
    // polynomial (the 1/|H| normalization cannot change the rank)
    let field = QuotientField::cyclotomic(n);
    let mut rows = Vec::with_capacity(n as usize);
    for i in 0..n {
        let mut row = Vec::new();
        for class_counts in &counts {
            let mut v = field.zero_el();
            for (j, &cnt) in class_counts.iter().enumerate() {
                if cnt == 0 {
                    continue;
                }
                let mono = field.monomial((i * j as u64 % n) as usize);
                let scaled: Vec<BigRational> = mono
                    .iter()
                    .map(|c| c * BigRational::from_integer(BigInt::from(cnt)))
                    .collect();
                v = field.add_el(&v, &scaled);
            }
            row.extend(v);
        }
        rows.push(row);
    }
    Ok(polyfield::rational_rank(rows))
}

/// The invariant of the lens space L(k;ℓ) with coefficient group
/// PSL₂(F_p): one "o" plus, with multiplicity m_k, the quotient image
/// of each transformed ξ.
pub fn lens_kdw_psl2(gens: &Generators, k: u64, ell: i64) -> Result<FormalSum> {
    let p = gens.p();
    check_subgroup_order(p, k)?;
    let m_k = psl2::count_order_k_subgroups(p, k)? as i64;
    let xi = xi_vector(k, &[ell])?;
    let mut sum = FormalSum::new();
    sum.add_term(Term::Zero, 1);
    for h in 1..k {
        sum.add_term(Term::Quot(to_quotient(p, &perm_apply(h, &xi)?)?), m_k);
    }
    Ok(sum)
}
