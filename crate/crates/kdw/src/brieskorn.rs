//! Brieskorn homology spheres Σ(k₁,k₂,k₃): Chebyshev trace machinery
//! over F_p, the admissible set of trace triples, explicit and
//! exhaustive enumeration of homomorphisms to PSL₂(F_p), and the
//! assembly of the invariant — with an independent brute-force oracle.

use std::collections::{BTreeMap, BTreeSet};

use num::integer::gcd;

use crate::arith::is_prime;
use crate::cyclicrep::{perm_apply, xi_vector};
use crate::error::{Error, Result};
use crate::ffield::{self, Generators};
use crate::formal::{FormalSum, Term};
use crate::induction::{to_quotient, QuotientCoord};
use crate::psl2::{
    self, check_subgroup_order, class_of, ClassId, Psl2Elem, SubgroupKind,
};

/// Characteristic bound for the exhaustive homomorphism scans.
const BRUTE_P_MAX: u64 = 31;

/// S_n(t) mod p by the recurrence S₁ = 1, S₂ = t, S_{n+1} = tS_n − S_{n−1}.
pub fn chebyshev_eval(p: u64, n: u64, t: u64) -> u64 {
    assert!(n >= 1);
    let t = t % p;
    let mut prev = 0; // S_0
    let mut cur = 1 % p;
    for _ in 1..n {
        let next = (t * cur % p + p - prev) % p;
        prev = cur;
        cur = next;
    }
    cur
}

/// (S_{2n−1}(t), S_{2n}(t)) in one pass.
fn cheb_pair(p: u64, n: u64, t: u64) -> (u64, u64) {
    (chebyshev_eval(p, 2 * n - 1, t), chebyshev_eval(p, 2 * n, t))
}

fn cheb_order_condition(p: u64, n: u64, t: u64) -> bool {
    let (odd, even) = cheb_pair(p, n, t);
    even == 0 && odd == p - 1
}

/// Xⁿ = I for odd n ≥ 3 and X ≠ I, tested purely on the trace:
/// S_{2n}(t) = 0 and S_{2n−1}(t) = −1 (the condition is ±t-invariant).
pub fn order_by_chebyshev(x: &Psl2Elem, n: u64) -> bool {
    debug_assert!(!x.is_identity());
    let e = x.entries();
    cheb_order_condition(x.p(), n, (e[0] + e[3]) % x.p())
}

/// Sol_k: the ±trace values of the nonidentity elements of H_k, found
/// by scanning the Chebyshev conditions over [0, (p−1)/2].
pub fn sol_set(p: u64, k: u64) -> Result<Vec<u64>> {
    check_subgroup_order(p, k)?;
    Ok((0..=(p - 1) / 2)
        .filter(|&t| cheb_order_condition(p, k, t))
        .collect())
}

/// An admissible triple of ±traces, stored as the lexicographically
/// smallest member of its orbit under sign changes with product +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceTriple {
    p: u64,
    a: u64,
    b: u64,
    c: u64,
}

impl TraceTriple {
    fn canonical(p: u64, a: u64, b: u64, c: u64) -> TraceTriple {
        let neg = |v: u64| (p - v % p) % p;
        let orbit = [
            (a % p, b % p, c % p),
            (neg(a), neg(b), c % p),
            (neg(a), b % p, neg(c)),
            (a % p, neg(b), neg(c)),
        ];
        let (a, b, c) = orbit.into_iter().min().unwrap();
        TraceTriple { p, a, b, c }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn parts(&self) -> (u64, u64, u64) {
        (self.a, self.b, self.c)
    }
}

fn check_fiber_orders(p: u64, ks: [u64; 3]) -> Result<()> {
    if ks[0] == ks[1] || ks[0] == ks[2] || ks[1] == ks[2] {
        return Err(Error::InvalidArgument(format!(
            "fiber orders {ks:?} must be pairwise distinct"
        )));
    }
    for k in ks {
        check_subgroup_order(p, k)?;
    }
    Ok(())
}

/// 𝒜: all sign-orbit representatives of Sol_{k₁} × Sol_{k₂} × Sol_{k₃}
/// lifted to F_p; |𝒜| = 2·∏|Sol_{kᵢ}|.
pub fn admissible_set(p: u64, ks: [u64; 3]) -> Result<Vec<TraceTriple>> {
    check_fiber_orders(p, ks)?;
    let lifts: Vec<Vec<u64>> = ks
        .iter()
        .map(|&k| {
            let sol = sol_set(p, k)?;
            Ok(sol.iter().flat_map(|&t| [t, p - t]).collect())
        })
        .collect::<Result<_>>()?;
    let mut set = BTreeSet::new();
    for &a in &lifts[0] {
        for &b in &lifts[1] {
            for &c in &lifts[2] {
                set.insert(TraceTriple::canonical(p, a, b, c));
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// A deterministic small twist vector for the fiber orders: scans for
/// ℓ₁k₂k₃ + ℓ₂k₁k₃ + ℓ₃k₁k₂ ∈ {±1} minimizing (Σ|ℓᵢ|, then lex).
pub fn find_ell(ks: [u64; 3]) -> Result<[i64; 3]> {
    for k in ks {
        if k < 3 || k % 2 == 0 || !is_prime(k) {
            return Err(Error::InvalidSeifert(format!(
                "fiber order {k} is not an odd prime"
            )));
        }
    }
    if ks[0] == ks[1] || ks[0] == ks[2] || ks[1] == ks[2] {
        return Err(Error::InvalidSeifert(format!(
            "fiber orders {ks:?} must be pairwise distinct"
        )));
    }
    let [k1, k2, k3] = ks.map(|k| k as i64);
    let mut best: Option<(i64, [i64; 3])> = None;
    for l1 in -k1..=k1 {
        for l2 in -k2..=k2 {
            for e in [1i64, -1] {
                let num = e - l1 * k2 * k3 - l2 * k1 * k3;
                if num % (k1 * k2) != 0 {
                    continue;
                }
                let l3 = num / (k1 * k2);
                let cand = (l1.abs() + l2.abs() + l3.abs(), [l1, l2, l3]);
                if best.is_none() || cand < best.unwrap() {
                    best = Some(cand);
                }
            }
        }
    }
    Ok(best.expect("pairwise-coprime fiber orders always admit a solution").1)
}

/// Seifert data for Σ(k₁,k₂,k₃): distinct odd prime fiber orders and
/// twists with k₁k₂k₃·Σℓᵢ/kᵢ ∈ {±1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeifertData {
    ks: [u64; 3],
    ells: [i64; 3],
}

impl SeifertData {
    pub fn new(ks: [u64; 3], ells: [i64; 3]) -> Result<Self> {
        for k in ks {
            if k < 3 || k % 2 == 0 || !is_prime(k) {
                return Err(Error::InvalidSeifert(format!(
                    "fiber order {k} is not an odd prime"
                )));
            }
        }
        if ks[0] == ks[1] || ks[0] == ks[2] || ks[1] == ks[2] {
            return Err(Error::InvalidSeifert(format!(
                "fiber orders {ks:?} must be pairwise distinct"
            )));
        }
        for i in 0..3 {
            let r = ells[i].rem_euclid(ks[i] as i64) as u64;
            if gcd(r, ks[i]) != 1 {
                return Err(Error::NotCoprime(ells[i], ks[i]));
            }
        }
        let [k1, k2, k3] = ks.map(|k| k as i128);
        let e = ells[0] as i128 * k2 * k3 + ells[1] as i128 * k1 * k3 + ells[2] as i128 * k1 * k2;
        if e != 1 && e != -1 {
            return Err(Error::InvalidSeifert(format!(
                "twists {ells:?} give constraint value {e}, not ±1"
            )));
        }
        Ok(SeifertData { ks, ells })
    }

    pub fn ks(&self) -> [u64; 3] {
        self.ks
    }

    pub fn ells(&self) -> [i64; 3] {
        self.ells
    }
}

/// Images of the first two Seifert generators; the third is (XY)⁻¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomPair {
    pub x: Psl2Elem,
    pub y: Psl2Elem,
}

impl HomPair {
    pub fn trivial(p: u64) -> HomPair {
        HomPair {
            x: Psl2Elem::identity(p),
            y: Psl2Elem::identity(p),
        }
    }

    pub fn z(&self) -> Psl2Elem {
        self.x.mul(&self.y).inv()
    }

    pub fn is_trivial(&self) -> bool {
        self.x.is_identity() && self.y.is_identity()
    }

    pub fn conj(&self, g: &Psl2Elem) -> HomPair {
        let gi = g.inv();
        HomPair {
            x: g.mul(&self.x).mul(&gi),
            y: g.mul(&self.y).mul(&gi),
        }
    }
}

/// Smallest square root of a quadratic residue, by scan.
fn sqrt_mod(p: u64, v: u64) -> u64 {
    let v = v % p;
    (0..p)
        .find(|&s| s * s % p == v)
        .expect("argument is a quadratic residue")
}

/// The two non-conjugate homomorphism representatives over a trace
/// triple, built explicitly per the position of k₁ relative to p.
pub fn explicit_hom_pair(
    gens: &Generators,
    ks: [u64; 3],
    t: &TraceTriple,
) -> Result<(HomPair, HomPair)> {
    let p = gens.p();
    if !admissible_set(p, ks)?.contains(t) {
        return Err(Error::NotAdmissible);
    }
    let (a, b, c) = t.parts();
    let delta = gens.delta();
    match check_subgroup_order(p, ks[0])? {
        SubgroupKind::Split => {
            // X = diag(λ, λ⁻¹) with λ + λ⁻¹ = a; Y determined by its
            // diagonal, with off-diagonals (1, e) and (Δ, Δ⁻¹e)
            let s = sqrt_mod(p, (a * a % p + p - 4) % p);
            let lam = (a + s) % p * ffield::inv_mod(2, p) % p;
            let lam_inv = ffield::inv_mod(lam, p);
            let x = Psl2Elem::new(p, [lam, 0, 0, lam_inv])?;
            let dinv = ffield::inv_mod((lam + p - lam_inv) % p, p);
            let y11 = dinv * ((c + p - lam_inv * b % p) % p) % p;
            let y22 = dinv * ((lam * b % p + p - c) % p) % p;
            let e = (y11 * y22 % p + p - 1) % p;
            let y1 = Psl2Elem::new(p, [y11, 1, e, y22])?;
            let y2 = Psl2Elem::new(p, [y11, delta, ffield::inv_mod(delta, p) * e % p, y22])?;
            Ok((HomPair { x, y: y1 }, HomPair { x, y: y2 }))
        }
        SubgroupKind::Unipotent => {
            // canonical triples with k₁ = p have a = 2 exactly
            debug_assert_eq!(a, 2);
            let d = (c + p - b) % p;
            let dinv = ffield::inv_mod(d, p);
            let x1 = Psl2Elem::new(p, [1, 1, 0, 1])?;
            let y1 = Psl2Elem::new(p, [0, (p - dinv) % p, d, b])?;
            let x2 = Psl2Elem::new(p, [1, delta, 0, 1])?;
            let y2 = Psl2Elem::new(
                p,
                [
                    0,
                    (p - delta * dinv % p) % p,
                    ffield::inv_mod(delta, p) * d % p,
                    b,
                ],
            )?;
            Ok((HomPair { x: x1, y: y1 }, HomPair { x: x2, y: y2 }))
        }
        SubgroupKind::Nonsplit => {
            // X: the H_{k₁} power whose SL₂ lift has trace exactly a;
            // Y: scan of the two free entries of the linear system
            // Tr Y = b, Tr XY = c, det Y = 1, then split into the two
            // orbits under the centralizer of X
            let hk = psl2::subgroup_hk(gens, ks[0])?;
            let a_pm = a.min(p - a);
            let xs = hk
                .elements()
                .into_iter()
                .skip(1)
                .find(|e| e.trace_pm() == a_pm)
                .expect("Sol_k is the trace set of H_k");
            let m = xs.entries();
            let lift = if (m[0] + m[3]) % p == a {
                m
            } else {
                m.map(|v| (p - v) % p)
            };
            debug_assert_ne!(lift[2], 0, "nonsplit torus elements have nonzero corner");
            let x21_inv = ffield::inv_mod(lift[2], p);
            let mut sols = BTreeSet::new();
            for y11 in 0..p {
                let y22 = (b + p - y11) % p;
                let diag = (lift[0] * y11 + lift[3] * y22) % p;
                for y21 in 0..p {
                    let y12 =
                        x21_inv * ((c + 2 * p - diag % p - lift[1] * y21 % p) % p) % p;
                    if (y11 * y22 % p + p - y12 * y21 % p) % p == 1 {
                        sols.insert(Psl2Elem::new(p, [y11, y12, y21, y22])?);
                    }
                }
            }
            let x = Psl2Elem::new(p, lift)?;
            let centralizer: Vec<Psl2Elem> = (0..=p + 1)
                .map(|m| psl2::sigma_b(p, delta, gens.zeta_plus_pow(m)))
                .collect::<Result<_>>()?;
            let mut reps = Vec::new();
            while let Some(first) = sols.iter().next().copied() {
                reps.push(first);
                for g in &centralizer {
                    sols.remove(&g.mul(&first).mul(&g.inv()));
                }
            }
            if reps.len() != 2 {
                return Err(Error::NoSolution);
            }
            Ok((HomPair { x, y: reps[0] }, HomPair { x, y: reps[1] }))
        }
    }
}

/// Exhaustive enumeration of Hom(Γ, PSL₂(F_p)) as pairs (X, Y): X over
/// the order-k₁ elements, Y over order k₂, keeping pairs whose product
/// has order k₃ by the trace criterion. The trivial pair comes first.
pub fn enumerate_homs_brute(p: u64, ks: [u64; 3]) -> Result<Vec<HomPair>> {
    if p > BRUTE_P_MAX {
        return Err(Error::TooLarge(p, BRUTE_P_MAX));
    }
    check_fiber_orders(p, ks)?;
    let group = psl2::enumerate_group(p);
    let xs: Vec<&Psl2Elem> = group.iter().filter(|x| x.order() == ks[0]).collect();
    let ys: Vec<&Psl2Elem> = group.iter().filter(|y| y.order() == ks[1]).collect();
    let sol3: BTreeSet<u64> = sol_set(p, ks[2])?.into_iter().collect();
    let tr_ok: Vec<bool> = (0..p).map(|t| sol3.contains(&t.min(p - t))).collect();
    let mut out = vec![HomPair::trivial(p)];
    for &x in &xs {
        let xe = x.entries();
        for &y in &ys {
            let ye = y.entries();
            let t = (xe[0] * ye[0] + xe[1] * ye[2] + xe[2] * ye[1] + xe[3] * ye[3]) % p;
            if tr_ok[t as usize] {
                out.push(HomPair { x: *x, y: *y });
            }
        }
    }
    Ok(out)
}

/// Number of conjugation orbits on a hom list (the trivial hom included
/// as its own singleton orbit).
pub fn hom_orbit_count(p: u64, homs: &[HomPair]) -> u64 {
    let group = psl2::enumerate_group(p);
    let mut visited: BTreeSet<HomPair> = BTreeSet::new();
    let mut orbits = 0;
    for h in homs {
        if visited.contains(h) {
            continue;
        }
        orbits += 1;
        for g in &group {
            visited.insert(h.conj(g));
        }
    }
    orbits
}

/// Class index of one fiber image: the exponent m ∈ [1, (k−1)/2] with
/// the class of H_k's generator to the m-th power (k ≠ p), or the tag
/// 1 / Δ by unipotent square class (k = p).
fn fiber_index_map(gens: &Generators, k: u64) -> Result<BTreeMap<ClassId, u64>> {
    let p = gens.p();
    let mut map = BTreeMap::new();
    if k == p {
        map.insert(ClassId::UnipotentSquare, 1);
        map.insert(ClassId::UnipotentNonsquare, gens.delta());
        return Ok(map);
    }
    let hk = psl2::subgroup_hk(gens, k)?;
    let gen = hk.generator();
    for m in 1..=(k - 1) / 2 {
        map.insert(class_of(&gen.pow(m)), m);
    }
    Ok(map)
}

/// 𝒥(φ): the class index of each fiber image (φ(x₁), φ(x₂), φ(x₃)).
pub fn class_index_triple(
    gens: &Generators,
    pair: &HomPair,
    ks: [u64; 3],
) -> Result<[u64; 3]> {
    if pair.is_trivial() {
        return Err(Error::InvalidArgument(
            "the trivial homomorphism has no class indices".into(),
        ));
    }
    let elems = [pair.x, pair.y, pair.z()];
    let mut out = [0u64; 3];
    for i in 0..3 {
        let map = fiber_index_map(gens, ks[i])?;
        out[i] = *map
            .get(&class_of(&elems[i]))
            .expect("fiber image lies in a class of the canonical subgroup");
    }
    Ok(out)
}

/// The invariant of Σ(k₁,k₂,k₃) by the closed-form theorems: "o" plus,
/// with coefficient 4|G| (p not a fiber order) or 2|G| per unipotent
/// family (p a fiber order), one quotient-coordinate triple per tuple
/// of class indices. Output triples follow the input fiber order.
pub fn brieskorn_kdw(gens: &Generators, sd: &SeifertData) -> Result<FormalSum> {
    let p = gens.p();
    let ks = sd.ks();
    let ells = sd.ells();
    check_fiber_orders(p, ks)?;
    // rotate the p-fiber (if any) into the first position
    let rot = ks.iter().position(|&k| k == p).unwrap_or(0);
    let rk: Vec<u64> = (0..3).map(|i| ks[(rot + i) % 3]).collect();
    let rl: Vec<i64> = (0..3).map(|i| ells[(rot + i) % 3]).collect();
    let xis: Vec<_> = (0..3)
        .map(|i| xi_vector(rk[i], &[rl[i]]))
        .collect::<Result<_>>()?;
    let quot = |i: usize, h: u64| -> Result<QuotientCoord> {
        to_quotient(p, &perm_apply(h, &xis[i])?)
    };
    let unrotate = |computed: [QuotientCoord; 3]| -> [QuotientCoord; 3] {
        let mut out: [Option<QuotientCoord>; 3] = [None, None, None];
        for (i, q) in computed.into_iter().enumerate() {
            out[(rot + i) % 3] = Some(q);
        }
        out.map(|q| q.unwrap())
    };
    let group_order = (p * p * p - p) as i64 / 2;
    let mut sum = FormalSum::new();
    sum.add_term(Term::Zero, 1);
    if rk[0] == p {
        for h in [1, gens.delta()] {
            let q1 = quot(0, h)?;
            for m2 in 1..=(rk[1] - 1) / 2 {
                let q2 = quot(1, m2)?;
                for m3 in 1..=(rk[2] - 1) / 2 {
                    let triple = unrotate([q1.clone(), q2.clone(), quot(2, m3)?]);
                    sum.add_term(Term::Triple(triple), 2 * group_order);
                }
            }
        }
    } else {
        for m1 in 1..=(rk[0] - 1) / 2 {
            let q1 = quot(0, m1)?;
            for m2 in 1..=(rk[1] - 1) / 2 {
                let q2 = quot(1, m2)?;
                for m3 in 1..=(rk[2] - 1) / 2 {
                    let triple = unrotate([q1.clone(), q2.clone(), quot(2, m3)?]);
                    sum.add_term(Term::Triple(triple), 4 * group_order);
                }
            }
        }
    }
    Ok(sum)
}

/// The same invariant assembled homomorphism by homomorphism from the
/// exhaustive enumeration — the oracle the theorems are checked
/// against. Must equal `brieskorn_kdw` exactly.
pub fn brieskorn_kdw_oracle(gens: &Generators, sd: &SeifertData) -> Result<FormalSum> {
    let p = gens.p();
    let ks = sd.ks();
    let ells = sd.ells();
    let homs = enumerate_homs_brute(p, ks)?;
    // precompute the quotient coordinate for every fiber and index
    let mut coords: Vec<BTreeMap<u64, QuotientCoord>> = Vec::with_capacity(3);
    for i in 0..3 {
        let xi = xi_vector(ks[i], &[ells[i]])?;
        let indices: Vec<u64> = if ks[i] == p {
            vec![1, gens.delta()]
        } else {
            (1..=(ks[i] - 1) / 2).collect()
        };
        let mut map = BTreeMap::new();
        for m in indices {
            map.insert(m, to_quotient(p, &perm_apply(m, &xi)?)?);
        }
        coords.push(map);
    }
    let mut index_counts: BTreeMap<[u64; 3], i64> = BTreeMap::new();
    for hom in &homs {
        if hom.is_trivial() {
            continue;
        }
        *index_counts
            .entry(class_index_triple(gens, hom, ks)?)
            .or_insert(0) += 1;
    }
    let mut sum = FormalSum::new();
    sum.add_term(Term::Zero, 1);
    for (idx, count) in index_counts {
        let triple = [
            coords[0][&idx[0]].clone(),
            coords[1][&idx[1]].clone(),
            coords[2][&idx[2]].clone(),
        ];
        sum.add_term(Term::Triple(triple), count);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_basics() {
        for t in 0..11 {
            assert_eq!(chebyshev_eval(11, 1, t), 1);
            assert_eq!(chebyshev_eval(11, 2, t), t);
            assert_eq!(chebyshev_eval(11, 3, t), (t * t + 10) % 11);
        }
    }

    #[test]
    fn chebyshev_parity() {
        for k in 1..=13u64 {
            for t in 0..11 {
                let neg = (11 - t) % 11;
                assert_eq!(
                    chebyshev_eval(11, 2 * k, neg),
                    (11 - chebyshev_eval(11, 2 * k, t)) % 11
                );
                assert_eq!(
                    chebyshev_eval(11, 2 * k - 1, neg),
                    chebyshev_eval(11, 2 * k - 1, t)
                );
            }
        }
    }

    #[test]
    fn chebyshev_order_test_matches_direct_powers() {
        for p in [7u64, 11] {
            for x in psl2::enumerate_group(p) {
                if x.is_identity() {
                    continue;
                }
                for n in [3u64, 5, 7, 11, 13] {
                    let direct = x.pow(n).is_identity();
                    assert_eq!(order_by_chebyshev(&x, n), direct, "p={p} n={n} {x:?}");
                }
            }
        }
        let order2 = psl2::sigma_t(13, 5).unwrap();
        assert_eq!(order2.order(), 2);
        assert!(!order_by_chebyshev(&order2, 3));
    }

    #[test]
    fn sol_sets() {
        assert_eq!(sol_set(11, 5).unwrap(), vec![3, 4]);
        assert_eq!(sol_set(11, 11).unwrap(), vec![2]);
        assert_eq!(sol_set(11, 3).unwrap(), vec![1]);
        assert!(sol_set(11, 7).is_err());
        for p in [11u64, 13, 29] {
            let gens = Generators::new(p).unwrap();
            for k in [3u64, 5, 7, 11, 13, 29] {
                let Ok(sol) = sol_set(p, k) else { continue };
                assert!(!sol.contains(&0), "p={p} k={k}");
                let expected = if k == p { 1 } else { (k - 1) / 2 };
                assert_eq!(sol.len() as u64, expected, "p={p} k={k}");
                let traces: BTreeSet<u64> = psl2::subgroup_hk(&gens, k)
                    .unwrap()
                    .elements()
                    .iter()
                    .skip(1)
                    .map(Psl2Elem::trace_pm)
                    .collect();
                let sol_set: BTreeSet<u64> = sol.iter().copied().collect();
                assert_eq!(sol_set, traces, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn admissible_set_sizes() {
        let a11 = admissible_set(11, [11, 3, 5]).unwrap();
        assert_eq!(a11.len(), 4);
        let a13 = admissible_set(13, [13, 3, 7]).unwrap();
        assert_eq!(a13.len(), 6);
        for t in a11.iter().chain(&a13) {
            let (a, b, c) = t.parts();
            assert!(a != 0 && b != 0 && c != 0);
        }
        // the stored representative is the orbit minimum
        for t in &a11 {
            let (a, b, c) = t.parts();
            assert_eq!(*t, TraceTriple::canonical(11, a, b, c));
        }
    }

    #[test]
    fn twist_solver() {
        assert_eq!(find_ell([3, 5, 7]).unwrap(), [-1, 1, 1]);
        let ks = [11u64, 3, 5];
        let l = find_ell(ks).unwrap();
        assert!(SeifertData::new(ks, l).is_ok());
        assert_eq!(find_ell(ks).unwrap(), l);
        assert!(find_ell([3, 3, 5]).is_err());
        assert!(find_ell([3, 5, 9]).is_err());
    }

    #[test]
    fn seifert_validation() {
        assert!(SeifertData::new([11, 3, 5], [3, 1, -3]).is_ok());
        assert!(SeifertData::new([3, 5, 7], [2, 1, -6]).is_ok());
        assert!(SeifertData::new([3, 7, 13], [-1, 5, -5]).is_ok());
        assert!(matches!(
            SeifertData::new([11, 3, 5], [1, 1, 1]),
            Err(Error::InvalidSeifert(_))
        ));
        assert!(matches!(
            SeifertData::new([11, 3, 5], [11, 1, -3]),
            Err(Error::NotCoprime(11, 11))
        ));
        assert!(SeifertData::new([9, 3, 5], [1, 1, 1]).is_err());
        assert!(SeifertData::new([3, 3, 5], [1, 1, 1]).is_err());
    }

    #[test]
    fn explicit_pairs_have_right_orders() {
        let configs = [
            (11u64, [11u64, 3, 5]),
            (11, [5, 3, 11]),
            (11, [3, 5, 11]),
            (13, [13, 3, 7]),
            (13, [3, 7, 13]),
        ];
        for (p, ks) in configs {
            let gens = Generators::new(p).unwrap();
            for t in admissible_set(p, ks).unwrap() {
                let (phi1, phi2) = explicit_hom_pair(&gens, ks, &t).unwrap();
                for phi in [phi1, phi2] {
                    assert_eq!(phi.x.order(), ks[0], "p={p} ks={ks:?}");
                    assert_eq!(phi.y.order(), ks[1], "p={p} ks={ks:?}");
                    assert_eq!(phi.z().order(), ks[2], "p={p} ks={ks:?}");
                    let (a, b, c) = t.parts();
                    let tt = TraceTriple::canonical(
                        p,
                        phi.x.trace_pm(),
                        phi.y.trace_pm(),
                        phi.x.mul(&phi.y).trace_pm(),
                    );
                    // the realized ±traces lie in the same sign orbit
                    assert_eq!(
                        (tt.a.min(p - tt.a), tt.b.min(p - tt.b), tt.c.min(p - tt.c)),
                        (a.min(p - a), b.min(p - b), c.min(p - c))
                    );
                }
                assert_ne!(phi1, phi2);
            }
        }
    }

    #[test]
    fn explicit_pair_unipotent_tags() {
        let gens = Generators::new(11).unwrap();
        for t in admissible_set(11, [11, 3, 5]).unwrap() {
            let (phi1, phi2) = explicit_hom_pair(&gens, [11, 3, 5], &t).unwrap();
            assert_eq!(class_of(&phi1.x), ClassId::UnipotentSquare);
            assert_eq!(class_of(&phi2.x), ClassId::UnipotentNonsquare);
        }
        let bogus = TraceTriple::canonical(11, 1, 1, 1);
        assert!(matches!(
            explicit_hom_pair(&gens, [11, 3, 5], &bogus),
            Err(Error::NotAdmissible)
        ));
    }

    #[test]
    fn brute_hom_counts_p11() {
        let homs = enumerate_homs_brute(11, [11, 3, 5]).unwrap();
        assert_eq!(homs.len(), 1320 * 4 + 1);
        assert!(homs[0].is_trivial());
        assert_eq!(hom_orbit_count(11, &homs), 9);
        assert!(matches!(
            enumerate_homs_brute(37, [37, 3, 5]),
            Err(Error::TooLarge(37, _))
        ));
    }

    #[test]
    fn explicit_pairs_are_homs() {
        let gens = Generators::new(11).unwrap();
        let ks = [11u64, 3, 5];
        let homs: BTreeSet<HomPair> =
            enumerate_homs_brute(11, ks).unwrap().into_iter().collect();
        for t in admissible_set(11, ks).unwrap() {
            let (phi1, phi2) = explicit_hom_pair(&gens, ks, &t).unwrap();
            assert!(homs.contains(&phi1));
            assert!(homs.contains(&phi2));
        }
    }

    #[test]
    fn class_indices_are_conjugation_invariant() {
        let gens = Generators::new(11).unwrap();
        let ks = [11u64, 3, 5];
        let homs = enumerate_homs_brute(11, ks).unwrap();
        let group = psl2::enumerate_group(11);
        for hom in homs.iter().skip(1).step_by(997) {
            let idx = class_index_triple(&gens, hom, ks).unwrap();
            assert!(idx[0] == 1 || idx[0] == gens.delta());
            assert_eq!(idx[1], 1);
            assert!(idx[2] == 1 || idx[2] == 2);
            for g in group.iter().step_by(101) {
                let c = hom.conj(g);
                assert_eq!(class_index_triple(&gens, &c, ks).unwrap(), idx);
            }
        }
        assert!(class_index_triple(&gens, &HomPair::trivial(11), ks).is_err());
    }

    fn coord(p: u64, k: u64, l: i64, h: u64) -> QuotientCoord {
        to_quotient(p, &perm_apply(h, &xi_vector(k, &[l]).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn invariant_at_p11_matches_closed_form() {
        let gens = Generators::new(11).unwrap();
        let sd = SeifertData::new([11, 3, 5], [3, 1, -3]).unwrap();
        let sum = brieskorn_kdw(&gens, &sd).unwrap();
        let q11 = coord(11, 11, 3, 1);
        let q3 = coord(11, 3, 1, 1);
        assert_eq!(sum.coeff(&Term::Zero), 1);
        assert_eq!(
            sum.coeff(&Term::Triple([q11.clone(), q3.clone(), coord(11, 5, -3, 1)])),
            2640
        );
        assert_eq!(
            sum.coeff(&Term::Triple([q11, q3, coord(11, 5, -3, 2)])),
            2640
        );
        assert_eq!(sum.len(), 3);
        assert_eq!(sum.total_mass(), 1 + 1320 * 4);
        assert_eq!(sum.to_string().matches("2640*").count(), 2);
    }

    #[test]
    fn oracle_agrees_at_p11() {
        let gens = Generators::new(11).unwrap();
        let sd = SeifertData::new([11, 3, 5], [3, 1, -3]).unwrap();
        assert_eq!(
            brieskorn_kdw_oracle(&gens, &sd).unwrap(),
            brieskorn_kdw(&gens, &sd).unwrap()
        );
    }

    #[test]
    fn fiber_permutation_equivariance() {
        let gens = Generators::new(11).unwrap();
        let base = brieskorn_kdw(&gens, &SeifertData::new([11, 3, 5], [3, 1, -3]).unwrap())
            .unwrap();
        // rotate fibers left: position j of the rotated output holds
        // what position (j+1)%3 of the base held
        let rotated = brieskorn_kdw(&gens, &SeifertData::new([3, 5, 11], [1, -3, 3]).unwrap())
            .unwrap();
        let mut expected = FormalSum::new();
        for (term, coeff) in base.iter() {
            let t = match term {
                Term::Zero => Term::Zero,
                Term::Triple(q) => {
                    Term::Triple([q[1].clone(), q[2].clone(), q[0].clone()])
                }
                other => other.clone(),
            };
            expected.add_term(t, coeff);
        }
        assert_eq!(rotated, expected);
    }

    #[test]
    fn invariant_rejects_bad_inputs() {
        let gens = Generators::new(11).unwrap();
        let sd = SeifertData::new([3, 5, 7], [2, 1, -6]).unwrap();
        assert!(matches!(
            brieskorn_kdw(&gens, &sd),
            Err(Error::NotADivisor(7, 11))
        ));
    }
}
