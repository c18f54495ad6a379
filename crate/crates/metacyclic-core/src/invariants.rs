//! The complete isomorphism invariant of a metacyclic group, the tuples it
//! can take, and the inverse construction from a tuple to a presentation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{Element, Group, GroupError, Presentation, Subgroup};
use crate::numth::{
    divisors, gcd, mod_inv, mod_mul, mod_pow, part, prime_factors, residue, vp, NumthError, UnitSubgroup,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Numth(#[from] NumthError),
    #[error("subgroup is not a normal cyclic subgroup")]
    NotNormalCyclic,
    #[error("no metacyclic factorization exists")]
    NoFactorization,
    #[error("tuple is not realizable: {0}")]
    Invalid(ValidationFailure),
    #[error("no automorphism realizes the tuple (search exhausted)")]
    ConstructionFailed,
}

/// `(m, n, s, Delta)`: the complete invariant. `delta` lives in `U_{m'}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MCInv {
    pub m: u64,
    pub n: u64,
    pub s: u64,
    pub delta: UnitSubgroup,
}

impl MCInv {
    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    pub fn m_prime(&self) -> u64 {
        self.delta.modulus()
    }

    pub fn delta_generator(&self) -> u64 {
        self.delta.generator().unwrap_or(1)
    }
}

impl PartialOrd for MCInv {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MCInv {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.order(), self.m, self.n, self.s, self.delta_generator(), &self.delta).cmp(&(
            other.order(),
            other.m,
            other.n,
            other.s,
            other.delta_generator(),
            &other.delta,
        ))
    }
}

impl fmt::Display for MCInv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, <{}>_{})", self.m, self.n, self.s, self.delta_generator(), self.m_prime())
    }
}

/// `r`, the sign `epsilon` and `k` attached to a conjugation group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rek {
    pub r: u64,
    /// `true` when `epsilon = -1`.
    pub eps_negative: bool,
    pub k: u64,
}

impl Rek {
    pub fn eps(&self) -> i64 {
        if self.eps_negative {
            -1
        } else {
            1
        }
    }

    /// `epsilon^(p-1) = 1`.
    pub fn eps_trivial_at(&self, p: u64) -> bool {
        !self.eps_negative || p != 2
    }
}

/// A factorization `G = <a><b>` with `<a>` normal, and its numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub a: Element,
    pub b: Element,
    pub m: u64,
    pub n: u64,
    pub s: u64,
    pub t: UnitSubgroup,
    pub rek: Rek,
}

/// Everything derived from a group on the way to its invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub mcinv: MCInv,
    pub rek: Rek,
    pub m_prime: u64,
    /// Primes `p` for which a normal Hall `p'`-subgroup exists.
    pub pi: Vec<u64>,
    pub pi_prime: Vec<u64>,
    pub factorization: Factorization,
}

impl Invariants {
    pub fn m(&self) -> u64 {
        self.mcinv.m
    }
    pub fn n(&self) -> u64 {
        self.mcinv.n
    }
    pub fn s(&self) -> u64 {
        self.mcinv.s
    }
    pub fn r(&self) -> u64 {
        self.rek.r
    }
    pub fn k(&self) -> u64 {
        self.rek.k
    }
    /// Primes dividing `m` but not `r`.
    pub fn nu(&self) -> Vec<u64> {
        nu_primes(self.mcinv.m, self.rek.r)
    }
    /// `m_{pi'}`.
    pub fn m_pi_prime(&self) -> u64 {
        part(self.mcinv.m, &self.nu())
    }
}

/// Primes of `m` not dividing `r`.
pub fn nu_primes(m: u64, r: u64) -> Vec<u64> {
    prime_factors(m).into_iter().filter(|&p| !r.is_multiple_of(p)).collect()
}

/// A generator of the cyclic subgroup `c`, or `None` if `c` is not cyclic.
pub fn cyclic_generator(g: &Group, c: &Subgroup) -> Option<Element> {
    c.elements().iter().copied().find(|&x| g.element_order(x) == c.order())
}

/// Exponents by which `universe` acts on the normal cyclic subgroup `a`,
/// as a subgroup of `U_{|a|}`.
pub fn t_subgroup_in(g: &Group, a: &Subgroup, universe: &Subgroup) -> Result<UnitSubgroup, InvariantError> {
    let ord = a.order();
    if ord == 1 {
        return Ok(UnitSubgroup::trivial(1)?);
    }
    let gen = cyclic_generator(g, a).ok_or(InvariantError::NotNormalCyclic)?;
    let mut powers = Vec::with_capacity(ord as usize);
    let mut x = g.identity();
    for _ in 0..ord {
        powers.push(x);
        x = g.mul(x, gen);
    }
    let mut exps = Vec::new();
    for &h in universe.gens() {
        let c = g.conj(gen, h);
        let e = powers.iter().position(|&y| y == c).ok_or(InvariantError::NotNormalCyclic)?;
        exps.push(e as i64);
    }
    Ok(UnitSubgroup::generated(&exps, ord)?)
}

pub fn t_subgroup(g: &Group, a: &Subgroup) -> Result<UnitSubgroup, InvariantError> {
    t_subgroup_in(g, a, &g.whole())
}

/// `r`, `epsilon` and `k` for a subgroup `t` of `U_d`, with `r` taken among
/// divisors of `d` and `k` measured at the primes of `m` outside `r`.
pub fn rek_of(t: &UnitSubgroup, m: u64) -> Result<Rek, InvariantError> {
    let d = t.modulus();
    let mut r = 1;
    for p in prime_factors(d) {
        let mut q = 1;
        for e in 1..=vp(d, p) {
            let pe = p.pow(e);
            let res = t.restrict(pe)?;
            let ok = if p == 2 {
                res.elements().iter().all(|&x| x == 1 || x == pe - 1)
            } else {
                res.is_trivial()
            };
            if !ok {
                break;
            }
            q = pe;
        }
        r *= q;
    }
    // U_4 = <-1>, so the condition at 4 holds whether or not Delta sees it.
    if m.is_multiple_of(4) && r % 4 != 0 {
        r = r / part(r, &[2]) * 4;
    }
    let r2 = gcd(part(r, &[2]), d);
    let eps_negative = !t.restrict(r2)?.is_trivial();
    let m_nu = part(m, &nu_primes(m, r));
    if !d.is_multiple_of(m_nu) {
        return Err(NumthError::NotDivisor { divisor: m_nu, modulus: d }.into());
    }
    let k = t.restrict(m_nu)?.order();
    Ok(Rek { r, eps_negative, k })
}

/// The p-part `m'_p` for a prime `p` dividing `r`.
pub fn m_prime_part(p: u64, m: u64, n: u64, s: u64, rek: &Rek) -> u64 {
    let vm = vp(m, p);
    let vr = vp(rek.r, p);
    let vk = vp(rek.k, p);
    let vs = vp(s, p);
    let vn = vp(n, p);
    if rek.eps_trivial_at(p) {
        let third = (vr + vs + vk) as i64 - vn as i64;
        let inner = (vr as i64).max(vs as i64).max(third);
        let e = (vm as i64).min((vk + vr) as i64).min(inner);
        p.pow(e as u32)
    } else {
        let (m2, r2, k2, s2, n2) = (p.pow(vm), p.pow(vr), p.pow(vk), p.pow(vs), p.pow(vn));
        if k2 <= 2 || m2 <= 2 * r2 {
            r2
        } else if 4 <= k2 && k2 < n2 && 4 * r2 <= m2 && (s2 == n2 * r2 || (2 * s2 == m2 && m2 < n2 * r2)) {
            m2 / 2
        } else {
            m2
        }
    }
}

/// `m' = m_{pi'} * prod_{p | r} m'_p`.
pub fn m_prime_of(m: u64, n: u64, s: u64, rek: &Rek) -> u64 {
    let nu = nu_primes(m, rek.r);
    let mut out = part(m, &nu);
    for p in prime_factors(rek.r) {
        out *= m_prime_part(p, m, n, s, rek);
    }
    out
}

/// Cyclic subgroups of `universe`, sorted.
pub fn cyclic_subgroups_in(g: &Group, universe: &Subgroup) -> Vec<Subgroup> {
    let mut seen = vec![false; g.order() as usize];
    let mut out = Vec::new();
    for &x in universe.elements() {
        if seen[g.index_of(x)] {
            continue;
        }
        let c = g.subgroup_generated(&[x]).expect("element of the group");
        let o = c.order();
        for &y in c.elements() {
            if g.element_order(y) == o {
                seen[g.index_of(y)] = true;
            }
        }
        out.push(c);
    }
    out.sort();
    out
}

fn normal_in(g: &Group, h: &Subgroup, universe: &Subgroup) -> bool {
    universe.gens().iter().all(|&u| h.gens().iter().all(|&x| h.contains(g.conj(x, u))))
}

/// Minimal factorization of `universe`: minimise `(|A|, r(A), [H:B])` over
/// normal cyclic `A` and cyclic `B` with `AB = H`, ties broken by the
/// sorted element lists of `A` and then `B`.
pub fn minimal_factorization_in(g: &Group, universe: &Subgroup) -> Result<Factorization, InvariantError> {
    let order = universe.order();
    let cyclic = cyclic_subgroups_in(g, universe);
    let mut normal: Vec<(u64, u64, usize, UnitSubgroup, Rek)> = Vec::new();
    for (idx, a) in cyclic.iter().enumerate() {
        if !normal_in(g, a, universe) {
            continue;
        }
        let t = t_subgroup_in(g, a, universe)?;
        let rek = rek_of(&t, a.order())?;
        normal.push((a.order(), rek.r, idx, t, rek));
    }
    normal.sort_by(|x, y| (x.0, x.1, &cyclic[x.2]).cmp(&(y.0, y.1, &cyclic[y.2])));
    let mut start = 0;
    while start < normal.len() {
        let key = (normal[start].0, normal[start].1);
        let end = normal[start..]
            .iter()
            .position(|x| (x.0, x.1) != key)
            .map_or(normal.len(), |e| start + e);
        let mut best: Option<(u64, usize, usize)> = None;
        for (ni, cand) in normal[start..end].iter().enumerate() {
            let a = &cyclic[cand.2];
            for (bi, b) in cyclic.iter().enumerate() {
                let meet = b.elements().iter().filter(|&&x| a.contains(x)).count() as u64;
                if a.order() * b.order() != order * meet {
                    continue;
                }
                let idx = order / b.order();
                let better = match best {
                    None => true,
                    Some((bidx, bn, bb)) => (idx, &cyclic[normal[start + ni].2], b) < (bidx, &cyclic[normal[start + bn].2], &cyclic[bb]),
                };
                if better {
                    best = Some((idx, ni, bi));
                }
            }
        }
        if let Some((s, ni, bi)) = best {
            let (m, _, aidx, t, rek) = normal[start + ni].clone();
            let a = cyclic_generator(g, &cyclic[aidx]).ok_or(InvariantError::NotNormalCyclic)?;
            let b = cyclic_generator(g, &cyclic[bi]).ok_or(InvariantError::NotNormalCyclic)?;
            return Ok(Factorization {
                a,
                b,
                m,
                n: order / m,
                s,
                t,
                rek,
            });
        }
        start = end;
    }
    Err(InvariantError::NoFactorization)
}

pub fn minimal_factorization(g: &Group) -> Result<Factorization, InvariantError> {
    minimal_factorization_in(g, &g.whole())
}

/// `(pi, pi')`: primes of `|G|` with, respectively without, a normal Hall
/// `p'`-subgroup.
pub fn pi_sets(g: &Group) -> (Vec<u64>, Vec<u64>) {
    let whole = g.whole();
    let mut pi = Vec::new();
    let mut pi_prime = Vec::new();
    for p in prime_factors(g.order()) {
        let others: Vec<u64> = prime_factors(g.order()).into_iter().filter(|&q| q != p).collect();
        let pe = g.pi_elements(&whole, &others);
        let target = part(g.order(), &others);
        let ok = pe.len() as u64 == target && g.subgroup_generated(&pe).map(|h| h.order() == target).unwrap_or(false);
        if ok {
            pi.push(p);
        } else {
            pi_prime.push(p);
        }
    }
    (pi, pi_prime)
}

fn invariants_from_factorization(f: Factorization) -> Result<(MCInv, u64), InvariantError> {
    let m_prime = m_prime_of(f.m, f.n, f.s, &f.rek);
    let delta = f.t.restrict(m_prime)?;
    Ok((
        MCInv {
            m: f.m,
            n: f.n,
            s: f.s,
            delta,
        },
        m_prime,
    ))
}

/// The invariant of the subgroup `universe`, computed from its own
/// minimal factorization.
pub fn mcinv_in(g: &Group, universe: &Subgroup) -> Result<MCInv, InvariantError> {
    let f = minimal_factorization_in(g, universe)?;
    Ok(invariants_from_factorization(f)?.0)
}

pub fn mcinv(g: &Group) -> Result<MCInv, InvariantError> {
    mcinv_in(g, &g.whole())
}

pub fn invariants(g: &Group) -> Result<Invariants, InvariantError> {
    let f = minimal_factorization(g)?;
    let (mcinv, m_prime) = invariants_from_factorization(f.clone())?;
    let (pi, pi_prime) = pi_sets(g);
    Ok(Invariants {
        mcinv,
        rek: f.rek,
        m_prime,
        pi,
        pi_prime,
        factorization: f,
    })
}

pub fn isomorphic(g: &Group, h: &Group) -> Result<bool, InvariantError> {
    Ok(g.order() == h.order() && mcinv(g)? == mcinv(h)?)
}

/// The clause of the realizability conditions that a tuple violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationFailure {
    Shape(&'static str),
    Divisibility(&'static str),
    MPrimeFormula(u64),
    Sign(&'static str),
    TrivialSign(u64, &'static str),
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape(why) => write!(f, "malformed tuple: {why}"),
            Self::Divisibility(why) => write!(f, "divisibility: {why}"),
            Self::MPrimeFormula(p) => write!(f, "m' disagrees with its formula at p={p}"),
            Self::Sign(why) => write!(f, "sign condition: {why}"),
            Self::TrivialSign(p, why) => write!(f, "trivial-sign condition at p={p}: {why}"),
        }
    }
}

/// Decides whether `(m, n, s, Delta)` is the invariant of some metacyclic
/// group. On success returns `r`, `epsilon` and `k` read off `Delta`.
pub fn validate_tuple(t: &MCInv) -> Result<Rek, ValidationFailure> {
    let MCInv { m, n, s, ref delta } = *t;
    let mp = delta.modulus();
    if m == 0 || n == 0 || s == 0 {
        return Err(ValidationFailure::Shape("m, n, s must be positive"));
    }
    if m % mp != 0 {
        return Err(ValidationFailure::Shape("m' must divide m"));
    }
    if !delta.is_cyclic() {
        return Err(ValidationFailure::Shape("Delta must be cyclic"));
    }
    let rek = rek_of(delta, m).map_err(|_| ValidationFailure::Divisibility("m_{pi'} does not divide m'"))?;
    validate_with_rek(t, rek)
}

/// The checks of [`validate_tuple`] that depend on `n` and `s`, given the
/// `(r, epsilon, k)` already read off `Delta`.
fn validate_with_rek(t: &MCInv, rek: Rek) -> Result<Rek, ValidationFailure> {
    let MCInv { m, n, s, ref delta } = *t;
    let mp = delta.modulus();
    let nu = nu_primes(m, rek.r);
    if m % s != 0 {
        return Err(ValidationFailure::Divisibility("s must divide m"));
    }
    if n % delta.order() != 0 {
        return Err(ValidationFailure::Divisibility("|Delta| must divide n"));
    }
    let (m_nu, s_nu, mp_nu) = (part(m, &nu), part(s, &nu), part(mp, &nu));
    if m_nu != s_nu || m_nu != mp_nu {
        return Err(ValidationFailure::Divisibility("m, s and m' must share their pi'-parts"));
    }
    for p in prime_factors(rek.r) {
        if part(mp, &[p]) != m_prime_part(p, m, n, s, &rek) {
            return Err(ValidationFailure::MPrimeFormula(p));
        }
    }
    let pp = |x: u64, p: u64| part(x, &[p]);
    if rek.eps_negative {
        let (m2, n2, s2, r2, k2) = (pp(m, 2), pp(n, 2), pp(s, 2), pp(rek.r, 2), pp(rek.k, 2));
        if m2 / r2 > n2 {
            return Err(ValidationFailure::Sign("m_2/r_2 must not exceed n_2"));
        }
        if m2 > 2 * s2 {
            return Err(ValidationFailure::Sign("m_2 must not exceed 2 s_2"));
        }
        if s2 == n2 * r2 {
            return Err(ValidationFailure::Sign("s_2 must differ from n_2 r_2"));
        }
        if n % 4 == 0 && m % 8 == 0 && k2 < n2 && r2 > s2 {
            return Err(ValidationFailure::Sign("r_2 must not exceed s_2"));
        }
    }
    for p in prime_factors(rek.r) {
        if !rek.eps_trivial_at(p) {
            continue;
        }
        let (mp_, np, sp, rp, kp) = (pp(m, p), pp(n, p), pp(s, p), pp(rek.r, p), pp(rek.k, p));
        if !(mp_ / rp <= sp && sp <= np) {
            return Err(ValidationFailure::TrivialSign(p, "need m_p/r_p <= s_p <= n_p"));
        }
        if rp > sp && np >= sp * kp {
            return Err(ValidationFailure::TrivialSign(p, "r_p > s_p forces n_p < s_p k_p"));
        }
    }
    Ok(rek)
}

/// Every tuple of order at most `bound` accepted by [`validate_tuple`],
/// in the canonical sort order.
pub fn valid_tuples(bound: u64) -> Vec<MCInv> {
    let mut out = Vec::new();
    let mut unit_subgroups: BTreeMap<u64, Vec<UnitSubgroup>> = BTreeMap::new();
    for m in 1..=bound {
        let mut deltas: Vec<(UnitSubgroup, Rek)> = Vec::new();
        for mp in divisors(m) {
            let list = unit_subgroups
                .entry(mp)
                .or_insert_with(|| crate::numth::cyclic_unit_subgroups(mp).unwrap_or_default());
            for delta in list.iter() {
                if let Ok(rek) = rek_of(delta, m) {
                    deltas.push((delta.clone(), rek));
                }
            }
        }
        for n in 1..=bound / m {
            for s in divisors(m) {
                for (delta, rek) in &deltas {
                    if n % delta.order() != 0 {
                        continue;
                    }
                    let t = MCInv { m, n, s, delta: delta.clone() };
                    if validate_with_rek(&t, *rek).is_ok() {
                        out.push(t);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Builds `<a, b | a^m, b^n = a^s, a^b = a^gamma>` realizing a valid tuple.
pub fn construct_group(t: &MCInv) -> Result<Group, InvariantError> {
    let rek = validate_tuple(t).map_err(InvariantError::Invalid)?;
    let MCInv { m, n, s, ref delta } = *t;
    if m == 1 {
        return Ok(Group::new(Presentation { m: 1, n, s: 0, t: 0 })?);
    }
    let mp = delta.modulus();
    let mut targets = Vec::new();
    for p in prime_factors(rek.r) {
        let mpp = part(m, &[p]);
        let rp = part(rek.r, &[p]);
        let base = if rek.eps_trivial_at(p) { 1 } else { -1 };
        targets.push((mpp, base + rp as i64, UnitSubgroup::cyclic(base + rp as i64, mpp)?));
    }
    let acceptable = |gamma: u64| -> bool {
        mod_pow(gamma, n, m) == 1
            && mod_mul(s % m, (gamma + m - 1) % m, m) == 0
            && UnitSubgroup::cyclic(gamma as i64, mp).map(|c| &c == delta).unwrap_or(false)
            && targets
                .iter()
                .all(|(mpp, _, sub)| UnitSubgroup::cyclic(gamma as i64, *mpp).map(|c| &c == sub).unwrap_or(false))
    };
    let units = (1..m).filter(|&x| gcd(x, m) == 1);
    // Prefer gamma that is exactly epsilon^(p-1) + r_p at every p | r.
    let exact = units
        .clone()
        .find(|&x| targets.iter().all(|(mpp, e, _)| x % mpp == residue(*e, *mpp) % mpp) && acceptable(x));
    let gamma = exact.or_else(|| units.clone().find(|&x| acceptable(x)));
    let gamma = gamma.ok_or(InvariantError::ConstructionFailed)?;
    // The multiplication uses b a b^-1 = a^t, so a^b = a^gamma needs t = gamma^-1.
    let tinv = mod_inv(gamma as i64, m)?;
    Ok(Group::new(Presentation { m, n, s: s % m, t: tinv })?)
}

/// `MCINV(G_p)` read as `(p^mu, p^nu, p^sigma, <e + p^rho>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SylowParameters {
    pub p: u64,
    pub mu: u32,
    pub nu: u32,
    pub sigma: u32,
    pub rho: u32,
    pub e_negative: bool,
}

/// Invariant parameters of the Sylow `p`-subgroup.
pub fn sylow_parameters(g: &Group, p: u64) -> Result<SylowParameters, InvariantError> {
    let h = g.sylow(p)?.ok_or(InvariantError::NoFactorization)?;
    let f = minimal_factorization_in(g, &h)?;
    Ok(SylowParameters {
        p,
        mu: vp(f.m, p),
        nu: vp(f.n, p),
        sigma: vp(f.s, p),
        rho: vp(f.rek.r, p),
        e_negative: f.rek.eps_negative,
    })
}

/// One named clause of the Sylow consistency statements and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Checks the constraints tying `MCINV(G_p)` to the invariants of `G`.
pub fn sylow_mcinv_consistency(g: &Group, p: u64) -> Result<Vec<ClauseCheck>, InvariantError> {
    let inv = invariants(g)?;
    let sp = sylow_parameters(g, p)?;
    let exp_g_p = {
        let h = g.sylow(p)?.ok_or(InvariantError::NoFactorization)?;
        h.elements().iter().map(|&x| g.element_order(x)).max().unwrap_or(1)
    };
    Ok(consistency_clauses(&inv, &sp, exp_g_p))
}

/// The clause list, given the parameters and the exponent of `G_p`.
pub fn consistency_clauses(inv: &Invariants, sp: &SylowParameters, exp_g_p: u64) -> Vec<ClauseCheck> {
    let p = sp.p;
    let pw = |e: u32| p.pow(e);
    let (mu, nu, sigma, rho) = (sp.mu, sp.nu, sp.sigma, sp.rho);
    let pp = |x: u64| part(x, &[p]);
    let (mp, np, sp_, rp, kp) = (pp(inv.m()), pp(inv.n()), pp(inv.s()), pp(inv.r()), pp(inv.k()));
    let e_pos = !sp.e_negative;
    let eps_pos = !inv.rek.eps_negative;
    let mut out = Vec::new();
    let mut push = |name, holds| out.push(ClauseCheck { name, holds });
    push("shape: rho = 0 implies mu = 0", rho != 0 || mu == 0);
    push("shape: p = 2 and rho = 1 imply mu = 1", !(p == 2 && rho == 1) || mu == 1);
    push(
        "shape: e = 1 bounds",
        !e_pos || (rho <= sigma && sigma <= mu && mu <= rho + sigma && sigma <= nu),
    );
    push(
        "shape: e = -1 bounds",
        e_pos
            || (p == 2
                && 2 <= rho
                && rho <= mu
                && nu >= 1
                && mu <= sigma + 1
                && sigma <= mu
                && mu <= rho + nu
                && rho + nu != sigma),
    );
    // The hypothesis mirrors "4 | n, 8 | m" of the realizability conditions;
    // the reversed inequalities fail already for the quaternion group.
    push("shape: e = -1, nu >= 2, mu >= 3 imply rho <= sigma", e_pos || !(nu >= 2 && mu >= 3) || rho <= sigma);
    push("sylow: m_p n_p = p^(mu+nu)", mp * np == pw(mu + nu));
    push("sylow: p^mu divides m_p", mp % pw(mu) == 0);
    push("sylow: s_p = p^sigma", sp_ == pw(sigma));
    push("sylow: p^mu = m_p iff p^nu = n_p", (pw(mu) == mp) == (pw(nu) == np));
    push("sylow: p^mu = m_p implies p^rho = r_p", pw(mu) != mp || pw(rho) == rp);
    let e_trivial = e_pos || p != 2;
    if e_trivial {
        push("sylow: p = 2 implies epsilon = 1", p != 2 || eps_pos);
        push("sylow: m_p / r_p = p^(mu-rho)", mp / rp == pw(mu.saturating_sub(rho)) && mu >= rho);
        push("sylow: exponent of G_p is m_p n_p / s_p", exp_g_p == mp * np / sp_);
        push(
            "sylow: m_p != p^mu forces k_p > 1, mu != 0, rho = sigma, k_p s_p > n_p",
            mp == pw(mu) || (kp > 1 && mu != 0 && rho == sigma && kp * sp_ > np),
        );
    } else {
        push("sylow: epsilon = -1 iff m_2 = 2^mu", (!eps_pos) == (mp == pw(mu)));
        push(
            "sylow: epsilon = 1 pins the Sylow shape",
            !eps_pos
                || (np == 2
                    && kp == 2
                    && kp < pw(nu)
                    && sigma == 1
                    && mu == 2
                    && mp == pw(nu + 1)
                    && rp == pw(nu)),
        );
    }
    out
}

/// Distinct invariants among the given groups.
pub fn distinct_invariants<'a>(groups: impl Iterator<Item = &'a Group>) -> Result<BTreeSet<MCInv>, InvariantError> {
    let mut out = BTreeSet::new();
    for g in groups {
        out.insert(mcinv(g)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn inv(m: u64, n: u64, s: u64, t: u64) -> Invariants {
        invariants(&make_group(m, n, s, t).unwrap()).unwrap()
    }

    #[test]
    fn quaternion_invariant() {
        let i = inv(4, 2, 2, 3);
        assert_eq!(i.mcinv, MCInv { m: 4, n: 2, s: 2, delta: UnitSubgroup::cyclic(3, 4).unwrap() });
        assert_eq!((i.r(), i.rek.eps_negative, i.k(), i.m_prime), (4, true, 1, 4));
    }

    #[test]
    fn symmetric_group_invariant() {
        let i = inv(3, 2, 0, 2);
        assert_eq!(i.mcinv, MCInv { m: 3, n: 2, s: 3, delta: UnitSubgroup::cyclic(2, 3).unwrap() });
        assert_eq!((i.r(), i.k()), (1, 2));
        assert_eq!(i.pi, vec![2]);
        assert_eq!(i.pi_prime, vec![3]);
    }

    #[test]
    fn cyclic_groups_have_trivial_invariant() {
        for n in 1..=30 {
            let i = inv(n, 1, 0, if n == 1 { 0 } else { 1 });
            assert_eq!(i.mcinv, MCInv { m: 1, n, s: 1, delta: UnitSubgroup::trivial(1).unwrap() });
        }
    }

    #[test]
    fn modular_sixteen_m_prime() {
        let rek = Rek { r: 4, eps_negative: false, k: 1 };
        assert_eq!(m_prime_part(2, 8, 2, 8, &rek), 4);
        // <a, b | a^8, b^2, a^b = a^5> also factors through a normal C_4
        let g = make_group(8, 2, 0, 5).unwrap();
        let i = invariants(&g).unwrap();
        assert_eq!(i.mcinv.order(), 16);
        assert_eq!(i.m(), 4);
        assert!(validate_tuple(&i.mcinv).is_ok());
        assert_eq!(mcinv(&construct_group(&i.mcinv).unwrap()).unwrap(), i.mcinv);
        let checks = sylow_mcinv_consistency(&g, 2).unwrap();
        assert!(checks.iter().all(|c| c.holds));
    }

    #[test]
    fn construction_examples() {
        let q = construct_group(&MCInv { m: 4, n: 2, s: 2, delta: UnitSubgroup::cyclic(3, 4).unwrap() }).unwrap();
        assert_eq!(q.presentation(), Presentation { m: 4, n: 2, s: 2, t: 3 });
        let s3 = construct_group(&MCInv { m: 3, n: 2, s: 3, delta: UnitSubgroup::cyclic(2, 3).unwrap() }).unwrap();
        assert_eq!(s3.presentation(), Presentation { m: 3, n: 2, s: 0, t: 2 });
        let d8 = MCInv { m: 4, n: 2, s: 4, delta: UnitSubgroup::cyclic(3, 4).unwrap() };
        assert_eq!(mcinv(&make_group(4, 2, 0, 3).unwrap()).unwrap(), d8);
        assert!(validate_tuple(&d8).is_ok());
        let bad = MCInv { m: 4, n: 2, s: 1, delta: UnitSubgroup::cyclic(3, 4).unwrap() };
        assert!(matches!(construct_group(&bad), Err(InvariantError::Invalid(ValidationFailure::Sign(_)))));
    }

    #[test]
    fn conjugation_group_examples() {
        let g = make_group(4, 2, 2, 3).unwrap();
        let a = g.subgroup_generated(&[g.a()]).unwrap();
        assert_eq!(t_subgroup(&g, &a).unwrap(), UnitSubgroup::cyclic(3, 4).unwrap());
        let d = make_group(9, 3, 0, 4).unwrap();
        let a = d.subgroup_generated(&[d.a()]).unwrap();
        assert_eq!(t_subgroup(&d, &a).unwrap(), UnitSubgroup::cyclic(4, 9).unwrap());
    }

    #[test]
    fn pi_prime_is_primes_of_m_outside_r() {
        for m in 1..=24u64 {
            for n in 1..=48 / m {
                for t in 0..m {
                    for s in divisors(m) {
                        let Ok(g) = make_group(m, n, s % m, t) else { continue };
                        let i = invariants(&g).unwrap();
                        assert_eq!(i.pi_prime, i.nu(), "{:?}", g.presentation());
                        assert!(i.mcinv.m.is_multiple_of(i.r()) && i.m_prime.is_multiple_of(i.r()));
                    }
                }
            }
        }
    }

    #[test]
    fn sylow_consistency_small() {
        for m in 1..=16u64 {
            for n in 1..=64 / m {
                for t in 0..m {
                    for s in divisors(m) {
                        let Ok(g) = make_group(m, n, s % m, t) else { continue };
                        let i = invariants(&g).unwrap();
                        for &p in &i.pi {
                            for c in sylow_mcinv_consistency(&g, p).unwrap() {
                                assert!(c.holds, "{} fails for {:?} at p={p}", c.name, g.presentation());
                            }
                        }
                    }
                }
            }
        }
    }
}
