//! Counting components of a fixed degree with restricted roots of unity,
//! once from the decomposition and once from the structure of `G`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::Ratio;

use super::{cocyclic_subgroups_of, AnalysisError, GroupData, SectionFilter};
use crate::group::{Element, Subgroup};
use crate::invariants::sylow_parameters;
use crate::numth::{lcm, part, prime_factors, vp};
use crate::wedderburn::{a_b_power, ComponentDescriptor};

type Q = Ratio<i64>;

fn q(x: u64) -> Q {
    Q::from_integer(x as i64)
}

/// Which of the two shapes of the 2-part the group has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignFamily {
    /// `epsilon = 1`, `m_2 = 2^(nu+1)`, `n_2 = 2`: `L_2` is cyclic.
    Plus,
    /// `epsilon = -1`, `m_2 = 4`, `n_2 = 2^nu`: `L_2 = C_2 x C_{2^nu}`.
    Minus,
}

/// Groups whose Sylow 2-subgroup has invariant `(4, 2^nu, 2, <-1>_4)`
/// with `nu >= 2`, in one of the two shapes above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignRegime {
    pub nu: u32,
    pub family: SignFamily,
}

pub fn sign_regime(gd: &GroupData) -> Result<Option<SignRegime>, AnalysisError> {
    if !gd.pi.contains(&2) || !gd.group.order().is_multiple_of(2) {
        return Ok(None);
    }
    let sp = sylow_parameters(&gd.group, 2)?;
    if !(sp.mu == 2 && sp.sigma == 1 && sp.e_negative && sp.nu >= 2) {
        return Ok(None);
    }
    let two = |x: u64| part(x, &[2]);
    let (m2, n2, s2, r2, k2) = (two(gd.m()), two(gd.n()), two(gd.s()), two(gd.r()), two(gd.k()));
    let big = 1u64 << sp.nu;
    let family = if !gd.rek.eps_negative && m2 == 2 * big && n2 == 2 && r2 == big {
        SignFamily::Plus
    } else if gd.rek.eps_negative && m2 == 4 && r2 == 4 && n2 == big {
        SignFamily::Minus
    } else {
        return Ok(None);
    };
    // The count relies on b^(k/2) inverting a_2, i.e. k_2 = 2.
    if k2 != 2 || s2 != 2 {
        return Ok(None);
    }
    Ok(Some(SignRegime { nu: sp.nu, family }))
}

/// Components of degree `k` whose center has no `p`-th roots of unity for
/// odd `p` in `pi`.
pub fn count_b(gd: &GroupData, decomp: &[ComponentDescriptor]) -> u64 {
    let f = SectionFilter::B {
        k: gd.k(),
        pi: gd.pi.clone(),
    };
    decomp.iter().filter(|c| f.accepts(c)).count() as u64
}

/// Conjugacy classes of cocyclic subgroups of `<a, b^k>_{pi'}` avoiding
/// `[b^(k/q), a_pi']` for every odd `q | k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SignClassCounts {
    /// Classes also avoiding the commutator for `q = 2`.
    pub d: u64,
    /// Classes containing it for `q = 2`.
    pub d1: u64,
    /// How many of the `d` classes have a normalizer of even index.
    pub d_even: u64,
    /// How many of the `d_1` classes have a normalizer of even index.
    pub d1_even: u64,
}

pub fn sign_class_counts(gd: &GroupData) -> Result<SignClassCounts, AnalysisError> {
    let g = &gd.group;
    let k = gd.k();
    let l = a_b_power(g, k);
    let lpi = g.hall_in(&l, &gd.pi_prime)?.ok_or(AnalysisError::Defect("no Hall subgroup"))?;
    let a_pi = gd.a_part(&gd.pi_prime);
    let comm_at = |q: u64| g.comm(g.pow(gd.b(), (k / q) as i64), a_pi);
    let primes = prime_factors(k);
    let mut first = Vec::new();
    let mut second = Vec::new();
    for p in cocyclic_subgroups_of(g, &lpi)? {
        let avoids_odd = primes.iter().filter(|&&q| q != 2).all(|&q| !p.contains(comm_at(q)));
        if !avoids_odd {
            continue;
        }
        if primes.contains(&2) && p.contains(comm_at(2)) {
            second.push(p);
        } else {
            first.push(p);
        }
    }
    let classes = |list: &[Subgroup]| {
        let cls = g.subgroup_conjugacy_classes(list);
        let even = cls.iter().filter(|c| c.len() % 2 == 0).count() as u64;
        (cls.len() as u64, even)
    };
    let (d, d_even) = classes(&first);
    let (d1, d1_even) = classes(&second);
    Ok(SignClassCounts { d, d1, d_even, d1_even })
}

/// `d h + d_1` or `d (h - 1) + d_1`, with `h` the number of cocyclic
/// subgroups of `L_2`; `None` outside the family.
///
/// This treats `K_{pi'} x K_2` and `M_{pi'} x M_2` as conjugate whenever
/// the factors are conjugate separately, which undercounts in the minus
/// family; see [`sign_count_by_pair_orbits`].
pub fn formula_ne(gd: &GroupData) -> Result<Option<u64>, AnalysisError> {
    let Some(reg) = sign_regime(gd)? else {
        return Ok(None);
    };
    let c = sign_class_counts(gd)?;
    let nu = reg.nu as u64;
    Ok(Some(match reg.family {
        SignFamily::Plus => c.d * (nu + 2) + c.d1,
        SignFamily::Minus => c.d * (2 * (nu + 1) - 1) + c.d1,
    }))
}

/// The same count with products conjugated simultaneously.
///
/// In the minus family the two non-normal cocyclic subgroups of `L_2` are
/// swapped by `b` and fixed by `b^2`. Over a class of `K_{pi'}` whose
/// normalizer has even index, the pairs with such a `K_2` form two orbits,
/// not one.
pub fn sign_count_by_pair_orbits(gd: &GroupData) -> Result<Option<u64>, AnalysisError> {
    let Some(reg) = sign_regime(gd)? else {
        return Ok(None);
    };
    let literal = formula_ne(gd)?.ok_or(AnalysisError::Defect("regime check disagrees"))?;
    let c = sign_class_counts(gd)?;
    Ok(Some(match reg.family {
        SignFamily::Plus => literal,
        SignFamily::Minus => literal + c.d_even + c.d1_even,
    }))
}

/// Numbers attached to a prime `p` in the family where the counting
/// formula for degree `l = lcm(k, p^(mu - rho))` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeRegime {
    pub p: u64,
    pub mu: u32,
    pub nu: u32,
    pub rho: u32,
    pub l: u64,
    pub lp: u64,
    pub mp: u64,
    pub np: u64,
    pub kp: u64,
}

impl PrimeRegime {
    fn pow(&self, e: u32) -> u64 {
        self.p.pow(e)
    }
}

/// `Some` when `p` passes every standing assumption of the count; any
/// assumption that fails excludes the pair.
pub fn prime_regime(gd: &GroupData, p: u64) -> Result<Option<PrimeRegime>, AnalysisError> {
    if !gd.pi.contains(&p) || !gd.group.order().is_multiple_of(p) {
        return Ok(None);
    }
    let sp = sylow_parameters(&gd.group, p)?;
    let (mu, nu, rho, sigma) = (sp.mu, sp.nu, sp.rho, sp.sigma);
    if sp.e_negative || gd.rek.eps_negative || rho > mu {
        return Ok(None);
    }
    let pp = |x: u64| part(x, &[p]);
    let (mp, np, sp_, rp, kp) = (pp(gd.m()), pp(gd.n()), pp(gd.s()), pp(gd.r()), pp(gd.k()));
    let l = lcm(gd.k(), p.pow(mu - rho));
    let lp = pp(l);
    let reg = PrimeRegime {
        p,
        mu,
        nu,
        rho,
        l,
        lp,
        mp,
        np,
        kp,
    };
    let consistent = mp * np == reg.pow(mu + nu) && mp == rp * reg.pow(mu - rho);
    let u2 = kp > 1
        && mu > 0
        && mu <= 2 * rho
        && rho >= 1
        && rho == sigma
        && rho < nu
        && lp < reg.pow(nu)
        && sp_ == reg.pow(rho)
        && lp.max(reg.pow(rho)) <= np;
    let u3 = np == reg.pow(nu) || np < reg.pow(nu).min(reg.pow(rho) * kp);
    Ok((consistent && u2 && u3).then_some(reg))
}

/// `L_p = <g> x <h>` with `|g| = u`, `|h| = v`, and the auxiliary `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Uvt {
    pub v: u64,
    pub u: u64,
    pub t: u64,
    pub g: Element,
    pub h: Element,
}

pub fn uvt_of(gd: &GroupData, reg: &PrimeRegime) -> Result<Uvt, AnalysisError> {
    let grp = &gd.group;
    let p = reg.p;
    let prho = reg.pow(reg.rho);
    let v = (reg.np / reg.lp).min(prho);
    let u = reg.pow(reg.mu + reg.nu) / (v * reg.lp);
    let t = reg.pow(reg.nu + 2 * reg.rho) / (v * v * reg.lp);
    let ap = gd.normalized_a_part(p)?;
    let bp = gd.b_part(&[p]);
    let (g, h) = if reg.np <= reg.lp * prho {
        let e = (reg.lp * prho / reg.np) as i64;
        (ap, grp.mul(grp.pow(bp, reg.lp as i64), grp.pow(ap, -e)))
    } else {
        let e = reg.pow(reg.nu - reg.rho) as i64;
        (grp.pow(bp, reg.lp as i64), grp.mul(grp.pow(bp, e), grp.inv(ap)))
    };
    Ok(Uvt { v, u, t, g, h })
}

/// `N_G(K_{kind,y,x})`: `<a, b^(y/t)>` when `kind = 2` and `y >= t`, else `G`.
pub fn normalizer_of_k(gd: &GroupData, uvt: &Uvt, kind: u8, y: u64) -> Subgroup {
    if kind == 2 && y >= uvt.t {
        a_b_power(&gd.group, y / uvt.t)
    } else {
        gd.group.whole()
    }
}

/// Components of degree `l` whose center avoids `q`-th roots of unity for
/// `q` in `pi \ {p, 2}` and, for odd `p`, fourth roots of unity.
pub fn count_c(gd: &GroupData, reg: &PrimeRegime, decomp: &[ComponentDescriptor]) -> u64 {
    let f = SectionFilter::C {
        l: reg.l,
        p: reg.p,
        pi: gd.pi.clone(),
    };
    decomp.iter().filter(|c| f.accepts(c)).count() as u64
}

/// Brute-force ingredients of the count: the multiplier `O` and, for each
/// `d | l`, the numbers of admissible cocyclic `P <= L_{pi'}` with
/// `N_G(P) = <a, b^d>` not containing, resp. containing, `[b^(l/p), a_pi']`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiPrimeClasses {
    pub o: u64,
    pub by_index: BTreeMap<u64, (u64, u64)>,
}

pub fn pi_prime_classes(gd: &GroupData, reg: &PrimeRegime) -> Result<PiPrimeClasses, AnalysisError> {
    let g = &gd.group;
    let l = a_b_power(g, reg.l);
    let lpi = g.hall_in(&l, &gd.pi_prime)?.ok_or(AnalysisError::Defect("no Hall subgroup"))?;
    let a_pi = gd.a_part(&gd.pi_prime);
    let comm_at = |q: u64| g.comm(g.pow(gd.b(), (reg.l / q) as i64), a_pi);
    let others: Vec<u64> = prime_factors(reg.l).into_iter().filter(|&q| q != reg.p).collect();
    let mut by_index: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for p in cocyclic_subgroups_of(g, &lpi)? {
        if others.iter().any(|&q| p.contains(comm_at(q))) {
            continue;
        }
        let nrm = g.normalizer(&p);
        let d = g.order() / nrm.order();
        if !reg.l.is_multiple_of(d) || nrm != a_b_power(g, d) {
            return Err(AnalysisError::Defect("normalizer of a pi'-subgroup is not <a, b^d>"));
        }
        let entry = by_index.entry(d).or_default();
        if p.contains(comm_at(reg.p)) {
            entry.1 += 1;
        } else {
            entry.0 += 1;
        }
    }
    let o = if reg.p == 2 {
        1
    } else {
        let l2 = g.hall_in(&l, &[2])?.ok_or(AnalysisError::Defect("no Sylow subgroup"))?;
        g.enumerate_subgroups()?
            .iter()
            .filter(|k| k.is_subset_of(&l2) && k.order() * 2 >= l2.order())
            .count() as u64
    };
    Ok(PiPrimeClasses { o, by_index })
}

/// Which closed form for `M(d)` and `N(d)` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// The piecewise table exactly as printed.
    Displayed,
    /// The same table re-derived from the defining sums.
    Derived,
}

/// Which branch of the piecewise `M(d)` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MBranch {
    /// `t d_p < u`.
    Wide,
    /// `t <= u <= t d_p`.
    Middle,
    /// `u < t`.
    Narrow,
}

pub fn m_branch(uvt: &Uvt, dp: u64) -> MBranch {
    if uvt.t * dp < uvt.u {
        MBranch::Wide
    } else if uvt.t <= uvt.u {
        MBranch::Middle
    } else {
        MBranch::Narrow
    }
}

fn log_p(x: u64, p: u64) -> i64 {
    vp(x, p) as i64
}

/// `M(d) = (f_d(v) + h_d(v)) / d`.
pub fn m_closed(reg: &PrimeRegime, uvt: &Uvt, d: u64, form: ClosedForm) -> Q {
    let p = reg.p;
    let v = uvt.v;
    let dp = part(d, &[p]);
    let pm1 = q(p - 1);
    let vv = q(v);
    let log_v = log_p(v, p);
    let log_l = log_p(reg.l, p);
    let (nu, mu, rho) = (reg.nu as i64, reg.mu as i64, reg.rho as i64);
    let p2rm = q(reg.pow(2 * reg.rho - reg.mu));
    let two = q(2);
    let (f, h) = match m_branch(uvt, dp) {
        MBranch::Wide => {
            let f = vv * (q(p + 2) / pm1 + Q::from_integer(nu + 2 * rho - 3 * log_v - log_l));
            let tail = (two + q(dp) * p2rm) / pm1;
            let h = match form {
                ClosedForm::Displayed => {
                    q(reg.lp * v * v) / q(reg.pow(reg.mu + reg.nu)) * Q::from_integer(1 + log_p(dp, p)) - tail
                }
                ClosedForm::Derived => vv * Q::from_integer(log_p(dp, p)) - tail,
            };
            (f, h)
        }
        MBranch::Middle => {
            let f = vv * (q(p + 1) / pm1 + Q::from_integer(mu + nu - 2 * log_v - log_l));
            let h = match form {
                ClosedForm::Displayed => -two,
                ClosedForm::Derived => -two / pm1,
            };
            (f, h)
        }
        MBranch::Narrow => {
            // y | u caps the sum over y | t, so the derived f is the middle one
            let f = match form {
                ClosedForm::Displayed => vv * (q(p + 1) / pm1 + Q::from_integer(nu + 2 * rho - 3 * log_v - log_l)),
                ClosedForm::Derived => vv * (q(p + 1) / pm1 + Q::from_integer(mu + nu - 2 * log_v - log_l)),
            };
            let h = match form {
                ClosedForm::Displayed => Q::from_integer(0),
                ClosedForm::Derived => -two / pm1,
            };
            (f, h)
        }
    };
    (f + h) / q(d)
}

/// `N(d) = g_d(v)`.
pub fn n_closed(reg: &PrimeRegime, uvt: &Uvt, d: u64, form: ClosedForm) -> Q {
    let p = reg.p;
    let dp = part(d, &[p]);
    let dpp = d / dp;
    let u_over_t = q(uvt.u) / q(uvt.t);
    let p2rm = q(reg.pow(2 * reg.rho - reg.mu));
    let zero = Q::from_integer(0);
    match form {
        ClosedForm::Displayed => {
            let gate = reg.kp <= reg.pow(reg.nu - reg.rho);
            if gate && q(dp) >= u_over_t {
                q(uvt.v) / q(d)
            } else if gate && q(dp) > u_over_t {
                p2rm / q(dpp)
            } else {
                zero
            }
        }
        ClosedForm::Derived => {
            let gate = reg.kp <= reg.pow(reg.mu - reg.rho);
            if gate && q(dp) >= u_over_t {
                q(uvt.v) / q(d)
            } else if gate {
                p2rm / q(dpp)
            } else {
                zero
            }
        }
    }
}

/// `O sum_{d | l} (|K_{d,1}| M(d) + |K_{d,2}| N(d))` with the chosen table.
pub fn ng_closed(reg: &PrimeRegime, uvt: &Uvt, classes: &PiPrimeClasses, form: ClosedForm) -> Q {
    let mut total = Q::from_integer(0);
    for (&d, &(k1, k2)) in &classes.by_index {
        total += q(k1) * m_closed(reg, uvt, d, form) + q(k2) * n_closed(reg, uvt, d, form);
    }
    total * q(classes.o)
}

/// `M(d)` and `N(d)` straight from their definitions: a sum of
/// `1 / [G : N_G(K)]` over the cocyclic subgroups `K_{i,y,x}` of `L_p`,
/// where for `N` only those `K` missing `[b^(l/p), a_p]` count.
pub fn mn_from_sums(gd: &GroupData, reg: &PrimeRegime, uvt: &Uvt, d: u64) -> Result<(Q, Q), AnalysisError> {
    let g = &gd.group;
    let witness = g.comm(g.pow(gd.b(), (reg.l / reg.p) as i64), gd.a_part(&[reg.p]));
    let mut m = Q::from_integer(0);
    let mut n = Q::from_integer(0);
    for c in g.cocyclic_triples(uvt.g, uvt.h, reg.p)? {
        let e = if c.kind == 2 && c.y > uvt.t { c.y / uvt.t } else { 1 };
        let share = Q::new(1, lcm(d, e) as i64);
        m += share;
        if !c.subgroup.contains(witness) {
            n += share;
        }
    }
    Ok((m, n))
}

pub fn ng_from_sums(gd: &GroupData, reg: &PrimeRegime, uvt: &Uvt, classes: &PiPrimeClasses) -> Result<Q, AnalysisError> {
    let mut total = Q::from_integer(0);
    for (&d, &(k1, k2)) in &classes.by_index {
        let (m, n) = mn_from_sums(gd, reg, uvt, d)?;
        total += q(k1) * m + q(k2) * n;
    }
    Ok(total * q(classes.o))
}

/// The count predicted from the structure of `G` with the re-derived
/// closed forms; `None` outside the family.
pub fn formula_ng(gd: &GroupData, p: u64) -> Result<Option<u64>, AnalysisError> {
    let Some(reg) = prime_regime(gd, p)? else {
        return Ok(None);
    };
    let uvt = uvt_of(gd, &reg)?;
    let classes = pi_prime_classes(gd, &reg)?;
    let v = ng_closed(&reg, &uvt, &classes, ClosedForm::Derived);
    if !v.is_integer() || *v.numer() < 0 {
        return Err(AnalysisError::Defect("component count is not a nonnegative integer"));
    }
    Ok(Some(*v.numer() as u64))
}

/// Every evaluation of the degree-`l` count for one `(G, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCountReport {
    pub regime: PrimeRegime,
    pub uvt: (u64, u64, u64),
    pub observed: u64,
    pub derived: Q,
    pub from_sums: Q,
    pub displayed: Q,
    /// Branches of `M(d)` that were used, one per `d` with nonzero weight.
    pub branches: Vec<MBranch>,
    /// Whether any `N(d)` term had nonzero weight.
    pub uses_n: bool,
}

impl PrimeCountReport {
    pub fn derived_matches(&self) -> bool {
        self.derived == q(self.observed) && self.from_sums == self.derived
    }

    pub fn displayed_matches(&self) -> bool {
        self.displayed == q(self.observed)
    }
}

pub fn prime_count_report(
    gd: &GroupData,
    p: u64,
    decomp: &[ComponentDescriptor],
) -> Result<Option<PrimeCountReport>, AnalysisError> {
    let Some(reg) = prime_regime(gd, p)? else {
        return Ok(None);
    };
    let uvt = uvt_of(gd, &reg)?;
    let classes = pi_prime_classes(gd, &reg)?;
    let mut branches: Vec<MBranch> = classes
        .by_index
        .iter()
        .filter(|(_, &(k1, _))| k1 > 0)
        .map(|(&d, _)| m_branch(&uvt, part(d, &[p])))
        .collect();
    branches.sort();
    branches.dedup();
    Ok(Some(PrimeCountReport {
        regime: reg,
        uvt: (uvt.u, uvt.v, uvt.t),
        observed: count_c(gd, &reg, decomp),
        derived: ng_closed(&reg, &uvt, &classes, ClosedForm::Derived),
        from_sums: ng_from_sums(gd, &reg, &uvt, &classes)?,
        displayed: ng_closed(&reg, &uvt, &classes, ClosedForm::Displayed),
        branches,
        uses_n: classes.by_index.values().any(|&(_, k2)| k2 > 0),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{valid_tuples, MCInv};
    use crate::numth::UnitSubgroup;
    use crate::wedderburn::decomposition;

    fn data(m: u64, n: u64, s: u64, gen: i64) -> GroupData {
        let t = MCInv {
            m,
            n,
            s,
            delta: UnitSubgroup::cyclic(gen, m).unwrap(),
        };
        GroupData::from_mcinv(&t).unwrap()
    }

    #[test]
    fn sign_family_examples() {
        let plus = data(24, 2, 6, 5);
        assert_eq!(sign_regime(&plus).unwrap().unwrap().family, SignFamily::Plus);
        let dec = decomposition(&plus.group).unwrap();
        assert_eq!(formula_ne(&plus).unwrap(), Some(count_b(&plus, &dec)));

        let minus = data(12, 4, 6, 11);
        let reg = sign_regime(&minus).unwrap().unwrap();
        assert_eq!((reg.family, reg.nu), (SignFamily::Minus, 2));
        // d (2 nu + 1) + d_1 with d = d_1 = 1
        assert_eq!(formula_ne(&minus).unwrap(), Some(6));
        let dec = decomposition(&minus.group).unwrap();
        assert_eq!(count_b(&minus, &dec), 6);

        let s3 = data(3, 2, 3, 2);
        assert_eq!(formula_ne(&s3).unwrap(), None);
        let dec = decomposition(&s3.group).unwrap();
        assert_eq!(count_b(&s3, &dec), 1);
    }

    #[test]
    fn separate_conjugacy_undercounts_products() {
        // <a_3 b_3^2> and <a_3^2 b_3^2> are swapped by b, and so are the two
        // non-normal cocyclic subgroups of L_2: four products, two orbits.
        let g = data(12, 12, 6, 11);
        let c = sign_class_counts(&g).unwrap();
        assert_eq!((c.d, c.d1, c.d_even, c.d1_even), (2, 2, 1, 0));
        let dec = decomposition(&g.group).unwrap();
        assert_eq!(count_b(&g, &dec), 13);
        assert_eq!(formula_ne(&g).unwrap(), Some(12));
        assert_eq!(sign_count_by_pair_orbits(&g).unwrap(), Some(13));
    }

    #[test]
    fn prime_family_example() {
        let g = data(12, 2, 6, 5);
        let reg = prime_regime(&g, 2).unwrap().unwrap();
        assert_eq!((reg.mu, reg.nu, reg.rho, reg.l), (1, 2, 1, 2));
        let uvt = uvt_of(&g, &reg).unwrap();
        assert_eq!((uvt.u, uvt.v, uvt.t), (4, 1, 8));
        let dec = decomposition(&g.group).unwrap();
        let rep = prime_count_report(&g, 2, &dec).unwrap().unwrap();
        assert_eq!(rep.observed, 3);
        assert!(rep.derived_matches());
        assert_eq!(rep.branches, [MBranch::Narrow]);
        assert_eq!(rep.displayed, Q::from_integer(7));
        assert_eq!(prime_regime(&g, 3).unwrap(), None);
        assert_eq!(formula_ng(&data(3, 2, 3, 2), 3).unwrap(), None);
    }

    #[test]
    fn index_two_multiplier_example() {
        let g = data(21, 18, 21, 4);
        let reg = prime_regime(&g, 3).unwrap().unwrap();
        assert_eq!(pi_prime_classes(&g, &reg).unwrap().o, 2);
        let dec = decomposition(&g.group).unwrap();
        assert_eq!(formula_ng(&g, 3).unwrap(), Some(count_c(&g, &reg, &dec)));
        assert_eq!(count_c(&g, &reg, &dec), 10);
    }

    #[test]
    fn basis_of_the_p_part_and_normalizers() {
        let mut seen = 0;
        for t in valid_tuples(192) {
            let gd = GroupData::from_mcinv(&t).unwrap();
            for p in prime_factors(gd.group.order()) {
                let Some(reg) = prime_regime(&gd, p).unwrap() else {
                    continue;
                };
                seen += 1;
                let grp = &gd.group;
                let uvt = uvt_of(&gd, &reg).unwrap();
                let lp = grp.hall_in(&a_b_power(grp, reg.l), &[p]).unwrap().unwrap();
                assert_eq!(uvt.u * uvt.v, lp.order(), "{t}");
                assert_eq!((grp.element_order(uvt.g), grp.element_order(uvt.h)), (uvt.u, uvt.v), "{t}");
                assert_eq!(gd.subgroup(&[uvt.g, uvt.h]).unwrap(), lp, "{t}");
                for c in grp.cocyclic_triples(uvt.g, uvt.h, p).unwrap() {
                    assert_eq!(normalizer_of_k(&gd, &uvt, c.kind, c.y), grp.normalizer(&c.subgroup), "{t} {c:?}");
                }
                let classes = pi_prime_classes(&gd, &reg).unwrap();
                assert!(classes.by_index.get(&1).is_some_and(|&(k1, _)| k1 >= 1), "{t}");
            }
        }
        assert!(seen > 20);
    }

    #[test]
    fn closed_forms_agree_with_the_defining_sums() {
        for t in valid_tuples(192) {
            let gd = GroupData::from_mcinv(&t).unwrap();
            for p in prime_factors(gd.group.order()) {
                let Some(reg) = prime_regime(&gd, p).unwrap() else {
                    continue;
                };
                let uvt = uvt_of(&gd, &reg).unwrap();
                for d in crate::numth::divisors(reg.l) {
                    let (m, n) = mn_from_sums(&gd, &reg, &uvt, d).unwrap();
                    assert_eq!(m_closed(&reg, &uvt, d, ClosedForm::Derived), m, "{t} p={p} d={d}");
                    assert_eq!(n_closed(&reg, &uvt, d, ClosedForm::Derived), n, "{t} p={p} d={d}");
                }
            }
        }
    }
}
