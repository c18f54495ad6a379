//! Explicit components that pin down the `p`-parts of `Delta`, and the
//! list of invariants shared by groups with the same invariant tuple.

use alloc::vec::Vec;

use super::{AnalysisError, CenterConditions, GroupData, SectionFilter};
use crate::group::{Element, Group, Subgroup};
use crate::invariants::{mcinv, mcinv_in, pi_sets, ClauseCheck};
use crate::numth::{euler_phi, ese, gcd, lcm, mod_inv, part, UnitSubgroup};
use crate::wedderburn::{
    a_b_power, abelianization_fields, abelianization_invariants, component_of, fixed_field, idempotent_check,
    shoda_conditions, ComponentDescriptor, FixedField, ShodaPair, IDEMPOTENT_CHECK_BOUND,
};

/// The three situations in which `m'_p > r_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCase {
    /// `epsilon^(p-1) = 1` and `s_p >= m'_p`.
    WideS,
    /// `epsilon^(p-1) = 1` and `s_p < m'_p`.
    NarrowS,
    /// `p = 2` and `epsilon = -1`.
    Inverting,
}

/// How the exponent in the second case was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentSource {
    /// From the congruence `z = y k / k_p` with `z` read off `Ese(1 + r_p, n_p / k_p)`.
    Congruence,
    /// By search over `y` prime to `p` for the stated intersection with `<a>`.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub case: WitnessCase,
    pub expected_degree: u64,
    pub ambient: u64,
    pub exponent: Option<(u64, ExponentSource)>,
    /// `K <= L`, `K` normal in `L`, `L/K` cyclic and maximal abelian in `N_G(K)/K`.
    pub shoda: (bool, bool, bool, bool),
    /// Exact idempotent verification when `|G|` is small enough.
    pub idempotent: Option<bool>,
    pub component: Option<ComponentDescriptor>,
    /// Degree and center conditions of the case.
    pub conditions_hold: bool,
}

impl WitnessReport {
    pub fn passes(&self) -> bool {
        let (a, b, c, d) = self.shoda;
        a && b && c && d && self.idempotent.unwrap_or(true) && self.conditions_hold
    }
}

/// Builds the case's `(L, K_0)` for `p` and checks it; `None` unless
/// `p` is in `pi` and `m'_p > r_p > 1`.
pub fn section7_witness(gd: &GroupData, p: u64) -> Result<Option<WitnessReport>, AnalysisError> {
    let pp = |x: u64| part(x, &[p]);
    let (mp, np, sp, rp, kp) = (pp(gd.m()), pp(gd.n()), pp(gd.s()), pp(gd.r()), pp(gd.k()));
    let mpp = pp(gd.m_prime());
    if !gd.pi.contains(&p) || !(mpp > rp && rp > 1) {
        return Ok(None);
    }
    let g = &gd.group;
    let k = gd.k();
    let m_pi = gd.m_pi_prime();
    let pi_minus_p = gd.pi_without(&[p]);
    let a_rest = gd.a_part(&pi_minus_p);
    let f0 = fixed_field(m_pi, &gd.r_group()?)?;
    let case = if !gd.rek.eps_trivial_at(p) {
        WitnessCase::Inverting
    } else if sp >= mpp {
        WitnessCase::WideS
    } else {
        WitnessCase::NarrowS
    };
    let mut exponent = None;
    let (l, k0, degree, ambient, local) = match case {
        WitnessCase::WideS => {
            let c = lcm(k, sp / rp);
            let l = a_b_power(g, c);
            let k0 = gd.subgroup(&[a_rest, g.pow(gd.b(), c as i64)])?;
            (l, k0, c, m_pi * sp, (sp, FixedField::cyclotomic(rp)?))
        }
        WitnessCase::NarrowS => {
            let l = a_b_power(g, k);
            let (y, src, k0) = narrow_witness(gd, p, (mp, np, sp, rp, kp), &a_rest)?;
            exponent = Some((y, src));
            (l, k0, k, m_pi * mpp, (mpp, FixedField::cyclotomic(rp)?))
        }
        WitnessCase::Inverting => {
            let c = lcm(k, mpp / rp);
            let l = a_b_power(g, c);
            let b2c = g.pow(gd.b_part(&[2]), c as i64);
            let a_sub = gd.subgroup(&[gd.a()])?;
            let tail = if a_sub.contains(b2c) {
                g.pow(gd.b_part(&gd.primes_except(2)), c as i64)
            } else {
                g.pow(gd.b(), c as i64)
            };
            let k0 = gd.subgroup(&[a_rest, tail])?;
            let sigma = UnitSubgroup::cyclic(rp as i64 - 1, mpp)?;
            (l, k0, c, m_pi * mpp, (mpp, fixed_field(mpp, &sigma)?))
        }
    };
    let conditions = CenterConditions {
        ambient,
        degree,
        intersections: alloc::vec![(m_pi, f0), local],
    };
    let filter = match case {
        WitnessCase::WideS => SectionFilter::D(conditions),
        WitnessCase::NarrowS => SectionFilter::E(conditions),
        WitnessCase::Inverting => SectionFilter::F(conditions),
    };
    let shoda = shoda_conditions(g, &l, &k0);
    let component = if shoda.0 && shoda.1 {
        component_of(g, &ShodaPair { l: l.clone(), k: k0.clone() }).ok()
    } else {
        None
    };
    let idempotent = if g.order() <= IDEMPOTENT_CHECK_BOUND && shoda.0 && shoda.1 {
        Some(idempotent_check(g, &l, &k0).map(|r| r.is_strong_shoda()).unwrap_or(false))
    } else {
        None
    };
    let conditions_hold = component.as_ref().is_some_and(|c| filter.accepts(c));
    Ok(Some(WitnessReport {
        case,
        expected_degree: degree,
        ambient,
        exponent,
        shoda,
        idempotent,
        component,
        conditions_hold,
    }))
}

fn narrow_k0(gd: &GroupData, p: u64, parts: (u64, u64, u64, u64, u64), a_rest: &Element, y: u64) -> Result<Subgroup, AnalysisError> {
    let g = &gd.group;
    let (_, np, sp, rp, kp) = parts;
    let k = gd.k();
    let ap = gd.normalized_a_part(p)?;
    let twisted = g.mul(g.pow(gd.b(), -((y * k) as i64)), g.pow(ap, (sp * kp / np) as i64));
    gd.subgroup(&[
        *a_rest,
        g.pow(ap, (rp * sp * kp / np) as i64),
        twisted,
        g.pow(gd.b_part(&gd.primes_except(p)), k as i64),
    ])
}

/// `K_0 = <a_{pi \ p}, a_p^(r_p s_p k_p / n_p), b^(-y k) a_p^(s_p k_p / n_p), b_{p'}^k>`
/// with `K_0 ∩ <a> = <a_{pi \ p}, a_p^(r_p s_p k_p / n_p)>`.
fn narrow_witness(
    gd: &GroupData,
    p: u64,
    parts: (u64, u64, u64, u64, u64),
    a_rest: &Element,
) -> Result<(u64, ExponentSource, Subgroup), AnalysisError> {
    let g = &gd.group;
    let (mp, np, sp, rp, kp) = parts;
    let ap = gd.normalized_a_part(p)?;
    let want = gd.subgroup(&[*a_rest, g.pow(ap, (rp * sp * kp / np) as i64)])?;
    let a_sub = gd.subgroup(&[gd.a()])?;
    let meets_a_as_stated = |k0: &Subgroup| g.intersection(k0, &a_sub) == want;

    let q = np / kp;
    let modulus = mp / sp;
    if modulus > 1 {
        let z = ese((1 + rp) as i64, q) / num_bigint::BigInt::from(q);
        let z = (z % num_bigint::BigInt::from(modulus)).to_u64_digits().1.first().copied().unwrap_or(0);
        let ratio = (gd.k() / kp) % modulus;
        if gcd(ratio, modulus) == 1 {
            let y = (z * mod_inv(ratio as i64, modulus)?) % modulus;
            let k0 = narrow_k0(gd, p, parts, a_rest, y)?;
            if meets_a_as_stated(&k0) {
                return Ok((y, ExponentSource::Congruence, k0));
            }
        }
    }
    for y in (1..=gd.n()).filter(|y| y % p != 0) {
        let k0 = narrow_k0(gd, p, parts, a_rest, y)?;
        if meets_a_as_stated(&k0) {
            return Ok((y, ExponentSource::Search, k0));
        }
    }
    Err(AnalysisError::Defect("no exponent gives the stated intersection with <a>"))
}

/// Result of comparing the invariants shared by `QG`-equivalent groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedInvariants {
    /// `false` when the tuples differ and the clauses say nothing.
    pub applicable: bool,
    pub clauses: Vec<ClauseCheck>,
}

/// For groups with equal invariant tuples, checks that `G/G'`, `pi`, `pi'`,
/// the `pi'`-parts of `m` and `n` and the Sylow `p`-subgroups for `p` in `pi`
/// agree; the abelianization is compared both by its invariants and by the
/// commutative part of the group algebra.
pub fn pi_igual_check(g: &Group, h: &Group) -> Result<SharedInvariants, AnalysisError> {
    if mcinv(g)? != mcinv(h)? {
        return Ok(SharedInvariants {
            applicable: false,
            clauses: Vec::new(),
        });
    }
    let (pig, pipg) = pi_sets(g);
    let (pih, piph) = pi_sets(h);
    let dg = GroupData::from_group(g)?;
    let dh = GroupData::from_group(h)?;
    let mut clauses = alloc::vec![
        ClauseCheck {
            name: "abelianization",
            holds: abelianization_invariants(g) == abelianization_invariants(h),
        },
        ClauseCheck {
            name: "abelianization via commutative components",
            holds: abelianization_fields(g)? == abelianization_fields(h)?,
        },
        ClauseCheck {
            name: "pi",
            holds: pig == pih,
        },
        ClauseCheck {
            name: "pi'",
            holds: pipg == piph,
        },
        ClauseCheck {
            name: "m_pi'",
            holds: dg.m_pi_prime() == dh.m_pi_prime(),
        },
        ClauseCheck {
            name: "n_pi'",
            holds: part(dg.n(), &dg.pi_prime) == part(dh.n(), &dh.pi_prime),
        },
    ];
    let mut sylow_ok = true;
    for &p in &pig {
        let (Some(sg), Some(sh)) = (g.sylow(p)?, h.sylow(p)?) else {
            sylow_ok = false;
            continue;
        };
        sylow_ok &= mcinv_in(g, &sg)? == mcinv_in(h, &sh)?;
    }
    clauses.push(ClauseCheck {
        name: "Sylow subgroups for pi",
        holds: sylow_ok,
    });
    Ok(SharedInvariants {
        applicable: true,
        clauses,
    })
}

/// `[Q(zeta_e) : F]`, or `None` when `F` is not inside `Q(zeta_e)`.
pub fn relative_degree(f: &FixedField, e: u64) -> Option<u64> {
    let big = FixedField::cyclotomic(e).ok()?;
    f.is_subfield_of(&big).then(|| euler_phi(e) / f.degree())
}
