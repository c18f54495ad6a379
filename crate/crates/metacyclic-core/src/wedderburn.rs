//! Wedderburn decomposition of `QG` for a metacyclic `G`, computed from
//! strong Shoda pairs `(L, K)` with `L` containing a fixed maximal abelian
//! subgroup `A = <a, b^j>`.
//!
//! Each simple component is a matrix algebra over a cyclic crossed product
//! `Q(zeta_h) * <w>`, described by the integers of [`ComponentDescriptor`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{Element, Group, GroupError, Subgroup};
use crate::numth::{divisors, euler_phi, gcd, lcm, mult_order, prime_factors, NumthError, UnitSubgroup};
use crate::qgroup::GroupAlgebraElement;

/// Largest order for which ε(L, K) and e(G, L, K) are computed exactly.
pub const IDEMPOTENT_CHECK_BOUND: u64 = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WedderburnError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Numth(#[from] NumthError),
    #[error("({0}) is not a strong Shoda pair: {1}")]
    NotStrongShoda(&'static str, &'static str),
}

/// The subfield `Q(zeta_d)^T` of a cyclotomic field, normalised to the
/// smallest `d` that still contains it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedField {
    pub conductor: u64,
    pub fixer: UnitSubgroup,
}

impl fmt::Debug for FixedField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})^{:?}", self.conductor, self.fixer)
    }
}

impl FixedField {
    pub fn rationals() -> Self {
        Self {
            conductor: 1,
            fixer: UnitSubgroup::trivial(1).expect("modulus 1"),
        }
    }

    /// `Q(zeta_e)`.
    pub fn cyclotomic(e: u64) -> Result<Self, NumthError> {
        fixed_field(e, &UnitSubgroup::trivial(e)?)
    }

    /// Degree over `Q`.
    pub fn degree(&self) -> u64 {
        euler_phi(self.conductor) / self.fixer.order()
    }

    /// The group fixing this field inside `Gal(Q(zeta_d)/Q)`, for `conductor | d`.
    pub fn galois_fixer_at(&self, d: u64) -> Result<UnitSubgroup, NumthError> {
        self.fixer.preimage(d)
    }

    pub fn is_subfield_of(&self, other: &Self) -> bool {
        let d = lcm(self.conductor, other.conductor);
        match (self.galois_fixer_at(d), other.galois_fixer_at(d)) {
            (Ok(a), Ok(b)) => b.is_subgroup_of(&a),
            _ => false,
        }
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, NumthError> {
        let d = lcm(self.conductor, other.conductor);
        let joined = self.galois_fixer_at(d)?.join(&other.galois_fixer_at(d)?)?;
        fixed_field(d, &joined)
    }

    /// Order of the group of roots of unity in the field.
    pub fn roots_of_unity_order(&self) -> u64 {
        roots_of_unity_order(self)
    }
}

/// Canonical form of `Q(zeta_d)^T`.
pub fn fixed_field(d: u64, t: &UnitSubgroup) -> Result<FixedField, NumthError> {
    if t.modulus() != d {
        return Err(NumthError::ModulusMismatch(t.modulus(), d));
    }
    for d0 in divisors(d) {
        // ker(U_d -> U_d0) must lie in T
        let kernel_inside = (0..d / d0)
            .map(|k| 1 + k * d0)
            .filter(|&x| gcd(x, d) == 1)
            .all(|x| t.contains(x as i64));
        if kernel_inside {
            return Ok(FixedField {
                conductor: d0,
                fixer: t.restrict(d0)?,
            });
        }
    }
    unreachable!("d itself always qualifies")
}

/// `|mu(F)|`: twice the largest odd `f` with `Q(zeta_f) <= F`, or the
/// largest even such `f`.
pub fn roots_of_unity_order(f: &FixedField) -> u64 {
    let best = divisors(f.conductor)
        .into_iter()
        .filter(|&e| f.fixer.restrict(e).map(|r| r.is_trivial()).unwrap_or(false))
        .max()
        .unwrap_or(1);
    lcm(2, best)
}

/// One simple component `M_{matrix_size}(Q(zeta_conductor) * <w>)` with
/// `w` acting as `zeta -> zeta^x` and `w^{order of x} = zeta^y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentDescriptor {
    pub matrix_size: u64,
    pub conductor: u64,
    pub action: UnitSubgroup,
    pub x: u64,
    pub y: u64,
    pub center: FixedField,
    /// Reduced degree over the center, `[G:L]`.
    pub total_degree: u64,
    pub q_dimension: u64,
}

impl ComponentDescriptor {
    fn sort_key(&self) -> (u64, u64, u64, u64, u64) {
        (self.q_dimension, self.total_degree, self.conductor, self.x, self.y)
    }

    /// Matrix size, modulus, action group, twist and center: an
    /// isomorphism of components follows from equality of these.
    pub fn structural_key(&self) -> (u64, u64, &UnitSubgroup, u64, &FixedField) {
        (self.matrix_size, self.conductor, &self.action, self.y, &self.center)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShodaPair {
    pub l: Subgroup,
    pub k: Subgroup,
}

/// `j` minimal with `<a, b^j>` abelian: the multiplicative order of `t`.
fn abelian_exponent(g: &Group) -> u64 {
    let p = g.presentation();
    if p.m == 1 {
        1
    } else {
        mult_order(p.t as i64, p.m).expect("t is a unit")
    }
}

/// `<a, b^d>`.
pub fn a_b_power(g: &Group, d: u64) -> Subgroup {
    g.subgroup_generated(&[g.a(), g.pow(g.b(), d as i64)])
        .expect("elements of the group")
}

fn quotient_is_cyclic(g: &Group, l: &Subgroup, k: &Subgroup) -> bool {
    let idx = l.order() / k.order();
    for q in prime_factors(idx) {
        let count = l.elements().iter().filter(|&&x| k.contains(g.pow(x, q as i64))).count() as u64;
        if count != q * k.order() {
            return false;
        }
    }
    true
}

/// Strong Shoda pairs giving every simple component exactly once.
pub fn strong_shoda_pairs(g: &Group) -> Result<Vec<ShodaPair>, WedderburnError> {
    let j0 = abelian_exponent(g);
    let all = g.enumerate_subgroups()?;
    let mut out = Vec::new();
    for d in divisors(j0) {
        let l = a_b_power(g, d);
        let dl = g.derived_subgroup(&l);
        let overgroups: Vec<Subgroup> = prime_factors(d)
            .into_iter()
            .map(|q| g.derived_subgroup(&a_b_power(g, d / q)))
            .collect();
        let ks: Vec<Subgroup> = all
            .iter()
            .filter(|k| k.is_subset_of(&l) && dl.is_subset_of(k))
            .filter(|k| overgroups.iter().all(|od| !od.is_subset_of(k)))
            .filter(|k| quotient_is_cyclic(g, &l, k))
            .cloned()
            .collect();
        for class in g.subgroup_conjugacy_classes(&ks) {
            out.push(ShodaPair {
                l: l.clone(),
                k: class[0].clone(),
            });
        }
    }
    Ok(out)
}

/// The integers describing the component attached to a strong Shoda pair.
pub fn component_of(g: &Group, pair: &ShodaPair) -> Result<ComponentDescriptor, WedderburnError> {
    let ShodaPair { l, k } = pair;
    let nk = g.normalizer(k);
    if !l.is_subset_of(&nk) {
        return Err(WedderburnError::NotStrongShoda("L, K", "L does not normalise K"));
    }
    let (h, u) = g
        .cyclic_quotient(l, k)?
        .ok_or(WedderburnError::NotStrongShoda("L, K", "L/K is not cyclic"))?;
    let (nl, w) = g
        .cyclic_quotient(&nk, l)?
        .ok_or(WedderburnError::NotStrongShoda("L, K", "N/L is not cyclic"))?;
    let uw = g.conj(u, w);
    let find_exp = |target: Element| -> Option<u64> {
        let mut ux = g.identity();
        for x in 0..h {
            if k.contains(g.mul(g.inv(ux), target)) {
                return Some(x);
            }
            ux = g.mul(ux, u);
        }
        None
    };
    let x = find_exp(uw).ok_or(WedderburnError::NotStrongShoda("L, K", "conjugate of u leaves L"))?;
    let y = find_exp(g.pow(w, nl as i64)).ok_or(WedderburnError::NotStrongShoda("L, K", "w^[N:L] leaves L"))?;
    let action = if h == 1 {
        UnitSubgroup::trivial(1)?
    } else {
        UnitSubgroup::cyclic(x as i64, h)?
    };
    if action.order() != nl {
        return Err(WedderburnError::NotStrongShoda("L, K", "N/L does not act faithfully on L/K"));
    }
    let center = fixed_field(h, &action)?;
    let total_degree = g.order() / l.order();
    Ok(ComponentDescriptor {
        matrix_size: g.order() / nk.order(),
        conductor: h,
        x: if h == 1 { 1 } else { x },
        y: if h == 1 { 0 } else { y },
        q_dimension: total_degree * total_degree * center.degree(),
        action,
        center,
        total_degree,
    })
}

/// All simple components, sorted by `(q_dimension, total_degree,
/// conductor, x, y)`.
pub fn decomposition(g: &Group) -> Result<Vec<ComponentDescriptor>, WedderburnError> {
    let mut out = Vec::new();
    for pair in strong_shoda_pairs(g)? {
        out.push(component_of(g, &pair)?);
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.center.cmp(&b.center)));
    Ok(out)
}

/// Outcome of the exact verification of a strong Shoda pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentReport {
    pub k_normal_in_l: bool,
    pub l_normal_in_normalizer: bool,
    pub l_over_k_cyclic: bool,
    pub maximal_abelian: bool,
    pub conjugates_orthogonal: bool,
    pub epsilon_idempotent: bool,
    pub e_central: bool,
    pub e_idempotent: bool,
    pub stabilizer_is_core: bool,
}

impl IdempotentReport {
    pub fn all_hold(&self) -> bool {
        self.k_normal_in_l
            && self.l_normal_in_normalizer
            && self.l_over_k_cyclic
            && self.maximal_abelian
            && self.conjugates_orthogonal
            && self.epsilon_idempotent
            && self.e_central
            && self.e_idempotent
            && self.stabilizer_is_core
    }

    /// The three defining conditions of a strong Shoda pair.
    pub fn is_strong_shoda(&self) -> bool {
        self.k_normal_in_l
            && self.l_normal_in_normalizer
            && self.l_over_k_cyclic
            && self.maximal_abelian
            && self.conjugates_orthogonal
    }
}

/// `epsilon(L, K)` in `QG`.
pub fn epsilon(g: &Group, l: &Subgroup, k: &Subgroup) -> Result<GroupAlgebraElement, WedderburnError> {
    let khat = GroupAlgebraElement::hat(g, k);
    if l.order() == k.order() {
        return Ok(khat);
    }
    let (idx, u) = g
        .cyclic_quotient(l, k)?
        .ok_or(WedderburnError::NotStrongShoda("L, K", "L/K is not cyclic"))?;
    let mut eps: Option<GroupAlgebraElement> = None;
    // minimal normal subgroups of a cyclic L/K have prime order
    for q in prime_factors(idx) {
        let mut gens = k.gens().to_vec();
        gens.push(g.pow(u, (idx / q) as i64));
        let d = g.subgroup_generated(&gens)?;
        let factor = khat.sub(&GroupAlgebraElement::hat(g, &d));
        eps = Some(match eps {
            None => factor,
            Some(e) => e.mul(&factor, g),
        });
    }
    Ok(eps.expect("index above 1 has a prime factor"))
}

/// The structural conditions of a strong Shoda pair, without idempotents.
pub fn shoda_conditions(g: &Group, l: &Subgroup, k: &Subgroup) -> (bool, bool, bool, bool) {
    let nk = g.normalizer(k);
    let k_normal_in_l = g.is_normal_in(k, l);
    let l_normal_in_normalizer = g.is_normal_in(l, &nk);
    let l_over_k_cyclic = k_normal_in_l && quotient_is_cyclic(g, l, k);
    let abelian = l.gens().iter().all(|&x| l.gens().iter().all(|&y| k.contains(g.comm(x, y))));
    let maximal = nk
        .elements()
        .iter()
        .filter(|&&x| !l.contains(x))
        .all(|&x| l.gens().iter().any(|&y| !k.contains(g.comm(x, y))));
    (k_normal_in_l, l_normal_in_normalizer, l_over_k_cyclic, abelian && maximal)
}

/// Exact check of the strong Shoda conditions and of the idempotents
/// `epsilon(L, K)` and `e(G, L, K)`.
pub fn idempotent_check(g: &Group, l: &Subgroup, k: &Subgroup) -> Result<IdempotentReport, WedderburnError> {
    if g.order() > IDEMPOTENT_CHECK_BOUND {
        return Err(GroupError::TooLarge {
            order: g.order(),
            bound: IDEMPOTENT_CHECK_BOUND,
        }
        .into());
    }
    let (k_normal_in_l, l_normal_in_normalizer, l_over_k_cyclic, maximal_abelian) = shoda_conditions(g, l, k);
    if !(k_normal_in_l && l_over_k_cyclic) {
        return Ok(IdempotentReport {
            k_normal_in_l,
            l_normal_in_normalizer,
            l_over_k_cyclic,
            maximal_abelian,
            conjugates_orthogonal: false,
            epsilon_idempotent: false,
            e_central: false,
            e_idempotent: false,
            stabilizer_is_core: false,
        });
    }
    let eps = epsilon(g, l, k)?;
    let epsilon_idempotent = eps.mul(&eps, g) == eps;
    let mut conjugates: Vec<GroupAlgebraElement> = Vec::new();
    for x in g.elements() {
        let c = eps.conj(x, g);
        if !conjugates.contains(&c) {
            conjugates.push(c);
        }
    }
    let zero = GroupAlgebraElement::zero(g);
    let conjugates_orthogonal = conjugates[1..].iter().all(|c| c.mul(&eps, g) == zero);
    let mut e = zero.clone();
    for c in &conjugates {
        e = e.add(c);
    }
    let e_idempotent = e.mul(&e, g) == e;
    let e_central = e.conj(g.a(), g) == e && e.conj(g.b(), g) == e;
    let core = g.core(k);
    let stabilizer_is_core = g.elements().all(|x| {
        let xe = GroupAlgebraElement::basis(g, x).mul(&e, g);
        (xe == e) == core.contains(x)
    });
    Ok(IdempotentReport {
        k_normal_in_l,
        l_normal_in_normalizer,
        l_over_k_cyclic,
        maximal_abelian,
        conjugates_orthogonal,
        epsilon_idempotent,
        e_central,
        e_idempotent,
        stabilizer_is_core,
    })
}

/// Commutative part of `QG` read off `G/G'`: `Q(zeta_d)` appears
/// `#{elements of order d in G/G'} / phi(d)` times.
pub fn abelianization_fields(g: &Group) -> Result<BTreeMap<FixedField, u64>, WedderburnError> {
    let derived = g.derived_subgroup(&g.whole());
    let quotient_order = g.order() / derived.order();
    let mut by_order: BTreeMap<u64, u64> = BTreeMap::new();
    for x in g.elements() {
        *by_order.entry(g.coset_order(x, &derived, quotient_order)).or_default() += 1;
    }
    let mut out = BTreeMap::new();
    for (d, count) in by_order {
        let cosets = count / derived.order();
        *out.entry(FixedField::cyclotomic(d)?).or_default() += cosets / euler_phi(d);
    }
    Ok(out)
}

/// Invariant factors `d_1 | d_2` of `G/G'`, from the Smith form of the
/// relations `m e_1`, `n e_2 - s e_1`, `(t - 1) e_1`. Trivial factors are
/// dropped.
pub fn abelianization_invariants(g: &Group) -> Vec<u64> {
    let p = g.presentation();
    let tm1 = if p.m == 1 { 0 } else { (p.t + p.m - 1) % p.m };
    let d1 = gcd(gcd(p.m, p.s), gcd(p.n, tm1));
    let d2 = p.n * gcd(p.m, tm1) / d1;
    [d1, d2].into_iter().filter(|&d| d > 1).collect()
}

/// `QA = sum_d (count_d) Q(zeta_d)` for the abelian group `A` with the given
/// cyclic factors: `count_d` is the number of elements of order `d` over
/// `phi(d)`.
pub fn perlis_walker(cyclic_orders: &[u64]) -> BTreeMap<u64, u64> {
    let exponent = cyclic_orders.iter().fold(1, |e, &x| lcm(e, x));
    // elements with x^d = 1, then Moebius inversion over divisors
    let dividing = |d: u64| cyclic_orders.iter().map(|&x| gcd(x, d)).product::<u64>();
    let mut exact: BTreeMap<u64, u64> = BTreeMap::new();
    for d in divisors(exponent) {
        let below: u64 = divisors(d).into_iter().filter(|&e| e != d).map(|e| exact[&e]).sum();
        exact.insert(d, dividing(d) - below);
    }
    exact.into_iter().map(|(d, c)| (d, c / euler_phi(d))).collect()
}

/// Sorted `(total_degree, center)` pairs; equal algebras have equal
/// fingerprints.
pub fn fingerprint(components: &[ComponentDescriptor]) -> Vec<(u64, FixedField)> {
    let mut out: Vec<(u64, FixedField)> = components.iter().map(|c| (c.total_degree, c.center.clone())).collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraComparison {
    Different,
    Equal,
    Unknown,
}

impl fmt::Display for AlgebraComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Different => "DIFFERENT",
            Self::Equal => "EQUAL",
            Self::Unknown => "UNKNOWN",
        })
    }
}

/// Sound three-way comparison of two rational group algebras.
pub fn compare_algebras(a: &[ComponentDescriptor], b: &[ComponentDescriptor]) -> AlgebraComparison {
    if fingerprint(a) != fingerprint(b) {
        return AlgebraComparison::Different;
    }
    let keys = |x: &[ComponentDescriptor]| {
        let mut v: Vec<(u64, u64, UnitSubgroup, u64, FixedField)> = x
            .iter()
            .map(|c| (c.matrix_size, c.conductor, c.action.clone(), c.y, c.center.clone()))
            .collect();
        v.sort();
        v
    };
    if keys(a) == keys(b) {
        AlgebraComparison::Equal
    } else {
        AlgebraComparison::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use proptest::prelude::*;

    #[test]
    fn fixed_field_examples() {
        let f = fixed_field(4, &UnitSubgroup::cyclic(3, 4).unwrap()).unwrap();
        assert_eq!(f, FixedField::rationals());
        let f = fixed_field(12, &UnitSubgroup::cyclic(7, 12).unwrap()).unwrap();
        assert_eq!(f.conductor, 3);
        assert!(f.fixer.is_trivial());
        assert_eq!(FixedField::cyclotomic(6).unwrap(), FixedField::cyclotomic(3).unwrap());
        assert!(fixed_field(5, &UnitSubgroup::cyclic(3, 4).unwrap()).is_err());
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(roots_of_unity_order(&FixedField::rationals()), 2);
        assert_eq!(roots_of_unity_order(&FixedField::cyclotomic(3).unwrap()), 6);
        let f = fixed_field(8, &UnitSubgroup::cyclic(3, 8).unwrap()).unwrap();
        assert_eq!(roots_of_unity_order(&f), 2);
        assert_eq!(roots_of_unity_order(&FixedField::cyclotomic(8).unwrap()), 8);
    }

    /// `zeta_e` lies in `F` iff the Galois group of `Q(zeta_D)` over `F`
    /// fixes it, with `D = lcm(conductor, e)`.
    fn torsion_by_search(f: &FixedField) -> u64 {
        let mut best = 1;
        for e in divisors(2 * f.conductor) {
            let d = lcm(f.conductor, e);
            let gal = f.galois_fixer_at(d).unwrap();
            if gal.elements().iter().all(|&x| x % e == 1 % e) {
                best = lcm(best, e);
            }
        }
        best
    }

    #[test]
    fn torsion_matches_search_on_all_subfields() {
        for d in 1..=64 {
            for t in crate::numth::cyclic_unit_subgroups(d).unwrap() {
                let f = fixed_field(d, &t).unwrap();
                assert_eq!(roots_of_unity_order(&f), torsion_by_search(&f), "{f:?}");
            }
        }
    }

    #[test]
    fn conductor_is_minimal_and_unique() {
        for d in 1..=60 {
            for t in crate::numth::cyclic_unit_subgroups(d).unwrap() {
                let f = fixed_field(d, &t).unwrap();
                assert_eq!(d % f.conductor, 0);
                assert_eq!(f.degree() * t.order(), euler_phi(d));
                for e in divisors(d) {
                    let kernel_inside = (0..d / e).map(|k| 1 + k * e).filter(|&x| gcd(x, d) == 1).all(|x| t.contains(x as i64));
                    if kernel_inside {
                        assert_eq!(e % f.conductor, 0, "d={d} {t:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn quaternion_and_dihedral_components() {
        let q8 = make_group(4, 2, 2, 3).unwrap();
        let d8 = make_group(4, 2, 0, 3).unwrap();
        let cq = decomposition(&q8).unwrap();
        let cd = decomposition(&d8).unwrap();
        assert_eq!(cq.len(), 5);
        let big = cq.last().unwrap();
        assert_eq!((big.conductor, big.x, big.y, big.total_degree, big.matrix_size), (4, 3, 2, 2, 1));
        assert_eq!(big.center, FixedField::rationals());
        let big = cd.last().unwrap();
        assert_eq!((big.conductor, big.x, big.y, big.total_degree), (4, 3, 0, 2));
        assert_eq!(compare_algebras(&cq, &cd), AlgebraComparison::Unknown);
        assert_eq!(compare_algebras(&cq, &cq), AlgebraComparison::Equal);
    }

    #[test]
    fn symmetric_group_dimensions() {
        let s3 = make_group(3, 2, 0, 2).unwrap();
        let dims: Vec<u64> = decomposition(&s3).unwrap().iter().map(|c| c.q_dimension).collect();
        assert_eq!(dims, [1, 1, 4]);
    }

    #[test]
    fn order_27_example() {
        let g = make_group(9, 3, 0, 4).unwrap();
        let c = decomposition(&g).unwrap();
        let q3 = FixedField::cyclotomic(3).unwrap();
        assert_eq!(c.iter().filter(|x| x.center == FixedField::rationals() && x.total_degree == 1).count(), 1);
        assert_eq!(c.iter().filter(|x| x.center == q3 && x.total_degree == 1).count(), 4);
        assert_eq!(c.iter().filter(|x| x.center == q3 && x.total_degree == 3).count(), 1);
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn cyclic_and_abelian_groups() {
        let c6 = make_group(6, 1, 0, 1).unwrap();
        let comps = decomposition(&c6).unwrap();
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.total_degree == 1));
        let c4c2 = make_group(4, 2, 0, 1).unwrap();
        let d = decomposition(&c4c2).unwrap();
        assert_eq!(d.iter().map(|c| c.q_dimension).sum::<u64>(), 8);
        let fields: BTreeMap<FixedField, u64> = d.iter().fold(BTreeMap::new(), |mut acc, c| {
            *acc.entry(c.center.clone()).or_default() += 1;
            acc
        });
        assert_eq!(fields, abelianization_fields(&c4c2).unwrap());
    }

    #[test]
    fn commutative_part_from_cyclic_factors() {
        let c6: Vec<(u64, u64)> = perlis_walker(&[6]).into_iter().collect();
        assert_eq!(c6, [(1, 1), (2, 1), (3, 1), (6, 1)]);
        let c3c3: Vec<(u64, u64)> = perlis_walker(&[3, 3]).into_iter().collect();
        assert_eq!(c3c3, [(1, 1), (3, 4)]);
        let c1: Vec<(u64, u64)> = perlis_walker(&[]).into_iter().collect();
        assert_eq!(c1, [(1, 1)]);
    }

    #[test]
    fn abelianization_invariants_agree_with_cosets() {
        for t in crate::invariants::valid_tuples(64) {
            let g = crate::invariants::construct_group(&t).unwrap();
            let inv = abelianization_invariants(&g);
            // Q(zeta_1) = Q(zeta_2), so counts merge
            let mut from_cosets: BTreeMap<FixedField, u64> = BTreeMap::new();
            for (d, c) in perlis_walker(&inv) {
                *from_cosets.entry(FixedField::cyclotomic(d).unwrap()).or_default() += c;
            }
            assert_eq!(from_cosets, abelianization_fields(&g).unwrap(), "{t}");
            let derived = g.derived_subgroup(&g.whole());
            assert_eq!(inv.iter().product::<u64>(), g.order() / derived.order(), "{t}");
        }
    }

    #[test]
    fn idempotents_for_small_groups() {
        for (m, n, s, t) in [(4, 2, 2, 3), (4, 2, 0, 3), (3, 2, 0, 2), (9, 3, 0, 4), (7, 3, 0, 2), (12, 2, 6, 5)] {
            let g = make_group(m, n, s, t).unwrap();
            let mut total = GroupAlgebraElement::zero(&g);
            for pair in strong_shoda_pairs(&g).unwrap() {
                let rep = idempotent_check(&g, &pair.l, &pair.k).unwrap();
                assert!(rep.all_hold(), "{:?} {:?}", g, rep);
                let eps = epsilon(&g, &pair.l, &pair.k).unwrap();
                let mut seen: Vec<GroupAlgebraElement> = Vec::new();
                for x in g.elements() {
                    let c = eps.conj(x, &g);
                    if !seen.contains(&c) {
                        total = total.add(&c);
                        seen.push(c);
                    }
                }
            }
            assert_eq!(total, GroupAlgebraElement::one(&g), "{g:?}");
        }
    }

    #[test]
    fn non_shoda_pair_is_reported() {
        let s3 = make_group(3, 2, 0, 2).unwrap();
        let whole = s3.whole();
        let rep = idempotent_check(&s3, &whole, &s3.trivial_subgroup()).unwrap();
        assert!(!rep.is_strong_shoda());
    }

    proptest! {
        #[test]
        fn intersection_is_contained_in_both(d1 in 1u64..40, d2 in 1u64..40, i in 0usize..50, j in 0usize..50) {
            let l1 = crate::numth::cyclic_unit_subgroups(d1).unwrap();
            let l2 = crate::numth::cyclic_unit_subgroups(d2).unwrap();
            let f1 = fixed_field(d1, &l1[i % l1.len()]).unwrap();
            let f2 = fixed_field(d2, &l2[j % l2.len()]).unwrap();
            let meet = f1.intersection(&f2).unwrap();
            prop_assert!(meet.is_subfield_of(&f1));
            prop_assert!(meet.is_subfield_of(&f2));
            prop_assert!(f1.is_subfield_of(&f1));
            prop_assert_eq!(f1.is_subfield_of(&f2) && f2.is_subfield_of(&f1), f1 == f2);
        }
    }
}
