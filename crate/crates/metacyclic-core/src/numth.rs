//! Elementary number theory: valuations, multiplicative orders, geometric
//! sums and subgroups of the unit groups `U_d = (Z/dZ)^*`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumthError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{x} is not a unit modulo {modulus}")]
    NotCoprime { x: i64, modulus: u64 },
    #[error("{divisor} does not divide {modulus}")]
    NotDivisor { divisor: u64, modulus: u64 },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("subgroups live in different unit groups ({0} vs {1})")]
    ModulusMismatch(u64, u64),
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// p-adic valuation. `vp(0, p)` is reported as `u32::MAX`.
pub fn vp(n: u64, p: u64) -> u32 {
    assert!(p >= 2, "valuation base must be at least 2");
    if n == 0 {
        return u32::MAX;
    }
    let mut n = n;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// The largest divisor of `n` whose prime divisors all lie in `primes`.
pub fn part(n: u64, primes: &[u64]) -> u64 {
    primes
        .iter()
        .filter(|&&p| p >= 2)
        .fold(1, |acc, &p| acc * p.pow(vp(n, p)))
}

/// The largest divisor of `n` coprime to every prime in `primes`.
pub fn part_excluding(n: u64, primes: &[u64]) -> u64 {
    n / part(n, primes)
}

/// Canonical representative of `x` modulo `d`. Residues modulo 1 are all
/// written as 1 so that the trivial unit group reads `{1}`.
pub fn residue(x: i64, d: u64) -> u64 {
    if d == 1 {
        1
    } else {
        x.rem_euclid(d as i64) as u64
    }
}

pub fn mod_mul(a: u64, b: u64, d: u64) -> u64 {
    ((a as u128 * b as u128) % d as u128) as u64
}

pub fn mod_pow(base: u64, mut e: u64, d: u64) -> u64 {
    if d == 1 {
        return 0;
    }
    let mut b = base % d;
    let mut acc = 1 % d;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, d);
        }
        b = mod_mul(b, b, d);
        e >>= 1;
    }
    acc
}

/// Inverse of `x` modulo `d`.
pub fn mod_inv(x: i64, d: u64) -> Result<u64, NumthError> {
    if d == 0 {
        return Err(NumthError::ZeroModulus);
    }
    if d == 1 {
        return Ok(0);
    }
    let a = x.rem_euclid(d as i64) as i128;
    let (mut r0, mut r1) = (d as i128, a);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(NumthError::NotCoprime { x, modulus: d });
    }
    Ok(s0.rem_euclid(d as i128) as u64)
}

/// Multiplicative order of `x` modulo `n`.
pub fn mult_order(x: i64, n: u64) -> Result<u64, NumthError> {
    if n == 0 {
        return Err(NumthError::ZeroModulus);
    }
    if n == 1 {
        return Ok(1);
    }
    let r = x.rem_euclid(n as i64) as u64;
    if gcd(r, n) != 1 {
        return Err(NumthError::NotCoprime { x, modulus: n });
    }
    // The order divides phi(n); strip prime factors while the power stays 1.
    let mut ord = euler_phi(n);
    for p in prime_factors(ord) {
        while ord.is_multiple_of(p) && mod_pow(r, ord / p, n) == 1 {
            ord /= p;
        }
    }
    Ok(ord)
}

/// `1 + x + ... + x^(n-1)` as an exact integer.
pub fn ese(x: i64, n: u64) -> BigInt {
    if x == 1 {
        return BigInt::from(n);
    }
    let xb = BigInt::from(x);
    let mut pow = BigInt::one();
    for _ in 0..n {
        pow *= &xb;
    }
    (pow - BigInt::one()) / (xb - BigInt::one())
}

/// `1 + x + ... + x^(n-1)` reduced modulo `d`, by halving `n`.
pub fn ese_mod(x: u64, n: u64, d: u64) -> u64 {
    if d == 1 {
        return 0;
    }
    // (sum, x^n) for the current n
    fn go(x: u64, n: u64, d: u64) -> (u64, u64) {
        if n == 0 {
            return (0, 1 % d);
        }
        let (s, p) = go(x, n / 2, d);
        let mut s2 = (s + mod_mul(s, p, d)) % d;
        let mut p2 = mod_mul(p, p, d);
        if n % 2 == 1 {
            s2 = (s2 + p2) % d;
            p2 = mod_mul(p2, x % d, d);
        }
        (s2, p2)
    }
    go(x, n, d).0
}

/// p-adic valuation of a big integer; `None` for zero.
pub fn vp_big(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    Some(v)
}

/// Closed forms for `v_p(R^m - 1)`, `v_p(1 + R + ... + R^(m-1))` and the
/// order of `R` modulo `p^m`, valid whenever `p` divides `R - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftingExponent {
    pub v_power_minus_one: u32,
    pub v_geometric_sum: u32,
    pub order_mod_prime_power: u64,
}

pub fn lifting_exponent(r: u64, m: u32, p: u64) -> Result<LiftingExponent, NumthError> {
    if r <= 1 {
        return Err(NumthError::Precondition("base must exceed 1"));
    }
    if !is_prime(p) {
        return Err(NumthError::Precondition("p must be prime"));
    }
    if m == 0 {
        return Err(NumthError::Precondition("exponent must be positive"));
    }
    let v_rm1 = vp(r - 1, p);
    if v_rm1 == 0 {
        return Err(NumthError::Precondition("p must divide R - 1"));
    }
    let v_m = vp(u64::from(m), p);
    let generic = p != 2 || v_rm1 >= 2;
    let v_rp1 = vp(r + 1, p);
    let (v_power_minus_one, v_geometric_sum) = if generic {
        (v_rm1 + v_m, v_m)
    } else if m.is_multiple_of(2) {
        (v_rp1 + v_m, v_rp1 + v_m - 1)
    } else {
        (1, 0)
    };
    let order_mod_prime_power = if generic {
        p.pow(m.saturating_sub(v_rm1))
    } else if m <= 1 {
        1
    } else {
        2u64.pow(core::cmp::max(1, m.saturating_sub(v_rp1)))
    };
    Ok(LiftingExponent {
        v_power_minus_one,
        v_geometric_sum,
        order_mod_prime_power,
    })
}

/// A subgroup of `U_d`, stored as its sorted residues. `U_1` is `{1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitSubgroup {
    modulus: u64,
    elements: Vec<u64>,
    generator: Option<u64>,
}

impl PartialOrd for UnitSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UnitSubgroup {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.modulus, &self.elements).cmp(&(other.modulus, &other.elements))
    }
}

impl fmt::Debug for UnitSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generator {
            Some(g) => write!(f, "<{}>_{}", g, self.modulus),
            None => write!(f, "{:?}_{}", self.elements, self.modulus),
        }
    }
}

impl UnitSubgroup {
    pub fn trivial(d: u64) -> Result<Self, NumthError> {
        if d == 0 {
            return Err(NumthError::ZeroModulus);
        }
        let one = residue(1, d);
        Ok(Self {
            modulus: d,
            elements: vec![one],
            generator: Some(one),
        })
    }

    /// The whole unit group `U_d`.
    pub fn full(d: u64) -> Result<Self, NumthError> {
        if d == 0 {
            return Err(NumthError::ZeroModulus);
        }
        if d == 1 {
            return Self::trivial(1);
        }
        let elements = (1..d).filter(|&x| gcd(x, d) == 1).collect();
        Ok(Self::from_sorted(d, elements))
    }

    /// `<t>` inside `U_d`.
    pub fn cyclic(t: i64, d: u64) -> Result<Self, NumthError> {
        Self::generated(&[t], d)
    }

    /// Subgroup of `U_d` generated by `gens`.
    pub fn generated(gens: &[i64], d: u64) -> Result<Self, NumthError> {
        if d == 0 {
            return Err(NumthError::ZeroModulus);
        }
        if d == 1 {
            return Self::trivial(1);
        }
        let mut gs = Vec::with_capacity(gens.len());
        for &g in gens {
            let r = residue(g, d);
            if gcd(r, d) != 1 {
                return Err(NumthError::NotCoprime { x: g, modulus: d });
            }
            gs.push(r);
        }
        let mut seen = vec![false; d as usize];
        seen[1] = true;
        let mut stack = vec![1u64];
        let mut elements = vec![1u64];
        while let Some(x) = stack.pop() {
            for &g in &gs {
                let y = mod_mul(x, g, d);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    elements.push(y);
                    stack.push(y);
                }
            }
        }
        elements.sort_unstable();
        Ok(Self::from_sorted(d, elements))
    }

    fn from_sorted(d: u64, elements: Vec<u64>) -> Self {
        let order = elements.len() as u64;
        let generator = elements
            .iter()
            .copied()
            .find(|&x| mult_order(x as i64, d) == Ok(order));
        Self {
            modulus: d,
            elements,
            generator,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Smallest generating residue when the subgroup is cyclic.
    pub fn generator(&self) -> Option<u64> {
        self.generator
    }

    /// The single generator when cyclic, otherwise smallest residues
    /// taken greedily until they generate.
    pub fn generators(&self) -> Vec<u64> {
        if let Some(g) = self.generator {
            return vec![g];
        }
        let mut gens: Vec<u64> = Vec::new();
        let mut span = Self::trivial(self.modulus).expect("nonzero modulus");
        for &x in &self.elements {
            if !span.contains(x as i64) {
                gens.push(x);
                let as_i64: Vec<i64> = gens.iter().map(|&g| g as i64).collect();
                span = Self::generated(&as_i64, self.modulus).expect("units");
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_cyclic(&self) -> bool {
        self.generator.is_some()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&residue(x, self.modulus)).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.elements.iter().all(|&x| other.contains(x as i64))
    }

    /// Image under reduction `U_d -> U_q` for `q | d`.
    pub fn restrict(&self, q: u64) -> Result<Self, NumthError> {
        if q == 0 || !self.modulus.is_multiple_of(q) {
            return Err(NumthError::NotDivisor {
                divisor: q,
                modulus: self.modulus,
            });
        }
        let mut elements: Vec<u64> = self.elements.iter().map(|&x| residue(x as i64, q)).collect();
        elements.sort_unstable();
        elements.dedup();
        Ok(Self::from_sorted(q, elements))
    }

    /// Full preimage under reduction `U_big -> U_d`, for `d | big`.
    pub fn preimage(&self, big: u64) -> Result<Self, NumthError> {
        if big == 0 || !big.is_multiple_of(self.modulus) {
            return Err(NumthError::NotDivisor {
                divisor: self.modulus,
                modulus: big,
            });
        }
        if big == 1 {
            return Self::trivial(1);
        }
        let elements = (1..big)
            .filter(|&x| gcd(x, big) == 1 && self.contains(x as i64))
            .collect();
        Ok(Self::from_sorted(big, elements))
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, other: &Self) -> Result<Self, NumthError> {
        if self.modulus != other.modulus {
            return Err(NumthError::ModulusMismatch(self.modulus, other.modulus));
        }
        let gens: Vec<i64> = self
            .elements
            .iter()
            .chain(other.elements.iter())
            .map(|&x| x as i64)
            .collect();
        Self::generated(&gens, self.modulus)
    }

    /// `<-1 + r>` where `-1` is read as the identity when `eps_is_one`.
    pub fn sign_plus(eps_is_one: bool, r: u64, d: u64) -> Result<Self, NumthError> {
        let base = if eps_is_one { 1 } else { -1 };
        Self::cyclic(base + r as i64, d)
    }
}

/// `<t>` inside `U_d`.
pub fn cyclic_subgroup(t: i64, d: u64) -> Result<UnitSubgroup, NumthError> {
    UnitSubgroup::cyclic(t, d)
}

/// Reduction of `s` modulo `q`.
pub fn restrict(s: &UnitSubgroup, q: u64) -> Result<UnitSubgroup, NumthError> {
    s.restrict(q)
}

/// All distinct cyclic subgroups of `U_d`, sorted.
pub fn cyclic_unit_subgroups(d: u64) -> Result<Vec<UnitSubgroup>, NumthError> {
    if d == 0 {
        return Err(NumthError::ZeroModulus);
    }
    if d == 1 {
        return Ok(vec![UnitSubgroup::trivial(1)?]);
    }
    // Scanning upwards, the first unvisited element of a cyclic subgroup is
    // its smallest generator; all its generators are then marked.
    let mut visited = vec![false; d as usize];
    let mut out = Vec::new();
    for x in (1..d).filter(|&x| gcd(x, d) == 1) {
        if visited[x as usize] {
            continue;
        }
        let mut powers = vec![1u64];
        let mut y = x;
        while y != 1 {
            powers.push(y);
            y = mod_mul(y, x, d);
        }
        let order = powers.len() as u64;
        for (i, &p) in powers.iter().enumerate() {
            if gcd(i as u64, order) == 1 {
                visited[p as usize] = true;
            }
        }
        powers.sort_unstable();
        out.push(UnitSubgroup {
            modulus: d,
            elements: powers,
            generator: Some(x),
        });
    }
    out.sort();
    Ok(out)
}

/// The subgroups `<1 + r>_d` and `<-1 + r>_d` for `4 | r | d`, where `d` is a
/// power of two. Every cyclic subgroup of `U_d` appears in this list.
pub fn u2k_cyclic_subgroups(d: u64) -> Result<Vec<UnitSubgroup>, NumthError> {
    if d < 4 || !d.is_power_of_two() {
        return Err(NumthError::Precondition("modulus must be a power of two at least 4"));
    }
    let mut out = Vec::new();
    let mut r = 4;
    while r <= d {
        out.push(UnitSubgroup::cyclic(1 + r as i64, d)?);
        out.push(UnitSubgroup::cyclic(-1 + r as i64, d)?);
        r *= 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn documented_values() {
        assert_eq!(vp(360, 3), 2);
        assert_eq!(part(360, &[2, 3]), 72);
        assert_eq!(mult_order(3, 8), Ok(2));
        assert_eq!(mult_order(4, 9), Ok(3));
        assert_eq!(mult_order(5, 1), Ok(1));
        assert!(mult_order(2, 8).is_err());
        assert_eq!(ese(3, 4), BigInt::from(40));
        assert_eq!(ese(1, 7), BigInt::from(7));
        assert_eq!(ese(-1, 4), BigInt::from(0));
    }

    #[test]
    fn lifting_exponent_examples() {
        let l = lifting_exponent(4, 3, 3).unwrap();
        assert_eq!(l.v_power_minus_one, 2);
        assert_eq!(l.v_geometric_sum, 1);
        assert_eq!(l.order_mod_prime_power, 9);
        let l = lifting_exponent(3, 2, 2).unwrap();
        assert_eq!((l.v_power_minus_one, l.v_geometric_sum, l.order_mod_prime_power), (3, 2, 2));
        assert!(lifting_exponent(1, 2, 2).is_err());
        assert!(lifting_exponent(4, 2, 2).is_err());
    }

    #[test]
    fn lifting_exponent_against_direct_computation() {
        for p in [2u64, 3, 5] {
            for r in 2u64..100 {
                if (r - 1) % p != 0 {
                    continue;
                }
                for m in 1u32..=6 {
                    let l = lifting_exponent(r, m, p).unwrap();
                    let direct = BigInt::from(r).pow(m) - BigInt::one();
                    assert_eq!(Some(l.v_power_minus_one), vp_big(&direct, p), "R={r} m={m} p={p}");
                    assert_eq!(Some(l.v_geometric_sum), vp_big(&ese(r as i64, u64::from(m)), p));
                    assert_eq!(
                        l.order_mod_prime_power,
                        mult_order(r as i64, p.pow(m)).unwrap(),
                        "order R={r} m={m} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn unit_subgroup_examples() {
        let s = cyclic_subgroup(2, 9).unwrap();
        assert_eq!(s.elements(), &[1, 2, 4, 5, 7, 8]);
        assert_eq!(s.generator(), Some(2));
        let m = cyclic_subgroup(-1, 8).unwrap();
        assert_eq!(m.elements(), &[1, 7]);
        let r = restrict(&m, 4).unwrap();
        assert_eq!(r, cyclic_subgroup(3, 4).unwrap());
        assert!(restrict(&m, 3).is_err());
        let t = UnitSubgroup::trivial(1).unwrap();
        assert_eq!(t.elements(), &[1]);
        assert_eq!(restrict(&m, 1).unwrap(), t);
        assert!(!UnitSubgroup::full(8).unwrap().is_cyclic());
        assert!(cyclic_subgroup(2, 8).is_err());
        assert_eq!(UnitSubgroup::full(8).unwrap().generators(), [3, 5]);
        assert_eq!(UnitSubgroup::full(24).unwrap().generators(), [5, 7, 13]);
        assert_eq!(s.generators(), [2]);
        assert_eq!(t.generators(), [1]);
    }

    #[test]
    fn two_power_cyclic_subgroups() {
        assert_eq!(u2k_cyclic_subgroups(8).unwrap().len(), 4);
        assert_eq!(u2k_cyclic_subgroups(16).unwrap().len(), 6);
        for k in 2..=9u32 {
            let d = 1u64 << k;
            let listed = u2k_cyclic_subgroups(d).unwrap();
            let mut dedup = listed.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), listed.len());
            assert_eq!(dedup, cyclic_unit_subgroups(d).unwrap());
        }
    }

    #[test]
    fn preimage_and_join() {
        let s = cyclic_subgroup(2, 3).unwrap();
        let lifted = s.preimage(12).unwrap();
        assert_eq!(lifted.elements(), &[1, 5, 7, 11]);
        assert_eq!(lifted.restrict(3).unwrap(), s);
        let a = cyclic_subgroup(5, 12).unwrap();
        let b = cyclic_subgroup(7, 12).unwrap();
        assert_eq!(a.join(&b).unwrap(), UnitSubgroup::full(12).unwrap());
    }

    proptest! {
        #[test]
        fn cyclic_subgroup_is_closed(d in 2u64..300, t in 1i64..300) {
            prop_assume!(gcd(t as u64, d) == 1);
            let s = cyclic_subgroup(t, d).unwrap();
            prop_assert!(s.contains(1));
            prop_assert_eq!(s.order(), mult_order(t, d).unwrap());
            for &x in s.elements() {
                for &y in s.elements() {
                    prop_assert!(s.contains(mod_mul(x, y, d) as i64));
                }
            }
            prop_assert_eq!(s.generator().map(|g| s == cyclic_subgroup(g as i64, d).unwrap()), Some(true));
        }

        #[test]
        fn restriction_is_a_homomorphic_image(d in 2u64..200, t in 1i64..200) {
            prop_assume!(gcd(t as u64, d) == 1);
            let s = cyclic_subgroup(t, d).unwrap();
            for q in divisors(d) {
                let r = s.restrict(q).unwrap();
                prop_assert_eq!(r.clone(), cyclic_subgroup(t, q).unwrap());
                prop_assert_eq!(s.order() % r.order(), 0);
            }
        }

        #[test]
        fn ese_mod_matches_exact(x in 0u64..50, n in 0u64..30, d in 1u64..500) {
            let exact = ese(x as i64, n) % BigInt::from(d);
            prop_assert_eq!(BigInt::from(ese_mod(x, n, d)), exact);
        }

        #[test]
        fn ese_matches_naive_sum(x in -6i64..7, n in 0u64..20) {
            let mut acc = BigInt::zero();
            let mut pw = BigInt::one();
            for _ in 0..n {
                acc += &pw;
                pw *= BigInt::from(x);
            }
            prop_assert_eq!(ese(x, n), acc);
        }
    }
}
