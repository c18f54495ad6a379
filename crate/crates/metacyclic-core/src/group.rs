//! Metacyclic groups `<a, b | a^m = 1, b^n = a^s, b a b^-1 = a^t>` with
//! elements in normal form `a^i b^j`, and their subgroup lattices.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::numth::{divisors, gcd, mod_mul, mod_pow, prime_factors, vp, ese_mod};

/// Largest group for which the whole subgroup lattice is enumerated.
pub const SUBGROUP_ENUMERATION_BOUND: u64 = 4096;
/// Largest order accepted by the brute-force isomorphism search.
pub const ISOMORPHISM_SEARCH_BOUND: u64 = 96;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("inconsistent presentation (m={m}, n={n}, s={s}, t={t}): {reason}")]
    Inconsistent {
        m: u64,
        n: u64,
        s: u64,
        t: u64,
        reason: &'static str,
    },
    #[error("element or subgroup belongs to a different group")]
    ForeignElement,
    #[error("group of order {order} exceeds the bound {bound}")]
    TooLarge { order: u64, bound: u64 },
    #[error("{0}")]
    Precondition(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presentation {
    pub m: u64,
    pub n: u64,
    pub s: u64,
    pub t: u64,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.m, self.n, self.s, self.t)
    }
}

/// `a^i b^j` with `0 <= i < m`, `0 <= j < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub i: u64,
    pub j: u64,
}

impl Element {
    pub const fn new(i: u64, j: u64) -> Self {
        Self { i, j }
    }
}

/// A subgroup, stored as its sorted elements plus a membership mask.
#[derive(Clone)]
pub struct Subgroup {
    owner: Presentation,
    elements: Vec<Element>,
    mask: Vec<u64>,
    gens: Vec<Element>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.owner == other.owner && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.owner, &self.elements).cmp(&(other.owner, &other.elements))
    }
}

impl core::hash::Hash for Subgroup {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.owner.hash(state);
        self.elements.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens [", self.elements.len())?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "a^{}b^{}", g.i, g.j)?;
        }
        write!(f, "])")
    }
}

impl Subgroup {
    pub fn owner(&self) -> Presentation {
        self.owner
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// A generating set (not necessarily minimal).
    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, e: Element) -> bool {
        let k = (e.i * self.owner.n + e.j) as usize;
        k / 64 < self.mask.len() && self.mask[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.owner == other.owner
            && self.elements.len() <= other.elements.len()
            && self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// A validated presentation together with cached derived data.
pub struct Group {
    pres: Presentation,
    tpow: Vec<u64>,
    subgroups: OnceBox<Vec<Subgroup>>,
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Self {
            pres: self.pres,
            tpow: self.tpow.clone(),
            subgroups: OnceBox::new(),
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group{}", self.pres)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.pres == other.pres
    }
}

impl Eq for Group {}

/// Validates `(m, n, s, t)` and builds the group it presents.
pub fn make_group(m: u64, n: u64, s: u64, t: u64) -> Result<Group, GroupError> {
    Group::new(Presentation { m, n, s, t })
}

impl Group {
    pub fn new(pres: Presentation) -> Result<Self, GroupError> {
        let Presentation { m, n, s, t } = pres;
        let bad = |reason| GroupError::Inconsistent { m, n, s, t, reason };
        if m == 0 || n == 0 {
            return Err(bad("m and n must be positive"));
        }
        if s >= m && !(m == 1 && s <= 1) {
            return Err(bad("s must be reduced modulo m"));
        }
        if t >= m && !(m == 1 && t <= 1) {
            return Err(bad("t must be reduced modulo m"));
        }
        let (s, t) = if m == 1 { (0, 0) } else { (s, t) };
        if m > 1 && gcd(t, m) != 1 {
            return Err(bad("t must be a unit modulo m"));
        }
        if m > 1 && mod_pow(t, n, m) != 1 {
            return Err(bad("t^n must be 1 modulo m"));
        }
        if m > 1 && mod_mul(s, (t + m - 1) % m, m) != 0 {
            return Err(bad("s(t-1) must be 0 modulo m"));
        }
        let mut tpow = Vec::with_capacity(n as usize);
        let mut x = 1 % m;
        for _ in 0..n {
            tpow.push(x);
            x = mod_mul(x, t, m);
        }
        Ok(Self {
            pres: Presentation { m, n, s, t },
            tpow,
            subgroups: OnceBox::new(),
        })
    }

    pub fn presentation(&self) -> Presentation {
        self.pres
    }

    pub fn m(&self) -> u64 {
        self.pres.m
    }

    pub fn n(&self) -> u64 {
        self.pres.n
    }

    pub fn order(&self) -> u64 {
        self.pres.m * self.pres.n
    }

    pub fn identity(&self) -> Element {
        Element::new(0, 0)
    }

    pub fn a(&self) -> Element {
        Element::new(1 % self.pres.m, 0)
    }

    pub fn b(&self) -> Element {
        if self.pres.n == 1 {
            Element::new(self.pres.s % self.pres.m, 0)
        } else {
            Element::new(0, 1)
        }
    }

    /// `a^i b^j` with arbitrary integer exponents, reduced to normal form.
    pub fn elem(&self, i: i64, j: i64) -> Element {
        let a = self.pow(self.a(), i);
        let b = self.pow(self.b(), j);
        self.mul(a, b)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.pres.n;
        (0..self.order()).map(move |k| Element::new(k / n, k % n))
    }

    pub fn index_of(&self, e: Element) -> usize {
        (e.i * self.pres.n + e.j) as usize
    }

    pub fn owns(&self, e: Element) -> bool {
        e.i < self.pres.m && e.j < self.pres.n
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        let Presentation { m, n, s, .. } = self.pres;
        let mut i = (x.i + mod_mul(y.i, self.tpow[x.j as usize], m)) % m;
        let mut j = x.j + y.j;
        if j >= n {
            j -= n;
            i = (i + s) % m;
        }
        Element::new(i, j)
    }

    pub fn checked_mul(&self, x: Element, y: Element) -> Result<Element, GroupError> {
        if !self.owns(x) || !self.owns(y) {
            return Err(GroupError::ForeignElement);
        }
        Ok(self.mul(x, y))
    }

    pub fn inv(&self, x: Element) -> Element {
        let Presentation { m, n, s, .. } = self.pres;
        if x.j == 0 {
            return Element::new((m - x.i) % m, 0);
        }
        // b^-j a^-i = b^(n-j) a^(-s-i)
        let k = n - x.j;
        let e = (2 * m - s - x.i) % m;
        Element::new(mod_mul(e, self.tpow[k as usize], m), k)
    }

    /// `x^k` via the closed form `(a^i b^j)^k = a^(i S(t^j, k)) b^(jk)`.
    pub fn pow(&self, x: Element, k: i64) -> Element {
        if k < 0 {
            return self.pow(self.inv(x), -k);
        }
        let k = k as u64;
        let Presentation { m, n, s, .. } = self.pres;
        let tj = self.tpow[x.j as usize];
        let jk = x.j as u128 * k as u128;
        let wraps = (jk / n as u128 % m as u128) as u64;
        let j = (jk % n as u128) as u64;
        let i = (mod_mul(x.i, ese_mod(tj, k, m), m) + mod_mul(wraps, s, m)) % m;
        Element::new(i, j)
    }

    pub fn element_order(&self, x: Element) -> u64 {
        let Presentation { m, n, .. } = self.pres;
        let jo = n / gcd(x.j, n);
        let y = self.pow(x, jo as i64);
        jo * (m / gcd(y.i, m))
    }

    /// `x^h = h^-1 x h`.
    pub fn conj(&self, x: Element, h: Element) -> Element {
        self.mul(self.mul(self.inv(h), x), h)
    }

    /// `[x, h] = x^-1 x^h`.
    pub fn comm(&self, x: Element, h: Element) -> Element {
        self.mul(self.inv(x), self.conj(x, h))
    }

    /// The `pi`-part of `x`: the power of `x` whose order is the
    /// `pi`-part of the order of `x`.
    pub fn pi_part(&self, x: Element, pi: &[u64]) -> Element {
        let o = self.element_order(x);
        let op = crate::numth::part(o, pi);
        let oq = o / op;
        // exponent e with e = 1 mod op and e = 0 mod oq
        let e = (0..o).find(|&e| e % op == 1 % op && e % oq == 0).unwrap_or(0);
        self.pow(x, e as i64)
    }

    fn mask_of(&self, elements: &[Element]) -> Vec<u64> {
        let mut mask = vec![0u64; (self.order() as usize).div_ceil(64)];
        for &e in elements {
            let k = self.index_of(e);
            mask[k / 64] |= 1 << (k % 64);
        }
        mask
    }

    fn subgroup_from_sorted(&self, elements: Vec<Element>, gens: Vec<Element>) -> Subgroup {
        let mask = self.mask_of(&elements);
        Subgroup {
            owner: self.pres,
            elements,
            mask,
            gens,
        }
    }

    /// Builds a subgroup from a set of elements already known to be closed.
    pub fn subgroup_from_elements(&self, mut elements: Vec<Element>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let gens = self.greedy_generators(&elements);
        self.subgroup_from_sorted(elements, gens)
    }

    fn closure(&self, gens: &[Element]) -> Vec<Element> {
        let mut seen = vec![false; self.order() as usize];
        let id = self.identity();
        seen[self.index_of(id)] = true;
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            k += 1;
            for &g in gens {
                let y = self.mul(x, g);
                let iy = self.index_of(y);
                if !seen[iy] {
                    seen[iy] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn greedy_generators(&self, elements: &[Element]) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut current = self.subgroup_from_sorted(vec![self.identity()], Vec::new());
        for &e in elements {
            if current.elements.len() == elements.len() {
                break;
            }
            if !current.contains(e) {
                gens.push(e);
                current = self.subgroup_from_sorted(self.closure(&gens), Vec::new());
            }
        }
        gens
    }

    pub fn subgroup_generated(&self, gens: &[Element]) -> Result<Subgroup, GroupError> {
        if gens.iter().any(|&g| !self.owns(g)) {
            return Err(GroupError::ForeignElement);
        }
        let elements = self.closure(gens);
        let gens = gens.iter().copied().filter(|&g| g != self.identity()).collect();
        Ok(self.subgroup_from_sorted(elements, gens))
    }

    fn check_owner(&self, h: &Subgroup) -> Result<(), GroupError> {
        if h.owner == self.pres {
            Ok(())
        } else {
            Err(GroupError::ForeignElement)
        }
    }

    pub fn whole(&self) -> Subgroup {
        let elements: Vec<Element> = self.elements().collect();
        self.subgroup_from_sorted(elements, vec![self.a(), self.b()])
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_from_sorted(vec![self.identity()], Vec::new())
    }

    /// Every subgroup, sorted lexicographically by element list. Each
    /// subgroup is `<a^d, a^e b^f>` for a unique triple with `d | m`,
    /// `f | n` and `0 <= e < d`.
    pub fn enumerate_subgroups(&self) -> Result<&[Subgroup], GroupError> {
        if self.order() > SUBGROUP_ENUMERATION_BOUND {
            return Err(GroupError::TooLarge {
                order: self.order(),
                bound: SUBGROUP_ENUMERATION_BOUND,
            });
        }
        Ok(self.subgroups.get_or_init(|| Box::new(self.compute_subgroups())))
    }

    fn compute_subgroups(&self) -> Vec<Subgroup> {
        let Presentation { m, n, .. } = self.pres;
        let mut out = Vec::new();
        for d in divisors(m) {
            let ad = Element::new(d % m, 0);
            for f in divisors(n) {
                let count_b = n / f;
                for e in 0..d {
                    let x = self.mul(Element::new(e % m, 0), self.pow(self.b(), f as i64));
                    // <a^d, x> has the expected shape iff x^(n/f) lies in <a^d>
                    let top = self.pow(x, count_b as i64);
                    if top.j != 0 || !top.i.is_multiple_of(d) {
                        continue;
                    }
                    let mut elements = Vec::with_capacity(((m / d) * count_b) as usize);
                    let mut xl = self.identity();
                    for _ in 0..count_b {
                        for k in 0..m / d {
                            elements.push(self.mul(Element::new(k * d % m, 0), xl));
                        }
                        xl = self.mul(xl, x);
                    }
                    elements.sort_unstable();
                    let mut gens = Vec::new();
                    if d < m {
                        gens.push(ad);
                    }
                    if x != self.identity() && !(f == n && x.i.is_multiple_of(d)) {
                        gens.push(x);
                    }
                    out.push(self.subgroup_from_sorted(elements, gens));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        [self.a(), self.b()]
            .iter()
            .all(|&g| h.gens.iter().all(|&x| h.contains(self.conj(x, g))))
    }

    /// Whether `k` is normal in the subgroup `l`.
    pub fn is_normal_in(&self, k: &Subgroup, l: &Subgroup) -> bool {
        k.is_subset_of(l) && l.gens.iter().all(|&g| k.gens.iter().all(|&x| k.contains(self.conj(x, g))))
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Element) -> Subgroup {
        let elements: Vec<Element> = h.elements.iter().map(|&x| self.conj(x, g)).collect();
        let gens = h.gens.iter().map(|&x| self.conj(x, g)).collect();
        let mut elements = elements;
        elements.sort_unstable();
        self.subgroup_from_sorted(elements, gens)
    }

    /// Elements `g` of `within` with `h^g = h`.
    pub fn normalizer_in(&self, h: &Subgroup, within: &Subgroup) -> Subgroup {
        let elements: Vec<Element> = within
            .elements
            .iter()
            .copied()
            .filter(|&g| h.gens.iter().all(|&x| h.contains(self.conj(x, g))))
            .collect();
        self.subgroup_from_elements(elements)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        self.normalizer_in(h, &self.whole())
    }

    /// The largest normal subgroup contained in `h`.
    pub fn core(&self, h: &Subgroup) -> Subgroup {
        let mut current: Vec<Element> = h.elements.clone();
        loop {
            let set = self.subgroup_from_sorted(current.clone(), Vec::new());
            let next: Vec<Element> = current
                .iter()
                .copied()
                .filter(|&x| set.contains(self.conj(x, self.a())) && set.contains(self.conj(x, self.b())))
                .collect();
            if next.len() == current.len() {
                return self.subgroup_from_elements(next);
            }
            current = next;
        }
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let elements: Vec<Element> = self
            .elements()
            .filter(|&g| h.gens.iter().all(|&x| self.mul(x, g) == self.mul(g, x)))
            .collect();
        self.subgroup_from_elements(elements)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// Derived subgroup of the subgroup `h`.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        for (k, &x) in h.gens.iter().enumerate() {
            for &y in &h.gens[k + 1..] {
                let c = self.comm(x, y);
                if c != self.identity() {
                    gens.push(c);
                }
            }
        }
        // normal closure inside h
        loop {
            let cur = self.subgroup_from_sorted(self.closure(&gens), Vec::new());
            let mut extra = Vec::new();
            for &x in &gens {
                for &g in &h.gens {
                    let c = self.conj(x, g);
                    if !cur.contains(c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return self.subgroup_from_elements(cur.elements);
            }
            gens.extend(extra);
        }
    }

    pub fn intersection(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let elements = h.elements.iter().copied().filter(|&x| k.contains(x)).collect();
        self.subgroup_from_elements(elements)
    }

    /// Subgroup generated by the union of `h` and `k`.
    pub fn join(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut gens = h.gens.clone();
        gens.extend_from_slice(&k.gens);
        let elements = self.closure(&gens);
        self.subgroup_from_sorted(elements, gens)
    }

    /// Set of elements whose order only involves primes in `pi`.
    pub fn pi_elements(&self, within: &Subgroup, pi: &[u64]) -> Vec<Element> {
        within
            .elements
            .iter()
            .copied()
            .filter(|&x| {
                let o = self.element_order(x);
                crate::numth::part(o, pi) == o
            })
            .collect()
    }

    /// The first (in lattice order) Hall `pi`-subgroup of `h`, if any.
    pub fn hall_in(&self, h: &Subgroup, pi: &[u64]) -> Result<Option<Subgroup>, GroupError> {
        let target = crate::numth::part(h.order(), pi);
        // In a nilpotent or otherwise lucky subgroup the pi-elements already
        // form the Hall subgroup.
        let pe = self.pi_elements(h, pi);
        if pe.len() as u64 == target {
            let cand = self.subgroup_from_elements(pe);
            let closed = cand.elements.iter().all(|&x| cand.gens.iter().all(|&g| cand.contains(self.mul(x, g))));
            if closed {
                return Ok(Some(cand));
            }
        }
        Ok(self
            .enumerate_subgroups()?
            .iter()
            .find(|k| k.order() == target && k.is_subset_of(h))
            .cloned())
    }

    pub fn hall(&self, pi: &[u64]) -> Result<Option<Subgroup>, GroupError> {
        self.hall_in(&self.whole(), pi)
    }

    pub fn sylow(&self, p: u64) -> Result<Option<Subgroup>, GroupError> {
        self.hall(&[p])
    }

    /// `([l : k], u)` where `u` is the smallest element of `l` whose coset
    /// generates `l/k`, or `None` when `l/k` is not cyclic.
    pub fn cyclic_quotient(&self, l: &Subgroup, k: &Subgroup) -> Result<Option<(u64, Element)>, GroupError> {
        self.check_owner(l)?;
        self.check_owner(k)?;
        if !self.is_normal_in(k, l) {
            return Err(GroupError::Precondition("quotient by a subgroup that is not normal"));
        }
        let idx = l.order() / k.order();
        for &u in &l.elements {
            if self.coset_order(u, k, idx) == idx {
                return Ok(Some((idx, u)));
            }
        }
        Ok(None)
    }

    /// Order of `u k` in a quotient whose order divides `bound`.
    pub fn coset_order(&self, u: Element, k: &Subgroup, bound: u64) -> u64 {
        let mut o = bound;
        for p in prime_factors(bound) {
            while o.is_multiple_of(p) && k.contains(self.pow(u, (o / p) as i64)) {
                o /= p;
            }
        }
        o
    }

    /// Conjugacy classes of the given subgroups, each class sorted and the
    /// classes ordered by their first member. Only subgroups from `list`
    /// are grouped; conjugates outside `list` are ignored.
    pub fn subgroup_conjugacy_classes(&self, list: &[Subgroup]) -> Vec<Vec<Subgroup>> {
        let mut sorted: Vec<Subgroup> = list.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut used = vec![false; sorted.len()];
        let mut classes = Vec::new();
        for k in 0..sorted.len() {
            if used[k] {
                continue;
            }
            let orbit = self.conjugacy_orbit(&sorted[k]);
            let mut class = Vec::new();
            for (idx, h) in sorted.iter().enumerate() {
                if !used[idx] && orbit.contains(h) {
                    used[idx] = true;
                    class.push(h.clone());
                }
            }
            classes.push(class);
        }
        classes
    }

    /// All conjugates of `h`.
    pub fn conjugacy_orbit(&self, h: &Subgroup) -> BTreeSet<Subgroup> {
        let mut orbit = BTreeSet::new();
        orbit.insert(h.clone());
        let mut stack = vec![h.clone()];
        while let Some(x) = stack.pop() {
            for g in [self.a(), self.b()] {
                let y = self.conjugate_subgroup(&x, g);
                if orbit.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        orbit
    }

    /// Cocyclic subgroups of the abelian p-group `<g> x <h>` with
    /// `|g| >= |h|`, indexed by triples `(i, y, x)`.
    pub fn cocyclic_triples(&self, g: Element, h: Element, p: u64) -> Result<Vec<CocyclicSubgroup>, GroupError> {
        if !self.owns(g) || !self.owns(h) {
            return Err(GroupError::ForeignElement);
        }
        let og = self.element_order(g);
        let oh = self.element_order(h);
        if og < oh || !is_power_of(og, p) || !is_power_of(oh, p) || self.mul(g, h) != self.mul(h, g) {
            return Err(GroupError::Precondition("expected commuting p-elements with |g| >= |h|"));
        }
        let gs = self.subgroup_generated(&[g])?;
        if self.pow(h, 1) != self.identity() && (1..oh).any(|k| gs.contains(self.pow(h, k as i64))) {
            return Err(GroupError::Precondition("<g> and <h> must intersect trivially"));
        }
        let mut out = Vec::new();
        for y in divisors(oh).into_iter().filter(|&y| is_power_of(y, p)) {
            for x in 1..=y {
                let k = self.subgroup_generated(&[self.mul(g, self.pow(h, x as i64)), self.pow(h, y as i64)])?;
                out.push(CocyclicSubgroup { kind: 1, y, x, subgroup: k });
            }
        }
        for y in divisors(og).into_iter().filter(|&y| is_power_of(y, p) && y % p == 0) {
            let mut x = p;
            while x <= y {
                if (oh * x).is_multiple_of(y) {
                    let k = self.subgroup_generated(&[self.mul(self.pow(g, x as i64), h), self.pow(g, y as i64)])?;
                    out.push(CocyclicSubgroup { kind: 2, y, x, subgroup: k });
                }
                x += p;
            }
        }
        Ok(out)
    }

    /// Searches for images of `a` and `b` in `other` that satisfy the
    /// defining relations of `self` and generate `other`.
    pub fn brute_force_isomorphic(&self, other: &Group) -> Result<bool, GroupError> {
        for g in [self, other] {
            if g.order() > ISOMORPHISM_SEARCH_BOUND {
                return Err(GroupError::TooLarge {
                    order: g.order(),
                    bound: ISOMORPHISM_SEARCH_BOUND,
                });
            }
        }
        if self.order() != other.order() {
            return Ok(false);
        }
        let Presentation { m, n, s, t } = self.pres;
        let xs: Vec<Element> = other.elements().filter(|&x| m % other.element_order(x) == 0).collect();
        for &x in &xs {
            let xs_ = other.pow(x, s as i64);
            let xt = other.pow(x, t as i64);
            for y in other.elements() {
                if other.pow(y, n as i64) != xs_ {
                    continue;
                }
                if other.mul(other.mul(y, x), other.inv(y)) != xt {
                    continue;
                }
                if other.subgroup_generated(&[x, y])?.order() == other.order() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// `K_{i,y,x}` together with its triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocyclicSubgroup {
    pub kind: u8,
    pub y: u64,
    pub x: u64,
    pub subgroup: Subgroup,
}

fn is_power_of(x: u64, p: u64) -> bool {
    x == p.pow(vp(x, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q8() -> Group {
        make_group(4, 2, 2, 3).unwrap()
    }

    /// Every consistent presentation of order at most `bound`.
    fn presentations(bound: u64) -> Vec<Presentation> {
        let mut out = Vec::new();
        for m in 1..=bound {
            for n in 1..=bound / m {
                for t in 0..m.max(1) {
                    for s in 0..m.max(1) {
                        if let Ok(g) = make_group(m, n, s, t) {
                            out.push(g.presentation());
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn golden_products() {
        let g = q8();
        assert_eq!(g.mul(Element::new(0, 1), Element::new(1, 0)), Element::new(3, 1));
        assert_eq!(g.pow(Element::new(3, 1), 2), Element::new(2, 0));
        assert_eq!(g.element_order(Element::new(1, 1)), 4);
        let s3 = make_group(3, 2, 0, 2).unwrap();
        assert_eq!(s3.conj(s3.a(), s3.b()), s3.pow(s3.a(), 2));
        assert!(make_group(4, 2, 1, 3).is_err());
        assert!(make_group(4, 2, 2, 2).is_err());
        assert!(make_group(5, 2, 0, 2).is_err());
    }

    #[test]
    fn golden_subgroup_counts() {
        assert_eq!(q8().enumerate_subgroups().unwrap().len(), 6);
        assert_eq!(make_group(6, 1, 0, 1).unwrap().enumerate_subgroups().unwrap().len(), 4);
        let s3 = make_group(3, 2, 0, 2).unwrap();
        assert_eq!(s3.enumerate_subgroups().unwrap().len(), 6);
        let h = s3.hall(&[2]).unwrap().unwrap();
        assert_eq!(h.order(), 2);
        assert!(!s3.is_normal(&h));
        assert_eq!(s3.core(&h).order(), 1);
        assert_eq!(s3.normalizer(&h), h);
        assert_eq!(s3.derived_subgroup(&s3.whole()).order(), 3);
        assert_eq!(q8().center().order(), 2);
        assert_eq!(q8().derived_subgroup(&q8().whole()).order(), 2);
    }

    #[test]
    fn inverse_and_associativity_exhaustive() {
        for pres in presentations(24) {
            let g = Group::new(pres).unwrap();
            let els: Vec<Element> = g.elements().collect();
            for &x in &els {
                assert_eq!(g.mul(x, g.inv(x)), g.identity(), "{pres}");
                let mut acc = g.identity();
                for k in 0..=g.order() as i64 {
                    assert_eq!(g.pow(x, k), acc, "{pres} {x:?}^{k}");
                    acc = g.mul(acc, x);
                }
                assert_eq!(g.pow(x, g.element_order(x) as i64), g.identity());
                for &y in &els {
                    for &z in &els {
                        assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                    }
                }
            }
        }
    }

    /// Subgroups found by closing every pair of elements.
    fn naive_subgroups(g: &Group) -> Vec<Vec<Element>> {
        let els: Vec<Element> = g.elements().collect();
        let mut out: BTreeSet<Vec<Element>> = BTreeSet::new();
        for &x in &els {
            for &y in &els {
                out.insert(g.subgroup_generated(&[x, y]).unwrap().elements().to_vec());
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn enumeration_matches_naive_closure() {
        for pres in presentations(24) {
            let g = Group::new(pres).unwrap();
            let fast: Vec<Vec<Element>> = g.enumerate_subgroups().unwrap().iter().map(|h| h.elements().to_vec()).collect();
            assert_eq!(fast, naive_subgroups(&g), "{pres}");
        }
    }

    #[test]
    fn stored_generators_generate() {
        for pres in presentations(32) {
            let g = Group::new(pres).unwrap();
            for h in g.enumerate_subgroups().unwrap() {
                assert_eq!(g.subgroup_generated(h.gens()).unwrap(), *h);
            }
        }
    }

    #[test]
    fn cocyclic_examples() {
        let c = make_group(4, 2, 0, 1).unwrap();
        let list = c.cocyclic_triples(c.a(), c.b(), 2).unwrap();
        assert_eq!(list.len(), 6);
        for k in &list {
            assert_eq!(c.whole().order() / k.subgroup.order(), k.y);
            assert!(c.cyclic_quotient(&c.whole(), &k.subgroup).unwrap().is_some());
        }
    }

    #[test]
    fn cocyclic_triples_match_brute_force() {
        // C_{p^a} x C_{p^b} for small exponents
        for p in [2u64, 3] {
            for ea in 1..=4u32 {
                for eb in 0..=ea {
                    let (m, n) = (p.pow(ea), p.pow(eb));
                    if m * n > 256 {
                        continue;
                    }
                    let g = make_group(m, n, 0, 1).unwrap();
                    let list = g.cocyclic_triples(g.a(), g.b(), p).unwrap();
                    let whole = g.whole();
                    let mut expected: Vec<Subgroup> = g
                        .enumerate_subgroups()
                        .unwrap()
                        .iter()
                        .filter(|k| g.cyclic_quotient(&whole, k).unwrap().is_some())
                        .cloned()
                        .collect();
                    expected.sort();
                    let mut got: Vec<Subgroup> = list.iter().map(|k| k.subgroup.clone()).collect();
                    got.sort();
                    assert_eq!(got.len(), list.len());
                    got.dedup();
                    assert_eq!(got, expected, "p={p} m={m} n={n}");
                    for k in &list {
                        let gy = g.subgroup_generated(&[g.a()]).unwrap();
                        let hy = g.subgroup_generated(&[g.b()]).unwrap();
                        let xp = p.pow(vp(k.x, p));
                        let (gi, hi) = if k.kind == 1 {
                            (g.subgroup_generated(&[g.pow(g.a(), (k.y / xp.min(k.y)) as i64)]).unwrap(),
                             g.subgroup_generated(&[g.pow(g.b(), k.y as i64)]).unwrap())
                        } else {
                            (g.subgroup_generated(&[g.pow(g.a(), k.y as i64)]).unwrap(),
                             g.subgroup_generated(&[g.pow(g.b(), (k.y / xp.min(k.y)) as i64)]).unwrap())
                        };
                        assert_eq!(k.subgroup.order() * k.y, whole.order());
                        assert_eq!(g.intersection(&gy, &k.subgroup), gi, "{:?}", (k.kind, k.y, k.x));
                        assert_eq!(g.intersection(&hy, &k.subgroup), hi, "{:?}", (k.kind, k.y, k.x));
                    }
                }
            }
        }
    }

    #[test]
    fn brute_force_isomorphism_examples() {
        let q8 = q8();
        let d8 = make_group(4, 2, 0, 3).unwrap();
        assert!(!q8.brute_force_isomorphic(&d8).unwrap());
        assert!(q8.brute_force_isomorphic(&make_group(4, 2, 2, 3).unwrap()).unwrap());
        // C_6 presented two ways
        assert!(make_group(6, 1, 0, 1).unwrap().brute_force_isomorphic(&make_group(3, 2, 0, 1).unwrap()).unwrap());
        // D_8 as <a, b | a^2, b^4 = 1, a^b = a> is abelian, so not D_8
        assert!(!d8.brute_force_isomorphic(&make_group(2, 4, 0, 1).unwrap()).unwrap());
    }

    #[test]
    fn quotient_and_normality() {
        let g = q8();
        let whole = g.whole();
        let a = g.subgroup_generated(&[g.a()]).unwrap();
        assert_eq!(g.cyclic_quotient(&whole, &a).unwrap(), Some((2, Element::new(0, 1))));
        assert_eq!(g.cyclic_quotient(&a, &g.trivial_subgroup()).unwrap(), Some((4, Element::new(1, 0))));
        let z = g.center();
        assert_eq!(g.cyclic_quotient(&whole, &z).unwrap(), None);
        let d8 = make_group(4, 2, 0, 3).unwrap();
        let refl = d8.subgroup_generated(&[d8.b()]).unwrap();
        assert!(d8.cyclic_quotient(&d8.whole(), &refl).is_err());
        assert_eq!(d8.subgroup_conjugacy_classes(d8.enumerate_subgroups().unwrap()).len(), 8);
    }

    proptest! {
        #[test]
        fn conjugation_is_an_action(idx in 0usize..400, x in 0u64..10_000, y in 0u64..10_000, z in 0u64..10_000) {
            let all = presentations(48);
            let g = Group::new(all[idx % all.len()]).unwrap();
            let els: Vec<Element> = g.elements().collect();
            let (x, y, z) = (els[x as usize % els.len()], els[y as usize % els.len()], els[z as usize % els.len()]);
            prop_assert_eq!(g.conj(g.conj(x, y), z), g.conj(x, g.mul(y, z)));
            prop_assert_eq!(g.conj(g.mul(x, y), z), g.mul(g.conj(x, z), g.conj(y, z)));
            prop_assert_eq!(g.mul(x, g.comm(x, y)), g.conj(x, y));
        }
    }
}
