//! Exact arithmetic in the rational group algebra `QG`.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::{Element, Group, Subgroup};

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `sum_g (coeffs[g] / den) g`, indexed by the group's element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    coeffs: Vec<i128>,
    den: i128,
}

impl GroupAlgebraElement {
    pub fn zero(g: &Group) -> Self {
        Self {
            coeffs: vec![0; g.order() as usize],
            den: 1,
        }
    }

    pub fn one(g: &Group) -> Self {
        let mut x = Self::zero(g);
        x.coeffs[g.index_of(g.identity())] = 1;
        x
    }

    pub fn basis(g: &Group, e: Element) -> Self {
        let mut x = Self::zero(g);
        x.coeffs[g.index_of(e)] = 1;
        x
    }

    /// `hat(H) = |H|^-1 sum_{h in H} h`.
    pub fn hat(g: &Group, h: &Subgroup) -> Self {
        let mut x = Self::zero(g);
        for &e in h.elements() {
            x.coeffs[g.index_of(e)] = 1;
        }
        x.den = h.order() as i128;
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coefficient of the element with index `idx`, as `(num, den)` in
    /// lowest terms.
    pub fn coefficient(&self, idx: usize) -> (i128, i128) {
        let c = self.coeffs[idx];
        let d = gcd_i128(c, self.den).max(1);
        (c / d, self.den / d)
    }

    fn normalized(mut self) -> Self {
        let mut d = self.den;
        for &c in &self.coeffs {
            if d == 1 {
                break;
            }
            d = gcd_i128(d, c);
        }
        if d > 1 {
            for c in &mut self.coeffs {
                *c /= d;
            }
            self.den /= d;
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.den / gcd_i128(self.den, other.den) * other.den;
        let (fa, fb) = (den / self.den, den / other.den);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a * fa + b * fb)
            .collect();
        Self { coeffs, den }.normalized()
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
            den: self.den,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self, g: &Group) -> Self {
        let n = g.presentation().n;
        let support = |x: &Self| -> Vec<(Element, i128)> {
            x.coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (Element::new(k as u64 / n, k as u64 % n), c))
                .collect()
        };
        let (sa, sb) = (support(self), support(other));
        let mut coeffs = vec![0i128; self.coeffs.len()];
        for &(x, cx) in &sa {
            for &(y, cy) in &sb {
                coeffs[g.index_of(g.mul(x, y))] += cx * cy;
            }
        }
        Self {
            coeffs,
            den: self.den * other.den,
        }
        .normalized()
    }

    /// `h^-1 x h`.
    pub fn conj(&self, h: Element, g: &Group) -> Self {
        let n = g.presentation().n;
        let mut coeffs = vec![0i128; self.coeffs.len()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let e = Element::new(k as u64 / n, k as u64 % n);
                coeffs[g.index_of(g.conj(e, h))] = c;
            }
        }
        Self { coeffs, den: self.den }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn subgroup_averages_are_idempotent() {
        let g = make_group(4, 2, 2, 3).unwrap();
        for h in g.enumerate_subgroups().unwrap() {
            let e = GroupAlgebraElement::hat(&g, h);
            assert_eq!(e.mul(&e, &g), e);
        }
        let whole = GroupAlgebraElement::hat(&g, &g.whole());
        let one = GroupAlgebraElement::one(&g);
        let c = one.sub(&whole);
        assert_eq!(c.mul(&whole, &g), GroupAlgebraElement::zero(&g));
        assert_eq!(c.add(&whole), one);
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let g = make_group(3, 2, 0, 2).unwrap();
        let x = GroupAlgebraElement::basis(&g, g.a()).add(&GroupAlgebraElement::basis(&g, g.b()));
        let y = x.mul(&x, &g);
        let h = g.b();
        assert_eq!(y.conj(h, &g), x.conj(h, &g).mul(&x.conj(h, &g), &g));
    }
}
