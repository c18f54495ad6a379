//! End-to-end checks of the invariant against explicit presentations.

use std::sync::LazyLock;

use metacyclic_core::group::{make_group, Group};
use metacyclic_core::invariants::{construct_group, isomorphic, mcinv, valid_tuples};
use metacyclic_core::wedderburn::{abelianization_fields, decomposition, perlis_walker, abelianization_invariants};
use proptest::prelude::*;

#[test]
fn metacyclic_groups_of_order_at_most_eight() {
    // 1, C2, C3, C4, C2^2, C5, C6, S3, C7, C8, C4 x C2, D8, Q8
    let orders: Vec<u64> = valid_tuples(8).iter().map(|t| t.order()).collect();
    assert_eq!(orders.len(), 13);
    assert_eq!(orders.iter().filter(|&&o| o == 8).count(), 4);
    assert_eq!(orders.iter().filter(|&&o| o == 6).count(), 2);
}

#[test]
fn constructed_groups_carry_their_own_invariant() {
    for t in valid_tuples(120) {
        let g = construct_group(&t).unwrap();
        assert_eq!(g.order(), t.order(), "{t}");
        assert_eq!(mcinv(&g).unwrap(), t);
    }
}

#[test]
fn dihedral_and_quaternion_differ_but_share_characters() {
    let q8 = make_group(4, 2, 2, 3).unwrap();
    let d8 = make_group(4, 2, 0, 3).unwrap();
    assert_ne!(mcinv(&q8).unwrap(), mcinv(&d8).unwrap());
    assert!(!isomorphic(&q8, &d8).unwrap());
    let degrees = |g| {
        let mut v: Vec<u64> = decomposition(g).unwrap().iter().map(|c| c.total_degree).collect();
        v.sort();
        v
    };
    assert_eq!(degrees(&q8), degrees(&d8));
}

#[test]
fn rational_group_algebra_has_the_right_size() {
    for t in valid_tuples(128) {
        let g = construct_group(&t).unwrap();
        let dim: u64 = decomposition(&g).unwrap().iter().map(|c| c.q_dimension).sum();
        assert_eq!(dim, g.order(), "{t}");
        let commutative: u64 = perlis_walker(&abelianization_invariants(&g))
            .into_iter()
            .map(|(d, c)| c * metacyclic_core::numth::euler_phi(d))
            .sum();
        let from_components: u64 = abelianization_fields(&g).unwrap().iter().map(|(f, c)| c * f.degree()).sum();
        assert_eq!(commutative, from_components, "{t}");
    }
}

/// Every consistent presentation `(m, n, s, t)` of order at most 48.
static PRESENTATIONS: LazyLock<Vec<(u64, u64, u64, u64)>> = LazyLock::new(|| {
    let mut out = Vec::new();
    for m in 1..=48u64 {
        for n in 1..=48 / m {
            for s in 0..m {
                for t in 0..m {
                    if make_group(m, n, s, t).is_ok() {
                        out.push((m, n, s, t));
                    }
                }
            }
        }
    }
    out
});

fn group_at(idx: usize) -> Group {
    let (m, n, s, t) = PRESENTATIONS[idx % PRESENTATIONS.len()];
    make_group(m, n, s, t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariant_decides_isomorphism(i in any::<usize>(), j in any::<usize>()) {
        let g = group_at(i);
        let same_order: Vec<usize> = (0..PRESENTATIONS.len())
            .filter(|&k| { let (m, n, _, _) = PRESENTATIONS[k]; m * n == g.order() })
            .collect();
        let h = group_at(same_order[j % same_order.len()]);
        let same = mcinv(&g).unwrap() == mcinv(&h).unwrap();
        prop_assert_eq!(same, g.brute_force_isomorphic(&h).unwrap());
    }

    #[test]
    fn canonical_form_is_isomorphic(i in any::<usize>()) {
        let g = group_at(i);
        let c = construct_group(&mcinv(&g).unwrap()).unwrap();
        prop_assert!(g.brute_force_isomorphic(&c).unwrap());
    }
}
