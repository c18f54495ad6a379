//! Reference values worked out by hand, independent of the library.
//! Frozen: change only if the hand derivation itself was wrong.
#![allow(dead_code)]

/// One simple component: reduced degree, center as `(conductor, degree over Q)`,
/// and for the crossed products that are not matrix rings over their center,
/// the cyclotomic modulus and twist exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Golden {
    pub degree: u64,
    pub center: (u64, u64),
    pub crossed: Option<(u64, u64)>,
}

const fn commutative(conductor: u64, field_degree: u64) -> Golden {
    Golden {
        degree: 1,
        center: (conductor, field_degree),
        crossed: None,
    }
}

pub struct GoldenGroup {
    pub name: &'static str,
    pub presentation: (u64, u64, u64, u64),
    pub components: &'static [Golden],
}

/// `QS_3 = Q + Q + M_2(Q)`; `QQ_8 = 4Q + (Q(i)/Q, -1)`; `QD_8 = 4Q + (Q(i)/Q, 1)`;
/// for `<a, b | a^9, b^3, a^b = a^4>`: `G/G' = C_3 x C_3` gives `Q + 4 Q(zeta_3)`
/// and the rest, of dimension 18, is one degree-3 algebra over `Q(zeta_3)`.
pub const GOLDEN: &[GoldenGroup] = &[
    GoldenGroup {
        name: "S3",
        presentation: (3, 2, 0, 2),
        components: &[
            commutative(1, 1),
            commutative(1, 1),
            Golden {
                degree: 2,
                center: (1, 1),
                crossed: Some((3, 0)),
            },
        ],
    },
    GoldenGroup {
        name: "Q8",
        presentation: (4, 2, 2, 3),
        components: &[
            commutative(1, 1),
            commutative(1, 1),
            commutative(1, 1),
            commutative(1, 1),
            Golden {
                degree: 2,
                center: (1, 1),
                crossed: Some((4, 2)),
            },
        ],
    },
    GoldenGroup {
        name: "D8",
        presentation: (4, 2, 0, 3),
        components: &[
            commutative(1, 1),
            commutative(1, 1),
            commutative(1, 1),
            commutative(1, 1),
            Golden {
                degree: 2,
                center: (1, 1),
                crossed: Some((4, 0)),
            },
        ],
    },
    GoldenGroup {
        name: "C9:C3",
        presentation: (9, 3, 0, 4),
        components: &[
            commutative(1, 1),
            commutative(3, 2),
            commutative(3, 2),
            commutative(3, 2),
            commutative(3, 2),
            Golden {
                degree: 3,
                center: (3, 2),
                crossed: None,
            },
        ],
    },
];

/// Number of metacyclic groups of each order below 16. Squarefree orders
/// count all groups (Hölder); order 8 drops `C_2^3`; order 12 drops `A_4`.
pub const METACYCLIC_COUNTS: [(u64, usize); 15] = [
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 2),
    (5, 1),
    (6, 2),
    (7, 1),
    (8, 4),
    (9, 2),
    (10, 2),
    (11, 1),
    (12, 4),
    (13, 1),
    (14, 2),
    (15, 1),
];
