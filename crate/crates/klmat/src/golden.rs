//! Pinned reference values for the uniform and braid families.
//!
//! These are the published low-rank Kazhdan-Lusztig polynomials the crate is
//! validated against; the `verify tables` CLI suite and the acceptance tests
//! compare every cell. Polynomials are stored as coefficient lists from the
//! constant term up. Every value fits in a `u64`.

/// Columns `(d, coefficients of P_{1,d})`.
pub const UNIFORM_M1: &[(usize, &[u64])] = &[
    (1, &[1]),
    (2, &[1]),
    (3, &[1, 2]),
    (4, &[1, 5]),
    (5, &[1, 9, 5]),
    (6, &[1, 14, 21]),
    (7, &[1, 20, 56, 14]),
    (8, &[1, 27, 120, 84]),
    (9, &[1, 35, 225, 300, 42]),
    (10, &[1, 44, 385, 825, 330]),
    (11, &[1, 54, 616, 1925, 1485, 132]),
    (12, &[1, 65, 936, 4004, 5005, 1287]),
    (13, &[1, 77, 1365, 7644, 14014, 7007, 429]),
    (14, &[1, 90, 1925, 13650, 34398, 28028, 5005]),
    (15, &[1, 104, 2640, 23100, 76440, 91728, 32032, 1430]),
];

/// Columns `(d, coefficients of P_{2,d})`.
pub const UNIFORM_M2: &[(usize, &[u64])] = &[
    (3, &[1, 5]),
    (4, &[1, 14]),
    (5, &[1, 28, 21]),
    (6, &[1, 48, 98]),
    (7, &[1, 75, 288, 84]),
    (8, &[1, 110, 675, 552]),
    (9, &[1, 154, 1375, 2145, 330]),
    (10, &[1, 208, 2541, 6380, 2805]),
    (11, &[1, 273, 4368, 16016, 13585, 1287]),
    (12, &[1, 350, 7098, 35672, 49049, 13442]),
    (13, &[1, 440, 11025, 72618, 146510, 78078, 5005]),
    (14, &[1, 544, 16500, 137760, 382200, 331968, 62062]),
    (15, &[1, 663, 23936, 246840, 899640, 1150968, 420784, 19448]),
];

/// Columns `(d, coefficients of P_{3,d})`.
pub const UNIFORM_M3: &[(usize, &[u64])] = &[
    (3, &[1, 9]),
    (4, &[1, 28]),
    (5, &[1, 62, 56]),
    (6, &[1, 117, 288]),
    (7, &[1, 200, 927, 300]),
    (8, &[1, 319, 2365, 2145]),
    (9, &[1, 483, 5214, 9020, 1485]),
    (10, &[1, 702, 10374, 28886, 13585]),
    (11, &[1, 987, 19110, 77714, 70499, 7007]),
    (12, &[1, 1350, 33138, 184730, 271635, 78078]),
    (13, &[1, 1804, 54720, 399840, 862680, 482118, 32032]),
    (14, &[1, 2363, 86768, 803760, 2384760, 2171988, 420784]),
];

/// Columns `(n, coefficients of P_n)` for the braid matroid.
pub const BRAID: &[(usize, &[u64])] = &[
    (1, &[1]),
    (2, &[1]),
    (3, &[1]),
    (4, &[1, 1]),
    (5, &[1, 5]),
    (6, &[1, 16, 15]),
    (7, &[1, 42, 175]),
    (8, &[1, 99, 1225, 735]),
    (9, &[1, 219, 6769, 16065]),
    (10, &[1, 466, 32830, 204400, 76545]),
    (11, &[1, 968, 147466, 2001230, 2747745]),
    (12, &[1, 1981, 632434, 16813720, 56143395, 13835745]),
    (13, &[1, 4017, 2637206, 128172330, 864418555, 746080335]),
    (
        14,
        &[1, 8100, 10811801, 915590676, 11200444255, 22495833360, 3859590735],
    ),
    (
        15,
        &[
            1,
            16278,
            43876001,
            6252966720,
            129344350135,
            502627875750,
            293349030975,
        ],
    ),
    (
        16,
        &[
            1,
            32647,
            176981207,
            41362602281,
            1377269949055,
            9305666915545,
            12290930276625,
            1539272109375,
        ],
    ),
    (
        17,
        &[
            1,
            65399,
            711347303,
            267347356003,
            13819966094935,
            151395489770525,
            376566883537845,
            157277996100225,
        ],
    ),
    (
        18,
        &[
            1,
            130918,
            2853229952,
            1698735206324,
            132618161185510,
            2242336712846230,
            9443716601138820,
            8758018896026400,
            831766748637825,
        ],
    ),
    (
        19,
        &[
            1,
            261972,
            11430715476,
            10656703437054,
            1229703907984734,
            30941776173508200,
            205809448675350520,
            352844128436870070,
            110176255068905025,
        ],
    ),
    (
        20,
        &[
            1,
            524097,
            45762931992,
            66208557177786,
            11100857399288280,
            404180066561961690,
            4042252614171772000,
            11522756204094885750,
            7879824460254822075,
            585243816844111425,
        ],
    ),
];

/// The golden uniform table for `m` in `{1, 2, 3}`.
pub fn uniform_table(m: usize) -> Option<&'static [(usize, &'static [u64])]> {
    match m {
        1 => Some(UNIFORM_M1),
        2 => Some(UNIFORM_M2),
        3 => Some(UNIFORM_M3),
        _ => None,
    }
}
