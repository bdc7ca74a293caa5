//! Frozen expected values for every table the workbench recomputes.
//!
//! These constants are the verification targets: the library recomputes each
//! table from scratch and the test suite / `verify` command compares against
//! the data here. Nothing in the computational pipeline reads this module.

/// `W(E6)` irreducible labels in the column order used by the cubic tables.
pub const E6_COLS: [&str; 25] = [
    "phi{1,0}",
    "phi{1,36}",
    "phi{6,25}",
    "phi{6,1}",
    "phi{10,9}",
    "phi{15,17}",
    "phi{15,16}",
    "phi{15,5}",
    "phi{15,4}",
    "phi{20,20}",
    "phi{20,2}",
    "phi{20,10}",
    "phi{24,12}",
    "phi{24,6}",
    "phi{30,15}",
    "phi{30,3}",
    "phi{60,11}",
    "phi{60,5}",
    "phi{60,8}",
    "phi{64,13}",
    "phi{64,4}",
    "phi{80,7}",
    "phi{81,6}",
    "phi{81,10}",
    "phi{90,8}",
];

/// `H^i(D3^n)` over `W(E6)`, rows `i = 0..6`, columns [`E6_COLS`].
pub const D3N: [[i64; 25]; 7] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 2, 0, 2, 0, 0, 0, 0, 1, 0, 1, 1, 0, 2, 0, 2, 0, 0],
    [0, 0, 0, 1, 1, 0, 0, 4, 2, 0, 3, 1, 1, 2, 0, 6, 2, 6, 4, 1, 9, 7, 9, 3, 7],
    [0, 0, 0, 3, 6, 3, 1, 8, 4, 1, 8, 5, 4, 8, 7, 17, 14, 23, 15, 13, 26, 31, 27, 20, 31],
    [1, 0, 2, 5, 7, 9, 8, 11, 11, 9, 17, 13, 13, 18, 17, 23, 37, 45, 40, 38, 48, 55, 56, 52, 61],
    [2, 1, 2, 3, 2, 8, 14, 8, 15, 13, 16, 15, 19, 21, 11, 12, 32, 34, 44, 36, 39, 37, 54, 53, 49],
];

/// `H^i(D3^c)` over `W(E6)`, rows `i = 0..5`.
pub const D3C: [[i64; 25]; 6] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 2, 0, 2, 0, 0],
    [0, 0, 0, 1, 1, 0, 0, 3, 1, 0, 2, 1, 1, 2, 0, 4, 2, 5, 3, 1, 6, 6, 6, 3, 6],
    [0, 0, 0, 2, 3, 2, 1, 4, 2, 1, 5, 3, 3, 5, 5, 9, 10, 14, 10, 9, 15, 17, 16, 13, 19],
    [0, 0, 1, 2, 1, 3, 4, 3, 5, 4, 6, 6, 6, 7, 5, 6, 13, 15, 16, 14, 17, 17, 21, 20, 20],
];

/// `H^i(D3^2n-hat)` (27 marked one-node components) over `W(E6)`, rows
/// `i = 0..5`, transcribed verbatim from the published table.
///
/// Known erratum: the published rows `i >= 2` are not the cohomology of the
/// space they caption. The corrected values are in [`D3_2N_HAT_CORRECTED`];
/// see its documentation for the evidence.
pub const D3_2N_HAT: [[i64; 25]; 6] = [
    [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 0, 0, 2, 0, 3, 0, 0, 1, 0, 1, 0, 2, 1, 0, 2, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 2, 5, 0, 5, 2, 0, 2, 0, 4, 1, 6, 3, 0, 8, 1, 8, 2, 3],
    [0, 0, 0, 2, 2, 2, 3, 8, 7, 2, 9, 8, 1, 2, 4, 12, 8, 14, 6, 7, 20, 10, 19, 9, 16],
    [0, 0, 3, 6, 9, 8, 6, 13, 8, 9, 14, 12, 1, 1, 19, 26, 26, 30, 11, 25, 34, 33, 28, 22, 36],
    [0, 0, 4, 5, 9, 8, 4, 9, 4, 8, 9, 8, 0, 0, 21, 23, 26, 27, 9, 25, 27, 36, 22, 21, 35],
];

/// Corrected `H^i(D3^2n-hat)` over `W(E6)`, rows `i = 0..5`.
///
/// The marked two-node space is a disjoint union, over the 27 classes `e`
/// with `e^2 = -1`, of inversion quotients of the `D5` toric-arrangement
/// complement inside the character torus of the root lattice `Q(D5) =
/// <f1, k>^perp`. The workbench recomputes it from that description; the
/// frozen rows here differ from the published table in every degree
/// `i >= 2` (the published fiber dimensions are `(1, 20, 100, 340, 759,
/// 700)` against the correct `(1, 20, 160, 640, 1279, 1020)`). The
/// corrected values are forced by oracles that are part of the test suite
/// and by internal consistency:
/// * Twisted point counts: for every conjugacy class of the 1920-element
///   line stabilizer, counting characters of the finite torus that avoid
///   all root hypertori (a Smith-normal-form enumeration independent of the
///   poset machinery) matches the alternating trace sum of these rows at
///   `q = 3, 5, 7`. The published rows fail this count at every `q`
///   except the excluded degenerate value `q = 2`.
/// * The root lattice is forced: `<f1, k>` is saturated in the unimodular
///   Picard lattice, so the character lattice is exactly `Q(D5)`; larger
///   lattices (which are the only other candidates for the torus) give
///   strictly larger cohomology, never the published rows.
/// * Covering bound: the unmarked two-node space is a double cover of the
///   marked quotient, so no further quotient can shrink these rows to the
///   published ones while keeping `H^1` equal (it does match in degrees
///   0 and 1).
/// * The candidate sieve for `H^*(D3)` reproduces the published candidate
///   sets, filters and final theorem when these corrected rows enter the
///   comparison bounds.
pub const D3_2N_HAT_CORRECTED: [[i64; 25]; 6] = [
    [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 0, 0, 2, 0, 3, 0, 0, 1, 0, 1, 0, 2, 1, 0, 2, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 2, 5, 0, 5, 2, 1, 4, 0, 4, 2, 8, 6, 1, 10, 4, 11, 5, 6],
    [0, 0, 0, 2, 2, 2, 3, 8, 7, 2, 9, 8, 8, 10, 4, 12, 15, 22, 21, 14, 28, 25, 34, 24, 31],
    [0, 0, 3, 6, 9, 8, 6, 13, 8, 9, 14, 12, 14, 14, 19, 26, 39, 43, 37, 38, 47, 59, 54, 48, 62],
    [0, 0, 4, 5, 9, 8, 4, 9, 4, 8, 9, 8, 8, 8, 21, 23, 34, 35, 25, 33, 35, 52, 38, 37, 51],
];

/// `H^i(D3^tn)` over `W(E6)`, rows `i = 0..4`.
pub const D3_TN: [[i64; 25]; 5] = [
    [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 2, 0, 0, 1, 0, 1, 0, 2, 1, 0, 2, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1, 3, 0, 3, 1, 1, 3, 0, 3, 2, 6, 5, 1, 7, 4, 9, 5, 5],
    [0, 0, 0, 2, 2, 2, 2, 5, 3, 2, 5, 5, 5, 6, 3, 7, 10, 13, 13, 10, 16, 16, 18, 15, 19],
    [0, 0, 1, 2, 3, 3, 2, 4, 2, 3, 4, 4, 4, 4, 7, 9, 13, 14, 11, 13, 15, 20, 17, 16, 21],
];

/// `H^i(D3^3n-hat)` (45 marked three-node components) over `W(E6)`, rows
/// `i = 0..4`, transcribed verbatim from the published table.
///
/// Known erratum: in rows `1..=4` the published table transposes the
/// multiplicities of the conjugate pair `phi{60,11}` / `phi{60,5}`
/// (columns 16 and 17 of [`E6_COLS`]); the rows listed in
/// [`D3_3N_HAT_SWAPPED_ROWS`] must have those two columns exchanged. The
/// correct orientation of the pair is pinned down by the four cubic tables
/// that verify verbatim (the nodal, cuspidal, tacnodal and tritangent-plane
/// tables all distinguish the pair), and the corrected rows pass the same
/// twisted point-count certification as [`D3_2N_HAT_CORRECTED`] at
/// `q = 5, 7` on every conjugacy class of the 1152-element trio stabilizer.
pub const D3_3N_HAT: [[i64; 25]; 5] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [2, 0, 0, 1, 0, 0, 1, 0, 3, 0, 5, 0, 0, 4, 0, 0, 2, 0, 3, 0, 3, 0, 2, 2, 0],
    [2, 0, 0, 3, 0, 1, 7, 1, 12, 4, 14, 3, 5, 12, 0, 3, 15, 7, 21, 7, 18, 6, 20, 17, 8],
    [3, 2, 2, 5, 1, 9, 21, 8, 26, 19, 28, 16, 24, 32, 7, 13, 49, 37, 65, 40, 53, 36, 70, 67, 51],
    [3, 3, 4, 5, 3, 15, 26, 14, 28, 27, 30, 25, 35, 39, 17, 20, 64, 58, 83, 65, 70, 62, 97, 97, 85],
];

/// Rows of [`D3_3N_HAT`] whose `phi{60,11}` and `phi{60,5}` columns are
/// transposed in the published table.
pub const D3_3N_HAT_SWAPPED_ROWS: [usize; 4] = [1, 2, 3, 4];

/// `H^i(D3^tp)` over `W(E6)`, rows `i = 0..3`.
pub const D3_TP: [[i64; 25]; 4] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 1, 0, 3, 0, 4, 0, 0, 3, 0, 0, 0, 2, 3, 0, 3, 0, 2, 2, 0],
    [1, 0, 0, 2, 0, 1, 5, 0, 8, 3, 9, 3, 3, 8, 0, 3, 5, 12, 16, 6, 14, 6, 15, 13, 7],
    [1, 1, 1, 2, 1, 5, 8, 5, 10, 8, 11, 7, 11, 14, 4, 7, 18, 23, 27, 18, 23, 18, 31, 30, 26],
];

/// `S6` column partitions in the order of the `H^i(D3)` point-count table.
pub const S6_COLS: [&[usize]; 11] = [
    &[6],
    &[1, 1, 1, 1, 1, 1],
    &[2, 1, 1, 1, 1],
    &[5, 1],
    &[2, 2, 2],
    &[3, 3],
    &[2, 2, 1, 1],
    &[4, 2],
    &[3, 1, 1, 1],
    &[4, 1, 1],
    &[3, 2, 1],
];

/// `H^i(D3)` over `S6` (from the equivariant point count), rows `i = 0..4`,
/// columns [`S6_COLS`].
pub const D3_S6: [[i64; 11]; 5] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 1, 1, 2, 2],
    [0, 0, 0, 1, 1, 1, 2, 2, 3, 4, 4],
    [1, 1, 1, 1, 3, 3, 2, 2, 2, 2, 2],
];

/// `S5` column partitions in the order of the quartic tables.
pub const S5_COLS: [&[usize]; 7] =
    [&[5], &[1, 1, 1, 1, 1], &[4, 1], &[2, 1, 1, 1], &[3, 2], &[2, 2, 1], &[3, 1, 1]];

/// `H^i(D4)` over `S5` (from the equivariant point count), rows `i = 0..2`.
pub const D4_S5: [[i64; 7]; 3] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
];

/// The unique `W(D5)` irreducibles restricting to the rows of [`D4_S5`].
pub const D4_WD5_LIFTS: [&str; 3] = ["phi{1,0}", "phi{5,4}", "phi{6,6}"];

/// Quartic-family blocks over `S5`, columns [`S5_COLS`], transcribed
/// verbatim from the published table.
///
/// Known erratum: in [`TABLE10_SWAPS`]-listed entries the published table
/// transposes the multiplicities of a conjugate pair of irreducibles
/// (`s_{4,1}` with `s_{2,1,1,1}`, or `s_{3,2}` with `s_{2,2,1}`). The
/// corrected values are forced by convention-free oracles that are part of
/// the test suite:
/// * `H^1` of a hyperplane-arrangement complement is the permutation
///   representation on hyperplanes, so the full trace vector of `H^1` of the
///   projectivized quotient is a fixed-hyperplane count; it decomposes as
///   `s_{4,1} + s_{3,2}`, not the published `s_{2,1^3} + s_{3,2}`.
/// * `H^1` of the toric complement is the lattice representation plus the
///   permutation representation on codimension-one layers, giving
///   `s_5 + s_{4,1} + s_{3,2}`.
/// * `H^0` of a disjoint union is the permutation representation on
///   components; for the four-node space this is the induction of the
///   trivial representation from an order-6 subgroup of `S5`, which is
///   `s_5 + 2 s_{4,1} + s_{3,2} + s_{3,1,1}`; the published row is not the
///   permutation character of any 20-element transitive `S5`-set.
pub const D4N: [[i64; 7]; 6] = [
    [1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 2, 1, 2, 2],
    [0, 0, 1, 3, 2, 3, 4],
    [1, 0, 3, 5, 4, 5, 6],
    [2, 1, 4, 5, 6, 6, 6],
];

pub const D4C: [[i64; 7]; 4] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 1, 1, 1, 2],
    [0, 0, 1, 1, 1, 1, 1],
];

pub const D4_2N_A4: [[i64; 7]; 5] = [
    [1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 2, 1, 0, 0],
    [1, 0, 0, 4, 4, 2, 4],
    [1, 0, 4, 6, 7, 6, 8],
    [1, 1, 4, 4, 5, 5, 6],
];

/// Identical to [`D4C`] (Frobenius reciprocity makes the two spaces'
/// invariant computations agree degreewise).
pub const D4_TN_A4: [[i64; 7]; 4] = D4C;

pub const D4_2N_D4: [[i64; 7]; 5] = [
    [1, 0, 0, 1, 0, 0, 0],
    [1, 0, 0, 2, 2, 1, 1],
    [0, 0, 1, 3, 4, 2, 4],
    [1, 0, 3, 5, 5, 4, 7],
    [2, 1, 4, 5, 6, 6, 6],
];

pub const D4_TN_D4: [[i64; 7]; 4] = [
    [1, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 2, 1, 1],
    [0, 0, 1, 2, 2, 1, 3],
    [1, 0, 1, 2, 2, 2, 2],
];

pub const D4_3N: [[i64; 7]; 4] = [
    [1, 0, 0, 1, 0, 0, 0],
    [1, 0, 0, 3, 3, 1, 2],
    [1, 0, 3, 5, 6, 5, 7],
    [1, 1, 4, 4, 5, 5, 6],
];

pub const D4_TP: [[i64; 7]; 3] = [
    [1, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 2, 1, 1],
    [0, 0, 1, 1, 1, 1, 2],
];

pub const D4_4N: [[i64; 7]; 3] = [
    [1, 0, 0, 2, 0, 1, 1],
    [1, 0, 2, 4, 4, 5, 5],
    [1, 1, 4, 4, 5, 5, 6],
];

/// Published-table entries affected by the conjugate-pair erratum described
/// at [`D4N`]: `(block, degree, pair)` with pair `0` = (`s_{4,1}`,
/// `s_{2,1,1,1}`) (columns 2 and 3 of [`S5_COLS`]) and pair `1` = (`s_{3,2}`,
/// `s_{2,2,1}`) (columns 4 and 5). In each listed entry the two columns of
/// the published row must be exchanged to obtain the true multiplicities.
pub const TABLE10_SWAPS: [(&str, usize, usize); 34] = [
    ("D4n", 1, 0),
    ("D4n", 1, 1),
    ("D4n", 2, 0),
    ("D4n", 2, 1),
    ("D4n", 3, 0),
    ("D4n", 3, 1),
    ("D4n", 4, 0),
    ("D4n", 4, 1),
    ("D4n", 5, 0),
    ("D4c", 1, 0),
    ("D4c", 2, 0),
    ("D4_2n_A4", 1, 0),
    ("D4_2n_A4", 2, 0),
    ("D4_2n_A4", 3, 0),
    ("D4_tn_A4", 1, 0),
    ("D4_tn_A4", 2, 0),
    ("D4_2n_D4", 0, 0),
    ("D4_2n_D4", 1, 0),
    ("D4_2n_D4", 2, 0),
    ("D4_2n_D4", 3, 0),
    ("D4_2n_D4", 4, 0),
    ("D4_tn_D4", 0, 0),
    ("D4_tn_D4", 1, 0),
    ("D4_tn_D4", 2, 0),
    ("D4_tn_D4", 3, 0),
    ("D4_3n", 0, 0),
    ("D4_3n", 1, 0),
    ("D4_3n", 2, 0),
    ("D4_tp", 0, 0),
    ("D4_tp", 1, 0),
    ("D4_4n", 0, 0),
    ("D4_4n", 0, 1),
    ("D4_4n", 1, 0),
    ("D4_4n", 1, 1),
];

/// Twisted point-count polynomials of the 5-point moduli space, one per
/// cycle type, coefficients low to high.
pub const COUNT_POLYS_5: [(&[usize], &[i64]); 7] = [
    (&[5], &[1, 0, 1]),
    (&[4, 1], &[0, 1, 1]),
    (&[3, 2], &[0, -1, 1]),
    (&[3, 1, 1], &[0, 1, 1]),
    (&[2, 2, 1], &[-2, -1, 1]),
    (&[2, 1, 1, 1], &[0, -1, 1]),
    (&[1, 1, 1, 1, 1], &[6, -5, 1]),
];

/// Twisted point-count polynomials of the 6-point moduli space.
pub const COUNT_POLYS_6: [(&[usize], &[i64]); 11] = [
    (&[6], &[0, 0, 0, -1, 1]),
    (&[5, 1], &[0, 0, 1, 0, 1]),
    (&[4, 2], &[-2, -1, -1, -1, 1]),
    (&[4, 1, 1], &[0, -1, -1, 1, 1]),
    (&[3, 3], &[12, -2, 0, -3, 1]),
    (&[3, 2, 1], &[0, 1, 0, -2, 1]),
    (&[3, 1, 1, 1], &[0, 1, 0, 0, 1]),
    (&[2, 2, 2], &[0, 3, -3, -1, 1]),
    (&[2, 2, 1, 1], &[6, 7, -3, -3, 1]),
    (&[2, 1, 1, 1, 1], &[0, -5, 9, -5, 1]),
    (&[1, 1, 1, 1, 1, 1], &[150, -185, 81, -15, 1]),
];

/// Unique sieve answers for `H^0`, `H^1`, `H^2` of `D3` over `W(E6)`.
pub const D3_KNOWN_LOW: [&[&str]; 3] = [&["phi{1,0}"], &["phi{15,4}"], &["phi{81,6}"]];

/// The two 80-dimensional completions of `H^3 = phi{15,5} + phi{90,8} + χ`.
pub const CHI80_OPTIONS: [&[&str]; 2] = [&["phi{20,10}", "phi{60,8}"], &["phi{80,7}"]];

/// Fixed part of `H^3`.
pub const H3_FIXED: [&str; 2] = ["phi{15,5}", "phi{90,8}"];

/// The eight 140-dimensional completions of `H^4 = phi{10,9} + χ`.
pub const CHI140_OPTIONS: [&[&str]; 8] = [
    &["phi{80,7}", "phi{30,3}", "phi{30,15}"],
    &["phi{80,7}", "phi{15,4}", "phi{15,5}", "phi{15,16}", "phi{15,17}"],
    &["phi{80,7}", "phi{30,15}", "phi{15,4}", "phi{15,5}"],
    &["phi{80,7}", "phi{30,3}", "phi{15,16}", "phi{15,17}"],
    &["phi{60,8}", "phi{20,10}", "phi{30,15}", "phi{15,4}", "phi{15,5}"],
    &["phi{60,8}", "phi{20,10}", "phi{30,3}", "phi{15,16}", "phi{15,17}"],
    &["phi{60,8}", "phi{20,10}", "phi{15,4}", "phi{15,5}", "phi{15,16}", "phi{15,17}"],
    &["phi{60,8}", "phi{20,10}", "phi{30,3}", "phi{30,15}"],
];

/// The four completions surviving the signed Euler-characteristic filter.
pub const CHI140_AFTER_SIGNED: [&[&str]; 4] = [
    CHI140_OPTIONS[0],
    CHI140_OPTIONS[1],
    CHI140_OPTIONS[6],
    CHI140_OPTIONS[7],
];

/// Fixed part of `H^4`.
pub const H4_FIXED: [&str; 1] = ["phi{10,9}"];

/// The final answer: `H^i(D3)` over `W(E6)` as irreducible label lists.
pub const D3_FINAL: [&[&str]; 5] = [
    &["phi{1,0}"],
    &["phi{15,4}"],
    &["phi{81,6}"],
    &["phi{15,5}", "phi{80,7}", "phi{90,8}"],
    &["phi{10,9}", "phi{80,7}", "phi{30,3}", "phi{30,15}"],
];

/// Betti numbers of `D3^n`.
pub const D3N_BETTI: [i64; 7] = [1, 36, 525, 3960, 16299, 34884, 30695];

/// Fibration consistency: the Poincaré polynomial of `D3` at the identity
/// factors as base times fiber, `(1+5t+6t²)(1+10t+25t²)`.
pub const FIBRATION_BASE: [i64; 3] = [1, 5, 6];
pub const FIBRATION_FIBER: [i64; 3] = [1, 10, 25];
pub const FIBRATION_PRODUCT: [i64; 5] = [1, 15, 81, 185, 150];
