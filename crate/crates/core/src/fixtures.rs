//! Small generated groups used by the verification suite, tests, and benches.

use crate::geometry::Fixture;
use crate::group::{Element, GeneratedGroup, IntVector, Permutation};
use crate::notation::parse_cycle_notation;

/// Parses a cycle-notation literal; panics on malformed input.
pub fn perm(degree: usize, text: &str) -> Element {
    Element::Perm(parse_cycle_notation(text, degree).expect("valid cycle literal"))
}

fn perm_group(degree: usize, gens: &[&str]) -> GeneratedGroup {
    GeneratedGroup::permutation(
        degree,
        gens.iter()
            .map(|g| parse_cycle_notation(g, degree).expect("valid cycle literal"))
            .collect(),
    )
    .expect("fixture generating set is valid")
}

/// `S_3` with `S = {(1 2), (1 2 3)}`.
pub fn s3() -> GeneratedGroup {
    perm_group(3, &["(1 2)", "(1 2 3)"])
}

/// `S_3` with `T = {(1 2), (1 3), (1 2 3)}`.
pub fn s3_t() -> GeneratedGroup {
    perm_group(3, &["(1 2)", "(1 3)", "(1 2 3)"])
}

/// `S_3` generated by all of its non-identity elements.
pub fn s3_complete() -> GeneratedGroup {
    complete(&s3())
}

/// The same group generated by `G \ {e}`.
pub fn complete(group: &GeneratedGroup) -> GeneratedGroup {
    let elements = group.elements().expect("finite fixture");
    GeneratedGroup::new(
        group.backend(),
        elements
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect(),
    )
    .expect("non-identity elements generate")
}

pub fn s4() -> GeneratedGroup {
    perm_group(4, &["(1 2)", "(1 2 3 4)"])
}

pub fn s4_t() -> GeneratedGroup {
    perm_group(4, &["(1 2)", "(2 3)", "(3 4)"])
}

/// Symmetries of a square, rotation plus a diagonal reflection.
pub fn d4() -> GeneratedGroup {
    perm_group(4, &["(1 2 3 4)", "(1 3)"])
}

/// Symmetries of a square, generated by two reflections.
pub fn d4_t() -> GeneratedGroup {
    perm_group(4, &["(1 2)(3 4)", "(1 3)"])
}

fn rotation(n: usize, power: usize) -> Permutation {
    Permutation::from_images((0..n).map(|i| (i + power) % n).collect()).expect("rotation")
}

/// `Z_n` as rotations of `n` points, `S = {r}`.
pub fn cyclic(n: usize) -> GeneratedGroup {
    cyclic_with(n, &[1])
}

/// `Z_n` generated by the given residues, in order.
pub fn cyclic_with(n: usize, residues: &[usize]) -> GeneratedGroup {
    GeneratedGroup::permutation(n, residues.iter().map(|&k| rotation(n, k)).collect())
        .expect("residues generate Z_n")
}

/// Rotation element `r^k` in the degree-`n` representation of `Z_n`.
pub fn residue(n: usize, k: usize) -> Element {
    Element::Perm(rotation(n, k % n))
}

// Quaternion units encoded as 2 * unit + sign, unit in {1, i, j, k}.
fn quaternion_product(a: usize, b: usize) -> usize {
    let (ua, sa) = (a / 2, a % 2);
    let (ub, sb) = (b / 2, b % 2);
    // unit table: row * col = (unit, negated)
    const TABLE: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let (u, s) = TABLE[ua][ub];
    2 * u + (s + sa + sb) % 2
}

fn quaternion_right_regular(g: usize) -> Permutation {
    Permutation::from_images((0..8).map(|x| quaternion_product(x, g)).collect())
        .expect("regular rep")
}

/// `Q_8` in its right-regular representation, `S = {i, j}`.
pub fn q8() -> GeneratedGroup {
    GeneratedGroup::permutation(
        8,
        vec![quaternion_right_regular(2), quaternion_right_regular(4)],
    )
    .expect("i and j generate Q8")
}

/// `Q_8` with `T = {i, j, k}`.
pub fn q8_t() -> GeneratedGroup {
    GeneratedGroup::permutation(
        8,
        vec![
            quaternion_right_regular(2),
            quaternion_right_regular(4),
            quaternion_right_regular(6),
        ],
    )
    .expect("i, j, k generate Q8")
}

/// `Z` with the given generators.
pub fn integers_with(gens: &[i64]) -> GeneratedGroup {
    GeneratedGroup::free_abelian(1, gens.iter().map(|&g| IntVector::from(vec![g])).collect())
        .expect("generators span Z")
}

/// `Z` with `S = {1}`.
pub fn integers() -> GeneratedGroup {
    integers_with(&[1])
}

pub fn int(n: i64) -> Element {
    IntVector::from(vec![n]).into()
}

/// `b_1 + .. + b_n` in `Z^rank`.
pub fn basis_sum(rank: usize, n: usize) -> Element {
    IntVector::from((0..rank).map(|i| i64::from(i < n)).collect::<Vec<_>>()).into()
}

/// The fixture set the verification suite runs by default: each group with
/// its primary generating set and an alternate set.
pub fn default_fixtures() -> Vec<Fixture> {
    vec![
        Fixture::finite("S3", s3()).with_alternate(s3_t()),
        Fixture::finite("S3-complete", s3_complete()),
        Fixture::finite("S4", s4()).with_alternate(s4_t()),
        Fixture::finite("D4", d4()).with_alternate(d4_t()),
        Fixture::finite("Z4", cyclic(4)).with_alternate(cyclic_with(4, &[1, 3])),
        Fixture::finite("Z5", cyclic(5)).with_alternate(cyclic_with(5, &[1, 2])),
        Fixture::finite("Z6", cyclic(6)).with_alternate(cyclic_with(6, &[2, 3])),
        Fixture::finite("Q8", q8()).with_alternate(q8_t()),
        Fixture::ball("Z-ball50", integers(), 50).with_alternate(integers_with(&[2, 3])),
        Fixture::ball("Z3-ball2", GeneratedGroup::standard_lattice(3), 2),
    ]
}
