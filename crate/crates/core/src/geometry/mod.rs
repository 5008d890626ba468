//! Large-scale comparisons between metric tables: bi-Lipschitz constants,
//! quasi-isometry violation scans and diameter growth over word balls.

mod suite;

use std::fmt;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

pub use suite::{
    prepare_fixture, run_checks, run_verification_suite, CheckId, CheckResult, CheckStatus,
    Fixture, PreparedFixture, SuiteConfig, SuiteReport,
};

use crate::error::{Error, Result};
use crate::group::{Element, GeneratedGroup};
use crate::map::GroupMap;
use crate::metrics::{cardinal_distance, metric_table, word_ball, MetricKind, MetricTable};

fn ratio_str<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// A bi-Lipschitz constant; infinite when some pair collapses or separates
/// from distance zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lipschitz {
    Finite(Rational64),
    Infinite,
}

impl Lipschitz {
    pub fn is_at_most(&self, bound: Rational64) -> bool {
        matches!(self, Lipschitz::Finite(k) if *k <= bound)
    }
}

impl fmt::Display for Lipschitz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lipschitz::Finite(k) => write!(f, "{k}"),
            Lipschitz::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Lipschitz {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_shape(f: &GroupMap, from: &MetricTable, to: &MetricTable) -> Result<()> {
    if f.len() != from.len() {
        return Err(Error::IndexMismatch {
            expected: from.len(),
            found: f.len(),
        });
    }
    if f.images().iter().any(|&y| y >= to.len()) {
        return Err(Error::IndexMismatch {
            expected: to.len(),
            found: f.images().iter().copied().max().unwrap_or(0) + 1,
        });
    }
    Ok(())
}

/// Smallest `K >= 1` with `from/K <= to∘f <= K·from` on every pair.
pub fn bilipschitz_best_constant(
    f: &GroupMap,
    from: &MetricTable,
    to: &MetricTable,
) -> Result<Lipschitz> {
    check_shape(f, from, to)?;
    f.ensure_injective()?;
    let n = from.len();
    let mut best = Rational64::from_integer(1);
    for x in 0..n {
        for y in (x + 1)..n {
            let a = i64::from(from.get(x, y));
            let b = i64::from(to.get(f.apply(x), f.apply(y)));
            match (a, b) {
                (0, 0) => {}
                (0, _) | (_, 0) => return Ok(Lipschitz::Infinite),
                _ => {
                    best = best.max(Rational64::new(a, b)).max(Rational64::new(b, a));
                }
            }
        }
    }
    Ok(Lipschitz::Finite(best))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `from/K - c > to∘f`
    Lower,
    /// `to∘f > K·from + c`
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub x: String,
    pub y: String,
    pub side: Side,
    #[serde(serialize_with = "ratio_str")]
    pub lhs: Rational64,
    #[serde(serialize_with = "ratio_str")]
    pub rhs: Rational64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub best_constant: Option<Lipschitz>,
    #[serde(serialize_with = "ratio_str")]
    pub k: Rational64,
    #[serde(serialize_with = "ratio_str")]
    pub c: Rational64,
    pub violations: Vec<Violation>,
    pub from_diameter: u32,
    pub to_diameter: u32,
}

/// Every unordered pair breaking `from/K - c <= to∘f <= K·from + c`.
pub fn qi_violation_scan(
    f: &GroupMap,
    k: Rational64,
    c: Rational64,
    from: &MetricTable,
    to: &MetricTable,
) -> Result<ComparisonReport> {
    if k <= Rational64::from_integer(0) {
        return Err(Error::InvalidArgument(format!(
            "K must be positive, got {k}"
        )));
    }
    if c < Rational64::from_integer(0) {
        return Err(Error::InvalidArgument(format!(
            "c must be nonnegative, got {c}"
        )));
    }
    check_shape(f, from, to)?;
    let n = from.len();
    let mut violations = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            let d_from = Rational64::from_integer(i64::from(from.get(x, y)));
            let d_to = Rational64::from_integer(i64::from(to.get(f.apply(x), f.apply(y))));
            let label = |i: usize| from.vertices()[i].to_string();
            let lower = d_from / k - c;
            if lower > d_to {
                violations.push(Violation {
                    x: label(x),
                    y: label(y),
                    side: Side::Lower,
                    lhs: lower,
                    rhs: d_to,
                });
            }
            let upper = k * d_from + c;
            if d_to > upper {
                violations.push(Violation {
                    x: label(x),
                    y: label(y),
                    side: Side::Upper,
                    lhs: d_to,
                    rhs: upper,
                });
            }
        }
    }
    Ok(ComparisonReport {
        best_constant: bilipschitz_best_constant(f, from, to).ok(),
        k,
        c,
        violations,
        from_diameter: from.diameter(),
        to_diameter: to.diameter(),
    })
}

/// `(r, diam)` for the chosen metric on the word ball of each radius.
pub fn diameter_growth(
    group: &GeneratedGroup,
    kind: MetricKind,
    radii: &[u32],
    radius_cap: u32,
) -> Result<Vec<(u32, u32)>> {
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "radii must be strictly increasing".into(),
        ));
    }
    let e = group.identity();
    radii
        .iter()
        .map(|&r| {
            let vertices = word_ball(group, &e, r)?;
            let table = metric_table(group, &vertices, kind, radius_cap)?;
            Ok((r, table.diameter()))
        })
        .collect()
}

/// `d_C(0, b_1 + .. + b_n)` for `n = 1..=rank` in `Z^rank` with its
/// standard basis.
pub fn basis_sum_profile(rank: usize) -> Result<Vec<u32>> {
    let group = GeneratedGroup::standard_lattice(rank);
    let zero = group.identity();
    (1..=rank)
        .map(|n| cardinal_distance(&group, &zero, &crate::fixtures::basis_sum(rank, n)))
        .collect()
}

/// Uniformly random bijections of `0..n` from a seeded generator.
pub fn seeded_bijections(n: usize, count: usize, seed: u64) -> Vec<GroupMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut images: Vec<usize> = (0..n).collect();
            images.shuffle(&mut rng);
            GroupMap::new(images)
        })
        .collect()
}

/// The map `x ↦ x` between two tables over the same vertex list.
pub fn identity_between(from: &MetricTable, to: &MetricTable) -> Result<GroupMap> {
    from.vertices()
        .iter()
        .map(|v| {
            to.index_of(v)
                .ok_or_else(|| Error::VertexAbsent(v.to_string()))
        })
        .collect::<Result<Vec<_>>>()
        .map(GroupMap::new)
}

/// Index map of an element-level function over a table's vertices.
pub fn map_on_vertices(table: &MetricTable, f: impl Fn(&Element) -> Element) -> Result<GroupMap> {
    table
        .vertices()
        .iter()
        .map(|v| {
            let image = f(v);
            table
                .index_of(&image)
                .ok_or_else(|| Error::VertexAbsent(image.to_string()))
        })
        .collect::<Result<Vec<_>>>()
        .map(GroupMap::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, int};

    fn tables(g: &GeneratedGroup) -> (MetricTable, MetricTable) {
        let v = g.elements().unwrap();
        (
            metric_table(g, v, MetricKind::Word, 50).unwrap(),
            metric_table(g, v, MetricKind::Cardinal, 50).unwrap(),
        )
    }

    #[test]
    fn identity_constant_is_one() {
        let (w, _) = tables(&fixtures::s3());
        assert_eq!(
            bilipschitz_best_constant(&GroupMap::identity(6), &w, &w).unwrap(),
            Lipschitz::Finite(Rational64::from_integer(1))
        );
    }

    #[test]
    fn cyclic_four_word_to_cardinal() {
        let (w, c) = tables(&fixtures::cyclic(4));
        assert_eq!(
            bilipschitz_best_constant(&GroupMap::identity(4), &w, &c).unwrap(),
            Lipschitz::Finite(Rational64::from_integer(2))
        );
    }

    #[test]
    fn non_injective_maps_are_rejected() {
        let (w, c) = tables(&fixtures::cyclic(4));
        assert_eq!(
            bilipschitz_best_constant(&GroupMap::new(vec![0, 0, 1, 2]), &w, &c).unwrap_err(),
            Error::NotInjective(0, 1)
        );
    }

    #[test]
    fn random_maps_respect_generator_count_bound() {
        let s = fixtures::cyclic(6);
        let t = fixtures::cyclic_with(6, &[2, 3]);
        let v = s.elements().unwrap();
        let ds = metric_table(&s, v, MetricKind::Cardinal, 10).unwrap();
        let dt = metric_table(&t, v, MetricKind::Cardinal, 10).unwrap();
        let bound = Rational64::from_integer(3);
        for f in seeded_bijections(6, 50, 7) {
            assert!(bilipschitz_best_constant(&f, &dt, &ds)
                .unwrap()
                .is_at_most(bound));
        }
    }

    #[test]
    fn qi_scan_examples() {
        let (w, c) = tables(&fixtures::s3());
        let big = Rational64::from_integer(10);
        let id = GroupMap::identity(6);
        assert!(qi_violation_scan(&id, big, big, &w, &c)
            .unwrap()
            .violations
            .is_empty());
        let one = Rational64::from_integer(1);
        let zero = Rational64::from_integer(0);
        assert!(qi_violation_scan(&id, one, zero, &w, &w)
            .unwrap()
            .violations
            .is_empty());
        assert!(qi_violation_scan(&id, zero, zero, &w, &w).is_err());

        let z = fixtures::integers();
        let ball = word_ball(&z, &int(0), 100).unwrap();
        let wz = metric_table(&z, &ball, MetricKind::Word, 400).unwrap();
        let cz = metric_table(&z, &ball, MetricKind::Cardinal, 400).unwrap();
        let report = qi_violation_scan(
            &identity_between(&wz, &cz).unwrap(),
            Rational64::from_integer(2),
            Rational64::from_integer(3),
            &wz,
            &cz,
        )
        .unwrap();
        assert!(!report.violations.is_empty());
        assert!(report.violations.iter().all(|v| v.side == Side::Lower));
        assert_eq!(report.from_diameter, 200);
        assert_eq!(report.to_diameter, 1);
    }

    #[test]
    fn integer_growth() {
        let z = fixtures::integers();
        assert_eq!(
            diameter_growth(&z, MetricKind::Word, &[1, 2, 3], 100).unwrap(),
            vec![(1, 2), (2, 4), (3, 6)]
        );
        assert_eq!(
            diameter_growth(&z, MetricKind::Cardinal, &[1, 5, 20], 100).unwrap(),
            vec![(1, 1), (5, 1), (20, 1)]
        );
        assert!(diameter_growth(&z, MetricKind::Word, &[2, 1], 100).is_err());
    }

    #[test]
    fn lattice_growth() {
        assert_eq!(basis_sum_profile(4).unwrap(), vec![1, 2, 3, 4]);
        // Differences of ball points reach support min(2r, k).
        let z3 = GeneratedGroup::standard_lattice(3);
        assert_eq!(
            diameter_growth(&z3, MetricKind::Cardinal, &[1, 2], 10).unwrap(),
            vec![(1, 2), (2, 3)]
        );
    }

    #[test]
    fn seeded_maps_are_reproducible() {
        assert_eq!(seeded_bijections(8, 5, 42), seeded_bijections(8, 5, 42));
        assert!(seeded_bijections(8, 5, 42)
            .iter()
            .all(GroupMap::is_bijective));
    }
}
