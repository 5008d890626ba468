//! Word and cardinal norms, their metrics, distance tables and open balls.

use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    compose_unchecked, hermite_normal_form, inverse_unchecked, with_inverses, Backend, Element,
    GeneratedGroup, HermiteForm, IntVector, IntegerMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Word,
    Cardinal,
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricKind::Word => "word",
            MetricKind::Cardinal => "cardinal",
        })
    }
}

enum Subgroup {
    Finite(HashSet<Element>),
    Lattice(HermiteForm),
}

/// Memoizing evaluator for the cardinal norm of one generated group.
///
/// Subsets of the generating sequence are tried by increasing size and
/// lexicographically by generator index within a size; the subgroup each
/// subset generates is cached under its bitmask.
pub struct CardinalNorms<'g> {
    group: &'g GeneratedGroup,
    subgroups: HashMap<u64, Subgroup>,
    norms: HashMap<Element, u32>,
}

impl<'g> CardinalNorms<'g> {
    pub fn new(group: &'g GeneratedGroup) -> Result<Self> {
        let n = group.generators().len();
        if n > 63 {
            return Err(Error::TooManyGenerators(n));
        }
        Ok(CardinalNorms {
            group,
            subgroups: HashMap::new(),
            norms: HashMap::new(),
        })
    }

    fn subgroup(&mut self, subset: &[usize]) -> Result<&Subgroup> {
        let mask = subset.iter().fold(0u64, |m, &i| m | (1 << i));
        if !self.subgroups.contains_key(&mask) {
            let gens: Vec<Element> = subset
                .iter()
                .map(|&i| self.group.generators()[i].clone())
                .collect();
            let sub = match self.group.backend() {
                Backend::FinitePermutation { .. } => {
                    Subgroup::Finite(self.group.closure(&gens)?.into_iter().collect())
                }
                Backend::FreeAbelian { rank } => {
                    let columns: Vec<IntVector> = gens
                        .iter()
                        .map(|g| g.as_vector().expect("abelian generators").clone())
                        .collect();
                    Subgroup::Lattice(hermite_normal_form(&IntegerMatrix::from_columns(
                        rank, &columns,
                    )?))
                }
            };
            self.subgroups.insert(mask, sub);
        }
        Ok(&self.subgroups[&mask])
    }

    pub fn norm(&mut self, g: &Element) -> Result<u32> {
        self.group.backend().check(g)?;
        if !self.group.contains(g) {
            return Err(Error::mismatch("the generated group", g));
        }
        if let Some(&n) = self.norms.get(g) {
            return Ok(n);
        }
        let n = self.group.generators().len();
        for size in 0..=n {
            for subset in (0..n).combinations(size) {
                let hit = match self.subgroup(&subset)? {
                    Subgroup::Finite(set) => set.contains(g),
                    Subgroup::Lattice(hnf) => {
                        hnf.contains(g.as_vector().expect("abelian element").entries())?
                    }
                };
                if hit {
                    self.norms.insert(g.clone(), size as u32);
                    return Ok(size as u32);
                }
            }
        }
        unreachable!("the generating sequence generates every group element")
    }

    pub fn distance(&mut self, g: &Element, h: &Element) -> Result<u32> {
        let diff = self.group.compose(&self.group.inverse(g)?, h)?;
        self.norm(&diff)
    }
}

/// Lazily grown BFS from the identity over `S ∪ S⁻¹`.
pub struct WordNorms<'g> {
    group: &'g GeneratedGroup,
    steps: Vec<Element>,
    dist: HashMap<Element, u32>,
    frontier: Vec<Element>,
    radius: u32,
}

impl<'g> WordNorms<'g> {
    pub fn new(group: &'g GeneratedGroup) -> Self {
        let e = group.identity();
        WordNorms {
            group,
            steps: with_inverses(group.generators()),
            dist: HashMap::from([(e.clone(), 0)]),
            frontier: vec![e],
            radius: 0,
        }
    }

    fn grow(&mut self) {
        let mut next = Vec::new();
        for g in &self.frontier {
            for s in &self.steps {
                let h = compose_unchecked(g, s);
                if !self.dist.contains_key(&h) {
                    self.dist.insert(h.clone(), self.radius + 1);
                    next.push(h);
                }
            }
        }
        self.frontier = next;
        self.radius += 1;
    }

    pub fn norm(&mut self, g: &Element, radius_cap: u32) -> Result<u32> {
        self.group.backend().check(g)?;
        loop {
            if let Some(&d) = self.dist.get(g) {
                return Ok(d);
            }
            if self.frontier.is_empty() || self.radius >= radius_cap {
                return Err(Error::RadiusCapExceeded {
                    element: g.to_string(),
                    cap: radius_cap,
                });
            }
            self.grow();
        }
    }

    pub fn distance(&mut self, g: &Element, h: &Element, radius_cap: u32) -> Result<u32> {
        let diff = self.group.compose(&self.group.inverse(g)?, h)?;
        self.norm(&diff, radius_cap)
    }

    /// Elements of word norm at most `radius`, in BFS order.
    pub fn ball(&mut self, radius: u32) -> Vec<Element> {
        while self.radius < radius && !self.frontier.is_empty() {
            self.grow();
        }
        let mut out: Vec<(&Element, u32)> = self
            .dist
            .iter()
            .filter(|&(_, &d)| d <= radius)
            .map(|(g, &d)| (g, d))
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(b.0)));
        out.into_iter().map(|(g, _)| g.clone()).collect()
    }
}

/// `min |A|` over subsets `A` of the generating sequence with `g ∈ <A>`.
pub fn cardinal_norm(group: &GeneratedGroup, g: &Element) -> Result<u32> {
    CardinalNorms::new(group)?.norm(g)
}

/// `d_C(g, h) = ||g⁻¹h||`.
pub fn cardinal_distance(group: &GeneratedGroup, g: &Element, h: &Element) -> Result<u32> {
    CardinalNorms::new(group)?.distance(g, h)
}

pub fn word_norm(group: &GeneratedGroup, g: &Element, radius_cap: u32) -> Result<u32> {
    WordNorms::new(group).norm(g, radius_cap)
}

pub fn word_distance(
    group: &GeneratedGroup,
    g: &Element,
    h: &Element,
    radius_cap: u32,
) -> Result<u32> {
    WordNorms::new(group).distance(g, h, radius_cap)
}

/// The closed word ball `{center · w : ||w||_W <= radius}`, ordered by
/// distance from the center and then by element.
pub fn word_ball(group: &GeneratedGroup, center: &Element, radius: u32) -> Result<Vec<Element>> {
    group.backend().check(center)?;
    Ok(WordNorms::new(group)
        .ball(radius)
        .into_iter()
        .map(|w| compose_unchecked(center, &w))
        .collect())
}

/// Pairwise distances over an indexed vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricTable {
    kind: MetricKind,
    generators: Vec<Element>,
    vertices: Vec<Element>,
    #[serde(serialize_with = "serialize_rows")]
    distances: Vec<u32>,
    #[serde(skip)]
    index: HashMap<Element, usize>,
}

fn serialize_rows<S: serde::Serializer>(d: &[u32], s: S) -> std::result::Result<S::Ok, S::Error> {
    let n = (d.len() as f64).sqrt().round() as usize;
    let rows: Vec<&[u32]> = if n == 0 {
        Vec::new()
    } else {
        d.chunks(n).collect()
    };
    rows.serialize(s)
}

/// A violated metric-table invariant with its witnessing vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TableViolation {
    NonzeroDiagonal(usize),
    ZeroOffDiagonal(usize, usize),
    Asymmetric(usize, usize),
    Triangle(usize, usize, usize),
    AboveGeneratorCount(usize, usize),
}

impl MetricTable {
    pub fn from_parts(
        kind: MetricKind,
        generators: Vec<Element>,
        vertices: Vec<Element>,
        distances: Vec<u32>,
    ) -> Result<Self> {
        let n = vertices.len();
        if distances.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: distances.len(),
            });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::RepeatedVertex(v.to_string()));
            }
        }
        Ok(MetricTable {
            kind,
            generators,
            vertices,
            distances,
            index,
        })
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.distances[i * self.vertices.len() + j]
    }

    /// Overwrites one entry. Meant for fault-injection tests; the result may
    /// no longer be a metric.
    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        let n = self.vertices.len();
        self.distances[i * n + j] = value;
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn distance(&self, g: &Element, h: &Element) -> Option<u32> {
        Some(self.get(self.index_of(g)?, self.index_of(h)?))
    }

    pub fn diameter(&self) -> u32 {
        self.distances.iter().copied().max().unwrap_or(0)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.distances.chunks(self.vertices.len().max(1))
    }

    /// Every violated invariant: zero diagonal, positivity off the diagonal,
    /// symmetry, the triangle inequality, and `d <= |S|` for cardinal tables.
    pub fn violations(&self) -> Vec<TableViolation> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            if self.get(i, i) != 0 {
                out.push(TableViolation::NonzeroDiagonal(i));
            }
            for j in 0..n {
                if i != j && self.get(i, j) == 0 {
                    out.push(TableViolation::ZeroOffDiagonal(i, j));
                }
                if i < j && self.get(i, j) != self.get(j, i) {
                    out.push(TableViolation::Asymmetric(i, j));
                }
                if self.kind == MetricKind::Cardinal
                    && self.get(i, j) as usize > self.generators.len()
                {
                    out.push(TableViolation::AboveGeneratorCount(i, j));
                }
            }
        }
        for (i, j, k) in (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .map(|((i, j), k)| (i, j, k))
        {
            if self.get(i, k) > self.get(i, j) + self.get(j, k) {
                out.push(TableViolation::Triangle(i, j, k));
            }
        }
        out
    }
}

pub fn metric_table(
    group: &GeneratedGroup,
    vertices: &[Element],
    kind: MetricKind,
    radius_cap: u32,
) -> Result<MetricTable> {
    for v in vertices {
        group.backend().check(v)?;
        if !group.contains(v) {
            return Err(Error::mismatch("the generated group", v));
        }
    }
    let inverses: Vec<Element> = vertices.iter().map(inverse_unchecked).collect();
    let n = vertices.len();
    let mut distances = Vec::with_capacity(n * n);
    match kind {
        MetricKind::Cardinal => {
            let mut norms = CardinalNorms::new(group)?;
            for gi in &inverses {
                for h in vertices {
                    distances.push(norms.norm(&compose_unchecked(gi, h))?);
                }
            }
        }
        MetricKind::Word => {
            let mut norms = WordNorms::new(group);
            for gi in &inverses {
                for h in vertices {
                    distances.push(norms.norm(&compose_unchecked(gi, h), radius_cap)?);
                }
            }
        }
    }
    MetricTable::from_parts(
        kind,
        group.generators().to_vec(),
        vertices.to_vec(),
        distances,
    )
}

/// Largest entry of the table; 0 for a singleton.
pub fn diameter(table: &MetricTable) -> u32 {
    table.diameter()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSpec {
    pub center: Element,
    pub radius: Rational64,
    pub kind: MetricKind,
}

impl BallSpec {
    pub fn new(center: Element, radius: Rational64, kind: MetricKind) -> Result<Self> {
        if radius < Rational64::from_integer(0) {
            return Err(Error::NegativeRadius);
        }
        Ok(BallSpec {
            center,
            radius,
            kind,
        })
    }
}

/// The open ball `{y ∈ universe : d(center, y) < radius}`, in universe order.
pub fn ball(
    group: &GeneratedGroup,
    spec: &BallSpec,
    universe: &[Element],
    radius_cap: u32,
) -> Result<Vec<Element>> {
    if !universe.contains(&spec.center) {
        return Err(Error::VertexAbsent(spec.center.to_string()));
    }
    let mut cardinal = CardinalNorms::new(group)?;
    let mut word = WordNorms::new(group);
    let mut out = Vec::new();
    for y in universe {
        let d = match spec.kind {
            MetricKind::Cardinal => cardinal.distance(&spec.center, y)?,
            MetricKind::Word => word.distance(&spec.center, y, radius_cap)?,
        };
        if Rational64::from_integer(i64::from(d)) < spec.radius {
            out.push(y.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, int, perm};

    #[test]
    fn s3_transposition_norms() {
        let t13 = perm(3, "(1 3)");
        assert_eq!(cardinal_norm(&fixtures::s3(), &t13).unwrap(), 2);
        assert_eq!(cardinal_norm(&fixtures::s3_t(), &t13).unwrap(), 1);
        let s3 = fixtures::s3();
        assert_eq!(cardinal_norm(&s3, &s3.identity()).unwrap(), 0);
    }

    #[test]
    fn lattice_basis_sum_norm() {
        let z3 = GeneratedGroup::standard_lattice(3);
        assert_eq!(cardinal_norm(&z3, &fixtures::basis_sum(3, 3)).unwrap(), 3);
    }

    #[test]
    fn cardinal_distances() {
        let z = fixtures::integers();
        assert_eq!(cardinal_distance(&z, &int(3), &int(7)).unwrap(), 1);
        assert_eq!(cardinal_distance(&z, &int(3), &int(3)).unwrap(), 0);
        let z6 = fixtures::cyclic_with(6, &[2, 3]);
        let (zero, one) = (fixtures::residue(6, 0), fixtures::residue(6, 1));
        assert_eq!(cardinal_distance(&z6, &zero, &one).unwrap(), 2);
    }

    #[test]
    fn word_norms() {
        let s3 = fixtures::s3();
        assert_eq!(word_norm(&s3, &perm(3, "(1 3)"), 10).unwrap(), 2);
        for s in s3.generators() {
            assert_eq!(word_norm(&s3, s, 10).unwrap(), 1);
        }
        let z = fixtures::integers();
        assert_eq!(word_norm(&z, &int(5), 10).unwrap(), 5);
        assert_eq!(word_distance(&z, &int(3), &int(5), 10).unwrap(), 2);
        assert_eq!(word_distance(&z, &int(4), &int(4), 10).unwrap(), 0);
        assert!(matches!(
            word_norm(&z, &int(50), 10),
            Err(Error::RadiusCapExceeded { cap: 10, .. })
        ));
    }

    #[test]
    fn complete_generating_set_gives_unit_distances() {
        let g = fixtures::s3_complete();
        let t = metric_table(&g, g.elements().unwrap(), MetricKind::Word, 4).unwrap();
        for i in 0..t.len() {
            for j in 0..t.len() {
                assert_eq!(t.get(i, j), u32::from(i != j));
            }
        }
        assert_eq!(diameter(&t), 1);
    }

    #[test]
    fn s3_cardinal_table() {
        let g = fixtures::s3();
        let t = metric_table(&g, g.elements().unwrap(), MetricKind::Cardinal, 4).unwrap();
        assert_eq!(diameter(&t), 2);
        assert!(t.violations().is_empty());
    }

    #[test]
    fn singleton_table() {
        let g = fixtures::s3();
        let t = metric_table(&g, &[g.identity()], MetricKind::Cardinal, 4).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(0, 0), 0);
        assert_eq!(diameter(&t), 0);
    }

    #[test]
    fn repeated_vertices_rejected() {
        let g = fixtures::s3();
        let e = g.identity();
        assert!(matches!(
            metric_table(&g, &[e.clone(), e], MetricKind::Word, 4),
            Err(Error::RepeatedVertex(_))
        ));
    }

    #[test]
    fn open_balls() {
        let z = fixtures::integers();
        let universe = word_ball(&z, &int(0), 5).unwrap();
        let half = BallSpec::new(int(2), Rational64::new(1, 2), MetricKind::Cardinal).unwrap();
        assert_eq!(ball(&z, &half, &universe, 20).unwrap(), vec![int(2)]);
        let zero = BallSpec::new(int(2), Rational64::from_integer(0), MetricKind::Word).unwrap();
        assert!(ball(&z, &zero, &universe, 20).unwrap().is_empty());
        let two = BallSpec::new(int(0), Rational64::from_integer(2), MetricKind::Cardinal).unwrap();
        assert_eq!(ball(&z, &two, &universe, 20).unwrap(), universe);
        assert!(BallSpec::new(int(0), Rational64::new(-1, 2), MetricKind::Word).is_err());
    }

    #[test]
    fn word_ball_is_interval() {
        let z = fixtures::integers();
        let mut b = word_ball(&z, &int(0), 2).unwrap();
        b.sort();
        assert_eq!(b, (-2..=2).map(int).collect::<Vec<_>>());
    }
}
