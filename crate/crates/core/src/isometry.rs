//! Left translations, color-preserving and color-permuting automorphisms of
//! Cayley color digraphs, and metric isometries found by exhaustive search.

use itertools::Itertools;
use serde::Serialize;

use crate::cayley::ColorDigraph;
use crate::error::{Error, Result};
use crate::group::{automorphisms, compose_unchecked, inverse_unchecked, Element, GeneratedGroup};
use crate::map::GroupMap;
use crate::metrics::{metric_table, MetricKind, MetricTable};

/// Default vertex-count ceiling for exhaustive bijection searches.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 8;

/// A permutation of color indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ColorPermutation(Vec<usize>);

impl ColorPermutation {
    pub fn new(images: Vec<usize>) -> Option<Self> {
        GroupMap::new(images.clone())
            .is_bijective()
            .then_some(ColorPermutation(images))
    }

    pub fn identity(n: usize) -> Self {
        ColorPermutation((0..n).collect())
    }

    pub fn apply(&self, color: usize) -> usize {
        self.0[color]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }
}

fn check_bound(size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(Error::BoundExceeded { size, bound });
    }
    Ok(())
}

fn index_in(group: &GeneratedGroup, g: &Element) -> usize {
    group
        .index_of(g)
        .expect("products of group elements stay in the group")
}

/// `L_a : h ↦ a·h` on the element index of a finite group.
pub fn left_translation(group: &GeneratedGroup, a: &Element) -> Result<GroupMap> {
    let elements = group.elements()?;
    if group.index_of(a).is_none() {
        group.backend().check(a)?;
        return Err(Error::VertexAbsent(a.to_string()));
    }
    Ok(GroupMap::new(
        elements
            .iter()
            .map(|h| index_in(group, &compose_unchecked(a, h)))
            .collect(),
    ))
}

/// Automorphisms `τ` of `G` with `τ(S) = S` as sets.
pub fn aut_setwise_s(group: &GeneratedGroup, bound: usize) -> Result<Vec<GroupMap>> {
    let generator_indices: Vec<usize> = group
        .generators()
        .iter()
        .map(|s| index_in(group, s))
        .collect();
    Ok(automorphisms(group, bound)?
        .into_iter()
        .filter(|tau| {
            generator_indices
                .iter()
                .all(|&s| generator_indices.contains(&tau.apply(s)))
        })
        .collect())
}

fn color_matrix(d: &ColorDigraph) -> Vec<Vec<Option<usize>>> {
    let n = d.vertices().len();
    let mut m = vec![vec![None; n]; n];
    for a in d.arcs() {
        m[a.tail][a.head] = Some(a.color);
    }
    m
}

/// Depth-first search over bijections of `0..n`; `consistent(images, x, y)`
/// decides whether `x ↦ y` fits the partial assignment `images` of
/// `0..x`.
fn search_bijections(
    n: usize,
    mut consistent: impl FnMut(&[usize], usize, usize) -> bool,
) -> Vec<GroupMap> {
    fn go(
        n: usize,
        images: &mut Vec<usize>,
        used: &mut [bool],
        consistent: &mut dyn FnMut(&[usize], usize, usize) -> bool,
        out: &mut Vec<GroupMap>,
    ) {
        let x = images.len();
        if x == n {
            out.push(GroupMap::new(images.clone()));
            return;
        }
        for y in 0..n {
            if used[y] || !consistent(images, x, y) {
                continue;
            }
            used[y] = true;
            images.push(y);
            go(n, images, used, consistent, out);
            images.pop();
            used[y] = false;
        }
    }
    let mut out = Vec::new();
    go(
        n,
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
        &mut consistent,
        &mut out,
    );
    out
}

/// All vertex bijections that carry each arc to an arc of the same color.
pub fn color_preserving_auts_bruteforce(d: &ColorDigraph, bound: usize) -> Result<Vec<GroupMap>> {
    let n = d.vertices().len();
    check_bound(n, bound)?;
    let colors = color_matrix(d);
    Ok(search_bijections(n, |images, x, y| {
        images
            .iter()
            .enumerate()
            .chain(std::iter::once((x, &y)))
            .all(|(u, &fu)| colors[u][x] == colors[fu][y] && colors[x][u] == colors[y][fu])
    }))
}

/// The color permutation `σ` with `α(g·c) = α(g)·σ(c)` for every arc, or
/// `None` when `α` is not a color-permuting automorphism.
pub fn check_color_permuting(d: &ColorDigraph, alpha: &GroupMap) -> Option<ColorPermutation> {
    let n = d.vertices().len();
    if alpha.len() != n || !alpha.is_bijective() {
        return None;
    }
    let mut sigma = Vec::with_capacity(d.colors());
    for c in 0..d.colors() {
        let Some(arc) = d.arcs().iter().find(|a| a.color == c) else {
            // A color with no arcs cannot be matched.
            return None;
        };
        sigma.push(d.arc_color(alpha.apply(arc.tail), alpha.apply(arc.head))?);
    }
    let sigma = ColorPermutation::new(sigma)?;
    d.arcs()
        .iter()
        .all(|a| d.head(alpha.apply(a.tail), sigma.apply(a.color)) == Some(alpha.apply(a.head)))
        .then_some(sigma)
}

fn ensure_group_order(group: &GeneratedGroup, d: &ColorDigraph) -> Result<()> {
    let elements = group.elements()?;
    if d.truncation().is_some() || d.vertices() != elements {
        return Err(Error::IndexMismatch {
            expected: elements.len(),
            found: d.vertices().len(),
        });
    }
    Ok(())
}

/// The maps `L_a ∘ τ` for `a ∈ G` and `τ ∈ Aut(G, S)`, each with the color
/// permutation induced by `τ` on `S`. Ordered by `τ`, then `a`.
pub fn color_permuting_auts(
    group: &GeneratedGroup,
    d: &ColorDigraph,
    aut_bound: usize,
) -> Result<Vec<(GroupMap, ColorPermutation)>> {
    ensure_group_order(group, d)?;
    let elements = group.elements()?;
    let mut out = Vec::new();
    for tau in aut_setwise_s(group, aut_bound)? {
        let sigma = group
            .generators()
            .iter()
            .map(|s| {
                let image = &elements[tau.apply(index_in(group, s))];
                group
                    .generators()
                    .iter()
                    .position(|t| t == image)
                    .expect("tau fixes S setwise")
            })
            .collect();
        let sigma = ColorPermutation::new(sigma).expect("tau permutes S");
        for a in elements {
            let map = left_translation(group, a)?.after(&tau);
            out.push((map, sigma.clone()));
        }
    }
    Ok(out)
}

/// Every vertex bijection that passes [`check_color_permuting`], found by
/// filtering all `n!` bijections.
pub fn color_permuting_auts_bruteforce(
    d: &ColorDigraph,
    bound: usize,
) -> Result<Vec<(GroupMap, ColorPermutation)>> {
    let n = d.vertices().len();
    check_bound(n, bound)?;
    Ok((0..n)
        .permutations(n)
        .filter_map(|images| {
            let alpha = GroupMap::new(images);
            check_color_permuting(d, &alpha).map(|sigma| (alpha, sigma))
        })
        .collect())
}

fn check_map_shape(f: &GroupMap, from: &MetricTable, to: &MetricTable) -> Result<()> {
    if f.len() != from.len() {
        return Err(Error::IndexMismatch {
            expected: from.len(),
            found: f.len(),
        });
    }
    if let Some(&bad) = f.images().iter().find(|&&y| y >= to.len()) {
        return Err(Error::IndexMismatch {
            expected: to.len(),
            found: bad + 1,
        });
    }
    Ok(())
}

/// First pair `(x, y)` with `to(f x, f y) != from(x, y)`.
pub fn first_distortion(
    f: &GroupMap,
    from: &MetricTable,
    to: &MetricTable,
) -> Result<Option<(usize, usize)>> {
    check_map_shape(f, from, to)?;
    let n = from.len();
    Ok((0..n)
        .cartesian_product(0..n)
        .find(|&(x, y)| to.get(f.apply(x), f.apply(y)) != from.get(x, y)))
}

pub fn is_isometry(f: &GroupMap, from: &MetricTable, to: &MetricTable) -> Result<bool> {
    Ok(first_distortion(f, from, to)?.is_none())
}

/// All self-bijections of the table's vertex set that preserve distances.
pub fn isometry_group_bruteforce(t: &MetricTable, bound: usize) -> Result<Vec<GroupMap>> {
    isometries_between(t, t, bound)
}

/// All bijections `f` with `to(f x, f y) = from(x, y)`, by pruned search.
pub fn isometries_between(
    from: &MetricTable,
    to: &MetricTable,
    bound: usize,
) -> Result<Vec<GroupMap>> {
    let n = from.len();
    check_bound(n, bound)?;
    if to.len() != n {
        return Ok(Vec::new());
    }
    Ok(search_bijections(n, |images, x, y| {
        images
            .iter()
            .enumerate()
            .chain(std::iter::once((x, &y)))
            .all(|(u, &fu)| to.get(fu, y) == from.get(u, x))
    }))
}

/// Checks all `n!` bijections without pruning and returns those that are
/// isometries from `from` to `to`.
pub fn isometries_exhaustive(
    from: &MetricTable,
    to: &MetricTable,
    bound: usize,
) -> Result<Vec<GroupMap>> {
    let n = from.len();
    check_bound(n, bound)?;
    if to.len() != n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for images in (0..n).permutations(n) {
        let f = GroupMap::new(images);
        if is_isometry(&f, from, to)? {
            out.push(f);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub fixes_identity: bool,
    pub generators_into_s_union_inverse: bool,
    pub nonexpansive: bool,
    pub reduced_is_isometry: bool,
}

impl DecompositionReport {
    pub fn all_pass(&self) -> bool {
        self.fixes_identity
            && self.generators_into_s_union_inverse
            && self.nonexpansive
            && self.reduced_is_isometry
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `a = T(e)`.
    pub translation: Element,
    /// `L_{a⁻¹} ∘ T`.
    pub reduced: GroupMap,
    pub report: DecompositionReport,
}

/// Splits an isometry `T : (G, d_C) → (G, d_W)` as `L_a ∘ T̃`.
///
/// The isometry precondition is checked first; a failure reports the first
/// pair whose distances disagree.
pub fn decompose_isometry(
    t: &GroupMap,
    group: &GeneratedGroup,
    radius_cap: u32,
) -> Result<Decomposition> {
    let elements = group.elements()?;
    let cardinal = metric_table(group, elements, MetricKind::Cardinal, radius_cap)?;
    let word = metric_table(group, elements, MetricKind::Word, radius_cap)?;
    decompose_with_tables(t, group, &cardinal, &word)
}

/// [`decompose_isometry`] with precomputed tables over `group.elements()`.
pub fn decompose_with_tables(
    t: &GroupMap,
    group: &GeneratedGroup,
    cardinal: &MetricTable,
    word: &MetricTable,
) -> Result<Decomposition> {
    let elements = group.elements()?;
    if let Some((x, y)) = first_distortion(t, cardinal, word)? {
        return Err(Error::DecompositionInvalid {
            x: elements[x].to_string(),
            y: elements[y].to_string(),
            cardinal: cardinal.get(x, y),
            word: word.get(t.apply(x), t.apply(y)),
        });
    }
    let identity = index_in(group, &group.identity());
    let translation = elements[t.apply(identity)].clone();
    let reduced = left_translation(group, &inverse_unchecked(&translation))?.after(t);

    let steps: Vec<usize> = group
        .generators()
        .iter()
        .flat_map(|s| [index_in(group, s), index_in(group, &inverse_unchecked(s))])
        .collect();
    let n = elements.len();
    let pairs = || (0..n).cartesian_product(0..n);
    let report = DecompositionReport {
        fixes_identity: reduced.apply(identity) == identity,
        generators_into_s_union_inverse: group
            .generators()
            .iter()
            .all(|s| steps.contains(&reduced.apply(index_in(group, s)))),
        nonexpansive: pairs()
            .all(|(x, y)| word.get(reduced.apply(x), reduced.apply(y)) <= word.get(x, y)),
        reduced_is_isometry: is_isometry(&reduced, cardinal, word)?,
    };
    Ok(Decomposition {
        translation,
        reduced,
        report,
    })
}
