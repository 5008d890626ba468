//! Group backends: finite permutation groups and free abelian groups `Z^k`.

mod automorphism;
mod element;
mod lattice;

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;

pub use automorphism::{automorphisms, DEFAULT_AUTOMORPHISM_BOUND};
pub use element::{Element, IntVector, Permutation};
pub use lattice::{hermite_normal_form, lattice_membership, HermiteForm, IntegerMatrix};

use crate::error::{Error, Result};

/// Largest finite group order that will be enumerated.
pub const ORDER_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    FinitePermutation { degree: usize },
    FreeAbelian { rank: usize },
}

impl Backend {
    pub fn is_finite(&self) -> bool {
        matches!(self, Backend::FinitePermutation { .. })
    }

    pub fn identity(&self) -> Element {
        match *self {
            Backend::FinitePermutation { degree } => Permutation::identity(degree).into(),
            Backend::FreeAbelian { rank } => IntVector::zero(rank).into(),
        }
    }

    fn describe(&self) -> String {
        match *self {
            Backend::FinitePermutation { degree } => format!("permutation(degree {degree})"),
            Backend::FreeAbelian { rank } => format!("free abelian(rank {rank})"),
        }
    }

    pub fn check(&self, g: &Element) -> Result<()> {
        let ok = match (self, g) {
            (Backend::FinitePermutation { degree }, Element::Perm(p)) => p.degree() == *degree,
            (Backend::FreeAbelian { rank }, Element::Vector(v)) => v.rank() == *rank,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::mismatch(self.describe(), g))
        }
    }
}

/// A group together with an ordered, duplicate-free generating sequence
/// that excludes the identity.
///
/// Finite backends cache the full element list in BFS order from the
/// identity, exploring `s_0, s_0^-1, s_1, s_1^-1, ..` at each vertex.
#[derive(Debug, Clone)]
pub struct GeneratedGroup {
    backend: Backend,
    generators: Vec<Element>,
    elements: Option<Vec<Element>>,
    index: HashMap<Element, usize>,
}

impl GeneratedGroup {
    pub fn new(backend: Backend, generators: Vec<Element>) -> Result<Self> {
        let mut first_seen: HashMap<&Element, usize> = HashMap::new();
        for (i, s) in generators.iter().enumerate() {
            backend.check(s)?;
            if s.is_identity() {
                return Err(Error::IdentityGenerator { index: i });
            }
            if let Some(&first) = first_seen.get(s) {
                return Err(Error::DuplicateGenerator { index: i, first });
            }
            first_seen.insert(s, i);
        }
        let mut group = GeneratedGroup {
            backend,
            generators,
            elements: None,
            index: HashMap::new(),
        };
        match backend {
            Backend::FinitePermutation { .. } => {
                let elements = group.bfs_closure(&group.generators)?;
                group.index = elements
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (g.clone(), i))
                    .collect();
                group.elements = Some(elements);
            }
            Backend::FreeAbelian { rank } => {
                let columns: Vec<IntVector> = group
                    .generators
                    .iter()
                    .map(|g| g.as_vector().expect("checked backend").clone())
                    .collect();
                let hnf = hermite_normal_form(&IntegerMatrix::from_columns(rank, &columns)?);
                match hnf.index() {
                    None => {
                        return Err(Error::NotGenerating {
                            rank,
                            reason: format!("lattice rank {} < {rank}", hnf.rank()),
                        })
                    }
                    Some(idx) if idx != BigInt::from(1) => {
                        return Err(Error::NotGenerating {
                            rank,
                            reason: format!("lattice index {idx} != 1"),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(group)
    }

    pub fn permutation(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::new(
            Backend::FinitePermutation { degree },
            generators.into_iter().map(Element::Perm).collect(),
        )
    }

    pub fn free_abelian(rank: usize, generators: Vec<IntVector>) -> Result<Self> {
        Self::new(
            Backend::FreeAbelian { rank },
            generators.into_iter().map(Element::Vector).collect(),
        )
    }

    /// `Z^k` with its standard basis.
    pub fn standard_lattice(rank: usize) -> Self {
        Self::free_abelian(rank, (0..rank).map(|i| IntVector::unit(rank, i)).collect())
            .expect("standard basis generates")
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn is_finite(&self) -> bool {
        self.backend.is_finite()
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn identity(&self) -> Element {
        self.backend.identity()
    }

    pub fn contains(&self, g: &Element) -> bool {
        match self.backend {
            Backend::FinitePermutation { .. } => self.index.contains_key(g),
            Backend::FreeAbelian { .. } => self.backend.check(g).is_ok(),
        }
    }

    fn check_member(&self, g: &Element) -> Result<()> {
        self.backend.check(g)?;
        if !self.contains(g) {
            return Err(Error::mismatch(
                format!(
                    "{} generated by {:?}",
                    self.backend.describe(),
                    self.labels()
                ),
                g,
            ));
        }
        Ok(())
    }

    fn labels(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }

    /// `a` then `b` for permutations; vector sum for the abelian backend.
    pub fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        self.backend.check(a)?;
        self.backend.check(b)?;
        Ok(compose_unchecked(a, b))
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.backend.check(a)?;
        Ok(inverse_unchecked(a))
    }

    pub fn elements(&self) -> Result<&[Element]> {
        self.elements.as_deref().ok_or(Error::InfiniteEnumeration)
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    /// Position of `g` in [`elements`](Self::elements).
    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Order of a finite-backend element.
    pub fn element_order(&self, g: &Element) -> Result<usize> {
        self.check_member(g)?;
        if !self.is_finite() {
            return Err(Error::UnsupportedBackend("element_order"));
        }
        let mut power = g.clone();
        let mut n = 1;
        while !power.is_identity() {
            power = compose_unchecked(&power, g);
            n += 1;
        }
        Ok(n)
    }

    /// `<A>` for a finite backend, in BFS order from the identity.
    pub fn closure(&self, subset: &[Element]) -> Result<Vec<Element>> {
        if !self.is_finite() {
            return Err(Error::UnsupportedBackend("closure"));
        }
        for a in subset {
            self.check_member(a)?;
        }
        self.bfs_closure(subset)
    }

    fn bfs_closure(&self, subset: &[Element]) -> Result<Vec<Element>> {
        let steps = with_inverses(subset);
        let start = self.identity();
        let mut seen: HashSet<Element> = HashSet::from([start.clone()]);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(g) = queue.pop_front() {
            for s in &steps {
                let h = compose_unchecked(&g, s);
                if seen.insert(h.clone()) {
                    if order.len() >= ORDER_LIMIT {
                        return Err(Error::GroupTooLarge { limit: ORDER_LIMIT });
                    }
                    order.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(order)
    }

    /// Whether `g` lies in the subgroup generated by `subset`, which must be
    /// drawn from the generating sequence. `<{}>` is the trivial subgroup.
    pub fn subgroup_contains(&self, subset: &[Element], g: &Element) -> Result<bool> {
        self.backend.check(g)?;
        for a in subset {
            self.backend.check(a)?;
            if !self.generators.contains(a) {
                return Err(Error::NotAGenerator(a.to_string()));
            }
        }
        match self.backend {
            Backend::FinitePermutation { .. } => {
                Ok(self.bfs_closure(subset)?.iter().any(|h| h == g))
            }
            Backend::FreeAbelian { rank } => {
                let columns: Vec<IntVector> = subset
                    .iter()
                    .map(|a| a.as_vector().expect("checked backend").clone())
                    .collect();
                let basis = IntegerMatrix::from_columns(rank, &columns)?;
                lattice_membership(&basis, g.as_vector().expect("checked backend").entries())
            }
        }
    }
}

pub(crate) fn compose_unchecked(a: &Element, b: &Element) -> Element {
    match (a, b) {
        (Element::Perm(p), Element::Perm(q)) => Element::Perm(p.then(q)),
        (Element::Vector(u), Element::Vector(v)) => Element::Vector(u.add(v)),
        _ => panic!("mixed backends: {a} and {b}"),
    }
}

pub(crate) fn inverse_unchecked(a: &Element) -> Element {
    match a {
        Element::Perm(p) => Element::Perm(p.inverse()),
        Element::Vector(v) => Element::Vector(v.neg()),
    }
}

/// `s_0, s_0^-1, s_1, s_1^-1, ..` with repeats dropped.
pub(crate) fn with_inverses(subset: &[Element]) -> Vec<Element> {
    let mut out: Vec<Element> = Vec::with_capacity(subset.len() * 2);
    for s in subset {
        for t in [s.clone(), inverse_unchecked(s)] {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s3_has_six_elements() {
        let g = fixtures::s3();
        assert_eq!(g.elements().unwrap().len(), 6);
        assert_eq!(g.elements().unwrap()[0], g.identity());
    }

    #[test]
    fn trivial_group_enumerates_identity() {
        let g = GeneratedGroup::permutation(1, vec![]).unwrap();
        assert_eq!(g.elements().unwrap(), &[g.identity()]);
    }

    #[test]
    fn abelian_enumeration_fails() {
        let g = GeneratedGroup::standard_lattice(2);
        assert_eq!(g.elements().unwrap_err(), Error::InfiniteEnumeration);
        assert!(matches!(g.closure(&[]), Err(Error::UnsupportedBackend(_))));
    }

    #[test]
    fn compose_and_inverse() {
        let g = fixtures::s3();
        let a = fixtures::perm(3, "(1 2)");
        let b = fixtures::perm(3, "(1 2 3)");
        assert_eq!(g.compose(&a, &b).unwrap(), fixtures::perm(3, "(1 3)"));
        assert_eq!(g.compose(&a, &g.identity()).unwrap(), a);
        assert_eq!(g.inverse(&b).unwrap(), fixtures::perm(3, "(1 3 2)"));
        assert_eq!(g.inverse(&g.identity()).unwrap(), g.identity());

        let z = GeneratedGroup::standard_lattice(2);
        let x: Element = IntVector::from(vec![1, 0]).into();
        let y: Element = IntVector::from(vec![0, 1]).into();
        assert_eq!(
            z.compose(&x, &y).unwrap(),
            IntVector::from(vec![1, 1]).into()
        );
        let v: Element = IntVector::from(vec![2, -3]).into();
        assert_eq!(z.inverse(&v).unwrap(), IntVector::from(vec![-2, 3]).into());
    }

    #[test]
    fn backend_mismatch_is_rejected() {
        let g = fixtures::s3();
        let v: Element = IntVector::from(vec![1]).into();
        assert!(matches!(
            g.compose(&v, &v),
            Err(Error::BackendMismatch { .. })
        ));
        let wrong_degree = fixtures::perm(4, "(1 2)");
        assert!(matches!(
            g.inverse(&wrong_degree),
            Err(Error::BackendMismatch { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let g = fixtures::s3();
        let c = fixtures::perm(3, "(1 2 3)");
        let sub = g.closure(std::slice::from_ref(&c)).unwrap();
        let expected: HashSet<Element> = [g.identity(), c, fixtures::perm(3, "(1 3 2)")]
            .into_iter()
            .collect();
        assert_eq!(sub.into_iter().collect::<HashSet<_>>(), expected);
        assert_eq!(g.closure(&[]).unwrap(), vec![g.identity()]);
        assert_eq!(g.closure(g.generators()).unwrap().len(), 6);
    }

    #[test]
    fn subgroup_membership() {
        let g = fixtures::s3();
        let t = fixtures::perm(3, "(1 3)");
        assert!(g.subgroup_contains(g.generators(), &t).unwrap());
        assert!(!g.subgroup_contains(&[], &t).unwrap());
        assert!(g.subgroup_contains(&[], &g.identity()).unwrap());
        assert!(matches!(
            g.subgroup_contains(std::slice::from_ref(&t), &t),
            Err(Error::NotAGenerator(_))
        ));

        let z = GeneratedGroup::free_abelian(
            2,
            vec![IntVector::from(vec![1, 1]), IntVector::from(vec![0, 1])],
        )
        .unwrap();
        let a: Element = IntVector::from(vec![1, 1]).into();
        let target: Element = IntVector::from(vec![2, 2]).into();
        assert!(z
            .subgroup_contains(std::slice::from_ref(&a), &target)
            .unwrap());
        assert!(!z
            .subgroup_contains(&[a], &IntVector::from(vec![2, 1]).into())
            .unwrap());
    }

    #[test]
    fn construction_rejects_bad_generating_sets() {
        let e = Permutation::identity(3);
        let t = fixtures::perm(3, "(1 2)").as_perm().unwrap().clone();
        assert_eq!(
            GeneratedGroup::permutation(3, vec![t.clone(), e]).unwrap_err(),
            Error::IdentityGenerator { index: 1 }
        );
        assert_eq!(
            GeneratedGroup::permutation(3, vec![t.clone(), t]).unwrap_err(),
            Error::DuplicateGenerator { index: 1, first: 0 }
        );
        // The trivial group cannot carry a nonempty generating set.
        assert_eq!(
            GeneratedGroup::permutation(1, vec![Permutation::identity(1)]).unwrap_err(),
            Error::IdentityGenerator { index: 0 }
        );
        let err = GeneratedGroup::free_abelian(
            2,
            vec![IntVector::from(vec![2, 0]), IntVector::from(vec![0, 2])],
        )
        .unwrap_err();
        assert!(err.to_string().contains("lattice index 4"), "{err}");
        assert!(GeneratedGroup::free_abelian(2, vec![IntVector::from(vec![1, 0])]).is_err());
    }

    #[test]
    fn element_orders() {
        let g = fixtures::s3();
        assert_eq!(g.element_order(&fixtures::perm(3, "(1 2 3)")).unwrap(), 3);
        assert_eq!(g.element_order(&g.identity()).unwrap(), 1);
    }
}
