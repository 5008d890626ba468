use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored as its image array.
///
/// Products follow the apply-left-first convention: `a.then(b)` maps
/// `i` to `b[a[i]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &p in &images {
            if p >= images.len() || seen[p] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[p] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    /// Builds a permutation from 0-based cycles. Cycles must be disjoint.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree || touched[p] {
                    return Err(Error::InvalidPermutation(cycle.clone()));
                }
                touched[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    /// Disjoint nontrivial cycles, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.0[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.0[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A vector in the free abelian group of some fixed rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zero(rank: usize) -> Self {
        IntVector(vec![BigInt::zero(); rank])
    }

    pub fn unit(rank: usize, axis: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[axis] = BigInt::from(1);
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.rank(), other.rank());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl<T: Into<BigInt>> From<Vec<T>> for IntVector {
    fn from(v: Vec<T>) -> Self {
        IntVector(v.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A group element of either backend.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Perm(Permutation),
    Vector(IntVector),
}

impl Element {
    pub fn is_identity(&self) -> bool {
        match self {
            Element::Perm(p) => p.is_identity(),
            Element::Vector(v) => v.is_zero(),
        }
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            Element::Perm(p) => Some(p),
            Element::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&IntVector> {
        match self {
            Element::Vector(v) => Some(v),
            Element::Perm(_) => None,
        }
    }
}

impl From<Permutation> for Element {
    fn from(p: Permutation) -> Self {
        Element::Perm(p)
    }
}

impl From<IntVector> for Element {
    fn from(v: IntVector) -> Self {
        Element::Vector(v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => p.fmt(f),
            Element::Vector(v) => v.fmt(f),
        }
    }
}

/// Permutations serialize as cycle strings; vectors as integer arrays, with
/// entries outside the `i64` range written as decimal strings.
impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Element::Perm(p) => serializer.serialize_str(&p.to_string()),
            Element::Vector(v) => {
                let mut seq = serializer.serialize_seq(Some(v.rank()))?;
                for x in v.entries() {
                    match x.to_i64() {
                        Some(small) => seq.serialize_element(&small)?,
                        None => seq.serialize_element(&x.to_string())?,
                    }
                }
                seq.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| c.iter().map(|p| p - 1).collect())
            .collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    #[test]
    fn transposition_then_three_cycle() {
        // (1 2) first, then (1 2 3): 1 -> 2 -> 3, 3 -> 3 -> 1, 2 -> 1 -> 2.
        let a = cyc(3, &[&[1, 2]]);
        let b = cyc(3, &[&[1, 2, 3]]);
        assert_eq!(a.then(&b), cyc(3, &[&[1, 3]]));
    }

    #[test]
    fn inverse_reverses_cycle() {
        let a = cyc(3, &[&[1, 2, 3]]);
        assert_eq!(a.inverse(), cyc(3, &[&[1, 3, 2]]));
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(cyc(5, &[&[3, 1], &[5, 4]]).to_string(), "(1 3)(4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "e");
        assert_eq!(IntVector::from(vec![2, -3]).to_string(), "(2,-3)");
    }

    #[test]
    fn vector_arithmetic() {
        let a = IntVector::from(vec![1, 0]);
        let b = IntVector::from(vec![0, 1]);
        assert_eq!(a.add(&b), IntVector::from(vec![1, 1]));
        assert_eq!(
            IntVector::from(vec![2, -3]).neg(),
            IntVector::from(vec![-2, 3])
        );
    }
}
