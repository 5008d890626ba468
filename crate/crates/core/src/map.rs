use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};

/// A map between indexed vertex sets, stored as an image array.
///
/// Equality and hashing are pointwise on the image array; the flags are
/// derived facts and do not take part in comparisons.
#[derive(Debug, Clone, Serialize)]
pub struct GroupMap {
    images: Vec<usize>,
    bijective: bool,
    homomorphism: bool,
}

impl GroupMap {
    pub fn new(images: Vec<usize>) -> Self {
        let bijective = is_permutation(&images);
        GroupMap {
            images,
            bijective,
            homomorphism: false,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub(crate) fn homomorphism(images: Vec<usize>) -> Self {
        GroupMap {
            homomorphism: true,
            ..Self::new(images)
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    /// True when the map is known to be a group homomorphism.
    pub fn is_known_homomorphism(&self) -> bool {
        self.homomorphism
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &GroupMap) -> GroupMap {
        GroupMap {
            images: inner.images.iter().map(|&x| self.images[x]).collect(),
            bijective: self.bijective && inner.bijective,
            homomorphism: self.homomorphism && inner.homomorphism,
        }
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.bijective {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Some(GroupMap {
            images: inv,
            bijective: true,
            homomorphism: self.homomorphism,
        })
    }

    /// Errors with the first colliding pair when two points share an image.
    pub fn ensure_injective(&self) -> Result<()> {
        let mut first = std::collections::HashMap::new();
        for (i, &j) in self.images.iter().enumerate() {
            if let Some(&k) = first.get(&j) {
                return Err(Error::NotInjective(k, i));
            }
            first.insert(j, i);
        }
        Ok(())
    }
}

fn is_permutation(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    for &j in images {
        if j >= images.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

impl PartialEq for GroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for GroupMap {}

impl Hash for GroupMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}
