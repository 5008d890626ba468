use std::collections::VecDeque;

use itertools::Itertools;

use super::{compose_unchecked, inverse_unchecked, Element, GeneratedGroup};
use crate::error::{Error, Result};
use crate::map::GroupMap;

pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 24;

/// Greedy sub-sequence of the generators that still generates the group.
fn generating_core(group: &GeneratedGroup) -> Result<Vec<Element>> {
    let order = group.order().ok_or(Error::InfiniteEnumeration)?;
    let mut core = Vec::new();
    let mut size = 1;
    for s in group.generators() {
        if size == order {
            break;
        }
        core.push(s.clone());
        let grown = group.bfs_closure(&core)?.len();
        if grown == size {
            core.pop();
        } else {
            size = grown;
        }
    }
    Ok(core)
}

/// Extends generator images to a homomorphism on all of `G`, or `None`
/// when the assignment is inconsistent or not bijective.
fn extend(group: &GeneratedGroup, core: &[Element], images: &[Element]) -> Option<Vec<usize>> {
    let elements = group.elements().ok()?;
    let steps: Vec<(Element, Element)> = core
        .iter()
        .zip(images)
        .flat_map(|(s, t)| {
            [
                (s.clone(), t.clone()),
                (inverse_unchecked(s), inverse_unchecked(t)),
            ]
        })
        .collect();
    let mut map: Vec<Option<usize>> = vec![None; elements.len()];
    map[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(gi) = queue.pop_front() {
        let image = &elements[map[gi].expect("queued vertices are mapped")];
        for (s, t) in &steps {
            let next = group.index_of(&compose_unchecked(&elements[gi], s))?;
            let next_image = group.index_of(&compose_unchecked(image, t))?;
            match map[next] {
                Some(existing) if existing != next_image => return None,
                Some(_) => {}
                None => {
                    map[next] = Some(next_image);
                    queue.push_back(next);
                }
            }
        }
    }
    let map: Vec<usize> = map.into_iter().collect::<Option<_>>()?;
    let mut hit = vec![false; map.len()];
    for &j in &map {
        if std::mem::replace(&mut hit[j], true) {
            return None;
        }
    }
    Some(map)
}

/// All automorphisms of a finite group as maps on its element index.
///
/// Generator images range over elements of matching order; each candidate
/// assignment is extended along the Cayley graph and kept when consistent
/// and bijective. Output order follows the candidate product order, so the
/// identity automorphism is not necessarily first.
pub fn automorphisms(group: &GeneratedGroup, bound: usize) -> Result<Vec<GroupMap>> {
    if !group.is_finite() {
        return Err(Error::UnsupportedBackend("automorphisms"));
    }
    let elements = group.elements()?;
    if elements.len() > bound {
        return Err(Error::BoundExceeded {
            size: elements.len(),
            bound,
        });
    }
    let core = generating_core(group)?;
    if core.is_empty() {
        return Ok(vec![GroupMap::homomorphism((0..elements.len()).collect())]);
    }
    let orders: Vec<usize> = elements
        .iter()
        .map(|g| group.element_order(g))
        .collect::<Result<_>>()?;
    let candidates: Vec<Vec<Element>> = core
        .iter()
        .map(|s| {
            let target = orders[group.index_of(s).expect("generator is an element")];
            elements
                .iter()
                .zip(&orders)
                .filter(|&(_, &o)| o == target)
                .map(|(g, _)| g.clone())
                .collect()
        })
        .collect();
    Ok(candidates
        .into_iter()
        .multi_cartesian_product()
        .filter_map(|images| extend(group, &core, &images))
        .map(GroupMap::homomorphism)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s3_has_six_automorphisms() {
        let auts = automorphisms(&fixtures::s3(), DEFAULT_AUTOMORPHISM_BOUND).unwrap();
        assert_eq!(auts.len(), 6);
        assert!(auts
            .iter()
            .all(|a| a.is_bijective() && a.is_known_homomorphism()));
    }

    #[test]
    fn cyclic_six_has_two_automorphisms() {
        let auts = automorphisms(&fixtures::cyclic(6), DEFAULT_AUTOMORPHISM_BOUND).unwrap();
        assert_eq!(auts.len(), 2);
    }

    #[test]
    fn trivial_group_has_identity_only() {
        let g = GeneratedGroup::permutation(1, vec![]).unwrap();
        let auts = automorphisms(&g, DEFAULT_AUTOMORPHISM_BOUND).unwrap();
        assert_eq!(auts, vec![GroupMap::identity(1)]);
    }

    #[test]
    fn bound_and_backend_errors() {
        assert_eq!(
            automorphisms(&fixtures::s4(), 8).unwrap_err(),
            Error::BoundExceeded { size: 24, bound: 8 }
        );
        assert!(automorphisms(&GeneratedGroup::standard_lattice(1), 24).is_err());
    }

    #[test]
    fn generating_core_drops_redundant_generators() {
        // T = {(1 2), (1 3), (1 2 3)}: the first two already generate S3.
        let core = generating_core(&fixtures::s3_t()).unwrap();
        assert_eq!(core.len(), 2);
    }
}
