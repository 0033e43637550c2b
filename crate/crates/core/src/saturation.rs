//! Freeness and saturation checks, the explicit saturated constructions, and
//! greedy completion of a free seed to a saturated family.

use rayon::prelude::*;
use serde_json::json;

use crate::embedding::{EmbeddingSearch, EmbeddingWitness};
use crate::error::{Error, Result};
use crate::model::{GroundSet, PosetSpec, SetFamily, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationReport {
    pub free: bool,
    pub witness: Option<EmbeddingWitness>,
    /// Missing sets whose addition creates no copy, canonical order.
    pub unsaturated: Vec<SubsetMask>,
    pub saturated: bool,
}

impl SaturationReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "free": self.free,
            "saturated": self.saturated,
            "unsaturated": self.unsaturated.iter().map(|s| s.elements()).collect::<Vec<_>>(),
            "witness": self.witness.as_ref().map(|w| w.to_json()),
        })
    }
}

pub fn is_free(family: &SetFamily, q: &PosetSpec) -> bool {
    EmbeddingSearch::new(family, q).find_indices(None).is_none()
}

/// Full report: every missing set that fails to create a copy is listed.
pub fn saturation_report(family: &SetFamily, q: &PosetSpec) -> SaturationReport {
    check(family, q, false)
}

/// Same verdict as [`saturation_report`] but stops at the first unsaturated
/// set, so `unsaturated` holds at most one entry.
pub fn saturation_report_fail_fast(family: &SetFamily, q: &PosetSpec) -> SaturationReport {
    check(family, q, true)
}

pub fn is_saturated(family: &SetFamily, q: &PosetSpec) -> bool {
    check(family, q, true).saturated
}

fn check(family: &SetFamily, q: &PosetSpec, fail_fast: bool) -> SaturationReport {
    let search = EmbeddingSearch::new(family, q);
    if let Some(w) = search.find(None) {
        return SaturationReport {
            free: false,
            witness: Some(w),
            unsaturated: Vec::new(),
            saturated: false,
        };
    }
    // Base family is free, so any new copy must run through the added set.
    let missing = family.missing();
    let creates_copy = |s: &mut EmbeddingSearch, m: SubsetMask| {
        s.push(m);
        let hit = s.last_member_completes_copy();
        s.pop();
        hit
    };
    let unsaturated: Vec<SubsetMask> = if fail_fast {
        missing
            .par_iter()
            .map_init(|| search.clone(), |s, &m| (m, creates_copy(s, m)))
            .find_first(|(_, hit)| !hit)
            .map(|(m, _)| m)
            .into_iter()
            .collect()
    } else {
        missing
            .par_iter()
            .map_init(|| search.clone(), |s, &m| (!creates_copy(s, m)).then_some(m))
            .flatten()
            .collect()
    };
    SaturationReport {
        free: true,
        witness: None,
        saturated: unsaturated.is_empty(),
        unsaturated,
    }
}

/// Order in which greedy completion visits candidate sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CandidateOrder {
    /// (cardinality, mask value) ascending.
    #[default]
    Canonical,
    /// Visit these first; any missing set not listed follows in canonical
    /// order, so the result is always maximal.
    Explicit(Vec<SubsetMask>),
}

/// Add every missing set, in order, whose addition keeps the family free.
pub fn greedy_saturate(seed: &SetFamily, q: &PosetSpec, order: &CandidateOrder) -> Result<SetFamily> {
    let mut search = EmbeddingSearch::with_capacity(seed, q, seed.ground().subset_count());
    if let Some(w) = search.find(None) {
        return Err(Error::usage(format!(
            "seed is not {}-free: {}",
            q.name(),
            w.to_json()
        )));
    }
    let ground = seed.ground();
    let mut present = vec![false; ground.subset_count()];
    for m in seed.iter() {
        present[m.bits() as usize] = true;
    }
    let listed: &[SubsetMask] = match order {
        CandidateOrder::Canonical => &[],
        CandidateOrder::Explicit(v) => v,
    };
    for &m in listed {
        if m.ground() != ground {
            return Err(Error::usage(format!("candidate {m} is over a different ground set")));
        }
    }
    let tail = ground.all_subsets();
    for m in listed.iter().chain(tail.iter()).copied() {
        if present[m.bits() as usize] {
            continue;
        }
        present[m.bits() as usize] = true;
        search.push(m);
        if search.last_member_completes_copy() {
            search.pop();
        }
    }
    Ok(search.family())
}

fn ground_for(n: usize, min: usize, what: &str) -> Result<GroundSet> {
    if n < min {
        return Err(Error::usage(format!("{what} needs n >= {min}, got {n}")));
    }
    GroundSet::new(n)
}

/// `{∅} ∪ {i} ∪ {i,j} ∪ [i]` over `[n]`.
pub fn butterfly_construction(n: usize) -> Result<SetFamily> {
    let g = ground_for(n, 2, "butterfly construction")?;
    let mut members = vec![SubsetMask::empty(g)];
    for i in 1..=n {
        members.push(SubsetMask::singleton(g, i)?);
        members.push(SubsetMask::prefix(g, i)?);
        for j in i + 1..=n {
            members.push(SubsetMask::from_elements(g, &[i, j])?);
        }
    }
    SetFamily::new(g, members)
}

/// `{∅} ∪ {i} ∪ [i]` over `[n]`; exactly `2n` sets.
pub fn n_construction(n: usize) -> Result<SetFamily> {
    let g = ground_for(n, 2, "N construction")?;
    singletons_and_prefixes(g)
}

fn singletons_and_prefixes(g: GroundSet) -> Result<SetFamily> {
    let mut members = vec![SubsetMask::empty(g)];
    for i in 1..=g.n() {
        members.push(SubsetMask::singleton(g, i)?);
        members.push(SubsetMask::prefix(g, i)?);
    }
    SetFamily::new(g, members)
}

/// Singletons plus the full prefix chain; the seed for `K_{2,k}`-saturated
/// families built by adding only sets of size at most `k`.
pub fn k2k_seed(n: usize, k: usize) -> Result<SetFamily> {
    if k < 2 || n <= k {
        return Err(Error::usage(format!("k2k seed needs n > k >= 2, got n={n}, k={k}")));
    }
    singletons_and_prefixes(GroundSet::new(n)?)
}

/// Singletons plus `k - 1` maximal chains; chain `i` grows through
/// `[n] \ {i}` in increasing order and then adds `i`.
pub fn kkk_seed(n: usize, k: usize) -> Result<SetFamily> {
    if k < 2 || n + 1 < 2 * k {
        return Err(Error::usage(format!("kkk seed needs k >= 2 and n >= 2k - 1, got n={n}, k={k}")));
    }
    let g = GroundSet::new(n)?;
    let mut members = Vec::new();
    for i in 1..=n {
        members.push(SubsetMask::singleton(g, i)?);
    }
    for i in 1..k {
        let sequence = (1..=n).filter(|&e| e != i).chain(std::iter::once(i));
        let mut cur = SubsetMask::empty(g);
        members.push(cur);
        for e in sequence {
            cur = cur.union(SubsetMask::singleton(g, e)?);
            members.push(cur);
        }
    }
    SetFamily::new(g, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{butterfly, complete_bipartite_poset, n_poset};

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(g(n), e).unwrap()
    }

    #[test]
    fn construction_sizes() {
        assert_eq!(butterfly_construction(4).unwrap().len(), 13);
        assert_eq!(butterfly_construction(3).unwrap(), SetFamily::power_set(g(3)));
        assert_eq!(butterfly_construction(5).unwrap().len(), 19);
        assert_eq!(n_construction(4).unwrap().len(), 8);
        assert_eq!(n_construction(10).unwrap().len(), 20);
        assert!(butterfly_construction(1).is_err());
        assert!(n_construction(1).is_err());
    }

    #[test]
    fn freeness_examples() {
        assert!(is_free(&butterfly_construction(4).unwrap(), &butterfly()));
        let chain = SetFamily::from_element_lists(g(2), &[&[], &[1], &[1, 2]]).unwrap();
        assert!(is_free(&chain, &n_poset()));
        let bf = SetFamily::from_element_lists(g(4), &[&[1], &[2], &[1, 2, 3], &[1, 2, 4]]).unwrap();
        assert!(!is_free(&bf, &butterfly()));
        let r = saturation_report(&bf, &butterfly());
        assert!(!r.free && !r.saturated && r.witness.is_some());
    }

    #[test]
    fn report_examples() {
        assert!(saturation_report(&n_construction(5).unwrap(), &n_poset()).saturated);
        assert!(saturation_report(&n_construction(6).unwrap(), &n_poset()).saturated);
        assert!(saturation_report(&butterfly_construction(4).unwrap(), &butterfly()).saturated);
        let lone = SetFamily::from_element_lists(g(4), &[&[]]).unwrap();
        let r = saturation_report(&lone, &butterfly());
        assert!(r.free && !r.saturated);
        assert_eq!(r.unsaturated.len(), 15);
        assert!(r.unsaturated.contains(&set(4, &[1])));
        let ff = saturation_report_fail_fast(&lone, &butterfly());
        assert_eq!(ff.unsaturated, vec![set(4, &[1])]);
    }

    #[test]
    fn greedy_examples() {
        let q = butterfly();
        let out = greedy_saturate(&k2k_seed(6, 2).unwrap(), &q, &CandidateOrder::Canonical).unwrap();
        assert!(saturation_report(&out, &q).saturated);
        let seed = k2k_seed(6, 2).unwrap();
        assert!(out.iter().filter(|m| !seed.contains(*m)).all(|m| m.len() <= 2));

        let cube = greedy_saturate(&SetFamily::empty(g(3)), &q, &CandidateOrder::Canonical).unwrap();
        assert_eq!(cube, SetFamily::power_set(g(3)));

        let bad = SetFamily::from_element_lists(g(4), &[&[1], &[2], &[1, 2, 3], &[1, 2, 4]]).unwrap();
        assert!(matches!(
            greedy_saturate(&bad, &q, &CandidateOrder::Canonical),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn greedy_explicit_order_is_still_maximal() {
        let q = butterfly();
        let order = CandidateOrder::Explicit(vec![set(4, &[1, 2, 3]), set(4, &[3, 4])]);
        let out = greedy_saturate(&SetFamily::empty(g(4)), &q, &order).unwrap();
        assert!(out.contains(set(4, &[1, 2, 3])));
        assert!(saturation_report(&out, &q).saturated);
    }

    #[test]
    fn seeds() {
        assert_eq!(k2k_seed(5, 3).unwrap().len(), 10);
        assert!(is_free(&k2k_seed(6, 2).unwrap(), &butterfly()));
        assert!(k2k_seed(3, 3).is_err());
        assert!(k2k_seed(5, 1).is_err());

        let s = kkk_seed(5, 3).unwrap();
        for e in [
            &[][..],
            &[2],
            &[2, 3],
            &[2, 3, 4],
            &[2, 3, 4, 5],
            &[1, 2, 3, 4, 5],
            &[1],
            &[1, 3],
            &[1, 3, 4],
            &[1, 3, 4, 5],
            &[3],
            &[4],
            &[5],
        ] {
            assert!(s.contains(set(5, e)), "missing {e:?}");
        }
        assert_eq!(s.len(), 13);
        assert!(is_free(&kkk_seed(6, 3).unwrap(), &complete_bipartite_poset(3, 3).unwrap()));
        assert!(kkk_seed(4, 3).is_err());
    }
}
