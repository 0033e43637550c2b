//! Exact `sat*(n, q)` for tiny ground sets and enumeration of every
//! saturated family, used as ground truth by the verifiers.
//!
//! Saturated is the same as maximal free. For `n <= 4` every subfamily of
//! `2^[n]` is classified through a freeness table: a family is free iff it
//! minus its last member is free and no copy runs through that member. A
//! family is then saturated iff it is free and each one-set extension is not.
//! Larger `n` falls back to a budgeted include/exclude search.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::embedding::EmbeddingSearch;
use crate::error::{Error, Result};
use crate::model::{GroundSet, PosetSpec, SetFamily, SubsetMask};
use crate::saturation::{greedy_saturate, is_free, saturation_report, CandidateOrder};

/// Largest `n` for which all `2^(2^n)` subfamilies are walked.
pub const EXHAUSTIVE_MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub n: usize,
    pub poset: String,
    /// Exact minimum when `exact`, otherwise the best size found.
    pub value: usize,
    pub exact: bool,
    pub certificate: SetFamily,
    pub enumerated_count: Option<usize>,
    pub elapsed_ms: u128,
}

impl SolveResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "poset": self.poset,
            "value": self.value,
            "exact": self.exact,
            "certificate": self.certificate.iter().map(|m| m.elements()).collect::<Vec<_>>(),
            "enumerated_count": self.enumerated_count,
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

/// Subfamily codes: bit `j` of a code is the subset with mask value `j`.
fn family_of_code(g: GroundSet, code: u64) -> SetFamily {
    let members = (0..g.subset_count() as u32)
        .filter(|j| code >> j & 1 == 1)
        .map(|j| SubsetMask::from_raw(g, j));
    SetFamily::normalized(g, members.collect())
}

/// Freeness of every subfamily of `2^[n]`, indexed by code.
fn freeness_table(g: GroundSet, q: &PosetSpec) -> Vec<bool> {
    let total = 1usize << g.subset_count();
    let through_top: Vec<bool> = (0..total as u64)
        .into_par_iter()
        .map(|code| {
            if code == 0 {
                return false;
            }
            let top = 63 - code.leading_zeros();
            let rest = family_of_code(g, code & !(1 << top));
            let mut s = EmbeddingSearch::new(&rest, q);
            s.push(SubsetMask::from_raw(g, top));
            s.last_member_completes_copy()
        })
        .collect();
    let mut free = vec![true; total];
    for code in 1..total {
        let top = 63 - (code as u64).leading_zeros();
        free[code] = free[code & !(1 << top)] && !through_top[code];
    }
    free
}

fn sort_families(v: &mut [SetFamily]) {
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members().cmp(b.members())));
}

/// Every `q`-saturated family over `[n]`, smallest first (ties by member
/// list). Exhaustive for `n <= 4`; beyond that a `cap` is required and the
/// first `cap` families of an include-first search are returned.
pub fn enumerate_saturated_families(
    n: usize,
    q: &PosetSpec,
    cap: Option<usize>,
) -> Result<Vec<SetFamily>> {
    let g = GroundSet::new(n)?;
    if n > EXHAUSTIVE_MAX_N {
        let cap = cap.ok_or_else(|| {
            Error::usage(format!(
                "exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_N}; pass a cap for n = {n}"
            ))
        })?;
        let mut out = Vec::new();
        let mut dfs = MaximalSearch::new(g, q, None);
        dfs.run(&mut |f| {
            out.push(f);
            out.len() >= cap
        });
        sort_families(&mut out);
        return Ok(out);
    }
    let free = freeness_table(g, q);
    let subsets = g.subset_count();
    let mut out: Vec<SetFamily> = (0..free.len())
        .into_par_iter()
        .filter(|&code| free[code] && (0..subsets).all(|j| code >> j & 1 == 1 || !free[code | 1 << j]))
        .map(|code| family_of_code(g, code as u64))
        .collect();
    sort_families(&mut out);
    if let Some(cap) = cap {
        out.truncate(cap);
    }
    Ok(out)
}

/// Every saturated family found by running the saturation definition on
/// each subfamily; the cross-check for [`enumerate_saturated_families`].
pub fn enumerate_saturated_by_definition(n: usize, q: &PosetSpec) -> Result<Vec<SetFamily>> {
    let g = GroundSet::new(n)?;
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::usage(format!(
            "definition-based enumeration is limited to n <= {EXHAUSTIVE_MAX_N}"
        )));
    }
    let mut out: Vec<SetFamily> = (0..1u64 << g.subset_count())
        .into_par_iter()
        .map(|code| family_of_code(g, code))
        .filter(|f| saturation_report(f, q).saturated)
        .collect();
    sort_families(&mut out);
    Ok(out)
}

/// Include/exclude search over subsets in canonical order. A set is only
/// included while the family stays free; an excluded set must be blocked
/// (completes a copy) by the time the search reaches a leaf.
struct MaximalSearch {
    subsets: Vec<SubsetMask>,
    search: EmbeddingSearch,
    excluded: Vec<SubsetMask>,
    /// Prune any branch that already holds this many sets.
    size_limit: Option<usize>,
    deadline: Option<Instant>,
    timed_out: bool,
    nodes: u64,
}

impl MaximalSearch {
    fn new(g: GroundSet, q: &PosetSpec, deadline: Option<Instant>) -> Self {
        MaximalSearch {
            subsets: g.all_subsets(),
            search: EmbeddingSearch::with_capacity(&SetFamily::empty(g), q, g.subset_count()),
            excluded: Vec::new(),
            size_limit: None,
            deadline,
            timed_out: false,
            nodes: 0,
        }
    }

    fn blocked(&mut self, m: SubsetMask) -> bool {
        self.search.push(m);
        let hit = self.search.last_member_completes_copy();
        self.search.pop();
        hit
    }

    /// Calls `leaf` with each saturated family; stops when it returns true.
    fn run(&mut self, leaf: &mut dyn FnMut(SetFamily) -> bool) {
        self.step(0, leaf);
    }

    fn step(&mut self, pos: usize, leaf: &mut dyn FnMut(SetFamily) -> bool) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return true;
        }
        if let Some(limit) = self.size_limit {
            if self.search.len() >= limit {
                return false;
            }
        }
        if pos == self.subsets.len() {
            let pending = std::mem::take(&mut self.excluded);
            let maximal = pending.iter().all(|&m| self.blocked(m));
            self.excluded = pending;
            return maximal && leaf(self.search.family());
        }
        let m = self.subsets[pos];
        self.search.push(m);
        if self.search.last_member_completes_copy() {
            // Forced out, and already blocked.
            self.search.pop();
            return self.step(pos + 1, leaf);
        }
        let stop = self.step(pos + 1, leaf);
        self.search.pop();
        if stop {
            return true;
        }
        self.excluded.push(m);
        let stop = self.step(pos + 1, leaf);
        self.excluded.pop();
        stop
    }
}

/// `sat*(n, q)`: exhaustive for `n <= 4`, otherwise branch and bound seeded
/// with a canonical greedy family, returning the best certificate if the
/// budget runs out.
pub fn exact_sat_star(n: usize, q: &PosetSpec, budget: Duration) -> Result<SolveResult> {
    let start = Instant::now();
    let g = GroundSet::new(n)?;
    if n <= EXHAUSTIVE_MAX_N {
        let all = enumerate_saturated_families(n, q, None)?;
        let best = all
            .first()
            .cloned()
            .ok_or_else(|| Error::contract(format!("no {}-saturated family over [{n}]", q.name())))?;
        return Ok(SolveResult {
            n,
            poset: q.name().to_string(),
            value: best.len(),
            exact: true,
            certificate: best,
            enumerated_count: Some(all.len()),
            elapsed_ms: start.elapsed().as_millis(),
        });
    }
    let mut best = greedy_saturate(&SetFamily::empty(g), q, &CandidateOrder::Canonical)?;
    let mut dfs = MaximalSearch::new(g, q, Some(start + budget));
    loop {
        dfs.size_limit = Some(best.len());
        let mut improved = None;
        dfs.run(&mut |f| {
            improved = Some(f);
            true
        });
        match improved {
            Some(f) => best = f,
            None => break,
        }
    }
    Ok(SolveResult {
        n,
        poset: q.name().to_string(),
        value: best.len(),
        exact: !dfs.timed_out,
        certificate: best,
        enumerated_count: None,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// A random free family followed by greedy completion under a random
/// candidate order.
pub fn random_greedy_family(n: usize, q: &PosetSpec, rng: &mut ChaCha8Rng) -> Result<SetFamily> {
    let g = GroundSet::new(n)?;
    let mut all = g.all_subsets();
    let picks = rng.random_range(0..=n);
    let mut seed = SetFamily::empty(g);
    for _ in 0..picks {
        let m = all[rng.random_range(0..all.len())];
        if let Ok(next) = seed.with(m) {
            if is_free(&next, q) {
                seed = next;
            }
        }
    }
    all.shuffle(rng);
    greedy_saturate(&seed, q, &CandidateOrder::Explicit(all))
}

/// Smallest saturated family from `trials` greedy runs. The first trials
/// start from `seeds` (each must be free); the rest start from random free
/// families. All candidate orders are random, drawn from a ChaCha8 stream
/// seeded with `rng_seed`.
pub fn upper_bound_via_random_greedy(
    n: usize,
    q: &PosetSpec,
    trials: usize,
    rng_seed: u64,
    seeds: &[SetFamily],
) -> Result<SolveResult> {
    let start = Instant::now();
    if trials == 0 {
        return Err(Error::usage("trials must be at least 1"));
    }
    let g = GroundSet::new(n)?;
    if let Some(s) = seeds.iter().find(|s| s.ground() != g) {
        return Err(Error::usage(format!(
            "seed family over [{}] given for n = {n}",
            s.n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut best: Option<SetFamily> = None;
    for t in 0..trials {
        let fam = match seeds.get(t) {
            Some(seed) => {
                let mut order = g.all_subsets();
                order.shuffle(&mut rng);
                greedy_saturate(seed, q, &CandidateOrder::Explicit(order))?
            }
            None => random_greedy_family(n, q, &mut rng)?,
        };
        if best.as_ref().is_none_or(|b| fam.len() < b.len()) {
            best = Some(fam);
        }
    }
    let best = best.expect("trials >= 1");
    Ok(SolveResult {
        n,
        poset: q.name().to_string(),
        value: best.len(),
        exact: false,
        certificate: best,
        enumerated_count: None,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{butterfly, n_poset};
    use crate::saturation::{butterfly_construction, is_saturated, n_construction};

    #[test]
    fn butterfly_small_n() {
        let q = butterfly();
        for n in [2, 3] {
            let all = enumerate_saturated_families(n, &q, None).unwrap();
            assert_eq!(all, vec![SetFamily::power_set(GroundSet::new(n).unwrap())]);
        }
        let r = exact_sat_star(2, &q, Duration::from_secs(1)).unwrap();
        assert_eq!((r.value, r.exact), (4, true));
        let r = exact_sat_star(3, &q, Duration::from_secs(1)).unwrap();
        assert_eq!((r.value, r.exact), (8, true));
    }

    #[test]
    fn two_paths_agree_n3() {
        for q in [butterfly(), n_poset()] {
            let a = enumerate_saturated_families(3, &q, None).unwrap();
            let b = enumerate_saturated_by_definition(3, &q).unwrap();
            assert_eq!(a, b, "{}", q.name());
            for f in &a {
                assert!(is_saturated(f, &q));
            }
        }
    }

    #[test]
    fn cap_required_beyond_exhaustive() {
        assert!(enumerate_saturated_families(5, &butterfly(), None).is_err());
        assert!(enumerate_saturated_by_definition(5, &butterfly()).is_err());
        let some = enumerate_saturated_families(5, &n_poset(), Some(3)).unwrap();
        assert_eq!(some.len(), 3);
        for f in &some {
            assert!(is_saturated(f, &n_poset()));
        }
    }

    #[test]
    fn budgeted_search_returns_certificate() {
        let q = n_poset();
        let r = exact_sat_star(5, &q, Duration::from_millis(300)).unwrap();
        assert!(is_saturated(&r.certificate, &q));
        assert_eq!(r.value, r.certificate.len());
        assert!(r.value <= n_construction(5).unwrap().len());
    }

    #[test]
    fn random_greedy_examples() {
        let q = butterfly();
        let c6 = butterfly_construction(6).unwrap();
        let r = upper_bound_via_random_greedy(6, &q, 100, 1, std::slice::from_ref(&c6)).unwrap();
        assert!(r.value <= 26 && !r.exact);
        assert!(is_saturated(&r.certificate, &q));

        let n6 = n_construction(6).unwrap();
        let r = upper_bound_via_random_greedy(6, &n_poset(), 100, 1, std::slice::from_ref(&n6)).unwrap();
        assert!(r.value <= 12);

        let r = upper_bound_via_random_greedy(6, &q, 1, 7, std::slice::from_ref(&c6)).unwrap();
        assert_eq!(r.certificate, c6);

        assert!(upper_bound_via_random_greedy(6, &q, 0, 1, &[]).is_err());
    }

    #[test]
    fn random_greedy_is_reproducible() {
        let q = butterfly();
        let a = upper_bound_via_random_greedy(5, &q, 10, 42, &[]).unwrap();
        let b = upper_bound_via_random_greedy(5, &q, 10, 42, &[]).unwrap();
        assert_eq!(a.certificate, b.certificate);
    }
}
