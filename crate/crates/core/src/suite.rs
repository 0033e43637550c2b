//! The full verification battery: constructions, exact small values, every
//! lower-bound verifier over exhaustive and random instance sets, the
//! `K_{2,k}` / `K_{k,k}` greedy properties and the embedding oracle check.
//!
//! Output is a deterministic function of the seed; nothing here reads the
//! clock.

use std::fmt::Write as _;
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embedding::find_induced_copy;
use crate::error::Result;
use crate::model::{
    antichain, butterfly, chain, complete_bipartite_poset, n_poset, GroundSet, PosetSpec, SetFamily,
};
use crate::oracle::{family_from_code, naive_find_copy, naive_saturated_codes};
use crate::saturation::{
    butterfly_construction, greedy_saturate, k2k_seed, kkk_seed, n_construction, saturation_report,
    CandidateOrder,
};
use crate::solver::{enumerate_saturated_families, exact_sat_star, random_greedy_family};
use crate::theorems::{lemma1_check, verify_prop4, verify_theorem2, verify_theorem3, TheoremReport};

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random greedy-closed instances per verifier battery.
    pub random_instances: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            random_instances: 60,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    fn new(id: u8, name: &'static str, failures: Vec<String>, summary: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<_> = failures.iter().take(3).cloned().collect();
            format!("{summary}; {} failure(s): {}", failures.len(), shown.join(" | "))
        };
        CriterionResult {
            id,
            name,
            passed,
            detail,
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Instance set for the butterfly verifiers: every saturated family at
/// `n = 4` plus random greedy-closed ones at `n = 5..=8`.
pub fn butterfly_instances(cfg: &SuiteConfig) -> Result<Vec<SetFamily>> {
    let q = butterfly();
    let mut out = enumerate_saturated_families(4, &q, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.random_instances {
        out.push(random_greedy_family(5 + i % 4, &q, &mut rng)?);
    }
    Ok(out)
}

/// Every N-saturated family at `n <= 4` plus random greedy-closed ones at
/// `n = 5..=10`.
pub fn n_instances(cfg: &SuiteConfig) -> Result<Vec<SetFamily>> {
    let q = n_poset();
    let mut out = Vec::new();
    for n in 1..=4 {
        out.extend(enumerate_saturated_families(n, &q, None)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    for i in 0..cfg.random_instances {
        out.push(random_greedy_family(5 + i % 6, &q, &mut rng)?);
    }
    Ok(out)
}

pub fn construction_saturation() -> Result<CriterionResult> {
    let mut failures = Vec::new();
    for n in 4..=8 {
        if !saturation_report(&butterfly_construction(n)?, &butterfly()).saturated {
            failures.push(format!("butterfly construction n={n} not saturated"));
        }
    }
    for n in 3..=10 {
        if !saturation_report(&n_construction(n)?, &n_poset()).saturated {
            failures.push(format!("N construction n={n} not saturated"));
        }
    }
    Ok(CriterionResult::new(
        1,
        "construction saturation",
        failures,
        "butterfly n=4..8 and N n=3..10 saturated".into(),
    ))
}

pub fn construction_sizes() -> Result<CriterionResult> {
    let mut failures = Vec::new();
    for n in 2..=12 {
        let len = n_construction(n)?.len();
        if len != 2 * n {
            failures.push(format!("|N construction({n})| = {len} != {}", 2 * n));
        }
    }
    for n in 3..=12 {
        let len = butterfly_construction(n)?.len();
        let want = 1 + n + binom(n, 2) + (n - 2);
        if len != want {
            failures.push(format!("|butterfly construction({n})| = {len} != {want}"));
        }
    }
    Ok(CriterionResult::new(
        2,
        "construction sizes",
        failures,
        "2n and 1+n+C(n,2)+(n-2) for n up to 12".into(),
    ))
}

/// Exact values at `n <= 4` for both posets, checked against the
/// independent brute-force enumeration and the proven lower bounds.
pub fn exact_values() -> Result<CriterionResult> {
    let mut failures = Vec::new();
    let mut values = Vec::new();
    for (q, tag) in [(butterfly(), "B"), (n_poset(), "N")] {
        for n in 1..=4 {
            let r = exact_sat_star(n, &q, Duration::from_secs(600))?;
            let g = GroundSet::new(n)?;
            let brute = naive_saturated_codes(g, &q);
            let brute_min = brute
                .iter()
                .map(|c| c.count_ones() as usize)
                .min()
                .unwrap_or(0);
            if !r.exact || r.value != brute_min || r.enumerated_count != Some(brute.len()) {
                failures.push(format!(
                    "sat*({n},{tag}) = {} (exact {}) from {:?} families; brute force {brute_min} from {}",
                    r.value,
                    r.exact,
                    r.enumerated_count,
                    brute.len()
                ));
            }
            if !saturation_report(&r.certificate, &q).saturated {
                failures.push(format!("certificate for sat*({n},{tag}) not saturated"));
            }
            let lower = if tag == "B" { n + 1 } else { 0 };
            if (n >= 2 && r.value < lower) || r.value * r.value < n {
                failures.push(format!("sat*({n},{tag}) = {} breaks a lower bound", r.value));
            }
            values.push(format!("sat*({n},{tag})={}", r.value));
        }
    }
    for f in ["sat*(2,B)=4", "sat*(3,B)=8"] {
        if !values.iter().any(|v| v == f) {
            failures.push(format!("expected {f}"));
        }
    }
    Ok(CriterionResult::new(
        3,
        "exact small values",
        failures,
        values.join(" "),
    ))
}

fn theorem_battery(
    id: u8,
    name: &'static str,
    instances: &[SetFamily],
    skip: impl Fn(&SetFamily) -> bool,
    verify: impl Fn(&SetFamily) -> TheoremReport,
) -> CriterionResult {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut exhaustive = 0;
    for f in instances {
        if skip(f) {
            continue;
        }
        checked += 1;
        if f.n() <= 4 {
            exhaustive += 1;
        }
        let r = verify(f);
        if !r.passed {
            failures.push(format!(
                "n={} size={} {}",
                f.n(),
                f.len(),
                serde_json::to_string(&r.to_json()).unwrap_or_default()
            ));
        }
    }
    CriterionResult::new(
        id,
        name,
        failures,
        format!(
            "{checked} families ({exhaustive} exhaustive, {} random)",
            checked - exhaustive
        ),
    )
}

pub fn theorem2_suite(instances: &[SetFamily]) -> CriterionResult {
    theorem_battery(4, "singleton chevron injection", instances, |_| false, verify_theorem2)
}

pub fn lemma1_suite(instances: &[SetFamily]) -> CriterionResult {
    theorem_battery(5, "pair closure", instances, |_| false, lemma1_check)
}

pub fn theorem3_suite(instances: &[SetFamily]) -> CriterionResult {
    theorem_battery(
        6,
        "pair chevron injection",
        instances,
        |f| f.iter().all(|m| m.len() != 1),
        verify_theorem3,
    )
}

pub fn prop4_suite(instances: &[SetFamily]) -> CriterionResult {
    theorem_battery(7, "difference-pair cover", instances, |_| false, verify_prop4)
}

fn greedy_property(
    q: &PosetSpec,
    seed: &SetFamily,
    max_added_len: usize,
    size_bound: usize,
    failures: &mut Vec<String>,
) -> Result<usize> {
    let out = greedy_saturate(seed, q, &CandidateOrder::Canonical)?;
    let tag = format!("{} n={}", q.name(), seed.n());
    if !out.is_superfamily_of(seed) {
        failures.push(format!("{tag}: result drops seed members"));
    }
    if !saturation_report(&out, q).saturated {
        failures.push(format!("{tag}: result not saturated"));
    }
    if let Some(m) = out.iter().find(|m| !seed.contains(*m) && m.len() > max_added_len) {
        failures.push(format!("{tag}: added {m} of size {}", m.len()));
    }
    if out.len() > size_bound {
        failures.push(format!("{tag}: size {} > bound {size_bound}", out.len()));
    }
    Ok(out.len())
}

pub fn prop5_properties() -> Result<CriterionResult> {
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for k in [2, 3] {
        let q = complete_bipartite_poset(k, 2)?;
        for n in k + 1..=8 {
            let bound = (0..=k).map(|i| binom(n, i)).sum::<usize>() + n - k;
            let len = greedy_property(&q, &k2k_seed(n, k)?, k, bound, &mut failures)?;
            sizes.push(format!("k={k},n={n}:{len}<={bound}"));
        }
    }
    Ok(CriterionResult::new(
        8,
        "K_{2,k} greedy completion",
        failures,
        sizes.join(" "),
    ))
}

pub fn prop6_properties() -> Result<CriterionResult> {
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    let k = 3;
    let q = complete_bipartite_poset(k, k)?;
    for n in 6..=8 {
        let bound = (0..=2 * k - 2).map(|i| binom(n, i)).sum::<usize>() + (k - 1) * (n - 2 * k + 1);
        let len = greedy_property(&q, &kkk_seed(n, k)?, 2 * k - 2, bound, &mut failures)?;
        sizes.push(format!("n={n}:{len}<={bound}"));
    }
    Ok(CriterionResult::new(
        9,
        "K_{k,k} greedy completion",
        failures,
        sizes.join(" "),
    ))
}

pub fn embedding_oracle_equivalence() -> Result<CriterionResult> {
    let g = GroundSet::new(3)?;
    let posets = [butterfly(), n_poset(), chain(2), antichain(2)];
    let mut failures = Vec::new();
    let mut with_copy = 0;
    for q in &posets {
        for code in 0..256u64 {
            let f = family_from_code(g, code);
            let fast = find_induced_copy(&f, q, None)?;
            let slow = naive_find_copy(&f, q);
            if let Some(w) = &fast {
                with_copy += 1;
                if !w.is_valid() {
                    failures.push(format!("{}: invalid witness on code {code:#x}", q.name()));
                }
            }
            if fast.is_some() != slow.is_some() {
                failures.push(format!("{}: disagreement on code {code:#x}", q.name()));
            }
        }
    }
    Ok(CriterionResult::new(
        10,
        "embedding vs brute force",
        failures,
        format!("1024 (family, poset) cases, {with_copy} with a copy"),
    ))
}

/// Criteria 1 through 10 in order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CriterionResult>> {
    let b = butterfly_instances(cfg)?;
    let n = n_instances(cfg)?;
    Ok(vec![
        construction_saturation()?,
        construction_sizes()?,
        exact_values()?,
        theorem2_suite(&b),
        lemma1_suite(&b),
        theorem3_suite(&b),
        prop4_suite(&n),
        prop5_properties()?,
        prop6_properties()?,
        embedding_oracle_equivalence()?,
    ])
}

pub fn render_table(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        let _ = writeln!(
            out,
            "{:>2}  {:<4}  {:<28}  {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
    out
}
