//! Executable checks of the butterfly and N lower bounds on concrete
//! saturated families.
//!
//! Each verifier first gates on its hypothesis (the input really is
//! saturated), then rebuilds the injection the bound rests on and checks
//! every visible property of it: chevron shape, maximality tie-break, image
//! membership, injectivity and the final size bound. Failures become a
//! structured [`Counterexample`] in the report instead of a panic.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::model::{butterfly, n_poset, SetFamily, SubsetMask};
use crate::saturation::saturation_report_fail_fast;

/// `(A, B, C)` with `C ⊂ A`, `C ⊂ B` and `A ∥ B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Chevron {
    pub a: SubsetMask,
    pub b: SubsetMask,
    pub c: SubsetMask,
}

impl Chevron {
    pub fn is_valid(&self) -> bool {
        self.c.is_proper_subset_of(self.a)
            && self.c.is_proper_subset_of(self.b)
            && self.a.is_incomparable_to(self.b)
    }
}

impl fmt::Display for Chevron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    #[serde(rename = "L1")]
    Lemma1,
    T2,
    T3,
    P4,
}

impl TheoremId {
    pub fn code(self) -> &'static str {
        match self {
            TheoremId::Lemma1 => "L1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::P4 => "P4",
        }
    }
}

/// One domain item (a missing singleton or pair) with its chevron and the
/// family member it maps to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChevronEntry {
    pub item: SubsetMask,
    pub chevron: Chevron,
    pub image: SubsetMask,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    MissingPair { i: usize, j: usize },
    EmptySetMissing,
    /// No butterfly through the item, or the best chevron is malformed.
    NoChevron { item: SubsetMask, detail: String },
    BadChevron { item: SubsetMask, chevron: Chevron },
    ImageNotMember { item: SubsetMask, image: SubsetMask },
    NotInjective { first: SubsetMask, second: SubsetMask, image: SubsetMask },
    Uncovered { elements: Vec<usize> },
    /// Strong form: no `A ⊆ F` and `B` with `A \ B = {i}`.
    NoInnerPair { set: SubsetMask, i: usize },
    BoundViolated { size: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub n: usize,
    /// Number of singletons in the family.
    pub k: usize,
    pub hypotheses_hold: bool,
    pub bound: usize,
    pub size: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
    pub chevrons: Vec<ChevronEntry>,
    /// Element, F, G with `F \ G = {element}`.
    pub cover: Vec<(usize, SubsetMask, SubsetMask)>,
}

impl TheoremReport {
    fn start(theorem: TheoremId, family: &SetFamily) -> Self {
        TheoremReport {
            theorem,
            n: family.n(),
            k: singleton_count(family),
            hypotheses_hold: false,
            bound: 0,
            size: family.len(),
            passed: false,
            counterexample: None,
            notes: Vec::new(),
            chevrons: Vec::new(),
            cover: Vec::new(),
        }
    }

    fn fail(&mut self, c: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(c);
        }
    }

    fn finish(mut self) -> Self {
        if self.hypotheses_hold && self.size < self.bound {
            self.fail(Counterexample::BoundViolated {
                size: self.size,
                bound: self.bound,
            });
        }
        self.passed = self.hypotheses_hold && self.counterexample.is_none();
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "theorem": self.theorem.code(),
            "n": self.n,
            "k": self.k,
            "bound": self.bound,
            "size": self.size,
            "hypotheses_hold": self.hypotheses_hold,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "notes": self.notes,
        })
    }

    /// Chevron map as TSV: item, A, B, C, image.
    pub fn chevrons_tsv(&self) -> String {
        let mut out = String::from("item\tA\tB\tC\timage\n");
        for e in &self.chevrons {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                e.item, e.chevron.a, e.chevron.b, e.chevron.c, e.image
            ));
        }
        out
    }
}

fn singleton_count(family: &SetFamily) -> usize {
    family.iter().filter(|m| m.len() == 1).count()
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Gate shared by the butterfly verifiers.
fn butterfly_hypotheses(report: &mut TheoremReport, family: &SetFamily) {
    if family.n() < 2 {
        report
            .notes
            .push("n = 1 is out of scope for the butterfly bounds".to_string());
        return;
    }
    let sat = saturation_report_fail_fast(family, &butterfly());
    if !sat.free {
        report.notes.push("family contains a butterfly".to_string());
    } else if !sat.saturated {
        report.notes.push(format!(
            "family is butterfly-free but not saturated: {} can be added",
            sat.unsaturated[0]
        ));
    } else {
        report.hypotheses_hold = true;
    }
}

/// Among butterflies in `family ∪ {item}` with `item` as a minimal element,
/// the chevron formed by the two tops and the other bottom with `|C|`
/// largest. Ties: `C` then `A` then `B` in canonical order, with `A < B`.
fn max_chevron(family: &SetFamily, item: SubsetMask) -> Option<Chevron> {
    let mut bottoms: Vec<SubsetMask> = family
        .iter()
        .filter(|c| c.is_incomparable_to(item))
        .collect();
    bottoms.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));
    for c in bottoms {
        let floor = c.union(item);
        let tops: Vec<SubsetMask> = family.iter().filter(|t| floor.is_subset_of(*t)).collect();
        for (ai, &a) in tops.iter().enumerate() {
            if let Some(&b) = tops[ai + 1..].iter().find(|b| a.is_incomparable_to(**b)) {
                return Some(Chevron { a, b, c });
            }
        }
    }
    None
}

/// Chevron assigned to a singleton `{i}` missing from a butterfly-saturated
/// family.
pub fn assign_chevron_to_singleton(family: &SetFamily, i: usize) -> Result<Chevron> {
    let item = SubsetMask::singleton(family.ground(), i)?;
    if family.contains(item) {
        return Err(Error::usage(format!("{item} is already in the family")));
    }
    max_chevron(family, item).ok_or_else(|| {
        Error::contract(format!(
            "adding {item} creates no butterfly with it as a minimal element; family is not saturated"
        ))
    })
}

/// Chevron assigned to a missing pair with exactly one of its singletons in
/// the family; also checks `C ∪ pair` is a member.
pub fn assign_chevron_to_pair(family: &SetFamily, pair: SubsetMask) -> Result<Chevron> {
    if pair.ground() != family.ground() || pair.len() != 2 {
        return Err(Error::usage(format!("{pair} is not a pair over [{}]", family.n())));
    }
    if family.contains(pair) {
        return Err(Error::usage(format!("{pair} is already in the family")));
    }
    let present = pair
        .elements()
        .into_iter()
        .filter(|&e| family.contains_bits(1 << (e - 1)))
        .count();
    if present != 1 {
        return Err(Error::usage(format!(
            "{pair} has {present} of its singletons in the family, exactly one required"
        )));
    }
    let ch = max_chevron(family, pair).ok_or_else(|| {
        Error::contract(format!(
            "adding {pair} creates no butterfly with it as a minimal element; family is not saturated"
        ))
    })?;
    let image = ch.c.union(pair);
    if !family.contains(image) {
        return Err(Error::contract(format!(
            "image {image} of {pair} under chevron {ch} is not a member"
        )));
    }
    Ok(ch)
}

/// Singletons present force all their pairs.
pub fn lemma1_check(family: &SetFamily) -> TheoremReport {
    let mut r = TheoremReport::start(TheoremId::Lemma1, family);
    r.bound = r.k + binom2(r.k);
    butterfly_hypotheses(&mut r, family);
    if r.hypotheses_hold {
        let singles: Vec<usize> = (1..=family.n())
            .filter(|&i| family.contains_bits(1 << (i - 1)))
            .collect();
        'outer: for (x, &i) in singles.iter().enumerate() {
            for &j in &singles[x + 1..] {
                if !family.contains_bits((1 << (i - 1)) | (1 << (j - 1))) {
                    r.fail(Counterexample::MissingPair { i, j });
                    break 'outer;
                }
            }
        }
    }
    r.finish()
}

/// Insert `image` for `item`, recording a collision.
fn record_image(
    r: &mut TheoremReport,
    seen: &mut BTreeMap<SubsetMask, SubsetMask>,
    item: SubsetMask,
    image: SubsetMask,
) {
    if let Some(&first) = seen.get(&image) {
        r.fail(Counterexample::NotInjective {
            first,
            second: item,
            image,
        });
    } else {
        seen.insert(image, item);
    }
}

/// Chevron for `item`, with the checks every chevron must pass; the image
/// `C ∪ item` is returned when all hold.
fn checked_chevron(
    r: &mut TheoremReport,
    family: &SetFamily,
    item: SubsetMask,
    chevron: Result<Chevron>,
) -> Option<SubsetMask> {
    let ch = match chevron {
        Ok(ch) => ch,
        Err(e) => {
            r.fail(Counterexample::NoChevron {
                item,
                detail: e.to_string(),
            });
            return None;
        }
    };
    let shaped = ch.is_valid()
        && item.is_incomparable_to(ch.c)
        && item.is_proper_subset_of(ch.a)
        && item.is_proper_subset_of(ch.b)
        && [ch.a, ch.b, ch.c].iter().all(|s| family.contains(*s));
    let image = ch.c.union(item);
    r.chevrons.push(ChevronEntry {
        item,
        chevron: ch,
        image,
    });
    if !shaped {
        r.fail(Counterexample::BadChevron { item, chevron: ch });
        return None;
    }
    if !family.contains(image) {
        r.fail(Counterexample::ImageNotMember { item, image });
        return None;
    }
    Some(image)
}

/// `|F| >= n + 1` for a butterfly-saturated family, via the injection
/// `i -> {i}` or `C ∪ {i}`.
pub fn verify_theorem2(family: &SetFamily) -> TheoremReport {
    let mut r = TheoremReport::start(TheoremId::T2, family);
    r.bound = family.n() + 1;
    butterfly_hypotheses(&mut r, family);
    if !r.hypotheses_hold {
        return r.finish();
    }
    let g = family.ground();
    if !family.contains(SubsetMask::empty(g)) {
        r.fail(Counterexample::EmptySetMissing);
    }
    let mut seen = BTreeMap::new();
    for i in 1..=family.n() {
        let item = SubsetMask::from_raw(g, 1 << (i - 1));
        if family.contains(item) {
            record_image(&mut r, &mut seen, item, item);
            continue;
        }
        let ch = assign_chevron_to_singleton(family, i);
        if let Some(image) = checked_chevron(&mut r, family, item, ch) {
            record_image(&mut r, &mut seen, item, image);
        }
    }
    r.finish()
}

/// `|F| >= C(k,2) + k(n-k)` for a butterfly-saturated family with `k >= 1`
/// singletons, via the injection on pairs touching a present singleton.
pub fn verify_theorem3(family: &SetFamily) -> TheoremReport {
    let mut r = TheoremReport::start(TheoremId::T3, family);
    let (n, k) = (family.n(), r.k);
    r.bound = binom2(k) + k * (n - k);
    if k == 0 {
        r.notes
            .push("family has no singletons; the bound needs k >= 1 and is vacuous".to_string());
        return r.finish();
    }
    butterfly_hypotheses(&mut r, family);
    if !r.hypotheses_hold {
        return r.finish();
    }
    let g = family.ground();
    let single = |i: usize| family.contains_bits(1 << (i - 1));
    let mut seen = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if !single(i) && !single(j) {
                continue;
            }
            let item = SubsetMask::from_raw(g, (1 << (i - 1)) | (1 << (j - 1)));
            if family.contains(item) {
                record_image(&mut r, &mut seen, item, item);
            } else if single(i) && single(j) {
                r.fail(Counterexample::MissingPair { i, j });
            } else {
                let ch = assign_chevron_to_pair(family, item);
                if let Some(image) = checked_chevron(&mut r, family, item, ch) {
                    record_image(&mut r, &mut seen, item, image);
                }
            }
        }
    }
    r.finish()
}

/// For each element `i`, an ordered member pair `(F, G)` with
/// `F \ G = {i}`. Pairs are scanned with `F` then `G` in lexicographic order
/// of their element lists, so the first hit is reproducible.
pub fn difference_pair_cover(family: &SetFamily) -> Result<Vec<(usize, SubsetMask, SubsetMask)>> {
    let mut lex: Vec<SubsetMask> = family.members().to_vec();
    lex.sort_by(|a, b| a.cmp_lex(*b));
    let mut cover = Vec::with_capacity(family.n());
    let mut uncovered = Vec::new();
    for i in 1..=family.n() {
        let bit = 1u32 << (i - 1);
        let hit = lex.iter().filter(|f| f.bits() & bit != 0).find_map(|&f| {
            lex.iter()
                .find(|g| (f.bits() & !g.bits()) == bit)
                .map(|&g| (i, f, g))
        });
        match hit {
            Some(h) => cover.push(h),
            None => uncovered.push(i),
        }
    }
    if uncovered.is_empty() {
        Ok(cover)
    } else {
        Err(Error::contract(format!(
            "no member pair has difference {{i}} for i in {uncovered:?}"
        )))
    }
}

/// Smallest `b` with `b * b >= n`.
fn ceil_sqrt(n: usize) -> usize {
    let mut b = (n as f64).sqrt() as usize;
    while b * b < n {
        b += 1;
    }
    while b > 0 && (b - 1) * (b - 1) >= n {
        b -= 1;
    }
    b
}

/// `|F|^2 >= n` for an N-saturated family, via a difference-pair cover of
/// `[n]`. With `strong`, also checks that below every member `F` and for
/// every `i ∈ F` there are members `A ⊆ F`, `B` with `A \ B = {i}`.
pub fn verify_prop4_with(family: &SetFamily, strong: bool) -> TheoremReport {
    let mut r = TheoremReport::start(TheoremId::P4, family);
    r.bound = ceil_sqrt(family.n());
    let sat = saturation_report_fail_fast(family, &n_poset());
    if !sat.saturated {
        r.notes.push(if sat.free {
            format!("family is N-free but not saturated: {} can be added", sat.unsaturated[0])
        } else {
            "family contains an N".to_string()
        });
        return r.finish();
    }
    r.hypotheses_hold = true;
    match difference_pair_cover(family) {
        Ok(cover) => r.cover = cover,
        Err(_) => {
            let covered = |i: usize| {
                let bit = 1u32 << (i - 1);
                family
                    .iter()
                    .any(|f| family.iter().any(|g| f.bits() & !g.bits() == bit))
            };
            let elements = (1..=family.n()).filter(|&i| !covered(i)).collect();
            r.fail(Counterexample::Uncovered { elements });
        }
    }
    if strong {
        'outer: for f in family.iter() {
            for i in f.elements() {
                let bit = 1u32 << (i - 1);
                let ok = family.iter().filter(|a| a.is_subset_of(f)).any(|a| {
                    family.iter().any(|b| a.bits() & !b.bits() == bit)
                });
                if !ok {
                    r.fail(Counterexample::NoInnerPair { set: f, i });
                    break 'outer;
                }
            }
        }
    }
    // |F|^2 >= n, integer form
    if r.size * r.size < r.n {
        r.fail(Counterexample::BoundViolated {
            size: r.size,
            bound: r.bound,
        });
    }
    r.finish()
}

pub fn verify_prop4(family: &SetFamily) -> TheoremReport {
    verify_prop4_with(family, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GroundSet;
    use crate::saturation::{butterfly_construction, n_construction};

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(g(n), e).unwrap()
    }

    #[test]
    fn lemma1_on_construction() {
        let r = lemma1_check(&butterfly_construction(5).unwrap());
        assert!(r.hypotheses_hold && r.passed, "{r:?}");
    }

    #[test]
    fn lemma1_gates_on_saturation() {
        let f = SetFamily::from_element_lists(g(3), &[&[], &[1], &[2], &[1, 2], &[1, 2, 3]]).unwrap();
        let r = lemma1_check(&f);
        assert!(!r.hypotheses_hold);
        assert!(!r.passed);
        assert!(r.notes[0].contains("not saturated"), "{:?}", r.notes);
    }

    #[test]
    fn theorem2_on_construction() {
        let r = verify_theorem2(&butterfly_construction(5).unwrap());
        assert!(r.passed, "{r:?}");
        assert_eq!((r.size, r.bound), (19, 6));
        assert!(r.chevrons.is_empty());
    }

    #[test]
    fn theorem2_rejects_unsaturated() {
        let f = SetFamily::from_element_lists(g(3), &[&[], &[1]]).unwrap();
        let r = verify_theorem2(&f);
        assert!(!r.hypotheses_hold && !r.passed);
    }

    #[test]
    fn n_equal_one_out_of_scope() {
        let f = SetFamily::power_set(g(1));
        for r in [verify_theorem2(&f), verify_theorem3(&f), lemma1_check(&f)] {
            assert!(!r.passed);
            assert!(r.notes.iter().any(|n| n.contains("n = 1")), "{r:?}");
        }
    }

    #[test]
    fn theorem3_on_construction() {
        let r = verify_theorem3(&butterfly_construction(6).unwrap());
        assert!(r.passed, "{r:?}");
        assert_eq!((r.k, r.bound, r.size), (6, 15, 26));
    }

    #[test]
    fn theorem3_vacuous_without_singletons() {
        let f = SetFamily::from_element_lists(g(3), &[&[], &[1, 2]]).unwrap();
        let r = verify_theorem3(&f);
        assert_eq!(r.k, 0);
        assert!(!r.hypotheses_hold && !r.passed);
        assert!(r.notes[0].contains("vacuous"));
    }

    #[test]
    fn chevron_preconditions() {
        let f = butterfly_construction(4).unwrap();
        assert!(matches!(assign_chevron_to_singleton(&f, 1), Err(Error::Usage(_))));
        assert!(matches!(assign_chevron_to_pair(&f, set(4, &[1, 2])), Err(Error::Usage(_))));
        // Both singletons missing.
        let h = SetFamily::from_element_lists(g(4), &[&[], &[1]]).unwrap();
        assert!(matches!(assign_chevron_to_pair(&h, set(4, &[2, 3])), Err(Error::Usage(_))));
        assert!(matches!(assign_chevron_to_pair(&h, set(4, &[1, 2, 3])), Err(Error::Usage(_))));
        // Exactly one present, but no butterfly can form.
        assert!(matches!(assign_chevron_to_pair(&h, set(4, &[1, 2])), Err(Error::Contract(_))));
        assert!(matches!(assign_chevron_to_singleton(&h, 2), Err(Error::Contract(_))));
    }

    #[test]
    fn max_chevron_prefers_large_c() {
        // C = {1,2} would need two incomparable tops over {1,2,3}; only one
        // exists, so the best chevron falls back to C = {1}.
        let f = SetFamily::from_element_lists(
            g(4),
            &[&[1], &[1, 2], &[1, 2, 3], &[1, 3, 4], &[2, 3]],
        )
        .unwrap();
        let ch = max_chevron(&f, set(4, &[3])).unwrap();
        assert_eq!(ch.c, set(4, &[1]));
        assert_eq!((ch.a, ch.b), (set(4, &[1, 2, 3]), set(4, &[1, 3, 4])));
        assert!(ch.is_valid());
    }

    #[test]
    fn difference_cover_examples() {
        let f = n_construction(4).unwrap();
        let cover = difference_pair_cover(&f).unwrap();
        assert_eq!(cover.len(), 4);
        assert_eq!(cover[0], (1, set(4, &[1]), set(4, &[])));
        assert_eq!(cover[2], (3, set(4, &[1, 2, 3]), set(4, &[1, 2])));
        for (i, a, b) in cover {
            assert_eq!(a.difference(b), SubsetMask::singleton(g(4), i).unwrap());
        }
        let bad = SetFamily::from_element_lists(g(3), &[&[], &[1, 2]]).unwrap();
        assert!(matches!(difference_pair_cover(&bad), Err(Error::Contract(_))));
    }

    #[test]
    fn prop4_examples() {
        let r = verify_prop4(&n_construction(9).unwrap());
        assert!(r.passed, "{r:?}");
        assert_eq!((r.size, r.bound), (18, 3));
        assert!(verify_prop4_with(&n_construction(6).unwrap(), true).passed);
        let bad = SetFamily::from_element_lists(g(3), &[&[], &[1]]).unwrap();
        let r = verify_prop4(&bad);
        assert!(!r.hypotheses_hold && !r.passed);
    }

    #[test]
    fn ceil_sqrt_values() {
        let want = [0, 1, 2, 2, 2, 3, 3, 3, 3, 3, 4];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(ceil_sqrt(n), w, "n={n}");
        }
    }

    #[test]
    fn report_json_and_tsv() {
        let r = verify_theorem2(&butterfly_construction(4).unwrap());
        let v = r.to_json();
        assert_eq!(v["theorem"], "T2");
        assert_eq!(v["bound"], 5);
        assert_eq!(v["passed"], true);
        assert_eq!(r.chevrons_tsv(), "item\tA\tB\tC\timage\n");
    }
}
