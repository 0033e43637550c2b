//! Ground sets, subsets as bitmasks, set families and finite posets.
//!
//! Elements of `[n]` are 1-indexed in every public constructor and in all
//! text I/O; element `i` lives at bit `i - 1` of a mask.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set. `2^24` subsets is the most any exhaustive
/// loop in this crate will walk.
pub const MAX_GROUND: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GroundSet(u8);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::usage(format!(
                "ground set size must be in 1..={MAX_GROUND}, got {n}"
            )));
        }
        Ok(GroundSet(n as u8))
    }

    pub fn n(self) -> usize {
        self.0 as usize
    }

    /// Mask with all `n` bits set.
    pub fn full_bits(self) -> u32 {
        if self.0 as usize == 32 {
            u32::MAX
        } else {
            (1u32 << self.0) - 1
        }
    }

    /// Number of subsets of `[n]`.
    pub fn subset_count(self) -> usize {
        1usize << self.0
    }

    /// Every subset of `[n]` in canonical order.
    pub fn all_subsets(self) -> Vec<SubsetMask> {
        let mut all: Vec<SubsetMask> = (0..=self.full_bits())
            .map(|bits| SubsetMask { bits, ground: self })
            .collect();
        all.sort();
        all
    }
}

impl TryFrom<usize> for GroundSet {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        GroundSet::new(n)
    }
}

impl From<GroundSet> for usize {
    fn from(g: GroundSet) -> usize {
        g.n()
    }
}

/// Containment relation between two subsets, read as "a is ... of b".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    ProperSubset,
    ProperSuperset,
    Equal,
    Incomparable,
}

impl Relation {
    pub fn of_bits(a: u32, b: u32) -> Relation {
        if a == b {
            Relation::Equal
        } else if a & b == a {
            Relation::ProperSubset
        } else if a & b == b {
            Relation::ProperSuperset
        } else {
            Relation::Incomparable
        }
    }

    pub fn flip(self) -> Relation {
        match self {
            Relation::ProperSubset => Relation::ProperSuperset,
            Relation::ProperSuperset => Relation::ProperSubset,
            r => r,
        }
    }
}

/// One subset of `[n]`.
///
/// The derived ordering is the canonical family order: cardinality first,
/// then numeric mask value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    bits: u32,
    ground: GroundSet,
}

impl SubsetMask {
    pub fn new(ground: GroundSet, bits: u32) -> Result<Self> {
        if bits & !ground.full_bits() != 0 {
            return Err(Error::usage(format!(
                "mask {bits:#x} has bits outside [{}]",
                ground.n()
            )));
        }
        Ok(SubsetMask { bits, ground })
    }

    /// Build from 1-indexed elements.
    pub fn from_elements(ground: GroundSet, elements: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > ground.n() {
                return Err(Error::usage(format!(
                    "element {e} outside [{}]",
                    ground.n()
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask { bits, ground })
    }

    pub fn empty(ground: GroundSet) -> Self {
        SubsetMask { bits: 0, ground }
    }

    pub fn full(ground: GroundSet) -> Self {
        SubsetMask {
            bits: ground.full_bits(),
            ground,
        }
    }

    pub fn singleton(ground: GroundSet, i: usize) -> Result<Self> {
        Self::from_elements(ground, &[i])
    }

    /// `{1, 2, ..., i}`; `i = 0` gives the empty set.
    pub fn prefix(ground: GroundSet, i: usize) -> Result<Self> {
        if i > ground.n() {
            return Err(Error::usage(format!("prefix [{i}] exceeds [{}]", ground.n())));
        }
        let bits = if i == 0 { 0 } else { ((1u64 << i) - 1) as u32 };
        Ok(SubsetMask { bits, ground })
    }

    pub(crate) fn from_raw(ground: GroundSet, bits: u32) -> Self {
        debug_assert_eq!(bits & !ground.full_bits(), 0);
        SubsetMask { bits, ground }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn ground(self) -> GroundSet {
        self.ground
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= self.ground.n() && self.bits & (1 << (i - 1)) != 0
    }

    /// 1-indexed elements in increasing order.
    pub fn elements(self) -> Vec<usize> {
        (0..self.ground.n())
            .filter(|b| self.bits & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.bits & other.bits == self.bits
    }

    pub fn is_proper_subset_of(self, other: SubsetMask) -> bool {
        self.bits != other.bits && self.is_subset_of(other)
    }

    pub fn is_incomparable_to(self, other: SubsetMask) -> bool {
        Relation::of_bits(self.bits, other.bits) == Relation::Incomparable
    }

    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask {
            bits: self.bits | other.bits,
            ground: self.ground,
        }
    }

    pub fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask {
            bits: self.bits & !other.bits,
            ground: self.ground,
        }
    }

    /// Lexicographic comparison of the sorted element lists, so `{1} < {1,2}
    /// < {1,3} < {2}`; the empty set comes first.
    pub fn cmp_lex(self, other: SubsetMask) -> Ordering {
        self.elements().cmp(&other.elements())
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground
            .cmp(&other.ground)
            .then(self.bits.count_ones().cmp(&other.bits.count_ones()))
            .then(self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

/// Exact containment relation between `a` and `b`.
pub fn subset_relation(a: SubsetMask, b: SubsetMask) -> Result<Relation> {
    if a.ground != b.ground {
        return Err(Error::usage(format!(
            "masks over different ground sets [{}] and [{}]",
            a.ground.n(),
            b.ground.n()
        )));
    }
    Ok(Relation::of_bits(a.bits, b.bits))
}

/// A duplicate-free family of subsets of one ground set, kept in canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<SubsetMask>,
}

impl SetFamily {
    pub fn new(ground: GroundSet, members: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut v = Vec::new();
        for m in members {
            if m.ground != ground {
                return Err(Error::usage(format!(
                    "member {m} is over [{}], family is over [{}]",
                    m.ground.n(),
                    ground.n()
                )));
            }
            v.push(m);
        }
        Ok(Self::normalized(ground, v))
    }

    pub fn from_bits(ground: GroundSet, bits: impl IntoIterator<Item = u32>) -> Result<Self> {
        let members = bits
            .into_iter()
            .map(|b| SubsetMask::new(ground, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalized(ground, members))
    }

    /// Shorthand for tests and constructions: each inner slice is a set of
    /// 1-indexed elements.
    pub fn from_element_lists(ground: GroundSet, sets: &[&[usize]]) -> Result<Self> {
        let members = sets
            .iter()
            .map(|s| SubsetMask::from_elements(ground, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalized(ground, members))
    }

    pub(crate) fn normalized(ground: GroundSet, mut members: Vec<SubsetMask>) -> Self {
        members.sort_unstable();
        members.dedup();
        SetFamily { ground, members }
    }

    pub fn empty(ground: GroundSet) -> Self {
        SetFamily {
            ground,
            members: Vec::new(),
        }
    }

    pub fn power_set(ground: GroundSet) -> Self {
        SetFamily {
            ground,
            members: ground.all_subsets(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, m: SubsetMask) -> bool {
        m.ground == self.ground && self.members.binary_search(&m).is_ok()
    }

    pub fn contains_bits(&self, bits: u32) -> bool {
        bits & !self.ground.full_bits() == 0 && self.contains(SubsetMask::from_raw(self.ground, bits))
    }

    /// Subsets of `[n]` not in the family, in canonical order.
    pub fn missing(&self) -> Vec<SubsetMask> {
        self.ground
            .all_subsets()
            .into_iter()
            .filter(|s| !self.contains(*s))
            .collect()
    }

    /// Copy of the family with `m` added.
    pub fn with(&self, m: SubsetMask) -> Result<SetFamily> {
        if m.ground != self.ground {
            return Err(Error::usage(format!("{m} is over a different ground set")));
        }
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search(&m) {
            members.insert(pos, m);
        }
        Ok(SetFamily {
            ground: self.ground,
            members,
        })
    }

    pub fn is_superfamily_of(&self, other: &SetFamily) -> bool {
        other.iter().all(|m| self.contains(m))
    }

    /// Family file text: one `{a,b,...}` line per member in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            out.push_str(&m.to_string());
            out.push('\n');
        }
        out
    }

    /// Parse the family file format. Without an explicit ground set, `n` is
    /// the largest element mentioned (at least 1).
    pub fn parse(text: &str, ground: Option<GroundSet>) -> Result<SetFamily> {
        let mut raw: Vec<(usize, u32)> = Vec::new();
        let mut max_elem = 0usize;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match line.find('#') {
                Some(p) => &line[..p],
                None => line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let bits = parse_set_line(line).map_err(|message| Error::Parse {
                line: lineno,
                message,
            })?;
            max_elem = max_elem.max(32 - bits.leading_zeros() as usize);
            raw.push((lineno, bits));
        }
        let ground = match ground {
            Some(g) => g,
            None => GroundSet::new(max_elem.max(1)).map_err(|e| Error::Parse {
                line: 0,
                message: e.to_string(),
            })?,
        };
        let mut members = Vec::with_capacity(raw.len());
        for (line, bits) in raw {
            let m = SubsetMask::new(ground, bits).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            members.push(m);
        }
        Ok(Self::normalized(ground, members))
    }
}

fn parse_set_line(line: &str) -> std::result::Result<u32, String> {
    if let Some(hex) = line.strip_prefix("0x").or_else(|| line.strip_prefix("0X")) {
        return u32::from_str_radix(hex.trim(), 16).map_err(|e| format!("bad hex mask {line:?}: {e}"));
    }
    let inner = match (line.strip_prefix('{'), line.ends_with('}')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => line,
        _ => return Err(format!("unbalanced braces in {line:?}")),
    };
    let mut bits = 0u32;
    for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        let e: usize = tok
            .parse()
            .map_err(|_| format!("bad element {tok:?}"))?;
        if e == 0 || e > MAX_GROUND {
            return Err(format!("element {e} outside 1..={MAX_GROUND}"));
        }
        bits |= 1 << (e - 1);
    }
    Ok(bits)
}

/// A finite poset given by its full strict order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetSpec {
    name: String,
    size: usize,
    less: Vec<bool>,
    labels: Vec<String>,
}

impl PosetSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `a` strictly below `b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a * self.size + b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of strict relations `a < b`.
    pub fn relation_count(&self) -> usize {
        self.less.iter().filter(|&&b| b).count()
    }

    /// Number of elements related to `x` in either direction.
    pub fn degree(&self, x: usize) -> usize {
        (0..self.size).filter(|&y| self.comparable(x, y)).count()
    }

    /// Length of the longest chain strictly below `x`.
    pub fn height_below(&self, x: usize) -> usize {
        (0..self.size)
            .filter(|&y| self.less(y, x))
            .map(|y| 1 + self.height_below(y))
            .max()
            .unwrap_or(0)
    }

    /// Length of the longest chain strictly above `x`.
    pub fn height_above(&self, x: usize) -> usize {
        (0..self.size)
            .filter(|&y| self.less(x, y))
            .map(|y| 1 + self.height_above(y))
            .max()
            .unwrap_or(0)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::usage(format!(
                "{} labels for a {}-element poset",
                labels.len(),
                self.size
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Build from strict pairs `(a, b)` meaning `a < b`; takes the
    /// transitive closure, then validates.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<PosetSpec> {
        let mut m = vec![vec![false; size]; size];
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(Error::usage(format!(
                    "pair ({a},{b}) out of range for {size} elements"
                )));
            }
            m[a][b] = true;
        }
        // Warshall
        for k in 0..size {
            for i in 0..size {
                if m[i][k] {
                    for j in 0..size {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        validate_poset(&m)
    }

    /// Read `{"size": m, "less": [[a,b],...]}` with 0-indexed strict pairs.
    pub fn from_json(text: &str) -> Result<PosetSpec> {
        #[derive(Deserialize)]
        struct Raw {
            size: usize,
            less: Vec<(usize, usize)>,
            #[serde(default)]
            labels: Option<Vec<String>>,
            #[serde(default)]
            name: Option<String>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let mut p = Self::from_pairs(raw.size, &raw.less)?;
        if let Some(labels) = raw.labels {
            p = p.with_labels(labels)?;
        }
        if let Some(name) = raw.name {
            p.name = name;
        }
        Ok(p)
    }

    /// Strict pairs in row-major order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if self.less(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "size": self.size,
            "less": self.strict_pairs(),
            "labels": self.labels,
        })
    }
}

/// Check a square matrix is a strict partial order; every violated cell is
/// reported.
pub fn validate_poset(raw: &[Vec<bool>]) -> Result<PosetSpec> {
    let size = raw.len();
    if let Some((i, row)) = raw.iter().enumerate().find(|(_, r)| r.len() != size) {
        return Err(Error::InvalidPoset(vec![format!(
            "row {i} has {} entries, expected {size}",
            row.len()
        )]));
    }
    let mut problems = Vec::new();
    for a in 0..size {
        if raw[a][a] {
            problems.push(format!("reflexivity violated at element {a}"));
        }
    }
    for a in 0..size {
        for b in a + 1..size {
            if raw[a][b] && raw[b][a] {
                problems.push(format!("antisymmetry violated at ({a},{b})"));
            }
        }
    }
    for a in 0..size {
        for b in 0..size {
            if !raw[a][b] {
                continue;
            }
            for c in 0..size {
                if raw[b][c] && !raw[a][c] {
                    problems.push(format!("transitivity violated at ({a},{c}) via {b}"));
                }
            }
        }
    }
    if !problems.is_empty() {
        return Err(Error::InvalidPoset(problems));
    }
    Ok(PosetSpec {
        name: format!("poset{size}"),
        size,
        less: raw.iter().flatten().copied().collect(),
        labels: (0..size).map(|i| i.to_string()).collect(),
    })
}

/// `s` mutually incomparable bottoms, each strictly below each of `t`
/// mutually incomparable tops. Elements `0..s` are the bottoms.
pub fn complete_bipartite_poset(bottoms: usize, tops: usize) -> Result<PosetSpec> {
    if bottoms == 0 || tops == 0 {
        return Err(Error::usage(format!(
            "complete bipartite poset needs at least one bottom and one top, got ({bottoms},{tops})"
        )));
    }
    let size = bottoms + tops;
    let pairs: Vec<_> = (0..bottoms)
        .flat_map(|b| (bottoms..size).map(move |t| (b, t)))
        .collect();
    let labels = (1..=bottoms)
        .map(|i| format!("b{i}"))
        .chain((1..=tops).map(|i| format!("t{i}")))
        .collect();
    let name = match (bottoms, tops) {
        (2, 2) => "butterfly".to_string(),
        (s, t) => format!("K_{{{t},{s}}}"),
    };
    Ok(PosetSpec::from_pairs(size, &pairs)?
        .with_labels(labels)?
        .with_name(name))
}

pub fn butterfly() -> PosetSpec {
    complete_bipartite_poset(2, 2).expect("2x2 is a valid size")
}

/// The four-element poset with `a < b`, `c < b`, `c < d` and nothing else.
pub fn n_poset() -> PosetSpec {
    PosetSpec::from_pairs(4, &[(0, 1), (2, 1), (2, 3)])
        .and_then(|p| p.with_labels(["a", "b", "c", "d"].map(String::from).to_vec()))
        .expect("N is a valid poset")
        .with_name("N")
}

pub fn chain(k: usize) -> PosetSpec {
    let pairs: Vec<_> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .collect();
    PosetSpec::from_pairs(k, &pairs)
        .expect("chains are valid")
        .with_name(format!("chain{k}"))
}

pub fn antichain(k: usize) -> PosetSpec {
    PosetSpec::from_pairs(k, &[])
        .expect("antichains are valid")
        .with_name(format!("antichain{k}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(g(n), e).unwrap()
    }

    #[test]
    fn relation_examples() {
        assert_eq!(
            subset_relation(set(3, &[1]), set(3, &[1, 2])).unwrap(),
            Relation::ProperSubset
        );
        assert_eq!(
            subset_relation(set(3, &[1]), set(3, &[2, 3])).unwrap(),
            Relation::Incomparable
        );
        assert_eq!(
            subset_relation(set(3, &[1, 2]), set(3, &[1, 2])).unwrap(),
            Relation::Equal
        );
        assert!(subset_relation(set(3, &[1]), set(4, &[1])).is_err());
    }

    #[test]
    fn ground_set_bounds() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(25).is_err());
        assert_eq!(g(24).full_bits(), 0xff_ffff);
        assert!(SubsetMask::new(g(3), 0b1000).is_err());
        assert!(SubsetMask::from_elements(g(3), &[0]).is_err());
    }

    #[test]
    fn butterfly_is_valid() {
        let b = butterfly();
        assert_eq!(b.size(), 4);
        assert_eq!(b.relation_count(), 4);
        assert!(!b.comparable(0, 1));
        assert!(!b.comparable(2, 3));
    }

    #[test]
    fn reflexive_matrix_rejected() {
        let m = vec![vec![true, false], vec![false, false]];
        match validate_poset(&m) {
            Err(Error::InvalidPoset(p)) => {
                assert_eq!(p, vec!["reflexivity violated at element 0".to_string()])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn intransitive_matrix_rejected() {
        let mut m = vec![vec![false; 3]; 3];
        m[0][1] = true;
        m[1][2] = true;
        match validate_poset(&m) {
            Err(Error::InvalidPoset(p)) => {
                assert_eq!(p.len(), 1);
                assert!(p[0].contains("(0,2)"), "{p:?}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn antisymmetry_and_shape_errors() {
        let m = vec![vec![false, true], vec![true, false]];
        let Err(Error::InvalidPoset(p)) = validate_poset(&m) else {
            panic!()
        };
        assert!(p.iter().any(|s| s.contains("antisymmetry violated at (0,1)")));
        assert!(validate_poset(&[vec![false, false], vec![false]]).is_err());
    }

    #[test]
    fn bipartite_examples() {
        let k23 = complete_bipartite_poset(3, 2).unwrap();
        assert_eq!(k23.size(), 5);
        assert_eq!(k23.relation_count(), 6);
        let c2 = complete_bipartite_poset(1, 1).unwrap();
        assert_eq!(c2, chain(2).with_labels(c2.labels().to_vec()).unwrap().with_name(c2.name()));
        assert!(complete_bipartite_poset(0, 2).is_err());
        assert!(complete_bipartite_poset(2, 0).is_err());
    }

    #[test]
    fn n_poset_shape() {
        let n = n_poset();
        assert_eq!(n.size(), 4);
        assert_eq!(n.relation_count(), 3);
        assert_ne!(n.relation_count(), butterfly().relation_count());
        assert!(n.less(0, 1) && n.less(2, 1) && n.less(2, 3));
        assert!(!n.comparable(0, 2) && !n.comparable(0, 3) && !n.comparable(1, 3));
        let m: Vec<Vec<bool>> = (0..4).map(|a| (0..4).map(|b| n.less(a, b)).collect()).collect();
        assert!(validate_poset(&m).is_ok());
    }

    #[test]
    fn poset_json_closes_transitively() {
        let p = PosetSpec::from_json(r#"{"size": 3, "less": [[0,1],[1,2]]}"#).unwrap();
        assert!(p.less(0, 2));
        assert!(PosetSpec::from_json(r#"{"size": 2, "less": [[0,1],[1,0]]}"#).is_err());
        assert!(PosetSpec::from_json(r#"{"size": 2, "less": [[0,5]]}"#).is_err());
        let q = PosetSpec::from_json(&butterfly().to_json().to_string()).unwrap();
        assert_eq!(q, butterfly());
    }

    #[test]
    fn heights() {
        let c = chain(3);
        assert_eq!(c.height_below(2), 2);
        assert_eq!(c.height_above(0), 2);
        assert_eq!(butterfly().height_below(2), 1);
    }

    #[test]
    fn family_parse_formats() {
        let text = "# a comment\n{1,3,4}\n1 3\n\n0x3\n{}\n{ 2 , 4 }  # trailing\n1,3,4\n";
        let f = SetFamily::parse(text, None).unwrap();
        assert_eq!(f.n(), 4);
        assert_eq!(f.len(), 5);
        assert_eq!(f.to_text(), "{}\n{1,2}\n{1,3}\n{2,4}\n{1,3,4}\n");
        assert!(SetFamily::parse("{1,2", None).is_err());
        assert!(SetFamily::parse("0", None).is_err());
        assert!(SetFamily::parse("x", None).is_err());
        let e = SetFamily::parse("{1}\n{5}\n", Some(g(4))).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        let empty = SetFamily::parse("{}\n", Some(g(4))).unwrap();
        assert_eq!(empty.n(), 4);
        assert_eq!(empty.len(), 1);
    }

    #[test]
    fn canonical_order_and_membership() {
        let f = SetFamily::from_element_lists(g(3), &[&[1, 2], &[3], &[], &[1], &[3]]).unwrap();
        let bits: Vec<u32> = f.iter().map(|m| m.bits()).collect();
        assert_eq!(bits, vec![0, 1, 4, 3]);
        assert!(f.contains(set(3, &[3])));
        assert!(!f.contains(set(3, &[2])));
        assert_eq!(f.missing().len(), 4);
        assert_eq!(f.with(set(3, &[2])).unwrap().len(), 5);
    }

    #[test]
    fn lex_order() {
        let mut v = vec![set(3, &[2]), set(3, &[1, 2]), set(3, &[]), set(3, &[1])];
        v.sort_by(|a, b| a.cmp_lex(*b));
        assert_eq!(v, vec![set(3, &[]), set(3, &[1]), set(3, &[1, 2]), set(3, &[2])]);
    }
}
