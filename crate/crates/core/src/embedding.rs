//! Induced-copy search: does a family contain a subfamily whose inclusion
//! order reproduces a poset exactly, comparabilities and incomparabilities
//! both?
//!
//! The search backtracks over poset elements, most-constrained first. Every
//! member of the family carries three bitsets over member indices (strictly
//! below, strictly above, incomparable), so the candidates for the next poset
//! element are the intersection of one row per already-placed element.

use std::collections::HashSet;

use serde_json::json;

use crate::error::{Error, Result};
use crate::model::{GroundSet, PosetSpec, Relation, SetFamily, SubsetMask};

/// An injective map from poset elements to family members realizing an
/// induced copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingWitness {
    poset: PosetSpec,
    assignment: Vec<SubsetMask>,
}

impl EmbeddingWitness {
    pub fn new(poset: PosetSpec, assignment: Vec<SubsetMask>) -> Result<Self> {
        let w = EmbeddingWitness { poset, assignment };
        if !w.is_valid() {
            return Err(Error::usage("assignment is not an induced copy of the poset"));
        }
        Ok(w)
    }

    pub fn poset(&self) -> &PosetSpec {
        &self.poset
    }

    /// Image of each poset element, indexed by element.
    pub fn assignment(&self) -> &[SubsetMask] {
        &self.assignment
    }

    pub fn image(&self, x: usize) -> SubsetMask {
        self.assignment[x]
    }

    /// Recheck every ordered pair from scratch.
    pub fn is_valid(&self) -> bool {
        let q = &self.poset;
        if self.assignment.len() != q.size() {
            return false;
        }
        for x in 0..q.size() {
            for y in 0..q.size() {
                if x == y {
                    continue;
                }
                let (a, b) = (self.assignment[x], self.assignment[y]);
                let want = if q.less(x, y) {
                    Relation::ProperSubset
                } else if q.less(y, x) {
                    Relation::ProperSuperset
                } else {
                    Relation::Incomparable
                };
                if Relation::of_bits(a.bits(), b.bits()) != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.assignment
                .iter()
                .enumerate()
                .map(|(x, s)| json!({"poset_element": self.poset.label(x), "set": s.elements()}))
                .collect(),
        )
    }
}

/// Relation bitsets for a growable list of members.
#[derive(Debug, Clone)]
struct RelationIndex {
    members: Vec<u32>,
    words: usize,
    below: Vec<u64>,
    above: Vec<u64>,
    incomp: Vec<u64>,
}

impl RelationIndex {
    fn with_capacity(capacity: usize) -> Self {
        let words = capacity.div_ceil(64).max(1);
        RelationIndex {
            members: Vec::with_capacity(capacity),
            words,
            below: Vec::new(),
            above: Vec::new(),
            incomp: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    fn grow(&mut self) {
        let old = self.words;
        let new = old * 2;
        for rows in [&mut self.below, &mut self.above, &mut self.incomp] {
            let mut grown = vec![0u64; rows.len() / old * new];
            for (i, chunk) in rows.chunks(old).enumerate() {
                grown[i * new..i * new + old].copy_from_slice(chunk);
            }
            *rows = grown;
        }
        self.words = new;
    }

    fn push(&mut self, bits: u32) {
        let i = self.members.len();
        if i >= self.words * 64 {
            self.grow();
        }
        let w = self.words;
        for rows in [&mut self.below, &mut self.above, &mut self.incomp] {
            rows.resize((i + 1) * w, 0);
        }
        let (iw, ib) = (i / 64, 1u64 << (i % 64));
        for (j, &other) in self.members.iter().enumerate() {
            let (jw, jb) = (j / 64, 1u64 << (j % 64));
            match Relation::of_bits(bits, other) {
                Relation::ProperSubset => {
                    self.above[i * w + jw] |= jb;
                    self.below[j * w + iw] |= ib;
                }
                Relation::ProperSuperset => {
                    self.below[i * w + jw] |= jb;
                    self.above[j * w + iw] |= ib;
                }
                Relation::Incomparable => {
                    self.incomp[i * w + jw] |= jb;
                    self.incomp[j * w + iw] |= ib;
                }
                Relation::Equal => {}
            }
        }
        self.members.push(bits);
    }

    fn pop(&mut self) -> Option<u32> {
        let bits = self.members.pop()?;
        let i = self.members.len();
        let w = self.words;
        let (iw, ib) = (i / 64, !(1u64 << (i % 64)));
        for rows in [&mut self.below, &mut self.above, &mut self.incomp] {
            for j in 0..i {
                rows[j * w + iw] &= ib;
            }
            rows.truncate(i * w);
        }
        Some(bits)
    }

    fn row(&self, rel: Relation, i: usize) -> &[u64] {
        let rows = match rel {
            Relation::ProperSubset => &self.below,
            Relation::ProperSuperset => &self.above,
            _ => &self.incomp,
        };
        &rows[i * self.words..(i + 1) * self.words]
    }
}

/// Reusable induced-copy search for one poset over a family that may grow
/// and shrink at the end.
///
/// Members are indexed in insertion order; when built from a [`SetFamily`]
/// that is the canonical order, so candidates are tried canonically.
#[derive(Debug, Clone)]
pub struct EmbeddingSearch {
    ground: GroundSet,
    poset: PosetSpec,
    index: RelationIndex,
    /// Poset elements by descending degree, ties by index.
    order: Vec<usize>,
    min_card: Vec<usize>,
    max_card: Vec<usize>,
}

impl EmbeddingSearch {
    pub fn new(family: &SetFamily, poset: &PosetSpec) -> Self {
        Self::with_capacity(family, poset, family.len() + 1)
    }

    /// Preallocate row space for `capacity` members.
    pub fn with_capacity(family: &SetFamily, poset: &PosetSpec, capacity: usize) -> Self {
        let mut index = RelationIndex::with_capacity(capacity.max(family.len()));
        for m in family.iter() {
            index.push(m.bits());
        }
        let mut order: Vec<usize> = (0..poset.size()).collect();
        order.sort_by_key(|&x| (std::cmp::Reverse(poset.degree(x)), x));
        let n = family.n();
        let min_card = (0..poset.size()).map(|x| poset.height_below(x)).collect();
        let max_card = (0..poset.size())
            .map(|x| n.saturating_sub(poset.height_above(x)))
            .collect();
        EmbeddingSearch {
            ground: family.ground(),
            poset: poset.clone(),
            index,
            order,
            min_card,
            max_card,
        }
    }

    pub fn poset(&self) -> &PosetSpec {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.len() == 0
    }

    pub fn member(&self, i: usize) -> SubsetMask {
        SubsetMask::from_raw(self.ground, self.index.members[i])
    }

    /// Append a member; the caller keeps members distinct.
    pub fn push(&mut self, m: SubsetMask) {
        debug_assert!(!self.index.members.contains(&m.bits()));
        self.index.push(m.bits());
    }

    /// Remove the most recently pushed member.
    pub fn pop(&mut self) -> Option<SubsetMask> {
        self.index.pop().map(|b| SubsetMask::from_raw(self.ground, b))
    }

    /// Current members as a canonical family.
    pub fn family(&self) -> SetFamily {
        SetFamily::normalized(
            self.ground,
            self.index
                .members
                .iter()
                .map(|&b| SubsetMask::from_raw(self.ground, b))
                .collect(),
        )
    }

    fn fits(&self, x: usize, member: usize) -> bool {
        let c = self.index.members[member].count_ones() as usize;
        c >= self.min_card[x] && c <= self.max_card[x]
    }

    /// First induced copy in deterministic order, as member indices per
    /// poset element. With `required`, that member must be one of the images;
    /// it is forced at each poset position in index order.
    pub fn find_indices(&self, required: Option<usize>) -> Option<Vec<usize>> {
        let mut found = None;
        self.visit(required, &mut |assign| {
            found = Some(assign.to_vec());
            true
        });
        found
    }

    pub fn find(&self, required: Option<usize>) -> Option<EmbeddingWitness> {
        self.find_indices(required).map(|idx| EmbeddingWitness {
            poset: self.poset.clone(),
            assignment: idx.into_iter().map(|i| self.member(i)).collect(),
        })
    }

    /// Does adding the most recent member create a copy through it?
    pub fn last_member_completes_copy(&self) -> bool {
        match self.len() {
            0 => false,
            len => self.find_indices(Some(len - 1)).is_some(),
        }
    }

    /// Walk induced copies in deterministic order until `visit` returns true.
    fn visit(&self, required: Option<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let m = self.poset.size();
        if m == 0 || m > self.len() {
            return;
        }
        let w = self.index.words;
        let mut assign = vec![usize::MAX; m];
        let mut scratch = vec![0u64; m * w];
        match required {
            None => {
                self.extend(&self.order, 0, &mut assign, &mut scratch, visit);
            }
            Some(r) => {
                for p in 0..m {
                    if !self.fits(p, r) {
                        continue;
                    }
                    let order: Vec<usize> = std::iter::once(p)
                        .chain(self.order.iter().copied().filter(|&x| x != p))
                        .collect();
                    assign[p] = r;
                    if self.extend(&order, 1, &mut assign, &mut scratch, visit) {
                        return;
                    }
                    assign[p] = usize::MAX;
                }
            }
        }
    }

    fn extend(
        &self,
        order: &[usize],
        depth: usize,
        assign: &mut [usize],
        scratch: &mut [u64],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(assign);
        }
        let x = order[depth];
        let w = self.index.words;
        let (cur, rest) = scratch.split_at_mut(w);
        if depth == 0 {
            cur.fill(0);
            for i in 0..self.len() {
                cur[i / 64] |= 1 << (i % 64);
            }
        } else {
            cur.fill(u64::MAX);
            for &y in &order[..depth] {
                let rel = if self.poset.less(x, y) {
                    Relation::ProperSubset
                } else if self.poset.less(y, x) {
                    Relation::ProperSuperset
                } else {
                    Relation::Incomparable
                };
                for (c, r) in cur.iter_mut().zip(self.index.row(rel, assign[y])) {
                    *c &= r;
                }
            }
        }
        for word in 0..w {
            let mut bits = cur[word];
            while bits != 0 {
                let i = word * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if !self.fits(x, i) {
                    continue;
                }
                assign[x] = i;
                if self.extend(order, depth + 1, assign, rest, visit) {
                    return true;
                }
            }
        }
        assign[x] = usize::MAX;
        false
    }
}

/// First induced copy of `q` in `family`, optionally through `required`.
pub fn find_induced_copy(
    family: &SetFamily,
    q: &PosetSpec,
    required: Option<SubsetMask>,
) -> Result<Option<EmbeddingWitness>> {
    let search = EmbeddingSearch::new(family, q);
    let required = match required {
        None => None,
        Some(s) => Some(
            family
                .members()
                .binary_search(&s)
                .ok()
                .filter(|_| s.ground() == family.ground())
                .ok_or_else(|| Error::usage(format!("required set {s} is not a family member")))?,
        ),
    };
    Ok(search.find(required))
}

/// Number of distinct induced copies, counted by image subfamily (so
/// assignments differing by a symmetry of `q` count once), stopping at `cap`.
pub fn count_induced_copies(family: &SetFamily, q: &PosetSpec, cap: usize) -> Result<usize> {
    if cap == 0 {
        return Err(Error::usage("cap must be at least 1"));
    }
    let search = EmbeddingSearch::new(family, q);
    let mut images: HashSet<Vec<usize>> = HashSet::new();
    search.visit(None, &mut |assign| {
        let mut image = assign.to_vec();
        image.sort_unstable();
        images.insert(image);
        images.len() >= cap
    });
    Ok(images.len())
}
