//! Brute-force reference checks. Nothing here shares code with the
//! backtracking search or the freeness table; these exist to be compared
//! against them.

use crate::model::{GroundSet, PosetSpec, SetFamily, SubsetMask};

fn pattern_matches(q: &PosetSpec, tuple: &[u32]) -> bool {
    for x in 0..tuple.len() {
        for y in 0..tuple.len() {
            if x == y {
                continue;
            }
            let (a, b) = (tuple[x], tuple[y]);
            let sub = a != b && a & b == a;
            let sup = a != b && a & b == b;
            let ok = if q.less(x, y) {
                sub
            } else if q.less(y, x) {
                sup
            } else {
                a != b && !sub && !sup
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Try every ordered tuple of distinct members.
pub fn naive_find_copy(family: &SetFamily, q: &PosetSpec) -> Option<Vec<SubsetMask>> {
    let members: Vec<u32> = family.iter().map(|m| m.bits()).collect();
    let m = q.size();
    if m > members.len() {
        return None;
    }
    let mut idx = vec![0usize; m];
    loop {
        let distinct = (0..m).all(|a| (a + 1..m).all(|b| idx[a] != idx[b]));
        if distinct {
            let tuple: Vec<u32> = idx.iter().map(|&i| members[i]).collect();
            if pattern_matches(q, &tuple) {
                let g = family.ground();
                return Some(
                    tuple
                        .into_iter()
                        .map(|b| SubsetMask::new(g, b).expect("member bits"))
                        .collect(),
                );
            }
        }
        // odometer
        let mut p = m;
        loop {
            if p == 0 {
                return None;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < members.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Every induced copy of `q` inside `2^[n]`, as a subfamily code (bit `j`
/// of the code is the subset with mask value `j`). `n <= 4`.
pub fn copy_codes(g: GroundSet, q: &PosetSpec) -> Vec<u64> {
    assert!(g.n() <= 4, "copy_codes is for n <= 4");
    let total = g.subset_count() as u32;
    let m = q.size();
    let mut codes = Vec::new();
    // every m-subset of the subsets, then every ordering of it
    let mut choose: Vec<u32> = (0..m as u32).collect();
    if m as u32 > total {
        return codes;
    }
    loop {
        let mut perm = choose.clone();
        if permutations_any(&mut perm, 0, &mut |t| pattern_matches(q, t)) {
            codes.push(choose.iter().fold(0u64, |c, &j| c | 1 << j));
        }
        let mut p = m;
        loop {
            if p == 0 {
                return codes;
            }
            p -= 1;
            if choose[p] < total - (m - p) as u32 {
                choose[p] += 1;
                for r in p + 1..m {
                    choose[r] = choose[r - 1] + 1;
                }
                break;
            }
        }
    }
}

fn permutations_any(v: &mut [u32], k: usize, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    if k == v.len() {
        return f(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permutations_any(v, k + 1, f) {
            v.swap(k, i);
            return true;
        }
        v.swap(k, i);
    }
    false
}

/// Codes of all `q`-saturated families over `[n]` (`n <= 4`): free means no
/// copy code is contained in the family code; saturated means free with no
/// free proper superfamily. Freeness passes to subfamilies, so a free proper
/// superfamily exists iff a free one-set extension does.
pub fn naive_saturated_codes(g: GroundSet, q: &PosetSpec) -> Vec<u64> {
    let copies = copy_codes(g, q);
    let total = 1u64 << g.subset_count();
    let free = |code: u64| copies.iter().all(|&c| c & code != c);
    (0..total)
        .filter(|&code| {
            free(code)
                && (0..g.subset_count()).all(|j| code >> j & 1 == 1 || !free(code | 1 << j))
        })
        .collect()
}

pub fn family_from_code(g: GroundSet, code: u64) -> SetFamily {
    SetFamily::from_bits(g, (0..g.subset_count() as u32).filter(|j| code >> j & 1 == 1))
        .expect("code bits are subsets of [n]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::butterfly;

    #[test]
    fn cube_has_no_butterfly() {
        let g = GroundSet::new(3).unwrap();
        assert!(copy_codes(g, &butterfly()).is_empty());
        assert_eq!(naive_saturated_codes(g, &butterfly()), vec![0xff]);
        assert!(naive_find_copy(&SetFamily::power_set(g), &butterfly()).is_none());
    }

    #[test]
    fn finds_obvious_copy() {
        let g = GroundSet::new(4).unwrap();
        let f = SetFamily::from_element_lists(g, &[&[1], &[2], &[1, 2, 3], &[1, 2, 4]]).unwrap();
        assert!(naive_find_copy(&f, &butterfly()).is_some());
    }
}
