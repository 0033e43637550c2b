use satposet::solver::enumerate_saturated_families;
use satposet::theorems::{verify_prop4_with, Counterexample};
use satposet::{
    assign_chevron_to_singleton, butterfly, butterfly_construction, difference_pair_cover,
    lemma1_check, n_construction, n_poset, verify_prop4, verify_theorem2, verify_theorem3,
    GroundSet, SetFamily, SubsetMask,
};

#[test]
fn lower_bounds_hold_on_every_small_saturated_family() {
    for n in 2..=4 {
        for f in enumerate_saturated_families(n, &butterfly(), None).unwrap() {
            for r in [lemma1_check(&f), verify_theorem2(&f), verify_theorem3(&f)] {
                assert!(
                    r.passed || (!r.hypotheses_hold && r.counterexample.is_none()),
                    "{} on {:?}: {}",
                    r.theorem.code(),
                    f.to_text(),
                    r.to_json()
                );
            }
            assert!(verify_theorem2(&f).passed);
            assert!(f.len() > n);
        }
        for f in enumerate_saturated_families(n, &n_poset(), None).unwrap() {
            let r = verify_prop4(&f);
            assert!(r.passed, "{}", r.to_json());
            assert!(f.len() * f.len() >= n);
        }
    }
}

#[test]
fn singleton_chevrons_land_inside_the_family() {
    for f in enumerate_saturated_families(4, &butterfly(), None).unwrap() {
        for i in 1..=4 {
            let single = SubsetMask::singleton(f.ground(), i).unwrap();
            if f.contains(single) {
                assert!(assign_chevron_to_singleton(&f, i).is_err());
                continue;
            }
            let ch = assign_chevron_to_singleton(&f, i).unwrap();
            assert!(ch.is_valid());
            assert!(!ch.c.contains(i));
            assert!(ch.a.contains(i) && ch.b.contains(i));
            assert!(f.contains(ch.c.union(single)));
        }
    }
}

#[test]
fn unsaturated_input_fails_the_hypothesis_gate() {
    let g = GroundSet::new(4).unwrap();
    let f = SetFamily::from_element_lists(g, &[&[], &[1]]).unwrap();
    for r in [lemma1_check(&f), verify_theorem2(&f), verify_theorem3(&f), verify_prop4(&f)] {
        assert!(!r.hypotheses_hold);
        assert!(!r.passed);
    }
}

#[test]
fn cover_of_n_construction_is_total() {
    for n in 2..=9 {
        let f = n_construction(n).unwrap();
        let cover = difference_pair_cover(&f).unwrap();
        assert_eq!(cover.len(), n);
        for (i, a, b) in cover {
            assert!(f.contains(a) && f.contains(b));
            assert_eq!(a.difference(b), SubsetMask::singleton(f.ground(), i).unwrap());
        }
        assert!(verify_prop4_with(&f, false).passed);
    }
}

#[test]
fn construction_passes_every_butterfly_check() {
    for n in 3..=7 {
        let f = butterfly_construction(n).unwrap();
        for r in [lemma1_check(&f), verify_theorem2(&f), verify_theorem3(&f)] {
            assert!(r.passed, "{}", r.to_json());
            assert!(!matches!(r.counterexample, Some(Counterexample::BoundViolated { .. })));
        }
    }
}
