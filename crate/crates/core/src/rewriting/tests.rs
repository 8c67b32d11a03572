use super::*;
use crate::catalog::get_builtin;
use crate::random::random_two_cell;
use crate::termination::interchanger_instances;
use oracle::{classify_by_definition, find_factoring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn builtin(name: &str) -> GrayPresentation {
    get_builtin(name).unwrap().presentation
}

/// Every step from `φ`, found by matching each instance source against each window.
fn redexes_by_matching(phi: &TwoCell, p: &GrayPresentation) -> BTreeSet<Step> {
    let sig = &p.sig;
    let mut instances: Vec<ThreeGenInstance> = (0..sig.three.len()).map(ThreeGenInstance::Operational).collect();
    instances.extend(interchanger_instances(p, phi.source1.len() + 2 * phi.len() + 2));
    let mut out = BTreeSet::new();
    for a in instances {
        let (src, _) = sig.instance_boundaries(&a).unwrap();
        let m = src.len();
        if m == 0 || m > phi.len() {
            continue;
        }
        for i in 0..=phi.len() - m {
            let window = sig.slice2(phi, i, i + m);
            let (w, s) = (&window.whiskers[0], &src.whiskers[0]);
            if w.left.len() < s.left.len() || w.right.len() < s.right.len() {
                continue;
            }
            let l = w.left.slice(0, w.left.len() - s.left.len(), sig);
            let r = w.right.slice(s.right.len(), w.right.len(), sig);
            if src.whiskered(&l, &r) != window {
                continue;
            }
            let step = Step {
                lambda: sig.slice2(phi, 0, i),
                l,
                inner: a.clone(),
                r,
                rho: sig.slice2(phi, i + m, phi.len()),
            };
            if sig.step_source(&step).ok().as_ref() == Some(phi) {
                out.insert(step);
            }
        }
    }
    out
}

fn parse(p: &GrayPresentation, s: &str) -> TwoCell {
    crate::text::parse_two_cell(&p.sig, s).unwrap()
}

#[test]
fn same_step_is_trivial() {
    let p = builtin("pseudomonoid");
    let phi = parse(&p, "[.|mu|a];[.|mu|.]");
    let s = find_redexes(&phi, &p, true).remove(0);
    let b = branching(&p.sig, s.clone(), s).unwrap();
    assert_eq!(classify(&b, &p), BranchClass::Trivial);
}

#[test]
fn triple_product_overlap_is_critical() {
    let p = builtin("pseudomonoid");
    let phi = parse(&p, "[.|mu|a a];[.|mu|a];[.|mu|.]");
    let bs = local_branchings(&p, &phi);
    let crit: Vec<_> = bs.iter().filter(|b| classify(b, &p).is_critical()).collect();
    assert_eq!(crit.len(), 1);
    let first = &enumerate_critical(&p).unwrap()[0];
    assert_eq!(first.key, ("A".to_string(), "A".to_string(), 0, 1));
    assert_eq!(first.branching.source, phi);
}

#[test]
fn whiskered_branching_is_not_minimal() {
    let p = builtin("pseudomonoid");
    let phi = parse(&p, "[a|mu|a a];[a|mu|a];[a|mu|.]");
    let bs = local_branchings(&p, &phi);
    let ops: Vec<_> = bs
        .iter()
        .filter(|b| matches!(b.s1.inner, ThreeGenInstance::Operational(_)) && matches!(b.s2.inner, ThreeGenInstance::Operational(_)))
        .collect();
    assert!(!ops.is_empty());
    for b in ops {
        let c = classify(b, &p);
        assert!(matches!(c, BranchClass::NonMinimal(ref f) if f.l.len() == 1), "{c:?}");
        assert_eq!(c.name(), classify_by_definition(b, &p).name());
    }
}

#[test]
fn disjoint_windows_are_independent() {
    let p = builtin("pseudomonoid");
    let phi = parse(&p, "[.|mu|a a a a];[.|mu|a a a];[a|mu|a];[a|mu|.]");
    let b = local_branchings(&p, &phi)
        .into_iter()
        .find(|b| windows_disjoint(&p.sig, b) && maximal_factoring(&p.sig, b).is_trivial())
        .unwrap();
    assert_eq!(classify(&b, &p), BranchClass::Independent);
}

#[test]
fn interchanger_past_associator_is_natural() {
    let p = builtin("pseudomonoid");
    let phi = parse(&p, "[.|mu|a];[.|mu|.];[a|eta|.]");
    let found = local_branchings(&p, &phi)
        .into_iter()
        .any(|b| classify(&b, &p) == BranchClass::Natural && classify_by_definition(&b, &p) == BranchClass::Natural);
    assert!(found);
}

#[test]
fn known_critical_counts() {
    for (name, n) in [("pseudomonoid", 5), ("pseudoadjunction", 2), ("frobenius", 19)] {
        let p = builtin(name);
        assert_eq!(enumerate_critical(&p).unwrap().len(), n, "{name}");
    }
}

#[test]
fn pseudoadjunction_keys() {
    let keys: Vec<_> = enumerate_critical(&builtin("pseudoadjunction"))
        .unwrap()
        .into_iter()
        .map(|c| c.key)
        .collect();
    assert!(keys.iter().all(|k| k.0 == "N" || k.0 == "Ninv"), "{keys:?}");
}

#[test]
fn enumeration_matches_brute_force_on_small_sources() {
    for name in ["pseudomonoid", "pseudoadjunction"] {
        let p = builtin(name);
        let fast: BTreeSet<_> = enumerate_critical(&p).unwrap().into_iter().map(|c| c.branching).collect();
        let slow: BTreeSet<_> = brute_force_critical(&p, 3, 4, crate::par::Exec::Parallel)
            .into_iter()
            .map(|c| c.branching)
            .collect();
        assert_eq!(fast, slow, "{name}");
    }
}

#[test]
fn sequential_and_parallel_enumeration_agree() {
    let p = builtin("frobenius");
    let seq = EnumerationOptions {
        exec: crate::par::Exec::Sequential,
        ..Default::default()
    };
    assert_eq!(enumerate_critical_with(&p, &seq).unwrap(), enumerate_critical(&p).unwrap());
}

#[test]
fn canonical_pair_ignores_order() {
    for c in enumerate_critical(&builtin("frobenius")).unwrap() {
        let sig = &builtin("frobenius").sig;
        assert_eq!(canonical_pair(sig, &c.branching.swapped()), c.branching);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn redexes_match_window_search(seed in any::<u64>(), which in 0usize..4) {
        let name = ["pseudomonoid", "pseudoadjunction", "selfduality-q", "frobenius"][which];
        let p = builtin(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_two_cell(&p.sig, &mut rng, 3, 4);
        let found: BTreeSet<Step> = find_redexes(&phi, &p, true).into_iter().collect();
        prop_assert_eq!(found, redexes_by_matching(&phi, &p));
    }

    #[test]
    fn classification_matches_definitions(seed in any::<u64>(), which in 0usize..3) {
        let name = ["pseudomonoid", "pseudoadjunction", "frobenius"][which];
        let p = builtin(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_two_cell(&p.sig, &mut rng, 3, 4);
        for b in local_branchings(&p, &phi) {
            let (fast, slow) = (classify(&b, &p), classify_by_definition(&b, &p));
            prop_assert_eq!(fast.name(), slow.name());
            if let (BranchClass::NonMinimal(f), BranchClass::NonMinimal(g)) = (&fast, &slow) {
                prop_assert!(oracle::is_factoring(&p.sig, &b, f) && oracle::is_factoring(&p.sig, &b, g));
            }
            prop_assert_eq!(classify(&b, &p).name(), classify(&b.swapped(), &p).name());
        }
    }

    #[test]
    fn maximal_factoring_is_a_factoring(seed in any::<u64>()) {
        let p = builtin("pseudomonoid");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_two_cell(&p.sig, &mut rng, 4, 4);
        for b in local_branchings(&p, &phi) {
            let f = maximal_factoring(&p.sig, &b);
            prop_assert!(oracle::is_factoring(&p.sig, &b, &f));
            prop_assert_eq!(f.is_trivial(), find_factoring(&p.sig, &b).is_none());
        }
    }
}
