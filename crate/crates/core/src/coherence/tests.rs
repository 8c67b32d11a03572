use super::*;
use crate::catalog::get_builtin;
use crate::cells::Sign;
use crate::random::{random_three_cell, random_two_cell};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashSet};

fn builtin(name: &str) -> GrayPresentation {
    get_builtin(name).unwrap().presentation
}

fn parse(p: &GrayPresentation, s: &str) -> TwoCell {
    crate::text::parse_two_cell(&p.sig, s).unwrap()
}

#[test]
fn normal_form_of_a_triple_product() {
    let p = builtin("pseudomonoid");
    let phi = parse(&p, "[.|mu|a a];[.|mu|a];[.|mu|.]");
    let (nf, f) = normalize2(&phi, &p, 1000).unwrap();
    assert!(find_redexes(&nf, &p, true).is_empty());
    assert_eq!(p.sig.target2(&f).unwrap(), nf);
    assert_eq!(nf, parse(&p, "[a a|mu|.];[a|mu|.];[.|mu|.]"));
}

#[test]
fn budget_is_reported() {
    let p = builtin("pseudomonoid");
    let phi = parse(&p, "[.|mu|a];[.|mu|.]");
    let err = normalize2(&phi, &p, 0).unwrap_err();
    assert!(matches!(err, CoherenceError::BudgetExhausted { steps: 0, .. }));
}

#[test]
fn ill_typed_input_is_rejected() {
    let p = builtin("pseudomonoid");
    let mut phi = parse(&p, "[.|mu|a];[.|mu|.]");
    phi.whiskers.swap(0, 1);
    assert!(matches!(normalize2(&phi, &p, 10), Err(CoherenceError::IllTyped(_))));
}

#[test]
fn shipped_tiles_cover_the_pseudomonoid() {
    let p = builtin("pseudomonoid");
    let c = squier_completion(&p).unwrap();
    assert_eq!(c.report.verdict, Verdict::CoherentBySquier);
    assert!(c.new_tiles.is_empty());
    assert_eq!(c.report.critical_count, 5);
    assert!(c.report.joins.iter().all(|j| j.joinable && !j.emitted));
}

#[test]
fn completion_regenerates_the_tiles() {
    let mut p = builtin("pseudomonoid");
    let shipped = std::mem::take(&mut p.tiles);
    let c = squier_completion(&p).unwrap();
    assert_eq!(c.report.verdict, Verdict::CompletedWithNewTiles);
    let names: Vec<_> = c.new_tiles.iter().map(|t| t.name.as_str()).collect();
    assert_eq!(names, ["R1", "R2", "R3", "R4", "R5"]);
    assert_eq!(c.new_tiles, shipped);
    let again = squier_completion(&c.completed(&p)).unwrap();
    assert_eq!(again.report.verdict, Verdict::CoherentBySquier);
}

#[test]
fn tile_covers_either_order() {
    let p = builtin("pseudomonoid");
    let c = squier_completion(&p).unwrap();
    for cb in &c.critical {
        let (s1, s2) = (&cb.branching.s1, &cb.branching.s2);
        let covering: Vec<_> = p.tiles.iter().filter(|t| tile_covers(&p.sig, t, s1, s2)).collect();
        assert_eq!(covering.len(), 1);
        assert!(tile_covers(&p.sig, covering[0], s2, s1));
    }
}

#[test]
fn frobenius_is_inconclusive_but_joined() {
    let c = squier_completion(&builtin("frobenius")).unwrap();
    assert_eq!(c.report.verdict, Verdict::Inconclusive);
    assert!(!c.report.termination.certified);
    assert_eq!(c.joins.len(), 19);
    assert!(c.joins.iter().all(Join::is_joined));
}

#[test]
fn prepend_builds_a_path() {
    let p = builtin("pseudomonoid");
    let phi = parse(&p, "[.|mu|a a];[.|mu|a];[.|mu|.]");
    let s = find_redexes(&phi, &p, true).remove(0);
    let (_, f) = normalize2(&apply_step(&p.sig, &s), &p, 100).unwrap();
    let g = prepend(&p.sig, &s, &f);
    p.sig.check_three(&g).unwrap();
    assert_eq!(g.source2, phi);
}

#[test]
fn sequential_and_parallel_normalization_agree() {
    let p = builtin("pseudomonoid");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cells: Vec<TwoCell> = (0..64).map(|_| random_two_cell(&p.sig, &mut rng, 4, 4)).collect();
    let a = normalize_all(&cells, &p, 10_000, Exec::Parallel);
    let b = normalize_all(&cells, &p, 10_000, Exec::Sequential);
    assert_eq!(a, b);
}

/// All irreducible forms reachable by any order of quotient-rule applications.
fn closure_normal_forms(z: &Zigzag, sig: &Signature) -> HashSet<Zigzag> {
    let mut seen = HashSet::new();
    let mut stack = vec![z.clone()];
    let mut out = HashSet::new();
    while let Some(x) = stack.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        let next = x.one_step_reducts(sig);
        if next.is_empty() {
            out.insert(x);
        }
        stack.extend(next);
    }
    out
}

#[test]
fn zigzag_rules_have_unique_normal_forms() {
    let p = builtin("pseudomonoid");
    let sig = &p.sig;
    let phi = parse(&p, "[.|mu|a a];[.|mu|a];[.|mu|.]");
    let (_, f) = normalize2(&phi, &p, 100).unwrap();
    assert!(f.len() >= 2);
    let s = ThreeCell { source2: phi.clone(), steps: f.steps[..1].to_vec() };
    let mid = sig.target2(&s).unwrap();
    let t = ThreeCell { source2: mid, steps: f.steps[1..2].to_vec() };
    let st = sig.compose2(&s, &t).unwrap();
    let alphabet = [s, t, st];
    let mut words: Vec<Vec<(ThreeCell, Sign)>> = vec![vec![]];
    let mut checked = 0;
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &words {
            for a in &alphabet {
                for sign in [Sign::Plus, Sign::Minus] {
                    let mut v = w.clone();
                    v.push((a.clone(), sign));
                    if let Ok(z) = Zigzag::from_entries(sig, v.first().map_or(phi.clone(), |(f, s)| {
                        if *s == Sign::Plus { f.source2.clone() } else { sig.target2(f).unwrap() }
                    }), v.clone()) {
                        let nfs = closure_normal_forms(&z, sig);
                        assert_eq!(nfs.len(), 1, "{z:?}");
                        let simple = z.simplify(sig);
                        assert!(nfs.contains(&simple));
                        assert!(simple.is_reduced());
                        checked += 1;
                        next.push(v);
                    }
                }
            }
        }
        words = next;
    }
    assert!(checked > 20);
}

#[test]
fn zigzag_with_its_inverse_simplifies_to_identity() {
    let p = builtin("pseudomonoid");
    let phi = parse(&p, "[.|mu|a a];[.|mu|a];[.|mu|.]");
    let (_, f) = normalize2(&phi, &p, 100).unwrap();
    let z = Zigzag::make(&p.sig, f, Sign::Plus).unwrap();
    let zz = z.compose2(&z.invert()).unwrap();
    assert_eq!(zz.simplify(&p.sig), Zigzag::identity(phi));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn normal_forms_do_not_depend_on_the_first_step(seed in any::<u64>()) {
        let p = builtin("pseudomonoid");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_two_cell(&p.sig, &mut rng, 4, 4);
        let (nf, _) = normalize2(&phi, &p, 10_000).unwrap();
        let firsts: BTreeSet<TwoCell> = find_redexes(&phi, &p, true)
            .iter()
            .map(|s| normalize2(&apply_step(&p.sig, s), &p, 10_000).unwrap().0)
            .collect();
        prop_assert!(firsts.iter().all(|n| *n == nf));
    }

    #[test]
    fn invert_is_an_involution(seed in any::<u64>()) {
        let p = builtin("pseudomonoid");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_two_cell(&p.sig, &mut rng, 3, 4);
        let f = random_three_cell(&p, &mut rng, phi, 3);
        let z = Zigzag::make(&p.sig, f, Sign::Minus).unwrap();
        prop_assert_eq!(z.invert().invert(), z.clone());
        prop_assert_eq!(z.simplify(&p.sig).simplify(&p.sig), z.simplify(&p.sig));
    }
}
