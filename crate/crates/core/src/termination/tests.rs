use super::*;
use crate::catalog::get_builtin;
use crate::cells::{OneCell, ThreeGenInstance};
use crate::random::random_two_cell;
use crate::rewriting::{apply_step, find_redexes};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn builtin(name: &str) -> GrayPresentation {
    get_builtin(name).unwrap().presentation
}

/// Evaluates a 2-cell on a point by applying each whisker's map to its slice of coordinates.
fn eval_at(p: &GrayPresentation, phi: &TwoCell, x: &[u64]) -> Vec<u64> {
    let li = p.interpretation.as_ref().unwrap();
    let mut v = x.to_vec();
    for w in &phi.whiskers {
        let (a, b) = (li.width(&w.left), li.width(&p.sig.two[w.gen].source));
        let f = li.maps[w.gen].as_ref().unwrap();
        let mid: Vec<u64> = (0..f.rows())
            .map(|i| f.constant[i] + (0..f.cols).map(|j| f.matrix[i][j] * v[a + j]).sum::<u64>())
            .collect();
        v.splice(a..a + b, mid);
    }
    v
}

fn parse(p: &GrayPresentation, s: &str) -> TwoCell {
    crate::text::parse_two_cell(&p.sig, s).unwrap()
}

#[test]
fn associator_boundaries_by_point_evaluation() {
    let p = builtin("pseudomonoid");
    let src = parse(&p, "[.|mu|a];[.|mu|.]");
    let tgt = parse(&p, "[a|mu|.];[.|mu|.]");
    for (x, y, z) in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (3, 5, 7)] {
        assert_eq!(eval_at(&p, &src, &[x, y, z]), vec![4 * x + 2 * y + z + 3]);
        // The constant term is 2, one more than the printed value.
        assert_eq!(eval_at(&p, &tgt, &[x, y, z]), vec![2 * x + 2 * y + z + 2]);
    }
}

#[test]
fn symbolic_interpretation_of_the_associator() {
    let p = builtin("pseudomonoid");
    let li = p.interpretation.as_ref().unwrap();
    let s = li.eval(&p.sig, &parse(&p, "[.|mu|a];[.|mu|.]")).unwrap();
    let t = li.eval(&p.sig, &parse(&p, "[a|mu|.];[.|mu|.]")).unwrap();
    assert_eq!(s.to_string(), "4x+2y+z+3");
    assert_eq!(t.to_string(), "2x+2y+z+2");
    assert!(s.dominates_strictly(&t));
}

#[test]
fn identity_interprets_as_identity() {
    let p = builtin("pseudomonoid");
    let li = p.interpretation.as_ref().unwrap();
    let id = TwoCell::identity(OneCell::new(0, vec![0; 3]));
    assert_eq!(li.eval(&p.sig, &id).unwrap(), Affine::identity(3));
    assert_eq!(interchange_norm(&id), InterchangeNorm(vec![]));
}

#[test]
fn interchangers_have_equal_interpretations() {
    let p = builtin("pseudomonoid");
    let li = p.interpretation.as_ref().unwrap();
    for inst in interchanger_instances(&p, 3) {
        let (s, t) = p.sig.instance_boundaries(&inst).unwrap();
        assert_eq!(li.eval(&p.sig, &s).unwrap(), li.eval(&p.sig, &t).unwrap());
    }
}

#[test]
fn interchanger_norms() {
    let p = builtin("pseudomonoid");
    let sig = &p.sig;
    for inst in interchanger_instances(&p, 3) {
        let ThreeGenInstance::Interchanger { alpha, ref g, beta, .. } = inst else {
            unreachable!()
        };
        let (s, t) = sig.instance_boundaries(&inst).unwrap();
        let _ = beta;
        let (ta, sa) = (sig.two[alpha].target.len(), sig.two[alpha].source.len());
        assert_eq!(interchange_norm(&s).0, vec![ta + g.len(), 0]);
        assert_eq!(interchange_norm(&t).0, vec![0, sa + g.len()]);
        assert_eq!(interchange_norm(&s).compare(&interchange_norm(&t)), Some(Ordering::Greater));
    }
}

#[test]
fn norms_of_different_lengths_are_incomparable() {
    assert_eq!(InterchangeNorm(vec![1]).compare(&InterchangeNorm(vec![0, 0])), None);
}

#[test]
fn pseudomonoid_is_certified_by_interpretation() {
    let c = certify_termination(&builtin("pseudomonoid"), None).unwrap();
    assert_eq!(c.strategy, TerminationStrategy::Interpretation);
    let w = c.witness("A", "interpretation").unwrap();
    assert_eq!((w.source.as_str(), w.target.as_str()), ("4x+2y+z+3", "2x+2y+z+2"));
}

#[test]
fn pseudoadjunction_is_certified_on_connected_cells() {
    let c = certify_termination(&builtin("pseudoadjunction"), None).unwrap();
    assert_eq!(c.strategy, TerminationStrategy::Connected);
    assert_eq!(c.assumptions.len(), 1);
    assert!(certify_termination(&builtin("pseudoadjunction"), Some(TerminationStrategy::Interchange)).is_err());
}

#[test]
fn frobenius_is_refused() {
    let r = certify_termination(&builtin("frobenius"), None).unwrap_err();
    assert_eq!(r.strategy, None);
    assert!(r.reason.contains("length"));
}

#[test]
fn q_mode_refuses_the_connected_strategy() {
    let p = builtin("selfduality-q");
    assert!(certify_termination(&p, Some(TerminationStrategy::Connected)).is_err());
    assert_eq!(certify_termination(&p, None).unwrap().strategy, TerminationStrategy::SelfDual);
}

#[test]
fn non_positive_presentation_names_the_generator() {
    let r = check_positive_intnorm(&builtin("selfduality")).unwrap_err();
    assert!(r.reason.contains("eps"), "{}", r.reason);
}

#[test]
fn selfdual_pattern_for_unit_interchangers() {
    let p = builtin("selfduality-q");
    let sig = &p.sig;
    let eta = sig.find_two("eta").unwrap();
    for n in 0..=2 {
        let inst = p.interchanger(eta, OneCell::new(0, vec![0; n]), eta);
        let (s, t) = sig.instance_boundaries(&inst).unwrap();
        let ms = selfdual_measure(sig, &s).unwrap();
        let mt = selfdual_measure(sig, &t).unwrap();
        assert_eq!((ms.n1, ms.n2_eta.clone()), (0, vec![n as u64 + 2, 0]));
        assert_eq!((mt.n1, mt.n2_eta.clone()), (0, vec![0, n as u64]));
        assert_eq!(ms.compare(&mt), Some(Ordering::Greater));
    }
}

#[test]
fn cospan_of_a_zigzag_is_connected() {
    let p = builtin("pseudoadjunction");
    let phi = parse(&p, "[.|eta|f];[f|eps|.]");
    assert!(is_connected(&p.sig, &phi));
    let v = cospan(&p.sig, &phi);
    assert_eq!(v.floating(), 0);
    let bubble = parse(&p, "[.|eta|.];[.|eta|f g]");
    assert!(is_connected(&p.sig, &bubble));
}

#[test]
fn floating_component_is_not_connected() {
    let p = builtin("selfduality");
    let circle = parse(&p, "[.|eta|.];[.|eps|.]");
    assert!(!is_connected(&p.sig, &circle));
    assert_eq!(cospan(&p.sig, &circle).floating(), 1);
    let with_wire = parse(&p, "[.|eta|a];[.|eps|a]");
    assert!(!is_connected(&p.sig, &with_wire));
    let snake = parse(&p, "[.|eta|a];[a|eps|.]");
    assert!(is_connected(&p.sig, &snake));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interpretation_agrees_with_point_evaluation(seed in any::<u64>(), x in proptest::collection::vec(0u64..20, 8)) {
        let p = builtin("pseudomonoid");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_two_cell(&p.sig, &mut rng, 4, 4);
        let li = p.interpretation.as_ref().unwrap();
        let n = li.width(&phi.source1);
        prop_assert_eq!(li.eval(&p.sig, &phi).unwrap().apply(&x[..n]), eval_at(&p, &phi, &x[..n]));
    }

    #[test]
    fn rewriting_decreases_the_pseudomonoid_order(seed in any::<u64>()) {
        let p = builtin("pseudomonoid");
        let li = p.interpretation.as_ref().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_two_cell(&p.sig, &mut rng, 4, 4);
        for s in find_redexes(&phi, &p, true) {
            let psi = apply_step(&p.sig, &s);
            let (a, b) = (li.eval(&p.sig, &phi).unwrap(), li.eval(&p.sig, &psi).unwrap());
            let strict = a.dominates_strictly(&b);
            let norm = a == b && interchange_norm(&phi).compare(&interchange_norm(&psi)) == Some(Ordering::Greater);
            prop_assert!(strict || norm);
        }
    }

    #[test]
    fn connectedness_is_preserved_by_rewriting(seed in any::<u64>()) {
        let p = builtin("pseudoadjunction");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_two_cell(&p.sig, &mut rng, 3, 4);
        if is_connected(&p.sig, &phi) {
            for s in find_redexes(&phi, &p, true) {
                prop_assert!(is_connected(&p.sig, &apply_step(&p.sig, &s)));
            }
        }
    }
}
