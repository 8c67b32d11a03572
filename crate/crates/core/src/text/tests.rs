use super::*;
use crate::catalog::{get_builtin, list_builtins};
use crate::random::{random_three_cell, random_two_cell};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn builtins_round_trip() {
    for n in list_builtins() {
        let e = get_builtin(n).unwrap();
        let text = serialize_presentation(&e.presentation);
        assert_eq!(parse_presentation(&text).unwrap(), e.presentation, "{n}");
    }
}

#[test]
fn parse_errors_carry_a_line() {
    let err = parse_presentation("presentation p\n0 x\n1 a : x -> y\n").unwrap_err();
    assert_eq!(err.line, 3);
    let err = parse_presentation("presentation p\n0 x\n1 a : x -> x\n2 mu : a a => b\n").unwrap_err();
    assert_eq!(err.line, 4);
}

#[test]
fn ill_typed_generator_is_rejected() {
    let src = "presentation p\n0 x\n1 a : x -> x\n2 mu : a a => a\n3 A : [.|mu|.] => [.|mu|a]\n";
    assert!(parse_presentation(src).is_err());
}

#[test]
fn cell_syntax() {
    let p = get_builtin("pseudomonoid").unwrap().presentation;
    let phi = parse_two_cell(&p.sig, "[.|mu|a];[.|mu|.]").unwrap();
    assert_eq!(phi.len(), 2);
    assert_eq!(phi, parse_two_cell(&p.sig, "(0|mu|1);(0|mu|0)").unwrap());
    assert_eq!(two_cell_text(&p.sig, &phi), "[.|mu|a];[.|mu|.]");
    assert!(parse_two_cell(&p.sig, "[.|mu|a];[a|mu|.]").is_err());
    let id = parse_cell(&p, "id(a a)").unwrap();
    assert!(id.is_identity());
}

#[test]
fn renderings_mention_every_generator() {
    let p = get_builtin("pseudomonoid").unwrap().presentation;
    let c = parse_cell(&p, "[.|eta|a];[.|mu|.]").unwrap();
    for f in [RenderFormat::Linear, RenderFormat::Ascii, RenderFormat::Tikz] {
        let s = render_cell(&p.sig, &c, f);
        assert!(s.contains("mu") && s.contains("eta"), "{f:?}: {s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cells_round_trip(seed in any::<u64>(), which in 0usize..5) {
        let name = list_builtins()[which];
        let p = get_builtin(name).unwrap().presentation;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_two_cell(&p.sig, &mut rng, 3, 3);
        prop_assert_eq!(parse_two_cell(&p.sig, &two_cell_text(&p.sig, &phi)).unwrap(), phi.clone());
        let f = random_three_cell(&p, &mut rng, phi, 3);
        prop_assert_eq!(parse_three_cell(&p, &three_cell_text(&p.sig, &f)).unwrap(), f);
    }
}
