//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Criteria listed in `EXPECTED_FAIL` are known to fail for a documented
//! reason; the run succeeds when every outcome matches its expectation.

use graypol::catalog::{get_builtin, list_builtins};
use graypol::cells::{Expr, Sign, Strategy, ThreeCell, ThreeGenInstance, TwoCell};
use graypol::coherence::{normalize2, squier_completion, Verdict, Zigzag};
use graypol::par::Exec;
use graypol::presentation::{interp_edge, interp_vertex, inv, path_exists, shuffle_graph, GrayPresentation};
use graypol::random::{random_expr, random_two_cell};
use graypol::rewriting::oracle::{classify_by_definition, is_factoring};
use graypol::rewriting::{
    all_two_cells, apply_step, brute_force_critical, classify, enumerate_critical, find_redexes, local_branchings,
    BranchClass,
};
use graypol::termination::{certify_termination, is_connected, selfdual_measure, TerminationStrategy};
use graypol::text::{parse_two_cell, two_cell_text};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

/// Criterion 2 asks for `2x+2y+z+1` as the target of the associator; the
/// stated maps give `2x+2y+z+2`.
const EXPECTED_FAIL: &[usize] = &[2];

type Outcome = Result<String, String>;

fn builtin(name: &str) -> GrayPresentation {
    get_builtin(name).unwrap().presentation
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("{what} took {e:?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let mut parts = Vec::new();
    for (name, n) in [("pseudomonoid", 5), ("pseudoadjunction", 2), ("frobenius", 19)] {
        let t = Instant::now();
        let got = enumerate_critical(&builtin(name)).map_err(|e| e.to_string())?.len();
        within(t, Duration::from_secs(10), name)?;
        ensure(got == n, || format!("{name}: {got} critical branchings, expected {n}"))?;
        parts.push(format!("{name}={got}"));
    }
    Ok(parts.join(" "))
}

fn criterion_2() -> Outcome {
    let p = builtin("pseudomonoid");
    let c = certify_termination(&p, None).map_err(|r| r.to_string())?;
    ensure(c.strategy == TerminationStrategy::Interpretation, || format!("certified by {}", c.tag))?;
    let li = p.interpretation.as_ref().ok_or("no interpretation")?;
    let f = |s: &str| li.eval(&p.sig, &parse_two_cell(&p.sig, s).unwrap()).unwrap().to_string();
    let src = f("[.|mu|a];[.|mu|.]");
    let tgt = f("[a|mu|.];[.|mu|.]");
    ensure(src == "4x+2y+z+3" && tgt == "2x+2y+z+1", || {
        format!("F(source) = {src}, F(target) = {tgt}; expected 4x+2y+z+3 and 2x+2y+z+1")
    })?;
    Ok(format!("{src} > {tgt}"))
}

fn criterion_3() -> Outcome {
    let p = builtin("pseudoadjunction");
    let c = certify_termination(&p, None).map_err(|r| r.to_string())?;
    ensure(c.strategy == TerminationStrategy::Connected, || format!("certified by {}", c.tag))?;
    ensure(c.assumptions.len() == 1, || format!("{} assumptions", c.assumptions.len()))?;
    let mut seen: HashSet<TwoCell> = HashSet::new();
    let mut frontier: Vec<TwoCell> = enumerate_critical(&p)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|cb| cb.branching.source)
        .collect();
    for _ in 0..=6 {
        let mut next = Vec::new();
        for phi in frontier {
            if !seen.insert(phi.clone()) {
                continue;
            }
            ensure(is_connected(&p.sig, &phi), || format!("{} is not connected", two_cell_text(&p.sig, &phi)))?;
            next.extend(find_redexes(&phi, &p, true).iter().map(|s| apply_step(&p.sig, s)));
        }
        frontier = next;
    }
    Ok(format!("{} reachable 2-cells connected", seen.len()))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut p = builtin("frobenius");
    let refusal = certify_termination(&p, None);
    ensure(refusal.is_err(), || "termination was certified".into())?;
    p.tiles.clear();
    let c = squier_completion(&p).map_err(|e| e.to_string())?;
    ensure(c.new_tiles.len() == 19, || format!("{} tiles emitted", c.new_tiles.len()))?;
    for tile in &c.new_tiles {
        p.sig.check_three(&tile.lhs).map_err(|e| e.to_string())?;
        p.sig.check_three(&tile.rhs).map_err(|e| e.to_string())?;
        let parallel = tile.lhs.source2 == tile.rhs.source2
            && p.sig.target2(&tile.lhs).ok() == p.sig.target2(&tile.rhs).ok();
        ensure(parallel, || format!("tile {} is not parallel", tile.name))?;
    }
    within(t, Duration::from_secs(60), "frobenius completion")?;
    Ok(format!("refused, 19 parallel tiles in {:?}", t.elapsed()))
}

/// Every irreducible expression reachable from `e`, checking the measure on each edge.
fn closure(p: &GrayPresentation, e: &Expr) -> Result<BTreeSet<Expr>, String> {
    let mut seen = HashSet::new();
    let mut stack = vec![e.clone()];
    let mut out = BTreeSet::new();
    while let Some(x) = stack.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        let next = p.sig.reducts(&x);
        if next.is_empty() {
            out.insert(x.clone());
        }
        for y in next {
            ensure(y.measure() < x.measure(), || format!("measure does not decrease: {x:?} to {y:?}"))?;
            stack.push(y);
        }
    }
    Ok(out)
}

fn criterion_5() -> Outcome {
    let names = list_builtins();
    let ps: Vec<GrayPresentation> = names.iter().map(|n| builtin(n)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut closures = 0;
    for k in 0..10_000u64 {
        let p = &ps[k as usize % ps.len()];
        let e = random_expr(p, &mut rng, 12, 3);
        ensure(e.size() <= 12, || "expression too large".into())?;
        let value = p.sig.eval_expr(&e).map_err(|err| err.to_string())?;
        let mut nfs = Vec::new();
        for s in [
            Strategy::LeftmostInnermost,
            Strategy::LeftmostOutermost,
            Strategy::RightmostInnermost,
            Strategy::Random(k),
        ] {
            let trace = p.sig.reduce_trace(&e, s);
            for w in trace.windows(2) {
                ensure(w[1].measure() < w[0].measure(), || format!("measure does not decrease under {s:?}"))?;
            }
            nfs.push(trace.last().unwrap().clone());
        }
        ensure(nfs.iter().all(|n| *n == nfs[0]), || format!("strategies disagree on {e:?}"))?;
        let cell = p.sig.decode_normal(&nfs[0]).map_err(|err| err.to_string())?;
        ensure(cell == value, || format!("normal form of {e:?} does not denote its value"))?;
        if e.size() <= 8 {
            let all = closure(p, &e)?;
            ensure(all.len() == 1 && all.contains(&nfs[0]), || format!("{} normal forms for {e:?}", all.len()))?;
            closures += 1;
        }
    }
    Ok(format!("10000 expressions, {closures} exhaustive closures"))
}

fn criterion_6() -> Outcome {
    let mut pairs = 0usize;
    for k in 0..=3 {
        for k2 in 0..=3 {
            let g = shuffle_graph(k, k2).map_err(|e| e.to_string())?;
            let binom = (1..=k).fold(1usize, |acc, i| acc * (k2 + i) / i);
            ensure(g.vertices.len() == binom, || format!("{k},{k2}: {} vertices", g.vertices.len()))?;
            // Lengths of all paths from each vertex, by dynamic programming over the DAG.
            for a in 0..g.vertices.len() {
                let seen = g.reachable(a);
                let mut lengths: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.vertices.len()];
                lengths[a].insert(0);
                let mut order: Vec<usize> = (0..g.vertices.len()).collect();
                order.sort_by_key(|&v| inv(&g.vertices[v]));
                for &v in &order {
                    let here: Vec<usize> = lengths[v].iter().copied().collect();
                    for (s, t, _) in &g.edges {
                        if *s == v {
                            lengths[*t].extend(here.iter().map(|l| l + 1));
                        }
                    }
                }
                for b in 0..g.vertices.len() {
                    ensure(path_exists(&g.vertices[a], &g.vertices[b]) == seen[b], || "path criterion differs from search".into())?;
                    if seen[b] {
                        let d = inv(&g.vertices[b]) - inv(&g.vertices[a]);
                        ensure(lengths[b].len() == 1 && lengths[b].contains(&d), || format!("path lengths {:?}, expected {d}", lengths[b]))?;
                    }
                }
            }
        }
    }
    for name in list_builtins() {
        let p = builtin(name);
        let sig = &p.sig;
        let cells = all_two_cells(sig, 3, 3);
        for phi in &cells {
            for psi in &cells {
                if sig.one_end(&phi.source1) != psi.source1.start {
                    continue;
                }
                pairs += 1;
                let g = shuffle_graph(phi.len(), psi.len()).map_err(|e| e.to_string())?;
                let vertex = |v: usize| interp_vertex(sig, &g.vertices[v], 1, 1, phi, psi);
                for (s, t, e) in &g.edges {
                    let step = interp_edge(sig, e, phi, psi).map_err(|e| e.to_string())?;
                    let (src, tgt) = sig.step_boundaries(&step).map_err(|e| e.to_string())?;
                    let (a, b) = (vertex(*s).map_err(|e| e.to_string())?, vertex(*t).map_err(|e| e.to_string())?);
                    ensure(src == a && tgt == b, || format!("{name}: an edge is not typed by its endpoints"))?;
                }
            }
        }
    }
    Ok(format!("{pairs} composable 2-cell pairs"))
}

fn criterion_7() -> Outcome {
    let p = builtin("pseudomonoid");
    let cells = all_two_cells(&p.sig, 4, 5);
    let mut n = 0;
    for phi in &cells {
        for b in local_branchings(&p, phi) {
            n += 1;
            let (fast, slow) = (classify(&b, &p), classify_by_definition(&b, &p));
            ensure(fast.name() == slow.name(), || format!("{} vs {} on {}", fast.name(), slow.name(), two_cell_text(&p.sig, phi)))?;
            if let BranchClass::NonMinimal(f) = &fast {
                ensure(is_factoring(&p.sig, &b, f), || "factoring witness does not factor".into())?;
            }
        }
    }
    let fast: BTreeSet<_> = enumerate_critical(&p).map_err(|e| e.to_string())?.into_iter().map(|c| c.branching).collect();
    let slow: BTreeSet<_> = brute_force_critical(&p, 4, 5, Exec::Parallel).into_iter().map(|c| c.branching).collect();
    ensure(fast == slow, || format!("enumeration {} vs brute force {}", fast.len(), slow.len()))?;
    Ok(format!("{n} local branchings over {} sources", cells.len()))
}

fn criterion_8() -> Outcome {
    let p = builtin("selfduality-q");
    let sig = &p.sig;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut steps = 0;
    let mut tries = 0;
    while steps < 1000 {
        tries += 1;
        ensure(tries < 1_000_000, || format!("only {steps} interchange steps found"))?;
        let phi = random_two_cell(sig, &mut rng, 4, 6);
        if !is_connected(sig, &phi) {
            continue;
        }
        for s in find_redexes(&phi, &p, true) {
            if steps == 1000 || !matches!(s.inner, ThreeGenInstance::Interchanger { .. }) {
                continue;
            }
            let psi = apply_step(sig, &s);
            let (a, b) = (selfdual_measure(sig, &phi).unwrap(), selfdual_measure(sig, &psi).unwrap());
            ensure(a.compare(&b) == Some(Ordering::Greater), || format!("{a:?} does not exceed {b:?}"))?;
            steps += 1;
        }
    }
    let eta = sig.find_two("eta").ok_or("no eta")?;
    for n in 0..=2u64 {
        let inst = p.interchanger(eta, graypol::OneCell::new(0, vec![0; n as usize]), eta);
        let (s, t) = sig.instance_boundaries(&inst).map_err(|e| e.to_string())?;
        let (a, b) = (selfdual_measure(sig, &s).unwrap(), selfdual_measure(sig, &t).unwrap());
        ensure(a.n2_eta == vec![n + 2, 0] && b.n2_eta == vec![0, n], || format!("n={n}: {a:?} to {b:?}"))?;
    }
    Ok("1000 steps decrease; pattern holds for n=0,1,2".into())
}

fn criterion_9() -> Outcome {
    let p = builtin("pseudomonoid");
    let c = squier_completion(&p).map_err(|e| e.to_string())?;
    ensure(c.report.verdict == Verdict::CoherentBySquier, || format!("verdict {}", c.report.verdict.name()))?;
    let mut bare = p.clone();
    bare.tiles.clear();
    let c = squier_completion(&bare).map_err(|e| e.to_string())?;
    ensure(c.new_tiles.len() == 5, || format!("{} tiles regenerated", c.new_tiles.len()))?;
    let expected: BTreeSet<&str> = [
        "[.|mu|a a];[.|mu|a];[.|mu|.]",
        "[.|eta|a a];[.|mu|a];[.|mu|.]",
        "[a|eta|a];[.|mu|a];[.|mu|.]",
        "[.|eta|.];[a|eta|.];[.|mu|.]",
        "[.|mu|.];[a|eta|.];[.|mu|.]",
    ]
    .into();
    let got: BTreeSet<String> = c.new_tiles.iter().map(|t| two_cell_text(&p.sig, &t.lhs.source2)).collect();
    let got_ref: BTreeSet<&str> = got.iter().map(String::as_str).collect();
    ensure(got_ref == expected, || format!("sources {got:?}"))?;
    for (tile, cb) in c.new_tiles.iter().zip(&c.critical) {
        let firsts: BTreeSet<_> = [tile.lhs.steps.first(), tile.rhs.steps.first()].into_iter().flatten().collect();
        let branching: BTreeSet<_> = [&cb.branching.s1, &cb.branching.s2].into_iter().collect();
        ensure(firsts == branching, || format!("tile {} does not start with its branching", tile.name))?;
    }
    Ok("coherent with R1-R5; 5 tiles regenerated".into())
}

fn criterion_10() -> Outcome {
    let p = builtin("pseudomonoid");
    let sig = &p.sig;
    let phi = parse_two_cell(sig, "[.|mu|a a];[.|mu|a];[.|mu|.]").unwrap();
    let (_, f) = normalize2(&phi, &p, 100).map_err(|e| e.to_string())?;
    let s = ThreeCell { source2: phi.clone(), steps: f.steps[..1].to_vec() };
    let t = ThreeCell { source2: sig.target2(&s).unwrap(), steps: f.steps[1..2].to_vec() };
    let st = sig.compose2(&s, &t).unwrap();
    let alphabet = [s, t, st];
    let start = |a: &ThreeCell, sign: Sign| match sign {
        Sign::Plus => a.source2.clone(),
        Sign::Minus => sig.target2(a).unwrap(),
    };
    let mut words: Vec<Zigzag> = Vec::new();
    let mut layer: Vec<Zigzag> = Vec::new();
    for a in &alphabet {
        for sign in [Sign::Plus, Sign::Minus] {
            layer.push(Zigzag::from_entries(sig, start(a, sign), vec![(a.clone(), sign)]).unwrap());
        }
    }
    for _ in 1..=5 {
        words.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for z in &layer {
            for a in &alphabet {
                for sign in [Sign::Plus, Sign::Minus] {
                    let mut e = z.entries.clone();
                    e.push((a.clone(), sign));
                    if let Ok(w) = Zigzag::from_entries(sig, z.source2.clone(), e) {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    for z in &words {
        let mut seen = HashSet::new();
        let mut stack = vec![z.clone()];
        let mut normal = HashSet::new();
        while let Some(x) = stack.pop() {
            if !seen.insert(x.clone()) {
                continue;
            }
            let next = x.one_step_reducts(sig);
            if next.is_empty() {
                normal.insert(x);
            }
            stack.extend(next);
        }
        let simple = z.simplify(sig);
        ensure(normal.len() == 1 && normal.contains(&simple), || format!("{} normal forms", normal.len()))?;
        ensure(z.invert().invert() == *z, || "invert is not an involution".into())?;
        ensure(z.invert().simplify(sig) == simple.invert(), || "simplify does not commute with invert".into())?;
    }
    Ok(format!("{} zigzags", words.len()))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (1, "critical branching counts", criterion_1),
        (2, "pseudomonoid interpretation", criterion_2),
        (3, "pseudoadjunction connectedness", criterion_3),
        (4, "frobenius refusal and completion", criterion_4),
        (5, "expression normal forms", criterion_5),
        (6, "shuffle graphs", criterion_6),
        (7, "classification oracle", criterion_7),
        (8, "self-duality measure", criterion_8),
        (9, "squier completion", criterion_9),
        (10, "zigzag calculus", criterion_10),
    ];
    let mut mismatches = Vec::new();
    for (n, title, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let expected_fail = EXPECTED_FAIL.contains(&n);
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        let note = if expected_fail { " (expected)" } else { "" };
        println!("criterion {n:>2} {tag}{note}: {title}: {detail} [{:.2?}]", t.elapsed());
        if outcome.is_ok() == expected_fail {
            mismatches.push(n);
        }
    }
    if !mismatches.is_empty() {
        eprintln!("unexpected outcome for criteria {mismatches:?}");
        std::process::exit(1);
    }
}
