//! Line-oriented presentation files, cell syntax and rendering.
//!
//! ```text
//! presentation pseudomonoid
//! 0 x
//! 1 a : x -> x
//! 2 mu : a a => a
//! 2 eta : @x => a
//! 3 A : [.|mu|a];[.|mu|.] => [a|mu|.];[.|mu|.]
//! tile R1 : {.;.;A;.;.}|{...} == {...}
//! ```
//!
//! Words are space-separated 1-generator names, `.` for the empty word, `@x`
//! for the empty word at `x`, or a numeral `n` standing for `n` copies of the
//! only 1-generator. A 2-cell is `id(WORD)` or `;`-joined whiskers
//! `[LEFT|gen|RIGHT]` (parentheses are accepted too). A 3-cell is `id3(2CELL)` or
//! `|`-joined steps `{LAMBDA ; L ; GEN ; R ; RHO}` where `GEN` is an operational
//! 3-generator, `X(alpha, WORD, beta)` or `Xinv(alpha, WORD, beta)` and an
//! empty `LAMBDA`/`RHO` may be written `.`.
//!
//! Extra directives: `mode q`, `orient ALPHA BETA inverse|forward`,
//! `weight GEN N` and `interp GEN : ROWS + CONSTS` with rows separated by `;`.

use crate::cells::{Cell, GenId, OneCell, Signature, Step, ThreeCell, ThreeGenInstance, TwoCell, Whisker2};
use crate::presentation::{GrayPresentation, InterchangeMode, Tile};
use crate::termination::{Affine, LinearInterpretation};
use thiserror::Error;

/// A syntax or typing error with its position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Rendering styles for cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Linear,
    Ascii,
    Tikz,
}

type PResult<T> = Result<T, String>;

/// Splits on `sep` outside brackets, parentheses and braces.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' | '{' => depth += 1,
            ']' | ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[last..i]);
                last = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[last..]);
    out
}

/// Parses a word given the 0-cell it must start at when empty (if known).
fn parse_word(sig: &Signature, s: &str, start: Option<GenId>) -> PResult<OneCell> {
    let s = s.trim();
    if s == "." || s.is_empty() {
        return match start {
            Some(x) => Ok(OneCell::id(x)),
            None if sig.zero.len() == 1 => Ok(OneCell::id(0)),
            None => Err("cannot infer the 0-cell of an empty word; write @x".into()),
        };
    }
    if let Some(x) = s.strip_prefix('@') {
        let x = sig
            .find_zero(x.trim())
            .ok_or_else(|| format!("unknown 0-generator `{}`", x.trim()))?;
        return Ok(OneCell::id(x));
    }
    if let Ok(n) = s.parse::<usize>() {
        if sig.one.len() != 1 {
            return Err("numeric words need exactly one 1-generator".into());
        }
        let u = OneCell::new(sig.one[0].source, vec![0; n]);
        if n == 0 {
            return Ok(OneCell::id(start.unwrap_or(sig.one[0].source)));
        }
        sig.check_one(&u).map_err(|e| e.to_string())?;
        return Ok(u);
    }
    let mut word = Vec::new();
    for name in s.split_whitespace() {
        word.push(
            sig.find_one(name)
                .ok_or_else(|| format!("unknown 1-generator `{name}`"))?,
        );
    }
    let u = OneCell::new(sig.one[word[0]].source, word);
    sig.check_one(&u).map_err(|e| e.to_string())?;
    if let Some(x) = start {
        if u.start != x {
            return Err(format!("word `{s}` does not start at `{}`", sig.zero[x]));
        }
    }
    Ok(u)
}

fn parse_whisker(sig: &Signature, s: &str) -> PResult<Whisker2> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .or_else(|| s.strip_prefix('(').and_then(|x| x.strip_suffix(')')))
        .ok_or_else(|| format!("expected a whisker `[left|gen|right]`, found `{s}`"))?;
    let parts: Vec<&str> = inner.split('|').collect();
    if parts.len() != 3 {
        return Err(format!("whisker `{s}` needs three `|`-separated fields"));
    }
    let gen = sig
        .find_two(parts[1].trim())
        .ok_or_else(|| format!("unknown 2-generator `{}`", parts[1].trim()))?;
    let g = &sig.two[gen];
    let left = parse_word(sig, parts[0], None)
        .or_else(|_| parse_word(sig, parts[0], Some(g.source.start)))?;
    let left = if left.is_empty() {
        OneCell::id(g.source.start)
    } else {
        left
    };
    if sig.one_end(&left) != g.source.start {
        return Err(format!("left word of `{s}` does not meet `{}`", g.name));
    }
    let right = parse_word(sig, parts[2], Some(sig.one_end(&g.source)))?;
    Ok(Whisker2 { left, gen, right })
}

/// Parses a 2-cell.
pub fn parse_two_cell(sig: &Signature, s: &str) -> PResult<TwoCell> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("id(").and_then(|x| x.strip_suffix(')')) {
        let u = parse_word(sig, inner, None)?;
        return Ok(TwoCell::identity(u));
    }
    let whiskers = split_top(s, ';')
        .into_iter()
        .map(|w| parse_whisker(sig, w))
        .collect::<PResult<Vec<_>>>()?;
    if whiskers.is_empty() {
        return Err("empty 2-cell; write id(WORD)".into());
    }
    let phi = TwoCell {
        source1: sig.whisker_source(&whiskers[0]),
        whiskers,
    };
    sig.check_two(&phi).map_err(|e| e.to_string())?;
    Ok(phi)
}

fn parse_instance(p: &GrayPresentation, s: &str) -> PResult<ThreeGenInstance> {
    let sig = &p.sig;
    let s = s.trim();
    for (prefix, inverse) in [("Xinv(", true), ("X(", false)] {
        if let Some(inner) = s.strip_prefix(prefix).and_then(|x| x.strip_suffix(')')) {
            let parts = split_top(inner, ',');
            if parts.len() != 3 {
                return Err(format!("interchanger `{s}` needs three arguments"));
            }
            let alpha = sig
                .find_two(parts[0].trim())
                .ok_or_else(|| format!("unknown 2-generator `{}`", parts[0].trim()))?;
            let beta = sig
                .find_two(parts[2].trim())
                .ok_or_else(|| format!("unknown 2-generator `{}`", parts[2].trim()))?;
            let g = parse_word(sig, parts[1], Some(sig.one_end(&sig.two[alpha].source)))?;
            let inst = ThreeGenInstance::Interchanger {
                alpha,
                g,
                beta,
                inverse,
            };
            sig.instance_boundaries(&inst).map_err(|e| e.to_string())?;
            return Ok(inst);
        }
    }
    sig.find_three(s)
        .map(ThreeGenInstance::Operational)
        .ok_or_else(|| format!("unknown 3-generator `{s}`"))
}

fn parse_step(p: &GrayPresentation, s: &str) -> PResult<Step> {
    let sig = &p.sig;
    let s = s.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(|| format!("expected a step `{{lambda ; l ; GEN ; r ; rho}}`, found `{s}`"))?;
    let toks: Vec<&str> = split_top(inner, ';').into_iter().map(str::trim).collect();
    let mut k = 0;
    let lambda_toks: Vec<&str> = if toks.first() == Some(&".") || toks.first().is_some_and(|t| t.starts_with("id(")) {
        k = 1;
        toks[..1].to_vec()
    } else {
        while k < toks.len() && (toks[k].starts_with('[') || toks[k].starts_with('(')) {
            k += 1;
        }
        toks[..k].to_vec()
    };
    if toks.len() < k + 4 {
        return Err(format!("step `{s}` is missing fields"));
    }
    let inst = parse_instance(p, toks[k + 1])?;
    let (a_src, a_tgt) = sig.instance_boundaries(&inst).map_err(|e| e.to_string())?;
    let l = parse_word(sig, toks[k], None)
        .or_else(|_| parse_word(sig, toks[k], Some(a_src.source1.start)))?;
    let l = if l.is_empty() {
        OneCell::id(a_src.source1.start)
    } else {
        l
    };
    let r = parse_word(sig, toks[k + 2], Some(sig.one_end(&a_src.source1)))?;
    let mid_src = l.then(&a_src.source1).then(&r);
    let mid_tgt = l.then(&sig.target1(&a_tgt)).then(&r);
    let lambda = if lambda_toks == ["."] {
        TwoCell::identity(mid_src)
    } else {
        parse_two_cell(sig, &lambda_toks.join(";"))?
    };
    let rho_src = toks[k + 3..].join(";");
    let rho = if rho_src.trim() == "." {
        TwoCell::identity(mid_tgt)
    } else {
        parse_two_cell(sig, &rho_src)?
    };
    let step = Step {
        lambda,
        l,
        inner: inst,
        r,
        rho,
    };
    sig.step_boundaries(&step).map_err(|e| e.to_string())?;
    Ok(step)
}

/// Parses a 3-cell.
pub fn parse_three_cell(p: &GrayPresentation, s: &str) -> PResult<ThreeCell> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("id3(").and_then(|x| x.strip_suffix(')')) {
        return Ok(ThreeCell::identity(parse_two_cell(&p.sig, inner)?));
    }
    let steps = split_top(s, '|')
        .into_iter()
        .map(|x| parse_step(p, x))
        .collect::<PResult<Vec<_>>>()?;
    let source2 = p.sig.step_source(&steps[0]).map_err(|e| e.to_string())?;
    let f = ThreeCell { source2, steps };
    p.sig.check_three(&f).map_err(|e| e.to_string())?;
    Ok(f)
}

/// Parses a 1-, 2- or 3-cell, chosen by its syntax.
pub fn parse_cell(p: &GrayPresentation, s: &str) -> PResult<Cell> {
    let t = s.trim();
    if t.starts_with('{') || t.starts_with("id3(") {
        parse_three_cell(p, t).map(Cell::Three)
    } else if t.starts_with('[') || t.starts_with('(') || t.starts_with("id(") {
        parse_two_cell(&p.sig, t).map(Cell::Two)
    } else {
        parse_word(&p.sig, t, None).map(Cell::One)
    }
}

fn parse_affine_line(p: &GrayPresentation, rest: &str) -> PResult<(GenId, Affine)> {
    let (name, body) = rest
        .split_once(':')
        .ok_or("expected `interp GEN : ROWS + CONSTS`")?;
    let gen = p
        .sig
        .find_two(name.trim())
        .ok_or_else(|| format!("unknown 2-generator `{}`", name.trim()))?;
    let (rows, consts) = body.split_once('+').ok_or("missing `+` before the constants")?;
    let parse_nums = |s: &str| -> PResult<Vec<u64>> {
        s.split_whitespace()
            .map(|x| x.parse::<u64>().map_err(|_| format!("bad number `{x}`")))
            .collect()
    };
    let constant = parse_nums(consts)?;
    let matrix = if rows.trim().is_empty() {
        vec![Vec::new(); constant.len()]
    } else {
        rows.split(';').map(parse_nums).collect::<PResult<Vec<_>>>()?
    };
    if matrix.len() != constant.len() {
        return Err("row count differs from constant count".into());
    }
    let cols = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|r| r.len() != cols) {
        return Err("rows of different lengths".into());
    }
    Ok((gen, Affine::new(matrix, constant, cols)))
}

/// Parses a presentation file.
pub fn parse_presentation(text: &str) -> Result<GrayPresentation, ParseError> {
    let mut p = GrayPresentation::default();
    let mut weights: Vec<(GenId, u64)> = Vec::new();
    let mut affines: Vec<(GenId, Affine)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = line.len() - line.trim_start().len() + 1;
        let err = |msg: String| ParseError {
            line: line_no,
            col,
            msg,
        };
        let (head, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest = rest.trim();
        let decl = |rest: &str| -> PResult<(String, String)> {
            let (name, body) = rest.split_once(':').ok_or("expected `NAME : ...`")?;
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(format!("bad generator name `{name}`"));
            }
            Ok((name.to_string(), body.trim().to_string()))
        };
        match head {
            "presentation" => p.name = rest.to_string(),
            "mode" => match rest {
                "q" => p.mode = InterchangeMode::Q,
                "standard" => p.mode = InterchangeMode::Standard,
                other => return Err(err(format!("unknown mode `{other}`"))),
            },
            "orient" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(err("expected `orient ALPHA BETA inverse|forward`".into()));
                }
                let a = p.sig.find_two(f[0]).ok_or_else(|| err(format!("unknown 2-generator `{}`", f[0])))?;
                let b = p.sig.find_two(f[1]).ok_or_else(|| err(format!("unknown 2-generator `{}`", f[1])))?;
                match f[2] {
                    "inverse" => {
                        p.inverse_pairs.insert((a, b));
                    }
                    "forward" => {
                        p.inverse_pairs.remove(&(a, b));
                    }
                    other => return Err(err(format!("unknown orientation `{other}`"))),
                }
            }
            "0" => {
                if rest.is_empty() || p.sig.find_zero(rest).is_some() {
                    return Err(err(format!("bad or duplicate 0-generator `{rest}`")));
                }
                p.sig.add_zero(rest);
            }
            "1" => {
                let (name, body) = decl(rest).map_err(&err)?;
                let (s, t) = body.split_once("->").ok_or_else(|| err("expected `x -> y`".into()))?;
                let s = p.sig.find_zero(s.trim()).ok_or_else(|| err(format!("1-generator `{name}`: unknown 0-generator `{}`", s.trim())))?;
                let t = p.sig.find_zero(t.trim()).ok_or_else(|| err(format!("1-generator `{name}`: unknown 0-generator `{}`", t.trim())))?;
                if p.sig.find_one(&name).is_some() {
                    return Err(err(format!("duplicate 1-generator `{name}`")));
                }
                p.sig.add_one(&name, s, t).map_err(|e| err(e.to_string()))?;
            }
            "2" => {
                let (name, body) = decl(rest).map_err(&err)?;
                let (s, t) = body.split_once("=>").ok_or_else(|| err("expected `f => g`".into()))?;
                let s = parse_word(&p.sig, s, None).map_err(|m| err(format!("2-generator `{name}`: {m}")))?;
                let t = parse_word(&p.sig, t, Some(s.start)).map_err(|m| err(format!("2-generator `{name}`: {m}")))?;
                if p.sig.find_two(&name).is_some() {
                    return Err(err(format!("duplicate 2-generator `{name}`")));
                }
                p.sig.add_two(&name, s, t).map_err(|e| err(e.to_string()))?;
            }
            "3" => {
                let (name, body) = decl(rest).map_err(&err)?;
                let (s, t) = body.split_once("=>").ok_or_else(|| err("expected `phi => psi`".into()))?;
                let s = parse_two_cell(&p.sig, s).map_err(|m| err(format!("3-generator `{name}`: {m}")))?;
                let t = parse_two_cell(&p.sig, t).map_err(|m| err(format!("3-generator `{name}`: {m}")))?;
                if ["X", "Xinv", "id3"].contains(&name.as_str()) || p.sig.find_three(&name).is_some() {
                    return Err(err(format!("reserved or duplicate 3-generator `{name}`")));
                }
                p.sig.add_three(&name, s, t).map_err(|e| err(e.to_string()))?;
            }
            "weight" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 2 {
                    return Err(err("expected `weight GEN N`".into()));
                }
                let a = p.sig.find_one(f[0]).ok_or_else(|| err(format!("unknown 1-generator `{}`", f[0])))?;
                let w = f[1].parse::<u64>().map_err(|_| err(format!("bad weight `{}`", f[1])))?;
                weights.push((a, w));
            }
            "interp" => affines.push(parse_affine_line(&p, rest).map_err(&err)?),
            "tile" => {
                let (name, body) = decl(rest).map_err(&err)?;
                let (l, r) = body.split_once("==").ok_or_else(|| err("expected `F == G`".into()))?;
                let lhs = parse_three_cell(&p, l).map_err(|m| err(format!("tile `{name}`: {m}")))?;
                let rhs = parse_three_cell(&p, r).map_err(|m| err(format!("tile `{name}`: {m}")))?;
                p.tiles.push(Tile { name, lhs, rhs });
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    if !weights.is_empty() || !affines.is_empty() {
        let mut interp = LinearInterpretation::new(&p.sig);
        for (a, w) in weights {
            interp.weights[a] = w;
        }
        for (a, f) in affines {
            interp.maps[a] = Some(f);
        }
        p.interpretation = Some(interp);
    }
    let report = p.validate();
    if !report.well_typed {
        return Err(ParseError {
            line: 0,
            col: 0,
            msg: report.diagnostics.join("; "),
        });
    }
    Ok(p)
}

fn word_names(sig: &Signature, u: &OneCell) -> String {
    sig.word_name(u)
}

fn word_at(sig: &Signature, u: &OneCell) -> String {
    if u.is_empty() {
        format!("@{}", sig.zero[u.start])
    } else {
        sig.word_name(u)
    }
}

fn word_numeric(sig: &Signature, u: &OneCell) -> String {
    if sig.one.len() == 1 {
        u.len().to_string()
    } else {
        sig.word_name(u)
    }
}

/// File syntax of a 2-cell: `[l|gen|r];…` or `id(WORD)`.
pub fn two_cell_text(sig: &Signature, phi: &TwoCell) -> String {
    if phi.is_empty() {
        return format!("id({})", word_at(sig, &phi.source1));
    }
    phi.whiskers
        .iter()
        .map(|w| {
            format!(
                "[{}|{}|{}]",
                word_names(sig, &w.left),
                sig.two[w.gen].name,
                word_names(sig, &w.right)
            )
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Linear rendering of a 2-cell: `(0|mu|2);(1|mu|0)` or `id(a a)`.
pub fn two_cell_linear(sig: &Signature, phi: &TwoCell) -> String {
    if phi.is_empty() {
        return format!("id({})", word_at(sig, &phi.source1));
    }
    phi.whiskers
        .iter()
        .map(|w| {
            format!(
                "({}|{}|{})",
                word_numeric(sig, &w.left),
                sig.two[w.gen].name,
                word_numeric(sig, &w.right)
            )
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn instance_text(sig: &Signature, a: &ThreeGenInstance) -> String {
    match a {
        ThreeGenInstance::Operational(id) => sig.three[*id].name.clone(),
        ThreeGenInstance::Interchanger {
            alpha,
            g,
            beta,
            inverse,
        } => format!(
            "{}({}, {}, {})",
            if *inverse { "Xinv" } else { "X" },
            sig.two[*alpha].name,
            word_names(sig, g),
            sig.two[*beta].name
        ),
    }
}

fn step_text(sig: &Signature, s: &Step, two: fn(&Signature, &TwoCell) -> String) -> String {
    let side = |phi: &TwoCell| if phi.is_empty() { ".".to_string() } else { two(sig, phi) };
    format!(
        "{{{};{};{};{};{}}}",
        side(&s.lambda),
        word_names(sig, &s.l),
        instance_text(sig, &s.inner),
        word_names(sig, &s.r),
        side(&s.rho)
    )
}

/// File syntax of a 3-cell.
pub fn three_cell_text(sig: &Signature, f: &ThreeCell) -> String {
    if f.is_empty() {
        return format!("id3({})", two_cell_text(sig, &f.source2));
    }
    f.steps
        .iter()
        .map(|s| step_text(sig, s, two_cell_text))
        .collect::<Vec<_>>()
        .join("|")
}

/// File syntax of a single step.
pub fn step_to_text(sig: &Signature, s: &Step) -> String {
    step_text(sig, s, two_cell_text)
}

/// Renders a cell in one of the supported formats.
pub fn render_cell(sig: &Signature, c: &Cell, format: RenderFormat) -> String {
    match format {
        RenderFormat::Linear => match c {
            Cell::Zero(x) => sig.zero[*x].clone(),
            Cell::One(u) => word_at(sig, u),
            Cell::Two(phi) => two_cell_linear(sig, phi),
            Cell::Three(f) => {
                if f.is_empty() {
                    format!("id3({})", two_cell_linear(sig, &f.source2))
                } else {
                    f.steps
                        .iter()
                        .map(|s| step_text(sig, s, two_cell_linear))
                        .collect::<Vec<_>>()
                        .join("|")
                }
            }
        },
        RenderFormat::Ascii => render_ascii(sig, c),
        RenderFormat::Tikz => render_tikz(sig, c),
    }
}

fn ascii_two(sig: &Signature, phi: &TwoCell) -> String {
    let wires = |u: &OneCell| vec!["|"; u.len()].join(" ");
    let mut lines = vec![format!("  {}", word_at(sig, &phi.source1))];
    for w in &phi.whiskers {
        let mut row = String::from("  ");
        let l = wires(&w.left);
        if !l.is_empty() {
            row.push_str(&l);
            row.push(' ');
        }
        row.push_str(&format!("[{}]", sig.two[w.gen].name));
        let r = wires(&w.right);
        if !r.is_empty() {
            row.push(' ');
            row.push_str(&r);
        }
        lines.push(row);
    }
    lines.push(format!("  {}", word_at(sig, &sig.target1(phi))));
    lines.join("\n")
}

fn render_ascii(sig: &Signature, c: &Cell) -> String {
    match c {
        Cell::Two(phi) => ascii_two(sig, phi),
        Cell::Three(f) => {
            let mut cur = f.source2.clone();
            let mut blocks = vec![ascii_two(sig, &cur)];
            for s in &f.steps {
                blocks.push(format!("    ⇛ {}", instance_text(sig, &s.inner)));
                if let Ok(next) = sig.step_target(s) {
                    cur = next;
                }
                blocks.push(ascii_two(sig, &cur));
            }
            blocks.join("\n")
        }
        other => render_cell(sig, other, RenderFormat::Linear),
    }
}

fn tikz_two(sig: &Signature, phi: &TwoCell, x0: f64) -> String {
    let mut out = String::new();
    for (k, w) in phi.whiskers.iter().enumerate() {
        let x = x0 + w.left.len() as f64 + sig.two[w.gen].source.len().max(1) as f64 / 2.0;
        out.push_str(&format!(
            "  \\node[draw, rounded corners] at ({x:.1}, {:.1}) {{{}}};\n",
            -(k as f64) - 1.0,
            sig.two[w.gen].name
        ));
    }
    out
}

fn render_tikz(sig: &Signature, c: &Cell) -> String {
    let mut out = String::from("\\begin{tikzpicture}\n");
    match c {
        Cell::Two(phi) => out.push_str(&tikz_two(sig, phi, 0.0)),
        Cell::Three(f) => {
            let mut cur = f.source2.clone();
            let mut x0 = 0.0;
            out.push_str(&tikz_two(sig, &cur, x0));
            for s in &f.steps {
                if let Ok(next) = sig.step_target(s) {
                    cur = next;
                }
                x0 += (cur.source1.len() + 3) as f64;
                out.push_str(&tikz_two(sig, &cur, x0));
            }
        }
        other => out.push_str(&format!("  \\node at (0,0) {{{}}};\n", render_cell(sig, other, RenderFormat::Linear))),
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

fn affine_text(f: &Affine) -> String {
    let rows = f
        .matrix
        .iter()
        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>();
    let consts = f.constant.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let rows = if f.cols == 0 { String::new() } else { rows.join(" ; ") };
    match (rows.is_empty(), consts.is_empty()) {
        (true, true) => "+".to_string(),
        (true, false) => format!("+ {consts}"),
        (false, true) => format!("{rows} +"),
        (false, false) => format!("{rows} + {consts}"),
    }
}

/// Serializes a presentation in the file grammar.
pub fn serialize_presentation(p: &GrayPresentation) -> String {
    let sig = &p.sig;
    let mut out = String::new();
    out.push_str(&format!("presentation {}\n", p.name));
    if p.mode == InterchangeMode::Q {
        out.push_str("mode q\n");
    }
    for x in &sig.zero {
        out.push_str(&format!("0 {x}\n"));
    }
    for g in &sig.one {
        out.push_str(&format!("1 {} : {} -> {}\n", g.name, sig.zero[g.source], sig.zero[g.target]));
    }
    for g in &sig.two {
        out.push_str(&format!("2 {} : {} => {}\n", g.name, word_at(sig, &g.source), word_at(sig, &g.target)));
    }
    if p.mode == InterchangeMode::Q {
        for (a, b) in &p.inverse_pairs {
            out.push_str(&format!("orient {} {} inverse\n", sig.two[*a].name, sig.two[*b].name));
        }
    }
    for g in &sig.three {
        out.push_str(&format!(
            "3 {} : {} => {}\n",
            g.name,
            two_cell_text(sig, &g.source),
            two_cell_text(sig, &g.target)
        ));
    }
    if let Some(interp) = &p.interpretation {
        for (a, w) in interp.weights.iter().enumerate() {
            out.push_str(&format!("weight {} {w}\n", sig.one[a].name));
        }
        for (a, f) in interp.maps.iter().enumerate() {
            if let Some(f) = f {
                out.push_str(&format!("interp {} : {}\n", sig.two[a].name, affine_text(f)));
            }
        }
    }
    for t in &p.tiles {
        out.push_str(&format!(
            "tile {} : {} == {}\n",
            t.name,
            three_cell_text(sig, &t.lhs),
            three_cell_text(sig, &t.rhs)
        ));
    }
    out
}

#[cfg(test)]
mod tests;
