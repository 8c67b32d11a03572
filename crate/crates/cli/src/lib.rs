//! Command-line front end for the graypol engine.
//!
//! Exit status is 0 on success, 1 when an analysis refuses or fails (no
//! termination certificate, a non-joinable branching, an exhausted budget)
//! and 2 on usage, I/O or parse errors.

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use graypol::catalog::{get_builtin, list_builtins};
use graypol::coherence::{default_max_steps, normalize2, squier_completion_with, CompletionOptions, Verdict};
use graypol::presentation::GrayPresentation;
use graypol::rewriting::{classify, enumerate_critical, Branching};
use graypol::termination::{certify_termination, TerminationStrategy};
use graypol::text::{parse_cell, render_cell, serialize_presentation, step_to_text, three_cell_text, two_cell_text, RenderFormat};
use graypol::Cell;
use serde::Serialize;
use std::io::Write;

pub use graypol::text::parse_presentation;

/// Output format of reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Rendering style for the `render` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Linear,
    Ascii,
    Tikz,
}

/// Termination strategies selectable on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Interp,
    Interchange,
    Connected,
    Selfdual,
}

impl From<StrategyArg> for TerminationStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Interp => TerminationStrategy::Interpretation,
            StrategyArg::Interchange => TerminationStrategy::Interchange,
            StrategyArg::Connected => TerminationStrategy::Connected,
            StrategyArg::Selfdual => TerminationStrategy::SelfDual,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "graypol", version, about = "Rewriting and coherence for Gray presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the output to a file instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<String>,
    /// Rewriting budget per normalization (default 100000, or GRAYPOL_MAX_STEPS).
    #[arg(long, global = true)]
    max_steps: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the critical branchings up to symmetry.
    CriticalPairs {
        /// `builtin:NAME` or a path to a presentation file.
        presentation: String,
        /// Also list the symmetric branching `(S2, S1)` of each entry.
        #[arg(long)]
        include_symmetric: bool,
    },
    /// Certify termination or explain the refusal.
    CheckTermination {
        presentation: String,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
    },
    /// Rewrite a 2-cell to its normal form.
    Normalize {
        presentation: String,
        #[arg(long)]
        cell: String,
    },
    /// Full coherence report: termination, critical branchings, joins and tiles.
    Report { presentation: String },
    /// Print the presentation with a tile added for each uncovered critical branching.
    Complete { presentation: String },
    /// Type-check a presentation and report positivity.
    Validate { presentation: String },
    /// Render a cell.
    Render {
        presentation: String,
        #[arg(long)]
        cell: String,
        #[arg(long, value_enum, default_value = "linear")]
        style: Style,
    },
    /// List the built-in presentations.
    List,
}

/// An error caused by the invocation rather than by the analysis.
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: anyhow::Error) -> anyhow::Error {
    anyhow::Error::new(UsageError(e))
}

/// Loads `builtin:NAME` or a presentation file.
pub fn load_presentation(source: &str) -> Result<GrayPresentation> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return Ok(get_builtin(name)?.presentation);
    }
    let text = std::fs::read_to_string(source).with_context(|| format!("cannot read `{source}`"))?;
    parse_presentation(&text).with_context(|| format!("in `{source}`"))
}

#[derive(Serialize)]
struct CriticalJson {
    key: (String, String, usize, usize),
    class: String,
    source: String,
    s1: String,
    s2: String,
}

fn critical_json(p: &GrayPresentation, key: (String, String, usize, usize), b: &Branching) -> CriticalJson {
    CriticalJson {
        key,
        class: classify(b, p).name().to_string(),
        source: two_cell_text(&p.sig, &b.source),
        s1: step_to_text(&p.sig, &b.s1),
        s2: step_to_text(&p.sig, &b.s2),
    }
}

struct Ctx<'a> {
    format: Format,
    max_steps: usize,
    out: &'a mut String,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn json<T: Serialize>(&mut self, v: &T) -> Result<()> {
        let s = serde_json::to_string_pretty(v)?;
        self.line(s);
        Ok(())
    }
}

fn execute(cmd: Command, cx: &mut Ctx) -> Result<i32> {
    match cmd {
        Command::List => {
            for n in list_builtins() {
                cx.line(n);
            }
            Ok(0)
        }
        Command::Validate { presentation } => {
            let p = load_presentation(&presentation).map_err(usage)?;
            let r = p.validate();
            match cx.format {
                Format::Json => cx.json(&r)?,
                Format::Text => {
                    cx.line(format!("presentation: {}", p.name));
                    cx.line(format!("well-typed: {}", r.well_typed));
                    cx.line(format!("positive: {}", r.positive));
                    cx.line(format!("operational sources non-empty: {}", r.operational_sources_nonempty));
                    if !r.non_positive.is_empty() {
                        cx.line(format!("non-positive 2-generators: {}", r.non_positive.join(", ")));
                    }
                    for d in &r.diagnostics {
                        cx.line(format!("diagnostic: {d}"));
                    }
                }
            }
            Ok(if r.well_typed { 0 } else { 1 })
        }
        Command::CriticalPairs {
            presentation,
            include_symmetric,
        } => {
            let p = load_presentation(&presentation).map_err(usage)?;
            let cs = enumerate_critical(&p)?;
            let mut rows = Vec::new();
            for c in &cs {
                rows.push(critical_json(&p, c.key.clone(), &c.branching));
                if include_symmetric {
                    let (a, b, x, y) = c.key.clone();
                    rows.push(critical_json(&p, (b, a, y, x), &c.branching.swapped()));
                }
            }
            match cx.format {
                Format::Json => cx.json(&rows)?,
                Format::Text => {
                    cx.line(format!("{} critical branchings", cs.len()));
                    for r in &rows {
                        cx.line(format!("({}, {}, {}, {})", r.key.0, r.key.1, r.key.2, r.key.3));
                        cx.line(format!("  source: {}", r.source));
                        cx.line(format!("  s1: {}", r.s1));
                        cx.line(format!("  s2: {}", r.s2));
                    }
                }
            }
            Ok(0)
        }
        Command::CheckTermination { presentation, strategy } => {
            let p = load_presentation(&presentation).map_err(usage)?;
            match certify_termination(&p, strategy.map(Into::into)) {
                Ok(cert) => {
                    match cx.format {
                        Format::Json => cx.json(&cert)?,
                        Format::Text => {
                            cx.line(format!("certified: {}", cert.tag));
                            cx.line(format!("scope: {}", cert.scope));
                            for a in &cert.assumptions {
                                cx.line(format!("assumption: {a}"));
                            }
                            for w in &cert.witnesses {
                                cx.line(format!("  {} [{}]: {} > {}", w.generator, w.quantity, w.source, w.target));
                            }
                        }
                    }
                    Ok(0)
                }
                Err(r) => {
                    match cx.format {
                        Format::Json => cx.json(&r)?,
                        Format::Text => cx.line(format!("refused: {}", r.reason)),
                    }
                    Ok(1)
                }
            }
        }
        Command::Normalize { presentation, cell } => {
            let p = load_presentation(&presentation).map_err(usage)?;
            let phi = match parse_cell(&p, &cell).map_err(|m| usage(anyhow!("cell: {m}")))? {
                Cell::Two(phi) => phi,
                _ => return Err(usage(anyhow!("normalize expects a 2-cell"))),
            };
            match normalize2(&phi, &p, cx.max_steps) {
                Ok((nf, path)) => {
                    #[derive(Serialize)]
                    struct Out {
                        normal_form: String,
                        steps: usize,
                        path: String,
                    }
                    let out = Out {
                        normal_form: two_cell_text(&p.sig, &nf),
                        steps: path.len(),
                        path: three_cell_text(&p.sig, &path),
                    };
                    match cx.format {
                        Format::Json => cx.json(&out)?,
                        Format::Text => {
                            cx.line(out.normal_form);
                            cx.line(format!("steps: {}", out.steps));
                            if out.steps > 0 {
                                cx.line(format!("path: {}", out.path));
                            }
                        }
                    }
                    Ok(0)
                }
                Err(e) => {
                    cx.line(format!("refused: {e}"));
                    Ok(1)
                }
            }
        }
        Command::Report { presentation } => {
            let p = load_presentation(&presentation).map_err(usage)?;
            let c = completion(&p, cx.max_steps)?;
            let r = &c.report;
            match cx.format {
                Format::Json => cx.json(r)?,
                Format::Text => {
                    cx.line(format!("presentation: {} ({} mode)", r.presentation, r.mode));
                    match (&r.termination.certificate, &r.termination.refusal) {
                        (Some(cert), _) => cx.line(format!("termination: {} on {}", cert.tag, cert.scope)),
                        (None, Some(why)) => cx.line(format!("termination: refused ({why})")),
                        _ => cx.line("termination: unknown"),
                    }
                    cx.line(format!("enumeration: {}", r.enumeration));
                    cx.line(format!("critical branchings: {}", r.critical_count));
                    for j in &r.joins {
                        let status = if j.joinable { "joined" } else { "not joinable" };
                        let tile = match (&j.tile, j.emitted) {
                            (Some(t), true) => format!(", new tile {t}"),
                            (Some(t), false) => format!(", tile {t}"),
                            (None, _) => String::new(),
                        };
                        cx.line(format!("  ({}, {}, {}, {}): {status}{tile}", j.key.0, j.key.1, j.key.2, j.key.3));
                    }
                    for n in &r.notes {
                        cx.line(format!("note: {n}"));
                    }
                    cx.line(format!("verdict: {}", r.verdict.name()));
                }
            }
            Ok(if r.verdict == Verdict::Inconclusive { 1 } else { 0 })
        }
        Command::Complete { presentation } => {
            let p = load_presentation(&presentation).map_err(usage)?;
            let c = completion(&p, cx.max_steps)?;
            let all_joined = c.report.joins.iter().all(|j| j.joinable);
            match cx.format {
                Format::Json => cx.json(&c.report)?,
                Format::Text => cx.out.push_str(&serialize_presentation(&c.completed(&p))),
            }
            Ok(if all_joined { 0 } else { 1 })
        }
        Command::Render {
            presentation,
            cell,
            style,
        } => {
            let p = load_presentation(&presentation).map_err(usage)?;
            let c = parse_cell(&p, &cell).map_err(|m| usage(anyhow!("cell: {m}")))?;
            let fmt = match style {
                Style::Linear => RenderFormat::Linear,
                Style::Ascii => RenderFormat::Ascii,
                Style::Tikz => RenderFormat::Tikz,
            };
            let text = render_cell(&p.sig, &c, fmt);
            cx.out.push_str(&text);
            if !text.ends_with('\n') {
                cx.out.push('\n');
            }
            Ok(0)
        }
    }
}

fn completion(p: &GrayPresentation, max_steps: usize) -> Result<graypol::coherence::Completion> {
    let opts = CompletionOptions {
        max_steps,
        ..CompletionOptions::default()
    };
    Ok(squier_completion_with(p, &opts)?)
}

/// Runs the command line with explicit output streams and returns the exit status.
pub fn run_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    let mut out = String::new();
    let mut cx = Ctx {
        format: cli.format,
        max_steps: cli.max_steps.unwrap_or_else(default_max_steps),
        out: &mut out,
    };
    let code = match execute(cli.command, &mut cx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return if e.downcast_ref::<UsageError>().is_some() { 2 } else { 1 };
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &out).with_context(|| format!("cannot write `{path}`")),
        None => stdout.write_all(out.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e:#}");
        return 2;
    }
    code
}

/// Runs the command line on the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
