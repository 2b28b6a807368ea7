//! Command dispatch. Exit codes: 0 success, 1 a negative mathematical
//! answer, 2 bad input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use catcoh_core::abelian::{FPAbelianGroup, Int};
use catcoh_core::bwcoh::{bw_complex, BWOptions};
use catcoh_core::der::{derivations, Flavor};
use catcoh_core::fincat::CCStructure;
use catcoh_core::freeccc::{normalize, CCSignature, MorExpr};
use catcoh_core::linext::classify;
use catcoh_core::natsys::{is_cartesian, is_cartesian_closed, CartesianReport, Condition};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::check;
use crate::input::{self, parse_document, Document, NatSysDecl, ParseError};
use crate::random;

#[derive(Parser, Debug)]
#[command(name = "catcoh", version, about = "Cohomology of finite categories and related computations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the random generators.
    #[arg(long, global = true, default_value_t = random::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a file and check every declaration in it.
    Validate { file: PathBuf },
    /// Cohomology groups H^0 .. H^N of a natural system.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Print only H^N.
        #[arg(long)]
        only: bool,
        /// Use all cochains instead of normalized ones.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        pick: Pick,
    },
    /// The group of derivations.
    Derivations {
        file: PathBuf,
        #[arg(long, value_parser = parse_flavor, default_value = "plain")]
        flavor: Flavor,
        /// Also print the values of a generating set.
        #[arg(long)]
        basis: bool,
        #[command(flatten)]
        pick: Pick,
    },
    /// Linear extensions.
    Extensions {
        #[command(subcommand)]
        command: ExtCommand,
    },
    /// Natural systems.
    Natsys {
        #[command(subcommand)]
        command: NatsysCommand,
    },
    /// Normal forms in the free cartesian closed category of a `ccc` block.
    Normalize {
        file: PathBuf,
        /// A term to normalize instead of the `term` lines of the file.
        #[arg(long)]
        term: Option<String>,
        #[arg(long)]
        ccc: Option<String>,
    },
    /// Check the proofs in a file.
    ProveCheck {
        file: PathBuf,
        #[arg(long)]
        proof: Option<String>,
    },
    /// Print a random instance in the input format.
    Generate {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 4)]
        objects: usize,
        #[arg(long, default_value_t = 6)]
        arrows: usize,
        #[arg(long, default_value_t = 4)]
        modulus: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ExtCommand {
    /// Count equivalence classes of extensions and list representatives.
    Classify {
        file: PathBuf,
        /// Bound on the number of cochains enumerated.
        #[arg(long, default_value_t = 1_000_000)]
        limit: u128,
        #[command(flatten)]
        pick: Pick,
    },
}

#[derive(Subcommand, Debug)]
enum NatsysCommand {
    /// Test the cartesian or cartesian closed condition.
    Check {
        file: PathBuf,
        #[arg(long, conflicts_with = "cartesian_closed", required_unless_present = "cartesian_closed")]
        cartesian: bool,
        #[arg(long)]
        cartesian_closed: bool,
        #[command(flatten)]
        pick: Pick,
    },
}

#[derive(Args, Debug)]
struct Pick {
    /// Which natural system to use; the first one by default.
    #[arg(long)]
    natsys: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    /// A free category on a random acyclic graph with a weighted cyclic system.
    Dag,
    /// A category of functions between small sets with a constant cyclic system.
    Concrete,
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse().map_err(|e: catcoh_core::der::DerError| e.to_string())
}

/// One output record; JSON lines carry the same fields under `kind`.
#[derive(Serialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Record {
    Error { file: String, line: usize, col: usize, message: String },
    Checked { item: String, ok: bool },
    Cohomology { natsys: String, degree: usize, group: String, free_rank: usize, torsion: Vec<String> },
    Derivations { natsys: String, flavor: String, group: String, free_rank: usize, torsion: Vec<String> },
    DerivationGenerator { index: usize, values: BTreeMap<String, Vec<String>> },
    Classification { natsys: String, classes: usize, cocycles: usize, coboundaries: usize, h2: String },
    Representative { index: usize, values: BTreeMap<String, Vec<String>> },
    Condition { natsys: String, condition: String, holds: bool },
    Failure { morphism: String, condition: String },
    NormalForm { name: String, input: String, normal: String, src: String, tgt: String },
    Proof { name: String, valid: bool, line: Option<usize>, col: Option<usize>, message: Option<String> },
    Generated { text: String },
}

fn strings(v: &[Int]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl Record {
    fn text(&self) -> String {
        match self {
            Record::Error { file, line: 0, message, .. } => format!("{file}: {message}"),
            Record::Error { file, line, col, message } => format!("{file}:{line}:{col}: {message}"),
            Record::Checked { item, ok } => format!("{item}: {}", if *ok { "ok" } else { "invalid" }),
            Record::Cohomology { degree, group, .. } => format!("H^{degree} = {group}"),
            Record::Derivations { group, .. } => format!("Der = {group}"),
            Record::DerivationGenerator { index, values } => {
                let parts: Vec<String> = values.iter().map(|(f, x)| format!("{f} -> [{}]", x.join(" "))).collect();
                format!("d{index}: {}", parts.join(", "))
            }
            Record::Classification { classes, h2, .. } => format!("classes = {classes}\nH^2 = {h2}"),
            Record::Representative { index, values } => {
                if values.is_empty() {
                    return format!("class {index}: 0");
                }
                let parts: Vec<String> = values.iter().map(|(k, x)| format!("c({k}) = [{}]", x.join(" "))).collect();
                format!("class {index}: {}", parts.join(", "))
            }
            Record::Condition { condition, holds, .. } => format!("{condition}: {}", if *holds { "yes" } else { "no" }),
            Record::Failure { morphism, condition } => format!("fails at {morphism}: {condition}"),
            Record::NormalForm { name, normal, src, tgt, .. } => {
                if name.is_empty() {
                    format!("{normal} : {src} -> {tgt}")
                } else {
                    format!("{name} = {normal} : {src} -> {tgt}")
                }
            }
            Record::Proof { name, valid, line, col, message } => match (valid, line, col, message) {
                (true, ..) => format!("proof {name}: valid"),
                (false, Some(l), Some(c), Some(m)) => format!("proof {name}: invalid at {l}:{c}: {m}"),
                _ => format!("proof {name}: invalid"),
            },
            Record::Generated { text } => text.trim_end().to_string(),
        }
    }
}

/// Collected output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    format: Format,
    outcome: Outcome,
}

impl Out {
    fn emit(&mut self, r: Record) {
        let line = match self.format {
            Format::Text => r.text(),
            Format::JsonLines => serde_json::to_string(&r).expect("records serialize"),
        };
        self.outcome.stdout.push_str(&line);
        self.outcome.stdout.push('\n');
    }

    fn error(&mut self, file: &Path, e: &ParseError) {
        let r =
            Record::Error { file: file.display().to_string(), line: e.line, col: e.col, message: e.message.clone() };
        match self.format {
            Format::Text => {
                self.outcome.stderr.push_str(&r.text());
                self.outcome.stderr.push('\n');
            }
            Format::JsonLines => self.emit(r),
        }
    }
}

/// An input problem, reported with exit code 2.
struct Bad(ParseError);

impl From<ParseError> for Bad {
    fn from(e: ParseError) -> Self {
        Bad(e)
    }
}

fn bad(message: impl Into<String>) -> Bad {
    Bad(ParseError { line: 0, col: 0, message: message.into() })
}

fn load(file: &Path) -> Result<Document, Bad> {
    let text = std::fs::read_to_string(file).map_err(|e| bad(format!("cannot read: {e}")))?;
    Ok(parse_document(&text)?)
}

fn pick_natsys<'a>(doc: &'a Document, pick: &Pick) -> Result<&'a NatSysDecl, Bad> {
    let d = match &pick.natsys {
        Some(n) => doc.natsys.iter().find(|d| &d.name == n).ok_or_else(|| bad(format!("no natural system `{n}`")))?,
        None => doc.natsys.first().ok_or_else(|| bad("no natural system in the file"))?,
    };
    check::natsys(doc, d)?;
    Ok(d)
}

fn pick_structure<'a>(doc: &'a Document, d: &NatSysDecl) -> Result<&'a CCStructure, Bad> {
    let s = doc.structure_on(&d.over).ok_or_else(|| bad(format!("no structure on `{}`", d.over)))?;
    check::structure(doc, s)?;
    Ok(&s.structure)
}

fn group_fields(g: &FPAbelianGroup) -> (String, usize, Vec<String>) {
    let inv = g.invariant_factors();
    (inv.to_string(), inv.free_rank, strings(&inv.torsion))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = Out { format: cli.format, outcome: Outcome::default() };
    let file = command_file(&cli.command);
    let code = match dispatch(&cli, &mut out) {
        Ok(code) => code,
        Err(Bad(e)) => {
            out.error(file.as_deref().unwrap_or(Path::new("-")), &e);
            2
        }
    };
    out.outcome.code = code;
    out.outcome
}

fn command_file(c: &Command) -> Option<PathBuf> {
    match c {
        Command::Validate { file }
        | Command::Cohomology { file, .. }
        | Command::Derivations { file, .. }
        | Command::Normalize { file, .. }
        | Command::ProveCheck { file, .. }
        | Command::Extensions { command: ExtCommand::Classify { file, .. } }
        | Command::Natsys { command: NatsysCommand::Check { file, .. } } => Some(file.clone()),
        Command::Generate { .. } => None,
    }
}

fn dispatch(cli: &Cli, out: &mut Out) -> Result<i32, Bad> {
    match &cli.command {
        Command::Validate { file } => {
            let doc = load(file)?;
            let mut code = 0;
            for (item, r) in check::all(&doc) {
                out.emit(Record::Checked { item, ok: r.is_ok() });
                if let Err(e) = r {
                    out.error(file, &e);
                    code = 2;
                }
            }
            Ok(code)
        }
        Command::Cohomology { file, degree, only, full, pick } => {
            let doc = load(file)?;
            let d = pick_natsys(&doc, pick)?;
            let opts = if *full { BWOptions::full() } else { BWOptions::default() };
            let bw = bw_complex(&d.system, degree + 1, opts).map_err(|e| bad(e.to_string()))?;
            let first = if *only { *degree } else { 0 };
            for n in first..=*degree {
                let (group, free_rank, torsion) = group_fields(&bw.cohomology(n));
                out.emit(Record::Cohomology { natsys: d.name.clone(), degree: n, group, free_rank, torsion });
            }
            Ok(0)
        }
        Command::Derivations { file, flavor, basis, pick } => {
            let doc = load(file)?;
            let d = pick_natsys(&doc, pick)?;
            let s = if *flavor == Flavor::Plain { None } else { Some(pick_structure(&doc, d)?) };
            let space = derivations(&d.system, s, *flavor).map_err(|e| bad(e.to_string()))?;
            let (group, free_rank, torsion) = group_fields(space.group());
            out.emit(Record::Derivations {
                natsys: d.name.clone(),
                flavor: flavor.to_string(),
                group,
                free_rank,
                torsion,
            });
            if *basis {
                let c = d.system.base();
                let k = space.group().ngens();
                for i in 0..k {
                    let coords: Vec<Int> = (0..k).map(|j| Int::from(u8::from(i == j))).collect();
                    let x = space.element(&coords);
                    let values = c
                        .morphisms()
                        .filter(|&f| !c.is_identity(f))
                        .map(|f| (c.mor_name(f).to_string(), strings(space.value(&x, f))))
                        .collect();
                    out.emit(Record::DerivationGenerator { index: i + 1, values });
                }
            }
            Ok(0)
        }
        Command::Extensions { command: ExtCommand::Classify { file, limit, pick } } => {
            let doc = load(file)?;
            let d = pick_natsys(&doc, pick)?;
            let cls = classify(&d.system, *limit).map_err(|e| bad(e.to_string()))?;
            let bw = bw_complex(&d.system, 3, BWOptions::default()).map_err(|e| bad(e.to_string()))?;
            let h2 = bw.cohomology(2).invariant_factors().to_string();
            out.emit(Record::Classification {
                natsys: d.name.clone(),
                classes: cls.count,
                cocycles: cls.cocycles,
                coboundaries: cls.coboundaries,
                h2,
            });
            let c = d.system.base();
            for (index, rep) in cls.representatives.iter().enumerate() {
                let values = rep
                    .iter()
                    .filter(|(_, x)| x.iter().any(|v| v != &Int::from(0)))
                    .map(|((f, g), x)| (format!("{}, {}", c.mor_name(f), c.mor_name(g)), strings(x)))
                    .collect();
                out.emit(Record::Representative { index, values });
            }
            Ok(0)
        }
        Command::Natsys { command: NatsysCommand::Check { file, cartesian_closed, pick, .. } } => {
            let doc = load(file)?;
            let d = pick_natsys(&doc, pick)?;
            let s = pick_structure(&doc, d)?;
            let (condition, report) = if *cartesian_closed {
                match is_cartesian_closed(&d.system, s) {
                    Ok(r) => ("cartesian closed", r),
                    // the closed condition is only defined for cartesian systems
                    Err(_) => ("cartesian closed", is_cartesian(&d.system, s)),
                }
            } else {
                ("cartesian", is_cartesian(&d.system, s))
            };
            emit_report(out, d, condition, &report);
            Ok(if report.holds() { 0 } else { 1 })
        }
        Command::Normalize { file, term, ccc } => {
            let doc = load(file)?;
            let decl = match ccc {
                Some(n) => doc.cccs.iter().find(|d| &d.name == n).ok_or_else(|| bad(format!("no ccc `{n}`")))?,
                None => doc.cccs.first().ok_or_else(|| bad("no ccc block in the file"))?,
            };
            check::ccc(decl)?;
            match term {
                Some(t) => {
                    let e = input::parse_term(&decl.signature, t)
                        .map_err(|e| bad(format!("in --term at column {}: {}", e.col, e.message)))?;
                    normal_form(out, &decl.signature, "", &e, decl.line)?;
                }
                None => {
                    for t in &decl.terms {
                        normal_form(out, &decl.signature, &t.name, &t.term, t.line)?;
                    }
                }
            }
            Ok(0)
        }
        Command::ProveCheck { file, proof } => {
            let doc = load(file)?;
            let mut code = 0;
            let mut any = false;
            for p in doc.proofs.iter().filter(|p| proof.as_ref().is_none_or(|n| &p.name == n)) {
                any = true;
                match check::proof(&doc, p) {
                    Ok(()) => out.emit(Record::Proof {
                        name: p.name.clone(),
                        valid: true,
                        line: None,
                        col: None,
                        message: None,
                    }),
                    Err(e) => {
                        code = 1;
                        out.emit(Record::Proof {
                            name: p.name.clone(),
                            valid: false,
                            line: Some(e.line),
                            col: Some(e.col),
                            message: Some(
                                e.message
                                    .strip_prefix(&format!("proof `{}`: ", p.name))
                                    .unwrap_or(&e.message)
                                    .to_string(),
                            ),
                        });
                    }
                }
            }
            if !any {
                return Err(bad("no matching proof in the file"));
            }
            Ok(code)
        }
        Command::Generate { kind, objects, arrows, modulus } => {
            let mut rng = random::rng(cli.seed);
            let text = match kind {
                GenKind::Dag => {
                    let (c, edges) = random::dag(&mut rng, *objects, *arrows);
                    let d = random::weighted_system(&mut rng, &c, &edges, *modulus);
                    format!("{}\n{}", input::print::category("C", &c), input::print::natsys("D", "C", &d))
                }
                GenKind::Concrete => {
                    let c = random::concrete(&mut rng, (*objects).min(3), *arrows);
                    let d = random::constant_cyclic(&mut rng, &c, *modulus);
                    format!("{}\n{}", input::print::category("C", &c), input::print::natsys("D", "C", &d))
                }
            };
            out.emit(Record::Generated { text });
            Ok(0)
        }
    }
}

fn normal_form(out: &mut Out, sig: &CCSignature, name: &str, e: &MorExpr, line: usize) -> Result<(), Bad> {
    let nf = normalize(sig, e).map_err(|err| Bad(ParseError { line, col: 1, message: err.to_string() }))?;
    out.emit(Record::NormalForm {
        name: name.to_string(),
        input: e.to_string(),
        normal: nf.term.to_string(),
        src: nf.src.to_string(),
        tgt: nf.tgt.to_string(),
    });
    Ok(())
}

fn emit_report(out: &mut Out, d: &NatSysDecl, condition: &str, report: &CartesianReport) {
    out.emit(Record::Condition { natsys: d.name.clone(), condition: condition.to_string(), holds: report.holds() });
    let c = d.system.base();
    let o = |x| c.obj_name(x).to_string();
    for v in report.failures() {
        let what = match v.condition {
            Condition::Terminal => "terminal".to_string(),
            Condition::Product { x, y } => format!("product ({}, {})", o(x), o(y)),
            Condition::Exponential { x, y, z } => format!("exponential ({}, {}, {})", o(x), o(y), o(z)),
        };
        out.emit(Record::Failure { morphism: c.mor_name(v.morphism).to_string(), condition: what });
    }
}
