//! `simploc`: run the bounded checks on SSX documents and print a JSON report.
//!
//! Exit codes: 0 yes/success, 1 no, 2 inconclusive, 3 usage or load error.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use simploc::bisimplicial::{
    default_tops, is_horizontal_reedy_left_fibration, is_strong, replacement_augmentation_with, simplicial_replacement, Variant,
};
use simploc::homotopy::{
    describe_homology, homology, induces_homology_iso, is_covariant_equivalence, is_left_cofinal, is_right_cofinal, is_right_cofinal_auto,
    Budget, CofinalityMode,
};
use simploc::lifting::{classify_fibration, default_bound, FibrationKind};
use simploc::localization::{delocalization_check, quasi_localize, tau1_localization_agrees};
use simploc::sset::standard::point;
use simploc::sset::{GenId, SimplicialMap, SimplicialSet};
use simploc::ssx::{parse, serialize, Document};
use simploc::{Error, Outcome, Verdict};

const BUDGET_ENV: &str = "SIMPLOC_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "simploc", version, about = "Bounded checks on finite simplicial and bisimplicial sets")]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

/// Overrides for the default budget; `SIMPLOC_BUDGET` (e.g. `cosets=5000,max_cells=64`)
/// is read first.
#[derive(Args, Debug)]
struct BudgetArgs {
    /// Coset enumeration limit for π₁ and τ₁.
    #[arg(long, global = true)]
    cosets: Option<usize>,
    /// Cells a factorization may attach.
    #[arg(long, global = true)]
    max_cells: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lifting check against a horn or boundary family.
    Check {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Largest horn or boundary dimension; required for truncated inputs.
        #[arg(long)]
        bound: Option<usize>,
        /// An `smap`, or an `sset` checked against the point.
        file: PathBuf,
    },
    /// Integral homology of an `sset`, or of both sides of an `smap`.
    Homology {
        #[arg(long)]
        max_degree: usize,
        file: PathBuf,
    },
    /// Right (or left) cofinality of an `smap`.
    Cofinal {
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        #[arg(long)]
        left: bool,
        #[arg(long)]
        bound: Option<usize>,
        file: PathBuf,
    },
    /// Covariant equivalence of `f: X -> Y` over `B`.
    CovEquiv {
        /// The map `f`.
        file: PathBuf,
        /// `X -> B`.
        #[arg(long)]
        source_over: PathBuf,
        /// `Y -> B`.
        #[arg(long)]
        target_over: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Quasi-localization of a `marked` document.
    Localize {
        /// Skeleton of `J` glued in along each mark.
        #[arg(long)]
        j_trunc: usize,
        /// Write `X -> L(X, S)` here as an `smap`.
        #[arg(long)]
        output: Option<PathBuf>,
        file: PathBuf,
    },
    /// Homology and τ₁ checks of the delocalization statement for a base `sset`.
    DelocalizeVerify {
        #[arg(long)]
        j_trunc: usize,
        file: PathBuf,
    },
    /// Simplicial replacement of an `smap` and the augmentation `ds(X) -> X`.
    Replace {
        /// `nondegenerate` or `full:d`.
        #[arg(long, default_value = "nondegenerate")]
        variant: String,
        #[arg(long)]
        h_top: Option<usize>,
        #[arg(long)]
        v_top: Option<usize>,
        /// Write `s(X)` here as a `bisset`.
        #[arg(long)]
        output: Option<PathBuf>,
        file: PathBuf,
    },
    /// Horizontal Reedy left fibration check of a `bismap`.
    Reedy {
        #[arg(long)]
        bound: usize,
        /// Also check the strong condition.
        #[arg(long)]
        strong: bool,
        file: PathBuf,
    },
    /// Run the acceptance criteria (all, or the listed numbers).
    Accept { criteria: Vec<usize> },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Left,
    Right,
    Inner,
    Kan,
    Trivial,
}

impl From<Kind> for FibrationKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Left => FibrationKind::Left,
            Kind::Right => FibrationKind::Right,
            Kind::Inner => FibrationKind::Inner,
            Kind::Kan => FibrationKind::Kan,
            Kind::Trivial => FibrationKind::Trivial,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Auto,
    Definition,
    TheoremA,
    Joyal,
}

struct Report {
    command: Vec<String>,
    inputs: Vec<Value>,
    parameters: Map<String, Value>,
    verdicts: Vec<(String, Verdict)>,
    results: Map<String, Value>,
    /// Set by commands whose success is not a verdict.
    exit: Option<u8>,
}

impl Report {
    fn verdict(&mut self, check: &str, v: Verdict) {
        self.verdicts.push((check.to_string(), v));
    }

    fn exit_code(&self) -> u8 {
        if let Some(e) = self.exit {
            return e;
        }
        let outcomes: Vec<Outcome> = self.verdicts.iter().map(|(_, v)| v.outcome).collect();
        if outcomes.contains(&Outcome::No) {
            1
        } else if outcomes.contains(&Outcome::Inconclusive) {
            2
        } else {
            0
        }
    }

    fn to_json(&self, elapsed_ms: u128) -> Value {
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|(check, v)| json!({"check": check, "outcome": v.outcome.as_str(), "scope": v.scope, "summary": v.summary()}))
            .collect();
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "parameters": self.parameters,
            "verdicts": verdicts,
            "results": self.results,
            "exit_code": self.exit_code(),
            "elapsed_ms": elapsed_ms,
        })
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn read_input(path: &Path) -> Result<Vec<u8>, Error> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map_err(|e| usage(format!("reading stdin: {e}")))?;
    } else {
        bytes = std::fs::read(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
    }
    Ok(bytes)
}

fn load(path: &Path, report: &mut Report) -> Result<Document, Error> {
    let bytes = read_input(path)?;
    let digest: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    let doc = parse(&bytes).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    report.inputs.push(json!({"path": path.display().to_string(), "sha256": digest, "kind": doc.kind()}));
    Ok(doc)
}

fn load_map(path: &Path, report: &mut Report) -> Result<SimplicialMap, Error> {
    match load(path, report)? {
        Document::SMap(f) => Ok(f),
        other => Err(usage(format!("{}: expected an smap document, found {}", path.display(), other.kind()))),
    }
}

fn to_point(x: Arc<SimplicialSet>) -> SimplicialMap {
    SimplicialMap::constant(x, Arc::new(point()), GenId(0))
}

fn write_output(path: &Path, doc: &Document) -> Result<(), Error> {
    let text = serialize(doc);
    if path.as_os_str() == "-" {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|e| usage(format!("writing {}: {e}", path.display())))
    }
}

/// A horn bound: explicit, or the default for untruncated inputs.
fn resolve_bound(bound: Option<usize>, p: &SimplicialMap) -> Result<usize, Error> {
    match bound {
        Some(b) => Ok(b),
        None if p.source().truncation().is_some() || p.target().truncation().is_some() => {
            Err(usage("truncated input: pass --bound explicitly"))
        }
        None => Ok(default_bound(p)),
    }
}

fn parse_budget_env(s: &str, budget: &mut Budget) -> Result<(), Error> {
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| usage(format!("{BUDGET_ENV}: expected key=value, got {part:?}")))?;
        let n: usize = value.trim().parse().map_err(|_| usage(format!("{BUDGET_ENV}: {key} needs an integer")))?;
        match key.trim() {
            "cosets" => budget.cosets = n,
            "max_cells" => budget.max_cells = n,
            "dim_bound" => budget.dim_bound = Some(n),
            other => return Err(usage(format!("{BUDGET_ENV}: unknown key {other:?}"))),
        }
    }
    Ok(())
}

fn budget_json(b: &Budget) -> Value {
    json!({"cosets": b.cosets, "max_cells": b.max_cells, "dim_bound": b.dim_bound})
}

fn run(cli: Cli, report: &mut Report) -> Result<(), Error> {
    let mut budget = Budget::default();
    if let Ok(s) = std::env::var(BUDGET_ENV) {
        parse_budget_env(&s, &mut budget)?;
    }
    if let Some(c) = cli.budget.cosets {
        budget.cosets = c;
    }
    if let Some(m) = cli.budget.max_cells {
        budget.max_cells = m;
    }
    let params = &mut report.parameters;
    match cli.command {
        Command::Check { kind, bound, file } => {
            let p = match load(&file, report)? {
                Document::SMap(f) => f,
                Document::SSet(x) => to_point(x),
                other => return Err(usage(format!("check needs an smap or sset, found {}", other.kind()))),
            };
            let bound = resolve_bound(bound, &p)?;
            report.parameters.insert("kind".into(), json!(FibrationKind::from(kind).name()));
            report.parameters.insert("bound".into(), json!(bound));
            let v = classify_fibration(&p, kind.into(), bound)?;
            report.verdict("fibration", v);
        }
        Command::Homology { max_degree, file } => {
            params.insert("max_degree".into(), json!(max_degree));
            let describe = |x: &SimplicialSet| {
                let h = homology(x, max_degree);
                let groups: Vec<Value> = h.degrees.iter().map(|d| json!(d.to_string())).collect();
                json!({"groups": groups, "text": describe_homology(&h), "trusted_below": h.trusted_below})
            };
            match load(&file, report)? {
                Document::SSet(x) => {
                    report.results.insert("homology".into(), describe(&x));
                }
                Document::SMap(f) => {
                    report.results.insert("source".into(), describe(f.source()));
                    report.results.insert("target".into(), describe(f.target()));
                    report.verdict("homology isomorphism", induces_homology_iso(&f, max_degree));
                }
                other => return Err(usage(format!("homology needs an sset or smap, found {}", other.kind()))),
            }
            if report.verdicts.is_empty() {
                report.exit = Some(0);
            }
        }
        Command::Cofinal { mode, left, bound, file } => {
            let u = load_map(&file, report)?;
            if let Some(b) = bound {
                budget.dim_bound = Some(b);
            } else if u.target().truncation().is_some() {
                return Err(usage("truncated target: pass --bound explicitly"));
            }
            report.parameters.insert("mode".into(), json!(format!("{mode:?}").to_lowercase()));
            report.parameters.insert("side".into(), json!(if left { "left" } else { "right" }));
            report.parameters.insert("budget".into(), budget_json(&budget));
            let v = match (mode, left) {
                (Mode::Auto, false) => is_right_cofinal_auto(&u, &budget)?,
                (Mode::Auto, true) => is_left_cofinal(&u, CofinalityMode::Joyal, &budget)?,
                (m, l) => {
                    let cm = match m {
                        Mode::Definition => CofinalityMode::Definition,
                        Mode::TheoremA => CofinalityMode::TheoremA,
                        _ => CofinalityMode::Joyal,
                    };
                    if l {
                        is_left_cofinal(&u, cm, &budget)?
                    } else {
                        is_right_cofinal(&u, cm, &budget)?
                    }
                }
            };
            report.verdict("cofinal", v);
        }
        Command::CovEquiv { file, source_over, target_over, bound } => {
            let f = load_map(&file, report)?;
            let p_x = load_map(&source_over, report)?;
            let p_y = load_map(&target_over, report)?;
            // documents are loaded separately, so rebind the shared objects
            let p_x = p_x.with_source(f.source().clone());
            let p_y = p_y.with_source(f.target().clone()).with_target(p_x.target().clone());
            budget.dim_bound = bound.or(budget.dim_bound);
            report.parameters.insert("budget".into(), budget_json(&budget));
            let v = is_covariant_equivalence(&f, &p_x, &p_y, &budget)?;
            report.verdict("covariant equivalence", v);
        }
        Command::Localize { j_trunc, output, file } => {
            let m = match load(&file, report)? {
                Document::Marked(m) => m,
                other => return Err(usage(format!("localize needs a marked document, found {}", other.kind()))),
            };
            report.parameters.insert("j_trunc".into(), json!(j_trunc));
            report.parameters.insert("cosets".into(), json!(budget.cosets));
            let ql = quasi_localize(&m, j_trunc)?;
            report.results.insert("counts".into(), json!(ql.set.counts()));
            report.results.insert("trusted_below".into(), json!(ql.trusted_below()));
            report.verdict("τ₁ agrees with the localized category", tau1_localization_agrees(&m, &ql, budget.cosets)?);
            if let Some(path) = output {
                write_output(&path, &Document::SMap(ql.map.clone()))?;
            }
        }
        Command::DelocalizeVerify { j_trunc, file } => {
            let b = match load(&file, report)? {
                Document::SSet(b) => b,
                other => return Err(usage(format!("delocalize-verify needs an sset, found {}", other.kind()))),
            };
            report.parameters.insert("j_trunc".into(), json!(j_trunc));
            report.parameters.insert("variant".into(), json!("nondegenerate"));
            report.parameters.insert("budget".into(), budget_json(&budget));
            report.verdict("delocalization", delocalization_check(&b, j_trunc, &budget)?);
        }
        Command::Replace { variant, h_top, v_top, output, file } => {
            let p = load_map(&file, report)?;
            let variant = Variant::parse(&variant).ok_or_else(|| usage(format!("unknown variant {variant:?}")))?;
            let (h0, v0) = default_tops(p.source(), p.target(), variant);
            let (h, v) = (h_top.unwrap_or(h0), v_top.unwrap_or(v0));
            report.parameters.insert("variant".into(), json!(variant.describe()));
            report.parameters.insert("h_top".into(), json!(h));
            report.parameters.insert("v_top".into(), json!(v));
            report.parameters.insert("budget".into(), budget_json(&budget));
            let r = simplicial_replacement(&p, variant, h, v)?;
            let counts: Vec<Value> = r.set.columns().iter().map(|c| json!(c.counts())).collect();
            report.results.insert("column_counts".into(), json!(counts));
            let (_, aug) = replacement_augmentation_with(&p, variant, h, v, &budget)?;
            report.verdict("ds(X) -> X covariant equivalence", aug);
            if let Some(path) = output {
                write_output(&path, &Document::BisSet(r.set.clone()))?;
            }
        }
        Command::Reedy { bound, strong, file } => {
            let p = match load(&file, report)? {
                Document::BisMap(p) => p,
                other => return Err(usage(format!("reedy needs a bismap, found {}", other.kind()))),
            };
            report.parameters.insert("bound".into(), json!(bound));
            report.parameters.insert("strong".into(), json!(strong));
            let v = if strong { is_strong(&p, bound)? } else { is_horizontal_reedy_left_fibration(&p, bound)? };
            report.verdict(if strong { "strong horizontal Reedy left fibration" } else { "horizontal Reedy left fibration" }, v);
        }
        Command::Accept { criteria } => {
            if let Some(bad) = criteria.iter().find(|&&n| n == 0 || n > simploc::acceptance::CRITERIA) {
                return Err(usage(format!("no acceptance criterion {bad}")));
            }
            let reports = if criteria.is_empty() {
                simploc::acceptance::run_all()
            } else {
                criteria.iter().map(|&n| simploc::acceptance::run(n)).collect()
            };
            for r in &reports {
                eprintln!("{r}");
            }
            let list: Vec<Value> = reports
                .iter()
                .map(|r| json!({"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail, "elapsed_ms": r.elapsed.as_millis()}))
                .collect();
            report.results.insert("criteria".into(), json!(list));
            report.exit = Some(if reports.iter().all(|r| r.passed) { 0 } else { 1 });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut report = Report {
        command: args.into_iter().skip(1).collect(),
        inputs: vec![],
        parameters: Map::new(),
        verdicts: vec![],
        results: Map::new(),
        exit: None,
    };
    if let Err(e) = run(cli, &mut report) {
        eprintln!("simploc: {e}");
        return ExitCode::from(3);
    }
    let out = report.to_json(start.elapsed().as_millis());
    println!("{}", serde_json::to_string_pretty(&out).expect("reports serialize"));
    ExitCode::from(report.exit_code())
}
