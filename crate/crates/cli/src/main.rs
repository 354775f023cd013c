//! `rbl`: command-line front end to the RBL workbench.
//!
//! Exit codes: 0 on success (proved, valid), 1 when the input is refuted
//! or invalid, 2 for unknown, 3 on input errors.

use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use rbl_core::algebra::{check_basic_reduct, check_rba_axioms, enumerate_rbas, FiniteRba, MAX_ENUM_SIZE};
use rbl_core::hilbert::{check_hilbert_proof, parse_hilbert_proof};
use rbl_core::kripke::{check_bpl_model, truth_set, BplModel};
use rbl_core::lrbl::{
    check_proof, eliminate_mix, parse_proof, prove, refute, Countermodel, MixError, Profile, SearchConfig, Verdict,
};
use rbl_core::simple_calc::{check_simple, SimpleDerivation, SystemId};
use rbl_core::ternary::{lift_bpl, TernaryModel};
use rbl_core::{mu, parse_formula, parse_sequent, parse_structure, Formula};

#[derive(Parser)]
#[command(name = "rbl", version, about = "Residuated basic logic workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Rule profile for proof search and checking: core, lj or top-imp.
    #[arg(long, global = true, default_value = "core")]
    profile: Profile,
    /// Bound on non-invertible steps per branch.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Per-branch contraction budget.
    #[arg(long, global = true)]
    contraction_budget: Option<usize>,
    /// Countermodel size bound (ternary states / algebra elements), or the
    /// largest algebra for `enumerate-algebras`.
    #[arg(long, global = true)]
    max_size: Option<usize>,
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Calculus for `check-simple`.
    #[arg(long, global = true, value_enum, default_value = "sstar")]
    system: System,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    Srbl,
    Sstar,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula, structure or sequent and print it back.
    Parse { text: String },
    /// Search for a proof or a countermodel.
    Prove { sequent: String },
    /// Check an S-expression proof file.
    CheckProof { file: PathBuf },
    /// Check a BPL model; optionally evaluate a formula in it.
    CheckModel {
        file: PathBuf,
        #[arg(long)]
        formula: Option<String>,
        #[arg(long)]
        world: Option<usize>,
    },
    /// Check a ternary model; optionally evaluate a formula in it.
    CheckTernary {
        file: PathBuf,
        #[arg(long)]
        formula: Option<String>,
        #[arg(long)]
        state: Option<usize>,
    },
    /// Print the lifted ternary model of a BPL model.
    Lift { file: PathBuf },
    /// List every residuated basic algebra up to `--max-size` (default 3).
    EnumerateAlgebras,
    /// Check an algebra against the RBA axioms.
    ValidateAlgebra { file: PathBuf },
    /// Remove every Cut/Mix from a proof file.
    EliminateMix { file: PathBuf },
    /// Search for a countermodel only.
    Countermodel { sequent: String },
    /// Prove every sequent in the `.seq` files of a directory; prints TSV.
    Corpus { dir: PathBuf },
    /// Check an S_RBL / S*_RBL derivation file.
    CheckSimple { file: PathBuf },
    /// Check a Hilbert-style BPL proof (`n. <formula> ; ax <id>` / `; mp <i> <j>`).
    CheckHilbert {
        file: PathBuf,
        /// Defaults to the last step.
        #[arg(long)]
        goal: Option<String>,
    },
}

/// What a command produced: exit code plus both renderings.
struct Outcome {
    code: u8,
    text: String,
    json: Value,
}

impl Outcome {
    fn new(code: u8, text: impl Into<String>, json: Value) -> Outcome {
        Outcome { code, text: text.into(), json }
    }
}

fn read(path: &FsPath) -> Result<String> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).context("reading stdin");
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &FsPath) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn formula(text: &str) -> Result<Formula> {
    parse_formula(text).map_err(|e| anyhow!("bad formula `{text}`: {e}"))
}

fn mask_list(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&w| mask >> w & 1 == 1).collect()
}

impl Cli {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::with_profile(self.profile);
        if let Some(d) = self.depth {
            cfg.depth_bound = d;
        }
        if let Some(b) = self.contraction_budget {
            cfg.contraction_budget = b;
        }
        if let Some(n) = self.max_size {
            cfg.countermodel_size = n;
            cfg.algebra_size = n.min(MAX_ENUM_SIZE);
        }
        cfg
    }

    fn run(&self) -> Result<Outcome> {
        match &self.command {
            Command::Parse { text } => parse(text),
            Command::Prove { sequent } => self.prove(sequent),
            Command::CheckProof { file } => self.check_proof(file),
            Command::CheckModel { file, formula, world } => check_model(file, formula.as_deref(), *world),
            Command::CheckTernary { file, formula, state } => check_ternary(file, formula.as_deref(), *state),
            Command::Lift { file } => lift(file),
            Command::EnumerateAlgebras => enumerate(self.max_size.unwrap_or(3)),
            Command::ValidateAlgebra { file } => validate_algebra(file),
            Command::EliminateMix { file } => eliminate(file),
            Command::Countermodel { sequent } => self.countermodel(sequent),
            Command::Corpus { dir } => self.corpus(dir),
            Command::CheckSimple { file } => self.check_simple(file),
            Command::CheckHilbert { file, goal } => check_hilbert(file, goal.as_deref()),
        }
    }

    fn prove(&self, text: &str) -> Result<Outcome> {
        let s = parse_sequent(text).map_err(|e| anyhow!("bad sequent `{text}`: {e}"))?;
        let cfg = self.config();
        let v = prove(&s, &cfg);
        let mut j = json!({ "sequent": s.to_string(), "profile": cfg.profile, "verdict": v.name() });
        let (code, text) = match &v {
            Verdict::Proved(t) => {
                j["proof"] = json!(t.to_sexpr().to_string());
                j["proof_size"] = json!(t.size());
                (0, format!("proved\n{t}"))
            }
            Verdict::Refuted(cm) => {
                j["countermodel"] = json!(cm);
                (1, format!("refuted\n{}", describe(cm)))
            }
            Verdict::Unknown(r) => {
                j["report"] = json!(r);
                let text = format!(
                    "unknown (depth {}, contraction budget {}, {} nodes{})",
                    r.depth_bound,
                    r.contraction_budget,
                    r.nodes,
                    if r.node_limit_hit { ", node limit hit" } else { "" }
                );
                (2, text)
            }
        };
        Ok(Outcome::new(code, text, j))
    }

    fn check_proof(&self, file: &FsPath) -> Result<Outcome> {
        let t = parse_proof(&read(file)?).map_err(|e| anyhow!("{}: {e}", file.display()))?;
        Ok(match check_proof(&t, self.profile) {
            Ok(()) => Outcome::new(
                0,
                format!("valid proof of {} ({} nodes)", t.conclusion, t.size()),
                json!({ "valid": true, "conclusion": t.conclusion.to_string(), "size": t.size() }),
            ),
            Err(e) => Outcome::new(
                1,
                format!("invalid: {e}"),
                json!({
                    "valid": false,
                    "conclusion": t.conclusion.to_string(),
                    "error": {
                        "location": e.location,
                        "rule": e.rule.name(),
                        "path": e.path.to_string(),
                        "conclusion": e.conclusion,
                        "reason": e.reason,
                    },
                }),
            ),
        })
    }

    fn countermodel(&self, text: &str) -> Result<Outcome> {
        let s = parse_sequent(text).map_err(|e| anyhow!("bad sequent `{text}`: {e}"))?;
        let cfg = self.config();
        Ok(match refute(&s, &cfg) {
            Some(cm) => Outcome::new(1, describe(&cm), json!({ "sequent": s.to_string(), "countermodel": cm })),
            None => Outcome::new(
                2,
                format!("no countermodel with at most {} states", cfg.countermodel_size),
                json!({ "sequent": s.to_string(), "countermodel": null }),
            ),
        })
    }

    fn corpus(&self, dir: &FsPath) -> Result<Outcome> {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .with_context(|| format!("reading {}", dir.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "seq"))
            .collect();
        files.sort();
        let cfg = self.config();
        let per_file: Vec<Result<Vec<Row>>> = files.par_iter().map(|f| corpus_file(f, &cfg)).collect();
        let rows: Vec<Row> = per_file.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
        let mut text = String::from("name\tverdict\ttime_ms\tproof_size\n");
        for r in &rows {
            let size = r.proof_size.map_or("-".to_string(), |n| n.to_string());
            let _ = writeln!(text, "{}\t{}\t{:.3}\t{size}", r.name, r.verdict, r.time_ms);
        }
        let json = rows
            .iter()
            .map(|r| json!({ "name": r.name, "verdict": r.verdict, "time_ms": r.time_ms, "proof_size": r.proof_size }))
            .collect();
        Ok(Outcome::new(0, text.trim_end(), Value::Array(json)))
    }

    fn check_simple(&self, file: &FsPath) -> Result<Outcome> {
        let d = SimpleDerivation::parse(&read(file)?).map_err(|e| anyhow!("{}: {e}", file.display()))?;
        let sys = match self.system {
            System::Srbl => SystemId::SRBL,
            System::Sstar => SystemId::SStarRBL,
        };
        Ok(match check_simple(&d, sys) {
            Ok(()) => Outcome::new(
                0,
                format!("valid derivation of {} ({} nodes)", d.conclusion, d.size()),
                json!({ "valid": true, "system": sys, "conclusion": d.conclusion.to_string() }),
            ),
            Err(e) => Outcome::new(
                1,
                format!("invalid: {e}"),
                json!({ "valid": false, "system": sys, "conclusion": d.conclusion.to_string(),
                        "error": { "location": e.path, "rule": e.rule, "reason": e.reason } }),
            ),
        })
    }
}

struct Row {
    name: String,
    verdict: &'static str,
    time_ms: f64,
    proof_size: Option<usize>,
}

/// One row per non-comment line, named `file:line`.
fn corpus_file(path: &FsPath, cfg: &SearchConfig) -> Result<Vec<Row>> {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let mut rows = Vec::new();
    for (i, line) in read(path)?.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let s = parse_sequent(line).map_err(|e| anyhow!("{}:{}: {e}", path.display(), i + 1))?;
        let start = Instant::now();
        let v = prove(&s, cfg);
        let time_ms = start.elapsed().as_secs_f64() * 1000.0;
        let proof_size = match &v {
            Verdict::Proved(t) => Some(t.size()),
            _ => None,
        };
        rows.push(Row { name: format!("{stem}:{}", i + 1), verdict: v.name(), time_ms, proof_size });
    }
    Ok(rows)
}

fn describe(cm: &Countermodel) -> String {
    let body = serde_json::to_string_pretty(cm).unwrap_or_default();
    match cm {
        Countermodel::Relational { model, state } => {
            format!("relational countermodel: {} states, fails at state {state}\n{body}", model.states)
        }
        Countermodel::Algebraic { algebra, .. } => {
            format!("algebraic countermodel: {}-element algebra\n{body}", algebra.size)
        }
    }
}

fn parse(text: &str) -> Result<Outcome> {
    if text.contains("|-") {
        let s = parse_sequent(text).map_err(|e| anyhow!("bad sequent: {e}"))?;
        let j = json!({ "kind": "sequent", "printed": s.to_string(), "mu": mu(&s.antecedent).to_string() });
        return Ok(Outcome::new(0, s.to_string(), j));
    }
    match parse_formula(text) {
        Ok(f) => {
            let j = json!({ "kind": "formula", "printed": f.to_string(), "depth": f.depth(), "size": f.size(), "bpl": f.is_bpl() });
            Ok(Outcome::new(0, f.to_string(), j))
        }
        Err(fe) => {
            let s = parse_structure(text).map_err(|_| anyhow!("bad formula: {fe}"))?;
            let j = json!({ "kind": "structure", "printed": s.to_string(), "mu": mu(&s).to_string() });
            Ok(Outcome::new(0, s.to_string(), j))
        }
    }
}

fn check_model(file: &FsPath, f: Option<&str>, world: Option<usize>) -> Result<Outcome> {
    let m: BplModel = read_json(file)?;
    let diags = check_bpl_model(&m);
    let mut j = json!({ "worlds": m.worlds, "valid": diags.is_empty(), "diagnostics": diags });
    if !diags.is_empty() {
        let lines: Vec<String> = diags.iter().map(|d| format!("{d:?}")).collect();
        return Ok(Outcome::new(1, format!("invalid model\n{}", lines.join("\n")), j));
    }
    let Some(f) = f else {
        return Ok(Outcome::new(0, format!("valid model with {} worlds", m.worlds), j));
    };
    let f = formula(f)?;
    let t = truth_set(&m, &f)?;
    let holds = match world {
        Some(w) if w >= m.worlds => bail!("world {w} is out of range ({} worlds)", m.worlds),
        Some(w) => t >> w & 1 == 1,
        None => t == (1u64 << m.worlds) - 1,
    };
    let worlds = mask_list(t, m.worlds);
    j["formula"] = json!(f.to_string());
    j["truth_set"] = json!(worlds);
    j["holds"] = json!(holds);
    Ok(Outcome::new(u8::from(!holds), format!("{f} holds at {worlds:?}"), j))
}

fn check_ternary(file: &FsPath, f: Option<&str>, state: Option<usize>) -> Result<Outcome> {
    let m: TernaryModel = read_json(file)?;
    let diags = m.diagnostics();
    let mut j = json!({ "states": m.states, "valid": diags.is_empty(), "diagnostics": diags });
    if !diags.is_empty() {
        return Ok(Outcome::new(1, format!("invalid model\n{}", diags.join("\n")), j));
    }
    let Some(f) = f else {
        return Ok(Outcome::new(0, format!("valid ternary model with {} states", m.states), j));
    };
    let f = formula(f)?;
    let t = m.truth_set(&f)?;
    let holds = match state {
        Some(s) if s >= m.states => bail!("state {s} is out of range ({} states)", m.states),
        Some(s) => t >> s & 1 == 1,
        None => t == (1u64 << m.states) - 1,
    };
    let states = mask_list(t, m.states);
    j["formula"] = json!(f.to_string());
    j["truth_set"] = json!(states);
    j["holds"] = json!(holds);
    Ok(Outcome::new(u8::from(!holds), format!("{f} holds at {states:?}"), j))
}

fn lift(file: &FsPath) -> Result<Outcome> {
    let m: BplModel = read_json(file)?;
    let diags = check_bpl_model(&m);
    if !diags.is_empty() {
        bail!("not a BPL model: {diags:?}");
    }
    let j = json!(lift_bpl(&m));
    Ok(Outcome::new(0, serde_json::to_string_pretty(&j)?, j))
}

fn enumerate(max: usize) -> Result<Outcome> {
    let algs = enumerate_rbas(max)?;
    let mut text = String::new();
    for n in 1..=max {
        let _ = writeln!(text, "size {n}: {}", algs.iter().filter(|a| a.size == n).count());
    }
    let _ = write!(text, "total: {}", algs.len());
    Ok(Outcome::new(0, text, json!(algs)))
}

fn validate_algebra(file: &FsPath) -> Result<Outcome> {
    let mut alg: FiniteRba = read_json(file)?;
    if alg.rimp.is_empty() || alg.limp.is_empty() {
        alg.recompute_residuals();
    }
    alg.validate_shape()?;
    let mut diags = check_rba_axioms(&alg);
    if diags.is_empty() {
        diags = check_basic_reduct(&alg);
    }
    let lines: Vec<String> = diags.iter().map(|d| format!("{} at {:?}", d.condition, d.witness)).collect();
    let text = if diags.is_empty() {
        format!("valid residuated basic algebra with {} elements", alg.size)
    } else {
        format!("invalid\n{}", lines.join("\n"))
    };
    let j = json!({ "size": alg.size, "valid": diags.is_empty(), "diagnostics": diags });
    Ok(Outcome::new(u8::from(!diags.is_empty()), text, j))
}

fn eliminate(file: &FsPath) -> Result<Outcome> {
    let t = parse_proof(&read(file)?).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    let out = eliminate_mix(&t).map_err(|e| match e {
        MixError::MalformedProof(c) => anyhow!("malformed proof: {c}"),
        other => anyhow!(other),
    })?;
    let j = json!({
        "conclusion": out.conclusion.to_string(),
        "size_before": t.size(),
        "size_after": out.size(),
        "proof": out.to_sexpr().to_string(),
    });
    Ok(Outcome::new(0, out.to_string(), j))
}

fn check_hilbert(file: &FsPath, goal: Option<&str>) -> Result<Outcome> {
    let p = parse_hilbert_proof(&read(file)?).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    let goal = match goal {
        Some(g) => formula(g)?,
        None => p.steps.last().map(|s| s.formula.clone()).ok_or_else(|| anyhow!("empty proof"))?,
    };
    Ok(match check_hilbert_proof(&p, &goal) {
        Ok(()) => Outcome::new(
            0,
            format!("valid proof of {goal} ({} steps)", p.steps.len()),
            json!({ "valid": true, "goal": goal.to_string(), "steps": p.steps.len() }),
        ),
        Err(e) => Outcome::new(
            1,
            format!("invalid: {e}"),
            json!({ "valid": false, "goal": goal.to_string(), "error": { "step": e.step, "reason": e.reason } }),
        ),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(3);
        }
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let outcome = match cli.run() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(3);
        }
    };
    let rendered = if cli.json {
        serde_json::to_string_pretty(&outcome.json).expect("json values serialize")
    } else {
        outcome.text
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered + "\n") {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => println!("{rendered}"),
    }
    ExitCode::from(outcome.code)
}
