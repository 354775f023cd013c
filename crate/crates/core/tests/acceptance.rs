//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line on
//! stderr (outside the test harness capture) and then asserts.

mod common;

use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::*;
use rayon::prelude::*;
use rbl_core::algebra::*;
use rbl_core::hilbert::{axiom_instance, Subst};
use rbl_core::kripke::{bpl_valid_upto, BplVerdict};
use rbl_core::lrbl::*;
use rbl_core::simple_calc::check_simple;
use rbl_core::ternary::{check_srbl_soundness, check_truth_lemma};
use rbl_core::{parse_sequent, Formula};

fn report(criterion: u32, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {criterion}: {verdict} ({detail})");
    assert!(ok, "criterion {criterion}: {detail}");
}

#[test]
fn criterion_1_axioms() {
    let subst: Subst =
        [("A", "p"), ("B", "q"), ("C", "r")].iter().map(|(k, v)| (k.to_string(), Formula::prop(v))).collect();
    let start = Instant::now();
    let mut missing = Vec::new();
    for id in 1..=12 {
        let a = axiom_instance(id, &subst).unwrap();
        let v = prove(&top_seq(a), &SearchConfig::default());
        if !v.is_proved() {
            missing.push(format!("axiom {id}: {}", v.name()));
        }
    }
    let took = start.elapsed();
    let ok = missing.is_empty() && took < Duration::from_secs(5);
    report(1, ok, &format!("12 axioms, {took:.2?}, not proved: {missing:?}"));
}

#[test]
fn criterion_2_separation() {
    let start = Instant::now();
    let cfg = SearchConfig::default;
    let seq = |t: &str| parse_sequent(t).unwrap();
    let mut problems = Vec::new();

    if !prove(&seq("top |- p & (p -> q) -> (top -> q)"), &cfg()).is_proved() {
        problems.push("dagger not proved".to_string());
    }
    if !prove(&seq("top * (p & q) |- (top * p) * q"), &cfg()).is_proved() {
        problems.push("sharp not proved".to_string());
    }
    let ddag = seq("top |- p & (p -> q) -> q");
    match prove(&ddag, &cfg()) {
        Verdict::Refuted(cm) if cm.states() <= 4 && verify_countermodel(&ddag, &cm) => {}
        Verdict::Refuted(cm) => problems.push(format!("ddagger countermodel has {} states", cm.states())),
        v => problems.push(format!("ddagger {}", v.name())),
    }
    let mp = seq("p & (p -> q) |- q");
    for profile in [Profile::Lj, Profile::TopImp] {
        let v = prove(&mp, &SearchConfig::with_profile(profile));
        if !v.is_proved() {
            problems.push(format!("{} {}", profile.name(), v.name()));
        }
    }
    let took = start.elapsed();
    let ok = problems.is_empty() && took < Duration::from_secs(2);
    report(2, ok, &format!("{took:.2?}, problems: {problems:?}"));
}

#[test]
fn criterion_3_truth_lemma() {
    let models = small_models(3);
    let formulas = all_bpl_formulas();
    let failures: Vec<_> =
        models.par_iter().filter(|m| !check_truth_lemma(m, &formulas).unwrap()).map(|m| format!("{m:?}")).collect();
    let detail = format!("{} models, {} formulas, {} failing models", models.len(), formulas.len(), failures.len());
    report(3, failures.is_empty(), &detail);
}

#[test]
fn criterion_4_sstar_soundness() {
    let corpus = sstar_corpus();
    let mut problems = Vec::new();
    for (name, sys, d) in &corpus {
        if let Err(e) = check_simple(d, *sys) {
            problems.push(format!("{name}: {e}"));
        }
    }
    let conclusions: Vec<_> = corpus.iter().map(|(_, _, d)| d.conclusion.clone()).collect();
    let models = small_models(3);
    let unsound = models.par_iter().filter(|m| !check_srbl_soundness(m, &conclusions)).count();
    let ok = corpus.len() >= 30 && problems.is_empty() && unsound == 0;
    let detail = format!(
        "{} derivations, {} models, check errors {problems:?}, failing models {unsound}",
        corpus.len(),
        models.len()
    );
    report(4, ok, &detail);
}

#[test]
fn criterion_5_algebras() {
    let algs = enumerate_rbas(4).unwrap();
    let mut problems = Vec::new();
    for (i, alg) in algs.iter().enumerate() {
        if !check_basic_reduct(alg).is_empty() {
            problems.push(format!("algebra {i}: basic reduct"));
        }
        for clause in PropClause::ALL {
            if !check_prop_clause(alg, clause).is_empty() {
                problems.push(format!("algebra {i}: {clause:?}"));
            }
        }
    }
    let (caught, still_valid) = mutation_trial(7, 100);
    if caught + still_valid != 100 || caught < 95 {
        problems.push(format!("mutations caught {caught}, still valid {still_valid}"));
    }
    // frozen from the brute-force oracle over every product table
    let by_size = |n: usize| algs.iter().filter(|a| a.size == n).count();
    if (by_size(2), by_size(3)) != (2, 6) {
        problems.push(format!("counts {} and {} at sizes 2 and 3", by_size(2), by_size(3)));
    }
    if brute_force_rbas(&Lattice::chain(2)).len() != 2 || brute_force_rbas(&Lattice::chain(3)).len() != 6 {
        problems.push("brute-force counts moved".to_string());
    }
    let detail = format!("{} algebras, {caught}/100 mutations caught, problems {problems:?}", algs.len());
    report(5, problems.is_empty(), &detail);
}

#[test]
fn criterion_6_mix_elimination() {
    let corpus = mix_corpus();
    let mut problems = Vec::new();
    for (name, t) in &corpus {
        match eliminate_mix(t) {
            Ok(out) => {
                if out.conclusion != t.conclusion {
                    problems.push(format!("{name}: conclusion changed"));
                }
                if out.cut_formulas().iter().any(|a| !matches!(a, Formula::Top | Formula::Bot)) {
                    problems.push(format!("{name}: mix left over"));
                }
                if let Err(e) = check_proof(&out, Profile::Core) {
                    problems.push(format!("{name}: {e}"));
                }
            }
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    let ok = corpus.len() >= 20 && problems.is_empty();
    report(6, ok, &format!("{} proofs, problems {problems:?}", corpus.len()));
}

/// `prove(⊤ ⇒ A)` over the deduplicated BPL corpus, computed once.
fn corpus_verdicts() -> &'static [(Formula, Verdict)] {
    static CELL: OnceLock<Vec<(Formula, Verdict)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let cfg = SearchConfig::default();
        bpl_corpus()
            .into_par_iter()
            .map(|a| {
                let v = prove(&top_seq(a.clone()), &cfg);
                (a, v)
            })
            .collect()
    })
}

#[test]
fn criterion_7_disjunction_property() {
    let cfg = SearchConfig { depth_bound: 18, ..SearchConfig::default() };
    let disjunctions: Vec<_> = corpus_verdicts()
        .iter()
        .filter(|(_, v)| v.is_proved())
        .filter_map(|(a, _)| match a {
            Formula::Or(l, r) => Some(((**l).clone(), (**r).clone())),
            _ => None,
        })
        .collect();
    let failing: Vec<String> = disjunctions
        .par_iter()
        .filter(|(l, r)| disjunction_property_probe(l, r, &cfg).witness().is_none())
        .map(|(l, r)| Formula::or(l.clone(), r.clone()).to_string())
        .collect();
    let detail = format!("{} proved disjunctions, failing {failing:?}", disjunctions.len());
    report(7, failing.is_empty(), &detail);
}

#[test]
fn criterion_8_conservativity() {
    let verdicts = corpus_verdicts();
    let algs: Vec<_> = enumerate_rbas(3).unwrap();
    let rows: Vec<(bool, bool)> = verdicts
        .par_iter()
        .map(|(a, _)| {
            let bpl = matches!(bpl_valid_upto(a, 4).unwrap(), BplVerdict::ValidUpTo { .. });
            let alg = algs.iter().all(|x| algebra_valid(x, a));
            (bpl, alg)
        })
        .collect();
    let (mut proved, mut refuted, mut unknown) = (0, 0, 0);
    let mut conflicts = Vec::new();
    for ((a, v), &(bpl, alg)) in verdicts.iter().zip(&rows) {
        match v {
            Verdict::Proved(_) => {
                proved += 1;
                if !bpl || !alg {
                    conflicts.push(format!("{a}: proved, bpl {bpl}, algebra {alg}"));
                }
            }
            Verdict::Refuted(_) => {
                refuted += 1;
                if bpl && alg {
                    conflicts.push(format!("{a}: refuted but valid in both"));
                }
            }
            Verdict::Unknown(_) => unknown += 1,
        }
    }
    let n = verdicts.len();
    let ok = conflicts.is_empty() && unknown * 10 < n;
    let detail =
        format!("{n} formulas: {proved} proved, {refuted} refuted, {unknown} unknown; conflicts {conflicts:?}");
    report(8, ok, &detail);
}
