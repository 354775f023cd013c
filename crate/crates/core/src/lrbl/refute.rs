//! The refutation side of `prove`.
//!
//! A sequent `Γ ⇒ A` is refuted only by a structure in which `L_RBL` (with
//! the profile's extra rules) is sound:
//!
//! * lifted BPL models, when `μ(Γ) ⇒ A` has no `←`: the persistent sets of a
//!   lifted model form an RBA, and a cut-free proof of a `←`-free sequent
//!   never mentions `←`. Profiles `lj` and `top-imp` use reflexive frames,
//!   where `·` collapses to `∧` and `⊤→x = x`.
//! * finite RBAs, for any sequent, filtered by the profile's extra
//!   inequalities.
//!
//! Truth in a lifted model is computed at the level of worlds (both copies
//! of a world agree), and every witness is re-verified on the explicit
//! ternary model before it is returned.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Countermodel, Profile, SearchConfig};
use crate::algebra::{check_rba_axioms, enumerate_rbas, eval_in_algebra, sequent_counterexample, FiniteRba};
use crate::kripke::{transitive_relations, up_sets, BplModel};
use crate::syntax::{mu, Formula, Sequent};
use crate::ternary::{copy_of, lift_bpl, sequent_failures};

/// A countermodel for `s` within the bounds of `cfg`, if one exists.
pub fn refute(s: &Sequent, cfg: &SearchConfig) -> Option<Countermodel> {
    let lhs = mu(&s.antecedent);
    let rhs = &s.succedent;
    if !lhs.has_limp() && !rhs.has_limp() {
        if let Some(cm) = relational(&lhs, rhs, cfg) {
            return Some(cm);
        }
    }
    algebraic(&lhs, rhs, cfg)
}

/// Re-checks a witness against the sequent.
pub fn verify_countermodel(s: &Sequent, cm: &Countermodel) -> bool {
    match cm {
        Countermodel::Relational { model, state } => {
            let simple = s.to_simple();
            !simple.lhs.has_limp()
                && !simple.rhs.has_limp()
                && sequent_failures(model, &simple).is_ok_and(|m| *state < 64 && m >> state & 1 == 1)
        }
        Countermodel::Algebraic { algebra, assignment } => {
            if !check_rba_axioms(algebra).is_empty() {
                return false;
            }
            let l = eval_in_algebra(algebra, assignment, &mu(&s.antecedent));
            let r = eval_in_algebra(algebra, assignment, &s.succedent);
            matches!((l, r), (Ok(l), Ok(r)) if !algebra.le(l, r))
        }
    }
}

struct Frame {
    succ: Vec<u64>,
    pred: Vec<u64>,
    ups: Vec<u64>,
}

type FrameCache = Mutex<HashMap<(usize, bool), Arc<Vec<Frame>>>>;

fn frames(n: usize, reflexive: bool) -> Arc<Vec<Frame>> {
    static CACHE: OnceLock<FrameCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(n, reflexive)) {
        return f.clone();
    }
    let built: Vec<Frame> = transitive_relations(n)
        .into_iter()
        .filter(|succ| !reflexive || (0..n).all(|w| succ[w] >> w & 1 == 1))
        .map(|succ| {
            let pred =
                (0..n).map(|w| (0..n).filter(|&v| succ[v] >> w & 1 == 1).fold(0u64, |m, v| m | 1 << v)).collect();
            let ups = up_sets(n, &succ);
            Frame { succ, pred, ups }
        })
        .collect();
    let built = Arc::new(built);
    cache.lock().unwrap().insert((n, reflexive), built.clone());
    built
}

/// World-level truth in the lift of a BPL model.
fn lifted_truth(n: usize, fr: &Frame, atoms: &[&str], val: &[u64], f: &Formula) -> u64 {
    let all = (1u64 << n) - 1;
    let ev = |g: &Formula| lifted_truth(n, fr, atoms, val, g);
    let worlds = |keep: &dyn Fn(usize) -> bool| (0..n).filter(|&w| keep(w)).fold(0u64, |m, w| m | 1 << w);
    match f {
        Formula::Prop(p) => atoms.iter().position(|a| *a == &**p).map_or(0, |i| val[i]),
        Formula::Bot => 0,
        Formula::Top => all,
        Formula::And(a, b) => ev(a) & ev(b),
        Formula::Or(a, b) => ev(a) | ev(b),
        Formula::RImp(a, b) => {
            let ok = !ev(a) | ev(b);
            worlds(&|w| fr.succ[w] & !ok == 0)
        }
        Formula::Prod(a, b) => {
            let (ta, tb) = (ev(a), ev(b));
            worlds(&|w| ta >> w & 1 == 1 && fr.pred[w] & tb != 0)
        }
        Formula::LImp(a, b) => {
            let (ta, tb) = (ev(a), ev(b));
            worlds(&|w| ta >> w & 1 == 1 || fr.pred[w] & tb == 0)
        }
    }
}

fn relational(lhs: &Formula, rhs: &Formula, cfg: &SearchConfig) -> Option<Countermodel> {
    let mut atoms = lhs.atoms();
    atoms.extend(rhs.atoms());
    let atoms: Vec<&str> = atoms.iter().map(|a| &**a).collect();
    // keep the exhaustive scan affordable as the atom count grows
    let cap = match atoms.len() {
        0..=3 => 4,
        4..=5 => 3,
        _ => 2,
    };
    let max_worlds = (cfg.countermodel_size / 2).min(cap);
    let reflexive = cfg.profile != Profile::Core;
    for n in 1..=max_worlds {
        for fr in frames(n, reflexive).iter() {
            let k = fr.ups.len();
            let total = k.checked_pow(atoms.len() as u32)?;
            let mut val = vec![0u64; atoms.len()];
            for mut code in 0..total {
                for v in val.iter_mut() {
                    *v = fr.ups[code % k];
                    code /= k;
                }
                let bad = lifted_truth(n, fr, &atoms, &val, lhs) & !lifted_truth(n, fr, &atoms, &val, rhs);
                if bad != 0 {
                    let w = bad.trailing_zeros() as usize;
                    let mut m = BplModel::new(n);
                    for x in 0..n {
                        for y in 0..n {
                            if fr.succ[x] >> y & 1 == 1 {
                                m.rel.insert((x, y));
                            }
                        }
                    }
                    for (a, &mask) in atoms.iter().zip(&val) {
                        m.val.insert(a.to_string(), (0..n).filter(|&x| mask >> x & 1 == 1).collect());
                    }
                    let cm = Countermodel::Relational { model: lift_bpl(&m), state: copy_of(w, 1) };
                    let s = Sequent::new(lhs.clone().into(), rhs.clone());
                    if verify_countermodel(&s, &cm) {
                        return Some(cm);
                    }
                }
            }
        }
    }
    None
}

fn algebras(max: usize) -> Arc<Vec<FiniteRba>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<FiniteRba>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry(max).or_insert_with(|| Arc::new(enumerate_rbas(max).unwrap_or_default())).clone()
}

/// The extra inequalities that make the profile's rules sound.
fn fits_profile(alg: &FiniteRba, profile: Profile) -> bool {
    let xs = || alg.elements();
    match profile {
        Profile::Core => true,
        Profile::Lj => {
            xs().all(|x| alg.le(x, alg.prod[x][x]))
                && xs().all(|x| xs().all(|y| alg.prod[x][y] == alg.prod[y][x]))
                && xs().all(|x| {
                    xs().all(|y| xs().all(|z| alg.le(alg.prod[alg.prod[x][y]][z], alg.prod[x][alg.prod[y][z]])))
                })
        }
        Profile::TopImp => xs().all(|x| alg.le(alg.rimp[alg.top][x], x)),
    }
}

fn algebraic(lhs: &Formula, rhs: &Formula, cfg: &SearchConfig) -> Option<Countermodel> {
    let algs = algebras(cfg.algebra_size.min(5));
    for alg in algs.iter().filter(|a| fits_profile(a, cfg.profile)) {
        if let Some(assignment) = sequent_counterexample(alg, lhs, rhs) {
            return Some(Countermodel::Algebraic { algebra: alg.clone(), assignment });
        }
    }
    None
}
