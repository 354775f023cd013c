//! Search output is deterministic: these proofs are regenerated and compared
//! byte for byte. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use rbl_core::lrbl::*;
use rbl_core::parse_sequent;

const CASES: [(&str, &str, Profile); 8] = [
    ("identity", "top |- p -> p", Profile::Core),
    ("axiom_one", "p |- p", Profile::Core),
    ("dagger", "top |- p & (p -> q) -> (top -> q)", Profile::Core),
    ("sharp", "top * (p & q) |- (top * p) * q", Profile::Core),
    ("modus_ponens", "p , (p -> q) |- q", Profile::Core),
    ("left_residual", "(q <- p) , p |- q", Profile::Core),
    ("exchange_lj", "p , q |- q * p", Profile::Lj),
    ("ddagger_top_imp", "p & (p -> q) |- q", Profile::TopImp),
];

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/proofs").join(format!("{name}.proof"))
}

#[test]
fn proofs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, text, profile) in CASES {
        let s = parse_sequent(text).unwrap();
        let cfg = SearchConfig::with_profile(profile);
        let Verdict::Proved(t) = prove(&s, &cfg) else { panic!("{name}: not proved") };
        let printed = format!("{t}\n");
        let path = golden(name);
        if update {
            std::fs::write(&path, &printed).unwrap();
            continue;
        }
        let stored = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(printed, stored, "{name}");
        let parsed = parse_proof(&stored).unwrap();
        assert_eq!(parsed, t);
        check_proof(&parsed, profile).unwrap();
    }
}
