use std::path::Path;

use sullivan::cohomology::CohomologyOptions;
use sullivan::corpus::{load_manifest, run_corpus, run_corpus_in, DEFAULT_DIR};
use sullivan::rank::{parse_extension, print_extension, verify_extension};
use sullivan::Execution;

#[test]
fn every_entry_passes() {
    let report = run_corpus("*").unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.entries.len(), load_manifest(Path::new(DEFAULT_DIR)).unwrap().len());
}

#[test]
fn reproducible_across_execution_modes() {
    let dir = Path::new(DEFAULT_DIR);
    let seq = CohomologyOptions { execution: Execution::Sequential, ..Default::default() };
    let a = run_corpus_in(dir, "*", &seq).unwrap();
    let b = run_corpus_in(dir, "*", &CohomologyOptions::default()).unwrap();
    let c = run_corpus_in(dir, "*", &CohomologyOptions::default()).unwrap();
    assert_eq!(a.canonical(), b.canonical());
    assert_eq!(b.canonical(), c.canonical());
}

#[test]
fn filters() {
    let r = run_corpus("M2").unwrap();
    assert_eq!(r.entries.len(), 1);
    assert_eq!(r.get("M2").unwrap().computed.get("total"), Some("6"));
    let r = run_corpus("ex3.5-n2").unwrap();
    assert_eq!(r.get("ex3.5-n2").unwrap().computed.get("gottlieb.total"), Some("2"));
    assert!(run_corpus("nonexistent").unwrap().entries.is_empty());
    assert_eq!(run_corpus("ex3.4-*").unwrap().entries.len(), 3);
}

#[test]
fn every_expectation_is_tagged() {
    for entry in load_manifest(Path::new(DEFAULT_DIR)).unwrap() {
        assert!(!entry.expectations.is_empty(), "{}", entry.name);
        for e in &entry.expectations {
            assert!(
                ["[PAPER", "[DERIVED", "[TRIVIAL"].iter().any(|t| e.provenance.starts_with(t)),
                "{}: {}",
                entry.name,
                e.key
            );
        }
    }
}

#[test]
fn certificates_round_trip() {
    for name in ["ex3.1", "ex3.2", "ex3.4-MN", "ex3.5-n2", "ex3.5-n3"] {
        let text = std::fs::read_to_string(format!("{DEFAULT_DIR}/{name}.ext")).unwrap();
        let spec = parse_extension(&text).unwrap();
        let again = parse_extension(&print_extension(&spec)).unwrap();
        assert_eq!(spec, again, "{name}");
        let cert = verify_extension(&spec);
        assert!(cert.is_valid(), "{name}: {:?}", cert.checks);
        assert!(cert.recheck().unwrap(), "{name}");
    }
}

#[test]
fn a_wrong_expectation_is_reported() {
    let dir = tempfile_dir();
    std::fs::copy(format!("{DEFAULT_DIR}/M2.model"), dir.join("M2.model")).unwrap();
    std::fs::write(
        dir.join("MANIFEST"),
        "entry M2\nmodel M2.model\nexpect total = 7 [TRIVIAL: deliberately wrong]\nend\n",
    )
    .unwrap();
    let report = run_corpus_in(&dir, "*", &CohomologyOptions::default()).unwrap();
    assert!(!report.passed());
    let m = &report.entries[0].mismatches[0];
    assert_eq!((m.expected.as_str(), m.computed.as_deref()), ("7", Some("6")));
    std::fs::remove_dir_all(dir).unwrap();
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("sullivan-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
