mod common;

use common::cli::{check_scenario, corpus, run, SCENARIOS};
use ontolabel::{parse_spec, render_spec};

#[test]
fn golden_scenarios() {
    let failures: Vec<String> = SCENARIOS
        .iter()
        .filter_map(|s| check_scenario(s).err())
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn corpus_round_trips() {
    let mut parsed = 0;
    for path in corpus() {
        let src = std::fs::read_to_string(&path).unwrap();
        let Ok(c) = parse_spec(&src) else { continue };
        parsed += 1;
        let back = parse_spec(&render_spec(&c)).unwrap();
        assert_eq!(back, c, "{}", path.display());
    }
    assert!(parsed >= 7);
}

#[test]
fn clap_usage_errors_exit_two() {
    for args in [
        &["exchange", "--modes", "a,b"][..],
        &["frobnicate"],
        &["count", "--particles", "2"],
        &["exchange", "--modes", "a,b", "--symmetrize", "--pauli"],
    ] {
        assert_eq!(run(args).exit, 2, "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let r = run(&["--help"]);
    assert_eq!(r.exit, 0);
    assert!(r.stdout.contains("validate"));
}
