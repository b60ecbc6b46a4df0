use padic_eisenstein::exec::Executor;
use padic_eisenstein::verify::{parse_suites, run_suites, Suite};

#[test]
fn every_suite_passes_and_ignores_scheduling() {
    let suites = parse_suites("all").unwrap();
    assert_eq!(suites.len(), 6);
    let seq = run_suites(&suites, Executor::Sequential, 2024);
    for o in &seq {
        assert!(o.passed, "{o}");
    }
    let par = run_suites(&suites, Executor::Parallel, 2024);
    assert_eq!(seq, par);
}

#[test]
fn suite_names_parse() {
    assert_eq!(parse_suites("mahler").unwrap(), vec![Suite::Mahler]);
    assert!(parse_suites("bogus").is_err());
}
