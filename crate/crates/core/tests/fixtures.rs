use std::time::Instant;

use torusq::fixtures;

#[test]
fn every_fixture_with_expectations_passes() {
    for f in fixtures::all().iter().filter(|f| f.expected.is_some()) {
        let t = Instant::now();
        let (_, checks) = fixtures::check(f).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        eprintln!("{}: {:?}", f.name, t.elapsed());
        assert!(failed.is_empty(), "{}: {:#?}", f.name, failed);
    }
}
