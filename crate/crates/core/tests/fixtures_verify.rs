//! Every shipped figure fixture must build a clean patch graph, verify
//! conflict-free under its rule, and reproduce the figure's circled sums.

use tiling123::fixtures::{load_fixture, FIXTURE_NAMES};
use tiling123::rules::apply_rule;

#[test]
fn all_fixtures_verify_and_match_circled_sums() {
    for name in FIXTURE_NAMES {
        let fx = load_fixture(name).unwrap();
        let patch = fx.to_patch().unwrap_or_else(|e| panic!("{name}: {e}"));
        let labelled =
            apply_rule(fx.rule().unwrap(), &patch).unwrap_or_else(|e| panic!("{name}: {e}"));
        let report = labelled.verify().unwrap();
        assert!(
            report.is_clean(),
            "{name}: {} conflicts, first {:?}",
            report.conflicts.len(),
            report.conflicts.first()
        );
        let (checked, bad) = fx.check_expected_sums(&labelled);
        println!(
            "{name}: {} tiles, {} closed vertices, {}/{} circled sums checked",
            patch.tiles.len(),
            report.closed_vertices,
            checked,
            fx.expected_sums.len()
        );
        assert!(bad.is_empty(), "{name}: circled-sum mismatches {bad:?}");
    }
}
