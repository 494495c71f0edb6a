use tiling123::periodic::*;

#[test]
fn pipeline_all_builtins() {
    for name in ["square", "triangle", "honeycomb"] {
        let spec = PeriodicGraphSpec::builtin(name).unwrap();
        let t0 = std::time::Instant::now();
        let sol = solve_periodic(&spec).unwrap();
        let (norm, _) = normalize_basis(&spec).unwrap();
        let fg = build_factor_graph(&norm, sol.n).unwrap();
        let rep =
            verify_periodic(&spec, &sol.labelling, 6, Some(&fg), Some(&sol.factor_sums)).unwrap();
        println!("{name}: N={} solved+verified in {:?}, checked {} vertices, conflicts {}, lift mismatches {}",
            sol.n, t0.elapsed(), rep.checked_vertices, rep.conflicts.len(), rep.lift_mismatches.len());
        assert!(rep.is_clean());
        assert!(rep.lift_mismatches.is_empty());
    }
}
