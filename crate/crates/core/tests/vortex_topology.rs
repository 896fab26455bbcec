use knotfield::field::KnottedFieldSpec;
use knotfield::linkpoly::preset;
use knotfield::topology::{linking_number, phase_windings, topology_report, TopologyReport};
use knotfield::validate::epsilon_scan;
use knotfield::vortex::{extract_vortices, GridSpec, TraceParams, VortexSet};

fn extract(name: &str, eps: f64, t: f64, grid: &GridSpec) -> (KnottedFieldSpec, VortexSet, TopologyReport) {
    let sp = KnottedFieldSpec::new(preset(name).unwrap().0, eps).unwrap();
    let set = extract_vortices(&sp, grid, t, &TraceParams::default()).unwrap();
    let report = topology_report(&sp, &set);
    (sp, set, report)
}

#[test]
fn hopf_link_persists_in_time() {
    let (_, early_set, early) = extract("hopf-link", 1.0, 0.0, &GridSpec::cube(3.0, 81).unwrap());
    let (_, late_set, late) = extract("hopf-link", 1.0, 3.0, &GridSpec::cube(8.0, 81).unwrap());
    for (set, report) in [(&early_set, &early), (&late_set, &late)] {
        assert_eq!(set.curves.len(), 2);
        assert_eq!(set.closed_count(), 2);
        let l = report.linking[0][1].unwrap();
        assert!((l.abs() - 1.0).abs() < 0.01, "{l}");
        assert!(report.is_certified());
    }
    assert_eq!(early.signature(), late.signature());
}

#[test]
fn torus_windings_follow_newton_pairs() {
    let grid = GridSpec::cube(3.0, 81).unwrap();
    for (p, q) in [(1, 2), (2, 3), (3, 2), (2, 5), (3, 4), (3, 5), (4, 5), (5, 3)] {
        let name = format!("torus-{p}-{q}");
        let (_, set, report) = extract(&name, 1.0, 0.0, &grid);
        assert_eq!(set.closed_count(), 1, "{name}");
        let w = report.windings[0].as_ref().unwrap();
        assert_eq!(w.canonical(), (p, q), "{name}: {w:?}");
        assert!(w.alpha_raw.signum() == w.beta_raw.signum(), "{name}: {w:?}");
    }
}

#[test]
fn invariants_ignore_start_vertex_and_flip_with_orientation() {
    let (sp, set, _) = extract("hopf-link", 1.0, 0.0, &GridSpec::cube(3.0, 81).unwrap());
    let (a, b) = (&set.curves[0], &set.curves[1]);
    let l = linking_number(a, b).unwrap();
    let rotated = linking_number(&a.rotated(37), &b.rotated(101)).unwrap();
    assert!((l - rotated).abs() < 1e-9);
    assert!((l + linking_number(&a.reversed(), b).unwrap()).abs() < 1e-9);
    assert!((l - linking_number(&a.reversed(), &b.reversed()).unwrap()).abs() < 1e-9);

    let (tsp, tset, _) = extract("trefoil", 1.0, 0.0, &GridSpec::cube(3.0, 81).unwrap());
    let c = &tset.curves[0];
    let w = phase_windings(&tsp, c, 0.0).unwrap();
    let wr = phase_windings(&tsp, &c.rotated(211), 0.0).unwrap();
    let wv = phase_windings(&tsp, &c.reversed(), 0.0).unwrap();
    assert_eq!((w.alpha, w.beta), (wr.alpha, wr.beta));
    assert_eq!((w.alpha, w.beta), (-wv.alpha, -wv.beta));
    assert!(phase_windings(&sp, a, 0.0).unwrap().canonical() == (1, 1));
}

#[test]
fn topology_survives_resolution_doubling() {
    let grid = GridSpec::cube(3.0, 41).unwrap();
    for name in ["hopf-link", "trefoil"] {
        let (_, _, coarse) = extract(name, 1.0, 0.0, &grid);
        let (_, _, fine) = extract(name, 1.0, 0.0, &grid.refined());
        assert!(coarse.is_certified() && fine.is_certified());
        assert_eq!(coarse.signature(), fine.signature(), "{name}");
    }
}

#[test]
fn hopf_link_is_stable_across_epsilon() {
    let h = preset("hopf-link").unwrap().0;
    let scan = epsilon_scan(&h, &[1.0, 0.5], &GridSpec::cube(3.0, 81).unwrap(), 0.0, &TraceParams::default()).unwrap();
    assert_eq!(scan.rows.len(), 2);
    for row in &scan.rows {
        assert_eq!(row.report.component_count, 2);
        assert_eq!(row.report.linking_rounded()[0][1].map(i64::abs), Some(1));
    }
    assert_eq!(scan.stable_from, Some(1.0));
}

#[test]
fn open_vortex_lines_are_reported_not_linked() {
    let (_, set, report) = extract("unknot-line", 1.0, 0.0, &GridSpec::cube(2.0, 41).unwrap());
    assert_eq!(set.open_count(), 1);
    assert_eq!(report.open_count, 1);
    assert!(!report.warnings.is_empty());
    let c = &set.curves[0];
    for v in &c.vertices {
        assert!(v[0].abs() < 1e-6 && v[1].abs() < 1e-6);
    }
}

#[test]
fn empty_region_has_no_vortices() {
    let grid = GridSpec::new(
        knotfield::vortex::Bounds::new([3.0, 3.0, 3.0], [4.0, 4.0, 4.0]).unwrap(),
        [9, 9, 9],
    )
    .unwrap();
    let (_, set, report) = extract("hopf-link", 1.0, 0.0, &grid);
    assert!(set.curves.is_empty());
    assert_eq!(report.component_count, 0);
}
