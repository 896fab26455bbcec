use knotfield::field::KnottedFieldSpec;
use knotfield::linkpoly::preset;
use knotfield::validate::{helicity, maxwell_residuals, total_energy};
use knotfield::vortex::GridSpec;
use knotfield::Event;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn spec(name: &str) -> KnottedFieldSpec {
    KnottedFieldSpec::new(preset(name).unwrap().0, 1.0).unwrap()
}

#[test]
fn maxwell_residuals_are_second_order() {
    let mut rng = StdRng::seed_from_u64(31);
    let events: Vec<Event> = (0..200)
        .map(|_| Event::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
        .collect();
    let mut fields = vec![KnottedFieldSpec::hopf(1.0).unwrap()];
    for name in ["hopf-link", "trefoil", "cable-2-3-3-2", "unknot-line"] {
        fields.push(spec(name));
    }
    for sp in &fields {
        let a = maxwell_residuals(sp, &events, 1e-3).unwrap();
        assert!(a.max() < 1e-4, "{a:?}");
        let b = maxwell_residuals(sp, &events, 5e-4).unwrap();
        let ratio = a.max() / b.max();
        assert!((3.5..4.5).contains(&ratio), "{ratio}");
    }
}

#[test]
fn knotted_energy_is_bounded_by_hopf_energy() {
    let grid = GridSpec::cube(6.0, 48).unwrap();
    let hopf = total_energy(&KnottedFieldSpec::hopf(1.0).unwrap(), &grid, 0.0).value;
    // |psi| <= sum |c_jk| on the unit ball of C^2.
    for name in ["hopf-link", "trefoil", "cable-2-3-3-2"] {
        let sp = spec(name);
        let bound: f64 = sp.polynomial().terms().map(|(_, c)| c.norm()).sum();
        let e = total_energy(&sp, &grid, 0.0);
        assert!(e.value >= 0.0);
        assert!(e.value <= bound * bound * hopf, "{name}");
    }
}

#[test]
fn helicity_converges_under_refinement() {
    let sp = spec("hopf-link");
    let coarse = helicity(&sp, &GridSpec::cube(6.0, 60).unwrap(), 0.0);
    let fine = helicity(&sp, &GridSpec::cube(6.0, 120).unwrap(), 0.0);
    assert!(((coarse.magnetic - fine.magnetic) / fine.magnetic).abs() < 5e-3);
    assert!(((coarse.electric - fine.electric) / fine.electric).abs() < 5e-3);
}

#[test]
fn hopf_tail_decays_fast() {
    let q = total_energy(&KnottedFieldSpec::hopf(1.0).unwrap(), &GridSpec::cube(10.0, 40).unwrap(), 0.0);
    assert!(q.tail_trusted);
    assert!(q.decay_exponent > 7.0, "{}", q.decay_exponent);
    assert!(q.tail_estimate >= 0.0 && q.tail_estimate < 1e-2 * q.value);
}
