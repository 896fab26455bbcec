use knotfield::field::KnottedFieldSpec;
use knotfield::linalg::{self, CVec3};
use knotfield::linkpoly::preset;
use knotfield::vortex::GridSpec;
use knotfield::Event;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const PRESETS: [&str; 6] = ["unknot-circle", "unknot-line", "trefoil", "hopf-link", "cable-2-3-3-2", "torus-3-4"];

fn spec(name: &str, eps: f64) -> KnottedFieldSpec {
    KnottedFieldSpec::new(preset(name).unwrap().0, eps).unwrap()
}

fn random_events(seed: u64, n: usize, half: f64) -> Vec<Event> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| Event::new(
            rng.gen_range(-half..half),
            rng.gen_range(-half..half),
            rng.gen_range(-half..half),
            rng.gen_range(-half..half),
        ))
        .collect()
}

#[test]
fn every_preset_is_null() {
    let events = random_events(21, 10_000, 5.0);
    for name in PRESETS {
        let sp = spec(name, 1.0);
        for e in &events {
            let n = sp.sample(e).nullness();
            assert!(n < 1e-10, "{name} {e}: {n}");
        }
    }
}

#[test]
fn energy_and_poynting_factorise() {
    let events = random_events(22, 10_000, 5.0);
    for name in PRESETS {
        let sp = spec(name, 1.0);
        for e in &events {
            assert!(sp.energy_ratio(e) < 1e-12, "{name} {e}");
            assert!(sp.poynting_alignment(e) < 1e-10, "{name} {e}");
        }
    }
}

#[test]
fn psi_gradient_matches_finite_differences() {
    let h = 1e-5;
    for name in PRESETS {
        let sp = spec(name, 0.8);
        for e in random_events(23, 500, 3.0) {
            let jet = sp.psi(&e);
            let scale = jet.d.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-12);
            for k in 0..4 {
                let fd = (sp.psi_value(&e.shifted(k, h)) - sp.psi_value(&e.shifted(k, -h))) / (2.0 * h);
                assert!((jet.d[k] - fd).norm() <= 1e-6 * scale, "{name} {e} k={k}");
            }
        }
    }
}

/// Finite-difference curl of `V` and the norm of its Jacobian.
fn curl_fd(sp: &KnottedFieldSpec, e: &Event, h: f64) -> (CVec3, f64) {
    let mut d = [[knotfield::Complex64::new(0.0, 0.0); 3]; 4];
    for k in 1..4 {
        let p = sp.vector_potential(&e.shifted(k, h)).v;
        let m = sp.vector_potential(&e.shifted(k, -h)).v;
        for c in 0..3 {
            d[k][c] = (p[c] - m[c]) / (2.0 * h);
        }
    }
    let scale = d.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    ([d[2][2] - d[3][1], d[3][0] - d[1][2], d[1][1] - d[2][0]], scale)
}

#[test]
fn vector_potential_curl_is_the_field() {
    for name in ["hopf-link", "trefoil", "cable-2-3-3-2"] {
        let sp = spec(name, 0.7);
        for e in random_events(24, 100, 2.0) {
            let f = sp.rs_vector(&e);
            let (c, scale) = curl_fd(&sp, &e, 1e-3);
            let rel = linalg::cnorm(linalg::csub(c, f)) / scale.max(1e-300);
            assert!(rel < 1e-4, "{name} {e}: {rel}");
        }
    }
}

#[test]
fn energy_density_decays_on_shells() {
    let sp = spec("hopf-link", 1.0);
    let grid = GridSpec::cube(10.0, 61).unwrap();
    let mut shell_max = vec![0.0f64; 11];
    let mut sup = 0.0f64;
    for i in 0..61 {
        for j in 0..61 {
            for k in 0..61 {
                let p = grid.node([i, j, k]);
                let u = sp.sample(&Event::at(0.0, p)).u;
                assert!(u.is_finite() && u >= 0.0);
                sup = sup.max(u);
                let r = linalg::norm(p);
                let s = r.floor() as usize;
                if s < shell_max.len() {
                    shell_max[s] = shell_max[s].max(u);
                }
            }
        }
    }
    assert!(sup.is_finite());
    for s in 5..10 {
        assert!(shell_max[s + 1] < shell_max[s], "shell {s}: {shell_max:?}");
    }
}
