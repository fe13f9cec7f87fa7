use swkb_core::error::Error;
use swkb_core::isospectral::*;
use swkb_core::piecewise::{PiecewiseQuadratic, Side};

fn step_set(a: f64, count: usize) -> StateSet {
    StateSet::solve(&PiecewiseQuadratic::step(a).unwrap(), count).unwrap()
}

fn grid(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect()
}

#[test]
fn single_state_wronskian_is_the_state() {
    let set = step_set(4.0, 3);
    for x in [-2.0, -0.3, 0.5, 1.9] {
        let w = wronskian_eval(&set, &[0], x).unwrap();
        let direct = wronskian_jet(&set, &[0], x, Side::Right, 0).unwrap().value();
        assert_eq!(w.value, direct);
    }
}

#[test]
fn oscillator_ground_state_log_curvature() {
    let set = step_set(0.0, 2);
    for x in [-3.0, -1.0, 0.0, 0.4, 2.5] {
        let w = wronskian_eval(&set, &[0], x).unwrap();
        assert!((w.d2log + 1.0).abs() < 1e-10, "{x}: {}", w.d2log);
    }
}

#[test]
fn oscillator_partner_is_shifted_oscillator() {
    let d = darboux_crum(step_set(0.0, 4), 1).unwrap();
    for x in [-4.0, -1.5, 0.0, 0.8, 3.0] {
        assert!((d.potential(x).unwrap() - (x * x + 1.0)).abs() < 1e-9);
    }
    assert_eq!(d.energies().len(), 3);
}

#[test]
fn empty_deletion_is_identity() {
    let set = step_set(2.0, 4);
    let e = set.energies();
    let pot = set.potential;
    let d = darboux_crum(set, 0).unwrap();
    assert_eq!(d.energies(), e);
    for x in [-2.0, 0.5] {
        assert_eq!(d.potential(x).unwrap(), pot.potential(x));
    }
    let k = krein_adler(step_set(2.0, 4), &[]).unwrap();
    assert_eq!(k.retained(), &[0, 1, 2, 3]);
}

#[test]
fn pair_deletion_from_ground_matches_crum() {
    let a = krein_adler(step_set(4.0, 6), &[0, 1]).unwrap();
    let b = darboux_crum(step_set(4.0, 6), 2).unwrap();
    for x in [-3.0, -0.7, 0.2, 2.2] {
        assert_eq!(a.potential(x).unwrap(), b.potential(x).unwrap());
    }
}

#[test]
fn partner_of_step_one() {
    // ℓ = 1, one state deleted: the partner carries the levels above E₀ = −3.
    let d = darboux_crum(step_set(4.0, 7), 1).unwrap();
    let want = [0.0, 2.0, 4.0, 6.0, 8.0];
    assert_eq!(&d.energies()[..5], &want);
    let got = d.resolve_spectrum(5).unwrap();
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= 1e-5, "{g} vs {w}");
    }
}

#[test]
fn iso_sequence_is_isospectral_to_the_oscillator() {
    for ell in 1..=3 {
        let d = iso_sequence(ell, 6).unwrap();
        let got = d.resolve_spectrum(5).unwrap();
        for (n, g) in got.iter().enumerate() {
            assert!((g - 2.0 * n as f64).abs() <= 1e-5, "ℓ={ell} n={n}: {g}");
        }
    }
}

#[test]
fn iso_sequence_far_field() {
    // W ~ e^{−ℓx²/2} x^P gives V → x² − 1 + 2ℓ − 3ℓ²/x² on the right and
    // x² − 1 − 2ℓ + ℓ²/x² on the left, with O(x⁻⁴) corrections.
    for ell in 1..=3 {
        let d = iso_sequence(ell, 1).unwrap();
        let l = ell as f64;
        let asym = |x: f64| if x < 0.0 { x * x - 1.0 - 2.0 * l + l * l / (x * x) } else { x * x - 1.0 + 2.0 * l - 3.0 * l * l / (x * x) };
        for x in [-8.0, 8.0] {
            let far = (d.potential(x).unwrap() - asym(x)).abs();
            let near = (d.potential(x / 2.0).unwrap() - asym(x / 2.0)).abs();
            assert!(far < 0.1, "ℓ={ell} x={x}: {far}");
            assert!(far < near / 4.0, "ℓ={ell} x={x}: {far} vs {near}");
        }
    }
}

#[test]
fn iso_sequence_jump_only_at_origin() {
    for ell in 1..=3 {
        let d = iso_sequence(ell, 1).unwrap();
        for x in grid(-6.0, 6.0, 1200) {
            let (a, b) = (d.potential(x - 1e-7).unwrap(), d.potential(x + 1e-7).unwrap());
            assert!((a - b).abs() < 1e-4, "ℓ={ell} near {x}: {a} {b}");
        }
        let jump = d.potential_sided(0.0, Side::Left).unwrap() - d.potential_sided(0.0, Side::Right).unwrap();
        assert!(jump.is_finite());
        // The jump of the undeformed step survives with alternating sign.
        let want = if ell % 2 == 1 { 4.0 * ell as f64 } else { -4.0 * ell as f64 };
        assert!((jump - want).abs() < 1e-6, "ℓ={ell}: {jump}");
    }
}

#[test]
fn krein_adler_pair_on_step_one() {
    let set = step_set(4.0, 8);
    let (lo, hi) = set.resolved_range();
    // The pair Wronskian keeps one sign on the whole resolved line.
    let s0 = wronskian_eval(&set, &[1, 2], 0.0).unwrap().value.signum();
    for x in grid(lo, hi, 3001) {
        assert_eq!(wronskian_eval(&set, &[1, 2], x).unwrap().value.signum(), s0);
    }
    let d = krein_adler(set, &[1, 2]).unwrap();
    assert_eq!(d.retained(), &[0, 3, 4, 5, 6, 7]);
    let got = d.resolve_spectrum(5).unwrap();
    for (g, w) in got.iter().zip([-3.0, 4.0, 6.0, 8.0, 10.0]) {
        assert!((g - w).abs() <= 1e-5, "{g} vs {w}");
    }
}

#[test]
fn deformed_states_solve_the_deformed_equation() {
    let d = krein_adler(step_set(4.0, 8), &[1, 2]).unwrap();
    for &n in d.retained() {
        for x in [-4.0, -1.3, -0.2, 0.05, 0.9, 3.5] {
            let r = d.ode_residual(n, x).unwrap();
            assert!(r <= 1e-5, "n={n} x={x}: {r}");
        }
    }
}

#[test]
fn deformed_states_are_orthonormal() {
    let d = iso_sequence(2, 5).unwrap();
    let (lo, hi) = d.resolved_range();
    let samples: Vec<Vec<(f64, f64)>> = d.retained().iter().map(|&n| d.normalized_state(n, lo, hi, 8001).unwrap()).collect();
    let h = (hi - lo) / 8000.0;
    for i in 0..samples.len() {
        for j in 0..samples.len() {
            let prod: Vec<f64> = samples[i].iter().zip(&samples[j]).map(|(a, b)| a.1 * b.1).collect();
            let mut s = prod[0] + prod[8000];
            for (k, v) in prod.iter().enumerate().take(8000).skip(1) {
                s += if k % 2 == 1 { 4.0 } else { 2.0 } * v;
            }
            let o = s * h / 3.0;
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((o - want).abs() <= 1e-5, "<{i}|{j}> = {o}");
        }
    }
}

#[test]
fn nested_wronskian_identity() {
    // W[W[f, g], W[f, h]] = W[f] W[f, g, h].
    let set = step_set(4.0, 5);
    for (f, g, h) in [(0, 1, 2), (1, 3, 4), (0, 2, 4)] {
        for x in [-1.7, -0.4, 0.3, 1.1] {
            let a = wronskian_jet(&set, &[f, g], x, Side::Right, 1).unwrap();
            let b = wronskian_jet(&set, &[f, h], x, Side::Right, 1).unwrap();
            let lhs = a.value() * b.derivative(1) - a.derivative(1) * b.value();
            let rhs = wronskian_jet(&set, &[f], x, Side::Right, 0).unwrap().value() * wronskian_jet(&set, &[f, g, h], x, Side::Right, 0).unwrap().value();
            assert!((lhs - rhs).abs() <= 1e-6 * rhs.abs().max(lhs.abs()), "{f}{g}{h} at {x}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn inadmissible_sets_are_rejected() {
    assert!(matches!(krein_adler(step_set(4.0, 5), &[1]), Err(Error::Inadmissible(_))));
    assert!(matches!(krein_adler(step_set(4.0, 5), &[1, 3]), Err(Error::Inadmissible(_))));
    assert!(matches!(darboux_crum(step_set(4.0, 3), 5), Err(Error::LevelOutOfRange { .. })));
    assert!(iso_sequence(0, 3).is_err());
}
