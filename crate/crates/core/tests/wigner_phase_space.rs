use std::f64::consts::PI;

use proptest::prelude::*;
use swkb_core::piecewise::*;
use swkb_core::wigner::*;

fn state(pot: &PiecewiseQuadratic, n: usize) -> Eigenfunction {
    let sols = lowest_levels(pot, n + 1).unwrap();
    eigenfunction(pot, &sols[n]).unwrap()
}

fn oscillator(n: usize) -> Eigenfunction {
    state(&PiecewiseQuadratic::step(0.0).unwrap(), n)
}

fn laguerre(n: usize, t: f64) -> f64 {
    let (mut a, mut b) = (1.0, 1.0 - t);
    if n == 0 {
        return a;
    }
    for k in 1..n {
        let c = ((2 * k + 1) as f64 - t) * b / (k + 1) as f64 - k as f64 * a / (k + 1) as f64;
        a = b;
        b = c;
    }
    b
}

#[test]
fn oscillator_ground_state_on_grid() {
    let ef = oscillator(0);
    let grid = PhaseGrid::new(-4.0, 4.0, 41, 4.0, 41).unwrap();
    let map = wigner_grid(&ef, grid).unwrap();
    for (i, x) in grid.xs().iter().enumerate() {
        for (j, p) in grid.ps().iter().enumerate() {
            let exact = (-(p * p + x * x)).exp() / PI;
            assert!((map.values[i][j] - exact).abs() <= 1e-6, "({p}, {x})");
        }
    }
    assert!((map.normalization - 1.0).abs() <= 1e-3);
    assert!(map.minimum.0 >= -1e-12);
}

#[test]
fn oscillator_excited_states_match_laguerre_form() {
    for n in 1..=3 {
        let ef = oscillator(n);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert!((wigner_point(&ef, 0.0, 0.0).unwrap() - sign / PI).abs() <= 1e-8, "n={n}");
        for (p, x) in [(0.4f64, -1.1f64), (1.5, 0.3), (-0.8, 2.0)] {
            let r2 = p * p + x * x;
            let exact = sign / PI * (-r2).exp() * laguerre(n, 2.0 * r2);
            assert!((wigner_point(&ef, p, x).unwrap() - exact).abs() <= 1e-8, "n={n} ({p}, {x})");
        }
    }
}

#[test]
fn marginals_of_step_ground_state() {
    let ef = state(&PiecewiseQuadratic::step(4.0).unwrap(), 0);
    for x in [-1.5, -0.6, 0.0, 0.4, 1.2] {
        let m = position_marginal(&ef, x, 40.0).unwrap();
        let psi = ef.value(x);
        assert!((m - psi * psi).abs() <= 1e-4, "x={x}: {m} vs {}", psi * psi);
    }
    for p in [0.0, 0.7, 1.9] {
        let m = momentum_marginal(&ef, p).unwrap();
        let d = momentum_density(&ef, p).unwrap();
        assert!((m - d).abs() <= 1e-4, "p={p}: {m} vs {d}");
    }
}

#[test]
fn step_ground_state_is_negative_somewhere() {
    let ef = state(&PiecewiseQuadratic::step(4.0).unwrap(), 0);
    let grid = PhaseGrid::new(-3.0, 3.0, 61, 5.0, 51).unwrap();
    let map = wigner_grid(&ef, grid).unwrap();
    assert!(map.minimum.0 < -1e-4, "{:?}", map.minimum);
    assert!((map.normalization - 1.0).abs() <= 1e-3);
    // The oscillator ground state has no such dip.
    let ho = wigner_grid(&oscillator(0), grid).unwrap();
    assert!(ho.minimum.0 > -1e-12);
}

#[test]
fn deeper_step_localizes_left() {
    let right_mass = |ell: usize| {
        let ef = state(&PiecewiseQuadratic::step(4.0 * ell as f64).unwrap(), 0);
        let h = 1e-3;
        (0..12_000).map(|i| ef.value(i as f64 * h).powi(2) * h).sum::<f64>()
    };
    let masses: Vec<f64> = [1, 2, 5, 10].iter().map(|&l| right_mass(l)).collect();
    assert!(masses.windows(2).all(|w| w[1] < w[0]), "{masses:?}");
    assert!(masses[3] < 0.01, "{masses:?}");
    // The same trend in phase space: W at x > 0 shrinks.
    let w = |ell: usize| wigner_point(&state(&PiecewiseQuadratic::step(4.0 * ell as f64).unwrap(), 0), 0.0, 0.8).unwrap();
    assert!(w(10) < w(1));
}

#[test]
fn step_states_are_anisotropic() {
    let ho = anisotropy(&oscillator(0), &[0.5, 1.0, 2.0], 24).unwrap();
    let step = anisotropy(&state(&PiecewiseQuadratic::step(4.0).unwrap(), 0), &[0.5, 1.0, 2.0], 24).unwrap();
    assert!(ho < 1e-10);
    assert!(step > 1e-2);
}

#[test]
fn bad_grid_is_rejected() {
    assert!(PhaseGrid::new(1.0, -1.0, 10, 1.0, 10).is_err());
    assert!(PhaseGrid::new(-1.0, 1.0, 1, 1.0, 10).is_err());
    assert!(wigner_point(&oscillator(0), f64::NAN, 0.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn even_in_momentum(p in -4.0f64..4.0, x in -3.0f64..3.0) {
        let ef = state(&PiecewiseQuadratic::step_ramp(2.0, 1.0).unwrap(), 1);
        let a = wigner_point(&ef, p, x).unwrap();
        let b = wigner_point(&ef, -p, x).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn bounded_by_one_over_pi(p in -4.0f64..4.0, x in -3.0f64..3.0) {
        // |W| ≤ 1/π for any normalized state (Cauchy–Schwarz).
        let ef = state(&PiecewiseQuadratic::step(2.0).unwrap(), 2);
        prop_assert!(wigner_point(&ef, p, x).unwrap().abs() <= 1.0 / PI + 1e-9);
    }
}
