use proptest::prelude::*;
use swkb_core::piecewise::*;

fn six_digits(x: f64) -> String {
    format!("{:.5e}", x)
}

fn assert_table(pot: &PiecewiseQuadratic, table: &[f64]) -> Vec<EigenSolution> {
    let sols = lowest_levels(pot, table.len()).unwrap();
    for (s, &want) in sols.iter().zip(table) {
        if want == 0.0 {
            assert!(s.energy.abs() <= 1e-9, "{}", s.energy);
        } else {
            assert_eq!(six_digits(s.energy), six_digits(want), "{} vs {want}", s.energy);
        }
    }
    sols
}

fn assert_gaps(sols: &[EigenSolution]) {
    for w in sols.windows(2) {
        let gap = w[1].energy - w[0].energy;
        assert!(gap > 1.7 && gap < 2.3, "{gap}");
    }
}

fn assert_hygiene(pot: &PiecewiseQuadratic, sols: &[EigenSolution]) {
    let efs: Vec<Eigenfunction> = sols.iter().take(6).map(|s| eigenfunction(pot, s).unwrap()).collect();
    for (k, s) in sols.iter().enumerate() {
        assert_eq!(s.nodes, k, "E = {}", s.energy);
        assert!(s.residual <= 1e-9, "residual {} at E = {}", s.residual, s.energy);
    }
    for i in 0..efs.len() {
        for j in 0..efs.len() {
            let o = overlap(&efs[i], &efs[j]);
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((o - want).abs() <= 1e-6, "<{i}|{j}> = {o}");
        }
    }
}

#[test]
fn gamma_half_table() {
    let pot = PiecewiseQuadratic::gamma_modulated(1, 2).unwrap();
    let sols = assert_table(&pot, &[0.0, 1.96156, 4.02277, 6.0, 7.98757, 10.0101, 12.0]);
    for k in [0, 3, 6] {
        assert!(sols[k].exact);
        assert!((sols[k].energy - 2.0 * k as f64).abs() <= 1e-9);
    }
    assert_gaps(&sols);
    assert_hygiene(&pot, &sols);
}

#[test]
fn gamma_third_table() {
    let pot = PiecewiseQuadratic::gamma_modulated(1, 3).unwrap();
    let sols = assert_table(&pot, &[0.0, 1.92412, 4.0, 6.03248, 8.0, 9.97945, 12.0]);
    for k in [0, 2, 4, 6] {
        assert!(sols[k].exact);
        assert!((sols[k].energy - 2.0 * k as f64).abs() <= 1e-9);
    }
    assert_gaps(&sols);
    assert_hygiene(&pot, &sols);
}

#[test]
fn gamma_above_one_is_the_mirror() {
    let a = lowest_levels(&PiecewiseQuadratic::gamma_modulated(1, 2).unwrap(), 5).unwrap();
    let b = lowest_levels(&PiecewiseQuadratic::gamma_modulated(4, 2).unwrap(), 5).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.energy - y.energy).abs() < 1e-10);
    }
}

#[test]
fn gamma_hermite_rules() {
    // p + q odd: E = 2(p+q)k at n = (p+q)k.
    let half = hermite_states(&PiecewiseQuadratic::gamma_modulated(1, 2).unwrap(), 18.0).unwrap();
    let got: Vec<(usize, usize, usize)> = half.iter().map(|h| (h.n, h.left_order, h.right_order)).collect();
    assert_eq!(got, vec![(0, 0, 0), (3, 4, 2), (6, 8, 4), (9, 12, 6)]);
    // p + q even: E = (p+q)m at n = (p+q)m/2.
    let third = hermite_states(&PiecewiseQuadratic::gamma_modulated(1, 3).unwrap(), 12.0).unwrap();
    let ns: Vec<usize> = third.iter().map(|h| h.n).collect();
    assert_eq!(ns, vec![0, 2, 4, 6]);
    let k2 = &third[2];
    assert_eq!(k2.ratio_exact.as_ref().unwrap().to_string(), "1/60");
    assert!((k2.ratio - 1.0 / 60.0).abs() < 1e-14);
}

#[test]
fn gamma_half_third_level_has_three_nodes() {
    let pot = PiecewiseQuadratic::gamma_modulated(1, 2).unwrap();
    let sols = eigenvalues(&pot, 5.5, 6.5).unwrap();
    assert_eq!(sols.len(), 1);
    assert_eq!(node_count(&pot, &sols[0]).unwrap(), 3);
    assert!(matches!(sols[0].tag, StateTag::Hermite { left_order: 4, right_order: 2, .. }));
}

#[test]
fn step_two_table() {
    let pot = PiecewiseQuadratic::step(2.0).unwrap();
    let sols = assert_table(&pot, &[-1.30908, 1.09714, 2.93715, 5.04459, 6.96479, 9.02870, 10.9756]);
    assert_hygiene(&pot, &sols);
    // The ground state sits deep in the step; the gap above it is 2.406.
    assert_gaps(&sols[1..]);
}

#[test]
fn step_four_is_solvable() {
    let pot = PiecewiseQuadratic::step(4.0).unwrap();
    let sols = lowest_levels(&pot, 8).unwrap();
    assert!((sols[0].energy + 3.0).abs() <= 1e-10);
    for (n, s) in sols.iter().enumerate().skip(1) {
        assert!((s.energy - 2.0 * (n as f64 - 1.0)).abs() <= 1e-10);
        assert!(matches!(s.tag, StateTag::Hermite { .. }));
    }
    assert_hygiene(&pot, &sols);
    // 𝒩_n = −1/(2n) for odd n, −1/(2(n+1)) for even n.
    for h in hermite_states(&pot, 20.0).unwrap() {
        let n = h.n as i64;
        let d = if n % 2 == 1 { 2 * n } else { 2 * (n + 1) };
        assert_eq!(h.ratio_exact.unwrap().to_string(), format!("-1/{d}"));
    }
}

#[test]
fn step_ell_six_roots() {
    let roots = algebraic_eigenvalues(6).unwrap();
    let table = [-22.4357, -18.6885, -14.8995, -11.1005, -7.31152, -3.56427];
    for (r, t) in roots.iter().zip(table) {
        assert_eq!(six_digits(*r), six_digits(t));
    }
    for i in 0..6 {
        assert!((roots[i] + roots[5 - i] + 26.0).abs() <= 1e-9);
    }
    // The generic determinant finds the same levels.
    let pot = PiecewiseQuadratic::step(24.0).unwrap();
    let sols = lowest_levels(&pot, 8).unwrap();
    for (s, r) in sols.iter().zip(&roots) {
        assert!((s.energy - r).abs() <= 1e-9);
        assert!(spectral_determinant(&pot, *r).abs() <= 1e-9);
    }
    // The E = 0 state has ℓ nodes.
    assert_eq!(sols[6].energy, 0.0);
    assert_eq!(sols[6].nodes, 6);
    assert_hygiene(&pot, &sols);
}

#[test]
fn algebraic_polynomial_degree_two() {
    let p = algebraic_polynomial(2);
    // 2(E² + 10E + 22).
    assert_eq!(p.eval(0.0), 44.0);
    assert_eq!(p.eval(1.0), 66.0);
    assert_eq!(p.degree(), Some(2));
}

#[test]
fn step_ramp_table() {
    let pot = PiecewiseQuadratic::step_ramp(2.0, 1.0).unwrap();
    let sols = assert_table(&pot, &[-1.97196, 0.343665, 2.12101, 4.02740, 5.91817, 7.81348]);
    assert_hygiene(&pot, &sols);
}

#[test]
fn step_ramp_quasi_exact_states() {
    let g = 2f64.sqrt();
    let minus = PiecewiseQuadratic::step_ramp(1.5, -g).unwrap();
    let h = hermite_states(&minus, 10.0).unwrap();
    assert_eq!(h.len(), 1);
    assert_eq!((h[0].n, h[0].left_order, h[0].right_order), (1, 2, 1));
    assert!((h[0].energy - 2.0).abs() < 1e-12);
    // C¹ matching of the pieces fixes 𝒩₋/𝒩₊ = −e^{1/4}/(2√2).
    assert!((h[0].ratio + 0.25f64.exp() / (2.0 * g)).abs() < 1e-12);
    let sols = lowest_levels(&minus, 4).unwrap();
    assert!(matches!(sols[1].tag, StateTag::Hermite { left_order: 2, right_order: 1, .. }));
    assert_hygiene(&minus, &sols);

    let plus = PiecewiseQuadratic::step_ramp(1.5, g).unwrap();
    let h = hermite_states(&plus, 10.0).unwrap();
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].n, 2);
    assert!((h[0].energy - 2.0).abs() < 1e-12);
    let sols = lowest_levels(&plus, 4).unwrap();
    assert!(matches!(sols[2].tag, StateTag::Hermite { .. }));
    assert_hygiene(&plus, &sols);
}

#[test]
fn determinant_zeros() {
    let ho = PiecewiseQuadratic::step(0.0).unwrap();
    for n in 0..5 {
        assert!(spectral_determinant(&ho, 2.0 * n as f64).abs() < 1e-12);
    }
    assert!(spectral_determinant(&PiecewiseQuadratic::step(4.0).unwrap(), -3.0).abs() < 1e-12);
    assert!(spectral_determinant(&PiecewiseQuadratic::gamma_modulated(1, 2).unwrap(), 6.0).abs() < 1e-12);
}

#[test]
fn eigenfunction_matches_hermite_pieces() {
    // E = 0 for a = 4: ψ ∝ e^{−x²/2} on the right and −½ e^{−x²/2} H₂(x) on the left.
    let pot = PiecewiseQuadratic::step(4.0).unwrap();
    let sol = eigenvalues(&pot, -0.5, 0.5).unwrap().remove(0);
    let ef = eigenfunction(&pot, &sol).unwrap();
    let exact = |x: f64| if x < 0.0 { -0.5 * (4.0 * x * x - 2.0) } else { 1.0 } * (-x * x / 2.0).exp();
    let c = ef.value(0.7) / exact(0.7);
    for x in [-3.0, -1.2, -0.4, 0.0, 0.3, 1.5, 2.8] {
        assert!((ef.value(x) - c * exact(x)).abs() < 1e-9, "x = {x}");
    }
}

#[test]
fn rejects_bad_input() {
    assert!(PiecewiseQuadratic::gamma_modulated(0, 1).is_err());
    assert!(PiecewiseQuadratic::new(Quadratic::new(-1.0, 0.0, 0.0), Quadratic::new(1.0, 0.0, 0.0)).is_err());
    let pot = PiecewiseQuadratic::step(1.0).unwrap();
    assert!(eigenvalues(&pot, 3.0, 1.0).is_err());
    assert!(algebraic_eigenvalues(0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn step_levels_obey_oscillation_theorem(a in -3.0f64..8.0) {
        let pot = PiecewiseQuadratic::step(a).unwrap();
        let sols = lowest_levels(&pot, 6).unwrap();
        for (k, s) in sols.iter().enumerate() {
            prop_assert_eq!(s.nodes, k);
            prop_assert!(s.residual <= 1e-9);
        }
    }

    #[test]
    fn ramp_levels_obey_oscillation_theorem(a in 0.1f64..5.0, g in -2.0f64..2.0) {
        let pot = PiecewiseQuadratic::step_ramp(a, g).unwrap();
        let sols = lowest_levels(&pot, 5).unwrap();
        for (k, s) in sols.iter().enumerate() {
            prop_assert_eq!(s.nodes, k);
            prop_assert!(s.residual <= 1e-9);
        }
    }

    #[test]
    fn hermite_states_are_determinant_roots(p in 1u64..5, q in 1u64..5) {
        let pot = PiecewiseQuadratic::gamma_modulated(p, q).unwrap();
        for h in hermite_states(&pot, 16.0).unwrap() {
            prop_assert!(spectral_determinant(&pot, h.energy).abs() <= 1e-9);
            let found = eigenvalues(&pot, h.energy - 0.5, h.energy + 0.5).unwrap();
            prop_assert!(found.iter().any(|s| (s.energy - h.energy).abs() <= 1e-9));
        }
    }
}
