use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

use swkb_core::catalog::*;
use swkb_core::swkb::*;

fn mi(base: MiBase, d1: &[usize], d2: &[usize], p: Params) -> SuperpotentialSpec {
    make_multi_indexed(base, &DeletionSet::new(d1.to_vec()), &DeletionSet::new(d2.to_vec()), &p).unwrap()
}

#[test]
fn conventional_families_are_exact() {
    let t0 = Instant::now();
    for fam in Conventional::ALL {
        let spec = make_conventional(fam, &fam.example_params()).unwrap();
        let top = spec.n_max().map_or(15, |m| m.min(15));
        for n in 0..=top {
            let r = swkb_integral(&spec, n).unwrap();
            assert!((r.i_over_pi_hbar - n as f64).abs() <= 1e-6, "{} n={n}: {}", fam.name(), r.i_over_pi_hbar);
            if let Some(c) = closed_form_integral(&spec, r.energy) {
                assert!((c / PI - n as f64).abs() <= 1e-12, "{} closed form n={n}", fam.name());
            }
        }
    }
    eprintln!("conventional exactness: {:?}", t0.elapsed());
}

#[test]
fn ground_level_is_exact_for_derived_families() {
    let specs = [
        make_krein_adler(KaBase::Hermite, 2, &Params::default()).unwrap(),
        mi(MiBase::Laguerre, &[], &[1], Params::default().with_g(3.0)),
        make_ces(2.0, 0.5, &Params::default()).unwrap(),
    ];
    for s in &specs {
        let r = swkb_integral(s, 0).unwrap();
        assert_eq!(r.integral, 0.0);
        assert_eq!(r.err, 0.0);
        assert_eq!(r.intervals.len(), 1);
        assert!(s.w(r.intervals[0].0).abs() < 1e-10);
    }
}

#[test]
fn exceptional_laguerre_table() {
    let rows: [(f64, usize, f64); 6] = [
        (3.0, 1, 0.997674),
        (3.0, 2, 1.99781),
        (3.0, 10, 9.99930),
        (10.0, 1, 0.999989),
        (10.0, 2, 1.99998),
        (100.0, 1, 1.00000),
    ];
    for (g, n, want) in rows {
        let s = mi(MiBase::Laguerre, &[], &[1], Params::default().with_g(g));
        let got = swkb_integral(&s, n).unwrap().i_over_pi_hbar;
        let rounded: f64 = format!("{:.5e}", got).parse().unwrap();
        assert!((rounded - want).abs() <= 1e-12 * want, "g={g} n={n}: {got}");
    }
}

#[test]
fn multi_indexed_laguerre_underestimates() {
    let lag = mi(MiBase::Laguerre, &[1], &[2], Params::default().with_g(5.0));
    for r in err_table(&lag, 1, 20).unwrap() {
        assert!(r.err < 0.0 && r.err.abs() <= 1e-3, "n={}: {}", r.n, r.err);
    }
}

#[test]
fn multi_indexed_values_match_high_precision_reference() {
    // Err(1) from a 30-digit computation of the same Wronskian construction
    // with a computer algebra system.
    let lag = mi(MiBase::Laguerre, &[1], &[2], Params::default().with_g(5.0));
    let jac = mi(MiBase::Jacobi, &[1], &[2], Params::default().with_g(5.0).with_h(6.0));
    let el = swkb_integral(&lag, 1).unwrap().err;
    let ej = swkb_integral(&jac, 1).unwrap().err;
    assert!((el - -9.709_940_351_766e-4).abs() < 1e-12, "{el}");
    assert!((ej - -1.385_427_436_104e-4).abs() < 1e-12, "{ej}");
    for r in err_table(&jac, 1, 20).unwrap() {
        assert!(r.err.abs() <= 1e-3, "n={}: {}", r.n, r.err);
    }
}

#[test]
fn multi_indexed_error_shrinks_with_g() {
    let e = |g: f64| {
        let s = mi(MiBase::Laguerre, &[], &[1], Params::default().with_g(g));
        swkb_integral(&s, 2).unwrap().err.abs()
    };
    assert!(e(3.0) > e(5.0) && e(5.0) > e(10.0));
}

#[test]
fn ces_reductions() {
    let p = Params::default();
    let trivial = make_ces(0.0, 0.0, &p).unwrap();
    let ces4 = make_ces(4.0, 0.0, &p).unwrap();
    let ka = make_krein_adler(KaBase::Hermite, 1, &p).unwrap();
    for n in 0..=5 {
        let i0 = swkb_integral(&trivial, n).unwrap().integral;
        assert!((i0 - n as f64 * PI).abs() <= 1e-6);
        let a = swkb_integral(&ces4, n).unwrap();
        let b = swkb_integral(&ka, n).unwrap();
        assert!((a.energy - b.energy).abs() < 1e-12);
        assert!((a.integral - b.integral).abs() <= 1e-6, "n={n}: {} vs {}", a.integral, b.integral);
    }
}

#[test]
fn pdem_extended_integral_is_exact() {
    let p = Params::default();
    for kind in [PdemKind::DeformedHo { alpha: 0.5 }, PdemKind::Semiconfined { a: 2.0 }] {
        let s = make_pdem(kind, &p).unwrap();
        for n in 0..=10 {
            let r = swkb_extended_integral(&s, n).unwrap();
            assert!((r.integral - n as f64 * PI).abs() <= 1e-6, "{kind:?} n={n}: {}", r.integral);
        }
    }
}

#[test]
fn unit_eta_reduces_to_plain_integral() {
    let s = make_pdem(PdemKind::DeformedHo { alpha: 0.5 }, &Params::default()).unwrap();
    let plain = s.without_eta();
    let trivial = SuperpotentialSpec::custom(
        "unit-mass",
        plain.domain(),
        1.0,
        {
            let q = plain.clone();
            Arc::new(move |x| q.w(x))
        },
        {
            let q = plain.clone();
            Arc::new(move |x| q.w_prime(x))
        },
        {
            let q = plain.clone();
            Arc::new(move |n| q.energy(n).unwrap())
        },
    )
    .with_eta(Arc::new(|_| 1.0));
    for n in 1..=4 {
        let a = swkb_integral(&plain, n).unwrap().integral;
        let b = swkb_extended_integral(&trivial, n).unwrap().integral;
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn hbar_factors_out() {
    let cases = [
        (Conventional::Harmonic, Params::default()),
        (Conventional::Radial, Params::default().with_g(3.0)),
        (Conventional::PoschlTeller, Params::default().with_g(2.0).with_h(3.0)),
    ];
    for (fam, p) in cases {
        let unit = make_conventional(fam, &p).unwrap();
        let scaled = make_conventional(fam, &p.clone().with_units(0.37, 2.5)).unwrap();
        for n in 1..=6 {
            let a = swkb_integral(&unit, n).unwrap().i_over_pi_hbar;
            let b = swkb_integral(&scaled, n).unwrap().i_over_pi_hbar;
            assert!((a - b).abs() <= 1e-12, "{} n={n}: {a} vs {b}", fam.name());
        }
    }
    let ka = make_krein_adler(KaBase::Hermite, 2, &Params::default()).unwrap();
    let ka_scaled = make_krein_adler(KaBase::Hermite, 2, &Params::default().with_units(0.37, 2.5)).unwrap();
    for n in 1..=4 {
        let a = swkb_integral(&ka, n).unwrap().i_over_pi_hbar;
        let b = swkb_integral(&ka_scaled, n).unwrap().i_over_pi_hbar;
        assert!((a - b).abs() <= 1e-12, "KA n={n}: {a} vs {b}");
    }
}

#[test]
fn coulomb_maps_onto_radial_oscillator() {
    // With x = z² the Coulomb integrand 2z√(ℰ − W_C(z²)²) equals the radial
    // oscillator integrand at ω = e²/(ħ(g+n)) with g doubled.
    let (e2, g) = (1.0, 2.0);
    let c = make_conventional(Conventional::Coulomb, &Params::default().with_g(g).with_e2(e2)).unwrap();
    for n in 1..=4 {
        let omega = e2 / (g + n as f64);
        let l = make_conventional(Conventional::Radial, &Params::default().with_g(2.0 * g).with_units(1.0, omega)).unwrap();
        let ec = c.energy(n).unwrap();
        let el = l.energy(n).unwrap();
        for k in 1..60 {
            let z = 0.1 * k as f64;
            let fc = 2.0 * z * (ec - c.w(z * z).powi(2)).max(0.0).sqrt();
            let fl = (el - l.w(z).powi(2)).max(0.0).sqrt();
            assert!((fc - fl).abs() <= 1e-10 * fl.max(1.0), "n={n} z={z}: {fc} vs {fl}");
        }
        let ic = swkb_integral(&c, n).unwrap().integral;
        let il = swkb_integral(&l, n).unwrap().integral;
        assert!((ic - il).abs() < 1e-8, "{ic} vs {il}");
    }
}

#[test]
fn quantized_energies_reproduce_spectra() {
    let h = make_conventional(Conventional::Harmonic, &Params::default()).unwrap();
    assert!((quantize_energy(&h, 5).unwrap() - 10.0).abs() < 1e-9);
    let l = make_conventional(Conventional::Radial, &Params::default().with_g(3.0)).unwrap();
    assert!((quantize_energy(&l, 2).unwrap() - 8.0).abs() < 1e-9);
    let pd = make_pdem(PdemKind::DeformedHo { alpha: 0.5 }, &Params::default()).unwrap();
    assert!((quantize_energy(&pd, 2).unwrap() - 6.0).abs() < 1e-8);
}
