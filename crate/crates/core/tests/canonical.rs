use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use qrdynamics::canonical::{canonicalize, conjugacy_residual, in_fundamental_domain, GeneralQuadComposition};
use qrdynamics::dynamics::{iterate_orbit, julia_bailout, Verdict};
use qrdynamics::stretch::StretchParams;
use qrdynamics::{CanonicalTriple64, Point};

fn composition() -> impl Strategy<Value = GeneralQuadComposition<f64>> {
    (0.4f64..2.5, -PI..PI, (-1.5f64..1.5, -1.5f64..1.5), (-1.5f64..1.5, -1.5f64..1.5), -1.2f64..1.2, -PI..PI).prop_map(
        |(am, aa, b, c, lm, phi)| {
            GeneralQuadComposition::new(
                Point::from_polar(am, aa),
                Point::new(b.0, b.1),
                Point::new(c.0, c.1),
                StretchParams::new(lm.exp(), phi).unwrap(),
            )
            .unwrap()
        },
    )
}

fn close(x: &CanonicalTriple64, y: &CanonicalTriple64, tol: f64) -> bool {
    (x.stretch.k() - y.stretch.k()).abs() <= tol
        && (x.stretch.theta() - y.stretch.theta()).abs() <= tol
        && (x.big_c - y.big_c).norm() <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn orbits_correspond(g in composition()) {
        let (triple, conj) = canonicalize(&g).unwrap();
        prop_assert!(in_fundamental_domain(triple.stretch.as_point()) || triple.stretch.k() == 1.0);
        let f = triple.map();
        let bailout = julia_bailout(&f);
        for n in 0..10 {
            let mut w = Point::from_polar(0.1 * n as f64, 0.7 * n as f64);
            let mut z = conj.to_original(w);
            for _ in 0..20 {
                w = f.evaluate(w);
                z = g.evaluate(z);
                if w.norm() > bailout {
                    break;
                }
                prop_assert!((conj.to_original(w) - z).norm() <= 1e-6 * z.norm().max(1.0));
            }
        }
    }

    #[test]
    fn escape_is_preserved(g in composition(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let (triple, conj) = canonicalize(&g).unwrap();
        let f = triple.map();
        let w = Point::new(re, im);
        let canonical = iterate_orbit(&f, w, 1000, julia_bailout(&f));
        // follow the original orbit through the conjugacy with a generous bailout
        let mut z = conj.to_original(w);
        let mut escaped = false;
        for _ in 0..=canonical.steps.min(1000) + 40 {
            let m = conj.to_canonical(z).norm();
            if m.is_nan() || m > 1e6 {
                escaped = true;
                break;
            }
            z = g.evaluate(z);
        }
        // long chaotic transients decorrelate the two floating-point orbits
        if canonical.verdict == Verdict::Escaped && canonical.steps <= 30 {
            prop_assert!(escaped);
        }
    }

    #[test]
    fn representative_is_unique(g in composition()) {
        let (triple, _) = canonicalize(&g).unwrap();

        let (again, conj) = canonicalize(&triple.as_composition()).unwrap();
        prop_assert!(close(&triple, &again, 1e-9));
        prop_assert!((conj.scale_a - Point::new(1.0, 0.0)).norm() <= 1e-12);

        let turned = GeneralQuadComposition::new(
            g.a, g.b, g.c, StretchParams::new(g.stretch.k(), g.stretch.theta() + PI).unwrap(),
        ).unwrap();
        prop_assert!(close(&triple, &canonicalize(&turned).unwrap().0, 1e-9));

        let m = g.stretch.k();
        let rescaled = GeneralQuadComposition::new(
            g.a.scale(m * m), g.b.scale(m), g.c,
            StretchParams::new(1.0 / m, g.stretch.theta() + FRAC_PI_2).unwrap(),
        ).unwrap();
        prop_assert!(close(&triple, &canonicalize(&rescaled).unwrap().0, 1e-9));
    }

    #[test]
    fn reported_residual_is_small(g in composition()) {
        let (triple, conj) = canonicalize(&g).unwrap();
        let seeds = [Point::new(0.0, 0.0), Point::new(0.1, 0.1), Point::new(-0.2, 0.05)];
        prop_assert!(conjugacy_residual(&g, &triple, &conj, &seeds, 10) < 1e-6);
    }
}

#[test]
fn degenerate_and_non_finite_inputs() {
    let s = StretchParams::new(0.8, 0.0).unwrap();
    let z = Point::new(0.0, 0.0);
    assert!(GeneralQuadComposition::new(z, z, z, s).is_err());
    assert!(GeneralQuadComposition::new(Point::new(1.0, 0.0), Point::new(f64::NAN, 0.0), z, s).is_err());
}
