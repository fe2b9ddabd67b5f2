use asymptotika::{C64, Jet};
use proptest::prelude::*;

const ORDER: usize = 8;

fn jet() -> impl Strategy<Value = Jet> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), ORDER + 1)
        .prop_map(|v| Jet::new(C64::new(0.0, 0.0), v.into_iter().map(|(a, b)| C64::new(a, b)).collect()))
}

/// Jets with a constant term bounded away from zero.
fn unit() -> impl Strategy<Value = Jet> {
    (jet(), 0.5f64..2.0, 0.0f64..std::f64::consts::TAU).prop_map(|(j, r, ph)| {
        let mut c = j.coeffs().to_vec();
        c[0] = C64::from_polar(r, ph);
        Jet::new(j.anchor(), c)
    })
}

fn close(a: &Jet, b: &Jet, tol: f64) -> bool {
    let scale = 1.0 + a.max_norm().max(b.max_norm());
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).norm() <= tol * scale)
}

proptest! {
    #[test]
    fn ring_axioms(a in jet(), b in jet(), c in jet()) {
        prop_assert!(close(&(&a * &b), &(&b * &a), 1e-13));
        prop_assert!(close(&(&(&a * &b) * &c), &(&a * &(&b * &c)), 1e-12));
        prop_assert!(close(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), 1e-12));
        prop_assert!(close(&(&(&a + &b) - &b), &a, 1e-14));
    }

    #[test]
    fn division_inverts_multiplication(a in jet(), b in unit()) {
        let q = (&a * &b).div(&b).unwrap();
        prop_assert!(close(&q, &a, 1e-9));
    }

    #[test]
    fn exp_and_log_are_inverse(a in unit()) {
        let back = a.ln().unwrap().exp();
        prop_assert!(close(&back, &a, 1e-9));
    }

    #[test]
    fn sqrt_squares_back(a in unit()) {
        let r = a.sqrt().unwrap();
        prop_assert!(close(&(&r * &r), &a, 1e-9));
    }

    #[test]
    fn reversion_is_a_compositional_inverse(a in jet(), c1 in 0.5f64..2.0) {
        let mut c = a.coeffs().to_vec();
        c[1] = C64::new(c1, 0.0);
        let f = Jet::new(C64::new(0.3, 0.0), c);
        let g = f.reversion().unwrap();
        let id = f.compose(&g).unwrap();
        prop_assert!((id.coeff(0) - f.value()).norm() < 1e-12);
        prop_assert!((id.coeff(1) - C64::new(1.0, 0.0)).norm() < 1e-9);
        for k in 2..=ORDER {
            prop_assert!(id.coeff(k).norm() < 1e-7 * (1.0 + g.max_norm()), "k={}", k);
        }
    }

    #[test]
    fn derivative_of_integral(a in jet(), k in -1.0f64..1.0) {
        let back = a.integrate(C64::new(k, 0.0)).differentiate().unwrap();
        prop_assert!(close(&back, &a, 1e-14));
    }
}
