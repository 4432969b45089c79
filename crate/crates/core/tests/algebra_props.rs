use std::f64::consts::PI;

use fracdisc::{ElementKind, Family, GeneratingFunction, Polynomial, RationalFn};
use num_complex::Complex64;
use proptest::prelude::*;

const TS: f64 = 0.001;

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, 1..=max_len)
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn l1(c: &[f64]) -> f64 {
    c.iter().map(|v| v.abs()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_evaluates_as_product(a in coeffs(9), b in coeffs(9), seed in 0.0..1.0f64) {
        let (pa, pb) = (Polynomial::new(a.clone()).unwrap(), Polynomial::new(b.clone()).unwrap());
        let prod = &pa * &pb;
        let bound = 1e-10 * l1(&a) * l1(&b);
        for k in 0..100 {
            let z = unit(2.0 * PI * (seed + k as f64 / 100.0));
            let diff = prod.eval_complex(z) - pa.eval_complex(z) * pb.eval_complex(z);
            prop_assert!(diff.norm() <= bound);
        }
    }

    #[test]
    fn roots_rebuild_monic_polynomial(mut c in prop::collection::vec(-1.0..1.0f64, 1..=6)) {
        c.push(1.0);
        let p = Polynomial::new(c.clone()).unwrap();
        let roots = p.roots().unwrap();
        prop_assert_eq!(roots.len(), c.len() - 1);
        let (rebuilt, residue) = Polynomial::from_roots(&roots, 1.0);
        prop_assert!(residue < 1e-6);
        for (x, y) in rebuilt.coeffs().iter().zip(&c) {
            prop_assert!((x - y).abs() <= 1e-6 * y.abs().max(1.0), "{:?} vs {:?}", rebuilt.coeffs(), c);
        }
    }

    #[test]
    fn canonicalization_is_idempotent_and_value_preserving(
        num in coeffs(5),
        mut den in coeffs(5),
        seed in 0.0..1.0f64,
    ) {
        den[0] += if den[0] >= 0.0 { 0.5 } else { -0.5 };
        let raw = RationalFn::new(Polynomial::new(num).unwrap(), Polynomial::new(den).unwrap()).unwrap();
        let once = raw.canonicalize();
        prop_assert_eq!(once.canonicalize(), once.clone());
        for k in 0..20 {
            let z = unit(2.0 * PI * (seed + k as f64 / 20.0)) * 0.9;
            let d = raw.den().eval_complex(z);
            if d.norm() < 1e-3 {
                continue;
            }
            let (x, y) = (once.eval_complex(z), raw.eval_complex(z));
            prop_assert!((x - y).norm() <= 1e-12 * y.norm().max(1e-3));
        }
    }

    #[test]
    fn al_alaoui_is_affine_mix(alpha in 0.0..=1.0f64, frac in 1e-6..0.999f64) {
        let omega = frac * PI / TS;
        let at = |family, a| {
            GeneratingFunction::new(family, a, TS).unwrap().integrator_form().eval_unit_circle(omega, TS).unwrap()
        };
        let mix = at(Family::AlAlaoui, alpha);
        let want = at(Family::Euler, 0.0) * alpha + at(Family::Tustin, 0.0) * (1.0 - alpha);
        prop_assert!((mix - want).norm() <= 1e-10 * want.norm());
    }

    #[test]
    fn chen_vinagre_is_affine_mix(alpha in 0.0..=1.0f64, frac in 1e-6..0.99f64) {
        let omega = frac * PI / TS;
        let at = |family, a| {
            GeneratingFunction::new(family, a, TS).unwrap().integrator_form().eval_unit_circle(omega, TS).unwrap()
        };
        let mix = at(Family::ChenVinagre, alpha);
        let want = at(Family::Simpson, 0.0) * alpha + at(Family::Tustin, 0.0) * (1.0 - alpha);
        prop_assert!((mix - want).norm() <= 1e-10 * want.norm());
    }

    #[test]
    fn al_alaoui_zero_in_x(alpha in 0.0..0.999f64) {
        let r = GeneratingFunction::new(Family::AlAlaoui, alpha, TS).unwrap().integrator_form();
        let zero = -r.num().coeff(0) / r.num().coeff(1);
        let want = -(1.0 + alpha) / (1.0 - alpha);
        prop_assert!((zero - want).abs() <= 1e-12 * want.abs());
    }

    #[test]
    fn differentiator_is_reciprocal(family_ix in 0usize..5, alpha in 0.0..=1.0f64, frac in 1e-3..0.99f64) {
        let gf = GeneratingFunction::new(Family::ALL[family_ix], alpha, TS).unwrap();
        let omega = frac * PI / TS;
        let d = gf.form(ElementKind::Differentiator).eval_unit_circle(omega, TS).unwrap();
        let i = gf.form(ElementKind::Integrator).eval_unit_circle(omega, TS).unwrap();
        prop_assert!((d * i - 1.0).norm() < 1e-10);
    }
}
