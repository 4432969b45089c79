mod support;

use fracdisc::cfe::{convergent, series_fractional_power, PowerSeries};
use fracdisc::{realize, DoubleDouble, ElementKind, Family, GeneratingFunction, IIRFilter, RealizationSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::exact;

const TS: f64 = 0.001;

#[derive(Debug, Clone, Copy)]
struct Case {
    family: Family,
    alpha: f64,
    gamma: f64,
    kind: ElementKind,
    n: usize,
}

fn random_cases(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let family = Family::ALL[rng.gen_range(0..5)];
            let alpha = if family.is_interpolated() { rng.gen_range(0.0..1.0) } else { 0.0 };
            let kind = if rng.gen_bool(0.5) { ElementKind::Differentiator } else { ElementKind::Integrator };
            Case { family, alpha, gamma: rng.gen_range(0.05..0.95), kind, n: rng.gen_range(1..=4) }
        })
        .collect()
}

fn realize_case(c: &Case) -> IIRFilter {
    let gf = GeneratingFunction::new(c.family, c.alpha, TS).unwrap();
    realize(&RealizationSpec::new(c.gamma, c.kind, c.n, gf).unwrap()).unwrap()
}

#[test]
fn convergent_matches_exact_pade() {
    let mut failures = Vec::new();
    for c in random_cases(2024, 50) {
        let f = realize_case(&c);
        let (num, den) = exact::realize(c.family, c.alpha, c.gamma, c.kind, c.n, TS).expect("nonsingular");
        let checks = [
            exact::coeffs_close(f.tf().num().coeffs(), &num, 1e-6),
            exact::coeffs_close(f.tf().den().coeffs(), &den, 1e-6),
        ];
        for r in checks {
            if let Err(e) = r {
                failures.push(format!("{c:?}: {e}"));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn taylor_series_matches_through_order_2n() {
    for c in random_cases(77, 30) {
        let f = realize_case(&c);
        let len = 2 * c.n + 1;
        let got = f.tf().series(len).unwrap();
        let want = exact::unit_series(c.family, c.alpha, c.gamma, c.kind, len, TS);
        let got: Vec<f64> = got.iter().map(|v| v / got[0]).collect();
        let scale = want.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (k, (a, b)) in got.iter().zip(&want).enumerate() {
            assert!((a - b).abs() <= 1e-7 * b.abs().max(scale * 1e-6), "{c:?} term {k}: {a} vs {b}");
        }
    }
}

#[test]
fn prefactor_placement_does_not_matter() {
    type W = DoubleDouble;
    for c in random_cases(5, 30) {
        let gf = fracdisc::genfunc::GeneratingFunction::<W>::new(c.family, W::from(c.alpha), W::from(TS)).unwrap();
        let r = gf.form(c.kind);
        let (k, gamma) = (2 * c.n + 4, W::from(c.gamma));
        let folded = convergent(&series_fractional_power(&r, gamma, k).unwrap(), c.n).unwrap();
        let g0 = r.num().coeff(0) / r.den().coeff(0);
        let unit = series_fractional_power(&r.scale(&(W::from(1.0) / g0)), gamma, k).unwrap();
        let gain = W::from(f64::from(g0).powf(c.gamma));
        let split = convergent(&unit, c.n).unwrap().scale(&gain).canonicalize().to_f64();
        let folded = folded.canonicalize().to_f64();
        exact::coeffs_close(split.num().coeffs(), folded.num().coeffs(), 1e-12).unwrap();
        exact::coeffs_close(split.den().coeffs(), folded.den().coeffs(), 1e-12).unwrap();
    }
}

#[test]
fn reciprocal_symmetry() {
    for c in random_cases(13, 30) {
        let direct = realize_case(&c);
        let other = realize_case(&Case { kind: c.kind.flipped(), ..c });
        let inverted = other.tf().reciprocal().unwrap();
        exact::coeffs_close(inverted.num().coeffs(), direct.tf().num().coeffs(), 1e-7)
            .unwrap_or_else(|e| panic!("{c:?}: {e}"));
        exact::coeffs_close(inverted.den().coeffs(), direct.tf().den().coeffs(), 1e-7)
            .unwrap_or_else(|e| panic!("{c:?}: {e}"));
    }
}

#[test]
fn unit_power_reproduces_generating_function() {
    for family in Family::ALL {
        for alpha in [0.0, 0.3, 0.75, 1.0] {
            for kind in [ElementKind::Differentiator, ElementKind::Integrator] {
                for n in family.degree()..=5 {
                    let gf = GeneratingFunction::new(family, alpha, TS).unwrap();
                    let want = gf.form(kind);
                    let f = realize(&RealizationSpec::new(1.0, kind, n, gf).unwrap()).unwrap();
                    let tag = format!("{family} alpha={alpha} {kind} n={n}");
                    exact::coeffs_close(f.tf().num().coeffs(), want.num().coeffs(), 1e-9)
                        .unwrap_or_else(|e| panic!("{tag}: {e}"));
                    exact::coeffs_close(f.tf().den().coeffs(), want.den().coeffs(), 1e-9)
                        .unwrap_or_else(|e| panic!("{tag}: {e}"));
                }
            }
        }
    }
}

#[test]
fn degrees_never_exceed_order() {
    for c in random_cases(99, 40) {
        let f = realize_case(&c);
        assert!(f.num_degree() <= c.n && f.den_degree() <= c.n, "{c:?}");
    }
}

#[test]
fn generic_path_runs_in_f32_and_f64() {
    let gf = GeneratingFunction::new(Family::AlAlaoui, 0.75, TS).unwrap();
    let spec = RealizationSpec::new(0.5, ElementKind::Differentiator, 3, gf).unwrap();
    let f64_filter = realize(&spec).unwrap();
    let gf32 = fracdisc::genfunc::GeneratingFunction::<f32>::new(Family::AlAlaoui, 0.75, 0.001).unwrap();
    let spec32 = fracdisc::cfe::RealizationSpec::new(0.5f32, ElementKind::Differentiator, 3, gf32).unwrap();
    let f32_filter = realize(&spec32).unwrap();
    let wide: Vec<f64> = f32_filter.tf().num().coeffs().iter().map(|&c| c as f64).collect();
    exact::coeffs_close(&wide, f64_filter.tf().num().coeffs(), 1e-6).unwrap();
}

#[test]
fn cf_and_toeplitz_paths_agree_on_a_known_series() {
    // (1 - x)^{1/2}
    let s = PowerSeries::new(vec![1.0, -0.5, -0.125, -0.0625, -0.0390625, -0.02734375, -0.0205078125]).unwrap();
    let via_cf = convergent(&s, 3).unwrap();
    let via_solve = fracdisc::cfe::pade_solve(&s, 3).unwrap().canonicalize();
    exact::coeffs_close(via_cf.num().coeffs(), via_solve.num().coeffs(), 1e-12).unwrap();
    exact::coeffs_close(via_cf.den().coeffs(), via_solve.den().coeffs(), 1e-12).unwrap();
}

#[test]
fn exact_working_precision_agrees_with_oracle() {
    for c in random_cases(31, 8) {
        let gf = GeneratingFunction::new(c.family, c.alpha, TS).unwrap();
        let spec = RealizationSpec::new(c.gamma, c.kind, c.n, gf).unwrap();
        let f = fracdisc::realize_in::<f64, num_rational::BigRational>(&spec).unwrap();
        let (num, den) = exact::realize(c.family, c.alpha, c.gamma, c.kind, c.n, TS).unwrap();
        exact::coeffs_close(f.tf().num().coeffs(), &num, 1e-12).unwrap_or_else(|e| panic!("{c:?}: {e}"));
        exact::coeffs_close(f.tf().den().coeffs(), &den, 1e-12).unwrap_or_else(|e| panic!("{c:?}: {e}"));
    }
}
