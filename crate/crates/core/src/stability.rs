//! Pole/zero analysis, inversion, and unstable-pole reflection.
//!
//! Transfer functions are stored in `x = z^-1`; a root `x0` of a polynomial
//! in `x` is the z-plane point `1/x0`, and degree differences between
//! numerator and denominator show up as poles or zeros at `z = 0`.

use num_complex::Complex64;

use crate::cfe::IIRFilter;
use crate::poly::{PolyError, Polynomial, RationalFn};

/// Distance from the unit circle treated as "on" the circle.
pub const UNIT_CIRCLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Stable,
    MarginallyStable,
    Unstable,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Stable => "stable",
            Classification::MarginallyStable => "marginally_stable",
            Classification::Unstable => "unstable",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub poles: Vec<Complex64>,
    pub zeros: Vec<Complex64>,
    pub classification: Classification,
    /// No zero outside the closed unit disc.
    pub min_phase: bool,
}

fn classify(poles: &[Complex64]) -> Classification {
    let radius = poles.iter().map(|p| p.norm()).fold(0.0, f64::max);
    if radius > 1.0 + UNIT_CIRCLE_TOL {
        Classification::Unstable
    } else if radius >= 1.0 - UNIT_CIRCLE_TOL {
        Classification::MarginallyStable
    } else {
        Classification::Stable
    }
}

/// Splits `p(x) = x^m q(x)` with `q(0) != 0`, returning `(m, q)`.
fn strip_delay(p: &Polynomial<f64>) -> (usize, Polynomial<f64>) {
    let m = p.coeffs().iter().take_while(|c| **c == 0.0).count().min(p.degree());
    (m, Polynomial::new(p.coeffs()[m..].to_vec()).expect("nonempty"))
}

fn z_roots(p: &Polynomial<f64>) -> Result<Vec<Complex64>, PolyError> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    Ok(p.roots()?.into_iter().map(|r| 1.0 / r).collect())
}

/// z-plane poles and zeros, with classification.
pub fn analyze(f: &IIRFilter<f64>) -> Result<StabilityReport, PolyError> {
    let tf = f.tf();
    let (num_delay, num) = strip_delay(tf.num());
    let (den_delay, den) = strip_delay(tf.den());
    // H(z) = z^{-num_delay} N(z^-1) / (z^{-den_delay} D(z^-1)); multiplying
    // through by z^order leaves polynomials in z of equal degree `order`.
    let num_span = num_delay + num.degree();
    let den_span = den_delay + den.degree();
    let order = num_span.max(den_span);
    let mut zeros = z_roots(&num)?;
    zeros.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), order - num_span));
    let mut poles = z_roots(&den)?;
    poles.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), order - den_span));
    let min_phase = zeros.iter().all(|z| z.norm() <= 1.0 + UNIT_CIRCLE_TOL);
    Ok(StabilityReport { classification: classify(&poles), poles, zeros, min_phase })
}

/// Swaps numerator and denominator and flips the element kind.
pub fn invert(f: &IIRFilter<f64>) -> Result<IIRFilter<f64>, PolyError> {
    let tf = f.tf().reciprocal()?;
    Ok(IIRFilter::new(tf, f.spec().flipped()))
}

/// Product of `(1 - p x)` over the given z-plane points.
fn factor_product(points: &[Complex64]) -> (Polynomial<f64>, f64) {
    let mut acc = vec![Complex64::new(1.0, 0.0)];
    for &p in points {
        let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
        for (k, &a) in acc.iter().enumerate() {
            next[k] += a;
            next[k + 1] -= a * p;
        }
        acc = next;
    }
    let residue = acc.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    (Polynomial::new(acc.into_iter().map(|c| c.re).collect()).unwrap(), residue)
}

/// Reflected filter plus the largest imaginary coefficient residue discarded
/// when rebuilding the denominator.
pub fn reflect_with_residue(f: &IIRFilter<f64>) -> Result<(IIRFilter<f64>, f64), PolyError> {
    let den = f.tf().den();
    let (delay, core) = strip_delay(den);
    let poles = z_roots(&core)?;
    if poles.iter().all(|p| p.norm() <= 1.0 + UNIT_CIRCLE_TOL) {
        return Ok((f.clone(), 0.0));
    }
    let mut gain = 1.0;
    let reflected: Vec<Complex64> = poles
        .iter()
        .map(|&p| {
            let r = p.norm();
            if r > 1.0 + UNIT_CIRCLE_TOL {
                // |1 - p x| = |p| |1 - x / conj(p)| on |x| = 1
                gain /= r;
                1.0 / p.conj()
            } else {
                p
            }
        })
        .collect();
    let (rebuilt, residue) = factor_product(&reflected);
    let den_new = &Polynomial::monomial(core.coeff(0), delay) * &rebuilt;
    let num_new = f.tf().num().scale(&gain);
    let tf = RationalFn::canonical(num_new, den_new)?;
    Ok((IIRFilter::new(tf, f.spec().clone()), residue))
}

/// Replaces every pole outside the unit circle by its mirror image `1/conj(p)`
/// and rescales so the magnitude response on `|z| = 1` is unchanged.
///
/// Poles on the circle are kept. Stable inputs are returned unchanged.
pub fn reflect_unstable_poles(f: &IIRFilter<f64>) -> Result<IIRFilter<f64>, PolyError> {
    reflect_with_residue(f).map(|(g, _)| g)
}
