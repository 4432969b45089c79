//! Real-coefficient polynomials and rational functions in `x = z^-1`.
//!
//! Coefficients are stored in ascending powers of `x`, so `coeffs[k]`
//! multiplies `x^k`. That keeps series indexing and Toeplitz windows direct.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;
use thiserror::Error;

use crate::scalar::{max_abs, Real, Scalar};

/// Relative magnitude below which trailing coefficients are treated as noise.
pub const TRIM_TOL: f64 = 1e-12;

/// Relative guard used by [`RationalFn::eval_unit_circle`].
pub const NEAR_POLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("polynomial needs at least one coefficient")]
    Empty,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("numerator is the zero polynomial")]
    ZeroNumerator,
    #[error("evaluation at omega = {omega} rad/s is at or near a pole")]
    NearPole { omega: f64 },
    #[error("constant polynomial has no roots")]
    DegreeZero,
}

/// Polynomial in `x` with ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

/// Binary polynomial operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>, op: ArithOp) -> Polynomial<S> {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

impl<S: Scalar> Polynomial<S> {
    /// Builds a polynomial, dropping exactly-zero trailing coefficients.
    pub fn new(coeffs: Vec<S>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::Empty);
        }
        Ok(Self::from_vec(coeffs))
    }

    fn from_vec(mut coeffs: Vec<S>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(S::zero());
        }
        Self { coeffs }
    }

    pub fn from_f64(coeffs: &[f64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().map(|&c| S::of(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![S::zero()] }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_vec(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::from_vec(coeffs)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of `x^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn max_abs_coeff(&self) -> S {
        max_abs(&self.coeffs)
    }

    /// Horner evaluation at a point of the scalar field.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_vec(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * S::from_usize(k).unwrap()).collect();
        Self::from_vec(coeffs)
    }

    /// Drops trailing coefficients with `|c| <= rel * max|c|`.
    pub fn trimmed(&self, rel: f64) -> Self {
        let threshold = self.max_abs_coeff() * S::of(rel);
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.abs() <= threshold) {
            coeffs.pop();
        }
        Self::from_vec(coeffs)
    }

    /// Converts every coefficient into another scalar type.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        Polynomial::from_vec(self.coeffs.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map(|c| c.as_f64())
    }
}

impl<S: Real> Polynomial<S> {
    pub fn eval_complex(&self, x: Complex<S>) -> Complex<S> {
        self.coeffs.iter().rev().fold(Complex::new(S::zero(), S::zero()), |acc, &c| acc * x + c)
    }

    /// Rebuilds `lead * prod (x - r_i)` from complex roots.
    ///
    /// Returns the polynomial and the largest imaginary residue that was
    /// discarded when rounding the product to real coefficients.
    pub fn from_roots(roots: &[Complex<S>], lead: S) -> (Self, S) {
        let mut acc = vec![Complex::new(lead, S::zero())];
        for &r in roots {
            let mut next = vec![Complex::new(S::zero(), S::zero()); acc.len() + 1];
            for (k, &a) in acc.iter().enumerate() {
                next[k + 1] = next[k + 1] + a;
                next[k] = next[k] - a * r;
            }
            acc = next;
        }
        let residue = acc.iter().map(|c| c.im.abs()).fold(S::zero(), |m, v| if v > m { v } else { m });
        (Self::from_vec(acc.into_iter().map(|c| c.re).collect()), residue)
    }
}

impl<S: Real + RealField> Polynomial<S> {
    /// All complex roots via companion-matrix eigenvalues plus one Newton polish.
    pub fn roots(&self) -> Result<Vec<Complex<S>>, PolyError> {
        let p = self.trimmed(TRIM_TOL);
        let degree = p.degree();
        if degree == 0 {
            return Err(PolyError::DegreeZero);
        }
        let lead = p.coeffs[degree];
        let mut companion = DMatrix::<S>::zeros(degree, degree);
        for i in 1..degree {
            companion[(i, i - 1)] = S::one();
        }
        for i in 0..degree {
            companion[(i, degree - 1)] = -p.coeffs[i] / lead;
        }
        let eigen = companion.complex_eigenvalues();
        let dp = p.derivative();
        let roots = eigen
            .iter()
            .map(|&r| {
                let r = Complex::new(r.re, r.im);
                let f = p.eval_complex(r);
                let df = dp.eval_complex(r);
                if df.norm() == S::zero() {
                    return r;
                }
                let polished = r - f / df;
                if p.eval_complex(polished).norm() < f.norm() {
                    polished
                } else {
                    r
                }
            })
            .collect();
        Ok(roots)
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn add(self, rhs: Self) -> Polynomial<S> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_vec((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn sub(self, rhs: Self) -> Polynomial<S> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_vec((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: Self) -> Polynomial<S> {
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::from_vec(out)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        Polynomial::from_vec(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Whether a rational function has been brought to canonical scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Raw,
    /// Denominator's lowest-order nonzero coefficient is 1.
    Canonical,
}

/// `num(x) / den(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn<S> {
    num: Polynomial<S>,
    den: Polynomial<S>,
    normalization: Normalization,
}

impl<S: Scalar> RationalFn<S> {
    pub fn new(num: Polynomial<S>, den: Polynomial<S>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self { num, den, normalization: Normalization::Raw })
    }

    /// Builds and canonicalizes in one step.
    pub fn canonical(num: Polynomial<S>, den: Polynomial<S>) -> Result<Self, PolyError> {
        Ok(Self::new(num, den)?.canonicalize())
    }

    pub fn from_f64(num: &[f64], den: &[f64]) -> Result<Self, PolyError> {
        Self::new(Polynomial::from_f64(num)?, Polynomial::from_f64(den)?)
    }

    pub fn identity() -> Self {
        Self { num: Polynomial::one(), den: Polynomial::one(), normalization: Normalization::Canonical }
    }

    pub fn num(&self) -> &Polynomial<S> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<S> {
        &self.den
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Divides through by the denominator's lowest-order nonzero coefficient
    /// and trims coefficient noise from both polynomials.
    pub fn canonicalize(&self) -> Self {
        let pivot = self.den.coeffs().iter().find(|c| !c.is_zero()).cloned().expect("denominator is nonzero");
        // dividing (not multiplying by the inverse) makes the pivot exactly one
        let div = |c: &S| c.clone() / pivot.clone();
        Self {
            num: self.num.map(div).trimmed(TRIM_TOL),
            den: self.den.map(div).trimmed(TRIM_TOL),
            normalization: Normalization::Canonical,
        }
    }

    pub fn reciprocal(&self) -> Result<Self, PolyError> {
        if self.num.is_zero() {
            return Err(PolyError::ZeroNumerator);
        }
        Ok(Self::new(self.den.clone(), self.num.clone())?.canonicalize())
    }

    /// Product of two rational functions; no cancellation is attempted.
    pub fn product(&self, other: &Self) -> Self {
        Self { num: &self.num * &other.num, den: &self.den * &other.den, normalization: Normalization::Raw }
            .canonicalize()
    }

    pub fn scale(&self, k: &S) -> Self {
        Self { num: self.num.scale(k), den: self.den.clone(), normalization: self.normalization }
    }

    /// Value at a real point of the scalar field; `None` at a zero of `den`.
    pub fn eval(&self, x: &S) -> Option<S> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// First `len` Taylor coefficients about `x = 0` by long division.
    ///
    /// Returns `None` when `den(0) = 0`.
    pub fn series(&self, len: usize) -> Option<Vec<S>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return None;
        }
        let mut out: Vec<S> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.degree()) {
                acc = acc - self.den.coeff(j) * out[k - j].clone();
            }
            out.push(acc / d0.clone());
        }
        Some(out)
    }

    /// Direct-form difference-equation filtering with zero initial state.
    pub fn filter(&self, input: &[S]) -> Vec<S> {
        let d0 = self.den.coeff(0);
        assert!(!d0.is_zero(), "direct-form filtering needs den(0) != 0");
        let mut out: Vec<S> = Vec::with_capacity(input.len());
        for n in 0..input.len() {
            let mut acc = S::zero();
            for (k, b) in self.num.coeffs().iter().enumerate().take(n + 1) {
                acc = acc + b.clone() * input[n - k].clone();
            }
            for (k, a) in self.den.coeffs().iter().enumerate().skip(1).take(n) {
                acc = acc - a.clone() * out[n - k].clone();
            }
            out.push(acc / d0.clone());
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RationalFn<T> {
        RationalFn { num: self.num.map(&f), den: self.den.map(&f), normalization: self.normalization }
    }

    pub fn to_f64(&self) -> RationalFn<f64> {
        self.map(|c| c.as_f64())
    }
}

impl<S: Real> RationalFn<S> {
    pub fn eval_complex(&self, x: Complex<S>) -> Complex<S> {
        self.num.eval_complex(x) / self.den.eval_complex(x)
    }

    /// Frequency response at `z = e^{j omega ts}`, i.e. `x = e^{-j omega ts}`.
    ///
    /// Intended for `0 < omega <= pi / ts`.
    pub fn eval_unit_circle(&self, omega: S, ts: S) -> Result<Complex<S>, PolyError> {
        let theta = omega * ts;
        let x = Complex::new(theta.cos(), -theta.sin());
        let d = self.den.eval_complex(x);
        let guard = self.den.max_abs_coeff() * S::of(NEAR_POLE_TOL);
        if d.norm() < guard {
            return Err(PolyError::NearPole { omega: omega.as_f64() });
        }
        Ok(self.num.eval_complex(x) / d)
    }
}
