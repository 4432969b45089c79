//! Generating functions mapping `s` to rational functions of `x = z^-1`.
//!
//! Every family is stored in integrator orientation (an approximation of
//! `1/s`); the differentiator is its reciprocal. The interpolated families are
//! affine mixes of integrators:
//!
//! * Al-Alaoui: `alpha * Euler + (1 - alpha) * Tustin`
//! * Chen-Vinagre: `alpha * Simpson + (1 - alpha) * Tustin`

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::poly::{Polynomial, RationalFn};
use crate::scalar::Scalar;

/// Root distance below which a Chen-Vinagre numerator factor is cancelled
/// against the `(1 + x)` denominator factor.
pub const CANCEL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenFuncError {
    #[error("alpha = {0} is outside [0, 1]")]
    BadAlpha(f64),
    #[error("sampling time T = {0} must be positive")]
    BadTs(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Euler,
    Tustin,
    Simpson,
    AlAlaoui,
    ChenVinagre,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Euler, Family::Tustin, Family::Simpson, Family::AlAlaoui, Family::ChenVinagre];

    /// Whether the family carries an interpolation weight.
    pub fn is_interpolated(self) -> bool {
        matches!(self, Family::AlAlaoui | Family::ChenVinagre)
    }

    /// Degree of the integrator form in `x`.
    pub fn degree(self) -> usize {
        match self {
            Family::Euler | Family::Tustin | Family::AlAlaoui => 1,
            Family::Simpson | Family::ChenVinagre => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Euler => "euler",
            Family::Tustin => "tustin",
            Family::Simpson => "simpson",
            Family::AlAlaoui => "al-alaoui",
            Family::ChenVinagre => "chen-vinagre",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown family '{s}'"))
    }
}

/// Orientation of a fractional element: `s^gamma` or `s^-gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Differentiator,
    Integrator,
}

impl ElementKind {
    pub fn flipped(self) -> Self {
        match self {
            ElementKind::Differentiator => ElementKind::Integrator,
            ElementKind::Integrator => ElementKind::Differentiator,
        }
    }

    /// `+1` for differentiators, `-1` for integrators.
    pub fn sign(self) -> f64 {
        match self {
            ElementKind::Differentiator => 1.0,
            ElementKind::Integrator => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Differentiator => "diff",
            ElementKind::Integrator => "int",
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ElementKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "diff" => Ok(ElementKind::Differentiator),
            "int" => Ok(ElementKind::Integrator),
            _ => Err(format!("unknown element kind '{s}'")),
        }
    }
}

/// A generating function: family, interpolation weight and sampling time.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingFunction<S> {
    family: Family,
    alpha: S,
    ts: S,
}

impl<S: Scalar> GeneratingFunction<S> {
    /// `alpha` is validated for every family but only used by the
    /// interpolated ones.
    pub fn new(family: Family, alpha: S, ts: S) -> Result<Self, GenFuncError> {
        if alpha < S::zero() || alpha > S::one() {
            return Err(GenFuncError::BadAlpha(alpha.as_f64()));
        }
        if ts <= S::zero() {
            return Err(GenFuncError::BadTs(ts.as_f64()));
        }
        Ok(Self { family, alpha, ts })
    }

    /// A pure family (Euler, Tustin, Simpson); `alpha` is stored as zero.
    pub fn pure(family: Family, ts: S) -> Result<Self, GenFuncError> {
        Self::new(family, S::zero(), ts)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alpha(&self) -> &S {
        &self.alpha
    }

    pub fn ts(&self) -> &S {
        &self.ts
    }

    /// The family this value collapses to, resolving interpolation endpoints.
    pub fn effective_family(&self) -> Family {
        match self.family {
            Family::AlAlaoui if self.alpha.is_one() => Family::Euler,
            Family::AlAlaoui if self.alpha.is_zero() => Family::Tustin,
            Family::ChenVinagre if self.alpha.is_one() => Family::Simpson,
            Family::ChenVinagre if self.alpha.is_zero() || self.chen_vinagre_degenerate() => Family::Tustin,
            f => f,
        }
    }

    // Numerator 1 + b x + x^2 with b = 2(3 + a)/(3 - a) has roots near x = -1
    // for small alpha; cancel them against (1 + x) once they are within
    // CANCEL_TOL.
    fn chen_vinagre_degenerate(&self) -> bool {
        let a = self.alpha.as_f64();
        let half_b = (3.0 + a) / (3.0 - a);
        let spread = half_b - 1.0 + (half_b * half_b - 1.0).max(0.0).sqrt();
        spread <= CANCEL_TOL
    }

    /// Rational approximation of `1/s`, canonicalized.
    pub fn integrator_form(&self) -> RationalFn<S> {
        let t = self.ts.clone();
        let c = |v: f64| S::of(v);
        let (num, den) = match self.effective_family() {
            Family::Euler => (vec![t], vec![c(1.0), c(-1.0)]),
            Family::Tustin => {
                let k = t / c(2.0);
                (vec![k.clone(), k], vec![c(1.0), c(-1.0)])
            }
            Family::Simpson => {
                let k = t / c(3.0);
                (vec![k.clone(), k.clone() * c(4.0), k], vec![c(1.0), c(0.0), c(-1.0)])
            }
            Family::AlAlaoui => {
                let a = self.alpha.clone();
                let k = t * (S::one() + a.clone()) / c(2.0);
                let zero = (S::one() - a.clone()) / (S::one() + a);
                (vec![k.clone(), k * zero], vec![c(1.0), c(-1.0)])
            }
            Family::ChenVinagre => {
                let a = self.alpha.clone();
                let k = t * (c(3.0) - a.clone()) / c(6.0);
                let mid = c(2.0) * (c(3.0) + a.clone()) / (c(3.0) - a);
                (vec![k.clone(), k.clone() * mid, k], vec![c(1.0), c(0.0), c(-1.0)])
            }
        };
        RationalFn::canonical(Polynomial::new(num).expect("nonempty"), Polynomial::new(den).expect("nonempty"))
            .expect("denominator is nonzero")
    }

    /// Rational approximation of `s`: the reciprocal of the integrator form.
    pub fn differentiator_form(&self) -> RationalFn<S> {
        self.integrator_form().reciprocal().expect("integrator forms have nonzero numerators")
    }

    pub fn form(&self, kind: ElementKind) -> RationalFn<S> {
        match kind {
            ElementKind::Integrator => self.integrator_form(),
            ElementKind::Differentiator => self.differentiator_form(),
        }
    }
}
