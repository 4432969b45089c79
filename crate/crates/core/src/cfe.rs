//! Continued-fraction realization of fractional powers of generating functions.
//!
//! The pipeline is
//!
//! 1. expand the operand `R(x)^gamma` as a truncated Taylor series,
//! 2. develop that series into a continued fraction in Viskovatov normal form
//!    `a0 + b1 x / (1 + b2 x / (1 + b3 x / ...))`,
//! 3. collapse the depth-`2n` truncation with the three-term recurrence,
//!    which yields the diagonal `[n/n]` Padé approximant.
//!
//! A direct Toeplitz solve of the Padé equations backs up step 2 when the
//! development breaks down. Both paths must pass the same residual check.
//! All of it runs in a working precision `W` (double-double by default) and is
//! rounded to the caller's scalar type only at the end.

use thiserror::Error;

use crate::dd::DoubleDouble;
use crate::genfunc::{ElementKind, GenFuncError, GeneratingFunction};
use crate::poly::{Polynomial, RationalFn};
use crate::scalar::{max_abs, Real, Scalar};

/// Extra series terms beyond `2n` carried into the development.
pub const GUARD_TERMS: usize = 4;
/// Per-coefficient relative tolerance of the Padé residual check.
pub const RESIDUAL_TOL: f64 = 1e-7;
/// Relative size below which a leading coefficient counts as vanished.
pub const BREAKDOWN_TOL: f64 = 1e-12;
/// Relative pivot size below which the Toeplitz system counts as singular.
pub const PIVOT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CfeError {
    #[error("operand is not analytic and nonzero at x = 0")]
    NotAnalytic,
    #[error("continued fraction breaks down at level {level}")]
    Breakdown { level: usize },
    #[error("Padé system is numerically singular (pivot ratio {pivot_ratio:e})")]
    SingularTable { pivot_ratio: f64 },
    #[error("series has {available} coefficients, {needed} needed")]
    InsufficientTerms { needed: usize, available: usize },
    #[error("convergent misses the series by {max_rel:e} (relative)")]
    ResidualCheck { max_rel: f64 },
    #[error("gamma = {0} is outside (0, 1]")]
    BadGamma(f64),
    #[error("order must be at least 1")]
    BadOrder,
    #[error("series must have a nonzero constant term")]
    ZeroLeading,
    #[error(transparent)]
    GenFunc(#[from] GenFuncError),
}

/// Truncated Taylor series `sum c_k x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> PowerSeries<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self, CfeError> {
        match coeffs.first() {
            None => Err(CfeError::InsufficientTerms { needed: 1, available: 0 }),
            Some(c) if c.is_zero() => Err(CfeError::ZeroLeading),
            Some(_) => Ok(Self { coeffs }),
        }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power of `x` carried.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn scale(&self, k: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect() }
    }
}

/// Coefficients of `g^gamma` from those of `g`, given `c0 = g0^gamma`.
///
/// Uses `k g0 c_k = sum_{j=1..k} ((gamma + 1) j - k) g_j c_{k-j}`, which only
/// needs field arithmetic once `c0` is known.
pub fn power_recurrence<S: Scalar>(g: &[S], gamma: &S, c0: S, len: usize) -> Vec<S> {
    let g0 = g[0].clone();
    let mut c = Vec::with_capacity(len);
    c.push(c0);
    for k in 1..len {
        let kk = S::from_usize(k).unwrap();
        let mut acc = S::zero();
        for j in 1..=k.min(g.len() - 1) {
            let jj = S::from_usize(j).unwrap();
            let w = (gamma.clone() + S::one()) * jj - kk.clone();
            acc = acc + w * g[j].clone() * c[k - j].clone();
        }
        c.push(acc / (kk * g0.clone()));
    }
    c
}

/// Taylor coefficients of `r(x)^gamma` through `x^k`, gain folded into `c0`.
///
/// `c0 = g0^gamma` is evaluated in `f64`. It scales every coefficient
/// uniformly, so its rounding only touches the overall gain.
pub fn series_fractional_power<S: Scalar>(r: &RationalFn<S>, gamma: S, k: usize) -> Result<PowerSeries<S>, CfeError> {
    let n0 = r.num().coeff(0);
    let d0 = r.den().coeff(0);
    if n0.is_zero() || d0.is_zero() {
        return Err(CfeError::NotAnalytic);
    }
    let g = r.series(k + 1).ok_or(CfeError::NotAnalytic)?;
    let (g0, e) = (g[0].as_f64(), gamma.as_f64());
    if g0 < 0.0 && e.fract() != 0.0 {
        return Err(CfeError::NotAnalytic);
    }
    let c0 = S::of(g0.powf(e));
    PowerSeries::new(power_recurrence(&g, &gamma, c0, k + 1))
}

/// One partial term `a + b x / (...)`; the first term has `b = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CfTerm<S> {
    pub a: S,
    pub b: S,
}

/// Continued fraction `a0 + b1 x / (a1 + b2 x / (a2 + ...))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuedFraction<S> {
    terms: Vec<CfTerm<S>>,
    terminated: bool,
}

impl<S: Scalar> ContinuedFraction<S> {
    pub fn terms(&self) -> &[CfTerm<S>] {
        &self.terms
    }

    pub fn depth(&self) -> usize {
        self.terms.len() - 1
    }

    /// True when the development ended because the remainder vanished, i.e.
    /// the fraction represents the series exactly.
    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    /// Collapses the depth-`depth` truncation into `A/B` via
    /// `A_k = a_k A_{k-1} + b_k x A_{k-2}` (same for `B`).
    pub fn collapse(&self, depth: usize) -> RationalFn<S> {
        let depth = depth.min(self.depth());
        let mut a_prev = Polynomial::one();
        let mut b_prev = Polynomial::zero();
        let mut a_cur = Polynomial::constant(self.terms[0].a.clone());
        let mut b_cur = Polynomial::one();
        for term in &self.terms[1..=depth] {
            let bx = Polynomial::monomial(term.b.clone(), 1);
            let a_next = &a_cur.scale(&term.a) + &(&bx * &a_prev);
            let b_next = &b_cur.scale(&term.a) + &(&bx * &b_prev);
            a_prev = std::mem::replace(&mut a_cur, a_next);
            b_prev = std::mem::replace(&mut b_cur, b_next);
        }
        RationalFn::canonical(a_cur, b_cur).expect("convergent denominators have B(0) = 1")
    }
}

/// Reciprocal of a series with nonzero constant term, same length.
fn series_reciprocal<S: Scalar>(s: &[S]) -> Vec<S> {
    let mut out: Vec<S> = Vec::with_capacity(s.len());
    let inv0 = S::one() / s[0].clone();
    out.push(inv0.clone());
    for k in 1..s.len() {
        let mut acc = S::zero();
        for j in 1..=k {
            acc = acc + s[j].clone() * out[k - j].clone();
        }
        out.push(-acc * inv0.clone());
    }
    out
}

/// Viskovatov development of a series to the given depth.
pub fn cf_terms<S: Scalar>(s: &PowerSeries<S>, depth: usize) -> Result<ContinuedFraction<S>, CfeError> {
    if depth > s.truncation() {
        return Err(CfeError::InsufficientTerms { needed: depth + 1, available: s.len() });
    }
    let tol = S::of(BREAKDOWN_TOL);
    let mut f = s.coeffs[..=depth].to_vec();
    let mut terms = vec![CfTerm { a: f[0].clone(), b: S::zero() }];
    for level in 1..=depth {
        let rest = f[1..].to_vec();
        let rest_scale = max_abs(&rest);
        if rest_scale <= tol.clone() * max_abs(&f) {
            return Ok(ContinuedFraction { terms, terminated: true });
        }
        let b = rest[0].clone();
        if b.abs() <= tol.clone() * rest_scale {
            return Err(CfeError::Breakdown { level });
        }
        // f_level = b / rest, whose constant term is 1
        f = series_reciprocal(&rest).into_iter().map(|c| c * b.clone()).collect();
        terms.push(CfTerm { a: f[0].clone(), b });
    }
    Ok(ContinuedFraction { terms, terminated: false })
}

/// Direct solve of the `[n/n]` Padé equations on the Toeplitz moment matrix.
pub fn pade_solve<S: Scalar>(s: &PowerSeries<S>, n: usize) -> Result<RationalFn<S>, CfeError> {
    let c = s.coeffs();
    if c.len() < 2 * n + 1 {
        return Err(CfeError::InsufficientTerms { needed: 2 * n + 1, available: c.len() });
    }
    let at = |k: isize| if k < 0 { S::zero() } else { c[k as usize].clone() };
    // sum_{j=1..n} q_j c_{k-j} = -c_k for k = n+1..2n
    let mut m: Vec<Vec<S>> = (0..n)
        .map(|row| {
            let k = (n + 1 + row) as isize;
            let mut line: Vec<S> = (1..=n).map(|j| at(k - j as isize)).collect();
            line.push(-at(k));
            line
        })
        .collect();
    let scale = m.iter().flat_map(|r| r[..n].iter()).fold(S::zero(), |acc, v| {
        let v = v.abs();
        if v > acc {
            v
        } else {
            acc
        }
    });
    let mut min_pivot: Option<S> = None;
    let mut max_pivot = S::zero();
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap()).unwrap();
        m.swap(col, pivot_row);
        let pivot = m[col][col].clone();
        let mag = pivot.abs();
        if mag > max_pivot {
            max_pivot = mag.clone();
        }
        if min_pivot.as_ref().is_none_or(|p| mag < *p) {
            min_pivot = Some(mag.clone());
        }
        if mag <= S::of(PIVOT_TOL) * scale.clone() {
            let ratio = if scale.is_zero() { 0.0 } else { (mag / scale.clone()).as_f64() };
            return Err(CfeError::SingularTable { pivot_ratio: ratio });
        }
        for row in (col + 1)..n {
            let factor = m[row][col].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for k in col..=n {
                let v = m[col][k].clone() * factor.clone();
                m[row][k] = m[row][k].clone() - v;
            }
        }
    }
    let mut q = vec![S::zero(); n];
    for row in (0..n).rev() {
        let mut acc = m[row][n].clone();
        for k in (row + 1)..n {
            acc = acc - m[row][k].clone() * q[k].clone();
        }
        q[row] = acc / m[row][row].clone();
    }
    let mut den = vec![S::one()];
    den.extend(q);
    let num: Vec<S> =
        (0..=n).map(|k| (0..=k).fold(S::zero(), |acc, j| acc + den[j].clone() * c[k - j].clone())).collect();
    Ok(RationalFn::canonical(Polynomial::new(num).unwrap(), Polynomial::new(den).unwrap()).expect("den(0) = 1"))
}

/// Which algorithm produced a convergent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergentPath {
    ContinuedFraction,
    Toeplitz,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Convergent<S> {
    pub tf: RationalFn<S>,
    pub path: ConvergentPath,
    /// Largest relative deviation of the re-expanded convergent from the series.
    pub residual: f64,
}

/// Largest per-coefficient relative deviation between `tf`'s expansion and
/// `s` through `x^upto`.
pub fn residual<S: Scalar>(tf: &RationalFn<S>, s: &PowerSeries<S>, upto: usize) -> f64 {
    let target = &s.coeffs()[..=upto];
    let Some(expansion) = tf.series(upto + 1) else {
        return f64::INFINITY;
    };
    let floor = max_abs(target) * S::of(BREAKDOWN_TOL);
    expansion
        .iter()
        .zip(target)
        .map(|(e, t)| {
            let denom = if t.abs() > floor { t.abs() } else { floor.clone() };
            ((e.clone() - t.clone()).abs() / denom).as_f64()
        })
        .fold(0.0, f64::max)
}

/// The `[n/n]` convergent with provenance and residual.
pub fn convergent_detailed<S: Scalar>(s: &PowerSeries<S>, n: usize) -> Result<Convergent<S>, CfeError> {
    if s.len() < 2 * n + 1 {
        return Err(CfeError::InsufficientTerms { needed: 2 * n + 1, available: s.len() });
    }
    let upto = 2 * n;
    let primary = cf_terms(s, upto).map(|cf| cf.collapse(upto));
    let mut first_failure = None;
    match primary {
        Ok(tf) => {
            let res = residual(&tf, s, upto);
            if res <= RESIDUAL_TOL {
                return Ok(Convergent { tf, path: ConvergentPath::ContinuedFraction, residual: res });
            }
            first_failure = Some(CfeError::ResidualCheck { max_rel: res });
        }
        Err(CfeError::Breakdown { .. }) => {}
        Err(e) => return Err(e),
    }
    let tf = pade_solve(s, n)?;
    let res = residual(&tf, s, upto);
    if res <= RESIDUAL_TOL {
        Ok(Convergent { tf, path: ConvergentPath::Toeplitz, residual: res })
    } else {
        Err(first_failure.unwrap_or(CfeError::ResidualCheck { max_rel: res }))
    }
}

/// Diagonal `[n/n]` Padé approximant of a series, canonicalized.
pub fn convergent<S: Scalar>(s: &PowerSeries<S>, n: usize) -> Result<RationalFn<S>, CfeError> {
    convergent_detailed(s, n).map(|c| c.tf)
}

/// What to realize: `s^gamma` or `s^-gamma` of order `n` on a generating function.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationSpec<S> {
    gamma: S,
    kind: ElementKind,
    order: usize,
    gf: GeneratingFunction<S>,
}

impl<S: Scalar> RealizationSpec<S> {
    pub fn new(gamma: S, kind: ElementKind, order: usize, gf: GeneratingFunction<S>) -> Result<Self, CfeError> {
        if gamma <= S::zero() || gamma > S::one() {
            return Err(CfeError::BadGamma(gamma.as_f64()));
        }
        if order == 0 {
            return Err(CfeError::BadOrder);
        }
        Ok(Self { gamma, kind, order, gf })
    }

    pub fn gamma(&self) -> &S {
        &self.gamma
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gf(&self) -> &GeneratingFunction<S> {
        &self.gf
    }

    pub fn ts(&self) -> &S {
        self.gf.ts()
    }

    /// Same spec with the opposite element kind.
    pub fn flipped(&self) -> Self {
        Self { kind: self.kind.flipped(), ..self.clone() }
    }
}

/// A realized discrete filter and the spec it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct IIRFilter<S> {
    tf: RationalFn<S>,
    spec: RealizationSpec<S>,
}

impl<S: Scalar> IIRFilter<S> {
    /// Wraps a transfer function, canonicalizing it.
    pub fn new(tf: RationalFn<S>, spec: RealizationSpec<S>) -> Self {
        Self { tf: tf.canonicalize(), spec }
    }

    /// The generating function itself as a filter (`gamma = 1`).
    pub fn from_generating_function(gf: GeneratingFunction<S>, kind: ElementKind) -> Self {
        let tf = gf.form(kind);
        let order = gf.family().degree();
        let spec = RealizationSpec::new(S::one(), kind, order, gf).expect("gamma = 1 and order >= 1");
        Self::new(tf, spec)
    }

    pub fn tf(&self) -> &RationalFn<S> {
        &self.tf
    }

    pub fn spec(&self) -> &RealizationSpec<S> {
        &self.spec
    }

    pub fn num_degree(&self) -> usize {
        self.tf.num().degree()
    }

    pub fn den_degree(&self) -> usize {
        self.tf.den().degree()
    }

    pub fn into_parts(self) -> (RationalFn<S>, RealizationSpec<S>) {
        (self.tf, self.spec)
    }
}

/// Realizes a spec in double-double working precision.
pub fn realize<S: Real>(spec: &RealizationSpec<S>) -> Result<IIRFilter<S>, CfeError> {
    realize_in::<S, DoubleDouble>(spec)
}

/// Realizes a spec with an explicit working precision `W`.
pub fn realize_in<S: Real, W: Scalar>(spec: &RealizationSpec<S>) -> Result<IIRFilter<S>, CfeError> {
    let to_w = |v: &S| W::of(v.as_f64());
    let gf = spec.gf();
    let gf_w = GeneratingFunction::new(gf.family(), to_w(gf.alpha()), to_w(gf.ts()))?;
    let operand = gf_w.form(spec.kind());
    let n = spec.order();
    let series = series_fractional_power(&operand, to_w(spec.gamma()), 2 * n + GUARD_TERMS)?;
    let tf_w = convergent(&series, n)?;
    let tf = tf_w.map(|c| S::of(c.as_f64()));
    Ok(IIRFilter::new(tf, spec.clone()))
}
