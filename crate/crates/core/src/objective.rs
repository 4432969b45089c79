//! Weighted magnitude/phase deviation between an ideal fractional element and
//! a realized filter: `J = w * J_mag + (1 - w) * J_phase`.
//!
//! Magnitudes are compared in dB and phases in degrees. Grid points at or
//! near a filter pole are skipped and counted.

use thiserror::Error;

use crate::cfe::{realize, CfeError, IIRFilter, RealizationSpec};
use crate::genfunc::{ElementKind, Family, GeneratingFunction};
use crate::response::{filter_response, ideal_response, FrequencyGrid, ResponseError, DEFAULT_POINTS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObjectiveError {
    #[error("weight w = {0} is outside [0, 1]")]
    BadWeight(f64),
    #[error("grid [{lo}, {hi}] leaves the band [1e-4, pi/T]")]
    GridOutsideBand { lo: f64, hi: f64 },
    #[error("filter spec does not match the objective ({0})")]
    SpecMismatch(&'static str),
    #[error(transparent)]
    Response(#[from] ResponseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    /// Sum of absolute deviations.
    L1,
    /// Euclidean norm of the deviation vector.
    L2,
}

impl Norm {
    pub fn name(self) -> &'static str {
        match self {
            Norm::L1 => "L1",
            Norm::L2 => "L2",
        }
    }

    fn apply(self, deviations: impl Iterator<Item = f64>) -> f64 {
        match self {
            Norm::L1 => deviations.map(f64::abs).sum(),
            Norm::L2 => deviations.map(|d| d * d).sum::<f64>().sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveConfig {
    w: f64,
    grid: FrequencyGrid,
    norm: Norm,
    gamma: f64,
    kind: ElementKind,
    ts: f64,
}

impl ObjectiveConfig {
    pub fn new(
        w: f64,
        grid: FrequencyGrid,
        norm: Norm,
        gamma: f64,
        kind: ElementKind,
        ts: f64,
    ) -> Result<Self, ObjectiveError> {
        if !(0.0..=1.0).contains(&w) {
            return Err(ObjectiveError::BadWeight(w));
        }
        if !grid.respects_nyquist(ts) {
            return Err(ObjectiveError::GridOutsideBand { lo: grid.lo(), hi: grid.hi() });
        }
        Ok(Self { w, grid, norm, gamma, kind, ts })
    }

    /// L1 over 1000 log-spaced points on `[1e-4, pi/T]`.
    pub fn standard(w: f64, gamma: f64, kind: ElementKind, ts: f64) -> Result<Self, ObjectiveError> {
        let grid = FrequencyGrid::for_sampling(ts, DEFAULT_POINTS)?;
        Self::new(w, grid, Norm::L1, gamma, kind, ts)
    }

    /// Same configuration with another weight.
    pub fn with_weight(&self, w: f64) -> Result<Self, ObjectiveError> {
        Self::new(w, self.grid.clone(), self.norm, self.gamma, self.kind, self.ts)
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn ts(&self) -> f64 {
        self.ts
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveValue {
    pub j: f64,
    pub j_mag: f64,
    pub j_phase: f64,
    pub excluded: usize,
    /// Set when the realization failed and the value is the infinite sentinel.
    pub failure: Option<CfeError>,
}

impl ObjectiveValue {
    fn combine(w: f64, j_mag: f64, j_phase: f64, excluded: usize) -> Self {
        Self { j: w * j_mag + (1.0 - w) * j_phase, j_mag, j_phase, excluded, failure: None }
    }

    pub fn infeasible(err: CfeError) -> Self {
        Self { j: f64::INFINITY, j_mag: f64::INFINITY, j_phase: f64::INFINITY, excluded: 0, failure: Some(err) }
    }

    pub fn is_feasible(&self) -> bool {
        self.failure.is_none()
    }
}

/// Scores a filter against the ideal element described by `cfg`.
pub fn evaluate(f: &IIRFilter<f64>, cfg: &ObjectiveConfig) -> Result<ObjectiveValue, ObjectiveError> {
    let spec = f.spec();
    if spec.kind() != cfg.kind {
        return Err(ObjectiveError::SpecMismatch("element kind"));
    }
    if (spec.gamma() - cfg.gamma).abs() > 1e-12 {
        return Err(ObjectiveError::SpecMismatch("gamma"));
    }
    if (spec.ts() - cfg.ts).abs() > 1e-15 * cfg.ts.abs().max(1.0) {
        return Err(ObjectiveError::SpecMismatch("sampling time"));
    }
    let ideal = ideal_response(cfg.gamma, cfg.kind, &cfg.grid);
    let actual = filter_response(f, &cfg.grid);
    let pairs = || actual.indices.iter().zip(&actual.samples).map(|(&i, s)| (&ideal[i], s));
    let j_mag = cfg.norm.apply(pairs().map(|(i, s)| i.mag_db - s.mag_db));
    let j_phase = cfg.norm.apply(pairs().map(|(i, s)| i.phase_deg - s.phase_deg));
    Ok(ObjectiveValue::combine(cfg.w, j_mag, j_phase, actual.excluded))
}

/// Everything a realization needs except the generating function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizationBase {
    pub gamma: f64,
    pub kind: ElementKind,
    pub order: usize,
    pub ts: f64,
}

impl RealizationBase {
    pub fn spec(&self, family: Family, alpha: f64) -> Result<RealizationSpec<f64>, CfeError> {
        let gf = GeneratingFunction::new(family, alpha, self.ts)?;
        RealizationSpec::new(self.gamma, self.kind, self.order, gf)
    }

    /// The matching standard objective for weight `w`.
    pub fn objective(&self, w: f64) -> Result<ObjectiveConfig, ObjectiveError> {
        ObjectiveConfig::standard(w, self.gamma, self.kind, self.ts)
    }
}

/// The one-dimensional cost the optimizer sees: realize at `alpha`, then score.
///
/// Realization failures become the infinite sentinel so the cost is total.
pub fn evaluate_alpha(
    alpha: f64,
    family: Family,
    base: &RealizationBase,
    cfg: &ObjectiveConfig,
) -> Result<ObjectiveValue, ObjectiveError> {
    let filter = match base.spec(family, alpha).and_then(|spec| realize(&spec)) {
        Ok(f) => f,
        Err(e) => return Ok(ObjectiveValue::infeasible(e)),
    };
    evaluate(&filter, cfg)
}
