//! Frequency grids and Bode data for ideal fractional elements and filters.

use std::f64::consts::PI;

use thiserror::Error;

use crate::cfe::IIRFilter;
use crate::genfunc::ElementKind;
use crate::poly::PolyError;

/// Lowest frequency allowed on a grid, rad/s.
pub const OMEGA_FLOOR: f64 = 1e-4;
pub const DEFAULT_POINTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResponseError {
    #[error("bad frequency range [{lo}, {hi}] with {points} points")]
    BadRange { lo: f64, hi: f64, points: usize },
}

/// Strictly increasing, log-spaced angular frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    omegas: Vec<f64>,
}

pub fn nyquist(ts: f64) -> f64 {
    PI / ts
}

/// `points` log-spaced frequencies on `[omega_min, omega_max]`, endpoints included.
pub fn make_grid(omega_min: f64, omega_max: f64, points: usize) -> Result<FrequencyGrid, ResponseError> {
    let bad = || ResponseError::BadRange { lo: omega_min, hi: omega_max, points };
    if !(omega_min > 0.0 && omega_max > omega_min && omega_max.is_finite()) || points < 2 {
        return Err(bad());
    }
    let (l0, l1) = (omega_min.ln(), omega_max.ln());
    let step = (l1 - l0) / (points - 1) as f64;
    let mut omegas: Vec<f64> = (0..points).map(|i| (l0 + step * i as f64).exp()).collect();
    omegas[0] = omega_min;
    omegas[points - 1] = omega_max;
    Ok(FrequencyGrid { omegas })
}

impl FrequencyGrid {
    /// The default band `[1e-4, pi/T]` with the given density.
    pub fn for_sampling(ts: f64, points: usize) -> Result<Self, ResponseError> {
        make_grid(OMEGA_FLOOR, nyquist(ts), points)
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn lo(&self) -> f64 {
        self.omegas[0]
    }

    pub fn hi(&self) -> f64 {
        self.omegas[self.omegas.len() - 1]
    }

    /// Whether the grid lies inside `[1e-4, pi/T]` (small rounding slack on top).
    pub fn respects_nyquist(&self, ts: f64) -> bool {
        self.lo() >= OMEGA_FLOOR * (1.0 - 1e-12) && self.hi() <= nyquist(ts) * (1.0 + 1e-12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodeSample {
    pub omega: f64,
    pub mag_db: f64,
    pub phase_deg: f64,
}

/// Bode data of `s^gamma` (differentiator) or `s^-gamma` (integrator).
pub fn ideal_response(gamma: f64, kind: ElementKind, grid: &FrequencyGrid) -> Vec<BodeSample> {
    let sign = kind.sign();
    grid.omegas
        .iter()
        .map(|&omega| BodeSample { omega, mag_db: sign * 20.0 * gamma * omega.log10(), phase_deg: sign * 90.0 * gamma })
        .collect()
}

/// Filter Bode data; grid points at or near a pole are dropped and counted.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterResponse {
    pub samples: Vec<BodeSample>,
    /// Indices into the grid of the retained samples.
    pub indices: Vec<usize>,
    pub excluded: usize,
}

/// Removes 360 degree jumps between neighbours, keeping the first sample.
pub fn unwrap_degrees(phases: &mut [f64]) {
    for i in 1..phases.len() {
        let delta = phases[i] - phases[i - 1];
        if delta.abs() > 180.0 {
            phases[i] -= 360.0 * (delta / 360.0).round();
        }
    }
}

pub fn filter_response(f: &IIRFilter<f64>, grid: &FrequencyGrid) -> FilterResponse {
    let ts = *f.spec().ts();
    let mut samples = Vec::with_capacity(grid.len());
    let mut indices = Vec::with_capacity(grid.len());
    let mut excluded = 0;
    for (i, &omega) in grid.omegas.iter().enumerate() {
        match f.tf().eval_unit_circle(omega, ts) {
            Ok(h) => {
                let mag = h.norm();
                if mag == 0.0 || !mag.is_finite() {
                    excluded += 1;
                    continue;
                }
                samples.push(BodeSample { omega, mag_db: 20.0 * mag.log10(), phase_deg: h.arg().to_degrees() });
                indices.push(i);
            }
            Err(PolyError::NearPole { .. }) => excluded += 1,
            Err(e) => unreachable!("unit-circle evaluation only fails near poles: {e}"),
        }
    }
    let mut phases: Vec<f64> = samples.iter().map(|s| s.phase_deg).collect();
    unwrap_degrees(&mut phases);
    for (s, p) in samples.iter_mut().zip(phases) {
        s.phase_deg = p;
    }
    FilterResponse { samples, indices, excluded }
}

/// Simpson-rule integrator `y(n) = T/3 [x(n) + 4x(n-1) + x(n-2)] + y(n-2)`
/// with zero initial conditions.
pub fn simpson_recurrence(x: &[f64], ts: f64) -> Vec<f64> {
    let k = ts / 3.0;
    let at = |v: &[f64], i: isize| if i < 0 { 0.0 } else { v[i as usize] };
    let mut y = Vec::with_capacity(x.len());
    for n in 0..x.len() as isize {
        let v = k * (at(x, n) + 4.0 * at(x, n - 1) + at(x, n - 2)) + at(&y, n - 2);
        y.push(v);
    }
    y
}
