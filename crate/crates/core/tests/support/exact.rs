//! Exact-arithmetic reference realization.
//!
//! Shares no code with the library: operands are written out from the mixing
//! definitions, the fractional power is `exp(gamma * log h)` on exact rational
//! series, and the Padé system is solved by exact Gaussian elimination. Only
//! the scalar prefactor `g0^gamma` is applied in `f64`.

#![allow(dead_code)]

use fracdisc::{ElementKind, Family};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(x: f64) -> Q {
    BigRational::from_float(x).expect("finite")
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    let len = a.len().max(b.len());
    (0..len).map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero)).collect()
}

fn scale(a: &[Q], k: &Q) -> Vec<Q> {
    a.iter().map(|c| c * k).collect()
}

/// Integrator `(num, den)` in ascending powers of `x`, before any normalization.
pub fn integrator(family: Family, alpha: f64, ts: f64) -> (Vec<Q>, Vec<Q>) {
    let t = q(ts);
    let a = q(alpha);
    let one_minus_a = Q::one() - &a;
    // over (1 - x)
    let euler = vec![t.clone()];
    let tustin = scale(&[qi(1), qi(1)], &(&t / qi(2)));
    // over (1 - x^2)
    let simpson = scale(&[qi(1), qi(4), qi(1)], &(&t / qi(3)));
    let tustin2 = scale(&[qi(1), qi(2), qi(1)], &(&t / qi(2)));
    let den1 = vec![qi(1), qi(-1)];
    let den2 = vec![qi(1), qi(0), qi(-1)];
    match family {
        Family::Euler => (euler, den1),
        Family::Tustin => (tustin, den1),
        Family::Simpson => (simpson, den2),
        Family::AlAlaoui => (add(&scale(&euler, &a), &scale(&tustin, &one_minus_a)), den1),
        Family::ChenVinagre => (add(&scale(&simpson, &a), &scale(&tustin2, &one_minus_a)), den2),
    }
}

pub fn operand(family: Family, alpha: f64, ts: f64, kind: ElementKind) -> (Vec<Q>, Vec<Q>) {
    let (n, d) = integrator(family, alpha, ts);
    match kind {
        ElementKind::Integrator => (n, d),
        ElementKind::Differentiator => (d, n),
    }
}

/// Taylor coefficients of `num / den`.
pub fn divide(num: &[Q], den: &[Q], len: usize) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num.get(k).cloned().unwrap_or_else(Q::zero);
        for j in 1..=k.min(den.len() - 1) {
            acc -= &den[j] * &out[k - j];
        }
        out.push(acc / &den[0]);
    }
    out
}

/// `h^gamma` for a series with `h[0] = 1`, as `exp(gamma * log h)`.
pub fn power_unit(h: &[Q], gamma: &Q) -> Vec<Q> {
    assert!(h[0].is_one());
    let len = h.len();
    // h * l' = h'
    let mut l = vec![Q::zero(); len];
    for k in 1..len {
        let mut acc = qi(k as i64) * &h[k];
        for j in 1..k {
            acc -= qi(j as i64) * &l[j] * &h[k - j];
        }
        l[k] = acc / qi(k as i64);
    }
    let y: Vec<Q> = l.iter().map(|c| c * gamma).collect();
    // e' = y' e
    let mut e = vec![Q::one(); 1];
    for k in 1..len {
        let mut acc = Q::zero();
        for j in 1..=k {
            acc += qi(j as i64) * &y[j] * &e[k - j];
        }
        e.push(acc / qi(k as i64));
    }
    e
}

/// Exact `[n/n]` Padé approximant `(p, q)` with `q[0] = 1`; `None` when singular.
pub fn pade(c: &[Q], n: usize) -> Option<(Vec<Q>, Vec<Q>)> {
    let at = |k: isize| if k < 0 { Q::zero() } else { c[k as usize].clone() };
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let k = (n + 1 + r) as isize;
            let mut row: Vec<Q> = (1..=n).map(|j| at(k - j as isize)).collect();
            row.push(-at(k));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for k in col..=n {
                    let v = &f * &m[col][k];
                    m[r][k] -= v;
                }
            }
        }
    }
    let mut den = vec![Q::one()];
    den.extend((0..n).map(|r| &m[r][n] / &m[r][r]));
    let num = (0..=n).map(|k| (0..=k).fold(Q::zero(), |acc, j| acc + &den[j] * at((k - j) as isize))).collect();
    Some((num, den))
}

/// Reference `[n/n]` realization of `R^gamma`, coefficients normalized by `den[0]`.
pub fn realize(
    family: Family,
    alpha: f64,
    gamma: f64,
    kind: ElementKind,
    n: usize,
    ts: f64,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let (num, den) = operand(family, alpha, ts, kind);
    let g = divide(&num, &den, 2 * n + 1);
    let g0 = g[0].clone();
    let h: Vec<Q> = g.iter().map(|c| c / &g0).collect();
    let c = power_unit(&h, &q(gamma));
    let (p, d) = pade(&c, n)?;
    let gain = g0.to_f64()?.powf(gamma);
    Some((p.iter().map(|v| v.to_f64().unwrap() * gain).collect(), d.iter().map(|v| v.to_f64().unwrap()).collect()))
}

/// Exact series of `R^gamma` normalized to `c[0] = 1`, for checking interpolation order.
pub fn unit_series(family: Family, alpha: f64, gamma: f64, kind: ElementKind, len: usize, ts: f64) -> Vec<f64> {
    let (num, den) = operand(family, alpha, ts, kind);
    let g = divide(&num, &den, len);
    let g0 = g[0].clone();
    let h: Vec<Q> = g.iter().map(|c| c / &g0).collect();
    power_unit(&h, &q(gamma)).iter().map(|v| v.to_f64().unwrap()).collect()
}

/// `|a - b| <= tol * |b|`; entries of `b` that vanish relative to its largest
/// entry are compared against that largest entry instead.
pub fn coeffs_close(a: &[f64], b: &[f64], tol: f64) -> Result<(), String> {
    let a = trim(a);
    let b = trim(b);
    if a.len() != b.len() {
        return Err(format!("length {} vs {}: {a:?} vs {b:?}", a.len(), b.len()));
    }
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        let reference = if y.abs() <= 1e-12 * scale { scale } else { y.abs() };
        if (x - y).abs() > tol * reference {
            return Err(format!("coefficient {i}: {x} vs {y} (rel {:.3e})", ((x - y) / y).abs()));
        }
    }
    Ok(())
}

fn trim(v: &[f64]) -> Vec<f64> {
    let max = v.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut out = v.to_vec();
    while out.len() > 1 && out.last().unwrap().abs() <= 1e-12 * max {
        out.pop();
    }
    out
}
