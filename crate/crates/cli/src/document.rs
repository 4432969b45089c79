use std::fmt::Display;
use std::str::FromStr;

use fracdisc::{ElementKind, Family, GeneratingFunction, IIRFilter, Polynomial, RationalFn, RealizationSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";
pub const VARIABLE: &str = "z^-1 ascending";

/// A realized filter plus the spec that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterDocument {
    pub schema_version: String,
    pub variable: String,
    #[serde(with = "by_name")]
    pub family: Family,
    /// Absent for the pure families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub gamma: f64,
    #[serde(with = "by_name")]
    pub kind: ElementKind,
    pub order: usize,
    pub ts: f64,
    pub num: Vec<f64>,
    pub den: Vec<f64>,
    pub stability: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// How `optimize` arrived at `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub w: f64,
    pub norm: String,
    pub points: usize,
    pub band: [f64; 2],
    pub alpha_opt: f64,
    pub j: f64,
    pub j_mag: f64,
    pub j_phase: f64,
    pub excluded: usize,
    pub alpha_nominal: f64,
    pub j_nominal: f64,
    pub seed: u64,
    pub population: usize,
    pub generations: usize,
    pub evaluations: usize,
    pub history: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleCheck {
    pub step: f64,
    pub alpha_grid: f64,
    pub j_grid: f64,
    pub delta_alpha: f64,
    pub agrees: bool,
}

impl FilterDocument {
    pub fn from_filter(f: &IIRFilter, stability: &str) -> Self {
        let spec = f.spec();
        let gf = spec.gf();
        Self {
            schema_version: SCHEMA_VERSION.into(),
            variable: VARIABLE.into(),
            family: gf.family(),
            alpha: gf.family().is_interpolated().then(|| *gf.alpha()),
            gamma: *spec.gamma(),
            kind: spec.kind(),
            order: spec.order(),
            ts: *spec.ts(),
            num: f.tf().num().coeffs().to_vec(),
            den: f.tf().den().coeffs().to_vec(),
            stability: stability.into(),
            provenance: None,
        }
    }

    /// Rebuilds the filter with the stored coefficients untouched.
    pub fn to_filter(&self) -> Result<IIRFilter, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::usage(format!("unsupported schema_version '{}'", self.schema_version)));
        }
        if self.variable != VARIABLE {
            return Err(CliError::usage(format!("unsupported variable '{}'", self.variable)));
        }
        let bad = |e: fracdisc::PolyError| CliError::usage(format!("bad coefficients: {e}"));
        let num = Polynomial::new(self.num.clone()).map_err(bad)?;
        let den = Polynomial::new(self.den.clone()).map_err(bad)?;
        let tf = RationalFn::new(num, den).map_err(bad)?;
        let gf = GeneratingFunction::new(self.family, self.alpha.unwrap_or(0.0), self.ts)
            .map_err(|e| CliError::usage(e.to_string()))?;
        let spec = RealizationSpec::new(self.gamma, self.kind, self.order, gf)?;
        Ok(IIRFilter::new(tf, spec))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid filter document: {e}")))
    }

    /// `power,num,den`, one row per power of `z^-1`.
    pub fn to_csv(&self) -> String {
        let cell = |c: &[f64], k: usize| c.get(k).map(|&v| number(v)).unwrap_or_default();
        let mut s = String::from("power,num,den\n");
        for k in 0..self.num.len().max(self.den.len()) {
            s.push_str(&format!("{k},{},{}\n", cell(&self.num, k), cell(&self.den, k)));
        }
        s
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn number(v: f64) -> String {
    ryu::Buffer::new().format(v).to_owned()
}

/// Serializes through `Display` and `FromStr`.
mod by_name {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr<Err = String>,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}
