//! Discrete-time realizations of fractional-order differentiators and
//! integrators `s^±gamma`.
//!
//! A generating function maps `s` to a rational function of `x = z^-1`. Its
//! fractional power is expanded as a power series and truncated to a diagonal
//! continued-fraction convergent, giving an IIR filter. The interpolation
//! weight of the Al-Alaoui and Chen-Vinagre families can be tuned with a
//! seeded genetic algorithm against a weighted magnitude/phase objective.
//!
//! The algebraic layers ([`poly`], [`genfunc`], [`cfe`]) are generic over
//! [`Scalar`]; the frequency-domain layers work on `f64`.

pub mod cfe;
pub mod dd;
pub mod genfunc;
pub mod objective;
pub mod optimize;
pub mod poly;
pub mod response;
pub mod scalar;
pub mod stability;

pub use cfe::{realize, realize_in, CfeError, ContinuedFraction, PowerSeries, RealizationSpec};
pub use dd::DoubleDouble;
pub use genfunc::{ElementKind, Family, GenFuncError};
pub use objective::{evaluate, evaluate_alpha, Norm, ObjectiveConfig, ObjectiveError, ObjectiveValue, RealizationBase};
pub use optimize::{ga_minimize, grid_search, optimize_alpha, GAConfig, OptimizationResult, OptimizeError};
pub use poly::{Normalization, PolyError};
pub use response::{BodeSample, FrequencyGrid};
pub use scalar::{Real, Scalar};
pub use stability::{analyze, invert, reflect_unstable_poles, Classification, StabilityReport};

pub type Polynomial = poly::Polynomial<f64>;
pub type RationalFn = poly::RationalFn<f64>;
pub type GeneratingFunction = genfunc::GeneratingFunction<f64>;
pub type IIRFilter = cfe::IIRFilter<f64>;
pub type Spec = cfe::RealizationSpec<f64>;

pub type Polynomial32 = poly::Polynomial<f32>;
pub type RationalFn32 = poly::RationalFn<f32>;
pub type IIRFilter32 = cfe::IIRFilter<f32>;
