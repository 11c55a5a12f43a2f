//! Long-tail labor-share model.
//!
//! - [`model`]: output-share curve, age attenuation, equilibrium labor share.
//! - [`dynamics`]: Euler integration of the automation-fraction dynamic.
//! - [`fitter`]: multi-run SGD estimation of `(n, r0, k)`.
//! - [`data`]: CSV ingestion, alignment, synthetic datasets.
//! - [`stats`]: RMSE, OLS, Pearson, origin regression, cognitive decline.

pub mod data;
pub mod dynamics;
pub mod error;
pub mod fitter;
pub mod model;
pub mod stats;

pub use data::{CognitionRecord, CountryDataset, TimeSeries};
pub use dynamics::{RateSource, SimConfig, Trajectory};
pub use error::{Error, Result};
pub use fitter::{FitConfig, FitResult};
pub use model::{InnovationRates, ModelParams, ProductLine};
pub use stats::{DeclineMode, DeclineRecord, Window};
