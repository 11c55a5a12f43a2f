//! Multi-run SGD estimation of `(n, r0, k)` from a [`CountryDataset`].
//!
//! Each run starts from a uniform random draw, takes `iterations` epochs of
//! shuffled per-point updates on the squared residual, and projects the
//! parameters back into the valid region after every update. Parameters are
//! averaged componentwise over runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{CountryDataset, Observation, TimeSeries};
use crate::error::{Error, Result};
use crate::model::{equilibrium_labor_share, ModelParams};
use crate::stats;

pub const DEFAULT_SEED: u64 = 42;
/// Upper bound of the exponent box.
pub const MAX_EXPONENT: f64 = 10.0;
/// Upper bound for `k` when no median age exceeds the baseline.
pub const MAX_ATTENUATION: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    /// Epochs per run.
    pub iterations: usize,
    pub runs: usize,
    pub learning_rate: f64,
    pub seed: u64,
    pub init_low: f64,
    pub init_high: f64,
    pub projection_margin: f64,
    /// Run the `k` coordinate in units of the data's median-age span.
    pub scale_attenuation: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            iterations: 100,
            runs: 20,
            learning_rate: 0.05,
            seed: DEFAULT_SEED,
            init_low: 0.0,
            init_high: 1.0,
            projection_margin: 1e-6,
            scale_attenuation: true,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Domain("iterations must be >= 1".into()));
        }
        if self.runs == 0 {
            return Err(Error::Domain("runs must be >= 1".into()));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::Domain(format!(
                "learning rate must be > 0, got {}",
                self.learning_rate
            )));
        }
        if !(self.init_low.is_finite()
            && self.init_high.is_finite()
            && self.init_low < self.init_high)
        {
            return Err(Error::Domain(format!(
                "init interval [{}, {}] is empty",
                self.init_low, self.init_high
            )));
        }
        if !(self.projection_margin > 0.0 && self.projection_margin < 0.5) {
            return Err(Error::Domain(format!(
                "projection margin must lie in (0, 0.5), got {}",
                self.projection_margin
            )));
        }
        Ok(())
    }
}

/// Partial derivatives with respect to `(n, r0, k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gradient {
    pub n: f64,
    pub r0: f64,
    pub k: f64,
}

impl Gradient {
    fn scaled(self, s: f64) -> Self {
        Self {
            n: self.n * s,
            r0: self.r0 * s,
            k: self.k * s,
        }
    }

    /// Each component divided by `max(1, |component|)`.
    pub fn normalized(self) -> Self {
        let f = |g: f64| g / g.abs().max(1.0);
        Self {
            n: f(self.n),
            r0: f(self.r0),
            k: f(self.k),
        }
    }
}

/// Model minus observation at median age `mu`.
pub fn residual(params: &ModelParams, mu: f64, observed: f64) -> Result<f64> {
    Ok(equilibrium_labor_share(params, mu)? - observed)
}

/// Gradient of the modelled labor share itself.
pub fn share_gradient(params: &ModelParams, mu: f64) -> Result<Gradient> {
    params.validate()?;
    let g = 1.0 / params.attenuation(mu)?;
    let ratio = params.r0 * g;
    let a = ratio.powf(params.n);
    Ok(Gradient {
        n: -a * ratio.ln(),
        r0: -params.n * a / params.r0,
        k: -params.n * a * (mu - params.mu0) * g,
    })
}

/// Gradient of the squared residual at one observation.
pub fn gradient(params: &ModelParams, mu: f64, observed: f64) -> Result<Gradient> {
    let r = residual(params, mu, observed)?;
    Ok(share_gradient(params, mu)?.scaled(2.0 * r))
}

/// Mean squared residual over the observations.
pub fn mse(params: &ModelParams, observations: &[Observation]) -> Result<f64> {
    let mut total = 0.0;
    for obs in observations {
        let r = residual(params, obs.median_age, obs.labor_share)?;
        total += r * r;
    }
    Ok(total / observations.len() as f64)
}

/// Box-and-coupling projection keeping every evaluation on the data valid:
/// `n in [eps, 10]`, `r0 in [eps, 1]`, `k in [0, (1 - r0) / span]`, where
/// `span` is the largest `mu - mu0` in the data. The `k` cap implies both
/// `1 - k (mu - mu0) >= r0 >= eps` and an automation fraction of at most 1.
#[derive(Debug, Clone, Copy)]
struct Projection {
    margin: f64,
    span: f64,
}

impl Projection {
    fn new(observations: &[Observation], mu0: f64, margin: f64) -> Self {
        let span = observations
            .iter()
            .map(|o| o.median_age - mu0)
            .fold(0.0, f64::max);
        Self { margin, span }
    }

    fn k_cap(&self, r0: f64) -> f64 {
        if self.span <= 0.0 {
            return MAX_ATTENUATION;
        }
        let cap = ((1.0 - r0) / self.span * (1.0 - 1e-9)).clamp(0.0, MAX_ATTENUATION);
        // rounding in 1 - k * span can still push the ratio a ulp past 1
        if r0 / (1.0 - cap * self.span) > 1.0 {
            0.0
        } else {
            cap
        }
    }

    /// Returns true when any component moved.
    fn apply(&self, params: &mut ModelParams) -> bool {
        let before = *params;
        params.n = clamp_finite(params.n, self.margin, MAX_EXPONENT);
        params.r0 = clamp_finite(params.r0, self.margin, 1.0);
        params.k = clamp_finite(params.k, 0.0, self.k_cap(params.r0));
        *params != before
    }
}

fn clamp_finite(v: f64, lo: f64, hi: f64) -> f64 {
    if v.is_nan() {
        lo
    } else {
        v.clamp(lo, hi)
    }
}

/// Result of one SGD run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub params: ModelParams,
    /// MSE after each epoch.
    pub loss_history: Vec<f64>,
    pub projections: usize,
}

fn check_data(data: &CountryDataset) -> Result<(Vec<Observation>, f64)> {
    let observations = data.observations();
    if observations.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{}: {} aligned points, need at least 3",
            data.country,
            observations.len()
        )));
    }
    let mu0 = data.baseline_median_age().expect("non-empty");
    Ok((observations, mu0))
}

/// One SGD run from a random start drawn with `rng`.
pub fn fit_single_run<R: Rng + ?Sized>(
    data: &CountryDataset,
    config: &FitConfig,
    rng: &mut R,
) -> Result<RunOutcome> {
    config.validate()?;
    let (observations, mu0) = check_data(data)?;
    let projection = Projection::new(&observations, mu0, config.projection_margin);
    let mut draw = || rng.random_range(config.init_low..config.init_high);
    let mut params = ModelParams {
        n: draw(),
        r0: draw(),
        k: draw(),
        mu0,
    };
    let mut projections = usize::from(projection.apply(&mut params));

    let k_scale = if config.scale_attenuation && projection.span > 0.0 {
        projection.span
    } else {
        1.0
    };

    let mut order: Vec<usize> = (0..observations.len()).collect();
    let mut loss_history = Vec::with_capacity(config.iterations);
    for epoch in 0..config.iterations {
        order.shuffle(rng);
        for &i in &order {
            let obs = &observations[i];
            let mut grad = gradient(&params, obs.median_age, obs.labor_share)?;
            grad.k /= k_scale;
            let grad = grad.normalized();
            params.n -= config.learning_rate * grad.n;
            params.r0 -= config.learning_rate * grad.r0;
            params.k -= config.learning_rate * grad.k / k_scale;
            if !(params.n.is_finite() && params.r0.is_finite() && params.k.is_finite()) {
                return Err(Error::NonFiniteLoss { epoch });
            }
            projections += usize::from(projection.apply(&mut params));
        }
        let loss = mse(&params, &observations)?;
        if !loss.is_finite() {
            return Err(Error::NonFiniteLoss { epoch });
        }
        loss_history.push(loss);
    }
    Ok(RunOutcome {
        params,
        loss_history,
        projections,
    })
}

/// Non-fatal events collected during a fit.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FitWarnings {
    pub projections: usize,
    /// `(run index, error message)` for runs that failed.
    pub failed_runs: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub per_run_params: Vec<ModelParams>,
    pub averaged_params: ModelParams,
    /// One row per successful run, one entry per epoch.
    pub loss_history: Vec<Vec<f64>>,
    pub rmse: f64,
    pub fitted_series: TimeSeries,
    pub warnings: FitWarnings,
}

/// Generator for run `index`: the configured seed, stream `index`.
pub fn run_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn average_params(params: &[ModelParams]) -> ModelParams {
    let count = params.len() as f64;
    let mean = |f: fn(&ModelParams) -> f64| params.iter().map(f).sum::<f64>() / count;
    ModelParams {
        n: mean(|p| p.n),
        r0: mean(|p| p.r0),
        k: mean(|p| p.k),
        mu0: params[0].mu0,
    }
}

/// Model predictions for every aligned year of `data`.
pub fn fitted_series(params: &ModelParams, data: &CountryDataset) -> Result<TimeSeries> {
    let points = data
        .observations()
        .iter()
        .map(|o| Ok((o.year, equilibrium_labor_share(params, o.median_age)?)))
        .collect::<Result<Vec<_>>>()?;
    TimeSeries::new(format!("{} fitted", data.country), points)
}

/// Runs `config.runs` independent SGD runs and averages their parameters.
/// Fails only when every run fails.
pub fn fit(data: &CountryDataset, config: &FitConfig) -> Result<FitResult> {
    config.validate()?;
    check_data(data)?;
    let outcomes: Vec<Result<RunOutcome>> = (0..config.runs)
        .into_par_iter()
        .map(|index| fit_single_run(data, config, &mut run_rng(config.seed, index)))
        .collect();

    let mut warnings = FitWarnings::default();
    let mut per_run_params = Vec::new();
    let mut loss_history = Vec::new();
    let mut first_error = None;
    for (index, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(run) => {
                warnings.projections += run.projections;
                per_run_params.push(run.params);
                loss_history.push(run.loss_history);
            }
            Err(err) => {
                warnings.failed_runs.push((index, err.to_string()));
                first_error.get_or_insert(err);
            }
        }
    }
    if per_run_params.is_empty() {
        return Err(Error::AllRunsFailed {
            runs: config.runs,
            first: Box::new(first_error.expect("at least one run")),
        });
    }

    let averaged_params = average_params(&per_run_params);
    let fitted = fitted_series(&averaged_params, data)?;
    let rmse = stats::rmse(&data.labor_share, &fitted)?;
    Ok(FitResult {
        per_run_params,
        averaged_params,
        loss_history,
        rmse,
        fitted_series: fitted,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{synthesize, TimeSeries};

    const US_SHARE_AT_BASELINE: f64 = 0.490_540_619_362_795_9;

    fn us() -> ModelParams {
        ModelParams::new(0.786, 0.424, 0.0175, 30.0).unwrap()
    }

    fn rising_ages(n: usize) -> TimeSeries {
        TimeSeries::new(
            "a",
            (0..n)
                .map(|i| (1970 + i as i32, 30.0 + 0.25 * i as f64))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn residual_examples() {
        let exact = ModelParams::new(0.5, 0.25, 0.0, 30.0).unwrap();
        assert_eq!(residual(&exact, 41.0, 0.5).unwrap(), 0.0);
        let r = residual(&us(), 30.0, 0.491).unwrap();
        assert!((r - (US_SHARE_AT_BASELINE - 0.491)).abs() < 1e-12);
        let model = equilibrium_labor_share(&us(), 36.0).unwrap();
        assert_eq!(residual(&us(), 36.0, model).unwrap(), 0.0);
    }

    #[test]
    fn gradient_examples() {
        let g = share_gradient(&ModelParams::new(0.8, 0.4, 0.0, 30.0).unwrap(), 30.0).unwrap();
        assert_eq!(g.k, 0.0);
        let g = share_gradient(&ModelParams::new(1.0, 0.5, 0.0, 30.0).unwrap(), 42.0).unwrap();
        assert!((g.r0 + 1.0).abs() < 1e-15);
    }

    #[test]
    fn normalization_caps_magnitude() {
        let g = Gradient {
            n: 3.0,
            r0: -0.5,
            k: -8.0,
        }
        .normalized();
        assert_eq!((g.n, g.r0, g.k), (1.0, -0.5, -1.0));
    }

    #[test]
    fn projection_keeps_ratio_valid() {
        let obs: Vec<Observation> = (0..10)
            .map(|i| Observation {
                year: 2000 + i,
                median_age: 30.0 + i as f64,
                labor_share: 0.5,
            })
            .collect();
        let proj = Projection::new(&obs, 30.0, 1e-6);
        let mut p = ModelParams {
            n: 12.0,
            r0: 0.9,
            k: 0.5,
            mu0: 30.0,
        };
        assert!(proj.apply(&mut p));
        assert_eq!(p.n, MAX_EXPONENT);
        assert!((p.k - 0.1 / 9.0).abs() < 1e-10);
        for o in &obs {
            assert!(equilibrium_labor_share(&p, o.median_age).is_ok());
        }
        let mut q = ModelParams {
            n: -1.0,
            r0: 1.5,
            k: -0.1,
            mu0: 30.0,
        };
        proj.apply(&mut q);
        assert_eq!((q.n, q.r0, q.k), (1e-6, 1.0, 0.0));
        let mut ok = ModelParams {
            n: 0.8,
            r0: 0.4,
            k: 0.01,
            mu0: 30.0,
        };
        assert!(!proj.apply(&mut ok));
    }

    #[test]
    fn too_few_points() {
        let ages = rising_ages(3);
        let data = synthesize(&us(), &ages, 0.0, 1).unwrap();
        let mut small = data.clone();
        small.labor_share = TimeSeries::new("l", data.labor_share.points()[..2].to_vec()).unwrap();
        small.median_age = TimeSeries::new("a", data.median_age.points()[..2].to_vec()).unwrap();
        let err = fit_single_run(&small, &FitConfig::default(), &mut run_rng(1, 0)).unwrap_err();
        assert!(matches!(err, Error::InsufficientData(_)));
        assert!(fit(&small, &FitConfig::default()).is_err());
    }

    #[test]
    fn loss_history_shape_and_averaging() {
        let data = synthesize(&us(), &rising_ages(30), 0.0, 1).unwrap();
        let config = FitConfig {
            iterations: 7,
            runs: 4,
            ..FitConfig::default()
        };
        let result = fit(&data, &config).unwrap();
        assert_eq!(result.loss_history.len(), 4);
        assert!(result.loss_history.iter().all(|row| row.len() == 7));
        let mean_n = result.per_run_params.iter().map(|p| p.n).sum::<f64>() / 4.0;
        assert!((result.averaged_params.n - mean_n).abs() < 1e-12);
        assert_eq!(result.averaged_params.mu0, 30.0);
        assert!(result.rmse >= 0.0);
        assert_eq!(result.fitted_series.len(), 30);
    }

    #[test]
    fn invalid_config_rejected() {
        let data = synthesize(&us(), &rising_ages(10), 0.0, 1).unwrap();
        for bad in [
            FitConfig {
                iterations: 0,
                ..FitConfig::default()
            },
            FitConfig {
                runs: 0,
                ..FitConfig::default()
            },
            FitConfig {
                learning_rate: 0.0,
                ..FitConfig::default()
            },
            FitConfig {
                init_low: 1.0,
                init_high: 1.0,
                ..FitConfig::default()
            },
        ] {
            assert!(matches!(fit(&data, &bad), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn huge_learning_rate_still_projected() {
        // Projection keeps parameters finite even with absurd steps.
        let data = synthesize(&us(), &rising_ages(20), 0.0, 1).unwrap();
        let config = FitConfig {
            learning_rate: 1e6,
            runs: 2,
            iterations: 5,
            ..FitConfig::default()
        };
        let result = fit(&data, &config).unwrap();
        assert!(result.warnings.projections > 0);
    }
}
