//! Explicit-Euler integration of `da/dt = sigma - a * delta`.

use crate::data::TimeSeries;
use crate::error::{Error, Result};
use crate::model::{attenuated_ratio, InnovationRates, ModelParams};

/// Where the innovation rates come from at each step.
#[derive(Debug, Clone, PartialEq)]
pub enum RateSource {
    /// Constant rates; `exponent` is the long-tail `n` used for labor share.
    Fixed {
        rates: InnovationRates,
        exponent: f64,
    },
    /// `sigma / delta` follows the median-age attenuation along `ages`,
    /// with `delta` held at `reference_delta`. Simulation time 0 is the
    /// first year of `ages`.
    AgePath {
        params: ModelParams,
        ages: TimeSeries,
        reference_delta: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub a_init: f64,
    pub dt: f64,
    pub horizon: f64,
    pub rates: RateSource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub a_values: Vec<f64>,
    pub labor_share_values: Vec<f64>,
    /// Steps whose raw Euler update left [0, 1] and was clamped.
    pub clamp_events: usize,
}

impl Trajectory {
    pub fn final_a(&self) -> f64 {
        *self.a_values.last().expect("trajectory is never empty")
    }

    pub fn final_labor_share(&self) -> f64 {
        *self
            .labor_share_values
            .last()
            .expect("trajectory is never empty")
    }

    /// `time,a,labor_share` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time,a,labor_share\n");
        for ((t, a), s) in self
            .times
            .iter()
            .zip(&self.a_values)
            .zip(&self.labor_share_values)
        {
            out.push_str(&format!("{t},{a},{s}\n"));
        }
        out
    }
}

fn check_stability(rates: &InnovationRates, dt: f64) -> Result<()> {
    let product = dt * rates.delta;
    if product >= 1.0 {
        return Err(Error::Stability { product });
    }
    Ok(())
}

/// One Euler step. No clamping happens here.
pub fn step(a: f64, rates: &InnovationRates, dt: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Domain(format!(
            "automation fraction must lie in [0, 1], got {a}"
        )));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Domain(format!("dt must be > 0, got {dt}")));
    }
    check_stability(rates, dt)?;
    Ok(a + dt * (rates.sigma - a * rates.delta))
}

impl RateSource {
    fn rates_at(&self, t: f64) -> Result<InnovationRates> {
        match self {
            RateSource::Fixed { rates, .. } => Ok(*rates),
            RateSource::AgePath {
                params,
                ages,
                reference_delta,
            } => {
                let start = ages
                    .points()
                    .first()
                    .ok_or_else(|| Error::Domain("median-age path is empty".into()))?
                    .0 as f64;
                let mu = ages.interpolate(start + t).expect("non-empty path");
                let ratio = attenuated_ratio(params, mu)?;
                InnovationRates::new(ratio * reference_delta, *reference_delta)
            }
        }
    }

    fn exponent(&self) -> f64 {
        match self {
            RateSource::Fixed { exponent, .. } => *exponent,
            RateSource::AgePath { params, .. } => params.n,
        }
    }
}

fn validate(config: &SimConfig) -> Result<()> {
    if !(0.0..=1.0).contains(&config.a_init) {
        return Err(Error::Domain(format!(
            "a_init must lie in [0, 1], got {}",
            config.a_init
        )));
    }
    if !(config.dt.is_finite() && config.dt > 0.0) {
        return Err(Error::Domain(format!("dt must be > 0, got {}", config.dt)));
    }
    if !(config.horizon.is_finite() && config.horizon > 0.0) {
        return Err(Error::Domain(format!(
            "horizon must be > 0, got {}",
            config.horizon
        )));
    }
    let n = config.rates.exponent();
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::Domain(format!("exponent must be > 0, got {n}")));
    }
    if let RateSource::AgePath {
        params,
        ages,
        reference_delta,
    } = &config.rates
    {
        params.validate()?;
        if ages.is_empty() {
            return Err(Error::Domain("median-age path is empty".into()));
        }
        InnovationRates::new(0.0, *reference_delta)?;
    }
    Ok(())
}

/// Runs `round(horizon / dt)` Euler steps (at least one).
pub fn simulate(config: &SimConfig) -> Result<Trajectory> {
    validate(config)?;
    let steps = ((config.horizon / config.dt).round() as usize).max(1);
    let n = config.rates.exponent();
    let mut times = Vec::with_capacity(steps + 1);
    let mut a_values = Vec::with_capacity(steps + 1);
    let mut a = config.a_init;
    let mut clamp_events = 0;
    times.push(0.0);
    a_values.push(a);
    for i in 0..steps {
        let t = i as f64 * config.dt;
        let rates = config.rates.rates_at(t)?;
        let next = step(a, &rates, config.dt)?;
        a = if (0.0..=1.0).contains(&next) {
            next
        } else {
            clamp_events += 1;
            next.clamp(0.0, 1.0)
        };
        times.push((i + 1) as f64 * config.dt);
        a_values.push(a);
    }
    let labor_share_values = a_values.iter().map(|a| 1.0 - a.powf(n)).collect();
    Ok(Trajectory {
        times,
        a_values,
        labor_share_values,
        clamp_events,
    })
}
