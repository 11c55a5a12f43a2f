//! Closed-form layer of the long-tail model.
//!
//! Tasks are ranked by output; the cumulative output share of the top `r`
//! rank fraction is `r^n`. Automation covers `[0, a]`, so labor keeps
//! `1 - a^n`. In dynamic equilibrium `a = sigma / delta`, and the ratio is
//! attenuated by median age as `r0 / (1 - k (mu - mu0))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fitted model parameters plus the baseline median age.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Long-tail exponent.
    pub n: f64,
    /// Baseline innovation ratio sigma0 / delta0.
    pub r0: f64,
    /// Age-attenuation coefficient, per year of median age.
    pub k: f64,
    /// Baseline median age in years.
    pub mu0: f64,
}

impl ModelParams {
    pub fn new(n: f64, r0: f64, k: f64, mu0: f64) -> Result<Self> {
        let params = Self { n, r0, k, mu0 };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n.is_finite() && self.n > 0.0) {
            return Err(Error::Domain(format!(
                "exponent n must be > 0, got {}",
                self.n
            )));
        }
        if !(self.r0.is_finite() && self.r0 > 0.0 && self.r0 <= 1.0) {
            return Err(Error::Domain(format!(
                "r0 must lie in (0, 1], got {}",
                self.r0
            )));
        }
        if !(self.k.is_finite() && self.k >= 0.0) {
            return Err(Error::Domain(format!("k must be >= 0, got {}", self.k)));
        }
        if !self.mu0.is_finite() {
            return Err(Error::Domain(format!(
                "mu0 must be finite, got {}",
                self.mu0
            )));
        }
        Ok(())
    }

    /// `1 - k (mu - mu0)`, failing when it is not strictly positive.
    pub fn attenuation(&self, mu: f64) -> Result<f64> {
        let denominator = 1.0 - self.k * (mu - self.mu0);
        if denominator > 0.0 {
            Ok(denominator)
        } else {
            Err(Error::Singularity { mu, denominator })
        }
    }
}

/// Supply (`sigma`) and demand (`delta`) innovation rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnovationRates {
    pub sigma: f64,
    pub delta: f64,
}

impl InnovationRates {
    pub fn new(sigma: f64, delta: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::Domain(format!("sigma must be >= 0, got {sigma}")));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::Domain(format!("delta must be > 0, got {delta}")));
        }
        Ok(Self { sigma, delta })
    }

    /// Equilibrium automation fraction.
    pub fn ratio(&self) -> f64 {
        self.sigma / self.delta
    }
}

/// One product in a demand mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductLine {
    pub price: f64,
    pub unit_labor_share: f64,
    pub demand_weight: f64,
}

impl ProductLine {
    pub fn new(price: f64, unit_labor_share: f64, demand_weight: f64) -> Self {
        Self {
            price,
            unit_labor_share,
            demand_weight,
        }
    }
}

/// Cumulative output share `r^n` of tasks ranked in `[0, r]`.
pub fn cumulative_output_share(r: f64, n: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!(
            "rank fraction must lie in [0, 1], got {r}"
        )));
    }
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::Domain(format!("exponent n must be > 0, got {n}")));
    }
    Ok(r.powf(n))
}

/// `sigma / delta` at median age `mu`.
pub fn attenuated_ratio(params: &ModelParams, mu: f64) -> Result<f64> {
    params.validate()?;
    let denominator = params.attenuation(mu)?;
    Ok(params.r0 / denominator)
}

/// Labor share `1 - (sigma/delta)^n` in dynamic equilibrium at median age `mu`.
pub fn equilibrium_labor_share(params: &ModelParams, mu: f64) -> Result<f64> {
    let ratio = attenuated_ratio(params, mu)?;
    if ratio > 1.0 {
        return Err(Error::Range { mu, ratio });
    }
    Ok(1.0 - ratio.powf(params.n))
}

/// Demand-weighted labor share of a product mixture:
/// `sum(w * s * p) / sum(w * p)`.
pub fn mixture_labor_share(lines: &[ProductLine]) -> Result<f64> {
    if lines.is_empty() {
        return Err(Error::Domain("product mixture is empty".into()));
    }
    for line in lines {
        if !(line.price.is_finite() && line.price > 0.0) {
            return Err(Error::Domain(format!(
                "price must be > 0, got {}",
                line.price
            )));
        }
        if !(0.0..=1.0).contains(&line.unit_labor_share) {
            return Err(Error::Domain(format!(
                "unit labor share must lie in [0, 1], got {}",
                line.unit_labor_share
            )));
        }
        if !(0.0..=1.0).contains(&line.demand_weight) {
            return Err(Error::Domain(format!(
                "demand weight must lie in [0, 1], got {}",
                line.demand_weight
            )));
        }
    }
    let weight_sum: f64 = lines.iter().map(|l| l.demand_weight).sum();
    if (weight_sum - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "demand weights sum to {weight_sum}, expected 1"
        )));
    }
    let wages: f64 = lines
        .iter()
        .map(|l| l.demand_weight * l.unit_labor_share * l.price)
        .sum();
    let revenue: f64 = lines.iter().map(|l| l.demand_weight * l.price).sum();
    Ok(wages / revenue)
}
