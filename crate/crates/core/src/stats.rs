//! Error metrics, regressions, and the labor-share vs cognitive-aging
//! correlation analysis.

use serde::{Deserialize, Serialize};

use crate::data::{CognitionRecord, TimeSeries};
use crate::error::{Error, Result};

/// Band width, in years, between the 50-59 and 70-79 age groups.
pub const AGE_BAND_GAP_YEARS: f64 = 20.0;

/// Root mean squared difference over identical year sets.
pub fn rmse(observed: &TimeSeries, predicted: &TimeSeries) -> Result<f64> {
    if observed.is_empty() {
        return Err(Error::Mismatch("empty series".into()));
    }
    if !observed.years().eq(predicted.years()) {
        return Err(Error::Mismatch(format!(
            "{} and {} cover different years",
            observed.label, predicted.label
        )));
    }
    let sum: f64 = observed
        .values()
        .zip(predicted.values())
        .map(|(o, p)| (o - p).powi(2))
        .sum();
    Ok((sum / observed.len() as f64).sqrt())
}

/// Least-squares line of value on year: `(slope per year, intercept)`.
pub fn ols_slope(series: &TimeSeries) -> Result<(f64, f64)> {
    let n = series.len() as f64;
    if series.len() < 2 {
        return Err(Error::Degenerate(format!(
            "{}: need at least 2 points",
            series.label
        )));
    }
    let mean_x = series.years().map(f64::from).sum::<f64>() / n;
    let mean_y = series.values().sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(year, value) in series.points() {
        let dx = f64::from(year) - mean_x;
        sxx += dx * dx;
        sxy += dx * (value - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::Degenerate(format!(
            "{}: all years equal",
            series.label
        )));
    }
    let slope = sxy / sxx;
    Ok((slope, mean_y - slope * mean_x))
}

/// How a fitted labor-share drop is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DeclineMode {
    /// Percentage points of labor share.
    #[default]
    Points,
    /// Percent of the fitted value at the window start.
    Relative,
}

impl std::str::FromStr for DeclineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "points" => Ok(DeclineMode::Points),
            "relative" => Ok(DeclineMode::Relative),
            other => Err(Error::Domain(format!(
                "unknown decline mode `{other}` (points|relative)"
            ))),
        }
    }
}

/// Inclusive year window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub start: i32,
    pub end: i32,
}

impl Window {
    pub fn new(start: i32, end: i32) -> Result<Self> {
        if start >= end {
            return Err(Error::Domain(format!(
                "window start {start} must precede end {end}"
            )));
        }
        Ok(Self { start, end })
    }

    pub fn length(&self) -> f64 {
        f64::from(self.end - self.start)
    }
}

/// Fitted total drop of `labor_share` (fractions) across `window`, from the
/// OLS line through the points inside it.
pub fn labor_share_decline(
    labor_share: &TimeSeries,
    window: Window,
    mode: DeclineMode,
) -> Result<f64> {
    let inside = labor_share.window(window.start, window.end);
    if inside.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "{}: {} points inside {}-{}",
            labor_share.label,
            inside.len(),
            window.start,
            window.end
        )));
    }
    let (slope, intercept) = ols_slope(&inside)?;
    let drop = -slope * window.length();
    match mode {
        DeclineMode::Points => Ok(drop * 100.0),
        DeclineMode::Relative => {
            let start_level = intercept + slope * f64::from(window.start);
            if start_level <= 0.0 {
                return Err(Error::Degenerate(
                    "fitted start level is not positive".into(),
                ));
            }
            Ok(drop / start_level * 100.0)
        }
    }
}

/// Percent decline in word recall from the 50s band to the 70s band.
pub fn cognitive_band_decline(cog: &CognitionRecord) -> Result<f64> {
    if !(cog.score_50s.is_finite() && cog.score_50s > 0.0) {
        return Err(Error::Domain(format!(
            "{}: score_50s must be > 0, got {}",
            cog.country, cog.score_50s
        )));
    }
    Ok(100.0 * (cog.score_50s - cog.score_70s) / cog.score_50s)
}

/// Median-age increase times the per-year rate of cognitive decline.
pub fn aggregate_cognitive_decline(age_increase: f64, cog: &CognitionRecord) -> Result<f64> {
    if !age_increase.is_finite() {
        return Err(Error::Domain(format!(
            "age increase must be finite, got {age_increase}"
        )));
    }
    Ok(age_increase * cognitive_band_decline(cog)? / AGE_BAND_GAP_YEARS)
}

fn check_pair(x: &[f64], y: &[f64], min: usize) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Mismatch(format!(
            "lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < min {
        return Err(Error::Degenerate(format!(
            "need at least {min} points, got {}",
            x.len()
        )));
    }
    Ok(())
}

/// Pearson correlation coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y, 2)?;
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Degenerate("zero variance".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Least-squares slope with the intercept fixed at zero.
pub fn regression_through_origin(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y, 1)?;
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("all x are zero".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    Ok(sxy / sxx)
}

/// One point of the labor-share vs cognitive-decline comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeclineRecord {
    pub country: String,
    pub source: String,
    pub labor_share_decline_pp: f64,
    pub median_age_increase: f64,
    /// Word-recall decline from the 50s to the 70s, percent.
    pub cognitive_band_decline_pct: f64,
    /// Aggregate cognitive performance decline, percent.
    pub cognitive_decline_pct: f64,
    pub window: Window,
    pub outlier: bool,
}

/// Builds a record from a country's labor share, median age, and cognition.
/// The median-age increase is read at the window's end years, which must
/// both be present in `ages`.
pub fn decline_record(
    country: &str,
    source: &str,
    labor_share: &TimeSeries,
    ages: &TimeSeries,
    cog: &CognitionRecord,
    window: Window,
    mode: DeclineMode,
) -> Result<DeclineRecord> {
    let age_at = |year| {
        ages.get(year)
            .ok_or_else(|| Error::InsufficientData(format!("{country}: no median age for {year}")))
    };
    let median_age_increase = age_at(window.end)? - age_at(window.start)?;
    Ok(DeclineRecord {
        country: country.to_string(),
        source: source.to_string(),
        labor_share_decline_pp: labor_share_decline(labor_share, window, mode)?,
        median_age_increase,
        cognitive_band_decline_pct: cognitive_band_decline(cog)?,
        cognitive_decline_pct: aggregate_cognitive_decline(median_age_increase, cog)?,
        window,
        outlier: false,
    })
}

/// Correlations of labor-share decline against one explanatory variable,
/// with and without the supplementary-source records.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationPair {
    pub with_supplementary: f64,
    pub without_supplementary: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig10Summary {
    /// Records with outlier flags set; excluded ones are kept, flagged.
    pub records: Vec<DeclineRecord>,
    /// Origin-regression slope of labor decline on aggregate cognitive decline.
    pub slope: f64,
    pub aggregate: CorrelationPair,
    pub median_age: CorrelationPair,
    pub cognition: CorrelationPair,
}

pub const MIN_FIG10_RECORDS: usize = 3;

/// Flags `exclude`d countries as outliers, then regresses and correlates the
/// rest. Records whose source equals `supplementary_source` are dropped
/// for the "without" variants.
pub fn fig10_analysis(
    records: &[DeclineRecord],
    exclude: &[String],
    supplementary_source: &str,
) -> Result<Fig10Summary> {
    let records: Vec<DeclineRecord> = records
        .iter()
        .cloned()
        .map(|mut r| {
            r.outlier = exclude.iter().any(|e| e.eq_ignore_ascii_case(&r.country));
            r
        })
        .collect();
    let kept: Vec<&DeclineRecord> = records.iter().filter(|r| !r.outlier).collect();
    let primary: Vec<&DeclineRecord> = kept
        .iter()
        .copied()
        .filter(|r| r.source != supplementary_source)
        .collect();
    for (set, what) in [
        (&kept, "after exclusion"),
        (&primary, "without supplementary source"),
    ] {
        if set.len() < MIN_FIG10_RECORDS {
            return Err(Error::InsufficientData(format!(
                "{} records {what}, need at least {MIN_FIG10_RECORDS}",
                set.len()
            )));
        }
    }

    let column = |set: &[&DeclineRecord], f: fn(&DeclineRecord) -> f64| -> Vec<f64> {
        set.iter().map(|r| f(r)).collect()
    };
    let pair = |f: fn(&DeclineRecord) -> f64| -> Result<CorrelationPair> {
        Ok(CorrelationPair {
            with_supplementary: pearson(
                &column(&kept, |r| r.labor_share_decline_pp),
                &column(&kept, f),
            )?,
            without_supplementary: pearson(
                &column(&primary, |r| r.labor_share_decline_pp),
                &column(&primary, f),
            )?,
        })
    };
    let slope = regression_through_origin(
        &column(&kept, |r| r.cognitive_decline_pct),
        &column(&kept, |r| r.labor_share_decline_pp),
    )?;
    Ok(Fig10Summary {
        slope,
        aggregate: pair(|r| r.cognitive_decline_pct)?,
        median_age: pair(|r| r.median_age_increase)?,
        cognition: pair(|r| r.cognitive_band_decline_pct)?,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ts(points: &[(i32, f64)]) -> TimeSeries {
        TimeSeries::new("s", points.to_vec()).unwrap()
    }

    fn cog(s50: f64, s70: f64) -> CognitionRecord {
        CognitionRecord {
            country: "X".into(),
            score_50s: s50,
            score_70s: s70,
            year_basis: "avg 2006,2010".into(),
        }
    }

    // Independent closed forms, evaluated by hand and with mpmath.
    const RMSE_3_4: f64 = 0.035_355_339_059_327_38;
    const ORIGIN_SLOPE: f64 = 38.0 / 14.0;
    const COG_EXAMPLE: f64 = 2.978_723_404_255_319;

    #[test]
    fn rmse_examples() {
        let a = ts(&[(2000, 0.5), (2001, 0.4), (2002, 0.45)]);
        assert_eq!(rmse(&a, &a).unwrap(), 0.0);
        let shifted = ts(&[(2000, 0.52), (2001, 0.42), (2002, 0.47)]);
        assert!((rmse(&a, &shifted).unwrap() - 0.02).abs() < 1e-12);
        let obs = ts(&[(2000, 0.5), (2001, 0.5)]);
        let pred = ts(&[(2000, 0.53), (2001, 0.46)]);
        assert!((rmse(&obs, &pred).unwrap() - RMSE_3_4).abs() < 1e-9);
    }

    #[test]
    fn rmse_year_mismatch() {
        let a = ts(&[(2000, 0.5), (2001, 0.4)]);
        let b = ts(&[(2000, 0.5), (2002, 0.4)]);
        assert!(matches!(rmse(&a, &b), Err(Error::Mismatch(_))));
    }

    #[test]
    fn ols_examples() {
        assert_eq!(ols_slope(&ts(&[(0, 0.0), (1, 1.0)])).unwrap(), (1.0, 0.0));
        assert_eq!(
            ols_slope(&ts(&[(0, 0.3), (5, 0.3), (9, 0.3)])).unwrap().0,
            0.0
        );
        let (slope, intercept) = ols_slope(&ts(&[(0, 0.0), (1, 2.0), (2, 3.0)])).unwrap();
        assert!((slope - 1.5).abs() < 1e-12);
        assert!((intercept - 1.0 / 6.0).abs() < 1e-12);
        assert!(matches!(
            ols_slope(&ts(&[(0, 1.0)])),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn decline_examples() {
        let window = Window::new(1970, 2012).unwrap();
        let line = ts(&(1970..=2012)
            .map(|y| (y, 0.50 - 0.08 * f64::from(y - 1970) / 42.0))
            .collect::<Vec<_>>());
        assert!(
            (labor_share_decline(&line, window, DeclineMode::Points).unwrap() - 8.0).abs() < 1e-12
        );
        assert!(
            (labor_share_decline(&line, window, DeclineMode::Relative).unwrap() - 16.0).abs()
                < 1e-10
        );
        let flat = ts(&(1970..=2012).map(|y| (y, 0.6)).collect::<Vec<_>>());
        assert_eq!(
            labor_share_decline(&flat, window, DeclineMode::Points).unwrap(),
            0.0
        );
        let sparse = ts(&[(1960, 0.5), (1971, 0.5), (2020, 0.4)]);
        assert!(matches!(
            labor_share_decline(&sparse, window, DeclineMode::Points),
            Err(Error::InsufficientData(_))
        ));
        assert!(Window::new(2012, 1970).is_err());
    }

    #[test]
    fn cognitive_examples() {
        assert_eq!(
            aggregate_cognitive_decline(0.0, &cog(10.0, 7.5)).unwrap(),
            0.0
        );
        assert!((aggregate_cognitive_decline(8.0, &cog(10.0, 7.5)).unwrap() - 10.0).abs() < 1e-12);
        assert!(
            (aggregate_cognitive_decline(4.0, &cog(9.4, 8.0)).unwrap() - COG_EXAMPLE).abs() < 1e-9
        );
        assert!(aggregate_cognitive_decline(4.0, &cog(0.0, 8.0)).is_err());
    }

    #[test]
    fn pearson_examples() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[6.0, 4.0, 2.0]).unwrap() + 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap() - 0.5).abs() < 1e-9);
        assert!(matches!(
            pearson(&[1.0, 1.0], &[1.0, 2.0]),
            Err(Error::Degenerate(_))
        ));
        assert!(pearson(&[1.0, 2.0], &[1.0]).is_err());
    }

    #[test]
    fn origin_regression_examples() {
        assert_eq!(
            regression_through_origin(&[1.0, 2.0], &[2.0, 4.0]).unwrap(),
            2.0
        );
        assert_eq!(regression_through_origin(&[1.0], &[0.0]).unwrap(), 0.0);
        let s = regression_through_origin(&[1.0, 2.0, 3.0], &[2.0, 3.0, 10.0]).unwrap();
        assert!((s - ORIGIN_SLOPE).abs() < 1e-9);
        assert!(regression_through_origin(&[0.0, 0.0], &[1.0, 2.0]).is_err());
    }

    fn record(country: &str, source: &str, ls: f64, age: f64, band: f64) -> DeclineRecord {
        DeclineRecord {
            country: country.into(),
            source: source.into(),
            labor_share_decline_pp: ls,
            median_age_increase: age,
            cognitive_band_decline_pct: band,
            cognitive_decline_pct: age * band / 20.0,
            window: Window::new(1970, 2012).unwrap(),
            outlier: false,
        }
    }

    fn sample_records() -> Vec<DeclineRecord> {
        vec![
            record("A", "fed", 6.0, 9.0, 21.0),
            record("A", "klems", 4.0, 9.0, 21.0),
            record("B", "klems", 12.0, 16.0, 21.0),
            record("C", "klems", 9.0, 11.0, 22.0),
            record("D", "klems", 3.0, 6.0, 24.0),
            record("Spain", "klems", 20.0, 2.0, 33.0),
        ]
    }

    #[test]
    fn fig10_exclusion_is_flagged_not_dropped() {
        let summary = fig10_analysis(&sample_records(), &["spain".into()], "fed").unwrap();
        assert_eq!(summary.records.len(), 6);
        assert!(summary.records[5].outlier);
        assert!(summary.records[..5].iter().all(|r| !r.outlier));
        let kept: Vec<&DeclineRecord> = summary.records.iter().filter(|r| !r.outlier).collect();
        let x: Vec<f64> = kept.iter().map(|r| r.cognitive_decline_pct).collect();
        let y: Vec<f64> = kept.iter().map(|r| r.labor_share_decline_pp).collect();
        assert_eq!(summary.slope, regression_through_origin(&x, &y).unwrap());
        assert_eq!(
            summary.aggregate.with_supplementary,
            pearson(&y, &x).unwrap()
        );
        let again = fig10_analysis(&sample_records(), &["spain".into()], "fed").unwrap();
        assert_eq!(summary, again);
    }

    #[test]
    fn fig10_needs_three() {
        let err = fig10_analysis(
            &sample_records(),
            &["B".into(), "C".into(), "Spain".into()],
            "fed",
        )
        .unwrap_err();
        assert!(matches!(err, Error::InsufficientData(_)));
    }

    proptest! {
        #[test]
        fn pearson_affine_invariant(
            data in proptest::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..30),
            a in 0.1f64..10.0, b in -50.0f64..50.0,
        ) {
            let x: Vec<f64> = data.iter().map(|p| p.0).collect();
            let y: Vec<f64> = data.iter().map(|p| p.1).collect();
            if let Ok(r) = pearson(&x, &y) {
                let xt: Vec<f64> = x.iter().map(|v| a * v + b).collect();
                prop_assert!((pearson(&xt, &y).unwrap() - r).abs() <= 1e-12);
            }
        }

        #[test]
        fn origin_recovers_scale(x in proptest::collection::vec(-100.0f64..100.0, 1..30), c in -10.0f64..10.0) {
            prop_assume!(x.iter().any(|v| *v != 0.0));
            let y: Vec<f64> = x.iter().map(|v| c * v).collect();
            let s = regression_through_origin(&x, &y).unwrap();
            prop_assert!((s - c).abs() <= 1e-12 * c.abs().max(1.0));
        }

        #[test]
        fn rmse_symmetric_and_triangle(
            vals in proptest::collection::vec((0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0), 1..40)
        ) {
            let mk = |f: fn(&(f64, f64, f64)) -> f64| {
                TimeSeries::new("s", vals.iter().enumerate().map(|(i, v)| (2000 + i as i32, f(v))).collect()).unwrap()
            };
            let (a, b, c) = (mk(|v| v.0), mk(|v| v.1), mk(|v| v.2));
            prop_assert_eq!(rmse(&a, &b).unwrap(), rmse(&b, &a).unwrap());
            prop_assert!(rmse(&a, &c).unwrap() <= rmse(&a, &b).unwrap() + rmse(&b, &c).unwrap() + 1e-12);
        }

        #[test]
        fn linear_series_decline_exact(start in 0.3f64..0.8, drop in -0.2f64..0.2, s in 1950i32..1990, len in 5i32..60) {
            let w = Window::new(s, s + len).unwrap();
            let series = TimeSeries::new("s", (s..=s + len)
                .map(|y| (y, start - drop * f64::from(y - s) / f64::from(len))).collect()).unwrap();
            let got = labor_share_decline(&series, w, DeclineMode::Points).unwrap();
            prop_assert!((got - drop * 100.0).abs() <= 1e-10);
        }

        #[test]
        fn aggregate_linear_in_age(a in -20.0f64..20.0, b in -20.0f64..20.0, s50 in 1.0f64..20.0, s70 in 0.5f64..20.0) {
            let c = cog(s50, s70);
            let sum = aggregate_cognitive_decline(a + b, &c).unwrap();
            let parts = aggregate_cognitive_decline(a, &c).unwrap() + aggregate_cognitive_decline(b, &c).unwrap();
            prop_assert!((sum - parts).abs() <= 1e-9);
        }
    }
}
