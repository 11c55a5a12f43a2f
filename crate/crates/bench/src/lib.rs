//! Inputs shared by the benchmarks.

use std::path::PathBuf;

use laborshare_core::data::{align, load_labor_share, load_median_age, synthesize};
use laborshare_core::{CountryDataset, ModelParams, TimeSeries};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// Bundled US labor share aligned with US median age (72 points).
pub fn us_dataset() -> CountryDataset {
    let dir = data_dir();
    let labor =
        load_labor_share(&dir.join("us/labor_share_fed.csv")).expect("bundled US labor share");
    let age = load_median_age(&dir.join("us/median_age.csv")).expect("bundled US median age");
    align(&labor.series, &age.series).expect("bundled US series overlap")
}

/// `len` annual points of a noisy synthetic series on a steadily rising age path.
pub fn synthetic_dataset(len: usize) -> CountryDataset {
    let ages = TimeSeries::new(
        "age",
        (0..len)
            .map(|i| (1900 + i as i32, 30.0 + 15.0 * i as f64 / len as f64))
            .collect(),
    )
    .expect("increasing years");
    let truth = ModelParams::new(0.8, 0.4, 0.03, 30.0).expect("valid");
    synthesize(&truth, &ages, 0.005, 1).expect("valid along the path")
}
