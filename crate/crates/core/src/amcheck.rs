//! The Assmus-Mattson sufficient condition for codewords to hold t-designs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lincode::WeightDistribution;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AmError {
    #[error("strength t = {t} must be below the minimum distance d = {d}")]
    InvalidStrength { t: usize, d: usize },
    #[error("distributions do not describe a code and its dual: {0}")]
    NotDual(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmReport {
    pub t: usize,
    pub d: usize,
    pub d_dual: usize,
    /// Number of nonzero dual weights `i` with `0 < i <= v - t`.
    pub s: usize,
    /// `s <= d - t`.
    pub holds: bool,
}

pub fn assmus_mattson(wd: &WeightDistribution, dual_wd: &WeightDistribution, t: usize) -> Result<AmReport, AmError> {
    let n = wd.length();
    if dual_wd.length() != n || wd.dimension() + dual_wd.dimension() != n {
        return Err(AmError::NotDual(format!(
            "[{n}, {}] and [{}, {}]",
            wd.dimension(),
            dual_wd.length(),
            dual_wd.dimension()
        )));
    }
    let d = wd.min_nonzero_weight().unwrap_or(n + 1);
    if t >= d {
        return Err(AmError::InvalidStrength { t, d });
    }
    let d_dual = dual_wd.min_nonzero_weight().unwrap_or(n + 1);
    let s = dual_wd.counts().keys().filter(|&&i| i > 0 && i + t <= n).count();
    Ok(AmReport { t, d, d_dual, s, holds: s <= d - t })
}
