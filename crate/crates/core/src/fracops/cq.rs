//! Convolution-quadrature weights for the time-fractional derivative.
//!
//! Backward-Euler generating function: the coefficients of (1−ζ)^{−α}
//! scaled by dt^α give weights w_j with Σ_j w_j v^{n−j} ≈ B_α v(t_n),
//! first-order accurate away from t = 0.

use super::FractionalOrder;
use crate::error::{Error, Result};

/// Discrete convolution weights for B_α on a uniform step dt.
#[derive(Debug, Clone)]
pub struct CQWeights {
    pub dt: f64,
    pub order: FractionalOrder,
    /// Coefficients of (1−ζ)^{−α}: g_0 = 1, g_j = g_{j−1} (j−1+α)/j.
    pub g: Vec<f64>,
    /// Scaled weights w_j = dt^α g_j.
    pub w: Vec<f64>,
}

impl CQWeights {
    /// Σ_{j=0}^{n} w_j v[n−j]; `v` must hold at least n+1 samples.
    pub fn apply(&self, v: &[f64], n: usize) -> f64 {
        (0..=n).map(|j| self.w[j] * v[n - j]).sum()
    }
}

/// Weights for steps 0..=n.
pub fn cq_weights(alpha: FractionalOrder, dt: f64, n: usize) -> Result<CQWeights> {
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "time step must be positive, got {dt}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one step".into()));
    }
    let a = alpha.value();
    let mut g = Vec::with_capacity(n + 1);
    g.push(1.0);
    for j in 1..=n {
        let jf = j as f64;
        g.push(g[j - 1] * (jf - 1.0 + a) / jf);
    }
    let scale = dt.powf(a);
    let w = g.iter().map(|gj| scale * gj).collect();
    Ok(CQWeights {
        dt,
        order: alpha,
        g,
        w,
    })
}
