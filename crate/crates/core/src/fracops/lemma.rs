//! Numerical verifiers for the coercivity/duality properties of the
//! fractional derivative and its origin limit, evaluated on baskets of
//! smooth sampled signals.

use super::{duality_pairing, seminorm_sq, FractionalOrder, ScalarSignal};
use crate::error::Result;
use crate::special::gamma;
use std::f64::consts::PI;

/// Coercivity constant c_α = cos(απ/2)/π^α · |α|^{−α}/(1−α)^{1−α}.
pub fn c_alpha(alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 1.0;
    }
    let cos = (alpha * PI / 2.0).cos();
    let a = alpha.abs();
    cos / PI.powf(alpha) * a.powf(-alpha) / (1.0 - alpha).powf(1.0 - alpha)
}

/// Duality constant d_α = 1/cos(απ/2).
pub fn d_alpha(alpha: f64) -> f64 {
    1.0 / (alpha * PI / 2.0).cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaProperty {
    /// (i)  |v|²_α ≥ c_α T^α ∫ v²
    Coercivity,
    /// (ii)  ∫ v w ≤ d_α |v|_α |w|_{−α}
    ProductDuality,
    /// (iii) ∫ v B_α w ≤ d_α |v|_α |w|_α
    DerivativeDuality,
    /// (iv)  ∫ (I_{−α} v) w ≤ d_α |v|_{−α} |w|_{−α}
    IntegralDuality,
    /// (v)   lim_{t↓0} ω_{α+2}^{−1}(t) ∫_0^t v B_α v = v²(0)
    OriginLimit,
}

impl LemmaProperty {
    pub fn label(&self) -> &'static str {
        match self {
            LemmaProperty::Coercivity => "(i) coercivity",
            LemmaProperty::ProductDuality => "(ii) product duality",
            LemmaProperty::DerivativeDuality => "(iii) derivative duality",
            LemmaProperty::IntegralDuality => "(iv) integral duality",
            LemmaProperty::OriginLimit => "(v) origin limit",
        }
    }
}

/// Aggregated outcome of one property over the basket.
#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub property: LemmaProperty,
    pub pass: bool,
    /// Smallest inequality margin observed (for (v): tolerance minus the
    /// extrapolation deviation).
    pub min_slack: f64,
    pub cases: usize,
    /// Basket index of the worst case.
    pub worst_case: usize,
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub alpha: f64,
    pub t_final: f64,
    pub results: Vec<PropertyResult>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn result(&self, p: LemmaProperty) -> &PropertyResult {
        self.results.iter().find(|r| r.property == p).unwrap()
    }
}

/// Default smooth basket: polynomials plus trigonometric samples, all with
/// known values at t = 0.
pub fn standard_basket(t_final: f64, cells: usize) -> Vec<ScalarSignal> {
    let polys: [&[f64]; 12] = [
        &[1.0],
        &[1.0, -2.0],
        &[0.0, 1.0],
        &[2.0, 0.0, 1.0],
        &[1.0, 1.0, 1.0],
        &[1.0, 0.0, 0.0, -1.0],
        &[0.5, 1.0, -1.0, 0.25],
        &[3.0, -1.0],
        &[1.0, 2.0],
        &[-1.0, 1.0, 0.5],
        &[2.0, -3.0, 1.0],
        &[0.0, 0.0, 1.0],
    ];
    let mut basket = Vec::new();
    for c in polys {
        let c = c.to_vec();
        basket.push(
            ScalarSignal::from_fn(
                move |t| c.iter().rev().fold(0.0, |acc, ci| acc * t + ci),
                t_final,
                cells,
            )
            .unwrap(),
        );
    }
    for k in 1..=4 {
        let om = k as f64 * PI / t_final;
        basket.push(ScalarSignal::from_fn(move |t| (om * t).sin(), t_final, cells).unwrap());
        basket.push(ScalarSignal::from_fn(move |t| (om * t).cos(), t_final, cells).unwrap());
    }
    basket
}

/// Runs the five property checks on the basket at the given order.
pub fn verify_lemma_properties(
    alpha: FractionalOrder,
    t_final: f64,
    basket: &[ScalarSignal],
) -> Result<LemmaReport> {
    let a = alpha.value();
    let ca = c_alpha(a);
    let da = d_alpha(a);
    let m = basket.len();

    // per-signal seminorms, reused across the pair checks
    let mut sem_a = Vec::with_capacity(m); // |v|²_α
    let mut sem_na = Vec::with_capacity(m); // |v|²_{−α}
    let mut l2 = Vec::with_capacity(m); // ∫ v²
    for v in basket {
        sem_a.push(seminorm_sq(v, a, t_final)?.max(0.0));
        sem_na.push(seminorm_sq(v, -a, t_final)?.max(0.0));
        l2.push(duality_pairing(v, v, 0.0, t_final)?);
    }

    let mut results = Vec::new();

    // (i) coercivity
    {
        let mut min_slack = f64::INFINITY;
        let mut worst = 0;
        for i in 0..m {
            let slack = sem_a[i] - ca * t_final.powf(a) * l2[i];
            if slack < min_slack {
                min_slack = slack;
                worst = i;
            }
        }
        let scale = sem_a.iter().cloned().fold(1e-30, f64::max);
        results.push(PropertyResult {
            property: LemmaProperty::Coercivity,
            pass: min_slack >= -1e-9 * scale,
            min_slack,
            cases: m,
            worst_case: worst,
        });
    }

    // pair list: (v_i, v_i) and (v_i, v_{i+1 mod m})
    let pairs: Vec<(usize, usize)> = (0..m)
        .map(|i| (i, i))
        .chain((0..m).map(|i| (i, (i + 1) % m)))
        .collect();

    // (ii) ∫ v w ≤ d_α |v|_α |w|_{−α}
    {
        let mut min_slack = f64::INFINITY;
        let mut worst = 0;
        for &(i, j) in &pairs {
            let lhs = duality_pairing(&basket[i], &basket[j], 0.0, t_final)?;
            let rhs = da * sem_a[i].sqrt() * sem_na[j].sqrt();
            let slack = rhs - lhs;
            if slack < min_slack {
                min_slack = slack;
                worst = i;
            }
        }
        results.push(PropertyResult {
            property: LemmaProperty::ProductDuality,
            pass: min_slack >= -1e-9,
            min_slack,
            cases: pairs.len(),
            worst_case: worst,
        });
    }

    // (iii) ∫ v B_α w ≤ d_α |v|_α |w|_α
    {
        let mut min_slack = f64::INFINITY;
        let mut worst = 0;
        for &(i, j) in &pairs {
            let lhs = duality_pairing(&basket[i], &basket[j], a, t_final)?;
            let rhs = da * sem_a[i].sqrt() * sem_a[j].sqrt();
            let slack = rhs - lhs;
            if slack < min_slack {
                min_slack = slack;
                worst = i;
            }
        }
        results.push(PropertyResult {
            property: LemmaProperty::DerivativeDuality,
            pass: min_slack >= -1e-9,
            min_slack,
            cases: pairs.len(),
            worst_case: worst,
        });
    }

    // (iv) ∫ (I_{−α} v) w ≤ d_α |v|_{−α} |w|_{−α}
    {
        let mut min_slack = f64::INFINITY;
        let mut worst = 0;
        for &(i, j) in &pairs {
            let lhs = duality_pairing(&basket[j], &basket[i], -a, t_final)?;
            let rhs = da * sem_na[i].sqrt() * sem_na[j].sqrt();
            let slack = rhs - lhs;
            if slack < min_slack {
                min_slack = slack;
                worst = i;
            }
        }
        results.push(PropertyResult {
            property: LemmaProperty::IntegralDuality,
            pass: min_slack >= -1e-9,
            min_slack,
            cases: pairs.len(),
            worst_case: worst,
        });
    }

    // (v) origin limit by Richardson extrapolation over t = T·2^{−m}
    {
        let mut min_slack = f64::INFINITY;
        let mut worst = 0;
        for (i, v) in basket.iter().enumerate() {
            let dev = origin_limit_deviation(v, alpha, t_final)?;
            let v0 = v.samples()[0];
            let vmax = v.samples().iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            let scale = (v0 * v0).max(1e-2 * vmax * vmax).max(1e-30);
            let slack = 0.01 * scale - dev;
            if slack < min_slack {
                min_slack = slack;
                worst = i;
            }
        }
        results.push(PropertyResult {
            property: LemmaProperty::OriginLimit,
            pass: min_slack >= 0.0,
            min_slack,
            cases: m,
            worst_case: worst,
        });
    }

    Ok(LemmaReport {
        alpha: a,
        t_final,
        results,
    })
}

/// |extrapolated limit − v²(0)| for property (v).
pub fn origin_limit_deviation(
    v: &ScalarSignal,
    alpha: FractionalOrder,
    t_final: f64,
) -> Result<f64> {
    let a = alpha.value();
    let mut f_vals = Vec::new();
    for m in 2..=6 {
        let t = t_final / (1 << m) as f64;
        let integral = duality_pairing(v, v, a, t)?;
        let w = t.powf(a + 1.0) / gamma(a + 2.0);
        f_vals.push(integral / w);
    }
    // first-order Richardson: the deviation of F(t) from the limit is O(t)
    let mut extrapolated = 0.0;
    for k in 0..f_vals.len() - 1 {
        extrapolated = 2.0 * f_vals[k + 1] - f_vals[k];
    }
    let v0 = v.samples()[0];
    Ok((extrapolated - v0 * v0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn ord(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn constants_match_closed_forms() {
        // c_{−1/2} = cos(π/4)/π^{−1/2} · 0.5^{0.5}/1.5^{1.5}
        assert_relative_eq!(c_alpha(-0.5), 0.48240178676898910, max_relative = 1e-12);
        assert_relative_eq!(d_alpha(-0.5), 1.0 / (PI / 4.0).cos(), max_relative = 1e-14);
        assert_relative_eq!(c_alpha(0.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(d_alpha(0.0), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn coercivity_example_constant_signal() {
        // v ≡ 1, α = −0.5, T = 1: LHS = 2/√π ≈ 1.12838 ≥ c_α ≈ 0.48240
        let v = ScalarSignal::from_fn(|_| 1.0, 1.0, 2048).unwrap();
        let report = verify_lemma_properties(ord(-0.5), 1.0, &[v]).unwrap();
        let coercivity = report.result(LemmaProperty::Coercivity);
        assert!(coercivity.pass);
        assert_abs_diff_eq!(
            coercivity.min_slack,
            1.1283791670955126 - 0.48240178676898910,
            epsilon = 1e-4
        );
    }

    #[test]
    fn zero_signal_passes_everything() {
        let v = ScalarSignal::from_fn(|_| 0.0, 1.0, 256).unwrap();
        let report = verify_lemma_properties(ord(-0.5), 1.0, &[v]).unwrap();
        assert!(report.all_pass());
    }

    #[test]
    fn standard_basket_passes_at_three_orders() {
        let basket = standard_basket(1.0, 1024);
        assert!(basket.len() >= 20);
        for &a in &[-0.9, -0.5, -0.1] {
            let report = verify_lemma_properties(ord(a), 1.0, &basket).unwrap();
            assert!(report.all_pass(), "alpha = {a}: {:#?}", report.results);
        }
    }

    #[test]
    fn origin_limit_on_polynomials() {
        for &a in &[-0.9, -0.5, -0.1] {
            for (f, v0) in [
                (Box::new(|_t: f64| 1.0) as Box<dyn Fn(f64) -> f64>, 1.0),
                (Box::new(|t: f64| 2.0 - t), 2.0),
                (Box::new(|t: f64| 1.0 + t * t), 1.0),
            ] {
                let v = ScalarSignal::from_fn(&f, 1.0, 2048).unwrap();
                let dev = origin_limit_deviation(&v, ord(a), 1.0).unwrap();
                assert!(
                    dev <= 0.01 * v0 * v0,
                    "alpha={a}, v0={v0}: deviation {dev}"
                );
            }
        }
    }
}
