//! Quadrature rules on the reference interval [0,1] and the reference
//! triangle (0,0)-(1,0)-(0,1).

use crate::meshing::Point;

/// Points and weights on a reference simplex; weights sum to the reference
/// measure (1 for the interval, 1/2 for the triangle).
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub points: Vec<Point>,
    pub weights: Vec<f64>,
    pub exactness: usize,
}

/// Gauss–Legendre nodes/weights on [0,1]; exact for degree 2n−1.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        // initial guess on [-1,1], then Newton on P_n
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, t);
            let dt = -p / dp;
            t += dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, t);
        x[n - 1 - i] = 0.5 * (t + 1.0);
        w[n - 1 - i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    (x, w)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl QuadratureRule {
    /// Interval rule with at least the requested polynomial exactness.
    pub fn reference_interval(exactness: usize) -> Self {
        let n = exactness / 2 + 1; // 2n−1 ≥ exactness
        let (x, w) = gauss_legendre(n);
        QuadratureRule {
            points: x.iter().map(|&xi| [xi, 0.0]).collect(),
            weights: w,
            exactness: 2 * n - 1,
        }
    }

    /// Collapsed tensor rule on the reference triangle: Gauss–Legendre in
    /// both directions of the Duffy map x = u(1−v), y = v with the Jacobian
    /// folded into the weights; n points per direction give total-degree
    /// exactness 2n−2.
    pub fn reference_triangle(exactness: usize) -> Self {
        let n = exactness / 2 + 1; // 2n−2 ≥ exactness
        let (xu, wu) = gauss_legendre(n);
        let (xv, wv) = gauss_legendre(n);
        let mut points = Vec::with_capacity(n * n);
        let mut weights = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                points.push([xu[i] * (1.0 - xv[j]), xv[j]]);
                weights.push(wu[i] * wv[j] * (1.0 - xv[j]));
            }
        }
        QuadratureRule {
            points,
            weights,
            exactness: 2 * n - 2,
        }
    }

    /// Rule for a reference simplex of the given dimension.
    pub fn for_simplex(dim: usize, exactness: usize) -> Self {
        match dim {
            1 => Self::reference_interval(exactness),
            2 => Self::reference_triangle(exactness),
            _ => panic!("unsupported dimension {dim}"),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn monomial_integral_interval(a: usize) -> f64 {
        1.0 / (a as f64 + 1.0)
    }

    fn monomial_integral_triangle(a: usize, b: usize) -> f64 {
        // ∫_T x^a y^b = a! b! / (a+b+2)!
        let fact = |n: usize| (1..=n).map(|k| k as f64).product::<f64>().max(1.0);
        fact(a) * fact(b) / fact(a + b + 2)
    }

    #[test]
    fn interval_rule_weight_sum_and_exactness() {
        for exactness in 1..=9 {
            let q = QuadratureRule::reference_interval(exactness);
            let sum: f64 = q.weights.iter().sum();
            assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-14);
            for a in 0..=q.exactness {
                let got: f64 = q
                    .points
                    .iter()
                    .zip(&q.weights)
                    .map(|(p, w)| w * p[0].powi(a as i32))
                    .sum();
                assert_abs_diff_eq!(got, monomial_integral_interval(a), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn triangle_rule_weight_sum_and_exactness() {
        for exactness in [2usize, 4, 6, 8] {
            let q = QuadratureRule::reference_triangle(exactness);
            let sum: f64 = q.weights.iter().sum();
            assert_abs_diff_eq!(sum, 0.5, epsilon = 1e-14);
            for total in 0..=q.exactness {
                for a in 0..=total {
                    let b = total - a;
                    let got: f64 = q
                        .points
                        .iter()
                        .zip(&q.weights)
                        .map(|(p, w)| w * p[0].powi(a as i32) * p[1].powi(b as i32))
                        .sum();
                    assert_abs_diff_eq!(
                        got,
                        monomial_integral_triangle(a, b),
                        epsilon = 1e-13
                    );
                }
            }
        }
    }

    #[test]
    fn gauss_legendre_high_order_nodes_in_bounds() {
        let (x, w) = gauss_legendre(12);
        assert!(x.iter().all(|&xi| xi > 0.0 && xi < 1.0));
        assert!(w.iter().all(|&wi| wi > 0.0));
        assert_abs_diff_eq!(w.iter().sum::<f64>(), 1.0, epsilon = 1e-14);
    }
}
