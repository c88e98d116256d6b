//! Natural cubic spline on uniformly spaced abscissae.

/// Cubic spline with uniform spacing, natural boundary conditions.
#[derive(Debug, Clone)]
pub struct UniformCubicSpline {
    x0: f64,
    dx: f64,
    values: Vec<f64>,
    second_derivs: Vec<f64>,
}

impl UniformCubicSpline {
    pub fn new(x0: f64, dx: f64, values: Vec<f64>) -> Self {
        let n = values.len();
        assert!(n >= 3, "spline needs at least 3 points");
        assert!(dx > 0.0);
        // Natural BC: m[0] = m[n-1] = 0. Interior unknowns satisfy
        //   m[i-1] + 4 m[i] + m[i+1] = 6 (v[i+1] - 2 v[i] + v[i-1]) / dx²
        // solved by the Thomas algorithm.
        let mut m = vec![0.0_f64; n];
        let mut rhs = vec![0.0_f64; n];
        for i in 1..n - 1 {
            rhs[i] = 6.0 * (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (dx * dx);
        }
        let mut c_prime = vec![0.0_f64; n];
        let mut d_prime = vec![0.0_f64; n];
        c_prime[1] = 0.25;
        d_prime[1] = rhs[1] / 4.0;
        for i in 2..n - 1 {
            let denom = 4.0 - c_prime[i - 1];
            c_prime[i] = 1.0 / denom;
            d_prime[i] = (rhs[i] - d_prime[i - 1]) / denom;
        }
        m[n - 2] = d_prime[n - 2];
        for i in (1..n - 2).rev() {
            m[i] = d_prime[i] - c_prime[i] * m[i + 1];
        }
        Self {
            x0,
            dx,
            values,
            second_derivs: m,
        }
    }

    /// Evaluates the spline, clamping outside the abscissa range.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let s = (x - self.x0) / self.dx;
        if s <= 0.0 {
            return self.values[0];
        }
        if s >= (n - 1) as f64 {
            return self.values[n - 1];
        }
        let i = (s as usize).min(n - 2);
        let a = (i + 1) as f64 - s;
        let b = s - i as f64;
        let h2 = self.dx * self.dx;
        a * self.values[i]
            + b * self.values[i + 1]
            + ((a * a * a - a) * self.second_derivs[i]
                + (b * b * b - b) * self.second_derivs[i + 1])
                * h2
                / 6.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_smooth_function() {
        let n = 2001;
        let x0 = 0.0;
        let dx = 1.0 / (n - 1) as f64;
        let values: Vec<f64> = (0..n).map(|i| ((x0 + i as f64 * dx) * 3.0).sin()).collect();
        let s = UniformCubicSpline::new(x0, dx, values);
        for k in 0..200 {
            let x = 0.01 + 0.98 * k as f64 / 199.0;
            let exact = (3.0 * x).sin();
            // natural boundary conditions leave a small O(h²) layer at the ends
            let tol = if (0.1..=0.9).contains(&x) { 1e-10 } else { 1e-8 };
            assert!((s.eval(x) - exact).abs() < tol, "x = {x}");
        }
    }

    #[test]
    fn interpolates_nodes_exactly() {
        let values = vec![1.0, -2.0, 0.5, 3.0, 7.0];
        let s = UniformCubicSpline::new(2.0, 0.5, values.clone());
        for (i, v) in values.iter().enumerate() {
            assert_eq!(s.eval(2.0 + 0.5 * i as f64), *v);
        }
    }
}
