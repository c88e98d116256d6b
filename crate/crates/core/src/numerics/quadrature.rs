//! Quadrature: composite rules on the exponential grid and an adaptive
//! Gauss–Kronrod rule for free-form integrands.

use super::grid::RadialGrid;
use super::NumericsError;

/// Integral value with a conservative absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
}

// 15-point Kronrod / 7-point Gauss pair (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_gauss = WG[3] * f_center;
    let mut res_kronrod = WGK[7] * f_center;
    let mut res_abs = WGK[7] * f_center.abs();
    let mut fv = [0.0_f64; 15];
    fv[7] = f_center;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = res_kronrod * half;
    let mut err = ((res_kronrod - res_gauss) * half).abs();
    res_asc *= half.abs();
    res_abs *= half.abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * 1.0_f64.min((200.0 * err / res_asc).powf(1.5));
    }
    let round_floor = 50.0 * f64::EPSILON * res_abs;
    if round_floor > err {
        err = round_floor;
    }
    (value, err, res_abs)
}

const MAX_ADAPTIVE_DEPTH: usize = 48;
const MAX_ADAPTIVE_PANELS: usize = 40_000;

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol_abs: f64,
    depth: usize,
    out: &mut QuadratureResult,
    panels: &mut usize,
    failed: &mut bool,
) {
    let (v, e, res_abs) = kronrod_panel(f, a, b);
    *panels += 1;
    // a panel whose error estimate sits at the roundoff floor cannot be
    // improved by splitting
    let at_roundoff = e <= 128.0 * f64::EPSILON * res_abs;
    if e <= tol_abs
        || at_roundoff
        || depth >= MAX_ADAPTIVE_DEPTH
        || *panels >= MAX_ADAPTIVE_PANELS
    {
        if e > tol_abs && !at_roundoff {
            *failed = true;
        }
        out.value += v;
        out.abs_error_estimate += e;
        return;
    }
    let mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol_abs, depth + 1, out, panels, failed);
    adapt(f, mid, b, 0.5 * tol_abs, depth + 1, out, panels, failed);
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Meets `|error| <= rtol*|value| + atol`; on non-convergence the error
/// carries the best estimate so far.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rtol: f64,
    atol: f64,
) -> Result<QuadratureResult, NumericsError> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(NumericsError::InvalidInterval { lo: a, hi: b });
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
        });
    }
    let (rough, _, _) = kronrod_panel(&f, a, b);
    let tol_abs = rtol * rough.abs() + atol;
    let mut out = QuadratureResult {
        value: 0.0,
        abs_error_estimate: 0.0,
    };
    let mut failed = false;
    let mut panels = 0;
    adapt(
        &f,
        a,
        b,
        tol_abs.max(f64::MIN_POSITIVE),
        0,
        &mut out,
        &mut panels,
        &mut failed,
    );
    let final_tol = rtol * out.value.abs() + atol;
    if failed && out.abs_error_estimate > final_tol {
        return Err(NumericsError::QuadratureNonConvergence {
            best_value: out.value,
            abs_error_estimate: out.abs_error_estimate,
        });
    }
    Ok(out)
}

/// ∫ over `[s_lo, s_hi]` (offset units, h = 1) of the degree-4 interpolant
/// through samples at offsets 0..=4. Multiply by the actual spacing h.
pub(crate) fn lagrange5_integral(f: &[f64; 5], s_lo: f64, s_hi: f64) -> f64 {
    let mut total = 0.0;
    for (j, &f_j) in f.iter().enumerate() {
        // L_j(s) = Π_{i≠j} (s - i)/(j - i), expanded to power basis.
        let mut coeffs = [0.0_f64; 5];
        coeffs[0] = 1.0;
        let mut degree = 0;
        let mut denom = 1.0;
        for i in 0..5 {
            if i == j {
                continue;
            }
            denom *= (j as f64) - (i as f64);
            // multiply polynomial by (s - i)
            let mut next = [0.0_f64; 5];
            for (p, &c) in coeffs.iter().enumerate().take(degree + 1) {
                next[p + 1] += c;
                next[p] -= c * i as f64;
            }
            coeffs = next;
            degree += 1;
        }
        let antideriv = |s: f64| -> f64 {
            let mut acc = 0.0;
            let mut s_pow = s;
            for (p, &c) in coeffs.iter().enumerate() {
                s_pow *= if p == 0 { 1.0 } else { s };
                // s_pow = s^{p+1} here
                acc += c * s_pow / (p as f64 + 1.0);
            }
            acc
        };
        total += f_j / denom * (antideriv(s_hi) - antideriv(s_lo));
    }
    total
}

fn composite_in_t(ft: &[f64], h: f64) -> (f64, f64) {
    let m = ft.len() - 1;
    let blocks = m / 4;
    let rem = m % 4;

    // Boole blocks, then the remaining cells from the final 5-point stencil.
    let mut boole = 0.0;
    for b in 0..blocks {
        let i = 4 * b;
        boole += 2.0 * h / 45.0
            * (7.0 * ft[i] + 32.0 * ft[i + 1] + 12.0 * ft[i + 2] + 32.0 * ft[i + 3]
                + 7.0 * ft[i + 4]);
    }
    if rem > 0 {
        let tail: [f64; 5] = ft[ft.len() - 5..].try_into().unwrap();
        boole += h * lagrange5_integral(&tail, (4 - rem) as f64, 4.0);
    }

    // Simpson on the same data, for the error estimate.
    let mut simpson = 0.0;
    let pairs = m / 2;
    for p in 0..pairs {
        let i = 2 * p;
        simpson += h / 3.0 * (ft[i] + 4.0 * ft[i + 1] + ft[i + 2]);
    }
    if m % 2 == 1 {
        let tail: [f64; 5] = ft[ft.len() - 5..].try_into().unwrap();
        simpson += h * lagrange5_integral(&tail, 3.0, 4.0);
    }
    (boole, simpson)
}

/// Integrates samples of f(r) given on the exponential grid:
/// ∫ f dr = ∫ f(r(t)) r(t) dt with uniform t.
pub fn integrate_on_grid(samples: &[f64], grid: &RadialGrid) -> Result<QuadratureResult, NumericsError> {
    integrate_on_grid_range(samples, grid, 0, grid.len() - 1)
}

/// Same as [`integrate_on_grid`] restricted to grid indices `[i_lo, i_hi]`.
pub fn integrate_on_grid_range(
    samples: &[f64],
    grid: &RadialGrid,
    i_lo: usize,
    i_hi: usize,
) -> Result<QuadratureResult, NumericsError> {
    if samples.len() != grid.len() {
        return Err(NumericsError::LengthMismatch {
            expected: grid.len(),
            actual: samples.len(),
        });
    }
    if i_lo >= i_hi || i_hi >= grid.len() || i_hi - i_lo < 8 {
        return Err(NumericsError::InvalidInterval {
            lo: i_lo as f64,
            hi: i_hi as f64,
        });
    }
    let r = grid.points();
    let ft: Vec<f64> = (i_lo..=i_hi).map(|i| samples[i] * r[i]).collect();
    let h = grid.log_step();
    let (boole, simpson) = composite_in_t(&ft, h);
    let scale: f64 = ft.iter().map(|v| v.abs()).sum::<f64>() * h;
    let err = (boole - simpson).abs().max(40.0 * f64::EPSILON * scale);
    Ok(QuadratureResult {
        value: boole,
        abs_error_estimate: err,
    })
}

#[cfg(test)]
mod tests {
    use super::super::grid::make_grid;
    use super::*;

    #[test]
    fn grid_rule_handles_linear_integrand() {
        // ∫_0^1 x dx = 1/2; grid starts at 1e-12 so the missing head is ~5e-25.
        let g = make_grid(1e-12, 1.0, 4001).unwrap();
        let samples: Vec<f64> = g.points().to_vec();
        let q = integrate_on_grid(&samples, &g).unwrap();
        assert!((q.value - 0.5).abs() <= 1e-12, "got {}", q.value);
    }

    #[test]
    fn grid_rule_handles_exponential_decay() {
        // ∫_0^∞ e^(-2r) dr = 1/2.
        let g = make_grid(1e-9, 40.0, 6001).unwrap();
        let samples: Vec<f64> = g.points().iter().map(|&r| (-2.0 * r).exp()).collect();
        let q = integrate_on_grid(&samples, &g).unwrap();
        assert!((q.value - 0.5).abs() <= 1e-9, "got {}", q.value);
    }

    #[test]
    fn grid_rule_works_for_any_point_count_remainder() {
        // cell counts with every remainder mod 4
        for n in [4001usize, 4002, 4003, 4004] {
            let g = make_grid(1e-10, 30.0, n).unwrap();
            let samples: Vec<f64> = g.points().iter().map(|&r| (-r).exp()).collect();
            let q = integrate_on_grid(&samples, &g).unwrap();
            assert!((q.value - 1.0).abs() < 1e-9, "n = {n}: {}", q.value);
        }
    }

    #[test]
    fn range_restriction_matches_closed_form() {
        let g = make_grid(1e-6, 10.0, 4001).unwrap();
        let samples: Vec<f64> = g.points().iter().map(|&r| r * r).collect();
        let i_hi = g.last_index_at_or_below(1.0).unwrap();
        let q = integrate_on_grid_range(&samples, &g, 0, i_hi).unwrap();
        let r_hi = g.points()[i_hi];
        let exact = r_hi.powi(3) / 3.0;
        assert!(((q.value - exact) / exact).abs() < 1e-12);
    }

    #[test]
    fn adaptive_meets_tolerance_on_smooth_integrand() {
        let q = integrate_adaptive(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12, 0.0)
            .unwrap();
        assert!((q.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // ∫_0^1 1/sqrt(x) dx = 2 has an endpoint singularity; shifted off zero.
        let q = integrate_adaptive(|x: f64| 1.0 / (x + 1e-10).sqrt(), 0.0, 1.0, 1e-10, 1e-14)
            .unwrap();
        let exact = 2.0 * ((1.0 + 1e-10_f64).sqrt() - 1e-5);
        assert!(((q.value - exact) / exact).abs() < 1e-8, "got {}", q.value);
    }

    #[test]
    fn error_estimates_are_conservative_on_battery() {
        // Polynomials, exponentials, and logs; exact values account for the
        // grid's [a, b] range. Each (f, F) pair is (integrand, antiderivative).
        let a = 1e-8_f64;
        let b = 5.0_f64;
        type Fn1 = Box<dyn Fn(f64) -> f64>;
        let mut cases: Vec<(Fn1, Fn1)> = vec![
            (Box::new(|_r| 1.0), Box::new(|r| r)),
            (Box::new(|r| r), Box::new(|r| 0.5 * r * r)),
            (Box::new(|r| r * r), Box::new(|r| r * r * r / 3.0)),
            (Box::new(|r: f64| r.powi(3)), Box::new(|r: f64| 0.25 * r.powi(4))),
            (Box::new(|r: f64| r.powi(5)), Box::new(|r: f64| r.powi(6) / 6.0)),
            (Box::new(|r: f64| (-r).exp()), Box::new(|r: f64| -(-r).exp())),
            (
                Box::new(|r: f64| (-2.0 * r).exp()),
                Box::new(|r: f64| -0.5 * (-2.0 * r).exp()),
            ),
            (
                Box::new(|r: f64| r * (-2.0 * r).exp()),
                Box::new(|r: f64| -(-2.0 * r).exp() * (0.5 * r + 0.25)),
            ),
            (
                Box::new(|r: f64| (-3.0 * r).exp() * r * r),
                Box::new(|r: f64| {
                    -(-3.0 * r).exp() * (r * r / 3.0 + 2.0 * r / 9.0 + 2.0 / 27.0)
                }),
            ),
            (
                Box::new(|r: f64| r * r.ln()),
                Box::new(|r: f64| 0.5 * r * r * (r.ln() - 0.5)),
            ),
            (
                Box::new(|r: f64| r * r * r.ln()),
                Box::new(|r: f64| r.powi(3) / 3.0 * (r.ln() - 1.0 / 3.0)),
            ),
        ];
        for k in 1..=9 {
            let p = 0.5 + 0.35 * k as f64;
            cases.push((
                Box::new(move |r: f64| r.powf(p)),
                Box::new(move |r: f64| r.powf(p + 1.0) / (p + 1.0)),
            ));
        }

        let g = make_grid(a, b, 3001).unwrap();
        let mut covered = 0;
        let total = cases.len();
        for (i, (f, antideriv)) in cases.iter().enumerate() {
            let samples: Vec<f64> = g.points().iter().map(|&r| f(r)).collect();
            let exact = antideriv(b) - antideriv(a);
            let q = integrate_on_grid(&samples, &g).unwrap();
            let true_err = (q.value - exact).abs();
            let floor = 1e-13 * exact.abs();
            assert!(
                true_err <= 10.0 * q.abs_error_estimate.max(floor),
                "case {i}: true {true_err:.3e} vs estimate {:.3e}",
                q.abs_error_estimate
            );
            if true_err <= q.abs_error_estimate.max(floor) {
                covered += 1;
            }
        }
        assert!(covered * 100 >= total * 95, "covered {covered}/{total}");
    }

    #[test]
    fn lagrange_subinterval_is_exact_for_quartics() {
        // f(s) = s^4 on offsets 0..4
        let f = [0.0, 1.0, 16.0, 81.0, 256.0];
        let got = lagrange5_integral(&f, 1.5, 4.0);
        let exact = (4.0_f64.powi(5) - 1.5_f64.powi(5)) / 5.0;
        assert!((got - exact).abs() < 1e-10 * exact);
    }
}
