//! The identity-verification suites behind `zetareg verify`.
//!
//! Each suite builds a deterministic list of row closures and evaluates them
//! with rayon; rows are emitted in grid order regardless of completion order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use zetareg::config::EvalConfig;
use zetareg::hurwitz::{hurwitz_zeta, hurwitz_zeta_ds0, lerch_l, lerch_pair_product, log_gamma_unit_integral};
use zetareg::poly::MonicPoly;
use zetareg::regprod::{
    closed_form_quadratic, closed_form_quartic, epsilon_roots, multiplicativity_ratio,
    power_form_lerch_args, regprod_poly, regprod_power_form, Epsilon, StartIndex,
};
use zetareg::series::{
    cot_sum_identity_residual, coth_identity_residual, euler_even_zeta, hurwitz_via_polygamma,
    quartic_identity_residual, sum_digamma, sum_direct, zeta_power_sum, SignConvention,
};
use zetareg::special::trig::{sin_pi, DEFAULT_CLAMP};
use zetareg::special::{gamma, HALF_LOG_TWO_PI, SQRT_TWO_PI};
use zetareg::theta::{
    mellin_regprod_oracle, mellin_zeta, poisson_check_theta2, theta_asymptotic, ThetaSeries,
};

use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    Fast,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Lerch,
    Regprod,
    Series,
    Theta,
}

pub struct SuiteContext {
    pub series_cfg: EvalConfig,
    pub hurwitz_cfg: EvalConfig,
    pub convention: SignConvention,
    pub grid: Grid,
}

type RowSpec = Box<dyn Fn(&SuiteContext) -> VerificationReport + Send + Sync>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Wrap a fallible row body so library errors become failing rows instead of
/// aborting the whole stream.
fn row<F>(id: &'static str, grid: Vec<(&'static str, f64)>, body: F) -> RowSpec
where
    F: Fn(&SuiteContext) -> zetareg::Result<(Complex64, Complex64, f64, (&'static str, &'static str))>
        + Send
        + Sync
        + 'static,
{
    Box::new(move |ctx| match body(ctx) {
        Ok((lhs, rhs, tol, methods)) => {
            VerificationReport::build(id, &grid, lhs, rhs, tol, methods)
        }
        Err(e) => VerificationReport::failure(id, &grid, &e.to_string()),
    })
}

fn lerch_rows(grid: Grid) -> Vec<RowSpec> {
    let mut rows: Vec<RowSpec> = Vec::new();
    let step: f64 = match grid {
        Grid::Fast => 0.1,
        Grid::Dense => 0.025,
    };
    let count = (5.0 / step).round() as usize;
    for i in 1..=count {
        let x = i as f64 * step;
        rows.push(row("lerch_formula", vec![("x", x)], move |ctx| {
            let lhs = (-hurwitz_zeta_ds0(real(x), &ctx.hurwitz_cfg)?).exp() * gamma(real(x))?;
            Ok((lhs, real(SQRT_TWO_PI), 1e-9, ("em_ds0", "stirling_gamma")))
        }));
    }
    if grid == Grid::Dense {
        rows.push(row("lerch_at_one", vec![], |ctx| {
            let lhs = lerch_l(real(1.0), &ctx.hurwitz_cfg)?.value;
            Ok((lhs, real(SQRT_TWO_PI), 1e-12, ("em_ds0", "exact")))
        }));
        for i in 1..=20 {
            let x = -4.9 + i as f64 * 0.47;
            rows.push(row("lerch_pair_product", vec![("x", x)], move |ctx| {
                let lhs = lerch_pair_product(real(x), &ctx.hurwitz_cfg)?;
                let rhs = -2.0 * real(x) * sin_pi(real(x), DEFAULT_CLAMP)?;
                Ok((lhs, rhs, 1e-9, ("lerch_product", "sine_form")))
            }));
        }
        for i in 0..20 {
            let re = -6.0 + i as f64 * 0.63;
            let im = ((i * 7) % 11) as f64 * 0.5 - 2.5;
            rows.push(row(
                "lerch_functional_equation",
                vec![("re", re), ("im", im)],
                move |ctx| {
                    let x = c(re, im);
                    let lhs = x * lerch_l(x + 1.0, &ctx.hurwitz_cfg)?.value;
                    let rhs = lerch_l(x, &ctx.hurwitz_cfg)?.value;
                    Ok((lhs, rhs, 1e-10, ("shifted", "direct")))
                },
            ));
        }
        rows.push(row("log_gamma_unit_integral", vec![], |ctx| {
            let lhs = log_gamma_unit_integral(&ctx.hurwitz_cfg)?;
            Ok((
                real(lhs),
                real(HALF_LOG_TWO_PI),
                1e-9,
                ("quadrature", "half_log_two_pi"),
            ))
        }));
    }
    rows
}

fn regprod_rows(grid: Grid) -> Vec<RowSpec> {
    let mut rows: Vec<RowSpec> = Vec::new();
    for &y in &[0.25, 0.5, 1.0, 2.0, 4.0] {
        rows.push(row("regprod_quadratic_closed", vec![("y", y)], move |_| {
            let q = MonicPoly::new(vec![real(y), real(0.0)])?;
            let lhs = regprod_poly(&q, StartIndex::Zero)?.value;
            Ok((lhs, closed_form_quadratic(y)?, 1e-10, ("gamma_formula", "closed_form")))
        }));
        rows.push(row("regprod_quartic_closed", vec![("y", y)], move |_| {
            let q = MonicPoly::new(vec![real(y), real(0.0), real(0.0), real(0.0)])?;
            let lhs = regprod_poly(&q, StartIndex::One)?.value;
            Ok((lhs, closed_form_quartic(y)?, 1e-10, ("gamma_formula", "closed_form")))
        }));
    }

    let pairs = match grid {
        Grid::Fast => 10,
        Grid::Dense => 50,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e9f_1e55);
    for trial in 0..pairs {
        let mut make = |deg: usize| -> Vec<(f64, f64)> {
            (0..deg)
                .map(|_| (rng.gen_range(0.5..5.0), rng.gen_range(-2.0..2.0)))
                .collect()
        };
        let s1 = make(1 + trial % 3);
        let s2 = make(1 + (trial / 3) % 3);
        rows.push(row(
            "regprod_multiplicativity",
            vec![("trial", trial as f64)],
            move |_| {
                let to_poly = |s: &[(f64, f64)]| {
                    MonicPoly::from_shifts(&s.iter().map(|&(a, b)| c(a, b)).collect::<Vec<_>>())
                };
                let ratio = multiplicativity_ratio(&to_poly(&s1)?, &to_poly(&s2)?, StartIndex::Zero)?;
                Ok((ratio, real(1.0), 1e-9, ("combined", "factored")))
            },
        ));
    }

    let power_grid: Vec<(u32, f64, f64, Epsilon)> = match grid {
        Grid::Fast => vec![
            (2, 1.0, 1.0, Epsilon::Minus),
            (3, 1.0, 1.0, Epsilon::Minus),
        ],
        Grid::Dense => {
            let mut g = Vec::new();
            for m in [2u32, 3, 4, 5] {
                for &x in &[0.5, 1.0, 2.0] {
                    for &y in &[0.25, 1.0, 2.0] {
                        for eps in [Epsilon::Plus, Epsilon::Minus] {
                            // skip grid points where a product factor vanishes
                            let w = epsilon_roots(m, eps)[0];
                            let bad = power_form_lerch_args(real(x), real(y), m, w)
                                .iter()
                                .any(|d| {
                                    d.im.abs() < 1e-9
                                        && d.re < 0.5
                                        && (d.re - d.re.round()).abs() < 1e-9
                                        && d.re.round() <= 0.0
                                });
                            if !bad {
                                g.push((m, x, y, eps));
                            }
                        }
                    }
                }
            }
            g
        }
    };
    for (m, x, y, eps) in power_grid {
        let eps_val = if eps == Epsilon::Plus { 1.0 } else { -1.0 };
        rows.push(row(
            "regprod_power_vs_poly",
            vec![("m", m as f64), ("x", x), ("y", y), ("eps", eps_val)],
            move |ctx| {
                let w = epsilon_roots(m, eps)[0];
                let args = power_form_lerch_args(real(x), real(y), m, w);
                let lhs = regprod_power_form(real(x), real(y), m, eps, 0, &ctx.hurwitz_cfg)?.value;
                let rhs = regprod_poly(&MonicPoly::from_shifts(&args)?, StartIndex::Zero)?.value;
                Ok((lhs, rhs, 1e-9, ("lerch_product", "gamma_formula")))
            },
        ));
    }

    let root_grid: Vec<(u32, usize)> = match grid {
        Grid::Fast => vec![(2, 1), (3, 1)],
        Grid::Dense => [2u32, 3, 4, 5]
            .iter()
            .flat_map(|&m| (1..m as usize).map(move |k| (m, k)))
            .collect(),
    };
    for (m, choice) in root_grid {
        rows.push(row(
            "regprod_root_choice",
            vec![("m", m as f64), ("choice", choice as f64)],
            move |ctx| {
                let x = c(0.3, 0.2);
                let y = c(0.8, -0.1);
                let base = regprod_power_form(x, y, m, Epsilon::Minus, 0, &ctx.hurwitz_cfg)?.value;
                let other =
                    regprod_power_form(x, y, m, Epsilon::Minus, choice, &ctx.hurwitz_cfg)?.value;
                Ok((other, base, 1e-10, ("root_choice_k", "root_choice_0")))
            },
        ));
    }
    rows
}

fn series_rows(grid: Grid) -> Vec<RowSpec> {
    let mut rows: Vec<RowSpec> = Vec::new();
    let digamma_grid: Vec<(u32, f64, f64)> = match grid {
        Grid::Fast => vec![(2, 0.0, 1.0), (4, 0.0, 1.0), (3, 0.5, 2.0)],
        Grid::Dense => {
            let mut g = Vec::new();
            for m in [2u32, 3, 4, 5] {
                for &x in &[0.0, 0.5, 1.0] {
                    for &y in &[0.25, 1.0, 2.0] {
                        g.push((m, x, y));
                    }
                }
            }
            g
        }
    };
    for (m, x, y) in digamma_grid {
        rows.push(row(
            "series_digamma_vs_direct",
            vec![("m", m as f64), ("x", x), ("y", y)],
            move |ctx| {
                let direct = sum_direct(m, real(x), real(y), &ctx.series_cfg)?.value;
                let closed = sum_digamma(m, real(x), real(y), ctx.convention)?.value;
                Ok((closed, direct, 1e-9, ("digamma_form", "direct_em")))
            },
        ));
    }

    for &y in &[0.25, 1.0, 4.0, 9.0] {
        rows.push(row("series_k2_plus_y_closed", vec![("y", y)], move |ctx| {
            let lhs = sum_direct(2, real(0.0), real(y), &ctx.series_cfg)?.value;
            let root = y.sqrt();
            let rhs = -0.5 / y
                + std::f64::consts::PI / (2.0 * root)
                    * (std::f64::consts::PI * root).tanh().recip();
            Ok((lhs, real(rhs), 1e-10, ("direct_em", "trig_form")))
        }));
    }

    let points = match grid {
        Grid::Fast => 5,
        Grid::Dense => 20,
    };
    for i in 0..points {
        let y = 0.1 + 9.9 * i as f64 / (points - 1) as f64;
        rows.push(row("series_coth_identity", vec![("y", y)], move |ctx| {
            let resid = coth_identity_residual(y, &ctx.series_cfg)?;
            Ok((real(resid), real(0.0), 1e-10, ("direct_em", "trig_form")))
        }));
    }
    for i in 0..points {
        let y = 0.1 + 4.9 * i as f64 / (points - 1) as f64;
        rows.push(row("series_quartic_identity", vec![("y", y)], move |ctx| {
            let resid = quartic_identity_residual(y, ctx.convention, &ctx.series_cfg)?;
            Ok((real(resid), real(0.0), 1e-9, ("direct_em", "trig_form")))
        }));
    }
    let cot_points = match grid {
        Grid::Fast => 3,
        Grid::Dense => 10,
    };
    for n in [3u32, 4, 5] {
        for i in 0..cot_points {
            let y = 0.15 + 1.8 * i as f64 / (cot_points - 1) as f64;
            rows.push(row(
                "series_cot_sum_identity",
                vec![("n", n as f64), ("y", y)],
                move |ctx| {
                    let resid = cot_sum_identity_residual(n, y, ctx.convention, &ctx.series_cfg)?;
                    Ok((real(resid), real(0.0), 1e-9, ("direct_em", "trig_form")))
                },
            ));
        }
    }

    for j in 1..=6usize {
        rows.push(row("series_euler_zeta", vec![("j", j as f64)], move |ctx| {
            let formula = euler_even_zeta(j)?;
            let direct = zeta_power_sum(real(2.0 * j as f64), 1, real(0.0), real(0.0), &ctx.series_cfg)?.0;
            Ok((formula, direct, 1e-10, ("bernoulli_formula", "direct_em")))
        }));
    }

    for m in [2u32, 3, 4, 5] {
        for &x in &[0.7, 1.0, 1.5] {
            rows.push(row(
                "series_hurwitz_via_polygamma",
                vec![("m", m as f64), ("x", x)],
                move |ctx| {
                    let via_psi = hurwitz_via_polygamma(m, real(x), ctx.convention)?;
                    let via_zeta = hurwitz_zeta(real(m as f64), real(x), &ctx.hurwitz_cfg)?;
                    Ok((via_psi, via_zeta, 1e-10, ("polygamma", "hurwitz_em")))
                },
            ));
        }
    }
    rows
}

fn theta_rows(grid: Grid) -> Vec<RowSpec> {
    let mut rows: Vec<RowSpec> = Vec::new();
    for &t in &[0.01, 0.1, 1.0, std::f64::consts::PI, 10.0, 100.0] {
        rows.push(row("theta_poisson_functional_eq", vec![("t", t)], move |_| {
            let resid = poisson_check_theta2(t)?;
            Ok((real(resid), real(0.0), 1e-12, ("direct_sum", "dual_sum")))
        }));
    }

    let m1_expected = [
        ("leading", 1.0),
        ("c0", -0.5),
        ("c1", 1.0 / 12.0),
    ];
    for (idx, (name, expected)) in m1_expected.into_iter().enumerate() {
        rows.push(row(
            "theta_m1_laurent_coefficients",
            vec![("k", idx as f64)],
            move |ctx| {
                let ts = ThetaSeries::new(1, 0.0, real(0.0))?;
                let e = theta_asymptotic(&ts, 2, &ctx.hurwitz_cfg)?;
                let got = match name {
                    "leading" => e.leading_coeff,
                    "c0" => e.coeffs[0],
                    _ => e.coeffs[1],
                };
                Ok((got, real(expected), 1e-12, ("hurwitz_values", "laurent_series")))
            },
        ));
    }
    #[allow(clippy::excessive_precision)]
    let sqrt_pi_half = 0.88622692545275801364908374167057259139877472806119;
    for (idx, expected) in [sqrt_pi_half, -0.5].into_iter().enumerate() {
        rows.push(row(
            "theta_m2_poisson_coefficients",
            vec![("k", idx as f64)],
            move |ctx| {
                let ts = ThetaSeries::new(2, 0.0, real(0.0))?;
                let e = theta_asymptotic(&ts, 0, &ctx.hurwitz_cfg)?;
                let got = if idx == 0 { e.leading_coeff } else { e.coeffs[0] };
                Ok((got, real(expected), 1e-12, ("hurwitz_values", "poisson_expansion")))
            },
        ));
    }

    let consistency: Vec<(u32, f64, f64)> = match grid {
        Grid::Fast => vec![(2, 0.0, 1.0)],
        Grid::Dense => {
            let mut g = Vec::new();
            for m in [1u32, 2, 3] {
                for &x in &[0.0, 0.5, 1.0] {
                    for &y in &[0.0, 1.0, 2.0] {
                        g.push((m, x, y));
                    }
                }
            }
            g
        }
    };
    for (m, x, y) in consistency {
        rows.push(row(
            "theta_mellin_vs_direct",
            vec![("m", m as f64), ("x", x), ("y", y)],
            move |ctx| {
                let ts = ThetaSeries::new(m, x, real(y))?;
                let lhs = mellin_zeta(&ts, real(2.0), &ctx.hurwitz_cfg)?;
                let rhs = zeta_power_sum(real(2.0), m, real(x), real(y), &ctx.series_cfg)?.0;
                Ok((lhs, rhs, 1e-8, ("mellin_quadrature", "direct_em")))
            },
        ));
    }

    let closure: Vec<(u32, f64)> = match grid {
        Grid::Fast => vec![(2, 1.0)],
        Grid::Dense => vec![(2, 0.5), (2, 1.0), (2, 2.0), (4, 0.5), (4, 1.0), (4, 2.0)],
    };
    for (m, y) in closure {
        rows.push(row(
            "theta_mellin_regprod_closure",
            vec![("m", m as f64), ("y", y)],
            move |ctx| {
                let ts = ThetaSeries::new(m, 0.0, real(y))?;
                let oracle = mellin_regprod_oracle(&ts, &ctx.hurwitz_cfg)?;
                let gamma_route = regprod_power_form(
                    real(1.0),
                    real(y.powf(1.0 / m as f64)),
                    m,
                    Epsilon::Minus,
                    0,
                    &ctx.hurwitz_cfg,
                )?
                .value;
                Ok((oracle, gamma_route, 1e-6, ("mellin_oracle", "gamma_formula")))
            },
        ));
    }
    rows.push(row("theta_mellin_integers_closure", vec![], |ctx| {
        let ts = ThetaSeries::new(1, 0.0, real(0.0))?;
        let oracle = mellin_regprod_oracle(&ts, &ctx.hurwitz_cfg)?;
        Ok((oracle, real(SQRT_TWO_PI), 1e-6, ("mellin_oracle", "lerch_value")))
    }));

    let residue_grid: Vec<u32> = match grid {
        Grid::Fast => vec![2],
        Grid::Dense => vec![2, 3, 4],
    };
    for m in residue_grid {
        rows.push(row("theta_residue_at_pole", vec![("m", m as f64)], move |ctx| {
            let ts = ThetaSeries::new(m, 0.0, real(1.0))?;
            let inv_m = 1.0 / m as f64;
            let d = 1e-3;
            let f_d = mellin_zeta(&ts, real(inv_m + d), &ctx.hurwitz_cfg)? * d;
            let f_half = mellin_zeta(&ts, real(inv_m + d / 2.0), &ctx.hurwitz_cfg)? * (d / 2.0);
            let limit = 2.0 * f_half - f_d;
            Ok((limit, real(inv_m), 1e-6, ("mellin_quadrature", "gamma_ratio")))
        }));
    }
    rows
}

/// Build and evaluate a suite; rows come back in deterministic grid order.
pub fn run_suite(suite: Suite, ctx: &SuiteContext) -> Vec<VerificationReport> {
    let mut specs: Vec<RowSpec> = Vec::new();
    if matches!(suite, Suite::All | Suite::Lerch) {
        specs.extend(lerch_rows(ctx.grid));
    }
    if matches!(suite, Suite::All | Suite::Regprod) {
        specs.extend(regprod_rows(ctx.grid));
    }
    if matches!(suite, Suite::All | Suite::Series) {
        specs.extend(series_rows(ctx.grid));
    }
    if matches!(suite, Suite::All | Suite::Theta) {
        specs.extend(theta_rows(ctx.grid));
    }
    specs.par_iter().map(|spec| spec(ctx)).collect()
}
