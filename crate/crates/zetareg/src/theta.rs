//! Theta series θ_m(t,x;y) = Σ_{k≥1} e^{-((k+x)^m + y)t}: direct evaluation,
//! small-t asymptotics from special values of ζ_H, and the Mellin-transform
//! continuation of ζ_m(s,x;y) that supplies a Gamma-free ζ'(0) oracle for the
//! regularized products.
//!
//! The continuation splits the Mellin integral at 1 and subtracts the
//! asymptotic expansion P(t) on (0,1):
//!
//! ```text
//! Γ(s) ζ_m(s) = Σ_τ coeff_τ/(s + p_τ) + ∫_0^1 t^{s-1}(θ - P) + ∫_1^∞ t^{s-1} θ
//! ```
//!
//! where τ runs over the subtracted expansion terms coeff_τ t^{p_τ}. The τ-sum
//! carries the poles; both integrals are regular and evaluated by adaptive
//! quadrature. At s = 0 the 1/Γ(s) ~ s + γs² zero cancels the c_0/s pole
//! analytically, which is how the derivative at 0 is taken without finite
//! differences.

use num::rational::Rational64;
use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::hurwitz::hurwitz_zeta;
use crate::quad;
use crate::special::{ensure_finite, factorial, gamma, log_gamma, nonpositive_integer, EULER_GAMMA};

/// Expansion depth subtracted inside the Mellin split.
const K_SUB: usize = 4;

/// A theta series together with its decay data.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSeries {
    m: u32,
    x: f64,
    y: Complex64,
    decay_rate: f64,
    envelope: f64,
    index: Rational64,
}

impl ThetaSeries {
    /// m >= 1, x >= 0 real, y finite complex.
    pub fn new(m: u32, x: f64, y: Complex64) -> Result<Self> {
        if m < 1 {
            return Err(Error::Domain("theta series needs m >= 1".into()));
        }
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Domain(format!("theta series needs real x >= 0, got {x}")));
        }
        ensure_finite(y, "theta shift y")?;
        // kappa: true decay rate of the first term
        let decay_rate = (1.0 + x).powi(m as i32) + y.re;
        // sum_{k>=2} e^{-((k+x)^m - (1+x)^m)} bounds the tail relative to the
        // first term for every t >= 1
        let first = (1.0 + x).powi(m as i32);
        let mut tail = 0.0;
        for k in 2..10_000 {
            let e = (k as f64 + x).powi(m as i32) - first;
            let term = (-e).exp();
            tail += term;
            if term < 1e-18 {
                break;
            }
        }
        // |theta(t)| e^t <= (1+tail) e^{(1-kappa) t} maximized over t in [1, 50]
        let t_star = if decay_rate >= 1.0 { 1.0 } else { 50.0 };
        let envelope = (1.0 + tail) * ((1.0 - decay_rate) * t_star).exp();
        Ok(Self {
            m,
            x,
            y,
            decay_rate,
            envelope,
            index: Rational64::new(-1, m as i64),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> Complex64 {
        self.y
    }
    /// κ with θ(t) = O(e^{-κt}).
    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }
    /// C(y) with |θ(t)| ≤ C(y) e^{-t} on t ∈ [1, 50].
    pub fn envelope(&self) -> f64 {
        self.envelope
    }
    /// The index i(θ) = -1/m.
    pub fn index(&self) -> Rational64 {
        self.index
    }
}

/// θ_m(t,x;y) for t > 0 by direct summation (m >= 2) or the exact geometric
/// closed form (m = 1, where the series is geometric and small t would need
/// ~40/t terms).
pub fn theta_eval(ts: &ThetaSeries, t: f64) -> Result<Complex64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("theta needs t > 0, got {t}")));
    }
    if ts.m == 1 {
        // sum_{k>=1} e^{-(k+x+y)t} = e^{-(1+x+y)t} / (1 - e^{-t})
        let top = (-(Complex64::new(1.0 + ts.x, 0.0) + ts.y) * t).exp();
        let denom = -(-t).exp_m1();
        return ensure_finite(top / denom, "theta value");
    }
    let mut acc = 0.0_f64;
    let mut k = 1u64;
    loop {
        let term = (-(k as f64 + ts.x).powi(ts.m as i32) * t).exp();
        acc += term;
        if term < 1e-18 * acc || term == 0.0 {
            break;
        }
        k += 1;
    }
    ensure_finite(acc * (-ts.y * t).exp(), "theta value")
}

/// Small-t expansion: Γ(1+1/m) t^{-1/m} e^{-yt} plus Σ c_k(x;y) t^k.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    m: u32,
    y: Complex64,
    /// Γ(1 + 1/m), the Mellin residue of ζ_H(ms, x+1) at s = 1/m.
    pub leading_coeff: Complex64,
    /// c_0 … c_K.
    pub coeffs: Vec<Complex64>,
    pub order: usize,
}

impl AsymptoticExpansion {
    /// Evaluate the truncation at t, keeping every term of order <= `order`.
    pub fn eval(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        if self.m == 1 {
            // the t^{j-1} family is integer-graded and already folded into c_k
            acc += self.leading_coeff / t;
        } else {
            // truncated e^{-yt} against the fractional leading power
            let mut term = Complex64::new(1.0, 0.0);
            let mut series = Complex64::new(0.0, 0.0);
            for j in 0..=self.order {
                series += term;
                term *= -self.y * t / (j as f64 + 1.0);
            }
            acc += self.leading_coeff * t.powf(-1.0 / self.m as f64) * series;
        }
        let mut tp = 1.0;
        for c in &self.coeffs {
            acc += c * tp;
            tp *= t;
        }
        acc
    }

    /// Order of the first omitted term.
    pub fn remainder_order(&self) -> f64 {
        let next_int = (self.order + 1) as f64;
        if self.m == 1 || self.y.norm() == 0.0 {
            next_int
        } else {
            next_int - 1.0 / self.m as f64
        }
    }

    /// Magnitude scale of the first omitted terms (for neglect bounds).
    fn next_scale(&self, next_c: Complex64) -> f64 {
        let frac = if self.m >= 2 {
            self.leading_coeff.norm() * self.y.norm().powi(self.order as i32 + 1)
                / factorial(self.order + 1)
        } else {
            0.0
        };
        next_c.norm() + frac
    }
}

/// Expansion coefficients to order K from special values of ζ_H:
/// c_k(x;0) = (-1)^k ζ_H(-mk, x+1)/k!, then the Cauchy product with e^{-yt}
/// (for m = 1 the fractional family lands on integer orders and is folded in).
pub fn theta_asymptotic(ts: &ThetaSeries, order: usize, cfg: &EvalConfig) -> Result<AsymptoticExpansion> {
    if order > 20 {
        return Err(Error::Capacity {
            what: "asymptotic expansion order",
            limit: 20,
            got: order,
        });
    }
    let m = ts.m;
    let leading = gamma(Complex64::new(1.0 + 1.0 / m as f64, 0.0))?;
    let a_shift = Complex64::new(ts.x + 1.0, 0.0);
    let mut base = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let s = Complex64::new(-(m as f64) * i as f64, 0.0);
        let z = hurwitz_zeta(s, a_shift, cfg)?;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        base.push(sign * z / factorial(i));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut c = Complex64::new(0.0, 0.0);
        for (i, a) in base.iter().enumerate().take(k + 1) {
            let j = k - i;
            c += a * (-ts.y).powu(j as u32) / factorial(j);
        }
        if m == 1 {
            c += leading * (-ts.y).powu(k as u32 + 1) / factorial(k + 1);
        }
        coeffs.push(c);
    }
    Ok(AsymptoticExpansion {
        m,
        y: ts.y,
        leading_coeff: leading,
        coeffs,
        order,
    })
}

/// The subtracted-term list (coeff, power) of the split representation.
fn split_terms(exp: &AsymptoticExpansion) -> Vec<(Complex64, f64)> {
    let mut terms = Vec::new();
    if exp.m == 1 {
        terms.push((exp.leading_coeff, -1.0));
    } else {
        let inv_m = 1.0 / exp.m as f64;
        let mut coeff = exp.leading_coeff;
        for j in 0..=exp.order {
            if coeff.norm() > 0.0 {
                terms.push((coeff, j as f64 - inv_m));
            }
            coeff *= -exp.y / (j as f64 + 1.0);
        }
    }
    for (k, &c) in exp.coeffs.iter().enumerate() {
        terms.push((c, k as f64));
    }
    terms
}

struct MellinSplit {
    exp: AsymptoticExpansion,
    terms: Vec<(Complex64, f64)>,
    /// order of the remainder θ - P
    q: f64,
    rem_scale: f64,
}

fn build_split(ts: &ThetaSeries, cfg: &EvalConfig) -> Result<MellinSplit> {
    if ts.decay_rate <= 0.05 {
        return Err(Error::Domain(format!(
            "Mellin transform needs exponential decay, but kappa = {} (Re(y) too negative)",
            ts.decay_rate
        )));
    }
    // one extra coefficient for the remainder scale
    let full = theta_asymptotic(ts, K_SUB + 1, cfg)?;
    let next_c = full.coeffs[K_SUB + 1];
    let exp = AsymptoticExpansion {
        m: full.m,
        y: full.y,
        leading_coeff: full.leading_coeff,
        coeffs: full.coeffs[..=K_SUB].to_vec(),
        order: K_SUB,
    };
    let q = exp.remainder_order();
    let rem_scale = exp.next_scale(next_c).max(1e-30);
    let terms = split_terms(&exp);
    Ok(MellinSplit {
        exp,
        terms,
        q,
        rem_scale,
    })
}

impl MellinSplit {
    /// Lower cutoff keeping the neglected (0, t_min) remainder integral below
    /// tol/10 at real part σ.
    ///
    /// The algebraic estimate rem_scale · t^q covers the generic case; when
    /// the integer coefficients all vanish (x = 0 with even m hits only
    /// trivial zeros of ζ) the remainder is instead of saddle type,
    /// exp(-a t^{-1/(m-1)}), so the cutoff is halved until the *measured*
    /// remainder at t_min is small enough.
    fn t_min(&self, ts: &ThetaSeries, sigma: f64, tol: f64) -> Result<f64> {
        let power = sigma + self.q;
        let target = tol * power / (20.0 * self.rem_scale);
        let mut t = target.powf(1.0 / power).clamp(1e-8, 0.05);
        for _ in 0..40 {
            let rem = (theta_eval(ts, t)? - self.p_of(t)).norm();
            if 3.0 * rem * t.powf(sigma + 1.0) <= 0.05 * tol || t <= 1e-8 {
                break;
            }
            t *= 0.5;
        }
        Ok(t)
    }

    fn upper_cutoff(&self, sigma: f64, kappa: f64) -> f64 {
        let mut t = 50.0_f64;
        for _ in 0..4 {
            t = (46.0 + (sigma - 1.0).max(0.0) * t.ln()) / kappa;
        }
        t.clamp(5.0, 4000.0)
    }

    fn p_of(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &(c, p)| {
                acc + c * t.powf(p)
            })
    }
}

fn recip_gamma(s: Complex64) -> Result<Complex64> {
    if nonpositive_integer(s).is_some() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((-log_gamma(s)?).exp())
}

/// ζ_m(s,x;y) by the split Mellin representation. Poles: s = 1/m always, and
/// for y ≠ 0, m ≥ 2 also s = 1/m - j (j ≥ 1). Valid left to
/// Re(s) > 1/m - (K_SUB + 1).
pub fn mellin_zeta(ts: &ThetaSeries, s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    ensure_finite(s, "mellin exponent")?;
    let inv_m = 1.0 / ts.m as f64;
    if (s - inv_m).norm() < 1e-9 {
        return Err(Error::ZetaPole(inv_m));
    }
    let split = build_split(ts, cfg)?;
    // spurious-pole and strip checks
    if ts.m >= 2 {
        for &(c, p) in &split.terms {
            if p < 0.0 || p.fract() != 0.0 {
                let pole = -p;
                if (pole - inv_m).abs() > 1e-12 && (s - pole).norm() < 1e-9 && c.norm() > 1e-300 {
                    return Err(Error::ZetaPole(pole));
                }
            }
        }
    }
    if s.re <= -split.q + 1e-9 {
        return Err(Error::Domain(format!(
            "s = {s} left of the continued strip Re(s) > {}",
            -split.q
        )));
    }
    if s.norm() < 1e-9 {
        // 1/Γ(s) ~ s cancels the c_0/s pole: ζ_m(0) = c_0 exactly
        let (zeta0, ds0) = zeta_and_ds_at_zero(ts, &split, cfg)?;
        return Ok(zeta0 + s * ds0);
    }
    let h = h_value(ts, &split, s, cfg)?;
    ensure_finite(h * recip_gamma(s)?, "mellin zeta value")
}

/// H(s) = Σ coeff/(s+p) + ∫ quadratures, so that ζ = H/Γ(s).
fn h_value(ts: &ThetaSeries, split: &MellinSplit, s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let mut h = Complex64::new(0.0, 0.0);
    for &(c, p) in &split.terms {
        h += c / (s + p);
    }
    let t_min = split.t_min(ts, s.re, cfg.quad_tol)?;
    let low = quad::integrate(
        &|t: f64| {
            let theta = theta_eval(ts, t).unwrap_or(Complex64::new(f64::NAN, 0.0));
            Complex64::new(t, 0.0).powc(s - 1.0) * (theta - split.p_of(t))
        },
        t_min,
        1.0,
        cfg.quad_tol,
        cfg.quad_tol * 1e-2,
        40_000,
    )?;
    let upper = split.upper_cutoff(s.re, ts.decay_rate);
    let high = quad::integrate(
        &|t: f64| {
            let theta = theta_eval(ts, t).unwrap_or(Complex64::new(f64::NAN, 0.0));
            Complex64::new(t, 0.0).powc(s - 1.0) * theta
        },
        1.0,
        upper,
        cfg.quad_tol,
        cfg.quad_tol * 1e-2,
        40_000,
    )?;
    Ok(h + low.value + high.value)
}

/// (ζ_m(0), ζ_m'(0)) from the split at s = 0:
/// ζ(s) = (s + γ s² + …)(c₀/s + h₀ + …) gives ζ(0) = c₀, ζ'(0) = h₀ + γ c₀.
fn zeta_and_ds_at_zero(
    ts: &ThetaSeries,
    split: &MellinSplit,
    cfg: &EvalConfig,
) -> Result<(Complex64, Complex64)> {
    let c0 = split.exp.coeffs[0];
    let mut h0 = Complex64::new(0.0, 0.0);
    for &(c, p) in &split.terms {
        if p != 0.0 {
            h0 += c / p;
        }
    }
    let t_min = split.t_min(ts, 0.0, cfg.quad_tol)?;
    let low = quad::integrate(
        &|t: f64| {
            let theta = theta_eval(ts, t).unwrap_or(Complex64::new(f64::NAN, 0.0));
            (theta - split.p_of(t)) / t
        },
        t_min,
        1.0,
        cfg.quad_tol,
        cfg.quad_tol * 1e-2,
        40_000,
    )?;
    let upper = split.upper_cutoff(0.0, ts.decay_rate);
    let high = quad::integrate(
        &|t: f64| {
            let theta = theta_eval(ts, t).unwrap_or(Complex64::new(f64::NAN, 0.0));
            theta / t
        },
        1.0,
        upper,
        cfg.quad_tol,
        cfg.quad_tol * 1e-2,
        40_000,
    )?;
    h0 += low.value + high.value;
    Ok((c0, h0 + EULER_GAMMA * c0))
}

/// exp(-ζ_m'(0)): the regularized product ⧉∏_{k≥1}((k+x)^m + y) computed
/// without any Gamma-function evaluation; the module's oracle for the
/// Gamma-formula products.
pub fn mellin_regprod_oracle(ts: &ThetaSeries, cfg: &EvalConfig) -> Result<Complex64> {
    let split = build_split(ts, cfg)?;
    let (_, ds0) = zeta_and_ds_at_zero(ts, &split, cfg)?;
    ensure_finite((-ds0).exp(), "mellin regularized product")
}

/// Residual of the corrected θ₂ functional equation
/// θ₂(t) = √(π/t) θ₂(π²/t) + ½√(π/t) - ½.
pub fn poisson_check_theta2(t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("poisson check needs t > 0, got {t}")));
    }
    let ts = ThetaSeries::new(2, 0.0, Complex64::new(0.0, 0.0))?;
    let lhs = theta_eval(&ts, t)?;
    let ratio = (std::f64::consts::PI / t).sqrt();
    let dual = theta_eval(&ts, std::f64::consts::PI * std::f64::consts::PI / t)?;
    let rhs = ratio * dual + 0.5 * ratio - 0.5;
    Ok((lhs - rhs).norm())
}
