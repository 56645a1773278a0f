//! Adaptive panel quadrature for complex-valued integrands on real intervals.
//!
//! Panels carry an embedded Gauss-Legendre pair (7 and 15 points); the
//! absolute difference between the two rules is the panel error estimate and
//! the worst panel is bisected until the accumulated estimate meets the
//! tolerance. Nodes are generated at first use by Newton iteration on the
//! Legendre polynomials, so there are no tabulated constants to mistype.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: Complex64,
    /// Accumulated error estimate (absolute).
    pub error: f64,
    pub panels: usize,
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre nodes and weights on [-1, 1].
fn gauss_rule(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            // Chebyshev-like initial guess, then Newton
            let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_deriv(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_deriv(n, x);
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

type Rule = [(f64, f64)];

fn rules() -> (&'static Rule, &'static Rule) {
    static COARSE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    static FINE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    (
        COARSE.get_or_init(|| gauss_rule(7)),
        FINE.get_or_init(|| gauss_rule(15)),
    )
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.a == other.a
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on error, ties broken by interval start for determinism
        self.error
            .total_cmp(&other.error)
            .then(self.a.total_cmp(&other.a))
    }
}

fn evaluate_panel<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Complex64,
{
    let (coarse, fine) = rules();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut value = Complex64::new(0.0, 0.0);
    for &(x, w) in fine {
        let v = f(c + h * x);
        if !v.is_finite() {
            return Err(Error::NonFinite("quadrature integrand"));
        }
        value += v * w;
    }
    value *= h;
    let mut low = Complex64::new(0.0, 0.0);
    for &(x, w) in coarse {
        low += f(c + h * x) * w;
    }
    low *= h;
    Ok(Panel {
        a,
        b,
        value,
        error: (value - low).norm(),
    })
}

/// Integrate `f` over [a, b].
///
/// Stops when the accumulated panel-error estimate drops below
/// `max(abs_floor, rel_tol * |integral|)`; exceeding `max_panels` first is a
/// convergence error.
pub fn integrate<F>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
    max_panels: usize,
) -> Result<QuadOutcome>
where
    F: Fn(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!("bad integration interval [{a}, {b}]")));
    }
    let initial = 8.min(max_panels.max(1));
    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let step = (b - a) / initial as f64;
    for i in 0..initial {
        let lo = a + step * i as f64;
        let hi = if i + 1 == initial { b } else { a + step * (i + 1) as f64 };
        let p = evaluate_panel(f, lo, hi)?;
        total += p.value;
        err += p.error;
        heap.push(p);
    }
    let mut since_refresh = 0usize;
    loop {
        // incremental totals drift; refresh them periodically
        since_refresh += 1;
        if since_refresh >= 4096 {
            since_refresh = 0;
            total = Complex64::new(0.0, 0.0);
            err = 0.0;
            for p in heap.iter() {
                total += p.value;
                err += p.error;
            }
        }
        let tol = abs_floor.max(rel_tol * total.norm());
        if err <= tol {
            // deterministic final summation in interval order
            let mut panels: Vec<&Panel> = heap.iter().collect();
            panels.sort_by(|p, q| p.a.total_cmp(&q.a));
            let value = panels
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
            let error = panels.iter().map(|p| p.error).sum();
            return Ok(QuadOutcome {
                value,
                error,
                panels: panels.len(),
            });
        }
        if heap.len() >= max_panels {
            return Err(Error::Convergence(format!(
                "quadrature needs more than {max_panels} panels (error {err:.3e} > tol {tol:.3e})"
            )));
        }
        let worst = heap.pop().expect("heap non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::Convergence(
                "quadrature panel shrank to machine width".into(),
            ));
        }
        total -= worst.value;
        err -= worst.error;
        for half in [
            evaluate_panel(f, worst.a, mid)?,
            evaluate_panel(f, mid, worst.b)?,
        ] {
            total += half.value;
            err += half.error;
            heap.push(half);
        }
    }
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
    max_panels: usize,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let out = integrate(
        &|x| Complex64::new(f(x), 0.0),
        a,
        b,
        rel_tol,
        abs_floor,
        max_panels,
    )?;
    Ok((out.value.re, out.error))
}
