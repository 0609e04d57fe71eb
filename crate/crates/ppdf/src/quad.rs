//! Gauss–Legendre quadrature: cached node tables, panel plans aligned to
//! breakpoints and oscillation scales, adaptive refinement, and an averaging
//! accelerator for slowly convergent oscillatory tails.

use std::collections::HashMap;
use std::ops::{Add, Sub};
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar types a quadrature rule can accumulate.
pub trait Accum: Copy + Add<Output = Self> + Sub<Output = Self> {
    fn zero() -> Self;
    fn scale(self, s: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl Accum for f64 {
    fn zero() -> Self {
        0.0
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Accum for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
///
/// Computed once per order by Newton iteration on the Legendre recurrence and
/// cached for the lifetime of the process.
pub fn gauss_legendre(n: usize) -> &'static [(f64, f64)] {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static [(f64, f64)]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("gauss_legendre cache poisoned");
    if let Some(rule) = guard.get(&n) {
        return rule;
    }
    let rule: &'static [(f64, f64)] = Box::leak(compute_gauss_legendre(n).into_boxed_slice());
    guard.insert(n, rule);
    rule
}

fn compute_gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_pair(n, x);
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

/// Legendre polynomial P_n and its derivative at x via the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Fixed-order Gauss–Legendre sum of `f` over [a, b].
pub fn gl_fixed<T: Accum>(f: &mut dyn FnMut(f64) -> T, a: f64, b: f64, order: usize) -> T {
    let rule = gauss_legendre(order);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = T::zero();
    for &(x, w) in rule {
        acc = acc + f(mid + half * x).scale(w);
    }
    acc.scale(half)
}

const BASE_ORDER: usize = 16;
const MAX_DEPTH: u32 = 32;

fn adaptive_panel<T: Accum>(
    f: &mut dyn FnMut(f64) -> T,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Result<T> {
    let coarse = gl_fixed(f, a, b, BASE_ORDER);
    let mid = 0.5 * (a + b);
    let fine = gl_fixed(f, a, mid, BASE_ORDER) + gl_fixed(f, mid, b, BASE_ORDER);
    let err = (coarse - fine).magnitude();
    if err <= tol || b - a < 1e-14 * (1.0 + a.abs() + b.abs()) {
        return Ok(fine);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Numerical(format!(
            "adaptive quadrature failed to converge on [{a}, {b}] (residual {err:.3e} > {tol:.3e})"
        )));
    }
    let left = adaptive_panel(f, a, mid, 0.5 * tol, depth + 1)?;
    let right = adaptive_panel(f, mid, b, 0.5 * tol, depth + 1)?;
    Ok(left + right)
}

/// Panel layout for an integral over [a, b]: cuts at every interior breakpoint,
/// then subdivision of each span so no panel exceeds `max_len` (oscillation
/// control; pass `f64::INFINITY` for smooth integrands).
pub fn plan_panels(a: f64, b: f64, breakpoints: &[f64], max_len: f64) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = vec![a];
    for &c in breakpoints {
        if c > a + 1e-15 && c < b - 1e-15 {
            cuts.push(c);
        }
    }
    cuts.push(b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-15 * (1.0 + x.abs()));

    let mut panels = Vec::new();
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let len = hi - lo;
        if !(len > 0.0) {
            continue;
        }
        let pieces = if max_len.is_finite() && len > max_len {
            (len / max_len).ceil() as usize
        } else {
            1
        };
        for k in 0..pieces {
            let p0 = lo + len * (k as f64) / (pieces as f64);
            let p1 = lo + len * ((k + 1) as f64) / (pieces as f64);
            panels.push((p0, p1));
        }
    }
    panels
}

/// Integrate `f` over a panel plan with an absolute/relative tolerance pair.
///
/// A first coarse pass estimates the total so the relative tolerance can be
/// converted to an absolute budget, which is then split across panels for the
/// adaptive refinement pass.
pub fn integrate_panels<T: Accum>(
    f: &mut dyn FnMut(f64) -> T,
    panels: &[(f64, f64)],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<T> {
    if panels.is_empty() {
        return Ok(T::zero());
    }
    let mut rough = T::zero();
    let mut rough_mass = 0.0;
    for &(a, b) in panels {
        let est = gl_fixed(f, a, b, BASE_ORDER);
        rough_mass += est.magnitude();
        rough = rough + est;
    }
    let budget = abs_tol.max(rel_tol * rough_mass.max(rough.magnitude()));
    let per_panel = budget / panels.len() as f64;
    let mut total = T::zero();
    for &(a, b) in panels {
        total = total + adaptive_panel(f, a, b, per_panel, 0)?;
    }
    Ok(total)
}

/// Convenience wrapper: single-interval adaptive integral.
pub fn integrate<T: Accum>(
    f: &mut dyn FnMut(f64) -> T,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<T> {
    integrate_panels(f, &[(a, b)], abs_tol, rel_tol)
}

/// Double-exponential (tanh-sinh) quadrature over [a, b]. Converges at
/// machine-precision rates even when the integrand has integrable power
/// singularities at the endpoints, which defeats Gauss–Legendre bisection.
/// Nodes that round onto an endpoint are skipped; their weights are below
/// 1e-28 so the omission is harmless. Returns the best estimate reached
/// (never fails; the refinement simply stops at the finest level).
pub fn tanh_sinh<T: Accum>(f: &mut dyn FnMut(f64) -> T, a: f64, b: f64, tol: f64) -> T {
    let half = 0.5 * (b - a);
    if !(half > 0.0) {
        return T::zero();
    }
    let node = |f: &mut dyn FnMut(f64) -> T, t: f64| -> T {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        // Distance of the node from the nearer endpoint (1 - tanh|u|),
        // computed without cancellation so an endpoint at 0 keeps full
        // resolution arbitrarily deep into a singularity.
        let d = 2.0 / ((2.0 * u.abs()).exp() + 1.0);
        let w = std::f64::consts::FRAC_PI_2 * t.cosh() / (u.cosh() * u.cosh());
        let xx = if t >= 0.0 { b - half * d } else { a + half * d };
        if !(xx > a && xx < b) || !w.is_finite() || w < 1e-290 {
            return T::zero();
        }
        let v = f(xx);
        if v.magnitude().is_finite() {
            v.scale(w)
        } else {
            T::zero()
        }
    };
    const T_MAX: f64 = 3.9;
    let mut best = T::zero();
    for level in 3..=11u32 {
        let n = 1u64 << level;
        let h = T_MAX / n as f64;
        let mut acc = node(f, 0.0);
        for k in 1..=n {
            let t = k as f64 * h;
            acc = acc + node(f, t) + node(f, -t);
        }
        let cur = acc.scale(h * half);
        let diff = (cur - best).magnitude();
        best = cur;
        if level >= 5 && diff <= tol * (1.0 + best.magnitude()) {
            break;
        }
    }
    best
}

/// Sum an eventually alternating series by repeated averaging of its partial
/// sums (Euler–van Wijngaarden). Returns the accelerated sum and an error
/// estimate. Intended for sequences of half-period integrals of decaying
/// oscillatory integrands.
pub fn accelerated_alternating_sum(terms: &[f64]) -> (f64, f64) {
    assert!(!terms.is_empty());
    let mut row: Vec<f64> = Vec::with_capacity(terms.len());
    let mut acc = 0.0;
    for &t in terms {
        acc += t;
        row.push(acc);
    }
    // Keep only the tail of the partial-sum sequence; early terms may not
    // alternate cleanly yet.
    let keep = row.len().min(24);
    let mut tail: Vec<f64> = row[row.len() - keep..].to_vec();
    let mut prev_est = *tail.last().unwrap();
    let mut best_err = f64::INFINITY;
    let mut best = prev_est;
    while tail.len() > 1 {
        for i in 0..tail.len() - 1 {
            tail[i] = 0.5 * (tail[i] + tail[i + 1]);
        }
        tail.pop();
        let est = *tail.last().unwrap();
        let err = (est - prev_est).abs();
        if err < best_err {
            best_err = err;
            best = est;
        }
        prev_est = est;
    }
    (best, best_err)
}
