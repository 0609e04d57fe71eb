//! Fourier transforms of radial functions.
//!
//! The transform of a radial f on R^d is radial; with λ = d/2 - 1 its profile
//! is
//!
//!   f̂(ξ) = (2π)^{λ+1} ∫₀^∞ f₀(r) · K_λ(2πrξ) · r^{d-1} dr,
//!
//! where K_λ(z) = J_λ(z)/z^λ is the uniform-normalization kernel (K_{-1/2}
//! is exactly cos, giving the classical even transform on the line).
//!
//! Evaluation strategy by representation:
//! - Gaussian-type functions map symbolically (polynomial × Gaussian in,
//!   polynomial × Gaussian out).
//! - Piecewise polynomials on the line use closed-form antiderivatives of
//!   p(r)·cos(wr), valid for real and complex w alike.
//! - Everything else integrates the kernel directly: panel quadrature over
//!   the support or decay head, plus Euler-accelerated sums of half-period
//!   segments for slowly decaying tails (which also gives conditionally
//!   convergent transforms away from ξ = 0).
//! - Convolutions transform as products, mixtures as weighted transforms,
//!   scalings by the usual dilation rule.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::funcs::{self, RadialFunction, Repr};
use crate::poly::{rat_to_f64, PiecewisePoly, PolyF};
use crate::quad;
use crate::special;

fn lambda_of(dim: u32) -> f64 {
    dim as f64 / 2.0 - 1.0
}

/// Transform profile value f̂(ξ) on the real axis.
pub fn fourier_radial(f: &RadialFunction, xi: f64) -> Result<f64> {
    let xi = xi.abs();
    match f.repr() {
        Repr::GaussPoly { poly, rate } => {
            let (q, b) = gauss_symbolic_image(poly, *rate, f.dim())?;
            Ok(q.eval(xi) * (-b * xi * xi).exp())
        }
        Repr::Hermite { a, b, .. } => {
            let img = funcs::hermite_quartic_profile(-*a, *b);
            Ok(img.eval(xi) * (-PI * xi * xi).exp())
        }
        Repr::Scaled { inner, factor } => {
            Ok(fourier_radial(inner, xi / factor)? / factor.powi(f.dim() as i32))
        }
        Repr::Mixture { base, measure } => {
            let d = f.dim() as i32;
            let mut err = None;
            let v = measure.integrate(|t| match fourier_radial(base, t * xi) {
                Ok(w) => t.powi(d) * w,
                Err(e) => {
                    if err.is_none() {
                        err = Some(e);
                    }
                    0.0
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(v),
            }
        }
        Repr::Convolution(g, h) => Ok(fourier_radial(g, xi)? * fourier_radial(h, xi)?),
        Repr::Piecewise(pp) if f.dim() == 1 => {
            if xi == 0.0 {
                Ok(rat_to_f64(&pp.integrate_exact()))
            } else {
                Ok(cosine_poly_transform(pp, Complex64::new(2.0 * PI * xi, 0.0)).re)
            }
        }
        _ => {
            if xi == 0.0 {
                transform_at_zero(f)
            } else {
                quadrature_transform(f, xi)
            }
        }
    }
}

/// Symbolic transform image for Gaussian-type functions (None otherwise).
pub fn transform_closed_form(f: &RadialFunction) -> Option<RadialFunction> {
    let (poly, rate) = f.gauss_parts()?;
    let (q, b) = gauss_symbolic_image(poly, rate, f.dim()).ok()?;
    // b = π²/rate > 0, so the constructor cannot fail.
    funcs::make_gauss_poly(q, b, f.dim()).ok()
}

/// Transform within the quartic Hermite family: (a, b) ↦ (-a, b).
pub fn hermite_transform(f: &RadialFunction) -> Result<RadialFunction> {
    match f.hermite_coefficients() {
        Some((a, b)) => funcs::make_hermite_quartic(-a, b),
        None => Err(Error::Domain(
            "hermite transform applies to the quartic Hermite family".into(),
        )),
    }
}

/// Closed-form transform of the bump power (1-|x|²)₊^α in dimension d:
///   Γ(α+1) π^{-α} · J_{d/2+α}(2πξ) / ξ^{d/2+α}.
pub fn m_alpha_transform(alpha: f64, dim: u32, xi: f64) -> Result<f64> {
    if !(alpha > -0.5) || dim == 0 {
        return Err(Error::Domain(format!(
            "bump transform needs exponent > -1/2 and dimension ≥ 1, got ({alpha}, {dim})"
        )));
    }
    let nu = dim as f64 / 2.0 + alpha;
    let k = special::kernel_raw(nu, Complex64::new(2.0 * PI * xi.abs(), 0.0))?.re;
    Ok(special::gamma(alpha + 1.0)? * PI.powf(-alpha) * (2.0 * PI).powf(nu) * k)
}

// ---------------------------------------------------------------------------
// Gaussian-type functions: symbolic images
// ---------------------------------------------------------------------------

/// One radial Laplacian step in s = ρ² coordinates: for g = u(s)·e^{-bs} in
/// dimension d,  Δg = [2d(u' - bu) + 4s(u'' - 2bu' + b²u)]·e^{-bs}.
fn laplacian_s(u: &PolyF, b: f64, d: u32) -> PolyF {
    let u1 = u.derivative();
    let u2 = u1.derivative();
    let shift = PolyF::new(vec![0.0, 1.0]); // multiplication by s
    let inner = u2.add(&u1.scale(-2.0 * b)).add(&u.scale(b * b));
    u1.add(&u.scale(-b))
        .scale(2.0 * d as f64)
        .add(&shift.mul(&inner).scale(4.0))
}

/// Transform image of p(r)·e^{-a r²} in dimension d, as (q, b) with image
/// q(ρ)·e^{-bρ²} and b = π²/a. Uses r²·f ↦ (-1/4π²)·Δf̂ on the self-mapped
/// Gaussian base; requires an even polynomial.
fn gauss_symbolic_image(p: &PolyF, a: f64, d: u32) -> Result<(PolyF, f64)> {
    if p.0.iter().skip(1).step_by(2).any(|&c| c != 0.0) {
        return Err(Error::Unsupported(
            "transform of a Gaussian-type function requires an even polynomial factor".into(),
        ));
    }
    let b = PI * PI / a;
    let base = (PI / a).powf(d as f64 / 2.0);
    // q_j follows the coefficient of r^{2j}.
    let degree_s = p.0.len() / 2;
    let mut image = PolyF::zero(); // polynomial in s = ρ²
    let mut delta_pow = PolyF::new(vec![1.0]); // Δ^j applied to 1·e^{-bs}
    let mut factor = 1.0; // (-1/4π²)^j
    for j in 0..=degree_s {
        if let Some(&c) = p.0.get(2 * j) {
            if c != 0.0 {
                image = image.add(&delta_pow.scale(c * factor * base));
            }
        }
        delta_pow = laplacian_s(&delta_pow, b, d);
        factor *= -1.0 / (4.0 * PI * PI);
    }
    // Re-interleave into a polynomial in ρ.
    let mut rho = vec![0.0; 2 * image.0.len()];
    for (j, &c) in image.0.iter().enumerate() {
        rho[2 * j] = c;
    }
    Ok((PolyF::new(rho), b))
}

// ---------------------------------------------------------------------------
// Exact cosine transforms of piecewise polynomials (dimension 1)
// ---------------------------------------------------------------------------

/// ∫ over every piece of p(r)·cos(wr), by parts for |w|·R away from 0 and by
/// the even power series otherwise. Exact up to rounding for real or complex
/// w; for an even profile this is the full line transform at w = 2πξ.
pub(crate) fn cosine_poly_transform(pp: &PiecewisePoly, w: Complex64) -> Complex64 {
    let breaks = pp.breaks_f64();
    let rmax = breaks.iter().fold(0.0f64, |m, b| m.max(b.abs()));
    let series = w.norm() * rmax <= 6.0;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..pp.pieces().len() {
        let (a, b) = (breaks[i], breaks[i + 1]);
        let coeffs = pp.piece_f64_coeffs(i);
        total += if series {
            piece_cos_series(coeffs, a, b, w)
        } else {
            piece_cos_parts(coeffs, a, b, w)
        };
    }
    total
}

fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn poly_deriv(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

/// ∫_a^b p(r)cos(wr) dr via the antiderivative
/// Σ_j (-1)^j [p^{(2j)}(r)·sin(wr)/w^{2j+1} + p^{(2j+1)}(r)·cos(wr)/w^{2j+2}].
fn piece_cos_parts(coeffs: &[f64], a: f64, b: f64, w: Complex64) -> Complex64 {
    let mut ladder = vec![coeffs.to_vec()];
    while !ladder.last().unwrap().is_empty() {
        let next = poly_deriv(ladder.last().unwrap());
        ladder.push(next);
    }
    let eval_at = |r: f64| -> Complex64 {
        let (sin_wr, cos_wr) = ((w * r).sin(), (w * r).cos());
        let mut acc = Complex64::new(0.0, 0.0);
        let mut sign = 1.0;
        let mut wpow = w; // w^{2j+1}
        for j in 0.. {
            let even = 2 * j;
            if even >= ladder.len() {
                break;
            }
            acc += sin_wr * (sign * poly_eval(&ladder[even], r)) / wpow;
            if even + 1 < ladder.len() {
                acc += cos_wr * (sign * poly_eval(&ladder[even + 1], r)) / (wpow * w);
            }
            sign = -sign;
            wpow *= w * w;
        }
        acc
    };
    eval_at(b) - eval_at(a)
}

/// ∫_a^b p(r)cos(wr) dr = Σ_m (-1)^m w^{2m}/(2m)! ∫ p(r) r^{2m} dr, usable
/// when |w|·max(|a|,|b|) is small.
fn piece_cos_series(coeffs: &[f64], a: f64, b: f64, w: Complex64) -> Complex64 {
    let moment = |extra: u32| -> f64 {
        let mut acc = 0.0;
        for (k, &c) in coeffs.iter().enumerate() {
            let p = k as i32 + extra as i32 + 1;
            acc += c * (b.powi(p) - a.powi(p)) / p as f64;
        }
        acc
    };
    let mut total = Complex64::new(moment(0), 0.0);
    let mut factor = Complex64::new(1.0, 0.0);
    for m in 1..=60u32 {
        factor *= -(w * w) / ((2 * m - 1) as f64 * (2 * m) as f64);
        let term = factor * moment(2 * m);
        total += term;
        if term.norm() <= 1e-17 * total.norm().max(1e-300) {
            break;
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Kernel quadrature (real axis)
// ---------------------------------------------------------------------------

fn positive_cuts(f: &RadialFunction) -> Vec<f64> {
    f.quad_breakpoints().into_iter().filter(|&c| c > 0.0).collect()
}

/// Integrate over a fixed panel list: adaptive Gauss–Legendre first, falling
/// back to the double-exponential rule per panel when the adaptive pass
/// reports non-convergence (endpoint derivative singularities such as
/// fractional powers or stretched exponentials at 0).
fn panels_integral<T: quad::Accum>(
    f: &mut dyn FnMut(f64) -> T,
    panels: &[(f64, f64)],
) -> T {
    match quad::integrate_panels(f, panels, 1e-12, 1e-11) {
        Ok(v) => v,
        Err(_) => panels
            .iter()
            .fold(T::zero(), |acc, &(a, b)| acc + quad::tanh_sinh(f, a, b, 1e-13)),
    }
}

/// f̂(0) = |S^{d-1}| ∫₀^∞ f₀(r) r^{d-1} dr; errors when the function is not
/// absolutely integrable (the transform is only conditionally defined there).
fn transform_at_zero(f: &RadialFunction) -> Result<f64> {
    let d = f.dim();
    if f.support_radius().is_none() && !f.decay().is_integrable(d) {
        return Err(Error::Domain(
            "transform at frequency 0 is undefined: the function is not absolutely integrable"
                .into(),
        ));
    }
    let surface = 2.0 * PI.powf(d as f64 / 2.0) / special::gamma(d as f64 / 2.0)?;
    let cuts = positive_cuts(f);
    let mut integrand = |r: f64| f.eval(r) * r.powi(d as i32 - 1);
    let val = match f.support_radius() {
        Some(rr) => funcs::integrate_cuts(&mut integrand, 0.0, rr, &cuts, 1e-13),
        None => {
            // Map [0, ∞) to (0, 1) by r = s·t/(1-t); the double-exponential
            // panels absorb both the stretched tail and any cut structure.
            let s = f.effective_radius(1e-2).clamp(0.5, 20.0);
            let mut mapped = |t: f64| {
                let r = s * t / (1.0 - t);
                let jac = s / ((1.0 - t) * (1.0 - t));
                integrand(r) * jac
            };
            let t_cuts: Vec<f64> = cuts.iter().map(|&r| r / (s + r)).collect();
            funcs::integrate_cuts(&mut mapped, 0.0, 1.0, &t_cuts, 1e-13)
        }
    };
    Ok(surface * val)
}

/// Direct kernel quadrature of the transform at ξ > 0. Used for piecewise
/// profiles in dimension ≥ 2, analytic profiles, and product nodes; also the
/// cross-validation path for every other representation.
pub(crate) fn quadrature_transform(f: &RadialFunction, xi: f64) -> Result<f64> {
    let xi = xi.abs();
    if xi == 0.0 {
        return transform_at_zero(f);
    }
    let d = f.dim();
    let lambda = lambda_of(d);
    let c = (2.0 * PI).powf(lambda + 1.0);
    let w = 2.0 * PI * xi;
    let mut kernel_failed = false;
    let mut integrand = |r: f64| {
        let k = match special::kernel_raw(lambda, Complex64::new(w * r, 0.0)) {
            Ok(v) => v.re,
            Err(_) => {
                kernel_failed = true;
                0.0
            }
        };
        f.eval(r) * k * r.powi(d as i32 - 1)
    };

    let cuts = positive_cuts(f);
    let max_len = 0.25 / xi;
    let head_end = f
        .support_radius()
        .or_else(|| f.decay().radius_below(1e-16))
        .unwrap_or(f64::INFINITY);

    let value = if head_end <= 45.0 {
        // The whole mass fits in a short window: plain panel quadrature.
        let panels = quad::plan_panels(0.0, head_end, &cuts, max_len);
        let head = if f.value_singular() {
            panels
                .into_iter()
                .map(|(p0, p1)| quad::tanh_sinh(&mut integrand, p0, p1, 1e-13))
                .sum()
        } else {
            panels_integral(&mut integrand, &panels)
        };
        c * head
    } else {
        // Slow decay: integrate a head up to a kernel zero, then sum
        // half-period segments between consecutive kernel zeros and
        // accelerate the (eventually alternating) series.
        let zero_r = |k: f64| (k + 0.5 * lambda - 0.25) * PI / w;
        let last_cut = cuts.iter().fold(0.0f64, |m, &b| m.max(b));
        let t0_target = last_cut.max(4.0 / w).max(1.0);
        let mut k0 = ((t0_target * w / PI) - 0.5 * lambda + 0.25).ceil();
        while zero_r(k0) <= t0_target {
            k0 += 1.0;
        }
        let t0 = zero_r(k0);
        let head_panels = quad::plan_panels(0.0, t0, &cuts, max_len);
        let head: f64 = panels_integral(&mut integrand, &head_panels);
        let scale_est = head.abs().max(1e-6);
        let mut segs = Vec::new();
        let mut k = k0;
        while segs.len() < 320 {
            let (a, b) = (zero_r(k), zero_r(k + 1.0));
            let s = quad::gl_fixed(&mut integrand, a, b, 10);
            segs.push(s);
            if segs.len() > 4 && s.abs() < 1e-17 * scale_est {
                break;
            }
            k += 1.0;
        }
        let (tail, err_est) = quad::accelerated_alternating_sum(&segs);
        let total = c * (head + tail);
        if err_est > 1e-6 * (1.0 + total.abs()) {
            return Err(Error::Numerical(format!(
                "oscillatory transform tail failed to converge (residual {err_est:.2e})"
            )));
        }
        total
    };
    if kernel_failed {
        return Err(Error::Numerical(
            "kernel evaluation failed inside transform quadrature".into(),
        ));
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// Analytic extension to complex frequencies
// ---------------------------------------------------------------------------

fn eval_poly_complex(p: &PolyF, z: Complex64) -> Complex64 {
    p.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// f̂ at a complex frequency z. Available for compactly supported piecewise
/// profiles, Gaussian-type functions, and their scale / mixture / convolution
/// combinations; the operating envelope is |z| ≤ 30 on the line and
/// 2πR|z| ≤ 30 for series-evaluated kernels in higher dimensions.
pub fn analytic_extension(f: &RadialFunction, z: Complex64) -> Result<Complex64> {
    match f.repr() {
        Repr::GaussPoly { poly, rate } => {
            let (q, b) = gauss_symbolic_image(poly, *rate, f.dim())?;
            Ok(eval_poly_complex(&q, z) * (-(z * z) * b).exp())
        }
        Repr::Hermite { a, b, .. } => {
            let img = funcs::hermite_quartic_profile(-*a, *b);
            Ok(eval_poly_complex(&img, z) * (-(z * z) * PI).exp())
        }
        Repr::Scaled { inner, factor } => {
            Ok(analytic_extension(inner, z / *factor)? / factor.powi(f.dim() as i32))
        }
        Repr::Mixture { base, measure } => {
            let d = f.dim() as i32;
            let mut acc = Complex64::new(0.0, 0.0);
            for &(t, m) in measure.atoms() {
                acc += m * t.powi(d) * analytic_extension(base, z * t)?;
            }
            if let Some(dens) = measure.density() {
                let (pts, vals) = (dens.points(), dens.values());
                let mut prev: Option<Complex64> = None;
                for i in 0..pts.len() {
                    let g = pts[i].powi(d) * analytic_extension(base, z * pts[i])? * vals[i];
                    if let Some(pg) = prev {
                        acc += 0.5 * (pts[i] - pts[i - 1]) * (pg + g);
                    }
                    prev = Some(g);
                }
            }
            Ok(acc)
        }
        Repr::Convolution(g, h) => Ok(analytic_extension(g, z)? * analytic_extension(h, z)?),
        Repr::Piecewise(pp) if f.dim() == 1 => {
            if z.norm() > 30.0 {
                return Err(Error::Range(format!(
                    "complex frequency |z| = {:.3} outside the operating envelope (30)",
                    z.norm()
                )));
            }
            Ok(cosine_poly_transform(pp, 2.0 * PI * z))
        }
        Repr::Piecewise(pp) => {
            let d = f.dim();
            let lambda = lambda_of(d);
            let rr = f.support_radius().unwrap_or(0.0);
            let arg_max = 2.0 * PI * rr * z.norm();
            let trig_kernel = (2.0 * lambda - 1.0).abs() % 2.0 == 0.0 && lambda > 0.0;
            if !trig_kernel && arg_max > 30.0 {
                return Err(Error::Range(format!(
                    "kernel argument 2πR|z| = {arg_max:.3} outside the validated range (30) in \
                     dimension {d}"
                )));
            }
            let c = (2.0 * PI).powf(lambda + 1.0);
            let w = 2.0 * PI * z;
            let mut failed = None;
            let mut integrand = |r: f64| -> Complex64 {
                match special::kernel_raw(lambda, w * r) {
                    Ok(k) => k * pp.eval(r) * r.powi(d as i32 - 1),
                    Err(e) => {
                        failed.get_or_insert(e);
                        Complex64::new(0.0, 0.0)
                    }
                }
            };
            let max_len = 0.25 / z.norm().max(1e-9);
            let panels = quad::plan_panels(0.0, rr, &positive_cuts(f), max_len);
            let total: Complex64 = quad::integrate_panels(&mut integrand, &panels, 1e-12, 1e-11)?;
            match failed {
                Some(e) => Err(e),
                None => Ok(total * c),
            }
        }
        Repr::Analytic(_) | Repr::Product(..) => Err(Error::Unsupported(
            "analytic continuation of the transform is available for compactly supported \
             piecewise profiles, Gaussian-type functions, and their scale, mixture, and \
             convolution combinations"
                .into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcs::{
        convolve, make_exp_pow, make_f_zeta, make_gaussian, make_hermite_quartic,
        make_indicator_conv, make_inverse_multiquadric, make_linnik, make_m_alpha, make_phi,
        mixture, product, scale,
    };
    use crate::measure::ScaleMeasure;

    // -- closed-form oracles -------------------------------------------------

    /// Triangle profile of width parameter r: transform (sin(πrξ)/(πξ))².
    fn triangle_hat(r: f64, xi: f64) -> f64 {
        if xi == 0.0 {
            return r * r;
        }
        let s = (PI * r * xi).sin() / (PI * xi);
        s * s
    }

    fn triangle_hat_c(r: f64, z: Complex64) -> Complex64 {
        let s = (PI * r * z).sin() / (PI * z);
        s * s
    }

    #[test]
    fn gaussian_is_self_dual_in_every_dimension() {
        for d in [1, 2, 3, 5] {
            let g = make_gaussian(PI, d).unwrap();
            for &xi in &[0.0, 0.3, 1.0, 2.2] {
                let got = fourier_radial(&g, xi).unwrap();
                let want = (-PI * xi * xi).exp();
                assert!((got - want).abs() < 1e-13, "d = {d}, ξ = {xi}: {got} vs {want}");
            }
        }
        // General rate: (π/a)^{d/2} e^{-π²ξ²/a}.
        let g = make_gaussian(2.0, 3).unwrap();
        let got = fourier_radial(&g, 0.7).unwrap();
        let want = (PI / 2.0f64).powf(1.5) * (-PI * PI * 0.49 / 2.0).exp();
        assert!((got - want).abs() < 1e-13);
    }

    #[test]
    fn symbolic_gauss_image_matches_direct_quadrature() {
        for d in [1, 2, 3] {
            let f = funcs::make_gauss_poly(PolyF::new(vec![1.0, 0.0, 2.0]), 2.0, d).unwrap();
            for &xi in &[0.0, 0.4, 1.3] {
                let sym = fourier_radial(&f, xi).unwrap();
                let quad_v = quadrature_transform(&f, xi)
                    .or_else(|_| transform_at_zero(&f))
                    .unwrap();
                assert!(
                    (sym - quad_v).abs() < 1e-9 * (1.0 + sym.abs()),
                    "d = {d}, ξ = {xi}: symbolic {sym} vs quadrature {quad_v}"
                );
            }
        }
    }

    #[test]
    fn triangle_transform_matches_closed_form() {
        let t = make_indicator_conv(2.0).unwrap();
        for &xi in &[0.0, 0.1, 0.25, 0.5, 1.0, 1.75, 5.0] {
            let got = fourier_radial(&t, xi).unwrap();
            let want = triangle_hat(2.0, xi);
            assert!((got - want).abs() < 1e-12, "ξ = {xi}: {got} vs {want}");
        }
        // Zeros sit at the half-integers for width 2.
        assert!(fourier_radial(&t, 0.5).unwrap().abs() < 1e-12);
        assert!(fourier_radial(&t, 1.5).unwrap().abs() < 1e-12);
        // The direct quadrature path agrees with the exact cosine path.
        for &xi in &[0.2, 0.9, 2.3] {
            let exact = fourier_radial(&t, xi).unwrap();
            let quad_v = quadrature_transform(&t, xi).unwrap();
            assert!((exact - quad_v).abs() < 1e-9, "ξ = {xi}");
        }
    }

    #[test]
    fn bump_transform_closed_form_agrees_with_quadrature() {
        // Integer and fractional exponents, dimensions 1 and 3; the closed
        // form uses the Bessel kernel directly while the quadrature path
        // integrates the profile, so agreement checks both.
        for &(alpha, d) in &[(0.0, 1u32), (1.0, 1), (2.0, 1), (0.5, 1), (1.0, 3), (0.3, 3)] {
            let m = make_m_alpha(alpha, d).unwrap();
            for &xi in &[0.0, 0.3, 1.1, 2.6] {
                let want = m_alpha_transform(alpha, d, xi).unwrap();
                let got = if xi == 0.0 {
                    transform_at_zero(&m).unwrap()
                } else {
                    quadrature_transform(&m, xi).unwrap()
                };
                assert!(
                    (got - want).abs() < 2e-8 * (1.0 + want.abs()),
                    "α = {alpha}, d = {d}, ξ = {xi}: {got} vs {want}"
                );
            }
        }
        // Spot value: d = 1, α = 0 is sin(2πξ)/(πξ).
        let want = (2.0 * PI * 0.7f64).sin() / (PI * 0.7);
        assert!((m_alpha_transform(0.0, 1, 0.7).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn bump_transform_large_frequency_uses_asymptotic_kernel() {
        // At ξ = 8 the kernel argument reaches 2π·8 ≈ 50; the closed form
        // and the profile quadrature must still agree.
        for &(alpha, d) in &[(1.0, 1u32), (0.5, 1), (1.0, 3)] {
            let m = make_m_alpha(alpha, d).unwrap();
            let want = m_alpha_transform(alpha, d, 8.0).unwrap();
            let got = quadrature_transform(&m, 8.0).unwrap();
            assert!(
                (got - want).abs() < 1e-9,
                "α = {alpha}, d = {d}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn quartic_bump_square_transform_is_a_perfect_square() {
        let phi = make_phi().unwrap();
        for &xi in &[0.0, 0.35, 0.9, 1.6, 3.0] {
            let got = fourier_radial(&phi, xi).unwrap();
            let m2 = m_alpha_transform(2.0, 1, xi).unwrap();
            assert!(
                (got - m2 * m2).abs() < 1e-9 * (1.0 + m2 * m2),
                "ξ = {xi}: {got} vs {}",
                m2 * m2
            );
            assert!(got >= -1e-12, "transform must be nonnegative at ξ = {xi}");
        }
    }

    #[test]
    fn hermite_transform_flips_the_odd_coefficient() {
        let f = make_hermite_quartic(0.3, 0.2).unwrap();
        let ft = hermite_transform(&f).unwrap();
        assert_eq!(ft.hermite_coefficients(), Some((-0.3, 0.2)));
        // Three routes to f̂: the coefficient rule, the symbolic Gaussian
        // image, and direct kernel quadrature.
        for &xi in &[0.0, 0.4, 0.9, 1.7] {
            let rule = ft.eval(xi);
            let sym = fourier_radial(&f, xi).unwrap();
            let quad_v = if xi == 0.0 {
                transform_at_zero(&f).unwrap()
            } else {
                quadrature_transform(&f, xi).unwrap()
            };
            assert!((rule - sym).abs() < 1e-12, "ξ = {xi}: rule {rule} vs symbolic {sym}");
            assert!(
                (rule - quad_v).abs() < 1e-9 * (1.0 + rule.abs()),
                "ξ = {xi}: rule {rule} vs quadrature {quad_v}"
            );
        }
        // Applying the transform twice returns the original coefficients.
        let back = hermite_transform(&ft).unwrap();
        assert_eq!(back.hermite_coefficients(), Some((0.3, 0.2)));
    }

    #[test]
    fn convolution_transforms_as_a_product() {
        let t = make_indicator_conv(2.0).unwrap();
        let g = make_gaussian(PI, 1).unwrap();
        let node = convolve(&t, &g).unwrap();
        for &xi in &[0.0, 0.45, 1.2] {
            let via_product = fourier_radial(&node, xi).unwrap();
            let direct = if xi == 0.0 {
                transform_at_zero(&node).unwrap()
            } else {
                quadrature_transform(&node, xi).unwrap()
            };
            assert!(
                (via_product - direct).abs() < 1e-6 * (1.0 + via_product.abs()),
                "ξ = {xi}: {via_product} vs {direct}"
            );
            let want = triangle_hat(2.0, xi) * (-PI * xi * xi).exp();
            assert!((via_product - want).abs() < 1e-10, "ξ = {xi}");
        }
    }

    #[test]
    fn scaling_and_mixture_rules_match_direct_quadrature() {
        let t = make_indicator_conv(2.0).unwrap();
        let s = scale(&t, 2.0).unwrap();
        for &xi in &[0.0, 0.6, 1.4] {
            let got = fourier_radial(&s, xi).unwrap();
            let want = 0.5 * triangle_hat(2.0, xi / 2.0);
            assert!((got - want).abs() < 1e-11, "scale ξ = {xi}: {got} vs {want}");
        }
        let nu = ScaleMeasure::from_atoms(vec![(1.0, 0.5), (2.0, 0.25)]).unwrap();
        let m = mixture(&t, &nu).unwrap();
        for &xi in &[0.0, 0.6, 1.4] {
            let got = fourier_radial(&m, xi).unwrap();
            let want = 0.5 * triangle_hat(2.0, xi) + 0.25 * 2.0 * triangle_hat(2.0, 2.0 * xi);
            assert!((got - want).abs() < 1e-10, "mixture ξ = {xi}: {got} vs {want}");
            let direct = if xi == 0.0 {
                transform_at_zero(&m).unwrap()
            } else {
                quadrature_transform(&m, xi).unwrap()
            };
            assert!((got - direct).abs() < 1e-8, "mixture direct ξ = {xi}");
        }
    }

    #[test]
    fn exponential_profile_transform_is_lorentzian() {
        // F[e^{-|x|}](ξ) = 2/(1 + 4π²ξ²).
        let f = make_exp_pow(1.0).unwrap();
        for &xi in &[0.0, 0.2, 0.8, 2.0] {
            let got = fourier_radial(&f, xi).unwrap();
            let want = 2.0 / (1.0 + 4.0 * PI * PI * xi * xi);
            assert!(
                (got - want).abs() < 1e-9 * (1.0 + want),
                "ξ = {xi}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn quadratic_rational_profile_transform_decays_exponentially() {
        // F[1/(1+x²)](ξ) = π e^{-2π|ξ|}.
        let f = make_linnik(2.0).unwrap();
        for &xi in &[0.0, 0.15, 0.5, 1.0] {
            let got = fourier_radial(&f, xi).unwrap();
            let want = PI * (-2.0 * PI * xi).exp();
            assert!(
                (got - want).abs() < 2e-7 * (1.0 + want),
                "ξ = {xi}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn stretched_exponential_tail_summation_matches_brute_force() {
        // e^{-√|x|} decays too slowly for a plain head window; the segment
        // acceleration must reproduce a long Simpson oracle. The oracle
        // substitutes x = u² so its integrand 4·u·e^{-u}·cos(wu²) is smooth
        // (plain Simpson on e^{-√x} stalls at O(h^{3/2}) near 0).
        let f = make_exp_pow(0.5).unwrap();
        let xi = 0.3;
        let w = 2.0 * PI * xi;
        let got = fourier_radial(&f, xi).unwrap();
        let n = 400_000usize;
        let (a, b) = (0.0, 40.0);
        let h = (b - a) / n as f64;
        let mut s = 0.0;
        for i in 0..=n {
            let u = a + i as f64 * h;
            let wgt = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            s += wgt * u * (-u).exp() * (w * u * u).cos();
        }
        let oracle = 4.0 * s * h / 3.0;
        assert!(
            (got - oracle).abs() < 5e-8,
            "ξ = {xi}: {got} vs oracle {oracle}"
        );
    }

    #[test]
    fn conditionally_convergent_transform_excludes_zero() {
        // 1/(1+|x|) is not absolutely integrable: ξ = 0 must fail, ξ > 0
        // must match the absolutely convergent by-parts oracle
        // (1/w)∫ sin(wx)/(1+x)² dx.
        let f = make_linnik(1.0).unwrap();
        assert!(fourier_radial(&f, 0.0).is_err());
        let xi = 0.5;
        let w = 2.0 * PI * xi;
        let got = fourier_radial(&f, xi).unwrap();
        let n = 800_000usize;
        let (a, b) = (0.0, 3000.0);
        let h = (b - a) / n as f64;
        let mut s = 0.0;
        for i in 0..=n {
            let x = a + i as f64 * h;
            let wgt = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            s += wgt * (w * x).sin() / ((1.0 + x) * (1.0 + x));
        }
        let oracle = 2.0 * (s * h / 3.0) / w;
        assert!(
            (got - oracle).abs() < 1e-6,
            "ξ = {xi}: {got} vs oracle {oracle}"
        );
    }

    #[test]
    fn power_law_zero_frequency_uses_the_mapped_integral() {
        // ∫ (1+x²)^{-3/4} dx = √π Γ(1/4)/Γ(3/4).
        let f = make_inverse_multiquadric(1.0, 0.75).unwrap();
        let got = fourier_radial(&f, 0.0).unwrap();
        let want = PI.sqrt() * special::gamma(0.25).unwrap() / special::gamma(0.75).unwrap();
        assert!((got - want).abs() < 1e-8 * want, "{got} vs {want}");
    }

    #[test]
    fn product_node_transforms_by_direct_quadrature() {
        let t = make_indicator_conv(2.0).unwrap();
        let g = make_gaussian(PI, 1).unwrap();
        let p = product(&t, &g).unwrap();
        // Oracle: Simpson integration of the product profile.
        for &xi in &[0.0, 0.7] {
            let got = fourier_radial(&p, xi).unwrap();
            let n = 200_000usize;
            let h = 2.0 / n as f64;
            let mut s = 0.0;
            for i in 0..=n {
                let x = i as f64 * h;
                let wgt = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                s += wgt * (2.0 - x) * (-PI * x * x).exp() * (2.0 * PI * xi * x).cos();
            }
            let oracle = 2.0 * s * h / 3.0;
            assert!((got - oracle).abs() < 1e-8, "ξ = {xi}: {got} vs {oracle}");
        }
    }

    #[test]
    fn analytic_extension_matches_closed_forms_off_the_real_axis() {
        let t = make_indicator_conv(2.0).unwrap();
        for &(re, im) in &[(0.5, 0.3), (-1.2, 0.8), (0.0, 1.5), (3.0, -2.0)] {
            let z = Complex64::new(re, im);
            let got = analytic_extension(&t, z).unwrap();
            let want = triangle_hat_c(2.0, z);
            assert!(
                (got - want).norm() < 1e-10 * (1.0 + want.norm()),
                "z = {z}: {got} vs {want}"
            );
        }
        // Gaussian-type: image evaluated at complex frequency.
        let hq = make_hermite_quartic(0.25, 0.1).unwrap();
        let z = Complex64::new(0.7, 0.4);
        let got = analytic_extension(&hq, z).unwrap();
        let img = funcs::hermite_quartic_profile(-0.25, 0.1);
        let want = eval_poly_complex(&img, z) * (-(z * z) * PI).exp();
        assert!((got - want).norm() < 1e-12);
        // Real axis consistency with the real transform.
        let phi = make_phi().unwrap();
        let on_axis = analytic_extension(&phi, Complex64::new(0.8, 0.0)).unwrap();
        assert!((on_axis.im).abs() < 1e-14);
        assert!((on_axis.re - fourier_radial(&phi, 0.8).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn complex_cosine_transform_series_and_parts_agree_at_the_switch() {
        // |w|·R around 6 exercises both branches; they must agree to
        // rounding since each is exact in exact arithmetic.
        let t = make_indicator_conv(2.0).unwrap();
        let pp = t.piecewise().unwrap();
        for &(re, im) in &[(0.45, 0.05), (0.5, 0.2), (0.42, -0.31)] {
            let z = Complex64::new(re, im); // |w|R = 4π|z| ∈ [5.3, 7.5]
            let w = 2.0 * PI * z;
            let series = {
                let mut total = Complex64::new(0.0, 0.0);
                for i in 0..pp.pieces().len() {
                    let (a, b) = (pp.breaks_f64()[i], pp.breaks_f64()[i + 1]);
                    total += piece_cos_series(pp.piece_f64_coeffs(i), a, b, w);
                }
                total
            };
            let parts = {
                let mut total = Complex64::new(0.0, 0.0);
                for i in 0..pp.pieces().len() {
                    let (a, b) = (pp.breaks_f64()[i], pp.breaks_f64()[i + 1]);
                    total += piece_cos_parts(pp.piece_f64_coeffs(i), a, b, w);
                }
                total
            };
            assert!(
                (series - parts).norm() < 1e-11 * (1.0 + series.norm()),
                "z = {z}: series {series} vs parts {parts}"
            );
        }
    }

    #[test]
    fn zeta_transform_vanishes_at_the_designated_complex_points() {
        let (r, theta) = (3.2, 1.0);
        let f = make_f_zeta(r, theta).unwrap();
        let rho = r / (2.0 * PI);
        let scale0 = analytic_extension(&f, Complex64::new(0.0, 0.0)).unwrap().norm();
        for &(sr, st) in &[(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
            let zeta = Complex64::new(
                sr * rho * theta.cos(),
                st * rho * theta.sin(),
            );
            let v = analytic_extension(&f, zeta).unwrap();
            assert!(
                v.norm() < 1e-9 * scale0,
                "f̂ should vanish at {zeta}: |f̂| = {}",
                v.norm()
            );
        }
        // Away from those points it does not vanish.
        let v = analytic_extension(&f, Complex64::new(0.3, 0.1)).unwrap();
        assert!(v.norm() > 1e-4 * scale0);
    }

    #[test]
    fn extension_envelope_and_support_errors() {
        let t = make_indicator_conv(2.0).unwrap();
        assert!(matches!(
            analytic_extension(&t, Complex64::new(31.0, 0.0)),
            Err(Error::Range(_))
        ));
        // Even dimension with a series-only kernel: the envelope is on
        // 2πR|z|.
        let disc = make_m_alpha(1.0, 2).unwrap();
        assert!(matches!(
            analytic_extension(&disc, Complex64::new(0.0, 6.0)),
            Err(Error::Range(_))
        ));
        let ok = analytic_extension(&disc, Complex64::new(0.5, 0.5));
        assert!(ok.is_ok());
        // Slowly decaying profiles have no continuation here.
        let lin = make_linnik(1.5).unwrap();
        assert!(matches!(
            analytic_extension(&lin, Complex64::new(0.2, 0.2)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn odd_dimension_extension_matches_trig_kernel_route() {
        // d = 3 compact profile at complex frequency: quadrature with the
        // sin-based kernel against a dense Simpson oracle of the same
        // integral representation... the oracle uses the explicit formula
        // K_{1/2}(u) = √(2/π)·sin(u)/u evaluated independently.
        let m = make_m_alpha(1.0, 3).unwrap();
        let z = Complex64::new(0.6, 0.9);
        let got = analytic_extension(&m, z).unwrap();
        let w = 2.0 * PI * z;
        let n = 40_000usize;
        let h = 1.0 / n as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..=n {
            let r = i as f64 * h;
            let wgt = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let u = w * r;
            let kern = if u.norm() < 1e-8 {
                Complex64::new(1.0, 0.0) - u * u / 6.0
            } else {
                u.sin() / u
            };
            s += wgt * (1.0 - r * r) * kern * r * r;
        }
        // Prefactor (2π)^{3/2}·√(2/π) = 4π.
        let want = s * (h / 3.0) * 4.0 * PI;
        assert!(
            (got - want).norm() < 1e-7 * (1.0 + want.norm()),
            "{got} vs {want}"
        );
    }
}
