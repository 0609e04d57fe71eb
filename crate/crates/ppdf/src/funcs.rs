//! The catalogue of radial functions: exact piecewise-polynomial profiles,
//! Gaussian-times-polynomial profiles, a few analytic families, and the
//! closure operations (scaling, scale mixtures, products, convolutions,
//! derivatives) that build new functions from old ones.
//!
//! A [`RadialFunction`] is the even profile `f0` of `f(x) = f0(|x|)` on R^d,
//! together with the ambient dimension and tail metadata used to plan
//! quadrature horizons.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::measure::ScaleMeasure;
use crate::poly::{rat_from_f64, rat_i, PiecewisePoly, PolyF, RatPoly};
use crate::quad;

/// Closed-form analytic profiles that are not polynomial in any piece.
#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticKind {
    /// (1 - x²)₊^α with non-integer α > -1/2; negative α has an integrable
    /// singularity at |x| = 1.
    BumpPower { alpha: f64 },
    /// 1 / (1 + |x|^β), 0 < β ≤ 2.
    Linnik { beta: f64 },
    /// exp(-|x|^β), 0 < β ≤ 2.
    ExpPower { beta: f64 },
    /// (x² + α²)^{-β}, α > 0, β > 0.
    InverseMultiquadric { alpha: f64, beta: f64 },
}

impl AnalyticKind {
    fn eval(&self, x: f64) -> f64 {
        match *self {
            AnalyticKind::BumpPower { alpha } => {
                let w = 1.0 - x * x;
                if w > 0.0 {
                    w.powf(alpha)
                } else {
                    0.0
                }
            }
            AnalyticKind::Linnik { beta } => 1.0 / (1.0 + x.abs().powf(beta)),
            AnalyticKind::ExpPower { beta } => (-x.abs().powf(beta)).exp(),
            AnalyticKind::InverseMultiquadric { alpha, beta } => {
                (x * x + alpha * alpha).powf(-beta)
            }
        }
    }

    /// First and second derivative where they exist in closed form. At kink
    /// or singular points the one-sided limit from the right of |x| is used.
    fn deriv12(&self, x: f64) -> (f64, f64) {
        let s = x.abs();
        let sign = if x < 0.0 { -1.0 } else { 1.0 };
        match *self {
            AnalyticKind::BumpPower { alpha } => {
                let w = 1.0 - x * x;
                if w <= 0.0 {
                    return (0.0, 0.0);
                }
                let d1 = -2.0 * alpha * x * w.powf(alpha - 1.0);
                let d2 = -2.0 * alpha * w.powf(alpha - 1.0)
                    + 4.0 * alpha * (alpha - 1.0) * x * x * w.powf(alpha - 2.0);
                (d1, d2)
            }
            AnalyticKind::Linnik { beta } => {
                let den = 1.0 + s.powf(beta);
                let d1 = -beta * s.powf(beta - 1.0) / (den * den);
                let d2 = -beta * (beta - 1.0) * s.powf(beta - 2.0) / (den * den)
                    + 2.0 * beta * beta * s.powf(2.0 * beta - 2.0) / (den * den * den);
                (sign * d1, d2)
            }
            AnalyticKind::ExpPower { beta } => {
                let e = (-s.powf(beta)).exp();
                let d1 = -beta * s.powf(beta - 1.0) * e;
                let d2 = (beta * beta * s.powf(2.0 * beta - 2.0)
                    - beta * (beta - 1.0) * s.powf(beta - 2.0))
                    * e;
                (sign * d1, d2)
            }
            AnalyticKind::InverseMultiquadric { alpha, beta } => {
                let u = x * x + alpha * alpha;
                let d1 = -2.0 * beta * x * u.powf(-beta - 1.0);
                let d2 = -2.0 * beta * u.powf(-beta - 1.0)
                    + 4.0 * beta * (beta + 1.0) * x * x * u.powf(-beta - 2.0);
                (d1, d2)
            }
        }
    }
}

/// Structural representation of a radial function.
#[derive(Clone, Debug)]
pub enum Repr {
    /// Exact piecewise polynomial with rational breakpoints and coefficients.
    Piecewise(PiecewisePoly),
    /// p(x) · exp(-rate · x²).
    GaussPoly { poly: PolyF, rate: f64 },
    /// The quartic Hermite family (1 + 2a·H2 + b·H4)·exp(-π x²) where
    /// H2 = 4πx² - 1 and H4 = (4πx²)² - 6(4πx²) + 3; `poly` caches the
    /// expanded polynomial factor.
    Hermite { a: f64, b: f64, poly: PolyF },
    /// Closed-form analytic profile.
    Analytic(AnalyticKind),
    /// Scale mixture x ↦ ∫ base(x/t) dν(t).
    Mixture { base: Box<RadialFunction>, measure: ScaleMeasure },
    /// Pointwise product.
    Product(Box<RadialFunction>, Box<RadialFunction>),
    /// d-dimensional radial convolution, evaluated by quadrature.
    Convolution(Box<RadialFunction>, Box<RadialFunction>),
    /// x ↦ inner(factor · x).
    Scaled { inner: Box<RadialFunction>, factor: f64 },
}

/// Tail envelope of a radial profile, used to pick integration horizons and
/// decide integrability. `Compact` holds exactly when the support is finite.
#[derive(Clone, Debug, PartialEq)]
pub enum DecayClass {
    Compact,
    /// |f(x)| ≤ C·exp(-rate·x²) for large |x|.
    SquaredExponential { rate: f64 },
    /// |f(x)| ≤ C·exp(-rate·|x|^power) for large |x|.
    StretchedExponential { rate: f64, power: f64 },
    /// |f(x)| ≍ C·|x|^{-exponent} for large |x|.
    PowerLaw { exponent: f64 },
}

impl DecayClass {
    /// Radius beyond which the envelope stays below `tol` (None for compact
    /// support: use the support radius instead).
    pub fn radius_below(&self, tol: f64) -> Option<f64> {
        let l = tol.recip().ln();
        match *self {
            DecayClass::Compact => None,
            DecayClass::SquaredExponential { rate } => Some((l / rate).sqrt()),
            DecayClass::StretchedExponential { rate, power } => Some((l / rate).powf(power.recip())),
            DecayClass::PowerLaw { exponent } => Some(tol.powf(-exponent.recip())),
        }
    }

    /// Whether r^{dim-1}·|f| has finite integral under this envelope.
    pub fn is_integrable(&self, dim: u32) -> bool {
        match *self {
            DecayClass::PowerLaw { exponent } => exponent > dim as f64 + 1e-12,
            _ => true,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            DecayClass::Compact => 3,
            DecayClass::SquaredExponential { .. } => 2,
            DecayClass::StretchedExponential { .. } => 1,
            DecayClass::PowerLaw { .. } => 0,
        }
    }

    fn rescale_argument(&self, lam: f64) -> DecayClass {
        match *self {
            DecayClass::Compact => DecayClass::Compact,
            DecayClass::SquaredExponential { rate } => {
                DecayClass::SquaredExponential { rate: rate * lam * lam }
            }
            DecayClass::StretchedExponential { rate, power } => {
                DecayClass::StretchedExponential { rate: rate * lam.powf(power), power }
            }
            DecayClass::PowerLaw { exponent } => DecayClass::PowerLaw { exponent },
        }
    }
}

/// Envelope of a pointwise product: the faster of the two (both factors are
/// bounded away from their singular sets, so the faster envelope is valid up
/// to a constant). Equal-kind pairs sharpen: Gaussian rates add, power-law
/// exponents add.
fn product_decay(a: &DecayClass, b: &DecayClass) -> DecayClass {
    use DecayClass::*;
    match (a, b) {
        (Compact, _) | (_, Compact) => Compact,
        (SquaredExponential { rate: r1 }, SquaredExponential { rate: r2 }) => {
            SquaredExponential { rate: r1 + r2 }
        }
        (StretchedExponential { rate: r1, power: p1 }, StretchedExponential { rate: r2, power: p2 }) => {
            if (p1 - p2).abs() < 1e-12 {
                StretchedExponential { rate: r1 + r2, power: *p1 }
            } else if p1 > p2 {
                StretchedExponential { rate: *r1, power: *p1 }
            } else {
                StretchedExponential { rate: *r2, power: *p2 }
            }
        }
        (PowerLaw { exponent: e1 }, PowerLaw { exponent: e2 }) => {
            PowerLaw { exponent: e1 + e2 }
        }
        (x, y) => {
            if x.rank() >= y.rank() {
                x.clone()
            } else {
                y.clone()
            }
        }
    }
}

/// Envelope of a convolution: dominated by the slower factor. The estimates
/// are deliberately conservative (they only steer quadrature horizons).
fn convolution_decay(a: &DecayClass, b: &DecayClass) -> DecayClass {
    use DecayClass::*;
    match (a, b) {
        (Compact, Compact) => Compact,
        (SquaredExponential { rate: r1 }, SquaredExponential { rate: r2 }) => {
            SquaredExponential { rate: r1 * r2 / (r1 + r2) }
        }
        (Compact, SquaredExponential { rate }) | (SquaredExponential { rate }, Compact) => {
            SquaredExponential { rate: rate / 4.0 }
        }
        (Compact, StretchedExponential { rate, power })
        | (StretchedExponential { rate, power }, Compact) => {
            StretchedExponential { rate: rate / 2.0f64.powf(*power), power: *power }
        }
        (x, y) => {
            let slow = if x.rank() <= y.rank() { x } else { y };
            match slow {
                StretchedExponential { rate, power } => StretchedExponential {
                    rate: rate / 2.0f64.powf(*power),
                    power: *power,
                },
                PowerLaw { exponent } => PowerLaw { exponent: *exponent },
                other => other.clone(),
            }
        }
    }
}

/// A radial function on R^d, described by its even one-dimensional profile.
#[derive(Clone, Debug)]
pub struct RadialFunction {
    repr: Repr,
    dim: u32,
    support: Option<f64>,
    decay: DecayClass,
}

impl RadialFunction {
    fn from_piecewise(pp: PiecewisePoly, dim: u32) -> RadialFunction {
        let (a, b) = pp.support();
        RadialFunction {
            repr: Repr::Piecewise(pp),
            dim,
            support: Some((-a).max(b)),
            decay: DecayClass::Compact,
        }
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// The same radial profile reinterpreted in ambient dimension `dim`
    /// (1..=10). Pointwise values are unchanged; transforms and
    /// positive-definiteness checks then use the new dimension's kernel.
    /// Convolution nodes are refused: their values are tied to the dimension
    /// the convolution was taken in.
    pub fn in_dimension(&self, dim: u32) -> Result<RadialFunction> {
        if dim == 0 || dim > 10 {
            return Err(Error::Domain(format!("dimension must be 1..=10, got {dim}")));
        }
        let repr = match &self.repr {
            Repr::Convolution(_, _) => {
                return Err(Error::Unsupported(
                    "a convolution is specific to the dimension it was taken in".into(),
                ))
            }
            Repr::Mixture { base, measure } => Repr::Mixture {
                base: Box::new(base.in_dimension(dim)?),
                measure: measure.clone(),
            },
            Repr::Product(f, g) => Repr::Product(
                Box::new(f.in_dimension(dim)?),
                Box::new(g.in_dimension(dim)?),
            ),
            Repr::Scaled { inner, factor } => Repr::Scaled {
                inner: Box::new(inner.in_dimension(dim)?),
                factor: *factor,
            },
            other => other.clone(),
        };
        Ok(RadialFunction { repr, dim, support: self.support, decay: self.decay.clone() })
    }

    /// Support radius R with f = 0 outside [-R, R]; None for full support.
    pub fn support_radius(&self) -> Option<f64> {
        self.support
    }

    pub fn decay(&self) -> &DecayClass {
        &self.decay
    }

    /// Override the ambient dimension (profiles are dimension-agnostic; the
    /// dimension matters to transforms, convolutions and positivity checks).
    pub fn with_dim(mut self, dim: u32) -> Result<RadialFunction> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        self.dim = dim;
        Ok(self)
    }

    /// Radius beyond which |f| ≤ tol: the support radius if finite, otherwise
    /// derived from the decay envelope.
    pub fn effective_radius(&self, tol: f64) -> f64 {
        self.support
            .or_else(|| self.decay.radius_below(tol))
            .unwrap_or(1.0)
            .max(1.0)
    }

    /// Evaluate the profile at x (even in x). Compactly supported functions
    /// are identically zero from the support boundary outward, so endpoint
    /// evaluations do not leak representation rounding noise.
    pub fn eval(&self, x: f64) -> f64 {
        if let Some(r) = self.support {
            if x.abs() >= r {
                return 0.0;
            }
        }
        match &self.repr {
            Repr::Piecewise(pp) => pp.eval(x),
            Repr::GaussPoly { poly, rate } => poly.eval(x) * (-rate * x * x).exp(),
            Repr::Hermite { poly, .. } => poly.eval(x) * (-PI * x * x).exp(),
            Repr::Analytic(kind) => kind.eval(x),
            Repr::Mixture { base, measure } => measure.integrate(|t| base.eval(x / t)),
            Repr::Product(f, g) => f.eval(x) * g.eval(x),
            Repr::Convolution(f, g) => conv_eval(f, g, self.dim, x.abs()),
            Repr::Scaled { inner, factor } => inner.eval(factor * x),
        }
    }

    /// First and second derivatives of the profile at x. Exact for piecewise
    /// and Gaussian-type representations, closed-form for the analytic
    /// families, five-point central differences for convolution nodes.
    pub fn deriv12(&self, x: f64) -> (f64, f64) {
        match &self.repr {
            Repr::Piecewise(pp) => {
                // Take the inward-looking side so support endpoints report
                // the interior limit.
                let from_right = x < 0.0 || x == 0.0;
                (
                    pp.one_sided_derivative(x, 1, from_right),
                    pp.one_sided_derivative(x, 2, from_right),
                )
            }
            Repr::GaussPoly { poly, rate } => gauss_poly_deriv12(poly, *rate, x),
            Repr::Hermite { poly, .. } => gauss_poly_deriv12(poly, PI, x),
            Repr::Analytic(kind) => kind.deriv12(x),
            Repr::Mixture { base, measure } => {
                let d1 = measure.integrate(|t| base.deriv12(x / t).0 / t);
                let d2 = measure.integrate(|t| base.deriv12(x / t).1 / (t * t));
                (d1, d2)
            }
            Repr::Product(f, g) => {
                let (fv, (f1, f2)) = (f.eval(x), f.deriv12(x));
                let (gv, (g1, g2)) = (g.eval(x), g.deriv12(x));
                (f1 * gv + fv * g1, f2 * gv + 2.0 * f1 * g1 + fv * g2)
            }
            Repr::Convolution(..) => central_deriv12(|y| self.eval(y), x),
            Repr::Scaled { inner, factor } => {
                let (d1, d2) = inner.deriv12(factor * x);
                (factor * d1, factor * factor * d2)
            }
        }
    }

    /// Abscissas where some derivative of the profile jumps or blows up;
    /// quadrature panels are cut here.
    pub fn quad_breakpoints(&self) -> Vec<f64> {
        const CAP: usize = 256;
        let mut out = match &self.repr {
            Repr::Piecewise(pp) => pp.breaks_f64().to_vec(),
            Repr::GaussPoly { .. } | Repr::Hermite { .. } => Vec::new(),
            Repr::Analytic(kind) => match kind {
                AnalyticKind::BumpPower { .. } => vec![-1.0, 0.0, 1.0],
                AnalyticKind::InverseMultiquadric { .. } => Vec::new(),
                _ => vec![0.0],
            },
            Repr::Mixture { base, measure } => {
                let inner = base.quad_breakpoints();
                let mut v = Vec::new();
                for &(t, _) in measure.atoms() {
                    v.extend(inner.iter().map(|&c| c * t));
                }
                if let Some(d) = measure.density() {
                    let t0 = d.points().first().copied().unwrap_or(0.0);
                    let t1 = d.points().last().copied().unwrap_or(0.0);
                    for t in [t0, t1] {
                        if t > 0.0 {
                            v.extend(inner.iter().map(|&c| c * t));
                        }
                    }
                }
                v
            }
            Repr::Product(f, g) => {
                let mut v = f.quad_breakpoints();
                v.extend(g.quad_breakpoints());
                v
            }
            Repr::Convolution(f, g) => {
                // Kinks of a convolution sit at pairwise sums of the factor
                // kinks (and at the factor kinks themselves when the other
                // factor has full support).
                let bf = f.quad_breakpoints();
                let bg = g.quad_breakpoints();
                let mut v = Vec::new();
                for &x in &bf {
                    for &y in &bg {
                        v.push(x + y);
                    }
                }
                if bf.is_empty() {
                    v.extend(bg.iter().copied());
                }
                if bg.is_empty() {
                    v.extend(bf.iter().copied());
                }
                v
            }
            Repr::Scaled { inner, factor } => {
                inner.quad_breakpoints().iter().map(|c| c / factor).collect()
            }
        };
        out.retain(|c| c.is_finite());
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * (1.0 + a.abs()));
        out.truncate(CAP);
        out
    }

    /// True when the profile itself is unbounded somewhere (integrable
    /// endpoint singularity); quadrature then routes through the
    /// double-exponential rule.
    pub fn value_singular(&self) -> bool {
        match &self.repr {
            Repr::Analytic(AnalyticKind::BumpPower { alpha }) => *alpha < 0.0,
            Repr::Mixture { base, .. } => base.value_singular(),
            Repr::Product(f, g) => f.value_singular() || g.value_singular(),
            Repr::Scaled { inner, .. } => inner.value_singular(),
            _ => false,
        }
    }

    /// The (poly, rate) pair when the function is Gaussian-type.
    pub fn gauss_parts(&self) -> Option<(&PolyF, f64)> {
        match &self.repr {
            Repr::GaussPoly { poly, rate } => Some((poly, *rate)),
            Repr::Hermite { poly, .. } => Some((poly, PI)),
            _ => None,
        }
    }

    /// The exact piecewise representation, when that is what this is.
    pub fn piecewise(&self) -> Option<&PiecewisePoly> {
        match &self.repr {
            Repr::Piecewise(pp) => Some(pp),
            _ => None,
        }
    }

    /// Coefficients (a, b) when the function is the quartic Hermite family.
    pub fn hermite_coefficients(&self) -> Option<(f64, f64)> {
        match &self.repr {
            Repr::Hermite { a, b, .. } => Some((*a, *b)),
            _ => None,
        }
    }
}

fn gauss_poly_deriv12(poly: &PolyF, rate: f64, x: f64) -> (f64, f64) {
    let q1 = gauss_poly_derivative(poly, rate, 1);
    let q2 = gauss_poly_derivative(&q1, rate, 1);
    let e = (-rate * x * x).exp();
    (q1.eval(x) * e, q2.eval(x) * e)
}

/// Polynomial factor of the k-th derivative of p(x)·exp(-rate·x²).
fn gauss_poly_derivative(poly: &PolyF, rate: f64, k: usize) -> PolyF {
    let mut p = poly.clone();
    let damp = PolyF::new(vec![0.0, -2.0 * rate]);
    for _ in 0..k {
        p = p.derivative().add(&p.mul(&damp));
    }
    p
}

/// Five-point central differences for (f', f'') with step balanced against
/// roundoff in the second derivative.
fn central_deriv12(f: impl Fn(f64) -> f64, x: f64) -> (f64, f64) {
    let h = 6e-4 * (1.0 + x.abs());
    let (m2, m1, p0, p1, p2) = (f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h));
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * p0 + 16.0 * p1 - p2) / (12.0 * h * h);
    (d1, d2)
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {v}")))
    }
}

/// Indicator self-convolution: the triangle profile of height and half-width
/// r, i.e. χ_{[-r/2, r/2]} * χ_{[-r/2, r/2]}.
pub fn make_indicator_conv(r: f64) -> Result<RadialFunction> {
    check_finite("width", r)?;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("width must be positive, got {r}")));
    }
    let h = rat_from_f64(0.5 * r)?;
    let ind = PiecewisePoly::new(vec![-h.clone(), h], vec![RatPoly::from_i64s(&[1])])?;
    Ok(RadialFunction::from_piecewise(ind.convolve(&ind)?, 1))
}

/// The bump power profile (1 - |x|²)₊^α in dimension d. Integer α gives an
/// exact polynomial piece; fractional α is kept analytic.
pub fn make_m_alpha(alpha: f64, dim: u32) -> Result<RadialFunction> {
    check_finite("exponent", alpha)?;
    if !(alpha > -0.5) {
        return Err(Error::Domain(format!(
            "exponent must be greater than -1/2, got {alpha}"
        )));
    }
    if dim == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    let n = alpha.round();
    if alpha >= 0.0 && (alpha - n).abs() < 1e-12 && n <= 60.0 {
        let mut p = RatPoly::from_i64s(&[1]);
        let base = RatPoly::from_i64s(&[1, 0, -1]);
        for _ in 0..n as usize {
            p = p.mul(&base);
        }
        let pp = PiecewisePoly::new(vec![rat_i(-1), rat_i(1)], vec![p])?;
        return Ok(RadialFunction::from_piecewise(pp, dim));
    }
    Ok(RadialFunction {
        repr: Repr::Analytic(AnalyticKind::BumpPower { alpha }),
        dim,
        support: Some(1.0),
        decay: DecayClass::Compact,
    })
}

/// Self-convolution of the bump power profile in dimension d. Exact when α is
/// a nonnegative integer and d = 1; otherwise a quadrature-backed node.
pub fn make_m_alpha_sq(alpha: f64, dim: u32) -> Result<RadialFunction> {
    let m = make_m_alpha(alpha, dim)?;
    convolve(&m, &m)
}

/// The compactly supported profile (1-x²)₊ * (1-x²)₊ on the line.
pub fn make_wu() -> Result<RadialFunction> {
    make_m_alpha_sq(1.0, 1)
}

/// The compactly supported profile (1-x²)₊² * (1-x²)₊² on the line.
pub fn make_phi() -> Result<RadialFunction> {
    make_m_alpha_sq(2.0, 1)
}

/// Expanded polynomial factor of the quartic Hermite profile: with
/// X = 4πx², the factor is 1 + 2a(X-1) + b(X²-6X+3).
pub fn hermite_quartic_profile(a: f64, b: f64) -> PolyF {
    let c0 = 1.0 - 2.0 * a + 3.0 * b;
    let cx = 2.0 * a - 6.0 * b;
    let cx2 = b;
    PolyF::new(vec![
        c0,
        0.0,
        cx * 4.0 * PI,
        0.0,
        cx2 * 16.0 * PI * PI,
    ])
}

/// Even Hermite-type basis polynomial of degree k for weight exp(-πx²):
/// B₀ = 1, B₁ = 2√π·x, B_{k+1} = 2√π·x·B_k - k·B_{k-1}. B₂ and B₄ are the
/// building blocks of the quartic family.
pub fn hermite_basis(k: usize) -> PolyF {
    let mut prev = PolyF::new(vec![1.0]);
    if k == 0 {
        return prev;
    }
    let x2sqrtpi = PolyF::new(vec![0.0, 2.0 * PI.sqrt()]);
    let mut cur = x2sqrtpi.clone();
    for m in 1..k {
        let next = cur.mul(&x2sqrtpi).add(&prev.scale(-(m as f64)));
        prev = cur;
        cur = next;
    }
    cur
}

/// Quartic Hermite family member (1 + 2a·B₂ + b·B₄)·exp(-πx²) on the line.
pub fn make_hermite_quartic(a: f64, b: f64) -> Result<RadialFunction> {
    check_finite("coefficient a", a)?;
    check_finite("coefficient b", b)?;
    Ok(RadialFunction {
        repr: Repr::Hermite { a, b, poly: hermite_quartic_profile(a, b) },
        dim: 1,
        support: None,
        decay: DecayClass::SquaredExponential { rate: PI },
    })
}

/// Gaussian exp(-rate·x²) in dimension d; rate π is its own transform.
pub fn make_gaussian(rate: f64, dim: u32) -> Result<RadialFunction> {
    check_finite("rate", rate)?;
    if !(rate > 0.0) {
        return Err(Error::Domain(format!("rate must be positive, got {rate}")));
    }
    if dim == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    Ok(RadialFunction {
        repr: Repr::GaussPoly { poly: PolyF::new(vec![1.0]), rate },
        dim,
        support: None,
        decay: DecayClass::SquaredExponential { rate },
    })
}

/// Gaussian-type function p(x)·exp(-rate·x²) with an explicit polynomial.
pub fn make_gauss_poly(poly: PolyF, rate: f64, dim: u32) -> Result<RadialFunction> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::Domain(format!("rate must be positive, got {rate}")));
    }
    if dim == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    Ok(RadialFunction {
        repr: Repr::GaussPoly { poly, rate },
        dim,
        support: None,
        decay: DecayClass::SquaredExponential { rate },
    })
}

/// Compactly supported profile whose transform vanishes on the four points
/// ±(r/2π)e^{±iθ}: with φ = (1-x²)₊² * (1-x²)₊²,
///   f = φ + (2cos2θ / r²)·φ'' + (1/r⁴)·φ⁗.
pub fn make_f_zeta(r: f64, theta: f64) -> Result<RadialFunction> {
    check_finite("radius", r)?;
    check_finite("angle", theta)?;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    if !(theta > 0.0 && theta < 0.5 * PI) {
        return Err(Error::Domain(format!(
            "angle must lie strictly between 0 and π/2, got {theta}"
        )));
    }
    let phi = match make_phi()?.repr {
        Repr::Piecewise(pp) => pp,
        _ => unreachable!("integer self-convolution is exact"),
    };
    let d2 = phi.derivative(2)?;
    let d4 = phi.derivative(4)?;
    let c2 = rat_from_f64(2.0 * (2.0 * theta).cos() / (r * r))?;
    let c4 = rat_from_f64((r * r * r * r).recip())?;
    let combo =
        PiecewisePoly::linear_combo(&[(rat_i(1), &phi), (c2, &d2), (c4, &d4)])?;
    Ok(RadialFunction::from_piecewise(combo, 1))
}

/// (1-|x|)₊³(1+3|x|): a C² compactly supported profile used by the
/// convexity-criterion tests.
pub fn make_wendland33() -> Result<RadialFunction> {
    let pp = PiecewisePoly::even_from_profile(
        vec![rat_i(0), rat_i(1)],
        vec![RatPoly::from_i64s(&[1, 0, -6, 8, -3])],
    )?;
    Ok(RadialFunction::from_piecewise(pp, 1))
}

/// 1/(1 + |x|^β) for 0 < β ≤ 2.
pub fn make_linnik(beta: f64) -> Result<RadialFunction> {
    check_finite("exponent", beta)?;
    if !(beta > 0.0 && beta <= 2.0) {
        return Err(Error::Domain(format!("exponent must lie in (0, 2], got {beta}")));
    }
    Ok(RadialFunction {
        repr: Repr::Analytic(AnalyticKind::Linnik { beta }),
        dim: 1,
        support: None,
        decay: DecayClass::PowerLaw { exponent: beta },
    })
}

/// exp(-|x|^β) for 0 < β ≤ 2.
pub fn make_exp_pow(beta: f64) -> Result<RadialFunction> {
    check_finite("exponent", beta)?;
    if !(beta > 0.0 && beta <= 2.0) {
        return Err(Error::Domain(format!("exponent must lie in (0, 2], got {beta}")));
    }
    Ok(RadialFunction {
        repr: Repr::Analytic(AnalyticKind::ExpPower { beta }),
        dim: 1,
        support: None,
        decay: DecayClass::StretchedExponential { rate: 1.0, power: beta },
    })
}

/// (x² + α²)^{-β} for α, β > 0.
pub fn make_inverse_multiquadric(alpha: f64, beta: f64) -> Result<RadialFunction> {
    check_finite("shift", alpha)?;
    check_finite("exponent", beta)?;
    if !(alpha > 0.0) || !(beta > 0.0) {
        return Err(Error::Domain(format!(
            "shift and exponent must be positive, got ({alpha}, {beta})"
        )));
    }
    Ok(RadialFunction {
        repr: Repr::Analytic(AnalyticKind::InverseMultiquadric { alpha, beta }),
        dim: 1,
        support: None,
        decay: DecayClass::PowerLaw { exponent: 2.0 * beta },
    })
}

// ---------------------------------------------------------------------------
// Closure operations
// ---------------------------------------------------------------------------

/// Argument scaling x ↦ f(λx), λ > 0.
pub fn scale(f: &RadialFunction, lam: f64) -> Result<RadialFunction> {
    check_finite("scale factor", lam)?;
    if !(lam > 0.0) {
        return Err(Error::Domain(format!("scale factor must be positive, got {lam}")));
    }
    let support = f.support.map(|r| r / lam);
    let decay = f.decay.rescale_argument(lam);
    let repr = match &f.repr {
        Repr::Piecewise(pp) => Repr::Piecewise(pp.scale_arg(lam)?),
        Repr::GaussPoly { poly, rate } => {
            Repr::GaussPoly { poly: poly.scale_arg(lam), rate: rate * lam * lam }
        }
        Repr::Hermite { .. } if lam == 1.0 => {
            return Ok(f.clone());
        }
        Repr::Hermite { poly, .. } => {
            Repr::GaussPoly { poly: poly.scale_arg(lam), rate: PI * lam * lam }
        }
        Repr::Scaled { inner, factor } => {
            Repr::Scaled { inner: inner.clone(), factor: factor * lam }
        }
        _ => Repr::Scaled { inner: Box::new(f.clone()), factor: lam },
    };
    Ok(RadialFunction { repr, dim: f.dim, support, decay })
}

/// Scale mixture x ↦ ∫ base(x/t) dν(t).
pub fn mixture(base: &RadialFunction, nu: &ScaleMeasure) -> Result<RadialFunction> {
    let t_max = nu.max_scale();
    let support = base.support.map(|r| r * t_max);
    let decay = match support {
        Some(_) => DecayClass::Compact,
        None => base.decay.rescale_argument(t_max.recip()),
    };
    Ok(RadialFunction {
        repr: Repr::Mixture { base: Box::new(base.clone()), measure: nu.clone() },
        dim: base.dim,
        support,
        decay,
    })
}

fn require_same_dim(f: &RadialFunction, g: &RadialFunction) -> Result<u32> {
    if f.dim != g.dim {
        return Err(Error::Domain(format!(
            "dimension mismatch: {} vs {}",
            f.dim, g.dim
        )));
    }
    Ok(f.dim)
}

/// Pointwise product. Exact for piecewise×piecewise and Gaussian×Gaussian.
pub fn product(f: &RadialFunction, g: &RadialFunction) -> Result<RadialFunction> {
    let dim = require_same_dim(f, g)?;
    let support = match (f.support, g.support) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) => Some(a),
        (None, b) => b,
    };
    let decay = match support {
        Some(_) => DecayClass::Compact,
        None => product_decay(&f.decay, &g.decay),
    };
    if let (Repr::Piecewise(pa), Repr::Piecewise(pb)) = (&f.repr, &g.repr) {
        let pp = pa.product(pb)?;
        return Ok(RadialFunction { repr: Repr::Piecewise(pp), dim, support, decay });
    }
    if let (Some((p1, r1)), Some((p2, r2))) = (f.gauss_parts(), g.gauss_parts()) {
        return Ok(RadialFunction {
            repr: Repr::GaussPoly { poly: p1.mul(p2), rate: r1 + r2 },
            dim,
            support,
            decay,
        });
    }
    Ok(RadialFunction {
        repr: Repr::Product(Box::new(f.clone()), Box::new(g.clone())),
        dim,
        support,
        decay,
    })
}

/// d-dimensional radial convolution. Exact for piecewise factors on the line
/// and for plain Gaussians; otherwise a quadrature-backed node. Both factors
/// must decay fast enough to be integrable.
pub fn convolve(f: &RadialFunction, g: &RadialFunction) -> Result<RadialFunction> {
    let dim = require_same_dim(f, g)?;
    for h in [f, g] {
        if !h.decay.is_integrable(dim) {
            return Err(Error::Unsupported(
                "convolution requires integrable factors (power-law tails are too slow)".into(),
            ));
        }
        if matches!(h.decay, DecayClass::PowerLaw { .. }) {
            return Err(Error::Unsupported(
                "convolution of power-law tails is not supported".into(),
            ));
        }
    }
    let support = match (f.support, g.support) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    let decay = match support {
        Some(_) => DecayClass::Compact,
        None => convolution_decay(&f.decay, &g.decay),
    };
    if dim == 1 {
        if let (Repr::Piecewise(pa), Repr::Piecewise(pb)) = (&f.repr, &g.repr) {
            let pp = pa.convolve(pb)?;
            return Ok(RadialFunction { repr: Repr::Piecewise(pp), dim, support, decay });
        }
    }
    // Plain Gaussians convolve in closed form in every dimension.
    if let (Some((p1, r1)), Some((p2, r2))) = (f.gauss_parts(), g.gauss_parts()) {
        if p1.degree() == 0 && p2.degree() == 0 && !p1.is_zero() && !p2.is_zero() {
            let c = p1.0[0] * p2.0[0] * (PI / (r1 + r2)).powf(dim as f64 / 2.0);
            let rate = r1 * r2 / (r1 + r2);
            return Ok(RadialFunction {
                repr: Repr::GaussPoly { poly: PolyF::new(vec![c]), rate },
                dim,
                support,
                decay,
            });
        }
    }
    Ok(RadialFunction {
        repr: Repr::Convolution(Box::new(f.clone()), Box::new(g.clone())),
        dim,
        support,
        decay,
    })
}

/// k-th derivative of the profile. Exact for piecewise-polynomial functions
/// (failing with the innermost non-smooth point when the requested order does
/// not exist) and Gaussian-type functions; other representations are not
/// differentiated symbolically.
pub fn derivative(f: &RadialFunction, k: usize) -> Result<RadialFunction> {
    if k == 0 {
        return Ok(f.clone());
    }
    match &f.repr {
        Repr::Piecewise(pp) => Ok(RadialFunction::from_piecewise(pp.derivative(k)?, f.dim)),
        Repr::GaussPoly { poly, rate } => Ok(RadialFunction {
            repr: Repr::GaussPoly { poly: gauss_poly_derivative(poly, *rate, k), rate: *rate },
            dim: f.dim,
            support: None,
            decay: f.decay.clone(),
        }),
        Repr::Hermite { poly, .. } => Ok(RadialFunction {
            repr: Repr::GaussPoly { poly: gauss_poly_derivative(poly, PI, k), rate: PI },
            dim: f.dim,
            support: None,
            decay: f.decay.clone(),
        }),
        _ => Err(Error::Unsupported(
            "derivative is implemented for piecewise-polynomial and Gaussian-type functions"
                .into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Convolution evaluation by quadrature
// ---------------------------------------------------------------------------

/// Truncation radius for a factor inside a convolution integral.
fn conv_radius(f: &RadialFunction) -> f64 {
    f.support
        .or_else(|| f.decay.radius_below(1e-16))
        .unwrap_or(50.0)
}

/// Integrate over [a, b] with panels cut at the given abscissas, each panel
/// handled by the double-exponential rule (robust to integrable endpoint
/// singularities at the cuts).
pub(crate) fn integrate_cuts(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    cuts: &[f64],
    tol: f64,
) -> f64 {
    if !(a < b) {
        return 0.0;
    }
    quad::plan_panels(a, b, cuts, f64::INFINITY)
        .into_iter()
        .map(|(p0, p1)| quad::tanh_sinh(f, p0, p1, tol))
        .sum()
}

/// Radial convolution value at r ≥ 0 in dimension d, by quadrature. Panels
/// are cut at every kink of either factor, and each panel uses the
/// double-exponential rule so integrable endpoint singularities (fractional
/// bump powers) are absorbed.
fn conv_eval(f: &RadialFunction, g: &RadialFunction, dim: u32, r: f64) -> f64 {
    let tol = 1e-12;
    let rf = conv_radius(f);
    let rg = conv_radius(g);
    match dim {
        1 => {
            let a = (-rf).max(r - rg);
            let b = rf.min(r + rg);
            let mut cuts = f.quad_breakpoints();
            cuts.extend(g.quad_breakpoints().iter().map(|c| r - c));
            cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
            integrate_cuts(&mut |t| f.eval(t) * g.eval(r - t), a, b, &cuts, tol)
        }
        3 => {
            // Reduce over spherical shells: the inner factor integrates over
            // the sphere of radius s centred at distance r, touching g on
            // [|r-s|, r+s].
            let g_cuts = g.quad_breakpoints();
            if r < 1e-9 {
                let mut cuts = f.quad_breakpoints();
                cuts.extend(g_cuts.iter().copied());
                cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
                let mut h = |s: f64| 4.0 * PI * s * s * f.eval(s) * g.eval(s);
                return integrate_cuts(&mut h, 0.0, rf.min(rg), &cuts, tol);
            }
            let mut outer = |s: f64| {
                let (u0, u1) = ((r - s).abs(), (r + s).min(rg));
                let mut inner = |u: f64| u * g.eval(u);
                s * f.eval(s) * integrate_cuts(&mut inner, u0, u1, &g_cuts, tol * 10.0)
            };
            let f_cuts = f.quad_breakpoints();
            (2.0 * PI / r) * integrate_cuts(&mut outer, 0.0, rf, &f_cuts, tol)
        }
        2 => {
            // Polar reduction; the angular integral is cut where the argument
            // of g crosses one of its kinks.
            let g_cuts = g.quad_breakpoints();
            let mut outer = |s: f64| {
                let mut theta_cuts = Vec::new();
                for &c in &g_cuts {
                    if c <= 0.0 || s <= 0.0 {
                        continue;
                    }
                    let cos_t = (r * r + s * s - c * c) / (2.0 * r * s).max(1e-300);
                    if cos_t.abs() <= 1.0 {
                        theta_cuts.push(cos_t.acos());
                    }
                }
                theta_cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
                let mut inner = |th: f64| {
                    let d = (r * r + s * s - 2.0 * r * s * th.cos()).max(0.0).sqrt();
                    g.eval(d)
                };
                let ang = integrate_cuts(&mut inner, 0.0, PI, &theta_cuts, tol * 10.0);
                2.0 * s * f.eval(s) * ang
            };
            let f_cuts = f.quad_breakpoints();
            integrate_cuts(&mut outer, 0.0, rf, &f_cuts, tol)
        }
        d => {
            // General dimension: weight the angular average with sin^{d-2}θ.
            let lam = 0.5 * d as f64 - 1.0;
            let gamma_half = crate::special::gamma(0.5 * (d as f64 - 1.0))
                .unwrap_or(f64::NAN);
            let surface = 2.0 * PI.powf(0.5 * (d as f64 - 1.0)) / gamma_half;
            let g_cuts = g.quad_breakpoints();
            let mut outer = |s: f64| {
                let mut inner = |th: f64| {
                    let dist = (r * r + s * s - 2.0 * r * s * th.cos()).max(0.0).sqrt();
                    g.eval(dist) * th.sin().powf(2.0 * lam)
                };
                let mut theta_cuts = Vec::new();
                for &c in &g_cuts {
                    if c <= 0.0 || s <= 0.0 {
                        continue;
                    }
                    let cos_t = (r * r + s * s - c * c) / (2.0 * r * s).max(1e-300);
                    if cos_t.abs() <= 1.0 {
                        theta_cuts.push(cos_t.acos());
                    }
                }
                theta_cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
                let ang = integrate_cuts(&mut inner, 0.0, PI, &theta_cuts, tol * 10.0);
                s.powi(d as i32 - 1) * f.eval(s) * ang
            };
            let f_cuts = f.quad_breakpoints();
            surface * integrate_cuts(&mut outer, 0.0, rf, &f_cuts, tol)
        }
    }
}
