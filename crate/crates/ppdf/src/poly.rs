//! Exact polynomial and piecewise-polynomial arithmetic over arbitrary
//! precision rationals, plus a small f64 polynomial helper for the
//! Gaussian-times-polynomial representation.
//!
//! Compactly supported profiles (triangle, Wu's function, φ, …) live here as
//! [`PiecewisePoly`]: polynomial pieces between exact rational breakpoints,
//! zero outside. Convolution, products, derivatives, and argument scaling are
//! all closed operations with exact coefficients; f64 evaluation goes through
//! cached Horner tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact conversion: every finite f64 is a dyadic rational.
pub fn rat_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x)
        .ok_or_else(|| Error::Domain(format!("cannot represent {x} as a rational")))
}

pub fn rat_to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("BigRational always converts (possibly with rounding)")
}

// ---------------------------------------------------------------------------
// RatPoly: dense univariate polynomial over BigRational
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    /// Ascending coefficients; no trailing zeros; empty = zero polynomial.
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| rat_i(c)).collect())
    }

    pub fn from_f64s(cs: &[f64]) -> Result<Self> {
        Ok(Self::new(cs.iter().map(|&c| rat_from_f64(c)).collect::<Result<_>>()?))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat_to_f64).collect()
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        RatPoly::new(out)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.scale(&rat_i(-1)))
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_i(i as i64 + 1))
                .collect(),
        )
    }

    pub fn derivative_n(&self, k: usize) -> RatPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn antiderivative(&self) -> RatPoly {
        let mut out = vec![BigRational::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / rat_i(i as i64 + 1));
        }
        RatPoly::new(out)
    }

    /// P(a·x + b), expanded.
    pub fn compose_linear(&self, a: &BigRational, b: &BigRational) -> RatPoly {
        let lin = RatPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&RatPoly::constant(c.clone()));
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// BiPoly: polynomials in (x, t) used by exact convolution
// ---------------------------------------------------------------------------

/// Bivariate polynomial Σ_k R_k(x) · t^k; index = power of t.
#[derive(Clone, Debug)]
struct BiPoly {
    t_coeffs: Vec<RatPoly>,
}

impl BiPoly {
    fn zero() -> Self {
        BiPoly { t_coeffs: Vec::new() }
    }

    /// Q(x − t) as a bivariate polynomial.
    fn from_shifted(q: &RatPoly) -> Self {
        // Iteratively build (x − t)^j and accumulate q_j · (x − t)^j.
        let mut acc = BiPoly::zero();
        let mut pow = BiPoly { t_coeffs: vec![RatPoly::from_i64s(&[1])] }; // (x−t)^0
        for (j, c) in q.coeffs().iter().enumerate() {
            if j > 0 {
                pow = pow.mul_by_x_minus_t();
            }
            acc = acc.add(&pow.scale(c));
        }
        acc
    }

    fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.t_coeffs.len().max(other.t_coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.t_coeffs.get(i).cloned().unwrap_or_else(RatPoly::zero);
            let b = other.t_coeffs.get(i).cloned().unwrap_or_else(RatPoly::zero);
            out.push(a.add(&b));
        }
        BiPoly { t_coeffs: out }
    }

    fn scale(&self, k: &BigRational) -> BiPoly {
        BiPoly { t_coeffs: self.t_coeffs.iter().map(|p| p.scale(k)).collect() }
    }

    fn mul_by_x_minus_t(&self) -> BiPoly {
        let x_poly = RatPoly::from_i64s(&[0, 1]);
        let n = self.t_coeffs.len();
        let mut out = vec![RatPoly::zero(); n + 1];
        for (k, p) in self.t_coeffs.iter().enumerate() {
            out[k] = out[k].add(&p.mul(&x_poly));
            out[k + 1] = out[k + 1].sub(p);
        }
        BiPoly { t_coeffs: out }
    }

    /// Multiply by a polynomial purely in t.
    fn mul_t_poly(&self, p: &RatPoly) -> BiPoly {
        if self.t_coeffs.is_empty() || p.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![RatPoly::zero(); self.t_coeffs.len() + p.degree()];
        for (i, c) in p.coeffs().iter().enumerate() {
            for (k, q) in self.t_coeffs.iter().enumerate() {
                out[i + k] = out[i + k].add(&q.scale(c));
            }
        }
        BiPoly { t_coeffs: out }
    }

    /// Antiderivative with respect to t.
    fn antiderivative_t(&self) -> BiPoly {
        let mut out = vec![RatPoly::zero()];
        for (k, p) in self.t_coeffs.iter().enumerate() {
            out.push(p.scale(&(BigRational::new(BigInt::from(1), BigInt::from(k as i64 + 1)))));
        }
        BiPoly { t_coeffs: out }
    }

    /// Substitute t := α·x + β, producing a univariate polynomial in x.
    fn substitute_t(&self, alpha: &BigRational, beta: &BigRational) -> RatPoly {
        let lin = RatPoly::new(vec![beta.clone(), alpha.clone()]);
        let mut acc = RatPoly::zero();
        let mut pow = RatPoly::from_i64s(&[1]);
        for (k, p) in self.t_coeffs.iter().enumerate() {
            if k > 0 {
                pow = pow.mul(&lin);
            }
            acc = acc.add(&p.mul(&pow));
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// PiecewisePoly
// ---------------------------------------------------------------------------

/// Compactly supported piecewise polynomial on ℝ: pieces between exact
/// rational breakpoints, identically zero outside `[breaks[0], breaks[n]]`.
#[derive(Clone, Debug)]
pub struct PiecewisePoly {
    breaks: Vec<BigRational>,
    pieces: Vec<RatPoly>,
    // Cached f64 views for fast evaluation.
    breaks_f: Vec<f64>,
    pieces_f: Vec<Vec<f64>>,
}

impl PiecewisePoly {
    /// Construct with a continuity check at interior breakpoints (adjacent
    /// pieces must agree there to 1e-12 relative). Jumps at the two support
    /// endpoints are allowed (indicators are legal profiles).
    pub fn new(breaks: Vec<BigRational>, pieces: Vec<RatPoly>) -> Result<Self> {
        let pp = Self::from_parts_unchecked(breaks, pieces)?;
        for i in 1..pp.pieces.len() {
            let b = &pp.breaks[i];
            let left = pp.pieces[i - 1].eval_rat(b);
            let right = pp.pieces[i].eval_rat(b);
            let diff = rat_to_f64(&(&left - &right)).abs();
            let scale = rat_to_f64(&left).abs().max(1.0);
            if diff > 1e-12 * scale {
                return Err(Error::Domain(format!(
                    "piecewise profile discontinuous at breakpoint {} (gap {diff:.3e})",
                    rat_to_f64(b)
                )));
            }
        }
        Ok(pp)
    }

    /// Internal constructor without the continuity check (derivatives and sums
    /// of profiles may legitimately jump).
    pub(crate) fn from_parts_unchecked(
        breaks: Vec<BigRational>,
        pieces: Vec<RatPoly>,
    ) -> Result<Self> {
        if breaks.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(Error::Domain(
                "piecewise polynomial needs n pieces and n+1 breakpoints".into(),
            ));
        }
        for w in breaks.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Domain("breakpoints must be strictly increasing".into()));
            }
        }
        let breaks_f = breaks.iter().map(rat_to_f64).collect();
        let pieces_f = pieces.iter().map(|p| p.to_f64_coeffs()).collect();
        Ok(PiecewisePoly { breaks, pieces, breaks_f, pieces_f })
    }

    /// Build an even function from a profile given on [0, R]: pieces are
    /// mirrored to negative arguments with x ↦ −x.
    pub fn even_from_profile(breaks: Vec<BigRational>, pieces: Vec<RatPoly>) -> Result<Self> {
        if breaks.first().map_or(true, |b| !b.is_zero()) {
            return Err(Error::Domain("profile must start at 0".into()));
        }
        let minus_one = rat_i(-1);
        let zero = BigRational::zero();
        let mut full_breaks: Vec<BigRational> =
            breaks.iter().skip(1).rev().map(|b| -b.clone()).collect();
        full_breaks.extend(breaks.iter().cloned());
        let mut full_pieces: Vec<RatPoly> =
            pieces.iter().rev().map(|p| p.compose_linear(&minus_one, &zero)).collect();
        full_pieces.extend(pieces.iter().cloned());
        Self::new(full_breaks, full_pieces)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breaks_f[0], *self.breaks_f.last().unwrap())
    }

    pub fn breaks_f64(&self) -> &[f64] {
        &self.breaks_f
    }

    pub fn breaks_rat(&self) -> &[BigRational] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[RatPoly] {
        &self.pieces
    }

    pub fn piece_f64_coeffs(&self, i: usize) -> &[f64] {
        &self.pieces_f[i]
    }

    /// Index of the piece containing x, or None outside the support. Interior
    /// breakpoints resolve to the right piece; the final breakpoint to the
    /// last piece.
    pub fn locate(&self, x: f64) -> Option<usize> {
        let n = self.pieces.len();
        let (a, b) = self.support();
        if x < a || x > b {
            return None;
        }
        match self.breaks_f.partition_point(|&bp| bp <= x) {
            0 => Some(0),
            k if k > n => Some(n - 1),
            k => Some(k - 1),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.locate(x) {
            None => 0.0,
            Some(i) => horner(&self.pieces_f[i], x),
        }
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let n = self.pieces.len();
        if x < &self.breaks[0] || x > &self.breaks[n] {
            return BigRational::zero();
        }
        let mut i = 0;
        while i + 1 < n && x >= &self.breaks[i + 1] {
            i += 1;
        }
        self.pieces[i].eval_rat(x)
    }

    /// One-sided derivative of given order just left/right of x; 0 outside the
    /// support.
    pub fn one_sided_derivative(&self, x: f64, order: usize, from_right: bool) -> f64 {
        let (a, b) = self.support();
        // Outside (or looking outward from a support endpoint) the function is
        // identically zero.
        if (from_right && (x >= b || x < a)) || (!from_right && (x <= a || x > b)) {
            return 0.0;
        }
        let i = match self.breaks_f.iter().position(|&bp| bp == x) {
            Some(k) if from_right => k.min(self.pieces.len() - 1),
            Some(k) => k.saturating_sub(1),
            None => match self.locate(x) {
                Some(i) => i,
                None => return 0.0,
            },
        };
        let d = self.pieces[i].derivative_n(order);
        horner(&d.to_f64_coeffs(), x)
    }

    pub fn add(&self, other: &PiecewisePoly) -> Result<PiecewisePoly> {
        let mut breaks: Vec<BigRational> = self.breaks.clone();
        breaks.extend(other.breaks.iter().cloned());
        breaks.sort();
        breaks.dedup();
        let mut pieces = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let mid = (&w[0] + &w[1]) / rat_i(2);
            let pa = self.piece_at_rat(&mid);
            let pb = other.piece_at_rat(&mid);
            pieces.push(match (pa, pb) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => RatPoly::zero(),
            });
        }
        Self::from_parts_unchecked(breaks, pieces)
    }

    /// Linear combination over identical breakpoint grids (used to assemble
    /// derivative combinations without re-merging).
    pub fn linear_combo(terms: &[(BigRational, &PiecewisePoly)]) -> Result<PiecewisePoly> {
        let first = terms.first().ok_or_else(|| Error::Domain("empty combination".into()))?.1;
        let mut pieces = vec![RatPoly::zero(); first.pieces.len()];
        for (w, pp) in terms {
            if pp.breaks != first.breaks {
                return Err(Error::Domain("linear_combo requires identical breakpoints".into()));
            }
            for (acc, p) in pieces.iter_mut().zip(&pp.pieces) {
                *acc = acc.add(&p.scale(w));
            }
        }
        Self::from_parts_unchecked(first.breaks.clone(), pieces)
    }

    fn piece_at_rat(&self, x: &BigRational) -> Option<&RatPoly> {
        let n = self.pieces.len();
        if x < &self.breaks[0] || x > &self.breaks[n] {
            return None;
        }
        let mut i = 0;
        while i + 1 < n && x >= &self.breaks[i + 1] {
            i += 1;
        }
        Some(&self.pieces[i])
    }

    /// P(λx): support shrinks by λ.
    pub fn scale_arg(&self, lam: f64) -> Result<PiecewisePoly> {
        if !(lam > 0.0) {
            return Err(Error::Domain(format!("scaling factor must be positive, got {lam}")));
        }
        let l = rat_from_f64(lam)?;
        let zero = BigRational::zero();
        let breaks = self.breaks.iter().map(|b| b / &l).collect();
        let pieces = self.pieces.iter().map(|p| p.compose_linear(&l, &zero)).collect();
        Self::from_parts_unchecked(breaks, pieces)
    }

    /// k-th derivative with smoothness validation: orders 0..k−1 must be
    /// continuous at interior breakpoints and vanish at the support endpoints
    /// (the function continues as 0 outside); a jump at order k is allowed.
    pub fn derivative(&self, k: usize) -> Result<PiecewisePoly> {
        if k == 0 {
            return Ok(self.clone());
        }
        let n = self.pieces.len();
        // Scan breakpoints from the origin outward (positive representative
        // first on ± ties) so the reported non-differentiable point is the
        // innermost one.
        let mut order_of_points: Vec<usize> = (0..=n).collect();
        order_of_points.sort_by(|&i, &j| {
            let (a, b) = (self.breaks_f[i], self.breaks_f[j]);
            a.abs().partial_cmp(&b.abs()).unwrap().then(b.partial_cmp(&a).unwrap())
        });
        for order in 0..k {
            for &i in &order_of_points {
                let b = &self.breaks[i];
                // One-sided values; outside the support the function is 0.
                let left = if i == 0 {
                    BigRational::zero()
                } else {
                    self.pieces[i - 1].derivative_n(order).eval_rat(b)
                };
                let right = if i == n {
                    BigRational::zero()
                } else {
                    self.pieces[i].derivative_n(order).eval_rat(b)
                };
                if left != right && rat_to_f64(&(&left - &right)).abs() > 1e-12 {
                    return Err(Error::Domain(format!(
                        "derivative of order {k} undefined: order-{order} jump at x = {}",
                        rat_to_f64(b)
                    )));
                }
            }
        }
        self.derivative_unchecked(k)
    }

    /// Piecewise k-th derivative without smoothness validation (used where
    /// jump magnitudes are themselves the quantity of interest).
    pub fn derivative_unchecked(&self, k: usize) -> Result<PiecewisePoly> {
        let pieces = self.pieces.iter().map(|p| p.derivative_n(k)).collect();
        Self::from_parts_unchecked(self.breaks.clone(), pieces)
    }

    /// ∫ over ℝ, exactly.
    pub fn integrate_exact(&self) -> BigRational {
        let mut total = BigRational::zero();
        for (i, p) in self.pieces.iter().enumerate() {
            let a = p.antiderivative();
            total += a.eval_rat(&self.breaks[i + 1]) - a.eval_rat(&self.breaks[i]);
        }
        total
    }

    /// Exact convolution (∫ f(t) g(x−t) dt) of two compactly supported
    /// piecewise polynomials.
    pub fn convolve(&self, other: &PiecewisePoly) -> Result<PiecewisePoly> {
        // Candidate output breakpoints: all pairwise sums of breakpoints.
        let mut breaks: Vec<BigRational> = Vec::new();
        for a in &self.breaks {
            for c in &other.breaks {
                breaks.push(a + c);
            }
        }
        breaks.sort();
        breaks.dedup();

        let mut pieces = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let mid = (&w[0] + &w[1]) / rat_i(2);
            let mut piece = RatPoly::zero();
            for (i, p) in self.pieces.iter().enumerate() {
                let (a1, b1) = (&self.breaks[i], &self.breaks[i + 1]);
                for (j, q) in other.pieces.iter().enumerate() {
                    let (a2, b2) = (&other.breaks[j], &other.breaks[j + 1]);
                    // Overlap in x for this pair: [a1+a2, b1+b2].
                    if &mid <= &(a1 + a2) || &mid >= &(b1 + b2) {
                        continue;
                    }
                    // H(x, t) = ∫ p(t) q(x−t) dt (antiderivative in t).
                    let h = BiPoly::from_shifted(q).mul_t_poly(p).antiderivative_t();
                    // Integration limits, affine in x on this interval:
                    // lower = max(a1, x−b2), upper = min(b1, x−a2).
                    let one = rat_i(1);
                    let zero = BigRational::zero();
                    let lower = if a1 >= &(&mid - b2) {
                        h.substitute_t(&zero, a1)
                    } else {
                        h.substitute_t(&one, &-b2.clone())
                    };
                    let upper = if b1 <= &(&mid - a2) {
                        h.substitute_t(&zero, b1)
                    } else {
                        h.substitute_t(&one, &-a2.clone())
                    };
                    piece = piece.add(&upper.sub(&lower));
                }
            }
            pieces.push(piece);
        }
        Self::from_parts_unchecked(breaks, pieces)
    }

    /// Pointwise product; support is the intersection. Disjoint supports give
    /// the zero function on a token interval.
    pub fn product(&self, other: &PiecewisePoly) -> Result<PiecewisePoly> {
        let lo = self.breaks[0].clone().max(other.breaks[0].clone());
        let hi =
            self.breaks.last().unwrap().clone().min(other.breaks.last().unwrap().clone());
        if lo >= hi {
            return Self::from_parts_unchecked(vec![rat_i(0), rat_i(1)], vec![RatPoly::zero()]);
        }
        let mut breaks: Vec<BigRational> = self
            .breaks
            .iter()
            .chain(other.breaks.iter())
            .filter(|b| **b >= lo && **b <= hi)
            .cloned()
            .collect();
        breaks.push(lo);
        breaks.push(hi);
        breaks.sort();
        breaks.dedup();
        let mut pieces = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let mid = (&w[0] + &w[1]) / rat_i(2);
            let a = self.piece_at_rat(&mid);
            let b = other.piece_at_rat(&mid);
            pieces.push(match (a, b) {
                (Some(a), Some(b)) => a.mul(b),
                _ => RatPoly::zero(),
            });
        }
        Self::from_parts_unchecked(breaks, pieces)
    }
}

pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

// ---------------------------------------------------------------------------
// PolyF: small f64 polynomial for the Gaussian-times-polynomial family
// ---------------------------------------------------------------------------

/// Dense f64 polynomial (ascending coefficients). Used where coefficients are
/// inherently floating point (Hermite combinations, transform images).
#[derive(Clone, Debug, PartialEq)]
pub struct PolyF(pub Vec<f64>);

impl PolyF {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last().map_or(false, |&c| c == 0.0) {
            coeffs.pop();
        }
        PolyF(coeffs)
    }

    pub fn zero() -> Self {
        PolyF(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.0, x)
    }

    pub fn add(&self, other: &PolyF) -> PolyF {
        let n = self.0.len().max(other.0.len());
        PolyF::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0.0) + other.0.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }

    pub fn scale(&self, k: f64) -> PolyF {
        PolyF::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &PolyF) -> PolyF {
        if self.is_zero() || other.is_zero() {
            return PolyF::zero();
        }
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyF::new(out)
    }

    pub fn derivative(&self) -> PolyF {
        if self.0.len() <= 1 {
            return PolyF::zero();
        }
        PolyF::new(self.0[1..].iter().enumerate().map(|(i, c)| c * (i as f64 + 1.0)).collect())
    }

    /// P(kx) — argument scaling.
    pub fn scale_arg(&self, k: f64) -> PolyF {
        let mut pow = 1.0;
        PolyF::new(
            self.0
                .iter()
                .map(|c| {
                    let v = c * pow;
                    pow *= k;
                    v
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_r(r: i64) -> PiecewisePoly {
        // (r/2·indicator) self-convolution computed exactly: (r − |x|)₊.
        let half = rat(r, 2);
        let chi = PiecewisePoly::new(
            vec![-half.clone(), half],
            vec![RatPoly::from_i64s(&[1])],
        )
        .unwrap();
        chi.convolve(&chi).unwrap()
    }

    #[test]
    fn indicator_convolution_is_triangle() {
        let t = triangle_r(2);
        // Expect breaks {−2, 0, 2}, pieces 2+x and 2−x.
        assert_eq!(t.breaks_rat().len(), 3);
        assert_eq!(t.pieces()[0], RatPoly::from_i64s(&[2, 1]));
        assert_eq!(t.pieces()[1], RatPoly::from_i64s(&[2, -1]));
        assert_eq!(t.eval(0.0), 2.0);
        assert_eq!(t.eval(1.0), 1.0);
        assert_eq!(t.eval(2.0), 0.0);
        assert_eq!(t.eval(2.5), 0.0);
        assert_eq!(t.eval(-1.5), 0.5);
    }

    #[test]
    fn quadratic_bump_self_convolution_matches_expanded_closed_form() {
        // (1−x²)₊² convolved with itself against the exact expansion of
        // (2−x)⁵(x⁴+10x³+36x²+40x+16)/630 on [0,2], oracle computed here by
        // independent polynomial expansion.
        let m2 = PiecewisePoly::new(
            vec![rat_i(-1), rat_i(1)],
            vec![RatPoly::from_i64s(&[1, 0, -1]).mul(&RatPoly::from_i64s(&[1, 0, -1]))],
        )
        .unwrap();
        let phi = m2.convolve(&m2).unwrap();

        let lead = RatPoly::from_i64s(&[2, -1]); // (2 − x)
        let mut quintic = RatPoly::from_i64s(&[1]);
        for _ in 0..5 {
            quintic = quintic.mul(&lead);
        }
        let tail = RatPoly::from_i64s(&[16, 40, 36, 10, 1]);
        let expected = quintic.mul(&tail).scale(&rat(1, 630));

        // φ should have breaks {−2, 0, 2} with the right piece equal to the
        // closed form exactly.
        assert_eq!(phi.breaks_rat(), &[rat_i(-2), rat_i(0), rat_i(2)]);
        assert_eq!(phi.pieces()[1], expected);
        // Spot values: φ(0) = 256/315, φ(1) = 103/630.
        assert_eq!(phi.eval_rat(&rat_i(0)), rat(256, 315));
        assert_eq!(phi.eval_rat(&rat_i(1)), rat(103, 630));
    }

    #[test]
    fn convolution_matches_numeric_quadrature() {
        // Independent Simpson oracle on a generic pair with distinct supports.
        let f = PiecewisePoly::new(
            vec![rat_i(-1), rat_i(0), rat_i(2)],
            vec![RatPoly::from_i64s(&[3, 3]), RatPoly::new(vec![rat_i(3), rat(-3, 2)])],
        )
        .unwrap();
        let g = PiecewisePoly::new(
            vec![rat_i(-1), rat_i(1)],
            vec![RatPoly::from_i64s(&[1, 2, 1])],
        )
        .unwrap();
        let conv = f.convolve(&g).unwrap();
        for &x in &[-1.7, -0.3, 0.0, 0.9, 1.5, 2.4, 2.9] {
            // Piecewise-Simpson oracle with panels split at every kink or jump
            // of the integrand t ↦ f(t)·g(x−t).
            let mut cuts: Vec<f64> = f.breaks_f64().to_vec();
            cuts.extend(g.breaks_f64().iter().map(|&b| x - b));
            cuts.retain(|&c| (-1.0..=2.0).contains(&c));
            cuts.push(-1.0);
            cuts.push(2.0);
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let mut oracle = 0.0;
            for w in cuts.windows(2) {
                // Inset the panel ends slightly so endpoint evaluations take
                // one-sided limits at jumps rather than the piece convention.
                let (a, b) = (w[0] + 1e-9, w[1] - 1e-9);
                let n = 4000;
                let h = (b - a) / n as f64;
                let mut s = 0.0;
                for k in 0..=n {
                    let t = a + k as f64 * h;
                    let wt = if k == 0 || k == n {
                        1.0
                    } else if k % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    s += wt * f.eval(t) * g.eval(x - t);
                }
                oracle += s * h / 3.0;
            }
            assert!(
                (conv.eval(x) - oracle).abs() < 1e-6,
                "convolution mismatch at {x}: {} vs {oracle}",
                conv.eval(x)
            );
        }
    }

    #[test]
    fn product_is_exact() {
        let m1 = PiecewisePoly::new(
            vec![rat_i(-1), rat_i(1)],
            vec![RatPoly::from_i64s(&[1, 0, -1])],
        )
        .unwrap();
        let sq = m1.product(&m1).unwrap();
        assert_eq!(sq.eval_rat(&rat(1, 2)), rat(9, 16));
        let t = triangle_r(2);
        let mixed = t.product(&m1).unwrap();
        // On [0,1]: (2−x)(1−x²).
        assert_eq!(mixed.eval_rat(&rat(1, 2)), rat(9, 8));
        assert_eq!(mixed.eval(1.0), 0.0);
        assert_eq!(mixed.eval(1.5), 0.0);
    }

    #[test]
    fn derivative_validation_names_failure_points() {
        let chi = PiecewisePoly::new(
            vec![rat_i(-1), rat_i(1)],
            vec![RatPoly::from_i64s(&[1])],
        )
        .unwrap();
        match chi.derivative(1) {
            Err(Error::Domain(msg)) => assert!(msg.contains("x = 1"), "got: {msg}"),
            other => panic!("expected domain error, got {other:?}"),
        }
        let t = triangle_r(2);
        assert!(t.derivative(1).is_ok());
        match t.derivative(2) {
            Err(Error::Domain(msg)) => assert!(msg.contains("x = 0"), "got: {msg}"),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn derivative_composition_is_exact() {
        let m2 = PiecewisePoly::new(
            vec![rat_i(-1), rat_i(1)],
            vec![RatPoly::from_i64s(&[1, 0, -1]).mul(&RatPoly::from_i64s(&[1, 0, -1]))],
        )
        .unwrap();
        let phi = m2.convolve(&m2).unwrap();
        let d1d1 = phi.derivative(1).unwrap().derivative(1).unwrap();
        let d2 = phi.derivative(2).unwrap();
        assert_eq!(d1d1.pieces(), d2.pieces());
    }

    #[test]
    fn integrals_are_exact() {
        let m1 = PiecewisePoly::new(
            vec![rat_i(-1), rat_i(1)],
            vec![RatPoly::from_i64s(&[1, 0, -1])],
        )
        .unwrap();
        assert_eq!(m1.integrate_exact(), rat(4, 3));
        let m2sq = RatPoly::from_i64s(&[1, 0, -1]).mul(&RatPoly::from_i64s(&[1, 0, -1]));
        let m2 = PiecewisePoly::new(vec![rat_i(-1), rat_i(1)], vec![m2sq]).unwrap();
        assert_eq!(m2.integrate_exact(), rat(16, 15));
    }

    #[test]
    fn scaling_moves_support_and_values() {
        let t = triangle_r(2);
        let s = t.scale_arg(2.0).unwrap();
        assert_eq!(s.support(), (-1.0, 1.0));
        assert_eq!(s.eval(0.5), t.eval(1.0));
        let back = s.scale_arg(0.5).unwrap();
        assert_eq!(back.eval(1.3), t.eval(1.3));
    }

    #[test]
    fn addition_merges_supports() {
        let t1 = triangle_r(2);
        let t2 = t1.scale_arg(1.0 / 3.0).unwrap(); // support [−6, 6], value t1(x/3)
        let sum = t1.add(&t2).unwrap();
        assert_eq!(sum.eval(0.0), 4.0);
        assert!((sum.eval(1.0) - (1.0 + t1.eval(1.0 / 3.0))).abs() < 1e-15);
        assert_eq!(sum.eval(5.0), t2.eval(5.0));
        assert_eq!(sum.eval(7.0), 0.0);
    }

    #[test]
    fn even_profile_reflection() {
        let p = PiecewisePoly::even_from_profile(
            vec![rat_i(0), rat_i(1), rat_i(2)],
            vec![RatPoly::from_i64s(&[2, -1]), RatPoly::from_i64s(&[2, -1])],
        )
        .unwrap();
        assert_eq!(p.eval(-1.5), p.eval(1.5));
        assert_eq!(p.eval(-0.25), 1.75);
    }

    #[test]
    fn one_sided_derivatives_see_kinks() {
        let t = triangle_r(2);
        assert_eq!(t.one_sided_derivative(0.0, 1, false), 1.0);
        assert_eq!(t.one_sided_derivative(0.0, 1, true), -1.0);
        assert_eq!(t.one_sided_derivative(2.0, 1, false), -1.0);
        assert_eq!(t.one_sided_derivative(2.0, 1, true), 0.0);
    }

    #[test]
    fn polyf_basics() {
        let p = PolyF::new(vec![1.0, 0.0, -2.0]); // 1 − 2x²
        assert_eq!(p.eval(2.0), -7.0);
        assert_eq!(p.derivative().eval(3.0), -12.0);
        let q = p.mul(&p);
        assert_eq!(q.eval(1.5), p.eval(1.5) * p.eval(1.5));
        assert_eq!(p.scale_arg(2.0).eval(1.0), p.eval(2.0));
    }
}
