//! Positive bounded measures on (0, ∞): atoms plus an optional sampled
//! density. These drive scale mixtures F(x) = ∫ ω(x/t) dν(t) and are the
//! output of the triangle-mixture recovery.

use crate::error::{Error, Result};

/// Nonnegative density known through samples on a sorted grid; integrated with
/// trapezoidal weights (measures in this crate are user-supplied and small).
#[derive(Clone, Debug, PartialEq)]
pub struct SampledDensity {
    points: Vec<f64>,
    values: Vec<f64>,
}

impl SampledDensity {
    pub fn new(points: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if points.len() != values.len() || points.len() < 2 {
            return Err(Error::Domain(
                "sampled density needs equally many points and values (at least 2)".into(),
            ));
        }
        if points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("density grid must be strictly increasing".into()));
        }
        if points[0] < 0.0 {
            return Err(Error::Domain("density grid must lie in [0, ∞)".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Domain("density values must be finite and nonnegative".into()));
        }
        Ok(SampledDensity { points, values })
    }

    /// Build by sampling a closure on a uniform grid.
    pub fn from_fn(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let points: Vec<f64> =
            (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
        let values = points.iter().map(|&t| f(t)).collect();
        Self::new(points, values)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Trapezoidal ∫ g(t) ρ(t) dt over the grid.
    pub fn integrate(&self, mut g: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.points.len() {
            let (t0, t1) = (self.points[i - 1], self.points[i]);
            let f0 = g(t0) * self.values[i - 1];
            let f1 = g(t1) * self.values[i];
            acc += 0.5 * (t1 - t0) * (f0 + f1);
        }
        acc
    }

    pub fn mass(&self) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.points.len() {
            acc += 0.5 * (self.points[i] - self.points[i - 1])
                * (self.values[i - 1] + self.values[i]);
        }
        acc
    }
}

/// Positive bounded measure on (0, ∞): finitely many atoms plus an optional
/// sampled density.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ScaleMeasure {
    atoms: Vec<(f64, f64)>,
    density: Option<SampledDensity>,
}

impl ScaleMeasure {
    /// Atoms as (location, mass); locations must be strictly positive, masses
    /// strictly positive, total mass finite and > 0.
    pub fn from_atoms(atoms: Vec<(f64, f64)>) -> Result<Self> {
        let m = ScaleMeasure { atoms, density: None };
        m.validate()?;
        Ok(m)
    }

    pub fn dirac(t: f64) -> Result<Self> {
        Self::from_atoms(vec![(t, 1.0)])
    }

    pub fn with_density(mut self, density: SampledDensity) -> Result<Self> {
        self.density = Some(density);
        self.validate()?;
        Ok(self)
    }

    pub fn from_density(density: SampledDensity) -> Result<Self> {
        ScaleMeasure { atoms: Vec::new(), density: Some(density) }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        for &(t, m) in &self.atoms {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Domain(format!("atom location must be in (0, ∞), got {t}")));
            }
            if !(m > 0.0) || !m.is_finite() {
                return Err(Error::Domain(format!("atom mass must be positive, got {m}")));
            }
        }
        let mass = self.mass();
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::Domain(format!(
                "measure must have positive finite total mass, got {mass}"
            )));
        }
        Ok(())
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn density(&self) -> Option<&SampledDensity> {
        self.density.as_ref()
    }

    pub fn mass(&self) -> f64 {
        let atom_mass: f64 = self.atoms.iter().map(|&(_, m)| m).sum();
        atom_mass + self.density.as_ref().map_or(0.0, |d| d.mass())
    }

    /// ∫ g(t) dν(t): exact atom sum plus trapezoidal density part.
    pub fn integrate(&self, mut g: impl FnMut(f64) -> f64) -> f64 {
        let atom_part: f64 = self.atoms.iter().map(|&(t, m)| m * g(t)).sum();
        atom_part + self.density.as_ref().map_or(0.0, |d| d.integrate(&mut g))
    }

    /// Largest scale carrying mass (atoms and density support end).
    pub fn max_scale(&self) -> f64 {
        let atom_max = self.atoms.iter().map(|&(t, _)| t).fold(0.0, f64::max);
        let dens_max = self
            .density
            .as_ref()
            .map_or(0.0, |d| *d.points().last().unwrap());
        atom_max.max(dens_max)
    }

    /// Number of distinct scales carrying mass: each atom counts once, a
    /// density with positive mass counts as two (an interval of scales).
    pub fn distinct_scale_count(&self) -> usize {
        let dens = match &self.density {
            Some(d) if d.mass() > 0.0 => 2,
            _ => 0,
        };
        self.atoms.len() + dens
    }
}
