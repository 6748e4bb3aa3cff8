/// Physical constants of a run. Natural units ħ = m = 1, |e| = 1 by default,
/// with the electron sign convention e = −1 and μ = μ_B = |e|ħ/2m = 0.5.
/// All four are independently configurable so SI-like runs are possible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Reduced Planck constant ħ.
    pub hbar: f64,
    /// Particle mass m.
    pub mass: f64,
    /// Signed charge e (negative for the electron).
    pub charge: f64,
    /// Magnetic moment μ (unsigned; μ_B for the electron).
    pub moment: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            hbar: 1.0,
            mass: 1.0,
            charge: -1.0,
            moment: 0.5,
        }
    }
}

impl Constants {
    /// Charge-to-mass ratio k = e/m, the single number governing the
    /// classical equation of motion.
    pub fn charge_to_mass(&self) -> f64 {
        self.charge / self.mass
    }

    /// Bohr magneton |e|ħ/2m for these constants.
    pub fn bohr_magneton(&self) -> f64 {
        self.charge.abs() * self.hbar / (2.0 * self.mass)
    }

    /// Neutral-particle variant (same mass/moment, zero charge), as used by
    /// Stern-Gerlach runs where the Lorentz force would swamp the spin force.
    pub fn neutral(mut self) -> Self {
        self.charge = 0.0;
        self
    }

    pub fn validate(&self) -> crate::error::Result<()> {
        if !(self.hbar > 0.0) || !(self.mass > 0.0) {
            return Err(crate::error::QsimError::InvalidArgument(format!(
                "hbar and mass must be positive (got hbar = {}, mass = {})",
                self.hbar, self.mass
            )));
        }
        if !self.charge.is_finite() || !(self.moment >= 0.0) {
            return Err(crate::error::QsimError::InvalidArgument(format!(
                "charge must be finite and moment non-negative (got e = {}, mu = {})",
                self.charge, self.moment
            )));
        }
        Ok(())
    }
}
