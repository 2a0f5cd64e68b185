//! Wigner angle for a boost transverse to the particles' line of flight.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rotation angle in radians.
pub type Angle = f64;

/// Rapidity magnitudes of the particle (along ±z) and of the boost (along x).
///
/// `f64::INFINITY` stands for the lightlike limit of either rapidity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostSetup {
    pub eta: f64,
    pub omega: f64,
}

impl BoostSetup {
    pub fn new(eta: f64, omega: f64) -> Result<Self> {
        for r in [eta, omega] {
            if r.is_nan() || r < 0.0 {
                return Err(Error::NegativeRapidity(r));
            }
        }
        Ok(Self { eta, omega })
    }

    pub fn is_lightlike(&self) -> bool {
        self.eta.is_infinite() || self.omega.is_infinite()
    }
}

/// Direction of propagation along z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Momentum {
    Plus,
    Minus,
}

impl Momentum {
    pub const ALL: [Momentum; 2] = [Momentum::Plus, Momentum::Minus];

    /// Position in the `{+, -}` basis.
    pub fn index(self) -> usize {
        match self {
            Momentum::Plus => 0,
            Momentum::Minus => 1,
        }
    }

    /// Sign of the Wigner angle picked up by a particle with this momentum.
    pub fn angle_sign(self) -> f64 {
        let (plus, minus) = particle_angle_signs();
        match self {
            Momentum::Plus => plus,
            Momentum::Minus => minus,
        }
    }
}

/// `tan Ω = sinh η sinh ω / (cosh η + cosh ω)`.
///
/// Evaluated as `tanh η tanh ω / (sech η + sech ω)` so large and infinite
/// rapidities stay finite; the lightlike limit gives `π/2`.
pub fn wigner_angle(setup: &BoostSetup) -> Result<Angle> {
    let BoostSetup { eta, omega } = BoostSetup::new(setup.eta, setup.omega)?;
    let num = eta.tanh() * omega.tanh();
    let den = 1.0 / eta.cosh() + 1.0 / omega.cosh();
    if num == 0.0 {
        return Ok(0.0);
    }
    Ok((num / den).atan())
}

/// Signs `(s₊, s₋)` of the rotation angle for momentum labels `+` and `-`.
pub const fn particle_angle_signs() -> (f64, f64) {
    (1.0, -1.0)
}
