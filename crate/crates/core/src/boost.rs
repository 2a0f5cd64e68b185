//! Transverse Lorentz boost acting as momentum-conditioned Wigner rotations.

use num_complex::Complex64;

use crate::kinematics::{Angle, Momentum};
use crate::spin::{wigner_d, SpinJ};
use crate::states::CompositeState;
use crate::tensor::{kron, ComplexMatrix, StateVector};

/// Spin-space operators `D(s_a Ω) ⊗ D(s_b Ω)` for each momentum pair `(a, b)`.
///
/// Boosted momenta keep their `±` labels; only orthonormality of the two
/// momentum values matters for any reduced state.
#[derive(Clone, Debug)]
pub struct BoostMap {
    spin: SpinJ,
    omega: Angle,
    blocks: [[ComplexMatrix; 2]; 2],
}

impl BoostMap {
    pub fn new(spin: SpinJ, omega: Angle) -> Self {
        let rot = |m: Momentum| wigner_d(spin, m.angle_sign() * omega);
        let (plus, minus) = (rot(Momentum::Plus), rot(Momentum::Minus));
        let by_momentum = |m: Momentum| match m {
            Momentum::Plus => &plus,
            Momentum::Minus => &minus,
        };
        let block = |a, b| kron(by_momentum(a), by_momentum(b));
        let blocks = [
            [block(Momentum::Plus, Momentum::Plus), block(Momentum::Plus, Momentum::Minus)],
            [block(Momentum::Minus, Momentum::Plus), block(Momentum::Minus, Momentum::Minus)],
        ];
        Self { spin, omega, blocks }
    }

    pub fn spin(&self) -> SpinJ {
        self.spin
    }

    pub fn omega(&self) -> Angle {
        self.omega
    }

    pub fn block(&self, a: Momentum, b: Momentum) -> &ComplexMatrix {
        &self.blocks[a.index()][b.index()]
    }

    /// Largest unitarity residual over the four blocks.
    pub fn unitarity_residual(&self) -> f64 {
        self.blocks
            .iter()
            .flatten()
            .map(ComplexMatrix::unitarity_residual)
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, psi: &CompositeState) -> CompositeState {
        assert_eq!(psi.spin(), self.spin, "boost map built for a different spin");
        let spin = self.spin;
        let d = spin.dim();
        let mut out = StateVector::zeros(4 * d * d);
        for a in Momentum::ALL {
            for b in Momentum::ALL {
                let block = psi.spin_block(a, b);
                if block.amplitudes().iter().all(|z| *z == Complex64::ZERO) {
                    continue;
                }
                let rotated = self.block(a, b).apply(&block);
                for (k, z) in rotated.amplitudes().iter().enumerate() {
                    out.amplitudes_mut()[CompositeState::index(spin, a.index(), k / d, b.index(), k % d)] = *z;
                }
            }
        }
        CompositeState::from_parts_unchecked(spin, out)
    }
}

/// Boosts `psi` with Wigner angle `omega`.
pub fn apply_boost(psi: &CompositeState, omega: Angle) -> CompositeState {
    BoostMap::new(psi.spin(), omega).apply(psi)
}

/// `U_s(Ω) = D(Ω) ⊗ D(-Ω)`, the spin map for momenta `(p₊, p₋)`.
pub fn spin_boost_matrix(spin: SpinJ, omega: Angle) -> ComplexMatrix {
    kron(&wigner_d(spin, omega), &wigner_d(spin, -omega))
}
