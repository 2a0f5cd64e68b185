//! Momentum, spin and composite initial states.
//!
//! The composite space is ordered `[A_p, A_s, B_p, B_s]` with dimensions
//! `[2, 2j+1, 2, 2j+1]`. Momentum index 0 is `p₊`, index 1 is `p₋`. Two-particle
//! spin vectors are indexed `a·(2j+1) + b` where `a`, `b` are the positions of
//! `m_A`, `m_B` in the order `j, …, -j`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{Angle, Momentum};
use crate::spin::{spin_operators, SpinJ};
use crate::tensor::{kron, ComplexMatrix, StateVector, SubsystemShape};

/// Norm tolerance for states flagged as normalized.
pub const NORM_TOL: f64 = 1e-12;

fn check_norm(v: &StateVector) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

/// Two-particle momentum state over `(+,+), (+,-), (-,+), (-,-)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumState {
    amplitudes: [Complex64; 4],
}

impl MomentumState {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        check_norm(&StateVector::new(amplitudes.to_vec()))?;
        Ok(Self { amplitudes })
    }

    /// `|a⟩ ⊗ |b⟩` for single-particle momentum amplitudes over `(p₊, p₋)`.
    pub fn product(a: [Complex64; 2], b: [Complex64; 2]) -> Result<Self> {
        Self::new([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    }

    pub fn basis(a: Momentum, b: Momentum) -> Self {
        let mut amplitudes = [Complex64::ZERO; 4];
        amplitudes[2 * a.index() + b.index()] = Complex64::ONE;
        Self { amplitudes }
    }

    pub fn amplitude(&self, a: Momentum, b: Momentum) -> Complex64 {
        self.amplitudes[2 * a.index() + b.index()]
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }
}

/// `cos α |p₊,p₋⟩ + sin α |p₋,p₊⟩`.
pub fn momentum_state(alpha: Angle) -> MomentumState {
    let (s, c) = alpha.sin_cos();
    MomentumState {
        amplitudes: [
            Complex64::ZERO,
            Complex64::new(c, 0.0),
            Complex64::new(s, 0.0),
            Complex64::ZERO,
        ],
    }
}

/// Two-particle spin state on the `(2j+1)²` space.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    spin: SpinJ,
    vector: StateVector,
}

impl SpinState {
    pub fn new(spin: SpinJ, vector: StateVector) -> Result<Self> {
        let d = spin.dim();
        if vector.dim() != d * d {
            return Err(Error::InvalidShape(format!(
                "spin-{spin} pair needs {} amplitudes, got {}",
                d * d,
                vector.dim()
            )));
        }
        check_norm(&vector)?;
        Ok(Self { spin, vector })
    }

    /// Builds `Σ c |m_A, m_B⟩` and normalizes it.
    pub fn from_terms(spin: SpinJ, terms: &[(f64, f64, Complex64)]) -> Result<Self> {
        let d = spin.dim();
        let mut v = StateVector::zeros(d * d);
        for &(ma, mb, amp) in terms {
            let a = spin
                .index_of(ma)
                .ok_or_else(|| Error::InvalidState(format!("m = {ma} is not a spin-{spin} weight")))?;
            let b = spin
                .index_of(mb)
                .ok_or_else(|| Error::InvalidState(format!("m = {mb} is not a spin-{spin} weight")))?;
            v.amplitudes_mut()[a * d + b] += amp;
        }
        let norm = v.norm();
        if norm < 1e-14 {
            return Err(Error::InvalidState("state has zero norm".into()));
        }
        Self::new(spin, v.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn basis(spin: SpinJ, m_a: f64, m_b: f64) -> Result<Self> {
        Self::from_terms(spin, &[(m_a, m_b, Complex64::ONE)])
    }

    /// `|a⟩ ⊗ |b⟩` for normalized single-particle spin vectors.
    pub fn product(spin: SpinJ, a: &StateVector, b: &StateVector) -> Result<Self> {
        let d = spin.dim();
        if a.dim() != d || b.dim() != d {
            return Err(Error::InvalidShape("single-particle vectors must have dimension 2j+1".into()));
        }
        let amps = a
            .amplitudes()
            .iter()
            .flat_map(|x| b.amplitudes().iter().map(move |y| x * y))
            .collect();
        Self::new(spin, StateVector::new(amps))
    }

    pub fn from_literal(spin: SpinJ, literal: &StateLiteral) -> Result<Self> {
        if literal.basis.len() != literal.amplitudes.len() {
            return Err(Error::InvalidState(format!(
                "{} basis labels but {} amplitudes",
                literal.basis.len(),
                literal.amplitudes.len()
            )));
        }
        let terms: Vec<_> = literal
            .basis
            .iter()
            .zip(&literal.amplitudes)
            .map(|(&[ma, mb], &[re, im])| (ma, mb, Complex64::new(re, im)))
            .collect();
        Self::from_terms(spin, &terms)
    }

    /// Parses a JSON literal `{"basis": [[m_A, m_B], ...], "amplitudes": [[re, im], ...]}`.
    pub fn from_json(spin: SpinJ, json: &str) -> Result<Self> {
        let literal: StateLiteral = serde_json::from_str(json)?;
        Self::from_literal(spin, &literal)
    }

    /// Non-zero amplitudes as a literal.
    pub fn to_literal(&self) -> StateLiteral {
        let d = self.spin.dim();
        let m = self.spin.m_values();
        let mut basis = Vec::new();
        let mut amplitudes = Vec::new();
        for (k, z) in self.vector.amplitudes().iter().enumerate() {
            if z.norm() > 1e-15 {
                basis.push([m[k / d], m[k % d]]);
                amplitudes.push([z.re, z.im]);
            }
        }
        StateLiteral { basis, amplitudes }
    }

    pub fn spin(&self) -> SpinJ {
        self.spin
    }

    pub fn vector(&self) -> &StateVector {
        &self.vector
    }

    pub fn amplitude(&self, m_a: f64, m_b: f64) -> Option<Complex64> {
        let d = self.spin.dim();
        Some(self.vector.amplitudes()[self.spin.index_of(m_a)? * d + self.spin.index_of(m_b)?])
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &SpinState) -> f64 {
        self.vector.inner(&other.vector).norm_sqr()
    }
}

/// Spin-state literal accepted on the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateLiteral {
    pub basis: Vec<[f64; 2]>,
    pub amplitudes: Vec<[f64; 2]>,
}

fn real_state(spin: SpinJ, terms: &[(f64, f64, f64)]) -> SpinState {
    let d = spin.dim();
    let mut v = StateVector::zeros(d * d);
    for &(ma, mb, x) in terms {
        let k = spin.index_of(ma).unwrap() * d + spin.index_of(mb).unwrap();
        v.amplitudes_mut()[k] = Complex64::new(x, 0.0);
    }
    SpinState { spin, vector: v }
}

/// `sinθ cosφ |1,1⟩ + sinθ sinφ |0,0⟩ + cosθ |-1,-1⟩`.
pub fn spin_param1(theta: Angle, phi: Angle) -> SpinState {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    real_state(SpinJ::ONE, &[(1.0, 1.0, st * cp), (0.0, 0.0, st * sp), (-1.0, -1.0, ct)])
}

/// `sinθ cosφ |1,-1⟩ + sinθ sinφ |0,0⟩ + cosθ |-1,1⟩`.
pub fn spin_param2(theta: Angle, phi: Angle) -> SpinState {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    real_state(SpinJ::ONE, &[(1.0, -1.0, st * cp), (0.0, 0.0, st * sp), (-1.0, 1.0, ct)])
}

/// `sinχ sinθ cosφ |1,0⟩ + sinχ sinθ sinφ |0,1⟩ + sinχ cosθ |0,-1⟩ + cosχ |-1,0⟩`.
pub fn spin_param3(theta: Angle, phi: Angle, chi: Angle) -> SpinState {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let (sx, cx) = chi.sin_cos();
    real_state(
        SpinJ::ONE,
        &[
            (1.0, 0.0, sx * st * cp),
            (0.0, 1.0, sx * st * sp),
            (0.0, -1.0, sx * ct),
            (-1.0, 0.0, cx),
        ],
    )
}

/// One of the three spin-1 families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Parametrization {
    One,
    Two,
    Three,
}

impl Parametrization {
    /// `chi` is ignored except by [`Parametrization::Three`].
    pub fn state(self, theta: Angle, phi: Angle, chi: Angle) -> SpinState {
        match self {
            Parametrization::One => spin_param1(theta, phi),
            Parametrization::Two => spin_param2(theta, phi),
            Parametrization::Three => spin_param3(theta, phi, chi),
        }
    }
}

impl TryFrom<u8> for Parametrization {
    type Error = Error;

    fn try_from(id: u8) -> Result<Self> {
        match id {
            1 => Ok(Parametrization::One),
            2 => Ok(Parametrization::Two),
            3 => Ok(Parametrization::Three),
            other => Err(Error::UnknownParametrization(other)),
        }
    }
}

impl From<Parametrization> for u8 {
    fn from(p: Parametrization) -> u8 {
        match p {
            Parametrization::One => 1,
            Parametrization::Two => 2,
            Parametrization::Three => 3,
        }
    }
}

/// Pure state on `[A_p, A_s, B_p, B_s]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositeState {
    spin: SpinJ,
    vector: StateVector,
    momentum_spin_product: bool,
}

impl CompositeState {
    pub fn new(spin: SpinJ, vector: StateVector) -> Result<Self> {
        let shape = composite_shape(spin);
        if vector.dim() != shape.total_dim() {
            return Err(Error::InvalidShape(format!(
                "composite spin-{spin} state needs {} amplitudes, got {}",
                shape.total_dim(),
                vector.dim()
            )));
        }
        check_norm(&vector)?;
        Ok(Self { spin, vector, momentum_spin_product: false })
    }

    pub(crate) fn from_parts_unchecked(spin: SpinJ, vector: StateVector) -> Self {
        Self { spin, vector, momentum_spin_product: false }
    }

    pub fn spin(&self) -> SpinJ {
        self.spin
    }

    pub fn vector(&self) -> &StateVector {
        &self.vector
    }

    pub fn shape(&self) -> SubsystemShape {
        composite_shape(self.spin)
    }

    /// True when built by [`compose`] as `|p⟩ ⊗ |s⟩`.
    pub fn is_momentum_spin_product(&self) -> bool {
        self.momentum_spin_product
    }

    pub fn check_normalized(&self) -> Result<()> {
        check_norm(&self.vector)
    }

    /// Flat index of `(A_p, A_s, B_p, B_s)`.
    pub fn index(spin: SpinJ, ap: usize, a: usize, bp: usize, b: usize) -> usize {
        let d = spin.dim();
        ((ap * d + a) * 2 + bp) * d + b
    }

    /// Spin amplitudes conditioned on the momentum pair `(a, b)`, unnormalized.
    pub fn spin_block(&self, a: Momentum, b: Momentum) -> StateVector {
        let d = self.spin.dim();
        let amps = self.vector.amplitudes();
        let block = (0..d * d)
            .map(|k| amps[Self::index(self.spin, a.index(), k / d, b.index(), k % d)])
            .collect();
        StateVector::new(block)
    }
}

pub fn composite_shape(spin: SpinJ) -> SubsystemShape {
    let d = spin.dim();
    SubsystemShape::new(vec![2, d, 2, d]).expect("dimensions are positive")
}

/// `|p⟩ ⊗ |s⟩` reordered into `[A_p, A_s, B_p, B_s]`.
pub fn compose(p: &MomentumState, s: &SpinState) -> CompositeState {
    let spin = s.spin();
    let d = spin.dim();
    let mut v = StateVector::zeros(4 * d * d);
    let sa = s.vector().amplitudes();
    for pa in Momentum::ALL {
        for pb in Momentum::ALL {
            let c = p.amplitude(pa, pb);
            if c == Complex64::ZERO {
                continue;
            }
            for a in 0..d {
                for b in 0..d {
                    let k = CompositeState::index(spin, pa.index(), a, pb.index(), b);
                    v.amplitudes_mut()[k] = c * sa[a * d + b];
                }
            }
        }
    }
    CompositeState { spin, vector: v, momentum_spin_product: true }
}

/// `(J_A + J_B)²` on the two-particle spin space.
pub fn total_spin_squared(spin: SpinJ) -> ComplexMatrix {
    let ops = spin_operators(spin);
    let id = ComplexMatrix::identity(spin.dim());
    [&ops.jx, &ops.jy, &ops.jz]
        .into_iter()
        .map(|op| {
            let total = &kron(op, &id) + &kron(&id, op);
            &total * &total
        })
        .reduce(|acc, sq| &acc + &sq)
        .expect("three components")
}

/// A parameter point of one of the three spin-1 families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamPoint {
    pub param: Parametrization,
    pub theta: Angle,
    pub phi: Angle,
    pub chi: Angle,
}

impl ParamPoint {
    pub fn state(&self) -> SpinState {
        self.param.state(self.theta, self.phi, self.chi)
    }
}

/// A spin-1 state singled out as an extremum or invariant, with its
/// parameter coordinates where one of the families reaches it.
#[derive(Clone, Debug)]
pub struct NamedState {
    pub key: &'static str,
    pub label: &'static str,
    /// `(m_A, m_B, coefficient)` before normalization.
    pub terms: &'static [(f64, f64, f64)],
    pub points: Vec<ParamPoint>,
}

impl NamedState {
    pub fn state(&self) -> SpinState {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|&(a, b, c)| (a, b, Complex64::new(c, 0.0)))
            .collect();
        SpinState::from_terms(SpinJ::ONE, &terms).expect("table entries are valid spin-1 states")
    }
}

/// Named spin-1 states and their parameter coordinates.
pub fn named_states() -> Vec<NamedState> {
    use Parametrization::*;
    let pt = |param, theta, phi| ParamPoint { param, theta, phi, chi: 0.0 };
    let magic = (1.0 / 3f64.sqrt()).acos();
    vec![
        NamedState {
            key: "even-minus",
            label: "(|1,1> - |0,0> + |-1,-1>)/sqrt3",
            terms: &[(1.0, 1.0, 1.0), (0.0, 0.0, -1.0), (-1.0, -1.0, 1.0)],
            points: vec![pt(One, magic, 2.0 * PI - FRAC_PI_4)],
        },
        NamedState {
            key: "even-plus",
            label: "(|1,1> + |0,0> + |-1,-1>)/sqrt3",
            terms: &[(1.0, 1.0, 1.0), (0.0, 0.0, 1.0), (-1.0, -1.0, 1.0)],
            points: vec![pt(One, magic, FRAC_PI_4)],
        },
        NamedState {
            key: "flip-plus",
            label: "(|1,-1> + |0,0> + |-1,1>)/sqrt3",
            terms: &[(1.0, -1.0, 1.0), (0.0, 0.0, 1.0), (-1.0, 1.0, 1.0)],
            points: vec![pt(Two, magic, FRAC_PI_4)],
        },
        NamedState {
            key: "flip-bell",
            label: "(|1,-1> - |-1,1>)/sqrt2",
            terms: &[(1.0, -1.0, 1.0), (-1.0, 1.0, -1.0)],
            points: vec![pt(Two, 3.0 * FRAC_PI_4, 0.0)],
        },
        NamedState {
            key: "mixed-quad",
            label: "(|1,0> + |0,1> - |0,-1> - |-1,0>)/2",
            terms: &[(1.0, 0.0, 1.0), (0.0, 1.0, 1.0), (0.0, -1.0, -1.0), (-1.0, 0.0, -1.0)],
            points: vec![ParamPoint {
                param: Three,
                theta: (-1.0 / 3f64.sqrt()).acos(),
                phi: FRAC_PI_4,
                chi: 2.0 * PI / 3.0,
            }],
        },
        NamedState {
            key: "separable-invariant",
            label: "(|1> + |-1>)(|1> + |-1>)/2",
            terms: &[(1.0, 1.0, 1.0), (1.0, -1.0, 1.0), (-1.0, 1.0, 1.0), (-1.0, -1.0, 1.0)],
            points: vec![],
        },
        NamedState {
            key: "up-up",
            label: "|1,1>",
            terms: &[(1.0, 1.0, 1.0)],
            points: vec![pt(One, FRAC_PI_2, 0.0)],
        },
        NamedState {
            key: "zero-zero",
            label: "|0,0>",
            terms: &[(0.0, 0.0, 1.0)],
            points: vec![pt(One, FRAC_PI_2, FRAC_PI_2), pt(Two, FRAC_PI_2, FRAC_PI_2)],
        },
        NamedState {
            key: "down-down",
            label: "|-1,-1>",
            terms: &[(-1.0, -1.0, 1.0)],
            points: vec![pt(One, 0.0, 0.0)],
        },
        NamedState {
            key: "up-down",
            label: "|1,-1>",
            terms: &[(1.0, -1.0, 1.0)],
            points: vec![pt(Two, FRAC_PI_2, 0.0)],
        },
        NamedState {
            key: "down-up",
            label: "|-1,1>",
            terms: &[(-1.0, 1.0, 1.0)],
            points: vec![pt(Two, 0.0, 0.0)],
        },
    ]
}

pub fn named_state(key: &str) -> Option<NamedState> {
    named_states().into_iter().find(|n| n.key == key)
}
