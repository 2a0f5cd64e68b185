//! Spin-j operators, single-axis rotation matrices and SO(2) characters.
//!
//! Basis order is `|j⟩, |j-1⟩, …, |-j⟩` throughout. Rotations are about the
//! y axis, `D(Ω) = exp(-iΩ J_y)`, which is the rotation induced by a boost
//! along x on a particle moving along z.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::Angle;
use crate::tensor::{eig_hermitian, ComplexMatrix};

/// Spin quantum number stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpinJ {
    two_j: u32,
}

impl SpinJ {
    pub const HALF: SpinJ = SpinJ { two_j: 1 };
    pub const ONE: SpinJ = SpinJ { two_j: 2 };

    pub const fn from_twice(two_j: u32) -> Self {
        Self { two_j }
    }

    pub const fn twice(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    /// Dimension `2j + 1` of the single-particle spin space.
    pub const fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// `2m` for the basis vector at position `k`.
    pub fn twice_m(self, k: usize) -> i32 {
        self.two_j as i32 - 2 * k as i32
    }

    /// Magnetic quantum numbers in basis order, `j, j-1, …, -j`.
    pub fn m_values(self) -> Vec<f64> {
        (0..self.dim()).map(|k| f64::from(self.twice_m(k)) / 2.0).collect()
    }

    /// Basis position of the state with magnetic number `m`, if any.
    pub fn index_of(self, m: f64) -> Option<usize> {
        let twice = 2.0 * m;
        if (twice - twice.round()).abs() > 1e-9 {
            return None;
        }
        let twice = twice.round() as i64;
        let two_j = i64::from(self.two_j);
        if twice.abs() > two_j || (two_j - twice) % 2 != 0 {
            return None;
        }
        Some(((two_j - twice) / 2) as usize)
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_j.is_multiple_of(2) {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

impl FromStr for SpinJ {
    type Err = Error;

    /// Accepts `1`, `3/2`, or `1.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidSpin(format!("cannot parse {s:?} as a spin"));
        let j = match s.split_once('/') {
            Some((num, den)) => {
                let num: u32 = num.trim().parse().map_err(|_| bad())?;
                let den: u32 = den.trim().parse().map_err(|_| bad())?;
                match den {
                    1 => return Ok(Self::from_twice(2 * num)),
                    2 => return Ok(Self::from_twice(num)),
                    _ => return Err(bad()),
                }
            }
            None => s.parse::<f64>().map_err(|_| bad())?,
        };
        let twice = 2.0 * j;
        if twice.is_nan() || twice < 0.0 || (twice - twice.round()).abs() > 1e-12 || twice > 1e6 {
            return Err(bad());
        }
        Ok(Self::from_twice(twice.round() as u32))
    }
}

#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub jx: ComplexMatrix,
    pub jy: ComplexMatrix,
    pub jz: ComplexMatrix,
}

impl SpinOperators {
    /// `J² = Jx² + Jy² + Jz²`.
    pub fn casimir(&self) -> ComplexMatrix {
        let xx = &self.jx * &self.jx;
        let yy = &self.jy * &self.jy;
        let zz = &self.jz * &self.jz;
        &(&xx + &yy) + &zz
    }
}

/// Ladder-operator construction of `Jx, Jy, Jz`.
pub fn spin_operators(spin: SpinJ) -> SpinOperators {
    let d = spin.dim();
    let j = spin.j();
    let m = spin.m_values();

    // ⟨m+1|J₊|m⟩ = sqrt(j(j+1) - m(m+1)); |m+1⟩ sits one row above |m⟩.
    let raise = ComplexMatrix::from_fn(d, d, |r, c| {
        if c >= 1 && r == c - 1 {
            Complex64::new((j * (j + 1.0) - m[c] * (m[c] + 1.0)).sqrt(), 0.0)
        } else {
            Complex64::ZERO
        }
    });
    let lower = raise.adjoint();

    let jx = (&raise + &lower).scale(Complex64::new(0.5, 0.0));
    let jy = (&raise - &lower).scale(Complex64::new(0.0, -0.5));
    let jz = ComplexMatrix::from_real_diagonal(&m);
    SpinOperators { jx, jy, jz }
}

/// Rotation matrix `d^j(Ω) = exp(-iΩ J_y)`.
///
/// Built from the spectral decomposition of `J_y`, whose eigenvalues are
/// snapped to the exact magnetic numbers. `iJ_y` is real, so the exponential
/// is real and the imaginary round-off is dropped.
pub fn wigner_d(spin: SpinJ, omega: Angle) -> ComplexMatrix {
    let jy = spin_operators(spin).jy;
    let eig = eig_hermitian(&jy).expect("J_y is Hermitian by construction");
    let d = spin.dim();
    let phases: Vec<Complex64> = eig
        .values
        .iter()
        .map(|&lambda| {
            let m = (2.0 * lambda).round() / 2.0;
            Complex64::from_polar(1.0, -m * omega)
        })
        .collect();
    let v = &eig.vectors;
    ComplexMatrix::from_fn(d, d, |r, c| {
        let z: Complex64 = (0..d).map(|k| v[(r, k)] * phases[k] * v[(c, k)].conj()).sum();
        Complex64::new(z.re, 0.0)
    })
}

/// SO(2) character `Σ_{m=-j..j} e^{-imΩ}`, the trace of [`wigner_d`].
pub fn character(spin: SpinJ, omega: Angle) -> Complex64 {
    spin.m_values()
        .iter()
        .map(|&m| Complex64::from_polar(1.0, -m * omega))
        .sum()
}

/// Number of samples used by the discrete character integral.
pub fn multiplicity_samples(spin: SpinJ) -> usize {
    8 * spin.two_j as usize + 4
}

/// Unrounded character integral for the multiplicity of weight `m` in
/// `d^j(Ω) ⊗ d^j(-Ω)`.
///
/// The group average over SO(2) is a uniform sum over
/// [`multiplicity_samples`] angles, which integrates the trigonometric
/// polynomial integrand exactly.
pub fn multiplicity_integral(spin: SpinJ, m: i32) -> Complex64 {
    let n = multiplicity_samples(spin);
    let sum: Complex64 = (0..n)
        .map(|k| {
            let omega = 2.0 * PI * k as f64 / n as f64;
            // character of d(Ω) ⊗ d(-Ω)
            let chi = character(spin, omega) * character(spin, -omega);
            chi * Complex64::from_polar(1.0, f64::from(m) * omega)
        })
        .sum();
    sum / n as f64
}

/// Multiplicity `a_m` of the SO(2) irrep of weight `m` in the two-particle
/// spin map; zero outside `|m| ≤ 2j`.
pub fn multiplicity(spin: SpinJ, m: i32) -> u32 {
    if m.unsigned_abs() > spin.two_j {
        return 0;
    }
    let a = multiplicity_integral(spin, m);
    let rounded = a.re.round();
    debug_assert!((a - rounded).norm() < 1e-9, "non-integer multiplicity {a}");
    rounded as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3};

    #[test]
    fn spin_parsing() {
        assert_eq!("1".parse::<SpinJ>().unwrap(), SpinJ::ONE);
        assert_eq!("1/2".parse::<SpinJ>().unwrap(), SpinJ::HALF);
        assert_eq!("1.5".parse::<SpinJ>().unwrap().twice(), 3);
        assert_eq!("3/2".parse::<SpinJ>().unwrap().to_string(), "3/2");
        assert_eq!("2/1".parse::<SpinJ>().unwrap().twice(), 4);
        for bad in ["-1", "0.3", "1/3", "x", ""] {
            assert!(bad.parse::<SpinJ>().is_err(), "{bad}");
        }
    }

    #[test]
    fn index_lookup() {
        assert_eq!(SpinJ::ONE.index_of(1.0), Some(0));
        assert_eq!(SpinJ::ONE.index_of(-1.0), Some(2));
        assert_eq!(SpinJ::ONE.index_of(0.5), None);
        assert_eq!(SpinJ::HALF.index_of(-0.5), Some(1));
        assert_eq!(SpinJ::HALF.index_of(0.0), None);
    }

    #[test]
    fn spin_half_jz() {
        let ops = spin_operators(SpinJ::HALF);
        let expected = ComplexMatrix::from_real_diagonal(&[0.5, -0.5]);
        assert_eq!(ops.jz.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn spin_one_jy_element() {
        let ops = spin_operators(SpinJ::ONE);
        assert!((ops.jy[(0, 1)].norm() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((ops.jy[(1, 2)].norm() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(ops.jy[(0, 2)].norm(), 0.0);
    }

    #[test]
    fn commutation_relations() {
        let i = Complex64::I;
        for two_j in 1..=8 {
            let o = spin_operators(SpinJ::from_twice(two_j));
            let comm = |a: &ComplexMatrix, b: &ComplexMatrix| &(a * b) - &(b * a);
            assert!(comm(&o.jx, &o.jy).max_abs_diff(&o.jz.scale(i)) < 1e-12);
            assert!(comm(&o.jy, &o.jz).max_abs_diff(&o.jx.scale(i)) < 1e-12);
            assert!(comm(&o.jz, &o.jx).max_abs_diff(&o.jy.scale(i)) < 1e-12);
            for op in [&o.jx, &o.jy, &o.jz] {
                assert!(op.hermiticity_deviation() < 1e-15);
            }
        }
    }

    #[test]
    fn casimir_is_scalar() {
        for two_j in 0..=6 {
            let s = SpinJ::from_twice(two_j);
            let j = s.j();
            let expected = ComplexMatrix::identity(s.dim()).scale(Complex64::new(j * (j + 1.0), 0.0));
            assert!(spin_operators(s).casimir().max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn rotation_by_zero_is_identity() {
        for two_j in 0..=5 {
            let s = SpinJ::from_twice(two_j);
            assert!(wigner_d(s, 0.0).max_abs_diff(&ComplexMatrix::identity(s.dim())) < 1e-14);
        }
    }

    #[test]
    fn spin_half_closed_form() {
        for omega in [0.3, 1.1, -2.0, FRAC_PI_3] {
            let (s, c) = (omega / 2.0).sin_cos();
            let expected = ComplexMatrix::from_row_slice(
                2,
                2,
                &[c, -s, s, c].map(|x| Complex64::new(x, 0.0)),
            );
            assert!(wigner_d(SpinJ::HALF, omega).max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn spin_one_closed_form() {
        // orthogonal sign pattern of d¹; the all-positive printed variant is not unitary
        for omega in [0.2, FRAC_PI_3, 1.9, -0.7] {
            let (s, c) = omega.sin_cos();
            let r = FRAC_1_SQRT_2;
            let expected = ComplexMatrix::from_row_slice(
                3,
                3,
                &[
                    (1.0 + c) / 2.0, -s * r, (1.0 - c) / 2.0,
                    s * r, c, -s * r,
                    (1.0 - c) / 2.0, s * r, (1.0 + c) / 2.0,
                ]
                .map(|x| Complex64::new(x, 0.0)),
            );
            assert!(wigner_d(SpinJ::ONE, omega).max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn printed_all_positive_pattern_is_not_unitary() {
        let omega: f64 = 0.8;
        let (s, c) = omega.sin_cos();
        let r = FRAC_1_SQRT_2;
        let printed = ComplexMatrix::from_row_slice(
            3,
            3,
            &[
                (1.0 + c) / 2.0, s * r, (1.0 - c) / 2.0,
                s * r, c, s * r,
                (1.0 - c) / 2.0, s * r, (1.0 + c) / 2.0,
            ]
            .map(|x| Complex64::new(x, 0.0)),
        );
        assert!(printed.unitarity_residual() > 0.1);
    }

    #[test]
    fn determinant_is_one() {
        for two_j in 0..=5 {
            let d = wigner_d(SpinJ::from_twice(two_j), 0.77);
            assert!((d.determinant() - Complex64::ONE).norm() < 1e-10);
        }
    }

    #[test]
    fn character_values() {
        assert!((character(SpinJ::ONE, 0.0) - Complex64::new(3.0, 0.0)).norm() < 1e-15);
        assert!((character(SpinJ::ONE, PI) - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        for two_j in 0..=5 {
            let s = SpinJ::from_twice(two_j);
            for omega in [0.0, 0.4, 2.5, -1.3] {
                assert!((character(s, omega) - wigner_d(s, omega).trace()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(SpinJ::ONE, 0), 3);
        assert_eq!(multiplicity(SpinJ::ONE, 2), 1);
        assert_eq!(multiplicity(SpinJ::ONE, -2), 1);
        assert_eq!(multiplicity(SpinJ::ONE, 3), 0);
        assert_eq!(multiplicity(SpinJ::from_twice(3), 1), 3);
        for two_j in 1..=5u32 {
            let s = SpinJ::from_twice(two_j);
            let total: u32 = (-(two_j as i32)..=two_j as i32).map(|m| multiplicity(s, m)).sum();
            assert_eq!(total as usize, s.dim() * s.dim());
        }
    }
}
