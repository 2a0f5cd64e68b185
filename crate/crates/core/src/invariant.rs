//! Weight basis that diagonalizes `U_s(Ω) = D(Ω) ⊗ D(-Ω)` for every `Ω`.
//!
//! `U_s(Ω) = exp(-iΩK)` with `K = J_y ⊗ 1 - 1 ⊗ J_y`, so eigenvectors of `K`
//! with eigenvalue `m` pick up the phase `e^{-imΩ}` and nothing else. Working
//! with `K` rather than `U_s` at a sampled angle avoids accidental
//! degeneracies such as `e^{-2iπ} = 1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::spin::{spin_operators, SpinJ};
use crate::states::SpinState;
use crate::tensor::{eig_hermitian, kron, ComplexMatrix, StateVector};

/// Residual tolerance for membership of a single weight subspace.
pub const INVARIANCE_TOL: f64 = 1e-10;

/// `K = J_y ⊗ 1 - 1 ⊗ J_y`.
pub fn weight_operator(spin: SpinJ) -> ComplexMatrix {
    let jy = spin_operators(spin).jy;
    let id = ComplexMatrix::identity(spin.dim());
    &kron(&jy, &id) - &kron(&id, &jy)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightVector {
    pub m: i32,
    #[serde(serialize_with = "serialize_vector")]
    pub vector: StateVector,
}

fn serialize_vector<S: serde::Serializer>(v: &StateVector, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.amplitudes().iter().map(|z| [z.re, z.im]))
}

#[derive(Clone, Debug)]
pub struct WeightBasis {
    spin: SpinJ,
    vectors: Vec<WeightVector>,
}

impl WeightBasis {
    pub fn spin(&self) -> SpinJ {
        self.spin
    }

    /// Ordered by ascending `m`, then by position of the dominant amplitude.
    pub fn vectors(&self) -> &[WeightVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn subspace(&self, m: i32) -> impl Iterator<Item = &WeightVector> {
        self.vectors.iter().filter(move |w| w.m == m)
    }

    /// Distinct weights, ascending.
    pub fn weights(&self) -> Vec<i32> {
        let mut w: Vec<i32> = self.vectors.iter().map(|v| v.m).collect();
        w.dedup();
        w
    }

    /// Orthogonal projector onto the weight-`m` subspace.
    pub fn projector(&self, m: i32) -> ComplexMatrix {
        let n = self.spin.dim().pow(2);
        self.subspace(m)
            .map(|w| w.vector.projector())
            .fold(ComplexMatrix::zeros(n, n), |acc, p| &acc + &p)
    }

    /// Basis vectors as the columns of a unitary matrix.
    pub fn change_of_basis(&self) -> ComplexMatrix {
        let n = self.vectors.len();
        ComplexMatrix::from_fn(n, n, |r, c| self.vectors[c].vector.amplitudes()[r])
    }

    /// `W† U W` for an operator on the spin space.
    pub fn express(&self, op: &ComplexMatrix) -> ComplexMatrix {
        let w = self.change_of_basis();
        &(&w.adjoint() * op) * &w
    }
}

fn dominant_index(v: &StateVector) -> usize {
    let amps = v.amplitudes();
    let max = amps.iter().map(|z| z.norm()).fold(0.0, f64::max);
    amps.iter().position(|z| z.norm() > max - 1e-9).unwrap_or(0)
}

/// Canonical orthonormal basis of the range of `proj` with `rank` vectors:
/// pivoted Gram-Schmidt over the projected standard basis, then a phase fix
/// making the dominant amplitude real and positive.
fn canonical_span(proj: &ComplexMatrix, rank: usize) -> Vec<StateVector> {
    let n = proj.rows();
    let mut candidates: Vec<StateVector> = (0..n).map(|k| proj.column(k)).collect();
    let mut chosen: Vec<StateVector> = Vec::with_capacity(rank);
    while chosen.len() < rank {
        let norms: Vec<f64> = candidates.iter().map(StateVector::norm).collect();
        let best = norms.iter().copied().fold(0.0, f64::max);
        let pick = norms.iter().position(|&x| x > best - 1e-9).expect("non-empty");
        let v = candidates[pick].normalized();
        for c in candidates.iter_mut() {
            let overlap = v.inner(c);
            *c = &*c - &v.scale(overlap);
        }
        chosen.push(v);
    }
    chosen
        .into_iter()
        .map(|v| {
            let z = v.amplitudes()[dominant_index(&v)];
            v.scale(z.conj() / z.norm())
        })
        .collect()
}

pub fn weight_basis(spin: SpinJ) -> WeightBasis {
    let eig = eig_hermitian(&weight_operator(spin)).expect("K is Hermitian by construction");
    let two_j = spin.twice() as i32;
    let mut vectors = Vec::with_capacity(eig.values.len());
    for m in -two_j..=two_j {
        let cols: Vec<usize> = eig
            .values
            .iter()
            .enumerate()
            .filter(|(_, &lambda)| (lambda - f64::from(m)).abs() < 1e-6)
            .map(|(k, _)| k)
            .collect();
        let n = eig.vectors.rows();
        let proj = cols
            .iter()
            .map(|&k| eig.vectors.column(k).projector())
            .fold(ComplexMatrix::zeros(n, n), |acc, p| &acc + &p);
        let mut span = canonical_span(&proj, cols.len());
        span.sort_by_key(dominant_index);
        vectors.extend(span.into_iter().map(|vector| WeightVector { m, vector }));
    }
    assert_eq!(vectors.len(), eig.values.len(), "weight operator spectrum is not integral");
    WeightBasis { spin, vectors }
}

/// Squared projection norms of `s` onto each weight subspace, ascending in
/// `m`, omitting weights it does not touch.
pub fn classify(s: &SpinState, basis: &WeightBasis) -> Vec<(i32, f64)> {
    basis
        .weights()
        .into_iter()
        .map(|m| {
            let w: f64 = basis.subspace(m).map(|b| b.vector.inner(s.vector()).norm_sqr()).sum();
            (m, w)
        })
        .filter(|&(_, w)| w > 1e-12)
        .collect()
}

/// The weight `m` if `s` lies in a single weight subspace, so that a boost
/// only changes it by the phase `e^{-imΩ}`.
pub fn is_phase_invariant(s: &SpinState, basis: &WeightBasis) -> Option<i32> {
    basis.weights().into_iter().find(|&m| {
        let projected = basis
            .subspace(m)
            .fold(StateVector::zeros(s.vector().dim()), |acc, b| {
                &acc + &b.vector.scale(b.vector.inner(s.vector()))
            });
        projected.distance(s.vector()) < INVARIANCE_TOL
    })
}

/// Phase picked up by a weight-`m` vector at angle `omega`.
pub fn weight_phase(m: i32, omega: f64) -> Complex64 {
    Complex64::from_polar(1.0, -f64::from(m) * omega)
}
