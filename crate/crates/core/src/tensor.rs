//! Dense complex linear algebra on small composite Hilbert spaces.
//!
//! Everything here is sized for the two-particle problem (at spin 1 the full
//! space is 36-dimensional), so matrices are plain dense arrays.

use std::ops::{Add, Index, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance accepted by [`partial_trace`] and [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Builds a matrix from entries listed in row-major order.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[Complex64]) -> Self {
        Self(DMatrix::from_row_slice(rows, cols, entries))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { Complex64::ZERO })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    pub fn from_nalgebra(m: DMatrix<Complex64>) -> Self {
        Self(m)
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(&self.0 * factor)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn column(&self, j: usize) -> StateVector {
        StateVector(self.0.column(j).into_owned())
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        StateVector(&self.0 * &v.0)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape(), "shape mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |M - M†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    /// `max |M M† - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (self * &self.adjoint()).max_abs_diff(&Self::identity(self.rows()))
    }

    /// `Tr(M²)` for a Hermitian matrix, computed as the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.clone().determinant()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(DVector<Complex64>);

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self(DVector::from_vec(amplitudes))
    }

    pub fn from_real(amplitudes: &[f64]) -> Self {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DVector::zeros(dim))
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = Complex64::ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.0.as_slice()
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        self.0.as_mut_slice()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn normalized(&self) -> Self {
        Self(self.0.normalize())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(&self.0 * factor)
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0.dotc(&other.0)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (&self.0 - &other.0).norm()
    }

    /// `|v⟩⟨v|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix(&self.0 * self.0.adjoint())
    }

    pub fn as_nalgebra(&self) -> &DVector<Complex64> {
        &self.0
    }
}

impl Add for &StateVector {
    type Output = StateVector;

    fn add(self, rhs: &StateVector) -> StateVector {
        StateVector(&self.0 + &rhs.0)
    }
}

impl Sub for &StateVector {
    type Output = StateVector;

    fn sub(self, rhs: &StateVector) -> StateVector {
        StateVector(&self.0 - &rhs.0)
    }
}

/// Ordered local dimensions of a composite system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemShape {
    dims: Vec<usize>,
}

impl SubsystemShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidShape(format!(
                "subsystem dimensions must be positive, got {dims:?}"
            )));
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Full-space indices grouped as `table[kept][traced]`, with both
    /// multi-indices in row-major order over the subsystems in ascending order.
    fn split_indices(&self, keep: &[usize]) -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
        let n = self.dims.len();
        if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
            return Err(Error::IndexOutOfRange { index: bad, count: n });
        }
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let traced: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();

        let kept_dim: usize = kept.iter().map(|&i| self.dims[i]).product();
        let traced_dim: usize = traced.iter().map(|&i| self.dims[i]).product();
        let mut table = vec![vec![0usize; traced_dim]; kept_dim];

        let mut digits = vec![0usize; n];
        for full in 0..self.total_dim() {
            let mut rem = full;
            for s in (0..n).rev() {
                digits[s] = rem % self.dims[s];
                rem /= self.dims[s];
            }
            let k = kept.iter().fold(0, |acc, &s| acc * self.dims[s] + digits[s]);
            let t = traced.iter().fold(0, |acc, &s| acc * self.dims[s] + digits[s]);
            table[k][t] = full;
        }
        Ok((kept, table))
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix(a.0.kronecker(&b.0))
}

/// Traces out every subsystem not listed in `keep`.
///
/// The result is indexed by the kept subsystems in ascending order,
/// regardless of the order they appear in `keep`.
pub fn partial_trace(rho: &ComplexMatrix, shape: &SubsystemShape, keep: &[usize]) -> Result<ComplexMatrix> {
    let dim = shape.total_dim();
    if !rho.is_square() || rho.rows() != dim {
        return Err(Error::InvalidShape(format!(
            "{}x{} matrix does not match subsystem dims {:?}",
            rho.rows(),
            rho.cols(),
            shape.dims()
        )));
    }
    let deviation = rho.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let (_, table) = shape.split_indices(keep)?;
    let n = table.len();
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        table[r].iter().zip(&table[c]).map(|(&i, &j)| rho[(i, j)]).sum()
    }))
}

/// Reduced density matrix of the pure state `psi` on the subsystems in `keep`.
///
/// Equivalent to `partial_trace(|psi⟩⟨psi|, shape, keep)` without forming the
/// full density matrix.
pub fn reduced_density(psi: &StateVector, shape: &SubsystemShape, keep: &[usize]) -> Result<ComplexMatrix> {
    if psi.dim() != shape.total_dim() {
        return Err(Error::InvalidShape(format!(
            "state of dimension {} does not match subsystem dims {:?}",
            psi.dim(),
            shape.dims()
        )));
    }
    let (_, table) = shape.split_indices(keep)?;
    let amps = psi.amplitudes();
    let kept = table.len();
    let traced = table[0].len();
    let m = DMatrix::from_fn(kept, traced, |k, t| amps[table[k][t]]);
    Ok(ComplexMatrix(&m * m.adjoint()))
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `values`.
    pub vectors: ComplexMatrix,
}

pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let deviation = h.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let sym = (&h.0 + h.0.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let n = h.rows();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3));
        assert_eq!(k.max_abs_diff(&ComplexMatrix::identity(6)), 0.0);
    }

    #[test]
    fn kron_of_diagonals() {
        let z = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        let k = kron(&z, &ComplexMatrix::identity(2));
        let expected = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, -1.0, -1.0]);
        assert_eq!(k.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let psi = StateVector::basis(4, 0);
        let shape = SubsystemShape::new(vec![2, 2]).unwrap();
        let r = partial_trace(&psi.projector(), &shape, &[0]).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        assert!(r.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = StateVector::from_real(&[h, 0.0, 0.0, h]);
        let shape = SubsystemShape::new(vec![2, 2]).unwrap();
        let r = partial_trace(&psi.projector(), &shape, &[0]).unwrap();
        let expected = ComplexMatrix::identity(2).scale(c(0.5));
        assert!(r.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn partial_trace_keeping_everything_is_identity_map() {
        let psi = StateVector::from_real(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6]).normalized();
        let shape = SubsystemShape::new(vec![2, 3]).unwrap();
        let rho = psi.projector();
        let r = partial_trace(&rho, &shape, &[1, 0]).unwrap();
        assert!(r.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_input() {
        let shape = SubsystemShape::new(vec![2, 2]).unwrap();
        let rho = ComplexMatrix::identity(3);
        assert!(matches!(partial_trace(&rho, &shape, &[0]), Err(Error::InvalidShape(_))));

        let rho = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_trace(&rho, &shape, &[2]),
            Err(Error::IndexOutOfRange { index: 2, count: 2 })
        ));

        let mut entries = vec![Complex64::ZERO; 16];
        entries[1] = c(1.0);
        let rho = ComplexMatrix::from_row_slice(4, 4, &entries);
        assert!(matches!(partial_trace(&rho, &shape, &[0]), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn shape_rejects_zero_dims() {
        assert!(SubsystemShape::new(vec![2, 0]).is_err());
        assert!(SubsystemShape::new(vec![]).is_err());
    }

    #[test]
    fn reduced_density_matches_partial_trace() {
        let amps: Vec<Complex64> = (0..12).map(|k| Complex64::new(k as f64, 1.0 - k as f64 * 0.3)).collect();
        let psi = StateVector::new(amps).normalized();
        let shape = SubsystemShape::new(vec![2, 3, 2]).unwrap();
        for keep in [vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2]] {
            let a = reduced_density(&psi, &shape, &keep).unwrap();
            let b = partial_trace(&psi.projector(), &shape, &keep).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-14, "keep {keep:?}");
        }
    }

    #[test]
    fn eig_of_diagonal_is_sorted() {
        let h = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        let e = eig_hermitian(&h).unwrap();
        assert_eq!(e.values.len(), 3);
        for (got, want) in e.values.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        // eigenvector k is a permuted unit vector
        for (k, row) in [1usize, 2, 0].into_iter().enumerate() {
            assert!((e.vectors[(row, k)].norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }
}
