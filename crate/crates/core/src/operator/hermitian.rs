use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::eigen::{eigh, SpectralDecomposition};
use super::matrix::{vec_norm, ComplexMatrix, C64};
use crate::error::{Error, Result};

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;

/// Element of u*(H): a Hermitian matrix.
///
/// Construction symmetrises `(A + A^†)/2` when the asymmetry is within the
/// tolerance and rejects the input otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
    hermiticity_tol: f64,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, HERMITICITY_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let asymmetry = matrix.hermiticity_defect();
        if !(asymmetry <= tol) {
            return Err(Error::NotHermitian { asymmetry, tol });
        }
        Ok(Self { matrix: matrix.hermitian_part(), hermiticity_tol: tol })
    }

    /// For results that are Hermitian by construction up to rounding.
    pub(crate) fn from_computed(matrix: ComplexMatrix) -> Self {
        Self { matrix: matrix.hermitian_part(), hermiticity_tol: HERMITICITY_TOL }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_computed(ComplexMatrix::zeros(dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_computed(ComplexMatrix::identity(dim))
    }

    /// The trace-normalised identity `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_computed(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    pub fn diag(values: &[f64]) -> Self {
        Self::from_computed(ComplexMatrix::diag_real(values))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn hermiticity_tol(&self) -> f64 {
        self.hermiticity_tol
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn eigh(&self) -> Result<SpectralDecomposition> {
        eigh(self)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_computed(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_computed(&self.matrix - &other.matrix)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_computed(self.matrix.scale_real(s))
    }

    /// `self + s·other`
    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        Self::from_computed(&self.matrix + &other.matrix.scale_real(s))
    }

    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        Self::from_computed(self.matrix.conjugate_by(u))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_computed(self.matrix.tensor_product(&other.matrix))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).frobenius_norm()
    }

    /// Real coordinates `(re, im)` of all entries; the Euclidean dot product
    /// of two such vectors equals `tr(AB)` for Hermitian `A`, `B`.
    pub fn to_real_vec(&self) -> Vec<f64> {
        self.matrix.as_slice().iter().flat_map(|z| [z.re, z.im]).collect()
    }

    pub fn from_real_vec(dim: usize, v: &[f64]) -> Self {
        assert_eq!(v.len(), 2 * dim * dim);
        let data = v.chunks_exact(2).map(|p| C64::new(p[0], p[1])).collect();
        Self::from_computed(ComplexMatrix::from_vec(dim, data).expect("finite coordinates"))
    }
}

impl Serialize for HermitianOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(d)?;
        HermitianOperator::new(m).map_err(serde::de::Error::custom)
    }
}

/// Density state: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityState {
    op: HermitianOperator,
    trace_tol: f64,
    psd_tol: f64,
}

impl DensityState {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        Self::with_tolerances(op, TRACE_TOL, PSD_TOL)
    }

    pub fn with_tolerances(op: HermitianOperator, trace_tol: f64, psd_tol: f64) -> Result<Self> {
        let tr = op.trace();
        if !((tr - 1.0).abs() <= trace_tol) {
            return Err(Error::NotDensity(format!("trace {tr} differs from 1 by more than {trace_tol:e}")));
        }
        let min = eigh(&op)?.min_eigenvalue();
        if min < -psd_tol {
            return Err(Error::NotDensity(format!("smallest eigenvalue {min:e} below -{psd_tol:e}")));
        }
        Ok(Self { op, trace_tol, psd_tol })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { op: HermitianOperator::maximally_mixed(dim), trace_tol: TRACE_TOL, psd_tol: PSD_TOL }
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn into_op(self) -> HermitianOperator {
        self.op
    }

    pub fn is_pure(&self, tol: f64) -> Result<bool> {
        Ok(self.op.eigh()?.max_eigenvalue() >= 1.0 - tol)
    }
}

impl AsRef<HermitianOperator> for DensityState {
    fn as_ref(&self) -> &HermitianOperator {
        &self.op
    }
}

impl Serialize for DensityState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.op.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityState {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let op = HermitianOperator::deserialize(d)?;
        DensityState::new(op).map_err(serde::de::Error::custom)
    }
}

/// `tr(AB)`; the imaginary part must vanish to 1e-10.
pub fn frobenius_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!("inner product of {}x{} and {}x{}", a.dim(), a.dim(), b.dim(), b.dim())));
    }
    let z = a.matrix().hs_inner(b.matrix());
    if z.im.abs() > 1e-10 * (1.0 + z.re.abs()) {
        return Err(Error::Numerical(format!("trace pairing has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.tensor_product(b)
}

/// Which factor of `H₁⊗H₂` is traced out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceSide {
    /// `tr₁`, leaving an operator on H₂.
    First,
    /// `tr₂`, leaving an operator on H₁.
    Second,
}

fn check_factorisation(dim: usize, (d1, d2): (usize, usize)) -> Result<()> {
    if d1 == 0 || d2 == 0 || d1 * d2 != dim {
        return Err(Error::Dimension(format!("dims ({d1}, {d2}) do not factor a {dim}-dimensional space")));
    }
    Ok(())
}

pub(crate) fn partial_trace_matrix(x: &ComplexMatrix, dims: (usize, usize), side: TraceSide) -> Result<ComplexMatrix> {
    check_factorisation(x.dim(), dims)?;
    let (d1, d2) = dims;
    Ok(match side {
        TraceSide::First => ComplexMatrix::from_fn(d2, |k, l| (0..d1).map(|i| x[(i * d2 + k, i * d2 + l)]).sum()),
        TraceSide::Second => ComplexMatrix::from_fn(d1, |i, j| (0..d2).map(|k| x[(i * d2 + k, j * d2 + k)]).sum()),
    })
}

pub fn partial_trace(x: &HermitianOperator, dims: (usize, usize), side: TraceSide) -> Result<HermitianOperator> {
    Ok(HermitianOperator::from_computed(partial_trace_matrix(x.matrix(), dims, side)?))
}

pub(crate) fn partial_transpose_matrix(x: &ComplexMatrix, dims: (usize, usize)) -> Result<ComplexMatrix> {
    check_factorisation(x.dim(), dims)?;
    let (_, d2) = dims;
    Ok(ComplexMatrix::from_fn(x.dim(), |r, c| {
        let (i, k) = (r / d2, r % d2);
        let (j, l) = (c / d2, c % d2);
        x[(i * d2 + l, j * d2 + k)]
    }))
}

/// Transpose of the second tensor factor.
pub fn partial_transpose(x: &HermitianOperator, dims: (usize, usize)) -> Result<HermitianOperator> {
    Ok(HermitianOperator::from_computed(partial_transpose_matrix(x.matrix(), dims)?))
}

/// `|v><v| / <v|v>`
pub fn projector(v: &[C64]) -> Result<DensityState> {
    let n = vec_norm(v);
    if v.is_empty() || n == 0.0 || !n.is_finite() {
        return Err(Error::DegenerateInput("projector onto the zero vector".into()));
    }
    let u: Vec<C64> = v.iter().map(|z| z / n).collect();
    let op = HermitianOperator::from_computed(ComplexMatrix::outer(&u, &u));
    Ok(DensityState { op, trace_tol: TRACE_TOL, psd_tol: PSD_TOL })
}

/// `x - (tr(x)/d)·I`
pub fn traceless_part(x: &HermitianOperator) -> HermitianOperator {
    let d = x.dim();
    let shift = x.trace() / d as f64;
    let mut m = x.matrix().clone();
    for i in 0..d {
        m[(i, i)] -= shift;
    }
    HermitianOperator::from_computed(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn inner_of_identities() {
        let i2 = HermitianOperator::identity(2);
        assert_eq!(frobenius_inner(&i2, &i2).unwrap(), 2.0);
        let a = HermitianOperator::diag(&[1.0, 0.0]);
        let b = HermitianOperator::diag(&[0.0, 1.0]);
        assert_eq!(frobenius_inner(&a, &b).unwrap(), 0.0);
        assert!(matches!(frobenius_inner(&a, &HermitianOperator::identity(3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn rejects_non_hermitian_instead_of_symmetrising() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(HermitianOperator::new(m), Err(Error::NotHermitian { .. })));
        let tiny = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0 + 1e-12, 0.0]]).unwrap();
        let h = HermitianOperator::new(tiny).unwrap();
        assert_eq!(h.matrix()[(0, 1)], h.matrix()[(1, 0)].conj());
    }

    #[test]
    fn density_validation() {
        assert!(DensityState::new(HermitianOperator::diag(&[0.5, 0.6])).is_err());
        assert!(DensityState::new(HermitianOperator::diag(&[1.1, -0.1])).is_err());
        assert!(DensityState::new(HermitianOperator::diag(&[0.7, 0.3])).is_ok());
    }

    #[test]
    fn projector_examples() {
        let p = projector(&[c(1.0), c(0.0)]).unwrap();
        assert_eq!(p.matrix(), &ComplexMatrix::diag_real(&[1.0, 0.0]));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = projector(&[c(s), c(s)]).unwrap();
        assert!(p.matrix().as_slice().iter().all(|z| (z - c(0.5)).norm() < 1e-15));
        let p = projector(&[c(2.0), c(0.0)]).unwrap();
        assert_eq!(p.matrix(), &ComplexMatrix::diag_real(&[1.0, 0.0]));
        assert!(matches!(projector(&[c(0.0), c(0.0)]), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = projector(&[c(s), c(0.0), c(0.0), c(s)]).unwrap();
        let m = partial_trace(bell.op(), (2, 2), TraceSide::First).unwrap();
        assert!(m.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_of_identity() {
        let m = partial_trace(&HermitianOperator::identity(4), (2, 2), TraceSide::First).unwrap();
        assert_eq!(m.matrix(), &ComplexMatrix::identity(2).scale_real(2.0));
        assert!(partial_trace(&HermitianOperator::identity(4), (3, 2), TraceSide::First).is_err());
    }

    #[test]
    fn partial_transpose_of_bell_has_negative_half() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = projector(&[c(s), c(0.0), c(0.0), c(s)]).unwrap();
        let pt = partial_transpose(bell.op(), (2, 2)).unwrap();
        let spec = pt.eigh().unwrap();
        assert!((spec.min_eigenvalue() + 0.5).abs() < 1e-14);
        let i4 = HermitianOperator::identity(4);
        assert_eq!(partial_transpose(&i4, (2, 2)).unwrap(), i4);
    }

    #[test]
    fn traceless_part_examples() {
        assert!(traceless_part(&HermitianOperator::identity(3)).norm() < 1e-15);
        let p = projector(&[c(0.6), C64::new(0.0, 0.8)]).unwrap();
        let t = traceless_part(p.op());
        assert!((t.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        let z = HermitianOperator::diag(&[1.0, -1.0]);
        assert_eq!(traceless_part(&z), z);
    }
}
