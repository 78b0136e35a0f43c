//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the real symmetric Jacobi rotation, so the sweep
//! structure is the classical one. Dimensions here are small (at most a few
//! dozen), where Jacobi is accurate to working precision on every
//! eigenvalue, including the tiny ones the rank decisions depend on.

use super::hermitian::HermitianOperator;
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
pub const OFF_DIAGONAL_RTOL: f64 = 1e-12;

/// Eigenvalues in descending order with orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `V diag(f(λ)) V^†`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let w: Vec<C64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| (0..n).map(|k| v[(i, k)] * w[k] * v[(j, k)].conj()).sum())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| C64::new(l, 0.0))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }
}

pub fn eigh(a: &HermitianOperator) -> Result<SpectralDecomposition> {
    eigh_matrix(a.matrix())
}

/// Jacobi diagonalisation of a matrix assumed Hermitian (only the upper
/// triangle and the real diagonal are trusted).
pub(crate) fn eigh_matrix(a: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();

    if n > 1 && scale > 0.0 {
        let threshold = OFF_DIAGONAL_RTOL * scale;
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&m) <= threshold {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut m, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&m) > threshold {
            return Err(Error::Numerical(format!("Jacobi eigensolver did not converge within {MAX_SWEEPS} sweeps")));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let eigenvalues = order.iter().map(|&k| m[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Skip pivots that are already negligible against both diagonal entries.
    if b < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[(p, q)] = C64::new(0.0, 0.0);
        m[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / b; // e^{iφ}
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J = diag(1, e^{-iφ}) on (p, q) followed by the real rotation [[c, s], [-s, c]].
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = phase.conj() * (-s);
    let jqq = phase.conj() * c;

    let n = m.dim();
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * jpp + akq * jqp;
        m[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        m[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// `exp(X)` for anti-Hermitian `X`, computed through the spectrum of `iX`.
pub fn unitary_exp(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let h = x.scale(C64::new(0.0, 1.0));
    let spec = eigh_matrix(&h)?;
    // X = -iH, so exp(X) = V exp(-iλ) V^†.
    Ok(spec.reconstruct_with(|l| C64::new(0.0, -l).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm(rows: &[&[f64]]) -> HermitianOperator {
        HermitianOperator::new(ComplexMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn diagonal_input_sorted() {
        let s = eigh(&herm(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]])).unwrap();
        assert_eq!(s.eigenvalues, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pauli_x() {
        let s = eigh(&herm(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_matrix() {
        let m = ComplexMatrix::identity(4).scale_real(0.25);
        let s = eigh(&HermitianOperator::new(m).unwrap()).unwrap();
        assert!(s.eigenvalues.iter().all(|&l| (l - 0.25).abs() < 1e-15));
    }

    #[test]
    fn complex_entries_reconstruct() {
        let m = ComplexMatrix::from_vec(
            3,
            vec![
                C64::new(2.0, 0.0),
                C64::new(1.0, -1.0),
                C64::new(0.0, 0.5),
                C64::new(1.0, 1.0),
                C64::new(-1.0, 0.0),
                C64::new(0.3, 0.2),
                C64::new(0.0, -0.5),
                C64::new(0.3, -0.2),
                C64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let s = eigh_matrix(&m).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-13);
        assert!(s.eigenvectors.unitarity_defect() < 1e-13);
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = unitary_exp(&ComplexMatrix::zeros(3)).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn exp_of_pauli_rotation() {
        // exp(-iθX) = cos θ I - i sin θ X
        let theta: f64 = 0.37;
        let x = ComplexMatrix::from_vec(
            2,
            vec![C64::new(0.0, 0.0), C64::new(0.0, -theta), C64::new(0.0, -theta), C64::new(0.0, 0.0)],
        )
        .unwrap();
        let e = unitary_exp(&x).unwrap();
        let expected = ComplexMatrix::from_vec(
            2,
            vec![
                C64::new(theta.cos(), 0.0),
                C64::new(0.0, -theta.sin()),
                C64::new(0.0, -theta.sin()),
                C64::new(theta.cos(), 0.0),
            ],
        )
        .unwrap();
        assert!(e.max_abs_diff(&expected) < 1e-14);
    }
}
