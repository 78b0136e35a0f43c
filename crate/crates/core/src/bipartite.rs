//! Bipartite structure of `H₁⊗H₂`: Schmidt decomposition, the maximal
//! entanglement test, and the splitting of u*(H₁⊗H₂) into the four blocks
//! `⟨I⟩⊗⟨I⟩ ⊕ ⟨I⟩⊗su* ⊕ su*⊗⟨I⟩ ⊕ su*⊗su*`.
//!
//! Throughout, `𝕀ₖ = I/dₖ` is the trace-normalised identity, and vectors of
//! `H₁⊗H₂` use the index `i·d2 + k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{
    eigh_matrix, partial_trace, vec_norm, ComplexMatrix, DensityState, HermitianOperator, TraceSide, C64,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteDims {
    pub d1: usize,
    pub d2: usize,
}

impl BipartiteDims {
    pub fn new(d1: usize, d2: usize) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::Dimension(format!("bipartite dims must be positive, got ({d1}, {d2})")));
        }
        Ok(Self { d1, d2 })
    }

    pub fn total(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    /// Statements about full Schmidt rank assume `d1 ≥ d2`.
    pub fn is_ordered(&self) -> bool {
        self.d1 >= self.d2
    }

    fn check(&self, dim: usize) -> Result<()> {
        if dim != self.total() {
            return Err(Error::Dimension(format!("dimension {dim} does not match d1·d2 = {}·{}", self.d1, self.d2)));
        }
        Ok(())
    }
}

/// A vector of `H₁⊗H₂`; wire form `{"d1", "d2", "re": [...], "im": [...]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteVector {
    pub dims: BipartiteDims,
    pub amplitudes: Vec<C64>,
}

impl BipartiteVector {
    pub fn new(dims: BipartiteDims, amplitudes: Vec<C64>) -> Result<Self> {
        dims.check(amplitudes.len())?;
        Ok(Self { dims, amplitudes })
    }

    /// `λ·e₁⊗f₁ + √(1-λ²)·e₂⊗f₂` on a 2×2 system.
    pub fn phi_lambda(lambda_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda_sq) {
            return Err(Error::Domain(format!("λ² = {lambda_sq} outside [0, 1]")));
        }
        let (a, b) = (lambda_sq.sqrt(), (1.0 - lambda_sq).sqrt());
        let z = C64::new(0.0, 0.0);
        Self::new(BipartiteDims { d1: 2, d2: 2 }, vec![C64::new(a, 0.0), z, z, C64::new(b, 0.0)])
    }

    /// `Σᵢ eᵢ⊗eᵢ / √m` on an m×m system.
    pub fn maximally_entangled(m: usize) -> Result<Self> {
        let dims = BipartiteDims::new(m, m)?;
        let s = 1.0 / (m as f64).sqrt();
        let amps = (0..m * m).map(|r| if r / m == r % m { C64::new(s, 0.0) } else { C64::new(0.0, 0.0) }).collect();
        Self::new(dims, amps)
    }

    pub fn product(a: &[C64], b: &[C64]) -> Result<Self> {
        let dims = BipartiteDims::new(a.len(), b.len())?;
        Self::new(dims, crate::operator::vec_kron(a, b))
    }

    pub fn projector(&self) -> Result<DensityState> {
        crate::operator::projector(&self.amplitudes)
    }
}

#[derive(Serialize, Deserialize)]
struct BipartiteVectorJson {
    d1: usize,
    d2: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for BipartiteVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BipartiteVectorJson {
            d1: self.dims.d1,
            d2: self.dims.d2,
            re: self.amplitudes.iter().map(|z| z.re).collect(),
            im: self.amplitudes.iter().map(|z| z.im).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BipartiteVectorJson::deserialize(d)?;
        let n = raw.d1 * raw.d2;
        if raw.d1 == 0 || raw.d2 == 0 {
            return Err(D::Error::custom("fields `d1`/`d2` must be positive"));
        }
        if raw.re.len() != n {
            return Err(D::Error::custom(format!("field `re`: expected {n} entries, got {}", raw.re.len())));
        }
        if raw.im.len() != n {
            return Err(D::Error::custom(format!("field `im`: expected {n} entries, got {}", raw.im.len())));
        }
        if raw.re.iter().chain(&raw.im).any(|x| !x.is_finite()) {
            return Err(D::Error::custom("fields `re`/`im`: non-finite amplitude"));
        }
        let amplitudes = raw.re.iter().zip(&raw.im).map(|(&a, &b)| C64::new(a, b)).collect();
        Ok(Self { dims: BipartiteDims { d1: raw.d1, d2: raw.d2 }, amplitudes })
    }
}

/// `ψ = Σⱼ λⱼ·uⱼ⊗vⱼ` with orthonormal `uⱼ ∈ H₁`, `vⱼ ∈ H₂`.
///
/// Inside a degenerate coefficient the pairing of vectors is not unique;
/// only the coefficients and the reconstruction are meaningful.
#[derive(Clone, Debug, Serialize)]
pub struct SchmidtDecomposition {
    pub coefficients: Vec<f64>,
    #[serde(skip)]
    pub left_vectors: Vec<Vec<C64>>,
    #[serde(skip)]
    pub right_vectors: Vec<Vec<C64>>,
    pub rank: usize,
}

impl SchmidtDecomposition {
    pub fn reconstruct(&self) -> Vec<C64> {
        let n = self.left_vectors.first().map_or(0, Vec::len) * self.right_vectors.first().map_or(0, Vec::len);
        let mut psi = vec![C64::new(0.0, 0.0); n];
        for ((&l, u), v) in self.coefficients.iter().zip(&self.left_vectors).zip(&self.right_vectors) {
            for (slot, z) in psi.iter_mut().zip(crate::operator::vec_kron(u, v)) {
                *slot += z * l;
            }
        }
        psi
    }
}

pub const SCHMIDT_TOL: f64 = 1e-10;

/// Singular value decomposition of the coefficient matrix `M[i][k] = ψ[i·d2+k]`.
///
/// The right singular vectors come from the Hermitian eigenproblem of `M^†M`
/// and each coefficient is recomputed as `‖M wⱼ‖`, which keeps the small
/// singular values accurate to working precision for the rank decision.
pub fn schmidt_decompose(psi: &[C64], dims: BipartiteDims, tol: f64) -> Result<SchmidtDecomposition> {
    dims.check(psi.len())?;
    if vec_norm(psi) == 0.0 {
        return Err(Error::DegenerateInput("Schmidt decomposition of the zero vector".into()));
    }
    let (d1, d2) = dims.pair();
    let m = |i: usize, k: usize| psi[i * d2 + k];
    let gram = ComplexMatrix::from_fn(d2, |k, l| (0..d1).map(|i| m(i, k).conj() * m(i, l)).sum());
    let spec = eigh_matrix(&gram)?;

    let mut triples: Vec<(f64, Vec<C64>, Vec<C64>)> = (0..d2)
        .map(|j| {
            let w = spec.eigenvector(j);
            let mw: Vec<C64> = (0..d1).map(|i| (0..d2).map(|k| m(i, k) * w[k]).sum()).collect();
            let s = vec_norm(&mw);
            (s, mw, w)
        })
        .collect();
    triples.sort_by(|a, b| b.0.total_cmp(&a.0));
    let largest = triples[0].0;

    let mut out = SchmidtDecomposition { coefficients: vec![], left_vectors: vec![], right_vectors: vec![], rank: 0 };
    for (s, mw, w) in triples {
        if s <= tol * largest || out.rank == d1.min(d2) {
            break;
        }
        // ψ = Σ sⱼ·uⱼ⊗conj(wⱼ) since M = Σ sⱼ uⱼ wⱼ^†.
        let mut u: Vec<C64> = mw.iter().map(|z| z / s).collect();
        for prev in &out.left_vectors {
            let overlap = crate::operator::vec_dot(prev, &u);
            for (x, p) in u.iter_mut().zip(prev) {
                *x -= overlap * p;
            }
        }
        let nu = vec_norm(&u);
        u.iter_mut().for_each(|x| *x /= nu);
        out.coefficients.push(s);
        out.left_vectors.push(u);
        out.right_vectors.push(w.iter().map(|z| z.conj()).collect());
        out.rank += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MaxEntanglementVerdict {
    pub maximally_entangled: bool,
    /// `‖tr₁ρ − I/d2‖_F`
    pub residual: f64,
}

pub const PURITY_TOL: f64 = 1e-8;

/// Pure `ρ` is maximally entangled iff `tr₁ρ = I/d2`.
pub fn is_maximally_entangled(rho: &DensityState, dims: BipartiteDims, tol: f64) -> Result<MaxEntanglementVerdict> {
    dims.check(rho.dim())?;
    if dims.d2 == 1 {
        return Err(Error::DegenerateInput("maximal entanglement needs d2 > 1".into()));
    }
    let largest = rho.op().eigh()?.max_eigenvalue();
    if largest < 1.0 - PURITY_TOL {
        return Err(Error::NotPure { largest });
    }
    let marginal = partial_trace(rho.op(), dims.pair(), TraceSide::First)?;
    let residual = marginal.distance(&HermitianOperator::maximally_mixed(dims.d2));
    Ok(MaxEntanglementVerdict { maximally_entangled: residual <= tol, residual })
}

/// Orthogonal components of `x = c_id·(𝕀₁⊗𝕀₂) + 𝕀₁⊗p10 + p01⊗𝕀₂ + p00`.
///
/// `p10` (on H₂) and `p01` (on H₁) are traceless; `p00` has vanishing
/// partial traces. With `𝕀ₖ = I/dₖ` this gives `c_id = tr x`,
/// `p10 = tr₁x − tr(x)·𝕀₂` and `p01 = tr₂x − tr(x)·𝕀₁`.
#[derive(Clone, Debug)]
pub struct BlockComponents {
    pub dims: BipartiteDims,
    pub c_id: f64,
    pub p10: HermitianOperator,
    pub p01: HermitianOperator,
    pub p00: HermitianOperator,
}

/// Frobenius norms of the four full blocks as they sit inside u*(H₁⊗H₂).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlockNorms {
    pub identity: f64,
    pub block10: f64,
    pub block01: f64,
    pub block00: f64,
}

impl BlockComponents {
    pub fn identity_block(&self) -> HermitianOperator {
        HermitianOperator::maximally_mixed(self.dims.total()).scale(self.c_id)
    }

    /// `𝕀₁⊗p10`
    pub fn block10(&self) -> HermitianOperator {
        HermitianOperator::maximally_mixed(self.dims.d1).tensor(&self.p10)
    }

    /// `p01⊗𝕀₂`
    pub fn block01(&self) -> HermitianOperator {
        self.p01.tensor(&HermitianOperator::maximally_mixed(self.dims.d2))
    }

    pub fn reconstruct(&self) -> HermitianOperator {
        self.identity_block().add(&self.block10()).add(&self.block01()).add(&self.p00)
    }

    pub fn norms(&self) -> BlockNorms {
        let (d1, d2) = (self.dims.d1 as f64, self.dims.d2 as f64);
        BlockNorms {
            identity: self.c_id.abs() / (d1 * d2).sqrt(),
            block10: self.p10.norm() / d1.sqrt(),
            block01: self.p01.norm() / d2.sqrt(),
            block00: self.p00.norm(),
        }
    }
}

pub fn block_decompose(x: &HermitianOperator, dims: BipartiteDims) -> Result<BlockComponents> {
    dims.check(x.dim())?;
    let tr = x.trace();
    let p10 = partial_trace(x, dims.pair(), TraceSide::First)?.axpy(-tr, &HermitianOperator::maximally_mixed(dims.d2));
    let p01 = partial_trace(x, dims.pair(), TraceSide::Second)?.axpy(-tr, &HermitianOperator::maximally_mixed(dims.d1));
    let mut blocks = BlockComponents { dims, c_id: tr, p10, p01, p00: HermitianOperator::zeros(dims.total()) };
    blocks.p00 = x.sub(&blocks.reconstruct());
    Ok(blocks)
}

/// Blocks of `π(P_ψ) = P_ψ − 𝕀₁⊗𝕀₂`.
pub fn decompose_projection_psi(psi: &[C64], dims: BipartiteDims) -> Result<BlockComponents> {
    dims.check(psi.len())?;
    let p = crate::operator::projector(psi)?;
    let shifted = p.op().sub(&HermitianOperator::maximally_mixed(dims.total()));
    block_decompose(&shifted, dims)
}

/// Projection onto the `su*(H₁)⊗su*(H₂)` block.
pub fn block00_part(x: &HermitianOperator, dims: BipartiteDims) -> Result<HermitianOperator> {
    Ok(block_decompose(x, dims)?.p00)
}
