//! Deciding whether a convexed orbit `Conv(K·x₀)` is a convex body.
//!
//! The hull has empty interior in its invariant affine space exactly when
//! the projection of `x₀` onto the linear part lies in a proper invariant
//! subspace. Since `K` is connected here, invariance under `K` is
//! invariance under the Lie algebra, so the smallest invariant subspace
//! containing the projected seed is the Krylov-type span of iterated
//! generator applications. The hull is a body iff that span is everything.
//!
//! Hermitian operators are flattened into real coordinates with respect to
//! the orthonormal basis returned by [`su_basis`], so all generators are
//! real antisymmetric matrices.

use serde::Serialize;

use crate::bipartite::{block_decompose, BipartiteDims, BlockNorms};
use crate::error::{Error, Result};
use crate::operator::{eigh_matrix, traceless_part, ComplexMatrix, HermitianOperator, C64};

/// A real-linear map on a coordinate space, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLinearMap {
    dim: usize,
    data: Vec<f64>,
}

impl RealLinearMap {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!("generator needs {} entries, got {}", dim * dim, data.len())));
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..dim * dim).map(|r| f(r / dim, r % dim)).collect();
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.data.chunks_exact(self.dim).map(|row| dot(row, x)).collect()
    }

    /// `max |G + Gᵀ|`
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.entry(i, j) + self.entry(j, i)).abs());
            }
        }
        worst
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthonormal basis of su*(n): symmetric and antisymmetric off-diagonal
/// pairs followed by `n-1` traceless diagonal matrices.
pub fn su_basis(n: usize) -> Vec<HermitianOperator> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in j + 1..n {
            let mut sym = ComplexMatrix::zeros(n);
            sym[(j, k)] = C64::new(s, 0.0);
            sym[(k, j)] = C64::new(s, 0.0);
            basis.push(HermitianOperator::from_computed(sym));
            let mut anti = ComplexMatrix::zeros(n);
            anti[(j, k)] = C64::new(0.0, -s);
            anti[(k, j)] = C64::new(0.0, s);
            basis.push(HermitianOperator::from_computed(anti));
        }
    }
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; n];
        diag[..l].iter_mut().for_each(|x| *x = norm);
        diag[l] = -(l as f64) * norm;
        basis.push(HermitianOperator::diag(&diag));
    }
    basis
}

/// Orthonormal basis of u*(n): `I/√n` followed by [`su_basis`].
pub fn hermitian_basis(n: usize) -> Vec<HermitianOperator> {
    let mut basis = vec![HermitianOperator::identity(n).scale(1.0 / (n as f64).sqrt())];
    basis.extend(su_basis(n));
    basis
}

pub fn coordinates(x: &HermitianOperator, basis: &[HermitianOperator]) -> Vec<f64> {
    basis.iter().map(|b| b.matrix().hs_inner(x.matrix()).re).collect()
}

pub fn from_coordinates(c: &[f64], basis: &[HermitianOperator]) -> HermitianOperator {
    let n = basis[0].dim();
    let mut m = ComplexMatrix::zeros(n);
    for (&ci, b) in c.iter().zip(basis) {
        m = &m + &b.matrix().scale_real(ci);
    }
    HermitianOperator::from_computed(m)
}

/// User-supplied orthogonal action given by its Lie algebra generators.
#[derive(Clone, Debug)]
pub struct CustomGenerators {
    pub generators: Vec<RealLinearMap>,
    /// Orthonormal basis of the fixed space `V_K`; computed as the common
    /// kernel of the generators when absent.
    pub fixed_space: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug)]
pub enum GroupAction {
    /// `U(d)` acting by `A ↦ UAU^†`.
    FullUnitaryAdjoint {
        d: usize,
    },
    /// `U(d1)×U(d2)` acting by conjugation with `U₁⊗U₂`.
    LocalUnitaryProduct {
        d1: usize,
        d2: usize,
    },
    CustomLieGenerators(CustomGenerators),
}

pub const ANTISYMMETRY_TOL: f64 = 1e-9;

impl GroupAction {
    pub fn full(d: usize) -> Self {
        Self::FullUnitaryAdjoint { d }
    }

    pub fn local(d1: usize, d2: usize) -> Self {
        Self::LocalUnitaryProduct { d1, d2 }
    }

    pub fn custom(generators: Vec<RealLinearMap>, fixed_space: Option<Vec<Vec<f64>>>) -> Result<Self> {
        let dim = generators
            .first()
            .map(RealLinearMap::dim)
            .ok_or_else(|| Error::DegenerateInput("no generators supplied".into()))?;
        for (k, g) in generators.iter().enumerate() {
            if g.dim() != dim {
                return Err(Error::Dimension(format!("generator {k} acts on dimension {}, expected {dim}", g.dim())));
            }
            let defect = g.antisymmetry_defect();
            if defect > ANTISYMMETRY_TOL {
                return Err(Error::Input(format!("generator {k} is not antisymmetric (defect {defect:e})")));
            }
        }
        Ok(Self::CustomLieGenerators(CustomGenerators { generators, fixed_space }))
    }

    /// Dimension of the Hilbert space the built-in actions act on.
    pub fn hilbert_dim(&self) -> Option<usize> {
        match self {
            Self::FullUnitaryAdjoint { d } => Some(*d),
            Self::LocalUnitaryProduct { d1, d2 } => Some(d1 * d2),
            Self::CustomLieGenerators(_) => None,
        }
    }

    /// Dimension of the real coordinate space the generators act on.
    pub fn ambient_real_dim(&self) -> usize {
        match self {
            Self::CustomLieGenerators(c) => c.generators[0].dim(),
            _ => {
                let n = self.hilbert_dim().unwrap();
                n * n - 1
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::FullUnitaryAdjoint { d } => format!("full-unitary({d})"),
            Self::LocalUnitaryProduct { d1, d2 } => format!("local({d1},{d2})"),
            Self::CustomLieGenerators(c) => format!("custom({} generators)", c.generators.len()),
        }
    }
}

/// Matrix of `X ↦ i[B, X]` in the su* coordinates.
fn adjoint_generator(b: &ComplexMatrix, basis: &[HermitianOperator]) -> RealLinearMap {
    let i = C64::new(0.0, 1.0);
    let images: Vec<Vec<f64>> = basis
        .iter()
        .map(|e| {
            let img = HermitianOperator::from_computed(b.commutator(e.matrix()).scale(i));
            coordinates(&img, basis)
        })
        .collect();
    RealLinearMap::from_fn(basis.len(), |row, col| images[col][row])
}

/// Real-linear antisymmetric generators of the action on its invariant
/// linear space.
///
/// For the unitary actions these are `X ↦ i[B, X]` with `B` running over a
/// Hermitian basis (the anti-Hermitian Lie algebra element being `u = iB`),
/// acting on su*(n): `d²` maps for the full action, `d1² + d2²` for the
/// local one (through `B⊗I` and `I⊗B`).
pub fn lie_generators(action: &GroupAction) -> Vec<RealLinearMap> {
    match action {
        GroupAction::FullUnitaryAdjoint { d } => {
            let basis = su_basis(*d);
            hermitian_basis(*d).iter().map(|b| adjoint_generator(b.matrix(), &basis)).collect()
        }
        GroupAction::LocalUnitaryProduct { d1, d2 } => {
            let basis = su_basis(d1 * d2);
            let left =
                hermitian_basis(*d1).into_iter().map(|b| b.matrix().tensor_product(&ComplexMatrix::identity(*d2)));
            let right =
                hermitian_basis(*d2).into_iter().map(|b| ComplexMatrix::identity(*d1).tensor_product(b.matrix()));
            left.chain(right).map(|b| adjoint_generator(&b, &basis)).collect()
        }
        GroupAction::CustomLieGenerators(c) => c.generators.clone(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantSubspaceReport {
    pub closure_dim: usize,
    pub ambient_dim: usize,
    #[serde(skip)]
    pub basis: Vec<Vec<f64>>,
    /// Dimensions added by each closure round.
    pub residual_history: Vec<usize>,
}

impl InvariantSubspaceReport {
    pub fn is_proper(&self) -> bool {
        self.closure_dim < self.ambient_dim
    }

    /// Largest norm of the component of `G·b` orthogonal to the span.
    pub fn closure_residual(&self, gens: &[RealLinearMap]) -> f64 {
        let mut worst = 0.0f64;
        for b in &self.basis {
            for g in gens {
                let mut w = g.apply(b);
                project_out(&mut w, &self.basis);
                worst = worst.max(norm(&w));
            }
        }
        worst
    }
}

fn project_out(w: &mut [f64], basis: &[Vec<f64>]) {
    for q in basis {
        let c = dot(q, w);
        w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
    }
}

pub const CLOSURE_TOL: f64 = 1e-9;

/// Smallest generator-invariant subspace containing `seed`.
///
/// Rounds apply every generator to the vectors added in the previous round;
/// modified Gram–Schmidt with a second pass decides whether each image adds
/// a direction (norm above `tol` after normalising the seed).
pub fn minimal_invariant_subspace(seed: &[f64], gens: &[RealLinearMap], tol: f64) -> Result<InvariantSubspaceReport> {
    let ambient = seed.len();
    if let Some(g) = gens.iter().find(|g| g.dim() != ambient) {
        return Err(Error::Dimension(format!("generator of dimension {} on a {ambient}-dimensional seed", g.dim())));
    }
    let n0 = norm(seed);
    if !(n0 > tol) {
        return Err(Error::DegenerateInput(format!("seed norm {n0:e} does not exceed {tol:e}")));
    }
    let mut basis = vec![seed.iter().map(|x| x / n0).collect::<Vec<_>>()];
    let mut frontier = vec![0usize];
    let mut history = vec![1usize];
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        assert!(rounds <= ambient + 1, "closure failed to stabilise; dimension is monotone");
        let mut added = Vec::new();
        for &idx in &frontier {
            for g in gens {
                let mut w = g.apply(&basis[idx]);
                project_out(&mut w, &basis);
                project_out(&mut w, &basis);
                let nw = norm(&w);
                if nw > tol {
                    w.iter_mut().for_each(|x| *x /= nw);
                    basis.push(w);
                    added.push(basis.len() - 1);
                    if basis.len() == ambient {
                        break;
                    }
                }
            }
            if basis.len() == ambient {
                break;
            }
        }
        if !added.is_empty() {
            history.push(added.len());
        }
        frontier = if basis.len() == ambient { vec![] } else { added };
    }
    Ok(InvariantSubspaceReport { closure_dim: basis.len(), ambient_dim: ambient, basis, residual_history: history })
}

/// Orthonormal basis of the common kernel of the generators.
pub fn fixed_space(gens: &[RealLinearMap]) -> Result<Vec<Vec<f64>>> {
    let n = gens[0].dim();
    // Σ GᵀG is PSD with kernel equal to the common kernel.
    let gram = ComplexMatrix::from_fn(n, |i, j| {
        C64::new(gens.iter().map(|g| (0..n).map(|k| g.entry(k, i) * g.entry(k, j)).sum::<f64>()).sum(), 0.0)
    });
    let spec = eigh_matrix(&gram)?;
    let scale = spec.max_eigenvalue().max(1.0);
    Ok((0..n)
        .filter(|&k| spec.eigenvalues[k].abs() <= 1e-10 * scale)
        .map(|k| spec.eigenvector(k).iter().map(|z| z.re).collect())
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictMethod {
    Krylov,
    BlockNorms,
    PartialTrace,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexBodyVerdict {
    pub is_body: bool,
    pub method: VerdictMethod,
    pub closure_dim: Option<usize>,
    pub ambient_dim: usize,
    pub block_norms: Option<BlockNorms>,
    #[serde(skip)]
    pub closure: Option<InvariantSubspaceReport>,
}

pub const BLOCK_NORM_TOL: f64 = 1e-9;

/// Krylov decision: is `Conv(K·x₀)` a convex body in its invariant affine
/// space?
///
/// For the built-in actions the fixed space is `⟨I⟩`, so the seed is the
/// traceless part of `x₀`. A seed that vanishes (scalar `x₀`) gives a
/// single point, which is not a body. Local actions also carry the block
/// norms of the seed.
pub fn is_convex_body(action: &GroupAction, x0: &HermitianOperator) -> Result<ConvexBodyVerdict> {
    let gens = lie_generators(action);
    let (seed, ambient) = match action {
        GroupAction::CustomLieGenerators(c) => {
            let n = c.generators[0].dim();
            if x0.dim() * x0.dim() != n {
                return Err(Error::Dimension(format!(
                    "custom action on R^{n} expects u* coordinates of an operator with dim² = {n}, got dim {}",
                    x0.dim()
                )));
            }
            let mut seed = coordinates(x0, &hermitian_basis(x0.dim()));
            let fixed = match &c.fixed_space {
                Some(f) => f.clone(),
                None => fixed_space(&gens)?,
            };
            project_out(&mut seed, &fixed);
            (seed, n - fixed.len())
        }
        _ => {
            let n = action.hilbert_dim().unwrap();
            if x0.dim() != n {
                return Err(Error::Dimension(format!("state of dimension {} for action {}", x0.dim(), action.name())));
            }
            let seed = coordinates(&traceless_part(x0), &su_basis(n));
            (seed, n * n - 1)
        }
    };
    let block_norms = match action {
        GroupAction::LocalUnitaryProduct { d1, d2 } => {
            Some(block_decompose(x0, BipartiteDims::new(*d1, *d2)?)?.norms())
        }
        _ => None,
    };
    if norm(&seed) <= CLOSURE_TOL {
        return Ok(ConvexBodyVerdict {
            is_body: false,
            method: VerdictMethod::Krylov,
            closure_dim: Some(0),
            ambient_dim: ambient,
            block_norms,
            closure: None,
        });
    }
    let report = minimal_invariant_subspace(&seed, &gens, CLOSURE_TOL)?;
    Ok(ConvexBodyVerdict {
        is_body: report.closure_dim == ambient,
        method: VerdictMethod::Krylov,
        closure_dim: Some(report.closure_dim),
        ambient_dim: ambient,
        block_norms,
        closure: Some(report),
    })
}

/// Closed-form decision for the local action: the three traceless blocks
/// are irreducible and pairwise inequivalent, so the generated subspace is
/// the sum of the blocks `x₀` touches. A block that is zero-dimensional
/// (a factor of dimension 1) imposes nothing.
pub fn is_convex_body_by_blocks(x0: &HermitianOperator, dims: BipartiteDims) -> Result<ConvexBodyVerdict> {
    let norms = block_decompose(x0, dims)?.norms();
    let (d1, d2) = dims.pair();
    let hits = |present: bool, n: f64| !present || n > BLOCK_NORM_TOL;
    let is_body = hits(d2 > 1, norms.block10) && hits(d1 > 1, norms.block01) && hits(d1 > 1 && d2 > 1, norms.block00);
    Ok(ConvexBodyVerdict {
        is_body,
        method: VerdictMethod::BlockNorms,
        closure_dim: None,
        ambient_dim: dims.total() * dims.total() - 1,
        block_norms: Some(norms),
        closure: None,
    })
}

/// For pure states: a body iff not maximally entangled. When `d1 < d2`
/// the factors are swapped first, so the test is on the smaller marginal.
pub fn is_convex_body_by_partial_trace(
    rho: &crate::operator::DensityState,
    dims: BipartiteDims,
) -> Result<ConvexBodyVerdict> {
    let v = if dims.is_ordered() {
        crate::bipartite::is_maximally_entangled(rho, dims, 1e-8)?
    } else {
        let (d1, d2) = dims.pair();
        if rho.dim() != d1 * d2 {
            return Err(Error::Dimension(format!("state of dimension {} for {d1}x{d2}", rho.dim())));
        }
        let m = rho.matrix();
        let swapped = ComplexMatrix::from_fn(d1 * d2, |r, c| m[((r % d1) * d2 + r / d1, (c % d1) * d2 + c / d1)]);
        let swapped = crate::operator::DensityState::new(HermitianOperator::new(swapped)?)?;
        crate::bipartite::is_maximally_entangled(&swapped, BipartiteDims::new(d2, d1)?, 1e-8)?
    };
    Ok(ConvexBodyVerdict {
        is_body: !v.maximally_entangled,
        method: VerdictMethod::PartialTrace,
        closure_dim: None,
        ambient_dim: dims.total() * dims.total() - 1,
        block_norms: None,
        closure: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusCheck {
    /// Traceless diagonals of the torus-fixed orbit points.
    pub vertex_projections: Vec<Vec<f64>>,
    pub span_dim: usize,
    pub passes: bool,
}

/// Necessary condition for `Conv(U(d)·x₀)` to be a body: the torus-fixed
/// points (diagonal matrices carrying the permutations of the spectrum)
/// project onto a spanning set of the traceless diagonal subspace.
pub fn torus_fixed_point_check(x0: &HermitianOperator) -> Result<TorusCheck> {
    let spectrum = x0.eigh()?.eigenvalues;
    torus_check_spectrum(&spectrum)
}

pub fn torus_check_spectrum(spectrum: &[f64]) -> Result<TorusCheck> {
    let d = spectrum.len();
    if d < 2 {
        return Err(Error::Dimension("torus check needs d ≥ 2".into()));
    }
    let scale = spectrum.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-10 * scale;
    // Cluster numerically equal eigenvalues so the permutations are distinct.
    let mut values: Vec<f64> = spectrum.to_vec();
    values.sort_by(|a, b| b.total_cmp(a));
    for k in 1..d {
        if (values[k - 1] - values[k]).abs() <= tol {
            values[k] = values[k - 1];
        }
    }
    let mean = values.iter().sum::<f64>() / d as f64;
    let mut vertices = Vec::new();
    for_each_distinct_permutation(&mut values.clone(), &mut |p| {
        vertices.push(p.iter().map(|x| x - mean).collect::<Vec<_>>());
    });
    let span_dim = rank(&vertices, tol);
    Ok(TorusCheck { vertex_projections: vertices, span_dim, passes: span_dim == d - 1 })
}

/// Lexicographic enumeration of distinct permutations (input sorted descending).
fn for_each_distinct_permutation(v: &mut [f64], f: &mut impl FnMut(&[f64])) {
    v.sort_by(|a, b| a.total_cmp(b));
    loop {
        f(v);
        // next permutation
        let n = v.len();
        let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else { return };
        let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
    }
}

fn rank(vectors: &[Vec<f64>], tol: f64) -> usize {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        project_out(&mut w, &basis);
        project_out(&mut w, &basis);
        let n = norm(&w);
        if n > tol {
            basis.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::BipartiteVector;

    #[test]
    fn generator_counts() {
        let g = lie_generators(&GroupAction::full(2));
        assert_eq!(g.len(), 4);
        assert!(g.iter().all(|m| m.dim() == 3));
        let g = lie_generators(&GroupAction::local(2, 2));
        assert_eq!(g.len(), 8);
        assert!(g.iter().all(|m| m.dim() == 15));
    }

    #[test]
    fn generators_are_antisymmetric() {
        for action in [GroupAction::full(3), GroupAction::local(2, 3)] {
            for g in lie_generators(&action) {
                assert!(g.antisymmetry_defect() < 1e-14);
            }
        }
    }

    #[test]
    fn su_basis_is_orthonormal() {
        let b = su_basis(4);
        assert_eq!(b.len(), 15);
        for i in 0..b.len() {
            assert!(b[i].trace().abs() < 1e-15);
            for j in 0..b.len() {
                let ip = b[i].matrix().hs_inner(b[j].matrix()).re;
                assert!((ip - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn qubit_adjoint_closure_is_everything() {
        let x = HermitianOperator::diag(&[0.3, -0.3]);
        let v = is_convex_body(&GroupAction::full(2), &x).unwrap();
        assert_eq!(v.closure_dim, Some(3));
        assert!(v.is_body);
    }

    #[test]
    fn bell_closure_is_block00() {
        let bell = BipartiteVector::maximally_entangled(2).unwrap().projector().unwrap();
        let v = is_convex_body(&GroupAction::local(2, 2), bell.op()).unwrap();
        assert_eq!(v.closure_dim, Some(9));
        assert!(!v.is_body);
        assert!(!is_convex_body_by_blocks(bell.op(), BipartiteDims { d1: 2, d2: 2 }).unwrap().is_body);
    }

    #[test]
    fn product_closure_is_full() {
        let p = BipartiteVector::product(
            &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        )
        .unwrap()
        .projector()
        .unwrap();
        let v = is_convex_body(&GroupAction::local(2, 2), p.op()).unwrap();
        assert_eq!(v.closure_dim, Some(15));
        assert!(v.is_body);
    }

    #[test]
    fn phi_lambda_is_body() {
        let p = BipartiteVector::phi_lambda(0.75).unwrap().projector().unwrap();
        assert!(is_convex_body(&GroupAction::local(2, 2), p.op()).unwrap().is_body);
    }

    #[test]
    fn scalar_state_is_not_body() {
        let v = is_convex_body(&GroupAction::full(3), &HermitianOperator::maximally_mixed(3)).unwrap();
        assert!(!v.is_body);
        assert_eq!(v.closure_dim, Some(0));
    }

    #[test]
    fn zero_seed_is_rejected() {
        let gens = lie_generators(&GroupAction::full(2));
        assert!(matches!(minimal_invariant_subspace(&[0.0; 3], &gens, 1e-9), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn custom_action_rotations() {
        // SO(2) rotating the first two coordinates of R^3: fixed space is e3.
        let g = RealLinearMap::new(3, vec![0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let fixed = fixed_space(std::slice::from_ref(&g)).unwrap();
        assert_eq!(fixed.len(), 1);
        let r = minimal_invariant_subspace(&[1.0, 0.0, 0.0], std::slice::from_ref(&g), 1e-9).unwrap();
        assert_eq!(r.closure_dim, 2);
        let r = minimal_invariant_subspace(&[1.0, 0.0, 0.5], std::slice::from_ref(&g), 1e-9).unwrap();
        assert_eq!(r.closure_dim, 3);
        let bad = RealLinearMap::new(2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(GroupAction::custom(vec![bad], None).is_err());
    }

    #[test]
    fn custom_action_on_qubit_coordinates() {
        // Full adjoint generators lifted to u*(2) coordinates (identity coordinate fixed).
        let su = lie_generators(&GroupAction::full(2));
        let lifted: Vec<RealLinearMap> = su
            .iter()
            .map(|g| RealLinearMap::from_fn(4, |i, j| if i == 0 || j == 0 { 0.0 } else { g.entry(i - 1, j - 1) }))
            .collect();
        let action = GroupAction::custom(lifted, None).unwrap();
        let v = is_convex_body(&action, &HermitianOperator::diag(&[1.0, 0.0])).unwrap();
        assert_eq!(v.ambient_dim, 3);
        assert!(v.is_body);
    }

    #[test]
    fn torus_examples() {
        let t = torus_check_spectrum(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(t.vertex_projections.len(), 3);
        assert_eq!(t.span_dim, 2);
        assert!(t.passes);
        let t = torus_fixed_point_check(&HermitianOperator::maximally_mixed(3)).unwrap();
        assert_eq!(t.vertex_projections.len(), 1);
        assert_eq!(t.span_dim, 0);
        assert!(!t.passes);
        let t = torus_check_spectrum(&[0.7, 0.7, -0.2]).unwrap();
        assert_eq!(t.vertex_projections.len(), 3);
        assert_eq!(t.span_dim, 2);
        assert!(t.passes);
    }
}
