//! Superoperators on gl(H): Kraus and Choi forms, the Jamiołkowski
//! isomorphism, stochasticity, the completely depolarizing channel, Haar
//! averaging, and mixed-unitary certificates.
//!
//! # Index convention
//!
//! For a Kraus map `A(ρ) = Σ X ρ X^†` the Choi matrix is
//! `J̃(A) = Σ vec(X) vec(X)^†` with `vec(X)[i·d + j] = X[i][j]`, i.e.
//! `J̃(A)[(i,j),(k,l)] = A(|j⟩⟨l|)[i][k]`. The first factor is the output
//! space `H`, the second the input space, which carries the conjugate
//! structure `H̄`. Consequently:
//!
//! - `J̃(id) = d·P_Φ⁺` and `A` is completely positive iff `J̃(A) ⪰ 0`;
//! - `tr₂ J̃(A) = T₂(A)` and `tr₁ J̃(A) = T₁(A)` read on `H̄`, whose matrix
//!   is `T₁(A)ᵀ`;
//! - `J̃((U₁,U₂)·A) = (U₁⊗Ū₂^†)·J̃(A)·(U₁⊗Ū₂^†)^†` for
//!   `((U₁,U₂)·A)(ρ) = U₁ A(U₂ρU₂^†) U₁^†`, where `Ū₂^† = U₂ᵀ` is how `U₂^†`
//!   acts on `H̄`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bipartite::{BipartiteDims, BipartiteVector};
use crate::error::{Error, Result};
use crate::hull::{
    frank_wolfe_membership, FrankWolfeConfig, GroupElement, MembershipStatus, MembershipVerdict, OrbitSpec,
};
use crate::operator::{eigh_matrix, partial_trace_matrix, ComplexMatrix, HermitianOperator, TraceSide, C64, ZERO};
use crate::orbit::GroupAction;
use crate::random::ginibre;

/// `A(ρ) = Σₖ Xₖ ρ Xₖ^†`
#[derive(Clone, Debug, PartialEq)]
pub struct KrausMap {
    kraus: Vec<ComplexMatrix>,
}

impl KrausMap {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let d = kraus.first().ok_or_else(|| Error::Input("Kraus list is empty".into()))?.dim();
        if let Some(k) = kraus.iter().position(|x| x.dim() != d) {
            return Err(Error::Dimension(format!("Kraus operator {k} has dimension {}, expected {d}", kraus[k].dim())));
        }
        Ok(Self { kraus })
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn identity(d: usize) -> Self {
        Self { kraus: vec![ComplexMatrix::identity(d)] }
    }

    pub fn unitary(u: ComplexMatrix) -> Self {
        Self { kraus: vec![u] }
    }

    /// `ρ ↦ Σ pₖ Uₖ ρ Uₖ^†`
    pub fn mixed_unitary(weights: &[f64], unitaries: &[ComplexMatrix]) -> Result<Self> {
        if weights.len() != unitaries.len() || weights.iter().any(|&p| p < 0.0) {
            return Err(Error::Input("mixed-unitary weights must be non-negative and match the unitaries".into()));
        }
        Self::new(weights.iter().zip(unitaries).map(|(&p, u)| u.scale_real(p.sqrt())).collect())
    }

    pub fn apply_matrix(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.dim() != self.dim() {
            return Err(Error::Dimension(format!("channel on dimension {} applied to {}", self.dim(), x.dim())));
        }
        let mut out = ComplexMatrix::zeros(x.dim());
        for k in &self.kraus {
            out = &out + &x.conjugate_by(k);
        }
        Ok(out)
    }

    /// `(U₁,U₂)·A : ρ ↦ U₁ A(U₂ρU₂^†) U₁^†`, i.e. Kraus operators `U₁ X U₂`.
    pub fn act(&self, u1: &ComplexMatrix, u2: &ComplexMatrix) -> Self {
        Self { kraus: self.kraus.iter().map(|x| u1.matmul(x).matmul(u2)).collect() }
    }
}

pub fn apply_channel(k: &KrausMap, rho: &HermitianOperator) -> Result<HermitianOperator> {
    Ok(HermitianOperator::from_computed(k.apply_matrix(rho.matrix())?))
}

/// `T₁ = Σ X^†X` (trace preservation iff `T₁ = I`), `T₂ = Σ XX^†` (unital iff `T₂ = I`).
pub fn t1_t2(k: &KrausMap) -> (HermitianOperator, HermitianOperator) {
    let d = k.dim();
    let (mut t1, mut t2) = (ComplexMatrix::zeros(d), ComplexMatrix::zeros(d));
    for x in k.operators() {
        let xa = x.adjoint();
        t1 = &t1 + &xa.matmul(x);
        t2 = &t2 + &x.matmul(&xa);
    }
    (HermitianOperator::from_computed(t1), HermitianOperator::from_computed(t2))
}

/// Choi matrix on `H⊗H̄` (dimension d²).
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    matrix: HermitianOperator,
    d: usize,
}

pub const CP_TOL: f64 = 1e-9;

impl ChoiMatrix {
    pub fn new(matrix: HermitianOperator) -> Result<Self> {
        let n = matrix.dim();
        let d = (n as f64).sqrt().round() as usize;
        if d * d != n {
            return Err(Error::Dimension(format!("Choi matrix dimension {n} is not a square")));
        }
        Ok(Self { matrix, d })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &HermitianOperator {
        &self.matrix
    }

    pub fn dims(&self) -> BipartiteDims {
        BipartiteDims { d1: self.d, d2: self.d }
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.matrix.eigh()?.min_eigenvalue())
    }

    pub fn is_completely_positive(&self) -> Result<bool> {
        Ok(self.min_eigenvalue()? >= -CP_TOL)
    }

    /// `A(|j⟩⟨l|)`, the `(j, l)` block of the Choi matrix.
    pub fn apply_matrix_unit(&self, j: usize, l: usize) -> ComplexMatrix {
        let d = self.d;
        let m = self.matrix.matrix();
        ComplexMatrix::from_fn(d, |i, k| m[(i * d + j, k * d + l)])
    }

    /// `A(X) = Σ_{jl} X[j][l]·A(|j⟩⟨l|)`
    pub fn apply_matrix(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let d = self.d;
        if x.dim() != d {
            return Err(Error::Dimension(format!("Choi of dimension {d} applied to {}", x.dim())));
        }
        let mut out = ComplexMatrix::zeros(d);
        for j in 0..d {
            for l in 0..d {
                if x[(j, l)] != ZERO {
                    out = &out + &self.apply_matrix_unit(j, l).scale(x[(j, l)]);
                }
            }
        }
        Ok(out)
    }

    /// `T₂ = tr₂ J̃`
    pub fn t2(&self) -> HermitianOperator {
        HermitianOperator::from_computed(
            partial_trace_matrix(self.matrix.matrix(), (self.d, self.d), TraceSide::Second).unwrap(),
        )
    }

    /// `T₁`, recovered from `tr₁ J̃` (its matrix on `H̄` is `T₁ᵀ`).
    pub fn t1(&self) -> HermitianOperator {
        HermitianOperator::from_computed(
            partial_trace_matrix(self.matrix.matrix(), (self.d, self.d), TraceSide::First).unwrap().transpose(),
        )
    }
}

pub fn choi_from_kraus(k: &KrausMap) -> ChoiMatrix {
    let d = k.dim();
    let mut c = ComplexMatrix::zeros(d * d);
    for x in k.operators() {
        let v = x.as_slice();
        c = &c + &ComplexMatrix::outer(v, v);
    }
    ChoiMatrix { matrix: HermitianOperator::from_computed(c), d }
}

/// Kraus form of a Hermitian Choi matrix: `J̃ = Σ σₘ·vec(Xₘ)vec(Xₘ)^†` with
/// signs `σₘ = ±1`. All signs are `+1` iff the map is completely positive.
#[derive(Clone, Debug)]
pub struct KrausDecomposition {
    pub kraus: KrausMap,
    pub signs: Vec<f64>,
    pub completely_positive: bool,
}

pub const KRAUS_RANK_RTOL: f64 = 1e-10;

pub fn kraus_from_choi(c: &ChoiMatrix) -> Result<KrausDecomposition> {
    let d = c.d;
    let spec = c.matrix.eigh()?;
    let lmax = spec.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = KRAUS_RANK_RTOL * lmax;
    let mut kraus = Vec::new();
    let mut signs = Vec::new();
    for (k, &l) in spec.eigenvalues.iter().enumerate() {
        if l.abs() <= cut {
            continue;
        }
        let v = spec.eigenvector(k);
        let s = l.abs().sqrt();
        kraus.push(ComplexMatrix::from_vec(d, v.iter().map(|z| z * s).collect())?);
        signs.push(l.signum());
    }
    if kraus.is_empty() {
        kraus.push(ComplexMatrix::zeros(d));
        signs.push(1.0);
    }
    let completely_positive = spec.min_eigenvalue() >= -CP_TOL;
    Ok(KrausDecomposition { kraus: KrausMap::new(kraus)?, signs, completely_positive })
}

impl KrausDecomposition {
    pub fn to_choi(&self) -> ChoiMatrix {
        let d = self.kraus.dim();
        let mut c = ComplexMatrix::zeros(d * d);
        for (x, &s) in self.kraus.operators().iter().zip(&self.signs) {
            let v = x.as_slice();
            c = &c + &ComplexMatrix::outer(v, v).scale_real(s);
        }
        ChoiMatrix { matrix: HermitianOperator::from_computed(c), d }
    }
}

/// `‖J̃((U₁,U₂)·A) − (U₁⊗U₂ᵀ)·J̃(A)·(U₁⊗U₂ᵀ)^†‖_F`, see the module docs.
pub fn intertwining_check(k: &KrausMap, u1: &ComplexMatrix, u2: &ComplexMatrix) -> Result<f64> {
    let d = k.dim();
    if u1.dim() != d || u2.dim() != d {
        return Err(Error::Dimension("unitaries must match the channel dimension".into()));
    }
    let lhs = choi_from_kraus(&k.act(u1, u2));
    let w = u1.tensor_product(&u2.transpose());
    let rhs = choi_from_kraus(k).matrix.conjugate_by(&w);
    Ok(lhs.matrix.distance(&rhs))
}

/// `Ω(X) = tr(X)·I/d`
#[derive(Clone, Debug)]
pub struct DepolarizingChannel {
    pub d: usize,
    /// `eᵢeⱼ^†/√d` for all `i, j`.
    pub kraus: KrausMap,
}

impl DepolarizingChannel {
    pub fn apply_closed_form(&self, x: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::identity(self.d).scale(x.trace() / self.d as f64)
    }

    pub fn choi(&self) -> ChoiMatrix {
        choi_from_kraus(&self.kraus)
    }
}

pub fn depolarizing_channel(d: usize) -> Result<DepolarizingChannel> {
    if d < 2 {
        return Err(Error::Domain(format!("depolarizing channel needs d ≥ 2, got {d}")));
    }
    let s = 1.0 / (d as f64).sqrt();
    let mut kraus = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut e = ComplexMatrix::zeros(d);
            e[(i, j)] = C64::new(s, 0.0);
            kraus.push(e);
        }
    }
    Ok(DepolarizingChannel { d, kraus: KrausMap::new(kraus)? })
}

/// Clock-and-shift unitaries `XᵃZᵇ`, an orthogonal basis of gl(d) by unitaries.
pub fn weyl_unitaries(d: usize) -> Vec<ComplexMatrix> {
    let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / d as f64);
    let mut out = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            out.push(ComplexMatrix::from_fn(
                d,
                |i, j| if i == (j + a) % d { omega.powu((j * b) as u32) } else { ZERO },
            ));
        }
    }
    out
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// diagonal of `R` made positive (Gram–Schmidt does this directly).
pub fn haar_random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = ginibre(rng, d);
        if let Some(q) = gram_schmidt_columns(&g) {
            return q;
        }
    }
}

fn gram_schmidt_columns(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let d = g.dim();
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let c = crate::operator::vec_dot(q, &v);
                v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = crate::operator::vec_norm(&v);
        if n < 1e-12 {
            return None;
        }
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    Some(ComplexMatrix::from_fn(d, |i, j| cols[j][i]))
}

#[derive(Clone, Debug, Serialize)]
pub struct HaarAverage {
    pub samples: usize,
    #[serde(skip)]
    pub mean: ComplexMatrix,
    /// `‖mean − tr(X)·I/d‖_F`
    pub error: f64,
}

/// Monte Carlo estimate of `∫ UXU^† dU`.
pub fn haar_average<R: Rng + ?Sized>(x: &ComplexMatrix, samples: usize, rng: &mut R) -> HaarAverage {
    let d = x.dim();
    let mut acc = ComplexMatrix::zeros(d);
    for _ in 0..samples {
        acc = &acc + &x.conjugate_by(&haar_random_unitary(d, rng));
    }
    let mean = acc.scale_real(1.0 / samples.max(1) as f64);
    let target = ComplexMatrix::identity(d).scale(x.trace() / d as f64);
    let error = (&mean - &target).frobenius_norm();
    HaarAverage { samples, mean, error }
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub holds: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletePositivity {
    pub holds: bool,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChannelReport {
    pub d: usize,
    pub trace_preserving: Residual,
    pub unital: Residual,
    pub completely_positive: CompletePositivity,
    pub mixed_unitary: Option<MixedUnitaryCertificate>,
}

pub const STOCHASTIC_TOL: f64 = 1e-8;

pub fn channel_report(c: &ChoiMatrix, certify: Option<&FrankWolfeConfig>) -> Result<ChannelReport> {
    let id = HermitianOperator::identity(c.d);
    let tp = c.t1().distance(&id);
    let un = c.t2().distance(&id);
    let min_eig = c.min_eigenvalue()?;
    let mixed_unitary = match certify {
        Some(cfg) if tp <= STOCHASTIC_TOL && un <= STOCHASTIC_TOL && min_eig >= -CP_TOL => {
            Some(certify_mixed_unitary_near_omega(c, cfg)?)
        }
        _ => None,
    };
    Ok(ChannelReport {
        d: c.d,
        trace_preserving: Residual { holds: tp <= STOCHASTIC_TOL, residual: tp },
        unital: Residual { holds: un <= STOCHASTIC_TOL, residual: un },
        completely_positive: CompletePositivity { holds: min_eig >= -CP_TOL, min_eigenvalue: min_eig },
        mixed_unitary,
    })
}

/// Mixed-unitary witness `A(ρ) = Σ pₖ Uₖ ρ Uₖ^†`.
#[derive(Clone, Debug, Serialize)]
pub struct MixedUnitaryCertificate {
    pub status: MembershipStatus,
    pub weights: Vec<f64>,
    pub unitaries: Vec<ComplexMatrix>,
    /// Largest `‖Σ pₖ Uₖ Eⱼₗ Uₖ^† − A(Eⱼₗ)‖_F` over matrix units.
    pub residual: Option<f64>,
    #[serde(skip)]
    pub verdict: MembershipVerdict,
}

/// Certifies `J̃(A) ∈ Conv{d·(U₁⊗U₂)P_Φ⁺(U₁⊗U₂)^†}` by Frank–Wolfe on
/// `J̃(A)/d` against the local orbit of the maximally entangled state.
///
/// Every orbit point is `d·P_w` with `w = vec(U)/√d` for a unitary `U`, so
/// an `Inside` verdict yields the mixing weights and unitaries directly.
pub fn certify_mixed_unitary_near_omega(c: &ChoiMatrix, config: &FrankWolfeConfig) -> Result<MixedUnitaryCertificate> {
    let d = c.d;
    let id = HermitianOperator::identity(d);
    let tp = c.t1().distance(&id);
    let un = c.t2().distance(&id);
    if tp > STOCHASTIC_TOL || un > STOCHASTIC_TOL {
        return Err(Error::NotDoublyStochastic(format!("‖T₁ − I‖ = {tp:e}, ‖T₂ − I‖ = {un:e}")));
    }
    let min = c.min_eigenvalue()?;
    if min < -CP_TOL {
        return Err(Error::NotDoublyStochastic(format!("Choi matrix has eigenvalue {min:e} < 0")));
    }
    let bell = BipartiteVector::maximally_entangled(d)?.projector()?;
    let orbit = OrbitSpec::new(GroupAction::local(d, d), bell)?;
    let target = c.matrix.scale(1.0 / d as f64);
    let verdict = frank_wolfe_membership(&target, &orbit, config)?;

    let mut cert = MixedUnitaryCertificate {
        status: verdict.status,
        weights: vec![],
        unitaries: vec![],
        residual: None,
        verdict: verdict.clone(),
    };
    if verdict.status == MembershipStatus::Inside {
        for atom in &verdict.witness {
            cert.weights.push(atom.weight);
            cert.unitaries.push(unitary_from_orbit_point(&atom.group, &atom.point, d)?);
        }
        let mu = KrausMap::mixed_unitary(&cert.weights, &cert.unitaries)?;
        let mut worst = 0.0f64;
        for j in 0..d {
            for l in 0..d {
                let mut e = ComplexMatrix::zeros(d);
                e[(j, l)] = C64::new(1.0, 0.0);
                let diff = &mu.apply_matrix(&e)? - &c.apply_matrix_unit(j, l);
                worst = worst.max(diff.frobenius_norm());
            }
        }
        cert.residual = Some(worst);
    }
    Ok(cert)
}

/// Unitary `U` with `d·P_w = J̃(ρ ↦ UρU^†)`, `w = (U₁⊗U₂)Φ⁺ = vec(U₁U₂ᵀ)/√d`.
/// The phase is fixed so the first non-negligible entry is positive real.
fn unitary_from_orbit_point(group: &GroupElement, point: &HermitianOperator, d: usize) -> Result<ComplexMatrix> {
    let u = match group {
        GroupElement::Local { u1, u2 } => u1.matmul(&u2.transpose()),
        _ => {
            let spec = eigh_matrix(point.matrix())?;
            let w = spec.eigenvector(0);
            ComplexMatrix::from_vec(d, w.iter().map(|z| z * (d as f64).sqrt()).collect())?
        }
    };
    let lead = u.as_slice().iter().copied().find(|z| z.norm() > 1e-8).unwrap_or(C64::new(1.0, 0.0));
    Ok(u.scale(lead.conj() / lead.norm()))
}

/// `{"d": n, "kraus": [matrix, ...]}` or `{"d": n, "choi": matrix}`.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ChannelJson {
    Kraus { d: usize, kraus: Vec<ComplexMatrix> },
    Choi { d: usize, choi: ComplexMatrix },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelFields {
    d: usize,
    kraus: Option<Vec<ComplexMatrix>>,
    choi: Option<ComplexMatrix>,
}

impl<'de> Deserialize<'de> for ChannelJson {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ChannelFields::deserialize(deserializer)?;
        match (raw.kraus, raw.choi) {
            (Some(kraus), None) => Ok(Self::Kraus { d: raw.d, kraus }),
            (None, Some(choi)) => Ok(Self::Choi { d: raw.d, choi }),
            (None, None) => Err(D::Error::custom("expected field `kraus` or field `choi`")),
            (Some(_), Some(_)) => Err(D::Error::custom("fields `kraus` and `choi` are mutually exclusive")),
        }
    }
}

impl ChannelJson {
    pub fn to_choi(&self) -> Result<ChoiMatrix> {
        match self {
            Self::Kraus { d, kraus } => {
                let k = KrausMap::new(kraus.clone())?;
                if k.dim() != *d {
                    return Err(Error::Input(format!(
                        "field `d` is {d} but Kraus operators are {}x{}",
                        k.dim(),
                        k.dim()
                    )));
                }
                Ok(choi_from_kraus(&k))
            }
            Self::Choi { d, choi } => {
                if choi.dim() != d * d {
                    return Err(Error::Input(format!(
                        "field `choi` has dimension {}, expected d² = {}",
                        choi.dim(),
                        d * d
                    )));
                }
                ChoiMatrix::new(HermitianOperator::new(choi.clone())?)
            }
        }
    }
}

/// Dephasing `ρ ↦ diag(ρ)` in the computational basis.
pub fn dephasing_channel(d: usize) -> KrausMap {
    KrausMap {
        kraus: (0..d)
            .map(|i| {
                let mut e = ComplexMatrix::zeros(d);
                e[(i, i)] = C64::new(1.0, 0.0);
                e
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::task_rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn unitary_conjugation_preserves_spectrum() {
        let mut rng = task_rng(1, 0);
        let u = haar_random_unitary(3, &mut rng);
        let rho = HermitianOperator::diag(&[0.5, 0.3, 0.2]);
        let out = apply_channel(&KrausMap::unitary(u), &rho).unwrap();
        let e = out.eigh().unwrap().eigenvalues;
        assert!((e[0] - 0.5).abs() < 1e-13 && (e[1] - 0.3).abs() < 1e-13 && (e[2] - 0.2).abs() < 1e-13);
    }

    #[test]
    fn dephasing_keeps_diagonal() {
        let rho = HermitianOperator::new(
            ComplexMatrix::from_vec(2, vec![c(0.6), C64::new(0.1, 0.2), C64::new(0.1, -0.2), c(0.4)]).unwrap(),
        )
        .unwrap();
        let out = apply_channel(&dephasing_channel(2), &rho).unwrap();
        assert_eq!(out, HermitianOperator::diag(&[0.6, 0.4]));
    }

    #[test]
    fn weyl_kraus_is_depolarizing() {
        for d in [2, 3] {
            let w = weyl_unitaries(d);
            let n = w.len() as f64;
            let k = KrausMap::new(w.into_iter().map(|u| u.scale_real(1.0 / n.sqrt())).collect()).unwrap();
            let x = ComplexMatrix::from_fn(d, |i, j| C64::new((i + 2 * j) as f64, i as f64 - j as f64));
            let out = k.apply_matrix(&x).unwrap();
            let expected = ComplexMatrix::identity(d).scale(x.trace() / d as f64);
            assert!(out.max_abs_diff(&expected) < 1e-13);
        }
    }

    #[test]
    fn t_maps() {
        let (t1, t2) = t1_t2(&KrausMap::unitary(weyl_unitaries(2)[3].clone()));
        assert!(t1.distance(&HermitianOperator::identity(2)) < 1e-15);
        assert!(t2.distance(&HermitianOperator::identity(2)) < 1e-15);
        let mut e12 = ComplexMatrix::zeros(2);
        e12[(0, 1)] = c(1.0);
        let (t1, t2) = t1_t2(&KrausMap::new(vec![e12]).unwrap());
        assert_eq!(t1, HermitianOperator::diag(&[0.0, 1.0]));
        assert_eq!(t2, HermitianOperator::diag(&[1.0, 0.0]));
    }

    #[test]
    fn identity_choi_is_scaled_bell() {
        let choi = choi_from_kraus(&KrausMap::identity(2));
        let bell = BipartiteVector::maximally_entangled(2).unwrap().projector().unwrap();
        assert!(choi.matrix().distance(&bell.op().scale(2.0)) < 1e-15);
    }

    #[test]
    fn depolarizing_choi_and_action() {
        let omega = depolarizing_channel(2).unwrap();
        assert!(omega.choi().matrix().distance(&HermitianOperator::identity(4).scale(0.5)) < 1e-15);
        let x = ComplexMatrix::diag_real(&[1.0, 2.0]);
        assert!(
            omega.kraus.apply_matrix(&x).unwrap().max_abs_diff(&ComplexMatrix::identity(2).scale_real(1.5)) < 1e-15
        );
        let z = ComplexMatrix::diag_real(&[1.0, -1.0]);
        assert!(omega.kraus.apply_matrix(&z).unwrap().frobenius_norm() < 1e-15);
        let i = ComplexMatrix::identity(2);
        assert!(omega.apply_closed_form(&i).max_abs_diff(&i) < 1e-15);
        assert!(depolarizing_channel(1).is_err());
    }

    #[test]
    fn choi_round_trip_and_signed_decomposition() {
        let mut rng = task_rng(2, 0);
        let h = crate::random::random_hermitian(&mut rng, 4);
        let choi = ChoiMatrix::new(h).unwrap();
        let dec = kraus_from_choi(&choi).unwrap();
        assert!(!dec.completely_positive);
        assert!(dec.signs.iter().any(|&s| s < 0.0));
        assert!(dec.to_choi().matrix().distance(choi.matrix()) < 1e-12);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = task_rng(3, 0);
        for d in [1, 2, 5] {
            let u = haar_random_unitary(d, &mut rng);
            assert!(u.unitarity_defect() < 1e-12);
        }
        let phase = haar_random_unitary(1, &mut rng)[(0, 0)];
        assert!((phase.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_intertwining_trivial() {
        let i = ComplexMatrix::identity(2);
        assert_eq!(intertwining_check(&KrausMap::identity(2), &i, &i).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_doubly_stochastic() {
        let mut e12 = ComplexMatrix::zeros(2);
        e12[(0, 1)] = c(1.0);
        let choi = choi_from_kraus(&KrausMap::new(vec![e12]).unwrap());
        let cfg = FrankWolfeConfig::default();
        assert!(matches!(certify_mixed_unitary_near_omega(&choi, &cfg), Err(Error::NotDoublyStochastic(_))));
    }

    #[test]
    fn channel_json_forms() {
        let k: ChannelJson = serde_json::from_str(r#"{"d":1,"kraus":[{"dim":1,"re":[[1]],"im":[[0]]}]}"#).unwrap();
        assert_eq!(k.to_choi().unwrap().d(), 1);
        let bad: ChannelJson = serde_json::from_str(r#"{"d":2,"choi":{"dim":1,"re":[[1]],"im":[[0]]}}"#).unwrap();
        assert!(bad.to_choi().unwrap_err().to_string().contains("`choi`"));
    }
}
