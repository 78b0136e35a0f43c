use convexed_orbits::bipartite::{block_decompose, schmidt_decompose, BipartiteDims, SCHMIDT_TOL};
use convexed_orbits::channel::{choi_from_kraus, haar_random_unitary, kraus_from_choi, KrausMap};
use convexed_orbits::hull::{
    frank_wolfe_membership, lmo_unitary_orbit, FrankWolfeConfig, GroupElement, MembershipStatus, OrbitSpec,
};
use convexed_orbits::operator::{
    frobenius_inner, projector, unitary_exp, ComplexMatrix, DensityState, HermitianOperator, C64,
};
use convexed_orbits::orbit::GroupAction;
use convexed_orbits::random::{ginibre, random_hermitian, random_unit_vector, task_rng};
use proptest::prelude::*;
use rand::Rng;

fn local(u1: &ComplexMatrix, u2: &ComplexMatrix) -> GroupElement {
    GroupElement::Local { u1: u1.clone(), u2: u2.clone() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eigh_reconstructs_with_orthonormal_vectors(seed in any::<u64>(), d in 1usize..=8) {
        let a = random_hermitian(&mut task_rng(seed, 0), d);
        let spec = a.eigh().unwrap();
        let scale = a.norm().max(1.0);
        prop_assert!(spec.reconstruct().max_abs_diff(a.matrix()) <= 1e-10 * scale);
        prop_assert!(spec.eigenvectors.unitarity_defect() <= 1e-10);
        prop_assert!(spec.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn frobenius_inner_matches_spectrum(seed in any::<u64>(), d in 1usize..=8) {
        let a = random_hermitian(&mut task_rng(seed, 1), d);
        let spec = a.eigh().unwrap();
        let sq: f64 = spec.eigenvalues.iter().map(|l| l * l).sum();
        let tr: f64 = spec.eigenvalues.iter().sum();
        prop_assert!((frobenius_inner(&a, &a).unwrap() - sq).abs() <= 1e-10 * sq.max(1.0));
        prop_assert!((a.trace() - tr).abs() <= 1e-10 * a.norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unitary_exp_of_anti_hermitian_is_unitary(seed in any::<u64>(), d in 1usize..=6) {
        let h = random_hermitian(&mut task_rng(seed, 2), d);
        let u = unitary_exp(&h.matrix().scale(C64::new(0.0, 1.0))).unwrap();
        prop_assert!(u.unitarity_defect() <= 1e-10);
    }

    #[test]
    fn haar_unitaries_are_unitary(seed in any::<u64>(), d in 1usize..=6) {
        prop_assert!(haar_random_unitary(d, &mut task_rng(seed, 3)).unitarity_defect() <= 1e-12);
    }

    #[test]
    fn schmidt_reconstructs_and_is_local_invariant(seed in any::<u64>(), d1 in 1usize..=3, d2 in 1usize..=3) {
        let dims = BipartiteDims::new(d1, d2).unwrap();
        let mut rng = task_rng(seed, 4);
        let psi = random_unit_vector(&mut rng, dims.total());
        let dec = schmidt_decompose(&psi, dims, SCHMIDT_TOL).unwrap();
        let err: f64 = dec.reconstruct().iter().zip(&psi).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(err <= 1e-10);
        let sum: f64 = dec.coefficients.iter().map(|l| l * l).sum();
        prop_assert!((sum - 1.0).abs() <= 1e-10);
        let w = haar_random_unitary(d1, &mut rng).tensor_product(&haar_random_unitary(d2, &mut rng));
        let moved = schmidt_decompose(&w.apply(&psi), dims, SCHMIDT_TOL).unwrap();
        prop_assert_eq!(moved.rank, dec.rank);
        for (a, b) in moved.coefficients.iter().zip(&dec.coefficients) {
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn blocks_are_orthogonal_and_reconstruct(seed in any::<u64>(), d1 in 1usize..=3, d2 in 1usize..=3) {
        let dims = BipartiteDims::new(d1, d2).unwrap();
        let x = random_hermitian(&mut task_rng(seed, 5), dims.total());
        let b = block_decompose(&x, dims).unwrap();
        prop_assert!(b.reconstruct().distance(&x) <= 1e-10 * x.norm().max(1.0));
        let parts = [b.identity_block(), b.block10(), b.block01(), b.p00.clone()];
        for i in 0..4 {
            for j in i + 1..4 {
                prop_assert!(frobenius_inner(&parts[i], &parts[j]).unwrap().abs() <= 1e-10 * x.norm().powi(2).max(1.0));
            }
        }
        let n = b.norms();
        let total = n.identity.powi(2) + n.block10.powi(2) + n.block01.powi(2) + n.block00.powi(2);
        prop_assert!((total - x.norm().powi(2)).abs() <= 1e-9 * total.max(1.0));
    }

    #[test]
    fn kraus_choi_round_trip(seed in any::<u64>(), d in 1usize..=3, r in 1usize..=4) {
        let mut rng = task_rng(seed, 6);
        let kraus = KrausMap::new((0..r).map(|_| ginibre(&mut rng, d)).collect()).unwrap();
        let c = choi_from_kraus(&kraus);
        let back = kraus_from_choi(&c).unwrap();
        prop_assert!(back.completely_positive);
        prop_assert!(back.to_choi().matrix().distance(c.matrix()) <= 1e-9 * c.matrix().norm().max(1.0));
        let x = ginibre(&mut rng, d);
        let direct = kraus.apply_matrix(&x).unwrap();
        prop_assert!(c.apply_matrix(&x).unwrap().max_abs_diff(&direct) <= 1e-10 * x.frobenius_norm().max(1.0) * c.matrix().norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn block10_norm_is_local_invariant(seed in any::<u64>(), d2 in 2usize..=3) {
        let dims = BipartiteDims::new(2, d2).unwrap();
        let mut rng = task_rng(seed, 7);
        let p = projector(&random_unit_vector(&mut rng, dims.total())).unwrap();
        let orbit = OrbitSpec::new(GroupAction::local(2, d2), p.clone()).unwrap();
        let before = block_decompose(p.op(), dims).unwrap().norms();
        let u1 = haar_random_unitary(2, &mut rng);
        let u2 = haar_random_unitary(d2, &mut rng);
        let after = block_decompose(&orbit.point(&local(&u1, &u2)), dims).unwrap().norms();
        prop_assert!((before.block10 - after.block10).abs() <= 1e-10);
        prop_assert!((before.block01 - after.block01).abs() <= 1e-10);
        prop_assert!((before.block00 - after.block00).abs() <= 1e-10);
    }

    #[test]
    fn unitary_lmo_matches_permutation_brute_force(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = task_rng(seed, 8);
        let g = random_hermitian(&mut rng, d);
        let base: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
        let res = lmo_unitary_orbit(&g, &base).unwrap();
        let mu = g.eigh().unwrap().eigenvalues;
        let mut best = f64::INFINITY;
        for perm in permutations(d) {
            best = best.min(perm.iter().enumerate().map(|(i, &p)| mu[i] * base[p]).sum());
        }
        prop_assert!((res.value - best).abs() <= 1e-10);
        prop_assert!((frobenius_inner(&g, &res.point).unwrap() - res.value).abs() <= 1e-10);
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn unitary_lmo_beats_haar_samples() {
    let mut rng = task_rng(99, 0);
    for d in [2, 3, 4] {
        let g = random_hermitian(&mut rng, d);
        let w: Vec<f64> = (1..=d).map(|i| (2 * i) as f64 / (d * (d + 1)) as f64).collect();
        let base = DensityState::new(HermitianOperator::diag(&w)).unwrap();
        let orbit = OrbitSpec::new(GroupAction::full(d), base).unwrap();
        let res = lmo_unitary_orbit(&g, orbit.base_spectrum()).unwrap();
        for _ in 0..10_000 {
            let u = haar_random_unitary(d, &mut rng);
            let val = frobenius_inner(&g, &orbit.point(&GroupElement::Unitary(u))).unwrap();
            assert!(res.value <= val + 1e-12, "d={d}: lmo {} > sample {val}", res.value);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // Targets built as explicit mixtures of orbit points are members.
    #[test]
    fn frank_wolfe_is_sound_on_known_members(seed in any::<u64>(), atoms in 2usize..=6) {
        let mut rng = task_rng(seed, 9);
        let base = projector(&random_unit_vector(&mut rng, 4)).unwrap();
        let orbit = OrbitSpec::new(GroupAction::local(2, 2), base).unwrap();
        let weights: Vec<f64> = (0..atoms).map(|_| rng.random::<f64>() + 0.1).collect();
        let total: f64 = weights.iter().sum();
        let mut target = HermitianOperator::zeros(4);
        for w in &weights {
            let g = local(&haar_random_unitary(2, &mut rng), &haar_random_unitary(2, &mut rng));
            target = target.axpy(w / total, &orbit.point(&g));
        }
        let config = FrankWolfeConfig { dist_tol: 1e-5, max_iter: 2000, seed, ..FrankWolfeConfig::default() };
        let v = frank_wolfe_membership(&target, &orbit, &config).unwrap();
        prop_assert!(v.history.windows(2).all(|h| h[1] <= h[0] * (1.0 + 1e-12) + 1e-18));
        prop_assert!(v.witness.iter().all(|a| a.weight >= 0.0));
        prop_assert!((v.weight_sum() - 1.0).abs() <= 1e-10);
        prop_assert!(v.status != MembershipStatus::LikelyOutside, "false separation, distance {}", v.distance);
        if v.status == MembershipStatus::Inside {
            prop_assert!(v.mixture().unwrap().distance(&target) <= 1e-5 + 1e-12);
            for a in &v.witness {
                prop_assert!(orbit.point(&a.group).distance(&a.point) <= 1e-9);
            }
        }
    }

    // A separation claim must hold against sampled orbit points.
    #[test]
    fn separating_functionals_hold_on_samples(seed in any::<u64>()) {
        let mut rng = task_rng(seed, 10);
        let base = projector(&random_unit_vector(&mut rng, 4)).unwrap();
        let orbit = OrbitSpec::new(GroupAction::local(2, 2), base).unwrap();
        let target = projector(&random_unit_vector(&mut rng, 4)).unwrap().into_op();
        let config = FrankWolfeConfig { dist_tol: 1e-5, max_iter: 2000, seed, ..FrankWolfeConfig::default() };
        let v = frank_wolfe_membership(&target, &orbit, &config).unwrap();
        prop_assert!(v.history.windows(2).all(|h| h[1] <= h[0] * (1.0 + 1e-12) + 1e-18));
        if v.status == MembershipStatus::LikelyOutside {
            let f = v.separating_functional.clone().unwrap();
            let margin = v.margin.unwrap();
            let ft = frobenius_inner(&f, &target).unwrap();
            for _ in 0..500 {
                let g = local(&haar_random_unitary(2, &mut rng), &haar_random_unitary(2, &mut rng));
                let fx = frobenius_inner(&f, &orbit.point(&g)).unwrap();
                prop_assert!(ft >= fx + margin - 1e-9);
            }
        }
    }
}
