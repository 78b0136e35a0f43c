// Frank–Wolfe membership certificates for convexed local orbits.

use convexed_orbits::bipartite::BipartiteVector;
use convexed_orbits::hull::{frank_wolfe_membership, FrankWolfeConfig, OrbitSpec};
use convexed_orbits::operator::{projector, HermitianOperator, C64};
use convexed_orbits::orbit::GroupAction;
use convexed_orbits::random::{random_unit_vector, task_rng};

pub fn main() -> convexed_orbits::Result<()> {
    let config = FrankWolfeConfig { dist_tol: 1e-6, seed: 3, ..FrankWolfeConfig::default() };
    let center = HermitianOperator::maximally_mixed(4);

    let bell = OrbitSpec::new(GroupAction::local(2, 2), BipartiteVector::maximally_entangled(2)?.projector()?)?;
    let v = frank_wolfe_membership(&center, &bell, &config)?;
    println!("I/4 in Conv(K.Bell): {:?}, {} atoms, distance {:.2e}", v.status, v.witness.len(), v.distance);

    let e = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let product = BipartiteVector::product(&e, &e)?.projector()?;
    let v = frank_wolfe_membership(product.op(), &bell, &config)?;
    println!("product state in Conv(K.Bell): {:?}, margin {:?}, heuristic {}", v.status, v.margin, v.heuristic);

    let psi = random_unit_vector(&mut task_rng(3, 0), 4);
    let orbit = OrbitSpec::new(GroupAction::local(2, 2), projector(&psi)?)?;
    let v = frank_wolfe_membership(&center, &orbit, &config)?;
    let err = v.mixture().map(|m| m.distance(&center));
    println!("I/4 in Conv(K.P_psi), random psi: {:?}, reconstruction error {err:?}", v.status);
    for atom in v.witness.iter().take(3) {
        println!("  weight {:.4}", atom.weight);
    }
    Ok(())
}
