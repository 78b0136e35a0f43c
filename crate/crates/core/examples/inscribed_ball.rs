// Inscribed balls: the density body in closed form and a convexed local orbit by probing.

use convexed_orbits::bipartite::BipartiteVector;
use convexed_orbits::hull::{
    inscribed_ball_density_states, inscribed_radius_estimate, r_lambda_upper_bound, BallConfig, OrbitSpec,
};
use convexed_orbits::operator::DensityState;
use convexed_orbits::orbit::GroupAction;

pub fn main() -> convexed_orbits::Result<()> {
    for d in [2, 3, 4, 6] {
        let ball = inscribed_ball_density_states(d)?;
        println!("D(C^{d}): radius {:.7}", ball.radius_upper);
    }

    let lambda_sq = 0.75;
    let orbit = OrbitSpec::new(GroupAction::local(2, 2), BipartiteVector::phi_lambda(lambda_sq)?.projector()?)?;
    let config = BallConfig { directions: 2, refine_iters: 10, seed: 5, ..BallConfig::default() };
    let est = inscribed_radius_estimate(&orbit, &DensityState::maximally_mixed(4), &config)?;
    println!(
        "C(lambda^2 = {lambda_sq}): radius in [{:.4}, {:.4}], bound min(lambda^2 - 1/2, 1/sqrt 12) = {:.4}",
        est.radius_lower,
        est.radius_upper,
        r_lambda_upper_bound(lambda_sq)?
    );
    Ok(())
}
