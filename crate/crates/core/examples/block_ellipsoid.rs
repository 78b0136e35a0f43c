// Sampled containment of the block ellipsoid E(λ) in C(λ) and the volume ratio.

use convexed_orbits::hull::{block_ellipsoid_membership_test, r_lambda_upper_bound, FrankWolfeConfig, R0};

pub fn main() -> convexed_orbits::Result<()> {
    let config = FrankWolfeConfig { dist_tol: 1e-4, seed: 8, ..FrankWolfeConfig::default() };
    let lambda_sq = 0.75;
    let r = r_lambda_upper_bound(lambda_sq)?;
    let report = block_ellipsoid_membership_test(lambda_sq, r, R0, 10, &config)?;
    println!(
        "lambda^2 = {lambda_sq}: {}/{} boundary points inside, (R/r0)^9 = {:.4e}",
        report.inside, report.samples, report.volume_ratio
    );
    for lambda_sq in [0.9, 0.75, 0.6, 0.55, 0.51] {
        let r = r_lambda_upper_bound(lambda_sq)?;
        println!("  lambda^2 = {lambda_sq}: (R/r0)^9 <= {:.3e}", (r / R0).powi(9));
    }
    Ok(())
}
