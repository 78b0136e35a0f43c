// Block decomposition `P_ψ − 𝕀 = 𝕀₁⊗p10 + p01⊗𝕀₂ + p00`.

use convexed_orbits::bipartite::{decompose_projection_psi, BipartiteVector};

pub fn main() -> convexed_orbits::Result<()> {
    for lambda_sq in [0.5, 0.6, 0.75, 0.9] {
        let phi = BipartiteVector::phi_lambda(lambda_sq)?;
        let blocks = decompose_projection_psi(&phi.amplitudes, phi.dims)?;
        let n = blocks.norms();
        println!(
            "lambda^2 = {lambda_sq}: block10 {:.6} (lambda^2 - 1/2 = {:.6}), block01 {:.6}, block00 {:.6}",
            n.block10,
            lambda_sq - 0.5,
            n.block01,
            n.block00
        );
    }
    Ok(())
}
