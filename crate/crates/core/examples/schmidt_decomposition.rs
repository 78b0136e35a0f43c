// Schmidt decomposition of a few bipartite vectors.

use convexed_orbits::bipartite::{schmidt_decompose, BipartiteDims, BipartiteVector, SCHMIDT_TOL};
use convexed_orbits::operator::C64;
use convexed_orbits::random::{random_unit_vector, task_rng};

pub fn main() -> convexed_orbits::Result<()> {
    let dims = BipartiteDims::new(2, 3)?;
    let mut rng = task_rng(11, 0);
    let psi = random_unit_vector(&mut rng, dims.total());
    let dec = schmidt_decompose(&psi, dims, SCHMIDT_TOL)?;
    println!("random 2x3 vector: rank {}, coefficients {:?}", dec.rank, dec.coefficients);
    let err: f64 = dec.reconstruct().iter().zip(&psi).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    println!("reconstruction error {err:.2e}");

    let e = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let product = BipartiteVector::product(&e, &e)?;
    println!("product vector: rank {}", schmidt_decompose(&product.amplitudes, product.dims, SCHMIDT_TOL)?.rank);

    for lambda_sq in [0.5, 0.75, 1.0] {
        let phi = BipartiteVector::phi_lambda(lambda_sq)?;
        let dec = schmidt_decompose(&phi.amplitudes, phi.dims, SCHMIDT_TOL)?;
        println!("phi(lambda^2 = {lambda_sq}): coefficients {:?}", dec.coefficients);
    }
    Ok(())
}
