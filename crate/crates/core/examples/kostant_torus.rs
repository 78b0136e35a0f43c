// Torus fixed-point check on permutation orbits of spectra.

use convexed_orbits::orbit::torus_check_spectrum;

pub fn main() -> convexed_orbits::Result<()> {
    for spectrum in [vec![0.5, 0.3, 0.2], vec![0.5, 0.25, 0.25], vec![1.0 / 3.0; 3], vec![0.4, 0.3, 0.2, 0.1]] {
        let check = torus_check_spectrum(&spectrum)?;
        println!(
            "{spectrum:?}: {} distinct permutations span {} dims, passes = {}",
            check.vertex_projections.len(),
            check.span_dim,
            check.passes
        );
    }
    Ok(())
}
