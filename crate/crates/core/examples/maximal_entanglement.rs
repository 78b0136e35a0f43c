// Maximal-entanglement verdicts from the reduced state `tr₂P_ψ`.

use convexed_orbits::bipartite::{is_maximally_entangled, BipartiteDims, BipartiteVector};

pub fn main() -> convexed_orbits::Result<()> {
    let dims = BipartiteDims::new(2, 2)?;
    for (name, psi) in [
        ("Bell", BipartiteVector::maximally_entangled(2)?),
        ("phi(0.75)", BipartiteVector::phi_lambda(0.75)?),
        ("product", BipartiteVector::phi_lambda(1.0)?),
    ] {
        let v = is_maximally_entangled(&psi.projector()?, dims, 1e-8)?;
        println!("{name:>10}: maximally entangled = {}, residual {:.3e}", v.maximally_entangled, v.residual);
    }
    let big = BipartiteVector::maximally_entangled(3)?;
    let v = is_maximally_entangled(&big.projector()?, big.dims, 1e-8)?;
    println!("3x3 maximally entangled: {}", v.maximally_entangled);
    Ok(())
}
