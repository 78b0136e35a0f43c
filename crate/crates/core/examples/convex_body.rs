// Which convexed orbits have non-empty interior in the unit-trace slice.

use convexed_orbits::bipartite::{BipartiteDims, BipartiteVector};
use convexed_orbits::operator::{HermitianOperator, C64};
use convexed_orbits::orbit::{is_convex_body, is_convex_body_by_blocks, GroupAction};

pub fn main() -> convexed_orbits::Result<()> {
    let qubit = HermitianOperator::diag(&[1.0, 0.0]);
    let v = is_convex_body(&GroupAction::full(2), &qubit)?;
    println!("qubit pure state, U(2): body = {}, closure {:?}/{}", v.is_body, v.closure_dim, v.ambient_dim);

    let local = GroupAction::local(2, 2);
    let bell = BipartiteVector::maximally_entangled(2)?.projector()?;
    let v = is_convex_body(&local, bell.op())?;
    println!("Bell state, U(2)xU(2): body = {}, closure {:?}/{}", v.is_body, v.closure_dim, v.ambient_dim);

    let e = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let product = BipartiteVector::product(&e, &e)?.projector()?;
    let v = is_convex_body(&local, product.op())?;
    println!("product state: body = {}, closure {:?}/{}", v.is_body, v.closure_dim, v.ambient_dim);

    let phi = BipartiteVector::phi_lambda(0.75)?.projector()?;
    let v = is_convex_body_by_blocks(phi.op(), BipartiteDims::new(2, 2)?)?;
    println!("phi(0.75) by block norms: body = {}, norms {:?}", v.is_body, v.block_norms);
    Ok(())
}
