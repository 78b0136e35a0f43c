mod block_decomposition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/block_decomposition.rs"));
}

mod block_ellipsoid {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/block_ellipsoid.rs"));
}

mod channel_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/channel_report.rs"));
}

mod convex_body {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/convex_body.rs"));
}

mod haar_average {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/haar_average.rs"));
}

mod hull_membership {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hull_membership.rs"));
}

mod inscribed_ball {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/inscribed_ball.rs"));
}

mod kostant_torus {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kostant_torus.rs"));
}

mod maximal_entanglement {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/maximal_entanglement.rs"));
}

mod schmidt_decomposition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/schmidt_decomposition.rs"));
}

#[test]
fn runs_block_decomposition() {
    block_decomposition::main().unwrap();
}

#[test]
fn runs_block_ellipsoid() {
    block_ellipsoid::main().unwrap();
}

#[test]
fn runs_channel_report() {
    channel_report::main().unwrap();
}

#[test]
fn runs_convex_body() {
    convex_body::main().unwrap();
}

#[test]
fn runs_haar_average() {
    haar_average::main();
}

#[test]
fn runs_hull_membership() {
    hull_membership::main().unwrap();
}

#[test]
fn runs_inscribed_ball() {
    inscribed_ball::main().unwrap();
}

#[test]
fn runs_kostant_torus() {
    kostant_torus::main().unwrap();
}

#[test]
fn runs_maximal_entanglement() {
    maximal_entanglement::main().unwrap();
}

#[test]
fn runs_schmidt_decomposition() {
    schmidt_decomposition::main().unwrap();
}
