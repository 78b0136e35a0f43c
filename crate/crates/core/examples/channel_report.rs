// Choi matrices, stochasticity and mixed-unitary certificates near the depolarizing channel.

use convexed_orbits::channel::{
    certify_mixed_unitary_near_omega, channel_report, choi_from_kraus, depolarizing_channel, ChoiMatrix, KrausMap,
};
use convexed_orbits::hull::FrankWolfeConfig;
use convexed_orbits::operator::{ComplexMatrix, C64};

pub fn main() -> convexed_orbits::Result<()> {
    let omega = depolarizing_channel(2)?;
    let report = channel_report(&omega.choi(), None)?;
    println!(
        "depolarizing: trace preserving {}, unital {}, CP {} (min eigenvalue {:.3})",
        report.trace_preserving.holds,
        report.unital.holds,
        report.completely_positive.holds,
        report.completely_positive.min_eigenvalue
    );

    let mut amp = ComplexMatrix::zeros(2);
    amp[(0, 1)] = C64::new(1.0, 0.0);
    let decay = choi_from_kraus(&KrausMap::new(vec![amp, ComplexMatrix::diag_real(&[1.0, 0.0])])?);
    let report = channel_report(&decay, None)?;
    println!("amplitude damping: trace preserving {}, unital {}", report.trace_preserving.holds, report.unital.holds);

    // Dephasing mixed slightly into Ω stays doubly stochastic.
    let z = ComplexMatrix::diag_real(&[1.0, -1.0]);
    let dephase = choi_from_kraus(&KrausMap::mixed_unitary(&[0.5, 0.5], &[ComplexMatrix::identity(2), z])?);
    let near = ChoiMatrix::new(omega.choi().matrix().scale(0.9).add(&dephase.matrix().scale(0.1)))?;
    let config = FrankWolfeConfig { dist_tol: 1e-8, seed: 2, ..FrankWolfeConfig::default() };
    let cert = certify_mixed_unitary_near_omega(&near, &config)?;
    println!(
        "mixed-unitary certificate: {:?}, {} unitaries, residual {:?}",
        cert.status,
        cert.weights.len(),
        cert.residual
    );
    Ok(())
}
