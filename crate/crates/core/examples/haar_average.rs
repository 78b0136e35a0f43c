// Monte Carlo Haar average `∫ UXU^† dU` converging to `tr(X)·I/d`.

use convexed_orbits::channel::haar_average;
use convexed_orbits::operator::ComplexMatrix;
use convexed_orbits::random::task_rng;

pub fn main() {
    let x = ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]);
    for samples in [100, 1000, 10000] {
        let avg = haar_average(&x, samples, &mut task_rng(4, samples as u64));
        println!("{samples:>6} samples: error {:.4}", avg.error);
    }
}
