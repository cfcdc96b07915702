mod common;

use kaksynth::linalg::{
    cis, diag_symmetric_unitary, haar_random_unitary, is_unitary, kron, random_so4, random_unitary2, ComplexMat4,
};
use kaksynth::{dist_up_to_phase, Mat4};
use proptest::prelude::*;

proptest! {
    #[test]
    fn haar_samples_are_unitary(seed in any::<u64>()) {
        prop_assert!(is_unitary(&haar_random_unitary::<f64>(seed), 1e-12));
        prop_assert!(random_so4::<f64>(seed).max_imag() == 0.0);
    }

    #[test]
    fn distance_ignores_global_phase(seed in any::<u64>(), phi in -10.0f64..10.0) {
        let u = haar_random_unitary::<f64>(seed);
        prop_assert!(dist_up_to_phase(&u, &u.scale(cis(phi))) < 1e-12);
    }

    #[test]
    fn distance_is_symmetric(a in any::<u64>(), b in any::<u64>()) {
        let (u, v) = (haar_random_unitary::<f64>(a), haar_random_unitary::<f64>(b));
        prop_assert!((dist_up_to_phase(&u, &v) - dist_up_to_phase(&v, &u)).abs() < 1e-12);
    }

    #[test]
    fn kron_mixed_product(s in any::<u64>()) {
        let (a, b, c, d) = (random_unitary2::<f64>(s), random_unitary2(s ^ 1), random_unitary2(s ^ 2), random_unitary2(s ^ 3));
        let lhs = kron(&a, &b) * kron(&c, &d);
        prop_assert!(lhs.max_abs_diff(&kron(&(a * c), &(b * d))) < 1e-14);
    }

    #[test]
    fn determinant_is_multiplicative(a in any::<u64>(), b in any::<u64>()) {
        let (u, v) = (haar_random_unitary::<f64>(a), haar_random_unitary::<f64>(b));
        prop_assert!(((u * v).det() - u.det() * v.det()).norm() < 1e-12);
    }

    #[test]
    fn symmetric_unitary_diagonalizes(seed in any::<u64>()) {
        let v = haar_random_unitary::<f64>(seed);
        let w = v.transpose() * v;
        let e = diag_symmetric_unitary(&w, 1e-9).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&w) < 1e-9);
        let o = e.ortho_matrix();
        prop_assert!((o.transpose() * o).max_abs_diff(&Mat4::identity()) < 1e-12);
        prop_assert!((o.det().re - 1.0).abs() < 1e-12);
    }
}

#[test]
fn degenerate_spectra_diagonalize() {
    // Perturbation-free Clifford spectra with repeated eigenvalues.
    for u in [kaksynth::circuit::swap_matrix::<f64>(), kaksynth::circuit::cnot1_matrix(), ComplexMat4::identity()] {
        let v = kaksynth::from_magic(&u);
        let w = v.transpose() * v;
        let e = diag_symmetric_unitary(&w, 1e-9).unwrap();
        assert!(e.reconstruct().max_abs_diff(&w) < 1e-9);
    }
}
