mod common;

use common::{haar, random_local};
use kaksynth::circuit::{cnot1_matrix, cz_matrix, ry_matrix, swap_matrix};
use kaksynth::ep::StateVec4;
use kaksynth::linalg::{kron, random_unitary2};
use kaksynth::{case1_ep, ep_exact, ep_monte_carlo, linear_entropy, Complex64};
use proptest::prelude::*;

fn ket(seed: u64) -> [Complex64; 2] {
    let u = random_unitary2::<f64>(seed);
    [u[(0, 0)], u[(1, 0)]]
}

#[test]
fn range_over_haar_inputs() {
    for seed in 0..500 {
        let e = ep_exact(&haar(seed)).unwrap();
        assert!((-1e-12..=2.0 / 9.0 + 1e-12).contains(&e), "seed {seed}: {e}");
    }
}

#[test]
fn reference_values() {
    assert!((ep_exact(&cnot1_matrix::<f64>()).unwrap() - 2.0 / 9.0).abs() < 1e-14);
    assert!(ep_exact(&swap_matrix::<f64>()).unwrap().abs() < 1e-14);
    assert!(ep_exact(&random_local(4)).unwrap().abs() < 1e-14);
}

#[test]
fn closed_form_on_cz_family() {
    for (a, b) in [(0.1f64, 0.2), (0.5, 0.0), (0.3, 0.3), (0.785, 0.1)] {
        let cz = cz_matrix::<f64>();
        let u = cz * kron(&ry_matrix(a), &ry_matrix(b)) * cz;
        assert!((ep_exact(&u).unwrap() - case1_ep(a, b)).abs() < 1e-12);
    }
}

#[test]
fn sampling_agrees_with_exact_value() {
    for seed in 0..5 {
        let u = haar(seed);
        let (mean, se) = ep_monte_carlo(&u, 40_000, seed);
        let exact = ep_exact(&u).unwrap();
        assert!((mean - exact).abs() < 5.0 * se, "seed {seed}: {mean} ± {se} vs {exact}");
    }
}

#[test]
fn entropy_of_bell_state() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let bell = StateVec4::new([Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)]).unwrap();
    assert!((linear_entropy(&bell) - 0.5).abs() < 1e-15);
    assert!(StateVec4::new([Complex64::new(1.0, 0.0), z, z, Complex64::new(0.1, 0.0)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn invariant_under_locals_and_inverse(u in any::<u64>(), l in any::<u64>(), r in any::<u64>()) {
        let g = haar(u);
        let e = ep_exact(&g).unwrap();
        prop_assert!((ep_exact(&(random_local(l) * g * random_local(r))).unwrap() - e).abs() < 1e-12);
        prop_assert!((ep_exact(&g.adjoint()).unwrap() - e).abs() < 1e-12);
    }

    #[test]
    fn entropy_invariant_under_locals(a in any::<u64>(), b in any::<u64>(), u in any::<u64>(), l in any::<u64>()) {
        let psi = StateVec4::product(ket(a), ket(b)).unwrap().evolve(&haar(u));
        prop_assert!(linear_entropy(&psi) >= -1e-15 && linear_entropy(&psi) <= 0.5 + 1e-12);
        let moved = psi.evolve(&kron(&random_unitary2(l), &random_unitary2(l ^ 1)));
        prop_assert!((linear_entropy(&moved) - linear_entropy(&psi)).abs() < 1e-12);
    }

    #[test]
    fn products_stay_unentangled(a in any::<u64>(), b in any::<u64>(), l in any::<u64>()) {
        let psi = StateVec4::product(ket(a), ket(b)).unwrap().evolve(&random_local(l));
        prop_assert!(linear_entropy(&psi).abs() < 1e-12);
    }
}
