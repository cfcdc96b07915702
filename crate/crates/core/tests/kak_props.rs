mod common;

use std::f64::consts::FRAC_PI_4;

use common::{dressed, haar, n_oracle, random_local};
use kaksynth::kak::{kak_decompose_seeded, params_from_phases, phases_from_params, DEFAULT_SEED};
use kaksynth::linalg::{kron, random_so4, random_unitary2};
use kaksynth::synth::class_of_params;
use kaksynth::{dist_up_to_phase, Complex64, kak_decompose, local_invariant_spectrum, n_matrix, zyz_decompose};
use proptest::prelude::*;

fn in_cell(p: [f64; 3]) -> bool {
    let [a, b, g] = p;
    let e = 1e-9;
    a <= FRAC_PI_4 + e && b <= a + e && g.abs() <= b + e && b >= -e && (a < FRAC_PI_4 - e || g >= -e)
}

/// Whether the multisets `s` and `k·t` agree for some `k` in {1, i, −1, −i}.
fn same_up_to_fourth_root(s: [Complex64; 4], t: [Complex64; 4]) -> bool {
    let roots = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)];
    roots.iter().any(|k| {
        let mut used = [false; 4];
        s.iter().all(|x| {
            let hit = (0..4).find(|&j| !used[j] && (*x - k * t[j]).norm() < 1e-8);
            hit.map(|j| used[j] = true).is_some()
        })
    })
}

#[test]
fn thousand_haar_round_trips() {
    let mut worst = 0.0f64;
    for seed in 0..1000 {
        let u = haar(seed);
        let d = kak_decompose(&u).unwrap();
        assert!(in_cell(d.params()), "seed {seed}: {:?}", d.params());
        worst = worst.max(d.reconstruct().max_abs_diff(&u));
    }
    assert!(worst < 1e-9, "worst {worst:e}");
}

#[test]
fn n_matrix_matches_exponential() {
    for seed in 0..50u64 {
        let s = seed as f64;
        let (a, b, g) = ((s * 0.37).sin() * 2.0, (s * 0.53).cos() * 2.0, (s * 0.11).sin());
        assert!(n_matrix(a, b, g).max_abs_diff(&n_oracle(a, b, g)) < 1e-12);
    }
}

#[test]
fn n_matrices_commute() {
    let p = n_matrix(0.3, -0.2, 1.1);
    let q = n_matrix(-0.7, 0.4, 0.05);
    assert!((p * q).max_abs_diff(&(q * p)) < 1e-14);
    assert!((p * q).max_abs_diff(&n_matrix(-0.4, 0.2, 1.15)) < 1e-14);
}

#[test]
fn phase_parameter_round_trip() {
    for (a, b, g) in [(0.1, 0.2, 0.3), (FRAC_PI_4, 0.0, 0.0), (-0.5, 0.25, 0.7)] {
        let (x, y, z) = params_from_phases(&phases_from_params(a, b, g)).unwrap();
        assert!(n_matrix(x, y, z).max_abs_diff(&n_matrix(a, b, g)) < 1e-14);
    }
}

#[test]
fn real_special_orthogonal_inputs_have_zero_gamma() {
    for seed in 0..200 {
        let d = kak_decompose(&random_so4::<f64>(seed)).unwrap();
        assert!(d.gamma.abs() < 1e-9, "seed {seed}: {:?}", d.params());
        assert!(class_of_params(d.params()) <= 2);
    }
}

#[test]
fn pipeline_locals_have_exact_zyz_forms() {
    for seed in 0..200 {
        let d = kak_decompose(&haar(seed)).unwrap();
        for a in [d.a1, d.a2, d.a3, d.a4] {
            let z = zyz_decompose(&a).unwrap();
            assert!(z.matrix().max_abs_diff(&a) < 1e-12);
        }
    }
}

#[test]
fn seeds_agree_on_parameters() {
    for seed in 0..100 {
        let u = haar(seed);
        let p = kak_decompose_seeded(&u, DEFAULT_SEED).unwrap().params();
        let q = kak_decompose_seeded(&u, 12345).unwrap().params();
        for i in 0..3 {
            assert!((p[i] - q[i]).abs() < 1e-9, "seed {seed}: {p:?} vs {q:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parameters_are_local_invariants(u_seed in any::<u64>(), l in any::<u64>(), r in any::<u64>()) {
        let u = haar(u_seed);
        let v = random_local(l) * u * random_local(r);
        let p = kak_decompose(&u).unwrap().params();
        let q = kak_decompose(&v).unwrap().params();
        for i in 0..3 {
            prop_assert!((p[i] - q[i]).abs() < 1e-8, "{:?} vs {:?}", p, q);
        }
    }

    #[test]
    fn spectrum_is_a_local_invariant(u_seed in any::<u64>(), l in any::<u64>(), r in any::<u64>()) {
        let u = haar(u_seed);
        let v = random_local(l) * u * random_local(r);
        let s = local_invariant_spectrum(&u).unwrap();
        let t = local_invariant_spectrum(&v).unwrap();
        prop_assert!(same_up_to_fourth_root(s, t), "{:?} vs {:?}", s, t);
    }

    #[test]
    fn dressed_cell_points_are_recovered(a in 0.01f64..FRAC_PI_4 - 0.01, fb in 0.01f64..0.99, fg in 0.01f64..0.99, seed in any::<u64>()) {
        let b = a * fb;
        let g = b * fg;
        let d = kak_decompose(&dressed(a, b, g, seed)).unwrap();
        let p = d.params();
        prop_assert!((p[0] - a).abs() < 1e-8 && (p[1] - b).abs() < 1e-8 && (p[2] - g).abs() < 1e-8, "{:?} vs {:?}", p, (a, b, g));
    }

    #[test]
    fn zyz_reconstructs_any_unitary(seed in any::<u64>()) {
        let a = random_unitary2::<f64>(seed);
        let z = zyz_decompose(&a).unwrap();
        prop_assert!(z.matrix().max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn products_have_zero_parameters(a in any::<u64>(), b in any::<u64>()) {
        let d = kak_decompose(&kron(&random_unitary2::<f64>(a), &random_unitary2(b))).unwrap();
        prop_assert!(d.params().iter().all(|x| x.abs() < 1e-9));
        prop_assert!(dist_up_to_phase(&d.reconstruct(), &kron(&random_unitary2(a), &random_unitary2(b))) < 1e-9);
    }
}

#[test]
fn single_precision_round_trip() {
    for seed in 0..100 {
        let u = kaksynth::haar_random_unitary::<f32>(seed);
        let d = kak_decompose(&u).unwrap();
        assert!(d.reconstruct().max_abs_diff(&u) < 1e-4, "seed {seed}");
    }
}
