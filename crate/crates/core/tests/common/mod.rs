//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use kaksynth::circuit::cnot1_matrix;
use kaksynth::linalg::{kron, paulis, random_unitary2, seeded_rng, haar_unitary_from_rng, ComplexMat2, ComplexMat4};
use kaksynth::{n_matrix, Complex64, Mat2, Mat4};
use rand::Rng;

/// `exp(m)` by scaling and squaring with a degree-24 Taylor series.
pub fn expm(m: &Mat4) -> Mat4 {
    let norm = m.frobenius();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = m.scale_real(scale);
    let mut term = Mat4::identity();
    let mut sum = Mat4::identity();
    for k in 1..=24 {
        term = (term * a).scale_real(1.0 / k as f64);
        sum = sum + term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `exp(i(α·XX + β·YY + γ·ZZ))` through [`expm`].
pub fn n_oracle(alpha: f64, beta: f64, gamma: f64) -> Mat4 {
    let (x, y, z) = (paulis::x::<f64>(), paulis::y::<f64>(), paulis::z::<f64>());
    let h = kron(&x, &x).scale_real(alpha) + kron(&y, &y).scale_real(beta) + kron(&z, &z).scale_real(gamma);
    expm(&h.scale(Complex64::new(0.0, 1.0)))
}

pub fn random_local(seed: u64) -> Mat4 {
    kron(&random_unitary2(seed.wrapping_mul(2)), &random_unitary2(seed.wrapping_mul(2).wrapping_add(1)))
}

/// `(A⊗B)·N(α,β,γ)·(C⊗D)` with random locals.
pub fn dressed(alpha: f64, beta: f64, gamma: f64, seed: u64) -> Mat4 {
    random_local(seed.wrapping_mul(7).wrapping_add(1)) * n_matrix(alpha, beta, gamma) * random_local(seed.wrapping_mul(7).wrapping_add(2))
}

/// A random gate whose canonical parameters put it in CNOT class `class`.
///
/// Class 2 draws `π/4 > α > β > 0` and class 3 draws `α > β > γ > 0`, each
/// parameter kept at least 0.2 away from the points where the class drops.
pub fn random_of_class(class: u8, seed: u64) -> Mat4 {
    let mut rng = seeded_rng(seed ^ 0xc1a5_5000);
    let q = std::f64::consts::FRAC_PI_4;
    match class {
        0 => random_local(seed),
        1 => dressed(q, 0.0, 0.0, seed),
        2 => {
            let a = rng.random_range(0.3..q - 0.05);
            let b = rng.random_range(0.2..a);
            dressed(a, b, 0.0, seed)
        }
        _ => {
            let a = rng.random_range(0.4..q);
            let b = rng.random_range(0.3..a);
            let g = rng.random_range(0.2..b);
            dressed(a, b, g, seed)
        }
    }
}

pub fn haar(seed: u64) -> Mat4 {
    haar_unitary_from_rng(&mut seeded_rng(seed))
}

/// Unitary factor of the polar decomposition of a 2×2 matrix.
fn polar_unitary(m: &Mat2) -> Mat2 {
    let det = m.det();
    let phase = if det.norm() > 0.0 { det / det.norm() } else { Complex64::new(1.0, 0.0) };
    let adj = ComplexMat2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]);
    let cand = *m + adj.adjoint().scale(phase);
    let n = cand.frobenius();
    if n < 1e-300 {
        return Mat2::identity();
    }
    cand.scale_real(std::f64::consts::SQRT_2 / n)
}

/// `tr_2` (`keep0 = true`) or `tr_1` of a 4×4 matrix.
fn partial_trace(m: &Mat4, keep0: bool) -> Mat2 {
    Mat2::from_fn(|i, j| {
        (0..2)
            .map(|k| if keep0 { m[(2 * i + k, 2 * j + k)] } else { m[(2 * k + i, 2 * k + j)] })
            .fold(Complex64::new(0.0, 0.0), |s, x| s + x)
    })
}

/// Best residual of the `k`-CNOT template `L_k·CNOT1·…·CNOT1·L_0` against `u`,
/// with `L_j = A_j⊗B_j` arbitrary one-qubit unitaries.
///
/// Each restart begins from random locals and sweeps over the 2(k+1) factors,
/// replacing each by the unitary maximizing `|tr(u†·V)|` with the others held
/// fixed (the polar factor of its environment). The residual reported is
/// `min_φ ‖u − e^{iφ}V‖_F = sqrt(8 − 2|tr(u†V)|)`.
pub fn template_fit(u: &Mat4, k: usize, restarts: usize, seed: u64) -> f64 {
    let mut rng = seeded_rng(seed);
    let cx = cnot1_matrix::<f64>();
    let ud = u.adjoint();
    let mut best = f64::INFINITY;
    for _ in 0..restarts {
        let mut a: Vec<Mat2> = (0..=k).map(|_| random_unitary2(rng.random())).collect();
        let mut b: Vec<Mat2> = (0..=k).map(|_| random_unitary2(rng.random())).collect();
        let mut last = 0.0;
        for _sweep in 0..300 {
            for j in 0..=k {
                for side in 0..2 {
                    // V = P·(A_j⊗B_j)·Q; tr(u†V) = tr((A_j⊗B_j)·Q·u†·P).
                    let mut p = Mat4::identity();
                    for l in (j + 1..=k).rev() {
                        p = p * kron(&a[l], &b[l]) * cx;
                    }
                    let mut q = Mat4::identity();
                    for l in 0..j {
                        q = cx * kron(&a[l], &b[l]) * q;
                    }
                    let env = q * ud * p;
                    if side == 0 {
                        let e = kron(&Mat2::identity(), &b[j]) * env;
                        a[j] = polar_unitary(&partial_trace(&e, true)).adjoint();
                    } else {
                        let e = kron(&a[j], &Mat2::identity()) * env;
                        b[j] = polar_unitary(&partial_trace(&e, false)).adjoint();
                    }
                }
            }
            let v = template(&a, &b);
            let overlap = u.inner(&v).norm().min(4.0);
            if (overlap - last).abs() < 1e-13 {
                last = overlap;
                break;
            }
            last = overlap;
        }
        let residual = (8.0 - 2.0 * last).max(0.0).sqrt();
        best = best.min(residual);
        if best < 1e-7 {
            break;
        }
    }
    best
}

fn template(a: &[Mat2], b: &[Mat2]) -> Mat4 {
    let cx = cnot1_matrix::<f64>();
    let mut v = kron(&a[0], &b[0]);
    for l in 1..a.len() {
        v = kron(&a[l], &b[l]) * cx * v;
    }
    v
}

pub fn approx(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn unit() -> ComplexMat4<f64> {
    ComplexMat4::identity()
}

/// Random real orthogonal matrix with determinant −1.
pub fn random_o4_neg(seed: u64) -> Mat4 {
    let mut o = kaksynth::linalg::random_so4::<f64>(seed);
    for r in 0..4 {
        o[(r, 3)] = -o[(r, 3)];
    }
    o
}

/// Random circuit of `len` gates drawn from every gate kind. Angles are
/// sometimes exact multiples of π/2 so the rewrite rules get exercised.
pub fn random_circuit(len: usize, seed: u64) -> kaksynth::Circuit {
    use kaksynth::{Gate, Qubit};
    let mut rng = seeded_rng(seed);
    let mut gates = Vec::with_capacity(len);
    for _ in 0..len {
        let q = if rng.random_bool(0.5) { Qubit::Q0 } else { Qubit::Q1 };
        let angle = match rng.random_range(0..4) {
            0 => 0.0,
            1 => std::f64::consts::FRAC_PI_2 * rng.random_range(-4..=4) as f64,
            _ => rng.random_range(-7.0..7.0),
        };
        let g = match rng.random_range(0..12) {
            0 => Gate::Ry(q, angle),
            1 => Gate::Rz(q, angle),
            2 => Gate::H(q),
            3 => Gate::S(q),
            4 => Gate::Sdg(q),
            5 => Gate::X(q),
            6 => Gate::Y(q),
            7 => Gate::Z(q),
            8 => Gate::Cnot1,
            9 => Gate::Cnot2,
            10 => Gate::Cz,
            _ => Gate::Swap,
        };
        gates.push(g);
    }
    kaksynth::Circuit::from_gates(gates, rng.random_range(-3.0..3.0))
}

/// Writes `m` as a matrix file under `dir` and returns its path.
pub fn write_matrix(dir: &std::path::Path, name: &str, m: &Mat4) -> std::path::PathBuf {
    let path = dir.join(name);
    let json = serde_json::to_string(&kaksynth::cli::MatrixFile::from_matrix(m)).unwrap();
    std::fs::write(&path, json).unwrap();
    path
}

/// Runs the built binary and returns (exit code, stdout, stderr).
pub fn run_bin(args: &[&std::ffi::OsStr]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_kaksynth")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}
