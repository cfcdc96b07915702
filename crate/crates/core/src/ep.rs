//! Entangling power: the average linear entropy a gate produces from
//! uniformly random product states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::{cnot1_matrix, cz_matrix, ry_matrix, swap_matrix};
use crate::error::{Error, Result};
use crate::linalg::{dist_up_to_phase, kron, kron4, paulis, Complex, ComplexMat16, ComplexMat4};
use crate::magic::factor_tensor_2x2;
use crate::num::Real;

/// Normalized two-qubit pure state, first qubit most significant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVec4<T> {
    amplitudes: [Complex<T>; 4],
}

impl<T: Real> StateVec4<T> {
    pub fn new(amplitudes: [Complex<T>; 4]) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |s, x| s + x).sqrt();
        if (norm - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::NotNormalized { norm: norm.as_f64() });
        }
        Ok(Self { amplitudes })
    }

    /// `|a⟩ ⊗ |b⟩` for unit vectors `a`, `b`.
    pub fn product(a: [Complex<T>; 2], b: [Complex<T>; 2]) -> Result<Self> {
        Self::new([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    }

    pub fn amplitudes(&self) -> &[Complex<T>; 4] {
        &self.amplitudes
    }

    /// `u·|ψ⟩`, renormalization-free.
    pub fn evolve(&self, u: &ComplexMat4<T>) -> Self {
        let mut out = [Complex::new(T::zero(), T::zero()); 4];
        for (r, o) in out.iter_mut().enumerate() {
            for (s, a) in self.amplitudes.iter().enumerate() {
                *o = *o + u[(r, s)] * *a;
            }
        }
        Self { amplitudes: out }
    }

    /// Reduced density matrix of qubit `keep` (0 = first).
    pub fn reduced(&self, keep: usize) -> [[Complex<T>; 2]; 2] {
        let psi = |i: usize, k: usize| if keep == 0 { self.amplitudes[2 * i + k] } else { self.amplitudes[2 * k + i] };
        let mut rho = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in rho.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    *e = *e + psi(i, k) * psi(j, k).conj();
                }
            }
        }
        rho
    }
}

fn purity<T: Real>(rho: &[[Complex<T>; 2]; 2]) -> T {
    rho.iter().flatten().map(|z| z.norm_sqr()).fold(T::zero(), |s, x| s + x)
}

/// `1 − tr ρ²` with `ρ` the state of the first qubit. Ranges over `[0, 1/2]`.
pub fn linear_entropy<T: Real>(psi: &StateVec4<T>) -> T {
    T::one() - purity(&psi.reduced(0))
}

/// A permutation of the 16 basis states of two copies of a two-qubit system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Perm16 {
    pub image: [usize; 16],
}

impl Perm16 {
    /// `|a,b,c,d⟩ → |c,b,a,d⟩`: exchanges the first qubit of each copy.
    pub fn t13() -> Self {
        let mut image = [0; 16];
        for (i, slot) in image.iter_mut().enumerate() {
            let (a, b, c, d) = ((i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1);
            *slot = (c << 3) | (b << 2) | (a << 1) | d;
        }
        Self { image }
    }

    pub fn matrix<T: Real>(&self) -> ComplexMat16<T> {
        let mut m = ComplexMat16::zeros();
        for (i, &j) in self.image.iter().enumerate() {
            m[(j, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { image: std::array::from_fn(|i| self.image[other.image[i]]) }
    }
}

fn t13_term<T: Real>(v: &ComplexMat4<T>, t: &ComplexMat16<T>) -> Complex<T> {
    let vv = kron4(v, v);
    vv.inner(&(*t * vv * *t))
}

/// Closed-form entangling power
/// `5/9 − (1/36)·[⟨U⊗U, T U⊗U T⟩ + ⟨(SWAP·U)⊗(SWAP·U), T (SWAP·U)⊗(SWAP·U) T⟩]`
/// with `T` the first-qubit exchange between the copies and `⟨A,B⟩ = tr(A†B)`.
pub fn ep_exact<T: Real>(u: &ComplexMat4<T>) -> Result<T> {
    let dev = u.unitarity_deviation();
    if dev > T::tol(1e-10) {
        return Err(Error::NotUnitary { deviation: dev.as_f64() });
    }
    let t = Perm16::t13().matrix();
    let s = t13_term(u, &t) + t13_term(&(swap_matrix() * *u), &t);
    // Both inner products are real for unitary input.
    debug_assert!(s.im.abs() < T::tol(1e-10), "imaginary part {}", s.im);
    Ok((T::lit(20.0) - s.re) / T::lit(36.0))
}

const MC_CHUNK: usize = 4096;

/// Haar-random qubit state from a uniform point on the Bloch sphere.
fn random_qubit<T: Real, R: Rng + ?Sized>(rng: &mut R) -> [Complex<T>; 2] {
    let cos_t: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let half = cos_t.clamp(-1.0, 1.0).acos() / 2.0;
    [
        Complex::new(T::lit(half.cos()), T::zero()),
        Complex::from_polar(T::lit(half.sin()), T::lit(phi)),
    ]
}

/// Sample mean and standard error of the linear entropy of `u·(|ψ1⟩⊗|ψ2⟩)`.
///
/// Samples are drawn in fixed chunks, each from its own ChaCha stream, so the
/// result depends only on `seed` and `samples`.
///
/// # Panics
/// If `samples < 100`.
pub fn ep_monte_carlo<T: Real>(u: &ComplexMat4<T>, samples: usize, seed: u64) -> (T, T) {
    assert!(samples >= 100, "at least 100 samples required, got {samples}");
    let chunks = samples.div_ceil(MC_CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let n = MC_CHUNK.min(samples - k * MC_CHUNK);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                let a = random_qubit::<T, _>(&mut rng);
                let b = random_qubit::<T, _>(&mut rng);
                let psi = StateVec4 { amplitudes: [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]] };
                let e = linear_entropy(&psi.evolve(u)).as_f64();
                s += e;
                s2 += e * e;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = partial.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let n = samples as f64;
    let mean = s / n;
    let var = ((s2 - n * mean * mean) / (n - 1.0)).max(0.0);
    (T::lit(mean), T::lit((var / n).sqrt()))
}

/// Entangling power of `CZ·(Ry(a)⊗Ry(b))·CZ`:
/// `(3 − cos 2a − cos 2b − cos 2a·cos 2b)/18`.
pub fn case1_ep<T: Real>(a: T, b: T) -> T {
    let two = T::lit(2.0);
    let (ca, cb) = ((two * a).cos(), (two * b).cos());
    (T::lit(3.0) - ca - cb - ca * cb) / T::lit(18.0)
}

/// One zero of `case1_ep` and what it implies for a two-CNOT SWAP circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct Case1Candidate {
    pub a: f64,
    pub b: f64,
    pub ep: f64,
    /// `CZ·(Ry(a)⊗Ry(b))·CZ`.
    pub middle: ComplexMat4<f64>,
    /// Max-entry difference between `middle` and its listed closed form.
    pub listed_mismatch: f64,
    pub middle_is_product: bool,
    /// Lower bound on the distance from any tensor product to SWAP.
    pub swap_distance_bound: f64,
    /// Distance of `middle` itself from SWAP.
    pub swap_distance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwapWitness {
    /// Points of `{0, π}²` where `case1_ep` vanishes.
    pub zeros: Vec<(f64, f64)>,
    /// Whether a grid scan of `[0, 2π)²` found no other zeros.
    pub zeros_isolated: bool,
    pub candidates: Vec<Case1Candidate>,
    pub ep_swap: f64,
    pub ep_cnot: f64,
    pub case2_gap: bool,
    pub pass: bool,
}

/// Replays the computational steps showing SWAP needs three CNOTs.
///
/// A two-CNOT circuit is locally equivalent to `CZ·(Ry(a)⊗Ry(b))·CZ` (case 1) or
/// has the entangling power of a single CNOT (case 2). SWAP has entangling
/// power 0, so case 1 forces `case1_ep(a, b) = 0`, and every such middle gate
/// is a tensor product; case 2 contradicts `EP(SWAP) ≠ EP(CNOT)`.
pub fn swap_lower_bound_witness() -> SwapWitness {
    use std::f64::consts::PI;
    let tol = 1e-12;

    let mut zeros = Vec::new();
    for a in [0.0, PI] {
        for b in [0.0, PI] {
            if case1_ep(a, b).abs() < tol {
                zeros.push((a, b));
            }
        }
    }

    let steps = 360;
    let near_grid = |x: f64| {
        let r = x.rem_euclid(PI);
        r < 1e-9 || PI - r < 1e-9
    };
    let zeros_isolated = (0..steps).all(|i| {
        (0..steps).all(|j| {
            let (a, b) = (2.0 * PI * i as f64 / steps as f64, 2.0 * PI * j as f64 / steps as f64);
            case1_ep(a, b) > 1e-9 || (near_grid(a) && near_grid(b))
        })
    });

    let (x, z) = (paulis::x::<f64>(), paulis::z::<f64>());
    let listed = |a: f64, b: f64| -> ComplexMat4<f64> {
        match (a == 0.0, b == 0.0) {
            (true, true) => ComplexMat4::identity(),
            (true, false) => kron(&z, &ry_matrix(PI)),
            (false, true) => kron(&ry_matrix(PI), &z),
            (false, false) => kron(&x, &x).scale_real(-1.0),
        }
    };

    let cz = cz_matrix::<f64>();
    let swap = swap_matrix::<f64>();
    let candidates: Vec<Case1Candidate> = zeros
        .iter()
        .map(|&(a, b)| {
            let middle = cz * kron(&ry_matrix(a), &ry_matrix(b)) * cz;
            let listed_mismatch = middle.max_abs_diff(&listed(a, b));
            let factors = factor_tensor_2x2(&middle, 1e-8);
            let middle_is_product = factors.is_ok();
            // Any product P = A⊗B of unitaries: ‖P − e^{iφ}·SWAP‖² = 8 − 2·Re(e^{−iφ}·tr(AB)),
            // and |tr(AB)| ≤ ‖A‖·‖B‖ = 2. Outer local gates keep the total a product.
            let swap_distance_bound = match &factors {
                Ok(f) => (8.0 - 2.0 * f.a.frobenius() * f.b.frobenius()).max(0.0).sqrt(),
                Err(_) => 0.0,
            };
            let swap_distance = dist_up_to_phase(&middle, &swap);
            let pass = listed_mismatch < 1e-12 && middle_is_product && swap_distance_bound > 0.5 && swap_distance > 0.5;
            Case1Candidate {
                a,
                b,
                ep: case1_ep(a, b),
                middle,
                listed_mismatch,
                middle_is_product,
                swap_distance_bound,
                swap_distance,
                pass,
            }
        })
        .collect();

    let ep_swap = ep_exact(&swap).unwrap_or(f64::NAN);
    let ep_cnot = ep_exact(&cnot1_matrix::<f64>()).unwrap_or(f64::NAN);
    let case2_gap = (ep_cnot - ep_swap).abs() > 1e-3;
    let pass = zeros.len() == 4 && zeros_isolated && candidates.iter().all(|c| c.pass) && case2_gap;
    SwapWitness { zeros, zeros_isolated, candidates, ep_swap, ep_cnot, case2_gap, pass }
}
