//! Seeded random matrix generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{CMat, Complex, ComplexMat2, ComplexMat4};
use crate::num::Real;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

/// Modified Gram–Schmidt on the columns, run twice. This equals the Q factor
/// of a QR decomposition whose R has a positive real diagonal.
fn orthonormalize_columns<T: Real, const N: usize>(m: &mut CMat<T, N>) {
    for _pass in 0..2 {
        for j in 0..N {
            for k in 0..j {
                let mut proj = Complex::new(T::zero(), T::zero());
                for i in 0..N {
                    proj = proj + m.entries[i][k].conj() * m.entries[i][j];
                }
                for i in 0..N {
                    let v = m.entries[i][k];
                    m.entries[i][j] = m.entries[i][j] - proj * v;
                }
            }
            let norm = (0..N).fold(T::zero(), |acc, i| acc + m.entries[i][j].norm_sqr()).sqrt();
            for i in 0..N {
                m.entries[i][j] = m.entries[i][j] / norm;
            }
        }
    }
}

/// Haar-distributed `N × N` unitary via QR of a complex Gaussian matrix.
pub fn haar_unitary_from_rng<T: Real, const N: usize, R: Rng + ?Sized>(rng: &mut R) -> CMat<T, N> {
    let half = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let mut m = CMat::<T, N>::from_fn(|_, _| Complex::new(normal::<T, R>(rng) * half, normal::<T, R>(rng) * half));
    orthonormalize_columns(&mut m);
    m
}

/// Haar-distributed real orthogonal `N × N` matrix (either determinant).
pub fn orthogonal_from_rng<T: Real, const N: usize, R: Rng + ?Sized>(rng: &mut R) -> CMat<T, N> {
    let mut m = CMat::<T, N>::from_fn(|_, _| Complex::new(normal::<T, R>(rng), T::zero()));
    orthonormalize_columns(&mut m);
    m
}

pub fn haar_random_unitary<T: Real>(seed: u64) -> ComplexMat4<T> {
    haar_unitary_from_rng(&mut seeded_rng(seed))
}

pub fn random_unitary2<T: Real>(seed: u64) -> ComplexMat2<T> {
    haar_unitary_from_rng(&mut seeded_rng(seed))
}

/// Haar-random element of SU(2).
pub fn random_su2<T: Real>(seed: u64) -> ComplexMat2<T> {
    let u: ComplexMat2<T> = random_unitary2(seed);
    u.scale(u.det().sqrt().inv())
}

/// Haar-random element of SO(4): an O(4) sample with its first column negated
/// when the determinant is −1.
pub fn random_so4<T: Real>(seed: u64) -> ComplexMat4<T> {
    let mut m: ComplexMat4<T> = orthogonal_from_rng(&mut seeded_rng(seed));
    if m.det().re < T::zero() {
        for i in 0..4 {
            m.entries[i][0] = -m.entries[i][0];
        }
    }
    m
}
