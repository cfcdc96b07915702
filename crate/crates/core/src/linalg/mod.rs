//! Fixed-size dense complex matrices.
//!
//! Basis order for two qubits is `|00⟩, |01⟩, |10⟩, |11⟩` with the first (top)
//! qubit most significant, so `kron(a, b)` puts `a` on qubit 0.

mod eigen;
mod random;

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex;

pub use eigen::{diag_symmetric_unitary, diag_symmetric_unitary_seeded, jacobi_eigen, SymEigResult};
pub use random::{
    haar_random_unitary, haar_unitary_from_rng, orthogonal_from_rng, random_so4, random_su2,
    random_unitary2, seeded_rng,
};

use crate::num::Real;

/// Dense `N × N` complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<T, const N: usize> {
    pub entries: [[Complex<T>; N]; N],
}

pub type ComplexMat2<T> = CMat<T, 2>;
pub type ComplexMat4<T> = CMat<T, 4>;
pub type ComplexMat16<T> = CMat<T, 16>;

/// Builds a complex number, rejecting NaN and infinite parts.
pub fn try_complex<T: Real>(re: T, im: T) -> Option<Complex<T>> {
    (re.is_finite() && im.is_finite()).then(|| Complex::new(re, im))
}

#[inline]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

impl<T: Real, const N: usize> CMat<T, N> {
    pub fn zeros() -> Self {
        Self { entries: [[Complex::new(T::zero(), T::zero()); N]; N] }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { Complex::new(T::one(), T::zero()) } else { Complex::new(T::zero(), T::zero()) })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_diag(d: [Complex<T>; N]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in d.into_iter().enumerate() {
            m.entries[i][i] = v;
        }
        m
    }

    pub fn from_real(rows: [[T; N]; N]) -> Self {
        Self::from_fn(|i, j| Complex::new(rows[i][j], T::zero()))
    }

    /// Real and imaginary parts as separate row-major arrays.
    pub fn from_parts(re: [[T; N]; N], im: [[T; N]; N]) -> Self {
        Self::from_fn(|i, j| Complex::new(re[i][j], im[i][j]))
    }

    pub fn re(&self) -> [[T; N]; N] {
        let mut out = [[T::zero(); N]; N];
        for i in 0..N {
            for j in 0..N {
                out[i][j] = self.entries[i][j].re;
            }
        }
        out
    }

    pub fn im(&self) -> [[T; N]; N] {
        let mut out = [[T::zero(); N]; N];
        for i in 0..N {
            for j in 0..N {
                out[i][j] = self.entries[i][j].im;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N).fold(Complex::new(T::zero(), T::zero()), |acc, i| acc + self.entries[i][i])
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] * s)
    }

    pub fn frobenius_sqr(&self) -> T {
        self.entries.iter().flatten().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn frobenius(&self) -> T {
        self.frobenius_sqr().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.entries.iter().flatten().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    pub fn max_imag(&self) -> T {
        self.entries.iter().flatten().fold(T::zero(), |acc, z| acc.max(z.im.abs()))
    }

    pub fn is_real(&self, tol: T) -> bool {
        self.max_imag() <= tol
    }

    /// `max |M†M − I|`.
    pub fn unitarity_deviation(&self) -> T {
        (self.adjoint() * *self - Self::identity()).max_abs()
    }

    /// Hilbert–Schmidt inner product `tr(A†B)`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..N {
            for j in 0..N {
                acc = acc + self.entries[i][j].conj() * other.entries[i][j];
            }
        }
        acc
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex<T> {
        let mut a = self.entries;
        let mut det = Complex::new(T::one(), T::zero());
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&x, &y| a[x][col].norm().partial_cmp(&a[y][col].norm()).unwrap_or(std::cmp::Ordering::Equal))
                .unwrap_or(col);
            if a[pivot][col].norm() == T::zero() {
                return Complex::new(T::zero(), T::zero());
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col];
            det = det * p;
            for row in col + 1..N {
                let f = a[row][col] / p;
                for k in col..N {
                    let v = a[col][k];
                    a[row][k] = a[row][k] - f * v;
                }
            }
        }
        det
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T: Real, const N: usize> Index<(usize, usize)> for CMat<T, N> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.entries[i][j]
    }
}

impl<T: Real, const N: usize> IndexMut<(usize, usize)> for CMat<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.entries[i][j]
    }
}

impl<T: Real, const N: usize> Mul for CMat<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..N {
                    out.entries[i][j] = out.entries[i][j] + a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

impl<T: Real, const N: usize> Add for CMat<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] + rhs.entries[i][j])
    }
}

impl<T: Real, const N: usize> Sub for CMat<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] - rhs.entries[i][j])
    }
}

impl<T: Real, const N: usize> Neg for CMat<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.entries[i][j])
    }
}

impl<T: Real> ComplexMat2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Self { entries: [[a, b], [c, d]] }
    }
}

/// Kronecker product; `a` acts on the first (most significant) qubit.
pub fn kron<T: Real>(a: &ComplexMat2<T>, b: &ComplexMat2<T>) -> ComplexMat4<T> {
    ComplexMat4::from_fn(|r, s| a.entries[r >> 1][s >> 1] * b.entries[r & 1][s & 1])
}

/// Kronecker product of two 4×4 matrices (used by the entangling-power formula).
pub fn kron4<T: Real>(a: &ComplexMat4<T>, b: &ComplexMat4<T>) -> ComplexMat16<T> {
    ComplexMat16::from_fn(|r, s| a.entries[r >> 2][s >> 2] * b.entries[r & 3][s & 3])
}

/// True iff `max |M†M − I| ≤ tol`.
pub fn is_unitary<T: Real, const N: usize>(m: &CMat<T, N>, tol: T) -> bool {
    m.unitarity_deviation() <= tol
}

/// `min_φ ‖u − e^{iφ} v‖_F`.
///
/// The minimizing phase is `arg tr(v†u)`, giving
/// `sqrt(‖u‖² + ‖v‖² − 2|tr(u†v)|)`; the norm is evaluated directly at that
/// phase because the expanded form cancels catastrophically near zero.
pub fn dist_up_to_phase<T: Real, const N: usize>(u: &CMat<T, N>, v: &CMat<T, N>) -> T {
    let overlap = v.inner(u);
    let phase = if overlap.norm() > T::zero() { overlap / overlap.norm() } else { Complex::new(T::one(), T::zero()) };
    (*u - v.scale(phase)).frobenius()
}

/// Pauli matrices and the fixed one-qubit gates.
pub mod paulis {
    use super::{c, ComplexMat2};
    use crate::num::Real;

    pub fn id<T: Real>() -> ComplexMat2<T> {
        ComplexMat2::identity()
    }

    pub fn x<T: Real>() -> ComplexMat2<T> {
        ComplexMat2::new(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.))
    }

    pub fn y<T: Real>() -> ComplexMat2<T> {
        ComplexMat2::new(c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.))
    }

    pub fn z<T: Real>() -> ComplexMat2<T> {
        ComplexMat2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.))
    }

    pub fn h<T: Real>() -> ComplexMat2<T> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMat2::new(c(r, 0.), c(r, 0.), c(r, 0.), c(-r, 0.))
    }

    pub fn s<T: Real>() -> ComplexMat2<T> {
        ComplexMat2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.))
    }

    pub fn sdg<T: Real>() -> ComplexMat2<T> {
        ComplexMat2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(0., -1.))
    }
}
