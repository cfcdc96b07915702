use rand::Rng;

use super::{cis, seeded_rng, ComplexMat4};
use crate::error::{Error, Result};
use crate::num::Real;

/// Cyclic Jacobi eigen-decomposition of a real symmetric matrix.
///
/// Returns eigenvalues and an orthogonal matrix whose columns are the
/// corresponding eigenvectors, or `None` if the sweep limit is hit.
pub fn jacobi_eigen<T: Real, const N: usize>(a: [[T; N]; N]) -> Option<([T; N], [[T; N]; N])> {
    let mut a = a;
    let mut v = [[T::zero(); N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let scale = a.iter().flatten().fold(T::zero(), |acc, x| acc + *x * *x).sqrt();
    if scale == T::zero() {
        return Some(([T::zero(); N], v));
    }
    let eps = T::epsilon() * scale;
    let two = T::one() + T::one();

    for _sweep in 0..64 {
        let off = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[i][j] * a[i][j])
            .sqrt();
        if off <= eps {
            let mut w = [T::zero(); N];
            for i in 0..N {
                w[i] = a[i][i];
            }
            return Some((w, v));
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[p][q];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let cs = T::one() / (t * t + T::one()).sqrt();
                let sn = t * cs;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = cs * akp - sn * akq;
                    a[k][q] = sn * akp + cs * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = cs * apk - sn * aqk;
                    a[q][k] = sn * apk + cs * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = cs * vp - sn * vq;
                    row[q] = sn * vp + cs * vq;
                }
            }
        }
    }
    None
}

/// `w = O · diag(e^{2iθ_k}) · Oᵀ` with `O` real orthogonal, `det O = +1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymEigResult<T> {
    pub ortho: [[T; 4]; 4],
    /// Half-arguments of the eigenvalues, each in `(−π/2, π/2]`.
    pub phases: [T; 4],
}

impl<T: Real> SymEigResult<T> {
    pub fn ortho_matrix(&self) -> ComplexMat4<T> {
        ComplexMat4::from_real(self.ortho)
    }

    pub fn eigenvalues(&self) -> [num_complex::Complex<T>; 4] {
        let two = T::one() + T::one();
        self.phases.map(|t| cis(two * t))
    }

    pub fn reconstruct(&self) -> ComplexMat4<T> {
        let o = self.ortho_matrix();
        o * ComplexMat4::from_diag(self.eigenvalues()) * o.transpose()
    }
}

/// Diagonalizes a symmetric unitary matrix by a real orthogonal similarity.
pub fn diag_symmetric_unitary<T: Real>(w: &ComplexMat4<T>, tol: T) -> Result<SymEigResult<T>> {
    diag_symmetric_unitary_seeded(w, tol, 0)
}

const MAX_DRAWS: usize = 16;

/// As [`diag_symmetric_unitary`], with an explicit seed for the random
/// combination coefficient.
///
/// `Re(w)` and `Im(w)` are commuting real symmetric matrices, so a real
/// eigenbasis of `Re(w) + t·Im(w)` diagonalizes `w` unless two distinct
/// eigenvalues of `w` collide under the projection. A draw is accepted once
/// `Oᵀ w O` is diagonal to `tol`; genuine degeneracies of `w` pass on the
/// first draw.
pub fn diag_symmetric_unitary_seeded<T: Real>(w: &ComplexMat4<T>, tol: T, seed: u64) -> Result<SymEigResult<T>> {
    let dev = w.unitarity_deviation();
    if dev > tol {
        return Err(Error::NotUnitary { deviation: dev.as_f64() });
    }
    let asym = w.max_abs_diff(&w.transpose());
    if asym > tol {
        return Err(Error::NotSymmetric { deviation: asym.as_f64() });
    }

    let re = w.re();
    let im = w.im();
    let mut rng = seeded_rng(seed);
    let mut best = T::infinity();
    for _ in 0..MAX_DRAWS {
        let t = T::lit(rng.random_range(0.25..4.0));
        let mut a = [[T::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                // symmetrize so Jacobi sees an exactly symmetric input
                let half = T::lit(0.5);
                a[i][j] = half * (re[i][j] + re[j][i]) + t * half * (im[i][j] + im[j][i]);
            }
        }
        let Some((_, mut o)) = jacobi_eigen(a) else { continue };

        let om = ComplexMat4::from_real(o);
        let d = om.transpose() * *w * om;
        let mut off = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    off = off.max(d[(i, j)].norm());
                }
            }
        }
        best = best.min(off);
        if off > tol {
            continue;
        }

        let half = T::lit(0.5);
        let phases = [0, 1, 2, 3].map(|k| half * d[(k, k)].arg());
        if real_det4(&o) < T::zero() {
            for row in o.iter_mut() {
                row[0] = -row[0];
            }
        }
        let result = SymEigResult { ortho: o, phases };
        let resid = result.reconstruct().max_abs_diff(w);
        if resid <= tol {
            return Ok(result);
        }
        best = best.min(resid);
    }
    Err(Error::ConvergenceFailure(format!(
        "no orthogonal diagonalizer within tolerance after {MAX_DRAWS} draws (best off-diagonal {:e})",
        best.as_f64()
    )))
}

pub(crate) fn real_det4<T: Real>(o: &[[T; 4]; 4]) -> T {
    ComplexMat4::from_real(*o).det().re
}
