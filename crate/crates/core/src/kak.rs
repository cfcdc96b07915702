//! Canonical decomposition `u = e^{iφ}·(A1⊗A2)·N(α,β,γ)·(A3⊗A4)` and the
//! one-qubit ZYZ decomposition used to expand the locals into rotations.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::circuit::{Circuit, Gate, Qubit};
use crate::error::{Error, Result};
use crate::linalg::{
    c, cis, diag_symmetric_unitary_seeded, kron, paulis, Complex, ComplexMat2, ComplexMat4, SymEigResult,
};
use crate::magic::{factor_tensor_2x2, from_magic, magic_matrix, to_magic, PRODUCT_TOL};
use crate::num::{wrap_angle, Real};

const UNITARY_TOL: f64 = 1e-10;
const RECONSTRUCT_TOL: f64 = 1e-8;
const SNAP_TOL: f64 = 1e-10;
const SEED_RETRIES: u64 = 8;
/// Seed used by the unseeded entry points.
pub const DEFAULT_SEED: u64 = 0x6b61_6b00;

/// `e^{i·phase}·Rz(alpha)·Ry(theta)·Rz(beta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZyzAngles<T> {
    pub phase: T,
    pub alpha: T,
    pub theta: T,
    pub beta: T,
}

impl<T: Real> ZyzAngles<T> {
    pub fn matrix(&self) -> ComplexMat2<T> {
        use crate::circuit::{ry_matrix, rz_matrix};
        (rz_matrix(self.alpha) * ry_matrix(self.theta) * rz_matrix(self.beta)).scale(cis(self.phase))
    }
}

/// Wraps into `(−π, π]`; `true` if an odd number of 2π turns was removed.
fn wrap_counting<T: Real>(x: T) -> (T, bool) {
    let w = wrap_angle(x);
    let turns = ((x - w) / (T::PI() + T::PI())).round().to_i64().unwrap_or(0);
    (w, turns.rem_euclid(2) == 1)
}

/// ZYZ angles of a one-qubit unitary.
///
/// `theta ∈ [0, π]`, `alpha, beta ∈ (−π, π]`. When one of the two off-diagonal
/// and diagonal magnitudes vanishes only `alpha` carries the phase and `beta = 0`.
pub fn zyz_decompose<T: Real>(a: &ComplexMat2<T>) -> Result<ZyzAngles<T>> {
    let dev = a.unitarity_deviation();
    if dev > T::tol(UNITARY_TOL) {
        return Err(Error::NotUnitary { deviation: dev.as_f64() });
    }
    let mut phase = a.det().arg() / T::lit(2.0);
    let v = a.scale(cis(-phase));
    let half = T::lit(0.5);
    let p = (v[(0, 0)] + v[(1, 1)].conj()).scale(half);
    let q = (v[(0, 1)] - v[(1, 0)].conj()).scale(half);
    let theta = (q.norm().atan2(p.norm())) * T::lit(2.0);

    let tiny = T::tol(1e-14);
    let (alpha, beta) = if q.norm() < tiny {
        (p.arg() * T::lit(2.0), T::zero())
    } else if p.norm() < tiny {
        (q.arg() * T::lit(2.0), T::zero())
    } else {
        (p.arg() + q.arg(), p.arg() - q.arg())
    };
    let (alpha, flip_a) = wrap_counting(alpha);
    let (beta, flip_b) = wrap_counting(beta);
    if flip_a != flip_b {
        phase = phase + T::PI();
    }
    Ok(ZyzAngles { phase: wrap_angle(phase), alpha, theta, beta })
}

/// Appends the ZYZ expansion of `m` on `q` (time order Rz(β), Ry(θ), Rz(α)).
pub(crate) fn push_local<T: Real>(circuit: &mut Circuit<T>, q: Qubit, m: &ComplexMat2<T>) -> Result<()> {
    let z = zyz_decompose(m)?;
    circuit.push(Gate::Rz(q, z.beta));
    circuit.push(Gate::Ry(q, z.theta));
    circuit.push(Gate::Rz(q, z.alpha));
    circuit.add_phase(z.phase);
    Ok(())
}

/// Phases of the diagonal `D = M†·N(α,β,γ)·M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DPhases<T> {
    pub theta: [T; 4],
}

pub fn phases_from_params<T: Real>(alpha: T, beta: T, gamma: T) -> DPhases<T> {
    DPhases {
        theta: [alpha - beta + gamma, -alpha + beta + gamma, alpha + beta - gamma, -alpha - beta - gamma],
    }
}

/// Inverse of [`phases_from_params`]; the phases must sum to a multiple of 2π.
pub fn params_from_phases<T: Real>(p: &DPhases<T>) -> Result<(T, T, T)> {
    let [t1, t2, t3, t4] = p.theta;
    let sum = t1 + t2 + t3 + t4;
    if wrap_angle(sum).abs() > T::tol(1e-9) {
        return Err(Error::InconsistentPhases { sum: sum.as_f64() });
    }
    let half = T::lit(0.5);
    Ok(((t1 + t3) * half, (t2 + t3) * half, (t1 + t2) * half))
}

/// `N(α,β,γ) = exp(i(α·XX + β·YY + γ·ZZ)) = M·D·M†`.
pub fn n_matrix<T: Real>(alpha: T, beta: T, gamma: T) -> ComplexMat4<T> {
    let d = phases_from_params(alpha, beta, gamma).theta.map(cis);
    let m = magic_matrix();
    m * ComplexMat4::from_diag(d) * m.adjoint()
}

/// `u = e^{i·phase}·(a1⊗a2)·N(alpha, beta, gamma)·(a3⊗a4)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalDecomposition<T> {
    pub a1: ComplexMat2<T>,
    pub a2: ComplexMat2<T>,
    pub a3: ComplexMat2<T>,
    pub a4: ComplexMat2<T>,
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub phase: T,
}

impl<T: Real> CanonicalDecomposition<T> {
    pub fn params(&self) -> [T; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn reconstruct(&self) -> ComplexMat4<T> {
        (kron(&self.a1, &self.a2) * n_matrix(self.alpha, self.beta, self.gamma) * kron(&self.a3, &self.a4))
            .scale(cis(self.phase))
    }

    fn set_param(&mut self, k: usize, v: T) {
        match k {
            0 => self.alpha = v,
            1 => self.beta = v,
            _ => self.gamma = v,
        }
    }

    /// `N(p) = N(p − k·π/2·e_axis)·i^k·(P⊗P)^k`.
    fn shift(&mut self, axis: usize, k: i64) {
        let h = T::lit(FRAC_PI_2);
        let kt = T::from_i64(k).unwrap_or_else(T::zero);
        self.set_param(axis, self.params()[axis] - kt * h);
        self.phase = wrap_angle(self.phase + kt * h);
        if k.rem_euclid(2) == 1 {
            let p = pauli(axis);
            self.a3 = p * self.a3;
            self.a4 = p * self.a4;
        }
    }

    /// Exchanges two parameters by conjugating with a local Clifford `c⊗c`.
    fn permute(&mut self, i: usize, j: usize) {
        let cl = match (i.min(j), i.max(j)) {
            (0, 1) => paulis::s(),
            (0, 2) => paulis::h(),
            _ => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                ComplexMat2::new(c(r, 0.), c(0., r), c(0., r), c(r, 0.))
            }
        };
        let ca = cl.adjoint();
        self.a1 = self.a1 * ca;
        self.a2 = self.a2 * ca;
        self.a3 = cl * self.a3;
        self.a4 = cl * self.a4;
        let mut p = self.params();
        p.swap(i, j);
        [self.alpha, self.beta, self.gamma] = p;
    }

    /// Negates the two parameters other than `keep` by conjugating with `P⊗1`.
    fn negate_pair(&mut self, keep: usize) {
        let p = pauli(keep);
        self.a1 = self.a1 * p;
        self.a3 = p * self.a3;
        for k in 0..3 {
            if k != keep {
                self.set_param(k, -self.params()[k]);
            }
        }
    }
}

fn pauli<T: Real>(axis: usize) -> ComplexMat2<T> {
    match axis {
        0 => paulis::x(),
        1 => paulis::y(),
        _ => paulis::z(),
    }
}

pub fn kak_decompose<T: Real>(u: &ComplexMat4<T>) -> Result<CanonicalDecomposition<T>> {
    kak_decompose_seeded(u, DEFAULT_SEED)
}

/// Canonical decomposition with parameters in the Weyl cell
/// `π/4 ≥ α ≥ β ≥ |γ|`, and `γ ≥ 0` whenever `α = π/4`.
///
/// `seed` drives the random re-draws of the symmetric diagonalization; up to
/// eight consecutive seeds are tried.
pub fn kak_decompose_seeded<T: Real>(u: &ComplexMat4<T>, seed: u64) -> Result<CanonicalDecomposition<T>> {
    let dev = u.unitarity_deviation();
    if dev > T::tol(UNITARY_TOL) {
        return Err(Error::NotUnitary { deviation: dev.as_f64() });
    }
    let root_phase = u.det().arg() / T::lit(4.0);
    let us = u.scale(cis(-root_phase));
    let v = from_magic(&us);
    let w = v.transpose() * v;

    let mut last = String::from("no attempt");
    for attempt in 0..SEED_RETRIES {
        match attempt_kak(u, &v, &w, root_phase, seed.wrapping_add(attempt)) {
            Ok(d) => return Ok(d),
            Err(Error::ConvergenceFailure(msg)) => last = msg,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ConvergenceFailure(format!("canonical decomposition failed for {SEED_RETRIES} seeds: {last}")))
}

fn attempt_kak<T: Real>(
    u: &ComplexMat4<T>,
    v: &ComplexMat4<T>,
    w: &ComplexMat4<T>,
    root_phase: T,
    seed: u64,
) -> Result<CanonicalDecomposition<T>> {
    let eig: SymEigResult<T> = match diag_symmetric_unitary_seeded(w, T::tol(1e-9), seed) {
        Ok(e) => e,
        Err(Error::NotSymmetric { deviation }) | Err(Error::NotUnitary { deviation }) => {
            return Err(Error::ConvergenceFailure(format!("VᵀV not a symmetric unitary ({deviation:e})")))
        }
        Err(e) => return Err(e),
    };
    let o = eig.ortho_matrix();
    let mut theta = eig.phases;
    let d_inv = ComplexMat4::from_diag(theta.map(|t| cis(-t)));
    let q1c = *v * o * d_inv;
    if q1c.max_imag() > T::tol(RECONSTRUCT_TOL) {
        return Err(Error::ConvergenceFailure(format!("left factor not real ({:e})", q1c.max_imag().as_f64())));
    }
    let mut q1 = ComplexMat4::from_real(q1c.re());
    if q1.det().re < T::zero() {
        theta[0] = theta[0] + T::PI();
        for r in 0..4 {
            q1[(r, 0)] = -q1[(r, 0)];
        }
    }
    let q2 = o.transpose();

    let product_tol = T::tol(PRODUCT_TOL);
    let left = factor_tensor_2x2(&to_magic(&q1), product_tol).map_err(as_convergence)?;
    let right = factor_tensor_2x2(&to_magic(&q2), product_tol).map_err(as_convergence)?;
    let (alpha, beta, gamma) = params_from_phases(&DPhases { theta }).map_err(as_convergence)?;

    let mut d = CanonicalDecomposition {
        a1: left.a,
        a2: left.b,
        a3: right.a,
        a4: right.b,
        alpha,
        beta,
        gamma,
        phase: wrap_angle(root_phase + left.phase + right.phase),
    };
    check(&d, u)?;
    normalize_weyl(&mut d, u)?;
    Ok(d)
}

fn as_convergence(e: Error) -> Error {
    Error::ConvergenceFailure(e.to_string())
}

fn check<T: Real>(d: &CanonicalDecomposition<T>, u: &ComplexMat4<T>) -> Result<()> {
    let r = d.reconstruct().max_abs_diff(u);
    if r > T::tol(RECONSTRUCT_TOL) {
        return Err(Error::ConvergenceFailure(format!("reconstruction residual {:e}", r.as_f64())));
    }
    Ok(())
}

fn normalize_weyl<T: Real>(d: &mut CanonicalDecomposition<T>, u: &ComplexMat4<T>) -> Result<()> {
    let h = T::lit(FRAC_PI_2);
    let q = T::lit(FRAC_PI_4);
    let snap = T::tol(SNAP_TOL);

    for axis in 0..3 {
        let k = (d.params()[axis] / h).round().to_i64().unwrap_or(0);
        if k != 0 {
            d.shift(axis, k);
            check(d, u)?;
        }
    }
    for (i, j) in [(0, 1), (1, 2), (0, 1)] {
        let p = d.params();
        if p[i].abs() < p[j].abs() {
            d.permute(i, j);
            check(d, u)?;
        }
    }
    if d.alpha < T::zero() {
        d.negate_pair(if d.beta < T::zero() { 2 } else { 1 });
        check(d, u)?;
    }
    if d.beta < T::zero() {
        d.negate_pair(0);
        check(d, u)?;
    }
    if (d.alpha - q).abs() <= snap && d.gamma < -snap {
        d.shift(0, 1);
        d.negate_pair(1);
        check(d, u)?;
    }

    for k in 0..3 {
        let x = d.params()[k];
        for target in [T::zero(), q, -q] {
            if (x - target).abs() <= snap {
                d.set_param(k, target);
            }
        }
    }
    if d.gamma.abs() <= snap {
        d.gamma = T::zero();
    }
    check(d, u)
}

/// Eigenvalues of `VᵀV`, `V = M†·u·M` with `u` scaled to determinant 1, sorted
/// by argument. Local gates change the multiset at most by a common 4th root of
/// unity.
pub fn local_invariant_spectrum<T: Real>(u: &ComplexMat4<T>) -> Result<[Complex<T>; 4]> {
    let dev = u.unitarity_deviation();
    if dev > T::tol(UNITARY_TOL) {
        return Err(Error::NotUnitary { deviation: dev.as_f64() });
    }
    let us = u.scale(cis(-u.det().arg() / T::lit(4.0)));
    let v = from_magic(&us);
    let w = v.transpose() * v;
    let mut last = None;
    for attempt in 0..SEED_RETRIES {
        match diag_symmetric_unitary_seeded(&w, T::tol(1e-9), DEFAULT_SEED + attempt) {
            Ok(e) => {
                let mut ev = e.eigenvalues();
                ev.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap_or(std::cmp::Ordering::Equal));
                return Ok(ev);
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::ConvergenceFailure("no attempt".into())))
}
