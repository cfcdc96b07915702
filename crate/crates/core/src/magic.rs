//! The magic basis and the real-orthogonal synthesis routes built on it.
//!
//! Conjugation by the magic matrix `M` maps SO(4) onto SU(2)⊗SU(2). Any real
//! orthogonal gate therefore reduces to one tensor-product layer sandwiched
//! between two copies of the one-CNOT magic circuit.

use std::f64::consts::FRAC_PI_2;

use crate::circuit::{cnot1_matrix, Circuit, Gate, Qubit};
use crate::error::{Error, Result};
use crate::kak::push_local;
use crate::linalg::{c, cis, dist_up_to_phase, kron, paulis, Complex, ComplexMat2, ComplexMat4};
use crate::num::{wrap_angle, Real};

/// `M = (1/√2)·[[1, i, 0, 0], [0, 0, i, 1], [0, 0, i, −1], [1, −i, 0, 0]]`.
pub fn magic_matrix<T: Real>() -> ComplexMat4<T> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0., 0.);
    ComplexMat4 {
        entries: [
            [c(r, 0.), c(0., r), z, z],
            [z, z, c(0., r), c(r, 0.)],
            [z, z, c(0., r), c(-r, 0.)],
            [c(r, 0.), c(0., -r), z, z],
        ],
    }
}

/// The magic matrix and its adjoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagicConstants<T> {
    pub m: ComplexMat4<T>,
    pub m_dagger: ComplexMat4<T>,
}

impl<T: Real> MagicConstants<T> {
    pub fn new() -> Self {
        let m = magic_matrix();
        Self { m, m_dagger: m.adjoint() }
    }
}

impl<T: Real> Default for MagicConstants<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// `M·u·M†`.
pub fn to_magic<T: Real>(u: &ComplexMat4<T>) -> ComplexMat4<T> {
    let k = MagicConstants::new();
    k.m * *u * k.m_dagger
}

/// `M†·u·M`.
pub fn from_magic<T: Real>(u: &ComplexMat4<T>) -> ComplexMat4<T> {
    let k = MagicConstants::new();
    k.m_dagger * *u * k.m
}

/// `e^{i·phase}·(a ⊗ b)` with `det a = det b = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensorFactors<T> {
    pub a: ComplexMat2<T>,
    pub b: ComplexMat2<T>,
    pub phase: T,
}

impl<T: Real> TensorFactors<T> {
    pub fn reconstruct(&self) -> ComplexMat4<T> {
        kron(&self.a, &self.b).scale(cis(self.phase))
    }
}

/// Default rejection threshold for [`factor_tensor_2x2`].
pub const PRODUCT_TOL: f64 = 1e-8;

fn block<T: Real>(u: &ComplexMat4<T>, i: usize, j: usize) -> ComplexMat2<T> {
    ComplexMat2::from_fn(|r, s| u[(2 * i + r, 2 * j + s)])
}

/// Splits `u` into `e^{iφ}·(a ⊗ b)`.
///
/// The 2×2 block of largest norm is taken as a scaled copy of `b`; the
/// entries of `a` are the projections of every block onto it. Fails with
/// [`Error::NotAProduct`] when the max-norm residual exceeds `tol`.
pub fn factor_tensor_2x2<T: Real>(u: &ComplexMat4<T>, tol: T) -> Result<TensorFactors<T>> {
    let dev = u.unitarity_deviation();
    if dev > tol {
        return Err(Error::NotUnitary { deviation: dev.as_f64() });
    }
    let mut best = (0, 0);
    let mut best_norm = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            let n = block(u, i, j).frobenius_sqr();
            if n > best_norm {
                best_norm = n;
                best = (i, j);
            }
        }
    }
    let b = block(u, best.0, best.1);
    let a = ComplexMat2::from_fn(|i, j| b.inner(&block(u, i, j)) / best_norm);

    let (da, db) = (a.det(), b.det());
    let floor = T::tol(1e-12);
    if da.norm() < floor || db.norm() < floor {
        return Err(Error::NotAProduct { residual: f64::INFINITY });
    }
    let a = a.scale(da.sqrt().inv());
    let b = b.scale(db.sqrt().inv());
    let ab = kron(&a, &b);
    let fit: Complex<T> = ab.inner(u);
    let phase = fit.arg();
    let factors = TensorFactors { a, b, phase };
    let residual = factors.reconstruct().max_abs_diff(u);
    if residual > tol {
        return Err(Error::NotAProduct { residual: residual.as_f64() });
    }
    Ok(factors)
}

const ORTHO_TOL: f64 = 1e-9;
const VERIFY_TOL: f64 = 1e-9;

fn check_real_orthogonal<T: Real>(u: &ComplexMat4<T>) -> std::result::Result<T, String> {
    let tol = T::tol(ORTHO_TOL);
    if u.max_imag() > tol {
        return Err(format!("imaginary part {:e}", u.max_imag().as_f64()));
    }
    let dev = u.unitarity_deviation();
    if dev > tol {
        return Err(format!("not orthogonal (deviation {:e})", dev.as_f64()));
    }
    Ok(u.det().re)
}

/// Gates of the magic circuit `M` with `S = e^{iπ/4}Rz(−π/2)` and `H = σz·Ry(π/2)`, the
/// σz moved into the middle layer. Returns the time-ordered prefix.
fn magic_prefix<T: Real>() -> Vec<Gate<T>> {
    let h = T::lit(FRAC_PI_2);
    vec![Gate::Rz(Qubit::Q0, -h), Gate::Rz(Qubit::Q1, -h), Gate::Ry(Qubit::Q1, h), Gate::Cnot2]
}

fn magic_suffix<T: Real>() -> Vec<Gate<T>> {
    let h = T::lit(FRAC_PI_2);
    vec![Gate::Cnot2, Gate::Ry(Qubit::Q1, -h), Gate::Rz(Qubit::Q0, h), Gate::Rz(Qubit::Q1, h)]
}

fn verified<T: Real>(c: Circuit<T>, u: &ComplexMat4<T>) -> Result<Circuit<T>> {
    let residual = dist_up_to_phase(&c.unitary(), u);
    if residual > T::tol(VERIFY_TOL) {
        return Err(Error::VerificationFailure { residual: residual.as_f64() });
    }
    Ok(c)
}

/// Two-CNOT circuit for a real orthogonal gate with determinant +1.
///
/// `u = M†(A⊗B)M`; writing out `M` as its one-CNOT circuit gives at most 12
/// Ry/Rz rotations (the ZYZ forms of `A` and `σz·B·σz` plus six fixed ones).
pub fn synth_so4<T: Real>(u: &ComplexMat4<T>) -> Result<Circuit<T>> {
    let det = check_real_orthogonal(u).map_err(Error::NotSpecialOrthogonal)?;
    if (det - T::one()).abs() > T::tol(ORTHO_TOL) {
        return Err(Error::NotSpecialOrthogonal(format!("determinant {}", det)));
    }
    let f = factor_tensor_2x2(&to_magic(u), T::tol(PRODUCT_TOL))?;
    let z = paulis::z();
    let b = z * f.b * z;

    let mut circuit = Circuit::from_gates(magic_prefix(), f.phase);
    push_local(&mut circuit, Qubit::Q0, &f.a)?;
    push_local(&mut circuit, Qubit::Q1, &b)?;
    circuit.gates.extend(magic_suffix());
    verified(circuit, u)
}

/// Circuit for a real orthogonal gate with determinant −1.
///
/// Multiplying by CNOT1 lands in SO(4), and `M·CNOT1·M† = (S†⊗S†)·SWAP·(1⊗σz)`,
/// so `M·u·M† = (A⊗B)·SWAP·(1⊗σz)`. The SWAP sits right after the first CNOT2;
/// with `expand_swap` the pair is rewritten as CNOT1 then CNOT2, giving three
/// CNOTs in total.
pub fn synth_o4_negdet<T: Real>(u: &ComplexMat4<T>, expand_swap: bool) -> Result<Circuit<T>> {
    let det = check_real_orthogonal(u).map_err(Error::NotNegOrthogonal)?;
    if (det + T::one()).abs() > T::tol(ORTHO_TOL) {
        return Err(Error::NotNegOrthogonal(format!("determinant {}", det)));
    }
    let f = factor_tensor_2x2(&to_magic(&(*u * cnot1_matrix())), T::tol(PRODUCT_TOL))?;
    let sdg = paulis::sdg();
    let z = paulis::z();
    let a = f.a * sdg;
    let b = z * f.b * sdg;

    let mut gates = magic_prefix();
    if expand_swap {
        let last = gates.len() - 1;
        gates[last] = Gate::Cnot1;
        gates.push(Gate::Cnot2);
    } else {
        gates.push(Gate::Swap);
    }
    // det(S†⊗S†) = −1 and both factors were normalized to unit determinant.
    let mut circuit = Circuit::from_gates(gates, wrap_angle(f.phase));
    push_local(&mut circuit, Qubit::Q0, &a)?;
    push_local(&mut circuit, Qubit::Q1, &b)?;
    circuit.gates.extend(magic_suffix());
    verified(circuit, u)
}
