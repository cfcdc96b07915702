//! Minimal-CNOT synthesis of two-qubit unitaries.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::circuit::{cnot1_matrix, ry_matrix, rz_matrix, simplify_with, Circuit, GateCounts, Gate, Qubit};
use crate::error::{Error, Result};
use crate::kak::{kak_decompose, kak_decompose_seeded, push_local, CanonicalDecomposition, DEFAULT_SEED};
use crate::linalg::{dist_up_to_phase, kron, ComplexMat4};
use crate::magic::{factor_tensor_2x2, synth_o4_negdet, synth_so4, TensorFactors, PRODUCT_TOL};
use crate::num::{wrap_angle, Real};

const UNITARY_TOL: f64 = 1e-10;
const CLASS_TOL: f64 = 1e-8;
const RESIDUAL_TOL: f64 = 1e-8;
const REAL_TOL: f64 = 1e-9;

/// Three-CNOT circuit equal to `n_matrix(alpha, beta, gamma)`, global phase included.
pub fn synth_n<T: Real>(alpha: T, beta: T, gamma: T) -> Circuit<T> {
    let (h, two) = (T::lit(FRAC_PI_2), T::lit(2.0));
    Circuit::from_gates(
        vec![
            Gate::Rz(Qubit::Q1, h),
            Gate::Cnot2,
            Gate::Rz(Qubit::Q0, two * gamma - h),
            Gate::Ry(Qubit::Q1, h - two * alpha),
            Gate::Cnot1,
            Gate::Ry(Qubit::Q1, two * beta - h),
            Gate::Cnot2,
            Gate::Rz(Qubit::Q0, -h),
        ],
        T::lit(FRAC_PI_4),
    )
}

/// CNOT count class of normalized canonical parameters.
pub fn class_of_params<T: Real>(p: [T; 3]) -> u8 {
    let tol = T::tol(CLASS_TOL);
    let near = |x: T, y: T| (x - y).abs() <= tol;
    let [a, b, g] = p;
    if near(a, T::zero()) && near(b, T::zero()) && near(g, T::zero()) {
        0
    } else if near(a, T::lit(FRAC_PI_4)) && near(b, T::zero()) && near(g, T::zero()) {
        1
    } else if near(g, T::zero()) {
        2
    } else {
        3
    }
}

/// 0: product, 1: one CNOT, 2: two CNOTs, 3: three CNOTs.
pub fn cnot_class<T: Real>(u: &ComplexMat4<T>) -> Result<u8> {
    Ok(class_of_params(kak_decompose(u)?.params()))
}

/// Local frames with `u = e^{iφ}·(L1⊗L2)·core·(R1⊗R2)`, where `φ` is the
/// sum of the two factor phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalFit<T> {
    pub left: TensorFactors<T>,
    pub right: TensorFactors<T>,
}

impl<T: Real> LocalFit<T> {
    pub fn apply(&self, core: &ComplexMat4<T>) -> ComplexMat4<T> {
        self.left.reconstruct() * *core * self.right.reconstruct()
    }
}

/// Fits local gates around `core` so that the result equals `u`.
pub fn fit_local_gates<T: Real>(u: &ComplexMat4<T>, core: &ComplexMat4<T>) -> Result<LocalFit<T>> {
    fit_local_gates_seeded(u, core, DEFAULT_SEED)
}

pub fn fit_local_gates_seeded<T: Real>(u: &ComplexMat4<T>, core: &ComplexMat4<T>, seed: u64) -> Result<LocalFit<T>> {
    let du = kak_decompose_seeded(u, seed)?;
    let dc = kak_decompose_seeded(core, seed)?;
    let tol = T::tol(CLASS_TOL);
    let (pu, pc) = (du.params(), dc.params());
    if (0..3).any(|k| (pu[k] - pc[k]).abs() > tol) {
        return Err(Error::NotLocallyEquivalent(format!(
            "parameters ({}, {}, {}) vs ({}, {}, {})",
            pu[0], pu[1], pu[2], pc[0], pc[1], pc[2]
        )));
    }
    let fit = LocalFit {
        left: TensorFactors {
            a: du.a1 * dc.a1.adjoint(),
            b: du.a2 * dc.a2.adjoint(),
            phase: wrap_angle(du.phase - dc.phase),
        },
        right: TensorFactors { a: dc.a3.adjoint() * du.a3, b: dc.a4.adjoint() * du.a4, phase: T::zero() },
    };
    let residual = fit.apply(core).max_abs_diff(u);
    if residual > T::tol(RESIDUAL_TOL) {
        return Err(Error::NotLocallyEquivalent(format!("fit residual {:e}", residual.as_f64())));
    }
    Ok(fit)
}

/// Which construction produced a circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Path {
    Product,
    OneCnot,
    TwoCnot,
    So4,
    O4Neg,
    Generic,
}

impl Path {
    pub fn name(self) -> &'static str {
        match self {
            Path::Product => "product",
            Path::OneCnot => "one_cnot",
            Path::TwoCnot => "two_cnot",
            Path::So4 => "so4",
            Path::O4Neg => "o4_neg",
            Path::Generic => "generic",
        }
    }
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisReport<T> {
    pub circuit: Circuit<T>,
    /// Counts with SWAP gates kept as SWAP.
    pub counts: GateCounts,
    pub residual: T,
    pub cnot_class: u8,
    pub path: Path,
}

impl<T: Real> SynthesisReport<T> {
    /// Counts with each SWAP expanded into three CNOTs.
    pub fn expanded_counts(&self) -> GateCounts {
        self.circuit.counts(true)
    }
}

fn push_pair<T: Real>(c: &mut Circuit<T>, f: &TensorFactors<T>) -> Result<()> {
    push_local(c, Qubit::Q0, &f.a)?;
    push_local(c, Qubit::Q1, &f.b)?;
    c.add_phase(f.phase);
    Ok(())
}

fn product_circuit<T: Real>(u: &ComplexMat4<T>) -> Result<Circuit<T>> {
    let f = factor_tensor_2x2(u, T::tol(PRODUCT_TOL))?;
    let mut c = Circuit::new();
    push_pair(&mut c, &f)?;
    Ok(c)
}

fn fitted_circuit<T: Real>(
    u: &ComplexMat4<T>,
    core: &ComplexMat4<T>,
    middle: &[Gate<T>],
    seed: u64,
) -> Result<Circuit<T>> {
    let fit = fit_local_gates_seeded(u, core, seed)?;
    let mut c = Circuit::new();
    push_pair(&mut c, &fit.right)?;
    c.gates.extend_from_slice(middle);
    push_pair(&mut c, &fit.left)?;
    Ok(c)
}

fn one_cnot_circuit<T: Real>(u: &ComplexMat4<T>, seed: u64) -> Result<Circuit<T>> {
    fitted_circuit(u, &cnot1_matrix(), &[Gate::Cnot1], seed)
}

/// `CNOT1·(Ry(2α)⊗Rz(2β))·CNOT1 = exp(i(α·YX + β·ZZ))`, locally equivalent to `N(α, β, 0)`.
fn two_cnot_circuit<T: Real>(u: &ComplexMat4<T>, d: &CanonicalDecomposition<T>, seed: u64) -> Result<Circuit<T>> {
    let two = T::lit(2.0);
    let (ry, rz) = (two * d.alpha, two * d.beta);
    let cx = cnot1_matrix();
    let core = cx * kron(&ry_matrix(ry), &rz_matrix(rz)) * cx;
    fitted_circuit(u, &core, &[Gate::Cnot1, Gate::Ry(Qubit::Q0, ry), Gate::Rz(Qubit::Q1, rz), Gate::Cnot1], seed)
}

/// Three CNOTs and fifteen rotations: the `synth_n` core with its outer Rz
/// rotations folded into the adjacent locals.
fn generic_circuit<T: Real>(d: &CanonicalDecomposition<T>) -> Result<Circuit<T>> {
    let core = synth_n(d.alpha, d.beta, d.gamma);
    let h = T::lit(FRAC_PI_2);
    let a4 = rz_matrix(h) * d.a4;
    let a1 = d.a1 * rz_matrix(-h);

    let mut c = Circuit::from_gates(Vec::new(), d.phase + core.global_phase());
    push_local(&mut c, Qubit::Q0, &d.a3)?;
    push_local(&mut c, Qubit::Q1, &a4)?;
    c.gates.extend_from_slice(&core.gates[1..core.gates.len() - 1]);
    push_local(&mut c, Qubit::Q0, &a1)?;
    push_local(&mut c, Qubit::Q1, &d.a2)?;
    Ok(c)
}

/// Synthesizes `u` with the fewest CNOTs its class allows.
///
/// Special paths are verified and fall back to the generic three-CNOT
/// construction if they miss the residual bound. `simplify_output` runs the
/// peephole simplifier on every path except the generic one; SWAP fusion is
/// only applied when `expand_swap` is set.
pub fn synth_u4<T: Real>(u: &ComplexMat4<T>, expand_swap: bool, simplify_output: bool) -> Result<SynthesisReport<T>> {
    synth_u4_seeded(u, expand_swap, simplify_output, DEFAULT_SEED)
}

/// [`synth_u4`] with an explicit seed for the randomized diagonalization.
pub fn synth_u4_seeded<T: Real>(
    u: &ComplexMat4<T>,
    expand_swap: bool,
    simplify_output: bool,
    seed: u64,
) -> Result<SynthesisReport<T>> {
    let dev = u.unitarity_deviation();
    if dev > T::tol(UNITARY_TOL) {
        return Err(Error::NotUnitary { deviation: dev.as_f64() });
    }
    let d = kak_decompose_seeded(u, seed)?;
    let class = class_of_params(d.params());
    let real_det = if u.max_imag() <= T::tol(REAL_TOL) { Some(u.det().re) } else { None };
    let real_tol = T::tol(REAL_TOL);

    let special = match class {
        0 => Some((Path::Product, product_circuit(u))),
        1 => Some((Path::OneCnot, one_cnot_circuit(u, seed))),
        2 => match real_det {
            Some(det) if (det - T::one()).abs() <= real_tol => Some((Path::So4, synth_so4(u))),
            _ => Some((Path::TwoCnot, two_cnot_circuit(u, &d, seed))),
        },
        _ => match real_det {
            Some(det) if (det + T::one()).abs() <= real_tol => Some((Path::O4Neg, synth_o4_negdet(u, expand_swap))),
            _ => None,
        },
    };

    let tol = T::tol(RESIDUAL_TOL);
    if let Some((path, Ok(mut circuit))) = special {
        if simplify_output {
            circuit = simplify_with(&circuit, expand_swap);
        }
        let residual = dist_up_to_phase(&circuit.unitary(), u);
        if residual <= tol {
            return Ok(report(circuit, residual, class, path));
        }
    }

    let circuit = generic_circuit(&d)?;
    let residual = dist_up_to_phase(&circuit.unitary(), u);
    if residual > tol {
        return Err(Error::VerificationFailure { residual: residual.as_f64() });
    }
    Ok(report(circuit, residual, class, Path::Generic))
}

fn report<T: Real>(circuit: Circuit<T>, residual: T, cnot_class: u8, path: Path) -> SynthesisReport<T> {
    SynthesisReport { counts: circuit.counts(false), circuit, residual, cnot_class, path }
}
