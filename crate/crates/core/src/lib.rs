//! Optimal synthesis of two-qubit quantum gates.
//!
//! A 4×4 unitary is decomposed as `e^{iφ}·(A1⊗A2)·N(α,β,γ)·(A3⊗A4)` through
//! the magic basis, classified by the number of CNOTs it needs, and emitted
//! as a circuit over {CNOT, Ry, Rz}. Real orthogonal gates take two CNOTs
//! (three when the determinant is −1), arbitrary gates three CNOTs and at
//! most fifteen rotations. The [`ep`] module computes entangling power.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64`.

#![allow(clippy::needless_range_loop)]

pub mod circuit;
pub mod cli;
pub mod ep;
pub mod error;
pub mod kak;
pub mod linalg;
pub mod magic;
pub mod num;
pub mod synth;

pub use circuit::{
    circuit_to_unitary, count_gates, emit_circuit_text, parse_circuit_text, simplify, Gate, GateCounts, Qubit,
};
pub use ep::{case1_ep, ep_exact, ep_monte_carlo, linear_entropy, swap_lower_bound_witness};
pub use error::{Error, Result};
pub use kak::{kak_decompose, local_invariant_spectrum, n_matrix, zyz_decompose};
pub use linalg::{dist_up_to_phase, haar_random_unitary, kron, Complex};
pub use magic::{factor_tensor_2x2, synth_o4_negdet, synth_so4, to_magic, from_magic};
pub use num::Real;
pub use synth::{cnot_class, fit_local_gates, synth_n, synth_u4, Path};

pub type Complex64 = Complex<f64>;
pub type Mat2 = linalg::ComplexMat2<f64>;
pub type Mat4 = linalg::ComplexMat4<f64>;
pub type Mat16 = linalg::ComplexMat16<f64>;
pub type Circuit = circuit::Circuit<f64>;
pub type CanonicalDecomposition = kak::CanonicalDecomposition<f64>;
pub type ZyzAngles = kak::ZyzAngles<f64>;
pub type TensorFactors = magic::TensorFactors<f64>;
pub type SynthesisReport = synth::SynthesisReport<f64>;
pub type StateVec4 = ep::StateVec4<f64>;
