//! Gate-level circuit representation and its exact 4×4 simulator.
//!
//! Rotations follow `Ry(θ) = exp(iθY/2) = [[cos θ/2, sin θ/2], [−sin θ/2, cos θ/2]]`
//! and `Rz(θ) = exp(iθZ/2) = diag(e^{iθ/2}, e^{−iθ/2})`. With these, the
//! three-CNOT template for `N(α, β, γ)` and `H = σz·Ry(π/2)` hold exactly.

mod simplify;
mod text;

pub use simplify::{simplify, simplify_with};
pub use text::{emit_circuit_text, format_float, parse_circuit_text};

use crate::linalg::{c, cis, kron, paulis, ComplexMat2, ComplexMat4};
use crate::num::{wrap_angle, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Qubit {
    /// Top wire, most significant in the matrix basis.
    Q0,
    Q1,
}

impl Qubit {
    pub fn index(self) -> usize {
        match self {
            Qubit::Q0 => 0,
            Qubit::Q1 => 1,
        }
    }

    pub fn other(self) -> Qubit {
        match self {
            Qubit::Q0 => Qubit::Q1,
            Qubit::Q1 => Qubit::Q0,
        }
    }
}

/// A named one- or two-qubit gate. Angles are in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate<T> {
    Ry(Qubit, T),
    Rz(Qubit, T),
    H(Qubit),
    S(Qubit),
    Sdg(Qubit),
    X(Qubit),
    Y(Qubit),
    Z(Qubit),
    /// Control on qubit 0, target on qubit 1.
    Cnot1,
    /// Control on qubit 1, target on qubit 0.
    Cnot2,
    Cz,
    Swap,
}

pub fn ry_matrix<T: Real>(theta: T) -> ComplexMat2<T> {
    let half = theta / (T::one() + T::one());
    let (s, co) = half.sin_cos();
    let z = T::zero();
    ComplexMat2::new(
        num_complex::Complex::new(co, z),
        num_complex::Complex::new(s, z),
        num_complex::Complex::new(-s, z),
        num_complex::Complex::new(co, z),
    )
}

pub fn rz_matrix<T: Real>(theta: T) -> ComplexMat2<T> {
    let half = theta / (T::one() + T::one());
    let z = num_complex::Complex::new(T::zero(), T::zero());
    ComplexMat2::new(cis(half), z, z, cis(-half))
}

pub fn cnot1_matrix<T: Real>() -> ComplexMat4<T> {
    permutation_matrix([0, 1, 3, 2])
}

pub fn cnot2_matrix<T: Real>() -> ComplexMat4<T> {
    permutation_matrix([0, 3, 2, 1])
}

pub fn swap_matrix<T: Real>() -> ComplexMat4<T> {
    permutation_matrix([0, 2, 1, 3])
}

pub fn cz_matrix<T: Real>() -> ComplexMat4<T> {
    ComplexMat4::from_diag([c(1., 0.), c(1., 0.), c(1., 0.), c(-1., 0.)])
}

/// Matrix with a one in row `perm[j]` of column `j`.
fn permutation_matrix<T: Real>(perm: [usize; 4]) -> ComplexMat4<T> {
    let mut m = ComplexMat4::zeros();
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = c(1., 0.);
    }
    m
}

/// Embeds a one-qubit matrix on the given wire.
pub fn on_qubit<T: Real>(q: Qubit, m: &ComplexMat2<T>) -> ComplexMat4<T> {
    match q {
        Qubit::Q0 => kron(m, &paulis::id()),
        Qubit::Q1 => kron(&paulis::id(), m),
    }
}

impl<T: Real> Gate<T> {
    /// The acting wire and 2×2 matrix of a one-qubit gate.
    pub fn local(&self) -> Option<(Qubit, ComplexMat2<T>)> {
        Some(match *self {
            Gate::Ry(q, t) => (q, ry_matrix(t)),
            Gate::Rz(q, t) => (q, rz_matrix(t)),
            Gate::H(q) => (q, paulis::h()),
            Gate::S(q) => (q, paulis::s()),
            Gate::Sdg(q) => (q, paulis::sdg()),
            Gate::X(q) => (q, paulis::x()),
            Gate::Y(q) => (q, paulis::y()),
            Gate::Z(q) => (q, paulis::z()),
            Gate::Cnot1 | Gate::Cnot2 | Gate::Cz | Gate::Swap => return None,
        })
    }

    pub fn qubit(&self) -> Option<Qubit> {
        match *self {
            Gate::Ry(q, _)
            | Gate::Rz(q, _)
            | Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubit().is_none()
    }

    pub fn touches(&self, q: Qubit) -> bool {
        self.qubit().is_none_or(|g| g == q)
    }

    /// The gate's 4×4 matrix.
    pub fn matrix(&self) -> ComplexMat4<T> {
        match *self {
            Gate::Cnot1 => cnot1_matrix(),
            Gate::Cnot2 => cnot2_matrix(),
            Gate::Cz => cz_matrix(),
            Gate::Swap => swap_matrix(),
            _ => {
                let (q, m) = self.local().expect("one-qubit gate");
                on_qubit(q, &m)
            }
        }
    }
}

pub fn gate_matrix<T: Real>(g: &Gate<T>) -> ComplexMat4<T> {
    g.matrix()
}

/// Ordered gate list (index 0 applied first) with an explicit global phase.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit<T> {
    pub gates: Vec<Gate<T>>,
    global_phase: T,
}

impl<T: Real> Default for Circuit<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> Circuit<T> {
    pub fn new() -> Self {
        Self { gates: Vec::new(), global_phase: T::zero() }
    }

    pub fn from_gates(gates: Vec<Gate<T>>, global_phase: T) -> Self {
        Self { gates, global_phase: wrap_angle(global_phase) }
    }

    /// Global phase in `(−π, π]`.
    pub fn global_phase(&self) -> T {
        self.global_phase
    }

    pub fn set_global_phase(&mut self, phase: T) {
        self.global_phase = wrap_angle(phase);
    }

    pub fn add_phase(&mut self, phase: T) {
        self.global_phase = wrap_angle(self.global_phase + phase);
    }

    pub fn push(&mut self, g: Gate<T>) {
        self.gates.push(g);
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// `e^{iφ} · G_n ⋯ G_1`.
    pub fn unitary(&self) -> ComplexMat4<T> {
        self.gates
            .iter()
            .fold(ComplexMat4::identity(), |acc, g| g.matrix() * acc)
            .scale(cis(self.global_phase))
    }

    pub fn counts(&self, expand_swap: bool) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            match g {
                Gate::Cnot1 | Gate::Cnot2 | Gate::Cz => counts.cnot += 1,
                Gate::Swap if expand_swap => counts.cnot += 3,
                Gate::Swap => counts.swap += 1,
                _ => counts.one_qubit += 1,
            }
        }
        counts
    }
}

pub fn circuit_to_unitary<T: Real>(c: &Circuit<T>) -> ComplexMat4<T> {
    c.unitary()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCounts {
    /// CNOT1, CNOT2 and CZ, plus three per SWAP when expanded.
    pub cnot: usize,
    pub one_qubit: usize,
    pub swap: usize,
}

pub fn count_gates<T: Real>(c: &Circuit<T>, expand_swap: bool) -> GateCounts {
    c.counts(expand_swap)
}
