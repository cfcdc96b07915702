//! Greedy peephole rewriting to a fixed point.
//!
//! Every rule is an exact matrix identity, so the rewritten circuit has the
//! same unitary including the global phase. No rule increases the gate count.

use super::{Circuit, Gate, Qubit};
use crate::num::Real;

const MAX_PASSES: usize = 100;

/// Rewrites `c` until no rule applies (at most 100 passes).
///
/// Rules, in the order they are tried at each position:
/// - drop rotations whose angle is a multiple of 2π (odd multiples add π to the phase);
/// - merge an Rz into the next Rz on its wire, passing Z-diagonal gates, CZ and
///   the control side of a CNOT;
/// - merge an Ry into the next Ry on its wire, passing Y;
/// - cancel a CNOT1/CNOT2/CZ against the next identical gate it commutes up to;
///   cancel adjacent SWAP pairs;
/// - turn `CNOT1·(1⊗Rz)·CNOT1` into `CNOT2·(Rz⊗1)·CNOT2` (and back) when the
///   neighbouring gate is a CNOT2 (CNOT1) that then cancels;
/// - fuse a SWAP with an adjacent CNOT into two CNOTs.
pub fn simplify<T: Real>(c: &Circuit<T>) -> Circuit<T> {
    simplify_with(c, true)
}

/// [`simplify`], optionally leaving SWAP gates in place.
pub fn simplify_with<T: Real>(c: &Circuit<T>, fuse_swaps: bool) -> Circuit<T> {
    let mut gates = c.gates.clone();
    let mut phase = c.global_phase();
    for _ in 0..MAX_PASSES {
        if !pass(&mut gates, &mut phase, fuse_swaps) {
            break;
        }
    }
    Circuit::from_gates(gates, phase)
}

fn pass<T: Real>(gates: &mut Vec<Gate<T>>, phase: &mut T, fuse_swaps: bool) -> bool {
    let zero_tol = T::tol(1e-12);
    let mut changed = false;
    let mut i = 0;
    while i < gates.len() {
        let g = gates[i];
        match g {
            Gate::Ry(_, t) | Gate::Rz(_, t) if full_turns(t, zero_tol).is_some() => {
                if full_turns(t, zero_tol) == Some(true) {
                    *phase = *phase + T::PI();
                }
                gates.remove(i);
                changed = true;
                continue;
            }
            Gate::Rz(q, t) => {
                let found = next_on_wire(gates, i, q, |h| matches!(h, Gate::Rz(p, _) if *p == q), |h| commutes_with_z(h, q));
                if let Some(j) = found {
                    if let Gate::Rz(_, u) = gates[j] {
                        gates[j] = Gate::Rz(q, t + u);
                        gates.remove(i);
                        changed = true;
                        continue;
                    }
                }
            }
            Gate::Ry(q, t) => {
                let found = next_on_wire(gates, i, q, |h| matches!(h, Gate::Ry(p, _) if *p == q), |h| matches!(h, Gate::Y(p) if *p == q));
                if let Some(j) = found {
                    if let Gate::Ry(_, u) = gates[j] {
                        gates[j] = Gate::Ry(q, t + u);
                        gates.remove(i);
                        changed = true;
                        continue;
                    }
                }
            }
            Gate::Cnot1 | Gate::Cnot2 | Gate::Cz => {
                if let Some(j) = cancelling_partner(gates, i) {
                    gates.remove(j);
                    gates.remove(i);
                    changed = true;
                    continue;
                }
                if conjugated_rz_swap(gates, i) {
                    changed = true;
                    continue;
                }
                if fuse_swaps && fuse_swap(gates, i) {
                    changed = true;
                    i += 2;
                    continue;
                }
            }
            Gate::Swap => {
                if matches!(gates.get(i + 1), Some(Gate::Swap)) {
                    gates.drain(i..i + 2);
                    changed = true;
                    continue;
                }
                if fuse_swaps && fuse_swap(gates, i) {
                    changed = true;
                    i += 2;
                    continue;
                }
            }
            _ => {}
        }
        i += 1;
    }
    changed
}

/// `Some(odd)` if `t` is within `tol` of `2πk`, with `odd = k` odd.
fn full_turns<T: Real>(t: T, tol: T) -> Option<bool> {
    let two_pi = T::PI() + T::PI();
    let k = (t / two_pi).round();
    if (t - k * two_pi).abs() < tol {
        let k = k.to_i64().unwrap_or(0);
        Some(k.rem_euclid(2) == 1)
    } else {
        None
    }
}

/// First index after `i` on wire `q` matching `target`, passing gates on the
/// other wire and gates accepted by `passable`.
fn next_on_wire<T: Real>(
    gates: &[Gate<T>],
    i: usize,
    q: Qubit,
    target: impl Fn(&Gate<T>) -> bool,
    passable: impl Fn(&Gate<T>) -> bool,
) -> Option<usize> {
    for (j, h) in gates.iter().enumerate().skip(i + 1) {
        if !h.touches(q) {
            continue;
        }
        if target(h) {
            return Some(j);
        }
        if !passable(h) {
            return None;
        }
    }
    None
}

fn is_z_diagonal<T>(g: &Gate<T>) -> bool {
    matches!(g, Gate::Rz(..) | Gate::Z(_) | Gate::S(_) | Gate::Sdg(_))
}

/// Whether `h` commutes with a Z-axis operator on wire `q`.
fn commutes_with_z<T>(h: &Gate<T>, q: Qubit) -> bool {
    match h {
        Gate::Cz => true,
        Gate::Cnot1 => q == Qubit::Q0,
        Gate::Cnot2 => q == Qubit::Q1,
        Gate::Swap => false,
        _ => is_z_diagonal(h),
    }
}

/// Whether one-qubit gate `h` commutes with the two-qubit gate `g`.
fn commutes_with_entangler<T: Real>(g: &Gate<T>, h: &Gate<T>) -> bool {
    let Some(q) = h.qubit() else { return false };
    let (control, target) = match g {
        Gate::Cnot1 => (Qubit::Q0, Qubit::Q1),
        Gate::Cnot2 => (Qubit::Q1, Qubit::Q0),
        Gate::Cz => return is_z_diagonal(h),
        _ => return false,
    };
    (q == control && is_z_diagonal(h)) || (q == target && matches!(h, Gate::X(_)))
}

fn cancelling_partner<T: Real>(gates: &[Gate<T>], i: usize) -> Option<usize> {
    let g = gates[i];
    for (j, h) in gates.iter().enumerate().skip(i + 1) {
        if *h == g {
            return Some(j);
        }
        if !commutes_with_entangler(&g, h) {
            return None;
        }
    }
    None
}

/// Rewrites `CNOTa·Rz·CNOTa` at `i` into the flipped form when the flipped
/// CNOT sits right next to it.
fn conjugated_rz_swap<T: Real>(gates: &mut [Gate<T>], i: usize) -> bool {
    if i + 2 >= gates.len() {
        return false;
    }
    let (outer, inner_q, flipped, flipped_q) = match gates[i] {
        Gate::Cnot1 => (Gate::Cnot1, Qubit::Q1, Gate::Cnot2, Qubit::Q0),
        Gate::Cnot2 => (Gate::Cnot2, Qubit::Q0, Gate::Cnot1, Qubit::Q1),
        _ => return false,
    };
    let Gate::Rz(q, theta) = gates[i + 1] else { return false };
    if q != inner_q || gates[i + 2] != outer {
        return false;
    }
    let before = i > 0 && gates[i - 1] == flipped;
    let after = gates.get(i + 3) == Some(&flipped);
    if !(before || after) {
        return false;
    }
    gates[i] = flipped;
    gates[i + 1] = Gate::Rz(flipped_q, theta);
    gates[i + 2] = flipped;
    true
}

/// `SWAP = CNOT1·CNOT2·CNOT1 = CNOT2·CNOT1·CNOT2`, so a SWAP next to either
/// CNOT collapses to two CNOTs.
fn fuse_swap<T: Real>(gates: &mut [Gate<T>], i: usize) -> bool {
    if i + 1 >= gates.len() {
        return false;
    }
    let pair = match (gates[i], gates[i + 1]) {
        (Gate::Cnot2, Gate::Swap) | (Gate::Swap, Gate::Cnot1) => [Gate::Cnot1, Gate::Cnot2],
        (Gate::Swap, Gate::Cnot2) | (Gate::Cnot1, Gate::Swap) => [Gate::Cnot2, Gate::Cnot1],
        _ => return false,
    };
    gates[i] = pair[0];
    gates[i + 1] = pair[1];
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dist_up_to_phase;
    use std::f64::consts::PI;

    type C = Circuit<f64>;

    fn same_unitary(a: &C, b: &C) -> bool {
        a.unitary().max_abs_diff(&b.unitary()) < 1e-12
    }

    #[test]
    fn merges_rotations() {
        let c = C::from_gates(vec![Gate::Rz(Qubit::Q0, 0.3), Gate::Rz(Qubit::Q0, 0.4)], 0.0);
        let s = simplify(&c);
        assert_eq!(s.gates.len(), 1);
        let Gate::Rz(Qubit::Q0, t) = s.gates[0] else { panic!("{:?}", s.gates) };
        assert!((t - 0.7).abs() < 1e-15);
    }

    #[test]
    fn cancels_cnot_pairs() {
        for g in [Gate::Cnot1, Gate::Cnot2, Gate::Cz] {
            let c = C::from_gates(vec![g, g], 0.0);
            assert!(simplify(&c).is_empty());
        }
    }

    #[test]
    fn cancels_through_control_rotation() {
        let c = C::from_gates(vec![Gate::Cnot1, Gate::Rz(Qubit::Q0, 0.2), Gate::Cnot1], 0.0);
        let s = simplify(&c);
        assert_eq!(s.gates, vec![Gate::Rz(Qubit::Q0, 0.2)]);
    }

    #[test]
    fn rz_commutes_through_cz() {
        let c = C::from_gates(vec![Gate::Rz(Qubit::Q1, 0.2), Gate::Cz, Gate::Rz(Qubit::Q1, -0.5)], 0.0);
        let s = simplify(&c);
        assert_eq!(s.len(), 2);
        assert!(same_unitary(&c, &s));
    }

    #[test]
    fn full_turn_keeps_phase() {
        let c = C::from_gates(vec![Gate::Ry(Qubit::Q0, PI), Gate::Ry(Qubit::Q0, PI)], 0.0);
        let s = simplify(&c);
        assert!(s.is_empty());
        assert!((s.global_phase() - PI).abs() < 1e-15);
        assert!(same_unitary(&c, &s));
    }

    #[test]
    fn swap_fusion() {
        let c = C::from_gates(vec![Gate::Cnot2, Gate::Swap], 0.0);
        let s = simplify(&c);
        assert_eq!(s.counts(true).cnot, 2);
        assert!(!s.gates.contains(&Gate::Swap));
        assert!(same_unitary(&c, &s));
        for pair in [
            [Gate::Swap, Gate::Cnot2],
            [Gate::Cnot1, Gate::Swap],
            [Gate::Swap, Gate::Cnot1],
        ] {
            let c = C::from_gates(pair.to_vec(), 0.0);
            let s = simplify(&c);
            assert_eq!(s.counts(true).cnot, 2);
            assert!(same_unitary(&c, &s));
        }
    }

    #[test]
    fn swap_kept_on_request() {
        let c = C::from_gates(vec![Gate::Cnot2, Gate::Swap], 0.0);
        assert_eq!(simplify_with(&c, false), c);
    }

    #[test]
    fn conjugated_rz_enables_cancellation() {
        let c = C::from_gates(vec![Gate::Cnot2, Gate::Cnot1, Gate::Rz(Qubit::Q1, 0.9), Gate::Cnot1], 0.0);
        let s = simplify(&c);
        assert!(s.len() < c.len());
        assert!(dist_up_to_phase(&c.unitary(), &s.unitary()) < 1e-12);
        assert_eq!(s.gates, vec![Gate::Rz(Qubit::Q0, 0.9), Gate::Cnot2]);
    }

    #[test]
    fn leaves_irreducible_circuits_alone() {
        let c = C::from_gates(vec![Gate::H(Qubit::Q0), Gate::Cnot1, Gate::Ry(Qubit::Q1, 0.4)], 0.1);
        assert_eq!(simplify(&c), c);
    }
}
