//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! phase 0.7853981633974483
//! ry q1 1.5707963267948966
//! rz q0 -0.5
//! h q0
//! cx q1 q0
//! cz q0 q1
//! swap q0 q1
//! ```
//!
//! `cx` lists the control first. Numbers are written in the shortest form that
//! parses back to the identical value (at most 17 significant digits for
//! `f64`), so `parse(emit(c)) == c` bit for bit.

use std::fmt::Write as _;

use super::{Circuit, Gate, Qubit};
use crate::error::{Error, Result};
use crate::num::Real;

pub fn format_float<T: Real>(x: T) -> String {
    format!("{x}")
}

fn qubit_token(q: Qubit) -> &'static str {
    match q {
        Qubit::Q0 => "q0",
        Qubit::Q1 => "q1",
    }
}

pub fn emit_circuit_text<T: Real>(c: &Circuit<T>) -> String {
    let mut out = String::new();
    writeln!(out, "phase {}", format_float(c.global_phase())).unwrap();
    for g in &c.gates {
        let line = match *g {
            Gate::Ry(q, t) => format!("ry {} {}", qubit_token(q), format_float(t)),
            Gate::Rz(q, t) => format!("rz {} {}", qubit_token(q), format_float(t)),
            Gate::H(q) => format!("h {}", qubit_token(q)),
            Gate::S(q) => format!("s {}", qubit_token(q)),
            Gate::Sdg(q) => format!("sdg {}", qubit_token(q)),
            Gate::X(q) => format!("x {}", qubit_token(q)),
            Gate::Y(q) => format!("y {}", qubit_token(q)),
            Gate::Z(q) => format!("z {}", qubit_token(q)),
            Gate::Cnot1 => "cx q0 q1".to_string(),
            Gate::Cnot2 => "cx q1 q0".to_string(),
            Gate::Cz => "cz q0 q1".to_string(),
            Gate::Swap => "swap q0 q1".to_string(),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_circuit_text<T: Real>(text: &str) -> Result<Circuit<T>> {
    let mut gates = Vec::new();
    let mut phase: Option<T> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |reason: String| Error::Parse { line: line_no, reason };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let op = tokens[0];
        let args = &tokens[1..];

        let want = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(err(format!("`{op}` takes {n} argument(s), got {}", args.len())))
            }
        };
        let qubit = |tok: &str| -> Result<Qubit> {
            match tok {
                "q0" => Ok(Qubit::Q0),
                "q1" => Ok(Qubit::Q1),
                other => Err(err(format!("invalid qubit `{other}`"))),
            }
        };
        let float = |tok: &str| -> Result<T> {
            match tok.parse::<T>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(err(format!("invalid number `{tok}`"))),
            }
        };
        let pair = |a: &str, b: &str| -> Result<(Qubit, Qubit)> {
            let (p, q) = (qubit(a)?, qubit(b)?);
            if p == q {
                Err(err(format!("`{op}` needs two distinct qubits")))
            } else {
                Ok((p, q))
            }
        };

        let gate = match op {
            "phase" => {
                want(1)?;
                if phase.is_some() {
                    return Err(err("`phase` given more than once".into()));
                }
                phase = Some(float(args[0])?);
                continue;
            }
            "ry" | "rz" => {
                want(2)?;
                let (q, t) = (qubit(args[0])?, float(args[1])?);
                if op == "ry" {
                    Gate::Ry(q, t)
                } else {
                    Gate::Rz(q, t)
                }
            }
            "h" | "s" | "sdg" | "x" | "y" | "z" => {
                want(1)?;
                let q = qubit(args[0])?;
                match op {
                    "h" => Gate::H(q),
                    "s" => Gate::S(q),
                    "sdg" => Gate::Sdg(q),
                    "x" => Gate::X(q),
                    "y" => Gate::Y(q),
                    _ => Gate::Z(q),
                }
            }
            "cx" => {
                want(2)?;
                match pair(args[0], args[1])? {
                    (Qubit::Q0, _) => Gate::Cnot1,
                    (Qubit::Q1, _) => Gate::Cnot2,
                }
            }
            "cz" | "swap" => {
                want(2)?;
                pair(args[0], args[1])?;
                if op == "cz" {
                    Gate::Cz
                } else {
                    Gate::Swap
                }
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        };
        gates.push(gate);
    }
    Ok(Circuit::from_gates(gates, phase.unwrap_or_else(T::zero)))
}
