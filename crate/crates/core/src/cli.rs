//! Command-line front end.
//!
//! Exit codes: 0 success, 1 non-unitary input, 2 verification failure (or an
//! internal numerical failure), 3 I/O, parse or usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::circuit::{emit_circuit_text, format_float, parse_circuit_text, Circuit};
use crate::ep::{ep_exact, ep_monte_carlo};
use crate::error::Error;
use crate::kak::{kak_decompose_seeded, zyz_decompose};
use crate::linalg::{dist_up_to_phase, Complex, ComplexMat4};
use crate::synth::{class_of_params, synth_u4_seeded};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_UNITARY: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// JSON matrix file: `{"dim": 4, "re": [[...]], "im": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMat4<f64>) -> Self {
        let rows = |f: fn(&Complex<f64>) -> f64| (0..4).map(|r| (0..4).map(|c| f(&m[(r, c)])).collect()).collect();
        Self { dim: 4, re: rows(|z| z.re), im: rows(|z| z.im) }
    }

    pub fn to_matrix(&self) -> Result<ComplexMat4<f64>, String> {
        if self.dim != 4 {
            return Err(format!("dim must be 4, got {}", self.dim));
        }
        for (name, rows) in [("re", &self.re), ("im", &self.im)] {
            if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                return Err(format!("`{name}` must be a 4×4 array"));
            }
            if rows.iter().flatten().any(|x| !x.is_finite()) {
                return Err(format!("`{name}` contains a non-finite entry"));
            }
        }
        Ok(ComplexMat4::from_fn(|r, c| Complex::new(self.re[r][c], self.im[r][c])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CliConfig {
    pub tol: f64,
    pub seed: u64,
    pub expand_swap: bool,
    pub simplify: bool,
    pub mc: bool,
    pub mc_samples: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self { tol: 1e-9, seed: 0, expand_swap: true, simplify: true, mc: false, mc_samples: 100_000 }
    }
}

#[derive(Parser, Debug)]
#[command(name = "kaksynth", version, about = "Optimal two-qubit circuit synthesis and analysis")]
struct Args {
    /// Unitarity and verification tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for randomized internals.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit SWAP gates instead of fusing them into CNOTs.
    #[arg(long, global = true)]
    keep_swap: bool,
    /// Skip the peephole simplifier.
    #[arg(long, global = true)]
    no_simplify: bool,
    /// Also estimate entangling power by sampling.
    #[arg(long, global = true)]
    mc: bool,
    #[arg(long, global = true, default_value_t = 100_000)]
    mc_samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize a circuit for a matrix file.
    Synth { matrix: PathBuf },
    /// Print the canonical decomposition of a matrix file.
    Kak { matrix: PathBuf },
    /// Print the entangling power of a matrix file.
    Ep { matrix: PathBuf },
    /// Check a circuit file against a matrix file.
    Verify { matrix: PathBuf, circuit: PathBuf },
    /// Print the unitary of a circuit file as a matrix file.
    Simulate { circuit: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotUnitary { .. } => EXIT_NOT_UNITARY,
            Error::Parse { .. } => EXIT_INPUT,
            _ => EXIT_VERIFY,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::input(format!("write failed: {e}"))
    }
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{shown}");
                EXIT_OK
            } else {
                let _ = write!(err, "{shown}");
                EXIT_INPUT
            };
        }
    };
    let config = CliConfig {
        tol: args.tol,
        seed: args.seed,
        expand_swap: !args.keep_swap,
        simplify: !args.no_simplify,
        mc: args.mc,
        mc_samples: args.mc_samples,
    };
    let result = if config.tol.is_nan() || config.tol <= 0.0 {
        Err(Failure::input("--tol must be positive"))
    } else if config.mc_samples < 100 {
        Err(Failure::input("--mc-samples must be at least 100"))
    } else {
        match &args.command {
            Command::Synth { matrix } => cmd_synth(matrix, &config, out),
            Command::Kak { matrix } => cmd_kak(matrix, &config, out),
            Command::Ep { matrix } => cmd_ep(matrix, &config, out),
            Command::Verify { matrix, circuit } => cmd_verify(matrix, circuit, &config, out),
            Command::Simulate { circuit } => cmd_simulate(circuit, out),
        }
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &FsPath) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &FsPath) -> Result<ComplexMat4<f64>, Failure> {
    let file: MatrixFile =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    file.to_matrix().map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Loads a matrix that must be unitary within `tol`, then polishes it onto the
/// unitary group so downstream tolerances apply to rounding only.
fn load_unitary(path: &FsPath, tol: f64) -> Result<ComplexMat4<f64>, Failure> {
    let m = load_matrix(path)?;
    let dev = m.unitarity_deviation();
    if dev > tol {
        return Err(Error::NotUnitary { deviation: dev }.into());
    }
    Ok(polish_unitary(&m))
}

/// Newton–Schulz steps `X ← X·(3I − X†X)/2` toward the nearest unitary.
fn polish_unitary(m: &ComplexMat4<f64>) -> ComplexMat4<f64> {
    let three = ComplexMat4::identity().scale_real(3.0);
    let mut x = *m;
    for _ in 0..4 {
        if x.unitarity_deviation() < 1e-15 {
            break;
        }
        x = (x * (three - x.adjoint() * x)).scale_real(0.5);
    }
    x
}

fn load_circuit(path: &FsPath) -> Result<Circuit<f64>, Failure> {
    let text = read(path)?;
    parse_circuit_text(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn cmd_synth(path: &FsPath, config: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let u = load_unitary(path, config.tol)?;
    let report = synth_u4_seeded(&u, config.expand_swap, config.simplify, config.seed)?;
    write!(out, "{}", emit_circuit_text(&report.circuit))?;
    writeln!(out, "# report:")?;
    writeln!(out, "# cnot_class {}", report.cnot_class)?;
    writeln!(out, "# path {}", report.path)?;
    writeln!(out, "# cnot {}", report.counts.cnot)?;
    writeln!(out, "# one_qubit {}", report.counts.one_qubit)?;
    writeln!(out, "# swap {}", report.counts.swap)?;
    writeln!(out, "# residual {:e}", report.residual)?;
    Ok(EXIT_OK)
}

fn cmd_kak(path: &FsPath, config: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let u = load_unitary(path, config.tol)?;
    let d = kak_decompose_seeded(&u, config.seed)?;
    let locals = [d.a1, d.a2, d.a3, d.a4].map(|a| zyz_decompose(&a));
    let mut phase = d.phase;
    let mut triples = Vec::with_capacity(4);
    for z in locals {
        let z = z?;
        phase += z.phase;
        triples.push(z);
    }
    writeln!(out, "alpha {}", format_float(d.alpha))?;
    writeln!(out, "beta {}", format_float(d.beta))?;
    writeln!(out, "gamma {}", format_float(d.gamma))?;
    writeln!(out, "phase {}", format_float(crate::num::wrap_angle(phase)))?;
    for (name, z) in ["a1", "a2", "a3", "a4"].iter().zip(&triples) {
        writeln!(out, "{name} {} {} {}", format_float(z.alpha), format_float(z.theta), format_float(z.beta))?;
    }
    writeln!(out, "# cnot_class {}", class_of_params(d.params()))?;
    Ok(EXIT_OK)
}

fn cmd_ep(path: &FsPath, config: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let u = load_unitary(path, config.tol)?;
    writeln!(out, "ep {}", format_float(ep_exact(&u)?))?;
    if config.mc {
        let (mean, se) = ep_monte_carlo(&u, config.mc_samples, config.seed);
        writeln!(out, "mc_mean {}", format_float(mean))?;
        writeln!(out, "mc_std_error {}", format_float(se))?;
        writeln!(out, "mc_samples {}", config.mc_samples)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(matrix: &FsPath, circuit: &FsPath, config: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let u = load_matrix(matrix)?;
    let c = load_circuit(circuit)?;
    let d = dist_up_to_phase(&c.unitary(), &u);
    writeln!(out, "distance {d:e}")?;
    if d < config.tol {
        writeln!(out, "pass")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "fail")?;
        Ok(EXIT_VERIFY)
    }
}

fn cmd_simulate(circuit: &FsPath, out: &mut dyn Write) -> Result<i32, Failure> {
    let c = load_circuit(circuit)?;
    let json = serde_json::to_string(&MatrixFile::from_matrix(&c.unitary()))
        .map_err(|e| Failure::input(format!("serialization failed: {e}")))?;
    writeln!(out, "{json}")?;
    Ok(EXIT_OK)
}
