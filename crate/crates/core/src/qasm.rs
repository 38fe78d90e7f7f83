//! OpenQASM 2.0 output, plus a reader for the same statement subset.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

pub const HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

/// Renders `circuit` with one `q` register of the circuit width and one `c`
/// register per measured qubit. The `creg` line is omitted when nothing is
/// measured.
pub fn emit_qasm(circuit: &Circuit) -> String {
    let mut out = String::from(HEADER);
    writeln!(out, "qreg q[{}];", circuit.width()).unwrap();
    if !circuit.measured_qubits().is_empty() {
        writeln!(out, "creg c[{}];", circuit.measured_qubits().len()).unwrap();
    }
    for gate in circuit.gates() {
        match *gate {
            Gate::H { qubit } => writeln!(out, "h q[{qubit}];"),
            Gate::X { qubit } => writeln!(out, "x q[{qubit}];"),
            Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            Gate::Measure { qubit, bit } => writeln!(out, "measure q[{qubit}] -> c[{bit}];"),
        }
        .unwrap();
    }
    out
}

fn index(arg: &str, reg: &str, line: usize) -> Result<usize> {
    let err = || Error::Qasm {
        line,
        message: format!("expected {reg}[<index>], found `{arg}`"),
    };
    let inner = arg
        .trim()
        .strip_prefix(reg)
        .and_then(|s| s.strip_prefix('['))
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(err)?;
    inner.trim().parse().map_err(|_| err())
}

/// Parses the statements produced by [`emit_qasm`]: `qreg q`, `creg c`, `h`,
/// `x`, `cx` and `measure`. Comments and blank lines are skipped.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut statements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let code = raw.split("//").next().unwrap_or("").trim();
        if code.is_empty() {
            continue;
        }
        for stmt in code.split_inclusive(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let Some(body) = stmt.strip_suffix(';') else {
                return Err(Error::Qasm {
                    line,
                    message: format!("missing `;` after `{stmt}`"),
                });
            };
            statements.push((line, body.trim().to_string()));
        }
    }

    let mut iter = statements.into_iter();
    match iter.next() {
        Some((_, s)) if s == "OPENQASM 2.0" => {}
        Some((line, s)) => {
            return Err(Error::Qasm {
                line,
                message: format!("expected `OPENQASM 2.0;`, found `{s}`"),
            })
        }
        None => {
            return Err(Error::Qasm {
                line: 1,
                message: "empty program".into(),
            })
        }
    }

    let mut circuit: Option<Circuit> = None;
    let mut cbits: Option<usize> = None;
    let mut measures = Vec::new();
    for (line, stmt) in iter {
        let (op, args) = stmt.split_once(char::is_whitespace).unwrap_or((&stmt, ""));
        let args = args.trim();
        let qasm_err = |message: String| Error::Qasm { line, message };
        match op {
            "include" => {
                if args != "\"qelib1.inc\"" {
                    return Err(qasm_err(format!("unsupported include {args}")));
                }
            }
            "qreg" => {
                if circuit.is_some() {
                    return Err(qasm_err("only one qreg is supported".into()));
                }
                circuit = Some(Circuit::new(index(args, "q", line)?));
            }
            "creg" => {
                if cbits.is_some() {
                    return Err(qasm_err("only one creg is supported".into()));
                }
                cbits = Some(index(args, "c", line)?);
            }
            "h" | "x" | "cx" | "measure" => {
                let c = circuit
                    .as_mut()
                    .ok_or_else(|| qasm_err(format!("`{op}` before qreg declaration")))?;
                let gate = match op {
                    "h" => Gate::h(index(args, "q", line)?),
                    "x" => Gate::x(index(args, "q", line)?),
                    "cx" => {
                        let (a, b) = args
                            .split_once(',')
                            .ok_or_else(|| qasm_err(format!("cx needs two operands: `{args}`")))?;
                        Gate::cnot(index(a, "q", line)?, index(b, "q", line)?)
                    }
                    _ => {
                        let (a, b) = args
                            .split_once("->")
                            .ok_or_else(|| qasm_err(format!("malformed measure `{args}`")))?;
                        let bit = index(b, "c", line)?;
                        if bit >= cbits.unwrap_or(0) {
                            return Err(qasm_err(format!("classical bit c[{bit}] out of range")));
                        }
                        measures.push((line, index(a, "q", line)?, bit));
                        continue;
                    }
                };
                c.push(gate).map_err(|e| qasm_err(e.to_string()))?;
            }
            other => return Err(qasm_err(format!("unsupported statement `{other}`"))),
        }
    }

    let mut circuit = circuit.ok_or(Error::Qasm {
        line: text.lines().count(),
        message: "no qreg declared".into(),
    })?;
    // Measurements are terminal, so reorder by classical bit.
    measures.sort_by_key(|&(_, _, bit)| bit);
    for (expected, &(line, qubit, bit)) in measures.iter().enumerate() {
        if bit != expected {
            return Err(Error::Qasm {
                line,
                message: format!("classical bit c[{expected}] never written"),
            });
        }
        circuit
            .push(Gate::Measure { qubit, bit })
            .map_err(|e| Error::Qasm {
                line,
                message: e.to_string(),
            })?;
    }
    Ok(circuit)
}
