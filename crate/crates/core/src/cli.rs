//! Command-line front end.
//!
//! Every command reads JSON files (`-` for stdin), writes one JSON document
//! to stdout and reports failures on stderr as `{"error", "detail"}`.
//! Exit status: 0 on success, 1 for malformed input, 2 for a domain
//! violation.

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::clifford::{eta_s, in_normalizer, logical_action};
use crate::error::{Error, Result};
use crate::json::*;
use crate::lattice::{gram_from_generator, DEFAULT_GENERATOR_TOL};
use crate::normal_form::{frobenius_form, is_gram_preserving, lattice_type};
use crate::transport::{braid_lift, lift, snap_flow, DEFAULT_SNAP_TOL};

#[derive(Parser, Debug)]
#[command(
    name = "gkp",
    version,
    about = "Exact lattice algebra for multi-mode GKP codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Frobenius normal form with its unimodular certificate.
    Frobenius {
        #[arg(long)]
        gram: String,
    },
    /// Lattice type (d₁, …, dₙ).
    Type {
        #[arg(long)]
        gram: String,
    },
    /// Gram matrix of the dual lattice.
    DualGram {
        #[arg(long)]
        gram: String,
    },
    IsAutomorphism {
        #[arg(long)]
        gram: String,
        #[arg(long)]
        u: String,
    },
    /// Integral Gram matrix of a real generator matrix.
    GramFromGenerator {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_GENERATOR_TOL)]
        tol: f64,
    },
    /// Sector of the code conjugated by an automorphism.
    Conjugate {
        #[arg(long)]
        code: String,
        #[arg(long)]
        u: String,
    },
    Displace {
        #[arg(long)]
        code: String,
        /// JSON array or comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    EtaS {
        #[arg(long)]
        code: String,
        #[arg(long)]
        u: String,
    },
    Normalizer {
        #[arg(long)]
        code: String,
        #[arg(long)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    LogicalAction {
        #[arg(long)]
        code: String,
        #[arg(long)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Lift a path word; exits 2 when the path does not close.
    Lift {
        #[arg(long)]
        path: String,
    },
    /// Gate of a braid word such as `121` or `1,-2,1`.
    Braid {
        #[arg(long)]
        d: u64,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Replace flow runs by the automorphisms they end on.
    Snap {
        #[arg(long)]
        path: String,
        #[arg(long, default_value_t = DEFAULT_SNAP_TOL)]
        tol: f64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(v: &Value) -> Self {
        Self {
            status: 0,
            stdout: format!("{v}\n"),
            stderr: String::new(),
        }
    }

    fn failure(e: &Error) -> Self {
        Self {
            status: exit_status(e),
            stdout: String::new(),
            stderr: error_json(e.code(), &e.to_string()),
        }
    }
}

pub fn exit_status(e: &Error) -> i32 {
    if e.is_malformed() {
        1
    } else {
        2
    }
}

fn error_json(code: &str, detail: &str) -> String {
    format!("{}\n", json!({ "error": code, "detail": detail }))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    status: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Outcome {
                    status: 1,
                    stdout: String::new(),
                    stderr: error_json("Usage", e.to_string().trim()),
                },
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome::failure(&e),
    }
}

fn read_source(path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Malformed(format!("cannot read stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("cannot read {path}: {e}")))?;
    }
    Ok(s)
}

fn read_json(path: &str) -> Result<Value> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{path}: {e}")))
}

/// `--h` value: a JSON document (array or `{"h"}`/`{"eta_s"}` object) or
/// comma-separated rationals.
fn parse_h(s: &str) -> Result<crate::lattice::DualCoords> {
    match serde_json::from_str::<Value>(s) {
        Ok(v) if v.is_array() || v.is_object() => parse_dual_coords(&v),
        _ => {
            let parts: Vec<&str> = s
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .collect();
            let v = parts
                .iter()
                .map(|p| parse_rat_str(p))
                .collect::<Result<Vec<_>>>()?;
            Ok(crate::lattice::DualCoords(v))
        }
    }
}

/// Braid word: digits (`121`) or separated signed generators (`1,-2 1`).
pub fn parse_word(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.contains(|c: char| c == ',' || c.is_whitespace() || c == '-') {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<i64>()
                    .map_err(|_| Error::Malformed(format!("bad braid generator {p:?}")))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(i64::from)
                    .ok_or_else(|| Error::Malformed(format!("bad braid generator {c:?}")))
            })
            .collect()
    }
}

fn dims_match(code: &crate::code::GkpCode, u: &crate::exact::IntMatrix) -> Result<()> {
    if u.rows() != code.dim() || !u.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, code has dimension {}",
            u.rows(),
            u.cols(),
            code.dim()
        )));
    }
    Ok(())
}

fn execute(cmd: Command) -> Result<Outcome> {
    let v = match cmd {
        Command::Frobenius { gram } => {
            let f = frobenius_form(&parse_gram(&read_json(&gram)?)?);
            json!({ "type": type_to_json(&f.d), "u": int_matrix_to_json(&f.u) })
        }
        Command::Type { gram } => {
            json!({ "type": type_to_json(&lattice_type(&parse_gram(&read_json(&gram)?)?)) })
        }
        Command::DualGram { gram } => {
            let a = parse_gram(&read_json(&gram)?)?;
            json!({ "dual_gram": matrix_to_json(&a.dual_gram(), rat_to_json) })
        }
        Command::IsAutomorphism { gram, u } => {
            let a = parse_gram(&read_json(&gram)?)?;
            let u = parse_unimodular(&read_json(&u)?)?;
            if u.rows() != a.dim() || !u.is_square() {
                return Err(Error::DimensionMismatch(
                    "matrix and Gram sizes differ".into(),
                ));
            }
            json!({ "is_automorphism": is_gram_preserving(&a, &u) })
        }
        Command::GramFromGenerator { matrix, tol } => {
            let m = parse_float_rows(unwrap_matrix(&read_json(&matrix)?))?;
            json!({ "gram": int_matrix_to_json(gram_from_generator(&m, tol)?.matrix()) })
        }
        Command::Conjugate { code, u } => {
            let c = parse_code(&read_json(&code)?)?;
            let u = parse_unimodular(&read_json(&u)?)?;
            dims_match(&c, &u)?;
            code_to_json(&c.conjugate_by_automorphism(&u)?)
        }
        Command::Displace { code, h } => {
            let c = parse_code(&read_json(&code)?)?;
            let h = parse_h(&h)?;
            if h.0.len() != c.dim() {
                return Err(Error::DimensionMismatch(
                    "displacement has the wrong length".into(),
                ));
            }
            code_to_json(&c.displace(&h))
        }
        Command::EtaS { code, u } => {
            let c = parse_code(&read_json(&code)?)?;
            let u = parse_unimodular(&read_json(&u)?)?;
            dims_match(&c, &u)?;
            json!({ "eta_s": rat_vec_to_json(&eta_s(&c, &u)?.0) })
        }
        Command::Normalizer { code, u, h } => {
            let c = parse_code(&read_json(&code)?)?;
            let u = parse_unimodular(&read_json(&u)?)?;
            dims_match(&c, &u)?;
            let h = parse_h(&h)?;
            json!({ "in_normalizer": in_normalizer(&c, &h, &u) })
        }
        Command::LogicalAction { code, u, h } => {
            let c = parse_code(&read_json(&code)?)?;
            let u = parse_unimodular(&read_json(&u)?)?;
            dims_match(&c, &u)?;
            let h = parse_h(&h)?;
            if h.0.len() != c.dim() {
                return Err(Error::DimensionMismatch(
                    "displacement has the wrong length".into(),
                ));
            }
            gate_to_json(&logical_action(&c, &h, &u)?)
        }
        Command::Lift { path } => {
            let r = lift(&parse_path(&read_json(&path)?)?)?;
            let doc = json!({
                "endpoint": code_to_json(&r.endpoint),
                "is_loop": r.is_loop,
                "gate": r.gate.as_ref().map_or(Value::Null, gate_to_json),
                "u": int_matrix_to_json(&r.element.u),
                "h": rat_vec_to_json(&r.element.h.0),
            });
            if !r.is_loop {
                let e = Error::NotALoop;
                return Ok(Outcome {
                    status: exit_status(&e),
                    stdout: format!("{doc}\n"),
                    stderr: error_json(e.code(), &e.to_string()),
                });
            }
            doc
        }
        Command::Braid { d, word } => {
            let (gate, u) = braid_lift(d, &parse_word(&word)?)?;
            json!({ "unimodular": int_matrix_to_json(&u), "gate": gate_to_json(&gate) })
        }
        Command::Snap { path, tol } => {
            path_to_json(&snap_flow(&parse_path(&read_json(&path)?)?, tol)?)
        }
    };
    Ok(Outcome::ok(&v))
}

fn unwrap_matrix(v: &Value) -> &Value {
    match v {
        Value::Object(o) => o.get("matrix").unwrap_or(v),
        _ => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_words() {
        assert_eq!(parse_word("121").unwrap(), vec![1, 2, 1]);
        assert_eq!(parse_word("1,-2, 1").unwrap(), vec![1, -2, 1]);
        assert_eq!(parse_word("-1 2").unwrap(), vec![-1, 2]);
        assert_eq!(parse_word("").unwrap(), Vec::<i64>::new());
        assert!(parse_word("1a").is_err());
    }

    #[test]
    fn displacement_vectors() {
        let h = parse_h("0,1/2").unwrap();
        assert_eq!(h.0, vec![crate::exact::rat(0, 1), crate::exact::rat(1, 2)]);
        assert_eq!(parse_h("[0, \"1/2\"]").unwrap(), h);
        assert_eq!(parse_h("{\"eta_s\": [0, \"1/2\"]}").unwrap(), h);
        assert!(parse_h("0,0.5").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        let out = run(["gkp", "frobenius"]);
        assert_eq!(out.status, 1);
        let out = run(["gkp", "nonsense"]);
        assert_eq!(out.status, 1);
        let out = run(["gkp", "braid", "--d", "3", "--word", "13"]);
        assert_eq!(out.status, 1);
        assert!(out.stderr.contains("InvalidGenerator"));
    }

    #[test]
    fn braid_command() {
        let out = run(["gkp", "braid", "--d", "2", "--word", "121"]);
        assert_eq!(out.status, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["unimodular"], json!([[0, 1], [-1, 0]]));
    }
}
