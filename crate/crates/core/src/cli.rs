//! Command dispatch shared by the binary and the fixture runner.

use serde_json::{json, Value};

use crate::criterion::{
    block_sequence, check_divisor_free, check_sequence, find_candidate_nu, positive_char_split, CertificateKind, CheckOptions, FreenessCertificate,
    SplitCertificate, Verdict,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::{algebraic_independence, syzygy_basis};
use crate::matrix::{DetMethod, DivisorClass, PolyMatrix};
use crate::parse::parse_poly;
use crate::poly::{MonomialOrder, Ring};
use crate::problem::{Options, Problem};

pub const CERTIFICATE_SCHEMA: &str = "logfree-certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckDivisor,
    CheckSequence,
    Poschar,
    Syzygies,
    DivisorOfMap,
    Independence,
    Fixtures,
}

impl Command {
    pub const ALL: [Command; 7] =
        [Command::CheckDivisor, Command::CheckSequence, Command::Poschar, Command::Syzygies, Command::DivisorOfMap, Command::Independence, Command::Fixtures];

    pub fn name(self) -> &'static str {
        match self {
            Command::CheckDivisor => "check-divisor",
            Command::CheckSequence => "check-sequence",
            Command::Poschar => "poschar",
            Command::Syzygies => "syzygies",
            Command::DivisorOfMap => "divisor-of-map",
            Command::Independence => "independence",
            Command::Fixtures => "fixtures",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::InvalidInput(format!("unknown command `{s}`")))
    }
}

/// Exit status and the JSON document to write.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub document: Value,
}

impl Outcome {
    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document).expect("json");
        s.push('\n');
        s
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CERTIFIED: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;

pub fn error_object(e: &Error) -> Value {
    let mut obj = json!({
        "code": e.code(),
        "message": e.to_string(),
        "location": e.location(),
    });
    match e {
        Error::NotDivisible { remainder } => obj["remainder"] = json!(remainder.to_string()),
        Error::IndependenceFailed { witness } => obj["witness"] = json!(witness.to_string()),
        _ => {}
    }
    obj
}

pub fn error_outcome(command: &str, e: &Error) -> Outcome {
    Outcome {
        exit_code: EXIT_PRECONDITION,
        document: json!({
            "schema": CERTIFICATE_SCHEMA,
            "command": command,
            "verdict": "PreconditionFailed",
            "error": error_object(e),
        }),
    }
}

fn field_json(f: FieldSpec) -> Value {
    serde_json::to_value(f).expect("field")
}

fn matrix_json(m: &PolyMatrix) -> Value {
    json!(m.to_strings())
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Free => "Free",
        Verdict::NotCertified => "NotCertified",
        Verdict::PreconditionFailed => "PreconditionFailed",
    }
}

pub fn freeness_json(c: &FreenessCertificate, command: Command) -> Value {
    let ring = c.sigma.ring();
    json!({
        "schema": CERTIFICATE_SCHEMA,
        "command": command.name(),
        "kind": match c.kind { CertificateKind::Divisor => "divisor", CertificateKind::Sequence => "sequence" },
        "verdict": verdict_name(c.verdict),
        "field": field_json(ring.field),
        "variables": ring.vars,
        "order": c.order.name(),
        "method": c.method,
        "h": c.h.to_string(),
        "g_theta": c.g_theta.to_string(),
        "g_alpha": c.g_alpha.to_string(),
        "g_alphagamma": c.g_alphagamma.to_string(),
        "identity_holds": c.identity_holds(),
        "splitting_degrees": c.splitting_degrees,
        "twists": c.twists(),
        "chern": {
            "sum_splitting": c.chern.sum_splitting,
            "sum_twists": c.chern.sum_twists,
            "g_alpha_degree": c.chern.g_alpha_degree,
            "holds": c.chern.holds(),
        },
        "inputs": {
            "sequence": c.sigma.polys.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "nu": matrix_json(&c.nu),
            "nu_column_degrees": c.splitting_degrees,
            "gamma": matrix_json(&c.gamma),
            "theta": matrix_json(&c.theta),
        },
        "notes": c.notes,
    })
}

pub fn split_json(c: &SplitCertificate) -> Value {
    let ring = c.sigma.ring();
    json!({
        "schema": CERTIFICATE_SCHEMA,
        "command": Command::Poschar.name(),
        "verdict": if c.certified { "Free" } else { "NotCertified" },
        "field": field_json(ring.field),
        "variables": ring.vars,
        "order": ring.order.name(),
        "char_p": c.char_p,
        "d": c.d,
        "printed_formula_d": c.printed_formula_d,
        "formula_agrees": c.formula_agrees,
        "gcd_degree": c.gcd_degree,
        "oracle_degrees": c.oracle_degrees,
        "certified": c.certified,
        "euler_annihilated": c.euler_annihilated,
        "syzygy_pair": c.syzygy_pair.as_ref().map(matrix_json),
        "pair_minor_gcd": c.pair_minor_gcd.as_ref().map(|g| g.to_string()),
        "degree_bound": c.degree_bound,
        "inputs": { "sequence": c.sigma.polys.iter().map(|f| f.to_string()).collect::<Vec<_>>() },
        "notes": c.notes,
    })
}

fn divisor_json(d: &DivisorClass) -> Value {
    json!({
        "equation": d.equation.to_string(),
        "degree": d.degree,
        "minor_size": d.minor_size,
        "rank_deficient": d.rank_deficient,
    })
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::Free => EXIT_OK,
        Verdict::NotCertified => EXIT_NOT_CERTIFIED,
        Verdict::PreconditionFailed => EXIT_PRECONDITION,
    }
}

fn check_options(opts: &Options) -> CheckOptions {
    CheckOptions { method: opts.method.unwrap_or_default(), assume_independent: opts.assume_independent.unwrap_or(false) }
}

fn default_bound(sigma: &crate::criterion::SequenceSpec) -> i64 {
    1 + sigma.degrees.iter().map(|&d| d as i64).sum::<i64>()
}

/// Run `command` on `problem`; `flags` override the problem's options.
pub fn run(command: Command, problem: &Problem, flags: &Options) -> Outcome {
    if command == Command::Fixtures {
        return crate::fixtures::run_corpus(flags);
    }
    match dispatch(command, problem, flags) {
        Ok(o) => o,
        Err(e) => error_outcome(command.name(), &e),
    }
}

fn dispatch(command: Command, problem: &Problem, flags: &Options) -> Result<Outcome> {
    let opts = problem.options.overridden_by(flags);
    let ring = problem.ring(&opts)?;
    match command {
        Command::CheckDivisor => {
            let sigma = problem.sequence(&ring)?;
            if sigma.k() != 1 {
                return Err(Error::LengthMismatch { expected: 1, got: sigma.k() });
            }
            let (nu, searched) = match problem.nu(&ring)? {
                Some(nu) => (nu, false),
                None => (first_candidate(&sigma, &opts)?, true),
            };
            let mut cert = check_divisor_free(&sigma.polys[0], &nu, opts.method.unwrap_or_default())?;
            if searched {
                cert.notes.push("nu found by syzygy search".into());
            }
            Ok(Outcome { exit_code: verdict_exit(cert.verdict), document: freeness_json(&cert, command) })
        }
        Command::CheckSequence => {
            let copts = check_options(&opts);
            let (sigma, nu, gamma, searched) = match problem.blocks(&ring)? {
                Some(blocks) => {
                    let inst = block_sequence(&ring, &blocks, opts.syzygy_degree_bound)?;
                    if !problem.sequence.is_empty() && problem.polys(&ring)? != inst.sigma.polys {
                        return Err(Error::InvalidInput("sequence disagrees with blocks".into()));
                    }
                    let gamma = match problem.gamma {
                        Some(_) => problem.gamma(&ring)?,
                        None => inst.gamma,
                    };
                    (inst.sigma, problem.nu(&ring)?.unwrap_or(inst.nu), gamma, false)
                }
                None => {
                    let sigma = problem.sequence(&ring)?;
                    let (nu, searched) = match problem.nu(&ring)? {
                        Some(nu) => (nu, false),
                        None => (first_candidate(&sigma, &opts)?, true),
                    };
                    (sigma, nu, problem.gamma(&ring)?, searched)
                }
            };
            let mut cert = check_sequence(&sigma, &nu, &gamma, copts)?;
            if searched {
                cert.notes.push("nu found by syzygy search".into());
            }
            Ok(Outcome { exit_code: verdict_exit(cert.verdict), document: freeness_json(&cert, command) })
        }
        Command::Poschar => {
            let sigma = problem.sequence(&ring)?;
            let cert = positive_char_split(&sigma, opts.syzygy_degree_bound)?;
            let exit_code = if cert.certified { EXIT_OK } else { EXIT_NOT_CERTIFIED };
            Ok(Outcome { exit_code, document: split_json(&cert) })
        }
        Command::Syzygies => {
            let m = match problem.grid(&problem.matrix, &ring)? {
                Some(m) => m,
                None => problem.sequence(&ring)?.jacobian(),
            };
            let syz = syzygy_basis(&m, opts.syzygy_degree_bound)?;
            let cols = syz.as_matrix(&ring, m.cols());
            Ok(Outcome {
                exit_code: EXIT_OK,
                document: json!({
                    "schema": CERTIFICATE_SCHEMA,
                    "command": command.name(),
                    "field": field_json(ring.field),
                    "variables": ring.vars,
                    "order": ring.order.name(),
                    "matrix": matrix_json(&m),
                    "syzygies": matrix_json(&cols),
                    "degrees": syz.degrees,
                    "degree_bound": syz.degree_bound,
                    "truncated": syz.truncated,
                    "annihilated": m.mat_mul(&cols)?.is_zero(),
                }),
            })
        }
        Command::DivisorOfMap => {
            let m = match problem.grid(&problem.matrix, &ring)? {
                Some(m) => m,
                None => problem.sequence(&ring)?.jacobian(),
            };
            let dm = m.divisor_of_map()?;
            let mut doc = json!({
                "schema": CERTIFICATE_SCHEMA,
                "command": command.name(),
                "field": field_json(ring.field),
                "variables": ring.vars,
                "order": ring.order.name(),
                "matrix": matrix_json(&m),
                "divisor": divisor_json(&dm),
            });
            if let Some(t) = problem.grid(&problem.compose_with, &ring)? {
                let prod = m.mat_mul(&t)?;
                let dt = t.divisor_of_map()?;
                let dp = prod.divisor_of_map()?;
                let mut notes = Vec::new();
                let rank = prod.generic_rank();
                if rank < t.cols() {
                    notes.push(format!("the composite has generic rank {rank} < {} columns, so it is not injective", t.cols()));
                }
                if dt.equation == dp.equation {
                    notes.push(format!("dv(right factor) = dv(composite) = V({}) even though the composite is rank deficient", dp.equation));
                }
                doc["compose_with"] = matrix_json(&t);
                doc["composite"] = matrix_json(&prod);
                doc["compose_with_divisor"] = divisor_json(&dt);
                doc["composite_divisor"] = divisor_json(&dp);
                doc["composite_rank"] = json!(rank);
                doc["notes"] = json!(notes);
            }
            Ok(Outcome { exit_code: EXIT_OK, document: doc })
        }
        Command::Independence => {
            let polys = problem.polys(&ring)?;
            let ind = algebraic_independence(&polys)?;
            Ok(Outcome {
                exit_code: if ind.independent { EXIT_OK } else { EXIT_NOT_CERTIFIED },
                document: json!({
                    "schema": CERTIFICATE_SCHEMA,
                    "command": command.name(),
                    "field": field_json(ring.field),
                    "variables": ring.vars,
                    "sequence": polys.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "independent": ind.independent,
                    "witness": ind.witness.map(|w| w.to_string()),
                }),
            })
        }
        Command::Fixtures => unreachable!(),
    }
}

fn first_candidate(sigma: &crate::criterion::SequenceSpec, opts: &Options) -> Result<PolyMatrix> {
    let bound = opts.syzygy_degree_bound.unwrap_or_else(|| default_bound(sigma));
    find_candidate_nu(sigma, bound)?.into_iter().next().ok_or_else(|| Error::InvalidInput(format!("no nu given and none found up to degree {bound}")))
}

fn str_at<'a>(doc: &'a Value, key: &str) -> Result<&'a str> {
    doc[key].as_str().ok_or_else(|| Error::InvalidInput(format!("certificate lacks `{key}`")))
}

/// Recompute a freeness certificate from its echoed inputs; true when every
/// recorded polynomial matches and `g_theta·g_alpha = h·g_alphagamma`.
pub fn recheck(doc: &Value) -> Result<bool> {
    let field: FieldSpec = serde_json::from_value(doc["field"].clone()).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let vars: Vec<String> = serde_json::from_value(doc["variables"].clone()).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let order = MonomialOrder::parse(str_at(doc, "order")?)?;
    let method = DetMethod::parse(str_at(doc, "method")?)?;
    let ring = Ring::from_names(field, vars, order);
    let inputs = &doc["inputs"];
    let grid = |k: &str| -> Result<PolyMatrix> {
        let g: Vec<Vec<String>> = serde_json::from_value(inputs[k].clone()).map_err(|e| Error::InvalidInput(e.to_string()))?;
        PolyMatrix::parse(&ring, &g)
    };
    let seq: Vec<String> = serde_json::from_value(inputs["sequence"].clone()).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let polys = seq.iter().map(|s| parse_poly(s, &ring)).collect::<Result<Vec<_>>>()?;
    let degs: Vec<i64> = serde_json::from_value(inputs["nu_column_degrees"].clone()).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let nu = grid("nu")?;
    let rows = nu.rows();
    let nu = nu.with_degrees(vec![0; rows], degs)?;
    let gamma = grid("gamma")?;
    let cert = match str_at(doc, "kind")? {
        "divisor" => check_divisor_free(&polys[0], &nu, method)?,
        "sequence" => {
            let sigma = crate::criterion::SequenceSpec::new(polys)?;
            let opts = CheckOptions { method, assume_independent: true };
            check_sequence(&sigma, &nu, &crate::criterion::Gamma::Explicit(gamma), opts)?
        }
        other => return Err(Error::InvalidInput(format!("unknown certificate kind `{other}`"))),
    };
    let same = |k: &str, p: &crate::poly::Poly| -> Result<bool> { Ok(parse_poly(str_at(doc, k)?, &ring)? == *p) };
    let h = parse_poly(str_at(doc, "h")?, &ring)?;
    let gt = parse_poly(str_at(doc, "g_theta")?, &ring)?;
    let ga = parse_poly(str_at(doc, "g_alpha")?, &ring)?;
    let gag = parse_poly(str_at(doc, "g_alphagamma")?, &ring)?;
    let identity = (&(&gt * &ga) - &(&h * &gag)).is_zero();
    Ok(identity
        && same("h", &cert.h)?
        && same("g_theta", &cert.g_theta)?
        && same("g_alpha", &cert.g_alpha)?
        && same("g_alphagamma", &cert.g_alphagamma)?
        && str_at(doc, "verdict")? == verdict_name(cert.verdict))
}
