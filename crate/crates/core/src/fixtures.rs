//! Worked instances: tangent developables, binary blocks, a rank-deficient
//! composite, positive-characteristic splittings and a few small divisors.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::cli::{run, Command, Outcome, CERTIFICATE_SCHEMA, EXIT_NOT_CERTIFIED, EXIT_OK};
use crate::criterion::{Block, SequenceSpec};
use crate::field::FieldSpec;
use crate::matrix::PolyMatrix;
use crate::parse::parse_poly;
use crate::poly::{MonomialOrder, Poly, Ring};
use crate::problem::{grid_of, BlockSpec, Options, Problem};

fn polys(ring: &Arc<Ring>, src: &[&str]) -> Vec<Poly> {
    src.iter().map(|s| parse_poly(s, ring).expect("fixture polynomial")).collect()
}

fn grid(ring: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    PolyMatrix::parse(ring, &rows).expect("fixture matrix")
}

pub fn qq(nvars: usize) -> Arc<Ring> {
    Ring::standard(FieldSpec::Rationals, nvars, MonomialOrder::GrevLex)
}

/// Tangent developable of the twisted cubic `(s^2 : s : 1 : s^3)`.
pub const TANGENT_QUARTIC: &str = "3*x0^2*x1^2 - 4*x0^3*x2 - 4*x1^3*x3 + 6*x0*x1*x2*x3 - x2^2*x3^2";

/// The same quartic with coefficient 1 on `x0^2*x1^2`. It does not vanish on
/// the tangent developable and the Saito matrix below does not annihilate
/// its gradient.
pub const TANGENT_QUARTIC_MISPRINT: &str = "x0^2*x1^2 - 4*x0^3*x2 - 4*x1^3*x3 + 6*x0*x1*x2*x3 - x2^2*x3^2";

/// Tangent developable of the twisted cubic and its 4x3 Saito matrix.
pub fn tangent_quartic() -> (SequenceSpec, PolyMatrix) {
    let r = qq(4);
    let sigma = SequenceSpec::new(polys(&r, &[TANGENT_QUARTIC])).unwrap();
    let nu = grid(&r, &[&["x3", "x0", "2*x1"], &["2*x0", "-x1", "x2"], &["3*x1", "-3*x2", "0"], &["0", "3*x3", "3*x0"]]);
    (sigma, nu)
}

pub const TANGENT_QUADRIC: &str = "x2^2 - 2*x1*x3 + 2*x0*x4";
pub const TANGENT_CUBIC: &str = "2*x2^3 - 6*x1*x2*x3 + 9*x0*x3^2 + 6*x1^2*x4 - 12*x0*x2*x4";

/// Tangent developable of the rational normal quartic as a complete
/// intersection, with a 5x3 matrix of syzygies.
pub fn tangent_quartic_curve() -> (SequenceSpec, PolyMatrix) {
    let r = qq(5);
    let sigma = SequenceSpec::new(polys(&r, &[TANGENT_QUADRIC, TANGENT_CUBIC])).unwrap();
    let nu = grid(&r, &[&["2*x1", "2*x0", "0"], &["3*x2", "x1", "x0"], &["3*x3", "0", "x1"], &["2*x4", "-x3", "x2"], &["0", "-2*x4", "x3"]]);
    (sigma, nu)
}

/// `(f, x0 f + g)`: same ideal, different generators.
pub fn tangent_quartic_curve_regenerated() -> SequenceSpec {
    let (sigma, _) = tangent_quartic_curve();
    let r = sigma.ring().clone();
    let f = &sigma.polys[0];
    let g = &sigma.polys[1];
    let h = &(&Poly::var(&r, 0) * f) + g;
    SequenceSpec::new(vec![f.clone(), h]).unwrap()
}

/// Two binary blocks `x00 x01` and `x10 x11` in four variables.
pub fn binary_blocks() -> (Arc<Ring>, Vec<Block>) {
    let r = Ring::new(FieldSpec::Rationals, &["x00", "x01", "x10", "x11"], MonomialOrder::GrevLex);
    let blocks = vec![
        Block { vars: vec!["x00".into(), "x01".into()], polys: polys(&r, &["x00*x01"]) },
        Block { vars: vec!["x10".into(), "x11".into()], polys: polys(&r, &["x10*x11"]) },
    ];
    (r, blocks)
}

/// A 2x3 map `α` and a 3x2 map `θ` on the plane whose composite has rank
/// one, so that `c_1` of the cokernels fails to add up.
pub fn rank_deficient_composite() -> (PolyMatrix, PolyMatrix) {
    let r = qq(3);
    let alpha = grid(&r, &[&["x1", "x0", "0"], &["x2", "0", "x0"]]);
    let theta = grid(&r, &[&["x0", "x0"], &["-x1", "x1"], &["-x2", "x2"]]);
    (alpha, theta)
}

/// `x0 x1 x2` over the field with three elements.
pub fn coordinate_triangle_f3() -> SequenceSpec {
    let r = Ring::standard(FieldSpec::prime(3).unwrap(), 3, MonomialOrder::GrevLex);
    SequenceSpec::new(polys(&r, &["x0*x1*x2"])).unwrap()
}

/// A conic in characteristic two.
pub fn conic_f2() -> SequenceSpec {
    let r = Ring::standard(FieldSpec::prime(2).unwrap(), 3, MonomialOrder::GrevLex);
    SequenceSpec::new(polys(&r, &["x0^2 + x1*x2"])).unwrap()
}

/// `x0 x1 x2` over the rationals with two coordinate syzygies.
pub fn coordinate_triangle() -> (SequenceSpec, PolyMatrix) {
    let r = qq(3);
    let sigma = SequenceSpec::new(polys(&r, &["x0*x1*x2"])).unwrap();
    let nu = grid(&r, &[&["x0", "0"], &["-x1", "x1"], &["0", "-x2"]]);
    (sigma, nu)
}

/// The Fermat cubic with a pair of Koszul syzygies.
pub fn fermat_cubic() -> (SequenceSpec, PolyMatrix) {
    let r = qq(3);
    let sigma = SequenceSpec::new(polys(&r, &["x0^3 + x1^3 + x2^3"])).unwrap();
    let nu = grid(&r, &[&["x1^2", "0"], &["-x0^2", "x2^2"], &["0", "-x1^2"]]);
    (sigma, nu)
}

/// Columns of degrees 1 and 4 forced on the Fermat cubic: the cubic is not
/// free, so the degree-1 column has to vanish.
pub fn fermat_cubic_forced() -> (SequenceSpec, PolyMatrix) {
    let (sigma, koszul) = fermat_cubic();
    let r = sigma.ring().clone();
    let zero = Poly::zero(&r);
    let x0sq = Poly::var(&r, 0).pow(2);
    let c = |i: usize| &x0sq * koszul.get(i, 0);
    let nu = PolyMatrix::from_rows(&r, (0..3).map(|i| vec![zero.clone(), c(i)]).collect()).unwrap().with_degrees(vec![0; 3], vec![1, 4]).unwrap();
    (sigma, nu)
}

/// A point on the projective line.
pub fn point_on_line() -> (SequenceSpec, PolyMatrix) {
    let r = qq(2);
    let sigma = SequenceSpec::new(polys(&r, &["x0"])).unwrap();
    let nu = grid(&r, &[&["0"], &["1"]]);
    (sigma, nu)
}

/// A bundled case: a problem, the command to run, and what must come out.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub command: Command,
    pub problem: Problem,
    pub exit_code: i32,
    /// JSON pointers into the output document and their expected values.
    pub expect: Vec<(&'static str, Value)>,
}

fn problem_for(sigma: &SequenceSpec) -> Problem {
    let ring = sigma.ring();
    let mut p = Problem::new(ring.field, &ring.vars);
    p.sequence = sigma.polys.iter().map(|f| f.to_string()).collect();
    p
}

fn with_nu(mut p: Problem, nu: &PolyMatrix) -> Problem {
    p.nu = Some(grid_of(nu));
    if (0..nu.cols()).any(|j| nu.col(j).iter().all(|e| e.is_zero())) {
        p.nu_column_degrees = nu.column_degrees().map(|d| d.to_vec());
    }
    p
}

pub fn corpus() -> Vec<Fixture> {
    let mut out = Vec::new();

    let (sigma, nu) = tangent_quartic();
    out.push(Fixture {
        name: "tangent-quartic-divisor",
        command: Command::CheckDivisor,
        problem: with_nu(problem_for(&sigma), &nu),
        exit_code: 0,
        expect: vec![("/verdict", json!("Free")), ("/h", json!("6")), ("/splitting_degrees", json!([1, 1, 1])), ("/identity_holds", json!(true))],
    });

    let mut p = problem_for(&sigma);
    p.sequence = vec![TANGENT_QUARTIC_MISPRINT.to_string()];
    out.push(Fixture {
        name: "tangent-quartic-misprint",
        command: Command::CheckDivisor,
        problem: with_nu(p, &nu),
        exit_code: 2,
        expect: vec![("/error/code", json!("NotASyzygy")), ("/verdict", json!("PreconditionFailed"))],
    });

    let (sigma, nu) = tangent_quartic_curve();
    out.push(Fixture {
        name: "tangent-quartic-curve-sequence",
        command: Command::CheckSequence,
        problem: with_nu(problem_for(&sigma), &nu),
        exit_code: 0,
        expect: vec![("/verdict", json!("Free")), ("/h", json!("1")), ("/splitting_degrees", json!([1, 1, 1]))],
    });

    let regenerated = tangent_quartic_curve_regenerated();
    let mut p = problem_for(&regenerated);
    p.options.syzygy_degree_bound = Some(4);
    out.push(Fixture {
        name: "tangent-quartic-curve-regenerated-syzygies",
        command: Command::Syzygies,
        problem: p,
        exit_code: 0,
        expect: vec![("/degrees", json!([1, 2, 3, 3, 3, 3, 3])), ("/annihilated", json!(true))],
    });

    let (ring, blocks) = binary_blocks();
    let mut p = Problem::new(ring.field, &ring.vars);
    p.blocks = Some(blocks.iter().map(|b| BlockSpec { variables: b.vars.clone(), polys: b.polys.iter().map(|f| f.to_string()).collect() }).collect());
    out.push(Fixture {
        name: "binary-blocks",
        command: Command::CheckSequence,
        problem: p,
        exit_code: 0,
        expect: vec![("/verdict", json!("Free")), ("/twists", json!([-1, -1])), ("/g_theta", json!("x00*x01*x10*x11"))],
    });

    let (alpha, theta) = rank_deficient_composite();
    let ring = alpha.ring().clone();
    let mut p = Problem::new(ring.field, &ring.vars);
    p.matrix = Some(grid_of(&alpha));
    p.compose_with = Some(grid_of(&theta));
    out.push(Fixture {
        name: "rank-deficient-composite",
        command: Command::DivisorOfMap,
        problem: p,
        exit_code: 0,
        expect: vec![
            ("/divisor/equation", json!("x0")),
            ("/compose_with_divisor/equation", json!("x0")),
            ("/composite_divisor/equation", json!("x0")),
            ("/composite", json!([["0", "2*x0*x1"], ["0", "2*x0*x2"]])),
            ("/composite_rank", json!(1)),
        ],
    });

    out.push(Fixture {
        name: "coordinate-triangle-f3",
        command: Command::Poschar,
        problem: problem_for(&coordinate_triangle_f3()),
        exit_code: 0,
        expect: vec![("/d", json!(1)), ("/oracle_degrees", json!([1, 1])), ("/formula_agrees", json!(false)), ("/certified", json!(true))],
    });

    out.push(Fixture {
        name: "conic-f2",
        command: Command::Poschar,
        problem: problem_for(&conic_f2()),
        exit_code: 0,
        expect: vec![("/d", json!(0)), ("/oracle_degrees", json!([0, 1])), ("/formula_agrees", json!(false)), ("/certified", json!(true))],
    });

    let (sigma, nu) = coordinate_triangle();
    out.push(Fixture {
        name: "coordinate-triangle-divisor",
        command: Command::CheckDivisor,
        problem: with_nu(problem_for(&sigma), &nu),
        exit_code: 0,
        expect: vec![("/verdict", json!("Free")), ("/h", json!("3")), ("/splitting_degrees", json!([1, 1]))],
    });

    let (sigma, nu) = fermat_cubic();
    out.push(Fixture {
        name: "fermat-cubic-koszul",
        command: Command::CheckDivisor,
        problem: with_nu(problem_for(&sigma), &nu),
        exit_code: 1,
        expect: vec![("/verdict", json!("NotCertified")), ("/h", json!("x1^2"))],
    });

    let (sigma, nu) = fermat_cubic_forced();
    out.push(Fixture {
        name: "fermat-cubic-forced-degrees",
        command: Command::CheckDivisor,
        problem: with_nu(problem_for(&sigma), &nu),
        exit_code: 1,
        expect: vec![("/verdict", json!("NotCertified")), ("/h", json!("0"))],
    });

    let (sigma, nu) = point_on_line();
    out.push(Fixture {
        name: "point-on-line",
        command: Command::CheckSequence,
        problem: with_nu(problem_for(&sigma), &nu),
        exit_code: 0,
        expect: vec![("/verdict", json!("Free")), ("/h", json!("1")), ("/splitting_degrees", json!([0]))],
    });

    let (sigma, _) = tangent_quartic_curve();
    out.push(Fixture {
        name: "tangent-quartic-curve-independence",
        command: Command::Independence,
        problem: problem_for(&sigma),
        exit_code: 0,
        expect: vec![("/independent", json!(true))],
    });

    out
}

/// Mismatches between an outcome and a fixture's expectations.
pub fn check_fixture(f: &Fixture, outcome: &Outcome) -> Vec<String> {
    let mut bad = Vec::new();
    if outcome.exit_code != f.exit_code {
        bad.push(format!("exit code {} != {}", outcome.exit_code, f.exit_code));
    }
    for (ptr, want) in &f.expect {
        match outcome.document.pointer(ptr) {
            Some(got) if got == want => {}
            got => bad.push(format!("{ptr}: got {}, want {want}", got.map_or("nothing".into(), |g| g.to_string()))),
        }
    }
    bad
}

/// Run every bundled case; exit 0 when all pass.
pub fn run_corpus(flags: &Options) -> Outcome {
    let cases = corpus();
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = cases.iter().map(|f| s.spawn(move || run(f.command, &f.problem, flags))).collect();
        handles.into_iter().map(|h| h.join().expect("fixture thread")).collect()
    });
    let mut all = true;
    let results: Vec<Value> = cases
        .iter()
        .zip(&outcomes)
        .map(|(f, o)| {
            let failures = check_fixture(f, o);
            all &= failures.is_empty();
            json!({
                "name": f.name,
                "command": f.command.name(),
                "exit_code": o.exit_code,
                "passed": failures.is_empty(),
                "failures": failures,
                "output": o.document,
            })
        })
        .collect();
    Outcome {
        exit_code: if all { EXIT_OK } else { EXIT_NOT_CERTIFIED },
        document: json!({
            "schema": CERTIFICATE_SCHEMA,
            "command": Command::Fixtures.name(),
            "passed": all,
            "results": results,
        }),
    }
}
