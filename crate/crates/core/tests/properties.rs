mod common;

use common::*;
use logfree::cli::{freeness_json, recheck, Command};
use logfree::fixtures::*;
use logfree::groebner::normal_form_vec;
use logfree::*;
use proptest::prelude::*;
use rand::Rng;

const CHARS: [u64; 4] = [0, 2, 3, 5];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), ci in 0usize..4) {
        let mut g = rng(seed);
        let r = ring(CHARS[ci], 3);
        let (a, b, c) = (poly(&mut g, &r, 3, 4), poly(&mut g, &r, 3, 4), poly(&mut g, &r, 2, 3));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(&r), a.clone());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), ci in 0usize..4, j in 0usize..3) {
        let mut g = rng(seed);
        let r = ring(CHARS[ci], 3);
        let (a, b) = (poly(&mut g, &r, 3, 4), poly(&mut g, &r, 3, 4));
        let lhs = (&a * &b).partial_derivative(j).unwrap();
        let rhs = &(&a.partial_derivative(j).unwrap() * &b) + &(&a * &b.partial_derivative(j).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>(), ci in 0usize..4) {
        let mut g = rng(seed);
        let r = ring(CHARS[ci], 4);
        let f = poly(&mut g, &r, 4, 6);
        prop_assert_eq!(parse_poly(&f.to_string(), &r).unwrap(), f);
    }

    #[test]
    fn exact_division_inverts_multiplication(seed in any::<u64>(), ci in 0usize..4) {
        let mut g = rng(seed);
        let r = ring(CHARS[ci], 3);
        let a = poly(&mut g, &r, 3, 4);
        let b = loop {
            let b = poly(&mut g, &r, 2, 3);
            if !b.is_zero() { break b; }
        };
        prop_assert_eq!(Poly::exact_divide(&(&a * &b), &b).unwrap(), a);
    }

    #[test]
    fn add_negation_cancels(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = ring(0, 3);
        let f = poly(&mut g, &r, 4, 5);
        prop_assert!(Poly::arith(&f, &-&f, ArithOp::Add).unwrap().is_zero());
    }
}

#[test]
fn euler_identity_per_characteristic() {
    for &p in &CHARS {
        let r = ring(p, 4);
        let mut g = rng(100 + p);
        let mut checked = 0;
        while checked < 100 {
            let d = g.gen_range(1..=5);
            let f = {
                let t = g.gen_range(1..=5);
                homogeneous(&mut g, &r, d, t)
            };
            if f.is_zero() {
                continue;
            }
            let expected = f.scale(&r.field.from_i64(d as i64));
            assert_eq!(f.euler_apply(), expected, "{f}");
            let col = jacobian(std::slice::from_ref(&f)).unwrap().mat_mul(&euler_column(&r)).unwrap();
            assert_eq!(col.get(0, 0), &expected);
            checked += 1;
        }
    }
}

#[test]
fn gcd_divides_every_input() {
    let mut g = rng(7);
    for family in 0..200 {
        let p = CHARS[family % 4];
        let r = ring(p, 3);
        let common = poly(&mut g, &r, 2, 2);
        let k = g.gen_range(2..=4);
        let fs: Vec<Poly> = (0..k).map(|_| &poly(&mut g, &r, 2, 3) * &common).collect();
        let d = gcd_multivariate(&fs).unwrap();
        for f in &fs {
            if d.is_zero() {
                assert!(f.is_zero());
            } else {
                Poly::exact_divide(f, &d).unwrap_or_else(|e| panic!("{d} does not divide {f}: {e}"));
            }
        }
        if !common.is_zero() && !d.is_zero() {
            Poly::exact_divide(&d, &common.monic()).unwrap_or_else(|e| panic!("{common} not in gcd {d}: {e}"));
        }
        if !d.is_zero() {
            let lc = d.leading_coeff().unwrap();
            assert!(lc.is_one(), "gcd {d} not monic");
        }
    }
}

#[test]
fn gcd_is_symmetric_and_scale_invariant() {
    let mut g = rng(11);
    for case in 0..60 {
        let r = ring(CHARS[case % 4], 3);
        let c = poly(&mut g, &r, 1, 2);
        let mut fs: Vec<Poly> = (0..3).map(|_| &poly(&mut g, &r, 2, 3) * &c).collect();
        let d = gcd_multivariate(&fs).unwrap();
        fs.reverse();
        assert_eq!(gcd_multivariate(&fs).unwrap(), d);
        let scaled: Vec<Poly> = fs.iter().map(|f| f.scale(&r.field.from_i64(2 + case as i64 % 2))).collect();
        if r.field.characteristic() != 2 {
            assert_eq!(gcd_multivariate(&scaled).unwrap(), d);
        }
    }
}

#[test]
fn determinant_is_multiplicative() {
    let mut g = rng(21);
    for case in 0..50 {
        let n = 2 + case % 3;
        let r = ring(CHARS[case % 4], 3);
        let a = matrix(&mut g, &r, n, n, 1);
        let b = matrix(&mut g, &r, n, n, 1);
        let ab = a.mat_mul(&b).unwrap();
        let det = |m: &PolyMatrix| m.determinant(DetMethod::Bareiss).unwrap();
        assert_eq!(det(&ab), &det(&a) * &det(&b));
    }
}

#[test]
fn bareiss_agrees_with_cofactor() {
    let mut g = rng(31);
    for case in 0..100 {
        let r = ring(CHARS[case % 4], 3);
        let rows: Vec<u32> = (0..4).map(|_| g.gen_range(0..=1)).collect();
        let cols: Vec<u32> = (0..4).map(|_| g.gen_range(0..=1)).collect();
        let m = graded_matrix(&mut g, &r, &rows, &cols, 0.7);
        let b = m.determinant(DetMethod::Bareiss).unwrap();
        assert_eq!(b, m.determinant(DetMethod::Cofactor).unwrap());
        let d = rows.iter().sum::<u32>() + cols.iter().sum::<u32>();
        assert!(b.is_zero() || b.homogeneity() == (true, Degree::Finite(d)));
    }
}

#[test]
fn graded_minors_are_homogeneous_and_divisible() {
    let mut g = rng(41);
    for case in 0..60 {
        let r = ring(CHARS[case % 4], 3);
        let (nr, nc) = (2 + case % 2, 3 + case % 2);
        let rows: Vec<u32> = (0..nr).map(|_| g.gen_range(0..=1)).collect();
        let cols: Vec<u32> = (0..nc).map(|_| g.gen_range(0..=2)).collect();
        let m = graded_matrix(&mut g, &r, &rows, &cols, 0.8);
        let minors = m.maximal_minors(None, DetMethod::Bareiss).unwrap();
        let subsets = logfree::matrix::subsets(nc, nr);
        for (s, minor) in subsets.iter().zip(&minors) {
            let d = rows.iter().sum::<u32>() + s.iter().map(|&j| cols[j]).sum::<u32>();
            assert!(minor.is_zero() || minor.homogeneity() == (true, Degree::Finite(d)));
        }
        if let Ok(dv) = m.divisor_of_map() {
            let size = dv.minor_size;
            for minor in m.maximal_minors(Some(size), DetMethod::Bareiss).unwrap() {
                Poly::exact_divide(&minor, &dv.equation).unwrap();
            }
        }
    }
}

#[test]
fn rank_of_product_is_bounded() {
    let mut g = rng(51);
    for case in 0..60 {
        let r = ring(CHARS[case % 4], 2);
        let a = matrix(&mut g, &r, 3, 2 + case % 3, 1);
        let b = matrix(&mut g, &r, 2 + case % 3, 3, 1);
        let lhs = a.mat_mul(&b).unwrap().generic_rank();
        assert!(lhs <= a.generic_rank().min(b.generic_rank()));
    }
}

#[test]
fn buchberger_outputs_are_groebner_and_canonical() {
    let mut g = rng(61);
    for case in 0..40 {
        let r = ring(CHARS[case % 4], 3);
        let k = 2 + case % 3;
        let gens: Vec<Poly> = (0..k)
            .map(|_| {
                let d = g.gen_range(1..=3);
                {
                    let t = g.gen_range(1..=3);
                    homogeneous(&mut g, &r, d, t)
                }
            })
            .collect();
        let order = [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::GradedLex][case % 3];
        let gens: Vec<Poly> = gens.iter().map(|f| f.to_ring(&r.with_order(order)).unwrap()).collect();
        let gb = buchberger(&gens, order).unwrap();
        assert!(gb.s_pairs_reduce_to_zero(), "case {case}");
        for f in &gens {
            assert!(normal_form(f, &gb).unwrap().is_zero());
        }
        let mut shuffled: Vec<Poly> = gens.iter().rev().map(|f| f.scale(&r.field.from_i64(if case % 2 == 0 { 1 } else { -1 }))).collect();
        shuffled.push(&gens[0] * &gens[gens.len() - 1]);
        let again = buchberger(&shuffled, order).unwrap();
        assert_eq!(again.polys(), gb.polys(), "reduced basis depends on generators, case {case}");
        for p in gb.polys() {
            assert!(p.leading_coeff().unwrap().is_one());
        }
    }
}

#[test]
fn syzygies_annihilate() {
    let mut g = rng(71);
    for case in 0..40 {
        let r = ring(CHARS[case % 4], 3);
        let m = 2 + case % 3;
        let nrows = 1 + case % 2;
        let cols: Vec<u32> = (0..m).map(|_| g.gen_range(0..=1)).collect();
        let a = graded_matrix(&mut g, &r, &vec![1; nrows], &cols, 0.9);
        let syz = syzygy_basis(&a, Some(5)).unwrap();
        let s = syz.as_matrix(&r, m);
        assert!(a.mat_mul(&s).unwrap().is_zero(), "case {case}");
        assert!(syz.module_basis.s_pairs_reduce_to_zero() || syz.module_basis.truncated);
    }
}

#[test]
fn independence_matches_jacobian_rank() {
    let mut g = rng(81);
    let r = ring(0, 3);
    let mut dependent = 0;
    for case in 0..24 {
        let polys: Vec<Poly> = match case % 4 {
            0 => {
                let f = nonzero_homogeneous(&mut g, &r, 2, 3);
                vec![f.clone(), f.pow(2)]
            }
            1 => {
                let f = nonzero_homogeneous(&mut g, &r, 1, 2);
                let h = nonzero_homogeneous(&mut g, &r, 1, 2);
                vec![f.clone(), h.clone(), &(&f * &h) + &f.pow(2)]
            }
            _ => (0..1 + case % 3).map(|_| nonzero_homogeneous(&mut g, &r, 1 + (case % 2) as u32, 3)).collect(),
        };
        let ind = algebraic_independence(&polys).unwrap();
        let rank = jacobian(&polys).unwrap().generic_rank();
        assert_eq!(ind.independent, rank == polys.len(), "case {case}: {polys:?}");
        if let Some(w) = &ind.witness {
            dependent += 1;
            let vals: Vec<Poly> = polys.clone();
            assert!(substitute(w, &vals).is_zero(), "witness {w} is not a relation");
        }
    }
    assert!(dependent >= 6);
}

/// Evaluate `w(y_1, ..., y_k)` at `y_i = f_i`.
fn substitute(w: &Poly, fs: &[Poly]) -> Poly {
    let r = fs[0].ring();
    let mut acc = Poly::zero(r);
    for (m, c) in w.terms() {
        let mut t = Poly::constant(r, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            t = &t * &fs[i].pow(e);
        }
        acc = &acc + &t;
    }
    acc
}

fn certified_instances() -> Vec<FreenessCertificate> {
    let mut out = Vec::new();
    let (s, nu) = tangent_quartic();
    out.push(check_divisor_free(&s.polys[0], &nu, DetMethod::Bareiss).unwrap());
    let (s, nu) = coordinate_triangle();
    out.push(check_divisor_free(&s.polys[0], &nu, DetMethod::Bareiss).unwrap());
    let (s, nu) = tangent_quartic_curve();
    out.push(check_sequence(&s, &nu, &Gamma::Euler, CheckOptions::default()).unwrap());
    let (s, nu) = point_on_line();
    out.push(check_sequence(&s, &nu, &Gamma::Euler, CheckOptions::default()).unwrap());
    let (r, b) = binary_blocks();
    let inst = block_sequence(&r, &b, None).unwrap();
    out.push(check_sequence(&inst.sigma, &inst.nu, &inst.gamma, CheckOptions::default()).unwrap());
    out.extend(random_block_certificates(5, 99));
    out
}

fn random_block_certificates(count: usize, seed: u64) -> Vec<FreenessCertificate> {
    let mut g = rng(seed);
    let names: Vec<String> = (0..3).flat_map(|i| [format!("x{i}0"), format!("x{i}1")]).collect();
    let r = Ring::from_names(FieldSpec::Rationals, names.clone(), MonomialOrder::GrevLex);
    (0..count)
        .map(|_| {
            let blocks: Vec<Block> =
                (0..3).map(|i| Block { vars: vec![names[2 * i].clone(), names[2 * i + 1].clone()], polys: vec![binary_quadric(&mut g, &r, 2 * i)] }).collect();
            let inst = block_sequence(&r, &blocks, None).unwrap();
            check_sequence(&inst.sigma, &inst.nu, &inst.gamma, CheckOptions::default()).unwrap()
        })
        .collect()
}

#[test]
fn certificates_recheck_from_their_echo() {
    for c in certified_instances() {
        assert!(c.identity_holds());
        let kind = if c.sigma.k() == 1 && c.gamma.cols() == 1 && c.notes.iter().any(|n| n.starts_with("det(theta)")) {
            Command::CheckDivisor
        } else {
            Command::CheckSequence
        };
        let doc = freeness_json(&c, kind);
        assert!(recheck(&doc).unwrap(), "{doc}");
        let mut tampered = doc.clone();
        tampered["h"] = serde_json::json!("7");
        assert!(!recheck(&tampered).unwrap());
    }
}

#[test]
fn free_certificates_have_equal_divisors() {
    for c in certified_instances() {
        assert_eq!(c.verdict, Verdict::Free);
        assert!(c.chern.holds());
        if c.g_alpha.is_unit() {
            let alpha = c.sigma.jacobian();
            let prod = alpha.mat_mul(&c.theta).unwrap();
            let d1 = c.theta.divisor_of_map().unwrap();
            let d2 = prod.divisor_of_map().unwrap();
            assert_eq!(d1.equation, d2.equation);
            assert_eq!(d1.equation, c.g_theta.monic());
        }
    }
}

#[test]
fn scaling_keeps_verdict_and_degrees() {
    let (s, nu) = tangent_quartic_curve();
    let base = check_sequence(&s, &nu, &Gamma::Euler, CheckOptions::default()).unwrap();
    for c in [-3i64, 2, 5] {
        let scaled: Vec<Poly> = s.polys.iter().enumerate().map(|(i, f)| if i == 1 { f.scale(&FieldSpec::Rationals.from_i64(c)) } else { f.clone() }).collect();
        let s2 = SequenceSpec::new(scaled).unwrap();
        let cert = check_sequence(&s2, &nu, &Gamma::Euler, CheckOptions::default()).unwrap();
        assert_eq!((cert.verdict, &cert.splitting_degrees), (base.verdict, &base.splitting_degrees));
    }
    let (s, nu) = tangent_quartic();
    let f = s.polys[0].scale(&FieldSpec::Rationals.from_i64(-7));
    let c = check_divisor_free(&f, &nu, DetMethod::Bareiss).unwrap();
    assert_eq!((c.verdict, c.splitting_degrees.clone()), (Verdict::Free, vec![1, 1, 1]));
}

#[test]
fn chern_identity_on_certified_poschar_splits() {
    let mut g = rng(91);
    let mut done = 0;
    let mut attempts = 0;
    while done < 12 && attempts < 400 {
        attempts += 1;
        let Some((sigma, n)) = poschar_sequence(&mut g, attempts) else { continue };
        match positive_char_split(&sigma, None) {
            Ok(c) => {
                assert!(c.euler_annihilated);
                assert!(c.certified, "{:?}: {:?}", sigma.polys, c.notes);
                let sum: i64 = sigma.degrees.iter().map(|&d| d as i64).sum();
                let other = c.oracle_degrees.iter().sum::<i64>() - 1;
                assert_eq!(1 + other, sum - (n as i64 - 1) - c.gcd_degree);
                let pair = c.syzygy_pair.as_ref().unwrap();
                assert!(sigma.jacobian().mat_mul(pair).unwrap().is_zero());
                done += 1;
            }
            Err(Error::JacobianRankDeficient { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(done >= 12, "only {done} usable instances");
}

#[test]
fn module_normal_form_of_kernel_elements() {
    let (s, nu) = tangent_quartic_curve();
    let syz = syzygy_basis(&s.jacobian(), None).unwrap();
    let r = s.ring();
    let combo = ModVec((0..5).map(|i| &(&Poly::var(r, 2) * nu.get(i, 0)) - &(&Poly::var(r, 4) * nu.get(i, 2))).collect());
    assert!(normal_form_vec(&combo, &syz.module_basis).unwrap().is_zero());
}
