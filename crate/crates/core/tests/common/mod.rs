#![allow(dead_code)]

use std::sync::Arc;

use logfree::{FieldSpec, Monomial, MonomialOrder, Poly, PolyMatrix, Ring, SequenceSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(p: u64) -> FieldSpec {
    if p == 0 {
        FieldSpec::Rationals
    } else {
        FieldSpec::prime(p).unwrap()
    }
}

pub fn ring(p: u64, n: usize) -> Arc<Ring> {
    Ring::standard(field(p), n, MonomialOrder::GrevLex)
}

fn exps_of_degree(rng: &mut TestRng, n: usize, d: u32) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    e
}

fn coeff(rng: &mut TestRng, ring: &Arc<Ring>) -> logfree::Scalar {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-5i64..=5);
    }
    if ring.field == FieldSpec::Rationals && rng.gen_bool(0.2) {
        let den = rng.gen_range(2i64..=4);
        return ring.field.from_i64(c).div(&ring.field.from_i64(den)).unwrap();
    }
    ring.field.from_i64(c)
}

pub fn homogeneous(rng: &mut TestRng, ring: &Arc<Ring>, d: u32, terms: usize) -> Poly {
    let n = ring.nvars();
    let t = (0..terms).map(|_| (Monomial::new(exps_of_degree(rng, n, d)), coeff(rng, ring))).collect();
    Poly::from_terms(ring, t)
}

pub fn nonzero_homogeneous(rng: &mut TestRng, ring: &Arc<Ring>, d: u32, terms: usize) -> Poly {
    loop {
        let f = homogeneous(rng, ring, d, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn poly(rng: &mut TestRng, ring: &Arc<Ring>, max_deg: u32, terms: usize) -> Poly {
    let n = ring.nvars();
    let t = (0..terms)
        .map(|_| {
            let d = rng.gen_range(0..=max_deg);
            (Monomial::new(exps_of_degree(rng, n, d)), coeff(rng, ring))
        })
        .collect();
    Poly::from_terms(ring, t)
}

/// Entry (i, j) zero or homogeneous of degree `rows[i] + cols[j]`.
pub fn graded_matrix(rng: &mut TestRng, ring: &Arc<Ring>, rows: &[u32], cols: &[u32], density: f64) -> PolyMatrix {
    let mut entries = Vec::new();
    for &r in rows {
        for &c in cols {
            if rng.gen_bool(density) {
                let terms = rng.gen_range(1..=3);
                entries.push(homogeneous(rng, ring, r + c, terms));
            } else {
                entries.push(Poly::zero(ring));
            }
        }
    }
    PolyMatrix::new(ring, rows.len(), cols.len(), entries)
        .unwrap()
        .with_degrees(rows.iter().map(|&r| r as i64).collect(), cols.iter().map(|&c| c as i64).collect())
        .unwrap()
}

pub fn matrix(rng: &mut TestRng, ring: &Arc<Ring>, rows: usize, cols: usize, max_deg: u32) -> PolyMatrix {
    let entries = (0..rows * cols).map(|_| poly(rng, ring, max_deg, 2)).collect();
    PolyMatrix::new(ring, rows, cols, entries).unwrap()
}

/// Square-free binary quadric in variables `first`, `first + 1`.
pub fn binary_quadric(g: &mut TestRng, r: &Arc<Ring>, first: usize) -> Poly {
    loop {
        let (a, b, c): (i64, i64, i64) = (g.gen_range(-4..=4), g.gen_range(-4..=4), g.gen_range(-4..=4));
        if b * b - 4 * a * c == 0 {
            continue;
        }
        let x = Poly::var(r, first);
        let y = Poly::var(r, first + 1);
        let k = |v: i64| Poly::from_i64(r, v);
        return &(&(&k(a) * &x.pow(2)) + &(&k(b) * &(&x * &y))) + &(&k(c) * &y.pow(2));
    }
}

/// `n - 1` sparse forms in `n + 1` variables over 𝔽_p, p ∈ {2, 3, 5}, of degrees divisible by p.
pub fn poschar_sequence(g: &mut TestRng, attempt: usize) -> Option<(SequenceSpec, usize)> {
    let p = [2u64, 3, 5][attempt % 3];
    let n = 2 + (attempt / 3) % 2;
    let r = ring(p, n + 1);
    let polys: Vec<Poly> = (0..n - 1)
        .map(|_| {
            let d = p as u32 * g.gen_range(1..=if p == 5 { 1 } else { 2 });
            let t = g.gen_range(2..=3);
            homogeneous(g, &r, d, t)
        })
        .collect();
    SequenceSpec::new(polys).ok().map(|s| (s, n))
}
