//! Multivariate GCD by recursive primitive subresultant PRS.
//!
//! The main variable is the highest-index variable occurring in either
//! input; coefficients live in the polynomial ring of the remaining
//! variables and their GCDs (contents) are computed recursively.

use crate::error::Result;
use crate::poly::{check_rings, Degree, Poly};

/// Monic GCD of a list. Zero entries are ignored; an all-zero list gives 0.
pub fn gcd_multivariate(fs: &[Poly]) -> Result<Poly> {
    let first = fs.first().expect("gcd of an empty list");
    for f in fs {
        check_rings(first.ring(), f.ring())?;
    }
    let mut nonzero: Vec<&Poly> = fs.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Poly::zero(first.ring()));
    }
    // fewer terms first keeps early exits cheap
    nonzero.sort_by_key(|f| (f.total_degree(), f.num_terms()));
    let mut g = nonzero[0].clone();
    for f in &nonzero[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_pair(&g, f);
    }
    Ok(g.monic())
}

/// Monic GCD of two polynomials.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    gcd_multivariate(&[a.clone(), b.clone()])
}

fn main_variable(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&j| a.involves(j) || b.involves(j))
}

/// GCD up to a unit.
fn gcd_pair(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.ring());
    }
    if let Some(m) = monomial_shortcut(a, b) {
        return m;
    }
    let v = main_variable(a, b).expect("non-constant input");
    if !a.involves(v) {
        return gcd_with_content(b, a, v);
    }
    if !b.involves(v) {
        return gcd_with_content(a, b, v);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = exact(a, &ca);
    let pb = exact(b, &cb);
    let c = gcd_pair(&ca, &cb);
    let g = subresultant_gcd(&pa, &pb, v);
    &c * &g
}

/// When one side is a single term the GCD is a monomial.
fn monomial_shortcut(a: &Poly, b: &Poly) -> Option<Poly> {
    let (single, other) = if a.num_terms() == 1 {
        (a, b)
    } else if b.num_terms() == 1 {
        (b, a)
    } else {
        return None;
    };
    let mut exps = single.terms()[0].0.exponents().to_vec();
    for (m, _) in other.terms() {
        for (e, &k) in exps.iter_mut().zip(m.exponents()) {
            *e = (*e).min(k);
        }
    }
    let ring = a.ring();
    Some(Poly::monomial(ring, crate::poly::Monomial::new(exps), ring.field.one()))
}

/// gcd(a, c) where `c` does not involve the main variable `v` of `a`.
fn gcd_with_content(a: &Poly, c: &Poly, v: usize) -> Poly {
    let mut g = c.clone();
    for coef in a.coefficients_in(v) {
        if g.is_constant() {
            break;
        }
        if !coef.is_zero() {
            g = gcd_pair(&g, &coef);
        }
    }
    g
}

fn content(a: &Poly, v: usize) -> Poly {
    let coeffs: Vec<Poly> = a.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    let mut g = coeffs[0].clone();
    for c in &coeffs[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_pair(&g, c);
    }
    g.monic()
}

fn exact(a: &Poly, b: &Poly) -> Poly {
    Poly::exact_divide(a, b).expect("exact division inside gcd")
}

fn deg(coeffs: &[Poly]) -> usize {
    coeffs.len() - 1
}

fn trim(coeffs: &mut Vec<Poly>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` in `R[v]`.
fn pseudo_remainder(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut steps = 0usize;
    let delta = deg(a) - db;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[i + shift] = &r[i + shift] - &t;
        }
        trim(&mut r);
        steps += 1;
    }
    let extra = (delta + 1 - steps) as u32;
    if extra > 0 {
        let f = lb.pow(extra);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let ring = a.ring().clone();
    let (mut a, mut b) = (a.coefficients_in(v), b.coefficients_in(v));
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Poly::one(&ring);
    let mut h = Poly::one(&ring);
    loop {
        let delta = deg(&a) - deg(&b);
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            break;
        }
        if deg(&r) == 0 {
            return Poly::one(&ring);
        }
        let divisor = &g * &h.pow(delta as u32);
        a = b;
        b = r.iter().map(|c| exact(c, &divisor)).collect();
        g = a[deg(&a)].clone();
        // h <- g^delta / h^(delta-1)
        h = if delta == 0 { h } else { exact(&g.pow(delta as u32), &h.pow(delta as u32 - 1)) };
    }
    let prim = Poly::from_coefficients_in(&ring, v, &b);
    let c = content(&prim, v);
    exact(&prim, &c)
}

/// Degree helper used by callers that only need `deg(gcd)`.
pub fn gcd_degree(fs: &[Poly]) -> Result<Degree> {
    Ok(gcd_multivariate(fs)?.total_degree())
}
