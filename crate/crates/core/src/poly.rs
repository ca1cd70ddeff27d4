//! Sparse multivariate polynomials with exact coefficients.
//!
//! A [`Poly`] lives in a [`Ring`]: a coefficient field, an ordered list of
//! variable names and a monomial order. Terms are stored strictly descending
//! in that order with no zero coefficients, so structural equality is
//! polynomial equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps: exps.into_boxed_slice(), deg }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::new(other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term order on monomials. Variables are ranked `x0 > x1 > ... > xn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    GradedLex,
    /// Elimination order: grevlex on the first `split` variables, ties broken
    /// by grevlex on the remaining ones.
    Block {
        split: usize,
    },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GradedLex => a.deg.cmp(&b.deg).then_with(|| a.exps.cmp(&b.exps)),
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| grevlex(&a.exps, &b.exps)),
            MonomialOrder::Block { split } => {
                let s = (*split).min(a.exps.len());
                grevlex(&a.exps[..s], &b.exps[..s]).then_with(|| grevlex(&a.exps[s..], &b.exps[s..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GradedLex => "gradedlex".into(),
            MonomialOrder::Block { split } => format!("block({split})"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::GrevLex),
            "lex" => Ok(MonomialOrder::Lex),
            "gradedlex" => Ok(MonomialOrder::GradedLex),
            other => Err(Error::InvalidInput(format!("unknown monomial order `{other}`"))),
        }
    }
}

/// Total degree; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial ring context shared by all polynomials of a computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn new(field: FieldSpec, vars: &[&str], order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { field, vars: vars.iter().map(|s| s.to_string()).collect(), order })
    }

    pub fn from_names(field: FieldSpec, vars: Vec<String>, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { field, vars, order })
    }

    /// The ring `field[x0, ..., x{n-1}]`.
    pub fn standard(field: FieldSpec, nvars: usize, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { field, vars: (0..nvars).map(|i| format!("x{i}")).collect(), order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { order, ..self.clone() })
    }
}

pub(crate) fn check_rings(a: &Arc<Ring>, b: &Arc<Ring>) -> Result<()> {
    if Arc::ptr_eq(a, b) {
        return Ok(());
    }
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    if a.vars != b.vars {
        return Err(Error::VariableListMismatch);
    }
    if a.order != b.order {
        return Err(Error::OrderMismatch);
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn from_i64(ring: &Arc<Ring>, c: i64) -> Poly {
        Poly::constant(ring, ring.field.from_i64(c))
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::from_i64(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Poly {
        Poly::monomial(ring, Monomial::var(ring.nvars(), i), ring.field.one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds the canonical form from arbitrary terms: sorts, merges equal
    /// monomials and drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Scalar)>) -> Poly {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Terms in strictly descending order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero or zero polynomial of degree at most 0.
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// `h ≠ 0` and `deg h = 0`: a unit of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(self.ring.field.zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.iter().map(|(m, _)| m.degree()).max().map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// `(is_homogeneous, degree)`; zero is homogeneous of degree `NegInfinity`.
    pub fn homogeneity(&self) -> (bool, Degree) {
        let Some((m0, _)) = self.terms.first() else {
            return (true, Degree::NegInfinity);
        };
        let d = m0.degree();
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            (true, Degree::Finite(d))
        } else {
            (false, self.total_degree())
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity().0
    }

    /// Degree in variable `j`.
    pub fn degree_in(&self, j: usize) -> Degree {
        self.terms.iter().map(|(m, _)| m.exps[j]).max().map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn involves(&self, j: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps[j] > 0)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Multiply by the term `c * m`; order is preserved since term orders are
    /// compatible with multiplication.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    /// Divide through by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// `self - c*m*other`, merged in one pass.
    pub fn sub_mul_term(&self, c: &Scalar, m: &Monomial, other: &Poly) -> Poly {
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| -> (Monomial, Scalar) {
            let (t, a) = &other.terms[k];
            (t.mul(m), -&(a * c))
        };
        let mut pending = if other.terms.is_empty() { None } else { Some(shifted(0)) };
        while i < self.terms.len() || pending.is_some() {
            match (self.terms.get(i), pending.as_ref()) {
                (Some(a), Some(b)) => match order.compare(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                        pending = other.terms.get(j).map(|_| shifted(j));
                    }
                    Ordering::Equal => {
                        let s = &a.1 + &b.1;
                        if !s.is_zero() {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        pending = other.terms.get(j).map(|_| shifted(j));
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = other.terms.get(j).map(|_| shifted(j));
                }
                (None, None) => unreachable!(),
            }
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let minus_one = -&self.ring.field.one();
        let one = self.ring.field.one();
        let c = if negate { one } else { minus_one };
        self.sub_mul_term(&c, &Monomial::one(self.nvars()), other)
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero(&self.ring);
        let minus_one = -&self.ring.field.one();
        for (m, c) in &small.terms {
            acc = acc.sub_mul_term(&(&minus_one * c), m, big);
        }
        acc
    }

    /// Checked ring operation: fails when the operands live in different rings.
    pub fn arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly> {
        check_rings(&a.ring, &b.ring)?;
        Ok(match op {
            ArithOp::Add => a.merge(b, false),
            ArithOp::Sub => a.merge(b, true),
            ArithOp::Mul => a.mul_impl(b),
        })
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `a / b`; `NotDivisible` carries the nonzero remainder.
    pub fn exact_divide(a: &Poly, b: &Poly) -> Result<Poly> {
        check_rings(&a.ring, &b.ring)?;
        let (lm, lc) = b.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut p = a.clone();
        let mut q = Vec::new();
        let mut rem = Vec::new();
        while let Some((m, c)) = p.terms.first().cloned() {
            match lm.quotient_of(&m) {
                Some(t) => {
                    let coef = &c * &lc_inv;
                    p = p.sub_mul_term(&coef, &t, b);
                    q.push((t, coef));
                }
                None => {
                    rem.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        if rem.is_empty() {
            Ok(Poly { ring: a.ring.clone(), terms: q })
        } else {
            Err(Error::NotDivisible { remainder: Box::new(Poly { ring: a.ring.clone(), terms: rem }) })
        }
    }

    /// `∂f/∂x_j` with coefficients computed in the field.
    pub fn partial_derivative(&self, j: usize) -> Result<Poly> {
        let n = self.nvars();
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, len: n });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps[j] > 0)
            .filter_map(|(m, c)| {
                let coef = c.mul_int(m.exps[j] as i64);
                if coef.is_zero() {
                    return None;
                }
                let mut e = m.exps.to_vec();
                e[j] -= 1;
                Some((Monomial::new(e), coef))
            })
            .collect();
        Ok(Poly::from_terms(&self.ring, terms))
    }

    /// `Σ_j x_j ∂_j f`: each term scales by its degree.
    pub fn euler_apply(&self) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let coef = c.mul_int(m.degree() as i64);
                (!coef.is_zero()).then(|| (m.clone(), coef))
            })
            .collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// Re-express in another ring with the same field and variables (e.g.
    /// under a different monomial order).
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<Poly> {
        if ring.field != self.ring.field {
            return Err(Error::FieldMismatch);
        }
        if ring.vars != self.ring.vars {
            return Err(Error::VariableListMismatch);
        }
        Ok(Poly::from_terms(ring, self.terms.clone()))
    }

    /// Embed into `ring`, sending variable `i` to variable `map[i]`.
    pub fn embed(&self, ring: &Arc<Ring>, map: &[usize]) -> Result<Poly> {
        if ring.field != self.ring.field {
            return Err(Error::FieldMismatch);
        }
        if map.len() != self.nvars() {
            return Err(Error::VariableListMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; ring.nvars()];
                for (i, &k) in m.exps.iter().enumerate() {
                    e[map[i]] += k;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Ok(Poly::from_terms(ring, terms))
    }

    /// Coefficients with respect to variable `j`: entry `k` multiplies `x_j^k`.
    pub fn coefficients_in(&self, j: usize) -> Vec<Poly> {
        let deg = match self.degree_in(j) {
            Degree::NegInfinity => return Vec::new(),
            Degree::Finite(d) => d as usize,
        };
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exps[j] as usize;
            let mut e = m.exps.to_vec();
            e[j] = 0;
            buckets[k].push((Monomial::new(e), c.clone()));
        }
        // removing x_j from all terms of one bucket keeps them distinct but may
        // change their relative order
        buckets.into_iter().map(|t| Poly::from_terms(&self.ring, t)).collect()
    }

    /// Inverse of [`Poly::coefficients_in`].
    pub fn from_coefficients_in(ring: &Arc<Ring>, j: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.exps.to_vec();
                e[j] += k as u32;
                terms.push((Monomial::new(e), a.clone()));
            }
        }
        Poly::from_terms(ring, terms)
    }

    /// Remove and return the leading term.
    pub(crate) fn pop_lead(&mut self) -> Option<(Monomial, Scalar)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Append a term smaller than every stored term.
    pub(crate) fn push_trailing(&mut self, m: Monomial, c: Scalar) {
        debug_assert!(self.terms.last().is_none_or(|(t, _)| self.ring.order.compare(t, &m) == Ordering::Greater));
        self.terms.push((m, c));
    }

    /// Evaluate with every variable replaced by a scalar.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &point[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        Poly::arith(self, rhs, ArithOp::Add).expect("ring mismatch in +")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        Poly::arith(self, rhs, ArithOp::Sub).expect("ring mismatch in -")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        Poly::arith(self, rhs, ArithOp::Mul).expect("ring mismatch in *")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}
