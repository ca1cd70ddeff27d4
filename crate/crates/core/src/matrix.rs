//! Matrices over the polynomial ring.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcd::gcd_multivariate;
use crate::parse::parse_poly;
use crate::poly::{check_rings, Degree, Poly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DetMethod {
    #[default]
    Bareiss,
    Cofactor,
}

impl DetMethod {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bareiss" => Ok(DetMethod::Bareiss),
            "cofactor" => Ok(DetMethod::Cofactor),
            other => Err(Error::InvalidInput(format!("unknown determinant method `{other}`"))),
        }
    }
}

/// Rectangular matrix of polynomials, row-major.
///
/// Optional grading: entry `(i, j)` is then zero or homogeneous of degree
/// `row_degrees[i] + column_degrees[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    row_degrees: Option<Vec<i64>>,
    column_degrees: Option<Vec<i64>>,
}

impl PolyMatrix {
    pub fn new(ring: &Arc<Ring>, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        for e in &entries {
            check_rings(ring, e.ring())?;
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries, row_degrees: None, column_degrees: None })
    }

    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        PolyMatrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    /// Parse a row-major grid of polynomial strings.
    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring>, grid: &[Vec<S>]) -> Result<Self> {
        let rows = grid.iter().map(|row| row.iter().map(|s| parse_poly(s.as_ref(), ring)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(ring, rows)
    }

    pub fn zero(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix::new(ring, rows, cols, vec![Poly::zero(ring); rows * cols]).unwrap()
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(ring);
        }
        m
    }

    /// Column vector from polynomials.
    pub fn column(ring: &Arc<Ring>, entries: Vec<Poly>) -> Result<Self> {
        let n = entries.len();
        PolyMatrix::new(ring, n, 1, entries)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row_degrees(&self) -> Option<&[i64]> {
        self.row_degrees.as_deref()
    }

    pub fn column_degrees(&self) -> Option<&[i64]> {
        self.column_degrees.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn col(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn column_matrix(&self, j: usize) -> PolyMatrix {
        let mut m = PolyMatrix::column(&self.ring, self.col(j)).unwrap();
        m.row_degrees = self.row_degrees.clone();
        m.column_degrees = self.column_degrees.as_ref().map(|c| vec![c[j]]);
        m
    }

    /// Attach grading metadata after checking every entry against it.
    pub fn with_degrees(mut self, row_degrees: Vec<i64>, column_degrees: Vec<i64>) -> Result<Self> {
        if row_degrees.len() != self.rows || column_degrees.len() != self.cols {
            return Err(Error::DimensionMismatch("degree metadata length".into()));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let want = row_degrees[i] + column_degrees[j];
                match e.homogeneity() {
                    (true, Degree::Finite(d)) if d as i64 == want => {}
                    _ => return Err(Error::NonHomogeneousInput(format!("entry ({i},{j}) = {e} is not homogeneous of degree {want}"))),
                }
            }
        }
        self.row_degrees = Some(row_degrees);
        self.column_degrees = Some(column_degrees);
        Ok(self)
    }

    /// Column degrees read off the entries, for a matrix whose rows all sit
    /// in degree 0 (a map into a free module generated in degree 0). Zero
    /// columns take the stored metadata, if any.
    pub fn infer_column_degrees(&self) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut deg: Option<i64> = None;
            for i in 0..self.rows {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let d = match e.homogeneity() {
                    (true, Degree::Finite(d)) => d as i64,
                    _ => {
                        return Err(Error::NonHomogeneousInput(format!("entry ({i},{j}) = {e}")));
                    }
                };
                let shifted = d - self.row_degrees.as_ref().map_or(0, |r| r[i]);
                match deg {
                    None => deg = Some(shifted),
                    Some(x) if x == shifted => {}
                    Some(_) => {
                        return Err(Error::NonHomogeneousInput(format!("column {j} mixes degrees")));
                    }
                }
            }
            match deg.or_else(|| self.column_degrees.as_ref().map(|c| c[j])) {
                Some(d) => out.push(d),
                None => return Err(Error::NonHomogeneousInput(format!("column {j} is zero and carries no degree metadata"))),
            }
        }
        Ok(out)
    }

    /// `(self | other)`.
    pub fn hconcat(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        check_rings(&self.ring, &other.ring)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("{} vs {} rows", self.rows, other.rows)));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend((0..self.cols).map(|j| self.get(i, j).clone()));
            entries.extend((0..other.cols).map(|j| other.get(i, j).clone()));
        }
        let mut m = PolyMatrix::new(&self.ring, self.rows, cols, entries)?;
        if let (Some(a), Some(b)) = (&self.column_degrees, &other.column_degrees) {
            m.column_degrees = Some(a.iter().chain(b).copied().collect());
            m.row_degrees = self.row_degrees.clone();
        }
        Ok(m)
    }

    /// Keep only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            entries.extend(cols.iter().map(|&j| self.get(i, j).clone()));
        }
        let mut m = PolyMatrix::new(&self.ring, self.rows, cols.len(), entries).unwrap();
        m.row_degrees = self.row_degrees.clone();
        m.column_degrees = self.column_degrees.as_ref().map(|c| cols.iter().map(|&j| c[j]).collect());
        m
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            entries.extend((0..self.rows).map(|i| self.get(i, j).clone()));
        }
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
            row_degrees: self.column_degrees.clone(),
            column_degrees: self.row_degrees.clone(),
        }
    }

    pub fn mat_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        check_rings(&self.ring, &other.ring)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        let mut m = PolyMatrix::new(&self.ring, self.rows, other.cols, entries)?;
        m.row_degrees = self.row_degrees.clone();
        m.column_degrees = other.column_degrees.clone();
        Ok(m)
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Poly>> {
        rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn determinant(&self, method: DetMethod) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let all: Vec<usize> = (0..self.rows).collect();
        let grid = self.submatrix(&all, &all);
        Ok(match method {
            DetMethod::Bareiss => bareiss(grid, &self.ring),
            DetMethod::Cofactor => cofactor(&grid, &self.ring),
        })
    }

    /// All `r x r` minors, row subsets outer and column subsets inner, both
    /// in lexicographic order. `r` defaults to `min(rows, cols)`.
    pub fn maximal_minors(&self, r: Option<usize>, method: DetMethod) -> Result<Vec<Poly>> {
        let max = self.rows.min(self.cols);
        let r = r.unwrap_or(max);
        if r > max {
            return Err(Error::RankTooLarge { r, max });
        }
        let row_sets = subsets(self.rows, r);
        let col_sets = subsets(self.cols, r);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.minor(rs, cs, method));
            }
        }
        Ok(out)
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize], method: DetMethod) -> Poly {
        let grid = self.submatrix(rows, cols);
        match method {
            DetMethod::Bareiss => bareiss(grid, &self.ring),
            DetMethod::Cofactor => cofactor(&grid, &self.ring),
        }
    }

    /// Rank over the fraction field: the largest `r` with a nonzero `r x r`
    /// minor, scanning sizes downward and stopping at the first hit.
    pub fn generic_rank(&self) -> usize {
        let max = self.rows.min(self.cols);
        for r in (1..=max).rev() {
            for rs in subsets(self.rows, r) {
                for cs in subsets(self.cols, r) {
                    if !self.minor(&rs, &cs, DetMethod::Bareiss).is_zero() {
                        return r;
                    }
                }
            }
        }
        0
    }

    /// `dv` of the map: the monic gcd of the minors of size `generic_rank`.
    pub fn divisor_of_map(&self) -> Result<DivisorClass> {
        let rank = self.generic_rank();
        if rank == 0 {
            return Err(Error::ZeroMatrix);
        }
        let minors = self.maximal_minors(Some(rank), DetMethod::Bareiss)?;
        let equation = gcd_multivariate(&minors)?;
        let degree = equation.total_degree().finite().expect("gcd of a nonzero minor list is nonzero");
        Ok(DivisorClass { equation, degree, minor_size: rank, rank_deficient: rank < self.rows.min(self.cols) })
    }

    /// Row-major grid of canonical polynomial strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

/// Divisor of a morphism, cut out by the gcd of its maximal nonvanishing minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub equation: Poly,
    pub degree: u32,
    /// Size of the minors used (the generic rank).
    pub minor_size: usize,
    /// The generic rank is below `min(rows, cols)`.
    pub rank_deficient: bool,
}

impl DivisorClass {
    pub fn is_empty(&self) -> bool {
        self.degree == 0
    }
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let mut i = r;
        while i > 0 && cur[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for k in i..r {
            cur[k] = cur[k - 1] + 1;
        }
    }
}

/// Fraction-free elimination with row pivoting; every division is exact.
fn bareiss(mut m: Vec<Vec<Poly>>, ring: &Arc<Ring>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(ring);
    }
    let mut negate = false;
    let mut prev = Poly::one(ring);
    for k in 0..n - 1 {
        let pivot = (k..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| (m[i][k].num_terms(), i));
        let Some(p) = pivot else {
            return Poly::zero(ring);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = if prev.is_one() { num } else { Poly::exact_divide(&num, &prev).expect("Bareiss division is exact") };
            }
            m[i][k] = Poly::zero(ring);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for Poly {
    fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }
}

/// Laplace expansion along rows, memoized on the set of remaining columns.
fn cofactor(m: &[Vec<Poly>], ring: &Arc<Ring>) -> Poly {
    let n = m.len();
    assert!(n < 64, "cofactor expansion limited to < 64 columns");
    let mut memo: HashMap<u64, Poly> = HashMap::new();
    fn rec(m: &[Vec<Poly>], ring: &Arc<Ring>, row: usize, cols: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
        if row == m.len() {
            return Poly::one(ring);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = Poly::zero(ring);
        let mut pos = 0usize;
        for j in 0..m.len() {
            if cols & (1 << j) == 0 {
                continue;
            }
            let e = &m[row][j];
            if !e.is_zero() {
                let sub = rec(m, ring, row + 1, cols & !(1 << j), memo);
                if !sub.is_zero() {
                    let t = e * &sub;
                    acc = if pos.is_multiple_of(2) { &acc + &t } else { &acc - &t };
                }
            }
            pos += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    rec(m, ring, 0, full, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::MonomialOrder;

    fn ring3() -> Arc<Ring> {
        Ring::standard(FieldSpec::Rationals, 3, MonomialOrder::GrevLex)
    }

    fn mat(r: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
        let grid: Vec<Vec<&str>> = rows.iter().map(|row| row.to_vec()).collect();
        PolyMatrix::parse(r, &grid).unwrap()
    }

    fn alpha(r: &Arc<Ring>) -> PolyMatrix {
        mat(r, &[&["x1", "x0", "0"], &["x2", "0", "x0"]])
    }

    fn theta(r: &Arc<Ring>) -> PolyMatrix {
        mat(r, &[&["x0", "x0"], &["-x1", "x1"], &["-x2", "x2"]])
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(5, 3).len(), 10);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn two_by_two_determinant() {
        let r = Ring::standard(FieldSpec::Rationals, 4, MonomialOrder::GrevLex);
        let m = mat(&r, &[&["x0", "x1"], &["x2", "x3"]]);
        let want = parse_poly("x0*x3 - x1*x2", &r).unwrap();
        assert_eq!(m.determinant(DetMethod::Bareiss).unwrap(), want);
        assert_eq!(m.determinant(DetMethod::Cofactor).unwrap(), want);
        assert!(matches!(alpha(&ring3()).determinant(DetMethod::Bareiss), Err(Error::NotSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn counterexample_minors_ordered() {
        let r = ring3();
        let a: Vec<String> = alpha(&r).maximal_minors(None, DetMethod::Bareiss).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(a, vec!["-x0*x2", "x0*x1", "x0^2"]);
        let t: Vec<String> = theta(&r).maximal_minors(None, DetMethod::Cofactor).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(t, vec!["2*x0*x1", "2*x0*x2", "0"]);
        assert_eq!(PolyMatrix::identity(&r, 3).maximal_minors(Some(3), DetMethod::Bareiss).unwrap(), vec![Poly::one(&r)]);
        assert!(matches!(alpha(&r).maximal_minors(Some(3), DetMethod::Bareiss), Err(Error::RankTooLarge { r: 3, max: 2 })));
    }

    #[test]
    fn counterexample_product_and_divisors() {
        let r = ring3();
        let at = alpha(&r).mat_mul(&theta(&r)).unwrap();
        assert_eq!(at.to_strings(), vec![vec!["0", "2*x0*x1"], vec!["0", "2*x0*x2"]]);
        assert_eq!(at.generic_rank(), 1);
        let x0 = parse_poly("x0", &r).unwrap();
        for m in [alpha(&r), theta(&r), at.clone()] {
            let dv = m.divisor_of_map().unwrap();
            assert_eq!(dv.equation, x0);
            assert_eq!(dv.degree, 1);
        }
        assert!(at.divisor_of_map().unwrap().rank_deficient);
        assert!(matches!(PolyMatrix::zero(&r, 2, 2).divisor_of_map(), Err(Error::ZeroMatrix)));
        assert_eq!(PolyMatrix::zero(&r, 2, 3).generic_rank(), 0);
    }

    #[test]
    fn constant_invertible_map_has_empty_divisor() {
        let r = ring3();
        let m = mat(&r, &[&["1", "2"], &["3", "4"]]);
        let dv = m.divisor_of_map().unwrap();
        assert!(dv.is_empty());
        assert_eq!(dv.equation, Poly::one(&r));
    }

    #[test]
    fn identity_is_neutral_and_dimensions_checked() {
        let r = ring3();
        let t = theta(&r);
        assert_eq!(t.mat_mul(&PolyMatrix::identity(&r, 2)).unwrap(), t);
        assert!(matches!(t.mat_mul(&t), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn grading_checked() {
        let r = ring3();
        assert!(theta(&r).with_degrees(vec![0, 0, 0], vec![1, 1]).is_ok());
        assert!(theta(&r).with_degrees(vec![0, 0, 0], vec![1, 2]).is_err());
        assert_eq!(theta(&r).infer_column_degrees().unwrap(), vec![1, 1]);
    }
}
