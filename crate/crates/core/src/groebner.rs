//! Buchberger's algorithm for ideals and submodules of free modules.
//!
//! Module elements use position-over-term: a lower component index beats any
//! monomial comparison. Pairs are selected by the normal strategy (lowest
//! degree first, ties by creation index) and pruned with the Gebauer–Möller
//! criteria. For homogeneous input the computation can be truncated at a
//! degree bound; the result is then flagged `truncated`.
//!
//! Syzygies of the columns of `A` come from the basis of the augmented
//! vectors `(A_j | e_j)`: under position-over-term the elements whose first
//! block vanishes form a Gröbner basis of the syzygy module, and each records
//! the lift of the S-pair chain that produced it.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::PolyMatrix;
use crate::poly::{check_rings, Degree, Monomial, MonomialOrder, Poly, Ring};

/// Element of a free module `R^n`, one polynomial per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModVec(pub Vec<Poly>);

impl ModVec {
    pub fn zero(ring: &Arc<Ring>, n: usize) -> Self {
        ModVec(vec![Poly::zero(ring); n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|p| p.is_zero())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Leading component, monomial and coefficient.
    pub fn lead(&self) -> Option<(usize, &Monomial, &Scalar)> {
        self.0.iter().enumerate().find_map(|(c, p)| p.leading_term().map(|(m, a)| (c, m, a)))
    }

    /// Degree of the leading term with component shifts applied.
    pub fn degree(&self, shifts: &[i64]) -> Option<i64> {
        self.lead().map(|(c, m, _)| m.degree() as i64 + shifts[c])
    }

    /// Homogeneous degree, if every term has the same shifted degree.
    pub fn homogeneous_degree(&self, shifts: &[i64]) -> Option<i64> {
        let mut deg = None;
        for (c, p) in self.0.iter().enumerate() {
            for (m, _) in p.terms() {
                let d = m.degree() as i64 + shifts[c];
                match deg {
                    None => deg = Some(d),
                    Some(x) if x == d => {}
                    Some(_) => return None,
                }
            }
        }
        deg
    }

    fn sub_mul_term(&self, c: &Scalar, m: &Monomial, other: &ModVec) -> ModVec {
        ModVec(self.0.iter().zip(&other.0).map(|(a, b)| a.sub_mul_term(c, m, b)).collect())
    }

    fn scale(&self, c: &Scalar) -> ModVec {
        ModVec(self.0.iter().map(|p| p.scale(c)).collect())
    }

    fn monic(&self) -> ModVec {
        match self.lead() {
            Some((_, _, a)) if !a.is_one() => self.scale(&a.inv().unwrap()),
            _ => self.clone(),
        }
    }

    /// Descending position-over-term comparison of leading terms.
    fn cmp_lead(&self, other: &ModVec, order: MonomialOrder) -> Ordering {
        match (self.lead(), other.lead()) {
            (Some((c1, m1, _)), Some((c2, m2, _))) => c2.cmp(&c1).then_with(|| order.compare(m1, m2)),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => Ordering::Equal,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuchbergerOptions {
    /// Return the reduced basis.
    pub reduce: bool,
    /// Stop once this many S-pairs have been reduced.
    pub pair_limit: usize,
    /// Skip pairs of degree above this bound (homogeneous input only).
    pub degree_bound: Option<i64>,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { reduce: true, pair_limit: 200_000, degree_bound: None }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    pub generators: Vec<ModVec>,
    pub order: MonomialOrder,
    pub reduced: bool,
    pub rank: usize,
    pub shifts: Vec<i64>,
    /// Pairs above the degree bound were dropped.
    pub truncated: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Generators of an ideal basis (rank-1 module).
    pub fn polys(&self) -> Vec<Poly> {
        self.generators.iter().map(|g| g.0[0].clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Every S-polynomial reduces to zero modulo the basis.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let leads: Vec<_> = self.generators.iter().map(lead_key).collect();
        for j in 0..self.generators.len() {
            for i in 0..j {
                if leads[i].0 != leads[j].0 {
                    continue;
                }
                let s = s_vector(&self.generators[i], &self.generators[j]);
                if !reduce(&s, &self.generators, self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        reduce(v, &self.generators, self.order).is_zero()
    }
}

fn lead_key(g: &ModVec) -> (usize, Monomial) {
    let (c, m, _) = g.lead().expect("basis elements are nonzero");
    (c, m.clone())
}

fn s_vector(f: &ModVec, g: &ModVec) -> ModVec {
    let (_, mf, cf) = f.lead().unwrap();
    let (_, mg, cg) = g.lead().unwrap();
    let l = mf.lcm(mg);
    let tf = mf.quotient_of(&l).unwrap();
    let tg = mg.quotient_of(&l).unwrap();
    let zero = ModVec::zero(f.0[0].ring(), f.len());
    let a = zero.sub_mul_term(&(-&cf.inv().unwrap()), &tf, f);
    a.sub_mul_term(&cg.inv().unwrap(), &tg, g)
}

/// Full reduction of `f` modulo `basis`.
fn reduce(f: &ModVec, basis: &[ModVec], order: MonomialOrder) -> ModVec {
    let leads: Vec<(usize, Monomial, Scalar)> = basis
        .iter()
        .map(|g| {
            let (c, m, a) = g.lead().unwrap();
            (c, m.clone(), a.inv().unwrap())
        })
        .collect();
    reduce_with_leads(f, basis, &leads, order)
}

fn reduce_with_leads(f: &ModVec, basis: &[ModVec], leads: &[(usize, Monomial, Scalar)], _order: MonomialOrder) -> ModVec {
    let mut f = f.clone();
    let mut rem = ModVec::zero(f.0[0].ring(), f.len());
    loop {
        let Some((c, m, a)) = f.lead().map(|(c, m, a)| (c, m.clone(), a.clone())) else {
            break;
        };
        let hit = leads.iter().position(|(gc, gm, _)| *gc == c && gm.divides(&m));
        match hit {
            Some(k) => {
                let t = leads[k].1.quotient_of(&m).unwrap();
                let coef = &a * &leads[k].2;
                f = f.sub_mul_term(&coef, &t, &basis[k]);
            }
            None => {
                let (m, a) = f.0[c].pop_lead().unwrap();
                rem.0[c].push_trailing(m, a);
            }
        }
    }
    rem
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
    degree: i64,
}

/// Incremental Buchberger state; the single writer of basis and pair queue.
struct Engine {
    ring: Arc<Ring>,
    rank: usize,
    shifts: Vec<i64>,
    basis: Vec<ModVec>,
    leads: Vec<(usize, Monomial, Scalar)>,
    pairs: Vec<Pair>,
    reductions: usize,
    pair_limit: usize,
}

impl Engine {
    fn new(ring: &Arc<Ring>, rank: usize, shifts: Vec<i64>, pair_limit: usize) -> Self {
        Engine { ring: ring.clone(), rank, shifts, basis: Vec::new(), leads: Vec::new(), pairs: Vec::new(), reductions: 0, pair_limit }
    }

    fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    fn normal_form(&self, f: &ModVec) -> ModVec {
        reduce_with_leads(f, &self.basis, &self.leads, self.order())
    }

    /// Add a nonzero element and update the pair set (Gebauer–Möller).
    fn add(&mut self, h: ModVec) {
        let h = h.monic();
        let (c, m, a) = h.lead().map(|(c, m, a)| (c, m.clone(), a.inv().unwrap())).unwrap();
        let t = self.basis.len();
        let ideal = self.rank == 1;

        let mut fresh: Vec<Pair> = (0..t)
            .filter(|&i| self.leads[i].0 == c)
            .map(|i| {
                let lcm = self.leads[i].1.lcm(&m);
                let degree = lcm.degree() as i64 + self.shifts[c];
                Pair { i, j: t, comp: c, lcm, degree }
            })
            .collect();

        let coprime = |p: &Pair, leads: &[(usize, Monomial, Scalar)]| ideal && leads[p.i].1.is_coprime(&m);
        let mut kept: Vec<Pair> = Vec::new();
        while !fresh.is_empty() {
            let p = fresh.remove(0);
            let dominated = fresh.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime(&p, &self.leads) || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !coprime(p, &self.leads));

        let leads = &self.leads;
        self.pairs.retain(|p| {
            if p.comp != c || !m.divides(&p.lcm) {
                return true;
            }
            let li = leads[p.i].1.lcm(&m);
            let lj = leads[p.j].1.lcm(&m);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);
        self.basis.push(h);
        self.leads.push((c, m, a));
    }

    /// Process pending pairs up to `bound`; returns whether pairs above it remain.
    fn complete(&mut self, bound: Option<i64>) -> Result<bool> {
        loop {
            let next = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| bound.is_none_or(|b| p.degree <= b))
                .min_by(|(_, a), (_, b)| (a.degree, a.j, a.i).cmp(&(b.degree, b.j, b.i)))
                .map(|(k, _)| k);
            let Some(k) = next else {
                return Ok(!self.pairs.is_empty());
            };
            let p = self.pairs.remove(k);
            self.reductions += 1;
            if self.reductions > self.pair_limit {
                return Err(Error::PairLimitExceeded(self.pair_limit));
            }
            let s = s_vector(&self.basis[p.i], &self.basis[p.j]);
            let r = self.normal_form(&s);
            if !r.is_zero() {
                self.add(r);
            }
        }
    }

    fn into_basis(self, reduce_basis: bool, truncated: bool) -> GroebnerBasis {
        let order = self.order();
        let generators = if reduce_basis { reduced(&self.basis, order) } else { self.basis };
        GroebnerBasis { ring: self.ring, generators, order, reduced: reduce_basis, rank: self.rank, shifts: self.shifts, truncated }
    }
}

/// Minimize, inter-reduce, make monic and sort by descending leading term.
fn reduced(basis: &[ModVec], order: MonomialOrder) -> Vec<ModVec> {
    let leads: Vec<_> = basis.iter().map(lead_key).collect();
    let minimal: Vec<ModVec> = (0..basis.len())
        .filter(|&i| !(0..basis.len()).any(|j| j != i && leads[j].0 == leads[i].0 && leads[j].1.divides(&leads[i].1) && (leads[j].1 != leads[i].1 || j < i)))
        .map(|i| basis[i].clone())
        .collect();
    let mut out: Vec<ModVec> = (0..minimal.len())
        .map(|i| {
            let others: Vec<ModVec> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            reduce(&minimal[i], &others, order).monic()
        })
        .collect();
    out.sort_by(|a, b| b.cmp_lead(a, order));
    out
}

fn check_module(gens: &[ModVec]) -> Result<(Arc<Ring>, usize)> {
    let first = gens.iter().flat_map(|g| g.0.first()).next();
    let ring = first.ok_or_else(|| Error::InvalidInput("empty generator list".into()))?.ring().clone();
    let rank = gens[0].len();
    for g in gens {
        if g.len() != rank {
            return Err(Error::DimensionMismatch("module elements of different lengths".into()));
        }
        for p in &g.0 {
            check_rings(&ring, p.ring())?;
        }
    }
    Ok((ring, rank))
}

/// Gröbner basis of the submodule generated by `gens`, with component
/// degree shifts used for pair degrees and truncation.
pub fn buchberger_module(gens: &[ModVec], shifts: &[i64], opts: &BuchbergerOptions) -> Result<GroebnerBasis> {
    let (ring, rank) = check_module(gens)?;
    if shifts.len() != rank {
        return Err(Error::DimensionMismatch("shift vector length".into()));
    }
    if opts.degree_bound.is_some() {
        for g in gens.iter().filter(|g| !g.is_zero()) {
            if g.homogeneous_degree(shifts).is_none() {
                return Err(Error::NonHomogeneousInput("degree-bounded Buchberger needs homogeneous input".into()));
            }
        }
    }
    let mut engine = Engine::new(&ring, rank, shifts.to_vec(), opts.pair_limit);
    let mut sorted: Vec<&ModVec> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.degree(shifts));
    for g in sorted {
        if opts.degree_bound.is_some_and(|b| g.degree(shifts).unwrap() > b) {
            continue;
        }
        let r = engine.normal_form(g);
        if !r.is_zero() {
            engine.add(r);
        }
    }
    let truncated = engine.complete(opts.degree_bound)?;
    let skipped = opts.degree_bound.is_some_and(|b| gens.iter().any(|g| g.degree(shifts).is_some_and(|d| d > b)));
    Ok(engine.into_basis(opts.reduce, truncated || skipped))
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn buchberger(gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(gens, order, &BuchbergerOptions::default())
}

pub fn buchberger_with(gens: &[Poly], order: MonomialOrder, opts: &BuchbergerOptions) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
    let ring = first.ring().with_order(order);
    let vecs = gens.iter().map(|g| g.to_ring(&ring).map(|p| ModVec(vec![p]))).collect::<Result<Vec<_>>>()?;
    buchberger_module(&vecs, &[0], opts)
}

pub fn normal_form(f: &Poly, gb: &GroebnerBasis) -> Result<Poly> {
    if gb.rank != 1 {
        return Err(Error::DimensionMismatch("ideal normal form against a module basis".into()));
    }
    Ok(normal_form_vec(&ModVec(vec![f.clone()]), gb)?.0.remove(0))
}

pub fn normal_form_vec(f: &ModVec, gb: &GroebnerBasis) -> Result<ModVec> {
    if f.len() != gb.rank {
        return Err(Error::DimensionMismatch(format!("vector of length {} vs rank {}", f.len(), gb.rank)));
    }
    for p in &f.0 {
        if p.ring().order != gb.order {
            return Err(Error::OrderMismatch);
        }
        check_rings(p.ring(), &gb.ring)?;
    }
    if gb.generators.is_empty() {
        return Ok(f.clone());
    }
    Ok(reduce(f, &gb.generators, gb.order))
}

/// Generators of `{v : A v = 0}`.
#[derive(Clone, Debug)]
pub struct SyzygyBasis {
    /// Minimal homogeneous generators, ascending by degree.
    pub columns: Vec<ModVec>,
    pub degrees: Vec<i64>,
    /// Gröbner basis of the syzygy module (complete up to `degree_bound`).
    pub module_basis: GroebnerBasis,
    pub degree_bound: i64,
    pub truncated: bool,
}

impl SyzygyBasis {
    /// Columns as a matrix with column-degree metadata.
    pub fn as_matrix(&self, ring: &Arc<Ring>, rows: usize) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows * self.columns.len());
        for i in 0..rows {
            entries.extend(self.columns.iter().map(|c| c.0[i].clone()));
        }
        let m = PolyMatrix::new(ring, rows, self.columns.len(), entries).unwrap();
        let shifts = &self.module_basis.shifts;
        let row_deg = shifts.to_vec();
        let col_deg: Vec<i64> = self.degrees.clone();
        // entry (i, j) has degree e_j - shift_i
        m.with_degrees(row_deg.iter().map(|s| -s).collect(), col_deg).expect("syzygies are graded")
    }

    /// Membership of `v` in the syzygy module (valid up to the degree bound).
    pub fn contains(&self, v: &ModVec) -> bool {
        self.module_basis.contains(v)
    }
}

/// Row and column degrees with `deg A[i][j] = rows[i] + cols[j]`.
fn grading_of(a: &PolyMatrix) -> Result<(Vec<i64>, Vec<i64>)> {
    if let (Some(r), Some(c)) = (a.row_degrees(), a.column_degrees()) {
        return Ok((r.to_vec(), c.to_vec()));
    }
    let mut cols = vec![None; a.cols()];
    let mut rows = vec![None; a.rows()];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            let d = match e.homogeneity() {
                (true, Degree::Finite(d)) => d as i64,
                _ => return Err(Error::NonHomogeneousInput(format!("entry ({i},{j}) = {e}"))),
            };
            if cols[j].is_none() && rows[i].is_none() {
                cols[j] = Some(0);
            }
            match (rows[i], cols[j]) {
                (Some(r), None) => cols[j] = Some(d - r),
                (None, Some(c)) => rows[i] = Some(d - c),
                _ => {}
            }
            if rows[i].unwrap() + cols[j].unwrap() != d {
                return Err(Error::NonHomogeneousInput(format!("entry ({i},{j}) breaks the grading")));
            }
        }
    }
    Ok((rows.into_iter().map(|r| r.unwrap_or(0)).collect(), cols.into_iter().map(|c| c.unwrap_or(0)).collect()))
}

/// Syzygies of the columns of `a`.
///
/// `degree_bound` limits the degree of returned generators; `None` means the
/// default `1 + Σ` row degrees plus one per row (that is, `1 + Σ deg f_i`
/// for a Jacobian).
pub fn syzygy_basis(a: &PolyMatrix, degree_bound: Option<i64>) -> Result<SyzygyBasis> {
    let (row_deg, col_deg) = grading_of(a)?;
    let k = a.rows();
    let m = a.cols();
    let ring = a.ring();
    let bound = degree_bound.unwrap_or_else(|| 1 + row_deg.iter().map(|d| d + 1).sum::<i64>());

    let mut shifts: Vec<i64> = row_deg.iter().map(|d| -d).collect();
    shifts.extend(col_deg.iter().copied());
    let gens: Vec<ModVec> = (0..m)
        .map(|j| {
            let mut v: Vec<Poly> = a.col(j);
            for l in 0..m {
                v.push(if l == j { Poly::one(ring) } else { Poly::zero(ring) });
            }
            ModVec(v)
        })
        .collect();
    let opts = BuchbergerOptions { reduce: true, degree_bound: Some(bound), ..Default::default() };
    let gb = buchberger_module(&gens, &shifts, &opts)?;

    let syz_shifts = col_deg.clone();
    let syz: Vec<ModVec> = gb.generators.iter().filter(|g| g.0[..k].iter().all(|p| p.is_zero())).map(|g| ModVec(g.0[k..].to_vec())).collect();
    let module_basis = GroebnerBasis {
        ring: ring.clone(),
        generators: syz.clone(),
        order: gb.order,
        reduced: true,
        rank: m,
        shifts: syz_shifts.clone(),
        truncated: gb.truncated,
    };
    let columns = minimal_generators(ring, &syz, &syz_shifts)?;
    let degrees = columns.iter().map(|c| c.degree(&syz_shifts).unwrap()).collect();
    Ok(SyzygyBasis { columns, degrees, module_basis, degree_bound: bound, truncated: gb.truncated })
}

/// Minimal generating subset of a homogeneous generating set, by degree.
pub fn minimal_generators(ring: &Arc<Ring>, gens: &[ModVec], shifts: &[i64]) -> Result<Vec<ModVec>> {
    let mut cands: Vec<(i64, &ModVec)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.homogeneous_degree(shifts).map(|d| (d, g)).ok_or_else(|| Error::NonHomogeneousInput("minimal generators need homogeneous input".into())))
        .collect::<Result<_>>()?;
    cands.sort_by_key(|(d, _)| *d);
    let mut engine = Engine::new(ring, shifts.len(), shifts.to_vec(), BuchbergerOptions::default().pair_limit);
    let mut kept = Vec::new();
    let mut level = None;
    for (d, g) in cands {
        if level != Some(d) {
            engine.complete(Some(d))?;
            level = Some(d);
        }
        let r = engine.normal_form(g);
        if !r.is_zero() {
            kept.push(g.clone());
            engine.add(r);
        }
    }
    Ok(kept)
}

/// Outcome of the elimination test.
#[derive(Clone, Debug)]
pub struct Independence {
    pub independent: bool,
    /// A relation among the `y_i`, in the ring `k[y1, ..., yk]`.
    pub witness: Option<Poly>,
}

/// Decide whether `polys` satisfy a polynomial relation.
///
/// Builds `y_i - f_i` in `k[x, y]` under an order eliminating the `x`
/// block; the sequence is dependent iff the reduced basis contains an
/// element free of the `x` variables.
pub fn algebraic_independence(polys: &[Poly]) -> Result<Independence> {
    let first = polys.first().ok_or_else(|| Error::InvalidInput("empty sequence".into()))?;
    let base = first.ring();
    for p in polys {
        check_rings(base, p.ring())?;
    }
    let n = base.nvars();
    let k = polys.len();
    let mut vars = base.vars.clone();
    let ynames: Vec<String> = (1..=k).map(|i| unique_name(&format!("y{i}"), &base.vars)).collect();
    vars.extend(ynames.iter().cloned());
    let big = Ring::from_names(base.field, vars, MonomialOrder::Block { split: n });
    let map: Vec<usize> = (0..n).collect();
    let gens = polys.iter().enumerate().map(|(i, f)| Ok(&Poly::var(&big, n + i) - &f.embed(&big, &map)?)).collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&gens, MonomialOrder::Block { split: n })?;
    let relation = gb.polys().into_iter().find(|g| (0..n).all(|j| !g.involves(j)));
    let witness = match relation {
        None => None,
        Some(r) => {
            let yring = Ring::from_names(base.field, ynames, MonomialOrder::GrevLex);
            let back: Vec<_> = r.terms().iter().map(|(m, c)| (Monomial::new(m.exponents()[n..].to_vec()), c.clone())).collect();
            Some(Poly::from_terms(&yring, back))
        }
    };
    Ok(Independence { independent: witness.is_none(), witness })
}

fn unique_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}
