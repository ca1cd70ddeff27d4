//! Freeness checks for logarithmic tangent sheaves.
//!
//! For a sequence `σ = (f_1, ..., f_k)` of homogeneous polynomials in
//! `n + 1` variables, `α = ∇(σ)` is the `k x (n+1)` Jacobian and `T_σ` its
//! kernel. Given syzygies `ν` (columns with `α ν = 0`) and a completion
//! `γ` with `α γ` injective, put `θ = (ν | γ)`. Then
//!
//! ```text
//! gcd(∧θ) · gcd(∧α) = h · gcd(∧(α γ))
//! ```
//!
//! and a constant `h` certifies `T_σ ≅ ⊕ O(-e_j)`, `e_j` the column degrees
//! of `ν`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gcd::gcd_multivariate;
use crate::groebner::{algebraic_independence, syzygy_basis, ModVec};
use crate::matrix::{subsets, DetMethod, PolyMatrix};
use crate::poly::{Degree, MonomialOrder, Poly, Ring};

/// A sequence of nonzero homogeneous polynomials of positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub polys: Vec<Poly>,
    /// Projective dimension, `nvars - 1`.
    pub n: usize,
    pub degrees: Vec<u32>,
    /// `deg f_i - 1`, the twists of the target of `∇(σ)`.
    pub twist_degrees: Vec<i64>,
}

impl SequenceSpec {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        let first = polys.first().ok_or_else(|| Error::InvalidInput("empty sequence".into()))?;
        let ring = first.ring().clone();
        if ring.nvars() < 2 {
            return Err(Error::InvalidInput("need at least two variables".into()));
        }
        let n = ring.nvars() - 1;
        let mut degrees = Vec::with_capacity(polys.len());
        for (i, f) in polys.iter().enumerate() {
            crate::poly::check_rings(&ring, f.ring())?;
            match f.homogeneity() {
                (true, Degree::Finite(d)) if d >= 1 => degrees.push(d),
                _ => return Err(Error::NonHomogeneousInput(format!("f_{i} = {f} must be homogeneous of degree >= 1"))),
            }
        }
        if polys.len() > n {
            return Err(Error::InvalidInput(format!("{} polynomials exceed n = {n}", polys.len())));
        }
        let twist_degrees = degrees.iter().map(|&d| d as i64 - 1).collect();
        Ok(SequenceSpec { polys, n, degrees, twist_degrees })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.polys[0].ring()
    }

    pub fn k(&self) -> usize {
        self.polys.len()
    }

    pub fn jacobian(&self) -> PolyMatrix {
        jacobian(&self.polys).expect("validated sequence")
    }

    /// Same sequence under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        let ring = self.ring().with_order(order);
        SequenceSpec::new(self.polys.iter().map(|f| f.to_ring(&ring)).collect::<Result<_>>()?)
    }
}

/// `∇(σ)`: row `i` holds the partials of `f_i`; graded with row degrees
/// `deg f_i - 1` and column degrees 0.
pub fn jacobian(polys: &[Poly]) -> Result<PolyMatrix> {
    let first = polys.first().ok_or_else(|| Error::InvalidInput("empty sequence".into()))?;
    let ring = first.ring().clone();
    let nv = ring.nvars();
    let mut rows = Vec::with_capacity(polys.len());
    let mut row_deg = Vec::with_capacity(polys.len());
    for (i, f) in polys.iter().enumerate() {
        match f.homogeneity() {
            (true, Degree::Finite(d)) if d >= 1 => row_deg.push(d as i64 - 1),
            _ => return Err(Error::NonHomogeneousInput(format!("f_{i} = {f}"))),
        }
        rows.push((0..nv).map(|j| f.partial_derivative(j)).collect::<Result<Vec<_>>>()?);
    }
    PolyMatrix::from_rows(&ring, rows)?.with_degrees(row_deg, vec![0; nv])
}

/// The column `(x_0, ..., x_n)^T`, mapping `O(-1)` into `O^{n+1}`.
pub fn euler_column(ring: &Arc<Ring>) -> PolyMatrix {
    let nv = ring.nvars();
    PolyMatrix::column(ring, (0..nv).map(|i| Poly::var(ring, i)).collect()).unwrap().with_degrees(vec![0; nv], vec![1]).unwrap()
}

/// One Euler column per variable group.
pub fn block_euler(ring: &Arc<Ring>, groups: &[Vec<usize>]) -> Result<PolyMatrix> {
    let nv = ring.nvars();
    let mut m = PolyMatrix::zero(ring, nv, groups.len());
    for (b, g) in groups.iter().enumerate() {
        for &v in g {
            if v >= nv {
                return Err(Error::IndexOutOfRange { index: v, len: nv });
            }
            m.set(v, b, Poly::var(ring, v));
        }
    }
    m.with_degrees(vec![0; nv], vec![1; groups.len()])
}

/// Completion `γ` of the syzygies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gamma {
    Euler,
    /// Variable index groups.
    BlockEuler(Vec<Vec<usize>>),
    Explicit(PolyMatrix),
}

impl Gamma {
    pub fn matrix(&self, ring: &Arc<Ring>) -> Result<PolyMatrix> {
        match self {
            Gamma::Euler => Ok(euler_column(ring)),
            Gamma::BlockEuler(groups) => block_euler(ring, groups),
            Gamma::Explicit(m) => Ok(m.clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Verdict {
    Free,
    NotCertified,
    PreconditionFailed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// Single divisor: `det(ν | Euler) = h · f`.
    Divisor,
    /// General sequence with completion `γ`.
    Sequence,
}

/// `Σ e_j` against `Σ d_i - deg gcd(∧α)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChernCheck {
    pub sum_splitting: i64,
    pub sum_twists: i64,
    pub g_alpha_degree: i64,
}

impl ChernCheck {
    pub fn holds(&self) -> bool {
        self.sum_splitting == self.sum_twists - self.g_alpha_degree
    }
}

#[derive(Clone, Debug)]
pub struct FreenessCertificate {
    pub kind: CertificateKind,
    pub verdict: Verdict,
    pub h: Poly,
    pub g_theta: Poly,
    pub g_alpha: Poly,
    pub g_alphagamma: Poly,
    /// `e_j` in `T_σ ≅ ⊕ O(-e_j)`.
    pub splitting_degrees: Vec<i64>,
    pub chern: ChernCheck,
    pub order: MonomialOrder,
    pub method: DetMethod,
    pub sigma: SequenceSpec,
    pub nu: PolyMatrix,
    pub gamma: PolyMatrix,
    pub theta: PolyMatrix,
    pub notes: Vec<String>,
}

impl FreenessCertificate {
    /// `-e_j`, the twists of the line-bundle summands.
    pub fn twists(&self) -> Vec<i64> {
        self.splitting_degrees.iter().map(|e| -e).collect()
    }

    /// `g_theta · g_alpha - h · g_alphagamma == 0`.
    pub fn identity_holds(&self) -> bool {
        (&(&self.g_theta * &self.g_alpha) - &(&self.h * &self.g_alphagamma)).is_zero()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub method: DetMethod,
    pub assume_independent: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { method: DetMethod::Bareiss, assume_independent: false }
    }
}

fn check_syzygies(alpha: &PolyMatrix, nu: &PolyMatrix) -> Result<()> {
    if nu.rows() != alpha.cols() {
        return Err(Error::DimensionMismatch(format!("nu has {} rows, expected {}", nu.rows(), alpha.cols())));
    }
    let prod = alpha.mat_mul(nu)?;
    for j in 0..prod.cols() {
        if (0..prod.rows()).any(|i| !prod.get(i, j).is_zero()) {
            return Err(Error::NotASyzygy { column: j });
        }
    }
    Ok(())
}

fn degree_of(p: &Poly) -> i64 {
    p.total_degree().finite().map_or(-1, |d| d as i64)
}

/// Classical criterion for one polynomial: `θ = (Euler | ν)` is square and
/// `det(θ) · gcd(∂f) = h · f`; a constant `h` certifies freeness.
///
/// For square-free `f` the partials are coprime and this reads `det θ = h f`.
pub fn check_divisor_free(f: &Poly, nu: &PolyMatrix, method: DetMethod) -> Result<FreenessCertificate> {
    let sigma = SequenceSpec::new(vec![f.clone()])?;
    let deg = sigma.degrees[0];
    let p = f.field().characteristic();
    if p != 0 && (deg as u64).is_multiple_of(p) {
        return Err(Error::CharDividesDegree { characteristic: p, degree: deg });
    }
    let n = sigma.n;
    if nu.rows() != n + 1 || nu.cols() != n {
        return Err(Error::DimensionMismatch(format!("nu is {}x{}, expected {}x{}", nu.rows(), nu.cols(), n + 1, n)));
    }
    let alpha = sigma.jacobian();
    check_syzygies(&alpha, nu)?;
    let splitting = nu.infer_column_degrees()?;
    let ring = f.ring();
    let gamma = euler_column(ring);
    let theta = gamma.hconcat(nu)?;
    let det = theta.determinant(method)?;
    let g_alpha = gcd_multivariate(&alpha.maximal_minors(None, method)?)?;
    let h = Poly::exact_divide(&(&det * &g_alpha), f)?;
    let verdict = if h.is_unit() { Verdict::Free } else { Verdict::NotCertified };
    let chern = ChernCheck { sum_splitting: splitting.iter().sum(), sum_twists: sigma.twist_degrees.iter().sum(), g_alpha_degree: degree_of(&g_alpha) };
    let mut notes = vec![
        format!("det(theta) = {det}"),
        "g_theta is det(theta) and g_alphagamma is f, unnormalized, so that det(theta) = h*f when gcd(grad f) = 1".into(),
        "square-freeness of f is the caller's responsibility".into(),
    ];
    if !g_alpha.is_unit() {
        notes.push(format!("gcd of the partials is {g_alpha}: f is not reduced"));
    }
    Ok(FreenessCertificate {
        kind: CertificateKind::Divisor,
        verdict,
        h,
        g_theta: det,
        g_alpha,
        g_alphagamma: f.clone(),
        splitting_degrees: splitting,
        chern,
        order: ring.order,
        method,
        sigma,
        nu: nu.clone(),
        gamma,
        theta,
        notes,
    })
}

/// Generalized criterion for a sequence.
pub fn check_sequence(sigma: &SequenceSpec, nu: &PolyMatrix, gamma: &Gamma, opts: CheckOptions) -> Result<FreenessCertificate> {
    let ring = sigma.ring();
    let mut notes = Vec::new();
    if opts.assume_independent {
        notes.push("algebraic independence assumed, not verified".to_string());
    } else {
        let ind = algebraic_independence(&sigma.polys)?;
        if let Some(w) = ind.witness {
            return Err(Error::IndependenceFailed { witness: Box::new(w) });
        }
    }
    let alpha = sigma.jacobian();
    let k = sigma.k();
    let expected_cols = sigma.n + 1 - k;
    if nu.cols() != expected_cols {
        return Err(Error::DimensionMismatch(format!("nu has {} columns, expected {expected_cols}", nu.cols())));
    }
    check_syzygies(&alpha, nu)?;
    let nu_rank = nu.generic_rank();
    if nu_rank != expected_cols {
        return Err(Error::InvalidInput(format!("nu has generic rank {nu_rank}, expected {expected_cols}")));
    }
    let splitting = nu.infer_column_degrees()?;
    let gamma_m = gamma.matrix(ring)?;
    let alphagamma = alpha.mat_mul(&gamma_m)?;
    let ag_rank = alphagamma.generic_rank();
    if ag_rank != gamma_m.cols() {
        return Err(Error::GammaNotMono { rank: ag_rank, cols: gamma_m.cols() });
    }
    let theta = nu.hconcat(&gamma_m)?;
    if theta.cols() > theta.rows() {
        return Err(Error::DimensionMismatch(format!("theta is {}x{}", theta.rows(), theta.cols())));
    }
    let (g_theta, g_alpha, g_alphagamma) = std::thread::scope(|s| {
        let t = s.spawn(|| theta.maximal_minors(None, opts.method).and_then(|m| gcd_multivariate(&m)));
        let a = s.spawn(|| alpha.maximal_minors(None, opts.method).and_then(|m| gcd_multivariate(&m)));
        let ag = alphagamma.maximal_minors(None, opts.method).and_then(|m| gcd_multivariate(&m));
        (t.join().expect("gcd thread"), a.join().expect("gcd thread"), ag)
    });
    let (g_theta, g_alpha, g_alphagamma) = (g_theta?, g_alpha?, g_alphagamma?);
    let h = Poly::exact_divide(&(&g_theta * &g_alpha), &g_alphagamma)?;
    let verdict = if h.is_unit() { Verdict::Free } else { Verdict::NotCertified };
    if g_theta.is_zero() {
        notes.push("theta is not injective: all maximal minors vanish".into());
    }
    let chern = ChernCheck { sum_splitting: splitting.iter().sum(), sum_twists: sigma.twist_degrees.iter().sum(), g_alpha_degree: degree_of(&g_alpha) };
    Ok(FreenessCertificate {
        kind: CertificateKind::Sequence,
        verdict,
        h,
        g_theta,
        g_alpha,
        g_alphagamma,
        splitting_degrees: splitting,
        chern,
        order: ring.order,
        method: opts.method,
        sigma: sigma.clone(),
        nu: nu.clone(),
        gamma: gamma_m,
        theta,
        notes,
    })
}

/// Splitting of `T_σ` for `n - 1` polynomials whose degrees are divisible by
/// the characteristic.
#[derive(Clone, Debug)]
pub struct SplitCertificate {
    pub char_p: u64,
    /// `Σ deg f_i - (n-1) - deg gcd(∧∇σ) - 1`.
    pub d: i64,
    /// The same expression with `+ 1` in place of `- 1`.
    pub printed_formula_d: i64,
    pub gcd_degree: i64,
    /// Degrees of the minimal syzygy generators found.
    pub oracle_degrees: Vec<i64>,
    /// `printed_formula_d` equals the oracle's second degree.
    pub formula_agrees: bool,
    /// The oracle exhibited a basis `{v1, v2}` of degrees `{1, d}`.
    pub certified: bool,
    pub euler_annihilated: bool,
    /// The two generators as a `(n+1) x 2` matrix, when exactly two exist.
    pub syzygy_pair: Option<PolyMatrix>,
    /// Monic gcd of the 2x2 minors of `syzygy_pair`.
    pub pair_minor_gcd: Option<Poly>,
    pub sigma: SequenceSpec,
    pub degree_bound: i64,
    pub notes: Vec<String>,
}

pub fn positive_char_split(sigma: &SequenceSpec, degree_bound: Option<i64>) -> Result<SplitCertificate> {
    let ring = sigma.ring();
    let p = ring.field.characteristic();
    if p == 0 {
        return Err(Error::CharZero);
    }
    let n = sigma.n;
    if sigma.k() + 1 != n {
        return Err(Error::LengthMismatch { expected: n - 1, got: sigma.k() });
    }
    for (i, &d) in sigma.degrees.iter().enumerate() {
        if !(d as u64).is_multiple_of(p) {
            return Err(Error::DegreeNotDivisible { index: i, degree: d, p });
        }
    }
    let alpha = sigma.jacobian();
    let rank = alpha.generic_rank();
    if rank != n - 1 {
        return Err(Error::JacobianRankDeficient { rank, expected: n - 1 });
    }
    let euler = euler_column(ring);
    let euler_annihilated = alpha.mat_mul(&euler)?.is_zero();
    let gcd_degree = alpha.divisor_of_map()?.degree as i64;
    let sum_deg: i64 = sigma.degrees.iter().map(|&d| d as i64).sum();
    let base = sum_deg - (n as i64 - 1) - gcd_degree;
    let d = base - 1;
    let printed_formula_d = base + 1;

    let syz = syzygy_basis(&alpha, degree_bound)?;
    let oracle_degrees = syz.degrees.clone();
    let mut notes = Vec::new();
    let (mut syzygy_pair, mut pair_minor_gcd, mut certified) = (None, None, false);
    if syz.columns.len() == 2 {
        let pair = syz.as_matrix(ring, n + 1);
        let g = gcd_multivariate(&pair.maximal_minors(None, DetMethod::Bareiss)?)?;
        let annihilates = alpha.mat_mul(&pair)?.is_zero();
        let degs_ok = {
            let mut got = oracle_degrees.clone();
            got.sort();
            let mut want = vec![1, d];
            want.sort();
            got == want
        };
        certified = annihilates && g.is_unit() && degs_ok;
        if !degs_ok {
            notes.push(format!("oracle degrees {oracle_degrees:?} disagree with {{1, {d}}}"));
        }
        if !g.is_unit() {
            notes.push(format!("2x2 minors of the syzygy pair share the factor {g}"));
        }
        syzygy_pair = Some(pair);
        pair_minor_gcd = Some(g);
    } else {
        notes.push(format!("found {} minimal syzygy generators, expected 2", syz.columns.len()));
    }
    let other = oracle_degrees.iter().copied().find(|&e| e != 1).unwrap_or(1);
    let formula_agrees = certified && printed_formula_d == other;
    if !formula_agrees {
        notes.push(format!("the variant with +1 gives d = {printed_formula_d}; the syzygy oracle gives {other}"));
    }
    if syz.truncated {
        notes.push(format!("syzygy search truncated at degree {}", syz.degree_bound));
    }
    Ok(SplitCertificate {
        char_p: p,
        d,
        printed_formula_d,
        gcd_degree,
        oracle_degrees,
        formula_agrees,
        certified,
        euler_annihilated,
        syzygy_pair,
        pair_minor_gcd,
        sigma: sigma.clone(),
        degree_bound: syz.degree_bound,
        notes,
    })
}

/// A group of variables with the polynomials living on it.
#[derive(Clone, Debug)]
pub struct Block {
    pub vars: Vec<String>,
    pub polys: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct BlockInstance {
    pub sigma: SequenceSpec,
    pub nu: PolyMatrix,
    pub gamma: Gamma,
}

/// Assemble a sequence on disjoint variable groups.
///
/// Binary blocks with one polynomial get the column `(∂_1 f, -∂_0 f)`;
/// other blocks take the first candidate syzygy matrix found in their own
/// variables (bounded by `degree_bound`).
pub fn block_sequence(ring: &Arc<Ring>, blocks: &[Block], degree_bound: Option<i64>) -> Result<BlockInstance> {
    let nv = ring.nvars();
    let mut owner: Vec<Option<usize>> = vec![None; nv];
    let mut groups = Vec::with_capacity(blocks.len());
    for (b, block) in blocks.iter().enumerate() {
        let mut idx = Vec::with_capacity(block.vars.len());
        for v in &block.vars {
            let i = ring.var_index(v).ok_or_else(|| Error::InvalidInput(format!("unknown variable `{v}`")))?;
            if owner[i].is_some() {
                return Err(Error::OverlappingBlocks(v.clone()));
            }
            owner[i] = Some(b);
            idx.push(i);
        }
        groups.push(idx);
    }
    let uncovered: Vec<String> = (0..nv).filter(|&i| owner[i].is_none()).map(|i| ring.vars[i].clone()).collect();
    if !uncovered.is_empty() {
        return Err(Error::UncoveredVariables(uncovered));
    }
    let mut polys = Vec::new();
    let mut columns: Vec<(Vec<Poly>, i64)> = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        for f in &block.polys {
            crate::poly::check_rings(ring, f.ring())?;
            let leaves = f.terms().iter().any(|(m, _)| m.exponents().iter().enumerate().any(|(i, &e)| e > 0 && owner[i] != Some(b)));
            if leaves {
                return Err(Error::InvalidInput(format!("polynomial {f} leaves block {b}")));
            }
            polys.push(f.clone());
        }
        let g = &groups[b];
        if g.len() == 2 && block.polys.len() == 1 {
            let f = &block.polys[0];
            let mut col = vec![Poly::zero(ring); nv];
            col[g[0]] = f.partial_derivative(g[1])?;
            col[g[1]] = -&f.partial_derivative(g[0])?;
            let d = f.total_degree().finite().unwrap_or(1) as i64 - 1;
            columns.push((col, d));
        } else {
            let sub_names: Vec<String> = g.iter().map(|&i| ring.vars[i].clone()).collect();
            let sub = Ring::from_names(ring.field, sub_names, ring.order);
            let restrict = |f: &Poly| -> Poly {
                let terms = f.terms().iter().map(|(m, c)| (crate::poly::Monomial::new(g.iter().map(|&i| m.exponents()[i]).collect()), c.clone())).collect();
                Poly::from_terms(&sub, terms)
            };
            let local = SequenceSpec::new(block.polys.iter().map(restrict).collect())?;
            let bound = degree_bound.unwrap_or(1 + local.degrees.iter().map(|&d| d as i64).sum::<i64>());
            let cands = find_candidate_nu(&local, bound)?;
            let first = cands.into_iter().next().ok_or_else(|| Error::InvalidInput(format!("no free splitting of block {b} up to degree {bound}")))?;
            let degs = first.infer_column_degrees()?;
            for j in 0..first.cols() {
                let mut col = vec![Poly::zero(ring); nv];
                for (k, &i) in g.iter().enumerate() {
                    col[i] = first.get(k, j).embed(ring, g)?;
                }
                columns.push((col, degs[j]));
            }
        }
    }
    let sigma = SequenceSpec::new(polys)?;
    let mut entries = Vec::with_capacity(nv * columns.len());
    for i in 0..nv {
        entries.extend(columns.iter().map(|(c, _)| c[i].clone()));
    }
    let nu = PolyMatrix::new(ring, nv, columns.len(), entries)?.with_degrees(vec![0; nv], columns.iter().map(|(_, d)| *d).collect())?;
    Ok(BlockInstance { sigma, nu, gamma: Gamma::BlockEuler(groups) })
}

/// Candidate `ν` matrices built from minimal syzygy generators of `∇σ`:
/// `n + 1 - k` columns whose degrees sum to `Σ d_i - deg gcd(∧∇σ)` and of
/// full generic rank, ordered by ascending degree vector then generator
/// index. An empty result only means nothing was found up to the bound.
pub fn find_candidate_nu(sigma: &SequenceSpec, degree_bound: i64) -> Result<Vec<PolyMatrix>> {
    let ind = algebraic_independence(&sigma.polys)?;
    if let Some(w) = ind.witness {
        return Err(Error::IndependenceFailed { witness: Box::new(w) });
    }
    let alpha = sigma.jacobian();
    let ring = sigma.ring();
    let g_alpha = gcd_multivariate(&alpha.maximal_minors(None, DetMethod::Bareiss)?)?;
    let target: i64 = sigma.twist_degrees.iter().sum::<i64>() - degree_of(&g_alpha);
    let syz = syzygy_basis(&alpha, Some(degree_bound))?;
    let width = sigma.n + 1 - sigma.k();
    let mut found: Vec<(Vec<i64>, Vec<usize>)> = Vec::new();
    for subset in subsets(syz.columns.len(), width) {
        let degs: Vec<i64> = subset.iter().map(|&i| syz.degrees[i]).collect();
        if degs.iter().sum::<i64>() == target {
            found.push((degs, subset));
        }
    }
    found.sort();
    let mut out = Vec::new();
    for (degs, subset) in found {
        let cols: Vec<&ModVec> = subset.iter().map(|&i| &syz.columns[i]).collect();
        let nv = ring.nvars();
        let mut entries = Vec::with_capacity(nv * width);
        for i in 0..nv {
            entries.extend(cols.iter().map(|c| c.0[i].clone()));
        }
        let m = PolyMatrix::new(ring, nv, width, entries)?.with_degrees(vec![0; nv], degs)?;
        if m.generic_rank() == width {
            out.push(m);
        }
    }
    Ok(out)
}
