//! Jet (Taylor) matrices of polynomial parametrizations, osculating
//! dimensions, differential-equation spaces and the `h_m` sequence.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{
    binomial_usize, default_var_names, left_kernel, rank_scalar, rank_symbolic, right_kernel,
    sample_points, sampled_rank, ExactMatrix, MPoly, Matrix, Monomial, Rat,
};
use crate::equation::PointEquation;
use crate::error::{Error, Result};

/// Half-width of the integer box general points are drawn from.
pub const SAMPLE_BOX: i64 = 1000;

/// Symbolic elimination is used for generic ranks up to this many entries.
pub const SYMBOLIC_ENTRY_LIMIT: usize = 400;

/// Exponent vector `I` of a partial derivative `∂^I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|I|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial::new(self.0.clone())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All multi-indices with `|I| <= m`: by order, then lexicographically
/// descending (`(1,0)` before `(0,1)`). There are `C(n+m, n)` of them.
pub fn multi_indices(n: usize, m: usize) -> Vec<MultiIndex> {
    fn fill(rest: u32, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slot + 1 == cur.len() {
            cur[slot] = rest;
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for k in (0..=rest).rev() {
            cur[slot] = k;
            fill(rest - k, slot + 1, cur, out);
        }
    }
    let mut out = Vec::with_capacity(binomial_usize(n + m, n));
    if n == 0 {
        out.push(MultiIndex(Vec::new()));
        return out;
    }
    let mut cur = vec![0; n];
    for deg in 0..=m as u32 {
        fill(deg, 0, &mut cur, &mut out);
    }
    out
}

/// Polynomial lifting `t ↦ p(t)` of an affine chart to the cone over `P^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    nvars: usize,
    coords: Vec<MPoly>,
    var_names: Vec<String>,
    name: Option<String>,
    bundle_chart: bool,
}

impl PolyMap {
    /// Checks `r >= 1`, a common ring, and linear independence of the
    /// coordinates over Q.
    pub fn new(coords: Vec<MPoly>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(
                "a map needs at least two coordinates (r >= 1)".into(),
            ));
        }
        let nvars = coords[0].nvars();
        if nvars == 0 {
            return Err(Error::InvalidArgument(
                "a map needs at least one variable".into(),
            ));
        }
        if let Some(bad) = coords.iter().find(|c| c.nvars() != nvars) {
            return Err(Error::LengthMismatch {
                expected: nvars,
                got: bad.nvars(),
            });
        }
        if !coordinates_independent(&coords) {
            return Err(Error::DegenerateMap);
        }
        Ok(PolyMap {
            nvars,
            coords,
            var_names: default_var_names(nvars),
            name: None,
            bundle_chart: false,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_var_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: names.len(),
            });
        }
        self.var_names = names;
        Ok(self)
    }

    /// Marks the chart as a linear `P^(n-1)`-bundle over a curve.
    pub fn as_bundle_chart(mut self) -> Self {
        self.bundle_chart = true;
        self
    }

    /// Dimension of the parameter space.
    pub fn n(&self) -> usize {
        self.nvars
    }

    /// Ambient projective dimension.
    pub fn r(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[MPoly] {
        &self.coords
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_bundle_chart(&self) -> bool {
        self.bundle_chart
    }

    /// Whether the lifting vanishes at `point`.
    pub fn vanishes_at(&self, point: &[Rat]) -> Result<bool> {
        for c in &self.coords {
            if !c.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn describe(&self) -> String {
        let coords: Vec<String> = self
            .coords
            .iter()
            .map(|c| c.display_with(&self.var_names).to_string())
            .collect();
        format!("({})", coords.join(", "))
    }
}

fn coordinates_independent(coords: &[MPoly]) -> bool {
    let mut support: Vec<Monomial> = coords
        .iter()
        .flat_map(|c| c.terms().map(|(m, _)| m.clone()))
        .collect();
    support.sort();
    support.dedup();
    let rows = coords
        .iter()
        .map(|c| support.iter().map(|m| c.coefficient(m)).collect())
        .collect();
    let m = Matrix::from_rows(rows, support.len()).expect("rectangular");
    rank_scalar(&m) == coords.len()
}

/// Table of all derivatives `∂^I p_j` with `|I| <= m`, rows in
/// [`multi_indices`] order.
pub fn derivative_table(map: &PolyMap, m: usize) -> (Vec<MultiIndex>, Vec<Vec<MPoly>>) {
    let indices = multi_indices(map.n(), m);
    let mut position: HashMap<&MultiIndex, usize> = HashMap::new();
    let mut rows: Vec<Vec<MPoly>> = Vec::with_capacity(indices.len());
    for (k, idx) in indices.iter().enumerate() {
        let row = match idx.0.iter().position(|&e| e > 0) {
            None => map.coords.clone(),
            Some(v) => {
                let mut parent = idx.0.clone();
                parent[v] -= 1;
                let parent_row = &rows[position[&MultiIndex(parent)]];
                parent_row
                    .iter()
                    .map(|p| p.partial(v).expect("variable in range"))
                    .collect()
            }
        };
        rows.push(row);
        position.insert(idx, k);
    }
    (indices, rows)
}

/// Where a jet matrix was taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JetPoint {
    Symbolic,
    At(Vec<Rat>),
}

/// Matrix of the Taylor map: row `I` holds `∂^I p`, one column per
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetMatrix {
    pub order: usize,
    pub indices: Vec<MultiIndex>,
    pub point: JetPoint,
    pub matrix: ExactMatrix,
}

impl JetMatrix {
    pub fn rank(&self) -> usize {
        crate::algebra::exact_rank(&self.matrix)
    }

    pub fn scalar(&self) -> Option<&Matrix<Rat>> {
        match &self.matrix {
            ExactMatrix::Scalar(m) => Some(m),
            ExactMatrix::Symbolic(_) => None,
        }
    }

    pub fn symbolic(&self) -> Option<&Matrix<MPoly>> {
        match &self.matrix {
            ExactMatrix::Symbolic(m) => Some(m),
            ExactMatrix::Scalar(_) => None,
        }
    }
}

pub fn symbolic_jet_matrix(map: &PolyMap, m: usize) -> JetMatrix {
    let (indices, rows) = derivative_table(map, m);
    let matrix = Matrix::from_rows(rows, map.coords.len()).expect("rectangular");
    JetMatrix {
        order: m,
        indices,
        point: JetPoint::Symbolic,
        matrix: ExactMatrix::Symbolic(matrix),
    }
}

/// Jet matrix evaluated at a chart point.
pub fn jet_matrix(map: &PolyMap, m: usize, point: &[Rat]) -> Result<JetMatrix> {
    if point.len() != map.n() {
        return Err(Error::LengthMismatch {
            expected: map.n(),
            got: point.len(),
        });
    }
    if map.vanishes_at(point)? {
        return Err(Error::ZeroLifting);
    }
    let sym = symbolic_jet_matrix(map, m);
    let scalar = sym.symbolic().expect("symbolic").evaluate(point)?;
    Ok(JetMatrix {
        order: m,
        indices: sym.indices,
        point: JetPoint::At(point.to_vec()),
        matrix: ExactMatrix::Scalar(scalar),
    })
}

/// `dim T(m, p, X)`: jet rank minus one.
pub fn osculating_dim(map: &PolyMap, m: usize, point: &[Rat]) -> Result<i64> {
    Ok(jet_matrix(map, m, point)?.rank() as i64 - 1)
}

/// How a generic rank was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum RankMethod {
    Symbolic,
    Sampled {
        seed: u64,
        trials: usize,
        bound: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericRank {
    pub rank: usize,
    #[serde(flatten)]
    pub method: RankMethod,
}

/// Rank over the function field of a polynomial matrix: exact elimination
/// when small, otherwise the maximum over seeded sample points.
pub fn generic_rank_of(m: &Matrix<MPoly>, nvars: usize, seed: u64, trials: usize) -> GenericRank {
    if m.rows() * m.cols() <= SYMBOLIC_ENTRY_LIMIT {
        GenericRank {
            rank: rank_symbolic(m),
            method: RankMethod::Symbolic,
        }
    } else {
        let trials = trials.max(1);
        GenericRank {
            rank: sampled_rank(m, nvars, seed, trials, SAMPLE_BOX),
            method: RankMethod::Sampled {
                seed,
                trials,
                bound: SAMPLE_BOX,
            },
        }
    }
}

pub fn generic_jet_rank(map: &PolyMap, m: usize, seed: u64, trials: usize) -> GenericRank {
    let sym = symbolic_jet_matrix(map, m);
    generic_rank_of(sym.symbolic().expect("symbolic"), map.n(), seed, trials)
}

/// Osculating dimension at a general point.
pub fn generic_osculating_dim(map: &PolyMap, m: usize, seed: u64, trials: usize) -> i64 {
    generic_jet_rank(map, m, seed, trials).rank as i64 - 1
}

/// Generic jet ranks for every order `0..=m_max`.
pub fn generic_rank_profile(map: &PolyMap, m_max: usize, seed: u64, trials: usize) -> Vec<usize> {
    let sym = symbolic_jet_matrix(map, m_max);
    let full = sym.symbolic().expect("symbolic");
    let cols: Vec<usize> = (0..full.cols()).collect();
    (0..=m_max)
        .map(|j| {
            let rows: Vec<usize> = (0..binomial_usize(map.n() + j, map.n())).collect();
            generic_rank_of(&full.select(&rows, &cols), map.n(), seed, trials).rank
        })
        .collect()
}

/// Up to `count` seeded points of `[-SAMPLE_BOX, SAMPLE_BOX]^n` where the
/// lifting does not vanish.
pub fn sample_chart_points(map: &PolyMap, count: usize, seed: u64) -> Vec<Vec<Rat>> {
    let mut out = Vec::with_capacity(count);
    let mut batch = 0u64;
    while out.len() < count && batch < 16 {
        let stream_seed = seed.wrapping_add(batch.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        for p in sample_points(map.n(), count, stream_seed, SAMPLE_BOX) {
            if out.len() == count {
                break;
            }
            if !map.vanishes_at(&p).unwrap_or(true) {
                out.push(p);
            }
        }
        batch += 1;
    }
    out
}

/// A seeded point at which the order-`m` jet attains its generic rank.
pub fn general_point(map: &PolyMap, m: usize, seed: u64) -> Result<Vec<Rat>> {
    let generic = generic_jet_rank(map, m, seed, 8).rank;
    for p in sample_chart_points(map, 64, seed) {
        if jet_matrix(map, m, &p)?.rank() == generic {
            return Ok(p);
        }
    }
    Err(Error::InvalidArgument(
        "no sampled point attains the generic jet rank".into(),
    ))
}

/// Integer grid `[-k, k]^n` in lexicographic order.
pub fn integer_grid(n: usize, k: i64) -> Vec<Vec<Rat>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Rat>| {
                (-k..=k).map(move |v| {
                    let mut q = p.clone();
                    q.push(Rat::from_integer(v.into()));
                    q
                })
            })
            .collect();
    }
    out
}

/// Basis of `V_m(p)`: the left kernel of the jet matrix.
pub fn equation_space(map: &PolyMap, m: usize, point: &[Rat]) -> Result<Vec<PointEquation>> {
    let jet = jet_matrix(map, m, point)?;
    left_kernel(jet.scalar().expect("scalar"))
        .into_iter()
        .map(|coeffs| PointEquation::new(map.n(), m, coeffs))
        .collect()
}

/// Jet ranks at orders `0..=m_max` at a point.
pub fn rank_profile(map: &PolyMap, m_max: usize, point: &[Rat]) -> Result<Vec<usize>> {
    let jet = jet_matrix(map, m_max, point)?;
    let full = jet.scalar().expect("scalar");
    let cols: Vec<usize> = (0..full.cols()).collect();
    Ok((0..=m_max)
        .map(|j| {
            let rows: Vec<usize> = (0..binomial_usize(map.n() + j, map.n())).collect();
            rank_scalar(&full.select(&rows, &cols))
        })
        .collect())
}

/// `h_j = dim V_j - dim V_{j-1}` from jet ranks at orders `0..=m_max`.
pub fn h_from_ranks(n: usize, ranks: &[usize]) -> Vec<usize> {
    let dim_v = |j: usize| binomial_usize(n + j, n) - ranks[j];
    (1..ranks.len())
        .map(|j| {
            let prev = if j == 1 { 0 } else { dim_v(j - 1) };
            dim_v(j) - prev
        })
        .collect()
}

/// `(h_1, ..., h_{m_max})` at a point.
pub fn h_sequence(map: &PolyMap, m_max: usize, point: &[Rat]) -> Result<Vec<usize>> {
    Ok(h_from_ranks(map.n(), &rank_profile(map, m_max, point)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfEntry {
    pub m: usize,
    pub d: usize,
    pub bound: i64,
    pub actual: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub entries: Vec<HopfEntry>,
    pub pass: bool,
}

/// Checks `h_{m+d} >= h_m + C(n-1+d, n-1) - 1` for every `m` with
/// `h_m > 0` and every `d >= 1` inside the sequence. `hseq[0]` is `h_1`.
pub fn hopf_check(hseq: &[usize], n: usize) -> HopfReport {
    let mut entries = Vec::new();
    for (i, &hm) in hseq.iter().enumerate() {
        if hm == 0 {
            continue;
        }
        let m = i + 1;
        for (k, &actual) in hseq.iter().enumerate().skip(i + 1) {
            let d = k - i;
            let bound = hm as i64 + binomial_usize(n - 1 + d, n.saturating_sub(1)) as i64 - 1;
            entries.push(HopfEntry {
                m,
                d,
                bound,
                actual: actual as i64,
                pass: actual as i64 >= bound,
            });
        }
    }
    let pass = entries.iter().all(|e| e.pass);
    HopfReport { entries, pass }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub order: usize,
    /// `dim T(m,p,X)` from the left kernel.
    pub osculating_dim: i64,
    /// Projective dimension of `|V - (m+1)p|` from the right kernel;
    /// `-1` when the system is empty.
    pub linear_system_dim: i64,
    pub r: usize,
    pub holds: bool,
}

/// `dim T(m,p,X) + dim |V - (m+1)p| = r - 1`, with the two sides computed
/// from independent eliminations.
pub fn osculating_duality_check(map: &PolyMap, m: usize, point: &[Rat]) -> Result<DualityReport> {
    let jet = jet_matrix(map, m, point)?;
    let mat = jet.scalar().expect("scalar");
    let left = left_kernel(mat).len() as i64;
    let osc = mat.rows() as i64 - left - 1;
    let sys = right_kernel(mat).len() as i64 - 1;
    let r = map.r();
    Ok(DualityReport {
        order: m,
        osculating_dim: osc,
        linear_system_dim: sys,
        r,
        holds: osc + sys == r as i64 - 1,
    })
}

/// Osculating data at a point, or at a general point when `point` is
/// `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OscReport {
    pub order: usize,
    pub point: Option<Vec<String>>,
    pub jet_rank: usize,
    pub osculating_dim: i64,
    pub equation_count: usize,
    pub h_sequence: Vec<usize>,
    pub r: usize,
}

pub fn osculating_report(
    map: &PolyMap,
    m: usize,
    point: Option<&[Rat]>,
    seed: u64,
    trials: usize,
) -> Result<OscReport> {
    let ranks = match point {
        Some(p) => rank_profile(map, m, p)?,
        None => generic_rank_profile(map, m, seed, trials),
    };
    let rank = ranks[m];
    Ok(OscReport {
        order: m,
        point: point.map(|p| p.iter().map(Rat::to_string).collect()),
        jet_rank: rank,
        osculating_dim: rank as i64 - 1,
        equation_count: binomial_usize(map.n() + m, map.n()) - rank,
        h_sequence: h_from_ranks(map.n(), &ranks),
        r: map.r(),
    })
}
