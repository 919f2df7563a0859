use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::algebra::gcd::{rational_roots, square_free_decomposition, univariate_from_coeffs};
use crate::algebra::{det_symbolic, poly_gcd_many, MPoly, Rat};
use crate::error::{Error, Result};
use crate::jet::{symbolic_jet_matrix, PolyMap};

/// Determinant of the rows `p, p', ..., p^(r)` of a curve.
pub fn wronskian(curve: &PolyMap) -> Result<MPoly> {
    if curve.n() != 1 {
        return Err(Error::NotACurve(curve.n()));
    }
    let jet = symbolic_jet_matrix(curve, curve.r());
    let w = det_symbolic(jet.symbolic().expect("symbolic"))?;
    if w.is_zero() {
        return Err(Error::DegenerateCurve);
    }
    Ok(w)
}

/// Total inflectionary weight `(r+1)(d-r)` of a degree-`d` rational curve
/// in `P^r`.
pub fn brill_segre_expected(d: usize, r: usize) -> Result<BigInt> {
    if r < 1 || d < r {
        return Err(Error::InvalidArgument(format!(
            "need d >= r >= 1, got d = {d}, r = {r}"
        )));
    }
    Ok(BigInt::from(r + 1) * BigInt::from(d - r))
}

/// Divides the coordinates by their common polynomial factor.
pub fn remove_content(curve: &PolyMap) -> Result<PolyMap> {
    let g = poly_gcd_many(curve.n(), curve.coords());
    if g.is_constant() {
        return Ok(curve.clone());
    }
    let coords = curve
        .coords()
        .iter()
        .map(|c| c.div_exact(&g).expect("gcd divides"))
        .collect();
    let mut reduced = PolyMap::new(coords)?.with_var_names(curve.var_names().to_vec())?;
    if let Some(name) = curve.name() {
        reduced = reduced.with_name(name);
    }
    Ok(reduced)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalInflection {
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub root: Rat,
    pub order: u32,
}

/// Square-free factor without rational roots, left unresolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualFactor {
    #[serde(skip)]
    pub factor: MPoly,
    pub degree: u32,
    pub multiplicity: u32,
}

impl ResidualFactor {
    pub fn weight(&self) -> u64 {
        u64::from(self.degree) * u64::from(self.multiplicity)
    }
}

/// Wronskian vanishing data of a rational curve, finite chart plus the
/// point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InflectionDivisor {
    pub degree: usize,
    pub r: usize,
    #[serde(skip)]
    pub wronskian: MPoly,
    pub rational: Vec<RationalInflection>,
    pub residual: Vec<ResidualFactor>,
    pub order_at_infinity: u32,
    pub total_weight: u64,
    pub expected_weight: u64,
}

impl InflectionDivisor {
    pub fn finite_weight(&self) -> u64 {
        self.rational
            .iter()
            .map(|z| u64::from(z.order))
            .sum::<u64>()
            + self
                .residual
                .iter()
                .map(ResidualFactor::weight)
                .sum::<u64>()
    }

    pub fn is_consistent(&self) -> bool {
        self.total_weight == self.expected_weight
    }

    pub fn has_inflections(&self) -> bool {
        self.total_weight > 0
    }
}

/// `(s^d p_j(1/s))_j`: the curve in the chart around `t = ∞`.
fn chart_at_infinity(curve: &PolyMap, d: usize) -> Result<PolyMap> {
    let coords = curve
        .coords()
        .iter()
        .map(|c| {
            MPoly::from_terms(
                1,
                c.terms()
                    .map(|(m, a)| (vec![d as u32 - m.exponents()[0]], a.clone())),
            )
        })
        .collect();
    PolyMap::new(coords)
}

/// Rational roots with multiplicities, the unresolved square-free factors,
/// and the order at infinity, for a content-reduced copy of the curve.
pub fn inflection_divisor(curve: &PolyMap) -> Result<InflectionDivisor> {
    if curve.n() != 1 {
        return Err(Error::NotACurve(curve.n()));
    }
    let reduced = remove_content(curve)?;
    let w = wronskian(&reduced)?;
    let d = reduced
        .coords()
        .iter()
        .filter_map(MPoly::total_degree)
        .max()
        .unwrap_or(0) as usize;
    let r = reduced.r();

    let mut rational = Vec::new();
    let mut residual = Vec::new();
    for (factor, mult) in square_free_decomposition(&w) {
        let mut rest = factor.clone();
        for root in rational_roots(&factor) {
            let linear = univariate_from_coeffs(&[-root.clone(), Rat::one()]);
            rest = rest.div_exact(&linear).expect("root gives a linear factor");
            rational.push(RationalInflection { root, order: mult });
        }
        if !rest.is_constant() {
            residual.push(ResidualFactor {
                degree: rest.total_degree().unwrap_or(0),
                factor: rest.primitive(),
                multiplicity: mult,
            });
        }
    }
    rational.sort_by(|a, b| a.root.cmp(&b.root));

    let at_infinity = wronskian(&chart_at_infinity(&reduced, d)?)?;
    let order_at_infinity = at_infinity.low_degree_in(0);

    let mut out = InflectionDivisor {
        degree: d,
        r,
        wronskian: w,
        rational,
        residual,
        order_at_infinity,
        total_weight: 0,
        expected_weight: 0,
    };
    out.total_weight = out.finite_weight() + u64::from(order_at_infinity);
    out.expected_weight = brill_segre_expected(d, r)?
        .try_into()
        .expect("weight fits in u64");
    Ok(out)
}
