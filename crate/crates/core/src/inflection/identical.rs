use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{binomial, in_span, right_kernel, MPoly, Matrix, Monomial, Rat};
use crate::equation::{DiffEquation, IdenticalEquation};
use crate::error::{Error, Result};
use crate::jet::{derivative_table, multi_indices, MultiIndex, PolyMap};

/// Default coefficient degree bound: the order itself, the degree of the
/// Euler-type relations.
pub fn default_coeff_degree(m: usize) -> usize {
    m
}

/// Basis of all families `{a_I}` with `deg a_I <= coeff_degree_bound` and
/// `Σ a_I p_I ≡ 0`, found by equating every coefficient of every
/// coordinate identity to zero.
pub fn identical_equations(
    map: &PolyMap,
    m: usize,
    coeff_degree_bound: usize,
) -> Vec<IdenticalEquation> {
    let n = map.n();
    let (indices, table) = derivative_table(map, m);
    let mons = multi_indices(n, coeff_degree_bound);
    let ncols = indices.len() * mons.len();

    // row key: (coordinate, monomial of the product)
    let mut rows: BTreeMap<(usize, Monomial), Vec<(usize, Rat)>> = BTreeMap::new();
    for (ii, row) in table.iter().enumerate() {
        for (j, deriv) in row.iter().enumerate() {
            for (mi, mu) in mons.iter().enumerate() {
                let col = ii * mons.len() + mi;
                let mu = mu.to_monomial();
                for (t, c) in deriv.terms() {
                    rows.entry((j, t.mul(&mu)))
                        .or_default()
                        .push((col, c.clone()));
                }
            }
        }
    }
    let dense: Vec<Vec<Rat>> = rows
        .into_values()
        .map(|entries| {
            let mut r = vec![Rat::zero(); ncols];
            for (c, v) in entries {
                r[c] += v;
            }
            r
        })
        .collect();
    let system = Matrix::from_rows(dense, ncols).expect("rectangular");

    right_kernel(&system)
        .into_iter()
        .map(|v| {
            let coeffs = v
                .chunks(mons.len())
                .map(|chunk| {
                    MPoly::from_terms(
                        n,
                        mons.iter()
                            .zip(chunk)
                            .map(|(mu, c)| (mu.exponents().to_vec(), c.clone())),
                    )
                })
                .collect();
            DiffEquation::new(n, m, coeffs).expect("kernel vectors are nonzero")
        })
        .collect()
}

/// Applies `∂^alpha` to the identity `Σ a_I p_I = 0` and collects the
/// Leibniz expansion `Σ_J b_J p_J` with `J = I + alpha - beta`,
/// `b_J += C(alpha, beta) ∂^beta a_I`.
pub fn differentiate_equation(
    eq: &IdenticalEquation,
    map: &PolyMap,
    alpha: &MultiIndex,
) -> Result<IdenticalEquation> {
    let n = map.n();
    if alpha.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: alpha.len(),
        });
    }
    if alpha.order() == 0 {
        return Err(Error::InvalidArgument(
            "differentiation needs |alpha| >= 1".into(),
        ));
    }
    if !eq.holds_identically(map) {
        return Err(Error::NotIdentical);
    }
    let order = eq.order() + alpha.order() as usize;
    let target = multi_indices(n, order);
    let mut b = vec![MPoly::zero(n); target.len()];
    let betas = multi_indices(n, alpha.order() as usize)
        .into_iter()
        .filter(|beta| {
            beta.exponents()
                .iter()
                .zip(alpha.exponents())
                .all(|(x, y)| x <= y)
        })
        .collect::<Vec<_>>();
    for (idx, a) in eq.terms() {
        for beta in &betas {
            let weight: num_bigint::BigInt = alpha
                .exponents()
                .iter()
                .zip(beta.exponents())
                .map(|(&ak, &bk)| binomial(i64::from(ak), i64::from(bk)))
                .product();
            let da = a.derivative(beta.exponents())?;
            if da.is_zero() {
                continue;
            }
            let j: Vec<u32> = idx
                .exponents()
                .iter()
                .zip(alpha.exponents())
                .zip(beta.exponents())
                .map(|((i, al), be)| i + al - be)
                .collect();
            let pos = target
                .iter()
                .position(|t| t.exponents() == j.as_slice())
                .expect("index within raised order");
            b[pos] = &b[pos] + &da.scale(&Rat::from_integer(weight));
        }
    }
    let out = DiffEquation::new(n, order, b)?;
    if !out.holds_identically(map) {
        return Err(Error::NotIdentical);
    }
    Ok(out)
}

/// Whether `eq` is a linear combination of `basis`, all read in the
/// `{μ ∂^I}` coordinates with `deg μ <= bound` at the basis order.
pub fn in_identical_span(
    eq: &IdenticalEquation,
    basis: &[IdenticalEquation],
    bound: usize,
) -> bool {
    let Some(order) = basis.first().map(DiffEquation::order) else {
        return false;
    };
    if eq.order() > order {
        return false;
    }
    let Some(target) = eq.raise_order(order).coefficient_vector(bound) else {
        return false;
    };
    let vecs: Option<Vec<Vec<Rat>>> = basis.iter().map(|b| b.coefficient_vector(bound)).collect();
    match vecs {
        Some(vecs) => in_span(&vecs, &target),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::catalog;

    /// `2f - 2x f_x - 2y f_y + x^2 f_xx + xy f_xy + y^2 f_yy = 0`.
    fn togliatti_equation() -> IdenticalEquation {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let coeffs = vec![
            MPoly::from_int(2, 2),
            x.scale(&rat(-2)),
            y.scale(&rat(-2)),
            &x * &x,
            &x * &y,
            &y * &y,
        ];
        IdenticalEquation::new(2, 2, coeffs).unwrap()
    }

    #[test]
    fn togliatti_relation_holds_on_each_monomial() {
        assert!(togliatti_equation().holds_identically(&catalog::togliatti()));
    }

    #[test]
    fn togliatti_identical_space_contains_relation() {
        let basis = identical_equations(&catalog::togliatti(), 2, 2);
        assert!(!basis.is_empty());
        assert!(basis.iter().any(IdenticalEquation::has_exact_order));
        assert!(in_identical_span(&togliatti_equation(), &basis, 2));
        for eq in &basis {
            assert!(eq.holds_identically(&catalog::togliatti()));
        }
    }

    #[test]
    fn veronese_has_no_identical_second_order_relation() {
        let basis = identical_equations(&catalog::veronese(2, 2), 2, 2);
        assert!(basis.iter().all(|e| !e.has_exact_order()));
    }

    #[test]
    fn twisted_cubic_constant_coefficient_relation() {
        let basis = identical_equations(&catalog::rational_normal_curve(3), 4, 0);
        assert_eq!(basis.len(), 1);
        let mut expected = vec![MPoly::zero(1); 5];
        expected[4] = MPoly::one(1);
        assert_eq!(basis[0].coeffs(), expected.as_slice());
    }

    #[test]
    fn differentiate_togliatti_relation() {
        let map = catalog::togliatti();
        let eq = togliatti_equation();
        let dx = differentiate_equation(&eq, &map, &MultiIndex::new(vec![1, 0])).unwrap();
        assert_eq!(dx.order(), 3);
        assert!(dx.has_exact_order());
        assert!(dx.holds_identically(&map));
    }

    #[test]
    fn differentiate_vanishing_fourth_derivative() {
        let map = catalog::rational_normal_curve(3);
        let eq = identical_equations(&map, 4, 0).remove(0);
        let d = differentiate_equation(&eq, &map, &MultiIndex::new(vec![1])).unwrap();
        let mut expected = vec![MPoly::zero(1); 6];
        expected[5] = MPoly::one(1);
        assert_eq!(d.coeffs(), expected.as_slice());
    }

    #[test]
    fn differentiate_rejects_bad_input() {
        let map = catalog::togliatti();
        assert!(matches!(
            differentiate_equation(&togliatti_equation(), &map, &MultiIndex::zero(2)),
            Err(Error::InvalidArgument(_))
        ));
        let mut coeffs = vec![MPoly::zero(2); 6];
        coeffs[5] = MPoly::one(2);
        let not_identical = IdenticalEquation::new(2, 2, coeffs).unwrap();
        assert_eq!(
            differentiate_equation(&not_identical, &map, &MultiIndex::new(vec![1, 0])),
            Err(Error::NotIdentical)
        );
    }
}
