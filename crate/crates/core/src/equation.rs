//! Linear differential equations `Σ a_I p_I = 0` satisfied by a map.

use num_traits::Zero;

use crate::algebra::{binomial_usize, MPoly, Rat};
use crate::error::{Error, Result};
use crate::jet::{derivative_table, multi_indices, MultiIndex, PolyMap};

/// Coefficient types an equation may carry.
pub trait Coefficient: Clone {
    fn is_zero_coeff(&self) -> bool;
}

impl Coefficient for Rat {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
}

impl Coefficient for MPoly {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
}

/// Coefficient family `{a_I}` over all `|I| <= order`, aligned with
/// [`multi_indices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEquation<C> {
    order: usize,
    indices: Vec<MultiIndex>,
    coeffs: Vec<C>,
}

/// Equation holding at one point.
pub type PointEquation = DiffEquation<Rat>;

/// Equation holding identically on the chart.
pub type IdenticalEquation = DiffEquation<MPoly>;

impl<C: Coefficient> DiffEquation<C> {
    pub fn new(n: usize, order: usize, coeffs: Vec<C>) -> Result<Self> {
        let expected = binomial_usize(n + order, n);
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().all(C::is_zero_coeff) {
            return Err(Error::InvalidArgument(
                "a differential equation needs a nonzero coefficient".into(),
            ));
        }
        Ok(DiffEquation {
            order,
            indices: multi_indices(n, order),
            coeffs,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.indices[0].len()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Option<&C> {
        self.indices
            .iter()
            .position(|i| i == idx)
            .map(|k| &self.coeffs[k])
    }

    /// Some `a_I` with `|I| = order` is nonzero.
    pub fn has_exact_order(&self) -> bool {
        self.indices
            .iter()
            .zip(&self.coeffs)
            .any(|(i, c)| i.order() as usize == self.order && !c.is_zero_coeff())
    }

    /// Nonzero terms as `(I, a_I)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.indices
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero_coeff())
    }
}

impl IdenticalEquation {
    /// `Σ a_I ∂^I p_j` for every coordinate `j`, by direct expansion.
    pub fn residual(&self, map: &PolyMap) -> Vec<MPoly> {
        let (_, table) = derivative_table(map, self.order);
        (0..map.coords().len())
            .map(|j| {
                self.coeffs
                    .iter()
                    .zip(&table)
                    .fold(MPoly::zero(map.n()), |acc, (a, row)| &acc + &(a * &row[j]))
            })
            .collect()
    }

    pub fn holds_identically(&self, map: &PolyMap) -> bool {
        self.nvars() == map.n() && self.residual(map).iter().all(MPoly::is_zero)
    }

    /// Coordinates in the basis `{μ ∂^I}` with `μ` running over monomials of
    /// degree `<= bound` in [`multi_indices`] order; `None` if some
    /// coefficient has larger degree.
    pub fn coefficient_vector(&self, bound: usize) -> Option<Vec<Rat>> {
        let mons = multi_indices(self.nvars(), bound);
        let mut out = Vec::with_capacity(self.coeffs.len() * mons.len());
        for a in &self.coeffs {
            if a.total_degree().unwrap_or(0) as usize > bound {
                return None;
            }
            out.extend(mons.iter().map(|m| a.coefficient(&m.to_monomial())));
        }
        Some(out)
    }

    /// The same equation viewed at a higher order (zero padding).
    pub fn raise_order(&self, order: usize) -> IdenticalEquation {
        assert!(order >= self.order);
        let n = self.nvars();
        let indices = multi_indices(n, order);
        let coeffs = indices
            .iter()
            .map(|i| self.coeff(i).cloned().unwrap_or_else(|| MPoly::zero(n)))
            .collect();
        DiffEquation {
            order,
            indices,
            coeffs,
        }
    }

    pub fn display_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        let mut parts = Vec::new();
        for (idx, a) in self.terms() {
            let mut d = String::from("p");
            if idx.order() > 0 {
                d.push('_');
                for (v, &k) in idx.exponents().iter().enumerate() {
                    for _ in 0..k {
                        d.push_str(names[v].as_ref());
                    }
                }
            }
            parts.push(format!("({})*{}", a.display_with(names), d));
        }
        format!("{} = 0", parts.join(" + "))
    }
}

impl PointEquation {
    pub fn display(&self) -> String {
        let parts: Vec<String> = self.terms().map(|(idx, a)| format!("{a}*p{idx}")).collect();
        format!("{} = 0", parts.join(" + "))
    }
}
