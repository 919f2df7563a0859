//! Exact arithmetic: rationals, multivariate polynomials over Q, and
//! fraction-free linear algebra over Q and Q[x].

pub mod gcd;
pub mod matrix;
pub mod poly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use gcd::{poly_gcd, poly_gcd_many};
pub use matrix::{
    det_scalar, det_symbolic, exact_rank, in_span, left_kernel, rank_scalar, rank_symbolic,
    right_kernel, sample_points, sampled_rank, ExactMatrix, Matrix,
};
pub use poly::{default_var_names, MPoly, Monomial};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Binomial coefficient `C(n, k)` for integer `n` (possibly negative) and
/// `k >= 0`; zero when `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `C(n, k)` as a `usize`, for counts that index memory.
pub fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
