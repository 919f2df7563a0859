//! Polynomial gcd over Q via recursive primitive remainder sequences,
//! plus the univariate tools (square-free decomposition, rational roots)
//! used for Wronskian analysis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::MPoly;
use super::Rat;

/// Greatest common divisor in Q[x_0, ..., x_{n-1}], normalized to coprime
/// integer coefficients with a positive leading coefficient.
/// `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    a.check_same_ring(b);
    let vars: Vec<usize> = (0..a.nvars()).collect();
    gcd_rec(a, b, &vars).primitive()
}

/// gcd of a whole family; zero polynomials are ignored.
pub fn poly_gcd_many<'a, I>(nvars: usize, polys: I) -> MPoly
where
    I: IntoIterator<Item = &'a MPoly>,
{
    polys
        .into_iter()
        .fold(MPoly::zero(nvars), |g, p| poly_gcd(&g, p))
}

fn gcd_rec(a: &MPoly, b: &MPoly, vars: &[usize]) -> MPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    let Some(pos) = vars
        .iter()
        .position(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
    else {
        return MPoly::one(n);
    };
    let v = vars[pos];
    let rest = &vars[pos + 1..];

    let ca = content_in(a, v, rest);
    let cb = content_in(b, v, rest);
    let g_content = gcd_rec(&ca, &cb, rest);

    let mut f = a.div_exact(&ca).expect("content divides").primitive();
    let mut g = b.div_exact(&cb).expect("content divides").primitive();
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        if g.degree_in(v) == 0 {
            // primitive and free of v: a unit in the PRS
            f = MPoly::one(n);
            break;
        }
        let r = pseudo_remainder(&f, &g, v);
        f = g;
        g = primitive_part_in(&r, v, rest);
    }
    let pp = primitive_part_in(&f, v, rest);
    &g_content * &pp
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
fn content_in(p: &MPoly, v: usize, rest: &[usize]) -> MPoly {
    let mut c = MPoly::zero(p.nvars());
    for coeff in p.coefficients_in(v) {
        if coeff.is_zero() {
            continue;
        }
        c = gcd_rec(&c, &coeff, rest);
        if c.is_constant() {
            return MPoly::one(p.nvars());
        }
    }
    c
}

fn primitive_part_in(p: &MPoly, v: usize, rest: &[usize]) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v, rest);
    p.div_exact(&c).expect("content divides").primitive()
}

/// Pseudo-remainder of `a` by `b` with respect to `x_v`.
pub fn pseudo_remainder(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree_in(v);
    let lb = b.coefficients_in(v).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v).pop().expect("nonzero");
        let mut shift = vec![0; a.nvars()];
        shift[v] = dr - db;
        let xv = MPoly::monomial(&shift);
        r = &(&lb * &r) - &(&(&lr * &xv) * b);
        r = r.primitive();
    }
    r
}

/// Dense univariate view: coefficient `k` of `t^k`.
pub fn univariate_coeffs(p: &MPoly) -> Vec<Rat> {
    assert_eq!(p.nvars(), 1, "univariate polynomial expected");
    p.coefficients_in(0)
        .into_iter()
        .map(|c| c.constant_term())
        .collect()
}

pub fn univariate_from_coeffs(coeffs: &[Rat]) -> MPoly {
    MPoly::from_terms(
        1,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (vec![k as u32], c.clone())),
    )
}

/// Yun's square-free decomposition of a nonconstant univariate polynomial:
/// returns `(a_i, i)` with `p = c · Π a_i^i`, each `a_i` square-free,
/// pairwise coprime and nonconstant.
pub fn square_free_decomposition(p: &MPoly) -> Vec<(MPoly, u32)> {
    assert_eq!(p.nvars(), 1, "univariate polynomial expected");
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let dp = p.partial(0).expect("one variable");
    let a0 = poly_gcd(p, &dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let mut c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.partial(0).expect("one variable");
    let mut i = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.partial(0).expect("one variable");
        i += 1;
    }
    out
}

/// Distinct rational roots of a univariate polynomial, found with the
/// rational root test on its primitive integer form.
pub fn rational_roots(p: &MPoly) -> Vec<Rat> {
    let mut roots = Vec::new();
    if p.is_zero() || p.is_constant() {
        return roots;
    }
    let prim = p.primitive();
    let mut coeffs: Vec<BigInt> = univariate_coeffs(&prim)
        .into_iter()
        .map(|c| c.to_integer())
        .collect();
    // strip the factor t^k
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(Rat::zero());
        coeffs.drain(..zeros);
    }
    if coeffs.len() <= 1 {
        return roots;
    }
    let a0 = coeffs[0].abs();
    let an = coeffs.last().expect("nonempty").abs();
    let num_cands = divisors(&a0);
    let den_cands = divisors(&an);
    let mut seen = std::collections::BTreeSet::new();
    for q in &den_cands {
        for pnum in &num_cands {
            for sign in [1i32, -1] {
                let cand = Rat::new(pnum * BigInt::from(sign), q.clone());
                if seen.insert(cand.clone()) && horner(&coeffs, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn horner(coeffs: &[BigInt], x: &Rat) -> Rat {
    coeffs
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Order of vanishing of a nonzero univariate polynomial at `root`.
pub fn vanishing_order(p: &MPoly, root: &Rat) -> u32 {
    let mut q = p.clone();
    let linear = univariate_from_coeffs(&[-root.clone(), Rat::one()]);
    let mut k = 0;
    while !q.is_zero()
        && q.eval(std::slice::from_ref(root))
            .expect("univariate")
            .is_zero()
    {
        q = q.div_exact(&linear).expect("root gives a linear factor");
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn uni(c: &[i64]) -> MPoly {
        univariate_from_coeffs(&c.iter().map(|&k| r(k)).collect::<Vec<_>>())
    }

    #[test]
    fn univariate_gcd() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = uni(&[-2, 1, 1]);
        let b = uni(&[3, -4, 1]);
        assert_eq!(poly_gcd(&a, &b), uni(&[-1, 1]));
        assert_eq!(poly_gcd(&a, &MPoly::zero(1)), a.primitive());
        assert_eq!(poly_gcd(&uni(&[1, 1]), &uni(&[-1, 1])), MPoly::one(1));
    }

    #[test]
    fn bivariate_gcd() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let one = MPoly::one(2);
        let g = &(&x * &y) + &one;
        let a = &g * &(&x - &y);
        let b = &g * &(&(&x * &x) + &y);
        assert_eq!(poly_gcd(&a, &b), g.primitive());
        let u2 = y.scale(&r(-2));
        let u_t = &y * &(&x + &one);
        assert_eq!(poly_gcd(&u2, &u_t), y);
    }

    #[test]
    fn square_free_parts() {
        // t^2 (t+1)^3 (t^2+1)
        let t = uni(&[0, 1]);
        let p = &(&t.pow(2) * &uni(&[1, 1]).pow(3)) * &uni(&[1, 0, 1]);
        let sf = square_free_decomposition(&p);
        let degs: Vec<_> = sf
            .iter()
            .map(|(a, i)| (a.total_degree().unwrap(), *i))
            .collect();
        assert_eq!(degs, vec![(2, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn rational_roots_found() {
        // (2t - 1)(t + 3)(t^2 + 1) t
        let p = &(&(&uni(&[-1, 2]) * &uni(&[3, 1])) * &uni(&[1, 0, 1])) * &uni(&[0, 1]);
        assert_eq!(
            rational_roots(&p),
            vec![r(-3), r(0), Rat::new(1.into(), 2.into())]
        );
        assert!(rational_roots(&uni(&[1, 0, 3])).is_empty());
        assert_eq!(vanishing_order(&uni(&[0, 0, 72]), &r(0)), 2);
    }
}
