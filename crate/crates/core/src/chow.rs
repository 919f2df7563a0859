//! Chern classes in the Chow ring `Q[h]/(h^(n+1))` of `P^n` for bundles of
//! principal parts `P^m(O(d))`, via a virtual sum of line bundles.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::algebra::{binomial, Rat};
use crate::error::{Error, Result};
use crate::report::{big_json, rat_json, HypothesisReport, Verdict};

/// `Σ c_t h^t` truncated above `h^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    n: usize,
    coeffs: Vec<Rat>,
}

impl ChowClass {
    /// Pads with zeros; coefficients beyond `h^n` are dropped.
    pub fn new(n: usize, mut coeffs: Vec<Rat>) -> Self {
        coeffs.resize(n + 1, Rat::zero());
        ChowClass { n, coeffs }
    }

    pub fn from_ints(n: usize, coeffs: &[i64]) -> Self {
        Self::new(
            n,
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn one(n: usize) -> Self {
        Self::new(n, vec![Rat::one()])
    }

    /// Total Chern class `1 + a h` of `O(a)`.
    pub fn line(n: usize, twist: &BigInt) -> Self {
        Self::new(n, vec![Rat::one(), Rat::from_integer(twist.clone())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `c_t`, zero past the top degree.
    pub fn c(&self, t: usize) -> Rat {
        self.coeffs.get(t).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &ChowClass) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n + 1,
                got: other.n + 1,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_same(other)?;
        let mut out = vec![Rat::zero(); self.n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Ok(ChowClass::new(self.n, out))
    }

    /// Inverse as a truncated power series.
    pub fn inv(&self) -> Result<ChowClass> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let mut out = vec![Rat::zero(); self.n + 1];
        out[0] = c0.recip();
        for k in 1..=self.n {
            let s: Rat = (1..=k).map(|j| &self.coeffs[j] * &out[k - j]).sum();
            out[k] = -s / c0;
        }
        Ok(ChowClass::new(self.n, out))
    }

    /// Integer power; negative exponents go through [`ChowClass::inv`].
    pub fn pow(&self, e: &BigInt) -> Result<ChowClass> {
        let mut base = if e.is_negative() {
            self.inv()?
        } else {
            self.clone()
        };
        let mut k = e.abs();
        let mut acc = ChowClass::one(self.n);
        let two = BigInt::from(2);
        while !k.is_zero() {
            if (&k % &two).is_one() {
                acc = acc.mul(&base)?;
            }
            k /= &two;
            if !k.is_zero() {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(rat_json).collect())
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let coeff = if abs.is_one() && t > 0 {
                String::new()
            } else {
                abs.to_string()
            };
            match t {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}h")?,
                _ => write!(f, "{coeff}h^{t}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Virtual sum `Σ mult · O(twist)` in K-theory of `P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KClassLine {
    terms: BTreeMap<i64, BigInt>,
}

impl KClassLine {
    pub fn add(&mut self, twist: i64, mult: BigInt) {
        let e = self.terms.entry(twist).or_insert_with(BigInt::zero);
        *e += mult;
        if e.is_zero() {
            self.terms.remove(&twist);
        }
    }

    /// `(twist, multiplicity)` pairs, twists descending.
    pub fn terms(&self) -> Vec<(i64, BigInt)> {
        self.terms
            .iter()
            .rev()
            .map(|(t, m)| (*t, m.clone()))
            .collect()
    }

    pub fn rank(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn first_chern(&self) -> BigInt {
        self.terms.iter().map(|(t, m)| BigInt::from(*t) * m).sum()
    }

    /// `Π (1 + twist h)^mult`.
    pub fn total_chern(&self, n: usize) -> ChowClass {
        self.terms.iter().fold(ChowClass::one(n), |acc, (t, m)| {
            let line = ChowClass::line(n, &BigInt::from(*t));
            acc.mul(&line.pow(m).expect("line classes are invertible"))
                .expect("same n")
        })
    }
}

impl fmt::Display for KClassLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(t, m)| format!("{m}·O({t})"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn check_nm(n: usize, _m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "projective dimension n must be >= 1".into(),
        ));
    }
    Ok(())
}

/// `P^m(O(d))` on `P^n` as `Σ_{t<=m} S^t(Ω¹)(d)`, with
/// `S^t(Ω¹) = C(n+t, n)·O(-t) - C(n+t-1, n)·O(-t+1)` from the Euler
/// sequence.
pub fn principal_parts_kclass(n: usize, d: i64, m: usize) -> Result<KClassLine> {
    check_nm(n, m)?;
    let (ni, mi) = (n as i64, m as i64);
    let mut k = KClassLine::default();
    for t in 0..=mi {
        k.add(d - t, binomial(ni + t, ni));
        k.add(d - t + 1, -binomial(ni + t - 1, ni));
    }
    Ok(k)
}

/// Total Chern class of `P^m(O(d))` on `P^n`.
pub fn chern_principal_parts(n: usize, d: i64, m: usize) -> Result<ChowClass> {
    Ok(principal_parts_kclass(n, d, m)?.total_chern(n))
}

/// `c_1` of `R = ω^C(n+m, n+1) ⊗ L^C(n+m, n)`: `d C(n+m,n) - (n+1) C(n+m,n+1)`.
pub fn determinant_degree(n: usize, d: i64, m: usize) -> BigInt {
    let (ni, mi) = (n as i64, m as i64);
    BigInt::from(d) * binomial(ni + mi, ni) - BigInt::from(ni + 1) * binomial(ni + mi, ni + 1)
}

pub fn chern_r(n: usize, d: i64, m: usize) -> Result<ChowClass> {
    check_nm(n, m)?;
    Ok(ChowClass::line(n, &determinant_degree(n, d, m)))
}

fn base_report(tag: &str, n: usize, d: i64, m: usize) -> HypothesisReport {
    HypothesisReport::new(tag)
        .input("n", n as u64)
        .input("d", d)
        .input("m", m as u64)
}

/// Vanishing of `c_t(P^m(L))` in the window `C(n+m,n) - r - 1 < t <= n`.
/// On `U = P^n` a nonzero `c_t` there means the hypotheses (full-rank
/// Taylor map and no hyperosculating point) cannot all hold.
pub fn a1_vanishing_report(n: usize, d: i64, m: usize, r: usize) -> Result<HypothesisReport> {
    check_nm(n, m)?;
    let rank = binomial(n as i64 + m as i64, n as i64)
        .to_usize()
        .ok_or_else(|| Error::HypothesisOutOfRange("rank too large".into()))?;
    if !(r < rank && rank <= r + n) {
        return Err(Error::HypothesisOutOfRange(format!(
            "need r+1 <= C(n+m,n) <= r+n, got r = {r}, C(n+m,n) = {rank}, n = {n}"
        )));
    }
    let chern = chern_principal_parts(n, d, m)?;
    let window: Vec<usize> = (rank - r..=n).collect();
    let nonzero: Vec<usize> = window
        .iter()
        .copied()
        .filter(|&t| !chern.c(t).is_zero())
        .collect();

    let mut rep = base_report("a1", n, d, m).input("r", r as u64);
    rep.set("rank", rank as u64);
    rep.set(
        "window",
        Value::from(window.iter().map(|&t| t as u64).collect::<Vec<_>>()),
    );
    rep.set("chern_class", chern.to_json());
    rep.set(
        "window_classes",
        Value::Array(window.iter().map(|&t| rat_json(&chern.c(t))).collect()),
    );
    rep.note(format!("c(P^{m}(O({d}))) = {chern} on P^{n}"));
    for &t in &window {
        rep.note(format!("c_{t} = {}", chern.c(t)));
    }
    if nonzero.is_empty() {
        rep.verdict = Verdict::Holds;
        rep.forces_hyperosculation = Some(false);
        rep.summary = "no obstruction: every Chern class in the window vanishes".into();
    } else {
        rep.verdict = Verdict::Fails;
        rep.forces_hyperosculation = Some(true);
        rep.summary = format!(
            "obstruction: c_t != 0 for t in {nonzero:?}; with x(m) = r+1 the system has \
             hyperosculating points (hyperosculating points forced)"
        );
    }
    Ok(rep)
}

/// Compares `c(P^m(L))` with `1/c(R*)` (the identity the kernel sequence
/// gives) and with `1/c(R)`.
pub fn a4_reciprocal_check(n: usize, d: i64, m: usize) -> Result<HypothesisReport> {
    let p = chern_principal_parts(n, d, m)?;
    let deg = determinant_degree(n, d, m);
    let inv_dual = ChowClass::line(n, &-deg.clone()).inv()?;
    let inv_r = ChowClass::line(n, &deg).inv()?;
    let eq_dual = p == inv_dual;
    let eq_r = p == inv_r;

    let mut rep = base_report("a4", n, d, m);
    rep.set("chern_principal_parts", p.to_json());
    rep.set("c1_R", big_json(&deg));
    rep.set("inverse_of_c_R_dual", inv_dual.to_json());
    rep.set("inverse_of_c_R", inv_r.to_json());
    rep.set("equal_to_inverse_of_c_R_dual", eq_dual);
    rep.set("equal_to_inverse_of_c_R", eq_r);
    rep.note(format!("c(P) = {p}"));
    rep.note(format!("1/c(R*) = {inv_dual}"));
    rep.note(format!("1/c(R) = {inv_r}"));
    rep.verdict = if eq_dual {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    rep.summary = if eq_dual {
        "c(P^m(L)) = 1/c(R*): consistent with an exact kernel sequence on P^n".into()
    } else {
        "c(P^m(L)) != 1/c(R*): the kernel sequence cannot be exact on all of P^n".into()
    };
    Ok(rep)
}
