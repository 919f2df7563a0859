//! Classical examples: Veronese charts, rational normal curves and scrolls,
//! monomial projections, and the Togliatti surface.

use std::collections::HashSet;

use crate::algebra::MPoly;
use crate::error::{Error, Result};
use crate::jet::{multi_indices, PolyMap};

/// A named catalog map together with what is known about it.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub map: PolyMap,
    pub is_scroll_chart: bool,
    pub is_veronese: bool,
    /// `(order, generic dim T)` pairs established by exact computation.
    pub expected_generic_dims: Vec<(usize, i64)>,
}

/// Affine chart of the degree-`d` Veronese embedding of `P^n`: all
/// monomials of degree `<= d`, by degree.
pub fn veronese(n: usize, d: usize) -> PolyMap {
    assert!(n >= 1 && d >= 1, "veronese needs n >= 1 and d >= 1");
    let coords = multi_indices(n, d)
        .iter()
        .map(|i| MPoly::monomial(i.exponents()))
        .collect();
    PolyMap::new(coords)
        .expect("distinct monomials are independent")
        .with_name(format!("veronese-{n}-{d}"))
}

/// `(1, t, ..., t^d)`.
pub fn rational_normal_curve(d: usize) -> PolyMap {
    veronese(1, d).with_name(format!("rnc{d}"))
}

/// The map whose coordinates are the listed monomials.
pub fn monomial_map(n: usize, exponents: &[Vec<u32>]) -> Result<PolyMap> {
    if exponents.is_empty() {
        return Err(Error::InvalidArgument("empty exponent list".into()));
    }
    let mut seen = HashSet::new();
    for e in exponents {
        if e.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: e.len(),
            });
        }
        if !seen.insert(e) {
            return Err(Error::InvalidArgument(format!(
                "duplicate exponent {e:?} in monomial map"
            )));
        }
    }
    PolyMap::new(exponents.iter().map(|e| MPoly::monomial(e)).collect())
}

/// Curve `(t^a_0, ..., t^a_r)`.
pub fn monomial_curve(exponents: &[u32]) -> Result<PolyMap> {
    let exps: Vec<Vec<u32>> = exponents.iter().map(|&e| vec![e]).collect();
    let parts: Vec<String> = exponents.iter().map(u32::to_string).collect();
    Ok(monomial_map(1, &exps)?.with_name(format!("curve-{}", parts.join("-"))))
}

/// Chart `(1, t, ..., t^a, u, ut, ..., ut^b)` of the rational normal
/// scroll `S(a, b)` in `P^(a+b+1)`.
pub fn scroll(a: usize, b: usize) -> PolyMap {
    assert!(1 <= a && a <= b, "scroll needs 1 <= a <= b");
    let mut coords = Vec::with_capacity(a + b + 2);
    for k in 0..=a as u32 {
        coords.push(MPoly::monomial(&[k, 0]));
    }
    for k in 0..=b as u32 {
        coords.push(MPoly::monomial(&[k, 1]));
    }
    PolyMap::new(coords)
        .expect("distinct monomials are independent")
        .with_var_names(vec!["t".into(), "u".into()])
        .expect("two variables")
        .with_name(format!("scroll-{a}-{b}"))
        .as_bundle_chart()
}

/// Chart `z = 1` of the cubics `x^2y, x^2z, xy^2, y^2z, xz^2, yz^2`.
pub fn togliatti() -> PolyMap {
    let exps = [[2, 1], [2, 0], [1, 2], [0, 2], [1, 0], [0, 1]];
    let exps: Vec<Vec<u32>> = exps.iter().map(|e| e.to_vec()).collect();
    monomial_map(2, &exps)
        .expect("distinct monomials")
        .with_name("togliatti")
}

/// `(1, t^2 - 1, t^3 - t)`, the nodal plane cubic.
pub fn nodal_cubic() -> PolyMap {
    let t = MPoly::var(1, 0);
    let one = MPoly::one(1);
    PolyMap::new(vec![one.clone(), &t.pow(2) - &one, &t.pow(3) - &t])
        .expect("independent")
        .with_name("nodal-cubic")
}

fn entry(map: PolyMap, dims: &[(usize, i64)]) -> CatalogEntry {
    let name = map.name().unwrap_or_default().to_string();
    CatalogEntry {
        is_scroll_chart: map.is_bundle_chart(),
        is_veronese: name.starts_with("veronese") || name.starts_with("rnc"),
        name,
        map,
        expected_generic_dims: dims.to_vec(),
    }
}

/// The fixed catalog used by tests and the `catalog` command.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry(rational_normal_curve(2), &[(1, 1), (2, 2)]),
        entry(rational_normal_curve(3), &[(1, 1), (2, 2), (3, 3)]),
        entry(rational_normal_curve(4), &[(1, 1), (2, 2), (3, 3), (4, 4)]),
        entry(veronese(1, 3), &[(3, 3)]),
        entry(veronese(2, 1), &[(1, 2)]),
        entry(veronese(2, 2), &[(1, 2), (2, 5)]),
        entry(veronese(2, 3), &[(1, 2), (2, 5), (3, 9)]),
        entry(togliatti(), &[(1, 2), (2, 4)]),
        entry(scroll(1, 1), &[(1, 2), (2, 3)]),
        entry(scroll(1, 2), &[(1, 2), (2, 4)]),
        entry(scroll(2, 2), &[(1, 2), (2, 4), (3, 5)]),
        entry(scroll(2, 3), &[(1, 2), (2, 4), (3, 6)]),
        entry(monomial_curve(&[0, 1, 3, 4]).expect("valid"), &[(3, 3)]),
        entry(monomial_curve(&[0, 1, 4]).expect("valid"), &[(2, 2)]),
        entry(nodal_cubic(), &[(2, 2)]),
    ]
}

fn parse_params(s: &str) -> Option<Vec<usize>> {
    s.split('-').map(|p| p.parse().ok()).collect()
}

/// Resolves a catalog name: the fixed entries plus the parametric
/// families `rncD`, `veronese-N-D`, `scroll-A-B` and `curve-E0-E1-...`.
pub fn lookup(name: &str) -> Result<PolyMap> {
    let unknown = || Error::UnknownCatalogEntry(name.to_string());
    match name {
        "togliatti" => return Ok(togliatti()),
        "nodal-cubic" => return Ok(nodal_cubic()),
        _ => {}
    }
    if let Some(d) = name.strip_prefix("rnc") {
        let d: usize = d.parse().map_err(|_| unknown())?;
        if d == 0 {
            return Err(unknown());
        }
        return Ok(rational_normal_curve(d));
    }
    if let Some(rest) = name.strip_prefix("veronese-") {
        return match parse_params(rest).as_deref() {
            Some(&[n, d]) if n >= 1 && d >= 1 => Ok(veronese(n, d)),
            _ => Err(unknown()),
        };
    }
    if let Some(rest) = name.strip_prefix("scroll-") {
        return match parse_params(rest).as_deref() {
            Some(&[a, b]) if 1 <= a && a <= b => Ok(scroll(a, b)),
            _ => Err(unknown()),
        };
    }
    if let Some(rest) = name.strip_prefix("curve-") {
        let exps = parse_params(rest).ok_or_else(unknown)?;
        let exps: Vec<u32> = exps.into_iter().map(|e| e as u32).collect();
        return monomial_curve(&exps);
    }
    Err(unknown())
}

/// A random monomial curve `(t^e_0, ..., t^e_r)` with `1 <= r <= max_r`
/// and distinct exponents in `0..=max_d`.
pub fn random_monomial_curve<R: rand::Rng>(rng: &mut R, max_d: u32, max_r: usize) -> PolyMap {
    let r = rng.gen_range(1..=max_r.min(max_d as usize));
    let mut exps: Vec<u32> = rand::seq::index::sample(rng, max_d as usize + 1, r + 1)
        .into_iter()
        .map(|e| e as u32)
        .collect();
    exps.sort_unstable();
    monomial_curve(&exps).expect("distinct exponents")
}
