use serde::Serialize;

use crate::algebra::{det_symbolic, poly::grlex_cmp, rank_symbolic, sample_points, MPoly, Rat};
use crate::error::{Error, Result};
use crate::jet::{
    generic_jet_rank, integer_grid, jet_matrix, symbolic_jet_matrix, PolyMap, SAMPLE_BOX,
};

/// Half-width of the integer grid every scan covers.
pub const SCAN_GRID: i64 = 3;

/// Largest jet matrix dimension for which minors are enumerated.
pub const MINOR_GUARD: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanHit {
    #[serde(serialize_with = "crate::report::ser_rat_vec")]
    pub point: Vec<Rat>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub order: usize,
    pub generic_rank: usize,
    pub points_checked: usize,
    pub hits: Vec<ScanHit>,
}

/// Points of the scan set: seeded samples from the sampling box followed
/// by the grid `[-3, 3]^n`, skipping points where the lifting vanishes.
pub fn scan_points(map: &PolyMap, seed: u64, samples: usize) -> Vec<Vec<Rat>> {
    sample_points(map.n(), samples, seed, SAMPLE_BOX)
        .into_iter()
        .chain(integer_grid(map.n(), SCAN_GRID))
        .filter(|p| !map.vanishes_at(p).unwrap_or(true))
        .collect()
}

/// Points where the order-`m` jet rank falls below its generic value.
/// Best effort: the rank-drop locus has measure zero, so an empty result
/// is not a proof of absence.
pub fn hyperosculation_scan(
    map: &PolyMap,
    m: usize,
    seed: u64,
    samples: usize,
) -> Result<ScanResult> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let generic = generic_jet_rank(map, m, seed, samples.max(8)).rank;
    let points = scan_points(map, seed, samples);
    let mut hits = Vec::new();
    for p in &points {
        let rank = jet_matrix(map, m, p)?.rank();
        if rank < generic {
            hits.push(ScanHit {
                point: p.clone(),
                rank,
            });
        }
    }
    Ok(ScanResult {
        order: m,
        generic_rank: generic,
        points_checked: points.len(),
        hits,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDropMinors {
    pub generic_rank: usize,
    /// Nonzero maximal generic-rank minors, content-normalized, sorted by
    /// leading term and deduplicated.
    pub minors: Vec<MPoly>,
}

impl RankDropMinors {
    /// The locus is empty in the chart when some minor is a nonzero
    /// constant.
    pub fn locus_is_empty(&self) -> bool {
        self.minors.iter().any(MPoly::is_constant)
    }

    pub fn vanish_at(&self, point: &[Rat]) -> Result<bool> {
        for m in &self.minors {
            if !num_traits::Zero::is_zero(&m.eval(point)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Generators of the locus where the cokernel of the Taylor map fails to
/// be locally free: all `ρ x ρ` minors of the symbolic jet, `ρ` the
/// generic rank.
pub fn rank_drop_minors(map: &PolyMap, m: usize) -> Result<RankDropMinors> {
    let jet = symbolic_jet_matrix(map, m);
    let sym = jet.symbolic().expect("symbolic");
    if sym.rows() > MINOR_GUARD || sym.cols() > MINOR_GUARD {
        return Err(Error::SizeGuard {
            rows: sym.rows(),
            cols: sym.cols(),
        });
    }
    let rho = rank_symbolic(sym);
    let mut minors = Vec::new();
    let col_sets = combinations(sym.cols(), rho);
    for rows in combinations(sym.rows(), rho) {
        for cols in &col_sets {
            let det = det_symbolic(&sym.select(&rows, cols))?;
            if !det.is_zero() {
                minors.push(det.primitive());
            }
        }
    }
    minors.sort_by(grlex_cmp);
    minors.dedup();
    Ok(RankDropMinors {
        generic_rank: rho,
        minors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{poly_gcd_many, rat};
    use crate::catalog;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(6, 5).len(), 6);
        assert_eq!(combinations(4, 4), vec![vec![0, 1, 2, 3]]);
        assert_eq!(combinations(5, 2).len(), 10);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn scroll_scan_finds_directrix_only() {
        let res = hyperosculation_scan(&catalog::scroll(1, 2), 2, 0, 8).unwrap();
        assert_eq!(res.generic_rank, 5);
        assert!(!res.hits.is_empty());
        for h in &res.hits {
            assert_eq!(h.point[1], rat(0));
            assert_eq!(h.rank, 4);
        }
    }

    #[test]
    fn veronese_and_togliatti_scans_are_empty() {
        assert!(hyperosculation_scan(&catalog::veronese(2, 2), 2, 0, 8)
            .unwrap()
            .hits
            .is_empty());
        assert!(hyperosculation_scan(&catalog::togliatti(), 2, 0, 8)
            .unwrap()
            .hits
            .is_empty());
    }

    #[test]
    fn scroll_minors_generate_u() {
        let res = rank_drop_minors(&catalog::scroll(1, 2), 2).unwrap();
        let u = MPoly::var(2, 1);
        for m in &res.minors {
            assert!(m.div_exact(&u).is_some());
        }
        assert_eq!(poly_gcd_many(2, &res.minors), u);
    }

    #[test]
    fn curve_minors() {
        let res = rank_drop_minors(&catalog::rational_normal_curve(3), 3).unwrap();
        assert_eq!(res.minors, vec![MPoly::one(1)]);
        assert!(res.locus_is_empty());
        let c = catalog::monomial_curve(&[0, 1, 3, 4]).unwrap();
        let res = rank_drop_minors(&c, 3).unwrap();
        assert_eq!(res.minors, vec![MPoly::monomial(&[2])]);
        assert!(res.vanish_at(&[rat(0)]).unwrap());
    }

    #[test]
    fn size_guard() {
        // veronese(2,4) at order 4: 15 x 15
        assert!(matches!(
            rank_drop_minors(&catalog::veronese(2, 4), 4),
            Err(Error::SizeGuard { rows: 15, cols: 15 })
        ));
    }
}
