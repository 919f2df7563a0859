//! Hyperosculation: Wronskians and inflection divisors of curves, rank-drop
//! scans and determinantal generators for higher-dimensional charts, and
//! identical (Laplace-type) differential equations.

mod curve;
mod identical;
mod locus;

pub use curve::{
    brill_segre_expected, inflection_divisor, remove_content, wronskian, InflectionDivisor,
    RationalInflection, ResidualFactor,
};
pub use identical::{
    default_coeff_degree, differentiate_equation, identical_equations, in_identical_span,
};
pub use locus::{
    hyperosculation_scan, rank_drop_minors, scan_points, RankDropMinors, ScanHit, ScanResult,
    MINOR_GUARD, SCAN_GRID,
};
