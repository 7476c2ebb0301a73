//! Universal Witt polynomials over Z: the sparse polynomial engine, the
//! ghost-map inversion that produces the sum/product/negation/Frobenius
//! families, the correction polynomials, and their structural checks.

mod checks;
mod families;
mod poly;

pub use checks::{
    coefficient_of, correction_report, weighted_degree_check, CorrectionCheck, CorrectionReport,
};
pub use families::{
    compute_family_fresh, correction_poly, default_level_cap, family, frobenius_polys, ghost_poly,
    ghost_poly_series, ghost_solve, neg_polys, product_polys, sum_polys, FamilyKind,
};
pub use poly::{Monomial, PolyJson, Series, SparsePoly, TermJson, WittVariable};
