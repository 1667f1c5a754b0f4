//! Rees algebras of filtered presentations, filtration compatibility of
//! brackets, and tangency criteria for compactifications.

mod filtration;
mod presentation;
mod tangency;

pub use filtration::{filtration_compat_check, monomials_up_to_weight, poly_weight, CompatReport, Compatibility};
pub use presentation::{
    polynomial_presentation, rees_from_filtration, weyl_presentation, Expr, FilteredPresentation, ReesPresentation,
    ReesReport, Rule, Strategy, Word,
};
pub use tangency::{
    divisor_tangency_check, ideal_tangency_check, pn_tangency_check, ChartReport, DivisorVerdict, TangencyFailure,
    TangencyReport,
};
