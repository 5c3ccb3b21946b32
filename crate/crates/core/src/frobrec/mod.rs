//! Recognizing Frobenius powers from bivariate annihilators and generator images.

pub mod bivar;
pub mod classify;
pub mod monomial;
pub mod parse;
pub mod ratfunc;
pub mod theorem;

pub use bivar::BivarPoly;
pub use classify::{classify_frobenius_bivariate, FrobClassification, Witness};
pub use monomial::{
    kummer_setup, monomial_exponent_algebraic, monomial_exponent_sampled,
    recover_monomial_exponent, KummerSetup,
};
pub use ratfunc::RatFunc;
pub use theorem::{
    annihilator, consistency_exponents, theorem_frob_res, Consistency, FrobVerdict,
    GeneratorReport, TheoremReport,
};

/// P(X, Y) = Q(X, Y^{p^N}) with N maximal.
pub fn strip_p_powers(p: &BivarPoly) -> crate::Result<(BivarPoly, u32)> {
    p.strip_p_powers()
}
