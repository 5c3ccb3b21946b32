//! Exact arithmetic for Drinfeld modules over A = F_q[t].

pub mod arith;
pub mod drinfeld;
pub mod error;
pub mod field;
pub mod frobrec;
pub(crate) mod fpoly;
pub mod linalg;
pub mod motive;
pub mod ore;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{ff_embed, ff_generator, ff_make, Embedding, FFElem, FField, FieldDesc};
pub use upoly::{upoly_crt, upoly_det, UPoly};
pub use ore::{ore_divmod_left, ore_divmod_right, ore_eval, ore_kernel, ore_mul, ore_splitting, ore_splitting_degree, Kernel, OrePoly, Splitting};
