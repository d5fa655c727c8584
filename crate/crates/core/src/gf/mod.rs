//! Finite fields: F_p, F_q = F_{p^n}, and the cubic extension F_q(delta^(1/3)).

pub mod chars;
pub mod field;
pub mod poly;
pub mod prime;
pub mod tower;

pub use field::{DeltaRule, Fe, FieldConfig, FieldCtx};
pub use tower::{FieldElem, Fq3, Level, Tower};
