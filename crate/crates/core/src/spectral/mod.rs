//! The spectral side: the character of Ind_Gamma^G 1, its fixed-point
//! oracle, the multiplicity tables, and the two worked identities.

pub mod chi;
pub mod examples;
pub mod multiplicity;

pub use chi::{chi_rho, compare_with_oracle, gamma_orbits_on_halfspace, ClassSizeConstants, InducedCharOracle, Subgroup};
pub use examples::{base_point_identity, constant_identity, BasePointIdentity, ConstantIdentity};
pub use multiplicity::{decompose, multiplicity, Checksums, MultiplicityReport, MultiplicityRow};
