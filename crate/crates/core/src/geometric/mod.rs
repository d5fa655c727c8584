//! The geometric side: spherical test functions, the horocycle transform,
//! closed-form and brute-force orbital sums, and their assembly.

pub mod closed;
pub mod horocycle;
pub mod oracles;
pub mod side;
mod spherical;

pub use closed::{orbital_sum_closed, orbital_sum_closed_form, Branch, ClosedForm, Linear, Term};
pub use horocycle::{horocycle_count, horocycle_transform};
pub use oracles::{direct_trace_oracle, orbital_sum_oracle};
pub use spherical::{parse_rational, rational_string, FnEntry, SphericalFn};
