//! The two worked identities: f = 1, whose trace is |G| because the trivial
//! representation occurs once in rho, and f = the indicator of p0, whose
//! trace divided by |K| counts Gamma \ G / K.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::geometric::side::GeometricSide;
use crate::geometric::{rational_string, SphericalFn};
use crate::gl3::mat::group_order;
use crate::halfspace::halfspace_size;

fn int(x: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantIdentity {
    pub geometric_total: String,
    pub direct_trace: String,
    pub group_order: String,
    pub holds: bool,
}

pub fn constant_identity(side: &GeometricSide) -> ConstantIdentity {
    let v = side.evaluate(&SphericalFn::one(&side.orbits));
    let g = int(group_order(side.hs().q()));
    ConstantIdentity {
        holds: v.oracle_total == g && v.direct_trace == g,
        geometric_total: rational_string(&v.oracle_total),
        direct_trace: rational_string(&v.direct_trace),
        group_order: rational_string(&g),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasePointIdentity {
    pub direct_trace: String,
    pub k_order: String,
    /// direct_trace / |K|.
    pub quotient: String,
    pub quotient_is_nonnegative_integer: bool,
    /// The geometric side evaluated on the same f.
    pub geometric_total: String,
    /// The printed total for this n mod 3.
    pub printed: String,
    pub printed_matches: bool,
    /// quotient - printed.
    pub delta: String,
}

/// The printed value: q^3(q^2-1)(q-1) / (p^3(p^2-1)(p^3-1)), plus
/// (q^3-q)/(p^3-1) when 3 does not divide n.
pub fn printed_base_point_total(p: u64, n: u32) -> BigRational {
    let (p, q) = (BigInt::from(p), BigInt::from(p).pow(n));
    let one = BigInt::from(1);
    let mut s = BigRational::new(
        q.pow(3) * (&q * &q - &one) * (&q - &one),
        p.pow(3) * (&p * &p - &one) * (p.pow(3) - &one),
    );
    if n % 3 != 0 {
        s += BigRational::new(q.pow(3) - &q, p.pow(3) - &one);
    }
    s
}

pub fn base_point_identity(side: &GeometricSide) -> BasePointIdentity {
    let f = side.hs().field();
    let v = side.evaluate(&SphericalFn::delta_p0(&side.orbits));
    let k = group_order(f.q) / halfspace_size(f.q);
    let quotient = &v.direct_trace / int(k);
    let printed = printed_base_point_total(f.p, f.n);
    BasePointIdentity {
        direct_trace: rational_string(&v.direct_trace),
        k_order: k.to_string(),
        quotient_is_nonnegative_integer: quotient.is_integer() && !quotient.is_negative(),
        geometric_total: rational_string(&v.oracle_total),
        printed_matches: printed == quotient,
        delta: rational_string(&(&quotient - &printed)),
        printed: rational_string(&printed),
        quotient: rational_string(&quotient),
    }
}

impl BasePointIdentity {
    pub fn quotient_value(&self) -> BigRational {
        crate::geometric::parse_rational(&self.quotient).unwrap_or_else(|_| BigRational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_values() {
        assert_eq!(printed_base_point_total(2, 2), BigRational::new(180.into(), 7.into()));
        assert_eq!(printed_base_point_total(7, 1), BigRational::from_integer(1.into()));
    }

    #[test]
    fn identities_at_f4() {
        use crate::gf::{DeltaRule, FieldCtx, Tower};
        use crate::halfspace::{HalfSpace, KOrbits};
        use crate::spectral::chi::{gamma_orbits_on_halfspace, InducedCharOracle};
        use crate::Exec;
        let hs = HalfSpace::new(Tower::new(FieldCtx::new(2, 2, None).unwrap(), DeltaRule::default()).unwrap());
        let ko = KOrbits::build(&hs, 1 << 30).unwrap();
        let side = GeometricSide::build(&ko, 1 << 32, Exec::Parallel).unwrap();
        let c = constant_identity(&side);
        assert!(c.holds);
        assert_eq!(c.group_order, "181440");
        let b = base_point_identity(&side);
        assert_eq!(b.k_order, "63");
        assert_eq!(b.quotient, "18");
        assert!(b.quotient_is_nonnegative_integer && !b.printed_matches);
        assert_eq!(b.geometric_total, b.direct_trace);
        // Gamma \ G / K counted independently of the trace
        let oracle = InducedCharOracle::new(&hs, 1 << 30).unwrap();
        assert_eq!(gamma_orbits_on_halfspace(&oracle, Exec::Parallel).unwrap(), b.quotient_value());
    }
}
