//! Multiplicities m(pi, rho) of the irreducibles of GL3(F_q) in
//! rho = Ind_{GL3(F_p)}^{GL3(F_q)} 1, for gcd(n, 6) = 1.
//!
//! Each case has a closed form in p and q and an expanded form in the class
//! sizes H1..E2 of GL3(F_p); both are transcribed and compared.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::chi::ClassSizeConstants;
use crate::error::{Error, Result};
use crate::gf::chars::{count_chars, CharCondition, Family};

type Q = BigRational;

fn z(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Dimension of each irreducible in a family.
pub fn dimension(family: Family, q: &BigInt) -> BigInt {
    let one = BigInt::one();
    let q2q1 = q * q + q + 1;
    match family {
        Family::Alpha => one,
        Family::PiAlpha => q * q + q,
        Family::PiAlphaPrime => q * q * q,
        Family::PiAb => q2q1,
        Family::PiAbPrime => q * q2q1,
        Family::PiAbc => (q + 1) * q2q1,
        Family::Rho => (q - 1) * q2q1,
        Family::Sigma => (q - 1) * (q - 1) * (q + 1),
    }
}

pub fn check_regime(p: u64, n: u32) -> Result<()> {
    if n % 2 == 0 || n % 3 == 0 {
        return Err(Error::UnsupportedRegime { p, n });
    }
    Ok(())
}

/// p^3 (p-1)^2 (p+1)(p^2+p+1), the common denominator of the closed forms.
fn denominator(p: &BigInt) -> BigInt {
    p.pow(3) * (p - 1u32).pow(2) * (p + 1) * (p * p + p + 1)
}

/// The printed closed form for one case, without regime checks.
pub fn closed_form(cond: CharCondition, p: u64, q: &BigInt) -> Q {
    let p = &z(p as i64);
    let a = q - p;
    let b = q - p * p;
    let num: BigInt = match (cond.family, cond.case) {
        (_, 1) => BigInt::zero(),
        (Family::Alpha, 2) => BigInt::zero(),
        (Family::Alpha, _) => return Q::one(),
        (Family::PiAlpha, 2) => &a * &b,
        (Family::PiAlpha, _) => &a * (q + p.pow(5) - 2 * p * p),
        (Family::PiAlphaPrime, 2) => &a * &b * (q + p * p + p),
        (Family::PiAlphaPrime, _) => &a * (q * q + p * q + p.pow(5) - p.pow(4) - p.pow(3) - p * p),
        (Family::PiAb, 2 | 3) => &a * &b,
        (Family::PiAb, _) => q * (q + p.pow(5) - 2 * p * p - p) + p.pow(3) * (p.pow(5) - 2 * p.pow(3) - p * p + 3),
        (Family::PiAbPrime, 2) => &a * &b * (q + p * p + p + 1),
        (Family::PiAbPrime, 3) => &a * (q * (q + p + 1) + p * p * (p.pow(3) - p * p - p - 2)),
        (Family::PiAbPrime, _) => &a * (q * (q + p + 1) + p * p * (2 * p - 3) * (p * p + p + 1)),
        (Family::PiAbc, 2) => &a * &b * (q + p * p + p + 2),
        (Family::PiAbc, 3) => &a * (q * (q + p + 2) + p * p * (p.pow(3) - p * p - p - 3)),
        (Family::PiAbc, _) => {
            q * (q * q + 2 * q + 3 * p.pow(5) - p.pow(4) - p.pow(3) - 6 * p * p - 2 * p)
                + p.pow(3) * (p.pow(5) - 4 * p.pow(3) + p + 6)
        }
        (Family::Rho, 2) => &a * &b * (q + p * p + p),
        (Family::Rho, 3) => &a * (q * (q + p) + p * p * (p.pow(3) - p * p - p - 1)),
        (Family::Rho, _) => q * (q * q + p.pow(5) - p.pow(4) - p.pow(3) - 2 * p * p) + p.pow(4) * (-p.pow(4) + 2 * p + 1),
        (Family::Sigma, 2) => &a * &b * (q + p * p + p - 1),
        (Family::Sigma, _) => q * (q * q - q - p.pow(4) - p.pow(3) + p) + p.pow(4) * (p.pow(4) - p * p + 1),
    };
    Q::new(num, denominator(p))
}

/// The printed expanded form (1/|Gamma|)(...) in the class sizes of GL3(F_p).
/// Cases whose sums all vanish give 0.
pub fn expanded_form(cond: CharCondition, p: u64, q: &BigInt, c: &ClassSizeConstants) -> Q {
    let pp = &z(p as i64);
    let g = |x: &BigUint| Q::from_integer(BigInt::from(x.clone()));
    let (h1, h2, p1, p2, p3, e1, e2) = (g(&c.h1), g(&c.h2), g(&c.p1), g(&c.p2), g(&c.p3), g(&c.e1), g(&c.e2));
    let i = |x: BigInt| Q::from_integer(x);
    let q_ = i(q.clone());
    let d = i(pp - 1u32); // p - 1
    let d2 = i(pp - 2u32);
    let d3 = i(pp - 3u32);
    let d4 = i(pp - 4u32);
    let third = Q::new(z(1), z(3));
    let half = Q::new(z(1), z(2));
    let sixth = Q::new(z(1), z(6));
    let p2p = i(pp * pp - pp);
    let p3p = i(pp.pow(3) - pp);
    let q2q1 = &q_ * &q_ + &q_ + Q::one();
    let one = Q::one();
    let inner: Q = match (cond.family, cond.case) {
        (_, 1) => Q::zero(),
        (Family::Alpha, 2) => (&one - &h1 + &h2 * &third + &p1 + &p2 - &p3 - &e2 * &third) * &d,
        (Family::Alpha, _) => {
            // the sum of all class sizes of GL3(F_p)
            &d * (&one + &p1 + &p2)
                + &d * &d2 * (&h1 + &p3)
                + &d * &d2 * &d3 * &sixth * &h2
                + &p3p * &third * &e2
                + &d * &p2p * &half * &e1
        }
        (Family::PiAlpha, 2) => {
            (&q_ * &q_ + &q_ - (&q_ + Q::from(z(1))) * &h1 + Q::new(z(2), z(3)) * &h2 + &q_ * &p1 - &p3 + &e2 * &third) * &d
        }
        (Family::PiAlpha, _) => {
            (&q_ * &q_ + &q_) * &d + (&q_ + Q::from(z(1))) * &h1 * &d * &d2 + &d * &d2 * &d3 * &h2 * &third + &q_ * &p1 * &d
                + &d * &d2 * &p3
                - &e2 * &third * &p3p
        }
        (Family::PiAlphaPrime, 2) => (&q_ * &q_ * &q_ - &q_ * &h1 + &h2 * &third - &e2 * &third) * &d,
        (Family::PiAlphaPrime, _) => {
            &q_ * &q_ * &q_ * &d + &q_ * &d * &d2 * &h1 + &d * &d2 * &d3 * &h2 * &sixth - &p2p * &d * &e1 * &half
                + &p3p * &e2 * &third
        }
        (Family::PiAb, 2) => {
            &q2q1 * &d - (&q_ + Q::from(z(2))) * &d * &h1 + &d * &h2 + (&q_ + Q::from(z(1))) * &d * &p1 + &d * &p2 - Q::from(z(2)) * &d * &p3
        }
        (Family::PiAb, 3) => {
            &q2q1 * &d - &d * (&q_ - i(pp.clone()) + Q::from(z(3))) * &h1 - &d * &d3 * &h2 * &half + (&q_ + Q::from(z(1))) * &d * &p1
                + &d * &p2
                + &d * &d3 * &p3
                - &d * &d * &e1 * &half
        }
        (Family::PiAb, _) => {
            &q2q1 * &d + (&q_ + Q::from(z(2))) * &d * &d2 * &h1 + &d * &d2 * &d3 * &h2 * &half + (&q_ + Q::from(z(1))) * &d * &p1
                + &d * &p2
                + Q::from(z(2)) * &d * &d2 * &p3
                + &d * &p2p * &e1 * &half
        }
        (Family::PiAbPrime, 2) => {
            &q_ * &q2q1 * &d - (Q::from(z(2)) * &q_ + Q::from(z(1))) * &d * &h1 + &d * &h2 + &q_ * &d * &p1 - &d * &p3
        }
        (Family::PiAbPrime, 3) => {
            &q_ * &q2q1 * &d + &d * (&q_ * i(pp.clone()) - Q::from(z(3)) * &q_ - Q::from(z(1))) * &h1 - &d * &d3 * &h2 * &half
                + &q_ * &d * &p1
                - &d * &p3
                + &d * &d * &e1 * &half
        }
        (Family::PiAbPrime, _) => {
            &q_ * &q2q1 * &d + (Q::from(z(2)) * &q_ + Q::from(z(1))) * &d * &d2 * &h1 + &d * &d2 * &d3 * &h2 * &half
                + &q_ * &d * &p1
                + &d * &d2 * &p3
                - &d * &p2p * &e1 * &half
        }
        (Family::PiAbc, 2) => {
            (&q_ + Q::from(z(1))) * &q2q1 * &d + Q::from(z(2)) * &d * &h2 - Q::from(z(3)) * (&q_ + Q::from(z(1))) * &d * &h1
                + (Q::from(z(2)) * &q_ + Q::from(z(1))) * &d * &p1
                + &d * &p2
                - Q::from(z(3)) * &d * &p3
        }
        (Family::PiAbc, 3) => {
            (&q_ + Q::from(z(1))) * &q2q1 * &d - &d * &d3 * &h2 + (&q_ + Q::from(z(1))) * &d * &d4 * &h1 + (Q::from(z(2)) * &q_ + Q::from(z(1))) * &d * &p1
                + &d * &p2
                + &d * &d4 * &p3
        }
        (Family::PiAbc, _) => {
            (&q_ + Q::from(z(1))) * &q2q1 * &d + &d * &d2 * &d3 * &h2 + Q::from(z(3)) * (&q_ + Q::from(z(1))) * &d * &d2 * &h1
                + (Q::from(z(2)) * &q_ + Q::from(z(1))) * &d * &p1
                + &d * &p2
                + Q::from(z(3)) * &d * &d2 * &p3
        }
        (Family::Rho, 2) => (&q_ - Q::from(z(1))) * &q2q1 * &d - (&q_ - Q::from(z(1))) * &d * &h1 - &d * &p1 - &d * &p2 + &d * &p3,
        (Family::Rho, 3) => {
            (&q_ - Q::from(z(1))) * &q2q1 * &d + (&q_ - Q::from(z(1))) * &d * &d2 * &h1 - &d * &p1 - &d * &p2 - &d * &d2 * &p3 + &d * &d * &e1
        }
        (Family::Rho, _) => {
            (&q_ - Q::from(z(1))) * &q2q1 * &d + (&q_ - Q::from(z(1))) * &d * &d2 * &h1 - &d * &p1 - &d * &p2 - &d * &d2 * &p3 - &d * &p2p * &e1
        }
        (Family::Sigma, 2) => {
            (&q_ - Q::from(z(1))) * (&q_ - Q::from(z(1))) * (&q_ + Q::from(z(1))) * &d - (&q_ - Q::from(z(1))) * &d * &p1 + &d * &p2 - &d * &e2
        }
        (Family::Sigma, _) => {
            (&q_ - Q::from(z(1))) * (&q_ - Q::from(z(1))) * (&q_ + Q::from(z(1))) * &d - (&q_ - Q::from(z(1))) * &d * &p1 + &d * &p2 + &p3p * &e2
        }
    };
    let gamma = Q::from_integer(pp.pow(3) * (pp.pow(3) - 1u32) * (pp * pp - 1u32) * (pp - 1u32));
    inner / gamma
}

/// m(pi, rho) for the case `cond`, in the supported regime.
pub fn multiplicity(cond: CharCondition, p: u64, n: u32) -> Result<Q> {
    check_regime(p, n)?;
    Ok(closed_form(cond, p, &z(p as i64).pow(n)))
}

/// One family/case row of the decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityRow {
    pub family: Family,
    pub case: u8,
    pub condition: &'static str,
    #[serde(serialize_with = "ser_q")]
    pub closed: Q,
    #[serde(serialize_with = "ser_q")]
    pub expanded: Q,
    #[serde(serialize_with = "ser_u")]
    pub count: BigUint,
    #[serde(serialize_with = "ser_i")]
    pub dimension: BigInt,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::geometric::rational_string(x))
}
fn ser_u<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
fn ser_i<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl MultiplicityRow {
    pub fn is_nonnegative_integer(&self) -> bool {
        self.closed.is_integer() && !self.closed.is_negative()
    }

    pub fn forms_agree(&self) -> bool {
        self.closed == self.expanded
    }

    /// No irreducible falls in this case.
    pub fn is_empty(&self) -> bool {
        self.count.is_zero()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Checksums {
    /// Sum of count * m * dim.
    pub dimension_sum: String,
    /// [G : Gamma].
    pub index: String,
    /// Sum of count * m^2.
    pub square_sum: String,
    /// Number of Gamma-Gamma double cosets, sum over classes of Gamma of
    /// |G_gamma| / |Gamma_gamma|^2.
    pub double_cosets: String,
    /// Sum over families of size * dim^2.
    pub dual_square_sum: String,
    pub group_order: String,
}

impl Checksums {
    pub fn dimension_ok(&self) -> bool {
        self.dimension_sum == self.index
    }
    pub fn squares_ok(&self) -> bool {
        self.square_sum == self.double_cosets
    }
    pub fn dual_ok(&self) -> bool {
        self.dual_square_sum == self.group_order
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityReport {
    pub p: u64,
    pub n: u32,
    pub rows: Vec<MultiplicityRow>,
    pub checksums: Checksums,
}

impl MultiplicityReport {
    /// Every nonempty case is a nonnegative integer.
    pub fn integral(&self) -> bool {
        self.rows.iter().filter(|r| !r.is_empty()).all(|r| r.is_nonnegative_integer())
    }
}

pub fn decompose(p: u64, n: u32) -> Result<MultiplicityReport> {
    check_regime(p, n)?;
    let qb = z(p as i64).pow(n);
    let q64 = p.checked_pow(n).ok_or(Error::FieldTooLarge(p as u128))?;
    let consts = ClassSizeConstants::standard(p);
    let mut rows = Vec::new();
    let mut dim_sum = Q::zero();
    let mut sq_sum = Q::zero();
    for cond in CharCondition::all() {
        let closed = closed_form(cond, p, &qb);
        let count = count_chars(cond, p, q64);
        let dimension = dimension(cond.family, &qb);
        let cnt = Q::from_integer(BigInt::from(count.clone()));
        dim_sum += &cnt * &closed * Q::from_integer(dimension.clone());
        sq_sum += &cnt * &closed * &closed;
        rows.push(MultiplicityRow {
            family: cond.family,
            case: cond.case,
            condition: cond.describe(),
            expanded: expanded_form(cond, p, &qb, &consts),
            closed,
            count,
            dimension,
        });
    }
    let og = group_order_big(&qb);
    let index = Q::new(og.clone(), group_order_big(&z(p as i64)));
    let checksums = Checksums {
        dimension_sum: crate::geometric::rational_string(&dim_sum),
        index: crate::geometric::rational_string(&index),
        square_sum: crate::geometric::rational_string(&sq_sum),
        double_cosets: crate::geometric::rational_string(&double_coset_count(p, &qb)),
        dual_square_sum: dual_square_sum(&qb).to_string(),
        group_order: og.to_string(),
    };
    Ok(MultiplicityReport { p, n, rows, checksums })
}

pub fn group_order_big(q: &BigInt) -> BigInt {
    let q3 = q.pow(3);
    (&q3 - 1) * (&q3 - q) * (&q3 - q * q)
}

/// Sum over the classes of GL3(F_p) of |G_gamma| / |Gamma_gamma|^2, which
/// counts Gamma \ G / Gamma when every class keeps its kind over F_q.
pub fn double_coset_count(p: u64, q: &BigInt) -> Q {
    use crate::gl3::ClassKind;
    let pb = z(p as i64);
    let cent = |k: ClassKind, x: &BigInt| -> BigInt {
        let x1 = x - 1u32;
        match k {
            ClassKind::Central => group_order_big(x),
            ClassKind::Hyp1 => (x * x - 1) * (x * x - x) * &x1,
            ClassKind::Hyp2 => x1.pow(3),
            ClassKind::Par1 => x.pow(3) * x1.pow(2),
            ClassKind::Par2 => x * x * &x1,
            ClassKind::Par3 => x * x1.pow(2),
            ClassKind::Ell1 => x.pow(3) - 1,
            ClassKind::Ell2 => (x * x - 1) * &x1,
        }
    };
    ClassKind::ALL
        .into_iter()
        .map(|k| {
            let cnt = BigInt::from(k.class_count(p));
            let cp = cent(k, &pb);
            Q::new(cnt * cent(k, q), &cp * &cp)
        })
        .sum()
}

/// Sum over all irreducibles of dim^2, from family sizes.
pub fn dual_square_sum(q: &BigInt) -> BigInt {
    let qu = q.to_biguint().expect("positive");
    Family::ALL
        .into_iter()
        .map(|f| {
            let size = BigInt::from(family_size(f, &qu));
            let d = dimension(f, q);
            size * &d * &d
        })
        .sum()
}

fn family_size(f: Family, q: &BigUint) -> BigUint {
    let one = BigUint::one();
    let q1 = q - &one;
    match f {
        Family::Alpha | Family::PiAlpha | Family::PiAlphaPrime => q1,
        Family::PiAb | Family::PiAbPrime => &q1 * (q - 2u32),
        Family::PiAbc => {
            if q < &BigUint::from(3u32) {
                BigUint::zero()
            } else {
                &q1 * (q - 2u32) * (q - 3u32) / 6u32
            }
        }
        Family::Rho => &q1 * (q * q - q) / 2u32,
        Family::Sigma => (q.pow(3) - q) / 3u32,
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime() {
        assert!(matches!(decompose(2, 2), Err(Error::UnsupportedRegime { .. })));
        assert!(matches!(multiplicity(CharCondition::new(Family::Alpha, 3).unwrap(), 7, 3), Err(_)));
        let m = multiplicity(CharCondition::new(Family::Alpha, 3).unwrap(), 7, 1).unwrap();
        assert_eq!(m, Q::one());
    }

    #[test]
    fn tables_are_consistent() {
        for (p, n) in [(2u64, 1u32), (3, 1), (5, 1), (7, 1), (2, 5), (3, 5), (2, 7), (5, 5), (11, 7)] {
            let r = decompose(p, n).unwrap();
            assert!(r.integral(), "({p},{n})");
            assert!(r.checksums.dimension_ok() && r.checksums.squares_ok() && r.checksums.dual_ok(), "({p},{n})");
            for row in &r.rows {
                assert!(row.forms_agree(), "({p},{n}) {:?} {}", row.family, row.case);
            }
        }
    }

    /// At q = p the only constituent is the trivial one; the negative value
    /// sits in a case with no characters.
    #[test]
    fn prime_level_is_trivial() {
        for p in [2u64, 3, 5, 7, 11] {
            let r = decompose(p, 1).unwrap();
            for row in &r.rows {
                let trivial = row.family == Family::Alpha && row.case == 3;
                if !row.is_empty() {
                    assert_eq!(row.closed, if trivial { Q::one() } else { Q::zero() });
                }
            }
            let rho4 = r.rows.iter().find(|r| r.family == Family::Rho && r.case == 4).unwrap();
            assert!(rho4.is_empty());
            assert_eq!(rho4.closed, -Q::one());
        }
    }

    #[test]
    fn dual_sum_small() {
        for q in [4i64, 7, 13] {
            let q = z(q);
            assert_eq!(dual_square_sum(&q), group_order_big(&q));
        }
    }
}
