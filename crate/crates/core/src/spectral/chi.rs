//! The character of rho = Ind_Gamma^G 1 per G-class, and the fixed-point
//! count that it must equal.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{check_budget, Result};
use crate::gf::FieldCtx;
use crate::geometric::oracles::{prime_subgroup, right_transversal};
use crate::gl3::{mat, ClassDescriptor, ClassKind, Gl3Mat};
use crate::halfspace::HalfSpace;
use crate::Exec;

/// Sizes of one class of each kind in GL3(F_q). E1 is the quadratic-elliptic
/// kind and E2 the cubic one, matching the multiplicity tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSizeConstants {
    pub q: u64,
    pub h1: BigUint,
    pub h2: BigUint,
    pub p1: BigUint,
    pub p2: BigUint,
    pub p3: BigUint,
    pub e1: BigUint,
    pub e2: BigUint,
}

impl ClassSizeConstants {
    pub fn from_centralizers(q: u64, centralizer: impl Fn(ClassKind) -> BigUint) -> Self {
        let order = BigUint::from(q).pow(3) - 1u32;
        let order = order * (BigUint::from(q).pow(3) - q) * (BigUint::from(q).pow(3) - q * q);
        let size = |k| &order / centralizer(k);
        ClassSizeConstants {
            q,
            h1: size(ClassKind::Hyp1),
            h2: size(ClassKind::Hyp2),
            p1: size(ClassKind::Par1),
            p2: size(ClassKind::Par2),
            p3: size(ClassKind::Par3),
            e1: size(ClassKind::Ell2),
            e2: size(ClassKind::Ell1),
        }
    }

    /// From the standard centralizer orders, exact for any q.
    pub fn standard(q: u64) -> Self {
        let q1 = BigUint::from(q);
        let qm = &q1 - 1u32;
        Self::from_centralizers(q, |k| match k {
            ClassKind::Central => standard_order(&q1),
            ClassKind::Hyp1 => (&q1 * &q1 - 1u32) * (&q1 * &q1 - &q1) * &qm,
            ClassKind::Hyp2 => qm.pow(3),
            ClassKind::Par1 => q1.pow(3) * qm.pow(2),
            ClassKind::Par2 => &q1 * &q1 * &qm,
            ClassKind::Par3 => &q1 * qm.pow(2),
            ClassKind::Ell1 => q1.pow(3) - 1u32,
            ClassKind::Ell2 => (&q1 * &q1 - 1u32) * &qm,
        })
    }

    pub fn get(&self, kind: ClassKind) -> &BigUint {
        match kind {
            ClassKind::Hyp1 => &self.h1,
            ClassKind::Hyp2 => &self.h2,
            ClassKind::Par1 => &self.p1,
            ClassKind::Par2 => &self.p2,
            ClassKind::Par3 => &self.p3,
            ClassKind::Ell2 => &self.e1,
            ClassKind::Ell1 => &self.e2,
            ClassKind::Central => panic!("central classes have size 1"),
        }
    }
}

fn standard_order(q: &BigUint) -> BigUint {
    let q3 = q.pow(3);
    (&q3 - 1u32) * (&q3 - q) * (&q3 - q * q)
}

fn big(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn frob(f: &FieldCtx, a: crate::gf::Fe, k: u32) -> crate::gf::Fe {
    f.pow(a, f.p.pow(k))
}

/// chi_rho on the G-class `d`, by the per-kind closed forms. `d` is a class
/// of GL3(F_q), q = p^n.
pub fn chi_rho(f: &FieldCtx, d: &ClassDescriptor) -> BigRational {
    let (p, q, n) = (f.p, f.q, f.n);
    let cp = ClassSizeConstants::standard(p);
    let cq = ClassSizeConstants::standard(q);
    let index = big(&standard_order(&BigUint::from(q))) / big(&standard_order(&BigUint::from(p)));
    let inp = |a| f.is_prime_subfield(a);
    let ratio = |k: ClassKind| big(cp.get(k)) / big(cq.get(k));
    let ind = |b: bool| if b { BigRational::one() } else { BigRational::zero() };
    match *d {
        ClassDescriptor::Central(a) => index * ind(inp(a)),
        ClassDescriptor::Hyp1(a, b) => index * ratio(ClassKind::Hyp1) * ind(inp(a) && inp(b)),
        ClassDescriptor::Par1(a) => index * ratio(ClassKind::Par1) * ind(inp(a)),
        ClassDescriptor::Par2(a) => index * ratio(ClassKind::Par2) * ind(inp(a)),
        ClassDescriptor::Par3(a, b) => index * ratio(ClassKind::Par3) * ind(inp(a) && inp(b)),
        ClassDescriptor::Hyp2(e) => {
            // the three labelings that can carry each subcase
            let mut cubic = false;
            let mut quadratic = false;
            for [a, b, c] in [[e[0], e[1], e[2]], [e[1], e[2], e[0]], [e[2], e[0], e[1]]] {
                for [a, b] in [[a, b], [b, a]] {
                    cubic |= !inp(a) && frob(f, a, 3) == a && frob(f, a, 1) == b && frob(f, a, 2) == c;
                    quadratic |= !inp(a) && frob(f, a, 2) == a && frob(f, a, 1) == b && inp(c);
                }
            }
            let all = e.iter().all(|&x| inp(x));
            let s = big(&cp.e2) * ind(cubic) + big(&cp.e1) * ind(quadratic) + big(&cp.h2) * ind(all);
            index * s / big(&cq.h2)
        }
        ClassDescriptor::Ell2 { quad, m } => {
            if n % 2 == 0 {
                return BigRational::zero();
            }
            index * ratio(ClassKind::Ell2) * ind(quad.iter().all(|&c| inp(c)) && inp(m))
        }
        ClassDescriptor::Ell1(c) => {
            if n % 3 == 0 {
                return BigRational::zero();
            }
            index * ratio(ClassKind::Ell1) * ind(c.iter().all(|&c| inp(c)))
        }
    }
}

/// Which subgroup a permutation character is induced from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subgroup {
    /// GL3(F_p)
    Gamma,
    /// The stabilizer of p0.
    K,
}

/// Fixed-point counts of G acting on G/Gamma or G/K.
pub struct InducedCharOracle {
    field: FieldCtx,
    /// Needed only for fixed points on G/K.
    hs: Option<HalfSpace>,
    /// x with the cosets x^-1 Gamma listed once each.
    gamma_cosets: Vec<Gl3Mat>,
    budget: u64,
}

impl InducedCharOracle {
    pub fn new(hs: &HalfSpace, budget: u64) -> Result<Self> {
        let mut o = Self::gamma_only(hs.field(), budget)?;
        o.hs = Some(hs.clone());
        Ok(o)
    }

    /// Without a half-space; fixed points on G/K are then unavailable.
    pub fn gamma_only(f: &FieldCtx, budget: u64) -> Result<Self> {
        let gamma_cosets = if f.n == 1 {
            vec![Gl3Mat::identity()]
        } else {
            right_transversal(f, &prime_subgroup(f, budget)?, budget)?
        };
        Ok(InducedCharOracle { field: f.clone(), hs: None, gamma_cosets, budget })
    }

    fn halfspace(&self) -> Result<&HalfSpace> {
        self.hs.as_ref().ok_or_else(|| crate::Error::LevelMismatch("no half-space for fixed points on G/K".into()))
    }

    pub fn num_cosets(&self, h: Subgroup) -> u128 {
        match h {
            Subgroup::Gamma => self.gamma_cosets.len() as u128,
            Subgroup::K => crate::halfspace::halfspace_size(self.field.q),
        }
    }

    /// Number of cosets fixed by g.
    pub fn fixed_cosets(&self, g: &Gl3Mat, h: Subgroup, exec: Exec) -> Result<u128> {
        let f = &self.field;
        match h {
            // x^-1 Gamma is fixed iff x g x^-1 is in Gamma
            Subgroup::Gamma => Ok(exec
                .map(&self.gamma_cosets, |x| {
                    let m = mat::mul(f, &mat::mul(f, x, g), &mat::inv(f, x).expect("invertible"));
                    m.0.iter().all(|&e| f.is_prime_subfield(e)) as u128
                })
                .into_iter()
                .sum()),
            Subgroup::K => {
                let hs = self.halfspace()?;
                check_budget("fixed points on H_q", crate::halfspace::halfspace_size(f.q), self.budget)?;
                let pts: Vec<_> = hs.enumerate(self.budget)?.collect();
                Ok(exec
                    .map(&pts, |z| (hs.act(g, z).expect("valid point") == *z) as u128)
                    .into_iter()
                    .sum())
            }
        }
    }
}

/// chi_rho against the fixed-point count on one G-class.
#[derive(Debug, Clone, Serialize)]
pub struct CharRow {
    pub descriptor: ClassDescriptor,
    pub class_size: u128,
    #[serde(serialize_with = "ser_q")]
    pub closed: BigRational,
    pub oracle: u128,
}

fn ser_q<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::geometric::rational_string(x))
}

impl CharRow {
    pub fn matches(&self) -> bool {
        self.closed == BigRational::from_integer(BigInt::from(self.oracle))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharComparison {
    pub rows: Vec<CharRow>,
    /// Sum of class_size * oracle, which is |G| when rho contains the
    /// trivial representation once.
    pub weighted_sum: String,
    pub group_order: String,
    pub dimension: String,
}

impl CharComparison {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(CharRow::matches)
    }

    pub fn orthogonality_holds(&self) -> bool {
        self.weighted_sum == self.group_order
    }
}

/// Compares chi_rho with the fixed-point oracle on every class of G.
pub fn compare_with_oracle(oracle: &InducedCharOracle, exec: Exec) -> Result<CharComparison> {
    let f = &oracle.field;
    let classes = crate::gl3::classes::parametric_classes(f);
    let mut rows = Vec::with_capacity(classes.len());
    let mut sum = BigUint::zero();
    for c in classes {
        let fixed = oracle.fixed_cosets(&c.representative, Subgroup::Gamma, exec)?;
        sum += BigUint::from(c.class_size) * fixed;
        rows.push(CharRow { descriptor: c.descriptor, class_size: c.class_size, closed: chi_rho(f, &c.descriptor), oracle: fixed });
    }
    Ok(CharComparison {
        rows,
        weighted_sum: sum.to_string(),
        group_order: standard_order(&BigUint::from(f.q)).to_string(),
        dimension: oracle.num_cosets(Subgroup::Gamma).to_string(),
    })
}

/// Number of Gamma-orbits on H_q, by Burnside over the classes of G:
/// (1/|G|) sum of class_size * fix(G/Gamma) * fix(G/K).
pub fn gamma_orbits_on_halfspace(oracle: &InducedCharOracle, exec: Exec) -> Result<BigRational> {
    let f = &oracle.field;
    let mut sum = BigUint::zero();
    for c in crate::gl3::classes::parametric_classes(f) {
        let a = oracle.fixed_cosets(&c.representative, Subgroup::Gamma, exec)?;
        if a == 0 {
            continue;
        }
        let b = oracle.fixed_cosets(&c.representative, Subgroup::K, exec)?;
        sum += BigUint::from(c.class_size) * a * b;
    }
    Ok(big(&sum) / big(&standard_order(&BigUint::from(f.q))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{DeltaRule, Tower};
    use crate::gl3::classes::parametric_classes;

    #[test]
    fn sizes_match_class_tables() {
        for (p, n) in [(2u64, 1u32), (3, 1), (2, 2), (7, 1)] {
            let f = FieldCtx::new(p, n, None).unwrap();
            let q = f.q;
            let c = ClassSizeConstants::standard(q);
            for cls in parametric_classes(&f) {
                if cls.descriptor.kind() != ClassKind::Central {
                    assert_eq!(*c.get(cls.descriptor.kind()), BigUint::from(cls.class_size));
                }
            }
        }
    }

    #[test]
    fn chi_matches_fixed_points_on_a_few_classes() {
        let hs = HalfSpace::new(Tower::new(FieldCtx::new(2, 2, None).unwrap(), DeltaRule::default()).unwrap());
        let oracle = InducedCharOracle::new(&hs, 1 << 30).unwrap();
        let f = hs.field();
        assert_eq!(oracle.fixed_cosets(&Gl3Mat::identity(), Subgroup::Gamma, Exec::Parallel).unwrap(), 1080);
        assert_eq!(oracle.fixed_cosets(&Gl3Mat::identity(), Subgroup::K, Exec::Parallel).unwrap(), 2880);
        for cls in parametric_classes(f).iter().step_by(7) {
            let fixed = oracle.fixed_cosets(&cls.representative, Subgroup::Gamma, Exec::Parallel).unwrap();
            assert_eq!(chi_rho(f, &cls.descriptor), BigRational::from_integer(fixed.into()), "{:?}", cls.descriptor);
        }
    }
}
