//! The geometric side: a sum over conjugacy classes of Gamma = GL3(F_p) of
//! |G_gamma| / |Gamma_gamma| times the orbital sum of f at gamma in
//! G = GL3(F_q).
//!
//! Everything that does not depend on f is computed once, as per-orbit
//! tallies, so many test functions can be checked against one enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::gf::{Fe, FieldCtx};
use crate::gl3::centralizer::centralizer_order_oracle;
use crate::gl3::classes::descriptors;
use crate::gl3::gl2::Mat2;
use crate::gl3::{classify, mat, ClassDescriptor, ClassKind, Gl3Mat};
use crate::halfspace::{HalfSpace, KOrbits};
use crate::Exec;

use super::closed::{orbital_sum_closed_form, Linear};
use super::horocycle::horocycle_count;
use super::oracles::{conjugacy_tally, direct_trace_tally};
use super::SphericalFn;

/// Centralizer order as stated for a kind; for the regular-unipotent kind
/// this is the full Borel subgroup, not the true centralizer.
pub fn claimed_centralizer_order(kind: ClassKind, q: u64) -> u128 {
    let q = q as u128;
    match kind {
        ClassKind::Par2 => q.pow(3) * (q - 1).pow(3),
        _ => kind.centralizer_order(q as u64),
    }
}

#[derive(Debug, Clone)]
pub struct ClosedSummary {
    pub formula: &'static str,
    pub linear: Linear,
    /// Summands left out because their matrix does not map p0 into H_q.
    pub undefined: usize,
}

/// One class of Gamma, with everything needed to evaluate its term.
#[derive(Debug, Clone)]
pub struct ClassTerm {
    pub descriptor: ClassDescriptor,
    pub representative: Gl3Mat,
    /// The class of the same matrix in G.
    pub g_class: ClassDescriptor,
    pub g_centralizer: u128,
    pub gamma_centralizer: u128,
    pub claimed_g_centralizer: u128,
    pub claimed_gamma_centralizer: u128,
    pub oracle: Vec<i64>,
    pub closed: std::result::Result<ClosedSummary, String>,
}

impl ClassTerm {
    pub fn weight(&self) -> BigRational {
        ratio(self.g_centralizer, self.gamma_centralizer)
    }

    pub fn claimed_weight(&self) -> BigRational {
        ratio(self.claimed_g_centralizer, self.claimed_gamma_centralizer)
    }
}

fn ratio(a: u128, b: u128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[derive(Debug, Clone)]
pub struct GeometricSide {
    pub orbits: KOrbits,
    pub terms: Vec<ClassTerm>,
    /// Tally of the double sum over Gamma \ G and Gamma.
    pub direct: Vec<i64>,
}

/// Values of every term for one f.
#[derive(Debug, Clone)]
pub struct SideValues {
    pub oracle: Vec<BigRational>,
    pub closed: Vec<Option<BigRational>>,
    /// Sum of weight * oracle value.
    pub oracle_total: BigRational,
    /// Sum of weight * closed value, over the terms that have one.
    pub closed_total: BigRational,
    pub closed_complete: bool,
    pub direct_trace: BigRational,
}

impl SideValues {
    pub fn identity_holds(&self) -> bool {
        self.oracle_total == self.direct_trace
    }
}

impl GeometricSide {
    pub fn build(orbits: &KOrbits, budget: u64, exec: Exec) -> Result<Self> {
        let hs = &orbits.hs;
        let fq = hs.field();
        let fp = FieldCtx::prime(fq.p)?;
        let ds = descriptors(&fp);
        // classes are independent; each one runs its oracles sequentially
        let terms = exec
            .map(&ds, |d| class_term(orbits, &fp, d, budget))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let direct = direct_trace_tally(orbits, budget, exec)?;
        Ok(GeometricSide { orbits: orbits.clone(), terms, direct })
    }

    pub fn hs(&self) -> &HalfSpace {
        &self.orbits.hs
    }

    pub fn evaluate(&self, f: &SphericalFn) -> SideValues {
        let oracle: Vec<BigRational> = self.terms.iter().map(|t| f.pair(&t.oracle)).collect();
        let closed: Vec<Option<BigRational>> =
            self.terms.iter().map(|t| t.closed.as_ref().ok().map(|c| c.linear.eval(f))).collect();
        let mut oracle_total = BigRational::zero();
        let mut closed_total = BigRational::zero();
        for (t, (o, c)) in self.terms.iter().zip(oracle.iter().zip(&closed)) {
            let w = t.weight();
            oracle_total += &w * o;
            if let Some(c) = c {
                closed_total += &w * c;
            }
        }
        SideValues {
            closed_complete: closed.iter().all(Option::is_some),
            oracle,
            closed,
            oracle_total,
            closed_total,
            direct_trace: f.pair(&self.direct),
        }
    }
}

fn class_term(orbits: &KOrbits, fp: &FieldCtx, d: &ClassDescriptor, budget: u64) -> Result<ClassTerm> {
    let hs = &orbits.hs;
    let fq = hs.field();
    let rep = d.representative(fp);
    let g_class = classify(fq, &rep);
    let closed = orbital_sum_closed_form(hs, d).and_then(|cf| {
        Ok(ClosedSummary { formula: cf.formula, linear: cf.linear(orbits)?, undefined: cf.undefined })
    });
    Ok(ClassTerm {
        descriptor: *d,
        representative: rep,
        g_class,
        g_centralizer: centralizer_order_oracle(fq, &rep, budget, Exec::Sequential)?,
        gamma_centralizer: centralizer_order_oracle(fp, &rep, budget, Exec::Sequential)?,
        claimed_g_centralizer: claimed_centralizer_order(g_class.kind(), fq.q),
        claimed_gamma_centralizer: claimed_centralizer_order(d.kind(), fp.q),
        oracle: conjugacy_tally(orbits, &rep, budget)?,
        closed: closed.map_err(|e| e.to_string()),
    })
}

/// The second-hyperbolic total for f = 1 three ways: from oracle
/// centralizers, and from the two printed constants in front of
/// sum over {a, b} in F_p^x \ {1}, a != b, of Hf(diag(a, b)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyp2Totals {
    pub p: u64,
    pub q: u64,
    pub classes: usize,
    /// Sum of |G_gamma| / |Gamma_gamma| * |class of gamma in G|.
    pub oracle: BigRational,
    /// (1/3)(q^3 - 1)(q - 1)^2 / (p - 1)^2 times the Hf sum.
    pub squared_constant: BigRational,
    /// (1/3)(q^3 - 1)(q - 1)^3 / (p - 1)^3 times the Hf sum.
    pub cubed_constant: BigRational,
    /// Every class satisfies (q^2+q+1) Hf(diag(a/c, b/c)) = class size.
    pub per_class_closed_forms_hold: bool,
}

/// Needs no orbit table, so it runs at q where H_q is too big to enumerate.
pub fn hyp2_totals(hs: &HalfSpace, budget: u64) -> Result<Hyp2Totals> {
    let fq = hs.field();
    let fp = FieldCtx::prime(fq.p)?;
    let (p, q) = (fq.p as u128, fq.q as u128);
    let order = mat::group_order(fq.q);
    let mut oracle = BigRational::zero();
    let mut per_class = true;
    let mut classes = 0;
    for d in descriptors(&fp).into_iter().filter(|d| d.kind() == ClassKind::Hyp2) {
        let ClassDescriptor::Hyp2([a, b, c]) = d else { unreachable!() };
        let rep = d.representative(&fp);
        let cg = centralizer_order_oracle(fq, &rep, budget, Exec::Sequential)?;
        let cp = centralizer_order_oracle(&fp, &rep, budget, Exec::Sequential)?;
        let size = order / cg;
        oracle += ratio(cg, cp) * BigRational::from_integer(BigInt::from(size));
        let ci = fq.inv(c).expect("unit");
        let hf = horocycle_count(hs, &Mat2::diag(fq.mul(a, ci), fq.mul(b, ci)))?;
        per_class &= (q * q + q + 1) * hf == size;
        classes += 1;
    }
    let units: Vec<Fe> = fp.nonzero().filter(|&x| x != Fe::ONE).collect();
    let mut hf_sum = 0u128;
    for (i, &a) in units.iter().enumerate() {
        for &b in &units[i + 1..] {
            hf_sum += horocycle_count(hs, &Mat2::diag(a, b))?;
        }
    }
    let base = BigRational::new(BigInt::from((q * q * q - 1) * hf_sum), BigInt::from(3u32));
    Ok(Hyp2Totals {
        p: fq.p,
        q: fq.q,
        classes,
        oracle,
        squared_constant: &base * ratio((q - 1).pow(2), (p - 1).pow(2)),
        cubed_constant: &base * ratio((q - 1).pow(3), (p - 1).pow(3)),
        per_class_closed_forms_hold: per_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{DeltaRule, Tower};

    fn side(p: u64, n: u32) -> GeometricSide {
        let hs = HalfSpace::new(Tower::new(FieldCtx::new(p, n, None).unwrap(), DeltaRule::default()).unwrap());
        let ko = KOrbits::build(&hs, 1 << 30).unwrap();
        GeometricSide::build(&ko, 1 << 32, Exec::Parallel).unwrap()
    }

    #[test]
    fn trace_identity_at_f4() {
        let s = side(2, 2);
        assert_eq!(s.terms.len(), 6);
        let central = &s.terms[0];
        assert_eq!(central.weight(), BigRational::from_integer(1080.into()));
        let one = SphericalFn::one(&s.orbits);
        let v = s.evaluate(&one);
        assert_eq!(v.direct_trace, BigRational::from_integer(181440.into()));
        assert!(v.identity_holds());
        for seed in 0..3 {
            assert!(s.evaluate(&SphericalFn::random(&s.orbits, seed)).identity_holds());
        }
        // Par2: the oracle centralizer is not the Borel
        let par2 = s.terms.iter().find(|t| t.descriptor.kind() == ClassKind::Par2).unwrap();
        assert_eq!(par2.g_centralizer, 48);
        assert_ne!(par2.claimed_g_centralizer, par2.g_centralizer);
        // the F_2-quadratic class is diagonalizable over F_4
        let e2 = s.terms.iter().find(|t| t.descriptor.kind() == ClassKind::Ell2).unwrap();
        assert_eq!(e2.g_class.kind(), ClassKind::Hyp2);
        assert_eq!(e2.weight(), ratio(27, 3));
        assert!(v.closed_complete);
    }

    #[test]
    fn hyp2_constants_at_25() {
        let hs = HalfSpace::new(Tower::new(FieldCtx::new(5, 2, None).unwrap(), DeltaRule::default()).unwrap());
        let t = hyp2_totals(&hs, 1 << 30).unwrap();
        assert_eq!(t.classes, 4);
        assert!(t.per_class_closed_forms_hold);
        assert_eq!(t.oracle, t.squared_constant);
        assert_eq!(&t.cubed_constant / &t.oracle, ratio(24, 4));
    }
}
