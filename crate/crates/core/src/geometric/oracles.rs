//! Brute-force sums over group elements, returned as per-orbit tallies so
//! one enumeration serves many test functions.

use crate::error::{check_budget, Result};
use crate::gf::FieldCtx;
use crate::gl3::centralizer::{centralizer_elements, conjugation_orbit, Visited};
use crate::gl3::mat::{self, Gl3Mat};
use crate::halfspace::KOrbits;
use crate::Exec;

use super::SphericalFn;
use num_rational::BigRational;

fn tally_matrices<'a>(orbits: &KOrbits, ms: impl IntoIterator<Item = &'a Gl3Mat>) -> Vec<i64> {
    let mut t = vec![0i64; orbits.len()];
    for m in ms {
        t[orbits.orbit_of_matrix(m) as usize] += 1;
    }
    t
}

fn add_into(mut a: Vec<i64>, b: Vec<i64>) -> Vec<i64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Tally of gamma' over the G-conjugacy class of `gamma`.
pub fn conjugacy_tally(orbits: &KOrbits, gamma: &Gl3Mat, budget: u64) -> Result<Vec<i64>> {
    let class = conjugation_orbit(orbits.hs.field(), gamma, budget)?;
    Ok(tally_matrices(orbits, &class))
}

/// I_G(f, gamma) as the sum of f over the conjugacy class.
pub fn orbital_sum_oracle(f: &SphericalFn, orbits: &KOrbits, gamma: &Gl3Mat, budget: u64) -> Result<BigRational> {
    Ok(f.pair(&conjugacy_tally(orbits, gamma, budget)?))
}

/// All of G in enumeration order.
pub fn group_elements(f: &FieldCtx, budget: u64) -> Result<Vec<Gl3Mat>> {
    check_budget("group enumeration", mat::group_order(f.q), budget)?;
    Ok(mat::fold_gl3(
        f,
        Exec::Sequential,
        Vec::new,
        |mut acc, g| {
            acc.push(*g);
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    ))
}

/// Representatives of the right cosets H g, first in enumeration order.
pub fn right_transversal(f: &FieldCtx, subgroup: &[Gl3Mat], budget: u64) -> Result<Vec<Gl3Mat>> {
    let mut seen = Visited::new(f.q);
    let mut reps = Vec::new();
    for g in group_elements(f, budget)? {
        if !seen.insert(g.key(f.q)) {
            continue;
        }
        for h in subgroup {
            seen.insert(mat::mul(f, h, &g).key(f.q));
        }
        reps.push(g);
    }
    Ok(reps)
}

/// Tally of s^-1 gamma s over a transversal s of G_gamma \ G.
pub fn coset_tally(orbits: &KOrbits, gamma: &Gl3Mat, budget: u64) -> Result<Vec<i64>> {
    let f = orbits.hs.field();
    let cent = centralizer_elements(f, gamma, budget)?;
    let reps = right_transversal(f, &cent, budget)?;
    let conj: Vec<Gl3Mat> = reps.iter().map(|s| mat::conj(f, gamma, s).expect("invertible")).collect();
    Ok(tally_matrices(orbits, &conj))
}

/// Gamma = GL3(F_p) inside G = GL3(F_q).
pub fn prime_subgroup(f: &FieldCtx, budget: u64) -> Result<Vec<Gl3Mat>> {
    group_elements(&FieldCtx::prime(f.p)?, budget)
}

/// Tally of x^-1 gamma x over x in Gamma \ G and gamma in Gamma.
pub fn direct_trace_tally(orbits: &KOrbits, budget: u64, exec: Exec) -> Result<Vec<i64>> {
    let f = orbits.hs.field();
    let n = orbits.len();
    if f.n == 1 {
        // a single coset: sum over all of G
        check_budget("direct trace", mat::group_order(f.q), budget)?;
        return Ok(mat::fold_gl3(
            f,
            exec,
            || vec![0i64; n],
            |mut acc, g| {
                acc[orbits.orbit_of_matrix(g) as usize] += 1;
                acc
            },
            add_into,
        ));
    }
    let gamma = prime_subgroup(f, budget)?;
    let reps = right_transversal(f, &gamma, budget)?;
    check_budget("direct trace", reps.len() as u128 * gamma.len() as u128, budget)?;
    Ok(exec.fold_range(
        0..reps.len() as u64,
        || vec![0i64; n],
        |mut acc, i| {
            let x = &reps[i as usize];
            let xi = mat::inv(f, x).expect("invertible");
            for g in &gamma {
                let m = mat::mul(f, &xi, &mat::mul(f, g, x));
                acc[orbits.orbit_of_matrix(&m) as usize] += 1;
            }
            acc
        },
        add_into,
    ))
}

pub fn direct_trace_oracle(f: &SphericalFn, orbits: &KOrbits, budget: u64, exec: Exec) -> Result<BigRational> {
    Ok(f.pair(&direct_trace_tally(orbits, budget, exec)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{DeltaRule, Fe, Tower};
    use crate::gl3::ClassDescriptor;
    use crate::halfspace::HalfSpace;
    use num_traits::One;

    fn orbits() -> KOrbits {
        let hs = HalfSpace::new(Tower::new(FieldCtx::new(2, 2, None).unwrap(), DeltaRule::default()).unwrap());
        KOrbits::build(&hs, 1 << 30).unwrap()
    }

    #[test]
    fn transversal_sizes() {
        let f = FieldCtx::new(2, 2, None).unwrap();
        let gamma = prime_subgroup(&f, 1 << 30).unwrap();
        assert_eq!(gamma.len(), 168);
        assert_eq!(right_transversal(&f, &gamma, 1 << 30).unwrap().len(), 1080);
    }

    #[test]
    fn central_and_constant_cases() {
        let ko = orbits();
        let one = SphericalFn::one(&ko);
        let g = SphericalFn::random(&ko, 1);
        let c = Gl3Mat::identity();
        let p0 = g.at(&ko, &c).clone();
        assert_eq!(orbital_sum_oracle(&g, &ko, &c, 1 << 30).unwrap(), p0);
        let f = ko.hs.field();
        let par1 = ClassDescriptor::Par1(Fe::ONE).representative(f);
        assert_eq!(orbital_sum_oracle(&one, &ko, &par1, 1 << 30).unwrap(), BigRational::from_integer(315.into()));
        let total = direct_trace_oracle(&one, &ko, 1 << 30, Exec::Parallel).unwrap();
        assert_eq!(total, BigRational::from_integer(181440.into()));
        assert!(SphericalFn::delta_p0(&ko).at(&ko, &c).is_one());
    }

    #[test]
    fn cosets_and_conjugates_agree() {
        let ko = orbits();
        let f = ko.hs.field();
        let w = f.generator;
        for d in [
            ClassDescriptor::Hyp1(Fe::ONE, w),
            ClassDescriptor::Par2(Fe::ONE),
            ClassDescriptor::Ell1([Fe(1), Fe(1), Fe(0)]),
        ] {
            let g = d.representative(f);
            assert_eq!(coset_tally(&ko, &g, 1 << 30).unwrap(), conjugacy_tally(&ko, &g, 1 << 30).unwrap(), "{d}");
        }
    }
}
