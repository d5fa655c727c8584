//! Multiplicative characters as exponents against a fixed generator.
//!
//! A character of a cyclic group of order M is x = g^j -> zeta^(e j); only
//! restriction triviality and counting are needed, so no complex values
//! appear. Counting is organised by the irreducible-representation families
//! of GL3(F_q) and the case splits of their multiplicities in
//! Ind_{GL3(F_p)}^{GL3(F_q)} 1.

use num_bigint::BigUint;
use num_integer::gcd;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultChar {
    pub modulus: u64,
    pub exponent: u64,
}

impl MultChar {
    pub fn new(modulus: u64, exponent: u64) -> Self {
        MultChar { modulus, exponent: exponent % modulus }
    }
}

/// Whether `c` restricts trivially to the subgroup of the given order.
pub fn char_restriction_trivial(c: MultChar, subgroup_order: u64) -> Result<bool> {
    if subgroup_order == 0 || c.modulus % subgroup_order != 0 {
        return Err(Error::NotASubgroup { subgroup: subgroup_order, modulus: c.modulus });
    }
    Ok(c.exponent % subgroup_order == 0)
}

/// Direct evaluation: the subgroup is generated by g^(M/s) and the character
/// is trivial iff every value has exponent 0 mod M.
pub fn char_restriction_trivial_by_evaluation(c: MultChar, subgroup_order: u64) -> Result<bool> {
    if subgroup_order == 0 || c.modulus % subgroup_order != 0 {
        return Err(Error::NotASubgroup { subgroup: subgroup_order, modulus: c.modulus });
    }
    let step = c.modulus / subgroup_order;
    let m = c.modulus as u128;
    Ok((0..subgroup_order)
        .all(|k| (c.exponent as u128 * step as u128 % m) * k as u128 % m == 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Alpha,
    PiAlpha,
    PiAlphaPrime,
    PiAb,
    PiAbPrime,
    PiAbc,
    Rho,
    Sigma,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Alpha,
        Family::PiAlpha,
        Family::PiAlphaPrime,
        Family::PiAb,
        Family::PiAbPrime,
        Family::PiAbc,
        Family::Rho,
        Family::Sigma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Alpha => "alpha",
            Family::PiAlpha => "pi_alpha",
            Family::PiAlphaPrime => "pi_alpha_prime",
            Family::PiAb => "pi_ab",
            Family::PiAbPrime => "pi_ab_prime",
            Family::PiAbc => "pi_abc",
            Family::Rho => "rho",
            Family::Sigma => "sigma",
        }
    }

    pub fn num_cases(self) -> u8 {
        match self {
            Family::Alpha | Family::PiAlpha | Family::PiAlphaPrime | Family::Sigma => 3,
            _ => 4,
        }
    }

    /// Number of irreducibles in the family over F_q.
    pub fn size(self, q: u128) -> u128 {
        match self {
            Family::Alpha | Family::PiAlpha | Family::PiAlphaPrime => q - 1,
            Family::PiAb | Family::PiAbPrime => (q - 1) * (q - 2),
            Family::PiAbc => (q - 1) * (q - 2) * q.saturating_sub(3) / 6,
            Family::Rho => (q - 1) * (q * q - q) / 2,
            Family::Sigma => (q * q * q - q) / 3,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownCondition(s.to_string()))
    }
}

/// One case of a family, numbered from 1 as in the multiplicity tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CharCondition {
    pub family: Family,
    pub case: u8,
}

impl CharCondition {
    pub fn new(family: Family, case: u8) -> Result<Self> {
        if case == 0 || case > family.num_cases() {
            return Err(Error::UnknownCondition(format!("{}:{case}", family.name())));
        }
        Ok(CharCondition { family, case })
    }

    pub fn all() -> Vec<CharCondition> {
        Family::ALL
            .into_iter()
            .flat_map(|f| (1..=f.num_cases()).map(move |c| CharCondition { family: f, case: c }))
            .collect()
    }

    /// Human-readable restriction condition.
    pub fn describe(&self) -> &'static str {
        use Family::*;
        match (self.family, self.case) {
            (Alpha | PiAlpha | PiAlphaPrime, 1) => "alpha^3 nontrivial on F_p^x",
            (Alpha | PiAlpha | PiAlphaPrime, 2) => "alpha^3 trivial, alpha nontrivial on F_p^x",
            (Alpha | PiAlpha | PiAlphaPrime, _) => "alpha trivial on F_p^x",
            (PiAb | PiAbPrime, 1) => "alpha^2 beta nontrivial on F_p^x",
            (PiAb | PiAbPrime, 2) => "alpha^2 beta trivial, alpha^2 and beta nontrivial",
            (PiAb | PiAbPrime, 3) => "alpha^2 and beta trivial, alpha nontrivial",
            (PiAb | PiAbPrime, _) => "alpha and beta trivial",
            (PiAbc, 1) => "alpha beta gamma nontrivial on F_p^x",
            (PiAbc, 2) => "alpha beta gamma trivial, none of them trivial",
            (PiAbc, 3) => "alpha beta gamma trivial, exactly one of them trivial",
            (PiAbc, _) => "alpha, beta, gamma all trivial",
            (Rho, 1) => "alpha nu nontrivial on F_p^x",
            (Rho, 2) => "alpha nu trivial, alpha and nu nontrivial",
            (Rho, 3) => "alpha trivial, nu trivial on F_p^x but not on F_{p^2}^x",
            (Rho, _) => "alpha trivial, nu trivial on F_{p^2}^x",
            (Sigma, 1) => "mu nontrivial on F_p^x",
            (Sigma, 2) => "mu trivial on F_p^x but not on F_{p^3}^x",
            (Sigma, _) => "mu trivial on F_{p^3}^x",
        }
    }
}

impl std::str::FromStr for CharCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (f, c) = s.split_once(':').ok_or_else(|| Error::UnknownCondition(s.to_string()))?;
        let case = c.parse().map_err(|_| Error::UnknownCondition(s.to_string()))?;
        CharCondition::new(f.parse()?, case)
    }
}

fn single_case(d: u64, a: u64) -> u8 {
    if (3 * a) % d != 0 {
        1
    } else if a % d != 0 {
        2
    } else {
        3
    }
}

fn pair_case(d: u64, a: u64, b: u64) -> u8 {
    if (2 * a + b) % d != 0 {
        1
    } else if b % d != 0 {
        2
    } else if a % d != 0 {
        3
    } else {
        4
    }
}

fn triple_case(d: u64, a: u64, b: u64, c: u64) -> u8 {
    if (a + b + c) % d != 0 {
        return 1;
    }
    match [a, b, c].iter().filter(|&&x| x % d == 0).count() {
        0 => 2,
        1 => 3,
        _ => 4,
    }
}

fn rho_case(p: u64, a: u64, m: u64) -> u8 {
    let d = p - 1;
    if (a + m) % d != 0 {
        1
    } else if a % d != 0 {
        2
    } else if m % (p * p - 1) != 0 {
        3
    } else {
        4
    }
}

fn sigma_case(p: u64, m: u64) -> u8 {
    if m % (p - 1) != 0 {
        1
    } else if m % (p * p * p - 1) != 0 {
        2
    } else {
        3
    }
}

/// Size of the exponent enumeration for a family at `q`.
pub fn enumeration_size(family: Family, q: u64) -> u128 {
    let q = q as u128;
    match family {
        Family::Alpha | Family::PiAlpha | Family::PiAlphaPrime => q - 1,
        Family::PiAb | Family::PiAbPrime => (q - 1) * (q - 1),
        Family::PiAbc => (q - 1).pow(3),
        Family::Rho => (q - 1) * (q * q - 1),
        Family::Sigma => q * q * q - 1,
    }
}

/// Counts irreducibles in a case by enumerating character exponents.
/// Families indexed by unordered data or Galois orbits are counted over
/// ordered representatives and divided by the orbit size.
pub fn count_chars_enumerate(cond: CharCondition, p: u64, q: u64) -> u128 {
    let d = p - 1;
    let n1 = q - 1;
    let hit = |c: u8| (c == cond.case) as u128;
    match cond.family {
        Family::Alpha | Family::PiAlpha | Family::PiAlphaPrime => {
            (0..n1).map(|j| hit(single_case(d, j))).sum()
        }
        Family::PiAb | Family::PiAbPrime => (0..n1)
            .flat_map(|a| (0..n1).filter(move |&b| b != a).map(move |b| (a, b)))
            .map(|(a, b)| hit(pair_case(d, a, b)))
            .sum(),
        Family::PiAbc => {
            let mut total = 0;
            for a in 0..n1 {
                for b in a + 1..n1 {
                    for c in b + 1..n1 {
                        total += hit(triple_case(d, a, b, c));
                    }
                }
            }
            total
        }
        Family::Rho => {
            let n2 = q * q - 1;
            let mut total = 0;
            for m in (0..n2).filter(|m| m % (q + 1) != 0) {
                for a in 0..n1 {
                    total += hit(rho_case(p, a, m));
                }
            }
            total / 2
        }
        Family::Sigma => {
            let n3 = q * q * q - 1;
            let s = q * q + q + 1;
            (0..n3).filter(|m| m % s != 0).map(|m| hit(sigma_case(p, m))).sum::<u128>() / 3
        }
    }
}

/// Number of m mod `big` with m = s (mod e) and `excl` not dividing m, where
/// e | big and big = excl * (q - 1). Multiples of `excl` are excl * t for
/// t mod (q - 1); t -> excl t mod e has image gcd(excl, e) Z/e with fibres of
/// size (q - 1) gcd(excl, e) / e.
fn residue_count(big: u128, e: u128, excl: u128, q1: u128, s: u128) -> u128 {
    let g = gcd(excl, e);
    let all = big / e;
    let multiples = if s % g == 0 { q1 * g / e } else { 0 };
    all - multiples
}

/// Counts irreducibles in a case from residue-class bookkeeping: every
/// condition depends only on exponents modulo p - 1, p^2 - 1 or p^3 - 1.
pub fn count_chars_formula(cond: CharCondition, p: u64, q: u64) -> u128 {
    let d = p - 1;
    let n = ((q - 1) / d) as u128; // exponents per residue mod d
    let hit = |c: u8| c == cond.case;
    match cond.family {
        Family::Alpha | Family::PiAlpha | Family::PiAlphaPrime => {
            (0..d).filter(|&a| hit(single_case(d, a))).count() as u128 * n
        }
        Family::PiAb | Family::PiAbPrime => {
            let mut total = 0;
            for a in 0..d {
                for b in 0..d {
                    if hit(pair_case(d, a, b)) {
                        total += n * n - if a == b { n } else { 0 };
                    }
                }
            }
            total
        }
        Family::PiAbc => {
            // ordered distinct triples by inclusion-exclusion, then / 6
            let mut total = 0i128;
            let n = n as i128;
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        if !hit(triple_case(d, a, b, c)) {
                            continue;
                        }
                        let pairs = (a == b) as i128 + (a == c) as i128 + (b == c) as i128;
                        let all = (a == b && b == c) as i128;
                        total += n * n * n - n * n * pairs + 2 * n * all;
                    }
                }
            }
            (total / 6) as u128
        }
        Family::Rho => {
            let (qq, e) = (q as u128, (p * p - 1) as u128);
            let big = qq * qq - 1;
            let mut total = 0;
            for s in 0..e as u64 {
                let cnt = residue_count(big, e, qq + 1, qq - 1, s as u128);
                for a in 0..d {
                    if hit(rho_case(p, a, s)) {
                        total += n * cnt;
                    }
                }
            }
            total / 2
        }
        Family::Sigma => {
            let (qq, e) = (q as u128, (p * p * p - 1) as u128);
            let big = qq * qq * qq - 1;
            let mut total = 0;
            for s in 0..e as u64 {
                if hit(sigma_case(p, s)) {
                    total += residue_count(big, e, qq * qq + qq + 1, qq - 1, s as u128);
                }
            }
            total / 3
        }
    }
}

/// Enumerations up to this many exponent tuples are done directly.
pub const ENUMERATION_LIMIT: u128 = 2_000_000;

pub fn count_chars(cond: CharCondition, p: u64, q: u64) -> BigUint {
    let v = if enumeration_size(cond.family, q) <= ENUMERATION_LIMIT {
        count_chars_enumerate(cond, p, q)
    } else {
        count_chars_formula(cond, p, q)
    };
    BigUint::from(v)
}

/// Nondecomposable characters of F_{q^2}^x up to nu <-> nu^q, by enumeration.
pub fn nondecomposable_nu_orbits(q: u64) -> u64 {
    (0..q * q - 1).filter(|m| m % (q + 1) != 0).count() as u64 / 2
}

/// Characters of F_{q^3}^x with mu^q != mu up to Frobenius, by Burnside:
/// the orbit of m under multiplication by q has size 3 unless m is fixed.
pub fn galois_mu_orbits(q: u64) -> u64 {
    let n3 = q * q * q - 1;
    let fixed = (0..n3).filter(|&m| (m * q) % n3 == m).count() as u64;
    // Burnside over the cyclic group of order 3 generated by m -> qm
    let orbits = (n3 + 2 * fixed) / 3;
    orbits - fixed
}
