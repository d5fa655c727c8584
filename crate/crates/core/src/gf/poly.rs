//! Dense polynomials over a prime field F_p, coefficients low-to-high.

pub type Poly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn mul(f: &[u64], g: &[u64], p: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
        }
    }
    trim(out)
}

pub fn sub(f: &[u64], g: &[u64], p: u64) -> Poly {
    let len = f.len().max(g.len());
    let out = (0..len)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(out)
}

/// Remainder of `f` modulo a nonzero `m`.
pub fn rem(f: &[u64], m: &[u64], p: u64) -> Poly {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv_mod(m[dm], p);
    let mut r = trim(f.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = mulmod(r[dr], lead_inv, p);
        let shift = dr - dm;
        for (i, &mc) in m.iter().enumerate().take(dm + 1) {
            r[shift + i] = (r[shift + i] + p - mulmod(c, mc, p)) % p;
        }
        r = trim(r);
    }
    r
}

pub fn gcd(f: &[u64], g: &[u64], p: u64) -> Poly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while degree(&b).is_some() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod m`.
fn x_pow_p_pow(k: u32, m: &[u64], p: u64) -> Poly {
    let mut r = rem(&[0, 1], m, p);
    for _ in 0..k {
        r = powmod_poly(&r, p, m, p);
    }
    r
}

pub fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut r = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

/// Rabin's irreducibility test for a monic `f` of degree `n` over F_p.
/// For `n <= 3` this is equivalent to having no root in F_p.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if n <= 3 {
        return (0..p).all(|x| eval(f, x, p) != 0);
    }
    let x = vec![0, 1];
    if sub(&x_pow_p_pow(n as u32, f, p), &x, p) != rem(&[], f, p) {
        return false;
    }
    for r in super::prime::prime_divisors(n as u64) {
        let h = sub(&x_pow_p_pow((n as u64 / r) as u32, f, p), &x, p);
        if degree(&gcd(f, &h, p)) != Some(0) {
            return false;
        }
    }
    true
}

/// The smallest monic irreducible polynomial of degree `n`, comparing the
/// non-leading coefficients as a base-`p` number with `c_{n-1}` most
/// significant.
pub fn smallest_irreducible(n: u32, p: u64) -> Poly {
    let count = p.pow(n);
    for m in 0..count {
        let mut f: Poly = (0..n).map(|i| (m / p.pow(i)) % p).collect();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_over_f2() {
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn rabin_matches_root_count_for_small_degrees() {
        // degree-4 and degree-5 irreducibility cross-checked by counting:
        // number of monic irreducibles of degree n over F_p is (1/n) sum mu(d) p^(n/d)
        let count = |n: u32, p: u64| {
            (0..p.pow(n))
                .filter(|&m| {
                    let mut f: Poly = (0..n).map(|i| (m / p.pow(i)) % p).collect();
                    f.push(1);
                    is_irreducible(&f, p)
                })
                .count()
        };
        assert_eq!(count(4, 2), 3);
        assert_eq!(count(5, 2), 6);
        assert_eq!(count(4, 3), 18);
        assert_eq!(count(3, 7), (343 - 7) / 3);
    }
}
