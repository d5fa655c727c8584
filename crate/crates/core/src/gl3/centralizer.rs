//! Brute-force centralizers and conjugation orbits.
//!
//! The centralizer of A is the unit group of its commutant {X : XA = AX},
//! an F_q-subspace of M3 found by linear algebra; its elements are then
//! enumerated. Conjugation orbits are grown breadth-first from a generating
//! set of GL3(F_q): elementary matrices I + c E_ij with c running over an
//! F_p-basis of F_q, plus diag(g, 1, 1) for the generator g.

use rustc_hash::FxHashSet;

use super::mat::{self, Gl3Mat};
use crate::error::{check_budget, Result};
use crate::gf::{Fe, FieldCtx};
use crate::Exec;

/// Basis of the commutant of `a` as a list of matrices.
pub fn commutant_basis(f: &FieldCtx, a: &Gl3Mat) -> Vec<Gl3Mat> {
    // rows: equations (i, j) of XA - AX = 0; columns: unknowns x_(k,l)
    let mut rows: Vec<[Fe; 9]> = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let mut eq = [Fe::ZERO; 9];
            for k in 0..3 {
                eq[3 * i + k] = f.add(eq[3 * i + k], a.at(k, j));
                eq[3 * k + j] = f.sub(eq[3 * k + j], a.at(i, k));
            }
            rows.push(eq);
        }
    }
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..9).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = [Fe::ZERO; 9];
            x[fc] = Fe::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(rows[r][fc]);
            }
            Gl3Mat(x)
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns in row order.
fn rref(f: &FieldCtx, rows: &mut [[Fe; 9]]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..9 {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let c = rows[i][col];
                for j in 0..9 {
                    rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[r][j]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn combination(f: &FieldCtx, basis: &[Gl3Mat], mut idx: u64) -> Gl3Mat {
    let mut x = [Fe::ZERO; 9];
    for b in basis {
        let c = Fe((idx % f.q) as u32);
        idx /= f.q;
        if c.is_zero() {
            continue;
        }
        for (xe, &be) in x.iter_mut().zip(&b.0) {
            *xe = f.add(*xe, f.mul(c, be));
        }
    }
    Gl3Mat(x)
}

/// All invertible elements commuting with `a`.
pub fn centralizer_elements(f: &FieldCtx, a: &Gl3Mat, budget: u64) -> Result<Vec<Gl3Mat>> {
    let basis = commutant_basis(f, a);
    let total = (f.q as u128).pow(basis.len() as u32);
    check_budget("centralizer enumeration", total, budget)?;
    Ok((0..total as u64)
        .map(|i| combination(f, &basis, i))
        .filter(|x| !mat::det(f, x).is_zero())
        .collect())
}

/// |G_a| by the cheaper of commutant enumeration and orbit expansion.
/// The orbit has at least |G| / q^d elements for a d-dimensional commutant,
/// so the commutant is preferred while q^(2d) <= |G|.
pub fn centralizer_order_oracle(f: &FieldCtx, a: &Gl3Mat, budget: u64, exec: Exec) -> Result<u128> {
    let basis = commutant_basis(f, a);
    let total = (f.q as u128).pow(basis.len() as u32);
    let order = mat::group_order(f.q);
    let by_commutant = || {
        exec.fold_range(
            0..total as u64,
            || 0u128,
            |acc, i| acc + !mat::det(f, &combination(f, &basis, i)).is_zero() as u128,
            |x, y| x + y,
        )
    };
    if total <= budget as u128 && total.saturating_mul(total) <= order {
        return Ok(by_commutant());
    }
    match conjugation_orbit(f, a, budget) {
        Ok(orbit) => Ok(order / orbit.len() as u128),
        Err(_) if total <= budget as u128 => Ok(by_commutant()),
        Err(e) => Err(e),
    }
}

/// Set of matrix keys, dense when q^9 is small.
pub enum Visited {
    Dense(Vec<u64>),
    Sparse(FxHashSet<u64>),
}

impl Visited {
    const DENSE_LIMIT: u64 = 1 << 30;

    pub fn new(q: u64) -> Self {
        let n = (q as u128).pow(9);
        if n <= Self::DENSE_LIMIT as u128 {
            Visited::Dense(vec![0; (n as usize).div_ceil(64)])
        } else {
            Visited::Sparse(FxHashSet::default())
        }
    }

    /// Inserts `k`; returns whether it was new.
    #[inline]
    pub fn insert(&mut self, k: u64) -> bool {
        match self {
            Visited::Dense(bits) => {
                let (w, b) = ((k / 64) as usize, k % 64);
                let new = bits[w] >> b & 1 == 0;
                bits[w] |= 1 << b;
                new
            }
            Visited::Sparse(s) => s.insert(k),
        }
    }
}

/// The conjugacy class of `a`, in breadth-first order from `a`.
pub fn conjugation_orbit(f: &FieldCtx, a: &Gl3Mat, budget: u64) -> Result<Vec<Gl3Mat>> {
    let q = f.q;
    let basis: Vec<Fe> = (0..f.n).map(|k| Fe(f.p.pow(k) as u32)).collect();
    let g = f.generator;
    let g_inv = f.inv(g).expect("generator is a unit");
    let mut visited = Visited::new(q);
    visited.insert(a.key(q));
    let mut orbit = vec![*a];
    let mut head = 0;
    while head < orbit.len() {
        let m = orbit[head];
        head += 1;
        let mut push = |x: Gl3Mat, orbit: &mut Vec<Gl3Mat>| -> Result<()> {
            if visited.insert(x.key(q)) {
                check_budget("conjugation orbit", orbit.len() as u128 + 1, budget)?;
                orbit.push(x);
            }
            Ok(())
        };
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    for &c in &basis {
                        push(mat::conj_elementary(f, &m, i, j, c), &mut orbit)?;
                    }
                }
            }
        }
        push(mat::conj_diag0(f, &m, g, g_inv), &mut orbit)?;
    }
    Ok(orbit)
}
