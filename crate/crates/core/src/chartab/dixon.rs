//! Dixon–Schneider: irreducible characters as common eigenvectors of the
//! class matrices over `F_p`, lifted back to cyclotomic values.
//!
//! With `e` the group exponent, `p` is the smallest prime `p ≡ 1 (mod e)`
//! with `p > 2⌈√|G|⌉`, and `ζ_e` corresponds to `z = g^{(p-1)/e}` for the
//! smallest primitive root `g` mod `p`. The central characters
//! `ω_χ(C_i) = |C_i| χ(g_i) / χ(1)` are the common right eigenvectors of the
//! matrices `M_j[i][k] = #{x ∈ C_j : x⁻¹ z_k ∈ C_i}`. Eigenspaces are split by
//! class matrices in class-index order until all are one-dimensional.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::modp::{charpoly, eval_poly, kernel, rref, Fp, MatP};
use super::{Character, CharacterTable};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup};

const MAX_PRIME_ATTEMPTS: usize = 8;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Admissible primes in increasing order.
fn admissible_primes(order: u64, exponent: u64) -> impl Iterator<Item = u64> {
    let root = isqrt(order);
    let ceil_root = if root * root == order { root } else { root + 1 };
    let bound = 2 * ceil_root;
    let mut p = (bound / exponent + 1) * exponent + 1;
    std::iter::from_fn(move || {
        while !is_prime(p) {
            p += exponent;
        }
        let found = p;
        p += exponent;
        Some(found)
    })
}

fn class_matrix(group: &FiniteGroup, j: usize, f: Fp) -> MatP {
    let k = group.num_classes();
    let mut m = vec![vec![0u64; k]; k];
    for col in 0..k {
        let z = group.class_representative(col);
        for x in group.class_elements(j) {
            let i = group.class_of(group.mul(group.inv(x), z));
            m[i][col] += 1;
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v %= f.p;
        }
    }
    m
}

fn mat_vec(f: Fp, m: &MatP, v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.add(acc, f.mul(a, b)) })
        })
        .collect()
}

/// Roots of `poly` in `F_p` with multiplicities.
fn roots(f: Fp, poly: &[u64]) -> Vec<(u64, usize)> {
    let mut poly = poly.to_vec();
    let mut out = Vec::new();
    let mut x = 0;
    while poly.len() > 1 && x < f.p {
        let mut mult = 0;
        while poly.len() > 1 && eval_poly(f, &poly, x) == 0 {
            // Synthetic division by (t - x).
            let deg = poly.len() - 1;
            let mut q = vec![0u64; deg];
            let mut carry = 0;
            for d in (0..deg).rev() {
                carry = f.add(poly[d + 1], f.mul(carry, x));
                q[d] = carry;
            }
            poly = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((x, mult));
        }
        x += 1;
    }
    out
}

/// Splits `space` (a basis of an invariant subspace) into eigenspaces of `m`.
/// `None` if `m` is not diagonalizable on it over `F_p`.
fn split(f: Fp, m: &MatP, space: &[Vec<u64>]) -> Option<Vec<Vec<Vec<u64>>>> {
    let dim = space.len();
    let mut basis = space.to_vec();
    let pivots = rref(f, &mut basis);
    debug_assert_eq!(pivots.len(), dim);
    // Restricted action: A[s][r] = (M b_r)[pivot_s].
    let images: Vec<Vec<u64>> = basis.iter().map(|b| mat_vec(f, m, b)).collect();
    let a: MatP = (0..dim)
        .map(|s| (0..dim).map(|r| images[r][pivots[s]]).collect())
        .collect();
    let eig = roots(f, &charpoly(f, &a));
    if eig.iter().map(|(_, k)| k).sum::<usize>() != dim {
        return None;
    }
    if eig.len() == 1 {
        return Some(vec![basis]);
    }
    let mut parts = Vec::new();
    for (lambda, mult) in eig {
        let shifted: MatP = (0..dim)
            .map(|s| {
                (0..dim)
                    .map(|r| if s == r { f.sub(a[s][r], lambda) } else { a[s][r] })
                    .collect()
            })
            .collect();
        let ker = kernel(f, &shifted);
        if ker.len() != mult {
            return None;
        }
        let vecs = ker
            .iter()
            .map(|y| {
                let mut v = vec![0u64; basis[0].len()];
                for (coef, b) in y.iter().zip(&basis) {
                    if *coef != 0 {
                        for (vi, &bi) in v.iter_mut().zip(b) {
                            *vi = f.add(*vi, f.mul(*coef, bi));
                        }
                    }
                }
                v
            })
            .collect();
        parts.push(vecs);
    }
    Some(parts)
}

struct Attempt<'a> {
    group: &'a FiniteGroup,
    f: Fp,
    exponent: u64,
    zeta: u64,
    power_seqs: &'a [Vec<usize>],
}

impl Attempt<'_> {
    fn run(&self) -> std::result::Result<Vec<(u64, Vec<Cyclotomic>)>, String> {
        let g = self.group;
        let f = self.f;
        let k = g.num_classes();
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
            .map(|i| {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v
            })
            .collect()];
        for j in 1..k {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let m = class_matrix(g, j, f);
            let mut next = Vec::new();
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                    continue;
                }
                let parts = split(f, &m, &space)
                    .ok_or_else(|| format!("class matrix {} is not split over F_{}", j, f.p))?;
                next.extend(parts);
            }
            spaces = next;
        }
        if spaces.iter().any(|s| s.len() != 1) {
            return Err(format!("eigenspaces not separated over F_{}", f.p));
        }
        let order = g.order() as u64;
        let sizes: Vec<u64> = g.class_sizes().into_iter().map(|s| s as u64).collect();
        let inverse: Vec<usize> = (0..k).map(|c| g.inverse_class(c)).collect();
        let mut rows = Vec::with_capacity(k);
        for space in spaces {
            let v = &space[0];
            if v[0] == 0 {
                return Err("eigenvector vanishes at the identity class".into());
            }
            let s0 = f.inv(v[0]);
            let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, s0)).collect();
            // Σ ω_i ω_{i*} / |C_i| = |G| / d².
            let norm = (0..k).fold(0, |acc, i| {
                f.add(acc, f.mul(f.mul(omega[i], omega[inverse[i]]), f.inv(sizes[i] % f.p)))
            });
            if norm == 0 {
                return Err("degenerate central character".into());
            }
            let d2 = f.mul(order % f.p, f.inv(norm));
            let degree = (1..=isqrt(order))
                .find(|&d| d * d % f.p == d2)
                .ok_or_else(|| "no integral degree".to_string())?;
            let chi: Vec<u64> = (0..k)
                .map(|i| f.mul(f.mul(degree, omega[i]), f.inv(sizes[i] % f.p)))
                .collect();
            rows.push((degree, self.lift(&chi, degree)?));
        }
        let total: u64 = rows.iter().map(|(d, _)| d * d).sum();
        if total != order {
            return Err(format!("Σ d² = {} ≠ |G| = {}", total, order));
        }
        Ok(rows)
    }

    /// Recovers `χ(g) = Σ_t m_t ζ_o^t` from the eigenvalue multiplicities
    /// `m_t = (1/o) Σ_l χ(g^l) ζ_o^{-tl}`, evaluated mod `p`.
    fn lift(&self, chi: &[u64], degree: u64) -> std::result::Result<Vec<Cyclotomic>, String> {
        let f = self.f;
        let e = self.exponent;
        let mut values = Vec::with_capacity(chi.len());
        for (c, seq) in self.power_seqs.iter().enumerate() {
            let o = seq.len() as u64;
            let w = f.pow(self.zeta, e / o);
            let w_inv = f.inv(w);
            let o_inv = f.inv(o % f.p);
            let mut raw = vec![BigRational::zero(); e as usize];
            let mut total = 0u64;
            for t in 0..o {
                let step = f.pow(w_inv, t);
                let mut acc = 0;
                let mut pw = 1;
                for &cl in seq {
                    acc = f.add(acc, f.mul(chi[cl], pw));
                    pw = f.mul(pw, step);
                }
                let m = f.mul(acc, o_inv);
                if m > degree {
                    return Err(format!(
                        "eigenvalue multiplicity out of range at class {} over F_{}",
                        c, f.p
                    ));
                }
                total += m;
                raw[((e / o) * t) as usize] = BigRational::from_integer(BigInt::from(m));
            }
            if total != degree {
                return Err(format!("multiplicities do not sum to the degree at class {}", c));
            }
            values.push(Cyclotomic::normalize(raw, e as u32).expect("length matches"));
        }
        Ok(values)
    }
}

/// Full irreducible character table of `group`.
pub fn dixon_schneider(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    let k = group.num_classes();
    let exponent = group.exponent();
    if exponent > u32::MAX as u64 {
        return Err(Error::TableFailure("group exponent too large".into()));
    }
    // Class of g^l for l = 0..o-1, per class representative g of order o.
    let power_seqs: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let g = group.class_representative(c);
            let o = group.element_order(g);
            let mut seq = Vec::with_capacity(o as usize);
            let mut x = 0;
            for _ in 0..o {
                seq.push(group.class_of(x));
                x = group.mul(x, g);
            }
            seq
        })
        .collect();
    let mut failures = Vec::new();
    for p in admissible_primes(group.order() as u64, exponent).take(MAX_PRIME_ATTEMPTS) {
        if p >= 1 << 31 {
            break;
        }
        let f = Fp::new(p);
        let zeta = f.pow(f.primitive_root(), (p - 1) / exponent);
        let attempt = Attempt {
            group,
            f,
            exponent,
            zeta,
            power_seqs: &power_seqs,
        };
        match attempt.run() {
            Ok(rows) => {
                let irreducibles = rows
                    .into_iter()
                    .map(|(_, values)| Character::from_parts(group.clone(), values))
                    .collect();
                return Ok(CharacterTable::from_rows(group.clone(), irreducibles, exponent as u32));
            }
            Err(e) => failures.push(e),
        }
    }
    Err(Error::TableFailure(failures.join("; ")))
}
