//! Linear algebra over a prime field `F_p`, `p < 2^31`.

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    #[cfg(test)]
    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Smallest generator of `F_p^*`.
    pub fn primitive_root(self) -> u64 {
        let factors = crate::group::prime_divisors(self.p - 1);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1))
            .unwrap_or(1)
    }
}

/// Row-major square matrix over `F_p`.
pub type MatP = Vec<Vec<u64>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: Fp, rows: &mut [Vec<u64>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (v, &q) in row.iter_mut().zip(&pivot) {
                    if q != 0 {
                        *v = f.sub(*v, f.mul(k, q));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{y : A y = 0}`.
pub fn kernel(f: Fp, a: &MatP) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut rows = a.clone();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, rows[r][fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)`, lowest degree first, via
/// reduction to upper Hessenberg form.
pub fn charpoly(f: Fp, a: &MatP) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    // Similarity reduction to Hessenberg form.
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = f.inv(h[m][m - 1]);
        for i in m + 1..n {
            let u = f.mul(h[i][m - 1], t);
            if u == 0 {
                continue;
            }
            // row_i -= u row_m ; col_m += u col_i
            for j in 0..n {
                let v = f.mul(u, h[m][j]);
                h[i][j] = f.sub(h[i][j], v);
            }
            for row in h.iter_mut() {
                let v = f.mul(u, row[i]);
                row[m] = f.add(row[m], v);
            }
        }
    }
    // Recurrence on leading principal submatrices.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        // (x - h_kk) p_k
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[k][k], c));
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(h[i][k], prod);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn eval_poly(f: Fp, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_brute(f: Fp, a: &MatP) -> u64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for j in 0..n {
            let minor: MatP = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                .collect();
            let term = f.mul(a[0][j], det_brute(f, &minor));
            total = if j % 2 == 0 { f.add(total, term) } else { f.sub(total, term) };
        }
        total
    }

    #[test]
    fn charpoly_matches_brute_force_determinant() {
        let f = Fp::new(101);
        let a: MatP = vec![
            vec![3, 0, 7, 1, 0],
            vec![0, 0, 5, 2, 9],
            vec![4, 1, 0, 0, 8],
            vec![0, 0, 0, 6, 3],
            vec![2, 7, 0, 1, 1],
        ];
        let poly = charpoly(f, &a);
        assert_eq!(poly.len(), 6);
        for x in [0u64, 1, 2, 17, 55, 100] {
            let xi: MatP = (0..5)
                .map(|i| (0..5).map(|j| f.sub(if i == j { x } else { 0 }, a[i][j])).collect())
                .collect();
            assert_eq!(eval_poly(f, &poly, x), det_brute(f, &xi), "x = {}", x);
        }
    }

    #[test]
    fn kernel_dimension() {
        let f = Fp::new(7);
        let a: MatP = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let k = kernel(f, &a);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let s = row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn primitive_root_generates() {
        let f = Fp::new(73);
        let g = f.primitive_root();
        let mut seen = std::collections::HashSet::new();
        let mut x = 1;
        for _ in 0..72 {
            x = f.mul(x, g);
            seen.insert(x);
        }
        assert_eq!(seen.len(), 72);
    }
}
