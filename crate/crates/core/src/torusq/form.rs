use super::AnalyticRep;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::Matrix;

/// An antisymmetric bilinear form `Ω` on `Cⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticForm {
    matrix: Matrix,
}

impl SymplecticForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidForm("form matrix is not square".into()));
        }
        if !matrix.is_antisymmetric() {
            return Err(Error::InvalidForm("form matrix is not antisymmetric".into()));
        }
        Ok(SymplecticForm { matrix })
    }

    /// `Σ dz_i ∧ dz_j` over the given 0-based pairs.
    pub fn from_wedges(degree: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Matrix::zeros(degree, degree);
        for &(i, j) in pairs {
            if i >= degree || j >= degree || i == j {
                return Err(Error::InvalidForm(format!("bad wedge pair ({}, {})", i + 1, j + 1)));
            }
            *m.entry_mut(i, j) += &Cyclotomic::one();
            *m.entry_mut(j, i) -= &Cyclotomic::one();
        }
        Ok(SymplecticForm { matrix: m })
    }

    pub fn degree(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_degenerate(&self) -> bool {
        self.matrix.determinant().is_zero()
    }

    /// `Ω(u, v) = uᵀ Ω v`.
    pub fn pair(&self, u: &[Cyclotomic], v: &[Cyclotomic]) -> Cyclotomic {
        let ov = self.matrix.mul_vec(v);
        u.iter()
            .zip(&ov)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Whether `Ω` vanishes on the span of `basis`.
    pub fn vanishes_on(&self, basis: &[Vec<Cyclotomic>]) -> bool {
        basis
            .iter()
            .enumerate()
            .all(|(i, u)| basis[i + 1..].iter().all(|v| self.pair(u, v).is_zero()))
    }

    /// Nonzero upper-triangular entries `(i, j, Ω_ij)`: `Ω = Σ Ω_ij dz_i ∧ dz_j`.
    pub fn wedge_terms(&self) -> Vec<(usize, usize, Cyclotomic)> {
        let n = self.degree();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.matrix.get(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }
}

/// `Mᵀ Ω M = Ω` for every generator image. Degenerate forms are accepted.
pub fn preserves_form(rep: &AnalyticRep, form: &SymplecticForm) -> Result<bool> {
    if form.degree() != rep.degree() {
        return Err(Error::InvalidForm(format!(
            "form of size {} for a representation of degree {}",
            form.degree(),
            rep.degree()
        )));
    }
    Ok(rep
        .generator_images()
        .iter()
        .all(|m| m.pullback(&form.matrix) == form.matrix))
}

/// The lattice `(Z + ωZ)ⁿ`, or `Zⁿ` (standing for any product lattice) when
/// `ω = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpec {
    omega: Cyclotomic,
    order: u32,
}

/// Multiplicative order of a root of unity.
fn root_order(x: &Cyclotomic) -> Option<u32> {
    let bound = 2 * x.conductor();
    let mut p = x.clone();
    for k in 1..=bound {
        if p.is_one() {
            return Some(k);
        }
        p = &p * x;
    }
    None
}

impl LatticeSpec {
    /// `ω` must be `1` or a root of unity of order 3, 4 or 6, the cases in
    /// which `Z + ωZ` is a full lattice closed under multiplication.
    pub fn new(omega: Cyclotomic) -> Result<Self> {
        let order = root_order(&omega)
            .ok_or_else(|| Error::InvalidLattice(format!("{} is not a root of unity", omega)))?;
        if !matches!(order, 1 | 3 | 4 | 6) {
            return Err(Error::InvalidLattice(format!(
                "Z + ωZ is not a lattice ring for ω of order {}",
                order
            )));
        }
        Ok(LatticeSpec { omega, order })
    }

    pub fn integral() -> Self {
        LatticeSpec {
            omega: Cyclotomic::one(),
            order: 1,
        }
    }

    pub fn omega(&self) -> &Cyclotomic {
        &self.omega
    }

    /// Whether `x ∈ Z[ω]`.
    pub fn contains(&self, x: &Cyclotomic) -> bool {
        if self.order == 1 {
            return x.as_integer().is_some();
        }
        // x = a + bω with b = (x − x̄)/(ω − ω̄).
        let im = &self.omega - &self.omega.conj();
        let b = &(x - &x.conj()) * &im.inverse().expect("ω is not real");
        let Some(b) = b.as_rational() else {
            return false;
        };
        let a = x - &(&self.omega * &Cyclotomic::from_rational(b.clone()));
        b.is_integer() && a.as_rational().is_some_and(|a| a.is_integer())
    }
}

/// Every generator entry lies in `Z[ω]`.
pub fn preserves_lattice(rep: &AnalyticRep, lattice: &LatticeSpec) -> bool {
    rep.generator_images()
        .iter()
        .all(|m| m.nonzero_entries().iter().all(|v| lattice.contains(v)))
}

/// Nonzero entries of row `r`.
fn row_entries(m: &GroupElement, r: usize) -> Vec<(usize, Cyclotomic)> {
    match m {
        GroupElement::Perm(perm) => vec![(perm[r], Cyclotomic::one())],
        GroupElement::Monomial { perm, scalars } => vec![(perm[r], scalars[r].clone())],
        GroupElement::Dense(d) => d
            .row(r)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect(),
    }
}

/// Group average of the elementary forms `e_a ∧ e_b` in lexicographic order;
/// the first nonzero average, scaled so its first nonzero row-major entry is 1.
pub fn invariant_form(rep: &AnalyticRep) -> Option<SymplecticForm> {
    let n = rep.degree();
    let rows: Vec<Vec<Vec<(usize, Cyclotomic)>>> = rep
        .matrices()
        .iter()
        .map(|m| (0..n).map(|r| row_entries(m, r)).collect())
        .collect();
    for a in 0..n {
        for b in a + 1..n {
            // Mᵀ (e_a e_bᵀ − e_b e_aᵀ) M = r_aᵀ r_b − r_bᵀ r_a for rows r of M.
            let mut acc = vec![Cyclotomic::zero(); n * n];
            for m in &rows {
                for (k, u) in &m[a] {
                    for (l, v) in &m[b] {
                        let t = u * v;
                        acc[k * n + l] += &t;
                        acc[l * n + k] -= &t;
                    }
                }
            }
            let Some(lead) = acc.iter().find(|v| !v.is_zero()) else {
                continue;
            };
            let scale = lead.inverse().expect("nonzero");
            let data = acc.iter().map(|v| v * &scale).collect();
            let m = Matrix::new(n, n, data).expect("square");
            return Some(SymplecticForm { matrix: m });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_membership() {
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let l = LatticeSpec::new(z3.clone()).unwrap();
        assert!(l.contains(&z3));
        assert!(l.contains(&(&z3 * &z3)));
        assert!(l.contains(&Cyclotomic::from_integer(-7)));
        assert!(l.contains(&Cyclotomic::root_of_unity(6, 1)));
        assert!(!l.contains(&Cyclotomic::root_of_unity(4, 1)));
        assert!(!l.contains(&Cyclotomic::from_rational(crate::cyclo::rat(1, 2))));
        let gi = LatticeSpec::new(Cyclotomic::root_of_unity(4, 1)).unwrap();
        assert!(gi.contains(&Cyclotomic::root_of_unity(4, 3)));
        assert!(!gi.contains(&z3));
        let z = LatticeSpec::integral();
        assert!(z.contains(&Cyclotomic::from_integer(3)));
        assert!(!z.contains(&z3));
    }

    #[test]
    fn lattice_rejects_bad_generators() {
        assert!(matches!(
            LatticeSpec::new(Cyclotomic::from_integer(2)),
            Err(Error::InvalidLattice(_))
        ));
        assert!(matches!(
            LatticeSpec::new(Cyclotomic::root_of_unity(5, 1)),
            Err(Error::InvalidLattice(_))
        ));
        assert!(matches!(
            LatticeSpec::new(Cyclotomic::from_integer(-1)),
            Err(Error::InvalidLattice(_))
        ));
    }

    #[test]
    fn wedge_form() {
        let f = SymplecticForm::from_wedges(4, &[(0, 2), (1, 3)]).unwrap();
        assert!(!f.is_degenerate());
        assert_eq!(f.wedge_terms().len(), 2);
        let e = |i: usize| {
            let mut v = vec![Cyclotomic::zero(); 4];
            v[i] = Cyclotomic::one();
            v
        };
        assert!(f.vanishes_on(&[e(0), e(1)]));
        assert!(!f.vanishes_on(&[e(0), e(2)]));
        let bad = Matrix::identity(2);
        assert!(matches!(SymplecticForm::new(bad), Err(Error::InvalidForm(_))));
    }
}
