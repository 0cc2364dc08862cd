use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A linear map given as a monomial matrix, a dense matrix, or a permutation.
///
/// Monomial and permutation elements use the row convention of the printed
/// generators: `(Mz)_i = s_i · z_{perm[i]}`, so row `i` of the matrix has its
/// single nonzero entry `s_i` in column `perm[i]`. Permutations are monomial
/// elements with unit scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupElement {
    Monomial {
        perm: Vec<usize>,
        scalars: Vec<Cyclotomic>,
    },
    Dense(Matrix),
    Perm(Vec<usize>),
}

fn is_bijection(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

impl GroupElement {
    pub fn identity(degree: usize) -> Self {
        GroupElement::Perm((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        match self {
            GroupElement::Monomial { perm, .. } | GroupElement::Perm(perm) => perm.len(),
            GroupElement::Dense(m) => m.rows(),
        }
    }

    /// Checks shape and invertibility.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupElement::Perm(perm) => {
                if !is_bijection(perm) {
                    return Err(Error::InvalidGenerator(format!("{:?} is not a permutation", perm)));
                }
            }
            GroupElement::Monomial { perm, scalars } => {
                if !is_bijection(perm) {
                    return Err(Error::InvalidGenerator(format!("{:?} is not a permutation", perm)));
                }
                if scalars.len() != perm.len() {
                    return Err(Error::InvalidGenerator(
                        "monomial element needs one scalar per coordinate".into(),
                    ));
                }
                if scalars.iter().any(Cyclotomic::is_zero) {
                    return Err(Error::InvalidGenerator("zero monomial scalar".into()));
                }
            }
            GroupElement::Dense(m) => {
                if !m.is_square() {
                    return Err(Error::InvalidGenerator("non-square matrix".into()));
                }
                if m.determinant().is_zero() {
                    return Err(Error::InvalidGenerator("singular matrix".into()));
                }
            }
        }
        Ok(())
    }

    pub fn scalars(&self) -> Option<Vec<Cyclotomic>> {
        match self {
            GroupElement::Monomial { scalars, .. } => Some(scalars.clone()),
            GroupElement::Perm(p) => Some(vec![Cyclotomic::one(); p.len()]),
            GroupElement::Dense(_) => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        !matches!(self, GroupElement::Dense(_))
    }

    pub fn to_matrix(&self) -> Matrix {
        match self {
            GroupElement::Dense(m) => m.clone(),
            GroupElement::Monomial { perm, .. } | GroupElement::Perm(perm) => {
                let scalars = self.scalars().unwrap();
                let n = perm.len();
                let mut m = Matrix::zeros(n, n);
                for (i, (&p, s)) in perm.iter().zip(scalars).enumerate() {
                    m.set(i, p, s);
                }
                m
            }
        }
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => {
                GroupElement::Perm(a.iter().map(|&i| b[i]).collect())
            }
            (GroupElement::Dense(_), _) | (_, GroupElement::Dense(_)) => {
                GroupElement::Dense(self.to_matrix().mul(&other.to_matrix()))
            }
            _ => {
                let (pa, sa) = self.monomial_parts();
                let (pb, sb) = other.monomial_parts();
                let perm = pa.iter().map(|&i| pb[i]).collect();
                let scalars = pa
                    .iter()
                    .zip(&sa)
                    .map(|(&i, s)| s * &sb[i])
                    .collect();
                GroupElement::Monomial { perm, scalars }
            }
        }
    }

    fn monomial_parts(&self) -> (Vec<usize>, Vec<Cyclotomic>) {
        match self {
            GroupElement::Monomial { perm, scalars } => (perm.clone(), scalars.clone()),
            GroupElement::Perm(perm) => (perm.clone(), vec![Cyclotomic::one(); perm.len()]),
            GroupElement::Dense(_) => unreachable!(),
        }
    }

    pub fn inverse(&self) -> Option<GroupElement> {
        match self {
            GroupElement::Perm(p) => {
                let mut q = vec![0; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    q[j] = i;
                }
                Some(GroupElement::Perm(q))
            }
            GroupElement::Monomial { perm, scalars } => {
                let mut q = vec![0; perm.len()];
                for (i, &j) in perm.iter().enumerate() {
                    q[j] = i;
                }
                let inv: Option<Vec<Cyclotomic>> =
                    q.iter().map(|&i| scalars[i].inverse()).collect();
                Some(GroupElement::Monomial {
                    perm: q,
                    scalars: inv?,
                })
            }
            GroupElement::Dense(m) => m.inverse().map(GroupElement::Dense),
        }
    }

    pub fn trace(&self) -> Cyclotomic {
        match self {
            GroupElement::Dense(m) => m.trace(),
            GroupElement::Perm(p) => {
                Cyclotomic::from_integer(p.iter().enumerate().filter(|(i, &j)| *i == j).count() as i64)
            }
            GroupElement::Monomial { perm, scalars } => perm
                .iter()
                .enumerate()
                .filter(|(i, &j)| *i == j)
                .map(|(i, _)| scalars[i].clone())
                .sum(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Dense(m) => m.is_identity(),
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, &j)| i == j),
            GroupElement::Monomial { perm, scalars } => perm
                .iter()
                .enumerate()
                .all(|(i, &j)| i == j && scalars[i].is_one()),
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(p.clone()),
            GroupElement::Monomial { perm, scalars } => GroupElement::Monomial {
                perm: perm.clone(),
                scalars: scalars.iter().map(Cyclotomic::conj).collect(),
            },
            GroupElement::Dense(m) => GroupElement::Dense(m.conj()),
        }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &GroupElement) -> GroupElement {
        if self.is_monomial() && other.is_monomial() {
            let (pa, mut sa) = self.monomial_parts();
            let (pb, sb) = other.monomial_parts();
            let n = pa.len();
            let mut perm = pa;
            perm.extend(pb.iter().map(|&j| j + n));
            sa.extend(sb);
            return GroupElement::Monomial { perm, scalars: sa };
        }
        GroupElement::Dense(self.to_matrix().direct_sum(&other.to_matrix()))
    }

    /// `Mᵀ Ω M`, the pullback of the bilinear form `Ω`.
    pub fn pullback(&self, omega: &Matrix) -> Matrix {
        if let GroupElement::Dense(m) = self {
            return m.transpose().mul(omega).mul(m);
        }
        let (perm, scalars) = self.monomial_parts();
        let n = perm.len();
        // Column a of M is nonzero only in row perm⁻¹(a).
        let mut inv = vec![0; n];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        Matrix::from_fn(n, n, |a, b| {
            let (i, j) = (inv[a], inv[b]);
            let w = omega.get(i, j);
            if w.is_zero() {
                Cyclotomic::zero()
            } else {
                &(&scalars[i] * w) * &scalars[j]
            }
        })
    }

    /// Whether `1` is an eigenvalue. Monomial elements decide this from their
    /// cycles: a cycle contributes eigenvalue 1 iff its scalar product is 1.
    /// Dense elements use the exact determinant of `M - I`.
    pub fn has_eigenvalue_one(&self) -> bool {
        match self {
            GroupElement::Dense(m) => m.sub(&Matrix::identity(m.rows())).determinant().is_zero(),
            _ => {
                let (perm, scalars) = self.monomial_parts();
                let mut seen = vec![false; perm.len()];
                for start in 0..perm.len() {
                    if seen[start] {
                        continue;
                    }
                    let mut prod = Cyclotomic::one();
                    let mut i = start;
                    while !seen[i] {
                        seen[i] = true;
                        prod = &prod * &scalars[i];
                        i = perm[i];
                    }
                    if prod.is_one() {
                        return true;
                    }
                }
                false
            }
        }
    }

    /// All matrix entries, in row-major order (zeros included for dense only).
    pub fn nonzero_entries(&self) -> Vec<Cyclotomic> {
        match self {
            GroupElement::Dense(m) => m.entries().iter().filter(|v| !v.is_zero()).cloned().collect(),
            _ => self.monomial_parts().1,
        }
    }

    /// Conductor that holds every entry.
    pub fn conductor(&self) -> u32 {
        use num_integer::Integer;
        self.nonzero_entries()
            .iter()
            .fold(1u32, |acc, v| acc.lcm(&v.conductor()))
    }
}
