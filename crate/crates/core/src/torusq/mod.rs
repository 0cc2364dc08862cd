//! Invariants of a torus quotient `T/G` computed from the analytic
//! representation `L: G → GL(n, C)`.

mod fibration;
mod form;
mod report;

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::chartab::{decompose, exterior_square, inner_product, Character, CharacterTable};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::groupfile::AnalyticChoice;
use crate::linalg::Matrix;

pub use fibration::{isotypic_projections, lagrangian_fibration_data, Fibration};
pub use form::{invariant_form, preserves_form, preserves_lattice, LatticeSpec, SymplecticForm};
pub use report::{
    analyze, smoothness_verdict, Constituent, EigenvalueFailure, FormReport, LatticeReport, QuotientReport, Verdict,
    WedgeTerm,
};

/// A representation of an enumerated group, with one matrix per element.
#[derive(Clone)]
pub struct AnalyticRep {
    group: Arc<FiniteGroup>,
    degree: usize,
    images: Vec<GroupElement>,
    matrices: Vec<GroupElement>,
    character: Character,
}

impl std::fmt::Debug for AnalyticRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticRep")
            .field("group_order", &self.group.order())
            .field("degree", &self.degree)
            .field("character", &self.character)
            .finish()
    }
}

fn same_matrix(a: &GroupElement, b: &GroupElement) -> bool {
    match (a.scalars(), b.scalars()) {
        (Some(sa), Some(sb)) => {
            let perm = |g: &GroupElement| match g {
                GroupElement::Monomial { perm, .. } | GroupElement::Perm(perm) => perm.clone(),
                GroupElement::Dense(_) => unreachable!(),
            };
            perm(a) == perm(b) && sa == sb
        }
        _ => a.to_matrix() == b.to_matrix(),
    }
}

impl AnalyticRep {
    /// Extends generator images to every element along the group's BFS tree,
    /// checking `M(x·s) = M(x)·M(s)` for every element `x` and generator `s`.
    pub fn assemble(group: &Arc<FiniteGroup>, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != group.num_generators() {
            return Err(Error::NotAHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                group.num_generators()
            )));
        }
        let degree = images[0].degree();
        for img in &images {
            if img.degree() != degree {
                return Err(Error::NotAHomomorphism("images of different degrees".into()));
            }
            img.validate()?;
        }
        let order = group.order();
        let mut matrices: Vec<Option<GroupElement>> = vec![None; order];
        matrices[0] = Some(GroupElement::identity(degree));
        for x in 0..order {
            let mx = matrices[x]
                .clone()
                .expect("BFS order reaches every element from earlier ones");
            for (s, img) in images.iter().enumerate() {
                let y = group.mul_generator(x, s);
                let product = mx.mul(img);
                match &matrices[y] {
                    Some(my) => {
                        if !same_matrix(my, &product) {
                            return Err(Error::NotAHomomorphism(format!(
                                "relation through element {} and generator {} fails",
                                x,
                                s + 1
                            )));
                        }
                    }
                    None => matrices[y] = Some(product),
                }
            }
        }
        let matrices: Vec<GroupElement> = matrices.into_iter().map(Option::unwrap).collect();
        Ok(Self::from_matrices(group, images, matrices))
    }

    fn from_matrices(group: &Arc<FiniteGroup>, images: Vec<GroupElement>, matrices: Vec<GroupElement>) -> Self {
        let degree = matrices[0].degree();
        let values = (0..group.num_classes())
            .map(|c| matrices[group.class_representative(c)].trace())
            .collect();
        let character = Character::new(group.clone(), values).expect("one value per class");
        AnalyticRep {
            group: group.clone(),
            degree,
            images,
            matrices,
            character,
        }
    }

    /// The group's own defining representation.
    pub fn natural(group: &Arc<FiniteGroup>) -> Self {
        let images = group.generators().into_iter().map(|g| group.element(g)).collect();
        let matrices = (0..group.order()).map(|i| group.element(i)).collect();
        Self::from_matrices(group, images, matrices)
    }

    /// One-dimensional representation afforded by a linear character.
    pub fn linear(chi: &Character) -> Result<Self> {
        if !chi.degree().is_one() {
            return Err(Error::InvalidCharacter("linear characters have degree 1".into()));
        }
        let group = chi.group();
        let images = group
            .generators()
            .into_iter()
            .map(|g| GroupElement::Monomial {
                perm: vec![0],
                scalars: vec![chi.value(group.class_of(g)).clone()],
            })
            .collect();
        Self::assemble(group, images)
    }

    /// Block sum `ρ ⊕ ρ̄`.
    pub fn conjugate_sum(&self) -> Self {
        let images = self.images.iter().map(|m| m.direct_sum(&m.conj())).collect();
        let matrices = self.matrices.iter().map(|m| m.direct_sum(&m.conj())).collect();
        Self::from_matrices(&self.group, images, matrices)
    }

    pub fn direct_sum(&self, other: &AnalyticRep) -> Result<Self> {
        if self.group.id() != other.group.id() {
            return Err(Error::InvalidPair);
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.direct_sum(b)).collect();
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(Self::from_matrices(&self.group, images, matrices))
    }

    /// Entrywise complex conjugate representation.
    pub fn conj(&self) -> Self {
        let images = self.images.iter().map(GroupElement::conj).collect();
        let matrices = self.matrices.iter().map(GroupElement::conj).collect();
        Self::from_matrices(&self.group, images, matrices)
    }

    /// `g ↦ P⁻¹ M(g) P`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        if p.rows() != self.degree || p.cols() != self.degree {
            return Err(Error::InvalidInput("basis change has the wrong size".into()));
        }
        let p_inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidInput("basis change is singular".into()))?;
        let conj = |m: &GroupElement| GroupElement::Dense(p_inv.mul(&m.to_matrix()).mul(p));
        let images = self.images.iter().map(conj).collect();
        let matrices = self.matrices.iter().map(conj).collect();
        Ok(Self::from_matrices(&self.group, images, matrices))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Images of the group generators.
    pub fn generator_images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn matrix(&self, element: usize) -> &GroupElement {
        &self.matrices[element]
    }

    pub fn matrices(&self) -> &[GroupElement] {
        &self.matrices
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn is_faithful(&self) -> bool {
        self.matrices.iter().skip(1).all(|m| !m.is_identity())
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(GroupElement::is_identity)
    }
}

/// Representation type of an irreducible constituent, by its
/// Frobenius–Schur indicator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairType {
    Real,
    Complex,
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymplecticClass {
    QuaternionicIrreducible,
    ConjugatePair(PairType),
    NotUniSymplectic,
}

impl SymplecticClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SymplecticClass::QuaternionicIrreducible => "quaternionic-irreducible",
            SymplecticClass::ConjugatePair(PairType::Real) => "conjugate-pair(real)",
            SymplecticClass::ConjugatePair(PairType::Complex) => "conjugate-pair(complex)",
            SymplecticClass::ConjugatePair(PairType::Trivial) => "conjugate-pair(trivial)",
            SymplecticClass::NotUniSymplectic => "not-uni-symplectic",
        }
    }
}

impl std::fmt::Display for SymplecticClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_table(rep: &AnalyticRep, table: &CharacterTable) -> Result<()> {
    if rep.group.id() == table.group().id() {
        Ok(())
    } else {
        Err(Error::InvalidPair)
    }
}

fn natural_number(v: Cyclotomic, what: &str) -> Result<u64> {
    v.as_rational()
        .filter(|q| q.is_integer())
        .and_then(|q| q.to_integer().to_u64())
        .ok_or_else(|| Error::InconsistentCharacter(format!("{} = {} is not a natural number", what, v)))
}

/// `h⁰(Ω¹) = (χ_L | 1)`.
pub fn h0_reflexive_1forms(rep: &AnalyticRep) -> Result<u64> {
    let one = Character::trivial(&rep.group);
    natural_number(inner_product(&rep.character, &one)?, "(χ|1)")
}

/// `h⁰(Ω²) = (∧²χ_L | 1)`.
pub fn h0_reflexive_2forms(rep: &AnalyticRep) -> Result<u64> {
    let one = Character::trivial(&rep.group);
    natural_number(inner_product(&exterior_square(&rep.character), &one)?, "(∧²χ|1)")
}

pub fn classify_symplectic(rep: &AnalyticRep, table: &CharacterTable) -> Result<SymplecticClass> {
    check_table(rep, table)?;
    let mults = decompose(&rep.character, table)?;
    let support: Vec<usize> = (0..mults.len()).filter(|&i| mults[i] > 0).collect();
    let indicators = table.indicators();
    let class = match (support.as_slice(), support.iter().map(|&i| mults[i]).collect::<Vec<_>>().as_slice()) {
        ([i], [1]) if indicators[*i] == -1 => SymplecticClass::QuaternionicIrreducible,
        ([i], [2]) if indicators[*i] == 1 => {
            if table.get(*i) == &Character::trivial(&rep.group) {
                SymplecticClass::ConjugatePair(PairType::Trivial)
            } else {
                SymplecticClass::ConjugatePair(PairType::Real)
            }
        }
        ([i, j], [1, 1]) if indicators[*i] == 0 && table.conjugate_index(*i) == *j => {
            SymplecticClass::ConjugatePair(PairType::Complex)
        }
        _ => SymplecticClass::NotUniSymplectic,
    };
    Ok(class)
}

/// Decomplexification is homogeneous iff every constituent is `χ` or `χ̄`
/// for a single irreducible `χ`.
pub fn homogeneous_decomplexification(rep: &AnalyticRep, table: &CharacterTable) -> Result<bool> {
    check_table(rep, table)?;
    let mults = decompose(&rep.character, table)?;
    let support: Vec<usize> = (0..mults.len()).filter(|&i| mults[i] > 0).collect();
    Ok(match support.as_slice() {
        [_] => true,
        [i, j] => table.conjugate_index(*i) == *j,
        _ => false,
    })
}

/// Classes whose representing matrix lacks the eigenvalue 1.
pub fn eigenvalue_one_failures(rep: &AnalyticRep) -> Vec<usize> {
    let g = &rep.group;
    (0..g.num_classes())
        .filter(|&c| !rep.matrices[g.class_representative(c)].has_eigenvalue_one())
        .collect()
}

/// Whether every `L(g)` has 1 as an eigenvalue, with the failing classes.
pub fn eigenvalue_one_all(rep: &AnalyticRep) -> (bool, Vec<usize>) {
    let failures = eigenvalue_one_failures(rep);
    (failures.is_empty(), failures)
}

/// No prime `p | |G|` has a cyclic Sylow `p`-subgroup together with
/// `p | |G^ab|`.
pub fn is_primitive(group: &FiniteGroup) -> bool {
    let ab = group.abelianization_order() as u64;
    group
        .prime_divisors()
        .into_iter()
        .all(|p| !(group.sylow_cyclic(p).expect("p divides |G|") && ab.is_multiple_of(p)))
}

/// Builds the analytic representation requested by `choice`, resolving
/// `Auto` from the decomposition of the natural character.
pub fn analytic_rep(
    group: &Arc<FiniteGroup>,
    choice: AnalyticChoice,
    table: &CharacterTable,
) -> Result<(AnalyticRep, AnalyticChoice)> {
    let natural = AnalyticRep::natural(group);
    let resolved = match choice {
        AnalyticChoice::Auto => {
            let mults = decompose(natural.character(), table)?;
            let irreducible = mults.iter().sum::<u64>() == 1;
            let quaternionic = irreducible
                && mults
                    .iter()
                    .position(|&m| m == 1)
                    .is_some_and(|i| table.indicators()[i] == -1);
            if irreducible && !quaternionic {
                AnalyticChoice::ConjugateSum
            } else {
                AnalyticChoice::Natural
            }
        }
        other => other,
    };
    let rep = match resolved {
        AnalyticChoice::ConjugateSum => natural.conjugate_sum(),
        _ => natural,
    };
    Ok((rep, resolved))
}
