//! Characters, character tables and the functionals built on them.

mod dixon;
mod modp;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};

pub use dixon::dixon_schneider;

/// A class function with cyclotomic values, indexed like the group's classes.
#[derive(Clone)]
pub struct Character {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.group.id() == other.group.id() && self.values == other.values
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter().map(|v| v.to_syntax())).finish()
    }
}

impl Character {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::InvalidCharacter(format!(
                "{} values for {} classes",
                values.len(),
                group.num_classes()
            )));
        }
        Ok(Character { group, values })
    }

    pub(crate) fn from_parts(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Self {
        debug_assert_eq!(values.len(), group.num_classes());
        Character { group, values }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        let values = vec![Cyclotomic::one(); group.num_classes()];
        Character::from_parts(group.clone(), values)
    }

    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let mut values = vec![Cyclotomic::zero(); group.num_classes()];
        values[0] = Cyclotomic::from_integer(group.order() as i64);
        Character::from_parts(group.clone(), values)
    }

    /// Character of the group's own defining representation.
    pub fn defining(group: &Arc<FiniteGroup>) -> Self {
        let values = (0..group.num_classes())
            .map(|c| group.element(group.class_representative(c)).trace())
            .collect();
        Character::from_parts(group.clone(), values)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Degree as an integer, when it is one.
    pub fn degree_int(&self) -> Option<u64> {
        self.values[0].as_integer().and_then(|d| u64::try_from(d).ok())
    }

    pub fn conj(&self) -> Self {
        let values = self.values.iter().map(Cyclotomic::conj).collect();
        Character::from_parts(self.group.clone(), values)
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| *v == v.conj())
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group.id() == other.group.id() {
            Ok(())
        } else {
            Err(Error::InvalidPair)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Character::from_parts(self.group.clone(), values))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(Character::from_parts(self.group.clone(), values))
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = Cyclotomic::from_integer(k);
        let values = self.values.iter().map(|v| v * &k).collect();
        Character::from_parts(self.group.clone(), values)
    }

    /// Classes on which the character takes its degree.
    pub fn kernel_classes(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&c| self.values[c] == self.values[0]).collect()
    }

    /// True if only the identity lies in the kernel.
    pub fn is_faithful(&self) -> bool {
        self.kernel_classes() == [0]
    }

    /// Multiplicity of the eigenvalue 1 of the representing matrix at a class,
    /// `(1/o) Σ_{l<o} χ(g^l)` with `o` the element order.
    pub fn eigenvalue_one_multiplicity(&self, class: usize) -> BigRational {
        let g = &self.group;
        let rep = g.class_representative(class);
        let o = g.element_order(rep);
        let mut total = Cyclotomic::zero();
        let mut x = 0;
        for _ in 0..o {
            total += &self.values[g.class_of(x)];
            x = g.mul(x, rep);
        }
        let total = total
            .as_rational()
            .expect("eigenvalue multiplicity sums are rational");
        total / BigRational::from_integer(BigInt::from(o))
    }

    /// Whether every representing matrix has eigenvalue 1, read off the
    /// character alone.
    pub fn eigenvalue_one_everywhere(&self) -> bool {
        (0..self.group.num_classes()).all(|c| self.eigenvalue_one_multiplicity(c).is_positive())
    }
}

/// Character from one representing matrix per class representative.
pub fn natural_character(group: &Arc<FiniteGroup>, reps: &[GroupElement]) -> Result<Character> {
    if reps.len() != group.num_classes() {
        return Err(Error::InvalidCharacter(format!(
            "{} matrices for {} classes",
            reps.len(),
            group.num_classes()
        )));
    }
    Ok(Character::from_parts(group.clone(), reps.iter().map(GroupElement::trace).collect()))
}

/// `(a|b) = (1/|G|) Σ_g a(g) b(g⁻¹)`.
pub fn inner_product(a: &Character, b: &Character) -> Result<Cyclotomic> {
    a.same_group(b)?;
    let g = &a.group;
    let mut total = Cyclotomic::zero();
    for c in 0..g.num_classes() {
        let term = &a.values[c] * &b.values[g.inverse_class(c)];
        if !term.is_zero() {
            total += &term * &Cyclotomic::from_integer(g.class_size(c) as i64);
        }
    }
    let order = BigRational::from_integer(BigInt::from(g.order()));
    Ok(total.scale(&order.recip()))
}

fn inner_product_int(a: &Character, b: &Character) -> Result<Option<i64>> {
    let v = inner_product(a, b)?;
    Ok(v.as_integer().and_then(|n| i64::try_from(n).ok()))
}

fn square_parts(chi: &Character) -> (Vec<Cyclotomic>, Vec<Cyclotomic>) {
    let sq = chi.group.power_classes(2);
    let squares = chi.values.iter().map(|v| v * v).collect();
    let at_square = sq.iter().map(|&c| chi.values[c].clone()).collect();
    (squares, at_square)
}

/// `ι(χ) = (1/|G|) Σ_g χ(g²)`; requires `χ` irreducible.
pub fn frobenius_schur(chi: &Character) -> Result<i8> {
    if inner_product_int(chi, chi)? != Some(1) {
        return Err(Error::InvalidCharacter("character is not irreducible".into()));
    }
    Ok(frobenius_schur_unchecked(chi))
}

fn frobenius_schur_unchecked(chi: &Character) -> i8 {
    let g = &chi.group;
    let sq = g.power_classes(2);
    let mut total = Cyclotomic::zero();
    for (c, &s) in sq.iter().enumerate() {
        total += &chi.values[s] * &Cyclotomic::from_integer(g.class_size(c) as i64);
    }
    let order = BigRational::from_integer(BigInt::from(g.order()));
    let v = total.scale(&order.recip());
    match v.as_integer().and_then(|n| i8::try_from(n).ok()) {
        Some(n @ -1..=1) => n,
        _ => panic!("Frobenius–Schur indicator out of range: {}", v),
    }
}

/// `∧²χ(g) = (χ(g)² − χ(g²))/2`.
pub fn exterior_square(chi: &Character) -> Character {
    let (squares, at_square) = square_parts(chi);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let values = squares
        .iter()
        .zip(&at_square)
        .map(|(a, b)| (a - b).scale(&half))
        .collect();
    Character::from_parts(chi.group.clone(), values)
}

/// `Sym²χ(g) = (χ(g)² + χ(g²))/2`.
pub fn symmetric_square(chi: &Character) -> Character {
    let (squares, at_square) = square_parts(chi);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let values = squares
        .iter()
        .zip(&at_square)
        .map(|(a, b)| (a + b).scale(&half))
        .collect();
    Character::from_parts(chi.group.clone(), values)
}

/// Multiplicities `(χ|χ_i)` of every irreducible; `Σ m_i χ_i = χ` is checked.
pub fn decompose(chi: &Character, table: &CharacterTable) -> Result<Vec<u64>> {
    if chi.group.id() != table.group.id() {
        return Err(Error::InvalidPair);
    }
    let mut mults = Vec::with_capacity(table.len());
    for irr in &table.irreducibles {
        let m = inner_product(chi, irr)?;
        let n = m
            .as_integer()
            .filter(|n| !n.is_negative())
            .and_then(|n| u64::try_from(n).ok())
            .ok_or_else(|| {
                Error::InconsistentCharacter(format!("multiplicity {} is not a natural number", m))
            })?;
        mults.push(n);
    }
    let mut rebuilt = vec![Cyclotomic::zero(); chi.values.len()];
    for (m, irr) in mults.iter().zip(&table.irreducibles) {
        if *m == 0 {
            continue;
        }
        let k = Cyclotomic::from_integer(*m as i64);
        for (r, v) in rebuilt.iter_mut().zip(&irr.values) {
            *r += &(v * &k);
        }
    }
    if rebuilt != chi.values {
        return Err(Error::InconsistentCharacter(
            "character is not a combination of irreducibles".into(),
        ));
    }
    Ok(mults)
}

fn cmp_values(a: &[Cyclotomic], b: &[Cyclotomic]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp_canonical(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// The irreducible characters of a group, ordered by degree and then by
/// value sequence (descending, so the trivial character comes first).
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    irreducibles: Vec<Character>,
    conductor: u32,
}

impl CharacterTable {
    pub(crate) fn from_rows(group: Arc<FiniteGroup>, mut irreducibles: Vec<Character>, conductor: u32) -> Self {
        irreducibles.sort_by(|a, b| {
            a.degree_int()
                .cmp(&b.degree_int())
                .then_with(|| cmp_values(&b.values, &a.values))
        });
        CharacterTable {
            group,
            irreducibles,
            conductor,
        }
    }

    pub fn compute(group: &Arc<FiniteGroup>) -> Result<Self> {
        dixon_schneider(group)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Conductor all values are expressed over (the group exponent).
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn get(&self, i: usize) -> &Character {
        &self.irreducibles[i]
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn iter(&self) -> impl Iterator<Item = &Character> {
        self.irreducibles.iter()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles
            .iter()
            .map(|c| c.degree_int().expect("irreducible degrees are integers"))
            .collect()
    }

    pub fn indicators(&self) -> Vec<i8> {
        self.irreducibles.iter().map(frobenius_schur_unchecked).collect()
    }

    pub fn index_of(&self, chi: &Character) -> Option<usize> {
        self.irreducibles.iter().position(|c| c == chi)
    }

    /// Row index of the complex conjugate of row `i`.
    pub fn conjugate_index(&self, i: usize) -> usize {
        let c = self.irreducibles[i].conj();
        self.index_of(&c).expect("tables are closed under conjugation")
    }

    /// Row and column orthogonality, and `Σ d² = |G|`.
    pub fn verify(&self) -> bool {
        let g = &self.group;
        let k = g.num_classes();
        if self.len() != k {
            return false;
        }
        let degrees: u64 = self.degrees().iter().map(|d| d * d).sum();
        if degrees != g.order() as u64 {
            return false;
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate().skip(i) {
                let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if inner_product(a, b).ok() != Some(want) {
                    return false;
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let s: Cyclotomic = self
                    .irreducibles
                    .iter()
                    .map(|chi| &chi.values[c] * &chi.values[d].conj())
                    .sum();
                let want = if c == d {
                    Cyclotomic::from_integer((g.order() / g.class_size(c)) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if s != want {
                    return false;
                }
            }
        }
        true
    }

    /// Text grid: one header line of class sizes and orders, one line per
    /// irreducible, values in cyclotomic syntax at the table conductor.
    pub fn to_text(&self) -> String {
        let g = &self.group;
        let k = g.num_classes();
        let mut cells: Vec<Vec<String>> = Vec::with_capacity(self.len() + 2);
        let mut head = vec!["class".to_string()];
        head.extend((0..k).map(|c| format!("{}", c + 1)));
        cells.push(head);
        let mut size = vec!["size".to_string()];
        size.extend((0..k).map(|c| g.class_size(c).to_string()));
        cells.push(size);
        let mut order = vec!["order".to_string()];
        order.extend((0..k).map(|c| g.class_order(c).to_string()));
        cells.push(order);
        for (i, chi) in self.irreducibles.iter().enumerate() {
            let mut row = vec![format!("X.{}", i + 1)];
            row.extend(chi.values.iter().map(|v| self.value_syntax(v)));
            cells.push(row);
        }
        let widths: Vec<usize> = (0..=k)
            .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{:>w$}", s, w = *w))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    /// Value in cyclotomic syntax at the table conductor; `±z^k` for roots
    /// of unity up to sign.
    pub fn value_syntax(&self, v: &Cyclotomic) -> String {
        if v.as_rational().is_some() {
            return v.to_syntax();
        }
        let e = self.conductor;
        let neg = -v;
        for k in 1..e {
            let root = Cyclotomic::root_of_unity(e, k as i64);
            if &root == v {
                return format!("z^{}", k);
            }
            if root == neg {
                return format!("-z^{}", k);
            }
        }
        v.to_syntax_at(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;
    use crate::linalg::Matrix;

    fn perm_group(gens: &[Vec<usize>]) -> Arc<FiniteGroup> {
        let gens: Vec<GroupElement> = gens.iter().map(|p| GroupElement::Perm(p.clone())).collect();
        Arc::new(FiniteGroup::close(&gens, 10_000).unwrap())
    }

    fn s4() -> Arc<FiniteGroup> {
        perm_group(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]])
    }

    fn q8() -> Arc<FiniteGroup> {
        let i = Cyclotomic::root_of_unity(4, 1);
        let a = Matrix::from_rows(vec![
            vec![i.clone(), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), -&i],
        ])
        .unwrap();
        let b = Matrix::from_rows(vec![
            vec![Cyclotomic::zero(), Cyclotomic::one()],
            vec![Cyclotomic::from_integer(-1), Cyclotomic::zero()],
        ])
        .unwrap();
        let gens = [GroupElement::Dense(a), GroupElement::Dense(b)];
        Arc::new(FiniteGroup::close(&gens, 100).unwrap())
    }

    #[test]
    fn s4_table() {
        let g = s4();
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2, 3, 3]);
        assert!(t.verify());
        assert_eq!(t.get(0), &Character::trivial(&g));
        assert_eq!(t.indicators(), vec![1; 5]);
        for chi in t.iter() {
            assert!(chi.values().iter().all(|v| v.as_integer().is_some()));
        }
        // The permutation character is trivial + standard.
        let perm = Character::defining(&g);
        let m = decompose(&perm, &t).unwrap();
        assert_eq!(m.iter().sum::<u64>(), 2);
        assert_eq!(m[0], 1);
    }

    #[test]
    fn q8_table() {
        let g = q8();
        assert_eq!(g.order(), 8);
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2]);
        assert!(t.verify());
        assert_eq!(t.indicators(), vec![1, 1, 1, 1, -1]);
        let nat = Character::defining(&g);
        assert_eq!(t.index_of(&nat), Some(4));
        assert_eq!(frobenius_schur(&nat).unwrap(), -1);
        let alt = exterior_square(&nat);
        assert_eq!(inner_product(&alt, &Character::trivial(&g)).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn cyclic_three() {
        let g = perm_group(&[vec![1, 2, 0]]);
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        assert!(t.verify());
        assert_eq!(t.indicators(), vec![1, 0, 0]);
        assert_eq!(t.conjugate_index(1), 2);
        let z = Cyclotomic::root_of_unity(3, 1);
        let values: Vec<_> = t.iter().map(|c| c.value(1).clone()).collect();
        assert!(values.contains(&z));
        assert!(values.contains(&z.conj()));
    }

    #[test]
    fn regular_character_decomposes_by_degree() {
        let g = s4();
        let t = CharacterTable::compute(&g).unwrap();
        let reg = Character::regular(&g);
        assert_eq!(decompose(&reg, &t).unwrap(), t.degrees());
        for chi in t.iter() {
            let d = chi.degree().clone();
            assert_eq!(inner_product(&reg, chi).unwrap(), d);
        }
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let g = s4();
        let t = CharacterTable::compute(&g).unwrap();
        let mut values = Character::trivial(&g).values().to_vec();
        values[1] = Cyclotomic::from_rational(rat(1, 2));
        let bogus = Character::new(g.clone(), values).unwrap();
        assert!(matches!(decompose(&bogus, &t), Err(Error::InconsistentCharacter(_))));
        assert!(matches!(frobenius_schur(&bogus.scale(2)), Err(Error::InvalidCharacter(_))));
    }

    #[test]
    fn squares_sum_to_tensor_square() {
        let g = s4();
        let t = CharacterTable::compute(&g).unwrap();
        for chi in t.iter() {
            let d = chi.degree_int().unwrap() as i64;
            let alt = exterior_square(chi);
            let sym = symmetric_square(chi);
            assert_eq!(alt.degree(), &Cyclotomic::from_integer(d * (d - 1) / 2));
            assert_eq!(sym.degree(), &Cyclotomic::from_integer(d * (d + 1) / 2));
            assert_eq!(alt.add(&sym).unwrap(), chi.tensor(chi).unwrap());
        }
    }

    #[test]
    fn group_mismatch() {
        let a = s4();
        let b = perm_group(&[vec![1, 2, 0]]);
        let r = inner_product(&Character::trivial(&a), &Character::trivial(&b));
        assert!(matches!(r, Err(Error::InvalidPair)));
    }
}
