use serde::Serialize;

use super::{check_table, classify_symplectic, preserves_form, AnalyticRep, PairType, SymplecticClass, SymplecticForm};
use crate::chartab::{decompose, CharacterTable};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{rref, span_rank, Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Two complementary invariant Lagrangian subspaces, as row-reduced bases.
#[derive(Clone, Debug, PartialEq)]
pub struct Fibration {
    pub first: Vec<Vec<Cyclotomic>>,
    pub second: Vec<Vec<Cyclotomic>>,
}

#[derive(Serialize)]
struct FibrationText {
    first: Vec<Vec<String>>,
    second: Vec<Vec<String>>,
}

impl Serialize for Fibration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = |basis: &[Vec<Cyclotomic>]| {
            basis
                .iter()
                .map(|v| v.iter().map(Cyclotomic::to_syntax).collect())
                .collect()
        };
        FibrationText {
            first: text(&self.first),
            second: text(&self.second),
        }
        .serialize(s)
    }
}

fn add_row(acc: &mut [Cyclotomic], n: usize, m: &GroupElement) {
    match m {
        GroupElement::Perm(perm) => {
            for (i, &j) in perm.iter().enumerate() {
                acc[i * n + j] += &Cyclotomic::one();
            }
        }
        GroupElement::Monomial { perm, scalars } => {
            for (i, (&j, s)) in perm.iter().zip(scalars).enumerate() {
                acc[i * n + j] += s;
            }
        }
        GroupElement::Dense(d) => {
            for (a, v) in acc.iter_mut().zip(d.entries()) {
                if !v.is_zero() {
                    *a += v;
                }
            }
        }
    }
}

/// `π_i = (d_i/|G|) Σ_g conj(χ_i(g)) L(g)` for every constituent `χ_i` of
/// `L`, keyed by table row.
pub fn isotypic_projections(rep: &AnalyticRep, table: &CharacterTable) -> Result<Vec<(usize, Matrix)>> {
    check_table(rep, table)?;
    let g = rep.group();
    let n = rep.degree();
    let mults = decompose(rep.character(), table)?;
    let mut class_sums = vec![vec![Cyclotomic::zero(); n * n]; g.num_classes()];
    for (x, m) in rep.matrices().iter().enumerate() {
        add_row(&mut class_sums[g.class_of(x)], n, m);
    }
    let order = BigRational::from_integer(BigInt::from(g.order()));
    let mut out = Vec::new();
    for (i, &m) in mults.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let chi = table.get(i);
        let mut acc = vec![Cyclotomic::zero(); n * n];
        for (c, sum) in class_sums.iter().enumerate() {
            let w = chi.value(c).conj();
            if w.is_zero() {
                continue;
            }
            for (a, v) in acc.iter_mut().zip(sum) {
                if !v.is_zero() {
                    *a += &(&w * v);
                }
            }
        }
        let d = BigRational::from_integer(BigInt::from(chi.degree_int().expect("integral degree")));
        let factor = d / &order;
        let data = acc.iter().map(|v| v.scale(&factor)).collect();
        out.push((i, Matrix::new(n, n, data).expect("square")));
    }
    Ok(out)
}

/// Smallest subspace containing `v` and invariant under the generators.
fn invariant_span(gens: &[Matrix], v: Vec<Cyclotomic>) -> Vec<Vec<Cyclotomic>> {
    let n = v.len();
    let mut basis = vec![v];
    let mut next = 0;
    while next < basis.len() {
        let v = basis[next].clone();
        for g in gens {
            let w = g.mul_vec(&v);
            let mut trial = basis.clone();
            trial.push(w.clone());
            if span_rank(&trial) > basis.len() {
                basis.push(w);
            }
        }
        next += 1;
    }
    let r = rref(&mut basis, n).len();
    basis.truncate(r);
    basis
}

fn coordinate(n: usize, i: usize) -> Vec<Cyclotomic> {
    let mut v = vec![Cyclotomic::zero(); n];
    v[i] = Cyclotomic::one();
    v
}

/// Complementary pair among the invariant spans of coordinate vectors, each
/// of dimension `n/2` and isotropic for `form`.
fn coordinate_pair(rep: &AnalyticRep, form: &SymplecticForm) -> Option<Fibration> {
    let n = rep.degree();
    let gens: Vec<Matrix> = rep.generator_images().iter().map(GroupElement::to_matrix).collect();
    let mut candidates: Vec<Vec<Vec<Cyclotomic>>> = Vec::new();
    for i in 0..n {
        if candidates
            .iter()
            .any(|c| span_rank(&[c.clone(), vec![coordinate(n, i)]].concat()) == c.len())
        {
            continue;
        }
        let span = invariant_span(&gens, coordinate(n, i));
        if span.len() == n / 2 && form.vanishes_on(&span) {
            candidates.push(span);
        }
    }
    for (a, u) in candidates.iter().enumerate() {
        for v in &candidates[a + 1..] {
            if span_rank(&[u.clone(), v.clone()].concat()) == n {
                return Some(Fibration {
                    first: u.clone(),
                    second: v.clone(),
                });
            }
        }
    }
    None
}

/// Invariant Lagrangian subspaces `V₁ ⊕ V₂ = Cⁿ` for a conjugate-pair
/// representation: the isotypic images for a complex pair, invariant spans of
/// coordinate vectors for a real or trivial pair. `None` for other classes and
/// for degenerate forms.
pub fn lagrangian_fibration_data(
    rep: &AnalyticRep,
    form: &SymplecticForm,
    table: &CharacterTable,
) -> Result<Option<Fibration>> {
    if !preserves_form(rep, form)? {
        return Err(Error::InvalidForm("form is not invariant".into()));
    }
    if form.is_degenerate() {
        return Ok(None);
    }
    let n = rep.degree();
    let fib = match classify_symplectic(rep, table)? {
        SymplecticClass::ConjugatePair(PairType::Complex) => {
            let proj = isotypic_projections(rep, table)?;
            let [(_, p1), (_, p2)] = proj.as_slice() else {
                return Ok(None);
            };
            Fibration {
                first: p1.column_space(),
                second: p2.column_space(),
            }
        }
        SymplecticClass::ConjugatePair(_) => match coordinate_pair(rep, form) {
            Some(f) => f,
            None => return Ok(None),
        },
        _ => return Ok(None),
    };
    let ok = fib.first.len() == n / 2
        && fib.second.len() == n / 2
        && form.vanishes_on(&fib.first)
        && form.vanishes_on(&fib.second);
    Ok(ok.then_some(fib))
}
