mod common;

use std::sync::OnceLock;

use common::{case, corpus, Case, Rep, GROUPS};
use nalgebra::{Complex, DMatrix};
use proptest::prelude::*;
use torusq::chartab::{exterior_square, frobenius_schur, inner_product, symmetric_square, Character};
use torusq::torusq::{
    classify_symplectic, eigenvalue_one_failures, h0_reflexive_1forms, h0_reflexive_2forms, invariant_form,
    isotypic_projections, AnalyticRep, SymplecticClass,
};
use torusq::{Cyclotomic, Matrix};

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| GROUPS.iter().map(|&n| case(n)).collect())
}

fn reps() -> &'static [Rep] {
    static REPS: OnceLock<Vec<Rep>> = OnceLock::new();
    REPS.get_or_init(|| corpus(cases()))
}

fn by_name(name: &str) -> &'static Case {
    cases().iter().find(|c| c.name == name).unwrap()
}

/// Floating-point orthogonality, independent of the exact routines.
fn float_pairing(case: &Case, a: &Character, b: &Character) -> Complex<f64> {
    let g = &case.group;
    let mut acc = Complex::new(0.0, 0.0);
    for c in 0..g.num_classes() {
        acc += a.value(c).to_complex() * b.value(c).to_complex().conj() * g.class_size(c) as f64;
    }
    acc / g.order() as f64
}

#[test]
fn tables_are_orthogonal() {
    for case in cases() {
        let t = &case.table;
        assert!(t.verify(), "{}", case.name);
        assert_eq!(t.len(), case.group.num_classes(), "{}", case.name);
        let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum as usize, case.group.order(), "{}", case.name);
        for (i, a) in t.iter().enumerate() {
            for (j, b) in t.iter().enumerate() {
                let v = float_pairing(case, a, b);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - Complex::new(want, 0.0)).norm() < 1e-9, "{} rows {} {}", case.name, i, j);
            }
        }
        let g = &case.group;
        for c in 0..g.num_classes() {
            for d in 0..g.num_classes() {
                let mut acc = Complex::new(0.0, 0.0);
                for chi in t.iter() {
                    acc += chi.value(c).to_complex() * chi.value(d).to_complex().conj();
                }
                let want = if c == d { (g.order() / g.class_size(c)) as f64 } else { 0.0 };
                assert!((acc - Complex::new(want, 0.0)).norm() < 1e-9, "{} cols {} {}", case.name, c, d);
            }
        }
    }
}

#[test]
fn squares_sum_to_tensor_square() {
    for case in cases() {
        for chi in case.table.iter() {
            let sum = exterior_square(chi).add(&symmetric_square(chi)).unwrap();
            assert_eq!(sum, chi.tensor(chi).unwrap(), "{}", case.name);
        }
    }
}

#[test]
fn invariant_in_exterior_square_detects_quaternionic_type() {
    for name in ["s4", "q8", "c6", "g216", "g1280"] {
        let case = by_name(name);
        let trivial = Character::trivial(&case.group);
        for chi in case.table.iter() {
            let m = inner_product(&exterior_square(chi), &trivial).unwrap();
            let iota = frobenius_schur(chi).unwrap();
            let want = if iota == -1 { 1 } else { 0 };
            assert_eq!(m, Cyclotomic::from_integer(want), "{} {:?}", name, chi);
        }
    }
}

#[test]
fn isotypic_projections_split_the_space() {
    for r in reps().iter().filter(|r| r.rep.degree() <= 16 && r.rep.group().order() <= 216) {
        let table = &cases()[r.case].table;
        let projections = isotypic_projections(&r.rep, table).unwrap();
        let n = r.rep.degree();
        let mut total = Matrix::zeros(n, n);
        for (i, (_, p)) in projections.iter().enumerate() {
            assert_eq!(p.mul(p), *p, "{} not idempotent", r.label);
            for g in r.rep.generator_images() {
                let m = g.to_matrix();
                assert_eq!(p.mul(&m), m.mul(p), "{} does not commute", r.label);
            }
            for (_, q) in &projections[i + 1..] {
                assert!(p.mul(q).is_zero(), "{} not orthogonal", r.label);
            }
            total = total.add(p);
        }
        assert!(total.is_identity(), "{} incomplete", r.label);
    }
}

fn float_matrix(m: &Matrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).to_complex())
}

#[test]
fn eigenvalue_one_agrees_with_float_determinant() {
    for r in reps().iter().filter(|r| r.rep.group().order() <= 1280) {
        let g = r.rep.group();
        let exact = eigenvalue_one_failures(&r.rep);
        let mut float = Vec::new();
        for c in 0..g.num_classes() {
            let m = float_matrix(&r.rep.matrix(g.class_representative(c)).to_matrix());
            let n = m.nrows();
            let det = (m - DMatrix::identity(n, n)).determinant();
            if det.norm() > 1e-6 {
                float.push(c);
            }
        }
        assert_eq!(exact, float, "{}", r.label);
    }
}

#[test]
fn corpus_is_large_enough() {
    assert!(reps().len() >= 30, "{}", reps().len());
}

#[test]
fn classification_matches_invariant_form() {
    let mut seen = std::collections::BTreeSet::new();
    for r in reps() {
        let table = &cases()[r.case].table;
        let class = classify_symplectic(&r.rep, table).unwrap();
        let h20 = h0_reflexive_2forms(&r.rep).unwrap();
        let form = invariant_form(&r.rep);
        let nondegenerate = form.as_ref().is_some_and(|f| !f.is_degenerate());
        let uni = class != SymplecticClass::NotUniSymplectic;
        assert_eq!(uni, h20 == 1 && nondegenerate, "{}: {} h20={}", r.label, class, h20);
        if h20 == 0 {
            assert!(form.is_none(), "{}", r.label);
        }
        seen.insert(class.to_string());
    }
    for class in [
        "quaternionic-irreducible",
        "conjugate-pair(real)",
        "conjugate-pair(complex)",
        "conjugate-pair(trivial)",
        "not-uni-symplectic",
    ] {
        assert!(seen.contains(class), "no {} in corpus", class);
    }
}

fn unit_triangular(n: usize, entries: &[i64]) -> Matrix {
    let mut it = entries.iter().cycle();
    Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Cyclotomic::one(),
        std::cmp::Ordering::Less => Cyclotomic::from_integer(*it.next().unwrap()),
        std::cmp::Ordering::Greater => Cyclotomic::zero(),
    })
}

fn small_reps() -> Vec<&'static AnalyticRep> {
    reps()
        .iter()
        .filter(|r| r.rep.degree() >= 2 && r.rep.degree() <= 6 && r.rep.group().order() <= 24)
        .map(|r| &r.rep)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn form_counts_survive_basis_change(
        pick in 0usize..1000,
        entries in prop::collection::vec(-3i64..=3, 15),
        transpose in any::<bool>(),
    ) {
        let pool = small_reps();
        let rep = pool[pick % pool.len()];
        let mut p = unit_triangular(rep.degree(), &entries);
        if transpose {
            p = p.transpose();
        }
        let moved = rep.change_basis(&p).unwrap();
        prop_assert_eq!(moved.character(), rep.character());
        prop_assert_eq!(h0_reflexive_1forms(&moved).unwrap(), h0_reflexive_1forms(rep).unwrap());
        prop_assert_eq!(h0_reflexive_2forms(&moved).unwrap(), h0_reflexive_2forms(rep).unwrap());
        prop_assert_eq!(eigenvalue_one_failures(&moved), eigenvalue_one_failures(rep));
    }
}
