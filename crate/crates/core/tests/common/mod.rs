#![allow(dead_code)]

use std::sync::Arc;

use torusq::fixtures;
use torusq::group::DEFAULT_LIMIT;
use torusq::pipeline::close_file;
use torusq::torusq::AnalyticRep;
use torusq::{CharacterTable, FiniteGroup};

pub struct Case {
    pub name: &'static str,
    pub group: Arc<FiniteGroup>,
    pub table: CharacterTable,
}

pub fn case(name: &'static str) -> Case {
    let file = fixtures::get(name).expect("fixture exists").group_file();
    let group = close_file(&file, DEFAULT_LIMIT).expect("fixture closes");
    let table = CharacterTable::compute(&group).expect("table");
    Case { name, group, table }
}

/// Groups whose tables the property suites sweep.
pub const GROUPS: [&str; 10] = ["two-torus", "c2", "c3", "c6", "q8", "s4", "s4perm", "a5", "g216", "g1280"];

pub struct Rep {
    pub label: String,
    pub case: usize,
    pub rep: AnalyticRep,
}

/// Representations assembled from generators, linear characters, conjugates
/// and direct sums over the fixture groups.
pub fn corpus(cases: &[Case]) -> Vec<Rep> {
    let mut out = Vec::new();
    for (ci, case) in cases.iter().enumerate() {
        let mut push = |label: String, rep: AnalyticRep| {
            out.push(Rep {
                label: format!("{}:{}", case.name, label),
                case: ci,
                rep,
            })
        };
        let natural = AnalyticRep::natural(&case.group);
        let linear: Vec<AnalyticRep> = case
            .table
            .iter()
            .filter(|chi| chi.degree().is_one())
            .map(|chi| AnalyticRep::linear(chi).expect("linear character"))
            .collect();
        let small = case.group.order() <= 216;
        push("natural".into(), natural.clone());
        if small || natural.degree() <= 8 {
            push("natural+conj".into(), natural.conjugate_sum());
        }
        if small {
            push("conj".into(), natural.conj());
        }
        for (i, l) in linear.iter().enumerate().take(6) {
            push(format!("linear{}", i + 1), l.clone());
            push(format!("linear{}+conj", i + 1), l.conjugate_sum());
        }
        if linear.len() > 1 {
            push("linear1+linear2".into(), linear[0].direct_sum(&linear[1]).unwrap());
        }
        if small && natural.degree() <= 6 {
            push("natural+trivial".into(), natural.direct_sum(&linear[0]).unwrap());
            push("natural+natural".into(), natural.direct_sum(&natural).unwrap());
        }
    }
    out
}
