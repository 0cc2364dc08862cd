//! Embedded example groups and the values their analysis must reproduce.

use crate::chartab::frobenius_schur;
use crate::error::{Error, Result};
use crate::groupfile::GroupFile;
use crate::pipeline::{analyze_file, Analysis, Options};
use crate::torusq::{eigenvalue_one_all, AnalyticRep};

/// Expected analysis values.
#[derive(Clone, Debug)]
pub struct Expected {
    pub order: usize,
    pub degrees: Option<&'static [u64]>,
    /// Whether the generators' own representation is irreducible.
    pub natural_irreducible: bool,
    pub natural_indicator: Option<i8>,
    pub natural_eigenvalue_one_all: bool,
    pub primitive: bool,
    pub degree: usize,
    pub h10: u64,
    pub h20: u64,
    pub symplectic_class: &'static str,
    pub homogeneous: bool,
    pub form_preserved: Option<bool>,
    pub lattice_preserved: Option<bool>,
    /// Dimensions of the Lagrangian pair, if one is expected.
    pub fibration: Option<(usize, usize)>,
    pub summary: &'static str,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub expected: Option<Expected>,
}

impl Fixture {
    pub fn group_file(&self) -> GroupFile {
        GroupFile::parse(self.source).expect("embedded fixtures parse")
    }
}

/// Names accepted by `check`.
pub const EXAMPLES: [&str; 3] = ["s4", "g216", "g1280"];

static FIXTURES: &[Fixture] = &[
    Fixture {
        name: "s4",
        source: include_str!("../fixtures/s4.group"),
        expected: Some(Expected {
            order: 24,
            degrees: Some(&[1, 1, 2, 3, 3]),
            natural_irreducible: true,
            natural_indicator: Some(1),
            natural_eigenvalue_one_all: true,
            primitive: true,
            degree: 6,
            h10: 0,
            h20: 1,
            symplectic_class: "conjugate-pair(real)",
            homogeneous: true,
            form_preserved: Some(true),
            lattice_preserved: Some(true),
            fibration: Some((3, 3)),
            summary: "singular-unless-torus",
        }),
    },
    Fixture {
        name: "g216",
        source: include_str!("../fixtures/g216.group"),
        expected: Some(Expected {
            order: 216,
            degrees: None,
            natural_irreducible: true,
            natural_indicator: Some(0),
            natural_eigenvalue_one_all: true,
            primitive: true,
            degree: 16,
            h10: 0,
            h20: 1,
            symplectic_class: "conjugate-pair(complex)",
            homogeneous: true,
            form_preserved: Some(true),
            lattice_preserved: Some(true),
            fibration: Some((8, 8)),
            summary: "singular-unless-torus",
        }),
    },
    Fixture {
        name: "g216-shift",
        source: include_str!("../fixtures/g216-shift.group"),
        expected: None,
    },
    Fixture {
        name: "g1280",
        source: include_str!("../fixtures/g1280.group"),
        expected: Some(Expected {
            order: 1280,
            degrees: None,
            natural_irreducible: true,
            natural_indicator: Some(-1),
            natural_eigenvalue_one_all: true,
            // The first map permutes five blocks of four coordinates cyclically,
            // so G maps onto C5 while its Sylow 5-subgroup is cyclic.
            primitive: false,
            degree: 20,
            h10: 0,
            h20: 1,
            symplectic_class: "quaternionic-irreducible",
            homogeneous: true,
            form_preserved: Some(true),
            lattice_preserved: Some(true),
            fibration: None,
            summary: "singular-unless-torus",
        }),
    },
    Fixture {
        name: "two-torus",
        source: include_str!("../fixtures/two-torus.group"),
        expected: Some(Expected {
            order: 1,
            degrees: Some(&[1]),
            natural_irreducible: false,
            natural_indicator: None,
            natural_eigenvalue_one_all: true,
            primitive: true,
            degree: 2,
            h10: 2,
            h20: 1,
            symplectic_class: "conjugate-pair(trivial)",
            homogeneous: true,
            form_preserved: Some(true),
            lattice_preserved: Some(true),
            fibration: Some((1, 1)),
            summary: "two-torus",
        }),
    },
    Fixture {
        name: "s4-untwisted",
        source: include_str!("../fixtures/s4-untwisted.group"),
        expected: Some(Expected {
            order: 24,
            degrees: Some(&[1, 1, 2, 3, 3]),
            natural_irreducible: true,
            natural_indicator: Some(1),
            natural_eigenvalue_one_all: false,
            primitive: true,
            degree: 6,
            h10: 0,
            h20: 1,
            symplectic_class: "conjugate-pair(real)",
            homogeneous: true,
            form_preserved: None,
            lattice_preserved: None,
            fibration: Some((3, 3)),
            summary: "singular-unless-torus",
        }),
    },
    Fixture {
        name: "q8",
        source: include_str!("../fixtures/q8.group"),
        expected: None,
    },
    Fixture {
        name: "c2",
        source: include_str!("../fixtures/c2.group"),
        expected: None,
    },
    Fixture {
        name: "c3",
        source: include_str!("../fixtures/c3.group"),
        expected: None,
    },
    Fixture {
        name: "c6",
        source: include_str!("../fixtures/c6.group"),
        expected: None,
    },
    Fixture {
        name: "s4perm",
        source: include_str!("../fixtures/s4perm.group"),
        expected: None,
    },
    Fixture {
        name: "a5",
        source: include_str!("../fixtures/a5.group"),
        expected: None,
    },
];

pub fn all() -> &'static [Fixture] {
    FIXTURES
}

pub fn get(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// One comparison between an expected and a computed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

/// Runs the full pipeline on a fixture and compares every expected value.
pub fn check(fixture: &Fixture) -> Result<(Analysis, Vec<Check>)> {
    let expected = fixture
        .expected
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("fixture `{}` has no expectations", fixture.name)))?;
    let analysis = analyze_file(&fixture.group_file(), &Options::default())?;
    let natural = AnalyticRep::natural(&analysis.group);
    let nat_chi = natural.character();
    let irreducible = crate::chartab::inner_product(nat_chi, nat_chi)?.is_one();
    let indicator = if irreducible {
        Some(frobenius_schur(nat_chi)?)
    } else {
        None
    };
    let r = &analysis.report;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, expected: String, actual: String| {
        checks.push(Check { name, expected, actual });
    };
    push("group order", expected.order.to_string(), r.group_order.to_string());
    push("classes = irreducibles", r.classes.to_string(), analysis.table.len().to_string());
    push("table self-check", "true".into(), analysis.table.verify().to_string());
    if let Some(d) = expected.degrees {
        push("table degrees", format!("{:?}", d), format!("{:?}", analysis.table.degrees()));
    }
    push("natural irreducible", expected.natural_irreducible.to_string(), irreducible.to_string());
    push("natural indicator", opt(expected.natural_indicator), opt(indicator));
    push(
        "natural eigenvalue 1 on all classes",
        expected.natural_eigenvalue_one_all.to_string(),
        eigenvalue_one_all(&natural).0.to_string(),
    );
    push("primitive", expected.primitive.to_string(), r.primitive.to_string());
    push("analytic degree", expected.degree.to_string(), r.degree.to_string());
    push("h10", expected.h10.to_string(), r.h10.to_string());
    push("h20", expected.h20.to_string(), r.h20.to_string());
    push("symplectic class", expected.symplectic_class.into(), r.symplectic_class.to_string());
    push(
        "homogeneous decomplexification",
        expected.homogeneous.to_string(),
        r.homogeneous_decomplexification.to_string(),
    );
    if let Some(p) = expected.form_preserved {
        let given = r.form.as_ref().filter(|f| f.source == "given").map(|f| f.preserved);
        push("form preserved", p.to_string(), opt(given));
    }
    if let Some(p) = expected.lattice_preserved {
        push("lattice preserved", p.to_string(), opt(r.lattice.as_ref().map(|l| l.preserved)));
    }
    let dims = r
        .fibration
        .as_ref()
        .map(|f| format!("{}+{}", f.first.len(), f.second.len()));
    push(
        "lagrangian fibration",
        opt(expected.fibration.map(|(a, b)| format!("{}+{}", a, b))),
        opt(dims),
    );
    push("verdict summary", expected.summary.into(), r.summary.clone());
    Ok((analysis, checks))
}
