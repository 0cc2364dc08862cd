use serde::Serialize;
use serde_json::Value;

use super::{
    classify_symplectic, eigenvalue_one_failures, h0_reflexive_1forms, h0_reflexive_2forms,
    homogeneous_decomplexification, invariant_form, is_primitive, lagrangian_fibration_data,
    preserves_form, preserves_lattice, AnalyticRep, Fibration, LatticeSpec, PairType, SymplecticClass,
    SymplecticForm,
};
use crate::chartab::{decompose, CharacterTable};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    /// `L` is the trivial representation of degree 2.
    #[serde(rename = "TWO_TORUS")]
    TwoTorus,
    /// Homogeneous decomplexification and nontrivial `L`: no free action, so
    /// no smooth quotient other than a torus.
    #[serde(rename = "TORUS_ONLY")]
    TorusOnly,
    /// Uni-symplectic of degree above 2: a smooth quotient is a 2-torus.
    #[serde(rename = "SMOOTH_IMPLIES_2TORUS")]
    SmoothImplies2Torus,
    #[serde(rename = "NO_OBSTRUCTION_RECORDED")]
    NoObstructionRecorded,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::TwoTorus => "TWO_TORUS",
            Verdict::TorusOnly => "TORUS_ONLY",
            Verdict::SmoothImplies2Torus => "SMOOTH_IMPLIES_2TORUS",
            Verdict::NoObstructionRecorded => "NO_OBSTRUCTION_RECORDED",
        }
    }
}

/// Every applicable verdict, strongest first. Never asserts that a smooth
/// quotient exists.
pub fn smoothness_verdict(
    h20: u64,
    class: SymplecticClass,
    homogeneous: bool,
    degree: usize,
    trivial: bool,
) -> Vec<Verdict> {
    let mut out = Vec::new();
    if class == SymplecticClass::ConjugatePair(PairType::Trivial) && degree == 2 {
        out.push(Verdict::TwoTorus);
    }
    if homogeneous && !trivial {
        out.push(Verdict::TorusOnly);
    }
    if h20 == 1 && class != SymplecticClass::NotUniSymplectic && degree > 2 {
        out.push(Verdict::SmoothImplies2Torus);
    }
    if out.is_empty() {
        out.push(Verdict::NoObstructionRecorded);
    }
    out
}

fn summary(verdicts: &[Verdict]) -> &'static str {
    if verdicts.contains(&Verdict::TwoTorus) {
        "two-torus"
    } else if verdicts.contains(&Verdict::TorusOnly) || verdicts.contains(&Verdict::SmoothImplies2Torus) {
        "singular-unless-torus"
    } else {
        "no-obstruction-recorded"
    }
}

impl Serialize for SymplecticClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constituent {
    /// 1-based row of the character table.
    pub character: usize,
    pub degree: u64,
    pub indicator: i8,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenvalueFailure {
    /// 1-based class index.
    pub class: usize,
    pub element_order: u64,
    pub class_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WedgeTerm {
    pub i: usize,
    pub j: usize,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormReport {
    /// `given` or `invariant` (found by averaging).
    pub source: &'static str,
    /// 1-based wedge terms `coefficient · dz_i ∧ dz_j`.
    pub wedges: Vec<WedgeTerm>,
    pub degenerate: bool,
    pub preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeReport {
    pub omega: String,
    pub preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientReport {
    pub group_order: usize,
    pub classes: usize,
    pub degree: usize,
    pub analytic: String,
    pub faithful: bool,
    pub h10: u64,
    pub h20: u64,
    pub symplectic_class: SymplecticClass,
    pub constituents: Vec<Constituent>,
    pub homogeneous_decomplexification: bool,
    pub eigenvalue_one_all: bool,
    pub eigenvalue_one_failures: Vec<EigenvalueFailure>,
    pub primitive: bool,
    pub verdict: Verdict,
    pub verdicts: Vec<Verdict>,
    pub summary: String,
    pub form: Option<FormReport>,
    pub lattice: Option<LatticeReport>,
    pub fibration: Option<Fibration>,
}

fn describe_form(form: &SymplecticForm, source: &'static str, preserved: bool) -> FormReport {
    FormReport {
        source,
        wedges: form
            .wedge_terms()
            .into_iter()
            .map(|(i, j, c)| WedgeTerm {
                i: i + 1,
                j: j + 1,
                coefficient: c.to_syntax(),
            })
            .collect(),
        degenerate: form.is_degenerate(),
        preserved,
    }
}

/// Runs every invariant computation on `rep`. A given `form` is checked for
/// invariance; without one the averaged invariant form is reported. The
/// fibration uses the given form when it is invariant and nondegenerate,
/// otherwise the averaged one.
pub fn analyze(
    rep: &AnalyticRep,
    form: Option<&SymplecticForm>,
    lattice: Option<&LatticeSpec>,
    table: &CharacterTable,
) -> Result<QuotientReport> {
    let group = rep.group();
    let h10 = h0_reflexive_1forms(rep)?;
    let h20 = h0_reflexive_2forms(rep)?;
    let class = classify_symplectic(rep, table)?;
    let homogeneous = homogeneous_decomplexification(rep, table)?;
    let mults = decompose(rep.character(), table)?;
    let indicators = table.indicators();
    let degrees = table.degrees();
    let constituents = mults
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| Constituent {
            character: i + 1,
            degree: degrees[i],
            indicator: indicators[i],
            multiplicity: m,
        })
        .collect();
    let failures: Vec<EigenvalueFailure> = eigenvalue_one_failures(rep)
        .into_iter()
        .map(|c| EigenvalueFailure {
            class: c + 1,
            element_order: group.class_order(c),
            class_size: group.class_size(c),
        })
        .collect();

    let mut fibration_form = None;
    let given = match form {
        Some(f) => {
            let preserved = preserves_form(rep, f)?;
            if preserved && !f.is_degenerate() {
                fibration_form = Some(f.clone());
            }
            Some(describe_form(f, "given", preserved))
        }
        None => None,
    };
    let averaged = if fibration_form.is_none() || form.is_none() {
        invariant_form(rep)
    } else {
        None
    };
    let form_report = given.or_else(|| averaged.as_ref().map(|f| describe_form(f, "invariant", true)));
    if fibration_form.is_none() {
        fibration_form = averaged.filter(|f| !f.is_degenerate());
    }
    let fibration = match &fibration_form {
        Some(f) => lagrangian_fibration_data(rep, f, table)?,
        None => None,
    };

    let verdicts = smoothness_verdict(h20, class, homogeneous, rep.degree(), rep.is_trivial());
    Ok(QuotientReport {
        group_order: group.order(),
        classes: group.num_classes(),
        degree: rep.degree(),
        analytic: "given".into(),
        faithful: rep.is_faithful(),
        h10,
        h20,
        symplectic_class: class,
        constituents,
        homogeneous_decomplexification: homogeneous,
        eigenvalue_one_all: failures.is_empty(),
        eigenvalue_one_failures: failures,
        primitive: is_primitive(group),
        verdict: verdicts[0],
        summary: summary(&verdicts).into(),
        verdicts,
        form: form_report,
        lattice: lattice.map(|l| LatticeReport {
            omega: l.omega().to_syntax(),
            preserved: preserves_lattice(rep, l),
        }),
        fibration,
    })
}

impl QuotientReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `key: value` lines rendered from the same value tree as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&self.to_json(), 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{}{}: {}\n", pad, k, s)),
                    None => {
                        out.push_str(&format!("{}{}:\n", pad, k));
                        render(item, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{}- {}\n", pad, s)),
                    None => {
                        out.push_str(&format!("{}-\n", pad));
                        render(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{}{}\n", pad, scalar(other).unwrap_or_default())),
    }
}
