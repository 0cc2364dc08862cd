//! End-to-end analysis of a group file.

use std::sync::Arc;

use crate::chartab::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::error::Result;
use crate::group::{FiniteGroup, DEFAULT_LIMIT};
use crate::groupfile::{parse_form, AnalyticChoice, GroupFile};
use crate::torusq::{analytic_rep, analyze, AnalyticRep, LatticeSpec, QuotientReport, SymplecticForm};

/// Overrides for the values stored in a group file.
#[derive(Clone, Debug)]
pub struct Options {
    pub analytic: Option<AnalyticChoice>,
    /// Body of a `form` block, sized by the analytic degree.
    pub form: Option<String>,
    pub lattice: Option<Cyclotomic>,
    pub limit: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            analytic: None,
            form: None,
            lattice: None,
            limit: DEFAULT_LIMIT,
        }
    }
}

pub struct Analysis {
    pub group: Arc<FiniteGroup>,
    pub table: CharacterTable,
    /// The analytic representation that was analyzed.
    pub rep: AnalyticRep,
    pub report: QuotientReport,
}

pub fn close_file(file: &GroupFile, limit: usize) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(FiniteGroup::close(&file.generators, limit)?))
}

/// Closes the group, computes its character table, builds the analytic
/// representation and analyzes it.
pub fn analyze_file(file: &GroupFile, opts: &Options) -> Result<Analysis> {
    let group = close_file(file, opts.limit)?;
    let table = CharacterTable::compute(&group)?;
    let choice = opts.analytic.unwrap_or(file.analytic);
    let (rep, resolved) = analytic_rep(&group, choice, &table)?;
    let matrix = match &opts.form {
        Some(text) => Some(parse_form(text, file.conductor, rep.degree())?),
        None => file.form.clone(),
    };
    let form = matrix.map(SymplecticForm::new).transpose()?;
    let lattice = match opts.lattice.as_ref().or(file.lattice.as_ref()) {
        Some(w) => Some(LatticeSpec::new(w.clone())?),
        None => None,
    };
    let mut report = analyze(&rep, form.as_ref(), lattice.as_ref(), &table)?;
    report.analytic = resolved.as_str().into();
    Ok(Analysis {
        group,
        table,
        rep,
        report,
    })
}
