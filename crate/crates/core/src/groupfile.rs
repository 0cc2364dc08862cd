//! Plain-text group files.
//!
//! ```text
//! # comment
//! conductor 3
//! degree 3
//! generator monomial
//!   perm: 2 3 1
//!   scalars: 1, z^1, -1
//! end
//! generator perm 2 1 3
//! generator dense
//!   row: 0, 1, 0
//!   row: 1, 0, 0
//!   row: 0, 0, -1
//! end
//! form 6
//!   wedge: 1 4
//!   wedge: 2 5 1/2
//! end
//! lattice z^1
//! analytic conjugate-sum
//! ```
//!
//! Permutations are 1-based image lists. Scalars and matrix entries use the
//! cyclotomic syntax with `z` the primitive `conductor`-th root of unity.
//! A `form [size]` block holds either `row:` lines or `wedge: i j [coef]`
//! terms (`coef·(e_i e_jᵀ − e_j e_iᵀ)`); its size defaults to the degree and
//! is twice the degree when the analytic representation is `ρ ⊕ ρ̄`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::cyclo::{parse_cyclotomic, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::Matrix;

/// Largest accepted `conductor`.
pub const MAX_CONDUCTOR: u32 = 4096;
/// Largest accepted `degree`.
pub const MAX_DEGREE: usize = 1024;

/// Which analytic representation to build from the generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AnalyticChoice {
    /// Quaternionic irreducible or reducible: the generators as given;
    /// other irreducibles: `ρ ⊕ ρ̄`.
    #[default]
    Auto,
    Natural,
    ConjugateSum,
}

impl AnalyticChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            AnalyticChoice::Auto => "auto",
            AnalyticChoice::Natural => "natural",
            AnalyticChoice::ConjugateSum => "conjugate-sum",
        }
    }
}

impl FromStr for AnalyticChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(AnalyticChoice::Auto),
            "natural" => Ok(AnalyticChoice::Natural),
            "conjugate-sum" => Ok(AnalyticChoice::ConjugateSum),
            other => Err(format!(
                "unknown analytic representation `{}` (expected auto, natural or conjugate-sum)",
                other
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupFile {
    pub conductor: u32,
    pub degree: usize,
    pub generators: Vec<GroupElement>,
    pub form: Option<Matrix>,
    pub lattice: Option<Cyclotomic>,
    pub analytic: AnalyticChoice,
}

impl GroupFile {
    pub fn new(conductor: u32, degree: usize, generators: Vec<GroupElement>) -> Self {
        GroupFile {
            conductor,
            degree,
            generators,
            form: None,
            lattice: None,
            analytic: AnalyticChoice::Auto,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).parse()
    }

    /// Smallest conductor over which every entry can be written, a multiple
    /// of the declared one.
    fn effective_conductor(&self) -> u32 {
        let mut m = self.conductor.max(1);
        let mut absorb = |c: &Cyclotomic| m = lcm(m, c.conductor());
        for g in &self.generators {
            match g {
                GroupElement::Monomial { scalars, .. } => scalars.iter().for_each(&mut absorb),
                GroupElement::Dense(mat) => mat.entries().iter().for_each(&mut absorb),
                GroupElement::Perm(_) => {}
            }
        }
        if let Some(f) = &self.form {
            f.entries().iter().for_each(&mut absorb);
        }
        if let Some(l) = &self.lattice {
            absorb(l);
        }
        m
    }

    pub fn to_text(&self) -> String {
        let n = self.effective_conductor();
        let fmt_list = |vals: &[Cyclotomic]| -> String {
            vals.iter().map(|v| v.to_syntax_at(n)).collect::<Vec<_>>().join(", ")
        };
        let fmt_perm = |perm: &[usize]| -> String {
            perm.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" ")
        };
        let mut out = String::new();
        let _ = writeln!(out, "conductor {}", n);
        let _ = writeln!(out, "degree {}", self.degree);
        for g in &self.generators {
            match g {
                GroupElement::Perm(perm) => {
                    let _ = writeln!(out, "generator perm {}", fmt_perm(perm));
                }
                GroupElement::Monomial { perm, scalars } => {
                    let _ = writeln!(out, "generator monomial");
                    let _ = writeln!(out, "  perm: {}", fmt_perm(perm));
                    let _ = writeln!(out, "  scalars: {}", fmt_list(scalars));
                    let _ = writeln!(out, "end");
                }
                GroupElement::Dense(m) => {
                    let _ = writeln!(out, "generator dense");
                    for i in 0..m.rows() {
                        let _ = writeln!(out, "  row: {}", fmt_list(m.row(i)));
                    }
                    let _ = writeln!(out, "end");
                }
            }
        }
        if let Some(f) = &self.form {
            if f.rows() == self.degree {
                let _ = writeln!(out, "form");
            } else {
                let _ = writeln!(out, "form {}", f.rows());
            }
            for i in 0..f.rows() {
                let _ = writeln!(out, "  row: {}", fmt_list(f.row(i)));
            }
            let _ = writeln!(out, "end");
        }
        if let Some(l) = &self.lattice {
            let _ = writeln!(out, "lattice {}", l.to_syntax_at(n));
        }
        if self.analytic != AnalyticChoice::Auto {
            let _ = writeln!(out, "analytic {}", self.analytic.as_str());
        }
        out
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Parses a form given as rows or wedge terms, for `--form` files holding only
/// the body of a `form` block.
pub fn parse_form(text: &str, conductor: u32, degree: usize) -> Result<Matrix> {
    let mut p = Parser::new(text);
    p.conductor = Some(conductor);
    p.form_body(None, degree)
}

struct Line<'a> {
    number: usize,
    /// Characters before `text` on the raw line.
    indent: usize,
    text: &'a str,
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    conductor: Option<u32>,
    degree: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("");
                let trimmed = body.trim_start();
                let indent = body[..body.len() - trimmed.len()].chars().count();
                let trimmed = trimmed.trim_end();
                (!trimmed.is_empty()).then_some(Line {
                    number: i + 1,
                    indent,
                    text: trimmed,
                })
            })
            .collect();
        Parser {
            lines,
            pos: 0,
            conductor: None,
            degree: None,
        }
    }

    fn err(&self, line: &Line, offset_chars: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: line.number,
            column: line.indent + offset_chars + 1,
            message: message.into(),
        }
    }

    fn err_at_end(&self, message: impl Into<String>) -> Error {
        let line = self.lines.last().map_or(1, |l| l.number);
        Error::Parse {
            line,
            column: 1,
            message: message.into(),
        }
    }

    fn parse(mut self) -> Result<GroupFile> {
        let mut generators = Vec::new();
        let mut form = None;
        let mut lattice = None;
        let mut analytic = AnalyticChoice::Auto;
        while self.pos < self.lines.len() {
            let line = &self.lines[self.pos];
            let (key, rest, rest_off) = split_key(line.text);
            match key {
                "conductor" => {
                    if !generators.is_empty() || self.conductor.is_some() {
                        return Err(self.err(line, 0, "`conductor` must appear once, before generators"));
                    }
                    let n: u32 = rest
                        .parse()
                        .ok()
                        .filter(|&n| (1..=MAX_CONDUCTOR).contains(&n))
                        .ok_or_else(|| {
                            self.err(line, rest_off, format!("conductor must be an integer in 1..={}", MAX_CONDUCTOR))
                        })?;
                    self.conductor = Some(n);
                    self.pos += 1;
                }
                "degree" => {
                    if !generators.is_empty() || self.degree.is_some() {
                        return Err(self.err(line, 0, "`degree` must appear once, before generators"));
                    }
                    let d: usize = rest
                        .parse()
                        .ok()
                        .filter(|&d| (1..=MAX_DEGREE).contains(&d))
                        .ok_or_else(|| {
                            self.err(line, rest_off, format!("degree must be an integer in 1..={}", MAX_DEGREE))
                        })?;
                    self.degree = Some(d);
                    self.pos += 1;
                }
                "generator" => {
                    let g = self.generator()?;
                    generators.push(g);
                }
                "form" => {
                    if form.is_some() {
                        return Err(self.err(line, 0, "duplicate form block"));
                    }
                    let degree = self.header(line)?.1;
                    let size = if rest.is_empty() {
                        degree
                    } else {
                        rest.parse::<usize>()
                            .ok()
                            .filter(|&n| n == degree || n == 2 * degree)
                            .ok_or_else(|| {
                                self.err(line, rest_off, format!("form size must be {} or {}", degree, 2 * degree))
                            })?
                    };
                    let start = self.pos;
                    self.pos += 1;
                    form = Some(self.form_body(Some(start), size)?);
                }
                "lattice" => {
                    if lattice.is_some() {
                        return Err(self.err(line, 0, "duplicate lattice line"));
                    }
                    lattice = Some(self.value(line, rest, rest_off)?);
                    self.pos += 1;
                }
                "analytic" => {
                    analytic = rest.parse().map_err(|e: String| self.err(line, rest_off, e))?;
                    self.pos += 1;
                }
                _ => return Err(self.err(line, 0, format!("unknown directive `{}`", key))),
            }
        }
        let degree = self.degree.ok_or_else(|| self.err_at_end("missing `degree`"))?;
        if generators.is_empty() {
            return Err(self.err_at_end("no generators"));
        }
        Ok(GroupFile {
            conductor: self.conductor.unwrap_or(1),
            degree,
            generators,
            form,
            lattice,
            analytic,
        })
    }

    fn header(&self, line: &Line) -> Result<(u32, usize)> {
        let degree = self
            .degree
            .ok_or_else(|| self.err(line, 0, "`degree` must be declared before this block"))?;
        Ok((self.conductor.unwrap_or(1), degree))
    }

    fn value(&self, line: &Line, text: &str, off: usize) -> Result<Cyclotomic> {
        let n = self.conductor.unwrap_or(1);
        parse_cyclotomic(text, n).map_err(|e| self.err(line, off + text[..e.offset.min(text.len())].chars().count(), e.message))
    }

    /// Comma-separated values, with the character offset of each.
    fn values(&self, line: &Line, text: &str, off: usize) -> Result<Vec<Cyclotomic>> {
        let mut out = Vec::new();
        let mut start = 0;
        for piece in text.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let item = piece.trim();
            let col = off + text[..start + lead].chars().count();
            if item.is_empty() {
                return Err(self.err(line, col, "empty entry"));
            }
            out.push(self.value(line, item, col)?);
            start += piece.len() + 1;
        }
        Ok(out)
    }

    fn perm(&self, line: &Line, text: &str, off: usize, degree: usize) -> Result<Vec<usize>> {
        let mut perm = Vec::new();
        let mut seen = vec![false; degree];
        let separator = |c: char| c.is_whitespace() || c == ',';
        let mut rest = text;
        while let Some(begin) = rest.find(|c: char| !separator(c)) {
            let tail = &rest[begin..];
            let tok = &tail[..tail.find(separator).unwrap_or(tail.len())];
            let col = off + text[..text.len() - tail.len()].chars().count();
            rest = &tail[tok.len()..];
            let v: usize = tok
                .parse()
                .map_err(|_| self.err(line, col, format!("`{}` is not a point index", tok)))?;
            if v == 0 || v > degree {
                return Err(self.err(line, col, format!("point {} outside 1..{}", v, degree)));
            }
            if seen[v - 1] {
                return Err(self.err(line, col, format!("point {} repeated", v)));
            }
            seen[v - 1] = true;
            perm.push(v - 1);
        }
        if perm.len() != degree {
            return Err(self.err(line, off, format!("{} images for degree {}", perm.len(), degree)));
        }
        Ok(perm)
    }

    fn expect_field<'b>(&self, line: &'b Line, name: &str) -> Result<(&'b str, usize)> {
        let (key, rest, off) = split_key(line.text);
        if key.strip_suffix(':') == Some(name) {
            Ok((rest, off))
        } else {
            Err(self.err(line, 0, format!("expected `{}:`", name)))
        }
    }

    fn next_line(&mut self, start: usize, what: &str) -> Result<usize> {
        if self.pos >= self.lines.len() {
            let l = &self.lines[start];
            return Err(self.err(l, 0, format!("unterminated {} block", what)));
        }
        let i = self.pos;
        self.pos += 1;
        Ok(i)
    }

    fn generator(&mut self) -> Result<GroupElement> {
        let start = self.pos;
        let line = &self.lines[start];
        let (_, rest, rest_off) = split_key(line.text);
        let (kind, args, args_off) = split_key(rest);
        let (_, degree) = self.header(line)?;
        self.pos += 1;
        let element = match kind {
            "perm" => GroupElement::Perm(self.perm(line, args, rest_off + args_off, degree)?),
            "monomial" | "dense" if !args.is_empty() => {
                return Err(self.err(line, rest_off + args_off, "unexpected text after generator kind"));
            }
            "monomial" => {
                let i = self.next_line(start, "generator")?;
                let l = &self.lines[i];
                let (text, off) = self.expect_field(l, "perm")?;
                let perm = self.perm(l, text, off, degree)?;
                let i = self.next_line(start, "generator")?;
                let l = &self.lines[i];
                let (text, off) = self.expect_field(l, "scalars")?;
                let scalars = self.values(l, text, off)?;
                if scalars.len() != degree {
                    return Err(self.err(l, off, format!("{} scalars for degree {}", scalars.len(), degree)));
                }
                if let Some(k) = scalars.iter().position(Cyclotomic::is_zero) {
                    return Err(self.err(l, off, format!("scalar {} is zero", k + 1)));
                }
                self.end(start, "generator")?;
                GroupElement::Monomial { perm, scalars }
            }
            "dense" => {
                let rows = self.rows(start, degree, "generator")?;
                let m = Matrix::from_rows(rows).expect("rows have equal length");
                GroupElement::Dense(m)
            }
            "" => return Err(self.err(line, rest_off, "missing generator kind (perm, monomial or dense)")),
            other => {
                return Err(self.err(line, rest_off, format!("unknown generator kind `{}`", other)));
            }
        };
        element
            .validate()
            .map_err(|e| self.err(&self.lines[start], 0, e.to_string()))?;
        Ok(element)
    }

    fn end(&mut self, start: usize, what: &str) -> Result<()> {
        let i = self.next_line(start, what)?;
        let l = &self.lines[i];
        if l.text == "end" {
            Ok(())
        } else {
            Err(self.err(l, 0, "expected `end`"))
        }
    }

    /// `row:` lines up to `end`; exactly `degree` rows of `degree` entries.
    fn rows(&mut self, start: usize, degree: usize, what: &str) -> Result<Vec<Vec<Cyclotomic>>> {
        let mut rows = Vec::new();
        loop {
            let i = self.next_line(start, what)?;
            let l = &self.lines[i];
            if l.text == "end" {
                break;
            }
            let (text, off) = self.expect_field(l, "row")?;
            let row = self.values(l, text, off)?;
            if row.len() != degree {
                return Err(self.err(l, off, format!("{} entries for degree {}", row.len(), degree)));
            }
            if rows.len() == degree {
                return Err(self.err(l, 0, format!("more than {} rows", degree)));
            }
            rows.push(row);
        }
        if rows.len() != degree {
            let l = &self.lines[self.pos - 1];
            return Err(self.err(l, 0, format!("{} rows for degree {}", rows.len(), degree)));
        }
        Ok(rows)
    }

    /// Body of a form block. With `start` set the block must end in `end`;
    /// otherwise it runs to the end of the input.
    fn form_body(&mut self, start: Option<usize>, degree: usize) -> Result<Matrix> {
        let first = self.lines.get(self.pos).map(|l| split_key(l.text).0);
        if first == Some("row:") {
            if let Some(s) = start {
                let rows = self.rows(s, degree, "form")?;
                return Ok(Matrix::from_rows(rows).expect("rows have equal length"));
            }
            let mut rows = Vec::new();
            while self.pos < self.lines.len() {
                let l = &self.lines[self.pos];
                let (text, off) = self.expect_field(l, "row")?;
                let row = self.values(l, text, off)?;
                if row.len() != degree {
                    return Err(self.err(l, off, format!("{} entries for degree {}", row.len(), degree)));
                }
                rows.push(row);
                self.pos += 1;
            }
            if rows.len() != degree {
                return Err(self.err_at_end(format!("{} rows for degree {}", rows.len(), degree)));
            }
            return Ok(Matrix::from_rows(rows).expect("rows have equal length"));
        }
        let mut m = Matrix::zeros(degree, degree);
        loop {
            if self.pos >= self.lines.len() {
                return match start {
                    Some(s) => Err(self.err(&self.lines[s], 0, "unterminated form block")),
                    None => Ok(m),
                };
            }
            let l = &self.lines[self.pos];
            self.pos += 1;
            if l.text == "end" && start.is_some() {
                return Ok(m);
            }
            let (text, off) = self.expect_field(l, "wedge")?;
            let mut parts = text.splitn(3, char::is_whitespace);
            let mut idx = 0;
            let mut point = |tok: Option<&str>| -> Result<usize> {
                let tok = tok.unwrap_or("");
                let col = off + idx;
                idx += tok.len() + 1;
                tok.parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1 && v <= degree)
                    .map(|v| v - 1)
                    .ok_or_else(|| self.err(l, col, format!("expected a point in 1..{}", degree)))
            };
            let i = point(parts.next())?;
            let j = point(parts.next())?;
            if i == j {
                return Err(self.err(l, off, "wedge of a coordinate with itself"));
            }
            let coef = match parts.next().map(str::trim) {
                Some(c) if !c.is_empty() => self.value(l, c, off + idx)?,
                _ => Cyclotomic::one(),
            };
            *m.entry_mut(i, j) += &coef;
            *m.entry_mut(j, i) -= &coef;
        }
    }
}

/// Splits `text` at the first whitespace; returns the key, the trimmed rest,
/// and the character offset of the rest.
fn split_key(text: &str) -> (&str, &str, usize) {
    match text.find(char::is_whitespace) {
        Some(i) => {
            let rest = &text[i..];
            let lead = rest.len() - rest.trim_start().len();
            (&text[..i], rest.trim(), text[..i + lead].chars().count())
        }
        None => (text, "", text.chars().count()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample
conductor 3
degree 3
generator monomial
  perm: 2 3 1
  scalars: 1, z^1, -1
end
generator perm 2 1 3
generator dense
  row: 0, 1, 0
  row: 1, 0, 0
  row: 0, 0, -1*z^2
end
form
  wedge: 1 2
  wedge: 2 3 1/2
end
lattice z
analytic conjugate-sum
";

    #[test]
    fn parses_every_block() {
        let f = GroupFile::parse(SAMPLE).unwrap();
        assert_eq!(f.conductor, 3);
        assert_eq!(f.degree, 3);
        assert_eq!(f.generators.len(), 3);
        match &f.generators[0] {
            GroupElement::Monomial { perm, scalars } => {
                assert_eq!(perm, &vec![1, 2, 0]);
                assert_eq!(scalars[1], Cyclotomic::root_of_unity(3, 1));
            }
            other => panic!("unexpected {:?}", other),
        }
        assert_eq!(f.generators[1], GroupElement::Perm(vec![1, 0, 2]));
        let form = f.form.as_ref().unwrap();
        assert!(form.is_antisymmetric());
        assert_eq!(form.get(0, 1), &Cyclotomic::one());
        assert_eq!(form.get(2, 1), &Cyclotomic::from_rational(crate::cyclo::rat(-1, 2)));
        assert_eq!(f.lattice, Some(Cyclotomic::root_of_unity(3, 1)));
        assert_eq!(f.analytic, AnalyticChoice::ConjugateSum);
    }

    #[test]
    fn round_trip() {
        let f = GroupFile::parse(SAMPLE).unwrap();
        let again = GroupFile::parse(&f.to_text()).unwrap();
        assert_eq!(f, again);
    }

    fn parse_err(text: &str) -> (usize, usize, String) {
        match GroupFile::parse(text) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn positioned_errors() {
        let (line, col, _) = parse_err("degree 2\ngenerator monomial\n  perm: 2 1\n  scalars: 1, z^\nend\n");
        assert_eq!((line, col), (4, 17));
        let (line, col, msg) = parse_err("degree 2\ngenerator perm 2 2\n");
        assert_eq!((line, col), (2, 18));
        assert!(msg.contains("repeated"));
        let (line, _, msg) = parse_err("degree 2\ngenerator dense\n  row: 1, 0\nend\n");
        assert_eq!(line, 4);
        assert!(msg.contains("1 rows"));
        let (line, _, msg) = parse_err("generator perm 1\n");
        assert_eq!(line, 1);
        assert!(msg.contains("degree"));
        let (_, _, msg) = parse_err("degree 2\n");
        assert!(msg.contains("no generators"));
        let (line, col, _) = parse_err("degree 2\nbogus\n");
        assert_eq!((line, col), (2, 1));
    }

    #[test]
    fn singular_dense_generator_is_rejected() {
        let (line, _, msg) = parse_err("degree 2\ngenerator dense\n  row: 1, 1\n  row: 1, 1\nend\n");
        assert_eq!(line, 2);
        assert!(msg.contains("singular"));
    }

    #[test]
    fn sized_form_block() {
        let f = GroupFile::parse("degree 1\ngenerator perm 1\nform 2\n  wedge: 1 2\nend\n").unwrap();
        assert_eq!(f.form.as_ref().unwrap().rows(), 2);
        assert_eq!(GroupFile::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn unicode_separators() {
        let f = GroupFile::parse("degree 3\ngenerator perm 2\u{a0}1 3\n").unwrap();
        assert_eq!(f.generators[0], GroupElement::Perm(vec![1, 0, 2]));
        let (_, col, _) = parse_err("degree 3\ngenerator perm 2\u{a0}\u{a0}x 3\n");
        assert_eq!(col, 19);
    }

    #[test]
    fn size_limits() {
        let (line, col, msg) = parse_err("degree 2
generator perm 2 1
form 99999999
end
");
        assert_eq!((line, col), (3, 6));
        assert!(msg.contains("2 or 4"), "{}", msg);
        let (line, _, _) = parse_err("conductor 4000000000
degree 1
generator perm 1
");
        assert_eq!(line, 1);
        let (line, _, _) = parse_err("degree 100000
generator perm 1
");
        assert_eq!(line, 1);
    }

    #[test]
    fn bare_form_body() {
        let m = parse_form("wedge: 1 3\nwedge: 2 4\n", 1, 4).unwrap();
        assert_eq!(m.get(0, 2), &Cyclotomic::one());
        assert_eq!(m.get(3, 1), &Cyclotomic::from_integer(-1));
        let rows = parse_form("row: 0, 1\nrow: -1, 0\n", 1, 2).unwrap();
        assert!(rows.is_antisymmetric());
    }
}
