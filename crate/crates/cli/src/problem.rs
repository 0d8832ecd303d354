//! The problem-file format.
//!
//! ```text
//! # power series example
//! mode: adic
//! setting: commutative
//! vars: x > y > z
//! truncation: 8
//! generators:
//!   z - y
//!   z - x
//! generators T2:
//!   y - x
//! series:
//!   S = val
//!   P = 2*x1 + 1/2
//! params:
//!   vector = z
//! ```
//!
//! A header is `name:` or `name label:` at the start of a line, optionally
//! followed by a value on the same line. Lines after a header that are not
//! themselves headers belong to it. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use redop::parse::parse_series;
use redop::{Mode, MonomialContext, QSeries, Setting};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ProblemError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

/// A piece of source text with its 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Located {
    pub fn error(&self, offset: usize, message: impl Into<String>) -> ProblemError {
        ProblemError { line: self.line, column: self.column + offset, message: message.into() }
    }

    /// Parses the text as a polynomial in `ctx`, mapping errors to file
    /// positions.
    pub fn series(&self, ctx: &Arc<MonomialContext>) -> Result<QSeries, ProblemError> {
        parse_series(ctx, &self.text).map_err(|e| match e {
            redop::Error::Parse { column, message } => self.error(column - 1, message),
            e => self.error(0, e.to_string()),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesDef {
    /// The binary value series.
    Val,
    Poly(QSeries),
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub ctx: Arc<MonomialContext>,
    pub truncation: Option<u32>,
    /// Generator lists in file order; the unnamed list is called `R`.
    pub lists: Vec<(String, Vec<QSeries>)>,
    pub series: Vec<(String, SeriesDef)>,
    pub params: BTreeMap<String, Located>,
}

impl Problem {
    pub fn list(&self, name: &str) -> Option<&[QSeries]> {
        self.lists.iter().find(|(n, _)| n == name).map(|(_, l)| l.as_slice())
    }

    /// The default list `R` (empty when absent).
    pub fn generators(&self) -> &[QSeries] {
        self.list(DEFAULT_LIST).unwrap_or(&[])
    }

    pub fn series_def(&self, name: &str) -> Option<&SeriesDef> {
        self.series.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn param(&self, key: &str) -> Option<&Located> {
        self.params.get(key)
    }
}

pub const DEFAULT_LIST: &str = "R";

struct Section {
    name: Located,
    label: Option<String>,
    inline: Option<Located>,
    body: Vec<Located>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// `name:` or `name label:` at the start of a line.
fn header(line: &str) -> Option<(String, Option<String>, usize)> {
    if line.starts_with(char::is_whitespace) {
        return None;
    }
    let colon = line.find(':')?;
    let head = &line[..colon];
    let mut words = head.split_whitespace();
    let name = words.next()?;
    let label = words.next();
    if words.next().is_some() || !name.chars().all(|c| c.is_ascii_lowercase()) {
        return None;
    }
    if label.is_some_and(|l| !l.chars().all(|c| c.is_alphanumeric() || c == '_')) {
        return None;
    }
    Some((name.to_string(), label.map(str::to_string), colon + 1))
}

fn located(text: &str, line: usize, start: usize) -> Option<Located> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    let trimmed = trimmed.trim_end();
    (!trimmed.is_empty()).then(|| Located {
        text: trimmed.to_string(),
        line,
        column: text[..lead].chars().count() + start + 1,
    })
}

fn split_sections(text: &str) -> Result<Vec<Section>, ProblemError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if let Some((name, label, after)) = header(line) {
            sections.push(Section {
                name: Located { text: name, line: line_no, column: 1 },
                label,
                inline: located(&line[after..], line_no, line[..after].chars().count()),
                body: Vec::new(),
            });
        } else {
            let item = located(line, line_no, 0).expect("nonblank line");
            match sections.last_mut() {
                Some(s) => s.body.push(item),
                None => return Err(item.error(0, "content before the first section header")),
            }
        }
    }
    Ok(sections)
}

fn single(s: &Section) -> Result<&Located, ProblemError> {
    match (&s.inline, s.body.as_slice()) {
        (Some(v), []) => Ok(v),
        (None, [v]) => Ok(v),
        _ => Err(s.name.error(0, format!("section `{}` takes exactly one value", s.name.text))),
    }
}

fn entries(s: &Section) -> impl Iterator<Item = &Located> {
    s.inline.iter().chain(&s.body)
}

/// Splits `key = value`, keeping the position of the value.
fn key_value(item: &Located) -> Result<(String, Located), ProblemError> {
    let Some(eq) = item.text.find('=') else {
        return Err(item.error(0, "expected `name = value`"));
    };
    let key = item.text[..eq].trim();
    if key.is_empty() || !key.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-') {
        return Err(item.error(0, format!("invalid name `{key}`")));
    }
    let value = located(&item.text[eq + 1..], item.line, item.column - 1 + item.text[..eq + 1].chars().count())
        .ok_or_else(|| item.error(eq + 1, "missing value"))?;
    Ok((key.to_string(), value))
}

pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let sections = split_sections(text)?;
    let find = |name: &str| sections.iter().find(|s| s.name.text == name);
    for s in &sections {
        let known = ["mode", "setting", "vars", "truncation", "generators", "series", "params"];
        if !known.contains(&s.name.text.as_str()) {
            return Err(s.name.error(0, format!("unknown section `{}`", s.name.text)));
        }
        if s.label.is_some() && s.name.text != "generators" {
            return Err(s.name.error(0, format!("section `{}` takes no label", s.name.text)));
        }
    }
    let missing = |name: &str| ProblemError { line: 1, column: 1, message: format!("missing section `{name}`") };

    let mode_item = single(find("mode").ok_or_else(|| missing("mode"))?)?;
    let mode = match mode_item.text.as_str() {
        "adic" => Mode::Adic,
        "discrete" => Mode::Discrete,
        other => return Err(mode_item.error(0, format!("unknown mode `{other}` (expected adic or discrete)"))),
    };
    let setting = match find("setting") {
        None => Setting::Commutative,
        Some(s) => {
            let item = single(s)?;
            match item.text.as_str() {
                "commutative" => Setting::Commutative,
                "noncommutative" => Setting::Noncommutative,
                other => return Err(item.error(0, format!("unknown setting `{other}`"))),
            }
        }
    };
    let vars_item = single(find("vars").ok_or_else(|| missing("vars"))?)?;
    let vars: Vec<String> = vars_item.text.split('>').map(|v| v.trim().to_string()).collect();
    if let Some(bad) = vars.iter().find(|v| v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_')) {
        return Err(vars_item.error(0, format!("invalid variable name `{bad}`")));
    }
    let ctx = MonomialContext::new(setting, vars, mode).map_err(|e| vars_item.error(0, e.to_string()))?;
    let ctx = Arc::new(ctx);

    let truncation = match find("truncation") {
        None => None,
        Some(s) => {
            let item = single(s)?;
            Some(item.text.parse::<u32>().map_err(|_| item.error(0, "truncation must be a natural number"))?)
        }
    };

    let mut lists: Vec<(String, Vec<QSeries>)> = Vec::new();
    for s in sections.iter().filter(|s| s.name.text == "generators") {
        let name = s.label.clone().unwrap_or_else(|| DEFAULT_LIST.to_string());
        if lists.iter().any(|(n, _)| *n == name) {
            return Err(s.name.error(0, format!("generator list `{name}` declared twice")));
        }
        let gens = entries(s).map(|item| item.series(&ctx)).collect::<Result<Vec<_>, _>>()?;
        lists.push((name, gens));
    }

    let mut series = Vec::new();
    for s in sections.iter().filter(|s| s.name.text == "series") {
        for item in entries(s) {
            let (name, value) = key_value(item)?;
            let def = if value.text == "val" { SeriesDef::Val } else { SeriesDef::Poly(value.series(&ctx)?) };
            series.push((name, def));
        }
    }

    let mut params = BTreeMap::new();
    for s in sections.iter().filter(|s| s.name.text == "params") {
        for item in entries(s) {
            let (key, value) = key_value(item)?;
            params.insert(key, value);
        }
    }

    Ok(Problem { ctx, truncation, lists, series, params })
}
