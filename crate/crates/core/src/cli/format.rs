//! The line-oriented category file.
//!
//! ```text
//! VERSION 1
//! FIELD prime 2
//!
//! OBJECTS
//! x1
//! x2
//!
//! MORPHISMS
//! id_x1: x1 -> x1
//! id_x2: x2 -> x2
//! alpha: x2 -> x1
//!
//! IDENTITIES
//! x1: id_x1
//! x2: id_x2
//!
//! COMP
//! g * f = h
//! ```
//!
//! `#` starts a comment. Identities may be left out of MORPHISMS (they are
//! added when IDENTITIES names them) and the unit-law entries of COMP are
//! always implied. Export writes every morphism in id order and only the COMP
//! entries where neither factor is an identity.

use std::fmt::Write as _;

use thiserror::Error;

use crate::exactla::Field;
use crate::fincat::{validate_category, FiniteCategory, RawCategory, ValidationError};

pub const FORMAT_VERSION: u32 = 1;

const SECTIONS: [&str; 4] = ["OBJECTS", "MORPHISMS", "IDENTITIES", "COMP"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("missing {0} line")]
    Missing(&'static str),
    #[error("invalid category: {}", join_errors(.0))]
    Invalid(Vec<ValidationError>),
}

fn join_errors(errors: &[ValidationError]) -> String {
    errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A parsed file before validation: the raw tables plus the header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCategoryFile {
    pub version: u32,
    pub field: Field,
    pub raw: RawCategory,
}

impl RawCategoryFile {
    pub fn validate(&self) -> Result<CategoryFile, Vec<ValidationError>> {
        let category = validate_category(&self.raw.clone().with_implied_identities())?;
        Ok(CategoryFile { version: self.version, field: self.field, category })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryFile {
    pub version: u32,
    pub field: Field,
    pub category: FiniteCategory,
}

impl CategoryFile {
    pub fn new(category: FiniteCategory, field: Field) -> Self {
        CategoryFile { version: FORMAT_VERSION, field, category }
    }

    pub fn export(&self) -> String {
        export_category(&self.category, self.field)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn name(line: usize, s: &str) -> Result<String, FormatError> {
    let t = s.trim();
    let reserved = |c: char| c.is_whitespace() || matches!(c, ':' | '*' | '=' | '#');
    if t.is_empty() || t.chars().any(reserved) || t.contains("->") {
        return Err(syntax(line, format!("bad name `{t}`")));
    }
    Ok(t.to_string())
}

fn split2<'a>(line: usize, s: &'a str, sep: &str, what: &str) -> Result<(&'a str, &'a str), FormatError> {
    s.split_once(sep).ok_or_else(|| syntax(line, format!("expected `{what}`")))
}

/// Parses the text without validating the category axioms.
pub fn parse_raw(text: &str) -> Result<RawCategoryFile, FormatError> {
    let mut version = None;
    let mut field = None;
    let mut section: Option<&str> = None;
    let mut seen: Vec<&str> = Vec::new();
    let mut raw = RawCategory::new();
    for (i, full) in text.lines().enumerate() {
        let ln = i + 1;
        let line = full.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        if head == "VERSION" {
            let v = words.next().and_then(|w| w.parse::<u32>().ok()).ok_or_else(|| syntax(ln, "VERSION needs a number"))?;
            if words.next().is_some() || version.is_some() {
                return Err(syntax(ln, "malformed or repeated VERSION"));
            }
            if v != FORMAT_VERSION {
                return Err(FormatError::Version(v));
            }
            version = Some(v);
            continue;
        }
        if head == "FIELD" {
            if field.is_some() {
                return Err(syntax(ln, "repeated FIELD"));
            }
            let spec = line["FIELD".len()..].trim();
            field = Some(spec.parse::<Field>().map_err(|e| syntax(ln, e.to_string()))?);
            continue;
        }
        if let Some(&s) = SECTIONS.iter().find(|&&s| s == line) {
            if seen.contains(&s) {
                return Err(syntax(ln, format!("repeated section {s}")));
            }
            seen.push(s);
            section = Some(s);
            continue;
        }
        match section {
            None => return Err(syntax(ln, format!("entry `{line}` outside any section"))),
            Some("OBJECTS") => raw = raw.object(&name(ln, line)?),
            Some("MORPHISMS") => {
                let (n, rest) = split2(ln, line, ":", "name: source -> target")?;
                let (s, t) = split2(ln, rest, "->", "name: source -> target")?;
                raw = raw.morphism(&name(ln, n)?, &name(ln, s)?, &name(ln, t)?);
            }
            Some("IDENTITIES") => {
                let (o, m) = split2(ln, line, ":", "object: morphism")?;
                raw = raw.identity(&name(ln, o)?, &name(ln, m)?);
            }
            Some(_) => {
                let (lhs, h) = split2(ln, line, "=", "g * f = h")?;
                let (g, f) = split2(ln, lhs, "*", "g * f = h")?;
                raw = raw.compose(&name(ln, g)?, &name(ln, f)?, &name(ln, h)?);
            }
        }
    }
    let version = version.ok_or(FormatError::Missing("VERSION"))?;
    let field = field.ok_or(FormatError::Missing("FIELD"))?;
    Ok(RawCategoryFile { version, field, raw })
}

pub fn parse_category_file(text: &str) -> Result<CategoryFile, FormatError> {
    parse_raw(text)?.validate().map_err(FormatError::Invalid)
}

fn field_spec(field: Field) -> String {
    match field {
        Field::Rationals => "rationals".into(),
        Field::Prime(p) => format!("prime {p}"),
    }
}

/// Canonical text; `parse_category_file(export_category(c, k))` gives back `c`.
pub fn export_category(cat: &FiniteCategory, field: Field) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "VERSION {FORMAT_VERSION}");
    let _ = writeln!(out, "FIELD {}", field_spec(field));
    out.push_str("\nOBJECTS\n");
    for x in cat.objects() {
        let _ = writeln!(out, "{}", cat.object_name(x));
    }
    out.push_str("\nMORPHISMS\n");
    for f in cat.morphisms() {
        let _ = writeln!(out, "{}: {} -> {}", cat.name(f), cat.object_name(cat.source(f)), cat.object_name(cat.target(f)));
    }
    out.push_str("\nIDENTITIES\n");
    for x in cat.objects() {
        let _ = writeln!(out, "{}: {}", cat.object_name(x), cat.name(cat.identity(x)));
    }
    out.push_str("\nCOMP\n");
    for (g, f, h) in non_identity_entries(cat) {
        let _ = writeln!(out, "{} * {} = {}", cat.name(g), cat.name(f), cat.name(h));
    }
    out
}

/// Composable pairs `(g, f)` with neither an identity, in id order.
pub fn non_identity_entries(cat: &FiniteCategory) -> Vec<(crate::fincat::MorId, crate::fincat::MorId, crate::fincat::MorId)> {
    let mut out = Vec::new();
    for g in cat.morphisms().filter(|&g| !cat.is_identity(g)) {
        for f in cat.morphisms().filter(|&f| !cat.is_identity(f)) {
            if let Some(h) = cat.compose(g, f) {
                out.push((g, f, h));
            }
        }
    }
    out
}
