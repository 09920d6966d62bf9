//! Line-oriented problem files.
//!
//! ```text
//! ring: x, y, z
//! field: complex        # or: real
//! f: x^2+y^2+z^2; x*y
//! X: z*(x-y)*x; z*(x-y)*y; z*(x-y)*z
//! C: [2*z*(x-y), 0; 0, 2*z*(x-y)]
//! ```
//!
//! A map file for the classical indices uses `g:` instead of `f`, `X`, `C`.

use gsv_core::index::{FieldTag, IndexError, Problem};
use gsv_core::poly::{parse_poly, PolyError, PolyMatrix, Polynomial};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("shape error: {0}")]
    Shape(String),
}

/// A square map germ `g: (kⁿ, 0) → (kⁿ, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapProblem {
    pub vars: Vec<String>,
    pub g: Vec<Polynomial>,
    pub field: FieldTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Curve(Problem),
    Map(MapProblem),
}

/// A value together with where it starts in the file (1-based).
#[derive(Debug, Clone)]
struct Located<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Located<'a> {
    fn error(&self, offset: usize, message: impl Into<String>) -> FormatError {
        FormatError::Syntax { line: self.line, column: self.column + offset, message: message.into() }
    }

    /// Splits on `sep`, trimming each piece and keeping its position.
    fn split(&self, sep: char) -> Vec<Located<'a>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, ch) in self.text.char_indices().chain(std::iter::once((self.text.len(), sep))) {
            if ch == sep {
                out.push(self.slice(start, i));
                start = i + ch.len_utf8();
            }
        }
        out
    }

    fn slice(&self, start: usize, end: usize) -> Located<'a> {
        let raw: &'a str = &self.text[start..end];
        let lead = raw.len() - raw.trim_start().len();
        Located { text: raw.trim(), line: self.line, column: self.column + start + lead }
    }
}

fn parse_entry(v: &Located<'_>, vars: &[String]) -> Result<Polynomial, FormatError> {
    if v.text.is_empty() {
        return Err(v.error(0, "expected a polynomial"));
    }
    parse_poly(v.text, vars).map_err(|e| match e {
        PolyError::Syntax { position, message } => v.error(position, message),
        PolyError::UnknownVariable { name, position } => v.error(position, format!("unknown variable '{name}'")),
        other => v.error(0, other.to_string()),
    })
}

fn parse_list(v: &Located<'_>, vars: &[String]) -> Result<Vec<Polynomial>, FormatError> {
    v.split(';').iter().map(|e| parse_entry(e, vars)).collect()
}

fn parse_matrix(v: &Located<'_>, vars: &[String]) -> Result<Vec<Vec<Polynomial>>, FormatError> {
    let inner = match (v.text.starts_with('['), v.text.ends_with(']')) {
        (true, true) if v.text.len() >= 2 => v.slice(1, v.text.len() - 1),
        (true, _) => return Err(v.error(v.text.len(), "expected ']'")),
        (false, true) => return Err(v.error(0, "expected '['")),
        (false, false) => v.slice(0, v.text.len()),
    };
    inner.split(';').iter().map(|row| row.split(',').iter().map(|e| parse_entry(e, vars)).collect()).collect()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const KEYS: [&str; 6] = ["ring", "field", "f", "X", "C", "g"];

/// Parses a problem or map file.
pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let mut values: [Option<Located<'_>>; 6] = Default::default();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let whole = Located { text: content, line, column: 1 };
        let Some(colon) = content.find(':') else {
            return Err(whole.error(content.len() - content.trim_start().len(), "expected 'key: value'"));
        };
        let key = whole.slice(0, colon);
        let Some(slot) = KEYS.iter().position(|k| *k == key.text) else {
            return Err(key.error(0, format!("unknown key '{}'", key.text)));
        };
        if values[slot].is_some() {
            return Err(key.error(0, format!("duplicate key '{}'", key.text)));
        }
        values[slot] = Some(whole.slice(colon + 1, content.len()));
    }
    let [ring, field, f, x, c, g] = values;
    let missing = |name: &str| FormatError::Syntax { line: last_line.max(1), column: 1, message: format!("missing key '{name}'") };

    let ring = ring.ok_or_else(|| missing("ring"))?;
    let mut vars: Vec<String> = Vec::new();
    for v in ring.split(',') {
        if !is_identifier(v.text) {
            return Err(v.error(0, format!("invalid variable name '{}'", v.text)));
        }
        if vars.iter().any(|w| w == v.text) {
            return Err(v.error(0, format!("duplicate variable '{}'", v.text)));
        }
        vars.push(v.text.to_string());
    }
    let field = match &field {
        None => FieldTag::Complex,
        Some(v) if v.text == "complex" => FieldTag::Complex,
        Some(v) if v.text == "real" => FieldTag::Real,
        Some(v) => return Err(v.error(0, format!("field must be 'complex' or 'real', found '{}'", v.text))),
    };

    if let Some(g) = g {
        if let Some(extra) = [&f, &x, &c].into_iter().flatten().next() {
            return Err(FormatError::Syntax { line: extra.line, column: 1, message: "a map file cannot also declare f, X or C".into() });
        }
        let g = parse_list(&g, &vars)?;
        if g.len() != vars.len() {
            return Err(FormatError::Shape(format!("map has {} components, ring has {} variables", g.len(), vars.len())));
        }
        return Ok(Document::Map(MapProblem { vars, g, field }));
    }

    let f = parse_list(&f.ok_or_else(|| missing("f"))?, &vars)?;
    let x = parse_list(&x.ok_or_else(|| missing("X"))?, &vars)?;
    let rows = parse_matrix(&c.ok_or_else(|| missing("C"))?, &vars)?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(FormatError::Shape("C must be a square matrix".into()));
    }
    let cm = PolyMatrix::from_rows(rows).map_err(|e| FormatError::Shape(e.to_string()))?;
    let problem = Problem::new(vars, f, x, cm, field).map_err(|e| match e {
        IndexError::Shape(s) => FormatError::Shape(s),
        other => FormatError::Shape(other.to_string()),
    })?;
    Ok(Document::Curve(problem))
}

/// Canonical text of a curve problem; parsing it yields the same problem.
pub fn serialize_problem(p: &Problem) -> String {
    let vars = p.vars();
    let list = |ps: &[Polynomial]| ps.iter().map(|q| q.to_string_with(vars)).collect::<Vec<_>>().join("; ");
    let c = p.c();
    let rows: Vec<String> = (0..c.rows()).map(|i| c.row(i).iter().map(|q| q.to_string_with(vars)).collect::<Vec<_>>().join(", ")).collect();
    format!(
        "ring: {}\nfield: {}\nf: {}\nX: {}\nC: [{}]\n",
        vars.join(", "),
        p.field().as_str(),
        list(p.f()),
        list(p.x()),
        rows.join("; ")
    )
}

/// Canonical text of a map problem.
pub fn serialize_map(m: &MapProblem) -> String {
    let g: Vec<String> = m.g.iter().map(|q| q.to_string_with(&m.vars)).collect();
    format!("ring: {}\nfield: {}\ng: {}\n", m.vars.join(", "), m.field.as_str(), g.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPACE: &str = "ring: x, y, z\nfield: complex        # or: real\nf: x^2+y^2+z^2; x*y\nX: z*(x-y)*x; z*(x-y)*y; z*(x-y)*z\nC: [2*z*(x-y), 0; 0, 2*z*(x-y)]\n";

    #[test]
    fn reads_the_reference_layout() {
        let Document::Curve(p) = parse_document(SPACE).unwrap() else { panic!("curve expected") };
        assert_eq!(p.vars(), ["x", "y", "z"]);
        assert_eq!(p.f().len(), 2);
        assert_eq!(p.c().rows(), 2);
        assert!(p.c().get(0, 1).is_zero());
        assert_eq!(parse_document(&serialize_problem(&p)).unwrap(), Document::Curve(p));
    }

    #[test]
    fn scalar_tangency_without_brackets() {
        let text = "ring: x, y\nfield: real\nf: x^2 - y^2\nX: x^2; x*y\nC: 2*x\n";
        let Document::Curve(p) = parse_document(text).unwrap() else { panic!() };
        assert_eq!(p.field(), FieldTag::Real);
        assert_eq!(serialize_problem(&p), "ring: x, y\nfield: real\nf: x^2 - y^2\nX: x^2; x*y\nC: [2*x]\n");
    }

    #[test]
    fn map_files() {
        let Document::Map(m) = parse_document("ring: x, y\nfield: real\ng: x^2 - y^2; 2*x*y").unwrap() else { panic!() };
        assert_eq!(m.g.len(), 2);
        assert_eq!(parse_document(&serialize_map(&m)).unwrap(), Document::Map(m));
    }

    #[test]
    fn positions_in_errors() {
        let err = parse_document("ring: x, y\nf: x^2 + w\nX: x; y\nC: [0]").unwrap_err();
        assert_eq!(err, FormatError::Syntax { line: 2, column: 10, message: "unknown variable 'w'".into() });
        let err = parse_document("ring: x, y\nf: x^2 +\nX: x; y\nC: [0]").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 2, .. }), "{err}");
        assert!(matches!(parse_document("ring: x\nbogus: 1"), Err(FormatError::Syntax { line: 2, column: 1, .. })));
        assert!(matches!(parse_document("f: x"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_document("ring: x, x\ng: x; x"), Err(FormatError::Syntax { column: 10, .. })));
        assert!(matches!(parse_document("ring: x, y\nf: y\nX: x; 0\nC: [0"), Err(FormatError::Syntax { line: 4, .. })));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(parse_document("ring: x, y\nf: y\nX: x\nC: [0]"), Err(FormatError::Shape(_))));
        assert!(matches!(parse_document("ring: x, y\nf: y\nX: x; 0\nC: [0, 0]"), Err(FormatError::Shape(_))));
        assert!(matches!(parse_document("ring: x, y\ng: x"), Err(FormatError::Shape(_))));
    }
}
