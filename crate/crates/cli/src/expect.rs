//! Expectation records stored next to corpus problems.

use crate::format::FormatError;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expectation {
    pub index: Option<i64>,
    pub dim_b0: Option<usize>,
    pub dim_b0_mod_df: Option<usize>,
    pub signature: Option<i64>,
}

impl Expectation {
    pub fn is_empty(&self) -> bool {
        *self == Expectation::default()
    }
}

/// Parses `key: integer` lines; keys are `index`, `dim_B0`,
/// `dim_B0_mod_DF` and `signature`.
pub fn parse_expectation(text: &str) -> Result<Expectation, FormatError> {
    let mut e = Expectation::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| FormatError::Syntax { line, column: 1, message };
        let (key, value) = content.split_once(':').ok_or_else(|| err("expected 'key: value'".into()))?;
        let (key, value) = (key.trim(), value.trim());
        let int = || value.parse::<i64>().map_err(|_| err(format!("'{value}' is not an integer")));
        let nat = || value.parse::<usize>().map_err(|_| err(format!("'{value}' is not a non-negative integer")));
        let slot_taken = match key {
            "index" => e.index.replace(int()?).is_some(),
            "signature" => e.signature.replace(int()?).is_some(),
            "dim_B0" => e.dim_b0.replace(nat()?).is_some(),
            "dim_B0_mod_DF" => e.dim_b0_mod_df.replace(nat()?).is_some(),
            other => return Err(err(format!("unknown key '{other}'"))),
        };
        if slot_taken {
            return Err(err(format!("duplicate key '{key}'")));
        }
    }
    Ok(e)
}

/// Text form of an expectation record.
pub fn serialize_expectation(e: &Expectation) -> String {
    let mut out = String::new();
    if let Some(v) = e.index {
        out += &format!("index: {v}\n");
    }
    if let Some(v) = e.dim_b0 {
        out += &format!("dim_B0: {v}\n");
    }
    if let Some(v) = e.dim_b0_mod_df {
        out += &format!("dim_B0_mod_DF: {v}\n");
    }
    if let Some(v) = e.signature {
        out += &format!("signature: {v}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let e = parse_expectation("# D4\nindex: 6\ndim_B0: 12\ndim_B0_mod_DF: 6\n").unwrap();
        assert_eq!(e, Expectation { index: Some(6), dim_b0: Some(12), dim_b0_mod_df: Some(6), signature: None });
        assert_eq!(parse_expectation(&serialize_expectation(&e)).unwrap(), e);
        assert!(parse_expectation("").unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_records() {
        assert!(parse_expectation("index: six").is_err());
        assert!(parse_expectation("dim_B0: -1").is_err());
        assert!(parse_expectation("index: 1\nindex: 2").is_err());
        assert!(parse_expectation("colour: 3").is_err());
    }
}
