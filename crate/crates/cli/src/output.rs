use serde_json::{json, Value};
use std::fmt;

/// A command result in both renderings.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub exit_code: u8,
}

impl Output {
    pub fn ok(json: Value, text: String) -> Self {
        Output { json, text, exit_code: 0 }
    }

    pub fn print(&self, as_json: bool) {
        if as_json {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("json values always serialize"));
        } else {
            print!("{}", self.text);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    PropertyFailure,
    Schema,
    CrossCheck,
    MissingData,
    NonPolynomial,
}

impl ErrorKind {
    pub fn code(self) -> u8 {
        match self {
            ErrorKind::PropertyFailure => 1,
            ErrorKind::Schema => 2,
            ErrorKind::CrossCheck => 3,
            ErrorKind::MissingData => 4,
            ErrorKind::NonPolynomial => 5,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ErrorKind::PropertyFailure => "property_failure",
            ErrorKind::Schema => "schema",
            ErrorKind::CrossCheck => "cross_check",
            ErrorKind::MissingData => "missing_data",
            ErrorKind::NonPolynomial => "non_polynomial",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl fmt::Display) -> Self {
        CliError { kind, message: message.to_string() }
    }

    pub fn schema(message: impl fmt::Display) -> Self {
        Self::new(ErrorKind::Schema, message)
    }

    pub fn code(&self) -> u8 {
        self.kind.code()
    }

    pub fn print(&self, as_json: bool) {
        if as_json {
            let body = json!({ "error": { "code": self.code(), "kind": self.kind.name(), "message": self.message } });
            eprintln!("{}", serde_json::to_string_pretty(&body).expect("json values always serialize"));
        } else {
            eprintln!("error: {}", self.message);
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(headers.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned() {
        let t = table(&["g", "n"], &[vec!["0".into(), "1".into()], vec!["10".into(), "-4".into()]]);
        assert_eq!(t, "g   n\n0   1\n10  -4\n");
    }
}
