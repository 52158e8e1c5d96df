use std::fmt;

use galdesc::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Loc {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub loc: Loc,
    /// `syntax`, `resolve`, or the name of the library error.
    pub code: String,
    pub message: String,
}

impl Diagnostic {
    pub fn error(loc: Loc, code: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            loc,
            code: code.into(),
            message: message.into(),
        }
    }

    pub fn from_library(loc: Loc, e: &Error) -> Self {
        Self::error(loc, error_code(e), e.to_string())
    }

    /// 2 for parse and resolution errors, 3 for exhausted budgets, 1 for
    /// everything else.
    pub fn exit_code(&self) -> i32 {
        match self.code.as_str() {
            "syntax" | "resolve" | "Parse" => 2,
            "BudgetExceeded" | "EnumerationBudgetExceeded" | "DimensionCapExceeded" => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
        };
        write!(
            f,
            "{sev}[{}] line {}, column {}: {}",
            self.code, self.loc.line, self.loc.column, self.message
        )
    }
}

/// The variant name of a library error.
pub fn error_code(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_ascii_alphanumeric()).next().unwrap_or("Error").to_string()
}
