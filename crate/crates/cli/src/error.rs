use std::fmt;

use crate::ast::Pos;

/// An error in reading or elaborating a script (exit code 2), or in running
/// its command (exit code 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub kind: String,
    pub message: String,
    pub pos: Option<Pos>,
}

impl ScriptError {
    pub fn new(kind: &str, pos: Pos, message: impl Into<String>) -> ScriptError {
        ScriptError { kind: kind.to_string(), message: message.into(), pos: Some(pos) }
    }

    pub fn syntax(pos: Pos, message: impl Into<String>) -> ScriptError {
        ScriptError::new("SyntaxError", pos, message)
    }

    pub fn unknown(pos: Pos, name: &str) -> ScriptError {
        ScriptError::new("UnknownName", pos, format!("unknown name {name}"))
    }

    pub fn domain(e: &raygroup::Error, pos: Option<Pos>) -> ScriptError {
        ScriptError { kind: error_kind(e).to_string(), message: e.to_string(), pos }
    }
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "{} at line {}, column {}: {}", self.kind, p.line, p.col, self.message),
            None => write!(f, "{}: {}", self.kind, self.message),
        }
    }
}

pub fn error_kind(e: &raygroup::Error) -> &'static str {
    use raygroup::Error::*;
    match e {
        DivisionByZero => "DivisionByZero",
        FieldMismatch => "FieldMismatch",
        InvalidField(_) => "InvalidField",
        ZeroPolynomial => "ZeroPolynomial",
        SingularModel => "SingularModel",
        ZeroFunction => "ZeroFunction",
        PoleAtPlace(_) => "PoleAtPlace",
        CurveMismatch => "CurveMismatch",
        NotPrimeToSupport(_) => "NotPrimeToSupport",
        IllFormedDivisor(_) => "IllFormedDivisor",
        UnsupportedCharacteristic(_) => "UnsupportedCharacteristic",
        NoAuxiliaryFunction(_) => "NoAuxiliaryFunction",
        PointInExcludedSet(_) => "PointInExcludedSet",
        NotInDomain(_) => "NotInDomain",
        NoRationalBasePoint => "NoRationalBasePoint",
        GeneratorBoundTooSmall { .. } => "GeneratorBoundTooSmall",
        ZeroModulus => "ZeroModulus",
        NotComparable(_) => "NotComparable",
        InvalidCharacter(_) => "InvalidCharacter",
        UnknownSuite(_) => "UnknownSuite",
        InvalidArgument(_) => "InvalidArgument",
    }
}
