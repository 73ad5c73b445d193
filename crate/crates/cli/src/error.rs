use std::fmt;

use shiftcat::shifts::ShiftError;

/// Process exit codes.
pub mod exit {
    /// A property check or suite reported a failure.
    pub const CHECK_FAILED: i32 = 1;
    /// The presented subshift is empty.
    pub const EMPTY_SHIFT: i32 = 2;
    /// A zeta coefficient is not a nonnegative integer.
    pub const NON_INTEGRAL: i32 = 3;
    /// Bad command line or unknown suite.
    pub const USAGE: i32 = 64;
    /// Input could be read but is invalid.
    pub const DATA: i32 = 65;
    /// Input file could not be read.
    pub const NO_INPUT: i32 = 66;
    /// Internal consistency check failed.
    pub const SOFTWARE: i32 = 70;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(exit::USAGE, message)
    }

    pub fn data(message: impl fmt::Display) -> Self {
        Self::new(exit::DATA, message.to_string())
    }

    pub fn internal(message: impl fmt::Display) -> Self {
        Self::new(exit::SOFTWARE, message.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ShiftError> for CliError {
    fn from(e: ShiftError) -> Self {
        let code = match e {
            ShiftError::EmptyShift => exit::EMPTY_SHIFT,
            ShiftError::NonIntegralCoefficient { .. } => exit::NON_INTEGRAL,
            ShiftError::MobiusMismatch { .. } | ShiftError::IrreducibilityMismatch(..) => exit::SOFTWARE,
            _ => exit::DATA,
        };
        CliError::new(code, e.to_string())
    }
}

macro_rules! data_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::data(e)
            }
        }
    )*};
}

data_errors!(shiftcat::words::WordError, shiftcat::pseudowords::PseudoError);

impl From<shiftcat::codes::CodeError> for CliError {
    fn from(e: shiftcat::codes::CodeError) -> Self {
        match e {
            shiftcat::codes::CodeError::Shift(s) => s.into(),
            other => CliError::data(other),
        }
    }
}

impl From<shiftcat::flowops::FlowError> for CliError {
    fn from(e: shiftcat::flowops::FlowError) -> Self {
        use shiftcat::flowops::FlowError;
        match e {
            FlowError::Shift(s) => s.into(),
            FlowError::CharacterizationFailure(_) => CliError::internal(e),
            other => CliError::data(other),
        }
    }
}

impl From<shiftcat::semigroups::SemigroupError> for CliError {
    fn from(e: shiftcat::semigroups::SemigroupError) -> Self {
        use shiftcat::semigroups::SemigroupError;
        match e {
            SemigroupError::Shift(s) => s.into(),
            other => CliError::data(other),
        }
    }
}

impl From<shiftcat::karoubi::KaroubiError> for CliError {
    fn from(e: shiftcat::karoubi::KaroubiError) -> Self {
        use shiftcat::karoubi::KaroubiError;
        match e {
            KaroubiError::MismatchBug(_) => CliError::internal(e),
            other => CliError::data(other),
        }
    }
}
