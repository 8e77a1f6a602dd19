use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The five short-circuit logics, from least to most identifying.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Logic {
    Fscl,
    Rpscl,
    Cscl,
    Mscl,
    Sscl,
}

/// Which valuation paths count as witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathDiscipline {
    Free,
    RepetitionProof,
    Memorizing,
}

impl Logic {
    pub const ALL: [Logic; 5] = [Logic::Fscl, Logic::Rpscl, Logic::Cscl, Logic::Mscl, Logic::Sscl];

    /// RPSCL and CSCL share repetition-proof paths; MSCL and SSCL share
    /// memorizing ones.
    pub fn discipline(self) -> PathDiscipline {
        match self {
            Logic::Fscl => PathDiscipline::Free,
            Logic::Rpscl | Logic::Cscl => PathDiscipline::RepetitionProof,
            Logic::Mscl | Logic::Sscl => PathDiscipline::Memorizing,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Logic::Fscl => "FSCL",
            Logic::Rpscl => "RPSCL",
            Logic::Cscl => "CSCL",
            Logic::Mscl => "MSCL",
            Logic::Sscl => "SSCL",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown logic `{0}` (expected one of fscl, rpscl, cscl, mscl, sscl)")]
pub struct UnknownLogic(pub String);

impl FromStr for Logic {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fscl" => Ok(Logic::Fscl),
            "rpscl" => Ok(Logic::Rpscl),
            "cscl" => Ok(Logic::Cscl),
            "mscl" => Ok(Logic::Mscl),
            "sscl" => Ok(Logic::Sscl),
            _ => Err(UnknownLogic(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_case_insensitive() {
        assert_eq!("RpScL".parse::<Logic>().unwrap(), Logic::Rpscl);
        assert_eq!("sscl".parse::<Logic>().unwrap(), Logic::Sscl);
        assert!("pscl".parse::<Logic>().is_err());
        for l in Logic::ALL {
            assert_eq!(l.to_string().parse::<Logic>().unwrap(), l);
        }
    }

    #[test]
    fn disciplines() {
        assert_eq!(Logic::Cscl.discipline(), PathDiscipline::RepetitionProof);
        assert_eq!(Logic::Mscl.discipline(), PathDiscipline::Memorizing);
        assert_eq!(Logic::Fscl.discipline(), PathDiscipline::Free);
    }
}
