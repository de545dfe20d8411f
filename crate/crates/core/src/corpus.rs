//! Embedded problem files with their expected outcomes.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    /// Parses, is idempotent, and classifies with this tag.
    Classified(&'static str),
    NotIdempotent,
    /// Some Laurent variable does not map to a unit.
    Invalid,
    ParseError,
}

impl Expected {
    /// Exit status of `retract check` on the file.
    pub fn check_exit_code(self) -> i32 {
        match self {
            Expected::Classified(_) => 0,
            Expected::NotIdempotent | Expected::Invalid => 1,
            Expected::ParseError => 2,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub expected: Expected,
}

macro_rules! entry {
    ($name:literal, $expected:expr) => {
        CorpusEntry {
            name: $name,
            text: include_str!(concat!("../corpus/", $name, ".txt")),
            expected: $expected,
        }
    };
}

pub const CORPUS: &[CorpusEntry] = &[
    entry!("e1", Expected::Classified("PureLaurent")),
    entry!("e3", Expected::Classified("PureLaurent")),
    entry!("e7", Expected::Classified("LaurentTensorPoly")),
    entry!("identity", Expected::Classified("WholeRing")),
    entry!("constant", Expected::Classified("CoefficientRing")),
    entry!("ufd", Expected::Classified("UFDClassified")),
    entry!("conjugated", Expected::Classified("PureLaurent")),
    entry!("gf5", Expected::Classified("LaurentTensorPoly")),
    entry!("integers", Expected::Classified("PureLaurent")),
    entry!("swap", Expected::NotIdempotent),
    entry!("not_a_unit", Expected::Invalid),
    entry!("undeclared", Expected::ParseError),
];

pub fn corpus_entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::problem::parse_problem;
    use crate::retract::analyze;

    #[test]
    fn every_entry_behaves_as_labelled() {
        for e in CORPUS {
            let parsed = parse_problem(e.text);
            match e.expected {
                Expected::ParseError => {
                    assert!(matches!(parsed, Err(Error::Parse { .. })), "{}", e.name);
                }
                Expected::Invalid => {
                    assert!(!parsed.unwrap().endomorphism.validate(), "{}", e.name);
                }
                Expected::NotIdempotent => {
                    let phi = parsed.unwrap().endomorphism;
                    assert!(phi.validate() && !phi.is_idempotent(), "{}", e.name);
                }
                Expected::Classified(tag) => {
                    let rep = analyze(&parsed.unwrap().endomorphism).unwrap();
                    assert_eq!(rep.classification.tag(), tag, "{}", e.name);
                }
            }
        }
    }
}
