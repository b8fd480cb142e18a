//! Bundled example matrices, addressable by name. The files under
//! `fixtures/` are the single source; they are embedded at compile time.

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::parse::parse_matrix;

#[derive(Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    /// Expected `(degree, dual degree, ED degree)` where known.
    pub expected: Option<(&'static str, &'static str, &'static str)>,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "running-example",
        text: include_str!("../fixtures/running-example.txt"),
        expected: Some(("12", "14", "50")),
    },
    Fixture {
        name: "twisted-cubic",
        text: include_str!("../fixtures/twisted-cubic.txt"),
        expected: Some(("3", "4", "7")),
    },
    Fixture {
        name: "a1",
        text: include_str!("../fixtures/a1.txt"),
        expected: Some(("19", "27", "170")),
    },
    Fixture {
        name: "a2",
        text: include_str!("../fixtures/a2.txt"),
        expected: Some(("28", "45", "252")),
    },
    Fixture {
        name: "a3",
        text: include_str!("../fixtures/a3.txt"),
        expected: Some(("70", "125", "2356")),
    },
    Fixture {
        name: "a4",
        text: include_str!("../fixtures/a4.txt"),
        expected: Some(("16924", "30840", "641134")),
    },
    Fixture {
        name: "a5",
        text: include_str!("../fixtures/a5.txt"),
        expected: Some(("4570434", "8222171", "301137686")),
    },
    Fixture {
        name: "a6",
        text: include_str!("../fixtures/a6.txt"),
        expected: Some(("581454473", "1056983492", "74638158177")),
    },
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.name).collect()
}

pub fn fixture(name: &str) -> Result<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name).ok_or_else(|| {
        Error::validation(format!(
            "unknown fixture '{name}'; available: {}",
            fixture_names().join(", ")
        ))
    })
}

/// The fixture's matrix `A`.
pub fn fixture_matrix(name: &str) -> Result<IntegerMatrix> {
    parse_matrix(fixture(name)?.text)
}

impl Fixture {
    pub fn expected_big(&self) -> Option<(BigInt, BigInt, BigInt)> {
        self.expected.map(|(d, dd, ed)| {
            (
                d.parse().expect("fixture degree"),
                dd.parse().expect("fixture dual degree"),
                ed.parse().expect("fixture ED degree"),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gale::gale_dual_from_a;

    #[test]
    fn all_fixtures_parse_and_validate() {
        for f in FIXTURES {
            let a = fixture_matrix(f.name).unwrap();
            assert_eq!(a.rows() + 2, a.cols(), "{} shape", f.name);
            let sys = gale_dual_from_a(a).unwrap();
            assert!(sys.validate().is_empty(), "{} diagnostics", f.name);
        }
    }

    #[test]
    fn expected_values_hold_for_all_fixtures() {
        for f in FIXTURES {
            let a = fixture_matrix(f.name).unwrap();
            let sys = gale_dual_from_a(a).unwrap();
            let report = crate::characteristic::compute_report(&sys).unwrap();
            let (deg, dual, ed) = f.expected_big().unwrap();
            assert_eq!(report.degree, deg, "{} degree", f.name);
            assert_eq!(report.dual_degree, dual, "{} dual degree", f.name);
            assert_eq!(report.ed_degree, ed, "{} ED degree", f.name);
        }
    }

    #[test]
    fn unknown_fixture_lists_available() {
        let err = fixture("a7").unwrap_err();
        assert!(err.to_string().contains("a6"));
    }
}
