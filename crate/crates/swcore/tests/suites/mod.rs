//! Randomized property suites, shared by the test targets and the
//! acceptance run.
#![allow(dead_code)]

pub mod derivation;
pub mod groebner;
pub mod oracle;

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type Case = Result<(), TestCaseError>;

pub struct Property {
    pub name: &'static str,
    pub run: fn(u32) -> Result<(), String>,
}

pub fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    f: impl Fn(S::Value) -> Case,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config)
        .run(&strategy, f)
        .map_err(|e| e.to_string())
}

#[must_use]
pub fn all() -> Vec<Property> {
    let mut out = groebner::properties();
    out.extend(derivation::properties());
    out
}
