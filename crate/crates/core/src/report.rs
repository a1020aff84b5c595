//! Pass/fail records shared by every checker.

use serde::{Deserialize, Serialize};

use crate::exec::Exec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, checked: usize, counterexample: Option<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: counterexample.is_none(),
            checked,
            counterexample,
        }
    }
}

/// Evaluate `check` on every item; the first failure (in item order) is
/// kept as the counterexample.
pub fn run_check<T: Sync>(
    name: &str,
    items: &[T],
    exec: Exec,
    check: impl Fn(&T) -> Option<String> + Sync + Send,
) -> CheckResult {
    let failures = exec.map(items, check);
    CheckResult::new(name, items.len(), failures.into_iter().flatten().next())
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
