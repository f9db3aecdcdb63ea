//! Pass/fail records shared by the identity and conjecture checks.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    /// Passes iff `failure` is `None`; otherwise records the first counterexample.
    pub fn from_failure(name: &str, failure: Option<String>) -> Self {
        Check { name: name.to_string(), pass: failure.is_none(), counterexample: failure }
    }

    pub fn line(&self) -> String {
        match &self.counterexample {
            None => format!("{}: pass", self.name),
            Some(c) => format!("{}: FAIL ({c})", self.name),
        }
    }
}

/// First counterexample over an iterator of candidates.
pub fn first_failure<T, I, F>(it: I, mut bad: F) -> Option<String>
where
    I: IntoIterator<Item = T>,
    F: FnMut(&T) -> Option<String>,
{
    it.into_iter().find_map(|x| bad(&x))
}
