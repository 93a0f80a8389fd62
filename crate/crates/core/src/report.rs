//! Verification report structures and helpers: deterministic, serialized as
//! JSON, with one entry per relation instance.

use crate::smash::SmashOp;
use serde::Serialize;
use std::fmt;

/// One relation instance outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn check_eq<B: Ord + Clone + fmt::Display>(
    id: String,
    lhs: &SmashOp<B>,
    rhs: &SmashOp<B>,
) -> Check {
    let pass = lhs.eq(rhs);
    Check {
        id,
        pass,
        witness: if pass {
            None
        } else {
            let mut w = format!("lhs = {lhs}; rhs = {rhs}");
            w.truncate(400);
            Some(w)
        },
    }
}

pub fn check_bool(id: String, pass: bool, witness: &str) -> Check {
    Check {
        id,
        pass,
        witness: if pass { None } else { Some(witness.to_string()) },
    }
}

/// A whole suite outcome with the resolved conventions echoed.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: ConfigEcho,
    pub conventions: Conventions,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub wall_ms: u128,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct ConfigEcho {
    pub characteristic: u64,
    pub q: String,
    pub params: Vec<String>,
    pub d: usize,
    pub level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
}

/// The sign/orientation choices that the checkers resolve at run time; a
/// run that cannot resolve them consistently fails.
#[derive(Debug, Clone, Serialize)]
pub struct Conventions {
    /// The scalar picked up by a block moving right across a red strand.
    pub schur_right_crossing: String,
    /// Argument order of the crossing polynomial in the double-crossing
    /// relation.
    pub klr_double_crossing: String,
    /// Condition for the identity correction in the braid move across a
    /// middle red strand.
    pub klr_red_braid_correction: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            schur_right_crossing: "unresolved".into(),
            klr_double_crossing: "unresolved".into(),
            klr_red_braid_correction: "unresolved".into(),
        }
    }
}

impl VerificationReport {
    pub fn new(
        suite: &str,
        config: ConfigEcho,
        conventions: Conventions,
        checks: Vec<Check>,
        wall_ms: u128,
    ) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            suite: suite.to_string(),
            config,
            conventions,
            checks,
            pass,
            wall_ms,
        }
    }
}
