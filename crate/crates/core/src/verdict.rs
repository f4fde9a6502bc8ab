//! Per-condition verdicts and the overall classification.

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::sign::SignVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    /// A resource cap fired before the condition was decided.
    Inconclusive,
    /// A sufficient condition that did not apply; says nothing either way.
    NoConclusion,
    NotApplicable,
}

impl Status {
    pub fn is_definitive(self) -> bool {
        matches!(self, Status::Holds | Status::Fails)
    }
}

/// Outcome of one condition, with the statement it instantiates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub id: String,
    pub tag: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    /// Which shortcut or search decided the verdict.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub route: Option<String>,
    /// Candidates left unexplored when a cap fired.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub frontier: Vec<SignVector>,
}

impl ConditionVerdict {
    pub fn new(id: &str, tag: &str, status: Status) -> Self {
        Self {
            id: id.into(),
            tag: tag.into(),
            status,
            certificate: None,
            reason: None,
            route: None,
            frontier: Vec::new(),
        }
    }

    pub fn holds(id: &str, tag: &str) -> Self {
        Self::new(id, tag, Status::Holds)
    }

    pub fn fails(id: &str, tag: &str, certificate: Certificate) -> Self {
        Self::new(id, tag, Status::Fails).with_certificate(certificate)
    }

    pub fn inconclusive(id: &str, tag: &str, reason: impl Into<String>) -> Self {
        Self::new(id, tag, Status::Inconclusive).with_reason(reason)
    }

    pub fn with_certificate(mut self, certificate: Certificate) -> Self {
        self.certificate = Some(certificate);
        self
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    pub fn with_route(mut self, route: &str) -> Self {
        self.route = Some(route.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    BijectiveForAllC,
    InjectiveNotBijective,
    NotInjective,
    Inconclusive,
}

impl Classification {
    /// Combines the verdicts of injectivity, face covering and nondegeneracy.
    pub fn from_conditions(i: Status, ii: Status, iii: Status) -> Self {
        match (i, ii, iii) {
            (Status::Fails, _, _) => Classification::NotInjective,
            (Status::Holds, Status::Fails, _) | (Status::Holds, _, Status::Fails) => {
                Classification::InjectiveNotBijective
            }
            (Status::Holds, Status::Holds, Status::Holds) => Classification::BijectiveForAllC,
            _ => Classification::Inconclusive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::BijectiveForAllC => "bijective-for-all-c",
            Classification::InjectiveNotBijective => "injective-not-bijective",
            Classification::NotInjective => "not-injective",
            Classification::Inconclusive => "inconclusive",
        }
    }
}
