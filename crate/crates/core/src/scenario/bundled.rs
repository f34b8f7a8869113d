//! Case-study scenarios shipped with the crate, each with the qualitative
//! claims its encoding is expected to exhibit.

use std::fmt;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::Result;
use crate::sufficiency::{minimally_sufficient, sufficient, DeclaredSpace};

/// A checkable statement about one bundled universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    StrictlyWeaker {
        weaker: &'static str,
        stronger: &'static str,
    },
    /// pre(`larger`) ⊋ pre(`smaller`) as spec sets.
    PreImageStrictlyLarger {
        larger: &'static str,
        smaller: &'static str,
    },
    PostImageContains {
        subject: &'static str,
        member: &'static str,
        witness: &'static str,
    },
    Sufficient {
        spec: &'static str,
    },
    MinimallySufficient {
        spec: &'static str,
    },
    NotMinimallySufficient {
        spec: &'static str,
    },
    /// Both specs cover the same necessary applications.
    SameCoverage {
        a: &'static str,
        b: &'static str,
    },
    HourglassHolds,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::StrictlyWeaker { weaker, stronger } => write!(f, "{weaker} is strictly weaker than {stronger}"),
            Claim::PreImageStrictlyLarger { larger, smaller } => {
                write!(f, "pre({larger}) is a strict superset of pre({smaller})")
            }
            Claim::PostImageContains {
                subject,
                member,
                witness,
            } => {
                write!(f, "post({subject}) contains {member} witnessed by {witness}")
            }
            Claim::Sufficient { spec } => write!(f, "{spec} is sufficient for N"),
            Claim::MinimallySufficient { spec } => write!(f, "{spec} is minimally sufficient for N"),
            Claim::NotMinimallySufficient { spec } => write!(f, "{spec} is not minimally sufficient for N"),
            Claim::SameCoverage { a, b } => write!(f, "{a} and {b} cover the same necessary applications"),
            Claim::HourglassHolds => write!(f, "hourglass properties hold for every weaker pair"),
        }
    }
}

impl Claim {
    pub fn evaluate(&self, analysis: &Analysis<'_>) -> Result<bool> {
        let u = analysis.universe();
        Ok(match *self {
            Claim::StrictlyWeaker { weaker, stronger } => {
                analysis.strictly_weaker_idx(u.spec_index(weaker)?, u.spec_index(stronger)?)
            }
            Claim::PreImageStrictlyLarger { larger, smaller } => {
                let big = analysis.pre_indices(u.spec_index(larger)?);
                let small = analysis.pre_indices(u.spec_index(smaller)?);
                small.iter().all(|s| big.contains(s)) && big.len() > small.len()
            }
            Claim::PostImageContains {
                subject,
                member,
                witness,
            } => {
                let program = u.programs().iter().position(|p| p.name == witness);
                match program {
                    Some(p) => analysis.implements_idx(u.spec_index(subject)?, p, u.spec_index(member)?),
                    None => false,
                }
            }
            Claim::Sufficient { spec } => sufficient(analysis, spec)?,
            Claim::MinimallySufficient { spec } => minimally_sufficient(analysis, spec, &DeclaredSpace)?.minimal,
            Claim::NotMinimallySufficient { spec } => !minimally_sufficient(analysis, spec, &DeclaredSpace)?.minimal,
            Claim::SameCoverage { a, b } => {
                let (a, b) = (u.spec_index(a)?, u.spec_index(b)?);
                u.necessary_indices()
                    .into_iter()
                    .all(|n| analysis.in_post(a, n) == analysis.in_post(b, n))
            }
            Claim::HourglassHolds => analysis.verify_hourglass().holds(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct BundledScenario {
    /// Universe name (file stem).
    pub name: &'static str,
    pub file_name: &'static str,
    pub source: &'static str,
    /// Empty for the sketch-only extras.
    pub claims: Vec<Claim>,
}

impl BundledScenario {
    pub fn check_claims(&self, analysis: &Analysis<'_>) -> Result<Vec<ClaimResult>> {
        self.claims
            .iter()
            .map(|c| {
                Ok(ClaimResult {
                    claim: c.to_string(),
                    holds: c.evaluate(analysis)?,
                })
            })
            .collect()
    }
}

pub fn bundled_scenarios() -> Vec<BundledScenario> {
    vec![
        BundledScenario {
            name: "tcpip",
            file_name: "tcpip.hgl",
            source: include_str!("../../scenarios/tcpip.hgl"),
            claims: vec![
                Claim::StrictlyWeaker {
                    weaker: "IP_DATAGRAM",
                    stronger: "IP_RELIABLE",
                },
                Claim::PreImageStrictlyLarger {
                    larger: "IP_DATAGRAM",
                    smaller: "IP_RELIABLE",
                },
                Claim::PostImageContains {
                    subject: "IP_DATAGRAM",
                    member: "RELIABLE_STREAM",
                    witness: "TCP",
                },
                Claim::Sufficient { spec: "IP_DATAGRAM" },
                Claim::Sufficient { spec: "IP_RELIABLE" },
                Claim::SameCoverage {
                    a: "IP_DATAGRAM",
                    b: "IP_RELIABLE",
                },
                Claim::MinimallySufficient { spec: "IP_DATAGRAM" },
                Claim::NotMinimallySufficient { spec: "IP_RELIABLE" },
                Claim::HourglassHolds,
            ],
        },
        BundledScenario {
            name: "unix_fork",
            file_name: "unix_fork.hgl",
            source: include_str!("../../scenarios/unix_fork.hgl"),
            claims: vec![
                Claim::StrictlyWeaker {
                    weaker: "FACTORED_KERNEL",
                    stronger: "MONOLITHIC_SPAWN",
                },
                Claim::PreImageStrictlyLarger {
                    larger: "FACTORED_KERNEL",
                    smaller: "MONOLITHIC_SPAWN",
                },
                Claim::Sufficient {
                    spec: "FACTORED_KERNEL",
                },
                Claim::Sufficient {
                    spec: "MONOLITHIC_SPAWN",
                },
                Claim::MinimallySufficient {
                    spec: "FACTORED_KERNEL",
                },
                Claim::NotMinimallySufficient {
                    spec: "MONOLITHIC_SPAWN",
                },
                Claim::HourglassHolds,
            ],
        },
        BundledScenario {
            name: "grid_auth",
            file_name: "grid_auth.hgl",
            source: include_str!("../../scenarios/grid_auth.hgl"),
            claims: vec![
                Claim::StrictlyWeaker {
                    weaker: "GRID_OPEN",
                    stronger: "GRID_GSI",
                },
                Claim::PreImageStrictlyLarger {
                    larger: "GRID_OPEN",
                    smaller: "GRID_GSI",
                },
                Claim::Sufficient { spec: "GRID_OPEN" },
                Claim::SameCoverage {
                    a: "GRID_OPEN",
                    b: "GRID_GSI",
                },
                Claim::HourglassHolds,
            ],
        },
        BundledScenario {
            name: "logistical",
            file_name: "logistical.hgl",
            source: include_str!("../../scenarios/logistical.hgl"),
            claims: vec![],
        },
        BundledScenario {
            name: "planetlab",
            file_name: "planetlab.hgl",
            source: include_str!("../../scenarios/planetlab.hgl"),
            claims: vec![],
        },
    ]
}
