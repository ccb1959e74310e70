//! Finiteness certificates and the report structure shared by all checkers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{AdjoinedElt, Elt};

/// How a certificate was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CertMode {
    /// The claim holds for every index, proved by closed-form computation.
    Exact,
    /// The claim was only checked for indices below the bound.
    WindowVerified { bound: u64 },
}

/// A finite set of indices witnessing a finiteness claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub members: BTreeSet<u64>,
    #[serde(flatten)]
    pub mode: CertMode,
}

impl Certificate {
    pub fn exact<I: IntoIterator<Item = u64>>(members: I) -> Certificate {
        Certificate {
            members: members.into_iter().collect(),
            mode: CertMode::Exact,
        }
    }

    pub fn window<I: IntoIterator<Item = u64>>(members: I, bound: u64) -> Certificate {
        Certificate {
            members: members.into_iter().collect(),
            mode: CertMode::WindowVerified { bound },
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.mode, CertMode::Exact)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.members.contains(&n)
    }
}

/// The statement a certificate witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum Claim {
    /// `{n : mult·s_n = value}` is contained in the certificate. A missing
    /// multiplier states the inclusion for every multiplier at once.
    ValueFiniteness {
        entry: usize,
        mult: Option<AdjoinedElt>,
        value: Elt,
    },
    /// `mult_s·s_n ≠ mult_t·t_m` whenever neither index lies in the
    /// certificate.
    PairSeparation {
        s_entry: usize,
        t_entry: usize,
        s_mult: AdjoinedElt,
        t_mult: AdjoinedElt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedClaim {
    #[serde(flatten)]
    pub claim: Claim,
    pub certificate: Certificate,
}

/// Which family of separation conditions a report speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Set,
    Act,
    Semigroup,
    Commutative,
    Semilattice,
}

/// A concrete violation, replayable through sequence evaluation and meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "witness", rename_all = "snake_case")]
pub enum Witness {
    /// `mult·s_n = value` for every `n ≥ tail_from`, yet `value` differs
    /// from the shifted limit.
    InfiniteValue {
        entry: usize,
        mult: AdjoinedElt,
        value: Elt,
        tail_from: u64,
        sample_n: u64,
    },
    /// `s_mult·s_n = t_mult·t_m` with distinct shifted limits, and the
    /// coincidence cannot be covered by a finite index set.
    SharedValues {
        s_entry: usize,
        t_entry: usize,
        s_mult: AdjoinedElt,
        t_mult: AdjoinedElt,
        n: u64,
        m: u64,
    },
    /// The expression claims the limit of `entry` but misses infinitely many
    /// of its values; `n` is the least escaping index.
    EscapesOpenSet { entry: usize, n: u64 },
    /// A point lying in both of two sets that were required to be disjoint.
    Overlap { point: Elt },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    WindowPass { bound: u64 },
    Fail { witness: Witness },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        !matches!(self, Verdict::Fail { .. })
    }
}

/// Outcome of one checker run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub layer: Layer,
    pub window: u64,
    pub verdict: Verdict,
    /// Certified claims, in deterministic order. `claims_total` counts all
    /// established claims even when the stored list is capped.
    pub claims: Vec<CertifiedClaim>,
    pub claims_total: usize,
    /// Agreement run with the identity adjoined, when the layer requires it.
    pub unit_adjoined: Option<Box<CheckReport>>,
}

impl CheckReport {
    pub(crate) fn new(layer: Layer, window: u64) -> CheckReport {
        CheckReport {
            layer,
            window,
            verdict: Verdict::Pass,
            claims: Vec::new(),
            claims_total: 0,
            unit_adjoined: None,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }

    pub(crate) fn push_claim(&mut self, claim: Claim, certificate: Certificate, cap: usize) {
        self.claims_total += 1;
        if self.claims.len() < cap {
            self.claims.push(CertifiedClaim { claim, certificate });
        }
    }
}

/// Default cap on stored claims per report.
pub(crate) const CLAIM_CAP: usize = 50_000;
