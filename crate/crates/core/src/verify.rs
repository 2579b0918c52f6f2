//! Certificate-producing verifiers for the set properties the solvers and
//! reductions rely on: domination, double domination, co-secure domination,
//! and partial monopolies.
//!
//! Every verifier returns a [`Certificate`] whose witness map makes the
//! verdict auditable: per-member replacement vertices on success, the
//! offending vertices with their deficient evidence sets on failure.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// The set properties understood by the verifiers and solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SetProperty {
    Dominating,
    DoubleDominating,
    Csds,
    PartialMonopoly,
}

impl SetProperty {
    /// Whether adding vertices can never destroy the property. Domination
    /// and double domination are superset-closed; co-secure domination and
    /// partial monopolies are not (the full vertex set is never co-secure).
    pub fn superset_closed(self) -> bool {
        matches!(self, SetProperty::Dominating | SetProperty::DoubleDominating)
    }
}

impl fmt::Display for SetProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SetProperty::Dominating => "dominating",
            SetProperty::DoubleDominating => "double-dominating",
            SetProperty::Csds => "csds",
            SetProperty::PartialMonopoly => "monopoly",
        };
        f.write_str(s)
    }
}

/// Why a verifier rejected its input set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// Some vertex outside the set has no neighbor in it.
    Undominated,
    /// Some vertex outside the set has fewer than two neighbors in it.
    UnderDominated,
    /// Some member of the set admits no replacement vertex.
    NoReplacement,
    /// Some vertex outside the set sees it on less than half of its closed
    /// neighborhood.
    BelowHalfNeighborhood,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureKind::Undominated => "undominated vertices",
            FailureKind::UnderDominated => "vertices with fewer than two dominators",
            FailureKind::NoReplacement => "members without a replacement vertex",
            FailureKind::BelowHalfNeighborhood => "vertices below the half-neighborhood threshold",
        };
        f.write_str(s)
    }
}

/// Verdict of a verifier plus per-vertex evidence.
///
/// On success the witness map carries, per relevant vertex, the set that
/// proves the property (dominators, replacement candidates). On failure the
/// keys are the failing vertices and the values their deficient evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: bool,
    pub reason: Option<FailureKind>,
    pub witnesses: BTreeMap<usize, VertexSet>,
}

impl Certificate {
    fn pass(witnesses: BTreeMap<usize, VertexSet>) -> Self {
        Certificate {
            verdict: true,
            reason: None,
            witnesses,
        }
    }

    fn fail(reason: FailureKind, witnesses: BTreeMap<usize, VertexSet>) -> Self {
        debug_assert!(!witnesses.is_empty());
        Certificate {
            verdict: false,
            reason: Some(reason),
            witnesses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("vertex {0} is not a member of the set")]
    NotInSet(usize),
    #[error("{0} is not superset-closed; single-removal minimality does not apply")]
    UnsupportedProperty(SetProperty),
    #[error("input set does not satisfy the {0} property")]
    PropertyNotSatisfied(SetProperty),
}

/// True iff every vertex outside `d` has a neighbor in `d`.
pub fn is_dominating(g: &Graph, d: &VertexSet) -> Certificate {
    let mut uncovered = BTreeMap::new();
    let mut covered = BTreeMap::new();
    for v in g.vertices() {
        if d.contains(v) {
            continue;
        }
        let dominators = g.neighbors(v).intersection(d);
        if dominators.is_empty() {
            uncovered.insert(v, dominators);
        } else {
            covered.insert(v, dominators);
        }
    }
    if uncovered.is_empty() {
        Certificate::pass(covered)
    } else {
        Certificate::fail(FailureKind::Undominated, uncovered)
    }
}

/// True iff every vertex outside `d` has at least two neighbors in `d`.
/// Members of `d` themselves are unconstrained.
pub fn is_double_dominating(g: &Graph, d: &VertexSet) -> Certificate {
    let mut deficient = BTreeMap::new();
    let mut covered = BTreeMap::new();
    for v in g.vertices() {
        if d.contains(v) {
            continue;
        }
        let dominators = g.neighbors(v).intersection(d);
        if dominators.len() < 2 {
            deficient.insert(v, dominators);
        } else {
            covered.insert(v, dominators);
        }
    }
    if deficient.is_empty() {
        Certificate::pass(covered)
    } else {
        Certificate::fail(FailureKind::UnderDominated, deficient)
    }
}

/// External private neighbors of `u` with respect to `s`: the vertices
/// outside `s` whose only neighbor in `s` is `u`.
pub fn epn(g: &Graph, s: &VertexSet, u: usize) -> Result<VertexSet, VerifyError> {
    if !s.contains(u) {
        return Err(VerifyError::NotInSet(u));
    }
    let mut out = VertexSet::empty(g.n());
    for w in g.vertices() {
        if s.contains(w) {
            continue;
        }
        let hits = g.neighbors(w).intersection(s);
        if hits.len() == 1 && hits.contains(u) {
            out.insert(w);
        }
    }
    Ok(out)
}

/// Vertices that can replace `u` in `s` while preserving domination: the
/// outside neighbors of `u` whose closed neighborhood covers all external
/// private neighbors of `u`.
pub fn replacements(g: &Graph, s: &VertexSet, u: usize) -> Result<VertexSet, VerifyError> {
    let private = epn(g, s, u)?;
    let mut out = VertexSet::empty(g.n());
    for v in g.neighbors(u).iter() {
        if s.contains(v) {
            continue;
        }
        if private.is_subset_of(&g.closed_neighborhood(v)) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// True iff `s` dominates the graph and every member has a replacement
/// vertex. The witness map records the replacement candidates per member.
pub fn is_csds(g: &Graph, s: &VertexSet) -> Certificate {
    let domination = is_dominating(g, s);
    if !domination.verdict {
        return domination;
    }
    let mut member_witnesses = BTreeMap::new();
    let mut stuck = BTreeMap::new();
    for u in s.iter() {
        let candidates = replacements(g, s, u).expect("u ranges over s");
        if candidates.is_empty() {
            // record the private neighbors no single swap can cover
            stuck.insert(u, epn(g, s, u).expect("u ranges over s"));
        } else {
            member_witnesses.insert(u, candidates);
        }
    }
    if stuck.is_empty() {
        Certificate::pass(member_witnesses)
    } else {
        Certificate::fail(FailureKind::NoReplacement, stuck)
    }
}

/// True iff every vertex outside `m` has at least half of its closed
/// neighborhood inside `m`, tested as `2*|m ∩ N[v]| >= |N[v]|`.
pub fn is_partial_monopoly(g: &Graph, m: &VertexSet) -> Certificate {
    let mut deficient = BTreeMap::new();
    let mut covered = BTreeMap::new();
    for v in g.vertices() {
        if m.contains(v) {
            continue;
        }
        // v is outside m, so m ∩ N[v] = m ∩ N(v)
        let inside = g.neighbors(v).intersection(m);
        if 2 * inside.len() >= g.degree(v) + 1 {
            covered.insert(v, inside);
        } else {
            deficient.insert(v, inside);
        }
    }
    if deficient.is_empty() {
        Certificate::pass(covered)
    } else {
        Certificate::fail(FailureKind::BelowHalfNeighborhood, deficient)
    }
}

/// Allocation-light predicate used by the solvers and pruning loops.
pub fn satisfies(g: &Graph, s: &VertexSet, p: SetProperty) -> bool {
    match p {
        SetProperty::Dominating => g
            .vertices()
            .all(|v| s.contains(v) || g.neighbors(v).intersects(s)),
        SetProperty::DoubleDominating => g
            .vertices()
            .all(|v| s.contains(v) || g.neighbors(v).count_common(s) >= 2),
        SetProperty::PartialMonopoly => g
            .vertices()
            .all(|v| s.contains(v) || 2 * g.neighbors(v).count_common(s) >= g.degree(v) + 1),
        SetProperty::Csds => {
            if !satisfies(g, s, SetProperty::Dominating) {
                return false;
            }
            s.iter().all(|u| has_replacement(g, s, u))
        }
    }
}

fn has_replacement(g: &Graph, s: &VertexSet, u: usize) -> bool {
    let private = epn(g, s, u).expect("u ranges over s");
    g.neighbors(u)
        .iter()
        .any(|v| !s.contains(v) && private.is_subset_of(&g.closed_neighborhood(v)))
}

/// True iff `s` satisfies the superset-closed property `p` and no single
/// vertex can be removed without losing it.
pub fn is_minimal(g: &Graph, s: &VertexSet, p: SetProperty) -> Result<bool, VerifyError> {
    if !p.superset_closed() {
        return Err(VerifyError::UnsupportedProperty(p));
    }
    if !satisfies(g, s, p) {
        return Ok(false);
    }
    let mut probe = s.clone();
    for u in s.iter() {
        probe.remove(u);
        let still = satisfies(g, &probe, p);
        probe.insert(u);
        if still {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shrinks `s` to a minimal set satisfying the superset-closed property `p`
/// with one ascending-identifier pass. For superset-closed properties a
/// vertex that cannot be removed at some step stays non-removable after
/// later removals, so a single pass suffices.
pub fn prune_to_minimal(g: &Graph, s: &VertexSet, p: SetProperty) -> Result<VertexSet, VerifyError> {
    if !p.superset_closed() {
        return Err(VerifyError::UnsupportedProperty(p));
    }
    if !satisfies(g, s, p) {
        return Err(VerifyError::PropertyNotSatisfied(p));
    }
    let mut kept = s.clone();
    for u in s.iter() {
        kept.remove(u);
        if !satisfies(g, &kept, p) {
            kept.insert(u);
        }
    }
    debug_assert_eq!(is_minimal(g, &kept, p), Ok(true));
    Ok(kept)
}
