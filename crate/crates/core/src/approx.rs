//! Approximation algorithms for co-secure domination.
//!
//! The general route treats double domination as a multiset multicover
//! instance (every vertex needs coverage 2, picking a vertex covers itself
//! twice and each neighbor once), runs the classical greedy, and prunes the
//! result to a minimal double dominating set — which, on graphs of minimum
//! degree 2 whose components have at least 3 vertices, is always co-secure.
//! Cubic and quartic graphs get dedicated sweeps with ratio guarantees 8/3
//! and 10/3 against the optimum.
//!
//! All tie-breaking is lowest-identifier, so every run is reproducible.

use std::time::Instant;

use thiserror::Error;

use crate::exact::{Diagnostic, Method, SolveResult};
use crate::graph::{Graph, Residual, VertexSet};
use crate::verify::{self, SetProperty};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("vertex {vertex} has degree {degree}; minimum degree 2 is required")]
    MinDegreeBelowTwo { vertex: usize, degree: usize },
    #[error("connected component of vertex {vertex} has only {size} vertices; at least 3 are required")]
    ComponentTooSmall { vertex: usize, size: usize },
    #[error("graph is not {required}-regular: vertex {vertex} has degree {degree}")]
    NotRegular {
        required: usize,
        vertex: usize,
        degree: usize,
    },
    #[error("input set is not a co-secure dominating set")]
    NotCsds,
    #[error("result failed its co-secure verification: {detail}")]
    ResultNotCsds { detail: String },
}

/// Pick-by-pick record of the greedy multicover run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyTrace {
    /// `(vertex, residual coverage gained)` in pick order.
    pub picks: Vec<(usize, usize)>,
    pub final_set: VertexSet,
}

/// Greedy multiset-multicover double dominating set. Residual requirements
/// start at 2 per vertex; a candidate's gain is `min(2, r(v))` for itself
/// plus `min(1, r(u))` per neighbor; the highest gain wins, lowest
/// identifier on ties.
pub fn greedy_double_dominating(g: &Graph) -> VertexSet {
    greedy_double_dominating_trace(g).final_set
}

/// As [`greedy_double_dominating`], keeping the pick trace.
pub fn greedy_double_dominating_trace(g: &Graph) -> GreedyTrace {
    let n = g.n();
    let mut need: Vec<u8> = vec![2; n];
    let mut chosen = VertexSet::empty(n);
    let mut picks = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..n {
            if chosen.contains(v) {
                continue;
            }
            let mut gain = need[v].min(2) as usize;
            for u in g.neighbors(v).iter() {
                gain += need[u].min(1) as usize;
            }
            if gain > 0 && best.map_or(true, |(_, bg)| gain > bg) {
                best = Some((v, gain));
            }
        }
        let Some((v, gain)) = best else { break };
        chosen.insert(v);
        picks.push((v, gain));
        need[v] = 0;
        for u in g.neighbors(v).iter() {
            need[u] = need[u].saturating_sub(1);
        }
    }
    debug_assert!(need.iter().all(|&r| r == 0));
    GreedyTrace {
        picks,
        final_set: chosen,
    }
}

fn require_min_degree_two(g: &Graph) -> Result<(), ApproxError> {
    for v in g.vertices() {
        if g.degree(v) < 2 {
            return Err(ApproxError::MinDegreeBelowTwo {
                vertex: v,
                degree: g.degree(v),
            });
        }
    }
    for comp in g.connected_components() {
        if comp.len() < 3 {
            return Err(ApproxError::ComponentTooSmall {
                vertex: comp.min().unwrap_or(0),
                size: comp.len(),
            });
        }
    }
    Ok(())
}

fn require_regular(g: &Graph, required: usize) -> Result<(), ApproxError> {
    for v in g.vertices() {
        if g.degree(v) != required {
            return Err(ApproxError::NotRegular {
                required,
                vertex: v,
                degree: g.degree(v),
            });
        }
    }
    Ok(())
}

/// Greedy + prune co-secure dominating set for graphs with minimum degree 2.
/// A minimal double dominating set of such a graph is always co-secure, so
/// the pruned greedy cover is returned directly. Size is within
/// `2 + 2*ln(max_degree + 2)` of the optimum.
pub fn approx_csds(g: &Graph) -> Result<SolveResult, ApproxError> {
    require_min_degree_two(g)?;
    let start = Instant::now();
    let set = minimal_double_dominating(g);
    debug_assert!(verify::satisfies(g, &set, SetProperty::Csds));
    Ok(SolveResult::found(
        SetProperty::Csds,
        set,
        Method::Greedy,
        start.elapsed(),
    ))
}

/// Greedy double dominating set pruned to a minimal one. Shared by the
/// general approximation and the reduction pipeline, which must run it on
/// graphs containing pendant vertices where the co-secure conclusion is not
/// guaranteed.
pub(crate) fn minimal_double_dominating(g: &Graph) -> VertexSet {
    let cover = greedy_double_dominating(g);
    verify::prune_to_minimal(g, &cover, SetProperty::DoubleDominating)
        .expect("greedy cover satisfies double domination")
}

/// Cubic-graph sweep: repeatedly commit the lexicographically least
/// surviving edge and delete both closed neighborhoods; the deleted
/// non-committed vertices form the solution. Guarantees: at most
/// `floor(2n/3)` vertices and within 8/3 of the optimum.
pub fn approx_csds_cubic(g: &Graph) -> Result<SolveResult, ApproxError> {
    require_regular(g, 3)?;
    let start = Instant::now();
    let n = g.n();
    let mut residual = g.residual();
    let mut committed = VertexSet::empty(n);
    while let Some((u, v)) = residual.first_edge() {
        committed.insert(u);
        committed.insert(v);
        let kill = g.closed_neighborhood(u).union(&g.closed_neighborhood(v));
        residual.delete(&kill);
    }
    let survivors = residual.alive_set();
    let mut raw = VertexSet::full(n);
    raw.subtract(&committed);
    raw.subtract(&survivors);
    finish_regular_sweep(g, raw, Method::Reg3, start, None)
}

/// Quartic-graph sweep: repeatedly find a maximal induced path or cycle in
/// the residual, commit its vertices, and delete them with their residual
/// neighbors. Guarantees: at most `floor(2n/3)` vertices and within 10/3 of
/// the optimum; the committed-plus-surviving vertices induce a subgraph of
/// maximum degree 2.
pub fn approx_csds_quartic(g: &Graph) -> Result<SolveResult, ApproxError> {
    require_regular(g, 4)?;
    let start = Instant::now();
    let n = g.n();
    let mut residual = g.residual();
    let mut committed = VertexSet::empty(n);
    while let Some(found) = find_induced_path_or_cycle(&residual) {
        let mut kill = VertexSet::empty(n);
        for &v in &found.vertices {
            committed.insert(v);
            kill.insert(v);
            kill.union_with(&residual.neighbor_set(v));
        }
        residual.delete(&kill);
    }
    let survivors = residual.alive_set();
    let mut raw = VertexSet::full(n);
    raw.subtract(&committed);
    raw.subtract(&survivors);

    // the committed and surviving vertices should induce paths and cycles only
    let kept_out = raw.complement();
    let mut structure = None;
    for v in kept_out.iter() {
        let d = g.neighbors(v).count_common(&kept_out);
        if d > 2 {
            structure = Some(Diagnostic::InducedDegreeAboveTwo { vertex: v, degree: d });
            break;
        }
    }
    finish_regular_sweep(g, raw, Method::Reg4, start, structure)
}

/// Defensive prune + verify stage shared by both regular-graph sweeps. A raw
/// sweep output that fails the co-secure check is recorded as a diagnostic
/// rather than silently repaired; the pruned set must verify or the run
/// aborts.
fn finish_regular_sweep(
    g: &Graph,
    raw: VertexSet,
    method: Method,
    start: Instant,
    structure: Option<Diagnostic>,
) -> Result<SolveResult, ApproxError> {
    let mut diagnostics = Vec::new();
    if let Some(d) = structure {
        diagnostics.push(d);
    }
    if !verify::satisfies(g, &raw, SetProperty::Csds) {
        diagnostics.push(Diagnostic::RawSweepNotCosecure {
            members: raw.to_vec(),
        });
    }
    let pruned = verify::prune_to_minimal(g, &raw, SetProperty::DoubleDominating).map_err(|e| {
        ApproxError::ResultNotCsds {
            detail: format!("sweep output is not double dominating: {e}"),
        }
    })?;
    let cert = verify::is_csds(g, &pruned);
    if !cert.verdict {
        return Err(ApproxError::ResultNotCsds {
            detail: format!("pruned sweep output rejected: {:?}", cert.reason),
        });
    }
    let mut result = SolveResult::found(SetProperty::Csds, pruned, method, start.elapsed());
    result.diagnostics = diagnostics;
    Ok(result)
}

/// An induced path, or an induced cycle when `closed` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathOrCycle {
    pub vertices: Vec<usize>,
    pub closed: bool,
}

/// Grows a maximal induced path in the residual graph, then closes it into
/// an induced cycle when a vertex adjacent to exactly both endpoints (and no
/// interior vertex) exists. Returns `None` iff the residual has no edge.
///
/// Growth is deterministic: start at the lowest vertex of positive residual
/// degree, extend at the tail and then the head, always with the lowest
/// residual neighbor adjacent to no other path vertex.
pub fn find_induced_path_or_cycle(residual: &Residual<'_>) -> Option<PathOrCycle> {
    let g = residual.graph();
    let start = residual.alive_vertices().find(|&v| residual.degree(v) >= 1)?;
    let mut path = vec![start];
    let mut on_path = VertexSet::empty(g.n());
    on_path.insert(start);

    let extension = |path: &[usize], end: usize, on_path: &VertexSet| {
        residual.neighbors(end).find(|&w| {
            !on_path.contains(w) && path.iter().all(|&p| p == end || !g.has_edge(p, w))
        })
    };

    loop {
        let tail = *path.last().expect("path is nonempty");
        match extension(&path, tail, &on_path) {
            Some(w) => {
                path.push(w);
                on_path.insert(w);
            }
            None => break,
        }
    }
    loop {
        let head = path[0];
        match extension(&path, head, &on_path) {
            Some(w) => {
                path.insert(0, w);
                on_path.insert(w);
            }
            None => break,
        }
    }

    let mut closed = false;
    if path.len() >= 2 {
        let head = path[0];
        let tail = *path.last().expect("path is nonempty");
        let interior = &path[1..path.len() - 1];
        let closer = residual.alive_vertices().find(|&w| {
            !on_path.contains(w)
                && g.has_edge(w, head)
                && g.has_edge(w, tail)
                && interior.iter().all(|&p| !g.has_edge(w, p))
        });
        if let Some(w) = closer {
            path.push(w);
            closed = true;
        }
    }
    Some(PathOrCycle {
        vertices: path,
        closed,
    })
}

/// Result of converting a co-secure dominating set into a double dominating
/// one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionOutcome {
    pub set: VertexSet,
    /// Vertices added by the fallback loop after the replacement-based
    /// augmentation; expected to stay 0.
    pub safety_net_additions: usize,
    /// Whether `|result| <= 2 * |input|` held.
    pub within_double_bound: bool,
}

/// Augments a co-secure dominating set `s` into a double dominating set of
/// size at most `2|s|`: every member with an external private neighbor
/// contributes its lowest replacement vertex; a greedy fallback then fixes
/// any vertex still short of two dominators, counting its additions.
pub fn csds_to_double_dominating(g: &Graph, s: &VertexSet) -> Result<ConversionOutcome, ApproxError> {
    if !verify::is_csds(g, s).verdict {
        return Err(ApproxError::NotCsds);
    }
    let mut augmented = s.clone();
    for u in s.iter() {
        let private = verify::epn(g, s, u).expect("u ranges over s");
        if private.is_empty() {
            continue;
        }
        let r = verify::replacements(g, s, u)
            .expect("u ranges over s")
            .min()
            .expect("co-secure members always have a replacement");
        augmented.insert(r);
    }

    let mut safety_net_additions = 0;
    loop {
        let deficient: Vec<usize> = g
            .vertices()
            .filter(|&v| !augmented.contains(v) && g.neighbors(v).count_common(&augmented) < 2)
            .collect();
        if deficient.is_empty() {
            break;
        }
        // lowest vertex whose addition reduces some deficiency
        let fix = g
            .vertices()
            .filter(|&w| !augmented.contains(w))
            .find(|&w| {
                deficient.contains(&w) || deficient.iter().any(|&v| g.has_edge(v, w))
            })
            .expect("a deficient vertex can always be added itself");
        augmented.insert(fix);
        safety_net_additions += 1;
    }

    debug_assert!(verify::satisfies(g, &augmented, SetProperty::DoubleDominating));
    let within_double_bound = augmented.len() <= 2 * s.len();
    Ok(ConversionOutcome {
        set: augmented,
        safety_net_additions,
        within_double_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_min;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges).unwrap()
    }

    fn vs(n: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_members(n, members.iter().copied())
    }

    fn c4() -> Graph {
        g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
    }

    fn c5() -> Graph {
        g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    }

    fn k4() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn k5() -> Graph {
        g(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    }

    fn k33() -> Graph {
        g(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
    }

    fn k44() -> Graph {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in 4..8 {
                edges.push((u, v));
            }
        }
        g(8, &edges)
    }

    #[test]
    fn greedy_traces_match_hand_runs() {
        let t = greedy_double_dominating_trace(&c4());
        assert_eq!(t.picks, vec![(0, 4), (2, 4)]);
        assert_eq!(t.final_set.to_vec(), vec![0, 2]);

        let t = greedy_double_dominating_trace(&k4());
        assert_eq!(t.picks, vec![(0, 5), (1, 3)]);
        assert_eq!(t.final_set.to_vec(), vec![0, 1]);

        let t = greedy_double_dominating_trace(&c5());
        assert_eq!(t.picks, vec![(0, 4), (2, 4), (3, 2)]);
        assert_eq!(t.final_set.to_vec(), vec![0, 2, 3]);
    }

    #[test]
    fn greedy_output_double_dominates() {
        for graph in [c4(), c5(), k4(), k33(), k44()] {
            let d = greedy_double_dominating(&graph);
            assert!(verify::is_double_dominating(&graph, &d).verdict);
        }
    }

    #[test]
    fn approx_csds_on_cycles() {
        let r = approx_csds(&c5()).unwrap();
        assert_eq!(r.set.as_ref().unwrap().to_vec(), vec![0, 2, 3]);
        assert_eq!(r.cardinality, Some(3));
        // optimum is 2, ratio 1.5
        assert_eq!(exact_min(&c5(), SetProperty::Csds, None).cardinality, Some(2));

        let r = approx_csds(&c4()).unwrap();
        assert_eq!(r.set.unwrap().to_vec(), vec![0, 2]);
    }

    #[test]
    fn approx_csds_rejects_low_degree() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            approx_csds(&p3).err(),
            Some(ApproxError::MinDegreeBelowTwo { vertex: 0, degree: 1 })
        );
    }

    #[test]
    fn cubic_sweep_on_small_graphs() {
        let r = approx_csds_cubic(&k4()).unwrap();
        assert_eq!(r.set.as_ref().unwrap().to_vec(), vec![2, 3]);
        assert!(r.diagnostics.is_empty());
        // ratio 2 against the optimum of 1
        assert_eq!(exact_min(&k4(), SetProperty::Csds, None).cardinality, Some(1));

        let r = approx_csds_cubic(&k33()).unwrap();
        assert_eq!(r.set.unwrap().to_vec(), vec![1, 2, 4, 5]);

        let c6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        assert!(matches!(
            approx_csds_cubic(&c6),
            Err(ApproxError::NotRegular { required: 3, .. })
        ));
    }

    #[test]
    fn cubic_sweep_handles_disconnected_input() {
        let mut edges = k4().edges();
        for (u, v) in k4().edges() {
            edges.push((u + 4, v + 4));
        }
        let two_k4 = g(8, &edges);
        let r = approx_csds_cubic(&two_k4).unwrap();
        let set = r.set.unwrap();
        assert!(verify::is_csds(&two_k4, &set).verdict);
        assert_eq!(set.to_vec(), vec![2, 3, 6, 7]);
    }

    #[test]
    fn induced_search_examples() {
        let k5g = k5();
        let r = k5g.residual();
        let found = find_induced_path_or_cycle(&r).unwrap();
        assert_eq!(found.vertices, vec![0, 1, 2]);
        assert!(found.closed);

        let c5g = c5();
        let r = c5g.residual();
        let found = find_induced_path_or_cycle(&r).unwrap();
        assert_eq!(found.vertices, vec![0, 1, 2, 3, 4]);
        assert!(found.closed);

        let empty = g(3, &[]);
        assert_eq!(find_induced_path_or_cycle(&empty.residual()), None);

        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let found = find_induced_path_or_cycle(&p4.residual()).unwrap();
        assert_eq!(found.vertices, vec![0, 1, 2, 3]);
        assert!(!found.closed);
    }

    #[test]
    fn induced_search_respects_invariants() {
        for graph in [k5(), c5(), k44(), k4()] {
            let r = graph.residual();
            let found = find_induced_path_or_cycle(&r).unwrap();
            let vs = &found.vertices;
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let cyclic_adjacent = j == i + 1 || (found.closed && i == 0 && j == vs.len() - 1);
                    assert_eq!(
                        graph.has_edge(vs[i], vs[j]),
                        cyclic_adjacent,
                        "{:?} positions {i},{j}",
                        found
                    );
                }
            }
            if found.closed {
                assert!(vs.len() >= 3);
            }
        }
    }

    #[test]
    fn quartic_sweep_on_small_graphs() {
        let r = approx_csds_quartic(&k5()).unwrap();
        assert_eq!(r.set.as_ref().unwrap().to_vec(), vec![3, 4]);
        assert_eq!(exact_min(&k5(), SetProperty::Csds, None).cardinality, Some(1));

        let r = approx_csds_quartic(&k44()).unwrap();
        let set = r.set.unwrap();
        assert!(verify::is_csds(&k44(), &set).verdict);
        assert!(3 * set.len() <= 2 * 8);

        assert!(matches!(
            approx_csds_quartic(&c5()),
            Err(ApproxError::NotRegular { required: 4, .. })
        ));
    }

    #[test]
    fn conversion_examples() {
        let out = csds_to_double_dominating(&c5(), &vs(5, &[0, 2])).unwrap();
        assert_eq!(out.set.to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(out.safety_net_additions, 0);
        assert!(out.within_double_bound);

        let out = csds_to_double_dominating(&k4(), &vs(4, &[0])).unwrap();
        assert_eq!(out.set.to_vec(), vec![0, 1]);
        assert!(out.within_double_bound);

        let out = csds_to_double_dominating(&c4(), &vs(4, &[0, 2])).unwrap();
        assert_eq!(out.set.to_vec(), vec![0, 2]);
        assert_eq!(out.safety_net_additions, 0);

        assert_eq!(
            csds_to_double_dominating(&c5(), &vs(5, &[0])),
            Err(ApproxError::NotCsds)
        );
    }

    #[test]
    fn ratio_guarantees_hold_on_small_corpus() {
        for graph in [c4(), c5(), k4(), k5(), k33(), k44()] {
            let profile = graph.degree_profile();
            let gamma2 = exact_min(&graph, SetProperty::DoubleDominating, None)
                .cardinality
                .unwrap();
            let greedy = greedy_double_dominating(&graph).len();
            let bound = (1.0 + ((profile.max + 2) as f64).ln()) * gamma2 as f64;
            assert!(greedy as f64 <= bound, "{graph:?}: {greedy} > {bound}");

            let gamma_cs = exact_min(&graph, SetProperty::Csds, None).cardinality.unwrap();
            let approx = approx_csds(&graph).unwrap().cardinality.unwrap();
            let bound = (2.0 + 2.0 * ((profile.max + 2) as f64).ln()) * gamma_cs as f64;
            assert!(approx as f64 <= bound);
        }
    }

    #[test]
    fn runs_are_deterministic() {
        for graph in [k33(), k44()] {
            let a = greedy_double_dominating(&graph);
            let b = greedy_double_dominating(&graph);
            assert_eq!(a, b);
        }
        assert_eq!(
            approx_csds_cubic(&k33()).unwrap().set,
            approx_csds_cubic(&k33()).unwrap().set
        );
    }
}
