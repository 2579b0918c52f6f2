//! Shared test support: an isomorphism-free enumerator of small connected
//! graphs, backed by a canonical-form routine (color refinement plus
//! individualization with twin pruning). Graphs are adjacency bitmasks,
//! one u64 per vertex; canonical keys pack the upper triangle of the
//! canonically relabeled adjacency matrix into a u64, so they are usable
//! for n <= 11.

use std::collections::BTreeSet;
use std::sync::{Mutex, OnceLock};

use cosecure::graph::Graph;

pub type AdjMasks = Vec<u64>;

/// Upper-triangle bit index of the pair `(i, j)` with `i < j`.
fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    debug_assert!(i < j && j < n);
    (i * n - i * (i + 1) / 2 + (j - i - 1)) as u32
}

pub fn to_graph(n: usize, adj: &[u64]) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("masks encode a simple graph")
}

fn from_key(n: usize, key: u64) -> AdjMasks {
    let mut adj = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if key >> pair_bit(n, i, j) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

/// Iterated neighborhood-color refinement. Color values are assigned by
/// sorting signatures, so they are invariant under relabeling.
fn refine(n: usize, adj: &[u64], colors: &mut [u32]) {
    loop {
        let mut signatures: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut around: Vec<u32> = (0..n)
                    .filter(|&w| adj[v] >> w & 1 == 1)
                    .map(|w| colors[w])
                    .collect();
                around.sort_unstable();
                (colors[v], around, v)
            })
            .collect();
        signatures.sort();
        let mut next = vec![0u32; n];
        let mut value = 0;
        for i in 0..n {
            if i > 0 && (signatures[i].0, &signatures[i].1) != (signatures[i - 1].0, &signatures[i - 1].1) {
                value += 1;
            }
            next[signatures[i].2] = value;
        }
        if next == colors {
            return;
        }
        colors.copy_from_slice(&next);
    }
}

fn key_of_discrete(n: usize, adj: &[u64], colors: &[u32]) -> u64 {
    // position of each vertex = rank of its (unique) color
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colors[v]);
    let mut key = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if adj[order[i]] >> order[j] & 1 == 1 {
                key |= 1 << pair_bit(n, i, j);
            }
        }
    }
    key
}

/// Vertices `u`, `v` are interchangeable when swapping them is an
/// automorphism fixing everything else.
fn twins(adj: &[u64], u: usize, v: usize) -> bool {
    adj[u] & !(1 << v) == adj[v] & !(1 << u)
}

fn search(n: usize, adj: &[u64], colors: &[u32], best: &mut Option<u64>) {
    let mut colors = colors.to_vec();
    refine(n, adj, &mut colors);

    let mut classes = vec![0usize; n];
    for &c in colors.iter() {
        classes[c as usize] += 1;
    }
    let target = (0..n).find(|&c| classes[c] > 1);
    let Some(target) = target else {
        let key = key_of_discrete(n, adj, &colors);
        if best.map_or(true, |b| key < b) {
            *best = Some(key);
        }
        return;
    };

    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
    let mut branch_reps: Vec<usize> = Vec::new();
    for &v in &cell {
        if !branch_reps.iter().any(|&u| twins(adj, u, v)) {
            branch_reps.push(v);
        }
    }
    for v in branch_reps {
        let mut split = vec![0u32; n];
        for w in 0..n {
            split[w] = colors[w] * 2 + 1;
        }
        split[v] -= 1;
        search(n, adj, &split, best);
    }
}

/// Canonical key of the isomorphism class of the graph.
pub fn canonical_key(n: usize, adj: &[u64]) -> u64 {
    assert!(n <= 11, "canonical keys are packed into 64 bits");
    let mut best = None;
    search(n, adj, &vec![0u32; n], &mut best);
    best.expect("search visits at least one leaf")
}

/// All connected graphs on exactly `n` vertices, one representative per
/// isomorphism class, in canonical labeling. Built once per process by
/// vertex augmentation: every connected graph arises by attaching a new
/// vertex to a nonempty subset of a connected graph one vertex smaller.
pub fn connected_graphs(n: usize) -> &'static [AdjMasks] {
    static LEVELS: OnceLock<Mutex<Vec<Vec<AdjMasks>>>> = OnceLock::new();
    static SLICES: OnceLock<Mutex<Vec<&'static [AdjMasks]>>> = OnceLock::new();
    assert!((1..=9).contains(&n), "enumeration supported for 1..=9 vertices");

    let slices = SLICES.get_or_init(|| Mutex::new(vec![&[]; 10]));
    {
        let guard = slices.lock().unwrap();
        if !guard[n].is_empty() {
            return guard[n];
        }
    }

    let levels = LEVELS.get_or_init(|| Mutex::new(vec![vec![vec![0u64]]]));
    let mut levels = levels.lock().unwrap();
    while levels.len() < n {
        let k = levels.len(); // building graphs on k + 1 vertices
        let mut keys = BTreeSet::new();
        for smaller in &levels[k - 1] {
            let mut adj = smaller.clone();
            adj.push(0);
            for mask in 1u64..1 << k {
                for v in 0..k {
                    if mask >> v & 1 == 1 {
                        adj[v] |= 1 << k;
                    }
                }
                adj[k] = mask;
                keys.insert(canonical_key(k + 1, &adj));
                for v in 0..k {
                    adj[v] &= !(1u64 << k);
                }
            }
        }
        levels.push(keys.into_iter().map(|key| from_key(k + 1, key)).collect());
    }

    let mut guard = slices.lock().unwrap();
    if guard[n].is_empty() {
        guard[n] = Box::leak(levels[n - 1].clone().into_boxed_slice());
    }
    guard[n]
}

/// Connected representatives for all sizes in `lo..=hi`, materialized as
/// library graphs.
pub fn connected_range(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi)
        .flat_map(|n| connected_graphs(n).iter().map(move |adj| to_graph(n, adj)))
        .collect()
}

pub fn min_degree(n: usize, adj: &[u64]) -> usize {
    (0..n).map(|v| adj[v].count_ones() as usize).min().unwrap_or(0)
}
