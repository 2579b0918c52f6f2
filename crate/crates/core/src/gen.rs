//! Graph family and random instance generators. Everything is
//! deterministic given its parameters and seed, so instances quoted in
//! reports can be replayed exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no {degree}-regular graph on {n} vertices: n*d must be even")]
    OddDegreeSum { n: usize, degree: usize },
    #[error("pairing rejected {attempts} times; giving up")]
    PairingExhausted { attempts: usize },
}

/// Named graph families with canonical labelings: paths and cycles label
/// consecutively, the wheel hub is the last vertex, multipartite parts are
/// contiguous blocks in the given order, and the star center is vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    CompleteMultipartite { parts: Vec<usize> },
    Wheel { n: usize },
    Star { n: usize },
}

pub fn family(spec: &Family) -> Result<Graph, GenError> {
    let bad = |msg: &str| Err(GenError::InvalidParameter(msg.to_string()));
    match spec {
        Family::Path { n } => {
            if *n < 1 {
                return bad("path needs n >= 1");
            }
            let edges: Vec<_> = (1..*n).map(|v| (v - 1, v)).collect();
            Ok(Graph::new(*n, &edges).expect("path is simple"))
        }
        Family::Cycle { n } => {
            if *n < 3 {
                return bad("cycle needs n >= 3");
            }
            let mut edges: Vec<_> = (1..*n).map(|v| (v - 1, v)).collect();
            edges.push((0, n - 1));
            Ok(Graph::new(*n, &edges).expect("cycle is simple"))
        }
        Family::Complete { n } => {
            if *n < 1 {
                return bad("complete graph needs n >= 1");
            }
            Ok(complete_multipartite(&vec![1; *n]))
        }
        Family::CompleteBipartite { a, b } => {
            if *a < 1 || *b < 1 {
                return bad("complete bipartite graph needs both part sizes >= 1");
            }
            Ok(complete_multipartite(&[*a, *b]))
        }
        Family::CompleteMultipartite { parts } => {
            if parts.len() < 2 {
                return bad("complete multipartite graph needs at least 2 parts");
            }
            if parts.iter().any(|&p| p < 1) {
                return bad("complete multipartite graph needs positive part sizes");
            }
            Ok(complete_multipartite(parts))
        }
        Family::Wheel { n } => {
            if *n < 4 {
                return bad("wheel needs n >= 4");
            }
            let rim = n - 1;
            let mut edges: Vec<_> = (1..rim).map(|v| (v - 1, v)).collect();
            edges.push((0, rim - 1));
            for v in 0..rim {
                edges.push((v, rim));
            }
            Ok(Graph::new(*n, &edges).expect("wheel is simple"))
        }
        Family::Star { n } => {
            if *n < 2 {
                return bad("star needs n >= 2");
            }
            let edges: Vec<_> = (1..*n).map(|v| (0, v)).collect();
            Ok(Graph::new(*n, &edges).expect("star is simple"))
        }
    }
}

fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut block = vec![0usize; n];
    let mut v = 0;
    for (i, &p) in parts.iter().enumerate() {
        for _ in 0..p {
            block[v] = i;
            v += 1;
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            if block[u] != block[w] {
                edges.push((u, w));
            }
        }
    }
    Graph::new(n, &edges).expect("multipartite is simple")
}

const PAIRING_ATTEMPTS: usize = 2000;

/// Random d-regular graph by the pairing model: d stubs per vertex are
/// shuffled and paired, and the pairing is rejected until it is simple.
/// Deterministic for a fixed seed.
pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph, GenError> {
    if degree >= n {
        return Err(GenError::InvalidParameter(format!(
            "degree {degree} needs more than {n} vertices"
        )));
    }
    if n * degree % 2 == 1 {
        return Err(GenError::OddDegreeSum { n, degree });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(degree)).collect();
    for _ in 0..PAIRING_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(n * degree / 2);
        let mut ok = true;
        'pairing: for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || edges.contains(&(u.min(v), u.max(v))) {
                ok = false;
                break 'pairing;
            }
            edges.push((u.min(v), u.max(v)));
        }
        if ok {
            return Ok(Graph::new(n, &edges).expect("pairing produced a simple graph"));
        }
    }
    Err(GenError::PairingExhausted {
        attempts: PAIRING_ATTEMPTS,
    })
}

/// Random graph with minimum degree 2: a binomial random graph patched
/// deterministically so every vertex reaches degree 2 (edges to the nearest
/// non-neighbors by identifier distance) and every component has at least 3
/// vertices. Deterministic for fixed `(n, p, seed)`.
pub fn random_min_degree2(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter("need n >= 3".to_string()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(GenError::InvalidParameter(
            "edge probability must be strictly between 0 and 1".to_string(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    // patch low degrees with the nearest non-neighbors by identifier
    for u in 0..n {
        while adj[u].iter().filter(|&&e| e).count() < 2 {
            let w = (0..n)
                .filter(|&w| w != u && !adj[u][w])
                .min_by_key(|&w| (w.abs_diff(u), w))
                .expect("n >= 3 leaves a non-neighbor available");
            adj[u][w] = true;
            adj[w][u] = true;
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u][v] {
                edges.push((u, v));
            }
        }
    }
    let mut graph = Graph::new(n, &edges).expect("patching keeps the graph simple");
    // merge any undersized component into the rest; unreachable once every
    // degree is at least 2, but kept as a guarantee
    loop {
        let comps = graph.connected_components();
        let Some(small) = comps.iter().find(|c| c.len() < 3) else {
            break;
        };
        let inside = small.min().expect("component is nonempty");
        let outside = graph
            .vertices()
            .find(|&v| !small.contains(v))
            .expect("n >= 3 leaves another component");
        edges.push((inside.min(outside), inside.max(outside)));
        graph = Graph::new(n, &edges).expect("merge keeps the graph simple");
    }
    Ok(graph)
}
