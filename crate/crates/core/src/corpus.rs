//! Deterministic graph corpora: all small connected graphs up to isomorphism,
//! plus seeded random and named ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::universes::Graph;

/// Largest vertex count for exhaustive generation.
pub const EXHAUSTIVE_MAX_VERTICES: usize = 6;

/// Seed of the random corpus.
pub const RANDOM_SEED: u64 = 0x746f_746b_6974;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusGraph {
    pub name: String,
    #[serde(skip)]
    pub graph: Graph,
    /// Position in the random stream, for seeded graphs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counter: Option<u64>,
}

impl CorpusGraph {
    fn new(name: impl Into<String>, graph: Graph) -> Self {
        CorpusGraph {
            name: name.into(),
            graph,
            counter: None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.graph.to_json();
        v["name"] = self.name.clone().into();
        if let Some(c) = self.counter {
            v["counter"] = c.into();
        }
        v
    }
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn from_bits(n: usize, pairs: &[(usize, usize)], bits: u32) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, &e)| e);
    Graph::with_labels(labels(n), edges).expect("pairs are in range")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            acc.push(v);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

fn connected_bits(n: usize, pairs: &[(usize, usize)], bits: u32) -> bool {
    if n == 0 {
        return false;
    }
    let mut adj = vec![0u32; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if bits >> i & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let (mut seen, mut frontier) = (1u32, 1u32);
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == (1 << n) - 1
}

/// Every connected graph on exactly `n` vertices, one per isomorphism class,
/// as the least edge code of its class, in increasing code order.
pub fn connected_graphs_on(n: usize) -> Result<Vec<Graph>> {
    if n > EXHAUSTIVE_MAX_VERTICES {
        return Err(Error::SizeBound {
            what: "vertices for exhaustive generation",
            limit: EXHAUSTIVE_MAX_VERTICES,
            got: n,
        });
    }
    let pairs = pair_list(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let maps: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    for bits in 0..1u32 << pairs.len() {
        if !connected_bits(n, &pairs, bits) {
            continue;
        }
        let canon = maps
            .iter()
            .map(|m| {
                m.iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &j)| acc | 1 << j)
            })
            .min()
            .unwrap();
        if canon == bits && seen.insert(canon) {
            out.push(from_bits(n, &pairs, bits));
        }
    }
    Ok(out)
}

/// Connected graphs on `1..=max_n` vertices, named `c<n>-<i>`.
pub fn connected_graphs(max_n: usize) -> Result<Vec<CorpusGraph>> {
    if max_n > EXHAUSTIVE_MAX_VERTICES {
        return Err(Error::SizeBound {
            what: "vertices for exhaustive generation",
            limit: EXHAUSTIVE_MAX_VERTICES,
            got: max_n,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (i, g) in connected_graphs_on(n)?.into_iter().enumerate() {
            out.push(CorpusGraph::new(format!("c{n}-{i}"), g));
        }
    }
    Ok(out)
}

/// `count` connected graphs on `n` vertices; graph `i` is the first
/// connected draw from the stream seeded with `seed + i`, each pair an edge
/// with probability one half.
pub fn random_connected_graphs(n: usize, count: usize, seed: u64) -> Result<Vec<CorpusGraph>> {
    if n == 0 || n > crate::universes::HARD_MAX_VERTICES {
        return Err(Error::Input(format!("cannot draw connected graphs on {n} vertices")));
    }
    let pairs = pair_list(n);
    Ok((0..count as u64)
        .map(|i| {
            let counter = seed.wrapping_add(i);
            let mut rng = ChaCha8Rng::seed_from_u64(counter);
            loop {
                let bits = pairs
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, _)| acc | (rng.gen_bool(0.5) as u64) << j);
                let g = Graph::with_labels(
                    labels(n),
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| bits >> j & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .expect("pairs are in range");
                if g.is_connected() {
                    let mut c = CorpusGraph::new(format!("r{n}-{i}"), g);
                    c.counter = Some(counter);
                    return c;
                }
            }
        })
        .collect())
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::with_labels(labels(n), edges.iter().map(|&(u, v)| (u - 1, v - 1))).expect("named graphs are well formed")
}

fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..=n).map(|i| (i, i % n + 1)).collect();
    build(n, &edges)
}

fn complete(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = pair_list(n).into_iter().map(|(u, v)| (u + 1, v + 1)).collect();
    build(n, &edges)
}

/// The Kneser graph on 2-subsets of five points without the subset {4, 5}.
fn petersen_minus_vertex() -> Graph {
    let subsets: Vec<(usize, usize)> = pair_list(5).into_iter().filter(|&p| p != (3, 4)).collect();
    let disjoint = |a: (usize, usize), b: (usize, usize)| a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1;
    let edges = pair_list(subsets.len())
        .into_iter()
        .filter(|&(i, j)| disjoint(subsets[i], subsets[j]));
    Graph::with_labels(labels(subsets.len()), edges).expect("pairs are in range")
}

/// Graphs with many automorphisms or several tangles.
pub fn named_graphs() -> Vec<CorpusGraph> {
    let k33: Vec<(usize, usize)> = (1..=3).flat_map(|u| (4..=6).map(move |v| (u, v))).collect();
    let cube = [
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 1),
        (5, 6),
        (6, 7),
        (7, 8),
        (8, 5),
        (1, 5),
        (2, 6),
        (3, 7),
        (4, 8),
    ];
    let two_k4_bridge = [
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 4),
        (3, 4),
        (5, 6),
        (5, 7),
        (5, 8),
        (6, 7),
        (6, 8),
        (7, 8),
        (4, 5),
    ];
    let chordal_fan = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (3, 4), (4, 5)];
    let two_holes = [(1, 2), (2, 3), (3, 4), (4, 1), (3, 5), (5, 6), (6, 7), (7, 4)];
    vec![
        CorpusGraph::new("K4", complete(4)),
        CorpusGraph::new("C5", cycle(5)),
        CorpusGraph::new("C6", cycle(6)),
        CorpusGraph::new("K3,3", build(6, &k33)),
        CorpusGraph::new("petersen-minus-vertex", petersen_minus_vertex()),
        CorpusGraph::new("cube", build(8, &cube)),
        CorpusGraph::new("two-K4-bridge", build(8, &two_k4_bridge)),
        CorpusGraph::new("fan", build(5, &chordal_fan)),
        CorpusGraph::new("two-holes", build(7, &two_holes)),
    ]
}

/// The acceptance corpus: all connected graphs on at most six vertices,
/// fifty seeded graphs on seven, and the named graphs.
pub fn standard_corpus() -> Vec<CorpusGraph> {
    let mut out = connected_graphs(6).expect("six is within the exhaustive bound");
    out.extend(random_connected_graphs(7, 50, RANDOM_SEED).expect("seven vertices is valid"));
    out.extend(named_graphs());
    out
}
