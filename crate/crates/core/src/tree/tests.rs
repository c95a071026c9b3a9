use proptest::prelude::*;

use super::*;
use crate::corpus::connected_graphs;
use crate::profiles::{enumerate_profiles, maximal_profiles, ProfileKind, SearchLimits};
use crate::universes::{enumerate_graph_separations, restrict_sk, Limits};

const P4: &str = "a b\nb c\nc d\n";
const TWO_K4: &str = "a b\na c\na d\nb c\nb d\nc d\ne f\ne g\ne h\nf g\nf h\ng h\nd e\n";

fn setup(text: &str) -> (Graph, SetUniverse) {
    let g = Graph::parse_edge_list(text).unwrap();
    let u = enumerate_graph_separations(&g, &Limits::default()).unwrap();
    (g, u)
}

fn sep(g: &Graph, u: &SetUniverse, a: &[&str], b: &[&str]) -> SepId {
    let mask = |side: &[&str]| {
        side.iter()
            .map(|l| 1 << g.labels().iter().position(|x| x == l).unwrap())
            .fold(0, |acc, m: Mask| acc | m)
    };
    u.find(mask(a), mask(b)).unwrap().id()
}

fn all_tangles(g: &Graph, u: &SetUniverse) -> Vec<Orientation> {
    let mut out = Vec::new();
    for k in 1..=g.n() + 1 {
        let t = enumerate_profiles(
            u,
            &restrict_sk(u, k as f64),
            ProfileKind::GraphTangle,
            Some(g),
            &SearchLimits::default(),
        )
        .unwrap();
        if t.is_empty() {
            break;
        }
        out.extend(t);
    }
    out
}

#[test]
fn tree_sets() {
    let (g, u) = setup(P4);
    assert!(is_tree_set(&u, &[]));
    let s = sep(&g, &u, &["a", "b"], &["b", "c", "d"]);
    assert!(is_tree_set(&u, &[s]));
    let t = sep(&g, &u, &["a", "b", "c"], &["c", "d"]);
    assert!(is_tree_set(&u, &[s, t]));
    let trivial = sep(&g, &u, &["b"], &["a", "b", "c", "d"]);
    assert!(!is_tree_set(&u, &[s, trivial]));
    assert!(is_tree_set(&u, &[trivial]));
    let td = build_tree_decomposition(&g, &u, &[s, trivial]).unwrap();
    assert_eq!(td.flagged, vec![trivial]);
    assert_eq!(td.len(), 3);
}

#[test]
fn empty_set_gives_one_bag() {
    let (g, u) = setup(P4);
    let td = build_tree_decomposition(&g, &u, &[]).unwrap();
    assert_eq!(td.bags, vec![g.vertex_mask()]);
    assert!(td.edges.is_empty());
    assert!(td.induced_separations().is_empty());
}

#[test]
fn path_with_one_separation() {
    let (g, u) = setup(P4);
    let s = sep(&g, &u, &["a", "b"], &["b", "c", "d"]);
    let td = build_tree_decomposition(&g, &u, &[s]).unwrap();
    let mut bags = td.bags.clone();
    bags.sort_unstable();
    assert_eq!(bags, vec![0b0011, 0b1110]);
    assert_eq!(td.edges.len(), 1);
    assert_eq!(td.induced_separations(), vec![(0b0011, 0b1110)]);
    assert_eq!(td.induced_ids(&u).unwrap(), vec![s]);
    assert!(td.flagged.is_empty());
}

#[test]
fn path_with_a_chain() {
    let (g, u) = setup(P4);
    let s = sep(&g, &u, &["a", "b"], &["b", "c", "d"]);
    let t = sep(&g, &u, &["a", "b", "c"], &["c", "d"]);
    let td = build_tree_decomposition(&g, &u, &[t, s]).unwrap();
    assert_eq!(td.len(), 3);
    let mut bags = td.bags.clone();
    bags.sort_unstable();
    assert_eq!(bags, vec![0b0011, 0b0110, 0b1100]);
}

#[test]
fn rejects_crossing_and_foreign_input() {
    let (g, u) = setup("a b\nb c\nc d\nd a\n");
    let s = sep(&g, &u, &["a", "b", "c"], &["a", "c", "d"]);
    let t = sep(&g, &u, &["a", "b", "d"], &["b", "c", "d"]);
    assert!(matches!(
        build_tree_decomposition(&g, &u, &[s, t]),
        Err(Error::NotNested(..))
    ));
    assert!(matches!(
        build_tree_decomposition(&g, &u, &[SepId(u.size() as u32)]),
        Err(Error::ForeignSeparation(_))
    ));
}

#[test]
fn self_inverse_separation_is_rejected() {
    let (g, u) = setup(P4);
    let all = g.vertex_mask();
    let s = u.find(all, all).unwrap().id();
    assert!(matches!(build_tree_decomposition(&g, &u, &[s]), Err(Error::Input(_))));
}

#[test]
fn validation_catches_broken_decompositions() {
    let (g, _) = setup(P4);
    assert!(TreeDecomposition::new(&g, vec![0b0011, 0b1110], vec![(0, 1)]).is_ok());
    // edge c-d uncovered
    assert!(TreeDecomposition::new(&g, vec![0b0011, 0b0110, 0b1000], vec![(0, 1), (1, 2)]).is_err());
    // b occurs at both ends but not in the middle
    assert!(TreeDecomposition::new(&g, vec![0b0011, 0b0100, 0b1110], vec![(0, 1), (1, 2)]).is_err());
    // not a tree
    assert!(TreeDecomposition::new(&g, vec![0b0011, 0b1110], vec![(0, 1), (1, 0)]).is_err());
}

#[test]
fn two_k4s_are_displayed_only_with_both_bridge_separations() {
    let (g, u) = setup(TWO_K4);
    let tangles = maximal_profiles(&all_tangles(&g, &u));
    assert_eq!(tangles.len(), 3);
    let left = sep(&g, &u, &["a", "b", "c", "d"], &["d", "e", "f", "g", "h"]);
    let right = sep(&g, &u, &["a", "b", "c", "d", "e"], &["e", "f", "g", "h"]);
    let td = build_tree_decomposition(&g, &u, &[left, right]).unwrap();
    assert_eq!(td.len(), 3);
    assert!(td.bags.contains(&0b0000_1111) && td.bags.contains(&0b1111_0000));
    assert!(displays(&u, &td, &tangles).unwrap());
    let partial = build_tree_decomposition(&g, &u, &[left]).unwrap();
    assert!(!displays(&u, &partial, &tangles).unwrap());
    assert!(displays(&u, &partial, &tangles[..1]).unwrap());
}

#[test]
fn json_and_dot() {
    let (g, u) = setup(P4);
    let s = sep(&g, &u, &["a", "b"], &["b", "c", "d"]);
    let td = build_tree_decomposition(&g, &u, &[s]).unwrap();
    let v = td.to_json();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(TreeDecomposition::from_json(&g, &v).unwrap(), td);
    let dot = td.to_dot();
    assert!(dot.contains("label=\"a b\"") && dot.contains("--"));
    let broken = serde_json::json!({"nodes": [{"id": 0, "bag": ["a", "b"]}], "edges": []});
    assert!(TreeDecomposition::from_json(&g, &broken).is_err());
}

/// Greedy nested subset of the separations of a graph, in a shuffled order.
fn greedy_nested(u: &SetUniverse, order: &[usize]) -> Vec<SepId> {
    let mut out: Vec<SepId> = Vec::new();
    for &i in order {
        let s = SepId(i as u32);
        if out.iter().all(|&t| u.nested(s, t)) {
            out.push(s);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn build_then_induce_is_the_identity(
        pick in 0usize..1000,
        keys in proptest::collection::vec(any::<u32>(), 64),
        proper in any::<bool>(),
    ) {
        let corpus = connected_graphs(5).unwrap();
        let g = &corpus[pick % corpus.len()].graph;
        let u = enumerate_graph_separations(g, &Limits::default()).unwrap();
        let mut order: Vec<usize> = (0..u.size()).collect();
        order.sort_by_key(|&i| keys[i % keys.len()].rotate_left(i as u32));
        order.retain(|&i| {
            let o = OrientedSep::new(SepId(i as u32), false);
            let (a, b) = u.sides(o);
            a != b && (!proper || (!u.leq(o, u.invert(o)) && !u.leq(u.invert(o), o)))
        });
        let n = greedy_nested(&u, &order);
        let td = match build_tree_decomposition(g, &u, &n) {
            Ok(td) => td,
            Err(Error::InvalidDecomposition(_)) if !proper => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{n:?} on {:?}: {e}", g.edges()))),
        };
        let mut sorted = n.clone();
        sorted.sort_unstable();
        prop_assert_eq!(td.induced_ids(&u).unwrap(), sorted);
        prop_assert_eq!(td.len(), n.len() + 1);
    }
}
