//! Tree sets and tree-decompositions of graphs built from nested sets of
//! graph separations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::{undistinguished_pair, Orientation};
use crate::sepsys::set_universe::iter_bits;
use crate::sepsys::{crossing_pair, trivial_witness, Mask, OrientedSep, SepId, SetUniverse, Universe};
use crate::universes::Graph;
use crate::SCHEMA;

/// Pairwise nested with no element trivial in the set.
pub fn is_tree_set<U: Universe + ?Sized>(u: &U, seps: &[SepId]) -> bool {
    crossing_pair(u, seps).is_none()
        && seps.iter().all(|&s| {
            u.orientations(s)
                .into_iter()
                .all(|o| trivial_witness(u, o, seps).is_none())
        })
}

/// A tree with a bag of vertices at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    labels: Vec<String>,
    pub bags: Vec<Mask>,
    /// `(a, b)`: the separation induced by this edge has `a`'s side first.
    pub edges: Vec<(usize, usize)>,
    /// Members of the source set with a small or trivial orientation.
    pub flagged: Vec<SepId>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    id: usize,
    bag: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct TreeDoc {
    #[serde(default)]
    schema: String,
    nodes: Vec<NodeDoc>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(g: &Graph, bags: Vec<Mask>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let td = TreeDecomposition {
            labels: g.labels().to_vec(),
            bags,
            edges,
            flagged: Vec::new(),
        };
        td.validate(g)?;
        Ok(td)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Checks for a tree whose bags cover every edge, each vertex lying in a nonempty connected subtree.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        let n = self.bags.len();
        if n == 0 {
            return bad("no nodes".into());
        }
        if self.edges.len() + 1 != n {
            return bad(format!("{} nodes but {} edges", n, self.edges.len()));
        }
        if let Some(&(a, b)) = self.edges.iter().find(|&&(a, b)| a >= n || b >= n || a == b) {
            return bad(format!("edge ({a}, {b}) is not between two distinct nodes"));
        }
        if self.component(0, None).len() != n {
            return bad("tree is not connected".into());
        }
        let covered = self.bags.iter().fold(0, |acc, &b| acc | b);
        if covered != g.vertex_mask() || self.bags.iter().any(|&b| b & !g.vertex_mask() != 0) {
            return bad("bags do not cover exactly the vertices".into());
        }
        for (x, y) in g.edges() {
            let e = 1 << x | 1 << y;
            if !self.bags.iter().any(|&b| b & e == e) {
                return bad(format!("edge {}-{} lies in no bag", self.labels[x], self.labels[y]));
            }
        }
        for v in 0..g.n() {
            let holding: Vec<usize> = (0..n).filter(|&t| self.bags[t] >> v & 1 == 1).collect();
            let reach = self.component(holding[0], Some(1 << v));
            if reach.len() != holding.len() {
                return bad(format!("nodes holding {} do not form a subtree", self.labels[v]));
            }
        }
        Ok(())
    }

    /// Nodes reachable from `start` without crossing `cut`, staying inside
    /// bags that meet `within` if given.
    fn reach(&self, start: usize, cut: Option<usize>, within: Option<Mask>) -> Vec<usize> {
        let mut seen = vec![false; self.bags.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(t) = stack.pop() {
            out.push(t);
            for (i, &(a, b)) in self.edges.iter().enumerate() {
                if Some(i) == cut {
                    continue;
                }
                let next = if a == t {
                    b
                } else if b == t {
                    a
                } else {
                    continue;
                };
                if !seen[next] && within.is_none_or(|m| self.bags[next] & m != 0) {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        out
    }

    fn component(&self, start: usize, within: Option<Mask>) -> Vec<usize> {
        self.reach(start, None, within)
    }

    /// `(U_a, U_b)` per tree edge: the union of the bags on each side.
    pub fn induced_separations(&self) -> Vec<(Mask, Mask)> {
        let union = |nodes: Vec<usize>| nodes.into_iter().fold(0, |acc, t| acc | self.bags[t]);
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| (union(self.reach(a, Some(i), None)), union(self.reach(b, Some(i), None))))
            .collect()
    }

    /// Induced separations as members of `u`, sorted and deduplicated.
    pub fn induced_ids(&self, u: &SetUniverse) -> Result<Vec<SepId>> {
        let mut out = self
            .induced_separations()
            .into_iter()
            .map(|(a, b)| {
                u.find(a, b).map(OrientedSep::id).ok_or_else(|| {
                    Error::InvalidDecomposition(format!(
                        "induced separation ({}, {}) is not in the universe",
                        u.format_mask(a),
                        u.format_mask(b)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn bag_labels(&self, bag: Mask) -> Vec<String> {
        iter_bits(bag).map(|v| self.labels[v].clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = TreeDoc {
            schema: SCHEMA.into(),
            nodes: self
                .bags
                .iter()
                .enumerate()
                .map(|(id, &b)| NodeDoc {
                    id,
                    bag: self.bag_labels(b),
                })
                .collect(),
            edges: self.edges.clone(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    /// Reads a decomposition of `g` and validates it.
    pub fn from_json(g: &Graph, value: &serde_json::Value) -> Result<Self> {
        let doc: TreeDoc = serde_json::from_value(value.clone())?;
        let mut bags = vec![0; doc.nodes.len()];
        for node in &doc.nodes {
            let slot = bags
                .get_mut(node.id)
                .ok_or_else(|| Error::Input(format!("node id {} is out of range", node.id)))?;
            for l in &node.bag {
                let v = g
                    .labels()
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| Error::Input(format!("unknown vertex {l}")))?;
                *slot |= 1 << v;
            }
        }
        TreeDecomposition::new(g, bags, doc.edges)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph decomposition {\n  node [shape=box];\n");
        for (i, &b) in self.bags.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", self.bag_labels(b).join(" "));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// The other orientation of `y` pointing towards `x`, if exactly one does;
/// otherwise the least of those that do.
fn towards(u: &SetUniverse, y: SepId, x: SepId) -> Option<OrientedSep> {
    let [x0, x1] = u.orientations(x);
    u.orientations(y).into_iter().find(|&w| u.lt(w, x0) || u.lt(w, x1))
}

/// A tree-decomposition of `g` whose induced separations are exactly `seps`.
///
/// Each node is an orientation of `seps` pointing at one location, namely
/// the head of some `x⃗` with every other member oriented towards `x`; its
/// bag is the intersection of the big sides.
pub fn build_tree_decomposition(g: &Graph, u: &SetUniverse, seps: &[SepId]) -> Result<TreeDecomposition> {
    let mut seps = seps.to_vec();
    seps.sort_unstable();
    seps.dedup();
    for &s in &seps {
        if !u.contains(s) {
            return Err(Error::ForeignSeparation(s));
        }
        let (a, b) = u.sides(OrientedSep::new(s, false));
        if !crate::universes::is_graph_separation(g, a, b) {
            return Err(Error::Input(format!(
                "{} is not a separation of the graph",
                u.format_sep(s)
            )));
        }
        if a == b {
            return Err(Error::Input(format!("{} is its own inverse", u.format_sep(s))));
        }
    }
    if let Some((a, b)) = crossing_pair(u, &seps) {
        return Err(Error::NotNested(a, b));
    }
    let flagged: Vec<SepId> = seps
        .iter()
        .copied()
        .filter(|&s| {
            u.orientations(s)
                .into_iter()
                .any(|o| u.leq(o, u.invert(o)) || trivial_witness(u, o, &seps).is_some())
        })
        .collect();

    let mut nodes: Vec<Vec<OrientedSep>> = Vec::new();
    let mut node_of = |o: Vec<OrientedSep>| match nodes.iter().position(|n| *n == o) {
        Some(i) => i,
        None => {
            nodes.push(o);
            nodes.len() - 1
        }
    };
    let mut edges = Vec::new();
    for &x in &seps {
        let mut ends = [0; 2];
        for (slot, xo) in u.orientations(x).into_iter().enumerate() {
            let mut o = vec![xo];
            for &y in &seps {
                if y != x {
                    o.push(towards(u, y, x).ok_or(Error::NotNested(x, y))?);
                }
            }
            o.sort_unstable();
            ends[slot] = node_of(o);
        }
        // the stored orientation (A, B) points at ends[0]; its A side is at ends[1]
        edges.push((ends[1], ends[0]));
    }
    if nodes.is_empty() {
        nodes.push(Vec::new());
    }
    let bags = nodes
        .iter()
        .map(|o| o.iter().fold(g.vertex_mask(), |acc, &w| acc & u.sides(w).1))
        .collect();
    let mut td = TreeDecomposition::new(g, bags, edges)?;
    td.flagged = flagged;
    let induced = td.induced_ids(u)?;
    if induced != seps {
        return Err(Error::InvalidDecomposition(format!(
            "induced separations {induced:?} differ from the input {seps:?}"
        )));
    }
    Ok(td)
}

/// Every distinguishable pair of `tangles` is distinguished at least order
/// by some separation induced by `td`.
pub fn displays(u: &SetUniverse, td: &TreeDecomposition, tangles: &[Orientation]) -> Result<bool> {
    let induced = td.induced_ids(u)?;
    Ok(undistinguished_pair(u, &induced, tangles).is_none())
}

#[cfg(test)]
mod tests;
