use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sepsys::set_universe::{full_mask, iter_bits};
use crate::sepsys::Mask;

/// Hard ceiling on ground-set size; tangle checks pack vertices and edges
/// into 128 bits.
pub const HARD_MAX_VERTICES: usize = 14;

/// Finite simple graph on at most [`HARD_MAX_VERTICES`] vertices. Vertex `i`
/// is bit `i` of every [`Mask`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Mask>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<serde_json::Value>,
    edges: Vec<(serde_json::Value, serde_json::Value)>,
}

fn label_of(v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Input(format!(
            "vertex label must be a string or number, got {other}"
        ))),
    }
}

/// Numeric order when every label is an integer, string order otherwise.
pub(crate) fn sort_labels(labels: &mut [String]) {
    if labels.iter().all(|l| l.parse::<i64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<i64>().unwrap());
    } else {
        labels.sort();
    }
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_labels((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn with_labels(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n > HARD_MAX_VERTICES {
            return Err(Error::SizeBound {
                what: "graph vertices",
                limit: HARD_MAX_VERTICES,
                got: n,
            });
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::Input("duplicate vertex label".into()));
        }
        let mut adj = vec![0; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!("edge ({u},{v}) references a missing vertex")));
            }
            if u == v {
                return Err(Error::Input(format!("loop at vertex {}", labels[u])));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { labels, adj })
    }

    /// Builds a graph from labelled edges; vertices are put in canonical order.
    pub fn from_labelled(
        vertices: impl IntoIterator<Item = String>,
        edges: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self> {
        let edges: Vec<(String, String)> = edges.into_iter().collect();
        let mut set: BTreeSet<String> = vertices.into_iter().collect();
        for (u, v) in &edges {
            set.insert(u.clone());
            set.insert(v.clone());
        }
        let mut labels: Vec<String> = set.into_iter().collect();
        sort_labels(&mut labels);
        let pos = |l: &String| labels.iter().position(|x| x == l).unwrap();
        let idx: Vec<(usize, usize)> = edges.iter().map(|(u, v)| (pos(u), pos(v))).collect();
        Graph::with_labels(labels.clone(), idx)
    }

    /// Edge-list text with one `u v` pair per line; `#` starts a comment.
    /// A line holding a single label declares an isolated vertex.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tok: Vec<&str> = line.split_whitespace().collect();
            match tok.as_slice() {
                [v] => vertices.push(v.to_string()),
                [u, v] => edges.push((u.to_string(), v.to_string())),
                _ => return Err(Error::Input(format!("line {}: expected `u v`", no + 1))),
            }
        }
        Graph::from_labelled(vertices, edges)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        let vertices = doc.vertices.iter().map(label_of).collect::<Result<Vec<_>>>()?;
        let edges = doc
            .edges
            .iter()
            .map(|(u, v)| Ok((label_of(u)?, label_of(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::from_labelled(vertices, edges)
    }

    /// Accepts either input format.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_edge_list(text)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.labels,
            "edges": self.edges().iter().map(|&(u, v)| [&self.labels[u], &self.labels[v]]).collect::<Vec<_>>(),
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_mask(&self) -> Mask {
        full_mask(self.n())
    }

    pub fn neighbours(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| iter_bits(self.adj[u] & !full_mask(u + 1)).map(move |v| (u, v)))
            .collect()
    }

    pub fn is_clique(&self, set: Mask) -> bool {
        iter_bits(set).all(|v| self.adj[v] & set == set & !(1 << v))
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component(&self, start: usize, within: Mask) -> Mask {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let next = iter_bits(frontier).fold(0, |acc, v| acc | self.adj[v]) & within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// The subgraph `G[A]` packed as vertex bits followed by edge bits.
    pub(crate) fn cover_mask(&self, a: Mask, edge_list: &[(usize, usize)]) -> u128 {
        let n = self.n();
        let mut m = a as u128;
        for (k, &(u, v)) in edge_list.iter().enumerate() {
            if a >> u & 1 == 1 && a >> v & 1 == 1 {
                m |= 1u128 << (n + k);
            }
        }
        m
    }

    pub(crate) fn full_cover(&self, edge_count: usize) -> u128 {
        let bits = self.n() + edge_count;
        if bits >= 128 {
            !0
        } else {
            (1u128 << bits) - 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_comments_and_isolated_vertices() {
        let g = Graph::parse_edge_list("# path\n1 2\n2 3 # tail\n\n7\n").unwrap();
        assert_eq!(g.labels(), ["1", "2", "3", "7"]);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert!(!g.is_connected());
    }

    #[test]
    fn json_and_edge_list_agree() {
        let a = Graph::parse(r#"{"vertices": [3, 1, 2], "edges": [[1, 2], ["2", 3]]}"#).unwrap();
        let b = Graph::parse("1 2\n2 3\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_loops_and_bad_lines() {
        assert!(Graph::parse_edge_list("1 1\n").is_err());
        assert!(Graph::parse_edge_list("1 2 3\n").is_err());
    }

    #[test]
    fn rejects_too_many_vertices() {
        let err = Graph::new(HARD_MAX_VERTICES + 1, []).unwrap_err();
        assert!(matches!(err, Error::SizeBound { .. }));
    }

    #[test]
    fn clique_check() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(g.is_clique(0));
        assert!(g.is_clique(0b0011));
        assert!(!g.is_clique(0b0101));
    }
}
