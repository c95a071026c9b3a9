use super::{Graph, Limits};
use crate::error::Result;

/// All adjacency-preserving vertex permutations, as images `perm[v]`, in
/// lexicographic order.
pub fn automorphisms(g: &Graph, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    limits.check("graph vertices", g.n())?;
    let n = g.n();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(g, 0, &mut perm, &mut used, &mut out);
    Ok(out)
}

fn extend(g: &Graph, v: usize, perm: &mut [usize], used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if v == perm.len() {
        out.push(perm.to_vec());
        return;
    }
    for w in 0..perm.len() {
        if used[w] || g.degree(w) != g.degree(v) {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(perm[u], w)) {
            continue;
        }
        perm[v] = w;
        used[w] = true;
        extend(g, v + 1, perm, used, out);
        used[w] = false;
    }
    perm[v] = usize::MAX;
}

/// Rotations followed by reflections of `n` points in cyclic order.
pub fn dihedral_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let rotations = (0..n).map(|r| (0..n).map(|i| (i + r) % n).collect::<Vec<_>>());
    let reflections = (0..n).map(|r| (0..n).map(|i| (r + n - i) % n).collect::<Vec<_>>());
    let mut all: Vec<Vec<usize>> = rotations.chain(reflections).collect();
    let mut seen = std::collections::BTreeSet::new();
    all.retain(|p| seen.insert(p.clone()));
    all
}
