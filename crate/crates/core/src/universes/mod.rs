//! Concrete universes: separations of a graph, clique separations,
//! bipartitions of a set with a pluggable order function, and circle
//! separations; plus order slices `S_k` and compatible sequences.

mod automorphism;
mod circle;
mod graph;
mod sequence;

pub use automorphism::{automorphisms, dihedral_permutations};
pub use circle::{circle_universe, is_circle_mask, CircleGround, CircleSystem};
pub use graph::{Graph, HARD_MAX_VERTICES};
pub use sequence::{
    compatibility_violation, is_compatible_sequence, order_slices, OrderedFamilySequence, SequenceViolation,
};

use crate::error::{Error, Result};
use crate::sepsys::set_universe::{full_mask, iter_bits};
use crate::sepsys::{Mask, OrderFn, OrientedSep, SepId, SetUniverse, SubSystem, Universe};

/// Size bounds for enumeration. Exceeding a bound is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_vertices: 10 }
    }
}

impl Limits {
    pub fn check(&self, what: &'static str, got: usize) -> Result<()> {
        let limit = self.max_vertices.min(HARD_MAX_VERTICES);
        if got > limit {
            Err(Error::SizeBound { what, limit, got })
        } else {
            Ok(())
        }
    }
}

/// All separations `(A, B)` of `g`: `A ∪ B = V` and no edge between `A∖B`
/// and `B∖A`, with order `|A ∩ B|`.
pub fn enumerate_graph_separations(g: &Graph, limits: &Limits) -> Result<SetUniverse> {
    limits.check("graph vertices", g.n())?;
    let n = g.n();
    let all = full_mask(n);
    let mut nbr = vec![0 as Mask; 1 << n];
    for l in 1..(1usize << n) {
        let v = l.trailing_zeros() as usize;
        nbr[l] = nbr[l & (l - 1)] | g.neighbours(v);
    }
    let mut pairs = Vec::new();
    for l in 0..=all {
        let rest = all & !l;
        // separator x ranges over subsets of the rest; the right part is what remains
        let mut x = rest;
        loop {
            let r = rest & !x;
            if nbr[l as usize] & r == 0 {
                pairs.push((l | x, r | x));
            }
            if x == 0 {
                break;
            }
            x = (x - 1) & rest;
        }
    }
    SetUniverse::from_sides(g.labels().to_vec(), pairs, OrderFn::Separator)
}

/// All bipartitions `(A, V∖A)` of a ground set of the given labels.
pub fn bipartition_universe(labels: Vec<String>, order: OrderFn, limits: &Limits) -> Result<SetUniverse> {
    limits.check("ground set", labels.len())?;
    let all = full_mask(labels.len());
    SetUniverse::from_sides(labels, (0..=all).map(|a| (a, all & !a)), order)
}

/// Weighted edges `(u, v, w)` between point indices.
pub type CutWeights = Vec<(usize, usize, f64)>;

/// Total weight of the edges between `A∖B` and `B∖A`.
pub fn cut_order(weights: CutWeights) -> OrderFn {
    OrderFn::custom(move |a, b| {
        let (l, r) = (a & !b, b & !a);
        weights
            .iter()
            .filter(|&&(u, v, _)| (l >> u & 1 == 1 && r >> v & 1 == 1) || (l >> v & 1 == 1 && r >> u & 1 == 1))
            .map(|&(_, _, w)| w)
            .sum()
    })
}

/// `min(|A|, |B|)`, a concave function of cardinality.
pub fn min_side_order() -> OrderFn {
    OrderFn::custom(|a, b| a.count_ones().min(b.count_ones()) as f64)
}

const EPS: f64 = 1e-9;

/// Exhaustive check of `|r| + |s| ≥ |r ∨ s| + |r ∧ s|` over all oriented pairs.
pub fn check_submodular_order(u: &SetUniverse) -> bool {
    submodular_order_violation(u).is_none()
}

pub fn submodular_order_violation(u: &SetUniverse) -> Option<(OrientedSep, OrientedSep)> {
    u.order(SepId(0))?;
    let oriented: Vec<(OrientedSep, Mask, Mask, f64)> = (0..u.size() as u32)
        .flat_map(|i| u.orientations(SepId(i)))
        .map(|s| {
            let (a, b) = u.sides(s);
            (s, a, b, u.order(s.id()).unwrap())
        })
        .collect();
    for (i, &(r, a, b, x)) in oriented.iter().enumerate() {
        for &(s, c, d, y) in &oriented[i..] {
            let j = u.order_of_sides(a | c, b & d).unwrap();
            let m = u.order_of_sides(a & c, b | d).unwrap();
            if x + y + EPS < j + m {
                return Some((r, s));
            }
        }
    }
    None
}

/// Validates a bipartition universe's order function; used at load time.
pub fn require_submodular(u: &SetUniverse) -> Result<()> {
    match submodular_order_violation(u) {
        None => Ok(()),
        Some((r, s)) => Err(Error::NotSubmodular(format!(
            "{} and {}",
            u.format_oriented(r),
            u.format_oriented(s)
        ))),
    }
}

/// `S_k`: members of `base` of order strictly below `k`.
pub fn restrict_below<U: Universe + ?Sized>(u: &U, base: &SubSystem, k: f64) -> SubSystem {
    let members = base
        .members()
        .iter()
        .copied()
        .filter(|&s| u.order(s).is_some_and(|o| o < k));
    SubSystem::new(u, members).expect("members come from the universe")
}

/// `S_k` of the whole universe.
pub fn restrict_sk<U: Universe + ?Sized>(u: &U, k: f64) -> SubSystem {
    restrict_below(u, &SubSystem::full(u), k)
}

/// Thresholds `k` at which `S_k ⊆ base` changes, skipping the empty slice.
/// The last threshold is one above the largest order, so its slice is all
/// of `base`.
pub fn order_thresholds<U: Universe + ?Sized>(u: &U, base: &SubSystem) -> Vec<f64> {
    let mut orders: Vec<f64> = base.members().iter().filter_map(|&s| u.order(s)).collect();
    orders.sort_by(|a, b| a.partial_cmp(b).unwrap());
    orders.dedup();
    let Some(&top) = orders.last() else {
        return Vec::new();
    };
    let mut t: Vec<f64> = orders.into_iter().skip(1).collect();
    t.push(top + 1.0);
    t
}

/// `G[A ∩ B]` is complete; the empty separator counts.
pub fn is_clique_separation(g: &Graph, u: &SetUniverse, s: SepId) -> bool {
    let (a, b) = u.sides(OrientedSep::new(s, false));
    g.is_clique(a & b)
}

/// Clique separations of order below `k` (`f64::INFINITY` for all of them).
pub fn clique_subsystem(g: &Graph, u: &SetUniverse, k: f64) -> SubSystem {
    let members = (0..u.size() as u32)
        .map(SepId)
        .filter(|&s| u.order(s).is_some_and(|o| o < k) && is_clique_separation(g, u, s));
    SubSystem::new(u, members).expect("members come from the universe")
}

/// For crossing clique separations `r`, `s` with `|r| ≤ |s|`: orientations
/// `r⃗`, `s⃗` such that `r̄ ∧ s̄`, `r̄ ∧ s⃗` and `r⃗ ∧ s̄` are clique separations
/// with `|r̄ ∧ s̄|, |r̄ ∧ s⃗| ≤ |r|` and `|r⃗ ∧ s̄| ≤ |s|`, and with `r⃗ ∧ s⃗` a
/// clique separation of order at most `|r|` whenever `|r̄ ∧ s̄| = |r| = |s|`.
pub fn clique_corner_orientations(
    g: &Graph,
    u: &SetUniverse,
    r: SepId,
    s: SepId,
) -> Option<(OrientedSep, OrientedSep)> {
    let ord = |x: OrientedSep| u.order(x.id()).unwrap_or(f64::INFINITY);
    let clique = |x: OrientedSep| is_clique_separation(g, u, x.id());
    let (rk, sk) = (u.order(r)?, u.order(s)?);
    for ro in u.orientations(r) {
        for so in u.orientations(s) {
            let (rb, sb) = (u.invert(ro), u.invert(so));
            let both_back = u.meet(rb, sb);
            let back_fwd = u.meet(rb, so);
            let fwd_back = u.meet(ro, sb);
            let mut ok = [both_back, back_fwd, fwd_back].into_iter().all(clique)
                && ord(both_back) <= rk
                && ord(back_fwd) <= rk
                && ord(fwd_back) <= sk;
            if ok && ord(both_back) == rk && rk == sk {
                let fwd = u.meet(ro, so);
                ok = clique(fwd) && ord(fwd) <= rk;
            }
            if ok {
                return Some((ro, so));
            }
        }
    }
    None
}

/// Whether the oriented separation satisfies both graph-separation axioms.
pub fn is_graph_separation(g: &Graph, a: Mask, b: Mask) -> bool {
    if a | b != g.vertex_mask() {
        return false;
    }
    let r = b & !a;
    iter_bits(a & !b).all(|v| g.neighbours(v) & r == 0)
}
