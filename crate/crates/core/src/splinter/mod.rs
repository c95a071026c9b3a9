//! Indexed families of separation sets: the splinter predicates, extremal
//! elements, and extraction of nested sets meeting every set of a family.

mod canonical;
mod iso;
mod transversal;

pub use canonical::{extract_canonical, CanonicalOptions, CanonicalResult, CanonicalRound};
pub use iso::{map_family, SepIsomorphism};
pub use transversal::{
    extract_transversal, extract_transversal_with, TraceStep, TransversalMethod, TransversalResult, INDUCTIVE_MAX_SETS,
};

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::sepsys::{SepId, Universe};

/// A strict partial order on the indices of a family.
#[derive(Clone, Debug, PartialEq)]
pub enum IndexOrder {
    /// All indices incomparable.
    Trivial,
    /// `i ≺ j` iff `rank[i] < rank[j]`.
    Ranked(Vec<f64>),
    /// `i ≺ j` iff `rel[i][j]`.
    Explicit(Vec<Vec<bool>>),
}

impl IndexOrder {
    pub fn precedes(&self, i: usize, j: usize) -> bool {
        match self {
            IndexOrder::Trivial => false,
            IndexOrder::Ranked(r) => r[i] < r[j],
            IndexOrder::Explicit(rel) => rel[i][j],
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            IndexOrder::Trivial => Ok(()),
            IndexOrder::Ranked(r) => {
                if r.len() != n {
                    return Err(Error::NotStrictPartialOrder(format!("{} ranks for {n} sets", r.len())));
                }
                if r.iter().any(|x| x.is_nan()) {
                    return Err(Error::NotStrictPartialOrder("rank is NaN".into()));
                }
                Ok(())
            }
            IndexOrder::Explicit(rel) => {
                if rel.len() != n || rel.iter().any(|row| row.len() != n) {
                    return Err(Error::NotStrictPartialOrder(format!("relation is not {n} by {n}")));
                }
                for i in 0..n {
                    if rel[i][i] {
                        return Err(Error::NotStrictPartialOrder(format!("{i} precedes itself")));
                    }
                    for j in 0..n {
                        if rel[i][j] && (0..n).any(|k| rel[j][k] && !rel[i][k]) {
                            return Err(Error::NotStrictPartialOrder(format!(
                                "not transitive through {i} and {j}"
                            )));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// Indices of `among` with no predecessor in `among`.
    pub fn minimal(&self, among: &[usize]) -> Vec<usize> {
        among
            .iter()
            .copied()
            .filter(|&i| !among.iter().any(|&j| self.precedes(j, i)))
            .collect()
    }
}

/// A finite family `(A_i)` of non-empty sets of separations with a strict
/// partial order on its indices. Each set is kept sorted by id.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    sets: Vec<Vec<SepId>>,
    order: IndexOrder,
}

impl Family {
    pub fn new(sets: Vec<Vec<SepId>>, order: IndexOrder) -> Result<Self> {
        let mut sets = sets;
        for (i, s) in sets.iter_mut().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptySet(i));
            }
            s.sort_unstable();
            s.dedup();
        }
        order.validate(sets.len())?;
        Ok(Family { sets, order })
    }

    pub fn unordered(sets: Vec<Vec<SepId>>) -> Result<Self> {
        Family::new(sets, IndexOrder::Trivial)
    }

    pub fn sets(&self) -> &[Vec<SepId>] {
        &self.sets
    }

    pub fn order(&self) -> &IndexOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Union of all sets, by id.
    pub fn union(&self) -> Vec<SepId> {
        let mut all: Vec<SepId> = self.sets.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn with_order(self, order: IndexOrder) -> Result<Self> {
        Family::new(self.sets, order)
    }

    pub(crate) fn check<U: Universe + ?Sized>(&self, u: &U) -> Result<()> {
        match self.sets.iter().flatten().find(|s| !u.contains(**s)) {
            Some(&s) => Err(Error::ForeignSeparation(s)),
            None => Ok(()),
        }
    }

    /// Whether `n` meets every set.
    pub fn is_met_by(&self, n: &[SepId]) -> bool {
        self.sets.iter().all(|s| s.iter().any(|x| n.contains(x)))
    }
}

/// Which sets contain each element of the union.
pub(crate) struct Membership {
    pub index: FxHashMap<SepId, usize>,
    pub elements: Vec<SepId>,
    pub sets_of: Vec<FixedBitSet>,
}

impl Membership {
    pub fn new(fam: &Family) -> Self {
        let elements = fam.union();
        let index: FxHashMap<SepId, usize> = elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut sets_of = vec![FixedBitSet::with_capacity(fam.len()); elements.len()];
        for (i, set) in fam.sets.iter().enumerate() {
            for s in set {
                sets_of[index[s]].insert(i);
            }
        }
        Membership {
            index,
            elements,
            sets_of,
        }
    }

    pub fn of(&self, s: SepId) -> Option<&FixedBitSet> {
        self.index.get(&s).map(|&i| &self.sets_of[i])
    }

    pub fn contains(&self, s: SepId, set: usize) -> bool {
        self.of(s).is_some_and(|m| m.contains(set))
    }
}

/// Crossing `a ∈ A_i ∖ A_j` and `b ∈ A_j ∖ A_i` with no corner in `A_i ∪ A_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplinterViolation {
    pub i: usize,
    pub j: usize,
    pub a: SepId,
    pub b: SepId,
}

pub fn splinters<U: Universe + ?Sized>(u: &U, fam: &Family) -> Result<bool> {
    Ok(splinter_violation(u, fam)?.is_none())
}

pub fn splinter_violation<U: Universe + ?Sized>(u: &U, fam: &Family) -> Result<Option<SplinterViolation>> {
    fam.check(u)?;
    let mem = Membership::new(fam);
    let n = fam.len();
    let empty = FixedBitSet::with_capacity(n);
    for (x, &a) in mem.elements.iter().enumerate() {
        for (y, &b) in mem.elements.iter().enumerate().skip(x + 1) {
            if u.nested(a, b) {
                continue;
            }
            let mut hit = empty.clone();
            for c in u.meet_positions(a, b) {
                if let Some(m) = mem.of(c) {
                    hit.union_with(m);
                }
            }
            let (ma, mb) = (&mem.sets_of[x], &mem.sets_of[y]);
            let only_a: Vec<usize> = ma.difference(mb).filter(|&i| !hit.contains(i)).collect();
            if only_a.is_empty() {
                continue;
            }
            if let Some(j) = mb.difference(ma).find(|&j| !hit.contains(j)) {
                return Ok(Some(SplinterViolation { i: only_a[0], j, a, b }));
            }
        }
    }
    Ok(None)
}

/// `a ∈ A_i` and `b ∈ A_j` for which the applicable hierarchical condition fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HierarchyViolation {
    pub i: usize,
    pub j: usize,
    pub a: SepId,
    pub b: SepId,
    /// Whether `i ≺ j`, so that the first condition applied.
    pub comparable: bool,
}

pub fn splinters_hierarchically<U: Universe + ?Sized>(u: &U, fam: &Family) -> Result<bool> {
    Ok(hierarchy_violation(u, fam)?.is_none())
}

/// Checks every ordered pair of indices, `i = j` included, and every pair
/// of elements, equal ones included.
pub fn hierarchy_violation<U: Universe + ?Sized>(u: &U, fam: &Family) -> Result<Option<HierarchyViolation>> {
    fam.check(u)?;
    let mem = Membership::new(fam);
    let order = fam.order();
    let inside = |c: SepId, set: usize| mem.contains(c, set);
    for (x, &a) in mem.elements.iter().enumerate() {
        for (y, &b) in mem.elements.iter().enumerate() {
            let m = u.meet_positions(a, b);
            let side_a = |side: usize, set: usize| inside(m[2 * side], set) || inside(m[2 * side + 1], set);
            let side_b = |side: usize, set: usize| inside(m[side], set) || inside(m[2 + side], set);
            let any_corner = |set: usize| m.iter().any(|&c| inside(c, set));
            for i in mem.sets_of[x].ones() {
                for j in mem.sets_of[y].ones() {
                    let comparable = order.precedes(i, j);
                    let ok = if comparable {
                        any_corner(j) || (side_a(0, i) && side_a(1, i))
                    } else if order.precedes(j, i) {
                        continue;
                    } else {
                        (0..2).any(|s| side_a(s, i) && (side_a(1 - s, i) || side_a(1 - s, j)))
                            || (0..2).any(|s| side_b(s, j) && (side_b(1 - s, j) || side_b(1 - s, i)))
                    };
                    if !ok {
                        return Ok(Some(HierarchyViolation { i, j, a, b, comparable }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Elements with an orientation not strictly below any orientation of another element.
pub fn extremal_elements<U: Universe + ?Sized>(u: &U, set: &[SepId]) -> Vec<SepId> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    let oriented: Vec<_> = set.iter().flat_map(|&s| u.orientations(s)).collect();
    set.into_iter()
        .filter(|&s| {
            u.orientations(s)
                .into_iter()
                .any(|o| !oriented.iter().any(|&t| u.lt(o, t)))
        })
        .collect()
}

#[cfg(test)]
mod tests;
