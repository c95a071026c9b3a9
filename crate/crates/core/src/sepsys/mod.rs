//! Abstract separation systems.
//!
//! A universe is a finite lattice of oriented separations with an
//! order-reversing involution. Everything above this layer talks to a
//! universe only through the [`Universe`] trait, using [`SepId`] for
//! unoriented separations and [`OrientedSep`] for one of their two
//! orientations.

pub(crate) mod set_universe;

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use set_universe::{Mask, OrderFn, SetUniverse};

/// Identifier of an unoriented separation within one universe.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SepId(pub u32);

impl SepId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for SepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl fmt::Display for SepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// One orientation of a separation: the stored orientation when
/// `is_inverted()` is false, its inverse otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedSep(u32);

impl OrientedSep {
    pub fn new(id: SepId, inverted: bool) -> Self {
        OrientedSep(id.0 << 1 | inverted as u32)
    }

    pub fn id(self) -> SepId {
        SepId(self.0 >> 1)
    }

    pub fn is_inverted(self) -> bool {
        self.0 & 1 == 1
    }

    /// Dense index `2 * id + direction`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Inverse of [`OrientedSep::index`].
    pub fn from_index(i: u32) -> Self {
        OrientedSep(i)
    }

    pub(crate) fn flip_bit(self) -> Self {
        OrientedSep(self.0 ^ 1)
    }
}

impl fmt::Debug for OrientedSep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}{}", self.0 >> 1, if self.is_inverted() { "*" } else { "" })
    }
}

/// A finite universe of separations.
///
/// Implementations must make `invert` an order-reversing involution and
/// `join` the least upper bound under `leq`. Every handle passed in must
/// come from this universe; the checked wrappers in this module verify that.
pub trait Universe {
    /// Number of unoriented separations.
    fn size(&self) -> usize;

    fn invert(&self, s: OrientedSep) -> OrientedSep;

    fn leq(&self, r: OrientedSep, s: OrientedSep) -> bool;

    fn join(&self, r: OrientedSep, s: OrientedSep) -> OrientedSep;

    fn meet(&self, r: OrientedSep, s: OrientedSep) -> OrientedSep {
        self.invert(self.join(self.invert(r), self.invert(s)))
    }

    fn order(&self, _s: SepId) -> Option<f64> {
        None
    }

    fn contains(&self, s: SepId) -> bool {
        s.index() < self.size()
    }

    /// The two orientations; they coincide for a separation equal to its own inverse.
    fn orientations(&self, s: SepId) -> [OrientedSep; 2] {
        let a = OrientedSep::new(s, false);
        [a, self.invert(a)]
    }

    fn lt(&self, r: OrientedSep, s: OrientedSep) -> bool {
        r != s && self.leq(r, s)
    }

    /// Nestedness without the membership check.
    fn nested(&self, r: SepId, s: SepId) -> bool {
        let [r1, r2] = self.orientations(r);
        let [s1, s2] = self.orientations(s);
        self.leq(r1, s1) || self.leq(r1, s2) || self.leq(r2, s1) || self.leq(r2, s2)
    }

    /// The four meets `r^x ∧ s^y`, indexed `2*x + y` where `x`, `y` are the
    /// inversion flags applied to the stored orientations.
    fn meet_positions(&self, r: SepId, s: SepId) -> [SepId; 4] {
        let [r0, r1] = self.orientations(r);
        let [s0, s1] = self.orientations(s);
        [
            self.meet(r0, s0).id(),
            self.meet(r0, s1).id(),
            self.meet(r1, s0).id(),
            self.meet(r1, s1).id(),
        ]
    }
}

fn check<U: Universe + ?Sized>(u: &U, s: SepId) -> Result<()> {
    if u.contains(s) {
        Ok(())
    } else {
        Err(Error::ForeignSeparation(s))
    }
}

/// A subset of the separations of a universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSystem {
    members: Vec<SepId>,
    mask: FixedBitSet,
}

impl SubSystem {
    pub fn new<U: Universe + ?Sized>(u: &U, members: impl IntoIterator<Item = SepId>) -> Result<Self> {
        let mut members: Vec<SepId> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let mut mask = FixedBitSet::with_capacity(u.size());
        for &s in &members {
            check(u, s)?;
            mask.insert(s.index());
        }
        Ok(SubSystem { members, mask })
    }

    pub fn full<U: Universe + ?Sized>(u: &U) -> Self {
        let mut mask = FixedBitSet::with_capacity(u.size());
        mask.insert_range(..);
        SubSystem {
            members: (0..u.size() as u32).map(SepId).collect(),
            mask,
        }
    }

    pub fn members(&self) -> &[SepId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: SepId) -> bool {
        self.mask.contains(s.index())
    }

    pub fn is_subset(&self, other: &SubSystem) -> bool {
        self.mask.is_subset(&other.mask)
    }
}

/// Whether `r` and `s` have comparable orientations.
pub fn is_nested<U: Universe + ?Sized>(u: &U, r: SepId, s: SepId) -> Result<bool> {
    check(u, r)?;
    check(u, s)?;
    Ok(u.nested(r, s))
}

/// A corner separation together with the orientation pair that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    /// Inversion flags applied to the stored orientations of `r` and `s`.
    pub pair: (bool, bool),
    pub join: OrientedSep,
}

impl Corner {
    pub fn sep(&self) -> SepId {
        self.join.id()
    }
}

/// The four joins `r⃗ ∨ s⃗` over all orientation choices. Coinciding corners
/// are kept, each with its own tag.
pub fn corners<U: Universe + ?Sized>(u: &U, r: SepId, s: SepId) -> Result<[Corner; 4]> {
    check(u, r)?;
    check(u, s)?;
    let [r0, r1] = u.orientations(r);
    let [s0, s1] = u.orientations(s);
    let c = |x: bool, y: bool, a: OrientedSep, b: OrientedSep| Corner {
        pair: (x, y),
        join: u.join(a, b),
    };
    Ok([
        c(false, false, r0, s0),
        c(false, true, r0, s1),
        c(true, false, r1, s0),
        c(true, true, r1, s1),
    ])
}

/// Whether corners `c1`, `c2` of `r` and `s` lie on different sides of `r`:
/// `c1` is some `r⃗ ∧ s⃗` and `c2` is `r̄ ∧ s⃗` or `r̄ ∧ s̄` for the same `r⃗`.
pub fn from_different_sides<U: Universe + ?Sized>(u: &U, r: SepId, s: SepId, c1: SepId, c2: SepId) -> Result<bool> {
    check(u, r)?;
    check(u, s)?;
    let m = u.meet_positions(r, s);
    for c in [c1, c2] {
        if !m.contains(&c) {
            return Err(Error::Input(format!("{c} is not a corner separation of {r} and {s}")));
        }
    }
    Ok(different_sides(&m, c1, c2))
}

pub(crate) fn different_sides(m: &[SepId; 4], c1: SepId, c2: SepId) -> bool {
    (0..2).any(|x| {
        let own = [m[2 * x], m[2 * x + 1]];
        let other = [m[2 * (1 - x)], m[2 * (1 - x) + 1]];
        own.contains(&c1) && other.contains(&c2)
    })
}

pub fn is_small<U: Universe + ?Sized>(u: &U, s: OrientedSep) -> Result<bool> {
    check(u, s.id())?;
    Ok(u.leq(s, u.invert(s)))
}

/// `s⃗` is trivial in `sys` if some `t ∈ sys` has `s⃗ < t⃗` and `s⃗ < t̄`.
pub fn is_trivial<U: Universe + ?Sized>(u: &U, s: OrientedSep, sys: &SubSystem) -> Result<bool> {
    check(u, s.id())?;
    Ok(trivial_witness(u, s, sys.members()).is_some())
}

pub(crate) fn trivial_witness<U: Universe + ?Sized>(u: &U, s: OrientedSep, candidates: &[SepId]) -> Option<SepId> {
    candidates.iter().copied().find(|&t| {
        let [t0, t1] = u.orientations(t);
        u.lt(s, t0) && u.lt(s, t1)
    })
}

/// No element has a small orientation.
pub fn is_regular<U: Universe + ?Sized>(u: &U, seps: &[SepId]) -> Result<bool> {
    for &s in seps {
        for o in u.orientations(s) {
            if is_small(u, o)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For all `r⃗, s⃗` in the system, `r⃗ ∨ s⃗` or `r⃗ ∧ s⃗` is in it as well.
pub fn is_structurally_submodular<U: Universe + ?Sized>(u: &U, sys: &SubSystem) -> bool {
    submodularity_violation(u, sys).is_none()
}

pub fn submodularity_violation<U: Universe + ?Sized>(u: &U, sys: &SubSystem) -> Option<(OrientedSep, OrientedSep)> {
    let oriented: Vec<OrientedSep> = sys.members().iter().flat_map(|&s| u.orientations(s)).collect();
    for (i, &r) in oriented.iter().enumerate() {
        for &s in &oriented[i..] {
            if !sys.contains(u.join(r, s).id()) && !sys.contains(u.meet(r, s).id()) {
                return Some((r, s));
            }
        }
    }
    None
}

/// Pairwise nested.
pub fn is_nested_set<U: Universe + ?Sized>(u: &U, seps: &[SepId]) -> bool {
    crossing_pair(u, seps).is_none()
}

pub fn crossing_pair<U: Universe + ?Sized>(u: &U, seps: &[SepId]) -> Option<(SepId, SepId)> {
    for (i, &r) in seps.iter().enumerate() {
        for &s in &seps[i + 1..] {
            if !u.nested(r, s) {
                return Some((r, s));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests;
