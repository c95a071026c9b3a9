//! Orientations of subsystems and the families of sets distinguishing them.

mod family;
mod search;

pub use family::{
    build_distinguisher_family, efficient_distinguishers, is_robust_set, robustness_violation, DistinguisherFamily,
    Efficiency, FamilyMode, IndexOrderMode, RobustnessViolation,
};
pub use search::{enumerate_profiles, enumerate_with, Constraint, SearchLimits};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sepsys::{Mask, OrientedSep, SepId, SetUniverse, SubSystem, Universe};
use crate::universes::Graph;

/// Exactly one orientation of every member of a base set, stored as the
/// chosen oriented separations sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    choice: Vec<OrientedSep>,
}

impl Orientation {
    pub fn new<U: Universe + ?Sized>(u: &U, choice: impl IntoIterator<Item = OrientedSep>) -> Result<Self> {
        let mut choice: Vec<OrientedSep> = choice.into_iter().collect();
        for &c in &choice {
            if !u.contains(c.id()) {
                return Err(Error::ForeignSeparation(c.id()));
            }
        }
        choice.sort_unstable();
        choice.dedup();
        for w in choice.windows(2) {
            if w[0].id() == w[1].id() {
                return Err(Error::InvalidOrientation(format!(
                    "{} is oriented both ways",
                    w[0].id()
                )));
            }
        }
        Ok(Orientation { choice })
    }

    pub fn empty() -> Self {
        Orientation { choice: Vec::new() }
    }

    pub(crate) fn from_sorted(choice: Vec<OrientedSep>) -> Self {
        Orientation { choice }
    }

    pub fn choice(&self) -> &[OrientedSep] {
        &self.choice
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    /// The orientation chosen for `s`, if `s` is in the base.
    pub fn orients(&self, s: SepId) -> Option<OrientedSep> {
        self.choice
            .binary_search_by_key(&s, |c| c.id())
            .ok()
            .map(|i| self.choice[i])
    }

    pub fn contains(&self, s: OrientedSep) -> bool {
        self.orients(s.id()) == Some(s)
    }

    pub fn base_ids(&self) -> impl Iterator<Item = SepId> + '_ {
        self.choice.iter().map(|c| c.id())
    }

    pub fn base<U: Universe + ?Sized>(&self, u: &U) -> Result<SubSystem> {
        SubSystem::new(u, self.base_ids())
    }

    /// Set inclusion of the chosen oriented separations.
    pub fn is_subset(&self, other: &Orientation) -> bool {
        self.choice.len() <= other.choice.len() && self.choice.iter().all(|&c| other.contains(c))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ProfileDoc {
            schema: crate::SCHEMA.into(),
            base: self.base_ids().collect(),
            choice: self.choice.iter().map(|c| (c.id(), c.is_inverted() as u8)).collect(),
        })
        .expect("plain data serializes")
    }

    /// Reads `{"base": [ids], "choice": [[id, dir], ...]}` and checks it
    /// against the universe.
    pub fn from_json<U: Universe + ?Sized>(u: &U, value: &serde_json::Value) -> Result<Self> {
        let doc: ProfileDoc = serde_json::from_value(value.clone())?;
        let mut choice = Vec::with_capacity(doc.choice.len());
        for (id, dir) in doc.choice {
            if dir > 1 {
                return Err(Error::Input(format!("direction of {id} must be 0 or 1")));
            }
            choice.push(OrientedSep::new(id, dir == 1));
        }
        let o = Orientation::new(u, choice)?;
        let mut base = doc.base;
        base.sort_unstable();
        base.dedup();
        if !o.base_ids().eq(base.iter().copied()) {
            return Err(Error::InvalidOrientation(
                "choice does not orient exactly the base".into(),
            ));
        }
        Ok(o)
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileDoc {
    #[serde(default)]
    schema: String,
    base: Vec<SepId>,
    choice: Vec<(SepId, u8)>,
}

/// Which property an orientation must satisfy on top of consistency.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "tag")]
pub enum ProfileKind {
    /// The profile property.
    Profile,
    /// No three small sides cover the graph.
    GraphTangle,
    /// No fewer than `n` big sides meet in fewer than `m` points.
    CircleTangle { m: usize, n: usize },
}

impl ProfileKind {
    pub fn validate(self) -> Result<Self> {
        match self {
            ProfileKind::CircleTangle { m, n } if m < 1 || n <= 3 => Err(Error::Input(format!(
                "circle tangles need m >= 1 and n > 3, got m = {m}, n = {n}"
            ))),
            k => Ok(k),
        }
    }
}

/// No `r⃗, s⃗` in the orientation with `r̄ < s⃗`, `r = s` included.
pub fn is_consistent<U: Universe + ?Sized>(u: &U, o: &Orientation) -> bool {
    consistency_violation(u, o).is_none()
}

pub fn consistency_violation<U: Universe + ?Sized>(u: &U, o: &Orientation) -> Option<(OrientedSep, OrientedSep)> {
    for &r in o.choice() {
        let rbar = u.invert(r);
        for &s in o.choice() {
            if u.lt(rbar, s) {
                return Some((r, s));
            }
        }
    }
    None
}

/// For all `r⃗, s⃗` in the orientation, `r̄ ∧ s̄` is not in it.
pub fn has_profile_property<U: Universe + ?Sized>(u: &U, o: &Orientation) -> bool {
    profile_violation(u, o).is_none()
}

pub fn profile_violation<U: Universe + ?Sized>(u: &U, o: &Orientation) -> Option<(OrientedSep, OrientedSep)> {
    for (i, &r) in o.choice().iter().enumerate() {
        for &s in &o.choice()[i..] {
            if o.contains(u.meet(u.invert(r), u.invert(s))) {
                return Some((r, s));
            }
        }
    }
    None
}

/// No three (not necessarily distinct) `(A_i, B_i)` in the orientation with
/// `G[A_1] ∪ G[A_2] ∪ G[A_3] = G`.
pub fn has_tangle_property(u: &SetUniverse, g: &Graph, o: &Orientation) -> bool {
    let edges = g.edges();
    let full = g.full_cover(edges.len());
    let covers: Vec<u128> = o.choice().iter().map(|&c| g.cover_mask(u.sides(c).0, &edges)).collect();
    for (i, &a) in covers.iter().enumerate() {
        for (j, &b) in covers.iter().enumerate().skip(i) {
            if covers[j..].iter().any(|&c| a | b | c == full) {
                return false;
            }
        }
    }
    true
}

/// No subset `F` with `|F| < n` whose big sides meet in fewer than `m` points.
pub fn is_circle_tangle(u: &SetUniverse, o: &Orientation, m: usize, n: usize) -> bool {
    let bigs: Vec<Mask> = o.choice().iter().map(|&c| u.sides(c).1).collect();
    fn small_meet(bigs: &[Mask], from: usize, acc: Mask, left: usize, m: usize) -> bool {
        if (acc.count_ones() as usize) < m {
            return true;
        }
        left > 0 && (from..bigs.len()).any(|i| small_meet(bigs, i + 1, acc & bigs[i], left - 1, m))
    }
    !small_meet(&bigs, 0, u.ground(), n.saturating_sub(1), m)
}

/// Whether `p` and `q` orient `s` differently; an error if either does not orient it.
pub fn distinguishes(s: SepId, p: &Orientation, q: &Orientation) -> Result<bool> {
    let a = p.orients(s).ok_or(Error::NotOriented {
        sep: s,
        which: "first orientation",
    })?;
    let b = q.orients(s).ok_or(Error::NotOriented {
        sep: s,
        which: "second orientation",
    })?;
    Ok(a != b)
}

/// Every separation oriented differently by `p` and `q`, by id.
pub fn distinguishers(p: &Orientation, q: &Orientation) -> Vec<SepId> {
    let (mut i, mut j) = (0, 0);
    let (a, b) = (p.choice(), q.choice());
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].id().cmp(&b[j].id()) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] != b[j] {
                    out.push(a[i].id());
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn is_distinguishable(p: &Orientation, q: &Orientation) -> bool {
    !distinguishers(p, q).is_empty()
}

/// Whether `s` distinguishes `p` and `q` at the least order, or at the
/// lowest level of a sequence, among all their distinguishers.
pub fn efficiently_distinguishes<U: Universe + ?Sized>(
    u: &U,
    s: SepId,
    p: &Orientation,
    q: &Orientation,
    ctx: Efficiency<'_>,
) -> Result<bool> {
    if !distinguishes(s, p, q)? {
        return Ok(false);
    }
    Ok(family::efficient_distinguishers(u, p, q, ctx).contains(&s))
}

/// First distinguishable pair of `profiles` that no member of `nested`
/// distinguishes at least order.
pub fn undistinguished_pair<U: Universe + ?Sized>(
    u: &U,
    nested: &[SepId],
    profiles: &[Orientation],
) -> Option<(usize, usize)> {
    for (i, p) in profiles.iter().enumerate() {
        for (j, q) in profiles.iter().enumerate().skip(i + 1) {
            if is_distinguishable(p, q)
                && !efficient_distinguishers(u, p, q, Efficiency::ByOrder)
                    .iter()
                    .any(|s| nested.contains(s))
            {
                return Some((i, j));
            }
        }
    }
    None
}

/// Subset-maximal orientations, deduplicated, in input order.
pub fn maximal_profiles(all: &[Orientation]) -> Vec<Orientation> {
    let mut out: Vec<Orientation> = Vec::new();
    for (i, p) in all.iter().enumerate() {
        if out.contains(p) {
            continue;
        }
        let dominated = all.iter().enumerate().any(|(j, q)| j != i && q != p && p.is_subset(q));
        if !dominated {
            out.push(p.clone());
        }
    }
    out
}
