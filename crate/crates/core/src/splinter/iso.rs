use rustc_hash::FxHashMap;

use super::Family;
use crate::error::{Error, Result};
use crate::sepsys::{OrientedSep, SepId, SetUniverse, Universe};

/// An isomorphism between the separation systems spanned by a domain of
/// separations and its image: it commutes with inversion, preserves and
/// reflects the order, and is injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepIsomorphism {
    map: FxHashMap<OrientedSep, OrientedSep>,
}

impl SepIsomorphism {
    pub fn new<U, V, F>(src: &U, dst: &V, domain: &[SepId], f: F) -> Result<Self>
    where
        U: Universe + ?Sized,
        V: Universe + ?Sized,
        F: Fn(OrientedSep) -> Option<OrientedSep>,
    {
        let mut oriented: Vec<OrientedSep> = Vec::new();
        for &s in domain {
            if !src.contains(s) {
                return Err(Error::ForeignSeparation(s));
            }
            oriented.extend(src.orientations(s));
        }
        oriented.sort_unstable();
        oriented.dedup();
        let mut map = FxHashMap::default();
        let mut seen = FxHashMap::default();
        for &x in &oriented {
            let y = f(x).ok_or_else(|| Error::NotIsomorphism(format!("{x:?} has no image")))?;
            if !dst.contains(y.id()) {
                return Err(Error::NotIsomorphism(format!("image of {x:?} is not in the target")));
            }
            if let Some(prev) = seen.insert(y, x) {
                return Err(Error::NotIsomorphism(format!("{prev:?} and {x:?} have the same image")));
            }
            map.insert(x, y);
        }
        for &x in &oriented {
            let y = map[&x];
            if map[&src.invert(x)] != dst.invert(y) {
                return Err(Error::NotIsomorphism(format!(
                    "does not commute with inversion at {x:?}"
                )));
            }
            for &z in &oriented {
                if src.leq(x, z) != dst.leq(y, map[&z]) {
                    return Err(Error::NotIsomorphism(format!(
                        "order between {x:?} and {z:?} is not kept"
                    )));
                }
            }
        }
        Ok(SepIsomorphism { map })
    }

    /// The map induced by a permutation of the ground set.
    pub fn from_permutation(u: &SetUniverse, domain: &[SepId], perm: &[usize]) -> Result<Self> {
        if perm.len() != u.labels().len() {
            return Err(Error::NotIsomorphism(format!(
                "permutation has {} entries for {} points",
                perm.len(),
                u.labels().len()
            )));
        }
        SepIsomorphism::new(u, u, domain, |s| u.permute(s, perm))
    }

    pub fn apply(&self, s: OrientedSep) -> Option<OrientedSep> {
        self.map.get(&s).copied()
    }

    pub fn apply_id(&self, s: SepId) -> Option<SepId> {
        self.apply(OrientedSep::new(s, false)).map(OrientedSep::id)
    }

    /// Images of `seps`, by id.
    pub fn apply_set(&self, seps: &[SepId]) -> Result<Vec<SepId>> {
        let mut out = seps
            .iter()
            .map(|&s| {
                self.apply_id(s)
                    .ok_or_else(|| Error::NotIsomorphism(format!("{s} is outside the domain")))
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }
}

/// The family `(φ(A_i))` with the same index order.
pub fn map_family(fam: &Family, iso: &SepIsomorphism) -> Result<Family> {
    let sets = fam
        .sets()
        .iter()
        .map(|s| iso.apply_set(s))
        .collect::<Result<Vec<_>>>()?;
    Family::new(sets, fam.order().clone())
}
