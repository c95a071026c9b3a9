use serde::Serialize;

use super::{extremal_elements, Family};
use crate::error::{Error, Result};
use crate::sepsys::{crossing_pair, SepId, Universe};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CanonicalOptions {
    /// Drop elements of the result that lie in no set of the family.
    pub prune_redundant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CanonicalRound {
    /// Minimal indices among those still open.
    pub minimal: Vec<usize>,
    /// Extremal elements of the union of the minimal sets, added to the result.
    pub extremal: Vec<SepId>,
    /// Indices whose sets miss `extremal`, left open for the next round.
    pub open: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalResult {
    /// The nested set, by id.
    pub nested: Vec<SepId>,
    pub rounds: Vec<CanonicalRound>,
}

/// A nested set meeting every set of a hierarchically splintering family,
/// built without any choices, so that it commutes with isomorphisms.
/// Other families may get [`Error::ExtremalCrossing`] or [`Error::EmptyRestriction`].
pub fn extract_canonical<U: Universe + ?Sized>(u: &U, fam: &Family, opts: CanonicalOptions) -> Result<CanonicalResult> {
    fam.check(u)?;
    let mut sets: Vec<Vec<SepId>> = fam.sets().to_vec();
    let mut open: Vec<usize> = (0..fam.len()).collect();
    let mut nested: Vec<SepId> = Vec::new();
    let mut rounds = Vec::new();
    while !open.is_empty() {
        let minimal = fam.order().minimal(&open);
        let union: Vec<SepId> = minimal.iter().flat_map(|&k| sets[k].iter().copied()).collect();
        let extremal = extremal_elements(u, &union);
        if let Some((a, b)) = crossing_pair(u, &extremal) {
            return Err(Error::ExtremalCrossing(a, b));
        }
        open.retain(|&j| !sets[j].iter().any(|x| extremal.binary_search(x).is_ok()));
        for &j in &open {
            sets[j].retain(|&x| extremal.iter().all(|&e| u.nested(e, x)));
            if sets[j].is_empty() {
                return Err(Error::EmptyRestriction(j));
            }
        }
        nested.extend(&extremal);
        rounds.push(CanonicalRound {
            minimal,
            extremal,
            open: open.clone(),
        });
    }
    nested.sort_unstable();
    nested.dedup();
    if opts.prune_redundant {
        nested.retain(|s| fam.sets().iter().any(|set| set.binary_search(s).is_ok()));
    }
    if let Some((a, b)) = crossing_pair(u, &nested) {
        return Err(Error::NotNested(a, b));
    }
    debug_assert!(fam.is_met_by(&nested));
    Ok(CanonicalResult { nested, rounds })
}
