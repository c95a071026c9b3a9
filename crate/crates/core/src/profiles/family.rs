use super::{distinguishers, Orientation};
use crate::error::{Error, Result};
use crate::sepsys::{OrientedSep, SepId, Universe};
use crate::splinter::{Family, IndexOrder};
use crate::universes::OrderedFamilySequence;

/// What "efficient" is measured against.
#[derive(Clone, Copy, Debug)]
pub enum Efficiency<'a> {
    /// Least order of the universe's order function.
    ByOrder,
    /// Lowest level of a sequence of systems; only separations in its last
    /// system count as distinguishers.
    BySequence(&'a OrderedFamilySequence),
}

/// Which distinguishers make up each set of a family.
#[derive(Clone, Copy, Debug)]
pub enum FamilyMode<'a> {
    All,
    Efficient(Efficiency<'a>),
}

/// How the sets of a family are ordered.
#[derive(Clone, Copy, Debug)]
pub enum IndexOrderMode<'a> {
    /// No two indices are comparable.
    Trivial,
    /// `i ≺ j` iff the least order in set `i` is below the least order in set `j`.
    ByOrder,
    /// `i ≺ j` iff the lowest level of set `i` is below that of set `j`.
    ByLevel(&'a OrderedFamilySequence),
}

/// One set of distinguishers per distinguishable pair of orientations.
#[derive(Clone, Debug)]
pub struct DistinguisherFamily {
    /// Index pairs into the orientation list, one per set of `family`.
    pub pairs: Vec<(usize, usize)>,
    pub family: Family,
    /// Pairs left out because nothing distinguishes them.
    pub excluded: Vec<(usize, usize)>,
}

/// Distinguishers of `p` and `q` of least order, or at the lowest level.
pub fn efficient_distinguishers<U: Universe + ?Sized>(
    u: &U,
    p: &Orientation,
    q: &Orientation,
    ctx: Efficiency<'_>,
) -> Vec<SepId> {
    let all = distinguishers(p, q);
    match ctx {
        Efficiency::ByOrder => {
            let key = |s: &SepId| u.order(*s).unwrap_or(0.0);
            let Some(least) = all.iter().map(key).reduce(f64::min) else {
                return all;
            };
            all.into_iter().filter(|s| key(s) == least).collect()
        }
        Efficiency::BySequence(seq) => {
            let levelled: Vec<(SepId, usize)> = all.into_iter().filter_map(|s| Some((s, seq.level(s)?))).collect();
            let Some(least) = levelled.iter().map(|&(_, l)| l).min() else {
                return Vec::new();
            };
            levelled
                .into_iter()
                .filter(|&(_, l)| l == least)
                .map(|(s, _)| s)
                .collect()
        }
    }
}

/// Builds `A_{P,P'}` for every pair of orientations, or only for the
/// `requested` pairs, which must then be distinguishable.
pub fn build_distinguisher_family<U: Universe + ?Sized>(
    u: &U,
    profiles: &[Orientation],
    mode: FamilyMode<'_>,
    order_mode: IndexOrderMode<'_>,
    requested: Option<&[(usize, usize)]>,
) -> Result<DistinguisherFamily> {
    let pairs: Vec<(usize, usize)> = match requested {
        Some(r) => r.to_vec(),
        None => (0..profiles.len())
            .flat_map(|i| (i + 1..profiles.len()).map(move |j| (i, j)))
            .collect(),
    };
    let mut kept = Vec::new();
    let mut sets = Vec::new();
    let mut excluded = Vec::new();
    for (i, j) in pairs {
        let (p, q) = match (profiles.get(i), profiles.get(j)) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(Error::Input(format!("pair ({i}, {j}) is out of range"))),
        };
        let set = match mode {
            FamilyMode::All => distinguishers(p, q),
            FamilyMode::Efficient(ctx) => efficient_distinguishers(u, p, q, ctx),
        };
        if set.is_empty() {
            if requested.is_some() {
                return Err(Error::Indistinguishable(i, j));
            }
            excluded.push((i, j));
        } else {
            kept.push((i, j));
            sets.push(set);
        }
    }
    let order = match order_mode {
        IndexOrderMode::Trivial => IndexOrder::Trivial,
        IndexOrderMode::ByOrder => IndexOrder::Ranked(
            sets.iter()
                .map(|set| {
                    set.iter()
                        .map(|&s| u.order(s).unwrap_or(0.0))
                        .fold(f64::INFINITY, f64::min)
                })
                .collect(),
        ),
        IndexOrderMode::ByLevel(seq) => IndexOrder::Ranked(
            sets.iter()
                .map(|set| {
                    set.iter()
                        .filter_map(|&s| seq.level(s))
                        .min()
                        .map_or(f64::INFINITY, |l| l as f64)
                })
                .collect(),
        ),
    };
    Ok(DistinguisherFamily {
        pairs: kept,
        family: Family::new(sets, order)?,
        excluded,
    })
}

/// A triple of orientations breaking structural robustness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustnessViolation {
    pub p: usize,
    pub q: usize,
    pub q_prime: usize,
    /// `r⃗ ∈ Q ∩ Q'` with `r̄ ∈ P`.
    pub r: OrientedSep,
    /// Efficient distinguisher of `Q` and `Q'`.
    pub s: SepId,
    /// Level of `s`; no orientation of `s` has `r̄ ∨ s⃗ ∈ P` or `r⃗ ∨ s⃗` in this level.
    pub level: usize,
}

pub fn is_robust_set<U: Universe + ?Sized>(u: &U, profiles: &[Orientation], seq: &OrderedFamilySequence) -> bool {
    robustness_violation(u, profiles, seq).is_none()
}

/// Checks every triple `P, Q, Q'`. The condition only gets weaker at higher
/// levels, so each `s` is tested at its lowest one.
pub fn robustness_violation<U: Universe + ?Sized>(
    u: &U,
    profiles: &[Orientation],
    seq: &OrderedFamilySequence,
) -> Option<RobustnessViolation> {
    for (qi, q) in profiles.iter().enumerate() {
        for (qj, q2) in profiles.iter().enumerate().skip(qi + 1) {
            let eff = efficient_distinguishers(u, q, q2, Efficiency::BySequence(seq));
            if eff.is_empty() {
                continue;
            }
            let common: Vec<OrientedSep> = q.choice().iter().copied().filter(|&r| q2.contains(r)).collect();
            for (pi, p) in profiles.iter().enumerate() {
                for &r in &common {
                    let rbar = u.invert(r);
                    if !p.contains(rbar) {
                        continue;
                    }
                    for &s in &eff {
                        let level = seq.level(s).expect("efficient distinguishers lie in the sequence");
                        let sys = &seq.systems()[level];
                        let ok = u
                            .orientations(s)
                            .into_iter()
                            .any(|so| p.contains(u.join(rbar, so)) || sys.contains(u.join(r, so).id()));
                        if !ok {
                            return Some(RobustnessViolation {
                                p: pi,
                                q: qi,
                                q_prime: qj,
                                r,
                                s,
                                level,
                            });
                        }
                    }
                }
            }
        }
    }
    None
}
