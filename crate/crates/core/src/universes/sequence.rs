use super::{order_thresholds, restrict_below};
use crate::error::{Error, Result};
use crate::sepsys::{corners, submodularity_violation, OrientedSep, SepId, SubSystem, Universe};

/// Ascending chain `S_1 ⊆ … ⊆ S_n` of subsystems of one universe.
#[derive(Clone, Debug)]
pub struct OrderedFamilySequence {
    systems: Vec<SubSystem>,
}

impl OrderedFamilySequence {
    pub fn new(systems: Vec<SubSystem>) -> Result<Self> {
        for (i, w) in systems.windows(2).enumerate() {
            if !w[0].is_subset(&w[1]) {
                return Err(Error::NotAChain(i, i + 1));
            }
        }
        Ok(OrderedFamilySequence { systems })
    }

    pub fn systems(&self) -> &[SubSystem] {
        &self.systems
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    /// Index of the first system containing `s`.
    pub fn level(&self, s: SepId) -> Option<usize> {
        self.systems.iter().position(|sys| sys.contains(s))
    }

    /// Union of all systems, which is the last one.
    pub fn top(&self) -> Option<&SubSystem> {
        self.systems.last()
    }
}

/// The slices `S_k ⊆ base` at every threshold where they change.
pub fn order_slices<U: Universe + ?Sized>(u: &U, base: &SubSystem) -> OrderedFamilySequence {
    let systems = order_thresholds(u, base)
        .into_iter()
        .map(|k| restrict_below(u, base, k))
        .collect();
    OrderedFamilySequence { systems }
}

/// Why a sequence is not compatible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceViolation {
    /// `S_level` is not structurally submodular.
    NotSubmodular {
        level: usize,
        pair: (OrientedSep, OrientedSep),
    },
    /// Too few corners of `r ∈ S_i` and `s ∈ S_j` in `S_i` and in `S_j`.
    Corners { r: SepId, s: SepId, i: usize, j: usize },
}

pub fn is_compatible_sequence<U: Universe + ?Sized>(u: &U, seq: &OrderedFamilySequence) -> bool {
    compatibility_violation(u, seq).is_none()
}

/// First violation, if any. Since the corner counts only grow along the
/// chain, each pair is tested at the smallest admissible levels.
pub fn compatibility_violation<U: Universe + ?Sized>(u: &U, seq: &OrderedFamilySequence) -> Option<SequenceViolation> {
    for (level, sys) in seq.systems.iter().enumerate() {
        if let Some(pair) = submodularity_violation(u, sys) {
            return Some(SequenceViolation::NotSubmodular { level, pair });
        }
    }
    let top = seq.top()?;
    let levels: Vec<(SepId, usize)> = top.members().iter().map(|&s| (s, seq.level(s).unwrap())).collect();
    for &(r, lr) in &levels {
        for &(s, ls) in &levels {
            let (i, j) = (lr, lr.max(ls));
            let cs = corners(u, r, s).expect("members of the sequence");
            let count = |sys: &SubSystem| cs.iter().filter(|c| sys.contains(c.sep())).count();
            if count(&seq.systems[i]) < 2 && count(&seq.systems[j]) < 3 {
                return Some(SequenceViolation::Corners { r, s, i, j });
            }
        }
    }
    None
}
