use serde::Serialize;

use super::{splinters, Family};
use crate::error::{Error, Result};
use crate::sepsys::{crossing_pair, SepId, Universe};

/// How a pivot is found at each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TransversalMethod {
    /// [`TransversalMethod::Inductive`] up to [`INDUCTIVE_MAX_SETS`] sets, [`TransversalMethod::PivotScan`] beyond.
    #[default]
    Auto,
    /// Take the first element, by set index then id, that is nested with
    /// some element of every other remaining set.
    PivotScan,
    /// Solve all but the last set recursively and compare with one element
    /// of the last set. Exponential in the number of sets.
    Inductive,
}

/// Sets beyond this make [`TransversalMethod::Inductive`] refuse.
pub const INDUCTIVE_MAX_SETS: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub depth: usize,
    /// Index of the set the pivot was taken from.
    pub set: usize,
    pub pivot: SepId,
    /// Sets already containing the pivot.
    pub satisfied: Vec<usize>,
    /// Remaining sets with their sizes after restriction.
    pub remaining: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransversalResult {
    /// For every set, the chosen element of the nested set lying in it.
    pub picks: Vec<SepId>,
    /// The nested set, by id.
    pub nested: Vec<SepId>,
    pub trace: Vec<TraceStep>,
}

impl TransversalResult {
    /// One JSON object per step.
    pub fn trace_jsonl(&self) -> String {
        self.trace
            .iter()
            .map(|s| serde_json::to_string(s).expect("plain data serializes") + "\n")
            .collect()
    }
}

type Work = Vec<(usize, Vec<SepId>)>;

pub fn extract_transversal<U: Universe + ?Sized>(u: &U, fam: &Family) -> Result<TransversalResult> {
    extract_transversal_with(u, fam, TransversalMethod::Auto)
}

/// A nested set with an element in every set of a splintering family.
/// Other families may get [`Error::NoPivot`]; the output is checked either way.
pub fn extract_transversal_with<U: Universe + ?Sized>(
    u: &U,
    fam: &Family,
    method: TransversalMethod,
) -> Result<TransversalResult> {
    fam.check(u)?;
    let work: Work = fam.sets().iter().cloned().enumerate().collect();
    let mut trace = Vec::new();
    let mut picks = vec![None; fam.len()];
    let check = cfg!(debug_assertions) && splinters(u, fam)?;
    let method = match method {
        TransversalMethod::Auto if fam.len() <= INDUCTIVE_MAX_SETS => TransversalMethod::Inductive,
        TransversalMethod::Auto => TransversalMethod::PivotScan,
        s => s,
    };
    match method {
        TransversalMethod::Auto => unreachable!(),
        TransversalMethod::PivotScan => pivot_scan(u, work, &mut picks, &mut trace, check)?,
        TransversalMethod::Inductive => {
            if fam.len() > INDUCTIVE_MAX_SETS {
                return Err(Error::SizeBound {
                    what: "sets for the inductive strategy",
                    limit: INDUCTIVE_MAX_SETS,
                    got: fam.len(),
                });
            }
            for (i, s) in inductive(u, &work, 0, Some(&mut trace), check)? {
                picks[i] = Some(s);
            }
        }
    }
    let picks: Vec<SepId> = picks.into_iter().map(|p| p.expect("every set gets a pick")).collect();
    let mut nested = picks.clone();
    nested.sort_unstable();
    nested.dedup();
    if let Some((a, b)) = crossing_pair(u, &nested) {
        return Err(Error::NotNested(a, b));
    }
    debug_assert!(picks.iter().zip(fam.sets()).all(|(p, s)| s.contains(p)));
    Ok(TransversalResult { picks, nested, trace })
}

fn restrict<U: Universe + ?Sized>(u: &U, work: Work, pivot: SepId) -> Work {
    work.into_iter()
        .map(|(i, set)| (i, set.into_iter().filter(|&x| u.nested(pivot, x)).collect()))
        .collect()
}

fn assert_splinters<U: Universe + ?Sized>(u: &U, work: &Work) {
    if let Ok(f) = Family::unordered(work.iter().map(|(_, s)| s.clone()).collect()) {
        assert!(
            splinters(u, &f).unwrap_or(false),
            "restriction of a splintering family must splinter"
        );
    }
}

fn pivot_scan<U: Universe + ?Sized>(
    u: &U,
    mut work: Work,
    picks: &mut [Option<SepId>],
    trace: &mut Vec<TraceStep>,
    check: bool,
) -> Result<()> {
    let mut depth = 0;
    while !work.is_empty() {
        let found = work.iter().enumerate().find_map(|(p, (_, set))| {
            set.iter()
                .copied()
                .find(|&e| {
                    work.iter()
                        .enumerate()
                        .all(|(q, (_, other))| q == p || other.iter().any(|&x| u.nested(e, x)))
                })
                .map(|e| (p, e))
        });
        let Some((p, pivot)) = found else {
            return Err(Error::NoPivot {
                depth,
                remaining: work.len(),
            });
        };
        let set = work[p].0;
        let (hit, rest): (Work, Work) = work.into_iter().partition(|(_, set)| set.binary_search(&pivot).is_ok());
        let satisfied: Vec<usize> = hit.iter().map(|&(i, _)| i).collect();
        for &i in &satisfied {
            picks[i] = Some(pivot);
        }
        work = restrict(u, rest, pivot);
        if check {
            assert_splinters(u, &work);
        }
        trace.push(TraceStep {
            depth,
            set,
            pivot,
            satisfied,
            remaining: work.iter().map(|(i, s)| (*i, s.len())).collect(),
        });
        depth += 1;
    }
    Ok(())
}

/// Picks `(set index, element)` for every set of `work`.
fn inductive<U: Universe + ?Sized>(
    u: &U,
    work: &[(usize, Vec<SepId>)],
    depth: usize,
    trace: Option<&mut Vec<TraceStep>>,
    check: bool,
) -> Result<Vec<(usize, SepId)>> {
    let n = work.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let last = &work[n - 1].1;
    let an = last[0];
    let (pivot_pos, pivot) = if n == 1 {
        (0, an)
    } else {
        let prefix = inductive(u, &work[..n - 1], depth, None, false)?;
        let in_last = |x: SepId| last.binary_search(&x).is_ok();
        match prefix
            .iter()
            .position(|&(_, a)| in_last(a) || u.meet_positions(a, an).iter().any(|&c| in_last(c)))
        {
            Some(p) => (p, prefix[p].1),
            None => (n - 1, an),
        }
    };
    let rest: Work = work
        .iter()
        .enumerate()
        .filter(|&(p, _)| p != pivot_pos)
        .map(|(_, w)| w.clone())
        .collect();
    let rest = restrict(u, rest, pivot);
    if rest.iter().any(|(_, s)| s.is_empty()) {
        return Err(Error::NoPivot { depth, remaining: n });
    }
    if check {
        assert_splinters(u, &rest);
    }
    let mut trace = trace;
    if let Some(t) = trace.as_deref_mut() {
        t.push(TraceStep {
            depth,
            set: work[pivot_pos].0,
            pivot,
            satisfied: vec![work[pivot_pos].0],
            remaining: rest.iter().map(|(i, s)| (*i, s.len())).collect(),
        });
    }
    let mut out = inductive(u, &rest, depth + 1, trace, check)?;
    out.push((work[pivot_pos].0, pivot));
    out.sort_unstable();
    Ok(out)
}
