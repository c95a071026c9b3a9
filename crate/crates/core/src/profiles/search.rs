//! Backtracking enumeration of orientations avoiding forbidden subsets.
//!
//! Each [`Constraint`] describes a family of forbidden sets of oriented
//! separations. After a separation is oriented, every constraint reports the
//! candidates that would complete a forbidden set together with it and the
//! orientations chosen before; those candidates are removed. A forbidden set
//! is thus caught no later than when its second-to-last element is chosen,
//! so every orientation reported avoids all forbidden sets.

use fixedbitset::FixedBitSet;

use super::{Orientation, ProfileKind};
use crate::error::{Error, Result};
use crate::sepsys::{Mask, OrientedSep, SetUniverse, SubSystem, Universe};
use crate::universes::Graph;

/// Caps on the search; exceeding one is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_base: usize,
    pub max_results: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_base: 4096,
            max_results: 100_000,
        }
    }
}

/// The orientations chosen so far, in choice order.
pub struct Chosen<'a> {
    list: &'a [OrientedSep],
    mask: &'a FixedBitSet,
}

impl Chosen<'_> {
    pub fn contains(&self, s: OrientedSep) -> bool {
        self.mask.contains(s.index())
    }

    pub fn iter(&self) -> impl Iterator<Item = OrientedSep> + '_ {
        self.list.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }
}

pub trait Constraint {
    /// Whether `c` on its own is allowed.
    fn admissible(&self, c: OrientedSep) -> bool;

    /// Pushes every candidate that lies in a forbidden set together with
    /// `last` and possibly further chosen elements. `chosen` already holds `last`.
    fn prune(&self, chosen: &Chosen<'_>, last: OrientedSep, candidates: &[OrientedSep], out: &mut Vec<OrientedSep>);
}

struct Consistency<'u, U: ?Sized> {
    u: &'u U,
}

impl<U: Universe + ?Sized> Constraint for Consistency<'_, U> {
    fn admissible(&self, c: OrientedSep) -> bool {
        !self.u.lt(self.u.invert(c), c)
    }

    fn prune(&self, _: &Chosen<'_>, last: OrientedSep, candidates: &[OrientedSep], out: &mut Vec<OrientedSep>) {
        let lbar = self.u.invert(last);
        for &c in candidates {
            if self.u.lt(lbar, c) || self.u.lt(self.u.invert(c), last) {
                out.push(c);
            }
        }
    }
}

/// Forbidden sets `{r⃗, s⃗, r̄ ∧ s̄}`.
struct ProfileProperty<'u, U: ?Sized> {
    u: &'u U,
}

impl<U: Universe + ?Sized> Constraint for ProfileProperty<'_, U> {
    fn admissible(&self, c: OrientedSep) -> bool {
        let cbar = self.u.invert(c);
        self.u.meet(cbar, cbar) != c
    }

    fn prune(&self, chosen: &Chosen<'_>, last: OrientedSep, candidates: &[OrientedSep], out: &mut Vec<OrientedSep>) {
        let u = self.u;
        let lbar = u.invert(last);
        // `last` and a chosen `s` force out their inverse-meet
        for s in chosen.iter() {
            out.push(u.meet(lbar, u.invert(s)));
        }
        for &c in candidates {
            let cbar = u.invert(c);
            let x = u.meet(lbar, cbar);
            if x == c || x == last || chosen.contains(x) {
                out.push(c);
                continue;
            }
            // `c` with a chosen `s` (or itself) would force out `last`
            if u.leq(last, cbar)
                && (u.meet(cbar, cbar) == last || chosen.iter().any(|s| u.meet(cbar, u.invert(s)) == last))
            {
                out.push(c);
            }
        }
    }
}

/// Forbidden sets of at most three orientations whose small sides cover the graph.
struct TangleProperty {
    cover: Vec<u128>,
    full: u128,
}

impl TangleProperty {
    fn new(u: &SetUniverse, g: &Graph) -> Self {
        let edges = g.edges();
        let cover = (0..2 * u.size() as u32)
            .map(|i| g.cover_mask(u.sides(OrientedSep::from_index(i)).0, &edges))
            .collect();
        TangleProperty {
            cover,
            full: g.full_cover(edges.len()),
        }
    }
}

impl Constraint for TangleProperty {
    fn admissible(&self, c: OrientedSep) -> bool {
        self.cover[c.index()] != self.full
    }

    fn prune(&self, chosen: &Chosen<'_>, last: OrientedSep, candidates: &[OrientedSep], out: &mut Vec<OrientedSep>) {
        let cl = self.cover[last.index()];
        // parts still missing after `last` together with one chosen element;
        // only the inclusion-minimal ones matter
        let mut missing: Vec<u128> = chosen
            .iter()
            .map(|b| self.full & !(cl | self.cover[b.index()]))
            .collect();
        missing.sort_unstable_by_key(|m| m.count_ones());
        let mut minimal: Vec<u128> = Vec::new();
        for m in missing {
            if !minimal.iter().any(|&k| k & !m == 0) {
                minimal.push(m);
            }
        }
        for &c in candidates {
            let cc = self.cover[c.index()];
            if minimal.iter().any(|&k| k & !cc == 0) {
                out.push(c);
            }
        }
    }
}

/// Forbidden sets of fewer than `n` orientations whose big sides meet in
/// fewer than `m` points.
struct CircleTangleProperty {
    big: Vec<Mask>,
    m: usize,
    n: usize,
}

impl CircleTangleProperty {
    fn small(&self, acc: Mask) -> bool {
        (acc.count_ones() as usize) < self.m
    }

    fn reaches_small(&self, pool: &[Mask], acc: Mask, left: usize) -> bool {
        self.small(acc)
            || (left > 0
                && pool
                    .iter()
                    .enumerate()
                    .any(|(i, &b)| self.reaches_small(&pool[i + 1..], acc & b, left - 1)))
    }
}

impl Constraint for CircleTangleProperty {
    fn admissible(&self, c: OrientedSep) -> bool {
        !self.small(self.big[c.index()])
    }

    fn prune(&self, chosen: &Chosen<'_>, last: OrientedSep, candidates: &[OrientedSep], out: &mut Vec<OrientedSep>) {
        let bl = self.big[last.index()];
        let pool: Vec<Mask> = chosen
            .iter()
            .filter(|&b| b != last)
            .map(|b| self.big[b.index()])
            .collect();
        for &c in candidates {
            if self.reaches_small(&pool, bl & self.big[c.index()], self.n - 3) {
                out.push(c);
            }
        }
    }
}

/// All orientations of `base` of the given kind, sorted.
pub fn enumerate_profiles(
    u: &SetUniverse,
    base: &SubSystem,
    kind: ProfileKind,
    graph: Option<&Graph>,
    limits: &SearchLimits,
) -> Result<Vec<Orientation>> {
    let consistency = Consistency { u };
    match kind.validate()? {
        ProfileKind::Profile => enumerate_with(u, base, &[&consistency, &ProfileProperty { u }], limits),
        ProfileKind::GraphTangle => {
            let g = graph.ok_or_else(|| Error::Input("graph tangles need the graph".into()))?;
            if g.labels() != u.labels() {
                return Err(Error::Input("graph does not match the universe".into()));
            }
            enumerate_with(u, base, &[&consistency, &TangleProperty::new(u, g)], limits)
        }
        ProfileKind::CircleTangle { m, n } => {
            let big = (0..2 * u.size() as u32)
                .map(|i| u.sides(OrientedSep::from_index(i)).1)
                .collect();
            if (u.ground().count_ones() as usize) < m {
                return Ok(Vec::new());
            }
            enumerate_with(u, base, &[&consistency, &CircleTangleProperty { big, m, n }], limits)
        }
    }
}

/// All orientations of `base` avoiding every forbidden set of the constraints.
pub fn enumerate_with<U: Universe + ?Sized>(
    u: &U,
    base: &SubSystem,
    constraints: &[&dyn Constraint],
    limits: &SearchLimits,
) -> Result<Vec<Orientation>> {
    if base.len() > limits.max_base {
        return Err(Error::SizeBound {
            what: "separations to orient",
            limit: limits.max_base,
            got: base.len(),
        });
    }
    let options: Vec<Vec<OrientedSep>> = base
        .members()
        .iter()
        .map(|&s| {
            let [a, b] = u.orientations(s);
            let mut v = vec![a];
            if b != a {
                v.push(b);
            }
            v
        })
        .collect();
    let mut var_of = vec![usize::MAX; 2 * u.size()];
    for (v, opts) in options.iter().enumerate() {
        for o in opts {
            var_of[o.index()] = v;
        }
    }
    let mut st = State {
        constraints,
        options,
        var_of,
        alive: FixedBitSet::with_capacity(2 * u.size()),
        count: Vec::new(),
        assigned: vec![false; base.len()],
        chosen: Vec::new(),
        chosen_mask: FixedBitSet::with_capacity(2 * u.size()),
        results: Vec::new(),
        max_results: limits.max_results,
    };
    st.count = st.options.iter().map(Vec::len).collect();
    for opts in &st.options {
        for &o in opts {
            st.alive.insert(o.index());
        }
    }
    for v in 0..st.options.len() {
        for o in st.options[v].clone() {
            if !constraints.iter().all(|c| c.admissible(o)) {
                st.alive.set(o.index(), false);
                st.count[v] -= 1;
            }
        }
    }
    if st.count.iter().all(|&c| c > 0) {
        st.search()?;
    }
    let mut results = st.results;
    results.sort();
    Ok(results)
}

struct State<'c> {
    constraints: &'c [&'c dyn Constraint],
    options: Vec<Vec<OrientedSep>>,
    var_of: Vec<usize>,
    alive: FixedBitSet,
    count: Vec<usize>,
    assigned: Vec<bool>,
    chosen: Vec<OrientedSep>,
    chosen_mask: FixedBitSet,
    results: Vec<Orientation>,
    max_results: usize,
}

impl State<'_> {
    fn next_var(&self) -> Option<usize> {
        (0..self.options.len())
            .filter(|&v| !self.assigned[v])
            .min_by_key(|&v| (self.count[v], v))
    }

    fn search(&mut self) -> Result<()> {
        let Some(v) = self.next_var() else {
            let mut choice = self.chosen.clone();
            choice.sort_unstable();
            self.results.push(Orientation::from_sorted(choice));
            if self.results.len() > self.max_results {
                return Err(Error::SizeBound {
                    what: "orientations found",
                    limit: self.max_results,
                    got: self.results.len(),
                });
            }
            return Ok(());
        };
        self.assigned[v] = true;
        for o in self.options[v].clone() {
            if !self.alive.contains(o.index()) {
                continue;
            }
            self.chosen.push(o);
            self.chosen_mask.insert(o.index());
            let candidates: Vec<OrientedSep> = (0..self.options.len())
                .filter(|&w| !self.assigned[w])
                .flat_map(|w| self.options[w].iter().copied())
                .filter(|c| self.alive.contains(c.index()))
                .collect();
            let mut forbidden = Vec::new();
            let view = Chosen {
                list: &self.chosen,
                mask: &self.chosen_mask,
            };
            for c in self.constraints {
                c.prune(&view, o, &candidates, &mut forbidden);
            }
            let mut killed = Vec::new();
            let mut wiped = false;
            for f in forbidden {
                let w = match self.var_of.get(f.index()) {
                    Some(&w) if w != usize::MAX => w,
                    _ => continue,
                };
                if self.assigned[w] || !self.alive.contains(f.index()) {
                    continue;
                }
                self.alive.set(f.index(), false);
                self.count[w] -= 1;
                killed.push((w, f));
                if self.count[w] == 0 {
                    wiped = true;
                    break;
                }
            }
            let outcome = if wiped { Ok(()) } else { self.search() };
            for (w, f) in killed {
                self.alive.insert(f.index());
                self.count[w] += 1;
            }
            self.chosen_mask.set(o.index(), false);
            self.chosen.pop();
            outcome?;
        }
        self.assigned[v] = false;
        Ok(())
    }
}
