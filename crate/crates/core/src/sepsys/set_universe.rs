use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{OrientedSep, SepId, Universe};
use crate::error::{Error, Result};

/// Bitset over a ground set of at most 64 elements.
pub type Mask = u64;

/// Order function evaluated directly on the two sides of a separation.
#[derive(Clone)]
pub enum OrderFn {
    None,
    /// `|A ∩ B|`.
    Separator,
    Custom(Arc<dyn Fn(Mask, Mask) -> f64 + Send + Sync>),
}

impl OrderFn {
    pub fn custom(f: impl Fn(Mask, Mask) -> f64 + Send + Sync + 'static) -> Self {
        OrderFn::Custom(Arc::new(f))
    }

    pub fn eval(&self, a: Mask, b: Mask) -> Option<f64> {
        match self {
            OrderFn::None => None,
            OrderFn::Separator => Some((a & b).count_ones() as f64),
            OrderFn::Custom(f) => Some(f(a, b)),
        }
    }
}

impl fmt::Debug for OrderFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderFn::None => f.write_str("None"),
            OrderFn::Separator => f.write_str("Separator"),
            OrderFn::Custom(_) => f.write_str("Custom"),
        }
    }
}

/// Universe whose separations are pairs `(A, B)` of subsets of a ground set,
/// ordered by `A ⊆ C, B ⊇ D`, with `(A,B)* = (B,A)` and
/// `(A,B) ∨ (C,D) = (A ∪ C, B ∩ D)`.
///
/// Ids are assigned in order of (order value, canonical sides), where the
/// canonical orientation lists the lexicographically smaller side first.
#[derive(Clone)]
pub struct SetUniverse {
    labels: Vec<String>,
    sides: Vec<(Mask, Mask)>,
    index: FxHashMap<(Mask, Mask), OrientedSep>,
    orders: Option<Vec<f64>>,
    order_fn: OrderFn,
}

impl fmt::Debug for SetUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetUniverse")
            .field("ground", &self.labels)
            .field("size", &self.sides.len())
            .field("order_fn", &self.order_fn)
            .finish()
    }
}

/// Compares two sets as sorted element lists.
pub(crate) fn lex_cmp(a: Mask, b: Mask) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let i = diff.trailing_zeros();
    let above = if i == 63 { 0 } else { !0u64 << (i + 1) };
    let (holder, other) = if a >> i & 1 == 1 {
        (Ordering::Less, b)
    } else {
        (Ordering::Greater, a)
    };
    if other & above != 0 {
        holder
    } else {
        holder.reverse()
    }
}

fn canonical(a: Mask, b: Mask) -> ((Mask, Mask), bool) {
    match lex_cmp(a, b) {
        Ordering::Greater => ((b, a), true),
        _ => ((a, b), false),
    }
}

impl SetUniverse {
    /// Builds the universe from an explicit list of oriented pairs. The caller
    /// guarantees closure under the involution and under joins.
    pub(crate) fn from_sides(
        labels: Vec<String>,
        pairs: impl IntoIterator<Item = (Mask, Mask)>,
        order_fn: OrderFn,
    ) -> Result<Self> {
        let mut canon: Vec<(Mask, Mask)> = pairs.into_iter().map(|(a, b)| canonical(a, b).0).collect();
        canon.sort_unstable_by(|x, y| lex_cmp(x.0, y.0).then(lex_cmp(x.1, y.1)));
        canon.dedup();
        let mut keyed: Vec<(Option<f64>, (Mask, Mask))> = Vec::with_capacity(canon.len());
        for (a, b) in canon {
            let o = order_fn.eval(a, b);
            if let (Some(x), Some(y)) = (o, order_fn.eval(b, a)) {
                if x != y || x < 0.0 || !x.is_finite() {
                    return Err(Error::AsymmetricOrder(format!("({a:#b}, {b:#b})")));
                }
            }
            keyed.push((o, (a, b)));
        }
        // stable: keeps the canonical lexicographic order within one order value
        keyed.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
        let mut index = FxHashMap::default();
        index.reserve(keyed.len() * 2);
        let mut sides = Vec::with_capacity(keyed.len());
        let mut orders = Vec::with_capacity(keyed.len());
        for (i, (o, (a, b))) in keyed.into_iter().enumerate() {
            let id = SepId(i as u32);
            index.insert((a, b), OrientedSep::new(id, false));
            if a != b {
                index.insert((b, a), OrientedSep::new(id, true));
            }
            sides.push((a, b));
            orders.push(o.unwrap_or(0.0));
        }
        let orders = match order_fn {
            OrderFn::None => None,
            _ => Some(orders),
        };
        Ok(SetUniverse {
            labels,
            sides,
            index,
            orders,
            order_fn,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ground(&self) -> Mask {
        full_mask(self.labels.len())
    }

    pub fn order_fn(&self) -> &OrderFn {
        &self.order_fn
    }

    /// Sides `(A, B)` of an oriented separation.
    pub fn sides(&self, s: OrientedSep) -> (Mask, Mask) {
        let (a, b) = self.sides[s.id().index()];
        if s.is_inverted() {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// Looks up the oriented separation with the given sides.
    pub fn find(&self, a: Mask, b: Mask) -> Option<OrientedSep> {
        self.index.get(&(a, b)).copied()
    }

    pub fn order_of_sides(&self, a: Mask, b: Mask) -> Option<f64> {
        self.order_fn.eval(a, b)
    }

    /// Image of `s` under a permutation of the ground set, if it is a
    /// separation of this universe.
    pub fn permute(&self, s: OrientedSep, perm: &[usize]) -> Option<OrientedSep> {
        let (a, b) = self.sides(s);
        self.find(permute_mask(a, perm), permute_mask(b, perm))
    }

    pub fn format_mask(&self, m: Mask) -> String {
        let names: Vec<&str> = iter_bits(m).map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn format_oriented(&self, s: OrientedSep) -> String {
        let (a, b) = self.sides(s);
        format!("({}, {})", self.format_mask(a), self.format_mask(b))
    }

    pub fn format_sep(&self, s: SepId) -> String {
        self.format_oriented(OrientedSep::new(s, false))
    }

    /// Every join and meet of two elements exists. Quadratic; meant for tests.
    pub fn is_lattice_closed(&self) -> bool {
        let n = self.sides.len() as u32;
        (0..2 * n).all(|i| {
            (0..2 * n).all(|j| {
                let (a, b) = self.sides(OrientedSep(i));
                let (c, d) = self.sides(OrientedSep(j));
                self.find(a | c, b & d).is_some()
            })
        })
    }
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn iter_bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub(crate) fn permute_mask(m: Mask, perm: &[usize]) -> Mask {
    iter_bits(m).fold(0, |acc, i| acc | 1 << perm[i])
}

impl Universe for SetUniverse {
    fn size(&self) -> usize {
        self.sides.len()
    }

    fn invert(&self, s: OrientedSep) -> OrientedSep {
        let (a, b) = self.sides[s.id().index()];
        if a == b {
            s
        } else {
            s.flip_bit()
        }
    }

    fn leq(&self, r: OrientedSep, s: OrientedSep) -> bool {
        let (a, b) = self.sides(r);
        let (c, d) = self.sides(s);
        a & !c == 0 && d & !b == 0
    }

    fn join(&self, r: OrientedSep, s: OrientedSep) -> OrientedSep {
        let (a, b) = self.sides(r);
        let (c, d) = self.sides(s);
        self.find(a | c, b & d)
            .expect("set universe is closed under joins by construction")
    }

    fn meet(&self, r: OrientedSep, s: OrientedSep) -> OrientedSep {
        let (a, b) = self.sides(r);
        let (c, d) = self.sides(s);
        self.find(a & c, b | d)
            .expect("set universe is closed under meets by construction")
    }

    fn order(&self, s: SepId) -> Option<f64> {
        self.orders.as_ref().map(|o| o[s.index()])
    }
}
