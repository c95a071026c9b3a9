use serde::Deserialize;

use super::{bipartition_universe, cut_order, require_submodular, CutWeights, Limits};
use crate::error::{Error, Result};
use crate::sepsys::set_universe::full_mask;
use crate::sepsys::{Mask, OrderFn, OrientedSep, SepId, SetUniverse, SubSystem, Universe};

/// Points listed in cyclic order; point `i` is bit `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleGround {
    points: Vec<String>,
}

#[derive(Deserialize)]
struct CircleDoc {
    points: Vec<serde_json::Value>,
    #[serde(default)]
    order_graph: Option<Vec<(serde_json::Value, serde_json::Value, f64)>>,
}

fn label_of(v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Input(format!(
            "point label must be a string or number, got {other}"
        ))),
    }
}

impl CircleGround {
    pub fn new(points: Vec<String>) -> Result<Self> {
        let mut seen = points.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != points.len() {
            return Err(Error::Input("duplicate point label".into()));
        }
        Ok(CircleGround { points })
    }

    /// Points `1..=n` in natural cyclic order.
    pub fn natural(n: usize) -> Self {
        CircleGround {
            points: (1..=n).map(|i| i.to_string()).collect(),
        }
    }

    /// `{"points": [...], "order_graph": [[u, v, w], ...]}`; the weighted
    /// edges, when present, define a cut order function.
    pub fn parse_json(text: &str) -> Result<(Self, Option<CutWeights>)> {
        let doc: CircleDoc = serde_json::from_str(text)?;
        let ground = CircleGround::new(doc.points.iter().map(label_of).collect::<Result<_>>()?)?;
        let weights = match doc.order_graph {
            None => None,
            Some(edges) => Some(
                edges
                    .iter()
                    .map(|(u, v, w)| Ok((ground.position(&label_of(u)?)?, ground.position(&label_of(v)?)?, *w)))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok((ground, weights))
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::Input(format!("unknown point {label}")))
    }

    /// Mask of the given labels.
    pub fn mask_of(&self, labels: &[&str]) -> Result<Mask> {
        labels.iter().try_fold(0, |m, l| Ok(m | 1 << self.position(l)?))
    }

    /// Cut order of the cycle through the points in cyclic order, with unit weights.
    pub fn cycle_cut(&self) -> OrderFn {
        let n = self.len();
        cut_order((0..n).filter(|_| n > 1).map(|i| (i, (i + 1) % n, 1.0)).collect())
    }
}

/// `A` and its complement are both cyclic intervals; `∅` and the whole set count.
pub fn is_circle_mask(n: usize, a: Mask) -> bool {
    if n == 0 {
        return true;
    }
    let rotated = (a >> 1) | ((a & 1) << (n - 1));
    ((a ^ rotated) & full_mask(n)).count_ones() <= 2
}

/// Circle separations inside the universe of all bipartitions of the points.
#[derive(Clone, Debug)]
pub struct CircleSystem {
    pub ground: CircleGround,
    pub universe: SetUniverse,
    pub system: SubSystem,
}

/// Builds the bipartition universe with the given order function, rejecting
/// it unless submodular, and marks its circle separations.
pub fn circle_universe(ground: CircleGround, order: OrderFn, limits: &Limits) -> Result<CircleSystem> {
    let n = ground.len();
    let universe = bipartition_universe(ground.points.clone(), order, limits)?;
    require_submodular(&universe)?;
    let members = (0..universe.size() as u32).map(SepId).filter(|&s| {
        let (a, _) = universe.sides(OrientedSep::new(s, false));
        is_circle_mask(n, a)
    });
    let system = SubSystem::new(&universe, members)?;
    Ok(CircleSystem {
        ground,
        universe,
        system,
    })
}

impl CircleSystem {
    pub fn find(&self, a: &[&str], b: &[&str]) -> Result<OrientedSep> {
        let (a, b) = (self.ground.mask_of(a)?, self.ground.mask_of(b)?);
        self.universe
            .find(a, b)
            .ok_or_else(|| Error::Input("not a bipartition of the points".into()))
    }

    /// Join of two oriented separations and whether it is a circle separation.
    pub fn join_report(&self, r: OrientedSep, s: OrientedSep) -> (OrientedSep, bool) {
        let j = self.universe.join(r, s);
        (j, self.system.contains(j.id()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universes::min_side_order;

    #[test]
    fn intervals_on_four_points() {
        assert!(is_circle_mask(4, 0b0001));
        assert!(is_circle_mask(4, 0b1001));
        assert!(is_circle_mask(4, 0));
        assert!(is_circle_mask(4, 0b1111));
        assert!(!is_circle_mask(4, 0b0101));
    }

    #[test]
    fn join_of_two_singletons_leaves_the_system() {
        let cs = circle_universe(CircleGround::natural(4), min_side_order(), &Limits::default()).unwrap();
        let r = cs.find(&["1"], &["2", "3", "4"]).unwrap();
        let s = cs.find(&["3"], &["4", "1", "2"]).unwrap();
        assert!(cs.system.contains(r.id()) && cs.system.contains(s.id()));
        assert!(!cs.system.contains(cs.find(&["1", "3"], &["2", "4"]).unwrap().id()));
        let (j, inside) = cs.join_report(r, s);
        assert_eq!(cs.universe.sides(j), (0b0101, 0b1010));
        assert!(!inside);
    }

    #[test]
    fn parses_points_and_weights() {
        let (g, w) =
            CircleGround::parse_json(r#"{"points": ["a", "c", "b"], "order_graph": [["a", "b", 2.0]]}"#).unwrap();
        assert_eq!(g.points(), ["a", "c", "b"]);
        assert_eq!(w.unwrap(), vec![(0, 2, 2.0)]);
    }

    #[test]
    fn rejects_non_submodular_order() {
        let bad = OrderFn::custom(|a, b| {
            if a.count_ones() == 2 && b.count_ones() == 2 {
                0.0
            } else {
                5.0
            }
        });
        let err = circle_universe(CircleGround::natural(4), bad, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::NotSubmodular(_)));
    }
}
