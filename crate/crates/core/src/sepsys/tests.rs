use proptest::prelude::*;

use super::*;
use crate::universes::{bipartition_universe, enumerate_graph_separations, min_side_order, restrict_sk, Graph, Limits};

fn bip(n: usize) -> SetUniverse {
    bipartition_universe(
        (1..=n).map(|i| i.to_string()).collect(),
        OrderFn::None,
        &Limits::default(),
    )
    .unwrap()
}

fn m(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |acc, v| acc | 1 << (v - 1))
}

fn sep(u: &SetUniverse, a: &[usize], b: &[usize]) -> OrientedSep {
    u.find(m(a), m(b)).unwrap()
}

fn all_oriented<U: Universe>(u: &U) -> Vec<OrientedSep> {
    let mut v: Vec<OrientedSep> = (0..u.size() as u32).flat_map(|i| u.orientations(SepId(i))).collect();
    v.dedup();
    v
}

#[test]
fn nestedness_of_bipartitions() {
    let u = bip(4);
    let r = sep(&u, &[1], &[2, 3, 4]).id();
    let s = sep(&u, &[1, 2], &[3, 4]).id();
    let t = sep(&u, &[2, 3], &[4, 1]).id();
    assert!(is_nested(&u, s, s).unwrap());
    assert!(is_nested(&u, r, s).unwrap());
    assert!(!is_nested(&u, s, t).unwrap());
    assert_eq!(crossing_pair(&u, &[r, s, t]), Some((s, t)));
}

#[test]
fn foreign_handles_are_rejected() {
    let u = bip(3);
    let bogus = SepId(u.size() as u32);
    assert!(matches!(
        is_nested(&u, SepId(0), bogus),
        Err(Error::ForeignSeparation(_))
    ));
    assert!(corners(&u, bogus, SepId(0)).is_err());
    assert!(SubSystem::new(&u, [bogus]).is_err());
}

#[test]
fn corners_of_crossing_and_nested_pairs() {
    let u = bip(4);
    let r = sep(&u, &[1, 2], &[3, 4]);
    let s = sep(&u, &[2, 3], &[4, 1]);
    let cs = corners(&u, r.id(), s.id()).unwrap();
    let j = cs
        .iter()
        .find(|c| c.pair == (r.is_inverted(), s.is_inverted()))
        .unwrap();
    assert_eq!(u.sides(j.join), (m(&[1, 2, 3]), m(&[4])));

    let a = sep(&u, &[1], &[2, 3, 4]).id();
    let cs = corners(&u, a, r.id()).unwrap();
    let ids: Vec<SepId> = cs.iter().map(Corner::sep).collect();
    assert!(ids.contains(&a) && ids.contains(&r.id()));

    let cs = corners(&u, r.id(), r.id()).unwrap();
    assert!(cs.iter().all(|c| c.sep() == r.id() || u.sides(c.join).1 == 0));
    assert_eq!(cs.iter().filter(|c| c.sep() == r.id()).count(), 2);
}

#[test]
fn different_sides_of_a_separation() {
    let u = bip(4);
    let r = sep(&u, &[1, 2], &[3, 4]);
    let s = sep(&u, &[2, 3], &[4, 1]);
    let rs = u.meet(r, s).id();
    let r_sbar = u.meet(r, u.invert(s)).id();
    let rbar_sbar = u.meet(u.invert(r), u.invert(s)).id();
    assert!(!from_different_sides(&u, r.id(), s.id(), rs, r_sbar).unwrap());
    assert!(from_different_sides(&u, r.id(), s.id(), rs, rbar_sbar).unwrap());
    let x = r.id();
    assert!(from_different_sides(&u, x, x, x, x).unwrap());
    assert!(from_different_sides(&u, r.id(), s.id(), x, rs).is_err());
}

#[test]
fn small_trivial_regular() {
    let u = bip(4);
    let empty = sep(&u, &[], &[1, 2, 3, 4]);
    assert!(is_small(&u, empty).unwrap());
    assert!(!is_small(&u, u.invert(empty)).unwrap());
    let r = sep(&u, &[1, 2], &[3, 4]);
    assert!(!is_small(&u, r).unwrap());

    let alone = SubSystem::new(&u, [empty.id()]).unwrap();
    assert!(!is_trivial(&u, empty, &alone).unwrap());
    let u2 = bip(2);
    let e2 = sep(&u2, &[], &[1, 2]);
    assert!(is_trivial(&u2, e2, &SubSystem::full(&u2)).unwrap());
    let full = SubSystem::full(&u);
    for s in all_oriented(&u) {
        let maximal = all_oriented(&u).into_iter().all(|t| !u.lt(s, t));
        if maximal {
            assert!(!is_trivial(&u, s, &full).unwrap());
        }
    }

    assert!(is_regular(&u, &[]).unwrap());
    assert!(!is_regular(&u, &[empty.id()]).unwrap());
    assert!(is_regular(&u, &[r.id()]).unwrap());
}

#[test]
fn structural_submodularity() {
    let u = bip(4);
    assert!(is_structurally_submodular(&u, &SubSystem::full(&u)));
    let r = sep(&u, &[1, 2], &[3, 4]).id();
    let s = sep(&u, &[2, 3], &[4, 1]).id();
    assert!(!is_structurally_submodular(&u, &SubSystem::new(&u, [r, s]).unwrap()));

    let w = bipartition_universe(
        (1..=6).map(|i| i.to_string()).collect(),
        min_side_order(),
        &Limits::default(),
    )
    .unwrap();
    for k in 0..=4 {
        assert!(is_structurally_submodular(&w, &restrict_sk(&w, k as f64)));
    }
}

/// Least upper bound found by scanning all upper bounds.
fn lub_oracle<U: Universe>(u: &U, r: OrientedSep, s: OrientedSep) -> OrientedSep {
    let all = all_oriented(u);
    let ub: Vec<OrientedSep> = all.iter().copied().filter(|&t| u.leq(r, t) && u.leq(s, t)).collect();
    let least: Vec<OrientedSep> = ub
        .iter()
        .copied()
        .filter(|&t| ub.iter().all(|&x| u.leq(t, x)))
        .collect();
    assert_eq!(least.len(), 1);
    least[0]
}

fn glb_oracle<U: Universe>(u: &U, r: OrientedSep, s: OrientedSep) -> OrientedSep {
    let all = all_oriented(u);
    let lb: Vec<OrientedSep> = all.iter().copied().filter(|&t| u.leq(t, r) && u.leq(t, s)).collect();
    let most: Vec<OrientedSep> = lb
        .iter()
        .copied()
        .filter(|&t| lb.iter().all(|&x| u.leq(x, t)))
        .collect();
    assert_eq!(most.len(), 1);
    most[0]
}

fn small_universes() -> Vec<SetUniverse> {
    let mut out = vec![bip(3), bip(4)];
    for text in ["a b\n", "a b\nb c\n", "a\nb\n", "a b\nc\n"] {
        let g = Graph::parse_edge_list(text).unwrap();
        let u = enumerate_graph_separations(&g, &Limits::default()).unwrap();
        if u.size() <= 12 {
            out.push(u);
        }
    }
    out
}

#[test]
fn lattice_operations_match_order_search() {
    for u in small_universes() {
        let all = all_oriented(&u);
        for &r in &all {
            for &s in &all {
                assert_eq!(u.join(r, s), lub_oracle(&u, r, s));
                assert_eq!(u.meet(r, s), glb_oracle(&u, r, s));
                assert_eq!(u.invert(u.join(r, s)), u.meet(u.invert(r), u.invert(s)));
                if u.leq(r, s) {
                    assert!(u.leq(u.invert(s), u.invert(r)));
                }
            }
        }
    }
}

#[test]
fn corners_are_nested_with_whatever_both_separations_are() {
    for u in small_universes() {
        let ids: Vec<SepId> = (0..u.size() as u32).map(SepId).collect();
        for &r in &ids {
            for &s in &ids {
                if u.nested(r, s) {
                    continue;
                }
                let cs = corners(&u, r, s).unwrap();
                for &t in &ids {
                    if u.nested(t, r) && u.nested(t, s) {
                        assert!(cs.iter().all(|c| u.nested(t, c.sep())));
                    }
                }
            }
        }
    }
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = pairs.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |bits| {
            let edges = pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn involution_reverses_order(g in arb_graph()) {
        let u = enumerate_graph_separations(&g, &Limits::default()).unwrap();
        let all = all_oriented(&u);
        for &r in &all {
            prop_assert_eq!(u.invert(u.invert(r)), r);
            prop_assert_eq!(u.order(r.id()), u.order(u.invert(r).id()));
            for &s in &all {
                if u.leq(r, s) {
                    prop_assert!(u.leq(u.invert(s), u.invert(r)));
                }
                let j = u.join(r, s);
                prop_assert!(u.leq(r, j) && u.leq(s, j));
                prop_assert_eq!(u.invert(j), u.meet(u.invert(r), u.invert(s)));
            }
        }
    }
}
