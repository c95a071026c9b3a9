use proptest::prelude::*;

use super::*;
use crate::sepsys::{is_nested_set, Mask, OrderFn, OrientedSep, SetUniverse};
use crate::universes::{bipartition_universe, enumerate_graph_separations, restrict_sk, Graph, Limits};

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

fn id(u: &SetUniverse, a: &[usize], b: &[usize]) -> SepId {
    u.find(m(a), m(b)).unwrap().id()
}

/// Two crossing bipartitions of {1..4}.
fn crossing_pair_of(u: &SetUniverse) -> (SepId, SepId) {
    (id(u, &[1, 2], &[3, 4]), id(u, &[2, 3], &[4, 1]))
}

/// Every transversal, by brute force, keeping the nested ones.
fn nested_transversals<U: Universe>(u: &U, fam: &Family) -> Vec<Vec<SepId>> {
    fn go<U: Universe>(u: &U, sets: &[Vec<SepId>], acc: &mut Vec<SepId>, out: &mut Vec<Vec<SepId>>) {
        let Some((first, rest)) = sets.split_first() else {
            out.push(acc.clone());
            return;
        };
        for &x in first {
            if acc.iter().all(|&y| u.nested(x, y)) {
                acc.push(x);
                go(u, rest, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(u, fam.sets(), &mut Vec::new(), &mut out);
    out
}

#[test]
fn nested_singletons() {
    let u = bip(4);
    let seps = [
        id(&u, &[1], &[2, 3, 4]),
        id(&u, &[1, 2], &[3, 4]),
        id(&u, &[4], &[1, 2, 3]),
    ];
    let fam = Family::unordered(seps.iter().map(|&s| vec![s]).collect()).unwrap();
    assert!(splinters(&u, &fam).unwrap());
    assert!(splinters_hierarchically(&u, &fam).unwrap());
    for method in [TransversalMethod::PivotScan, TransversalMethod::Inductive] {
        let t = extract_transversal_with(&u, &fam, method).unwrap();
        assert_eq!(t.picks, seps);
    }
    let mut sorted = seps.to_vec();
    sorted.sort();
    let c = extract_canonical(&u, &fam, CanonicalOptions::default()).unwrap();
    assert_eq!(c.nested, sorted);
}

#[test]
fn one_set_of_two_crossing_separations() {
    let u = bip(4);
    let (s, t) = crossing_pair_of(&u);
    let fam = Family::unordered(vec![vec![s, t]]).unwrap();
    assert!(splinters(&u, &fam).unwrap());
    let v = hierarchy_violation(&u, &fam).unwrap().unwrap();
    assert_eq!((v.i, v.j, v.comparable), (0, 0, false));
    let first = s.min(t);
    assert_eq!(extract_transversal(&u, &fam).unwrap().picks, vec![first]);
    assert!(matches!(
        extract_canonical(&u, &fam, CanonicalOptions::default()),
        Err(Error::ExtremalCrossing(_, _))
    ));
}

#[test]
fn two_crossing_singletons_do_not_splinter() {
    let u = bip(4);
    let (s, t) = crossing_pair_of(&u);
    let fam = Family::unordered(vec![vec![s], vec![t]]).unwrap();
    let v = splinter_violation(&u, &fam).unwrap().unwrap();
    assert_eq!((v.i, v.j, v.a, v.b), (0, 1, s.min(t), s.max(t)));
    assert!(matches!(extract_transversal(&u, &fam), Err(Error::NoPivot { .. })));
    assert!(matches!(
        extract_transversal_with(&u, &fam, TransversalMethod::Inductive),
        Err(Error::NoPivot { .. })
    ));
}

#[test]
fn a_corner_in_the_union_repairs_the_pair() {
    let u = bip(4);
    let (s, t) = crossing_pair_of(&u);
    let corner = u.join(OrientedSep::new(s, false), OrientedSep::new(t, false)).id();
    let fam = Family::unordered(vec![vec![s, corner], vec![t]]).unwrap();
    assert!(splinters(&u, &fam).unwrap());
    let r = extract_transversal(&u, &fam).unwrap();
    assert!(is_nested_set(&u, &r.nested) && fam.is_met_by(&r.nested));
}

#[test]
fn family_construction_errors() {
    assert!(matches!(
        Family::unordered(vec![vec![SepId(0)], vec![]]),
        Err(Error::EmptySet(1))
    ));
    let cyclic = IndexOrder::Explicit(vec![vec![false, true], vec![true, false]]);
    assert!(matches!(cyclic.validate(2), Err(Error::NotStrictPartialOrder(_))));
    let reflexive = IndexOrder::Explicit(vec![vec![true]]);
    assert!(reflexive.validate(1).is_err());
    let broken = IndexOrder::Explicit(vec![
        vec![false, true, false],
        vec![false, false, true],
        vec![false, false, false],
    ]);
    assert!(broken.validate(3).is_err());
    assert!(IndexOrder::Ranked(vec![1.0, f64::NAN]).validate(2).is_err());
    let u = bip(3);
    let fam = Family::unordered(vec![vec![SepId(u.size() as u32)]]).unwrap();
    assert!(matches!(splinters(&u, &fam), Err(Error::ForeignSeparation(_))));
}

#[test]
fn minimal_indices() {
    let o = IndexOrder::Ranked(vec![2.0, 1.0, 1.0, 3.0]);
    assert_eq!(o.minimal(&[0, 1, 2, 3]), vec![1, 2]);
    assert_eq!(o.minimal(&[0, 3]), vec![0]);
    assert_eq!(IndexOrder::Trivial.minimal(&[4, 2]), vec![4, 2]);
}

#[test]
fn extremal_elements_of_small_sets() {
    let u = bip(4);
    let s = id(&u, &[1, 2], &[3, 4]);
    assert_eq!(extremal_elements(&u, &[s]), vec![s]);
    let r = id(&u, &[1], &[2, 3, 4]);
    let mut both = vec![r, s];
    both.sort();
    assert_eq!(extremal_elements(&u, &[r, s]), both);
    let t = id(&u, &[1, 2, 3], &[4]);
    let mut ends = vec![r, t];
    ends.sort();
    assert_eq!(extremal_elements(&u, &[r, s, t]), ends);
}

#[test]
fn extremal_elements_of_a_star_match_a_scan() {
    let g = Graph::parse_edge_list("c a\nc b\nc d\n").unwrap();
    let u = enumerate_graph_separations(&g, &Limits::default()).unwrap();
    for k in [1.0, 2.0] {
        let set = restrict_sk(&u, k).members().to_vec();
        let oriented: Vec<OrientedSep> = set.iter().flat_map(|&s| u.orientations(s)).collect();
        let expected: Vec<SepId> = set
            .iter()
            .copied()
            .filter(|&s| {
                u.orientations(s)
                    .iter()
                    .any(|&o| oriented.iter().all(|&x| x == o || !u.leq(o, x)))
            })
            .collect();
        assert_eq!(extremal_elements(&u, &set), expected);
    }
}

#[test]
fn isomorphisms() {
    let u = bip(3);
    let r = id(&u, &[1], &[2, 3]);
    let t = id(&u, &[1, 2], &[3]);
    let fam = Family::unordered(vec![vec![r], vec![r, t]]).unwrap();
    let ident = SepIsomorphism::new(&u, &u, &[r, t], Some).unwrap();
    assert_eq!(map_family(&fam, &ident).unwrap(), fam);

    let flip = SepIsomorphism::new(&u, &u, &[r, t], |x| Some(if x.id() == r { u.invert(x) } else { x }));
    assert!(matches!(flip, Err(Error::NotIsomorphism(_))));

    let swap = SepIsomorphism::from_permutation(&u, &[r, t], &[2, 1, 0]).unwrap();
    let image = map_family(&fam, &swap).unwrap();
    let r2 = id(&u, &[3], &[1, 2]);
    let t2 = id(&u, &[2, 3], &[1]);
    assert_eq!(image.sets()[0], vec![r2]);
    assert!(image.sets()[1].contains(&t2));
    assert!(SepIsomorphism::from_permutation(&u, &[r], &[0, 1]).is_err());
}

#[test]
fn trace_lines_are_json() {
    let u = bip(4);
    let seps = [id(&u, &[1], &[2, 3, 4]), id(&u, &[4], &[1, 2, 3])];
    let fam = Family::unordered(seps.iter().map(|&s| vec![s]).collect()).unwrap();
    let t = extract_transversal(&u, &fam).unwrap();
    let lines: Vec<serde_json::Value> = t
        .trace_jsonl()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), t.trace.len());
    assert!(lines
        .iter()
        .all(|v| v.get("pivot").is_some() && v.get("depth").is_some()));
}

fn arb_family(size: usize) -> impl Strategy<Value = Vec<Vec<SepId>>> {
    proptest::collection::vec(
        proptest::collection::btree_set(0..size as u32, 1..=3).prop_map(|s| s.into_iter().map(SepId).collect()),
        1..=5,
    )
}

fn bip5() -> SetUniverse {
    bip(5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn extraction_agrees_with_brute_force(sets in arb_family(16)) {
        let u = bip5();
        let fam = Family::unordered(sets).unwrap();
        let brute = nested_transversals(&u, &fam);
        if splinters(&u, &fam).unwrap() {
            prop_assert!(!brute.is_empty());
            for method in [TransversalMethod::PivotScan, TransversalMethod::Inductive] {
                let t = extract_transversal_with(&u, &fam, method).unwrap();
                prop_assert!(is_nested_set(&u, &t.nested));
                for (p, set) in t.picks.iter().zip(fam.sets()) {
                    prop_assert!(set.contains(p));
                }
            }
        } else if let Ok(t) = extract_transversal(&u, &fam) {
            prop_assert!(is_nested_set(&u, &t.nested) && fam.is_met_by(&t.nested));
        }
    }

    #[test]
    fn canonical_extraction_is_sound(sets in arb_family(16), ranks in proptest::collection::vec(0u8..3, 5)) {
        let u = bip5();
        let n = sets.len();
        let order = IndexOrder::Ranked(ranks[..n].iter().map(|&r| r as f64).collect());
        let fam = Family::new(sets, order).unwrap();
        if splinters_hierarchically(&u, &fam).unwrap() {
            prop_assert!(splinters(&u, &fam).unwrap());
            let c = extract_canonical(&u, &fam, CanonicalOptions::default()).unwrap();
            prop_assert!(is_nested_set(&u, &c.nested) && fam.is_met_by(&c.nested));
            let pruned = extract_canonical(&u, &fam, CanonicalOptions { prune_redundant: true }).unwrap();
            prop_assert!(fam.is_met_by(&pruned.nested));
        } else if let Ok(c) = extract_canonical(&u, &fam, CanonicalOptions::default()) {
            prop_assert!(is_nested_set(&u, &c.nested) && fam.is_met_by(&c.nested));
        }
    }

    #[test]
    fn canonical_extraction_commutes_with_relabelling(sets in arb_family(16), perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let u = bip5();
        let fam = Family::unordered(sets).unwrap();
        let iso = SepIsomorphism::from_permutation(&u, &fam.union(), &perm).unwrap();
        let image = map_family(&fam, &iso).unwrap();
        let a = extract_canonical(&u, &fam, CanonicalOptions::default());
        let b = extract_canonical(&u, &image, CanonicalOptions::default());
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert_eq!(iso.apply_set(&a.nested).unwrap(), b.nested),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
        }
        prop_assert_eq!(
            splinters_hierarchically(&u, &fam).unwrap(),
            splinters_hierarchically(&u, &image).unwrap()
        );
    }
}
