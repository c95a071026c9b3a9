//! End-to-end runs from order slices to a nested set meeting every
//! distinguishing set, turned into a tree-decomposition for graphs.

use crate::error::{Error, Result};
use crate::profiles::{
    build_distinguisher_family, enumerate_profiles, maximal_profiles, undistinguished_pair, DistinguisherFamily,
    Efficiency, FamilyMode, IndexOrderMode, Orientation, ProfileKind, SearchLimits,
};
use crate::sepsys::{crossing_pair, SepId, SetUniverse, SubSystem, Universe};
use crate::splinter::{
    extract_canonical, extract_transversal_with, map_family, CanonicalOptions, CanonicalResult, Family, SepIsomorphism,
    TransversalMethod, TransversalResult,
};
use crate::tree::{build_tree_decomposition, is_tree_set, TreeDecomposition};
use crate::universes::{
    clique_subsystem, enumerate_graph_separations, order_slices, order_thresholds, restrict_below, CircleSystem, Graph,
    Limits, OrderedFamilySequence,
};

/// Which profiles the nested set has to distinguish.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    /// Those not contained in another one.
    #[default]
    Maximal,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extraction {
    Transversal(TransversalMethod),
    Canonical(CanonicalOptions),
}

/// What "efficient" refers to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Measure {
    /// Least order.
    #[default]
    Order,
    /// Lowest level in the sequence of order slices.
    Sequence,
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub selection: Selection,
    pub extraction: Extraction,
    pub measure: Measure,
    pub limits: Limits,
    pub search: SearchLimits,
    /// Only slices `S_k` with `k` at most this.
    pub max_k: Option<f64>,
}

impl PipelineOptions {
    pub fn transversal() -> Self {
        PipelineOptions {
            selection: Selection::Maximal,
            extraction: Extraction::Transversal(TransversalMethod::Auto),
            measure: Measure::Order,
            limits: Limits::default(),
            search: SearchLimits::default(),
            max_k: None,
        }
    }

    pub fn canonical() -> Self {
        PipelineOptions {
            selection: Selection::All,
            extraction: Extraction::Canonical(CanonicalOptions::default()),
            ..Self::transversal()
        }
    }

    pub fn with_selection(self, selection: Selection) -> Self {
        PipelineOptions { selection, ..self }
    }

    pub fn with_measure(self, measure: Measure) -> Self {
        PipelineOptions { measure, ..self }
    }

    pub fn with_max_k(self, max_k: Option<f64>) -> Self {
        PipelineOptions { max_k, ..self }
    }
}

/// Result of one run on an abstract system.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub profiles: Vec<Orientation>,
    pub family: DistinguisherFamily,
    pub nested: Vec<SepId>,
    pub transversal: Option<TransversalResult>,
    pub canonical: Option<CanonicalResult>,
}

/// Profiles of the given kind of every slice `S_k ⊆ system`, lowest order
/// first, up to the first slice without any or up to `opts.max_k`.
pub fn profiles_by_level(
    u: &SetUniverse,
    system: &SubSystem,
    kind: ProfileKind,
    g: Option<&Graph>,
    opts: &PipelineOptions,
) -> Result<Vec<Orientation>> {
    let mut out = Vec::new();
    for k in order_thresholds(u, system) {
        if opts.max_k.is_some_and(|m| k > m) {
            break;
        }
        let level = enumerate_profiles(u, &restrict_below(u, system, k), kind, g, &opts.search)?;
        if level.is_empty() {
            break;
        }
        out.extend(level);
    }
    Ok(out)
}

/// Builds the efficient-distinguisher family of `profiles`, indexed by
/// order or by level, and extracts a nested set meeting all of its sets.
pub fn distinguish(
    u: &SetUniverse,
    system: &SubSystem,
    profiles: Vec<Orientation>,
    opts: &PipelineOptions,
) -> Result<Outcome> {
    let seq: OrderedFamilySequence;
    let (efficiency, index) = match opts.measure {
        Measure::Order => (Efficiency::ByOrder, IndexOrderMode::ByOrder),
        Measure::Sequence => {
            seq = order_slices(u, system);
            (Efficiency::BySequence(&seq), IndexOrderMode::ByLevel(&seq))
        }
    };
    let family = build_distinguisher_family(u, &profiles, FamilyMode::Efficient(efficiency), index, None)?;
    let (nested, transversal, canonical) = match opts.extraction {
        Extraction::Transversal(method) => {
            let t = extract_transversal_with(u, &family.family, method)?;
            (t.nested.clone(), Some(t), None)
        }
        Extraction::Canonical(c) => {
            let r = extract_canonical(u, &family.family, c)?;
            (r.nested.clone(), None, Some(r))
        }
    };
    Ok(Outcome {
        profiles,
        family,
        nested,
        transversal,
        canonical,
    })
}

fn select(all: Vec<Orientation>, selection: Selection) -> Vec<Orientation> {
    match selection {
        Selection::Maximal => maximal_profiles(&all),
        Selection::All => all,
    }
}

/// A run on a graph, with the tree-decomposition of the nested set.
#[derive(Clone, Debug)]
pub struct GraphRun {
    pub universe: SetUniverse,
    pub system: SubSystem,
    pub outcome: Outcome,
    pub decomposition: TreeDecomposition,
}

fn graph_run(
    g: &Graph,
    u: SetUniverse,
    system: SubSystem,
    kind: ProfileKind,
    opts: &PipelineOptions,
) -> Result<GraphRun> {
    let all = profiles_by_level(&u, &system, kind, Some(g), opts)?;
    let outcome = distinguish(&u, &system, select(all, opts.selection), opts)?;
    let decomposition = build_tree_decomposition(g, &u, &outcome.nested)?;
    Ok(GraphRun {
        universe: u,
        system,
        outcome,
        decomposition,
    })
}

/// Tangles of every order.
pub fn graph_tangles(g: &Graph, opts: &PipelineOptions) -> Result<(SetUniverse, Vec<Orientation>)> {
    let u = enumerate_graph_separations(g, &opts.limits)?;
    let all = profiles_by_level(&u, &SubSystem::full(&u), ProfileKind::GraphTangle, Some(g), opts)?;
    Ok((u, all))
}

/// Nested set and tree-decomposition distinguishing the tangles of `g`.
pub fn tangle_tree(g: &Graph, opts: &PipelineOptions) -> Result<GraphRun> {
    let u = enumerate_graph_separations(g, &opts.limits)?;
    let system = SubSystem::full(&u);
    graph_run(g, u, system, ProfileKind::GraphTangle, opts)
}

/// Profiles of clique separations of every order.
pub fn clique_profiles(g: &Graph, opts: &PipelineOptions) -> Result<(SetUniverse, SubSystem, Vec<Orientation>)> {
    let u = enumerate_graph_separations(g, &opts.limits)?;
    let system = clique_subsystem(g, &u, f64::INFINITY);
    let all = profiles_by_level(&u, &system, ProfileKind::Profile, None, opts)?;
    Ok((u, system, all))
}

/// Nested set of clique separations distinguishing the clique profiles of `g`.
pub fn clique_tree(g: &Graph, opts: &PipelineOptions) -> Result<GraphRun> {
    let u = enumerate_graph_separations(g, &opts.limits)?;
    let system = clique_subsystem(g, &u, f64::INFINITY);
    graph_run(g, u, system, ProfileKind::Profile, opts)
}

/// A run on circle separations.
#[derive(Clone, Debug)]
pub struct CircleRun {
    pub outcome: Outcome,
    pub tree_set: bool,
}

/// Nested set of circle separations distinguishing the circle tangles.
pub fn circle_tree(cs: &CircleSystem, m: usize, n: usize, opts: &PipelineOptions) -> Result<CircleRun> {
    let kind = ProfileKind::CircleTangle { m, n }.validate()?;
    let all = profiles_by_level(&cs.universe, &cs.system, kind, None, opts)?;
    let outcome = distinguish(&cs.universe, &cs.system, select(all, opts.selection), opts)?;
    let tree_set = is_tree_set(&cs.universe, &outcome.nested);
    Ok(CircleRun { outcome, tree_set })
}

/// Checks that the outcome is a nested transversal of its family drawn from the family's members.
/// Every distinguishable pair must be separated with minimal order.
pub fn verify_outcome<U: Universe + ?Sized>(u: &U, outcome: &Outcome) -> Result<()> {
    let fail = |m: String| Err(Error::Verification(m));
    if let Some((a, b)) = crossing_pair(u, &outcome.nested) {
        return fail(format!("{a} and {b} cross"));
    }
    if let Some(i) = (0..outcome.family.family.len()).find(|&i| {
        !outcome.family.family.sets()[i]
            .iter()
            .any(|s| outcome.nested.contains(s))
    }) {
        let (p, q) = outcome.family.pairs[i];
        return fail(format!("no separation for profiles {p} and {q}"));
    }
    let union = outcome.family.family.union();
    if let Some(s) = outcome.nested.iter().find(|s| union.binary_search(s).is_err()) {
        return fail(format!("{s} distinguishes no pair efficiently"));
    }
    if let Some((p, q)) = undistinguished_pair(u, &outcome.nested, &outcome.profiles) {
        return fail(format!("profiles {p} and {q} are not distinguished efficiently"));
    }
    Ok(())
}

/// Whether `N(α(A)) = α(N(A))` for the vertex permutation `perm`.
pub fn canonical_commutes(u: &SetUniverse, fam: &Family, perm: &[usize], opts: CanonicalOptions) -> Result<bool> {
    let iso = SepIsomorphism::from_permutation(u, &fam.union(), perm)?;
    let image = map_family(fam, &iso)?;
    let n = extract_canonical(u, fam, opts)?.nested;
    let n_image = extract_canonical(u, &image, opts)?.nested;
    Ok(iso.apply_set(&n)? == n_image)
}

/// Whether the permutation maps `nested` onto itself.
pub fn is_invariant(u: &SetUniverse, nested: &[SepId], perm: &[usize]) -> Result<bool> {
    let iso = SepIsomorphism::from_permutation(u, nested, perm)?;
    let mut sorted = nested.to_vec();
    sorted.sort_unstable();
    Ok(iso.apply_set(nested)? == sorted)
}
