//! Rendering each command's result in every output format.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use totkit::pipeline::{
    circle_tree, clique_tree, tangle_tree, Extraction, GraphRun, Measure, PipelineOptions, Selection,
};
use totkit::profiles::{enumerate_profiles, ProfileKind};
use totkit::sepsys::{Mask, OrderFn, OrientedSep, SepId, SetUniverse, SubSystem, Universe};
use totkit::universes::{
    circle_universe, clique_subsystem, cut_order, enumerate_graph_separations, min_side_order, order_thresholds,
    restrict_below, CircleGround, CutWeights, Graph,
};
use totkit::{Error, SCHEMA};

use crate::Kind;

pub struct Artifact {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
}

/// Options recorded in an artifact so that `verify` can recompute the profiles.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunOptions {
    pub profiles: String,
    pub measure: String,
    pub k: Option<f64>,
    pub prune_redundant: bool,
}

impl RunOptions {
    pub fn of(opts: &PipelineOptions) -> Self {
        RunOptions {
            profiles: match opts.selection {
                Selection::Maximal => "maximal",
                Selection::All => "all",
            }
            .into(),
            measure: match opts.measure {
                Measure::Order => "order",
                Measure::Sequence => "sequence",
            }
            .into(),
            k: opts.max_k,
            prune_redundant: matches!(opts.extraction, Extraction::Canonical(c) if c.prune_redundant),
        }
    }

    pub fn apply(&self, base: PipelineOptions) -> totkit::Result<PipelineOptions> {
        let selection = match self.profiles.as_str() {
            "maximal" => Selection::Maximal,
            "all" => Selection::All,
            other => return Err(Error::Input(format!("unknown profile selection {other}"))),
        };
        Ok(base.with_selection(selection).with_max_k(self.k))
    }
}

pub fn labels_of(labels: &[String], m: Mask) -> Vec<String> {
    (0..labels.len())
        .filter(|&v| m >> v & 1 == 1)
        .map(|v| labels[v].clone())
        .collect()
}

pub fn mask_of(labels: &[String], side: &[String]) -> totkit::Result<Mask> {
    side.iter().try_fold(0, |acc, l| {
        let v = labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| Error::Input(format!("unknown label {l}")))?;
        Ok(acc | 1 << v)
    })
}

pub fn sep_json(u: &SetUniverse, s: OrientedSep) -> Value {
    let (a, b) = u.sides(s);
    json!({
        "a": labels_of(u.labels(), a),
        "b": labels_of(u.labels(), b),
        "order": u.order(s.id()),
    })
}

fn sep_text(u: &SetUniverse, s: SepId) -> String {
    let order = u.order(s).map_or(String::new(), |k| format!("  order {k}"));
    format!("{}{order}", u.format_sep(s))
}

fn oriented(s: SepId) -> OrientedSep {
    OrientedSep::new(s, false)
}

pub fn graph_kind(kind: Kind) -> ProfileKind {
    match kind {
        Kind::Tangle => ProfileKind::GraphTangle,
        Kind::Profile | Kind::Clique => ProfileKind::Profile,
    }
}

/// Every tangle or profile, grouped by the slice it orients.
pub fn tangles(g: &Graph, kind: Kind, opts: &PipelineOptions) -> anyhow::Result<Artifact> {
    let u = enumerate_graph_separations(g, &opts.limits)?;
    let system = match kind {
        Kind::Clique => clique_subsystem(g, &u, f64::INFINITY),
        _ => SubSystem::full(&u),
    };
    let mut levels = Vec::new();
    let mut text = String::new();
    for k in order_thresholds(&u, &system) {
        if opts.max_k.is_some_and(|m| k > m) {
            break;
        }
        let found = enumerate_profiles(
            &u,
            &restrict_below(&u, &system, k),
            graph_kind(kind),
            Some(g),
            &opts.search,
        )?;
        if found.is_empty() {
            break;
        }
        let _ = writeln!(text, "k = {k}: {} found", found.len());
        let listed: Vec<Value> = found
            .iter()
            .map(|t| Value::Array(t.choice().iter().map(|&o| sep_json(&u, o)).collect()))
            .collect();
        levels.push(json!({ "k": k, "count": found.len(), "orientations": listed }));
    }
    let kind_name = match kind {
        Kind::Tangle => "tangle",
        Kind::Profile => "profile",
        Kind::Clique => "clique",
    };
    Ok(Artifact {
        json: json!({
            "schema": SCHEMA,
            "command": "tangles",
            "kind": kind_name,
            "graph": g.to_json(),
            "levels": levels,
        }),
        text,
        dot: None,
    })
}

/// Runs `tot`, `canonical-tot` or `clique-tot`.
pub fn graph_run(g: &Graph, command: &str, opts: &PipelineOptions) -> anyhow::Result<Artifact> {
    let run: GraphRun = if command == "clique-tot" {
        clique_tree(g, opts)?
    } else {
        tangle_tree(g, opts)?
    };
    let u = &run.universe;
    let nested = &run.outcome.nested;
    let td = &run.decomposition;
    let mut text = format!(
        "graph: {} vertices, {} edges\nprofiles: {}\nseparations: {}\n",
        g.n(),
        g.edges().len(),
        run.outcome.profiles.len(),
        nested.len()
    );
    for &s in nested {
        let _ = writeln!(text, "  {}", sep_text(u, s));
    }
    let _ = writeln!(text, "bags: {}", td.len());
    for (i, &b) in td.bags.iter().enumerate() {
        let _ = writeln!(text, "  n{i}: {}", labels_of(g.labels(), b).join(" "));
    }
    for &(a, b) in &td.edges {
        let _ = writeln!(text, "  n{a} -- n{b}");
    }
    Ok(Artifact {
        json: json!({
            "schema": SCHEMA,
            "command": command,
            "graph": g.to_json(),
            "options": RunOptions::of(opts),
            "profiles": run.outcome.profiles.len(),
            "separations": nested.iter().map(|&s| sep_json(u, oriented(s))).collect::<Vec<_>>(),
            "flagged": td.flagged.iter().map(|&s| sep_json(u, oriented(s))).collect::<Vec<_>>(),
            "decomposition": td.to_json(),
        }),
        text,
        dot: Some(td.to_dot()),
    })
}

pub struct CircleInput {
    pub ground: CircleGround,
    pub weights: Option<CutWeights>,
}

impl CircleInput {
    pub fn parse(text: &str) -> totkit::Result<Self> {
        let (ground, weights) = CircleGround::parse_json(text)?;
        Ok(CircleInput { ground, weights })
    }
}

/// Order function of a circle system.
#[derive(Clone, Debug, PartialEq)]
pub enum OrderSpec {
    MinSide,
    Cut(CutWeights),
}

impl OrderSpec {
    /// `graph-order` takes the weighted edges of the input, `cut:FILE` reads
    /// `u v [w]` lines; without a flag the input's edges are used if present.
    pub fn resolve(
        arg: Option<&str>,
        input: &CircleInput,
        read: impl Fn(&Path) -> anyhow::Result<String>,
    ) -> anyhow::Result<Self> {
        match arg {
            None => Ok(input.weights.clone().map_or(OrderSpec::MinSide, OrderSpec::Cut)),
            Some("min-side") => Ok(OrderSpec::MinSide),
            Some("graph-order") => match &input.weights {
                Some(w) => Ok(OrderSpec::Cut(w.clone())),
                None => Err(Error::Input("graph-order needs an order_graph in the input".into()).into()),
            },
            Some(order) => match order.strip_prefix("cut:") {
                Some(path) => Ok(OrderSpec::Cut(parse_weights(&read(Path::new(path))?, &input.ground)?)),
                None => Err(Error::Input(format!("unknown order function {order}")).into()),
            },
        }
    }

    pub fn order_fn(&self) -> OrderFn {
        match self {
            OrderSpec::MinSide => min_side_order(),
            OrderSpec::Cut(w) => cut_order(w.clone()),
        }
    }

    pub fn to_json(&self, ground: &CircleGround) -> Value {
        match self {
            OrderSpec::MinSide => json!({ "kind": "min-side" }),
            OrderSpec::Cut(w) => {
                let p = ground.points();
                let edges: Vec<Value> = w.iter().map(|&(u, v, x)| json!([p[u], p[v], x])).collect();
                json!({ "kind": "cut", "weights": edges })
            }
        }
    }

    pub fn from_json(value: &Value, ground: &CircleGround) -> totkit::Result<Self> {
        match value["kind"].as_str() {
            Some("min-side") => Ok(OrderSpec::MinSide),
            Some("cut") => {
                let edges: Vec<(String, String, f64)> = serde_json::from_value(value["weights"].clone())?;
                let w = edges
                    .iter()
                    .map(|(u, v, x)| Ok((ground.position(u)?, ground.position(v)?, *x)))
                    .collect::<totkit::Result<_>>()?;
                Ok(OrderSpec::Cut(w))
            }
            _ => Err(Error::Input("order_fn must have kind min-side or cut".into())),
        }
    }
}

fn parse_weights(text: &str, ground: &CircleGround) -> totkit::Result<CutWeights> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let (u, v, w) = match tok.as_slice() {
            [u, v] => (u, v, 1.0),
            [u, v, w] => (
                u,
                v,
                w.parse::<f64>()
                    .map_err(|_| Error::Input(format!("line {}: bad weight {w}", no + 1)))?,
            ),
            _ => return Err(Error::Input(format!("line {}: expected `u v [w]`", no + 1))),
        };
        out.push((ground.position(u)?, ground.position(v)?, w));
    }
    Ok(out)
}

/// `A|B` with space separated labels on each side.
fn parse_oriented(ground: &CircleGround, text: &str) -> totkit::Result<(Mask, Mask)> {
    let (a, b) = text
        .split_once('|')
        .ok_or_else(|| Error::Input(format!("expected A|B, got {text}")))?;
    let side = |s: &str| ground.mask_of(&s.split_whitespace().collect::<Vec<_>>());
    Ok((side(a)?, side(b)?))
}

pub fn circle_run(
    input: &CircleInput,
    order: OrderSpec,
    m: usize,
    n: usize,
    joins: &[String],
    opts: &PipelineOptions,
) -> anyhow::Result<Artifact> {
    ProfileKind::CircleTangle { m, n }.validate()?;
    if joins.len() % 2 == 1 {
        return Err(Error::Input("--join takes separations in pairs".into()).into());
    }
    let cs = circle_universe(input.ground.clone(), order.order_fn(), &opts.limits)?;
    let u = &cs.universe;
    let mut text = String::new();
    let mut join_docs = Vec::new();
    for pair in joins.chunks(2) {
        let mut sides = Vec::new();
        for j in pair {
            let (a, b) = parse_oriented(&cs.ground, j)?;
            sides.push(
                u.find(a, b)
                    .ok_or_else(|| Error::Input(format!("{j} is not a bipartition of the points")))?,
            );
        }
        let (join, circle) = cs.join_report(sides[0], sides[1]);
        let _ = writeln!(
            text,
            "join of {} and {} is {}{}",
            u.format_oriented(sides[0]),
            u.format_oriented(sides[1]),
            u.format_oriented(join),
            if circle { "" } else { ", not a circle separation" }
        );
        join_docs.push(json!({
            "left": sep_json(u, sides[0]),
            "right": sep_json(u, sides[1]),
            "join": sep_json(u, join),
            "circle": circle,
        }));
    }
    let run = circle_tree(&cs, m, n, opts)?;
    let nested = &run.outcome.nested;
    let _ = writeln!(
        text,
        "points: {}\ntangles: {}\ntree set: {}\nseparations: {}",
        cs.ground.points().join(" "),
        run.outcome.profiles.len(),
        run.tree_set,
        nested.len()
    );
    for &s in nested {
        let _ = writeln!(text, "  {}", sep_text(u, s));
    }
    Ok(Artifact {
        json: json!({
            "schema": SCHEMA,
            "command": "circle-tangles",
            "points": cs.ground.points(),
            "order_fn": order.to_json(&cs.ground),
            "m": m,
            "n": n,
            "options": RunOptions::of(opts),
            "profiles": run.outcome.profiles.len(),
            "separations": nested.iter().map(|&s| sep_json(u, oriented(s))).collect::<Vec<_>>(),
            "tree_set": run.tree_set,
            "joins": join_docs,
        }),
        text,
        dot: None,
    })
}
