//! Re-checking artifacts from scratch.

use serde::Deserialize;
use serde_json::{json, Value};

use totkit::pipeline::{clique_profiles, graph_tangles, is_invariant, profiles_by_level, PipelineOptions, Selection};
use totkit::profiles::{maximal_profiles, undistinguished_pair, Orientation, ProfileKind};
use totkit::sepsys::{crossing_pair, OrientedSep, SepId, SetUniverse, Universe};
use totkit::tree::{is_tree_set, TreeDecomposition};
use totkit::universes::{
    automorphisms, circle_universe, dihedral_permutations, enumerate_graph_separations, is_clique_separation,
    CircleGround, Graph, Limits,
};
use totkit::{Error, SCHEMA};

use crate::artifact::{mask_of, OrderSpec, RunOptions};

pub struct Report {
    pub ok: bool,
    pub json: Value,
}

#[derive(Deserialize)]
struct SepDoc {
    a: Vec<String>,
    b: Vec<String>,
}

struct Checks(Vec<Value>);

impl Checks {
    fn record(&mut self, name: &str, failure: Option<String>) {
        let mut entry = json!({ "check": name, "ok": failure.is_none() });
        if let Some(detail) = failure {
            entry["detail"] = detail.into();
        }
        self.0.push(entry);
    }

    fn ok(&self) -> bool {
        self.0.iter().all(|c| c["ok"] == true)
    }
}

fn field<T: serde::de::DeserializeOwned>(doc: &Value, name: &str) -> totkit::Result<T> {
    let v = doc
        .get(name)
        .ok_or_else(|| Error::Input(format!("artifact has no field {name}")))?;
    serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("field {name}: {e}")))
}

/// Ids of the listed separations, or a description of the first one missing.
fn lookup(u: &SetUniverse, seps: &[SepDoc]) -> totkit::Result<Result<Vec<SepId>, String>> {
    let mut ids = Vec::new();
    for s in seps {
        let (a, b) = (mask_of(u.labels(), &s.a)?, mask_of(u.labels(), &s.b)?);
        match u.find(a, b) {
            Some(o) => ids.push(o.id()),
            None => {
                return Ok(Err(format!(
                    "({}, {}) is not a separation",
                    s.a.join(","),
                    s.b.join(",")
                )))
            }
        }
    }
    ids.sort_unstable();
    Ok(Ok(ids))
}

fn crossing(u: &SetUniverse, ids: &[SepId]) -> Option<String> {
    crossing_pair(u, ids).map(|(a, b)| format!("{} crosses {}", u.format_sep(a), u.format_sep(b)))
}

fn displayed(u: &SetUniverse, ids: &[SepId], profiles: &[Orientation]) -> Option<String> {
    undistinguished_pair(u, ids, profiles)
        .map(|(p, q)| format!("profiles {p} and {q} are not distinguished efficiently"))
}

fn parse_perms(text: &str, labels: &[String]) -> totkit::Result<Vec<Vec<usize>>> {
    let maps: Vec<Vec<String>> = serde_json::from_str(text)?;
    maps.iter()
        .map(|m| {
            if m.len() != labels.len() {
                return Err(Error::Input(format!(
                    "a map lists {} images for {} points",
                    m.len(),
                    labels.len()
                )));
            }
            let perm = m
                .iter()
                .map(|l| {
                    labels
                        .iter()
                        .position(|x| x == l)
                        .ok_or_else(|| Error::Input(format!("unknown label {l}")))
                })
                .collect::<totkit::Result<Vec<_>>>()?;
            let mut seen = perm.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != perm.len() {
                return Err(Error::Input("a map is not a bijection".into()));
            }
            Ok(perm)
        })
        .collect()
}

fn invariance(u: &SetUniverse, ids: &[SepId], perms: &[Vec<usize>]) -> totkit::Result<Option<String>> {
    for p in perms {
        if !is_invariant(u, ids, p)? {
            return Ok(Some(format!("moved by the map {p:?}")));
        }
    }
    Ok(None)
}

fn is_graph_automorphism(g: &Graph, p: &[usize]) -> bool {
    g.edges().iter().all(|&(x, y)| g.has_edge(p[x], p[y]))
}

fn verify_graph(
    doc: &Value,
    command: &str,
    autos: Option<&str>,
    limits: &Limits,
    checks: &mut Checks,
) -> totkit::Result<()> {
    let g = Graph::parse_json(&doc["graph"].to_string())?;
    limits.check("vertices", g.n())?;
    let u = enumerate_graph_separations(&g, limits)?;
    let seps: Vec<SepDoc> = field(doc, "separations")?;
    let options: RunOptions = field(doc, "options")?;
    let ids = match lookup(&u, &seps)? {
        Ok(ids) => ids,
        Err(why) => {
            checks.record("separations", Some(why));
            return Ok(());
        }
    };
    checks.record("separations", None);
    checks.record("nested", crossing(&u, &ids));
    let tree = match TreeDecomposition::from_json(&g, &doc["decomposition"]) {
        Err(e) => Some(e.to_string()),
        Ok(td) => match td.induced_ids(&u) {
            Err(e) => Some(e.to_string()),
            Ok(induced) if induced != ids => Some("induced separations differ from the listed ones".into()),
            Ok(_) => None,
        },
    };
    checks.record("decomposition", tree);

    let canonical = command != "tot";
    let base = if canonical {
        PipelineOptions::canonical()
    } else {
        PipelineOptions::transversal()
    };
    let opts = PipelineOptions {
        limits: *limits,
        ..options.apply(base)?
    };
    let profiles = if command == "clique-tot" {
        let non_clique = ids.iter().find(|&&s| !is_clique_separation(&g, &u, s));
        checks.record(
            "clique",
            non_clique.map(|&s| format!("{} has no clique separator", u.format_sep(s))),
        );
        clique_profiles(&g, &opts)?.2
    } else {
        graph_tangles(&g, &opts)?.1
    };
    let profiles = match opts.selection {
        Selection::Maximal => maximal_profiles(&profiles),
        Selection::All => profiles,
    };
    checks.record("display", displayed(&u, &ids, &profiles));

    if canonical {
        let perms = match autos {
            Some(text) => {
                let perms = parse_perms(text, g.labels())?;
                if let Some(p) = perms.iter().find(|p| !is_graph_automorphism(&g, p)) {
                    return Err(Error::Input(format!("{p:?} is not an automorphism")));
                }
                perms
            }
            None => automorphisms(&g, limits)?,
        };
        checks.record("canonical", invariance(&u, &ids, &perms)?);
    }
    Ok(())
}

fn verify_circle(doc: &Value, autos: Option<&str>, limits: &Limits, checks: &mut Checks) -> totkit::Result<()> {
    let points: Vec<String> = field(doc, "points")?;
    let ground = CircleGround::new(points)?;
    let order = OrderSpec::from_json(&doc["order_fn"], &ground)?;
    let (m, n): (usize, usize) = (field(doc, "m")?, field(doc, "n")?);
    let kind = ProfileKind::CircleTangle { m, n }.validate()?;
    let options: RunOptions = field(doc, "options")?;
    let cs = circle_universe(ground, order.order_fn(), limits)?;
    let u = &cs.universe;
    let seps: Vec<SepDoc> = field(doc, "separations")?;
    let ids = match lookup(u, &seps)? {
        Ok(ids) => ids,
        Err(why) => {
            checks.record("separations", Some(why));
            return Ok(());
        }
    };
    let outside = ids.iter().find(|&&s| !cs.system.contains(s));
    checks.record(
        "separations",
        outside.map(|&s| format!("{} is not a circle separation", u.format_sep(s))),
    );
    checks.record("nested", crossing(u, &ids));
    checks.record(
        "tree-set",
        (!is_tree_set(u, &ids)).then(|| "some separation is trivial in the set".into()),
    );

    let opts = options.apply(PipelineOptions::canonical())?;
    let profiles = profiles_by_level(u, &cs.system, kind, None, &opts)?;
    let profiles = match opts.selection {
        Selection::Maximal => maximal_profiles(&profiles),
        Selection::All => profiles,
    };
    checks.record("display", displayed(u, &ids, &profiles));

    let perms = match autos {
        Some(text) => parse_perms(text, cs.ground.points())?,
        None => dihedral_permutations(cs.ground.len()),
    };
    let preserving: Vec<Vec<usize>> = perms
        .into_iter()
        .filter(|p| {
            cs.system.members().iter().all(|&s| {
                let o = OrientedSep::new(s, false);
                u.permute(o, p)
                    .is_some_and(|t| cs.system.contains(t.id()) && u.order(t.id()) == u.order(s))
            })
        })
        .collect();
    checks.record("canonical", invariance(u, &ids, &preserving)?);
    Ok(())
}

/// Runs every check that applies to the artifact.
pub fn verify(doc: &Value, autos: Option<&str>, limits: &Limits) -> totkit::Result<Report> {
    if doc.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return Err(Error::Input(format!("artifact schema must be {SCHEMA}")));
    }
    let command: String = field(doc, "command")?;
    let mut checks = Checks(Vec::new());
    match command.as_str() {
        "tot" | "canonical-tot" | "clique-tot" => verify_graph(doc, &command, autos, limits, &mut checks)?,
        "circle-tangles" => verify_circle(doc, autos, limits, &mut checks)?,
        other => return Err(Error::Input(format!("cannot verify output of {other}"))),
    }
    let ok = checks.ok();
    Ok(Report {
        ok,
        json: json!({
            "schema": SCHEMA,
            "command": "verify",
            "artifact": command,
            "ok": ok,
            "checks": checks.0,
        }),
    })
}
