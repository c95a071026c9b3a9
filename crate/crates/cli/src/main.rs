mod artifact;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use totkit::corpus::{connected_graphs, named_graphs, random_connected_graphs, RANDOM_SEED};
use totkit::pipeline::{Measure, PipelineOptions, Selection};
use totkit::splinter::CanonicalOptions;
use totkit::universes::{Graph, Limits};
use totkit::SCHEMA;

use artifact::{Artifact, CircleInput, OrderSpec};

#[derive(Parser)]
#[command(
    name = "totkit",
    version,
    about = "Trees of tangles for small graphs and circle separations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the tangles or profiles of every order.
    Tangles {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Kind::Tangle)]
        kind: Kind,
    },
    /// Nested set and tree-decomposition distinguishing the tangles efficiently.
    Tot {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Profiles::Maximal)]
        profiles: Profiles,
        #[arg(long, value_enum, default_value_t = MeasureArg::Order)]
        measure: MeasureArg,
    },
    /// Canonical nested set and tree-decomposition.
    CanonicalTot {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Profiles::All)]
        profiles: Profiles,
        #[arg(long)]
        prune_redundant: bool,
    },
    /// Canonical nested set of clique separations.
    CliqueTot {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prune_redundant: bool,
    },
    /// Canonical tree set distinguishing the tangles of a circle system.
    CircleTangles {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// `graph-order`, `min-side` or `cut:FILE` with `u v [w]` lines.
        #[arg(long)]
        order_fn: Option<String>,
        /// Oriented separation `A|B`, space separated labels; given in pairs to report their join.
        #[arg(long = "join")]
        joins: Vec<String>,
        #[arg(long)]
        prune_redundant: bool,
    },
    /// Re-check an artifact written by another command.
    Verify {
        #[command(flatten)]
        common: Common,
        /// JSON list of vertex maps, each a list of image labels in vertex order.
        #[arg(long)]
        automorphisms: Option<PathBuf>,
    },
    /// Small connected graphs up to isomorphism, optionally with seeded and named ones.
    Corpus {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        /// Seeded connected graphs on seven vertices.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long)]
        named: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Only slices of order below at most this value.
    #[arg(long)]
    k: Option<f64>,
    #[arg(long, default_value_t = Limits::default().max_vertices)]
    max_vertices: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Tangle,
    Profile,
    Clique,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profiles {
    Maximal,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Order,
    Sequence,
}

/// Raised after a failed verification, whose diagnostic is already printed.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| totkit::Error::Input(format!("cannot read {}: {e}", path.display())).into())
}

fn read_graph(common: &Common) -> anyhow::Result<Graph> {
    let g = Graph::parse(&read(&common.input)?).with_context(|| format!("parsing {}", common.input.display()))?;
    common.limits().check("vertices", g.n())?;
    Ok(g)
}

impl Common {
    fn limits(&self) -> Limits {
        Limits {
            max_vertices: self.max_vertices,
        }
    }

    fn options(&self, base: PipelineOptions) -> PipelineOptions {
        PipelineOptions {
            limits: self.limits(),
            ..base.with_max_k(self.k)
        }
    }
}

fn selection(p: Profiles) -> Selection {
    match p {
        Profiles::Maximal => Selection::Maximal,
        Profiles::All => Selection::All,
    }
}

fn canonical(prune_redundant: bool) -> PipelineOptions {
    PipelineOptions {
        extraction: totkit::pipeline::Extraction::Canonical(CanonicalOptions { prune_redundant }),
        ..PipelineOptions::canonical()
    }
}

fn render(artifact: &Artifact, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&artifact.json)? + "\n"),
        Format::Text => Ok(artifact.text.clone()),
        Format::Dot => match &artifact.dot {
            Some(dot) => Ok(dot.clone()),
            None => Err(totkit::Error::Input("this command has no DOT output".into()).into()),
        },
    }
}

fn corpus(max_vertices: usize, random: usize, named: bool, format: Format) -> anyhow::Result<String> {
    let mut graphs = connected_graphs(max_vertices)?;
    graphs.extend(random_connected_graphs(7, random, RANDOM_SEED)?);
    if named {
        graphs.extend(named_graphs());
    }
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "schema": SCHEMA,
                "seed": RANDOM_SEED,
                "graphs": graphs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            });
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Text => Ok(graphs
            .iter()
            .map(|c| {
                let labels = c.graph.labels();
                let mut out = format!("# {}\n", c.name);
                if c.graph.n() == 1 {
                    out += &format!("{}\n", labels[0]);
                }
                for (u, v) in c.graph.edges() {
                    out += &format!("{} {}\n", labels[u], labels[v]);
                }
                out
            })
            .collect::<Vec<_>>()
            .join("\n")),
        Format::Dot => bail!(totkit::Error::Input("corpus has no DOT output".into())),
    }
}

fn run(cli: Cli) -> anyhow::Result<String> {
    match cli.command {
        Command::Tangles { common, kind } => {
            let g = read_graph(&common)?;
            let a = artifact::tangles(&g, kind, &common.options(PipelineOptions::canonical()))?;
            render(&a, common.format)
        }
        Command::Tot {
            common,
            profiles,
            measure,
        } => {
            let g = read_graph(&common)?;
            let measure = match measure {
                MeasureArg::Order => Measure::Order,
                MeasureArg::Sequence => Measure::Sequence,
            };
            let opts = common.options(
                PipelineOptions::transversal()
                    .with_selection(selection(profiles))
                    .with_measure(measure),
            );
            render(&artifact::graph_run(&g, "tot", &opts)?, common.format)
        }
        Command::CanonicalTot {
            common,
            profiles,
            prune_redundant,
        } => {
            let g = read_graph(&common)?;
            let opts = common.options(canonical(prune_redundant).with_selection(selection(profiles)));
            render(&artifact::graph_run(&g, "canonical-tot", &opts)?, common.format)
        }
        Command::CliqueTot {
            common,
            prune_redundant,
        } => {
            let g = read_graph(&common)?;
            let opts = common.options(canonical(prune_redundant));
            render(&artifact::graph_run(&g, "clique-tot", &opts)?, common.format)
        }
        Command::CircleTangles {
            common,
            m,
            n,
            order_fn,
            joins,
            prune_redundant,
        } => {
            let input = CircleInput::parse(&read(&common.input)?)?;
            let order = OrderSpec::resolve(order_fn.as_deref(), &input, read)?;
            let opts = common.options(canonical(prune_redundant));
            let a = artifact::circle_run(&input, order, m, n, &joins, &opts)?;
            render(&a, common.format)
        }
        Command::Verify { common, automorphisms } => {
            let doc: serde_json::Value = serde_json::from_str(&read(&common.input)?)
                .map_err(|e| totkit::Error::Input(format!("{}: {e}", common.input.display())))?;
            let autos = automorphisms.as_deref().map(read).transpose()?;
            let report = verify::verify(&doc, autos.as_deref(), &common.limits())?;
            let text = serde_json::to_string_pretty(&report.json)? + "\n";
            if report.ok {
                Ok(text)
            } else {
                print!("{text}");
                Err(VerificationFailed.into())
            }
        }
        Command::Corpus {
            max_vertices,
            random,
            named,
            format,
        } => corpus(max_vertices, random, named, format),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return 4;
    }
    match err.chain().find_map(|e| e.downcast_ref::<totkit::Error>()) {
        Some(totkit::Error::SizeBound { .. }) => 3,
        Some(totkit::Error::Verification(_)) => 4,
        Some(
            totkit::Error::Input(_)
            | totkit::Error::Json(_)
            | totkit::Error::Io(_)
            | totkit::Error::InvalidDecomposition(_)
            | totkit::Error::InvalidOrientation(_)
            | totkit::Error::NotSubmodular(_)
            | totkit::Error::AsymmetricOrder(_),
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            if err.downcast_ref::<VerificationFailed>().is_none() {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
