//! Batch front door behind the thin binary: config resolution with
//! flag-over-file precedence, the six commands, and artifact writing.
//!
//! Every artifact embeds the seed that produced it, and repeated runs with
//! the same config and seed write byte-identical files.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::capacity::{associated_graph, shapley_brute_force_all, ShapleyVector};
use crate::community::{
    gamma_sweep, modularity, polarization_louvain, BlendSpec, Partition, SweepReport,
};
use crate::error::{Error, Result};
use crate::graph::{load_edge_list, LoadOptions, WeightedGraph};
use crate::operators::{Grouping, Negation, OperatorConfig, Overlap, Symmetrizer};
use crate::polarization::{
    build_dialogue_matrix, build_risk_matrix, load_membership, load_membership_table,
    partition_cohesion, CohesionReport, MatrixKind, MembershipProfile, NormMode,
    TwoAdditiveFuzzyMeasure,
};
use crate::synth::{generate, SyntheticSpec};

/// Flat key-value config file; every key has a same-named CLI flag.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub graph: Option<PathBuf>,
    pub membership: Option<PathBuf>,
    pub grouping: Option<String>,
    pub overlap: Option<String>,
    pub negation: Option<String>,
    pub symmetrizer: Option<String>,
    pub gamma: Option<f64>,
    pub gammas: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub rescale: Option<bool>,
    pub binarize: Option<bool>,
    #[serde(rename = "norm-mode")]
    pub norm_mode: Option<String>,
    pub kind: Option<String>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Unresolved option set as collected from the command line; `None` falls
/// back to the config file, then to the built-in default.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub graph: Option<PathBuf>,
    pub membership: Option<PathBuf>,
    pub grouping: Option<String>,
    pub overlap: Option<String>,
    pub negation: Option<String>,
    pub symmetrizer: Option<String>,
    pub gamma: Option<f64>,
    pub gammas: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub rescale: Option<bool>,
    pub binarize: Option<bool>,
    pub norm_mode: Option<String>,
    pub kind: Option<String>,
    pub out: Option<PathBuf>,
}

/// Fully resolved run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub graph: PathBuf,
    pub membership: PathBuf,
    pub operators: OperatorConfig,
    pub blend: BlendSpec,
    pub gammas: Vec<f64>,
    pub seed: u64,
    pub norm_mode: NormMode,
    pub kind: MatrixKind,
    pub binarize: bool,
    pub out: PathBuf,
}

fn parse_kind(s: &str) -> Result<MatrixKind> {
    match s {
        "risk" => Ok(MatrixKind::Risk),
        "dialogue" => Ok(MatrixKind::Dialogue),
        other => Err(Error::Config(format!(
            "unknown measure kind {other:?} (expected risk or dialogue)"
        ))),
    }
}

impl RunConfig {
    /// Merges flags over file values over defaults and validates the result.
    pub fn resolve(flags: Overrides, file: FileConfig) -> Result<RunConfig> {
        let graph = flags
            .graph
            .or(file.graph)
            .ok_or_else(|| Error::Config("missing graph path (--graph)".into()))?;
        let membership = flags
            .membership
            .or(file.membership)
            .ok_or_else(|| Error::Config("missing membership path (--membership)".into()))?;
        for path in [&graph, &membership] {
            if !path.exists() {
                return Err(Error::Config(format!("file not found: {}", path.display())));
            }
        }
        let operators = OperatorConfig {
            grouping: flags
                .grouping
                .or(file.grouping)
                .map_or(Ok(Grouping::Max), |s| s.parse())?,
            overlap: flags
                .overlap
                .or(file.overlap)
                .map_or(Ok(Overlap::Product), |s| s.parse())?,
            negation: flags
                .negation
                .or(file.negation)
                .map_or(Ok(Negation::Standard), |s| s.parse())?,
            symmetrizer: flags
                .symmetrizer
                .or(file.symmetrizer)
                .map_or(Ok(Symmetrizer::Mean), |s| s.parse())?,
        };
        let gamma = flags.gamma.or(file.gamma).unwrap_or(0.5);
        let rescale = flags.rescale.or(file.rescale).unwrap_or(false);
        let blend = BlendSpec::new(gamma, rescale)?;
        let gammas = flags
            .gammas
            .or(file.gammas)
            .unwrap_or_else(|| vec![0.5, 0.4, 0.3, 0.2, 0.1, 0.0]);
        for g in &gammas {
            if !(0.0..=1.0).contains(g) {
                return Err(Error::Config(format!("gamma must be in [0,1], got {g}")));
            }
        }
        let norm_mode = flags
            .norm_mode
            .or(file.norm_mode)
            .map_or(Ok(NormMode::PositivePairs), |s| s.parse())?;
        let kind = flags
            .kind
            .or(file.kind)
            .map_or(Ok(MatrixKind::Dialogue), |s| parse_kind(&s))?;
        Ok(RunConfig {
            graph,
            membership,
            operators,
            blend,
            gammas,
            seed: flags.seed.or(file.seed).unwrap_or(0),
            norm_mode,
            kind,
            binarize: flags.binarize.or(file.binarize).unwrap_or(false),
            out: flags.out.or(file.out).unwrap_or_else(|| PathBuf::from("out")),
        })
    }

    fn load_graph(&self) -> Result<WeightedGraph> {
        load_edge_list(
            &self.graph,
            LoadOptions {
                collapse_directed: true,
                binarize: self.binarize,
            },
        )
    }

    fn build_measure(&self, prof: &MembershipProfile) -> Result<TwoAdditiveFuzzyMeasure> {
        let matrix = match self.kind {
            MatrixKind::Risk => build_risk_matrix(prof, &self.operators)?,
            MatrixKind::Dialogue => build_dialogue_matrix(prof, &self.operators)?,
        };
        Ok(TwoAdditiveFuzzyMeasure::new(matrix))
    }
}

/// The `partition.json` artifact.
#[derive(Debug, Serialize, Deserialize)]
pub struct PartitionArtifact {
    pub seed: u64,
    pub gamma: Option<f64>,
    pub communities: BTreeMap<String, Vec<String>>,
    #[serde(rename = "Q")]
    pub q: f64,
    pub pol: f64,
}

impl PartitionArtifact {
    pub fn from_run(
        seed: u64,
        gamma: Option<f64>,
        graph: &WeightedGraph,
        partition: &Partition,
        q: f64,
        pol: f64,
    ) -> Self {
        let mut communities = BTreeMap::new();
        for (id, members) in partition.communities().iter().enumerate() {
            communities.insert(
                id.to_string(),
                members.iter().map(|&i| graph.label(i).to_owned()).collect(),
            );
        }
        PartitionArtifact {
            seed,
            gamma,
            communities,
            q,
            pol,
        }
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn write_detection_artifacts(
    dir: &Path,
    graph: &WeightedGraph,
    partition: &Partition,
    cohesion: &CohesionReport,
    seed: u64,
    gamma: Option<f64>,
    q: f64,
) -> Result<()> {
    fs::create_dir_all(dir)?;
    let artifact = PartitionArtifact::from_run(seed, gamma, graph, partition, q, cohesion.pol);
    write_json(&dir.join("partition.json"), &artifact)?;
    write_json(&dir.join("cohesion.json"), cohesion)?;
    fs::write(dir.join("graph.dot"), graph.to_dot(Some(partition)))?;
    Ok(())
}

/// One blended detection run: writes `partition.json`, `cohesion.json`,
/// and a community-colored `graph.dot` into the output directory.
pub fn cmd_detect(cfg: &RunConfig) -> Result<()> {
    let graph = cfg.load_graph()?;
    let prof = load_membership(&cfg.membership, &graph)?;
    let measure = cfg.build_measure(&prof)?;
    let f = associated_graph(&measure, &cfg.operators);
    let (partition, _) = polarization_louvain(&graph, &f, &cfg.blend, cfg.seed)?;
    let q = modularity(graph.matrix(), &partition)?;
    let cohesion = partition_cohesion(&partition, &prof, &cfg.operators, cfg.norm_mode)?;
    write_detection_artifacts(
        &cfg.out,
        &graph,
        &partition,
        &cohesion,
        cfg.seed,
        Some(cfg.blend.gamma),
        q,
    )
}

/// The `sweep.json` sidecar: per-row community JDJ vectors.
#[derive(Debug, Serialize)]
struct SweepSidecar {
    seed: u64,
    rescale: bool,
    norm_mode: NormMode,
    rows: Vec<SweepSidecarRow>,
}

#[derive(Debug, Serialize)]
struct SweepSidecarRow {
    gamma: Option<f64>,
    n_communities_gt1: usize,
    pol: f64,
    #[serde(rename = "Q")]
    q: f64,
    jdj: Vec<f64>,
}

fn gamma_dir_name(gamma: Option<f64>) -> String {
    match gamma {
        None => "baseline".to_owned(),
        Some(g) => format!("gamma-{g}"),
    }
}

/// Writes the sweep artifacts for an already computed report.
pub fn write_sweep_artifacts(
    out: &Path,
    graph: &WeightedGraph,
    report: &SweepReport,
) -> Result<()> {
    fs::create_dir_all(out)?;
    let mut csv_text = String::from("gamma,n_communities_gt1,pol,Q\n");
    let mut sidecar_rows = Vec::new();
    for row in &report.rows {
        let label = match row.gamma {
            None => "baseline".to_owned(),
            Some(g) => g.to_string(),
        };
        let n_big = row.partition.non_singleton_count();
        csv_text.push_str(&format!("{label},{n_big},{},{}\n", row.cohesion.pol, row.q));
        sidecar_rows.push(SweepSidecarRow {
            gamma: row.gamma,
            n_communities_gt1: n_big,
            pol: row.cohesion.pol,
            q: row.q,
            jdj: row.cohesion.communities.iter().map(|c| c.jdj).collect(),
        });
        write_detection_artifacts(
            &out.join(gamma_dir_name(row.gamma)),
            graph,
            &row.partition,
            &row.cohesion,
            report.seed,
            row.gamma,
            row.q,
        )?;
    }
    fs::write(out.join("sweep.csv"), csv_text)?;
    write_json(
        &out.join("sweep.json"),
        &SweepSidecar {
            seed: report.seed,
            rescale: report.rescale,
            norm_mode: report.norm_mode,
            rows: sidecar_rows,
        },
    )?;
    Ok(())
}

/// Baseline plus one detection per gamma; artifacts land in per-gamma
/// subdirectories next to `sweep.csv` and `sweep.json`.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<()> {
    let graph = cfg.load_graph()?;
    let prof = load_membership(&cfg.membership, &graph)?;
    let report = gamma_sweep(
        &graph,
        &prof,
        &cfg.operators,
        &cfg.gammas,
        cfg.seed,
        cfg.norm_mode,
        cfg.blend.rescale,
    )?;
    write_sweep_artifacts(&cfg.out, &graph, &report)
}

/// Scores a stored partition against a membership table and returns the
/// cohesion report as pretty JSON.
pub fn cmd_score(
    partition_path: &Path,
    membership_path: &Path,
    operators: &OperatorConfig,
    norm_mode: NormMode,
) -> Result<String> {
    let (labels, prof) = load_membership_table(fs::File::open(membership_path)?)?;
    let index: std::collections::HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();

    let artifact: PartitionArtifact = serde_json::from_str(&fs::read_to_string(partition_path)?)?;
    let mut assignment = vec![usize::MAX; labels.len()];
    let mut extra = Vec::new();
    for (id_str, members) in &artifact.communities {
        let id: usize = id_str
            .parse()
            .map_err(|_| Error::Config(format!("bad community id {id_str:?}")))?;
        for label in members {
            match index.get(label.as_str()) {
                Some(&i) => assignment[i] = id,
                None => extra.push(label.clone()),
            }
        }
    }
    let missing: Vec<String> = labels
        .iter()
        .enumerate()
        .filter(|(i, _)| assignment[*i] == usize::MAX)
        .map(|(_, l)| l.clone())
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        return Err(Error::LabelMismatch { missing, extra });
    }
    let partition = Partition::from_assignment(assignment);
    let report = partition_cohesion(&partition, &prof, operators, norm_mode)?;
    Ok(serde_json::to_string_pretty(&report)? + "\n")
}

/// Generates a planted two-pole benchmark and writes `edges.csv` and
/// `membership.csv`. Isolated nodes are left out of the membership file so
/// the two label sets stay aligned for downstream commands.
pub fn cmd_synth(spec: &SyntheticSpec, out: &Path) -> Result<()> {
    let instance = generate(spec)?;
    fs::create_dir_all(out)?;

    let graph = &instance.graph;
    let mut edges = String::from("source,target,weight\n");
    for i in 0..graph.node_count() {
        for j in (i + 1)..graph.node_count() {
            let w = graph.matrix().weight(i, j);
            if w > 0.0 {
                edges.push_str(&format!("{},{},{w}\n", graph.label(i), graph.label(j)));
            }
        }
    }
    fs::write(out.join("edges.csv"), edges)?;

    let mut membership = String::from("node,eta_a,eta_b\n");
    for i in 0..graph.node_count() {
        if graph.matrix().strength(i) > 0.0 {
            membership.push_str(&format!(
                "{},{},{}\n",
                graph.label(i),
                instance.profile.toward_a(i),
                instance.profile.toward_b(i)
            ));
        }
    }
    fs::write(out.join("membership.csv"), membership)?;
    Ok(())
}

/// The `shapley` output: values keyed by node label.
#[derive(Debug, Serialize, Deserialize)]
pub struct ShapleyArtifact {
    pub kind: MatrixKind,
    pub method: String,
    pub values: BTreeMap<String, f64>,
}

/// Shapley vector of the measure built from a membership table, as pretty
/// JSON. `oracle` switches to the permutation average (small tables only).
pub fn cmd_shapley(
    membership_path: &Path,
    operators: &OperatorConfig,
    kind: MatrixKind,
    oracle: bool,
) -> Result<String> {
    let (labels, prof) = load_membership_table(fs::File::open(membership_path)?)?;
    let matrix = match kind {
        MatrixKind::Risk => build_risk_matrix(&prof, operators)?,
        MatrixKind::Dialogue => build_dialogue_matrix(&prof, operators)?,
    };
    let measure = TwoAdditiveFuzzyMeasure::new(matrix);
    let (method, values) = if oracle {
        let sh = shapley_brute_force_all(measure.n(), |mask| measure.value_of_mask(mask))?;
        ("brute-force".to_owned(), sh)
    } else {
        (
            "closed-form".to_owned(),
            ShapleyVector::of(&measure).values().to_vec(),
        )
    };
    let artifact = ShapleyArtifact {
        kind,
        method,
        values: labels.into_iter().zip(values).collect(),
    };
    Ok(serde_json::to_string_pretty(&artifact)? + "\n")
}

/// Exports a graph as DOT and node-link JSON, optionally colored by a
/// stored partition.
pub fn cmd_export(
    graph_path: &Path,
    partition_path: Option<&Path>,
    binarize: bool,
    out: &Path,
) -> Result<()> {
    let graph = load_edge_list(
        graph_path,
        LoadOptions {
            collapse_directed: true,
            binarize,
        },
    )?;
    let partition = match partition_path {
        None => None,
        Some(path) => {
            let artifact: PartitionArtifact = serde_json::from_str(&fs::read_to_string(path)?)?;
            let mut assignment = vec![usize::MAX; graph.node_count()];
            for (id_str, members) in &artifact.communities {
                let id: usize = id_str
                    .parse()
                    .map_err(|_| Error::Config(format!("bad community id {id_str:?}")))?;
                for label in members {
                    let i = graph.index_of(label).ok_or_else(|| {
                        Error::Config(format!("partition names unknown node {label:?}"))
                    })?;
                    assignment[i] = id;
                }
            }
            if let Some(i) = assignment.iter().position(|&c| c == usize::MAX) {
                return Err(Error::Config(format!(
                    "partition misses node {:?}",
                    graph.label(i)
                )));
            }
            Some(Partition::from_assignment(assignment))
        }
    };
    fs::create_dir_all(out)?;
    fs::write(out.join("graph.dot"), graph.to_dot(partition.as_ref()))?;
    let mut json = serde_json::to_string_pretty(&graph.to_node_link_json())?;
    json.push('\n');
    fs::write(out.join("graph.json"), json)?;
    Ok(())
}

/// Prints a one-line machine-parsable error and returns the exit code.
pub fn report_error(err: &Error) -> i32 {
    let mut stderr = std::io::stderr().lock();
    let _ = writeln!(stderr, "error[{}]: {}", err.tag(), err);
    err.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let dir = tempfile::tempdir().unwrap();
        let graph = dir.path().join("g.csv");
        let membership = dir.path().join("m.csv");
        fs::write(&graph, "source,target\na,b\n").unwrap();
        fs::write(&membership, "node,eta_a,eta_b\na,1,0\nb,0,1\n").unwrap();

        let file: FileConfig = toml::from_str(&format!(
            "graph = {:?}\nmembership = {:?}\ngamma = 0.3\nseed = 9\noverlap = \"min\"\n\"norm-mode\" = \"all-pairs\"\n",
            graph, membership
        ))
        .unwrap();
        let flags = Overrides {
            gamma: Some(0.7),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(flags, file).unwrap();
        assert_eq!(cfg.blend.gamma, 0.7); // flag wins
        assert_eq!(cfg.seed, 9); // file fills the gap
        assert_eq!(cfg.operators.overlap, Overlap::Min);
        assert_eq!(cfg.norm_mode, NormMode::AllPairs);
        assert_eq!(cfg.operators.grouping, Grouping::Max); // default
    }

    #[test]
    fn resolve_rejects_missing_files_and_bad_ids() {
        let err = RunConfig::resolve(Overrides::default(), FileConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Config(_)));

        let dir = tempfile::tempdir().unwrap();
        let graph = dir.path().join("g.csv");
        let membership = dir.path().join("m.csv");
        fs::write(&graph, "source,target\na,b\n").unwrap();
        fs::write(&membership, "node,eta_a,eta_b\na,1,0\nb,0,1\n").unwrap();
        let flags = Overrides {
            graph: Some(graph.clone()),
            membership: Some(membership.clone()),
            overlap: Some("frobnicate".into()),
            ..Default::default()
        };
        assert!(RunConfig::resolve(flags, FileConfig::default()).is_err());

        let flags = Overrides {
            graph: Some(graph),
            membership: Some(membership),
            gammas: Some(vec![0.5, 1.2]),
            ..Default::default()
        };
        assert!(RunConfig::resolve(flags, FileConfig::default()).is_err());
    }
}
