//! Command-line interface: enumeration tables, configuration synthesis,
//! node recovery, configuration verification, and the conic tangent solver.
//!
//! Exit codes: 0 on success, 1 when a mathematical inconsistency is
//! detected in otherwise well-formed input, 2 on input or parse errors.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::configuration::{
    mock_nodal_config_g4, spans_config, split_config, NodeSet, WeightedConfig,
};
use crate::curves::{common_tangents, Conic, DEFAULT_PRECISION};
use crate::document::{parse_points_file, ConfigDocument};
use crate::enumeration::{self, theta_table, CurveModel};
use crate::error::{Error, Result};
use crate::exactlin::{ProjPoint, Scalar};
use crate::recovery::{cluster_points, recover_from_spans, recover_nodes_g4, recover_split_nodes};

#[derive(Parser)]
#[command(
    name = "thetaplanes",
    about = "Exact theta-hyperplane configurations of nodal canonical curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the theta-hyperplane count table of a curve model.
    Enumerate(EnumerateArgs),
    /// Build a configuration and write it as a structured-text document.
    Synthesize(SynthesizeArgs),
    /// Recover singular points from a configuration document.
    Recover(RecoverArgs),
    /// Check the consistency identities of a configuration document.
    Verify(VerifyArgs),
    /// Compute the common tangents of two conics, with residuals.
    Tangents(TangentsArgs),
    /// List cluster points of a configuration document.
    Cluster(ClusterArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Irreducible,
    Split,
    Cuspidal,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    model: ModelKind,
    #[arg(long)]
    genus: u32,
    /// Node count (irreducible model only).
    #[arg(long)]
    nodes: Option<u32>,
    /// Cusp count (cuspidal model only).
    #[arg(long)]
    cusps: Option<u32>,
}

#[derive(Subcommand)]
enum SynthesizeKind {
    /// All hyperplanes spanned by r-subsets of the given points.
    Spans {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        points_file: PathBuf,
    },
    /// The top-multiplicity stratum of a split curve with given nodes.
    Split {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        nodes_file: PathBuf,
    },
    /// A full genus-4 mock configuration with the exact stratification.
    MockG4 {
        /// Number of nodes (1..=4).
        #[arg(long)]
        nodes: u32,
        /// Node coordinates; random general-position nodes when absent.
        #[arg(long)]
        nodes_file: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct SynthesizeArgs {
    #[command(subcommand)]
    kind: SynthesizeKind,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RecoverMode {
    Spans,
    Split,
    G4,
}

#[derive(Args)]
struct RecoverArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    mode: RecoverMode,
    /// Point count for spans mode; inferred from the entry count if absent.
    #[arg(long)]
    count: Option<usize>,
    /// Genus for split mode; inferred from the ambient dimension if absent.
    #[arg(long)]
    genus: Option<u32>,
    /// Node count for g4 mode; inferred from the stratification if absent.
    #[arg(long)]
    nodes: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    genus: u32,
}

#[derive(Args)]
struct TangentsArgs {
    /// Six coefficients a,b,c,d,e,f of a x^2 + b xy + c y^2 + d xz + e yz + f z^2.
    #[arg(long)]
    c1: String,
    #[arg(long)]
    c2: String,
    /// Relative precision for the numeric refinement.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: f64,
}

#[derive(Args)]
struct ClusterArgs {
    #[arg(long)]
    config: PathBuf,
    /// Only use hyperplanes of at least this multiplicity.
    #[arg(long, default_value_t = 2)]
    min_weight: u64,
    /// Only report points on at least this many such hyperplanes.
    #[arg(long, default_value_t = 2)]
    min_count: usize,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Synthesize(args) => cmd_synthesize(args),
        Command::Recover(args) => cmd_recover(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Tangents(args) => cmd_tangents(args),
        Command::Cluster(args) => cmd_cluster(args),
    }
}

fn default_seed(explicit: Option<u64>) -> u64 {
    explicit
        .or_else(|| std::env::var("THETA_SEED").ok()?.parse().ok())
        .unwrap_or(0)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Counts trimmed of trailing zeros (but never empty).
fn trimmed(counts: &[BigInt]) -> &[BigInt] {
    let last = counts.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    &counts[..=last]
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<()> {
    let model = match args.model {
        ModelKind::Irreducible => CurveModel::IrreducibleNodal {
            genus: args.genus,
            nodes: args
                .nodes
                .ok_or_else(|| Error::InvalidModel("irreducible model needs --nodes".into()))?,
        },
        ModelKind::Split => CurveModel::Split { genus: args.genus },
        ModelKind::Cuspidal => CurveModel::Cuspidal {
            genus: args.genus,
            cusps: args
                .cusps
                .ok_or_else(|| Error::InvalidModel("cuspidal model needs --cusps".into()))?,
        },
    };
    let table = theta_table(model)?;
    println!("model: {model}");
    let shown = trimmed(&table.counts);
    match &table.multiplicities {
        Some(mults) => {
            let weighted = enumeration::weighted_degree(&table)?;
            let n_g = enumeration::n_odd(args.genus);
            let verdict = if weighted == n_g { "PASS" } else { "FAIL" };
            println!("t: {} | weighted {} = N_{}", join(shown.iter()), weighted, args.genus);
            println!("multiplicities: {}", join(mults[..shown.len()].iter()));
            println!("identity weighted-degree-equals-odd-characteristic-count: {verdict}");
            if verdict == "FAIL" {
                return Err(Error::InconsistentConfiguration(format!(
                    "weighted degree {weighted} differs from {n_g}"
                )));
            }
        }
        None => {
            let total = table.total();
            println!("t: {} | total {} | weighted: unspecified", join(shown.iter()), total);
            println!("multiplicities: unspecified");
            if let CurveModel::Cuspidal { genus, cusps } = model {
                if cusps <= genus.saturating_sub(2) {
                    let closed = enumeration::cuspidal_total(genus, cusps)?;
                    let verdict = if total == closed { "PASS" } else { "FAIL" };
                    println!("identity total-equals-closed-form: {verdict}");
                    if verdict == "FAIL" {
                        return Err(Error::InconsistentConfiguration(format!(
                            "total {total} differs from closed form {closed}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

fn read_to_string(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(Error::Io)
}

fn load_document(path: &PathBuf) -> Result<ConfigDocument> {
    ConfigDocument::from_str(&read_to_string(path)?)
}

fn write_document(doc: &ConfigDocument, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, doc.to_string()).map_err(Error::Io),
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}

fn random_general_position_nodes(count: usize, dim: usize, seed: u64) -> Result<NodeSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e6f6465);
    for _ in 0..1000 {
        let points: Option<Vec<ProjPoint>> = (0..count)
            .map(|_| {
                let coords: Vec<i64> = (0..=dim).map(|_| rng.random_range(-9..=9)).collect();
                ProjPoint::from_ints(&coords).ok()
            })
            .collect();
        if let Some(points) = points {
            if let Ok(nodes) = NodeSet::new(points, dim) {
                return Ok(nodes);
            }
        }
    }
    Err(Error::SynthesisFailed("could not sample nodes in general position".into()))
}

fn cmd_synthesize(args: SynthesizeArgs) -> Result<()> {
    let (cfg, points): (WeightedConfig, Vec<ProjPoint>) = match args.kind {
        SynthesizeKind::Spans { dim, points_file } => {
            let points = parse_points_file(&read_to_string(&points_file)?, dim)?;
            let nodes = NodeSet::new(points.clone(), dim)?;
            (spans_config(&nodes)?, points)
        }
        SynthesizeKind::Split { genus, nodes_file } => {
            if genus < 3 {
                return Err(Error::InvalidModel("split model needs genus >= 3".into()));
            }
            let dim = genus as usize - 1;
            let points = parse_points_file(&read_to_string(&nodes_file)?, dim)?;
            let nodes = NodeSet::new(points.clone(), dim)?;
            (split_config(genus, &nodes)?, points)
        }
        SynthesizeKind::MockG4 { nodes, nodes_file, seed } => {
            let seed = default_seed(seed);
            let node_set = match nodes_file {
                Some(path) => {
                    let points = parse_points_file(&read_to_string(&path)?, 3)?;
                    NodeSet::new(points, 3)?
                }
                None => random_general_position_nodes(nodes as usize, 3, seed)?,
            };
            let cfg = mock_nodal_config_g4(nodes, &node_set, seed)?;
            let points = node_set.points().to_vec();
            (cfg, points)
        }
    };
    write_document(&ConfigDocument::from_config(&cfg, &points), args.out.as_ref())
}

fn infer_spans_count(cfg: &WeightedConfig) -> Result<usize> {
    let r = cfg.ambient_dim() as u32;
    let n = BigInt::from(cfg.len());
    for t in (r + 1)..(r + 64) {
        let c = enumeration::binomial(t, r);
        if c == n {
            return Ok(t as usize);
        }
        if c > n {
            break;
        }
    }
    Err(Error::NotASpanConfiguration(format!(
        "entry count {} is not C(t, {r}) for any t",
        cfg.len()
    )))
}

fn infer_g4_delta(cfg: &WeightedConfig) -> Result<u32> {
    let hist = cfg.multiplicity_histogram();
    for delta in 1..=4u32 {
        let table = theta_table(CurveModel::IrreducibleNodal { genus: 4, nodes: delta })?;
        let matches = table.counts.iter().enumerate().all(|(i, want)| {
            hist.get(&(1u64 << i)).copied().unwrap_or(0) == want.to_usize().unwrap_or(usize::MAX)
        });
        if matches {
            return Ok(delta);
        }
    }
    Err(Error::WrongStratification(
        "multiplicity histogram matches no genus-4 node count".into(),
    ))
}

fn cmd_recover(args: RecoverArgs) -> Result<()> {
    let doc = load_document(&args.config)?;
    let cfg = doc.to_config()?;
    let points = match args.mode {
        RecoverMode::Spans => {
            let t = match args.count {
                Some(t) => t,
                None => infer_spans_count(&cfg)?,
            };
            recover_from_spans(&cfg, t)?
        }
        RecoverMode::Split => {
            let genus = match args.genus {
                Some(g) => g,
                None => cfg.ambient_dim() as u32 + 1,
            };
            recover_split_nodes(&cfg, genus)?
        }
        RecoverMode::G4 => {
            let delta = match args.nodes {
                Some(d) => d,
                None => infer_g4_delta(&cfg)?,
            };
            recover_nodes_g4(&cfg, delta)?
        }
    };
    for p in points {
        println!("point {}", join(p.coords().iter()));
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    let doc = load_document(&args.config)?;
    let cfg = doc.to_config()?;
    let genus = args.genus;
    if genus == 0 || genus > 63 {
        return Err(Error::InvalidModel("genus must lie in 1..=63".into()));
    }
    let mut failed = false;
    let mut check = |name: &str, ok: bool, detail: String| {
        println!("check {name}: {} {detail}", if ok { "PASS" } else { "FAIL" });
        failed |= !ok;
    };

    let weighted = cfg.weighted_degree();
    let n_g = enumeration::n_odd(genus);
    check("weighted-degree", weighted == n_g, format!("degree {weighted}, N_{genus} = {n_g}"));

    let max_mult = 1u64 << (genus - 1);
    let coherent = cfg.iter().all(|(_, m, _)| m.is_power_of_two() && m <= max_mult);
    check(
        "multiplicity-coherence",
        coherent,
        format!("all multiplicities powers of two <= {max_mult}"),
    );

    let dim_ok = cfg.ambient_dim() == genus as usize - 1;
    check(
        "ambient-dimension",
        dim_ok,
        format!(
            "configuration in P^{}, genus {genus} lives in P^{}",
            cfg.ambient_dim(),
            genus as usize - 1
        ),
    );

    if !doc.points.is_empty() {
        let points = doc.point_list()?;
        let type_coherent = cfg.iter().all(|(h, m, _)| {
            let incidence = points.iter().filter(|p| h.contains(p)).count() as u32;
            m == 1u64 << incidence
        });
        check(
            "type-coherence",
            type_coherent,
            "multiplicity = 2^(contained points) for every entry".into(),
        );
        let gp = crate::exactlin::in_general_position(&points, cfg.ambient_dim());
        check("general-position", gp, format!("{} points", points.len()));
    }

    if failed {
        Err(Error::InconsistentConfiguration("one or more checks failed".into()))
    } else {
        println!("verdict: PASS");
        Ok(())
    }
}

fn parse_conic(text: &str) -> Result<Conic> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(Error::Parse(format!(
            "expected six comma-separated coefficients, got {}",
            parts.len()
        )));
    }
    let coeffs: Result<Vec<Scalar>> = parts
        .iter()
        .map(|p| {
            Scalar::from_str(p).map_err(|e| Error::Parse(format!("bad coefficient {p:?}: {e}")))
        })
        .collect();
    Conic::from_coeffs(&coeffs?.try_into().expect("six coefficients"))
}

fn fmt_complex(z: num_complex::Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

fn cmd_tangents(args: TangentsArgs) -> Result<()> {
    let c1 = parse_conic(&args.c1)?;
    let c2 = parse_conic(&args.c2)?;
    let tangents = common_tangents(&c1, &c2, args.precision)?;
    let total: u32 = tangents.iter().map(|t| t.multiplicity).sum();
    println!("tangents: {total} (precision {})", args.precision);
    for t in &tangents {
        let coords = t.approx.iter().map(|z| fmt_complex(*z)).collect::<Vec<_>>().join(" ");
        let mut line = format!(
            "tangent {coords} mult {} residual {} {}",
            t.multiplicity, t.residuals[0], t.residuals[1]
        );
        if let Some(exact) = &t.exact {
            line.push_str(&format!(" exact {}", join(exact.iter())));
        }
        println!("{line}");
    }
    Ok(())
}

fn cmd_cluster(args: ClusterArgs) -> Result<()> {
    let doc = load_document(&args.config)?;
    let cfg = doc.to_config()?;
    let clusters = cluster_points(&cfg, args.min_weight, args.min_count)?;
    for (p, count) in clusters {
        println!("point {} incidence {count}", join(p.coords().iter()));
    }
    Ok(())
}
