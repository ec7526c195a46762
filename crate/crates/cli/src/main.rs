use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use plink::complex::{canonicalize, find_octahedra, find_tetrahedra, ComplexJson, SimplicialComplex};
use plink::constructions::{build_h, build_k, fold_join, sigma_skeleton};
use plink::deltay::{apply_delta_y, build_p, family_search};
use plink::geometry::{
    lk2_cone_sampled, lk2_projection, randomized_embedding_with, simplex_crossings, EmbedOptions, Embedding,
    EmbeddingJson,
};
use plink::sphere::{SphereKind, SphereSubcomplex};
use plink::verify::{verify_theorem, Theorem, VerifyOptions};
use plink::Error;

#[derive(Parser)]
#[command(name = "plink", version, about = "Intrinsic linking of simplicial complexes")]
struct Cli {
    /// Worker threads for parallel trials (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Embeddings tried before giving up on degenerate configurations.
    #[arg(long, global = true, env = "PLINK_MAX_RESAMPLE", default_value_t = 64)]
    max_resample: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named complex.
    Build(BuildArgs),
    /// Sample a seeded generic embedding of a complex.
    Embed(EmbedArgs),
    /// Z2 linking number of two spheres, by projection and by coning.
    Lk2(Lk2Args),
    /// Run a batch check.
    Verify(VerifyArgs),
    /// Delta-Y exchanges.
    #[command(subcommand)]
    Deltay(DeltayCommand),
    /// Everything reachable from a complex by exchanges, up to isomorphism.
    Family(FamilyArgs),
    /// Summary statistics of a complex.
    Info(InfoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Sigma,
    Join,
    #[value(name = "K")]
    K,
    #[value(name = "H")]
    H,
    #[value(name = "P")]
    P,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long)]
    n: Option<usize>,
    /// Simplex dimension for `sigma`.
    #[arg(long)]
    m: Option<usize>,
    /// Points per factor for `join`.
    #[arg(long)]
    k: Option<usize>,
    /// Number of factors for `join`.
    #[arg(long)]
    folds: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    complex: PathBuf,
    /// Ambient dimension (default 2n+1).
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Lk2Args {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    embedding: PathBuf,
    /// First sphere: `l1,l2,...` for the boundary of a simplex, or
    /// `l1,l2;l2,l3;...` for an explicit simplex list.
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Seed for the cone apex.
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    theorem: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DeltayCommand {
    /// Exchange one tetrahedron.
    Apply {
        #[arg(long)]
        complex: PathBuf,
        /// Vertex labels of the (n+1)-simplex whose boundary is exchanged.
        #[arg(long)]
        tetra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long, default_value_t = 1000)]
    max_nodes: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InfoArgs {
    #[arg(long)]
    complex: PathBuf,
}

/// Exit status: violations are 1, everything operational is 2.
enum Failure {
    Violation(String),
    Operational(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Operational(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Operational(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Operational(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Operational(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Build(a) => build(a, cli.format),
        Command::Embed(a) => embed(a, &cli),
        Command::Lk2(a) => lk2(a, &cli),
        Command::Verify(a) => verify(a, &cli),
        Command::Deltay(DeltayCommand::Apply { complex, tetra, out }) => deltay_apply(complex, tetra, out.as_deref()),
        Command::Family(a) => family(a, cli.format),
        Command::Info(a) => info(a, cli.format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Operational(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(value: &impl Serialize, out: Option<&Path>) -> Outcome {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    let json: ComplexJson = serde_json::from_str(&fs::read_to_string(path)?)?;
    Ok(SimplicialComplex::from_json(json)?)
}

fn build(a: &BuildArgs, format: Format) -> Outcome {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required for this family")));
    let k = match a.family {
        FamilyKind::Sigma => sigma_skeleton(need(a.m, "m")?, need(a.n, "n")?)?,
        FamilyKind::Join => fold_join(need(a.k, "k")?, need(a.folds, "folds")?)?,
        FamilyKind::K => build_k(need(a.n, "n")?)?.0,
        FamilyKind::H => build_h(need(a.n, "n")?)?,
        FamilyKind::P => build_p(need(a.n, "n")?)?,
    };
    if format == Format::Text && a.out.is_none() {
        println!("{}: {} vertices, {} {}-simplices", k.name(), k.vertex_count(), k.top_simplices().len(), k.dim());
        return Ok(());
    }
    emit(&k.to_json(), a.out.as_deref())
}

fn embed(a: &EmbedArgs, cli: &Cli) -> Outcome {
    let k = read_complex(&a.complex)?;
    let d = a.dim.unwrap_or(2 * k.dim() + 1);
    let opts = EmbedOptions { max_attempts: cli.max_resample, shear: true };
    let e = randomized_embedding_with(&k, d, a.seed, opts)?;
    emit(&e.to_json(), a.out.as_deref())
}

fn parse_sphere(k: &SimplicialComplex, spec: &str) -> Result<SphereSubcomplex, Failure> {
    if spec.contains(';') {
        let simplices = spec.split(';').map(|s| k.parse_simplex(s)).collect::<Result<Vec<_>, _>>()?;
        let sphere = SphereSubcomplex::new(simplices, SphereKind::Cycle);
        if !sphere.is_valid() {
            return Err(usage(format!("`{spec}` is not a combinatorial sphere")));
        }
        Ok(sphere)
    } else {
        Ok(SphereSubcomplex::tetrahedron(&k.parse_simplex(spec)?))
    }
}

fn lk2(a: &Lk2Args, cli: &Cli) -> Outcome {
    let k = read_complex(&a.complex)?;
    let json: EmbeddingJson = serde_json::from_str(&fs::read_to_string(&a.embedding)?)?;
    let e = Embedding::from_json(&json, &k)?;
    let (sa, sb) = (parse_sphere(&k, &a.a)?, parse_sphere(&k, &a.b)?);
    let projection = lk2_projection(&sa, &sb, &e)?;
    let cone = lk2_cone_sampled(&sa, &sb, &e, a.seed, cli.max_resample)?;
    let report = json!({ "projection": projection.value(), "cone": cone.value() });
    if cli.format == Format::Text {
        println!("projection {projection}  cone {cone}");
    } else {
        emit(&report, None)?;
    }
    if projection != cone {
        let mut dump = Vec::new();
        for s in sa.simplices() {
            for t in sb.simplices() {
                dump.push(simplex_crossings(s, t, &e)?);
            }
        }
        return Err(Failure::Violation(format!(
            "methods disagree; crossings: {}",
            serde_json::to_string(&dump)?
        )));
    }
    Ok(())
}

fn verify(a: &VerifyArgs, cli: &Cli) -> Outcome {
    let theorem: Theorem = a.theorem.parse()?;
    let randomized = !matches!(theorem, Theorem::Trivalent | Theorem::PetersenFamily | Theorem::Hdpet);
    let seed = match (a.seed, randomized) {
        (Some(s), _) => s,
        (None, false) => 0,
        (None, true) => return Err(usage(format!("`verify {}` needs an explicit --seed", theorem.name()))),
    };
    if a.trials == 0 {
        return Err(usage("--trials must be positive"));
    }
    let n = a.n.unwrap_or(if theorem == Theorem::Hdpet { 2 } else { 1 });
    let report = verify_theorem(theorem.name(), n, a.trials, seed, VerifyOptions { max_resample: cli.max_resample })?;
    if cli.format == Format::Text && a.out.is_none() {
        let ones = report.results.iter().filter(|&&r| r == 1).count();
        println!(
            "{} n={}: {}/{} positive, {} violations, {} ms",
            report.theorem,
            report.n,
            ones,
            report.results.len(),
            report.violations.len(),
            report.elapsed_ms
        );
    } else {
        emit(&report, a.out.as_deref())?;
    }
    if !report.passed() {
        return Err(Failure::Violation(format!("{} violation(s) of {}", report.violations.len(), report.theorem)));
    }
    Ok(())
}

fn deltay_apply(complex: &Path, tetra: &str, out: Option<&Path>) -> Outcome {
    let k = read_complex(complex)?;
    let t = SphereSubcomplex::tetrahedron(&k.parse_simplex(tetra)?);
    let (target, record) = apply_delta_y(&k, &t)?;
    match out {
        Some(path) => {
            emit(&target.to_json(), Some(path))?;
            eprintln!("exchanged {} -> new vertex {}", record.tetra_vertices, target.label(record.x));
            Ok(())
        }
        None => emit(&json!({ "complex": target.to_json(), "exchange": record }), None),
    }
}

fn family(a: &FamilyArgs, format: Format) -> Outcome {
    let k = read_complex(&a.complex)?;
    let search = family_search(&k, a.max_nodes)?;
    if format == Format::Text && a.out.is_none() {
        println!("{} complexes, {} exchange edges{}", search.nodes.len(), search.edges.len(), if search.truncated { " (truncated)" } else { "" });
        for node in &search.nodes {
            println!("  {} {} vertices, {} simplices", &node.digest[..12], node.complex.vertex_count(), node.complex.top_simplices().len());
        }
        return Ok(());
    }
    emit(&search.to_json(), a.out.as_deref())
}

fn info(a: &InfoArgs, format: Format) -> Outcome {
    let k = read_complex(&a.complex)?;
    let f_vector = (0..=k.dim()).map(|i| k.delta(i).map(<[_]>::len)).collect::<Result<Vec<_>, _>>()?;
    let tetrahedra = find_tetrahedra(&k).len();
    let octahedra = find_octahedra(&k).len();
    let digest = canonicalize(&k).digest;
    if format == Format::Text {
        println!("{}: dim {}, f-vector {:?}", k.name(), k.dim(), f_vector);
        println!("tetrahedra {tetrahedra}, octahedra {octahedra}, trivalent {}", k.is_trivalent());
        println!("digest {digest}");
        return Ok(());
    }
    emit(
        &json!({
            "name": k.name(),
            "n": k.dim(),
            "f_vector": f_vector,
            "tetrahedra": tetrahedra,
            "octahedra": octahedra,
            "trivalent": k.is_trivalent(),
            "digest": digest,
        }),
        None,
    )
}
