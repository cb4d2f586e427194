use clap::{Args, ValueEnum};
use lp_santalo::corpus::{random_hulls, symmetric_bodies};
use lp_santalo::quadrature::SphereRule;
use lp_santalo::{ConvexBody, PExponent, QuadratureSpec};
use std::fmt;
use std::path::PathBuf;

/// Failure classes, each mapped to its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed flags, files or values (exit 2).
    Parse(String),
    /// A computation did not produce a usable value (exit 3).
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse(_) => 2,
            Self::Numeric(_) => 3,
            Self::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parse(m) => write!(f, "parse error: {m}"),
            Self::Numeric(m) => write!(f, "numeric failure: {m}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorpusKind {
    /// Seeded random 2-D hulls with 5–12 vertices.
    Random,
    /// Square, hexagon, disk and a rotated rectangle.
    Symmetric,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Body file (JSON object or array of objects); repeatable.
    #[arg(long = "body", value_name = "FILE.json")]
    pub bodies: Vec<PathBuf>,
    /// Comma-separated exponents, `inf` for the classical case.
    #[arg(long = "p", value_name = "LIST")]
    pub p: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed node budget for the sphere rule instead of the adaptive default.
    #[arg(long = "sphere-nodes", value_name = "N")]
    pub sphere_nodes: Option<usize>,
    /// Relative tolerance of the radial and angular integrals.
    #[arg(long = "rel-tol", value_name = "X")]
    pub rel_tol: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// A named body.
#[derive(Debug, Clone)]
pub struct NamedBody {
    pub name: String,
    pub body: ConvexBody,
}

/// Everything a run depends on, validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub bodies: Vec<NamedBody>,
    pub p: Vec<PExponent>,
    pub seed: u64,
    pub spec: QuadratureSpec,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn parse_p_list(list: &str) -> CliResult<Vec<PExponent>> {
    let items: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(CliError::Parse("the p list is empty".into()));
    }
    items
        .iter()
        .map(|s| s.parse::<PExponent>().map_err(|e| CliError::Parse(format!("p = {s:?}: {e}"))))
        .collect()
}

pub fn parse_vector(list: &str, what: &str) -> CliResult<Vec<f64>> {
    let items: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(CliError::Parse(format!("{what} is empty")));
    }
    items
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Parse(format!("{what}: {s:?} is not a finite number")))
        })
        .collect()
}

fn load_bodies(path: &PathBuf) -> CliResult<Vec<NamedBody>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().map_or_else(|| "body".into(), |s| s.to_string_lossy().into_owned());
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    let many = items.len() > 1;
    items
        .into_iter()
        .enumerate()
        .map(|(i, item)| {
            let body: ConvexBody = serde_json::from_value(item)
                .map_err(|e| CliError::Parse(format!("{} body {i}: {e}", path.display())))?;
            let name = if many { format!("{stem}[{i}]") } else { stem.clone() };
            Ok(NamedBody { name, body })
        })
        .collect()
}

pub fn corpus(kind: CorpusKind, seed: u64, count: usize) -> CliResult<Vec<NamedBody>> {
    let named = |prefix: &str, bodies: Vec<ConvexBody>| {
        bodies
            .into_iter()
            .enumerate()
            .map(|(i, body)| NamedBody {
                name: format!("{prefix}-{i:02}"),
                body,
            })
            .collect()
    };
    match kind {
        CorpusKind::Random => random_hulls(seed, count)
            .map(|b| named("hull", b))
            .map_err(|e| CliError::Numeric(format!("corpus generation: {e}"))),
        CorpusKind::Symmetric => symmetric_bodies()
            .map(|b| named("symmetric", b))
            .map_err(|e| CliError::Numeric(format!("corpus generation: {e}"))),
    }
}

impl RunConfig {
    /// Validates the shared flags. `fallback` supplies bodies when no
    /// `--body` is given; `default_p` is used without `--p`.
    pub fn from_args(
        args: &CommonArgs,
        default_p: &str,
        fallback: impl FnOnce(u64) -> CliResult<Vec<NamedBody>>,
    ) -> CliResult<Self> {
        let p = parse_p_list(args.p.as_deref().unwrap_or(default_p))?;
        let mut spec = QuadratureSpec::default();
        if let Some(tol) = args.rel_tol {
            spec = spec.with_rel_tol(tol);
        }
        if let Some(nodes) = args.sphere_nodes {
            spec.sphere = SphereRule::Count { nodes };
        }
        spec.validate().map_err(|e| CliError::Parse(format!("quadrature flags: {e}")))?;
        let bodies = if args.bodies.is_empty() {
            fallback(args.seed)?
        } else {
            let mut all = Vec::new();
            for path in &args.bodies {
                all.extend(load_bodies(path)?);
            }
            all
        };
        if bodies.is_empty() {
            return Err(CliError::Parse("no bodies given".into()));
        }
        Ok(Self {
            bodies,
            p,
            seed: args.seed,
            spec,
            out: args.out.clone(),
            format: args.format,
        })
    }
}
