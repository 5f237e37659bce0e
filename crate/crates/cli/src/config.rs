use std::path::PathBuf;
use std::sync::Arc;

use brauer_core::algebra::{FiniteGroup, DEFAULT_MAX_ORDER};
use brauer_core::fields::{ExtensionDescriptor, DEFAULT_FIELD_BOUND};
use clap::{Parser, Subcommand, ValueEnum};

use crate::CliError;

/// Largest cochain space the oracle cross-check in `component` will enumerate.
pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Modifications, cohomology and Brauer monoids of finite Galois extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; `monoid` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory for cached monoid and verification results.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest group order to enumerate modifications for.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_order: u64,
    /// Largest field order `|L|`.
    #[arg(long, global = true, default_value_t = DEFAULT_FIELD_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_q: u64,
    /// Largest number of cochains the brute-force oracle may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// List the modifications of a group ("C4" or a group JSON file).
    Modifications { group: String },
    /// Second cohomology of one modification with coefficients in `L^×`.
    Component {
        extension: String,
        /// Erased products as a JSON array of pairs, e.g. "[[1,1]]".
        #[arg(long)]
        zeros: String,
    },
    /// Export the Brauer monoid of an extension.
    Monoid { extension: String },
    /// Check the exact sequence and its corollary on every modification.
    Verify { extension: String },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_group_order: usize,
    pub max_q: u64,
    pub brute_force_budget: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_group_order: DEFAULT_MAX_ORDER,
            max_q: DEFAULT_FIELD_BOUND,
            brute_force_budget: DEFAULT_BUDGET,
        }
    }
}

/// One invocation, with every default resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub bounds: Bounds,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let format = default_format(&command);
        RunConfig {
            command,
            format,
            out: None,
            cache_dir: None,
            bounds: Bounds::default(),
        }
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn with_out(mut self, path: impl Into<PathBuf>) -> Self {
        self.out = Some(path.into());
        self
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn extension(&self, spec: &str) -> Result<ExtensionDescriptor, CliError> {
        Ok(ExtensionDescriptor::parse_bounded(spec, self.bounds.max_q)?)
    }
}

fn default_format(command: &Command) -> Format {
    match command {
        Command::Monoid { .. } => Format::Json,
        _ => Format::Text,
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let format = cli.format.unwrap_or_else(|| default_format(&cli.command));
        RunConfig {
            command: cli.command,
            format,
            out: cli.out,
            cache_dir: cli.cache_dir,
            bounds: Bounds {
                max_group_order: usize::try_from(cli.max_order).unwrap_or(usize::MAX),
                max_q: cli.max_q,
                brute_force_budget: cli.budget,
            },
        }
    }
}

/// `"C<n>"` or a path to a group JSON file.
pub fn parse_group(spec: &str, max_order: usize) -> Result<Arc<FiniteGroup>, CliError> {
    let spec = spec.trim();
    if let Some(n) = spec.strip_prefix(['C', 'c']).filter(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit())) {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Usage(format!("bad group order in {spec:?}")))?;
        if n > max_order {
            return Err(brauer_core::Error::GroupTooLarge { order: n, bound: max_order }.into());
        }
        return Ok(Arc::new(FiniteGroup::cyclic(n)?));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError::Usage(format!("{spec:?} is neither \"C<n>\" nor a readable group file: {e}")))?;
    let group: FiniteGroup =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad group JSON in {spec}: {e}")))?;
    if group.order() > max_order {
        return Err(brauer_core::Error::GroupTooLarge {
            order: group.order(),
            bound: max_order,
        }
        .into());
    }
    Ok(Arc::new(group))
}

/// `"[[1,1],[1,2]]"`.
pub fn parse_zeros(spec: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let pairs: Vec<[usize; 2]> =
        serde_json::from_str(spec).map_err(|e| CliError::Usage(format!("bad zero set {spec:?}: {e}")))?;
    Ok(pairs.into_iter().map(|[a, b]| (a, b)).collect())
}
