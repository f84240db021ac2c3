use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "arrcontain", version, about = "Exact containment checks I^(m) ⊆ I^r for singular points of line arrangements")]
pub struct Cli {
    /// Conductor n of the coefficient field Q(ζ_n) for arrangement files [default: 6]
    #[arg(long, global = true)]
    pub field_conductor: Option<u32>,
    /// Worker threads for elimination and interpolation
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an arrangement and write it as JSON
    Build(SourceArgs),
    /// Singular points, multiplicity profile and incidence table
    Singular(SingularArgs),
    /// Test a witness for I^(m) ⊄ I^r
    Check(CheckArgs),
    /// Elements of I^(m)_d outside (I^r)_d
    WitnessSearch(SearchArgs),
    /// Run the full verification pipeline for Yoshinaga's arrangement
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Builtin arrangement: yoshinaga or fermat
    pub name: Option<String>,
    /// Deformation parameter for yoshinaga
    #[arg(long, default_value = "15")]
    pub c: String,
    /// Order for fermat
    #[arg(long)]
    pub n: Option<u32>,
    /// Read the arrangement from a JSON file instead
    #[arg(long, conflicts_with = "name")]
    pub input: Option<PathBuf>,
}

impl Default for SourceArgs {
    fn default() -> Self {
        SourceArgs {
            name: None,
            c: "15".into(),
            n: None,
            input: None,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct SingularArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Also emit the triple-point incidence table as CSV
    #[arg(long)]
    pub incidence: bool,
    /// Where to write the CSV (default: stdout after the JSON)
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Replacement for the bundled triple table
    #[arg(long)]
    pub appendix: Option<PathBuf>,
    /// Replacement for the bundled line list
    #[arg(long)]
    pub line_list: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeSelector {
    AllSingular,
    TripleOnly,
    /// Triple points plus the listed double points (0-based, in locus
    /// order); `None` means every double point.
    TriplePlusDoubles(Option<Vec<usize>>),
}

impl FromStr for SchemeSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-singular" => Ok(SchemeSelector::AllSingular),
            "triple-only" => Ok(SchemeSelector::TripleOnly),
            _ => {
                let Some(list) = s.strip_prefix("triple-plus-doubles:") else {
                    bail!("unknown scheme {s:?}; expected all-singular, triple-only or triple-plus-doubles:<i,j,..|all>");
                };
                if list == "all" {
                    return Ok(SchemeSelector::TriplePlusDoubles(None));
                }
                let indices = list
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.trim().parse::<usize>().map_err(|_| anyhow!("bad double-point index {t:?}")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SchemeSelector::TriplePlusDoubles(Some(indices)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSelector {
    Lines,
    LinesTimesCubic,
    File(PathBuf),
}

impl FromStr for WitnessSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lines" => Ok(WitnessSelector::Lines),
            "lines-times-cubic" => Ok(WitnessSelector::LinesTimesCubic),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(WitnessSelector::File(path.into())),
                _ => bail!("unknown witness {s:?}; expected lines, lines-times-cubic or file:<path>"),
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// all-singular | triple-only | triple-plus-doubles:<i,j,..|all>
    #[arg(long, default_value = "all-singular")]
    pub scheme: SchemeSelector,
    /// lines | lines-times-cubic | file:<path>
    #[arg(long, default_value = "lines-times-cubic")]
    pub witness: WitnessSelector,
    #[arg(long, default_value_t = 3)]
    pub m: u32,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// Verdict that counts as success: non-containment, not-symbolic or in-ordinary-power
    #[arg(long, default_value = "non-containment")]
    pub expect: String,
    /// Skip computing dim I^(m)_d
    #[arg(long)]
    pub no_symbolic_dim: bool,
}

impl Default for CheckArgs {
    fn default() -> Self {
        CheckArgs {
            source: SourceArgs::default(),
            scheme: SchemeSelector::AllSingular,
            witness: WitnessSelector::LinesTimesCubic,
            m: 3,
            r: 2,
            expect: "non-containment".into(),
            no_symbolic_dim: false,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value = "all-singular")]
    pub scheme: SchemeSelector,
    #[arg(long, default_value_t = 3)]
    pub m: u32,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    #[arg(long)]
    pub degree: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubsetMode {
    /// Each double point alone added to the triple points
    Sampled,
    /// Every subset of the double points
    Exhaustive,
    None,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "15")]
    pub c: String,
    /// Replacement for the bundled triple table
    #[arg(long)]
    pub appendix: Option<PathBuf>,
    /// Replacement for the bundled line list
    #[arg(long)]
    pub line_list: Option<PathBuf>,
    /// Intermediate point sets between the triple points and all singular points
    #[arg(long, value_enum, default_value = "sampled")]
    pub subsets: SubsetMode,
}

impl Default for VerifyArgs {
    fn default() -> Self {
        VerifyArgs {
            c: "15".into(),
            appendix: None,
            line_list: None,
            subsets: SubsetMode::Sampled,
        }
    }
}
