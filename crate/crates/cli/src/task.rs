use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::json::canonical;
use crate::spec::{read_quiver_spec, QuiverSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Forms,
    AffineInfo,
    Roots,
    Coxeter,
    Tubes,
    FkVerify,
    FkBracket,
    Kac,
    Hall,
    HallChi,
    Stability,
    Generic,
    PpMoment,
    PpLifts,
}

impl Command {
    pub const ALL: [Command; 14] = [
        Command::Forms,
        Command::AffineInfo,
        Command::Roots,
        Command::Coxeter,
        Command::Tubes,
        Command::FkVerify,
        Command::FkBracket,
        Command::Kac,
        Command::Hall,
        Command::HallChi,
        Command::Stability,
        Command::Generic,
        Command::PpMoment,
        Command::PpLifts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Forms => "forms",
            Command::AffineInfo => "affine-info",
            Command::Roots => "roots",
            Command::Coxeter => "coxeter",
            Command::Tubes => "tubes",
            Command::FkVerify => "fk-verify",
            Command::FkBracket => "fk-bracket",
            Command::Kac => "kac",
            Command::Hall => "hall",
            Command::HallChi => "hall-chi",
            Command::Stability => "stability",
            Command::Generic => "generic",
            Command::PpMoment => "pp-moment",
            Command::PpLifts => "pp-lifts",
        }
    }

    fn uses(self) -> Uses {
        use Command::*;
        let mut u = Uses::default();
        match self {
            Forms | AffineInfo | Coxeter | Generic => u.dims = true,
            Tubes => {}
            Roots => {
                u.dims = true;
                u.cutoff = Some(2);
            }
            FkVerify | FkBracket => {
                u.dims = self == FkBracket;
                u.cutoff = Some(2);
                u.variant = true;
                u.cocycle = true;
            }
            Kac | Hall | HallChi | PpMoment | PpLifts => {
                u.dims = true;
                u.primes = true;
                u.cutoff = (self == HallChi).then_some(1);
            }
            Stability => {
                u.dims = true;
                u.primes = true;
            }
        }
        u.theta = matches!(self, Stability | Generic | PpLifts);
        u
    }
}

#[derive(Default)]
struct Uses {
    dims: bool,
    primes: bool,
    /// Default cutoff when the command takes one.
    cutoff: Option<u32>,
    variant: bool,
    cocycle: bool,
    theta: bool,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::UnknownCommand(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Literal,
    Symmetrized,
}

impl FromStr for Variant {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Variant> {
        match s {
            "literal" => Ok(Variant::Literal),
            "symmetrized" => Ok(Variant::Symmetrized),
            _ => Err(CliError::Usage(format!("--variant must be literal or symmetrized, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CocycleChoice {
    Eps,
    EpsStar,
}

impl FromStr for CocycleChoice {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<CocycleChoice> {
        match s {
            "eps" => Ok(CocycleChoice::Eps),
            "eps-star" => Ok(CocycleChoice::EpsStar),
            _ => Err(CliError::Usage(format!("--cocycle must be eps or eps-star, got `{s}`"))),
        }
    }
}

/// Raw command-line values before normalization.
#[derive(Debug, Clone, Default)]
pub struct TaskArgs {
    pub command: String,
    pub quiver: Option<PathBuf>,
    pub dims: Vec<String>,
    pub primes: Option<String>,
    pub cutoff: Option<u32>,
    pub variant: Option<String>,
    pub cocycle: Option<String>,
    pub theta: Option<String>,
    pub budget: Option<u64>,
}

/// Parameters a command actually reads, with defaults filled in. Unused ones are absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleChoice>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskDescriptor {
    pub command: Command,
    pub quiver_path: Option<PathBuf>,
    pub quiver: QuiverSpec,
    pub params: Params,
    /// Work limit; it decides whether a task finishes, never what it reports.
    pub budget: Option<u64>,
}

pub fn parse_csv<T: FromStr>(flag: &str, s: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{flag}: `{t}` is not a valid entry of `{s}`")))
        })
        .collect()
}

impl TaskDescriptor {
    /// Loads the quiver file and normalizes the parameters for `args.command`.
    pub fn from_args(args: &TaskArgs) -> CliResult<TaskDescriptor> {
        let command: Command = args.command.parse()?;
        let path = args
            .quiver
            .clone()
            .ok_or_else(|| CliError::Usage("--quiver PATH is required".into()))?;
        let quiver = read_quiver_spec(&path)?;
        let mut t = TaskDescriptor::new(command, quiver, args)?;
        t.quiver_path = Some(path);
        Ok(t)
    }

    pub fn new(command: Command, quiver: QuiverSpec, args: &TaskArgs) -> CliResult<TaskDescriptor> {
        let q = quiver.build()?;
        let n = quiver.vertices.len();
        let uses = command.uses();
        let check_len = |flag: &str, v: &[i64]| {
            if v.len() == n {
                Ok(())
            } else {
                Err(CliError::Usage(format!(
                    "{flag} has {} entries but the quiver has {n} vertices",
                    v.len()
                )))
            }
        };
        let dims = if uses.dims {
            let dims = args
                .dims
                .iter()
                .map(|s| parse_csv::<i64>("--dim", s))
                .collect::<CliResult<Vec<_>>>()?;
            for d in &dims {
                check_len("--dim", d)?;
            }
            Some(dims)
        } else {
            None
        };
        let primes = if uses.primes {
            let primes = match &args.primes {
                Some(s) => parse_csv::<u64>("--primes", s)?,
                None => Vec::new(),
            };
            let mut seen = primes.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != primes.len() {
                return Err(CliError::Usage("--primes lists a prime twice".into()));
            }
            Some(if primes.is_empty() {
                default_primes(command, &q, dims.as_deref().unwrap_or(&[]), args.cutoff)?
            } else {
                primes
            })
        } else {
            None
        };
        let theta = match (uses.theta, &args.theta) {
            (true, Some(s)) => {
                let t = parse_csv::<i64>("--theta", s)?;
                check_len("--theta", &t)?;
                Some(t)
            }
            _ => None,
        };
        let params = Params {
            dims,
            primes,
            cutoff: uses.cutoff.map(|d| args.cutoff.unwrap_or(d)),
            variant: if uses.variant {
                Some(args.variant.as_deref().map_or(Ok(Variant::Symmetrized), str::parse)?)
            } else {
                None
            },
            cocycle: if uses.cocycle {
                Some(args.cocycle.as_deref().map_or(Ok(CocycleChoice::Eps), str::parse)?)
            } else {
                None
            },
            theta,
        };
        Ok(TaskDescriptor {
            command,
            quiver_path: None,
            quiver,
            params,
            budget: args.budget,
        })
    }

    /// The logical task: command, quiver content and parameters. The file path and the
    /// budget are left out, so the same question asked twice has one digest.
    pub fn canonical_value(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "quiver": self.quiver,
            "params": self.params,
        })
    }

    pub fn canonical_string(&self) -> String {
        canonical(&self.canonical_value())
    }

    /// Hex SHA-256 of the artifact version and the canonical task.
    pub fn digest(&self, artifact_version: &str) -> String {
        let mut h = Sha256::new();
        h.update(artifact_version.as_bytes());
        h.update(b"\n");
        h.update(self.canonical_string().as_bytes());
        hex::encode(h.finalize())
    }

    pub fn budget(&self) -> aql_core::Budget {
        match self.budget {
            Some(b) => aql_core::Budget::with_max_ops(b as u128),
            None => aql_core::Budget::default(),
        }
    }
}

pub fn quiver_digest(q: &QuiverSpec) -> String {
    let v = serde_json::to_value(q).expect("quiver spec serializes");
    hex::encode(Sha256::digest(canonical(&v).as_bytes()))
}

pub fn first_primes(n: usize) -> Vec<u64> {
    (2u64..).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).take(n).collect()
}

/// The fewest primes that determine the polynomial (two for kac, so the linear term is seen).
fn default_primes(command: Command, q: &aql_core::Quiver, dims: &[Vec<i64>], cutoff: Option<u32>) -> CliResult<Vec<u64>> {
    let n = match (command, dims) {
        (Command::Kac, [d, ..]) => {
            let bound = (1 - q.tits_form(&d.clone().into())?).max(0) as usize;
            (bound + 1).max(2)
        }
        (Command::HallChi, [x, y, ..]) => hall_chi_degree_bound(x, y, cutoff.unwrap_or(1)) + 1,
        _ => 1,
    };
    Ok(first_primes(n))
}

/// Dimension of the partial flag variety at each vertex, summed: the factors of
/// `(ad S^x)^k S^y` contribute blocks `x_i` (k times) and `y_i`.
pub fn hall_chi_degree_bound(x: &[i64], y: &[i64], k: u32) -> usize {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| {
            let mut blocks = vec![a; k as usize];
            blocks.push(b);
            let mut s = 0;
            for i in 0..blocks.len() {
                for j in i + 1..blocks.len() {
                    s += blocks[i].max(0) * blocks[j].max(0);
                }
            }
            s as usize
        })
        .sum()
}
