use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ops::RangeInclusive;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "polybox", version, about = "Point counting and determinant experiments over F_q[T]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the points of a curve in a box.
    CountBox(CountBoxArgs),
    /// Box counts and exponents for a range of box sizes.
    ExponentScan(ExponentScanArgs),
    /// Distribution of box points over residues mod f.
    ResidueStats(ResidueStatsArgs),
    #[command(subcommand)]
    Detlab(Detlab),
    #[command(subcommand)]
    Ec(Ec),
    /// Re-run the command recorded in a report or manifest.
    Replay(ReplayArgs),
}

#[derive(Subcommand, Debug)]
pub enum Detlab {
    /// Check f^kappa | W(P) over all tuples of S.
    Ord(OrdArgs),
    /// Expected number of distinct residues among random tuples.
    MeanIdentity(MeanIdentityArgs),
    /// Curve of degree <= d through the given points.
    Interpolate(InterpolateArgs),
    /// Largest number of points of S on one W-curve.
    WcurveMax(WcurveMaxArgs),
}

#[derive(Subcommand, Debug)]
pub enum Ec {
    /// N_lambda: pairs (a, b) in I^2 with a^3 = lambda b^2 mod f.
    Nlambda(NlambdaArgs),
    /// Number of pairs of pairs in I^2 giving isomorphic curves mod f.
    Census(CensusArgs),
    /// N_lambda for every realised lambda.
    Scan19(Scan19Args),
    /// Small multiplier t with every {X_i t}_f small.
    Pigeonhole(PigeonholeArgs),
    /// The family x -> (x^2, x^3) inside I^2.
    Extremal(ExtremalArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutFormat {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct FieldOpts {
    /// Field order, or the prime p when --ext-k is given.
    #[arg(long)]
    pub q: u32,
    /// Extension degree k, for F_{q^k}.
    #[arg(long = "ext-k")]
    pub ext_k: Option<u32>,
    /// JSON file with {"p", "k", "modulus"} fixing the extension modulus.
    #[arg(long)]
    pub modulus: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Print one format to stdout instead of writing both files.
    #[arg(long, value_enum)]
    pub out: Option<OutFormat>,
    /// Directory for report files when --out is omitted.
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, env = "POLYBOX_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct BaseOpts {
    #[arg(long = "base-x", default_value = "0")]
    pub base_x: String,
    #[arg(long = "base-y", default_value = "0")]
    pub base_y: String,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct ModulusOpts {
    /// Irreducible modulus f.
    #[arg(long)]
    pub f: Option<String>,
    /// Degree of a seeded random irreducible f.
    #[arg(long = "f-deg")]
    pub f_deg: Option<usize>,
}

/// A point set: explicit points, or the points of a curve in a box.
#[derive(Args, Debug, Clone)]
pub struct SetOpts {
    /// JSON array of [x, y] polynomial pairs.
    #[arg(long, conflicts_with_all = ["curve", "n"])]
    pub points: Option<String>,
    #[arg(long, requires = "n")]
    pub curve: Option<String>,
    #[arg(long, requires = "curve")]
    pub n: Option<u32>,
    #[command(flatten)]
    pub base: BaseOpts,
}

#[derive(Args, Debug, Clone)]
pub struct WOpts {
    /// The first omega monomials 1, X, Y, X^2, XY, Y^2, ...
    #[arg(long, conflicts_with = "d")]
    pub omega: Option<usize>,
    /// Grid monomials X^i Y^j with i <= d, j <= M.
    #[arg(long, requires = "m")]
    pub d: Option<u32>,
    #[arg(long = "M", id = "m", requires = "d")]
    pub m: Option<u32>,
}

#[derive(Args, Debug)]
pub struct CountBoxArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[arg(long)]
    pub curve: String,
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub base: BaseOpts,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ExponentScanArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[arg(long)]
    pub curve: String,
    /// Inclusive range a..b of box exponents.
    #[arg(long = "n-range", value_parser = parse_range)]
    pub n_range: RangeInclusive<u32>,
    #[command(flatten)]
    pub base: BaseOpts,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ResidueStatsArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[arg(long)]
    pub curve: String,
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub base: BaseOpts,
    #[command(flatten)]
    pub modulus: ModulusOpts,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct OrdArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[command(flatten)]
    pub set: SetOpts,
    #[command(flatten)]
    pub w: WOpts,
    #[command(flatten)]
    pub modulus: ModulusOpts,
    /// Maximum number of tuples.
    #[arg(long)]
    pub budget: Option<u128>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct MeanIdentityArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[command(flatten)]
    pub set: SetOpts,
    #[arg(long)]
    pub omega: usize,
    #[command(flatten)]
    pub modulus: ModulusOpts,
    #[arg(long)]
    pub budget: Option<u128>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct InterpolateArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[command(flatten)]
    pub set: SetOpts,
    #[arg(long)]
    pub d: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct WcurveMaxArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[command(flatten)]
    pub set: SetOpts,
    #[command(flatten)]
    pub w: WOpts,
    /// Maximum number of subsets.
    #[arg(long)]
    pub budget: Option<u128>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct NlambdaArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[arg(long)]
    pub n: u32,
    #[arg(long = "base-x", default_value = "0")]
    pub base: String,
    #[arg(long)]
    pub lambda: String,
    #[command(flatten)]
    pub modulus: ModulusOpts,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[arg(long)]
    pub n: u32,
    #[arg(long = "base-x", default_value = "0")]
    pub base: String,
    #[command(flatten)]
    pub modulus: ModulusOpts,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct Scan19Args {
    #[command(flatten)]
    pub field: FieldOpts,
    #[arg(long)]
    pub n: u32,
    #[arg(long = "base-x", default_value = "0")]
    pub base: String,
    #[command(flatten)]
    pub modulus: ModulusOpts,
    /// Allow boxes larger than |f|^(1/9).
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct PigeonholeArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[command(flatten)]
    pub modulus: ModulusOpts,
    /// Residue X_i; repeat once per exponent.
    #[arg(long = "x", requires = "taus", conflicts_with = "lambda")]
    pub xs: Vec<String>,
    /// Exponent tau_i; repeat once per residue.
    #[arg(long = "tau", requires = "xs")]
    pub taus: Vec<u32>,
    /// Build the small-coefficient model for a^3 = lambda b^2 instead.
    #[arg(long, requires = "n")]
    pub lambda: Option<String>,
    #[arg(long = "base-x", default_value = "0")]
    pub base: String,
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ExtremalArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    /// A JSON report or bare manifest.
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub out: Option<OutFormat>,
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// `a..b` or `a..=b`, both inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

impl Command {
    /// Space-separated subcommand path, as recorded in manifests.
    pub fn name(&self) -> &'static str {
        match self {
            Command::CountBox(_) => "count-box",
            Command::ExponentScan(_) => "exponent-scan",
            Command::ResidueStats(_) => "residue-stats",
            Command::Detlab(Detlab::Ord(_)) => "detlab ord",
            Command::Detlab(Detlab::MeanIdentity(_)) => "detlab mean-identity",
            Command::Detlab(Detlab::Interpolate(_)) => "detlab interpolate",
            Command::Detlab(Detlab::WcurveMax(_)) => "detlab wcurve-max",
            Command::Ec(Ec::Nlambda(_)) => "ec nlambda",
            Command::Ec(Ec::Census(_)) => "ec census",
            Command::Ec(Ec::Scan19(_)) => "ec scan19",
            Command::Ec(Ec::Pigeonhole(_)) => "ec pigeonhole",
            Command::Ec(Ec::Extremal(_)) => "ec extremal",
            Command::Replay(_) => "replay",
        }
    }

    pub fn common(&self) -> Option<&Common> {
        Some(match self {
            Command::CountBox(a) => &a.common,
            Command::ExponentScan(a) => &a.common,
            Command::ResidueStats(a) => &a.common,
            Command::Detlab(Detlab::Ord(a)) => &a.common,
            Command::Detlab(Detlab::MeanIdentity(a)) => &a.common,
            Command::Detlab(Detlab::Interpolate(a)) => &a.common,
            Command::Detlab(Detlab::WcurveMax(a)) => &a.common,
            Command::Ec(Ec::Nlambda(a)) => &a.common,
            Command::Ec(Ec::Census(a)) => &a.common,
            Command::Ec(Ec::Scan19(a)) => &a.common,
            Command::Ec(Ec::Pigeonhole(a)) => &a.common,
            Command::Ec(Ec::Extremal(a)) => &a.common,
            Command::Replay(_) => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..10").unwrap(), 1..=10);
        assert_eq!(parse_range("6..=12").unwrap(), 6..=12);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("5").is_err());
    }
}
