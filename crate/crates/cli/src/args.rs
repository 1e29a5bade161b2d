use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use crinv_core::groups::{
    make_dihedral, make_gamma_pq, make_metacyclic, make_scalar_cyclic, make_twisted_swap, DEFAULT_MAX_ORDER,
};
use crinv_core::signature::Family;
use crinv_core::{close_group, CycNum, Error, UnitaryGroup, UnitaryMatrix};
use num_rational::BigRational;

use crate::output::CliError;

#[derive(Parser, Debug)]
#[command(name = "crinv", version, about = "Invariant Hermitian polynomials of finite unitary groups")]
pub struct Cli {
    /// Working precision for certified numerics, in bits.
    #[arg(
        long,
        global = true,
        env = "CRINV_PRECISION_BITS",
        default_value_t = 128,
        value_parser = clap::value_parser!(u32).range(32..=4096)
    )]
    pub precision_bits: u32,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Invariant polynomial of a group as JSON, with property checks.
    Invariant {
        #[command(flatten)]
        group: GroupArgs,
        /// Write the JSON here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Also list Reynolds-averaged invariants up to this degree.
        #[arg(long, value_name = "DEGREE")]
        noether: Option<u32>,
    },
    /// Inertia of the coefficient matrix and the induced map, or a ratio sweep.
    Signature {
        #[command(flatten)]
        group: GroupArgs,
        /// Group family for --sweep: gamma-p-1, gamma-p-pm1, gamma-pq:Q, scalar:N, dihedral.
        #[arg(long)]
        family: Option<Family>,
        /// Inclusive range of p, as A..B.
        #[arg(long, value_parser = parse_range)]
        sweep: Option<RangeInclusive<u32>>,
        #[arg(long)]
        json: bool,
        /// Skip the decomposition into components.
        #[arg(long)]
        no_map: bool,
    },
    /// The polynomial f_{p,q}(x, y).
    Fpq {
        p: u32,
        q: u32,
        #[arg(long)]
        json: bool,
    },
    /// Coefficient congruence of f_{p,q} modulo p.
    Primetest {
        p: u32,
        q: u32,
        #[arg(long)]
        json: bool,
    },
    /// The degree-2p map Q(2, 2p+1) -> Q(N(p), 2p+1) and its exact verification.
    Quadmap {
        p: u32,
        #[arg(long)]
        json: bool,
        /// Print only the signatures and the verdict.
        #[arg(long)]
        summary: bool,
    },
    /// CSV tables over ranges of p.
    Sweep {
        #[command(subcommand)]
        kind: SweepCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum SweepCmd {
    /// f_{p,q} coefficients, coefficient sum and congruence verdict.
    Fpq {
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<u32>,
        /// A fixed q, or "pm1" for q = p - 1.
        #[arg(long, default_value = "2")]
        q: QChoice,
    },
    /// S_p = f_{p,2}(1, 1), its p-th root and the distance to the golden ratio.
    Golden {
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<u32>,
    },
    /// f_{p,2}(x, y)^(1/p) against (x + sqrt(x^2 + 4y))/2 at given points.
    Limit {
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<u32>,
        /// A point X,Y with rational coordinates such as 1/3,1/4; repeatable.
        #[arg(long = "point", value_parser = parse_point, required = true)]
        points: Vec<(BigRational, BigRational)>,
    },
    /// Inertia and positive ratio across a group family.
    Ratio {
        #[arg(long)]
        family: Family,
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<u32>,
    },
    /// Component counts and verification of the quadric maps.
    Quadmap {
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<u32>,
    },
}

#[derive(Clone, Copy, Debug)]
pub enum QChoice {
    Fixed(u32),
    PMinusOne,
}

impl std::str::FromStr for QChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "pm1" {
            return Ok(QChoice::PMinusOne);
        }
        s.parse().map(QChoice::Fixed).map_err(|_| format!("expected an integer or pm1, got '{s}'"))
    }
}

impl QChoice {
    pub fn at(&self, p: u32) -> u32 {
        match self {
            QChoice::Fixed(q) => *q,
            QChoice::PMinusOne => p.saturating_sub(1),
        }
    }
}

/// `A..B` or `A..=B`, both inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got '{s}'"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in '{s}'"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end in '{s}'"))?;
    if a > b {
        return Err(format!("empty range '{s}'"));
    }
    Ok(a..=b)
}

fn parse_point(s: &str) -> Result<(BigRational, BigRational), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got '{s}'"))?;
    let x = x.trim().parse().map_err(|_| format!("bad rational '{x}'"))?;
    let y = y.trim().parse().map_err(|_| format!("bad rational '{y}'"))?;
    Ok((x, y))
}

#[derive(Args, Debug)]
#[group(skip)]
pub struct GroupArgs {
    #[command(flatten)]
    select: GroupSelect,
    #[command(flatten)]
    opts: GroupOptions,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct GroupSelect {
    /// Cyclic group generated by diag(zeta_p, zeta_p^q).
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    gamma_pq: Option<Vec<u32>>,
    /// Scalar cyclic group zeta_p I; dimension from --dim.
    #[arg(long, value_name = "P")]
    scalar: Option<u32>,
    /// Dihedral group of order 2p.
    #[arg(long, value_name = "P")]
    dihedral: Option<u32>,
    /// Group generated by diag(zeta_p, zeta_p^-1) and B with B^q = I; B from --b.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    metacyclic: Option<Vec<u32>>,
    /// Cyclic group of order 2m generated by [[0, 1], [zeta_m, 0]].
    #[arg(long, value_name = "M")]
    twisted_swap: Option<u32>,
    /// JSON file holding a list of generator matrices.
    #[arg(long, value_name = "FILE")]
    generators: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(skip)]
struct GroupOptions {
    /// Dimension for --scalar.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// B for --metacyclic: "swap", "i" (i times the identity) or a JSON matrix file.
    #[arg(long, default_value = "swap")]
    b: String,
    /// Closure bound for --generators.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

impl GroupArgs {
    pub fn build(&self) -> Result<Option<(String, UnitaryGroup)>, CliError> {
        let sel = &self.select;
        if let Some(v) = &sel.gamma_pq {
            return Ok(Some((format!("gamma-pq({},{})", v[0], v[1]), make_gamma_pq(v[0], v[1])?)));
        }
        if let Some(p) = sel.scalar {
            return Ok(Some((format!("scalar({p},{})", self.opts.dim), make_scalar_cyclic(p, self.opts.dim)?)));
        }
        if let Some(p) = sel.dihedral {
            return Ok(Some((format!("dihedral({p})"), make_dihedral(p)?)));
        }
        if let Some(v) = &sel.metacyclic {
            let b = self.b_matrix()?;
            return Ok(Some((format!("metacyclic({},{},{})", v[0], v[1], self.opts.b), make_metacyclic(v[0], v[1], &b)?)));
        }
        if let Some(m) = sel.twisted_swap {
            return Ok(Some((format!("twisted-swap({m})"), make_twisted_swap(m)?)));
        }
        if let Some(path) = &sel.generators {
            let text = std::fs::read_to_string(path).map_err(CliError::io)?;
            let gens: Vec<UnitaryMatrix> =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return Ok(Some((format!("generators({})", path.display()), close_group(&gens, self.opts.max_order)?)));
        }
        Ok(None)
    }

    fn b_matrix(&self) -> Result<UnitaryMatrix, CliError> {
        match self.opts.b.as_str() {
            "swap" => Ok(UnitaryMatrix::swap()),
            "i" => Ok(UnitaryMatrix::scalar(2, CycNum::root_of_unity(4, 1))),
            path => {
                let text = std::fs::read_to_string(path).map_err(CliError::io)?;
                Ok(serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?)
            }
        }
    }
}
