use std::path::PathBuf;

use hermdiag::jensen::{FactoredSpec, GammaSeq, LpPlusSpec};
use hermdiag::rat::{parse_rat, serde_rat_vec};
use hermdiag::Rat;
use serde::Deserialize;

use crate::{CliError, CliResult};

/// Where the sequence comes from; exactly one per invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqSelector {
    Named(String),
    Factored(String),
    File(PathBuf),
}

#[derive(Deserialize)]
struct SeqFile {
    #[serde(with = "serde_rat_vec")]
    gamma: Vec<Rat>,
    #[serde(default, with = "opt_rat")]
    tail: Option<Rat>,
}

mod opt_rat {
    use hermdiag::rat::parse_rat;
    use hermdiag::Rat;
    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn one() -> Rat {
    Rat::from_integer(1.into())
}

impl SeqSelector {
    pub fn from_parts(seq: Option<String>, factored: Option<String>, file: Option<PathBuf>) -> CliResult<Option<Self>> {
        match (seq, factored, file) {
            (None, None, None) => Ok(None),
            (Some(s), None, None) => Ok(Some(SeqSelector::Named(s))),
            (None, Some(f), None) => Ok(Some(SeqSelector::Factored(f))),
            (None, None, Some(p)) => Ok(Some(SeqSelector::File(p))),
            _ => Err(CliError::Config("give exactly one of --seq, --factored, --seq-file".into())),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SeqSelector::Named(s) => s.clone(),
            SeqSelector::Factored(s) => format!("factored({s})"),
            SeqSelector::File(p) => p.display().to_string(),
        }
    }

    pub fn resolve(&self) -> CliResult<GammaSeq> {
        match self {
            SeqSelector::Named(s) => parse_named(s),
            SeqSelector::Factored(s) => Ok(GammaSeq::from_spec(LpPlusSpec::Factored(parse_factored(s)?))),
            SeqSelector::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                let f: SeqFile = serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("bad sequence file {}: {e}", path.display())))?;
                if f.gamma.is_empty() {
                    return Err(CliError::Config("sequence file has an empty gamma list".into()));
                }
                Ok(GammaSeq::explicit(f.gamma, f.tail.unwrap_or_default()))
            }
        }
    }
}

fn call_arg<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
}

/// `const1`, `linear(a)`, `example311`, `besselJ0`, `exp-half-cosh`, `geom-factorial(r)`.
pub fn parse_named(s: &str) -> CliResult<GammaSeq> {
    let s = s.trim();
    if let Some(a) = call_arg(s, "linear") {
        return Ok(GammaSeq::linear(parse_rat(a)?));
    }
    if let Some(r) = call_arg(s, "geom-factorial") {
        return Ok(GammaSeq::geom_factorial(parse_rat(r)?));
    }
    match s.to_ascii_lowercase().as_str() {
        "const1" => Ok(GammaSeq::constant(one())),
        "example311" => Ok(GammaSeq::example311()),
        "besselj0" => Ok(GammaSeq::bessel_j0()),
        "exp-half-cosh" => Ok(GammaSeq::exp_half_cosh()),
        _ => Err(CliError::Config(format!("unknown sequence {s:?}"))),
    }
}

/// `key=value` pairs separated by `;`: `sigma` (required), `c` (default 1),
/// `m` (default 0), `zeros` (comma-separated, default none).
pub fn parse_factored(s: &str) -> CliResult<FactoredSpec> {
    let (mut c, mut m, mut sigma, mut zeros) = (one(), 0usize, None, Vec::new());
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("expected key=value, got {part:?}")))?;
        match k.trim() {
            "c" => c = parse_rat(v)?,
            "m" => m = v.trim().parse().map_err(|_| CliError::Config(format!("bad m {v:?}")))?,
            "sigma" => sigma = Some(parse_rat(v)?),
            "zeros" => {
                zeros = v
                    .split(',')
                    .map(str::trim)
                    .filter(|z| !z.is_empty())
                    .map(parse_rat)
                    .collect::<Result<_, _>>()?
            }
            other => return Err(CliError::Config(format!("unknown factored key {other:?}"))),
        }
    }
    let sigma = sigma.ok_or_else(|| CliError::Config("factored spec needs sigma".into()))?;
    Ok(FactoredSpec::new(c, m, sigma, zeros)?)
}
