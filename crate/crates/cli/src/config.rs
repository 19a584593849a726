//! Session configuration: ring spec, endomorphism selector, caps and
//! output options, resolved from an optional key-value config file with
//! command-line flags taking precedence.

use hurwitz_core::{Endomorphism, EndoSelector, Error, Family, FiniteRing, Result, RingSpec};
use std::collections::HashMap;
use std::path::{Path, PathBuf};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub struct Session {
    pub ring: FiniteRing,
    pub alpha: Endomorphism,
    pub alpha_name: String,
    pub degree_bound: Option<u64>,
    pub gen_size: usize,
    pub format: Format,
    pub seed: u64,
    pub threads: usize,
    pub out: Option<PathBuf>,
    pub timing: bool,
}

/// Raw option values before resolution; every field may come from a flag
/// or from the config file.
#[derive(Default)]
pub struct RawOptions {
    pub ring: Option<String>,
    pub alpha: Option<String>,
    pub cap: Option<u64>,
    pub degree_bound: Option<u64>,
    pub gen_size: Option<usize>,
    pub format: Option<String>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub timing: Option<bool>,
}

const KNOWN_KEYS: &[&str] = &[
    "ring",
    "alpha",
    "cap",
    "degree_bound",
    "gen_size",
    "format",
    "seed",
    "threads",
    "out",
    "timing",
];

/// Parse `key = value` lines; `#` starts a comment, unknown keys are
/// rejected.
pub fn read_config_file(path: &Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read config file {}: {e}", path.display())))?;
    let mut out = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "config line {} is not `key = value`: `{line}`",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::Parse(format!("unknown config key `{key}`")));
        }
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Parse(format!("bad value for {key}: `{v}`")))
}

/// Merge file values under flag values and build the session.
pub fn resolve(mut raw: RawOptions, file: Option<HashMap<String, String>>) -> Result<Session> {
    if let Some(file) = file {
        let get = |k: &str| file.get(k).cloned();
        raw.ring = raw.ring.or_else(|| get("ring"));
        raw.alpha = raw.alpha.or_else(|| get("alpha"));
        if raw.cap.is_none() {
            if let Some(v) = get("cap") {
                raw.cap = Some(parse_num("cap", &v)?);
            }
        }
        if raw.degree_bound.is_none() {
            if let Some(v) = get("degree_bound") {
                raw.degree_bound = Some(parse_num("degree_bound", &v)?);
            }
        }
        if raw.gen_size.is_none() {
            if let Some(v) = get("gen_size") {
                raw.gen_size = Some(parse_num("gen_size", &v)?);
            }
        }
        raw.format = raw.format.or_else(|| get("format"));
        if raw.seed.is_none() {
            if let Some(v) = get("seed") {
                raw.seed = Some(parse_num("seed", &v)?);
            }
        }
        if raw.threads.is_none() {
            if let Some(v) = get("threads") {
                raw.threads = Some(parse_num("threads", &v)?);
            }
        }
        if raw.out.is_none() {
            raw.out = get("out").map(PathBuf::from);
        }
        if raw.timing.is_none() {
            if let Some(v) = get("timing") {
                raw.timing = Some(parse_num("timing", &v)?);
            }
        }
    }

    let ring_str = raw
        .ring
        .ok_or_else(|| Error::Parse("no ring configured: pass --ring or set it in a config file".into()))?;
    let family = parse_ring_spec(&ring_str)?;
    let alpha_str = raw.alpha.unwrap_or_else(|| "identity".to_string());
    let selector = parse_alpha(&alpha_str)?;
    let cap = raw.cap.unwrap_or(hurwitz_core::DEFAULT_ELEMENT_CAP);
    if cap == 0 {
        return Err(Error::Parse("cap must be positive".into()));
    }
    let gen_size = raw.gen_size.unwrap_or(2);
    if gen_size == 0 {
        return Err(Error::Parse("gen_size must be positive".into()));
    }
    let format = match raw.format.as_deref().unwrap_or("text") {
        "text" => Format::Text,
        "json" => Format::Json,
        other => return Err(Error::Parse(format!("unknown format `{other}`"))),
    };
    let threads = raw.threads.unwrap_or(1);
    if threads == 0 {
        return Err(Error::Parse("threads must be positive".into()));
    }
    let spec = RingSpec::new(family, selector).with_cap(cap);
    let (ring, alpha) = hurwitz_core::make_ring(&spec)?;
    Ok(Session {
        ring,
        alpha,
        alpha_name: alpha_str,
        degree_bound: raw.degree_bound,
        gen_size,
        format,
        seed: raw.seed.unwrap_or(0),
        threads,
        out: raw.out,
        timing: raw.timing.unwrap_or(false),
    })
}

pub fn parse_ring_spec(s: &str) -> Result<Family> {
    let (name, params) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("ring spec `{s}` must look like family:params")))?;
    let nums: Vec<u64> = params
        .split(',')
        .map(|p| parse_num("ring parameter", p.trim()))
        .collect::<Result<_>>()?;
    match (name, nums.as_slice()) {
        ("zmod", [n]) => Ok(Family::ZMod { n: *n }),
        ("gf", [p, d]) => Ok(Family::GaloisField {
            p: *p,
            d: *d as u32,
        }),
        ("matrix", [p, s]) => Ok(Family::MatrixRing {
            p: *p,
            s: *s as u32,
        }),
        ("monomial", [g, p]) => Ok(Family::MonomialAlgebra {
            g: *g as u32,
            p: *p,
        }),
        ("zmod" | "gf" | "matrix" | "monomial", _) => Err(Error::Parse(format!(
            "wrong parameter count in ring spec `{s}`"
        ))),
        _ => Err(Error::Parse(format!("unknown ring family `{name}`"))),
    }
}

pub fn parse_alpha(s: &str) -> Result<EndoSelector> {
    match s {
        "identity" => Ok(EndoSelector::Identity),
        "frobenius" => Ok(EndoSelector::Frobenius),
        "shift" => Ok(EndoSelector::Shift),
        _ => {
            if let Some(list) = s.strip_prefix("table:") {
                let table: Vec<u32> = list
                    .split(',')
                    .map(|x| parse_num("table entry", x.trim()))
                    .collect::<Result<_>>()?;
                Ok(EndoSelector::Table(table))
            } else {
                Err(Error::Parse(format!(
                    "unknown endomorphism selector `{s}` (identity | frobenius | shift | table:i0,i1,...)"
                )))
            }
        }
    }
}
