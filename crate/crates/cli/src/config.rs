//! Flat key-value experiment configuration. A config file holds `key = value`
//! lines; command-line flags override file values. The effective config
//! round-trips losslessly through its text form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use latslice_core::exact::parse_rat;
use latslice_core::{Error, QMatrix, QVector, Rational};

pub type ConfigResult<T> = Result<T, String>;

/// The resolved experiment configuration. Every field corresponds to one
/// flat key; `None`/default fields are omitted from the serialized form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    pub command: String,
    pub check_id: Option<String>,
    pub target: Option<String>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub k: Option<i64>,
    pub h: Option<i64>,
    pub m: Option<i64>,
    pub k_range: Option<(i64, i64)>,
    pub h_range: Option<(i64, i64)>,
    pub m_range: Option<(i64, i64)>,
    pub seed_range: Option<(i64, i64)>,
    pub r: Option<Vec<i64>>,
    pub normal: Option<Vec<i64>>,
    pub level: Option<i64>,
    pub v: Option<Vec<i64>>,
    pub t: Option<Vec<String>>,
    pub subspace_dim: Option<usize>,
    pub normal_bound: Option<i64>,
    pub dim_cap: Option<usize>,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub out: Option<String>,
    pub format: Option<String>,
    pub jobs: Option<usize>,
    pub body_vertices: Option<String>,
    pub body_halfspaces: Option<String>,
    pub body_ball: Option<String>,
    pub lattice_basis: Option<String>,
}

impl Config {
    pub fn normal_bound_or_default(&self) -> i64 {
        self.normal_bound.unwrap_or(3)
    }

    pub fn dim_cap_or_default(&self) -> usize {
        self.dim_cap.unwrap_or(6)
    }

    pub fn jobs_or_default(&self) -> usize {
        self.jobs.unwrap_or(1)
    }

    pub fn format_or_default(&self) -> &str {
        self.format.as_deref().unwrap_or("json")
    }

    /// Serialize as sorted `key = value` lines.
    pub fn to_kv(&self) -> String {
        let mut map: BTreeMap<&str, String> = BTreeMap::new();
        map.insert("command", self.command.clone());
        let mut put = |k: &'static str, v: Option<String>| {
            if let Some(v) = v {
                map.insert(k, v);
            }
        };
        put("check_id", self.check_id.clone());
        put("target", self.target.clone());
        put("family", self.family.clone());
        put("n", self.n.map(|v| v.to_string()));
        put("k", self.k.map(|v| v.to_string()));
        put("h", self.h.map(|v| v.to_string()));
        put("m", self.m.map(|v| v.to_string()));
        put("k_range", self.k_range.map(|(a, b)| format!("{a}..{b}")));
        put("h_range", self.h_range.map(|(a, b)| format!("{a}..{b}")));
        put("m_range", self.m_range.map(|(a, b)| format!("{a}..{b}")));
        put(
            "seed_range",
            self.seed_range.map(|(a, b)| format!("{a}..{b}")),
        );
        put("r", self.r.as_ref().map(|v| join_ints(v)));
        put("normal", self.normal.as_ref().map(|v| join_ints(v)));
        put("level", self.level.map(|v| v.to_string()));
        put("v", self.v.as_ref().map(|v| join_ints(v)));
        put("t", self.t.as_ref().map(|v| v.join(",")));
        put("subspace_dim", self.subspace_dim.map(|v| v.to_string()));
        put("normal_bound", self.normal_bound.map(|v| v.to_string()));
        put("dim_cap", self.dim_cap.map(|v| v.to_string()));
        put("seed", self.seed.map(|v| v.to_string()));
        put("budget", self.budget.map(|v| v.to_string()));
        put("out", self.out.clone());
        put("format", self.format.clone());
        put("jobs", self.jobs.map(|v| v.to_string()));
        put("body_vertices", self.body_vertices.clone());
        put("body_halfspaces", self.body_halfspaces.clone());
        put("body_ball", self.body_ball.clone());
        put("lattice_basis", self.lattice_basis.clone());
        let mut out = String::new();
        for (k, v) in map {
            writeln!(out, "{k} = {v}").expect("string write");
        }
        out
    }

    /// Parse `key = value` lines; `#` starts a comment.
    pub fn from_kv(text: &str) -> ConfigResult<Config> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("line {}: expected `key = value`", lineno + 1));
            };
            cfg.set(key.trim(), value.trim())
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> ConfigResult<()> {
        let int = |v: &str| v.parse::<i64>().map_err(|_| format!("field {key}: not an integer: {v:?}"));
        let uint = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| format!("field {key}: not a non-negative integer: {v:?}"))
        };
        match key {
            "command" => self.command = value.to_string(),
            "check_id" => self.check_id = Some(value.to_string()),
            "target" => self.target = Some(value.to_string()),
            "family" => self.family = Some(value.to_string()),
            "n" => self.n = Some(uint(value)? as usize),
            "k" => self.k = Some(int(value)?),
            "h" => self.h = Some(int(value)?),
            "m" => self.m = Some(int(value)?),
            "k_range" => self.k_range = Some(parse_range(key, value)?),
            "h_range" => self.h_range = Some(parse_range(key, value)?),
            "m_range" => self.m_range = Some(parse_range(key, value)?),
            "seed_range" => self.seed_range = Some(parse_range(key, value)?),
            "r" => self.r = Some(parse_int_list(key, value)?),
            "normal" => self.normal = Some(parse_int_list(key, value)?),
            "level" => self.level = Some(int(value)?),
            "v" => self.v = Some(parse_int_list(key, value)?),
            "t" => self.t = Some(value.split(',').map(|s| s.trim().to_string()).collect()),
            "subspace_dim" => self.subspace_dim = Some(uint(value)? as usize),
            "normal_bound" => self.normal_bound = Some(int(value)?),
            "dim_cap" => self.dim_cap = Some(uint(value)? as usize),
            "seed" => self.seed = Some(uint(value)?),
            "budget" => self.budget = Some(uint(value)?),
            "out" => self.out = Some(value.to_string()),
            "format" => self.format = Some(value.to_string()),
            "jobs" => self.jobs = Some(uint(value)? as usize),
            "body_vertices" => self.body_vertices = Some(value.to_string()),
            "body_halfspaces" => self.body_halfspaces = Some(value.to_string()),
            "body_ball" => self.body_ball = Some(value.to_string()),
            "lattice_basis" => self.lattice_basis = Some(value.to_string()),
            other => return Err(format!("unknown config field {other:?}")),
        }
        Ok(())
    }
}

fn join_ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_range(key: &str, value: &str) -> ConfigResult<(i64, i64)> {
    let Some((a, b)) = value.split_once("..") else {
        return Err(format!("field {key}: expected `a..b`, got {value:?}"));
    };
    let lo = a.trim().parse::<i64>().map_err(|_| format!("field {key}: bad bound {a:?}"))?;
    let hi = b.trim().parse::<i64>().map_err(|_| format!("field {key}: bad bound {b:?}"))?;
    if lo > hi {
        return Err(format!("field {key}: empty range {value:?}"));
    }
    Ok((lo, hi))
}

pub fn parse_int_list(key: &str, value: &str) -> ConfigResult<Vec<i64>> {
    value
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| format!("field {key}: bad integer {p:?}"))
        })
        .collect()
}

/// Parse `"(a,b,...);(c,d,...)"` into rational vectors.
pub fn parse_vectors(text: &str) -> Result<Vec<QVector>, Error> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim().trim_start_matches('(').trim_end_matches(')');
        if part.is_empty() {
            continue;
        }
        let coords: Result<Vec<Rational>, Error> =
            part.split(',').map(|c| parse_rat(c.trim())).collect();
        out.push(QVector::new(coords?));
    }
    if out.is_empty() {
        return Err(Error::InvalidParam("empty vector list".into()));
    }
    Ok(out)
}

/// Parse `"(a1,a2|b);..."` into inequality rows `a . x <= b`.
pub fn parse_halfspaces(text: &str) -> Result<Vec<(QVector, Rational)>, Error> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim().trim_start_matches('(').trim_end_matches(')');
        if part.is_empty() {
            continue;
        }
        let Some((a, b)) = part.split_once('|') else {
            return Err(Error::InvalidParam(format!(
                "half-space row needs `coeffs|rhs`: {part:?}"
            )));
        };
        let coords: Result<Vec<Rational>, Error> =
            a.split(',').map(|c| parse_rat(c.trim())).collect();
        out.push((QVector::new(coords?), parse_rat(b.trim())?));
    }
    if out.is_empty() {
        return Err(Error::InvalidParam("empty half-space list".into()));
    }
    Ok(out)
}

/// Named lattices or a `(col);(col)` basis literal.
pub fn parse_lattice(text: &str, _dim_hint: Option<usize>) -> Result<latslice_core::Lattice, Error> {
    match text.trim() {
        "D4" => Ok(latslice_core::harness::d4_lattice()),
        name if name.starts_with('Z') => {
            let n: usize = name[1..]
                .parse()
                .map_err(|_| Error::InvalidParam(format!("bad lattice name {name:?}")))?;
            Ok(latslice_core::Lattice::standard(n))
        }
        literal => {
            let cols = parse_vectors(literal)?;
            latslice_core::Lattice::from_basis(QMatrix::from_columns(cols))
        }
    }
}
