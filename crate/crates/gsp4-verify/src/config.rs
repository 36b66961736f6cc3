use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

/// Suites in canonical report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Gl2,
    Hecke,
    Parahoric,
    Bessel,
    TameNorm,
    WildNorm,
    Branching,
    LocalData,
    Frobrecip,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Gl2,
        Suite::Hecke,
        Suite::Parahoric,
        Suite::Bessel,
        Suite::TameNorm,
        Suite::WildNorm,
        Suite::Branching,
        Suite::LocalData,
        Suite::Frobrecip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gl2 => "gl2",
            Suite::Hecke => "hecke",
            Suite::Parahoric => "parahoric",
            Suite::Bessel => "bessel",
            Suite::TameNorm => "tame-norm",
            Suite::WildNorm => "wild-norm",
            Suite::Branching => "branching",
            Suite::LocalData => "local-data",
            Suite::Frobrecip => "frobrecip",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Suite, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| ConfigError::Invalid(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Tsv,
    #[default]
    Human,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Format, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "human" => Ok(Format::Human),
            _ => Err(ConfigError::Invalid(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("config file {path}: line {line}: {msg}")]
    File { path: String, line: usize, msg: String },
    #[error("cannot read config file {0}: {1}")]
    Io(String, std::io::Error),
}

/// Upper bounds of the parameter sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightRanges {
    pub a_max: i64,
    pub b_max: i64,
    pub k1_max: i32,
    pub k2_max: i32,
    pub t_max: u32,
    pub m_max: u32,
    pub n_max: u32,
}

impl Default for WeightRanges {
    fn default() -> Self {
        WeightRanges { a_max: 3, b_max: 4, k1_max: 2, k2_max: 2, t_max: 3, m_max: 2, n_max: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub primes: Vec<u64>,
    pub ranges: WeightRanges,
    pub series_order: usize,
    pub parallelism: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub timing: bool,
}

pub const MAX_PRIME: u64 = 7;
pub const MIN_ORDER: usize = 6;
pub const MAX_ORDER: usize = 40;

pub fn default_parallelism() -> usize {
    std::env::var("GSP4_JOBS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Suite::ALL.to_vec(),
            primes: vec![2, 3, 5],
            ranges: WeightRanges::default(),
            series_order: 12,
            parallelism: default_parallelism(),
            format: Format::Human,
            out: None,
            timing: true,
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn parse_list<T: FromStr>(v: &str, key: &str) -> Result<Vec<T>, ConfigError> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| ConfigError::Invalid(format!("{key}: cannot parse `{s}`"))))
        .collect()
}

/// Parses a suite list; `all` expands to every suite, duplicates collapse.
pub fn parse_suites(items: &[String]) -> Result<Vec<Suite>, ConfigError> {
    let mut out = Vec::new();
    for s in items.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        if s == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(s.parse()?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_one<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.trim().parse().map_err(|_| ConfigError::Invalid(format!("{key}: cannot parse `{v}`")))
}

impl SuiteConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let r = &mut self.ranges;
        match key {
            "suite" | "suites" => self.suites = parse_suites(&[value.to_string()])?,
            "ell" | "primes" => self.primes = parse_list(value, key)?,
            "a" => r.a_max = parse_one(key, value)?,
            "b" => r.b_max = parse_one(key, value)?,
            "k1" => r.k1_max = parse_one(key, value)?,
            "k2" => r.k2_max = parse_one(key, value)?,
            "t" => r.t_max = parse_one(key, value)?,
            "m" => r.m_max = parse_one(key, value)?,
            "n" => r.n_max = parse_one(key, value)?,
            "order" => self.series_order = parse_one(key, value)?,
            "jobs" => self.parallelism = parse_one(key, value)?,
            "format" => self.format = value.trim().parse()?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "timing" => self.timing = parse_one(key, value)?,
            _ => return Err(ConfigError::Invalid(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file; blank lines and `#` comments are skipped.
    pub fn apply_file_text(&mut self, path: &str, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::File {
                path: path.to_string(),
                line: i + 1,
                msg: "expected `key = value`".into(),
            })?;
            self.set(k.trim(), v).map_err(|e| ConfigError::File {
                path: path.to_string(),
                line: i + 1,
                msg: e.to_string(),
            })?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p) || p > MAX_PRIME) {
            return bad(format!("ell = {p} is not a prime <= {MAX_PRIME}"));
        }
        let r = &self.ranges;
        if r.a_max < 0 || r.b_max < 0 || gsp4_local::branching::check_size(r.a_max, 0).is_err()
            || gsp4_local::branching::check_size(0, r.b_max).is_err()
        {
            return bad(format!("(a, b) = ({}, {}) exceeds 6^a 4^b <= 1000", r.a_max, r.b_max));
        }
        if !(0..=2).contains(&r.k1_max) || !(0..=2).contains(&r.k2_max) {
            return bad(format!("k1, k2 must lie in 0..=2, got ({}, {})", r.k1_max, r.k2_max));
        }
        if !(1..=3).contains(&r.t_max) {
            return bad(format!("t must lie in 1..=3, got {}", r.t_max));
        }
        if r.m_max > 2 || !(1..=2).contains(&r.n_max) {
            return bad(format!("need m <= 2 and 1 <= n <= 2, got ({}, {})", r.m_max, r.n_max));
        }
        if !(MIN_ORDER..=MAX_ORDER).contains(&self.series_order) {
            return bad(format!("order must lie in {MIN_ORDER}..={MAX_ORDER}, got {}", self.series_order));
        }
        if self.parallelism == 0 {
            return bad("jobs must be positive".into());
        }
        Ok(())
    }
}
