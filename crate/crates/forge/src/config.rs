//! Run configuration.
//!
//! Sources, strongest first: command-line flags, a `key = value` config
//! file, the `OMEGAFORGE_CHECKPOINT_DIR` environment variable, defaults.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use omegaforge_core::explorer::ExploreBudget;
use omegaforge_core::lawful::Threshold;

pub const CHECKPOINT_DIR_ENV: &str = "OMEGAFORGE_CHECKPOINT_DIR";

/// Deepest exhaustive table the complexity commands will build.
pub const DEFAULT_EXACT_CAP: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{}` (expected json or csv)", s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub max_len: usize,
    pub max_steps: u64,
    pub checkpoint_dir: PathBuf,
    pub format: Format,
    pub classify_threshold: Threshold,
    pub precision_bits: u32,
    pub exact_cap: usize,
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_len: 20,
            max_steps: 1_000_000,
            checkpoint_dir: PathBuf::from("."),
            format: Format::Json,
            classify_threshold: Threshold::HALF,
            precision_bits: 32,
            exact_cap: DEFAULT_EXACT_CAP,
            threads: 1,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{path}: {msg}")]
    File { path: String, msg: String },
    #[error("{key}: {msg}")]
    Value { key: String, msg: String },
}

/// Optional overrides from one source.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub max_len: Option<usize>,
    pub max_steps: Option<u64>,
    pub checkpoint_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub classify_threshold: Option<Threshold>,
    pub precision_bits: Option<u32>,
    pub exact_cap: Option<usize>,
    pub threads: Option<usize>,
}

pub fn parse_threshold(s: &str) -> Result<Threshold, String> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let num = n.trim().parse().map_err(|_| format!("bad threshold `{}`", s))?;
    let den = d.trim().parse().map_err(|_| format!("bad threshold `{}`", s))?;
    Threshold::new(num, den).ok_or_else(|| format!("threshold `{}` has a zero denominator", s))
}

fn value<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError::Value { key: key.into(), msg: format!("cannot parse `{}`", v) })
}

impl Overrides {
    /// Parse a `key = value` file. Blank lines and `#` comments are skipped.
    pub fn from_file_text(path: &str, text: &str) -> Result<Self, ConfigError> {
        let mut o = Overrides::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::File {
                path: path.into(),
                msg: format!("line {}: expected key = value", i + 1),
            })?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "max_len" => o.max_len = Some(value(k, v)?),
                "max_steps" => o.max_steps = Some(value(k, v)?),
                "checkpoint_dir" => o.checkpoint_dir = Some(PathBuf::from(v)),
                "format" => o.format = Some(v.parse().map_err(|msg| ConfigError::Value { key: k.into(), msg })?),
                "classify_threshold" => {
                    o.classify_threshold =
                        Some(parse_threshold(v).map_err(|msg| ConfigError::Value { key: k.into(), msg })?)
                }
                "precision_bits" => o.precision_bits = Some(value(k, v)?),
                "exact_cap" => o.exact_cap = Some(value(k, v)?),
                "threads" => o.threads = Some(value(k, v)?),
                _ => {
                    return Err(ConfigError::File {
                        path: path.into(),
                        msg: format!("line {}: unknown key `{}`", i + 1, k),
                    })
                }
            }
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|e| ConfigError::File { path: shown.clone(), msg: e.to_string() })?;
        Self::from_file_text(&shown, &text)
    }

    fn apply(&self, c: &mut Config) {
        if let Some(v) = self.max_len {
            c.max_len = v;
        }
        if let Some(v) = self.max_steps {
            c.max_steps = v;
        }
        if let Some(v) = &self.checkpoint_dir {
            c.checkpoint_dir = v.clone();
        }
        if let Some(v) = self.format {
            c.format = v;
        }
        if let Some(v) = self.classify_threshold {
            c.classify_threshold = v;
        }
        if let Some(v) = self.precision_bits {
            c.precision_bits = v;
        }
        if let Some(v) = self.exact_cap {
            c.exact_cap = v;
        }
        if let Some(v) = self.threads {
            c.threads = v;
        }
    }
}

impl Config {
    /// Layer the sources and validate the result.
    pub fn resolve(env_dir: Option<String>, file: Option<&Overrides>, flags: &Overrides) -> Result<Config, ConfigError> {
        let mut c = Config::default();
        if let Some(d) = env_dir.filter(|d| !d.is_empty()) {
            c.checkpoint_dir = PathBuf::from(d);
        }
        if let Some(f) = file {
            f.apply(&mut c);
        }
        flags.apply(&mut c);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, msg: &str| Err(ConfigError::Value { key: key.into(), msg: msg.into() });
        if self.max_steps == 0 {
            return bad("max_steps", "must be at least 1");
        }
        if self.max_len > 48 {
            return bad("max_len", "deeper than 48 bits is not supported");
        }
        if self.precision_bits == 0 {
            return bad("precision_bits", "must be at least 1");
        }
        if self.threads == 0 {
            return bad("threads", "must be at least 1");
        }
        if self.exact_cap > 32 {
            return bad("exact_cap", "exhaustive tables deeper than 32 bits are not supported");
        }
        Ok(())
    }

    pub fn budget(&self) -> ExploreBudget {
        ExploreBudget::new(self.max_len, self.max_steps).expect("validated")
    }

    /// Default checkpoint path for this budget.
    pub fn checkpoint_path(&self) -> PathBuf {
        self.checkpoint_dir.join(format!("explore-L{}-S{}.ckpt", self.max_len, self.max_steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file = Overrides::from_file_text("f", "# c\nmax_len = 12\ncheckpoint_dir = /from/file\nthreads=3\n").unwrap();
        let flags = Overrides { max_len: Some(9), ..Default::default() };
        let c = Config::resolve(Some("/from/env".into()), Some(&file), &flags).unwrap();
        assert_eq!(c.max_len, 9);
        assert_eq!(c.threads, 3);
        assert_eq!(c.checkpoint_dir, PathBuf::from("/from/file"));
        let c = Config::resolve(Some("/from/env".into()), None, &Overrides::default()).unwrap();
        assert_eq!(c.checkpoint_dir, PathBuf::from("/from/env"));
        assert_eq!(c.max_steps, 1_000_000);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Overrides::from_file_text("f", "bogus = 1").is_err());
        assert!(Overrides::from_file_text("f", "max_len").is_err());
        let flags = Overrides { max_steps: Some(0), ..Default::default() };
        assert!(Config::resolve(None, None, &flags).is_err());
        assert_eq!(parse_threshold("1/2").unwrap(), Threshold::HALF);
        assert!(parse_threshold("1/0").is_err());
    }
}
