//! Settings merged from built-in defaults, a `key = value` file and flags.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use quatcomp::{QlnfConfig, TqlnaConfig};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Method {
    Qlnf,
    Tqlna,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Qlnf => "qlnf",
            Method::Tqlna => "tqlna",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "qlnf" => Ok(Method::Qlnf),
            "tqlna" => Ok(Method::Tqlna),
            other => Err(format!("unknown method '{other}' (expected qlnf or tqlna)")),
        }
    }
}

/// Solver flags shared by `complete` and `benchmark`.
#[derive(Args, Clone, Debug, Default)]
pub struct SolverFlags {
    /// Log-norm weight lambda (applies to every selected method)
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Log-norm offset epsilon
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// QLNF factor width d
    #[arg(long)]
    pub rank_d: Option<usize>,
    /// TQLNA truncation r
    #[arg(long)]
    pub trunc_r: Option<usize>,
    /// TQLNA penalty growth factor
    #[arg(long)]
    pub rho: Option<f64>,
    /// TQLNA initial penalty
    #[arg(long)]
    pub beta0: Option<f64>,
    /// TQLNA penalty cap
    #[arg(long)]
    pub beta_max: Option<f64>,
    /// Stopping tolerance (QLNF tol, TQLNA outer tolerance)
    #[arg(long)]
    pub tol: Option<f64>,
    /// Iteration cap (QLNF iterations, TQLNA outer iterations)
    #[arg(long)]
    pub max_iter: Option<usize>,
}

const KNOWN_KEYS: &[&str] = &[
    "method", "sr", "seed", "lambda", "epsilon", "rank-d", "trunc-r", "rho", "beta0", "beta-max", "tol", "max-iter", "workers",
];

/// Parsed `key = value` file. Keys use the long flag names.
#[derive(Clone, Debug, Default)]
pub struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|msg| CliError::Usage(format!("{}: {msg}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            let key = key.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key '{key}'", n + 1));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| CliError::Usage(format!("config key '{key}': {e}"))))
            .transpose()
    }

    /// Comma-separated list value.
    pub fn get_list<T: FromStr>(&self, key: &str) -> CliResult<Option<Vec<T>>>
    where
        T::Err: fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| {
                v.split(',')
                    .map(|s| s.trim().parse::<T>().map_err(|e| CliError::Usage(format!("config key '{key}': {e}"))))
                    .collect()
            })
            .transpose()
    }
}

/// `flag`, else the config file value, else `default`.
pub fn resolve<T: FromStr>(flag: Option<T>, file: &FileConfig, key: &str, default: T) -> CliResult<T>
where
    T::Err: fmt::Display,
{
    match flag {
        Some(v) => Ok(v),
        None => Ok(file.get(key)?.unwrap_or(default)),
    }
}

/// Fully resolved solver configurations.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverSettings {
    pub qlnf: QlnfConfig,
    pub tqlna: TqlnaConfig,
}

impl SolverSettings {
    pub fn merge(flags: &SolverFlags, file: &FileConfig) -> CliResult<Self> {
        let mut qlnf = QlnfConfig::default();
        let mut tqlna = TqlnaConfig::default();

        let lambda: Option<f64> = flags.lambda.or(file.get("lambda")?);
        let epsilon: Option<f64> = flags.epsilon.or(file.get("epsilon")?);
        let tol: Option<f64> = flags.tol.or(file.get("tol")?);
        let max_iter: Option<usize> = flags.max_iter.or(file.get("max-iter")?);

        if let Some(v) = lambda {
            qlnf.lambda = v;
            tqlna.lambda = v;
        }
        if let Some(v) = epsilon {
            qlnf.epsilon = v;
            tqlna.epsilon = v;
        }
        if let Some(v) = tol {
            qlnf.tol = v;
            tqlna.outer_tol = v;
        }
        if let Some(v) = max_iter {
            qlnf.max_iter = v;
            tqlna.outer_max = v;
        }
        qlnf.d = resolve(flags.rank_d, file, "rank-d", qlnf.d)?;
        tqlna.r = resolve(flags.trunc_r, file, "trunc-r", tqlna.r)?;
        tqlna.rho = resolve(flags.rho, file, "rho", tqlna.rho)?;
        tqlna.beta0 = resolve(flags.beta0, file, "beta0", tqlna.beta0)?;
        tqlna.beta_max = resolve(flags.beta_max, file, "beta-max", tqlna.beta_max)?;
        Ok(Self { qlnf, tqlna })
    }

    /// Checks the configuration of `method` against a problem size.
    pub fn validate(&self, method: Method, rows: usize, cols: usize) -> CliResult<()> {
        let res = match method {
            Method::Qlnf => self.qlnf.validate(rows, cols),
            Method::Tqlna => self.tqlna.validate(rows, cols),
        };
        res.map_err(|e| CliError::Usage(format!("{method}: {e}")))
    }

    /// The `r` (TQLNA) or `d` (QLNF) value reported in the CSV.
    pub fn rank_param(&self, method: Method) -> usize {
        match method {
            Method::Qlnf => self.qlnf.d,
            Method::Tqlna => self.tqlna.r,
        }
    }

    pub fn lambda(&self, method: Method) -> f64 {
        match method {
            Method::Qlnf => self.qlnf.lambda,
            Method::Tqlna => self.tqlna.lambda,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file() {
        let file = FileConfig::parse("# comment\nlambda = 2.5\n\nrank_d=6\nmethod = qlnf\n").unwrap();
        assert_eq!(file.get::<f64>("lambda").unwrap(), Some(2.5));
        assert_eq!(file.get::<usize>("rank-d").unwrap(), Some(6));
        assert_eq!(file.get::<Method>("method").unwrap(), Some(Method::Qlnf));
        assert_eq!(file.get::<f64>("rho").unwrap(), None);
        assert!(FileConfig::parse("bogus = 1").is_err());
        assert!(FileConfig::parse("lambda").is_err());
        let bad = FileConfig::parse("lambda = abc").unwrap();
        assert!(matches!(bad.get::<f64>("lambda"), Err(CliError::Usage(_))));
    }

    #[test]
    fn flags_override_file_override_defaults() {
        let file = FileConfig::parse("lambda = 3\nrank-d = 6\ntrunc-r = 4\n").unwrap();
        let flags = SolverFlags {
            lambda: Some(7.0),
            trunc_r: Some(2),
            ..Default::default()
        };
        let s = SolverSettings::merge(&flags, &file).unwrap();
        assert_eq!(s.qlnf.lambda, 7.0);
        assert_eq!(s.tqlna.lambda, 7.0);
        assert_eq!(s.qlnf.d, 6);
        assert_eq!(s.tqlna.r, 2);
        assert_eq!(s.tqlna.rho, TqlnaConfig::default().rho);

        let s = SolverSettings::merge(&SolverFlags::default(), &FileConfig::default()).unwrap();
        assert_eq!(s.qlnf, QlnfConfig::default());
        assert_eq!(s.tqlna, TqlnaConfig::default());
    }

    #[test]
    fn validation_is_per_method() {
        let flags = SolverFlags {
            rank_d: Some(50),
            ..Default::default()
        };
        let s = SolverSettings::merge(&flags, &FileConfig::default()).unwrap();
        assert!(s.validate(Method::Qlnf, 20, 20).is_err());
        assert!(s.validate(Method::Tqlna, 20, 20).is_ok());
    }
}
