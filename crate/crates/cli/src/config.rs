//! Flat `key=value` run configuration with section-prefixed keys.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::Command;

/// Every recognised key with its default and meaning.
const KEYS: &[(&str, &str, &str)] = &[
    ("grid.R", "40", "ball radius"),
    ("grid.M", "256", "number of sine modes"),
    ("sim.alpha", "0.5", "ion sound speed"),
    ("sim.dt", "0.01", "time step"),
    ("sim.T", "1", "final time"),
    ("sim.model", "full", "nonlinearity: full | simplified"),
    ("sim.dealias", "true", "2/3-rule truncation of products"),
    ("sim.stride", "1", "steps between stored snapshots"),
    ("sim.linear", "false", "drop the nonlinearity"),
    ("data.eps0", "0.01", "amplitude of the Gaussian data"),
    ("data.width", "1", "width of the Gaussian data"),
    ("resonance.k_alpha", "auto", "dyadic separation; auto caps the lemma value to the grid"),
    ("lemma.n_xi", "200", "output-frequency samples in the lemma check"),
    ("lemma.n_eta", "50", "input-frequency samples in the lemma check"),
    ("lemma.n_cos", "21", "angle samples in the lemma check"),
    ("quad.nodes", "64", "Gauss-Legendre nodes per sub-interval of bilinear symbols"),
    ("sweep.modes", "128,256,512", "resolutions of the boundedness sweep"),
    ("sweep.trials", "50", "random pairs per resolution"),
    ("sweep.band", "42", "modes carrying random data"),
    ("sweep.eps", "0.05", "Strichartz epsilon of the sweep norms"),
    ("sweep.seed", "2024", "sweep RNG seed"),
    ("strichartz.q", "2", "time exponent"),
    ("strichartz.r", "5", "space exponent"),
    ("strichartz.flavor", "wave", "wave | kg"),
    ("strichartz.k_min", "1", "first dyadic block"),
    ("strichartz.k_max", "5", "last dyadic block"),
    ("strichartz.window", "50", "time window of the scan"),
    ("strichartz.seed", "7", "scan profile RNG seed"),
    ("strichartz.amplitude", "1", "witness amplitude"),
    ("scatter.checkpoints", "5,10,20", "times at which profiles are pulled back"),
    ("scatter.eps", "0.05", "Strichartz epsilon of the resolution norm"),
];

fn command_defaults(command: Command) -> &'static [(&'static str, &'static str)] {
    match command {
        Command::NormalformCheck => &[("sim.model", "simplified"), ("grid.M", "512"), ("sim.T", "2"), ("sim.stride", "5")],
        Command::StrichartzScan => &[("grid.R", "100"), ("grid.M", "2560")],
        Command::Sharpness => &[
            ("grid.R", "128"),
            ("grid.M", "6519"),
            ("strichartz.r", "4"),
            ("strichartz.flavor", "kg"),
            ("strichartz.k_min", "2"),
            ("strichartz.k_max", "6"),
        ],
        Command::ScatterDiag => &[("grid.R", "100"), ("grid.M", "768"), ("sim.T", "20"), ("sim.stride", "5")],
        Command::Simulate | Command::Resonance | Command::Params => &[],
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type Result<T> = std::result::Result<T, ConfigError>;

/// Fully resolved configuration: defaults, then the file, then `--set` overrides.
#[derive(Clone, Debug)]
pub struct Config {
    values: BTreeMap<&'static str, String>,
}

fn known(key: &str) -> Result<&'static str> {
    KEYS.iter()
        .map(|k| k.0)
        .find(|&k| k == key)
        .ok_or_else(|| ConfigError(format!("unknown key '{key}'")))
}

fn split_pair(line: &str, origin: &str) -> Result<(String, String)> {
    let (k, v) = line
        .split_once('=')
        .ok_or_else(|| ConfigError(format!("{origin}: expected key=value, got '{line}'")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

impl Config {
    pub fn defaults(command: Command) -> Self {
        let mut values: BTreeMap<&'static str, String> = KEYS.iter().map(|k| (k.0, k.1.to_string())).collect();
        for (k, v) in command_defaults(command) {
            values.insert(k, v.to_string());
        }
        Self { values }
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = known(key)?;
        self.values.insert(key, value.to_string());
        Ok(())
    }

    /// Reads `key=value` lines; blank lines and `#` comments are skipped.
    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = split_pair(line, &format!("{}:{}", path.display(), i + 1))?;
            self.set(&k, &v)?;
        }
        Ok(())
    }

    pub fn merge_override(&mut self, pair: &str) -> Result<()> {
        let (k, v) = split_pair(pair, "--set")?;
        self.set(&k, &v)
    }

    fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or_else(|| panic!("key {key} has no default"))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        let raw = self.raw(key);
        raw.parse().map_err(|e| ConfigError(format!("{key} = '{raw}': {e}")))
    }

    /// Parses `key` and checks it against `ok`, naming the key on failure.
    pub fn checked<T: FromStr + Copy>(&self, key: &str, ok: impl Fn(T) -> bool, need: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        let v = self.get(key)?;
        if ok(v) {
            Ok(v)
        } else {
            Err(ConfigError(format!("{key} = '{}': {need}", self.raw(key))))
        }
    }

    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>>
    where
        T::Err: fmt::Display,
    {
        let raw = self.raw(key);
        raw.split(',')
            .map(|s| s.trim().parse().map_err(|e| ConfigError(format!("{key} = '{raw}': {e}"))))
            .collect()
    }

    /// `None` for `auto`.
    pub fn optional<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        if self.raw(key) == "auto" {
            Ok(None)
        } else {
            self.get(key).map(Some)
        }
    }

    pub fn entries(&self) -> Vec<(String, String)> {
        self.values.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }
}

/// Key reference for `--help`.
pub fn key_help() -> String {
    let mut s = String::from("Configuration keys (key = default: meaning):\n");
    for (k, v, d) in KEYS {
        s.push_str(&format!("  {k} = {v}: {d}\n"));
    }
    s
}
