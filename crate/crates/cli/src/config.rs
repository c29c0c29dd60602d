//! Pipeline configuration files.
//!
//! ```json
//! {
//!   "type": "A1",
//!   "q": 3,
//!   "library": "lib",
//!   "table": "sl23.json",
//!   "outputs": {"classes": "out/classes.json", "btable": "out/btable.json", "matches": "out/matches.json"},
//!   "pins": [[0, 0]]
//! }
//! ```
//!
//! Relative paths are taken relative to the directory of the config file.

use std::path::{Path, PathBuf};

use liechar::matching::DEFAULT_CAP;
use liechar::matrix::IntMatrix;
use liechar::steinberg::prime_power_exponent;
use liechar::{Error, Result, RootDatum, TwistSpec};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub classes: Option<PathBuf>,
    pub btable: Option<PathBuf>,
    pub matches: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    #[serde(rename = "type")]
    pub datum_type: Option<String>,
    pub cartan: Option<Vec<Vec<i64>>>,
    pub twist: Option<Vec<usize>>,
    pub p: Option<u64>,
    pub q: u64,
    pub library: Option<PathBuf>,
    pub table: Option<PathBuf>,
    pub outputs: Outputs,
    #[serde(default)]
    pub pins: Vec<(usize, usize)>,
    pub cap: Option<usize>,
    #[serde(default)]
    pub verbosity: u8,
}

fn resolve(base: &Path, p: &mut Option<PathBuf>) {
    if let Some(path) = p {
        if path.is_relative() {
            *path = base.join(&*path);
        }
    }
}

/// Smallest prime factor.
pub fn characteristic_of(q: u64) -> u64 {
    (2..).find(|d| d * d > q || q % d == 0).map_or(q, |d| if q % d == 0 { d } else { q })
}

impl PipelineConfig {
    /// Reads, resolves paths and validates without computing anything.
    pub fn load(path: &Path, library_default: Option<PathBuf>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg: PipelineConfig = serde_json::from_str(&text)?;
        if cfg.library.is_none() {
            cfg.library = library_default;
        }
        let base = path.parent().unwrap_or(Path::new("."));
        resolve(base, &mut cfg.library);
        resolve(base, &mut cfg.table);
        resolve(base, &mut cfg.outputs.classes);
        resolve(base, &mut cfg.outputs.btable);
        resolve(base, &mut cfg.outputs.matches);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn p(&self) -> u64 {
        self.p.unwrap_or_else(|| characteristic_of(self.q))
    }

    pub fn cap(&self) -> usize {
        self.cap.unwrap_or(DEFAULT_CAP)
    }

    pub fn datum(&self) -> Result<RootDatum> {
        match (&self.datum_type, &self.cartan) {
            (Some(t), None) => RootDatum::from_type(t, self.twist.clone()),
            (None, Some(rows)) => {
                let twist = self.twist.clone().unwrap_or_else(|| (1..=rows.len()).collect());
                RootDatum::new(IntMatrix::from_rows(rows), &TwistSpec::Permutation(twist))
            }
            _ => Err(Error::Schema("give exactly one of \"type\" and \"cartan\"".into())),
        }
    }

    fn validate(&self) -> Result<()> {
        prime_power_exponent(self.q, self.p())?;
        self.datum()?;
        let library = self
            .library
            .as_ref()
            .ok_or_else(|| Error::Schema("no library path (set \"library\" or LIECHAR_LIB)".into()))?;
        if !library.exists() {
            return Err(Error::Io(format!("library {} does not exist", library.display())));
        }
        if let Some(t) = &self.table {
            if !t.is_file() {
                return Err(Error::Io(format!("table {} does not exist", t.display())));
            }
        }
        if self.table.is_none() && (self.outputs.matches.is_some() || !self.pins.is_empty()) {
            return Err(Error::Schema("matching needs a \"table\"".into()));
        }
        Ok(())
    }
}
