//! Ring specification from a config file and/or flags. Flags win.

use std::path::{Path, PathBuf};

use clap::Args;
use exciton_ring_core::RingSpec;
use serde::Deserialize;

use crate::output::Failure;

#[derive(Debug, Clone, Default, Args)]
pub struct RingArgs {
    /// Number of ring sites
    #[arg(short = 'N', long = "sites")]
    pub n_sites: Option<usize>,
    /// Site energy ω
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Uniform nearest-neighbour coupling S (replaces any per-bond list)
    #[arg(long, allow_hyphen_values = true)]
    pub coupling: Option<f64>,
    /// JSON or TOML file with n_sites, site_energy, couplings, site_disorder
    #[arg(long)]
    pub spec_file: Option<PathBuf>,
}

/// On-disk form; every field optional so flags can fill the gaps.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub n_sites: Option<usize>,
    pub site_energy: Option<f64>,
    pub couplings: Option<Vec<f64>>,
    pub site_disorder: Option<Vec<f64>>,
}

impl SpecFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self, Failure> {
        let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("json") => serde_json::from_str(text).map_err(|e| bad_file(path, e)),
            Some("toml") => toml::from_str(text).map_err(|e| bad_file(path, e)),
            _ => serde_json::from_str(text).or_else(|_| toml::from_str(text)).map_err(|e| bad_file(path, e)),
        }
    }

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path)
    }
}

fn bad_file(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::spec(format!("cannot parse spec file {}", path.display()), vec![e.to_string()])
}

impl RingArgs {
    pub fn resolve(&self) -> Result<RingSpec, Failure> {
        let file = match &self.spec_file {
            Some(p) => SpecFile::load(p)?,
            None => SpecFile::default(),
        };
        merge(self, file)
    }
}

pub fn merge(args: &RingArgs, file: SpecFile) -> Result<RingSpec, Failure> {
    let n_sites = args
        .n_sites
        .or(file.n_sites)
        .ok_or_else(|| Failure::usage("ring size missing: pass -N or a spec file with n_sites"))?;
    let site_energy = args.omega.or(file.site_energy).unwrap_or(0.0);
    let couplings = match args.coupling {
        Some(s) => vec![s; n_sites],
        None => file.couplings.unwrap_or_else(|| vec![1.0; n_sites]),
    };
    let site_disorder = file.site_disorder.unwrap_or_else(|| vec![0.0; n_sites]);
    let spec = RingSpec { n_sites, site_energy, couplings, site_disorder };
    spec.validate().map_err(|violations| {
        Failure::spec("invalid ring specification", violations.iter().map(ToString::to_string).collect())
    })?;
    Ok(spec)
}
