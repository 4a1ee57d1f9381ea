//! Physical parameters of the ring.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Smallest ring the model accepts.
pub const MIN_SITES: usize = 3;

/// An N-site ring: site energy ω, bond couplings S_1..S_N and site disorder
/// δ_1..δ_N.
///
/// `couplings[j]` joins site `j+1` to site `j+2` in the 1-based numbering used
/// at every interface; the last entry is the boundary bond (N, 1).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RingSpec {
    pub n_sites: usize,
    pub site_energy: f64,
    pub couplings: Vec<f64>,
    pub site_disorder: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SpecViolation {
    #[error("n_sites = {n_sites} is below the minimum of 3")]
    TooFewSites { n_sites: usize },
    #[error("couplings has {found} entries, expected {expected}")]
    CouplingCount { expected: usize, found: usize },
    #[error("site_disorder has {found} entries, expected {expected}")]
    DisorderCount { expected: usize, found: usize },
    #[error("{field} contains a non-finite value")]
    NonFinite { field: &'static str },
}

/// Uniform ring with every coupling equal to `coupling` and no disorder.
pub fn make_uniform_ring(n_sites: usize, site_energy: f64, coupling: f64) -> Result<RingSpec> {
    if n_sites < MIN_SITES {
        return Err(Error::InvalidSize { n_sites });
    }
    Ok(RingSpec { n_sites, site_energy, couplings: vec![coupling; n_sites], site_disorder: vec![0.0; n_sites] })
}

impl RingSpec {
    /// Replace the bond couplings; the result is not validated.
    pub fn with_couplings(mut self, couplings: Vec<f64>) -> Self {
        self.couplings = couplings;
        self
    }

    /// Replace the site disorder; the result is not validated.
    pub fn with_site_disorder(mut self, site_disorder: Vec<f64>) -> Self {
        self.site_disorder = site_disorder;
        self
    }

    /// Every invariant violation, or `Ok` when there are none.
    pub fn validate(&self) -> core::result::Result<(), Vec<SpecViolation>> {
        let mut errors = Vec::new();
        if self.n_sites < MIN_SITES {
            errors.push(SpecViolation::TooFewSites { n_sites: self.n_sites });
        }
        if self.couplings.len() != self.n_sites {
            errors.push(SpecViolation::CouplingCount { expected: self.n_sites, found: self.couplings.len() });
        }
        if self.site_disorder.len() != self.n_sites {
            errors.push(SpecViolation::DisorderCount { expected: self.n_sites, found: self.site_disorder.len() });
        }
        if !self.site_energy.is_finite() {
            errors.push(SpecViolation::NonFinite { field: "site_energy" });
        }
        if self.couplings.iter().any(|s| !s.is_finite()) {
            errors.push(SpecViolation::NonFinite { field: "couplings" });
        }
        if self.site_disorder.iter().any(|d| !d.is_finite()) {
            errors.push(SpecViolation::NonFinite { field: "site_disorder" });
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidSpec)
    }

    pub fn has_uniform_couplings(&self) -> bool {
        match self.couplings.split_first() {
            Some((first, rest)) => rest.iter().all(|s| s == first),
            None => false,
        }
    }

    pub fn has_site_disorder(&self) -> bool {
        self.site_disorder.iter().any(|&d| d != 0.0)
    }

    /// All couplings equal and no site disorder.
    pub fn is_uniform(&self) -> bool {
        self.has_uniform_couplings() && !self.has_site_disorder()
    }

    /// The common coupling S of a uniform ring.
    pub(crate) fn uniform_coupling(&self) -> Result<f64> {
        self.ensure_valid()?;
        if !self.is_uniform() {
            return Err(Error::RequiresUniform);
        }
        Ok(self.couplings[0])
    }

    /// Largest |S_j|, the energy scale used for grouping tolerances.
    pub fn coupling_scale(&self) -> f64 {
        self.couplings.iter().fold(0.0_f64, |m, s| m.max(s.abs()))
    }

    /// Coupling of the bond leaving 1-based site `j` towards `j+1` (mod N).
    pub fn bond(&self, j: usize) -> f64 {
        self.couplings[j - 1]
    }

    /// Disorder of 1-based site `j`.
    pub fn disorder(&self, j: usize) -> f64 {
        self.site_disorder[j - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_ring_construction() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
        assert_eq!(spec.n_sites, 6);
        assert_eq!(spec.site_energy, 0.0);
        assert_eq!(spec.couplings, [1.0; 6]);
        assert_eq!(spec.site_disorder, [0.0; 6]);
        assert!(spec.is_uniform());
        assert!(spec.validate().is_ok());

        assert!(make_uniform_ring(3, 0.0, 1.0).unwrap().is_uniform());
        assert_eq!(make_uniform_ring(2, 0.0, 1.0), Err(Error::InvalidSize { n_sites: 2 }));
    }

    #[test]
    fn validate_reports_every_violation() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap().with_couplings(vec![1.0; 5]);
        let errs = spec.validate().unwrap_err();
        assert_eq!(errs, [SpecViolation::CouplingCount { expected: 6, found: 5 }]);

        let bad = RingSpec { n_sites: 2, site_energy: f64::NAN, couplings: vec![1.0], site_disorder: vec![] };
        assert_eq!(bad.validate().unwrap_err().len(), 4);
    }

    #[test]
    fn non_uniform_specs_are_legal() {
        let spec = make_uniform_ring(3, 0.0, 1.0).unwrap().with_couplings(vec![0.3, 1.7, -0.2]);
        assert!(spec.validate().is_ok());
        assert!(!spec.is_uniform());
        assert_eq!(spec.uniform_coupling(), Err(Error::RequiresUniform));

        let disordered = make_uniform_ring(4, 0.0, 1.0).unwrap().with_site_disorder(vec![0.0, 0.1, 0.0, 0.0]);
        assert!(disordered.has_uniform_couplings());
        assert!(!disordered.is_uniform());
    }

    #[test]
    fn bond_and_disorder_are_one_based() {
        let spec = make_uniform_ring(4, 0.0, 1.0)
            .unwrap()
            .with_couplings(vec![1.0, 2.0, 3.0, 4.0])
            .with_site_disorder(vec![0.1, 0.2, 0.3, 0.4]);
        assert_eq!(spec.bond(1), 1.0);
        assert_eq!(spec.bond(4), 4.0);
        assert_eq!(spec.disorder(3), 0.3);
        assert_eq!(spec.coupling_scale(), 4.0);
    }
}
