//! Robustness of the accidental level under site and coupling disorder.
//!
//! Site disorder V = Σ δ_j n_j is treated at first order through the Fourier
//! sums α (uniform), β (wavevector 2π/N) and γ (staggered). Every state on the
//! accidental level picks up the same first-order shift 2α; the experiments
//! here compare that prediction with exact diagonalisation of the disordered
//! double-excitation sector.
//!
//! Random draws use ChaCha8 seeded with `seed_from_u64`. Each sample takes one
//! `next_u64`, keeps the top 53 bits as `u ∈ [0, 1)`, and maps it affinely onto
//! the target interval, so results are bit-reproducible across platforms.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::degeneracy::{find_accidental, predicts_accidental, EnergyLevel};
use crate::fock::{build_hamiltonian, eig_hermitian};
use crate::trig::phase;
use crate::{Error, Result, RingSpec};

/// A cluster must sit at least this many widths away from its neighbours.
pub const CLUSTER_SEPARATION_FACTOR: f64 = 5.0;

/// Eigenvalues within this distance of zero count towards the zero level in
/// the coupling-disorder check.
pub const ZERO_LEVEL_TOL: f64 = 1e-9;

/// ChaCha8 stream used for coupling draws, kept apart from site draws.
const COUPLING_STREAM: u64 = 1;

fn unit_samples(n: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..n).map(|_| (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)).collect()
}

/// δ_j drawn uniformly from [−eta, eta).
pub fn draw_site_disorder(n_sites: usize, eta: f64, seed: u64) -> Vec<f64> {
    unit_samples(n_sites, seed, 0).into_iter().map(|u| eta * (2.0 * u - 1.0)).collect()
}

/// S_j drawn uniformly from [1 − spread, 1 + spread).
pub fn draw_couplings(n_sites: usize, spread: f64, seed: u64) -> Vec<f64> {
    unit_samples(n_sites, seed, COUPLING_STREAM).into_iter().map(|u| 1.0 + spread * (2.0 * u - 1.0)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PtCoefficients {
    /// (1/N) Σ δ_j
    pub alpha: f64,
    /// (1/N) Σ δ_j e^{i2πj/N}
    pub beta: Complex64,
    /// (1/N) Σ δ_j (−1)^j
    pub gamma: f64,
}

pub fn pt_coefficients(spec: &RingSpec) -> Result<PtCoefficients> {
    spec.ensure_valid()?;
    let n = spec.n_sites;
    let inv = 1.0 / n as f64;
    let mut alpha = 0.0;
    let mut beta = Complex64::new(0.0, 0.0);
    let mut gamma = 0.0;
    for j in 1..=n {
        let d = spec.disorder(j);
        alpha += d;
        beta += phase(2 * j as i64, n as i64) * d;
        gamma += if j % 2 == 0 { d } else { -d };
    }
    Ok(PtCoefficients { alpha: alpha * inv, beta: beta * inv, gamma: gamma * inv })
}

/// First-order shift 2α shared by every state of the accidental level.
pub fn first_order_level_correction(spec: &RingSpec) -> Result<f64> {
    spec.ensure_valid()?;
    if !predicts_accidental(spec.n_sites) {
        return Err(Error::NoAccidentalLevel { n_sites: spec.n_sites });
    }
    if !spec.has_uniform_couplings() {
        return Err(Error::RequiresUniform);
    }
    Ok(2.0 * pt_coefficients(spec)?.alpha)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DisorderReport {
    pub n_sites: usize,
    pub eta: f64,
    pub seed: Option<u64>,
    pub alpha: f64,
    pub beta: Complex64,
    pub gamma: f64,
    /// 2α
    pub predicted_first_order: f64,
    /// Unperturbed level energy plus 2α.
    pub predicted_center: f64,
    /// The tracked eigenvalues, ascending.
    pub cluster_energies: Vec<f64>,
    /// Mean of the tracked eigenvalues.
    pub cluster_center: f64,
    /// max − min of the tracked eigenvalues.
    pub observed_splitting: f64,
    pub site_disorder: Vec<f64>,
}

/// Tracks the accidental level of `spec` (uniform couplings, explicit δ)
/// through exact diagonalisation of the double-excitation sector.
pub fn site_disorder_report(spec: &RingSpec) -> Result<DisorderReport> {
    let predicted_first_order = first_order_level_correction(spec)?;
    let coeffs = pt_coefficients(spec)?;
    let clean = spec.clone().with_site_disorder(alloc::vec![0.0; spec.n_sites]);
    let level =
        find_accidental(&clean)?.into_iter().next().ok_or(Error::NoAccidentalLevel { n_sites: spec.n_sites })?;
    let predicted_center = level.energy + predicted_first_order;

    let values = eig_hermitian(&build_hamiltonian(spec, 2)?)?.values;
    let cluster = nearest_cluster(&values, predicted_center, level.degeneracy)?;
    let cluster_center = cluster.iter().sum::<f64>() / cluster.len() as f64;
    let observed_splitting = cluster[cluster.len() - 1] - cluster[0];
    Ok(DisorderReport {
        n_sites: spec.n_sites,
        eta: spec.site_disorder.iter().fold(0.0, |m: f64, d| m.max(d.abs())),
        seed: None,
        alpha: coeffs.alpha,
        beta: coeffs.beta,
        gamma: coeffs.gamma,
        predicted_first_order,
        predicted_center,
        cluster_energies: cluster,
        cluster_center,
        observed_splitting,
        site_disorder: spec.site_disorder.clone(),
    })
}

/// The `size` eigenvalues closest to `center`, ascending, provided the group
/// stands clear of the rest of the spectrum.
fn nearest_cluster(sorted_values: &[f64], center: f64, size: usize) -> Result<Vec<f64>> {
    if size == 0 || size > sorted_values.len() {
        return Err(Error::InvalidParameter("cluster size exceeds the spectrum"));
    }
    // the nearest `size` values form a contiguous window of the sorted spectrum
    let mut start = 0;
    let mut best = f64::INFINITY;
    for s in 0..=sorted_values.len() - size {
        let window = &sorted_values[s..s + size];
        let reach = (center - window[0]).abs().max((window[size - 1] - center).abs());
        if reach < best {
            best = reach;
            start = s;
        }
    }
    let cluster = sorted_values[start..start + size].to_vec();
    let width = cluster[size - 1] - cluster[0];
    let below = start.checked_sub(1).map(|i| cluster[0] - sorted_values[i]);
    let above = sorted_values.get(start + size).map(|v| v - cluster[size - 1]);
    let separation = below.into_iter().chain(above).fold(f64::INFINITY, f64::min);
    if separation < CLUSTER_SEPARATION_FACTOR * width {
        return Err(Error::TrackingAmbiguous { width, separation });
    }
    Ok(cluster)
}

/// Draws δ_j ∈ [−eta, eta) for a uniform base ring and reports the tracked
/// accidental cluster.
pub fn site_disorder_splitting(base: &RingSpec, eta: f64, seed: u64) -> Result<DisorderReport> {
    if !base.is_uniform() {
        return Err(Error::RequiresUniform);
    }
    if !(eta >= 0.0 && eta.is_finite()) {
        return Err(Error::InvalidParameter("eta must be finite and non-negative"));
    }
    let delta = draw_site_disorder(base.n_sites, eta, seed);
    let mut report = site_disorder_report(&base.clone().with_site_disorder(delta))?;
    report.eta = eta;
    report.seed = Some(seed);
    Ok(report)
}

/// Least-squares slope of log(y) against log(x).
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidParameter("need at least two matched points"));
    }
    if xs.iter().chain(ys).any(|&v| v.is_nan() || v <= 0.0) {
        return Err(Error::InvalidParameter("log-log fit needs positive values"));
    }
    let lx: Vec<f64> = xs.iter().map(|&x| libm::log(x)).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| libm::log(y)).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Slope of log(observed_splitting) vs log(eta) for one seed.
pub fn splitting_scaling(base: &RingSpec, etas: &[f64], seed: u64) -> Result<f64> {
    let splittings: Vec<f64> = etas
        .iter()
        .map(|&eta| Ok(site_disorder_splitting(base, eta, seed)?.observed_splitting))
        .collect::<Result<_>>()?;
    loglog_slope(etas, &splittings)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CouplingDisorderOutcome {
    pub n_sites: usize,
    pub seed: u64,
    pub spread: f64,
    pub couplings: Vec<f64>,
    /// Zero-level multiplicity of the uniform ring.
    pub expected_degeneracy: usize,
    /// Whether the uniform zero level mixes both categories.
    pub uniform_level_mixed: bool,
    pub observed_degeneracy: usize,
    /// A zero level with the uniform multiplicity survives.
    pub preserved: bool,
    pub level: Option<EnergyLevel>,
}

/// Zero-energy double-excitation level of a ring with random bond couplings,
/// for any N. [`coupling_disorder_check`] restricts this to N = 4l + 2.
pub fn coupling_disorder_probe(n_sites: usize, seed: u64, spread: f64) -> Result<CouplingDisorderOutcome> {
    if !(spread > 0.0 && spread < 1.0) {
        return Err(Error::InvalidParameter("spread must lie in (0, 1) so every coupling stays positive"));
    }
    let uniform = crate::make_uniform_ring(n_sites, 0.0, 1.0)?;
    let uniform_zero = crate::degeneracy::energy_ladder(&uniform, 2, crate::degeneracy::LadderMethod::Analytic)?
        .into_iter()
        .find(|l| l.energy.abs() <= ZERO_LEVEL_TOL);
    let expected_degeneracy = uniform_zero.as_ref().map_or(0, |l| l.degeneracy);
    let uniform_level_mixed = uniform_zero.as_ref().is_some_and(EnergyLevel::is_mixed);

    let couplings = draw_couplings(n_sites, spread, seed);
    let spec = uniform.with_couplings(couplings.clone());
    let values = eig_hermitian(&build_hamiltonian(&spec, 2)?)?.values;
    let zeros: Vec<f64> = values.into_iter().filter(|v| v.abs() <= ZERO_LEVEL_TOL).collect();
    let observed_degeneracy = zeros.len();
    let level = (!zeros.is_empty()).then(|| EnergyLevel {
        energy: zeros.iter().sum::<f64>() / zeros.len() as f64,
        degeneracy: zeros.len(),
        states: Vec::new(),
        categories: None,
    });
    Ok(CouplingDisorderOutcome {
        n_sites,
        seed,
        spread,
        couplings,
        expected_degeneracy,
        uniform_level_mixed,
        observed_degeneracy,
        preserved: expected_degeneracy > 0 && observed_degeneracy == expected_degeneracy,
        level,
    })
}

/// Does the zero-energy accidental level keep its multiplicity when every
/// bond coupling is drawn from [1 − spread, 1 + spread)?
pub fn coupling_disorder_check(n_sites: usize, seed: u64, spread: f64) -> Result<CouplingDisorderOutcome> {
    if !predicts_accidental(n_sites) {
        return Err(Error::NoAccidentalLevel { n_sites });
    }
    coupling_disorder_probe(n_sites, seed, spread)
}
