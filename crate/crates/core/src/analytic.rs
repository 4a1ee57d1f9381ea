//! Closed-form eigenstates of the uniform ring.
//!
//! After the Jordan-Wigner mapping the n-excitation sector is a free-fermion
//! problem whose boundary is periodic for odd n and antiperiodic for even n.
//! Single-particle orbitals are plane waves `exp(i·q·π·j/N)`, and the boundary
//! condition fixes the parity of the integer `q`: even for odd n, odd for even
//! n. A manifold eigenstate is a set of n distinct labels; its amplitude on an
//! ascending occupation `j_1 < … < j_n` is the Slater determinant of the
//! orbitals, which carries the fermionic signs of the string operator.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::combinatorics::combinations;
use crate::fock::{FockBasis, FockVector};
use crate::linalg::determinant;
use crate::trig::{cos_pi_ratio, phase};
use crate::{Error, Result, RingSpec};

/// Parity of the excitation number of a manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(excitations: usize) -> Self {
        if excitations % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Label parity required in this sector: even labels for odd n, odd for even n.
    pub fn accepts(self, q: usize) -> bool {
        match self {
            Parity::Odd => q.is_multiple_of(2),
            Parity::Even => q % 2 == 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Plane-wave exponent `q` in `exp(i·q·π·j/N)`, tagged with the parity of the
/// manifold it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentumLabel {
    q: usize,
    n_parity: Parity,
}

impl MomentumLabel {
    pub fn new(q: usize, n_parity: Parity, n_sites: usize) -> Result<Self> {
        if q >= 2 * n_sites || !n_parity.accepts(q) {
            return Err(Error::InvalidLabel { q, parity: n_parity.as_str(), n_sites });
        }
        Ok(Self { q, n_parity })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n_parity(&self) -> Parity {
        self.n_parity
    }
}

/// The N labels of the sector with `excitations` excitations, ascending.
pub fn momentum_labels(n_sites: usize, excitations: usize) -> Result<Vec<MomentumLabel>> {
    if n_sites < crate::model::MIN_SITES {
        return Err(Error::InvalidSize { n_sites });
    }
    if excitations == 0 {
        return Err(Error::InvalidExcitation { excitations, n_sites });
    }
    let parity = Parity::of(excitations);
    let start = match parity {
        Parity::Odd => 0,
        Parity::Even => 1,
    };
    (start..2 * n_sites).step_by(2).map(|q| MomentumLabel::new(q, parity, n_sites)).collect()
}

/// ω + 2S·cos(qπ/N), with symmetry-exact cosines.
pub(crate) fn orbital_energy(site_energy: f64, coupling: f64, q: usize, n_sites: usize) -> f64 {
    site_energy + 2.0 * coupling * cos_pi_ratio(q as i64, n_sites as i64)
}

/// Energy of a single component orbital of a uniform ring.
pub fn component_energy(spec: &RingSpec, label: MomentumLabel) -> Result<f64> {
    let s = spec.uniform_coupling()?;
    if label.q >= 2 * spec.n_sites {
        return Err(Error::InvalidLabel { q: label.q, parity: label.n_parity().as_str(), n_sites: spec.n_sites });
    }
    Ok(orbital_energy(spec.site_energy, s, label.q, spec.n_sites))
}

/// An n-excitation analytic eigenstate: n distinct labels (ascending) and the
/// sum of their orbital energies.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ManifoldState {
    labels: Vec<usize>,
    energy: f64,
}

impl ManifoldState {
    /// Builds the state for a uniform ring; labels may come in any order.
    pub fn new(spec: &RingSpec, labels: &[usize]) -> Result<Self> {
        let s = spec.uniform_coupling()?;
        let n_sites = spec.n_sites;
        let sorted = canonical_labels(labels, n_sites)?;
        let energy = sorted.iter().map(|&q| orbital_energy(spec.site_energy, s, q, n_sites)).sum();
        Ok(Self { labels: sorted, energy })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn excitations(&self) -> usize {
        self.labels.len()
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn label_sum(&self) -> usize {
        self.labels.iter().sum()
    }
}

impl fmt::Display for ManifoldState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("}")
    }
}

/// Validates sector membership and distinctness; returns the labels sorted.
fn canonical_labels(labels: &[usize], n_sites: usize) -> Result<Vec<usize>> {
    let excitations = labels.len();
    if excitations == 0 || excitations > n_sites {
        return Err(Error::InvalidExcitation { excitations, n_sites });
    }
    let parity = Parity::of(excitations);
    for &q in labels {
        MomentumLabel::new(q, parity, n_sites)?;
    }
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateLabel);
    }
    Ok(sorted)
}

/// All C(N, n) eigenstates of the n-excitation sector, lexicographic in labels.
pub fn manifold_states(spec: &RingSpec, excitations: usize) -> Result<Vec<ManifoldState>> {
    let s = spec.uniform_coupling()?;
    let n_sites = spec.n_sites;
    if excitations == 0 || excitations > n_sites {
        return Err(Error::InvalidExcitation { excitations, n_sites });
    }
    let qs: Vec<usize> = momentum_labels(n_sites, excitations)?.iter().map(MomentumLabel::q).collect();
    let energies: Vec<f64> = qs.iter().map(|&q| orbital_energy(spec.site_energy, s, q, n_sites)).collect();
    // index combinations so energies are summed from the cached orbital table
    let idx: Vec<usize> = (0..n_sites).collect();
    Ok(combinations(&idx, excitations)
        .into_iter()
        .map(|c| ManifoldState {
            labels: c.iter().map(|&i| qs[i]).collect(),
            energy: c.iter().map(|&i| energies[i]).sum(),
        })
        .collect())
}

/// Slater-determinant amplitude `N^(−n/2)·det[exp(i·q_a·π·j_b/N)]` with the
/// labels taken in the order given.
pub fn determinant_amplitude(labels: &[usize], sites: &[usize], n_sites: usize) -> Result<Complex64> {
    check_occupation(sites, n_sites)?;
    if labels.len() != sites.len() {
        return Err(Error::DimensionMismatch { expected: labels.len(), found: sites.len() });
    }
    Ok(slater(labels, sites, n_sites))
}

fn slater(labels: &[usize], sites: &[usize], n_sites: usize) -> Complex64 {
    let n = labels.len();
    let n2 = 2 * n_sites as i64;
    let mut m = Vec::with_capacity(n * n);
    for &q in labels {
        for &j in sites {
            // phase exponent reduced mod 2N keeps the table exact
            let p = (q as i64 * j as i64).rem_euclid(n2);
            m.push(phase(p, n_sites as i64));
        }
    }
    determinant(m, n) * libm::pow(n_sites as f64, -(n as f64) / 2.0)
}

fn check_occupation(sites: &[usize], n_sites: usize) -> Result<()> {
    let in_range = sites.iter().all(|&j| (1..=n_sites).contains(&j));
    let ascending = sites.windows(2).all(|w| w[0] < w[1]);
    if in_range && ascending {
        Ok(())
    } else {
        Err(Error::InvalidOccupation { n_sites })
    }
}

/// Amplitude of `state` on the ascending occupation `sites` (1-based).
pub fn amplitude(state: &ManifoldState, sites: &[usize], n_sites: usize) -> Result<Complex64> {
    determinant_amplitude(&state.labels, sites, n_sites)
}

/// Expands labels (in the order given) over the full occupation basis.
pub fn fock_vector_from_labels(labels: &[usize], n_sites: usize) -> Result<FockVector> {
    let basis = FockBasis::enumerate(n_sites, labels.len())?;
    let amplitudes = basis.states().iter().map(|sites| slater(labels, sites, n_sites)).collect();
    FockVector::new(n_sites, labels.len(), amplitudes)
}

/// The state expanded over the C(N, n) ascending-occupation basis.
pub fn to_fock_vector(state: &ManifoldState, n_sites: usize) -> Result<FockVector> {
    canonical_labels(&state.labels, n_sites)?;
    fock_vector_from_labels(&state.labels, n_sites)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_uniform_ring;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    fn qs(labels: &[MomentumLabel]) -> Vec<usize> {
        labels.iter().map(MomentumLabel::q).collect()
    }

    #[test]
    fn label_sets_follow_excitation_parity() {
        assert_eq!(qs(&momentum_labels(6, 1).unwrap()), [0, 2, 4, 6, 8, 10]);
        assert_eq!(qs(&momentum_labels(6, 2).unwrap()), [1, 3, 5, 7, 9, 11]);
        assert_eq!(qs(&momentum_labels(3, 2).unwrap()), [1, 3, 5]);
        assert_eq!(qs(&momentum_labels(5, 3).unwrap()), [0, 2, 4, 6, 8]);
        assert!(momentum_labels(2, 1).is_err());
        assert!(momentum_labels(5, 0).is_err());
    }

    #[test]
    fn label_validation() {
        assert!(MomentumLabel::new(3, Parity::Odd, 6).is_err());
        assert!(MomentumLabel::new(12, Parity::Even, 6).is_err());
        assert!(MomentumLabel::new(11, Parity::Even, 6).is_ok());
    }

    #[test]
    fn component_energies() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
        let e = |q| component_energy(&spec, MomentumLabel::new(q, Parity::of(q + 1), 6).unwrap()).unwrap();
        assert_eq!(e(3), 0.0);
        assert_eq!(e(9), 0.0);
        assert_abs_diff_eq!(e(1), 3.0_f64.sqrt(), epsilon = 1e-15);

        let disordered = spec.clone().with_site_disorder(vec![0.1, 0., 0., 0., 0., 0.]);
        let label = MomentumLabel::new(3, Parity::Even, 6).unwrap();
        assert_eq!(component_energy(&disordered, label), Err(Error::RequiresUniform));
    }

    #[test]
    fn double_excitation_states_for_hexagon() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
        let states = manifold_states(&spec, 2).unwrap();
        assert_eq!(states.len(), 15);
        let find = |l: &[usize]| states.iter().find(|s| s.labels() == l).unwrap().energy();
        assert_eq!(find(&[3, 9]), 0.0);
        // sqrt(3) + (-sqrt(3)) cancels exactly thanks to folded cosines
        assert_eq!(find(&[1, 7]), 0.0);
        assert!(states.windows(2).all(|w| w[0].labels() < w[1].labels()));
    }

    #[test]
    fn square_single_excitations() {
        let spec = make_uniform_ring(4, 0.0, 1.5).unwrap();
        let energies: Vec<f64> = manifold_states(&spec, 1).unwrap().iter().map(ManifoldState::energy).collect();
        assert_eq!(energies, [3.0, 0.0, -3.0, 0.0]);
        assert!(matches!(manifold_states(&spec, 5), Err(Error::InvalidExcitation { .. })));
        assert!(matches!(manifold_states(&spec, 0), Err(Error::InvalidExcitation { .. })));
    }

    #[test]
    fn manifold_state_rejects_bad_labels() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
        assert_eq!(ManifoldState::new(&spec, &[3, 3]), Err(Error::DuplicateLabel));
        assert!(matches!(ManifoldState::new(&spec, &[2, 4]), Err(Error::InvalidLabel { .. })));
        let s = ManifoldState::new(&spec, &[9, 3]).unwrap();
        assert_eq!(s.labels(), [3, 9]);
        assert_eq!(alloc::format!("{s}"), "{3,9}");
    }

    #[test]
    fn amplitude_examples() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
        let bright = ManifoldState::new(&spec, &[0]).unwrap();
        for j in 1..=6 {
            let a = amplitude(&bright, &[j], 6).unwrap();
            assert_abs_diff_eq!(a.re, 1.0 / 6.0_f64.sqrt(), epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-15);
        }

        // explicit two-term expansion for a doubly excited state
        let pair = ManifoldState::new(&spec, &[5, 7]).unwrap();
        for (j, h) in [(1, 2), (2, 5), (3, 6)] {
            let w = |x: f64| Complex64::from_polar(1.0, x * core::f64::consts::PI / 6.0);
            let expected = (w((5 * j + 7 * h) as f64) - w((5 * h + 7 * j) as f64)) / 6.0;
            let got = amplitude(&pair, &[j, h], 6).unwrap();
            assert_abs_diff_eq!((got - expected).norm(), 0.0, epsilon = 1e-14);
        }

        assert_eq!(amplitude(&pair, &[2, 2], 6), Err(Error::InvalidOccupation { n_sites: 6 }));
        assert!(amplitude(&pair, &[3, 1], 6).is_err());
        assert!(amplitude(&pair, &[1, 7], 6).is_err());
        assert!(amplitude(&pair, &[1], 6).is_err());
    }

    #[test]
    fn fock_vector_examples() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
        let v = to_fock_vector(&ManifoldState::new(&spec, &[0]).unwrap(), 6).unwrap();
        for a in v.amplitudes() {
            assert_abs_diff_eq!((a - Complex64::new(1.0 / 6.0_f64.sqrt(), 0.0)).norm(), 0.0, epsilon = 1e-15);
        }

        let v = to_fock_vector(&ManifoldState::new(&spec, &[3, 9]).unwrap(), 6).unwrap();
        assert_eq!(v.amplitudes().len(), 15);
        assert_abs_diff_eq!(v.norm(), 1.0, epsilon = 1e-12);

        let tri = make_uniform_ring(3, 0.0, 1.0).unwrap();
        let v = to_fock_vector(&ManifoldState::new(&tri, &[0, 2, 4]).unwrap(), 3).unwrap();
        assert_eq!(v.amplitudes().len(), 1);
        assert_abs_diff_eq!(v.amplitudes()[0].norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn swapping_labels_flips_sign() {
        let a = determinant_amplitude(&[1, 5, 9], &[1, 3, 4], 6).unwrap();
        let b = determinant_amplitude(&[5, 1, 9], &[1, 3, 4], 6).unwrap();
        assert_abs_diff_eq!((a + b).norm(), 0.0, epsilon = 1e-14);
    }
}
