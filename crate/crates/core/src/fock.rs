//! Brute-force occupation-basis oracle.
//!
//! The n-excitation sector is spanned by ascending site subsets of {1..N}
//! (hardcore bosons, so at most one excitation per site). The Hamiltonian is
//! built straight from the spin form: site energy plus disorder on the
//! diagonal, and the bond coupling between any two occupations that differ by
//! one excitation hopping across that bond. No fermionic signs appear here;
//! they only enter the analytic amplitudes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::combinatorics::combinations;
use crate::linalg::{inner, norm};
use crate::{Error, Result, RingSpec};

pub use crate::linalg::{eig_hermitian, EigenDecomposition, HermitianMatrix};

/// Lexicographically ordered ascending n-subsets of {1..N}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    n_sites: usize,
    excitations: usize,
    states: Vec<Vec<usize>>,
    index: BTreeMap<u64, usize>,
}

impl FockBasis {
    pub fn enumerate(n_sites: usize, excitations: usize) -> Result<Self> {
        if excitations > n_sites {
            return Err(Error::InvalidExcitation { excitations, n_sites });
        }
        if n_sites > 63 {
            return Err(Error::InvalidParameter("ring too large for the occupation basis"));
        }
        let sites: Vec<usize> = (1..=n_sites).collect();
        let states = combinations(&sites, excitations);
        let index = states.iter().enumerate().map(|(i, s)| (mask_of(s), i)).collect();
        Ok(Self { n_sites, excitations, states, index })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn excitations(&self) -> usize {
        self.excitations
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Vec<usize>] {
        &self.states
    }

    /// Position of an occupation in the enumeration, if it belongs to it.
    pub fn index_of(&self, sites: &[usize]) -> Option<usize> {
        if sites.len() != self.excitations
            || sites.windows(2).any(|w| w[0] >= w[1])
            || sites.iter().any(|&j| j == 0 || j > self.n_sites)
        {
            return None;
        }
        self.index.get(&mask_of(sites)).copied()
    }

    fn index_of_mask(&self, mask: u64) -> usize {
        self.index[&mask]
    }
}

fn mask_of(sites: &[usize]) -> u64 {
    sites.iter().fold(0u64, |m, &j| m | 1 << (j - 1))
}

/// Complex amplitudes over a [`FockBasis`] of the given shape.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    n_sites: usize,
    excitations: usize,
    amplitudes: Vec<Complex64>,
}

impl FockVector {
    pub fn new(n_sites: usize, excitations: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = crate::combinatorics::binomial(n_sites, excitations);
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: amplitudes.len() });
        }
        Ok(Self { n_sites, excitations, amplitudes })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn excitations(&self) -> usize {
        self.excitations
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// ⟨self|other⟩, antilinear in `self`.
    pub fn inner(&self, other: &FockVector) -> Result<Complex64> {
        if self.n_sites != other.n_sites || self.excitations != other.excitations {
            return Err(Error::DimensionMismatch { expected: self.amplitudes.len(), found: other.amplitudes.len() });
        }
        Ok(inner(&self.amplitudes, &other.amplitudes))
    }
}

/// The vacuum |0⟩ as the single-entry n = 0 vector.
pub fn ground_state(n_sites: usize) -> FockVector {
    FockVector { n_sites, excitations: 0, amplitudes: alloc::vec![Complex64::new(1.0, 0.0)] }
}

pub fn enumerate_basis(n_sites: usize, excitations: usize) -> Result<FockBasis> {
    FockBasis::enumerate(n_sites, excitations)
}

/// Ring Hamiltonian restricted to the n-excitation sector, for arbitrary
/// couplings and site disorder.
pub fn build_hamiltonian(spec: &RingSpec, excitations: usize) -> Result<HermitianMatrix> {
    spec.ensure_valid()?;
    let basis = FockBasis::enumerate(spec.n_sites, excitations)?;
    Ok(hamiltonian_on(spec, &basis))
}

pub(crate) fn hamiltonian_on(spec: &RingSpec, basis: &FockBasis) -> HermitianMatrix {
    let n = spec.n_sites;
    let mut h = HermitianMatrix::zeros(basis.len());
    for (i, sites) in basis.states.iter().enumerate() {
        let diagonal: f64 = sites.iter().map(|&j| spec.site_energy + spec.disorder(j)).sum();
        h.add_diagonal(i, diagonal);
        let mask = mask_of(sites);
        for j in 1..=n {
            let k = j % n + 1;
            let (bj, bk) = (1u64 << (j - 1), 1u64 << (k - 1));
            // each hop is visited once, from the side where j is occupied
            if mask & bj != 0 && mask & bk == 0 {
                let target = basis.index_of_mask(mask & !bj | bk);
                h.add_coupling(target, i, Complex64::new(spec.bond(j), 0.0));
            }
        }
    }
    h
}

/// ‖Hv − Ev‖₂ / max(1, ‖v‖₂).
pub fn residual(h: &HermitianMatrix, v: &FockVector, energy: f64) -> Result<f64> {
    let hv = h.apply(&v.amplitudes)?;
    let r: f64 = hv.iter().zip(&v.amplitudes).map(|(a, b)| (a - b * energy).norm_sqr()).sum();
    Ok(libm::sqrt(r) / v.norm().max(1.0))
}

/// Matrix of J⁺ = Σσ_j⁺ from the n-sector to the (n+1)-sector. Every entry is
/// 0 or 1, so only the positions of the ones are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaisingMatrix {
    n_sites: usize,
    from_excitations: usize,
    rows: usize,
    cols: usize,
    /// (row, col) of every unit entry, grouped by column.
    ones: Vec<(usize, usize)>,
}

impl RaisingMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn from_excitations(&self) -> usize {
        self.from_excitations
    }

    pub fn ones(&self) -> &[(usize, usize)] {
        &self.ones
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        if self.ones.contains(&(row, col)) {
            1.0
        } else {
            0.0
        }
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if v.n_sites != self.n_sites || v.excitations != self.from_excitations {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.amplitudes.len() });
        }
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); self.rows];
        for &(r, c) in &self.ones {
            out[r] += v.amplitudes[c];
        }
        FockVector::new(self.n_sites, self.from_excitations + 1, out)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut m = alloc::vec![0.0; self.rows * self.cols];
        for &(r, c) in &self.ones {
            m[r * self.cols + c] = 1.0;
        }
        m
    }
}

pub fn raising_matrix(n_sites: usize, from_excitations: usize) -> Result<RaisingMatrix> {
    if from_excitations + 1 > n_sites {
        return Err(Error::InvalidExcitation { excitations: from_excitations + 1, n_sites });
    }
    let from = FockBasis::enumerate(n_sites, from_excitations)?;
    let to = FockBasis::enumerate(n_sites, from_excitations + 1)?;
    let mut ones = Vec::with_capacity(from.len() * (n_sites - from_excitations));
    for (col, sites) in from.states.iter().enumerate() {
        let mask = mask_of(sites);
        for j in 0..n_sites {
            if mask & (1 << j) == 0 {
                ones.push((to.index_of_mask(mask | 1 << j), col));
            }
        }
    }
    Ok(RaisingMatrix { n_sites, from_excitations, rows: to.len(), cols: from.len(), ones })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_uniform_ring;
    use alloc::vec;

    #[test]
    fn basis_examples() {
        let b = FockBasis::enumerate(6, 2).unwrap();
        assert_eq!(b.len(), 15);
        assert_eq!(b.states()[0], [1, 2]);
        assert_eq!(b.states()[14], [5, 6]);
        for (i, s) in b.states().iter().enumerate() {
            assert_eq!(b.index_of(s), Some(i));
        }
        assert_eq!(b.index_of(&[2, 1]), None);
        assert_eq!(b.index_of(&[1, 7]), None);
        assert_eq!(b.index_of(&[1]), None);

        let full = FockBasis::enumerate(3, 3).unwrap();
        assert_eq!(full.states(), [vec![1, 2, 3]]);
        let vacuum = FockBasis::enumerate(4, 0).unwrap();
        assert_eq!(vacuum.states(), [Vec::<usize>::new()]);
        assert!(matches!(FockBasis::enumerate(4, 5), Err(Error::InvalidExcitation { .. })));
    }

    #[test]
    fn single_excitation_hamiltonian_is_ring_adjacency() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
        let h = build_hamiltonian(&spec, 1).unwrap();
        for r in 0..6 {
            for c in 0..6 {
                let adjacent = (r + 1) % 6 == c || (c + 1) % 6 == r;
                let expected = if adjacent { 1.0 } else { 0.0 };
                assert_eq!(h.get(r, c), Complex64::new(expected, 0.0), "({r},{c})");
            }
        }
    }

    #[test]
    fn double_excitation_hamiltonian_rows() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
        let h = build_hamiltonian(&spec, 2).unwrap();
        let b = FockBasis::enumerate(6, 2).unwrap();
        let row = |s: &[usize]| {
            let i = b.index_of(s).unwrap();
            let mut nbrs: Vec<Vec<usize>> =
                (0..15).filter(|&c| h.get(i, c).re != 0.0).map(|c| b.states()[c].clone()).collect();
            nbrs.sort();
            nbrs
        };
        // {1,2}: 1 hops to 6, 2 hops to 3
        assert_eq!(row(&[1, 2]), [vec![1, 3], vec![2, 6]]);
        // {1,4}: four free neighbours
        assert_eq!(row(&[1, 4]), [vec![1, 3], vec![1, 5], vec![2, 4], vec![4, 6]]);
        // {1,6} wraps across the boundary bond
        assert_eq!(row(&[1, 6]), [vec![1, 5], vec![2, 6]]);
        for i in 0..15 {
            assert_eq!(h.get(i, i), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn disorder_lands_on_the_diagonal() {
        let d = 0.37;
        let clean = build_hamiltonian(&make_uniform_ring(6, 0.0, 1.0).unwrap(), 1).unwrap();
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap().with_site_disorder(vec![d, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let h = build_hamiltonian(&spec, 1).unwrap();
        for r in 0..6 {
            for c in 0..6 {
                let shift = if r == 0 && c == 0 { d } else { 0.0 };
                assert_eq!(h.get(r, c), clean.get(r, c) + shift);
            }
        }
    }

    #[test]
    fn boundary_bond_uses_last_coupling() {
        let spec = make_uniform_ring(4, 0.5, 1.0).unwrap().with_couplings(vec![1.0, 2.0, 3.0, 4.0]);
        let h = build_hamiltonian(&spec, 1).unwrap();
        assert_eq!(h.get(0, 3).re, 4.0);
        assert_eq!(h.get(3, 0).re, 4.0);
        assert_eq!(h.get(1, 2).re, 2.0);
        assert_eq!(h.get(2, 2).re, 0.5);
    }

    #[test]
    fn invalid_spec_is_rejected() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap().with_couplings(vec![1.0; 5]);
        assert!(matches!(build_hamiltonian(&spec, 1), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn residual_of_shifted_energy() {
        let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
        let h = build_hamiltonian(&spec, 1).unwrap();
        let amp = Complex64::new(1.0 / 6.0_f64.sqrt(), 0.0);
        let v = FockVector::new(6, 1, vec![amp; 6]).unwrap();
        assert!(residual(&h, &v, 2.0).unwrap() < 1e-14);
        assert!((residual(&h, &v, 3.0).unwrap() - 1.0).abs() < 1e-14);
        let wrong = FockVector::new(6, 2, vec![amp; 15]).unwrap();
        assert!(matches!(residual(&h, &wrong, 0.0), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn raising_matrix_examples() {
        let r = raising_matrix(3, 0).unwrap();
        assert_eq!((r.rows(), r.cols()), (3, 1));
        assert_eq!(r.to_dense(), [1.0, 1.0, 1.0]);

        let r = raising_matrix(6, 2).unwrap();
        assert_eq!((r.rows(), r.cols()), (20, 15));
        let dense = r.to_dense();
        for c in 0..15 {
            let ones: f64 = (0..20).map(|row| dense[row * 15 + c]).sum();
            assert_eq!(ones, 4.0);
        }
        assert!(matches!(raising_matrix(4, 4), Err(Error::InvalidExcitation { .. })));

        // J+|0> is the unnormalised bright state
        let up = raising_matrix(5, 0).unwrap().apply(&ground_state(5)).unwrap();
        assert!(up.amplitudes().iter().all(|&a| a == Complex64::new(1.0, 0.0)));
        assert_eq!(r.get(0, 0), 1.0);
    }
}
