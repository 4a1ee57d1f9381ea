//! Optical transitions between adjacent excitation manifolds.
//!
//! The optical operator J⁺ = Σσ_j⁺ raises the excitation number by one. Its
//! matrix element between analytic states factorises into a sum over relative
//! site offsets times `Σ_j exp(i·j·(Σt − Σs)·π/N)`, which vanishes unless the
//! label sums agree modulo 2N. [`selection_rule`] is that condition and
//! [`dipole_oracle`] is the brute-force matrix element it is checked against.

use alloc::vec::Vec;

use crate::analytic::{manifold_states, to_fock_vector, ManifoldState, Parity};
use crate::fock::{ground_state, raising_matrix, FockVector, RaisingMatrix};
use crate::trig::cot_pi_ratio;
use crate::{Error, Result, RingSpec};

/// Dipoles at or below this value count as forbidden (unit-normalised states).
pub const FORBIDDEN_THRESHOLD: f64 = 1e-10;

/// Optical class of a doubly excited state of the uniform ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Category {
    /// Couples only to the bright single-excitation state.
    BrightCoupled,
    /// Couples only to dark single-excitation states.
    DarkCoupled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectionVerdict {
    pub allowed: bool,
    /// (Σfrom − Σto) / 2N when allowed.
    pub winding: Option<i64>,
}

/// Phase-matching rule between an n-state and an (n+1)-state given by their
/// labels. `from` may be empty (the ground state).
pub fn selection_rule(from: &[usize], to: &[usize], n_sites: usize) -> Result<SelectionVerdict> {
    if to.len() != from.len() + 1 || to.len() > n_sites {
        return Err(Error::InvalidManifoldPair);
    }
    let sector_ok = |labels: &[usize]| {
        let parity = Parity::of(labels.len());
        labels.iter().all(|&q| q < 2 * n_sites && parity.accepts(q))
    };
    if !sector_ok(from) || !sector_ok(to) {
        return Err(Error::InvalidManifoldPair);
    }
    let period = 2 * n_sites as i64;
    let diff = from.iter().sum::<usize>() as i64 - to.iter().sum::<usize>() as i64;
    Ok(if diff.rem_euclid(period) == 0 {
        SelectionVerdict { allowed: true, winding: Some(diff / period) }
    } else {
        SelectionVerdict { allowed: false, winding: None }
    })
}

fn ensure_adjacent(from: &ManifoldState, to: &ManifoldState, n_sites: usize) -> Result<()> {
    if to.excitations() != from.excitations() + 1 || to.excitations() > n_sites {
        return Err(Error::InvalidManifoldPair);
    }
    Ok(())
}

fn squared_overlap(to: &FockVector, raised: &FockVector) -> Result<f64> {
    Ok(to.inner(raised)?.norm_sqr())
}

/// |⟨to|J⁺|from⟩|² evaluated in the occupation basis.
pub fn dipole_oracle(spec: &RingSpec, from: &ManifoldState, to: &ManifoldState) -> Result<f64> {
    spec.uniform_coupling()?;
    let n = spec.n_sites;
    ensure_adjacent(from, to, n)?;
    let raise = raising_matrix(n, from.excitations())?;
    let raised = raise.apply(&to_fock_vector(from, n)?)?;
    squared_overlap(&to_fock_vector(to, n)?, &raised)
}

/// |⟨ψ|J⁺|0⟩|² for a single-excitation state.
pub fn ground_dipole(spec: &RingSpec, state: &ManifoldState) -> Result<f64> {
    spec.uniform_coupling()?;
    if state.excitations() != 1 {
        return Err(Error::InvalidManifold { expected: 1, found: state.excitations() });
    }
    let n = spec.n_sites;
    let raised = raising_matrix(n, 0)?.apply(&ground_state(n))?;
    squared_overlap(&to_fock_vector(state, n)?, &raised)
}

/// Closed-form single → double dipole
/// `(1/N)·(cot(−s₂π/2N) + cot((k−s₂)π/2N))²`.
///
/// Only defined on the allowed stratum `k ≡ s₁ + s₂ (mod 2N)`. Under that
/// condition `(k − s₂) ≡ s₁`, so the bracket equals `cot(s₁π/2N) − cot(s₂π/2N)`
/// up to sign and the value is symmetric in `s₁ ↔ s₂`.
pub fn gamma12_closed_form(n_sites: usize, k: usize, s1: usize, s2: usize) -> Result<f64> {
    if n_sites < crate::model::MIN_SITES {
        return Err(Error::InvalidSize { n_sites });
    }
    for (q, parity) in [(k, Parity::Odd), (s1, Parity::Even), (s2, Parity::Even)] {
        if q >= 2 * n_sites || !parity.accepts(q) {
            return Err(Error::InvalidLabel { q, parity: parity.as_str(), n_sites });
        }
    }
    if s1 == s2 {
        return Err(Error::DuplicateLabel);
    }
    let n = n_sites as i64;
    let (k, s1, s2) = (k as i64, s1 as i64, s2 as i64);
    if (k - s1 - s2).rem_euclid(2 * n) != 0 {
        return Err(Error::SelectionRuleViolated);
    }
    let bracket = cot_pi_ratio(-s2, 2 * n) + cot_pi_ratio(k - s2, 2 * n);
    Ok(bracket * bracket / n_sites as f64)
}

pub fn classify_double(spec: &RingSpec, state: &ManifoldState) -> Result<Category> {
    spec.uniform_coupling()?;
    if state.excitations() != 2 {
        return Err(Error::InvalidManifold { expected: 2, found: state.excitations() });
    }
    let verdict = selection_rule(&[0], state.labels(), spec.n_sites)?;
    Ok(if verdict.allowed { Category::BrightCoupled } else { Category::DarkCoupled })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransitionRecord {
    pub from_state: ManifoldState,
    pub to_state: ManifoldState,
    pub rule_allowed: bool,
    pub winding: Option<i64>,
    pub dipole_oracle: f64,
    /// Present for allowed single → double transitions only.
    pub dipole_closed_form: Option<f64>,
}

/// Every (n, n+1) pair with its rule verdict, oracle dipole and, for n = 1,
/// the closed form. Ordered lexicographically by (from labels, to labels).
pub fn transition_table(spec: &RingSpec, excitations: usize) -> Result<Vec<TransitionRecord>> {
    let n_sites = spec.n_sites;
    if excitations == 0 || excitations + 1 > n_sites {
        return Err(Error::InvalidExcitation { excitations, n_sites });
    }
    let lower = manifold_states(spec, excitations)?;
    let upper = manifold_states(spec, excitations + 1)?;
    let raise: RaisingMatrix = raising_matrix(n_sites, excitations)?;
    let raised: Vec<FockVector> =
        lower.iter().map(|s| raise.apply(&to_fock_vector(s, n_sites)?)).collect::<Result<_>>()?;
    let targets: Vec<FockVector> = upper.iter().map(|s| to_fock_vector(s, n_sites)).collect::<Result<_>>()?;

    let mut table = Vec::with_capacity(lower.len() * upper.len());
    for (from, up) in lower.iter().zip(&raised) {
        for (to, target) in upper.iter().zip(&targets) {
            let verdict = selection_rule(from.labels(), to.labels(), n_sites)?;
            let closed = if excitations == 1 && verdict.allowed {
                let s = to.labels();
                Some(gamma12_closed_form(n_sites, from.labels()[0], s[0], s[1])?)
            } else {
                None
            };
            table.push(TransitionRecord {
                from_state: from.clone(),
                to_state: to.clone(),
                rule_allowed: verdict.allowed,
                winding: verdict.winding,
                dipole_oracle: squared_overlap(target, up)?,
                dipole_closed_form: closed,
            });
        }
    }
    Ok(table)
}
