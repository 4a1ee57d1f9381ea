//! Energy ladders, mixed-category levels and the cosine-triple scan.

use alloc::vec::Vec;

use crate::analytic::{manifold_states, ManifoldState};
use crate::fock::{build_hamiltonian, eig_hermitian};
use crate::optics::{classify_double, Category};
use crate::trig::{cos_pi_ratio, sin_pi_ratio};
use crate::{Error, Result, RingSpec};

/// Relative grouping tolerance; scaled by max(1, |2S|).
pub const GROUPING_REL_TOL: f64 = 1e-9;

/// Equality window of the double-precision triple scan.
pub const TRIPLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CategoryCounts {
    pub bright_coupled: usize,
    pub dark_coupled: usize,
}

/// A group of states sharing one energy.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnergyLevel {
    pub energy: f64,
    pub degeneracy: usize,
    /// Member states; empty for levels read off the oracle spectrum.
    pub states: Vec<ManifoldState>,
    /// Category composition, for analytic double-excitation levels only.
    pub categories: Option<CategoryCounts>,
}

impl EnergyLevel {
    /// Holds states of both categories.
    pub fn is_mixed(&self) -> bool {
        matches!(self.categories, Some(c) if c.bright_coupled > 0 && c.dark_coupled > 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum LadderMethod {
    Analytic,
    Oracle,
}

pub fn grouping_tolerance(spec: &RingSpec) -> f64 {
    GROUPING_REL_TOL * (2.0 * spec.coupling_scale()).max(1.0)
}

/// Splits an energy-sorted sequence wherever neighbours differ by more than `tol`.
fn group_sorted<T>(items: Vec<(f64, T)>, tol: f64) -> Vec<(f64, Vec<T>)> {
    let mut groups: Vec<(Vec<f64>, Vec<T>)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (e, item) in items {
        match groups.last_mut() {
            Some((es, members)) if e - last <= tol => {
                es.push(e);
                members.push(item);
            }
            _ => groups.push((alloc::vec![e], alloc::vec![item])),
        }
        last = e;
    }
    groups.into_iter().map(|(es, members)| (es.iter().sum::<f64>() / es.len() as f64, members)).collect()
}

/// Degenerate levels of the n-excitation sector, ascending in energy.
///
/// The analytic path needs a uniform ring; the oracle path diagonalises the
/// occupation-basis Hamiltonian and accepts any valid spec.
pub fn energy_ladder(spec: &RingSpec, excitations: usize, method: LadderMethod) -> Result<Vec<EnergyLevel>> {
    let tol = grouping_tolerance(spec);
    match method {
        LadderMethod::Analytic => {
            let mut states = manifold_states(spec, excitations)?;
            states.sort_by(|a, b| a.energy().total_cmp(&b.energy()));
            let items = states.into_iter().map(|s| (s.energy(), s)).collect();
            group_sorted(items, tol)
                .into_iter()
                .map(|(energy, states)| {
                    let categories = if excitations == 2 {
                        let mut counts = CategoryCounts::default();
                        for s in &states {
                            match classify_double(spec, s)? {
                                Category::BrightCoupled => counts.bright_coupled += 1,
                                Category::DarkCoupled => counts.dark_coupled += 1,
                            }
                        }
                        Some(counts)
                    } else {
                        None
                    };
                    Ok(EnergyLevel { energy, degeneracy: states.len(), states, categories })
                })
                .collect()
        }
        LadderMethod::Oracle => {
            let h = build_hamiltonian(spec, excitations)?;
            let eig = eig_hermitian(&h)?;
            let items = eig.values.into_iter().map(|e| (e, ())).collect();
            Ok(group_sorted(items, tol)
                .into_iter()
                .map(|(energy, members)| EnergyLevel {
                    energy,
                    degeneracy: members.len(),
                    states: Vec::new(),
                    categories: None,
                })
                .collect())
        }
    }
}

/// Double-excitation levels that contain both categories.
pub fn find_accidental(spec: &RingSpec) -> Result<Vec<EnergyLevel>> {
    if spec.n_sites < 2 {
        return Err(Error::InvalidSize { n_sites: spec.n_sites });
    }
    Ok(energy_ladder(spec, 2, LadderMethod::Analytic)?.into_iter().filter(EnergyLevel::is_mixed).collect())
}

/// The ring sizes N = 4l + 2 (l ≥ 1) for which a mixed level is expected.
pub fn predicts_accidental(n_sites: usize) -> bool {
    n_sites >= 6 && n_sites % 4 == 2
}

/// Indices with f(m₁) > f(m₂) > f(m₃) equally spaced, f(m) = cos((2m+1)π/N).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Triple {
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
    /// Middle angle is π/2 or 3π/2 and the outer indices sit symmetrically
    /// about it.
    pub condition_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TripleReport {
    pub n_sites: usize,
    pub triples: Vec<Triple>,
}

impl TripleReport {
    pub fn all_hold(&self) -> bool {
        self.triples.iter().all(|t| t.condition_holds)
    }
}

fn triple_energy(m: usize, n_sites: usize) -> f64 {
    cos_pi_ratio(2 * m as i64 + 1, n_sites as i64)
}

/// Exact integer form of the condition for a flagged triple.
///
/// f(m) = f(N−1−m), so indices are first folded onto the half with angle
/// ≤ π; the index symmetry m₁ − m₂ = m₂ − m₃ is tested on the folded values.
fn triple_condition(m1: usize, m2: usize, m3: usize, n_sites: usize) -> bool {
    let mid = 2 * (2 * m2 + 1);
    let right_angle = mid == n_sites || mid == 3 * n_sites;
    let fold = |m: usize| m.min(n_sites - 1 - m) as i64;
    right_angle && fold(m1) - fold(m2) == fold(m2) - fold(m3)
}

/// Exhaustive scan over all index triples in [0, N)³.
pub fn evenly_spaced_triples(n_sites: usize) -> TripleReport {
    let mut triples = Vec::new();
    if n_sites >= crate::model::MIN_SITES {
        let f: Vec<f64> = (0..n_sites).map(|m| triple_energy(m, n_sites)).collect();
        for m1 in 0..n_sites {
            for m2 in 0..n_sites {
                if f[m1] - f[m2] <= TRIPLE_TOL {
                    continue;
                }
                for m3 in 0..n_sites {
                    if f[m2] - f[m3] <= TRIPLE_TOL {
                        continue;
                    }
                    if ((f[m1] - f[m2]) - (f[m2] - f[m3])).abs() <= TRIPLE_TOL {
                        triples.push(Triple { m1, m2, m3, condition_holds: triple_condition(m1, m2, m3, n_sites) });
                    }
                }
            }
        }
    }
    TripleReport { n_sites, triples }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiagramPoint {
    pub label: usize,
    /// Energy axis: cos(qπ/N) = (ε − ω)/2S.
    pub re: f64,
    pub im: f64,
}

/// Single-excitation (even q) and component (odd q) states as points
/// exp(iqπ/N) on the unit circle.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StateDiagram {
    pub n_sites: usize,
    pub single_excitation: Vec<DiagramPoint>,
    pub component: Vec<DiagramPoint>,
}

pub fn state_diagram(n_sites: usize) -> Result<StateDiagram> {
    if n_sites < crate::model::MIN_SITES {
        return Err(Error::InvalidSize { n_sites });
    }
    let n = n_sites as i64;
    let point = |q: usize| DiagramPoint { label: q, re: cos_pi_ratio(q as i64, n), im: sin_pi_ratio(q as i64, n) };
    Ok(StateDiagram {
        n_sites,
        single_excitation: (0..2 * n_sites).step_by(2).map(point).collect(),
        component: (1..2 * n_sites).step_by(2).map(point).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_uniform_ring;

    fn ring(n: usize) -> RingSpec {
        make_uniform_ring(n, 0.0, 1.0).unwrap()
    }

    #[test]
    fn hexagon_zero_level_has_degeneracy_five() {
        let ladder = energy_ladder(&ring(6), 2, LadderMethod::Analytic).unwrap();
        let zero = ladder.iter().find(|l| l.energy.abs() < 1e-12).unwrap();
        assert_eq!(zero.degeneracy, 5);
        assert_eq!(zero.categories, Some(CategoryCounts { bright_coupled: 1, dark_coupled: 4 }));
        let mut labels: Vec<Vec<usize>> = zero.states.iter().map(|s| s.labels().to_vec()).collect();
        labels.sort();
        assert_eq!(labels, [[1, 5], [1, 7], [3, 9], [5, 11], [7, 11]]);
        assert!(zero.is_mixed());
    }

    #[test]
    fn small_rings_have_no_mixed_levels() {
        for n in [3, 4, 5] {
            let ladder = energy_ladder(&ring(n), 2, LadderMethod::Analytic).unwrap();
            assert!(ladder.iter().all(|l| !l.is_mixed()), "N = {n}");
        }
    }

    #[test]
    fn triangle_single_excitation_ladder() {
        let ladder = energy_ladder(&ring(3), 1, LadderMethod::Analytic).unwrap();
        assert_eq!(ladder.len(), 2);
        assert!((ladder[0].energy + 1.0).abs() < 1e-14);
        assert_eq!(ladder[0].degeneracy, 2);
        assert!((ladder[1].energy - 2.0).abs() < 1e-14);
        assert_eq!(ladder[1].degeneracy, 1);
        assert!(ladder.iter().all(|l| l.categories.is_none()));
    }

    #[test]
    fn accidental_levels() {
        let six = find_accidental(&ring(6)).unwrap();
        assert_eq!(six.len(), 1);
        assert_eq!(six[0].energy, 0.0);
        assert!(find_accidental(&ring(8)).unwrap().is_empty());
        let ten = find_accidental(&ring(10)).unwrap();
        assert_eq!(ten.len(), 1);
        assert_eq!(ten[0].degeneracy, 9);
        assert_eq!(ten[0].categories, Some(CategoryCounts { bright_coupled: 1, dark_coupled: 8 }));
        assert!(ten[0].states.iter().any(|s| s.labels() == [5, 15]));
    }

    #[test]
    fn prediction_rule() {
        assert!(predicts_accidental(6));
        assert!(predicts_accidental(10));
        assert!(!predicts_accidental(8));
        assert!(!predicts_accidental(3));
        assert!(!predicts_accidental(2));
    }

    #[test]
    fn triple_examples() {
        let six = evenly_spaced_triples(6);
        assert!(six.triples.contains(&Triple { m1: 0, m2: 1, m3: 2, condition_holds: true }));
        assert!(six.all_hold());
        assert!(evenly_spaced_triples(4).triples.is_empty());
        assert!(evenly_spaced_triples(7).triples.is_empty());
    }

    #[test]
    fn folded_condition_covers_mirrored_indices() {
        // f(5) = f(0) and f(4) = f(1) for N = 6
        assert!(triple_condition(5, 1, 2, 6));
        assert!(triple_condition(0, 4, 2, 6));
        assert!(!triple_condition(0, 2, 4, 6));
    }

    #[test]
    fn state_diagram_examples() {
        let six = state_diagram(6).unwrap();
        assert_eq!(six.single_excitation.len() + six.component.len(), 12);
        let on_axis: Vec<_> = six.component.iter().filter(|p| p.re == 0.0).map(|p| (p.label, p.im)).collect();
        assert_eq!(on_axis, [(3, 1.0), (9, -1.0)]);
        assert!(six.single_excitation.iter().all(|p| p.re != 0.0));

        let four = state_diagram(4).unwrap();
        let on_axis: Vec<_> = four.single_excitation.iter().filter(|p| p.re == 0.0).map(|p| p.im).collect();
        assert_eq!(on_axis, [1.0, -1.0]);
        assert!(four.component.iter().all(|p| p.re != 0.0));

        assert!(state_diagram(2).is_err());
    }

    #[test]
    fn oracle_ladder_matches_analytic_for_hexagon() {
        let a = energy_ladder(&ring(6), 2, LadderMethod::Analytic).unwrap();
        let o = energy_ladder(&ring(6), 2, LadderMethod::Oracle).unwrap();
        assert_eq!(a.len(), o.len());
        for (x, y) in a.iter().zip(&o) {
            assert_eq!(x.degeneracy, y.degeneracy);
            assert!((x.energy - y.energy).abs() < 1e-9);
        }
    }
}
