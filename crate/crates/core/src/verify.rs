//! Aggregate oracle-equivalence suite over ring sizes 3..=n_max.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::analytic::{manifold_states, to_fock_vector};
use crate::degeneracy::{energy_ladder, evenly_spaced_triples, find_accidental, predicts_accidental, LadderMethod};
use crate::fock::{build_hamiltonian, eig_hermitian, residual};
use crate::optics::{ground_dipole, transition_table, FORBIDDEN_THRESHOLD};
use crate::{make_uniform_ring, Result};

pub const RESIDUAL_TOL: f64 = 1e-10;
pub const SPECTRUM_TOL: f64 = 1e-10;
pub const CLOSED_FORM_REL_TOL: f64 = 1e-10;
pub const BRIGHT_TOL: f64 = 1e-10;
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Deliberate defects for exercising the harness itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negates the first amplitude of every analytic vector before the
    /// residual check.
    FlipAmplitudeSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { n_max: 8, fault: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual cases evaluated.
    pub cases: usize,
    /// Worst deviation seen, where the property has one.
    pub worst: f64,
    pub detail: String,
}

fn outcome(name: &'static str, cases: usize, worst: f64, tol: f64, failures: Vec<String>) -> PropertyResult {
    let passed = failures.is_empty() && worst <= tol;
    let detail = if passed {
        format!("{cases} cases, worst {worst:.3e} (tol {tol:.0e})")
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        format!("{cases} cases, worst {worst:.3e} (tol {tol:.0e}); {}", shown.join("; "))
    };
    PropertyResult { name, passed, cases, worst, detail }
}

pub fn run(options: VerifyOptions) -> Result<Vec<PropertyResult>> {
    let sizes = || 3..=options.n_max.max(3);
    let mut results = Vec::new();

    // analytic eigenstates vs occupation-basis Hamiltonian
    {
        let (mut cases, mut worst, mut failures) = (0, 0.0_f64, Vec::new());
        for n in sizes() {
            let spec = make_uniform_ring(n, 0.0, 1.0)?;
            for k in 1..=n {
                let h = build_hamiltonian(&spec, k)?;
                for state in manifold_states(&spec, k)? {
                    let mut v = to_fock_vector(&state, n)?;
                    if options.fault == Some(Fault::FlipAmplitudeSign) {
                        v.amplitudes_mut()[0] = -v.amplitudes()[0];
                    }
                    let r = residual(&h, &v, state.energy())?;
                    cases += 1;
                    worst = worst.max(r);
                    if r > RESIDUAL_TOL {
                        failures.push(format!("N={n} {state} residual {r:.2e}"));
                    }
                }
            }
        }
        results.push(outcome("eigenstate_residuals", cases, worst, RESIDUAL_TOL, failures));
    }

    // sorted analytic energies vs eigensolver spectrum
    {
        let (mut cases, mut worst, mut failures) = (0, 0.0_f64, Vec::new());
        for n in sizes() {
            let spec = make_uniform_ring(n, 0.0, 1.0)?;
            for k in 1..=n {
                let mut analytic: Vec<f64> = manifold_states(&spec, k)?.iter().map(|s| s.energy()).collect();
                analytic.sort_by(f64::total_cmp);
                let oracle = eig_hermitian(&build_hamiltonian(&spec, k)?)?.values;
                let dev = analytic.iter().zip(&oracle).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
                cases += 1;
                worst = worst.max(dev);
                if analytic.len() != oracle.len() || dev > SPECTRUM_TOL {
                    failures.push(format!("N={n} n={k} deviation {dev:.2e}"));
                }
            }
        }
        results.push(outcome("spectrum_equality", cases, worst, SPECTRUM_TOL, failures));
    }

    // only q = 0 couples to the ground state, with strength N
    {
        let (mut cases, mut worst, mut failures) = (0, 0.0_f64, Vec::new());
        for n in sizes() {
            let spec = make_uniform_ring(n, 0.0, 1.0)?;
            for state in manifold_states(&spec, 1)? {
                let g = ground_dipole(&spec, &state)?;
                let target = if state.labels()[0] == 0 { n as f64 } else { 0.0 };
                let dev = (g - target).abs();
                cases += 1;
                worst = worst.max(dev);
                if dev > BRIGHT_TOL {
                    failures.push(format!("N={n} {state} dipole {g:.3e}"));
                }
            }
        }
        results.push(outcome("bright_dark_dichotomy", cases, worst, BRIGHT_TOL, failures));
    }

    // rule verdict vs brute-force dipole, and the closed form on allowed pairs
    {
        let (mut rule_cases, mut rule_failures) = (0, Vec::new());
        let (mut cf_cases, mut cf_worst, mut cf_failures) = (0, 0.0_f64, Vec::new());
        for n in sizes() {
            let spec = make_uniform_ring(n, 0.0, 1.0)?;
            for k in [1, 2] {
                if k + 1 > n {
                    continue;
                }
                for rec in transition_table(&spec, k)? {
                    rule_cases += 1;
                    if rec.rule_allowed != (rec.dipole_oracle > FORBIDDEN_THRESHOLD) {
                        rule_failures.push(format!(
                            "N={n} {} -> {} allowed={} dipole={:.2e}",
                            rec.from_state, rec.to_state, rec.rule_allowed, rec.dipole_oracle
                        ));
                    }
                    if let Some(cf) = rec.dipole_closed_form {
                        let rel = (cf - rec.dipole_oracle).abs() / rec.dipole_oracle.max(1.0);
                        cf_cases += 1;
                        cf_worst = cf_worst.max(rel);
                        if rel > CLOSED_FORM_REL_TOL {
                            cf_failures.push(format!("N={n} {} -> {} rel {rel:.2e}", rec.from_state, rec.to_state));
                        }
                    }
                }
            }
        }
        results.push(outcome("selection_rule_equivalence", rule_cases, 0.0, 0.0, rule_failures));
        results.push(outcome("closed_form_agreement", cf_cases, cf_worst, CLOSED_FORM_REL_TOL, cf_failures));
    }

    // mixed level <=> N = 4l+2 <=> evenly spaced triple; every triple obeys the condition
    {
        let (mut cases, mut failures) = (0, Vec::new());
        for n in sizes() {
            let spec = make_uniform_ring(n, 0.0, 1.0)?;
            let observed = !find_accidental(&spec)?.is_empty();
            let triples = evenly_spaced_triples(n);
            cases += 1;
            if observed != predicts_accidental(n) || observed == triples.triples.is_empty() || !triples.all_hold() {
                failures.push(format!("N={n} observed={observed} triples={}", triples.triples.len()));
            }
        }
        results.push(outcome("accidental_law", cases, 0.0, 0.0, failures));
    }

    // analytic ladder vs oracle ladder on the double-excitation sector
    {
        let (mut cases, mut worst, mut failures) = (0, 0.0_f64, Vec::new());
        for n in sizes() {
            let spec = make_uniform_ring(n, 0.0, 1.0)?;
            let a = energy_ladder(&spec, 2, LadderMethod::Analytic)?;
            let o = energy_ladder(&spec, 2, LadderMethod::Oracle)?;
            cases += 1;
            if a.len() != o.len() || a.iter().zip(&o).any(|(x, y)| x.degeneracy != y.degeneracy) {
                failures.push(format!("N={n} level structure differs"));
                continue;
            }
            let dev = a.iter().zip(&o).fold(0.0_f64, |m, (x, y)| m.max((x.energy - y.energy).abs()));
            worst = worst.max(dev);
        }
        results.push(outcome("ladder_concordance", cases, worst, 1e-9, failures));
    }

    // n = 1 spectrum symmetric under negation for even N
    {
        let (mut cases, mut worst, mut failures) = (0, 0.0_f64, Vec::new());
        for n in sizes().filter(|n| n % 2 == 0) {
            let spec = make_uniform_ring(n, 0.0, 1.0)?;
            let mut e: Vec<f64> = manifold_states(&spec, 1)?.iter().map(|s| s.energy()).collect();
            e.sort_by(f64::total_cmp);
            let dev = e.iter().zip(e.iter().rev()).fold(0.0_f64, |m, (a, b)| m.max((a + b).abs()));
            cases += 1;
            worst = worst.max(dev);
            if dev > SYMMETRY_TOL {
                failures.push(format!("N={n} asymmetry {dev:.2e}"));
            }
        }
        results.push(outcome("sublattice_symmetry", cases, worst, SYMMETRY_TOL, failures));
    }

    Ok(results)
}

pub fn all_passed(results: &[PropertyResult]) -> bool {
    results.iter().all(|r| r.passed)
}
