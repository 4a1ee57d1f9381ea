//! Cross-checks against independent brute-force oracles written directly from
//! the defining sums, sharing no code path with the library.

use std::f64::consts::PI;

use exciton_ring_core::analytic::{manifold_states, to_fock_vector, ManifoldState};
use exciton_ring_core::degeneracy::{energy_ladder, evenly_spaced_triples, find_accidental, LadderMethod};
use exciton_ring_core::fock::{build_hamiltonian, eig_hermitian, residual};
use exciton_ring_core::optics::{dipole_oracle, gamma12_closed_form, transition_table};
use exciton_ring_core::{make_uniform_ring, Complex64};

fn w(x: f64, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, x * PI / n as f64)
}

/// |⟨ψ_{s1 s2}|J⁺|ψ_k⟩|² as the explicit double sum over j < h.
fn gamma12_direct_sum(n: usize, k: usize, s1: usize, s2: usize) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 1..=n {
        for h in j + 1..=n {
            let (jf, hf) = (j as f64, h as f64);
            let pair = (w(s1 as f64 * jf + s2 as f64 * hf, n) - w(s1 as f64 * hf + s2 as f64 * jf, n)).conj();
            let single = w(k as f64 * jf, n) + w(k as f64 * hf, n);
            acc += pair * single;
        }
    }
    acc.norm_sqr() / (n as f64).powi(3)
}

#[test]
fn closed_form_frozen_values_match_direct_sum() {
    // frozen from the direct double sum
    let cases = [(6, 0, 3, 9, 2.0 / 3.0), (6, 0, 5, 7, 2.0 / 3.0 * (7.0 - 4.0 * 3.0_f64.sqrt()))];
    for (n, k, s1, s2, frozen) in cases {
        let direct = gamma12_direct_sum(n, k, s1, s2);
        assert!((direct - frozen).abs() < 1e-13, "direct {direct} vs frozen {frozen}");
        let cf = gamma12_closed_form(n, k, s1, s2).unwrap();
        assert!((cf - frozen).abs() < 1e-13);
    }
}

#[test]
fn library_dipoles_match_direct_sum() {
    for n in 3..=8 {
        let spec = make_uniform_ring(n, 0.0, 1.0).unwrap();
        for from in manifold_states(&spec, 1).unwrap() {
            for to in manifold_states(&spec, 2).unwrap() {
                let lib = dipole_oracle(&spec, &from, &to).unwrap();
                let direct = gamma12_direct_sum(n, from.labels()[0], to.labels()[0], to.labels()[1]);
                assert!((lib - direct).abs() < 1e-12, "N={n} {from}->{to}: {lib} vs {direct}");
            }
        }
    }
}

/// Independent occupation-basis Hamiltonian on bitmasks.
fn bitmask_hamiltonian(n: usize, k: usize, omega: f64, s: &[f64], d: &[f64]) -> (Vec<u32>, Vec<Vec<f64>>) {
    let mut masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect();
    // lexicographic order of the ascending site tuples
    masks.sort_by_key(|m| (0..n).filter(|b| m & (1 << b) != 0).collect::<Vec<_>>());
    let dim = masks.len();
    let mut h = vec![vec![0.0; dim]; dim];
    for (a, &ma) in masks.iter().enumerate() {
        for (bit, dj) in d.iter().enumerate().take(n) {
            if ma & (1 << bit) != 0 {
                h[a][a] += omega + dj;
            }
        }
        for (b, &mb) in masks.iter().enumerate() {
            let diff = ma ^ mb;
            if diff.count_ones() == 2 {
                for (bond, sj) in s.iter().enumerate().take(n) {
                    let pair = (1 << bond) | (1 << ((bond + 1) % n));
                    if diff == pair {
                        h[a][b] += sj;
                    }
                }
            }
        }
    }
    (masks, h)
}

#[test]
fn hamiltonian_matches_bitmask_builder() {
    let s = [0.7, 1.3, 0.9, 1.1, 0.4, 1.6, 1.0];
    let d = [0.05, -0.02, 0.0, 0.11, -0.07, 0.03, 0.01];
    for n in 3..=7 {
        let spec = make_uniform_ring(n, 0.25, 1.0)
            .unwrap()
            .with_couplings(s[..n].to_vec())
            .with_site_disorder(d[..n].to_vec());
        for k in 0..=n {
            let h = build_hamiltonian(&spec, k).unwrap();
            let (_, reference) = bitmask_hamiltonian(n, k, 0.25, &s[..n], &d[..n]);
            for (r, row) in reference.iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    assert_eq!(h.get(r, c), Complex64::new(x, 0.0), "N={n} n={k} ({r},{c})");
                }
            }
        }
    }
}

#[test]
fn double_excitation_hexagon_has_five_zero_eigenvalues() {
    let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
    let values = eig_hermitian(&build_hamiltonian(&spec, 2).unwrap()).unwrap().values;
    assert_eq!(values.len(), 15);
    assert_eq!(values.iter().filter(|v| v.abs() < 1e-10).count(), 5);

    let single = eig_hermitian(&build_hamiltonian(&spec, 1).unwrap()).unwrap().values;
    for (got, want) in single.iter().zip([-2.0, -1.0, -1.0, 1.0, 1.0, 2.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn eigenstate_residual_examples() {
    let spec = make_uniform_ring(6, 0.0, 1.0).unwrap();
    let h1 = build_hamiltonian(&spec, 1).unwrap();
    let bright = ManifoldState::new(&spec, &[0]).unwrap();
    assert_eq!(bright.energy(), 2.0);
    let v = to_fock_vector(&bright, 6).unwrap();
    assert!(residual(&h1, &v, 2.0).unwrap() <= 1e-10);
    assert!(residual(&h1, &v, 3.0).unwrap() >= 0.5);

    let h2 = build_hamiltonian(&spec, 2).unwrap();
    let dark_zero = ManifoldState::new(&spec, &[3, 9]).unwrap();
    let v = to_fock_vector(&dark_zero, 6).unwrap();
    assert!(residual(&h2, &v, 0.0).unwrap() <= 1e-10);
}

#[test]
fn every_analytic_state_is_an_eigenstate_up_to_eight_sites() {
    for n in 3..=8 {
        let spec = make_uniform_ring(n, 0.3, -0.8).unwrap();
        for k in 1..=n {
            let h = build_hamiltonian(&spec, k).unwrap();
            for s in manifold_states(&spec, k).unwrap() {
                let r = residual(&h, &to_fock_vector(&s, n).unwrap(), s.energy()).unwrap();
                assert!(r <= 1e-10, "N={n} {s}: {r:e}");
            }
        }
    }
}

#[test]
fn pair_energy_scan_reproduces_accidental_levels() {
    // brute force: all odd-label pairs, energies from std cos, grouped by rounding
    for n in 3..=16 {
        let eps = |q: usize| 2.0 * (q as f64 * PI / n as f64).cos();
        let mut groups: Vec<(f64, usize, usize)> = Vec::new();
        for a in (1..2 * n).step_by(2) {
            for b in (a + 2..2 * n).step_by(2) {
                let e = eps(a) + eps(b);
                let bright = (a + b) % (2 * n) == 0;
                match groups.iter_mut().find(|g| (g.0 - e).abs() < 1e-9) {
                    Some(g) => {
                        if bright {
                            g.1 += 1
                        } else {
                            g.2 += 1
                        }
                    }
                    None => groups.push((e, bright as usize, (!bright) as usize)),
                }
            }
        }
        let mixed: Vec<_> = groups.iter().filter(|g| g.1 > 0 && g.2 > 0).collect();
        let lib = find_accidental(&make_uniform_ring(n, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!(lib.len(), mixed.len(), "N={n}");
        for (l, g) in lib.iter().zip(&mixed) {
            assert!((l.energy - g.0).abs() < 1e-9);
            let c = l.categories.unwrap();
            assert_eq!((c.bright_coupled, c.dark_coupled), (g.1, g.2));
        }
        if n == 10 {
            assert_eq!(mixed.len(), 1);
            assert_eq!((mixed[0].1, mixed[0].2), (1, 8));
        }
    }
}

#[test]
fn triple_scan_matches_plain_enumeration() {
    for n in 3..=30 {
        let f = |m: usize| ((2 * m + 1) as f64 * PI / n as f64).cos();
        let mut expected = Vec::new();
        for m1 in 0..n {
            for m2 in 0..n {
                for m3 in 0..n {
                    let (a, b, c) = (f(m1), f(m2), f(m3));
                    if a - b > 1e-9 && b - c > 1e-9 && ((a - b) - (b - c)).abs() < 1e-9 {
                        expected.push((m1, m2, m3));
                    }
                }
            }
        }
        let got: Vec<_> = evenly_spaced_triples(n).triples.iter().map(|t| (t.m1, t.m2, t.m3)).collect();
        assert_eq!(got, expected, "N={n}");
    }
}

#[test]
fn oracle_ladder_concordance_up_to_twelve_sites() {
    for n in 3..=12 {
        let spec = make_uniform_ring(n, 0.0, 1.0).unwrap();
        let a = energy_ladder(&spec, 2, LadderMethod::Analytic).unwrap();
        let o = energy_ladder(&spec, 2, LadderMethod::Oracle).unwrap();
        assert_eq!(a.len(), o.len(), "N={n}");
        for (x, y) in a.iter().zip(&o) {
            assert_eq!(x.degeneracy, y.degeneracy, "N={n}");
            assert!((x.energy - y.energy).abs() <= 1e-9, "N={n}");
        }
    }
}

#[test]
fn transition_tables_agree_with_rule() {
    for n in 3..=7 {
        let spec = make_uniform_ring(n, 0.0, 1.0).unwrap();
        for k in [1, 2] {
            for rec in transition_table(&spec, k).unwrap() {
                assert_eq!(rec.rule_allowed, rec.dipole_oracle > 1e-10, "N={n} {} -> {}", rec.from_state, rec.to_state);
                if let Some(cf) = rec.dipole_closed_form {
                    assert!((cf - rec.dipole_oracle).abs() <= 1e-10 * rec.dipole_oracle.max(1.0));
                }
            }
        }
    }
}
