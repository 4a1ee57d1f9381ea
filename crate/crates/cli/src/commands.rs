use std::fmt::Write as _;

use clap::ValueEnum;
use exciton_ring_core::analytic::{manifold_states, to_fock_vector, ManifoldState};
use exciton_ring_core::combinatorics::binomial;
use exciton_ring_core::degeneracy::{
    energy_ladder, evenly_spaced_triples, find_accidental, grouping_tolerance, predicts_accidental, state_diagram,
    EnergyLevel, LadderMethod,
};
use exciton_ring_core::disorder::{
    coupling_disorder_check, site_disorder_splitting, CouplingDisorderOutcome, DisorderReport,
};
use exciton_ring_core::fock::{build_hamiltonian, eig_hermitian, enumerate_basis, raising_matrix};
use exciton_ring_core::optics::{classify_double, transition_table, Category};
use exciton_ring_core::verify::{self, Fault, PropertyResult, VerifyOptions};
use exciton_ring_core::{make_uniform_ring, Complex64, RingSpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{float, labels, opt_float, Csv, Envelope, Failure, Rendered};
use crate::spec_input::RingArgs;

/// Largest sector handed to the dense eigensolver.
pub const MAX_DENSE_DIM: usize = 1000;
/// Largest transition table (rows) the CLI will build.
pub const MAX_TRANSITION_ROWS: usize = 250_000;
/// Largest analytic manifold the CLI will enumerate.
pub const MAX_MANIFOLD: usize = 200_000;

type Out = Result<Rendered, Failure>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Analytic,
    Oracle,
}

impl From<Method> for LadderMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Analytic => LadderMethod::Analytic,
            Method::Oracle => LadderMethod::Oracle,
        }
    }
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LadderFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DisorderFormat {
    Json,
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DisorderMode {
    Site,
    Coupling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpTarget {
    Hamiltonian,
    Raising,
    State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InjectedFault {
    FlipAmplitudeSign,
}

fn category_name(c: Category) -> &'static str {
    match c {
        Category::BrightCoupled => "bright_coupled",
        Category::DarkCoupled => "dark_coupled",
    }
}

fn check_sector(spec: &RingSpec, n: usize, method: Method) -> Result<(), Failure> {
    if n > spec.n_sites {
        return Err(Failure::usage(format!("-n {n} exceeds the ring size {}", spec.n_sites)));
    }
    let dim = binomial(spec.n_sites, n);
    let limit = match method {
        Method::Analytic => MAX_MANIFOLD,
        Method::Oracle => MAX_DENSE_DIM,
    };
    if dim > limit {
        return Err(Failure::usage(format!(
            "sector dimension C({}, {n}) = {dim} exceeds the {} limit of {limit}",
            spec.n_sites,
            method.name()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------- spectrum

#[derive(Serialize)]
struct SpectrumEntry {
    index: usize,
    labels: Option<Vec<usize>>,
    energy: f64,
}

#[derive(Serialize)]
struct SpectrumPayload {
    excitations: usize,
    method: &'static str,
    count: usize,
    energies: Vec<SpectrumEntry>,
}

pub fn spectrum(ring: &RingArgs, n: usize, method: Method, format: TableFormat) -> Out {
    let spec = ring.resolve()?;
    check_sector(&spec, n, method)?;
    let energies: Vec<SpectrumEntry> = match method {
        Method::Analytic => {
            let mut states = manifold_states(&spec, n)?;
            states.sort_by(|a, b| a.energy().total_cmp(&b.energy()));
            states
                .into_iter()
                .enumerate()
                .map(|(index, s)| SpectrumEntry { index, labels: Some(s.labels().to_vec()), energy: s.energy() })
                .collect()
        }
        Method::Oracle => eig_hermitian(&build_hamiltonian(&spec, n)?)?
            .values
            .into_iter()
            .enumerate()
            .map(|(index, energy)| SpectrumEntry { index, labels: None, energy })
            .collect(),
    };
    match format {
        TableFormat::Json => {
            let payload = SpectrumPayload { excitations: n, method: method.name(), count: energies.len(), energies };
            Ok(Rendered::ok(Envelope::new("spectrum", Some(&spec), payload).pretty()?))
        }
        TableFormat::Csv => {
            let mut csv = Csv::new(&["index", "labels", "energy"])?;
            for e in &energies {
                csv.row([e.index.to_string(), e.labels.as_deref().map(labels).unwrap_or_default(), float(e.energy)])?;
            }
            Ok(Rendered::ok(csv.finish()?))
        }
    }
}

// ---------------------------------------------------------------- ladder

#[derive(Serialize)]
struct LadderState {
    labels: Vec<usize>,
    energy: f64,
    category: Option<&'static str>,
}

#[derive(Serialize)]
struct LadderLevel {
    energy: f64,
    degeneracy: usize,
    mixed: bool,
    bright_coupled: Option<usize>,
    dark_coupled: Option<usize>,
    states: Vec<LadderState>,
}

#[derive(Serialize)]
struct LadderPayload {
    excitations: usize,
    method: &'static str,
    tolerance: f64,
    levels: Vec<LadderLevel>,
}

fn ladder_level(spec: &RingSpec, level: EnergyLevel) -> Result<LadderLevel, Failure> {
    let states = level
        .states
        .iter()
        .map(|s: &ManifoldState| {
            let category = if s.excitations() == 2 { Some(category_name(classify_double(spec, s)?)) } else { None };
            Ok(LadderState { labels: s.labels().to_vec(), energy: s.energy(), category })
        })
        .collect::<Result<_, Failure>>()?;
    Ok(LadderLevel {
        energy: level.energy,
        degeneracy: level.degeneracy,
        mixed: level.is_mixed(),
        bright_coupled: level.categories.map(|c| c.bright_coupled),
        dark_coupled: level.categories.map(|c| c.dark_coupled),
        states,
    })
}

fn render_ascii_ladder(levels: &[LadderLevel]) -> String {
    let mut out = String::new();
    for level in levels.iter().rev() {
        let marks: String = match (level.bright_coupled, level.dark_coupled) {
            (Some(b), Some(d)) => "B".repeat(b) + &"d".repeat(d),
            _ => "o".repeat(level.degeneracy),
        };
        let _ = write!(out, "{:>+12.6} |-- {:<12} x{}", level.energy, marks, level.degeneracy);
        if level.mixed {
            out.push_str("  MIXED");
        }
        out.push('\n');
    }
    out.push_str("legend: B bright-coupled, d dark-coupled, o uncategorised\n");
    out
}

pub fn ladder(ring: &RingArgs, n: usize, method: Method, format: LadderFormat) -> Out {
    let spec = ring.resolve()?;
    check_sector(&spec, n, method)?;
    let levels = energy_ladder(&spec, n, method.into())?
        .into_iter()
        .map(|l| ladder_level(&spec, l))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        LadderFormat::Json => {
            let payload =
                LadderPayload { excitations: n, method: method.name(), tolerance: grouping_tolerance(&spec), levels };
            Ok(Rendered::ok(Envelope::new("ladder", Some(&spec), payload).pretty()?))
        }
        LadderFormat::Csv => {
            let mut csv = Csv::new(&["level", "energy", "degeneracy", "bright_coupled", "dark_coupled", "mixed"])?;
            for (i, l) in levels.iter().enumerate() {
                csv.row([
                    i.to_string(),
                    float(l.energy),
                    l.degeneracy.to_string(),
                    l.bright_coupled.map(|c| c.to_string()).unwrap_or_default(),
                    l.dark_coupled.map(|c| c.to_string()).unwrap_or_default(),
                    l.mixed.to_string(),
                ])?;
            }
            Ok(Rendered::ok(csv.finish()?))
        }
        LadderFormat::Text => Ok(Rendered::ok(render_ascii_ladder(&levels))),
    }
}

// ---------------------------------------------------------------- transitions

#[derive(Serialize)]
struct TransitionRow {
    from_labels: Vec<usize>,
    to_labels: Vec<usize>,
    allowed: bool,
    m: Option<i64>,
    dipole_oracle: f64,
    dipole_closed_form: Option<f64>,
}

#[derive(Serialize)]
struct TransitionsPayload {
    from_excitations: usize,
    to_excitations: usize,
    only_allowed: bool,
    count: usize,
    rows: Vec<TransitionRow>,
}

pub fn transitions(ring: &RingArgs, n: usize, only_allowed: bool, format: TableFormat) -> Out {
    let spec = ring.resolve()?;
    if n == 0 || n >= spec.n_sites {
        return Err(Failure::usage(format!(
            "-n must lie in 1..={} for a {}-site ring",
            spec.n_sites - 1,
            spec.n_sites
        )));
    }
    let pairs = binomial(spec.n_sites, n).saturating_mul(binomial(spec.n_sites, n + 1));
    if pairs > MAX_TRANSITION_ROWS {
        return Err(Failure::usage(format!("{pairs} transition pairs exceed the limit of {MAX_TRANSITION_ROWS}")));
    }
    let rows: Vec<TransitionRow> = transition_table(&spec, n)?
        .into_iter()
        .filter(|r| !only_allowed || r.rule_allowed)
        .map(|r| TransitionRow {
            from_labels: r.from_state.labels().to_vec(),
            to_labels: r.to_state.labels().to_vec(),
            allowed: r.rule_allowed,
            m: r.winding,
            dipole_oracle: r.dipole_oracle,
            dipole_closed_form: r.dipole_closed_form,
        })
        .collect();
    match format {
        TableFormat::Json => {
            let payload = TransitionsPayload {
                from_excitations: n,
                to_excitations: n + 1,
                only_allowed,
                count: rows.len(),
                rows,
            };
            Ok(Rendered::ok(Envelope::new("transitions", Some(&spec), payload).pretty()?))
        }
        TableFormat::Csv => {
            let mut csv =
                Csv::new(&["from_labels", "to_labels", "allowed", "m", "dipole_oracle", "dipole_closed_form"])?;
            for r in &rows {
                csv.row([
                    labels(&r.from_labels),
                    labels(&r.to_labels),
                    r.allowed.to_string(),
                    r.m.map(|m| m.to_string()).unwrap_or_default(),
                    float(r.dipole_oracle),
                    opt_float(r.dipole_closed_form),
                ])?;
            }
            Ok(Rendered::ok(csv.finish()?))
        }
    }
}

// ---------------------------------------------------------------- scan

#[derive(Serialize)]
struct ScanRow {
    n_sites: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicts: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    observed: Option<bool>,
    triples_exist: bool,
    triple_count: usize,
    all_conditions_hold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    triples: Vec<[usize; 3]>,
}

#[derive(Serialize)]
struct ScanPayload {
    n_min: usize,
    n_max: usize,
    triples_only: bool,
    all_agree: Option<bool>,
    rows: Vec<ScanRow>,
}

fn scan_row(n: usize, triples_only: bool) -> Result<ScanRow, Failure> {
    let report = evenly_spaced_triples(n);
    let triples_exist = !report.triples.is_empty();
    let (predicts, observed, agree) = if triples_only {
        (None, None, None)
    } else {
        let predicts = predicts_accidental(n);
        let observed = !find_accidental(&make_uniform_ring(n, 0.0, 1.0)?)?.is_empty();
        let agree = predicts == observed && observed == triples_exist && report.all_hold();
        (Some(predicts), Some(observed), Some(agree))
    };
    Ok(ScanRow {
        n_sites: n,
        predicts,
        observed,
        triples_exist,
        triple_count: report.triples.len(),
        all_conditions_hold: report.all_hold(),
        agree,
        triples: report.triples.iter().map(|t| [t.m1, t.m2, t.m3]).collect(),
    })
}

pub fn scan(n_min: usize, n_max: usize, triples_only: bool, format: TableFormat) -> Out {
    if n_min < 3 || n_max < n_min {
        return Err(Failure::usage(format!("need 3 <= n-min <= n-max, got {n_min}..{n_max}")));
    }
    if n_max > 200 {
        return Err(Failure::usage("n-max above 200 is not supported"));
    }
    let rows = (n_min..=n_max).into_par_iter().map(|n| scan_row(n, triples_only)).collect::<Result<Vec<_>, _>>()?;
    match format {
        TableFormat::Json => {
            let all_agree = (!triples_only).then(|| rows.iter().all(|r| r.agree == Some(true)));
            let payload = ScanPayload { n_min, n_max, triples_only, all_agree, rows };
            Ok(Rendered::ok(Envelope::new("scan", None, payload).pretty()?))
        }
        TableFormat::Csv => {
            let header: &[&str] = if triples_only {
                &["n_sites", "triples_exist", "triple_count", "all_conditions_hold"]
            } else {
                &["n_sites", "predicts", "observed", "triples_exist", "triple_count", "all_conditions_hold", "agree"]
            };
            let mut csv = Csv::new(header)?;
            for r in &rows {
                let mut fields = vec![r.n_sites.to_string()];
                if !triples_only {
                    fields.push(r.predicts.unwrap_or_default().to_string());
                    fields.push(r.observed.unwrap_or_default().to_string());
                }
                fields.push(r.triples_exist.to_string());
                fields.push(r.triple_count.to_string());
                fields.push(r.all_conditions_hold.to_string());
                if !triples_only {
                    fields.push(r.agree.unwrap_or_default().to_string());
                }
                csv.row(fields)?;
            }
            Ok(Rendered::ok(csv.finish()?))
        }
    }
}

// ---------------------------------------------------------------- statediagram

pub fn statediagram(ring: &RingArgs, format: TableFormat) -> Out {
    let spec = ring.resolve()?;
    let diagram = state_diagram(spec.n_sites)?;
    match format {
        TableFormat::Json => Ok(Rendered::ok(Envelope::new("statediagram", Some(&spec), &diagram).pretty()?)),
        TableFormat::Csv => {
            let mut csv = Csv::new(&["set", "label", "re", "im"])?;
            let sets = [("single_excitation", &diagram.single_excitation), ("component", &diagram.component)];
            for (name, points) in sets {
                for p in points {
                    csv.row([name.to_string(), p.label.to_string(), float(p.re), float(p.im)])?;
                }
            }
            Ok(Rendered::ok(csv.finish()?))
        }
    }
}

// ---------------------------------------------------------------- disorder

pub struct DisorderArgs {
    pub mode: DisorderMode,
    pub eta: f64,
    pub spread: f64,
    pub seeds: u64,
    pub seed: u64,
    pub format: DisorderFormat,
}

#[derive(Serialize)]
struct SiteSummary {
    runs: usize,
    max_center_deviation: f64,
    max_center_deviation_over_eta_sq: Option<f64>,
    median_splitting: f64,
}

#[derive(Serialize)]
struct CouplingSummary {
    runs: usize,
    preserved_count: usize,
    all_preserved: bool,
}

#[derive(Serialize)]
struct DisorderPayload<R: Serialize, S: Serialize> {
    mode: &'static str,
    eta: Option<f64>,
    spread: Option<f64>,
    runs: Vec<R>,
    summary: S,
}

#[derive(Serialize)]
struct DisorderLine<'a, R: Serialize> {
    mode: &'static str,
    run: &'a R,
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

fn seed_list(first: u64, count: u64) -> Result<Vec<u64>, Failure> {
    if count == 0 {
        return Err(Failure::usage("--seeds must be at least 1"));
    }
    let last = first.checked_add(count - 1).ok_or_else(|| Failure::usage("seed range overflows u64"))?;
    Ok((first..=last).collect())
}

pub fn disorder(ring: &RingArgs, args: &DisorderArgs) -> Out {
    let seeds = seed_list(args.seed, args.seeds)?;
    match args.mode {
        DisorderMode::Site => {
            let base = ring.resolve()?;
            if !base.is_uniform() {
                return Err(Failure::spec(
                    "site-disorder runs draw δ_j themselves; the base ring must be uniform",
                    vec![],
                ));
            }
            if !predicts_accidental(base.n_sites) {
                return Err(exciton_ring_core::Error::NoAccidentalLevel { n_sites: base.n_sites }.into());
            }
            let runs = seeds
                .par_iter()
                .map(|&s| site_disorder_splitting(&base, args.eta, s))
                .collect::<Result<Vec<DisorderReport>, _>>()?;
            let deviations: Vec<f64> = runs.iter().map(|r| (r.cluster_center - r.predicted_center).abs()).collect();
            let max_dev = deviations.iter().copied().fold(0.0, f64::max);
            let summary = SiteSummary {
                runs: runs.len(),
                max_center_deviation: max_dev,
                max_center_deviation_over_eta_sq: (args.eta > 0.0).then(|| max_dev / (args.eta * args.eta)),
                median_splitting: median(runs.iter().map(|r| r.observed_splitting).collect()),
            };
            match args.format {
                DisorderFormat::Json => {
                    let payload = DisorderPayload { mode: "site", eta: Some(args.eta), spread: None, runs, summary };
                    Ok(Rendered::ok(Envelope::new("disorder", Some(&base), payload).with_seed(args.seed).pretty()?))
                }
                DisorderFormat::Jsonl => jsonl(&base, "site", &runs, |r| r.seed.unwrap_or_default()),
                DisorderFormat::Csv => {
                    let mut csv = Csv::new(&[
                        "seed",
                        "eta",
                        "alpha",
                        "beta_re",
                        "beta_im",
                        "gamma",
                        "predicted_center",
                        "cluster_center",
                        "center_deviation",
                        "observed_splitting",
                    ])?;
                    for (r, dev) in runs.iter().zip(&deviations) {
                        csv.row([
                            r.seed.unwrap_or_default().to_string(),
                            float(r.eta),
                            float(r.alpha),
                            float(r.beta.re),
                            float(r.beta.im),
                            float(r.gamma),
                            float(r.predicted_center),
                            float(r.cluster_center),
                            float(*dev),
                            float(r.observed_splitting),
                        ])?;
                    }
                    Ok(Rendered::ok(csv.finish()?))
                }
            }
        }
        DisorderMode::Coupling => {
            let resolved = ring.resolve()?;
            let base = make_uniform_ring(resolved.n_sites, 0.0, 1.0)?;
            if resolved != base {
                return Err(Failure::usage(
                    "coupling mode draws every S_j around 1 at ω = 0; drop --omega, --coupling and spec-file energies",
                ));
            }
            let runs = seeds
                .par_iter()
                .map(|&s| coupling_disorder_check(base.n_sites, s, args.spread))
                .collect::<Result<Vec<CouplingDisorderOutcome>, _>>()?;
            let preserved_count = runs.iter().filter(|r| r.preserved).count();
            let summary =
                CouplingSummary { runs: runs.len(), preserved_count, all_preserved: preserved_count == runs.len() };
            match args.format {
                DisorderFormat::Json => {
                    let payload =
                        DisorderPayload { mode: "coupling", eta: None, spread: Some(args.spread), runs, summary };
                    Ok(Rendered::ok(Envelope::new("disorder", Some(&base), payload).with_seed(args.seed).pretty()?))
                }
                DisorderFormat::Jsonl => jsonl(&base, "coupling", &runs, |r| r.seed),
                DisorderFormat::Csv => {
                    let mut csv =
                        Csv::new(&["seed", "spread", "expected_degeneracy", "observed_degeneracy", "preserved"])?;
                    for r in &runs {
                        csv.row([
                            r.seed.to_string(),
                            float(r.spread),
                            r.expected_degeneracy.to_string(),
                            r.observed_degeneracy.to_string(),
                            r.preserved.to_string(),
                        ])?;
                    }
                    Ok(Rendered::ok(csv.finish()?))
                }
            }
        }
    }
}

fn jsonl<R: Serialize>(spec: &RingSpec, mode: &'static str, runs: &[R], seed_of: impl Fn(&R) -> u64) -> Out {
    let mut text = String::new();
    for run in runs {
        let line = DisorderLine { mode, run };
        text.push_str(&Envelope::new("disorder", Some(spec), line).with_seed(seed_of(run)).line()?);
    }
    Ok(Rendered::ok(text))
}

// ---------------------------------------------------------------- verify

#[derive(Serialize)]
struct VerifyPayload<'a> {
    n_max: usize,
    passed: bool,
    properties: &'a [PropertyResult],
}

pub fn run_verify(n_max: usize, format: VerifyFormat, fault: Option<InjectedFault>) -> Out {
    if !(3..=12).contains(&n_max) {
        return Err(Failure::usage("--n-max must lie in 3..=12"));
    }
    let options =
        VerifyOptions { n_max, fault: fault.map(|InjectedFault::FlipAmplitudeSign| Fault::FlipAmplitudeSign) };
    let results = verify::run(options)?;
    let passed = verify::all_passed(&results);
    let text = match format {
        VerifyFormat::Json => {
            let payload = VerifyPayload { n_max, passed, properties: &results };
            Envelope::new("verify", None, payload).pretty()?
        }
        VerifyFormat::Text => {
            let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let mut s = String::new();
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{tag}  {:<width$}  {}", r.name, r.detail);
            }
            let _ = writeln!(
                s,
                "{} of {} properties passed (N = 3..={n_max})",
                results.iter().filter(|r| r.passed).count(),
                results.len()
            );
            s
        }
    };
    Ok(Rendered { text, exit_code: if passed { 0 } else { 1 } })
}

// ---------------------------------------------------------------- dump

#[derive(Serialize)]
struct MatrixDump {
    kind: &'static str,
    rows: usize,
    cols: usize,
    row_basis: Vec<Vec<usize>>,
    col_basis: Vec<Vec<usize>>,
    entries: Vec<Vec<Complex64>>,
}

#[derive(Serialize)]
struct StateDump {
    kind: &'static str,
    labels: Vec<usize>,
    excitations: usize,
    energy: f64,
    basis: Vec<Vec<usize>>,
    amplitudes: Vec<Complex64>,
}

pub fn dump(ring: &RingArgs, target: DumpTarget, n: usize, state_labels: Option<Vec<usize>>) -> Out {
    let spec = ring.resolve()?;
    let n_sites = spec.n_sites;
    let text = match target {
        DumpTarget::Hamiltonian => {
            check_sector(&spec, n, Method::Oracle)?;
            let h = build_hamiltonian(&spec, n)?;
            let basis = enumerate_basis(n_sites, n)?.states().to_vec();
            let entries = h.entries().chunks(h.dim().max(1)).map(<[Complex64]>::to_vec).collect();
            let dump = MatrixDump {
                kind: "hamiltonian",
                rows: h.dim(),
                cols: h.dim(),
                row_basis: basis.clone(),
                col_basis: basis,
                entries,
            };
            Envelope::new("dump", Some(&spec), dump).pretty()?
        }
        DumpTarget::Raising => {
            if n >= n_sites {
                return Err(Failure::usage(format!("-n must lie in 0..{n_sites} for the raising map")));
            }
            check_sector(&spec, n + 1, Method::Oracle)?;
            check_sector(&spec, n, Method::Oracle)?;
            let j = raising_matrix(n_sites, n)?;
            let dense = j.to_dense();
            let cols = j.cols();
            let entries =
                dense.chunks(cols.max(1)).map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
            let dump = MatrixDump {
                kind: "raising",
                rows: j.rows(),
                cols,
                row_basis: enumerate_basis(n_sites, n + 1)?.states().to_vec(),
                col_basis: enumerate_basis(n_sites, n)?.states().to_vec(),
                entries,
            };
            Envelope::new("dump", Some(&spec), dump).pretty()?
        }
        DumpTarget::State => {
            let ls = state_labels.ok_or_else(|| Failure::usage("dump state needs --labels, e.g. --labels 3,9"))?;
            check_sector(&spec, ls.len(), Method::Oracle)?;
            let state = ManifoldState::new(&spec, &ls)?;
            let v = to_fock_vector(&state, n_sites)?;
            let dump = StateDump {
                kind: "state",
                labels: state.labels().to_vec(),
                excitations: state.excitations(),
                energy: state.energy(),
                basis: enumerate_basis(n_sites, state.excitations())?.states().to_vec(),
                amplitudes: v.amplitudes().to_vec(),
            };
            Envelope::new("dump", Some(&spec), dump).pretty()?
        }
    };
    Ok(Rendered::ok(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> RingArgs {
        RingArgs { n_sites: Some(n), ..RingArgs::default() }
    }

    #[test]
    fn ascii_ladder_marks_the_mixed_level() {
        let text = ladder(&ring(6), 2, Method::Analytic, LadderFormat::Text).unwrap().text;
        let zero = text.lines().find(|l| l.contains("MIXED")).unwrap();
        assert!(zero.contains("Bdddd") && zero.contains("x5"), "{zero}");
        assert_eq!(text.matches("MIXED").count(), 1);
    }

    #[test]
    fn median_of_even_and_odd_lists() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn oversized_sectors_are_refused() {
        let err = spectrum(&ring(22), 11, Method::Oracle, TableFormat::Json).err().unwrap();
        assert_eq!(err.kind, crate::output::FailureKind::Usage);
    }
}
