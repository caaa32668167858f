//! Acceptance suite. Prints one PASS/FAIL line per criterion and a summary.
//!
//! By default the run is a report and exits successfully so the rest of the
//! workspace tests still run; pass `--strict` to exit nonzero when any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rydeit_cli::presets::{run_preset, Preset, FIG3_LINECUTS, FIG4_GAMMA_R, FIG4_V};
use rydeit_cli::run::Artifact;
use rydeit_cli::scan::{run_jobs, ScanTable};
use rydeit_core::dynamics::{evolve, reachable_steady_state, steady_state, DensityMatrix, Liouvillian};
use rydeit_core::model::{
    build_effective_hamiltonian, build_jump_operators, derive_effective_params, Basis, Jump, Level, RawParams,
};
use rydeit_core::numerics::{ComplexMatrix, OdeOptions, C64};
use rydeit_core::spectra::{
    dressed_pair, find_peaks, fwhm, local_minimum, predict_for, reconcile, scan_spectrum, Grid, Spectrum,
    DEFAULT_PROMINENCE_FRACTION,
};
use rydeit_core::validator::compare_models;

const SEED: u64 = 20_261_016;
const RANDOM_SETS: usize = 100;
const TRACE_TOL: f64 = 1e-9;
const HERMITIAN_TOL: f64 = 1e-9;
const MIN_EIGENVALUE: f64 = -1e-8;
const TRACE_DISTANCE_TOL: f64 = 1e-6;
const BLOCH_TOL: f64 = 1e-10;
const GRID_STEP: f64 = 0.005;
const DOUBLET_TOL: f64 = 0.01;
/// Transparency point quoted for the single-atom spectrum.
const EIT_MINIMUM_QUOTED: f64 = -0.39;
const FWHM_CHANGE: f64 = 0.10;
const LINE_TOL: f64 = 0.08;
const MERGE_LINEWIDTHS: f64 = 2.0;
const CENTRE_SHIFT: f64 = 0.005;
const CENTRE_CONTRAST: f64 = 10.0;
const GAP_TOL: f64 = 0.02;
const GAP_SHRINK: f64 = 2.0;
const DARK_TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn fail(detail: impl std::fmt::Display) -> Outcome {
    outcome(false, format!("error: {detail}"))
}

type Check = rydeit_core::Result<Outcome>;

fn reference() -> RawParams {
    RawParams::default()
}

fn physicality(rho: &DensityMatrix) -> (f64, f64, f64) {
    let m = rho.matrix();
    let n = rho.dim();
    let mut trace = C64::new(0.0, 0.0);
    let mut herm = 0.0_f64;
    for i in 0..n {
        trace += m[(i, i)];
        for j in 0..n {
            herm = herm.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    ((trace - 1.0).norm(), herm, rho.min_eigenvalue())
}

fn random_params(rng: &mut ChaCha8Rng) -> (RawParams, f64) {
    let omega_c = rng.random_range(10.0..30.0);
    let delta_c = rng.random_range(800.0..1200.0);
    let raw = RawParams {
        omega_p1: C64::new(rng.random_range(0.5..2.0), 0.0),
        omega_p2: C64::new(rng.random_range(0.5..2.0), 0.0),
        omega_c1: C64::new(omega_c, 0.0),
        omega_c2: C64::new(omega_c * rng.random_range(0.8..1.2), 0.0),
        delta_p2: rng.random_range(40.0..80.0),
        delta_c1: delta_c,
        delta_c2: delta_c,
        gamma_ec: rng.random_range(1.0..6.0),
        gamma_ep: rng.random_range(1.0..6.0),
        gamma_r: rng.random_range(0.05..0.5),
        ..RawParams::default()
    }
    .with_v(rng.random_range(0.0..5.0));
    (raw, rng.random_range(-2.0..2.0))
}

fn pair_system(raw: &RawParams, delta_p: f64) -> rydeit_core::Result<(ComplexMatrix, Vec<Jump>)> {
    let eff = derive_effective_params(raw, delta_p)?;
    Ok((build_effective_hamiltonian(&eff, raw.v(), raw.coupling_on_control), build_jump_operators(&eff)))
}

fn start_index() -> usize {
    Basis::EFFECTIVE_PAIR.index(&[Level::Gp, Level::Gc]).expect("start state exists")
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut worst_trace, mut worst_herm, mut lowest) = (0.0_f64, 0.0_f64, f64::INFINITY);
    let mut states = 0;
    for _ in 0..RANDOM_SETS {
        let (raw, delta_p) = random_params(&mut rng);
        assert!(raw.dispersive_ratio() < 0.1);
        let (h, jumps) = pair_system(&raw, delta_p)?;
        let mut checked = vec![reachable_steady_state(&h, &jumps, start_index(), Some(Basis::EFFECTIVE_PAIR))?];
        let l = Liouvillian::build(&h, &jumps)?;
        let rho0 = DensityMatrix::basis_state(Basis::EFFECTIVE_PAIR, start_index());
        let times = [0.1, 0.5, 1.0, 2.0, 5.0];
        checked.extend(evolve(&rho0, &l, (0.0, 5.0), &times, &OdeOptions::default())?.states);
        for rho in &checked {
            let (t, hm, e) = physicality(rho);
            worst_trace = worst_trace.max(t);
            worst_herm = worst_herm.max(hm);
            lowest = lowest.min(e);
            states += 1;
        }
    }
    let pass = worst_trace <= TRACE_TOL && worst_herm <= HERMITIAN_TOL && lowest >= MIN_EIGENVALUE;
    Ok(outcome(
        pass,
        format!(
            "{RANDOM_SETS} parameter sets, {states} states; max |tr-1| {worst_trace:.1e}, max hermiticity defect {worst_herm:.1e}, min eigenvalue {lowest:.1e}"
        ),
    ))
}

fn criterion_2() -> Check {
    let raw = reference();
    let mut worst = 0.0_f64;
    let mut parts = Vec::new();
    for (v, delta_p) in [(0.0, -0.81), (0.5, -0.81), (1.5, -0.81)] {
        let raw = raw.clone().with_v(v);
        let (h, jumps) = pair_system(&raw, delta_p)?;
        let eff = derive_effective_params(&raw, delta_p)?;
        let ss = reachable_steady_state(&h, &jumps, start_index(), Some(Basis::EFFECTIVE_PAIR))?;
        let t = 50.0 / eff.gamma_r2c;
        let l = Liouvillian::build(&h, &jumps)?;
        let rho0 = DensityMatrix::basis_state(Basis::EFFECTIVE_PAIR, start_index());
        let traj = evolve(&rho0, &l, (0.0, t), &[t], &OdeOptions::with_tolerances(1e-10, 1e-12))?;
        let d = traj.last().expect("one sample").trace_distance(&ss)?;
        worst = worst.max(d);
        parts.push(format!("v={v}: {d:.1e}"));
    }
    Ok(outcome(worst < TRACE_DISTANCE_TOL, format!("trace distance at t=50/Gamma_rc2 ({})", parts.join(", "))))
}

/// Closed-form steady state of a driven two-level system with levels
/// `(g, r)`, `H = eps |g><g| + lam (|g><r| + |r><g|)` and decay `r -> g`.
fn bloch_oracle(lam: f64, eps: f64, gamma: f64) -> [[C64; 2]; 2] {
    let p_r = lam * lam / (eps * eps + gamma * gamma / 4.0 + 2.0 * lam * lam);
    let w = 1.0 - 2.0 * p_r;
    let rho_rg = C64::new(0.0, lam * w) / C64::new(-gamma / 2.0, eps);
    [[C64::new(1.0 - p_r, 0.0), rho_rg.conj()], [rho_rg, C64::new(p_r, 0.0)]]
}

fn criterion_3() -> Check {
    let gamma = 0.5;
    let mut worst = 0.0_f64;
    for lam in [0.05, 0.2, 0.5, 1.0, 2.0] {
        for eps in [-1.5, -0.4, 0.0, 0.3, 2.0] {
            let h = ComplexMatrix::from_real_rows(&[&[eps, lam], &[lam, 0.0]]);
            let jump = Jump { operator: ComplexMatrix::ket_bra(2, 0, 1), rate: gamma };
            let rho = steady_state(&Liouvillian::build(&h, &[jump])?, None)?;
            let want = bloch_oracle(lam, eps, gamma);
            for (i, row) in want.iter().enumerate() {
                for (j, w) in row.iter().enumerate() {
                    worst = worst.max((rho.matrix()[(i, j)] - w).norm());
                }
            }
        }
    }
    Ok(outcome(worst < BLOCH_TOL, format!("5x5 (lambda, eps) grid, max element error {worst:.1e}")))
}

fn single_atom(omega_p: f64) -> RawParams {
    RawParams { coupling_on_control: false, ..reference().with_probe(omega_p) }
}

fn criterion_4() -> Check {
    let grid = Grid::new(-2.0, 2.0, GRID_STEP).expect("valid grid").points();
    let strong = scan_spectrum(&single_atom(1.0), &grid, 0.0)?;
    let weak = scan_spectrum(&single_atom(0.2), &grid, 0.0)?;
    let pred = predict_for(&single_atom(1.0), 0.0)?;
    let peaks = find_peaks(&strong, DEFAULT_PROMINENCE_FRACTION)?;
    let nearest = |x: f64, list: &[rydeit_core::spectra::Peak]| {
        list.iter().min_by(|a, b| (a.detuning - x).abs().total_cmp(&(b.detuning - x).abs())).copied()
    };

    let mut doublet_err = 0.0_f64;
    let mut found = Vec::new();
    for line in &pred.at_doublet {
        match nearest(line.detuning, &peaks) {
            Some(p) => {
                doublet_err = doublet_err.max((p.detuning - line.detuning).abs());
                found.push(p);
            }
            None => doublet_err = f64::INFINITY,
        }
    }
    let doublet_ok = doublet_err <= DOUBLET_TOL;

    let (lo, hi) = (pred.at_doublet[0].detuning.min(pred.at_doublet[1].detuning), pred.at_doublet[0].detuning.max(pred.at_doublet[1].detuning));
    let (eit_at, _) = local_minimum(&strong, 0.5 * (lo + hi), 0.5 * (hi - lo))?;
    let eit_ok = (eit_at - EIT_MINIMUM_QUOTED).abs() <= GRID_STEP + 1e-12;

    let weak_peaks = find_peaks(&weak, DEFAULT_PROMINENCE_FRACTION)?;
    let mut width_change = 0.0_f64;
    let mut widths = Vec::new();
    for p in &found {
        let q = nearest(p.detuning, &weak_peaks).ok_or(rydeit_core::Error::EmptySpectrum)?;
        match (fwhm(&strong, p.index), fwhm(&weak, q.index)) {
            (Some(ws), Some(ww)) => {
                width_change = width_change.max((ws - ww).abs() / ww);
                widths.push(format!("{ww:.4}->{ws:.4}"));
            }
            _ => width_change = f64::INFINITY,
        }
    }
    let width_ok = width_change < FWHM_CHANGE;

    Ok(outcome(
        doublet_ok && eit_ok && width_ok,
        format!(
            "doublet error {doublet_err:.4} (<= {DOUBLET_TOL}) {}; EIT minimum {eit_at:.3} vs {EIT_MINIMUM_QUOTED} (one step) {}, predicted centre {:.3}; FWHM Omega_p 0.2->1.0 [{}] max change {:.1}% (< 10%) {}",
            ok(doublet_ok),
            ok(eit_ok),
            pred.eit_center,
            widths.join(", "),
            100.0 * width_change,
            ok(width_ok)
        ),
    ))
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "MISS"
    }
}

/// Interaction linecuts of the interaction map, by value.
struct Linecuts {
    spectra: Vec<(f64, Spectrum)>,
}

impl Linecuts {
    fn from_map(map: &ScanTable) -> rydeit_core::Result<Self> {
        let mut spectra = Vec::new();
        for v in FIG3_LINECUTS {
            let cut = map.linecut(v, "cut.csv");
            let spec = cut.spectrum(0).map_err(|e| rydeit_core::Error::InvalidParams(e.to_string()))?;
            spectra.push((v, spec));
        }
        Ok(Linecuts { spectra })
    }

}

fn matched_peaks(spec: &Spectrum, v: f64) -> rydeit_core::Result<(rydeit_core::spectra::MatchReport, Vec<rydeit_core::spectra::Peak>)> {
    let raw = reference();
    let pred = predict_for(&raw, v)?;
    let peaks = find_peaks(spec, DEFAULT_PROMINENCE_FRACTION)?;
    let report = reconcile(&pred.eight_lines, &peaks, LINE_TOL, MERGE_LINEWIDTHS * raw.gamma_r);
    Ok((report, peaks))
}

/// Spectrum at v = 1.5 on a window wide enough for all eight lines.
fn eight_line_spectrum() -> rydeit_core::Result<Spectrum> {
    let raw = reference();
    let lines = predict_for(&raw, 1.5)?.eight_lines;
    let lo = lines.iter().map(|l| l.detuning).fold(f64::INFINITY, f64::min);
    let hi = lines.iter().map(|l| l.detuning).fold(f64::NEG_INFINITY, f64::max);
    let snap = |x: f64| (x / GRID_STEP).round() * GRID_STEP;
    let grid = Grid::new(snap(lo - 0.5), snap(hi + 0.5), GRID_STEP)?;
    scan_spectrum(&raw, &grid.points(), 1.5)
}

fn criterion_5(wide: &Spectrum) -> Check {
    let (report, peaks) = matched_peaks(wide, 1.5)?;
    let matched = report.lines.len() - report.unmatched_lines;
    let missing: Vec<String> = report
        .lines
        .iter()
        .filter(|l| l.peak.is_none())
        .map(|l| format!("{} at {:.3}", l.label, l.predicted))
        .collect();
    let merged = report.lines.iter().filter(|l| l.merged).count();
    let residual = report.max_residual().unwrap_or(f64::NAN);
    let peaks_at: Vec<String> = peaks.iter().map(|p| format!("{:.3}", p.detuning)).collect();
    Ok(outcome(
        report.all_matched(),
        format!(
            "v=1.5: {matched}/8 lines within {LINE_TOL} ({merged} merged, max residual {residual:.3}); unmatched [{}]; peaks [{}]",
            missing.join(", "),
            peaks_at.join(", ")
        ),
    ))
}

fn criterion_6(cuts: &Linecuts, wide: &Spectrum) -> Check {
    let raw = reference();
    let mut minima = Vec::new();
    for (v, spec) in &cuts.spectra {
        let centre = predict_for(&raw, *v)?.eit_center;
        let (at, _) = local_minimum(spec, centre, 0.1)?;
        let k = ((at - spec.detunings[0]) / GRID_STEP).round() as usize;
        minima.push((*v, at, spec.populations[k]));
    }
    let positions: Vec<f64> = minima.iter().map(|m| m.1).collect();
    let shift = positions.iter().copied().fold(f64::MIN, f64::max) - positions.iter().copied().fold(f64::MAX, f64::min);
    let (report, peaks) = matched_peaks(wide, 1.5)?;
    let smallest = report
        .lines
        .iter()
        .filter_map(|l| l.peak)
        .map(|k| peaks[k].height)
        .fold(f64::INFINITY, f64::min);
    let floor = minima.iter().find(|m| m.0 == 1.5).expect("v=1.5 cut").2;
    let shift_ok = shift < CENTRE_SHIFT;
    let contrast_ok = floor * CENTRE_CONTRAST <= smallest;
    let listed: Vec<String> = minima.iter().map(|(v, at, _)| format!("v={v}: {at:.4}")).collect();
    Ok(outcome(
        shift_ok && contrast_ok,
        format!(
            "minimum positions [{}], spread {shift:.4} (< {CENTRE_SHIFT}) {}; v=1.5 floor {floor:.2e} vs smallest matched peak {smallest:.2e} (needs floor x{CENTRE_CONTRAST} <= peak) {}",
            listed.join(", "),
            ok(shift_ok),
            ok(contrast_ok)
        ),
    ))
}

fn criterion_7(cuts: &Linecuts) -> Check {
    let maxima: Vec<(f64, f64)> =
        cuts.spectra.iter().map(|(v, s)| (*v, s.max().map_or(f64::NAN, |m| m.1))).collect();
    let decreasing = maxima.windows(2).all(|w| w[1].1 < w[0].1);
    let listed: Vec<String> = maxima.iter().map(|(v, m)| format!("v={v}: {m:.4}")).collect();
    Ok(outcome(decreasing, format!("global maxima [{}]", listed.join(", "))))
}

fn criterion_8() -> Check {
    let jobs = Preset::Fig4.jobs(&reference());
    let tables = run_jobs(&jobs, rydeit_cli::scan::resolve_workers(None, None))
        .map_err(|e| rydeit_core::Error::InvalidParams(e.to_string()))?;
    let gamma_index = |g: f64| FIG4_GAMMA_R.iter().position(|&x| x == g).expect("preset rate");
    let (sharp, broad) = (&tables[gamma_index(0.01)], &tables[gamma_index(0.1)]);
    let spectrum = |t: &ScanTable, row: usize| t.spectrum(row).map_err(|e| rydeit_core::Error::InvalidParams(e.to_string()));
    let mut pass = true;
    let mut parts = Vec::new();
    for (row, v) in FIG4_V.iter().enumerate() {
        let a = spectrum(sharp, row)?.max().map_or(f64::NAN, |m| m.1);
        let b = spectrum(broad, row)?.max().map_or(f64::NAN, |m| m.1);
        pass &= a > b;
        parts.push(format!("v={v}: max {a:.4} (gamma_r 0.01) vs {b:.4} (0.1)"));
    }
    let row4 = FIG4_V.iter().position(|&v| v == 4.0).expect("v=4 row");
    let n_sharp = find_peaks(&spectrum(sharp, row4)?, DEFAULT_PROMINENCE_FRACTION)?.len();
    let n_broad = find_peaks(&spectrum(broad, row4)?, DEFAULT_PROMINENCE_FRACTION)?.len();
    pass &= n_sharp >= n_broad;
    parts.push(format!("v=4 peaks {n_sharp} vs {n_broad}"));
    Ok(outcome(pass, parts.join("; ")))
}

fn criterion_9() -> Check {
    let base = reference();
    let scaled = RawParams {
        omega_p1: base.omega_p1 * 2.0,
        omega_p2: base.omega_p2 * 2.0,
        omega_c1: base.omega_c1 * 2.0,
        omega_c2: base.omega_c2 * 2.0,
        delta_p2: base.delta_p2 * 4.0,
        delta_c1: base.delta_c1 * 4.0,
        delta_c2: base.delta_c2 * 4.0,
        ..base.clone()
    };
    let a = compare_models(&base, -0.81, 1.5, 10.0)?;
    let b = compare_models(&scaled, -0.81, 1.5, 10.0)?;
    let shrink = a.max_abs_population_gap / b.max_abs_population_gap;
    let gap_ok = a.max_abs_population_gap < GAP_TOL;
    let shrink_ok = shrink >= GAP_SHRINK;
    Ok(outcome(
        gap_ok && shrink_ok,
        format!(
            "delta_p=-0.81, v=1.5, 10 us: gap {:.4} (< {GAP_TOL}) {}; scaled gap {:.4}, shrink x{shrink:.2} (>= {GAP_SHRINK}) {}",
            a.max_abs_population_gap,
            ok(gap_ok),
            b.max_abs_population_gap,
            ok(shrink_ok)
        ),
    ))
}

fn criterion_10() -> Check {
    let mut eff = derive_effective_params(&reference(), 0.0)?;
    eff.eps_c = 0.0;
    eff.eps_c2 = 0.0;
    let mut worst = 0.0_f64;
    let mut missing = 0;
    let n = 1000;
    for k in 0..=n {
        let v = 10.0 * k as f64 / n as f64;
        let pair = dressed_pair(&eff, v)?;
        match pair.dark_state(DARK_TOL) {
            Some(j) => worst = worst.max(pair.energies[j].abs()),
            None => missing += 1,
        }
    }
    Ok(outcome(
        missing == 0 && worst < DARK_TOL,
        format!("{} values of v in [0, 10]: dark state missing at {missing}, max |E| {worst:.1e}", n + 1),
    ))
}

fn table_bytes(artifacts: &[Artifact]) -> Vec<(String, String)> {
    artifacts.iter().filter(|a| a.file.ends_with(".csv")).map(|a| (a.file.clone(), a.contents.clone())).collect()
}

fn main() -> ExitCode {
    let suite = Instant::now();
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut report = |n: usize, o: Outcome, started: Instant| {
        println!(
            "criterion {n:>2}: {} {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            started.elapsed().as_secs_f64()
        );
        results.push((n, o));
    };

    let checks: [(usize, fn() -> Check); 4] = [(1, criterion_1), (2, criterion_2), (3, criterion_3), (4, criterion_4)];
    for (n, f) in checks {
        let t = Instant::now();
        report(n, f().unwrap_or_else(fail), t);
    }

    let t = Instant::now();
    let one = run_preset(Preset::Fig3, &reference(), 1, false);
    let eight = run_preset(Preset::Fig3, &reference(), 8, false);
    let fig3_time = t.elapsed();
    match (&one, &eight) {
        (Ok(a), Ok(b)) => {
            let map = run_jobs(&Preset::Fig3.jobs(&reference()), 8).expect("scan succeeded above");
            let cuts = Linecuts::from_map(&map[0]);
            match cuts {
                Ok(cuts) => {
                    let t = Instant::now();
                    match eight_line_spectrum() {
                        Ok(wide) => {
                            report(5, criterion_5(&wide).unwrap_or_else(fail), t);
                            let t = Instant::now();
                            report(6, criterion_6(&cuts, &wide).unwrap_or_else(fail), t);
                        }
                        Err(e) => {
                            report(5, fail(&e), t);
                            report(6, fail(&e), t);
                        }
                    }
                    let t = Instant::now();
                    report(7, criterion_7(&cuts).unwrap_or_else(fail), t);
                }
                Err(e) => {
                    for n in 5..=7 {
                        report(n, fail(&e), Instant::now());
                    }
                }
            }
            for (n, f) in [(8, criterion_8 as fn() -> Check), (9, criterion_9), (10, criterion_10)] {
                let t = Instant::now();
                report(n, f().unwrap_or_else(fail), t);
            }
            let (ta, tb) = (table_bytes(&a.artifacts), table_bytes(&b.artifacts));
            let same = ta == tb && !ta.is_empty();
            let rows = ta.iter().find(|(f, _)| f == "fig3.csv").map_or(0, |(_, c)| c.lines().count() - 1);
            let detail = format!(
                "fig3 preset, {} CSV files ({rows} rows in fig3.csv), 1 vs 8 workers byte-identical: {same} ({:.1}s for both runs)",
                ta.len(),
                fig3_time.as_secs_f64()
            );
            report(11, outcome(same, detail), Instant::now());
        }
        (Err(e), _) | (_, Err(e)) => {
            for n in 5..=7 {
                report(n, fail(e), Instant::now());
            }
            for (n, f) in [(8, criterion_8 as fn() -> Check), (9, criterion_9), (10, criterion_10)] {
                let t = Instant::now();
                report(n, f().unwrap_or_else(fail), t);
            }
            report(11, fail(e), Instant::now());
        }
    }

    results.sort_by_key(|r| r.0);
    let passed = results.iter().filter(|r| r.1.pass).count();
    let failed: Vec<String> = results.iter().filter(|r| !r.1.pass).map(|r| r.0.to_string()).collect();
    println!(
        "acceptance: {passed}/{} criteria passed{} in {:.1}s",
        results.len(),
        if failed.is_empty() { String::new() } else { format!(", failed: {}", failed.join(", ")) },
        suite.elapsed().as_secs_f64()
    );
    let strict = std::env::args().any(|a| a == "--strict");
    if failed.is_empty() || !strict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
