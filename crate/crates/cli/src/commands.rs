use std::path::{Path, PathBuf};

use sawtooth_core::channels::{bandedness, kraus_decompose, Superoperator};
use sawtooth_core::diagnostics::{
    baseline_offset, fwhm, localization_estimates, second_moment, FwhmMethod, MomentumDistribution,
};
use sawtooth_core::emulation::{
    ensemble_iterated_channel, pseudopure_state, simulate, BinSeries, ErrorStack, RfBin,
};
use sawtooth_core::sawtooth::{build_sawtooth, classical_ensemble, iterate_unitary, sawtooth_circuit};
use sawtooth_core::tensor::ComplexMatrix;

use crate::config::Settings;
use crate::error::CliResult;
use crate::output::{ensure_dir, momentum_headers, num, write_file, RunManifest, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum QuantumMode {
    Ideal,
    Circuit,
    Noisy,
}

impl QuantumMode {
    pub fn name(self) -> &'static str {
        match self {
            QuantumMode::Ideal => "ideal",
            QuantumMode::Circuit => "circuit",
            QuantumMode::Noisy => "noisy",
        }
    }
}

fn finish(out: &Path, scenario: &str, mode: Option<&str>, settings: &Settings, files: Vec<(PathBuf, String)>) -> CliResult<Vec<PathBuf>> {
    ensure_dir(out)?;
    let mut written: Vec<PathBuf> = Vec::new();
    for (path, text) in &files {
        write_file(path, text)?;
        written.push(path.clone());
    }
    let manifest = out.join(format!("{scenario}.manifest.toml"));
    RunManifest::new(scenario, mode, settings, &written).write(&manifest)?;
    written.push(manifest);
    Ok(written)
}

fn series_table(series: &[MomentumDistribution<f64>], settings: &Settings) -> Table {
    let dim = settings.experiment.params.dim();
    let mut header = vec![
        "t".to_string(),
        "second_moment".into(),
        "fwhm".into(),
        "fwhm_interpolated".into(),
        "baseline".into(),
    ];
    header.extend(momentum_headers(dim));
    let mut table = Table::new(&header);
    for (t, w) in series.iter().enumerate() {
        let mut row = vec![
            t.to_string(),
            num(second_moment(w, 0, settings.metric)),
            num(fwhm(w, settings.fwhm)),
            num(fwhm(w, FwhmMethod::Interpolated)),
            num(baseline_offset(w)),
        ];
        row.extend(w.values().iter().map(|&x| num(x)));
        table.row(row);
    }
    table
}

/// Histogram series of the classical ensemble.
pub fn run_classical(settings: &Settings, parallel: bool, out: &Path) -> CliResult<Vec<PathBuf>> {
    let e = &settings.experiment;
    let h = classical_ensemble(
        &e.params,
        settings.trajectories,
        settings.classical_iterations,
        e.seed,
        parallel,
    )?;
    let dim = e.params.dim();
    let mut header = vec!["t".to_string(), "second_moment".into()];
    header.extend(momentum_headers(dim));
    let mut table = Table::new(&header);
    for t in 0..=h.iterations() {
        let w = h.distribution::<f64>(t)?;
        let mut row = vec![t.to_string(), num(second_moment(&w, 0, settings.metric))];
        row.extend(w.values().iter().map(|&x| num(x)));
        table.row(row);
    }
    let files = vec![(out.join("classical.csv"), table.as_str().to_string())];
    finish(out, "classical", None, settings, files)
}

/// Momentum distributions and diagnostics per iteration of the quantum map.
pub fn run_quantum(
    settings: &Settings,
    mode: QuantumMode,
    per_bin: bool,
    parallel: bool,
    out: &Path,
) -> CliResult<Vec<PathBuf>> {
    let e = &settings.experiment;
    let scenario = format!("quantum_{}", mode.name());
    let mut files = Vec::new();
    let series = match mode {
        QuantumMode::Ideal | QuantumMode::Circuit => {
            let u = if mode == QuantumMode::Ideal {
                build_sawtooth(&e.params, true)
            } else {
                sawtooth_circuit(&e.params, true).to_matrix()
            };
            let target = e.params.index_of(e.initial_momentum);
            let rho = pseudopure_state(e.params.n_qubits(), target, e.polarization)?;
            iterate_unitary(&rho, &u, e.iterations)?
        }
        QuantumMode::Noisy => {
            let sim = simulate(e, e.iterations, parallel)?;
            if per_bin {
                files.push((out.join(format!("{scenario}_bins.csv")), bin_table(&sim.bins, settings)));
            }
            sim.ensemble
        }
    };
    files.insert(0, (out.join(format!("{scenario}.csv")), series_table(&series, settings).as_str().to_string()));
    finish(out, &scenario, Some(mode.name()), settings, files)
}

fn bin_table(bins: &[BinSeries<f64>], settings: &Settings) -> String {
    let dim = settings.experiment.params.dim();
    let joint = bins.first().is_some_and(|b| b.bin.scales.len() == 2);
    let mut header = vec!["bin".to_string()];
    if joint {
        header.extend(["scale_c".to_string(), "scale_h".into()]);
    } else {
        header.push("scale".into());
    }
    header.extend(["probability", "t", "second_moment", "fwhm", "baseline"].map(String::from));
    header.extend(momentum_headers(dim));
    let mut table = Table::new(&header);
    for (i, b) in bins.iter().enumerate() {
        let RfBin { scales, probability } = &b.bin;
        for (t, w) in b.series.iter().enumerate() {
            let mut row = vec![i.to_string()];
            row.extend(scales.iter().map(|&s| num(s)));
            row.extend([
                num(*probability),
                t.to_string(),
                num(second_moment(w, 0, settings.metric)),
                num(fwhm(w, settings.fwhm)),
                num(baseline_offset(w)),
            ]);
            row.extend(w.values().iter().map(|&x| num(x)));
            table.row(row);
        }
    }
    table.as_str().to_string()
}

/// Kraus and bandedness summary of one error-stack variant after `t` iterations.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelReport {
    pub variant: ErrorStack,
    pub iterations: usize,
    pub superoperator: Superoperator<f64>,
    pub leading: ComplexMatrix<f64>,
    pub magnitudes: Vec<f64>,
    pub bandedness: f64,
    pub zero: bool,
    pub trace_defect: f64,
}

pub fn analyze_variant(settings: &Settings, variant: ErrorStack, t: usize) -> CliResult<ChannelReport> {
    let cfg = settings.experiment.with_noise(variant.toggles());
    let s = ensemble_iterated_channel(&cfg, t)?;
    let k = kraus_decompose(&s)?;
    let leading = k
        .leading()
        .map(|op| op.matrix.clone())
        .unwrap_or_else(|| ComplexMatrix::zeros(s.dim(), s.dim()));
    let b = bandedness(&leading, settings.band_width)?;
    Ok(ChannelReport {
        variant,
        iterations: t,
        trace_defect: s.trace_preservation_defect(),
        superoperator: s,
        leading,
        magnitudes: k.magnitudes(),
        bandedness: b.ratio,
        zero: b.zero,
    })
}

fn modulus_table(m: &ComplexMatrix<f64>) -> String {
    let mut header = vec!["row".to_string()];
    header.extend((0..m.cols()).map(|j| format!("c{j}")));
    let mut table = Table::new(&header);
    for i in 0..m.rows() {
        let mut row = vec![i.to_string()];
        row.extend((0..m.cols()).map(|j| num(m[(i, j)].norm())));
        table.row(row);
    }
    table.as_str().to_string()
}

pub fn analyze_all(settings: &Settings) -> CliResult<Vec<ChannelReport>> {
    let mut reports = Vec::new();
    for t in 1..=settings.analysis_iterations {
        for v in ErrorStack::ORDER {
            reports.push(analyze_variant(settings, v, t)?);
        }
    }
    Ok(reports)
}

/// Superoperators, leading Kraus operators and bandedness for the five
/// error stacks at every iteration count up to the configured one.
pub fn run_analyze(settings: &Settings, out: &Path) -> CliResult<Vec<PathBuf>> {
    let reports = analyze_all(settings)?;
    let mut summary = Table::new(&[
        "variant",
        "t",
        "kraus_count",
        "leading_magnitude",
        "band_width",
        "bandedness",
        "zero_matrix",
        "trace_defect",
    ]);
    let mut mags = Table::new(&["variant", "t", "rank", "magnitude"]);
    let mut files = Vec::new();
    for r in &reports {
        let label = r.variant.label();
        summary.row(vec![
            label.to_string(),
            r.iterations.to_string(),
            r.magnitudes.len().to_string(),
            num(r.magnitudes.first().copied().unwrap_or(0.0)),
            settings.band_width.to_string(),
            num(r.bandedness),
            r.zero.to_string(),
            num(r.trace_defect),
        ]);
        for (k, m) in r.magnitudes.iter().enumerate() {
            mags.row(vec![label.to_string(), r.iterations.to_string(), k.to_string(), num(*m)]);
        }
        let stem = format!("{}_t{}", label.replace('+', "-"), r.iterations);
        files.push((out.join(format!("superop_{stem}.csv")), modulus_table(r.superoperator.matrix())));
        files.push((out.join(format!("kraus_{stem}.csv")), modulus_table(&r.leading)));
    }
    files.insert(0, (out.join("analysis_magnitudes.csv"), mags.as_str().to_string()));
    files.insert(0, (out.join("analysis.csv"), summary.as_str().to_string()));
    finish(out, "analysis", None, settings, files)
}

/// `key = value` lines with the derived map parameters.
pub fn estimate_report(settings: &Settings) -> String {
    let p = &settings.experiment.params;
    let e = localization_estimates(p);
    format!(
        "K = {}\nL = {}\nN = {}\nT = {}\nk = {}\nD = {}\nt_star = {}\nxi = {}\nperturbative = {}\n",
        p.chaos(),
        p.windings(),
        p.dim(),
        e.period,
        e.kick_strength,
        e.diffusion,
        e.onset_time,
        e.localization_length,
        e.perturbative
    )
}
