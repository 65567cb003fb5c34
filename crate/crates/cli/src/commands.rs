//! The five subcommands, each producing CSV bytes.

use std::path::PathBuf;

use rayon::prelude::*;

use ptdimer_core::epfinder::{scan_eps, trace_boundary, BoundaryPlane};
use ptdimer_core::spectra::{
    cardano_spectrum, closed_form_spectrum, cubic_energies, oracle_spectrum, Spectrum,
};
use ptdimer_core::{build_hamiltonian, Complex64};

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::output::{branch_path, num, Table};
use crate::track::track;

/// Where the rendered CSV goes.
#[derive(Debug, PartialEq)]
pub enum Output {
    Stdout(Vec<u8>),
    Files(Vec<(PathBuf, Vec<u8>)>),
}

pub fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    if cfg.command == Command::Boundary {
        return boundary(cfg);
    }
    let table = match cfg.command {
        Command::Matrix => matrix(cfg),
        Command::Spectrum => spectrum(cfg)?,
        Command::Sweep => sweep(cfg)?,
        Command::FindEp => find_ep(cfg)?,
        Command::Boundary => unreachable!("handled above"),
    };
    Ok(match &cfg.out {
        Some(path) => Output::Files(vec![(path.clone(), table.render())]),
        None => Output::Stdout(table.render()),
    })
}

fn complex_cells(z: Complex64) -> [String; 2] {
    [num(z.re), num(z.im)]
}

fn matrix(cfg: &RunConfig) -> Table {
    let h = build_hamiltonian(&cfg.params);
    let mut table = Table::new(cfg.echo(), &["row", "col", "re", "im"]);
    for (i, row) in h.entries().iter().enumerate() {
        for (j, &z) in row.iter().enumerate() {
            let [re, im] = complex_cells(z);
            table.push(vec![(i + 1).to_string(), (j + 1).to_string(), re, im]);
        }
    }
    table
}

fn spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut spectra: Vec<Spectrum> = vec![cardano_spectrum(&cfg.params)];
    spectra.push(oracle_spectrum(&build_hamiltonian(&cfg.params))?);
    if cfg.params.gamma() == 0.0 {
        spectra.push(closed_form_spectrum(&cfg.params)?);
    }
    let mut table = Table::new(cfg.echo(), &["method", "re", "im"]);
    for s in &spectra {
        for &z in s.values() {
            let [re, im] = complex_cells(z);
            table.push(vec![s.method().tag().to_string(), re, im]);
        }
    }
    Ok(table)
}

/// `steps + 1` evenly spaced points, both endpoints exact.
fn grid(range: (f64, f64), steps: usize) -> Vec<f64> {
    let (lo, hi) = range;
    (0..=steps)
        .map(|i| {
            if i == steps {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / steps as f64)
            }
        })
        .collect()
}

fn sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    let xs = grid(cfg.range, cfg.steps);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {} worker threads: {e}", cfg.jobs)))?;
    let levels: Vec<[Complex64; 3]> = pool.install(|| {
        xs.par_iter()
            .map(|&x| cfg.axis.set(&cfg.params, x).map(|p| cubic_energies(&p)))
            .collect::<ptdimer_core::Result<_>>()
    })?;
    let labelled = track(&levels);

    let axis = cfg.axis.name();
    let mut table = Table::new(
        cfg.echo(),
        &[
            axis,
            "re_e_plus",
            "im_e_plus",
            "re_e_minus",
            "im_e_minus",
            "re_e0",
            "im_e0",
        ],
    );
    for (&x, [minus, plus, e0]) in xs.iter().zip(labelled) {
        let mut row = vec![num(x)];
        for z in [plus, minus, e0] {
            row.extend(complex_cells(z));
        }
        table.push(row);
    }
    Ok(table)
}

fn find_ep(cfg: &RunConfig) -> Result<Table, CliError> {
    let axis = cfg
        .axis
        .ep_axis()
        .expect("validated when the config was resolved");
    let report = scan_eps(&cfg.params, axis, cfg.range, cfg.steps, cfg.tol)?;
    let mut metadata = cfg.echo();
    metadata.push((
        "scanned-range".into(),
        format!("{}:{}", report.range.0, report.range.1),
    ));
    metadata.push(("widened".into(), report.widened.to_string()));
    let tangencies: Vec<String> = report.tangencies.iter().map(|t| num(t.value)).collect();
    metadata.push(("tangencies".into(), tangencies.join(";")));

    let mut table = Table::new(
        metadata,
        &["axis", "value", "bracket_lo", "bracket_hi", "kind"],
    );
    for ep in &report.eps {
        table.push(vec![
            ep.axis.name().to_string(),
            num(ep.value),
            num(ep.bracket.0),
            num(ep.bracket.1),
            ep.kind.name().to_string(),
        ]);
    }
    Ok(table)
}

fn boundary(cfg: &RunConfig) -> Result<Output, CliError> {
    let axis = cfg
        .axis
        .ep_axis()
        .expect("validated when the config was resolved");
    let plane = match axis {
        ptdimer_core::epfinder::EpAxis::Lambda => BoundaryPlane::LambdaU,
        ptdimer_core::epfinder::EpAxis::Gamma => BoundaryPlane::GammaU,
    };
    let curves = trace_boundary(
        &cfg.params,
        plane,
        cfg.u_range,
        cfg.u_steps,
        cfg.range,
        cfg.tol,
    )?;
    let mut metadata = cfg.echo();
    metadata.push(("plane".into(), plane.to_string()));
    metadata.push(("branches".into(), curves.len().to_string()));

    match &cfg.out {
        Some(base) => {
            if curves.is_empty() {
                log::warn!("no exceptional points in range; no files written");
            }
            let files = curves
                .iter()
                .map(|curve| {
                    let mut meta = metadata.clone();
                    meta.push(("branch".into(), curve.branch.to_string()));
                    let mut table = Table::new(meta, &["U", axis.name()]);
                    for &(u, x) in &curve.points {
                        table.push(vec![num(u), num(x)]);
                    }
                    (branch_path(base, curve.branch), table.render())
                })
                .collect();
            Ok(Output::Files(files))
        }
        None => {
            let mut table = Table::new(metadata, &["branch", "U", axis.name()]);
            for curve in &curves {
                for &(u, x) in &curve.points {
                    table.push(vec![curve.branch.to_string(), num(u), num(x)]);
                }
            }
            Ok(Output::Stdout(table.render()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_both_endpoints() {
        let g = grid((0.0, 2.0), 400);
        assert_eq!(g.len(), 401);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[400], 2.0);
        assert_eq!(g[200], 1.0);
    }
}
