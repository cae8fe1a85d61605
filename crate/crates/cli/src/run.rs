//! Subcommand bodies: pure functions from a [`RunConfig`] to tables.

use qgraph::models::{find_resonances, ResonanceKind, RingSpec};
use qgraph::spectrum::{find_bound_states, parallel_wells_bound_state, scatter_potential};
use qgraph::sweep::{linspace, sweep};
use qgraph::units::ev_to_inverse_nm2;
use qgraph::{
    cascade_scatter, scatter, PotentialDescriptor, ScatteringResult, TwoTerminalGraph, WaveNumber,
};
use serde::Serialize;

use crate::config::{RunConfig, Subject, Swept};
use crate::error::CliError;

/// Evaluated rows in grid order plus the singular points that were skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<(f64, ScatteringResult)>,
    pub skipped: Vec<(f64, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResonanceRow {
    pub kind: &'static str,
    pub n: i64,
    pub k_res: f64,
    pub width: f64,
    pub omega_re: Option<f64>,
    pub omega_im: Option<f64>,
    pub removable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundStateRow {
    pub n_wells: usize,
    pub kappa: f64,
    pub energy_ev: f64,
}

fn finite_potential(cfg: &RunConfig) -> PotentialDescriptor {
    match &cfg.potential {
        Some(tab) => PotentialDescriptor::Tabulated(tab.clone()),
        None if cfg.depth_ev < 0.0 => PotentialDescriptor::SquareWell {
            depth_ev: cfg.depth_ev,
            width_nm: cfg.width_nm,
        },
        None => PotentialDescriptor::SquareBarrier {
            height_ev: cfg.depth_ev,
            width_nm: cfg.width_nm,
        },
    }
}

fn sweep_grid(cfg: &RunConfig) -> Vec<f64> {
    if cfg.swept == Swept::NWells {
        let lo = cfg.start.ceil().max(1.0) as usize;
        let hi = cfg.stop.floor().max(0.0) as usize;
        (lo..=hi).map(|n| n as f64).collect()
    } else {
        linspace(cfg.start, cfg.stop, cfg.points)
    }
}

/// One point of the sweep: swept parameter `p` substituted into the fixed set.
fn evaluate(cfg: &RunConfig, p: f64) -> qgraph::Result<ScatteringResult> {
    let k = if cfg.swept == Swept::K { p } else { cfg.k };
    let l2 = if cfg.swept == Swept::L2 { p } else { cfg.l2 };
    let alpha = if cfg.swept == Swept::Alpha {
        p
    } else {
        cfg.alpha
    };
    let n_wells = if cfg.swept == Swept::NWells {
        p as usize
    } else {
        cfg.n_wells
    };
    let k = WaveNumber(k);
    match cfg.subject {
        Subject::Ring => scatter(&TwoTerminalGraph::ring(cfg.l1, l2, 0.0)?, k),
        Subject::AbRing => scatter(&TwoTerminalGraph::ring(cfg.l1, l2, alpha)?, k),
        Subject::ParallelWells => scatter(
            &TwoTerminalGraph::parallel_wells(n_wells, cfg.depth_ev, cfg.width_nm)?,
            k,
        ),
        Subject::Cascade => {
            let ring = TwoTerminalGraph::ring(cfg.l1, l2, alpha)?;
            cascade_scatter(&vec![ring; cfg.n_rings], &cfg.links, k)
        }
        Subject::FiniteSupport => scatter_potential(&finite_potential(cfg), k),
    }
}

/// Evaluate every grid point on the worker pool; output order follows the grid.
pub fn run_sweep(cfg: &RunConfig) -> Result<SweepReport, CliError> {
    cfg.check_range()?;
    let grid = sweep_grid(cfg);
    if grid.is_empty() {
        return Err(CliError::Config(format!(
            "no integer well counts in [{}, {}]",
            cfg.start, cfg.stop
        )));
    }
    let mut report = SweepReport {
        rows: Vec::with_capacity(grid.len()),
        skipped: Vec::new(),
    };
    for point in sweep(&grid, |p| evaluate(cfg, p)) {
        match point.outcome {
            Ok(res) => report.rows.push((point.param, res)),
            Err(e) => report.skipped.push((point.param, e.to_string())),
        }
    }
    Ok(report)
}

/// Transmission zeros of a ring in (k_min, k_max]; an empty range gives an empty table.
pub fn run_resonances(cfg: &RunConfig) -> Result<Vec<ResonanceRow>, CliError> {
    let alpha = match cfg.subject {
        Subject::Ring => 0.0,
        Subject::AbRing => cfg.alpha,
        other => {
            return Err(CliError::Config(format!(
                "resonances need subject ring or ab-ring, got {other:?}"
            )));
        }
    };
    let spec = RingSpec::new(cfg.l1, cfg.l2, alpha)?;
    Ok(find_resonances(&spec, cfg.start, cfg.stop)
        .into_iter()
        .map(|r| ResonanceRow {
            kind: match r.kind {
                ResonanceKind::Ftr => "FTR",
                ResonanceKind::Str => "STR",
            },
            n: r.n_index,
            k_res: r.k_res,
            width: r.width,
            omega_re: r.omega.map(|o| o.re),
            omega_im: r.omega.map(|o| o.im),
            removable: r.removable,
        })
        .collect())
}

/// Bound states: every level of a finite-support potential, or the deepest
/// level for each well count 1..=n_wells.
pub fn run_bound_states(cfg: &RunConfig) -> Result<Vec<BoundStateRow>, CliError> {
    match cfg.subject {
        Subject::FiniteSupport => {
            let pot = finite_potential(cfg);
            let floor = pot.min_ev();
            if floor >= 0.0 {
                return Ok(Vec::new());
            }
            let q0 = (-ev_to_inverse_nm2(floor)).sqrt();
            let (lo, hi) = cfg.kappa_range.unwrap_or((0.0, q0));
            let hi = hi.min(q0 * (1.0 - 1e-9));
            Ok(find_bound_states(&pot, (lo, hi))?
                .into_iter()
                .map(|b| BoundStateRow {
                    n_wells: 1,
                    kappa: b.kappa,
                    energy_ev: b.energy_ev,
                })
                .collect())
        }
        Subject::ParallelWells => {
            let (lo, hi) = cfg.kappa_range.unwrap_or((0.0, f64::INFINITY));
            if hi <= lo || hi.is_nan() || lo.is_nan() {
                return Ok(Vec::new());
            }
            Ok((1..=cfg.n_wells)
                .filter_map(|n| parallel_wells_bound_state(n, cfg.depth_ev, cfg.width_nm))
                .filter(|b| b.kappa > lo && b.kappa < hi)
                .map(|b| BoundStateRow {
                    n_wells: b.n_wells,
                    kappa: b.kappa,
                    energy_ev: b.energy_ev,
                })
                .collect())
        }
        other => Err(CliError::Config(format!(
            "bound-states need subject finite-support or parallel-wells, got {other:?}"
        ))),
    }
}
