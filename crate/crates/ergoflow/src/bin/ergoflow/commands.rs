//! One function per subcommand; each builds a [`Table`] from a vetted
//! scenario file.

use ergoflow::bounds::{classify, lambda_at, threshold_ratio_exact, threshold_ratio_paper};
use ergoflow::ensemble::DiagonalState;
use ergoflow::error::{Error, Result};
use ergoflow::paths::{
    direct_plan, evolve_step, hybrid_plan, indirect_plan, ladder_plan, PathPlan, PlanKind,
};
use ergoflow::scenarios::{
    asymptotic_work_bound, figure1_scan, microcanonical_plan, relative_entropy, shannon_entropy,
    typical_summary, PassiveEnsembleScenario,
};
use ergoflow::work::{apply_swap, is_passive, optimal_permutation, total_energy};

use crate::output::{Cell, Table};
use crate::scenario::{ProtocolSpec, ScenarioFile, StateSpec};

/// Largest dense dimension for which the exact optimum is attempted in
/// sweeps; the sort is cheap, the product-state allocation is not.
const EXACT_SWEEP_CAP: usize = 1 << 22;

const DEFAULT_SAMPLES: usize = 101;
const DEFAULT_GRID: usize = 201;
const DEFAULT_DELTA: f64 = 0.05;

pub fn maxwork(scenario: &ScenarioFile) -> Result<Table> {
    let hamiltonian = scenario.hamiltonian()?;
    let state = scenario.state()?;
    let passive_input = is_passive(&state, &hamiltonian)?;
    let report = optimal_permutation(&state, &hamiltonian)?;
    let mut table = Table::new(vec![
        "sites",
        "levels",
        "dimension",
        "initial_energy",
        "final_energy",
        "work",
        "passive_input",
    ]);
    table.push(vec![
        Cell::Int(scenario.ensemble.n as i64),
        Cell::Int(scenario.hamiltonian.levels.len() as i64),
        Cell::Int(state.populations().len() as i64),
        Cell::Float(report.initial_energy),
        Cell::Float(report.final_energy),
        Cell::Float(report.work),
        Cell::Bool(passive_input),
    ]);
    Ok(table)
}

fn build_plan(scenario: &ScenarioFile) -> Result<PathPlan> {
    let protocol = scenario.protocol.unwrap_or(ProtocolSpec::Direct);
    match protocol {
        ProtocolSpec::Ladder { k } => {
            // the ladder is defined by spectra, not by an explicit pair
            let p = scenario.product_spectrum()?;
            let hamiltonian = scenario.hamiltonian()?;
            let (q, _) = ergoflow::scenarios::thermal_match(&hamiltonian, &p)?;
            let rounds = ladder_plan(&p, &q, k, scenario.ensemble.n)?;
            let steps = rounds
                .into_iter()
                .flat_map(|r| r.plan.steps().to_vec())
                .collect();
            Ok(PathPlan::new(PlanKind::Ladder(k), steps))
        }
        _ => {
            let (alpha, beta) = scenario.pair()?;
            match protocol {
                ProtocolSpec::Direct => direct_plan(&alpha, &beta),
                ProtocolSpec::Indirect => indirect_plan(&alpha, &beta),
                ProtocolSpec::Hybrid { l } => hybrid_plan(&alpha, &beta, l),
                ProtocolSpec::Ladder { .. } => unreachable!(),
            }
        }
    }
}

pub fn path(scenario: &ScenarioFile, samples_flag: Option<usize>) -> Result<Table> {
    let samples = samples_flag
        .or(scenario.sampling.samples)
        .unwrap_or(DEFAULT_SAMPLES);
    if samples < 2 {
        return Err(Error::InvalidArgument(
            "need at least 2 time samples per step".into(),
        ));
    }
    let hamiltonian = scenario.hamiltonian()?;
    let plan = build_plan(scenario)?;
    let mut current: DiagonalState = scenario.state()?;
    let initial_energy = total_energy(&current, &hamiltonian)?;

    let mut table = Table::new(vec![
        "step_index",
        "s",
        "pop_alpha",
        "pop_beta",
        "coherence_abs",
        "lambda_1",
        "lambda_last",
        "class",
        "cumulative_work",
    ]);
    for (index, step) in plan.steps().iter().enumerate() {
        for i in 0..samples {
            let s = i as f64 / (samples - 1) as f64;
            let snapshot = evolve_step(&current, step, s)?;
            let lv = lambda_at(&snapshot)?;
            let report = classify(lv);
            // diagonal energy of the snapshot, coherence carries none
            let energies = snapshot.shape().energy_table(&hamiltonian)?;
            let energy: f64 = energies
                .iter()
                .enumerate()
                .map(|(flat, &e)| e * snapshot.diagonal_entry(flat))
                .sum();
            table.push(vec![
                Cell::Int(index as i64),
                Cell::Float(s),
                Cell::Float(snapshot.pop_alpha()),
                Cell::Float(snapshot.pop_beta()),
                Cell::Float(snapshot.coherence().norm()),
                Cell::Float(report.lambda.lambda_1()),
                Cell::Float(report.lambda.lambda_last()),
                Cell::Text(report.class_label()),
                Cell::Float(initial_energy - energy),
            ]);
        }
        current = apply_swap(&current, step.alpha(), step.beta())?;
    }
    Ok(table)
}

pub fn figure1(scenario: &ScenarioFile, grid_flag: Option<usize>) -> Result<Table> {
    let levels = &scenario.hamiltonian.levels;
    if levels.len() != 3 || (levels[2] - levels[1]).abs() > 1e-12 {
        return Err(Error::InvalidHamiltonian(
            "the grid scan needs three levels {0, eps, eps}".into(),
        ));
    }
    let eps = levels[1] - levels[0];
    let resolution = grid_flag
        .or(scenario.sampling.grid)
        .unwrap_or(DEFAULT_GRID);
    let rows = figure1_scan(resolution, eps)?;
    let mut table = Table::new(vec![
        "p0", "p1", "p2", "work", "lambda_1", "lambda_5", "lambda_7", "class",
    ]);
    for row in rows {
        table.push(vec![
            Cell::Float(row.p0),
            Cell::Float(row.p1),
            Cell::Float(row.p2),
            Cell::Float(row.work),
            Cell::Float(row.lambda_1),
            Cell::Float(row.lambda_5),
            Cell::Float(row.lambda_7),
            Cell::Text(row.class),
        ]);
    }
    Ok(table)
}

pub fn passive(scenario: &ScenarioFile) -> Result<Table> {
    let hamiltonian = scenario.hamiltonian()?;
    let spectrum = scenario.product_spectrum()?;
    let n = scenario.ensemble.n;
    let delta = scenario.sampling.delta.unwrap_or(DEFAULT_DELTA);
    let ensemble = PassiveEnsembleScenario::new(hamiltonian.clone(), spectrum.clone(), n)?;

    let bound = asymptotic_work_bound(&ensemble)?;
    let shape = scenario.shape()?;
    let exact = if shape.dim() <= EXACT_SWEEP_CAP as u128 {
        Some(ensemble.exact_work()?)
    } else {
        None
    };
    let summary = typical_summary(&spectrum, n, delta)?;
    let forward = relative_entropy(&ensemble.spectrum, &ensemble.thermal)?;
    let reverse = relative_entropy(&ensemble.thermal, &ensemble.spectrum)?;

    let mut table = Table::new(vec![
        "copies",
        "temperature",
        "entropy",
        "divergence_p_from_q",
        "divergence_q_from_p",
        "bound",
        "exact_work",
        "relative_gap",
        "captured_probability",
        "log_cardinality_rate",
        "l",
        "gamma",
        "threshold_paper",
        "threshold_exact",
        "condition_paper",
        "condition_exact",
    ]);
    for l in 1..=n {
        let gamma = 2f64.powi(n as i32 - 1) - 2f64.powi(l as i32) + 1.0;
        let (threshold_paper_cell, threshold_exact_cell, cond_paper, cond_exact) = if gamma >= 1.0
        {
            let tp = threshold_ratio_paper(gamma);
            let te = threshold_ratio_exact(gamma);
            let per_site = 1.0 / n as f64;
            (
                Cell::Float(tp),
                Cell::Float(te),
                reverse >= per_site * tp.ln(),
                reverse >= per_site * te.ln(),
            )
        } else {
            (Cell::Empty, Cell::Empty, false, false)
        };
        table.push(vec![
            Cell::Int(n as i64),
            Cell::Float(ensemble.temperature),
            Cell::Float(shannon_entropy(&spectrum)),
            Cell::Float(forward),
            Cell::Float(reverse),
            Cell::Float(bound),
            exact.map(Cell::Float).unwrap_or(Cell::Empty),
            match exact {
                Some(w) if bound > 0.0 => Cell::Float((bound - w) / bound),
                _ => Cell::Empty,
            },
            Cell::Float(summary.captured_probability),
            Cell::Float(summary.log_cardinality / n as f64),
            Cell::Int(l as i64),
            Cell::Float(gamma),
            threshold_paper_cell,
            threshold_exact_cell,
            Cell::Bool(cond_paper),
            Cell::Bool(cond_exact),
        ]);
    }
    Ok(table)
}

pub fn microcanonical(scenario: &ScenarioFile) -> Result<Table> {
    let (center, width) = match &scenario.state {
        Some(StateSpec::Microcanonical { center, width }) => (*center, *width),
        _ => {
            return Err(Error::InvalidArgument(
                "this command needs `state.microcanonical` with center and width".into(),
            ))
        }
    };
    let mc = scenario.microcanonical(center, width)?;
    let report = microcanonical_plan(&mc)?;

    let mut table = Table::new(vec![
        "exchange_index",
        "target",
        "source",
        "differing",
        "work",
        "gme_throughout",
        "shell_size",
        "initial_energy",
        "final_energy",
        "total_work",
    ]);
    let summary = |table: &mut Table, prefix: Vec<Cell>| {
        let mut row = prefix;
        row.extend([
            Cell::Int(mc.shell_size() as i64),
            Cell::Float(report.initial_energy),
            Cell::Float(report.final_energy),
            Cell::Float(report.work),
        ]);
        table.push(row);
    };
    if report.exchanges.is_empty() {
        summary(
            &mut table,
            vec![Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty],
        );
    } else {
        for (index, exchange) in report.exchanges.iter().enumerate() {
            summary(
                &mut table,
                vec![
                    Cell::Int(index as i64),
                    Cell::Text(exchange.target.to_string()),
                    Cell::Text(exchange.source.to_string()),
                    Cell::Int(exchange.differing as i64),
                    Cell::Float(exchange.work),
                    Cell::Bool(exchange.gme_throughout),
                ],
            );
        }
    }
    Ok(table)
}
