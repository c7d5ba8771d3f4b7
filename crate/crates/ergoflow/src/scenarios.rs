//! Worked settings built on the core machinery: the microcanonical shell
//! with its exchange schedule, tensor powers of passive single-system
//! spectra with thermal matching and typical-set accounting, and the
//! four-qutrit grid scan relating extractable work to the entanglement
//! classification of the direct exchange.

use crate::bounds::{
    classify, lambda_at, lambda_peak_equal_terms, threshold_ratio_exact, threshold_ratio_paper,
};
use crate::ensemble::{
    differing_sites, product_state, validate_spectrum, BasisLabel, DiagonalState, EnsembleShape,
    QuditHamiltonian,
};
use crate::error::{Error, Result};
use crate::paths::{evolve_step, TranspositionStep};
use crate::work::{apply_swap, is_passive, optimal_permutation, total_energy, work_of_swap};

/// Entropy agreement required of a thermal match.
pub const THERMAL_MATCH_TOL: f64 = 1e-12;
/// Slack on energy comparisons when deciding shell membership.
pub const SHELL_TOL: f64 = 1e-12;
/// Interior time samples used when certifying entanglement throughout an
/// exchange.
pub const INTERIOR_SAMPLES: usize = 99;

/// `-sum p ln p`, with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum()
}

/// `sum p ln(p/q)`; requires the support of `p` to lie inside that of `q`.
pub fn relative_entropy(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let mut total = 0.0;
    for (k, (&pk, &qk)) in p.iter().zip(q).enumerate() {
        if pk > 0.0 {
            if qk <= 0.0 {
                return Err(Error::SupportViolation { index: k });
            }
            total += pk * (pk / qk).ln();
        }
    }
    Ok(total.max(0.0))
}

/// `sum_k levels[k] * p[k]`.
pub fn mean_energy(levels: &[f64], p: &[f64]) -> Result<f64> {
    if levels.len() != p.len() {
        return Err(Error::LengthMismatch {
            left: levels.len(),
            right: p.len(),
        });
    }
    Ok(levels.iter().zip(p).map(|(&e, &x)| e * x).sum())
}

/// Gibbs populations `q_k ~ exp(-levels[k]/t)` at temperature `t > 0`,
/// computed relative to the ground level for stability.
pub fn gibbs_spectrum(levels: &[f64], t: f64) -> Vec<f64> {
    let e0 = levels.iter().copied().fold(f64::INFINITY, f64::min);
    let mut q: Vec<f64> = levels.iter().map(|&e| (-(e - e0) / t).exp()).collect();
    let z: f64 = q.iter().sum();
    for v in q.iter_mut() {
        *v /= z;
    }
    q
}

/// Finds the Gibbs spectrum with the same Shannon entropy as `p` by
/// bisection on the temperature; the Gibbs entropy is strictly increasing
/// in temperature for a non-degenerate spectrum, from the log of the
/// ground-level degeneracy up to `ln d`. Returns `(q, T)`.
pub fn thermal_match(
    hamiltonian: &QuditHamiltonian,
    p: &[f64],
) -> Result<(Vec<f64>, f64)> {
    validate_spectrum(p)?;
    let levels = hamiltonian.levels();
    if p.len() != levels.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: levels.len(),
        });
    }
    let target = shannon_entropy(p);
    let d = levels.len() as f64;
    let ground = levels[0];
    let ground_degeneracy = levels
        .iter()
        .filter(|&&e| (e - ground).abs() <= SHELL_TOL)
        .count() as f64;
    let min_entropy = ground_degeneracy.ln();
    let max_entropy = d.ln();
    if target <= min_entropy + THERMAL_MATCH_TOL || target >= max_entropy - THERMAL_MATCH_TOL {
        return Err(Error::EntropyOutOfRange {
            entropy: target,
            min: min_entropy,
            max: max_entropy,
        });
    }

    let entropy_at = |t: f64| shannon_entropy(&gibbs_spectrum(levels, t));

    // bracket the target before bisecting
    let mut lo = 1e-6;
    let mut hi = 1.0;
    while entropy_at(lo) > target {
        lo /= 16.0;
        if lo < 1e-300 {
            return Err(Error::EntropyOutOfRange {
                entropy: target,
                min: min_entropy,
                max: max_entropy,
            });
        }
    }
    while entropy_at(hi) < target {
        hi *= 16.0;
        if hi > 1e300 {
            return Err(Error::EntropyOutOfRange {
                entropy: target,
                min: min_entropy,
                max: max_entropy,
            });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if entropy_at(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if (entropy_at(mid) - target).abs() <= THERMAL_MATCH_TOL {
            break;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok((gibbs_spectrum(levels, t), t))
}

/// Tensor power of a passive single-system spectrum, together with its
/// entropy-matched thermal spectrum and temperature.
#[derive(Debug, Clone)]
pub struct PassiveEnsembleScenario {
    pub hamiltonian: QuditHamiltonian,
    pub spectrum: Vec<f64>,
    pub thermal: Vec<f64>,
    pub temperature: f64,
    pub copies: usize,
}

impl PassiveEnsembleScenario {
    pub fn new(hamiltonian: QuditHamiltonian, spectrum: Vec<f64>, copies: usize) -> Result<Self> {
        validate_spectrum(&spectrum)?;
        if copies == 0 {
            return Err(Error::InvalidArgument("need at least one copy".into()));
        }
        let shape = EnsembleShape::new(1, hamiltonian.num_levels())?;
        let single = DiagonalState::new(shape, spectrum.clone())?;
        if !is_passive(&single, &hamiltonian)? {
            return Err(Error::InvalidSpectrum(
                "spectrum is not passive: populations must not increase with energy".into(),
            ));
        }
        let (thermal, temperature) = thermal_match(&hamiltonian, &spectrum)?;
        Ok(Self {
            hamiltonian,
            spectrum,
            thermal,
            temperature,
            copies,
        })
    }

    /// Dense N-copy product state; fails above the dense cap.
    pub fn ensemble_state(&self) -> Result<DiagonalState> {
        product_state(&self.spectrum, self.copies)
    }

    /// Exact maximal work of the N-copy ensemble via the sorted pairing.
    pub fn exact_work(&self) -> Result<f64> {
        Ok(optimal_permutation(&self.ensemble_state()?, &self.hamiltonian)?.work)
    }

    /// Entropy-preserving energy floor `N * tr[H q]`.
    pub fn thermal_energy(&self) -> Result<f64> {
        Ok(self.copies as f64 * mean_energy(self.hamiltonian.levels(), &self.thermal)?)
    }
}

/// `N * T * S(p||q)`: the work ceiling attained in the large-N limit.
pub fn asymptotic_work_bound(scenario: &PassiveEnsembleScenario) -> Result<f64> {
    Ok(scenario.copies as f64
        * scenario.temperature
        * relative_entropy(&scenario.spectrum, &scenario.thermal)?)
}

/// One row of a bound-versus-exact sweep over copy counts.
#[derive(Debug, Clone)]
pub struct GapRow {
    pub copies: usize,
    pub bound: f64,
    pub exact: f64,
    /// `(bound - exact) / bound`, or 0 when the bound is 0.
    pub relative_gap: f64,
}

/// Compares the asymptotic bound with the exact optimum at each copy count.
pub fn work_gap_sweep(
    hamiltonian: &QuditHamiltonian,
    spectrum: &[f64],
    copy_counts: &[usize],
) -> Result<Vec<GapRow>> {
    let mut rows = Vec::with_capacity(copy_counts.len());
    for &n in copy_counts {
        let scenario = PassiveEnsembleScenario::new(hamiltonian.clone(), spectrum.to_vec(), n)?;
        let bound = asymptotic_work_bound(&scenario)?;
        let exact = scenario.exact_work()?;
        rows.push(GapRow {
            copies: n,
            bound,
            exact,
            relative_gap: if bound > 0.0 { (bound - exact) / bound } else { 0.0 },
        });
    }
    Ok(rows)
}

/// Natural log of `n!` as a cumulative table up to `n` inclusive.
fn ln_factorial_table(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    table.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

/// All length-`d` compositions of `n` (occupation counts per level).
pub fn compositions(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=n {
            prefix.push(k);
            rec(d - 1, n - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, n, &mut Vec::with_capacity(d), &mut out);
    }
    out
}

/// Rounds `n * spectrum` to an integer composition summing to `n`, using
/// floors plus largest-remainder correction (ties to the lower index).
pub fn rounded_composition(spectrum: &[f64], n: usize) -> Vec<usize> {
    let mut counts: Vec<usize> = spectrum.iter().map(|&p| (p * n as f64) as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut remainders: Vec<(usize, f64)> = spectrum
        .iter()
        .enumerate()
        .map(|(k, &p)| (k, p * n as f64 - counts[k] as f64))
        .collect();
    remainders.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    for (k, _) in remainders.iter().take(n - assigned) {
        counts[*k] += 1;
    }
    counts
}

/// Type-class accounting of the labels whose per-site log-probability sits
/// within `delta` of the spectrum's entropy.
#[derive(Debug, Clone)]
pub struct TypicalSetSummary {
    pub delta: f64,
    pub entropy: f64,
    /// `ln` of the number of typical labels.
    pub log_cardinality: f64,
    /// Total probability the typical labels carry.
    pub captured_probability: f64,
    /// Number of type classes whose labels are typical.
    pub typical_classes: usize,
    /// Admissible band `[entropy - delta, entropy + delta]` for the
    /// per-site log-cardinality.
    pub band: (f64, f64),
}

/// Scans all type classes of `p^(tensor n)`; never enumerates labels, so
/// arbitrary `n` is fine for small `d`.
pub fn typical_summary(p: &[f64], n: usize, delta: f64) -> Result<TypicalSetSummary> {
    validate_spectrum(p)?;
    if delta <= 0.0 || n == 0 {
        return Err(Error::InvalidArgument(
            "need a positive tolerance and at least one site".into(),
        ));
    }
    let entropy = shannon_entropy(p);
    let ln_fact = ln_factorial_table(n);
    let ln_p: Vec<f64> = p.iter().map(|&x| if x > 0.0 { x.ln() } else { 0.0 }).collect();

    let mut log_cardinality = f64::NEG_INFINITY;
    let mut captured = 0.0;
    let mut typical_classes = 0usize;
    for counts in compositions(p.len(), n) {
        if counts.iter().zip(p).any(|(&k, &pk)| k > 0 && pk == 0.0) {
            continue; // zero-probability labels are never typical
        }
        let ln_prob: f64 = counts.iter().zip(&ln_p).map(|(&k, &lp)| k as f64 * lp).sum();
        let rate = -ln_prob / n as f64;
        if (rate - entropy).abs() > delta + 1e-12 {
            continue;
        }
        let ln_count = ln_fact[n] - counts.iter().map(|&k| ln_fact[k]).sum::<f64>();
        // log-sum-exp accumulation of the cardinality
        log_cardinality = if log_cardinality == f64::NEG_INFINITY {
            ln_count
        } else {
            let hi = log_cardinality.max(ln_count);
            hi + ((log_cardinality - hi).exp() + (ln_count - hi).exp()).ln()
        };
        captured += (ln_count + ln_prob).exp();
        typical_classes += 1;
    }
    Ok(TypicalSetSummary {
        delta,
        entropy,
        log_cardinality,
        captured_probability: captured,
        typical_classes,
        band: (entropy - delta, entropy + delta),
    })
}

/// Pairing of typical labels of the passive power with typical labels of
/// its thermal match, plus the energies the exchange achieves.
#[derive(Debug, Clone)]
pub struct TypicalExchangePlan {
    pub exchanges: Vec<TranspositionStep>,
    /// Ensemble energy before any exchange.
    pub initial_energy: f64,
    /// Ensemble energy after performing every exchange.
    pub achieved_energy: f64,
    /// Entropy-preserving floor `N * tr[H q]`.
    pub thermal_energy: f64,
    /// `(1/N) ln` of the population ratio of an exchanged pair,
    /// `sum_k (p_k - q_k) ln p_k`; equals `S(q||p)` when the entropies
    /// match.
    pub log_ratio_rate: f64,
}

/// Builds the exchange list densely: typical labels of the passive power
/// (highest population first) are transposed with typical labels of the
/// thermal power (lowest energy first), skipping labels typical under
/// both. The lists are disjoint by construction, so the exchanges commute.
pub fn typical_exchange_plan(
    scenario: &PassiveEnsembleScenario,
    delta: f64,
) -> Result<TypicalExchangePlan> {
    if delta <= 0.0 {
        return Err(Error::InvalidArgument("need a positive tolerance".into()));
    }
    let n = scenario.copies;
    let p = &scenario.spectrum;
    let q = &scenario.thermal;
    let log_ratio_rate = p
        .iter()
        .zip(q)
        .enumerate()
        .map(|(k, (&pk, &qk))| {
            if pk == 0.0 && qk > 0.0 {
                return Err(Error::SupportViolation { index: k });
            }
            Ok(if pk > 0.0 { (pk - qk) * pk.ln() } else { 0.0 })
        })
        .sum::<Result<f64>>()?;

    let state = scenario.ensemble_state()?;
    let shape = state.shape();
    let hamiltonian = &scenario.hamiltonian;
    let initial_energy = total_energy(&state, hamiltonian)?;
    let thermal_energy = scenario.thermal_energy()?;

    let s_p = shannon_entropy(p);
    let s_q = shannon_entropy(q);
    let rate_under = |label: &BasisLabel, spectrum: &[f64]| -> f64 {
        let mut ln_prob = 0.0;
        for &digit in label.digits() {
            let pk = spectrum[digit as usize];
            if pk <= 0.0 {
                return f64::INFINITY;
            }
            ln_prob += pk.ln();
        }
        -ln_prob / n as f64
    };

    let mut sources = Vec::new(); // typical under p only
    let mut targets = Vec::new(); // typical under q only
    for label in shape.labels()? {
        let tp = (rate_under(&label, p) - s_p).abs() <= delta + 1e-12;
        let tq = (rate_under(&label, q) - s_q).abs() <= delta + 1e-12;
        match (tp, tq) {
            (true, false) => sources.push(label),
            (false, true) => targets.push(label),
            _ => {}
        }
    }
    let energy_flat = |label: &BasisLabel| -> Result<(f64, usize)> {
        let flat = shape.flat_of_label(label)?;
        Ok((hamiltonian.energy_of_label(label)?, flat))
    };
    sources.sort_by(|a, b| {
        let pa = state.population_of_label(a).unwrap_or(0.0);
        let pb = state.population_of_label(b).unwrap_or(0.0);
        pb.total_cmp(&pa)
            .then_with(|| a.digits().cmp(b.digits()))
    });
    let mut keyed: Vec<((f64, usize), BasisLabel)> = targets
        .into_iter()
        .map(|l| Ok((energy_flat(&l)?, l)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| a.0 .0.total_cmp(&b.0 .0).then(a.0 .1.cmp(&b.0 .1)));

    let mut exchanges = Vec::new();
    let mut current = state;
    for (source, (_, target)) in sources.into_iter().zip(keyed) {
        let step = TranspositionStep::new(source.clone(), target.clone())?;
        current = apply_swap(&current, &source, &target)?;
        exchanges.push(step);
    }
    let achieved_energy = total_energy(&current, hamiltonian)?;
    Ok(TypicalExchangePlan {
        exchanges,
        initial_energy,
        achieved_energy,
        thermal_energy,
        log_ratio_rate,
    })
}

/// Evaluates whether the scenario's divergence `S(q||p)` is large enough
/// to force more than `l - 1` entangled groups during the typical
/// exchange, under both threshold formulas. Returns
/// `(per the printed formula, per the exact root)`.
pub fn entanglement_condition(
    scenario: &PassiveEnsembleScenario,
    l: usize,
) -> Result<(bool, bool)> {
    let n = scenario.copies;
    if l < 1 || l > n {
        return Err(Error::InvalidArgument(format!(
            "separability level {l} out of range 1..={n}"
        )));
    }
    let lhs = relative_entropy(&scenario.thermal, &scenario.spectrum)?;
    // gamma = 2^(N-1) - 2^l + 1, in floats so very large ensembles work
    let gamma = 2f64.powi(n as i32 - 1) - 2f64.powi(l as i32) + 1.0;
    if gamma < 1.0 {
        return Ok((false, false));
    }
    let per_site = 1.0 / n as f64;
    let paper = lhs >= per_site * threshold_ratio_paper(gamma).ln();
    let exact = lhs >= per_site * threshold_ratio_exact(gamma).ln();
    Ok((paper, exact))
}

/// Uniform mixture over the labels whose energy lies in a width-`width`
/// window around `center`.
#[derive(Debug, Clone)]
pub struct MicrocanonicalScenario {
    pub hamiltonian: QuditHamiltonian,
    pub shape: EnsembleShape,
    pub center: f64,
    pub width: f64,
    /// Flat indices of the shell, ascending.
    pub shell: Vec<usize>,
}

impl MicrocanonicalScenario {
    pub fn new(
        hamiltonian: QuditHamiltonian,
        sites: usize,
        center: f64,
        width: f64,
    ) -> Result<Self> {
        if width < 0.0 || !width.is_finite() || !center.is_finite() {
            return Err(Error::InvalidArgument(
                "shell center and width must be finite, width non-negative".into(),
            ));
        }
        let shape = EnsembleShape::new(sites, hamiltonian.num_levels())?;
        let energies = shape.energy_table(&hamiltonian)?;
        let lo = center - width / 2.0 - SHELL_TOL;
        let hi = center + width / 2.0 + SHELL_TOL;
        let shell: Vec<usize> = energies
            .iter()
            .enumerate()
            .filter(|(_, &e)| e >= lo && e <= hi)
            .map(|(flat, _)| flat)
            .collect();
        if shell.is_empty() {
            return Err(Error::EmptyShell);
        }
        Ok(Self {
            hamiltonian,
            shape,
            center,
            width,
            shell,
        })
    }

    pub fn shell_size(&self) -> usize {
        self.shell.len()
    }

    pub fn state(&self) -> Result<DiagonalState> {
        let dim = self.shape.dense_dim()?;
        let weight = 1.0 / self.shell.len() as f64;
        let mut populations = vec![0.0; dim];
        for &flat in &self.shell {
            populations[flat] = weight;
        }
        DiagonalState::new(self.shape, populations)
    }
}

/// One exchange of the microcanonical schedule.
#[derive(Debug, Clone)]
pub struct MicroExchange {
    /// Below-shell label receiving the population.
    pub target: BasisLabel,
    /// Shell label giving it up.
    pub source: BasisLabel,
    /// Number of sites where the pair differs.
    pub differing: usize,
    pub work: f64,
    /// True when the strongest bound is positive at every interior
    /// instant of the transposition: the exchange passes through
    /// genuinely multipartite entangled states.
    pub gme_throughout: bool,
}

/// Full extraction schedule from a microcanonical shell.
#[derive(Debug, Clone)]
pub struct MicrocanonicalReport {
    pub exchanges: Vec<MicroExchange>,
    pub initial_energy: f64,
    pub final_energy: f64,
    pub work: f64,
}

/// Moves the shell weight onto the lowest-energy labels: shell labels not
/// already among the lowest `N_shell` labels are transposed, lowest
/// energies first on both sides, which attains the sorted-pairing optimum
/// because all moving populations are equal.
pub fn microcanonical_plan(scenario: &MicrocanonicalScenario) -> Result<MicrocanonicalReport> {
    let shape = scenario.shape;
    let hamiltonian = &scenario.hamiltonian;
    let energies = shape.energy_table(hamiltonian)?;
    let state = scenario.state()?;
    let initial_energy = total_energy(&state, hamiltonian)?;

    let mut by_energy: Vec<usize> = (0..energies.len()).collect();
    by_energy.sort_by(|&a, &b| energies[a].total_cmp(&energies[b]).then(a.cmp(&b)));
    let lowest: std::collections::BTreeSet<usize> =
        by_energy.iter().take(scenario.shell.len()).copied().collect();
    let shell: std::collections::BTreeSet<usize> = scenario.shell.iter().copied().collect();

    let sort_key = |flats: Vec<usize>| -> Vec<usize> {
        let mut v = flats;
        v.sort_by(|&a, &b| energies[a].total_cmp(&energies[b]).then(a.cmp(&b)));
        v
    };
    let sources = sort_key(shell.difference(&lowest).copied().collect());
    let targets = sort_key(lowest.difference(&shell).copied().collect());
    debug_assert_eq!(sources.len(), targets.len());

    let mut exchanges = Vec::with_capacity(sources.len());
    let mut current = state;
    for (&target_flat, &source_flat) in targets.iter().zip(&sources) {
        let target = shape.label_of_flat(target_flat);
        let source = shape.label_of_flat(source_flat);
        let differing = differing_sites(&target, &source)?.len();
        let work = work_of_swap(&current, &source, &target, hamiltonian)?;
        let gme_throughout = differing >= 2 && {
            let step = TranspositionStep::new(source.clone(), target.clone())?;
            (1..=INTERIOR_SAMPLES).all(|i| {
                let s = i as f64 / (INTERIOR_SAMPLES + 1) as f64;
                evolve_step(&current, &step, s)
                    .and_then(|snap| lambda_at(&snap))
                    .map(|lv| lv.lambda_last() > 0.0)
                    .unwrap_or(false)
            })
        };
        current = apply_swap(&current, &source, &target)?;
        exchanges.push(MicroExchange {
            target,
            source,
            differing,
            work,
            gme_throughout,
        });
    }
    let final_energy = total_energy(&current, hamiltonian)?;
    Ok(MicrocanonicalReport {
        exchanges,
        initial_energy,
        final_energy,
        work: initial_energy - final_energy,
    })
}

/// One grid point of the four-qutrit scan.
#[derive(Debug, Clone)]
pub struct Fig1Row {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    /// Work of the direct exchange, `(p1^4 - p0 p2^3) eps`, signed.
    pub work: f64,
    pub lambda_1: f64,
    pub lambda_5: f64,
    pub lambda_7: f64,
    pub class: String,
}

/// Scans the passive corner `p0 >= p1 >= p2` of the qutrit simplex for
/// four systems with levels `{0, eps, eps}` and the direct exchange of
/// the all-ones and `0222` populations. The pair differs at every site
/// and the pre-state is a product, so all seven bounds take the
/// equal-term form.
pub fn figure1_scan(resolution: usize, eps: f64) -> Result<Vec<Fig1Row>> {
    if resolution < 2 {
        return Err(Error::InvalidArgument(
            "grid resolution must be at least 2".into(),
        ));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(
            "level spacing must be positive and finite".into(),
        ));
    }
    let step = 1.0 / (resolution - 1) as f64;
    let mut rows = Vec::new();
    for i in 0..resolution {
        let p0 = i as f64 * step;
        for j in 0..resolution {
            let p1 = j as f64 * step;
            let p2 = 1.0 - p0 - p1;
            if p2 < -1e-12 || p1 > p0 + 1e-12 || p2 > p1 + 1e-12 {
                continue;
            }
            let p2 = p2.max(0.0);
            let pop_alpha = p1.powi(4); // |1111>
            let pop_beta = p0 * p2.powi(3); // |0222>
            let lv = lambda_peak_equal_terms(pop_alpha, pop_beta, 4);
            let (lambda_1, lambda_5, lambda_7) = (
                lv.lambda(1).unwrap(),
                lv.lambda(5).unwrap(),
                lv.lambda(7).unwrap(),
            );
            let report = classify(lv);
            rows.push(Fig1Row {
                p0,
                p1,
                p2,
                work: (pop_alpha - pop_beta) * eps,
                lambda_1,
                lambda_5,
                lambda_7,
                class: report.class_label(),
            });
        }
    }
    Ok(rows)
}
