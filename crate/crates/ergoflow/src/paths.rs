//! Transposition protocols: direct single-step exchanges, indirect
//! 2n-1-step non-entangling chains, hybrid plans, time-resolved two-level
//! evolution, and separability certificates.
//!
//! Physical time never appears: every step is parametrized by normalized
//! time `s` in `[0, 1]` through a monotone mixing schedule `m(s)` with
//! `m(0) = 0`, `m(1) = 1`. The rotation angle is `theta = (pi/2) m(s)`,
//! so `m(s) = s` reproduces the constant-Hamiltonian path.

use std::sync::Arc;

use num_complex::Complex64;

use crate::ensemble::{
    differing_sites, BasisLabel, CoherentPairState, DiagonalState, QuditHamiltonian,
};
use crate::error::{Error, Result};
use crate::work::{apply_swap, total_energy};

/// Mixing schedule of a transposition step.
#[derive(Clone)]
pub enum Schedule {
    /// `m(s) = s`.
    Linear,
    /// Any monotone function with `m(0) = 0`, `m(1) = 1`. All reported
    /// quantities depend only on `|u11 u12|`, so the choice never affects
    /// peak bounds, only where in `s` the peak sits.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Schedule {
    pub fn mix(&self, s: f64) -> f64 {
        match self {
            Schedule::Linear => s,
            Schedule::Custom(f) => f(s),
        }
    }
}

impl std::fmt::Debug for Schedule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Schedule::Linear => write!(f, "Linear"),
            Schedule::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// One two-level population exchange between a pair of basis labels.
#[derive(Debug, Clone)]
pub struct TranspositionStep {
    alpha: BasisLabel,
    beta: BasisLabel,
    schedule: Schedule,
}

impl TranspositionStep {
    pub fn new(alpha: BasisLabel, beta: BasisLabel) -> Result<Self> {
        Self::with_schedule(alpha, beta, Schedule::Linear)
    }

    pub fn with_schedule(alpha: BasisLabel, beta: BasisLabel, schedule: Schedule) -> Result<Self> {
        if alpha == beta {
            return Err(Error::InvalidArgument("step labels must differ".into()));
        }
        if alpha.len() != beta.len() {
            return Err(Error::LengthMismatch {
                left: alpha.len(),
                right: beta.len(),
            });
        }
        Ok(Self {
            alpha,
            beta,
            schedule,
        })
    }

    pub fn alpha(&self) -> &BasisLabel {
        &self.alpha
    }

    pub fn beta(&self) -> &BasisLabel {
        &self.beta
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn differing_sites(&self) -> Vec<usize> {
        differing_sites(&self.alpha, &self.beta).expect("lengths checked at construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanKind {
    Direct,
    Indirect,
    /// Target separability level of the single remaining direct step.
    Hybrid(usize),
    /// Number of interpolation rounds.
    Ladder(usize),
}

/// Ordered sequence of transposition steps realizing one net population
/// exchange.
#[derive(Debug, Clone)]
pub struct PathPlan {
    kind: PlanKind,
    steps: Vec<TranspositionStep>,
}

impl PathPlan {
    pub fn new(kind: PlanKind, steps: Vec<TranspositionStep>) -> Self {
        Self { kind, steps }
    }

    pub fn kind(&self) -> PlanKind {
        self.kind
    }

    pub fn steps(&self) -> &[TranspositionStep] {
        &self.steps
    }

    /// Step count; the cost model treats every global transposition as
    /// equally time consuming.
    pub fn cost(&self) -> usize {
        self.steps.len()
    }
}

/// Single-step exchange of `alpha` and `beta`.
pub fn direct_plan(alpha: &BasisLabel, beta: &BasisLabel) -> Result<PathPlan> {
    Ok(PathPlan {
        kind: PlanKind::Direct,
        steps: vec![TranspositionStep::new(alpha.clone(), beta.clone())?],
    })
}

/// Chain labels obtained from `alpha` by replacing, one at a time in
/// ascending site order, the digits on `sites` with `beta`'s digits.
fn shuttle_chain(alpha: &BasisLabel, beta: &BasisLabel, sites: &[usize]) -> Vec<BasisLabel> {
    let mut chain = Vec::with_capacity(sites.len() + 1);
    chain.push(alpha.clone());
    let mut digits = alpha.digits().to_vec();
    for &site in sites {
        digits[site] = beta.digits()[site];
        chain.push(BasisLabel::new(digits.clone()));
    }
    chain
}

/// The 2n-1-step non-entangling chain: forward single-site replacements
/// from `alpha` to `beta`, then the n-1 steps back. Every step's pair
/// differs at exactly one site and the composed permutation is the bare
/// `(alpha beta)` transposition.
pub fn indirect_plan(alpha: &BasisLabel, beta: &BasisLabel) -> Result<PathPlan> {
    let diff = differing_sites(alpha, beta)?;
    if diff.is_empty() {
        return Err(Error::InvalidArgument("pair labels must differ".into()));
    }
    let chain = shuttle_chain(alpha, beta, &diff);
    let n = diff.len();
    let mut steps = Vec::with_capacity(2 * n - 1);
    for j in 0..n {
        steps.push(TranspositionStep::new(chain[j].clone(), chain[j + 1].clone())?);
    }
    for j in (1..n).rev() {
        steps.push(TranspositionStep::new(chain[j].clone(), chain[j - 1].clone())?);
    }
    Ok(PathPlan {
        kind: PlanKind::Indirect,
        steps,
    })
}

/// Shuttles the n-l lowest-indexed differing sites via indirect single-site
/// steps, performs one direct step on a pair differing at the l
/// highest-indexed sites, then undoes the shuttle. Cost 2(n-l)+1.
pub fn hybrid_plan(alpha: &BasisLabel, beta: &BasisLabel, l: usize) -> Result<PathPlan> {
    let diff = differing_sites(alpha, beta)?;
    let n = diff.len();
    if n == 0 {
        return Err(Error::InvalidArgument("pair labels must differ".into()));
    }
    if l < 1 || l > n {
        return Err(Error::InvalidArgument(format!(
            "separability target l = {l} out of range 1..={n}"
        )));
    }
    let shuttle_sites = &diff[..n - l];
    let chain = shuttle_chain(alpha, beta, shuttle_sites);
    let m = shuttle_sites.len();
    let mut steps = Vec::with_capacity(2 * m + 1);
    for j in 0..m {
        steps.push(TranspositionStep::new(chain[j].clone(), chain[j + 1].clone())?);
    }
    steps.push(TranspositionStep::new(chain[m].clone(), beta.clone())?);
    for j in (1..=m).rev() {
        steps.push(TranspositionStep::new(chain[j].clone(), chain[j - 1].clone())?);
    }
    Ok(PathPlan {
        kind: PlanKind::Hybrid(l),
        steps,
    })
}

/// Two-level evolution of one step at normalized time `s`.
///
/// With `theta = (pi/2) m(s)` the unitary block is
/// `u11 = cos(theta)`, `u12 = -i sin(theta)` (Pauli-X generation, -i phase
/// convention); populations mix as `cos^2/sin^2` and the coherence is
/// `-i cos(theta) sin(theta) (P_alpha - P_beta)`. The endpoints are exact:
/// `s = 0` returns the pre-state, `s = 1` the swapped populations with zero
/// coherence.
pub fn evolve_step(
    pre_state: &DiagonalState,
    step: &TranspositionStep,
    s: f64,
) -> Result<CoherentPairState> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidArgument(format!(
            "normalized time {s} outside [0, 1]"
        )));
    }
    let shape = pre_state.shape();
    let pa = pre_state.population(shape.flat_of_label(step.alpha())?);
    let pb = pre_state.population(shape.flat_of_label(step.beta())?);

    let (pop_alpha, pop_beta, coherence) = if s == 0.0 {
        (pa, pb, Complex64::new(0.0, 0.0))
    } else if s == 1.0 {
        (pb, pa, Complex64::new(0.0, 0.0))
    } else {
        let theta = std::f64::consts::FRAC_PI_2 * step.schedule().mix(s);
        let (c, sn) = (theta.cos(), theta.sin());
        (
            c * c * pa + sn * sn * pb,
            sn * sn * pa + c * c * pb,
            Complex64::new(0.0, -c * sn * (pa - pb)),
        )
    };
    CoherentPairState::new(
        pre_state.clone(),
        step.alpha().clone(),
        step.beta().clone(),
        pop_alpha,
        pop_beta,
        coherence,
    )
}

/// One product term of a separable decomposition: a single-site 2x2 density
/// block tensored with a fixed spectator string.
#[derive(Debug, Clone)]
pub struct ProductTerm {
    pub weight: f64,
    /// Site carrying the rotated block.
    pub site: usize,
    /// The two single-site digits spanned by the block.
    pub levels: (u8, u8),
    /// Unit-trace 2x2 density factor on those digits.
    pub factor: [[Complex64; 2]; 2],
    /// Digits of the full label with the active site's digit taken from
    /// `levels`; the other sites are the spectators.
    pub spectator: BasisLabel,
}

/// Explicit separable decomposition of a single-site-difference snapshot:
/// `weight * rho_1(s) (x) |spectators><spectators| + sum_mu P_mu |mu><mu|`.
#[derive(Debug, Clone)]
pub struct SeparableDecomposition {
    terms: Vec<ProductTerm>,
    /// Diagonal background with the pair entries zeroed.
    residual: Vec<f64>,
}

impl SeparableDecomposition {
    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    pub fn residual(&self) -> &[f64] {
        &self.residual
    }

    /// Largest entrywise deviation between the reassembled matrix and the
    /// snapshot (diagonal entries plus the single coherence).
    pub fn reassembly_error(&self, snapshot: &CoherentPairState) -> f64 {
        let dim = self.residual.len();
        let mut diag = self.residual.clone();
        let mut coherence = Complex64::new(0.0, 0.0);
        let shape = snapshot.shape();
        for term in &self.terms {
            let mut a_digits = term.spectator.digits().to_vec();
            let mut b_digits = a_digits.clone();
            a_digits[term.site] = term.levels.0;
            b_digits[term.site] = term.levels.1;
            let fa = shape
                .flat_of_label(&BasisLabel::new(a_digits))
                .expect("term labels valid");
            let fb = shape
                .flat_of_label(&BasisLabel::new(b_digits))
                .expect("term labels valid");
            diag[fa] += term.weight * term.factor[0][0].re;
            diag[fb] += term.weight * term.factor[1][1].re;
            coherence += term.weight * term.factor[0][1];
        }
        let mut err: f64 = (coherence - snapshot.coherence()).norm();
        for flat in 0..dim {
            err = err.max((diag[flat] - snapshot.diagonal_entry(flat)).abs());
        }
        err
    }
}

/// Builds and verifies the separable form of a snapshot whose pair differs
/// at exactly one site. The 2x2 factor is the rotated single-site block;
/// its spectrum is `{P_alpha, P_beta} / (P_alpha + P_beta)` independent of
/// `s`, so positivity always holds. Errors when the pair differs at more
/// than one site. A zero-weight pair degenerates to the all-diagonal
/// decomposition.
pub fn separability_certificate(snapshot: &CoherentPairState) -> Result<SeparableDecomposition> {
    let diff = differing_sites(snapshot.alpha(), snapshot.beta())?;
    if diff.len() != 1 {
        return Err(Error::CertificateNotApplicable {
            differing: diff.len(),
        });
    }
    let site = diff[0];
    let shape = snapshot.shape();
    let dim = shape.dense_dim()?;

    let mut residual = Vec::with_capacity(dim);
    for flat in 0..dim {
        residual.push(snapshot.base().population(flat));
    }
    residual[snapshot.flat_alpha()] = 0.0;
    residual[snapshot.flat_beta()] = 0.0;

    let weight = snapshot.pop_alpha() + snapshot.pop_beta();
    let terms = if weight > 0.0 {
        let inv = 1.0 / weight;
        let factor = [
            [
                Complex64::new(snapshot.pop_alpha() * inv, 0.0),
                snapshot.coherence() * inv,
            ],
            [
                snapshot.coherence().conj() * inv,
                Complex64::new(snapshot.pop_beta() * inv, 0.0),
            ],
        ];
        // verify psd + unit trace of the factor
        let trace = factor[0][0].re + factor[1][1].re;
        if (trace - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "factor trace {trace:.17e} differs from 1"
            )));
        }
        let half_gap = 0.5 * (factor[0][0].re - factor[1][1].re);
        let min_eig = 0.5 * trace - (half_gap * half_gap + factor[0][1].norm_sqr()).sqrt();
        if min_eig < -1e-12 {
            return Err(Error::InvalidArgument(format!(
                "factor not positive semidefinite: min eigenvalue {min_eig:.17e}"
            )));
        }
        vec![ProductTerm {
            weight,
            site,
            levels: (
                snapshot.alpha().digits()[site],
                snapshot.beta().digits()[site],
            ),
            factor,
            spectator: snapshot.alpha().clone(),
        }]
    } else {
        Vec::new()
    };

    Ok(SeparableDecomposition { terms, residual })
}

/// Work, step count, and the work-per-step power proxy of a plan applied
/// to a diagonal state.
#[derive(Debug, Clone, Copy)]
pub struct PowerReport {
    pub work: f64,
    pub steps: usize,
    pub work_per_step: f64,
}

/// Applies every step of a plan at `s = 1` in order.
pub fn apply_plan(plan: &PathPlan, state: &DiagonalState) -> Result<DiagonalState> {
    let mut current = state.clone();
    for step in plan.steps() {
        current = apply_swap(&current, step.alpha(), step.beta())?;
    }
    Ok(current)
}

pub fn plan_power_report(
    plan: &PathPlan,
    state: &DiagonalState,
    hamiltonian: &QuditHamiltonian,
) -> Result<PowerReport> {
    let initial = total_energy(state, hamiltonian)?;
    let final_state = apply_plan(plan, state)?;
    let work = initial - total_energy(&final_state, hamiltonian)?;
    let steps = plan.cost();
    Ok(PowerReport {
        work,
        steps,
        work_per_step: if steps > 0 { work / steps as f64 } else { 0.0 },
    })
}

/// One round of the entanglement-reduction ladder.
#[derive(Debug, Clone)]
pub struct LadderRound {
    /// Interpolated spectrum at the end of this round.
    pub spectrum: Vec<f64>,
    /// Relative entropy of this round's spectrum from the start spectrum.
    pub divergence_from_start: f64,
    /// Direct exchange of the type-class representatives of the previous
    /// and current spectra; empty when the representatives coincide.
    pub plan: PathPlan,
}

/// Splits the exchange from spectrum `p` towards `q` into `K` rounds along
/// the normalized geometric interpolation `rho_t ~ p^(1-t/K) q^(t/K)`,
/// which makes the divergences `S(rho_t || p)` increase monotonically.
/// Spectra must have identical support.
pub fn ladder_plan(
    p: &[f64],
    q: &[f64],
    rounds: usize,
    sites: usize,
) -> Result<Vec<LadderRound>> {
    crate::ensemble::validate_spectrum(p)?;
    crate::ensemble::validate_spectrum(q)?;
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    if rounds == 0 {
        return Err(Error::InvalidArgument("need at least one round".into()));
    }
    for (k, (&pk, &qk)) in p.iter().zip(q).enumerate() {
        if (pk > 0.0) != (qk > 0.0) {
            return Err(Error::SupportViolation { index: k });
        }
    }

    let interpolate = |t: f64| -> Vec<f64> {
        let mut r: Vec<f64> = p
            .iter()
            .zip(q)
            .map(|(&pk, &qk)| {
                if pk > 0.0 {
                    (((1.0 - t) * pk.ln()) + t * qk.ln()).exp()
                } else {
                    0.0
                }
            })
            .collect();
        let z: f64 = r.iter().sum();
        for v in r.iter_mut() {
            *v /= z;
        }
        r
    };

    let mut out = Vec::with_capacity(rounds);
    let mut prev_rep = type_class_representative(p, sites);
    for round in 1..=rounds {
        let spectrum = interpolate(round as f64 / rounds as f64);
        let rep = type_class_representative(&spectrum, sites);
        let plan = if rep == prev_rep {
            PathPlan {
                kind: PlanKind::Ladder(round),
                steps: Vec::new(),
            }
        } else {
            PathPlan {
                kind: PlanKind::Ladder(round),
                steps: vec![TranspositionStep::new(prev_rep.clone(), rep.clone())?],
            }
        };
        out.push(LadderRound {
            divergence_from_start: crate::scenarios::relative_entropy(&spectrum, p)?,
            spectrum,
            plan,
        });
        prev_rep = rep;
    }
    Ok(out)
}

/// Canonical label of the type class with composition `round(N * r)`
/// (largest-remainder rounding): digits sorted ascending.
pub fn type_class_representative(spectrum: &[f64], sites: usize) -> BasisLabel {
    let composition = crate::scenarios::rounded_composition(spectrum, sites);
    let mut digits = Vec::with_capacity(sites);
    for (digit, &count) in composition.iter().enumerate() {
        digits.extend(std::iter::repeat(digit as u8).take(count));
    }
    BasisLabel::new(digits)
}
