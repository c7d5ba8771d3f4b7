//! Closed-form lower bounds on the entropy-vector entries of snapshot
//! states with a single coherent pair, l-separability classification, and
//! exact small-system oracles (pure-state entropy vectors, partial
//! transposition).
//!
//! Bipartitions are enumerated over the differing-site set of the pair
//! only: cuts that do not split it map the pair onto itself, and
//! positivity then forces the penalty term to dominate the coherence, so
//! such cuts never contribute detection.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::ensemble::{
    differing_sites, BasisLabel, CoherentPairState, DiagonalState, EnsembleShape,
};
use crate::error::{Error, Result};

/// Dense-dimension cap for the pure-state entropy-vector oracle.
pub const ENTROPY_VECTOR_CAP: usize = 1 << 12;
/// Dense-dimension cap for the partial-transpose oracle.
pub const PPT_CAP: usize = 1 << 10;

/// All unordered nontrivial bipartitions of a differing-site set, each
/// represented by the part containing the first site.
#[derive(Debug, Clone)]
pub struct BipartitionSet {
    differing: Vec<usize>,
    parts: Vec<Vec<usize>>,
}

impl BipartitionSet {
    /// Enumerates the 2^(n-1) - 1 bipartitions of `differing` in ascending
    /// mask order; no bipartition appears twice under complementation.
    pub fn new(differing: Vec<usize>) -> Self {
        let n = differing.len();
        let mut parts = Vec::new();
        if n >= 2 {
            // subsets containing differing[0], excluding the full set
            let full = (1usize << (n - 1)) - 1;
            for mask in 0..full {
                let mut part = vec![differing[0]];
                for (bit, &site) in differing[1..].iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        part.push(site);
                    }
                }
                parts.push(part);
            }
        }
        Self { differing, parts }
    }

    pub fn differing(&self) -> &[usize] {
        &self.differing
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Labels obtained by exchanging the digits of `alpha` and `beta` on one
/// side `gamma` of a bipartition: the flip states.
pub fn flip_states(
    alpha: &BasisLabel,
    beta: &BasisLabel,
    gamma: &[usize],
) -> Result<(BasisLabel, BasisLabel)> {
    let diff = differing_sites(alpha, beta)?;
    if gamma.is_empty() || gamma.len() >= diff.len() {
        return Err(Error::InvalidArgument(format!(
            "bipartition part of size {} does not split the {} differing sites",
            gamma.len(),
            diff.len()
        )));
    }
    for &site in gamma {
        if !diff.contains(&site) {
            return Err(Error::InvalidArgument(format!(
                "site {site} is not a differing site"
            )));
        }
    }
    let mut a = alpha.digits().to_vec();
    let mut b = beta.digits().to_vec();
    for &site in gamma {
        a[site] = beta.digits()[site];
        b[site] = alpha.digits()[site];
    }
    Ok((BasisLabel::new(a), BasisLabel::new(b)))
}

/// Lower bounds on the entropy-vector entries of a single-coherent-pair
/// state, non-increasing in the index k.
#[derive(Debug, Clone)]
pub struct LambdaVector {
    /// Number of differing sites of the pair (the effective party count).
    pub differing: usize,
    /// Entries `Lambda_1 .. Lambda_{2^(n-1)-1}`; empty when the pair
    /// differs at fewer than two sites (no bipartition to detect across).
    pub entries: Vec<f64>,
}

impl LambdaVector {
    /// First entry, or 0 when there is nothing to detect.
    pub fn lambda_1(&self) -> f64 {
        self.entries.first().copied().unwrap_or(0.0)
    }

    /// Last entry (the genuine-multipartite witness), or 0 when empty.
    pub fn lambda_last(&self) -> f64 {
        self.entries.last().copied().unwrap_or(0.0)
    }

    /// 1-based lookup.
    pub fn lambda(&self, k: usize) -> Option<f64> {
        self.entries.get(k.checked_sub(1)?).copied()
    }
}

/// Sorted penalty terms `sqrt(P_flip_a * P_flip_b)` over a bipartition set,
/// evaluated with a caller-supplied diagonal lookup.
fn penalty_terms(
    shape: EnsembleShape,
    alpha: &BasisLabel,
    beta: &BasisLabel,
    bipartitions: &BipartitionSet,
    diag: impl Fn(usize) -> f64,
) -> Result<Vec<f64>> {
    let mut terms = Vec::with_capacity(bipartitions.len());
    for gamma in bipartitions.parts() {
        let (fa, fb) = flip_states(alpha, beta, gamma)?;
        let pa = diag(shape.flat_of_label(&fa)?);
        let pb = diag(shape.flat_of_label(&fb)?);
        terms.push((pa * pb).sqrt());
    }
    terms.sort_by(f64::total_cmp);
    Ok(terms)
}

/// The minimum over k-tuples of a sum of fixed non-negative terms is the
/// sum of the k smallest, so the whole vector comes from one prefix scan.
fn lambda_from_terms(leading: f64, terms: &[f64]) -> Vec<f64> {
    let mut entries = Vec::with_capacity(terms.len());
    let mut prefix = 0.0;
    for &t in terms {
        prefix += t;
        entries.push(leading - 2.0 * prefix);
    }
    entries
}

/// Instantaneous bounds for a snapshot:
/// `Lambda_k = 2 (|coherence| - sum of k smallest penalty terms)`,
/// with the penalty terms read off the snapshot's diagonal.
pub fn lambda_at(snapshot: &CoherentPairState) -> Result<LambdaVector> {
    let diff = differing_sites(snapshot.alpha(), snapshot.beta())?;
    let bipartitions = BipartitionSet::new(diff.clone());
    let terms = penalty_terms(
        snapshot.shape(),
        snapshot.alpha(),
        snapshot.beta(),
        &bipartitions,
        |flat| snapshot.diagonal_entry(flat),
    )?;
    let coherence = snapshot.coherence().norm();
    let entries = lambda_from_terms(2.0 * coherence, &terms);
    Ok(LambdaVector {
        differing: diff.len(),
        entries,
    })
}

/// Peak bounds of a transposition, reached where `|u11 u12| = 1/2`:
/// `Lambda_k = |P_alpha - P_beta| - 2 (sum of k smallest penalty terms)`,
/// evaluated with the pre-step populations.
pub fn lambda_peak(
    pre_state: &DiagonalState,
    alpha: &BasisLabel,
    beta: &BasisLabel,
) -> Result<LambdaVector> {
    let diff = differing_sites(alpha, beta)?;
    let shape = pre_state.shape();
    let bipartitions = BipartitionSet::new(diff.clone());
    let terms = penalty_terms(shape, alpha, beta, &bipartitions, |flat| {
        pre_state.population(flat)
    })?;
    let pa = pre_state.population(shape.flat_of_label(alpha)?);
    let pb = pre_state.population(shape.flat_of_label(beta)?);
    Ok(LambdaVector {
        differing: diff.len(),
        entries: lambda_from_terms((pa - pb).abs(), &terms),
    })
}

/// Peak bounds when every penalty term equals `sqrt(P_alpha P_beta)`,
/// as happens for product pre-states: `Lambda_k = |Pa - Pb| - 2k sqrt(Pa Pb)`.
pub fn lambda_peak_equal_terms(pop_alpha: f64, pop_beta: f64, differing: usize) -> LambdaVector {
    let count = if differing >= 2 {
        (1usize << (differing - 1)) - 1
    } else {
        0
    };
    let term = (pop_alpha * pop_beta).sqrt();
    let lead = (pop_alpha - pop_beta).abs();
    LambdaVector {
        differing,
        entries: (1..=count).map(|k| lead - 2.0 * k as f64 * term).collect(),
    }
}

/// l-separability verdict derived from a [`LambdaVector`].
///
/// Exclusion of l-separability is tested at the entry index
/// `k(l) = 2^(n-1) - 2^(l-1) + 1`; excluding l rules out every l' >= l as
/// well, so `max_ruled_out_l` equals the party count whenever anything is
/// excluded, while `min_ruled_out_l` carries the strongest claim: the
/// state is at most `min_ruled_out_l - 1`-separable (2 means GME).
#[derive(Debug, Clone)]
pub struct SeparabilityReport {
    pub entangled: bool,
    pub gme: bool,
    pub max_ruled_out_l: usize,
    pub min_ruled_out_l: usize,
    pub lambda: LambdaVector,
}

impl SeparabilityReport {
    /// True iff l-separability is excluded (`Lambda_{k(l)} > 0`).
    pub fn ruled_out(&self, l: usize) -> bool {
        let n = self.lambda.differing;
        if n < 2 || l < 2 || l > n {
            return false;
        }
        let k = (1usize << (n - 1)) - (1usize << (l - 1)) + 1;
        self.lambda.lambda(k).map(|v| v > 0.0).unwrap_or(false)
    }

    /// Short classification label: "SEP?" when nothing is excluded (full
    /// separability not refuted), "GME" when even biseparability is
    /// excluded, otherwise "<=L-sep" with L the best surviving level.
    pub fn class_label(&self) -> String {
        if self.min_ruled_out_l == 0 {
            "SEP?".to_string()
        } else if self.min_ruled_out_l == 2 {
            "GME".to_string()
        } else {
            format!("<={}-sep", self.min_ruled_out_l - 1)
        }
    }
}

pub fn classify(lambda: LambdaVector) -> SeparabilityReport {
    let n = lambda.differing;
    let mut report = SeparabilityReport {
        entangled: lambda.lambda_1() > 0.0,
        gme: !lambda.entries.is_empty() && lambda.lambda_last() > 0.0,
        max_ruled_out_l: 0,
        min_ruled_out_l: 0,
        lambda,
    };
    if n >= 2 {
        for l in (2..=n).rev() {
            if report.ruled_out(l) {
                report.max_ruled_out_l = report.max_ruled_out_l.max(l);
                report.min_ruled_out_l = l;
            }
        }
    }
    report
}

/// Population ratio at which `Lambda_k` changes sign under equal penalty
/// terms: the positive root of `x - 1 = 2k sqrt(x)`.
pub fn threshold_ratio_exact(k: f64) -> f64 {
    1.0 + 2.0 * k * k + 2.0 * k * (1.0 + k * k).sqrt()
}

/// The ratio threshold as printed in the source formula,
/// `1 + 2 gamma + 2 sqrt(gamma + gamma^2)`. Agrees with
/// [`threshold_ratio_exact`] at `gamma = 1` and diverges from it for
/// larger `gamma`; both are reported side by side downstream.
pub fn threshold_ratio_paper(gamma: f64) -> f64 {
    1.0 + 2.0 * gamma + 2.0 * (gamma + gamma * gamma).sqrt()
}

/// Linear-entropy entropy vector of a pure state: entries
/// `sqrt(2 (1 - tr rho_cut^2))` over all site bipartitions, sorted
/// non-increasing.
pub fn entropy_vector_pure(amplitudes: &[Complex64], shape: EnsembleShape) -> Result<Vec<f64>> {
    let dim = shape.dense_dim()?;
    if dim > ENTROPY_VECTOR_CAP {
        return Err(Error::CapExceeded {
            dim: dim as u128,
            cap: ENTROPY_VECTOR_CAP,
        });
    }
    if amplitudes.len() != dim {
        return Err(Error::ShapeMismatch(format!(
            "expected {dim} amplitudes, got {}",
            amplitudes.len()
        )));
    }
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { sum: norm });
    }

    let sites = shape.sites();
    let d = shape.levels();
    let all: Vec<usize> = (0..sites).collect();
    let cuts = BipartitionSet::new(all);
    let mut entries = Vec::with_capacity(cuts.len());
    for part in cuts.parts() {
        // reshape the amplitude vector into a (dim_part x dim_rest) matrix
        let in_part: Vec<bool> = (0..sites).map(|s| part.contains(&s)).collect();
        let dim_part = d.pow(part.len() as u32);
        let dim_rest = dim / dim_part;
        let mut m = DMatrix::<Complex64>::zeros(dim_part, dim_rest);
        for (flat, &amp) in amplitudes.iter().enumerate() {
            let label = shape.label_of_flat(flat);
            let mut row = 0usize;
            let mut col = 0usize;
            let mut row_stride = 1usize;
            let mut col_stride = 1usize;
            for (site, &digit) in label.digits().iter().enumerate() {
                if in_part[site] {
                    row += digit as usize * row_stride;
                    row_stride *= d;
                } else {
                    col += digit as usize * col_stride;
                    col_stride *= d;
                }
            }
            m[(row, col)] = amp;
        }
        // tr(rho^2) = ||M^dagger M||_F^2 with rho = M M^dagger
        let gram = m.adjoint() * &m;
        let purity: f64 = gram.iter().map(|z| z.norm_sqr()).sum();
        entries.push((2.0 * (1.0 - purity).max(0.0)).sqrt());
    }
    entries.sort_by(|a, b| b.total_cmp(a));
    Ok(entries)
}

/// Dense density matrix of a snapshot, for the oracle routines.
pub fn snapshot_density_matrix(snapshot: &CoherentPairState) -> Result<DMatrix<Complex64>> {
    let dim = snapshot.shape().dense_dim()?;
    if dim > PPT_CAP {
        return Err(Error::CapExceeded {
            dim: dim as u128,
            cap: PPT_CAP,
        });
    }
    let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
    for flat in 0..dim {
        rho[(flat, flat)] = Complex64::new(snapshot.diagonal_entry(flat), 0.0);
    }
    rho[(snapshot.flat_alpha(), snapshot.flat_beta())] = snapshot.coherence();
    rho[(snapshot.flat_beta(), snapshot.flat_alpha())] = snapshot.coherence().conj();
    Ok(rho)
}

/// Minimum eigenvalue of the partial transpose of `rho` across the site
/// cut `(gamma, rest)`; negative means entangled across that cut.
pub fn ppt_min_eigenvalue(
    rho: &DMatrix<Complex64>,
    shape: EnsembleShape,
    gamma: &[usize],
) -> Result<f64> {
    let dim = shape.dense_dim()?;
    if dim > PPT_CAP {
        return Err(Error::CapExceeded {
            dim: dim as u128,
            cap: PPT_CAP,
        });
    }
    if rho.nrows() != dim || rho.ncols() != dim {
        return Err(Error::ShapeMismatch(format!(
            "density matrix is {}x{}, expected {dim}x{dim}",
            rho.nrows(),
            rho.ncols()
        )));
    }
    for &site in gamma {
        if site >= shape.sites() {
            return Err(Error::InvalidArgument(format!("site {site} out of range")));
        }
    }

    // transpose the gamma digits: pt[(mu', nu')] = rho[(mu, nu)] where the
    // primed labels carry each other's digits on gamma
    let mut pt = DMatrix::<Complex64>::zeros(dim, dim);
    for mu in 0..dim {
        let lmu = shape.label_of_flat(mu);
        for nu in 0..dim {
            let lnu = shape.label_of_flat(nu);
            let mut a = lmu.digits().to_vec();
            let mut b = lnu.digits().to_vec();
            for &site in gamma {
                a[site] = lnu.digits()[site];
                b[site] = lmu.digits()[site];
            }
            let fa = shape.flat_of_label(&BasisLabel::new(a))?;
            let fb = shape.flat_of_label(&BasisLabel::new(b))?;
            pt[(fa, fb)] = rho[(mu, nu)];
        }
    }
    let eig = pt.symmetric_eigenvalues();
    Ok(eig.iter().fold(f64::INFINITY, |m, &e| m.min(e)))
}

/// True iff some site cut splitting the pair's differing sites has a
/// negative partial transpose.
pub fn has_npt_cut(snapshot: &CoherentPairState) -> Result<bool> {
    let rho = snapshot_density_matrix(snapshot)?;
    let shape = snapshot.shape();
    let sites: Vec<usize> = (0..shape.sites()).collect();
    let diff = differing_sites(snapshot.alpha(), snapshot.beta())?;
    for part in BipartitionSet::new(sites).parts() {
        let inside = diff.iter().filter(|s| part.contains(s)).count();
        if inside == 0 || inside == diff.len() {
            continue; // cut does not split the differing set
        }
        if ppt_min_eigenvalue(&rho, shape, part)? < 0.0 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::product_state;
    use crate::paths::{evolve_step, TranspositionStep};

    fn label(digits: &[u8]) -> BasisLabel {
        BasisLabel::new(digits.to_vec())
    }

    #[test]
    fn bipartition_counts_and_uniqueness() {
        for n in 2..=5 {
            let set = BipartitionSet::new((0..n).collect());
            assert_eq!(set.len(), (1 << (n - 1)) - 1);
            // no part listed twice under complementation: every part
            // contains site 0 and is a proper subset
            for part in set.parts() {
                assert!(part.contains(&0));
                assert!(part.len() < n);
            }
        }
        assert!(BipartitionSet::new(vec![3]).is_empty());
    }

    #[test]
    fn flip_states_digit_surgery() {
        let a = label(&[0, 0, 0]);
        let b = label(&[0, 1, 1]);
        let (fa, fb) = flip_states(&a, &b, &[1]).unwrap();
        assert_eq!(fa, label(&[0, 1, 0]));
        assert_eq!(fb, label(&[0, 0, 1]));

        // complement symmetry
        let (ga, gb) = flip_states(&a, &b, &[2]).unwrap();
        assert_eq!(ga, fb);
        assert_eq!(gb, fa);

        assert!(flip_states(&a, &b, &[1, 2]).is_err()); // full set
        assert!(flip_states(&a, &b, &[0]).is_err()); // not a differing site
    }

    #[test]
    fn flip_identity_for_product_states() {
        let spectrum = [0.5, 0.3, 0.2];
        let st = product_state(&spectrum, 4).unwrap();
        let shape = st.shape();
        let a = label(&[1, 1, 1, 1]);
        let b = label(&[0, 2, 2, 2]);
        let pa = st.population(shape.flat_of_label(&a).unwrap());
        let pb = st.population(shape.flat_of_label(&b).unwrap());
        for gamma in BipartitionSet::new(differing_sites(&a, &b).unwrap()).parts() {
            let (fa, fb) = flip_states(&a, &b, gamma).unwrap();
            let qa = st.population(shape.flat_of_label(&fa).unwrap());
            let qb = st.population(shape.flat_of_label(&fb).unwrap());
            assert!((qa * qb - pa * pb).abs() < 1e-15);
        }
    }

    #[test]
    fn lambda_zero_coherence_is_nonpositive() {
        let st = product_state(&[0.6, 0.4], 3).unwrap();
        let step = TranspositionStep::new(label(&[0, 0, 0]), label(&[1, 1, 1])).unwrap();
        let snap = evolve_step(&st, &step, 0.0).unwrap();
        let lv = lambda_at(&snap).unwrap();
        assert!(lv.entries.iter().all(|&v| v <= 0.0));
    }

    #[test]
    fn lambda_spec_product_example() {
        // p = (0.9, 0.1), N = 2, pair (0,0)/(1,1), s = 1/2.
        let st = product_state(&[0.9, 0.1], 2).unwrap();
        let step = TranspositionStep::new(label(&[0, 0]), label(&[1, 1])).unwrap();
        let snap = evolve_step(&st, &step, 0.5).unwrap();
        let lv = lambda_at(&snap).unwrap();
        assert_eq!(lv.entries.len(), 1);
        assert!((lv.lambda_1() - 0.62).abs() < 1e-12);
    }

    #[test]
    fn lambda_peak_matches_dense_time_sampling() {
        let st = product_state(&[0.5, 0.3, 0.2], 3).unwrap();
        let a = label(&[1, 1, 1]);
        let b = label(&[0, 2, 2]);
        let peak = lambda_peak(&st, &a, &b).unwrap();
        let step = TranspositionStep::new(a, b).unwrap();
        let mut best = vec![f64::NEG_INFINITY; peak.entries.len()];
        for k in 0..=1000 {
            let s = k as f64 / 1000.0;
            let lv = lambda_at(&evolve_step(&st, &step, s).unwrap()).unwrap();
            for (slot, v) in best.iter_mut().zip(&lv.entries) {
                *slot = slot.max(*v);
            }
        }
        for (max_sampled, expected) in best.iter().zip(&peak.entries) {
            assert!((max_sampled - expected).abs() < 1e-6);
        }
        // exact agreement at the |u11 u12| = 1/2 point (s = 1/2, linear)
        let lv = lambda_at(&evolve_step(&st, &step, 0.5).unwrap()).unwrap();
        for (got, expected) in lv.entries.iter().zip(&peak.entries) {
            assert!((got - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_monotone_in_k() {
        let st = product_state(&[0.4, 0.35, 0.25], 4).unwrap();
        let lv = lambda_peak(&st, &label(&[1, 1, 1, 1]), &label(&[0, 2, 2, 2])).unwrap();
        assert_eq!(lv.entries.len(), 7);
        for w in lv.entries.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn equal_population_pair_not_detected() {
        let shape = EnsembleShape::new(2, 2).unwrap();
        let st = DiagonalState::new(shape, vec![0.3, 0.2, 0.2, 0.3]).unwrap();
        let lv = lambda_peak(&st, &label(&[0, 0]), &label(&[1, 1])).unwrap();
        assert!(lv.entries.iter().all(|&v| v <= 0.0));
    }

    #[test]
    fn classify_boundary_indices() {
        // n = 4: excluding l in {4, 3, 2} is tested at k in {1, 5, 7}
        let mk = |positive_up_to: usize| {
            let entries: Vec<f64> = (1..=7)
                .map(|k| if k <= positive_up_to { 1.0 } else { -1.0 })
                .collect();
            classify(LambdaVector {
                differing: 4,
                entries,
            })
        };
        let none = mk(0);
        assert!(!none.entangled && !none.gme);
        assert_eq!(none.min_ruled_out_l, 0);

        let only_full = mk(4); // k=1 positive (l=4), k=5 not
        assert!(only_full.entangled && !only_full.gme);
        assert_eq!(only_full.min_ruled_out_l, 4);
        assert_eq!(only_full.max_ruled_out_l, 4);

        let mid = mk(6); // k=5 positive (l=3), k=7 not
        assert_eq!(mid.min_ruled_out_l, 3);
        assert!(!mid.gme);

        let all = mk(7);
        assert!(all.gme);
        assert_eq!(all.min_ruled_out_l, 2);
        assert_eq!(all.class_label(), "GME");
    }

    #[test]
    fn classify_two_party_pair() {
        let lv = LambdaVector {
            differing: 2,
            entries: vec![0.5],
        };
        let report = classify(lv);
        assert!(report.entangled && report.gme);
        assert_eq!(report.min_ruled_out_l, 2);
    }

    #[test]
    fn threshold_values() {
        assert!((threshold_ratio_exact(1.0) - (3.0 + 2.0 * 2.0f64.sqrt())).abs() < 1e-12);
        assert!((threshold_ratio_exact(2.0) - (9.0 + 4.0 * 5.0f64.sqrt())).abs() < 1e-12);
        assert!((threshold_ratio_paper(1.0) - (3.0 + 2.0 * 2.0f64.sqrt())).abs() < 1e-12);
        assert!((threshold_ratio_paper(7.0) - (15.0 + 2.0 * 56.0f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn lambda_sign_change_at_exact_threshold() {
        for k in 1..=4 {
            let ratio = threshold_ratio_exact(k as f64);
            for (x, expect_positive) in [(ratio * 0.999, false), (ratio * 1.001, true)] {
                let pb = 1.0 / (1.0 + x) * 0.1; // arbitrary scale
                let pa = x * pb;
                let lv = lambda_peak_equal_terms(pa, pb, 4);
                if k <= lv.entries.len() {
                    assert_eq!(lv.lambda(k).unwrap() > 0.0, expect_positive, "k={k}");
                }
            }
        }
    }

    #[test]
    fn entropy_vector_pure_cases() {
        let shape = EnsembleShape::new(3, 2).unwrap();
        // product pure state |000>
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0] = Complex64::new(1.0, 0.0);
        let ev = entropy_vector_pure(&amps, shape).unwrap();
        assert!(ev.iter().all(|&e| e < 1e-12));

        // GHZ-like (|000> + |111>)/sqrt(2): every cut balanced rank-2
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0] = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
        amps[7] = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
        let ev = entropy_vector_pure(&amps, shape).unwrap();
        assert_eq!(ev.len(), 3);
        assert!(ev.iter().all(|&e| (e - 1.0).abs() < 1e-12));

        // Bell pair on sites 0,1 tensor |0> on site 2: exactly one zero
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        let fa = shape.flat_of_label(&label(&[0, 0, 0])).unwrap();
        let fb = shape.flat_of_label(&label(&[1, 1, 0])).unwrap();
        amps[fa] = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
        amps[fb] = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
        let ev = entropy_vector_pure(&amps, shape).unwrap();
        // the square root amplifies the ~1e-16 purity roundoff to ~1e-8
        let zeros = ev.iter().filter(|&&e| e < 1e-7).count();
        assert_eq!(zeros, 1);
    }

    #[test]
    fn entropy_vector_weighted_pair_smallest_entry() {
        // (sqrt(w)|alpha> + sqrt(1-w)|beta>) with D = all sites
        let shape = EnsembleShape::new(4, 2).unwrap();
        let w: f64 = 0.3;
        let mut amps = vec![Complex64::new(0.0, 0.0); 16];
        amps[0] = Complex64::new(w.sqrt(), 0.0);
        amps[15] = Complex64::new((1.0 - w).sqrt(), 0.0);
        let ev = entropy_vector_pure(&amps, shape).unwrap();
        let expected = 2.0 * (w * (1.0 - w)).sqrt();
        assert!((ev.last().unwrap() - expected).abs() < 1e-10);
    }

    #[test]
    fn ppt_diagonal_state_is_positive() {
        let st = product_state(&[0.7, 0.3], 2).unwrap();
        let step = TranspositionStep::new(label(&[0, 0]), label(&[1, 1])).unwrap();
        let snap = evolve_step(&st, &step, 0.0).unwrap();
        let rho = snapshot_density_matrix(&snap).unwrap();
        let min = ppt_min_eigenvalue(&rho, st.shape(), &[0]).unwrap();
        assert!(min >= -1e-14);
    }

    #[test]
    fn ppt_detects_the_lambda_example() {
        // p = (0.9, 0.1), N = 2: Lambda_1 = 0.62 > 0, so the cut is NPT
        let st = product_state(&[0.9, 0.1], 2).unwrap();
        let step = TranspositionStep::new(label(&[0, 0]), label(&[1, 1])).unwrap();
        let snap = evolve_step(&st, &step, 0.5).unwrap();
        assert!(has_npt_cut(&snap).unwrap());
        let rho = snapshot_density_matrix(&snap).unwrap();
        let min = ppt_min_eigenvalue(&rho, st.shape(), &[0]).unwrap();
        assert!(min < 0.0);
    }

    #[test]
    fn single_site_difference_is_ppt_everywhere() {
        let st = product_state(&[0.7, 0.3], 3).unwrap();
        let step = TranspositionStep::new(label(&[0, 0, 0]), label(&[1, 0, 0])).unwrap();
        let snap = evolve_step(&st, &step, 0.37).unwrap();
        assert!(!has_npt_cut(&snap).unwrap());
        let rho = snapshot_density_matrix(&snap).unwrap();
        for part in BipartitionSet::new(vec![0, 1, 2]).parts() {
            assert!(ppt_min_eigenvalue(&rho, st.shape(), part).unwrap() >= -1e-12);
        }
    }
}
