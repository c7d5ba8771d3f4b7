//! Index arithmetic, Hamiltonians, and state containers for N-fold tensor
//! products of d-level systems.
//!
//! Basis labels are strings of N digits, one per site, each in `0..d`.
//! Digits are 0-based everywhere in code (the level `|k>` of the physics
//! literature, k = 1..d, is digit `k - 1` here). Flat indices are the
//! little-endian mixed-radix encoding of the digit string: site 0 is the
//! least significant digit.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest dimension for which dense population vectors are allowed.
pub const DENSE_CAP: usize = 1 << 24;

/// Absolute tolerance on probability normalization.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Single-system Hamiltonian: level energies sorted non-decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditHamiltonian {
    levels: Vec<f64>,
}

impl QuditHamiltonian {
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::InvalidHamiltonian(format!(
                "need at least 2 levels, got {}",
                levels.len()
            )));
        }
        if levels.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidHamiltonian("non-finite level energy".into()));
        }
        if levels.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidHamiltonian(
                "levels must be sorted non-decreasing".into(),
            ));
        }
        Ok(Self { levels })
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Energy of one level, 0-based digit.
    pub fn level(&self, digit: u8) -> f64 {
        self.levels[digit as usize]
    }

    /// Total energy of a multi-site label: the sum of per-site level
    /// energies (non-interacting total Hamiltonian).
    pub fn energy_of_label(&self, label: &BasisLabel) -> Result<f64> {
        let d = self.levels.len();
        let mut e = 0.0;
        for (site, &digit) in label.digits().iter().enumerate() {
            if digit as usize >= d {
                return Err(Error::DigitOutOfRange {
                    site,
                    digit,
                    levels: d,
                });
            }
            e += self.levels[digit as usize];
        }
        Ok(e)
    }
}

/// Number of systems and levels per system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleShape {
    sites: usize,
    levels: usize,
}

impl EnsembleShape {
    pub fn new(sites: usize, levels: usize) -> Result<Self> {
        if sites == 0 {
            return Err(Error::InvalidShape("need at least one site".into()));
        }
        if levels < 2 {
            return Err(Error::InvalidShape(format!(
                "need at least 2 levels per site, got {levels}"
            )));
        }
        if levels > u8::MAX as usize + 1 {
            return Err(Error::InvalidShape(format!("too many levels: {levels}")));
        }
        Ok(Self { sites, levels })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Total Hilbert-space dimension d^N, exact in u128.
    pub fn dim(&self) -> u128 {
        (self.levels as u128).pow(self.sites as u32)
    }

    /// Dimension as a dense vector length, or an error above [`DENSE_CAP`].
    pub fn dense_dim(&self) -> Result<usize> {
        let dim = self.dim();
        if dim > DENSE_CAP as u128 {
            return Err(Error::CapExceeded {
                dim,
                cap: DENSE_CAP,
            });
        }
        Ok(dim as usize)
    }

    /// Little-endian mixed-radix value of a digit string.
    pub fn flat_of_label(&self, label: &BasisLabel) -> Result<usize> {
        if label.len() != self.sites {
            return Err(Error::LengthMismatch {
                left: label.len(),
                right: self.sites,
            });
        }
        let mut flat = 0usize;
        let mut stride = 1usize;
        for (site, &digit) in label.digits().iter().enumerate() {
            if digit as usize >= self.levels {
                return Err(Error::DigitOutOfRange {
                    site,
                    digit,
                    levels: self.levels,
                });
            }
            flat += digit as usize * stride;
            stride = stride.checked_mul(self.levels).unwrap_or(usize::MAX);
        }
        Ok(flat)
    }

    /// Inverse of [`flat_of_label`](Self::flat_of_label).
    pub fn label_of_flat(&self, mut flat: usize) -> BasisLabel {
        let mut digits = Vec::with_capacity(self.sites);
        for _ in 0..self.sites {
            digits.push((flat % self.levels) as u8);
            flat /= self.levels;
        }
        BasisLabel::new(digits)
    }

    /// Iterate all labels in flat-index order. Dense shapes only.
    pub fn labels(&self) -> Result<impl Iterator<Item = BasisLabel> + '_> {
        let dim = self.dense_dim()?;
        Ok((0..dim).map(move |f| self.label_of_flat(f)))
    }

    /// Energies of all flat indices, in flat order. Dense shapes only.
    pub fn energy_table(&self, hamiltonian: &QuditHamiltonian) -> Result<Vec<f64>> {
        if hamiltonian.num_levels() != self.levels {
            return Err(Error::ShapeMismatch(format!(
                "hamiltonian has {} levels, shape has {}",
                hamiltonian.num_levels(),
                self.levels
            )));
        }
        let dim = self.dense_dim()?;
        // Build site by site: energies for k+1 sites are the k-site table
        // shifted by each level energy.
        let mut table = vec![0.0f64];
        table.reserve(dim);
        for _ in 0..self.sites {
            let prev_len = table.len();
            for level in 1..self.levels {
                let e = hamiltonian.levels()[level];
                for i in 0..prev_len {
                    let base = table[i];
                    table.push(base + e);
                }
            }
            // level 0 contribution to the existing prefix
            let e0 = hamiltonian.levels()[0];
            if e0 != 0.0 {
                for v in table.iter_mut().take(prev_len) {
                    *v += e0;
                }
            }
        }
        debug_assert_eq!(table.len(), dim);
        Ok(table)
    }
}

/// Digit string `i_1 .. i_N`, 0-based digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    digits: Vec<u8>,
}

impl BasisLabel {
    pub fn new(digits: Vec<u8>) -> Self {
        Self { digits }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Parse a 0-based digit string such as `"0222"`. Only radixes up to 10
    /// are supported in string form.
    pub fn parse(text: &str, levels: usize) -> Result<Self> {
        let mut digits = Vec::with_capacity(text.len());
        for (site, ch) in text.chars().enumerate() {
            let digit = ch.to_digit(10).ok_or_else(|| Error::InvalidArgument(format!(
                "invalid digit character {ch:?} in label {text:?}"
            )))? as u8;
            if digit as usize >= levels {
                return Err(Error::DigitOutOfRange {
                    site,
                    digit,
                    levels,
                });
            }
            digits.push(digit);
        }
        if digits.is_empty() {
            return Err(Error::InvalidArgument("empty label".into()));
        }
        Ok(Self { digits })
    }
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &d in &self.digits {
            if d < 10 {
                write!(f, "{d}")?;
            } else {
                write!(f, "[{d}]")?;
            }
        }
        Ok(())
    }
}

/// Sites where two labels disagree, ascending.
pub fn differing_sites(alpha: &BasisLabel, beta: &BasisLabel) -> Result<Vec<usize>> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch {
            left: alpha.len(),
            right: beta.len(),
        });
    }
    Ok(alpha
        .digits()
        .iter()
        .zip(beta.digits())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(k, _)| k)
        .collect())
}

/// Diagonal density matrix in the product energy eigenbasis: a probability
/// vector over the d^N basis labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalState {
    shape: EnsembleShape,
    populations: Vec<f64>,
}

impl DiagonalState {
    /// Wraps a population vector, rejecting negative entries and vectors
    /// whose sum deviates from 1 by more than [`NORMALIZATION_TOL`].
    /// Inputs are never silently renormalized; use
    /// [`new_renormalized`](Self::new_renormalized) to request that.
    pub fn new(shape: EnsembleShape, populations: Vec<f64>) -> Result<Self> {
        let dim = shape.dense_dim()?;
        if populations.len() != dim {
            return Err(Error::ShapeMismatch(format!(
                "expected {dim} populations, got {}",
                populations.len()
            )));
        }
        for (index, &value) in populations.iter().enumerate() {
            if !(value >= 0.0) {
                return Err(Error::NegativePopulation { index, value });
            }
        }
        let sum: f64 = populations.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { shape, populations })
    }

    /// Like [`new`](Self::new) but rescales to unit sum first.
    pub fn new_renormalized(shape: EnsembleShape, mut populations: Vec<f64>) -> Result<Self> {
        let sum: f64 = populations.iter().sum();
        if sum <= 0.0 || !sum.is_finite() {
            return Err(Error::NotNormalized { sum });
        }
        for v in populations.iter_mut() {
            *v /= sum;
        }
        Self::new(shape, populations)
    }

    pub(crate) fn from_parts_unchecked(shape: EnsembleShape, populations: Vec<f64>) -> Self {
        Self { shape, populations }
    }

    /// Uniform mixture over all labels.
    pub fn uniform(shape: EnsembleShape) -> Result<Self> {
        let dim = shape.dense_dim()?;
        Ok(Self {
            shape,
            populations: vec![1.0 / dim as f64; dim],
        })
    }

    pub fn shape(&self) -> EnsembleShape {
        self.shape
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn population(&self, flat: usize) -> f64 {
        self.populations[flat]
    }

    pub fn population_of_label(&self, label: &BasisLabel) -> Result<f64> {
        Ok(self.populations[self.shape.flat_of_label(label)?])
    }
}

/// Tensor power of a single-system spectrum: `P_label = prod_k p_{i_k}`.
pub fn product_state(spectrum: &[f64], sites: usize) -> Result<DiagonalState> {
    validate_spectrum(spectrum)?;
    let shape = EnsembleShape::new(sites, spectrum.len())?;
    let dim = shape.dense_dim()?;
    let mut populations = vec![1.0f64];
    populations.reserve(dim);
    for _ in 0..sites {
        let prev_len = populations.len();
        for &p in &spectrum[1..] {
            for i in 0..prev_len {
                let base = populations[i];
                populations.push(base * p);
            }
        }
        for v in populations.iter_mut().take(prev_len) {
            *v *= spectrum[0];
        }
    }
    debug_assert_eq!(populations.len(), dim);
    // The product construction cannot go negative; the sum is exactly
    // (sum p)^N up to roundoff, so renormalization drift stays within tol.
    DiagonalState::new_renormalized(shape, populations)
}

/// Rejects vectors that are not probability distributions.
pub fn validate_spectrum(spectrum: &[f64]) -> Result<()> {
    if spectrum.len() < 2 {
        return Err(Error::InvalidSpectrum(format!(
            "need at least 2 entries, got {}",
            spectrum.len()
        )));
    }
    for (index, &value) in spectrum.iter().enumerate() {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::NegativePopulation { index, value });
        }
    }
    let sum: f64 = spectrum.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { sum });
    }
    Ok(())
}

/// The state at some instant of a two-level transposition step: a diagonal
/// background plus one coherent pair `(alpha, beta)` with instantaneous
/// diagonal entries and a single off-diagonal element.
#[derive(Debug, Clone)]
pub struct CoherentPairState {
    base: DiagonalState,
    alpha: BasisLabel,
    beta: BasisLabel,
    flat_alpha: usize,
    flat_beta: usize,
    pop_alpha: f64,
    pop_beta: f64,
    coherence: Complex64,
}

impl CoherentPairState {
    /// `base` holds the pre-step populations (its entries at `alpha`,
    /// `beta` are superseded by `pop_alpha`, `pop_beta`). Positivity of the
    /// 2x2 block and trace preservation against the base are enforced.
    pub fn new(
        base: DiagonalState,
        alpha: BasisLabel,
        beta: BasisLabel,
        pop_alpha: f64,
        pop_beta: f64,
        coherence: Complex64,
    ) -> Result<Self> {
        if alpha == beta {
            return Err(Error::InvalidArgument("pair labels must differ".into()));
        }
        let shape = base.shape();
        let flat_alpha = shape.flat_of_label(&alpha)?;
        let flat_beta = shape.flat_of_label(&beta)?;
        if !(pop_alpha >= 0.0) {
            return Err(Error::NegativePopulation {
                index: flat_alpha,
                value: pop_alpha,
            });
        }
        if !(pop_beta >= 0.0) {
            return Err(Error::NegativePopulation {
                index: flat_beta,
                value: pop_beta,
            });
        }
        let bound = pop_alpha * pop_beta;
        if coherence.norm_sqr() > bound + 1e-12 {
            return Err(Error::PairPositivity {
                coherence_sq: coherence.norm_sqr(),
                bound,
            });
        }
        let pre = base.population(flat_alpha) + base.population(flat_beta);
        if ((pop_alpha + pop_beta) - pre).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidArgument(format!(
                "pair trace {:.17e} differs from pre-step value {:.17e}",
                pop_alpha + pop_beta,
                pre
            )));
        }
        Ok(Self {
            base,
            alpha,
            beta,
            flat_alpha,
            flat_beta,
            pop_alpha,
            pop_beta,
            coherence,
        })
    }

    pub fn shape(&self) -> EnsembleShape {
        self.base.shape()
    }

    pub fn base(&self) -> &DiagonalState {
        &self.base
    }

    pub fn alpha(&self) -> &BasisLabel {
        &self.alpha
    }

    pub fn beta(&self) -> &BasisLabel {
        &self.beta
    }

    pub fn flat_alpha(&self) -> usize {
        self.flat_alpha
    }

    pub fn flat_beta(&self) -> usize {
        self.flat_beta
    }

    pub fn pop_alpha(&self) -> f64 {
        self.pop_alpha
    }

    pub fn pop_beta(&self) -> f64 {
        self.pop_beta
    }

    pub fn coherence(&self) -> Complex64 {
        self.coherence
    }

    /// Instantaneous diagonal entry at a flat index.
    pub fn diagonal_entry(&self, flat: usize) -> f64 {
        if flat == self.flat_alpha {
            self.pop_alpha
        } else if flat == self.flat_beta {
            self.pop_beta
        } else {
            self.base.population(flat)
        }
    }
}
