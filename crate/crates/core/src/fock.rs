//! Truncated multimode bosonic Fock spaces: deterministic basis indexing,
//! ladder operators, dense operator exponentials, inner products, tensor
//! products, and partial trace.

use crate::error::{Error, Result};
use crate::linalg;
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use std::fmt;

/// Default cap on the total Hilbert-space dimension.
pub const DEFAULT_DIM_BUDGET: usize = 100_000;

/// Particle species carried by a mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Species {
    Photon,
    Graviton,
}

/// Discrete momentum label: the two members of a +/-k pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentumLabel {
    PlusK,
    MinusK,
}

/// Transverse-traceless polarization label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    Plus,
    Cross,
}

/// Identity of one bosonic mode; the triple is unique within a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeId {
    pub species: Species,
    pub momentum: MomentumLabel,
    pub polarization: Polarization,
}

impl ModeId {
    pub const fn new(species: Species, momentum: MomentumLabel, polarization: Polarization) -> Self {
        ModeId {
            species,
            momentum,
            polarization,
        }
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sp = match self.species {
            Species::Photon => "photon",
            Species::Graviton => "graviton",
        };
        let mom = match self.momentum {
            MomentumLabel::PlusK => "+k",
            MomentumLabel::MinusK => "-k",
        };
        let pol = match self.polarization {
            Polarization::Plus => "plus",
            Polarization::Cross => "cross",
        };
        write!(f, "{}({}, {})", sp, mom, pol)
    }
}

/// Multimode Fock space with a common per-mode occupation cutoff `n_max`.
///
/// Basis enumeration is lexicographic in the occupation tuple with the first
/// mode slowest-varying: index = sum_j n_j * (n_max+1)^(m-1-j).
#[derive(Debug, Clone, PartialEq)]
pub struct FockSpace {
    modes: Vec<ModeId>,
    n_max: usize,
    dim: usize,
    strides: Vec<usize>,
}

/// Build a space with the default dimension budget.
pub fn build_space(modes: &[ModeId], n_max: usize) -> Result<FockSpace> {
    build_space_with_budget(modes, n_max, DEFAULT_DIM_BUDGET)
}

/// Build a space with an explicit dimension budget.
pub fn build_space_with_budget(modes: &[ModeId], n_max: usize, budget: usize) -> Result<FockSpace> {
    if modes.is_empty() {
        return Err(Error::Config("mode list is empty".into()));
    }
    if n_max < 1 {
        return Err(Error::Config("n_max must be at least 1".into()));
    }
    for (i, m) in modes.iter().enumerate() {
        if modes[..i].contains(m) {
            return Err(Error::Config(format!("duplicate mode {}", m)));
        }
    }
    let base = n_max + 1;
    let mut dim: usize = 1;
    for _ in 0..modes.len() {
        dim = dim
            .checked_mul(base)
            .ok_or_else(|| Error::Resource("dimension overflows usize".into()))?;
        if dim > budget {
            return Err(Error::Resource(format!(
                "dimension {} exceeds budget {} ({} modes at n_max={})",
                dim,
                budget,
                modes.len(),
                n_max
            )));
        }
    }
    let m = modes.len();
    let mut strides = vec![0usize; m];
    let mut s = 1usize;
    for j in (0..m).rev() {
        strides[j] = s;
        s *= base;
    }
    Ok(FockSpace {
        modes: modes.to_vec(),
        n_max,
        dim,
        strides,
    })
}

impl FockSpace {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn modes(&self) -> &[ModeId] {
        &self.modes
    }

    /// Position of a mode in the tensor ordering.
    pub fn mode_position(&self, mode: ModeId) -> Result<usize> {
        self.modes
            .iter()
            .position(|&m| m == mode)
            .ok_or_else(|| Error::Lookup(format!("mode {} not in space", mode)))
    }

    /// Basis-index stride of the mode at `position`.
    pub fn stride(&self, position: usize) -> usize {
        self.strides[position]
    }

    /// Basis index of an occupation tuple.
    pub fn index_of(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.modes.len() {
            return Err(Error::Domain(format!(
                "occupation tuple has {} entries, space has {} modes",
                occupations.len(),
                self.modes.len()
            )));
        }
        let mut idx = 0;
        for (j, &n) in occupations.iter().enumerate() {
            if n > self.n_max {
                return Err(Error::Domain(format!(
                    "occupation {} exceeds n_max {}",
                    n, self.n_max
                )));
            }
            idx += n * self.strides[j];
        }
        Ok(idx)
    }

    /// Occupation tuple of a basis index.
    pub fn occupation_of(&self, index: usize) -> Vec<usize> {
        let base = self.n_max + 1;
        self.strides.iter().map(|&s| (index / s) % base).collect()
    }

    /// Occupation of the mode at `position` in basis state `index`.
    pub fn occupation_at(&self, index: usize, position: usize) -> usize {
        (index / self.strides[position]) % (self.n_max + 1)
    }
}

/// Pure state: complex amplitudes over the basis of a space.
#[derive(Debug, Clone)]
pub struct StateVector {
    space: FockSpace,
    amplitudes: Array1<Complex64>,
}

impl StateVector {
    pub fn new(space: FockSpace, amplitudes: Array1<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::Mismatch(format!(
                "amplitude vector length {} does not match space dimension {}",
                amplitudes.len(),
                space.dim()
            )));
        }
        Ok(StateVector { space, amplitudes })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut Array1<Complex64> {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Vacuum state |0,...,0>.
pub fn vacuum(space: &FockSpace) -> StateVector {
    let mut amplitudes = Array1::zeros(space.dim());
    amplitudes[0] = Complex64::new(1.0, 0.0);
    StateVector {
        space: space.clone(),
        amplitudes,
    }
}

/// Basis state with the given occupation tuple.
pub fn basis_state(space: &FockSpace, occupations: &[usize]) -> Result<StateVector> {
    let idx = space.index_of(occupations)?;
    let mut amplitudes = Array1::zeros(space.dim());
    amplitudes[idx] = Complex64::new(1.0, 0.0);
    Ok(StateVector {
        space: space.clone(),
        amplitudes,
    })
}

/// Dense operator over a space.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    space: FockSpace,
    entries: Array2<Complex64>,
}

impl OperatorMatrix {
    pub fn new(space: FockSpace, entries: Array2<Complex64>) -> Result<Self> {
        if entries.nrows() != space.dim() || entries.ncols() != space.dim() {
            return Err(Error::Mismatch(format!(
                "matrix shape {}x{} does not match space dimension {}",
                entries.nrows(),
                entries.ncols(),
                space.dim()
            )));
        }
        Ok(OperatorMatrix { space, entries })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> OperatorMatrix {
        OperatorMatrix {
            space: self.space.clone(),
            entries: linalg::dagger(&self.entries),
        }
    }

    /// Max-norm of (A - A^dagger).
    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.entries)
    }

    /// Max-norm of (U^dagger U - I).
    pub fn unitarity_defect(&self) -> f64 {
        linalg::unitarity_defect(&self.entries)
    }

    /// Matrix product self * other over the same space.
    pub fn compose(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.space != other.space {
            return Err(Error::Mismatch(
                "operators built over different spaces".into(),
            ));
        }
        Ok(OperatorMatrix {
            space: self.space.clone(),
            entries: self.entries.dot(&other.entries),
        })
    }
}

/// Density matrix over a space (often a kept-mode sub-space).
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    space: FockSpace,
    entries: Array2<Complex64>,
}

impl DensityMatrix {
    pub fn new(space: FockSpace, entries: Array2<Complex64>) -> Result<Self> {
        if entries.nrows() != space.dim() || entries.ncols() != space.dim() {
            return Err(Error::Mismatch(format!(
                "matrix shape {}x{} does not match space dimension {}",
                entries.nrows(),
                entries.ncols(),
                space.dim()
            )));
        }
        Ok(DensityMatrix { space, entries })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.space.dim()).map(|i| self.entries[[i, i]]).sum()
    }

    /// Check Hermiticity (1e-12), unit trace (1e-10), and eigenvalue
    /// positivity (>= -1e-10).
    pub fn validate(&self) -> Result<()> {
        let herm = linalg::hermiticity_defect(&self.entries);
        if herm > 1e-12 {
            return Err(Error::Numeric(format!(
                "density matrix Hermiticity defect {:.3e} exceeds 1e-12",
                herm
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::Numeric(format!(
                "density matrix trace {} deviates from 1 beyond 1e-10",
                tr
            )));
        }
        let evals = linalg::hermitian_eigenvalues(&self.entries);
        if let Some(&min) = evals.first() {
            if min < -1e-10 {
                return Err(Error::Numeric(format!(
                    "density matrix has eigenvalue {:.3e} below -1e-10",
                    min
                )));
            }
        }
        Ok(())
    }
}

/// Annihilation operator for one mode: <...,n-1,...|b|...,n,...> = sqrt(n).
pub fn annihilator(space: &FockSpace, mode: ModeId) -> Result<OperatorMatrix> {
    let pos = space.mode_position(mode)?;
    let stride = space.stride(pos);
    let mut entries = Array2::zeros((space.dim(), space.dim()));
    for col in 0..space.dim() {
        let n = space.occupation_at(col, pos);
        if n > 0 {
            entries[[col - stride, col]] = Complex64::new((n as f64).sqrt(), 0.0);
        }
    }
    Ok(OperatorMatrix {
        space: space.clone(),
        entries,
    })
}

/// Creation operator: conjugate transpose of the annihilator.
pub fn creator(space: &FockSpace, mode: ModeId) -> Result<OperatorMatrix> {
    Ok(annihilator(space, mode)?.dagger())
}

/// Number operator b^dagger b: diagonal with the occupation of `mode`.
pub fn number_operator(space: &FockSpace, mode: ModeId) -> Result<OperatorMatrix> {
    let pos = space.mode_position(mode)?;
    let mut entries = Array2::zeros((space.dim(), space.dim()));
    for i in 0..space.dim() {
        entries[[i, i]] = Complex64::new(space.occupation_at(i, pos) as f64, 0.0);
    }
    Ok(OperatorMatrix {
        space: space.clone(),
        entries,
    })
}

/// Identity operator.
pub fn identity_op(space: &FockSpace) -> OperatorMatrix {
    OperatorMatrix {
        space: space.clone(),
        entries: Array2::from_diag_elem(space.dim(), Complex64::new(1.0, 0.0)),
    }
}

/// Dense matrix exponential exp(A); unitary within 1e-12 for anti-Hermitian A.
pub fn matrix_exponential(a: &OperatorMatrix) -> Result<OperatorMatrix> {
    if a.entries.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(Error::Numeric(
            "matrix exponential input has non-finite entries".into(),
        ));
    }
    Ok(OperatorMatrix {
        space: a.space.clone(),
        entries: linalg::matrix_exp(&a.entries),
    })
}

/// Apply an operator to a state.
pub fn apply(op: &OperatorMatrix, psi: &StateVector) -> Result<StateVector> {
    if op.space != psi.space {
        return Err(Error::Mismatch(
            "operator and state built over different spaces".into(),
        ));
    }
    Ok(StateVector {
        space: psi.space.clone(),
        amplitudes: op.entries.dot(&psi.amplitudes),
    })
}

/// Inner product <phi|psi>, conjugate-linear in the first argument.
pub fn inner(phi: &StateVector, psi: &StateVector) -> Result<Complex64> {
    if phi.space != psi.space {
        return Err(Error::Mismatch(
            "states built over different spaces".into(),
        ));
    }
    Ok(phi
        .amplitudes
        .iter()
        .zip(psi.amplitudes.iter())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Return psi / ||psi||; zero-norm input is a numeric error.
pub fn normalize(psi: &StateVector) -> Result<StateVector> {
    let n = psi.norm();
    if !n.is_finite() || n == 0.0 {
        return Err(Error::Numeric(format!(
            "cannot normalize state with norm {}",
            n
        )));
    }
    let inv = Complex64::new(1.0 / n, 0.0);
    Ok(StateVector {
        space: psi.space.clone(),
        amplitudes: &psi.amplitudes * inv,
    })
}

/// Apply the annihilator of `mode` without materializing its matrix.
pub fn apply_annihilator(psi: &StateVector, mode: ModeId) -> Result<StateVector> {
    let space = &psi.space;
    let pos = space.mode_position(mode)?;
    let stride = space.stride(pos);
    let mut out = Array1::zeros(space.dim());
    for i in 0..space.dim() {
        let amp = psi.amplitudes[i];
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let n = space.occupation_at(i, pos);
        if n > 0 {
            out[i - stride] += amp * Complex64::new((n as f64).sqrt(), 0.0);
        }
    }
    Ok(StateVector {
        space: space.clone(),
        amplitudes: out,
    })
}

/// Apply the creator of `mode` without materializing its matrix.
pub fn apply_creator(psi: &StateVector, mode: ModeId) -> Result<StateVector> {
    let space = &psi.space;
    let pos = space.mode_position(mode)?;
    let stride = space.stride(pos);
    let n_max = space.n_max();
    let mut out = Array1::zeros(space.dim());
    for i in 0..space.dim() {
        let amp = psi.amplitudes[i];
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let n = space.occupation_at(i, pos);
        if n < n_max {
            out[i + stride] += amp * Complex64::new(((n + 1) as f64).sqrt(), 0.0);
        }
    }
    Ok(StateVector {
        space: space.clone(),
        amplitudes: out,
    })
}

/// Reduced density matrix over `keep` (in the given order), tracing out the
/// rest. Runs in O(dim * dim_kept) by bucketing basis states on the traced
/// occupations.
pub fn partial_trace(psi: &StateVector, keep: &[ModeId]) -> Result<DensityMatrix> {
    let space = &psi.space;
    if keep.is_empty() {
        return Err(Error::Config("keep list is empty".into()));
    }
    let mut keep_positions = Vec::with_capacity(keep.len());
    for (i, &m) in keep.iter().enumerate() {
        if keep[..i].contains(&m) {
            return Err(Error::Config(format!("duplicate mode {} in keep list", m)));
        }
        keep_positions.push(space.mode_position(m)?);
    }

    let base = space.n_max() + 1;
    let m_keep = keep.len();
    let dim_kept = base.pow(m_keep as u32);
    let dim_traced = space.dim() / dim_kept;

    // Strides of the kept sub-space (first kept mode slowest).
    let mut kept_strides = vec![0usize; m_keep];
    let mut s = 1usize;
    for j in (0..m_keep).rev() {
        kept_strides[j] = s;
        s *= base;
    }

    // Rank of the traced configuration: mix the occupations of all non-kept
    // modes, in space order, into one bucket id.
    let traced_positions: Vec<usize> = (0..space.modes.len())
        .filter(|p| !keep_positions.contains(p))
        .collect();

    let mut buckets: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim_traced];
    for i in 0..space.dim() {
        let amp = psi.amplitudes[i];
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut kept_index = 0usize;
        for (j, &p) in keep_positions.iter().enumerate() {
            kept_index += space.occupation_at(i, p) * kept_strides[j];
        }
        let mut traced_index = 0usize;
        for &p in &traced_positions {
            traced_index = traced_index * base + space.occupation_at(i, p);
        }
        buckets[traced_index].push((kept_index, amp));
    }

    let mut entries = Array2::zeros((dim_kept, dim_kept));
    for bucket in &buckets {
        for &(ki, ai) in bucket {
            for &(kj, aj) in bucket {
                entries[[ki, kj]] += ai * aj.conj();
            }
        }
    }

    let kept_space = FockSpace {
        modes: keep.to_vec(),
        n_max: space.n_max(),
        dim: dim_kept,
        strides: kept_strides,
    };
    Ok(DensityMatrix {
        space: kept_space,
        entries,
    })
}

/// Tensor product of states over disjoint mode sets with equal n_max; the
/// result's mode order is a's modes followed by b's.
pub fn tensor_product(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    if a.space.n_max() != b.space.n_max() {
        return Err(Error::Mismatch(format!(
            "tensor factors have different n_max ({} vs {})",
            a.space.n_max(),
            b.space.n_max()
        )));
    }
    for m in b.space.modes() {
        if a.space.modes().contains(m) {
            return Err(Error::Config(format!(
                "mode {} appears in both tensor factors",
                m
            )));
        }
    }
    let mut modes = a.space.modes().to_vec();
    modes.extend_from_slice(b.space.modes());
    let dim_a = a.space.dim();
    let dim_b = b.space.dim();
    let dim = dim_a
        .checked_mul(dim_b)
        .ok_or_else(|| Error::Resource("tensor-product dimension overflows usize".into()))?;

    let base = a.space.n_max() + 1;
    let m = modes.len();
    let mut strides = vec![0usize; m];
    let mut s = 1usize;
    for j in (0..m).rev() {
        strides[j] = s;
        s *= base;
    }

    let mut amplitudes = Array1::zeros(dim);
    for ia in 0..dim_a {
        let aa = a.amplitudes[ia];
        if aa == Complex64::new(0.0, 0.0) {
            continue;
        }
        for ib in 0..dim_b {
            let ab = b.amplitudes[ib];
            if ab == Complex64::new(0.0, 0.0) {
                continue;
            }
            amplitudes[ia * dim_b + ib] = aa * ab;
        }
    }

    let space = FockSpace {
        modes,
        n_max: a.space.n_max(),
        dim,
        strides,
    };
    Ok(StateVector { space, amplitudes })
}
