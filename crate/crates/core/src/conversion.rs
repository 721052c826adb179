//! Core photon-graviton conversion dynamics: interaction generator Q with
//! rotating and counter-rotating parts, the ladder-form generator W, the
//! evolution operator U = exp(-iQ), analytic conversion probabilities, and
//! first-order/full numeric oracles.
//!
//! Mode conventions: `a` is the graviton +k mode, `b(k)` / `b(-k)` are the
//! photon +/-k modes; the dimensionless expansion parameter is lambda*t.

use crate::error::{Error, Result};
use crate::fock::{
    apply, inner, matrix_exponential, FockSpace, ModeId, MomentumLabel, OperatorMatrix,
    Polarization, Species, StateVector,
};
use crate::gaussian::{CoherentParams, SqueezeParams, TwoModeSqueezeParams};
use crate::polarization::{coupling_lambda, WaveVector};
use crate::units::METER_TO_INV_EV;
use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// Upper edge of the leading-order regime; beyond it results are flagged.
pub const PERTURBATIVE_LIMIT: f64 = 0.3;

/// Coupling constant, interaction time, and mode frequency in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConfig {
    lambda_ev: f64,
    t_inv_ev: f64,
    k_ev: f64,
}

impl CouplingConfig {
    pub fn new(lambda_ev: f64, t_inv_ev: f64, k_ev: f64) -> Result<Self> {
        if !lambda_ev.is_finite() || lambda_ev < 0.0 {
            return Err(Error::Domain(format!(
                "coupling must be finite and non-negative, got {}",
                lambda_ev
            )));
        }
        if !t_inv_ev.is_finite() || t_inv_ev < 0.0 {
            return Err(Error::Domain(format!(
                "interaction time must be finite and non-negative, got {}",
                t_inv_ev
            )));
        }
        if !k_ev.is_finite() || k_ev <= 0.0 {
            return Err(Error::Domain(format!(
                "mode frequency must be finite and positive, got {}",
                k_ev
            )));
        }
        let product = lambda_ev * t_inv_ev;
        if !product.is_finite() {
            return Err(Error::Domain(format!(
                "lambda * t must be finite, got {}",
                product
            )));
        }
        Ok(CouplingConfig {
            lambda_ev,
            t_inv_ev,
            k_ev,
        })
    }

    /// Derive the coupling from laboratory quantities: magnetic field in
    /// tesla, propagation direction and frequency from `k`, interaction
    /// length in meters (identified with the interaction time).
    pub fn from_physical(
        b_tesla: [f64; 3],
        k: &WaveVector,
        length_m: f64,
        m_pl_ev: f64,
    ) -> Result<Self> {
        if !length_m.is_finite() || length_m < 0.0 {
            return Err(Error::Domain(format!(
                "interaction length must be finite and non-negative, got {}",
                length_m
            )));
        }
        let lambda = coupling_lambda(b_tesla, k, m_pl_ev)?;
        CouplingConfig::new(lambda, length_m * METER_TO_INV_EV, k.magnitude())
    }

    pub fn lambda_ev(&self) -> f64 {
        self.lambda_ev
    }

    pub fn t_inv_ev(&self) -> f64 {
        self.t_inv_ev
    }

    pub fn k_ev(&self) -> f64 {
        self.k_ev
    }

    /// Dimensionless expansion parameter lambda * t.
    pub fn lambda_t(&self) -> f64 {
        self.lambda_ev * self.t_inv_ev
    }

    /// Whether the leading-order formulas are trustworthy here.
    pub fn perturbative_ok(&self) -> bool {
        self.lambda_t() <= PERTURBATIVE_LIMIT
    }
}

/// Which polarization sector to build, and whether to keep the
/// counter-rotating (pair-creation) terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorSpec {
    pub polarization: Polarization,
    pub include_counter_rotating: bool,
}

/// The four modes of one polarization sector, in canonical order:
/// graviton +k, graviton -k, photon +k, photon -k.
pub fn conversion_modes(polarization: Polarization) -> [ModeId; 4] {
    [
        ModeId::new(Species::Graviton, MomentumLabel::PlusK, polarization),
        ModeId::new(Species::Graviton, MomentumLabel::MinusK, polarization),
        ModeId::new(Species::Photon, MomentumLabel::PlusK, polarization),
        ModeId::new(Species::Photon, MomentumLabel::MinusK, polarization),
    ]
}

/// The two modes touched by the rotating part: graviton +k, photon +k.
pub fn rotating_modes(polarization: Polarization) -> [ModeId; 2] {
    [
        ModeId::new(Species::Graviton, MomentumLabel::PlusK, polarization),
        ModeId::new(Species::Photon, MomentumLabel::PlusK, polarization),
    ]
}

/// Mode-pair kernel of the counter-rotating terms:
/// f(t) = sin(kt)/k * e^{-ikt} for the plus sector, its negative for cross.
pub fn f_of_t(polarization: Polarization, k: f64, t: f64) -> Result<Complex64> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!(
            "mode frequency must be positive, got {}",
            k
        )));
    }
    let kt = k * t;
    let magnitude = kt.sin() / k;
    let f = Complex64::from_polar(magnitude, -kt);
    Ok(match polarization {
        Polarization::Plus => f,
        Polarization::Cross => -f,
    })
}

/// Mode positions and strides used by the generator fills.
struct SectorLayout {
    pos_g: usize,
    pos_bk: usize,
    // photon -k, present only with counter-rotating terms
    pos_bm: Option<usize>,
}

fn sector_layout(space: &FockSpace, sector: &SectorSpec) -> Result<SectorLayout> {
    let require = |mode: ModeId| -> Result<usize> {
        space.mode_position(mode).map_err(|_| {
            Error::Config(format!(
                "space is missing required mode {} for this sector",
                mode
            ))
        })
    };
    let p = sector.polarization;
    let pos_g = require(ModeId::new(Species::Graviton, MomentumLabel::PlusK, p))?;
    let pos_bk = require(ModeId::new(Species::Photon, MomentumLabel::PlusK, p))?;
    let pos_bm = if sector.include_counter_rotating {
        require(ModeId::new(Species::Graviton, MomentumLabel::MinusK, p))?;
        Some(require(ModeId::new(Species::Photon, MomentumLabel::MinusK, p))?)
    } else {
        None
    };
    Ok(SectorLayout {
        pos_g,
        pos_bk,
        pos_bm,
    })
}

/// Interaction generator
/// Q = -i lambda [ t (a b^dag(k) - a^dag b(k)) + f(t) a b(-k) - f*(t) a^dag b^dag(-k) ],
/// Hermitian by construction (conjugate term pairs share the same float
/// products, so the Hermiticity defect is exactly zero).
pub fn build_q(
    space: &FockSpace,
    config: &CouplingConfig,
    sector: &SectorSpec,
) -> Result<OperatorMatrix> {
    let layout = sector_layout(space, sector)?;
    let mut entries = Array2::zeros((space.dim(), space.dim()));
    fill_q(space, config, sector, &layout, |row, col, val| {
        entries[[row, col]] += val;
    })?;
    OperatorMatrix::new(space.clone(), entries)
}

/// Apply Q without materializing the matrix; same generator as `build_q`.
pub fn apply_q(
    psi: &StateVector,
    config: &CouplingConfig,
    sector: &SectorSpec,
) -> Result<StateVector> {
    let space = psi.space();
    let layout = sector_layout(space, sector)?;
    let mut out = Array1::zeros(space.dim());
    {
        let amps = psi.amplitudes();
        fill_q(space, config, sector, &layout, |row, col, val| {
            out[row] += val * amps[col];
        })?;
    }
    StateVector::new(space.clone(), out)
}

/// Enumerate the nonzero elements of Q as (row, col, value) callbacks.
fn fill_q(
    space: &FockSpace,
    config: &CouplingConfig,
    sector: &SectorSpec,
    layout: &SectorLayout,
    mut emit: impl FnMut(usize, usize, Complex64),
) -> Result<()> {
    let lambda = config.lambda_ev();
    let t = config.t_inv_ev();
    let lt = lambda * t;
    let n_max = space.n_max();
    let s_g = space.stride(layout.pos_g);
    let s_bk = space.stride(layout.pos_bk);

    // rotating part: -i lt (a b^dag) + i lt (a^dag b)
    let c_ab_dag = Complex64::new(0.0, -lt);
    let c_adag_b = Complex64::new(0.0, lt);
    for col in 0..space.dim() {
        let n_g = space.occupation_at(col, layout.pos_g);
        let n_bk = space.occupation_at(col, layout.pos_bk);
        if n_g >= 1 && n_bk < n_max {
            let val = (n_g as f64).sqrt() * ((n_bk + 1) as f64).sqrt();
            emit(col - s_g + s_bk, col, c_ab_dag * val);
        }
        if n_g < n_max && n_bk >= 1 {
            let val = ((n_g + 1) as f64).sqrt() * (n_bk as f64).sqrt();
            emit(col + s_g - s_bk, col, c_adag_b * val);
        }
    }

    // counter-rotating part: -i lambda f (a b(-k)) + i lambda f* (a^dag b^dag(-k))
    if let Some(pos_bm) = layout.pos_bm {
        let f = f_of_t(sector.polarization, config.k_ev(), t)?;
        let c_pair_ann = Complex64::new(0.0, -lambda) * f;
        let c_pair_cre = Complex64::new(0.0, lambda) * f.conj();
        let s_bm = space.stride(pos_bm);
        for col in 0..space.dim() {
            let n_g = space.occupation_at(col, layout.pos_g);
            let n_bm = space.occupation_at(col, pos_bm);
            if n_g >= 1 && n_bm >= 1 {
                let val = (n_g as f64).sqrt() * (n_bm as f64).sqrt();
                emit(col - s_g - s_bm, col, c_pair_ann * val);
            }
            if n_g < n_max && n_bm < n_max {
                let val = ((n_g + 1) as f64).sqrt() * ((n_bm + 1) as f64).sqrt();
                emit(col + s_g + s_bm, col, c_pair_cre * val);
            }
        }
    }
    Ok(())
}

/// Ladder-form generator W = i lambda a^dag(k) [ t b(k) + f*(t) b^dag(-k) ]:
/// every term raises the graviton +k occupation by exactly one.
pub fn build_w(
    space: &FockSpace,
    config: &CouplingConfig,
    sector: &SectorSpec,
) -> Result<OperatorMatrix> {
    let layout = sector_layout(space, sector)?;
    let lambda = config.lambda_ev();
    let t = config.t_inv_ev();
    let n_max = space.n_max();
    let s_g = space.stride(layout.pos_g);
    let s_bk = space.stride(layout.pos_bk);
    let c_absorb = Complex64::new(0.0, lambda * t);

    let mut entries = Array2::zeros((space.dim(), space.dim()));
    for col in 0..space.dim() {
        let n_g = space.occupation_at(col, layout.pos_g);
        let n_bk = space.occupation_at(col, layout.pos_bk);
        if n_g < n_max && n_bk >= 1 {
            let val = ((n_g + 1) as f64).sqrt() * (n_bk as f64).sqrt();
            entries[[col + s_g - s_bk, col]] += c_absorb * val;
        }
    }
    if let Some(pos_bm) = layout.pos_bm {
        let f = f_of_t(sector.polarization, config.k_ev(), t)?;
        let c_pair = Complex64::new(0.0, lambda) * f.conj();
        let s_bm = space.stride(pos_bm);
        for col in 0..space.dim() {
            let n_g = space.occupation_at(col, layout.pos_g);
            let n_bm = space.occupation_at(col, pos_bm);
            if n_g < n_max && n_bm < n_max {
                let val = ((n_g + 1) as f64).sqrt() * ((n_bm + 1) as f64).sqrt();
                entries[[col + s_g + s_bm, col]] += c_pair * val;
            }
        }
    }
    OperatorMatrix::new(space.clone(), entries)
}

/// Evolution operator U = exp(-iQ); the input must be Hermitian.
pub fn evolve(q: &OperatorMatrix) -> Result<OperatorMatrix> {
    let defect = q.hermiticity_defect();
    if defect > 1e-12 {
        return Err(Error::Domain(format!(
            "evolution requires a Hermitian generator; defect {:.3e}",
            defect
        )));
    }
    let gen = OperatorMatrix::new(
        q.space().clone(),
        q.entries() * Complex64::new(0.0, -1.0),
    )?;
    matrix_exponential(&gen)
}

/// Leading-order probability with a validity flag; the value is always
/// returned, and `perturbative_ok` is false when lambda*t exceeds the
/// leading-order regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbValue {
    pub value: f64,
    pub perturbative_ok: bool,
}

/// Single photon -> single graviton conversion probability (lambda t)^2.
pub fn prob_vacuum(config: &CouplingConfig) -> ProbValue {
    let lt = config.lambda_t();
    ProbValue {
        value: lt * lt,
        perturbative_ok: config.perturbative_ok(),
    }
}

/// Photon-sector enhancement factor
/// cosh^2 r + |beta|^2 (cosh 2r + cos(2 arg beta - phi) sinh 2r),
/// the inverse square of the photon normalization constant.
pub fn photon_enhancement(params_s: &SqueezeParams, params_c: &CoherentParams) -> f64 {
    let r = params_s.r();
    let angle = 2.0 * params_c.beta.arg() - params_s.phi();
    r.cosh().powi(2)
        + params_c.beta.norm_sqr() * ((2.0 * r).cosh() + angle.cos() * (2.0 * r).sinh())
}

/// Conversion probability for a squeezed coherent photon state:
/// (lambda t)^2 * photon_enhancement.
pub fn prob_squeezed_coherent(
    config: &CouplingConfig,
    params_s: &SqueezeParams,
    params_c: &CoherentParams,
) -> ProbValue {
    let base = prob_vacuum(config);
    ProbValue {
        value: base.value * photon_enhancement(params_s, params_c),
        perturbative_ok: base.perturbative_ok,
    }
}

/// Conversion probability against a two-mode-squeezed graviton background:
/// prob_squeezed_coherent * cosh^2 z.
pub fn prob_primordial(
    config: &CouplingConfig,
    params_s: &SqueezeParams,
    params_c: &CoherentParams,
    params_g: &TwoModeSqueezeParams,
) -> Result<ProbValue> {
    let graviton_factor = params_g.z().cosh().powi(2);
    if !graviton_factor.is_finite() {
        return Err(Error::Numeric(format!(
            "cosh^2 z overflows for z = {}",
            params_g.z()
        )));
    }
    let base = prob_squeezed_coherent(config, params_s, params_c);
    Ok(ProbValue {
        value: base.value * graviton_factor,
        perturbative_ok: base.perturbative_ok,
    })
}

fn require_normalized(psi: &StateVector, name: &str) -> Result<()> {
    let n = psi.norm();
    if (n - 1.0).abs() > 1e-8 {
        return Err(Error::Domain(format!(
            "{} state must be normalized, norm is {}",
            name, n
        )));
    }
    Ok(())
}

/// First-order transition amplitude <final| (-iQ) |initial>.
pub fn first_order_amplitude(
    q: &OperatorMatrix,
    initial: &StateVector,
    final_state: &StateVector,
) -> Result<Complex64> {
    require_normalized(initial, "initial")?;
    require_normalized(final_state, "final")?;
    let q_initial = apply(q, initial)?;
    Ok(inner(final_state, &q_initial)? * Complex64::new(0.0, -1.0))
}

/// Full transition probability |<final|U|initial>|^2.
pub fn transition_prob(
    u: &OperatorMatrix,
    initial: &StateVector,
    final_state: &StateVector,
) -> Result<f64> {
    require_normalized(initial, "initial")?;
    require_normalized(final_state, "final")?;
    let u_initial = apply(u, initial)?;
    Ok(inner(final_state, &u_initial)?.norm_sqr())
}
