//! Gaussian-state machinery: displacement, single-mode squeeze, and two-mode
//! squeeze operators as truncated matrices; closed-form normalization
//! constants; Bogoliubov-relation diagnostics.
//!
//! Operators are built by exponentiating the truncated generator, so a single
//! code path serves all three families; closed forms act as test oracles.
//! The squeezed coherent state is S(zeta) D(beta) |0> in that operator order.

use crate::error::{Error, Result};
use crate::fock::{
    annihilator, apply, matrix_exponential, vacuum, FockSpace, ModeId, OperatorMatrix,
    StateVector,
};
use crate::linalg::c;
use ndarray::Array1;
use num_complex::Complex64;

/// Coherent displacement amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentParams {
    pub beta: Complex64,
}

impl CoherentParams {
    pub fn new(beta: Complex64) -> Self {
        CoherentParams { beta }
    }
}

/// Single-mode squeezing parameter zeta = r e^{i phi}, r >= 0, phi in [0, 2pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    r: f64,
    phi: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !r.is_finite() || !phi.is_finite() {
            return Err(Error::Domain("squeeze parameters must be finite".into()));
        }
        if r < 0.0 {
            return Err(Error::Domain(format!(
                "squeezing amplitude must be non-negative, got {}",
                r
            )));
        }
        Ok(SqueezeParams {
            r,
            phi: phi.rem_euclid(std::f64::consts::TAU),
        })
    }

    /// Decibel convention: dB = 10 log10 e^{2r}.
    pub fn from_db(db: f64, phi: f64) -> Result<Self> {
        if !db.is_finite() {
            return Err(Error::Domain("squeezing level in dB must be finite".into()));
        }
        if db < 0.0 {
            return Err(Error::Domain(format!(
                "squeezing level in dB must be non-negative, got {}",
                db
            )));
        }
        SqueezeParams::new(db * std::f64::consts::LN_10 / 20.0, phi)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_db(&self) -> f64 {
        20.0 * self.r / std::f64::consts::LN_10
    }
}

/// Two-mode squeezing parameter xi = z e^{i chi}, z >= 0, chi in [0, 2pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeSqueezeParams {
    z: f64,
    chi: f64,
}

impl TwoModeSqueezeParams {
    pub fn new(z: f64, chi: f64) -> Result<Self> {
        if !z.is_finite() || !chi.is_finite() {
            return Err(Error::Domain(
                "two-mode squeeze parameters must be finite".into(),
            ));
        }
        if z < 0.0 {
            return Err(Error::Domain(format!(
                "two-mode squeezing amplitude must be non-negative, got {}",
                z
            )));
        }
        Ok(TwoModeSqueezeParams {
            z,
            chi: chi.rem_euclid(std::f64::consts::TAU),
        })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }
}

fn guard(condition: bool, msg: &str, required: f64) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::Convergence {
            msg: msg.into(),
            required_n_max: required.ceil().max(1.0) as usize,
        })
    }
}

/// Displacement operator D(beta) = exp(beta b^dag - beta* b).
///
/// Convergence guard: |beta|^2 <= n_max/4.
pub fn displacement_op(
    space: &FockSpace,
    mode: ModeId,
    params: &CoherentParams,
) -> Result<OperatorMatrix> {
    let nsq = params.beta.norm_sqr();
    guard(
        nsq <= space.n_max() as f64 / 4.0,
        "displacement amplitude too large for this truncation",
        4.0 * nsq,
    )?;
    let b = annihilator(space, mode)?;
    let bd = b.dagger();
    let gen = bd.entries() * params.beta - b.entries() * params.beta.conj();
    matrix_exponential(&OperatorMatrix::new(space.clone(), gen)?)
}

/// Single-mode squeeze operator
/// S(zeta) = exp[(zeta b^dag^2 - zeta* b^2)/2], zeta = r e^{i phi}.
///
/// Convergence guard: sinh^2 r <= n_max.
pub fn squeeze_op(
    space: &FockSpace,
    mode: ModeId,
    params: &SqueezeParams,
) -> Result<OperatorMatrix> {
    let mean = params.r.sinh().powi(2);
    guard(
        mean <= space.n_max() as f64,
        "squeezing amplitude too large for this truncation",
        mean,
    )?;
    let zeta = Complex64::from_polar(params.r, params.phi);
    let b = annihilator(space, mode)?;
    let b2 = b.entries().dot(b.entries());
    let b2d = crate::linalg::dagger(&b2);
    let half = c(0.5);
    let gen = b2d * (zeta * half) - b2 * (zeta.conj() * half);
    matrix_exponential(&OperatorMatrix::new(space.clone(), gen)?)
}

/// Two-mode squeeze operator
/// S2(xi) = exp[xi a^dag b^dag - xi* a b], xi = z e^{i chi}
/// (no factor 1/2, unlike the single-mode convention).
///
/// Convergence guard: sinh^2 z <= n_max.
pub fn two_mode_squeeze_op(
    space: &FockSpace,
    mode_a: ModeId,
    mode_b: ModeId,
    params: &TwoModeSqueezeParams,
) -> Result<OperatorMatrix> {
    if mode_a == mode_b {
        return Err(Error::Domain(format!(
            "two-mode squeeze requires distinct modes, got {} twice",
            mode_a
        )));
    }
    let mean = params.z.sinh().powi(2);
    guard(
        mean <= space.n_max() as f64,
        "two-mode squeezing amplitude too large for this truncation",
        mean,
    )?;
    let xi = Complex64::from_polar(params.z, params.chi);
    let a = annihilator(space, mode_a)?;
    let b = annihilator(space, mode_b)?;
    let ab = a.entries().dot(b.entries());
    let abd = crate::linalg::dagger(&ab);
    let gen = abd * xi - ab * xi.conj();
    matrix_exponential(&OperatorMatrix::new(space.clone(), gen)?)
}

/// Max-norm of S^dag b S - (b cosh r + b^dag e^{i phi} sinh r), restricted to
/// matrix elements whose bra and ket occupations on `mode` are <= n_max/2.
///
/// Because the squeeze of a mid-band basis state |n_max/2> already carries
/// O(1) amplitude at the truncation edge, this restricted residual does NOT
/// converge with n_max for moderate r; it is a truncation diagnostic, not a
/// verification of the Bogoliubov relation. The narrow-band variant
/// `bogoliubov_residual_banded` does converge.
pub fn bogoliubov_residual(
    space: &FockSpace,
    mode: ModeId,
    params: &SqueezeParams,
) -> Result<f64> {
    restricted_bogoliubov_residual(space, mode, params, space.n_max() / 2)
}

/// Same residual, restricted to occupations <= max_occ on `mode`.
pub fn bogoliubov_residual_banded(
    space: &FockSpace,
    mode: ModeId,
    params: &SqueezeParams,
    max_occ: usize,
) -> Result<f64> {
    restricted_bogoliubov_residual(space, mode, params, max_occ)
}

fn restricted_bogoliubov_residual(
    space: &FockSpace,
    mode: ModeId,
    params: &SqueezeParams,
    max_occ: usize,
) -> Result<f64> {
    let s = squeeze_op(space, mode, params)?;
    let b = annihilator(space, mode)?;
    let bd = b.dagger();
    let lhs = s.dagger().compose(&b)?.compose(&s)?;
    let coeff_b = c(params.r.cosh());
    let coeff_bd = Complex64::from_polar(params.r.sinh(), params.phi);
    let rhs = b.entries() * coeff_b + bd.entries() * coeff_bd;

    let pos = space.mode_position(mode)?;
    let mut worst = 0.0f64;
    for i in 0..space.dim() {
        if space.occupation_at(i, pos) > max_occ {
            continue;
        }
        for j in 0..space.dim() {
            if space.occupation_at(j, pos) > max_occ {
                continue;
            }
            worst = worst.max((lhs.entries()[[i, j]] - rhs[[i, j]]).norm());
        }
    }
    Ok(worst)
}

/// Max-norm of D^dag b D - (b + beta), restricted to occupations <= max_occ
/// on `mode`.
pub fn displacement_residual_banded(
    space: &FockSpace,
    mode: ModeId,
    params: &CoherentParams,
    max_occ: usize,
) -> Result<f64> {
    let d = displacement_op(space, mode, params)?;
    let b = annihilator(space, mode)?;
    let lhs = d.dagger().compose(&b)?.compose(&d)?;
    let pos = space.mode_position(mode)?;
    let mut worst = 0.0f64;
    for i in 0..space.dim() {
        if space.occupation_at(i, pos) > max_occ {
            continue;
        }
        for j in 0..space.dim() {
            if space.occupation_at(j, pos) > max_occ {
                continue;
            }
            let mut expected = b.entries()[[i, j]];
            if i == j {
                expected += params.beta;
            }
            worst = worst.max((lhs.entries()[[i, j]] - expected).norm());
        }
    }
    Ok(worst)
}

/// Photon-sector normalization constant
/// A = (cosh^2 r + |beta|^2 (cosh 2r + cos(2 arg beta - phi) sinh 2r))^{-1/2},
/// the inverse norm of b^dag S(zeta) D(beta) |0>.
pub fn photon_norm_const(params_s: &SqueezeParams, params_c: &CoherentParams) -> f64 {
    let r = params_s.r;
    let phi = params_s.phi;
    let beta = params_c.beta;
    let angle = 2.0 * beta.arg() - phi;
    let inv_sq = r.cosh().powi(2)
        + beta.norm_sqr() * ((2.0 * r).cosh() + angle.cos() * (2.0 * r).sinh());
    1.0 / inv_sq.sqrt()
}

/// Graviton-sector normalization constant A = 1/cosh z, the inverse norm of
/// a^dag S2(xi) |0>.
pub fn graviton_norm_const(params: &TwoModeSqueezeParams) -> f64 {
    1.0 / params.z.cosh()
}

/// Squeezed coherent state S(zeta) D(beta) |0> (operator order fixed).
pub fn squeezed_coherent_state(
    space: &FockSpace,
    mode: ModeId,
    params_s: &SqueezeParams,
    params_c: &CoherentParams,
) -> Result<StateVector> {
    let d = displacement_op(space, mode, params_c)?;
    let s = squeeze_op(space, mode, params_s)?;
    let displaced = apply(&d, &vacuum(space))?;
    apply(&s, &displaced)
}

/// Closed-form two-mode squeezed vacuum
/// (1/cosh z) sum_n (e^{i chi} tanh z)^n |n, n>
/// on modes (mode_a, mode_b), all other modes in vacuum.
///
/// Amplitudes are the truncated closed form; the missing tail ~tanh^{2(n_max+1)} z
/// is not renormalized away.
pub fn two_mode_squeezed_vacuum(
    space: &FockSpace,
    mode_a: ModeId,
    mode_b: ModeId,
    params: &TwoModeSqueezeParams,
) -> Result<StateVector> {
    if mode_a == mode_b {
        return Err(Error::Domain(format!(
            "two-mode squeezed vacuum requires distinct modes, got {} twice",
            mode_a
        )));
    }
    let mean = params.z.sinh().powi(2);
    guard(
        mean <= space.n_max() as f64,
        "two-mode squeezing amplitude too large for this truncation",
        mean,
    )?;
    let pos_a = space.mode_position(mode_a)?;
    let pos_b = space.mode_position(mode_b)?;
    let ratio = Complex64::from_polar(params.z.tanh(), params.chi);
    let mut amp = c(1.0 / params.z.cosh());
    let mut amplitudes = Array1::zeros(space.dim());
    let mut occs = vec![0usize; space.modes().len()];
    for n in 0..=space.n_max() {
        occs[pos_a] = n;
        occs[pos_b] = n;
        let idx = space.index_of(&occs)?;
        amplitudes[idx] = amp;
        amp *= ratio;
    }
    StateVector::new(space.clone(), amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{
        apply_annihilator, apply_creator, build_space, inner, partial_trace, MomentumLabel,
        Polarization, Species,
    };
    use crate::linalg::max_abs;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn photon() -> ModeId {
        ModeId::new(Species::Photon, MomentumLabel::PlusK, Polarization::Plus)
    }

    fn graviton_pk() -> ModeId {
        ModeId::new(Species::Graviton, MomentumLabel::PlusK, Polarization::Plus)
    }

    fn graviton_mk() -> ModeId {
        ModeId::new(Species::Graviton, MomentumLabel::MinusK, Polarization::Plus)
    }

    fn single(n_max: usize) -> FockSpace {
        build_space(&[photon()], n_max).unwrap()
    }

    fn pair(n_max: usize) -> FockSpace {
        crate::fock::build_space_with_budget(
            &[graviton_pk(), graviton_mk()],
            n_max,
            2_000_000,
        )
        .unwrap()
    }

    #[test]
    fn test_displacement_zero_is_identity() {
        let space = single(8);
        let d = displacement_op(&space, photon(), &CoherentParams::new(c(0.0))).unwrap();
        let mut diff = d.entries().clone();
        for i in 0..space.dim() {
            diff[[i, i]] -= c(1.0);
        }
        assert!(max_abs(&diff) < 1e-13);
    }

    #[test]
    fn test_coherent_state_is_annihilator_eigenstate() {
        let space = single(24);
        let beta = Complex64::new(0.7, 0.2);
        let d = displacement_op(&space, photon(), &CoherentParams::new(beta)).unwrap();
        let psi = apply(&d, &vacuum(&space)).unwrap();
        let bpsi = apply_annihilator(&psi, photon()).unwrap();
        let expectation = inner(&psi, &bpsi).unwrap();
        assert!((expectation - beta).norm() < 1e-8);
        // residual of the eigenstate property, dropping the truncation edge
        let mut worst = 0.0f64;
        for n in 0..space.dim() - 1 {
            worst = worst.max((bpsi.amplitudes()[n] - beta * psi.amplitudes()[n]).norm());
        }
        assert!(worst < 1e-8);
    }

    #[test]
    fn test_coherent_occupations_are_poisson() {
        let space = single(24);
        let d = displacement_op(&space, photon(), &CoherentParams::new(c(1.0))).unwrap();
        let psi = apply(&d, &vacuum(&space)).unwrap();
        let mut tv = 0.0;
        let mut factorial = 1.0;
        for n in 0..=space.n_max() {
            if n > 0 {
                factorial *= n as f64;
            }
            let poisson = (-1.0f64).exp() / factorial;
            tv += (psi.amplitudes()[n].norm_sqr() - poisson).abs();
        }
        assert!(tv < 1e-8, "total variation {}", tv);
        // vacuum overlap <0|D(1)|0> = e^{-1/2}
        let overlap = psi.amplitudes()[0];
        assert!((overlap.re - (-0.5f64).exp()).abs() < 1e-8);
        assert!(overlap.im.abs() < 1e-12);
    }

    #[test]
    fn test_displacement_guard_reports_required_n_max() {
        let space = single(20);
        let err = displacement_op(&space, photon(), &CoherentParams::new(c(3.0)));
        match err {
            Err(Error::Convergence { required_n_max, .. }) => assert_eq!(required_n_max, 36),
            other => panic!("expected convergence guard, got {:?}", other),
        }
    }

    #[test]
    fn test_squeeze_zero_is_identity() {
        let space = single(8);
        let s = squeeze_op(&space, photon(), &SqueezeParams::new(0.0, 0.3).unwrap()).unwrap();
        let mut diff = s.entries().clone();
        for i in 0..space.dim() {
            diff[[i, i]] -= c(1.0);
        }
        assert!(max_abs(&diff) < 1e-13);
    }

    #[test]
    fn test_squeezed_vacuum_has_even_occupations_only() {
        let space = single(20);
        let s = squeeze_op(&space, photon(), &SqueezeParams::new(0.5, 0.0).unwrap()).unwrap();
        let psi = apply(&s, &vacuum(&space)).unwrap();
        for n in (1..=space.n_max()).step_by(2) {
            assert_eq!(psi.amplitudes()[n], c(0.0), "odd occupation {}", n);
        }
    }

    #[test]
    fn test_squeezed_vacuum_mean_occupation() {
        let space = single(20);
        let s = squeeze_op(&space, photon(), &SqueezeParams::new(0.5, 0.0).unwrap()).unwrap();
        let psi = apply(&s, &vacuum(&space)).unwrap();
        let mean: f64 = psi
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum();
        let expected = 0.5f64.sinh().powi(2);
        assert!((expected - 2.715403174076e-01).abs() < 1e-12);
        assert!((mean - expected).abs() < 1e-6, "mean {} vs {}", mean, expected);
    }

    #[test]
    fn test_squeeze_guard_reports_required_n_max() {
        let space = single(10);
        let err = squeeze_op(&space, photon(), &SqueezeParams::new(2.0, 0.0).unwrap());
        match err {
            Err(Error::Convergence { required_n_max, .. }) => {
                assert_eq!(required_n_max, 2.0f64.sinh().powi(2).ceil() as usize);
            }
            other => panic!("expected convergence guard, got {:?}", other),
        }
    }

    #[test]
    fn test_two_mode_squeeze_zero_is_identity_and_rejects_same_mode() {
        let space = pair(6);
        let s2 = two_mode_squeeze_op(
            &space,
            graviton_pk(),
            graviton_mk(),
            &TwoModeSqueezeParams::new(0.0, 0.0).unwrap(),
        )
        .unwrap();
        let mut diff = s2.entries().clone();
        for i in 0..space.dim() {
            diff[[i, i]] -= c(1.0);
        }
        assert!(max_abs(&diff) < 1e-13);

        assert!(matches!(
            two_mode_squeeze_op(
                &space,
                graviton_pk(),
                graviton_pk(),
                &TwoModeSqueezeParams::new(0.1, 0.0).unwrap(),
            ),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn test_two_mode_squeezed_vacuum_pairs_only_and_tanh_ratio() {
        let space = pair(20);
        let params = TwoModeSqueezeParams::new(0.6, 0.0).unwrap();
        let s2 = two_mode_squeeze_op(&space, graviton_pk(), graviton_mk(), &params).unwrap();
        let psi = apply(&s2, &vacuum(&space)).unwrap();
        let tanh = 0.6f64.tanh();
        for n in 0..=space.n_max() {
            for m in 0..=space.n_max() {
                let idx = space.index_of(&[n, m]).unwrap();
                if n != m {
                    assert_eq!(psi.amplitudes()[idx], c(0.0), "({}, {})", n, m);
                }
            }
        }
        for n in 0..=5usize {
            let idx_n = space.index_of(&[n, n]).unwrap();
            let idx_n1 = space.index_of(&[n + 1, n + 1]).unwrap();
            let ratio = psi.amplitudes()[idx_n1].norm() / psi.amplitudes()[idx_n].norm();
            assert!(
                (ratio - tanh).abs() < 1e-8,
                "pair ratio at n={}: {} vs {}",
                n,
                ratio,
                tanh
            );
        }
    }

    #[test]
    fn test_closed_form_matches_exponentiated_two_mode_squeeze() {
        let space = pair(20);
        let params = TwoModeSqueezeParams::new(0.6, 0.9).unwrap();
        let via_expm = apply(
            &two_mode_squeeze_op(&space, graviton_pk(), graviton_mk(), &params).unwrap(),
            &vacuum(&space),
        )
        .unwrap();
        let closed = two_mode_squeezed_vacuum(&space, graviton_pk(), graviton_mk(), &params)
            .unwrap();
        let mut worst = 0.0f64;
        for i in 0..space.dim() {
            worst = worst.max((via_expm.amplitudes()[i] - closed.amplitudes()[i]).norm());
        }
        // agreement is limited by the truncation edge of the exponentiated form
        assert!(worst < 5e-6, "worst {}", worst);
    }

    #[test]
    fn test_two_mode_reduced_state_is_thermal() {
        let space = pair(20);
        let params = TwoModeSqueezeParams::new(0.5, 0.0).unwrap();
        let psi = two_mode_squeezed_vacuum(&space, graviton_pk(), graviton_mk(), &params)
            .unwrap();
        let rho = partial_trace(&psi, &[graviton_pk()]).unwrap();
        let mean: f64 = (0..rho.space().dim())
            .map(|n| n as f64 * rho.entries()[[n, n]].re)
            .sum();
        let expected = 0.5f64.sinh().powi(2);
        assert!((mean - expected).abs() < 1e-6, "mean {} vs {}", mean, expected);
        // thermal ratio p_{n+1}/p_n = tanh^2 z
        let t2 = 0.5f64.tanh().powi(2);
        for n in 0..6usize {
            let ratio = rho.entries()[[n + 1, n + 1]].re / rho.entries()[[n, n]].re;
            assert!((ratio - t2).abs() < 1e-10, "thermal ratio at {}", n);
        }
        // off-diagonals vanish for the reduced state
        assert!(rho.entries()[[0, 2]].norm() < 1e-14);
    }

    #[test]
    fn test_gaussian_operators_are_unitary() {
        let space = single(20);
        let d = displacement_op(&space, photon(), &CoherentParams::new(Complex64::new(1.0, 0.5)))
            .unwrap();
        assert!(d.unitarity_defect() < 1e-12);
        let s = squeeze_op(&space, photon(), &SqueezeParams::new(0.8, 1.1).unwrap()).unwrap();
        assert!(s.unitarity_defect() < 1e-12);
        let space2 = pair(12);
        let s2 = two_mode_squeeze_op(
            &space2,
            graviton_pk(),
            graviton_mk(),
            &TwoModeSqueezeParams::new(0.7, 0.4).unwrap(),
        )
        .unwrap();
        assert!(s2.unitarity_defect() < 1e-12);
    }

    #[test]
    fn test_bogoliubov_residual_zero_squeeze() {
        let space = single(20);
        let res =
            bogoliubov_residual(&space, photon(), &SqueezeParams::new(0.0, 0.0).unwrap()).unwrap();
        assert!(res < 1e-13);
    }

    #[test]
    fn test_bogoliubov_residual_midband_restriction_does_not_converge() {
        // The half-cutoff restriction keeps rows/columns whose squeeze
        // already reaches the truncation edge, so the residual is O(1):
        // frozen reference values from an independent dense-matrix oracle.
        let space = single(20);
        let res =
            bogoliubov_residual(&space, photon(), &SqueezeParams::new(0.5, 0.0).unwrap()).unwrap();
        assert!((res - 2.454278250306).abs() < 1e-3, "residual {}", res);

        let space30 = single(30);
        let res30 = bogoliubov_residual(
            &space30,
            photon(),
            &SqueezeParams::new(1.0, PI / 3.0).unwrap(),
        )
        .unwrap();
        assert!((res30 - 6.981647077965).abs() < 1e-3, "residual {}", res30);
    }

    #[test]
    fn test_bogoliubov_residual_banded_converges() {
        let space = single(100);
        for (r, phi) in [(0.25, 0.0), (0.5, 0.0), (1.0, PI / 3.0)] {
            let res = bogoliubov_residual_banded(
                &space,
                photon(),
                &SqueezeParams::new(r, phi).unwrap(),
                2,
            )
            .unwrap();
            assert!(res < 1e-6, "banded residual at r={}: {}", r, res);
        }
    }

    #[test]
    fn test_displacement_residual_banded_converges() {
        let space = single(32);
        for beta in [c(0.5), c(1.0), Complex64::from_polar(1.5, PI / 4.0)] {
            let res = displacement_residual_banded(
                &space,
                photon(),
                &CoherentParams::new(beta),
                2,
            )
            .unwrap();
            assert!(res < 1e-8, "banded residual at beta={}: {}", beta, res);
        }
    }

    #[test]
    fn test_photon_norm_const_closed_forms() {
        let zero_s = SqueezeParams::new(0.0, 0.0).unwrap();
        assert_eq!(
            photon_norm_const(&zero_s, &CoherentParams::new(c(0.0))),
            1.0
        );
        let a = photon_norm_const(&zero_s, &CoherentParams::new(c(1.0)));
        assert!((a - 1.0 / 2.0f64.sqrt()).abs() < 1e-14);
        let s = SqueezeParams::new(0.5, 0.0).unwrap();
        let a2 = photon_norm_const(&s, &CoherentParams::new(c(1.0)));
        assert!((a2 - 5.006373323933e-01).abs() < 1e-11);
    }

    #[test]
    fn test_photon_norm_const_against_numeric_norm() {
        let s = SqueezeParams::new(0.5, 0.0).unwrap();
        let cp = CoherentParams::new(c(1.0));
        let analytic_inv_sq = 1.0 / photon_norm_const(&s, &cp).powi(2);

        // at n_max = 24 the truncated norm still deviates at the 1e-4 level
        let space24 = single(24);
        let psi24 = squeezed_coherent_state(&space24, photon(), &s, &cp).unwrap();
        let num24 = apply_creator(&psi24, photon()).unwrap().norm().powi(2);
        let dev24 = (num24 - analytic_inv_sq).abs();
        assert!(
            (dev24 - 6.510883717192e-04).abs() < 1e-6,
            "deviation at n_max=24: {}",
            dev24
        );

        // at n_max = 128 it matches to machine precision
        let space128 = single(128);
        let psi128 = squeezed_coherent_state(&space128, photon(), &s, &cp).unwrap();
        let num128 = apply_creator(&psi128, photon()).unwrap().norm().powi(2);
        assert!(
            (num128 - analytic_inv_sq).abs() < 1e-6,
            "deviation at n_max=128: {}",
            (num128 - analytic_inv_sq).abs()
        );
    }

    #[test]
    fn test_graviton_norm_const_values() {
        assert_eq!(graviton_norm_const(&TwoModeSqueezeParams::new(0.0, 0.0).unwrap()), 1.0);
        let a1 = graviton_norm_const(&TwoModeSqueezeParams::new(1.0, 0.0).unwrap());
        assert!((a1 - 0.648054).abs() < 1e-6);
        let a05 = graviton_norm_const(&TwoModeSqueezeParams::new(0.5, 0.0).unwrap());
        assert!((a05 - 0.886819).abs() < 1e-6);
    }

    #[test]
    fn test_graviton_norm_against_numeric_norm() {
        // A_g * ||a^dag S2|0>|| = 1; converges at moderate z, degrades at z=1
        // for n_max=24 and recovers at n_max=30.
        let params05 = TwoModeSqueezeParams::new(0.5, 0.0).unwrap();
        let space24 = pair(24);
        let psi = two_mode_squeezed_vacuum(&space24, graviton_pk(), graviton_mk(), &params05)
            .unwrap();
        let norm = apply_creator(&psi, graviton_pk()).unwrap().norm();
        assert!((graviton_norm_const(&params05) * norm - 1.0).abs() < 1e-6);

        let params1 = TwoModeSqueezeParams::new(1.0, 0.0).unwrap();
        let psi1 = two_mode_squeezed_vacuum(&space24, graviton_pk(), graviton_mk(), &params1)
            .unwrap();
        let norm1 = apply_creator(&psi1, graviton_pk()).unwrap().norm();
        let dev1 = (graviton_norm_const(&params1) * norm1 - 1.0).abs();
        assert!(
            dev1 > 1e-6 && dev1 < 2e-5,
            "z=1 deviation at n_max=24: {}",
            dev1
        );

        let space30 = pair(30);
        let psi30 = two_mode_squeezed_vacuum(&space30, graviton_pk(), graviton_mk(), &params1)
            .unwrap();
        let norm30 = apply_creator(&psi30, graviton_pk()).unwrap().norm();
        assert!((graviton_norm_const(&params1) * norm30 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn test_squeezed_coherent_state_is_normalized_and_ordered() {
        let space = single(24);
        let s = SqueezeParams::new(0.4, 0.7).unwrap();
        let cp = CoherentParams::new(Complex64::new(0.8, -0.3));
        let psi = squeezed_coherent_state(&space, photon(), &s, &cp).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);

        // operator order matters: S D |0> differs from D S |0> for r, beta > 0
        let d = displacement_op(&space, photon(), &cp).unwrap();
        let sq = squeeze_op(&space, photon(), &s).unwrap();
        let reversed = apply(&d, &apply(&sq, &vacuum(&space)).unwrap()).unwrap();
        let overlap = inner(&psi, &reversed).unwrap().norm();
        assert!(overlap < 1.0 - 1e-3, "states coincide: overlap {}", overlap);
    }

    #[test]
    fn test_squeeze_params_validation_and_db() {
        assert!(matches!(SqueezeParams::new(-0.1, 0.0), Err(Error::Domain(_))));
        let p = SqueezeParams::new(0.3, -PI / 2.0).unwrap();
        assert!((p.phi() - 3.0 * PI / 2.0).abs() < 1e-12);

        let p8 = SqueezeParams::from_db(8.0, 0.0).unwrap();
        assert!(((2.0 * p8.r()).exp() - 6.309573444802).abs() < 1e-9);
        assert!((p8.to_db() - 8.0).abs() < 1e-12);

        let p15 = SqueezeParams::from_db(15.0, 0.0).unwrap();
        assert!(((2.0 * p15.r()).exp() - 31.62277660168).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn prop_displacement_preserves_norm(re in -1.0f64..1.0, im in -1.0f64..1.0) {
            let space = single(20);
            let d = displacement_op(&space, photon(), &CoherentParams::new(Complex64::new(re, im)))
                .unwrap();
            let psi = apply(&d, &vacuum(&space)).unwrap();
            prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn prop_bogoliubov_banded_residual_small(
            r in 0.0f64..1.0,
            phi in 0.0f64..std::f64::consts::TAU,
        ) {
            let space = single(100);
            let res = bogoliubov_residual_banded(
                &space,
                photon(),
                &SqueezeParams::new(r, phi).unwrap(),
                2,
            ).unwrap();
            prop_assert!(res < 1e-6, "residual {}", res);
        }

        #[test]
        fn prop_displacement_banded_residual_small(
            re in -1.0f64..1.0,
            im in -1.0f64..1.0,
        ) {
            let space = single(32);
            let res = displacement_residual_banded(
                &space,
                photon(),
                &CoherentParams::new(Complex64::new(re, im)),
                2,
            ).unwrap();
            prop_assert!(res < 1e-8, "residual {}", res);
        }

        #[test]
        fn prop_photon_norm_const_positive_and_monotone_shape(
            r in 0.0f64..1.2,
            mag in 0.0f64..1.5,
            arg in 0.0f64..std::f64::consts::TAU,
            phi in 0.0f64..std::f64::consts::TAU,
        ) {
            let s = SqueezeParams::new(r, phi).unwrap();
            let cp = CoherentParams::new(Complex64::from_polar(mag, arg));
            let a = photon_norm_const(&s, &cp);
            prop_assert!(a.is_finite());
            prop_assert!(a > 0.0);
            prop_assert!(a <= 1.0 + 1e-12);
        }
    }
}
