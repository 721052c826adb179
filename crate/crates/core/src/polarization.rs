//! 3D polarization geometry for the transverse-traceless sector: deterministic
//! polarization bases with a fixed parity convention, projection and
//! polarization tensors, magnetic-field decomposition, and the
//! graviton-photon coupling constant.

use crate::error::{Error, Result};
use crate::units::TESLA_TO_EV2;

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

#[inline]
pub fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm3(a: Vec3) -> f64 {
    dot3(a, a).sqrt()
}

#[inline]
fn scale3(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
fn sub3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Nonzero wavevector in eV; the dispersion relation sets omega = |k|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector {
    components: Vec3,
    magnitude: f64,
}

impl WaveVector {
    pub fn new(components: Vec3) -> Result<Self> {
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("wavevector has non-finite components".into()));
        }
        let magnitude = norm3(components);
        if magnitude == 0.0 {
            return Err(Error::Domain("wavevector must be nonzero".into()));
        }
        Ok(WaveVector {
            components,
            magnitude,
        })
    }

    pub fn components(&self) -> Vec3 {
        self.components
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    /// Unit direction k / |k|.
    pub fn unit(&self) -> Vec3 {
        scale3(self.components, 1.0 / self.magnitude)
    }

    /// The mirrored wavevector -k.
    pub fn mirrored(&self) -> WaveVector {
        WaveVector {
            components: [
                -self.components[0],
                -self.components[1],
                -self.components[2],
            ],
            magnitude: self.magnitude,
        }
    }
}

/// Right-handed orthonormal triad (khat, e_cross, e_plus) with
/// khat x e_cross = e_plus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationBasis {
    pub khat: Vec3,
    pub e_cross: Vec3,
    pub e_plus: Vec3,
}

/// Split of a magnetic field into components along and transverse to k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldDecomposition {
    pub b_parallel: Vec3,
    pub b_perp: Vec3,
}

/// Deterministic polarization basis for any direction.
///
/// The reference axis is the coordinate axis with the smallest |khat
/// component| (ties broken toward the lowest index); Gram-Schmidt against
/// khat gives the raw cross vector, whose overall sign is fixed by the sign
/// of the first nonzero khat component. This makes the parity behavior
/// exact in floating point: e_plus(-k) = e_plus(k) and
/// e_cross(-k) = -e_cross(k) bit for bit.
pub fn build_basis(k: &WaveVector) -> PolarizationBasis {
    let khat = k.unit();

    let mut ref_axis = 0;
    for axis in 1..3 {
        if khat[axis].abs() < khat[ref_axis].abs() {
            ref_axis = axis;
        }
    }
    let mut e_ref = [0.0; 3];
    e_ref[ref_axis] = 1.0;

    // Raw Gram-Schmidt vector; even under k -> -k.
    let c = sub3(e_ref, scale3(khat, dot3(e_ref, khat)));
    let c_norm = norm3(c);

    // Parity-fixing sign; odd under k -> -k.
    let mut sign = 0.0;
    for &x in &khat {
        if x != 0.0 {
            sign = if x > 0.0 { 1.0 } else { -1.0 };
            break;
        }
    }

    let e_cross = scale3(c, sign / c_norm);
    let e_plus = cross3(khat, e_cross);
    PolarizationBasis {
        khat,
        e_cross,
        e_plus,
    }
}

/// Transverse projector P_ij = delta_ij - k_i k_j / k^2.
pub fn projection_tensor(k: &WaveVector) -> Mat3 {
    let khat = k.unit();
    let mut p = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            p[i][j] = if i == j { 1.0 } else { 0.0 };
            p[i][j] -= khat[i] * khat[j];
        }
    }
    p
}

/// Polarization tensors (plus, cross):
/// e+_ij = (e_plus e_plus - e_cross e_cross)/sqrt(2),
/// ex_ij = (e_plus e_cross + e_cross e_plus)/sqrt(2).
pub fn polarization_tensors(basis: &PolarizationBasis) -> (Mat3, Mat3) {
    let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
    let mut e_plus_t = [[0.0; 3]; 3];
    let mut e_cross_t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            e_plus_t[i][j] = (basis.e_plus[i] * basis.e_plus[j]
                - basis.e_cross[i] * basis.e_cross[j])
                * inv_sqrt2;
            e_cross_t[i][j] = (basis.e_plus[i] * basis.e_cross[j]
                + basis.e_cross[i] * basis.e_plus[j])
                * inv_sqrt2;
        }
    }
    (e_plus_t, e_cross_t)
}

/// Split B into parts along and transverse to k. Components smaller than
/// 1e-12 relative to |B| are snapped to exact zero so that exactly parallel
/// (or exactly transverse) fields decompose exactly.
pub fn decompose_b(b: Vec3, k: &WaveVector) -> Result<FieldDecomposition> {
    if b.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("magnetic field has non-finite components".into()));
    }
    let khat = k.unit();
    let mut b_parallel = scale3(khat, dot3(b, khat));
    let mut b_perp = sub3(b, b_parallel);

    let b_norm = norm3(b);
    if norm3(b_perp) < 1e-12 * b_norm {
        b_perp = [0.0; 3];
        b_parallel = b;
    } else if norm3(b_parallel) < 1e-12 * b_norm {
        b_parallel = [0.0; 3];
        b_perp = b;
    }
    Ok(FieldDecomposition { b_parallel, b_perp })
}

/// Graviton-photon coupling constant in eV:
/// lambda = |B_perp| / (sqrt(2) M_pl), with B given in tesla.
///
/// Only the transverse field contributes; an exactly parallel B gives
/// exactly zero.
pub fn coupling_lambda(b_tesla: Vec3, k: &WaveVector, m_pl_ev: f64) -> Result<f64> {
    if !(m_pl_ev > 0.0) {
        return Err(Error::Domain(format!(
            "Planck mass must be positive, got {}",
            m_pl_ev
        )));
    }
    let dec = decompose_b(b_tesla, k)?;
    let b_perp_ev2 = norm3(dec.b_perp) * TESLA_TO_EV2;
    Ok(b_perp_ev2 / (2.0f64.sqrt() * m_pl_ev))
}

/// Contraction matrix M_PQ = eps_ilm B_perp^m e^P_ij(k) khat^l e^Q_j(-k)
/// over P, Q in {plus, cross}; proportional to the identity pattern
/// diag(+1, -1) when B_perp is aligned with e_cross.
///
/// `b_perp` must be aligned with +/- e_cross (transverse-field direction);
/// misalignment is a domain error.
pub fn check_delta_pq(basis: &PolarizationBasis, b_perp: Vec3) -> Result<[[f64; 2]; 2]> {
    if b_perp.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("transverse field has non-finite components".into()));
    }
    let b_norm = norm3(b_perp);
    if b_norm == 0.0 {
        return Err(Error::Domain("transverse field must be nonzero".into()));
    }
    let along = dot3(b_perp, basis.e_cross);
    let residual = sub3(b_perp, scale3(basis.e_cross, along));
    if norm3(residual) > 1e-10 * b_norm {
        return Err(Error::Domain(
            "transverse field must be aligned with the cross polarization axis".into(),
        ));
    }

    // v_i = eps_ilm khat^l B_perp^m = (khat x B_perp)_i
    let v = cross3(basis.khat, b_perp);

    let (ep_k, ex_k) = polarization_tensors(basis);
    let mirrored = mirrored_basis(basis);
    let vec_of = |q: usize, m: &PolarizationBasis| -> Vec3 {
        if q == 0 {
            m.e_plus
        } else {
            m.e_cross
        }
    };
    let tensors = [ep_k, ex_k];

    let mut out = [[0.0; 2]; 2];
    for (p, tensor) in tensors.iter().enumerate() {
        for q in 0..2 {
            let eq = vec_of(q, &mirrored);
            let mut sum = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    sum += v[i] * tensor[i][j] * eq[j];
                }
            }
            out[p][q] = sum;
        }
    }
    Ok(out)
}

/// Basis of the mirrored direction, using the exact parity convention.
fn mirrored_basis(basis: &PolarizationBasis) -> PolarizationBasis {
    PolarizationBasis {
        khat: [-basis.khat[0], -basis.khat[1], -basis.khat[2]],
        e_cross: [-basis.e_cross[0], -basis.e_cross[1], -basis.e_cross[2]],
        e_plus: basis.e_plus,
    }
}
