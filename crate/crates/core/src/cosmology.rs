//! Primordial gravitational-wave squeezing spectrum: the frequency-dependent
//! two-mode squeezing amplitude below a cutoff frequency and the resulting
//! conversion-probability enhancement factor.

use crate::error::{Error, Result};
use crate::gaussian::TwoModeSqueezeParams;

/// Primordial spectrum parameterized by its cutoff frequency in Hz.
///
/// Below the cutoff, cosh 2z = (f_c/f)^4; the squeezing angle is not fixed
/// by the spectrum and is set to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimordialSpectrum {
    f_c_hz: f64,
}

impl Default for PrimordialSpectrum {
    fn default() -> Self {
        PrimordialSpectrum { f_c_hz: 1e9 }
    }
}

impl PrimordialSpectrum {
    pub fn new(f_c_hz: f64) -> Result<Self> {
        if !f_c_hz.is_finite() || f_c_hz <= 0.0 {
            return Err(Error::Domain(format!(
                "cutoff frequency must be finite and positive, got {}",
                f_c_hz
            )));
        }
        Ok(PrimordialSpectrum { f_c_hz })
    }

    pub fn f_c_hz(&self) -> f64 {
        self.f_c_hz
    }

    fn ratio_fourth(&self, f_hz: f64) -> Result<f64> {
        if !f_hz.is_finite() || f_hz <= 0.0 {
            return Err(Error::Domain(format!(
                "frequency must be finite and positive, got {}",
                f_hz
            )));
        }
        if f_hz > self.f_c_hz {
            return Err(Error::Domain(format!(
                "frequency {} Hz exceeds the cutoff {} Hz; the squeezing formula only applies below the cutoff",
                f_hz, self.f_c_hz
            )));
        }
        let ratio4 = (self.f_c_hz / f_hz).powi(4);
        if !ratio4.is_finite() {
            return Err(Error::Domain(format!(
                "(f_c/f)^4 overflows for f = {} Hz, f_c = {} Hz",
                f_hz, self.f_c_hz
            )));
        }
        Ok(ratio4)
    }
}

/// Two-mode squeezing amplitude at frequency f:
/// z = (1/2) arccosh((f_c/f)^4), chi = 0.
pub fn squeeze_amplitude(spec: &PrimordialSpectrum, f_hz: f64) -> Result<TwoModeSqueezeParams> {
    let ratio4 = spec.ratio_fourth(f_hz)?;
    TwoModeSqueezeParams::new(0.5 * ratio4.acosh(), 0.0)
}

/// Conversion-probability enhancement factor
/// cosh^2 z = (cosh 2z + 1)/2 = ((f_c/f)^4 + 1)/2.
pub fn enhancement_factor(spec: &PrimordialSpectrum, f_hz: f64) -> Result<f64> {
    let ratio4 = spec.ratio_fourth(f_hz)?;
    Ok((ratio4 + 1.0) / 2.0)
}

/// Diagnostic: |z extracted from cosh 2z - z extracted from sinh 2z|.
///
/// The two extractions agree only in the large-z regime where the spectrum
/// formula treats cosh and sinh as equal; near the cutoff they differ at
/// O(1).
pub fn extraction_discrepancy(spec: &PrimordialSpectrum, f_hz: f64) -> Result<f64> {
    let ratio4 = spec.ratio_fourth(f_hz)?;
    let z_cosh = 0.5 * ratio4.acosh();
    let z_sinh = 0.5 * ratio4.asinh();
    Ok((z_cosh - z_sinh).abs())
}
