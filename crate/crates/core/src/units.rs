//! Unit-conversion table (Heaviside-Lorentz natural units, hbar = c = 1).
//!
//! Single source of truth shared by the library, the CLI, and the tests.
//!
//! | quantity            | constant          | value                      |
//! |---------------------|-------------------|----------------------------|
//! | magnetic field      | `TESLA_TO_EV2`    | 1 T = 195.35 eV^2          |
//! | length              | `METER_TO_INV_EV` | 1 m = 5.0677e6 eV^-1       |
//! | frequency           | `HERTZ_TO_EV`     | 1 Hz = 4.135667697e-15 eV  |
//! | reduced Planck mass | `M_PL_EV`         | 2.435e27 eV                |

/// 1 tesla in eV^2.
pub const TESLA_TO_EV2: f64 = 195.35;

/// 1 meter in eV^-1.
pub const METER_TO_INV_EV: f64 = 5.0677e6;

/// Photon energy per hertz of frequency: E = h f, h in eV s.
pub const HERTZ_TO_EV: f64 = 4.135_667_697e-15;

/// Reduced Planck mass 1/sqrt(8 pi G) in eV.
pub const M_PL_EV: f64 = 2.435e27;
