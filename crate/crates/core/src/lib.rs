//! Enclosure-based estimation of sums `Σ φ(γ)` over ordinates `γ` of the
//! nontrivial zeros of the Riemann zeta function.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`] – midpoint–radius ball arithmetic, the carrier for every value;
//! * [`theta`] – the Riemann–Siegel theta function and the `Q − S` correction;
//! * [`zeros`] – Hardy's `Z`, zero location and the counting functions `L`, `N`, `Q`;
//! * [`phifunc`] – weight functions `φ` from built-ins or a small expression language;
//! * [`quadrature`] – enclosures of `(1/2π)∫φ(t)log(t/2π)dt` and of `li(x)`;
//! * [`estimator`] – the boundary-corrected sum/integral estimators and their drivers.

pub mod estimator;
pub mod numeric;
pub mod phifunc;
pub mod quadrature;
pub mod theta;
pub mod zeros;

pub use numeric::Ball;
