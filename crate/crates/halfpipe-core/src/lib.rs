//! Numerical toolkit for geometric transitions between hyperbolic, half-pipe
//! (HP) and anti-de Sitter (AdS) structures in dimensions 2 and 3.
//!
//! The toolkit works at the level of holonomy representations. A single real
//! parameter `s` selects a model space `X_s` together with its structure
//! group: `s > 0` gives hyperbolic space, `s < 0` anti-de Sitter space and
//! `s = 0` the degenerate half-pipe geometry that interpolates between them.
//! Everything is built on the family of two-dimensional commutative algebras
//! `B_s = R + R·kappa` with `kappa^2 = -sign(s)·s^2`, so that the classical
//! isomorphism `PSL(2,C) = Isom(H^3)` deforms continuously through dual
//! numbers (`s = 0`) into split-complex numbers (`s < 0`).
//!
//! Modules:
//! - [`algebra`]: arithmetic in `B_s`,
//! - [`geom`]: model spaces, their isometry groups in the 2x2-over-`B_s` and
//!   projective pictures, rescaling maps,
//! - [`hp`]: half-pipe specific structure (fiber coordinates, infinitesimal
//!   rotation amounts, the semidirect product description),
//! - [`reps`]: finitely presented groups, cocycles, group cohomology,
//!   singularity invariants and the regeneration solvers,
//! - [`scenarios`]: three self-verifying worked constructions (singular
//!   torus, the `(2,m,m)` unit tangent bundle, the Borromean rings
//!   representation variety).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod geom;
pub mod hp;
pub mod linalg;
pub mod reps;
pub mod rng;
pub mod scenarios;

pub use error::Error;

/// Scalar math shim: uses `std` intrinsics when available, `libm` otherwise.
pub(crate) mod math {
    #[cfg(feature = "std")]
    macro_rules! shim {
        ($($name:ident),*) => {
            $(#[inline] pub fn $name(x: f64) -> f64 { f64::$name(x) })*
        };
    }
    #[cfg(not(feature = "std"))]
    macro_rules! shim {
        ($($name:ident),*) => {
            $(#[inline] pub fn $name(x: f64) -> f64 { libm::$name(x) })*
        };
    }

    shim!(sqrt, exp, cosh, sinh, cos, sin, tan, asin);

    #[cfg(feature = "std")]
    #[inline]
    pub fn ln(x: f64) -> f64 {
        f64::ln(x)
    }
    #[cfg(not(feature = "std"))]
    #[inline]
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }

    #[cfg(feature = "std")]
    #[inline]
    pub fn atan2(y: f64, x: f64) -> f64 {
        f64::atan2(y, x)
    }
    #[cfg(not(feature = "std"))]
    #[inline]
    pub fn atan2(y: f64, x: f64) -> f64 {
        libm::atan2(y, x)
    }

    #[cfg(feature = "std")]
    #[inline]
    pub fn hypot(x: f64, y: f64) -> f64 {
        f64::hypot(x, y)
    }
    #[cfg(not(feature = "std"))]
    #[inline]
    pub fn hypot(x: f64, y: f64) -> f64 {
        libm::hypot(x, y)
    }

    #[inline]
    pub fn acosh(x: f64) -> f64 {
        ln(x + sqrt(x * x - 1.0))
    }

    #[inline]
    pub fn asinh(x: f64) -> f64 {
        // ln(x + sqrt(x^2+1)) loses precision for large negative x.
        if x >= 0.0 {
            ln(x + sqrt(x * x + 1.0))
        } else {
            -ln(-x + sqrt(x * x + 1.0))
        }
    }

    #[inline]
    pub fn abs(x: f64) -> f64 {
        f64::abs(x)
    }

    /// sinh(x)/x, stable near zero.
    #[inline]
    pub fn sinhc(x: f64) -> f64 {
        if abs(x) < 1e-4 {
            let x2 = x * x;
            1.0 + x2 / 6.0 + x2 * x2 / 120.0
        } else {
            sinh(x) / x
        }
    }

    /// sin(x)/x, stable near zero.
    #[inline]
    pub fn sinc(x: f64) -> f64 {
        if abs(x) < 1e-4 {
            let x2 = x * x;
            1.0 - x2 / 6.0 + x2 * x2 / 120.0
        } else {
            sin(x) / x
        }
    }
}
