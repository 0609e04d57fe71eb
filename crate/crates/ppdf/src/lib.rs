//! Construction, Fourier analysis, and extremality certification of radial
//! functions that are simultaneously pointwise nonnegative and positive
//! definite.
//!
//! The crate provides:
//!
//! * a catalogue of radial profiles closed under scaling, products,
//!   convolution, and measure mixtures ([`funcs`]);
//! * the d-dimensional radial Fourier transform with analytic extension to a
//!   complex strip ([`transform`]);
//! * positivity / positive-definiteness criteria and their witnesses
//!   ([`criteria`]);
//! * zero localisation in rectangles of the complex plane and extremality
//!   certificates for compactly supported and Gaussian–polynomial families
//!   ([`extremal`]);
//! * a JSON descriptor layer and a CLI (`ppdf`) exposing all of the above
//!   ([`descriptor`]).

pub mod error;
pub mod funcs;
pub mod measure;
pub mod poly;
pub mod quad;
pub mod special;
pub mod criteria;
pub mod descriptor;
pub mod extremal;
pub mod transform;

pub use error::{Error, Result};
