//! Numerical bounds for Max kXOR.
//!
//! * [`qaoa`]: closed-form depth-1 QAOA performance on triangle-free instances,
//!   its optimization at finite and infinite degree, and an exact statevector
//!   oracle.
//! * [`threshold`]: the one-local threshold algorithm, exactly and by Monte Carlo.
//! * [`parisi`]: the zero-temperature Parisi functional for mixed p-spin glasses,
//!   which yields the optimal satisfying fraction of dense random instances.
//! * [`nlts`]: fully satisfiable Max 3XOR instances with a partial bit-flip
//!   symmetry, and the associated obstruction bounds.
//! * [`instances`]: the instance model shared by everything above.
//! * [`cli`]: table and figure-data generation behind the `kxor` binary.

pub mod cli;
pub mod error;
pub mod instances;
pub mod nlts;
pub mod optimize;
pub mod parisi;
pub mod qaoa;
pub mod rng;
pub mod threshold;

pub use error::{Error, Result};
pub use instances::{Clause, XorInstance};
pub use parisi::{MixedXi, ParisiResult, ParisiSettings, StepOrderParam};
pub use qaoa::QaoaAngles;
