//! Adaptive unitary coupled-cluster simulation with auxiliary subspace
//! energy corrections.
//!
//! The crate implements the full pipeline for the AD(SPQE)-ASC method:
//! FCIDUMP ingestion, Jordan-Wigner mapping, exact statevector evolution
//! of disentangled UCC ansatze, PQE residual optimization, threshold-based
//! operator selection (SPQE), non-iterative auxiliary subspace corrections
//! (schemes I and II), an exact FCI reference, and quantum-resource
//! estimators. A scan driver binary (`adspqe-scan`) runs potential-energy
//! surface and threshold sweeps over FCIDUMP fixtures.

pub mod asc;
pub mod error;
pub mod fci;
pub mod hamiltonian;
pub mod pauli;
pub mod pool;
pub mod pqe;
pub mod resources;
pub mod scan;
pub mod spqe;
pub mod state;

pub use error::Error;
