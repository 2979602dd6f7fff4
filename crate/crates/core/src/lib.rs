//! Homothetic-BCH codes over GF(q²) and the quantum stabilizer codes they
//! yield through Hermitian self-orthogonality.
//!
//! The crate is organized bottom-up:
//!
//! - [`gf`]: log/antilog arithmetic in GF(p^m) and the tower GF(q²) ⊂ GF(q^{2s})
//! - [`cosets`]: cyclotomic cosets modulo N w.r.t. q² and defining sets
//! - [`linalg`]: row reduction, rank and kernels over a finite field
//! - [`evalcodes`]: evaluation codes, subfield-subcodes, duals, exhaustive distance
//! - [`hermitian`]: the Gram test and the sharp bound L (brute force and closed forms)
//! - [`quantum`]: the full construction pipeline, lengthening and grid scans

pub mod cosets;
pub mod error;
pub mod evalcodes;
pub mod gf;
pub mod hermitian;
pub mod linalg;
pub mod quantum;

pub use cosets::{CosetListing, CosetSystem, DefiningSet};
pub use error::{BoundError, CodeError, CosetError, GfError, QuantumError};
pub use evalcodes::{LinearCode, PointSet};
pub use gf::{ConwayTable, Elem, FieldCtx, FieldTower};
pub use hermitian::{BoundReport, BoundResult, CaseDescriptor, CaseId};
pub use quantum::{PipelineConfig, PipelineReport, QuantumParams, ScanGrid, Selection};
