//! Numerical laboratory for the no-cloning and no-deleting principles.
//!
//! Hypothetical perfect deleting and cloning machines are built explicitly and
//! confronted with entropy, relative-entropy (Holevo) and entanglement
//! monotonicity; the same measures are checked to behave for legal evolutions
//! (unitaries and CPTP channels).

pub mod channels;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod nogo;
pub mod states;

pub use channels::{
    apply_channel, cnot, demon_channel, random_channel, stinespring, validate_cptp, Dilation,
    QuantumChannel,
};
pub use error::{Error, Result};
pub use linalg::{
    fit_linear_operator, hermitian_eig, kronecker, partial_trace, ComplexMatrix, EigenDecomposition,
};
pub use measures::{
    binary_entropy, entanglement_entropy, holevo_quantity, overlap, relative_entropy,
    von_neumann_entropy, Ensemble, EntropyValue,
};
pub use nogo::{CloningScenario, CopyTask, DeletingScenario, ExperimentReport, Verdict};
pub use states::{
    maximally_mixed_on, qubit, random_density_matrix, random_pure_state, random_unitary,
    symmetric_projector_two_qubits, DensityMatrix, Gate, PureState,
};
