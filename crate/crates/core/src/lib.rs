//! Two massive spin-j particles with opposite sharp momenta, boosted
//! transversely: the boost acts as momentum-dependent Wigner rotations on the
//! spins, and the entanglement change is measured with the linear entropy on
//! every partition of `[A_p, A_s, B_p, B_s]`.
//!
//! The [`invariant`] module builds the basis in which the induced spin map is
//! diagonal for every Wigner angle; its elements only acquire a phase.

pub mod boost;
pub mod entanglement;
pub mod error;
pub mod invariant;
pub mod kinematics;
pub mod spin;
pub mod states;
pub mod sweep;
pub mod tensor;

pub use boost::{apply_boost, spin_boost_matrix, BoostMap};
pub use entanglement::{
    a_vs_b_conserved, delta_e, entanglement_change, linear_entropy, named_partition, EntanglementChange,
    EntropyReport, Partition, PartitionSelector, Subsystem,
};
pub use error::{Error, Result};
pub use invariant::{classify, is_phase_invariant, weight_basis, weight_operator, WeightBasis, WeightVector};
pub use kinematics::{particle_angle_signs, wigner_angle, Angle, BoostSetup, Momentum};
pub use num_complex::Complex64;
pub use spin::{character, multiplicity, spin_operators, wigner_d, SpinJ, SpinOperators};
pub use states::{
    compose, momentum_state, named_state, named_states, spin_param1, spin_param2, spin_param3, total_spin_squared,
    CompositeState, MomentumState, NamedState, Parametrization, SpinState, StateLiteral,
};
pub use sweep::{find_extrema, run_sweep, run_sweep_with, Execution, ExportFormat, Extremum, ExtremumKind, SweepGrid, SweepSpec};
pub use tensor::{eig_hermitian, kron, partial_trace, reduced_density, ComplexMatrix, StateVector, SubsystemShape};
