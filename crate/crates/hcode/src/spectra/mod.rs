//! Exact operator construction and diagonalization at desk scale.
//!
//! Operators are kept symbolic (sums of X/Z strings) so that the 3^9
//! spaces of the 3x3 torus stay tractable: dense matrices are only built
//! for restricted subspaces (codeword bases, charge sectors), and
//! full-register statements use structured application or matrix-free
//! iteration.

pub mod compiled;
pub mod constraints;
pub mod dense;
pub mod hamiltonians;
pub mod op;
pub mod prepare;
pub mod sector;

pub use compiled::{compile_real, lowest_eigenpairs, CompiledOp};
pub use constraints::{solve_hx_constraints, ConstraintReport};
pub use dense::{
    eigh, ground_space, spectrum_multiset, DenseOperator, GroundSpace, StateVector,
    HERMITICITY_TOL, MAX_DENSE_DIM,
};
pub use hamiltonians::{
    boundary_hamiltonian, build_hx_3x3, build_hx_general, build_hx_prime_3x3, build_hz,
    charge_operator, holographic_x_string, hz_eigenvalue,
};
pub use op::{Axis, Factor, OperatorSpec, OperatorSum, XzTerm};
pub use prepare::{direct_code_state, prepare_state, run_circuit};
pub use sector::{
    codeword_basis, restrict_to_codewords, sector_codeword_basis, sector_spectrum, SectorSpectrum,
};
