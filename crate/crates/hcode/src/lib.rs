//! Qutrit holographic codes on triangular lattices.
//!
//! A boundary row of trits determines an entire lattice configuration
//! through the neutralization rule (every up-triangle sums to zero mod 3).
//! The uniform superposition of all such configurations is a code whose
//! elements sit exponentially far apart in Hamming distance, splits into
//! three charge sectors, and arises as the ground space of a frustration-free
//! parent Hamiltonian.
//!
//! The crate provides:
//!
//! - [`gf3`]: exact GF(3) arithmetic and linear algebra;
//! - [`lattice`]: torus/patch geometry, up-triangles, cycles, regions;
//! - [`automaton`]: the propagation rule, codeword generation, generator
//!   matrices, light cones and operator pushing;
//! - [`simplex`]: the four-qutrit absolutely-maximally-entangled building
//!   block and its verification;
//! - [`admissibility`]: which tori carry the code, via transfer-matrix
//!   periods over GF(3);
//! - [`metrics`]: Hamming distance, exhaustive minimum distance, charge
//!   sectors;
//! - [`entanglement`]: exact rank-based region entropies with a brute-force
//!   oracle, topological entropy;
//! - [`spectra`]: the parent Hamiltonians, sector spectra, ground spaces and
//!   the preparation circuit;
//! - [`checks`]: the verification suite driven by the CLI and the
//!   acceptance tests.

pub mod admissibility;
pub mod automaton;
pub mod checks;
pub mod entanglement;
pub mod gf3;
pub mod lattice;
pub mod metrics;
pub mod simplex;
pub mod spectra;

pub use admissibility::{is_admissible, minimal_period, search_admissible, TransferMatrix};
pub use automaton::{
    generate_codeword, generator_matrix, light_cone_diff, propagate_row, push_operator_string,
    HCode, PropagationMode, SpinConfig,
};
pub use entanglement::{
    brute_force_entropy, rank_entropy, topological_entropy, EntropyMethod, EntropyResult,
};
pub use gf3::{Gf3Matrix, Trit};
pub use lattice::{Lattice, PatchLattice, Region, TorusLattice};
pub use metrics::{
    cycle_charge, hamming_distance, min_distance, sector_census, ChargeSector,
};
pub use simplex::{simplex_state, verify_ame, AmeReport};
