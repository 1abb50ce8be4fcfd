//! Layer-by-layer preparation circuit for the codeword superposition.
//!
//! Starting from a boundary superposition with all bulk qutrits in |0>, a
//! two-qutrit gate |a>|t> -> |a>|t - a> is applied twice per bulk site (once
//! per base neighbour), which writes -(s_left + s_right) into the site. The
//! result must coincide with the directly constructed superposition over
//! codeword basis states.

use num_complex::Complex64;
use thiserror::Error;

use crate::automaton::{boundary_from_index, generate_codeword, AutomatonError};
use crate::gf3::Trit;
use crate::lattice::Lattice;
use crate::metrics::ChargeSector;
use crate::spectra::dense::{basis_digits, basis_index, pow3, StateVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PrepareError {
    #[error("preparation circuit is limited to tori with at most 10 sites, got {0}")]
    TooManySites(usize),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Apply the controlled gate |a>|t> -> |a>|t - a> on (control, target).
pub fn apply_subtract_gate(state: &StateVector, control: usize, target: usize) -> StateVector {
    let n = state.num_sites;
    let mut out = StateVector::zeros(n);
    for (idx, &amp) in state.amps.iter().enumerate() {
        if amp == Complex64::ZERO {
            continue;
        }
        let mut digits = basis_digits(idx, n);
        digits[target] = digits[target].sub(digits[control]);
        out.amps[basis_index(&digits)] += amp;
    }
    out
}

/// Uniform superposition over the boundary (optionally one charge sector)
/// with every bulk site at |0>.
pub fn boundary_superposition(
    lattice: &Lattice,
    sector: Option<ChargeSector>,
) -> Result<StateVector, PrepareError> {
    let sites = lattice.num_sites();
    if sites > 10 {
        return Err(PrepareError::TooManySites(sites));
    }
    let n = lattice.boundary_len();
    let mut state = StateVector::zeros(sites);
    for idx in 0..pow3(n) as u64 {
        let boundary = boundary_from_index(idx, n);
        if let Some(s) = sector {
            let sum: u8 = boundary.iter().map(|t| t.value()).sum::<u8>() % 3;
            if sum != s.label().value() {
                continue;
            }
        }
        let mut digits = vec![Trit::ZERO; sites];
        digits[..n].copy_from_slice(&boundary);
        state.amps[basis_index(&digits)] = Complex64::ONE;
    }
    state.normalize();
    Ok(state)
}

/// Run the preparation circuit: neutralization gates layer by layer.
pub fn run_circuit(lattice: &Lattice, input: &StateVector) -> Result<StateVector, PrepareError> {
    let sites = lattice.num_sites();
    if sites > 10 {
        return Err(PrepareError::TooManySites(sites));
    }
    let Lattice::Torus(torus) = lattice else {
        return Err(PrepareError::Automaton(AutomatonError::BadFormat(
            "preparation circuit runs on tori".into(),
        )));
    };
    let mut state = input.clone();
    for r in 1..torus.m {
        for c in 0..torus.n {
            let target = torus.site(r, c);
            state = apply_subtract_gate(&state, torus.site(r - 1, c), target);
            state = apply_subtract_gate(&state, torus.site(r - 1, c + 1), target);
        }
    }
    Ok(state)
}

/// Full preparation from a uniform (or sector-projected) boundary.
pub fn prepare_state(
    lattice: &Lattice,
    sector: Option<ChargeSector>,
) -> Result<StateVector, PrepareError> {
    let input = boundary_superposition(lattice, sector)?;
    run_circuit(lattice, &input)
}

/// The directly constructed superposition over codeword basis states.
pub fn direct_code_state(
    lattice: &Lattice,
    sector: Option<ChargeSector>,
) -> Result<StateVector, PrepareError> {
    let sites = lattice.num_sites();
    if sites > 10 {
        return Err(PrepareError::TooManySites(sites));
    }
    let n = lattice.boundary_len();
    let mut state = StateVector::zeros(sites);
    for idx in 0..pow3(n) as u64 {
        let boundary = boundary_from_index(idx, n);
        if let Some(s) = sector {
            let sum: u8 = boundary.iter().map(|t| t.value()).sum::<u8>() % 3;
            if sum != s.label().value() {
                continue;
            }
        }
        let cw = generate_codeword(&boundary, lattice)?;
        state.amps[basis_index(cw.values())] = Complex64::ONE;
    }
    state.normalize();
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus3() -> Lattice {
        Lattice::torus(3, 3).unwrap()
    }

    #[test]
    fn basis_input_prepares_a_single_codeword() {
        let lattice = torus3();
        let boundary = [Trit::ONE, Trit::ZERO, Trit::ZERO];
        let mut digits = vec![Trit::ZERO; 9];
        digits[..3].copy_from_slice(&boundary);
        let input = StateVector::basis_state(9, &digits);
        let output = run_circuit(&lattice, &input).unwrap();
        let cw = generate_codeword(&boundary, &lattice).unwrap();
        let expected = StateVector::basis_state(9, cw.values());
        assert!((output.fidelity(&expected) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_input_prepares_the_code_superposition() {
        let lattice = torus3();
        let prepared = prepare_state(&lattice, None).unwrap();
        assert!((prepared.norm() - 1.0).abs() < 1e-12);
        let direct = direct_code_state(&lattice, None).unwrap();
        assert!((prepared.fidelity(&direct) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sector_input_prepares_the_sector_state() {
        let lattice = torus3();
        for s in ChargeSector::all() {
            let prepared = prepare_state(&lattice, Some(s)).unwrap();
            let direct = direct_code_state(&lattice, Some(s)).unwrap();
            assert!((prepared.fidelity(&direct) - 1.0).abs() < 1e-12);
            // 9 codewords, uniform weight 1/3 each
            let nonzero = direct.amps.iter().filter(|a| a.norm() > 1e-12).count();
            assert_eq!(nonzero, 9);
        }
    }

    #[test]
    fn oversized_lattices_are_rejected() {
        let lattice = Lattice::torus(9, 9).unwrap();
        assert!(matches!(
            prepare_state(&lattice, None),
            Err(PrepareError::TooManySites(81))
        ));
    }
}
