//! The four-qutrit simplex state underlying the network construction.
//!
//! The state sum_{i,s} |s, i, i+s, i+2s> / 3 pairs one physical qutrit with
//! three ancillas so that any two of the four indices determine the other
//! two. That is absolute maximal entanglement: every bipartition's reduced
//! density matrix is maximally mixed, which is what lets the network be
//! read in any direction.

use num_complex::Complex64;
use serde::Serialize;

use crate::gf3::Trit;
use crate::spectra::dense::{basis_index, eigh, StateVector};

/// Tolerance used by the verification suite for the marginal spectra.
pub const AME_TOL: f64 = 1e-10;

/// The normalized simplex state |s, i, i+s, i+2s> summed over i, s.
pub fn simplex_state() -> StateVector {
    let mut state = StateVector::zeros(4);
    for i in 0..3u8 {
        for s in 0..3u8 {
            let digits = [
                Trit::new(s).unwrap(),
                Trit::new(i).unwrap(),
                Trit::new((i + s) % 3).unwrap(),
                Trit::new((i + 2 * s) % 3).unwrap(),
            ];
            state.amps[basis_index(&digits)] = Complex64::new(1.0 / 3.0, 0.0);
        }
    }
    state
}

/// Outcome of the absolute-maximal-entanglement check.
#[derive(Debug, Clone, Serialize)]
pub struct AmeReport {
    pub norm_deviation: f64,
    /// Largest |eigenvalue - 1/9| over all six two-site marginals.
    pub max_two_site_deviation: f64,
    /// Largest entry deviation from I/3 over the four one-site marginals.
    pub max_single_site_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Check that every 2-site reduced density matrix of the simplex state has
/// the flat spectrum {1/9 x 9} and every 1-site marginal equals I/3.
pub fn verify_ame(tolerance: f64) -> AmeReport {
    let state = simplex_state();
    let norm_deviation = (state.norm() - 1.0).abs();

    let mut max_two_site_deviation = 0.0f64;
    for a in 0..4usize {
        for b in (a + 1)..4 {
            let rho = state.reduced_density(&[a, b]);
            let (values, _) = eigh(&rho);
            for v in values {
                max_two_site_deviation = max_two_site_deviation.max((v - 1.0 / 9.0).abs());
            }
        }
    }

    let mut max_single_site_deviation = 0.0f64;
    for a in 0..4usize {
        let rho = state.reduced_density(&[a]);
        for r in 0..3 {
            for c in 0..3 {
                let expected = if r == c {
                    Complex64::new(1.0 / 3.0, 0.0)
                } else {
                    Complex64::ZERO
                };
                max_single_site_deviation =
                    max_single_site_deviation.max((rho[(r, c)] - expected).norm());
            }
        }
    }

    let passed = norm_deviation < tolerance
        && max_two_site_deviation < tolerance
        && max_single_site_deviation < tolerance;
    AmeReport {
        norm_deviation,
        max_two_site_deviation,
        max_single_site_deviation,
        tolerance,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_state_is_normalized() {
        assert!((simplex_state().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_qutrits_determine_the_other_two() {
        // the 9 product terms all differ in their first two digits
        let state = simplex_state();
        let mut seen = std::collections::BTreeSet::new();
        for (idx, amp) in state.amps.iter().enumerate() {
            if amp.norm() > 0.0 {
                seen.insert(idx / 9); // digits (s, i)
            }
        }
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn all_marginals_are_maximally_mixed() {
        let report = verify_ame(AME_TOL);
        assert!(report.passed, "{report:?}");
        assert!(report.max_two_site_deviation < AME_TOL);
        assert!(report.max_single_site_deviation < AME_TOL);
    }
}
