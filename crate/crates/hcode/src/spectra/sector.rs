//! Charge-sector bases and sector-restricted spectra.
//!
//! All quantitative spectral claims in scope live in the neutral
//! (codeword) subspace of the 3x3 torus: 27 states, split into three
//! 9-state charge sectors. The mixing operators act there as signed
//! permutation sums, so restriction is exact.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::automaton::{boundary_from_index, generate_codeword, AutomatonError};
use crate::gf3::Trit;
use crate::lattice::Lattice;
use crate::metrics::ChargeSector;
use crate::spectra::dense::{eigh, pow3, spectrum_multiset, DenseError, DenseOperator};
use crate::spectra::op::{OperatorError, OperatorSum};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SectorError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error("enumeration of 3^{0} codewords is out of range for sector bases")]
    TooManyCodewords(usize),
}

/// All codewords of the lattice as classical site-value lists, ordered by
/// boundary index. Guarded to boundaries of at most 12 trits.
pub fn codeword_basis(lattice: &Lattice) -> Result<Vec<Vec<Trit>>, SectorError> {
    let n = lattice.boundary_len();
    if n > 12 {
        return Err(SectorError::TooManyCodewords(n));
    }
    let mut basis = Vec::with_capacity(pow3(n));
    for idx in 0..pow3(n) as u64 {
        let cw = generate_codeword(&boundary_from_index(idx, n), lattice)?;
        basis.push(cw.values().to_vec());
    }
    Ok(basis)
}

/// Codewords whose boundary trits sum to the given sector label.
pub fn sector_codeword_basis(
    lattice: &Lattice,
    sector: ChargeSector,
) -> Result<Vec<Vec<Trit>>, SectorError> {
    let n = lattice.boundary_len();
    Ok(codeword_basis(lattice)?
        .into_iter()
        .filter(|cw| {
            let sum: u8 = cw[..n].iter().map(|t| t.value()).sum::<u8>() % 3;
            sum == sector.label().value()
        })
        .collect())
}

/// Eigenvalues (with multiplicities) of an operator restricted to the
/// sector-`sector` codeword basis, plus the restricted ground vector.
#[derive(Debug, Clone)]
pub struct SectorSpectrum {
    pub sector: ChargeSector,
    pub dimension: usize,
    pub eigenvalues: Vec<(f64, usize)>,
    /// Ground eigenvector in the codeword basis (deterministic phase).
    pub ground_vector: Vec<Complex64>,
    pub ground_energy: f64,
}

/// Restrict `op` to the 3^{n-1} codewords of one charge sector and
/// diagonalize. Errors (with the leakage norm) when the operator maps the
/// sector outside itself.
pub fn sector_spectrum(
    op: &OperatorSum,
    lattice: &Lattice,
    sector: ChargeSector,
    cluster_tol: f64,
) -> Result<SectorSpectrum, SectorError> {
    let basis = sector_codeword_basis(lattice, sector)?;
    let matrix = op.restrict_to_classical(&basis)?;
    let (values, vectors) = eigh(&matrix);
    Ok(SectorSpectrum {
        sector,
        dimension: basis.len(),
        eigenvalues: spectrum_multiset(&values, cluster_tol),
        ground_vector: vectors[0].iter().copied().collect(),
        ground_energy: values[0],
    })
}

/// Restriction of `op` to the full codeword (neutral) subspace.
pub fn restrict_to_codewords(
    op: &OperatorSum,
    lattice: &Lattice,
) -> Result<DMatrix<Complex64>, SectorError> {
    let basis = codeword_basis(lattice)?;
    Ok(op.restrict_to_classical(&basis)?)
}

/// Check the Perron-Frobenius signature of a vector: amplitudes of uniform
/// magnitude and common phase over its support.
pub fn is_uniform_positive(vector: &[Complex64], tol: f64) -> bool {
    let dim = vector.len() as f64;
    let expected = 1.0 / dim.sqrt();
    vector
        .iter()
        .all(|c| (c.re - expected).abs() < tol && c.im.abs() < tol)
}

/// Dense ground-space computation for a restricted operator.
pub fn restricted_ground_space(
    matrix: &DMatrix<Complex64>,
    degeneracy_tol: f64,
) -> Result<crate::spectra::dense::GroundSpace, SectorError> {
    let op = DenseOperator::new(matrix.clone())?;
    Ok(crate::spectra::dense::ground_space(&op, degeneracy_tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::hamiltonians::{build_hx_3x3, build_hx_prime_3x3, build_hz};

    fn torus3() -> Lattice {
        Lattice::torus(3, 3).unwrap()
    }

    #[test]
    fn sector_bases_partition_the_codewords() {
        let lattice = torus3();
        let all = codeword_basis(&lattice).unwrap();
        assert_eq!(all.len(), 27);
        let mut total = 0;
        for s in 0..3u8 {
            let basis = sector_codeword_basis(&lattice, ChargeSector::new(Trit::new(s).unwrap())).unwrap();
            assert_eq!(basis.len(), 9);
            total += basis.len();
        }
        assert_eq!(total, 27);
    }

    #[test]
    fn hx_sector_spectrum_is_minus6_0_3() {
        let lattice = torus3();
        let hx = build_hx_3x3(&lattice).unwrap();
        for s in 0..3u8 {
            let spec = sector_spectrum(
                &hx,
                &lattice,
                ChargeSector::new(Trit::new(s).unwrap()),
                1e-9,
            )
            .unwrap();
            assert_eq!(spec.dimension, 9);
            let expected = [(-6.0, 1usize), (0.0, 6), (3.0, 2)];
            assert_eq!(spec.eigenvalues.len(), 3, "sector {s}: {:?}", spec.eigenvalues);
            for ((v, m), (ev, em)) in spec.eigenvalues.iter().zip(expected) {
                assert!((v - ev).abs() < 1e-9, "sector {s}: {v} vs {ev}");
                assert_eq!(*m, em, "sector {s}");
            }
            assert!(is_uniform_positive(&spec.ground_vector, 1e-9));
        }
    }

    #[test]
    fn hz_restricted_to_codewords_vanishes() {
        let lattice = torus3();
        let hz = build_hz(&lattice);
        let m = restrict_to_codewords(&hz, &lattice).unwrap();
        assert!(m.iter().all(|c| c.norm() < 1e-12));
    }

    #[test]
    fn dense_commutators_on_the_codeword_space() {
        let lattice = torus3();
        let hx = build_hx_3x3(&lattice).unwrap();
        let q = crate::spectra::hamiltonians::charge_operator(&lattice);
        let hx_dense = DenseOperator::new(restrict_to_codewords(&hx, &lattice).unwrap()).unwrap();
        let q_dense = DenseOperator::new(restrict_to_codewords(&q, &lattice).unwrap()).unwrap();
        assert!(hx_dense.commutes(&q_dense, 1e-9).unwrap());
        let hxp = build_hx_prime_3x3(&lattice).unwrap();
        let hxp_dense =
            DenseOperator::new(restrict_to_codewords(&hxp, &lattice).unwrap()).unwrap();
        assert!(!hxp_dense.commutes(&q_dense, 1e-9).unwrap());
        // dimension mismatch is rejected
        let small = DenseOperator::new(nalgebra::DMatrix::zeros(3, 3)).unwrap();
        assert!(matches!(
            q_dense.commutes(&small, 1e-9),
            Err(DenseError::DimensionMismatch(27, 3))
        ));
    }

    #[test]
    fn hx_prime_leaks_out_of_a_single_sector() {
        let lattice = torus3();
        let hxp = build_hx_prime_3x3(&lattice).unwrap();
        let err = sector_spectrum(&hxp, &lattice, ChargeSector::new(Trit::ZERO), 1e-9).unwrap_err();
        assert!(matches!(
            err,
            SectorError::Operator(OperatorError::SubspaceLeak(_))
        ));
        // but it stays inside the full codeword space
        assert!(restrict_to_codewords(&hxp, &lattice).is_ok());
    }
}
