//! Dense state vectors and operators over small qutrit registers.
//!
//! Basis ordering is lexicographic in the trit string with site 0 the most
//! significant digit, so basis index = sum_i s_i 3^{N-1-i}. Dense matrices
//! are capped at 3^7 = 2187 dimensions; larger spaces are handled through
//! structured operators and matrix-free iteration.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::gf3::Trit;

/// Largest dimension for which dense matrices are built.
pub const MAX_DENSE_DIM: usize = 2187;

/// Hermiticity is enforced at machine precision on every Hamiltonian built.
pub const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DenseError {
    #[error("operator dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} exceeds the dense cap of {MAX_DENSE_DIM}")]
    TooLarge(usize),
    #[error("operator is not Hermitian: deviation {0:.3e}")]
    NotHermitian(f64),
    #[error("iteration failed to converge: residual {0:.3e}")]
    NoConvergence(f64),
    #[error("operator maps the restricted index set outside itself; leakage weight {0:.3e}")]
    SubspaceLeak(f64),
}

/// 3^n for small n.
pub fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Basis index of a trit string (site 0 most significant).
pub fn basis_index(digits: &[Trit]) -> usize {
    digits.iter().fold(0, |acc, t| acc * 3 + t.value() as usize)
}

/// Trit string of a basis index.
pub fn basis_digits(mut index: usize, num_sites: usize) -> Vec<Trit> {
    let mut digits = vec![Trit::ZERO; num_sites];
    for d in digits.iter_mut().rev() {
        *d = Trit::new((index % 3) as u8).unwrap();
        index /= 3;
    }
    digits
}

/// A normalized pure state of `num_sites` qutrits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub num_sites: usize,
    pub amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(num_sites: usize) -> StateVector {
        StateVector {
            num_sites,
            amps: vec![Complex64::ZERO; pow3(num_sites)],
        }
    }

    pub fn basis_state(num_sites: usize, digits: &[Trit]) -> StateVector {
        assert_eq!(digits.len(), num_sites);
        let mut s = StateVector::zeros(num_sites);
        s.amps[basis_index(digits)] = Complex64::ONE;
        s
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
    }

    /// Inner product <self|other>.
    pub fn overlap(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |<self|other>|.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.overlap(other).norm()
    }

    /// Reduced density matrix over the given sites (ascending order kept).
    ///
    /// Built by accumulating outer products of the state grouped by the
    /// traced-out configuration, so the cost is 3^N * 3^|keep|.
    pub fn reduced_density(&self, keep: &[usize]) -> DMatrix<Complex64> {
        let kept: Vec<usize> = keep.to_vec();
        let rest: Vec<usize> = (0..self.num_sites).filter(|s| !kept.contains(s)).collect();
        let dim_a = pow3(kept.len());
        let dim_b = pow3(rest.len());
        // slices[b] = vector over the kept sites
        let mut slices = vec![vec![Complex64::ZERO; dim_a]; dim_b];
        for (idx, &amp) in self.amps.iter().enumerate() {
            if amp == Complex64::ZERO {
                continue;
            }
            let digits = basis_digits(idx, self.num_sites);
            let a = basis_index(&kept.iter().map(|&s| digits[s]).collect::<Vec<_>>());
            let b = basis_index(&rest.iter().map(|&s| digits[s]).collect::<Vec<_>>());
            slices[b][a] = amp;
        }
        let mut rho = DMatrix::<Complex64>::zeros(dim_a, dim_a);
        for slice in &slices {
            for (i, &si) in slice.iter().enumerate() {
                if si == Complex64::ZERO {
                    continue;
                }
                for (j, &sj) in slice.iter().enumerate() {
                    rho[(i, j)] += si * sj.conj();
                }
            }
        }
        rho
    }
}

/// A dense operator on a qutrit register (or a restricted subspace).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    pub matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<DenseOperator, DenseError> {
        if matrix.nrows() > MAX_DENSE_DIM {
            return Err(DenseError::TooLarge(matrix.nrows()));
        }
        Ok(DenseOperator { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let adj = self.matrix.adjoint();
        (&self.matrix - adj).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() < tol
    }

    /// Max-norm of the commutator [self, other].
    pub fn commutator_max_norm(&self, other: &DenseOperator) -> Result<f64, DenseError> {
        if self.dim() != other.dim() {
            return Err(DenseError::DimensionMismatch(self.dim(), other.dim()));
        }
        let ab = &self.matrix * &other.matrix;
        let ba = &other.matrix * &self.matrix;
        Ok((ab - ba).iter().map(|c| c.norm()).fold(0.0, f64::max))
    }

    /// True when the commutator vanishes within `tol` in max-norm.
    pub fn commutes(&self, other: &DenseOperator, tol: f64) -> Result<bool, DenseError> {
        Ok(self.commutator_max_norm(other)? < tol)
    }
}

/// Eigendecomposition of a Hermitian matrix, ascending eigenvalues.
///
/// Eigenvector phases are fixed so the largest-magnitude component is real
/// and positive, which keeps reports reproducible.
pub fn eigh(matrix: &DMatrix<Complex64>) -> (Vec<f64>, Vec<DVector<Complex64>>) {
    let eig = matrix.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let mut values = Vec::with_capacity(order.len());
    let mut vectors = Vec::with_capacity(order.len());
    for &i in &order {
        values.push(eig.eigenvalues[i]);
        let mut v: DVector<Complex64> = eig.eigenvectors.column(i).into_owned();
        let (mut best, mut best_norm) = (Complex64::ONE, 0.0);
        for c in v.iter() {
            if c.norm() > best_norm + 1e-12 {
                best_norm = c.norm();
                best = *c;
            }
        }
        if best_norm > 0.0 {
            let phase = best / best.norm();
            for c in v.iter_mut() {
                *c /= phase;
            }
        }
        vectors.push(v);
    }
    (values, vectors)
}

/// Eigenvalues clustered into (value, multiplicity) pairs within `tol`.
pub fn spectrum_multiset(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((rep, count)) if (v - *rep).abs() < tol => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Orthonormal basis of the lowest eigenspace of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct GroundSpace {
    pub energy: f64,
    pub degeneracy: usize,
    pub vectors: Vec<DVector<Complex64>>,
    /// Distance from the ground energy to the next level.
    pub gap: f64,
}

/// Ground space of a dense Hermitian operator; levels are grouped using
/// `degeneracy_tol` as the gap threshold.
pub fn ground_space(op: &DenseOperator, degeneracy_tol: f64) -> Result<GroundSpace, DenseError> {
    let dev = op.hermiticity_deviation();
    if dev >= HERMITICITY_TOL.max(degeneracy_tol) {
        return Err(DenseError::NotHermitian(dev));
    }
    let (values, vectors) = eigh(&op.matrix);
    let ground = values[0];
    let degeneracy = values.iter().take_while(|&&v| v - ground < degeneracy_tol).count();
    let gap = if degeneracy < values.len() {
        values[degeneracy] - ground
    } else {
        f64::INFINITY
    };
    Ok(GroundSpace {
        energy: ground,
        degeneracy,
        vectors: vectors.into_iter().take(degeneracy).collect(),
        gap,
    })
}
