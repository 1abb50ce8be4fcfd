//! Compiled form of classical-basis-friendly operators.
//!
//! Every Hamiltonian in scope is real symmetric in the classical basis: a
//! real diagonal part (Z-strings summed per basis state) plus real-weighted
//! basis permutations (pure X-strings). Compiling to that form makes
//! full-register matrix-free iteration cheap even at 3^9 dimensions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spectra::dense::{basis_digits, basis_index, DenseError};
use crate::spectra::op::{OperatorSum, XzTerm};

/// Diagonal + signed-permutation form of a real classical-basis operator.
#[derive(Debug, Clone)]
pub struct CompiledOp {
    pub dim: usize,
    pub diag: Vec<f64>,
    /// (coefficient, permutation): out[perm[i]] += coeff * v[i].
    pub perms: Vec<(f64, Vec<u32>)>,
}

/// Compile an operator sum whose terms are either diagonal (no X part,
/// with a real total diagonal) or pure X-strings with real coefficients.
/// Returns `None` for anything else.
pub fn compile_real(op: &OperatorSum) -> Option<CompiledOp> {
    let merged = op.merged();
    let dim = merged.dim();
    let num_sites = merged.num_sites;
    let mut diag_terms: Vec<&XzTerm> = Vec::new();
    let mut perm_terms: Vec<&XzTerm> = Vec::new();
    for t in &merged.terms {
        let has_x = t.x.iter().any(|&a| a != 0);
        let has_z = t.z.iter().any(|&b| b != 0);
        if !has_x {
            diag_terms.push(t);
        } else if !has_z && t.coeff.im.abs() < 1e-14 {
            perm_terms.push(t);
        } else {
            return None;
        }
    }
    let mut diag = vec![0.0f64; dim];
    if !diag_terms.is_empty() {
        for (idx, d) in diag.iter_mut().enumerate() {
            let digits = basis_digits(idx, num_sites);
            let mut acc = num_complex::Complex64::ZERO;
            for t in &diag_terms {
                acc += t.coeff * diagonal_phase(t, &digits);
            }
            if acc.im.abs() > 1e-12 {
                return None;
            }
            *d = acc.re;
        }
    }
    let mut perms = Vec::with_capacity(perm_terms.len());
    for t in perm_terms {
        let mut perm = vec![0u32; dim];
        for (idx, p) in perm.iter_mut().enumerate() {
            let digits = basis_digits(idx, num_sites);
            let shifted: Vec<_> = digits
                .iter()
                .zip(&t.x)
                .map(|(s, a)| crate::gf3::Trit::new((s.value() + a) % 3).unwrap())
                .collect();
            *p = basis_index(&shifted) as u32;
        }
        perms.push((t.coeff.re, perm));
    }
    Some(CompiledOp { dim, diag, perms })
}

fn diagonal_phase(t: &XzTerm, digits: &[crate::gf3::Trit]) -> num_complex::Complex64 {
    let e: u8 = t
        .z
        .iter()
        .zip(digits)
        .map(|(b, s)| (b * s.value()) % 3)
        .sum::<u8>()
        % 3;
    crate::spectra::op::omega(e)
}

impl CompiledOp {
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.dim);
        let mut out: Vec<f64> = self.diag.iter().zip(v).map(|(d, x)| d * x).collect();
        for (coeff, perm) in &self.perms {
            for (i, &p) in perm.iter().enumerate() {
                out[p as usize] += coeff * v[i];
            }
        }
        out
    }

    /// Upper bound on the operator norm: max |diag| + sum |perm coeffs|.
    pub fn norm_bound(&self) -> f64 {
        let diag_max = self.diag.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        diag_max + self.perms.iter().map(|(c, _)| c.abs()).sum::<f64>()
    }

    /// Restriction to a subset of basis indices. Errors with the leaking
    /// coefficient weight when a permutation maps the subset outside itself.
    pub fn restrict(&self, indices: &[usize]) -> Result<CompiledOp, DenseError> {
        let mut pos_of = vec![u32::MAX; self.dim];
        for (pos, &idx) in indices.iter().enumerate() {
            pos_of[idx] = pos as u32;
        }
        let diag = indices.iter().map(|&i| self.diag[i]).collect();
        let mut perms = Vec::with_capacity(self.perms.len());
        let mut leakage = 0.0f64;
        for (coeff, perm) in &self.perms {
            let mut restricted = vec![0u32; indices.len()];
            for (pos, &idx) in indices.iter().enumerate() {
                let target = pos_of[perm[idx] as usize];
                if target == u32::MAX {
                    leakage += coeff.abs();
                } else {
                    restricted[pos] = target;
                }
            }
            perms.push((*coeff, restricted));
        }
        if leakage > 0.0 {
            return Err(DenseError::SubspaceLeak(leakage));
        }
        Ok(CompiledOp {
            dim: indices.len(),
            diag,
            perms,
        })
    }
}

/// The k lowest eigenpairs of a compiled (real symmetric) operator via
/// deflated power iteration on `bound * I - H`. Deterministic per seed.
pub fn lowest_eigenpairs(
    op: &CompiledOp,
    k: usize,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<Vec<(f64, Vec<f64>)>, DenseError> {
    let bound = op.norm_bound() + 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<(f64, Vec<f64>)> = Vec::new();
    for _ in 0..k {
        let mut v: Vec<f64> = (0..op.dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        orthogonalize(&mut v, &found);
        normalize(&mut v);
        let mut lambda = f64::INFINITY;
        let mut residual = f64::INFINITY;
        for _ in 0..max_iter {
            let hv = op.apply(&v);
            lambda = v.iter().zip(&hv).map(|(a, b)| a * b).sum::<f64>();
            residual = v
                .iter()
                .zip(&hv)
                .map(|(a, b)| (b - lambda * a).powi(2))
                .sum::<f64>()
                .sqrt();
            if residual < tol {
                break;
            }
            let mut next: Vec<f64> = v
                .iter()
                .zip(&hv)
                .map(|(a, b)| bound * a - b)
                .collect();
            orthogonalize(&mut next, &found);
            normalize(&mut next);
            v = next;
        }
        if residual >= tol {
            return Err(DenseError::NoConvergence(residual));
        }
        found.push((lambda, v));
    }
    Ok(found)
}

fn orthogonalize(v: &mut [f64], basis: &[(f64, Vec<f64>)]) {
    for (_, b) in basis {
        let proj: f64 = b.iter().zip(v.iter()).map(|(p, q)| p * q).sum();
        for (x, p) in v.iter_mut().zip(b) {
            *x -= proj * p;
        }
    }
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if n > 0.0 {
        for c in v.iter_mut() {
            *c /= n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::spectra::dense::eigh;
    use crate::spectra::hamiltonians::{boundary_hamiltonian, build_hx_3x3, build_hz};

    #[test]
    fn compiled_matches_structured_application() {
        let lattice = Lattice::torus(3, 3).unwrap();
        let h = build_hz(&lattice).add(&build_hx_3x3(&lattice).unwrap());
        let compiled = compile_real(&h).unwrap();
        let mut v = vec![0.0f64; compiled.dim];
        for (i, x) in v.iter_mut().enumerate() {
            *x = ((i * 37 % 101) as f64 - 50.0) / 50.0;
        }
        let amps: Vec<num_complex::Complex64> = v
            .iter()
            .map(|&x| num_complex::Complex64::new(x, 0.0))
            .collect();
        let via_sum = h.apply(&amps).unwrap();
        let via_compiled = compiled.apply(&v);
        for (a, b) in via_sum.iter().zip(&via_compiled) {
            assert!((a.re - b).abs() < 1e-10 && a.im.abs() < 1e-12);
        }
    }

    #[test]
    fn lowest_eigenpairs_match_dense_on_small_operator() {
        let h = boundary_hamiltonian(4);
        let compiled = compile_real(&h).unwrap();
        let dense = h.to_dense().unwrap();
        let (dense_vals, _) = eigh(&dense.matrix);
        let pairs = lowest_eigenpairs(&compiled, 2, 1e-9, 50_000, 3).unwrap();
        assert!((pairs[0].0 - dense_vals[0]).abs() < 1e-7);
        assert!((pairs[1].0 - dense_vals[1]).abs() < 1e-7);
    }

    #[test]
    fn restriction_to_a_charge_sector_is_leak_free() {
        let h = boundary_hamiltonian(5);
        let compiled = compile_real(&h).unwrap();
        let sector: Vec<usize> = (0..compiled.dim)
            .filter(|&idx| {
                basis_digits(idx, 5).iter().map(|t| t.value() as u32).sum::<u32>() % 3 == 0
            })
            .collect();
        let restricted = compiled.restrict(&sector).unwrap();
        assert_eq!(restricted.dim, 81);
        // ground state of the restricted block is the uniform vector at -3n
        let pairs = lowest_eigenpairs(&restricted, 1, 1e-9, 50_000, 4).unwrap();
        assert!((pairs[0].0 + 15.0).abs() < 1e-7);
    }
}
