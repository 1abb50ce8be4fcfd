//! Symbolic products of single-site X^a Z^b factors and sums thereof.
//!
//! X raises a trit (X|s> = |s+1>), Z applies the phase q^s with
//! q = exp(2 pi i / 3), so ZX = q XZ. A term c * prod_i X_i^{a_i} Z_i^{b_i}
//! acts on a classical basis state as |s> -> c q^{b.s} |s + a>, which keeps
//! every Hamiltonian in scope exactly representable by a handful of terms
//! even when the full Hilbert space is far too large for dense matrices.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::gf3::Trit;
use crate::spectra::dense::{basis_digits, basis_index, pow3, DenseOperator, MAX_DENSE_DIM};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("operator acts on {0} sites, state has {1}")]
    SiteMismatch(usize, usize),
    #[error("dense form of dimension {0} exceeds the cap of {MAX_DENSE_DIM}")]
    DenseTooLarge(usize),
    #[error("operator maps the restricted basis outside itself; leakage norm {0:.3e}")]
    SubspaceLeak(f64),
    #[error("factor site {site} out of range for {sites} sites")]
    FactorOutOfRange { site: usize, sites: usize },
}

/// q = exp(2 pi i / 3), with q^k delivered from a fixed table so equal
/// exponents always produce bitwise-identical values.
pub fn omega(k: u8) -> Complex64 {
    const Q: [Complex64; 3] = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-0.5, 0.866_025_403_784_438_6),
        Complex64::new(-0.5, -0.866_025_403_784_438_7),
    ];
    Q[(k % 3) as usize]
}

/// Which single-site generator a factor uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    X,
    Z,
}

/// One normalized factor of an operator product: exponent is 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub site: usize,
    pub axis: Axis,
    pub exp: Trit,
}

/// A scalar multiple of a product of X/Z factors, in the written order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorSpec {
    pub coeff: (f64, f64),
    pub factors: Vec<Factor>,
}

impl OperatorSpec {
    /// Product of X factors with the given per-site exponents (zeros skipped).
    pub fn from_x_exponents(coeff: Complex64, exps: &[Trit]) -> OperatorSpec {
        OperatorSpec {
            coeff: (coeff.re, coeff.im),
            factors: exps
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(site, &exp)| Factor {
                    site,
                    axis: Axis::X,
                    exp,
                })
                .collect(),
        }
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.factors.len()
    }

    /// Compile into exponent-vector form, folding ordering phases.
    pub fn to_term(&self, num_sites: usize) -> Result<XzTerm, OperatorError> {
        let mut term = XzTerm::identity(num_sites, Complex64::new(self.coeff.0, self.coeff.1));
        for f in &self.factors {
            if f.site >= num_sites {
                return Err(OperatorError::FactorOutOfRange {
                    site: f.site,
                    sites: num_sites,
                });
            }
            let mut x = vec![0u8; num_sites];
            let mut z = vec![0u8; num_sites];
            match f.axis {
                Axis::X => x[f.site] = f.exp.value(),
                Axis::Z => z[f.site] = f.exp.value(),
            }
            let factor_term = XzTerm {
                coeff: Complex64::ONE,
                x,
                z,
            };
            term = term.mul(&factor_term);
        }
        Ok(term)
    }
}

/// A term in canonical X-left form: coeff * prod_i X_i^{x_i} Z_i^{z_i}.
#[derive(Debug, Clone, PartialEq)]
pub struct XzTerm {
    pub coeff: Complex64,
    pub x: Vec<u8>,
    pub z: Vec<u8>,
}

impl XzTerm {
    pub fn identity(num_sites: usize, coeff: Complex64) -> XzTerm {
        XzTerm {
            coeff,
            x: vec![0; num_sites],
            z: vec![0; num_sites],
        }
    }

    pub fn from_x_exponents(coeff: Complex64, exps: &[Trit]) -> XzTerm {
        XzTerm {
            coeff,
            x: exps.iter().map(|t| t.value()).collect(),
            z: vec![0; exps.len()],
        }
    }

    pub fn from_z_exponents(coeff: Complex64, exps: &[Trit]) -> XzTerm {
        XzTerm {
            coeff,
            x: vec![0; exps.len()],
            z: exps.iter().map(|t| t.value()).collect(),
        }
    }

    /// Product: (c1, a1, b1)(c2, a2, b2) = (c1 c2 q^{b1.a2}, a1+a2, b1+b2).
    pub fn mul(&self, rhs: &XzTerm) -> XzTerm {
        debug_assert_eq!(self.x.len(), rhs.x.len());
        let cross: u8 = self
            .z
            .iter()
            .zip(&rhs.x)
            .map(|(b, a)| (b * a) % 3)
            .sum::<u8>()
            % 3;
        XzTerm {
            coeff: self.coeff * rhs.coeff * omega(cross),
            x: self.x.iter().zip(&rhs.x).map(|(a, b)| (a + b) % 3).collect(),
            z: self.z.iter().zip(&rhs.z).map(|(a, b)| (a + b) % 3).collect(),
        }
    }

    /// Adjoint: (conj(c) q^{a.b}, -a, -b).
    pub fn dagger(&self) -> XzTerm {
        let cross: u8 = self
            .x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a * b) % 3)
            .sum::<u8>()
            % 3;
        XzTerm {
            coeff: self.coeff.conj() * omega(cross),
            x: self.x.iter().map(|a| (3 - a) % 3).collect(),
            z: self.z.iter().map(|b| (3 - b) % 3).collect(),
        }
    }

    fn phase_on(&self, digits: &[Trit]) -> Complex64 {
        let e: u8 = self
            .z
            .iter()
            .zip(digits)
            .map(|(b, s)| (b * s.value()) % 3)
            .sum::<u8>()
            % 3;
        omega(e)
    }

    fn shifted_digits(&self, digits: &[Trit]) -> Vec<Trit> {
        digits
            .iter()
            .zip(&self.x)
            .map(|(s, a)| Trit::new((s.value() + a) % 3).unwrap())
            .collect()
    }
}

/// A sum of terms acting on a fixed number of qutrits.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSum {
    pub num_sites: usize,
    pub terms: Vec<XzTerm>,
}

impl OperatorSum {
    pub fn zero(num_sites: usize) -> OperatorSum {
        OperatorSum {
            num_sites,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(num_sites: usize, terms: Vec<XzTerm>) -> OperatorSum {
        OperatorSum { num_sites, terms }.merged()
    }

    pub fn from_specs(num_sites: usize, specs: &[OperatorSpec]) -> Result<OperatorSum, OperatorError> {
        let terms = specs
            .iter()
            .map(|s| s.to_term(num_sites))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OperatorSum { num_sites, terms }.merged())
    }

    pub fn dim(&self) -> usize {
        pow3(self.num_sites)
    }

    /// Combine terms with identical exponent vectors; drop vanished ones.
    pub fn merged(&self) -> OperatorSum {
        let mut map: HashMap<(Vec<u8>, Vec<u8>), Complex64> = HashMap::new();
        for t in &self.terms {
            *map.entry((t.x.clone(), t.z.clone())).or_insert(Complex64::ZERO) += t.coeff;
        }
        let mut terms: Vec<XzTerm> = map
            .into_iter()
            .filter(|(_, c)| c.norm() > 1e-13)
            .map(|((x, z), coeff)| XzTerm { coeff, x, z })
            .collect();
        terms.sort_by(|a, b| (&a.x, &a.z).cmp(&(&b.x, &b.z)));
        OperatorSum {
            num_sites: self.num_sites,
            terms,
        }
    }

    pub fn add(&self, rhs: &OperatorSum) -> OperatorSum {
        debug_assert_eq!(self.num_sites, rhs.num_sites);
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        OperatorSum {
            num_sites: self.num_sites,
            terms,
        }
        .merged()
    }

    pub fn scale(&self, factor: Complex64) -> OperatorSum {
        OperatorSum {
            num_sites: self.num_sites,
            terms: self
                .terms
                .iter()
                .map(|t| XzTerm {
                    coeff: t.coeff * factor,
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn compose(&self, rhs: &OperatorSum) -> OperatorSum {
        debug_assert_eq!(self.num_sites, rhs.num_sites);
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.push(a.mul(b));
            }
        }
        OperatorSum {
            num_sites: self.num_sites,
            terms,
        }
        .merged()
    }

    pub fn dagger(&self) -> OperatorSum {
        OperatorSum {
            num_sites: self.num_sites,
            terms: self.terms.iter().map(XzTerm::dagger).collect(),
        }
        .merged()
    }

    /// [self, rhs] = self rhs - rhs self, term-merged (exact cancellations
    /// leave no terms at all).
    pub fn commutator(&self, rhs: &OperatorSum) -> OperatorSum {
        self.compose(rhs).add(&rhs.compose(self).scale(-Complex64::ONE))
    }

    /// Exact max-norm over matrix entries: entries are sums of q-phases of
    /// terms sharing an X shift, evaluated on every basis state.
    pub fn max_entry_norm(&self) -> f64 {
        let merged = self.merged();
        if merged.terms.is_empty() {
            return 0.0;
        }
        let mut groups: HashMap<&[u8], Vec<&XzTerm>> = HashMap::new();
        for t in &merged.terms {
            groups.entry(&t.x).or_default().push(t);
        }
        let dim = self.dim();
        let mut max = 0.0f64;
        for idx in 0..dim {
            let digits = basis_digits(idx, self.num_sites);
            for terms in groups.values() {
                let entry: Complex64 = terms.iter().map(|t| t.coeff * t.phase_on(&digits)).sum();
                max = max.max(entry.norm());
            }
        }
        max
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.add(&self.dagger().scale(-Complex64::ONE)).max_entry_norm() < tol
    }

    /// Sum of |coeff|: an upper bound on the operator norm.
    pub fn norm_bound(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm()).sum()
    }

    /// Apply to a full-register amplitude vector.
    pub fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>, OperatorError> {
        if amps.len() != self.dim() {
            return Err(OperatorError::SiteMismatch(self.dim(), amps.len()));
        }
        let weights: Vec<usize> = (0..self.num_sites)
            .map(|i| pow3(self.num_sites - 1 - i))
            .collect();
        let mut out = vec![Complex64::ZERO; amps.len()];
        for (idx, &amp) in amps.iter().enumerate() {
            if amp == Complex64::ZERO {
                continue;
            }
            let digits = basis_digits(idx, self.num_sites);
            for t in &self.terms {
                let mut target = idx;
                for (i, (&a, s)) in t.x.iter().zip(&digits).enumerate() {
                    if a != 0 {
                        let new = (s.value() + a) % 3;
                        target = target + (new as usize) * weights[i] - (s.value() as usize) * weights[i];
                    }
                }
                out[target] += t.coeff * t.phase_on(&digits) * amp;
            }
        }
        Ok(out)
    }

    /// Dense matrix form; only for comfortably small registers.
    pub fn to_dense(&self) -> Result<DenseOperator, OperatorError> {
        let dim = self.dim();
        if dim > MAX_DENSE_DIM {
            return Err(OperatorError::DenseTooLarge(dim));
        }
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for idx in 0..dim {
            let digits = basis_digits(idx, self.num_sites);
            for t in &self.terms {
                let target = basis_index(&t.shifted_digits(&digits));
                m[(target, idx)] += t.coeff * t.phase_on(&digits);
            }
        }
        Ok(DenseOperator::new(m).expect("dim checked above"))
    }

    /// Matrix of the operator restricted to a list of classical basis
    /// states. Errors when any term maps a basis state outside the list.
    pub fn restrict_to_classical(
        &self,
        states: &[Vec<Trit>],
    ) -> Result<DMatrix<Complex64>, OperatorError> {
        let index_of: HashMap<usize, usize> = states
            .iter()
            .enumerate()
            .map(|(pos, s)| (basis_index(s), pos))
            .collect();
        let mut m = DMatrix::<Complex64>::zeros(states.len(), states.len());
        let mut leakage = 0.0f64;
        for (col, s) in states.iter().enumerate() {
            for t in &self.terms {
                let target = basis_index(&t.shifted_digits(s));
                match index_of.get(&target) {
                    Some(&row) => m[(row, col)] += t.coeff * t.phase_on(s),
                    None => leakage += (t.coeff * t.phase_on(s)).norm(),
                }
            }
        }
        if leakage > 1e-13 {
            return Err(OperatorError::SubspaceLeak(leakage));
        }
        Ok(m)
    }
}
