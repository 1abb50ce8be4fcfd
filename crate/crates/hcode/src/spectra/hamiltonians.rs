//! The parent Hamiltonian family and the boundary Hamiltonian.
//!
//! H_Z penalizes every up-triangle that violates neutrality (3 per violated
//! triangle); its ground space is spanned by the classical codeword states.
//! The mixing terms are products of X^{+-1} whose exponent pattern is itself
//! a codeword: pushing a boundary X-string through the automaton layer by
//! layer extends it holographically into the bulk, and the resulting strings
//! hop between codewords within (H_X) or across (H'_X) charge sectors.

use num_complex::Complex64;

use crate::automaton::{generate_codeword, AutomatonError};
use crate::gf3::Trit;
use crate::lattice::Lattice;
use crate::spectra::op::{OperatorSpec, OperatorSum, XzTerm};

/// H_Z = sum over up-triangles of (2 - Z_i Z_j Z_k - (Z_i Z_j Z_k)^2).
///
/// Diagonal in the classical basis with eigenvalue 3 per violated triangle.
pub fn build_hz(lattice: &Lattice) -> OperatorSum {
    let sites = lattice.num_sites();
    let mut terms = Vec::new();
    for tri in lattice.up_triangles() {
        terms.push(XzTerm::identity(sites, Complex64::new(2.0, 0.0)));
        let mut z1 = vec![Trit::ZERO; sites];
        let mut z2 = vec![Trit::ZERO; sites];
        for &s in &tri {
            z1[s] = Trit::ONE;
            z2[s] = Trit::TWO;
        }
        terms.push(XzTerm::from_z_exponents(-Complex64::ONE, &z1));
        terms.push(XzTerm::from_z_exponents(-Complex64::ONE, &z2));
    }
    OperatorSum::from_terms(sites, terms)
}

/// Classical H_Z eigenvalue of a configuration: 3 x (violated triangles).
/// Works at any lattice size since H_Z is diagonal.
pub fn hz_eigenvalue(values: &[Trit], lattice: &Lattice) -> f64 {
    let violations = lattice
        .up_triangles()
        .iter()
        .filter(|tri| {
            !values[tri[0]].add(values[tri[1]]).add(values[tri[2]]).is_zero()
        })
        .count();
    3.0 * violations as f64
}

/// The charge operator Q = Z_1 ... Z_n along boundary row 0.
pub fn charge_operator(lattice: &Lattice) -> OperatorSum {
    let sites = lattice.num_sites();
    let mut z = vec![Trit::ZERO; sites];
    for zc in z.iter_mut().take(lattice.boundary_len()) {
        *zc = Trit::ONE;
    }
    OperatorSum::from_terms(sites, vec![XzTerm::from_z_exponents(Complex64::ONE, &z)])
}

/// Extend a boundary X-exponent string holographically into the bulk: the
/// full-lattice exponent pattern is the codeword generated by the boundary
/// exponents, so the string commutes with every triangle Z_i Z_j Z_k.
pub fn holographic_x_string(
    boundary_exps: &[Trit],
    lattice: &Lattice,
) -> Result<OperatorSpec, AutomatonError> {
    let codeword = generate_codeword(boundary_exps, lattice)?;
    Ok(OperatorSpec::from_x_exponents(
        -Complex64::ONE,
        codeword.values(),
    ))
}

fn neg(exps: &[Trit]) -> Vec<Trit> {
    exps.iter().map(|t| t.neg()).collect()
}

/// Boundary shifts whose holographic extensions build H_X on the 3x3 torus:
/// (n, -n, 0), (0, n, -n) and (n, 0, -n) for n = +-1. Each string hops a
/// codeword within its charge sector.
fn hx_boundary_shifts() -> Vec<Vec<Trit>> {
    let plus: [Vec<Trit>; 3] = [
        vec![Trit::ONE, Trit::TWO, Trit::ZERO],
        vec![Trit::ZERO, Trit::ONE, Trit::TWO],
        vec![Trit::ONE, Trit::ZERO, Trit::TWO],
    ];
    let mut shifts = Vec::with_capacity(6);
    for p in &plus {
        shifts.push(p.clone());
        shifts.push(neg(p));
    }
    shifts
}

/// Boundary shifts building H'_X: (n, n, 0), (0, n, n), (n, 0, n). These
/// change the charge sector by 2n, so H'_X does not commute with Q.
fn hx_prime_boundary_shifts() -> Vec<Vec<Trit>> {
    let plus: [Vec<Trit>; 3] = [
        vec![Trit::ONE, Trit::ONE, Trit::ZERO],
        vec![Trit::ZERO, Trit::ONE, Trit::ONE],
        vec![Trit::ONE, Trit::ZERO, Trit::ONE],
    ];
    let mut shifts = Vec::with_capacity(6);
    for p in &plus {
        shifts.push(p.clone());
        shifts.push(neg(p));
    }
    shifts
}

/// H_X on the 3x3 torus: six X-strings (three shift patterns, both signs).
pub fn build_hx_3x3(lattice: &Lattice) -> Result<OperatorSum, AutomatonError> {
    let specs = hx_boundary_shifts()
        .iter()
        .map(|b| holographic_x_string(b, lattice))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OperatorSum::from_specs(lattice.num_sites(), &specs).expect("sites in range"))
}

/// H'_X on the 3x3 torus; commutes with H_Z but not with the charge Q.
pub fn build_hx_prime_3x3(lattice: &Lattice) -> Result<OperatorSum, AutomatonError> {
    let specs = hx_prime_boundary_shifts()
        .iter()
        .map(|b| holographic_x_string(b, lattice))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OperatorSum::from_specs(lattice.num_sites(), &specs).expect("sites in range"))
}

/// The general torus mixing operator on the 3^k x 3^k torus:
/// six strings with exponent n (a - b + p) at site (a, b), for n = +-1 and
/// p in {0, +-1}. Each string carries 2 x 3^{2k-1} nontrivial factors.
///
/// Symbolic only for k = 2; beyond that the strings are too large to be
/// useful and construction is refused.
pub fn build_hx_general(k: u32) -> Result<Vec<OperatorSpec>, AutomatonError> {
    if k == 0 || k > 2 {
        return Err(AutomatonError::BadFormat(format!(
            "general H_X is built for k in {{1, 2}}, got {k}"
        )));
    }
    let n_side = 3usize.pow(k);
    let lattice = Lattice::torus(n_side, n_side).expect("3^k >= 3");
    let mut specs = Vec::with_capacity(6);
    for n_sign in [1i64, -1] {
        for p in [0i64, 1, -1] {
            let mut exps = vec![Trit::ZERO; lattice.num_sites()];
            for (site, e) in exps.iter_mut().enumerate() {
                let (r, c) = lattice.coords(site);
                // rows are a = 1.., columns b = 1..; a - b = r - c
                *e = Trit::from_i64(n_sign * (r as i64 - c as i64 + p));
            }
            specs.push(OperatorSpec::from_x_exponents(-Complex64::ONE, &exps));
        }
    }
    Ok(specs)
}

/// Boundary Hamiltonian on a ring of n qutrits:
/// -sum_i (1 + X_i X_{i+1}^2 + X_i^2 X_{i+1}).
///
/// Each term symmetrizes a neighbouring pair while preserving its trit sum,
/// so the three uniform sector superpositions are the ground states.
pub fn boundary_hamiltonian(n: usize) -> OperatorSum {
    let mut terms = Vec::with_capacity(3 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        terms.push(XzTerm::identity(n, -Complex64::ONE));
        let mut a = vec![Trit::ZERO; n];
        a[i] = Trit::ONE;
        a[j] = Trit::TWO;
        terms.push(XzTerm::from_x_exponents(-Complex64::ONE, &a));
        let mut b = vec![Trit::ZERO; n];
        b[i] = Trit::TWO;
        b[j] = Trit::ONE;
        terms.push(XzTerm::from_x_exponents(-Complex64::ONE, &b));
    }
    OperatorSum::from_terms(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::boundary_from_index;
    use crate::gf3::Trit;
    use crate::spectra::dense::{basis_digits, HERMITICITY_TOL};

    fn torus3() -> Lattice {
        Lattice::torus(3, 3).unwrap()
    }

    #[test]
    fn hz_diagonal_counts_violations_exhaustively() {
        let lattice = torus3();
        let hz = build_hz(&lattice);
        // compiling proves diagonality (no permutation part); the diagonal
        // is compared against the classical violation count on all 3^9 states
        let compiled = crate::spectra::compiled::compile_real(&hz).unwrap();
        assert!(compiled.perms.is_empty());
        for (idx, &d) in compiled.diag.iter().enumerate() {
            let digits = basis_digits(idx, 9);
            let expected = hz_eigenvalue(&digits, &lattice);
            assert!((d - expected).abs() < 1e-12, "idx {idx}: {d} vs {expected}");
            assert_eq!(expected as u64 % 3, 0);
        }
        // structured application agrees on a few basis states
        let dim = compiled.dim;
        let mut amps = vec![Complex64::ZERO; dim];
        for idx in (0..dim).step_by(2311).chain((0..27).map(|b| {
            let cw = generate_codeword(&boundary_from_index(b, 3), &lattice).unwrap();
            crate::spectra::dense::basis_index(cw.values())
        })) {
            amps.iter_mut().for_each(|a| *a = Complex64::ZERO);
            amps[idx] = Complex64::ONE;
            let out = hz.apply(&amps).unwrap();
            assert!((out[idx].re - compiled.diag[idx]).abs() < 1e-12);
            assert!(out[idx].im.abs() < 1e-12);
        }
    }

    #[test]
    fn hz_vanishes_exactly_on_codewords() {
        let lattice = torus3();
        for b in 0..27 {
            let cw = generate_codeword(&boundary_from_index(b, 3), &lattice).unwrap();
            assert_eq!(hz_eigenvalue(cw.values(), &lattice), 0.0);
        }
        // on the torus a single site flip frustrates all 3 triangles it sits in
        let mut values = vec![Trit::ZERO; 9];
        values[4] = Trit::ONE;
        assert_eq!(hz_eigenvalue(&values, &lattice), 9.0);
        // a single frustrated triangle costs exactly 3 (patch: triangle sums
        // are independent there)
        let patch = Lattice::patch(3, 2).unwrap();
        let one_violation = [Trit::ONE, Trit::ZERO, Trit::ZERO, Trit::ZERO, Trit::ZERO];
        assert_eq!(hz_eigenvalue(&one_violation, &patch), 3.0);
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        let lattice = torus3();
        assert!(build_hz(&lattice).is_hermitian(HERMITICITY_TOL));
        assert!(build_hx_3x3(&lattice).unwrap().is_hermitian(HERMITICITY_TOL));
        assert!(build_hx_prime_3x3(&lattice).unwrap().is_hermitian(HERMITICITY_TOL));
        assert!(boundary_hamiltonian(5).is_hermitian(HERMITICITY_TOL));
    }

    #[test]
    fn hx_has_six_strings_of_weight_six() {
        let lattice = torus3();
        let hx = build_hx_3x3(&lattice).unwrap();
        assert_eq!(hx.terms.len(), 6);
        for t in &hx.terms {
            assert_eq!(t.x.iter().filter(|&&a| a != 0).count(), 6);
            assert!(t.z.iter().all(|&b| b == 0));
            assert!((t.coeff + Complex64::ONE).norm() < 1e-15);
        }
    }

    #[test]
    fn hx_first_string_matches_published_factor_list() {
        // X_1 X_2^{-1} X_5 X_6^{-1} X_7^{-1} X_9 in 1-based site labels.
        let lattice = torus3();
        let hx = build_hx_3x3(&lattice).unwrap();
        let expected_x: Vec<u8> = vec![1, 2, 0, 0, 1, 2, 2, 0, 1];
        assert!(
            hx.terms.iter().any(|t| t.x == expected_x),
            "published first string missing from {:?}",
            hx.terms.iter().map(|t| t.x.clone()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn hx_prime_strings_match_published_factor_lists() {
        // X_1 X_2 X_4 X_5^{-1} X_6^{-1} X_8^{-1}, X_2 X_3 X_4^{-1} X_5 X_6^{-1} X_9^{-1},
        // X_1 X_3 X_4^{-1} X_5^{-1} X_6 X_7^{-1} (1-based), and their inverses.
        let lattice = torus3();
        let hxp = build_hx_prime_3x3(&lattice).unwrap();
        let published: [[u8; 9]; 3] = [
            [1, 1, 0, 1, 2, 2, 0, 2, 0],
            [0, 1, 1, 2, 1, 2, 0, 0, 2],
            [1, 0, 1, 2, 2, 1, 2, 0, 0],
        ];
        for p in &published {
            assert!(hxp.terms.iter().any(|t| t.x == p.to_vec()), "missing {p:?}");
            let inv: Vec<u8> = p.iter().map(|&a| (3 - a) % 3).collect();
            assert!(hxp.terms.iter().any(|t| t.x == inv), "missing inverse of {p:?}");
        }
        assert_eq!(hxp.terms.len(), 6);
    }

    #[test]
    fn general_hx_has_balanced_strings() {
        for k in [1u32, 2] {
            let specs = build_hx_general(k).unwrap();
            assert_eq!(specs.len(), 6);
            let side = 3usize.pow(k);
            let expected_weight = 2 * 3usize.pow(2 * k - 1);
            let lattice = Lattice::torus(side, side).unwrap();
            for spec in &specs {
                assert_eq!(spec.weight(), expected_weight);
                // equal number of X and X^{-1} per row and per column
                let mut exps = vec![0u8; side * side];
                for f in &spec.factors {
                    exps[f.site] = f.exp.value();
                }
                for r in 0..side {
                    let ups = (0..side).filter(|&c| exps[r * side + c] == 1).count();
                    let downs = (0..side).filter(|&c| exps[r * side + c] == 2).count();
                    assert_eq!(ups, downs, "row {r} unbalanced");
                }
                for c in 0..side {
                    let ups = (0..side).filter(|&r| exps[r * side + c] == 1).count();
                    let downs = (0..side).filter(|&r| exps[r * side + c] == 2).count();
                    assert_eq!(ups, downs, "column {c} unbalanced");
                }
                // exponent pattern is a codeword: neutral on every triangle
                for tri in lattice.up_triangles() {
                    let sum: u8 = tri.iter().map(|&s| exps[s]).sum::<u8>() % 3;
                    assert_eq!(sum, 0);
                }
            }
        }
        assert!(build_hx_general(3).is_err());
    }

    #[test]
    fn general_hx_at_k1_equals_the_3x3_operator() {
        let lattice = torus3();
        let direct = build_hx_3x3(&lattice).unwrap();
        let general = OperatorSum::from_specs(9, &build_hx_general(1).unwrap()).unwrap();
        let diff = direct.add(&general.scale(-Complex64::ONE));
        assert!(diff.terms.is_empty(), "operators differ: {:?}", diff.terms.len());
    }

    #[test]
    fn boundary_hamiltonian_has_threefold_ground_space_for_n_3_to_9() {
        use crate::spectra::compiled::{compile_real, lowest_eigenpairs};
        use crate::spectra::dense::{basis_digits, eigh};

        // dense diagonalization up to n = 6
        for n in 3..=6usize {
            let h = boundary_hamiltonian(n);
            let dense = h.to_dense().unwrap();
            let (values, _) = eigh(&dense.matrix);
            let ground = -3.0 * n as f64;
            let degeneracy = values.iter().take_while(|&&v| v - ground < 1e-9).count();
            assert_eq!(degeneracy, 3, "n = {n}: {:?}", &values[..4]);
            assert!(values[3] - ground > 1e-6, "n = {n}");
        }
        // sector-block iteration for n = 7..9
        for n in 7..=9usize {
            let h = boundary_hamiltonian(n);
            let compiled = compile_real(&h).unwrap();
            let ground = -3.0 * n as f64;
            for s in 0..3u32 {
                let indices: Vec<usize> = (0..compiled.dim)
                    .filter(|&idx| {
                        basis_digits(idx, n).iter().map(|t| t.value() as u32).sum::<u32>() % 3
                            == s
                    })
                    .collect();
                let block = compiled.restrict(&indices).unwrap();
                let pairs = lowest_eigenpairs(&block, 2, 1e-8, 200_000, 11).unwrap();
                assert!((pairs[0].0 - ground).abs() < 1e-6, "n = {n}, sector {s}");
                assert!(pairs[1].0 - ground > 1e-6, "unique per sector, n = {n}");
                // Perron-Frobenius signature: the sector ground state is the
                // uniform-positive vector
                let expected = 1.0 / (indices.len() as f64).sqrt();
                let uniform = pairs[0]
                    .1
                    .iter()
                    .all(|&a| (a.abs() - expected).abs() < 1e-6);
                assert!(uniform, "n = {n}, sector {s}");
            }
        }
    }

    #[test]
    fn boundary_hamiltonian_preserves_pair_sums() {
        let h = boundary_hamiltonian(3);
        // every X-string has exponents summing to 0 mod 3
        for t in &h.terms {
            let sum: u8 = t.x.iter().sum::<u8>() % 3;
            assert_eq!(sum, 0);
        }
        assert_eq!(h.terms.len(), 1 + 6); // merged constant + 6 hop strings
    }
}
