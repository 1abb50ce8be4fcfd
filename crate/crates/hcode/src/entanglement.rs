//! Entanglement entropies of the uniform codeword superposition.
//!
//! For a linear code the reduced state of a region A is maximally mixed on
//! a coset structure, so the von Neumann entropy in base-3 units is the
//! exact integer
//!
//!   S_A = k - dim C_A - dim C_Abar
//!
//! where k is the code dimension and C_X is the subcode supported inside X.
//! Equivalently S_A = rank(G_A) + rank(G_Abar) - k for the generator G
//! restricted to the region's columns. A brute-force density-matrix oracle
//! built directly from the codeword list enforces the formula rather than
//! assuming it.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::automaton::{boundary_from_index, AutomatonError, HCode};
use crate::gf3::Gf3Matrix;
use crate::lattice::{Lattice, LatticeError, Region};
use crate::spectra::dense::eigh;

/// Brute-force tolerance: the oracle diagonalizes numerically, the rank
/// method is exact, and they must agree to this accuracy.
pub const ORACLE_TOL: f64 = 1e-9;

/// Caps on the two oracle routes (Gram-matrix and dense reduced-density).
const ORACLE_DIM_CAP: usize = 729;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntanglementError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("regions must be pairwise disjoint")]
    OverlappingRegions,
    #[error("brute-force oracle guard: {groups} complement patterns and 3^{region_size} region configurations both exceed {ORACLE_DIM_CAP}")]
    OracleGuard { groups: usize, region_size: usize },
    #[error("boundary of {0} trits is too large for codeword enumeration in the oracle")]
    BoundaryTooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EntropyMethod {
    RankBased,
    BruteForce,
}

/// An entropy value in base-3 units for one region.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyResult {
    pub region_sites: Vec<usize>,
    pub entropy: f64,
    pub method: EntropyMethod,
    /// Empty regions get entropy 0 by convention and are flagged.
    pub empty_region: bool,
}

/// Exact region entropy by subcode ranks, in base-3 units.
pub fn rank_entropy(code: &HCode, region: &Region) -> Result<u32, EntanglementError> {
    region.validate(code.lattice())?;
    let g = code.generator();
    rank_entropy_of_generator(g, region, code.lattice())
}

fn rank_entropy_of_generator(
    g: &Gf3Matrix,
    region: &Region,
    lattice: &Lattice,
) -> Result<u32, EntanglementError> {
    let complement = region.complement(lattice);
    let k = g.rank();
    let rank_a = g.select_columns(&region.site_vec()).rank();
    let rank_b = g.select_columns(&complement.site_vec()).rank();
    // dim C_A = k - rank_b, dim C_Abar = k - rank_a
    Ok((rank_a + rank_b - k) as u32)
}

/// Region entropy of the sector-projected state: the boundary is restricted
/// to a fixed charge sector, which removes one generator of the code. The
/// resulting entropy is sector-independent.
pub fn sector_rank_entropy(code: &HCode, region: &Region) -> Result<u32, EntanglementError> {
    region.validate(code.lattice())?;
    let g = code.generator();
    let n = g.rows();
    // basis of boundary vectors with zero charge: e_i - e_{n-1}
    let mut sub = Gf3Matrix::zeros(n - 1, g.cols());
    for i in 0..n - 1 {
        for c in 0..g.cols() {
            let v = g.get(i, c).sub(g.get(n - 1, c));
            sub.set(i, c, v);
        }
    }
    rank_entropy_of_generator(&sub, region, code.lattice())
}

/// Rank-based entropy wrapped in a result record.
pub fn entropy(code: &HCode, region: &Region) -> Result<EntropyResult, EntanglementError> {
    let value = rank_entropy(code, region)?;
    Ok(EntropyResult {
        region_sites: region.site_vec(),
        entropy: value as f64,
        method: EntropyMethod::RankBased,
        empty_region: region.is_empty(),
    })
}

/// Brute-force von Neumann entropy of the uniform codeword superposition.
///
/// Builds the reduced state directly from the 3^n codeword list and
/// diagonalizes: either the Gram matrix of complement-grouped region
/// vectors, or the dense reduced density matrix, whichever is small enough.
pub fn brute_force_entropy(code: &HCode, region: &Region) -> Result<f64, EntanglementError> {
    region.validate(code.lattice())?;
    let n = code.code_dimension();
    if n > 12 {
        return Err(EntanglementError::BoundaryTooLarge(n));
    }
    let lattice = code.lattice();
    let region_sites = region.site_vec();
    let complement_sites = region.complement(lattice).site_vec();
    let total = 3u64.pow(n as u32);

    // Group codewords by their complement pattern; record the region
    // pattern of each member as a mixed-radix index.
    let mut groups: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for idx in 0..total {
        let cw = code.codeword(&boundary_from_index(idx, n))?;
        let values = cw.values();
        let key: Vec<u8> = complement_sites.iter().map(|&s| values[s].value()).collect();
        let a_index = region_sites
            .iter()
            .fold(0usize, |acc, &s| acc * 3 + values[s].value() as usize);
        groups.entry(key).or_default().push(a_index);
    }

    let num_groups = groups.len();
    let region_dim = 3usize.checked_pow(region_sites.len().min(20) as u32).unwrap_or(usize::MAX);
    let eigenvalues: Vec<f64> = if num_groups <= ORACLE_DIM_CAP {
        // Gram route: nonzero spectrum of rho_A equals the spectrum of the
        // Gram matrix of the grouped region vectors, divided by 3^n.
        let mut keys: Vec<&Vec<u8>> = groups.keys().collect();
        keys.sort();
        let members: Vec<&Vec<usize>> = keys.iter().map(|k| &groups[*k]).collect();
        let mut gram = DMatrix::<Complex64>::zeros(num_groups, num_groups);
        for (i, gi) in members.iter().enumerate() {
            for (j, gj) in members.iter().enumerate().take(i + 1) {
                let mut common = 0usize;
                for a in gi.iter() {
                    if gj.contains(a) {
                        common += 1;
                    }
                }
                let v = Complex64::new(common as f64 / total as f64, 0.0);
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        eigh(&gram).0
    } else if region_dim <= ORACLE_DIM_CAP {
        // Dense route: accumulate rho_A from within-group outer products.
        let mut rho = DMatrix::<Complex64>::zeros(region_dim, region_dim);
        for members in groups.values() {
            for &a in members {
                for &b in members {
                    rho[(a, b)] += Complex64::new(1.0 / total as f64, 0.0);
                }
            }
        }
        eigh(&rho).0
    } else {
        return Err(EntanglementError::OracleGuard {
            groups: num_groups,
            region_size: region_sites.len(),
        });
    };

    let ln3 = 3f64.ln();
    let mut s = 0.0;
    for &lambda in &eigenvalues {
        if lambda > 1e-14 {
            s -= lambda * lambda.ln() / ln3;
        }
    }
    Ok(s)
}

/// The Kitaev-Preskill combination
/// S_ABC - S_AB - S_AC - S_BC + S_A + S_B + S_C, exact in base-3 units.
pub fn topological_entropy(
    code: &HCode,
    a: &Region,
    b: &Region,
    c: &Region,
) -> Result<i64, EntanglementError> {
    if !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c) {
        return Err(EntanglementError::OverlappingRegions);
    }
    let s = |r: &Region| -> Result<i64, EntanglementError> { Ok(rank_entropy(code, r)? as i64) };
    let ab = a.union(b);
    let ac = a.union(c);
    let bc = b.union(c);
    let abc = ab.union(c);
    Ok(s(&abc)? - s(&ab)? - s(&ac)? - s(&bc)? + s(a)? + s(b)? + s(c)?)
}

/// Summary of an area-law sweep: no region may exceed the boundary length.
#[derive(Debug, Clone, Serialize)]
pub struct AreaLawReport {
    pub bound: u32,
    pub max_entropy: u32,
    pub regions_checked: usize,
    pub all_within_bound: bool,
    pub exhaustive: bool,
}

/// Verify entropy(region) <= n. Exhaustive over all 2^sites regions for
/// lattices of at most 12 sites, otherwise over sampled regions.
pub fn area_law_check(
    code: &HCode,
    samples: usize,
    seed: u64,
) -> Result<AreaLawReport, EntanglementError> {
    use rand::{Rng, SeedableRng};
    let lattice = code.lattice();
    let sites = lattice.num_sites();
    let bound = code.code_dimension() as u32;
    let mut max_entropy = 0;
    let mut checked = 0usize;
    let exhaustive = sites <= 12;
    if exhaustive {
        for mask in 0u64..(1u64 << sites) {
            let region = Region::new((0..sites).filter(|s| mask >> s & 1 == 1));
            max_entropy = max_entropy.max(rank_entropy(code, &region)?);
            checked += 1;
        }
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let size = rng.gen_range(0..=sites);
            let mut picked: Vec<usize> = (0..sites).collect();
            for i in 0..size {
                let j = rng.gen_range(i..sites);
                picked.swap(i, j);
            }
            let region = Region::new(picked[..size].iter().copied());
            max_entropy = max_entropy.max(rank_entropy(code, &region)?);
            checked += 1;
        }
        // the half torus, where the bound binds
        let region = Region::new(0..sites / 2);
        max_entropy = max_entropy.max(rank_entropy(code, &region)?);
        checked += 1;
    }
    Ok(AreaLawReport {
        bound,
        max_entropy,
        regions_checked: checked,
        all_within_bound: max_entropy <= bound,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code3() -> HCode {
        HCode::new(Lattice::torus(3, 3).unwrap()).unwrap()
    }

    fn code9() -> HCode {
        HCode::new(Lattice::torus(9, 9).unwrap()).unwrap()
    }

    #[test]
    fn single_site_entropy_is_one() {
        let code = code3();
        for s in 0..9 {
            assert_eq!(rank_entropy(&code, &Region::new([s])).unwrap(), 1);
        }
        let code = code9();
        assert_eq!(rank_entropy(&code, &Region::new([40])).unwrap(), 1);
    }

    #[test]
    fn up_triangle_entropy_is_two() {
        for code in [code3(), code9()] {
            for tri in code.lattice().up_triangles() {
                let region = Region::new(tri);
                assert_eq!(rank_entropy(&code, &region).unwrap(), 2);
            }
        }
    }

    #[test]
    fn full_lattice_and_empty_region_have_zero_entropy() {
        let code = code3();
        let full = Region::new(0..9);
        assert_eq!(rank_entropy(&code, &full).unwrap(), 0);
        let empty = entropy(&code, &Region::empty()).unwrap();
        assert_eq!(empty.entropy, 0.0);
        assert!(empty.empty_region);
    }

    #[test]
    fn small_regions_are_maximally_mixed_on_3x3() {
        let code = code3();
        for mask in 0u64..(1 << 9) {
            let region = Region::new((0..9).filter(|s| mask >> s & 1 == 1));
            if region.len() < 3 {
                assert_eq!(
                    rank_entropy(&code, &region).unwrap() as usize,
                    region.len(),
                    "region {:?}",
                    region.site_vec()
                );
            }
        }
    }

    #[test]
    fn single_row_regions_are_maximally_mixed_on_9x9() {
        let code = code9();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let row = rng.gen_range(0..9);
            let size = rng.gen_range(1..9usize);
            let mut cols: Vec<usize> = (0..9).collect();
            for i in 0..size {
                let j = rng.gen_range(i..9);
                cols.swap(i, j);
            }
            let region = Region::new(cols[..size].iter().map(|&c| row * 9 + c));
            assert_eq!(rank_entropy(&code, &region).unwrap() as usize, size);
        }
    }

    #[test]
    fn complement_symmetry() {
        let code = code9();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..50 {
            let size = rng.gen_range(0..=81);
            let mut sites: Vec<usize> = (0..81).collect();
            for i in 0..size {
                let j = rng.gen_range(i..81);
                sites.swap(i, j);
            }
            let region = Region::new(sites[..size].iter().copied());
            let complement = region.complement(code.lattice());
            assert_eq!(
                rank_entropy(&code, &region).unwrap(),
                rank_entropy(&code, &complement).unwrap()
            );
        }
    }

    #[test]
    fn oracle_matches_rank_method_on_3x3_sample() {
        let code = code3();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let mask: u64 = rng.gen_range(0..(1 << 9));
            let region = Region::new((0..9).filter(|s| mask >> s & 1 == 1));
            let exact = rank_entropy(&code, &region).unwrap() as f64;
            let oracle = brute_force_entropy(&code, &region).unwrap();
            assert!(
                (exact - oracle).abs() < ORACLE_TOL,
                "region {:?}: rank {exact}, oracle {oracle}",
                region.site_vec()
            );
        }
    }

    #[test]
    fn oracle_single_site_value() {
        let code = code3();
        let value = brute_force_entropy(&code, &Region::new([4])).unwrap();
        assert!((value - 1.0).abs() < ORACLE_TOL);
    }

    #[test]
    fn oracle_spot_checks_on_9x9() {
        let code = code9();
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..10 {
            let size = rng.gen_range(1..=4usize);
            let mut sites: Vec<usize> = (0..81).collect();
            for i in 0..size {
                let j = rng.gen_range(i..81);
                sites.swap(i, j);
            }
            let region = Region::new(sites[..size].iter().copied());
            let exact = rank_entropy(&code, &region).unwrap() as f64;
            let oracle = brute_force_entropy(&code, &region).unwrap();
            assert!((exact - oracle).abs() < ORACLE_TOL);
        }
    }

    #[test]
    fn topological_entropy_of_triangle_is_minus_one() {
        for code in [code3(), code9()] {
            let tri = code.lattice().up_triangles()[0];
            let value = topological_entropy(
                &code,
                &Region::new([tri[0]]),
                &Region::new([tri[1]]),
                &Region::new([tri[2]]),
            )
            .unwrap();
            assert_eq!(value, -1);
        }
    }

    #[test]
    fn overlapping_regions_are_rejected() {
        let code = code3();
        let err = topological_entropy(
            &code,
            &Region::new([0, 1]),
            &Region::new([1, 2]),
            &Region::new([5]),
        )
        .unwrap_err();
        assert_eq!(err, EntanglementError::OverlappingRegions);
    }

    #[test]
    fn area_law_exhaustive_on_3x3() {
        let code = code3();
        let report = area_law_check(&code, 0, 0).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.regions_checked, 512);
        assert!(report.all_within_bound);
        assert_eq!(report.max_entropy, 3);
    }

    #[test]
    fn area_law_sampled_on_9x9() {
        let code = code9();
        let report = area_law_check(&code, 40, 7).unwrap();
        assert!(!report.exhaustive);
        assert!(report.all_within_bound);
        assert_eq!(report.bound, 9);
        assert_eq!(report.max_entropy, 9); // half torus reaches the bound
    }

    #[test]
    fn strong_subadditivity_spot_checks() {
        let code = code9();
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..30 {
            let mut sites: Vec<usize> = (0..81).collect();
            for i in 0..12 {
                let j = rng.gen_range(i..81);
                sites.swap(i, j);
            }
            let a = Region::new(sites[0..4].iter().copied());
            let b = Region::new(sites[4..8].iter().copied());
            let c = Region::new(sites[8..12].iter().copied());
            let s_ab = rank_entropy(&code, &a.union(&b)).unwrap() as i64;
            let s_bc = rank_entropy(&code, &b.union(&c)).unwrap() as i64;
            let s_b = rank_entropy(&code, &b).unwrap() as i64;
            let s_abc = rank_entropy(&code, &a.union(&b).union(&c)).unwrap() as i64;
            assert!(s_ab + s_bc >= s_b + s_abc, "SSA violated");
        }
    }

    #[test]
    fn sector_entropy_matches_plain_entropy_on_small_regions() {
        let code = code3();
        for s in 0..9 {
            assert_eq!(sector_rank_entropy(&code, &Region::new([s])).unwrap(), 1);
        }
        let tri = code.lattice().up_triangles()[0];
        assert_eq!(sector_rank_entropy(&code, &Region::new(tri)).unwrap(), 2);
    }
}
