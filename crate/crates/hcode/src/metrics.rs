//! Code-theoretic measurements: Hamming weight and distance, charge along
//! cycles, and the three-way sector census.
//!
//! The code is linear, so the minimum distance equals the minimum weight
//! over nonzero codewords and a 3^n sweep replaces the 3^{2n} pair sweep.
//! Charge is kept as the exact integer sector label S (the phase form is
//! exp(2 pi i S / 3)); the label is the invariant content on tori whose
//! cycle length is divisible by 3.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::automaton::{boundary_from_index, generate_codeword, AutomatonError, SpinConfig};
use crate::gf3::Trit;
use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("configurations live on different lattices")]
    LatticeMismatch,
    #[error("boundary of {n} trits exceeds the exhaustive-enumeration guard of {max}; use the sampled upper bound instead")]
    EnumerationGuard { n: usize, max: usize },
    #[error("cycle site {0} out of lattice range")]
    CycleOutOfRange(usize),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Largest boundary for which the 3^n weight sweep is attempted.
pub const ENUMERATION_GUARD: usize = 16;

/// The charge sector label S in {0, 1, 2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ChargeSector(Trit);

impl ChargeSector {
    pub fn new(label: Trit) -> ChargeSector {
        ChargeSector(label)
    }

    pub fn label(&self) -> Trit {
        self.0
    }

    pub fn all() -> [ChargeSector; 3] {
        [
            ChargeSector(Trit::ZERO),
            ChargeSector(Trit::ONE),
            ChargeSector(Trit::TWO),
        ]
    }
}

/// Number of sites at which two configurations differ.
pub fn hamming_distance(a: &SpinConfig, b: &SpinConfig) -> Result<usize, MetricsError> {
    if a.lattice() != b.lattice() {
        return Err(MetricsError::LatticeMismatch);
    }
    Ok(a.values()
        .iter()
        .zip(b.values())
        .filter(|(x, y)| x != y)
        .count())
}

/// Exhaustive minimum Hamming distance: the minimum weight over all 3^n - 1
/// nonzero codewords, justified by linearity of the boundary-to-bulk map.
pub fn min_distance(lattice: &Lattice) -> Result<usize, MetricsError> {
    let n = lattice.boundary_len();
    if n > ENUMERATION_GUARD {
        return Err(MetricsError::EnumerationGuard {
            n,
            max: ENUMERATION_GUARD,
        });
    }
    // validate admissibility once, then sweep
    generate_codeword(&vec![Trit::ZERO; n], lattice)?;
    let total = 3u64.pow(n as u32);
    let min = (1..total)
        .into_par_iter()
        .map(|idx| {
            let cw = generate_codeword(&boundary_from_index(idx, n), lattice)
                .expect("closure already validated");
            cw.weight()
        })
        .min()
        .expect("at least one nonzero codeword");
    Ok(min)
}

/// A sampled (non-exhaustive) upper bound on the minimum distance.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceBound {
    pub upper_bound: usize,
    pub samples: u64,
    /// Always false: this is an upper bound, not the exact distance.
    pub exhaustive: bool,
}

/// Upper-bound the minimum distance from `samples` random nonzero boundaries
/// plus every unit boundary (the light-cone codewords, which realize the
/// minimum on the square tori in scope).
pub fn sampled_distance_upper_bound(
    lattice: &Lattice,
    samples: u64,
    seed: u64,
) -> Result<DistanceBound, MetricsError> {
    let n = lattice.boundary_len();
    generate_codeword(&vec![Trit::ZERO; n], lattice)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = usize::MAX;
    for i in 0..n {
        let mut b = vec![Trit::ZERO; n];
        b[i] = Trit::ONE;
        best = best.min(generate_codeword(&b, lattice)?.weight());
    }
    for _ in 0..samples {
        let b: Vec<Trit> = (0..n)
            .map(|_| Trit::new(rng.gen_range(0..3)).unwrap())
            .collect();
        if b.iter().all(|t| t.is_zero()) {
            continue;
        }
        best = best.min(generate_codeword(&b, lattice)?.weight());
    }
    Ok(DistanceBound {
        upper_bound: best,
        samples,
        exhaustive: false,
    })
}

/// Sum of the trits along a cycle, as a sector label.
pub fn cycle_charge(config: &SpinConfig, cycle: &[usize]) -> Result<ChargeSector, MetricsError> {
    let sites = config.lattice().num_sites();
    let mut sum = Trit::ZERO;
    for &s in cycle {
        if s >= sites {
            return Err(MetricsError::CycleOutOfRange(s));
        }
        sum = sum.add(config.value(s));
    }
    Ok(ChargeSector(sum))
}

/// The common charge of a torus codeword across all row and diagonal
/// cycles, or `None` if any cycle disagrees. With `include_anti_diagonals`
/// the second diagonal family is required to agree as well.
pub fn constant_charge(
    config: &SpinConfig,
    include_anti_diagonals: bool,
) -> Result<Option<ChargeSector>, MetricsError> {
    let (rows, diagonals) = config
        .lattice()
        .cycles()
        .map_err(AutomatonError::Lattice)?;
    let mut cycles: Vec<Vec<usize>> = rows;
    cycles.extend(diagonals);
    if include_anti_diagonals {
        cycles.extend(
            config
                .lattice()
                .anti_diagonals()
                .map_err(AutomatonError::Lattice)?,
        );
    }
    let first = cycle_charge(config, &cycles[0])?;
    for cycle in &cycles[1..] {
        if cycle_charge(config, cycle)? != first {
            return Ok(None);
        }
    }
    Ok(Some(first))
}

/// Count boundary configurations per sector; each sector holds 3^{n-1}.
pub fn sector_census(lattice: &Lattice) -> Result<[u64; 3], MetricsError> {
    let n = lattice.boundary_len();
    if n > ENUMERATION_GUARD {
        return Err(MetricsError::EnumerationGuard {
            n,
            max: ENUMERATION_GUARD,
        });
    }
    let total = 3u64.pow(n as u32);
    let counts = (0..total)
        .into_par_iter()
        .fold(
            || [0u64; 3],
            |mut acc, idx| {
                let sum: u32 = boundary_from_index(idx, n)
                    .iter()
                    .map(|t| t.value() as u32)
                    .sum();
                acc[(sum % 3) as usize] += 1;
                acc
            },
        )
        .reduce(|| [0u64; 3], |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::unit_boundary;

    fn trits(digits: &[u8]) -> Vec<Trit> {
        digits.iter().map(|&d| Trit::new(d).unwrap()).collect()
    }

    #[test]
    fn hamming_distance_examples() {
        let lattice = Lattice::torus(3, 3).unwrap();
        let c = generate_codeword(&trits(&[1, 0, 0]), &lattice).unwrap();
        let zero = generate_codeword(&trits(&[0, 0, 0]), &lattice).unwrap();
        assert_eq!(hamming_distance(&c, &c).unwrap(), 0);
        assert_eq!(hamming_distance(&c, &zero).unwrap(), 6);
        // d(a, b) = weight(a - b): subtraction is addition of the negation
        let a = generate_codeword(&trits(&[1, 2, 0]), &lattice).unwrap();
        let b = generate_codeword(&trits(&[0, 2, 1]), &lattice).unwrap();
        let diff_boundary: Vec<Trit> = trits(&[1, 2, 0])
            .iter()
            .zip(&trits(&[0, 2, 1]))
            .map(|(x, y)| x.sub(*y))
            .collect();
        let diff = generate_codeword(&diff_boundary, &lattice).unwrap();
        assert_eq!(hamming_distance(&a, &b).unwrap(), diff.weight());
    }

    #[test]
    fn hamming_distance_rejects_lattice_mismatch() {
        let a = generate_codeword(&trits(&[0, 0, 0]), &Lattice::torus(3, 3).unwrap()).unwrap();
        let b = generate_codeword(&[Trit::ZERO; 9], &Lattice::torus(9, 9).unwrap()).unwrap();
        assert_eq!(hamming_distance(&a, &b), Err(MetricsError::LatticeMismatch));
    }

    #[test]
    fn min_distance_on_3x3_torus_is_6() {
        assert_eq!(min_distance(&Lattice::torus(3, 3).unwrap()).unwrap(), 6);
    }

    #[test]
    fn min_distance_on_patch_3x3_by_independent_oracle() {
        let lattice = Lattice::patch(3, 3).unwrap();
        // oracle: direct minimum over all distinct codeword pairs
        let mut codewords = Vec::new();
        for idx in 0..27 {
            codewords.push(generate_codeword(&boundary_from_index(idx, 3), &lattice).unwrap());
        }
        let mut pair_min = usize::MAX;
        for i in 0..codewords.len() {
            for j in 0..i {
                pair_min = pair_min.min(hamming_distance(&codewords[i], &codewords[j]).unwrap());
            }
        }
        assert_eq!(pair_min, 3);
        assert_eq!(min_distance(&lattice).unwrap(), pair_min);
    }

    #[test]
    fn min_distance_guard_rejects_large_boundaries() {
        let lattice = Lattice::torus(27, 27).unwrap();
        assert!(matches!(
            min_distance(&lattice),
            Err(MetricsError::EnumerationGuard { n: 27, .. })
        ));
    }

    #[test]
    fn sampled_bound_on_27x27_is_at_most_the_unit_codeword_weight() {
        let lattice = Lattice::torus(27, 27).unwrap();
        let unit_weight = generate_codeword(&unit_boundary(27, 0), &lattice)
            .unwrap()
            .weight();
        let bound = sampled_distance_upper_bound(&lattice, 50, 1234).unwrap();
        assert!(!bound.exhaustive);
        assert!(bound.upper_bound <= unit_weight);
        assert_eq!(unit_weight, 216); // 6^3 on the 27x27 torus
    }

    #[test]
    fn weight_method_agrees_with_pair_distances() {
        // exhaustive pairs on the 3x3 torus
        let lattice = Lattice::torus(3, 3).unwrap();
        let codewords: Vec<_> = (0..27)
            .map(|idx| generate_codeword(&boundary_from_index(idx, 3), &lattice).unwrap())
            .collect();
        let mut pair_min = usize::MAX;
        for i in 0..codewords.len() {
            for j in 0..i {
                pair_min = pair_min.min(hamming_distance(&codewords[i], &codewords[j]).unwrap());
            }
        }
        assert_eq!(pair_min, min_distance(&lattice).unwrap());

        // 10^5 random pairs on the 9x9 torus; minimal-weight codewords are
        // frequent enough that the sampled minimum attains the true distance
        let lattice9 = Lattice::torus(9, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut sampled_min = usize::MAX;
        for _ in 0..100_000 {
            let a: Vec<Trit> = (0..9)
                .map(|_| Trit::new(rng.gen_range(0..3)).unwrap())
                .collect();
            let b: Vec<Trit> = (0..9)
                .map(|_| Trit::new(rng.gen_range(0..3)).unwrap())
                .collect();
            if a == b {
                continue;
            }
            let diff: Vec<Trit> = a.iter().zip(&b).map(|(x, y)| x.sub(*y)).collect();
            sampled_min = sampled_min.min(generate_codeword(&diff, &lattice9).unwrap().weight());
        }
        assert_eq!(sampled_min, 36);
        assert_eq!(sampled_min, min_distance(&lattice9).unwrap());
    }

    #[test]
    fn cycle_charge_examples() {
        let lattice = Lattice::torus(3, 3).unwrap();
        let cw = generate_codeword(&trits(&[1, 0, 0]), &lattice).unwrap();
        let (rows, diagonals) = lattice.cycles().unwrap();
        for cycle in rows.iter().chain(&diagonals) {
            assert_eq!(cycle_charge(&cw, cycle).unwrap(), ChargeSector(Trit::ONE));
        }
        // a row of all ones sums to 3 = 0 mod 3
        let ones = generate_codeword(&trits(&[1, 1, 1]), &lattice).unwrap();
        assert_eq!(
            cycle_charge(&ones, &rows[0]).unwrap(),
            ChargeSector(Trit::ZERO)
        );
        let zero = generate_codeword(&trits(&[0, 0, 0]), &lattice).unwrap();
        assert_eq!(constant_charge(&zero, true).unwrap(), Some(ChargeSector(Trit::ZERO)));
    }

    #[test]
    fn charge_constancy_exhaustive_on_3x3() {
        let lattice = Lattice::torus(3, 3).unwrap();
        for idx in 0..27 {
            let boundary = boundary_from_index(idx, 3);
            let cw = generate_codeword(&boundary, &lattice).unwrap();
            let expected: u8 = boundary.iter().map(|t| t.value()).sum::<u8>() % 3;
            let charge = constant_charge(&cw, true).unwrap();
            assert_eq!(
                charge,
                Some(ChargeSector(Trit::new(expected).unwrap())),
                "boundary {idx}"
            );
        }
    }

    #[test]
    fn sector_census_on_3x3() {
        let census = sector_census(&Lattice::torus(3, 3).unwrap()).unwrap();
        assert_eq!(census, [9, 9, 9]);
        assert_eq!(census.iter().sum::<u64>(), 27);
    }

    #[test]
    fn cycle_out_of_range_is_rejected() {
        let lattice = Lattice::torus(3, 3).unwrap();
        let cw = generate_codeword(&trits(&[0, 0, 0]), &lattice).unwrap();
        assert_eq!(
            cycle_charge(&cw, &[0, 1, 99]),
            Err(MetricsError::CycleOutOfRange(99))
        );
    }
}
