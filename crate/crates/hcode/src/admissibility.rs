//! Which tori admit the code: transfer-matrix periodicity over GF(3).
//!
//! The row-to-row map is the n x n matrix T_n = -(I + U_n) with U_n the
//! cyclic shift. A torus (n, m) carries the code exactly when T_n^m = I
//! (mod 3). Squared tori of side 3^k always qualify because every binomial
//! C(3^k, r) with 0 < r < 3^k is divisible by 3, which collapses
//! (I + U)^{3^k} to I + U^{3^k}.

use serde::Serialize;
use thiserror::Error;

use crate::gf3::{Gf3Error, Gf3Matrix, Trit, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("transfer matrix requires n >= 2, got {0}")]
    BoundaryTooShort(usize),
    #[error(transparent)]
    Gf3(#[from] Gf3Error),
}

/// The row-to-row transfer matrix T_n = -(I + U_n) over GF(3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    n: usize,
    matrix: Gf3Matrix,
}

impl TransferMatrix {
    pub fn new(n: usize) -> Result<TransferMatrix, AdmissibilityError> {
        if n < 2 {
            return Err(AdmissibilityError::BoundaryTooShort(n));
        }
        let mut matrix = Gf3Matrix::zeros(n, n);
        for i in 0..n {
            matrix.set(i, i, Trit::TWO);
            matrix.set(i, (i + 1) % n, Trit::TWO);
        }
        Ok(TransferMatrix { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Gf3Matrix {
        &self.matrix
    }

    /// Apply to a row of trits; agrees with the automaton's torus step.
    pub fn apply(&self, row: &[Trit]) -> Result<Vec<Trit>, Gf3Error> {
        self.matrix.mat_vec(row)
    }
}

/// True iff T_n^m = I (mod 3), i.e. the (n, m) torus carries the code.
pub fn is_admissible(n: usize, m: u64) -> Result<bool, AdmissibilityError> {
    let t = TransferMatrix::new(n)?;
    Ok(t.matrix.mat_pow(m)? == Gf3Matrix::identity(n))
}

/// Smallest m >= 1 with T_n^m = I, or `None` beyond `cap`.
///
/// For even n the transfer matrix is singular over GF(3) and no period
/// exists; that surfaces as [`Gf3Error::Singular`].
pub fn minimal_period(n: usize, cap: u64) -> Result<Option<u64>, AdmissibilityError> {
    let t = TransferMatrix::new(n)?;
    Ok(t.matrix.multiplicative_order(cap)?)
}

/// C(n, r) mod 3 via Lucas' theorem: the product of digitwise binomials in
/// base 3, where any digit pair with r_i > n_i kills the product.
pub fn binomial_mod3(n: u64, r: u64) -> u8 {
    if r > n {
        return 0;
    }
    let mut n = n;
    let mut r = r;
    let mut acc: u64 = 1;
    while r > 0 || n > 0 {
        let nd = n % 3;
        let rd = r % 3;
        if rd > nd {
            return 0;
        }
        // C(nd, rd) for digits < 3: C(2,1) = 2 is the only value > 1.
        let digit = if nd == 2 && rd == 1 { 2 } else { 1 };
        acc = (acc * digit) % 3;
        n /= 3;
        r /= 3;
    }
    acc as u8
}

/// Outcome of the 3^k divisibility argument.
#[derive(Debug, Clone, Serialize)]
pub struct PowerOfThreeReport {
    pub k: u32,
    pub n: u64,
    /// All C(3^k, r) for 1 <= r < 3^k are divisible by 3.
    pub binomials_divisible: bool,
    /// T_n^n == I, checked directly when the matrix is small enough.
    pub transfer_identity: Option<bool>,
}

/// Verify that C(3^k, r) = 0 mod 3 for all 0 < r < 3^k, and that in
/// consequence T_{3^k}^{3^k} = I. The matrix identity is checked directly
/// up to n = 243; beyond that only the binomial argument is evaluated.
pub fn verify_power_of_three_argument(k: u32) -> PowerOfThreeReport {
    let n = 3u64.pow(k);
    let binomials_divisible = (1..n).all(|r| binomial_mod3(n, r) == 0);
    let transfer_identity = if n <= 243 {
        Some(is_admissible(n as usize, n).expect("n >= 3 here"))
    } else {
        None
    };
    PowerOfThreeReport {
        k,
        n,
        binomials_divisible,
        transfer_identity,
    }
}

/// One row of the admissibility table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleEntry {
    pub n: usize,
    pub minimal_m: u64,
    /// The first few admissible m values (multiples of the minimal period).
    pub examples: Vec<u64>,
}

/// For each n in [2, n_max], the minimal admissible m <= m_max, if any.
pub fn search_admissible(n_max: usize, m_max: u64) -> Vec<AdmissibleEntry> {
    (2..=n_max)
        .filter_map(|n| {
            let period = minimal_period(n, m_max).ok().flatten()?;
            let examples = (1..=3)
                .map(|j| j * period)
                .take_while(|&m| m <= m_max.max(period))
                .collect();
            Some(AdmissibleEntry {
                n,
                minimal_m: period,
                examples,
            })
        })
        .collect()
}

/// Default cap used by the search when the caller does not supply one.
pub const DEFAULT_PERIOD_CAP: u64 = DEFAULT_ORDER_CAP;
