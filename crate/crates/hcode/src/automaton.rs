//! The neutralization-rule cellular automaton.
//!
//! Row r+1 of a configuration is produced from row r by
//! `out[c] = -(row[c] + row[c+1])  (mod 3)`, so that every up-triangle of
//! sites sums to zero mod 3. Iterating the rule from a boundary row fills
//! the bulk; on a torus the last propagation step must reproduce the first
//! row, which only happens on admissible (n, m).
//!
//! The map from boundary to bulk is linear over GF(3), which is what makes
//! exhaustive codeword sweeps and the rank-based entropy formula exact.

use std::fmt::Write as _;

use thiserror::Error;

use crate::gf3::{Gf3Matrix, Trit};
use crate::lattice::{Lattice, LatticeError, Region};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("boundary has {got} trits, lattice expects {expected}")]
    BoundaryLength { expected: usize, got: usize },
    #[error("row of length {0} cannot be propagated; need at least 2 sites")]
    RowTooShort(usize),
    #[error("torus ({n},{m}) is not admissible: row {m} propagates to {closure_row:?}, boundary is {boundary:?}")]
    InadmissibleTorus {
        n: usize,
        m: usize,
        closure_row: Vec<u8>,
        boundary: Vec<u8>,
    },
    #[error("light-cone delta must be 1 or 2")]
    ZeroDelta,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("cannot parse codeword text: {0}")]
    BadFormat(String),
}

/// Whether a propagation step wraps around (torus) or drops the last
/// triangle (patch, output one site shorter).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationMode {
    Torus,
    Patch,
}

/// One step of the neutralization automaton.
pub fn propagate_row(row: &[Trit], mode: PropagationMode) -> Result<Vec<Trit>, AutomatonError> {
    if row.len() < 2 {
        return Err(AutomatonError::RowTooShort(row.len()));
    }
    let n = row.len();
    let out_len = match mode {
        PropagationMode::Torus => n,
        PropagationMode::Patch => n - 1,
    };
    Ok((0..out_len)
        .map(|c| (row[c].add(row[(c + 1) % n])).neg())
        .collect())
}

/// Push an X-exponent string through one automaton layer:
/// `out[i] = -(e[i] + e[i+1 mod n])`. This is exactly the transfer-matrix
/// action, so pushing a boundary operator m times around an admissible
/// (n, m) torus returns the original string.
pub fn push_operator_string(exponents: &[Trit]) -> Vec<Trit> {
    let n = exponents.len();
    (0..n)
        .map(|i| (exponents[i].add(exponents[(i + 1) % n])).neg())
        .collect()
}

/// A full assignment of trits to lattice sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinConfig {
    lattice: Lattice,
    values: Vec<Trit>,
}

impl SpinConfig {
    pub fn new(lattice: Lattice, values: Vec<Trit>) -> SpinConfig {
        assert_eq!(lattice.num_sites(), values.len());
        SpinConfig { lattice, values }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn values(&self) -> &[Trit] {
        &self.values
    }

    pub fn value(&self, site: usize) -> Trit {
        self.values[site]
    }

    /// Number of nonzero sites.
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|t| !t.is_zero()).count()
    }

    /// True when every up-triangle sums to zero mod 3.
    pub fn satisfies_neutralization(&self) -> bool {
        self.lattice.up_triangles().iter().all(|tri| {
            self.values[tri[0]]
                .add(self.values[tri[1]])
                .add(self.values[tri[2]])
                .is_zero()
        })
    }

    /// Entrywise sum mod 3; panics if the lattices differ.
    pub fn add(&self, other: &SpinConfig) -> SpinConfig {
        assert_eq!(self.lattice, other.lattice);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(*b))
            .collect();
        SpinConfig::new(self.lattice.clone(), values)
    }

    /// Text form: a `# torus n m` or `# patch n m` header, then one digit
    /// row per lattice row. Round-trips exactly.
    pub fn to_text(&self) -> String {
        let (kind, n, m) = match &self.lattice {
            Lattice::Torus(t) => ("torus", t.n, t.m),
            Lattice::Patch(p) => ("patch", p.n, p.m),
        };
        let mut out = format!("# {kind} {n} {m}\n");
        let mut site = 0;
        for row in 0..m {
            let len = match &self.lattice {
                Lattice::Torus(_) => n,
                Lattice::Patch(p) => p.row_len(row),
            };
            for _ in 0..len {
                let _ = write!(out, "{}", self.values[site]);
                site += 1;
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<SpinConfig, AutomatonError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| AutomatonError::BadFormat("missing header".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "#" {
            return Err(AutomatonError::BadFormat(format!("bad header {header:?}")));
        }
        let n: usize = parts[2]
            .parse()
            .map_err(|_| AutomatonError::BadFormat("bad n in header".into()))?;
        let m: usize = parts[3]
            .parse()
            .map_err(|_| AutomatonError::BadFormat("bad m in header".into()))?;
        let lattice = match parts[1] {
            "torus" => Lattice::torus(n, m)?,
            "patch" => Lattice::patch(n, m)?,
            other => return Err(AutomatonError::BadFormat(format!("bad kind {other:?}"))),
        };
        let mut values = Vec::with_capacity(lattice.num_sites());
        for (row, line) in lines.enumerate() {
            let expected = match &lattice {
                Lattice::Torus(_) => n,
                Lattice::Patch(p) => p.row_len(row),
            };
            let line = line.trim();
            if line.len() != expected {
                return Err(AutomatonError::BadFormat(format!(
                    "row {row} has {} digits, expected {expected}",
                    line.len()
                )));
            }
            for ch in line.chars() {
                let d = ch
                    .to_digit(10)
                    .filter(|&d| d < 3)
                    .ok_or_else(|| AutomatonError::BadFormat(format!("bad digit {ch:?}")))?;
                values.push(Trit::new(d as u8).unwrap());
            }
        }
        if values.len() != lattice.num_sites() {
            return Err(AutomatonError::BadFormat(format!(
                "got {} sites, lattice has {}",
                values.len(),
                lattice.num_sites()
            )));
        }
        Ok(SpinConfig::new(lattice, values))
    }
}

/// Fill a lattice from its boundary row by repeated propagation.
///
/// On a torus the filled configuration is propagated once more and checked
/// against the boundary, so an inadmissible (n, m) is reported with the
/// failing closure row instead of silently producing a non-codeword.
pub fn generate_codeword(
    boundary: &[Trit],
    lattice: &Lattice,
) -> Result<SpinConfig, AutomatonError> {
    let n = lattice.boundary_len();
    if boundary.len() != n {
        return Err(AutomatonError::BoundaryLength {
            expected: n,
            got: boundary.len(),
        });
    }
    let mut values = Vec::with_capacity(lattice.num_sites());
    let mut row = boundary.to_vec();
    values.extend_from_slice(&row);
    match lattice {
        Lattice::Torus(t) => {
            for _ in 1..t.m {
                row = propagate_row(&row, PropagationMode::Torus)?;
                values.extend_from_slice(&row);
            }
            let closure = propagate_row(&row, PropagationMode::Torus)?;
            if closure != boundary {
                return Err(AutomatonError::InadmissibleTorus {
                    n: t.n,
                    m: t.m,
                    closure_row: closure.iter().map(|t| t.value()).collect(),
                    boundary: boundary.iter().map(|t| t.value()).collect(),
                });
            }
        }
        Lattice::Patch(p) => {
            for _ in 1..p.m {
                row = propagate_row(&row, PropagationMode::Patch)?;
                values.extend_from_slice(&row);
            }
        }
    }
    Ok(SpinConfig::new(lattice.clone(), values))
}

/// The boundary basis vector e_i.
pub fn unit_boundary(n: usize, i: usize) -> Vec<Trit> {
    let mut b = vec![Trit::ZERO; n];
    b[i] = Trit::ONE;
    b
}

/// Boundary row for a base-3 index, most significant digit first.
pub fn boundary_from_index(mut index: u64, n: usize) -> Vec<Trit> {
    let mut b = vec![Trit::ZERO; n];
    for c in (0..n).rev() {
        b[c] = Trit::new((index % 3) as u8).unwrap();
        index /= 3;
    }
    b
}

/// The n x (num_sites) generator matrix: row i is the codeword of e_i.
/// Every codeword is `boundary . G` mod 3.
pub fn generator_matrix(lattice: &Lattice) -> Result<Gf3Matrix, AutomatonError> {
    let n = lattice.boundary_len();
    let sites = lattice.num_sites();
    let mut g = Gf3Matrix::zeros(n, sites);
    for i in 0..n {
        let codeword = generate_codeword(&unit_boundary(n, i), lattice)?;
        for (s, v) in codeword.values().iter().enumerate() {
            g.set(i, s, *v);
        }
    }
    Ok(g)
}

/// A holographic code: the lattice together with its generator matrix.
#[derive(Debug, Clone)]
pub struct HCode {
    lattice: Lattice,
    generator: Gf3Matrix,
}

impl HCode {
    pub fn new(lattice: Lattice) -> Result<HCode, AutomatonError> {
        let generator = generator_matrix(&lattice)?;
        Ok(HCode { lattice, generator })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn generator(&self) -> &Gf3Matrix {
        &self.generator
    }

    /// Boundary dimension: the code holds 3^n codewords.
    pub fn code_dimension(&self) -> usize {
        self.generator.rows()
    }

    /// Codeword as the linear combination of generator rows.
    pub fn codeword(&self, boundary: &[Trit]) -> Result<SpinConfig, AutomatonError> {
        let n = self.generator.rows();
        if boundary.len() != n {
            return Err(AutomatonError::BoundaryLength {
                expected: n,
                got: boundary.len(),
            });
        }
        let sites = self.generator.cols();
        let mut values = vec![Trit::ZERO; sites];
        for (i, &b) in boundary.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (s, v) in values.iter_mut().enumerate() {
                *v = v.add(self.generator.get(i, s).mul(b));
            }
        }
        Ok(SpinConfig::new(self.lattice.clone(), values))
    }
}

/// Sites whose value changes when boundary trit `site` is shifted by `delta`.
///
/// Computed by exact codeword subtraction; by linearity this is the support
/// of the codeword of `delta * e_site`.
pub fn light_cone_diff(
    boundary: &[Trit],
    site: usize,
    delta: Trit,
    lattice: &Lattice,
) -> Result<Region, AutomatonError> {
    if delta.is_zero() {
        return Err(AutomatonError::ZeroDelta);
    }
    let base = generate_codeword(boundary, lattice)?;
    let mut shifted = boundary.to_vec();
    shifted[site] = shifted[site].add(delta);
    let moved = generate_codeword(&shifted, lattice)?;
    Ok(Region::new(
        base.values()
            .iter()
            .zip(moved.values())
            .enumerate()
            .filter(|(_, (a, b))| *a != *b)
            .map(|(s, _)| s),
    ))
}
