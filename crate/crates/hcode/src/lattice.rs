//! Triangular-lattice geometry: site indexing on tori and planar patches,
//! up-triangle enumeration, row/diagonal cycles, and region handling.
//!
//! Site ids are row-major integers starting from the boundary row (row 0).
//! The up-triangle with base sites (r, c), (r, c+1) has its apex at
//! (r+1, c); this orientation fixes the direction in which the
//! neutralization rule propagates.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("torus requires n >= 2 and m >= 1, got n={n}, m={m}")]
    BadTorus { n: usize, m: usize },
    #[error("patch requires 2 <= depth m <= n, got n={n}, m={m}")]
    BadPatch { n: usize, m: usize },
    #[error("cycles are only defined on a torus")]
    CyclesOnPatch,
    #[error("cannot grow an empty region")]
    EmptyRegion,
    #[error("site id {site} out of range for lattice with {sites} sites")]
    SiteOutOfRange { site: usize, sites: usize },
}

/// Torus of `m` rows, each a cycle of `n` sites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusLattice {
    pub n: usize,
    pub m: usize,
}

impl TorusLattice {
    pub fn new(n: usize, m: usize) -> Result<TorusLattice, LatticeError> {
        if n < 2 || m < 1 {
            return Err(LatticeError::BadTorus { n, m });
        }
        Ok(TorusLattice { n, m })
    }

    pub fn num_sites(&self) -> usize {
        self.n * self.m
    }

    pub fn site(&self, row: usize, col: usize) -> usize {
        (row % self.m) * self.n + (col % self.n)
    }

    pub fn coords(&self, site: usize) -> (usize, usize) {
        (site / self.n, site % self.n)
    }
}

/// Planar patch with open boundaries: row r holds n - r sites, so the rows
/// shrink by one site per layer up to depth m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatchLattice {
    pub n: usize,
    pub m: usize,
    #[serde(skip)]
    row_offsets: Vec<usize>,
}

impl PatchLattice {
    pub fn new(n: usize, m: usize) -> Result<PatchLattice, LatticeError> {
        if m < 1 || m > n || n < 2 {
            return Err(LatticeError::BadPatch { n, m });
        }
        let mut row_offsets = Vec::with_capacity(m + 1);
        let mut acc = 0;
        for r in 0..=m {
            row_offsets.push(acc);
            acc += n.saturating_sub(r);
        }
        Ok(PatchLattice { n, m, row_offsets })
    }

    pub fn num_sites(&self) -> usize {
        self.row_offsets[self.m]
    }

    pub fn row_len(&self, row: usize) -> usize {
        self.n - row
    }

    pub fn site(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.m && col < self.row_len(row));
        self.row_offsets[row] + col
    }

    pub fn coords(&self, site: usize) -> (usize, usize) {
        let row = self
            .row_offsets
            .partition_point(|&off| off <= site)
            .saturating_sub(1);
        (row, site - self.row_offsets[row])
    }
}

/// Either lattice flavour; most geometry queries are shared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Lattice {
    Torus(TorusLattice),
    Patch(PatchLattice),
}

impl Lattice {
    pub fn torus(n: usize, m: usize) -> Result<Lattice, LatticeError> {
        Ok(Lattice::Torus(TorusLattice::new(n, m)?))
    }

    pub fn patch(n: usize, m: usize) -> Result<Lattice, LatticeError> {
        Ok(Lattice::Patch(PatchLattice::new(n, m)?))
    }

    /// Boundary length (number of sites in row 0).
    pub fn boundary_len(&self) -> usize {
        match self {
            Lattice::Torus(t) => t.n,
            Lattice::Patch(p) => p.n,
        }
    }

    /// Number of rows.
    pub fn depth(&self) -> usize {
        match self {
            Lattice::Torus(t) => t.m,
            Lattice::Patch(p) => p.m,
        }
    }

    pub fn num_sites(&self) -> usize {
        match self {
            Lattice::Torus(t) => t.num_sites(),
            Lattice::Patch(p) => p.num_sites(),
        }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, Lattice::Torus(_))
    }

    pub fn coords(&self, site: usize) -> (usize, usize) {
        match self {
            Lattice::Torus(t) => t.coords(site),
            Lattice::Patch(p) => p.coords(site),
        }
    }

    /// All up-triangles as site-id triples (base-left, base-right, apex).
    ///
    /// On the torus there is one triangle per site; on the patch, row r
    /// contributes n - r - 1 triangles.
    pub fn up_triangles(&self) -> Vec<[usize; 3]> {
        match self {
            Lattice::Torus(t) => {
                let mut tris = Vec::with_capacity(t.num_sites());
                for r in 0..t.m {
                    for c in 0..t.n {
                        tris.push([t.site(r, c), t.site(r, c + 1), t.site(r + 1, c)]);
                    }
                }
                tris
            }
            Lattice::Patch(p) => {
                let mut tris = Vec::new();
                for r in 0..p.m.saturating_sub(1) {
                    for c in 0..p.row_len(r + 1) {
                        tris.push([p.site(r, c), p.site(r, c + 1), p.site(r + 1, c)]);
                    }
                }
                tris
            }
        }
    }

    /// Row cycles and fixed-column ("diagonal") cycles of a torus.
    ///
    /// Row r is the site list [(r, 0), ..., (r, n-1)]; diagonal c is the
    /// vertical cycle [(0, c), ..., (m-1, c)]. See [`Lattice::anti_diagonals`]
    /// for the other diagonal family.
    pub fn cycles(&self) -> Result<CycleFamilies, LatticeError> {
        let Lattice::Torus(t) = self else {
            return Err(LatticeError::CyclesOnPatch);
        };
        let rows = (0..t.m)
            .map(|r| (0..t.n).map(|c| t.site(r, c)).collect())
            .collect();
        let diagonals = (0..t.n)
            .map(|c| (0..t.m).map(|r| t.site(r, c)).collect())
            .collect();
        Ok((rows, diagonals))
    }

    /// The second diagonal family of a torus: cycle c is [(r, c - r)]_r.
    ///
    /// The drawing convention does not pin which family is "the" diagonal,
    /// so both are exposed and checked empirically.
    pub fn anti_diagonals(&self) -> Result<Vec<Vec<usize>>, LatticeError> {
        let Lattice::Torus(t) = self else {
            return Err(LatticeError::CyclesOnPatch);
        };
        Ok((0..t.n)
            .map(|c| {
                (0..t.m)
                    .map(|r| t.site(r, (c + t.n * t.m - r) % t.n))
                    .collect()
            })
            .collect())
    }

    /// Sites sharing at least one up-triangle with `site`.
    pub fn neighbors(&self, site: usize) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for tri in self.up_triangles() {
            if tri.contains(&site) {
                for s in tri {
                    if s != site {
                        out.insert(s);
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

/// Row cycles and diagonal cycles of a torus, as site-id lists.
pub type CycleFamilies = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// A subset of lattice sites.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Region {
    sites: BTreeSet<usize>,
}

impl Region {
    pub fn new(sites: impl IntoIterator<Item = usize>) -> Region {
        Region {
            sites: sites.into_iter().collect(),
        }
    }

    pub fn empty() -> Region {
        Region {
            sites: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.sites.contains(&site)
    }

    pub fn insert(&mut self, site: usize) {
        self.sites.insert(site);
    }

    pub fn sites(&self) -> impl Iterator<Item = usize> + '_ {
        self.sites.iter().copied()
    }

    pub fn site_vec(&self) -> Vec<usize> {
        self.sites.iter().copied().collect()
    }

    pub fn complement(&self, lattice: &Lattice) -> Region {
        Region {
            sites: (0..lattice.num_sites())
                .filter(|s| !self.sites.contains(s))
                .collect(),
        }
    }

    pub fn union(&self, other: &Region) -> Region {
        Region {
            sites: self.sites.union(&other.sites).copied().collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Region) -> bool {
        self.sites.is_disjoint(&other.sites)
    }

    pub fn validate(&self, lattice: &Lattice) -> Result<(), LatticeError> {
        let sites = lattice.num_sites();
        for &s in &self.sites {
            if s >= sites {
                return Err(LatticeError::SiteOutOfRange { site: s, sites });
            }
        }
        Ok(())
    }
}

/// All one-site extensions of `region`: one new region per site that shares
/// an up-triangle with the current region.
pub fn grow_region(region: &Region, lattice: &Lattice) -> Result<Vec<Region>, LatticeError> {
    if region.is_empty() {
        return Err(LatticeError::EmptyRegion);
    }
    region.validate(lattice)?;
    let mut candidates = BTreeSet::new();
    for tri in lattice.up_triangles() {
        if tri.iter().any(|s| region.contains(*s)) {
            for s in tri {
                if !region.contains(s) {
                    candidates.insert(s);
                }
            }
        }
    }
    Ok(candidates
        .into_iter()
        .map(|s| {
            let mut grown = region.clone();
            grown.insert(s);
            grown
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn torus_triangle_counts() {
        assert_eq!(Lattice::torus(3, 3).unwrap().up_triangles().len(), 9);
        assert_eq!(Lattice::torus(9, 9).unwrap().up_triangles().len(), 81);
    }

    #[test]
    fn patch_triangle_count_and_row_lengths() {
        let p = Lattice::patch(3, 3).unwrap();
        assert_eq!(p.up_triangles().len(), 3); // 2 + 1
        let Lattice::Patch(patch) = &p else { unreachable!() };
        assert_eq!(patch.row_len(0), 3);
        assert_eq!(patch.row_len(1), 2);
        assert_eq!(patch.row_len(2), 1);
        assert_eq!(p.num_sites(), 6);
    }

    #[test]
    fn every_torus_site_is_in_three_triangles() {
        let t = Lattice::torus(9, 9).unwrap();
        let mut count = BTreeMap::new();
        for tri in t.up_triangles() {
            for s in tri {
                *count.entry(s).or_insert(0usize) += 1;
            }
        }
        assert_eq!(count.len(), 81);
        assert!(count.values().all(|&c| c == 3));
    }

    #[test]
    fn cycles_partition_the_torus() {
        let t = Lattice::torus(3, 3).unwrap();
        let (rows, diagonals) = t.cycles().unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(diagonals.len(), 3);
        for cycle in rows.iter().chain(&diagonals) {
            assert_eq!(cycle.len(), 3);
        }
        let row_sites: BTreeSet<_> = rows.iter().flatten().copied().collect();
        let diag_sites: BTreeSet<_> = diagonals.iter().flatten().copied().collect();
        assert_eq!(row_sites.len(), 9);
        assert_eq!(diag_sites.len(), 9);

        let t9 = Lattice::torus(9, 9).unwrap();
        let (rows9, diags9) = t9.cycles().unwrap();
        assert_eq!(rows9.len() + diags9.len(), 18);
        assert!(rows9.iter().chain(&diags9).all(|c| c.len() == 9));
    }

    #[test]
    fn anti_diagonals_are_cycles_too() {
        let t = Lattice::torus(9, 9).unwrap();
        let anti = t.anti_diagonals().unwrap();
        assert_eq!(anti.len(), 9);
        let all: BTreeSet<_> = anti.iter().flatten().copied().collect();
        assert_eq!(all.len(), 81);
    }

    #[test]
    fn cycles_rejected_on_patch() {
        let p = Lattice::patch(4, 3).unwrap();
        assert_eq!(p.cycles(), Err(LatticeError::CyclesOnPatch));
    }

    #[test]
    fn triangle_set_is_translation_invariant() {
        let t = Lattice::torus(9, 9).unwrap();
        let Lattice::Torus(torus) = &t else { unreachable!() };
        let tris: BTreeSet<Vec<usize>> = t
            .up_triangles()
            .iter()
            .map(|tri| {
                let mut v = tri.to_vec();
                v.sort_unstable();
                v
            })
            .collect();
        for (dr, dc) in [(1, 0), (0, 1), (4, 7)] {
            let shifted: BTreeSet<Vec<usize>> = t
                .up_triangles()
                .iter()
                .map(|tri| {
                    let mut v: Vec<usize> = tri
                        .iter()
                        .map(|&s| {
                            let (r, c) = torus.coords(s);
                            torus.site(r + dr, c + dc)
                        })
                        .collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            assert_eq!(tris, shifted);
        }
    }

    #[test]
    fn grow_single_site_adds_each_triangle_neighbor() {
        let t = Lattice::torus(9, 9).unwrap();
        let region = Region::new([40]); // (4, 4), interior
        let grown = grow_region(&region, &t).unwrap();
        assert_eq!(grown.len(), 6);
        for g in &grown {
            assert_eq!(g.len(), 2);
            assert!(g.contains(40));
        }
    }

    #[test]
    fn grow_two_adjacent_sites_gives_size_three_regions() {
        let t = Lattice::torus(9, 9).unwrap();
        let region = Region::new([40, 41]);
        let grown = grow_region(&region, &t).unwrap();
        assert!(!grown.is_empty());
        for g in &grown {
            assert_eq!(g.len(), 3);
            assert!(g.contains(40) && g.contains(41));
        }
    }

    #[test]
    fn grow_full_lattice_is_empty_and_empty_region_errors() {
        let t = Lattice::torus(3, 3).unwrap();
        let full = Region::new(0..9);
        assert!(grow_region(&full, &t).unwrap().is_empty());
        assert_eq!(
            grow_region(&Region::empty(), &t),
            Err(LatticeError::EmptyRegion)
        );
    }

    #[test]
    fn patch_coords_round_trip() {
        let p = PatchLattice::new(5, 4).unwrap();
        for row in 0..4 {
            for col in 0..p.row_len(row) {
                let site = p.site(row, col);
                assert_eq!(p.coords(site), (row, col));
            }
        }
    }

    #[test]
    fn bad_lattices_are_rejected() {
        assert!(Lattice::torus(1, 3).is_err());
        assert!(Lattice::patch(3, 4).is_err());
        assert!(Lattice::patch(3, 0).is_err());
    }
}
