//! Combinatorial model of a multibranched surface.
//!
//! A surface is a list of branches (circles) and a list of sectors (compact
//! surfaces with nonempty boundary). Each boundary circle of a sector is a
//! [`Prebranch`]: it covers one branch with a signed covering degree. The sign
//! is taken relative to the branch's reference orientation and to the boundary
//! orientation induced by the sector's orientation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BranchId(pub String);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SectorId(pub String);

impl fmt::Display for BranchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for SectorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for BranchId {
    fn from(s: &str) -> Self {
        BranchId(s.to_owned())
    }
}

impl From<String> for BranchId {
    fn from(s: String) -> Self {
        BranchId(s)
    }
}

impl From<&str> for SectorId {
    fn from(s: &str) -> Self {
        SectorId(s.to_owned())
    }
}

impl From<String> for SectorId {
    fn from(s: String) -> Self {
        SectorId(s)
    }
}

/// A boundary circle of a sector together with its covering map onto a branch.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Prebranch {
    pub branch: BranchId,
    pub oriented_degree: i64,
}

impl Prebranch {
    pub fn new(branch: impl Into<BranchId>, oriented_degree: i64) -> Self {
        Self {
            branch: branch.into(),
            oriented_degree,
        }
    }

    /// Covering degree `|od|`.
    pub fn degree(&self) -> u64 {
        self.oriented_degree.unsigned_abs()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sector {
    pub id: SectorId,
    /// Handle count when orientable, crosscap count otherwise.
    pub genus: u32,
    pub orientable: bool,
    pub prebranches: Vec<Prebranch>,
}

impl Sector {
    pub fn new(id: impl Into<SectorId>, genus: u32, prebranches: Vec<Prebranch>) -> Self {
        Self {
            id: id.into(),
            genus,
            orientable: true,
            prebranches,
        }
    }

    pub fn nonorientable(id: impl Into<SectorId>, crosscaps: u32, prebranches: Vec<Prebranch>) -> Self {
        Self {
            id: id.into(),
            genus: crosscaps,
            orientable: false,
            prebranches,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let b = self.prebranches.len() as i64;
        let g = i64::from(self.genus);
        if self.orientable {
            2 - 2 * g - b
        } else {
            2 - g - b
        }
    }
}

/// A multibranched surface `L ∪_φ E`.
///
/// Values built through [`MultibranchedSurface::from_parts`] are raw; call
/// [`MultibranchedSurface::validate`] before relying on the structural
/// invariants. Every constructor in [`crate::builders`] returns validated
/// surfaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultibranchedSurface {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    branches: Vec<BranchId>,
    sectors: Vec<Sector>,
}

impl Default for MultibranchedSurface {
    fn default() -> Self {
        Self::empty()
    }
}

impl MultibranchedSurface {
    pub fn empty() -> Self {
        Self {
            name: None,
            branches: Vec::new(),
            sectors: Vec::new(),
        }
    }

    pub fn from_parts(name: Option<String>, branches: Vec<BranchId>, sectors: Vec<Sector>) -> Self {
        Self {
            name,
            branches,
            sectors,
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn branches(&self) -> &[BranchId] {
        &self.branches
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty() && self.sectors.is_empty()
    }

    pub fn prebranch_count(&self) -> usize {
        self.sectors.iter().map(|s| s.prebranches.len()).sum()
    }

    pub fn sector(&self, id: &SectorId) -> Result<&Sector> {
        self.sectors
            .iter()
            .find(|s| &s.id == id)
            .ok_or_else(|| Error::UnknownSector(id.clone()))
    }

    pub(crate) fn sector_position(&self, id: &SectorId) -> Result<usize> {
        self.sectors
            .iter()
            .position(|s| &s.id == id)
            .ok_or_else(|| Error::UnknownSector(id.clone()))
    }

    pub(crate) fn branch_position(&self, id: &BranchId) -> Result<usize> {
        self.branches
            .iter()
            .position(|b| b == id)
            .ok_or_else(|| Error::UnknownBranch(id.clone()))
    }

    /// Map from branch id to its position in [`Self::branches`].
    pub(crate) fn branch_lookup(&self) -> HashMap<&BranchId, usize> {
        self.branches.iter().enumerate().map(|(i, b)| (b, i)).collect()
    }

    /// Consume into raw parts, used by the operations that rebuild surfaces.
    pub(crate) fn into_parts(self) -> (Option<String>, Vec<BranchId>, Vec<Sector>) {
        (self.name, self.branches, self.sectors)
    }

    /// Check structural conditions and return the normalized surface.
    ///
    /// With `prune` set, branches that no prebranch covers are dropped;
    /// otherwise they are reported as [`Error::IsolatedBranch`].
    pub fn validate(&self, prune: bool) -> Result<Self> {
        let mut seen = HashSet::new();
        for b in &self.branches {
            if !seen.insert(b) {
                return Err(Error::DuplicateBranch(b.clone()));
            }
        }
        let mut seen_sectors = HashSet::new();
        let mut used = HashSet::new();
        for s in &self.sectors {
            if !seen_sectors.insert(&s.id) {
                return Err(Error::DuplicateSector(s.id.clone()));
            }
            if s.prebranches.is_empty() {
                return Err(Error::EmptySectorBoundary(s.id.clone()));
            }
            for c in &s.prebranches {
                if !seen.contains(&c.branch) {
                    return Err(Error::DanglingBranchReference {
                        sector: s.id.clone(),
                        branch: c.branch.clone(),
                    });
                }
                if c.oriented_degree == 0 {
                    return Err(Error::ZeroDegree {
                        sector: s.id.clone(),
                        branch: c.branch.clone(),
                    });
                }
                used.insert(&c.branch);
            }
        }
        let mut branches = Vec::with_capacity(self.branches.len());
        for b in &self.branches {
            if used.contains(b) {
                branches.push(b.clone());
            } else if !prune {
                return Err(Error::IsolatedBranch(b.clone()));
            }
        }
        Ok(Self {
            name: self.name.clone(),
            branches,
            sectors: self.sectors.clone(),
        })
    }

    /// Number of prebranches attached to `l`, written `i(l)`.
    pub fn branch_index(&self, l: &BranchId) -> Result<usize> {
        self.branch_position(l)?;
        Ok(self.prebranches_at(l).count())
    }

    /// Prebranches attached to `l`, as `(sector position, slot in sector)`.
    pub(crate) fn prebranches_at<'a>(&'a self, l: &'a BranchId) -> impl Iterator<Item = (usize, usize)> + 'a {
        self.sectors.iter().enumerate().flat_map(move |(si, s)| {
            s.prebranches
                .iter()
                .enumerate()
                .filter(move |(_, c)| &c.branch == l)
                .map(move |(ci, _)| (si, ci))
        })
    }

    /// Covering degrees seen at each branch, keyed by branch position.
    fn degrees_by_branch(&self) -> BTreeMap<usize, Vec<u64>> {
        let lookup = self.branch_lookup();
        let mut out: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        for s in &self.sectors {
            for c in &s.prebranches {
                if let Some(&i) = lookup.get(&c.branch) {
                    out.entry(i).or_default().push(c.degree());
                }
            }
        }
        out
    }

    /// First branch whose prebranches disagree on covering degree.
    pub(crate) fn irregular_branch(&self) -> Option<&BranchId> {
        self.degrees_by_branch()
            .into_iter()
            .find(|(_, ds)| ds.iter().any(|d| *d != ds[0]))
            .map(|(i, _)| &self.branches[i])
    }

    pub fn is_regular(&self) -> bool {
        self.irregular_branch().is_none()
    }

    pub(crate) fn require_regular(&self) -> Result<()> {
        match self.irregular_branch() {
            Some(l) => Err(Error::NotRegular(l.clone())),
            None => Ok(()),
        }
    }

    pub(crate) fn require_orientable(&self) -> Result<()> {
        match self.sectors.iter().find(|s| !s.orientable) {
            Some(s) => Err(Error::NonorientableSector(s.id.clone())),
            None => Ok(()),
        }
    }

    /// Shared covering degree `d(l)` of a branch of a regular surface.
    pub fn branch_degree(&self, l: &BranchId) -> Result<u64> {
        self.branch_position(l)?;
        self.require_regular()?;
        Ok(self
            .sectors
            .iter()
            .flat_map(|s| &s.prebranches)
            .find(|c| &c.branch == l)
            .map(Prebranch::degree)
            .unwrap_or(0))
    }

    /// `χ(X) = χ(E)`: branch circles and boundary circles contribute nothing.
    pub fn euler_characteristic(&self) -> i64 {
        self.sectors.iter().map(Sector::euler_characteristic).sum()
    }

    /// Connected components of the branch–sector incidence graph, ordered by
    /// their first branch (sectors without a known branch come last).
    pub fn connected_components(&self) -> Vec<MultibranchedSurface> {
        let n = self.branches.len();
        let m = self.sectors.len();
        let lookup = self.branch_lookup();
        let mut dsu = DisjointSet::new(n + m);
        for (si, s) in self.sectors.iter().enumerate() {
            for c in &s.prebranches {
                if let Some(&bi) = lookup.get(&c.branch) {
                    dsu.union(bi, n + si);
                }
            }
        }
        let (labels, k) = dsu.labels();
        let mut parts: Vec<(Vec<BranchId>, Vec<Sector>)> = vec![(Vec::new(), Vec::new()); k];
        for (i, b) in self.branches.iter().enumerate() {
            parts[labels[i]].0.push(b.clone());
        }
        for (j, s) in self.sectors.iter().enumerate() {
            parts[labels[n + j]].1.push(s.clone());
        }
        parts
            .into_iter()
            .map(|(branches, sectors)| Self {
                name: self.name.clone(),
                branches,
                sectors,
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Disjoint union; ids of `other` must not clash with ids of `self`.
    pub fn disjoint_union(&self, other: &MultibranchedSurface) -> Result<Self> {
        let mut branches = self.branches.clone();
        branches.extend(other.branches.iter().cloned());
        let mut sectors = self.sectors.clone();
        sectors.extend(other.sectors.iter().cloned());
        Self {
            name: self.name.clone(),
            branches,
            sectors,
        }
        .validate(true)
    }
}
