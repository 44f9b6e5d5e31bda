//! First homology of multibranched surfaces.
//!
//! `H₁(X)` is the quotient of the free group on the branches by one relation
//! per sector (the signed degree sum of its boundary), plus a free summand of
//! rank `r(Ẋ) − n`, where `Ẋ` is `X` with an open disk removed from every
//! sector and `n` is the number of branches.

mod group;
mod snf;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use group::FgAbelianGroup;
pub use snf::{rank, smith_normal_form, IntegerMatrix};

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::surface::{BranchId, MultibranchedSurface};

/// Sector-by-branch matrix of `d(l; e) = Σ od(c)` over prebranches `c ⊂ ∂e`
/// attached to `l`.
pub fn relation_matrix(x: &MultibranchedSurface) -> Result<IntegerMatrix> {
    x.require_orientable()?;
    let lookup = x.branch_lookup();
    let mut m = IntegerMatrix::zeros(x.sectors().len(), x.branches().len());
    for (i, s) in x.sectors().iter().enumerate() {
        for c in &s.prebranches {
            let k = *lookup.get(&c.branch).ok_or_else(|| Error::DanglingBranchReference {
                sector: s.id.clone(),
                branch: c.branch.clone(),
            })?;
            let v = m.get(i, k) + BigInt::from(c.oriented_degree);
            m.set(i, k, v);
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpineEdgeKind {
    /// The branch circle itself.
    Branch,
    /// Arc across a sector joining two consecutive boundary circles.
    Arc,
    /// One of the `2g` handle loops of a sector.
    Handle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineEdge {
    pub source: usize,
    pub target: usize,
    pub kind: SpineEdgeKind,
    /// Owning branch or sector id.
    pub tag: String,
}

/// A graph onto which `Ẋ` deformation retracts; one vertex per branch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineGraph {
    pub vertices: Vec<BranchId>,
    pub edges: Vec<SpineEdge>,
}

impl SpineGraph {
    pub fn of(x: &MultibranchedSurface) -> Result<Self> {
        x.require_orientable()?;
        let lookup = x.branch_lookup();
        let mut edges: Vec<SpineEdge> = x
            .branches()
            .iter()
            .enumerate()
            .map(|(i, b)| SpineEdge {
                source: i,
                target: i,
                kind: SpineEdgeKind::Branch,
                tag: b.0.clone(),
            })
            .collect();
        for s in x.sectors() {
            let ends: Vec<usize> = s
                .prebranches
                .iter()
                .map(|c| {
                    lookup
                        .get(&c.branch)
                        .copied()
                        .ok_or_else(|| Error::DanglingBranchReference {
                            sector: s.id.clone(),
                            branch: c.branch.clone(),
                        })
                })
                .collect::<Result<_>>()?;
            for w in ends.windows(2) {
                edges.push(SpineEdge {
                    source: w[0],
                    target: w[1],
                    kind: SpineEdgeKind::Arc,
                    tag: s.id.0.clone(),
                });
            }
            if let Some(&base) = ends.first() {
                for _ in 0..2 * s.genus {
                    edges.push(SpineEdge {
                        source: base,
                        target: base,
                        kind: SpineEdgeKind::Handle,
                        tag: s.id.0.clone(),
                    });
                }
            }
        }
        Ok(Self {
            vertices: x.branches().to_vec(),
            edges,
        })
    }

    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSet::new(self.vertices.len());
        for e in &self.edges {
            dsu.union(e.source, e.target);
        }
        dsu.labels().1
    }

    /// First Betti number `#E − #V + #components`.
    pub fn betti_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }
}

/// `r(Ẋ)`, the rank of `H₁(Ẋ)` for a connected surface.
///
/// Computed from the explicit spine and from `1 + m − χ(X)`; the two must
/// agree.
pub fn punctured_spine_rank(x: &MultibranchedSurface) -> Result<usize> {
    x.require_orientable()?;
    if !x.is_connected() {
        return Err(Error::Disconnected);
    }
    if x.sectors().is_empty() {
        return Ok(0);
    }
    let from_spine = SpineGraph::of(x)?.betti_number();
    let from_chi = 1 + x.sectors().len() as i64 - x.euler_characteristic();
    if from_chi != from_spine as i64 {
        return Err(Error::InternalMismatch(format!(
            "spine rank {from_spine} differs from 1 + m - chi = {from_chi}"
        )));
    }
    Ok(from_spine)
}

fn h1_connected(x: &MultibranchedSurface) -> Result<FgAbelianGroup> {
    let n = x.branches().len();
    let rel = relation_matrix(x)?;
    let diag = smith_normal_form(&rel);
    let rank = diag.iter().filter(|d| **d != BigInt::from(0)).count();
    let punctured = punctured_spine_rank(x)?;
    // r' = r(Ẋ) − n; the branch loops are always part of a basis of H₁(Ẋ)
    let extra = punctured - n;
    Ok(FgAbelianGroup::from_normalized(
        snf::torsion_of(&diag),
        n - rank + extra,
    ))
}

/// `H₁(X)`, summed over connected components.
///
/// Regularity is not required; see [`h1_regular`] for the strict contract.
pub fn h1(x: &MultibranchedSurface) -> Result<FgAbelianGroup> {
    x.require_orientable()?;
    x.connected_components().iter().try_fold(
        FgAbelianGroup::trivial(),
        |acc, c| Ok(acc.direct_sum(&h1_connected(c)?)),
    )
}

/// [`h1`] restricted to regular surfaces.
pub fn h1_regular(x: &MultibranchedSurface) -> Result<FgAbelianGroup> {
    x.require_regular()?;
    h1(x)
}

/// One-sided homological test for embedding into the 3-sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum S3Verdict {
    /// `H₁` has torsion, so no embedding into `S³` exists.
    Obstructed { torsion: FgAbelianGroup },
    /// `H₁` is torsion-free; this does not certify embeddability.
    Inconclusive,
}

impl S3Verdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, S3Verdict::Obstructed { .. })
    }
}

pub fn s3_obstruction(x: &MultibranchedSurface) -> Result<S3Verdict> {
    let h = h1(x)?;
    Ok(if h.is_torsion_free() {
        S3Verdict::Inconclusive
    } else {
        S3Verdict::Obstructed {
            torsion: h.torsion_subgroup(),
        }
    })
}
