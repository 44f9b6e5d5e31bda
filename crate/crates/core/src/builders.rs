//! Constructors for the standard example families.

use crate::error::{Error, Result};
use crate::surface::{BranchId, MultibranchedSurface, Prebranch, Sector};

fn branch(i: usize) -> BranchId {
    BranchId(format!("l{i}"))
}

/// `X̄(p₁, …, pₙ)`: a disk `D₁` on `l₁` with degree `p₁`, and annuli `Aᵢ`
/// joining `lᵢ` (oriented degree `−pᵢ`) to `lᵢ₊₁` (oriented degree `pᵢ₊₁`).
///
/// With this sign choice the relation matrix is lower triangular with
/// diagonal `p₁, …, pₙ`.
pub fn seifert_example(p: &[i64]) -> Result<MultibranchedSurface> {
    if p.is_empty() {
        return Err(Error::EmptyDegrees);
    }
    if let Some(&bad) = p.iter().find(|v| v.abs() < 2) {
        return Err(Error::DegreeTooSmall(bad));
    }
    let branches = (1..=p.len()).map(branch).collect();
    let mut sectors = vec![Sector::new("D1", 0, vec![Prebranch::new(branch(1), p[0])])];
    for i in 1..p.len() {
        sectors.push(Sector::new(
            format!("A{i}"),
            0,
            vec![
                Prebranch::new(branch(i), -p[i - 1]),
                Prebranch::new(branch(i + 1), p[i]),
            ],
        ));
    }
    let name = format!(
        "seifert_{}",
        p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_")
    );
    MultibranchedSurface::from_parts(Some(name.replace('-', "m")), branches, sectors).validate(true)
}

/// One orientable sector of genus `g` whose `n` boundary circles cover `n`
/// distinct branches with degrees `signᵢ · pᵢ`.
pub fn one_sector(genus: u32, degrees: &[u64], signs: Option<&[i8]>) -> Result<MultibranchedSurface> {
    if degrees.is_empty() {
        return Err(Error::EmptyDegrees);
    }
    if let Some(signs) = signs {
        if signs.len() != degrees.len() {
            return Err(Error::InvalidArgument(format!(
                "{} signs for {} degrees",
                signs.len(),
                degrees.len()
            )));
        }
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidArgument("signs must be +1 or -1".into()));
        }
    }
    let mut prebranches = Vec::with_capacity(degrees.len());
    for (i, &d) in degrees.iter().enumerate() {
        let d = i64::try_from(d).map_err(|_| Error::InvalidArgument(format!("degree {d} too large")))?;
        let sign = signs.map_or(1, |s| i64::from(s[i]));
        prebranches.push(Prebranch::new(branch(i + 1), sign * d));
    }
    let branches = (1..=degrees.len()).map(branch).collect();
    MultibranchedSurface::from_parts(
        Some("one_sector".into()),
        branches,
        vec![Sector::new("e1", genus, prebranches)],
    )
    .validate(true)
}

/// Four branches and four pairs of pants; sector `eᵢ` meets every branch but
/// `lᵢ`, all with oriented degree `+1`.
pub fn pants_example() -> MultibranchedSurface {
    let branches = (1..=4).map(branch).collect();
    let sectors = (1..=4)
        .map(|i| {
            let pre = (1..=4)
                .filter(|&k| k != i)
                .map(|k| Prebranch::new(branch(k), 1))
                .collect();
            Sector::new(format!("e{i}"), 0, pre)
        })
        .collect();
    MultibranchedSurface::from_parts(Some("pants".into()), branches, sectors)
}

/// `(Γ × S¹) ∪ D` for the rose `Γ` with `2n` petals: one branch (the vertex
/// circle), `2n` annuli with both ends on it, and a disk capping it off.
pub fn rose_times_circle(n: usize) -> Result<MultibranchedSurface> {
    if n == 0 {
        return Err(Error::InvalidArgument("rose needs at least one petal pair".into()));
    }
    let l = branch(0);
    let mut sectors: Vec<Sector> = (1..=2 * n)
        .map(|i| {
            Sector::new(
                format!("P{i}"),
                0,
                vec![Prebranch::new(l.clone(), 1), Prebranch::new(l.clone(), -1)],
            )
        })
        .collect();
    sectors.push(Sector::new("D", 0, vec![Prebranch::new(l.clone(), 1)]));
    MultibranchedSurface::from_parts(Some(format!("rose_{n}")), vec![l], sectors).validate(true)
}

/// The surface `X_G` of a finite multigraph: one punctured sphere per vertex
/// and one annulus per edge, glued along one branch per edge end.
///
/// Vertex sectors carry `+1` on every branch and edge annuli carry `−1` on
/// both ends, so the result is the closed orientable boundary surface of a
/// handlebody with spine `G` (genus `β₁(G)` when `G` is connected).
pub fn graph_to_mbs(vertex_count: usize, edges: &[(usize, usize)]) -> Result<MultibranchedSurface> {
    let mut incident: Vec<Vec<BranchId>> = vec![Vec::new(); vertex_count];
    let mut branches = Vec::new();
    let mut annuli = Vec::new();
    for (k, &(u, v)) in edges.iter().enumerate() {
        if u >= vertex_count || v >= vertex_count {
            return Err(Error::InvalidArgument(format!("edge {u}-{v} leaves the vertex range")));
        }
        let bu = BranchId(format!("b{k}u"));
        let bv = BranchId(format!("b{k}v"));
        incident[u].push(bu.clone());
        incident[v].push(bv.clone());
        branches.push(bu.clone());
        branches.push(bv.clone());
        annuli.push(Sector::new(
            format!("E{k}"),
            0,
            vec![Prebranch::new(bu, -1), Prebranch::new(bv, -1)],
        ));
    }
    let mut sectors = Vec::with_capacity(vertex_count + annuli.len());
    for (v, ends) in incident.into_iter().enumerate() {
        if ends.is_empty() {
            return Err(Error::IsolatedVertex(v));
        }
        sectors.push(Sector::new(
            format!("V{v}"),
            0,
            ends.into_iter().map(|b| Prebranch::new(b, 1)).collect(),
        ));
    }
    sectors.extend(annuli);
    MultibranchedSurface::from_parts(Some("graph".into()), branches, sectors).validate(true)
}

/// One branch and one annulus whose two boundary circles both wrap twice
/// around it in the same direction.
pub fn obstruction_example() -> MultibranchedSurface {
    let l = branch(1);
    MultibranchedSurface::from_parts(
        Some("obstruction".into()),
        vec![l.clone()],
        vec![Sector::new(
            "e1",
            0,
            vec![Prebranch::new(l.clone(), 2), Prebranch::new(l, 2)],
        )],
    )
}
