use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{BranchId, MultibranchedSurface, Prebranch, Sector, SectorId};

/// Delete sector `e`; branches left without prebranches are pruned.
pub fn remove_sector(x: &MultibranchedSurface, e: &SectorId) -> Result<MultibranchedSurface> {
    let pos = x.sector_position(e)?;
    let (name, branches, mut sectors) = x.clone().into_parts();
    sectors.remove(pos);
    MultibranchedSurface::from_parts(name, branches, sectors).validate(true)
}

/// The two ends `(l⁻, l⁺)` of a contractible annulus, with their signs.
fn annulus_ends(x: &MultibranchedSurface, e: &SectorId) -> Result<((BranchId, i64), (BranchId, i64))> {
    let s = x.sector(e)?;
    if !s.orientable || s.genus != 0 || s.prebranches.len() != 2 {
        return Err(Error::NotAnAnnulus(e.clone()));
    }
    let (lo, hi) = (&s.prebranches[0], &s.prebranches[1]);
    if lo.degree() != 1 || hi.degree() != 1 {
        return Err(Error::DegreeNotOne(e.clone()));
    }
    if lo.branch == hi.branch {
        return Err(Error::SameBranch(e.clone()));
    }
    Ok((
        (lo.branch.clone(), lo.oriented_degree),
        (hi.branch.clone(), hi.oriented_degree),
    ))
}

pub fn is_contractible_annulus(x: &MultibranchedSurface, e: &SectorId) -> bool {
    annulus_ends(x, e).is_ok()
}

fn fresh_branch_id(x: &MultibranchedSurface, base: String) -> BranchId {
    let taken: HashSet<&str> = x.branches().iter().map(|b| b.0.as_str()).collect();
    if !taken.contains(base.as_str()) {
        return BranchId(base);
    }
    (1..)
        .map(|k| format!("{base}_{k}"))
        .find(|c| !taken.contains(c.as_str()))
        .map(BranchId)
        .expect("unbounded search")
}

/// Collapse annulus `e` onto its core, merging its two boundary branches into
/// one.
///
/// The merged branch is oriented like the annulus core, which agrees with the
/// induced orientation of the first boundary circle `c⁻` and is opposite to
/// that of the second, `c⁺`. A prebranch of degree `k` on `l⁻` therefore gets
/// `k·od(c⁻)`, and one on `l⁺` gets `−k·od(c⁺)`.
pub fn contract_annulus(x: &MultibranchedSurface, e: &SectorId) -> Result<MultibranchedSurface> {
    let ((lo, sign_lo), (hi, sign_hi)) = annulus_ends(x, e)?;
    let merged = fresh_branch_id(x, format!("{lo}_{hi}"));
    let (name, branches, sectors) = x.clone().into_parts();
    let branches = branches
        .into_iter()
        .filter(|b| *b != hi)
        .map(|b| if b == lo { merged.clone() } else { b })
        .collect();
    let sectors = sectors
        .into_iter()
        .filter(|s| &s.id != e)
        .map(|mut s| {
            for c in &mut s.prebranches {
                if c.branch == lo {
                    *c = Prebranch::new(merged.clone(), c.oriented_degree * sign_lo);
                } else if c.branch == hi {
                    *c = Prebranch::new(merged.clone(), -c.oriented_degree * sign_hi);
                }
            }
            s
        })
        .collect();
    MultibranchedSurface::from_parts(name, branches, sectors).validate(true)
}

/// Make every prebranch at `l` a degree-one cover, keeping its orientation.
pub fn reduce_degree(x: &MultibranchedSurface, l: &BranchId) -> Result<MultibranchedSurface> {
    x.branch_position(l)?;
    let (name, branches, mut sectors) = x.clone().into_parts();
    for c in sectors.iter_mut().flat_map(|s| s.prebranches.iter_mut()) {
        if &c.branch == l {
            c.oriented_degree = c.oriented_degree.signum();
        }
    }
    Ok(MultibranchedSurface::from_parts(name, branches, sectors))
}

/// Connected sum of a torus into sector `e`.
pub fn torus_sum(x: &MultibranchedSurface, e: &SectorId) -> Result<MultibranchedSurface> {
    let pos = x.sector_position(e)?;
    if !x.sectors()[pos].orientable {
        return Err(Error::NonorientableSector(e.clone()));
    }
    let (name, branches, mut sectors) = x.clone().into_parts();
    sectors[pos].genus += 1;
    Ok(MultibranchedSurface::from_parts(name, branches, sectors))
}

/// `X = X̂ # F`: each sector becomes one disk per boundary circle, and its
/// genus is returned as a closed surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardDecomposition {
    pub disks: MultibranchedSurface,
    pub closed_genera: Vec<u32>,
}

pub fn standard_decomposition(x: &MultibranchedSurface) -> Result<StandardDecomposition> {
    x.require_orientable()?;
    let mut taken: HashSet<String> = x.sectors().iter().map(|s| s.id.0.clone()).collect();
    let mut sectors = Vec::new();
    let mut closed_genera = Vec::with_capacity(x.sectors().len());
    for s in x.sectors() {
        closed_genera.push(s.genus);
        if s.prebranches.len() == 1 {
            sectors.push(Sector::new(s.id.clone(), 0, s.prebranches.clone()));
            continue;
        }
        for (k, c) in s.prebranches.iter().enumerate() {
            let mut id = format!("{}_{}", s.id, k + 1);
            while taken.contains(&id) {
                id.push('_');
            }
            taken.insert(id.clone());
            sectors.push(Sector::new(id, 0, vec![c.clone()]));
        }
    }
    let disks = MultibranchedSurface::from_parts(x.name().map(str::to_owned), x.branches().to_vec(), sectors);
    Ok(StandardDecomposition { disks, closed_genera })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{obstruction_example, one_sector, pants_example};
    use crate::homology::h1;

    fn disks_joined(od_a: i64, od_b: i64) -> MultibranchedSurface {
        MultibranchedSurface::from_parts(
            None,
            vec!["l1".into(), "l2".into()],
            vec![
                Sector::new("d1", 0, vec![Prebranch::new("l1", 1)]),
                Sector::new("d2", 0, vec![Prebranch::new("l2", 1)]),
                Sector::new("a", 0, vec![Prebranch::new("l1", od_a), Prebranch::new("l2", od_b)]),
            ],
        )
    }

    #[test]
    fn remove_from_pants() {
        let y = remove_sector(&pants_example(), &"e1".into()).unwrap();
        assert_eq!((y.branches().len(), y.sectors().len()), (4, 3));
        for l in y.branches() {
            assert!(y.branch_index(l).unwrap() >= 1);
        }
    }

    #[test]
    fn remove_last_sector_empties() {
        let y = remove_sector(&one_sector(0, &[1], None).unwrap(), &"e1".into()).unwrap();
        assert!(y.is_empty());
        assert_eq!(
            remove_sector(&pants_example(), &"zz".into()),
            Err(Error::UnknownSector("zz".into()))
        );
    }

    #[test]
    fn contract_joined_disks_to_sphere() {
        let x = disks_joined(1, 1);
        let y = contract_annulus(&x, &"a".into()).unwrap();
        assert_eq!(y.branches().len(), 1);
        assert_eq!(y.sectors().len(), 2);
        assert_eq!(y.euler_characteristic(), 2);
        assert_eq!(h1(&x).unwrap(), h1(&y).unwrap());
        assert!(h1(&y).unwrap().is_torsion_free());
    }

    #[test]
    fn contract_lone_annulus_empties() {
        let x = one_sector(0, &[1, 1], Some(&[1, -1])).unwrap();
        assert!(contract_annulus(&x, &"e1".into()).unwrap().is_empty());
    }

    #[test]
    fn contraction_preconditions() {
        let x = one_sector(0, &[2, 1], None).unwrap();
        assert_eq!(
            contract_annulus(&x, &"e1".into()),
            Err(Error::DegreeNotOne("e1".into()))
        );
        let pants = pants_example();
        assert_eq!(
            contract_annulus(&pants, &"e1".into()),
            Err(Error::NotAnAnnulus("e1".into()))
        );
        let same = MultibranchedSurface::from_parts(
            None,
            vec!["l".into()],
            vec![Sector::new(
                "a",
                0,
                vec![Prebranch::new("l", 1), Prebranch::new("l", -1)],
            )],
        );
        assert_eq!(contract_annulus(&same, &"a".into()), Err(Error::SameBranch("a".into())));
    }

    #[test]
    fn contraction_sign_rule_preserves_torsion_class() {
        // e covers both ends positively; with a (+1, +1) annulus the two ends
        // are opposite in homology, so e becomes null-homologous
        let x = MultibranchedSurface::from_parts(
            None,
            vec!["p".into(), "q".into()],
            vec![
                Sector::new("a", 0, vec![Prebranch::new("p", 1), Prebranch::new("q", 1)]),
                Sector::new("e", 0, vec![Prebranch::new("p", 1), Prebranch::new("q", 1)]),
            ],
        );
        let y = contract_annulus(&x, &"a".into()).unwrap();
        assert_eq!(
            y.sectors()[0]
                .prebranches
                .iter()
                .map(|c| c.oriented_degree)
                .sum::<i64>(),
            0
        );
        assert_eq!(h1(&x).unwrap(), h1(&y).unwrap());
    }

    #[test]
    fn reduce_keeps_signs() {
        let y = reduce_degree(&obstruction_example(), &"l1".into()).unwrap();
        let ods: Vec<i64> = y.sectors()[0].prebranches.iter().map(|c| c.oriented_degree).collect();
        assert_eq!(ods, vec![1, 1]);
        assert_eq!(reduce_degree(&y, &"l1".into()).unwrap(), y);
        let neg = one_sector(0, &[3], Some(&[-1])).unwrap();
        assert_eq!(
            reduce_degree(&neg, &"l1".into()).unwrap().sectors()[0].prebranches[0].oriented_degree,
            -1
        );
        assert_eq!(reduce_degree(&neg, &"x".into()), Err(Error::UnknownBranch("x".into())));
    }

    #[test]
    fn torus_sum_adds_two_free_generators() {
        let x = one_sector(0, &[1], None).unwrap();
        let y = torus_sum(&x, &"e1".into()).unwrap();
        assert_eq!(y.sectors()[0].genus, 1);
        assert_eq!(h1(&y).unwrap().free_rank(), h1(&x).unwrap().free_rank() + 2);
        assert_eq!(torus_sum(&y, &"e1".into()).unwrap().sectors()[0].genus, 2);
    }

    #[test]
    fn decompositions() {
        let disk = one_sector(0, &[1], None).unwrap();
        let d = standard_decomposition(&disk).unwrap();
        assert_eq!(d.disks, disk);
        assert_eq!(d.closed_genera, vec![0]);

        let pants = one_sector(0, &[1, 1, 1], None).unwrap();
        let d = standard_decomposition(&pants).unwrap();
        assert_eq!(d.disks.sectors().len(), 3);
        assert_eq!(d.closed_genera, vec![0]);

        let g2 = one_sector(2, &[1, 1], None).unwrap();
        let d = standard_decomposition(&g2).unwrap();
        assert_eq!(d.disks.sectors().len(), 2);
        assert!(d
            .disks
            .sectors()
            .iter()
            .all(|s| s.genus == 0 && s.prebranches.len() == 1));
        assert_eq!(d.closed_genera, vec![2]);
        // χ(X) = χ(X̂) + Σ (χ(F_i) − 2)  (each tubing costs 2)
        let chi_f: i64 = d.closed_genera.iter().map(|&g| 2 - 2 * i64::from(g)).sum();
        let tubes: i64 = g2.sectors().iter().map(|s| s.prebranches.len() as i64).sum();
        assert_eq!(
            g2.euler_characteristic(),
            d.disks.euler_characteristic() + chi_f - 2 * tubes
        );
    }
}
