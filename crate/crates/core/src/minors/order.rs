//! The minor order, neighborhood-minor certificates and obstruction-set
//! candidacy.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::canonical::{canonical_form, CanonicalForm};
use super::ops::{contract_annulus, is_contractible_annulus, reduce_degree, remove_sector, torus_sum};
use crate::error::{Error, Result};
use crate::homology::{h1, FgAbelianGroup};
use crate::neighborhood::best_genus_upper_bound;
use crate::surface::{BranchId, MultibranchedSurface, SectorId};

/// States explored by [`neighborhood_minor_certificate`] before giving up.
pub const DEFAULT_SEARCH_BUDGET: usize = 200_000;

/// One-step minors of `x` under sector removal and annulus contraction.
pub fn one_step_minors(x: &MultibranchedSurface) -> Vec<MultibranchedSurface> {
    let mut out = Vec::new();
    for s in x.sectors() {
        out.push(remove_sector(x, &s.id).expect("sector exists"));
        if is_contractible_annulus(x, &s.id) {
            out.push(contract_annulus(x, &s.id).expect("checked contractible"));
        }
    }
    out
}

/// Canonical forms of every minor of `x`, `x` itself included.
///
/// Breadth-first closure under removal and contraction. Each step drops the
/// sector count by one, so the search terminates.
pub fn all_minors(x: &MultibranchedSurface, max_results: usize) -> Result<BTreeSet<CanonicalForm>> {
    let start = x.validate(true)?;
    let mut seen = BTreeSet::new();
    seen.insert(canonical_form(&start));
    let mut queue = VecDeque::from([start]);
    while let Some(y) = queue.pop_front() {
        for z in one_step_minors(&y) {
            let form = canonical_form(&z);
            if seen.insert(form.clone()) {
                if seen.len() > max_results {
                    return Err(Error::ResultCapExceeded(max_results));
                }
                queue.push_back(form.to_surface());
            }
        }
    }
    Ok(seen)
}

/// `x ≺ y`: some sequence of removals and contractions turns `y` into a
/// surface isomorphic to `x`. Reflexive.
pub fn is_minor(x: &MultibranchedSurface, y: &MultibranchedSurface, max_results: usize) -> Result<bool> {
    if x.sectors().len() > y.sectors().len() {
        return Ok(false);
    }
    let target = canonical_form(&x.validate(true)?);
    Ok(all_minors(y, max_results)?.contains(&target))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", content = "target", rename_all = "snake_case")]
pub enum MinorStep {
    RemoveSector(SectorId),
    ContractAnnulus(SectorId),
    ReduceDegree(BranchId),
    TorusSum(SectorId),
}

impl fmt::Display for MinorStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorStep::RemoveSector(e) => write!(f, "remove-sector {e}"),
            MinorStep::ContractAnnulus(e) => write!(f, "contract-annulus {e}"),
            MinorStep::ReduceDegree(l) => write!(f, "reduce-degree {l}"),
            MinorStep::TorusSum(e) => write!(f, "torus-sum {e}"),
        }
    }
}

impl MinorStep {
    pub fn apply(&self, x: &MultibranchedSurface) -> Result<MultibranchedSurface> {
        match self {
            MinorStep::RemoveSector(e) => remove_sector(x, e),
            MinorStep::ContractAnnulus(e) => contract_annulus(x, e),
            MinorStep::ReduceDegree(l) => reduce_degree(x, l),
            MinorStep::TorusSum(e) => torus_sum(x, e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub step: MinorStep,
    pub result: MultibranchedSurface,
}

/// A replayable sequence of operations leading from a source surface to a
/// target.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MinorCertificate {
    pub steps: Vec<CertificateStep>,
}

impl MinorCertificate {
    /// Apply the steps to `source`, checking each recorded intermediate.
    pub fn replay(&self, source: &MultibranchedSurface) -> Result<MultibranchedSurface> {
        let mut cur = source.clone();
        for (i, s) in self.steps.iter().enumerate() {
            cur = s.step.apply(&cur)?;
            if cur != s.result {
                return Err(Error::InternalMismatch(format!(
                    "certificate step {i} ({}) does not replay",
                    s.step
                )));
            }
        }
        Ok(cur)
    }

    pub fn verify(&self, source: &MultibranchedSurface, target: &MultibranchedSurface) -> Result<bool> {
        Ok(canonical_form(&self.replay(source)?) == canonical_form(target))
    }
}

fn total_genus(x: &MultibranchedSurface) -> u64 {
    x.sectors().iter().map(|s| u64::from(s.genus)).sum()
}

/// Steps that certify `result ≼_N source` when applied to a regular surface.
fn certified_steps(x: &MultibranchedSurface) -> Vec<MinorStep> {
    let mut steps = Vec::new();
    for s in x.sectors() {
        if is_contractible_annulus(x, &s.id) {
            steps.push(MinorStep::ContractAnnulus(s.id.clone()));
        }
    }
    for l in x.branches() {
        let reducible = x
            .sectors()
            .iter()
            .flat_map(|s| &s.prebranches)
            .any(|c| &c.branch == l && c.degree() > 1);
        if reducible {
            steps.push(MinorStep::ReduceDegree(l.clone()));
        }
    }
    for s in x.sectors().iter().filter(|s| s.orientable) {
        steps.push(MinorStep::TorusSum(s.id.clone()));
    }
    steps
}

/// Search up to `depth` annulus contractions, degree reductions and torus
/// sums starting from `y` for a surface isomorphic to `x`.
///
/// A certificate proves that `x` is a neighborhood minor of `y`; `None` only
/// means none was found within the depth.
pub fn neighborhood_minor_certificate(
    x: &MultibranchedSurface,
    y: &MultibranchedSurface,
    depth: usize,
) -> Result<Option<MinorCertificate>> {
    neighborhood_minor_certificate_with_budget(x, y, depth, DEFAULT_SEARCH_BUDGET)
}

pub fn neighborhood_minor_certificate_with_budget(
    x: &MultibranchedSurface,
    y: &MultibranchedSurface,
    depth: usize,
    budget: usize,
) -> Result<Option<MinorCertificate>> {
    x.require_regular()?;
    y.require_regular()?;
    let target = canonical_form(x);
    let target_sectors = x.sectors().len();
    let target_genus = total_genus(x);

    // form -> (parent form, step taken from it)
    let mut parents: HashMap<CanonicalForm, Option<(CanonicalForm, MinorStep)>> = HashMap::new();
    let mut surfaces: HashMap<CanonicalForm, MultibranchedSurface> = HashMap::new();
    let start = canonical_form(y);
    parents.insert(start.clone(), None);
    surfaces.insert(start.clone(), y.clone());
    let mut frontier = vec![start];
    let mut found = None;
    'levels: for level in 0..=depth {
        if let Some(hit) = frontier.iter().find(|f| **f == target) {
            found = Some(hit.clone());
            break;
        }
        if level == depth {
            break;
        }
        let mut next = Vec::new();
        for form in &frontier {
            let cur = surfaces[form].clone();
            for step in certified_steps(&cur) {
                let z = step.apply(&cur)?;
                if z.sectors().len() < target_sectors || total_genus(&z) > target_genus {
                    continue;
                }
                let zf = canonical_form(&z);
                if parents.contains_key(&zf) {
                    continue;
                }
                parents.insert(zf.clone(), Some((form.clone(), step)));
                surfaces.insert(zf.clone(), z);
                if parents.len() > budget {
                    return Err(Error::SearchBudgetExceeded(budget));
                }
                if zf == target {
                    found = Some(zf);
                    break 'levels;
                }
                next.push(zf);
            }
        }
        frontier = next;
    }
    let Some(mut cur) = found else {
        return Ok(None);
    };
    let mut rev = Vec::new();
    while let Some(Some((prev, step))) = parents.get(&cur) {
        rev.push(step.clone());
        cur = prev.clone();
    }
    // every stored surface descends from `y` along its parent chain, so the
    // recorded ids replay directly
    let mut steps = Vec::with_capacity(rev.len());
    let mut surface = y.clone();
    for step in rev.into_iter().rev() {
        surface = step.apply(&surface)?;
        steps.push(CertificateStep {
            step,
            result: surface.clone(),
        });
    }
    Ok(Some(MinorCertificate { steps }))
}

/// Genus bound for `x` obtained from a neighborhood-minor certificate out of
/// `y`: `g(x) ≤ g(y)`, so every bound for `y` also bounds `x`. Returns the
/// smaller of that and `x`'s own best bound.
pub fn genus_bound_via_certificate(
    x: &MultibranchedSurface,
    y: &MultibranchedSurface,
    certificate: &MinorCertificate,
    cap: usize,
) -> Result<u64> {
    if !certificate.verify(y, x)? {
        return Err(Error::InternalMismatch(
            "certificate does not lead to the target".into(),
        ));
    }
    let own = best_genus_upper_bound(x, cap)?;
    Ok(own.min(best_genus_upper_bound(y, cap)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Candidacy {
    Candidate,
    NotCandidate,
    Unknown,
}

/// Outcome of [`obstruction_candidate_s3`].
///
/// `Candidate` is necessary evidence only: torsion-free homology does not
/// certify that a proper minor embeds in `S³`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub verdict: Candidacy,
    pub h1: Option<FgAbelianGroup>,
    pub proper_minors: usize,
    /// A proper minor that is itself obstructed, when one exists.
    pub obstructed_minor: Option<CanonicalForm>,
    pub note: String,
}

/// Is `x` a candidate member of the obstruction set for embedding in `S³`?
pub fn obstruction_candidate_s3(x: &MultibranchedSurface, max_results: usize) -> Result<ObstructionReport> {
    let own = h1(x)?;
    if own.is_torsion_free() {
        return Ok(ObstructionReport {
            verdict: Candidacy::NotCandidate,
            h1: Some(own),
            proper_minors: 0,
            obstructed_minor: None,
            note: "H1 is torsion-free, so no obstruction is detected".into(),
        });
    }
    let me = canonical_form(x);
    let minors = all_minors(x, max_results)?;
    let mut proper = 0;
    for form in minors.iter().filter(|f| **f != me) {
        proper += 1;
        match h1(&form.to_surface()) {
            Ok(g) if !g.is_torsion_free() => {
                return Ok(ObstructionReport {
                    verdict: Candidacy::NotCandidate,
                    h1: Some(own),
                    proper_minors: proper,
                    obstructed_minor: Some(form.clone()),
                    note: format!("proper minor with H1 = {g} is already obstructed"),
                });
            }
            Ok(_) => {}
            Err(Error::NonorientableSector(_)) => {
                return Ok(ObstructionReport {
                    verdict: Candidacy::Unknown,
                    h1: Some(own),
                    proper_minors: proper,
                    obstructed_minor: None,
                    note: "a proper minor has a nonorientable sector".into(),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ObstructionReport {
        verdict: Candidacy::Candidate,
        h1: Some(own),
        proper_minors: proper,
        obstructed_minor: None,
        note: "H1 has torsion and every proper minor is torsion-free; \
               embeddability of the proper minors is not certified"
            .into(),
    })
}
