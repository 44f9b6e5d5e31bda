//! Canonical forms up to isomorphism.
//!
//! Two surfaces are isomorphic when bijections of branches and sectors carry
//! genus and orientability across and match prebranches up to a sign `σ_l`
//! per branch (branch reorientation) and `τ_e` per sector (sector
//! reorientation). The canonical form is the smallest encoding over an
//! individualization–refinement search tree; signs are fixed greedily at each
//! leaf with a parity union–find.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::surface::{BranchId, MultibranchedSurface, Prebranch, Sector};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EntryCode {
    pub branch: usize,
    pub degree: u64,
    /// Sorted signs of the prebranches sharing this sector, branch and
    /// degree; all zero for nonorientable sectors.
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SectorCode {
    pub genus: u32,
    pub orientable: bool,
    pub entries: Vec<EntryCode>,
}

/// Totally ordered isomorphism invariant; equal forms mean isomorphic
/// surfaces when every sector is orientable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub branch_count: usize,
    pub sectors: Vec<SectorCode>,
}

impl CanonicalForm {
    pub fn sector_count(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branch_count == 0 && self.sectors.is_empty()
    }

    /// A representative with branches `b0, b1, …` and sectors `s0, s1, …`.
    pub fn to_surface(&self) -> MultibranchedSurface {
        let branches: Vec<BranchId> = (0..self.branch_count).map(|i| BranchId(format!("b{i}"))).collect();
        let sectors = self
            .sectors
            .iter()
            .enumerate()
            .map(|(i, code)| {
                let prebranches = code
                    .entries
                    .iter()
                    .flat_map(|en| {
                        let b = branches[en.branch].clone();
                        en.signs.iter().map(move |&s| {
                            let sign = if s == 0 { 1 } else { i64::from(s) };
                            Prebranch::new(b.clone(), sign * en.degree as i64)
                        })
                    })
                    .collect();
                Sector {
                    id: format!("s{i}").into(),
                    genus: code.genus,
                    orientable: code.orientable,
                    prebranches,
                }
            })
            .collect();
        MultibranchedSurface::from_parts(None, branches, sectors)
    }
}

/// Incidence structure with branches `0..n` and sectors `n..n+m`.
struct Incidence {
    n: usize,
    m: usize,
    genus: Vec<u32>,
    orientable: Vec<bool>,
    /// Per sector: `(branch, oriented degree)` for each prebranch.
    sector_adj: Vec<Vec<(usize, i64)>>,
    /// Per branch: `(sector, degree)` for each prebranch.
    branch_adj: Vec<Vec<(usize, u64)>>,
    twin_key: Vec<Vec<i64>>,
}

impl Incidence {
    fn new(x: &MultibranchedSurface) -> Self {
        let lookup = x.branch_lookup();
        let n = x.branches().len();
        let m = x.sectors().len();
        let mut sector_adj = Vec::with_capacity(m);
        let mut branch_adj = vec![Vec::new(); n];
        for (si, s) in x.sectors().iter().enumerate() {
            let adj: Vec<(usize, i64)> = s
                .prebranches
                .iter()
                .map(|c| (lookup[&c.branch], c.oriented_degree))
                .collect();
            for &(b, od) in &adj {
                branch_adj[b].push((si, od.unsigned_abs()));
            }
            sector_adj.push(adj);
        }
        let genus = x.sectors().iter().map(|s| s.genus).collect();
        let orientable: Vec<bool> = x.sectors().iter().map(|s| s.orientable).collect();

        // Swapping two nodes with equal twin keys is an automorphism.
        let mut twin_key = Vec::with_capacity(n + m);
        for b in 0..n {
            let mut plain: Vec<(usize, i64)> = Vec::new();
            for (si, adj) in sector_adj.iter().enumerate() {
                for &(bb, od) in adj {
                    if bb == b {
                        plain.push((si, if orientable[si] { od } else { od.abs() }));
                    }
                }
            }
            let mut neg: Vec<(usize, i64)> = plain.iter().map(|&(s, od)| (s, -od)).collect();
            plain.sort();
            neg.sort();
            let best = plain.min(neg);
            twin_key.push(best.into_iter().flat_map(|(s, od)| [s as i64, od]).collect());
        }
        for (si, adj) in sector_adj.iter().enumerate() {
            let norm = |sign: i64| {
                let mut v: Vec<(usize, i64)> = adj
                    .iter()
                    .map(|&(b, od)| (b, if orientable[si] { sign * od } else { od.abs() }))
                    .collect();
                v.sort();
                v
            };
            let best = norm(1).min(norm(-1));
            let mut key = vec![-1, i64::from(x.sectors()[si].genus), i64::from(orientable[si])];
            key.extend(best.into_iter().flat_map(|(b, od)| [b as i64, od]));
            twin_key.push(key);
        }
        Self {
            n,
            m,
            genus,
            orientable,
            sector_adj,
            branch_adj,
            twin_key,
        }
    }

    fn initial_colors(&self) -> Vec<usize> {
        let keys: Vec<(u8, u32, bool)> = (0..self.n)
            .map(|_| (0, 0, false))
            .chain((0..self.m).map(|s| (1, self.genus[s], self.orientable[s])))
            .collect();
        rank(&keys)
    }

    /// Colour refinement on the incidence graph (degrees as edge labels).
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<(usize, Vec<(u64, usize)>)> = (0..self.n + self.m)
                .map(|v| {
                    let mut nb: Vec<(u64, usize)> = if v < self.n {
                        self.branch_adj[v]
                            .iter()
                            .map(|&(s, d)| (d, colors[self.n + s]))
                            .collect()
                    } else {
                        self.sector_adj[v - self.n]
                            .iter()
                            .map(|&(b, od)| (od.unsigned_abs(), colors[b]))
                            .collect()
                    };
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            colors = rank(&sigs);
            let now = count_classes(&colors);
            if now == classes {
                return colors;
            }
            classes = now;
        }
    }

    /// Encoding for a discrete colouring, with greedy sign normalization.
    fn encode(&self, colors: &[usize]) -> CanonicalForm {
        let mut sector_by_label = vec![0usize; self.m];
        for s in 0..self.m {
            sector_by_label[colors[self.n + s] - self.n] = s;
        }
        let mut parity = ParityDsu::new(self.n + self.m);
        let mut sectors = Vec::with_capacity(self.m);
        for &s in &sector_by_label {
            let mut groups: Vec<(usize, u64, usize, Vec<i8>)> = Vec::new();
            let mut items: Vec<(usize, u64, usize, i8)> = self.sector_adj[s]
                .iter()
                .map(|&(b, od)| (colors[b], od.unsigned_abs(), b, od.signum() as i8))
                .collect();
            items.sort_unstable();
            for (label, deg, b, sign) in items {
                match groups.last_mut() {
                    Some(g) if g.0 == label && g.1 == deg => g.3.push(sign),
                    _ => groups.push((label, deg, b, vec![sign])),
                }
            }
            let entries = groups
                .into_iter()
                .map(|(label, degree, b, raw)| {
                    let signs = if self.orientable[s] {
                        let value = |t: i8| {
                            let mut v: Vec<i8> = raw.iter().map(|&r| r * t).collect();
                            v.sort_unstable();
                            v
                        };
                        let t = match parity.relation(b, self.n + s) {
                            Some(t) => t,
                            None => {
                                let (plus, minus) = (value(1), value(-1));
                                if plus == minus {
                                    // symmetric entry: either gauge gives the same
                                    // value, so it must not constrain later ones
                                    1
                                } else {
                                    let t = if plus < minus { 1 } else { -1 };
                                    parity.join(b, self.n + s, t);
                                    t
                                }
                            }
                        };
                        value(t)
                    } else {
                        vec![0; raw.len()]
                    };
                    EntryCode {
                        branch: label,
                        degree,
                        signs,
                    }
                })
                .collect();
            sectors.push(SectorCode {
                genus: self.genus[s],
                orientable: self.orientable[s],
                entries,
            });
        }
        CanonicalForm {
            branch_count: self.n,
            sectors,
        }
    }

    fn search(&self, colors: Vec<usize>, best: &mut Option<CanonicalForm>) {
        let colors = self.refine(colors);
        let total = self.n + self.m;
        let mut size = vec![0usize; total];
        for &c in &colors {
            size[c] += 1;
        }
        let Some(target) = (0..total).find(|&c| size[c] > 1) else {
            let code = self.encode(&colors);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        };
        let mut explored: HashSet<&[i64]> = HashSet::new();
        for v in (0..total).filter(|&v| colors[v] == target) {
            if !explored.insert(&self.twin_key[v]) {
                continue;
            }
            let keys: Vec<(usize, bool)> = (0..total).map(|u| (colors[u], u != v)).collect();
            self.search(rank(&keys), best);
        }
    }
}

fn count_classes(colors: &[usize]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

/// Replace every key by its rank among the distinct keys.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).expect("present"))
        .collect()
}

/// Union–find tracking the relative sign of each node to its root.
struct ParityDsu {
    parent: Vec<usize>,
    sign: Vec<i8>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, i8) {
        if self.parent[x] == x {
            return (x, 1);
        }
        let (root, s) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.sign[x] *= s;
        (root, self.sign[x])
    }

    /// `σ_a σ_b` when already determined.
    fn relation(&mut self, a: usize, b: usize) -> Option<i8> {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        (ra == rb).then_some(sa * sb)
    }

    fn join(&mut self, a: usize, b: usize, product: i8) {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        if ra != rb {
            self.parent[rb] = ra;
            self.sign[rb] = sa * sb * product;
        }
    }
}

pub fn canonical_form(x: &MultibranchedSurface) -> CanonicalForm {
    let inc = Incidence::new(x);
    let mut best = None;
    inc.search(inc.initial_colors(), &mut best);
    best.expect("search reaches at least one leaf")
}

/// Isomorphism test through canonical forms. Sectors that are not orientable
/// are compared by `|od|` only, which can identify non-isomorphic surfaces.
pub fn are_isomorphic(x: &MultibranchedSurface, y: &MultibranchedSurface) -> bool {
    x.branches().len() == y.branches().len()
        && x.sectors().len() == y.sectors().len()
        && x.prebranch_count() == y.prebranch_count()
        && canonical_form(x) == canonical_form(y)
}
