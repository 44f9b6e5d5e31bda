//! Neighborhoods of regular multibranched surfaces, combinatorially.
//!
//! A neighborhood is assembled from a solid torus per branch and a thickened
//! sector `e × [-1, 1]` per sector. Its boundary consists of the two sides
//! `e × {±1}` of every sector and, on each branch torus, the annuli left
//! between the attaching bands (one per prebranch, in the cyclic order fixed
//! by a [`CircularPermutationSystem`]). How many parallel curves cut the
//! torus does not depend on the slope, so neither the boundary surface nor the
//! dual graph depends on the [`SlopeSystem`].

use std::fmt;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::surface::{BranchId, MultibranchedSurface, SectorId};

const SAMPLE_SEED: u64 = 0x6d62_735f_6e62_6864;

/// A prebranch, addressed by sector position and slot within the sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrebranchRef {
    pub sector: usize,
    pub slot: usize,
}

/// Cyclic order of the prebranches around every branch, indexed like
/// [`MultibranchedSurface::branches`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircularPermutationSystem {
    orders: Vec<Vec<PrebranchRef>>,
}

impl CircularPermutationSystem {
    /// Every branch keeps its prebranches in listing order.
    pub fn identity(x: &MultibranchedSurface) -> Self {
        Self {
            orders: x
                .branches()
                .iter()
                .map(|l| {
                    x.prebranches_at(l)
                        .map(|(sector, slot)| PrebranchRef { sector, slot })
                        .collect()
                })
                .collect(),
        }
    }

    /// Checks that `orders` lists exactly the prebranches of each branch.
    pub fn new(x: &MultibranchedSurface, orders: Vec<Vec<PrebranchRef>>) -> Result<Self> {
        let identity = Self::identity(x);
        if orders.len() != identity.orders.len() {
            return Err(Error::InvalidArgument(format!(
                "permutation system has {} branches, surface has {}",
                orders.len(),
                identity.orders.len()
            )));
        }
        for (i, (given, expected)) in orders.iter().zip(&identity.orders).enumerate() {
            let mut a = given.clone();
            let mut b = expected.clone();
            a.sort();
            b.sort();
            if a != b {
                return Err(Error::InvalidArgument(format!(
                    "cyclic order at branch {} is not a permutation of its prebranches",
                    x.branches()[i]
                )));
            }
        }
        Ok(Self { orders })
    }

    pub fn orders(&self) -> &[Vec<PrebranchRef>] {
        &self.orders
    }

    /// Human-readable form, e.g. `l1: (e1.0 e2.1 e3.0)`.
    pub fn describe(&self, x: &MultibranchedSurface) -> String {
        self.orders
            .iter()
            .zip(x.branches())
            .map(|(order, l)| {
                let items: Vec<String> = order
                    .iter()
                    .map(|r| format!("{}.{}", x.sectors()[r.sector].id, r.slot))
                    .collect();
                format!("{l}: ({})", items.join(" "))
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// A slope `p/q` per branch with `q = d(l)` and `gcd(p, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeSystem {
    slopes: Vec<(i64, u64)>,
}

impl SlopeSystem {
    pub fn new(x: &MultibranchedSurface, slopes: Vec<(i64, u64)>) -> Result<Self> {
        if slopes.len() != x.branches().len() {
            return Err(Error::InvalidArgument("one slope per branch required".into()));
        }
        for (l, &(p, q)) in x.branches().iter().zip(&slopes) {
            let d = x.branch_degree(l)?;
            if q != d {
                return Err(Error::InvalidArgument(format!(
                    "slope denominator {q} at {l} must equal degree {d}"
                )));
            }
            if p.unsigned_abs().gcd(&q) != 1 {
                return Err(Error::InvalidArgument(format!("slope {p}/{q} at {l} is not reduced")));
            }
        }
        Ok(Self { slopes })
    }

    /// Slope `1/d(l)` everywhere.
    pub fn standard(x: &MultibranchedSurface) -> Result<Self> {
        let slopes = x
            .branches()
            .iter()
            .map(|l| x.branch_degree(l).map(|d| (1, d)))
            .collect::<Result<_>>()?;
        Self::new(x, slopes)
    }

    pub fn slopes(&self) -> &[(i64, u64)] {
        &self.slopes
    }
}

/// Result of [`enumerate_permutation_systems`].
#[derive(Debug, Clone)]
pub struct PermutationSystems {
    pub systems: Vec<CircularPermutationSystem>,
    /// `false` when the systems are a sample of a larger space.
    pub exhaustive: bool,
    /// Size of the full space up to rotation and reflection, when it fits in
    /// a `u128`.
    pub total: Option<u128>,
}

fn factorial_half(k: usize) -> Option<u128> {
    if k <= 2 {
        return Some(1);
    }
    let mut acc: u128 = 1;
    for v in 3..k as u128 {
        acc = acc.checked_mul(v)?;
    }
    // (k-1)!/2 = 3·4·…·(k-1)
    Some(acc)
}

/// All cyclic orders of `items`, one representative per rotation/reflection
/// class: the first item stays in front, and for three or more items the
/// second is smaller than the last.
fn cyclic_orders(items: &[PrebranchRef]) -> Vec<Vec<PrebranchRef>> {
    let k = items.len();
    if k <= 2 {
        return vec![items.to_vec()];
    }
    let mut idx: Vec<usize> = (1..k).collect();
    let mut out = Vec::new();
    loop {
        if idx[0] < idx[k - 2] {
            let mut order = vec![items[0]];
            order.extend(idx.iter().map(|&i| items[i]));
            out.push(order);
        }
        if !next_permutation(&mut idx) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn random_cyclic_order(items: &[PrebranchRef], rng: &mut ChaCha8Rng) -> Vec<PrebranchRef> {
    let mut order = items.to_vec();
    if order.len() > 2 {
        order[1..].shuffle(rng);
        let k = order.len();
        if order[1] > order[k - 1] {
            order[1..].reverse();
        }
    }
    order
}

/// Circular permutation systems of a regular surface, deduplicated up to
/// rotation and reflection at each branch.
///
/// When the space has more than `cap` members, the result is the identity
/// system followed by `cap` pseudo-random systems drawn from a fixed-seed
/// stream, so a larger cap always extends a smaller one.
pub fn enumerate_permutation_systems(x: &MultibranchedSurface, cap: usize) -> Result<PermutationSystems> {
    x.require_regular()?;
    let identity = CircularPermutationSystem::identity(x);
    let total = identity
        .orders
        .iter()
        .try_fold(1u128, |acc, o| acc.checked_mul(factorial_half(o.len())?));
    match total {
        Some(t) if t <= cap as u128 => {
            let per_branch: Vec<Vec<Vec<PrebranchRef>>> = identity.orders.iter().map(|o| cyclic_orders(o)).collect();
            let mut digits = vec![0usize; per_branch.len()];
            let mut systems = Vec::with_capacity(t as usize);
            loop {
                systems.push(CircularPermutationSystem {
                    orders: digits
                        .iter()
                        .zip(&per_branch)
                        .map(|(&d, opts)| opts[d].clone())
                        .collect(),
                });
                // mixed-radix increment, last branch fastest
                let mut pos = digits.len();
                loop {
                    if pos == 0 {
                        return Ok(PermutationSystems {
                            systems,
                            exhaustive: true,
                            total,
                        });
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < per_branch[pos].len() {
                        break;
                    }
                    digits[pos] = 0;
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let mut systems = Vec::with_capacity(cap + 1);
            systems.push(identity.clone());
            for _ in 0..cap {
                systems.push(CircularPermutationSystem {
                    orders: identity
                        .orders
                        .iter()
                        .map(|o| random_cyclic_order(o, &mut rng))
                        .collect(),
                });
            }
            Ok(PermutationSystems {
                systems,
                exhaustive: false,
                total,
            })
        }
    }
}

/// A piece of the boundary of a neighborhood.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    /// `e × {+1}` or `e × {-1}`.
    Side { sector: SectorId, positive: bool },
    /// The annulus of the branch torus following the band at cyclic position
    /// `slot`.
    Gap { branch: BranchId, slot: usize },
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Side { sector, positive } => write!(f, "{sector}{}", if *positive { "+" } else { "-" }),
            Piece::Gap { branch, slot } => write!(f, "{branch}#{slot}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub id: usize,
    pub genus: u64,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceAssignment {
    pub piece: Piece,
    pub component: usize,
}

/// The closed surface `∂N` and how its pieces fall into components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySurface {
    pub components: Vec<BoundaryComponent>,
    pub piece_assignment: Vec<PieceAssignment>,
    /// How often each gap-annulus boundary circle was glued (all 1 when sound).
    #[serde(skip)]
    circle_matches: Vec<u32>,
}

impl BoundarySurface {
    pub fn total_genus(&self) -> u64 {
        self.components.iter().map(|c| c.genus).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(|c| c.euler_characteristic).sum()
    }

    pub fn circle_matches(&self) -> &[u32] {
        &self.circle_matches
    }

    fn component_of(&self, piece: &Piece) -> Option<usize> {
        self.piece_assignment
            .iter()
            .find(|a| &a.piece == piece)
            .map(|a| a.component)
    }
}

fn require_neighborhood_input(x: &MultibranchedSurface) -> Result<()> {
    x.require_regular()?;
    x.require_orientable()?;
    if !x.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Assemble `∂N(X; P)`.
///
/// `flips`, when given, holds one bit per prebranch (sectors in order, slots
/// in order); a set bit exchanges the gap annuli met by the two sides at that
/// prebranch.
pub fn boundary_surface(
    x: &MultibranchedSurface,
    p: &CircularPermutationSystem,
    flips: Option<&[bool]>,
) -> Result<BoundarySurface> {
    require_neighborhood_input(x)?;
    if p.orders.len() != x.branches().len() {
        return Err(Error::InvalidArgument(
            "permutation system does not match surface".into(),
        ));
    }
    let m = x.sectors().len();
    let mut slot_base = Vec::with_capacity(m);
    let mut acc = 0;
    for s in x.sectors() {
        slot_base.push(acc);
        acc += s.prebranches.len();
    }
    if let Some(f) = flips {
        if f.len() != acc {
            return Err(Error::InvalidArgument(format!(
                "{} flip bits for {acc} prebranches",
                f.len()
            )));
        }
    }

    // pieces: sector sides first, then gap annuli branch by branch
    let mut gap_base = Vec::with_capacity(p.orders.len());
    let mut n_pieces = 2 * m;
    for order in &p.orders {
        gap_base.push(n_pieces);
        n_pieces += order.len();
    }
    let mut dsu = DisjointSet::new(n_pieces);
    // gap circle 2*g is the start (after band j), 2*g+1 the end (before band j+1)
    let mut circle_matches = vec![0u32; 2 * (n_pieces - 2 * m)];
    for (b, order) in p.orders.iter().enumerate() {
        let k = order.len();
        for (j, r) in order.iter().enumerate() {
            let c = &x.sectors()[r.sector].prebranches[r.slot];
            let flipped = flips.is_some_and(|f| f[slot_base[r.sector] + r.slot]);
            let up = gap_base[b] + j;
            let down = gap_base[b] + (j + k - 1) % k;
            let positive_up = (c.oriented_degree > 0) != flipped;
            let (plus_target, minus_target) = if positive_up {
                ((up, 0), (down, 1))
            } else {
                ((down, 1), (up, 0))
            };
            for (side, (gap, end)) in [(0, plus_target), (1, minus_target)] {
                dsu.union(2 * r.sector + side, gap);
                circle_matches[2 * (gap - 2 * m) + end] += 1;
            }
        }
    }
    if circle_matches.iter().any(|&c| c != 1) {
        return Err(Error::InternalMismatch("gap circle glued other than once".into()));
    }

    let (labels, k) = dsu.labels();
    let mut chi = vec![0i64; k];
    for (si, s) in x.sectors().iter().enumerate() {
        let e = s.euler_characteristic();
        chi[labels[2 * si]] += e;
        chi[labels[2 * si + 1]] += e;
    }
    let mut components = Vec::with_capacity(k);
    for (id, &c) in chi.iter().enumerate() {
        if c % 2 != 0 || c > 2 {
            return Err(Error::OddComponentChi { component: id, chi: c });
        }
        components.push(BoundaryComponent {
            id,
            genus: ((2 - c) / 2) as u64,
            euler_characteristic: c,
        });
    }
    let mut piece_assignment = Vec::with_capacity(n_pieces);
    for (si, s) in x.sectors().iter().enumerate() {
        for (side, positive) in [(0, true), (1, false)] {
            piece_assignment.push(PieceAssignment {
                piece: Piece::Side {
                    sector: s.id.clone(),
                    positive,
                },
                component: labels[2 * si + side],
            });
        }
    }
    for (b, order) in p.orders.iter().enumerate() {
        for slot in 0..order.len() {
            piece_assignment.push(PieceAssignment {
                piece: Piece::Gap {
                    branch: x.branches()[b].clone(),
                    slot,
                },
                component: labels[gap_base[b] + slot],
            });
        }
    }
    Ok(BoundarySurface {
        components,
        piece_assignment,
        circle_matches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualEdge {
    pub sector: SectorId,
    pub source: usize,
    pub target: usize,
}

/// Abstract dual graph: boundary components as vertices, sectors as edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: Vec<BoundaryComponent>,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    pub fn from_boundary(x: &MultibranchedSurface, boundary: &BoundarySurface) -> Self {
        let edges = x
            .sectors()
            .iter()
            .map(|s| {
                let side = |positive| {
                    boundary
                        .component_of(&Piece::Side {
                            sector: s.id.clone(),
                            positive,
                        })
                        .expect("every side is assigned")
                };
                DualEdge {
                    sector: s.id.clone(),
                    source: side(true),
                    target: side(false),
                }
            })
            .collect();
        Self {
            vertices: boundary.components.clone(),
            edges,
        }
    }

    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSet::new(self.vertices.len());
        for e in &self.edges {
            dsu.union(e.source, e.target);
        }
        dsu.labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `β = #edges − #vertices + #components`.
    pub fn betti_number(&self) -> u64 {
        (self.edges.len() + self.component_count() - self.vertices.len()) as u64
    }
}

pub fn dual_graph(x: &MultibranchedSurface, p: &CircularPermutationSystem) -> Result<DualGraph> {
    let boundary = boundary_surface(x, p, None)?;
    Ok(DualGraph::from_boundary(x, &boundary))
}

/// A neighborhood `N(X; P, S)`; the slope system is recorded but does not
/// enter the boundary combinatorics.
#[derive(Debug, Clone)]
pub struct Neighborhood<'a> {
    pub surface: &'a MultibranchedSurface,
    pub permutations: CircularPermutationSystem,
    pub slopes: SlopeSystem,
}

impl Neighborhood<'_> {
    pub fn boundary(&self) -> Result<BoundarySurface> {
        boundary_surface(self.surface, &self.permutations, None)
    }

    pub fn dual_graph(&self) -> Result<DualGraph> {
        dual_graph(self.surface, &self.permutations)
    }

    /// `g(∂N) + β(G_N)`, an upper bound for the embeddable genus of `N`.
    pub fn genus_bound(&self) -> Result<u64> {
        let b = self.boundary()?;
        Ok(b.total_genus() + DualGraph::from_boundary(self.surface, &b).betti_number())
    }
}

/// `#branches + #sectors`, an upper bound for the genus of a regular surface.
pub fn genus_upper_bound_sectors(x: &MultibranchedSurface) -> Result<u64> {
    x.require_regular()?;
    Ok((x.branches().len() + x.sectors().len()) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeegaardBound {
    pub bound: u64,
    /// Every permutation system (and flip assignment, when enabled) was tried.
    pub exhaustive: bool,
    pub witness: CircularPermutationSystem,
    pub witness_flips: Option<Vec<bool>>,
    pub boundary_genus: u64,
    pub dual_betti: u64,
    /// The witness dual graph was disconnected.
    pub dual_graph_disconnected: bool,
    pub evaluated: usize,
}

fn flip_assignments(k: usize, cap: usize) -> (Vec<Vec<bool>>, bool) {
    if k < usize::BITS as usize && (1usize << k) <= cap {
        let all = (0..1usize << k)
            .map(|mask| (0..k).map(|i| mask >> i & 1 == 1).collect())
            .collect();
        (all, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 0xf11b5);
        let mut out = vec![vec![false; k]];
        for _ in 0..cap {
            out.push((0..k).map(|_| rand::Rng::gen(&mut rng)).collect());
        }
        (out, false)
    }
}

/// Minimum of `g(∂N) + β(G_N)` over the enumerated permutation systems (and
/// side flips when `enumerate_flips` is set). A capped search still returns a
/// valid upper bound.
pub fn genus_upper_bound_heegaard(
    x: &MultibranchedSurface,
    cap: usize,
    enumerate_flips: bool,
) -> Result<HeegaardBound> {
    require_neighborhood_input(x)?;
    let systems = enumerate_permutation_systems(x, cap)?;
    let (flips, flips_exhaustive) = if enumerate_flips {
        let (f, ex) = flip_assignments(x.prebranch_count(), cap);
        (f.into_iter().map(Some).collect(), ex)
    } else {
        (vec![None], true)
    };
    let mut best: Option<HeegaardBound> = None;
    let mut evaluated = 0;
    for p in &systems.systems {
        for f in &flips {
            let boundary = boundary_surface(x, p, f.as_deref())?;
            let dual = DualGraph::from_boundary(x, &boundary);
            let g = boundary.total_genus();
            let beta = dual.betti_number();
            evaluated += 1;
            if best.as_ref().is_none_or(|b| g + beta < b.bound) {
                best = Some(HeegaardBound {
                    bound: g + beta,
                    exhaustive: false,
                    witness: p.clone(),
                    witness_flips: f.clone(),
                    boundary_genus: g,
                    dual_betti: beta,
                    dual_graph_disconnected: !dual.is_connected(),
                    evaluated: 0,
                });
            }
        }
    }
    let mut best = best.expect("at least the identity system is evaluated");
    best.exhaustive = systems.exhaustive && flips_exhaustive;
    best.evaluated = evaluated;
    Ok(best)
}

/// The smaller of [`genus_upper_bound_sectors`] and
/// [`genus_upper_bound_heegaard`] (without flips).
pub fn best_genus_upper_bound(x: &MultibranchedSurface, cap: usize) -> Result<u64> {
    let sectors = genus_upper_bound_sectors(x)?;
    let heegaard = genus_upper_bound_heegaard(x, cap, false)?;
    Ok(sectors.min(heegaard.bound))
}
