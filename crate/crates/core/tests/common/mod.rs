//! Independent oracles and random generators shared by the integration tests.
//!
//! Nothing here calls into the library's Smith normal form, canonical forms
//! or minor enumeration.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mbs::{BranchId, MultibranchedSurface, Prebranch, Sector};
use rand::seq::SliceRandom;
use rand::Rng;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `d_k`: gcd of all `k × k` minors, for `k = 1 ..` until they all vanish.
/// The length of the result is the rank.
pub fn determinantal_divisors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = gcd(g, det(sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

/// Strip `±1` entries: clearing the rest of their column and deleting the
/// row and column changes the cokernel only by a unit factor.
fn strip_units(m: &[Vec<i128>]) -> (usize, Vec<Vec<i128>>) {
    let mut m: Vec<Vec<i128>> = m.iter().filter(|r| r.iter().any(|&v| v != 0)).cloned().collect();
    let mut units = 0;
    while let Some((r, c)) = m
        .iter()
        .enumerate()
        .find_map(|(r, row)| row.iter().position(|v| v.abs() == 1).map(|c| (r, c)))
    {
        let pivot = m[r][c];
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c] * pivot;
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
            }
        }
        m.remove(r);
        for row in &mut m {
            row.remove(c);
        }
        m.retain(|row| row.iter().any(|&v| v != 0));
        units += 1;
    }
    (units, m)
}

/// Invariant factors `s_k = d_k / d_{k−1}`.
pub fn invariant_factors(m: &[Vec<i128>]) -> Vec<i128> {
    let (units, rest) = strip_units(m);
    let d = determinantal_divisors(&rest);
    let mut prev = 1;
    let mut out = vec![1; units];
    out.extend(d.iter().map(|&dk| {
        let s = dk / prev;
        prev = dk;
        s
    }));
    out
}

/// Rank over `Q` by fraction-free elimination.
pub fn rank(m: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = m.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let g = gcd(a, b);
                let pivot = m[r].clone();
                for (v, p) in m[i].iter_mut().zip(&pivot) {
                    *v = *v * (a / g) - p * (b / g);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Cellular chain complex of `X`.
///
/// 0-cells: one per branch and one base point per sector. 1-cells: each
/// branch circle, one tail per prebranch from the sector base point to its
/// branch vertex, and `2g` (orientable) or `k` (crosscap) loops per sector.
/// 2-cells: one per sector, attached along the standard word, so its boundary
/// is `Σ od·[branch] + (2·Σ crosscaps when nonorientable)`.
pub struct ChainComplex {
    pub vertices: usize,
    pub d1: Vec<Vec<i128>>,
    pub d2: Vec<Vec<i128>>,
}

impl ChainComplex {
    pub fn of(x: &MultibranchedSurface) -> Self {
        let nb = x.branches().len();
        let index = |l: &BranchId| x.branches().iter().position(|b| b == l).unwrap();
        let vertices = nb + x.sectors().len();
        let mut edges_d1: Vec<Vec<i128>> = Vec::new();
        let mut d2_cols: Vec<Vec<(usize, i128)>> = Vec::new();
        for _ in 0..nb {
            edges_d1.push(vec![0; vertices]);
        }
        for (si, s) in x.sectors().iter().enumerate() {
            let mut col = Vec::new();
            for c in &s.prebranches {
                let mut d = vec![0; vertices];
                d[index(&c.branch)] += 1;
                d[nb + si] -= 1;
                edges_d1.push(d);
                col.push((index(&c.branch), i128::from(c.oriented_degree)));
            }
            let loops = if s.orientable { 2 * s.genus } else { s.genus };
            for _ in 0..loops {
                if !s.orientable {
                    col.push((edges_d1.len(), 2));
                }
                edges_d1.push(vec![0; vertices]);
            }
            d2_cols.push(col);
        }
        let e = edges_d1.len();
        let d1 = (0..vertices).map(|v| edges_d1.iter().map(|d| d[v]).collect()).collect();
        let mut d2 = vec![vec![0i128; d2_cols.len()]; e];
        for (f, col) in d2_cols.iter().enumerate() {
            for &(edge, coeff) in col {
                d2[edge][f] += coeff;
            }
        }
        ChainComplex { vertices, d1, d2 }
    }

    pub fn edges(&self) -> usize {
        self.d2.len()
    }

    pub fn faces(&self) -> usize {
        self.d2.first().map_or(0, Vec::len)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges() as i64 + self.faces() as i64
    }

    /// `(torsion invariant factors > 1, free rank)` of `H₁`.
    pub fn h1(&self) -> (Vec<i128>, usize) {
        let r1 = if self.edges() == 0 { 0 } else { rank(&self.d1) };
        let factors = invariant_factors(&self.d2);
        let free = self.edges() - r1 - factors.len();
        (factors.into_iter().filter(|&s| s > 1).collect(), free)
    }
}

pub fn oracle_h1(x: &MultibranchedSurface) -> (Vec<i128>, usize) {
    ChainComplex::of(x).h1()
}

pub fn library_h1(x: &MultibranchedSurface) -> (Vec<i128>, usize) {
    let g = mbs::homology::h1(x).unwrap();
    let t = g
        .invariant_factors()
        .iter()
        .map(|v| v.to_string().parse().unwrap())
        .collect();
    (t, g.free_rank())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

type SectorKey = (u32, bool, Vec<(usize, i64)>);

/// Exhaustive isomorphism invariant: minimum over branch relabelings and
/// branch and sector orientation reversals. Only for a handful of branches.
pub fn brute_canonical(x: &MultibranchedSurface) -> (usize, Vec<SectorKey>) {
    let n = x.branches().len();
    let index = |l: &BranchId| x.branches().iter().position(|b| b == l).unwrap();
    let mut best: Option<Vec<SectorKey>> = None;
    for perm in permutations(n) {
        for signs in 0..1u32 << n {
            let sigma = |b: usize| if signs >> b & 1 == 1 { -1 } else { 1 };
            let mut sectors: Vec<SectorKey> = x
                .sectors()
                .iter()
                .map(|s| {
                    let entries = |tau: i64| {
                        let mut v: Vec<(usize, i64)> = s
                            .prebranches
                            .iter()
                            .map(|c| {
                                let b = index(&c.branch);
                                let od = if s.orientable {
                                    tau * sigma(b) * c.oriented_degree
                                } else {
                                    c.oriented_degree.abs()
                                };
                                (perm[b], od)
                            })
                            .collect();
                        v.sort();
                        v
                    };
                    (s.genus, s.orientable, entries(1).min(entries(-1)))
                })
                .collect();
            sectors.sort();
            if best.as_ref().is_none_or(|b| sectors < *b) {
                best = Some(sectors);
            }
        }
    }
    (n, best.unwrap_or_default())
}

pub fn brute_isomorphic(x: &MultibranchedSurface, y: &MultibranchedSurface) -> bool {
    x.branches().len() == y.branches().len()
        && x.sectors().len() == y.sectors().len()
        && brute_canonical(x) == brute_canonical(y)
}

/// Every minor, by unrestricted depth-first search, deduplicated with the
/// brute-force invariant.
pub fn brute_minors(x: &MultibranchedSurface) -> BTreeSet<(usize, Vec<SectorKey>)> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![x.validate(true).unwrap()];
    while let Some(y) = stack.pop() {
        if !seen.insert(brute_canonical(&y)) {
            continue;
        }
        for s in y.sectors() {
            stack.push(mbs::minors::remove_sector(&y, &s.id).unwrap());
            if let Ok(z) = mbs::minors::contract_annulus(&y, &s.id) {
                stack.push(z);
            }
        }
    }
    seen
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_branches: usize,
    pub max_sectors: usize,
    pub max_degree: i64,
    pub max_genus: u32,
    pub max_boundary: usize,
    pub regular: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_branches: 4,
            max_sectors: 4,
            max_degree: 3,
            max_genus: 1,
            max_boundary: 3,
            regular: true,
        }
    }
}

/// A random valid orientable surface with at least one sector.
pub fn random_surface<R: Rng>(rng: &mut R, shape: Shape) -> MultibranchedSurface {
    loop {
        let nb = rng.gen_range(1..=shape.max_branches);
        let ns = rng.gen_range(1..=shape.max_sectors);
        let degrees: Vec<i64> = (0..nb).map(|_| rng.gen_range(1..=shape.max_degree)).collect();
        let branches: Vec<BranchId> = (0..nb).map(|i| BranchId(format!("l{i}"))).collect();
        let sectors = (0..ns)
            .map(|k| {
                let b = rng.gen_range(1..=shape.max_boundary);
                let pre = (0..b)
                    .map(|_| {
                        let l = rng.gen_range(0..nb);
                        let d = if shape.regular {
                            degrees[l]
                        } else {
                            rng.gen_range(1..=shape.max_degree)
                        };
                        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                        Prebranch::new(branches[l].clone(), sign * d)
                    })
                    .collect();
                Sector::new(format!("e{k}"), rng.gen_range(0..=shape.max_genus), pre)
            })
            .collect();
        let x = MultibranchedSurface::from_parts(None, branches, sectors)
            .validate(true)
            .unwrap();
        if !x.is_empty() {
            return x;
        }
    }
}

pub fn random_connected_surface<R: Rng>(rng: &mut R, shape: Shape) -> MultibranchedSurface {
    loop {
        let x = random_surface(rng, shape);
        if x.is_connected() {
            return x;
        }
    }
}

/// Rename everything, shuffle branches, sectors and boundary circles, and
/// reverse random branch and sector orientations.
pub fn scramble<R: Rng>(rng: &mut R, x: &MultibranchedSurface) -> MultibranchedSurface {
    let flip_branch: Vec<bool> = x.branches().iter().map(|_| rng.gen_bool(0.5)).collect();
    let index = |l: &BranchId| x.branches().iter().position(|b| b == l).unwrap();
    let rename = |l: &BranchId| BranchId(format!("r{}", index(l) * 7 + 3));
    let mut branches: Vec<BranchId> = x.branches().iter().map(rename).collect();
    branches.shuffle(rng);
    let mut sectors: Vec<Sector> = x
        .sectors()
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let tau = if s.orientable && rng.gen_bool(0.5) { -1 } else { 1 };
            let mut pre: Vec<Prebranch> = s
                .prebranches
                .iter()
                .map(|c| {
                    let sigma = if flip_branch[index(&c.branch)] { -1 } else { 1 };
                    Prebranch::new(rename(&c.branch), tau * sigma * c.oriented_degree)
                })
                .collect();
            pre.shuffle(rng);
            Sector {
                id: format!("q{}", 100 - k).into(),
                genus: s.genus,
                orientable: s.orientable,
                prebranches: pre,
            }
        })
        .collect();
    sectors.shuffle(rng);
    MultibranchedSurface::from_parts(Some("scrambled".into()), branches, sectors)
}

/// Every builder output used as a fixture.
pub fn builder_fixtures() -> Vec<MultibranchedSurface> {
    use mbs::builders::*;
    vec![
        one_sector(0, &[1], None).unwrap(),
        one_sector(0, &[2, 2], None).unwrap(),
        one_sector(2, &[3, 3, 6], Some(&[1, -1, 1])).unwrap(),
        pants_example(),
        seifert_example(&[2]).unwrap(),
        seifert_example(&[2, 3]).unwrap(),
        seifert_example(&[3, 4, 5]).unwrap(),
        rose_times_circle(1).unwrap(),
        rose_times_circle(2).unwrap(),
        graph_to_mbs(1, &[(0, 0)]).unwrap(),
        graph_to_mbs(2, &[(0, 1), (0, 1), (0, 1)]).unwrap(),
        graph_to_mbs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        obstruction_example(),
    ]
}
