//! Smith normal form over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense row-major integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Panics when `entries.len() != rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        Self { rows, cols, entries }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * q;
            self.entries[dst * self.cols + c] -= v;
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * q;
            self.entries[r * self.cols + dst] -= v;
        }
    }

    fn add_row(&mut self, dst: usize, src: usize) {
        for c in 0..self.cols {
            let v = self.get(src, c).clone();
            self.entries[dst * self.cols + c] += v;
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Position of the smallest nonzero `|entry|` in the block `[t.., t..]`.
fn min_pivot(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in t..m.rows {
        for c in t..m.cols {
            let v = m.get(r, c).abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                best = Some((r, c, v));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Diagonal of the Smith normal form, `min(rows, cols)` entries long.
///
/// The nonzero entries come first, are positive, and each divides the next.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let k = a.rows.min(a.cols);
    let mut diag = Vec::with_capacity(k);
    for t in 0..k {
        let Some((r, c)) = min_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, r);
        a.swap_cols(t, c);
        loop {
            let pivot = a.get(t, t).clone();
            // clear column t
            let mut dirty = false;
            for i in t + 1..a.rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(&pivot);
                a.sub_row(i, t, &q);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..a.cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(&pivot);
                a.sub_col(j, t, &q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder appeared in row or column t: re-pivot on it
                let (r, c) = min_pivot_cross(&a, t);
                a.swap_rows(t, r);
                a.swap_cols(t, c);
                continue;
            }
            // pivot must divide the whole remaining block
            let bad = (t + 1..a.rows)
                .flat_map(|i| (t + 1..a.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => a.add_row(t, i),
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }
    diag.resize(k, BigInt::zero());
    diag
}

/// Smallest nonzero entry on row `t` or column `t` (the pivot included).
fn min_pivot_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_v = a.get(t, t).abs();
    let consider = |r: usize, c: usize, best: &mut (usize, usize), best_v: &mut BigInt| {
        let v = a.get(r, c).abs();
        if !v.is_zero() && (best_v.is_zero() || v < *best_v) {
            *best = (r, c);
            *best_v = v;
        }
    };
    for i in t + 1..a.rows {
        consider(i, t, &mut best, &mut best_v);
    }
    for j in t + 1..a.cols {
        consider(t, j, &mut best, &mut best_v);
    }
    best
}

/// Rank over the rationals, read off the Smith diagonal.
pub fn rank(m: &IntegerMatrix) -> usize {
    smith_normal_form(m).iter().filter(|d| !d.is_zero()).count()
}

/// Invariant factors `> 1` of the cokernel of `m`.
pub(crate) fn torsion_of(diag: &[BigInt]) -> Vec<BigInt> {
    diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
}
