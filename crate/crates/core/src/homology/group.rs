use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, torsion_of, IntegerMatrix};

/// Finitely generated abelian group `Z/d₁ ⊕ … ⊕ Z/d_k ⊕ Z^r` in invariant
/// factor form (`2 ≤ d₁ | d₂ | … | d_k`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    /// Normalizes any list of cyclic orders (0 and 1 entries are dropped,
    /// negative entries read as their absolute value).
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I, free_rank: usize) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().filter(|d| !d.is_zero()).collect();
        let n = orders.len();
        let mut m = IntegerMatrix::zeros(n, n);
        for (i, d) in orders.into_iter().enumerate() {
            m.set(i, i, d);
        }
        Self {
            invariant_factors: torsion_of(&smith_normal_form(&m)),
            free_rank,
        }
    }

    pub fn from_parts(orders: &[i64], free_rank: usize) -> Self {
        Self::from_cyclic_orders(orders.iter().map(|&d| BigInt::from(d)), free_rank)
    }

    pub(crate) fn from_normalized(invariant_factors: Vec<BigInt>, free_rank: usize) -> Self {
        debug_assert!(invariant_factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        debug_assert!(invariant_factors.iter().all(|d| *d > BigInt::one()));
        Self {
            invariant_factors,
            free_rank,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn torsion_subgroup(&self) -> Self {
        Self::from_normalized(self.invariant_factors.clone(), 0)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_cyclic_orders(
            self.invariant_factors.iter().chain(&other.invariant_factors).cloned(),
            self.free_rank + other.free_rank,
        )
    }
}

/// Prints e.g. `Z/3 + Z^5`, `Z`, or `0` for the trivial group.
impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
