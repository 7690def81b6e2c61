//! Finitely generated abelian groups in primary form.
//!
//! A group is stored as a free part (over `Z` or over the 2-local integers)
//! plus a sorted multiset of prime-power cyclic factors. Two groups are equal
//! exactly when their canonical forms agree.

mod smith;

use alloc::vec::Vec;
use core::fmt;

pub use smith::{smith_normal_form, IntMatrix};

/// A cyclic factor `Z/prime^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicFactor {
    prime: u64,
    exponent: u32,
}

impl CyclicFactor {
    /// Returns `None` unless `prime` is prime and `exponent >= 1`.
    pub fn new(prime: u64, exponent: u32) -> Option<Self> {
        if exponent == 0 || !is_prime(prime) {
            return None;
        }
        prime.checked_pow(exponent)?;
        Some(Self { prime, exponent })
    }

    /// `Z/2^exponent`.
    pub fn two(exponent: u32) -> Option<Self> {
        Self::new(2, exponent)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

impl fmt::Display for CyclicFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.order())
    }
}

/// Coefficient ring of the free part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FreeRing {
    #[default]
    Integers,
    /// The integers localized at 2, kept as a formal tag.
    TwoLocal,
}

impl FreeRing {
    pub fn symbol(&self) -> &'static str {
        match self {
            FreeRing::Integers => "Z",
            FreeRing::TwoLocal => "Z_(2)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelianError {
    FactorAbsent(CyclicFactor),
    NotTorsion,
}

impl fmt::Display for AbelianError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianError::FactorAbsent(c) => write!(f, "factor {c} does not occur in the group"),
            AbelianError::NotTorsion => f.write_str("group has a free part"),
        }
    }
}

impl core::error::Error for AbelianError {}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FgAbelianGroup {
    free_rank: u32,
    free_ring: FreeRing,
    torsion: Vec<CyclicFactor>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `Z^rank`.
    pub fn free(rank: u32) -> Self {
        Self {
            free_rank: rank,
            ..Self::default()
        }
    }

    /// `Z_(2)^rank`.
    pub fn free_two_local(rank: u32) -> Self {
        Self::from_factors(rank, FreeRing::TwoLocal, [])
    }

    pub fn from_factors(
        free_rank: u32,
        free_ring: FreeRing,
        factors: impl IntoIterator<Item = CyclicFactor>,
    ) -> Self {
        let mut torsion: Vec<CyclicFactor> = factors.into_iter().collect();
        torsion.sort_unstable();
        let free_ring = if free_rank == 0 {
            FreeRing::Integers
        } else {
            free_ring
        };
        Self {
            free_rank,
            free_ring,
            torsion,
        }
    }

    pub fn from_factor(factor: CyclicFactor) -> Self {
        Self::from_factors(0, FreeRing::Integers, [factor])
    }

    /// `Z/order`, split into its primary parts. `order <= 1` gives the trivial group.
    pub fn cyclic(order: u64) -> Self {
        let factors = factorize(order).into_iter().map(|(p, e)| CyclicFactor {
            prime: p,
            exponent: e,
        });
        Self::from_factors(0, FreeRing::Integers, factors)
    }

    /// `Z/2^exponent`, with `exponent == 0` giving the trivial group.
    pub fn two_cyclic(exponent: u32) -> Self {
        match CyclicFactor::two(exponent) {
            Some(c) => Self::from_factor(c),
            None => Self::trivial(),
        }
    }

    /// Torsion group `⊕ Z/2^e` over the given exponents; zero exponents are dropped.
    pub fn from_two_exponents(exponents: &[u32]) -> Self {
        Self::from_factors(
            0,
            FreeRing::Integers,
            exponents.iter().filter_map(|&e| CyclicFactor::two(e)),
        )
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn free_ring(&self) -> FreeRing {
        self.free_ring
    }

    pub fn torsion(&self) -> &[CyclicFactor] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        self.torsion
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.order() as u128))
    }

    /// The 2-primary component of the torsion subgroup.
    pub fn two_primary(&self) -> Self {
        Self::from_factors(
            0,
            FreeRing::Integers,
            self.torsion.iter().copied().filter(|c| c.prime == 2),
        )
    }

    /// The torsion factors at odd primes.
    pub fn odd_primary(&self) -> Self {
        Self::from_factors(
            0,
            FreeRing::Integers,
            self.torsion.iter().copied().filter(|c| c.prime != 2),
        )
    }

    /// Sorted exponents `r_1 <= ... <= r_n` of the 2-primary factors.
    pub fn two_exponents(&self) -> Vec<u32> {
        self.torsion
            .iter()
            .filter(|c| c.prime == 2)
            .map(|c| c.exponent)
            .collect()
    }

    /// Number of factors `Z/2^e` (any `e`), i.e. the 2-rank of the torsion.
    pub fn two_rank(&self) -> usize {
        self.torsion.iter().filter(|c| c.prime == 2).count()
    }

    /// Removes one occurrence of `factor`.
    pub fn quotient_by_factor(&self, factor: CyclicFactor) -> Result<Self, AbelianError> {
        let pos = self
            .torsion
            .iter()
            .position(|c| *c == factor)
            .ok_or(AbelianError::FactorAbsent(factor))?;
        let mut out = self.clone();
        out.torsion.remove(pos);
        Ok(out)
    }

    /// Direct sum. When the free parts live over different rings the sum is
    /// localized at 2: free summands become `Z_(2)` and odd torsion dies.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let ring = match (self.free_rank, other.free_rank) {
            (0, _) => other.free_ring,
            (_, 0) => self.free_ring,
            _ if self.free_ring == other.free_ring => self.free_ring,
            _ => return self.localize_at_two().direct_sum(&other.localize_at_two()),
        };
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        Self::from_factors(self.free_rank + other.free_rank, ring, torsion)
    }

    /// Tensor with `Z_(2)`.
    pub fn localize_at_two(&self) -> Self {
        let ring = if self.free_rank > 0 {
            FreeRing::TwoLocal
        } else {
            FreeRing::Integers
        };
        Self {
            free_rank: self.free_rank,
            free_ring: ring,
            torsion: self.two_primary().torsion,
        }
    }

    /// Factors grouped as `(factor, multiplicity)` in canonical order.
    pub fn grouped_torsion(&self) -> Vec<(CyclicFactor, usize)> {
        let mut out: Vec<(CyclicFactor, usize)> = Vec::new();
        for c in &self.torsion {
            match out.last_mut() {
                Some((last, k)) if last == c => *k += 1,
                _ => out.push((*c, 1)),
            }
        }
        out
    }
}

impl core::iter::Sum for FgAbelianGroup {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::trivial(), |acc, g| acc.direct_sum(&g))
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        if self.free_rank > 0 {
            f.write_str(self.free_ring.symbol())?;
            if self.free_rank > 1 {
                write!(f, "^{}", self.free_rank)?;
            }
            first = false;
        }
        for c in &self.torsion {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while n > 1 && p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
