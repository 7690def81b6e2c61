//! Elementary complexes, wedges of them, and their tabulated invariants.

mod complex;
mod maps;
mod profile;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use complex::{ElementaryComplex, ParseComplexError};
pub use maps::{maps_group, tabulated_pairs, Atom, Generator, MapsEntry, Word};
pub use profile::{cup_on, pontryagin_square_ct, pontryagin_square_on, F2Matrix, OperationProfile};

use crate::abelian::FgAbelianGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogError {
    InvalidComplex(ElementaryComplex),
    NoDesuspension(ElementaryComplex),
    NotTorsion,
    TableMiss {
        source: ElementaryComplex,
        target: ElementaryComplex,
    },
    Parse(String),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidComplex(c) => write!(f, "parameters out of range: {c:?}"),
            Self::NoDesuspension(c) => write!(f, "{c} has no desuspension in the catalog"),
            Self::NotTorsion => f.write_str("group has a free part"),
            Self::TableMiss { source, target } => {
                write!(f, "[{source}, {target}] is not tabulated")
            }
            Self::Parse(s) => write!(f, "cannot parse wedge `{s}`"),
        }
    }
}

impl core::error::Error for CatalogError {}

/// A finite wedge of elementary complexes, kept sorted. The empty wedge is
/// the point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeComplex {
    summands: Vec<ElementaryComplex>,
}

impl WedgeComplex {
    pub fn point() -> Self {
        Self::default()
    }

    pub fn new(summands: impl IntoIterator<Item = ElementaryComplex>) -> Self {
        let mut summands: Vec<_> = summands.into_iter().collect();
        summands.sort_unstable();
        Self { summands }
    }

    pub fn single(c: ElementaryComplex) -> Self {
        Self {
            summands: alloc::vec![c],
        }
    }

    /// `k` copies of `c`.
    pub fn copies(c: ElementaryComplex, k: u32) -> Self {
        Self {
            summands: alloc::vec![c; k as usize],
        }
    }

    pub fn summands(&self) -> &[ElementaryComplex] {
        &self.summands
    }

    pub fn is_point(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn multiplicity(&self, c: &ElementaryComplex) -> usize {
        self.summands.iter().filter(|s| *s == c).count()
    }

    pub fn contains(&self, c: &ElementaryComplex) -> bool {
        self.summands.binary_search(c).is_ok()
    }

    pub fn wedge(&self, other: &Self) -> Self {
        Self::new(self.summands.iter().chain(&other.summands).copied())
    }

    pub fn push(&mut self, c: ElementaryComplex) {
        let at = self.summands.partition_point(|s| s <= &c);
        self.summands.insert(at, c);
    }

    /// Removes one copy of `c`; false if absent.
    pub fn remove_one(&mut self, c: &ElementaryComplex) -> bool {
        match self.summands.binary_search(c) {
            Ok(i) => {
                self.summands.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&ElementaryComplex) -> bool) -> Self {
        Self {
            summands: self.summands.iter().copied().filter(|c| keep(c)).collect(),
        }
    }

    pub fn suspend(&self) -> Self {
        Self {
            summands: self
                .summands
                .iter()
                .map(ElementaryComplex::suspend)
                .collect(),
        }
    }

    pub fn desuspend(&self) -> Result<Self, CatalogError> {
        let summands = self
            .summands
            .iter()
            .map(ElementaryComplex::desuspend)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(summands))
    }

    pub fn integral_homology(&self, i: u32) -> FgAbelianGroup {
        self.summands.iter().map(|c| c.integral_homology(i)).sum()
    }

    pub fn top_dim(&self) -> u32 {
        self.summands
            .iter()
            .map(ElementaryComplex::top_dim)
            .max()
            .unwrap_or(0)
    }

    pub fn profile(&self) -> OperationProfile {
        let parts: Vec<OperationProfile> = self
            .summands
            .iter()
            .map(ElementaryComplex::profile)
            .collect();
        OperationProfile::wedge(parts.iter())
    }
}

impl FromIterator<ElementaryComplex> for WedgeComplex {
    fn from_iter<I: IntoIterator<Item = ElementaryComplex>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for WedgeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("*");
        }
        for (k, c) in self.summands.iter().enumerate() {
            if k > 0 {
                f.write_str(" v ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for WedgeComplex {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "*" {
            return Ok(Self::point());
        }
        s.split(" v ")
            .map(|part| {
                part.parse::<ElementaryComplex>()
                    .map_err(|_| CatalogError::Parse(s.into()))
            })
            .collect()
    }
}

/// Anything with integral homology and an operation profile.
pub trait CellComplex {
    fn integral_homology(&self, i: u32) -> FgAbelianGroup;
    fn operation_profile(&self) -> OperationProfile;
}

impl CellComplex for ElementaryComplex {
    fn integral_homology(&self, i: u32) -> FgAbelianGroup {
        ElementaryComplex::integral_homology(self, i)
    }

    fn operation_profile(&self) -> OperationProfile {
        self.profile()
    }
}

impl CellComplex for WedgeComplex {
    fn integral_homology(&self, i: u32) -> FgAbelianGroup {
        WedgeComplex::integral_homology(self, i)
    }

    fn operation_profile(&self) -> OperationProfile {
        self.profile()
    }
}

pub fn integral_homology<X: CellComplex + ?Sized>(x: &X, i: u32) -> FgAbelianGroup {
    x.integral_homology(i)
}

/// `Sq²: H^k(X; Z/2) -> H^{k+2}(X; Z/2)`.
pub fn sq2_action<X: CellComplex + ?Sized>(x: &X, k: u32) -> F2Matrix {
    x.operation_profile().sq2_matrix(k)
}

pub fn theta_flag<X: CellComplex + ?Sized>(x: &X) -> bool {
    x.operation_profile().theta
}

pub fn bockstein_profile<X: CellComplex + ?Sized>(x: &X) -> Vec<(u32, u32)> {
    x.operation_profile().bockstein_profile()
}

pub fn suspend(x: &WedgeComplex) -> WedgeComplex {
    x.suspend()
}

/// `P^n(G)`: one Moore space per primary cyclic factor of `G`.
pub fn peterson_of_group(n: u32, g: &FgAbelianGroup) -> Result<WedgeComplex, CatalogError> {
    if !g.is_torsion() {
        return Err(CatalogError::NotTorsion);
    }
    let summands: Vec<_> = g
        .torsion()
        .iter()
        .map(|f| ElementaryComplex::moore(n, f.order()))
        .collect();
    for c in &summands {
        c.validate()?;
    }
    Ok(WedgeComplex::new(summands))
}
