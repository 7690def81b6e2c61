use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use super::CatalogError;
use crate::abelian::FgAbelianGroup;

/// One indecomposable piece of a wedge decomposition.
///
/// `n` is the bottom-cell dimension for the Chang and `A` kinds; spheres and
/// Moore spaces are indexed by their top dimension as in `S^n` and `P^n(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryComplex {
    /// `S^dim`
    Sphere { dim: u32 },
    /// `P^dim(order) = S^{dim-1} ∪_order e^dim`
    Moore { dim: u32, order: u64 },
    /// `C^{n+2}_η = S^n ∪_η e^{n+2}`
    ChangEta { n: u32 },
    /// `C^{n+2}_r = P^{n+1}(2^r) ∪_{iη} e^{n+2}`
    ChangR { n: u32, r: u32 },
    /// `C^{n+2,t} = S^n ∪_{ηq} C P^{n+1}(2^t)`
    ChangT { n: u32, t: u32 },
    /// `C^{n+2,t}_r = P^{n+1}(2^r) ∪_{iηq} C P^{n+1}(2^t)`
    ChangRT { n: u32, r: u32, t: u32 },
    /// `A^{n+3}(η²) = S^n ∪_{η²} e^{n+3}`
    AEta2 { n: u32 },
    /// `A^{n+3}(η̃_r) = P^{n+1}(2^r) ∪_{η̃_r} e^{n+3}`
    ATilde { n: u32, r: u32 },
    /// `A^{n+3}(2^r η²) = P^{n+1}(2^r) ∪_{iη²} e^{n+3}`
    A2rEta2 { n: u32, r: u32 },
}

const MAX_EXPONENT: u32 = 62;

impl ElementaryComplex {
    pub fn sphere(dim: u32) -> Self {
        Self::Sphere { dim }
    }

    pub fn moore(dim: u32, order: u64) -> Self {
        Self::Moore { dim, order }
    }

    /// `P^dim(2^r)`
    pub fn moore2(dim: u32, r: u32) -> Self {
        Self::Moore { dim, order: 1 << r }
    }

    /// Checks the parameter ranges of the catalog.
    pub fn validate(&self) -> Result<(), CatalogError> {
        use ElementaryComplex::*;
        let ok = match *self {
            Sphere { dim } => dim >= 1,
            Moore { dim, order } => dim >= 2 && order >= 2,
            ChangEta { n } | AEta2 { n } => n >= 2,
            ChangR { n, r } | ATilde { n, r } | A2rEta2 { n, r } => {
                n >= 2 && (1..=MAX_EXPONENT).contains(&r)
            }
            ChangT { n, t } => n >= 2 && (1..=MAX_EXPONENT).contains(&t),
            ChangRT { n, r, t } => {
                n >= 2 && (1..=MAX_EXPONENT).contains(&r) && (1..=MAX_EXPONENT).contains(&t)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(CatalogError::InvalidComplex(*self))
        }
    }

    pub fn bottom_dim(&self) -> u32 {
        use ElementaryComplex::*;
        match *self {
            Sphere { dim } => dim,
            Moore { dim, .. } => dim - 1,
            ChangEta { n } | ChangR { n, .. } | ChangT { n, .. } | ChangRT { n, .. } => n,
            AEta2 { n } | ATilde { n, .. } | A2rEta2 { n, .. } => n,
        }
    }

    pub fn top_dim(&self) -> u32 {
        use ElementaryComplex::*;
        match *self {
            Sphere { dim } | Moore { dim, .. } => dim,
            ChangEta { n } | ChangR { n, .. } | ChangT { n, .. } | ChangRT { n, .. } => n + 2,
            AEta2 { n } | ATilde { n, .. } | A2rEta2 { n, .. } => n + 3,
        }
    }

    fn tag(&self) -> u8 {
        use ElementaryComplex::*;
        match self {
            Sphere { .. } => 0,
            Moore { .. } => 1,
            ChangEta { .. } => 2,
            ChangR { .. } => 3,
            ChangT { .. } => 4,
            ChangRT { .. } => 5,
            AEta2 { .. } => 6,
            ATilde { .. } => 7,
            A2rEta2 { .. } => 8,
        }
    }

    fn params(&self) -> [u64; 2] {
        use ElementaryComplex::*;
        match *self {
            Sphere { .. } | ChangEta { .. } | AEta2 { .. } => [0, 0],
            Moore { order, .. } => [order, 0],
            ChangR { r, .. } | ATilde { r, .. } | A2rEta2 { r, .. } => [r as u64, 0],
            ChangT { t, .. } => [t as u64, 0],
            ChangRT { r, t, .. } => [r as u64, t as u64],
        }
    }

    /// Shift every cell up by one dimension.
    pub fn suspend(&self) -> Self {
        self.shift(1).expect("suspension never leaves the catalog")
    }

    /// Inverse of [`suspend`](Self::suspend) where the result is still a catalog entry.
    pub fn desuspend(&self) -> Result<Self, CatalogError> {
        let d = self.shift(-1).ok_or(CatalogError::NoDesuspension(*self))?;
        d.validate()
            .map_err(|_| CatalogError::NoDesuspension(*self))?;
        Ok(d)
    }

    fn shift(&self, by: i64) -> Option<Self> {
        use ElementaryComplex::*;
        let s = |x: u32| -> Option<u32> { u32::try_from(x as i64 + by).ok() };
        Some(match *self {
            Sphere { dim } => Sphere { dim: s(dim)? },
            Moore { dim, order } => Moore {
                dim: s(dim)?,
                order,
            },
            ChangEta { n } => ChangEta { n: s(n)? },
            ChangR { n, r } => ChangR { n: s(n)?, r },
            ChangT { n, t } => ChangT { n: s(n)?, t },
            ChangRT { n, r, t } => ChangRT { n: s(n)?, r, t },
            AEta2 { n } => AEta2 { n: s(n)? },
            ATilde { n, r } => ATilde { n: s(n)?, r },
            A2rEta2 { n, r } => A2rEta2 { n: s(n)?, r },
        })
    }

    /// Reduced integral homology in degree `i`.
    pub fn integral_homology(&self, i: u32) -> FgAbelianGroup {
        self.homology_table()
            .into_iter()
            .filter(|(deg, _)| *deg == i)
            .map(|(_, g)| g)
            .sum()
    }

    /// Nonzero reduced homology groups, ascending in degree.
    pub fn homology_table(&self) -> Vec<(u32, FgAbelianGroup)> {
        use ElementaryComplex::*;
        let z = || FgAbelianGroup::free(1);
        let tw = |e: u32| FgAbelianGroup::two_cyclic(e);
        match *self {
            Sphere { dim } => vec![(dim, z())],
            Moore { dim, order } => vec![(dim - 1, FgAbelianGroup::cyclic(order))],
            ChangEta { n } => vec![(n, z()), (n + 2, z())],
            ChangR { n, r } => vec![(n, tw(r)), (n + 2, z())],
            ChangT { n, t } => vec![(n, z()), (n + 1, tw(t))],
            ChangRT { n, r, t } => vec![(n, tw(r)), (n + 1, tw(t))],
            AEta2 { n } => vec![(n, z()), (n + 3, z())],
            ATilde { n, r } | A2rEta2 { n, r } => vec![(n, tw(r)), (n + 3, z())],
        }
    }

    pub fn is_two_local_trivial(&self) -> bool {
        matches!(*self, ElementaryComplex::Moore { order, .. } if order % 2 == 1)
    }
}

impl Ord for ElementaryComplex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.bottom_dim(), self.tag(), self.params()).cmp(&(
            other.bottom_dim(),
            other.tag(),
            other.params(),
        ))
    }
}

impl PartialOrd for ElementaryComplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementaryComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ElementaryComplex::*;
        match *self {
            Sphere { dim } => write!(f, "S^{dim}"),
            Moore { dim, order } => write!(f, "P^{dim}({order})"),
            ChangEta { n } => write!(f, "C^{}_eta", n + 2),
            ChangR { n, r } => write!(f, "C^{}_{r}", n + 2),
            ChangT { n, t } => write!(f, "C^{{{},{t}}}", n + 2),
            ChangRT { n, r, t } => write!(f, "C^{{{},{t}}}_{r}", n + 2),
            AEta2 { n } => write!(f, "A^{}(eta^2)", n + 3),
            ATilde { n, r } => write!(f, "A^{}(eta~_{r})", n + 3),
            A2rEta2 { n, r } => write!(f, "A^{}(2^{r} eta^2)", n + 3),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseComplexError(pub String);

impl fmt::Display for ParseComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse complex `{}`", self.0)
    }
}

impl core::error::Error for ParseComplexError {}

fn split_num(s: &str) -> Option<(u64, &str)> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        return None;
    }
    Some((s[..end].parse().ok()?, &s[end..]))
}

fn parse_inner(s: &str) -> Option<ElementaryComplex> {
    use ElementaryComplex::*;
    let u = |x: u64| u32::try_from(x).ok();
    if let Some(rest) = s.strip_prefix("S^") {
        let (d, tail) = split_num(rest)?;
        return tail.is_empty().then_some(Sphere { dim: u(d)? });
    }
    if let Some(rest) = s.strip_prefix("P^") {
        let (d, tail) = split_num(rest)?;
        let (k, tail) = split_num(tail.strip_prefix('(')?)?;
        return (tail == ")").then_some(Moore {
            dim: u(d)?,
            order: k,
        });
    }
    if let Some(rest) = s.strip_prefix("C^{") {
        let (top, tail) = split_num(rest)?;
        let (t, tail) = split_num(tail.strip_prefix(',')?)?;
        let tail = tail.strip_prefix('}')?;
        let n = u(top)?.checked_sub(2)?;
        if tail.is_empty() {
            return Some(ChangT { n, t: u(t)? });
        }
        let (r, tail) = split_num(tail.strip_prefix('_')?)?;
        return tail.is_empty().then_some(ChangRT {
            n,
            r: u(r)?,
            t: u(t)?,
        });
    }
    if let Some(rest) = s.strip_prefix("C^") {
        let (top, tail) = split_num(rest)?;
        let n = u(top)?.checked_sub(2)?;
        let tail = tail.strip_prefix('_')?;
        if tail == "eta" {
            return Some(ChangEta { n });
        }
        let (r, tail) = split_num(tail)?;
        return tail.is_empty().then_some(ChangR { n, r: u(r)? });
    }
    if let Some(rest) = s.strip_prefix("A^") {
        let (top, tail) = split_num(rest)?;
        let n = u(top)?.checked_sub(3)?;
        let body = tail.strip_prefix('(')?.strip_suffix(')')?;
        if body == "eta^2" {
            return Some(AEta2 { n });
        }
        if let Some(r) = body.strip_prefix("eta~_") {
            let (r, t) = split_num(r)?;
            return t.is_empty().then_some(ATilde { n, r: u(r)? });
        }
        let (r, t) = split_num(body.strip_prefix("2^")?)?;
        return (t == " eta^2").then_some(A2rEta2 { n, r: u(r)? });
    }
    None
}

impl FromStr for ElementaryComplex {
    type Err = ParseComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let c = parse_inner(s).ok_or_else(|| ParseComplexError(s.into()))?;
        c.validate().map_err(|_| ParseComplexError(s.into()))?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use ElementaryComplex::*;

    #[test]
    fn homology_examples() {
        for r in 1..4 {
            let p = ElementaryComplex::moore2(4, r);
            assert_eq!(p.integral_homology(3), FgAbelianGroup::two_cyclic(r));
            let a = A2rEta2 { n: 3, r };
            assert_eq!(a.integral_homology(3), FgAbelianGroup::two_cyclic(r));
            assert_eq!(a.integral_homology(6), FgAbelianGroup::free(1));
            assert!(a.integral_homology(4).is_trivial());
        }
        let c = ChangEta { n: 3 };
        assert_eq!(c.integral_homology(3), FgAbelianGroup::free(1));
        assert_eq!(c.integral_homology(5), FgAbelianGroup::free(1));
        assert!(c.integral_homology(4).is_trivial());
    }

    #[test]
    fn display_parse_roundtrip() {
        let all = [
            Sphere { dim: 3 },
            Moore { dim: 4, order: 9 },
            ChangEta { n: 4 },
            ChangR { n: 4, r: 2 },
            ChangT { n: 3, t: 1 },
            ChangRT { n: 3, r: 2, t: 3 },
            AEta2 { n: 3 },
            ATilde { n: 3, r: 1 },
            A2rEta2 { n: 2, r: 3 },
        ];
        let names = [
            "S^3",
            "P^4(9)",
            "C^6_eta",
            "C^6_2",
            "C^{5,1}",
            "C^{5,3}_2",
            "A^6(eta^2)",
            "A^6(eta~_1)",
            "A^5(2^3 eta^2)",
        ];
        for (c, name) in all.iter().zip(names) {
            assert_eq!(c.to_string(), name);
            assert_eq!(name.parse::<ElementaryComplex>().unwrap(), *c);
        }
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!("P^4(1)".parse::<ElementaryComplex>().is_err());
        assert!("A^4(eta^2)".parse::<ElementaryComplex>().is_err());
        assert!("C^6_0".parse::<ElementaryComplex>().is_err());
        assert!("Q^3".parse::<ElementaryComplex>().is_err());
    }

    #[test]
    fn ordering_is_by_bottom_cell_first() {
        let mut v = [
            Sphere { dim: 4 },
            ElementaryComplex::moore2(4, 1),
            Sphere { dim: 3 },
        ];
        v.sort();
        assert_eq!(
            v,
            [
                Sphere { dim: 3 },
                ElementaryComplex::moore2(4, 1),
                Sphere { dim: 4 }
            ]
        );
    }

    #[test]
    fn desuspension_respects_ranges() {
        assert_eq!(ChangEta { n: 3 }.desuspend().unwrap(), ChangEta { n: 2 });
        assert!(ChangEta { n: 2 }.desuspend().is_err());
        assert!(ElementaryComplex::moore2(2, 1).desuspend().is_err());
        assert_eq!(
            "A^6(eta~_2)"
                .parse::<ElementaryComplex>()
                .unwrap()
                .suspend()
                .to_string(),
            "A^7(eta~_2)"
        );
        assert_eq!(A2rEta2 { n: 3, r: 1 }.to_string(), "A^6(2^1 eta^2)");
        assert_eq!(
            Sphere { dim: 1 }.desuspend(),
            Err(CatalogError::NoDesuspension(Sphere { dim: 1 }))
        );
        let _ = "unused".to_string();
    }
}
