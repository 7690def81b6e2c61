use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{CatalogError, ElementaryComplex};
use crate::abelian::FgAbelianGroup;

/// Basic maps out of which generators are spelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// identity
    Iota,
    /// degree-k self-map of a sphere
    Degree(i64),
    /// the Hopf map and its suspensions
    Eta,
    /// generator of `π_6(S^3)`
    Nu,
    /// generator of `[C^5_η, S^3]`, restricting to degree 2 on the bottom cell
    ZetaBar,
    /// generator of `[A^5(η̃_r), S^3]`
    G,
    /// inclusion of the bottom cell
    I,
    /// pinch onto the top cell
    Q,
    /// `η̃_r: S^{n+1} -> P^n(2^r)`
    EtaTilde(u32),
    /// `η̄_r: P^{n+2}(2^r) -> S^n`
    EtaBar(u32),
    /// `χ^r_s: P^n(2^r) -> P^n(2^s)`
    Chi(u32, u32),
}

/// A composite of atoms; the leftmost atom is applied last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Atom>);

impl Word {
    pub fn new(atoms: &[Atom]) -> Self {
        Self(atoms.to_vec())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }
}

fn atom_name(a: Atom, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match a {
        Atom::Iota => f.write_str("iota"),
        Atom::Degree(k) => write!(f, "[{k}]"),
        Atom::Eta => f.write_str("eta"),
        Atom::Nu => f.write_str("nu'"),
        Atom::ZetaBar => f.write_str("zeta-"),
        Atom::G => f.write_str("g"),
        Atom::I => f.write_str("i"),
        Atom::Q => f.write_str("q"),
        Atom::EtaTilde(r) => write!(f, "eta~_{r}"),
        Atom::EtaBar(r) => write!(f, "eta-_{r}"),
        Atom::Chi(r, s) => write!(f, "chi^{r}_{s}"),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("iota");
        }
        let mut first = true;
        let mut k = 0;
        while k < self.0.len() {
            let a = self.0[k];
            let mut run = 1;
            if a == Atom::Eta {
                while k + run < self.0.len() && self.0[k + run] == Atom::Eta {
                    run += 1;
                }
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            atom_name(a, f)?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            k += run;
        }
        Ok(())
    }
}

/// One cyclic generator of a tabulated group; `order` is `None` for infinite order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub word: Word,
    pub order: Option<u64>,
}

/// `[source, target]` together with a cyclic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapsEntry {
    pub source: ElementaryComplex,
    pub target: ElementaryComplex,
    pub generators: Vec<Generator>,
}

impl MapsEntry {
    pub fn group(&self) -> FgAbelianGroup {
        self.generators
            .iter()
            .map(|g| match g.order {
                None => FgAbelianGroup::free(1),
                Some(k) => FgAbelianGroup::cyclic(k),
            })
            .sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }
}

/// `Z/4<eta~_1>`, `Z<iota>`, `Z/2<eta~_2> + Z/2<i eta^2>` or `0`.
impl fmt::Display for MapsEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("0");
        }
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match g.order {
                None => write!(f, "Z<{}>", g.word)?,
                Some(n) => write!(f, "Z/{n}<{}>", g.word)?,
            }
        }
        Ok(())
    }
}

fn gen(atoms: &[Atom], order: Option<u64>) -> Generator {
    Generator {
        word: Word::new(atoms),
        order,
    }
}

fn two_exponent(k: u64) -> Option<u32> {
    k.is_power_of_two().then(|| k.trailing_zeros())
}

/// Looks up `[source, target]` in the tabulated range.
///
/// Torsion is reported 2-locally where the integral group has odd torsion
/// (`π_6(S^3)` is listed as `Z/4`).
pub fn maps_group(
    source: ElementaryComplex,
    target: ElementaryComplex,
) -> Result<MapsEntry, CatalogError> {
    source.validate()?;
    target.validate()?;
    let generators = lookup(source, target).ok_or(CatalogError::TableMiss { source, target })?;
    Ok(MapsEntry {
        source,
        target,
        generators,
    })
}

fn lookup(source: ElementaryComplex, target: ElementaryComplex) -> Option<Vec<Generator>> {
    use Atom::*;
    use ElementaryComplex::*;
    let z = None;
    match (source, target) {
        // cellular approximation
        (s, t) if s.top_dim() < t.bottom_dim() => Some(vec![]),
        (Sphere { dim: m }, Sphere { dim: 1 }) if m > 1 => Some(vec![]),
        (Sphere { dim: m }, Sphere { dim: n }) => match m as i64 - n as i64 {
            0 => Some(vec![gen(&[Iota], z)]),
            1 if n == 2 => Some(vec![gen(&[Eta], z)]),
            1 => Some(vec![gen(&[Eta], Some(2))]),
            2 => Some(vec![gen(&[Eta, Eta], Some(2))]),
            3 if n == 2 => Some(vec![gen(&[Eta, Eta, Eta], Some(2))]),
            3 if n == 3 => Some(vec![gen(&[Nu], Some(4))]),
            _ => None,
        },
        (Sphere { dim: m }, Moore { dim: p, order }) => {
            let b = p - 1;
            if m == b {
                return Some(vec![gen(&[I], Some(order))]);
            }
            if b < 2 || m - b > 2 {
                return None;
            }
            match (two_exponent(order), m - b) {
                (None, _) if order % 2 == 1 => Some(vec![]),
                (None, _) => None,
                (Some(r), 1) if p == 3 => Some(vec![gen(&[I, Eta], Some(1 << (r + 1)))]),
                (Some(_), 1) => Some(vec![gen(&[I, Eta], Some(2))]),
                (Some(1), _) => Some(vec![gen(&[EtaTilde(1)], Some(4))]),
                (Some(r), _) => Some(vec![
                    gen(&[EtaTilde(r)], Some(2)),
                    gen(&[I, Eta, Eta], Some(2)),
                ]),
            }
        }
        (Moore { dim: p, order }, Sphere { dim: n }) => {
            if n == p {
                return Some(vec![gen(&[Q], Some(order))]);
            }
            match (two_exponent(order), p - n) {
                (_, 1) if n == 2 => Some(vec![gen(&[Eta, Q], Some(order))]),
                (None, 1 | 2) if order % 2 == 1 && n >= 3 => Some(vec![]),
                (Some(_), 1) => Some(vec![gen(&[Eta, Q], Some(2))]),
                (Some(1), 2) if n >= 3 => Some(vec![gen(&[EtaBar(1)], Some(4))]),
                (Some(r), 2) if n >= 3 => Some(vec![
                    gen(&[EtaBar(r)], Some(2)),
                    gen(&[Eta, Eta, Q], Some(2)),
                ]),
                _ => None,
            }
        }
        (ChangEta { n: 2 }, Sphere { dim: 2 }) => Some(vec![]),
        (ChangR { n: 2, r }, Sphere { dim: 2 }) => Some(vec![gen(&[Eta, Q], Some(1 << (r + 1)))]),
        (ChangEta { n: 3 }, Sphere { dim: 3 }) => Some(vec![gen(&[ZetaBar], z)]),
        (ChangEta { n: 3 }, Sphere { dim: 5 }) | (ChangR { n: 3, .. }, Sphere { dim: 5 }) => {
            Some(vec![gen(&[Q], z)])
        }
        (ChangR { n: 3, .. }, Sphere { dim: 3 }) => Some(vec![gen(&[Eta, Q], Some(2))]),
        (ChangEta { n: 4 }, Sphere { dim: 5 }) => Some(vec![]),
        (ChangR { n: 4, r }, Sphere { dim: 5 }) => Some(vec![gen(&[Q], Some(1 << (r + 1)))]),
        (A2rEta2 { n: 2, r }, Sphere { dim: 3 }) => Some(vec![gen(&[Q], Some(1 << (r + 1)))]),
        (A2rEta2 { n: 2, .. }, Sphere { dim: 4 }) => Some(vec![gen(&[Eta, Q], Some(2))]),
        (A2rEta2 { n: 2, .. }, Sphere { dim: 5 }) | (ATilde { n: 2, .. }, Sphere { dim: 5 }) => {
            Some(vec![gen(&[Q], z)])
        }
        (A2rEta2 { n: 3, .. }, Sphere { dim: 3 }) => Some(vec![gen(&[Nu, Q], Some(2))]),
        (A2rEta2 { n: 3, .. }, Sphere { dim: 5 }) => Some(vec![gen(&[Eta, Q], Some(2))]),
        (ATilde { n: 3, .. }, Sphere { dim: 5 }) => Some(vec![]),
        (ATilde { n: 2, r: 1 }, Sphere { dim: 3 }) => Some(vec![]),
        (ATilde { n: 2, r }, Sphere { dim: 3 }) => Some(vec![gen(&[G], Some(1 << (r - 1)))]),
        _ => None,
    }
}

/// Every pair the table answers for sources and targets in the sample grid,
/// in a fixed order.
pub fn tabulated_pairs() -> Vec<(ElementaryComplex, ElementaryComplex)> {
    use ElementaryComplex::*;
    let mut out = Vec::new();
    for n in 2..=5u32 {
        for m in n..=n + 3 {
            out.push((Sphere { dim: m }, Sphere { dim: n }));
        }
    }
    for p in 3..=5u32 {
        for r in 1..=3u32 {
            for m in p - 1..=p + 1 {
                out.push((Sphere { dim: m }, ElementaryComplex::moore2(p, r)));
            }
        }
    }
    for p in 3..=5u32 {
        for r in 1..=3u32 {
            for n in p.saturating_sub(2).max(2)..=p {
                out.push((ElementaryComplex::moore2(p, r), Sphere { dim: n }));
            }
        }
    }
    let chang = [
        (ChangEta { n: 2 }, 2),
        (ChangEta { n: 3 }, 3),
        (ChangEta { n: 3 }, 5),
        (ChangEta { n: 4 }, 5),
    ];
    for (c, n) in chang {
        out.push((c, Sphere { dim: n }));
    }
    for r in 1..=3 {
        for (n, k) in [(2, 2), (3, 3), (3, 5), (4, 5)] {
            out.push((ChangR { n, r }, Sphere { dim: k }));
        }
    }
    for r in 1..=3 {
        for (n, k) in [(2, 3), (2, 4), (2, 5), (3, 3), (3, 5)] {
            out.push((A2rEta2 { n, r }, Sphere { dim: k }));
        }
        for (n, k) in [(2, 3), (2, 5), (3, 5)] {
            out.push((ATilde { n, r }, Sphere { dim: k }));
        }
    }
    out.retain(|&(s, t)| lookup(s, t).is_some());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use ElementaryComplex::*;

    fn group(s: ElementaryComplex, t: ElementaryComplex) -> FgAbelianGroup {
        maps_group(s, t).unwrap().group()
    }

    #[test]
    fn moore_homotopy() {
        for r in 1..5u32 {
            let e = maps_group(Sphere { dim: 3 }, ElementaryComplex::moore2(3, r)).unwrap();
            assert_eq!(e.group(), FgAbelianGroup::two_cyclic(r + 1));
            assert_eq!(e.generators[0].word.to_string(), "i eta");
            assert_eq!(
                group(Sphere { dim: 4 }, ElementaryComplex::moore2(4, r)),
                FgAbelianGroup::two_cyclic(1)
            );
            assert_eq!(
                group(Sphere { dim: 2 }, ElementaryComplex::moore2(3, r)),
                FgAbelianGroup::two_cyclic(r)
            );
        }
        let e = maps_group(Sphere { dim: 5 }, ElementaryComplex::moore2(4, 1)).unwrap();
        assert_eq!(e.group(), FgAbelianGroup::two_cyclic(2));
        assert_eq!(e.generators[0].word.to_string(), "eta~_1");
        let e = maps_group(Sphere { dim: 5 }, ElementaryComplex::moore2(4, 3)).unwrap();
        assert_eq!(e.group(), FgAbelianGroup::from_two_exponents(&[1, 1]));
        assert_eq!(e.generators[1].word.to_string(), "i eta^2");
    }

    #[test]
    fn odd_moore_vanishes() {
        assert!(group(Sphere { dim: 4 }, Moore { dim: 4, order: 9 }).is_trivial());
        assert!(group(Sphere { dim: 5 }, Moore { dim: 4, order: 3 }).is_trivial());
        assert_eq!(
            group(Sphere { dim: 3 }, Moore { dim: 4, order: 9 }),
            FgAbelianGroup::cyclic(9)
        );
    }

    #[test]
    fn cohomotopy_rows() {
        for r in 1..4u32 {
            let e = maps_group(ChangR { n: 3, r }, Sphere { dim: 3 }).unwrap();
            assert_eq!(e.group(), FgAbelianGroup::two_cyclic(1));
            assert_eq!(e.generators[0].word.to_string(), "eta q");
            let e = maps_group(A2rEta2 { n: 2, r }, Sphere { dim: 3 }).unwrap();
            assert_eq!(e.group(), FgAbelianGroup::two_cyclic(r + 1));
            assert_eq!(
                group(ChangR { n: 4, r }, Sphere { dim: 5 }),
                FgAbelianGroup::two_cyclic(r + 1)
            );
            assert!(group(ATilde { n: 3, r }, Sphere { dim: 5 }).is_trivial());
            assert_eq!(
                group(ElementaryComplex::moore2(5, r), Sphere { dim: 5 }),
                FgAbelianGroup::two_cyclic(r)
            );
        }
        assert!(group(ChangEta { n: 4 }, Sphere { dim: 5 }).is_trivial());
        assert_eq!(
            group(ChangEta { n: 3 }, Sphere { dim: 3 }),
            FgAbelianGroup::free(1)
        );
        assert_eq!(
            group(ElementaryComplex::moore2(5, 1), Sphere { dim: 3 }),
            FgAbelianGroup::two_cyclic(2)
        );
        assert_eq!(
            maps_group(A2rEta2 { n: 3, r: 2 }, Sphere { dim: 3 })
                .unwrap()
                .generators[0]
                .word
                .to_string(),
            "nu' q"
        );
    }

    #[test]
    fn spheres() {
        assert_eq!(
            group(Sphere { dim: 3 }, Sphere { dim: 2 }),
            FgAbelianGroup::free(1)
        );
        assert_eq!(
            group(Sphere { dim: 6 }, Sphere { dim: 3 }),
            FgAbelianGroup::two_cyclic(2)
        );
        assert!(group(Sphere { dim: 2 }, Sphere { dim: 5 }).is_trivial());
        assert!(maps_group(Sphere { dim: 7 }, Sphere { dim: 4 }).is_err());
    }

    #[test]
    fn misses_are_errors() {
        let e = maps_group(ChangT { n: 3, t: 1 }, Sphere { dim: 3 });
        assert!(matches!(e, Err(CatalogError::TableMiss { .. })));
    }

    #[test]
    fn tabulated_pairs_all_resolve() {
        let pairs = tabulated_pairs();
        assert!(pairs.len() > 60);
        for (s, t) in pairs {
            assert!(maps_group(s, t).is_ok());
        }
    }
}
