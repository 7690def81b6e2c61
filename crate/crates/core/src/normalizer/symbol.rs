use alloc::vec::Vec;
use core::fmt;

use super::NormalizerError;
use crate::catalog::{Atom, ElementaryComplex, Word};

/// A named map between catalog complexes, spelled as a word of atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    word: Word,
    source: ElementaryComplex,
    target: ElementaryComplex,
}

fn moore_exp(c: ElementaryComplex) -> Option<(u32, u32)> {
    match c {
        ElementaryComplex::Moore { dim, order } if order.is_power_of_two() => {
            Some((dim, order.trailing_zeros()))
        }
        _ => None,
    }
}

/// Target of `atom` applied to `source`. `hint` fixes the order of a Moore
/// target where the atom alone does not determine it.
fn step(atom: Atom, source: ElementaryComplex, hint: Option<u64>) -> Option<ElementaryComplex> {
    use ElementaryComplex::*;
    match (atom, source) {
        (Atom::Iota, s) => Some(s),
        (Atom::Degree(_), Sphere { dim }) => Some(Sphere { dim }),
        (Atom::Eta, Sphere { dim }) if dim >= 3 => Some(Sphere { dim: dim - 1 }),
        (Atom::Nu, Sphere { dim: 6 }) => Some(Sphere { dim: 3 }),
        (Atom::ZetaBar, ChangEta { n: 3 }) => Some(Sphere { dim: 3 }),
        (Atom::G, ATilde { n: 2, .. }) => Some(Sphere { dim: 3 }),
        (Atom::I, Sphere { dim }) if dim >= 2 => Some(Moore {
            dim: dim + 1,
            order: hint?,
        }),
        (Atom::Q, Sphere { .. }) => None,
        (Atom::Q, s) => Some(Sphere { dim: s.top_dim() }),
        (Atom::EtaTilde(r), Sphere { dim }) if dim >= 4 => {
            Some(ElementaryComplex::moore2(dim - 1, r))
        }
        (Atom::EtaBar(r), s) if moore_exp(s).is_some_and(|(p, e)| e == r && p >= 5) => {
            Some(Sphere {
                dim: s.top_dim() - 2,
            })
        }
        (Atom::Chi(r, s), m) if moore_exp(m).is_some_and(|(p, e)| e == r && p >= 3) => {
            Some(ElementaryComplex::moore2(m.top_dim(), s))
        }
        _ => None,
    }
}

/// Order a Moore space must have to be the source of `atom`, if forced.
fn required_order(atom: Atom) -> Option<u64> {
    match atom {
        Atom::Chi(r, _) | Atom::EtaBar(r) => Some(1 << r),
        _ => None,
    }
}

pub(crate) fn word_fits(word: &Word, source: ElementaryComplex, target: ElementaryComplex) -> bool {
    let atoms = word.atoms();
    let mut cur = source;
    for k in (0..atoms.len()).rev() {
        let hint = if k == 0 {
            match target {
                ElementaryComplex::Moore { order, .. } => Some(order),
                _ => None,
            }
        } else {
            Some(required_order(atoms[k - 1]).unwrap_or(2))
        };
        match step(atoms[k], cur, hint) {
            Some(next) => cur = next,
            None => return false,
        }
    }
    cur == target
}

impl GeneratorSymbol {
    pub fn new(
        word: Word,
        source: ElementaryComplex,
        target: ElementaryComplex,
    ) -> Result<Self, NormalizerError> {
        if word.atoms().is_empty() || !word_fits(&word, source, target) {
            return Err(NormalizerError::NotComposable);
        }
        Ok(Self {
            word,
            source,
            target,
        })
    }

    fn of(
        atoms: &[Atom],
        source: ElementaryComplex,
        target: ElementaryComplex,
    ) -> Result<Self, NormalizerError> {
        Self::new(Word::new(atoms), source, target)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn source(&self) -> ElementaryComplex {
        self.source
    }

    pub fn target(&self) -> ElementaryComplex {
        self.target
    }

    /// `self ∘ right`
    pub fn then_after(&self, right: &GeneratorSymbol) -> Result<Self, NormalizerError> {
        if right.target != self.source {
            return Err(NormalizerError::NotComposable);
        }
        let atoms: Vec<Atom> = self
            .word
            .atoms()
            .iter()
            .chain(right.word.atoms())
            .copied()
            .collect();
        Self::new(Word(atoms), right.source, self.target)
    }

    pub fn iota(x: ElementaryComplex) -> Self {
        Self {
            word: Word::new(&[Atom::Iota]),
            source: x,
            target: x,
        }
    }

    pub fn degree(dim: u32, k: i64) -> Result<Self, NormalizerError> {
        let s = ElementaryComplex::Sphere { dim };
        Self::of(&[Atom::Degree(k)], s, s)
    }

    /// `η: S^m -> S^{m-1}`
    pub fn eta(m: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::Eta],
            ElementaryComplex::Sphere { dim: m },
            ElementaryComplex::Sphere {
                dim: m.wrapping_sub(1),
            },
        )
    }

    /// `η²: S^m -> S^{m-2}`
    pub fn eta2(m: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::Eta, Atom::Eta],
            ElementaryComplex::Sphere { dim: m },
            ElementaryComplex::Sphere {
                dim: m.wrapping_sub(2),
            },
        )
    }

    pub fn nu_prime() -> Self {
        Self::of(
            &[Atom::Nu],
            ElementaryComplex::Sphere { dim: 6 },
            ElementaryComplex::Sphere { dim: 3 },
        )
        .expect("nu' shape")
    }

    /// Bottom-cell inclusion `i: S^{p-1} -> P^p(k)`.
    pub fn i(p: u32, order: u64) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::I],
            ElementaryComplex::Sphere {
                dim: p.wrapping_sub(1),
            },
            ElementaryComplex::moore(p, order),
        )
    }

    /// Pinch `q: P^p(k) -> S^p`.
    pub fn q(p: u32, order: u64) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::Q],
            ElementaryComplex::moore(p, order),
            ElementaryComplex::Sphere { dim: p },
        )
    }

    /// Pinch from any complex onto its top cell.
    pub fn pinch(x: ElementaryComplex) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::Q],
            x,
            ElementaryComplex::Sphere { dim: x.top_dim() },
        )
    }

    /// `η̃_r: S^{p+1} -> P^p(2^r)`
    pub fn eta_tilde(p: u32, r: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::EtaTilde(r)],
            ElementaryComplex::Sphere { dim: p + 1 },
            ElementaryComplex::moore2(p, r),
        )
    }

    /// `η̄_r: P^p(2^r) -> S^{p-2}`
    pub fn eta_bar(p: u32, r: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::EtaBar(r)],
            ElementaryComplex::moore2(p, r),
            ElementaryComplex::Sphere {
                dim: p.wrapping_sub(2),
            },
        )
    }

    /// `χ^r_s: P^p(2^r) -> P^p(2^s)`
    pub fn chi(p: u32, r: u32, s: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::Chi(r, s)],
            ElementaryComplex::moore2(p, r),
            ElementaryComplex::moore2(p, s),
        )
    }

    /// `i∘η: S^p -> P^p(2^r)`
    pub fn i_eta(p: u32, r: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::I, Atom::Eta],
            ElementaryComplex::Sphere { dim: p },
            ElementaryComplex::moore2(p, r),
        )
    }

    /// `i∘η²: S^{p+1} -> P^p(2^r)`
    pub fn i_eta2(p: u32, r: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::I, Atom::Eta, Atom::Eta],
            ElementaryComplex::Sphere { dim: p + 1 },
            ElementaryComplex::moore2(p, r),
        )
    }

    /// `η∘q: P^p(2^r) -> S^{p-1}`
    pub fn eta_q(p: u32, r: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::Eta, Atom::Q],
            ElementaryComplex::moore2(p, r),
            ElementaryComplex::Sphere {
                dim: p.wrapping_sub(1),
            },
        )
    }

    /// `i∘q: P^p(2^r) -> P^{p+1}(2^s)`
    pub fn i_q(p: u32, r: u32, s: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::I, Atom::Q],
            ElementaryComplex::moore2(p, r),
            ElementaryComplex::moore2(p + 1, s),
        )
    }

    /// `i∘η∘q: P^p(2^r) -> P^p(2^s)`
    pub fn i_eta_q(p: u32, r: u32, s: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::I, Atom::Eta, Atom::Q],
            ElementaryComplex::moore2(p, r),
            ElementaryComplex::moore2(p, s),
        )
    }

    /// `i∘η̄_r: P^p(2^r) -> P^{p-1}(2^s)`
    pub fn i_eta_bar(p: u32, r: u32, s: u32) -> Result<Self, NormalizerError> {
        Self::of(
            &[Atom::I, Atom::EtaBar(r)],
            ElementaryComplex::moore2(p, r),
            ElementaryComplex::moore2(p.wrapping_sub(1), s),
        )
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.word, self.source, self.target)
    }
}
