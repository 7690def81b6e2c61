use alloc::vec::Vec;
use core::fmt;

use super::relation::compose_with;
use super::{GeneratorSymbol, MapClass, NormalizerError};
use crate::catalog::{ElementaryComplex, WedgeComplex};

/// A map from a sphere into a wedge, one component per wedge summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapVector {
    source: ElementaryComplex,
    targets: Vec<ElementaryComplex>,
    entries: Vec<MapClass>,
    /// set when a Whitehead-product remainder was dropped and not discharged
    unresolved_remainder: bool,
}

/// Which component of `[S^k, -]` a summand carries, relative to `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RowKind {
    /// `S^{k-1}`, entries `η`
    A,
    /// `S^{k-2}`, entries `η²`
    B,
    /// `P^k(2^s)`, entries `iη`
    C(u32),
    /// `P^{k-1}(2^r)`, entries `η̃_r`, `iη²`
    D(u32),
    /// anything else; must carry the zero map
    Other,
}

pub(crate) fn row_kind(k: u32, t: ElementaryComplex) -> RowKind {
    match t {
        ElementaryComplex::Sphere { dim } if dim + 1 == k => RowKind::A,
        ElementaryComplex::Sphere { dim } if dim + 2 == k => RowKind::B,
        ElementaryComplex::Moore { dim, order } if order.is_power_of_two() && dim == k => {
            RowKind::C(order.trailing_zeros())
        }
        ElementaryComplex::Moore { dim, order } if order.is_power_of_two() && dim + 1 == k => {
            RowKind::D(order.trailing_zeros())
        }
        _ => RowKind::Other,
    }
}

/// Self-equivalences of a single summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelfEquivalence {
    Negate,
    /// `k` odd
    OddMultiple(i64),
    /// `1 + i∘η∘q` on a Moore space
    PlusIEtaQ,
}

/// An elementary row operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RowOp {
    Swap(usize, usize),
    /// `row[dst] += coeff · map ∘ row[src]`, with `map: targets[src] -> targets[dst]`
    AddComposite {
        dst: usize,
        src: usize,
        map: GeneratorSymbol,
        coeff: i64,
    },
    SelfEquivalence {
        row: usize,
        equiv: SelfEquivalence,
    },
}

impl MapVector {
    pub fn new(source: ElementaryComplex, entries: Vec<MapClass>) -> Result<Self, NormalizerError> {
        if entries.iter().any(|e| e.source() != source) {
            return Err(NormalizerError::NotComposable);
        }
        let targets = entries.iter().map(MapClass::target).collect();
        Ok(Self {
            source,
            targets,
            entries,
            unresolved_remainder: false,
        })
    }

    pub fn zero(
        source: ElementaryComplex,
        targets: &[ElementaryComplex],
    ) -> Result<Self, NormalizerError> {
        let entries = targets
            .iter()
            .map(|&t| MapClass::zero(source, t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, entries)
    }

    pub fn source(&self) -> ElementaryComplex {
        self.source
    }

    pub fn targets(&self) -> &[ElementaryComplex] {
        &self.targets
    }

    pub fn entries(&self) -> &[MapClass] {
        &self.entries
    }

    pub fn entry(&self, k: usize) -> &MapClass {
        &self.entries[k]
    }

    pub fn set_entry(&mut self, k: usize, value: MapClass) -> Result<(), NormalizerError> {
        if value.source() != self.source || value.target() != self.targets[k] {
            return Err(NormalizerError::NotComposable);
        }
        self.entries[k] = value;
        Ok(())
    }

    pub fn unresolved_remainder(&self) -> bool {
        self.unresolved_remainder
    }

    pub fn with_unresolved_remainder(mut self, flag: bool) -> Self {
        self.unresolved_remainder = flag;
        self
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MapClass::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| !self.entries[k].is_zero())
            .collect()
    }

    fn source_dim(&self) -> Result<u32, NormalizerError> {
        match self.source {
            ElementaryComplex::Sphere { dim } => Ok(dim),
            _ => Err(NormalizerError::Unsupported(alloc::format!(
                "source {}",
                self.source
            ))),
        }
    }

    pub fn row_op(&self, op: &RowOp) -> Result<Self, NormalizerError> {
        let n = self.len();
        let mut out = self.clone();
        match *op {
            RowOp::Swap(i, j) => {
                if i >= n || j >= n || self.targets[i] != self.targets[j] {
                    return Err(NormalizerError::IllegalOp);
                }
                out.entries.swap(i, j);
            }
            RowOp::AddComposite {
                dst,
                src,
                ref map,
                coeff,
            } => {
                if dst >= n || src >= n || dst == src {
                    return Err(NormalizerError::IllegalOp);
                }
                if map.source() != self.targets[src] || map.target() != self.targets[dst] {
                    return Err(NormalizerError::IllegalOp);
                }
                let add = compose_with(map, &self.entries[src])
                    .map_err(|_| NormalizerError::IllegalOp)?;
                out.entries[dst] = self.entries[dst].add(&add.scaled(coeff));
            }
            RowOp::SelfEquivalence { row, equiv } => {
                if row >= n {
                    return Err(NormalizerError::IllegalOp);
                }
                let e = &self.entries[row];
                out.entries[row] = match equiv {
                    SelfEquivalence::Negate => e.scaled(-1),
                    SelfEquivalence::OddMultiple(k) if k % 2 != 0 => e.scaled(k),
                    SelfEquivalence::OddMultiple(_) => return Err(NormalizerError::IllegalOp),
                    SelfEquivalence::PlusIEtaQ => {
                        let ElementaryComplex::Moore { dim, order } = self.targets[row] else {
                            return Err(NormalizerError::IllegalOp);
                        };
                        if !order.is_power_of_two() {
                            return Err(NormalizerError::IllegalOp);
                        }
                        let r = order.trailing_zeros();
                        let g = GeneratorSymbol::i_eta_q(dim, r, r)
                            .map_err(|_| NormalizerError::IllegalOp)?;
                        let add = compose_with(&g, e).map_err(|_| NormalizerError::IllegalOp)?;
                        e.add(&add)
                    }
                };
            }
        }
        Ok(out)
    }

    fn apply(&mut self, op: RowOp) -> Result<(), NormalizerError> {
        *self = self.row_op(&op)?;
        Ok(())
    }

    /// Canonical form under elementary row operations.
    ///
    /// At most one entry survives. Priority, highest first: an odd `η̃` entry
    /// (the one of least exponent, then least index), an `η` entry (least
    /// index), an `iη` entry (greatest exponent, then greatest index), an `η²`
    /// entry (least index), an `iη²` entry (greatest exponent, then greatest
    /// index).
    pub fn normalize(&self) -> Result<Self, NormalizerError> {
        let k = self.source_dim()?;
        let kinds: Vec<RowKind> = self.targets.iter().map(|&t| row_kind(k, t)).collect();
        for (idx, kind) in kinds.iter().enumerate() {
            if *kind == RowKind::Other && !self.entries[idx].is_zero() {
                return Err(NormalizerError::Unsupported(alloc::format!(
                    "component into {}",
                    self.targets[idx]
                )));
            }
        }
        let mut v = self.clone();
        let tilde =
            |v: &Self, idx: usize, r: u32| v.entries[idx].coeff(&alloc::format!("eta~_{r}"));
        let i_eta2 = |v: &Self, idx: usize, r: u32| {
            if r == 1 {
                // iη² = 2η̃₁
                (tilde(v, idx, 1) % 2 == 0 && tilde(v, idx, 1) != 0) as i64
            } else {
                v.entries[idx].coeff("i eta^2")
            }
        };

        // odd η̃
        let odd_tilde = (0..v.len())
            .filter_map(|idx| match kinds[idx] {
                RowKind::D(r) if tilde(&v, idx, r) % 2 != 0 => Some((r, idx)),
                _ => None,
            })
            .min();
        if let Some((rp, p)) = odd_tilde {
            let dim_p = self.targets[p].top_dim();
            if rp == 1 {
                if tilde(&v, p, 1) == 3 {
                    v.apply(RowOp::SelfEquivalence {
                        row: p,
                        equiv: SelfEquivalence::Negate,
                    })?;
                }
            } else if v.entries[p].coeff("i eta^2") != 0 {
                v.apply(RowOp::SelfEquivalence {
                    row: p,
                    equiv: SelfEquivalence::PlusIEtaQ,
                })?;
            }
            for l in 0..v.len() {
                if l == p || v.entries[l].is_zero() {
                    continue;
                }
                let t = self.targets[l];
                match kinds[l] {
                    RowKind::D(rl) => {
                        let a = tilde(&v, l, rl);
                        if a != 0 && (rl > 1 || a % 2 != 0) {
                            let chi = GeneratorSymbol::chi(dim_p, rp, rl)?;
                            v.apply(RowOp::AddComposite {
                                dst: l,
                                src: p,
                                map: chi,
                                coeff: -a,
                            })?;
                        }
                        if i_eta2(&v, l, rl) != 0 {
                            let g = GeneratorSymbol::i_eta_q(dim_p, rp, rl)?;
                            v.apply(RowOp::AddComposite {
                                dst: l,
                                src: p,
                                map: g,
                                coeff: 1,
                            })?;
                        }
                    }
                    RowKind::A => {
                        let g = GeneratorSymbol::q(dim_p, 1 << rp)?;
                        v.apply(RowOp::AddComposite {
                            dst: l,
                            src: p,
                            map: g,
                            coeff: 1,
                        })?;
                    }
                    RowKind::C(s) => {
                        let g = GeneratorSymbol::i_q(dim_p, rp, s)?;
                        v.apply(RowOp::AddComposite {
                            dst: l,
                            src: p,
                            map: g,
                            coeff: 1,
                        })?;
                    }
                    RowKind::B => {
                        let g = GeneratorSymbol::eta_q(dim_p, rp)?;
                        v.apply(RowOp::AddComposite {
                            dst: l,
                            src: p,
                            map: g,
                            coeff: 1,
                        })?;
                    }
                    RowKind::Other => unreachable!("checked above: {t}"),
                }
            }
            return Ok(v);
        }

        // η
        if let Some(p) =
            (0..v.len()).find(|&idx| kinds[idx] == RowKind::A && !v.entries[idx].is_zero())
        {
            let s = self.targets[p];
            let d = s.top_dim();
            for l in 0..v.len() {
                if l == p || v.entries[l].is_zero() {
                    continue;
                }
                let g = match kinds[l] {
                    RowKind::A => GeneratorSymbol::iota(s),
                    RowKind::C(r) => GeneratorSymbol::i(d + 1, 1 << r)?,
                    RowKind::B => GeneratorSymbol::eta(d)?,
                    RowKind::D(r) => {
                        GeneratorSymbol::i(d, 1 << r)?.then_after(&GeneratorSymbol::eta(d)?)?
                    }
                    RowKind::Other => unreachable!(),
                };
                v.apply(RowOp::AddComposite {
                    dst: l,
                    src: p,
                    map: g,
                    coeff: 1,
                })?;
            }
            return Ok(v);
        }

        // iη
        let c_pivot = (0..v.len())
            .filter_map(|idx| match kinds[idx] {
                RowKind::C(r) if !v.entries[idx].is_zero() => Some((r, idx)),
                _ => None,
            })
            .max();
        if let Some((rp, p)) = c_pivot {
            for l in 0..v.len() {
                if l == p || v.entries[l].is_zero() {
                    continue;
                }
                let g = match kinds[l] {
                    RowKind::C(rl) => GeneratorSymbol::chi(k, rp, rl)?,
                    RowKind::B => GeneratorSymbol::eta_bar(k, rp)?,
                    RowKind::D(rl) => GeneratorSymbol::i_eta_bar(k, rp, rl)?,
                    _ => unreachable!("A rows are empty and D rows carry no odd η̃ here"),
                };
                v.apply(RowOp::AddComposite {
                    dst: l,
                    src: p,
                    map: g,
                    coeff: 1,
                })?;
            }
            return Ok(v);
        }

        // η²
        if let Some(p) =
            (0..v.len()).find(|&idx| kinds[idx] == RowKind::B && !v.entries[idx].is_zero())
        {
            let s = self.targets[p];
            let d = s.top_dim();
            for l in 0..v.len() {
                if l == p || v.entries[l].is_zero() {
                    continue;
                }
                let g = match kinds[l] {
                    RowKind::B => GeneratorSymbol::iota(s),
                    RowKind::D(r) => GeneratorSymbol::i(d + 1, 1 << r)?,
                    _ => unreachable!(),
                };
                v.apply(RowOp::AddComposite {
                    dst: l,
                    src: p,
                    map: g,
                    coeff: 1,
                })?;
            }
            return Ok(v);
        }

        // iη²
        let d_pivot = (0..v.len())
            .filter_map(|idx| match kinds[idx] {
                RowKind::D(r) if !v.entries[idx].is_zero() => Some((r, idx)),
                _ => None,
            })
            .max();
        if let Some((rp, p)) = d_pivot {
            let dim_p = self.targets[p].top_dim();
            for l in 0..v.len() {
                if l == p || v.entries[l].is_zero() {
                    continue;
                }
                let RowKind::D(rl) = kinds[l] else {
                    unreachable!()
                };
                let g = GeneratorSymbol::chi(dim_p, rp, rl)?;
                v.apply(RowOp::AddComposite {
                    dst: l,
                    src: p,
                    map: g,
                    coeff: 1,
                })?;
            }
        }
        Ok(v)
    }

    /// The homotopy cofibre of a vector with at most one nonzero entry.
    pub fn cofiber(&self) -> Result<WedgeComplex, NormalizerError> {
        if self.unresolved_remainder {
            return Err(NormalizerError::UnresolvedRemainder);
        }
        let k = self.source_dim()?;
        let support = self.support();
        if support.len() > 1 {
            return Err(NormalizerError::NotNormalForm);
        }
        let mut w = WedgeComplex::new(self.targets.iter().copied());
        let Some(&p) = support.first() else {
            w.push(ElementaryComplex::Sphere { dim: k + 1 });
            return Ok(w);
        };
        let t = self.targets[p];
        let e = &self.entries[p];
        let attached = match row_kind(k, t) {
            RowKind::A => ElementaryComplex::ChangEta { n: k - 1 },
            RowKind::C(r) => ElementaryComplex::ChangR { n: k - 1, r },
            RowKind::B => ElementaryComplex::AEta2 { n: k - 2 },
            RowKind::D(r) => {
                let a = e.coeff(&alloc::format!("eta~_{r}"));
                if a % 2 != 0 {
                    ElementaryComplex::ATilde { n: k - 2, r }
                } else {
                    ElementaryComplex::A2rEta2 { n: k - 2, r }
                }
            }
            RowKind::Other => {
                return Err(NormalizerError::Unsupported(alloc::format!(
                    "cofibre into {t}"
                )))
            }
        };
        w.remove_one(&t);
        w.push(attached);
        Ok(w)
    }
}

impl fmt::Display for MapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")^t: {} -> ", self.source)?;
        if self.targets.is_empty() {
            return f.write_str("*");
        }
        for (k, t) in self.targets.iter().enumerate() {
            if k > 0 {
                f.write_str(" v ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
