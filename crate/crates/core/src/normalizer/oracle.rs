use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::vector::{row_kind, RowKind, RowOp, SelfEquivalence};
use super::{GeneratorSymbol, MapVector, NormalizerError};
use crate::catalog::ElementaryComplex;

pub const MAX_TARGETS: usize = 4;
pub const MAX_STATES: u128 = 1 << 12;

/// Every catalog map `from -> to` the row operations may use, for a source
/// sphere of dimension `k`.
pub fn transfer_maps(
    k: u32,
    from: ElementaryComplex,
    to: ElementaryComplex,
) -> Vec<GeneratorSymbol> {
    use RowKind::*;
    let d = k.saturating_sub(1);
    let cands: Vec<Result<GeneratorSymbol, NormalizerError>> =
        match (row_kind(k, from), row_kind(k, to)) {
            (A, A) | (B, B) if from == to => alloc::vec![Ok(GeneratorSymbol::iota(from))],
            (A, B) => alloc::vec![GeneratorSymbol::eta(d)],
            (A, C(s)) => alloc::vec![GeneratorSymbol::i(k, 1 << s)],
            (A, D(s)) => alloc::vec![GeneratorSymbol::i_eta(d, s)],
            (B, D(s)) => alloc::vec![GeneratorSymbol::i(d, 1 << s)],
            (C(r), A) => alloc::vec![GeneratorSymbol::eta_q(k, r)],
            (C(r), B) => alloc::vec![GeneratorSymbol::eta_bar(k, r)],
            (C(r), C(s)) => alloc::vec![
                GeneratorSymbol::chi(k, r, s),
                GeneratorSymbol::i_eta_q(k, r, s)
            ],
            (C(r), D(s)) => alloc::vec![GeneratorSymbol::i_eta_bar(k, r, s)],
            (D(r), A) => alloc::vec![GeneratorSymbol::q(d, 1 << r)],
            (D(r), B) => alloc::vec![GeneratorSymbol::eta_q(d, r)],
            (D(r), C(s)) => alloc::vec![GeneratorSymbol::i_q(d, r, s)],
            (D(r), D(s)) => alloc::vec![
                GeneratorSymbol::chi(d, r, s),
                GeneratorSymbol::i_eta_q(d, r, s)
            ],
            _ => alloc::vec![],
        };
    cands.into_iter().filter_map(Result::ok).collect()
}

/// All single moves applicable to vectors with these targets.
pub fn legal_moves(v: &MapVector) -> Vec<RowOp> {
    let n = v.len();
    let k = match v.source() {
        ElementaryComplex::Sphere { dim } => dim,
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if v.targets()[i] == v.targets()[j] {
                out.push(RowOp::Swap(i, j));
            }
        }
    }
    for dst in 0..n {
        for src in 0..n {
            if dst == src {
                continue;
            }
            for map in transfer_maps(k, v.targets()[src], v.targets()[dst]) {
                out.push(RowOp::AddComposite {
                    dst,
                    src,
                    map,
                    coeff: 1,
                });
            }
        }
    }
    for row in 0..n {
        out.push(RowOp::SelfEquivalence {
            row,
            equiv: SelfEquivalence::Negate,
        });
        let top = v
            .entry(row)
            .basis()
            .iter()
            .filter_map(|g| g.order)
            .max()
            .unwrap_or(1) as i64;
        for odd in (3..top).step_by(2) {
            out.push(RowOp::SelfEquivalence {
                row,
                equiv: SelfEquivalence::OddMultiple(odd),
            });
        }
        if matches!(row_kind(k, v.targets()[row]), RowKind::C(_) | RowKind::D(_)) {
            out.push(RowOp::SelfEquivalence {
                row,
                equiv: SelfEquivalence::PlusIEtaQ,
            });
        }
    }
    out
}

type State = Vec<Vec<i64>>;

fn state_of(v: &MapVector) -> State {
    v.entries().iter().map(|e| e.coeffs().to_vec()).collect()
}

fn vector_of(template: &MapVector, s: &State) -> MapVector {
    let mut v = template.clone();
    for (k, c) in s.iter().enumerate() {
        let e = template.entry(k).with_coeffs(c);
        v.set_entry(k, e).expect("same shape");
    }
    v
}

/// Ordering used to pick the least orbit element: fewer nonzero entries
/// first, then earlier support, then coefficients.
pub fn orbit_key(v: &MapVector) -> (usize, Vec<usize>, State) {
    let support = v.support();
    (support.len(), support, state_of(v))
}

/// The closure of `v` under [`legal_moves`]. `seed` permutes the order in
/// which moves are tried; the resulting set does not depend on it.
pub fn orbit(v: &MapVector, seed: u64) -> Result<Vec<MapVector>, NormalizerError> {
    if v.len() > MAX_TARGETS {
        return Err(NormalizerError::TooLarge);
    }
    let mut size = 1u128;
    for e in v.entries() {
        size = size.saturating_mul(e.group_order().ok_or(NormalizerError::TooLarge)?);
    }
    if size > MAX_STATES {
        return Err(NormalizerError::TooLarge);
    }
    let mut moves = legal_moves(v);
    if !moves.is_empty() {
        let len = moves.len();
        moves.rotate_left((seed % len as u64) as usize);
    }
    let start = v.clone().with_unresolved_remainder(false);
    let mut seen: BTreeSet<State> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(state_of(&start));
    queue.push_back(start.clone());
    while let Some(cur) = queue.pop_front() {
        for op in &moves {
            let Ok(next) = cur.row_op(op) else { continue };
            if seen.insert(state_of(&next)) {
                queue.push_back(next);
            }
        }
    }
    let mut all: Vec<MapVector> = seen.iter().map(|s| vector_of(&start, s)).collect();
    all.sort_by_key(orbit_key);
    Ok(all)
}

/// Least element of the orbit of `v`.
pub fn oracle_normal_form(v: &MapVector, seed: u64) -> Result<MapVector, NormalizerError> {
    let all = orbit(v, seed)?;
    Ok(all.into_iter().next().expect("orbit contains v"))
}

/// Every vector from `S^k` into a sequence of at most `max_len` targets drawn
/// from `pool` (with repetition, in every order), over all coefficient states.
/// Pairs whose group is infinite are skipped.
pub fn enumerate_vectors(k: u32, pool: &[ElementaryComplex], max_len: usize) -> Vec<MapVector> {
    let source = ElementaryComplex::Sphere { dim: k };
    let mut lists: Vec<Vec<ElementaryComplex>> = alloc::vec![Vec::new()];
    let mut frontier = lists.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for l in &frontier {
            for &t in pool {
                let mut l = l.clone();
                l.push(t);
                next.push(l);
            }
        }
        lists.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for targets in lists {
        let Ok(zero) = MapVector::zero(source, &targets) else {
            continue;
        };
        let orders: Option<Vec<Vec<i64>>> = zero
            .entries()
            .iter()
            .map(|e| {
                e.basis()
                    .iter()
                    .map(|g| g.order.map(|o| o as i64))
                    .collect()
            })
            .collect();
        let Some(orders) = orders else { continue };
        let flat: Vec<i64> = orders.iter().flatten().copied().collect();
        let mut digits = alloc::vec![0i64; flat.len()];
        loop {
            let mut v = zero.clone();
            let mut at = 0;
            for (row, o) in orders.iter().enumerate() {
                let c = &digits[at..at + o.len()];
                at += o.len();
                v.set_entry(row, zero.entry(row).with_coeffs(c))
                    .expect("same shape");
            }
            out.push(v);
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < flat[pos] {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    out
}

/// Why [`MapVector::normalize`] disagrees with the orbit oracle on a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    NormalizeFailed(NormalizerError),
    OracleFailed(NormalizerError),
    NotInOrbit,
    NotIdempotent,
    OracleLeastNotNormal,
    CofiberMismatch,
}

/// Checks that `normalize(v)` lies in the orbit of `v`, is idempotent, and
/// has the same cofibre as the least orbit element.
pub fn check_against_oracle(v: &MapVector, seed: u64) -> Result<(), Discrepancy> {
    let n = v.normalize().map_err(Discrepancy::NormalizeFailed)?;
    let all = orbit(v, seed).map_err(Discrepancy::OracleFailed)?;
    if !all.iter().any(|w| state_of(w) == state_of(&n)) {
        return Err(Discrepancy::NotInOrbit);
    }
    if n.normalize().map_err(Discrepancy::NormalizeFailed)? != n {
        return Err(Discrepancy::NotIdempotent);
    }
    let least = &all[0];
    let a = least
        .cofiber()
        .map_err(|_| Discrepancy::OracleLeastNotNormal)?;
    let b = n.cofiber().map_err(Discrepancy::NormalizeFailed)?;
    if a != b {
        return Err(Discrepancy::CofiberMismatch);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalizer::MapClass;
    use alloc::vec;
    use ElementaryComplex::*;

    fn s(d: u32) -> ElementaryComplex {
        Sphere { dim: d }
    }

    #[test]
    fn eta_pair() {
        let e = MapClass::named(s(4), s(3), "eta", 1).unwrap();
        let v = MapVector::new(s(4), vec![e.clone(), e.clone()]).unwrap();
        let least = oracle_normal_form(&v, 0).unwrap();
        assert_eq!(least.support(), vec![0]);
    }

    #[test]
    fn i_eta_pair_prefers_larger_order() {
        let p2 = ElementaryComplex::moore2(4, 1);
        let p4 = ElementaryComplex::moore2(4, 2);
        let v = MapVector::new(
            s(4),
            vec![
                MapClass::named(s(4), p2, "i eta", 1).unwrap(),
                MapClass::named(s(4), p4, "i eta", 1).unwrap(),
            ],
        )
        .unwrap();
        let least = oracle_normal_form(&v, 0).unwrap();
        assert_eq!(least.support(), vec![1]);
        assert_eq!(orbit(&v, 0).unwrap().len(), 2);
    }

    #[test]
    fn zero_is_fixed() {
        let v = MapVector::zero(s(5), &[s(4), ElementaryComplex::moore2(4, 1)]).unwrap();
        assert_eq!(orbit(&v, 0).unwrap(), vec![v.clone()]);
    }

    #[test]
    fn seed_does_not_matter() {
        let p = ElementaryComplex::moore2(4, 1);
        let v = MapVector::new(
            s(5),
            vec![
                MapClass::named(s(5), s(4), "eta", 1).unwrap(),
                MapClass::named(s(5), p, "eta~_1", 2).unwrap(),
            ],
        )
        .unwrap();
        let a = orbit(&v, 0).unwrap();
        for seed in 1..20 {
            assert_eq!(orbit(&v, seed).unwrap(), a);
        }
    }

    #[test]
    fn bounds() {
        let v = MapVector::zero(s(4), &[s(4)]).unwrap();
        assert_eq!(orbit(&v, 0), Err(NormalizerError::TooLarge));
        let v = MapVector::zero(s(5), &[s(4); 5]).unwrap();
        assert_eq!(orbit(&v, 0), Err(NormalizerError::TooLarge));
    }
}
