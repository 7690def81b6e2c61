use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{GeneratorSymbol, NormalizerError};
use crate::catalog::{maps_group, Atom, ElementaryComplex, Generator, Word};

/// An element of `[source, target]`, as coefficients on the tabulated basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapClass {
    source: ElementaryComplex,
    target: ElementaryComplex,
    basis: Vec<Generator>,
    coeffs: Vec<i64>,
}

fn reduce(c: i64, order: Option<u64>) -> i64 {
    match order {
        Some(k) => c.rem_euclid(k as i64),
        None => c,
    }
}

impl MapClass {
    pub fn zero(
        source: ElementaryComplex,
        target: ElementaryComplex,
    ) -> Result<Self, NormalizerError> {
        let entry = maps_group(source, target)?;
        let n = entry.generators.len();
        Ok(Self {
            source,
            target,
            basis: entry.generators,
            coeffs: vec![0; n],
        })
    }

    pub fn from_coeffs(
        source: ElementaryComplex,
        target: ElementaryComplex,
        coeffs: &[i64],
    ) -> Result<Self, NormalizerError> {
        let mut m = Self::zero(source, target)?;
        if coeffs.len() != m.basis.len() {
            return Err(NormalizerError::LengthMismatch);
        }
        for (k, &c) in coeffs.iter().enumerate() {
            m.coeffs[k] = reduce(c, m.basis[k].order);
        }
        Ok(m)
    }

    /// The basis element spelled `name` (e.g. `"i eta^2"`), times `c`.
    pub fn named(
        source: ElementaryComplex,
        target: ElementaryComplex,
        name: &str,
        c: i64,
    ) -> Result<Self, NormalizerError> {
        let mut m = Self::zero(source, target)?;
        let k = m
            .index_of(name)
            .ok_or_else(|| NormalizerError::UnknownGenerator(name.into()))?;
        m.coeffs[k] = reduce(c, m.basis[k].order);
        Ok(m)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        use alloc::string::ToString;
        self.basis.iter().position(|g| g.word.to_string() == name)
    }

    pub fn source(&self) -> ElementaryComplex {
        self.source
    }

    pub fn target(&self) -> ElementaryComplex {
        self.target
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> i64 {
        self.index_of(name).map_or(0, |k| self.coeffs[k])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Number of elements when every generator has finite order.
    pub fn group_order(&self) -> Option<u128> {
        self.basis
            .iter()
            .try_fold(1u128, |acc, g| g.order.map(|k| acc * k as u128))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!((self.source, self.target), (other.source, other.target));
        let mut out = self.clone();
        for k in 0..out.coeffs.len() {
            out.coeffs[k] = reduce(self.coeffs[k] + other.coeffs[k], self.basis[k].order);
        }
        out
    }

    pub fn scaled(&self, s: i64) -> Self {
        let mut out = self.clone();
        for k in 0..out.coeffs.len() {
            out.coeffs[k] = reduce(self.coeffs[k] * s, self.basis[k].order);
        }
        out
    }

    pub(crate) fn with_coeffs(&self, coeffs: &[i64]) -> Self {
        let mut out = self.clone();
        for k in 0..out.coeffs.len() {
            out.coeffs[k] = reduce(coeffs[k], self.basis[k].order);
        }
        out
    }

    pub fn terms(&self) -> Vec<(String, i64)> {
        use alloc::string::ToString;
        self.basis
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(g, &c)| (g.word.to_string(), c))
            .collect()
    }
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (name, c)) in terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if *c == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{c} {name}")?;
            }
        }
        Ok(())
    }
}

/// A word reduced by the relation table: `scalar · word`, or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Reduced {
    Zero,
    Term(i64, Vec<Atom>),
}

fn pow2(e: u32) -> i64 {
    1i64 << e
}

/// One rewrite of an adjacent pair `x∘y`.
fn rewrite_pair(x: Atom, y: Atom) -> Option<Reduced> {
    use Atom::*;
    Some(match (x, y) {
        (Q, I) => Reduced::Zero,
        (Q, EtaTilde(_)) => Reduced::Term(1, vec![Eta]),
        (EtaBar(_), I) => Reduced::Term(1, vec![Eta]),
        (Chi(r, s), I) => Reduced::Term(if r >= s { 1 } else { pow2(s - r) }, vec![I]),
        (Q, Chi(r, s)) => Reduced::Term(if r >= s { pow2(r - s) } else { 1 }, vec![Q]),
        (Chi(r, s), EtaTilde(t)) if t == r => {
            Reduced::Term(if s >= r { 1 } else { pow2(r - s) }, vec![EtaTilde(s)])
        }
        (EtaBar(1), EtaTilde(1)) => Reduced::Term(1, vec![Nu]),
        _ => return None,
    })
}

fn reduce_word(atoms: &[Atom]) -> Reduced {
    let mut scalar = 1i64;
    let mut w: Vec<Atom> = Vec::with_capacity(atoms.len());
    for &a in atoms {
        match a {
            Atom::Iota => {}
            Atom::Degree(k) => scalar *= k,
            a => w.push(a),
        }
    }
    if scalar == 0 {
        return Reduced::Zero;
    }
    'outer: loop {
        for k in 0..w.len().saturating_sub(1) {
            if let Some(r) = rewrite_pair(w[k], w[k + 1]) {
                match r {
                    Reduced::Zero => return Reduced::Zero,
                    Reduced::Term(c, repl) => {
                        scalar *= c;
                        w.splice(k..k + 2, repl);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    Reduced::Term(scalar, w)
}

/// Coefficients of the reduced word on the basis of `[source, target]`.
fn express(
    term: Reduced,
    source: ElementaryComplex,
    target: ElementaryComplex,
) -> Result<MapClass, NormalizerError> {
    use Atom::*;
    let zero = MapClass::zero(source, target)?;
    let (c, w) = match term {
        Reduced::Zero => return Ok(zero),
        Reduced::Term(c, w) => (c, w),
    };
    let mut coeffs = vec![0i64; zero.basis.len()];
    if let Some(k) = zero
        .basis
        .iter()
        .position(|g| g.word.atoms() == w.as_slice())
    {
        coeffs[k] = c;
        return Ok(zero.with_coeffs(&coeffs));
    }
    // relations not visible in the basis words
    let (c2, alt): (i64, &[Atom]) = match w.as_slice() {
        [I, Eta, Eta] => (2, &[EtaTilde(1)]),
        [Eta, Eta, Q] => (2, &[EtaBar(1)]),
        [Eta, Eta, Eta] => (2, &[Nu]),
        _ => (0, &[]),
    };
    if c2 != 0 {
        if let Some(k) = zero.basis.iter().position(|g| g.word.atoms() == alt) {
            coeffs[k] = c * c2;
            return Ok(zero.with_coeffs(&coeffs));
        }
    }
    // a composite landing in a trivial group is zero
    if zero.basis.is_empty() {
        return Ok(zero);
    }
    Err(NormalizerError::Unsupported(alloc::format!(
        "{} in [{source}, {target}]",
        Word(w)
    )))
}

/// Normal form of `left ∘ right` via the relation table.
pub fn compose_relation(
    left: &GeneratorSymbol,
    right: &GeneratorSymbol,
) -> Result<MapClass, NormalizerError> {
    let composite = left.then_after(right)?;
    express(
        reduce_word(composite.word().atoms()),
        composite.source(),
        left.target(),
    )
}

/// `g ∘ x`, extended linearly over the basis of `x`. Valid in the stable
/// range, where composition distributes on both sides.
pub fn compose_with(g: &GeneratorSymbol, x: &MapClass) -> Result<MapClass, NormalizerError> {
    if g.source() != x.target {
        return Err(NormalizerError::NotComposable);
    }
    let mut acc = MapClass::zero(x.source, g.target())?;
    for (gen, &c) in x.basis.iter().zip(&x.coeffs) {
        if c == 0 {
            continue;
        }
        let atoms: Vec<Atom> = g
            .word()
            .atoms()
            .iter()
            .chain(gen.word.atoms())
            .copied()
            .collect();
        let part = express(reduce_word(&atoms), x.source, g.target())?;
        acc = acc.add(&part.scaled(c));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use ElementaryComplex::*;

    #[test]
    fn chi_on_inclusion() {
        for r in 1..=4u32 {
            for s in 1..=4u32 {
                let chi = GeneratorSymbol::chi(4, r, s).unwrap();
                let i = GeneratorSymbol::i(4, 1 << r).unwrap();
                let got = compose_relation(&chi, &i).unwrap();
                let expect = if r >= s { 1 } else { 1i64 << (s - r) };
                assert_eq!(got.coeff("i"), expect % (1 << s), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn pinch_after_chi() {
        for r in 1..=4u32 {
            for s in 1..=4u32 {
                let q = GeneratorSymbol::q(4, 1 << s).unwrap();
                let chi = GeneratorSymbol::chi(4, r, s).unwrap();
                let got = compose_relation(&q, &chi).unwrap();
                let expect = if r >= s { 1i64 << (r - s) } else { 1 };
                assert_eq!(got.coeff("q"), expect % (1 << r), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn chi_on_eta_tilde() {
        for r in 1..=4u32 {
            for s in 1..=4u32 {
                let chi = GeneratorSymbol::chi(4, r, s).unwrap();
                let et = GeneratorSymbol::eta_tilde(4, r).unwrap();
                let got = compose_relation(&chi, &et).unwrap();
                let name = alloc::format!("eta~_{s}");
                let mult = if s >= r { 1 } else { 1i64 << (r - s) };
                let order = if s == 1 { 4 } else { 2 };
                assert_eq!(got.coeff(&name), mult % order, "r={r} s={s}");
            }
        }
    }

    #[test]
    fn pinch_detects_eta() {
        for r in 1..=4u32 {
            for p in 4..=5u32 {
                let q = GeneratorSymbol::q(p, 1 << r).unwrap();
                let et = GeneratorSymbol::eta_tilde(p, r).unwrap();
                let got = compose_relation(&q, &et).unwrap();
                assert_eq!(got.to_string(), "eta");
                assert_eq!(got.target(), Sphere { dim: p });
            }
        }
    }

    #[test]
    fn eta_bar_on_inclusion() {
        for r in 1..=3u32 {
            let eb = GeneratorSymbol::eta_bar(5, r).unwrap();
            let i = GeneratorSymbol::i(5, 1 << r).unwrap();
            assert_eq!(compose_relation(&eb, &i).unwrap().to_string(), "eta");
        }
    }

    #[test]
    fn nu_prime_relations() {
        let eb = GeneratorSymbol::eta_bar(5, 1).unwrap();
        let et = GeneratorSymbol::eta_tilde(5, 1).unwrap();
        assert_eq!(compose_relation(&eb, &et).unwrap().to_string(), "nu'");
        let eta3 = GeneratorSymbol::eta(4)
            .unwrap()
            .then_after(&GeneratorSymbol::eta2(6).unwrap())
            .unwrap();
        let iota = GeneratorSymbol::iota(Sphere { dim: 6 });
        let v = compose_relation(&eta3, &iota).unwrap();
        assert_eq!(v.coeff("nu'"), 2);
        assert_eq!(v.to_string(), "2 nu'");
    }

    #[test]
    fn twice_eta_tilde_one() {
        let s5 = Sphere { dim: 5 };
        let x = MapClass::named(s5, ElementaryComplex::moore2(4, 1), "eta~_1", 2).unwrap();
        let i_eta2 = GeneratorSymbol::i_eta2(4, 1).unwrap();
        let y = compose_relation(&i_eta2, &GeneratorSymbol::iota(s5)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn order_annihilates() {
        for r in 1..=4u32 {
            let x = MapClass::named(
                Sphere { dim: 3 },
                ElementaryComplex::moore2(3, r),
                "i eta",
                1,
            )
            .unwrap();
            assert!(x.scaled(1 << (r + 1)).is_zero());
            assert!(!x.scaled(1 << r).is_zero());
        }
    }

    #[test]
    fn unsupported_composite() {
        let eb = GeneratorSymbol::eta_bar(5, 2).unwrap();
        let et = GeneratorSymbol::eta_tilde(5, 2).unwrap();
        assert!(matches!(
            compose_relation(&eb, &et),
            Err(NormalizerError::Unsupported(_))
        ));
    }
}
