use alloc::vec;
use alloc::vec::Vec;

use super::ElementaryComplex;

/// Dense matrix over `Z/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.bits[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<bool>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| m[r][c]) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..self.rows {
                if r != rank && m[r][c] {
                    for k in 0..self.cols {
                        let v = m[rank][k];
                        m[r][k] ^= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Square and invertible. The empty map `0 -> 0` counts.
    pub fn is_isomorphism(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Mod-2 cohomology of a complex with its primary and secondary operations.
///
/// Classes are listed by degree, ascending; operations refer to them by
/// position in `classes`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperationProfile {
    pub classes: Vec<u32>,
    /// `(source, target)` with `Sq²(source) = target`
    pub sq2: Vec<(usize, usize)>,
    /// `(r, source, target)` with `β_r(source) = target`
    pub bockstein: Vec<(u32, usize, usize)>,
    /// `Θ` nontrivial on the bottom class
    pub theta: bool,
    /// coefficient of `𝔓₁` on the degree-2 class where the complex carries one
    pub pontryagin: Option<u64>,
}

impl OperationProfile {
    pub fn dimension(&self, k: u32) -> usize {
        self.classes.iter().filter(|&&d| d == k).count()
    }

    fn local_index(&self, idx: usize) -> usize {
        let deg = self.classes[idx];
        self.classes[..idx].iter().filter(|&&d| d == deg).count()
    }

    /// Matrix of `Sq²: H^k -> H^{k+2}`, rows indexed by the target.
    pub fn sq2_matrix(&self, k: u32) -> F2Matrix {
        let mut m = F2Matrix::zeros(self.dimension(k + 2), self.dimension(k));
        for &(s, t) in &self.sq2 {
            if self.classes[s] == k {
                m.set(self.local_index(t), self.local_index(s), true);
            }
        }
        m
    }

    /// `(r, source degree)` for every nontrivial higher Bockstein, sorted.
    pub fn bockstein_profile(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self
            .bockstein
            .iter()
            .map(|&(r, s, _)| (r, self.classes[s]))
            .collect();
        v.sort_unstable();
        v
    }

    /// Alternating sum of the mod-2 Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        self.classes
            .iter()
            .map(|&d| if d % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn shifted(&self, by: u32) -> Self {
        let mut p = self.clone();
        for d in &mut p.classes {
            *d += by;
        }
        p
    }

    /// Structural checks: degrees ascend, operations connect existing classes
    /// in the right degrees.
    pub fn is_consistent(&self) -> bool {
        let n = self.classes.len();
        let ascending = self.classes.windows(2).all(|w| w[0] <= w[1]);
        let sq2 = self
            .sq2
            .iter()
            .all(|&(s, t)| s < n && t < n && self.classes[t] == self.classes[s] + 2);
        let beta = self
            .bockstein
            .iter()
            .all(|&(r, s, t)| r >= 1 && s < n && t < n && self.classes[t] == self.classes[s] + 1);
        ascending && sq2 && beta
    }

    /// Profile of a wedge, classes merged in degree order.
    pub fn wedge<'a>(parts: impl IntoIterator<Item = &'a OperationProfile>) -> Self {
        let mut tagged: Vec<(u32, usize, usize)> = Vec::new();
        let parts: Vec<&OperationProfile> = parts.into_iter().collect();
        for (pi, p) in parts.iter().enumerate() {
            for (ci, &d) in p.classes.iter().enumerate() {
                tagged.push((d, pi, ci));
            }
        }
        tagged.sort_unstable();
        let mut pos = vec![Vec::new(); parts.len()];
        for (pi, p) in parts.iter().enumerate() {
            pos[pi] = vec![0; p.classes.len()];
        }
        for (new, &(_, pi, ci)) in tagged.iter().enumerate() {
            pos[pi][ci] = new;
        }
        let mut out = OperationProfile {
            classes: tagged.iter().map(|t| t.0).collect(),
            ..Default::default()
        };
        for (pi, p) in parts.iter().enumerate() {
            out.sq2
                .extend(p.sq2.iter().map(|&(s, t)| (pos[pi][s], pos[pi][t])));
            out.bockstein.extend(
                p.bockstein
                    .iter()
                    .map(|&(r, s, t)| (r, pos[pi][s], pos[pi][t])),
            );
            out.theta |= p.theta;
        }
        out.sq2.sort_unstable();
        out.bockstein.sort_unstable();
        if let [single] = parts.as_slice() {
            out.pontryagin = single.pontryagin;
        }
        out
    }
}

impl ElementaryComplex {
    /// The tabulated operation profile.
    pub fn profile(&self) -> OperationProfile {
        use ElementaryComplex::*;
        let p = |classes: Vec<u32>,
                 sq2: Vec<(usize, usize)>,
                 bockstein: Vec<(u32, usize, usize)>,
                 theta: bool| {
            OperationProfile {
                classes,
                sq2,
                bockstein,
                theta,
                pontryagin: None,
            }
        };
        match *self {
            Sphere { dim } => p(vec![dim], vec![], vec![], false),
            Moore { order, .. } if order % 2 == 1 => OperationProfile::default(),
            Moore { dim, order } if order.is_power_of_two() => p(
                vec![dim - 1, dim],
                vec![],
                vec![(order.trailing_zeros(), 0, 1)],
                false,
            ),
            // 2^r times odd: only the 2-part contributes mod 2
            Moore { dim, order } => p(
                vec![dim - 1, dim],
                vec![],
                vec![(order.trailing_zeros(), 0, 1)],
                false,
            ),
            ChangEta { n } => {
                let mut q = p(vec![n, n + 2], vec![(0, 1)], vec![], false);
                if n == 2 {
                    q.pontryagin = Some(1);
                }
                q
            }
            ChangR { n, r } => {
                let mut q = p(vec![n, n + 1, n + 2], vec![(0, 2)], vec![(r, 0, 1)], false);
                if n == 2 {
                    q.pontryagin = Some(1);
                }
                q
            }
            ChangT { n, t } => p(vec![n, n + 1, n + 2], vec![(0, 2)], vec![(t, 1, 2)], false),
            ChangRT { n, r, t } => p(
                vec![n, n + 1, n + 1, n + 2],
                vec![(0, 3)],
                vec![(r, 0, 1), (t, 2, 3)],
                false,
            ),
            AEta2 { n } => p(vec![n, n + 3], vec![], vec![], true),
            ATilde { n, r } => p(vec![n, n + 1, n + 3], vec![(1, 2)], vec![(r, 0, 1)], false),
            A2rEta2 { n, r } => p(vec![n, n + 1, n + 3], vec![], vec![(r, 0, 1)], true),
        }
    }
}

/// Coefficient of the Pontryagin square on the two-cell model `C(t)`, the
/// cofibre of `t·iη: S^3 -> P^3(2^r)`: `𝔓₁(x) = t·y` in `Z/2^{u+1}`.
///
/// Panics unless `u >= r >= 1`.
pub fn pontryagin_square_ct(t: u64, r: u32, u: u32) -> u64 {
    assert!(r >= 1 && u >= r && u < 63, "need u >= r >= 1");
    let t = t % (1 << (r + 1));
    t % (1 << (u + 1))
}

/// `𝔓₁` evaluated on `a·x` for `x` the degree-2 generator of `C(t)`, with
/// `a` a residue mod `2^u`. Quadratic: `𝔓₁(a·x) = a²·t`.
pub fn pontryagin_square_on(t: u64, r: u32, u: u32, a: u64) -> u64 {
    let modulus = 1u128 << (u + 1);
    let c = pontryagin_square_ct(t, r, u) as u128;
    let a = a as u128 % modulus;
    ((a * a % modulus) * c % modulus) as u64
}

/// Cup product `(a·x) ∪ (b·x) = a·b·t·y` in `Z/2^u`.
pub fn cup_on(t: u64, r: u32, u: u32, a: u64, b: u64) -> u64 {
    let modulus = 1u128 << u;
    let c = pontryagin_square_ct(t, r, u) as u128;
    ((a as u128 % modulus) * (b as u128 % modulus) % modulus * c % modulus) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use ElementaryComplex::*;

    fn samples() -> Vec<ElementaryComplex> {
        let mut v = Vec::new();
        for n in 2..=6u32 {
            v.push(Sphere { dim: n });
            v.push(ChangEta { n });
            v.push(AEta2 { n });
            for r in 1..=3 {
                v.push(ElementaryComplex::moore2(n + 1, r));
                v.push(ChangR { n, r });
                v.push(ChangT { n, t: r });
                v.push(ATilde { n, r });
                v.push(A2rEta2 { n, r });
                for t in 1..=3 {
                    v.push(ChangRT { n, r, t });
                }
            }
            v.push(Moore {
                dim: n + 1,
                order: 9,
            });
        }
        v
    }

    #[test]
    fn profiles_are_consistent() {
        for c in samples() {
            assert!(c.profile().is_consistent(), "{c}");
        }
    }

    #[test]
    fn sq2_is_iso_on_chang_and_tilde() {
        for c in samples() {
            match c {
                ChangEta { n } | ChangR { n, .. } | ChangT { n, .. } | ChangRT { n, .. } => {
                    let m = c.profile().sq2_matrix(n);
                    assert!(m.is_isomorphism() && m.rows() == 1, "{c}");
                }
                ATilde { n, .. } => assert!(c.profile().sq2_matrix(n + 1).is_isomorphism(), "{c}"),
                _ => {}
            }
        }
    }

    #[test]
    fn sq2_examples() {
        assert!(ChangEta { n: 4 }.profile().sq2_matrix(4).is_isomorphism());
        let m = ElementaryComplex::moore2(4, 1).profile().sq2_matrix(3);
        assert!(m.is_zero());
        assert_eq!((m.rows(), m.cols()), (0, 1));
    }

    #[test]
    fn theta_table() {
        assert!(AEta2 { n: 3 }.profile().theta);
        assert!(A2rEta2 { n: 3, r: 2 }.profile().theta);
        assert!(!ATilde { n: 3, r: 2 }.profile().theta);
        for c in samples() {
            let p = c.profile();
            let gap_three = p.classes.iter().any(|&a| p.classes.contains(&(a + 3)));
            if !gap_three {
                assert!(!p.theta, "{c}");
            }
        }
    }

    #[test]
    fn bockstein_examples() {
        assert_eq!(
            ElementaryComplex::moore2(5, 3)
                .profile()
                .bockstein_profile(),
            vec![(3, 4)]
        );
        assert!(Sphere { dim: 6 }.profile().bockstein_profile().is_empty());
        let w = OperationProfile::wedge([
            &ElementaryComplex::moore2(4, 1).profile(),
            &ElementaryComplex::moore2(5, 3).profile(),
        ]);
        assert_eq!(w.bockstein_profile(), vec![(1, 3), (3, 4)]);
        assert!(w.is_consistent());
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        // mod 2 Betti numbers: one per Z, two per 2-primary cyclic factor;
        // the alternating sum then agrees with the integral Euler characteristic
        // and the plain sum exceeds the Betti sum by twice the 2-torsion count.
        for c in samples() {
            let p = c.profile();
            let mut chi = 0i64;
            let mut betti = 0i64;
            let mut two_torsion = 0i64;
            for (deg, g) in c.homology_table() {
                let sign = if deg % 2 == 0 { 1 } else { -1 };
                chi += sign * g.free_rank() as i64;
                betti += g.free_rank() as i64;
                two_torsion += g.two_rank() as i64;
            }
            assert_eq!(p.euler_characteristic(), chi, "{c}");
            assert_eq!(p.classes.len() as i64, betti + 2 * two_torsion, "{c}");
        }
    }

    #[test]
    fn suspension_shifts_profiles() {
        for c in samples() {
            assert_eq!(
                c.suspend().profile().classes,
                c.profile().shifted(1).classes
            );
            assert_eq!(c.suspend().profile().bockstein, c.profile().bockstein);
            assert_eq!(c.suspend().profile().sq2, c.profile().sq2);
            assert_eq!(c.suspend().profile().theta, c.profile().theta);
        }
    }

    #[test]
    fn pontryagin_examples() {
        assert_eq!(pontryagin_square_ct(0, 1, 1), 0);
        assert_eq!(pontryagin_square_ct(1, 1, 1), 1);
        assert_eq!(pontryagin_square_ct(3, 1, 1), 3);
        assert_eq!(pontryagin_square_on(3, 1, 1, 3), 3);
    }

    #[test]
    fn pontryagin_is_quadratic() {
        for r in 1..=3u32 {
            for u in r..=3u32 {
                let m = 1u64 << (u + 1);
                for t in 0..(1u64 << (r + 1)) {
                    for a in 0..(1u64 << u) {
                        let expect = a * a * t % m;
                        assert_eq!(pontryagin_square_on(t, r, u, a), expect);
                        // well defined on residues mod 2^u
                        assert_eq!(pontryagin_square_on(t, r, u, a + (1 << u)), expect);
                        for b in 0..(1u64 << u) {
                            let lhs = pontryagin_square_on(t, r, u, a + b);
                            let rhs = (pontryagin_square_on(t, r, u, a)
                                + pontryagin_square_on(t, r, u, b)
                                + 2 * cup_on(t, r, u, a, b))
                                % m;
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f2_rank() {
        let mut m = F2Matrix::zeros(2, 2);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 0, true);
        m.set(1, 1, true);
        assert_eq!(m.rank(), 1);
        assert!(!m.is_isomorphism());
        assert!(F2Matrix::zeros(0, 0).is_isomorphism());
    }
}
