//! Decomposition of `ΣM` and `Σ²M` from the algebraic invariants of `M`.
//!
//! The invariants are taken as given. The top cell of `Σ²M` is attached by a
//! map `S⁵ -> Σ²M⁽⁵⁾`, whose only possibly nonzero components are the ones
//! detected by `Sq²`, `Θ` and the Bockstein data; the classifier builds that
//! vector, normalizes it and reads off the cofibre.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::{CyclicFactor, FgAbelianGroup};
use crate::catalog::{
    bockstein_profile, peterson_of_group, sq2_action, theta_flag, ElementaryComplex, WedgeComplex,
};
use crate::normalizer::{MapClass, MapVector, NormalizerError};

/// How the secondary operation `Θ` acts on `H¹(M; Z/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaAction {
    Trivial,
    /// nontrivial, with `j₀` the largest (1-based) index among the sorted
    /// 2-primary exponents on which it is nonzero
    Nontrivial(usize),
}

/// Which class carries the nontrivial `Sq²` into the top dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sq2Case {
    /// spin manifolds
    NotApplicable,
    /// a free class of `H²`
    CaseA,
    /// the reduction of a `Z/2^{r_j}` class in degree 3 of `Σ²M`, index `j₁`
    CaseB(usize),
    /// a Bockstein image, index `j₂` (least such index)
    CaseC(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ManifoldInvariants {
    /// rank of `H₁(M)`
    pub m: u32,
    /// free rank of `H₂(M)`
    pub d: u32,
    /// torsion of `H₁(M)` (equivalently of `H₂(M)`)
    pub torsion: FgAbelianGroup,
    pub spin: bool,
    pub theta: ThetaAction,
    pub sq2_case: Sq2Case,
    /// whether the Postnikov square `H¹(M; Z/2^{r_n}) -> H³(M; Z/2^{r_n+1})` vanishes
    pub postnikov_trivial: bool,
}

/// The clause of the classification that produced a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    SpinThetaTrivial,
    SpinThetaNontrivial {
        j0: usize,
    },
    NonSpinFreeSq2,
    NonSpinTorsionSq2 {
        j1: usize,
    },
    NonSpinBocksteinSq2 {
        j2: usize,
    },
    /// non-spin with `Θ` nontrivial: not decided
    Omitted,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Self::SpinThetaTrivial => "spin, theta trivial",
            Self::SpinThetaNontrivial { .. } => "spin, theta nontrivial",
            Self::NonSpinFreeSq2 => "non-spin, Sq2 on a free class",
            Self::NonSpinTorsionSq2 { .. } => "non-spin, Sq2 on a torsion reduction",
            Self::NonSpinBocksteinSq2 { .. } => "non-spin, Sq2 on a Bockstein image",
            Self::Omitted => "non-spin, theta nontrivial",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SpinThetaNontrivial { j0 } => write!(f, "{} (j0 = {j0})", self.label()),
            Self::NonSpinTorsionSq2 { j1 } => write!(f, "{} (j1 = {j1})", self.label()),
            Self::NonSpinBocksteinSq2 { j2 } => write!(f, "{} (j2 = {j2})", self.label()),
            _ => f.write_str(self.label()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifierError {
    /// the non-spin, `Θ`-nontrivial case, which is left open
    OmittedCase,
    InvalidInvariants(String),
}

impl fmt::Display for ClassifierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OmittedCase => f.write_str(
                "non-spin manifold with theta nontrivial on H^1(M; Z/2): no decomposition is available for this case",
            ),
            Self::InvalidInvariants(s) => write!(f, "invalid invariants: {s}"),
        }
    }
}

impl core::error::Error for ClassifierError {}

fn invalid(s: impl Into<String>) -> ClassifierError {
    ClassifierError::InvalidInvariants(s.into())
}

impl ManifoldInvariants {
    /// Sorted 2-primary exponents `r₁ ≤ … ≤ r_n`.
    pub fn exponents(&self) -> Vec<u32> {
        self.torsion.two_exponents()
    }

    /// `r_j` for a 1-based index.
    pub fn exponent(&self, j: usize) -> Option<u32> {
        j.checked_sub(1)
            .and_then(|k| self.exponents().get(k).copied())
    }

    /// Checks the invariants and picks the branch. The omitted case is a
    /// valid input and maps to [`Branch::Omitted`].
    pub fn branch(&self) -> Result<Branch, ClassifierError> {
        if !self.torsion.is_torsion() {
            return Err(invalid("torsion group has a free part"));
        }
        let n = self.exponents().len();
        let check = |j: usize, what: &str| {
            if (1..=n).contains(&j) {
                Ok(j)
            } else {
                Err(invalid(format!("{what} = {j} is outside 1..={n}")))
            }
        };
        if let ThetaAction::Nontrivial(j0) = self.theta {
            check(j0, "j0")?;
            if !self.spin {
                return Ok(Branch::Omitted);
            }
        }
        match (self.spin, self.sq2_case) {
            (true, Sq2Case::NotApplicable) => {}
            (true, _) => return Err(invalid("a spin manifold has no Sq2 case")),
            (false, Sq2Case::NotApplicable) => {
                return Err(invalid("a non-spin manifold needs an Sq2 case"))
            }
            (false, Sq2Case::CaseA) if self.d == 0 => return Err(invalid("case A needs d >= 1")),
            (false, Sq2Case::CaseB(j)) => {
                check(j, "j1")?;
            }
            (false, Sq2Case::CaseC(j)) => {
                check(j, "j2")?;
            }
            (false, Sq2Case::CaseA) => {}
        }
        Ok(match (self.spin, self.theta, self.sq2_case) {
            (true, ThetaAction::Trivial, _) => Branch::SpinThetaTrivial,
            (true, ThetaAction::Nontrivial(j0), _) => Branch::SpinThetaNontrivial { j0 },
            (false, ThetaAction::Nontrivial(_), _) => Branch::Omitted,
            (false, ThetaAction::Trivial, Sq2Case::CaseA) => Branch::NonSpinFreeSq2,
            (false, ThetaAction::Trivial, Sq2Case::CaseB(j1)) => Branch::NonSpinTorsionSq2 { j1 },
            (false, ThetaAction::Trivial, Sq2Case::CaseC(j2)) => Branch::NonSpinBocksteinSq2 { j2 },
            (false, ThetaAction::Trivial, Sq2Case::NotApplicable) => unreachable!("rejected above"),
        })
    }

    /// `H_i(M; Z)`, unreduced.
    pub fn homology(&self, i: u32) -> FgAbelianGroup {
        match i {
            0 | 4 => FgAbelianGroup::free(1),
            1 => FgAbelianGroup::free(self.m).direct_sum(&self.torsion),
            2 => FgAbelianGroup::free(self.d).direct_sum(&self.torsion),
            3 => FgAbelianGroup::free(self.m),
            _ => FgAbelianGroup::trivial(),
        }
    }

    /// The Postnikov square is forced to vanish when there is no torsion.
    pub fn postnikov_effectively_trivial(&self) -> bool {
        self.postnikov_trivial || self.torsion.two_primary().is_trivial()
    }
}

/// `W₄` of the cell filtration: split when the Postnikov square vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum W4Stage {
    Split(WedgeComplex),
    /// `known ∨ C_{g₂}` with the cofibre `C_{g₂}` left symbolic
    Unsplit {
        known: WedgeComplex,
        remainder: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stages {
    pub w3: WedgeComplex,
    pub w4: W4Stage,
    pub sigma_w4: WedgeComplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Suspension {
    Resolved(WedgeComplex),
    Unresolved(String),
}

impl Suspension {
    pub fn resolved(&self) -> Option<&WedgeComplex> {
        match self {
            Self::Resolved(w) => Some(w),
            Self::Unresolved(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub branch: Branch,
    pub sigma2: WedgeComplex,
    pub sigma: Suspension,
    pub stages: Stages,
    /// normal form of the attaching map of the top cell of `Σ²M`
    pub attaching_map: MapVector,
    pub notes: Vec<String>,
}

fn peterson(n: u32, g: &FgAbelianGroup) -> WedgeComplex {
    peterson_of_group(n, g).expect("torsion group checked by branch()")
}

fn spheres(dim: u32, k: u32) -> WedgeComplex {
    WedgeComplex::copies(ElementaryComplex::Sphere { dim }, k)
}

/// `W₃`, `W₄` and `ΣW₄`.
pub fn stage_decompositions(inv: &ManifoldInvariants) -> Stages {
    let t = &inv.torsion;
    let w3 = spheres(3, inv.d)
        .wedge(&peterson(3, t))
        .wedge(&peterson(4, t));
    let w4 = if inv.postnikov_effectively_trivial() {
        W4Stage::Split(w3.wedge(&spheres(4, inv.m)))
    } else {
        W4Stage::Unsplit {
            known: spheres(3, inv.d).wedge(&peterson(4, t)),
            remainder: "C_{g_2}".into(),
        }
    };
    let sigma_w4 = spheres(4, inv.d)
        .wedge(&peterson(4, t))
        .wedge(&peterson(5, t))
        .wedge(&spheres(5, inv.m));
    Stages { w3, w4, sigma_w4 }
}

/// The 5-skeleton `m(S³ ∨ S⁵) ∨ dS⁴ ∨ P⁴(T) ∨ P⁵(T)` of `Σ²M`, as an ordered
/// target list: `S³`s, `S⁴`s, the `P⁴`s and then the `P⁵`s in the order of
/// the sorted 2-primary exponents followed by odd factors, and the `S⁵`s.
fn five_skeleton(inv: &ManifoldInvariants) -> Vec<ElementaryComplex> {
    let mut out = Vec::new();
    out.extend(core::iter::repeat_n(
        ElementaryComplex::Sphere { dim: 3 },
        inv.m as usize,
    ));
    out.extend(core::iter::repeat_n(
        ElementaryComplex::Sphere { dim: 4 },
        inv.d as usize,
    ));
    let two = inv.exponents();
    let odd = inv.torsion.odd_primary();
    for p in [4, 5] {
        out.extend(two.iter().map(|&r| ElementaryComplex::moore2(p, r)));
        out.extend(
            odd.torsion()
                .iter()
                .map(|f| ElementaryComplex::moore(p, f.order())),
        );
    }
    out.extend(core::iter::repeat_n(
        ElementaryComplex::Sphere { dim: 5 },
        inv.m as usize,
    ));
    out
}

fn attaching_vector(
    inv: &ManifoldInvariants,
    branch: Branch,
) -> Result<MapVector, NormalizerError> {
    let s5 = ElementaryComplex::Sphere { dim: 5 };
    let targets = five_skeleton(inv);
    let n_two = inv.exponents().len();
    let n_odd = inv.torsion.odd_primary().torsion().len();
    let first_p4 = (inv.m + inv.d) as usize;
    let first_p5 = first_p4 + n_two + n_odd;
    let mut v = MapVector::zero(s5, &targets)?;
    let mut put = |row: usize, name: &str, c: i64| -> Result<(), NormalizerError> {
        let e = MapClass::named(s5, targets[row], name, c)?;
        v.set_entry(row, e)
    };
    match branch {
        Branch::SpinThetaTrivial | Branch::Omitted => {}
        Branch::SpinThetaNontrivial { j0 } => {
            let r = inv.exponent(j0).expect("validated index");
            // iη² is 2η̃₁ when r = 1
            if r == 1 {
                put(first_p4 + j0 - 1, "eta~_1", 2)?;
            } else {
                put(first_p4 + j0 - 1, "i eta^2", 1)?;
            }
        }
        Branch::NonSpinFreeSq2 => put(inv.m as usize, "eta", 1)?,
        Branch::NonSpinTorsionSq2 { j1 } => put(first_p5 + j1 - 1, "i eta", 1)?,
        Branch::NonSpinBocksteinSq2 { j2 } => {
            let r = inv.exponent(j2).expect("validated index");
            put(first_p4 + j2 - 1, &format!("eta~_{r}"), 1)?;
        }
    }
    v.normalize()
}

/// The closed formula for `Σ²M` in each branch.
fn double_suspension_formula(inv: &ManifoldInvariants, branch: Branch) -> WedgeComplex {
    let t = &inv.torsion;
    let base = spheres(3, inv.m).wedge(&spheres(5, inv.m));
    let remove = |j: usize| {
        let r = inv.exponent(j).expect("validated index");
        let f = CyclicFactor::two(r).expect("positive exponent");
        (r, t.quotient_by_factor(f).expect("factor occurs"))
    };
    let rest = match branch {
        Branch::SpinThetaTrivial | Branch::Omitted => {
            let mut w = spheres(4, inv.d)
                .wedge(&peterson(4, t))
                .wedge(&peterson(5, t));
            w.push(ElementaryComplex::Sphere { dim: 6 });
            w
        }
        Branch::SpinThetaNontrivial { j0 } => {
            let (r, q) = remove(j0);
            let mut w = spheres(4, inv.d)
                .wedge(&peterson(4, &q))
                .wedge(&peterson(5, t));
            w.push(ElementaryComplex::A2rEta2 { n: 3, r });
            w
        }
        Branch::NonSpinFreeSq2 => {
            let mut w = spheres(4, inv.d - 1)
                .wedge(&peterson(4, t))
                .wedge(&peterson(5, t));
            w.push(ElementaryComplex::ChangEta { n: 4 });
            w
        }
        Branch::NonSpinTorsionSq2 { j1 } => {
            let (r, q) = remove(j1);
            let mut w = spheres(4, inv.d)
                .wedge(&peterson(4, t))
                .wedge(&peterson(5, &q));
            w.push(ElementaryComplex::ChangR { n: 4, r });
            w
        }
        Branch::NonSpinBocksteinSq2 { j2 } => {
            let (r, q) = remove(j2);
            let mut w = spheres(4, inv.d)
                .wedge(&peterson(4, &q))
                .wedge(&peterson(5, t));
            w.push(ElementaryComplex::ATilde { n: 3, r });
            w
        }
    };
    base.wedge(&rest)
}

/// The homotopy type of `Σ²M`.
pub fn classify_double_suspension(
    inv: &ManifoldInvariants,
) -> Result<DecompositionReport, ClassifierError> {
    let branch = inv.branch()?;
    if branch == Branch::Omitted {
        return Err(ClassifierError::OmittedCase);
    }
    let sigma2 = double_suspension_formula(inv, branch);
    let attaching_map =
        attaching_vector(inv, branch).map_err(|e| invalid(format!("attaching map: {e}")))?;
    debug_assert_eq!(attaching_map.cofiber().ok().as_ref(), Some(&sigma2));

    let mut notes = Vec::new();
    if let Branch::NonSpinTorsionSq2 { j1 } = branch {
        notes.push(format!(
            "j1 = {j1} is taken as given; it is not recomputed from cohomology data"
        ));
    }
    let sigma = if inv.postnikov_effectively_trivial() {
        if !inv.postnikov_trivial {
            notes.push("T has no 2-torsion, so the Postnikov square is trivial".into());
        }
        Suspension::Resolved(
            sigma2
                .desuspend()
                .expect("every summand of the double suspension desuspends"),
        )
    } else {
        notes.push("the Postnikov square is nontrivial; the suspension is not determined".into());
        Suspension::Unresolved("Postnikov square nontrivial".into())
    };
    Ok(DecompositionReport {
        branch,
        sigma2,
        sigma,
        stages: stage_decompositions(inv),
        attaching_map,
        notes,
    })
}

/// The homotopy type of `ΣM`, when it is determined.
pub fn classify_suspension(inv: &ManifoldInvariants) -> Result<Suspension, ClassifierError> {
    classify_double_suspension(inv).map(|r| r.sigma)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Consistency audit of a report against the invariants it came from.
pub fn validate_roundtrip(inv: &ManifoldInvariants, report: &DecompositionReport) -> Vec<Check> {
    let x = &report.sigma2;
    let mut out = Vec::new();

    let bad: Vec<u32> = (0..=8)
        .filter(|&i| {
            let want = if i >= 3 {
                inv.homology(i - 2)
            } else {
                FgAbelianGroup::trivial()
            };
            x.integral_homology(i) != want
        })
        .collect();
    out.push(Check {
        name: "homology",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "H_i agrees with H_{i-2}(M)".into()
        } else {
            format!("mismatch in degrees {bad:?}")
        },
    });

    let theta = theta_flag(x);
    let want = matches!(inv.theta, ThetaAction::Nontrivial(_));
    out.push(Check {
        name: "theta",
        passed: theta == want,
        detail: format!("theta flag {theta}, expected {want}"),
    });

    let sq2 = !sq2_action(x, 4).is_zero();
    out.push(Check {
        name: "sq2",
        passed: sq2 == !inv.spin,
        detail: format!("Sq2 on H^4 nonzero: {sq2}, spin: {}", inv.spin),
    });

    let mut want: Vec<(u32, u32)> = inv
        .exponents()
        .iter()
        .flat_map(|&r| [(r, 3), (r, 4)])
        .collect();
    want.sort_unstable();
    let got = bockstein_profile(x);
    out.push(Check {
        name: "bockstein",
        passed: got == want,
        detail: format!("profile {got:?}, expected {want:?}"),
    });
    out
}
