//! Per-descriptor results and their JSON and text forms.

use std::fmt::Write as _;

use serde::Serialize;
use suspcalc_core::classifier::{
    classify_double_suspension, validate_roundtrip, ClassifierError, DecompositionReport,
    ManifoldInvariants, Suspension, W4Stage,
};
use suspcalc_core::ehp::{
    coker_h2, coker_h2_by_summands, hopf_table, is_e_surjective, pi5_double_suspension,
    pi5_suspension,
};

use crate::schema::GroupDto;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyFlags {
    pub level: u8,
    pub stages: bool,
    pub validate: bool,
}

#[derive(Serialize)]
pub struct StagesOut {
    pub w3: String,
    pub w4: String,
    pub w4_split: bool,
    pub sigma_w4: String,
}

#[derive(Serialize)]
pub struct CheckOut {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct ClassifyOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub branch: String,
    pub suspension_level: u8,
    pub resolved: bool,
    pub decomposition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attaching_map: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<StagesOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<Vec<CheckOut>>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
pub struct OmittedOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub error: &'static str,
    pub message: String,
}

#[derive(Serialize)]
pub struct HopfOut {
    pub summand: String,
    pub domain: Option<GroupDto>,
    pub codomain: GroupDto,
    pub cokernel: GroupDto,
}

#[derive(Serialize)]
pub struct CohomotopyOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub branch: String,
    pub pi5_double_suspension: GroupDto,
    pub pi5_suspension: Option<GroupDto>,
    pub coker_h2: GroupDto,
    pub coker_h2_by_summands: GroupDto,
    pub e_surjective: Option<bool>,
    pub justification: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summands: Option<Vec<HopfOut>>,
    pub notes: Vec<String>,
    #[serde(skip)]
    text: TextParts,
}

#[derive(Default)]
struct TextParts {
    pi5_2: String,
    pi5_1: String,
    coker: String,
    coker_sum: String,
    summands: Vec<(String, String, String, String)>,
}

/// Outcome for one descriptor.
pub enum Outcome<T> {
    Done(T),
    Omitted(OmittedOut),
}

fn omitted(label: &Option<String>, e: ClassifierError) -> OmittedOut {
    OmittedOut {
        label: label.clone(),
        error: "omitted_case",
        message: e.to_string(),
    }
}

fn report(
    inv: &ManifoldInvariants,
    label: &Option<String>,
) -> Result<DecompositionReport, OmittedOut> {
    match classify_double_suspension(inv) {
        Ok(r) => Ok(r),
        Err(ClassifierError::OmittedCase) => Err(omitted(label, ClassifierError::OmittedCase)),
        Err(e) => unreachable!("validated before computing: {e}"),
    }
}

pub fn classify(
    inv: &ManifoldInvariants,
    label: &Option<String>,
    flags: ClassifyFlags,
) -> Outcome<ClassifyOut> {
    let r = match report(inv, label) {
        Ok(r) => r,
        Err(o) => return Outcome::Omitted(o),
    };
    let (resolved, decomposition) = match (flags.level, &r.sigma) {
        (1, Suspension::Resolved(w)) => (true, w.to_string()),
        (1, Suspension::Unresolved(_)) => (false, "Unresolved".to_string()),
        _ => (true, r.sigma2.to_string()),
    };
    let stages = flags.stages.then(|| {
        let (w4, w4_split) = match &r.stages.w4 {
            W4Stage::Split(w) => (w.to_string(), true),
            W4Stage::Unsplit { known, remainder } if known.is_point() => (remainder.clone(), false),
            W4Stage::Unsplit { known, remainder } => (format!("{known} v {remainder}"), false),
        };
        StagesOut {
            w3: r.stages.w3.to_string(),
            w4,
            w4_split,
            sigma_w4: r.stages.sigma_w4.to_string(),
        }
    });
    let validation = flags.validate.then(|| {
        validate_roundtrip(inv, &r)
            .into_iter()
            .map(|c| CheckOut {
                check: c.name,
                passed: c.passed,
                detail: c.detail,
            })
            .collect()
    });
    Outcome::Done(ClassifyOut {
        label: label.clone(),
        branch: r.branch.to_string(),
        suspension_level: flags.level,
        resolved,
        decomposition,
        attaching_map: (flags.level == 2).then(|| r.attaching_map.to_string()),
        stages,
        validation,
        notes: r.notes.clone(),
    })
}

pub fn cohomotopy(
    inv: &ManifoldInvariants,
    label: &Option<String>,
    with_summands: bool,
) -> Outcome<CohomotopyOut> {
    let r = match report(inv, label) {
        Ok(r) => r,
        Err(o) => return Outcome::Omitted(o),
    };
    let pi5_2 = pi5_double_suspension(&r).expect("supported branch");
    let pi5_1 = pi5_suspension(&r).expect("supported branch");
    let coker = coker_h2(&r).expect("supported branch");
    let coker_sum = coker_h2_by_summands(&r).expect("supported branch");
    let verdict = is_e_surjective(inv).expect("supported branch");
    let mut notes = r.notes.clone();
    if coker != coker_sum {
        notes.push(format!(
            "the closed formula for coker(H_2) keeps a factor from the P^5 summand absorbed into the C^6 summand; \
             summing over the summands gives {coker_sum}"
        ));
    }
    let mut text = TextParts {
        pi5_2: pi5_2.to_string(),
        pi5_1: pi5_1
            .as_ref()
            .map_or("unavailable".into(), ToString::to_string),
        coker: coker.to_string(),
        coker_sum: coker_sum.to_string(),
        summands: Vec::new(),
    };
    let summands = with_summands.then(|| {
        r.sigma2
            .summands()
            .iter()
            .map(|&c| {
                let h = hopf_table(c).expect("summand of a double suspension");
                text.summands.push((
                    c.to_string(),
                    h.domain_group
                        .as_ref()
                        .map_or("?".into(), ToString::to_string),
                    h.codomain_group.to_string(),
                    h.cokernel.to_string(),
                ));
                HopfOut {
                    summand: c.to_string(),
                    domain: h.domain_group.as_ref().map(GroupDto::from),
                    codomain: GroupDto::from(&h.codomain_group),
                    cokernel: GroupDto::from(&h.cokernel),
                }
            })
            .collect()
    });
    Outcome::Done(CohomotopyOut {
        label: label.clone(),
        branch: r.branch.to_string(),
        pi5_double_suspension: GroupDto::from(&pi5_2),
        pi5_suspension: pi5_1.as_ref().map(GroupDto::from),
        coker_h2: GroupDto::from(&coker),
        coker_h2_by_summands: GroupDto::from(&coker_sum),
        e_surjective: verdict.value,
        justification: verdict.justification,
        summands,
        notes,
        text,
    })
}

fn header(out: &mut String, label: &Option<String>) {
    if let Some(l) = label {
        let _ = writeln!(out, "label: {l}");
    }
}

fn notes(out: &mut String, notes: &[String]) {
    for n in notes {
        let _ = writeln!(out, "note: {n}");
    }
}

pub fn omitted_text(o: &OmittedOut) -> String {
    let mut out = String::new();
    header(&mut out, &o.label);
    let _ = writeln!(out, "omitted: {}", o.message);
    out
}

pub fn classify_text(c: &ClassifyOut) -> String {
    let mut out = String::new();
    header(&mut out, &c.label);
    let _ = writeln!(out, "branch: {}", c.branch);
    let name = if c.suspension_level == 1 {
        "Sigma M"
    } else {
        "Sigma^2 M"
    };
    let _ = writeln!(out, "{name} = {}", c.decomposition);
    if let Some(a) = &c.attaching_map {
        let _ = writeln!(out, "top cell attached by {a}");
    }
    if let Some(s) = &c.stages {
        let _ = writeln!(out, "W_3 = {}", s.w3);
        let _ = writeln!(out, "W_4 = {}", s.w4);
        let _ = writeln!(out, "Sigma W_4 = {}", s.sigma_w4);
    }
    if let Some(v) = &c.validation {
        for ch in v {
            let _ = writeln!(
                out,
                "check {}: {} ({})",
                ch.check,
                if ch.passed { "pass" } else { "FAIL" },
                ch.detail
            );
        }
    }
    notes(&mut out, &c.notes);
    out
}

pub fn cohomotopy_text(c: &CohomotopyOut) -> String {
    let mut out = String::new();
    header(&mut out, &c.label);
    let _ = writeln!(out, "branch: {}", c.branch);
    let _ = writeln!(out, "pi^5(Sigma^2 M) = {}", c.text.pi5_2);
    let _ = writeln!(out, "pi^5(Sigma M) = {}", c.text.pi5_1);
    let _ = writeln!(out, "coker(H_2) = {}", c.text.coker);
    if c.text.coker_sum != c.text.coker {
        let _ = writeln!(out, "coker(H_2) by summands = {}", c.text.coker_sum);
    }
    let verdict = match c.e_surjective {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    let _ = writeln!(out, "E surjective: {verdict}");
    for j in &c.justification {
        let _ = writeln!(out, "  {j}");
    }
    for (s, dom, cod, cok) in &c.text.summands {
        let _ = writeln!(out, "H on {s}: {dom} -> {cod}, cokernel {cok}");
    }
    notes(&mut out, &c.notes);
    out
}
