//! Review dump of the built-in tables, one JSON object per line.

use clap::ValueEnum;
use serde::Serialize;
use suspcalc_core::catalog::{maps_group, tabulated_pairs, OperationProfile};
use suspcalc_core::ehp::hopf_table;
use suspcalc_core::ElementaryComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    Sphere,
    Moore,
    Chang,
    A3,
    Ops,
    Hopf,
}

#[derive(Serialize)]
struct MapsRow {
    kind: &'static str,
    source: String,
    target: String,
    group: String,
}

#[derive(Serialize)]
struct ProfileRow {
    kind: &'static str,
    complex: String,
    classes: Vec<u32>,
    /// `[source degree, target degree]`
    sq2: Vec<[u32; 2]>,
    /// `[r, source degree]`
    bockstein: Vec<[u32; 2]>,
    theta: bool,
    pontryagin: Option<u64>,
}

#[derive(Serialize)]
struct HopfRow {
    kind: &'static str,
    summand: String,
    domain: Option<String>,
    codomain: String,
    cokernel: String,
    kernel_trivial: Option<bool>,
}

fn is_chang(c: ElementaryComplex) -> bool {
    use ElementaryComplex::*;
    matches!(
        c,
        ChangEta { .. } | ChangR { .. } | ChangT { .. } | ChangRT { .. }
    )
}

fn is_a3(c: ElementaryComplex) -> bool {
    use ElementaryComplex::*;
    matches!(c, AEta2 { .. } | ATilde { .. } | A2rEta2 { .. })
}

fn maps_filter(source: ElementaryComplex, target: ElementaryComplex) -> Filter {
    use ElementaryComplex::*;
    match (source, target) {
        (s, _) if is_chang(s) => Filter::Chang,
        (s, _) if is_a3(s) => Filter::A3,
        (Sphere { .. }, Sphere { .. }) => Filter::Sphere,
        _ => Filter::Moore,
    }
}

/// Complexes whose operation profiles are dumped.
fn profile_sample() -> Vec<ElementaryComplex> {
    use ElementaryComplex::*;
    let mut out: Vec<ElementaryComplex> = (3..=6).map(|dim| Sphere { dim }).collect();
    for dim in 3..=5 {
        out.extend([
            ElementaryComplex::moore2(dim, 1),
            ElementaryComplex::moore2(dim, 2),
        ]);
    }
    out.push(ElementaryComplex::moore(4, 3));
    out.push(ChangEta { n: 3 });
    out.extend([
        ChangR { n: 3, r: 1 },
        ChangR { n: 3, r: 2 },
        ChangT { n: 3, t: 1 },
        ChangRT { n: 3, r: 1, t: 2 },
    ]);
    out.push(ChangEta { n: 2 });
    out.push(ChangR { n: 2, r: 1 });
    out.push(AEta2 { n: 3 });
    out.extend([
        ATilde { n: 3, r: 1 },
        ATilde { n: 3, r: 2 },
        A2rEta2 { n: 3, r: 1 },
        A2rEta2 { n: 3, r: 2 },
    ]);
    out
}

/// Summands of a double suspension whose Hopf data are dumped.
fn hopf_sample() -> Vec<ElementaryComplex> {
    use ElementaryComplex::*;
    let mut out: Vec<ElementaryComplex> = (3..=6).map(|dim| Sphere { dim }).collect();
    for dim in [4, 5] {
        out.extend((1..=3).map(|r| ElementaryComplex::moore2(dim, r)));
    }
    out.push(ElementaryComplex::moore(5, 3));
    out.push(ChangEta { n: 4 });
    out.extend((1..=3).map(|r| ChangR { n: 4, r }));
    out.extend((1..=3).map(|r| A2rEta2 { n: 3, r }));
    out.extend((1..=3).map(|r| ATilde { n: 3, r }));
    out
}

fn profile_row(c: ElementaryComplex) -> ProfileRow {
    let p: OperationProfile = c.profile();
    ProfileRow {
        kind: "profile",
        complex: c.to_string(),
        sq2: p
            .sq2
            .iter()
            .map(|&(s, t)| [p.classes[s], p.classes[t]])
            .collect(),
        bockstein: p
            .bockstein_profile()
            .into_iter()
            .map(|(r, d)| [r, d])
            .collect(),
        classes: p.classes,
        theta: p.theta,
        pontryagin: p.pontryagin,
    }
}

/// The dump, one line per row, in a fixed order.
pub fn render(filters: &[Filter]) -> String {
    let want = |f: Filter| filters.is_empty() || filters.contains(&f);
    let mut lines: Vec<String> = Vec::new();
    for (source, target) in tabulated_pairs() {
        if !want(maps_filter(source, target)) {
            continue;
        }
        let entry = maps_group(source, target).expect("tabulated pair");
        let row = MapsRow {
            kind: "maps",
            source: source.to_string(),
            target: target.to_string(),
            group: entry.to_string(),
        };
        lines.push(serde_json::to_string(&row).expect("serializable"));
    }
    if want(Filter::Ops) {
        for c in profile_sample() {
            lines.push(serde_json::to_string(&profile_row(c)).expect("serializable"));
        }
    }
    if want(Filter::Hopf) {
        for c in hopf_sample() {
            let h = hopf_table(c).expect("Hopf row for a double-suspension summand");
            let row = HopfRow {
                kind: "hopf",
                summand: c.to_string(),
                domain: h.domain_group.as_ref().map(ToString::to_string),
                codomain: h.codomain_group.to_string(),
                cokernel: h.cokernel.to_string(),
                kernel_trivial: h.kernel_trivial,
            };
            lines.push(serde_json::to_string(&row).expect("serializable"));
        }
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}
