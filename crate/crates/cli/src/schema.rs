//! JSON input and output forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use suspcalc_core::abelian::{CyclicFactor, FgAbelianGroup, FreeRing};
use suspcalc_core::classifier::{ManifoldInvariants, Sq2Case, ThetaAction};
use suspcalc_core::normalizer::{MapClass, MapVector};
use suspcalc_core::ElementaryComplex;

use crate::error::{schema, CliError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingDto {
    #[default]
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Z_(2)")]
    TwoLocal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDto {
    pub prime: u64,
    pub exponent: u32,
    #[serde(default = "one")]
    pub multiplicity: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDto {
    #[serde(default)]
    pub free_rank: u32,
    #[serde(default)]
    pub free_ring: RingDto,
    #[serde(default)]
    pub torsion: Vec<FactorDto>,
}

impl GroupDto {
    pub fn to_group(&self) -> Result<FgAbelianGroup, CliError> {
        let mut factors = Vec::new();
        for f in &self.torsion {
            let c = CyclicFactor::new(f.prime, f.exponent).ok_or_else(|| {
                schema(format!(
                    "Z/{}^{} is not a prime-power cyclic factor",
                    f.prime, f.exponent
                ))
            })?;
            factors.extend(std::iter::repeat_n(c, f.multiplicity as usize));
        }
        let ring = match self.free_ring {
            RingDto::Integers => FreeRing::Integers,
            RingDto::TwoLocal => FreeRing::TwoLocal,
        };
        Ok(FgAbelianGroup::from_factors(self.free_rank, ring, factors))
    }
}

impl From<&FgAbelianGroup> for GroupDto {
    fn from(g: &FgAbelianGroup) -> Self {
        Self {
            free_rank: g.free_rank(),
            free_ring: match g.free_ring() {
                FreeRing::Integers => RingDto::Integers,
                FreeRing::TwoLocal => RingDto::TwoLocal,
            },
            torsion: g
                .grouped_torsion()
                .into_iter()
                .map(|(c, k)| FactorDto {
                    prime: c.prime(),
                    exponent: c.exponent(),
                    multiplicity: k as u32,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaDto {
    #[default]
    Trivial,
    Nontrivial(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sq2Dto {
    #[default]
    NotApplicable,
    CaseA,
    CaseB(usize),
    CaseC(usize),
}

/// One manifold, as read from input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub m: u32,
    pub d: u32,
    #[serde(default)]
    pub torsion: GroupDto,
    pub spin: bool,
    #[serde(default)]
    pub theta_on_h1: ThetaDto,
    #[serde(default)]
    pub sq2_case: Sq2Dto,
    pub postnikov_trivial: bool,
}

impl Descriptor {
    pub fn to_invariants(&self) -> Result<ManifoldInvariants, CliError> {
        let torsion = self.torsion.to_group()?;
        if torsion.free_rank() > 0 {
            return Err(schema("\"torsion\" must have free_rank 0"));
        }
        let inv = ManifoldInvariants {
            m: self.m,
            d: self.d,
            torsion,
            spin: self.spin,
            theta: match self.theta_on_h1 {
                ThetaDto::Trivial => ThetaAction::Trivial,
                ThetaDto::Nontrivial(j) => ThetaAction::Nontrivial(j),
            },
            sq2_case: match self.sq2_case {
                Sq2Dto::NotApplicable => Sq2Case::NotApplicable,
                Sq2Dto::CaseA => Sq2Case::CaseA,
                Sq2Dto::CaseB(j) => Sq2Case::CaseB(j),
                Sq2Dto::CaseC(j) => Sq2Case::CaseC(j),
            },
            postnikov_trivial: self.postnikov_trivial,
        };
        inv.branch().map_err(|e| schema(e.to_string()))?;
        Ok(inv)
    }
}

/// A single descriptor or an array of them.
pub fn parse_descriptors(text: &str) -> Result<(Vec<Descriptor>, bool), CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| schema(format!("malformed JSON: {e}")))?;
    match value {
        serde_json::Value::Array(items) => {
            let mut out = Vec::with_capacity(items.len());
            for (k, item) in items.into_iter().enumerate() {
                out.push(
                    serde_json::from_value(item)
                        .map_err(|e| schema(format!("descriptor {k}: {e}")))?,
                );
            }
            Ok((out, true))
        }
        v => Ok((
            vec![serde_json::from_value(v).map_err(|e| schema(format!("descriptor: {e}")))?],
            false,
        )),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDto {
    pub target: String,
    #[serde(default)]
    pub map: BTreeMap<String, i64>,
}

/// A map from a sphere into a wedge, one component per summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDto {
    pub source: String,
    pub components: Vec<ComponentDto>,
}

fn complex(s: &str) -> Result<ElementaryComplex, CliError> {
    s.parse::<ElementaryComplex>()
        .map_err(|e| schema(e.to_string()))
}

impl VectorDto {
    pub fn to_vector(&self) -> Result<MapVector, CliError> {
        let source = complex(&self.source)?;
        let mut entries = Vec::new();
        for c in &self.components {
            let target = complex(&c.target)?;
            let mut e = MapClass::zero(source, target).map_err(|e| schema(e.to_string()))?;
            for (name, &k) in &c.map {
                let t = MapClass::named(source, target, name, k)
                    .map_err(|e| schema(format!("{target}: {e}")))?;
                e = e.add(&t);
            }
            entries.push(e);
        }
        MapVector::new(source, entries).map_err(|e| schema(e.to_string()))
    }
}

impl From<&MapVector> for VectorDto {
    fn from(v: &MapVector) -> Self {
        Self {
            source: v.source().to_string(),
            components: v
                .entries()
                .iter()
                .map(|e| ComponentDto {
                    target: e.target().to_string(),
                    map: e.terms().into_iter().collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_roundtrip() {
        let g = FgAbelianGroup::free_two_local(2)
            .direct_sum(&FgAbelianGroup::from_two_exponents(&[1, 1, 3]));
        let dto = GroupDto::from(&g);
        let json = serde_json::to_string(&dto).unwrap();
        assert_eq!(
            json,
            r#"{"free_rank":2,"free_ring":"Z_(2)","torsion":[{"prime":2,"exponent":1,"multiplicity":2},{"prime":2,"exponent":3,"multiplicity":1}]}"#
        );
        let back: GroupDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_group().unwrap(), g);
    }

    #[test]
    fn descriptor_rejects_unknown_fields() {
        let text = r#"{"m":0,"d":0,"spin":true,"postnikov_trivial":true,"colour":"red"}"#;
        assert!(parse_descriptors(text).is_err());
        let text = r#"{"m":0,"d":0,"spin":true,"postnikov_trivial":true}"#;
        let (ds, batch) = parse_descriptors(text).unwrap();
        assert!(!batch);
        assert_eq!(
            ds[0].to_invariants().unwrap().torsion,
            FgAbelianGroup::trivial()
        );
    }

    #[test]
    fn index_errors_are_schema_errors() {
        let text = r#"{"m":0,"d":0,"spin":false,"sq2_case":{"case_b":2},"postnikov_trivial":true,
                      "torsion":{"torsion":[{"prime":2,"exponent":1}]}}"#;
        let (ds, _) = parse_descriptors(text).unwrap();
        assert_eq!(ds[0].to_invariants().unwrap_err().exit_code(), 2);
        let text = r#"{"m":0,"d":0,"spin":true,"postnikov_trivial":true,"torsion":{"torsion":[{"prime":6,"exponent":1}]}}"#;
        let (ds, _) = parse_descriptors(text).unwrap();
        assert!(ds[0].to_invariants().is_err());
    }

    #[test]
    fn vector_roundtrip() {
        let text = r#"{"source":"S^5","components":[{"target":"S^4","map":{"eta":1}},{"target":"P^4(4)","map":{"eta~_2":1}}]}"#;
        let dto: VectorDto = serde_json::from_str(text).unwrap();
        let v = dto.to_vector().unwrap();
        assert_eq!(VectorDto::from(&v), dto);
    }
}
