//! The pair document: a human-editable TOML rendering of a [`LogPair`],
//! and the cover file holding a [`CoverDescriptor`].
//!
//! Every intersection number and coefficient is an exact fraction, written
//! as a string (`"-4/9"`) or an integer; decimal notation is rejected.
//!
//! ```toml
//! case_tag = "hyperelliptic --sub unramified"
//!
//! [[component]]
//! id = "X"
//! model_rank = 2
//!
//! [[component.curve]]
//! label = "sigma"
//! self_int = "-4"
//! genus = 0
//! roles = ["section", "in_divisor_d"]
//!
//! [[component.meet]]
//! curves = ["sigma", "F"]
//! value = "1"
//!
//! [canonical_k]
//! sigma = "-2"
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::CoverDescriptor;
use crate::lattice::{validate_pair, Curve, CurveConfig, CurveRef, DivisorClass, GluedPoint, Gluing, LogPair, Role};
use crate::rat::Rat;
use crate::singularity::QuotientSingularity;

/// Why a document could not be turned into a pair or a cover.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    /// Malformed TOML, a wrong field type, or a decimal number; the message
    /// carries the line, column and key.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed but inconsistent; one message per problem, each prefixed
    /// by the field it concerns.
    #[error("invalid document:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    case_tag: Option<String>,
    #[serde(default, rename = "component")]
    components: Vec<ComponentDoc>,
    #[serde(default, rename = "gluing", skip_serializing_if = "Vec::is_empty")]
    gluings: Vec<GluingDoc>,
    #[serde(default)]
    canonical_k: BTreeMap<String, Rat>,
    #[serde(default)]
    divisor_d: BTreeMap<String, Rat>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    id: String,
    model_rank: u32,
    #[serde(default, rename = "curve")]
    curves: Vec<CurveDoc>,
    #[serde(default, rename = "meet", skip_serializing_if = "Vec::is_empty")]
    meets: Vec<MeetDoc>,
    #[serde(default, rename = "base_point", skip_serializing_if = "Vec::is_empty")]
    base_points: Vec<BasePointDoc>,
    #[serde(default, rename = "orbifold_marker", skip_serializing_if = "Vec::is_empty")]
    orbifold_markers: Vec<OrbifoldMarkerDoc>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDoc {
    label: String,
    self_int: Rat,
    #[serde(default)]
    genus: u32,
    #[serde(default)]
    roles: Vec<Role>,
    #[serde(default, skip_serializing_if = "is_false")]
    contracted: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeetDoc {
    curves: [String; 2],
    value: Rat,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasePointDoc {
    id: String,
    singularity: QuotientSingularity,
    #[serde(default)]
    incident: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbifoldMarkerDoc {
    point: String,
    order: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GluingDoc {
    /// `component.label`
    a: String,
    b: String,
    #[serde(default, rename = "point", skip_serializing_if = "Vec::is_empty")]
    points: Vec<GluedPointDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GluedPointDoc {
    a: Vec<String>,
    b: Vec<String>,
}

fn curve_ref(text: &str, field: &str, problems: &mut Vec<String>) -> CurveRef {
    match text.split_once('.') {
        Some((c, l)) if !c.is_empty() && !l.is_empty() => CurveRef::new(c, l),
        _ => {
            problems.push(format!("{field}: expected \"component.label\", found {text:?}"));
            CurveRef::new("", text)
        }
    }
}

impl PairDocument {
    fn from_pair(pair: &LogPair) -> PairDocument {
        let components = pair
            .components
            .iter()
            .map(|comp| ComponentDoc {
                id: comp.component_id.clone(),
                model_rank: comp.model_rank,
                curves: comp
                    .curves
                    .iter()
                    .map(|c| CurveDoc {
                        label: c.label.clone(),
                        self_int: comp.model_int(&c.label, &c.label),
                        genus: c.arith_genus,
                        roles: c.roles.iter().copied().collect(),
                        contracted: c.contracted,
                    })
                    .collect(),
                meets: comp
                    .model_entries()
                    .filter(|(a, b, _)| a != b)
                    .map(|(a, b, v)| MeetDoc { curves: [a.to_string(), b.to_string()], value: v.clone() })
                    .collect(),
                base_points: comp
                    .base_points
                    .iter()
                    .map(|p| BasePointDoc { id: p.id.clone(), singularity: p.singularity.clone(), incident: p.incident.clone() })
                    .collect(),
                orbifold_markers: comp.orbifold_markers.iter().map(|m| OrbifoldMarkerDoc { point: m.point.clone(), order: m.order }).collect(),
            })
            .collect();
        let gluings = pair
            .gluings
            .iter()
            .map(|g| GluingDoc {
                a: format!("{}.{}", g.a.component, g.a.label),
                b: format!("{}.{}", g.b.component, g.b.label),
                points: g.points.iter().map(|p| GluedPointDoc { a: p.a.clone(), b: p.b.clone() }).collect(),
            })
            .collect();
        let class = |c: &DivisorClass| c.terms().map(|(l, v)| (l.to_string(), v.clone())).collect();
        PairDocument {
            case_tag: pair.case_tag.clone(),
            components,
            gluings,
            canonical_k: class(&pair.canonical_k),
            divisor_d: class(&pair.divisor_d),
        }
    }

    fn into_pair(self) -> Result<LogPair, DocumentError> {
        let mut problems = Vec::new();
        let mut components = Vec::new();
        for (i, doc) in self.components.into_iter().enumerate() {
            let mut comp = CurveConfig::new(doc.id.clone(), doc.model_rank);
            for (j, c) in doc.curves.into_iter().enumerate() {
                if comp.has_curve(&c.label) {
                    problems.push(format!("component[{i}].curve[{j}].label: {:?} is defined twice on {}", c.label, doc.id));
                    continue;
                }
                let curve = Curve { label: c.label, arith_genus: c.genus, roles: c.roles.into_iter().collect(), contracted: c.contracted };
                comp.add_curve(curve, c.self_int);
            }
            for (j, m) in doc.meets.into_iter().enumerate() {
                let [a, b] = &m.curves;
                for l in [a, b] {
                    if !comp.has_curve(l) {
                        problems.push(format!("component[{i}].meet[{j}].curves: no curve {l:?} on {}", doc.id));
                    }
                }
                if a == b {
                    problems.push(format!("component[{i}].meet[{j}].curves: {a:?} twice; use self_int for self-intersections"));
                }
                comp.set_model_int(a, b, m.value);
            }
            for (j, p) in doc.base_points.into_iter().enumerate() {
                for l in &p.incident {
                    if !comp.has_curve(l) {
                        problems.push(format!("component[{i}].base_point[{j}].incident: no curve {l:?} on {}", doc.id));
                    }
                }
                let incident: Vec<&str> = p.incident.iter().map(String::as_str).collect();
                comp = comp.with_base_point(&p.id, p.singularity, &incident);
            }
            for m in doc.orbifold_markers {
                comp = comp.with_orbifold_marker(&m.point, m.order);
            }
            components.push(comp);
        }
        let mut gluings = Vec::new();
        for (i, g) in self.gluings.into_iter().enumerate() {
            let a = curve_ref(&g.a, &format!("gluing[{i}].a"), &mut problems);
            let b = curve_ref(&g.b, &format!("gluing[{i}].b"), &mut problems);
            for (side, r) in [("a", &a), ("b", &b)] {
                if !components.iter().any(|c| c.component_id == r.component && c.has_curve(&r.label)) {
                    problems.push(format!("gluing[{i}].{side}: no curve {:?} on component {:?}", r.label, r.component));
                }
            }
            let mut gluing = Gluing::new(a, b);
            gluing.points = g.points.into_iter().map(|p| GluedPoint { a: p.a, b: p.b }).collect();
            gluings.push(gluing);
        }
        if !problems.is_empty() {
            return Err(DocumentError::Invalid(problems));
        }
        let class = |m: BTreeMap<String, Rat>| {
            let mut c = DivisorClass::new();
            for (l, v) in m {
                c.set(&l, v);
            }
            c
        };
        let mut pair = LogPair::new(components, gluings, class(self.canonical_k), class(self.divisor_d));
        pair.case_tag = self.case_tag;
        let violations = validate_pair(&pair);
        if !violations.is_empty() {
            return Err(DocumentError::Invalid(violations.iter().map(|v| format!("{}: {v}", locate(&pair, v))).collect()));
        }
        Ok(pair)
    }
}

/// The document field a validation failure is about: the curve entry of
/// the first label the message mentions, else the whole document.
fn locate(pair: &LogPair, v: &crate::lattice::Violation) -> String {
    let text = v.to_string();
    for (i, comp) in pair.components.iter().enumerate() {
        for (j, c) in comp.curves.iter().enumerate() {
            if text.contains(&format!("{:?}", c.label)) || text.contains(&format!("{}·", c.label)) || text.contains(&format!(" {} ", c.label)) {
                return format!("component[{i}].curve[{j}] ({})", c.label);
            }
        }
    }
    "document".to_string()
}

/// Parses and validates a pair document.
pub fn parse_pair(text: &str) -> Result<LogPair, DocumentError> {
    let doc: PairDocument = toml::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
    doc.into_pair()
}

/// Renders a pair as a document; `parse_pair(&render_pair(p)) == p`.
pub fn render_pair(pair: &LogPair) -> String {
    toml::to_string(&PairDocument::from_pair(pair)).expect("pair documents are always representable")
}

/// Parses and validates a cover file.
pub fn parse_cover(text: &str) -> Result<CoverDescriptor, DocumentError> {
    let cover: CoverDescriptor = toml::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
    cover.validate().map_err(|e| DocumentError::Invalid(vec![e.to_string()]))?;
    Ok(cover)
}

/// Renders a cover descriptor as a cover file.
pub fn render_cover(cover: &CoverDescriptor) -> String {
    toml::to_string(cover).expect("cover descriptors are always representable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::{input_pair, InputCase};

    #[test]
    fn every_input_pair_round_trips() {
        for case in InputCase::all() {
            let pair = input_pair(&case).unwrap();
            let text = render_pair(&pair);
            assert_eq!(parse_pair(&text).unwrap(), pair, "{case}\n{text}");
        }
    }

    #[test]
    fn every_cover_round_trips() {
        for case in InputCase::all() {
            let cover = CoverDescriptor::for_case(&case);
            assert_eq!(parse_cover(&render_cover(&cover)).unwrap(), cover);
        }
    }

    #[test]
    fn decimals_are_a_parse_error() {
        let text = "[[component]]\nid = \"X\"\nmodel_rank = 1\n[[component.curve]]\nlabel = \"H\"\nself_int = 0.5\n";
        let err = parse_pair(text).unwrap_err();
        let DocumentError::Parse(msg) = err else { panic!("{err:?}") };
        assert!(msg.contains("decimal"), "{msg}");
        assert!(msg.contains("line 6"), "{msg}");
    }

    #[test]
    fn unknown_meet_label_is_located() {
        let text = "[[component]]\nid = \"X\"\nmodel_rank = 1\n[[component.curve]]\nlabel = \"H\"\nself_int = \"1\"\n[[component.meet]]\ncurves = [\"H\", \"L\"]\nvalue = 1\n";
        let err = parse_pair(text).unwrap_err();
        assert_eq!(err, DocumentError::Invalid(vec!["component[0].meet[0].curves: no curve \"L\" on X".into()]));
    }

    #[test]
    fn integers_and_fractions_are_accepted() {
        let text = "[[component]]\nid = \"X\"\nmodel_rank = 1\n[[component.curve]]\nlabel = \"H\"\nself_int = 1\nroles = [\"in_divisor_d\"]\n[canonical_k]\nH = \"-3\"\n[divisor_d]\nH = \"9/2\"\n";
        let p = parse_pair(text).unwrap();
        assert_eq!(p.divisor_d.coeff("H"), Rat::new(9, 2));
    }
}
