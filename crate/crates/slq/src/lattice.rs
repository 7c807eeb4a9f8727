//! Curve configurations, divisor classes and log pairs.
//!
//! A component is stored as a *model* surface: every curve ever tracked on
//! it, including curves that have since been contracted, together with the
//! integral-or-rational intersection form of the model. Contracted curves
//! are marked `contracted`; the intersection numbers of the surface itself
//! are obtained from the model by the pullback solve
//!
//! ```text
//!   π*γ = γ + Σ x_h h,   (π*γ)·h' = 0 for every contracted h'
//!   γ·δ (on the contracted surface) = π*γ · π*δ
//! ```
//!
//! Singular points of a component are the connected components of its
//! contracted curves (resolved to a cyclic quotient by Hirzebruch–Jung),
//! plus any base points that were singular from the start.
//!
//! The canonical class `K` of a pair is stored component-wise as the
//! restriction of the log canonical class, `K|_S = K_S + (double curves on
//! S)`; on an irreducible surface this is just `K_S`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_negative_definite, rank, solve, Matrix};
use crate::rat::{EpsLinear, Rat};
use crate::singularity::{resolve_configuration, QuotientSingularity, ResolvedPoint};

/// Marker flags carried by a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    InDivisorD,
    DoubleCurve,
    Fiber,
    Section,
    Exceptional,
    Directrix,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::InDivisorD => "in_divisor_d",
            Role::DoubleCurve => "double_curve",
            Role::Fiber => "fiber",
            Role::Section => "section",
            Role::Exceptional => "exceptional",
            Role::Directrix => "directrix",
        }
    }
}

/// A tracked curve on a component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub label: String,
    pub arith_genus: u32,
    pub roles: BTreeSet<Role>,
    /// Contracted curves stay in the model but are no longer curves of the
    /// surface; they make up its singular points.
    pub contracted: bool,
}

/// A point of a component that is singular without being resolved in the
/// model (used for the stable chain of two `P(O(4/3)⊕O(5/3))` components).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoint {
    pub id: String,
    pub singularity: QuotientSingularity,
    /// Curves of the component passing through the point.
    pub incident: Vec<String>,
}

/// A stacky point of the base curve recorded on a component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldMarker {
    pub point: String,
    pub order: u32,
}

/// A singular point of a component, as seen on the contracted surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    /// Base-point id, or the contracted labels joined by `+`.
    pub id: String,
    pub singularity: QuotientSingularity,
    /// Visible curves through the point.
    pub curves: Vec<String>,
    /// Contracted curves over the point (empty for base points).
    pub exceptional: Vec<String>,
}

/// One component of a log pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConfig {
    pub component_id: String,
    pub curves: Vec<Curve>,
    pairwise: BTreeMap<(String, String), Rat>,
    /// Picard rank of the model (contracted curves included).
    pub model_rank: u32,
    pub base_points: Vec<BasePoint>,
    pub orbifold_markers: Vec<OrbifoldMarker>,
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// The intersection form of the contracted surface on its visible curves.
#[derive(Clone, Debug)]
pub struct EffectiveForm {
    pub labels: Vec<String>,
    index: BTreeMap<String, usize>,
    pub matrix: Matrix,
}

impl EffectiveForm {
    pub fn get(&self, a: &str, b: &str) -> Option<&Rat> {
        Some(&self.matrix[*self.index.get(a)?][*self.index.get(b)?])
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }
}

impl CurveConfig {
    /// An empty component of the given (model) Picard rank.
    pub fn new(component_id: impl Into<String>, model_rank: u32) -> CurveConfig {
        CurveConfig {
            component_id: component_id.into(),
            curves: Vec::new(),
            pairwise: BTreeMap::new(),
            model_rank,
            base_points: Vec::new(),
            orbifold_markers: Vec::new(),
        }
    }

    /// Builder: adds a curve with its self-intersection.
    pub fn with_curve(mut self, label: &str, self_int: Rat, genus: u32, roles: &[Role]) -> CurveConfig {
        self.add_curve(Curve { label: label.into(), arith_genus: genus, roles: roles.iter().copied().collect(), contracted: false }, self_int);
        self
    }

    /// Builder: sets the intersection number of two distinct curves.
    pub fn with_meet(mut self, a: &str, b: &str, value: Rat) -> CurveConfig {
        self.set_model_int(a, b, value);
        self
    }

    /// Builder: records a base singular point.
    pub fn with_base_point(mut self, id: &str, singularity: QuotientSingularity, incident: &[&str]) -> CurveConfig {
        self.base_points.push(BasePoint { id: id.into(), singularity, incident: incident.iter().map(|s| s.to_string()).collect() });
        self
    }

    /// Builder: records an orbifold marker.
    pub fn with_orbifold_marker(mut self, point: &str, order: u32) -> CurveConfig {
        self.orbifold_markers.push(OrbifoldMarker { point: point.into(), order });
        self
    }

    pub fn add_curve(&mut self, curve: Curve, self_int: Rat) {
        let label = curve.label.clone();
        self.curves.push(curve);
        self.pairwise.insert((label.clone(), label), self_int);
    }

    /// Removes a curve and all its intersection entries.
    pub fn remove_curve(&mut self, label: &str) -> Option<Curve> {
        let pos = self.curves.iter().position(|c| c.label == label)?;
        self.pairwise.retain(|(a, b), _| a != label && b != label);
        Some(self.curves.remove(pos))
    }

    pub fn curve(&self, label: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.label == label)
    }

    pub fn curve_mut(&mut self, label: &str) -> Option<&mut Curve> {
        self.curves.iter_mut().find(|c| c.label == label)
    }

    pub fn has_curve(&self, label: &str) -> bool {
        self.curve(label).is_some()
    }

    /// Intersection number on the model (0 when not recorded).
    pub fn model_int(&self, a: &str, b: &str) -> Rat {
        self.pairwise.get(&key(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Sets a model intersection number; zero off-diagonal entries are
    /// dropped so that equal forms compare equal.
    pub fn set_model_int(&mut self, a: &str, b: &str, value: Rat) {
        if a != b && value.is_zero() {
            self.pairwise.remove(&key(a, b));
        } else {
            self.pairwise.insert(key(a, b), value);
        }
    }

    /// All recorded model intersection entries `(a, b, value)` with `a ≤ b`.
    pub fn model_entries(&self) -> impl Iterator<Item = (&str, &str, &Rat)> {
        self.pairwise.iter().map(|((a, b), v)| (a.as_str(), b.as_str(), v))
    }

    pub fn visible_labels(&self) -> Vec<String> {
        self.curves.iter().filter(|c| !c.contracted).map(|c| c.label.clone()).collect()
    }

    pub fn hidden_labels(&self) -> Vec<String> {
        self.curves.iter().filter(|c| c.contracted).map(|c| c.label.clone()).collect()
    }

    pub fn is_visible(&self, label: &str) -> bool {
        self.curve(label).is_some_and(|c| !c.contracted)
    }

    /// Picard rank of the contracted surface.
    pub fn picard_rank(&self) -> u32 {
        self.model_rank.saturating_sub(self.hidden_labels().len() as u32)
    }

    fn gram(&self, rows: &[String], cols: &[String]) -> Matrix {
        rows.iter().map(|a| cols.iter().map(|b| self.model_int(a, b)).collect()).collect()
    }

    /// Pullback coefficients `x_h` of a visible curve onto the contracted
    /// curves: `π*γ = γ + Σ x_h h`.
    pub fn pullback(&self, label: &str) -> Result<Vec<(String, Rat)>> {
        let hidden = self.hidden_labels();
        if hidden.is_empty() {
            return Ok(Vec::new());
        }
        let m_hh = self.gram(&hidden, &hidden);
        let rhs: Matrix = hidden.iter().map(|h| vec![-self.model_int(h, label)]).collect();
        let x = solve(&m_hh, &rhs)
            .ok_or_else(|| Error::UnsupportedContraction(format!("contracted locus of {} is degenerate", self.component_id)))?;
        Ok(hidden.into_iter().zip(x).map(|(h, row)| (h, row[0].clone())).collect())
    }

    /// The intersection form of the contracted surface.
    pub fn effective_form(&self) -> Result<EffectiveForm> {
        let visible = self.visible_labels();
        let hidden = self.hidden_labels();
        let mut matrix = self.gram(&visible, &visible);
        if !hidden.is_empty() {
            let m_hh = self.gram(&hidden, &hidden);
            let m_hv = self.gram(&hidden, &visible);
            let x = solve(&m_hh, &m_hv)
                .ok_or_else(|| Error::UnsupportedContraction(format!("contracted locus of {} is degenerate", self.component_id)))?;
            for (i, a) in visible.iter().enumerate() {
                for j in 0..visible.len() {
                    let mut corr = Rat::zero();
                    for (k, h) in hidden.iter().enumerate() {
                        corr += self.model_int(a, h) * &x[k][j];
                    }
                    matrix[i][j] -= corr;
                }
            }
        }
        let index = visible.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(EffectiveForm { labels: visible, index, matrix })
    }

    /// Intersection of two visible curves on the contracted surface.
    pub fn curve_int(&self, a: &str, b: &str) -> Result<Rat> {
        for l in [a, b] {
            if !self.is_visible(l) {
                return Err(Error::MissingCurve(l.to_string()));
            }
        }
        let form = self.effective_form()?;
        Ok(form.get(a, b).cloned().expect("visible"))
    }

    /// Self-intersection on the contracted surface.
    pub fn self_int(&self, label: &str) -> Result<Rat> {
        self.curve_int(label, label)
    }

    /// True when the curve meets no contracted curve on the model.
    pub fn has_hidden_neighbours(&self, label: &str) -> bool {
        self.curves.iter().any(|c| c.contracted && c.label != label && !self.model_int(label, &c.label).is_zero())
    }

    /// Connected components of the contracted curves, in curve order.
    pub fn hidden_components(&self) -> Vec<Vec<String>> {
        let hidden = self.hidden_labels();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in &hidden {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![start.clone()];
            seen.insert(start.clone());
            let mut i = 0;
            while i < comp.len() {
                let cur = comp[i].clone();
                for h in &hidden {
                    if !seen.contains(h) && !self.model_int(&cur, h).is_zero() {
                        seen.insert(h.clone());
                        comp.push(h.clone());
                    }
                }
                i += 1;
            }
            comp.sort_by_key(|l| hidden.iter().position(|h| h == l));
            out.push(comp);
        }
        out
    }

    /// Singular points of the contracted surface: base points, then one
    /// point per non-smooth connected component of contracted curves.
    pub fn singular_points(&self) -> Result<Vec<SingularPoint>> {
        let mut out: Vec<SingularPoint> = self
            .base_points
            .iter()
            .map(|p| SingularPoint { id: p.id.clone(), singularity: p.singularity.clone(), curves: p.incident.clone(), exceptional: Vec::new() })
            .collect();
        for comp in self.hidden_components() {
            if let Some(bad) = comp.iter().find(|l| self.curve(l).is_some_and(|c| c.arith_genus != 0)) {
                return Err(Error::UnsupportedContraction(format!("contracted curve {bad} is not rational")));
            }
            let gram = self.gram(&comp, &comp);
            let singularity = match resolve_configuration(&gram)? {
                ResolvedPoint::Smooth => continue,
                ResolvedPoint::Chain { singularity, .. } => singularity,
            };
            let curves = self
                .curves
                .iter()
                .filter(|c| !c.contracted && comp.iter().any(|h| !self.model_int(&c.label, h).is_zero()))
                .map(|c| c.label.clone())
                .collect();
            out.push(SingularPoint { id: comp.join("+"), singularity, curves, exceptional: comp });
        }
        Ok(out)
    }

    /// The singular point carrying a glued-point anchor (a base-point id or
    /// a contracted label).
    pub fn anchored_point(&self, anchor: &str) -> Result<Option<SingularPoint>> {
        Ok(self.singular_points()?.into_iter().find(|p| p.id == anchor || p.exceptional.iter().any(|h| h == anchor)))
    }
}

/// A finite formal `Rat`-combination of curve labels.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct DivisorClass(BTreeMap<String, Rat>);

impl DivisorClass {
    pub fn new() -> DivisorClass {
        DivisorClass(BTreeMap::new())
    }

    pub fn from_terms<S: AsRef<str>>(terms: &[(S, Rat)]) -> DivisorClass {
        let mut d = DivisorClass::new();
        for (l, c) in terms {
            d.add_term(l.as_ref(), c.clone());
        }
        d
    }

    /// The class of a single curve.
    pub fn curve(label: &str) -> DivisorClass {
        DivisorClass::from_terms(&[(label, Rat::one())])
    }

    pub fn coeff(&self, label: &str) -> Rat {
        self.0.get(label).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, label: &str, value: Rat) {
        if value.is_zero() {
            self.0.remove(label);
        } else {
            self.0.insert(label.to_string(), value);
        }
    }

    pub fn add_term(&mut self, label: &str, value: Rat) {
        let v = self.coeff(label) + value;
        self.set(label, v);
    }

    pub fn remove(&mut self, label: &str) -> Rat {
        self.0.remove(label).unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.0.iter().map(|(l, c)| (l.as_str(), c))
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, k: &Rat) -> DivisorClass {
        DivisorClass(self.0.iter().map(|(l, c)| (l.clone(), c * k)).filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn plus(&self, other: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        for (l, c) in other.terms() {
            out.add_term(l, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &DivisorClass) -> DivisorClass {
        self.plus(&other.scale(&Rat::int(-1)))
    }

    /// The part supported on the given labels.
    pub fn restricted(&self, labels: &BTreeSet<&str>) -> DivisorClass {
        DivisorClass(self.0.iter().filter(|(l, _)| labels.contains(l.as_str())).map(|(l, c)| (l.clone(), c.clone())).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag == Rat::one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{mag}·{l}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A curve on a named component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRef {
    pub component: String,
    pub label: String,
}

impl CurveRef {
    pub fn new(component: &str, label: &str) -> CurveRef {
        CurveRef { component: component.into(), label: label.into() }
    }
}

/// A special point of a double curve: the two sides are singular points
/// named by anchors (contracted labels or base-point ids) on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedPoint {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

/// Two components glued along a double curve, one copy of it on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub a: CurveRef,
    pub b: CurveRef,
    pub points: Vec<GluedPoint>,
}

impl Gluing {
    pub fn new(a: CurveRef, b: CurveRef) -> Gluing {
        Gluing { a, b, points: Vec::new() }
    }

    pub fn involves(&self, label: &str) -> bool {
        self.a.label == label || self.b.label == label
    }

    /// The copy of the double curve on the other side.
    pub fn partner(&self, label: &str) -> Option<&CurveRef> {
        if self.a.label == label {
            Some(&self.b)
        } else if self.b.label == label {
            Some(&self.a)
        } else {
            None
        }
    }
}

/// Where a singularity sits on the pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// Isolated point of a component, with the visible curves through it.
    Point { component: String, id: String, curves: Vec<String> },
    /// Point (or general point) of the double curve of a gluing.
    DoubleCurve { a: String, b: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocatedSingularity {
    pub singularity: QuotientSingularity,
    pub location: Location,
}

/// A possibly reducible surface with its divisor `D` and (log) canonical
/// class `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogPair {
    pub components: Vec<CurveConfig>,
    pub gluings: Vec<Gluing>,
    pub divisor_d: DivisorClass,
    pub canonical_k: DivisorClass,
    pub case_tag: Option<String>,
}

/// One violated invariant reported by [`validate_pair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateLabel(String),
    DuplicateComponent(String),
    NegativeIntersection { a: String, b: String, value: Rat },
    UnknownLabel { class: &'static str, label: String },
    NotEffective { label: String, coeff: Rat },
    RoleMismatch { label: String, role: Role },
    BadGluing(String),
    NotTrivial { label: String, value: Rat },
    GluingMismatch { class: &'static str, a: String, b: String, on_a: Rat, on_b: Rat },
    RankExceeded { component: String, rank: usize, picard: u32 },
    ContractedLocus { component: String, detail: String },
    GluedOrderMismatch { a: String, b: String, detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateLabel(l) => write!(f, "label {l:?} used twice"),
            Violation::DuplicateComponent(c) => write!(f, "component {c:?} used twice"),
            Violation::NegativeIntersection { a, b, value } => write!(f, "{a}·{b} = {value} < 0"),
            Violation::UnknownLabel { class, label } => write!(f, "{class} mentions unknown or contracted curve {label:?}"),
            Violation::NotEffective { label, coeff } => write!(f, "D is not effective: coefficient {coeff} on {label}"),
            Violation::RoleMismatch { label, role } => write!(f, "role {} on {label} does not match D and the gluings", role.name()),
            Violation::BadGluing(detail) => write!(f, "bad gluing: {detail}"),
            Violation::NotTrivial { label, value } => write!(f, "(3K+2D)·{label} = {value} ≠ 0"),
            Violation::GluingMismatch { class, a, b, on_a, on_b } => {
                write!(f, "{class}·{a} = {on_a} but {class}·{b} = {on_b} across the gluing")
            }
            Violation::RankExceeded { component, rank, picard } => {
                write!(f, "component {component}: tracked classes have rank {rank} > Picard rank {picard}")
            }
            Violation::ContractedLocus { component, detail } => write!(f, "component {component}: {detail}"),
            Violation::GluedOrderMismatch { a, b, detail } => write!(f, "glued point on {a}/{b}: {detail}"),
        }
    }
}

impl LogPair {
    pub fn new(components: Vec<CurveConfig>, gluings: Vec<Gluing>, canonical_k: DivisorClass, divisor_d: DivisorClass) -> LogPair {
        let mut pair = LogPair { components, gluings, divisor_d, canonical_k, case_tag: None };
        pair.sync_roles();
        pair
    }

    pub fn with_case_tag(mut self, tag: &str) -> LogPair {
        self.case_tag = Some(tag.to_string());
        self
    }

    /// The empty pair.
    pub fn empty() -> LogPair {
        LogPair::new(Vec::new(), Vec::new(), DivisorClass::new(), DivisorClass::new())
    }

    pub fn component_index(&self, id: &str) -> Result<usize> {
        self.components.iter().position(|c| c.component_id == id).ok_or_else(|| Error::MissingComponent(id.to_string()))
    }

    pub fn component(&self, id: &str) -> Result<&CurveConfig> {
        Ok(&self.components[self.component_index(id)?])
    }

    pub fn component_mut(&mut self, id: &str) -> Result<&mut CurveConfig> {
        let i = self.component_index(id)?;
        Ok(&mut self.components[i])
    }

    /// Index of the component holding a label (contracted curves included).
    pub fn locate(&self, label: &str) -> Result<usize> {
        self.components.iter().position(|c| c.has_curve(label)).ok_or_else(|| Error::MissingCurve(label.to_string()))
    }

    /// Component id of a label.
    pub fn component_of(&self, label: &str) -> Result<&str> {
        Ok(&self.components[self.locate(label)?].component_id)
    }

    pub fn curve(&self, label: &str) -> Result<&Curve> {
        Ok(self.components[self.locate(label)?].curve(label).expect("located"))
    }

    /// Curve labels must be unique across the pair; this is the check used
    /// before adding a new one.
    pub fn ensure_fresh(&self, label: &str) -> Result<()> {
        if self.locate(label).is_ok() || self.components.iter().any(|c| c.base_points.iter().any(|p| p.id == label)) {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        Ok(())
    }

    /// Labels of the double curves lying on a component.
    pub fn double_curves_on(&self, component: &str) -> Vec<String> {
        let mut out = Vec::new();
        for g in &self.gluings {
            for side in [&g.a, &g.b] {
                if side.component == component {
                    out.push(side.label.clone());
                }
            }
        }
        out
    }

    pub fn is_double_curve(&self, label: &str) -> bool {
        self.gluings.iter().any(|g| g.involves(label))
    }

    /// Index of the gluing along a double-curve label.
    pub fn gluing_of(&self, label: &str) -> Option<usize> {
        self.gluings.iter().position(|g| g.involves(label))
    }

    /// Recomputes the `in_divisor_d` and `double_curve` roles from `D` and
    /// the gluings.
    pub fn sync_roles(&mut self) {
        let in_d: BTreeSet<String> = self.divisor_d.terms().filter(|(_, c)| c.is_positive()).map(|(l, _)| l.to_string()).collect();
        let doubles: BTreeSet<String> = self.gluings.iter().flat_map(|g| [g.a.label.clone(), g.b.label.clone()]).collect();
        for comp in &mut self.components {
            for c in &mut comp.curves {
                set_flag(&mut c.roles, Role::InDivisorD, in_d.contains(&c.label));
                set_flag(&mut c.roles, Role::DoubleCurve, doubles.contains(&c.label));
            }
        }
    }

    /// Intersection of two tracked curves. Curves on different components
    /// only meet through gluing records, so such products are errors.
    pub fn curve_int(&self, a: &str, b: &str) -> Result<Rat> {
        let (ia, ib) = (self.locate(a)?, self.locate(b)?);
        if ia != ib {
            return Err(Error::UntrackedIntersection(a.to_string(), b.to_string()));
        }
        self.components[ia].curve_int(a, b)
    }

    /// Bilinear extension of the intersection form: the sum over components
    /// of the pairing of the restrictions. Classes supported on disjoint
    /// sets of components have no tracked intersection.
    pub fn class_intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rat> {
        let mut comps_a = BTreeSet::new();
        let mut comps_b = BTreeSet::new();
        for (class, comps) in [(a, &mut comps_a), (b, &mut comps_b)] {
            for l in class.support() {
                let i = self.locate(l)?;
                if !self.components[i].is_visible(l) {
                    return Err(Error::MissingCurve(l.to_string()));
                }
                comps.insert(i);
            }
        }
        if !comps_a.is_empty() && !comps_b.is_empty() && comps_a.is_disjoint(&comps_b) {
            let la = a.support().next().expect("nonempty").to_string();
            let lb = b.support().next().expect("nonempty").to_string();
            return Err(Error::UntrackedIntersection(la, lb));
        }
        let mut total = Rat::zero();
        for i in comps_a.intersection(&comps_b) {
            let form = self.components[*i].effective_form()?;
            for (la, ca) in a.terms().filter(|(l, _)| form.contains(l)) {
                for (lb, cb) in b.terms().filter(|(l, _)| form.contains(l)) {
                    total += ca * cb * form.get(la, lb).expect("visible");
                }
            }
        }
        Ok(total)
    }

    /// `K·γ` for a visible curve.
    pub fn k_dot(&self, label: &str) -> Result<Rat> {
        self.class_with_curve(&self.canonical_k, label)
    }

    /// `D·γ` for a visible curve.
    pub fn d_dot(&self, label: &str) -> Result<Rat> {
        self.class_with_curve(&self.divisor_d, label)
    }

    /// A class against one curve: only the restriction to the curve's
    /// component contributes.
    pub fn class_with_curve(&self, class: &DivisorClass, label: &str) -> Result<Rat> {
        let i = self.locate(label)?;
        let comp = &self.components[i];
        if !comp.is_visible(label) {
            return Err(Error::MissingCurve(label.to_string()));
        }
        let form = comp.effective_form()?;
        let mut total = Rat::zero();
        for (l, c) in class.terms() {
            if let Some(v) = form.get(l, label) {
                total += c * v;
            }
        }
        Ok(total)
    }

    /// `(K + (2/3+ε)D)·γ`.
    pub fn log_value(&self, label: &str) -> Result<EpsLinear> {
        let k = self.k_dot(label)?;
        let d = self.d_dot(label)?;
        Ok(EpsLinear::new(k + Rat::new(2, 3) * &d, d))
    }

    /// `(3K + 2D)·γ`.
    pub fn index_value(&self, label: &str) -> Result<Rat> {
        Ok(Rat::int(3) * self.k_dot(label)? + Rat::int(2) * self.d_dot(label)?)
    }

    /// The canonical class of the component surface itself: `K|_S` minus
    /// the double curves lying on `S`.
    pub fn surface_canonical(&self, component: &str) -> Result<DivisorClass> {
        let comp = self.component(component)?;
        let labels: BTreeSet<&str> = comp.curves.iter().map(|c| c.label.as_str()).collect();
        let mut k = self.canonical_k.restricted(&labels);
        for b in self.double_curves_on(component) {
            k.add_term(&b, Rat::int(-1));
        }
        Ok(k)
    }

    /// The record of a gluing at each of its special points, or the single
    /// normal-crossing record when it has none.
    pub fn glued_records(&self, gluing: &Gluing) -> Result<Vec<QuotientSingularity>> {
        if gluing.points.is_empty() {
            return Ok(vec![QuotientSingularity::NormalCrossing]);
        }
        let ca = self.component(&gluing.a.component)?;
        let cb = self.component(&gluing.b.component)?;
        let mut out = Vec::new();
        for p in &gluing.points {
            let side = |comp: &CurveConfig, anchors: &[String]| -> Result<QuotientSingularity> {
                for a in anchors {
                    if let Some(pt) = comp.anchored_point(a)? {
                        return Ok(pt.singularity);
                    }
                }
                Err(Error::InconsistentIncidence(format!("glued point anchors {anchors:?} name no singular point of {}", comp.component_id)))
            };
            let (sa, sb) = (side(ca, &p.a)?, side(cb, &p.b)?);
            let (QuotientSingularity::Cyclic { n: na, q: qa }, QuotientSingularity::Cyclic { n: nb, q: qb }) = (&sa, &sb) else {
                return Err(Error::InconsistentIncidence("glued point over a non-cyclic point".into()));
            };
            if na != nb {
                return Err(Error::InconsistentIncidence(format!("glued point joins {sa} and {sb} of different orders")));
            }
            if *na != 3 {
                return Err(Error::UnsupportedOrbifoldOrder(*na));
            }
            out.push(QuotientSingularity::glued(*na, [*qa, *qb, 1])?);
        }
        Ok(out)
    }

    /// All non-normal-crossing singularities of the pair: isolated points
    /// of each component (those not lying under a glued point), then the
    /// records of the gluings.
    pub fn singularities(&self) -> Result<Vec<LocatedSingularity>> {
        let mut out = Vec::new();
        for comp in &self.components {
            for pt in comp.singular_points()? {
                let glued = self.gluings.iter().any(|g| {
                    g.points.iter().any(|gp| {
                        let anchors = if g.a.component == comp.component_id { &gp.a } else if g.b.component == comp.component_id { &gp.b } else { return false };
                        anchors.iter().any(|a| *a == pt.id || pt.exceptional.contains(a))
                    })
                });
                if !glued {
                    out.push(LocatedSingularity {
                        singularity: pt.singularity,
                        location: Location::Point { component: comp.component_id.clone(), id: pt.id, curves: pt.curves },
                    });
                }
            }
        }
        for g in &self.gluings {
            for s in self.glued_records(g)? {
                out.push(LocatedSingularity { singularity: s, location: Location::DoubleCurve { a: g.a.label.clone(), b: g.b.label.clone() } });
            }
        }
        Ok(out)
    }

    /// Total number of visible curves.
    pub fn visible_curve_count(&self) -> usize {
        self.components.iter().map(|c| c.visible_labels().len()).sum()
    }
}

fn set_flag(roles: &mut BTreeSet<Role>, role: Role, on: bool) {
    if on {
        roles.insert(role);
    } else {
        roles.remove(&role);
    }
}

/// Checks every log-pair invariant and lists the violations; an empty list
/// means the pair is valid.
pub fn validate_pair(pair: &LogPair) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut labels = BTreeSet::new();
    let mut comp_ids = BTreeSet::new();
    for comp in &pair.components {
        if !comp_ids.insert(comp.component_id.clone()) {
            out.push(Violation::DuplicateComponent(comp.component_id.clone()));
        }
        for c in &comp.curves {
            if !labels.insert(c.label.clone()) {
                out.push(Violation::DuplicateLabel(c.label.clone()));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    // Intersections between distinct visible curves are non-negative.
    let mut forms = BTreeMap::new();
    for comp in &pair.components {
        match comp.effective_form() {
            Ok(form) => {
                for (i, a) in form.labels.iter().enumerate() {
                    for (j, b) in form.labels.iter().enumerate() {
                        if i < j && form.matrix[i][j].is_negative() {
                            out.push(Violation::NegativeIntersection { a: a.clone(), b: b.clone(), value: form.matrix[i][j].clone() });
                        }
                    }
                }
                let rk = rank(&form.matrix);
                if rk > comp.picard_rank() as usize {
                    out.push(Violation::RankExceeded { component: comp.component_id.clone(), rank: rk, picard: comp.picard_rank() });
                }
                forms.insert(comp.component_id.clone(), form);
            }
            Err(e) => out.push(Violation::ContractedLocus { component: comp.component_id.clone(), detail: e.to_string() }),
        }
        // Contracted locus: negative definite and resolvable to quotients.
        for hc in comp.hidden_components() {
            let gram: Matrix = hc.iter().map(|a| hc.iter().map(|b| comp.model_int(a, b)).collect()).collect();
            if !is_negative_definite(&gram) {
                out.push(Violation::ContractedLocus { component: comp.component_id.clone(), detail: format!("{hc:?} is not negative definite") });
            }
        }
        if let Err(e) = comp.singular_points() {
            out.push(Violation::ContractedLocus { component: comp.component_id.clone(), detail: e.to_string() });
        }
    }

    // Class supports.
    for (name, class) in [("D", &pair.divisor_d), ("K", &pair.canonical_k)] {
        for l in class.support() {
            if !pair.components.iter().any(|c| c.is_visible(l)) {
                out.push(Violation::UnknownLabel { class: name, label: l.to_string() });
            }
        }
    }
    for (l, c) in pair.divisor_d.terms() {
        if c.is_negative() {
            out.push(Violation::NotEffective { label: l.to_string(), coeff: c.clone() });
        }
    }

    // Gluings.
    let mut glued_labels = BTreeSet::new();
    for g in &pair.gluings {
        if g.a.component == g.b.component {
            out.push(Violation::BadGluing(format!("{} is glued to its own component", g.a.component)));
            continue;
        }
        let mut ok = true;
        for side in [&g.a, &g.b] {
            match pair.component(&side.component) {
                Ok(c) if c.is_visible(&side.label) => {}
                _ => {
                    out.push(Violation::BadGluing(format!("{} is not a curve of {}", side.label, side.component)));
                    ok = false;
                }
            }
            if !glued_labels.insert(side.label.clone()) {
                out.push(Violation::BadGluing(format!("{} lies on two gluings", side.label)));
            }
        }
        if !ok {
            continue;
        }
        let (ga, gb) = (pair.curve(&g.a.label).map(|c| c.arith_genus), pair.curve(&g.b.label).map(|c| c.arith_genus));
        if ga != gb {
            out.push(Violation::BadGluing(format!("{} and {} have different genera", g.a.label, g.b.label)));
        }
        for (name, class) in [("D", &pair.divisor_d), ("K", &pair.canonical_k)] {
            if let (Ok(va), Ok(vb)) = (pair.class_with_curve(class, &g.a.label), pair.class_with_curve(class, &g.b.label)) {
                if va != vb {
                    out.push(Violation::GluingMismatch { class: name, a: g.a.label.clone(), b: g.b.label.clone(), on_a: va, on_b: vb });
                }
            }
        }
        if let Err(e) = pair.glued_records(g) {
            out.push(Violation::GluedOrderMismatch { a: g.a.label.clone(), b: g.b.label.clone(), detail: e.to_string() });
        }
    }

    // Roles agree with D and the gluings.
    for comp in &pair.components {
        for c in &comp.curves {
            let in_d = pair.divisor_d.coeff(&c.label).is_positive();
            if in_d != c.roles.contains(&Role::InDivisorD) {
                out.push(Violation::RoleMismatch { label: c.label.clone(), role: Role::InDivisorD });
            }
            if glued_labels.contains(&c.label) != c.roles.contains(&Role::DoubleCurve) {
                out.push(Violation::RoleMismatch { label: c.label.clone(), role: Role::DoubleCurve });
            }
        }
    }

    // 3K + 2D is numerically trivial on every visible curve.
    for comp in &pair.components {
        let Some(form) = forms.get(&comp.component_id) else { continue };
        for l in &form.labels {
            let mut value = Rat::zero();
            for (name, k) in [(&pair.canonical_k, Rat::int(3)), (&pair.divisor_d, Rat::int(2))] {
                for (m, c) in name.terms() {
                    if let Some(v) = form.get(m, l) {
                        value += &k * c * v;
                    }
                }
            }
            if !value.is_zero() {
                out.push(Violation::NotTrivial { label: l.clone(), value });
            }
        }
    }
    out
}
