//! The genus-4 input cases and their marked curve configurations.
//!
//! Each [`InputCase`] names one configuration `(X, D)` of the case list:
//! the Tschirnhausen surface of the cover with `D` the image of the curve,
//! `K` the (log) canonical class. Sub-case flags carry the contact data the
//! lattice cannot see (tangencies, components of `D`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{CurveConfig, CurveRef, DivisorClass, GluedPoint, Gluing, LogPair, Role};
use crate::rat::Rat;
use crate::singularity::QuotientSingularity;

/// How two branches of `D` meet: transversely (node) or tangentially (cusp
/// after contraction).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Contact {
    Transverse,
    Tangent,
}

/// Maroni-special covers on `F₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MaroniSpecialSub {
    DDisjointFromSigma,
    DContainsSigma(Contact),
}

/// Hyperelliptic covers `C ∪ P¹` on `F₄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HyperellipticSub {
    /// `H` unramified over the base at `p = σ ∩ H`.
    Unramified,
    /// `H` ramified at `p` (the fiber through `p` is tangent to `H`).
    Ramified,
    /// The fiber through `p` is a component of `D`; the contact records how
    /// the residual curve meets it.
    FiberComponent(Contact),
}

/// The two configurations of the `F₃ ∪ F₁` case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum F3F1Directrices {
    /// The directrices meet the double curve at different points; `τ` is
    /// the line of `F₁` through the flipping point.
    Disjoint { tau_triple_tangent: bool, tau_component: Option<Contact> },
    /// The directrices meet the double curve at the same point; `F` is the
    /// fiber of `F₁` through `σ₂ ∩ H`.
    Intersecting { f_tangent: bool, f_component: Option<Contact> },
}

/// A case of the genus-4 list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InputCase {
    /// Smooth quadric; the `A_n` types of the singularities of `D`.
    MaroniGeneral { d_singularities: Vec<u32> },
    StableChainThirdThird,
    MaroniSpecial(MaroniSpecialSub),
    HyperellipticTail(HyperellipticSub),
    F3F3,
    F1F1,
    F3F1(F3F1Directrices),
}

impl InputCase {
    /// Every case and sub-case of the list (with a generic smooth `D` for
    /// the Maroni-general case).
    pub fn all() -> Vec<InputCase> {
        use Contact::*;
        let mut out = vec![
            InputCase::MaroniGeneral { d_singularities: vec![] },
            InputCase::MaroniGeneral { d_singularities: vec![4] },
            InputCase::StableChainThirdThird,
            InputCase::MaroniSpecial(MaroniSpecialSub::DDisjointFromSigma),
            InputCase::MaroniSpecial(MaroniSpecialSub::DContainsSigma(Transverse)),
            InputCase::MaroniSpecial(MaroniSpecialSub::DContainsSigma(Tangent)),
            InputCase::HyperellipticTail(HyperellipticSub::Unramified),
            InputCase::HyperellipticTail(HyperellipticSub::Ramified),
            InputCase::HyperellipticTail(HyperellipticSub::FiberComponent(Transverse)),
            InputCase::HyperellipticTail(HyperellipticSub::FiberComponent(Tangent)),
            InputCase::F3F3,
            InputCase::F1F1,
        ];
        for (triple, comp) in [(false, None), (true, None), (true, Some(Transverse)), (true, Some(Tangent))] {
            out.push(InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent: triple, tau_component: comp }));
            out.push(InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent: triple, f_component: comp }));
        }
        out
    }

    /// Checks that the sub-case data is consistent with the tag.
    pub fn validate(&self) -> Result<()> {
        match self {
            InputCase::MaroniGeneral { d_singularities } => {
                if let Some(n) = d_singularities.iter().find(|&&n| n == 0 || n > 4) {
                    return Err(Error::InvalidInput(format!("D may only have A1..A4 singularities, got A{n}")));
                }
            }
            InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent: false, tau_component: Some(_) }) => {
                return Err(Error::InvalidInput("τ can only be a component of D when it is triply tangent".into()));
            }
            InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent: false, f_component: Some(_) }) => {
                return Err(Error::InvalidInput("F can only be a component of D when it is tangent".into()));
            }
            _ => {}
        }
        Ok(())
    }

    /// The CLI name of the case.
    pub fn name(&self) -> &'static str {
        match self {
            InputCase::MaroniGeneral { .. } => "maroni-general",
            InputCase::StableChainThirdThird => "third-third",
            InputCase::MaroniSpecial(_) => "maroni-special",
            InputCase::HyperellipticTail(_) => "hyperelliptic",
            InputCase::F3F3 => "f3f3",
            InputCase::F1F1 => "f1f1",
            InputCase::F3F1(_) => "f3f1",
        }
    }

    /// The sub-case flags, in the syntax accepted by [`InputCase::parse`].
    pub fn sub_flags(&self) -> Vec<String> {
        let contact = |c: &Contact| match c {
            Contact::Transverse => "transverse",
            Contact::Tangent => "tangent",
        };
        match self {
            InputCase::MaroniGeneral { d_singularities } => d_singularities.iter().map(|n| format!("A{n}")).collect(),
            InputCase::StableChainThirdThird | InputCase::F3F3 | InputCase::F1F1 => vec![],
            InputCase::MaroniSpecial(MaroniSpecialSub::DDisjointFromSigma) => vec!["disjoint".into()],
            InputCase::MaroniSpecial(MaroniSpecialSub::DContainsSigma(c)) => vec!["contains-sigma".into(), contact(c).into()],
            InputCase::HyperellipticTail(HyperellipticSub::Unramified) => vec!["unramified".into()],
            InputCase::HyperellipticTail(HyperellipticSub::Ramified) => vec!["ramified".into()],
            InputCase::HyperellipticTail(HyperellipticSub::FiberComponent(c)) => vec!["fiber-component".into(), contact(c).into()],
            InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent, tau_component }) => {
                let mut v = vec!["disjoint".to_string()];
                if *tau_triple_tangent {
                    v.push("triple-tangent".into());
                }
                if let Some(c) = tau_component {
                    v.push("component".into());
                    v.push(contact(c).into());
                }
                v
            }
            InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent, f_component }) => {
                let mut v = vec!["intersecting".to_string()];
                if *f_tangent {
                    v.push("f-tangent".into());
                }
                if let Some(c) = f_component {
                    v.push("component".into());
                    v.push(contact(c).into());
                }
                v
            }
        }
    }

    /// Parses a case name and its sub-case flags (e.g. `hyperelliptic` with
    /// `["unramified"]`, `f3f1` with `["disjoint", "triple-tangent"]`).
    pub fn parse(name: &str, flags: &[String]) -> Result<InputCase> {
        let has = |f: &str| flags.iter().any(|x| x == f);
        let contact = || if has("tangent") { Contact::Tangent } else { Contact::Transverse };
        let known = |allowed: &[&str]| -> Result<()> {
            match flags.iter().find(|f| !allowed.contains(&f.as_str())) {
                Some(f) => Err(Error::InvalidInput(format!("unknown sub-case flag {f:?} for {name}"))),
                None => Ok(()),
            }
        };
        let case = match name {
            "maroni-general" => {
                let mut d = Vec::new();
                for f in flags {
                    let n = f.trim_start_matches('A').parse::<u32>().map_err(|_| Error::InvalidInput(format!("expected A1..A4, got {f:?}")))?;
                    d.push(n);
                }
                InputCase::MaroniGeneral { d_singularities: d }
            }
            "third-third" => {
                known(&[])?;
                InputCase::StableChainThirdThird
            }
            "maroni-special" => {
                known(&["disjoint", "contains-sigma", "transverse", "tangent"])?;
                if has("contains-sigma") {
                    InputCase::MaroniSpecial(MaroniSpecialSub::DContainsSigma(contact()))
                } else {
                    InputCase::MaroniSpecial(MaroniSpecialSub::DDisjointFromSigma)
                }
            }
            "hyperelliptic" => {
                known(&["unramified", "ramified", "fiber-component", "transverse", "tangent"])?;
                if has("fiber-component") {
                    InputCase::HyperellipticTail(HyperellipticSub::FiberComponent(contact()))
                } else if has("ramified") {
                    InputCase::HyperellipticTail(HyperellipticSub::Ramified)
                } else {
                    InputCase::HyperellipticTail(HyperellipticSub::Unramified)
                }
            }
            "f3f3" => {
                known(&[])?;
                InputCase::F3F3
            }
            "f1f1" => {
                known(&[])?;
                InputCase::F1F1
            }
            "f3f1" => {
                known(&["disjoint", "intersecting", "triple-tangent", "f-tangent", "component", "transverse", "tangent"])?;
                let component = if has("component") { Some(contact()) } else { None };
                if has("intersecting") {
                    InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent: has("f-tangent"), f_component: component })
                } else {
                    InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent: has("triple-tangent"), tau_component: component })
                }
            }
            other => return Err(Error::InvalidInput(format!("unknown case {other:?}"))),
        };
        case.validate()?;
        Ok(case)
    }
}

impl fmt::Display for InputCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flags = self.sub_flags();
        if flags.is_empty() {
            write!(f, "{}", self.name())
        } else {
            write!(f, "{} --sub {}", self.name(), flags.join(","))
        }
    }
}

impl FromStr for InputCase {
    type Err = Error;

    /// `name` or `name:flag,flag`.
    fn from_str(s: &str) -> Result<InputCase> {
        let (name, flags) = s.split_once(':').unwrap_or((s, ""));
        let flags: Vec<String> = flags.split(',').filter(|f| !f.is_empty()).map(|f| f.trim().to_string()).collect();
        InputCase::parse(name.trim(), &flags)
    }
}

fn int(n: i64) -> Rat {
    Rat::int(n)
}

fn class(terms: &[(&str, i64)]) -> DivisorClass {
    DivisorClass::from_terms(&terms.iter().map(|(l, c)| (*l, int(*c))).collect::<Vec<_>>())
}

/// `P¹ × P¹` with rulings `A`, `B` and `C` of bidegree (3,3).
fn maroni_general() -> LogPair {
    let x = CurveConfig::new("X", 2)
        .with_curve("A", int(0), 0, &[Role::Fiber])
        .with_curve("B", int(0), 0, &[Role::Section])
        .with_curve("C", int(18), 4, &[])
        .with_meet("A", "B", int(1))
        .with_meet("A", "C", int(3))
        .with_meet("B", "C", int(3));
    LogPair::new(vec![x], vec![], class(&[("A", -2), ("B", -2)]), class(&[("C", 1)]))
}

fn f2_base() -> CurveConfig {
    CurveConfig::new("X", 2)
        .with_curve("sigma", int(-2), 0, &[Role::Directrix, Role::Section])
        .with_curve("F", int(0), 0, &[Role::Fiber])
        .with_meet("sigma", "F", int(1))
}

fn maroni_special(sub: MaroniSpecialSub) -> LogPair {
    let k = class(&[("sigma", -2), ("F", -4)]);
    match sub {
        MaroniSpecialSub::DDisjointFromSigma => {
            // C ∼ 3σ + 6F.
            let x = f2_base().with_curve("C", int(18), 4, &[]).with_meet("C", "F", int(3));
            LogPair::new(vec![x], vec![], k, class(&[("C", 1)]))
        }
        MaroniSpecialSub::DContainsSigma(_) => {
            // D = σ + R with R ∼ 2σ + 6F of genus 3.
            let x = f2_base().with_curve("R", int(16), 3, &[]).with_meet("R", "sigma", int(2)).with_meet("R", "F", int(2));
            LogPair::new(vec![x], vec![], k, class(&[("sigma", 1), ("R", 1)]))
        }
    }
}

fn hyperelliptic(sub: HyperellipticSub) -> LogPair {
    let base = CurveConfig::new("X", 2)
        .with_curve("sigma", int(-4), 0, &[Role::Directrix, Role::Section])
        .with_curve("F", int(0), 0, &[Role::Fiber])
        .with_meet("sigma", "F", int(1));
    let k = class(&[("sigma", -2), ("F", -6)]);
    match sub {
        HyperellipticSub::Unramified | HyperellipticSub::Ramified => {
            // H ∼ 2σ + 9F of genus 4.
            let x = base.with_curve("H", int(20), 4, &[]).with_meet("H", "sigma", int(1)).with_meet("H", "F", int(2));
            LogPair::new(vec![x], vec![], k, class(&[("sigma", 1), ("H", 1)]))
        }
        HyperellipticSub::FiberComponent(_) => {
            // D = σ + F + G with G ∼ 2σ + 8F of genus 3.
            let x = base.with_curve("G", int(16), 3, &[]).with_meet("G", "F", int(2));
            LogPair::new(vec![x], vec![], k, class(&[("sigma", 1), ("F", 1), ("G", 1)]))
        }
    }
}

/// `F₃` component `Xi` with directrix `sigmai`, double fiber `Fi` and
/// `Hi ∼ 2σ + 6F`.
fn f3_component(i: u32) -> (CurveConfig, DivisorClass, DivisorClass) {
    let (s, f, h) = (format!("sigma{i}"), format!("F{i}"), format!("H{i}"));
    let x = CurveConfig::new(format!("X{i}"), 2)
        .with_curve(&s, int(-3), 0, &[Role::Directrix, Role::Section])
        .with_curve(&f, int(0), 0, &[Role::Fiber])
        .with_curve(&h, int(12), 2, &[])
        .with_meet(&s, &f, int(1))
        .with_meet(&h, &f, int(2));
    (x, class(&[(&s, -2), (&f, -4)]), class(&[(&s, 1), (&h, 1)]))
}

fn f3f3() -> LogPair {
    let (x1, k1, d1) = f3_component(1);
    let (x2, k2, d2) = f3_component(2);
    let g = Gluing::new(CurveRef::new("X1", "F1"), CurveRef::new("X2", "F2"));
    LogPair::new(vec![x1, x2], vec![g], k1.plus(&k2), d1.plus(&d2))
}

fn f1f1() -> LogPair {
    let mut comps = Vec::new();
    let mut k = DivisorClass::new();
    let mut d = DivisorClass::new();
    for i in 1..=2 {
        let (s, f, c) = (format!("sigma{i}"), format!("F{i}"), format!("D{i}"));
        comps.push(
            CurveConfig::new(format!("X{i}"), 2)
                .with_curve(&s, int(-1), 0, &[Role::Directrix, Role::Section])
                .with_curve(&f, int(0), 0, &[Role::Fiber])
                .with_curve(&c, int(9), 1, &[])
                .with_meet(&s, &f, int(1))
                .with_meet(&c, &f, int(3)),
        );
        k = k.plus(&class(&[(&s, -2), (&f, -2)]));
        d = d.plus(&class(&[(&c, 1)]));
    }
    let g = Gluing::new(CurveRef::new("X1", "F1"), CurveRef::new("X2", "F2"));
    LogPair::new(comps, vec![g], k, d)
}

fn f1_base() -> CurveConfig {
    CurveConfig::new("X2", 2)
        .with_curve("sigma2", int(-1), 0, &[Role::Directrix, Role::Section])
        .with_curve("F2", int(0), 0, &[Role::Fiber])
        .with_meet("sigma2", "F2", int(1))
}

fn f3f1(dir: F3F1Directrices) -> LogPair {
    let (x1, k1, d1) = f3_component(1);
    let k2 = class(&[("sigma2", -2), ("F2", -2)]);
    // The double curve is oriented from the F₁ side.
    let g = Gluing::new(CurveRef::new("X2", "F2"), CurveRef::new("X1", "F1"));
    let (x2, d2) = match dir {
        F3F1Directrices::Disjoint { tau_component: None, .. } => {
            // D₂ ∼ 3σ + 3F (a plane cubic) and the line τ ∼ σ + F.
            let x2 = f1_base()
                .with_curve("D2", int(9), 1, &[])
                .with_curve("tau", int(1), 0, &[])
                .with_meet("D2", "F2", int(3))
                .with_meet("tau", "F2", int(1))
                .with_meet("tau", "D2", int(3));
            (x2, class(&[("D2", 1)]))
        }
        F3F1Directrices::Disjoint { tau_component: Some(_), .. } => {
            // D₂ = τ + R with the conic R ∼ 2σ + 2F.
            let x2 = f1_base()
                .with_curve("tau", int(1), 0, &[])
                .with_curve("R", int(4), 0, &[])
                .with_meet("tau", "F2", int(1))
                .with_meet("R", "F2", int(2))
                .with_meet("R", "tau", int(2));
            (x2, class(&[("tau", 1), ("R", 1)]))
        }
        F3F1Directrices::Intersecting { f_component: None, .. } => {
            // D₂ = σ₂ + H with H ∼ 2σ + 3F; Fq the fiber through σ₂ ∩ H.
            let x2 = f1_base()
                .with_curve("H", int(8), 1, &[])
                .with_curve("Fq", int(0), 0, &[Role::Fiber])
                .with_meet("H", "sigma2", int(1))
                .with_meet("H", "F2", int(2))
                .with_meet("Fq", "sigma2", int(1))
                .with_meet("Fq", "H", int(2));
            (x2, class(&[("sigma2", 1), ("H", 1)]))
        }
        F3F1Directrices::Intersecting { f_component: Some(_), .. } => {
            // H = Fq + H′ with H′ ∼ 2σ + 2F.
            let x2 = f1_base()
                .with_curve("Fq", int(0), 0, &[Role::Fiber])
                .with_curve("Hp", int(4), 0, &[])
                .with_meet("Fq", "sigma2", int(1))
                .with_meet("Hp", "Fq", int(2))
                .with_meet("Hp", "F2", int(2));
            (x2, class(&[("sigma2", 1), ("Fq", 1), ("Hp", 1)]))
        }
    };
    LogPair::new(vec![x1, x2], vec![g], k1.plus(&k2), d1.plus(&d2))
}

/// Two coarse `P(O(4/3) ⊕ O(5/3))` components glued along a fiber, each
/// with section `σᵢ² = −1/3` and `Dᵢ ≡ 3σᵢ + 6F̄ᵢ` (`F̄` the fiber over the
/// stacky node, `F̄·σ = 1/3`).
fn third_third() -> LogPair {
    let third = Rat::new(1, 3);
    let mut comps = Vec::new();
    let mut k = DivisorClass::new();
    let mut d = DivisorClass::new();
    for i in 1..=2 {
        let (s, f, c) = (format!("sigma{i}"), format!("Fbar{i}"), format!("D{i}"));
        let id = format!("S{i}");
        let (mu3, a2) = (QuotientSingularity::cyclic(3, 1).expect("valid"), QuotientSingularity::a(2));
        let (p, q) = if i == 1 { (mu3.clone(), a2.clone()) } else { (a2.clone(), mu3.clone()) };
        let on = |sing: &QuotientSingularity| if *sing == a2 { vec![f.as_str(), s.as_str()] } else { vec![f.as_str()] };
        comps.push(
            CurveConfig::new(&id, 2)
                .with_curve(&s, -third.clone(), 0, &[Role::Section])
                .with_curve(&f, int(0), 0, &[Role::Fiber])
                .with_curve(&c, int(9), 2, &[])
                .with_meet(&s, &f, third.clone())
                .with_meet(&c, &s, int(1))
                .with_meet(&c, &f, int(1))
                .with_base_point(&format!("{id}.p"), p.clone(), &on(&p))
                .with_base_point(&format!("{id}.q"), q.clone(), &on(&q))
                .with_orbifold_marker("node", 3),
        );
        k = k.plus(&class(&[(&s, -2), (&f, -4)]));
        d = d.plus(&class(&[(&c, 1)]));
    }
    let mut g = Gluing::new(CurveRef::new("S1", "Fbar1"), CurveRef::new("S2", "Fbar2"));
    g.points.push(GluedPoint { a: vec!["S1.p".into()], b: vec!["S2.p".into()] });
    g.points.push(GluedPoint { a: vec!["S1.q".into()], b: vec!["S2.q".into()] });
    LogPair::new(comps, vec![g], k, d)
}

/// The input pair `(X, D)` of a case.
pub fn input_pair(case: &InputCase) -> Result<LogPair> {
    case.validate()?;
    let pair = match case {
        InputCase::MaroniGeneral { .. } => maroni_general(),
        InputCase::StableChainThirdThird => third_third(),
        InputCase::MaroniSpecial(sub) => maroni_special(*sub),
        InputCase::HyperellipticTail(sub) => hyperelliptic(*sub),
        InputCase::F3F3 => f3f3(),
        InputCase::F1F1 => f1f1(),
        InputCase::F3F1(dir) => f3f1(*dir),
    };
    Ok(pair.with_case_tag(case.name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_pair;

    #[test]
    fn every_input_pair_is_valid() {
        for case in InputCase::all() {
            let pair = input_pair(&case).unwrap();
            assert_eq!(validate_pair(&pair), vec![], "{case}");
        }
    }

    #[test]
    fn flags_round_trip() {
        for case in InputCase::all() {
            let parsed = InputCase::parse(case.name(), &case.sub_flags()).unwrap();
            assert_eq!(parsed, case, "{case}");
        }
    }

    #[test]
    fn inconsistent_sub_case_is_rejected() {
        let bad = InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent: false, tau_component: Some(Contact::Tangent) });
        assert!(bad.validate().is_err());
        assert!(InputCase::parse("maroni-general", &["A5".into()]).is_err());
    }
}
