//! The stable-reduction pipeline: build the Tschirnhausen pair of a case,
//! run its flips, contract the `(K + wD)`-trivial curves, check ampleness,
//! and place the result in the table of stable surfaces and the boundary
//! strata of the moduli space.

use std::collections::BTreeMap;
use std::fmt;

use crate::birational::{render_located, Rewrite, Tracer, TransformLog};
use crate::cases::{input_pair, Contact, F3F1Directrices, HyperellipticSub, InputCase, MaroniSpecialSub};
use crate::cover::{DLocation, SingularityOfD};
use crate::error::{Error, Result};
use crate::flip::{flip, FlipInput, FlipKind};
use crate::lattice::{CurveRef, LocatedSingularity, Location, LogPair};
use crate::rat::{EpsLinear, Rat, Sign};
use crate::singularity::QuotientSingularity;
use crate::toric::{chain_quadrilaterals, Polygon};

/// `(K + (2/3+ε)D)·r` on one extremal ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayValue {
    pub curve: CurveRef,
    pub value: EpsLinear,
}

/// Positivity of `K + (2/3+ε)D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    Ample,
    NefNotAmple(Vec<CurveRef>),
    NotNef(Vec<CurveRef>),
}

/// The extremal rays of every component, read from the tracked curves: on
/// Picard rank 1 a positive curve; on rank 2 the negative curves, completed
/// by a curve of self-intersection 0 when only one negative curve is known.
pub fn extremal_rays(pair: &LogPair) -> Result<Vec<RayValue>> {
    let mut out = Vec::new();
    for comp in &pair.components {
        let form = comp.effective_form()?;
        let s = |l: &String| form.get(l, l).cloned().expect("visible");
        let meet = |a: &String, b: &String| form.get(a, b).cloned().expect("visible");
        let rays: Vec<String> = match comp.picard_rank() {
            0 => continue,
            1 => {
                let l = form.labels.iter().find(|l| s(l).is_positive()).ok_or_else(|| Error::ConeUnknown(comp.component_id.clone()))?;
                vec![l.clone()]
            }
            2 => {
                let negative: Vec<&String> = form.labels.iter().filter(|l| s(l).is_negative()).collect();
                let zero: Vec<&String> = form.labels.iter().filter(|l| s(l).is_zero()).collect();
                match negative.as_slice() {
                    [_, _, ..] => negative.iter().map(|l| (*l).clone()).collect(),
                    [n] => {
                        let z = zero.iter().find(|z| !meet(n, z).is_zero()).ok_or_else(|| Error::ConeUnknown(comp.component_id.clone()))?;
                        vec![(*n).clone(), (*z).clone()]
                    }
                    [] => {
                        let pair_of_zero = zero
                            .iter()
                            .enumerate()
                            .find_map(|(i, a)| zero[i + 1..].iter().find(|b| !meet(a, b).is_zero()).map(|b| vec![(*a).clone(), (*b).clone()]));
                        pair_of_zero.ok_or_else(|| Error::ConeUnknown(comp.component_id.clone()))?
                    }
                }
            }
            _ => return Err(Error::ConeUnknown(comp.component_id.clone())),
        };
        for l in rays {
            out.push(RayValue { curve: CurveRef::new(&comp.component_id, &l), value: pair.log_value(&l)? });
        }
    }
    Ok(out)
}

/// Evaluates `K + (2/3+ε)D` on the extremal rays of every component.
pub fn positivity(pair: &LogPair) -> Result<Positivity> {
    let rays = extremal_rays(pair)?;
    let with = |sign: Sign| -> Vec<CurveRef> { rays.iter().filter(|r| r.value.sign() == sign).map(|r| r.curve.clone()).collect() };
    let negative = with(Sign::Negative);
    if !negative.is_empty() {
        return Ok(Positivity::NotNef(negative));
    }
    let zero = with(Sign::Zero);
    if !zero.is_empty() {
        return Ok(Positivity::NefNotAmple(zero));
    }
    Ok(Positivity::Ample)
}

/// The rewrite contracting one `(K + wD)`-trivial curve: a blow-down for a
/// (−1)-curve in the smooth locus, a chain contraction for a smooth
/// rational curve of integral self-intersection ≤ −2, and otherwise the
/// curve joins the contracted locus it meets.
fn contraction_for(pair: &LogPair, component: &str, label: &str) -> Result<Rewrite> {
    let comp = pair.component(component)?;
    if pair.is_double_curve(label) {
        return Err(Error::UnsupportedContraction(format!("{label} is a double curve")));
    }
    let curve = comp.curve(label).ok_or_else(|| Error::MissingCurve(label.into()))?;
    let model = comp.model_int(label, label);
    let isolated = curve.arith_genus == 0 && !comp.has_hidden_neighbours(label);
    Ok(if isolated && model == Rat::int(-1) {
        Rewrite::BlowDown { component: component.into(), label: label.into() }
    } else if isolated && model.is_integer() && model <= Rat::int(-2) {
        Rewrite::ContractChain { component: component.into(), chain: vec![label.into()] }
    } else {
        Rewrite::Contract { component: component.into(), labels: vec![label.into()] }
    })
}

/// Contracts every `(K + wD)`-trivial curve of negative self-intersection,
/// one at a time, and checks that `K + wD` is ample afterwards. A
/// `(K + wD)`-negative curve means a flip is still missing.
pub fn contract_trivial_logged(pair: &LogPair) -> Result<(LogPair, TransformLog)> {
    let mut tr = Tracer::new(pair.clone());
    loop {
        let p = tr.pair();
        let mut next = None;
        'search: for comp in &p.components {
            let form = comp.effective_form()?;
            for l in &form.labels {
                if !form.get(l, l).expect("visible").is_negative() {
                    continue;
                }
                match p.log_value(l)?.sign() {
                    Sign::Negative => {
                        return Err(Error::UnsupportedContraction(format!("{l} is (K+wD)-negative; a flip is required first")));
                    }
                    Sign::Zero => {
                        next = Some(contraction_for(p, &comp.component_id, l)?);
                        break 'search;
                    }
                    Sign::Positive => {}
                }
            }
        }
        match next {
            Some(rw) => {
                tr.apply("contract_trivial", rw)?;
            }
            None => break,
        }
    }
    match positivity(tr.pair())? {
        Positivity::Ample => Ok(tr.finish()),
        other => Err(Error::UnsupportedContraction(format!("K+wD is not ample after contracting the trivial curves: {other:?}"))),
    }
}

/// [`contract_trivial_logged`] without the log.
pub fn contract_trivial(pair: &LogPair) -> Result<LogPair> {
    Ok(contract_trivial_logged(pair)?.0)
}

/// The eight surfaces of stable log quadrics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceRow {
    Quadric,
    P112,
    SmoothingP912,
    P912,
    ThirdThirdChain,
    TwoPlanes,
    SmoothingP312P311,
    P312P311,
}

impl SurfaceRow {
    pub const ALL: [SurfaceRow; 8] = [
        SurfaceRow::Quadric,
        SurfaceRow::P112,
        SurfaceRow::SmoothingP912,
        SurfaceRow::P912,
        SurfaceRow::ThirdThirdChain,
        SurfaceRow::TwoPlanes,
        SurfaceRow::SmoothingP312P311,
        SurfaceRow::P312P311,
    ];

    /// 1-based row number.
    pub fn number(self) -> usize {
        SurfaceRow::ALL.iter().position(|r| *r == self).expect("listed") + 1
    }

    pub fn surface(self) -> &'static str {
        match self {
            SurfaceRow::Quadric => "P¹×P¹",
            SurfaceRow::P112 => "P(1,1,2)",
            SurfaceRow::SmoothingP912 => "Q-Gorenstein smoothing of the A1 singularity of P(9,1,2)",
            SurfaceRow::P912 => "P(9,1,2)",
            SurfaceRow::ThirdThirdChain => "Coarse space of P(O(4/3,5/3) ⊕ O(5/3,4/3))",
            SurfaceRow::TwoPlanes => "P²∪P²",
            SurfaceRow::SmoothingP312P311 => "Q-Gorenstein smoothing of the A1 singularity of P(3,1,2) ∪ P(3,1,1)",
            SurfaceRow::P312P311 => "P(3,1,2) ∪ P(3,1,1)",
        }
    }

    pub fn component_count(self) -> usize {
        if self.number() <= 4 { 1 } else { 2 }
    }

    /// The non-normal-crossing singularities of the surface, sorted.
    pub fn singularities(self) -> Vec<QuotientSingularity> {
        let ninth = QuotientSingularity::cyclic(9, 2).expect("valid");
        let g = |w: [u32; 3]| QuotientSingularity::glued(3, w).expect("valid");
        let mut v = match self {
            SurfaceRow::Quadric => vec![],
            SurfaceRow::P112 => vec![QuotientSingularity::a(1)],
            SurfaceRow::SmoothingP912 => vec![ninth],
            SurfaceRow::P912 => vec![ninth, QuotientSingularity::a(1)],
            SurfaceRow::ThirdThirdChain => vec![g([1, 2, 1]), g([2, 1, 1])],
            SurfaceRow::TwoPlanes => vec![QuotientSingularity::NormalCrossing],
            SurfaceRow::SmoothingP312P311 => vec![g([2, 1, 1])],
            SurfaceRow::P312P311 => vec![g([2, 1, 1]), QuotientSingularity::a(1)],
        };
        v.sort();
        v
    }

    /// The double curve on each component, as a class tag with its
    /// self-intersection: `kH` on `P(a,b,c)` has `k²/(abc)`, a fiber 0.
    pub fn double_curves(self) -> Vec<(&'static str, Rat)> {
        let h = |k: i64, abc: i64| Rat::new(k * k, abc);
        match self {
            SurfaceRow::ThirdThirdChain => vec![("F", Rat::zero()), ("F", Rat::zero())],
            SurfaceRow::TwoPlanes => vec![("H", h(1, 1)), ("H", h(1, 1))],
            SurfaceRow::SmoothingP312P311 => vec![("deformation of 2H", h(2, 6)), ("deformation of H", h(1, 3))],
            SurfaceRow::P312P311 => vec![("2H", h(2, 6)), ("H", h(1, 3))],
            _ => vec![],
        }
    }

    fn of(components: usize, singularities: &[QuotientSingularity]) -> Option<SurfaceRow> {
        let mut s = singularities.to_vec();
        s.sort();
        SurfaceRow::ALL.into_iter().find(|r| r.component_count() == components && r.singularities() == s)
    }
}

impl fmt::Display for SurfaceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.surface())
    }
}

/// A stratum of the boundary of the moduli space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stratum {
    Interior,
    Z0,
    Z2,
    Z4,
    /// `Z₃,₃`, which coincides with `Z_{1/3,1/3}`.
    Z33,
    Z11,
    Z13,
}

impl Stratum {
    pub fn label(self) -> &'static str {
        match self {
            Stratum::Interior => "interior",
            Stratum::Z0 => "Z0",
            Stratum::Z2 => "Z2",
            Stratum::Z4 => "Z4",
            Stratum::Z33 => "Z3,3",
            Stratum::Z11 => "Z1,1",
            Stratum::Z13 => "Z1,3",
        }
    }

    pub fn codimension(self) -> u32 {
        match self {
            Stratum::Interior => 0,
            Stratum::Z0 | Stratum::Z2 | Stratum::Z4 | Stratum::Z33 => 1,
            Stratum::Z11 => 3,
            Stratum::Z13 => 2,
        }
    }

    /// The divisorial stratum containing a non-divisorial one.
    pub fn contained_in(self) -> Option<Stratum> {
        match self {
            Stratum::Z11 => Some(Stratum::Z2),
            Stratum::Z13 => Some(Stratum::Z4),
            _ => None,
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The double curve of a reducible stable surface on one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCurveClass {
    pub curve: CurveRef,
    pub class_tag: String,
    pub self_int: Rat,
}

/// The stable limit of a case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StablePairRecord {
    pub case: InputCase,
    pub surface_row: SurfaceRow,
    pub singularities: Vec<LocatedSingularity>,
    pub double_curve_classes: Vec<DoubleCurveClass>,
    pub d_singularities: Vec<SingularityOfD>,
    pub stratum: Stratum,
    pub index_condition_ok: bool,
    pub transform_log: TransformLog,
    /// The input pair and the output of each surgery, in order.
    pub stages: Vec<Stage>,
    pub pair: LogPair,
}

impl StablePairRecord {
    /// The singularity types, sorted.
    pub fn singularity_kinds(&self) -> Vec<QuotientSingularity> {
        let mut v: Vec<_> = self.singularities.iter().map(|s| s.singularity.clone()).collect();
        v.sort();
        v
    }
}

impl fmt::Display for StablePairRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case: {}", self.case)?;
        writeln!(f, "surface (row {}): {}", self.surface_row.number(), self.surface_row)?;
        if self.singularities.is_empty() {
            writeln!(f, "singularities: none")?;
        }
        for s in &self.singularities {
            writeln!(f, "singularity: {}", render_located(s))?;
        }
        for d in &self.double_curve_classes {
            writeln!(f, "double curve: {}.{} = {} (self-intersection {})", d.curve.component, d.curve.label, d.class_tag, d.self_int)?;
        }
        if self.d_singularities.is_empty() {
            writeln!(f, "singularities of D: none")?;
        }
        for s in &self.d_singularities {
            writeln!(f, "singularity of D: {s}")?;
        }
        writeln!(f, "stratum: {} (codimension {})", self.stratum, self.stratum.codimension())?;
        writeln!(f, "index condition: {}", if self.index_condition_ok { "ok" } else { "violated" })?;
        write!(f, "transform log:\n{}", self.transform_log)
    }
}

/// The output of one surgery of the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub operation: String,
    pub pair: LogPair,
}

/// Runs one flip on the current pair and records its output.
fn run_flip(tr: &mut Tracer, stages: &mut Vec<Stage>, input: FlipInput) -> Result<()> {
    let (p, log) = flip(&input)?;
    let operation = format!("{} {}", flip_name(input.flip_kind), input.target_curve);
    stages.push(Stage { operation, pair: p.clone() });
    tr.absorb(p, log);
    Ok(())
}

fn flip_name(kind: FlipKind) -> &'static str {
    match kind {
        FlipKind::TypeI => "type1_flip",
        FlipKind::Topple => "topple",
        FlipKind::TypeII => "type2_flip",
    }
}

/// The flips a case needs before its trivial curves are contracted.
fn flip_sequence(case: &InputCase, tr: &mut Tracer, stages: &mut Vec<Stage>) -> Result<()> {
    let current = |tr: &Tracer| tr.pair().clone();
    match case {
        InputCase::HyperellipticTail(sub) => {
            let input = FlipInput::type1(current(tr), "sigma");
            let input = match sub {
                HyperellipticSub::Unramified => input.with_c("H").at_p(&["F"]),
                HyperellipticSub::Ramified => input.with_c("H").at_p(&["F"]).at_q(&["F"]),
                HyperellipticSub::FiberComponent(_) => input.with_c("F"),
            };
            run_flip(tr, stages, input)?;
        }
        InputCase::F3F3 => {
            run_flip(tr, stages, FlipInput::type2(current(tr), "sigma1").with_c("H2"))?;
            run_flip(tr, stages, FlipInput::type2(current(tr), "sigma2").with_c("H1"))?;
        }
        InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent, tau_component }) => {
            let input = FlipInput::type2(current(tr), "sigma1");
            let input = match (tau_component, tau_triple_tangent) {
                (Some(_), _) => input.with_c("tau"),
                (None, false) => input.with_c("D2").at_p(&["tau"]).at_q(&["tau"]),
                (None, true) => input.with_c("D2").at_p(&["tau"]).at_q(&["tau"]).at_r(&["tau"]),
            };
            run_flip(tr, stages, input)?;
        }
        InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent, f_component }) => {
            run_flip(tr, stages, FlipInput::type2(current(tr), "sigma1").with_c("sigma2"))?;
            let input = FlipInput::type1(current(tr), "sigma2");
            let input = match (f_component, f_tangent) {
                (Some(_), _) => input.with_c("Fq"),
                (None, false) => input.with_c("H").at_p(&["Fq"]),
                (None, true) => input.with_c("H").at_p(&["Fq"]).at_q(&["Fq"]),
            };
            run_flip(tr, stages, input)?;
        }
        InputCase::MaroniGeneral { .. } | InputCase::StableChainThirdThird | InputCase::MaroniSpecial(_) | InputCase::F1F1 => {}
    }
    Ok(())
}

/// How the residual part of `D` meets a component of `D` that gets
/// contracted to an `A₁` point.
fn contact_of(case: &InputCase) -> Option<Contact> {
    match case {
        InputCase::MaroniSpecial(MaroniSpecialSub::DContainsSigma(c))
        | InputCase::HyperellipticTail(HyperellipticSub::FiberComponent(c))
        | InputCase::F3F1(F3F1Directrices::Disjoint { tau_component: Some(c), .. })
        | InputCase::F3F1(F3F1Directrices::Intersecting { f_component: Some(c), .. }) => Some(*c),
        _ => None,
    }
}

/// Pullback coefficients of `D` on the contracted curves over each
/// singular point of a component.
fn d_pullback(pair: &LogPair, component: &str) -> Result<BTreeMap<String, Rat>> {
    let comp = pair.component(component)?;
    let mut x: BTreeMap<String, Rat> = comp.hidden_labels().into_iter().map(|h| (h, Rat::zero())).collect();
    for (c, d) in pair.divisor_d.terms() {
        if !comp.is_visible(c) {
            continue;
        }
        for (h, v) in comp.pullback(c)? {
            *x.get_mut(&h).expect("hidden") += d * &v;
        }
    }
    Ok(x)
}

/// Whether `D` is Cartier at every singular point and avoids the glued
/// points and base points: the pullback of `D` to each contracted locus
/// must have integral coefficients (zero over glued points).
pub fn index_condition_ok(pair: &LogPair) -> Result<bool> {
    for comp in &pair.components {
        let x = d_pullback(pair, &comp.component_id)?;
        let glued: Vec<&String> = pair
            .gluings
            .iter()
            .flat_map(|g| g.points.iter().flat_map(move |p| if g.a.component == comp.component_id { p.a.iter() } else if g.b.component == comp.component_id { p.b.iter() } else { [].iter() }))
            .collect();
        for pt in comp.singular_points()? {
            let on_glued = glued.iter().any(|a| **a == pt.id || pt.exceptional.contains(a));
            let meets_d = pt.curves.iter().any(|c| pair.divisor_d.coeff(c).is_positive());
            if pt.exceptional.is_empty() {
                if meets_d {
                    return Ok(false);
                }
                continue;
            }
            for h in &pt.exceptional {
                let v = &x[h];
                if !v.is_integer() || (on_glued && !v.is_zero()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Places the singularities of `D`: the input `A_n` points of a smooth
/// quadric, a node or cusp at each singular point of the surface that `D`
/// passes through, and a node at each point where `D` crosses a double
/// curve.
fn place_d_singularities(case: &InputCase, pair: &LogPair, sings: &[LocatedSingularity]) -> Result<Vec<SingularityOfD>> {
    let mut out = Vec::new();
    if let InputCase::MaroniGeneral { d_singularities } = case {
        for &n in d_singularities {
            out.push(SingularityOfD::new(n, DLocation::SmoothPoint)?);
        }
    }
    for s in sings {
        let Location::Point { component, id, curves } = &s.location else { continue };
        if !curves.iter().any(|c| pair.divisor_d.coeff(c).is_positive()) {
            continue;
        }
        let contact = contact_of(case).ok_or_else(|| Error::InconsistentIncidence(format!("D passes through {id} without recorded contact data")))?;
        let n = match contact {
            Contact::Transverse => 1,
            Contact::Tangent => 2,
        };
        out.push(SingularityOfD::new(n, DLocation::SingularPoint { component: component.clone(), id: id.clone() })?);
    }
    for g in &pair.gluings {
        let comp = pair.component(&g.a.component)?;
        let mut meet = Rat::zero();
        for (c, d) in pair.divisor_d.terms() {
            if comp.is_visible(c) {
                meet += d * &comp.curve_int(c, &g.a.label)?;
            }
        }
        let k = meet.to_i64().filter(|_| meet.is_integer()).ok_or_else(|| Error::InconsistentIncidence(format!("D·{} = {meet} is not integral", g.a.label)))?;
        for _ in 0..k {
            out.push(SingularityOfD::new(1, DLocation::DoubleCurve { a: g.a.label.clone(), b: g.b.label.clone() })?);
        }
    }
    Ok(out)
}

fn double_curve_classes(row: SurfaceRow, pair: &LogPair) -> Result<Vec<DoubleCurveClass>> {
    let mut sides = Vec::new();
    for g in &pair.gluings {
        for side in [&g.a, &g.b] {
            let s = pair.component(&side.component)?.self_int(&side.label)?;
            sides.push((side.clone(), s));
        }
    }
    // Larger self-intersection first, matching the order of the tags.
    sides.sort_by(|a, b| b.1.cmp(&a.1));
    let tags = row.double_curves();
    Ok(sides
        .into_iter()
        .enumerate()
        .map(|(i, (curve, self_int))| DoubleCurveClass { curve, class_tag: tags.get(i).map(|t| t.0.to_string()).unwrap_or_default(), self_int })
        .collect())
}

/// The boundary stratum of a stable limit and its codimension.
pub fn boundary_stratum(rec: &StablePairRecord) -> (Stratum, u32) {
    let s = match rec.surface_row {
        SurfaceRow::Quadric => {
            if rec.d_singularities.is_empty() {
                Stratum::Interior
            } else {
                Stratum::Z0
            }
        }
        SurfaceRow::P112 => Stratum::Z2,
        SurfaceRow::SmoothingP912 | SurfaceRow::P912 => Stratum::Z4,
        SurfaceRow::ThirdThirdChain => Stratum::Z33,
        SurfaceRow::TwoPlanes => Stratum::Z11,
        SurfaceRow::SmoothingP312P311 | SurfaceRow::P312P311 => Stratum::Z13,
    };
    (s, s.codimension())
}

/// Runs the stable reduction of a case.
pub fn stabilize(case: &InputCase) -> Result<StablePairRecord> {
    let input = input_pair(case)?;
    let mut stages = vec![Stage { operation: "input".into(), pair: input.clone() }];
    let mut tr = Tracer::new(input);
    flip_sequence(case, &mut tr, &mut stages)?;
    let (p, log) = contract_trivial_logged(tr.pair())?;
    stages.push(Stage { operation: "contract_trivial".into(), pair: p.clone() });
    tr.absorb(p, log);
    let (pair, transform_log) = tr.finish();
    let singularities = pair.singularities()?;
    let kinds: Vec<_> = singularities.iter().map(|s| s.singularity.clone()).collect();
    let surface_row = SurfaceRow::of(pair.components.len(), &kinds)
        .ok_or_else(|| Error::NotInGenus4List(format!("{} components with singularities {kinds:?}", pair.components.len())))?;
    let d_singularities = place_d_singularities(case, &pair, &singularities)?;
    let double_curve_classes = double_curve_classes(surface_row, &pair)?;
    let index_condition_ok = index_condition_ok(&pair)?;
    let mut rec = StablePairRecord {
        case: case.clone(),
        surface_row,
        singularities,
        double_curve_classes,
        d_singularities,
        stratum: Stratum::Interior,
        index_condition_ok,
        transform_log,
        stages,
        pair,
    };
    rec.stratum = boundary_stratum(&rec).0;
    Ok(rec)
}

/// The row each case lands in according to the case analysis.
pub fn expected_row(case: &InputCase) -> SurfaceRow {
    match case {
        InputCase::MaroniGeneral { .. } => SurfaceRow::Quadric,
        InputCase::MaroniSpecial(_) => SurfaceRow::P112,
        InputCase::HyperellipticTail(HyperellipticSub::Unramified) => SurfaceRow::SmoothingP912,
        InputCase::HyperellipticTail(_) => SurfaceRow::P912,
        InputCase::F3F3 | InputCase::StableChainThirdThird => SurfaceRow::ThirdThirdChain,
        InputCase::F1F1 => SurfaceRow::TwoPlanes,
        InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent: false, .. })
        | InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent: false, .. }) => SurfaceRow::SmoothingP312P311,
        InputCase::F3F1(_) => SurfaceRow::P312P311,
    }
}

/// One regenerated row of the table of stable surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub row: SurfaceRow,
    pub cases: Vec<InputCase>,
    pub singularities: Vec<QuotientSingularity>,
    pub double_curves: Vec<(String, Rat)>,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sing = if self.singularities.is_empty() { "--".to_string() } else { self.singularities.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ") };
        let dc = if self.double_curves.is_empty() {
            "--".to_string()
        } else {
            self.double_curves.iter().map(|(t, s)| format!("{t} ({s})")).collect::<Vec<_>>().join(", ")
        };
        let cases: Vec<String> = self.cases.iter().map(|c| c.to_string()).collect();
        write!(f, "{}. {} | {} | {} | {}", self.row.number(), self.row, sing, dc, cases.join("; "))
    }
}

/// Stabilizes every case and groups the results by surface.
pub fn regenerate_table() -> Result<Vec<TableRow>> {
    let mut rows: BTreeMap<SurfaceRow, TableRow> = BTreeMap::new();
    for case in InputCase::all() {
        let rec = stabilize(&case)?;
        let entry = rows.entry(rec.surface_row).or_insert_with(|| TableRow {
            row: rec.surface_row,
            cases: Vec::new(),
            singularities: rec.singularity_kinds(),
            double_curves: rec.double_curve_classes.iter().map(|d| (d.class_tag.clone(), d.self_int.clone())).collect(),
        });
        entry.cases.push(case);
    }
    Ok(rows.into_values().collect())
}

/// Compares a regenerated table with the expected rows; returns the
/// mismatches (empty when the table is reproduced).
pub fn table_mismatches(table: &[TableRow]) -> Vec<String> {
    let mut out = Vec::new();
    for row in SurfaceRow::ALL {
        let Some(t) = table.iter().find(|t| t.row == row) else {
            out.push(format!("row {} ({row}) is not reached by any case", row.number()));
            continue;
        };
        if t.singularities != row.singularities() {
            out.push(format!("row {}: singularities {:?} ≠ {:?}", row.number(), t.singularities, row.singularities()));
        }
        let expected: Vec<(String, Rat)> = row.double_curves().into_iter().map(|(t, s)| (t.to_string(), s)).collect();
        if t.double_curves != expected {
            out.push(format!("row {}: double curves {:?} ≠ {:?}", row.number(), t.double_curves, expected));
        }
        for c in &t.cases {
            if expected_row(c) != row {
                out.push(format!("case {c} lands in row {} instead of row {}", row.number(), expected_row(c).number()));
            }
        }
    }
    out
}

/// A relabelling-invariant numerical description of a pair: per
/// component, the sorted `(γ², K·γ, D·γ, genus)` of the visible curves
/// and the sorted non-zero intersections between distinct curves.
pub fn numerical_signature(pair: &LogPair) -> Result<Vec<String>> {
    let mut comps = Vec::new();
    for comp in &pair.components {
        let form = comp.effective_form()?;
        let mut curves = Vec::new();
        for l in &form.labels {
            let g = comp.curve(l).expect("visible").arith_genus;
            curves.push(format!("({}, {}, {}, g{g})", form.get(l, l).expect("visible"), pair.k_dot(l)?, pair.d_dot(l)?));
        }
        curves.sort();
        let mut meets = Vec::new();
        for (i, a) in form.labels.iter().enumerate() {
            for b in &form.labels[i + 1..] {
                let v = form.get(a, b).expect("visible");
                if !v.is_zero() {
                    meets.push(v.to_string());
                }
            }
        }
        meets.sort();
        comps.push(format!("[{}] meets [{}]", curves.join(" "), meets.join(" ")));
    }
    comps.sort();
    Ok(comps)
}

/// Whether two stable limits agree as surfaces with divisor: same row,
/// singularities, double curves, numerical data and types of singularities
/// of `D`.
pub fn same_stable_limit(a: &StablePairRecord, b: &StablePairRecord) -> Result<bool> {
    let dc = |r: &StablePairRecord| r.double_curve_classes.iter().map(|d| (d.class_tag.clone(), d.self_int.clone())).collect::<Vec<_>>();
    let dk = |r: &StablePairRecord| {
        let mut v: Vec<(u32, bool)> = r.d_singularities.iter().map(|s| (s.a_n, matches!(s.location, DLocation::DoubleCurve { .. }))).collect();
        v.sort();
        v
    };
    Ok(a.surface_row == b.surface_row
        && a.singularity_kinds() == b.singularity_kinds()
        && dc(a) == dc(b)
        && dk(a) == dk(b)
        && numerical_signature(&a.pair)? == numerical_signature(&b.pair)?)
}

/// Whether the stable limit of a record is the stable pair of the
/// third-third chain: same surface data and the same toric polytope.
pub fn f33_equals_third_third(rec: &StablePairRecord) -> Result<bool> {
    let chain = stabilize(&InputCase::StableChainThirdThird)?;
    let polys_agree = match (toric_polytope(rec), toric_polytope(&chain)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    Ok(polys_agree && same_stable_limit(rec, &chain)?)
}

/// The F₃–F₁ case with the directrices in the other configuration that
/// has the same stable limit.
pub fn f3f1_partner(case: &InputCase) -> Option<InputCase> {
    match case {
        InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent, tau_component }) => {
            Some(InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent: *tau_triple_tangent, f_component: *tau_component }))
        }
        InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent, f_component }) => {
            Some(InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent: *f_tangent, tau_component: *f_component }))
        }
        _ => None,
    }
}

/// The moment polytope of the toric chain row: two quadrilaterals glued
/// along an edge.
pub fn toric_polytope(rec: &StablePairRecord) -> Result<[Polygon; 2]> {
    if rec.surface_row != SurfaceRow::ThirdThirdChain {
        return Err(Error::NotToricChain(rec.surface_row.surface().into()));
    }
    Ok(chain_quadrilaterals())
}

/// Number of singular members of a Lefschetz pencil with `base_points`
/// base points and fibers of genus `genus` on a surface of Euler
/// characteristic `chi_surface`.
pub fn pencil_singular_count(base_points: i64, genus: i64, chi_surface: i64) -> i64 {
    base_points + chi_surface - 2 * (2 - 2 * genus)
}

/// An entry of the test-curve intersection matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Value(Rat),
    /// Not computed.
    Unknown,
    /// Not computed, but known to be non-zero.
    NonzeroUnknown,
}

/// One monomial of a symbolic determinant: a coefficient times a product
/// of unknown entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rat,
    pub unknowns: Vec<((usize, usize), bool)>,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for ((i, j), nonzero) in &self.unknowns {
            write!(f, "·{}({},{})", if *nonzero { "N" } else { "U" }, i + 1, j + 1)?;
        }
        Ok(())
    }
}

/// Intersections of the test curves `C₁, C₂, C₃` with the divisors
/// `Z₀, Z₃,₃, Z₄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestCurveMatrix {
    pub rows: [&'static str; 3],
    pub columns: [&'static str; 3],
    pub entries: [[Entry; 3]; 3],
}

impl TestCurveMatrix {
    /// The determinant expanded over permutations, as a sum of monomials
    /// in the unknown entries (terms through a zero entry dropped).
    pub fn determinant(&self) -> Vec<Monomial> {
        let perms = [([0, 1, 2], 1), ([0, 2, 1], -1), ([1, 0, 2], -1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([2, 1, 0], -1)];
        let mut out: Vec<Monomial> = Vec::new();
        'perm: for (p, sign) in perms {
            let mut m = Monomial { coeff: Rat::int(sign), unknowns: Vec::new() };
            for (i, &j) in p.iter().enumerate() {
                match &self.entries[i][j] {
                    Entry::Value(v) if v.is_zero() => continue 'perm,
                    Entry::Value(v) => m.coeff = &m.coeff * v,
                    Entry::Unknown => m.unknowns.push(((i, j), false)),
                    Entry::NonzeroUnknown => m.unknowns.push(((i, j), true)),
                }
            }
            if let Some(existing) = out.iter_mut().find(|e| e.unknowns == m.unknowns) {
                existing.coeff += &m.coeff;
            } else {
                out.push(m);
            }
        }
        out.retain(|m| !m.coeff.is_zero());
        out
    }

    /// Whether the matrix is invertible for every substitution of the
    /// unknowns (respecting the non-zero constraints): the determinant is a
    /// single monomial in non-zero unknowns with non-zero coefficient.
    pub fn invertible_for_all_substitutions(&self) -> bool {
        match self.determinant().as_slice() {
            [m] => m.unknowns.iter().all(|(_, nonzero)| *nonzero),
            _ => false,
        }
    }
}

/// The test-curve matrix: `C₁` a general pencil on the quadric, `C₂` a
/// curve in `Z₃,₃`, `C₃` a curve in `Z₄` meeting it in a fiber.
pub fn testcurve_matrix() -> TestCurveMatrix {
    let v = |n: i64| Entry::Value(Rat::int(n));
    TestCurveMatrix {
        rows: ["C1", "C2", "C3"],
        columns: ["Z0", "Z3,3", "Z4"],
        entries: [
            [v(pencil_singular_count(18, 4, 4)), v(0), v(0)],
            [Entry::Unknown, Entry::NonzeroUnknown, Entry::Unknown],
            [v(0), v(0), v(-1)],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pencil_counts() {
        assert_eq!(pencil_singular_count(18, 4, 4), 34);
        assert_eq!(pencil_singular_count(0, 0, 4), 0);
        assert_eq!(pencil_singular_count(9, 1, 3), 12);
    }

    #[test]
    fn testcurve_determinant_is_a_single_monomial() {
        let m = testcurve_matrix();
        let det = m.determinant();
        assert_eq!(det.len(), 1);
        assert_eq!(det[0].coeff, Rat::int(-34));
        assert_eq!(det[0].unknowns, vec![((1, 1), true)]);
        assert!(m.invertible_for_all_substitutions());
    }

    #[test]
    fn strata() {
        let codims: Vec<u32> = [Stratum::Z0, Stratum::Z2, Stratum::Z4, Stratum::Z33, Stratum::Z11, Stratum::Z13].iter().map(|s| s.codimension()).collect();
        assert_eq!(codims, vec![1, 1, 1, 1, 3, 2]);
        assert_eq!(Stratum::Z11.contained_in(), Some(Stratum::Z2));
        assert_eq!(Stratum::Z13.contained_in(), Some(Stratum::Z4));
    }

    #[test]
    fn maroni_special_input_is_nef_not_ample_on_sigma() {
        let p = input_pair(&InputCase::MaroniSpecial(MaroniSpecialSub::DDisjointFromSigma)).unwrap();
        assert_eq!(positivity(&p).unwrap(), Positivity::NefNotAmple(vec![CurveRef::new("X", "sigma")]));
    }
}
