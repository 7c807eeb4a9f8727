//! The central-fiber surgeries: Type I flip of a (−4)-curve, the topple of
//! an end component, the Type II flip of a (−3)-curve, and their staged
//! variants (exceptional components inserted first, then flipped away one
//! at a time).
//!
//! Every surgery is a sequence of [`Rewrite`]s recorded in a
//! [`TransformLog`], so its output can be replayed from the input.

use crate::birational::{BlowupRequest, Rewrite, Tracer, TransformLog};
use crate::error::{Error, Result};
use crate::lattice::{CurveConfig, CurveRef, DivisorClass, GluedPoint, Gluing, LogPair, Role};
use crate::linalg::det;
use crate::rat::{Rat, Sign};
use crate::singularity::QuotientSingularity;

/// Which surgery to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipKind {
    TypeI,
    Topple,
    TypeII,
}

/// Incidence data the central fiber alone does not determine: which
/// divisor curve `C` the flip runs along, and which further tracked curves
/// pass through the successive blow-up centres (`p` on the flipping curve,
/// then `q`, `r` on the new exceptional curves along `C`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlipIncidence {
    pub c_curve: Option<String>,
    pub at_p: Vec<String>,
    pub at_q: Vec<String>,
    pub at_r: Vec<String>,
}

/// Input of a surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipInput {
    pub pair: LogPair,
    pub target_curve: String,
    pub flip_kind: FlipKind,
    /// The `n` of the `A_n` point of the total space (staged variants).
    pub staging: u32,
    pub incidence: FlipIncidence,
}

impl FlipInput {
    pub fn new(pair: LogPair, target: &str, kind: FlipKind) -> FlipInput {
        FlipInput { pair, target_curve: target.into(), flip_kind: kind, staging: 0, incidence: FlipIncidence::default() }
    }

    pub fn type1(pair: LogPair, target: &str) -> FlipInput {
        FlipInput::new(pair, target, FlipKind::TypeI)
    }

    pub fn topple(pair: LogPair, target: &str) -> FlipInput {
        FlipInput::new(pair, target, FlipKind::Topple)
    }

    pub fn type2(pair: LogPair, target: &str) -> FlipInput {
        FlipInput::new(pair, target, FlipKind::TypeII)
    }

    pub fn with_c(mut self, c: &str) -> FlipInput {
        self.incidence.c_curve = Some(c.into());
        self
    }

    pub fn at_p(mut self, labels: &[&str]) -> FlipInput {
        self.incidence.at_p = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn at_q(mut self, labels: &[&str]) -> FlipInput {
        self.incidence.at_q = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn at_r(mut self, labels: &[&str]) -> FlipInput {
        self.incidence.at_r = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_staging(mut self, n: u32) -> FlipInput {
        self.staging = n;
        self
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::FlipPreconditionFailed(msg.into())
}

/// Labels of the exceptional curves created along the flipping curve.
fn exceptional(role_curve: &str, i: u32) -> String {
    format!("{role_curve}_E{i}")
}

fn count_of(pair: &LogPair, s: &QuotientSingularity) -> Result<usize> {
    Ok(pair.singularities()?.iter().filter(|l| &l.singularity == s).count())
}

fn post(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InconsistentIncidence(format!("surgery post-condition failed: {what}")))
    }
}

/// The divisor curve `C` on `component` meeting `curve`: the given one, or
/// the unique component of `D` meeting it.
fn residual_curve(pair: &LogPair, component: &str, curve: &str, given: &Option<String>, exact_one: bool) -> Result<String> {
    let comp = pair.component(component)?;
    let c = match given {
        Some(c) => {
            if !comp.is_visible(c) {
                return Err(fail(format!("residual curve {c} is not a curve of {component}")));
            }
            c.clone()
        }
        None => {
            let candidates: Vec<String> = comp
                .visible_labels()
                .into_iter()
                .filter(|l| l != curve && pair.divisor_d.coeff(l).is_positive())
                .filter(|l| comp.curve_int(l, curve).map(|v| v.is_positive()).unwrap_or(false))
                .collect();
            match candidates.as_slice() {
                [c] => c.clone(),
                [] => return Err(fail(format!("no component of D meets {curve}"))),
                _ => return Err(fail(format!("several components of D meet {curve}: {candidates:?}; name one"))),
            }
        }
    };
    if !pair.divisor_d.coeff(&c).is_positive() {
        return Err(fail(format!("residual curve {c} is not a component of D")));
    }
    let meet = comp.curve_int(&c, curve)?;
    if exact_one && meet != Rat::one() {
        return Err(fail(format!("{c} must meet {curve} transversely in one point ({c}·{curve} = {meet})")));
    }
    if !meet.is_positive() {
        return Err(fail(format!("{c} does not meet {curve}")));
    }
    Ok(c)
}

fn check_rational_visible(pair: &LogPair, component: &str, label: &str) -> Result<()> {
    check_rational(pair, component, label)?;
    if pair.component(component)?.has_hidden_neighbours(label) {
        return Err(fail(format!("{label} passes through a singular point")));
    }
    Ok(())
}

fn check_rational(pair: &LogPair, component: &str, label: &str) -> Result<()> {
    let comp = pair.component(component)?;
    let curve = comp.curve(label).filter(|c| !c.contracted).ok_or_else(|| fail(format!("{label} is not a curve of {component}")))?;
    if curve.arith_genus != 0 {
        return Err(fail(format!("{label} must be rational")));
    }
    Ok(())
}

fn blowup(pair: &LogPair, component: &str, label: &str, through: &[&str], extra: &[String]) -> BlowupRequest {
    let mut req = BlowupRequest::new(component, label);
    for c in through.iter().copied().chain(extra.iter().map(String::as_str)) {
        req = req.through(c, 1);
    }
    req.with_divisor_mult_from(pair)
}

/// The Type I transform of `component`: blow up `p = σ ∩ C`, blow up the
/// point of the new exceptional curve on `C`, contract the (−5, −2) chain.
fn type1_steps(tr: &mut Tracer, op: &str, component: &str, sigma: &str, c: &str, inc: &FlipIncidence) -> Result<()> {
    let c_before = tr.pair().component(component)?.self_int(c)?;
    let ninth = QuotientSingularity::cyclic(9, 2)?;
    let before = count_of(tr.pair(), &ninth)?;
    let (e1, e2) = (exceptional(sigma, 1), exceptional(sigma, 2));
    let req = blowup(tr.pair(), component, &e1, &[sigma, c], &inc.at_p);
    tr.apply(op, Rewrite::BlowUp(req))?;
    let req = blowup(tr.pair(), component, &e2, &[&e1, c], &inc.at_q);
    tr.apply(op, Rewrite::BlowUp(req))?;
    let cc = tr.apply(op, Rewrite::ContractChain { component: component.into(), chain: vec![sigma.into(), e1] })?.expect("chain record");
    post(cc.result_singularity == ninth, "chain contracts to 1/9(1,2)")?;
    let c_after = tr.pair().component(component)?.self_int(c)?;
    post(c_after == c_before - Rat::int(2), "C′² = C² − 2")?;
    post(count_of(tr.pair(), &ninth)? == before + 1, "exactly one new 1/9(1,2) point")
}

struct TypeIPlan {
    component: String,
    c: String,
}

fn check_type1(input: &FlipInput) -> Result<TypeIPlan> {
    let pair = &input.pair;
    let sigma = &input.target_curve;
    let component = pair.component_of(sigma).map_err(|_| fail(format!("no curve {sigma}")))?.to_string();
    check_rational_visible(pair, &component, sigma)?;
    let s2 = pair.component(&component)?.self_int(sigma)?;
    if s2 != Rat::int(-4) {
        return Err(fail(format!("self-intersection −4 required ({sigma}² = {s2})")));
    }
    if !pair.divisor_d.coeff(sigma).is_positive() {
        return Err(fail(format!("{sigma} must be a component of D")));
    }
    let c = residual_curve(pair, &component, sigma, &input.incidence.c_curve, true)?;
    Ok(TypeIPlan { component, c })
}

/// Type I flip: replaces the (−4)-curve `σ ⊂ D` by a `1/9(1,2)` point;
/// `D′ = D − σ` and `C′² = C² − 2`.
pub fn type1_flip(input: &FlipInput) -> Result<(LogPair, TransformLog)> {
    let plan = check_type1(input)?;
    let mut tr = Tracer::new(input.pair.clone());
    type1_steps(&mut tr, "type1_flip", &plan.component, &input.target_curve, &plan.c, &input.incidence)?;
    Ok(tr.finish())
}

struct TopplePlan {
    t: String,
    s: String,
    b_t: String,
    b_s: String,
    c: String,
}

fn check_topple(pair: &LogPair, sigma: &str, inc: &FlipIncidence) -> Result<TopplePlan> {
    let t = pair.component_of(sigma).map_err(|_| fail(format!("clause (4): no curve {sigma}")))?.to_string();
    let tc = pair.component(&t)?;
    let doubles: Vec<String> =
        pair.double_curves_on(&t).into_iter().filter(|b| tc.curve_int(b, sigma).map(|v| !v.is_zero()).unwrap_or(false)).collect();
    let [b_t] = doubles.as_slice() else {
        return Err(fail(format!("clause (1): {sigma} must meet exactly one double curve of {t}")));
    };
    let g = &pair.gluings[pair.gluing_of(b_t).expect("double curve")];
    let other = g.partner(b_t).expect("involves");
    let (s, b_s) = (other.component.clone(), other.label.clone());
    if s == t {
        return Err(fail("clause (1): S and T must be distinct"));
    }
    let sc = pair.component(&s)?;
    let bs2 = sc.self_int(&b_s)?;
    if bs2 != Rat::int(-4) {
        return Err(fail(format!("clause (2): B² = −4 on S required ({b_s}² = {bs2})")));
    }
    let bt2 = tc.self_int(b_t)?;
    if bt2 != Rat::int(4) {
        return Err(fail(format!("clause (3): B² = 4 on T required ({b_t}² = {bt2})")));
    }
    check_rational_visible(pair, &t, sigma).map_err(|e| fail(format!("clause (4): {e}")))?;
    let s2 = tc.self_int(sigma)?;
    if s2 != Rat::int(-2) || !pair.divisor_d.coeff(sigma).is_positive() {
        return Err(fail(format!("clause (4): σ ⊂ T ∩ D with σ² = −2 required ({sigma}² = {s2})")));
    }
    if tc.curve_int(sigma, b_t)? != Rat::one() {
        return Err(fail(format!("clause (5): {sigma} must meet {b_t} transversely in one point")));
    }
    check_rational_visible(pair, &s, &b_s).map_err(|e| fail(format!("clause (5): {e}")))?;
    let c = residual_curve(pair, &s, &b_s, &inc.c_curve, true).map_err(|e| fail(format!("clause (5): {e}")))?;
    let gram = vec![vec![bt2.clone(), Rat::one()], vec![Rat::one(), s2]];
    if tc.picard_rank() != 2 || det(&gram).is_zero() {
        return Err(fail(format!("clause (6): NS({t}) must be spanned by {b_t} and {sigma}")));
    }
    if pair.double_curves_on(&t).len() != 1 {
        return Err(fail(format!("clause (6): {t} meets another component")));
    }
    Ok(TopplePlan { t, s, b_t: b_t.clone(), b_s, c })
}

fn topple_steps(tr: &mut Tracer, op: &str, sigma: &str, inc: &FlipIncidence) -> Result<()> {
    let plan = check_topple(tr.pair(), sigma, inc)?;
    let rho = tr.pair().component(&plan.s)?.picard_rank();
    type1_steps(tr, op, &plan.s, &plan.b_s, &plan.c, inc)?;
    tr.apply(op, Rewrite::DeleteComponent { component: plan.t.clone() })?;
    let _ = plan.b_t;
    post(tr.pair().component(&plan.s)?.picard_rank() == rho, "ρ(S′) = ρ(S)")
}

/// Topple: contracts the end component `T` onto its neighbour `S`, which
/// undergoes the Type I transform with the double curve `B` in the role of
/// the flipping curve.
pub fn topple(input: &FlipInput) -> Result<(LogPair, TransformLog)> {
    let mut tr = Tracer::new(input.pair.clone());
    topple_steps(&mut tr, "topple", &input.target_curve, &input.incidence)?;
    Ok(tr.finish())
}

struct TypeIIPlan {
    t: String,
    s: String,
    b_t: String,
    b_s: String,
    c: String,
    gluing: usize,
}

fn check_type2(pair: &LogPair, sigma: &str, inc: &FlipIncidence) -> Result<TypeIIPlan> {
    let t = pair.component_of(sigma).map_err(|_| fail(format!("no curve {sigma}")))?.to_string();
    check_rational_visible(pair, &t, sigma)?;
    let tc = pair.component(&t)?;
    let s2 = tc.self_int(sigma)?;
    if s2 != Rat::int(-3) {
        return Err(fail(format!("self-intersection −3 required ({sigma}² = {s2})")));
    }
    let doubles: Vec<String> =
        pair.double_curves_on(&t).into_iter().filter(|b| tc.curve_int(b, sigma).map(|v| !v.is_zero()).unwrap_or(false)).collect();
    let [b_t] = doubles.as_slice() else {
        return Err(fail(format!("{sigma} must meet exactly one double curve of {t}")));
    };
    if tc.curve_int(sigma, b_t)? != Rat::one() {
        return Err(fail(format!("{sigma} must meet {b_t} transversely in one point")));
    }
    let gluing = pair.gluing_of(b_t).expect("double curve");
    let other = pair.gluings[gluing].partner(b_t).expect("involves");
    let (s, b_s) = (other.component.clone(), other.label.clone());
    if s == t {
        return Err(fail("the flipping curve's double curve must join two components"));
    }
    // B may pass through earlier singular points of S; the blow-ups happen
    // at B ∩ C, away from them.
    check_rational(pair, &s, &b_s)?;
    let c = residual_curve(pair, &s, &b_s, &inc.c_curve, false)?;
    Ok(TypeIIPlan { t, s, b_t: b_t.clone(), b_s, c, gluing })
}

fn type2_steps(tr: &mut Tracer, op: &str, sigma: &str, inc: &FlipIncidence) -> Result<()> {
    let plan = check_type2(tr.pair(), sigma, inc)?;
    let p0 = tr.pair().clone();
    let (sc0, tc0) = (p0.component(&plan.s)?, p0.component(&plan.t)?);
    let (c2, bs2, bt2) = (sc0.self_int(&plan.c)?, sc0.self_int(&plan.b_s)?, tc0.self_int(&plan.b_t)?);
    let (rho_s, rho_t) = (sc0.picard_rank(), tc0.picard_rank());

    let (e1, e2, e3) = (exceptional(&plan.b_s, 1), exceptional(&plan.b_s, 2), exceptional(&plan.b_s, 3));
    let req = blowup(tr.pair(), &plan.s, &e1, &[&plan.b_s, &plan.c], &inc.at_p);
    tr.apply(op, Rewrite::BlowUp(req))?;
    let req = blowup(tr.pair(), &plan.s, &e2, &[&e1, &plan.c], &inc.at_q);
    tr.apply(op, Rewrite::BlowUp(req))?;
    let req = blowup(tr.pair(), &plan.s, &e3, &[&e2, &plan.c], &inc.at_r);
    tr.apply(op, Rewrite::BlowUp(req))?;
    let a2 = tr.apply(op, Rewrite::ContractChain { component: plan.s.clone(), chain: vec![e1.clone(), e2] })?.expect("chain record");
    post(a2.result_singularity == QuotientSingularity::a(2), "(E1, E2) contracts to A2")?;
    let mu3 = tr.apply(op, Rewrite::ContractChain { component: plan.t.clone(), chain: vec![sigma.into()] })?.expect("chain record");
    post(mu3.result_singularity == QuotientSingularity::cyclic(3, 1)?, "σ contracts to 1/3(1,1)")?;
    let g = &tr.pair().gluings[plan.gluing];
    let point = if g.a.component == plan.s { GluedPoint { a: vec![e1], b: vec![sigma.into()] } } else { GluedPoint { a: vec![sigma.into()], b: vec![e1] } };
    tr.apply(op, Rewrite::AddGluedPoint { gluing: plan.gluing, point })?;

    let p = tr.pair();
    let (sc, tc) = (p.component(&plan.s)?, p.component(&plan.t)?);
    let third = Rat::new(1, 3);
    post(sc.self_int(&plan.c)? == c2 - Rat::int(3), "C′² = C² − 3")?;
    post(sc.self_int(&e3)? == -third.clone(), "ν² = −1/3")?;
    post(sc.curve_int(&plan.b_s, &e3)? == third, "B′·ν = 1/3")?;
    post(sc.self_int(&plan.b_s)? == bs2 - &third, "(B′|S′)² = (B|S)² − 1/3")?;
    post(tc.self_int(&plan.b_t)? == bt2 + &third, "(B′|T′)² = (B|T)² + 1/3")?;
    post(sc.picard_rank() == rho_s + 1 && tc.picard_rank() + 1 == rho_t, "ρ shifts by (+1, −1)")
}

/// Type II flip of the (−3)-curve `σ` on `T` meeting the double curve `B`:
/// three blow-ups along `C` on `S` and contraction of the `A₂` chain there,
/// contraction of `σ` to `1/3(1,1)` on `T`, and the two points glued into
/// one `(xy=0) ⊂ 1/3(…)` point of the double curve. `ν` is the last
/// exceptional curve `{B_S}_E3`.
pub fn type2_flip(input: &FlipInput) -> Result<(LogPair, TransformLog)> {
    let mut tr = Tracer::new(input.pair.clone());
    type2_steps(&mut tr, "type2_flip", &input.target_curve, &input.incidence)?;
    Ok(tr.finish())
}

/// Inserted exceptional component of a staged Type I flip: `F₄` (with
/// `D ∩ E = σ^E ∪ fiber`) before the last stage and `F₂` last. Returns the
/// rewrite and the label of the curve the next stage attaches to.
fn stage_component(pair: &LogPair, id: &str, prev_comp: &str, prev_sigma: &str, last: bool) -> Result<(Rewrite, String)> {
    let (b, s, f) = (format!("{id}.B"), format!("{id}.sigma"), format!("{id}.F"));
    let mut k = DivisorClass::from_terms(&[(prev_sigma, Rat::one())]);
    let mut d = DivisorClass::from_terms(&[(prev_sigma, Rat::int(-1))]);
    let config = if last {
        // F₂ with B ∼ σ + 3F; K_E + B = −σ − F = −(2/3)σ − (1/3)B.
        k.add_term(&s, Rat::new(-2, 3));
        k.add_term(&b, Rat::new(-1, 3));
        d.add_term(&s, Rat::one());
        CurveConfig::new(id, 2)
            .with_curve(&b, Rat::int(4), 0, &[Role::Section])
            .with_curve(&s, Rat::int(-2), 0, &[Role::Directrix])
            .with_meet(&b, &s, Rat::one())
    } else {
        // F₄ with B ∼ σ + 4F; K_E + B = −2σ − 6F + B.
        k.add_term(&s, Rat::int(-2));
        k.add_term(&f, Rat::int(-6));
        k.add_term(&b, Rat::one());
        d.add_term(&s, Rat::one());
        d.add_term(&f, Rat::one());
        CurveConfig::new(id, 2)
            .with_curve(&b, Rat::int(4), 0, &[Role::Section])
            .with_curve(&s, Rat::int(-4), 0, &[Role::Directrix])
            .with_curve(&f, Rat::zero(), 0, &[Role::Fiber])
            .with_meet(&b, &f, Rat::one())
            .with_meet(&s, &f, Rat::one())
    };
    for l in [&b, &s, &f] {
        pair.ensure_fresh(l)?;
    }
    let gluing = Gluing::new(CurveRef::new(prev_comp, prev_sigma), CurveRef::new(id, &b));
    Ok((Rewrite::InsertComponent { config, gluings: vec![gluing], k_delta: k, d_delta: d }, s))
}

/// Staged Type I flip: inserts `n` exceptional `F₄` components and one
/// `F₂` along `σ`, then topples them away from the right. The output equals
/// [`type1_flip`] for every `n`.
pub fn type1_staged(input: &FlipInput) -> Result<(LogPair, TransformLog)> {
    let plan = check_type1(input)?;
    let n = input.staging;
    let op = "type1_staged";
    let mut tr = Tracer::new(input.pair.clone());
    let mut prev = (plan.component.clone(), input.target_curve.clone());
    let mut stages = Vec::new();
    for i in 1..=n + 1 {
        let id = format!("{}^E{i}", input.target_curve);
        let (rw, sigma) = stage_component(tr.pair(), &id, &prev.0, &prev.1, i == n + 1)?;
        tr.apply(op, rw)?;
        stages.push(id.clone());
        prev = (id, sigma);
    }
    // Topples from the right: the F₂'s directrix, then each F₄'s fiber.
    for (i, id) in stages.iter().enumerate().rev() {
        let target = if i == stages.len() - 1 { format!("{id}.sigma") } else { format!("{id}.F") };
        let inc = if i == 0 { FlipIncidence { c_curve: Some(plan.c.clone()), ..input.incidence.clone() } } else { FlipIncidence::default() };
        topple_steps(&mut tr, op, &target, &inc)?;
    }
    Ok(tr.finish())
}

/// Accordion Type II flip: resolves the `A_n` point of the total space by
/// inserting `n` ruled components `Eᵢ ≅ B × P¹` between `S` and `T`, flips
/// `n + 1` times from the right, and contracts the (K + wD)-trivial
/// intermediate components back onto `B`. The output equals
/// [`type2_flip`].
pub fn type2_accordion(input: &FlipInput) -> Result<(LogPair, TransformLog)> {
    let n = input.staging;
    if n == 0 {
        return type2_flip(input);
    }
    let op = "type2_accordion";
    let sigma = input.target_curve.clone();
    let plan = check_type2(&input.pair, &sigma, &input.incidence)?;
    let original = input.pair.gluings[plan.gluing].clone();
    let m = input.pair.d_dot(&plan.b_s)?;
    let mut tr = Tracer::new(input.pair.clone());
    tr.apply(op, Rewrite::Unglue { index: plan.gluing })?;

    let ids: Vec<String> = (1..=n).map(|i| format!("{sigma}^A{i}")).collect();
    let mut left = CurveRef::new(&plan.s, &plan.b_s);
    for id in &ids {
        let (bl, br, di, r) = (format!("{id}.Bl"), format!("{id}.Br"), format!("{id}.D"), format!("{id}.R"));
        // B × P¹: Bl, Br are the two copies of B, D the ruling through the
        // flipping point and R the remaining (m − 1) rulings of D.
        let mut config = CurveConfig::new(id, 2)
            .with_curve(&bl, Rat::zero(), 0, &[Role::Section])
            .with_curve(&br, Rat::zero(), 0, &[Role::Section])
            .with_curve(&di, Rat::zero(), 0, &[Role::Fiber])
            .with_meet(&bl, &di, Rat::one())
            .with_meet(&br, &di, Rat::one());
        let mut d = DivisorClass::curve(&di);
        if m > Rat::one() {
            let rest = m.clone() - Rat::one();
            config = config.with_curve(&r, Rat::zero(), 0, &[Role::Fiber]).with_meet(&bl, &r, rest.clone()).with_meet(&br, &r, rest);
            d.add_term(&r, Rat::one());
        }
        let k = DivisorClass::from_terms(&[(&di, Rat::int(-2))]);
        let gluing = Gluing::new(left.clone(), CurveRef::new(id, &bl));
        tr.apply(op, Rewrite::InsertComponent { config, gluings: vec![gluing], k_delta: k, d_delta: d })?;
        let v = tr.pair().log_value(&di)?;
        if v.sign() != Sign::Zero {
            return Err(Error::InconsistentIncidence(format!("ruling {di} is not (K+wD)-trivial ({v})")));
        }
        left = CurveRef::new(id, &br);
    }
    let index = tr.pair().gluings.len();
    tr.apply(op, Rewrite::Glue { index, gluing: Gluing::new(left, CurveRef::new(&plan.t, &plan.b_t)) })?;

    // Flips from the right: σ on T, then the new (−3)-ruling of each Eᵢ.
    for j in (0..=n as usize).rev() {
        let target = if j == n as usize { sigma.clone() } else { format!("{}.D", ids[j]) };
        let inc = if j == 0 {
            input.incidence.clone()
        } else {
            FlipIncidence { c_curve: Some(format!("{}.D", ids[j - 1])), ..FlipIncidence::default() }
        };
        type2_steps(&mut tr, op, &target, &inc)?;
    }
    for id in &ids {
        tr.apply(op, Rewrite::DeleteComponent { component: id.clone() })?;
    }
    tr.apply(op, Rewrite::Glue { index: plan.gluing, gluing: Gluing { points: Vec::new(), ..original.clone() } })?;
    for point in &original.points {
        tr.apply(op, Rewrite::AddGluedPoint { gluing: plan.gluing, point: point.clone() })?;
    }
    let e1 = exceptional(&plan.b_s, 1);
    let point = if original.a.component == plan.s { GluedPoint { a: vec![e1], b: vec![sigma] } } else { GluedPoint { a: vec![sigma], b: vec![e1] } };
    tr.apply(op, Rewrite::AddGluedPoint { gluing: plan.gluing, point })?;
    Ok(tr.finish())
}

/// Runs the surgery named by `input.flip_kind`; a positive staging selects
/// the staged Type I flip or the Type II accordion.
pub fn flip(input: &FlipInput) -> Result<(LogPair, TransformLog)> {
    match (input.flip_kind, input.staging) {
        (FlipKind::TypeI, 0) => type1_flip(input),
        (FlipKind::TypeI, _) => type1_staged(input),
        (FlipKind::Topple, _) => topple(input),
        (FlipKind::TypeII, 0) => type2_flip(input),
        (FlipKind::TypeII, _) => type2_accordion(input),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::{input_pair, HyperellipticSub, InputCase};
    use crate::rat::EpsLinear;

    fn hyperelliptic() -> FlipInput {
        let pair = input_pair(&InputCase::HyperellipticTail(HyperellipticSub::Unramified)).unwrap();
        FlipInput::type1(pair, "sigma").with_c("H").at_p(&["F"])
    }

    fn f3f3() -> FlipInput {
        FlipInput::type2(input_pair(&InputCase::F3F3).unwrap(), "sigma1").with_c("H2")
    }

    #[test]
    fn type1_numbers() {
        let (p, _) = type1_flip(&hyperelliptic()).unwrap();
        let x = p.component("X").unwrap();
        assert_eq!(x.self_int("sigma_E2").unwrap(), Rat::new(-4, 9));
        assert_eq!(x.self_int("F").unwrap(), Rat::new(-4, 9));
        assert_eq!(x.curve_int("sigma_E2", "F").unwrap(), Rat::new(5, 9));
        assert_eq!(p.log_value("F").unwrap(), EpsLinear::eps(Rat::one()));
        assert!(!p.divisor_d.coeff("sigma").is_positive());
    }

    #[test]
    fn type1_lowers_c_by_two() {
        let input = hyperelliptic();
        let before = input.pair.component("X").unwrap().self_int("H").unwrap();
        let (p, _) = type1_flip(&input).unwrap();
        assert_eq!(p.component("X").unwrap().self_int("H").unwrap(), before - Rat::int(2));
    }

    #[test]
    fn type1_requires_minus_four() {
        let pair = input_pair(&InputCase::F3F3).unwrap();
        let e = type1_flip(&FlipInput::type1(pair, "sigma1")).unwrap_err();
        assert!(e.to_string().contains("self-intersection −4 required"), "{e}");
    }

    #[test]
    fn type2_requires_minus_three() {
        let e = type2_flip(&FlipInput::type2(hyperelliptic().pair, "sigma").with_c("H")).unwrap_err();
        assert!(matches!(e, Error::FlipPreconditionFailed(_)), "{e}");
    }

    #[test]
    fn unknown_curve_is_rejected() {
        let e = type1_flip(&FlipInput::type1(hyperelliptic().pair, "nope")).unwrap_err();
        assert!(matches!(e, Error::FlipPreconditionFailed(_)), "{e}");
    }

    #[test]
    fn residual_curve_must_be_in_d() {
        let e = type1_flip(&hyperelliptic().with_c("F")).unwrap_err();
        assert!(e.to_string().contains("F"), "{e}");
    }

    #[test]
    fn type2_shifts_picard_ranks() {
        let input = f3f3();
        let (p, _) = type2_flip(&input).unwrap();
        let rho = |pair: &LogPair, c: &str| pair.component(c).unwrap().picard_rank();
        assert_eq!(rho(&p, "X2"), rho(&input.pair, "X2") + 1);
        assert_eq!(rho(&p, "X1") + 1, rho(&input.pair, "X1"));
        assert_eq!(p.component("X2").unwrap().self_int("F2_E3").unwrap(), Rat::new(-1, 3));
    }

    #[test]
    fn staged_and_accordion_agree_with_direct() {
        let (direct, _) = type1_flip(&hyperelliptic()).unwrap();
        for n in 0..=2 {
            assert_eq!(type1_staged(&hyperelliptic().with_staging(n)).unwrap().0, direct, "n={n}");
        }
        let (direct, _) = type2_flip(&f3f3()).unwrap();
        for n in 0..=2 {
            assert_eq!(type2_accordion(&f3f3().with_staging(n)).unwrap().0, direct, "n={n}");
        }
    }

    #[test]
    fn logs_replay_to_the_result() {
        for input in [hyperelliptic(), hyperelliptic().with_staging(2), f3f3()] {
            let (out, log) = flip(&input).unwrap();
            assert!(!log.is_empty());
            assert_eq!(log.replay(&input.pair).unwrap(), out);
        }
    }

    #[test]
    fn topple_lowers_c_by_two_and_keeps_rank() {
        let input = hyperelliptic();
        let (_, log) = type1_staged(&input).unwrap();
        let first = TransformLog { steps: log.steps[..1].to_vec() };
        let before = first.replay(&input.pair).unwrap();
        let (after, _) = topple(&FlipInput::topple(before.clone(), "sigma^E1.sigma").with_c("H").at_p(&["F"])).unwrap();
        let (x0, x1) = (before.component("X").unwrap(), after.component("X").unwrap());
        assert_eq!(x1.self_int("H").unwrap(), x0.self_int("H").unwrap() - Rat::int(2));
        assert_eq!(x1.picard_rank(), x0.picard_rank());
    }
}
