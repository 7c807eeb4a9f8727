//! Blow-ups, blow-downs and contractions on the model of a component, the
//! [`Rewrite`] vocabulary every higher-level surgery is written in, and the
//! [`TransformLog`] that records and replays those rewrites.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Curve, CurveConfig, DivisorClass, GluedPoint, Gluing, LocatedSingularity, Location, LogPair, Role};
use crate::linalg::{is_negative_definite, Matrix};
use crate::rat::Rat;
use crate::singularity::{hj_chain_to_singularity, QuotientSingularity};

/// Blow-up of a (smooth) point of a component.
///
/// `incidence` lists the tracked curves through the point with their local
/// multiplicities; tangencies are expressed as further requests centred on
/// the new exceptional curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupRequest {
    pub component_id: String,
    pub incidence: BTreeMap<String, u32>,
    /// Multiplicity of `D` at the point.
    pub divisor_mult: u32,
    pub new_label: String,
}

impl BlowupRequest {
    pub fn new(component_id: &str, new_label: &str) -> BlowupRequest {
        BlowupRequest { component_id: component_id.into(), incidence: BTreeMap::new(), divisor_mult: 0, new_label: new_label.into() }
    }

    /// Adds a curve through the centre with the given multiplicity.
    pub fn through(mut self, label: &str, mult: u32) -> BlowupRequest {
        self.incidence.insert(label.into(), mult);
        self
    }

    pub fn divisor_mult(mut self, mult: u32) -> BlowupRequest {
        self.divisor_mult = mult;
        self
    }

    /// Sets `divisor_mult` to the multiplicity of `D` at the centre as seen
    /// from the listed curves, `Σ d_c m_c`.
    pub fn with_divisor_mult_from(mut self, pair: &LogPair) -> BlowupRequest {
        let m: Rat = self.incidence.iter().map(|(c, m)| pair.divisor_d.coeff(c) * Rat::int(i64::from(*m))).sum();
        self.divisor_mult = m.to_i64().and_then(|v| u32::try_from(v).ok()).unwrap_or(0);
        self
    }
}

/// Record of a chain contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainContraction {
    pub component_id: String,
    pub chain: Vec<String>,
    pub result_singularity: QuotientSingularity,
    /// `(outside curve, chain curve) → coefficient` of `π*γ = γ + Σ c E`.
    pub pullback_coeffs: BTreeMap<(String, String), Rat>,
}

fn visible_curve<'a>(comp: &'a CurveConfig, label: &str) -> Result<&'a Curve> {
    match comp.curve(label) {
        Some(c) if !c.contracted => Ok(c),
        _ => Err(Error::MissingCurve(label.to_string())),
    }
}

fn mult(m: u32) -> Rat {
    Rat::int(i64::from(m))
}

/// Blows up a point of a component.
///
/// The new curve `E` has `E² = −1` and meets each listed curve `c` in
/// `m_c` points; `c² ` drops by `m_c²` and `c·c'` by `m_c m_c'`. In the basis
/// of proper transforms the canonical class gains `(Σ k_c m_c + 1 − Σ m_B)·E`
/// (the sum over double curves `B` through the point: those are part of the
/// log canonical class) and `D` gains `(Σ d_c m_c − divisor_mult)·E`.
pub fn blow_up(pair: &LogPair, req: &BlowupRequest) -> Result<LogPair> {
    let ci = pair.component_index(&req.component_id)?;
    pair.ensure_fresh(&req.new_label)?;
    let comp = &pair.components[ci];
    for (label, m) in &req.incidence {
        visible_curve(comp, label)?;
        if *m == 0 {
            return Err(Error::InvalidInput(format!("multiplicity of {label} at a blow-up centre must be positive")));
        }
    }
    let listed: Vec<(&String, &u32)> = req.incidence.iter().collect();
    for (i, (a, ma)) in listed.iter().enumerate() {
        for (b, mb) in &listed[i + 1..] {
            let after = comp.model_int(a, b) - mult(**ma) * mult(**mb);
            if after.is_negative() {
                return Err(Error::InconsistentIncidence(format!("{a} and {b} do not meet at the centre often enough ({a}·{b} would become {after})")));
            }
        }
    }
    let mut k_e = Rat::one();
    let mut d_e = -mult(req.divisor_mult);
    for (c, m) in &req.incidence {
        k_e += pair.canonical_k.coeff(c) * mult(*m);
        d_e += pair.divisor_d.coeff(c) * mult(*m);
        if pair.is_double_curve(c) {
            k_e -= mult(*m);
        }
    }
    if d_e.is_negative() {
        return Err(Error::InconsistentIncidence(format!(
            "D has multiplicity {} at the centre but its listed components only account for {}",
            req.divisor_mult,
            d_e.clone() + mult(req.divisor_mult)
        )));
    }

    let mut out = pair.clone();
    let comp = &mut out.components[ci];
    for (i, (a, ma)) in listed.iter().enumerate() {
        let s = comp.model_int(a, a) - mult(**ma) * mult(**ma);
        comp.set_model_int(a, a, s);
        for (b, mb) in &listed[i + 1..] {
            let v = comp.model_int(a, b) - mult(**ma) * mult(**mb);
            comp.set_model_int(a, b, v);
        }
    }
    comp.add_curve(
        Curve { label: req.new_label.clone(), arith_genus: 0, roles: [Role::Exceptional].into_iter().collect(), contracted: false },
        Rat::int(-1),
    );
    for (c, m) in &req.incidence {
        comp.set_model_int(&req.new_label, c, mult(*m));
    }
    comp.model_rank += 1;
    out.canonical_k.set(&req.new_label, k_e);
    out.divisor_d.set(&req.new_label, d_e);
    out.sync_roles();
    Ok(out)
}

/// Blows down a smooth rational (−1)-curve of the model: every pair of
/// remaining curves gains `m_a m_b` where `m_a = a·E`; `K` and `D` are
/// pushed forward by dropping `E`.
pub fn blow_down(pair: &LogPair, component_id: &str, label: &str) -> Result<LogPair> {
    let ci = pair.component_index(component_id)?;
    let comp = &pair.components[ci];
    let e = visible_curve(comp, label)?;
    if e.arith_genus != 0 || comp.model_int(label, label) != Rat::int(-1) {
        return Err(Error::NotMinusOne(label.to_string()));
    }
    if comp.has_hidden_neighbours(label) {
        return Err(Error::InconsistentIncidence(format!("{label} passes through a singular point")));
    }
    if pair.is_double_curve(label) {
        return Err(Error::InconsistentIncidence(format!("{label} is a double curve")));
    }
    let others: Vec<String> = comp.curves.iter().filter(|c| c.label != label).map(|c| c.label.clone()).collect();
    let meets: Vec<Rat> = others.iter().map(|o| comp.model_int(o, label)).collect();
    let mut out = pair.clone();
    let comp = &mut out.components[ci];
    for i in 0..others.len() {
        for j in i..others.len() {
            if !meets[i].is_zero() && !meets[j].is_zero() {
                let v = comp.model_int(&others[i], &others[j]) + &meets[i] * &meets[j];
                comp.set_model_int(&others[i], &others[j], v);
            }
        }
    }
    comp.remove_curve(label);
    comp.model_rank -= 1;
    out.canonical_k.remove(label);
    out.divisor_d.remove(label);
    out.sync_roles();
    Ok(out)
}

/// Contracts a Hirzebruch–Jung chain to a cyclic quotient point.
pub fn contract_chain(pair: &LogPair, component_id: &str, chain: &[String]) -> Result<(LogPair, ChainContraction)> {
    let ci = pair.component_index(component_id)?;
    let comp = &pair.components[ci];
    if chain.is_empty() {
        return Err(Error::NotContractibleChain("empty chain".into()));
    }
    let mut self_ints = Vec::new();
    for l in chain {
        let c = visible_curve(comp, l)?;
        if c.arith_genus != 0 {
            return Err(Error::NotContractibleChain(format!("{l} is not rational")));
        }
        if comp.has_hidden_neighbours(l) {
            return Err(Error::NotContractibleChain(format!("{l} passes through a singular point")));
        }
        let s = comp.model_int(l, l).to_i64().ok_or_else(|| Error::NotContractibleChain(format!("{l}² is not an integer")))?;
        self_ints.push(s);
    }
    for (i, a) in chain.iter().enumerate() {
        for (j, b) in chain.iter().enumerate() {
            if i < j {
                let expected = if j == i + 1 { Rat::one() } else { Rat::zero() };
                if comp.model_int(a, b) != expected {
                    return Err(Error::NotContractibleChain(format!("{a}·{b} = {} but a chain needs {expected}", comp.model_int(a, b))));
                }
            }
        }
    }
    let result_singularity = hj_chain_to_singularity(&self_ints)?;
    let gram: Matrix = chain.iter().map(|a| chain.iter().map(|b| comp.model_int(a, b)).collect()).collect();
    assert!(is_negative_definite(&gram), "a chain with entries ≤ −2 is negative definite");

    let neighbours: Vec<String> = comp
        .curves
        .iter()
        .filter(|c| !c.contracted && !chain.contains(&c.label) && chain.iter().any(|e| !comp.model_int(&c.label, e).is_zero()))
        .map(|c| c.label.clone())
        .collect();
    let mut out = pair.clone();
    for l in chain {
        out.components[ci].curve_mut(l).expect("checked").contracted = true;
        out.canonical_k.remove(l);
        out.divisor_d.remove(l);
    }
    out.sync_roles();
    let mut pullback_coeffs = BTreeMap::new();
    for g in &neighbours {
        for (h, c) in out.components[ci].pullback(g)? {
            if chain.contains(&h) {
                pullback_coeffs.insert((g.clone(), h), c);
            }
        }
    }
    Ok((out, ChainContraction { component_id: component_id.into(), chain: chain.to_vec(), result_singularity, pullback_coeffs }))
}

/// Contracts an arbitrary set of curves (possibly adjacent to already
/// contracted ones). The merged contracted locus must still resolve to
/// smooth or cyclic quotient points.
pub fn contract_curves(pair: &LogPair, component_id: &str, labels: &[String]) -> Result<LogPair> {
    let ci = pair.component_index(component_id)?;
    for l in labels {
        visible_curve(&pair.components[ci], l)?;
    }
    let mut out = pair.clone();
    for l in labels {
        out.components[ci].curve_mut(l).expect("checked").contracted = true;
        out.canonical_k.remove(l);
        out.divisor_d.remove(l);
    }
    let comp = &out.components[ci];
    for hc in comp.hidden_components() {
        let gram: Matrix = hc.iter().map(|a| hc.iter().map(|b| comp.model_int(a, b)).collect()).collect();
        if !is_negative_definite(&gram) {
            return Err(Error::UnsupportedContraction(format!("{hc:?} is not negative definite")));
        }
    }
    comp.singular_points()?;
    out.sync_roles();
    Ok(out)
}

/// Inserts a new component together with its gluings and the changes to
/// `K` and `D` its insertion causes.
fn insert_component(pair: &LogPair, config: &CurveConfig, gluings: &[Gluing], k_delta: &DivisorClass, d_delta: &DivisorClass) -> Result<LogPair> {
    if pair.component_index(&config.component_id).is_ok() {
        return Err(Error::DuplicateLabel(config.component_id.clone()));
    }
    for c in &config.curves {
        pair.ensure_fresh(&c.label)?;
    }
    let mut out = pair.clone();
    out.components.push(config.clone());
    out.gluings.extend(gluings.iter().cloned());
    out.canonical_k = out.canonical_k.plus(k_delta);
    out.divisor_d = out.divisor_d.plus(d_delta);
    for l in k_delta.support().chain(d_delta.support()) {
        out.locate(l)?;
    }
    out.sync_roles();
    Ok(out)
}

fn delete_component(pair: &LogPair, component_id: &str) -> Result<LogPair> {
    let ci = pair.component_index(component_id)?;
    let mut out = pair.clone();
    let comp = out.components.remove(ci);
    for c in &comp.curves {
        out.canonical_k.remove(&c.label);
        out.divisor_d.remove(&c.label);
    }
    out.gluings.retain(|g| g.a.component != component_id && g.b.component != component_id);
    out.sync_roles();
    Ok(out)
}

/// One elementary rewrite of a log pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rewrite {
    BlowUp(BlowupRequest),
    BlowDown { component: String, label: String },
    ContractChain { component: String, chain: Vec<String> },
    Contract { component: String, labels: Vec<String> },
    InsertComponent { config: CurveConfig, gluings: Vec<Gluing>, k_delta: DivisorClass, d_delta: DivisorClass },
    DeleteComponent { component: String },
    Glue { index: usize, gluing: Gluing },
    Unglue { index: usize },
    AddGluedPoint { gluing: usize, point: GluedPoint },
}

impl Rewrite {
    pub fn name(&self) -> &'static str {
        match self {
            Rewrite::BlowUp(_) => "blow_up",
            Rewrite::BlowDown { .. } => "blow_down",
            Rewrite::ContractChain { .. } => "contract_chain",
            Rewrite::Contract { .. } => "contract",
            Rewrite::InsertComponent { .. } => "insert_component",
            Rewrite::DeleteComponent { .. } => "delete_component",
            Rewrite::Glue { .. } => "glue",
            Rewrite::Unglue { .. } => "unglue",
            Rewrite::AddGluedPoint { .. } => "add_glued_point",
        }
    }

    /// The component the rewrite acts on, if it acts on one.
    pub fn component(&self) -> Option<&str> {
        match self {
            Rewrite::BlowUp(r) => Some(&r.component_id),
            Rewrite::BlowDown { component, .. } | Rewrite::ContractChain { component, .. } | Rewrite::Contract { component, .. } => Some(component),
            Rewrite::InsertComponent { config, .. } => Some(&config.component_id),
            _ => None,
        }
    }
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rewrite::BlowUp(r) => {
                let inc: Vec<String> = r.incidence.iter().map(|(c, m)| if *m == 1 { c.clone() } else { format!("{m}·{c}") }).collect();
                write!(f, "blow up {} at {{{}}} (mult_D = {}) → {}", r.component_id, inc.join(", "), r.divisor_mult, r.new_label)
            }
            Rewrite::BlowDown { component, label } => write!(f, "blow down {label} on {component}"),
            Rewrite::ContractChain { component, chain } => write!(f, "contract chain ({}) on {component}", chain.join(", ")),
            Rewrite::Contract { component, labels } => write!(f, "contract {{{}}} on {component}", labels.join(", ")),
            Rewrite::InsertComponent { config, gluings, .. } => {
                let g: Vec<String> = gluings.iter().map(|g| format!("{}~{}", g.a.label, g.b.label)).collect();
                write!(f, "insert component {} glued along {}", config.component_id, g.join(", "))
            }
            Rewrite::DeleteComponent { component } => write!(f, "delete component {component}"),
            Rewrite::Glue { index, gluing } => write!(f, "glue {}~{} at #{index}", gluing.a.label, gluing.b.label),
            Rewrite::Unglue { index } => write!(f, "unglue #{index}"),
            Rewrite::AddGluedPoint { gluing, point } => write!(f, "glued point on #{gluing}: {:?} ~ {:?}", point.a, point.b),
        }
    }
}

/// Applies one rewrite; chain contractions also return their record.
pub fn apply(pair: &LogPair, rewrite: &Rewrite) -> Result<(LogPair, Option<ChainContraction>)> {
    let out = match rewrite {
        Rewrite::BlowUp(req) => blow_up(pair, req)?,
        Rewrite::BlowDown { component, label } => blow_down(pair, component, label)?,
        Rewrite::ContractChain { component, chain } => {
            let (p, c) = contract_chain(pair, component, chain)?;
            return Ok((p, Some(c)));
        }
        Rewrite::Contract { component, labels } => contract_curves(pair, component, labels)?,
        Rewrite::InsertComponent { config, gluings, k_delta, d_delta } => insert_component(pair, config, gluings, k_delta, d_delta)?,
        Rewrite::DeleteComponent { component } => delete_component(pair, component)?,
        Rewrite::Glue { index, gluing } => {
            if *index > pair.gluings.len() {
                return Err(Error::InvalidInput(format!("gluing index {index} out of range")));
            }
            for side in [&gluing.a, &gluing.b] {
                if !pair.component(&side.component)?.has_curve(&side.label) {
                    return Err(Error::MissingCurve(side.label.clone()));
                }
            }
            let mut p = pair.clone();
            p.gluings.insert(*index, gluing.clone());
            p.sync_roles();
            p
        }
        Rewrite::Unglue { index } => {
            if *index >= pair.gluings.len() {
                return Err(Error::InvalidInput(format!("gluing index {index} out of range")));
            }
            let mut p = pair.clone();
            p.gluings.remove(*index);
            p.sync_roles();
            p
        }
        Rewrite::AddGluedPoint { gluing, point } => {
            let mut p = pair.clone();
            let g = p.gluings.get_mut(*gluing).ok_or_else(|| Error::InvalidInput(format!("gluing index {gluing} out of range")))?;
            g.points.push(point.clone());
            p.glued_records(&p.gluings[*gluing])?;
            p
        }
    };
    Ok((out, None))
}

/// Applies one rewrite, discarding any contraction record.
pub fn apply_rewrite(pair: &LogPair, rewrite: &Rewrite) -> Result<LogPair> {
    Ok(apply(pair, rewrite)?.0)
}

/// One recorded step of a surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformStep {
    /// The surgery-level operation this step belongs to (e.g. `type1_flip`).
    pub op: String,
    pub rewrite: Rewrite,
    /// Singularities of the pair after the step.
    pub singularities: Vec<LocatedSingularity>,
    /// Self-intersections of the visible curves of the touched component.
    pub key_numbers: Vec<(String, Rat)>,
}

/// Ordered record of the rewrites a surgery performed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransformLog {
    pub steps: Vec<TransformStep>,
}

impl TransformLog {
    pub fn new() -> TransformLog {
        TransformLog::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn append(&mut self, other: TransformLog) {
        self.steps.extend(other.steps);
    }

    /// Replays the rewrites from `initial`; reproduces the surgery output.
    pub fn replay(&self, initial: &LogPair) -> Result<LogPair> {
        self.steps.iter().try_fold(initial.clone(), |p, s| apply_rewrite(&p, &s.rewrite))
    }
}

impl fmt::Display for TransformLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            write!(f, "{:>3}. [{}] {}", i + 1, s.op, s.rewrite)?;
            let sings: Vec<String> = s.singularities.iter().map(render_located).collect();
            if !sings.is_empty() {
                write!(f, " | sing: {}", sings.join("; "))?;
            }
            if !s.key_numbers.is_empty() {
                let nums: Vec<String> = s.key_numbers.iter().map(|(l, v)| format!("{l}²={v}")).collect();
                write!(f, " | {}", nums.join(" "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Renders a located singularity as `component:point = type`.
pub fn render_located(s: &LocatedSingularity) -> String {
    match &s.location {
        Location::Point { component, id, .. } => format!("{component}:{id} = {}", s.singularity),
        Location::DoubleCurve { a, b } => format!("{a}~{b} = {}", s.singularity),
    }
}

/// Applies rewrites to a pair while recording them.
#[derive(Clone, Debug)]
pub struct Tracer {
    pair: LogPair,
    log: TransformLog,
}

impl Tracer {
    pub fn new(pair: LogPair) -> Tracer {
        Tracer { pair, log: TransformLog::new() }
    }

    pub fn pair(&self) -> &LogPair {
        &self.pair
    }

    pub fn log(&self) -> &TransformLog {
        &self.log
    }

    /// Applies and records one rewrite.
    pub fn apply(&mut self, op: &str, rewrite: Rewrite) -> Result<Option<ChainContraction>> {
        let (next, contraction) = apply(&self.pair, &rewrite)?;
        let singularities = next.singularities()?;
        let key_numbers = match rewrite.component().and_then(|c| next.component(c).ok()) {
            Some(comp) => {
                let form = comp.effective_form()?;
                form.labels.iter().map(|l| (l.clone(), form.get(l, l).cloned().expect("visible"))).collect()
            }
            None => Vec::new(),
        };
        self.log.steps.push(TransformStep { op: op.into(), rewrite, singularities, key_numbers });
        self.pair = next;
        Ok(contraction)
    }

    /// Appends an already-recorded sub-surgery that was run on `self.pair`.
    pub fn absorb(&mut self, pair: LogPair, log: TransformLog) {
        self.pair = pair;
        self.log.append(log);
    }

    pub fn finish(self) -> (LogPair, TransformLog) {
        (self.pair, self.log)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_pair;
    use crate::rat::q;

    /// F₄ with σ, a fiber F and the hyperelliptic curve H ∼ 2σ + 9F.
    fn f4() -> LogPair {
        let comp = CurveConfig::new("X", 2)
            .with_curve("sigma", Rat::int(-4), 0, &[Role::Directrix])
            .with_curve("F", Rat::zero(), 0, &[Role::Fiber])
            .with_curve("H", Rat::int(20), 4, &[])
            .with_meet("sigma", "F", Rat::one())
            .with_meet("sigma", "H", Rat::one())
            .with_meet("F", "H", Rat::int(2));
        let k = DivisorClass::from_terms(&[("sigma", Rat::int(-2)), ("F", Rat::int(-6))]);
        let d = DivisorClass::from_terms(&[("sigma", Rat::one()), ("H", Rat::one())]);
        LogPair::new(vec![comp], vec![], k, d)
    }

    fn first_blowup() -> BlowupRequest {
        BlowupRequest::new("X", "E1").through("sigma", 1).through("H", 1).through("F", 1).divisor_mult(2)
    }

    #[test]
    fn blow_up_at_triple_point() {
        let p = blow_up(&f4(), &first_blowup()).unwrap();
        let x = p.component("X").unwrap();
        assert_eq!(x.self_int("sigma").unwrap(), Rat::int(-5));
        assert_eq!(x.self_int("E1").unwrap(), Rat::int(-1));
        assert_eq!(x.self_int("F").unwrap(), Rat::int(-1));
        assert_eq!(x.picard_rank(), 3);
        assert_eq!(p.divisor_d.coeff("E1"), Rat::zero());
        let p2 = blow_up(&p, &BlowupRequest::new("X", "E2").through("E1", 1).through("H", 1).divisor_mult(1)).unwrap();
        let x = p2.component("X").unwrap();
        assert_eq!(x.self_int("E1").unwrap(), Rat::int(-2));
        assert_eq!(x.self_int("E2").unwrap(), Rat::int(-1));
    }

    #[test]
    fn blow_up_away_from_tracked_curves() {
        let p = blow_up(&f4(), &BlowupRequest::new("X", "E")).unwrap();
        let x = p.component("X").unwrap();
        assert_eq!(x.self_int("sigma").unwrap(), Rat::int(-4));
        assert_eq!(x.self_int("E").unwrap(), Rat::int(-1));
        // K·K drops by one: K = π*K + E.
        let kk0 = f4().class_intersect(&f4().canonical_k, &f4().canonical_k).unwrap();
        let kk1 = p.class_intersect(&p.canonical_k, &p.canonical_k).unwrap();
        assert_eq!(kk1, kk0 - Rat::one());
    }

    #[test]
    fn blow_down_undoes_blow_up() {
        let p = blow_up(&f4(), &first_blowup()).unwrap();
        assert_eq!(blow_down(&p, "X", "E1").unwrap(), f4());
        assert!(matches!(blow_down(&p, "X", "sigma"), Err(Error::NotMinusOne(_))));
    }

    #[test]
    fn contraction_of_the_five_two_chain() {
        let p = blow_up(&f4(), &first_blowup()).unwrap();
        let p = blow_up(&p, &BlowupRequest::new("X", "E2").through("E1", 1).through("H", 1).divisor_mult(1)).unwrap();
        let (p, cc) = contract_chain(&p, "X", &["sigma".into(), "E1".into()]).unwrap();
        assert_eq!(cc.result_singularity.to_string(), "1/9(1,2)");
        assert_eq!(cc.pullback_coeffs[&("E2".to_string(), "sigma".to_string())], q(1, 9));
        assert_eq!(cc.pullback_coeffs[&("E2".to_string(), "E1".to_string())], q(5, 9));
        let x = p.component("X").unwrap();
        assert_eq!(x.self_int("E2").unwrap(), q(-4, 9));
        assert_eq!(x.self_int("F").unwrap(), q(-4, 9));
        assert_eq!(x.curve_int("E2", "F").unwrap(), q(5, 9));
        assert_eq!(validate_pair(&p), vec![]);
    }

    #[test]
    fn minus_one_chain_is_rejected() {
        let p = blow_up(&f4(), &first_blowup()).unwrap();
        assert!(matches!(contract_chain(&p, "X", &["E1".into()]), Err(Error::NotContractibleChain(_))));
    }

    #[test]
    fn inconsistent_divisor_multiplicity() {
        let req = BlowupRequest::new("X", "E").through("F", 1).divisor_mult(1);
        assert!(matches!(blow_up(&f4(), &req), Err(Error::InconsistentIncidence(_))));
    }
}
