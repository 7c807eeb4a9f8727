//! The built-in verification suite: every published number the engine
//! reproduces, measured on the engine's own output and compared exactly.
//!
//! Each [`Check`] is one numbered criterion. Quantities are measured from
//! the resulting pairs (not from the surgeries' own postconditions), so a
//! check fails loudly when the engine and the expected value disagree.

use std::fmt;

use crate::birational::{blow_down, TransformLog};
use crate::cases::{input_pair, F3F1Directrices, HyperellipticSub, InputCase};
use crate::cover::{classify_cover, discriminant, hassett_stable, slc_check, BranchPoint, CoverDescriptor, CubicForm, LocalModel, Poly};
use crate::error::Result;
use crate::flip::{topple, type1_flip, type1_staged, type2_accordion, type2_flip, FlipInput};
use crate::lattice::LogPair;
use crate::linalg::det;
use crate::rat::{EpsLinear, Rat};
use crate::singularity::{hj_chain_to_singularity, QuotientSingularity};
use crate::stabilizer::{
    f33_equals_third_third, f3f1_partner, pencil_singular_count, regenerate_table, same_stable_limit, stabilize, table_mismatches, testcurve_matrix, toric_polytope,
    Entry, Stratum,
};
use crate::toric::Polygon;

/// The outcome of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub criterion: u32,
    pub name: &'static str,
    /// Every comparison made, `ok` or `MISMATCH`.
    pub lines: Vec<String>,
    pub pass: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:>2}. {}", if self.pass { "PASS" } else { "FAIL" }, self.criterion, self.name)
    }
}

/// Collects comparisons for one criterion.
struct Checker {
    lines: Vec<String>,
    pass: bool,
}

impl Checker {
    fn new() -> Checker {
        Checker { lines: Vec::new(), pass: true }
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, what: &str, got: T, want: T) {
        if got == want {
            self.lines.push(format!("ok       {what} = {want}"));
        } else {
            self.pass = false;
            self.lines.push(format!("MISMATCH {what} = {got}, expected {want}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if ok {
            self.lines.push(format!("ok       {what}"));
        } else {
            self.pass = false;
            self.lines.push(format!("MISMATCH {what}"));
        }
    }

    fn run(&mut self, what: &str, f: impl FnOnce(&mut Checker) -> Result<()>) {
        if let Err(e) = f(self) {
            self.pass = false;
            self.lines.push(format!("MISMATCH {what}: {e}"));
        }
    }

    fn finish(self, criterion: u32, name: &'static str) -> Check {
        Check { criterion, name, lines: self.lines, pass: self.pass }
    }
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn eps(k: i64) -> EpsLinear {
    EpsLinear::eps(Rat::int(k))
}

/// The hyperelliptic-tail pair after its Type I flip.
pub fn hyperelliptic_flip_input() -> Result<FlipInput> {
    let pair = input_pair(&InputCase::HyperellipticTail(HyperellipticSub::Unramified))?;
    Ok(FlipInput::type1(pair, "sigma").with_c("H").at_p(&["F"]))
}

/// The first Type II flip of the `F₃ ∪ F₃` pair.
pub fn f3f3_first_flip_input() -> Result<FlipInput> {
    Ok(FlipInput::type2(input_pair(&InputCase::F3F3)?, "sigma1").with_c("H2"))
}

fn criterion_1() -> Check {
    let mut c = Checker::new();
    c.run("type I flip", |c| {
        let (p, _) = type1_flip(&hyperelliptic_flip_input()?)?;
        let x = p.component("X")?;
        let (e2, f) = ("sigma_E2", "F");
        c.eq("E2'²", x.self_int(e2)?, q(-4, 9));
        c.eq("F'²", x.self_int(f)?, q(-4, 9));
        c.eq("E2'·F'", x.curve_int(e2, f)?, q(5, 9));
        c.eq("K·E2'", p.k_dot(e2)?, q(-2, 3));
        c.eq("K·F'", p.k_dot(f)?, q(-2, 3));
        c.eq("D'·E2'", p.d_dot(e2)?, Rat::one());
        c.eq("D'·F'", p.d_dot(f)?, Rat::one());
        c.eq("(K+wD')·E2'", p.log_value(e2)?, eps(1));
        c.eq("(K+wD')·F'", p.log_value(f)?, eps(1));
        Ok(())
    });
    c.finish(1, "Type I flip intersection table")
}

fn criterion_2() -> Check {
    let mut c = Checker::new();
    c.run("pullback", |c| {
        let (p, _) = type1_flip(&hyperelliptic_flip_input()?)?;
        let pb = p.component("X")?.pullback("sigma_E2")?;
        let coeff = |h: &str| pb.iter().find(|(l, _)| l == h).map(|(_, v)| v.clone()).unwrap_or_else(Rat::zero);
        c.eq("coefficient of σ in π*E2'", coeff("sigma"), q(1, 9));
        c.eq("coefficient of E1 in π*E2'", coeff("sigma_E1"), q(5, 9));
        Ok(())
    });
    c.finish(2, "pullback through the 1/9(1,2) point")
}

fn criterion_3() -> Check {
    let mut c = Checker::new();
    c.run("two type II flips", |c| {
        let (p, _) = type2_flip(&f3f3_first_flip_input()?)?;
        let (p, _) = type2_flip(&FlipInput::type2(p, "sigma2").with_c("H1"))?;
        // On X1: E3' is the last exceptional curve, F' the double curve.
        let x1 = p.component("X1")?;
        let (e3, f) = ("F1_E3", "F1");
        let ks = p.surface_canonical("X1")?;
        c.eq("E3'²", x1.self_int(e3)?, q(-1, 3));
        c.eq("F'²", x1.self_int(f)?, q(-5, 6));
        c.eq("E3'·F'", x1.curve_int(e3, f)?, q(1, 3));
        c.eq("K·E3'", p.class_with_curve(&ks, e3)?, Rat::int(-1));
        c.eq("K·F'", p.class_with_curve(&ks, f)?, q(1, 3));
        c.eq("D'·E3'", p.d_dot(e3)?, Rat::one());
        c.eq("D'·F'", p.d_dot(f)?, Rat::one());
        c.eq("(K+wD')·E3'", p.log_value(e3)?, eps(1));
        c.eq("(K+wD')·F'", p.log_value(f)?, EpsLinear::new(q(1, 6), Rat::one()));
        Ok(())
    });
    c.finish(3, "F3–F3 table after two Type II flips")
}

/// `F·γ` for the class `F` of a general fiber of the original `F₁`: the
/// total transform `F₂ + E₁ + E₂ + E₃` of the fiber through the blow-up
/// centre, intersected on the model.
fn fiber_dot(p: &LogPair, gamma: &str) -> Result<Rat> {
    let x2 = p.component("X2")?;
    Ok(["F2", "F2_E1", "F2_E2", "F2_E3"].iter().map(|x| x2.model_int(x, gamma)).sum())
}

fn criterion_4() -> Check {
    let mut c = Checker::new();
    for triple in [false, true] {
        let branch = if triple { "triply tangent" } else { "not triply tangent" };
        c.run(branch, |c| {
            let case = InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent: triple, tau_component: None });
            let mut input = FlipInput::type2(input_pair(&case)?, "sigma1").with_c("D2").at_p(&["tau"]).at_q(&["tau"]);
            if triple {
                input = input.at_r(&["tau"]);
            }
            let (p, _) = type2_flip(&input)?;
            let p = blow_down(&p, "X2", "sigma2")?;
            let x2 = p.component("X2")?;
            let (e, l) = ("F2_E3", "tau");
            c.eq(&format!("[{branch}] E²"), x2.self_int(e)?, q(-1, 3));
            if triple {
                c.eq(&format!("[{branch}] L²"), x2.self_int(l)?, Rat::int(-2));
                c.eq(&format!("[{branch}] E·L"), x2.curve_int(e, l)?, Rat::one());
            } else {
                c.eq(&format!("[{branch}] L²"), x2.self_int(l)?, q(-1, 3));
                c.eq(&format!("[{branch}] E·L"), x2.curve_int(e, l)?, Rat::zero());
            }
            for g in [e, l] {
                let (f, ee) = (fiber_dot(&p, g)?, x2.curve_int(e, g)?);
                c.eq(&format!("[{branch}] K''·{g} vs (−2F+2E)·{g}"), p.k_dot(g)?, Rat::int(-2) * &f + Rat::int(2) * &ee);
                c.eq(&format!("[{branch}] D''·{g} vs (3F−3E)·{g}"), p.d_dot(g)?, Rat::int(3) * &f - Rat::int(3) * &ee);
            }
            c.eq(&format!("[{branch}] (K+wD'')·E"), p.log_value(e)?, eps(1));
            c.eq(&format!("[{branch}] (K+wD'')·L"), p.log_value(l)?, if triple { EpsLinear::zero() } else { eps(3) });
            Ok(())
        });
    }
    c.finish(4, "F3–F1 cone tables (disjoint directrices)")
}

/// `n/q` of the continued fraction `[b₁, …, b_k]` (`b = −self-int`).
fn continued_fraction(bs: &[i64]) -> (i64, i64) {
    let (mut num, mut den) = (1i64, 0i64);
    for &b in bs.iter().rev() {
        let next = b * num - den;
        den = num;
        num = next;
    }
    (num, den)
}

fn criterion_5() -> Check {
    let mut c = Checker::new();
    c.run("Hirzebruch–Jung", |c| {
        c.eq("[−5,−2]", hj_chain_to_singularity(&[-5, -2])?, QuotientSingularity::cyclic(9, 2)?);
        c.eq("[−2]", hj_chain_to_singularity(&[-2])?, QuotientSingularity::a(1));
        c.eq("[−2,−2]", hj_chain_to_singularity(&[-2, -2])?, QuotientSingularity::a(2));
        c.eq("[−3]", hj_chain_to_singularity(&[-3])?, QuotientSingularity::cyclic(3, 1)?);
        for k in 1..=6usize {
            let chain = vec![-2i64; k];
            let (n, qq) = continued_fraction(&vec![2; k]);
            let oracle = QuotientSingularity::cyclic(u32::try_from(n).expect("small"), u32::try_from(qq).expect("small"))?;
            let got = hj_chain_to_singularity(&chain)?;
            c.eq(&format!("[−2]×{k} (continued fraction {n}/{qq})"), got.clone(), oracle);
            c.eq(&format!("[−2]×{k}"), got, QuotientSingularity::a(k as u32));
        }
        Ok(())
    });
    c.finish(5, "Hirzebruch–Jung classification")
}

fn criterion_6() -> Check {
    let mut c = Checker::new();
    c.run("type II", |c| {
        let input = f3f3_first_flip_input()?;
        let before = input.pair.clone();
        let (after, _) = type2_flip(&input)?;
        let (s0, t0) = (before.component("X2")?, before.component("X1")?);
        let (s1, t1) = (after.component("X2")?, after.component("X1")?);
        c.eq("C'² − C²", s1.self_int("H2")? - s0.self_int("H2")?, Rat::int(-3));
        c.eq("ν²", s1.self_int("F2_E3")?, q(-1, 3));
        c.eq("B'·ν", s1.curve_int("F2", "F2_E3")?, q(1, 3));
        c.eq("(B'|S')² − (B|S)²", s1.self_int("F2")? - s0.self_int("F2")?, q(-1, 3));
        c.eq("(B'|T')² − (B|T)²", t1.self_int("F1")? - t0.self_int("F1")?, q(1, 3));
        c.eq("ρ(S') − ρ(S)", i64::from(s1.picard_rank()) - i64::from(s0.picard_rank()), 1);
        c.eq("ρ(T') − ρ(T)", i64::from(t1.picard_rank()) - i64::from(t0.picard_rank()), -1);
        Ok(())
    });
    c.run("topple", |c| {
        // The staged flip's first inserted component is an F₂ end
        // component glued along σ: exactly a topple configuration.
        let input = hyperelliptic_flip_input()?;
        let (_, log) = type1_staged(&input)?;
        let first = TransformLog { steps: log.steps[..1].to_vec() };
        let before = first.replay(&input.pair)?;
        let (after, _) = topple(&FlipInput::topple(before.clone(), "sigma^E1.sigma").with_c("H").at_p(&["F"]))?;
        let (x0, x1) = (before.component("X")?, after.component("X")?);
        c.eq("C'² − C²", x1.self_int("H")? - x0.self_int("H")?, Rat::int(-2));
        c.eq("ρ(S') − ρ(S)", i64::from(x1.picard_rank()) - i64::from(x0.picard_rank()), 0);
        c.eq("components after topple", after.components.len(), 1);
        Ok(())
    });
    c.finish(6, "Type II flip and topple numbers")
}

fn criterion_7() -> Check {
    let mut c = Checker::new();
    c.run("staged type I", |c| {
        let input = hyperelliptic_flip_input()?;
        let (reference, _) = type1_flip(&input)?;
        for n in 0..=3 {
            let (p, _) = type1_staged(&input.clone().with_staging(n))?;
            c.holds(&format!("type1_staged n = {n} equals type1_flip"), p == reference);
        }
        Ok(())
    });
    c.run("accordion type II", |c| {
        let input = f3f3_first_flip_input()?;
        let (reference, _) = type2_flip(&input)?;
        for n in 0..=3 {
            let (p, _) = type2_accordion(&input.clone().with_staging(n))?;
            c.holds(&format!("type2_accordion n = {n} equals type2_flip"), p == reference);
        }
        Ok(())
    });
    c.finish(7, "independence of the staging")
}

fn criterion_8() -> Check {
    let mut c = Checker::new();
    c.run("table", |c| {
        let table = regenerate_table()?;
        for row in &table {
            c.lines.push(format!("         {row}"));
        }
        let mismatches = table_mismatches(&table);
        for m in &mismatches {
            c.holds(m, false);
        }
        c.eq("rows reproduced", table.len() - mismatches.len().min(table.len()), 8);
        let f33 = stabilize(&InputCase::F3F3)?;
        c.holds("F3–F3 limit equals the third-third chain", f33_equals_third_third(&f33)?);
        for case in InputCase::all() {
            if let (InputCase::F3F1(F3F1Directrices::Intersecting { .. }), Some(partner)) = (&case, f3f1_partner(&case)) {
                let same = same_stable_limit(&stabilize(&case)?, &stabilize(&partner)?)?;
                c.holds(&format!("{case} and {partner} have the same stable limit"), same);
            }
        }
        Ok(())
    });
    c.finish(8, "stable-reduction table")
}

/// Discriminant of a cubic with rational coefficients via the Sylvester
/// resultant: `Δ = −Res(f, f′)/a`.
fn resultant_discriminant(a: &Rat, b: &Rat, cc: &Rat, d: &Rat) -> Rat {
    let z = Rat::zero;
    let (a3, b2) = (Rat::int(3) * a, Rat::int(2) * b);
    let m = vec![
        vec![a.clone(), b.clone(), cc.clone(), d.clone(), z()],
        vec![z(), a.clone(), b.clone(), cc.clone(), d.clone()],
        vec![a3.clone(), b2.clone(), cc.clone(), z(), z()],
        vec![z(), a3.clone(), b2.clone(), cc.clone(), z()],
        vec![z(), z(), a3, b2, cc.clone()],
    ];
    -(det(&m) / a)
}

fn cubic_battery() -> Vec<CubicForm> {
    let p = Poly::from_ints;
    vec![
        CubicForm::constant(1, 0, -1, 0),
        CubicForm::constant(2, -3, 5, 7),
        CubicForm::new(p(&[1]), p(&[0, 1]), p(&[1, 0, 1]), p(&[0, 0, 0, 1])),
        CubicForm::new(p(&[1, 1]), p(&[0, 0, 2]), p(&[-1]), p(&[3, 0, 1])),
        CubicForm::new(p(&[2]), p(&[1, -1]), p(&[0, 3]), p(&[5, 0, 0, -2])),
        CubicForm::new(p(&[1]), p(&[0]), p(&[-3, 0, 1]), p(&[2, 1])),
    ]
}

fn criterion_9() -> Check {
    let mut c = Checker::new();
    c.run("discriminant", |c| {
        let points: Vec<Rat> = [1, 2, -3].iter().map(|&n| Rat::int(n)).chain([q(1, 2), q(-5, 3)]).collect();
        for (i, f) in cubic_battery().iter().enumerate() {
            let delta = discriminant(f);
            for t in &points {
                let [a, b, cc, d] = f.coefficients().map(|p| p.eval(t));
                if !a.is_zero() {
                    c.eq(&format!("cubic {i}: Δ({t}) vs resultant"), delta.eval(t), resultant_discriminant(&a, &b, &cc, &d));
                }
            }
            for n in 1..=3usize {
                let shifted = discriminant(&f.times_t_pow(n));
                c.holds(&format!("cubic {i}: Δ(t^{n}f) = t^{}Δ(f)", 4 * n), shifted == delta.shift_up(4 * n));
            }
        }
        Ok(())
    });
    c.eq("lct(node with fiber)", LocalModel::NodeWithFiber.lct(), Rat::one());
    c.eq("lct(tacnode with fiber)", LocalModel::TacnodeWithFiber.lct(), q(3, 4));
    c.eq("lct(A4)", LocalModel::A(4).lct(), q(7, 10));
    let a4 = CoverDescriptor::for_case(&InputCase::MaroniGeneral { d_singularities: vec![4] });
    c.holds("slc_check(A4 cover, 2/3)", slc_check(&a4, &q(2, 3)));
    c.holds("slc_check(A4 cover, 7/10)", slc_check(&a4, &q(7, 10)));
    c.holds("not slc_check(A4 cover, 71/100)", !slc_check(&a4, &q(71, 100)));
    let mut six = CoverDescriptor::for_case(&InputCase::MaroniGeneral { d_singularities: vec![] });
    let comp = six.base[0].id.clone();
    six.branch_divisor = vec![BranchPoint { point: "b0".into(), multiplicity: 6, component: comp.clone() }];
    six.branch_divisor.extend((1..=6).map(|i| BranchPoint { point: format!("b{i}"), multiplicity: 1, component: comp.clone() }));
    c.holds("multiplicity 6: not Hassett stable", !hassett_stable(&six));
    c.holds("multiplicity 6: not slc", !slc_check(&six, &q(2, 3)));
    c.holds("multiplicity 6: classification rejected", classify_cover(&six).is_err());
    c.finish(9, "cover calculus")
}

fn criterion_10() -> Check {
    let mut c = Checker::new();
    c.eq("pencil_singular_count(18, 4, 4)", pencil_singular_count(18, 4, 4), 34);
    let codims: Vec<String> = [Stratum::Z0, Stratum::Z2, Stratum::Z4, Stratum::Z33, Stratum::Z11, Stratum::Z13].iter().map(|s| s.codimension().to_string()).collect();
    c.eq("codimensions of Z0, Z2, Z4, Z3,3, Z1,1, Z1,3", codims.join(","), "1,1,1,1,3,2".to_string());
    let m = testcurve_matrix();
    c.holds("C1 row is (34, 0, 0)", m.entries[0] == [Entry::Value(Rat::int(34)), Entry::Value(Rat::zero()), Entry::Value(Rat::zero())]);
    c.holds("C2·Z3,3 unknown but non-zero; C2·Z0, C2·Z4 unknown", m.entries[1] == [Entry::Unknown, Entry::NonzeroUnknown, Entry::Unknown]);
    c.holds("C3 row is (0, 0, −1)", m.entries[2] == [Entry::Value(Rat::zero()), Entry::Value(Rat::zero()), Entry::Value(Rat::int(-1))]);
    let det: Vec<String> = m.determinant().iter().map(|t| t.to_string()).collect();
    c.eq("symbolic determinant", det.join(" + "), "-34·N(2,2)".to_string());
    c.holds("invertible for every value of the unknowns", m.invertible_for_all_substitutions());
    c.run("toric polytope", |c| {
        let rec = stabilize(&InputCase::F3F3)?;
        let [a, b] = toric_polytope(&rec)?;
        c.eq("first quadrilateral", format!("{:?}", a.vertices), format!("{:?}", Polygon::new(&[(-3, -2), (-3, -1), (3, 1), (3, -2)]).vertices));
        c.eq("second quadrilateral", format!("{:?}", b.vertices), format!("{:?}", Polygon::new(&[(-3, -1), (-3, 2), (3, 2), (3, 1)]).vertices));
        c.holds("other rows are not toric chains", toric_polytope(&stabilize(&InputCase::F1F1)?).is_err());
        Ok(())
    });
    c.finish(10, "boundary and moduli numerics")
}

/// Checks `(3K + 2D)·γ = 0` for every visible curve of a pair.
fn trivial_everywhere(p: &LogPair) -> Result<Option<String>> {
    for comp in &p.components {
        for l in comp.visible_labels() {
            let v = Rat::int(3) * p.k_dot(&l)? + Rat::int(2) * p.d_dot(&l)?;
            if !v.is_zero() {
                return Ok(Some(format!("(3K+2D)·{l} = {v}")));
            }
        }
    }
    Ok(None)
}

fn criterion_11() -> Check {
    let mut c = Checker::new();
    let suffix = |bad: &Option<String>| bad.as_ref().map(|b| format!(" — {b}")).unwrap_or_default();
    for case in InputCase::all() {
        c.run(&case.to_string(), |c| {
            let rec = stabilize(&case)?;
            for stage in &rec.stages {
                let bad = trivial_everywhere(&stage.pair)?;
                c.holds(&format!("{case}: (3K+2D)·γ = 0 after {}{}", stage.operation, suffix(&bad)), bad.is_none());
            }
            c.holds(&format!("{case}: index condition"), rec.index_condition_ok);
            c.holds(&format!("{case}: singularities of D within A1..A4"), rec.d_singularities.iter().all(|s| (1..=4).contains(&s.a_n)));
            Ok(())
        });
    }
    c.run("staged and accordion flips", |c| {
        let input = hyperelliptic_flip_input()?;
        for n in 0..=3 {
            let (p, _) = type1_staged(&input.clone().with_staging(n))?;
            let bad = trivial_everywhere(&p)?;
            c.holds(&format!("type1_staged n = {n}{}", suffix(&bad)), bad.is_none());
        }
        let input = f3f3_first_flip_input()?;
        for n in 0..=3 {
            let (p, _) = type2_accordion(&input.clone().with_staging(n))?;
            let bad = trivial_everywhere(&p)?;
            c.holds(&format!("type2_accordion n = {n}{}", suffix(&bad)), bad.is_none());
        }
        Ok(())
    });
    c.finish(11, "conservation of 3K + 2D ≡ 0, index condition, D-singularities")
}

/// Number of criteria.
pub const CRITERIA: u32 = 11;

/// Runs one criterion (1-based).
pub fn run_criterion(n: u32) -> Option<Check> {
    Some(match n {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => return None,
    })
}

/// Runs every criterion, independent ones concurrently.
pub fn run_all() -> Vec<Check> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=CRITERIA).map(|n| s.spawn(move || run_criterion(n).expect("in range"))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}
