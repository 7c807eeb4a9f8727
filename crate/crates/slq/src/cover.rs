//! Triple covers through their Tschirnhausen data: cubic forms and their
//! discriminants, the flat/non-flat decomposition of the branch divisor,
//! Maroni invariants, weighted (Hassett) stability of the branch divisor,
//! ampleness of `K + (2/3+ε)D` on a Tschirnhausen surface, log canonical
//! thresholds of the divisor, and the genus-4 case classifier.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::cases::{input_pair, InputCase};
use crate::error::{Error, Result};
use crate::lattice::{CurveConfig, DivisorClass, LogPair};
use crate::rat::{EpsLinear, Rat, Sign};

/// A univariate polynomial over `Rat` in the local parameter `t`,
/// coefficients from the constant term up, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<Rat>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| Rat::int(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// `c·tⁿ`.
    pub fn monomial(c: Rat, n: usize) -> Poly {
        let mut v = vec![Rat::zero(); n];
        v.push(c);
        Poly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Order of vanishing at `t = 0` (`None` for the zero polynomial).
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::new(self.0.iter().map(|c| c * k).collect())
    }

    /// `tⁿ·self`.
    pub fn shift_up(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); n];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    /// `self / tⁿ`; requires `tⁿ` to divide `self`.
    pub fn shift_down(&self, n: usize) -> Poly {
        assert!(self.valuation().is_none_or(|v| v >= n), "t^{n} does not divide the polynomial");
        Poly::new(self.0.iter().skip(n).cloned().collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(Rat::one()), |acc, _| &acc * self)
    }

    /// Value at `t`.
    pub fn eval(&self, t: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != Rat::one() {
                        write!(f, "{mag}·")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// The binary cubic `f = aS³ + bS²T + cST² + dT³` with coefficients in the
/// local ring at `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicForm {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl CubicForm {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly) -> CubicForm {
        CubicForm { a, b, c, d }
    }

    /// A cubic with constant coefficients.
    pub fn constant(a: i64, b: i64, c: i64, d: i64) -> CubicForm {
        let p = |x: i64| Poly::from_ints(&[x]);
        CubicForm::new(p(a), p(b), p(c), p(d))
    }

    pub fn coefficients(&self) -> [&Poly; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|p| p.is_zero())
    }

    /// `tⁿ·f`.
    pub fn times_t_pow(&self, n: usize) -> CubicForm {
        CubicForm::new(self.a.shift_up(n), self.b.shift_up(n), self.c.shift_up(n), self.d.shift_up(n))
    }

    /// `p·f` for a polynomial `p`.
    pub fn times(&self, p: &Poly) -> CubicForm {
        CubicForm::new(&self.a * p, &self.b * p, &self.c * p, &self.d * p)
    }
}

/// `Δ(f) = b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd`.
pub fn discriminant(f: &CubicForm) -> Poly {
    let (a, b, c, d) = (&f.a, &f.b, &f.c, &f.d);
    let term = |k: i64, factors: &[&Poly]| factors.iter().fold(Poly::constant(Rat::int(k)), |acc, p| &acc * p);
    let parts = [
        term(1, &[b, b, c, c]),
        term(-4, &[a, c, c, c]),
        term(-4, &[b, b, b, d]),
        term(-27, &[a, a, d, d]),
        term(18, &[a, b, c, d]),
    ];
    parts.iter().fold(Poly::zero(), |acc, p| &acc + p)
}

/// The decomposition `f = tⁿ·f_H` into the non-flat part `Z = n·[t = 0]`
/// and the flat part `f_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDecomposition {
    pub n: usize,
    pub f_h: CubicForm,
    /// Whether `Δ(f) = Δ(f_H)·t^{4n}` holds as polynomials.
    pub identity_holds: bool,
}

/// Splits off the largest power of `t` dividing all coefficients of `f`, so
/// that `br φ = br φ_H + 4Z`.
pub fn branch_decompose(f: &CubicForm) -> Result<BranchDecomposition> {
    let n = f
        .coefficients()
        .iter()
        .filter_map(|p| p.valuation())
        .min()
        .ok_or_else(|| Error::InvalidInput("the cubic form is identically zero".into()))?;
    let f_h = CubicForm::new(f.a.shift_down(n), f.b.shift_down(n), f.c.shift_down(n), f.d.shift_down(n));
    let identity_holds = discriminant(f) == discriminant(&f_h).shift_up(4 * n);
    Ok(BranchDecomposition { n, f_h, identity_holds })
}

/// The Maroni invariant `|m − n|` of `O(m) ⊕ O(n)`.
pub fn maroni(m: &Rat, n: &Rat) -> Rat {
    (m - n).abs()
}

/// Where a singular point of `D` sits on the surface.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DLocation {
    SmoothPoint,
    /// An `A₁` (or other isolated singular) point of the surface.
    SingularPoint { component: String, id: String },
    /// A point of the double curve joining `a` and `b`.
    DoubleCurve { a: String, b: String },
}

impl fmt::Display for DLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DLocation::SmoothPoint => write!(f, "smooth point"),
            DLocation::SingularPoint { component, id } => write!(f, "singular point {id} of {component}"),
            DLocation::DoubleCurve { a, b } => write!(f, "double curve {a}~{b}"),
        }
    }
}

/// An `A_n` singularity of the divisor `D` (`n ≤ 4`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SingularityOfD {
    pub a_n: u32,
    pub location: DLocation,
    /// δ-invariant `⌈n/2⌉`.
    pub delta: u32,
}

impl SingularityOfD {
    pub fn new(a_n: u32, location: DLocation) -> Result<SingularityOfD> {
        if a_n == 0 || a_n > 4 {
            return Err(Error::InvalidInput(format!("D can only have A1..A4 singularities, got A{a_n}")));
        }
        Ok(SingularityOfD { a_n, location, delta: a_n.div_ceil(2) })
    }

    /// Log canonical threshold of the curve singularity.
    pub fn lct(&self) -> Rat {
        lct_a(self.a_n)
    }

    /// Multiplicity of the point in the branch divisor of `D → P`: `2δ`
    /// from the singularity plus 1 if the normalization ramifies there.
    pub fn branch_multiplicity(&self) -> u32 {
        2 * self.delta + u32::from(self.a_n.is_multiple_of(2))
    }
}

impl fmt::Display for SingularityOfD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{} at {} (δ = {})", self.a_n, self.location, self.delta)
    }
}

/// Log canonical threshold `1/2 + 1/(n+1)` of an `A_n` curve singularity.
pub fn lct_a(n: u32) -> Rat {
    assert!(n >= 1, "A_n needs n ≥ 1");
    Rat::new(1, 2) + Rat::new(1, i64::from(n) + 1)
}

/// The local models of `D` over a point of the base where the cover is
/// not flat (`D` contains the fiber `t = 0`), and the flat `A_n` models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalModel {
    /// `ty = 0`: the fiber meets the flat part transversely.
    NodeWithFiber,
    /// `t(y² − t) = 0`: the flat part is simply ramified over the point.
    TacnodeWithFiber,
    /// An `A_n` singularity of the flat part.
    A(u32),
}

impl LocalModel {
    pub fn lct(&self) -> Rat {
        match self {
            LocalModel::NodeWithFiber => lct_a(1),
            LocalModel::TacnodeWithFiber => lct_a(3),
            LocalModel::A(n) => lct_a(*n),
        }
    }
}

/// Reads the singularity of `D` at a point from the branch multiplicities
/// of `D → P` and of its normalization: `δ = (b − b_ν)/2`, and the
/// normalization is ramified exactly for the unibranch types `A₂`, `A₄`.
pub fn classify_d_singularity(branch_mult: u32, normalized_branch_mult: u32) -> Result<SingularityOfD> {
    if branch_mult < normalized_branch_mult || !(branch_mult - normalized_branch_mult).is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "branch multiplicities {branch_mult} and {normalized_branch_mult} must differ by an even non-negative number"
        )));
    }
    let delta = (branch_mult - normalized_branch_mult) / 2;
    if delta > 2 {
        return Err(Error::ExceedsMultiplicityBound(delta));
    }
    if delta == 0 {
        return Err(Error::InvalidInput("δ = 0: D is smooth at the point".into()));
    }
    let a_n = if normalized_branch_mult > 0 { 2 * delta } else { 2 * delta - 1 };
    SingularityOfD::new(a_n, DLocation::SmoothPoint)
}

/// What `C` looks like over one component `L` of the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveTopology {
    /// `C ×_P L` connected of the given arithmetic genus.
    Connected { genus: u32 },
    /// `C ×_P L = H ∪ L′` with `L′ ≅ L` attached nodally at one point.
    LineAttached { genus: u32 },
    /// `C ×_P L = H ⊔ L′` with `L′ ≅ L`.
    LineDisjoint { genus: u32 },
}

/// One component of the base orbi-curve `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseComponent {
    pub id: String,
    /// Number of nodes of `P` on this component.
    pub nodes: u32,
    /// Order of the automorphism group at the nodes (1 or 3).
    pub orbifold_order: u32,
    /// Splitting degrees `(m, n)` of the Tschirnhausen bundle `E_φ|_L`.
    pub tschirnhausen: (Rat, Rat),
    pub topology: CurveTopology,
}

impl BaseComponent {
    /// `deg E_L = m + n`.
    pub fn degree(&self) -> Rat {
        &self.tschirnhausen.0 + &self.tschirnhausen.1
    }

    /// Degree of the branch divisor of the coarse map, `2 deg E_L + (d − 1)`
    /// per stacky node.
    pub fn coarse_branch_degree(&self) -> Rat {
        Rat::int(2) * self.degree() + Rat::int(i64::from((self.orbifold_order - 1) * self.nodes))
    }
}

/// A point of the branch divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub point: String,
    pub multiplicity: u32,
    pub component: String,
}

/// A genus-4 triple cover `φ: C → P`, described by its Tschirnhausen data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDescriptor {
    pub base: Vec<BaseComponent>,
    pub branch_divisor: Vec<BranchPoint>,
    /// Singularities of `D` (the image of `C`).
    #[serde(default)]
    pub d_singularities: Vec<SingularityOfD>,
    /// Contact data the Tschirnhausen degrees do not determine, in the
    /// `--sub` flag syntax of [`InputCase::parse`].
    #[serde(default)]
    pub flags: Vec<String>,
}

impl CoverDescriptor {
    /// Sum of the branch multiplicities on a base component.
    pub fn branch_degree_on(&self, component: &str) -> u32 {
        self.branch_divisor.iter().filter(|b| b.component == component).map(|b| b.multiplicity).sum()
    }

    /// Checks the descriptor invariants: total branch degree 12, branch
    /// degree `2 deg E_L` on each component, degrees in `(1/d)ℤ`, `d ∈ {1, 3}`.
    pub fn validate(&self) -> Result<()> {
        if self.base.is_empty() {
            return Err(Error::InvalidInput("the base has no components".into()));
        }
        for comp in &self.base {
            match comp.orbifold_order {
                1 | 3 => {}
                d => return Err(Error::UnsupportedOrbifoldOrder(d)),
            }
            let d = Rat::int(i64::from(comp.orbifold_order));
            for deg in [&comp.tschirnhausen.0, &comp.tschirnhausen.1] {
                if !(deg * &d).is_integer() {
                    return Err(Error::InvalidInput(format!("degree {deg} on {} is not in (1/{d})ℤ", comp.id)));
                }
            }
            let br = Rat::int(i64::from(self.branch_degree_on(&comp.id)));
            if br != Rat::int(2) * comp.degree() {
                return Err(Error::InvalidInput(format!("branch degree {br} on {} differs from 2·deg E = {}", comp.id, Rat::int(2) * comp.degree())));
            }
        }
        for b in &self.branch_divisor {
            if !self.base.iter().any(|c| c.id == b.component) {
                return Err(Error::MissingComponent(b.component.clone()));
            }
        }
        let total: u32 = self.branch_divisor.iter().map(|b| b.multiplicity).sum();
        if total != 12 {
            return Err(Error::InvalidInput(format!("total branch degree is {total}, genus-4 triple covers have 12")));
        }
        Ok(())
    }

    /// A representative cover of a case: generic branch points, with the
    /// `A_n` points of `D` placed over their own branch points.
    pub fn for_case(case: &InputCase) -> CoverDescriptor {
        let comp = |id: &str, nodes, d, (m, n): (Rat, Rat), topology| BaseComponent { id: id.into(), nodes, orbifold_order: d, tschirnhausen: (m, n), topology };
        let i = Rat::int;
        let (base, sings) = match case {
            InputCase::MaroniGeneral { d_singularities } => (vec![comp("P", 0, 1, (i(3), i(3)), CurveTopology::Connected { genus: 4 })], d_singularities.clone()),
            InputCase::MaroniSpecial(_) => (vec![comp("P", 0, 1, (i(2), i(4)), CurveTopology::Connected { genus: 4 })], vec![]),
            InputCase::HyperellipticTail(_) => (vec![comp("P", 0, 1, (i(1), i(5)), CurveTopology::LineAttached { genus: 4 })], vec![]),
            InputCase::StableChainThirdThird => {
                let t = (Rat::new(4, 3), Rat::new(5, 3));
                (vec![comp("P1", 1, 3, t.clone(), CurveTopology::Connected { genus: 2 }), comp("P2", 1, 3, t, CurveTopology::Connected { genus: 2 })], vec![])
            }
            InputCase::F3F3 | InputCase::F1F1 | InputCase::F3F1(_) => {
                let f3 = |id| comp(id, 1, 1, (i(0), i(3)), CurveTopology::LineDisjoint { genus: 2 });
                let f1 = |id| comp(id, 1, 1, (i(1), i(2)), CurveTopology::Connected { genus: 1 });
                let base = match case {
                    InputCase::F3F3 => vec![f3("P1"), f3("P2")],
                    InputCase::F1F1 => vec![f1("P1"), f1("P2")],
                    _ => vec![f3("P1"), f1("P2")],
                };
                (base, vec![])
            }
        };
        let mut branch = Vec::new();
        let mut d_singularities = Vec::new();
        for c in &base {
            let mut budget = u32::try_from((Rat::int(2) * c.degree()).to_i64().expect("small")).expect("non-negative");
            if c.id == base[0].id {
                for (k, &n) in sings.iter().enumerate() {
                    let s = SingularityOfD::new(n, DLocation::SmoothPoint).expect("validated case");
                    budget -= s.branch_multiplicity();
                    branch.push(BranchPoint { point: format!("s{}", k + 1), multiplicity: s.branch_multiplicity(), component: c.id.clone() });
                    d_singularities.push(s);
                }
            }
            for k in 0..budget {
                branch.push(BranchPoint { point: format!("{}.b{}", c.id, k + 1), multiplicity: 1, component: c.id.clone() });
            }
        }
        CoverDescriptor { base, branch_divisor: branch, d_singularities, flags: case.sub_flags() }
    }
}

/// Whether the coarse base with the branch divisor weighted `1/6 + ε` is
/// Hassett stable: every point has multiplicity ≤ 5 and every component
/// has `−2 + m + (1/6 + ε)k > 0`.
pub fn hassett_stable(cover: &CoverDescriptor) -> bool {
    if cover.branch_divisor.iter().any(|b| b.multiplicity > 5) {
        return false;
    }
    cover.base.iter().all(|c| {
        let k = Rat::int(i64::from(cover.branch_degree_on(&c.id)));
        let v = EpsLinear::new(Rat::int(i64::from(c.nodes) - 2) + &k * Rat::new(1, 6), k);
        v.sign() == Sign::Positive
    })
}

/// Result of the ampleness test on one Tschirnhausen component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ampleness {
    Ample,
    /// The extremal ray on which `K + (2/3+ε)D` is not positive, with the
    /// value there.
    NotAmple { ray: String, value: EpsLinear },
}

/// Decides ampleness of `K + (2/3+ε)D` on `P(O(a) ⊕ O(b))` over a base
/// component with `m` nodes: with `K ∼ (m+n−2)F − 2ζ` and `D ∼ 3ζ − nF`
/// it evaluates on the fiber `F` and the extremal section `σ ∼ ζ − bF`.
pub fn ampleness_on_tschirnhausen(m: u32, degrees: (&Rat, &Rat), orbifold_order: u32) -> Result<Ampleness> {
    if orbifold_order != 1 && orbifold_order != 3 {
        return Err(Error::UnsupportedOrbifoldOrder(orbifold_order));
    }
    let (a, b) = if degrees.0 <= degrees.1 { degrees } else { (degrees.1, degrees.0) };
    let n = a + b;
    let surface = CurveConfig::new("S", 2).with_curve("zeta", n.clone(), 0, &[]).with_curve("F", Rat::zero(), 0, &[]).with_meet("zeta", "F", Rat::one());
    let pair = LogPair::new(vec![surface], vec![], DivisorClass::new(), DivisorClass::new());
    let k = DivisorClass::from_terms(&[("F", Rat::int(i64::from(m)) + &n - Rat::int(2)), ("zeta", Rat::int(-2))]);
    let d = DivisorClass::from_terms(&[("zeta", Rat::int(3)), ("F", -n.clone())]);
    let sigma = DivisorClass::from_terms(&[("zeta", Rat::one()), ("F", -b.clone())]);
    for (ray, class) in [("F", DivisorClass::curve("F")), ("sigma", sigma)] {
        let kv = pair.class_intersect(&k, &class)?;
        let dv = pair.class_intersect(&d, &class)?;
        let value = EpsLinear::new(kv + Rat::new(2, 3) * &dv, dv);
        if value.sign() != Sign::Positive {
            return Ok(Ampleness::NotAmple { ray: ray.into(), value });
        }
    }
    Ok(Ampleness::Ample)
}

/// Whether `(S, cD)` is slc: every branch multiplicity is at most 5 and
/// `c` is at most the log canonical threshold of every singularity of `D`.
pub fn slc_check(cover: &CoverDescriptor, c: &Rat) -> bool {
    if cover.branch_divisor.iter().any(|b| b.multiplicity > 5) {
        return false;
    }
    let threshold = cover.d_singularities.iter().map(SingularityOfD::lct).fold(Rat::one(), |m, l| if l < m { l } else { m });
    *c <= threshold
}

/// Places a cover in the genus-4 case list from its component count,
/// orbifold orders, Tschirnhausen degrees and curve topology; sub-case
/// contact data comes from the descriptor's flags.
pub fn classify_cover(cover: &CoverDescriptor) -> Result<InputCase> {
    cover.validate()?;
    if !hassett_stable(cover) {
        return Err(Error::NotInGenus4List("the weighted branch divisor is not Hassett stable".into()));
    }
    let sorted = |c: &BaseComponent| {
        let (a, b) = &c.tschirnhausen;
        if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) }
    };
    let i = Rat::int;
    let unknown = || Error::NotInGenus4List(format!("{:?}", cover.base));
    let name = match cover.base.as_slice() {
        [c] => {
            if c.nodes != 0 || c.orbifold_order != 1 {
                return Err(unknown());
            }
            match (sorted(c), &c.topology) {
                (d, CurveTopology::Connected { genus: 4 }) if d == (i(3), i(3)) => "maroni-general",
                (d, CurveTopology::Connected { genus: 4 }) if d == (i(2), i(4)) => "maroni-special",
                (d, CurveTopology::LineAttached { genus: 4 }) if d == (i(1), i(5)) => "hyperelliptic",
                _ => return Err(unknown()),
            }
        }
        [c1, c2] => {
            if c1.nodes != 1 || c2.nodes != 1 || c1.orbifold_order != c2.orbifold_order {
                return Err(unknown());
            }
            let kind = |c: &BaseComponent| -> Result<u32> {
                match (c.orbifold_order, sorted(c), &c.topology) {
                    (3, d, CurveTopology::Connected { genus: 2 }) if d == (Rat::new(4, 3), Rat::new(5, 3)) => Ok(13),
                    (1, d, CurveTopology::LineDisjoint { genus: 2 }) if d == (i(0), i(3)) => Ok(3),
                    (1, d, CurveTopology::Connected { genus: 1 }) if d == (i(1), i(2)) => Ok(1),
                    _ => Err(unknown()),
                }
            };
            match (kind(c1)?, kind(c2)?) {
                (13, 13) => "third-third",
                (3, 3) => "f3f3",
                (1, 1) => "f1f1",
                (3, 1) | (1, 3) => "f3f1",
                _ => return Err(unknown()),
            }
        }
        _ => return Err(unknown()),
    };
    if name == "maroni-general" {
        return Ok(InputCase::MaroniGeneral { d_singularities: cover.d_singularities.iter().map(|s| s.a_n).collect() });
    }
    InputCase::parse(name, &cover.flags)
}

/// The Tschirnhausen pair `(S, D)` of a cover.
pub fn pair_from_cover(cover: &CoverDescriptor) -> Result<LogPair> {
    input_pair(&classify_cover(cover)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&CubicForm::constant(1, 0, 0, 1)), Poly::from_ints(&[-27]));
        assert_eq!(discriminant(&CubicForm::constant(1, 0, 0, 0)), Poly::zero());
        assert_eq!(discriminant(&CubicForm::constant(1, 0, -1, 0)), Poly::from_ints(&[4]));
    }

    #[test]
    fn branch_decomposition_examples() {
        let f = CubicForm::constant(1, 0, 0, 1).times_t_pow(1);
        let dec = branch_decompose(&f).unwrap();
        assert_eq!(dec.n, 1);
        assert!(dec.identity_holds);
        assert_eq!(discriminant(&f), Poly::monomial(Rat::int(-27), 4));
        let g = CubicForm::constant(1, 0, -1, 0).times_t_pow(2);
        assert_eq!(branch_decompose(&g).unwrap().n, 2);
        assert_eq!(discriminant(&g), Poly::monomial(Rat::int(4), 8));
        let u = CubicForm::constant(1, 2, 3, 4);
        assert_eq!(branch_decompose(&u).unwrap().f_h, u);
    }

    #[test]
    fn maroni_examples() {
        assert_eq!(maroni(&Rat::int(3), &Rat::int(3)), Rat::zero());
        assert_eq!(maroni(&Rat::int(2), &Rat::int(4)), Rat::int(2));
        assert_eq!(maroni(&Rat::new(4, 3), &Rat::new(5, 3)), Rat::new(1, 3));
    }

    #[test]
    fn ampleness_examples() {
        let i = Rat::int;
        assert_eq!(ampleness_on_tschirnhausen(0, (&i(3), &i(3)), 1).unwrap(), Ampleness::Ample);
        assert!(matches!(ampleness_on_tschirnhausen(0, (&i(2), &i(4)), 1).unwrap(), Ampleness::NotAmple { .. }));
        assert!(matches!(ampleness_on_tschirnhausen(1, (&i(1), &i(2)), 1).unwrap(), Ampleness::NotAmple { .. }));
        assert_eq!(ampleness_on_tschirnhausen(1, (&Rat::new(4, 3), &Rat::new(5, 3)), 3).unwrap(), Ampleness::Ample);
        assert_eq!(ampleness_on_tschirnhausen(1, (&Rat::new(1, 2), &Rat::new(5, 2)), 2), Err(Error::UnsupportedOrbifoldOrder(2)));
    }

    #[test]
    fn lct_and_d_singularities() {
        assert_eq!(lct_a(4), Rat::new(7, 10));
        assert_eq!(LocalModel::TacnodeWithFiber.lct(), Rat::new(3, 4));
        assert_eq!(LocalModel::NodeWithFiber.lct(), Rat::one());
        assert_eq!(classify_d_singularity(2, 0).unwrap().a_n, 1);
        assert_eq!(classify_d_singularity(5, 1).unwrap().a_n, 4);
        assert_eq!(classify_d_singularity(7, 1), Err(Error::ExceedsMultiplicityBound(3)));
        for n in 1..=4 {
            let s = SingularityOfD::new(n, DLocation::SmoothPoint).unwrap();
            let normalized = (n + 1) % 2;
            assert_eq!(classify_d_singularity(s.branch_multiplicity(), normalized).unwrap(), s);
        }
    }

    #[test]
    fn hassett_examples() {
        let generic = CoverDescriptor::for_case(&InputCase::MaroniGeneral { d_singularities: vec![] });
        assert!(hassett_stable(&generic));
        let mut six = generic.clone();
        six.branch_divisor.truncate(6);
        six.branch_divisor.push(BranchPoint { point: "x".into(), multiplicity: 6, component: "P".into() });
        assert!(!hassett_stable(&six));
        assert!(hassett_stable(&CoverDescriptor::for_case(&InputCase::F3F3)));
    }

    #[test]
    fn every_case_classifies_back() {
        for case in InputCase::all() {
            let cover = CoverDescriptor::for_case(&case);
            cover.validate().unwrap();
            assert_eq!(classify_cover(&cover).unwrap(), case, "{case}");
        }
    }

    #[test]
    fn slc_examples() {
        let a4 = CoverDescriptor::for_case(&InputCase::MaroniGeneral { d_singularities: vec![4] });
        assert!(slc_check(&a4, &Rat::new(2, 3)));
        assert!(slc_check(&a4, &Rat::new(7, 10)));
        assert!(!slc_check(&a4, &Rat::new(71, 100)));
    }
}
