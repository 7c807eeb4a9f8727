//! Cyclic quotient singularities, the glued double-curve records of
//! non-normal surfaces, and Hirzebruch–Jung continued fractions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rat::Rat;

/// A surface singularity record.
///
/// Cyclic points are kept in canonical form `1/n(1,q)` with
/// `q = min(q, q⁻¹ mod n)`, so the reading direction of a resolution chain
/// never matters for equality. `A_k` is the cyclic point `1/(k+1)(1,k)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotientSingularity {
    /// Isolated cyclic quotient point `1/n(1,q)`, `n ≥ 2`.
    Cyclic { n: u32, q: u32 },
    /// Point of a double curve with local model `(xy=0) ⊂ 1/n(w₁,w₂,w₃)`.
    /// The first glued sheet is `{y=0}` (weights `w₁, w₃`), the second is
    /// `{x=0}` (weights `w₂, w₃`); `w₁ + w₂ ≡ 0 mod n`.
    Glued { order: u32, weights: [u32; 3] },
    /// Generic point of a double curve, `(xy=0) ⊂ A³`.
    NormalCrossing,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `q` modulo `n` (requires `gcd(q, n) = 1`).
pub fn inverse_mod(q: u32, n: u32) -> u32 {
    if n == 1 {
        return 0;
    }
    (1..n).find(|&x| (u64::from(x) * u64::from(q)) % u64::from(n) == 1).expect("unit modulo n")
}

impl QuotientSingularity {
    /// `1/n(1,q)` in canonical form.
    pub fn cyclic(n: u32, q: u32) -> Result<QuotientSingularity> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("cyclic quotient order must be at least 2, got {n}")));
        }
        let q = q % n;
        if q == 0 || gcd(q, n) != 1 {
            return Err(Error::InvalidInput(format!("1/{n}(1,{q}) is not an isolated cyclic quotient")));
        }
        Ok(QuotientSingularity::Cyclic { n, q: q.min(inverse_mod(q, n)) })
    }

    /// The Du Val point `A_k = 1/(k+1)(1,k)`.
    pub fn a(k: u32) -> QuotientSingularity {
        QuotientSingularity::cyclic(k + 1, k).expect("k >= 1")
    }

    /// `(xy=0) ⊂ 1/n(w₁,w₂,w₃)`.
    pub fn glued(order: u32, weights: [u32; 3]) -> Result<QuotientSingularity> {
        if order < 2 {
            return Err(Error::InvalidInput("glued record needs order at least 2".into()));
        }
        let [w1, w2, w3] = weights;
        if (w1 + w2) % order != 0 || weights.iter().any(|&w| w % order == 0 || gcd(w, order) != 1) {
            return Err(Error::InvalidInput(format!(
                "(xy=0) ⊂ 1/{order}({w1},{w2},{w3}) needs unit weights with w1 + w2 ≡ 0"
            )));
        }
        Ok(QuotientSingularity::Glued { order, weights: [w1 % order, w2 % order, w3 % order] })
    }

    /// `Some(k)` when this is an `A_k` point.
    pub fn a_index(&self) -> Option<u32> {
        match *self {
            QuotientSingularity::Cyclic { n, q } if q == n - 1 => Some(n - 1),
            _ => None,
        }
    }

    /// Order of the local group (1 for a normal crossing point).
    pub fn order(&self) -> u32 {
        match *self {
            QuotientSingularity::Cyclic { n, .. } => n,
            QuotientSingularity::Glued { order, .. } => order,
            QuotientSingularity::NormalCrossing => 1,
        }
    }
}

impl fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            QuotientSingularity::Cyclic { n, q } if q == n - 1 => write!(f, "A{}", n - 1),
            QuotientSingularity::Cyclic { n, q } => write!(f, "1/{n}(1,{q})"),
            QuotientSingularity::Glued { order, weights: [a, b, c] } => {
                write!(f, "(xy=0) ⊂ 1/{order}({a},{b},{c})")
            }
            QuotientSingularity::NormalCrossing => write!(f, "(xy=0) ⊂ A^3"),
        }
    }
}

impl fmt::Debug for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuotientSingularity {
    type Err = Error;

    /// Accepts `A2`, `A_2`, `1/9(1,2)`, `(xy=0) ⊂ 1/3(2,1,1)` (or `in`
    /// instead of `⊂`) and `(xy=0) ⊂ A^3`.
    fn from_str(s: &str) -> Result<QuotientSingularity> {
        let bad = || Error::InvalidInput(format!("unrecognised singularity {s:?}"));
        let t = s.trim();
        let nums = |body: &str| -> Result<Vec<u32>> {
            body.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad())).collect()
        };
        let quotient = |t: &str| -> Result<(u32, Vec<u32>)> {
            let rest = t.strip_prefix("1/").ok_or_else(bad)?;
            let (n, body) = rest.split_once('(').ok_or_else(bad)?;
            let body = body.strip_suffix(')').ok_or_else(bad)?;
            Ok((n.trim().parse().map_err(|_| bad())?, nums(body)?))
        };
        if let Some(rest) = t.strip_prefix("(xy=0)") {
            let rest = rest.trim_start();
            let rest = rest
                .strip_prefix('⊂')
                .or_else(|| rest.strip_prefix("in"))
                .ok_or_else(bad)?
                .trim();
            if rest == "A^3" || rest == "A3" {
                return Ok(QuotientSingularity::NormalCrossing);
            }
            let (n, w) = quotient(rest)?;
            let w: [u32; 3] = w.try_into().map_err(|_| bad())?;
            return QuotientSingularity::glued(n, w);
        }
        if let Some(k) = t.strip_prefix('A') {
            let k: u32 = k.trim_start_matches('_').parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            return Ok(QuotientSingularity::a(k));
        }
        let (n, w) = quotient(t)?;
        match w.as_slice() {
            [1, q] => QuotientSingularity::cyclic(n, *q),
            [a, b] if gcd(*a, n) == 1 => {
                // 1/n(a,b) = 1/n(1, b·a⁻¹)
                QuotientSingularity::cyclic(n, (b * inverse_mod(*a, n)) % n)
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for QuotientSingularity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuotientSingularity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Reads the Hirzebruch–Jung continued fraction of a resolution chain
/// (`n/q = a₁ − 1/(a₂ − …)`, `aᵢ = −selfᵢ`) and returns `1/n(1,q)`.
pub fn hj_chain_to_singularity(self_ints: &[i64]) -> Result<QuotientSingularity> {
    let (n, q) = hj_fraction(self_ints)?;
    QuotientSingularity::cyclic(n, q)
}

/// The pair `(n, q)` of a chain, read from its first entry (not normalised).
pub fn hj_fraction(self_ints: &[i64]) -> Result<(u32, u32)> {
    if self_ints.is_empty() {
        return Err(Error::NotContractibleChain("empty chain".into()));
    }
    if let Some(bad) = self_ints.iter().find(|&&s| s > -2) {
        return Err(Error::NotContractibleChain(format!("self-intersection {bad} > -2 in chain")));
    }
    let mut x = Rat::int(-self_ints[self_ints.len() - 1]);
    for &s in self_ints[..self_ints.len() - 1].iter().rev() {
        x = Rat::int(-s) - x.recip();
    }
    let n = u32::try_from(x.numer()).map_err(|_| Error::NotContractibleChain("order overflow".into()))?;
    let q = u32::try_from(x.denom()).map_err(|_| Error::NotContractibleChain("weight overflow".into()))?;
    Ok((n, q))
}

/// Hirzebruch–Jung expansion of `n/q` as self-intersections `[-a₁, …, -a_k]`.
pub fn hj_expansion(n: u32, q: u32) -> Vec<i64> {
    let (mut num, mut den) = (i64::from(n), i64::from(q));
    let mut out = Vec::new();
    while den > 0 {
        // a = ceil(num/den)
        let a = (num + den - 1) / den;
        out.push(-a);
        let next = a * den - num;
        num = den;
        den = next;
    }
    out
}

/// Result of resolving a connected configuration of contracted curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolvedPoint {
    /// Everything blows down to a smooth point.
    Smooth,
    /// A Hirzebruch–Jung chain; `chain` lists configuration indices in
    /// chain order and `self_ints` their self-intersections after
    /// blowing down all (−1)-curves.
    Chain { singularity: QuotientSingularity, chain: Vec<usize>, self_ints: Vec<i64> },
}

/// Resolves a connected configuration of smooth rational curves (given by
/// its integral intersection matrix) to a singularity: repeatedly blows down
/// (−1)-curves, then reads the remaining chain.
pub fn resolve_configuration(gram: &Matrix) -> Result<ResolvedPoint> {
    let to_int = |r: &Rat| {
        r.to_i64().ok_or_else(|| Error::UnsupportedContraction("non-integral intersection in a contracted configuration".into()))
    };
    let mut alive: Vec<usize> = (0..gram.len()).collect();
    let mut m: Vec<Vec<i64>> = gram.iter().map(|row| row.iter().map(to_int).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    while let Some(pos) = alive.iter().position(|&i| m[i][i] == -1) {
        let e = alive.remove(pos);
        for &a in &alive {
            for &b in &alive {
                if a <= b {
                    let v = m[a][b] + m[a][e] * m[b][e];
                    m[a][b] = v;
                    m[b][a] = v;
                }
            }
        }
    }
    if alive.is_empty() {
        return Ok(ResolvedPoint::Smooth);
    }
    let shape_err = || Error::UnsupportedContraction("contracted configuration is not a chain".into());
    let neighbours = |i: usize| alive.iter().copied().filter(|&j| j != i && m[i][j] != 0).collect::<Vec<_>>();
    for &i in &alive {
        if m[i][i] > -2 || neighbours(i).len() > 2 || neighbours(i).iter().any(|&j| m[i][j] != 1) {
            return Err(shape_err());
        }
    }
    let start = *alive.iter().find(|&&i| neighbours(i).len() <= 1).ok_or_else(shape_err)?;
    let mut chain = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = neighbours(cur).into_iter().find(|&j| Some(j) != prev);
        match next {
            Some(j) => {
                prev = Some(cur);
                cur = j;
                chain.push(j);
            }
            None => break,
        }
    }
    if chain.len() != alive.len() {
        return Err(shape_err());
    }
    let self_ints: Vec<i64> = chain.iter().map(|&i| m[i][i]).collect();
    let singularity = hj_chain_to_singularity(&self_ints)?;
    Ok(ResolvedPoint::Chain { singularity, chain, self_ints })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_identifies_inverse_weights() {
        assert_eq!(QuotientSingularity::cyclic(9, 5).unwrap(), QuotientSingularity::cyclic(9, 2).unwrap());
        assert_eq!(QuotientSingularity::cyclic(3, 2).unwrap(), QuotientSingularity::a(2));
        assert!(QuotientSingularity::cyclic(9, 3).is_err());
    }

    #[test]
    fn chains_from_the_flips() {
        assert_eq!(hj_chain_to_singularity(&[-5, -2]).unwrap(), QuotientSingularity::cyclic(9, 2).unwrap());
        assert_eq!(hj_chain_to_singularity(&[-2, -5]).unwrap(), QuotientSingularity::cyclic(9, 2).unwrap());
        assert_eq!(hj_chain_to_singularity(&[-2]).unwrap(), QuotientSingularity::a(1));
        assert_eq!(hj_chain_to_singularity(&[-2, -2]).unwrap(), QuotientSingularity::a(2));
        assert_eq!(hj_chain_to_singularity(&[-3]).unwrap(), QuotientSingularity::cyclic(3, 1).unwrap());
        assert!(matches!(hj_chain_to_singularity(&[-1]), Err(Error::NotContractibleChain(_))));
    }

    #[test]
    fn expansion_inverts_fraction() {
        assert_eq!(hj_expansion(9, 2), vec![-5, -2]);
        assert_eq!(hj_expansion(3, 2), vec![-2, -2]);
        for n in 2..30u32 {
            for q in 1..n {
                if gcd(q, n) == 1 {
                    assert_eq!(hj_fraction(&hj_expansion(n, q)).unwrap(), (n, q));
                }
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["A1", "A2", "1/9(1,2)", "1/3(1,1)", "(xy=0) ⊂ 1/3(2,1,1)", "(xy=0) ⊂ 1/3(1,2,1)", "(xy=0) ⊂ A^3"] {
            let v: QuotientSingularity = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("1/9(1,5)".parse::<QuotientSingularity>().unwrap().to_string(), "1/9(1,2)");
        assert_eq!("1/3(2,1)".parse::<QuotientSingularity>().unwrap(), QuotientSingularity::a(2));
        assert!("(xy=0) ⊂ 1/3(1,1,1)".parse::<QuotientSingularity>().is_err());
    }

    #[test]
    fn non_minimal_configuration_resolves() {
        // G1(-2) - s(-5) - v(-1) - E2(-2) - E1(-2) contracts to an A2 point.
        let mut g = vec![vec![Rat::zero(); 5]; 5];
        let selfs = [-2, -5, -1, -2, -2];
        for (i, s) in selfs.iter().enumerate() {
            g[i][i] = Rat::int(*s);
            if i + 1 < 5 {
                g[i][i + 1] = Rat::one();
                g[i + 1][i] = Rat::one();
            }
        }
        match resolve_configuration(&g).unwrap() {
            ResolvedPoint::Chain { singularity, .. } => assert_eq!(singularity, QuotientSingularity::a(2)),
            other => panic!("unexpected {other:?}"),
        }
        let single = vec![vec![Rat::int(-1)]];
        assert_eq!(resolve_configuration(&single).unwrap(), ResolvedPoint::Smooth);
    }
}
