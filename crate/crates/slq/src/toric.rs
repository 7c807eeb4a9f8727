//! Lattice polygons of toric surfaces and the cyclic quotient singularities
//! read off their vertices.

use crate::error::Result;
use crate::singularity::QuotientSingularity;

pub type Point = (i64, i64);

/// A convex lattice polygon, vertices in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<Point>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn primitive(v: Point) -> Point {
    let g = gcd(v.0, v.1);
    (v.0 / g, v.1 / g)
}

fn cross(a: Point, b: Point) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: Point, b: Point) -> i64 {
    a.0 * b.0 + a.1 * b.1
}

impl Polygon {
    pub fn new(vertices: &[Point]) -> Polygon {
        Polygon { vertices: vertices.to_vec() }
    }

    /// `max x − min x`.
    pub fn width_x(&self) -> i64 {
        let xs = self.vertices.iter().map(|v| v.0);
        xs.clone().max().unwrap_or(0) - xs.min().unwrap_or(0)
    }

    /// The edges as vertex pairs (cyclic).
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        (0..n).map(|i| (self.vertices[i], self.vertices[(i + 1) % n])).collect()
    }

    /// An edge shared with `other` (in either orientation).
    pub fn shared_edge(&self, other: &Polygon) -> Option<(Point, Point)> {
        let theirs = other.edges();
        self.edges().into_iter().find(|&(a, b)| theirs.iter().any(|&(c, d)| (a, b) == (c, d) || (a, b) == (d, c)))
    }

    /// Twice the area (shoelace).
    pub fn double_area(&self) -> i64 {
        self.edges().iter().map(|&(a, b)| cross(a, b)).sum::<i64>().abs()
    }

    /// The singularity of the toric surface at the fixed point of each
    /// vertex (`None` where it is smooth): the normal cone spanned by the
    /// inward normals `n₁, n₂` of the two edges is `1/n(1,q)` with
    /// `n = |det(n₁, n₂)|`.
    pub fn vertex_singularities(&self) -> Result<Vec<(Point, Option<QuotientSingularity>)>> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            let v = self.vertices[i];
            let prev = self.vertices[(i + n - 1) % n];
            let next = self.vertices[(i + 1) % n];
            let u1 = primitive((prev.0 - v.0, prev.1 - v.1));
            let u2 = primitive((next.0 - v.0, next.1 - v.1));
            let inward = |u: Point, towards: Point| {
                let nrm = (-u.1, u.0);
                if dot(nrm, towards) > 0 { nrm } else { (u.1, -u.0) }
            };
            let (mut n1, mut n2) = (inward(u1, u2), inward(u2, u1));
            if cross(n2, n1) < 0 {
                std::mem::swap(&mut n1, &mut n2);
            }
            let order = cross(n2, n1);
            if order == 1 {
                out.push((v, None));
                continue;
            }
            // Complete n₁ to a basis (w, n₁) with det(w, n₁) = 1; then
            // n₂ = order·w + b·n₁ and the cone is 1/order(1, −b).
            let (x, y) = bezout(n1.0, n1.1);
            let w = (y, -x);
            let b = cross(w, n2);
            let q = (-b).rem_euclid(order);
            out.push((v, Some(QuotientSingularity::cyclic(u32::try_from(order).expect("small"), u32::try_from(q).expect("small"))?)));
        }
        Ok(out)
    }

    /// The singular vertices.
    pub fn singular_vertices(&self) -> Result<Vec<(Point, QuotientSingularity)>> {
        Ok(self.vertex_singularities()?.into_iter().filter_map(|(v, s)| s.map(|s| (v, s))).collect())
    }
}

/// `(x, y)` with `x·a + y·b = gcd(a, b) = 1`.
fn bezout(a: i64, b: i64) -> (i64, i64) {
    if b == 0 {
        return (a.signum(), 0);
    }
    let (x, y) = bezout(b, a.rem_euclid(b));
    let q = a.div_euclid(b);
    (y, x - q * y)
}

/// The two quadrilaterals whose union is the moment polytope of the
/// non-normal toric surface of the `F₃ ∪ F₃` limit.
pub fn chain_quadrilaterals() -> [Polygon; 2] {
    [Polygon::new(&[(-3, -2), (-3, -1), (3, 1), (3, -2)]), Polygon::new(&[(-3, -1), (-3, 2), (3, 2), (3, 1)])]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrilaterals() {
        let [a, b] = chain_quadrilaterals();
        assert_eq!(a.width_x(), 6);
        assert_eq!(b.width_x(), 6);
        let e = a.shared_edge(&b).unwrap();
        assert!(e == ((-3, -1), (3, 1)) || e == ((3, 1), (-3, -1)));
    }

    #[test]
    fn each_piece_has_a_mu3_and_an_a2_point_on_the_shared_edge() {
        let mu3 = QuotientSingularity::cyclic(3, 1).unwrap();
        for p in chain_quadrilaterals() {
            let sing = p.singular_vertices().unwrap();
            let mut kinds: Vec<_> = sing.iter().map(|(_, s)| s.clone()).collect();
            kinds.sort_by_key(|s| s.to_string());
            assert_eq!(kinds, {
                let mut v = vec![QuotientSingularity::a(2), mu3.clone()];
                v.sort_by_key(|s| s.to_string());
                v
            });
            assert!(sing.iter().all(|(v, _)| *v == (-3, -1) || *v == (3, 1)));
        }
    }

    #[test]
    fn square_is_smooth() {
        let sq = Polygon::new(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert!(sq.singular_vertices().unwrap().is_empty());
        // P(1,1,2): the triangle (0,0), (2,0), (0,1) has one A1 vertex.
        let t = Polygon::new(&[(0, 0), (2, 0), (0, 1)]);
        let s = t.singular_vertices().unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].1, QuotientSingularity::a(1));
    }
}
