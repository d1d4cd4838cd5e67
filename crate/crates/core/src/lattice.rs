//! Lattice polygons: edges with primitive inward normals, lattice points, the
//! parity system attached to the edges and the half-canonical multiplicities
//! derived from its solutions.

use std::fmt;

use num::integer::{div_ceil, div_floor, gcd};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = (i64, i64);

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// A two-dimensional convex lattice polygon. Vertices are stored
/// counterclockwise without collinear triples, starting from the
/// lexicographically smallest one, so equal polygons have equal vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeData {
    pub index: usize,
    pub start: Point,
    pub end: Point,
    /// Primitive vector from `start` towards `end`.
    pub direction: Point,
    /// Primitive, pointing into the polygon.
    pub normal: Point,
    /// `<normal, p>` for every `p` on the edge; interior points exceed it.
    pub offset: i64,
    pub lattice_length: i64,
}

impl EdgeData {
    pub fn value(&self, p: Point) -> i64 {
        self.normal.0 * p.0 + self.normal.1 * p.1
    }

    /// Lattice points of the edge, from `start` to `end`.
    pub fn points(&self) -> Vec<Point> {
        (0..=self.lattice_length)
            .map(|t| (self.start.0 + t * self.direction.0, self.start.1 + t * self.direction.1))
            .collect()
    }

    /// Whether `p` is a solution of this edge's congruence
    /// `<normal, p> = offset + 1 (mod 2)`.
    pub fn congruence_holds(&self, p: Point) -> bool {
        (self.value(p) - self.offset - 1).rem_euclid(2) == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceSolutions {
    pub classes_mod2: Vec<(u8, u8)>,
    pub in_polygon: Vec<Point>,
    pub rho: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    NoHalfCanonical,
    Excluded,
    Admissible,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::NoHalfCanonical => "no_half_canonical",
            Classification::Excluded => "excluded",
            Classification::Admissible => "admissible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfCanonicalData {
    pub solution: Point,
    /// Indexed by edge.
    pub multiplicities: Vec<i64>,
}

impl LatticePolygon {
    /// Convex hull of `points`; fails unless it is two-dimensional.
    pub fn new(points: &[Point]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::InvalidPolygon(format!("{} distinct points", pts.len())));
        }
        // Andrew's monotone chain with strict turns drops collinear points.
        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return Err(Error::InvalidPolygon("points are collinear".into()));
        }
        Ok(LatticePolygon { vertices: lower })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<EdgeData> {
        let n = self.vertices.len();
        (0..n)
            .map(|k| {
                let start = self.vertices[k];
                let end = self.vertices[(k + 1) % n];
                let (dx, dy) = (end.0 - start.0, end.1 - start.1);
                let len = gcd(dx, dy);
                let direction = (dx / len, dy / len);
                // Counterclockwise order puts the interior on the left.
                let normal = (-direction.1, direction.0);
                EdgeData {
                    index: k,
                    start,
                    end,
                    direction,
                    normal,
                    offset: normal.0 * start.0 + normal.1 * start.1,
                    lattice_length: len,
                }
            })
            .collect()
    }

    /// Twice the Euclidean area, i.e. the normalized volume.
    pub fn twice_area(&self) -> i64 {
        let v = &self.vertices;
        let n = v.len();
        (0..n)
            .map(|k| v[k].0 * v[(k + 1) % n].1 - v[(k + 1) % n].0 * v[k].1)
            .sum()
    }

    pub fn boundary_count(&self) -> i64 {
        self.edges().iter().map(|e| e.lattice_length).sum()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.edges().iter().all(|e| e.value(p) >= e.offset)
    }

    pub fn is_interior(&self, p: Point) -> bool {
        self.edges().iter().all(|e| e.value(p) > e.offset)
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let xs = self.vertices.iter().map(|v| v.0);
        let ys = self.vertices.iter().map(|v| v.1);
        (
            (xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            (xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// Points satisfying `<normal, p> >= offset + slack` for every edge, in
    /// lexicographic order. Rows are scanned in `y`, and each row is cut
    /// down to an integer interval by exact ceiling and floor divisions.
    fn scan(&self, slack: i64) -> Vec<Point> {
        let edges = self.edges();
        let ((x0, y0), (x1, y1)) = self.bounding_box();
        let mut out = Vec::new();
        for y in y0..=y1 {
            let (mut lo, mut hi) = (x0, x1);
            for e in &edges {
                let rhs = e.offset + slack - e.normal.1 * y;
                match e.normal.0.signum() {
                    1 => lo = lo.max(div_ceil(rhs, e.normal.0)),
                    -1 => hi = hi.min(div_floor(rhs, e.normal.0)),
                    _ => {
                        if rhs > 0 {
                            lo = hi + 1;
                        }
                    }
                }
            }
            out.extend((lo..=hi).map(|x| (x, y)));
        }
        out.sort();
        out
    }

    pub fn lattice_points(&self) -> Vec<Point> {
        self.scan(0)
    }

    /// Lattice points in the interior, in lexicographic order.
    pub fn interior_points(&self) -> Vec<Point> {
        self.scan(1)
    }

    pub fn genus(&self) -> usize {
        self.interior_points().len()
    }

    /// Whether the interior lattice points lie on a line (true when there
    /// are at most two of them).
    pub fn interior_collinear(&self) -> bool {
        let pts = self.interior_points();
        pts.len() <= 2 || pts[2..].iter().all(|&p| cross(pts[0], pts[1], p) == 0)
    }

    pub fn congruence_solutions(&self) -> CongruenceSolutions {
        let edges = self.edges();
        let classes_mod2: Vec<(u8, u8)> = [(0u8, 0u8), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .filter(|&(a, b)| edges.iter().all(|e| e.congruence_holds((a as i64, b as i64))))
            .collect();
        let in_polygon: Vec<Point> = self
            .lattice_points()
            .into_iter()
            .filter(|&p| edges.iter().all(|e| e.congruence_holds(p)))
            .collect();
        let rho = in_polygon.len();
        CongruenceSolutions { classes_mod2, in_polygon, rho }
    }

    pub fn classify(&self) -> Classification {
        let sol = self.congruence_solutions();
        if sol.classes_mod2.is_empty() {
            Classification::NoHalfCanonical
        } else if sol.in_polygon.is_empty() {
            Classification::Excluded
        } else {
            Classification::Admissible
        }
    }

    /// Edge multiplicities `(-o - 1)/2`, where `o` is the offset of the edge
    /// in the translate `-solution + self`.
    pub fn half_canonical(&self, solution: Point) -> Result<HalfCanonicalData> {
        let edges = self.edges();
        if !edges.iter().all(|e| e.congruence_holds(solution)) {
            return Err(Error::NotASolution(solution.0, solution.1));
        }
        let multiplicities = edges
            .iter()
            .map(|e| {
                let translated = e.offset - e.value(solution);
                (-translated - 1) / 2
            })
            .collect();
        Ok(HalfCanonicalData { solution, multiplicities })
    }

    /// Image under `p -> U p + t`; `U` must have determinant +-1.
    pub fn transform(&self, u: [[i64; 2]; 2], t: Point) -> Result<Self> {
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(u));
        }
        let image: Vec<Point> = self
            .vertices
            .iter()
            .map(|&(x, y)| (u[0][0] * x + u[0][1] * y + t.0, u[1][0] * x + u[1][1] * y + t.1))
            .collect();
        LatticePolygon::new(&image)
    }

    pub fn translate(&self, t: Point) -> Self {
        self.transform([[1, 0], [0, 1]], t).expect("translations are unimodular")
    }

    pub fn dilate(&self, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidPolygon(format!("dilation factor {n}")));
        }
        let image: Vec<Point> = self.vertices.iter().map(|&(x, y)| (n * x, n * y)).collect();
        LatticePolygon::new(&image)
    }

    /// `[0, i]^2`.
    pub fn square(i: i64) -> Result<Self> {
        LatticePolygon::new(&[(0, 0), (i, 0), (i, i), (0, i)])
    }

    /// `conv{(0,0), (2g+2,0), (0,2)}`.
    pub fn hyperelliptic(g: i64) -> Result<Self> {
        LatticePolygon::new(&[(0, 0), (2 * g + 2, 0), (0, 2)])
    }

    /// `conv{(0,0), (d,0), (0,d)}`.
    pub fn triangle(d: i64) -> Result<Self> {
        LatticePolygon::new(&[(0, 0), (d, 0), (0, d)])
    }

    /// `conv{(1,0), (3,1), (0,3)}`.
    pub fn exceptional() -> Self {
        LatticePolygon::new(&[(1, 0), (3, 1), (0, 3)]).unwrap()
    }

    /// `conv{(0,0), (k,0), (0,1)}`.
    pub fn thin_triangle(k: i64) -> Result<Self> {
        LatticePolygon::new(&[(0, 0), (k, 0), (0, 1)])
    }

    /// `conv{(0,0), (l,1), (k,2), (0,1)}`.
    pub fn thin_quadrilateral(k: i64, l: i64) -> Result<Self> {
        LatticePolygon::new(&[(0, 0), (l, 1), (k, 2), (0, 1)])
    }

    /// Parses `"i,j;i,j;..."`.
    pub fn parse_vertices(s: &str) -> Result<Self> {
        let pts = s
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                let mut it = p.split(',').map(|c| c.trim().parse::<i64>());
                match (it.next(), it.next(), it.next()) {
                    (Some(Ok(i)), Some(Ok(j)), None) => Ok((i, j)),
                    _ => Err(Error::Parse(format!("bad vertex {p:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePolygon::new(&pts)
    }
}

impl TryFrom<Vec<Point>> for LatticePolygon {
    type Error = Error;

    fn try_from(v: Vec<Point>) -> Result<Self> {
        LatticePolygon::new(&v)
    }
}

impl From<LatticePolygon> for Vec<Point> {
    fn from(p: LatticePolygon) -> Self {
        p.vertices
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_points(p: &LatticePolygon) -> Vec<Point> {
        let ((x0, y0), (x1, y1)) = p.bounding_box();
        let mut v = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                // Point in convex CCW polygon iff every edge turn is non-negative.
                let vs = p.vertices();
                let n = vs.len();
                if (0..n).all(|k| cross(vs[k], vs[(k + 1) % n], (x, y)) >= 0) {
                    v.push((x, y));
                }
            }
        }
        v
    }

    #[test]
    fn point_counts() {
        assert_eq!(LatticePolygon::triangle(2).unwrap().lattice_points().len(), 6);
        let h3 = LatticePolygon::hyperelliptic(3).unwrap();
        assert_eq!(h3.lattice_points().len(), 15);
        // Pick: A = I + B/2 - 1 with A = 8, B = 12.
        assert_eq!(h3.twice_area(), 16);
        assert_eq!(h3.boundary_count(), 12);
        assert_eq!(h3.genus(), 3);
        assert_eq!(LatticePolygon::square(1).unwrap().lattice_points().len(), 4);
    }

    #[test]
    fn genera() {
        let h7 = LatticePolygon::hyperelliptic(7).unwrap();
        assert_eq!(h7.interior_points(), (1..=7).map(|i| (i, 1)).collect::<Vec<_>>());
        assert!(h7.interior_collinear());
        assert_eq!(LatticePolygon::triangle(5).unwrap().genus(), 6);
        assert!(!LatticePolygon::triangle(5).unwrap().interior_collinear());
        assert_eq!(LatticePolygon::exceptional().genus(), 3);
        assert_eq!(LatticePolygon::exceptional().interior_points(), vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(LatticePolygon::square(3).unwrap().genus(), 4);
    }

    #[test]
    fn congruences() {
        let t5 = LatticePolygon::triangle(5).unwrap();
        let s = t5.congruence_solutions();
        assert_eq!(s.classes_mod2, vec![(1, 1)]);
        assert!(s.in_polygon.contains(&(1, 1)));
        let h7 = LatticePolygon::hyperelliptic(7).unwrap();
        let s = h7.congruence_solutions();
        assert_eq!(s.in_polygon, vec![(1, 1), (3, 1), (5, 1), (7, 1)]);
        assert_eq!(s.rho, 4);
        assert!(LatticePolygon::square(1).unwrap().congruence_solutions().classes_mod2.is_empty());
    }

    #[test]
    fn classification() {
        assert_eq!(LatticePolygon::thin_triangle(3).unwrap().classify(), Classification::Excluded);
        assert_eq!(LatticePolygon::exceptional().classify(), Classification::Excluded);
        assert_eq!(LatticePolygon::triangle(5).unwrap().classify(), Classification::Admissible);
        assert_eq!(LatticePolygon::square(1).unwrap().classify(), Classification::NoHalfCanonical);
        assert_eq!(LatticePolygon::square(2).unwrap().classify(), Classification::Admissible);
        assert_eq!(LatticePolygon::hyperelliptic(8).unwrap().classify(), Classification::NoHalfCanonical);
        for (k, l) in [(0, 3), (2, 3), (0, 5), (4, 5), (2, 7)] {
            let d = LatticePolygon::thin_quadrilateral(k, l).unwrap();
            assert_eq!(d.classify(), Classification::Excluded, "k={k} l={l}");
        }
        for (k, l) in [(0, 4), (2, 4), (2, 6)] {
            let d = LatticePolygon::thin_quadrilateral(k, l).unwrap();
            assert_ne!(d.classify(), Classification::Excluded, "k={k} l={l}");
        }
    }

    #[test]
    fn half_canonical_multiplicities() {
        for d in [3, 5, 7, 9] {
            let t = LatticePolygon::triangle(d).unwrap();
            let hc = t.half_canonical((1, 1)).unwrap();
            // Edges: bottom, hypotenuse, left.
            assert_eq!(hc.multiplicities, vec![0, (d - 3) / 2, 0]);
        }
        // H7 from (1,1): the slanted edge x + 8y = 16 becomes x + 8y = 7 on
        // the translate; the inward normal is (-1,-8) with offset -7.
        let h7 = LatticePolygon::hyperelliptic(7).unwrap();
        let hc = h7.half_canonical((1, 1)).unwrap();
        assert_eq!(hc.multiplicities, vec![0, 3, 0]);
        let hc = h7.half_canonical((7, 1)).unwrap();
        assert_eq!(hc.multiplicities, vec![0, 0, 3]);
        assert_eq!(h7.half_canonical((2, 1)), Err(Error::NotASolution(2, 1)));
    }

    #[test]
    fn dilation_and_transforms() {
        assert_eq!(LatticePolygon::triangle(1).unwrap().dilate(5).unwrap(), LatticePolygon::triangle(5).unwrap());
        assert!(LatticePolygon::triangle(1).unwrap().dilate(0).is_err());
        let t = LatticePolygon::triangle(3).unwrap();
        assert_eq!(t.transform([[2, 0], [0, 1]], (0, 0)), Err(Error::NotUnimodular([[2, 0], [0, 1]])));
        for d in 1..8 {
            let g = LatticePolygon::triangle(1).unwrap().dilate(d).unwrap().genus() as i64;
            assert_eq!(g, (d - 1) * (d - 2) / 2);
        }
    }

    #[test]
    fn polygon_parsing_and_json() {
        let p = LatticePolygon::parse_vertices("0,0;5,0;0,5").unwrap();
        assert_eq!(p, LatticePolygon::triangle(5).unwrap());
        assert!(LatticePolygon::parse_vertices("0,0;1").is_err());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[[0,0],[5,0],[0,5]]");
        let back: LatticePolygon = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<LatticePolygon>("[[0,0],[1,1]]").is_err());
    }

    fn named_polygons() -> Vec<LatticePolygon> {
        let mut v = vec![
            LatticePolygon::square(2).unwrap(),
            LatticePolygon::square(3).unwrap(),
            LatticePolygon::square(4).unwrap(),
            LatticePolygon::hyperelliptic(7).unwrap(),
            LatticePolygon::hyperelliptic(8).unwrap(),
            LatticePolygon::exceptional(),
            LatticePolygon::triangle(5).unwrap(),
            LatticePolygon::thin_triangle(1).unwrap(),
            LatticePolygon::thin_triangle(4).unwrap(),
            LatticePolygon::thin_quadrilateral(2, 5).unwrap(),
        ];
        v.extend((3..6).map(|g| LatticePolygon::hyperelliptic(g).unwrap()));
        v
    }

    fn arb_unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
        // Products of elementary matrices and a reflection.
        prop::collection::vec((0u8..3, -3i64..=3), 1..6).prop_map(|steps| {
            let mut m = [[1i64, 0], [0, 1]];
            for (kind, a) in steps {
                let e = match kind {
                    0 => [[1, a], [0, 1]],
                    1 => [[1, 0], [a, 1]],
                    _ => [[0, 1], [1, 0]],
                };
                m = [
                    [e[0][0] * m[0][0] + e[0][1] * m[1][0], e[0][0] * m[0][1] + e[0][1] * m[1][1]],
                    [e[1][0] * m[0][0] + e[1][1] * m[1][0], e[1][0] * m[0][1] + e[1][1] * m[1][1]],
                ];
            }
            m
        })
    }

    proptest! {
        #[test]
        fn classification_is_unimodular_invariant(u in arb_unimodular(), t in (-5i64..5, -5i64..5)) {
            for p in named_polygons() {
                let q = p.transform(u, t).unwrap();
                prop_assert_eq!(q.classify(), p.classify());
                prop_assert_eq!(q.genus(), p.genus());
                prop_assert_eq!(q.congruence_solutions().rho, p.congruence_solutions().rho);
                prop_assert_eq!(q.lattice_points().len(), p.lattice_points().len());
            }
        }

        #[test]
        fn scan_matches_brute_force(pts in prop::collection::vec((-6i64..7, -6i64..7), 3..8)) {
            if let Ok(p) = LatticePolygon::new(&pts) {
                let all = p.lattice_points();
                prop_assert_eq!(&all, &brute_points(&p));
                // Pick's theorem ties the three counts together.
                let interior = p.interior_points().len() as i64;
                prop_assert_eq!(p.twice_area(), 2 * interior + p.boundary_count() - 2);
                for v in p.vertices() {
                    prop_assert!(all.contains(v));
                }
            }
        }

        #[test]
        fn half_canonical_identities(pts in prop::collection::vec((-5i64..6, -5i64..6), 3..7), n in 0i64..3) {
            if let Ok(p) = LatticePolygon::new(&pts) {
                let p = p.dilate(2 * n + 1).unwrap();
                let sol = p.congruence_solutions();
                let edges = p.edges();
                for s in &sol.in_polygon {
                    let hc = p.half_canonical(*s).unwrap();
                    for (e, m) in edges.iter().zip(&hc.multiplicities) {
                        prop_assert!(*m >= 0);
                        prop_assert_eq!(2 * m + 1, -(e.offset - e.value(*s)));
                    }
                }
                if p.classify() == Classification::Admissible {
                    prop_assert_eq!(p.dilate(3).unwrap().classify(), Classification::Admissible);
                }
            }
        }
    }
}
