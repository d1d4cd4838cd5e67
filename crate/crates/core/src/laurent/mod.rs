//! Bivariate Laurent polynomials over a binary field: Newton polygons, face
//! restrictions, non-degeneracy and the `S_Delta` membership test.

mod nondeg;
pub mod oracle;

pub use nondeg::{Degeneracy, FaceRef};

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{BinaryField, Domain, Field};
use crate::lattice::{Classification, EdgeData, LatticePolygon, Point};
use crate::unipoly::UniPoly;

/// A face of the Newton polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    Vertex(Point),
    /// Index into `newton_polygon().edges()`.
    Edge(usize),
    Full,
}

/// `sum c_{i,j} x^i y^j` with only nonzero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    field: BinaryField,
    terms: BTreeMap<Point, u32>,
}

impl LaurentPoly {
    pub fn new(field: BinaryField, terms: impl IntoIterator<Item = (Point, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (p, c) in terms {
            let e = map.entry(p).or_insert(0u32);
            *e ^= c;
        }
        map.retain(|_, c| *c != 0);
        LaurentPoly { field, terms: map }
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Point, u32> {
        &self.terms
    }

    pub fn coeff(&self, p: Point) -> u32 {
        self.terms.get(&p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Point> {
        self.terms.keys().copied().collect()
    }

    /// Uniformly random coefficients (zeros allowed) on the lattice points
    /// of `polygon`.
    pub fn random_on<R: Rng + ?Sized>(field: BinaryField, polygon: &LatticePolygon, rng: &mut R) -> Self {
        let terms: Vec<(Point, u32)> = polygon
            .lattice_points()
            .into_iter()
            .map(|p| (p, field.random(rng)))
            .collect();
        LaurentPoly::new(field, terms)
    }

    pub fn newton_polygon(&self) -> Result<LatticePolygon> {
        LatticePolygon::new(&self.support()).map_err(|_| Error::LowDimensionalSupport)
    }

    /// `(x df/dx, y df/dy)`: in characteristic 2 these keep exactly the
    /// terms with odd `i`, respectively odd `j`.
    pub fn log_partials(&self) -> (Self, Self) {
        let pick = |odd_i: bool| {
            let terms = self
                .terms
                .iter()
                .filter(|(p, _)| if odd_i { p.0 % 2 != 0 } else { p.1 % 2 != 0 })
                .map(|(p, c)| (*p, *c));
            LaurentPoly::new(self.field, terms)
        };
        (pick(true), pick(false))
    }

    /// Multiplication by `x^a y^b`.
    pub fn translate(&self, a: i64, b: i64) -> Self {
        LaurentPoly::new(self.field, self.terms.iter().map(|(p, c)| ((p.0 + a, p.1 + b), *c)))
    }

    /// Coefficient-wise `c -> c^(2^k)`.
    pub fn frobenius(&self, k: u32) -> Self {
        LaurentPoly::new(self.field, self.terms.iter().map(|(p, c)| (*p, self.field.frobenius(c, k))))
    }

    pub fn scale(&self, c: u32) -> Self {
        LaurentPoly::new(self.field, self.terms.iter().map(|(p, a)| (*p, self.field.mul(a, &c))))
    }

    /// Restriction to the lattice points of a face of the Newton polygon.
    pub fn face_restriction(&self, face: Face) -> Result<Self> {
        let np = self.newton_polygon()?;
        let keep: Box<dyn Fn(Point) -> bool> = match face {
            Face::Full => Box::new(|_| true),
            Face::Vertex(v) => {
                if !np.vertices().contains(&v) {
                    return Err(Error::FaceNotIncident);
                }
                Box::new(move |p| p == v)
            }
            Face::Edge(k) => {
                let e = *np.edges().get(k).ok_or(Error::FaceNotIncident)?;
                Box::new(move |p| e.value(p) == e.offset)
            }
        };
        Ok(LaurentPoly::new(
            self.field,
            self.terms.iter().filter(|(p, _)| keep(**p)).map(|(p, c)| (*p, *c)),
        ))
    }

    /// `g(s) = sum_t c_{start + t*direction} s^t` along an edge of the Newton
    /// polygon.
    pub fn edge_polynomial(&self, edge: &EdgeData) -> Result<UniPoly<BinaryField>> {
        let np = self.newton_polygon()?;
        if !np.edges().iter().any(|e| e.start == edge.start && e.end == edge.end) {
            return Err(Error::FaceNotIncident);
        }
        Ok(self.edge_polynomial_unchecked(edge))
    }

    pub(crate) fn edge_polynomial_unchecked(&self, edge: &EdgeData) -> UniPoly<BinaryField> {
        UniPoly::new(self.field, edge.points().into_iter().map(|p| self.coeff(p)).collect())
    }

    pub fn eval(&self, x: u32, y: u32) -> u32 {
        let f = &self.field;
        self.terms.iter().fold(0, |acc, (p, c)| {
            let xi = pow_signed(f, x, p.0);
            let yj = pow_signed(f, y, p.1);
            acc ^ f.mul(c, &f.mul(&xi, &yj))
        })
    }

    /// Coefficient-wise image in a field containing this one (typically
    /// through an [`crate::field::Embedding`]).
    pub fn map_field(&self, target: BinaryField, phi: impl Fn(u32) -> u32) -> Self {
        LaurentPoly::new(target, self.terms.iter().map(|(p, c)| (*p, phi(*c))))
    }

    /// Whether `f` is non-degenerate with respect to its Newton polygon.
    pub fn is_nondegenerate(&self) -> Result<bool> {
        Ok(self.degeneracy()?.is_none())
    }

    /// `None` if non-degenerate, otherwise the first offending face found.
    pub fn degeneracy(&self) -> Result<Option<Degeneracy>> {
        nondeg::degeneracy(self)
    }

    /// Membership in `S_Delta`: the Newton polygon is `polygon`, `f` is
    /// non-degenerate, and some solution of the parity system in `polygon`
    /// carries a nonzero coefficient.
    pub fn in_s_delta(&self, polygon: &LatticePolygon) -> Result<bool> {
        if polygon.classify() != Classification::Admissible {
            return Err(Error::Inadmissible("no solution of the edge congruences inside the polygon"));
        }
        match self.newton_polygon() {
            Ok(np) if np == *polygon => {}
            _ => return Ok(false),
        }
        let hit = polygon
            .congruence_solutions()
            .in_polygon
            .iter()
            .any(|p| self.coeff(*p) != 0);
        Ok(hit && self.is_nondegenerate()?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = CurveDoc {
            field: FieldDoc { r: self.field.degree(), modulus_hex: Some(format!("{:x}", self.field.modulus())) },
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermDoc { i: p.0, j: p.1, c: format!("{c:x}") })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: CurveDoc =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("curve: {e}")))?;
        let field = doc.field.build()?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            let c = crate::field::FieldElement::from_hex(field, &t.c)?;
            terms.push(((t.i, t.j), c.bits()));
        }
        Ok(LaurentPoly::new(field, terms))
    }
}

fn pow_signed(f: &BinaryField, x: u32, e: i64) -> u32 {
    if e >= 0 {
        f.pow(&x, e as u64)
    } else {
        f.pow(&f.inv(&x).expect("torus point"), e.unsigned_abs())
    }
}

#[derive(Serialize, Deserialize)]
pub struct FieldDoc {
    pub r: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus_hex: Option<String>,
}

impl FieldDoc {
    pub fn build(&self) -> Result<BinaryField> {
        match &self.modulus_hex {
            None => crate::field::make_field(self.r),
            Some(h) => {
                let t = h.trim_start_matches("0x");
                let m = u64::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("modulus {h:?}: {e}")))?;
                BinaryField::with_modulus(self.r, m)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    i: i64,
    j: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct CurveDoc {
    field: FieldDoc,
    terms: Vec<TermDoc>,
}
