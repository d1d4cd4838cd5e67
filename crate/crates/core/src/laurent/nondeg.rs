use super::LaurentPoly;
use crate::error::Result;
use crate::field::{BinaryField, Domain, ExtField};
use crate::unipoly::{resultant, PolyRing, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceRef {
    /// Index into `newton_polygon().edges()`.
    Edge(usize),
    Full,
}

/// Where non-degeneracy fails. The witness, when present, is the minimal
/// polynomial of a torus coordinate of a common zero: of the edge parameter
/// `s` for edges, of `x` for the full face. It is absent when the face system
/// vanishes on a whole curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneracy {
    pub face: FaceRef,
    pub witness: Option<UniPoly<BinaryField>>,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (&self.face, &self.witness) {
            (FaceRef::Edge(k), Some(w)) => write!(f, "edge {k}, repeated root of minimal polynomial {w}"),
            (FaceRef::Edge(k), None) => write!(f, "edge {k}"),
            (FaceRef::Full, Some(w)) => write!(f, "torus zero with x of minimal polynomial {w}"),
            (FaceRef::Full, None) => write!(f, "face system vanishes along a curve"),
        }
    }
}

/// `A(x, y)` as coefficients in `y`, each a dense polynomial in `x`.
type Bivariate = Vec<Vec<u32>>;

pub(super) fn degeneracy(f: &LaurentPoly) -> Result<Option<Degeneracy>> {
    let np = f.newton_polygon()?;
    // Vertices never contribute: a single monomial has no torus zeros.
    for e in np.edges() {
        let g = f.edge_polynomial_unchecked(&e);
        let h = g.gcd(&g.derivative());
        if h.degree().unwrap_or(0) > 0 {
            let w = h.factorize()?.into_iter().next().map(|(p, _)| p);
            return Ok(Some(Degeneracy { face: FaceRef::Edge(e.index), witness: w }));
        }
    }
    Ok(full_face(f)?.map(|witness| Degeneracy { face: FaceRef::Full, witness }))
}

/// Shifts `f` so that it is a polynomial divisible by neither `x` nor `y`.
pub(crate) fn to_polynomial(f: &LaurentPoly) -> LaurentPoly {
    let a = f.terms.keys().map(|p| p.0).min().unwrap_or(0);
    let b = f.terms.keys().map(|p| p.1).min().unwrap_or(0);
    f.translate(-a, -b)
}

pub(crate) fn bivariate(f: &LaurentPoly) -> Bivariate {
    let dy = f.terms.keys().map(|p| p.1).max().unwrap_or(0) as usize;
    let dx = f.terms.keys().map(|p| p.0).max().unwrap_or(0) as usize;
    let mut out = vec![vec![0u32; dx + 1]; dy + 1];
    for (p, c) in &f.terms {
        out[p.1 as usize][p.0 as usize] = *c;
    }
    let ring = PolyRing::new(f.field);
    out.into_iter().map(|v| ring.normalize(v)).collect()
}

/// Some(witness) if `A = B = C = 0` has a torus solution, where `A` is `f` made
/// polynomial and `B`, `C` are its logarithmic partials.
///
/// Fix `x`. If `A`, `B`, `C` share a root `y != 0`, the Sylvester matrix of
/// `A` and `B + zC` in `y` is singular for every `z`, so `x` is a root of
/// every `z`-coefficient of `Res_y(A, B + zC)`. Each candidate `x` is then
/// settled exactly by a gcd over `F[x]/(m)`.
fn full_face(f: &LaurentPoly) -> Result<Option<Option<UniPoly<BinaryField>>>> {
    let field = f.field;
    let a = to_polynomial(f);
    let (b, c) = a.log_partials();
    if b.is_zero() && c.is_zero() {
        // f is a square in characteristic 2.
        return Ok(Some(None));
    }
    let strip = |p: &LaurentPoly| if p.is_zero() { p.clone() } else { to_polynomial(p) };
    let (b, c) = (strip(&b), strip(&c));
    let (ay, by, cy) = (bivariate(&a), bivariate(&b), bivariate(&c));

    let fx = PolyRing::new(field);
    let fxz = PolyRing::new(fx.clone());
    let a_lift: Vec<Vec<Vec<u32>>> = ay.iter().map(|q| fxz.constant(q.clone())).collect();
    let n = by.len().max(cy.len());
    let l_lift: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|k| {
            let bk = by.get(k).cloned().unwrap_or_default();
            let ck = cy.get(k).cloned().unwrap_or_default();
            fxz.normalize(vec![bk, ck])
        })
        .collect();
    let l_lift = PolyRing::new(fxz.clone()).normalize(l_lift);
    let res = resultant(&fxz, &a_lift, &l_lift);
    if fxz.is_zero(&res) {
        // A common factor of positive y-degree: a whole curve of torus zeros.
        return Ok(Some(None));
    }
    let d = res
        .iter()
        .map(|q| UniPoly::new(field, q.clone()))
        .fold(UniPoly::zero(field), |acc, q| acc.gcd(&q));
    let (d, _) = d.strip_x();
    if d.is_constant() {
        return Ok(None);
    }
    for (m, _) in d.factorize()? {
        let k = ExtField::new(&m)?;
        let special = |p: &Bivariate| {
            let coeffs = p.iter().map(|q| k.reduce(&UniPoly::new(field, q.clone()))).collect();
            UniPoly::new(k.clone(), coeffs)
        };
        let g = special(&ay).gcd(&special(&by)).gcd(&special(&cy));
        if g.is_zero() || g.strip_x().0.degree().unwrap_or(0) >= 1 {
            return Ok(Some(Some(m)));
        }
    }
    Ok(None)
}
