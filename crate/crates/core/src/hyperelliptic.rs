//! Hyperelliptic models `Y^2 + H_1(X,Z) Y = H_0(X,Z)` over binary fields:
//! smoothness, the rational 2-torsion group, the 2-rank and the Hasse–Witt
//! rank in closed form.
//!
//! Binary forms are stored through their affine chart `H(x, 1)` together
//! with the homogeneous degree; the power of `Z` dividing `H` is the degree
//! deficit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{BinaryField, Domain, Field, FieldElement};
use crate::hassewitt::{hw_matrix_on, HwMatrix};
use crate::lattice::LatticePolygon;
use crate::laurent::LaurentPoly;
use crate::unipoly::UniPoly;
use crate::zeta::{self, LPolynomial};

type Poly = UniPoly<BinaryField>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperModel {
    field: BinaryField,
    g: usize,
    h1: Poly,
    h0: Poly,
}

/// Where the model fails to be smooth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Singularity {
    /// Common factor of `h1` and `h1'^2 h0 + h0'^2` on the chart `Z = 1`.
    Affine(Poly),
    AtInfinity,
}

/// One prime factor of `H_1` as a binary form; `poly == None` is `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionFactor {
    pub poly: Option<Poly>,
    pub degree: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTorsionGroup {
    pub factors: Vec<TorsionFactor>,
    /// `log_2 #Jac(k)[2]`.
    pub dim: usize,
    /// Multiplicities mod 2, one per factor.
    pub canonical_element: Vec<u8>,
}

/// `H_1 = P^2 + X Z Q^2` with `P`, `Q` binary forms of degrees `(g+1)/2`
/// and `(g-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HwRankData {
    pub rank: usize,
    pub p: Poly,
    pub q: Poly,
    /// Rows: `x^a P` for `a < (g-1)/2`, then `x^a Q` for `a < (g+1)/2`;
    /// column `c` is the coefficient of `x^c`.
    pub sylvester: Vec<Vec<u32>>,
}

impl HyperModel {
    pub fn new(g: usize, h1: Poly, h0: Poly) -> Result<Self> {
        let field = *h1.field();
        if field != *h0.field() {
            return Err(Error::ContextMismatch);
        }
        if g < 2 {
            return Err(Error::InvalidModel(format!("genus {g} < 2")));
        }
        if h1.is_zero() {
            return Err(Error::ZeroH1);
        }
        if h1.degree().unwrap() > g + 1 || h0.degree().unwrap_or(0) > 2 * g + 2 {
            return Err(Error::InvalidModel(format!(
                "degrees ({}, {}) exceed ({}, {})",
                h1.degree().unwrap(),
                h0.degree().unwrap_or(0),
                g + 1,
                2 * g + 2
            )));
        }
        Ok(HyperModel { field, g, h1, h0 })
    }

    /// Comma-separated hex coefficients, constant term first.
    pub fn from_hex(field: BinaryField, g: usize, h1: &str, h0: &str) -> Result<Self> {
        let parse = |s: &str| -> Result<Poly> {
            let coeffs = s
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| FieldElement::from_hex(field, t.trim()).map(|e| e.bits()))
                .collect::<Result<Vec<u32>>>()?;
            Ok(UniPoly::new(field, coeffs))
        };
        HyperModel::new(g, parse(h1)?, parse(h0)?)
    }

    /// Reads `f = c y^2 + h_1(x) y + h_0(x)` on the hyperelliptic polygon of
    /// genus `g` as the model with `H_1 = h_1` and `H_0 = c h_0`, obtained by
    /// `Y = c y`.
    pub fn from_laurent(f: &LaurentPoly, g: usize) -> Result<Self> {
        let field = f.field();
        let top = f.coeff((0, 2));
        let polygon = LatticePolygon::hyperelliptic(g as i64)?;
        if top == 0 || f.terms().keys().any(|&p| !polygon.contains(p)) {
            return Err(Error::InvalidModel("not supported on the hyperelliptic polygon with c_{0,2} != 0".into()));
        }
        let row = |j: i64, scale: u32| {
            let n = (2 * g + 3) as usize;
            let coeffs = (0..n).map(|i| field.mul(&f.coeff((i as i64, j)), &scale)).collect();
            UniPoly::new(field, coeffs)
        };
        HyperModel::new(g, row(1, 1), row(0, top))
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn h1(&self) -> &Poly {
        &self.h1
    }

    pub fn h0(&self) -> &Poly {
        &self.h0
    }

    /// `y^2 + h_1 y + h_0`.
    pub fn to_laurent(&self) -> LaurentPoly {
        let mut terms = vec![((0, 2), 1)];
        terms.extend(self.h1.coeffs().iter().enumerate().map(|(i, &c)| ((i as i64, 1), c)));
        terms.extend(self.h0.coeffs().iter().enumerate().map(|(i, &c)| ((i as i64, 0), c)));
        LaurentPoly::new(self.field, terms)
    }

    /// Number of factors `Z` in `H_1`.
    fn z_multiplicity(&self) -> usize {
        self.g + 1 - self.h1.degree().unwrap()
    }

    pub fn singularity(&self) -> Option<Singularity> {
        let companion = |h1: &Poly, h0: &Poly| {
            let d1 = h1.derivative();
            let d0 = h0.derivative();
            d1.square().mul(h0).add(&d0.square())
        };
        let common = self.h1.gcd(&companion(&self.h1, &self.h0));
        if !common.is_constant() {
            return Some(Singularity::Affine(common));
        }
        let r1 = self.h1.reverse(self.g + 1);
        let r0 = self.h0.reverse(2 * self.g + 2);
        let zero = 0u32;
        if r1.eval(&zero) == 0 && companion(&r1, &r0).eval(&zero) == 0 {
            return Some(Singularity::AtInfinity);
        }
        None
    }

    pub fn is_smooth(&self) -> bool {
        self.singularity().is_none()
    }

    fn require_smooth(&self) -> Result<()> {
        match self.singularity() {
            None => Ok(()),
            Some(Singularity::Affine(p)) => Err(Error::NotSmooth(format!("singular above the roots of {p}"))),
            Some(Singularity::AtInfinity) => Err(Error::NotSmooth("singular at infinity".into())),
        }
    }

    /// Prime factors of `H_1` as a binary form.
    fn form_factors(&self) -> Result<Vec<TorsionFactor>> {
        let mut out: Vec<TorsionFactor> = self
            .h1
            .factorize()?
            .into_iter()
            .map(|(p, e)| TorsionFactor { degree: p.degree().unwrap(), poly: Some(p), multiplicity: e })
            .collect();
        let z = self.z_multiplicity();
        if z > 0 {
            out.push(TorsionFactor { poly: None, degree: 1, multiplicity: z });
        }
        Ok(out)
    }

    /// `Jac(k)[2]` is the kernel of `(c_P) -> sum c_P deg P` on
    /// `(Z/2)^{factors of H_1}`.
    pub fn torsion_group(&self) -> Result<TwoTorsionGroup> {
        self.require_smooth()?;
        let factors = self.form_factors()?;
        let m = factors.len();
        let dim = if factors.iter().any(|f| f.degree % 2 == 1) { m - 1 } else { m };
        let canonical_element = factors.iter().map(|f| (f.multiplicity % 2) as u8).collect();
        Ok(TwoTorsionGroup { factors, dim, canonical_element })
    }

    pub fn has_2torsion(&self) -> Result<bool> {
        Ok(self.torsion_group()?.dim >= 1)
    }

    /// `n - 1`, where `n` is the number of distinct projective roots of
    /// `H_1`.
    pub fn geometric_two_rank(&self) -> Result<usize> {
        self.require_smooth()?;
        let n = self.h1.radical_degree()? + usize::from(self.z_multiplicity() > 0);
        Ok(n - 1)
    }

    /// `g - deg gcd(P, Q)`, odd genus only.
    pub fn hw_rank_formula(&self) -> Result<HwRankData> {
        self.require_smooth()?;
        let g = self.g;
        if g % 2 == 0 {
            return Err(Error::EvenGenus(g));
        }
        let (dp, dq) = ((g + 1) / 2, (g - 1) / 2);
        let f = self.field;
        let c = |k: usize| self.h1.coeff(k);
        let p = UniPoly::new(f, (0..=dp).map(|a| f.sqrt(&c(2 * a))).collect());
        let q = UniPoly::new(f, (0..=dq).map(|a| f.sqrt(&c(2 * a + 1))).collect());
        let common = match (p.degree(), q.degree()) {
            (None, _) => dq,
            (_, None) => dp,
            (Some(a), Some(b)) => p.gcd(&q).degree().unwrap() + (dp - a).min(dq - b),
        };
        let shifted = |poly: &Poly, a: usize| -> Vec<u32> { (0..g).map(|col| if col >= a { poly.coeff(col - a) } else { 0 }).collect() };
        let mut sylvester: Vec<Vec<u32>> = (0..dq).map(|a| shifted(&p, a)).collect();
        sylvester.extend((0..dp).map(|a| shifted(&q, a)));
        Ok(HwRankData { rank: g - common, p, q, sylvester })
    }

    /// `(mult_P mod 2)_P`: the class of `(1/2) div H_1(x,1)` relative to the
    /// geometric half-canonical divisor. Odd genus only.
    pub fn canonical_torsion_element(&self) -> Result<Vec<u8>> {
        if self.g % 2 == 0 {
            return Err(Error::EvenGenus(self.g));
        }
        Ok(self.torsion_group()?.canonical_element)
    }

    /// Hasse–Witt matrix of `y^2 + h_1 y + h_0` on the hyperelliptic polygon.
    pub fn hw_matrix(&self) -> Result<HwMatrix> {
        self.require_smooth()?;
        let polygon = LatticePolygon::hyperelliptic(self.g as i64)?;
        Ok(hw_matrix_on(&self.to_laurent(), &polygon))
    }

    pub fn zeta(&self) -> Result<LPolynomial> {
        self.zeta_with_cap(zeta::DEFAULT_CAP_BITS)
    }

    pub fn zeta_with_cap(&self, cap_bits: u32) -> Result<LPolynomial> {
        self.require_smooth()?;
        if self.g > zeta::MAX_GENUS {
            return Err(Error::ZetaCap(format!("genus {} exceeds {}", self.g, zeta::MAX_GENUS)));
        }
        let counts = zeta::weighted_point_counts(self.g, &self.h1, &self.h0, self.g, cap_bits)?;
        zeta::check_weil(&counts, self.field.size(), self.g)?;
        zeta::l_polynomial(&counts, self.field.size(), self.g)
    }

    pub fn report(&self) -> Result<serde_json::Value> {
        let group = self.torsion_group()?;
        let factors: Vec<FactorDoc> = group
            .factors
            .iter()
            .map(|f| FactorDoc {
                factor: f.poly.as_ref().map_or_else(|| "Z".to_string(), |p| p.to_string()),
                degree: f.degree,
                multiplicity: f.multiplicity,
            })
            .collect();
        let hw = if self.g % 2 == 1 { Some(self.hw_rank_formula()?.rank) } else { None };
        let doc = HypDoc {
            genus: self.g,
            smooth: true,
            factors,
            torsion_dim: group.dim,
            has_2torsion: group.dim >= 1,
            canonical_element: if self.g % 2 == 1 { Some(group.canonical_element) } else { None },
            two_rank: self.geometric_two_rank()?,
            hw_rank: hw,
        };
        Ok(serde_json::to_value(doc).expect("serializable"))
    }
}

#[derive(Serialize)]
struct FactorDoc {
    factor: String,
    degree: usize,
    multiplicity: usize,
}

#[derive(Serialize)]
struct HypDoc {
    genus: usize,
    smooth: bool,
    factors: Vec<FactorDoc>,
    torsion_dim: usize,
    has_2torsion: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    canonical_element: Option<Vec<u8>>,
    two_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    hw_rank: Option<usize>,
}

/// A row permutation `sigma` with `a[sigma[k]] == b[k]` for all `k`, if one
/// exists.
pub fn find_row_permutation(a: &[Vec<u32>], b: &[Vec<u32>]) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; a.len()];
    b.iter()
        .map(|row| {
            let k = (0..a.len()).find(|&k| !used[k] && a[k] == *row)?;
            used[k] = true;
            Some(k)
        })
        .collect()
}
