//! Hasse–Witt matrices of non-degenerate curves, read off from the
//! coefficients of `f`, and the Frobenius-twisted products built from them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{BinaryField, Domain, Field};
use crate::lattice::{LatticePolygon, Point};
use crate::laurent::LaurentPoly;

/// A square matrix over a binary field indexed by the interior lattice
/// points of a polygon.
///
/// Row `(i,j)`, column `(u,v)` holds `c_{2u-i, 2v-j}`. Row `p` is the image
/// of the differential attached to `p`, written in the same basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HwMatrix {
    field: BinaryField,
    index: Vec<Point>,
    entries: Vec<Vec<u32>>,
}

/// Checked: `f` must be non-degenerate.
pub fn hw_matrix(f: &LaurentPoly) -> Result<HwMatrix> {
    if let Some(d) = f.degeneracy()? {
        return Err(Error::Degenerate(d.to_string()));
    }
    let np = f.newton_polygon()?;
    Ok(hw_matrix_on(f, &np))
}

/// The coefficient-extraction matrix indexed by the interior points of
/// `polygon`, with no check on `f`. Useful for smooth models whose defining
/// polynomial is degenerate with respect to its own Newton polygon.
pub fn hw_matrix_on(f: &LaurentPoly, polygon: &LatticePolygon) -> HwMatrix {
    let index = polygon.interior_points();
    let entries = index
        .iter()
        .map(|&(i, j)| index.iter().map(|&(u, v)| f.coeff((2 * u - i, 2 * v - j))).collect())
        .collect();
    HwMatrix { field: f.field(), index, entries }
}

/// Whether the Jacobian has a non-trivial rational 2-torsion point, i.e.
/// whether 1 is an eigenvalue of the twisted product.
pub fn two_torsion_by_manin(f: &LaurentPoly) -> Result<bool> {
    Ok(hw_matrix(f)?.manin_product().has_eigenvalue_one())
}

impl HwMatrix {
    pub fn from_entries(field: BinaryField, index: Vec<Point>, entries: Vec<Vec<u32>>) -> Result<Self> {
        let n = index.len();
        let q = field.size();
        if entries.len() != n || entries.iter().any(|r| r.len() != n || r.iter().any(|&e| e as u64 >= q)) {
            return Err(Error::InvalidModel("matrix shape or entry out of range".into()));
        }
        Ok(HwMatrix { field, index, entries })
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn index(&self) -> &[Point] {
        &self.index
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn rank(&self) -> usize {
        rank(&self.field, self.entries.clone())
    }

    pub fn is_ordinary(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Entrywise `c -> c^(2^k)`.
    pub fn frobenius(&self, k: u32) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|c| self.field.frobenius(c, k)).collect())
            .collect();
        HwMatrix { field: self.field, index: self.index.clone(), entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        HwMatrix { field: self.field, index: self.index.clone(), entries: matmul(&self.field, &self.entries, &other.entries) }
    }

    /// `M * M^(2) * ... * M^(2^(r-1))` for `M` over `GF(2^r)`.
    pub fn manin_product(&self) -> Self {
        let r = self.field.degree();
        (1..r).fold(self.clone(), |acc, k| acc.mul(&self.frobenius(k)))
    }

    /// `det(I + A) = 0`.
    pub fn has_eigenvalue_one(&self) -> bool {
        let mut a = self.entries.clone();
        for (k, row) in a.iter_mut().enumerate() {
            row[k] ^= 1;
        }
        rank(&self.field, a) < self.dim()
    }

    /// Stable rank of the twisted product: `rank(A^g)`.
    pub fn two_rank(&self) -> usize {
        let a = self.manin_product();
        let g = self.dim();
        if g == 0 {
            return 0;
        }
        let mut p = a.clone();
        for _ in 1..g {
            p = p.mul(&a);
        }
        p.rank()
    }

    /// Hex entries, one array per row.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HwDump {
            index: self.index.clone(),
            rows: self.entries.iter().map(|r| r.iter().map(|c| format!("{c:x}")).collect()).collect(),
        })
        .expect("serializable")
    }
}

#[derive(Serialize)]
struct HwDump {
    index: Vec<Point>,
    rows: Vec<Vec<String>>,
}

pub(crate) fn matmul(f: &BinaryField, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(0, |acc, (x, brow)| acc ^ f.mul(x, &brow[j])))
                .collect()
        })
        .collect()
}

/// Rank by Gaussian elimination.
pub(crate) fn rank(f: &BinaryField, mut a: Vec<Vec<u32>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&k| a[k][c] != 0) else { continue };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]).expect("pivot is nonzero");
        let pivot: Vec<u32> = a[r].iter().map(|x| f.mul(x, &inv)).collect();
        for (k, row) in a.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let m = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= f.mul(&m, y);
                }
            }
        }
        a[r] = pivot;
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn lp(r: u32, terms: &[((i64, i64), u32)]) -> LaurentPoly {
        LaurentPoly::new(make_field(r).unwrap(), terms.iter().copied())
    }

    #[test]
    fn quartic_layout() {
        // Distinct markers for each coefficient of the E polygon.
        let pts = LatticePolygon::exceptional().lattice_points();
        let terms: Vec<_> = pts.iter().enumerate().map(|(k, &p)| (p, k as u32 + 1)).collect();
        let f = lp(5, &terms);
        let c = |p: Point| f.coeff(p);
        let m = hw_matrix_on(&f, &LatticePolygon::exceptional());
        assert_eq!(m.index(), &[(1, 1), (1, 2), (2, 1)]);
        // Index order (1,1), (1,2), (2,1).
        let expected = vec![
            vec![c((1, 1)), 0, c((3, 1))],
            vec![c((1, 0)), c((1, 2)), 0],
            vec![0, c((0, 3)), c((2, 1))],
        ];
        assert_eq!(m.entries(), &expected[..]);
    }

    #[test]
    fn empty_and_small_cases() {
        let line = lp(1, &[((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        let m = hw_matrix(&line).unwrap();
        assert_eq!(m.dim(), 0);
        assert!(!m.manin_product().has_eigenvalue_one());
        assert!(!two_torsion_by_manin(&line).unwrap());

        let e1 = lp(1, &[((0, 2), 1), ((1, 1), 1), ((0, 1), 1), ((3, 0), 1), ((0, 0), 1)]);
        let m = hw_matrix(&e1).unwrap();
        assert_eq!(m.entries(), &[vec![1]]);
        assert!(two_torsion_by_manin(&e1).unwrap());

        let ss = lp(1, &[((0, 2), 1), ((0, 1), 1), ((3, 0), 1), ((0, 0), 1)]);
        assert_eq!(hw_matrix(&ss).unwrap().entries(), &[vec![0]]);
        assert!(!two_torsion_by_manin(&ss).unwrap());
        assert_eq!(hw_matrix(&ss).unwrap().two_rank(), 0);

        let degenerate = lp(1, &[((2, 0), 1), ((0, 2), 1), ((0, 0), 1)]);
        assert!(matches!(hw_matrix(&degenerate), Err(Error::Degenerate(_))));
    }

    #[test]
    fn norm_of_a_scalar() {
        let f4 = make_field(2).unwrap();
        for c in 0..4u32 {
            let m = HwMatrix::from_entries(f4, vec![(1, 1)], vec![vec![c]]).unwrap();
            let expect = f4.pow(&c, 3);
            assert_eq!(m.manin_product().entries(), &[vec![expect]]);
        }
    }

    fn matrix(r: u32, n: usize) -> impl Strategy<Value = HwMatrix> {
        let f = make_field(r).unwrap();
        let q = f.size() as u32;
        prop::collection::vec(prop::collection::vec(0..q, n), n).prop_map(move |rows| {
            let index = (0..n as i64).map(|k| (k, 1)).collect();
            HwMatrix::from_entries(f, index, rows).unwrap()
        })
    }

    /// Determinant by cofactor expansion, independent of the elimination.
    fn det(f: &BinaryField, a: &[Vec<u32>]) -> u32 {
        if a.is_empty() {
            return 1;
        }
        (0..a.len()).fold(0, |acc, c| {
            let minor: Vec<Vec<u32>> =
                a[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| *x).collect()).collect();
            acc ^ f.mul(&a[0][c], &det(f, &minor))
        })
    }

    proptest! {
        #[test]
        fn product_rank_never_exceeds_rank(m in matrix(3, 4)) {
            prop_assert!(m.manin_product().rank() <= m.rank());
            prop_assert!(m.two_rank() <= m.rank());
        }

        #[test]
        fn rank_matches_determinant(m in matrix(2, 3)) {
            let d = det(&m.field(), m.entries());
            prop_assert_eq!(d != 0, m.rank() == 3);
        }

        #[test]
        fn eigenvalue_one_is_rotation_invariant(a in matrix(2, 3), b in matrix(2, 3)) {
            prop_assert_eq!(a.mul(&b).has_eigenvalue_one(), b.mul(&a).has_eigenvalue_one());
            let f = a.field();
            let mut id_ab = a.mul(&b).entries().to_vec();
            for (k, row) in id_ab.iter_mut().enumerate() { row[k] ^= 1; }
            prop_assert_eq!(det(&f, &id_ab) == 0, a.mul(&b).has_eigenvalue_one());
        }
    }
}
