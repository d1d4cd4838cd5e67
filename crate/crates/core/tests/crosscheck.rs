//! The Hasse–Witt, hyperelliptic and point-counting routes against each
//! other on random curves.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twotorsion::field::{make_field, BinaryField, Field};
use twotorsion::hassewitt::{hw_matrix, two_torsion_by_manin};
use twotorsion::hyperelliptic::{find_row_permutation, HyperModel};
use twotorsion::lattice::LatticePolygon;
use twotorsion::laurent::LaurentPoly;
use twotorsion::unipoly::UniPoly;
use twotorsion::zeta::zeta_of;

fn random_model(field: BinaryField, g: usize, rng: &mut ChaCha8Rng) -> HyperModel {
    loop {
        let h1: Vec<u32> = (0..g + 2).map(|_| field.random(rng)).collect();
        let h0: Vec<u32> = (0..2 * g + 3).map(|_| field.random(rng)).collect();
        if let Ok(m) = HyperModel::new(g, UniPoly::new(field, h1), UniPoly::new(field, h0)) {
            if m.is_smooth() {
                return m;
            }
        }
    }
}

fn random_nondegenerate(field: BinaryField, polygon: &LatticePolygon, rng: &mut ChaCha8Rng) -> LaurentPoly {
    loop {
        let f = LaurentPoly::random_on(field, polygon, rng);
        if f.newton_polygon().ok().as_ref() == Some(polygon) && f.is_nondegenerate().unwrap() {
            return f;
        }
    }
}

#[test]
fn hyperelliptic_rank_identity_and_row_matching() {
    for (r, g, n) in [(1, 3, 300), (2, 3, 300), (1, 5, 300)] {
        let field = make_field(r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7 + r as u64 * 10 + g as u64);
        for _ in 0..n {
            let m = random_model(field, g, &mut rng);
            let hw = m.hw_matrix().unwrap();
            let data = m.hw_rank_formula().unwrap();
            assert_eq!(hw.rank(), data.rank, "{:?}", m);
            // The matrix is the Sylvester matrix of P, Q after one Frobenius.
            let squared: Vec<Vec<u32>> =
                data.sylvester.iter().map(|row| row.iter().map(|c| field.square(c)).collect()).collect();
            assert!(find_row_permutation(hw.entries(), &squared).is_some(), "{:?}", m);
        }
    }
}

#[test]
fn manin_parity_matches_point_counts() {
    let polygons =
        [LatticePolygon::triangle(3).unwrap(), LatticePolygon::hyperelliptic(3).unwrap(), LatticePolygon::exceptional(), LatticePolygon::square(2).unwrap()];
    for r in [1, 2, 3] {
        let field = make_field(r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99 + r as u64);
        for p in &polygons {
            // No curve over GF(2) is non-degenerate with respect to the square [0,2]^2.
            if r == 1 && p == &polygons[3] {
                continue;
            }
            for _ in 0..60 {
                let f = random_nondegenerate(field, p, &mut rng);
                let l = zeta_of(&f).unwrap();
                let two = l.jacobian_two_data();
                assert_eq!(two_torsion_by_manin(&f).unwrap(), two.has_2torsion, "{}", f.to_json());
                assert_eq!(hw_matrix(&f).unwrap().two_rank(), two.two_rank, "{}", f.to_json());
            }
        }
    }
}

#[test]
fn hyperelliptic_routes_agree() {
    for (r, g) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let field = make_field(r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1234 + r as u64 * 10 + g as u64);
        for _ in 0..150 {
            let m = random_model(field, g, &mut rng);
            let l = m.zeta().unwrap();
            let two = l.jacobian_two_data();
            let group = m.torsion_group().unwrap();
            assert_eq!(group.dim >= 1, two.has_2torsion, "{m:?}");
            assert!(group.dim <= two.dim_2torsion_bound);
            assert_eq!(m.geometric_two_rank().unwrap(), two.two_rank);
            assert_eq!(m.hw_matrix().unwrap().two_rank(), two.two_rank, "{m:?}");
        }
    }
}
