use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twotorsion::field::make_field;
use twotorsion::lattice::LatticePolygon;
use twotorsion::laurent::{oracle, LaurentPoly};
use twotorsion::Error;

fn agreement(polygon: &LatticePolygon, r: u32, samples: usize, seed: u64) {
    let field = make_field(r).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = oracle::default_bound(r);
    let (mut good, mut bad) = (0, 0);
    for _ in 0..samples {
        let f = LaurentPoly::random_on(field, polygon, &mut rng);
        match f.is_nondegenerate() {
            Err(Error::LowDimensionalSupport) => {
                assert!(oracle::is_nondegenerate(&f, bound).is_err());
            }
            Err(e) => panic!("unexpected error {e}"),
            Ok(fast) => {
                let slow = oracle::is_nondegenerate(&f, bound).unwrap();
                assert_eq!(fast, slow, "disagreement on {:?}", f.to_json());
                if fast {
                    good += 1;
                } else {
                    bad += 1;
                }
            }
        }
    }
    // Both outcomes occur, so the comparison is not vacuous.
    assert!(good > 0 && bad > 0, "good {good}, bad {bad}");
}

fn polygons() -> Vec<(&'static str, LatticePolygon)> {
    vec![
        ("cubic", LatticePolygon::triangle(3).unwrap()),
        ("h2", LatticePolygon::hyperelliptic(2).unwrap()),
        ("h3", LatticePolygon::hyperelliptic(3).unwrap()),
        ("unit square", LatticePolygon::square(1).unwrap()),
        ("square 2", LatticePolygon::square(2).unwrap()),
    ]
}

#[test]
fn elimination_matches_enumeration_gf2() {
    for (k, (_, p)) in polygons().iter().enumerate() {
        agreement(p, 1, 500, 100 + k as u64);
    }
}

#[test]
fn elimination_matches_enumeration_gf4() {
    for (k, (_, p)) in polygons().iter().enumerate() {
        agreement(p, 2, 500, 200 + k as u64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariant_under_translation_and_frobenius(
        seed in any::<u64>(),
        a in -5i64..5,
        b in -5i64..5,
        k in 0u32..4,
        which in 0usize..5,
    ) {
        let field = make_field(2).unwrap();
        let polygon = &polygons()[which].1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = LaurentPoly::random_on(field, polygon, &mut rng);
        let base = f.is_nondegenerate();
        prop_assert_eq!(f.translate(a, b).is_nondegenerate(), base.clone());
        prop_assert_eq!(f.frobenius(k).is_nondegenerate(), base);
    }
}
