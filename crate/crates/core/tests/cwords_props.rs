mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use special_monoid::cwords::{check_properties, generate_c_words, CWordError};
use special_monoid::{distinguish, make_tuple, Budget, Distinguished, SpecialPresentation};

/// Random presentations whose derived groups the oracle handles, with their
/// distinguished tuples.
fn sample(seed: u64, count: usize) -> Vec<(SpecialPresentation, Distinguished)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 50 * count, "too many inconclusive presentations");
        let p = common::random_presentation(&mut rng, 3, 3, 4);
        let d = make_tuple(&p, Budget::default()).and_then(|t| distinguish(&t));
        match d {
            Ok(d) => out.push((p, d)),
            Err(CWordError::OracleInconclusive(_)) => continue,
            Err(e) => panic!("{p}: {e}"),
        }
    }
    out
}

#[test]
fn distinguished_tuples_have_all_properties() {
    for (p, d) in sample(11, 40) {
        let props = check_properties(&d.tuple, &d.families);
        assert!(props.all(), "{p}: {props:?}");
        let mut prev = make_tuple(&p, Budget::default()).unwrap().index();
        for m in &d.moves {
            assert_eq!(m.before, prev, "{p}");
            assert!(m.after < m.before, "{p}: {}", m.kind);
            prev = m.after;
        }
        assert_eq!(d.tuple.index(), prev);
        // closed: generating again gives the same families
        assert_eq!(generate_c_words(&d.tuple).unwrap(), d.families);
        let n = p.alphabet().size();
        for (c, family) in d.tuple.cwords().items().iter().zip(d.families.families()) {
            assert!(family.contains(c));
            assert!(
                family.len() as f64 <= (n as f64).powi(c.len() as i32),
                "{p}: family of {c}"
            );
        }
    }
}

#[test]
fn distinguishing_preserves_the_monoid() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, d) in sample(23, 25) {
        let original = p.relations().to_vec();
        let derived = d.tuple.presentation().relations().to_vec();
        let n = p.alphabet().size();
        for _ in 0..10 {
            let x = common::random_word(&mut rng, n, 0, 6);
            let y = if rng.gen_bool(0.5) {
                common::random_walk(&mut rng, &x, &original, 4, 6)
            } else {
                common::random_word(&mut rng, n, 0, 6)
            };
            let cap = 2 * x.len().max(y.len()) + 2 * p.ell();
            let a = common::bfs_equal(&x, &y, &original, cap, 20_000);
            let b = common::bfs_equal(&x, &y, &derived, cap + 4, 20_000);
            if let (Some(a), Some(b)) = (a, b) {
                if a != b {
                    // a longer detour may be needed on one side
                    let a2 = common::bfs_equal(&x, &y, &original, cap + 8, 200_000);
                    let b2 = common::bfs_equal(&x, &y, &derived, cap + 12, 200_000);
                    assert!(
                        a2 == Some(true) || b2 == Some(true),
                        "{p} vs {}: {x} {y}",
                        d.tuple.presentation()
                    );
                    assert_eq!(a2, b2, "{p} vs {}: {x} {y}", d.tuple.presentation());
                }
            }
        }
    }
}

#[test]
fn failed_property_three_has_a_witness() {
    use special_monoid::overlap::overlap;
    for (p, _) in sample(31, 20) {
        let t = make_tuple(&p, Budget::default()).unwrap();
        let cs = generate_c_words(&t).unwrap();
        let props = check_properties(&t, &cs);
        if props.length_preserving && props.disjoint && !props.overlap_free {
            let cross = t.cwords().items().iter().enumerate().any(|(i, c)| {
                cs.iter()
                    .any(|(m, w)| m != i && (overlap(c, w) || overlap(w, c)))
            });
            let selfish = cs.iter().any(|(_, w)| overlap(w, w));
            assert!(cross || selfish, "{p}");
        }
    }
}
