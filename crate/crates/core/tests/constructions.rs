use germlab::constructions::{compose, invert, minorize_to_pl, pinch, switch, AnchorSeq, PinchDirection};
use germlab::germ::ExpPoly;
use germlab::{validate, Germ, GridWindow, PlGerm, Rat};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = ExpPoly> {
    (1..=3usize, 1..=3i64, 0..=4i64).prop_map(|(d, c, e)| {
        let mut coeffs = vec![0; d + 1];
        coeffs[0] = e;
        coeffs[d] = c;
        ExpPoly::poly(&coeffs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_reindexes_codes(a in poly(), b in poly()) {
        let (p, q) = (PlGerm::closed(a), PlGerm::closed(b));
        let pq = compose(&p, &q).unwrap();
        for j in pq.start()..60 {
            let inner: u64 = q.code(j).unwrap().try_into().unwrap();
            prop_assert_eq!(pq.code(j).unwrap(), p.code(inner).unwrap());
        }
    }

    #[test]
    fn composition_is_associative(a in poly(), b in poly(), c in poly()) {
        let (p, q, r) = (PlGerm::closed(a), PlGerm::closed(b), PlGerm::closed(c));
        let left = compose(&compose(&p, &q).unwrap(), &r).unwrap();
        let right = compose(&p, &compose(&q, &r).unwrap()).unwrap();
        for j in left.start().max(right.start())..30 {
            prop_assert_eq!(left.code(j).unwrap(), right.code(j).unwrap());
        }
    }

    #[test]
    fn inverse_transposes_anchors(a in poly()) {
        let p = PlGerm::closed(a);
        let inv = invert(&p).unwrap();
        let sw = switch(&p).unwrap();
        for j in 1..40u64 {
            let k: u64 = p.code(j).unwrap().try_into().unwrap();
            prop_assert_eq!(inv.value(k).unwrap(), Rat::recip_int(j));
            prop_assert_eq!(sw.value(k).unwrap(), Rat::recip_int(j));
        }
    }

    #[test]
    fn minorant_of_a_pl_germ_lies_below(a in poly()) {
        let g = Germ::Pl(PlGerm::closed(a));
        let m = minorize_to_pl(&g, 500).unwrap();
        let pl = Germ::Pl(m.germ.clone());
        prop_assert!(validate(&pl, &GridWindow::new(m.germ.start(), 500).unwrap()).is_valid());
        for j in m.valid_from..=500 {
            prop_assert!(pl.value(j).unwrap() < g.value(j).unwrap());
        }
    }
}

#[test]
fn rule_anchors_pinch_from_below() {
    // m = 1/j dominates m0 = 1/j^2 everywhere past 1
    let m0 = Germ::Pl(PlGerm::closed(ExpPoly::poly(&[0, 0, 1])));
    let m = Germ::Pl(PlGerm::identity());
    let anchors = AnchorSeq::from_rule(&ExpPoly::exp(2), 4096).unwrap();
    assert_eq!(&anchors.indices()[..4], &[2, 4, 8, 16]);
    let lower = pinch(PinchDirection::Lower, &m0, &anchors).unwrap();
    for j in 2..4096 {
        assert!(lower.value(j).unwrap() < m.value(j).unwrap(), "j={j}");
    }
}

#[test]
fn composition_with_identity() {
    let p = PlGerm::closed(ExpPoly::poly(&[1, 2, 1]));
    let id = PlGerm::identity();
    for q in [compose(&p, &id).unwrap(), compose(&id, &p).unwrap()] {
        for j in 1..50 {
            assert_eq!(q.code(j).unwrap(), BigInt::from((j + 1) * (j + 1)));
        }
    }
}
