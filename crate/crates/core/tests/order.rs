use germlab::germ::ExpPoly;
use germlab::order::{canonical_eq, compare_germwise, frechet_triage, CompareMode, TriageKind, VerdictKind};
use germlab::{Germ, GridWindow, PlGerm, Rat, SeqGerm};
use proptest::prelude::*;

fn code() -> impl Strategy<Value = ExpPoly> {
    (1..=3usize, 1..=4i64, 0..=6i64, 0..=3i64, any::<bool>()).prop_map(|(d, c, e, lin, exp)| {
        if exp {
            ExpPoly::exp(2).scale(&c.into()).add(&ExpPoly::poly(&[e, lin]))
        } else {
            let mut coeffs = vec![0; d + 1];
            coeffs[0] = e;
            coeffs[d] = c;
            if d >= 2 {
                coeffs[1] = lin;
            }
            ExpPoly::poly(&coeffs)
        }
    })
}

fn pl(p: ExpPoly) -> Germ {
    Germ::Pl(PlGerm::closed(p))
}

fn window() -> GridWindow {
    GridWindow::new(1, 600).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn comparison_is_antisymmetric(a in code(), b in code()) {
        for mode in [CompareMode::Auto, CompareMode::HorizonOnly] {
            let ab = compare_germwise(&pl(a.clone()), &pl(b.clone()), &window(), mode).unwrap();
            let ba = compare_germwise(&pl(b.clone()), &pl(a.clone()), &window(), mode).unwrap();
            prop_assert_eq!(ab.kind.flipped(), ba.kind);
            prop_assert_eq!(ab.witness_index, ba.witness_index);
        }
    }

    #[test]
    fn positive_scaling_preserves_order(a in code(), b in code(), n in 1..20i64, d in 1..20i64) {
        let q = Rat::new(n, d);
        let plain = compare_germwise(&pl(a.clone()), &pl(b.clone()), &window(), CompareMode::HorizonOnly).unwrap();
        let scaled = compare_germwise(&pl(a).scaled(&q), &pl(b).scaled(&q), &window(), CompareMode::HorizonOnly).unwrap();
        prop_assert_eq!(plain.kind, scaled.kind);
        prop_assert_eq!(plain.witness_index, scaled.witness_index);
    }

    #[test]
    fn order_is_transitive(a in code(), b in code(), c in code()) {
        let w = window();
        let lt = |x: &ExpPoly, y: &ExpPoly| compare_germwise(&pl(x.clone()), &pl(y.clone()), &w, CompareMode::HorizonOnly).unwrap().is_lt();
        if lt(&a, &b) && lt(&b, &c) {
            prop_assert!(lt(&a, &c));
        }
    }

    #[test]
    fn certificates_agree_with_the_scan(a in code(), b in code()) {
        let auto = compare_germwise(&pl(a.clone()), &pl(b.clone()), &window(), CompareMode::Auto).unwrap();
        let scan = compare_germwise(&pl(a), &pl(b), &window(), CompareMode::HorizonOnly).unwrap();
        if auto.is_certified() {
            prop_assert_eq!(auto.is_lt(), scan.is_lt());
            prop_assert_eq!(auto.is_gt(), scan.is_gt());
        }
    }

    #[test]
    fn eventual_order_frees_every_ultrafilter(terms in prop::collection::vec(1..1000u64, 8..200), cut in 0..100usize) {
        let b: Vec<Rat> = terms.iter().map(|&t| Rat::new(1, t)).collect();
        let cut = cut.min(b.len() / 2);
        let a: Vec<Rat> = b.iter().enumerate()
            .map(|(i, x)| if i < cut { x + Rat::one() } else { x / Rat::from_int(2) })
            .collect();
        let v = frechet_triage(&SeqGerm::from_table(1, a), &SeqGerm::from_table(1, b.clone()), b.len() as u64).unwrap();
        prop_assert_eq!(v.kind, TriageKind::AllFreeUltrafilters);
    }
}

#[test]
fn equality_from_a_witness() {
    let a = PlGerm::closed(ExpPoly::poly(&[0, 2]));
    let b = PlGerm::with_head(1, vec![7.into(), 9.into()], germlab::germ::CodeGen::Closed(ExpPoly::poly(&[0, 2])));
    let v = canonical_eq(&Germ::Pl(a), &Germ::Pl(b), &window()).unwrap();
    assert_eq!(v.kind, VerdictKind::EqualFrom);
    assert_eq!(v.witness_index, 3);
}

#[test]
fn scaled_germs_are_comparable_with_their_source() {
    let a = pl(ExpPoly::poly(&[0, 1]));
    let v = compare_germwise(&a.scaled(&Rat::new(1, 2)), &a, &window(), CompareMode::Auto).unwrap();
    assert!(v.is_lt());
}
