use rcomb::subword::{
    count_equivalence_classes, has_no_short_period, qset_from_subword, verify_equivalence_classes,
    verify_subword_qset_properties, Subword,
};

fn words(l: usize) -> impl Iterator<Item = Subword> {
    (0u64..1 << l).map(move |v| Subword::new(l, v).unwrap())
}

#[test]
fn flips_and_reversals_keep_q() {
    for l in 1..=8 {
        for w in words(l) {
            let (q, _) = qset_from_subword(&w);
            assert_eq!(qset_from_subword(&w.flipped()).0, q, "{w}");
            assert_eq!(qset_from_subword(&w.reversed()).0, q, "{w}");
        }
    }
}

#[test]
fn derived_sets_have_the_overlap_properties() {
    for l in 1..=10 {
        for w in words(l) {
            let r = verify_subword_qset_properties(&w);
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn class_counts_follow_the_period_condition() {
    for l in 1..=6 {
        for w in words(l) {
            if !qset_from_subword(&w).1 {
                continue;
            }
            let r = verify_equivalence_classes(&w, 16).unwrap();
            assert_eq!(r.passed(), has_no_short_period(&w), "{w}: {r}");
        }
    }
}

#[test]
fn empty_word_lengths_have_one_class() {
    let w = Subword::parse("10010").unwrap();
    for n in 0..5 {
        assert_eq!(count_equivalence_classes(&w, n).unwrap().total, 1);
    }
}
