mod common;

use std::collections::HashSet;

use arbo::enumerate::{enumerate_relaxed, SizeGuard};
use arbo::trees::validate_relaxed;
use common::brute_force_relaxed;

#[test]
fn all_relaxed_trees_count() {
    // unrestricted relaxed binary trees: 1, 1, 3, 16, 127, 1363
    let counts: Vec<usize> = (0..=5).map(|n| brute_force_relaxed(n, None).len()).collect();
    assert_eq!(counts, [1, 1, 3, 16, 127, 1363]);
}

#[test]
fn validator_agrees_with_brute_force() {
    for n in 0..=4 {
        for t in brute_force_relaxed(n, None) {
            let v = validate_relaxed(&t);
            let right_height_ok = !v.iter().any(|x| matches!(x, arbo::trees::Violation::RightHeight { .. }));
            assert!(v.iter().all(|x| matches!(x, arbo::trees::Violation::RightHeight { .. })), "{t:?}: {v:?}");
            let in_family = brute_force_relaxed(n, Some(1)).contains(&t);
            assert_eq!(right_height_ok, in_family, "{t:?}");
        }
    }
}

#[test]
fn enumeration_equals_brute_force_family() {
    for n in 0..=6 {
        let brute: HashSet<String> = brute_force_relaxed(n, Some(1)).iter().map(|t| t.to_json()).collect();
        let ours: Vec<String> = enumerate_relaxed(n, SizeGuard::default()).unwrap().map(|t| t.to_json()).collect();
        let ours_set: HashSet<String> = ours.iter().cloned().collect();
        assert_eq!(ours.len(), ours_set.len(), "duplicates at n={n}");
        assert_eq!(ours_set, brute, "n={n}");
    }
}
