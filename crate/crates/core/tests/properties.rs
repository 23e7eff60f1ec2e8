use proptest::prelude::*;

use arbo::bijection::{increasing_to_relaxed, normalize_pointers, relaxed_to_increasing};
use arbo::sample::{sample_increasing, sample_relaxed};
use arbo::stats::{eval_param, ParamId, TreeRef};
use arbo::subclass::profile;
use arbo::trees::{decode, encode, roles, validate_relaxed, InsertionCode, PlaneIncreasingTree, RelaxedTree};

fn code(max_len: usize) -> impl Strategy<Value = InsertionCode> {
    (0..=max_len).prop_flat_map(|n| {
        (1..=n)
            .map(|i| (0..2 * i - 1).boxed())
            .collect::<Vec<_>>()
            .prop_map(|p| InsertionCode::new(p).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn code_roundtrip(c in code(40)) {
        prop_assert_eq!(encode(&decode(&c)), c);
    }

    #[test]
    fn bijection_roundtrip(c in code(40)) {
        let t = decode(&c);
        let r = increasing_to_relaxed(&t);
        prop_assert!(validate_relaxed(&r).is_empty());
        prop_assert_eq!(r.size(), t.size());
        let back = relaxed_to_increasing(&r).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(increasing_to_relaxed(&back), r);
    }

    #[test]
    fn json_roundtrip(c in code(30)) {
        let t = decode(&c);
        prop_assert_eq!(PlaneIncreasingTree::from_json(&t.to_json()).unwrap(), t.clone());
        let r = increasing_to_relaxed(&t);
        prop_assert_eq!(RelaxedTree::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn levels_match_maximal_young_insertions(c in code(40)) {
        let t = decode(&c);
        let r = increasing_to_relaxed(&t);
        let roles = roles(&r).unwrap();
        let flags = t.maximal_young_insertions();
        // node ids are inorder labels, which are insertion labels
        for k in 1..=t.size() {
            prop_assert_eq!(roles[k].level == 0, flags[k], "label {}", k);
        }
    }

    #[test]
    fn pointer_paths_are_depths(c in code(40)) {
        let t = decode(&c);
        let a = normalize_pointers(&increasing_to_relaxed(&t)).unwrap();
        prop_assert_eq!(a.path_lengths(), t.depths());
        let parents: Vec<usize> = (1..t.node_count()).map(|v| t.parent(v).unwrap()).collect();
        prop_assert_eq!(&a.parents()[1..], &parents[..]);
    }

    #[test]
    fn params_agree_across_bijection(c in code(30)) {
        let t = decode(&c);
        let r = increasing_to_relaxed(&t);
        for p in ParamId::ALL {
            prop_assert_eq!(
                eval_param(TreeRef::Increasing(&t), p).unwrap(),
                eval_param(TreeRef::Relaxed(&r), p).unwrap()
            );
        }
    }

    #[test]
    fn profile_partitions_level0(c in code(40)) {
        let t = decode(&c);
        let r = increasing_to_relaxed(&t);
        let p = profile(&r).unwrap();
        let level0 = eval_param(TreeRef::Relaxed(&r), ParamId::Level0Nodes).unwrap().scalar().unwrap() as usize;
        prop_assert_eq!(p.level0_nodes(), level0);
        prop_assert!(p.branch_lens.iter().all(|&b| b >= 1));
        let level1: usize = p.branch_lens.iter().sum();
        prop_assert_eq!(level0 + level1, r.size());
        prop_assert_eq!(p.cherry_ptr_equal.len(), p.branch_lens.len());
    }

    #[test]
    fn samplers_agree(n in 0usize..200, seed in any::<u64>()) {
        let t = sample_increasing(n, seed);
        prop_assert_eq!(t.size(), n);
        prop_assert_eq!(increasing_to_relaxed(&t), sample_relaxed(n, seed));
    }
}
