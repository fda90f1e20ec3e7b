use marks::conjugacy::{centralizer, normalizer};
use marks::engine::table_of_marks_solvable;
use marks::oracle::table_of_marks_brute;
use marks::series::is_solvable;
use marks::tom::compare_patterns;
use marks::verify::verify_pattern;
use marks::{Group, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms(degree: usize, n: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(degree), n)
}

proptest! {
    #[test]
    fn composition_is_associative_and_acts_on_the_right(v in perms(7, 3), x in 0u32..7) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!((a * b).act(x), b.act(a.act(x)));
        prop_assert!((a * &a.inverse()).is_identity());
        prop_assert_eq!(a.conjugate_by(b), &(&b.inverse() * a) * b);
    }

    #[test]
    fn cycle_notation_round_trips(a in perm(9)) {
        prop_assert_eq!(Permutation::parse(&a.to_string(), 9).unwrap(), a.clone());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.pow(-1), a.inverse());
    }

    #[test]
    fn group_order_counts_elements(gens in perms(6, 2)) {
        let g = Group::new(6, gens.clone()).unwrap();
        let elements: std::collections::HashSet<Vec<u32>> = g.iter().map(|x| x.images().to_vec()).collect();
        prop_assert_eq!(elements.len() as u64, g.order());
        prop_assert_eq!(720 % g.order(), 0);
        for r in [0, g.order() / 2, g.order() - 1] {
            prop_assert_eq!(g.rank(&g.unrank(r)), Some(r));
        }
        for x in &gens {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn normalizers_and_centralizers_by_search(gens in perms(5, 2), h in perm(5)) {
        let g = Group::new(5, gens).unwrap();
        let h = g.subgroup(vec![g.unrank(g.rank(&h).unwrap_or(0))]).unwrap();
        let n = normalizer(&g, &h).unwrap();
        let fixing = g.iter().filter(|x| h.conjugate(x).same_elements(&h)).count() as u64;
        prop_assert_eq!(n.order(), fixing);
        let t = h.generators().first().cloned().unwrap_or_else(|| g.identity());
        let c = centralizer(&g, &t).unwrap();
        let commuting = g.iter().filter(|x| (x * &t) == (&t * x)).count() as u64;
        prop_assert_eq!(c.order(), commuting);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solvable_subgroups_of_s5_agree_with_the_oracle(gens in perms(5, 2)) {
        let g = Group::new(5, gens).unwrap();
        prop_assume!(is_solvable(&g));
        let ours = table_of_marks_solvable(&g).unwrap();
        let brute = table_of_marks_brute(&g).unwrap();
        prop_assert!(compare_patterns(&ours, &brute).matched());
        prop_assert!(verify_pattern(&ours).unwrap().passed());
    }
}
