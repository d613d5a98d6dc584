use std::collections::HashMap;

use dunkl::bruhat_rep::{apply_dunkl, evaluate_at_dunkl, x_to_z, GroupRingVec, RepMode};
use dunkl::ncalgebra::{parse_expr, Algebra};
use dunkl::pieri::{struct_const_special, struct_const_special_by_operators};
use dunkl::polyring::{Int, Monomial, Poly, Var};
use dunkl::schubert::{double_schubert, double_schubert_by_transition, double_schubert_via_word};
use dunkl::symgroup::Permutation;
use dunkl::verify::random_vec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    let all = Permutation::all(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn small_poly() -> impl Strategy<Value = Poly> {
    let var = prop_oneof![
        (1..=3usize).prop_map(Var::x),
        (1..=3usize).prop_map(Var::y),
        (1..=2usize).prop_map(Var::q),
        Just(Var::t()),
    ];
    let mono = prop::collection::vec((var, 1..=3u32), 0..3).prop_map(Monomial::from_pairs);
    let coeff = prop_oneof![-9i64..=9, Just(i64::MAX), Just(i64::MIN)];
    prop::collection::vec((mono, coeff), 0..6).prop_map(|terms| {
        let mut p = Poly::zero();
        for (m, c) in terms {
            // Squaring pushes coefficients past 64 bits.
            p += &Poly::monomial(m, Int::from(c)).pow(2);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_polynomials_reparse(p in small_poly()) {
        prop_assert_eq!(Poly::parse(&p.to_string()).unwrap(), p.clone());
        prop_assert_eq!(Poly::from_record(&p.to_record()).unwrap(), p);
    }

    #[test]
    fn schubert_polynomials_do_not_depend_on_the_word(w in perm(5)) {
        // Two reduced words of v = w^{-1} w0: the canonical one, and the
        // reversed canonical word of v^{-1}.
        let v = w.inverse().compose(&Permutation::longest(5));
        let mut other = v.inverse().reduced_word();
        other.reverse();
        prop_assert_eq!(Permutation::from_word(5, &other).unwrap(), v.clone());
        let a = double_schubert_via_word(&w, &v.reduced_word()).unwrap();
        prop_assert_eq!(&a, &double_schubert_via_word(&w, &other).unwrap());
        prop_assert_eq!(a, double_schubert(&w));
    }

    #[test]
    fn transition_matches_divided_differences(w in perm(5)) {
        let mut memo = HashMap::new();
        prop_assert_eq!(double_schubert_by_transition(&w, &mut memo), double_schubert(&w));
    }

    #[test]
    fn schubert_evaluation_lands_on_w(w in perm(5)) {
        let got = evaluate_at_dunkl(&x_to_z(&double_schubert(&w)), &GroupRingVec::identity(5), RepMode::CLASSICAL_T0)
            .unwrap();
        prop_assert_eq!(got, GroupRingVec::basis(&w));
    }

    #[test]
    fn path_rule_matches_operators(w in perm(4), u in perm(4), m in 1..=3usize, k in 1..=3usize) {
        prop_assume!(k <= m);
        prop_assert_eq!(
            struct_const_special(&w, &u, m, k).unwrap(),
            struct_const_special_by_operators(&w, &u, m, k).unwrap()
        );
    }

    #[test]
    fn dunkl_elements_commute(seed in any::<u64>(), quantum in any::<bool>()) {
        let mode = if quantum { RepMode::QUANTUM } else { RepMode::CLASSICAL };
        let v = random_vec(4, &mut ChaCha8Rng::seed_from_u64(seed));
        for i in 1..=4 {
            for j in i + 1..=4 {
                prop_assert_eq!(
                    apply_dunkl(i, &apply_dunkl(j, &v, mode), mode),
                    apply_dunkl(j, &apply_dunkl(i, &v, mode), mode)
                );
            }
        }
    }

    #[test]
    fn normal_forms_act_like_their_words(word in prop::collection::vec((1..=3usize, 1..=3usize), 0..5), seed in any::<u64>()) {
        // Any product of brackets, written out, acts on the representation
        // like the sequence of operators.
        let alg = Algebra::classical(3);
        let letters: Vec<(usize, usize)> = word.into_iter().filter(|(i, j)| i != j).collect();
        let text = if letters.is_empty() {
            "1".to_string()
        } else {
            letters.iter().map(|(i, j)| format!("[{i},{j}]")).collect::<Vec<_>>().join("*")
        };
        let e = parse_expr(alg, &text).unwrap();
        let v = random_vec(3, &mut ChaCha8Rng::seed_from_u64(seed));
        let mut want = v.clone();
        for &(i, j) in letters.iter().rev() {
            want = dunkl::bruhat_rep::apply_bracket(i, j, &want, RepMode::CLASSICAL);
        }
        prop_assert_eq!(e.apply(&v), want);
    }
}
