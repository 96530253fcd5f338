use bs_twist::homs::endo_compose;
use bs_twist::reidemeister::{snf, IntMatrix};
use bs_twist::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const GROUPS: &[(i64, i64)] = &[(1, 2), (1, -2), (1, 3), (2, 3), (2, -3), (2, 2), (2, -2), (3, 3), (1, -1), (3, 5)];
const MODEL_GROUPS: &[(i64, i64)] = &[(1, 2), (1, -3), (2, 2), (-2, -2), (3, 3), (1, -1), (-1, 1), (3, 1)];

fn group_from(list: &'static [(i64, i64)]) -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(list).prop_map(|(m, n)| GroupSpec::new(m, n).unwrap())
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((any::<bool>(), -3i64..=3), 0..=max_len).prop_map(|letters| {
        Word::from_syllables(
            letters.into_iter().filter(|(_, e)| *e != 0).map(|(is_a, e)| Syllable::new(if is_a { Gen::A } else { Gen::B }, e)),
        )
    })
}

fn in_kernel(w: Word) -> Word {
    let s = w.exp_sum(Gen::A);
    w.multiply(&Word::gen(Gen::A, -s))
}

fn ratio(group: &GroupSpec) -> BigRational {
    BigRational::new(BigInt::from(group.n()), BigInt::from(group.m()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn parse_display_round_trip(w in word(8)) {
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn normal_form_is_idempotent(g in group_from(GROUPS), w in word(8)) {
        let nf = normal_form(&w, &g).into_word();
        prop_assert_eq!(normal_form(&nf, &g).into_word(), nf.clone());
        prop_assert!(are_equal(&nf, &w, &g));
    }

    #[test]
    fn inserted_relator_does_not_change_normal_form(
        g in group_from(GROUPS), u in word(5), v in word(5), c in word(3), invert in any::<bool>()
    ) {
        let mut r = g.relator().conjugated_by(&c);
        if invert {
            r = r.inverse();
        }
        let with = u.multiply(&r).multiply(&v);
        prop_assert_eq!(normal_form(&with, &g), normal_form(&u.multiply(&v), &g));
    }

    #[test]
    fn group_laws(g in group_from(GROUPS), u in word(6), v in word(6), w in word(6)) {
        prop_assert!(normal_form(&u.multiply(&u.inverse()), &g).is_identity());
        let lhs = u.multiply(&v).multiply(&w);
        let rhs = u.multiply(&v.multiply(&w));
        prop_assert!(are_equal(&lhs, &rhs, &g));
        let nu = normal_form(&u, &g).into_word();
        let nv = normal_form(&v, &g).into_word();
        prop_assert_eq!(normal_form(&nu.multiply(&nv), &g), normal_form(&u.multiply(&v), &g));
    }

    #[test]
    fn britton_agrees_with_model(g in group_from(MODEL_GROUPS), u in word(6), v in word(6)) {
        prop_assert_eq!(model_equal_oracle(&u, &v, &g).unwrap(), are_equal(&u, &v, &g));
    }

    #[test]
    fn model_embedding_is_a_homomorphism(g in group_from(MODEL_GROUPS), u in word(6), v in word(6)) {
        let family = ModelFamily::for_group(&g).unwrap();
        let nu = normal_form(&u, &g).into_word();
        let nv = normal_form(&v, &g).into_word();
        prop_assert_eq!(family.embed(&u.multiply(&v)).unwrap(), family.embed(&nu.multiply(&nv)).unwrap());
        prop_assert_eq!(family.embed(&g.relator()).unwrap(), family.embed(&Word::identity()).unwrap());
    }

    #[test]
    fn model_round_trips(g in group_from(MODEL_GROUPS), w in word(8)) {
        let family = ModelFamily::for_group(&g).unwrap();
        let x = family.embed(&w).unwrap();
        prop_assert_eq!(family.parse_element(&x.to_string()).unwrap(), x.clone());
        let back = family.to_word(&x).unwrap();
        prop_assert_eq!(family.embed(&back).unwrap(), x);
        prop_assert!(are_equal(&back, &w, &g));
    }

    #[test]
    fn standardization_preserves_equality(g in group_from(GROUPS), u in word(6), v in word(6)) {
        let st = g.standardize();
        let (su, sv) = (st.apply(&u), st.apply(&v));
        prop_assert_eq!(are_equal(&u, &v, &g), are_equal(&su, &sv, &st.target));
        prop_assert!(are_equal(&st.apply(&g.relator()), &Word::identity(), &st.target));
    }

    #[test]
    fn kernel_decomposition_recomposes(g in group_from(GROUPS), w in word(8)) {
        let k = in_kernel(w);
        let d = kernel_decompose(&k, &g).unwrap();
        prop_assert!(are_equal(&d.recompose(), &k, &g));
    }

    #[test]
    fn kappa_is_additive_and_well_defined(g in group_from(GROUPS), u in word(6), v in word(6), c in word(3)) {
        let (ku, kv) = (in_kernel(u), in_kernel(v));
        let sum = kappa(&ku, &g).unwrap() + kappa(&kv, &g).unwrap();
        prop_assert_eq!(kappa(&ku.multiply(&kv), &g).unwrap(), sum);
        let r = g.relator().conjugated_by(&c);
        prop_assert_eq!(kappa(&ku.multiply(&r), &g).unwrap(), kappa(&ku, &g).unwrap());
    }

    #[test]
    fn kappa_conjugation_law(g in group_from(GROUPS), w in word(6), c in word(4)) {
        let k = in_kernel(w);
        let conj = c.inverse().multiply(&k).multiply(&c);
        let t = c.exp_sum(Gen::A);
        let exp: i32 = (&t).try_into().unwrap();
        let scale = if exp >= 0 { ratio(&g).pow(exp) } else { ratio(&g).recip().pow(-exp) };
        prop_assert_eq!(kappa(&conj, &g).unwrap(), kappa(&k, &g).unwrap() * scale);
    }

    #[test]
    fn endomorphisms_respect_the_group(g in group_from(GROUPS), c in word(3), u in word(5), v in word(5)) {
        let inner = EndoSpec::inner(g, &c);
        prop_assert!(inner.is_valid());
        let image = endo_apply(&inner, &u.multiply(&v)).unwrap();
        let product = endo_apply(&inner, &u).unwrap().multiply(&endo_apply(&inner, &v).unwrap());
        prop_assert!(are_equal(&image, &product, &g));
        prop_assert!(are_equal(&image, &u.multiply(&v).conjugated_by(&c), &g));
        let twice = endo_compose(&inner, &inner).unwrap();
        prop_assert!(are_equal(&endo_apply(&twice, &u).unwrap(), &u.conjugated_by(&c).conjugated_by(&c), &g));
    }

    #[test]
    fn power_map_on_equal_case(m in 1i64..=3, k in 1i64..=3, u in word(5), v in word(5)) {
        let g = GroupSpec::new(m, m).unwrap();
        let phi = EndoSpec::new(g, Word::a(k), Word::b(1));
        prop_assert!(phi.is_valid());
        let image = endo_apply(&phi, &u.multiply(&v)).unwrap();
        let product = endo_apply(&phi, &u).unwrap().multiply(&endo_apply(&phi, &v).unwrap());
        prop_assert!(are_equal(&image, &product, &g));
    }

}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn snf_invariants(rows in 1usize..=4, cols in 1usize..=4, entries in prop::collection::vec(-9i64..=9, 16)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect();
        let m = IntMatrix::from_rows(&data).unwrap();
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.determinant().unwrap().abs().is_one());
        prop_assert!(s.v.determinant().unwrap().abs().is_one());
        for (i, x) in s.diagonal.iter().enumerate() {
            prop_assert!(!x.is_negative());
            prop_assert_eq!(s.d.get(i, i), x);
            if let Some(next) = s.diagonal.get(i + 1) {
                let divides = if x.is_zero() { next.is_zero() } else { (next % x).is_zero() };
                prop_assert!(divides);
            }
        }
        if rows == cols {
            let det = m.determinant().unwrap().abs();
            let prod: BigInt = s.diagonal.iter().product();
            prop_assert_eq!(prod, det);
        }
    }
}
