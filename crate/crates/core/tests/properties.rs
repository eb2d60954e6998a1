use gspin_core::arith::{q, qf, square_class_of, QuadElem, Q};
use gspin_core::cosets::{enumerate_minimal_reps, left_minimal, right_minimal, LeviShape};
use gspin_core::periods::{
    check_swap, conjugate_period, invt, make_standard_period, random_levi_element, Ambient, CharacterFunctional,
    NilSubalgebra, PeriodRef, UniPeriod,
};
use gspin_core::root_datum::{build_datum, cartan_matrix, dual_datum, Family, Parity, Side};
use gspin_core::similitude::so_elementary;
use gspin_core::unramified::{descent_parameter, pair_parameters, pairing_holds, random_selfdual, verify_weak_lift};
use gspin_core::weyl::{act_on_vector, random_element, WeylType};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| qf(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |x| *x != q(0))
}

fn radicand() -> impl Strategy<Value = Q> {
    prop::sample::select(vec![-7i64, -3, -1, 2, 3, 5, 6, 10]).prop_map(q)
}

fn quad(a: &Q) -> impl Strategy<Value = QuadElem> {
    let a = a.clone();
    (rational(), rational()).prop_map(move |(x, y)| QuadElem::new(x, y, &a).unwrap())
}

fn quad_triple() -> impl Strategy<Value = (QuadElem, QuadElem, QuadElem)> {
    radicand().prop_flat_map(|a| (quad(&a), quad(&a), quad(&a)))
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(vec![Family::GSp, Family::GSO, Family::GSpinOdd, Family::GSpinEven])
}

fn weyl_type() -> impl Strategy<Value = WeylType> {
    prop::sample::select(vec![WeylType::B, WeylType::D])
}

/// The algebra of `so_m` with only `(1,2)`, `(2,3)`, `(1,3)` free and
/// `extra` set to zero, carrying `c·X₁₃`.
fn gl3_period(m: usize, extra: (usize, usize), c: &Q) -> UniPeriod {
    let amb = Ambient::get(m);
    let eqs: Vec<Vec<Q>> = amb
        .coords()
        .iter()
        .filter(|&&x| ![(1, 2), (2, 3), (1, 3)].contains(&x) || x == extra)
        .map(|&(i, j)| amb.unit(i, j).unwrap())
        .collect();
    let alg = NilSubalgebra::solutions(m, &eqs).unwrap();
    let ch = CharacterFunctional::from_terms(m, &[((1, 3), c.clone())]).unwrap();
    UniPeriod::new(alg, &ch).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn square_class_ignores_squares(p in nonzero_rational(), s in nonzero_rational()) {
        let scaled = &p * &s * &s;
        prop_assert_eq!(square_class_of(&scaled).unwrap(), square_class_of(&p).unwrap());
    }

    #[test]
    fn square_classes_multiply(p in nonzero_rational(), r in nonzero_rational()) {
        let prod = square_class_of(&(&p * &r)).unwrap();
        prop_assert_eq!(prod, square_class_of(&p).unwrap().multiply(&square_class_of(&r).unwrap()));
    }

    #[test]
    fn quadratic_field_laws((u, v, w) in quad_triple()) {
        prop_assert_eq!((u.clone() * v.clone()) * w.clone(), u.clone() * (v.clone() * w.clone()));
        prop_assert_eq!(u.clone() * (v.clone() + w.clone()), u.clone() * v.clone() + u.clone() * w.clone());
        prop_assert_eq!((u.clone() * v.clone()).norm(), u.norm() * v.norm());
        prop_assert_eq!((u.clone() * v.clone()).conj(), u.conj() * v.conj());
        prop_assert_eq!(u.conj().conj(), u);
    }

    #[test]
    fn so_elementary_is_similitude_and_additive(
        m in 3usize..=8,
        i in 1usize..=8,
        j in 1usize..=8,
        a in rational(),
        b in rational(),
    ) {
        prop_assume!(i <= m && j <= m && i != j && i + j != m + 1);
        let ga = so_elementary(m, i, j, &a).unwrap();
        let gb = so_elementary(m, i, j, &b).unwrap();
        prop_assert_eq!(ga.lambda(), &q(1));
        let sum = so_elementary(m, i, j, &(&a + &b)).unwrap();
        let prod = ga.mul(&gb);
        prop_assert_eq!(prod.matrix(), sum.matrix());
    }

    #[test]
    fn dual_is_an_involution(f in family(), n in 2usize..=7) {
        let d = build_datum(f, n).unwrap();
        let dd = dual_datum(&d);
        prop_assert_eq!(dd.family, f.dual());
        prop_assert_eq!(&dual_datum(&dd), &d);
        let c = cartan_matrix(&d);
        let cd = cartan_matrix(&dd);
        for (r, row) in c.iter().enumerate() {
            for (s, x) in row.iter().enumerate() {
                prop_assert_eq!(*x, cd[s][r]);
            }
        }
    }

    #[test]
    fn weyl_group_acts(
        ty in weyl_type(),
        n in 1usize..=6,
        seed in any::<u64>(),
        v in prop::collection::vec(-9i64..=9, 7),
    ) {
        prop_assume!(ty == WeylType::B || n >= 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_element(ty, n, &mut rng);
        let o = random_element(ty, n, &mut rng);
        let v = &v[..=n];
        prop_assert!(w.compose(&w.invert()).unwrap().is_identity());
        let wo = w.compose(&o).unwrap();
        for side in [Side::Char, Side::Cochar] {
            let direct = act_on_vector(&wo, v, side).unwrap();
            let stepwise = act_on_vector(&w, &act_on_vector(&o, v, side).unwrap(), side).unwrap();
            prop_assert_eq!(direct, stepwise);
        }
    }

    #[test]
    fn minimal_reps_are_two_sided_minimal(
        blocks in prop::collection::vec(1usize..=2, 1..=3),
        middle in 0usize..=3,
        ell_seed in 0usize..8,
    ) {
        let shape = LeviShape { gl_blocks: blocks, middle };
        let m = shape.size();
        prop_assume!((3..=9).contains(&m));
        let ell = 1 + ell_seed % (m / 2);
        let reps = enumerate_minimal_reps(m, &shape, ell);
        prop_assume!(reps.is_ok());
        let right = LeviShape::q_ell(m, ell);
        for w in reps.unwrap() {
            prop_assert!(left_minimal(&w, &shape), "{:?}", w.values());
            prop_assert!(right_minimal(&w, &right), "{:?}", w.values());
        }
    }

    #[test]
    fn unramified_round_trip(n in 1usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_selfdual(n, &mut rng);
        for case in [Parity::Odd, Parity::Even] {
            if let Ok(p) = pair_parameters(&s, case) {
                prop_assert!(pairing_holds(&s, &p));
            }
            if let Ok(d) = descent_parameter(&s, case) {
                prop_assert!(verify_weak_lift(&s, &d, case));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn conjugation_is_an_action(
        n in 2usize..=3,
        a in nonzero_rational(),
        seed in any::<u64>(),
    ) {
        let m = 4 * n + 1;
        let p = make_standard_period(&PeriodRef::new("even.PsiA", &[("ell", q(n as i64)), ("a", a)]), m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_levi_element(m, n, 3, &mut rng);
        let h = random_levi_element(m, n, 3, &mut rng);
        let gh = conjugate_period(&g.mul(&h), &p).unwrap();
        let stepwise = conjugate_period(&g, &conjugate_period(&h, &p).unwrap()).unwrap();
        prop_assert_eq!(gh.dim(), p.dim());
        prop_assert_eq!(&gh, &stepwise);
        prop_assert_eq!(invt(&gh).unwrap(), invt(&p).unwrap());
        let back = conjugate_period(&g.mul(&h).inverse(), &gh).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn swaps_are_symmetric(m in 6usize..=8, c in nonzero_rational()) {
        let p1 = gl3_period(m, (2, 3), &c);
        let p3 = gl3_period(m, (1, 2), &c);
        let fwd = check_swap(&p1, p3.algebra(), p3.character()).unwrap();
        prop_assert_eq!(&fwd.swapped, &p3);
        let back = check_swap(&p3, p1.algebra(), p1.character()).unwrap();
        prop_assert_eq!(&back.swapped, &p1);
        prop_assert_eq!(fwd.pairing_rank, back.pairing_rank);
    }

    #[test]
    fn standard_periods_are_closed(n in 2usize..=3, ell_off in 0usize..3, a in nonzero_rational()) {
        let m = 4 * n + 1;
        let ell = n + ell_off.min(n - 1);
        for name in [
            PeriodRef::new("even.Psi", &[("ell", q(ell as i64))]),
            PeriodRef::new("even.PsiA", &[("ell", q(n as i64)), ("a", a.clone())]),
        ] {
            let p = make_standard_period(&name, m).unwrap();
            prop_assert!(p.algebra().closure_witness().is_none());
        }
    }
}
