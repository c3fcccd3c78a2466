use cms_core::bipart::{extremal_pair, f_map, in_cross, in_cross_geometric, Bipartition};
use cms_core::diagram::eq_class;
use cms_core::kfield::{IntPolyK, RatK};
use cms_core::laurent::{deformed_power_sum, hull_lattice_points, partial_leq, LaurentPoly};
use cms_core::partition::{Partition, Permutation};
use cms_core::quasi::{
    integral_apply, is_quasi_homomorphism, is_quasi_invariant, moser_apply, QuasiMap,
};
use cms_core::rootsys::{b_gen_eval_vec, inner, odd_positive_roots, rho, theta_all, Weight};
use cms_core::spectral::g1g2;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn intpoly() -> impl Strategy<Value = IntPolyK> {
    prop::collection::vec(-5i64..=5, 0..4).prop_map(|c| IntPolyK::from_i64s(&c))
}

fn ratk() -> impl Strategy<Value = RatK> {
    (intpoly(), intpoly(), 0u32..3).prop_filter_map("nonzero denominator", |(a, b, s)| {
        let den = &b * &IntPolyK::monomial(BigInt::from(1), s as usize);
        let den = if b.is_zero() { IntPolyK::one() } else { den };
        RatK::new(a, den).ok()
    })
}

fn laurent(n: usize, m: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, n + m), -3i64..=3), 0..5).prop_map(
        move |t| LaurentPoly::from_terms(n, m, t.into_iter().map(|(e, c)| (e, RatK::from_int(c)))),
    )
}

/// Sums of products of deformed power sums.
fn quasi_invariant(n: usize, m: usize) -> impl Strategy<Value = LaurentPoly> {
    let product = prop::collection::vec(prop::sample::select(vec![-2i64, -1, 1, 2]), 0..3);
    prop::collection::vec((product, 1i64..=3), 1..3).prop_map(move |terms| {
        let mut f = LaurentPoly::zero(n, m);
        for (ps, c) in terms {
            let mut g = LaurentPoly::constant(n, m, RatK::from_int(c));
            for s in ps {
                g = &g * &deformed_power_sum(s, n, m).unwrap();
            }
            f = &f + &g;
        }
        f
    })
}

fn permutation(n: usize, m: usize) -> impl Strategy<Value = Permutation> {
    let even = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
    let odd = Just((n..n + m).collect::<Vec<usize>>()).prop_shuffle();
    (even, odd).prop_map(move |(mut e, o)| {
        e.extend(o);
        Permutation::new(n, m, e).unwrap()
    })
}

fn partition(max: i64) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max, 0..4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn dominant(n: usize, m: usize, bound: i64) -> impl Strategy<Value = Weight> {
    prop::sample::select(Weight::dominant_box(n, m, bound))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratk(), b in ratk(), c in ratk()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn evaluation_is_multiplicative(a in ratk(), b in ratk(), p in -7i64..=7, q in 1i64..=5) {
        let k0 = BigRational::new(p.into(), q.into());
        if let (Ok(x), Ok(y), Ok(z), Ok(s)) = (a.eval(&k0), b.eval(&k0), (&a * &b).eval(&k0), (&a + &b).eval(&k0)) {
            prop_assert_eq!(z, &x * &y);
            prop_assert_eq!(s, &x + &y);
        }
    }

    #[test]
    fn normalization_is_idempotent(a in ratk()) {
        let again = RatK::new(a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(again.num(), a.num());
        prop_assert_eq!(a.to_string().parse::<RatK>().unwrap(), a);
    }

    #[test]
    fn dominance_is_a_partial_order(
        a in prop::collection::vec(-2i64..=2, 3),
        b in prop::collection::vec(-2i64..=2, 3),
        c in prop::collection::vec(-2i64..=2, 3),
    ) {
        prop_assert!(partial_leq(&a, &a));
        if partial_leq(&a, &b) && partial_leq(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if partial_leq(&a, &b) && partial_leq(&b, &c) {
            prop_assert!(partial_leq(&a, &c));
        }
    }

    #[test]
    fn support_of_product_lies_in_minkowski_sum(f in laurent(1, 2), g in laurent(1, 2)) {
        let prod = &f * &g;
        if !prod.is_zero() {
            let sf = f.support_members().unwrap();
            let sg = g.support_members().unwrap();
            let sum: Vec<Vec<i64>> =
                sf.iter().flat_map(|a| sg.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())).collect();
            // lattice points of a Minkowski sum need not be sums of lattice points
            let hull = hull_lattice_points(&sum);
            for e in prod.support_members().unwrap() {
                prop_assert!(hull.contains(&e), "{:?}", e);
            }
        }
    }

    #[test]
    fn permutations_act(f in laurent(2, 2), u in permutation(2, 2), v in permutation(2, 2)) {
        prop_assert_eq!(f.sym_apply(&u.compose(&v)), f.sym_apply(&v).sym_apply(&u));
        prop_assert_eq!(f.sym_apply(&Permutation::identity(2, 2)), f.clone());
    }

    #[test]
    fn power_sum_products_are_quasi_invariant(f in quasi_invariant(2, 1), g in quasi_invariant(1, 2)) {
        prop_assert!(is_quasi_invariant(&f));
        prop_assert!(is_quasi_invariant(&g));
        prop_assert!(is_quasi_invariant(&(&f * &f)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn moser_steps_stay_quasi_homomorphisms(f in quasi_invariant(2, 1)) {
        let mut phi = QuasiMap::constant(&f);
        for _ in 0..3 {
            phi = moser_apply(&phi).unwrap();
            prop_assert!(is_quasi_homomorphism(&phi));
        }
    }

    #[test]
    fn integrals_preserve_quasi_invariants_and_supports(f in quasi_invariant(1, 2)) {
        for r in 1..=4 {
            let g = integral_apply(r, &f).unwrap();
            prop_assert!(is_quasi_invariant(&g));
            prop_assert!(g.support_within(&f));
        }
    }

    #[test]
    fn integrals_commute(f in quasi_invariant(2, 1)) {
        for (r, s) in [(1, 2), (2, 3), (1, 3)] {
            let rs = integral_apply(r, &integral_apply(s, &f).unwrap()).unwrap();
            let sr = integral_apply(s, &integral_apply(r, &f).unwrap()).unwrap();
            prop_assert_eq!(rs, sr);
        }
    }

    #[test]
    fn leading_coefficient_law(chi in dominant(2, 1, 1)) {
        let f = g1g2(&chi).unwrap();
        let c = f.coeff(chi.coords());
        let theta = theta_all(&chi, 3).unwrap();
        for (r, t) in theta.iter().enumerate() {
            let g = integral_apply(r + 1, &f).unwrap();
            prop_assert_eq!(g.coeff(chi.coords()), t * &c);
        }
    }

    #[test]
    fn eigenvalues_are_constant_on_classes(chi in dominant(2, 1, 2)) {
        let class = eq_class(&chi).unwrap().class;
        let t0 = theta_all(&class[0], 3).unwrap();
        for w in &class[1..] {
            prop_assert_eq!(&theta_all(w, 3).unwrap(), &t0);
        }
    }

    #[test]
    fn bernoulli_sums_are_affinely_quasi_invariant(
        free in prop::collection::vec((-4i64..=4, 1i64..=3), 3),
        pick in 0usize..2,
        r in 1usize..=5,
    ) {
        let (n, m) = (2, 1);
        let alpha = &odd_positive_roots(n, m)[pick];
        let a = alpha.vector(n, m);
        let rh = rho(n, m);
        let half = inner(n, &a, &a).checked_div(&RatK::from_int(2)).unwrap();
        // v on the hyperplane (v + ρ, α) = ½(α, α), solved for the even coordinate of α
        let mut v: Vec<RatK> = free.iter().map(|&(p, q)| RatK::from_ratio(p, q).unwrap()).collect();
        let i = alpha.i;
        v[i] = RatK::zero();
        let shifted: Vec<RatK> = v.iter().zip(&rh).map(|(x, y)| x + y).collect();
        let rest = inner(n, &shifted, &a);
        v[i] = &half - &rest;
        let shifted: Vec<RatK> = v.iter().zip(&rh).map(|(x, y)| x + y).collect();
        prop_assert_eq!(inner(n, &shifted, &a), half.clone());
        let w: Vec<RatK> = v.iter().zip(&a).map(|(x, y)| x - y).collect();
        prop_assert_eq!(b_gen_eval_vec(r, n, &v), b_gen_eval_vec(r, n, &w));
    }

    #[test]
    fn cross_membership_matches_lines(l in partition(4), u in partition(4)) {
        for (n, m) in [(1, 1), (2, 1), (2, 2)] {
            let bp = Bipartition::new(l.clone(), u.clone());
            prop_assert_eq!(in_cross(&bp, n, m), in_cross_geometric(&bp, n, m));
            if in_cross(&bp, n, m) {
                let (g, nn, mm) = f_map(&bp, n, m).unwrap();
                prop_assert_eq!(extremal_pair(&g, nn, mm).unwrap(), extremal_pair(&bp, n, m).unwrap());
            }
        }
    }
}
