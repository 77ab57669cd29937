use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use willmore_core::ends::line_direction_limit;
use willmore_core::*;

fn small_q() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (small_q(), small_q()).prop_map(|(a, b)| Coeff::gauss(a, b))
}

fn nonzero_coeff() -> impl Strategy<Value = Coeff> {
    coeff().prop_filter("nonzero", |c| !c.is_zero())
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(coeff(), 0..=max_len).prop_map(|c| Poly::new(c, Var::Z))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), coeff()), 0..5).prop_map(BiPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coeff_field_axioms(a in coeff(), b in coeff(), c in nonzero_coeff()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &c) * &c.inv().unwrap(), a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(Coeff::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn surd_arithmetic(a in small_q(), b in small_q(), d in prop::sample::select(vec![2u32, 3, 5, 30])) {
        let x = &Coeff::rational(a) + &(&Coeff::rational(b) * &Coeff::sqrt(d));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        let back = Coeff::parse(&x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn division_with_remainder(a in poly(6), d in nonzero_poly(4)) {
        let (q, r) = a.divrem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(a in nonzero_poly(4), b in nonzero_poly(4), c in nonzero_poly(3)) {
        let ac = a.mul(&c);
        let bc = b.mul(&c);
        let g = ac.gcd(&bc).unwrap();
        prop_assert!(ac.exact_div(&g).is_some());
        prop_assert!(bc.exact_div(&g).is_some());
        prop_assert!(g.exact_div(&c).is_some());
    }

    #[test]
    fn rational_function_calculus(n1 in poly(4), d1 in nonzero_poly(3), n2 in poly(4), d2 in nonzero_poly(3)) {
        let f = Rat::new(n1, d1).unwrap();
        let g = Rat::new(n2, d2).unwrap();
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        prop_assert!(lhs.sub(&rhs).is_zero());
        prop_assert!(f.invert_chart().invert_chart().sub(&f).is_zero());
        if !g.is_zero() {
            prop_assert!(f.div(&g).unwrap().mul(&g).sub(&f).is_zero());
        }
    }

    #[test]
    fn bivariate_derivatives_commute_with_conjugation(p in bipoly(), q in bipoly().prop_filter("nonzero", |q| !q.is_zero())) {
        let f = BiRat::ratio(p, &q).unwrap();
        prop_assert!(f.conj().dz().sub(&f.dzb().conj()).is_zero());
        prop_assert!(f.dz().dzb().sub(&f.dzb().dz()).is_zero());
        prop_assert!(f.conj().conj().sub(&f).is_zero());
        let c = Coeff::ratio(1, 3);
        prop_assert!(f.translate(&c).translate(&-c).sub(&f).is_zero());
    }

    #[test]
    fn laurent_reconstructs_near_a_pole(num in nonzero_poly(4), p in coeff(), k in 1u32..4, t in 0.0f64..std::f64::consts::TAU) {
        let den = Poly::linear_root(&p, Var::Z).pow(k);
        let f = Rat::new(num.clone(), den).unwrap();
        let l = f.laurent(&Point::Finite(p.clone()), 40).unwrap();
        let h = Complex64::from_polar(1e-2, t);
        // factored form; the expanded denominator cancels badly near p
        let exact = num.eval_c64(p.to_c64() + h) / h.powu(k);
        let approx = l.eval_c64(h);
        prop_assert!((exact - approx).norm() <= 1e-8 * exact.norm().max(1.0));
    }

    #[test]
    fn direction_limit_ignores_common_factors(
        sections in prop::collection::vec(poly(3), 2..5),
        u in nonzero_poly(3),
        v in nonzero_poly(2),
        p in coeff(),
    ) {
        prop_assume!(sections.iter().any(|s| !s.is_zero()));
        let rats: Vec<Rat> = sections.iter().map(|s| Rat::from_poly(s.clone())).collect();
        let factor = Rat::new(u, v).unwrap();
        let scaled: Vec<Rat> = rats.iter().map(|r| r.mul(&factor)).collect();
        for at in [Point::Finite(p.clone()), Point::Infinity] {
            prop_assert_eq!(line_direction_limit(&rats, &at).unwrap(), line_direction_limit(&scaled, &at).unwrap());
        }
    }
}
