mod common;

use common::*;
use proptest::prelude::*;
use willmore_core::adjoint::{adjoint, pedal, recover_g, verify_contact};
use willmore_core::examples::{example1, zpow};
use willmore_core::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (prop::collection::vec(gauss(), 1..4), gauss(), any::<bool>()).prop_map(|(num, pole, proper)| {
        let n = Rat::from_poly(Poly::new(num, Var::Z));
        if proper {
            n.div(&zpow(Coeff::one(), 1).sub(&Rat::constant(pole, Var::Z))).unwrap()
        } else {
            n
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pedals_of_superconformal_data_touch_exactly(s in quadratic_surface(), x0 in real_point(6)) {
        prop_assert!(s.is_superconformal());
        let adj = pedal(&s, &x0).unwrap();
        let (conformal, contact) = verify_contact(&adj);
        prop_assert!(conformal.is_zero());
        prop_assert!(contact.is_zero());
        prop_assert!(adj.riccati_verified);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn recover_g_inverts_adjoint(g in small_rat(), s in quadratic_surface()) {
        let adj = adjoint(&s, &g).unwrap();
        prop_assert!(recover_g(&s, &adj.xhat).unwrap().sub(&g).is_zero());
        let (conformal, contact) = verify_contact(&adj);
        prop_assert!(conformal.is_zero() && contact.is_zero());
    }

    #[test]
    fn recover_g_on_the_first_example(g in small_rat()) {
        let s = example1();
        let adj = adjoint(&s, &g).unwrap();
        prop_assert!(recover_g(&s, &adj.xhat).unwrap().sub(&g).is_zero());
    }
}

#[test]
fn non_superconformal_data_is_rejected() {
    // Enneper: x_zz.x_zz = 4 != 0
    let f = vec![
        zpow(Coeff::one(), 1).sub(&zpow(Coeff::ratio(1, 3), 3)),
        zpow(Coeff::i(), 1).add(&zpow(Coeff::ratio(1, 3) * Coeff::i(), 3)),
        zpow(Coeff::one(), 2),
    ];
    let s = MinimalSurface::new(f).unwrap();
    assert!(matches!(pedal(&s, &[Coeff::zero(), Coeff::zero(), Coeff::zero()]), Err(Error::NotSuperconformal)));
}
