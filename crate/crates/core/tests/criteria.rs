use anosov_cert::criteria::*;
use proptest::prelude::*;

fn stats(dim: usize, eps: f64, s: f64) -> StraightSpacedStats {
    StraightSpacedStats::new(dim, eps, s, 1).unwrap()
}

proptest! {
    #[test]
    fn passing_survives_larger_spacing(
        dim in 2usize..7,
        frac in 0.0f64..0.6,
        s in 0.5f64..12.0,
        extra in 0.0f64..5.0,
        t in 0.05f64..0.95,
    ) {
        let base = stats(dim, frac * eps_max(dim), s);
        if let Ok(aux) = derive_aux(&base, t) {
            if verify_assumptions(&base, &aux).unwrap().all_pass {
                let wider = stats(dim, base.eps, s + extra);
                prop_assert!(verify_assumptions(&wider, &aux).unwrap().all_pass);
            }
        }
    }

    #[test]
    fn undistortion_constants_iff_all_pass(
        dim in 2usize..7,
        eps in 0.0f64..1.5,
        s in 0.0f64..10.0,
        eps_aux in 0.0f64..2.0,
        d1 in 0.0f64..2.0,
        d2 in 0.0f64..2.0,
        d3 in 0.0f64..2.0,
        d4 in 0.0f64..3.0,
    ) {
        prop_assume!(eps_aux > eps);
        let aux = AuxParams { eps_aux, delta1: d1, delta2: d2, delta3: d3, delta4: d4 };
        let report = verify_assumptions(&stats(dim, eps, s), &aux).unwrap();
        prop_assert_eq!(report.assumptions.len(), 5);
        prop_assert_eq!(report.all_pass, report.passes().iter().all(|&p| p));
        match report.undistortion {
            Some(u) => {
                prop_assert!(report.all_pass);
                prop_assert!(u.c1 > 0.0);
                prop_assert_eq!((u.c1, u.c2), (s - 2.0 * d4, 2.0 * d4));
            }
            None => prop_assert!(!report.all_pass),
        }
        for a in &report.assumptions {
            prop_assert!(a.pass || a.margin <= 0.0);
        }
    }

    #[test]
    fn derived_constants_meet_a2_a3_with_equality(
        dim in 2usize..7,
        frac in 0.0f64..0.9,
        s in 0.0f64..10.0,
        t in 0.01f64..0.99,
    ) {
        let st = stats(dim, frac * eps_max(dim), s);
        if let Ok(aux) = derive_aux(&st, t) {
            let report = verify_assumptions(&st, &aux).unwrap();
            prop_assert!(report.assumptions[1].pass && report.assumptions[2].pass);
            prop_assert!(report.assumptions[2].margin.abs() < 1e-12);
            prop_assert!(report.assumptions[1].margin.abs() < 1e-12);
            prop_assert!(aux.eps_aux > st.eps);
            prop_assert!(aux.delta4 >= aux.delta3 && aux.delta3 >= 0.0);
        }
    }
}

#[test]
fn eps_max_is_decreasing() {
    assert_eq!(eps_max(2), std::f64::consts::PI);
    for d in 2..20 {
        assert!(eps_max(d + 1) < eps_max(d));
    }
}

#[test]
fn eps_at_the_limit_has_no_constants() {
    let search = search_aux(&stats(3, eps_max(3), 5.0), 64);
    assert!(search.found.is_none());
    assert!(search.diagnostic.unwrap().contains("eps"));
}

#[test]
fn invalid_inputs() {
    assert!(StraightSpacedStats::new(1, 0.1, 1.0, 1).is_err());
    assert!(StraightSpacedStats::new(3, -0.1, 1.0, 1).is_err());
    let st = stats(3, 0.5, 3.0);
    assert!(matches!(
        derive_aux(&st, 0.0),
        Err(CriteriaError::InvalidT(_))
    ));
    let aux = derive_aux(&st, 0.3).unwrap();
    let bad = AuxParams {
        eps_aux: 0.4,
        ..aux
    };
    assert!(matches!(
        verify_assumptions(&st, &bad),
        Err(CriteriaError::InvalidAux { .. })
    ));
}
