mod common;

use common::{close, determinantal, kirkwood, kirkwood_tables, low_activity, poisson, tuple};
use corrinv_core::models::{rho_family, rho_t_family, CorrelationModel, TabulatedModel};
use corrinv_core::oracles::truncation_oracle;
use corrinv_core::ruelle::{star_exp, star_log};
use corrinv_core::PointTuple;
use proptest::prelude::*;

fn exp_identity<M: CorrelationModel>(m: &M, p: &PointTuple) -> bool {
    let n = m.max_order().min(5);
    let exp = star_exp(&rho_t_family(m, n)).unwrap();
    close(exp.eval(p).unwrap(), m.rho(p).unwrap(), 1e-10)
}

fn ruelle_bound<M: CorrelationModel>(m: &M, p: &PointTuple) -> bool {
    let v = m.rho(p).unwrap();
    let bound = m.ruelle_xi().powi(p.len() as i32);
    v >= -1e-15 && v <= bound * (1.0 + 1e-12)
}

fn shift_invariant<M: CorrelationModel>(m: &M, p: &PointTuple, c: f64) -> bool {
    close(m.rho(&p.shifted(&[c])).unwrap(), m.rho(p).unwrap(), 1e-12)
        && close(m.rho_t(&p.shifted(&[c])).unwrap(), m.rho_t(p).unwrap(), 1e-10)
}

fn reversed(p: &PointTuple) -> PointTuple {
    let idx: Vec<usize> = (0..p.len()).rev().collect();
    p.pick(&idx)
}

fn symmetric<M: CorrelationModel>(m: &M, p: &PointTuple) -> bool {
    close(m.rho(&reversed(p)).unwrap(), m.rho(p).unwrap(), 1e-12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kirkwood_invariants(a in -0.45f64..0.45, p in tuple(5), c in -3.0f64..3.0) {
        let m = kirkwood(a);
        prop_assert!(exp_identity(&m, &p));
        prop_assert!(ruelle_bound(&m, &p));
        prop_assert!(shift_invariant(&m, &p, c));
        prop_assert!(symmetric(&m, &p));
        let log = star_log(&rho_family(&m, 5)).unwrap();
        prop_assert!(close(log.eval(&p).unwrap(), m.rho_t(&p).unwrap(), 1e-10));
    }

    #[test]
    fn determinantal_invariants(p in tuple(5), c in -3.0f64..3.0) {
        let m = determinantal();
        prop_assert!(exp_identity(&m, &p));
        prop_assert!(ruelle_bound(&m, &p));
        prop_assert!(shift_invariant(&m, &p, c));
        prop_assert!(symmetric(&m, &p));
        let log = star_log(&rho_family(&m, 5)).unwrap();
        prop_assert!(close(log.eval(&p).unwrap(), m.rho_t(&p).unwrap(), 1e-10));
    }

    #[test]
    fn poisson_invariants(p in tuple(5), c in -3.0f64..3.0) {
        let m = poisson();
        prop_assert!(exp_identity(&m, &p));
        prop_assert!(ruelle_bound(&m, &p));
        prop_assert!(shift_invariant(&m, &p, c));
    }

    #[test]
    fn tabulated_invariants(p in tuple(3), c in -0.5f64..0.5) {
        let m = kirkwood_tables(0.3, 0.3, 0.05, 3.0);
        prop_assert!(exp_identity(&m, &p));
        prop_assert!(ruelle_bound(&m, &p));
        // grid-aligned shifts keep interpolation weights
        let s = (c / 0.05).round() * 0.05;
        prop_assert!(close(m.rho(&p.shifted(&[s])).unwrap(), m.rho(&p).unwrap(), 1e-9));
    }

    #[test]
    fn truncation_oracle_agrees(a in -0.45f64..0.45, p in tuple(5)) {
        let m = kirkwood(a);
        let oracle = truncation_oracle(&|q: &PointTuple| m.rho(q), &p).unwrap();
        prop_assert!(close(oracle, m.rho_t(&p).unwrap(), 1e-11));
    }

    #[test]
    fn ideal_tables_are_poisson(p in tuple(3), rho in 0.1f64..2.0) {
        let t = TabulatedModel::ideal(rho).unwrap();
        prop_assert!(close(t.rho(&p).unwrap(), rho.powi(p.len() as i32), 1e-14));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn low_activity_invariants(p in tuple(4), c in -3.0f64..3.0) {
        let m = low_activity();
        prop_assert!(exp_identity(&m, &p));
        prop_assert!(ruelle_bound(&m, &p));
        prop_assert!(shift_invariant(&m, &p, c));
        prop_assert!(symmetric(&m, &p));
    }
}

#[test]
fn tabulated_round_trip_off_grid() {
    let fine = kirkwood_tables(0.3, 0.3, 0.02, 4.0);
    let exact = kirkwood(0.3);
    for &(a, b, y) in &[(0.013, 0.871, -0.421), (1.234, -0.5555, 0.101), (-1.9, 0.3, 0.77)] {
        let p = PointTuple::line(&[a, b, y]);
        assert!((fine.rho(&p.pick(&[0, 1])).unwrap() - exact.rho(&p.pick(&[0, 1])).unwrap()).abs() < 1e-4);
        assert!((fine.rho_t(&p).unwrap() - exact.rho_t(&p).unwrap()).abs() < 1e-4);
    }
}
