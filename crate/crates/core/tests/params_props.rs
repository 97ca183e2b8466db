use std::collections::BTreeMap;

use pquiver::parabolic::{build_parabolic, ParabolicDatum};
use pquiver::params::paramfile::{write_map, ParamFile};
use pquiver::params::{check_constraint, sigma_degree, slope_o, triple_epsilon, EpsilonSet, ParamContext};
use pquiver::rootsys::build_root_system;
use pquiver::weight::{rat, rat_frac, Rational, Weight};
use proptest::prelude::*;

fn par(g: &str, sigma: &[usize]) -> ParabolicDatum {
    build_parabolic(&build_root_system(g.parse().unwrap()).unwrap(), sigma).unwrap()
}

fn q() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..9).prop_map(|(n, d)| rat_frac(n, d))
}

fn pos() -> impl Strategy<Value = Rational> {
    (1i64..30, 1i64..9).prop_map(|(n, d)| rat_frac(n, d))
}

fn pick(c: usize) -> ParabolicDatum {
    let cases: [(&str, &[usize]); 6] = [("A2", &[1]), ("A2", &[0, 1]), ("B2", &[0]), ("B2", &[1]), ("A3", &[0, 2]), ("G2", &[0])];
    let (g, s) = cases[c % cases.len()];
    par(g, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn slope_is_linear_in_lambda(c in 0usize..6, a in prop::collection::vec(-6i64..6, 3), b in prop::collection::vec(-6i64..6, 3), e in pos()) {
        let p = pick(c);
        let r = p.rank();
        let eps = EpsilonSet::uniform(&p, e.clone());
        let (la, lb) = (Weight::from_ints(&a[..r]), Weight::from_ints(&b[..r]));
        let sum = slope_o(&p, &eps, &la.add(&lb)).unwrap();
        prop_assert_eq!(sum, slope_o(&p, &eps, &la).unwrap() + slope_o(&p, &eps, &lb).unwrap());
        let one = slope_o(&p, &EpsilonSet::uniform(&p, rat(1)), &la).unwrap();
        prop_assert_eq!(slope_o(&p, &eps, &la).unwrap(), one / e);
    }

    #[test]
    fn p2_tau_prime_matches_closed_form(l0 in 0i64..8, l1 in -8i64..8, tau in q(), e in pos()) {
        let p = par("A2", &[1]);
        let ctx = ParamContext::new(&p, &EpsilonSet::uniform(&p, e.clone())).unwrap();
        let lam = Weight::from_ints(&[l0, l1]);
        let tp = ctx.tau_to_tauprime(&BTreeMap::from([(lam.clone(), tau.clone())])).unwrap();
        let n = rat(l0 + 1);
        let mu = rat(l0 + 2 * l1) / &e;
        prop_assert_eq!(&tp[&lam], &(n * (&tau - mu)));
        let back = ctx.tauprime_to_tau(&tp).unwrap();
        prop_assert_eq!(&back[&lam], &tau);
    }

    #[test]
    fn constraint_detects_exact_balance(tau in prop::collection::vec(q(), 1..5), ranks in prop::collection::vec(0i64..5, 5), shift in q()) {
        let r = &ranks[..tau.len()];
        let deg = tau.iter().zip(r).fold(rat(0), |acc, (t, &k)| acc + t * rat(k));
        prop_assert_eq!(check_constraint(&tau, r, &deg).unwrap(), (true, rat(0)));
        let (holds, residual) = check_constraint(&tau, r, &(&deg + &shift)).unwrap();
        prop_assert_eq!(holds, shift == rat(0));
        prop_assert_eq!(residual, shift);
    }

    #[test]
    fn sigma_degree_adds_weighted_ranks(sigma in prop::collection::vec(q(), 0..4), deg in q(), ranks in prop::collection::vec(1i64..6, 5)) {
        let fr = &ranks[..sigma.len() + 1];
        let want = sigma.iter().zip(fr).fold(deg.clone(), |acc, (s, &r)| acc + s * rat(r));
        prop_assert_eq!(sigma_degree(&sigma, fr, &deg).unwrap(), want);
    }

    #[test]
    fn triple_epsilon_solves_its_equation(r0 in 0i64..4, r1 in 1i64..4, d0 in q(), d1 in q(), t in q()) {
        let lhs = rat(r0 + r1) * &t - (&d0 + &d1);
        match triple_epsilon(r0, r1, &d0, &d1, &t) {
            Ok(eps) => {
                prop_assert!(eps > rat(0));
                prop_assert_eq!(rat(2) * rat(r1) / eps, lhs);
            }
            Err(_) => prop_assert!(lhs <= rat(0)),
        }
    }

    #[test]
    fn param_file_roundtrip(vals in prop::collection::btree_map((0i64..5, -4i64..5), q(), 1..8)) {
        let map: BTreeMap<Weight, Rational> = vals.into_iter().map(|((a, b), v)| (Weight::from_ints(&[a, b]), v)).collect();
        let vertices: Vec<Weight> = map.keys().cloned().collect();
        let text = format!("epsilon.a2 = 3/2\n{}{}", write_map("tau", &map), write_map("tauprime", &map));
        let f = ParamFile::parse(&text).unwrap();
        prop_assert_eq!(f.tau_map(&vertices).unwrap(), map.clone());
        prop_assert_eq!(f.tauprime_map(&vertices).unwrap(), map);
        let eps = f.epsilon_set(&par("A2", &[1])).unwrap();
        prop_assert_eq!(eps.values, BTreeMap::from([(1, rat_frac(3, 2))]));
    }
}

#[test]
fn epsilon_must_cover_sigma_and_be_positive() {
    let p = par("A2", &[0, 1]);
    let w = Weight::from_ints(&[1, 1]);
    assert!(slope_o(&p, &EpsilonSet { values: BTreeMap::from([(0, rat(1))]) }, &w).is_err());
    assert!(slope_o(&p, &EpsilonSet { values: BTreeMap::from([(0, rat(1)), (1, rat(0))]) }, &w).is_err());
    assert!(slope_o(&p, &EpsilonSet::uniform(&p, rat(1)), &w).is_ok());
}

#[test]
fn sigma_order_must_ascend() {
    let p = par("A1", &[0]);
    let ctx = ParamContext::new(&p, &EpsilonSet::uniform(&p, rat(1))).unwrap();
    let asc = [Weight::from_ints(&[0]), Weight::from_ints(&[1])];
    let desc = [Weight::from_ints(&[1]), Weight::from_ints(&[0])];
    assert!(ctx.sigma_to_tauprime(&[rat(1)], &asc).is_ok());
    assert!(ctx.sigma_to_tauprime(&[rat(1)], &desc).is_err());
    let (_, warnings) = ctx.sigma_to_tauprime(&[rat(-1)], &asc).unwrap();
    assert_eq!(warnings.len(), 1);
}
