use rand::Rng;
use safestab::blend::{compatible, k_l, k_m, k_m_symmetric, BlendConfig};
use safestab::feasibility::{check, feasible_set, root};
use safestab::formulas::{phi_freeman, phi_sontag};
use safestab::plant::LieData;
use safestab::priority::{k_l_star, k_m_star, mode, ModeFlag};

mod common;
use common::*;

#[test]
fn star_laws_satisfy_the_barrier_on_compatible_data() {
    let mut r = rng(101);
    for n in 0..10_000 {
        let d = match n % 3 {
            0 => same_sign(&mut r),
            1 => zero_b(&mut r),
            _ => mixed_compatible(&mut r),
        };
        for cfg in [BlendConfig::default(), all_configs()[n % 18]] {
            for u in [k_l_star(&d, &cfg).unwrap(), k_m_star(&d, &cfg).unwrap()] {
                let rep = check(&d, u);
                assert!(rep.f1 < 0.0, "{d:?} {cfg:?}: F1 = {}", rep.f1);
                assert!(rep.f0 < 0.0, "{d:?} {cfg:?}: F0 = {}", rep.f0);
            }
        }
    }
}

#[test]
fn residual_check_matches_set_membership() {
    let mut r = rng(102);
    let mut compared = 0;
    for _ in 0..100_000 {
        let d = any_valid(&mut r);
        let u = r.gen_range(-20.0..20.0);
        let rep = check(&d, u);
        if rep.f0.abs() <= 1e-12 || rep.f1.abs() <= 1e-12 {
            continue;
        }
        compared += 1;
        assert_eq!(rep.feasible(), feasible_set(&d).contains(u), "{d:?} u = {u}");
    }
    assert!(compared > 99_000);
}

#[test]
fn mode_agrees_with_the_oracle() {
    let mut r = rng(103);
    for _ in 0..100_000 {
        let d = any_valid(&mut r);
        assert_eq!(mode(&d) == ModeFlag::Compatible, !feasible_set(&d).is_empty(), "{d:?}");
        assert_eq!(compatible(&d), !feasible_set(&d).is_empty(), "{d:?}");
    }
}

#[test]
fn blended_laws_approach_the_tie_value() {
    let mut r = rng(104);
    for _ in 0..200 {
        let bi = r.gen_range(0.1..RANGE);
        let bj = -r.gen_range(0.1..RANGE);
        let tie = r.gen_range(-RANGE..RANGE);
        let at = |g: f64| LieData::new(-(tie + g) * bi, bi, -tie * bj, bj);
        for cfg in all_configs() {
            let mut prev = f64::INFINITY;
            for e in 2..=10 {
                let d = at(10f64.powi(-e));
                let target = root(d.a1, d.b1);
                let err = (k_l(&d, &cfg).unwrap() - target)
                    .abs()
                    .max((k_m(&d, &cfg).unwrap() - target).abs());
                assert!(err <= 10f64.powi(-e) * 1.000_001, "gap 1e-{e}: {err:e}");
                assert!(err <= prev);
                prev = err;
            }
        }
    }
}

#[test]
fn both_orderings_of_k_m_agree() {
    let mut r = rng(105);
    for _ in 0..100_000 {
        let d = mixed_compatible(&mut r);
        let cfg = all_configs()[r.gen_range(0..18)];
        assert_eq!(k_m(&d, &cfg).unwrap(), k_m_symmetric(&d, &cfg).unwrap());
    }
}

#[test]
fn sontag_decrease_identity_on_a_large_sample() {
    let mut r = rng(106);
    for _ in 0..100_000 {
        let a: f64 = r.gen_range(-1e3..1e3);
        let b: f64 = r.gen_range(-1e2..1e2);
        if b == 0.0 {
            continue;
        }
        let lhs = a + b * phi_sontag(a, b);
        let rhs = -(a * a + b.powi(4)).sqrt();
        assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs(), "a = {a}, b = {b}");
        assert!(a + b * phi_freeman(a, b) < 0.0 || b * b <= 1e-12 * a.abs());
    }
}

#[test]
fn laws_reject_incompatible_data_but_star_laws_do_not() {
    let mut r = rng(107);
    for _ in 0..1000 {
        let d = mixed_incompatible(&mut r);
        assert!(k_l(&d, &BlendConfig::default()).is_err());
        assert!(k_m(&d, &BlendConfig::default()).is_err());
        assert_eq!(k_l_star(&d, &BlendConfig::default()).unwrap(), root(d.a1, d.b1));
        assert_eq!(k_m_star(&d, &BlendConfig::default()).unwrap(), root(d.a1, d.b1));
    }
}
