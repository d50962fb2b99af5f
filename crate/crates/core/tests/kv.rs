mod common;

use common::q;
use kv_core::tangential::valuation;
use kv_core::{
    check_krv, check_krv_lie, check_kv, check_sol_kv, duflo_pattern, extend_krv_step,
    extend_solkv_step, gr_leading_rank, kernel_basis, krv_dim, psi_conjugate, taut_compose,
    taut_exp, taut_inverse, tder_bracket, torsor_quotient, DufloTarget, LieElt, QMatrix, TAutElt,
    TDer, Valuation,
};
use proptest::prelude::*;

fn tower(level: usize) -> Vec<TAutElt> {
    let mut out = vec![TAutElt::identity(1)];
    while out.len() < level {
        let next = extend_solkv_step(out.last().unwrap()).unwrap();
        out.push(next);
    }
    out
}

/// `exp` of a random combination of krv basis elements of degree `< level`.
fn krv_element(level: usize, coeffs: &[i64]) -> TAutElt {
    let mut u = TDer::zero(level);
    let mut i = 0;
    for n in 1..level {
        for b in krv_dim(n).unwrap().1 {
            u = u
                .add(&b.with_cap(level).scale(&q(coeffs[i % coeffs.len()], 1)))
                .unwrap();
            i += 1;
        }
    }
    taut_exp(&u)
}

#[test]
fn extension_soundness() {
    let t = tower(7);
    for pair in t.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        let n = prev.cap();
        assert!(check_sol_kv(next, n + 1).unwrap().passed);
        assert_eq!(
            next.tower_project(n).unwrap(),
            prev.tower_project(n).unwrap()
        );
    }
}

#[test]
fn extension_rejects_non_solutions() {
    let f = TAutElt::new(LieElt::y(3), LieElt::zero(3)).unwrap();
    assert!(extend_solkv_step(&f).is_err());
}

#[test]
fn extending_a_known_solution_differs_by_a_symmetry() {
    let t = tower(6);
    let known = &t[5];
    let restarted = extend_solkv_step(&known.with_cap(4)).unwrap();
    assert!(check_sol_kv(&restarted, 5).unwrap().passed);
    let h = torsor_quotient(&known.with_cap(5), &restarted, 5).unwrap();
    assert!(check_krv(&h, 5).unwrap().passed);
}

#[test]
fn duflo_solution_is_unique() {
    for n in 2..=8 {
        let patterns: Vec<_> = (2..=n)
            .map(|k| duflo_pattern(k, DufloTarget::Sum, n).unwrap())
            .collect();
        let rows: Vec<_> = {
            let mut words: Vec<_> = patterns
                .iter()
                .flat_map(|p| p.terms().map(|(w, _)| w))
                .collect();
            words.sort();
            words.dedup();
            words
        };
        let mut m = QMatrix::zeros(rows.len(), patterns.len());
        for (j, p) in patterns.iter().enumerate() {
            for (i, &w) in rows.iter().enumerate() {
                m.set(i, j, p.coeff(w));
            }
        }
        assert!(kernel_basis(&m).is_empty(), "n = {n}");
    }
}

#[test]
fn krv_brackets_close() {
    let cap = 9;
    let bases: Vec<Vec<TDer>> = (1..=5).map(|n| krv_dim(n).unwrap().1).collect();
    for m in 1..=5 {
        for n in m..=5 {
            if m + n >= cap {
                continue;
            }
            for u in &bases[m - 1] {
                for v in &bases[n - 1] {
                    let b = tder_bracket(&u.with_cap(cap), &v.with_cap(cap)).unwrap();
                    assert!(
                        check_krv_lie(&b, m + n + 1).unwrap().passed,
                        "degrees {m}, {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn krv_basis_exponentiates_into_krv() {
    for n in 1..=6 {
        for u in krv_dim(n).unwrap().1 {
            assert!(check_krv_lie(&u.with_cap(8), 8).unwrap().passed);
            assert!(check_krv(&taut_exp(&u.with_cap(8)), 8).unwrap().passed);
        }
    }
}

#[test]
fn krv_extension_steps() {
    let g = krv_element(4, &[2, -1, 3]);
    assert!(check_krv(&g, 4).unwrap().passed);
    let mut cur = g.clone();
    for level in 5..=7 {
        cur = extend_krv_step(&cur).unwrap();
        assert!(check_krv(&cur, level).unwrap().passed);
        assert_eq!(cur.tower_project(4).unwrap(), g.tower_project(4).unwrap());
    }
}

#[test]
fn psi_transport() {
    let f = tower(6).pop().unwrap();
    let n = f.cap();
    assert!(psi_conjugate(&f, &TAutElt::identity(n), n)
        .unwrap()
        .is_identity());
    for m in [1, 3, 5] {
        for u in krv_dim(m).unwrap().1 {
            let k = taut_exp(&u.with_cap(n));
            let g = taut_compose(&taut_compose(&taut_inverse(&f), &k).unwrap(), &f).unwrap();
            assert!(check_kv(&g, n).unwrap().passed);
            assert_eq!(psi_conjugate(&f, &g, n).unwrap(), k);
        }
    }
}

#[test]
fn graded_isomorphism() {
    let f = tower(7).pop().unwrap();
    for n in 1..=6 {
        assert_eq!(
            gr_leading_rank(&f, n).unwrap(),
            krv_dim(n).unwrap().0,
            "n = {n}"
        );
    }
    assert!(gr_leading_rank(&f, 7).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn torsor_closure(a in prop::collection::vec(-3i64..=3, 3), b in prop::collection::vec(-3i64..=3, 3)) {
        let level = 6;
        let g = krv_element(level, &a);
        let h = krv_element(level, &b);
        prop_assert!(check_krv(&taut_compose(&g, &h).unwrap(), level).unwrap().passed);
        prop_assert!(check_krv(&taut_inverse(&g), level).unwrap().passed);
    }

    #[test]
    fn action_and_quotient(a in prop::collection::vec(-3i64..=3, 3)) {
        let level = 6;
        let f = tower(level).pop().unwrap();
        let h = krv_element(level, &a);
        let moved = taut_compose(&taut_inverse(&h), &f).unwrap();
        prop_assert!(check_sol_kv(&moved, level).unwrap().passed);
        let back = torsor_quotient(&f, &moved, level).unwrap();
        prop_assert!(check_krv(&back, level).unwrap().passed);
        prop_assert_eq!(taut_compose(&taut_inverse(&back), &moved).unwrap(), f);
    }

    #[test]
    fn agreeing_solutions_differ_by_high_valuation(a in -3i64..=3, b in -3i64..=3) {
        // Two solutions with the same level-3 projection.
        let f = tower(5).pop().unwrap();
        let (_, basis3) = krv_dim(3).unwrap();
        let k = taut_exp(&basis3[0].with_cap(5).scale(&q(a, 1)));
        let l = taut_exp(&basis3[0].with_cap(5).scale(&q(b, 1)));
        let g1 = taut_compose(&k, &f).unwrap();
        let g2 = taut_compose(&l, &f).unwrap();
        let h = torsor_quotient(&g1, &g2, 5).unwrap();
        prop_assert!(check_krv(&h, 5).unwrap().passed);
        prop_assert!(h.is_identity() || valuation(&h) >= Valuation::Finite(3));
    }
}
