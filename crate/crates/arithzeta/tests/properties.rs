//! Randomized algebra laws for the incidence-algebra engine and the
//! series layer, over arbitrary small graded monoids and tabulated
//! functions.

use arithzeta::monoid::{pushforward_series, ArithFn, Element, GradingMode, Monoid};
use arithzeta::series::{SeriesKind, TruncatedSeries};
use arithzeta::{Int, Rat};
use proptest::prelude::*;
use std::collections::HashMap;

const BOUND: u64 = 60;

/// A small multiplicative monoid (2..5 atoms of weight 2..7) plus three
/// tabulated integer functions on its elements of weight ≤ BOUND.
fn monoid_and_tables() -> impl Strategy<Value = (Monoid, Vec<HashMap<Element, Int>>)> {
    (
        prop::collection::vec(2u64..=7, 2..=5),
        prop::collection::vec(-9i64..=9, 600),
    )
        .prop_map(|(weights, values)| {
            let mut m = Monoid::new(GradingMode::Multiplicative);
            for (i, w) in weights.iter().enumerate() {
                m.add_atom(format!("a{i}"), *w).unwrap();
            }
            let elements = m.elements_up_to(BOUND).unwrap();
            let mut tables = vec![HashMap::new(), HashMap::new(), HashMap::new()];
            let mut vi = 0usize;
            for e in &elements {
                for t in tables.iter_mut() {
                    t.insert(e.clone(), Int::from(values[vi % values.len()]));
                    vi += 1;
                }
            }
            (m, tables)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_commutative_and_associative((monoid, tables) in monoid_and_tables()) {
        let f = ArithFn::table("f", tables[0].clone());
        let g = ArithFn::table("g", tables[1].clone());
        let h = ArithFn::table("h", tables[2].clone());
        let fg = f.convolve(&g);
        let gf = g.convolve(&f);
        let fg_h = fg.convolve(&h);
        let f_gh = f.convolve(&g.convolve(&h));
        for e in monoid.elements_up_to(BOUND).unwrap() {
            prop_assert_eq!(fg.eval(&monoid, &e), gf.eval(&monoid, &e));
            prop_assert_eq!(fg_h.eval(&monoid, &e), f_gh.eval(&monoid, &e));
        }
    }

    #[test]
    fn delta_is_two_sided_identity((monoid, tables) in monoid_and_tables()) {
        let f = ArithFn::table("f", tables[0].clone());
        let delta = ArithFn::delta();
        let left = delta.convolve(&f);
        let right = f.convolve(&delta);
        for e in monoid.elements_up_to(BOUND).unwrap() {
            let expect = f.eval(&monoid, &e);
            prop_assert_eq!(left.eval(&monoid, &e), expect.clone());
            prop_assert_eq!(right.eval(&monoid, &e), expect);
        }
    }

    #[test]
    fn inversion_is_an_involution((monoid, tables) in monoid_and_tables()) {
        // force a unit at the identity
        let mut table = tables[0].clone();
        table.insert(Element::identity(), Int::from(if tables[1].len() % 2 == 0 { 1 } else { -1 }));
        let f = ArithFn::table("f", table);
        let inv = f.invert(&monoid).unwrap();
        let back = inv.invert(&monoid).unwrap();
        let prod = f.convolve(&inv);
        for e in monoid.elements_up_to(BOUND).unwrap() {
            prop_assert_eq!(back.eval(&monoid, &e), f.eval(&monoid, &e));
            let expect = if e.is_identity() { Int::from(1) } else { Int::from(0) };
            prop_assert_eq!(prod.eval(&monoid, &e), expect);
        }
    }

    #[test]
    fn pushforward_turns_convolution_into_series_product((monoid, tables) in monoid_and_tables()) {
        let f = ArithFn::table("f", tables[0].clone());
        let g = ArithFn::table("g", tables[1].clone());
        let conv = f.convolve(&g);
        let lhs = pushforward_series(&monoid, &conv, BOUND).unwrap();
        let rhs = pushforward_series(&monoid, &f, BOUND).unwrap()
            .mul(&pushforward_series(&monoid, &g, BOUND).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pushforward_product_in_additive_grading(
        weights in prop::collection::vec(1u64..=4, 1..=5),
        values in prop::collection::vec(-9i64..=9, 400),
    ) {
        let mut m = Monoid::new(GradingMode::Additive);
        for (i, w) in weights.iter().enumerate() {
            m.add_atom(format!("x{i}"), *w).unwrap();
        }
        let bound = 8u64;
        let elements = m.elements_up_to(bound).unwrap();
        let mut ta = HashMap::new();
        let mut tb = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            ta.insert(e.clone(), Int::from(values[(2 * i) % values.len()]));
            tb.insert(e.clone(), Int::from(values[(2 * i + 1) % values.len()]));
        }
        let f = ArithFn::table("f", ta);
        let g = ArithFn::table("g", tb);
        let lhs = pushforward_series(&m, &f.convolve(&g), bound).unwrap();
        let rhs = pushforward_series(&m, &f, bound).unwrap()
            .mul(&pushforward_series(&m, &g, bound).unwrap());
        prop_assert_eq!(lhs.kind(), SeriesKind::Power);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_division_inverts_multiplication(
        a in prop::collection::vec(-20i64..=20, 1..=12),
        mut b in prop::collection::vec(-20i64..=20, 1..=12),
    ) {
        // power kind: force an invertible constant term
        if b[0] == 0 { b[0] = 1; }
        let len = a.len().min(b.len());
        let sa = TruncatedSeries::from_ints(SeriesKind::Power, a[..len].iter().map(|&x| Int::from(x)).collect());
        let sb = TruncatedSeries::from_ints(SeriesKind::Power, b[..len].iter().map(|&x| Int::from(x)).collect());
        let q = sa.mul(&sb).div(&sb).unwrap();
        prop_assert_eq!(q, sa);
    }

    #[test]
    fn dirichlet_division_inverts_multiplication(
        a in prop::collection::vec(-20i64..=20, 1..=12),
        mut b in prop::collection::vec(-20i64..=20, 1..=12),
    ) {
        if b[0] == 0 { b[0] = -1; }
        let len = a.len().min(b.len());
        let sa = TruncatedSeries::from_ints(SeriesKind::Dirichlet, a[..len].iter().map(|&x| Int::from(x)).collect());
        let sb = TruncatedSeries::from_ints(SeriesKind::Dirichlet, b[..len].iter().map(|&x| Int::from(x)).collect());
        let q = sa.mul(&sb).div(&sb).unwrap();
        prop_assert_eq!(q, sa);
    }

    #[test]
    fn scaled_substitution_is_multiplicative(
        a in prop::collection::vec(-9i64..=9, 1..=10),
        b in prop::collection::vec(-9i64..=9, 1..=10),
        c in 0i64..=5,
    ) {
        let len = a.len().min(b.len());
        let sa = TruncatedSeries::from_ints(SeriesKind::Power, a[..len].iter().map(|&x| Int::from(x)).collect());
        let sb = TruncatedSeries::from_ints(SeriesKind::Power, b[..len].iter().map(|&x| Int::from(x)).collect());
        let c = Int::from(c);
        // (fg)(ct) = f(ct)·g(ct)
        let lhs = sa.mul(&sb).substitute_scaled_t(&c);
        let rhs = sa.substitute_scaled_t(&c).mul(&sb.substitute_scaled_t(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_is_a_homomorphism(
        weights in prop::collection::vec(2u64..=9, 1..=4),
        exps_a in prop::collection::vec(0u32..=2, 4),
        exps_b in prop::collection::vec(0u32..=2, 4),
    ) {
        let mut m = Monoid::new(GradingMode::Multiplicative);
        let mut ids = Vec::new();
        for (i, w) in weights.iter().enumerate() {
            ids.push(m.add_atom(format!("a{i}"), *w).unwrap());
        }
        let build = |exps: &[u32]| {
            Element::from_factors(
                ids.iter().zip(exps).map(|(&id, &e)| (id, e)).collect(),
            )
        };
        let a = build(&exps_a[..ids.len().min(exps_a.len())]);
        let b = build(&exps_b[..ids.len().min(exps_b.len())]);
        let wa = m.weight(&a).unwrap();
        let wb = m.weight(&b).unwrap();
        prop_assert_eq!(m.weight(&a.mul(&b)).unwrap(), wa * wb);
    }
}

#[test]
fn pushforward_coefficients_are_rat_exact() {
    // spot check that nothing in the pipeline silently rounds
    let mut m = Monoid::new(GradingMode::Multiplicative);
    m.add_atom("a", 2).unwrap();
    let s = pushforward_series(&m, &ArithFn::zeta(), 16).unwrap();
    for n in 1..=16usize {
        let expect = if n.is_power_of_two() { 1 } else { 0 };
        assert_eq!(s.coeff(n), Rat::from_integer(Int::from(expect)));
    }
}
