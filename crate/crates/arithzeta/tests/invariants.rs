//! Cross-module invariant sweeps: the Möbius function against its closed
//! form and against zeta on each concrete monoid, multiplicativity of the
//! field and variety functions, and the quotient-ring models against the
//! formula layer at larger bounds than the unit tests use.

use arithzeta::classical::{self, NaturalMonoid};
use arithzeta::monoid::{mobius_closed_form, ArithFn, Element};
use arithzeta::primes::Sieve;
use arithzeta::quadfield::{IdealMonoid, QuadraticField};
use arithzeta::varzeta::{self, CycleFn};
use arithzeta::Int;
use num::{One, Zero};

#[test]
fn mobius_closed_form_and_inverse_on_all_monoids() {
    let sieve = Sieve::new();
    let mu = ArithFn::mobius();
    let zeta = ArithFn::zeta();
    let muz = mu.convolve(&zeta);
    let zmu = zeta.convolve(&mu);

    let check = |monoid: &arithzeta::monoid::Monoid, bound: u64, label: &str| {
        for e in monoid.elements_up_to(bound).unwrap() {
            assert_eq!(mu.eval(monoid, &e), mobius_closed_form(&e), "{label} {e}");
            let expect = if e.is_identity() {
                Int::one()
            } else {
                Int::zero()
            };
            assert_eq!(muz.eval(monoid, &e), expect, "{label} mu*zeta at {e}");
            assert_eq!(zmu.eval(monoid, &e), expect, "{label} zeta*mu at {e}");
        }
    };

    let nat = NaturalMonoid::up_to(&sieve, 200).unwrap();
    check(nat.monoid(), 200, "naturals");

    for d in [-1i64, 5, -5, 2] {
        let field = QuadraticField::new(&sieve, d).unwrap();
        let ideals = IdealMonoid::up_to(&sieve, field, 200).unwrap();
        check(ideals.monoid(), 200, &format!("ideals d={d}"));
    }

    let spectrum = varzeta::spectrum_of(&varzeta::builtin("P1").unwrap().at_prime(2), 6).unwrap();
    check(&spectrum.cycle_monoid(6).unwrap(), 6, "cycles P1/F2");
}

#[test]
fn ideal_function_multiplicativity() {
    let sieve = Sieve::new();
    for d in [-1i64, 5, -5, 2] {
        let field = QuadraticField::new(&sieve, d).unwrap();
        let ideals = IdealMonoid::up_to(&sieve, field, 200).unwrap();
        let all = ideals.enumerate_ideals(200).unwrap();
        for (a, na) in &all {
            for (b, nb) in &all {
                if na.checked_mul(*nb).map(|p| p <= 200) != Some(true) {
                    continue;
                }
                let coprime = a
                    .factors()
                    .iter()
                    .all(|&(id, _)| b.exponent_of(id) == 0);
                if !coprime {
                    continue;
                }
                let ab = a.mul(b);
                assert_eq!(
                    ideals.phi_k(&ab),
                    ideals.phi_k(a) * ideals.phi_k(b),
                    "phi_K d={d}"
                );
                assert_eq!(
                    ideals.sigma1_k(&ab),
                    ideals.sigma1_k(a) * ideals.sigma1_k(b),
                    "sigma_1K d={d}"
                );
                assert_eq!(
                    ideals.psi_k(&ab),
                    ideals.psi_k(a) * ideals.psi_k(b),
                    "psi_K d={d}"
                );
            }
        }
    }
}

#[test]
fn psi_equals_sigma_on_squarefree_ideals() {
    let sieve = Sieve::new();
    for d in [-1i64, 5, -5, 2] {
        let field = QuadraticField::new(&sieve, d).unwrap();
        let ideals = IdealMonoid::up_to(&sieve, field, 200).unwrap();
        for (e, _) in ideals.enumerate_ideals(200).unwrap() {
            if e.is_squarefree() {
                assert_eq!(ideals.psi_k(&e), ideals.sigma1_k(&e), "d={d}");
            }
        }
    }
}

#[test]
fn quotient_rings_have_norm_size_and_axioms() {
    let sieve = Sieve::new();
    for d in [-1i64, 5, -5, 2] {
        let field = QuadraticField::new(&sieve, d).unwrap();
        let ideals = IdealMonoid::up_to(&sieve, field, 100).unwrap();
        for (e, n) in ideals.enumerate_ideals(100).unwrap() {
            let ring = ideals.quotient_ring(&e, 400).unwrap();
            assert_eq!(ring.size, n, "d={d}");
            ring.spot_check_axioms().unwrap();
        }
    }
}

#[test]
fn affine_space_counts_are_exact_powers() {
    for (name, dim) in [("A1", 1u32), ("A2", 2)] {
        for p in [2u64, 3] {
            let spec = varzeta::builtin(name).unwrap().at_prime(p);
            for m in 1..=6u32 {
                assert_eq!(
                    varzeta::count_points(&spec, m).unwrap(),
                    p.pow(dim * m),
                    "{name}/F_{p} at m={m}"
                );
            }
        }
    }
}

#[test]
fn variety_phi_multiplicative_on_disjoint_cycles() {
    let spectrum = varzeta::spectrum_of(&varzeta::builtin("P1").unwrap().at_prime(2), 4).unwrap();
    let monoid = spectrum.cycle_monoid(4).unwrap();
    let cycles = monoid.elements_up_to(4).unwrap();
    for a in &cycles {
        for b in &cycles {
            let disjoint = a
                .factors()
                .iter()
                .all(|&(id, _)| b.exponent_of(id) == 0);
            if !disjoint {
                continue;
            }
            let sum = a.mul(b);
            if monoid.weight(&sum).unwrap() > 4 {
                continue;
            }
            for func in [CycleFn::Phi, CycleFn::Sigma1, CycleFn::Psi] {
                assert_eq!(
                    spectrum.eval_on_cycle(func, &monoid, &sum),
                    spectrum.eval_on_cycle(func, &monoid, a)
                        * spectrum.eval_on_cycle(func, &monoid, b),
                    "{func:?} at {a} + {b}"
                );
            }
        }
    }
}

#[test]
fn classical_phi_against_counting_oracle() {
    let sieve = Sieve::new();
    for n in 1..=1000u64 {
        assert_eq!(
            classical::phi(&sieve, n).unwrap(),
            classical::phi_by_counting(n).unwrap()
        );
    }
}

#[test]
fn lambda_square_divisor_identity() {
    let sieve = Sieve::new();
    assert!(classical::lambda_square_divisor_check(&sieve, 1000)
        .unwrap()
        .passed());
}

#[test]
fn r2_against_chi_convolution_to_2000() {
    let sieve = Sieve::new();
    for n in 1..=2000u64 {
        let divisors = classical::Factorization::of(&sieve, n).unwrap().divisors();
        let sum: Int = divisors
            .iter()
            .map(|&d| classical::chi_minus1(d).unwrap())
            .sum();
        assert_eq!(classical::r2(n), Int::from(4) * sum, "n={n}");
    }
}

#[test]
fn dedekind_counts_match_two_squares() {
    // the Gaussian ideal counts recover r2/4, tying the quadfield and
    // classical layers together
    let sieve = Sieve::new();
    let field = QuadraticField::new(&sieve, -1).unwrap();
    let ideals = IdealMonoid::up_to(&sieve, field, 120).unwrap();
    let zeta = ideals
        .dirichlet_pushforward(&ArithFn::zeta(), 120)
        .unwrap();
    for n in 1..=120u64 {
        let a_n = zeta.coeff(n as usize);
        let r2 = classical::r2(n);
        assert_eq!(
            arithzeta::Rat::from_integer(Int::from(4)) * a_n,
            arithzeta::Rat::from_integer(r2),
            "n={n}"
        );
    }
}

#[test]
fn tabulated_function_identity_element() {
    // an Element used across monoids keeps multiset semantics
    let e = Element::identity();
    assert!(e.is_identity());
    assert_eq!(e.divisors().len(), 1);
}
