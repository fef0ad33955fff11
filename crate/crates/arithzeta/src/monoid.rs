//! Free commutative graded monoids and their incidence algebras.
//!
//! A `Monoid` is presented by a finite list of atoms, each carrying a weight:
//! a prime p in multiplicative grading, an ideal norm, or a closed-point
//! degree in additive grading. Elements are finite multisets of atoms.
//! Arithmetic functions on the monoid form the incidence algebra under
//! convolution; the recursive Möbius function, convolution inverses, and the
//! graded pushforward to truncated series all live here.
//!
//! The monoid owns no factorization oracle. Clients produce atoms (primes,
//! prime ideals, closed points) and everything downstream only consumes
//! weights, which is what keeps one convolution engine serving all three
//! instantiations.

use crate::series::{SeriesKind, TruncatedSeries};
use crate::{Error, Int, Result};
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AtomId(pub u32);

#[derive(Clone, Debug)]
pub struct Atom {
    pub label: String,
    pub weight: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GradingMode {
    /// weight(xy) = weight(x)·weight(y), identity has weight 1.
    Multiplicative,
    /// weight(x+y) = weight(x)+weight(y), identity has weight 0.
    Additive,
}

/// A free commutative monoid on finitely many weighted atoms.
#[derive(Clone, Debug)]
pub struct Monoid {
    mode: GradingMode,
    atoms: Vec<Atom>,
}

impl Monoid {
    pub fn new(mode: GradingMode) -> Self {
        Monoid {
            mode,
            atoms: Vec::new(),
        }
    }

    /// Register an atom. Weights below 2 (multiplicative) or 1 (additive)
    /// would break local finiteness of the graded fibers and are rejected.
    pub fn add_atom(&mut self, label: impl Into<String>, weight: u64) -> Result<AtomId> {
        let min = match self.mode {
            GradingMode::Multiplicative => 2,
            GradingMode::Additive => 1,
        };
        if weight < min {
            return Err(Error::InvalidInput(format!(
                "atom weight {weight} below minimum {min} for this grading"
            )));
        }
        let label = label.into();
        if self.atoms.iter().any(|a| a.label == label) {
            return Err(Error::InvalidInput(format!("duplicate atom label {label}")));
        }
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(Atom { label, weight });
        Ok(id)
    }

    pub fn mode(&self) -> GradingMode {
        self.mode
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom(&self, id: AtomId) -> Result<&Atom> {
        self.atoms
            .get(id.0 as usize)
            .ok_or_else(|| Error::InvalidInput(format!("unknown atom id {}", id.0)))
    }

    pub fn atom_ids(&self) -> impl Iterator<Item = AtomId> + '_ {
        (0..self.atoms.len() as u32).map(AtomId)
    }

    /// Homomorphic weight of an element under the grading.
    pub fn weight(&self, e: &Element) -> Result<u64> {
        let mut acc: u64 = match self.mode {
            GradingMode::Multiplicative => 1,
            GradingMode::Additive => 0,
        };
        for &(id, exp) in &e.factors {
            let w = self.atom(id)?.weight;
            for _ in 0..exp {
                acc = match self.mode {
                    GradingMode::Multiplicative => acc.checked_mul(w),
                    GradingMode::Additive => acc.checked_add(w),
                }
                .ok_or_else(|| Error::Resource("element weight overflows u64".into()))?;
            }
        }
        Ok(acc)
    }

    /// All elements of weight ≤ bound (multiplicative) or ≤ bound (additive),
    /// sorted by (weight, factor vector). Fibers are finite by construction.
    pub fn elements_up_to(&self, bound: u64) -> Result<Vec<Element>> {
        self.check_locally_finite()?;
        let mut out = Vec::new();
        let mut current: Vec<(AtomId, u32)> = Vec::new();
        self.enumerate(0, self.identity_weight(), bound, &mut current, &mut out)?;
        let mut keyed: Vec<(u64, Element)> = out
            .into_iter()
            .map(|e| Ok((self.weight(&e)?, e)))
            .collect::<Result<_>>()?;
        keyed.sort();
        Ok(keyed.into_iter().map(|(_, e)| e).collect())
    }

    fn identity_weight(&self) -> u64 {
        match self.mode {
            GradingMode::Multiplicative => 1,
            GradingMode::Additive => 0,
        }
    }

    fn combine(&self, w: u64, atom_weight: u64) -> Option<u64> {
        match self.mode {
            GradingMode::Multiplicative => w.checked_mul(atom_weight),
            GradingMode::Additive => w.checked_add(atom_weight),
        }
    }

    fn enumerate(
        &self,
        from: usize,
        weight: u64,
        bound: u64,
        current: &mut Vec<(AtomId, u32)>,
        out: &mut Vec<Element>,
    ) -> Result<()> {
        out.push(Element {
            factors: current.clone(),
        });
        for i in from..self.atoms.len() {
            let aw = self.atoms[i].weight;
            let mut w = weight;
            let mut exp = 0u32;
            loop {
                w = match self.combine(w, aw) {
                    Some(w) if w <= bound => w,
                    _ => break,
                };
                exp += 1;
                current.push((AtomId(i as u32), exp));
                self.enumerate(i + 1, w, bound, current, out)?;
                current.pop();
            }
        }
        Ok(())
    }

    /// Runtime guard used at pushforward time: in either mode the registered
    /// atoms must give finite fibers, which the weight minimums guarantee.
    pub fn check_locally_finite(&self) -> Result<()> {
        for a in &self.atoms {
            let ok = match self.mode {
                GradingMode::Multiplicative => a.weight >= 2,
                GradingMode::Additive => a.weight >= 1,
            };
            if !ok {
                return Err(Error::Domain(format!(
                    "atom {} of weight {} breaks local finiteness",
                    a.label, a.weight
                )));
            }
        }
        Ok(())
    }

    /// Human-readable rendering of an element, e.g. `p2r^2*p5s0`.
    pub fn render(&self, e: &Element) -> String {
        if e.is_identity() {
            return "1".into();
        }
        e.factors
            .iter()
            .map(|&(id, exp)| {
                let label = &self.atoms[id.0 as usize].label;
                if exp == 1 {
                    label.clone()
                } else {
                    format!("{label}^{exp}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A finite multiset of atoms. The empty multiset is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Element {
    // Sorted by atom id; all exponents ≥ 1. Canonical, so Eq/Hash agree
    // with multiset equality.
    factors: Vec<(AtomId, u32)>,
}

impl Element {
    pub fn identity() -> Self {
        Element::default()
    }

    pub fn from_factors(mut factors: Vec<(AtomId, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort();
        let mut merged: Vec<(AtomId, u32)> = Vec::with_capacity(factors.len());
        for (id, exp) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == id => *acc += exp,
                _ => merged.push((id, exp)),
            }
        }
        Element { factors: merged }
    }

    pub fn atom(id: AtomId) -> Self {
        Element {
            factors: vec![(id, 1)],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(AtomId, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, id: AtomId) -> u32 {
        self.factors
            .iter()
            .find(|&&(a, _)| a == id)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Total exponent sum, the Omega of the element.
    pub fn total_multiplicity(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn distinct_atoms(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn mul(&self, other: &Element) -> Element {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Element::from_factors(factors)
    }

    pub fn divides(&self, other: &Element) -> bool {
        self.factors
            .iter()
            .all(|&(id, e)| other.exponent_of(id) >= e)
    }

    /// other / self; caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Element) -> Element {
        debug_assert!(self.divides(other));
        let factors = other
            .factors
            .iter()
            .map(|&(id, e)| (id, e - self.exponent_of(id)))
            .collect();
        Element::from_factors(factors)
    }

    /// All divisors (sub-multisets), lexicographic in (atom id, exponent).
    /// The count is the product of (exponent + 1).
    pub fn divisors(&self) -> Vec<Element> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.factors.len()];
        loop {
            let factors: Vec<(AtomId, u32)> = self
                .factors
                .iter()
                .zip(&exps)
                .filter(|&(_, &e)| e > 0)
                .map(|(&(id, _), &e)| (id, e))
                .collect();
            out.push(Element { factors });
            // odometer with the last coordinate fastest = lexicographic order
            let mut i = exps.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if exps[i] < self.factors[i].1 {
                    exps[i] += 1;
                    for e in exps.iter_mut().skip(i + 1) {
                        *e = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Divisor pairs (d, self/d) with d·(self/d) = self.
    pub fn divisor_pairs(&self) -> Vec<(Element, Element)> {
        self.divisors()
            .into_iter()
            .map(|d| {
                let q = d.quotient_into(self);
                (d, q)
            })
            .collect()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(id, e)| format!("a{}^{}", id.0, e))
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// An exact-integer-valued function on monoid elements, with a declared
/// evaluation rule. Convolutions, inverses and the Möbius function memoize
/// per element behind a lock, so disjoint queries may run in parallel.
#[derive(Clone)]
pub struct ArithFn {
    name: String,
    inner: Arc<FnInner>,
}

struct FnInner {
    rule: Rule,
    cache: Mutex<HashMap<Element, Int>>,
}

enum Rule {
    Table(HashMap<Element, Int>),
    Closure(Arc<dyn Fn(&Monoid, &Element) -> Int + Send + Sync>),
    Mobius,
    Convolve(ArithFn, ArithFn),
    Inverse(ArithFn),
}

impl ArithFn {
    fn with_rule(name: impl Into<String>, rule: Rule) -> Self {
        ArithFn {
            name: name.into(),
            inner: Arc::new(FnInner {
                rule,
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The convolution unit: 1 at the identity, 0 elsewhere.
    pub fn delta() -> Self {
        Self::with_rule(
            "delta",
            Rule::Closure(Arc::new(|_, e| {
                if e.is_identity() {
                    Int::one()
                } else {
                    Int::zero()
                }
            })),
        )
    }

    /// The zeta function: constant 1.
    pub fn zeta() -> Self {
        Self::with_rule("zeta", Rule::Closure(Arc::new(|_, _| Int::one())))
    }

    /// The recursive Möbius function, the convolution inverse of zeta.
    pub fn mobius() -> Self {
        Self::with_rule("mu", Rule::Mobius)
    }

    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(&Monoid, &Element) -> Int + Send + Sync + 'static,
    ) -> Self {
        Self::with_rule(name, Rule::Closure(Arc::new(f)))
    }

    /// Tabulated function; elements absent from the table evaluate to 0.
    pub fn table(name: impl Into<String>, map: HashMap<Element, Int>) -> Self {
        Self::with_rule(name, Rule::Table(map))
    }

    pub fn convolve(&self, other: &ArithFn) -> ArithFn {
        Self::with_rule(
            format!("({})*({})", self.name, other.name),
            Rule::Convolve(self.clone(), other.clone()),
        )
    }

    /// Convolution inverse. Requires f(1) = ±1 so values stay integral.
    pub fn invert(&self, monoid: &Monoid) -> Result<ArithFn> {
        let at_one = self.eval(monoid, &Element::identity());
        if !(at_one == Int::one() || at_one == -Int::one()) {
            return Err(Error::Domain(format!(
                "cannot invert {}: value at identity is {at_one}, not a unit of Z",
                self.name
            )));
        }
        Ok(Self::with_rule(
            format!("({})^-1", self.name),
            Rule::Inverse(self.clone()),
        ))
    }

    /// Pointwise absolute value.
    pub fn abs(&self) -> ArithFn {
        let f = self.clone();
        Self::with_rule(
            format!("|{}|", self.name),
            Rule::Closure(Arc::new(move |m, e| f.eval(m, e).abs())),
        )
    }

    pub fn eval(&self, monoid: &Monoid, e: &Element) -> Int {
        match &self.inner.rule {
            Rule::Table(map) => map.get(e).cloned().unwrap_or_else(Int::zero),
            Rule::Closure(f) => f(monoid, e),
            _ => {
                if let Some(v) = self.inner.cache.lock().unwrap().get(e) {
                    return v.clone();
                }
                let v = match &self.inner.rule {
                    Rule::Mobius => {
                        // mu(1) = 1; mu(x) = -sum over ab = x, b != 1 of mu(a)
                        if e.is_identity() {
                            Int::one()
                        } else {
                            let mut acc = Int::zero();
                            for d in e.divisors() {
                                if &d != e {
                                    acc += self.eval(monoid, &d);
                                }
                            }
                            -acc
                        }
                    }
                    Rule::Convolve(f, g) => {
                        let mut acc = Int::zero();
                        for (d, q) in e.divisor_pairs() {
                            let fv = f.eval(monoid, &d);
                            if !fv.is_zero() {
                                acc += fv * g.eval(monoid, &q);
                            }
                        }
                        acc
                    }
                    Rule::Inverse(f) => {
                        let lead = f.eval(monoid, &Element::identity());
                        if e.is_identity() {
                            lead
                        } else {
                            let mut acc = Int::zero();
                            for (d, q) in e.divisor_pairs() {
                                if !d.is_identity() {
                                    acc += f.eval(monoid, &d) * self.eval(monoid, &q);
                                }
                            }
                            -lead * acc
                        }
                    }
                    _ => unreachable!(),
                };
                self.inner
                    .cache
                    .lock()
                    .unwrap()
                    .insert(e.clone(), v.clone());
                v
            }
        }
    }
}

/// Outcome of an elementwise or coefficientwise comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass { checked: usize },
    Fail { witness: String },
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass { .. })
    }
}

/// Confirms f = g*zeta and g = f*mu on all elements of weight ≤ bound;
/// reports the first counterexample of either direction otherwise.
pub fn mobius_inversion_check(
    monoid: &Monoid,
    f: &ArithFn,
    g: &ArithFn,
    bound: u64,
) -> Result<CheckOutcome> {
    let zeta = ArithFn::zeta();
    let mu = ArithFn::mobius();
    let g_zeta = g.convolve(&zeta);
    let f_mu = f.convolve(&mu);
    let elements = monoid.elements_up_to(bound)?;
    let count = elements.len();
    for e in elements {
        let lhs = f.eval(monoid, &e);
        let rhs = g_zeta.eval(monoid, &e);
        if lhs != rhs {
            return Ok(CheckOutcome::Fail {
                witness: format!(
                    "{} != ({}*zeta) at {}: {} vs {}",
                    f.name(),
                    g.name(),
                    monoid.render(&e),
                    lhs,
                    rhs
                ),
            });
        }
        let lhs = g.eval(monoid, &e);
        let rhs = f_mu.eval(monoid, &e);
        if lhs != rhs {
            return Ok(CheckOutcome::Fail {
                witness: format!(
                    "{} != ({}*mu) at {}: {} vs {}",
                    g.name(),
                    f.name(),
                    monoid.render(&e),
                    lhs,
                    rhs
                ),
            });
        }
    }
    Ok(CheckOutcome::Pass { checked: count })
}

/// Graded pushforward: sums f over the weight fibers, producing Dirichlet
/// coefficients (multiplicative grading) or power-series coefficients
/// (additive grading). Pushforward of a convolution equals the series
/// product of the pushforwards.
pub fn pushforward_series(monoid: &Monoid, f: &ArithFn, bound: u64) -> Result<TruncatedSeries> {
    monoid.check_locally_finite()?;
    let kind = match monoid.mode() {
        GradingMode::Multiplicative => SeriesKind::Dirichlet,
        GradingMode::Additive => SeriesKind::Power,
    };
    let mut series = TruncatedSeries::zero(kind, bound as usize);
    for e in monoid.elements_up_to(bound)? {
        let w = monoid.weight(&e)? as usize;
        let v = f.eval(monoid, &e);
        let current = series.coeff(w);
        series.set_coeff(w, current + crate::rat_int(v));
    }
    Ok(series)
}

/// mu(e) on a free commutative monoid has the closed form (-1)^r on products
/// of r distinct atoms and 0 otherwise.
pub fn mobius_closed_form(e: &Element) -> Int {
    if e.is_squarefree() {
        if e.distinct_atoms() % 2 == 0 {
            Int::one()
        } else {
            -Int::one()
        }
    } else {
        Int::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat_monoid(primes: &[u64]) -> Monoid {
        let mut m = Monoid::new(GradingMode::Multiplicative);
        for &p in primes {
            m.add_atom(format!("p{p}"), p).unwrap();
        }
        m
    }

    #[test]
    fn weights() {
        let mut m = Monoid::new(GradingMode::Multiplicative);
        let a = m.add_atom("p2", 2).unwrap();
        assert_eq!(m.weight(&Element::identity()).unwrap(), 1);
        let e = Element::from_factors(vec![(a, 2)]);
        assert_eq!(m.weight(&e).unwrap(), 4);

        let mut add = Monoid::new(GradingMode::Additive);
        let x1 = add.add_atom("x1", 1).unwrap();
        let x2 = add.add_atom("x2", 2).unwrap();
        assert_eq!(add.weight(&Element::identity()).unwrap(), 0);
        let e = Element::from_factors(vec![(x1, 2), (x2, 1)]);
        assert_eq!(add.weight(&e).unwrap(), 4);
    }

    #[test]
    fn atom_weight_minimums_enforced() {
        let mut m = Monoid::new(GradingMode::Multiplicative);
        assert!(m.add_atom("bad", 1).is_err());
        let mut a = Monoid::new(GradingMode::Additive);
        assert!(a.add_atom("bad", 0).is_err());
        assert!(a.add_atom("ok", 1).is_ok());
    }

    #[test]
    fn divisor_enumeration() {
        assert_eq!(Element::identity().divisors(), vec![Element::identity()]);
        let a = AtomId(0);
        let b = AtomId(1);
        let ab = Element::from_factors(vec![(a, 1), (b, 1)]);
        let divs = ab.divisors();
        assert_eq!(divs.len(), 4);
        // lexicographic in (atom id, exponent): 1, b, a, ab
        assert_eq!(divs[0], Element::identity());
        assert_eq!(divs[1], Element::atom(b));
        assert_eq!(divs[2], Element::atom(a));
        assert_eq!(divs[3], ab);
        let a2 = Element::from_factors(vec![(a, 2)]);
        assert_eq!(a2.divisors().len(), 3);
    }

    #[test]
    fn delta_is_unit_and_convolution_examples() {
        let m = nat_monoid(&[2, 3, 5, 7, 11]);
        let delta = ArithFn::delta();
        let zeta = ArithFn::zeta();
        let id = ArithFn::from_fn("id", |m, e| Int::from(m.weight(e).unwrap()));
        let conv = delta.convolve(&id);
        for e in m.elements_up_to(60).unwrap() {
            assert_eq!(conv.eval(&m, &e), id.eval(&m, &e));
        }
        // (id*zeta)(12) = sigma_1(12) = 28, brute divisor sum frozen
        let e12 = m.elements_up_to(12).unwrap().into_iter().last().unwrap();
        assert_eq!(m.weight(&e12).unwrap(), 12);
        assert_eq!(id.convolve(&zeta).eval(&m, &e12), Int::from(28));
        // (zeta*zeta)(p^2) = 3
        let p2 = Element::from_factors(vec![(AtomId(0), 2)]);
        assert_eq!(zeta.convolve(&zeta).eval(&m, &p2), Int::from(3));
    }

    #[test]
    fn mobius_recursion_and_closed_form() {
        let m = nat_monoid(&[2, 3, 5, 7]);
        let mu = ArithFn::mobius();
        assert_eq!(mu.eval(&m, &Element::identity()), Int::one());
        assert_eq!(mu.eval(&m, &Element::atom(AtomId(0))), -Int::one());
        let a2 = Element::from_factors(vec![(AtomId(0), 2)]);
        assert_eq!(mu.eval(&m, &a2), Int::zero());
        let ab = Element::from_factors(vec![(AtomId(0), 1), (AtomId(1), 1)]);
        assert_eq!(mu.eval(&m, &ab), Int::one());
        for e in m.elements_up_to(200).unwrap() {
            assert_eq!(mu.eval(&m, &e), mobius_closed_form(&e), "at {e}");
        }
    }

    #[test]
    fn invert_zeta_is_mobius_and_involution() {
        let m = nat_monoid(&[2, 3, 5, 7, 11, 13]);
        let zeta = ArithFn::zeta();
        let mu = ArithFn::mobius();
        let inv = zeta.invert(&m).unwrap();
        let back = inv.invert(&m).unwrap();
        for e in m.elements_up_to(100).unwrap() {
            assert_eq!(inv.eval(&m, &e), mu.eval(&m, &e));
            assert_eq!(back.eval(&m, &e), zeta.eval(&m, &e));
        }
        // invert(|mu|)(p^k) = (-1)^k
        let absmu = mu.abs();
        let lam = absmu.invert(&m).unwrap();
        for k in 0..6 {
            let pk = Element::from_factors(vec![(AtomId(0), k)]);
            let expect = if k % 2 == 0 { Int::one() } else { -Int::one() };
            assert_eq!(lam.eval(&m, &pk), expect);
        }
        assert!(ArithFn::from_fn("two", |_, _| Int::from(2))
            .invert(&m)
            .is_err());
    }

    #[test]
    fn invert_delta_is_delta() {
        let m = nat_monoid(&[2, 3]);
        let delta = ArithFn::delta();
        let inv = delta.invert(&m).unwrap();
        for e in m.elements_up_to(20).unwrap() {
            assert_eq!(inv.eval(&m, &e), delta.eval(&m, &e));
        }
    }

    #[test]
    fn mobius_inversion_check_roundtrip() {
        let m = nat_monoid(&[2, 3, 5, 7]);
        // f = g*zeta built from a tabulated g must invert back
        let mut table = HashMap::new();
        for (i, e) in m.elements_up_to(60).unwrap().into_iter().enumerate() {
            table.insert(e, Int::from((7 * i + 3) as i64 % 11 - 5));
        }
        let g = ArithFn::table("g", table);
        let f = g.convolve(&ArithFn::zeta());
        let outcome = mobius_inversion_check(&m, &f, &g, 60).unwrap();
        assert!(outcome.passed(), "{outcome:?}");
    }

    #[test]
    fn mobius_inversion_check_catches_corruption() {
        let m = nat_monoid(&[2, 3]);
        let id = ArithFn::from_fn("id", |m, e| Int::from(m.weight(e).unwrap()));
        let wrong = ArithFn::from_fn("notphi", |_, _| Int::from(9));
        let outcome = mobius_inversion_check(&m, &id, &wrong, 30).unwrap();
        assert!(!outcome.passed());
    }

    #[test]
    fn pushforward_zeta_examples() {
        // Multiplicative: all coefficients 1
        let m = nat_monoid(&[2, 3, 5, 7, 11, 13, 17, 19]);
        let s = pushforward_series(&m, &ArithFn::zeta(), 20).unwrap();
        for n in 1..=20 {
            assert_eq!(s.coeff(n), crate::rat_int(Int::one()), "n={n}");
        }
        // Additive: P1 over F2 spectrum b1=3, b2=1 gives t^2 coefficient 7
        let mut c = Monoid::new(GradingMode::Additive);
        for i in 0..3 {
            c.add_atom(format!("x{i}"), 1).unwrap();
        }
        c.add_atom("y", 2).unwrap();
        let z = pushforward_series(&c, &ArithFn::zeta(), 2).unwrap();
        assert_eq!(z.coeff(2), crate::rat_int(Int::from(7)));
        // Empty monoid: identity only
        let empty_mult = nat_monoid(&[]);
        let s = pushforward_series(&empty_mult, &ArithFn::zeta(), 5).unwrap();
        assert_eq!(s.integer_coeffs().unwrap(), vec![
            Int::one(),
            Int::zero(),
            Int::zero(),
            Int::zero(),
            Int::zero()
        ]);
        let empty_add = Monoid::new(GradingMode::Additive);
        let s = pushforward_series(&empty_add, &ArithFn::zeta(), 3).unwrap();
        assert_eq!(s.coeff(0), crate::rat_int(Int::one()));
        assert_eq!(s.coeff(3), crate::rat_int(Int::zero()));
    }
}
