//! The ideal monoid of a quadratic field Q(sqrt(d)): prime splitting by
//! Kronecker symbols, ideal enumeration by norm, the product-formula
//! arithmetic functions phi_K / sigma_{1,K} / psi_K / lambda_K, Dedekind
//! zeta coefficients by pushforward, and an independent quotient-ring
//! oracle built from explicit Hermite-normal-form lattices inside Z + Z·w.
//!
//! The formula layer only ever sees atoms with norms; the lattice model is
//! constructed separately for ground-truth unit counts, projective-line
//! counts, Euler's theorem and SL2 indices.

use crate::monoid::{pushforward_series, ArithFn, CheckOutcome, Element, GradingMode, Monoid};
use crate::primes::{self, Sieve};
use crate::series::TruncatedSeries;
use crate::{int, Error, Int, Result};
use num::{One, Zero};
use std::str::FromStr;

pub const RING_ORACLE_CAP: u64 = 400;
pub const SL2_IDEAL_CAP: u64 = 16;

/// K = Q(sqrt(d)) for squarefree d, with integral basis {1, w} where
/// w = (1+sqrt(d))/2 if d = 1 mod 4 and w = sqrt(d) otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticField {
    d: i64,
    disc: i64,
}

impl QuadraticField {
    pub fn new(sieve: &Sieve, d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidInput("need d != 0, 1".into()));
        }
        if !primes::is_squarefree_int(sieve, d)? {
            return Err(Error::InvalidInput(format!("d = {d} is not squarefree")));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(QuadraticField { d, disc })
    }

    pub fn d(self) -> i64 {
        self.d
    }

    pub fn discriminant(self) -> i64 {
        self.disc
    }

    /// Multiplication rule for the integral basis: w² = t·w + u.
    pub fn omega_rule(self) -> (i64, i64) {
        if self.d.rem_euclid(4) == 1 {
            (1, (self.d - 1) / 4)
        } else {
            (0, self.d)
        }
    }

    /// Minimal polynomial of w is x² - t·x - u; its roots mod p drive the
    /// explicit prime-ideal lattices.
    fn omega_roots_mod(self, p: u64) -> Vec<u64> {
        let (t, u) = self.omega_rule();
        (0..p)
            .filter(|&x| {
                let fx = (x as i64 * x as i64 - t * x as i64 - u).rem_euclid(p as i64);
                fx == 0
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

/// A prime ideal over p, with residue degree f and norm p^f. Split primes
/// come in conjugate pairs distinguished by the root of the minimal
/// polynomial of w mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeIdealAtom {
    pub p: u64,
    pub kind: SplitKind,
    pub conj: u8,
    pub f: u8,
    pub norm: u64,
    /// Root c with w = c mod the ideal; None for inert primes.
    pub root: Option<u64>,
}

impl PrimeIdealAtom {
    pub fn label(&self) -> String {
        match self.kind {
            SplitKind::Ramified => format!("p{}r", self.p),
            SplitKind::Inert => format!("p{}i", self.p),
            SplitKind::Split => format!("p{}{}", self.p, if self.conj == 0 { "a" } else { "b" }),
        }
    }
}

/// Factor (p) into prime ideal atoms. For odd p the kind is decided by the
/// Kronecker symbol (disc|p); for p = 2 by disc parity and d mod 8. The
/// root scan must agree with that classification.
pub fn split_prime(sieve: &Sieve, field: QuadraticField, p: u64) -> Result<Vec<PrimeIdealAtom>> {
    if !sieve.is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let kind = if p == 2 {
        if field.disc % 2 == 0 {
            SplitKind::Ramified
        } else if field.d.rem_euclid(8) == 1 {
            SplitKind::Split
        } else {
            SplitKind::Inert
        }
    } else if field.disc.rem_euclid(p as i64) == 0 {
        SplitKind::Ramified
    } else {
        match primes::legendre(field.disc, p) {
            1 => SplitKind::Split,
            _ => SplitKind::Inert,
        }
    };
    let roots = field.omega_roots_mod(p);
    let atoms = match kind {
        SplitKind::Split => {
            if roots.len() != 2 {
                return Err(Error::Internal(format!(
                    "split prime {p} should have two roots, found {roots:?}"
                )));
            }
            vec![
                PrimeIdealAtom {
                    p,
                    kind,
                    conj: 0,
                    f: 1,
                    norm: p,
                    root: Some(roots[0]),
                },
                PrimeIdealAtom {
                    p,
                    kind,
                    conj: 1,
                    f: 1,
                    norm: p,
                    root: Some(roots[1]),
                },
            ]
        }
        SplitKind::Ramified => {
            if roots.len() != 1 {
                return Err(Error::Internal(format!(
                    "ramified prime {p} should have one root, found {roots:?}"
                )));
            }
            vec![PrimeIdealAtom {
                p,
                kind,
                conj: 0,
                f: 1,
                norm: p,
                root: Some(roots[0]),
            }]
        }
        SplitKind::Inert => {
            if !roots.is_empty() {
                return Err(Error::Internal(format!(
                    "inert prime {p} should have no roots, found {roots:?}"
                )));
            }
            vec![PrimeIdealAtom {
                p,
                kind,
                conj: 0,
                f: 2,
                norm: p * p,
                root: None,
            }]
        }
    };
    Ok(atoms)
}

/// The monoid of nonzero ideals of O_K presented on its prime-ideal atoms
/// of norm up to a bound, graded multiplicatively by the norm.
pub struct IdealMonoid {
    field: QuadraticField,
    monoid: Monoid,
    atoms: Vec<PrimeIdealAtom>,
}

impl IdealMonoid {
    pub fn up_to(sieve: &Sieve, field: QuadraticField, norm_bound: u64) -> Result<Self> {
        let mut atoms = Vec::new();
        for p in sieve.primes_up_to(norm_bound.max(2)) {
            for atom in split_prime(sieve, field, p)? {
                if atom.norm <= norm_bound {
                    atoms.push(atom);
                }
            }
        }
        atoms.sort_by_key(|a| (a.p, a.conj));
        let mut monoid = Monoid::new(GradingMode::Multiplicative);
        for a in &atoms {
            monoid.add_atom(a.label(), a.norm)?;
        }
        Ok(IdealMonoid {
            field,
            monoid,
            atoms,
        })
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn atoms(&self) -> &[PrimeIdealAtom] {
        &self.atoms
    }

    pub fn atom_info(&self, e: &Element) -> Vec<(PrimeIdealAtom, u32)> {
        e.factors()
            .iter()
            .map(|&(id, k)| (self.atoms[id.0 as usize], k))
            .collect()
    }

    /// All ideals of norm ≤ bound, sorted by (norm, factor key), each with
    /// its norm. Counts per norm are the Dedekind zeta coefficients.
    pub fn enumerate_ideals(&self, norm_bound: u64) -> Result<Vec<(Element, u64)>> {
        Ok(self
            .monoid
            .elements_up_to(norm_bound)?
            .into_iter()
            .map(|e| {
                let n = self.monoid.weight(&e).expect("registered atoms");
                (e, n)
            })
            .collect())
    }

    pub fn norm(&self, e: &Element) -> Int {
        int(self.monoid.weight(e).expect("registered atoms") as i64)
    }

    pub fn norm_fn(&self) -> ArithFn {
        ArithFn::from_fn("N", |m, e| int(m.weight(e).unwrap() as i64))
    }

    pub fn phi_k(&self, e: &Element) -> Int {
        self.atom_info(e)
            .iter()
            .map(|(a, k)| pow_int(a.norm, k - 1) * int(a.norm as i64 - 1))
            .product()
    }

    pub fn sigma1_k(&self, e: &Element) -> Int {
        self.atom_info(e)
            .iter()
            .map(|(a, k)| {
                let mut acc = Int::zero();
                for j in 0..=*k {
                    acc += pow_int(a.norm, j);
                }
                acc
            })
            .product()
    }

    pub fn psi_k(&self, e: &Element) -> Int {
        self.atom_info(e)
            .iter()
            .map(|(a, k)| pow_int(a.norm, k - 1) * int(a.norm as i64 + 1))
            .product()
    }

    pub fn lambda_k(&self, e: &Element) -> Int {
        if e.total_multiplicity() % 2 == 0 {
            Int::one()
        } else {
            -Int::one()
        }
    }

    pub fn phi_fn(&self) -> ArithFn {
        let atoms = self.atoms.clone();
        ArithFn::from_fn("phi_K", move |_, e| {
            e.factors()
                .iter()
                .map(|&(id, k)| {
                    let n = atoms[id.0 as usize].norm;
                    pow_int(n, k - 1) * int(n as i64 - 1)
                })
                .product()
        })
    }

    pub fn sigma1_fn(&self) -> ArithFn {
        let atoms = self.atoms.clone();
        ArithFn::from_fn("sigma1_K", move |_, e| {
            e.factors()
                .iter()
                .map(|&(id, k)| {
                    let n = atoms[id.0 as usize].norm;
                    let mut acc = Int::zero();
                    for j in 0..=k {
                        acc += pow_int(n, j);
                    }
                    acc
                })
                .product()
        })
    }

    pub fn psi_fn(&self) -> ArithFn {
        let atoms = self.atoms.clone();
        ArithFn::from_fn("psi_K", move |_, e| {
            e.factors()
                .iter()
                .map(|&(id, k)| {
                    let n = atoms[id.0 as usize].norm;
                    pow_int(n, k - 1) * int(n as i64 + 1)
                })
                .product()
        })
    }

    pub fn lambda_fn(&self) -> ArithFn {
        ArithFn::from_fn("lambda_K", |_, e| {
            if e.total_multiplicity() % 2 == 0 {
                Int::one()
            } else {
                -Int::one()
            }
        })
    }

    /// Dirichlet coefficients of the pushforward N_* f up to the bound.
    pub fn dirichlet_pushforward(&self, f: &ArithFn, bound: u64) -> Result<TruncatedSeries> {
        pushforward_series(&self.monoid, f, bound)
    }

    /// Explicit finite-ring model of O_K / e for the oracle layer.
    pub fn quotient_ring(&self, e: &Element, cap: u64) -> Result<QuotientRing> {
        let norm = self.monoid.weight(e)?;
        if norm > cap {
            return Err(Error::Resource(format!(
                "quotient ring norm {norm} above oracle cap {cap}"
            )));
        }
        let mut lattice = Hnf::full_ring();
        for (atom, k) in self.atom_info(e) {
            let prime_lat = Hnf::of_prime(self.field, &atom);
            for _ in 0..k {
                lattice = lattice.multiply(self.field, &prime_lat);
            }
        }
        QuotientRing::new(self.field, lattice, norm)
    }
}

fn pow_int(base: u64, k: u32) -> Int {
    num::pow::pow(int(base as i64), k as usize)
}

/// Row-style Hermite normal form of a full-rank lattice in Z + Z·w:
/// basis vectors (a, 0) and (b, c) with a, c > 0 and 0 ≤ b < a.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Hnf {
    pub fn full_ring() -> Self {
        Hnf { a: 1, b: 0, c: 1 }
    }

    fn of_prime(field: QuadraticField, atom: &PrimeIdealAtom) -> Self {
        let p = atom.p as i64;
        let h = match atom.root {
            // (p, w - c): lattice generated by (p, 0) and (-c, 1)
            Some(c) => Hnf::from_generators(&[(p, 0), (-(c as i64), 1)]),
            // inert (p): (p, 0) and (0, p)
            None => Hnf::from_generators(&[(p, 0), (0, p)]),
        };
        debug_assert_eq!(h.index() as u64, atom.norm, "field {:?}", field);
        h
    }

    /// HNF of the lattice spanned by the given vectors x + y·w.
    pub fn from_generators(gens: &[(i64, i64)]) -> Self {
        let mut rows: Vec<(i64, i64)> = gens.to_vec();
        // Euclidean elimination on the w-coordinate.
        loop {
            let mut pivot: Option<usize> = None;
            for (i, r) in rows.iter().enumerate() {
                if r.1 != 0 {
                    pivot = match pivot {
                        Some(j) if rows[j].1.abs() <= r.1.abs() => Some(j),
                        _ => Some(i),
                    };
                }
            }
            let Some(pi) = pivot else {
                panic!("lattice generators must have full rank");
            };
            let (px, py) = rows[pi];
            let mut reduced_all = true;
            for i in 0..rows.len() {
                if i != pi && rows[i].1 != 0 {
                    let q = rows[i].1.div_euclid(py);
                    rows[i].0 -= q * px;
                    rows[i].1 -= q * py;
                    if rows[i].1 != 0 {
                        reduced_all = false;
                    }
                }
            }
            if reduced_all {
                // the pivot row is now the unique one with nonzero w-part
                let (mut b, mut c) = (px, py);
                if c < 0 {
                    b = -b;
                    c = -c;
                }
                let mut a = 0i64;
                for (i, r) in rows.iter().enumerate() {
                    if i != pi {
                        a = gcd_i64(a, r.0);
                    }
                }
                assert!(a != 0, "lattice generators must have full rank");
                a = a.abs();
                b = b.rem_euclid(a);
                return Hnf { a, b, c };
            }
        }
    }

    /// Lattice index in Z + Z·w, which is the ideal norm.
    pub fn index(&self) -> i64 {
        self.a * self.c
    }

    /// Product ideal: the span of the pairwise products of basis vectors.
    pub fn multiply(&self, field: QuadraticField, other: &Hnf) -> Hnf {
        let ours = [(self.a, 0), (self.b, self.c)];
        let theirs = [(other.a, 0), (other.b, other.c)];
        let mut gens = Vec::with_capacity(4);
        for &u in &ours {
            for &v in &theirs {
                gens.push(mul_in_ok(field, u, v));
            }
        }
        Hnf::from_generators(&gens)
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let mut a = a.abs();
    let mut b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// (x1 + y1·w)(x2 + y2·w) with w² = t·w + u.
fn mul_in_ok(field: QuadraticField, (x1, y1): (i64, i64), (x2, y2): (i64, i64)) -> (i64, i64) {
    let (t, u) = field.omega_rule();
    (x1 * x2 + u * y1 * y2, x1 * y2 + x2 * y1 + t * y1 * y2)
}

/// An explicit finite quotient ring O_K / a with N(a) elements, indexed
/// residues and a multiplication table. This is the slow ground-truth
/// layer behind the product formulas.
pub struct QuotientRing {
    pub hnf: Hnf,
    pub size: u64,
    one: u32,
    mul_table: Vec<u32>,
}

impl QuotientRing {
    fn new(field: QuadraticField, hnf: Hnf, expected_norm: u64) -> Result<Self> {
        let size = hnf.index() as u64;
        if size != expected_norm {
            return Err(Error::Internal(format!(
                "HNF index {size} disagrees with norm {expected_norm}"
            )));
        }
        let mut ring = QuotientRing {
            hnf,
            size,
            one: 0,
            mul_table: Vec::new(),
        };
        ring.one = ring.index_of(1, 0);
        let n = size as usize;
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            let (x1, y1) = ring.coords_of(i as u32);
            for j in i..n {
                let (x2, y2) = ring.coords_of(j as u32);
                let prod = mul_in_ok(field, (x1, y1), (x2, y2));
                let idx = ring.index_of(prod.0, prod.1);
                table[i * n + j] = idx;
                table[j * n + i] = idx;
            }
        }
        ring.mul_table = table;
        Ok(ring)
    }

    /// Reduce x + y·w modulo the lattice to its canonical residue index.
    pub fn index_of(&self, mut x: i64, y: i64) -> u32 {
        let q = y.div_euclid(self.hnf.c);
        let y = y - q * self.hnf.c;
        x -= q * self.hnf.b;
        x = x.rem_euclid(self.hnf.a);
        (y * self.hnf.a + x) as u32
    }

    pub fn coords_of(&self, idx: u32) -> (i64, i64) {
        let a = self.hnf.a;
        ((idx as i64) % a, (idx as i64) / a)
    }

    pub fn zero(&self) -> u32 {
        self.index_of(0, 0)
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn add(&self, i: u32, j: u32) -> u32 {
        let (x1, y1) = self.coords_of(i);
        let (x2, y2) = self.coords_of(j);
        self.index_of(x1 + x2, y1 + y2)
    }

    pub fn sub(&self, i: u32, j: u32) -> u32 {
        let (x1, y1) = self.coords_of(i);
        let (x2, y2) = self.coords_of(j);
        self.index_of(x1 - x2, y1 - y2)
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.mul_table[i as usize * self.size as usize + j as usize]
    }

    pub fn pow_mod(&self, base: u32, mut e: u64) -> u32 {
        let mut acc = self.one;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Units by exhaustive inverse search.
    pub fn unit_indices(&self) -> Vec<u32> {
        let n = self.size as u32;
        (0..n)
            .filter(|&i| (0..n).any(|j| self.mul(i, j) == self.one))
            .collect()
    }

    pub fn unit_count(&self) -> Int {
        int(self.unit_indices().len() as i64)
    }

    /// Projective line over the quotient: pairs generating the unit ideal,
    /// modulo unit scaling. Exact divisibility by the unit count is
    /// asserted.
    pub fn p1_count(&self) -> Result<Int> {
        let n = self.size as usize;
        // reachable[x] = characteristic vector of the principal ideal xR
        let words = n.div_ceil(64);
        let mut reachable = vec![vec![0u64; words]; n];
        let mut image: Vec<Vec<u32>> = vec![Vec::new(); n];
        for x in 0..n {
            for r in 0..n {
                let m = self.mul(x as u32, r as u32);
                let w = &mut reachable[x][m as usize / 64];
                let bit = 1u64 << (m % 64);
                if *w & bit == 0 {
                    *w |= bit;
                    image[x].push(m);
                }
            }
        }
        let mut unimodular = 0u64;
        for a in 0..n {
            for b in 0..n {
                // 1 in aR + bR iff some v in bR has 1 - v in aR
                let hit = image[b].iter().any(|&v| {
                    let target = self.sub(self.one, v);
                    reachable[a][target as usize / 64] & (1u64 << (target % 64)) != 0
                });
                if hit {
                    unimodular += 1;
                }
            }
        }
        let units = self.unit_count();
        let total = int(unimodular as i64);
        if (&total % &units) != Int::zero() {
            return Err(Error::Internal(
                "unit action on unimodular pairs is not free".into(),
            ));
        }
        Ok(total / units)
    }

    /// Spot-check of the ring axioms on a deterministic sample of triples.
    pub fn spot_check_axioms(&self) -> Result<()> {
        let n = self.size as u32;
        let pick = |k: u32| (k.wrapping_mul(2654435761)) % n;
        for t in 0..200u32 {
            let (i, j, k) = (pick(t), pick(t + 7), pick(t + 13));
            if self.mul(i, j) != self.mul(j, i)
                || self.mul(self.mul(i, j), k) != self.mul(i, self.mul(j, k))
                || self.mul(i, self.add(j, k)) != self.add(self.mul(i, j), self.mul(i, k))
            {
                return Err(Error::Internal(format!(
                    "ring axioms fail at triple ({i},{j},{k})"
                )));
            }
        }
        Ok(())
    }
}

/// Index of the upper-triangular subgroup in SL2 of the quotient ring,
/// by full matrix enumeration. Capped at tiny norms (N^4 matrices).
pub fn sl2_index_ideal(ring: &QuotientRing, cap: u64) -> Result<Int> {
    if ring.size > cap {
        return Err(Error::Resource(format!(
            "SL2 enumeration cap {cap} exceeded by norm {}",
            ring.size
        )));
    }
    let n = ring.size as u32;
    let mut total = 0u64;
    let mut upper = 0u64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let det = ring.sub(ring.mul(a, d), ring.mul(b, c));
                    if det == ring.one() {
                        total += 1;
                        if c == ring.zero() {
                            upper += 1;
                        }
                    }
                }
            }
        }
    }
    if upper == 0 || total % upper != 0 {
        return Err(Error::Internal(
            "upper-triangular subgroup order does not divide the group order".into(),
        ));
    }
    Ok(int((total / upper) as i64))
}

/// The named identity checks of the quadratic-field suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadIdentity {
    PhiKRecursion,
    PhiKZetaQuotient,
    SigmaKSeries,
    PsiKAbsMu,
    PsiKSeries,
    LambdaKDelta,
    PhiKOracle,
    SigmaKOracle,
}

pub const QUAD_IDENTITIES: [QuadIdentity; 8] = [
    QuadIdentity::PhiKRecursion,
    QuadIdentity::PhiKZetaQuotient,
    QuadIdentity::SigmaKSeries,
    QuadIdentity::PsiKAbsMu,
    QuadIdentity::PsiKSeries,
    QuadIdentity::LambdaKDelta,
    QuadIdentity::PhiKOracle,
    QuadIdentity::SigmaKOracle,
];

impl QuadIdentity {
    pub fn id(self) -> &'static str {
        match self {
            QuadIdentity::PhiKRecursion => "PHIK_RECURSION",
            QuadIdentity::PhiKZetaQuotient => "PHIK_ZETA_QUOTIENT",
            QuadIdentity::SigmaKSeries => "SIGMAK_SERIES",
            QuadIdentity::PsiKAbsMu => "PSIK_ABSMU",
            QuadIdentity::PsiKSeries => "PSIK_SERIES",
            QuadIdentity::LambdaKDelta => "LAMBDAK_DELTA",
            QuadIdentity::PhiKOracle => "PHIK_ORACLE",
            QuadIdentity::SigmaKOracle => "SIGMAK_ORACLE",
        }
    }
}

impl FromStr for QuadIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QUAD_IDENTITIES
            .iter()
            .copied()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown quadfield identity: {s}")))
    }
}

/// Elementwise / coefficientwise verification of one identity over all
/// ideals of norm ≤ bound. Oracle identities are capped by `ring_cap`.
pub fn verify_quad_identity(
    ideals: &IdealMonoid,
    identity: QuadIdentity,
    bound: u64,
    ring_cap: u64,
) -> Result<CheckOutcome> {
    let m = ideals.monoid();
    let render = |e: &Element| {
        if e.is_identity() {
            "(1)".to_string()
        } else {
            m.render(e)
        }
    };
    let elements = ideals.enumerate_ideals(bound)?;
    let mut checked = 0usize;

    match identity {
        QuadIdentity::PhiKRecursion => {
            for (e, n) in &elements {
                let sum: Int = e.divisors().iter().map(|d| ideals.phi_k(d)).sum();
                checked += 1;
                if sum != int(*n as i64) {
                    return Ok(CheckOutcome::Fail {
                        witness: format!(
                            "sum of phi_K over divisors of {} is {sum}, norm is {n}",
                            render(e)
                        ),
                    });
                }
            }
        }
        QuadIdentity::PhiKZetaQuotient => {
            let conv = ideals.phi_fn().convolve(&ArithFn::zeta());
            let n_mu = ideals.norm_fn().convolve(&ArithFn::mobius());
            for (e, n) in &elements {
                checked += 1;
                let got = conv.eval(m, e);
                if got != int(*n as i64) {
                    return Ok(CheckOutcome::Fail {
                        witness: format!("(phi_K*zeta)({}) = {got} != N = {n}", render(e)),
                    });
                }
                let got = n_mu.eval(m, e);
                let expect = ideals.phi_k(e);
                if got != expect {
                    return Ok(CheckOutcome::Fail {
                        witness: format!("(N*mu)({}) = {got} != phi_K = {expect}", render(e)),
                    });
                }
            }
        }
        QuadIdentity::SigmaKSeries => {
            let conv = ideals.norm_fn().convolve(&ArithFn::zeta());
            for (e, _) in &elements {
                checked += 1;
                let got = conv.eval(m, e);
                let expect = ideals.sigma1_k(e);
                if got != expect {
                    return Ok(CheckOutcome::Fail {
                        witness: format!("(N*zeta)({}) = {got} != sigma_1K = {expect}", render(e)),
                    });
                }
            }
        }
        QuadIdentity::PsiKAbsMu => {
            let conv = ideals.norm_fn().convolve(&ArithFn::mobius().abs());
            for (e, _) in &elements {
                checked += 1;
                let got = conv.eval(m, e);
                let expect = ideals.psi_k(e);
                if got != expect {
                    return Ok(CheckOutcome::Fail {
                        witness: format!("(N*|mu|)({}) = {got} != psi_K = {expect}", render(e)),
                    });
                }
            }
        }
        QuadIdentity::PsiKSeries => {
            // The Dirichlet-series statement zeta_K(s)zeta_K(s-1)/zeta_K(2s)
            // cleared of denominators: psi_K = N*|mu_K| together with
            // |mu_K|*lambda_K = delta.
            let psi_conv = ideals.norm_fn().convolve(&ArithFn::mobius().abs());
            let pair = ArithFn::mobius().abs().convolve(&ideals.lambda_fn());
            for (e, _) in &elements {
                checked += 1;
                if psi_conv.eval(m, e) != ideals.psi_k(e) {
                    return Ok(CheckOutcome::Fail {
                        witness: format!("(N*|mu|)({}) != psi_K", render(e)),
                    });
                }
                let expect = if e.is_identity() {
                    Int::one()
                } else {
                    Int::zero()
                };
                if pair.eval(m, e) != expect {
                    return Ok(CheckOutcome::Fail {
                        witness: format!("(|mu|*lambda_K)({}) != delta", render(e)),
                    });
                }
            }
        }
        QuadIdentity::LambdaKDelta => {
            let conv = ideals.lambda_fn().convolve(&ArithFn::mobius().abs());
            for (e, _) in &elements {
                checked += 1;
                let expect = if e.is_identity() {
                    Int::one()
                } else {
                    Int::zero()
                };
                let got = conv.eval(m, e);
                if got != expect {
                    return Ok(CheckOutcome::Fail {
                        witness: format!("(lambda_K*|mu_K|)({}) = {got} != {expect}", render(e)),
                    });
                }
            }
        }
        QuadIdentity::PhiKOracle => {
            for (e, n) in &elements {
                if *n > ring_cap {
                    continue;
                }
                let ring = ideals.quotient_ring(e, ring_cap)?;
                checked += 1;
                let counted = ring.unit_count();
                let formula = ideals.phi_k(e);
                if counted != formula {
                    return Ok(CheckOutcome::Fail {
                        witness: format!(
                            "unit count of O_K/{} is {counted}, phi_K gives {formula}",
                            render(e)
                        ),
                    });
                }
            }
        }
        QuadIdentity::SigmaKOracle => {
            let mut matches_psi = true;
            let mut first_fail: Option<String> = None;
            for (e, n) in &elements {
                if *n > ring_cap {
                    continue;
                }
                let ring = ideals.quotient_ring(e, ring_cap)?;
                checked += 1;
                let counted = ring.p1_count()?;
                if counted != ideals.psi_k(e) {
                    matches_psi = false;
                }
                if first_fail.is_none() && counted != ideals.sigma1_k(e) {
                    first_fail = Some(format!(
                        "sigma_1K({}) = {} but #P1(O_K/.) = {counted}{}",
                        render(e),
                        ideals.sigma1_k(e),
                        if counted == ideals.psi_k(e) {
                            " = psi_K".to_string()
                        } else {
                            String::new()
                        }
                    ));
                }
            }
            if let Some(mut witness) = first_fail {
                if matches_psi {
                    witness.push_str(
                        "; the count equals psi_K on every checked ideal and \
                         equals sigma_1K exactly on squarefree ideals",
                    );
                }
                return Ok(CheckOutcome::Fail { witness });
            }
        }
    }
    Ok(CheckOutcome::Pass { checked })
}

/// Euler's theorem over the quotient-ring oracle: every unit of O_K / b
/// raised to phi_K(b) is 1, for all ideals of norm ≤ bound.
pub fn euler_check_ideals(ideals: &IdealMonoid, norm_bound: u64, cap: u64) -> Result<CheckOutcome> {
    let mut checked = 0usize;
    for (e, n) in ideals.enumerate_ideals(norm_bound)? {
        if n > cap {
            return Err(Error::Resource(format!(
                "euler check norm bound {norm_bound} above oracle cap {cap}"
            )));
        }
        let ring = ideals.quotient_ring(&e, cap)?;
        let phi = ideals.phi_k(&e);
        let exp = u64::try_from(&phi).map_err(|_| Error::Internal("phi_K exceeded u64".into()))?;
        for u in ring.unit_indices() {
            checked += 1;
            if ring.pow_mod(u, exp) != ring.one() {
                return Ok(CheckOutcome::Fail {
                    witness: format!(
                        "unit #{u} of O_K/{} fails u^phi_K = 1",
                        ideals.monoid().render(&e)
                    ),
                });
            }
        }
    }
    Ok(CheckOutcome::Pass { checked })
}

/// psi_K(a) = index of the upper-triangular subgroup of SL2(O_K/a),
/// verified for every ideal of norm ≤ bound (≤ the SL2 cap).
pub fn sl2_check_ideals(ideals: &IdealMonoid, norm_bound: u64) -> Result<CheckOutcome> {
    let mut checked = 0usize;
    for (e, _) in ideals.enumerate_ideals(norm_bound.min(SL2_IDEAL_CAP))? {
        let ring = ideals.quotient_ring(&e, RING_ORACLE_CAP)?;
        let index = sl2_index_ideal(&ring, SL2_IDEAL_CAP)?;
        let expect = ideals.psi_k(&e);
        checked += 1;
        if index != expect {
            return Ok(CheckOutcome::Fail {
                witness: format!(
                    "SL2 index over {} is {index}, psi_K gives {expect}",
                    ideals.monoid().render(&e)
                ),
            });
        }
    }
    Ok(CheckOutcome::Pass { checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(sieve: &Sieve) -> QuadraticField {
        QuadraticField::new(sieve, -1).unwrap()
    }

    #[test]
    fn field_construction() {
        let s = Sieve::new();
        assert!(QuadraticField::new(&s, 0).is_err());
        assert!(QuadraticField::new(&s, 1).is_err());
        assert!(QuadraticField::new(&s, 12).is_err());
        assert_eq!(QuadraticField::new(&s, -1).unwrap().discriminant(), -4);
        assert_eq!(QuadraticField::new(&s, 5).unwrap().discriminant(), 5);
        assert_eq!(QuadraticField::new(&s, -5).unwrap().discriminant(), -20);
        assert_eq!(QuadraticField::new(&s, 2).unwrap().discriminant(), 8);
    }

    #[test]
    fn splitting_in_gaussian_integers() {
        let s = Sieve::new();
        let k = gaussian(&s);
        let five = split_prime(&s, k, 5).unwrap();
        assert_eq!(five.len(), 2);
        assert!(five
            .iter()
            .all(|a| a.kind == SplitKind::Split && a.norm == 5));
        let three = split_prime(&s, k, 3).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].kind, SplitKind::Inert);
        assert_eq!(three[0].norm, 9);
        let two = split_prime(&s, k, 2).unwrap();
        assert_eq!(two[0].kind, SplitKind::Ramified);
        assert!(split_prime(&s, k, 6).is_err());
    }

    #[test]
    fn splitting_at_two_by_residue() {
        let s = Sieve::new();
        // d = 17 = 1 mod 8: split; d = 5 mod 8: inert; even disc: ramified
        let k17 = QuadraticField::new(&s, 17).unwrap();
        assert_eq!(split_prime(&s, k17, 2).unwrap().len(), 2);
        let k5 = QuadraticField::new(&s, 5).unwrap();
        assert_eq!(split_prime(&s, k5, 2).unwrap()[0].kind, SplitKind::Inert);
        let k2 = QuadraticField::new(&s, 2).unwrap();
        assert_eq!(split_prime(&s, k2, 2).unwrap()[0].kind, SplitKind::Ramified);
    }

    #[test]
    fn ideal_enumeration_gaussian() {
        let s = Sieve::new();
        let ideals = IdealMonoid::up_to(&s, gaussian(&s), 30).unwrap();
        let all = ideals.enumerate_ideals(30).unwrap();
        let count_at = |n: u64| all.iter().filter(|&&(_, w)| w == n).count();
        assert_eq!(count_at(1), 1);
        assert_eq!(count_at(5), 2);
        assert_eq!(count_at(9), 1);
        assert_eq!(count_at(3), 0);
        assert_eq!(count_at(2), 1);
        // r2(n) = 4 * (number of ideals of norm n) for Z[i]
        for n in 1..=30u64 {
            let ideal_count = int(count_at(n) as i64);
            assert_eq!(crate::classical::r2(n), int(4) * ideal_count, "n={n}");
        }
    }

    #[test]
    fn product_formula_values() {
        let s = Sieve::new();
        let ideals = IdealMonoid::up_to(&s, gaussian(&s), 100).unwrap();
        let unit = Element::identity();
        assert_eq!(ideals.phi_k(&unit), int(1));
        assert_eq!(ideals.sigma1_k(&unit), int(1));
        assert_eq!(ideals.psi_k(&unit), int(1));
        for (e, _) in ideals.enumerate_ideals(100).unwrap() {
            if e.distinct_atoms() == 1 && e.total_multiplicity() == 1 {
                let (atom, _) = ideals.atom_info(&e)[0];
                assert_eq!(ideals.phi_k(&e), int(atom.norm as i64 - 1));
                assert_eq!(ideals.psi_k(&e), int(atom.norm as i64 + 1));
            }
            if e.is_squarefree() {
                assert_eq!(ideals.psi_k(&e), ideals.sigma1_k(&e));
            }
        }
    }

    #[test]
    fn hnf_and_quotient_rings() {
        let s = Sieve::new();
        let ideals = IdealMonoid::up_to(&s, gaussian(&s), 100).unwrap();
        for (e, n) in ideals.enumerate_ideals(50).unwrap() {
            let ring = ideals.quotient_ring(&e, 400).unwrap();
            assert_eq!(ring.size, n);
            ring.spot_check_axioms().unwrap();
        }
        // split atom over 5: F5; ramified (2) = p2^2: order 4 with 2 units
        let all = ideals.enumerate_ideals(5).unwrap();
        let (p5, _) = all.iter().find(|&&(_, w)| w == 5).unwrap();
        let ring5 = ideals.quotient_ring(p5, 400).unwrap();
        assert_eq!(ring5.unit_count(), int(4));
        assert_eq!(ring5.p1_count().unwrap(), int(6));
        let (p2sq, _) = all
            .iter()
            .find(|&&(ref e, w)| w == 4 && e.total_multiplicity() == 2)
            .unwrap();
        let ring4 = ideals.quotient_ring(p2sq, 400).unwrap();
        assert_eq!(ring4.unit_count(), int(2));
        let unit_ring = ideals.quotient_ring(&Element::identity(), 400).unwrap();
        assert_eq!(unit_ring.unit_count(), int(1));
        assert_eq!(unit_ring.p1_count().unwrap(), int(1));
        let biggest = ideals.enumerate_ideals(100).unwrap().last().unwrap().0.clone();
        assert!(ideals.quotient_ring(&biggest, 4).is_err());
    }

    #[test]
    fn identities_on_small_fields() {
        let s = Sieve::new();
        for d in [-1i64, 5, -5, 2] {
            let field = QuadraticField::new(&s, d).unwrap();
            let ideals = IdealMonoid::up_to(&s, field, 60).unwrap();
            for identity in QUAD_IDENTITIES {
                if identity == QuadIdentity::SigmaKOracle {
                    continue; // see sigma_oracle_matches_psi
                }
                let out = verify_quad_identity(&ideals, identity, 60, 400).unwrap();
                assert!(out.passed(), "d={d} {identity:?}: {out:?}");
            }
        }
    }

    #[test]
    fn sigma_oracle_matches_psi() {
        let s = Sieve::new();
        let ideals = IdealMonoid::up_to(&s, gaussian(&s), 60).unwrap();
        let out = verify_quad_identity(&ideals, QuadIdentity::SigmaKOracle, 60, 400).unwrap();
        match out {
            CheckOutcome::Fail { witness } => {
                assert!(witness.contains("psi_K"), "{witness}");
            }
            CheckOutcome::Pass { .. } => {
                panic!("P1 count should diverge from sigma_1K at the first non-squarefree ideal")
            }
        }
        // and the count really is psi_K everywhere
        for (e, _) in ideals.enumerate_ideals(60).unwrap() {
            let ring = ideals.quotient_ring(&e, 400).unwrap();
            assert_eq!(ring.p1_count().unwrap(), ideals.psi_k(&e));
        }
    }

    #[test]
    fn euler_and_sl2() {
        let s = Sieve::new();
        let ideals = IdealMonoid::up_to(&s, gaussian(&s), 60).unwrap();
        assert!(euler_check_ideals(&ideals, 60, 400).unwrap().passed());
        assert!(sl2_check_ideals(&ideals, 16).unwrap().passed());
        // norm-2 ramified atom: index 3; inert (3): index 10
        let all = ideals.enumerate_ideals(16).unwrap();
        let (p2, _) = all.iter().find(|&&(_, w)| w == 2).unwrap();
        let r = ideals.quotient_ring(p2, 400).unwrap();
        assert_eq!(sl2_index_ideal(&r, 16).unwrap(), int(3));
        let (p3, _) = all
            .iter()
            .find(|&&(ref e, w)| w == 9 && e.total_multiplicity() == 1)
            .unwrap();
        let r = ideals.quotient_ring(p3, 400).unwrap();
        assert_eq!(sl2_index_ideal(&r, 16).unwrap(), int(10));
    }

    #[test]
    fn dedekind_pushforward() {
        let s = Sieve::new();
        let ideals = IdealMonoid::up_to(&s, gaussian(&s), 20).unwrap();
        let z = ideals.dirichlet_pushforward(&ArithFn::zeta(), 20).unwrap();
        assert_eq!(z.coeff(5), crate::rat_int(int(2)));
        assert_eq!(z.coeff(3), crate::rat_int(int(0)));
        let delta = ideals.dirichlet_pushforward(&ArithFn::delta(), 20).unwrap();
        assert_eq!(delta.coeff(1), crate::rat_int(int(1)));
        assert_eq!(delta.coeff(2), crate::rat_int(int(0)));
        let phi = ideals.dirichlet_pushforward(&ideals.phi_fn(), 20).unwrap();
        assert_eq!(phi.coeff(2), crate::rat_int(int(1)));
    }
}
