//! Varieties over finite fields: brute-force point counting over field
//! towers, closed-point spectra by Möbius inversion of the point counts,
//! zeta power series, generating functions of the 0-cycle arithmetic
//! functions, the polynomial-ring oracle for Euler's theorem on the
//! projective line, and Frobenius-orbit cross-checks.
//!
//! Projective spaces are enumerated chart by chart (the usual cell
//! decomposition), so a degree-D sweep of a plane curve costs on the
//! order of q^(2D) tuples rather than q^(3D).

use crate::ffield::ExtField;
use crate::monoid::{CheckOutcome, Element, GradingMode, Monoid};
use crate::mpoly::{self, MultiPoly};
use crate::series::{SeriesKind, TruncatedSeries};
use crate::{int, rat_int, Error, Int, Rat, Result};
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::str::FromStr;

/// Chart tuples per point count; one degree-8 sweep of a plane curve over
/// F_3 is ~4.3e7 tuples and must fit.
pub const ENUM_BUDGET: u64 = 1 << 26;

pub const DEFAULT_DEGREE: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Affine(usize),
    Projective(usize),
}

impl Ambient {
    fn num_vars(self) -> usize {
        match self {
            Ambient::Affine(n) => n,
            Ambient::Projective(n) => n + 1,
        }
    }
}

/// A variety presentation: ambient space, defining polynomials, an
/// optional base prime (absent for global templates), and a product
/// modifier appending affine-line factors.
#[derive(Clone, Debug)]
pub struct VarietySpec {
    pub name: String,
    pub ambient: Ambient,
    pub polys: Vec<MultiPoly>,
    pub base: Option<u64>,
    pub times_a1: u32,
}

impl VarietySpec {
    fn validate(&self) -> Result<()> {
        let nv = self.ambient.num_vars();
        for poly in &self.polys {
            if let Some(maxv) = poly.max_var_used() {
                if maxv >= nv {
                    return Err(Error::InvalidInput(format!(
                        "variable x{maxv} outside ambient of dimension {nv}"
                    )));
                }
            }
            if matches!(self.ambient, Ambient::Projective(_)) {
                if let Err(monomial) = poly.homogeneous_degree() {
                    return Err(Error::InvalidInput(format!(
                        "projective ambient requires homogeneous polynomials; \
                         monomial {monomial} breaks the degree"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base_prime(&self) -> Result<u64> {
        self.base
            .ok_or_else(|| Error::InvalidInput("variety has no base prime".into()))
    }

    /// The same variety crossed with one more affine line.
    pub fn times_affine_line(&self) -> VarietySpec {
        let mut v = self.clone();
        v.times_a1 += 1;
        v.name = format!("{}xA1", v.name);
        v
    }

    /// Reduction at p for a global template.
    pub fn at_prime(&self, p: u64) -> VarietySpec {
        let mut v = self.clone();
        v.base = Some(p);
        v
    }
}

/// Builtin shortcuts: point, A1, A2, Gm, P1, P2. The multiplicative group
/// is presented as the hyperbola x0·x1 = 1 so that it goes through the
/// same generic engine as everything else.
pub fn builtin(name: &str) -> Result<VarietySpec> {
    let spec = match name {
        "point" => VarietySpec {
            name: "point".into(),
            ambient: Ambient::Affine(0),
            polys: vec![],
            base: None,
            times_a1: 0,
        },
        "A1" => VarietySpec {
            name: "A1".into(),
            ambient: Ambient::Affine(1),
            polys: vec![],
            base: None,
            times_a1: 0,
        },
        "A2" => VarietySpec {
            name: "A2".into(),
            ambient: Ambient::Affine(2),
            polys: vec![],
            base: None,
            times_a1: 0,
        },
        "Gm" => VarietySpec {
            name: "Gm".into(),
            ambient: Ambient::Affine(2),
            polys: vec![mpoly::parse_poly("x0*x1 - 1", 1)?],
            base: None,
            times_a1: 0,
        },
        "P1" => VarietySpec {
            name: "P1".into(),
            ambient: Ambient::Projective(1),
            polys: vec![],
            base: None,
            times_a1: 0,
        },
        "P2" => VarietySpec {
            name: "P2".into(),
            ambient: Ambient::Projective(2),
            polys: vec![],
            base: None,
            times_a1: 0,
        },
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown builtin variety: {other}"
            )))
        }
    };
    Ok(spec)
}

/// The cubic plane curve sample used throughout the test batteries.
pub fn cubic_curve() -> VarietySpec {
    let mut v = VarietySpec {
        name: "cubic".into(),
        ambient: Ambient::Projective(2),
        polys: vec![mpoly::parse_poly("y^2*z - x^3 + x*z^2", 1).unwrap()],
        base: None,
        times_a1: 0,
    };
    v.base = Some(3);
    v
}

/// Parse the line-oriented `key=value` variety spec format. Keys: `p`,
/// `ambient` (affine|projective), `dim`, `poly` (repeatable), `builtin`,
/// `times` (A1), and `global` in place of `p`. Unknown keys are rejected.
pub fn parse_spec(text: &str) -> Result<VarietySpec> {
    let mut base: Option<u64> = None;
    let mut global = false;
    let mut ambient_kind: Option<&str> = None;
    let mut dim: Option<usize> = None;
    let mut polys: Vec<MultiPoly> = Vec::new();
    let mut builtin_name: Option<String> = None;
    let mut times_a1 = 0u32;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse {
            line: lineno,
            col: 1,
            msg,
        };
        if line == "global" {
            global = true;
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(format!("expected key=value, got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "p" => {
                let p: u64 = value
                    .parse()
                    .map_err(|_| parse_err(format!("bad prime '{value}'")))?;
                base = Some(p);
            }
            "global" => {
                global = matches!(value, "1" | "true" | "yes");
                if !global {
                    return Err(parse_err(format!("bad global flag '{value}'")));
                }
            }
            "ambient" => match value {
                "affine" | "projective" => {
                    ambient_kind = Some(if value == "affine" {
                        "affine"
                    } else {
                        "projective"
                    })
                }
                _ => {
                    return Err(parse_err(format!(
                        "ambient must be affine or projective, got '{value}'"
                    )))
                }
            },
            "dim" => {
                let d: usize = value
                    .parse()
                    .map_err(|_| parse_err(format!("bad dimension '{value}'")))?;
                if d > 9 {
                    return Err(parse_err("dimension capped at 9".into()));
                }
                dim = Some(d);
            }
            "poly" => polys.push(mpoly::parse_poly(value, lineno)?),
            "builtin" => builtin_name = Some(value.to_string()),
            "times" => {
                if value != "A1" {
                    return Err(parse_err(format!("times modifier must be A1, got '{value}'")));
                }
                times_a1 += 1;
            }
            other => return Err(parse_err(format!("unknown key '{other}'"))),
        }
    }

    if global && base.is_some() {
        return Err(Error::InvalidInput(
            "spec cannot set both global and p".into(),
        ));
    }
    if !global && base.is_none() {
        return Err(Error::InvalidInput(
            "spec needs p=<prime> or global".into(),
        ));
    }
    if let Some(p) = base {
        let s = crate::primes::Sieve::new();
        if !s.is_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} is not prime")));
        }
    }

    let mut spec = if let Some(name) = builtin_name {
        if ambient_kind.is_some() || dim.is_some() || !polys.is_empty() {
            return Err(Error::InvalidInput(
                "builtin specs cannot also set ambient/dim/poly".into(),
            ));
        }
        builtin(&name)?
    } else {
        let kind = ambient_kind
            .ok_or_else(|| Error::InvalidInput("spec needs ambient= or builtin=".into()))?;
        let d = dim.ok_or_else(|| Error::InvalidInput("spec needs dim=".into()))?;
        VarietySpec {
            name: "spec".into(),
            ambient: if kind == "affine" {
                Ambient::Affine(d)
            } else {
                Ambient::Projective(d)
            },
            polys,
            base: None,
            times_a1: 0,
        }
    };
    spec.base = base;
    spec.times_a1 += times_a1;
    spec.validate()?;
    Ok(spec)
}

/// Terms of a polynomial reduced into a concrete field: constant index
/// plus the (variable, exponent) pairs of each monomial.
struct FieldPoly {
    terms: Vec<(u32, Vec<(usize, u32)>)>,
}

impl FieldPoly {
    fn reduce(poly: &MultiPoly, field: &ExtField) -> Self {
        let terms = poly
            .terms()
            .iter()
            .filter_map(|(c, exps)| {
                let cf = field.from_int(i64::try_from(c % Int::from(field.p)).unwrap());
                if cf == 0 {
                    return None;
                }
                let vars: Vec<(usize, u32)> = exps
                    .iter()
                    .enumerate()
                    .filter(|&(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e))
                    .collect();
                Some((cf, vars))
            })
            .collect();
        FieldPoly { terms }
    }

    #[inline]
    fn eval(&self, field: &ExtField, coords: &[u32]) -> u32 {
        let mut acc = 0u32;
        for (c, vars) in &self.terms {
            let mut term = *c;
            for &(v, e) in vars {
                term = field.mul(term, field.pow(coords[v], e as u64));
                if term == 0 {
                    break;
                }
            }
            acc = field.add(acc, term);
        }
        acc
    }
}

/// Enumeration charts: fixed coordinate prefix plus free positions.
fn charts(spec: &VarietySpec) -> Vec<(Vec<u32>, usize)> {
    match spec.ambient {
        Ambient::Affine(n) => vec![(vec![], n)],
        Ambient::Projective(n) => (0..=n)
            .map(|j| {
                let mut fixed = vec![0u32; j];
                fixed.push(1);
                (fixed, n - j)
            })
            .collect(),
    }
}

fn chart_tuples(q: u64, free: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..free {
        acc = acc.checked_mul(q)?;
        if acc > ENUM_BUDGET {
            return None;
        }
    }
    Some(acc)
}

/// Exact number of points of the variety over F_{p^m}, by exhaustive
/// chartwise enumeration. `times_a1` factors are enumerated literally.
pub fn count_points(spec: &VarietySpec, m: u32) -> Result<u64> {
    spec.validate()?;
    let p = spec.base_prime()?;
    let field = ExtField::new(p, m)?;
    count_points_in_field(spec, &field)
}

fn count_points_in_field(spec: &VarietySpec, field: &ExtField) -> Result<u64> {
    let q = field.q;
    let extra = spec.times_a1 as usize;
    let mut total_budget: u64 = 0;
    for (_, free) in charts(spec) {
        let t = chart_tuples(q, free + extra).ok_or_else(|| {
            Error::Resource(format!(
                "enumeration budget exceeded: {q}^{} tuples",
                free + extra
            ))
        })?;
        total_budget = total_budget
            .checked_add(t)
            .filter(|&t| t <= ENUM_BUDGET)
            .ok_or_else(|| Error::Resource("enumeration budget exceeded".into()))?;
    }

    let reduced: Vec<FieldPoly> = spec
        .polys
        .iter()
        .map(|p| FieldPoly::reduce(p, field))
        .collect();
    let mut count = 0u64;
    for (fixed, free) in charts(spec) {
        let nv = spec.ambient.num_vars();
        let mut coords = vec![0u32; nv];
        coords[..fixed.len()].copy_from_slice(&fixed);
        let base = fixed.len();
        let mut odometer = vec![0u32; free];
        loop {
            for (i, &v) in odometer.iter().enumerate() {
                coords[base + i] = v;
            }
            if reduced.iter().all(|fp| fp.eval(field, &coords) == 0) {
                count += 1;
            }
            // advance
            let mut i = 0;
            loop {
                if i == free {
                    break;
                }
                odometer[i] += 1;
                if (odometer[i] as u64) < q {
                    break;
                }
                odometer[i] = 0;
                i += 1;
            }
            if i == free {
                break;
            }
        }
    }
    // product with affine lines multiplies the count by q per factor;
    // enumerated literally above via the budget, multiplied here since the
    // extra coordinates are unconstrained
    let mut total = count;
    for _ in 0..extra {
        total = total
            .checked_mul(q)
            .ok_or_else(|| Error::Resource("point count overflow".into()))?;
    }
    Ok(total)
}

/// Closed points of each degree, recovered from the point counts by
/// Möbius inversion of N_m = sum over d | m of d·b_d. Non-integral or
/// negative values mean the counts are wrong and are a hard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPointSpectrum {
    pub q: u64,
    pub counts: Vec<u64>,
    pub b: Vec<u64>,
}

impl ClosedPointSpectrum {
    pub fn from_counts(q: u64, counts: Vec<u64>) -> Result<Self> {
        let sieve = crate::primes::Sieve::new();
        let d_max = counts.len();
        let mut b = Vec::with_capacity(d_max);
        for d in 1..=d_max {
            let mut acc = Int::zero();
            for e in 1..=d {
                if d % e == 0 {
                    let mu = crate::classical::mu(&sieve, e as u64)?;
                    acc += mu * int(counts[d / e - 1] as i64);
                }
            }
            let d_int = int(d as i64);
            if (&acc % &d_int) != Int::zero() || acc.is_negative() {
                return Err(Error::Domain(format!(
                    "invalid point counts: b_{d} = {acc}/{d} is not a nonnegative integer"
                )));
            }
            let bd = acc / d_int;
            b.push(u64::try_from(&bd).map_err(|_| Error::Resource("b_d overflow".into()))?);
        }
        Ok(ClosedPointSpectrum { q, counts, b })
    }

    pub fn degree_bound(&self) -> u32 {
        self.b.len() as u32
    }

    /// N_m reconstructed from the b_d; must reproduce the inputs.
    pub fn reconstruct_count(&self, m: u32) -> u64 {
        let mut acc = 0u64;
        for d in 1..=m {
            if m % d == 0 {
                acc += d as u64 * self.b[d as usize - 1];
            }
        }
        acc
    }

    /// Z(X,t) = prod over d of (1 - t^d)^{-b_d}, truncated at D.
    pub fn zeta_series(&self, bound: u32) -> Result<TruncatedSeries> {
        self.check_degree(bound)?;
        let mut z = TruncatedSeries::one(SeriesKind::Power, bound as usize);
        for d in 1..=bound as usize {
            let bd = self.b[d - 1];
            if bd > 0 {
                z = z.mul(&TruncatedSeries::geometric_pow(d, bd, bound as usize));
            }
        }
        Ok(z)
    }

    fn check_degree(&self, bound: u32) -> Result<()> {
        if bound > self.degree_bound() {
            return Err(Error::InvalidInput(format!(
                "spectrum only valid to degree {}, asked for {bound}",
                self.degree_bound()
            )));
        }
        Ok(())
    }

    /// Series with coefficient f(j) at degree j·step, truncated.
    fn comb_series(&self, step: usize, bound: u32, f: impl Fn(u64) -> Rat) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(SeriesKind::Power, bound as usize);
        let mut j = 0u64;
        loop {
            let deg = j as usize * step;
            if deg > bound as usize {
                break;
            }
            s.set_coeff(deg, f(j));
            j += 1;
        }
        s
    }

    /// Local factor of the generating function of `fn` at one closed point
    /// of degree d, truncated at `bound`.
    fn local_factor(&self, func: CycleFn, d: usize, bound: u32) -> TruncatedSeries {
        let qd = num::pow::pow(int(self.q as i64), d);
        match func {
            // sum over k of t^(kd)
            CycleFn::Zeta => self.comb_series(d, bound, |_| Rat::one()),
            // 1 + sum over k >= 1 of (q^(kd) - q^((k-1)d)) t^(kd)
            CycleFn::Phi => self.comb_series(d, bound, |k| {
                if k == 0 {
                    Rat::one()
                } else {
                    let qk = num::pow::pow(qd.clone(), k as usize - 1);
                    rat_int(&qk * &qd - qk)
                }
            }),
            // sum over k of (1 + q^d + ... + q^(kd)) t^(kd)
            CycleFn::Sigma1 => self.comb_series(d, bound, |k| {
                let mut acc = Int::zero();
                for j in 0..=k {
                    acc += num::pow::pow(qd.clone(), j as usize);
                }
                rat_int(acc)
            }),
            // 1 + sum over k >= 1 of (q^(kd) + q^((k-1)d)) t^(kd)
            CycleFn::Psi => self.comb_series(d, bound, |k| {
                if k == 0 {
                    Rat::one()
                } else {
                    let qk = num::pow::pow(qd.clone(), k as usize - 1);
                    rat_int(&qk * &qd + qk)
                }
            }),
            // sum over k of (-1)^k t^(kd)
            CycleFn::Lambda => self.comb_series(d, bound, |k| {
                if k % 2 == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                }
            }),
        }
    }

    /// Generating function sum over effective 0-cycles of f(alpha) t^deg,
    /// as a product over degrees of local factors raised to b_d.
    pub fn cycle_series(&self, func: CycleFn, bound: u32) -> Result<TruncatedSeries> {
        self.check_degree(bound)?;
        let mut acc = TruncatedSeries::one(SeriesKind::Power, bound as usize);
        for d in 1..=bound as usize {
            let bd = self.b[d - 1];
            if bd > 0 {
                acc = acc.mul(&self.local_factor(func, d, bound).pow(bd));
            }
        }
        Ok(acc)
    }

    /// The free additive monoid on the closed points of degree ≤ bound,
    /// for direct cycle-by-cycle cross-checks.
    pub fn cycle_monoid(&self, bound: u32) -> Result<Monoid> {
        self.check_degree(bound)?;
        let mut m = Monoid::new(GradingMode::Additive);
        for d in 1..=bound as usize {
            for i in 0..self.b[d - 1] {
                m.add_atom(format!("d{d}x{i}"), d as u64)?;
            }
        }
        Ok(m)
    }

    /// f evaluated on a single cycle by the per-point product formula.
    pub fn eval_on_cycle(&self, func: CycleFn, monoid: &Monoid, e: &Element) -> Int {
        let q = int(self.q as i64);
        match func {
            CycleFn::Zeta => Int::one(),
            CycleFn::Lambda => {
                if e.total_multiplicity() % 2 == 0 {
                    Int::one()
                } else {
                    -Int::one()
                }
            }
            CycleFn::Phi | CycleFn::Psi | CycleFn::Sigma1 => e
                .factors()
                .iter()
                .map(|&(id, k)| {
                    let d = monoid.atom(id).unwrap().weight as usize;
                    let qd = num::pow::pow(q.clone(), d);
                    match func {
                        CycleFn::Phi => num::pow::pow(qd.clone(), k as usize - 1) * (qd - 1),
                        CycleFn::Psi => num::pow::pow(qd.clone(), k as usize - 1) * (qd + 1),
                        CycleFn::Sigma1 => {
                            let mut acc = Int::zero();
                            for j in 0..=k {
                                acc += num::pow::pow(qd.clone(), j as usize);
                            }
                            acc
                        }
                        _ => unreachable!(),
                    }
                })
                .product(),
        }
    }
}

/// The arithmetic functions with cycle-level generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleFn {
    Zeta,
    Phi,
    Sigma1,
    Psi,
    Lambda,
}

pub const CYCLE_FNS: [CycleFn; 5] = [
    CycleFn::Zeta,
    CycleFn::Phi,
    CycleFn::Sigma1,
    CycleFn::Psi,
    CycleFn::Lambda,
];

impl CycleFn {
    pub fn name(self) -> &'static str {
        match self {
            CycleFn::Zeta => "zeta",
            CycleFn::Phi => "phi",
            CycleFn::Sigma1 => "sigma1",
            CycleFn::Psi => "psi",
            CycleFn::Lambda => "lambda",
        }
    }
}

impl FromStr for CycleFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CYCLE_FNS
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown cycle function: {s}")))
    }
}

/// Counts N_1..N_D and the spectrum for a local variety.
pub fn spectrum_of(spec: &VarietySpec, degree: u32) -> Result<ClosedPointSpectrum> {
    let p = spec.base_prime()?;
    let counts: Vec<u64> = (1..=degree)
        .map(|m| count_points(spec, m))
        .collect::<Result<_>>()?;
    ClosedPointSpectrum::from_counts(p, counts)
}

/// Largest degree ≤ `degree` for which every count fits the budget.
pub fn feasible_degree(spec: &VarietySpec, degree: u32) -> u32 {
    let Ok(p) = spec.base_prime() else {
        return 0;
    };
    let extra = spec.times_a1 as usize;
    let mut best = 0;
    for m in 1..=degree {
        let q = match p.checked_pow(m) {
            Some(q) => q,
            None => break,
        };
        let ok = charts(spec).iter().try_fold(0u64, |acc, &(_, free)| {
            chart_tuples(q, free + extra)
                .and_then(|t| acc.checked_add(t))
                .filter(|&t| t <= ENUM_BUDGET)
        });
        if ok.is_some() {
            best = m;
        } else {
            break;
        }
    }
    best
}

/// The named series identities of the variety suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarietyIdentity {
    PhiXQuotient,
    SigmaXProduct,
    PsiXFormula,
    LambdaXQuotient,
    ProductA1,
}

pub const VARIETY_IDENTITIES: [VarietyIdentity; 5] = [
    VarietyIdentity::PhiXQuotient,
    VarietyIdentity::SigmaXProduct,
    VarietyIdentity::PsiXFormula,
    VarietyIdentity::LambdaXQuotient,
    VarietyIdentity::ProductA1,
];

impl VarietyIdentity {
    pub fn id(self) -> &'static str {
        match self {
            VarietyIdentity::PhiXQuotient => "PHI_X_QUOTIENT",
            VarietyIdentity::SigmaXProduct => "SIGMA_X_PRODUCT",
            VarietyIdentity::PsiXFormula => "PSI_X_FORMULA",
            VarietyIdentity::LambdaXQuotient => "LAMBDA_X_QUOTIENT",
            VarietyIdentity::ProductA1 => "PRODUCT_A1",
        }
    }
}

impl FromStr for VarietyIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VARIETY_IDENTITIES
            .iter()
            .copied()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variety identity: {s}")))
    }
}

/// Exact coefficient comparison of one series identity up to t^D.
/// Quotient identities are cleared of division by cross-multiplication.
pub fn verify_variety_identity(
    spec: &VarietySpec,
    identity: VarietyIdentity,
    degree: u32,
) -> Result<CheckOutcome> {
    let spectrum = spectrum_of(spec, degree)?;
    verify_identity_with_spectrum(spec, &spectrum, identity, degree)
}

/// Same check against a precomputed spectrum, so a battery of identities
/// pays for the point counts once.
pub fn verify_identity_with_spectrum(
    spec: &VarietySpec,
    spectrum: &ClosedPointSpectrum,
    identity: VarietyIdentity,
    degree: u32,
) -> Result<CheckOutcome> {
    let q = int(spectrum.q as i64);
    let z = spectrum.zeta_series(degree)?;
    let z_qt = z.substitute_scaled_t(&q);
    let z_t2 = z.substitute_t_squared();

    let (lhs, rhs, label) = match identity {
        VarietyIdentity::PhiXQuotient => (
            spectrum.cycle_series(CycleFn::Phi, degree)?.mul(&z),
            z_qt,
            "Phi(t)·Z(t) vs Z(qt)",
        ),
        VarietyIdentity::SigmaXProduct => (
            spectrum.cycle_series(CycleFn::Sigma1, degree)?,
            z.mul(&z_qt),
            "S1(t) vs Z(t)·Z(qt)",
        ),
        VarietyIdentity::PsiXFormula => (
            spectrum.cycle_series(CycleFn::Psi, degree)?.mul(&z_t2),
            z.mul(&z_qt),
            "Psi(t)·Z(t²) vs Z(t)·Z(qt)",
        ),
        VarietyIdentity::LambdaXQuotient => (
            spectrum.cycle_series(CycleFn::Lambda, degree)?.mul(&z),
            z_t2,
            "Lambda(t)·Z(t) vs Z(t²)",
        ),
        VarietyIdentity::ProductA1 => {
            // Z(X×A1, t) from an independent count of the product variety
            let product = spec.times_affine_line();
            let d_feasible = feasible_degree(&product, degree);
            if d_feasible == 0 {
                return Ok(CheckOutcome::Fail {
                    witness: "product variety not countable within budget".into(),
                });
            }
            let prod_spectrum = spectrum_of(&product, d_feasible)?;
            let lhs = prod_spectrum.zeta_series(d_feasible)?;
            let rhs = spectrum
                .zeta_series(d_feasible)?
                .substitute_scaled_t(&q);
            match lhs.first_difference(&rhs) {
                None => {
                    return Ok(CheckOutcome::Pass {
                        checked: d_feasible as usize + 1,
                    })
                }
                Some(d) => {
                    return Ok(CheckOutcome::Fail {
                        witness: format!(
                            "Z(X×A1, t) vs Z(X, qt) first differ at degree {d}: {} vs {}",
                            lhs.coeff(d),
                            rhs.coeff(d)
                        ),
                    })
                }
            }
        }
    };
    match lhs.first_difference(&rhs) {
        None => Ok(CheckOutcome::Pass {
            checked: degree as usize + 1,
        }),
        Some(d) => Ok(CheckOutcome::Fail {
            witness: format!(
                "{label} first differ at degree {d}: {} vs {}",
                lhs.coeff(d),
                rhs.coeff(d)
            ),
        }),
    }
}

/// Closed points of degree d counted independently as Frobenius orbits of
/// exact size d on the F_{q^d}-points.
pub fn frobenius_orbit_count(spec: &VarietySpec, d: u32) -> Result<u64> {
    spec.validate()?;
    if spec.times_a1 > 0 {
        return Err(Error::InvalidInput(
            "orbit counting on product modifiers is not supported".into(),
        ));
    }
    let p = spec.base_prime()?;
    let field = ExtField::new(p, d)?;
    let q = field.q;
    for (_, free) in charts(spec) {
        chart_tuples(q, free).ok_or_else(|| {
            Error::Resource(format!("enumeration budget exceeded: {q}^{free} tuples"))
        })?;
    }
    let reduced: Vec<FieldPoly> = spec
        .polys
        .iter()
        .map(|poly| FieldPoly::reduce(poly, &field))
        .collect();

    let mut points: Vec<Vec<u32>> = Vec::new();
    for (fixed, free) in charts(spec) {
        let nv = spec.ambient.num_vars();
        let mut coords = vec![0u32; nv];
        coords[..fixed.len()].copy_from_slice(&fixed);
        let base = fixed.len();
        let mut odometer = vec![0u32; free];
        loop {
            for (i, &v) in odometer.iter().enumerate() {
                coords[base + i] = v;
            }
            if reduced.iter().all(|fp| fp.eval(&field, &coords) == 0) {
                points.push(coords.clone());
            }
            let mut i = 0;
            loop {
                if i == free {
                    break;
                }
                odometer[i] += 1;
                if (odometer[i] as u64) < q {
                    break;
                }
                odometer[i] = 0;
                i += 1;
            }
            if i == free {
                break;
            }
        }
    }

    // the base-field Frobenius x -> x^p fixes chart-canonical form
    let frob = |pt: &[u32]| -> Vec<u32> { pt.iter().map(|&x| field.pow(x, p)).collect() };
    let index: HashMap<Vec<u32>, usize> = points
        .iter()
        .enumerate()
        .map(|(i, pt)| (pt.clone(), i))
        .collect();
    let mut seen = vec![false; points.len()];
    let mut orbits_of_size_d = 0u64;
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        let mut orbit_len = 0u32;
        let mut cur = points[start].clone();
        loop {
            let i = *index
                .get(&cur)
                .ok_or_else(|| Error::Internal("Frobenius left the point set".into()))?;
            if seen[i] && orbit_len > 0 {
                break;
            }
            seen[i] = true;
            orbit_len += 1;
            cur = frob(&cur);
            if cur == points[start] {
                break;
            }
        }
        if orbit_len == d {
            orbits_of_size_d += 1;
        }
    }
    Ok(orbits_of_size_d)
}

/// The finite ring F_q[t]/(g) for monic g, with exhaustive unit search,
/// gcd-based coprimality counting, and modular exponentiation. Residues
/// are indexed 0..q^deg(g) by their coefficient vectors.
pub struct PolyQuotient<'a> {
    pub field: &'a ExtField,
    /// monic modulus, coefficients ascending, length deg+1
    pub g: Vec<u32>,
    pub size: u64,
}

impl<'a> PolyQuotient<'a> {
    pub fn new(field: &'a ExtField, g: Vec<u32>) -> Result<Self> {
        if g.len() < 2 {
            return Err(Error::InvalidInput("modulus must have degree >= 1".into()));
        }
        if *g.last().unwrap() != 1 {
            return Err(Error::InvalidInput("modulus must be monic".into()));
        }
        let deg = (g.len() - 1) as u32;
        let size = field
            .q
            .checked_pow(deg)
            .filter(|&s| s <= ENUM_BUDGET)
            .ok_or_else(|| Error::Resource("polynomial quotient too large".into()))?;
        Ok(PolyQuotient { field, g, size })
    }

    pub fn deg(&self) -> usize {
        self.g.len() - 1
    }

    pub fn decode(&self, idx: u64) -> Vec<u32> {
        let mut v = idx;
        let mut out = Vec::with_capacity(self.deg());
        for _ in 0..self.deg() {
            out.push((v % self.field.q) as u32);
            v /= self.field.q;
        }
        out
    }

    pub fn encode(&self, coeffs: &[u32]) -> u64 {
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * self.field.q + c as u64;
        }
        v
    }

    pub fn one(&self) -> u64 {
        1
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (pa, pb) = (self.decode(a), self.decode(b));
        let deg = self.deg();
        let mut prod = vec![0u32; 2 * deg.max(1)];
        for (i, &x) in pa.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in pb.iter().enumerate() {
                prod[i + j] = self.field.add(prod[i + j], self.field.mul(x, y));
            }
        }
        // reduce by the monic modulus
        for k in (deg..prod.len()).rev() {
            let lead = prod[k];
            if lead != 0 {
                prod[k] = 0;
                for (i, &gc) in self.g.iter().enumerate().take(deg) {
                    let idx = k - deg + i;
                    prod[idx] = self.field.sub(prod[idx], self.field.mul(lead, gc));
                }
            }
        }
        prod.truncate(deg);
        self.encode(&prod)
    }

    pub fn pow_mod(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
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

    /// Units by exhaustive multiplication search.
    pub fn unit_indices(&self) -> Vec<u64> {
        (0..self.size)
            .filter(|&a| (0..self.size).any(|b| self.mul(a, b) == 1))
            .collect()
    }

    /// Residues coprime to g by polynomial gcd; the second route.
    pub fn coprime_count(&self) -> u64 {
        (0..self.size)
            .filter(|&a| {
                let fa = self.decode(a);
                poly_gcd_field(self.field, &self.g_as_field(), &fa).len() == 1
            })
            .count() as u64
    }

    fn g_as_field(&self) -> Vec<u32> {
        self.g.clone()
    }
}

fn poly_trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_gcd_field(field: &ExtField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        // remainder of a by b
        let lead_inv = field.inv(*b.last().unwrap()).unwrap();
        let mut r = a.clone();
        while r.len() >= b.len() && !r.is_empty() {
            let c = field.mul(*r.last().unwrap(), lead_inv);
            if c != 0 {
                let shift = r.len() - b.len();
                for (i, &bc) in b.iter().enumerate() {
                    r[shift + i] = field.sub(r[shift + i], field.mul(c, bc));
                }
            }
            r.pop();
            r = poly_trim(r);
            if r.len() < b.len() {
                break;
            }
        }
        a = b;
        b = poly_trim(r);
    }
    a
}

/// Monic irreducible factorization by trial division; desk scale only.
fn factor_monic(field: &ExtField, g: &[u32]) -> Vec<(Vec<u32>, u32)> {
    let mut rem = poly_trim(g.to_vec());
    let mut out: Vec<(Vec<u32>, u32)> = Vec::new();
    let mut d = 1usize;
    while rem.len() > 1 && d < rem.len() {
        // enumerate monic candidates of degree d
        let total = field.q.pow(d as u32);
        let mut found = false;
        for v in 0..total {
            let mut cand: Vec<u32> = Vec::with_capacity(d + 1);
            let mut x = v;
            for _ in 0..d {
                cand.push((x % field.q) as u32);
                x /= field.q;
            }
            cand.push(1);
            // divide out as many copies as possible
            let mut mult = 0u32;
            loop {
                match poly_divide_exact(field, &rem, &cand) {
                    Some(q) => {
                        rem = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                out.push((cand, mult));
                found = true;
                if rem.len() <= d {
                    break;
                }
            }
        }
        if !found {
            d += 1;
        } else if rem.len() > 1 && !out.iter().any(|(f, _)| f.len() - 1 == d) {
            d += 1;
        }
    }
    if rem.len() > 1 {
        out.push((rem, 1));
    }
    out.sort();
    out
}

fn poly_divide_exact(field: &ExtField, a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![0u32; a.len() - b.len() + 1];
    let lead_inv = field.inv(*b.last().unwrap()).ok()?;
    for k in (0..q.len()).rev() {
        let c = field.mul(r[k + b.len() - 1], lead_inv);
        q[k] = c;
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = field.sub(r[k + i], field.mul(c, bc));
            }
        }
    }
    if r.iter().all(|&x| x == 0) {
        Some(poly_trim(q))
    } else {
        None
    }
}

/// Euler's theorem in F_q[t]/(g) for every monic g with deg ≤ bound:
/// the unit count, the gcd-coprimality count, and the totient of the
/// divisor of zeros of g must agree, and f^count = 1 for every unit f.
pub fn euler_check_wardlaw(q: u64, degree_bound: u32) -> Result<CheckOutcome> {
    let sieve = crate::primes::Sieve::new();
    if !sieve.is_prime(q) {
        return Err(Error::InvalidInput(
            "the polynomial oracle runs over prime fields".into(),
        ));
    }
    let field = ExtField::new(q, 1)?;
    let mut checked = 0usize;
    for deg in 1..=degree_bound {
        let total = q.pow(deg);
        if total > 4096 {
            return Err(Error::Resource("wardlaw degree bound too large".into()));
        }
        for v in 0..total {
            let mut g: Vec<u32> = Vec::with_capacity(deg as usize + 1);
            let mut x = v;
            for _ in 0..deg {
                g.push((x % q) as u32);
                x /= q;
            }
            g.push(1);
            let ring = PolyQuotient::new(&field, g.clone())?;
            let units = ring.unit_indices();
            let unit_count = units.len() as u64;
            let coprime = ring.coprime_count();
            if unit_count != coprime {
                return Ok(CheckOutcome::Fail {
                    witness: format!(
                        "g with coeffs {g:?} over F_{q}: unit count {unit_count} != \
                         coprime count {coprime}"
                    ),
                });
            }
            // phi_X of the divisor of zeros, from the irreducible factorization
            let factors = factor_monic(&field, &g);
            let mut phi_x = Int::one();
            for (h, k) in &factors {
                let dh = (h.len() - 1) as u32;
                let qd = num::pow::pow(int(q as i64), dh as usize);
                phi_x *= num::pow::pow(qd.clone(), *k as usize - 1) * (qd - Int::one());
            }
            if phi_x != int(unit_count as i64) {
                return Ok(CheckOutcome::Fail {
                    witness: format!(
                        "g with coeffs {g:?} over F_{q}: phi of div0(g) is {phi_x}, \
                         unit count is {unit_count}"
                    ),
                });
            }
            for &f in &units {
                checked += 1;
                if ring.pow_mod(f, unit_count) != ring.one() {
                    return Ok(CheckOutcome::Fail {
                        witness: format!(
                            "unit {f} of F_{q}[t]/(g), g coeffs {g:?}, fails f^{unit_count} = 1"
                        ),
                    });
                }
            }
        }
    }
    Ok(CheckOutcome::Pass { checked })
}
