//! Truncated series with exact rational coefficients.
//!
//! One type covers both gradings that occur here: `Dirichlet` series are
//! indexed by n ≥ 1 and multiply by Dirichlet convolution, `Power` series
//! are indexed by degree d ≥ 0 and multiply by the Cauchy product. All
//! arithmetic is exact and closed under the stored truncation order.

use crate::{rat_int, Error, Int, Rat, Result};
use num::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesKind {
    /// Coefficients a_1..a_N of sum a_n n^{-s}.
    Dirichlet,
    /// Coefficients c_0..c_D of sum c_d t^d.
    Power,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    kind: SeriesKind,
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    /// Series that is identically zero up to the bound.
    pub fn zero(kind: SeriesKind, bound: usize) -> Self {
        let len = match kind {
            SeriesKind::Dirichlet => bound,
            SeriesKind::Power => bound + 1,
        };
        TruncatedSeries {
            kind,
            coeffs: vec![Rat::zero(); len],
        }
    }

    /// The multiplicative unit: 1 at index 1 (Dirichlet) or degree 0 (power).
    pub fn one(kind: SeriesKind, bound: usize) -> Self {
        let mut s = Self::zero(kind, bound);
        if !s.coeffs.is_empty() {
            s.coeffs[0] = Rat::one();
        }
        s
    }

    pub fn from_coeffs(kind: SeriesKind, coeffs: Vec<Rat>) -> Self {
        TruncatedSeries { kind, coeffs }
    }

    pub fn from_ints(kind: SeriesKind, coeffs: Vec<Int>) -> Self {
        TruncatedSeries {
            kind,
            coeffs: coeffs.into_iter().map(rat_int).collect(),
        }
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    /// Truncation bound: largest valid index (Dirichlet) or degree (power).
    pub fn bound(&self) -> usize {
        match self.kind {
            SeriesKind::Dirichlet => self.coeffs.len(),
            SeriesKind::Power => self.coeffs.len().saturating_sub(1),
        }
    }

    /// Coefficient at index n (Dirichlet, n ≥ 1) or degree d (power).
    pub fn coeff(&self, idx: usize) -> Rat {
        let slot = match self.kind {
            SeriesKind::Dirichlet => {
                assert!(idx >= 1, "Dirichlet coefficients are indexed from 1");
                idx - 1
            }
            SeriesKind::Power => idx,
        };
        self.coeffs.get(slot).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set_coeff(&mut self, idx: usize, value: Rat) {
        let slot = match self.kind {
            SeriesKind::Dirichlet => idx - 1,
            SeriesKind::Power => idx,
        };
        self.coeffs[slot] = value;
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Integer coefficient vector; errors if any coefficient is non-integral.
    pub fn integer_coeffs(&self) -> Result<Vec<Int>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Internal(format!(
                        "non-integral series coefficient {c}"
                    )))
                }
            })
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> (SeriesKind, usize) {
        assert_eq!(self.kind, other.kind, "mixed series kinds");
        (self.kind, self.coeffs.len().min(other.coeffs.len()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (kind, len) = self.check_compatible(other);
        let coeffs = (0..len)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        TruncatedSeries { kind, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (kind, len) = self.check_compatible(other);
        let coeffs = (0..len)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        TruncatedSeries { kind, coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncatedSeries {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Series product: Dirichlet convolution or Cauchy product by kind.
    pub fn mul(&self, other: &Self) -> Self {
        let (kind, len) = self.check_compatible(other);
        let mut coeffs = vec![Rat::zero(); len];
        match kind {
            SeriesKind::Dirichlet => {
                // c_n = sum over ij = n of a_i b_j
                for i in 1..=len {
                    if self.coeffs[i - 1].is_zero() {
                        continue;
                    }
                    for j in 1..=len / i {
                        let term = &self.coeffs[i - 1] * &other.coeffs[j - 1];
                        coeffs[i * j - 1] += term;
                    }
                }
            }
            SeriesKind::Power => {
                for i in 0..len {
                    if self.coeffs[i].is_zero() {
                        continue;
                    }
                    for j in 0..len - i {
                        let term = &self.coeffs[i] * &other.coeffs[j];
                        coeffs[i + j] += term;
                    }
                }
            }
        }
        TruncatedSeries { kind, coeffs }
    }

    /// Exact quotient q with q·other = self up to the bound. Requires the
    /// leading coefficient of the divisor (a_1 or c_0) to be nonzero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let (kind, len) = self.check_compatible(other);
        if len == 0 {
            return Ok(TruncatedSeries {
                kind,
                coeffs: vec![],
            });
        }
        let lead = &other.coeffs[0];
        if lead.is_zero() {
            return Err(Error::Domain(
                "series division requires an invertible leading coefficient".into(),
            ));
        }
        let mut coeffs = vec![Rat::zero(); len];
        match kind {
            SeriesKind::Dirichlet => {
                for n in 1..=len {
                    let mut acc = self.coeffs[n - 1].clone();
                    for d in 2..=n {
                        if n % d == 0 && !other.coeffs[d - 1].is_zero() {
                            acc -= &other.coeffs[d - 1] * &coeffs[n / d - 1];
                        }
                    }
                    coeffs[n - 1] = acc / lead;
                }
            }
            SeriesKind::Power => {
                for n in 0..len {
                    let mut acc = self.coeffs[n].clone();
                    for j in 1..=n {
                        if !other.coeffs[j].is_zero() {
                            acc -= &other.coeffs[j] * &coeffs[n - j];
                        }
                    }
                    coeffs[n] = acc / lead;
                }
            }
        }
        Ok(TruncatedSeries { kind, coeffs })
    }

    /// Power series substitution t -> c·t, i.e. c_d -> c^d · c_d.
    pub fn substitute_scaled_t(&self, c: &Int) -> Self {
        assert_eq!(self.kind, SeriesKind::Power);
        let mut pow = Int::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let r = a * rat_int(pow.clone());
                pow = &pow * c;
                r
            })
            .collect();
        TruncatedSeries {
            kind: SeriesKind::Power,
            coeffs,
        }
    }

    /// Power series substitution t -> t², truncated at the original bound.
    pub fn substitute_t_squared(&self) -> Self {
        assert_eq!(self.kind, SeriesKind::Power);
        let mut coeffs = vec![Rat::zero(); self.coeffs.len()];
        for (d, a) in self.coeffs.iter().enumerate() {
            if 2 * d < coeffs.len() {
                coeffs[2 * d] = a.clone();
            }
        }
        TruncatedSeries {
            kind: SeriesKind::Power,
            coeffs,
        }
    }

    /// Dirichlet shift s -> s-1: coefficient a_n becomes n·a_n.
    pub fn dirichlet_shift_s_minus_one(&self) -> Self {
        assert_eq!(self.kind, SeriesKind::Dirichlet);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * rat_int(Int::from(i as u64 + 1)))
            .collect();
        TruncatedSeries {
            kind: SeriesKind::Dirichlet,
            coeffs,
        }
    }

    /// Dirichlet reindex s -> 2s: the result is supported on squares, with
    /// coefficient a_m at n = m².
    pub fn dirichlet_double_s(&self) -> Self {
        assert_eq!(self.kind, SeriesKind::Dirichlet);
        let mut coeffs = vec![Rat::zero(); self.coeffs.len()];
        for m in 1..=self.coeffs.len() {
            if let Some(slot) = m.checked_mul(m) {
                if slot <= coeffs.len() {
                    coeffs[slot - 1] = self.coeffs[m - 1].clone();
                }
            }
        }
        TruncatedSeries {
            kind: SeriesKind::Dirichlet,
            coeffs,
        }
    }

    /// (1 - t^step)^{-count} for count ≥ 0, truncated; the geometric building
    /// block of zeta series. Coefficient of t^{j·step} is C(count+j-1, j).
    pub fn geometric_pow(step: usize, count: u64, bound: usize) -> Self {
        assert!(step >= 1);
        let mut s = Self::zero(SeriesKind::Power, bound);
        s.coeffs[0] = Rat::one();
        let mut binom = Int::one();
        let mut j: u64 = 0;
        loop {
            j += 1;
            let d = (j as usize).checked_mul(step);
            match d {
                Some(d) if d <= bound => {
                    // C(count+j-1, j) = C(count+j-2, j-1) * (count+j-1) / j
                    binom = binom * Int::from(count + j - 1) / Int::from(j);
                    s.coeffs[d] = rat_int(binom.clone());
                }
                _ => break,
            }
            if count == 0 {
                break;
            }
        }
        if count == 0 {
            s = Self::one(SeriesKind::Power, bound);
        }
        s
    }

    /// Self raised to a nonnegative power, truncated (binary exponentiation).
    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(self.kind, self.bound());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// First index/degree where the two series differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let (kind, len) = self.check_compatible(other);
        (0..len).find_map(|i| {
            if self.coeffs[i] != other.coeffs[i] {
                Some(match kind {
                    SeriesKind::Dirichlet => i + 1,
                    SeriesKind::Power => i,
                })
            } else {
                None
            }
        })
    }

    /// Render integer coefficients as a space-separated row (exact decimals).
    pub fn display_row(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_string()
                } else {
                    c.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}
