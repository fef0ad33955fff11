//! Finite field towers F_{p^m} with a deterministically chosen modulus.
//!
//! Elements are indices 0..q encoding coefficient vectors base p; the
//! modulus is the first monic irreducible polynomial of degree m in
//! ascending coefficient-value order, so runs are reproducible bit for
//! bit. Multiplication goes through discrete-log tables over a generator,
//! which keeps point counting loops at O(1) per operation.

use crate::{Error, Result};

const FIELD_SIZE_CAP: u64 = 1 << 20;

/// Dense polynomial over F_p, coefficients ascending, no trailing zeros.
fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of a by monic modulus m over F_p.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + (p - lead) * c % p) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        // make b monic for the remainder step
        let lead = *b.last().unwrap();
        let inv = crate::primes::modpow(lead, p - 2, p);
        let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        let r = poly_rem(&a, &monic, p);
        a = b;
        b = r;
    }
    a
}

/// x^(p^reps) mod modulus, by repeated Frobenius powering.
fn x_power_frobenius(modulus: &[u64], p: u64, reps: u32) -> Vec<u64> {
    let mut t = vec![0, 1]; // x
    for _ in 0..reps {
        // t = t^p mod modulus, square-and-multiply on the exponent p
        let mut acc = vec![1];
        let mut base = t.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_rem(&poly_mul(&acc, &base, p), modulus, p);
            }
            base = poly_rem(&poly_mul(&base, &base, p), modulus, p);
            e >>= 1;
        }
        t = acc;
    }
    t
}

/// Irreducibility of a monic degree-m polynomial over F_p:
/// x^(p^m) = x mod f, and gcd(x^(p^(m/l)) - x, f) = 1 for prime l | m.
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let m = (modulus.len() - 1) as u32;
    if m == 0 {
        return false;
    }
    let xq = x_power_frobenius(modulus, p, m);
    let x = poly_rem(&[0, 1], modulus, p);
    let diff = poly_sub(&xq, &x, p);
    if !diff.is_empty() {
        return false;
    }
    let mut l = 2;
    let mut rem = m;
    let mut prime_divisors = Vec::new();
    while l * l <= rem {
        if rem % l == 0 {
            prime_divisors.push(l);
            while rem % l == 0 {
                rem /= l;
            }
        }
        l += 1;
    }
    if rem > 1 {
        prime_divisors.push(rem);
    }
    for l in prime_divisors {
        let xk = x_power_frobenius(modulus, p, m / l);
        let diff = poly_sub(&xk, &x, p);
        let g = poly_gcd(modulus, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

/// F_{p^m} with table-backed arithmetic. Element 0 is zero; nonzero
/// elements are powers of a fixed generator.
pub struct ExtField {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    /// Monic modulus, coefficients c_0..c_m with c_m = 1.
    pub modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl ExtField {
    /// Deterministic field: the modulus is the first irreducible monic
    /// polynomial in ascending order of its coefficient value sum c_i p^i.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if m == 0 || m > 16 {
            return Err(Error::Resource(format!("extension degree {m} out of range")));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= FIELD_SIZE_CAP)
            .ok_or_else(|| Error::Resource(format!("field size {p}^{m} above cap")))?;
        let mut modulus = None;
        for value in 0..q {
            let mut coeffs: Vec<u64> = Vec::with_capacity(m as usize + 1);
            let mut v = value;
            for _ in 0..m {
                coeffs.push(v % p);
                v /= p;
            }
            coeffs.push(1);
            if is_irreducible(&coeffs, p) {
                modulus = Some(coeffs);
                break;
            }
        }
        let modulus = modulus
            .ok_or_else(|| Error::Internal(format!("no irreducible of degree {m} over F_{p}")))?;
        let mut field = ExtField {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables()?;
        Ok(field)
    }

    fn encode(&self, coeffs: &[u64]) -> u32 {
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c % self.p;
        }
        v as u32
    }

    fn decode(&self, idx: u32) -> Vec<u64> {
        let mut v = idx as u64;
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mul(&self.decode(a), &self.decode(b), self.p);
        let red = poly_rem(&prod, &self.modulus, self.p);
        self.encode(&red)
    }

    fn build_tables(&mut self) -> Result<()> {
        let order = self.q - 1;
        let mut order_factors = Vec::new();
        let mut rem = order;
        let mut l = 2;
        while l * l <= rem {
            if rem % l == 0 {
                order_factors.push(l);
                while rem % l == 0 {
                    rem /= l;
                }
            }
            l += 1;
        }
        if rem > 1 {
            order_factors.push(rem);
        }
        let slow_pow = |base: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            let mut b = base;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.slow_mul(acc, b);
                }
                b = self.slow_mul(b, b);
                e >>= 1;
            }
            acc
        };
        let mut generator = 1u32;
        'candidates: for g in 1..self.q as u32 {
            for &l in &order_factors {
                if slow_pow(g, order / l) == 1 {
                    continue 'candidates;
                }
            }
            generator = g;
            break;
        }
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp.push(cur);
            log[cur as usize] = i as u32;
            cur = self.slow_mul(cur, generator);
        }
        if cur != 1 {
            return Err(Error::Internal("generator order mismatch".into()));
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut va, mut vb) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += (va % self.p + vb % self.p) % self.p * place;
            va /= self.p;
            vb /= self.p;
            place *= self.p;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut v = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += (self.p - v % self.p) % self.p * place;
            v /= self.p;
            place *= self.p;
        }
        out as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let idx = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order;
        self.exp[idx as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let order = self.q - 1;
        let idx = (order - self.log[a as usize] as u64) % order;
        Ok(self.exp[idx as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = self.q - 1;
        let idx = (self.log[a as usize] as u64 % order) * (e % order) % order;
        self.exp[idx as usize]
    }

    /// The q -> q^p Frobenius on this field: x -> x^p.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p)
    }

    /// Reduce an integer to its image in the prime subfield.
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    /// Characteristic vector of the subfield of order p^d: the elements
    /// fixed by the d-fold Frobenius.
    pub fn subfield_of_degree(&self, d: u32) -> Result<Vec<bool>> {
        if self.m % d != 0 {
            return Err(Error::InvalidInput(format!(
                "no subfield of degree {d} in F_{{p^{}}}",
                self.m
            )));
        }
        Ok(self
            .elements()
            .map(|x| {
                let mut y = x;
                for _ in 0..d {
                    y = self.frobenius(y);
                }
                y == x
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_moduli() {
        // (2,1): prime field, modulus x
        let f21 = ExtField::new(2, 1).unwrap();
        assert_eq!(f21.modulus, vec![0, 1]);
        assert_eq!(f21.q, 2);
        // (2,2): the unique irreducible quadratic x^2+x+1
        let f4 = ExtField::new(2, 2).unwrap();
        assert_eq!(f4.modulus, vec![1, 1, 1]);
        // (3,2): x^2+1, since -1 is a nonresidue mod 3
        let f9 = ExtField::new(3, 2).unwrap();
        assert_eq!(f9.modulus, vec![1, 0, 1]);
        // (2,3): x^3+x+1 comes before x^3+x^2+1 in coefficient-value order
        let f8 = ExtField::new(2, 3).unwrap();
        assert_eq!(f8.modulus, vec![1, 1, 0, 1]);
        assert!(ExtField::new(2, 0).is_err());
        assert!(ExtField::new(2, 17).is_err());
    }

    #[test]
    fn field_axioms_sampled() {
        for (p, m) in [(2u64, 4u32), (3, 3), (5, 2), (7, 1)] {
            let f = ExtField::new(p, m).unwrap();
            assert_eq!(f.q, p.pow(m));
            let pick = |t: u32| (t.wrapping_mul(2654435761)) % f.q as u32;
            for t in 0..400u32 {
                let (a, b, c) = (pick(t), pick(t + 3), pick(t + 11));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(
                    f.mul(a, f.add(b, c)),
                    f.add(f.mul(a, b), f.mul(a, c)),
                    "p={p} m={m} a={a} b={b} c={c}"
                );
            }
            // nonzero elements form a group of order q-1
            for a in 1..f.q as u32 {
                assert_eq!(f.pow(a, f.q - 1), 1);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn frobenius_and_subfields() {
        let f16 = ExtField::new(2, 4).unwrap();
        // Frobenius fixes exactly the prime subfield
        let fixed: Vec<u32> = f16
            .elements()
            .filter(|&x| f16.frobenius(x) == x)
            .collect();
        assert_eq!(fixed, vec![0, 1]);
        // the degree-2 subfield has 4 elements and is multiplicatively closed
        let sub = f16.subfield_of_degree(2).unwrap();
        let members: Vec<u32> = f16.elements().filter(|&x| sub[x as usize]).collect();
        assert_eq!(members.len(), 4);
        for &a in &members {
            for &b in &members {
                assert!(sub[f16.mul(a, b) as usize]);
                assert!(sub[f16.add(a, b) as usize]);
            }
        }
        assert!(f16.subfield_of_degree(3).is_err());
    }

    #[test]
    fn irreducibility_test_rejects_composites() {
        // x^2 over F_2, x^2 + 2x + 1 = (x+1)^2 over F_3
        assert!(!is_irreducible(&[0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 2, 1], 3));
        assert!(is_irreducible(&[1, 1, 1], 2));
    }
}
