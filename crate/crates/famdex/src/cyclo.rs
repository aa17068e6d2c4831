//! Exact arithmetic in the cyclotomic field generated by a primitive 60th
//! root of unity.
//!
//! Every character value that occurs in this crate lives in Q(z) where z is a
//! fixed primitive 60th root of unity (element orders in the groups handled
//! here all divide 60). Elements are stored as polynomials in z of degree
//! < 16 with rational coefficients, reduced modulo the 60th cyclotomic
//! polynomial x^16 + x^14 - x^10 - x^8 - x^6 + x^2 + 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::OnceLock;

/// Degree of Q(zeta_60) over Q.
pub const DEGREE: usize = 16;
/// Order of the root of unity generating the field.
pub const ROOT_ORDER: usize = 60;

/// Coefficients of the 60th cyclotomic polynomial, constant term first.
const MIN_POLY: [i64; 17] = [1, 0, 1, 0, 0, 0, -1, 0, -1, 0, -1, 0, 0, 0, 1, 0, 1];

/// z^k expressed in the power basis 1, z, ..., z^15, for k in 0..60.
fn power_table() -> &'static Vec<[i64; DEGREE]> {
    static TABLE: OnceLock<Vec<[i64; DEGREE]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: Vec<[i64; DEGREE]> = Vec::with_capacity(ROOT_ORDER);
        let mut cur = [0i64; DEGREE];
        cur[0] = 1;
        table.push(cur);
        for _ in 1..ROOT_ORDER {
            // multiply by x, then reduce the overflow term via the minimal polynomial
            let prev = *table.last().unwrap();
            let mut next = [0i64; DEGREE];
            for i in 0..DEGREE - 1 {
                next[i + 1] = prev[i];
            }
            let top = prev[DEGREE - 1];
            if top != 0 {
                for i in 0..DEGREE {
                    next[i] -= top * MIN_POLY[i];
                }
            }
            table.push(next);
        }
        table
    })
}

/// An element of Q(zeta_60), stored in reduced power-basis form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cyc {
    coeffs: Vec<BigRational>,
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc {
            coeffs: vec![BigRational::zero(); DEGREE],
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        let mut c = Self::zero();
        c.coeffs[0] = BigRational::from_integer(BigInt::from(n));
        c
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut c = Self::zero();
        c.coeffs[0] = r;
        c
    }

    /// zeta_60^k.
    pub fn root60(k: usize) -> Self {
        let row = &power_table()[k % ROOT_ORDER];
        let mut c = Self::zero();
        for i in 0..DEGREE {
            if row[i] != 0 {
                c.coeffs[i] = BigRational::from_integer(BigInt::from(row[i]));
            }
        }
        c
    }

    /// zeta_n^k for n dividing 60.
    pub fn root_of_unity(n: usize, k: usize) -> Self {
        assert!(n > 0 && ROOT_ORDER % n == 0, "order {n} does not divide 60");
        Self::root60((ROOT_ORDER / n) * (k % n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational part if the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The element equals this integer.
    pub fn is_integer_value(&self, n: i64) -> bool {
        self.as_rational()
            .map(|r| r == BigRational::from_integer(BigInt::from(n)))
            .unwrap_or(false)
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyc { coeffs }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cyc { coeffs }
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        // naive convolution up to degree 30, folded down with the power table
        let mut conv = vec![BigRational::zero(); 2 * DEGREE - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let table = power_table();
        let mut out = vec![BigRational::zero(); DEGREE];
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < DEGREE {
                out[k] += c;
            } else {
                let row = &table[k];
                for i in 0..DEGREE {
                    if row[i] != 0 {
                        out[i] += &c * BigRational::from_integer(BigInt::from(row[i]));
                    }
                }
            }
        }
        Cyc { coeffs: out }
    }

    pub fn scale(&self, r: &BigRational) -> Cyc {
        Cyc {
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Complex conjugation, i.e. z -> z^-1.
    pub fn conj(&self) -> Cyc {
        let mut out = Cyc::zero();
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let pow = Cyc::root60((ROOT_ORDER - k) % ROOT_ORDER);
            out = out.add(&pow.scale(a));
        }
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against the minimal polynomial. Panics on zero.
    pub fn inverse(&self) -> Cyc {
        assert!(!self.is_zero(), "inverse of zero");
        // polynomials as coefficient vectors, constant first
        let mut a: Vec<BigRational> = MIN_POLY
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let mut b: Vec<BigRational> = self.coeffs.clone();
        trim(&mut a);
        trim(&mut b);
        // s_a, s_b track Bezout coefficients of b only: gcd = s * elem (mod minpoly)
        let mut s_a: Vec<BigRational> = vec![];
        let mut s_b: Vec<BigRational> = vec![BigRational::one()];
        while !b.is_empty() {
            let (q, r) = poly_divmod(&a, &b);
            let s_r = poly_sub(&s_a, &poly_mul(&q, &s_b));
            a = b;
            s_a = s_b;
            b = r;
            s_b = s_r;
        }
        // a is now a nonzero constant gcd
        assert_eq!(a.len(), 1, "minimal polynomial must be coprime to element");
        let inv_gcd = a[0].recip();
        let mut result = Cyc::zero();
        let table = power_table();
        for (k, c) in s_a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c * &inv_gcd;
            let row = &table[k % ROOT_ORDER];
            // s_a has degree < 16 after reduction; guard anyway
            if k < DEGREE {
                result.coeffs[k] += scaled;
            } else {
                for i in 0..DEGREE {
                    if row[i] != 0 {
                        result.coeffs[i] += &scaled * BigRational::from_integer(BigInt::from(row[i]));
                    }
                }
            }
        }
        result
    }

    /// Image under the ring map sending the root to `theta` in F_p.
    /// `theta` must have multiplicative order 60 and all coefficient
    /// denominators must be invertible mod p.
    pub fn eval_mod(&self, theta: u64, p: u64) -> u64 {
        let mut acc: u64 = 0;
        let mut pow: u64 = 1;
        for c in &self.coeffs {
            let num = mod_bigint(c.numer(), p);
            let den = mod_bigint(c.denom(), p);
            assert!(den != 0, "denominator not invertible mod {p}");
            let v = mulmod(num, inv_mod(den, p), p);
            acc = (acc + mulmod(v, pow, p)) % p;
            pow = mulmod(pow, theta, p);
        }
        acc
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() / lead;
        quot[shift] = factor.clone();
        for (i, c) in b.iter().enumerate() {
            let t = &factor * c;
            rem[shift + i] -= t;
        }
        // the leading term cancels exactly, so this strictly shrinks rem
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn mod_bigint(n: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let m = n % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().unwrap()
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// An element of exact multiplicative order `e` in F_p; requires e | p-1.
pub fn element_of_order(e: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % e, 0);
    if e == 1 {
        return 1;
    }
    'outer: for g in 2..p {
        let t = pow_mod(g, (p - 1) / e, p);
        if t == 1 {
            continue;
        }
        for d in 1..e {
            if e % d == 0 && pow_mod(t, d, p) == 1 {
                continue 'outer;
            }
        }
        return t;
    }
    panic!("no element of order {e} mod {p}");
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z^{k}")?;
            } else {
                write!(f, "{c}*z^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_has_order_sixty() {
        let z = Cyc::root60(1);
        let mut acc = Cyc::one();
        for k in 1..=60 {
            acc = acc.mul(&z);
            if k < 60 {
                assert!(!acc.is_one(), "z^{k} must not be 1");
            }
        }
        assert!(acc.is_one());
    }

    #[test]
    fn minimal_polynomial_vanishes() {
        let z = Cyc::root60(1);
        let mut acc = Cyc::zero();
        let mut pow = Cyc::one();
        for &c in MIN_POLY.iter() {
            acc = acc.add(&pow.scale(&BigRational::from_integer(BigInt::from(c))));
            pow = pow.mul(&z);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let samples = [
            Cyc::root60(7),
            Cyc::root60(1).add(&Cyc::from_integer(2)),
            Cyc::root_of_unity(5, 2).sub(&Cyc::root_of_unity(3, 1)),
            Cyc::from_rational(BigRational::new(BigInt::from(3), BigInt::from(7))),
        ];
        for s in samples {
            let inv = s.inverse();
            assert!(s.mul(&inv).is_one(), "inverse failed for {s}");
        }
    }

    #[test]
    fn conjugation_is_involutive_and_multiplicative() {
        let a = Cyc::root60(11).add(&Cyc::from_integer(3));
        let b = Cyc::root_of_unity(4, 1);
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        // |i|^2 = 1
        assert!(b.mul(&b.conj()).is_one());
    }

    #[test]
    fn fifth_roots_sum_to_minus_one() {
        let mut acc = Cyc::zero();
        for k in 1..5 {
            acc = acc.add(&Cyc::root_of_unity(5, k));
        }
        assert!(acc.is_integer_value(-1));
    }

    #[test]
    fn eval_mod_is_ring_hom() {
        // p = 61, theta of order 60 mod 61 (2 is a primitive root mod 61)
        let p = 61u64;
        let theta = 2u64;
        assert_eq!(pow_mod(theta, 60, p), 1);
        for d in [2u64, 3, 4, 5, 6, 10, 12, 15, 20, 30] {
            assert_ne!(pow_mod(theta, 60 / d, p), 1, "theta order must be exactly 60");
        }
        let a = Cyc::root60(13).add(&Cyc::from_integer(5));
        let b = Cyc::root60(29).sub(&Cyc::from_integer(1));
        let lhs = a.mul(&b).eval_mod(theta, p);
        let rhs = mulmod(a.eval_mod(theta, p), b.eval_mod(theta, p), p);
        assert_eq!(lhs, rhs);
    }
}
