//! Exact arithmetic in the cyclotomic field Q(zeta_p).
//!
//! A value is `sum_{i < p-1} c_i zeta^i` with rational `c_i`; the relation
//! `1 + zeta + ... + zeta^{p-1} = 0` removes the `zeta^{p-1}` coordinate, so the
//! coefficient vector is canonical and equality is coordinatewise.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNumber {
    p: u32,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    pub fn zero(p: u32) -> Self {
        CycNumber { p, coeffs: vec![BigRational::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, v: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(p: u32, v: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = v;
        z
    }

    /// zeta_p^k.
    pub fn zeta_pow(p: u32, k: u64) -> Self {
        let mut counts = vec![0i64; p as usize];
        counts[(k % p as u64) as usize] = 1;
        Self::from_exponent_counts(p, &counts)
    }

    /// `sum_r counts[r] zeta^r` for `r in 0..p`.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts[(p - 1) as usize];
        let coeffs = (0..(p - 1) as usize).map(|i| BigRational::from_integer(BigInt::from(counts[i] - top))).collect();
        CycNumber { p, coeffs }
    }

    /// Builds from explicit canonical coordinates.
    pub fn from_coeffs(p: u32, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), (p - 1) as usize);
        CycNumber { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when this number lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| &self.coeffs[0])
    }

    /// Whether all canonical coordinates are integers, i.e. the value is in Z[zeta_p].
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed cyclotomic fields");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycNumber { p: self.p, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycNumber { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycNumber { p: self.p, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed cyclotomic fields");
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        Self::reduce(self.p, full)
    }

    /// Complex conjugation, zeta -> zeta^{p-1}.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(p - i) % p] += c;
        }
        Self::reduce(self.p, full)
    }

    /// Applies the Galois automorphism zeta -> zeta^k (k coprime to p).
    pub fn galois(&self, k: u32) -> Self {
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(i * k as usize) % p] += c;
        }
        Self::reduce(self.p, full)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.p), |acc, _| acc.mul(self))
    }

    fn reduce(p: u32, mut full: Vec<BigRational>) -> Self {
        let top = full.pop().expect("p >= 2");
        let coeffs = full.into_iter().map(|c| c - &top).collect();
        CycNumber { p, coeffs }
    }

    /// Serialized coordinates, one "num/den" string per coefficient.
    pub fn serialize_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "z".to_string(),
                (1, false) => format!("{mag}*z"),
                (_, true) => format!("z^{i}"),
                (_, false) => format!("{mag}*z^{i}"),
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (sign, body)) in terms.iter().enumerate() {
            match (k, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.serialize_coeffs().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn minimal_polynomial_relation() {
        let s = (0..3).fold(CycNumber::zero(3), |acc, k| acc.add(&CycNumber::zeta_pow(3, k)));
        assert!(s.is_zero());
        let z2 = CycNumber::zeta_pow(2, 1);
        assert!(z2.mul(&z2).is_one());
        let z5 = CycNumber::zeta_pow(5, 1);
        assert!(z5.conj().mul(&z5).is_one());
    }

    #[test]
    fn display_and_serialize() {
        let x = CycNumber::from_coeffs(3, vec![rat(1, 2), rat(-2, 1)]);
        assert_eq!(x.to_string(), "1/2 - 2*z");
        assert_eq!(x.serialize_coeffs(), vec!["1/2".to_string(), "-2/1".to_string()]);
        assert_eq!(CycNumber::zero(5).to_string(), "0");
    }

    #[test]
    fn galois_and_conj_agree() {
        let x = CycNumber::from_coeffs(5, vec![rat(1, 1), rat(2, 3), rat(0, 1), rat(-1, 1)]);
        assert_eq!(x.conj(), x.galois(4));
        assert_eq!(x.conj().conj(), x);
    }
}
