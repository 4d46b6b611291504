//! Exact arithmetic in F_q (q = p^e, e <= 4) and the additive character theta.
//!
//! Elements are stored as their serialized integer `sum digits[i] * p^i`, where
//! `digits` are the coefficients of the residue polynomial modulo a fixed monic
//! irreducible polynomial.

use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 4;

/// Largest supported field order (keeps the lookup tables small).
pub const MAX_ORDER: u64 = 1 << 16;

/// Smallest monic irreducible moduli, ascending coefficients without the leading 1.
/// Ordered by the base-p integer of the lower coefficients.
const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 1, &[0]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 1, &[0]),
    (3, 2, &[1, 0]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 1, 0, 0]),
    (5, 1, &[0]),
    (5, 2, &[2, 0]),
    (5, 3, &[1, 1, 0]),
    (5, 4, &[2, 0, 0, 0]),
    (7, 1, &[0]),
    (7, 2, &[1, 0]),
    (7, 3, &[2, 0, 0]),
    (7, 4, &[1, 1, 0, 0]),
];

/// Parameters of F_q: characteristic, degree and modulus polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldParams {
    pub p: u32,
    pub e: u32,
    /// `e + 1` ascending coefficients of the monic modulus.
    pub modulus_poly: Vec<u32>,
}

impl FieldParams {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if e == 0 || e > MAX_DEGREE {
            return Err(Error::Field(format!("extension degree {e} outside 1..={MAX_DEGREE}")));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_ORDER {
            return Err(Error::Field(format!("field order {p}^{e} exceeds {MAX_ORDER}")));
        }
        let lower = match MODULUS_TABLE.iter().find(|(tp, te, _)| *tp == p && *te == e) {
            Some((_, _, c)) => c.to_vec(),
            None => smallest_irreducible(p, e),
        };
        let mut modulus_poly = lower;
        modulus_poly.push(1);
        let params = FieldParams { p, e, modulus_poly };
        if !is_irreducible(&params.modulus_poly, p) {
            return Err(Error::Field(format!("modulus {:?} is reducible over F_{p}", params.modulus_poly)));
        }
        Ok(params)
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn eval_mod(c: &[u32], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &ci| (acc * x + ci as u64) % p)
}

/// Whether monic `b` divides `a` over F_p (ascending coefficients).
fn divides(a: &[u32], b: &[u32], p: u32) -> bool {
    let p = p as u64;
    let mut a: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    while a.len() >= b.len() {
        let lead = a[a.len() - 1] % p;
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p * p - lead * bi as u64 % p) % p;
        }
        a.pop();
    }
    a.iter().all(|&x| x % p == 0)
}

/// Trial root/factor search; complete for degree <= 4.
fn is_irreducible(c: &[u32], p: u32) -> bool {
    let e = c.len() - 1;
    if e <= 1 {
        return e == 1;
    }
    if (0..p as u64).any(|x| eval_mod(c, x, p as u64) == 0) {
        return false;
    }
    if e >= 4 {
        for a0 in 0..p {
            for a1 in 0..p {
                if divides(c, &[a0, a1, 1], p) {
                    return false;
                }
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let q = p.pow(e);
    for v in 0..q {
        let mut c: Vec<u32> = (0..e).map(|i| (v / p.pow(i)) % p).collect();
        c.push(1);
        if is_irreducible(&c, p) {
            c.pop();
            return c;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// An element of F_q, stored as its serialized integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldScalar(pub u32);

impl FieldScalar {
    pub const ZERO: FieldScalar = FieldScalar(0);
    pub const ONE: FieldScalar = FieldScalar(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    params: FieldParams,
    q: u32,
    /// exp[i] = g^i for a fixed generator g, i in 0..q-1.
    exp: Vec<u32>,
    /// log[x] for x != 0.
    log: Vec<u32>,
    trace: Vec<u32>,
}

/// The field F_q with precomputed log/exp and trace tables. Cheap to clone.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.t.params.p, self.t.params.e)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.t.params == other.t.params
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        let params = FieldParams::new(p, e)?;
        let q = params.order();
        // Multiplication by polynomial arithmetic, used once to build the tables.
        let slow_mul = |a: u32, b: u32| -> u32 { poly_mul(&params, a, b) };
        let mut generator = None;
        for g in 1..q {
            let mut x = 1u32;
            let mut order = 0u32;
            loop {
                x = slow_mul(x, g);
                order += 1;
                if x == 1 {
                    break;
                }
            }
            if order == q - 1 {
                generator = Some(g);
                break;
            }
        }
        let g = generator.expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, g);
        }
        let tmp = Field { t: Arc::new(Tables { params, q, exp, log, trace: Vec::new() }) };
        let trace: Vec<u32> = (0..q).map(|a| tmp.slow_trace(FieldScalar(a))).collect();
        let mut tables = Arc::try_unwrap(tmp.t).ok().expect("temporary field is uniquely owned");
        tables.trace = trace;
        Ok(Field { t: Arc::new(tables) })
    }

    /// Parses "q", "p^e" or "p**e".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (p, e) = if let Some((a, b)) = s.split_once('^').or_else(|| s.split_once("**")) {
            let p = a.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad field size {s:?}")))?;
            let e = b.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad field size {s:?}")))?;
            (p, e)
        } else {
            let q = s.parse::<u32>().map_err(|_| Error::Parse(format!("bad field size {s:?}")))?;
            prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?
        };
        Field::new(p, e)
    }

    pub fn params(&self) -> &FieldParams {
        &self.t.params
    }

    pub fn p(&self) -> u32 {
        self.t.params.p
    }

    pub fn e(&self) -> u32 {
        self.t.params.e
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldScalar> {
        (0..self.t.q).map(FieldScalar)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldScalar> {
        (1..self.t.q).map(FieldScalar)
    }

    /// Element from a serialized integer; errors when out of range.
    pub fn element(&self, v: u32) -> Result<FieldScalar> {
        if v < self.t.q {
            Ok(FieldScalar(v))
        } else {
            Err(Error::Parse(format!("{v} is not an element of F_{}", self.t.q)))
        }
    }

    pub fn digits(&self, a: FieldScalar) -> Vec<u32> {
        let p = self.p();
        (0..self.e()).map(|i| (a.0 / p.pow(i)) % p).collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> FieldScalar {
        let p = self.p();
        FieldScalar(d.iter().rev().fold(0, |acc, &x| acc * p + x % p))
    }

    pub fn add(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        let p = self.p();
        if self.e() == 1 {
            return FieldScalar((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.e() {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldScalar(out)
    }

    pub fn neg(&self, a: FieldScalar) -> FieldScalar {
        let p = self.p();
        if self.e() == 1 {
            return FieldScalar((p - a.0) % p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..self.e() {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldScalar(out)
    }

    pub fn sub(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        if a.0 == 0 || b.0 == 0 {
            return FieldScalar::ZERO;
        }
        let n = self.t.q - 1;
        let l = (self.t.log[a.0 as usize] + self.t.log[b.0 as usize]) % n;
        FieldScalar(self.t.exp[l as usize])
    }

    pub fn inv(&self, a: FieldScalar) -> Result<FieldScalar> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.t.q - 1;
        let l = (n - self.t.log[a.0 as usize]) % n;
        Ok(FieldScalar(self.t.exp[l as usize]))
    }

    /// `a / b`; panics when `b == 0`, so callers check first.
    pub fn div(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        self.mul(a, self.inv(b).expect("division by zero in F_q"))
    }

    pub fn pow(&self, a: FieldScalar, k: u64) -> FieldScalar {
        if k == 0 {
            return FieldScalar::ONE;
        }
        if a.0 == 0 {
            return FieldScalar::ZERO;
        }
        let n = (self.t.q - 1) as u64;
        let l = (self.t.log[a.0 as usize] as u64 * (k % n)) % n;
        FieldScalar(self.t.exp[l as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: FieldScalar) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldScalar::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Absolute trace to F_p, returned as an integer in `[0, p)`.
    pub fn trace_to_prime(&self, a: FieldScalar) -> u32 {
        self.t.trace[a.0 as usize]
    }

    fn slow_trace(&self, a: FieldScalar) -> u32 {
        let mut acc = FieldScalar::ZERO;
        let mut x = a;
        for _ in 0..self.e() {
            acc = self.add(acc, x);
            x = self.pow(x, self.p() as u64);
        }
        debug_assert!(acc.0 < self.p(), "trace must land in the prime field");
        acc.0
    }

    /// theta(t) = zeta_p^{Tr(t)}.
    pub fn theta(&self, a: FieldScalar) -> CycNumber {
        CycNumber::zeta_pow(self.p(), self.trace_to_prime(a) as u64)
    }

    /// Exponent r with theta(t) = zeta_p^r.
    pub fn theta_exponent(&self, a: FieldScalar) -> u32 {
        self.trace_to_prime(a)
    }

    pub fn sum<I: IntoIterator<Item = FieldScalar>>(&self, it: I) -> FieldScalar {
        it.into_iter().fold(FieldScalar::ZERO, |acc, x| self.add(acc, x))
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Schoolbook product of residue polynomials reduced by the modulus.
fn poly_mul(params: &FieldParams, a: u32, b: u32) -> u32 {
    let p = params.p as u64;
    let e = params.e as usize;
    let da: Vec<u64> = (0..e).map(|i| (a as u64 / p.pow(i as u32)) % p).collect();
    let db: Vec<u64> = (0..e).map(|i| (b as u64 / p.pow(i as u32)) % p).collect();
    let mut prod = vec![0u64; 2 * e];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (e..2 * e).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        // x^e = -(lower modulus coefficients)
        for i in 0..e {
            let m = params.modulus_poly[i] as u64;
            prod[k - e + i] = (prod[k - e + i] + p * p - c * m % p) % p;
        }
    }
    prod[..e].iter().rev().fold(0u64, |acc, &x| acc * p + x) as u32
}
