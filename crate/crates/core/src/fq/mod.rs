//! Prime-power finite fields F_q with q = p^e.
//!
//! Elements are `u32` indices: the element Σ c_i x^i of F_p[x]/(modulus)
//! is stored as Σ c_i p^i. Multiplication goes through log/exp tables, so
//! q is limited to 2^16.

pub mod linalg;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_Q: u32 = 1 << 16;

/// A field element, as an index into the field's tables.
pub type Fq = u32;

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    // Full addition table for q <= 256; digit-wise addition otherwise.
    add: Option<Vec<u32>>,
}

/// The field F_{p^e} in a polynomial basis over F_p.
#[derive(Clone)]
pub struct FqField(Arc<Inner>);

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}(mod {:?})", self.q(), self.0.modulus)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FqField {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q = p^e, or returns None if q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut m, mut e) = (q, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

fn builtin_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    match (p, e) {
        (_, 1) => Some(vec![0, 1]),
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

// ---- polynomials over F_p, used only to build the tables ----

fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = fp_inv(m[dm], p);
    while r.len() > dm {
        let c = r[r.len() - 1] * inv_lead % p;
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut k) = (a as u64 % p as u64, p as u64 - 2);
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

fn fp_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    fp_rem(&c, m, p)
}

/// Trial factorization: true iff the monic `m` has no monic factor of
/// degree between 1 and deg(m)/2.
fn fp_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                f.push((t % p as u64) as u32);
                t /= p as u64;
            }
            f.push(1);
            if fp_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn decode(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(e as usize);
    for _ in 0..e {
        c.push(x % p);
        x /= p;
    }
    c
}

impl FqField {
    /// F_q with the built-in modulus for small q, otherwise the
    /// lexicographically first irreducible polynomial found by search.
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        let modulus = match builtin_modulus(p, e) {
            Some(m) => m,
            None => {
                let count = (p as u64).pow(e);
                (0..count)
                    .map(|idx| {
                        let mut f = decode(idx as u32, p, e);
                        f.push(1);
                        f
                    })
                    .find(|f| f[0] != 0 && fp_irreducible(f, p))
                    .ok_or_else(|| Error::InvalidField("no irreducible polynomial".into()))?
            }
        };
        Self::with_modulus(p, modulus)
    }

    /// F_{p^e} with an explicit monic modulus of degree e (low degree first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let e = modulus.len().checked_sub(1).filter(|&e| e >= 1).ok_or_else(|| Error::InvalidField("modulus has degree 0".into()))? as u32;
        if modulus[e as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic with coefficients in [0, p)".into()));
        }
        let q64 = (p as u64).pow(e);
        if q64 > MAX_Q as u64 {
            return Err(Error::InvalidField(format!("q = {q64} exceeds {MAX_Q}")));
        }
        if !fp_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let q = q64 as u32;

        // Multiplicative generator by search.
        let mut factors = vec![];
        let mut m = q - 1;
        let mut d = 2;
        while m > 1 {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        let pow = |g: &[u32], mut k: u32| {
            let mut r = vec![1u32];
            let mut b = g.to_vec();
            while k > 0 {
                if k & 1 == 1 {
                    r = fp_mul_mod(&r, &b, &modulus, p);
                }
                b = fp_mul_mod(&b, &b, &modulus, p);
                k >>= 1;
            }
            r
        };
        let one = vec![1u32];
        let gen = (1..q)
            .map(|x| {
                let mut c = decode(x, p, e);
                fp_trim(&mut c);
                c
            })
            .find(|g| factors.iter().all(|&l| pow(g, (q - 1) / l) != one))
            .expect("F_q^* is cyclic");

        let mut exp = vec![0u32; 2 * q as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for i in 0..(q - 1) {
            let idx = encode(&cur, p);
            exp[i as usize] = idx;
            log[idx as usize] = i;
            cur = fp_mul_mod(&cur, &gen, &modulus, p);
        }
        for i in (q - 1) as usize..exp.len() {
            exp[i] = exp[i - (q - 1) as usize];
        }
        let add = (q <= 256).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, p, e);
                }
            }
            t
        });
        Ok(FqField(Arc::new(Inner { p, e, q, modulus, exp, log, add })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let s = &self.0;
        if s.p == 2 {
            a ^ b
        } else if s.e == 1 {
            let c = a + b;
            if c >= s.p {
                c - s.p
            } else {
                c
            }
        } else if let Some(t) = &s.add {
            t[(a * s.q + b) as usize]
        } else {
            digit_add(a, b, s.p, s.e)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let s = &self.0;
        if s.p == 2 || a == 0 {
            a
        } else if s.e == 1 {
            s.p - a
        } else {
            let (mut x, mut r, mut pw) = (a, 0, 1);
            for _ in 0..s.e {
                let d = x % s.p;
                r += ((s.p - d) % s.p) * pw;
                x /= s.p;
                pw *= s.p;
            }
            r
        }
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = &self.0;
        s.exp[(s.log[a as usize] + s.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a == 0 {
            return None;
        }
        let s = &self.0;
        Some(s.exp[((s.q - 1 - s.log[a as usize]) % (s.q - 1)) as usize])
    }

    pub fn pow(&self, a: Fq, k: u64) -> Fq {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let s = &self.0;
        let l = (s.log[a as usize] as u64 * (k % (s.q as u64 - 1))) % (s.q as u64 - 1);
        s.exp[l as usize]
    }

    /// The image of an integer in F_p ⊂ F_q.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// The class of x modulo the modulus, i.e. the polynomial generator.
    pub fn generator(&self) -> Fq {
        if self.0.e == 1 {
            self.0.exp[1]
        } else {
            self.0.p
        }
    }

    /// Coefficients over F_p in the polynomial basis.
    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        decode(a, self.0.p, self.0.e)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Fq {
        encode(c, self.0.p)
    }

    /// All elements, 0 first.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.0.q
    }

    /// Human-readable form: integers for prime fields, polynomials in `w`
    /// otherwise.
    pub fn format(&self, a: Fq) -> String {
        if self.0.e == 1 {
            return a.to_string();
        }
        let c = self.coeffs(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| match (i, x) {
                (0, x) => x.to_string(),
                (1, 1) => "w".into(),
                (1, x) => format!("{x}*w"),
                (i, 1) => format!("w^{i}"),
                (i, x) => format!("{x}*w^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn digit_add(mut a: u32, mut b: u32, p: u32, e: u32) -> u32 {
    let (mut r, mut pw) = (0, 1);
    for _ in 0..e {
        r += ((a % p + b % p) % p) * pw;
        a /= p;
        b /= p;
        pw *= p;
    }
    r
}
