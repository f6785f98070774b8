//! Univariate polynomials over F_q, coefficient vectors with the constant
//! term first. Only what field extensions and minimal polynomials need.

use super::{Fq, FqField};

pub fn trim(a: &mut Vec<Fq>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[Fq]) -> Option<usize> {
    a.iter().rposition(|&x| x != 0)
}

pub fn add(f: &FqField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let mut c: Vec<Fq> = (0..a.len().max(b.len()))
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut c);
    c
}

pub fn sub(f: &FqField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let nb: Vec<Fq> = b.iter().map(|&x| f.neg(x)).collect();
    add(f, a, &nb)
}

pub fn mul(f: &FqField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = f.add(c[i + j], f.mul(x, y));
        }
    }
    trim(&mut c);
    c
}

/// Division with remainder; `b` must be nonzero.
pub fn divrem(f: &FqField, a: &[Fq], b: &[Fq]) -> (Vec<Fq>, Vec<Fq>) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = f.inv(b[db]).unwrap();
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut quo = vec![0; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = f.mul(r[top], inv);
        let shift = top - db;
        quo[shift] = c;
        for (i, &bi) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        trim(&mut r);
    }
    trim(&mut quo);
    (quo, r)
}

pub fn rem(f: &FqField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    divrem(f, a, b).1
}

pub fn gcd(f: &FqField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let inv = f.inv(a[d]).unwrap();
        a.iter_mut().for_each(|x| *x = f.mul(*x, inv));
    }
    a
}

pub fn powmod(f: &FqField, a: &[Fq], mut k: u64, m: &[Fq]) -> Vec<Fq> {
    let mut r = rem(f, &[1], m);
    let mut b = rem(f, a, m);
    while k > 0 {
        if k & 1 == 1 {
            r = rem(f, &mul(f, &r, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        k >>= 1;
    }
    r
}

pub fn eval(f: &FqField, a: &[Fq], x: Fq) -> Fq {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Ben-Or irreducibility test for a monic polynomial of degree ≥ 1.
pub fn is_irreducible(f: &FqField, m: &[Fq]) -> bool {
    let Some(d) = degree(m) else { return false };
    if d == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=d / 2 {
        xp = powmod(f, &xp, f.q() as u64, m);
        let g = gcd(f, &sub(f, &xp, &x), m);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The first monic irreducible polynomial of degree m in index order.
pub fn find_irreducible(f: &FqField, m: usize) -> Vec<Fq> {
    let q = f.q() as u64;
    let mut idx: u64 = 0;
    loop {
        let mut c = Vec::with_capacity(m + 1);
        let mut t = idx;
        for _ in 0..m {
            c.push((t % q) as Fq);
            t /= q;
        }
        c.push(1);
        if (m == 1 || c[0] != 0) && is_irreducible(f, &c) {
            return c;
        }
        idx += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibles_over_f2() {
        let f = FqField::new(2).unwrap();
        assert!(is_irreducible(&f, &[1, 1, 1]));
        assert!(!is_irreducible(&f, &[1, 0, 1]));
        assert_eq!(find_irreducible(&f, 3), vec![1, 1, 0, 1]);
        let g = find_irreducible(&f, 13);
        assert_eq!(degree(&g), Some(13));
    }

    #[test]
    fn divrem_identity() {
        let f = FqField::new(5).unwrap();
        let a = vec![1, 2, 3, 4, 1];
        let b = vec![2, 0, 1];
        let (qq, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &qq, &b), &r), a);
    }
}
