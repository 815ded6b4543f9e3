//! Dense univariate polynomials over Q, little-endian coefficient order.
//!
//! Shared by the cyclotomic and number-field layers and by the local-factor
//! reconstruction. Everything here is exact.

use rug::{Integer, Rational};

pub type QPoly = Vec<Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from(n)
}

pub fn qi(n: &Integer) -> Rational {
    Rational::from(n)
}

/// Remove trailing zero coefficients.
pub fn trim(p: &mut QPoly) {
    while let Some(c) = p.last() {
        if c.cmp0() == std::cmp::Ordering::Equal {
            p.pop();
        } else {
            break;
        }
    }
}

pub fn deg(p: &QPoly) -> Option<usize> {
    let mut d = p.len();
    while d > 0 {
        if p[d - 1].cmp0() != std::cmp::Ordering::Equal {
            return Some(d - 1);
        }
        d -= 1;
    }
    None
}

pub fn is_zero(p: &QPoly) -> bool {
    deg(p).is_none()
}

pub fn add(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::new(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::new(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub fn neg(a: &QPoly) -> QPoly {
    a.iter().map(|c| Rational::from(-c.clone())).collect()
}

pub fn scale(a: &QPoly, s: &Rational) -> QPoly {
    let mut out: QPoly = a.iter().map(|c| Rational::from(c * s)).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    if is_zero(a) || is_zero(b) {
        return vec![];
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.cmp0() == std::cmp::Ordering::Equal {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += Rational::from(ca * cb);
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division: returns (quotient, remainder) with deg r < deg b.
pub fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut r = a.clone();
    trim(&mut r);
    let mut qout: QPoly = vec![];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let coef = Rational::from(&r[dr] / &lead);
        let shift = dr - db;
        if qout.len() < shift + 1 {
            qout.resize(shift + 1, Rational::new());
        }
        qout[shift] = coef.clone();
        for i in 0..=db {
            let t = Rational::from(&b[i] * &coef);
            r[i + shift] -= t;
        }
        trim(&mut r);
    }
    trim(&mut qout);
    (qout, r)
}

/// Exact division; panics if the remainder is non-zero.
pub fn div_exact(a: &QPoly, b: &QPoly) -> QPoly {
    let (q, r) = divrem(a, b);
    assert!(is_zero(&r), "polynomial division was not exact");
    q
}

pub fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    divrem(a, b).1
}

pub fn eval(p: &QPoly, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in p.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

pub fn derivative(p: &QPoly) -> QPoly {
    if p.len() <= 1 {
        return vec![];
    }
    let mut out: QPoly = p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| Rational::from(c * &q((i + 1) as i64)))
        .collect();
    trim(&mut out);
    out
}

pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(&mut a);
    trim(&mut b);
    while !is_zero(&b) {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = deg(&a) {
        let lead = a[d].clone();
        a = scale(&a, &Rational::from(lead.recip_ref()));
    }
    a
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
pub fn xgcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: QPoly = vec![Rational::from(1)];
    let mut s1: QPoly = vec![];
    let mut t0: QPoly = vec![];
    let mut t1: QPoly = vec![Rational::from(1)];
    while !is_zero(&r1) {
        let (qq, rr) = divrem(&r0, &r1);
        let ns = sub(&s0, &mul(&qq, &s1));
        let nt = sub(&t0, &mul(&qq, &t1));
        r0 = r1;
        r1 = rr;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if let Some(d) = deg(&r0) {
        let inv = Rational::from(r0[d].clone().recip());
        r0 = scale(&r0, &inv);
        s0 = scale(&s0, &inv);
        t0 = scale(&t0, &inv);
    }
    (r0, s0, t0)
}

/// x^n - 1 as an exact polynomial.
pub fn x_pow_minus_one(n: usize) -> QPoly {
    let mut p = vec![Rational::new(); n + 1];
    p[0] = q(-1);
    p[n] = q(1);
    p
}
