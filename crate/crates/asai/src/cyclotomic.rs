//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Elements are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1)
//! modulo the n-th cyclotomic polynomial, with exact rational coefficients.
//! No floating point enters any ring operation; complex embeddings are a
//! separate, explicitly precision-tagged step.

use crate::complex::Cplx;
use crate::poly::{self, QPoly};
use rug::ops::Pow;
use rug::{Integer, Rational};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, QPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, QPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial, exact and monic, via
/// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
pub fn cyclotomic_polynomial(n: u64) -> QPoly {
    assert!(n >= 1);
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![poly::q(-1), poly::q(1)]
    } else {
        let mut num = poly::x_pow_minus_one(n as usize);
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                num = poly::div_exact(&num, &phi_d);
            }
        }
        num
    };
    cyclo_cache().lock().unwrap().insert(n, result.clone());
    result
}

/// An element of Q(zeta_n) in the power basis mod Phi_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycNumber {
    pub level: u64,
    /// Length phi(n); coefficient of zeta^i at index i.
    pub coeffs: Vec<Rational>,
}

impl CycNumber {
    pub fn zero(level: u64) -> Self {
        CycNumber {
            level,
            coeffs: vec![Rational::new(); euler_phi(level) as usize],
        }
    }

    pub fn one(level: u64) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = poly::q(1);
        z
    }

    pub fn from_rational(level: u64, r: Rational) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = r;
        z
    }

    /// zeta_n^k, reduced.
    pub fn zeta_pow(level: u64, k: i64) -> Self {
        let n = level as i64;
        let k = k.rem_euclid(n) as usize;
        let phi = euler_phi(level) as usize;
        if k < phi {
            let mut z = Self::zero(level);
            z.coeffs[k] = poly::q(1);
            return z;
        }
        let mut p = vec![Rational::new(); k + 1];
        p[k] = poly::q(1);
        let modp = cyclotomic_polynomial(level);
        let r = poly::rem(&p, &modp);
        Self::from_poly(level, r)
    }

    pub fn zeta(level: u64) -> Self {
        Self::zeta_pow(level, 1)
    }

    fn from_poly(level: u64, mut p: QPoly) -> Self {
        let phi = euler_phi(level) as usize;
        let modp = cyclotomic_polynomial(level);
        if p.len() > phi {
            p = poly::rem(&p, &modp);
        }
        p.resize(phi, Rational::new());
        CycNumber { level, coeffs: p }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.cmp0() == std::cmp::Ordering::Equal)
    }

    /// Rewrite in Q(zeta_m) for level | m.
    pub fn to_level(&self, m: u64) -> Self {
        assert!(m % self.level == 0, "target level must be a multiple");
        if m == self.level {
            return self.clone();
        }
        let stride = (m / self.level) as usize;
        let mut p = vec![Rational::new(); self.coeffs.len() * stride];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.cmp0() != std::cmp::Ordering::Equal {
                if p.len() < i * stride + 1 {
                    p.resize(i * stride + 1, Rational::new());
                }
                p[i * stride] = c.clone();
            }
        }
        Self::from_poly(m, p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = lcm(self.level, other.level);
        let a = self.to_level(m);
        let b = other.to_level(m);
        let mut coeffs = a.coeffs;
        for (i, c) in b.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        CycNumber { level: m, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.level, other.level);
        let a = self.to_level(m);
        let b = other.to_level(m);
        let p = poly::mul(&a.coeffs, &b.coeffs);
        Self::from_poly(m, p)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        CycNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * s)).collect(),
        }
    }

    /// Galois conjugation zeta -> zeta^t for t coprime to the level.
    pub fn galois(&self, t: u64) -> Self {
        assert_eq!(gcd(t, self.level), 1, "galois exponent must be a unit");
        let n = self.level;
        let mut p: QPoly = vec![Rational::new(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.cmp0() != std::cmp::Ordering::Equal {
                let e = ((i as u64 * t) % n) as usize;
                p[e] += c;
            }
        }
        Self::from_poly(n, p)
    }

    /// Complex conjugation, zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        if self.level == 1 {
            return self.clone();
        }
        self.galois(self.level - 1)
    }

    pub fn eq_cyc(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Does this element lie in Q? If so return it.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.cmp0() == std::cmp::Ordering::Equal) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Numeric embedding with zeta_n -> exp(2 pi i / n), carrying 32 guard
    /// bits. The returned value has relative error below 2^-(precision+4)
    /// whenever it is not catastrophically small compared to the coefficient
    /// sizes; callers needing absolute bounds use `embed_complex_bound`.
    pub fn embed_complex(&self, precision: u32) -> Cplx {
        assert!(precision >= 64, "precision must be at least 64 bits");
        let wp = precision + 64;
        let zeta = Cplx::root_of_unity(self.level, 1, wp);
        let mut acc = Cplx::zero(wp);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&zeta);
            acc = acc.add(&Cplx::from_rational(c, wp));
        }
        acc
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let mut a = a;
    let mut b = b;
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn integer_pow(base: i64, exp: u32) -> Integer {
    Integer::from(Integer::from(base).pow(exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn cyclotomic_polys() {
        // Phi_1 = x - 1, Phi_4 = x^2 + 1, Phi_12 = x^4 - x^2 + 1
        assert_eq!(cyclotomic_polynomial(4), vec![poly::q(1), poly::q(0), poly::q(1)]);
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![poly::q(1), poly::q(0), poly::q(-1), poly::q(0), poly::q(1)]
        );
    }

    #[test]
    fn zeta3_sum_is_minus_one() {
        let z = CycNumber::zeta(3);
        let z2 = CycNumber::zeta_pow(3, 2);
        let s = z.add(&z2);
        assert_eq!(s.as_rational(), Some(poly::q(-1)));
    }

    #[test]
    fn conj_is_inverse() {
        let z = CycNumber::zeta(5);
        let prod = z.mul(&z.conj());
        assert_eq!(prod.as_rational(), Some(poly::q(1)));
    }

    #[test]
    fn level_lifting_consistent() {
        // zeta_3 in Q(zeta_12), squared, equals zeta_3^2 lifted.
        let a = CycNumber::zeta(3).to_level(12);
        let b = a.mul(&a);
        let c = CycNumber::zeta_pow(3, 2).to_level(12);
        assert!(b.eq_cyc(&c));
    }

    #[test]
    fn embed_zeta4() {
        let z = CycNumber::zeta(4);
        let v = z.embed_complex(64);
        assert!(v.re.to_f64().abs() < 1e-15);
        assert!((v.im.to_f64() - 1.0).abs() < 1e-15);
    }
}
