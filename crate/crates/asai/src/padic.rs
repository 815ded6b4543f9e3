//! Scalars mod p^M: the working coefficient ring for the measure layer.
//!
//! Everything is exact arithmetic mod p^M; "equal" always means equal in
//! Z/p^M. The context object carries (p, M) and the precomputed modulus.

use crate::error::{AsaiError, Result};
use rug::ops::Pow;
use rug::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicCtx {
    pub p: u64,
    /// Working precision exponent M: arithmetic is mod p^M.
    pub m: u32,
    pub modulus: Integer,
}

/// A residue mod p^M, always reduced to [0, p^M).
pub type PadicScalar = Integer;

impl PadicCtx {
    pub fn new(p: u64, m: u32) -> Self {
        assert!(m >= 1);
        let modulus = Integer::from(Integer::from(p).pow(m));
        PadicCtx { p, m, modulus }
    }

    pub fn reduce(&self, x: &Integer) -> PadicScalar {
        let mut r = Integer::from(x % &self.modulus);
        if r.cmp0() == std::cmp::Ordering::Less {
            r += &self.modulus;
        }
        r
    }

    pub fn from_i64(&self, x: i64) -> PadicScalar {
        self.reduce(&Integer::from(x))
    }

    pub fn from_u64(&self, x: u64) -> PadicScalar {
        self.reduce(&Integer::from(x))
    }

    /// Rational with unit denominator.
    pub fn from_rational(&self, r: &Rational) -> Result<PadicScalar> {
        let den = self.reduce(r.denom());
        let den_inv = self.inv(&den)?;
        Ok(self.mul(&self.reduce(r.numer()), &den_inv))
    }

    pub fn add(&self, a: &PadicScalar, b: &PadicScalar) -> PadicScalar {
        self.reduce(&Integer::from(a + b))
    }

    pub fn sub(&self, a: &PadicScalar, b: &PadicScalar) -> PadicScalar {
        self.reduce(&Integer::from(a - b))
    }

    pub fn neg(&self, a: &PadicScalar) -> PadicScalar {
        self.reduce(&Integer::from(-a.clone()))
    }

    pub fn mul(&self, a: &PadicScalar, b: &PadicScalar) -> PadicScalar {
        self.reduce(&Integer::from(a * b))
    }

    pub fn is_unit(&self, a: &PadicScalar) -> bool {
        Integer::from(a % &Integer::from(self.p)).cmp0() != std::cmp::Ordering::Equal
    }

    /// p-adic valuation, capped at M.
    pub fn valuation(&self, a: &PadicScalar) -> u32 {
        let mut v = 0;
        let p = Integer::from(self.p);
        let mut x = self.reduce(a);
        if x.cmp0() == std::cmp::Ordering::Equal {
            return self.m;
        }
        while Integer::from(&x % &p).cmp0() == std::cmp::Ordering::Equal {
            x /= &p;
            v += 1;
        }
        v
    }

    pub fn inv(&self, a: &PadicScalar) -> Result<PadicScalar> {
        if !self.is_unit(a) {
            return Err(AsaiError::pre(format!("not a unit mod {}^{}", self.p, self.m)));
        }
        let inv = a
            .clone()
            .invert(&self.modulus)
            .expect("unit has an inverse mod p^M");
        Ok(inv)
    }

    pub fn pow_u(&self, a: &PadicScalar, mut e: u64) -> PadicScalar {
        let mut base = self.reduce(a);
        let mut acc = self.from_i64(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_i(&self, a: &PadicScalar, e: i64) -> Result<PadicScalar> {
        if e >= 0 {
            Ok(self.pow_u(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow_u(&inv, (-e) as u64))
        }
    }

    /// The unique (p-1)-st root of unity congruent to u mod p, by iterating
    /// x -> x^p to stabilisation.
    pub fn teichmuller(&self, u: &PadicScalar) -> Result<PadicScalar> {
        if !self.is_unit(u) {
            return Err(AsaiError::pre("teichmuller lift needs a unit"));
        }
        let mut x = self.reduce(u);
        for _ in 0..(4 * self.m + 8) {
            let next = self.pow_u(&x, self.p);
            if next == x {
                return Ok(x);
            }
            x = next;
        }
        Err(AsaiError::ProjectorPrecision)
    }

    /// Unit root of x^2 - b x + c when it exists: requires b a unit and
    /// c = 0 mod p so the reduction factors as x (x - b). Hensel/Newton.
    pub fn unit_root_quadratic(&self, b: &PadicScalar, c: &PadicScalar) -> Result<PadicScalar> {
        if !self.is_unit(b) {
            return Err(AsaiError::pre("no unit root: linear coefficient not a unit"));
        }
        if self.is_unit(c) {
            // both roots could be units only if c is a unit; in the ordinary
            // setting c = eps * Nm^{k+1} = 0 mod p, so reject as unexpected.
            return Err(AsaiError::pre("constant term is a unit; not the ordinary shape"));
        }
        let mut x = self.reduce(b); // x = b mod p is the unit root mod p
        for _ in 0..(self.m + 3) {
            // f(x) = x^2 - b x + c, f'(x) = 2x - b
            let fx = self.add(&self.sub(&self.mul(&x, &x), &self.mul(b, &x)), c);
            let fpx = self.sub(&self.mul(&self.from_i64(2), &x), b);
            let step = self.mul(&fx, &self.inv(&fpx)?);
            let next = self.sub(&x, &step);
            if next == x {
                break;
            }
            x = next;
        }
        // verify
        let fx = self.add(&self.sub(&self.mul(&x, &x), &self.mul(b, &x)), c);
        if fx.cmp0() != std::cmp::Ordering::Equal {
            return Err(AsaiError::ProjectorPrecision);
        }
        Ok(x)
    }
}
