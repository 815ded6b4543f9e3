//! Complex arithmetic at arbitrary precision on top of MPFR reals.
//!
//! The system MPFR has no companion MPC build, so the crate carries its own
//! small complex layer. Precision is carried by the component floats; all
//! constructors take the working precision in bits.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

#[derive(Clone, Debug)]
pub struct Cplx {
    pub re: Float,
    pub im: Float,
}

impl Cplx {
    pub fn new(re: Float, im: Float) -> Self {
        Cplx { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cplx {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn one(prec: u32) -> Self {
        Cplx {
            re: Float::with_val(prec, 1),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn i(prec: u32) -> Self {
        Cplx {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 1),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Cplx {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Cplx {
            re: Float::with_val(prec, n),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Cplx {
            re: Float::with_val(prec, r),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_real(r: Float) -> Self {
        let prec = r.prec();
        Cplx {
            re: r,
            im: Float::with_val(prec, 0),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    /// exp(2 pi i k / n).
    pub fn root_of_unity(n: u64, k: i64, prec: u32) -> Self {
        let pi = Self::pi(prec);
        let ang = Float::with_val(prec, 2 * k) * pi / Float::with_val(prec, n);
        let (s, c) = ang.sin_cos(Float::new(prec));
        Cplx { re: c, im: s }
    }

    pub fn conj(&self) -> Self {
        Cplx {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Cplx {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Cplx {
            re: Float::with_val(self.prec(), &self.re + &o.re),
            im: Float::with_val(self.prec(), &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Cplx {
            re: Float::with_val(self.prec(), &self.re - &o.re),
            im: Float::with_val(self.prec(), &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        Cplx {
            re: ac - bd,
            im: ad + bc,
        }
    }

    pub fn mul_real(&self, r: &Float) -> Self {
        Cplx {
            re: Float::with_val(self.prec(), &self.re * r),
            im: Float::with_val(self.prec(), &self.im * r),
        }
    }

    pub fn div_real(&self, r: &Float) -> Self {
        Cplx {
            re: Float::with_val(self.prec(), &self.re / r),
            im: Float::with_val(self.prec(), &self.im / r),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec();
        let denom = o.norm_sqr();
        let num = self.mul(&o.conj());
        Cplx {
            re: Float::with_val(p, &num.re / &denom),
            im: Float::with_val(p, &num.im / &denom),
        }
    }

    pub fn inv(&self) -> Self {
        Cplx::one(self.prec()).div(self)
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let a = Float::with_val(p, &self.re * &self.re);
        let b = Float::with_val(p, &self.im * &self.im);
        a + b
    }

    pub fn abs(&self) -> Float {
        // hypot avoids spurious overflow
        self.re.clone().hypot(&self.im)
    }

    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Cplx {
            re: Float::with_val(p, &m * &c),
            im: Float::with_val(p, &m * &s),
        }
    }

    /// Principal branch logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let r = self.norm_sqr().ln() / Float::with_val(p, 2);
        Cplx {
            re: r,
            im: self.arg(),
        }
    }

    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        let r = self.abs().sqrt();
        let half = Float::with_val(p, &self.arg() / &Float::with_val(p, 2));
        let (s, c) = half.sin_cos(Float::new(p));
        Cplx {
            re: Float::with_val(p, &r * &c),
            im: Float::with_val(p, &r * &s),
        }
    }

    pub fn powi(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cplx::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn powi_signed(&self, e: i64) -> Self {
        if e >= 0 {
            self.powi(e as u64)
        } else {
            self.powi((-e) as u64).inv()
        }
    }

    /// Principal power z^w = exp(w log z).
    pub fn pow(&self, w: &Self) -> Self {
        self.ln().mul(w).exp()
    }

    /// x^w for positive real x, avoiding a complex log.
    pub fn real_pow(x: &Float, w: &Self) -> Self {
        let p = w.prec();
        debug_assert!(x.is_sign_positive());
        let lx = x.clone().ln();
        let e = Cplx {
            re: Float::with_val(p, &w.re * &lx),
            im: Float::with_val(p, &w.im * &lx),
        };
        e.exp()
    }

    /// sin(z) = sin x cosh y + i cos x sinh y.
    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (sx, cx) = self.re.clone().sin_cos(Float::new(p));
        let sh = self.im.clone().sinh();
        let ch = self.im.clone().cosh();
        Cplx {
            re: Float::with_val(p, &sx * &ch),
            im: Float::with_val(p, &cx * &sh),
        }
    }

    pub fn dist(&self, o: &Self) -> Float {
        self.sub(o).abs()
    }

    pub fn to_string_dec(&self, digits: usize) -> String {
        format!(
            "{} + {}*I",
            float_dec(&self.re, digits),
            float_dec(&self.im, digits)
        )
    }
}

pub fn float_dec(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_string_radix(10, Some(digits));
    s
}

/// 2^(-bits) as a Float, used for certified-bound assembly.
pub fn two_pow_neg(bits: i64, prec: u32) -> Float {
    Float::with_val(prec, 2).pow(Float::with_val(prec, -bits))
}
