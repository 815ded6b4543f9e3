//! The coefficient field for Hecke eigenvalue data: a user-declared number
//! field Q[x]/(f) with exact rational coordinate vectors.
//!
//! x stands for a root of the monic defining polynomial f. All ring
//! operations are exact; complex embeddings (used only for numerics and
//! sanity bounds) go through Durand-Kerner root finding at the requested
//! precision.

use crate::complex::Cplx;
use crate::error::{AsaiError, Result};
use crate::poly::{self, QPoly};
use rug::{Float, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct NumberField {
    /// Monic defining polynomial, degree >= 1. Degree 1 with poly = x
    /// presents Q itself.
    pub poly: QPoly,
    pub deg: usize,
}

/// Element as a coordinate vector of length `deg` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfElt {
    pub coeffs: Vec<Rational>,
}

impl NumberField {
    pub fn new(mut poly: QPoly) -> Result<Self> {
        poly::trim(&mut poly);
        let d = poly::deg(&poly).ok_or_else(|| AsaiError::pre("zero defining polynomial"))?;
        if d < 1 {
            return Err(AsaiError::pre("defining polynomial must have degree >= 1"));
        }
        // normalise to monic
        let lead = poly[d].clone();
        let poly = poly::scale(&poly, &Rational::from(lead.recip_ref()));
        // squarefree check: gcd(f, f') must be constant
        let g = poly::gcd(&poly, &poly::derivative(&poly));
        if poly::deg(&g) != Some(0) {
            return Err(AsaiError::pre("defining polynomial is not squarefree"));
        }
        Ok(NumberField { deg: d, poly })
    }

    /// Q presented as Q[x]/(x).
    pub fn rationals() -> Self {
        NumberField {
            poly: vec![Rational::new(), Rational::from(1)],
            deg: 1,
        }
    }

    pub fn zero(&self) -> NfElt {
        NfElt {
            coeffs: vec![Rational::new(); self.deg],
        }
    }

    pub fn one(&self) -> NfElt {
        self.from_rational(Rational::from(1))
    }

    pub fn from_rational(&self, r: Rational) -> NfElt {
        let mut e = self.zero();
        e.coeffs[0] = r;
        e
    }

    pub fn from_i64(&self, n: i64) -> NfElt {
        self.from_rational(Rational::from(n))
    }

    /// The class of x (a root of the defining polynomial).
    pub fn gen(&self) -> NfElt {
        let mut e = self.zero();
        if self.deg >= 2 {
            e.coeffs[1] = Rational::from(1);
        } else {
            // Q[x]/(x - c): the generator is the rational root c
            e.coeffs[0] = -self.poly[0].clone();
        }
        e
    }

    pub fn from_coeffs(&self, mut v: Vec<Rational>) -> Result<NfElt> {
        if v.len() > self.deg {
            return Err(AsaiError::pre("coordinate vector too long"));
        }
        v.resize(self.deg, Rational::new());
        Ok(NfElt { coeffs: v })
    }

    pub fn is_zero(&self, a: &NfElt) -> bool {
        a.coeffs.iter().all(|c| c.cmp0() == std::cmp::Ordering::Equal)
    }

    pub fn eq(&self, a: &NfElt, b: &NfElt) -> bool {
        a.coeffs == b.coeffs
    }

    pub fn add(&self, a: &NfElt, b: &NfElt) -> NfElt {
        NfElt {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| Rational::from(x + y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &NfElt, b: &NfElt) -> NfElt {
        NfElt {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| Rational::from(x - y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &NfElt) -> NfElt {
        NfElt {
            coeffs: a.coeffs.iter().map(|c| Rational::from(-c.clone())).collect(),
        }
    }

    pub fn mul(&self, a: &NfElt, b: &NfElt) -> NfElt {
        let p = poly::mul(&a.coeffs, &b.coeffs);
        let mut r = poly::rem(&p, &self.poly);
        r.resize(self.deg, Rational::new());
        NfElt { coeffs: r }
    }

    pub fn scale(&self, a: &NfElt, s: &Rational) -> NfElt {
        NfElt {
            coeffs: a.coeffs.iter().map(|c| Rational::from(c * s)).collect(),
        }
    }

    pub fn inv(&self, a: &NfElt) -> Result<NfElt> {
        if self.is_zero(a) {
            return Err(AsaiError::pre("division by zero in coefficient field"));
        }
        let (g, s, _) = poly::xgcd(&a.coeffs, &self.poly);
        if poly::deg(&g) != Some(0) {
            return Err(AsaiError::pre(
                "element not invertible: defining polynomial is reducible",
            ));
        }
        let mut r = poly::scale(&s, &Rational::from(g[0].clone().recip()));
        r = poly::rem(&r, &self.poly);
        r.resize(self.deg, Rational::new());
        Ok(NfElt { coeffs: r })
    }

    pub fn div(&self, a: &NfElt, b: &NfElt) -> Result<NfElt> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &NfElt, mut e: u64) -> NfElt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self, a: &NfElt) -> Option<Rational> {
        if a.coeffs[1..].iter().all(|c| c.cmp0() == std::cmp::Ordering::Equal) {
            Some(a.coeffs[0].clone())
        } else {
            None
        }
    }

    /// All complex roots of the defining polynomial, Durand-Kerner.
    pub fn complex_roots(&self, prec: u32) -> Vec<Cplx> {
        let wp = prec + 32;
        let d = self.deg;
        if d == 1 {
            return vec![Cplx::from_rational(&Rational::from(-self.poly[0].clone()), prec)];
        }
        let coeffs: Vec<Cplx> = self.poly.iter().map(|c| Cplx::from_rational(c, wp)).collect();
        let eval = |z: &Cplx| -> Cplx {
            let mut acc = Cplx::zero(wp);
            for c in coeffs.iter().rev() {
                acc = acc.mul(z).add(c);
            }
            acc
        };
        let seed = Cplx::from_f64(0.4, 0.9, wp);
        let mut roots: Vec<Cplx> = (0..d).map(|i| seed.powi(i as u64 + 1)).collect();
        let tol = crate::complex::two_pow_neg(prec as i64 + 8, wp);
        for _ in 0..500 {
            let mut worst = Float::with_val(wp, 0);
            let snapshot = roots.clone();
            for i in 0..d {
                let mut den = Cplx::one(wp);
                for (j, r) in snapshot.iter().enumerate() {
                    if j != i {
                        den = den.mul(&snapshot[i].sub(r));
                    }
                }
                let step = eval(&snapshot[i]).div(&den);
                roots[i] = snapshot[i].sub(&step);
                let s = step.abs();
                if s > worst {
                    worst = s;
                }
            }
            if worst < tol {
                break;
            }
        }
        roots
            .into_iter()
            .map(|r| Cplx::new(Float::with_val(prec, &r.re), Float::with_val(prec, &r.im)))
            .collect()
    }

    /// Evaluate the coordinate vector at the `root_index`-th complex root.
    pub fn embed(&self, a: &NfElt, root_index: usize, prec: u32) -> Cplx {
        let roots = self.complex_roots(prec);
        self.embed_at(a, &roots[root_index % roots.len()])
    }

    pub fn embed_at(&self, a: &NfElt, root: &Cplx) -> Cplx {
        let prec = root.prec();
        let mut acc = Cplx::zero(prec);
        for c in a.coeffs.iter().rev() {
            acc = acc.mul(root).add(&Cplx::from_rational(c, prec));
        }
        acc
    }
}

/// Serialize exact rationals as "p/q" decimal strings.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom() == &rug::Integer::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_from_string(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| AsaiError::BadFile(format!("bad rational: {s}")))
}
