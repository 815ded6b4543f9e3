//! Dirichlet characters with exact cyclotomic values, and Gauss sums.
//!
//! A character is described by images of the canonical generators of
//! (Z/m)^* and materialised into a full exponent table at construction, so
//! evaluation inside series loops is O(1).

use crate::cyclotomic::{euler_phi, factorize, gcd, lcm, CycNumber};
use crate::error::{AsaiError, Result};
use crate::quadfield::kronecker_symbol;
use rug::Rational;
use serde::{Deserialize, Serialize};

/// Canonical generating set of (Z/m)^*, as (generator, order) pairs.
/// Odd prime powers contribute one generator; 2^a contributes none (a=1),
/// one (a=2) or two (a>=3, namely -1 and 5), all lifted via CRT.
pub fn unit_group_generators(m: u64) -> Vec<(u64, u64)> {
    assert!(m >= 1);
    if m == 1 {
        return vec![];
    }
    let fac = factorize(m);
    let mut gens = vec![];
    for &(p, a) in &fac {
        let q = p.pow(a);
        let rest = m / q;
        if p == 2 {
            if a == 1 {
                continue;
            } else if a == 2 {
                gens.push((crt_lift(3, q, rest), 2u64));
            } else {
                gens.push((crt_lift(q - 1, q, rest), 2u64));
                gens.push((crt_lift(5, q, rest), q / 4));
            }
        } else {
            let g = primitive_root_mod_prime_power(p, a);
            gens.push((crt_lift(g, q, rest), euler_phi(q)));
        }
    }
    gens
}

/// x = g mod q, x = 1 mod rest, 0 <= x < q * rest.
fn crt_lift(g: u64, q: u64, rest: u64) -> u64 {
    if rest == 1 {
        return g % q;
    }
    let m = q * rest;
    let mut x = 1u64;
    loop {
        if x % q == g % q {
            return x % m;
        }
        x += rest;
        assert!(x <= m, "crt lift must exist");
    }
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    let mut acc: u128 = 1 % mm;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    acc as u64
}

fn primitive_root_mod_prime_power(p: u64, a: u32) -> u64 {
    let phi = p - 1;
    let fac = factorize(phi);
    let mut g = 2;
    'outer: loop {
        for &(q, _) in &fac {
            if pow_mod(g, phi / q, p) == 1 {
                g += 1;
                continue 'outer;
            }
        }
        break;
    }
    if a == 1 {
        return g;
    }
    if pow_mod(g, p - 1, p * p) == 1 {
        g += p;
    }
    g
}

/// A Dirichlet character mod m with values in the `order`-th roots of unity.
#[derive(Clone, Debug)]
pub struct DirichletChar {
    pub modulus: u64,
    pub order: u64,
    /// (generator, generator order, exponent e with chi(g) = zeta_order^e).
    pub gen_images: Vec<(u64, u64, u64)>,
    /// For residue t: Some(e) with chi(t) = zeta_order^e if gcd(t, m) = 1,
    /// None otherwise.
    table: Vec<Option<u64>>,
}

impl PartialEq for DirichletChar {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.order == other.order && self.table == other.table
    }
}

#[derive(Serialize, Deserialize)]
pub struct DirichletCharJson {
    pub modulus: u64,
    pub order: u64,
    pub generator_images: Vec<GenImageJson>,
}

#[derive(Serialize, Deserialize)]
pub struct GenImageJson {
    pub generator: u64,
    pub exponent: u64,
}

impl DirichletChar {
    /// Build from exponents x_i with chi(g_i) = zeta_{n_i}^{x_i}, where
    /// (g_i, n_i) runs over `unit_group_generators(m)`.
    pub fn from_exponents(m: u64, exps: &[u64]) -> Result<Self> {
        let gens = unit_group_generators(m);
        if exps.len() != gens.len() {
            return Err(AsaiError::pre(format!(
                "expected {} generator exponents for modulus {m}",
                gens.len()
            )));
        }
        let mut order = 1u64;
        for (&(_, n), &x) in gens.iter().zip(exps) {
            let x = x % n;
            if x != 0 {
                order = lcm(order, n / gcd(n, x));
            }
        }
        let mut table = vec![None; m.max(1) as usize];
        if m == 1 {
            table = vec![Some(0)];
        } else {
            let mut elems: Vec<(u64, u64)> = vec![(1 % m, 0)];
            for (&(g, n), &x) in gens.iter().zip(exps) {
                let x = x % n;
                let mut next = Vec::with_capacity(elems.len() * n as usize);
                for &(r, e) in &elems {
                    let mut rr = r;
                    for k in 0..n {
                        // chi(g^k) = zeta_n^{x k} = zeta_order^{order * (x k mod n) / n}
                        let add = if x == 0 {
                            0u64
                        } else {
                            let xk = (x as u128 * k as u128) % n as u128;
                            (order as u128 * xk / n as u128) as u64
                        };
                        debug_assert!(
                            x == 0
                                || (order as u128 * ((x as u128 * k as u128) % n as u128))
                                    % n as u128
                                    == 0
                        );
                        next.push((rr, (e + add) % order));
                        rr = ((rr as u128 * g as u128) % m as u128) as u64;
                    }
                }
                elems = next;
            }
            for (r, e) in elems {
                table[r as usize] = Some(e);
            }
        }
        let gen_images = gens
            .iter()
            .zip(exps)
            .map(|(&(g, n), &x)| {
                let x = x % n;
                let e = if x == 0 {
                    0
                } else {
                    (order as u128 * x as u128 / n as u128) as u64
                };
                (g, n, e)
            })
            .collect();
        Ok(DirichletChar {
            modulus: m,
            order,
            gen_images,
            table,
        })
    }

    pub fn trivial(m: u64) -> Self {
        let gens = unit_group_generators(m);
        Self::from_exponents(m, &vec![0; gens.len()]).unwrap()
    }

    /// The quadratic character t -> kronecker(d | t), taken mod |d|.
    pub fn kronecker(d: i64) -> Self {
        let m = d.unsigned_abs();
        let gens = unit_group_generators(m);
        let exps: Vec<u64> = gens
            .iter()
            .map(|&(g, n)| match kronecker_symbol(d, g as i64) {
                1 => 0u64,
                -1 => n / 2,
                _ => 0,
            })
            .collect();
        let chi = Self::from_exponents(m, &exps).unwrap();
        debug_assert!((1..m).all(|t| {
            if gcd(t, m) != 1 {
                true
            } else {
                let s = kronecker_symbol(d, t as i64);
                let e = chi.exponent(t).unwrap();
                (s == 1 && e == 0) || (s == -1 && 2 * e == chi.order)
            }
        }));
        chi
    }

    /// All characters mod m, trivial first, deterministic order.
    pub fn all_characters(m: u64) -> Vec<Self> {
        let gens = unit_group_generators(m);
        let mut out = vec![];
        let mut exps = vec![0u64; gens.len()];
        loop {
            out.push(Self::from_exponents(m, &exps).unwrap());
            let mut i = 0;
            loop {
                if i == gens.len() {
                    return out;
                }
                exps[i] += 1;
                if exps[i] < gens[i].1 {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// Exponent e with chi(t) = zeta_order^e, or None when gcd(t, m) > 1.
    pub fn exponent(&self, t: u64) -> Option<u64> {
        self.table[(t % self.modulus.max(1)) as usize]
    }

    /// chi(t) as an exact cyclotomic number; zero when t is not a unit.
    pub fn value(&self, t: u64) -> CycNumber {
        match self.exponent(t) {
            None => CycNumber::zero(self.order),
            Some(e) => CycNumber::zeta_pow(self.order, e as i64),
        }
    }

    /// chi(t) as a rational when the value is real (always possible for
    /// order <= 2); zero for non-units.
    pub fn value_rational(&self, t: u64) -> Result<Rational> {
        match self.exponent(t) {
            None => Ok(Rational::new()),
            Some(e) => {
                if e == 0 {
                    Ok(Rational::from(1))
                } else if 2 * e == self.order {
                    Ok(Rational::from(-1))
                } else {
                    Err(AsaiError::NonRationalCharacter(self.order as usize))
                }
            }
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    /// chi(-1) as +-1.
    pub fn parity(&self) -> i32 {
        if self.modulus <= 2 {
            return 1;
        }
        match self.exponent(self.modulus - 1) {
            Some(0) => 1,
            Some(e) if 2 * e == self.order => -1,
            _ => unreachable!("chi(-1) must be a square root of 1"),
        }
    }

    /// Smallest f | m such that the character factors through (Z/f)^*.
    pub fn conductor(&self) -> u64 {
        let m = self.modulus;
        if m == 1 {
            return 1;
        }
        let mut divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
        divisors.sort_unstable();
        'outer: for f in divisors {
            let mut t = 1 + f;
            while t <= m {
                let tm = t % m;
                if tm > 1 && gcd(tm, m) == 1 && self.exponent(tm) != Some(0) {
                    continue 'outer;
                }
                t += f;
            }
            return f;
        }
        m
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character inducing this one.
    pub fn primitive_part(&self) -> Self {
        let f = self.conductor();
        if f == self.modulus {
            return self.clone();
        }
        let gens = unit_group_generators(f);
        let exps: Vec<u64> = gens
            .iter()
            .map(|&(g, n)| {
                let mut s = g;
                while gcd(s, self.modulus) != 1 {
                    s += f;
                }
                let e = self.exponent(s % self.modulus).unwrap();
                debug_assert_eq!((n as u128 * e as u128) % self.order as u128, 0);
                (n as u128 * e as u128 / self.order as u128) as u64
            })
            .collect();
        Self::from_exponents(f, &exps).unwrap()
    }

    /// Pointwise product, at the lcm modulus.
    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.modulus, other.modulus);
        let gens = unit_group_generators(m);
        let ord = lcm(self.order, other.order);
        let exps: Vec<u64> = gens
            .iter()
            .map(|&(g, n)| {
                let e1 = self.exponent(g % self.modulus.max(1)).expect("generator is a unit");
                let e2 = other
                    .exponent(g % other.modulus.max(1))
                    .expect("generator is a unit");
                let e = (e1 as u128 * (ord / self.order) as u128
                    + e2 as u128 * (ord / other.order) as u128)
                    % ord as u128;
                debug_assert_eq!((e * n as u128) % ord as u128, 0);
                (e * n as u128 / ord as u128) as u64
            })
            .collect();
        Self::from_exponents(m, &exps).unwrap()
    }

    /// Complex conjugate character.
    pub fn conj(&self) -> Self {
        let gens = unit_group_generators(self.modulus);
        let exps: Vec<u64> = gens
            .iter()
            .map(|&(g, n)| {
                let e = self.exponent(g).unwrap();
                if e == 0 {
                    0
                } else {
                    ((self.order - e) as u128 * n as u128 / self.order as u128) as u64
                }
            })
            .collect();
        Self::from_exponents(self.modulus, &exps).unwrap()
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn to_json(&self) -> DirichletCharJson {
        DirichletCharJson {
            modulus: self.modulus,
            order: self.order,
            generator_images: self
                .gen_images
                .iter()
                .map(|&(g, _, e)| GenImageJson {
                    generator: g,
                    exponent: e,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &DirichletCharJson) -> Result<Self> {
        let gens = unit_group_generators(j.modulus);
        if gens.len() != j.generator_images.len() {
            return Err(AsaiError::BadFile(
                "generator_images length does not match modulus".into(),
            ));
        }
        let order = j.order.max(1);
        let exps: Vec<u64> = gens
            .iter()
            .zip(&j.generator_images)
            .map(|(&(g, n), gi)| {
                if gi.generator != g {
                    return Err(AsaiError::BadFile(format!(
                        "expected canonical generator {g}, file has {}",
                        gi.generator
                    )));
                }
                let e = gi.exponent % order;
                if (e as u128 * n as u128) % order as u128 != 0 {
                    return Err(AsaiError::BadFile("invalid generator image".into()));
                }
                Ok((e as u128 * n as u128 / order as u128) as u64)
            })
            .collect::<Result<_>>()?;
        Self::from_exponents(j.modulus, &exps)
    }
}

/// Gauss sum of a primitive character: sum_t chi(t) e^{2 pi i t / m},
/// exact in Q(zeta_{lcm(m, order)}).
pub fn gauss_sum(chi: &DirichletChar) -> Result<CycNumber> {
    if !chi.is_primitive() {
        return Err(AsaiError::NonPrimitiveCharacter);
    }
    let m = chi.modulus;
    if m == 1 {
        return Ok(CycNumber::one(1));
    }
    let level = lcm(m, chi.order);
    let mut acc = CycNumber::zero(level);
    for t in 1..m {
        if let Some(e) = chi.exponent(t) {
            let expo = (e as i64) * (level / chi.order) as i64 + (t as i64) * (level / m) as i64;
            acc = acc.add(&CycNumber::zeta_pow(level, expo));
        }
    }
    Ok(acc)
}
