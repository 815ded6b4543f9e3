//! Hecke eigenvalue data of Bianchi eigenforms: the only input the Asai
//! L-series needs. Includes base change from elliptic eigenforms,
//! prime-power recursion, multiplicative assembly of c(n O_F), and
//! p-stabilisation with a Hensel-lifted unit root.

use crate::cyclotomic::factorize;
use crate::dirichlet::DirichletChar;
use crate::error::{AsaiError, Result};
use crate::numfield::{rational_from_string, rational_to_string, NfElt, NumberField};
use crate::padic::{PadicCtx, PadicScalar};
use crate::quadfield::{ImagQuadField, SplitKind};
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Eigen-data at the primes above a single rational prime ell.
///
/// `c` and `eps` are indexed by the primes above ell (two entries for split
/// ell, one otherwise). `eps[i] = None` marks degenerate local data (bad
/// primes), where prime powers follow c(lambda^r) = c(lambda)^r instead of
/// the two-term recursion.
#[derive(Clone, Debug)]
pub struct PrimeEigenData {
    pub ell: u64,
    pub kind: SplitKind,
    pub c: Vec<NfElt>,
    pub eps: Vec<Option<NfElt>>,
    pub bad: bool,
    /// Set on good ramified primes of a base change, where the rule
    /// c(lambda) = a_ell is adopted without a factorization cross-check.
    pub unverified: bool,
}

/// Hecke data of a Bianchi eigenform of weight (k, k).
#[derive(Clone, Debug)]
pub struct BianchiEigenData {
    pub field: ImagQuadField,
    pub weight_k: u32,
    pub level_norm: u64,
    pub coeff: NumberField,
    pub primes: BTreeMap<u64, PrimeEigenData>,
    /// Restriction of the nebentypus to (Z/N)^*.
    pub neben_q: DirichletChar,
    pub bad_primes: BTreeSet<u64>,
    /// Dataset declares the sharp Satake bound (true for base change of
    /// holomorphic eigenforms, by Deligne); drives series tail bounds.
    pub ramanujan: bool,
}

/// Elliptic modular eigenform data (weight k+2) used for base change.
#[derive(Clone, Debug)]
pub struct EllipticEigenData {
    /// Weight of the elliptic form; the base change has weight (w-2, w-2).
    pub weight: u32,
    pub level: u64,
    pub neben: DirichletChar,
    pub coeff: NumberField,
    pub a: BTreeMap<u64, NfElt>,
}

impl BianchiEigenData {
    /// Norm of the labeled prime: ell (split or ramified) or ell^2 (inert).
    fn prime_norm(&self, d: &PrimeEigenData) -> u64 {
        match d.kind {
            SplitKind::Inert => d.ell * d.ell,
            _ => d.ell,
        }
    }

    /// c(lambda^r) at one labeled prime above ell, via the recursion
    /// c(lambda^{r+1}) = c(lambda) c(lambda^r) - eps(lambda) Nm(lambda)^{k+1} c(lambda^{r-1}).
    pub fn prime_power(&self, ell: u64, index: usize, r: u32) -> Result<NfElt> {
        let kf = &self.coeff;
        if r == 0 {
            return Ok(kf.one());
        }
        let d = self
            .primes
            .get(&ell)
            .ok_or(AsaiError::InsufficientEigenData(ell))?;
        let c1 = d
            .c
            .get(index)
            .ok_or(AsaiError::InsufficientEigenData(ell))?
            .clone();
        match &d.eps[index] {
            None => Ok(kf.pow(&c1, r as u64)),
            Some(eps) => {
                let nm = self.prime_norm(d);
                let q = kf.mul(
                    eps,
                    &kf.from_rational(Rational::from(Integer::from(Integer::from(nm).pow(self.weight_k + 1)))),
                );
                let mut prev = kf.one();
                let mut cur = c1.clone();
                for _ in 1..r {
                    let next = kf.sub(&kf.mul(&c1, &cur), &kf.mul(&q, &prev));
                    prev = cur;
                    cur = next;
                }
                Ok(cur)
            }
        }
    }

    /// c(ell^r O_F): split -> c(lambda^r) c(lambdabar^r); inert -> c((ell)^r);
    /// ramified -> c(lambda^{2r}).
    pub fn c_ideal_power(&self, ell: u64, r: u32) -> Result<NfElt> {
        if r == 0 {
            return Ok(self.coeff.one());
        }
        let d = self
            .primes
            .get(&ell)
            .ok_or(AsaiError::InsufficientEigenData(ell))?;
        match d.kind {
            SplitKind::Split => {
                let a = self.prime_power(ell, 0, r)?;
                let b = self.prime_power(ell, 1, r)?;
                Ok(self.coeff.mul(&a, &b))
            }
            SplitKind::Inert => self.prime_power(ell, 0, r),
            SplitKind::Ramified => self.prime_power(ell, 0, 2 * r),
        }
    }

    /// c(n O_F) by multiplicativity across prime powers.
    pub fn eigenvalue_at(&self, n: u64) -> Result<NfElt> {
        assert!(n >= 1);
        let mut acc = self.coeff.one();
        for (p, e) in factorize(n) {
            let v = self.c_ideal_power(p, e)?;
            acc = self.coeff.mul(&acc, &v);
        }
        Ok(acc)
    }

    /// Hecke polynomial data at a labeled prime: (c(lambda), eps * Nm^{k+1})
    /// so the Satake parameters are the roots of X^2 - c X + q.
    pub fn satake_data(&self, ell: u64, index: usize) -> Result<(NfElt, NfElt)> {
        let d = self
            .primes
            .get(&ell)
            .ok_or(AsaiError::InsufficientEigenData(ell))?;
        let eps = d.eps[index]
            .clone()
            .ok_or(AsaiError::InsufficientEigenData(ell))?;
        let nm = self.prime_norm(d);
        let q = self.coeff.mul(
            &eps,
            &self
                .coeff
                .from_rational(Rational::from(Integer::from(Integer::from(nm).pow(self.weight_k + 1)))),
        );
        Ok((d.c[index].clone(), q))
    }

    pub fn is_good(&self, ell: u64) -> bool {
        !self.bad_primes.contains(&ell)
            && self.level_norm % ell != 0
            && self.field.d % ell != 0
            && self.primes.get(&ell).map(|d| !d.bad).unwrap_or(false)
    }
}

/// Base change of an elliptic eigenform to the imaginary quadratic field F.
///
/// Good split ell: c(lambda) = c(lambdabar) = a_ell. Good inert ell:
/// c(ell O_F) = a_ell^2 - 2 eps_f(ell) ell^{k+1}. Good ramified ell:
/// c(lambda) = a_ell, flagged unverified. Primes dividing N_f D go to
/// bad_primes with degenerate local data.
pub fn base_change(f: &EllipticEigenData, field: &ImagQuadField) -> Result<BianchiEigenData> {
    let k = f.weight - 2;
    let kf = f.coeff.clone();
    let mut primes = BTreeMap::new();
    let mut bad_primes = BTreeSet::new();
    let n = f.level;
    for (&ell, a) in &f.a {
        let split = field.split_prime(ell);
        let bad = n % ell == 0;
        if bad {
            bad_primes.insert(ell);
        }
        let eps_val = if bad {
            None
        } else {
            // eps_Psi(lambda) = eps_f(Nm lambda); values must be rational
            // (+-1) for the exact path, otherwise the character value is
            // materialised through its cyclotomic order when possible.
            let nm = match split.kind {
                SplitKind::Inert => ell * ell,
                _ => ell,
            };
            let v = f.neben.value_rational(nm % f.neben.modulus.max(1))?;
            Some(kf.from_rational(v))
        };
        let data = match split.kind {
            SplitKind::Split => PrimeEigenData {
                ell,
                kind: SplitKind::Split,
                c: vec![a.clone(), a.clone()],
                eps: vec![eps_val.clone(), eps_val.clone()],
                bad,
                unverified: false,
            },
            SplitKind::Inert => {
                let c = if bad {
                    // degenerate: c((ell)) = a_ell^2 (from c(lambda^r) = c^r at level primes)
                    kf.mul(a, a)
                } else {
                    // a_ell^2 - 2 eps_f(ell) ell^{k+1}
                    let epsl = f.neben.value_rational(ell % f.neben.modulus.max(1))?;
                    let shift = Rational::from(2) * epsl * Rational::from(Integer::from(Integer::from(ell).pow(k + 1)));
                    kf.sub(&kf.mul(a, a), &kf.from_rational(shift))
                };
                PrimeEigenData {
                    ell,
                    kind: SplitKind::Inert,
                    c: vec![c],
                    eps: vec![eps_val],
                    bad,
                    unverified: false,
                }
            }
            SplitKind::Ramified => {
                if field.d % ell == 0 && !bad {
                    bad_primes.insert(ell);
                }
                PrimeEigenData {
                    ell,
                    kind: SplitKind::Ramified,
                    c: vec![a.clone()],
                    eps: vec![eps_val],
                    bad,
                    unverified: !bad,
                }
            }
        };
        primes.insert(ell, data);
    }
    let neben_q = f.neben.square();
    Ok(BianchiEigenData {
        field: field.clone(),
        weight_k: k,
        level_norm: n,
        coeff: kf,
        primes,
        neben_q,
        bad_primes,
        ramanujan: true,
    })
}

/// p-stabilised eigen-data: exact values away from p, p-adic unit roots of
/// the Hecke polynomials at the primes over p.
#[derive(Clone, Debug)]
pub struct PStabilized {
    pub data: BianchiEigenData,
    pub ctx: PadicCtx,
    /// Unit root per labeled prime above p.
    pub alpha: Vec<PadicScalar>,
    /// c(p O_F) of the stabilised form: the U_p-eigenvalue lambda_p.
    pub lambda_p: PadicScalar,
}

/// Map the coefficient field into Z_p via a degree-1 place (a root of the
/// defining polynomial in Z_p, Hensel-lifted from a simple root mod p).
pub fn padic_place(kf: &NumberField, ctx: &PadicCtx) -> Result<PadicScalar> {
    let p = ctx.p;
    // clear denominators of the defining polynomial mod p
    let eval_mod_p = |x: u64| -> Result<u64> {
        let mut acc = Rational::new();
        let mut pw = Rational::from(1);
        for c in &kf.poly {
            acc += Rational::from(c * &pw);
            pw *= Rational::from(x);
        }
        // reduce exact rational mod p
        let den = ctx.reduce(acc.denom());
        if !ctx.is_unit(&den) {
            return Err(AsaiError::NoPadicPlace(p));
        }
        let num = ctx.reduce(acc.numer());
        let inv = ctx.inv(&den)?;
        Ok(Integer::from(&ctx.mul(&num, &inv) % &Integer::from(p))
            .to_u64()
            .unwrap())
    };
    let mut root0 = None;
    for x in 0..p {
        if eval_mod_p(x)? == 0 {
            // simple root check via derivative mod p
            root0 = Some(x);
            break;
        }
    }
    let r0 = root0.ok_or(AsaiError::NoPadicPlace(p))?;
    // Newton-lift in Z/p^M
    let poly_p: Vec<PadicScalar> = kf
        .poly
        .iter()
        .map(|c| ctx.from_rational(c))
        .collect::<Result<_>>()?;
    let dpoly: Vec<PadicScalar> = poly_p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ctx.mul(&ctx.from_u64(i as u64), c))
        .collect();
    let eval = |cs: &[PadicScalar], x: &PadicScalar| -> PadicScalar {
        let mut acc = ctx.from_i64(0);
        for c in cs.iter().rev() {
            acc = ctx.add(&ctx.mul(&acc, x), c);
        }
        acc
    };
    let mut x = ctx.from_u64(r0);
    let d0 = eval(&dpoly, &x);
    if !ctx.is_unit(&d0) {
        return Err(AsaiError::NoPadicPlace(p));
    }
    for _ in 0..(ctx.m + 3) {
        let fx = eval(&poly_p, &x);
        let fpx = eval(&dpoly, &x);
        let step = ctx.mul(&fx, &ctx.inv(&fpx)?);
        let next = ctx.sub(&x, &step);
        if next == x {
            break;
        }
        x = next;
    }
    Ok(x)
}

pub fn nf_to_padic(place: &PadicScalar, ctx: &PadicCtx, a: &NfElt) -> Result<PadicScalar> {
    let mut acc = ctx.from_i64(0);
    for c in a.coeffs.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, place), &ctx.from_rational(c)?);
    }
    Ok(acc)
}

/// Replace the eigen-data at the primes over p by the unit root of the
/// Hecke polynomial there (ordinarity required), multiply the level by p.
pub fn p_stabilize(psi: &BianchiEigenData, p: u64, ctx: &PadicCtx) -> Result<PStabilized> {
    assert_eq!(ctx.p, p);
    if psi.level_norm % p == 0 || psi.bad_primes.contains(&p) {
        return Err(AsaiError::pre(format!("prime {p} is not good for this form")));
    }
    let place = padic_place(&psi.coeff, ctx)?;
    let d = psi
        .primes
        .get(&p)
        .ok_or(AsaiError::InsufficientEigenData(p))?;
    let mut alpha = vec![];
    for (i, c) in d.c.iter().enumerate() {
        let (cl, q) = psi.satake_data(p, i)?;
        debug_assert!(psi.coeff.eq(&cl, c));
        let b = nf_to_padic(&place, ctx, &cl)?;
        let qq = nf_to_padic(&place, ctx, &q)?;
        let root = ctx
            .unit_root_quadratic(&b, &qq)
            .map_err(|_| AsaiError::NotOrdinary(p))?;
        alpha.push(root);
    }
    // lambda_p = c(p O_F, Psi_alpha)
    let lambda_p = match d.kind {
        SplitKind::Split => ctx.mul(&alpha[0], &alpha[1]),
        SplitKind::Inert => alpha[0].clone(),
        SplitKind::Ramified => ctx.mul(&alpha[0], &alpha[0]),
    };
    if !ctx.is_unit(&lambda_p) {
        return Err(AsaiError::NotOrdinary(p));
    }
    // stabilised data: level times p, degenerate local data at p
    let mut data = psi.clone();
    data.level_norm *= p;
    data.bad_primes.insert(p);
    if let Some(dp) = data.primes.get_mut(&p) {
        dp.bad = true;
        for e in dp.eps.iter_mut() {
            *e = None;
        }
        // exact c-values at p are no longer the unramified ones; keep the
        // p-adic alphas as the authoritative data
    }
    Ok(PStabilized {
        data,
        ctx: ctx.clone(),
        alpha,
        lambda_p,
    })
}

// ---------------------------------------------------------------------------
// bundled datasets and file IO
// ---------------------------------------------------------------------------

/// a_ell of the conductor-11 elliptic curve y^2 + y = x^3 - x^2 - 10x - 20
/// by direct point counting over F_ell (the weight-2 newform of level 11).
pub fn conductor11_ap(ell: u64) -> i64 {
    if ell == 11 {
        return 1; // split multiplicative reduction
    }
    let l = ell as i64;
    let f = |x: i64| -> i64 { ((x * x % l) * x % l - x * x % l - 10 * x - 20).rem_euclid(l) };
    let mut count = 1i64; // point at infinity
    for x in 0..l {
        let c = f(x);
        for y in 0..l {
            if (y * y + y - c).rem_euclid(l) == 0 {
                count += 1;
            }
        }
    }
    l + 1 - count
}

/// The conductor-11 eigenform with a_ell for all primes ell < bound.
pub fn elliptic_11a(bound: u64) -> EllipticEigenData {
    let kf = NumberField::rationals();
    let mut a = BTreeMap::new();
    for ell in crate::quadfield::primes_below(bound) {
        a.insert(ell, kf.from_i64(conductor11_ap(ell)));
    }
    EllipticEigenData {
        weight: 2,
        level: 11,
        neben: DirichletChar::trivial(11),
        coeff: kf,
        a,
    }
}

/// Deterministic synthetic Bianchi eigen-data over Q for tests and the
/// bundled example file. Satisfies all structural invariants by
/// construction; eigenvalues are small integers.
pub fn synthetic_dataset(seed: u64, d: u64, k: u32, bound: u64) -> BianchiEigenData {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let field = ImagQuadField::new(d).unwrap();
    let kf = NumberField::rationals();
    let level_norm = 4; // keeps 2 bad, everything else good
    let mut primes = BTreeMap::new();
    let mut bad_primes = BTreeSet::new();
    for ell in crate::quadfield::primes_below(bound) {
        let split = field.split_prime(ell);
        let bad = level_norm % ell == 0;
        if bad {
            bad_primes.insert(ell);
        }
        let eps = if bad { None } else { Some(kf.one()) };
        let range = 2 * (ell as i64) + 2;
        let data = match split.kind {
            SplitKind::Split => PrimeEigenData {
                ell,
                kind: SplitKind::Split,
                c: vec![
                    kf.from_i64(rng.gen_range(-range..=range)),
                    kf.from_i64(rng.gen_range(-range..=range)),
                ],
                eps: vec![eps.clone(), eps.clone()],
                bad,
                unverified: false,
            },
            SplitKind::Inert => PrimeEigenData {
                ell,
                kind: SplitKind::Inert,
                c: vec![kf.from_i64(rng.gen_range(-range * range..=range * range))],
                eps: vec![eps],
                bad,
                unverified: false,
            },
            SplitKind::Ramified => PrimeEigenData {
                ell,
                kind: SplitKind::Ramified,
                c: vec![kf.from_i64(rng.gen_range(-range..=range))],
                eps: vec![eps],
                bad,
                unverified: false,
            },
        };
        primes.insert(ell, data);
    }
    BianchiEigenData {
        field,
        weight_k: k,
        level_norm,
        coeff: kf,
        primes,
        neben_q: DirichletChar::trivial(level_norm),
        bad_primes,
        ramanujan: false,
    }
}

#[derive(Serialize, Deserialize)]
pub struct EigenDataJson {
    pub field_d: u64,
    pub weight_k: u32,
    pub level_norm: u64,
    /// Monic defining polynomial of the coefficient field, constant first.
    pub coeff_field_poly: Vec<String>,
    pub primes: Vec<PrimeJson>,
    pub neben: crate::dirichlet::DirichletCharJson,
    pub bad_primes: Vec<u64>,
    #[serde(default)]
    pub ramanujan: bool,
}

#[derive(Serialize, Deserialize)]
pub struct PrimeJson {
    pub ell: u64,
    pub kind: String,
    /// One (inert/ramified) or two (split) eigenvalues, each a coordinate
    /// vector of rational strings.
    pub c_values: Vec<Vec<String>>,
    /// Diamond eigenvalues, empty vectors mark degenerate (bad) data.
    pub eps_values: Vec<Vec<String>>,
    #[serde(default)]
    pub bad: bool,
    #[serde(default)]
    pub unverified: bool,
}

impl BianchiEigenData {
    pub fn to_json(&self) -> EigenDataJson {
        EigenDataJson {
            field_d: self.field.d,
            weight_k: self.weight_k,
            level_norm: self.level_norm,
            coeff_field_poly: self.coeff.poly.iter().map(rational_to_string).collect(),
            primes: self
                .primes
                .values()
                .map(|d| PrimeJson {
                    ell: d.ell,
                    kind: match d.kind {
                        SplitKind::Split => "split".into(),
                        SplitKind::Inert => "inert".into(),
                        SplitKind::Ramified => "ramified".into(),
                    },
                    c_values: d
                        .c
                        .iter()
                        .map(|e| e.coeffs.iter().map(rational_to_string).collect())
                        .collect(),
                    eps_values: d
                        .eps
                        .iter()
                        .map(|e| match e {
                            None => vec![],
                            Some(v) => v.coeffs.iter().map(rational_to_string).collect(),
                        })
                        .collect(),
                    bad: d.bad,
                    unverified: d.unverified,
                })
                .collect(),
            neben: self.neben_q.to_json(),
            bad_primes: self.bad_primes.iter().copied().collect(),
            ramanujan: self.ramanujan,
        }
    }

    pub fn from_json(j: &EigenDataJson) -> Result<Self> {
        let field = ImagQuadField::new(j.field_d)?;
        let poly = j
            .coeff_field_poly
            .iter()
            .map(|s| rational_from_string(s))
            .collect::<Result<Vec<_>>>()?;
        let coeff = NumberField::new(poly)?;
        let parse_elt = |v: &Vec<String>| -> Result<NfElt> {
            coeff.from_coeffs(
                v.iter()
                    .map(|s| rational_from_string(s))
                    .collect::<Result<Vec<_>>>()?,
            )
        };
        let mut primes = BTreeMap::new();
        for pj in &j.primes {
            let kind = match pj.kind.as_str() {
                "split" => SplitKind::Split,
                "inert" => SplitKind::Inert,
                "ramified" => SplitKind::Ramified,
                other => return Err(AsaiError::BadFile(format!("unknown kind {other}"))),
            };
            if field.split_prime(pj.ell).kind != kind {
                return Err(AsaiError::BadFile(format!(
                    "prime {} does not have kind {} in Q(sqrt(-{}))",
                    pj.ell, pj.kind, j.field_d
                )));
            }
            let c = pj.c_values.iter().map(parse_elt).collect::<Result<Vec<_>>>()?;
            let eps = pj
                .eps_values
                .iter()
                .map(|v| {
                    if v.is_empty() {
                        Ok(None)
                    } else {
                        parse_elt(v).map(Some)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let expected = if kind == SplitKind::Split { 2 } else { 1 };
            if c.len() != expected || eps.len() != expected {
                return Err(AsaiError::BadFile(format!(
                    "prime {}: expected {expected} eigenvalue entries",
                    pj.ell
                )));
            }
            primes.insert(
                pj.ell,
                PrimeEigenData {
                    ell: pj.ell,
                    kind,
                    c,
                    eps,
                    bad: pj.bad,
                    unverified: pj.unverified,
                },
            );
        }
        Ok(BianchiEigenData {
            field,
            weight_k: j.weight_k,
            level_norm: j.level_norm,
            coeff,
            primes,
            neben_q: DirichletChar::from_json(&j.neben)?,
            bad_primes: j.bad_primes.iter().copied().collect(),
            ramanujan: j.ramanujan,
        })
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let s = serde_json::to_string_pretty(&self.to_json())
            .map_err(|e| AsaiError::BadFile(e.to_string()))?;
        std::fs::write(path, s)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)?;
        let j: EigenDataJson =
            serde_json::from_str(&s).map_err(|e| AsaiError::BadFile(e.to_string()))?;
        Self::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    /// Independent oracle for the 11a coefficients: the eta product
    /// q prod (1-q^n)^2 (1-q^{11n})^2, expanded exactly.
    fn eta_product_11a(n_max: usize) -> Vec<i64> {
        // (1 - q^n)^2 factors multiplied out degree by degree
        let mut coeffs = vec![0i64; n_max + 1];
        coeffs[0] = 1;
        let mut mul_factor = |step: usize| {
            // multiply by (1 - q^step)^2 = 1 - 2 q^step + q^{2 step}
            let mut next = vec![0i64; n_max + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                next[i] += c;
                if i + step <= n_max {
                    next[i + step] -= 2 * c;
                }
                if i + 2 * step <= n_max {
                    next[i + 2 * step] += c;
                }
            }
            coeffs = next;
        };
        for n in 1..=n_max {
            mul_factor(n);
            if 11 * n <= n_max {
                mul_factor(11 * n);
            }
        }
        // shift by q
        let mut out = vec![0i64; n_max + 2];
        for (i, &c) in coeffs.iter().enumerate() {
            out[i + 1] = c;
        }
        out
    }

    #[test]
    fn point_counts_match_eta_product() {
        let eta = eta_product_11a(60);
        for ell in crate::quadfield::primes_below(60) {
            if ell == 11 {
                continue;
            }
            assert_eq!(
                conductor11_ap(ell),
                eta[ell as usize],
                "a_{ell} mismatch between point counting and eta product"
            );
        }
        // frozen spot values
        assert_eq!(conductor11_ap(2), -2);
        assert_eq!(conductor11_ap(3), -1);
        assert_eq!(conductor11_ap(5), 1);
        assert_eq!(conductor11_ap(7), -2);
        assert_eq!(conductor11_ap(13), 4);
    }

    #[test]
    fn base_change_rules() {
        let f = elliptic_11a(40);
        let qi = ImagQuadField::new(4).unwrap();
        let psi = base_change(&f, &qi).unwrap();
        // c(O_F) = 1
        assert_eq!(psi.coeff.as_rational(&psi.eigenvalue_at(1).unwrap()), Some(q(1)));
        // inert 3: c(3 O_F) = a_3^2 - 2*3 = 1 - 6 = -5
        assert_eq!(
            psi.coeff.as_rational(&psi.eigenvalue_at(3).unwrap()),
            Some(q(-5))
        );
        // split 5: c(lambda) = c(lambdabar) = 1, so c(5 O_F) = 1
        assert_eq!(
            psi.coeff.as_rational(&psi.eigenvalue_at(5).unwrap()),
            Some(q(1))
        );
        // multiplicativity at 15
        assert_eq!(
            psi.coeff.as_rational(&psi.eigenvalue_at(15).unwrap()),
            Some(q(-5))
        );
        assert!(psi.bad_primes.contains(&11));
        assert!(psi.bad_primes.contains(&2)); // ramified in Q(i)
    }

    #[test]
    fn prime_power_recursion_against_series_oracle() {
        // synthetic split prime with c(lambda) = 2, eps trivial, Nm = 5, k = 0:
        // the generating series sum c(lambda^r) X^r = 1/(1 - 2X + 5X^2).
        // Expand the reciprocal as an independent oracle.
        let psi = {
            let field = ImagQuadField::new(4).unwrap();
            let kf = NumberField::rationals();
            let mut primes = BTreeMap::new();
            primes.insert(
                5,
                PrimeEigenData {
                    ell: 5,
                    kind: SplitKind::Split,
                    c: vec![kf.from_i64(2), kf.from_i64(0)],
                    eps: vec![Some(kf.one()), Some(kf.one())],
                    bad: false,
                    unverified: false,
                },
            );
            BianchiEigenData {
                field,
                weight_k: 0,
                level_norm: 4,
                coeff: kf,
                primes,
                neben_q: DirichletChar::trivial(4),
                bad_primes: BTreeSet::new(),
                ramanujan: false,
            }
        };
        // oracle: power series inverse of (1 - 2X + 5X^2) to order 10
        let mut inv = vec![Rational::new(); 11];
        inv[0] = q(1);
        for n in 1..=10usize {
            // coefficient recurrence: a_n = 2 a_{n-1} - 5 a_{n-2}
            let mut v = Rational::from(2) * inv[n - 1].clone();
            if n >= 2 {
                v -= Rational::from(5) * inv[n - 2].clone();
            }
            inv[n] = v;
        }
        assert_eq!(inv[2], q(-1)); // c(lambda^2) = 4 - 5 = -1
        for r in 0..=10u32 {
            let v = psi.prime_power(5, 0, r).unwrap();
            assert_eq!(psi.coeff.as_rational(&v), Some(inv[r as usize].clone()));
        }
    }

    #[test]
    fn recursion_inverts_hecke_polynomial() {
        // sum_r c(lambda^r) X^r * (1 - c X + eps Nm^{k+1} X^2) = 1 exactly,
        // checked to order 10 for a base change at split and inert primes.
        let f = elliptic_11a(40);
        let psi = base_change(&f, &ImagQuadField::new(4).unwrap()).unwrap();
        for ell in [5u64, 13, 3, 7] {
            if !psi.is_good(ell) {
                continue;
            }
            let (c, qq) = psi.satake_data(ell, 0).unwrap();
            let kf = &psi.coeff;
            let series: Vec<NfElt> = (0..=12u32)
                .map(|r| psi.prime_power(ell, 0, r).unwrap())
                .collect();
            // multiply by 1 - cX + qX^2, check coefficients vanish
            for n in 1..=10usize {
                let mut acc = series[n].clone();
                acc = kf.sub(&acc, &kf.mul(&c, &series[n - 1]));
                if n >= 2 {
                    acc = kf.add(&acc, &kf.mul(&qq, &series[n - 2]));
                }
                assert!(kf.is_zero(&acc), "ell = {ell}, order {n}");
            }
        }
    }

    #[test]
    fn ramanujan_bound_sanity() {
        // |a_ell| <= 2 sqrt(ell) for the weight-2 level-11 form
        let f = elliptic_11a(200);
        for (&ell, a) in &f.a {
            if ell == 11 {
                continue;
            }
            let v = f.coeff.as_rational(a).unwrap().to_f64();
            assert!(v.abs() <= 2.0 * (ell as f64).sqrt() + 1e-9, "ell = {ell}");
        }
    }

    #[test]
    fn p_stabilization() {
        let f = elliptic_11a(40);
        let psi = base_change(&f, &ImagQuadField::new(4).unwrap()).unwrap();
        // p = 5 splits in Q(i); a_5 = 1, Hecke polynomial X^2 - X + 5
        let ctx = PadicCtx::new(5, 20);
        let st = p_stabilize(&psi, 5, &ctx).unwrap();
        assert_eq!(st.alpha.len(), 2);
        for a in &st.alpha {
            let check = ctx.add(&ctx.sub(&ctx.mul(a, a), a), &ctx.from_i64(5));
            assert!(check.cmp0() == std::cmp::Ordering::Equal);
            assert!(ctx.is_unit(a));
        }
        assert!(ctx.is_unit(&st.lambda_p));
        assert_eq!(st.data.level_norm, 55);
        assert!(st.data.bad_primes.contains(&5));

        // synthetic ordinary split p with c = 1 + p: unit root is exactly 1
        let ctx7 = PadicCtx::new(7, 12);
        let root = ctx7
            .unit_root_quadratic(&ctx7.from_i64(8), &ctx7.from_i64(7))
            .unwrap();
        assert_eq!(root, ctx7.from_i64(1));

        // non-ordinary: c(lambda_p) = 0 mod p at both primes
        let mut bad = psi.clone();
        if let Some(dp) = bad.primes.get_mut(&5) {
            dp.c = vec![bad.coeff.from_i64(5), bad.coeff.from_i64(5)];
        }
        assert!(matches!(
            p_stabilize(&bad, 5, &ctx),
            Err(AsaiError::NotOrdinary(5))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let psi = synthetic_dataset(7, 3, 1, 30);
        let j = psi.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let j2: EigenDataJson = serde_json::from_str(&s).unwrap();
        let back = BianchiEigenData::from_json(&j2).unwrap();
        for n in 1..25u64 {
            let a = psi.eigenvalue_at(n).unwrap();
            let b = back.eigenvalue_at(n).unwrap();
            assert!(psi.coeff.eq(&a, &b));
        }
    }

    #[test]
    fn missing_data_errors() {
        let psi = synthetic_dataset(1, 4, 0, 20);
        assert!(matches!(
            psi.eigenvalue_at(23),
            Err(AsaiError::InsufficientEigenData(23))
        ));
    }
}
