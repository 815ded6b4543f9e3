//! Real-analytic Eisenstein series of level shift beta = b/N:
//!
//!   E^(k)_beta(tau, s) = Gamma(s+k) / ((-2 pi i)^k pi^s)
//!       * sum' y^s / ((m tau + n + beta)^k |m tau + n + beta|^{2s}),
//!
//! with the (0,0) term omitted when beta is integral. Three evaluation
//! routes are provided and cross-checked:
//!
//! * `lattice_sum`: direct truncated double sum in the convergence region
//!   Re(2s + k) > 2, with a certified polynomial tail bound;
//! * `continued`: the incomplete-gamma (theta-splitting) representation,
//!   entire in s for k >= 1. Writing the summand as
//!   conj(w)^k / |w|^{2(s+k)} and Mellin-splitting at eta = 1/y, Poisson
//!   summation with the Hecke identity for the harmonic weight conj(w)^k
//!   turns the small-t half into a sum over the dual lattice
//!   mu = -a + i(b - a x)/y with phases e^{-2 pi i a beta}:
//!
//!     E = y^s / (-2i)^k [ sum' conj(w)^k (pi |w|^2)^{-s-k}
//!                              Gamma(s+k, pi eta |w|^2)
//!       + (-i)^k / y sum_{mu != 0} e^{-2 pi i a beta} conj(mu)^k
//!             (pi |mu|^2)^{s-1} Gamma(1-s, pi |mu|^2 / eta) ];
//!
//! * `holomorphic_f_qexp`: the weight-k holomorphic series F^(k)_beta by
//!   its q-expansion, derived once by Lipschitz summation of the inner sum
//!   (the module's built-in oracle):
//!     F = (k-1)! (1 + (-1)^k) zeta(k) / (-2 pi i)^k
//!         + sum_{n >= 1} [ sum_{d | n} d^{k-1} (e(beta n/d)
//!                            + (-1)^k e(-beta n/d)) ] q^n.
//!
//! The relation between the continued value at s = 1-k and F is probed
//! numerically rather than assumed; see `qexp_relation`.

use crate::complex::{two_pow_neg, Cplx};
use crate::error::{AsaiError, Result};
use crate::gamma::{gamma_complex, gamma_upper_auto, zeta_int};
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct EisParams {
    /// Weight index k >= 1.
    pub k: u32,
    /// beta = b/N in lowest terms, taken mod 1.
    pub beta_num: i64,
    pub beta_den: u64,
    /// tau = x + iy, y > 0.
    pub tau: Cplx,
    pub s: Cplx,
}

impl EisParams {
    pub fn new(k: u32, beta_num: i64, beta_den: u64, tau: Cplx, s: Cplx) -> Result<Self> {
        if k < 1 {
            return Err(AsaiError::pre("weight index k must be >= 1"));
        }
        if beta_den == 0 {
            return Err(AsaiError::pre("beta denominator must be positive"));
        }
        if !tau.im.is_sign_positive() || tau.im.is_zero() {
            return Err(AsaiError::pre("tau must lie in the upper half-plane"));
        }
        let g = crate::cyclotomic::gcd(beta_num.unsigned_abs(), beta_den);
        Ok(EisParams {
            k,
            beta_num: beta_num / g as i64,
            beta_den: beta_den / g,
            tau,
            s,
        })
    }

    pub fn beta_is_integral(&self) -> bool {
        self.beta_den == 1
    }

    fn beta_float(&self, prec: u32) -> Float {
        Float::with_val(prec, self.beta_num) / Float::with_val(prec, self.beta_den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EisMethod {
    LatticeSum,
    IncompleteGamma,
    QExpansion,
}

#[derive(Clone, Debug)]
pub struct EisensteinEvaluation {
    pub value: Cplx,
    pub truncation_bound: Float,
    pub method: EisMethod,
    /// Set when (k, beta, s) sits at a potentially exceptional point
    /// (integral beta with small k near the ends of the critical range).
    pub pole_flag: bool,
}

/// |m tau + n + beta| >= c0 * max(|m|, |n|) for max(|m|,|n|) >= r0.
fn lattice_lower_bound(x: f64, y: f64, beta: f64) -> (f64, u64) {
    let c0 = y / (2.0 * (y + x.abs()));
    let r0 = (2.0 * (beta.abs() + 1.0)).ceil() as u64 + 1;
    (c0, r0)
}

/// Direct truncated lattice sum; requires Re(2s + k) > 2.
pub fn lattice_sum(params: &EisParams, cutoff: u64, prec: u32) -> Result<EisensteinEvaluation> {
    let k = params.k;
    let s = &params.s;
    let q = 2.0 * s.re.to_f64() + k as f64;
    if q <= 2.0 {
        return Err(AsaiError::OutsideConvergence((2.0 - (k as f64)) / 2.0));
    }
    let wp = prec + 32;
    let tau = Cplx::new(Float::with_val(wp, &params.tau.re), Float::with_val(wp, &params.tau.im));
    let s_wp = Cplx::new(Float::with_val(wp, &s.re), Float::with_val(wp, &s.im));
    let beta = params.beta_float(wp);
    let y = tau.im.clone();
    let x = tau.re.clone();

    let mut acc = Cplx::zero(wp);
    // exponent of |w|^2: -(s + k/2) ... we use |w|^{-2s} w^{-k} =
    // conj(w)^k |w|^{-2s-2k}
    let minus_sk = s_wp.add(&Cplx::from_int(k as i64, wp)).neg();
    for m in -(cutoff as i64)..=(cutoff as i64) {
        let my = Cplx::new(
            Float::with_val(wp, m) * &x + &beta,
            Float::with_val(wp, m) * &y,
        );
        for n in -(cutoff as i64)..=(cutoff as i64) {
            if params.beta_is_integral() && m == 0 && n + params.beta_num == 0 {
                continue;
            }
            let w = Cplx::new(
                Float::with_val(wp, &my.re + &Float::with_val(wp, n)),
                my.im.clone(),
            );
            let w2 = w.norm_sqr();
            // conj(w)^k * (|w|^2)^{-(s+k)}
            let t = w.conj().powi(k as u64).mul(&Cplx::real_pow(&w2, &minus_sk));
            acc = acc.add(&t);
        }
    }
    // y^s
    let ys = Cplx::real_pow(&y, &s_wp);
    acc = acc.mul(&ys);
    // prefactor Gamma(s + k) / ((-2 pi i)^k pi^s)
    let g = gamma_complex(&s_wp.add(&Cplx::from_int(k as i64, wp)), wp)
        .ok_or_else(|| AsaiError::pre("Gamma pole at s + k"))?;
    let m2pi_i = Cplx::new(Float::with_val(wp, 0), Float::with_val(wp, -2) * Cplx::pi(wp));
    let pis = Cplx::real_pow(&Cplx::pi(wp), &s_wp);
    let pref = g.div(&m2pi_i.powi(k as u64)).div(&pis);
    let value = acc.mul(&pref);

    // tail bound: 8 y^{Re s} |pref| c0^{-q} R^{2-q} / (q - 2), inflated
    let (c0, r0) = lattice_lower_bound(x.to_f64(), y.to_f64(), params.beta_float(64).to_f64());
    if cutoff <= r0 {
        return Err(AsaiError::pre("cutoff too small for a certified tail"));
    }
    let c0f = Float::with_val(wp, c0);
    let tail = Float::with_val(wp, 8)
        * y.clone().pow(Float::with_val(wp, s.re.to_f64()))
        * pref.abs()
        * c0f.pow(Float::with_val(wp, -q))
        * Float::with_val(wp, cutoff).pow(Float::with_val(wp, 2.0 - q))
        / Float::with_val(wp, q - 2.0)
        * Float::with_val(wp, 1.25);
    Ok(EisensteinEvaluation {
        value: Cplx::new(Float::with_val(prec, &value.re), Float::with_val(prec, &value.im)),
        truncation_bound: Float::with_val(prec, &tail),
        method: EisMethod::LatticeSum,
        pole_flag: false,
    })
}

/// Gaussian tail helper: sum_{r > R} 8 r^{p+1} e^{-lam r^2}, bounded by a
/// geometric comparison; valid once the term ratio at R is below 1/2.
fn gaussian_tail(lam: f64, p: f64, r: u64, prec: u32) -> Float {
    let rf = r as f64 + 1.0;
    let first = 8.0 * rf.powf(p + 1.0) * (-lam * rf * rf).exp();
    // ratio between consecutive terms at r >= R
    let ratio = ((rf + 1.0) / rf).powf(p + 1.0) * (-lam * (2.0 * rf + 1.0)).exp();
    if !(ratio < 0.5) {
        return Float::with_val(prec, f64::INFINITY);
    }
    Float::with_val(prec, first / (1.0 - ratio) * 1.25)
}

/// Incomplete-gamma (theta-splitting) evaluation, entire in s for k >= 1.
pub fn continued(params: &EisParams, prec: u32) -> Result<EisensteinEvaluation> {
    let k = params.k;
    let wp = prec + 48;
    let tau = Cplx::new(Float::with_val(wp, &params.tau.re), Float::with_val(wp, &params.tau.im));
    let s_wp = Cplx::new(Float::with_val(wp, &params.s.re), Float::with_val(wp, &params.s.im));
    let beta = params.beta_float(wp);
    let y = tau.im.clone();
    let x = tau.re.clone();
    let yf = y.to_f64();
    let xf = x.to_f64();
    let betaf = params.beta_float(64).to_f64();
    let pi = Cplx::pi(wp);
    let eta = Float::with_val(wp, 1) / &y; // balance point: 1/covolume

    let sigma = s_wp.add(&Cplx::from_int(k as i64, wp)); // s + k
    let one_minus_s = Cplx::one(wp).sub(&s_wp); // = k + 1 - sigma

    // ---- direct side ----
    let (c0_d, r0_d) = lattice_lower_bound(xf, yf, betaf);
    let lam_d = std::f64::consts::PI * (eta.to_f64()) * c0_d * c0_d;
    let needed = ((prec + 24) as f64) * std::f64::consts::LN_2;
    let p_d = (k as f64 - 2.0) - 2.0 * 0.0f64.min(sigma.re.to_f64());
    let mut r_d = ((needed + (p_d.abs() + 2.0) * 8.0) / lam_d).sqrt().ceil() as u64 + 1;
    r_d = r_d.max(r0_d + 2).max(6);
    let mut direct = Cplx::zero(wp);
    let mut err = Float::with_val(wp, 0);
    let minus_sigma = sigma.neg();
    for m in -(r_d as i64)..=(r_d as i64) {
        for n in -(r_d as i64)..=(r_d as i64) {
            if params.beta_is_integral() && m == 0 && n + params.beta_num == 0 {
                continue;
            }
            let w = Cplx::new(
                Float::with_val(wp, m) * &x + &beta + &Float::with_val(wp, n),
                Float::with_val(wp, m) * &y,
            );
            let w2 = w.norm_sqr();
            let arg = Float::with_val(wp, &w2 * &eta) * &pi.clone();
            let (g, gb) = gamma_upper_auto(&sigma, &arg, wp);
            let pw2 = Float::with_val(wp, &w2 * &pi);
            let scale = Cplx::real_pow(&pw2, &minus_sigma);
            let t = w.conj().powi(k as u64).mul(&scale).mul(&g);
            direct = direct.add(&t);
            err += gb * w.abs().pow(k) * scale.abs();
        }
    }
    err += gaussian_tail(lam_d, p_d, r_d, wp);

    // ---- dual side ----
    // mu(a, b) = -a + i (b - a x)/y ; |mu| >= max(|a|,|b|) / (2 (y + |x|))
    let c0_t = 1.0 / (2.0 * (yf + xf.abs()));
    let lam_t = std::f64::consts::PI / eta.to_f64() * c0_t * c0_t;
    let p_t = (k as f64 - 2.0) + 2.0 * 0.0f64.max(sigma.re.to_f64() - k as f64 - 1.0);
    let mut r_t = ((needed + (p_t.abs() + 2.0) * 8.0) / lam_t).sqrt().ceil() as u64 + 1;
    r_t = r_t.max(6);
    let mut dual = Cplx::zero(wp);
    let sigma_shift = sigma.sub(&Cplx::from_int(k as i64 + 1, wp)); // s - 1
    for a in -(r_t as i64)..=(r_t as i64) {
        // phase e^{-2 pi i a beta}
        let ang = Float::with_val(wp, -2 * a) * &pi * &beta;
        let (sn, cs) = ang.sin_cos(Float::new(wp));
        let phase = Cplx::new(cs, sn);
        for b in -(r_t as i64)..=(r_t as i64) {
            if a == 0 && b == 0 {
                continue;
            }
            let mu = Cplx::new(
                Float::with_val(wp, -a),
                (Float::with_val(wp, b) - Float::with_val(wp, a) * &x) / &y,
            );
            let mu2 = mu.norm_sqr();
            let arg = Float::with_val(wp, &mu2 / &eta) * &pi.clone();
            let (g, gb) = gamma_upper_auto(&one_minus_s, &arg, wp);
            let pmu2 = Float::with_val(wp, &mu2 * &pi);
            let scale = Cplx::real_pow(&pmu2, &sigma_shift);
            let t = phase
                .mul(&mu.conj().powi(k as u64))
                .mul(&scale)
                .mul(&g);
            dual = dual.add(&t);
            err += gb * mu.abs().pow(k) * scale.abs();
        }
    }
    err += gaussian_tail(lam_t, p_t, r_t, wp);
    // (-i)^k / y factor on the dual side
    let mi = Cplx::new(Float::with_val(wp, 0), Float::with_val(wp, -1));
    let dual_scaled = dual.mul(&mi.powi(k as u64)).div_real(&y);

    // assemble: y^s / (-2i)^k (direct + dual)
    let ys = Cplx::real_pow(&y, &s_wp);
    let m2i = Cplx::new(Float::with_val(wp, 0), Float::with_val(wp, -2));
    let total = direct.add(&dual_scaled).mul(&ys).div(&m2i.powi(k as u64));
    let err_scaled = err * ys.abs() / Float::with_val(wp, 2u32).pow(k);

    let pole_flag = params.beta_is_integral() && k <= 2 && {
        let sr = params.s.re.to_f64();
        let si = params.s.im.to_f64();
        si.abs() < 0.25 && (sr.abs() < 0.25 || (sr - (1.0 - k as f64)).abs() < 0.25)
    };
    Ok(EisensteinEvaluation {
        value: Cplx::new(Float::with_val(prec, &total.re), Float::with_val(prec, &total.im)),
        truncation_bound: Float::with_val(prec, &err_scaled),
        method: EisMethod::IncompleteGamma,
        pole_flag,
    })
}

/// F^(k)_beta(tau) through its Lipschitz-derived q-expansion.
/// Preconditions: k >= 2, beta nonzero mod 1 when k = 2.
pub fn holomorphic_f_qexp(
    k: u32,
    beta_num: i64,
    beta_den: u64,
    tau: &Cplx,
    terms: usize,
    prec: u32,
) -> Result<EisensteinEvaluation> {
    if k < 2 {
        return Err(AsaiError::pre("q-expansion route needs k >= 2"));
    }
    let g = crate::cyclotomic::gcd(beta_num.unsigned_abs(), beta_den.max(1));
    let (bn, bd) = (beta_num / g as i64, beta_den / g);
    if k == 2 && bd == 1 {
        return Err(AsaiError::pre("k = 2 requires beta nonzero"));
    }
    if terms < 1 {
        return Err(AsaiError::pre("need at least one term"));
    }
    let wp = prec + 32;
    let tau = Cplx::new(Float::with_val(wp, &tau.re), Float::with_val(wp, &tau.im));
    let pi = Cplx::pi(wp);
    // q = e^{2 pi i tau}
    let two_pi_i_tau = tau.mul(&Cplx::new(Float::with_val(wp, 0), Float::with_val(wp, 2) * &pi));
    let qq = two_pi_i_tau.exp();
    let q_abs = qq.abs();

    // constant term (k-1)! (1 + (-1)^k) zeta(k) / (-2 pi i)^k
    let mut value = if k % 2 == 0 {
        let z = zeta_int(k, wp);
        let mut fact = Float::with_val(wp, 1);
        for i in 2..k {
            fact *= i;
        }
        let m2pi_i = Cplx::new(Float::with_val(wp, 0), Float::with_val(wp, -2) * &pi);
        Cplx::from_real(Float::with_val(wp, 2) * fact * z).div(&m2pi_i.powi(k as u64))
    } else {
        Cplx::zero(wp)
    };

    // e(beta j) for j mod bd
    let roots: Vec<Cplx> = (0..bd)
        .map(|j| Cplx::root_of_unity(bd, (bn * j as i64).rem_euclid(bd as i64), wp))
        .collect();
    let mut qpow = Cplx::one(wp);
    for n in 1..=terms as u64 {
        qpow = qpow.mul(&qq);
        let mut an = Cplx::zero(wp);
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let mphase = n / d; // phase index m = n/d
            let e_pos = &roots[(mphase % bd) as usize];
            let e_neg = e_pos.conj();
            let mut term = if k % 2 == 0 { e_pos.add(&e_neg) } else { e_pos.sub(&e_neg) };
            let dk = Float::with_val(wp, d).pow(k - 1);
            term = term.mul_real(&dk);
            an = an.add(&term);
        }
        value = value.add(&an.mul(&qpow));
    }
    // tail: |a_n| <= 2 sigma_{k-1}(n) <= 2 n^k; geometric comparison
    let n1 = terms as f64 + 1.0;
    let rho = q_abs.to_f64() * ((n1 + 1.0) / n1).powf(k as f64);
    let tail = if rho < 1.0 {
        Float::with_val(
            wp,
            2.0 * n1.powf(k as f64) * q_abs.to_f64().powf(n1) / (1.0 - rho) * 1.25,
        )
    } else {
        Float::with_val(wp, f64::INFINITY)
    };
    Ok(EisensteinEvaluation {
        value: Cplx::new(Float::with_val(prec, &value.re), Float::with_val(prec, &value.im)),
        truncation_bound: Float::with_val(prec, &tail),
        method: EisMethod::QExpansion,
        pole_flag: false,
    })
}

/// Number of q-expansion terms for a 2^-(prec+8) tail at this tau.
pub fn qexp_terms_for(prec: u32, k: u32, y: f64) -> usize {
    let need = ((prec + 16) as f64) * std::f64::consts::LN_2;
    let rate = 2.0 * std::f64::consts::PI * y;
    let mut n = ((need + 10.0) / rate).ceil();
    // account for the polynomial growth n^k
    for _ in 0..4 {
        n = ((need + (k as f64 + 1.0) * n.ln().max(1.0) + 10.0) / rate).ceil();
    }
    n.max(4.0) as usize
}

/// The diamond action on the shifted series: <c> F^(k)_{1/N} = F^(k)_{c/N}.
/// c-smoothed holomorphic combination c^2 F^{(k+2)}_{1/N} - c^{-k} F^{(k+2)}_{c/N}.
pub fn c_smoothed_holomorphic(
    k: u32,
    level_n: u64,
    c: u64,
    tau: &Cplx,
    prec: u32,
) -> Result<EisensteinEvaluation> {
    if crate::cyclotomic::gcd(c, 6 * level_n) != 1 || c <= 1 {
        return Err(AsaiError::pre("need c > 1 coprime to 6N"));
    }
    let terms = qexp_terms_for(prec, k + 2, tau.im.to_f64());
    let f1 = holomorphic_f_qexp(k + 2, 1, level_n, tau, terms, prec)?;
    let fc = holomorphic_f_qexp(k + 2, c as i64, level_n, tau, terms, prec)?;
    let prec_f = prec;
    let c2 = Float::with_val(prec_f, c * c);
    let cmk = Float::with_val(prec_f, c).pow(-(k as i64));
    let value = f1.value.mul_real(&c2).sub(&fc.value.mul_real(&cmk));
    let bound = Float::with_val(prec_f, &f1.truncation_bound * &c2)
        + Float::with_val(prec_f, &fc.truncation_bound * &cmk);
    Ok(EisensteinEvaluation {
        value,
        truncation_bound: bound,
        method: EisMethod::QExpansion,
        pole_flag: false,
    })
}

/// Same smoothing at the real-analytic parameter s via the continuation.
pub fn c_smoothed_continued(
    k: u32,
    level_n: u64,
    c: u64,
    tau: &Cplx,
    s: &Cplx,
    prec: u32,
) -> Result<EisensteinEvaluation> {
    if crate::cyclotomic::gcd(c, 6 * level_n) != 1 || c <= 1 {
        return Err(AsaiError::pre("need c > 1 coprime to 6N"));
    }
    let p1 = EisParams::new(k + 2, 1, level_n, tau.clone(), s.clone())?;
    let pc = EisParams::new(k + 2, c as i64, level_n, tau.clone(), s.clone())?;
    let e1 = continued(&p1, prec)?;
    let ec = continued(&pc, prec)?;
    let c2 = Float::with_val(prec, c * c);
    let cmk = Float::with_val(prec, c).pow(-(k as i64));
    Ok(EisensteinEvaluation {
        value: e1.value.mul_real(&c2).sub(&ec.value.mul_real(&cmk)),
        truncation_bound: Float::with_val(prec, &e1.truncation_bound * &c2)
            + Float::with_val(prec, &ec.truncation_bound * &cmk),
        method: EisMethod::IncompleteGamma,
        pole_flag: e1.pole_flag || ec.pole_flag,
    })
}

/// Candidate relations between the continued value at s = 1 - k and the
/// q-expansion of F^(k)_beta, probed numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QexpRelation {
    Identity,
    Conjugate,
    SignedIdentity,
    SignedConjugate,
    BetaNegated,
    ConjugateBetaNegated,
    None,
}

/// Compare E^(k)_beta(tau, 1-k) with candidate transforms of F^(k)_beta.
/// Returns the matching relation and the observed mismatch of the best
/// candidate.
pub fn qexp_relation(
    k: u32,
    beta_num: i64,
    beta_den: u64,
    tau: &Cplx,
    prec: u32,
) -> Result<(QexpRelation, f64)> {
    let s = Cplx::from_int(1 - k as i64, prec);
    let p = EisParams::new(k, beta_num, beta_den, tau.clone(), s)?;
    let e = continued(&p, prec)?;
    let terms = qexp_terms_for(prec, k, tau.im.to_f64());
    let f = holomorphic_f_qexp(k, beta_num, beta_den, tau, terms, prec)?;
    let f_neg = holomorphic_f_qexp(k, -beta_num, beta_den, tau, terms, prec)?;
    let scale = e.value.abs().to_f64().max(1e-30);
    let cands = [
        (QexpRelation::Identity, f.value.clone()),
        (QexpRelation::Conjugate, f.value.conj()),
        (QexpRelation::SignedIdentity, f.value.neg()),
        (QexpRelation::SignedConjugate, f.value.conj().neg()),
        (QexpRelation::BetaNegated, f_neg.value.clone()),
        (QexpRelation::ConjugateBetaNegated, f_neg.value.conj()),
    ];
    let mut best = (QexpRelation::None, f64::INFINITY);
    for (rel, v) in &cands {
        let d = e.value.dist(v).to_f64() / scale;
        if d < best.1 {
            best = (*rel, d);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(x: f64, y: f64, prec: u32) -> Cplx {
        Cplx::from_f64(x, y, prec)
    }

    #[test]
    fn lattice_sum_invariant_under_tau_shift() {
        // beta = 0: reindex n -> n - m gives E(tau + 1) = E(tau)
        let prec = 128;
        let s = Cplx::from_f64(2.0, 0.0, prec);
        let p1 = EisParams::new(4, 0, 1, tau(0.3, 1.1, prec), s.clone()).unwrap();
        let p2 = EisParams::new(4, 0, 1, tau(1.3, 1.1, prec), s).unwrap();
        let e1 = lattice_sum(&p1, 60, prec).unwrap();
        let e2 = lattice_sum(&p2, 60, prec).unwrap();
        let d = e1.value.dist(&e2.value).to_f64();
        assert!(
            d <= 2.0 * (e1.truncation_bound.to_f64() + e2.truncation_bound.to_f64()) + 1e-25,
            "d = {d:e}"
        );
    }

    #[test]
    fn lattice_sum_reflection_symmetry() {
        // k = 3, beta = 0: |E(x + iy, s)| = |E(-x + iy, s)|
        let prec = 96;
        let s = Cplx::from_f64(1.5, 0.0, prec);
        let p1 = EisParams::new(3, 0, 1, tau(0.27, 0.9, prec), s.clone()).unwrap();
        let p2 = EisParams::new(3, 0, 1, tau(-0.27, 0.9, prec), s).unwrap();
        let e1 = lattice_sum(&p1, 50, prec).unwrap();
        let e2 = lattice_sum(&p2, 50, prec).unwrap();
        let d = (e1.value.abs() - e2.value.abs()).abs().to_f64();
        assert!(d <= 2.0 * (e1.truncation_bound.to_f64() + e2.truncation_bound.to_f64()) + 1e-25);
    }

    #[test]
    fn lattice_sum_shell_order_oracle() {
        // same truncated sum accumulated by diagonal shells max(|m|,|n|) = r
        let prec = 160;
        let k = 4u32;
        let s = Cplx::from_f64(2.0, 0.0, prec);
        let p = EisParams::new(k, 1, 5, tau(0.0, 1.0, prec), s.clone()).unwrap();
        let cutoff = 40u64;
        let e = lattice_sum(&p, cutoff, prec).unwrap();

        // shell-ordered oracle
        let wp = prec + 32;
        let beta = Float::with_val(wp, 1) / Float::with_val(wp, 5);
        let minus_sk = Cplx::from_f64(-(2.0 + k as f64), 0.0, wp);
        let mut acc = Cplx::zero(wp);
        for r in 0..=cutoff as i64 {
            let shell: Vec<(i64, i64)> = (-r..=r)
                .flat_map(|a| (-r..=r).map(move |b| (a, b)))
                .filter(|&(a, b)| a.abs().max(b.abs()) == r)
                .collect();
            for (m, n) in shell {
                let w = Cplx::new(
                    Float::with_val(wp, n) + &beta,
                    Float::with_val(wp, m),
                );
                let w = Cplx::new(w.re.clone(), Float::with_val(wp, &w.im));
                if w.abs().is_zero() {
                    continue;
                }
                let t = w.conj().powi(k as u64).mul(&Cplx::real_pow(&w.norm_sqr(), &minus_sk));
                acc = acc.add(&t);
            }
        }
        let g = gamma_complex(&Cplx::from_f64(2.0 + k as f64, 0.0, wp), wp).unwrap();
        let m2pi_i = Cplx::new(Float::with_val(wp, 0), Float::with_val(wp, -2) * Cplx::pi(wp));
        let pis = Cplx::real_pow(&Cplx::pi(wp), &Cplx::from_f64(2.0, 0.0, wp));
        let oracle = acc.mul(&g).div(&m2pi_i.powi(k as u64)).div(&pis);
        let d = e.value.dist(&oracle).to_f64();
        assert!(d < 1e-25, "d = {d:e}");
    }

    #[test]
    fn continuation_agrees_with_lattice_sum() {
        // the decisive check of the Poisson/theta-split derivation
        let prec = 128;
        for (k, x, y, sr, si) in [
            (4u32, 0.0, 1.0, 2.0, 0.0),
            (4, 0.3, 0.8, 1.5, 0.5),
            (3, -0.2, 1.2, 1.25, 0.0),
            (5, 0.1, 0.7, 0.75, -0.3),
        ] {
            let s = Cplx::from_f64(sr, si, prec);
            let p = EisParams::new(k, 1, 5, tau(x, y, prec), s).unwrap();
            let a = lattice_sum(&p, 80, prec).unwrap();
            let b = continued(&p, prec).unwrap();
            let d = a.value.dist(&b.value).to_f64();
            let allowed = a.truncation_bound.to_f64() + b.truncation_bound.to_f64() + 1e-30;
            assert!(
                d <= allowed,
                "k={k} tau=({x},{y}) s=({sr},{si}): d={d:e} allowed={allowed:e}"
            );
        }
    }

    #[test]
    fn continuation_beta_zero_matches_lattice() {
        let prec = 96;
        let s = Cplx::from_f64(1.75, 0.0, prec);
        let p = EisParams::new(4, 0, 1, tau(0.2, 1.0, prec), s).unwrap();
        let a = lattice_sum(&p, 70, prec).unwrap();
        let b = continued(&p, prec).unwrap();
        let d = a.value.dist(&b.value).to_f64();
        assert!(d <= a.truncation_bound.to_f64() + b.truncation_bound.to_f64() + 1e-28);
    }

    #[test]
    fn qexp_tau_shift_invariance() {
        let prec = 128;
        let t1 = tau(0.21, 0.95, prec);
        let t2 = tau(1.21, 0.95, prec);
        let n = qexp_terms_for(prec, 4, 0.95);
        let f1 = holomorphic_f_qexp(4, 1, 5, &t1, n, prec).unwrap();
        let f2 = holomorphic_f_qexp(4, 1, 5, &t2, n, prec).unwrap();
        let d = f1.value.dist(&f2.value).to_f64();
        assert!(d <= 2.0 * (f1.truncation_bound.to_f64() + f2.truncation_bound.to_f64()) + 1e-30);
    }

    #[test]
    fn qexp_matches_direct_sum_for_k_ge_3() {
        // direct absolutely-convergent sum of the phase series
        // (k-1)!/(-2 pi i)^k sum' e^{2 pi i beta m} / (m tau + n)^k
        let prec = 160;
        let k = 4u32;
        let t = tau(0.0, 1.0, prec);
        let n_terms = qexp_terms_for(prec, k, 1.0);
        let f = holomorphic_f_qexp(k, 1, 5, &t, n_terms, prec).unwrap();
        let wp = prec + 32;
        let cut = 220i64;
        let mut acc = Cplx::zero(wp);
        let tw = Cplx::from_f64(0.0, 1.0, wp);
        for m in -cut..=cut {
            let phase = Cplx::root_of_unity(5, m.rem_euclid(5), wp);
            for n in -cut..=cut {
                if m == 0 && n == 0 {
                    continue;
                }
                let w = tw.mul_real(&Float::with_val(wp, m)).add(&Cplx::from_int(n, wp));
                acc = acc.add(&phase.div(&w.powi(k as u64)));
            }
        }
        let mut fact = Float::with_val(wp, 1);
        for i in 2..k {
            fact *= i;
        }
        let m2pi_i = Cplx::new(Float::with_val(wp, 0), Float::with_val(wp, -2) * Cplx::pi(wp));
        let direct = acc.mul_real(&fact).div(&m2pi_i.powi(k as u64));
        // direct truncation is only polynomial (k - 2 = 2 powers): compare loosely
        let d = f.value.dist(&direct).to_f64();
        assert!(d < 1e-5, "d = {d:e}");
    }

    #[test]
    fn qexp_k4_beta0_classical_ratio() {
        // full-level weight-4: ratio of values at i and 2i matches the
        // classical Eisenstein series ratio from direct lattice sums
        let prec = 128;
        let n = qexp_terms_for(prec, 4, 1.0);
        let f_i = holomorphic_f_qexp(4, 0, 1, &tau(0.0, 1.0, prec), n, prec).unwrap();
        let f_2i = holomorphic_f_qexp(4, 0, 1, &tau(0.0, 2.0, prec), n, prec).unwrap();
        // direct sums sum' 1/(m tau + n)^4
        let wp = prec;
        let direct = |yy: f64| -> Cplx {
            let cut = 150i64;
            let mut acc = Cplx::zero(wp);
            let tw = Cplx::from_f64(0.0, yy, wp);
            for m in -cut..=cut {
                for n in -cut..=cut {
                    if m == 0 && n == 0 {
                        continue;
                    }
                    let w = tw.mul_real(&Float::with_val(wp, m)).add(&Cplx::from_int(n, wp));
                    acc = acc.add(&w.powi(4).inv());
                }
            }
            acc
        };
        let r1 = f_i.value.div(&f_2i.value);
        let r2 = direct(1.0).div(&direct(2.0));
        let d = r1.dist(&r2).to_f64();
        assert!(d < 1e-6, "d = {d:e}");
    }

    #[test]
    fn c_smoothing_trivial_diamond() {
        // c = 1 mod N acts trivially: value = (c^2 - c^{-k}) F^{(k+2)}_{1/N}
        let prec = 128;
        let t = tau(0.1, 1.3, prec);
        let k = 2u32;
        let n_level = 5u64;
        let c = 11u64; // 11 = 1 mod 5
        let sm = c_smoothed_holomorphic(k, n_level, c, &t, prec).unwrap();
        let terms = qexp_terms_for(prec, k + 2, 1.3);
        let f = holomorphic_f_qexp(k + 2, 1, n_level, &t, terms, prec).unwrap();
        let c2 = Float::with_val(prec, c * c);
        let cmk = Float::with_val(prec, c).pow(-(k as i64));
        let want = f.value.mul_real(&Float::with_val(prec, &c2 - &cmk));
        let d = sm.value.dist(&want).to_f64();
        assert!(d < 1e-28, "d = {d:e}");
    }

    #[test]
    fn cd_symmetry_exact_cancellation() {
        // (d^2 - d^{-k}<d>) applied to the c-smoothed series is symmetric
        // under c <-> d
        let prec = 128;
        let k = 2u32;
        let n_level = 5u64;
        let t = tau(0.23, 0.9, prec);
        let (c, d) = (7u64, 11u64);
        let terms = qexp_terms_for(prec, k + 2, 0.9);
        let f = |b: i64| holomorphic_f_qexp(k + 2, b, n_level, &t, terms, prec).unwrap().value;
        // d-smooth of c-smooth: c^2 d^2 F_1 - c^2 d^{-k} F_d - c^{-k} d^2 F_c
        //                        + c^{-k} d^{-k} F_{cd}
        let term = |a: u64, b: u64| -> Cplx {
            let sa = Float::with_val(prec, a * a);
            let sb = Float::with_val(prec, b).pow(-(k as i64));
            f((b * a / a) as i64 * 0 + 1).mul_real(&sa).mul_real(&sb) // placeholder, unused
        };
        let _ = term;
        let c2 = |u: u64| Float::with_val(prec, u * u);
        let cmk = |u: u64| Float::with_val(prec, u).pow(-(k as i64));
        let lhs = f(1)
            .mul_real(&c2(c))
            .mul_real(&c2(d))
            .sub(&f(d as i64).mul_real(&c2(c)).mul_real(&cmk(d)))
            .sub(&f(c as i64).mul_real(&cmk(c)).mul_real(&c2(d)))
            .add(&f((c * d) as i64).mul_real(&cmk(c)).mul_real(&cmk(d)));
        let rhs = f(1)
            .mul_real(&c2(d))
            .mul_real(&c2(c))
            .sub(&f(c as i64).mul_real(&c2(d)).mul_real(&cmk(c)))
            .sub(&f(d as i64).mul_real(&cmk(d)).mul_real(&c2(c)))
            .add(&f((d * c) as i64).mul_real(&cmk(d)).mul_real(&cmk(c)));
        let diff = lhs.dist(&rhs).to_f64();
        assert!(diff < 1e-30, "diff = {diff:e}");
    }

    #[test]
    fn qexp_relation_detected() {
        // probe the normalisation relation at k = 2, beta = 1/5, s = -1
        let prec = 128;
        let t = tau(0.3, 0.8, prec);
        let (rel, err) = qexp_relation(2, 1, 5, &t, prec).unwrap();
        assert!(rel != QexpRelation::None);
        assert!(err < 1e-20, "rel {rel:?} err {err:e}");
        // stability across tau and k
        let (rel2, err2) = qexp_relation(2, 1, 5, &tau(-0.4, 1.1, prec), prec).unwrap();
        assert_eq!(rel, rel2, "err2={err2:e}");
        let (rel3, _) = qexp_relation(3, 1, 5, &tau(0.2, 0.9, prec), prec).unwrap();
        let (rel4, _) = qexp_relation(4, 2, 5, &tau(0.15, 1.05, prec), prec).unwrap();
        // record: the same transform should describe all weights, possibly
        // up to the explicit (-1)^k bookkeeping.
        eprintln!("qexp relations: k=2 {rel:?}, k=3 {rel3:?}, k=4 {rel4:?}");
    }

    #[test]
    fn modularity_under_gamma1() {
        // (c tau + d)^{-k} F(gamma tau) = F(tau) for gamma in Gamma_1(N)
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let prec = 160;
        let k = 4u32;
        let n_level = 5u64;
        for _ in 0..20 {
            // random word in (1,1;0,1) and (1,0;N,1)
            let mut m = [[1i64, 0], [0, 1]];
            for _ in 0..3 {
                let t: i64 = rng.gen_range(-2..=2);
                let e = if rng.gen_bool(0.5) {
                    [[1, t], [0, 1]]
                } else {
                    [[1, 0], [t * n_level as i64, 1]]
                };
                let mm = [
                    [
                        m[0][0] * e[0][0] + m[0][1] * e[1][0],
                        m[0][0] * e[0][1] + m[0][1] * e[1][1],
                    ],
                    [
                        m[1][0] * e[0][0] + m[1][1] * e[1][0],
                        m[1][0] * e[0][1] + m[1][1] * e[1][1],
                    ],
                ];
                m = mm;
            }
            if m[0][0].abs().max(m[0][1].abs()).max(m[1][0].abs()).max(m[1][1].abs()) >= 50 {
                continue;
            }
            let t = tau(0.17, 1.05, prec);
            let num = t.mul_real(&Float::with_val(prec, m[0][0])).add(&Cplx::from_int(m[0][1], prec));
            let den = t.mul_real(&Float::with_val(prec, m[1][0])).add(&Cplx::from_int(m[1][1], prec));
            let gt = num.div(&den);
            let terms = qexp_terms_for(prec, k, gt.im.to_f64().min(t.im.to_f64()));
            let f_t = holomorphic_f_qexp(k, 1, n_level, &t, terms, prec).unwrap();
            let f_gt = holomorphic_f_qexp(k, 1, n_level, &gt, terms, prec).unwrap();
            let lhs = f_gt.value.div(&den.powi(k as u64));
            let d = lhs.dist(&f_t.value).to_f64();
            let allowed = (f_t.truncation_bound.to_f64()
                + f_gt.truncation_bound.to_f64() / den.abs().to_f64().powi(k as i32))
                * 4.0
                + 1e-25;
            assert!(d <= allowed, "gamma = {m:?}, d = {d:e}");
        }
    }
}
