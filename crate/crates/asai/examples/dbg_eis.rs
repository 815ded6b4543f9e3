use asai::complex::Cplx;
use rug::Float;
fn main() {
    let prec = 160u32;
    let (x, y) = (0.3f64, 0.8f64);
    let k = 4u64;
    let beta = 0.2f64;
    let t0 = 1.0f64;
    let pi = Cplx::pi(prec);
    // theta_direct = sum_{(m,n)} conj(w)^k e^{-pi t0 |w|^2}, w = m tau + n + beta
    let mut direct = Cplx::zero(prec);
    let cut = 30i64;
    for m in -cut..=cut {
        for n in -cut..=cut {
            let w = Cplx::from_f64(m as f64 * x + n as f64 + beta, m as f64 * y, prec);
            let e = (-Float::with_val(prec, &pi * &w.norm_sqr()) * Float::with_val(prec, t0)).exp();
            direct = direct.add(&w.conj().powi(k).mul_real(&e));
        }
    }
    // dual = (1/y) (-i)^k t0^{-k-1} sum_{(a,b)} e^{-2 pi i a beta} conj(mu)^k e^{-pi |mu|^2 / t0}
    let mut dual = Cplx::zero(prec);
    for a in -cut..=cut {
        let ang = Float::with_val(prec, -2.0 * a as f64 * beta) * &pi;
        let (s, c) = ang.sin_cos(Float::new(prec));
        let phase = Cplx::new(c, s);
        for b in -cut..=cut {
            let mu = Cplx::from_f64(-(a as f64), (b as f64 - a as f64 * x) / y, prec);
            let e = (-Float::with_val(prec, &pi * &mu.norm_sqr()) / Float::with_val(prec, t0)).exp();
            dual = dual.add(&phase.mul(&mu.conj().powi(k)).mul_real(&e));
        }
    }
    let mi = Cplx::new(Float::with_val(prec, 0), Float::with_val(prec, -1));
    let rhs = dual.mul(&mi.powi(k)).div_real(&Float::with_val(prec, y)).div_real(&Float::with_val(prec, t0.powi(k as i32 + 1)));
    println!("direct = {}", direct.to_string_dec(20));
    println!("rhs    = {}", rhs.to_string_dec(20));
    println!("diff   = {}", direct.sub(&rhs).to_string_dec(10));
}
