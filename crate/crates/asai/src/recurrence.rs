//! Minimal linear-recurrence detection over the exact coefficient field, by
//! Gaussian elimination on the Hankel-style systems coming from power
//! series. No floating point: degree bounds are asserted exactly.

use crate::numfield::{NfElt, NumberField};

/// Solve M x = rhs over the field by exact Gaussian elimination.
/// M is given in row-major order. Returns None if inconsistent; free
/// variables (underdetermined systems) are set to zero.
pub fn solve_linear(
    kf: &NumberField,
    rows: usize,
    cols: usize,
    m: &[NfElt],
    rhs: &[NfElt],
) -> Option<Vec<NfElt>> {
    assert_eq!(m.len(), rows * cols);
    assert_eq!(rhs.len(), rows);
    let mut a: Vec<NfElt> = m.to_vec();
    let mut b: Vec<NfElt> = rhs.to_vec();
    let mut pivot_col_of_row = vec![usize::MAX; rows];
    let mut r = 0usize;
    for c in 0..cols {
        // find pivot
        let mut piv = None;
        for i in r..rows {
            if !kf.is_zero(&a[i * cols + c]) {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        for j in 0..cols {
            a.swap(r * cols + j, p * cols + j);
        }
        b.swap(r, p);
        let inv = kf.inv(&a[r * cols + c]).expect("pivot invertible");
        for j in c..cols {
            a[r * cols + j] = kf.mul(&a[r * cols + j], &inv);
        }
        b[r] = kf.mul(&b[r], &inv);
        for i in 0..rows {
            if i != r && !kf.is_zero(&a[i * cols + c]) {
                let f = a[i * cols + c].clone();
                for j in c..cols {
                    let t = kf.mul(&f, &a[r * cols + j]);
                    a[i * cols + j] = kf.sub(&a[i * cols + j], &t);
                }
                let t = kf.mul(&f, &b[r]);
                b[i] = kf.sub(&b[i], &t);
            }
        }
        pivot_col_of_row[r] = c;
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency: zero rows must have zero rhs
    for i in r..rows {
        if !kf.is_zero(&b[i]) {
            return None;
        }
    }
    let mut x = vec![kf.zero(); cols];
    for i in 0..r {
        let c = pivot_col_of_row[i];
        // x_c = b_i - sum_{j > c} a_{ij} x_j ; with free vars zero and the
        // matrix in reduced form, x_c = b_i minus contributions of later
        // pivot columns (all zero at this point since we reduced fully).
        x[c] = b[i].clone();
    }
    Some(x)
}

/// Find the minimal-degree denominator Q with Q(0) = 1, deg Q <= max_deg,
/// such that series(X) * Q(X) is a polynomial of degree <= num_deg, exactly
/// to the full length of `series`. Returns (numerator, denominator).
pub fn rational_reconstruct(
    kf: &NumberField,
    series: &[NfElt],
    num_deg: usize,
    max_deg: usize,
) -> Option<(Vec<NfElt>, Vec<NfElt>)> {
    let len = series.len();
    assert!(len > num_deg + max_deg, "series too short for the degree bounds");
    'deg: for d in 0..=max_deg {
        // unknowns q_1..q_d; equations: for n = num_deg+1 .. len-1:
        // a_n + sum_{j=1..d} q_j a_{n-j} = 0  (a_i = 0 for i < 0)
        let rows: Vec<usize> = ((num_deg + 1)..len).collect();
        let mut m = Vec::with_capacity(rows.len() * d);
        let mut rhs = Vec::with_capacity(rows.len());
        for &n in &rows {
            for j in 1..=d {
                let v = if n >= j { series[n - j].clone() } else { kf.zero() };
                m.push(v);
            }
            rhs.push(kf.neg(&series[n]));
        }
        let Some(q) = solve_linear(kf, rows.len(), d, &m, &rhs) else {
            continue 'deg;
        };
        // assemble Q and verify the product exactly
        let mut den = vec![kf.one()];
        den.extend(q);
        let mut num = vec![kf.zero(); num_deg + 1];
        for n in 0..len {
            let mut acc = kf.zero();
            for (j, qj) in den.iter().enumerate() {
                if n >= j {
                    acc = kf.add(&acc, &kf.mul(qj, &series[n - j]));
                }
            }
            if n <= num_deg {
                num[n] = acc;
            } else if !kf.is_zero(&acc) {
                continue 'deg;
            }
        }
        // trim trailing zeros of den for a clean degree
        while den.len() > 1 && kf.is_zero(den.last().unwrap()) {
            den.pop();
        }
        while num.len() > 1 && kf.is_zero(num.last().unwrap()) {
            num.pop();
        }
        return Some((num, den));
    }
    None
}
