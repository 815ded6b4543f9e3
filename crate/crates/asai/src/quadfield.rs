//! Imaginary quadratic fields of fundamental discriminant -D and the
//! splitting behaviour of rational primes in them.

use crate::error::{AsaiError, Result};
use serde::{Deserialize, Serialize};

/// Kronecker symbol (a | n), full generality.
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // factor out 2s from n
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a|2) = 1 if a = ±1 mod 8, -1 if a = ±3 mod 8
        let m = a.rem_euclid(8);
        let s2 = if m == 1 || m == 7 { 1 } else { -1 };
        if twos % 2 == 1 {
            result *= s2;
        }
    }
    // now n odd positive; Jacobi with reciprocity
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let m = n.rem_euclid(8);
            if m == 3 || m == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

fn is_squarefree(mut n: u64) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        while n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// The field Q(sqrt(-D)) for -D a fundamental discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImagQuadField {
    /// Discriminant is -D, D > 0.
    pub d: u64,
}

impl ImagQuadField {
    pub fn new(d: u64) -> Result<Self> {
        let fundamental = if d % 4 == 3 {
            is_squarefree(d)
        } else if d % 4 == 0 {
            let m = d / 4;
            (m % 4 == 1 || m % 4 == 2) && is_squarefree(m)
        } else {
            false
        };
        if !fundamental {
            return Err(AsaiError::pre(format!("-{d} is not a fundamental discriminant")));
        }
        Ok(ImagQuadField { d })
    }

    /// The module generator a with O_F = Z + Z a and a - conj(a) = sqrt(-D),
    /// presented as (u + v sqrt(-D))/2.
    pub fn a_gen(&self) -> (i64, i64) {
        if self.d % 4 == 3 {
            (1, 1)
        } else {
            (0, 1)
        }
    }

    pub fn split_prime(&self, ell: u64) -> PrimeSplitting {
        split_prime(self, ell)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

/// How the rational prime ell decomposes in O_F.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplitting {
    pub ell: u64,
    pub kind: SplitKind,
    pub residue_degree: u32,
    /// Abstract labels with norms; one entry for inert/ramified, two for split.
    pub primes_above: Vec<PrimeIdealLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdealLabel {
    pub label: String,
    pub norm: u64,
}

pub fn split_prime(field: &ImagQuadField, ell: u64) -> PrimeSplitting {
    let d = field.d;
    let sym = kronecker_symbol(-(d as i64), ell as i64);
    let (kind, residue_degree, primes_above) = match sym {
        0 => (
            SplitKind::Ramified,
            1,
            vec![PrimeIdealLabel {
                label: format!("l{ell}"),
                norm: ell,
            }],
        ),
        1 => (
            SplitKind::Split,
            1,
            vec![
                PrimeIdealLabel {
                    label: format!("l{ell}"),
                    norm: ell,
                },
                PrimeIdealLabel {
                    label: format!("l{ell}bar"),
                    norm: ell,
                },
            ],
        ),
        _ => (
            SplitKind::Inert,
            2,
            vec![PrimeIdealLabel {
                label: format!("l{ell}"),
                norm: ell * ell,
            }],
        ),
    };
    PrimeSplitting {
        ell,
        kind,
        residue_degree,
        primes_above,
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return vec![];
    }
    let mut sieve = vec![true; bound as usize];
    let mut out = vec![];
    for i in 2..bound as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < bound as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integers_splitting() {
        let f = ImagQuadField::new(4).unwrap();
        assert_eq!(f.split_prime(5).kind, SplitKind::Split);
        assert_eq!(f.split_prime(3).kind, SplitKind::Inert);
        assert_eq!(f.split_prime(2).kind, SplitKind::Ramified);
        assert_eq!(f.split_prime(3).primes_above[0].norm, 9);
    }

    #[test]
    fn rejects_non_fundamental() {
        assert!(ImagQuadField::new(5).is_err()); // -5 = 3 mod 4 fails
        assert!(ImagQuadField::new(12).is_err()); // 12/4 = 3 = 3 mod 4
        assert!(ImagQuadField::new(9).is_err()); // not squarefree
        assert!(ImagQuadField::new(3).is_ok());
        assert!(ImagQuadField::new(8).is_ok());
        assert!(ImagQuadField::new(7).is_ok());
        assert!(ImagQuadField::new(20).is_ok()); // m = 5 = 1 mod 4
    }

    #[test]
    fn a_gen_trace_free_part() {
        // a - conj(a) = v sqrt(-D) must have v = 1
        for d in [3u64, 4, 7, 8, 11, 20] {
            let f = ImagQuadField::new(d).unwrap();
            assert_eq!(f.a_gen().1, 1);
        }
    }

    /// Splitting must match the factorization of the minimal polynomial of
    /// the module generator over Z/ell.
    #[test]
    fn splitting_matches_minpoly_factorization() {
        let fields: Vec<u64> = vec![3, 4, 7, 8, 11, 15, 19, 20, 24, 43];
        for d in fields {
            let f = ImagQuadField::new(d).unwrap();
            for ell in primes_below(500) {
                // minimal polynomial of a: x^2 + x + (1+D)/4 or x^2 + D/4
                let (b, c) = if d % 4 == 3 {
                    (1u64, (1 + d) / 4)
                } else {
                    (0u64, d / 4)
                };
                let mut roots = 0u32;
                let mut double = false;
                for x in 0..ell {
                    let v = (x * x + b * x + c) % ell;
                    if v == 0 {
                        roots += 1;
                        // double root iff 2x + b = 0 mod ell
                        if (2 * x + b) % ell == 0 {
                            double = true;
                        }
                    }
                }
                let expect = if roots == 2 {
                    SplitKind::Split
                } else if roots == 0 {
                    SplitKind::Inert
                } else {
                    assert!(double || ell == 2);
                    SplitKind::Ramified
                };
                assert_eq!(
                    f.split_prime(ell).kind,
                    expect,
                    "D = {d}, ell = {ell}"
                );
            }
        }
    }
}
