//! Detection of polynomials that are a monomial times a product of
//! cyclotomic polynomials evaluated on monomials.
//!
//! Such polynomials have collinear support; collapsing along the primitive
//! support direction leaves a univariate polynomial, which is tested by
//! trial division against every `Phi_n` whose degree `phi(n)` can still fit.

use super::div::{uni_content, uni_div_exact, UniPoly};
use super::{LPoly2, NormalForm};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Coefficients of the n-th cyclotomic polynomial, ascending degree.
///
/// Computed by exact division of `x^n - 1` by the proper cyclotomic divisors
/// and memoized behind a lock.
pub fn cyclotomic_poly(n: u64) -> UniPoly {
    static CACHE: OnceLock<Mutex<HashMap<u64, UniPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = compute_cyclotomic(n);
    cache.lock().unwrap().insert(n, result.clone());
    result
}

fn compute_cyclotomic(n: u64) -> UniPoly {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![BigInt::zero(); (n + 1) as usize];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = uni_div_exact(&num, &phi_d).expect("cyclotomic division is exact");
        }
    }
    num
}

fn euler_phi(mut n: u64) -> u64 {
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

/// Is the univariate polynomial `± a product of cyclotomic polynomials`?
///
/// Candidates n are enumerated up to `6 d^2`, a safe over-bound for
/// `phi(n) <= d`.
fn is_cyclotomic_product(poly: &UniPoly) -> bool {
    let mut p = poly.clone();
    if p.is_empty() {
        return false;
    }
    if !uni_content(&p).is_one() {
        return false;
    }
    while p.len() > 1 {
        let deg = (p.len() - 1) as u64;
        let bound = 6 * deg * deg;
        let mut divided = false;
        for n in 1..=bound {
            if euler_phi(n) > deg {
                continue;
            }
            let phi_n = cyclotomic_poly(n);
            if let Some(q) = uni_div_exact(&p, &phi_n) {
                p = q;
                divided = true;
                break;
            }
        }
        if !divided {
            return false;
        }
    }
    // primitive constant remainder is ±1
    true
}

/// True iff the support of `f` is collinear in exponent space and the
/// collapsed univariate polynomial is ± a product of cyclotomic polynomials.
///
/// Errors on a non-primitive input; a monomial (constant normal form) counts
/// as the empty product.
pub fn is_cyclotomic_at_monomial(f: &NormalForm) -> Result<bool> {
    let p = f.poly();
    let content = p.content()?;
    if !content.is_one() {
        return Err(Error::NotPrimitive {
            content: content.to_string(),
        });
    }
    let support: Vec<(i64, i64)> = p.terms().map(|(&e, _)| e).collect();
    if support.len() == 1 {
        return Ok(true);
    }
    let base = support[0];
    let dir = (support[1].0 - base.0, support[1].1 - base.1);
    let g = dir.0.abs().gcd(&dir.1.abs());
    let dir = (dir.0 / g, dir.1 / g);
    let mut indices = Vec::with_capacity(support.len());
    for &(a, b) in &support {
        let (da, db) = (a - base.0, b - base.1);
        if da * dir.1 != db * dir.0 {
            return Ok(false); // support not collinear
        }
        let k = if dir.0 != 0 { da / dir.0 } else { db / dir.1 };
        if (dir.0 * k, dir.1 * k) != (da, db) {
            return Ok(false); // off-lattice along the direction
        }
        indices.push(k);
    }
    let min_k = *indices.iter().min().unwrap();
    let max_k = *indices.iter().max().unwrap();
    let mut uni = vec![BigInt::zero(); (max_k - min_k + 1) as usize];
    for (&(a, b), c) in p.terms() {
        let (da, db) = (a - base.0, b - base.1);
        let k = if dir.0 != 0 { da / dir.0 } else { db / dir.1 };
        uni[(k - min_k) as usize] = c.clone();
    }
    Ok(is_cyclotomic_product(&uni))
}

/// Collinearity helper shared with the membership predicates: true if the
/// whole support lies on one line.
pub(crate) fn support_is_collinear(p: &LPoly2) -> bool {
    let support: Vec<(i64, i64)> = p.terms().map(|(&e, _)| e).collect();
    if support.len() <= 2 {
        return true;
    }
    let base = support[0];
    let dir = (support[1].0 - base.0, support[1].1 - base.1);
    support
        .iter()
        .all(|&(a, b)| (a - base.0) * dir.1 == (b - base.1) * dir.0)
}
