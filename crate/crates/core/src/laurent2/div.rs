//! Exact division and gcd machinery over `Z[L, M]`.
//!
//! Division is classical multi-term division by the lex-leading term: for an
//! exact multiple every intermediate remainder stays a multiple of the
//! divisor, so its leading term is divisible and the loop terminates with
//! remainder zero. Any failed step proves non-divisibility. Divisibility in
//! the Laurent ring reduces to this after stripping monomial content from
//! both operands, monomials being units.

use super::LPoly2;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub(super) fn try_div_exact(dividend: &LPoly2, divisor: &LPoly2) -> Option<LPoly2> {
    if divisor.is_zero() {
        return None;
    }
    if dividend.is_zero() {
        return Some(LPoly2::zero());
    }
    let (num, (na, nb)) = dividend.strip_monomial();
    let (den, (da, db)) = divisor.strip_monomial();

    let ((fa, fb), _) = den.lex_leading().unwrap();
    let mut rem = num;
    let mut quot = LPoly2::zero();
    while !rem.is_zero() {
        let ((ra, rb), rc) = rem.lex_leading().unwrap();
        let (qa, qb) = (ra - fa, rb - fb);
        if qa < 0 || qb < 0 {
            return None;
        }
        let fc = den.lex_leading().unwrap().1;
        let (q, r) = rc.div_rem(fc);
        if !r.is_zero() {
            return None;
        }
        let t = LPoly2::monomial(q, qa, qb);
        quot = quot.add(&t);
        rem = rem.sub(&t.mul(&den));
    }
    Some(quot.mul_monomial(na - da, nb - db))
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Z, coefficient vectors in ascending degree.
// ---------------------------------------------------------------------------

pub(crate) type UniPoly = Vec<BigInt>;

pub(crate) fn uni_trim(p: &mut UniPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn uni_deg(p: &UniPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn uni_mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    uni_trim(&mut out);
    out
}

pub(crate) fn uni_scale(a: &UniPoly, c: &BigInt) -> UniPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn uni_sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    uni_trim(&mut out);
    out
}

/// Exact quotient over Z, or None.
pub(crate) fn uni_div_exact(dividend: &UniPoly, divisor: &UniPoly) -> Option<UniPoly> {
    if divisor.is_empty() {
        return None;
    }
    let mut rem = dividend.clone();
    uni_trim(&mut rem);
    if rem.is_empty() {
        return Some(Vec::new());
    }
    let dd = divisor.len() - 1;
    let lead = &divisor[dd];
    if rem.len() - 1 < dd {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    while !rem.is_empty() && rem.len() - 1 >= dd {
        let rd = rem.len() - 1;
        let (q, r) = rem[rd].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        quot[rd - dd] = q.clone();
        for (j, c) in divisor.iter().enumerate() {
            let idx = rd - dd + j;
            let t = c * &q;
            rem[idx] -= t;
        }
        uni_trim(&mut rem);
    }
    if rem.is_empty() {
        uni_trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

pub(crate) fn uni_content(p: &UniPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

fn uni_primitive(p: &UniPoly) -> UniPoly {
    let c = uni_content(p);
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(da-db+1) a = q b + r`.
fn uni_prem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    let mut rem = a.clone();
    while uni_deg(&rem).is_some_and(|d| d >= db) {
        let rd = rem.len() - 1;
        let coef = rem[rd].clone();
        rem = uni_scale(&rem, &lead);
        let shift = rd - db;
        for (j, c) in b.iter().enumerate() {
            let t = c * &coef;
            rem[shift + j] -= t;
        }
        uni_trim(&mut rem);
    }
    rem
}

/// Positive-content gcd over Z via a primitive PRS.
pub(crate) fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut f = a.clone();
    let mut g = b.clone();
    uni_trim(&mut f);
    uni_trim(&mut g);
    if f.is_empty() {
        return uni_abs_lead(g);
    }
    if g.is_empty() {
        return uni_abs_lead(f);
    }
    let content = uni_content(&f).gcd(&uni_content(&g));
    f = uni_primitive(&f);
    g = uni_primitive(&g);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = uni_prem(&f, &g);
        if r.is_empty() {
            let mut out = uni_scale(&uni_primitive(&g), &content);
            if out.last().is_some_and(Signed::is_negative) {
                out = out.iter().map(|c| -c).collect();
            }
            return out;
        }
        f = g;
        g = uni_primitive(&r);
    }
}

fn uni_abs_lead(mut p: UniPoly) -> UniPoly {
    if p.last().is_some_and(Signed::is_negative) {
        p = p.iter().map(|c| -c).collect();
    }
    p
}

// ---------------------------------------------------------------------------
// Bivariate gcd via a primitive PRS in L over Z[M].
// ---------------------------------------------------------------------------

/// `M`-only polynomial to univariate coefficients and back.
fn to_uni_m(p: &LPoly2) -> UniPoly {
    let deg = p.deg_m();
    let mut out = vec![BigInt::zero(); (deg + 1) as usize];
    for (&(a, b), c) in p.terms() {
        assert!(a == 0 && b >= 0, "expected a plain polynomial in M");
        out[b as usize] = c.clone();
    }
    uni_trim(&mut out);
    out
}

fn from_uni_m(p: &UniPoly) -> LPoly2 {
    LPoly2::from_terms(
        p.iter()
            .enumerate()
            .map(|(b, c)| ((0, b as i64), c.clone())),
    )
}

/// Content of `f` with respect to `L`: gcd in Z[M] of the `L`-coefficients.
fn content_wrt_l(f: &LPoly2) -> LPoly2 {
    let coeffs = f.l_coefficients();
    let mut g: UniPoly = Vec::new();
    for c in &coeffs {
        if c.is_zero() {
            continue;
        }
        g = uni_gcd(&g, &to_uni_m(c));
        if g.len() == 1 && g[0].abs() == BigInt::from(1) {
            break;
        }
    }
    from_uni_m(&g)
}

/// gcd of two plain (nonnegative-exponent) bivariate polynomials, up to sign;
/// the result has positive lex-leading coefficient. Laurent inputs are
/// reduced to plain ones by stripping monomial content.
pub fn bivariate_gcd(a: &LPoly2, b: &LPoly2) -> LPoly2 {
    if a.is_zero() {
        return normalize_sign(b.strip_monomial().0);
    }
    if b.is_zero() {
        return normalize_sign(a.strip_monomial().0);
    }
    let (mut f, _) = a.strip_monomial();
    let (mut g, _) = b.strip_monomial();

    let cf = content_wrt_l(&f);
    let cg = content_wrt_l(&g);
    let content = from_uni_m(&uni_gcd(&to_uni_m(&cf), &to_uni_m(&cg)));
    f = f.try_div_exact(&cf).expect("content divides");
    g = g.try_div_exact(&cg).expect("content divides");

    if f.deg_l() < g.deg_l() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.deg_l() == 0 {
            // primitive in L, so the remaining gcd is carried by the content
            return normalize_sign(content);
        }
        let r = prem_l(&f, &g);
        if r.is_zero() {
            let cg = content_wrt_l(&g);
            let pp = g.try_div_exact(&cg).expect("content divides");
            return normalize_sign(pp.mul(&content));
        }
        f = g;
        let cr = content_wrt_l(&r);
        g = r.try_div_exact(&cr).expect("content divides");
    }
}

fn normalize_sign(p: LPoly2) -> LPoly2 {
    match p.lex_leading() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// Pseudo-remainder in `L` over Z[M].
fn prem_l(a: &LPoly2, b: &LPoly2) -> LPoly2 {
    let db = b.deg_l();
    let lead = b.l_coefficient(db);
    let mut rem = a.clone();
    while !rem.is_zero() && rem.deg_l() >= db {
        let rd = rem.deg_l();
        let coef = rem.l_coefficient(rd);
        rem = rem.mul(&lead);
        let t = coef.mul(b).mul_monomial(rd - db, 0);
        rem = rem.sub(&t);
    }
    rem
}

/// Partial derivative with respect to `L` (or `M` with `by_m`).
fn derivative(f: &LPoly2, by_m: bool) -> LPoly2 {
    LPoly2::from_terms(f.terms().filter_map(|(&(a, b), c)| {
        let (e, rest) = if by_m { (b, (a, b - 1)) } else { (a, (a - 1, b)) };
        if e == 0 {
            None
        } else {
            Some((rest, c * BigInt::from(e)))
        }
    }))
}

/// Squarefree part: the product of the distinct irreducible factors, up to
/// sign and monomials. This realizes polynomial reduction on an expanded
/// polynomial without factoring it.
pub fn squarefree_part(f: &LPoly2) -> LPoly2 {
    let (p, _) = f.strip_monomial();
    if p.num_terms() <= 1 {
        return LPoly2::one();
    }
    let dl = derivative(&p, false);
    let dm = derivative(&p, true);
    let mut g = bivariate_gcd(&p, &dl);
    g = bivariate_gcd(&g, &dm);
    let sf = p.try_div_exact(&g).expect("gcd divides");
    let c = sf.content().expect("nonzero");
    normalize_sign(sf.try_div_exact(&LPoly2::monomial(c, 0, 0)).unwrap())
}
