//! Closed-form A-polynomials for the base families: torus knots, iterated
//! torus knots, twist knots, and table-backed double twist knots.
//!
//! Twist-knot conventions. The explicit closed form
//! ([`twist_apoly_explicit`]) is the ground truth here. The recursive form
//! ([`twist_apoly_recursive`]) is seeded from its four base polynomials
//! (n = -1, 0, 1, 2) with coefficients `x`, `y`; the widely quoted closed
//! form of `x` drops an `M^8` term relative to the identity
//! `x = (L + M^2) A~(1) + A~(-1)`. The two candidates were compared against
//! the explicit form at build time: the identity form reproduces it exactly
//! for every |n| <= 10 with no mirror step, so that is what ships. A unit
//! test pins the comparison.

use crate::error::{Error, Result};
use crate::laurent2::{FactoredAPoly, GZFactor, LPoly2, NormalForm};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn validate_cable_pair(p: i64, q: i64) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidCable {
            p,
            q,
            reason: "winding number q must be at least 2",
        });
    }
    if p == 0 {
        return Err(Error::InvalidCable {
            p,
            q,
            reason: "p must be nonzero",
        });
    }
    if gcd(p, q) != 1 {
        return Err(Error::InvalidCable {
            p,
            q,
            reason: "p and q must be relatively prime",
        });
    }
    Ok(())
}

pub fn validate_torus(p: i64, q: i64) -> Result<()> {
    if q < 2 || p.abs() <= q {
        return Err(Error::InvalidTorus {
            p,
            q,
            reason: "torus knots require |p| > q >= 2",
        });
    }
    if gcd(p, q) != 1 {
        return Err(Error::InvalidTorus {
            p,
            q,
            reason: "p and q must be relatively prime",
        });
    }
    Ok(())
}

/// The cabling factor `F_(p,q)`: for `q = 2` the single binomial
/// `L M^{2p} + 1` (normal form `L + M^{-2p}` for `p < 0`); for `q > 2` the
/// split binomials `L M^{pq} - 1`, `L M^{pq} + 1` whose product is
/// `L^2 M^{2pq} - 1` up to normalization.
pub fn torus_factor_f(p: i64, q: i64) -> Result<FactoredAPoly> {
    validate_cable_pair(p, q)?;
    let mut out = FactoredAPoly::new();
    if q == 2 {
        out.insert_gz(GZFactor::new(2 * p, -1));
    } else {
        out.insert_gz(GZFactor::new(p * q, 1));
        out.insert_gz(GZFactor::new(p * q, -1));
    }
    Ok(out)
}

/// The cabling factor `G_(p,q)`: the binomial `L M^{pq} - 1`.
pub fn torus_factor_g(p: i64, q: i64) -> Result<GZFactor> {
    validate_cable_pair(p, q)?;
    Ok(GZFactor::new(p * q, 1))
}

/// `A_T(p,q) = (L - 1) F_(p,q)`.
pub fn torus_apoly(p: i64, q: i64) -> Result<FactoredAPoly> {
    validate_torus(p, q)?;
    let mut out = torus_factor_f(p, q)?;
    out.insert_gz(GZFactor::new(0, 1));
    Ok(out)
}

/// Iterated cabling word `[(p_1,q_1), ..., (p_n,q_n)]`: cables over a
/// `(p_n,q_n)`-torus knot, outermost pair first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CablingWord {
    pairs: Vec<(i64, i64)>,
}

impl CablingWord {
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidCablingWord {
                reason: "word must be nonempty".into(),
            });
        }
        for &(p, q) in &pairs {
            validate_cable_pair(p, q)?;
        }
        let &(pn, qn) = pairs.last().unwrap();
        validate_torus(pn, qn).map_err(|_| Error::InvalidCablingWord {
            reason: format!("final pair ({pn},{qn}) must satisfy |p| > q >= 2"),
        })?;
        Ok(CablingWord { pairs })
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }
}

/// A-polynomial of an iterated torus knot: `F` factors through the first
/// even winding number, `G` factors beyond it, each evaluated at
/// `M^(prod of earlier q_j^2)`. With no even winding number every factor
/// uses `F`.
pub fn iterated_torus_apoly(word: &CablingWord) -> Result<FactoredAPoly> {
    let pairs = word.pairs();
    let k = pairs
        .iter()
        .position(|&(_, q)| q % 2 == 0)
        .map(|i| i + 1)
        .unwrap_or(pairs.len());
    let mut out = FactoredAPoly::new();
    out.insert_gz(GZFactor::new(0, 1));
    let mut m_mult: i64 = 1;
    for (i, &(p, q)) in pairs.iter().enumerate() {
        if i < k {
            for f in torus_factor_f(p, q)?.distinct_factors() {
                let g = f.as_gz_factor().expect("F factors are binomial");
                out.insert_gz(GZFactor::new(g.r * m_mult, g.delta));
            }
        } else {
            let g = torus_factor_g(p, q)?;
            out.insert_gz(GZFactor::new(g.r * m_mult, g.delta));
        }
        m_mult *= q * q;
    }
    Ok(out.reduce())
}

// ---------------------------------------------------------------------------
// Twist knots K(n) = J(2, 2n)
// ---------------------------------------------------------------------------

fn binomial(a: i64, k: i64) -> BigInt {
    if k < 0 || a < k {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    out
}

fn div_floor2(a: i64) -> i64 {
    a.div_euclid(2)
}

/// Nontrivial twist-knot factor from the explicit closed form; `A~(0) = 1`.
pub fn twist_apoly_explicit(n: i64) -> NormalForm {
    static CACHE: OnceLock<Mutex<HashMap<i64, NormalForm>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(nf) = cache.lock().unwrap().get(&n) {
        return nf.clone();
    }
    let result = twist_explicit_raw(n)
        .normalize()
        .expect("twist polynomial is nonzero");
    cache.lock().unwrap().insert(n, result.clone());
    result
}

fn twist_explicit_raw(n: i64) -> LPoly2 {
    let l_plus_m2 = LPoly2::from_i64_terms(&[(1, 1, 0), (1, 0, 2)]);
    let one_minus_l = LPoly2::from_i64_terms(&[(1, 0, 0), (-1, 1, 0)]);
    // M^2 - L M^-2
    let m2_minus_lm2 = LPoly2::from_i64_terms(&[(1, 0, 2), (-1, 1, -2)]);
    if n >= 1 {
        let m2_minus_1 = LPoly2::from_i64_terms(&[(1, 0, 2), (-1, 0, 0)]);
        let mut sum = LPoly2::zero();
        for i in 0..=(2 * n - 1) {
            let c = binomial(n + div_floor2(i - 1), i);
            if c.is_zero() {
                continue;
            }
            let term = m2_minus_1
                .pow(i as u32)
                .mul(&l_plus_m2.pow((2 * n - 1 - i) as u32))
                .mul(&one_minus_l.pow(div_floor2(i) as u32))
                .mul(&m2_minus_lm2.pow(div_floor2(i + 1) as u32));
            sum = sum.add(&term.scale(&c));
        }
        sum.mul_monomial(0, 2 * n)
    } else {
        let one_minus_m2 = LPoly2::from_i64_terms(&[(1, 0, 0), (-1, 0, 2)]);
        let mut sum = LPoly2::zero();
        for i in 0..=(-2 * n) {
            let c = binomial(-n + div_floor2(i), i);
            if c.is_zero() {
                continue;
            }
            let term = one_minus_m2
                .pow(i as u32)
                .mul(&l_plus_m2.pow((-2 * n - i) as u32))
                .mul(&one_minus_l.pow(div_floor2(i) as u32))
                .mul(&m2_minus_lm2.pow(div_floor2(i + 1) as u32));
            sum = sum.add(&term.scale(&c));
        }
        sum.mul_monomial(0, -2 * n)
    }
}

/// The recursion coefficient `x = (L + M^2) A~(1) + A~(-1)`.
pub(crate) fn twist_x() -> LPoly2 {
    let l_plus_m2 = LPoly2::from_i64_terms(&[(1, 1, 0), (1, 0, 2)]);
    l_plus_m2.mul(&twist_base(1)).add(&twist_base(-1))
}

/// The recursion coefficient `y = M^4 (L + M^2)^4`.
pub(crate) fn twist_y() -> LPoly2 {
    LPoly2::from_i64_terms(&[(1, 1, 0), (1, 0, 2)])
        .pow(4)
        .mul_monomial(0, 4)
}

fn twist_base(n: i64) -> LPoly2 {
    match n {
        -1 => LPoly2::from_i64_terms(&[
            (1, 0, 4),
            (-1, 1, 0),
            (1, 1, 2),
            (2, 1, 4),
            (1, 1, 6),
            (-1, 1, 8),
            (1, 2, 4),
        ]),
        0 => LPoly2::one(),
        1 => LPoly2::from_i64_terms(&[(1, 1, 0), (1, 0, 6)]),
        2 => LPoly2::from_i64_terms(&[
            (1, 0, 14),
            (1, 1, 4),
            (-1, 1, 6),
            (2, 1, 10),
            (2, 1, 12),
            (-1, 1, 14),
            (-1, 2, 0),
            (2, 2, 2),
            (2, 2, 4),
            (-1, 2, 8),
            (1, 2, 10),
            (1, 3, 0),
        ]),
        _ => unreachable!("twist_base only covers the four seeds"),
    }
}

/// Exact internal representative used by the recursion and by the
/// figure-eight double formula.
pub(crate) fn twist_rep(n: i64) -> LPoly2 {
    static CACHE: OnceLock<Mutex<HashMap<i64, LPoly2>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if (-1..=2).contains(&n) {
        twist_base(n)
    } else if n >= 3 {
        twist_x()
            .mul(&twist_rep(n - 1))
            .sub(&twist_y().mul(&twist_rep(n - 2)))
    } else {
        twist_x()
            .mul(&twist_rep(n + 1))
            .sub(&twist_y().mul(&twist_rep(n + 2)))
    };
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// Nontrivial twist-knot factor from the linear recursion seeded at
/// n = -1, 0, 1, 2.
pub fn twist_apoly_recursive(n: i64) -> NormalForm {
    twist_rep(n)
        .normalize()
        .expect("twist polynomial is nonzero")
}

/// Full twist-knot A-polynomial `(L - 1) A~(K(n))`.
pub fn twist_full_apoly(n: i64) -> FactoredAPoly {
    let mut out = FactoredAPoly::new();
    out.insert_gz(GZFactor::new(0, 1));
    out.insert(twist_apoly_explicit(n));
    out
}

// ---------------------------------------------------------------------------
// Double twist knots J(2m, 2n)
// ---------------------------------------------------------------------------

/// Result of a double-twist-knot lookup: these knots have no general closed
/// form, so absence from the table is a value, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DtkApoly {
    Known(NormalForm),
    Unsupported,
}

impl DtkApoly {
    pub fn known(self) -> Option<NormalForm> {
        match self {
            DtkApoly::Known(nf) => Some(nf),
            DtkApoly::Unsupported => None,
        }
    }
}

/// User-supplied table of factored A-polynomials keyed by knot label
/// (for example `"J(6,10)"`).
#[derive(Clone, Debug, Default)]
pub struct KnotTable {
    entries: HashMap<String, Vec<NormalForm>>,
}

impl KnotTable {
    pub fn empty() -> Self {
        KnotTable::default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn insert(&mut self, label: &str, factors: Vec<NormalForm>) {
        self.entries.insert(
            label.chars().filter(|c| !c.is_whitespace()).collect(),
            factors,
        );
    }

    pub fn get(&self, label: &str) -> Option<&[NormalForm]> {
        let key: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        self.entries.get(&key).map(|v| v.as_slice())
    }

    /// Product of the stored factors for `J(2m, 2n)`, trying the symmetric
    /// label order as well.
    pub fn lookup_j(&self, m: i64, n: i64) -> Option<NormalForm> {
        let labels = [
            format!("J({},{})", 2 * m, 2 * n),
            format!("J({},{})", 2 * n, 2 * m),
        ];
        for label in &labels {
            if let Some(factors) = self.get(label) {
                let mut prod = LPoly2::one();
                for f in factors {
                    prod = prod.mul(f.poly());
                }
                return prod.normalize().ok();
            }
        }
        None
    }
}

/// `A~` of the double twist knot `J(2m, 2n)`: closed forms for `m = 1` or
/// `n = 1` (twist knots, using the symmetry `J(k,l) = J(l,k)`); `m = 0` or
/// `n = 0` is the unknot; anything else must come from the table.
pub fn dtk_apoly(m: i64, n: i64, table: &KnotTable) -> DtkApoly {
    if m == 0 || n == 0 {
        return DtkApoly::Known(NormalForm::one());
    }
    if m == 1 {
        return DtkApoly::Known(twist_apoly_explicit(n));
    }
    if n == 1 {
        return DtkApoly::Known(twist_apoly_explicit(m));
    }
    match table.lookup_j(m, n) {
        Some(nf) => DtkApoly::Known(nf),
        None => DtkApoly::Unsupported,
    }
}

// ---------------------------------------------------------------------------
// The figure-eight double factor P_{K(-1),r}
// ---------------------------------------------------------------------------

/// Twist range over which the figure-eight double formula has been checked
/// against the resultant pipeline.
pub const FIG8_VERIFIED_RANGE: std::ops::RangeInclusive<i64> = -11..=11;

/// The nontrivial satellite factor of the r-twisted Whitehead double of the
/// figure-eight knot:
///
/// `A~(K(r-4)) A~(K(r+4))
///    - L (M^2-1)^3 (M^2+1)^2 (L-M^4) x^2 y (2x^2-y) y^k(r) (L+M^2)^eps(r)`
///
/// where `k(r) = r-4, 0, -r-4` and `eps(r) = -1, 0, 1` on the ranges
/// `r > 4`, `-4 < r <= 4`, `r <= -4`; `eps(r) = -1` is an exact division.
///
/// The correction term is frequently quoted with `(M^2+1)` to the first
/// power, which breaks the balance of the output; the square is the unique
/// variant that keeps every output balanced with even `M`-exponents,
/// reproduces the predicted boundary-slope lists for every |r| <= 11, and
/// passes the resultant-pipeline divisibility checks.
pub fn fig8_satellite_factor(r: i64) -> NormalForm {
    let (k, eps) = if r > 4 {
        (r - 4, -1)
    } else if r > -4 {
        (0, 0)
    } else {
        (-r - 4, 1)
    };
    let x = twist_x();
    let y = twist_y();
    let l_plus_m2 = LPoly2::from_i64_terms(&[(1, 1, 0), (1, 0, 2)]);
    let m2_minus_1 = LPoly2::from_i64_terms(&[(1, 0, 2), (-1, 0, 0)]);
    let m2_plus_1 = LPoly2::from_i64_terms(&[(1, 0, 2), (1, 0, 0)]);
    let l_minus_m4 = LPoly2::from_i64_terms(&[(1, 1, 0), (-1, 0, 4)]);
    let x2 = x.mul(&x);
    let two_x2_minus_y = x2.scale(&BigInt::from(2)).sub(&y);

    let mut corr = LPoly2::var_l()
        .mul(&m2_minus_1.pow(3))
        .mul(&m2_plus_1.pow(2))
        .mul(&l_minus_m4)
        .mul(&x2)
        .mul(&y)
        .mul(&two_x2_minus_y)
        .mul(&y.pow(k as u32));
    corr = match eps {
        -1 => corr
            .try_div_exact(&l_plus_m2)
            .expect("y^k carries (L+M^2)^4k, division is exact"),
        0 => corr,
        1 => corr.mul(&l_plus_m2),
        _ => unreachable!(),
    };
    let head = twist_rep(r - 4).mul(&twist_rep(r + 4));
    head.sub(&corr)
        .normalize()
        .expect("figure-eight factor is nonzero")
}
