//! Exact bivariate integer Laurent polynomials in the variables `L` and `M`.
//!
//! [`LPoly2`] is the universal coefficient object of the crate: a finite map
//! from exponent pairs `(expL, expM)` to arbitrary-precision integers, with
//! zero coefficients pruned. Exponents may be negative. [`NormalForm`] fixes
//! a canonical representative of the equivalence class of a nonzero
//! polynomial under multiplication by `±L^a M^b`, and [`FactoredAPoly`] is a
//! multiset of normal forms representing an A-polynomial up to that
//! equivalence.

mod cyclotomic;
mod div;
mod resultant;
mod text;

pub use cyclotomic::{cyclotomic_poly, is_cyclotomic_at_monomial};
pub use div::{bivariate_gcd, squarefree_part};
pub use resultant::{resultant_aux, AuxPoly};
pub(crate) use div::{uni_div_exact, uni_gcd};
pub(crate) use resultant::{bareiss_det, DetRing};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Bivariate integer Laurent polynomial in `L` and `M`.
///
/// Invariant: no stored coefficient is zero. Two polynomials are equal iff
/// their term maps are identical. All operations are pure; values are
/// immutable after construction and safe to share across threads.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct LPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LPoly2 {
    pub fn zero() -> Self {
        LPoly2::default()
    }

    pub fn one() -> Self {
        LPoly2::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        LPoly2::monomial(c.into(), 0, 0)
    }

    /// `c * L^a * M^b`
    pub fn monomial(c: BigInt, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        LPoly2 { terms }
    }

    pub fn var_l() -> Self {
        LPoly2::monomial(BigInt::one(), 1, 0)
    }

    pub fn var_m() -> Self {
        LPoly2::monomial(BigInt::one(), 0, 1)
    }

    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), BigInt)>,
    {
        let mut p = LPoly2::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from `(coeff, expL, expM)` triples with small
    /// coefficients, used heavily in tests.
    pub fn from_i64_terms(terms: &[(i64, i64, i64)]) -> Self {
        LPoly2::from_terms(terms.iter().map(|&(c, a, b)| ((a, b), BigInt::from(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp_l: i64, exp_m: i64) -> BigInt {
        self.terms.get(&(exp_l, exp_m)).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, exp: (i64, i64), c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LPoly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LPoly2::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LPoly2::zero();
        }
        LPoly2 {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, a: i64, b: i64) -> Self {
        LPoly2 {
            terms: self
                .terms
                .iter()
                .map(|((x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LPoly2::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Minimum `(expL, expM)` over the support, componentwise.
    pub fn min_exps(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(a, b), &(x, y)| (a.min(x), b.min(y))))
    }

    pub fn max_exps(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(a, b), &(x, y)| (a.max(x), b.max(y))))
    }

    /// Lexicographically greatest term, ordered by `expL` then `expM`.
    pub fn lex_leading(&self) -> Option<((i64, i64), &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Degree in `L` of a polynomial with nonnegative `L`-exponents.
    pub fn deg_l(&self) -> i64 {
        self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    pub fn deg_m(&self) -> i64 {
        self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0)
    }

    /// Coefficient of `L^k` as a polynomial in `M` alone.
    pub fn l_coefficient(&self, k: i64) -> LPoly2 {
        LPoly2 {
            terms: self
                .terms
                .iter()
                .filter(|((a, _), _)| *a == k)
                .map(|((_, b), c)| ((0, *b), c.clone()))
                .collect(),
        }
    }

    /// View as a polynomial in `L` with `M`-only coefficients, lowest degree
    /// first. Requires nonnegative `L`-exponents.
    pub fn l_coefficients(&self) -> Vec<LPoly2> {
        if self.is_zero() {
            return Vec::new();
        }
        let min_l = self.terms.keys().map(|&(a, _)| a).min().unwrap();
        assert!(min_l >= 0, "l_coefficients requires nonnegative L-exponents");
        let deg = self.deg_l();
        (0..=deg).map(|k| self.l_coefficient(k)).collect()
    }

    /// The involution `L -> 1/L`, `M -> 1/M`.
    pub fn involution_tau(&self) -> Self {
        LPoly2 {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((-a, -b), c.clone()))
                .collect(),
        }
    }

    /// Substitute `M -> 1/M` without normalizing.
    pub fn subst_m_inverse(&self) -> Self {
        LPoly2 {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((*a, -b), c.clone()))
                .collect(),
        }
    }

    /// Substitute `M -> M^q`, multiplying every `M`-exponent by `q >= 1`.
    pub fn subst_m_power(&self, q: i64) -> Self {
        assert!(q >= 1, "subst_m_power requires q >= 1");
        LPoly2 {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((*a, b * q), c.clone()))
                .collect(),
        }
    }

    /// gcd of all coefficients, as a positive integer.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.content()?.is_one())
    }

    pub fn primitive_part(&self) -> Result<LPoly2> {
        let c = self.content()?;
        Ok(LPoly2 {
            terms: self.terms.iter().map(|(e, k)| (*e, k / &c)).collect(),
        })
    }

    /// Strip monomial content: shift so both minimum exponents are zero.
    /// Returns the shifted polynomial and the stripped monomial `(a, b)`.
    pub fn strip_monomial(&self) -> (LPoly2, (i64, i64)) {
        match self.min_exps() {
            None => (LPoly2::zero(), (0, 0)),
            Some((a, b)) => (self.mul_monomial(-a, -b), (a, b)),
        }
    }

    /// Canonical representative under `f ~ sigma L^a M^b f`: minimum
    /// exponents zero, lex-leading coefficient positive.
    pub fn normalize(&self) -> Result<NormalForm> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut p, _) = self.strip_monomial();
        let (_, lead) = p.lex_leading().unwrap();
        if lead.is_negative() {
            p = p.neg();
        }
        Ok(NormalForm(p))
    }

    /// Equality up to multiplication by `±L^a M^b`.
    pub fn doteq(&self, other: &Self) -> Result<bool> {
        Ok(self.normalize()? == other.normalize()?)
    }

    /// `M -> 1/M`, then normalize (the A-polynomial of the mirror image).
    pub fn mirror(&self) -> Result<NormalForm> {
        self.subst_m_inverse().normalize()
    }

    /// Balanced: invariant up to `≐` under `(L, M) -> (1/L, 1/M)`.
    pub fn is_balanced(&self) -> Result<bool> {
        self.involution_tau().doteq(self)
    }

    /// True if every `M`-exponent in the support is even.
    pub fn has_even_m_exponents(&self) -> bool {
        self.terms.keys().all(|&(_, b)| b % 2 == 0)
    }

    /// Exact quotient `self / divisor` in the Laurent ring, if it exists.
    pub fn try_div_exact(&self, divisor: &Self) -> Option<LPoly2> {
        div::try_div_exact(self, divisor)
    }

    /// Evaluate at integer arguments. Negative exponents are only allowed
    /// for arguments of magnitude 1.
    pub fn eval_bigint(&self, l: &BigInt, m: &BigInt) -> BigInt {
        fn ipow(base: &BigInt, e: i64) -> BigInt {
            if e >= 0 {
                base.pow(e as u32)
            } else {
                let mag: BigInt = base.magnitude().clone().into();
                assert!(mag.is_one(), "negative exponent at non-unit argument");
                base.pow((-e) as u32)
            }
        }
        let mut acc = BigInt::zero();
        for ((a, b), c) in &self.terms {
            acc += c * ipow(l, *a) * ipow(m, *b);
        }
        acc
    }

    /// Largest absolute coefficient value.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// JSON representation: `[coeff-string, expL, expM]` triples.
    pub fn to_triples(&self) -> Vec<(String, i64, i64)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| (c.to_string(), a, b))
            .collect();
        // diff-stable output order: expL descending, then expM descending
        out.sort_by(|x, y| (y.1, y.2).cmp(&(x.1, x.2)));
        out
    }

    pub fn from_triples(triples: &[(String, i64, i64)]) -> Result<LPoly2> {
        let mut p = LPoly2::zero();
        for (c, a, b) in triples {
            let c: BigInt = c.parse().map_err(|_| Error::Validation {
                msg: format!("bad coefficient string {c:?}"),
            })?;
            p.add_term((*a, *b), c);
        }
        Ok(p)
    }

    pub fn parse_text(src: &str) -> Result<LPoly2> {
        text::parse_poly(src)
    }
}

impl fmt::Display for LPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::format_poly(self, f)
    }
}

impl fmt::Debug for LPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPoly2({self})")
    }
}

impl serde::Serialize for LPoly2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for LPoly2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(String, i64, i64)>::deserialize(d)?;
        LPoly2::from_triples(&triples).map_err(serde::de::Error::custom)
    }
}

/// A nonzero polynomial in canonical position: both minimum exponents are
/// zero and the lex-leading coefficient is positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm(LPoly2);

impl NormalForm {
    pub fn poly(&self) -> &LPoly2 {
        &self.0
    }

    pub fn into_poly(self) -> LPoly2 {
        self.0
    }

    pub fn one() -> NormalForm {
        NormalForm(LPoly2::one())
    }

    pub fn is_one(&self) -> bool {
        self.0 == LPoly2::one()
    }

    /// Constant normal forms are exactly the images of monomials.
    pub fn is_constant(&self) -> bool {
        self.0.num_terms() <= 1
    }

    pub fn as_gz_factor(&self) -> Option<GZFactor> {
        GZFactor::from_normal_form(self)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({})", self.0)
    }
}

/// The binomial `L M^r - delta` up to normalization; for `r < 0` the normal
/// form is `L - delta M^{-r}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct GZFactor {
    pub r: i64,
    pub delta: i8,
}

impl GZFactor {
    pub fn new(r: i64, delta: i8) -> Self {
        assert!(delta == 1 || delta == -1, "delta must be +1 or -1");
        GZFactor { r, delta }
    }

    pub fn to_normal_form(self) -> NormalForm {
        let d = BigInt::from(self.delta);
        let p = if self.r >= 0 {
            // L M^r - delta
            LPoly2::from_terms([((1, self.r), BigInt::one()), ((0, 0), -d)])
        } else {
            // L - delta M^{-r}
            LPoly2::from_terms([((1, 0), BigInt::one()), ((0, -self.r), -d)])
        };
        NormalForm(p)
    }

    pub fn from_normal_form(nf: &NormalForm) -> Option<GZFactor> {
        let p = nf.poly();
        if p.num_terms() != 2 {
            return None;
        }
        let mut it = p.terms();
        let (&(a0, b0), c0) = it.next().unwrap();
        let (&(a1, b1), c1) = it.next().unwrap();
        if !c0.abs().is_one() || !c1.abs().is_one() {
            return None;
        }
        // BTreeMap order puts (a0,b0) < (a1,b1); normal form leading term is
        // the second one, with L-exponent 1 for a G_Z shape.
        if (a1, b1) == (1, 0) && a0 == 0 && b0 >= 0 {
            // L - delta M^{b0}  =>  r = -b0
            let delta = if c0.is_negative() { 1 } else { -1 };
            Some(GZFactor::new(-b0, delta))
        } else if a1 == 1 && b1 >= 0 && (a0, b0) == (0, 0) {
            // L M^{b1} - delta
            let delta = if c0.is_negative() { 1 } else { -1 };
            Some(GZFactor::new(b1, delta))
        } else {
            None
        }
    }
}

/// Multiset of normal-form factors representing an A-polynomial up to `≐`.
///
/// Constant factors (the images of monomials under normalization) are
/// silently dropped on insertion, so no factor is the constant 1 or a pure
/// monomial.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct FactoredAPoly {
    factors: BTreeMap<NormalForm, usize>,
}

impl FactoredAPoly {
    pub fn new() -> Self {
        FactoredAPoly::default()
    }

    pub fn unknot() -> Self {
        let mut a = FactoredAPoly::new();
        a.insert_gz(GZFactor::new(0, 1));
        a
    }

    pub fn insert(&mut self, nf: NormalForm) {
        if nf.is_constant() {
            return;
        }
        *self.factors.entry(nf).or_insert(0) += 1;
    }

    pub fn insert_gz(&mut self, g: GZFactor) {
        self.insert(g.to_normal_form());
    }

    pub fn from_factors<I: IntoIterator<Item = NormalForm>>(iter: I) -> Self {
        let mut a = FactoredAPoly::new();
        for nf in iter {
            a.insert(nf);
        }
        a
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of distinct factors.
    pub fn num_distinct(&self) -> usize {
        self.factors.len()
    }

    /// Total number of factors counted with multiplicity.
    pub fn num_with_multiplicity(&self) -> usize {
        self.factors.values().sum()
    }

    pub fn multiplicity(&self, nf: &NormalForm) -> usize {
        self.factors.get(nf).copied().unwrap_or(0)
    }

    pub fn contains(&self, nf: &NormalForm) -> bool {
        self.multiplicity(nf) > 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalForm, usize)> {
        self.factors.iter().map(|(nf, &m)| (nf, m))
    }

    pub fn distinct_factors(&self) -> impl Iterator<Item = &NormalForm> {
        self.factors.keys()
    }

    /// Remove one copy of a factor. Returns false if absent.
    pub fn remove_one(&mut self, nf: &NormalForm) -> bool {
        match self.factors.get_mut(nf) {
            None => false,
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    self.factors.remove(nf);
                }
                true
            }
        }
    }

    /// Polynomial reduction: collapse all multiplicities to 1. Idempotent.
    pub fn reduce(&self) -> FactoredAPoly {
        FactoredAPoly {
            factors: self.factors.keys().map(|nf| (nf.clone(), 1)).collect(),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.factors.values().all(|&m| m == 1)
    }

    /// Exact product of all factors with multiplicity; the empty product is 1.
    pub fn expand(&self) -> LPoly2 {
        let mut out = LPoly2::one();
        for (nf, m) in self.iter() {
            for _ in 0..m {
                out = out.mul(nf.poly());
            }
        }
        out
    }

    /// All factors as G_Z binomials, or the offending factor.
    pub fn gz_factors(&self) -> Result<Vec<GZFactor>> {
        let mut out = Vec::new();
        for (nf, m) in self.iter() {
            let g = nf.as_gz_factor().ok_or_else(|| Error::CompanionNotGz {
                factor: nf.to_string(),
            })?;
            for _ in 0..m {
                out.push(g);
            }
        }
        Ok(out)
    }

    pub fn is_all_gz(&self) -> bool {
        self.distinct_factors().all(|nf| nf.as_gz_factor().is_some())
    }
}

impl fmt::Display for FactoredAPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (nf, m) in self.iter() {
            for _ in 0..m {
                if !first {
                    write!(f, " * ")?;
                }
                write!(f, "({nf})")?;
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
