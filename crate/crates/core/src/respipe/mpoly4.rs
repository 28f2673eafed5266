//! Exact polynomials in `L, M, t, u` with nonnegative exponents and
//! arbitrary-precision integer coefficients: the coefficient object of the
//! twisted-gluing resultant pipeline.

use crate::laurent2::{DetRing, LPoly2};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub const VAR_L: usize = 0;
pub const VAR_M: usize = 1;
pub const VAR_T: usize = 2;
pub const VAR_U: usize = 3;

pub type Exp4 = [i64; 4];

/// Plain (non-Laurent) polynomial in `L, M, t, u`; no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly4 {
    terms: BTreeMap<Exp4, BigInt>,
}

impl MPoly4 {
    pub fn zero() -> Self {
        MPoly4::default()
    }

    pub fn one() -> Self {
        MPoly4::monomial(BigInt::one(), [0, 0, 0, 0])
    }

    pub fn monomial(c: BigInt, e: Exp4) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            debug_assert!(e.iter().all(|&x| x >= 0));
            terms.insert(e, c);
        }
        MPoly4 { terms }
    }

    pub fn from_i64_terms(list: &[(i64, Exp4)]) -> Self {
        let mut p = MPoly4::zero();
        for &(c, e) in list {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp4, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Exp4, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
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
        MPoly4 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly4::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return MPoly4::zero();
        }
        MPoly4 {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, shift: Exp4) -> Self {
        MPoly4 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        [
                            e[0] + shift[0],
                            e[1] + shift[1],
                            e[2] + shift[2],
                            e[3] + shift[3],
                        ],
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = MPoly4::one();
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

    pub fn deg(&self, var: usize) -> i64 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(-1)
    }

    pub fn min_exp(&self, var: usize) -> i64 {
        self.terms.keys().map(|e| e[var]).min().unwrap_or(0)
    }

    /// Coefficient of `var^k` as a polynomial in the other variables.
    pub fn coeff_of(&self, var: usize, k: i64) -> MPoly4 {
        MPoly4 {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var] == k)
                .map(|(e, c)| {
                    let mut e = *e;
                    e[var] = 0;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// View as a univariate polynomial in `var`, lowest degree first.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly4> {
        let d = self.deg(var);
        (0..=d).map(|k| self.coeff_of(var, k)).collect()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Strip integer content and per-variable monomial content.
    pub fn strip_content(&self) -> MPoly4 {
        if self.is_zero() {
            return MPoly4::zero();
        }
        let mins = [
            self.min_exp(0),
            self.min_exp(1),
            self.min_exp(2),
            self.min_exp(3),
        ];
        let c = self.content();
        MPoly4 {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    (
                        [e[0] - mins[0], e[1] - mins[1], e[2] - mins[2], e[3] - mins[3]],
                        k / &c,
                    )
                })
                .collect(),
        }
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Substitute integer values for `L` and `M`, leaving `t`, `u`.
    pub fn eval_lm(&self, l: &BigInt, m: &BigInt) -> MPoly4 {
        let mut out = MPoly4::zero();
        for (e, c) in &self.terms {
            let v = c * l.pow(e[0] as u32) * m.pow(e[1] as u32);
            out.add_term([0, 0, e[2], e[3]], v);
        }
        out
    }

    /// Convert an `L, M`-only polynomial to an [`LPoly2`].
    pub fn to_lpoly2(&self) -> LPoly2 {
        debug_assert!(self.terms.keys().all(|e| e[VAR_T] == 0 && e[VAR_U] == 0));
        LPoly2::from_terms(self.terms.iter().map(|(e, c)| ((e[0], e[1]), c.clone())))
    }

    pub fn from_lpoly2_in_lm(p: &LPoly2) -> MPoly4 {
        let mut out = MPoly4::zero();
        for (&(a, b), c) in p.terms() {
            assert!(a >= 0 && b >= 0, "plain exponents required");
            out.add_term([a, b, 0, 0], c.clone());
        }
        out
    }

    /// Exact quotient by lex leading-term division, or None.
    pub fn try_div_exact(&self, divisor: &Self) -> Option<MPoly4> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly4::zero());
        }
        let (fe, fc) = divisor.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = MPoly4::zero();
        while !rem.is_zero() {
            let (re, rc) = {
                let (e, c) = rem.terms.iter().next_back().unwrap();
                (*e, c.clone())
            };
            let qe = [re[0] - fe[0], re[1] - fe[1], re[2] - fe[2], re[3] - fe[3]];
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let (q, r) = rc.div_rem(fc);
            if !r.is_zero() {
                return None;
            }
            let t = MPoly4::monomial(q, qe);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
        Some(quot)
    }

    /// Leading coefficient in `var` if it is a single term.
    pub fn monomial_lead(&self, var: usize) -> Option<MPoly4> {
        let lead = self.coeff_of(var, self.deg(var));
        if lead.num_terms() == 1 {
            Some(lead)
        } else {
            None
        }
    }

    /// Pseudo-remainder by a divisor whose leading coefficient in `var` is a
    /// single term; each reduction step scales by that monomial only, so no
    /// coefficient swell occurs. The result equals the remainder of `self`
    /// modulo `divisor` up to a monomial times integer factor.
    pub fn monic_style_prem(&self, divisor: &Self, var: usize) -> MPoly4 {
        let dd = divisor.deg(var);
        let lead = divisor
            .monomial_lead(var)
            .expect("divisor leading coefficient must be a single term");
        let mut rem = self.clone();
        while !rem.is_zero() && rem.deg(var) >= dd {
            let rd = rem.deg(var);
            let coef = rem.coeff_of(var, rd);
            let mut shift = [0i64; 4];
            shift[var] = rd - dd;
            rem = rem.mul(&lead).sub(&coef.mul(divisor).mul_monomial(shift));
        }
        rem
    }
}

impl fmt::Debug for MPoly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["L", "M", "t", "u"];
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, name) in names.iter().enumerate() {
                if e[i] != 0 {
                    write!(f, "*{}^{}", name, e[i])?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl DetRing for MPoly4 {
    fn ring_zero() -> Self {
        MPoly4::zero()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_div_exact(&self, other: &Self) -> Self {
        self.try_div_exact(other)
            .expect("Bareiss interior division is exact")
    }
}
