//! Resultants with respect to an auxiliary elimination variable.
//!
//! The inputs are polynomials in the elimination variable with [`LPoly2`]
//! coefficients. The resultant is the Sylvester determinant, computed by
//! fraction-free Bareiss elimination; every interior division is exact over
//! the coefficient ring.

use super::LPoly2;
use crate::error::{Error, Result};

/// Polynomial in the elimination variable, coefficients lowest degree first.
pub type AuxPoly = Vec<LPoly2>;

/// Rings with the exact division Bareiss elimination needs.
pub(crate) trait DetRing: Clone {
    fn ring_zero() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// Exact quotient; panics when the division is not exact.
    fn ring_div_exact(&self, other: &Self) -> Self;
}

impl DetRing for LPoly2 {
    fn ring_zero() -> Self {
        LPoly2::zero()
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

/// Fraction-free determinant with row pivoting.
pub(crate) fn bareiss_det<T: DetRing>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        panic!("empty matrix");
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev = None::<T>;
    for k in 0..n - 1 {
        if m[k][k].ring_is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].ring_is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return T::ring_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].ring_mul(&m[i][j]).ring_sub(&m[i][k].ring_mul(&m[k][j]));
                m[i][j] = match &prev {
                    None => t,
                    Some(p) => t.ring_div_exact(p),
                };
            }
            m[i][k] = T::ring_zero();
        }
        prev = Some(m[k][k].clone());
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.ring_neg()
    } else {
        det
    }
}

pub(crate) fn trim_aux<T: DetRing>(p: &mut Vec<T>) {
    while p.last().is_some_and(T::ring_is_zero) {
        p.pop();
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// `f` over m shifted rows of `g`, coefficients highest degree first.
pub(crate) fn sylvester_matrix<T: DetRing>(f: &[T], g: &[T]) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![T::ring_zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    mat
}

/// Resultant of two polynomials in the elimination variable. Errors unless
/// both have positive degree there.
pub fn resultant_aux(f: &AuxPoly, g: &AuxPoly) -> Result<LPoly2> {
    let mut f = f.clone();
    let mut g = g.clone();
    trim_aux(&mut f);
    trim_aux(&mut g);
    if f.len() < 2 || g.len() < 2 {
        return Err(Error::ResultantUndefined);
    }
    Ok(bareiss_det(sylvester_matrix(&f, &g)))
}
