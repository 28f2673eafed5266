//! Modular arithmetic backend for large resultants: word-size prime fields,
//! univariate resultants by the Euclidean remainder sequence, Newton
//! interpolation, and Chinese-remainder reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Endless supply of distinct 62-bit primes, largest first.
pub struct PrimeStream {
    next_candidate: u64,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream {
            next_candidate: (1u64 << 62) - 1,
        }
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next_candidate;
            self.next_candidate -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
    }
}

pub fn bigint_mod_p(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Resultant of two univariate polynomials over F_p (coefficients ascending).
/// Degree-zero inputs follow the usual conventions.
pub fn resultant_fp(a: &[u64], b: &[u64], p: u64) -> u64 {
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    trim(&mut f);
    trim(&mut g);
    if f.is_empty() || g.is_empty() {
        return 0;
    }
    let mut res = 1u64;
    loop {
        if g.len() == 1 {
            return mul_mod(res, pow_mod(g[0], (f.len() - 1) as u64, p), p);
        }
        if f.len() < g.len() {
            // Res(f, g) = (-1)^(deg f * deg g) Res(g, f)
            if (f.len() - 1) % 2 == 1 && (g.len() - 1) % 2 == 1 {
                res = p - res;
                if res == p {
                    res = 0;
                }
            }
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        // r = f mod g
        let mut r = f.clone();
        let glead_inv = inv_mod(*g.last().unwrap(), p);
        for k in (g.len() - 1..r.len()).rev() {
            let c = mul_mod(r[k], glead_inv, p);
            if c == 0 {
                continue;
            }
            let shift = k - (g.len() - 1);
            for (j, gc) in g.iter().enumerate() {
                let t = mul_mod(c, *gc, p);
                let idx = shift + j;
                r[idx] = (r[idx] + p - t) % p;
            }
        }
        r.truncate(g.len() - 1);
        trim(&mut r);
        if r.is_empty() {
            return 0;
        }
        let deg_f = f.len() - 1;
        let deg_g = g.len() - 1;
        let deg_r = r.len() - 1;
        // Res(f, g) = (-1)^(deg f * deg g) lc(g)^(deg f - deg r) Res(g, r)
        if deg_f % 2 == 1 && deg_g % 2 == 1 {
            res = (p - res) % p;
        }
        res = mul_mod(res, pow_mod(*g.last().unwrap(), (deg_f - deg_r) as u64, p), p);
        f = g;
        g = r;
    }
}

/// Newton interpolation over F_p at distinct nodes; returns monomial
/// coefficients, ascending, length `xs.len()`. Node differences are assumed
/// small (nodes are consecutive-ish integers), so their inverses are batch
/// precomputed once instead of running Fermat inversions in the inner loop.
pub fn interpolate_fp(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let max_x = xs.iter().copied().max().unwrap_or(0) as usize;
    // inv[i] = i^{-1} mod p for 1 <= i <= max_x via the linear recurrence
    let mut inv = vec![0u64; max_x + 2];
    if max_x >= 1 {
        inv[1] = 1;
        for i in 2..=max_x.max(1) {
            let q = p / i as u64;
            let r = (p % i as u64) as usize;
            inv[i] = mul_mod(p - q, inv[r], p);
        }
    }
    let small_inv = |d: u64| -> u64 {
        if (d as usize) < inv.len() && inv[d as usize] != 0 {
            inv[d as usize]
        } else {
            inv_mod(d, p)
        }
    };
    // divided differences
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            let den = xs[i] - xs[i - level]; // nodes ascend
            dd[i] = mul_mod(num, small_inv(den), p);
        }
    }
    // expand Newton form to monomial basis
    let mut coeffs = vec![0u64; n];
    let mut basis = vec![0u64; n]; // product (x - x_0)...(x - x_{k-1})
    basis[0] = 1;
    let mut basis_len = 1;
    for (k, &c) in dd.iter().enumerate() {
        for i in 0..basis_len {
            coeffs[i] = (coeffs[i] + mul_mod(c, basis[i], p)) % p;
        }
        if k + 1 < n {
            // basis *= (x - x_k)
            let xk = xs[k] % p;
            let mut next = vec![0u64; basis_len + 1];
            for i in 0..basis_len {
                next[i + 1] = (next[i + 1] + basis[i]) % p;
                next[i] = (next[i] + p - mul_mod(basis[i], xk, p)) % p;
            }
            basis = next;
            basis.resize(n, 0);
            basis_len += 1;
        }
    }
    coeffs
}

/// Incremental Chinese-remainder accumulator with symmetric lifting.
#[derive(Clone, Debug)]
pub struct CrtValue {
    pub residue: BigInt,
    pub modulus: BigInt,
}

impl CrtValue {
    pub fn new(v: u64, p: u64) -> Self {
        CrtValue {
            residue: BigInt::from(v),
            modulus: BigInt::from(p),
        }
    }

    pub fn push(&mut self, v: u64, p: u64) {
        let p_big = BigInt::from(p);
        let rp = self.modulus.mod_floor(&p_big);
        let diff = (BigInt::from(v) - self.residue.mod_floor(&p_big)).mod_floor(&p_big);
        let inv = BigInt::from(inv_mod(rp.to_u64().unwrap() % p, p));
        let k = (diff * inv).mod_floor(&p_big);
        self.residue = &self.residue + k * &self.modulus;
        self.modulus *= p_big;
    }

    /// Representative in `(-m/2, m/2]`.
    pub fn symmetric(&self) -> BigInt {
        let half = &self.modulus >> 1;
        if self.residue > half {
            &self.residue - &self.modulus
        } else {
            self.residue.clone()
        }
    }
}

/// Exact integer resultant via CRT over word primes with a rigorous
/// Hadamard-style bound on the number of primes.
pub fn resultant_z(a: &[BigInt], b: &[BigInt], primes: &mut PrimeStream) -> BigInt {
    let mut fa: Vec<BigInt> = a.to_vec();
    let mut fb: Vec<BigInt> = b.to_vec();
    while fa.last().is_some_and(Zero::is_zero) {
        fa.pop();
    }
    while fb.last().is_some_and(Zero::is_zero) {
        fb.pop();
    }
    if fa.is_empty() || fb.is_empty() {
        return BigInt::zero();
    }
    let deg_a = (fa.len() - 1) as u64;
    let deg_b = (fb.len() - 1) as u64;
    let max_bits = |v: &[BigInt]| v.iter().map(|c| c.abs().bits()).max().unwrap_or(1).max(1);
    // |Res| <= (sqrt(deg_a+1) maxA)^deg_b * (sqrt(deg_b+1) maxB)^deg_a
    let bound_bits = deg_b * (max_bits(&fa) + fa.len().ilog2() as u64 + 1)
        + deg_a * (max_bits(&fb) + fb.len().ilog2() as u64 + 1)
        + 8;
    let mut acc: Option<CrtValue> = None;
    let mut have_bits = 0u64;
    while have_bits <= bound_bits + 1 {
        let p = primes.next().unwrap();
        // a prime dividing either leading coefficient changes the degree:
        // skip it, the bound does not rely on any fixed prime set
        if bigint_mod_p(fa.last().unwrap(), p) == 0 || bigint_mod_p(fb.last().unwrap(), p) == 0 {
            continue;
        }
        let ap: Vec<u64> = fa.iter().map(|c| bigint_mod_p(c, p)).collect();
        let bp: Vec<u64> = fb.iter().map(|c| bigint_mod_p(c, p)).collect();
        let rp = resultant_fp(&ap, &bp, p);
        match &mut acc {
            None => acc = Some(CrtValue::new(rp, p)),
            Some(c) => c.push(rp, p),
        }
        have_bits += 61;
    }
    acc.unwrap().symmetric()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = PrimeStream::new().take(5).collect();
        assert_eq!(ps.len(), 5);
        for p in ps {
            assert!(is_prime_u64(p));
            assert!(p > (1 << 61));
        }
    }

    #[test]
    fn fp_resultant_matches_integer_resultant() {
        // res(x^2 - 1, x - 2) = (2-1)(2+1) = 3 (product of f over roots of g,
        // times lc adjustments)
        let p = PrimeStream::new().next().unwrap();
        // f = x^2 - 1, g = x - 2 -> Res = f(2) = 3 up to sign conventions
        let f = [p - 1, 0, 1];
        let g = [p - 2, 1];
        let r = resultant_fp(&f, &g, p);
        assert_eq!(r.min(p - r), 3);

        // Res(x^2+1, x^2-2) over Z is 9
        let f = [1, 0, 1];
        let g = [p - 2, 0, 1];
        let r = resultant_fp(&f, &g, p);
        assert_eq!(r.min(p - r), 9);
    }

    #[test]
    fn exact_resultant_crt() {
        let mut primes = PrimeStream::new();
        let f: Vec<BigInt> = [-1i64, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let g: Vec<BigInt> = [-2i64, 1].iter().map(|&c| BigInt::from(c)).collect();
        let r = resultant_z(&f, &g, &mut primes);
        assert_eq!(r.abs(), BigInt::from(3));

        // big coefficients round-trip
        let big = BigInt::from(10).pow(30);
        let f = vec![big.clone(), BigInt::from(1)];
        let g = vec![-&big, BigInt::from(1)];
        let r = resultant_z(&f, &g, &mut primes);
        assert_eq!(r.abs(), (&big) * 2u32);
    }

    #[test]
    fn interpolation_round_trip() {
        let p = PrimeStream::new().next().unwrap();
        // f(x) = 3x^3 + 2x + 7
        let eval = |x: u64| -> u64 {
            let x3 = mul_mod(mul_mod(x, x, p), x, p);
            (mul_mod(3, x3, p) + mul_mod(2, x, p) + 7) % p
        };
        let xs: Vec<u64> = (0..6).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| eval(x)).collect();
        let coeffs = interpolate_fp(&xs, &ys, p);
        assert_eq!(&coeffs[..4], &[7, 2, 0, 3]);
        assert!(coeffs[4..].iter().all(|&c| c == 0));
    }
}
