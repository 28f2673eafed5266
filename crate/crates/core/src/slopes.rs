//! Newton polygons, strongly detected boundary slopes, and boundary-slope
//! composition for twisted doubles.
//!
//! The slope of a polygon edge is read as delta(M-exponent)/delta(L-exponent),
//! so a binomial factor `L M^r - delta` contributes the slope `r`, matching
//! the killing-slope convention. Slope logic is exact rational arithmetic
//! throughout; there is no floating point here.

use crate::error::{Error, Result};
use crate::laurent2::LPoly2;
use num_rational::Ratio;
use std::collections::BTreeSet;
use std::fmt;

/// A boundary slope: a rational number, infinity, or the non-intersection
/// marker for a surface missing a link component.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Slope {
    NonIntersecting,
    Finite(Ratio<i64>),
    Infinity,
}

impl Slope {
    pub fn integer(n: i64) -> Slope {
        Slope::Finite(Ratio::from_integer(n))
    }

    pub fn fraction(num: i64, den: i64) -> Slope {
        if den == 0 {
            Slope::Infinity
        } else {
            Slope::Finite(Ratio::new(num, den))
        }
    }

    pub fn as_finite(&self) -> Option<Ratio<i64>> {
        match self {
            Slope::Finite(r) => Some(*r),
            _ => None,
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Slope::*;
        match (self, other) {
            (NonIntersecting, NonIntersecting) => std::cmp::Ordering::Equal,
            (NonIntersecting, _) => std::cmp::Ordering::Less,
            (_, NonIntersecting) => std::cmp::Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => std::cmp::Ordering::Less,
            (Infinity, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinity, Infinity) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::NonIntersecting => write!(f, "none"),
            Slope::Infinity => write!(f, "inf"),
            Slope::Finite(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl serde::Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub type SlopeSet = BTreeSet<Slope>;

/// Boundary slope pair of a two-component link, attaching component second.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SlopePair {
    pub mx: Slope,
    pub my: Slope,
}

/// Convex hull of the exponent support of a polynomial, vertices in
/// counterclockwise order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonPolygon {
    vertices: Vec<(i64, i64)>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    /// Directed edges of the hull; empty for a single point.
    pub fn edges(&self) -> Vec<((i64, i64), (i64, i64))> {
        let n = self.vertices.len();
        match n {
            0 | 1 => Vec::new(),
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => (0..n)
                .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
                .collect(),
        }
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let (bx, by) = (b.0 as i128, b.1 as i128);
    (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
}

/// Monotone-chain convex hull over exact integer coordinates.
fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        // all points collinear: keep the two extremes
        return vec![pts[0], pts[n - 1]];
    }
    lower
}

/// Newton polygon of a nonzero polynomial.
pub fn newton_polygon(f: &LPoly2) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<(i64, i64)> = f.terms().map(|(&e, _)| e).collect();
    Ok(NewtonPolygon {
        vertices: convex_hull(pts),
    })
}

/// Strongly detected boundary slopes: the edge slopes of the Newton polygon,
/// delta(M-exponent)/delta(L-exponent), vertical edges contributing infinity.
/// A point polygon detects nothing; parallel opposite edges count once.
pub fn detected_slopes(f: &LPoly2) -> Result<SlopeSet> {
    let hull = newton_polygon(f)?;
    let mut out = SlopeSet::new();
    for ((i1, j1), (i2, j2)) in hull.edges() {
        let (di, dj) = (i2 - i1, j2 - j1);
        out.insert(if di == 0 {
            Slope::Infinity
        } else {
            Slope::fraction(dj, di)
        });
    }
    Ok(out)
}

/// Exact Minkowski sum by merging the edge vectors of both hulls in angular
/// order. Degenerate inputs (points, segments) fall back to the hull of
/// pairwise vertex sums, which is the definition.
pub fn minkowski_sum(a: &NewtonPolygon, b: &NewtonPolygon) -> NewtonPolygon {
    if a.vertices.len() < 3 || b.vertices.len() < 3 {
        let pts: Vec<(i64, i64)> = a
            .vertices
            .iter()
            .flat_map(|&(x1, y1)| b.vertices.iter().map(move |&(x2, y2)| (x1 + x2, y1 + y2)))
            .collect();
        return NewtonPolygon {
            vertices: convex_hull(pts),
        };
    }
    let start = |v: &[(i64, i64)]| {
        v.iter()
            .enumerate()
            .min_by_key(|&(_, &(x, y))| (y, x))
            .map(|(i, _)| i)
            .unwrap()
    };
    let (ia, ib) = (start(&a.vertices), start(&b.vertices));
    let (na, nb) = (a.vertices.len(), b.vertices.len());
    let edge = |v: &[(i64, i64)], i: usize| {
        let p = v[i % v.len()];
        let q = v[(i + 1) % v.len()];
        (q.0 - p.0, q.1 - p.1)
    };
    let mut out = Vec::with_capacity(na + nb);
    let mut cur = (
        a.vertices[ia].0 + b.vertices[ib].0,
        a.vertices[ia].1 + b.vertices[ib].1,
    );
    let (mut i, mut j) = (0, 0);
    while i < na || j < nb {
        out.push(cur);
        let step = if i >= na {
            let e = edge(&b.vertices, ib + j);
            j += 1;
            e
        } else if j >= nb {
            let e = edge(&a.vertices, ia + i);
            i += 1;
            e
        } else {
            let ea = edge(&a.vertices, ia + i);
            let eb = edge(&b.vertices, ib + j);
            let c = (ea.0 as i128) * (eb.1 as i128) - (ea.1 as i128) * (eb.0 as i128);
            if c > 0 {
                i += 1;
                ea
            } else if c < 0 {
                j += 1;
                eb
            } else {
                i += 1;
                j += 1;
                (ea.0 + eb.0, ea.1 + eb.1)
            }
        };
        cur = (cur.0 + step.0, cur.1 + step.1);
    }
    NewtonPolygon {
        vertices: convex_hull(out),
    }
}

/// Boundary slopes of the n-twist knot.
pub fn bs_twist(n: i64) -> SlopeSet {
    let vals: Vec<i64> = match n {
        0 => vec![0],
        1 => vec![0, -6],
        n if n <= -1 => vec![-4, 0, -4 * n],
        _ => vec![-4, 0, -4 * n - 2],
    };
    vals.into_iter().map(Slope::integer).collect()
}

/// All first components `m_x` paired with a given attaching slope `m_y` in
/// the boundary-slope table of the Whitehead link, solved exactly over the
/// four parametric families:
///
/// - `(2/t, 2t)` for `t` in `[0, inf]`
/// - `(-2/t - 2, -2t)` for `t` in `[0, 1]`
/// - `(-2/t, -2 - 2t)` for `t` in `[1, inf]`
/// - `(-3 + s, -3 - s)` for `s` in `[-1, 1]`
///
/// plus the non-intersecting rows `(0, none)` and `(-4, none)`.
pub fn whitehead_pair_lookup(my: Slope) -> SlopeSet {
    let mut out = SlopeSet::new();
    match my {
        Slope::NonIntersecting => {
            out.insert(Slope::integer(0));
            out.insert(Slope::integer(-4));
        }
        Slope::Infinity => {
            // family 1 at t = inf and family 3 at t = inf close up at (0, inf)
            out.insert(Slope::integer(0));
        }
        Slope::Finite(my) => {
            let zero = Ratio::from_integer(0);
            let four = Ratio::from_integer(4);
            let two = Ratio::from_integer(2);
            // family 1: my = 2t, t in [0, inf]; mx = 4/my; t = 0 gives (inf, 0)
            if my > zero {
                out.insert(Slope::Finite(four / my));
            } else if my == zero {
                out.insert(Slope::Infinity);
            }
            // family 2: my = -2t, t in [0, 1]; mx = 4/my - 2
            if my < zero && my >= Ratio::from_integer(-2) {
                out.insert(Slope::Finite(four / my - two));
            } else if my == zero {
                out.insert(Slope::Infinity);
            }
            // family 3: my = -2 - 2t, t in [1, inf]; mx = 4/(my + 2)
            if my <= Ratio::from_integer(-4) {
                out.insert(Slope::Finite(four / (my + two)));
            }
            // family 4: my = -3 - s, s in [-1, 1]; mx = -6 - my
            if my >= Ratio::from_integer(-4) && my <= Ratio::from_integer(-2) {
                out.insert(Slope::Finite(Ratio::from_integer(-6) - my));
            }
        }
    }
    out
}

/// Image of a companion boundary slope `p/q` under the r-twisted gluing:
/// `q / (p - q r)`, with `p = q r` mapping to infinity.
pub fn glue_slope(m: Slope, r: i64) -> Slope {
    match m {
        Slope::NonIntersecting => Slope::NonIntersecting,
        Slope::Infinity => Slope::integer(0), // (p, q) = (1, 0)
        Slope::Finite(pq) => {
            let (p, q) = (*pq.numer(), *pq.denom());
            Slope::fraction(q, p - q * r)
        }
    }
}

/// Boundary slopes of the r-twisted Whitehead double of the n-twist knot:
/// the non-intersecting rows together with every `m_x` paired with the glued
/// image of a companion slope. Errors for `n = 0` (trivial companion).
pub fn bs_double(r: i64, n: i64) -> Result<SlopeSet> {
    if n == 0 {
        return Err(Error::TrivialCompanion);
    }
    let mut out = whitehead_pair_lookup(Slope::NonIntersecting);
    for m in bs_twist(n) {
        out.extend(whitehead_pair_lookup(glue_slope(m, r)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(src: &str) -> LPoly2 {
        LPoly2::parse_text(src).unwrap()
    }

    fn ints(vals: &[i64]) -> SlopeSet {
        vals.iter().map(|&v| Slope::integer(v)).collect()
    }

    #[test]
    fn polygon_segment_and_quad() {
        let seg = newton_polygon(&p("L*M^6 + 1")).unwrap();
        assert_eq!(seg.vertices(), &[(0, 0), (1, 6)]);

        let quad = newton_polygon(&p("L^2*M^6 - L*M^6 + L - 1")).unwrap();
        let mut vs = quad.vertices().to_vec();
        vs.sort();
        assert_eq!(vs, vec![(0, 0), (1, 0), (1, 6), (2, 6)]);

        let pt = newton_polygon(&p("7*L*M^2")).unwrap();
        assert_eq!(pt.vertices(), &[(1, 2)]);
    }

    #[test]
    fn detected_slope_cases() {
        let a = p("L - 1").mul(&p("L*M^6 + 1"));
        assert_eq!(detected_slopes(&a).unwrap(), ints(&[0, 6]));
        assert_eq!(detected_slopes(&p("L + M^6")).unwrap(), ints(&[-6]));
        assert!(detected_slopes(&p("5")).unwrap().is_empty());
        // triangular hull: horizontal, slope -3, and vertical edges
        assert_eq!(
            detected_slopes(&p("L^2 + L*M^3 + L")).unwrap(),
            vec![Slope::integer(0), Slope::integer(-3), Slope::Infinity]
                .into_iter()
                .collect::<SlopeSet>()
        );
        // vertical edge
        assert_eq!(
            detected_slopes(&p("M^2 + 1")).unwrap(),
            vec![Slope::Infinity].into_iter().collect::<SlopeSet>()
        );
    }

    #[test]
    fn minkowski_matches_product_polygon() {
        let f = p("L*M^6 + 1");
        let g = p("L - 1");
        let nf = newton_polygon(&f).unwrap();
        let ng = newton_polygon(&g).unwrap();
        let sum = minkowski_sum(&nf, &ng);
        let prod = newton_polygon(&f.mul(&g)).unwrap();
        assert_eq!(sum, prod);
    }

    #[test]
    fn minkowski_point_translates() {
        let f = newton_polygon(&p("L^2*M^6 - L*M^6 + L - 1")).unwrap();
        let pt = newton_polygon(&p("L*M^3")).unwrap();
        let sum = minkowski_sum(&f, &pt);
        let shifted =
            newton_polygon(&p("L^2*M^6 - L*M^6 + L - 1").mul_monomial(1, 3)).unwrap();
        assert_eq!(sum, shifted);
    }

    #[test]
    fn bs_twist_cases() {
        assert_eq!(bs_twist(-1), ints(&[-4, 0, 4]));
        assert_eq!(bs_twist(0), ints(&[0]));
        assert_eq!(bs_twist(1), ints(&[0, -6]));
        assert_eq!(bs_twist(2), ints(&[-4, 0, -10]));
    }

    #[test]
    fn whitehead_lookup_cases() {
        assert_eq!(
            whitehead_pair_lookup(Slope::NonIntersecting),
            ints(&[0, -4])
        );
        assert!(whitehead_pair_lookup(Slope::integer(2)).contains(&Slope::integer(2)));
        assert!(whitehead_pair_lookup(Slope::integer(-3)).contains(&Slope::integer(-3)));
        assert_eq!(whitehead_pair_lookup(Slope::Infinity), ints(&[0]));
        // my = 1/4 sits on family 1 only
        assert_eq!(whitehead_pair_lookup(Slope::fraction(1, 4)), ints(&[16]));
    }

    #[test]
    fn glue_slope_cases() {
        assert_eq!(glue_slope(Slope::integer(6), 0), Slope::fraction(1, 6));
        assert_eq!(glue_slope(Slope::integer(0), 0), Slope::Infinity);
        assert_eq!(glue_slope(Slope::integer(-4), -4), Slope::Infinity);
        assert_eq!(glue_slope(Slope::Infinity, 3), Slope::integer(0));
    }

    #[test]
    fn bs_double_rows() {
        assert_eq!(bs_double(0, -1).unwrap(), ints(&[-4, 0, -18, 16]));
        assert_eq!(bs_double(0, -2).unwrap(), ints(&[-4, 0, -18, 32]));
        assert_eq!(bs_double(0, 2).unwrap(), ints(&[-4, 0, -18, -42]));
        assert!(bs_double(0, 0).is_err());
    }

    proptest! {
        #[test]
        fn minkowski_sum_is_product_polygon(
            fs in proptest::collection::vec(((-4i64..=4, -4i64..=4), 1i64..=5), 1..4),
            gs in proptest::collection::vec(((-4i64..=4, -4i64..=4), 1i64..=5), 1..4),
        ) {
            let build = |ts: &[((i64, i64), i64)]| {
                LPoly2::from_terms(ts.iter().map(|&((a, b), c)| ((a, b), num_bigint::BigInt::from(c))))
            };
            let f = build(&fs);
            let g = build(&gs);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let sum = minkowski_sum(&newton_polygon(&f).unwrap(), &newton_polygon(&g).unwrap());
            let prod = newton_polygon(&f.mul(&g)).unwrap();
            prop_assert_eq!(sum, prod);
        }
    }
}
