use super::*;
use proptest::prelude::*;

fn p(src: &str) -> LPoly2 {
    LPoly2::parse_text(src).unwrap()
}

#[test]
fn mul_difference_of_squares() {
    assert_eq!(p("L - 1").mul(&p("L + 1")), p("L^2 - 1"));
}

#[test]
fn pow_zero_is_one() {
    assert_eq!(p("L + M^2").pow(0), LPoly2::one());
}

#[test]
fn mul_trefoil_expansion() {
    // (L - 1)(L M^6 + 1) expanded by hand
    assert_eq!(
        p("L - 1").mul(&p("L*M^6 + 1")),
        p("L^2*M^6 - L*M^6 + L - 1")
    );
}

#[test]
fn normalize_strips_monomial_content() {
    let nf = p("L^2*M^6 - L^2").normalize().unwrap();
    assert_eq!(nf.poly(), &p("M^6 - 1"));
}

#[test]
fn normalize_fixes_sign() {
    // -L M^-6 - 1 normalizes to L + M^6
    let nf = p("-L*M^-6 - 1").normalize().unwrap();
    assert_eq!(nf.poly(), &p("L + M^6"));
}

#[test]
fn normalize_zero_errors() {
    assert_eq!(LPoly2::zero().normalize(), Err(Error::ZeroPolynomial));
}

#[test]
fn doteq_unit_multiple() {
    let f = p("L^2*M^6 - L*M^6 + L - 1");
    let g = f.mul(&p("L^3*M")).neg();
    assert!(f.doteq(&g).unwrap());
}

#[test]
fn doteq_binomial_inverse_exponent() {
    assert!(p("L*M^6 + 1").doteq(&p("L + M^-6")).unwrap());
}

#[test]
fn doteq_distinguishes() {
    assert!(!p("L - 1").doteq(&p("L + 1")).unwrap());
}

#[test]
fn reduce_collapses_multiplicities() {
    let mut a = FactoredAPoly::new();
    a.insert(p("L - 1").normalize().unwrap());
    a.insert(p("L - 1").normalize().unwrap());
    a.insert(p("L*M + 1").normalize().unwrap());
    assert_eq!(a.num_with_multiplicity(), 3);
    let r = a.reduce();
    assert_eq!(r.num_with_multiplicity(), 2);
    assert_eq!(r.reduce(), r);
}

#[test]
fn expand_empty_is_one() {
    assert_eq!(FactoredAPoly::new().expand(), LPoly2::one());
}

#[test]
fn expand_two_factors() {
    let mut a = FactoredAPoly::new();
    a.insert(p("L - 1").normalize().unwrap());
    a.insert(p("L*M^6 + 1").normalize().unwrap());
    assert_eq!(a.expand(), p("L^2*M^6 - L*M^6 + L - 1"));
}

#[test]
fn factored_drops_constants() {
    let mut a = FactoredAPoly::new();
    a.insert(p("L^3*M^2").normalize().unwrap()); // monomial -> constant 1
    assert!(a.is_empty());
}

#[test]
fn content_and_primitivity() {
    assert_eq!(p("2*L - 2").content().unwrap(), 2.into());
    assert!(!p("2*L - 2").is_primitive().unwrap());
    assert_eq!(p("L*M^6 + 1").content().unwrap(), 1.into());
}

#[test]
fn balance_checks() {
    assert!(p("L + M^6").is_balanced().unwrap());
    assert!(p("L - 1").is_balanced().unwrap());
    // brute-force normal-form comparison says this one is unbalanced
    assert!(!p("L^2 + L*M + 1 + M^3").is_balanced().unwrap());
}

#[test]
fn mirror_examples() {
    assert_eq!(p("L*M^6 + 1").mirror().unwrap().poly(), &p("L + M^6"));
    assert_eq!(p("L - 1").mirror().unwrap().poly(), &p("L - 1"));
}

#[test]
fn subst_m_power_examples() {
    assert_eq!(p("L*M^6 + 1").subst_m_power(3), p("L*M^18 + 1"));
    assert_eq!(p("L*M^6 + 1").subst_m_power(1), p("L*M^6 + 1"));
    assert_eq!(p("L - 1").subst_m_power(5), p("L - 1"));
}

#[test]
fn gz_factor_round_trip() {
    for (r, delta) in [(0i64, 1i8), (6, -1), (-6, 1), (-3, -1), (15, 1)] {
        let g = GZFactor::new(r, delta);
        let nf = g.to_normal_form();
        assert_eq!(GZFactor::from_normal_form(&nf), Some(g));
    }
    // r < 0 normal form shape: L - delta M^{-r}
    assert_eq!(GZFactor::new(-6, 1).to_normal_form().poly(), &p("L - M^6"));
    assert_eq!(GZFactor::new(-6, -1).to_normal_form().poly(), &p("L + M^6"));
}

#[test]
fn gz_rejects_non_binomials() {
    assert!(p("L^2*M^3 - 1").normalize().unwrap().as_gz_factor().is_none());
    assert!(p("L + M + 1").normalize().unwrap().as_gz_factor().is_none());
    assert!(p("2*L - 1").normalize().unwrap().as_gz_factor().is_none());
}

// --- resultants ------------------------------------------------------------

fn aux(coeffs: &[&str]) -> AuxPoly {
    coeffs.iter().map(|s| p(s)).collect()
}

#[test]
fn resultant_eliminates_square() {
    // Res_Lbar(Lbar M^6 - 1, L - Lbar^2) = L M^12 - 1 up to sign/monomial
    let f = aux(&["-1", "M^6"]);
    let g = aux(&["L", "0", "-1"]);
    let r = resultant_aux(&f, &g).unwrap();
    assert!(r.doteq(&p("L*M^12 - 1")).unwrap());
}

#[test]
fn resultant_winding_three() {
    // Res_Lbar(Lbar (M^3)^6 + 1, L - Lbar^3) = L M^54 + 1 up to sign
    let f = aux(&["1", "M^18"]);
    let g = aux(&["L", "0", "0", "-1"]);
    let r = resultant_aux(&f, &g).unwrap();
    assert!(r.doteq(&p("L*M^54 + 1")).unwrap());
}

#[test]
fn resultant_degree_zero_errors() {
    let f = aux(&["M^6"]);
    let g = aux(&["L", "-1"]);
    assert_eq!(resultant_aux(&f, &g), Err(Error::ResultantUndefined));
}

// --- exact division and gcd -------------------------------------------------

#[test]
fn div_exact_basic() {
    let f = p("L^2*M^6 - L*M^6 + L - 1");
    assert_eq!(f.try_div_exact(&p("L - 1")), Some(p("L*M^6 + 1")));
    assert_eq!(f.try_div_exact(&p("L + 1")), None);
    // Laurent divisors work through monomial units
    assert_eq!(
        f.try_div_exact(&p("L*M^-3 - M^-3")),
        Some(p("L*M^9 + M^3"))
    );
}

#[test]
fn div_exact_respects_integer_coefficients() {
    assert_eq!(p("L^2 - 1").try_div_exact(&p("2*L - 2")), None);
    assert_eq!(p("2*L^2 - 2").try_div_exact(&p("2*L - 2")), Some(p("L + 1")));
}

#[test]
fn gcd_of_products() {
    let a = p("L - 1").mul(&p("L*M^6 + 1"));
    let b = p("L - 1").mul(&p("L*M^12 - 1"));
    let g = bivariate_gcd(&a, &b);
    assert!(g.doteq(&p("L - 1")).unwrap());
}

#[test]
fn squarefree_part_removes_squares() {
    let f = p("L*M^2 - 1").pow(2).mul(&p("L - 1"));
    let sf = squarefree_part(&f);
    assert!(sf
        .doteq(&p("L*M^2 - 1").mul(&p("L - 1")))
        .unwrap());
    // pure-M repeated factors are removed too
    let g = p("M^2 - 1").pow(2).mul(&p("L + M^2"));
    assert!(squarefree_part(&g)
        .doteq(&p("M^2 - 1").mul(&p("L + M^2")))
        .unwrap());
}

// --- cyclotomic recognition -------------------------------------------------

#[test]
fn cyclotomic_polys() {
    let to_i64 = |v: &[num_bigint::BigInt]| -> Vec<i64> {
        v.iter().map(|c| i64::try_from(c).unwrap()).collect()
    };
    assert_eq!(to_i64(&cyclotomic_poly(1)), vec![-1, 1]);
    assert_eq!(to_i64(&cyclotomic_poly(2)), vec![1, 1]);
    assert_eq!(to_i64(&cyclotomic_poly(6)), vec![1, -1, 1]);
    assert_eq!(to_i64(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
}

#[test]
fn cyclotomic_at_monomial_examples() {
    let nf = |s: &str| p(s).normalize().unwrap();
    // Phi_2 at L M^6
    assert!(is_cyclotomic_at_monomial(&nf("L*M^6 + 1")).unwrap());
    // Phi_1 Phi_2 at L M^15
    assert!(is_cyclotomic_at_monomial(&nf("L^2*M^30 - 1")).unwrap());
    // the figure-eight nontrivial factor has non-collinear support
    let fig8 = nf("M^4 - L + L*M^2 + 2*L*M^4 + L*M^6 - L*M^8 + L^2*M^4");
    assert!(!is_cyclotomic_at_monomial(&fig8).unwrap());
    // collinear but not cyclotomic
    assert!(!is_cyclotomic_at_monomial(&nf("L*M^2 - 2")).err().is_some());
    assert!(!is_cyclotomic_at_monomial(&nf("L*M^2 + 2")).unwrap());
    // non-primitive input errors
    assert!(matches!(
        is_cyclotomic_at_monomial(&nf("2*L^2 - 2*L + 2")),
        Err(Error::NotPrimitive { .. })
    ));
}

// --- text and JSON round trips ----------------------------------------------

#[test]
fn text_round_trip() {
    let f = p("L^2*M^6 - L*M^6 + L - 1");
    assert_eq!(p(&f.to_string()), f);
    assert_eq!(f.to_string(), "L^2*M^6 - L*M^6 + L - 1");
    let g = p("-3*L^2*M^-4 + 7");
    assert_eq!(g.to_string(), "-3*L^2*M^-4 + 7");
    assert_eq!(p(&g.to_string()), g);
}

#[test]
fn json_round_trip() {
    let f = p("L^2*M^6 - L*M^6 + L - 1");
    let json = serde_json::to_string(&f).unwrap();
    let back: LPoly2 = serde_json::from_str(&json).unwrap();
    assert_eq!(back, f);
}

// --- properties ---------------------------------------------------------

fn arb_poly() -> impl Strategy<Value = LPoly2> {
    proptest::collection::vec(((-5i64..=5, -5i64..=5), -9i64..=9), 1..5).prop_map(|terms| {
        LPoly2::from_terms(
            terms
                .into_iter()
                .map(|((a, b), c)| ((a, b), BigInt::from(c))),
        )
    })
}

fn arb_nonzero() -> impl Strategy<Value = LPoly2> {
    arb_poly().prop_filter("nonzero", |f| !f.is_zero())
}

fn arb_gz() -> impl Strategy<Value = GZFactor> {
    (-10i64..=10, prop_oneof![Just(1i8), Just(-1i8)]).prop_map(|(r, d)| GZFactor::new(r, d))
}

proptest! {
    #[test]
    fn normalize_idempotent(f in arb_nonzero()) {
        let nf = f.normalize().unwrap();
        prop_assert_eq!(nf.poly().normalize().unwrap(), nf);
    }

    #[test]
    fn doteq_equivalence(f in arb_nonzero(), a in -3i64..=3, b in -3i64..=3, s in prop_oneof![Just(1), Just(-1)]) {
        let g = f.mul_monomial(a, b).scale(&BigInt::from(s));
        prop_assert!(f.doteq(&g).unwrap());
        prop_assert!(g.doteq(&f).unwrap());
    }

    #[test]
    fn mul_commutative_associative(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn expand_reduce_divides_expand(gs in proptest::collection::vec(arb_gz(), 1..5)) {
        let mut a = FactoredAPoly::new();
        for g in gs {
            a.insert_gz(g);
        }
        let full = a.expand();
        let red = a.reduce().expand();
        prop_assert!(full.try_div_exact(&red).is_some());
    }

    #[test]
    fn resultant_multiplicative_on_binomials(r1 in arb_gz(), r2 in arb_gz(), q in 2i64..=4) {
        // Res(f g, h) ≐ Res(f, h) Res(g, h) for binomials f, g and h = L - Lbar^q
        let f: AuxPoly = vec![
            LPoly2::constant(-(r1.delta as i64)),
            LPoly2::monomial(BigInt::one(), 0, r1.r),
        ];
        let g: AuxPoly = vec![
            LPoly2::constant(-(r2.delta as i64)),
            LPoly2::monomial(BigInt::one(), 0, r2.r),
        ];
        let mut h: AuxPoly = vec![LPoly2::zero(); (q + 1) as usize];
        h[0] = LPoly2::var_l();
        h[q as usize] = LPoly2::constant(-1);

        let fg: AuxPoly = {
            // multiply the two linear aux polynomials
            let mut out = vec![LPoly2::zero(); 3];
            for (i, a) in f.iter().enumerate() {
                for (j, b) in g.iter().enumerate() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
            out
        };
        let lhs = resultant_aux(&fg, &h).unwrap();
        let rhs = resultant_aux(&f, &h).unwrap().mul(&resultant_aux(&g, &h).unwrap());
        prop_assert!(lhs.doteq(&rhs).unwrap());
    }

    #[test]
    fn mirror_and_tau_are_involutions(f in arb_nonzero()) {
        let m2 = f.mirror().unwrap().poly().mirror().unwrap();
        prop_assert!(m2.poly().doteq(&f).unwrap());
        let t2 = f.involution_tau().involution_tau();
        prop_assert!(t2.doteq(&f).unwrap());
    }

    #[test]
    fn div_exact_inverts_mul(f in arb_nonzero(), g in arb_nonzero()) {
        let prod = f.mul(&g);
        let q = prod.try_div_exact(&f).expect("product divisible by factor");
        prop_assert_eq!(q, g);
    }
}
